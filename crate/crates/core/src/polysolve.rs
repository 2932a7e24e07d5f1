//! Polynomial constructions: bipartite and split CF-CN, the cograph
//! constructions, and the cluster-modulator upper bounds (`d + 2` closed,
//! `2d + 2` open).

use std::fmt;

use thiserror::Error;

use crate::classes::{
    cluster_cliques, Bipartition, MdKind, ModularDecomposition, Modulator, ResidualClass, SplitPartition,
};
use crate::coloring::{verify, Coloring, Variant};
use crate::graph::{Graph, Vertex, VertexSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Optimality {
    Exact,
    UpperBound,
}

impl fmt::Display for Optimality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Optimality::Exact => "exact",
            Optimality::UpperBound => "upper-bound",
        })
    }
}

/// Situations where a construction left its textbook guarantee.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Caveat {
    /// An isolated clique with no modulator neighbor needed a second fresh
    /// color under the open variant.
    IsolatedCliqueRepair,
    /// The threshold residual was disconnected; each component received its
    /// own fresh color(s).
    DisconnectedResidual,
}

impl fmt::Display for Caveat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Caveat::IsolatedCliqueRepair => "isolated-clique-repair",
            Caveat::DisconnectedResidual => "disconnected-residual",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolveOutcome {
    pub coloring: Coloring,
    pub colors_used: usize,
    pub optimality: Optimality,
    pub caveats: Vec<Caveat>,
}

impl SolveOutcome {
    /// Wraps a coloring, marking it exact when its size meets the trivial
    /// lower bound (1 color, or 2 closed colors with an edge present).
    pub fn new(g: &Graph, variant: Variant, coloring: Coloring) -> Self {
        let colors_used = coloring.colors_used();
        let exact = match variant {
            Variant::Closed => colors_used <= 1 || (colors_used == 2 && g.m() > 0),
            Variant::Open => colors_used <= 1,
        };
        let optimality = if exact {
            Optimality::Exact
        } else {
            Optimality::UpperBound
        };
        SolveOutcome {
            coloring,
            colors_used,
            optimality,
            caveats: Vec::new(),
        }
    }

    pub fn exact(mut self) -> Self {
        self.optimality = Optimality::Exact;
        self
    }

    pub fn with_caveat(mut self, c: Caveat) -> Self {
        self.optimality = Optimality::UpperBound;
        self.caveats.push(c);
        self
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PolyError {
    #[error("invalid bipartition")]
    InvalidBipartition,
    #[error("invalid split partition")]
    InvalidSplitPartition,
    #[error("graph has no edges")]
    Edgeless,
    #[error("graph is not connected")]
    Disconnected,
    #[error("decomposition tree has a prime node; graph is not a cograph")]
    PrimeNode,
    #[error("decomposition tree does not belong to this graph")]
    TreeMismatch,
    #[error("graph needs at least two vertices")]
    TooSmall,
    #[error("modulator does not leave a cluster graph")]
    InvalidModulator,
    #[error("vertex {0} is isolated; no open-neighborhood coloring exists")]
    IsolatedVertex(Vertex),
}

/// Side `left` gets 0, side `right` gets 1.
pub fn solve_bipartite_cfcn(g: &Graph, parts: &Bipartition) -> Result<SolveOutcome, PolyError> {
    if !parts.is_valid(g) {
        return Err(PolyError::InvalidBipartition);
    }
    if g.m() == 0 {
        return Err(PolyError::Edgeless);
    }
    let colors = g.vertices().map(|v| usize::from(parts.right.contains(v))).collect();
    Ok(SolveOutcome::new(g, Variant::Closed, Coloring::new(colors)).exact())
}

fn universal_split(g: &Graph, u: Vertex) -> Coloring {
    Coloring::new(g.vertices().map(|v| usize::from(v == u)).collect())
}

/// Every clique vertex has exactly one neighbor on the independent side.
fn one_private_neighbor(g: &Graph, p: &SplitPartition) -> bool {
    p.clique
        .iter()
        .all(|c| g.neighbors(c).iter().filter(|&&w| p.independent.contains(w)).count() == 1)
}

/// A 2-coloring in which the clique side is not monochromatic. A clique vertex
/// sees the whole clique, so one color appears exactly once on it; call that
/// vertex `z` (color 0, the rest of the clique 1).
fn two_coloring_with_pivot(g: &Graph, p: &SplitPartition, z: Vertex) -> Option<Coloring> {
    let mut c = Coloring::uniform(g.n(), 1);
    c.set(z, 0);
    if p.clique.len() == 2 {
        let w = p.clique.iter().find(|&v| v != z).unwrap();
        let (mut z_only, mut w_only, mut shared) = (vec![], vec![], vec![]);
        for v in &p.independent {
            match (g.has_edge(v, z), g.has_edge(v, w)) {
                (true, true) => shared.push(v),
                (true, false) => z_only.push(v),
                (false, true) => w_only.push(v),
                (false, false) => {}
            }
        }
        // Each clique vertex needs its independent neighbors in one color;
        // z-only vertices must take 1 and w-only vertices 0.
        let shared_color = match (z_only.is_empty(), w_only.is_empty()) {
            (_, true) => 1,
            (true, false) => 0,
            (false, false) if shared.is_empty() => 1,
            _ => return None,
        };
        for v in w_only {
            c.set(v, 0);
        }
        for v in shared {
            c.set(v, shared_color);
        }
        return Some(c);
    }
    let covered = p.independent.iter().all(|v| g.degree(v) == 0 || g.has_edge(v, z));
    covered.then_some(c)
}

/// A conflict-free closed-neighborhood 2-coloring, if one exists.
pub fn split_two_coloring(g: &Graph, p: &SplitPartition) -> Option<Coloring> {
    if g.m() == 0 {
        return None;
    }
    if let Some(u) = g.universal_vertex() {
        return Some(universal_split(g, u));
    }
    for q in p.neighbors_in(g) {
        if one_private_neighbor(g, &q) {
            let colors = g.vertices().map(|v| usize::from(q.independent.contains(v))).collect();
            return Some(Coloring::new(colors));
        }
        if q.clique.len() >= 2 {
            for z in &q.clique {
                if let Some(c) = two_coloring_with_pivot(g, &q, z) {
                    if verify(g, &c, Variant::Closed).is_valid() {
                        return Some(c);
                    }
                }
            }
        }
    }
    None
}

/// Split graphs: a 2-coloring when [`split_two_coloring`] finds one,
/// otherwise the 3-coloring `v ↦ 0`, `C∖v ↦ 1`, `I ↦ 2`.
pub fn solve_split_cfcn(g: &Graph, p: &SplitPartition) -> Result<SolveOutcome, PolyError> {
    if !p.is_valid(g) {
        return Err(PolyError::InvalidSplitPartition);
    }
    if g.m() == 0 {
        return Err(PolyError::Edgeless);
    }
    if let Some(c) = split_two_coloring(g, p) {
        return Ok(SolveOutcome::new(g, Variant::Closed, c).exact());
    }
    let pivot = p.clique.first().expect("an edge forces a nonempty clique side");
    let colors = g
        .vertices()
        .map(|v| match v {
            _ if v == pivot => 0,
            _ if p.clique.contains(v) => 1,
            _ => 2,
        })
        .collect();
    Ok(SolveOutcome::new(g, Variant::Closed, Coloring::new(colors)).exact())
}

/// Cograph constructions over a connected cograph's decomposition tree.
pub fn solve_cograph(g: &Graph, tree: &ModularDecomposition, variant: Variant) -> Result<SolveOutcome, PolyError> {
    if !tree.is_cograph() {
        return Err(PolyError::PrimeNode);
    }
    let root = tree.node(tree.root());
    if root.module.len() != g.n() {
        return Err(PolyError::TreeMismatch);
    }
    if g.n() < 2 {
        return Err(PolyError::TooSmall);
    }
    if root.kind != MdKind::Series {
        return Err(PolyError::Disconnected);
    }
    if variant == Variant::Closed {
        if let Some(u) = g.universal_vertex() {
            return Ok(SolveOutcome::new(g, variant, universal_split(g, u)).exact());
        }
    }
    if variant == Variant::Open && g.n() == 2 {
        return Ok(SolveOutcome::new(g, variant, Coloring::new(vec![0, 1])));
    }
    // G_x is the first child's module; G_y the union of the remaining children.
    let first = &tree.node(root.children[0]).module;
    let x = first.first().unwrap();
    let y = g.vertices().find(|v| !first.contains(*v)).unwrap();
    let colors = g
        .vertices()
        .map(|v| match v {
            _ if v == x => 0,
            _ if v == y => 1,
            _ => 2,
        })
        .collect();
    Ok(SolveOutcome::new(g, variant, Coloring::new(colors)))
}

fn cliques_of(g: &Graph, m: &Modulator) -> Result<Vec<VertexSet>, PolyError> {
    if m.residual != ResidualClass::Cluster || !m.is_valid(g) {
        return Err(PolyError::InvalidModulator);
    }
    let rest = g.without(&m.deleted);
    let cliques = cluster_cliques(&rest.graph).ok_or(PolyError::InvalidModulator)?;
    Ok(cliques
        .into_iter()
        .map(|c| c.iter().map(|v| rest.to_old[v]).collect())
        .collect())
}

/// At most `d + 2` colors: per clique one vertex 0 and the rest 1, and a
/// distinct color from `2..=d+1` on every modulator vertex.
pub fn lemma1_cfcn(g: &Graph, m: &Modulator) -> Result<SolveOutcome, PolyError> {
    let cliques = cliques_of(g, m)?;
    let mut c = Coloring::uniform(g.n(), 1);
    for clique in &cliques {
        c.set(clique.first().unwrap(), 0);
    }
    for (j, x) in m.deleted.iter().enumerate() {
        c.set(x, 2 + j);
    }
    Ok(SolveOutcome::new(g, Variant::Closed, c))
}

/// At most `2d + 2` colors:
/// 1. everything outside `X` gets 0;
/// 2. `X` gets distinct colors `1..=d`;
/// 3. each `x` whose neighborhood is all 0 has one neighbor recolored with a
///    fresh color from `d+1..=2d`;
/// 4. each clique still all 0 has one vertex recolored `2d + 1`.
///
/// In step 4 the recolored vertex is one with a neighbor in `X` when the
/// clique has one. A clique of three or more vertices without any such
/// vertex is a whole component; a second vertex of it takes color 1, or the
/// extra color 2 when `X` is empty, in which case the outcome carries
/// [`Caveat::IsolatedCliqueRepair`].
pub fn lemma1_cfon(g: &Graph, m: &Modulator) -> Result<SolveOutcome, PolyError> {
    if let Some(v) = g.vertices().find(|&v| g.degree(v) == 0) {
        return Err(PolyError::IsolatedVertex(v));
    }
    let cliques = cliques_of(g, m)?;
    let d = m.d();
    let in_x = |v: Vertex| m.deleted.contains(v);
    let mut c = Coloring::uniform(g.n(), 0);
    for (j, x) in m.deleted.iter().enumerate() {
        c.set(x, 1 + j);
    }
    let mut fresh = d + 1;
    for x in &m.deleted {
        let hood = g.neighbors(x);
        if hood.iter().all(|&w| c.get(w) == 0) {
            c.set(hood[0], fresh);
            fresh += 1;
        }
    }
    let mut repaired = false;
    for clique in &cliques {
        if clique.iter().any(|v| c.get(v) != 0) {
            continue;
        }
        let touches_x = |v: Vertex| g.neighbors(v).iter().any(|&w| in_x(w));
        match clique.iter().find(|&v| touches_x(v)) {
            Some(u) => c.set(u, 2 * d + 1),
            None => {
                let mut members = clique.iter();
                c.set(members.next().unwrap(), 2 * d + 1);
                if clique.len() >= 3 {
                    // the component is isolated, so reusing a modulator color is harmless
                    let second = if d >= 1 { 1 } else { 2 };
                    c.set(members.next().unwrap(), second);
                    repaired |= d == 0;
                }
            }
        }
    }
    let out = SolveOutcome::new(g, Variant::Open, c);
    Ok(if repaired {
        out.with_caveat(Caveat::IsolatedCliqueRepair)
    } else {
        out
    })
}

/// Post-hoc check used by callers that must never emit an invalid coloring.
pub fn check_outcome(g: &Graph, variant: Variant, out: &SolveOutcome) -> bool {
    verify(g, &out.coloring, variant).is_valid() && out.coloring.colors_used() == out.colors_used
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classes::{bipartition, modular_decomposition, split_partition};
    use crate::oracle::exact_cf;

    fn chi(g: &Graph, v: Variant) -> usize {
        exact_cf(g, v, None).unwrap().chromatic().unwrap()
    }

    fn vs(v: &[Vertex]) -> VertexSet {
        v.iter().copied().collect()
    }

    #[test]
    fn bipartite() {
        for (g, want) in [
            (Graph::complete(2), vec![0, 1]),
            (Graph::path(3), vec![0, 1, 0]),
            (Graph::cycle(4), vec![0, 1, 0, 1]),
        ] {
            let out = solve_bipartite_cfcn(&g, &bipartition(&g).unwrap()).unwrap();
            assert_eq!(out.coloring.as_slice(), &want[..]);
            assert_eq!(out.optimality, Optimality::Exact);
            assert!(check_outcome(&g, Variant::Closed, &out));
        }
        let bad = Bipartition {
            left: vs(&[0, 1]),
            right: vs(&[]),
        };
        assert_eq!(
            solve_bipartite_cfcn(&Graph::complete(2), &bad),
            Err(PolyError::InvalidBipartition)
        );
        let e = Graph::empty(2);
        assert_eq!(
            solve_bipartite_cfcn(&e, &bipartition(&e).unwrap()),
            Err(PolyError::Edgeless)
        );
    }

    #[test]
    fn split_examples() {
        let star = Graph::star(3);
        let out = solve_split_cfcn(&star, &split_partition(&star).unwrap()).unwrap();
        assert_eq!(out.coloring.as_slice(), &[1, 0, 0, 0]);

        let p4 = Graph::path(4);
        let p = SplitPartition {
            clique: vs(&[1, 2]),
            independent: vs(&[0, 3]),
        };
        let out = solve_split_cfcn(&p4, &p).unwrap();
        assert_eq!(out.coloring.as_slice(), &[1, 0, 0, 1]);
        assert_eq!(out.colors_used, 2);

        // c1=0, c2=1, i1=2, i2=3, i3=4; a tree, so the sides of its
        // bipartition already give 2 colors
        let g = Graph::from_edges(5, [(0, 1), (0, 2), (0, 3), (1, 4)]).unwrap();
        let out = solve_split_cfcn(&g, &split_partition(&g).unwrap()).unwrap();
        assert_eq!(out.colors_used, 2);
        assert_eq!(chi(&g, Variant::Closed), 2);
        assert!(check_outcome(&g, Variant::Closed, &out));

        // net: triangle with one pendant per corner
        let net = Graph::from_edges(6, [(0, 1), (1, 2), (0, 2), (0, 3), (1, 4), (2, 5)]).unwrap();
        let out = solve_split_cfcn(&net, &split_partition(&net).unwrap()).unwrap();
        assert_eq!(out.colors_used, 2);

        // triangle where corner 0 has two pendants and corner 1 has one
        let g = Graph::from_edges(6, [(0, 1), (1, 2), (0, 2), (0, 3), (0, 4), (1, 5)]).unwrap();
        let out = solve_split_cfcn(&g, &split_partition(&g).unwrap()).unwrap();
        assert_eq!(out.colors_used, chi(&g, Variant::Closed));
        assert_eq!(out.colors_used, 3);
        assert!(check_outcome(&g, Variant::Closed, &out));

        assert_eq!(
            solve_split_cfcn(&Graph::empty(2), &split_partition(&Graph::empty(2)).unwrap()),
            Err(PolyError::Edgeless)
        );
    }

    #[test]
    fn cograph_examples() {
        let p3 = Graph::path(3);
        let md = modular_decomposition(&p3);
        let out = solve_cograph(&p3, &md, Variant::Closed).unwrap();
        assert_eq!(out.coloring.as_slice(), &[0, 1, 0]);
        assert_eq!(out.optimality, Optimality::Exact);

        let c4 = Graph::cycle(4);
        let out = solve_cograph(&c4, &modular_decomposition(&c4), Variant::Closed).unwrap();
        assert_eq!(out.coloring.as_slice(), &[0, 1, 2, 2]);
        assert_eq!(out.optimality, Optimality::UpperBound);
        assert!(check_outcome(&c4, Variant::Closed, &out));
        assert_eq!(chi(&c4, Variant::Closed), 2);

        let out = solve_cograph(&p3, &md, Variant::Open).unwrap();
        assert_eq!(out.colors_used, 3);
        assert!(check_outcome(&p3, Variant::Open, &out));
        assert_eq!(chi(&p3, Variant::Open), 2);

        let p4 = Graph::path(4);
        assert_eq!(
            solve_cograph(&p4, &modular_decomposition(&p4), Variant::Closed),
            Err(PolyError::PrimeNode)
        );
        let two = Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        assert_eq!(
            solve_cograph(&two, &modular_decomposition(&two), Variant::Open),
            Err(PolyError::Disconnected)
        );
    }

    #[test]
    fn lemma1_closed_examples() {
        let k3 = Graph::complete(3);
        let m = Modulator::new(&k3, vs(&[]), ResidualClass::Cluster).unwrap();
        assert_eq!(lemma1_cfcn(&k3, &m).unwrap().coloring.as_slice(), &[0, 1, 1]);

        let star = Graph::star(3);
        let m = Modulator::new(&star, vs(&[0]), ResidualClass::Cluster).unwrap();
        let out = lemma1_cfcn(&star, &m).unwrap();
        assert_eq!(out.coloring.as_slice(), &[2, 0, 0, 0]);
        assert_eq!(out.colors_used, 2);
        assert!(check_outcome(&star, Variant::Closed, &out));
    }

    #[test]
    fn lemma1_open_examples() {
        // K2 = {0,1}, x = 2 adjacent to both
        let g = Graph::complete(3);
        let m = Modulator::new(&g, vs(&[2]), ResidualClass::Cluster).unwrap();
        let out = lemma1_cfon(&g, &m).unwrap();
        assert_eq!(out.coloring.as_slice(), &[2, 0, 1]);
        assert!(check_outcome(&g, Variant::Open, &out));

        let star = Graph::star(3);
        let m = Modulator::new(&star, vs(&[0]), ResidualClass::Cluster).unwrap();
        let out = lemma1_cfon(&star, &m).unwrap();
        assert_eq!(out.coloring.as_slice(), &[1, 2, 3, 3]);
        assert!(check_outcome(&star, Variant::Open, &out));
        assert!(out.colors_used <= 4);
    }

    #[test]
    fn lemma1_open_isolated_clique_corner() {
        let k3 = Graph::complete(3);
        let m = Modulator::new(&k3, vs(&[]), ResidualClass::Cluster).unwrap();
        let out = lemma1_cfon(&k3, &m).unwrap();
        assert!(check_outcome(&k3, Variant::Open, &out));
        assert_eq!(out.colors_used, 3);
        assert_eq!(out.caveats, vec![Caveat::IsolatedCliqueRepair]);

        // K3 component next to a star centered on the modulator vertex
        let g = Graph::from_edges(6, [(0, 1), (1, 2), (0, 2), (3, 4), (3, 5)]).unwrap();
        let m = Modulator::new(&g, vs(&[3]), ResidualClass::Cluster).unwrap();
        let out = lemma1_cfon(&g, &m).unwrap();
        assert!(check_outcome(&g, Variant::Open, &out));
        assert!(out.caveats.is_empty());
        assert!(out.colors_used <= 4);

        let iso = Graph::from_edges(3, [(0, 1)]).unwrap();
        let m = Modulator::new(&iso, vs(&[]), ResidualClass::Cluster).unwrap();
        assert_eq!(lemma1_cfon(&iso, &m), Err(PolyError::IsolatedVertex(2)));
    }

    #[test]
    fn lemma1_open_prefers_a_modulator_neighbor() {
        // clique {0,1,2}; x = 3 adjacent to 2 and to a singleton clique 4 (4 < none)
        // step 3 recolors 2 for x, so step 4 is skipped for the big clique
        let g = Graph::from_edges(5, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4)]).unwrap();
        let m = Modulator::new(&g, vs(&[3]), ResidualClass::Cluster).unwrap();
        let out = lemma1_cfon(&g, &m).unwrap();
        assert!(check_outcome(&g, Variant::Open, &out));
        // clique {0,1,2} where only 2 sees x, and x's fresh neighbor lies elsewhere
        let g = Graph::from_edges(5, [(1, 2), (2, 3), (1, 3), (3, 4), (4, 0)]).unwrap();
        let m = Modulator::new(&g, vs(&[4]), ResidualClass::Cluster).unwrap();
        let out = lemma1_cfon(&g, &m).unwrap();
        assert!(check_outcome(&g, Variant::Open, &out), "{:?}", out.coloring);
        assert!(out.colors_used <= 4);
        assert!(out.caveats.is_empty());
    }
}
