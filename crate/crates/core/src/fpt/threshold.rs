use std::collections::HashMap;

use super::{check_modulator, neighbor_mask, FptError};
use crate::classes::{Modulator, ResidualClass};
use crate::coloring::{Color, Coloring, Variant};
use crate::graph::{Graph, Vertex, VertexSet};
use crate::polysolve::{Caveat, SolveOutcome};

/// Reachable-state ceiling for the partial coloring search.
const STATE_LIMIT: usize = 4_000_000;

/// Coloring of `X ∪ N(X)` in which the neighborhood of every modulator vertex
/// has a unique color; other vertices are unconstrained.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartialColoring {
    /// `(vertex, color)` for every vertex of `X ∪ N(X)`, ascending.
    pub colors: Vec<(Vertex, Color)>,
    pub colors_used: usize,
}

/// Vertices that are interchangeable for every constraint: a modulator vertex
/// on its own, or all of `N(X) ∖ X` sharing one neighborhood in `X`.
struct Group {
    members: Vec<Vertex>,
    /// Constraints (indexed like the sorted modulator) this group feeds.
    feeds: u64,
}

/// How one group is colored: colors used exactly once, plus optionally one
/// color absorbing the remaining (at least two) vertices. Extra colors of
/// multiplicity two or more only block uniqueness, so one suffices.
#[derive(Clone, Copy)]
struct Profile {
    singles: u32,
    filler: Option<usize>,
}

fn profiles(size: usize, k: usize) -> Vec<Profile> {
    let mut out = Vec::new();
    for singles in 0u32..(1 << k) {
        let ones = singles.count_ones() as usize;
        if ones == size {
            out.push(Profile { singles, filler: None });
        }
        if ones + 2 <= size {
            out.extend((0..k).filter(|c| singles >> c & 1 == 0).map(|c| Profile {
                singles,
                filler: Some(c),
            }));
        }
    }
    out
}

/// State: two bits per (constraint, color) pair holding min(count, 2).
fn bump(state: u64, constraint: usize, color: usize, by: u64, k: usize) -> u64 {
    let shift = 2 * (constraint * k + color);
    let cur = (state >> shift) & 3;
    let next = (cur + by).min(2);
    (state & !(3 << shift)) | (next << shift)
}

fn satisfied(state: u64, d: usize, k: usize) -> bool {
    (0..d).all(|x| (0..k).any(|c| (state >> (2 * (x * k + c))) & 3 == 1))
}

fn search(groups: &[Group], d: usize, k: usize) -> Result<Option<Vec<Profile>>, FptError> {
    let mut layers: Vec<HashMap<u64, (u64, usize)>> = Vec::with_capacity(groups.len());
    let mut frontier: Vec<u64> = vec![0];
    let options: Vec<Vec<Profile>> = groups.iter().map(|g| profiles(g.members.len(), k)).collect();
    for (gi, group) in groups.iter().enumerate() {
        let mut next: HashMap<u64, (u64, usize)> = HashMap::new();
        for &state in &frontier {
            for (pi, p) in options[gi].iter().enumerate() {
                let mut s = state;
                for x in (0..d).filter(|x| group.feeds >> x & 1 == 1) {
                    for c in (0..k).filter(|c| p.singles >> c & 1 == 1) {
                        s = bump(s, x, c, 1, k);
                    }
                    if let Some(c) = p.filler {
                        s = bump(s, x, c, 2, k);
                    }
                }
                next.entry(s).or_insert((state, pi));
            }
        }
        if next.len() > STATE_LIMIT {
            return Err(FptError::SearchTooLarge(STATE_LIMIT));
        }
        frontier = next.keys().copied().collect();
        frontier.sort_unstable();
        layers.push(next);
    }
    let Some(mut state) = frontier.into_iter().filter(|&s| satisfied(s, d, k)).min() else {
        return Ok(None);
    };
    let mut chosen = vec![
        Profile {
            singles: 0,
            filler: None
        };
        groups.len()
    ];
    for gi in (0..groups.len()).rev() {
        let (prev, pi) = layers[gi][&state];
        chosen[gi] = options[gi][pi];
        state = prev;
    }
    Ok(Some(chosen))
}

/// Minimum partial coloring: every `N[x]` (closed) or `N(x)` (open), `x ∈ X`,
/// gets a unique color. Tries `k = 1, 2, …` up to `d + 1` (closed) or
/// `2d + 1` (open).
pub fn partial_coloring(g: &Graph, modulator: &VertexSet, variant: Variant) -> Result<PartialColoring, FptError> {
    let d = modulator.len();
    let xs: Vec<Vertex> = modulator.iter().collect();
    let mut groups: Vec<Group> = xs
        .iter()
        .enumerate()
        .map(|(j, &x)| {
            let mut feeds = neighbor_mask(g, modulator, x);
            if variant == Variant::Closed {
                feeds |= 1 << j;
            }
            Group {
                members: vec![x],
                feeds,
            }
        })
        .collect();
    let mut by_mask: std::collections::BTreeMap<u64, Vec<Vertex>> = Default::default();
    for v in g.vertices().filter(|&v| !modulator.contains(v)) {
        let mask = neighbor_mask(g, modulator, v);
        if mask != 0 {
            by_mask.entry(mask).or_default().push(v);
        }
    }
    groups.extend(by_mask.into_iter().map(|(feeds, members)| Group { members, feeds }));
    let top = match variant {
        Variant::Closed => d + 1,
        Variant::Open => 2 * d + 1,
    };
    for k in 1..=top.max(1) {
        if 2 * d * k > 64 {
            return Err(FptError::SearchTooLarge(STATE_LIMIT));
        }
        if let Some(chosen) = search(&groups, d, k)? {
            let mut colors = Vec::new();
            for (group, p) in groups.iter().zip(&chosen) {
                let mut palette = (0..k).filter(|c| p.singles >> c & 1 == 1);
                for &v in &group.members {
                    let c = palette.next().or(p.filler).expect("profile covers the group");
                    colors.push((v, c));
                }
            }
            colors.sort_unstable();
            let mut used: Vec<Color> = colors.iter().map(|&(_, c)| c).collect();
            used.sort_unstable();
            used.dedup();
            return Ok(PartialColoring {
                colors,
                colors_used: used.len(),
            });
        }
    }
    Err(FptError::Lift("no partial coloring within the modulator bound".into()))
}

/// Additive approximation for graphs whose modulator leaves a threshold
/// graph: partial coloring of `X ∪ N(X)`, a used color everywhere else, then
/// per residual component a fresh color on its universal vertex (closed) or on
/// its universal vertex and one neighbor of it (open).
pub fn approx_threshold(g: &Graph, m: &Modulator, variant: Variant) -> Result<SolveOutcome, FptError> {
    check_modulator(g, m, ResidualClass::Threshold)?;
    if variant == Variant::Open {
        if let Some(v) = g.vertices().find(|&v| g.degree(v) == 0) {
            return Err(FptError::IsolatedVertex(v));
        }
    }
    if !g.is_connected() {
        return Err(FptError::Disconnected);
    }
    let partial = partial_coloring(g, &m.deleted, variant)?;
    let mut c = Coloring::uniform(g.n(), 0);
    for &(v, col) in &partial.colors {
        c.set(v, col);
    }
    let mut fresh = c.max_color().map_or(0, |x| x + 1);
    let rest = g.without(&m.deleted);
    let components = rest.graph.connected_components();
    for comp in &components {
        let local = rest.graph.induced_subgraph(comp).expect("component ids are in range");
        let u_local = local
            .graph
            .universal_vertex()
            .expect("connected threshold graphs have a universal vertex");
        let u = rest.to_old[local.to_old[u_local]];
        c.set(u, fresh);
        fresh += 1;
        if variant == Variant::Open {
            let partner = comp
                .iter()
                .map(|v| rest.to_old[v])
                .find(|&v| v != u)
                .or_else(|| g.neighbors(u).first().copied())
                .expect("no isolated vertices");
            c.set(partner, fresh);
            fresh += 1;
        }
    }
    let out = SolveOutcome::new(g, variant, c);
    Ok(if components.len() > 1 {
        out.with_caveat(Caveat::DisconnectedResidual)
    } else {
        out
    })
}

pub fn approx_cfcn_threshold(g: &Graph, m: &Modulator) -> Result<SolveOutcome, FptError> {
    approx_threshold(g, m, Variant::Closed)
}

pub fn approx_cfon_threshold(g: &Graph, m: &Modulator) -> Result<SolveOutcome, FptError> {
    approx_threshold(g, m, Variant::Open)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::verify;
    use crate::oracle::{exact_cf, UniqueColorSearch};

    fn vs(v: &[Vertex]) -> VertexSet {
        v.iter().copied().collect()
    }

    fn chi(g: &Graph, v: Variant) -> usize {
        exact_cf(g, v, None).unwrap().chromatic().unwrap()
    }

    /// Independent brute force over `X ∪ N(X)` with the generic search.
    fn brute_partial(g: &Graph, x: &VertexSet, variant: Variant) -> usize {
        let items: Vec<Vertex> = g
            .vertices()
            .filter(|&v| x.contains(v) || g.neighbors(v).iter().any(|&w| x.contains(w)))
            .collect();
        let idx = |v: Vertex| items.binary_search(&v).unwrap();
        let edges = x
            .iter()
            .map(|xv| variant.neighborhood(g, xv).into_iter().map(idx).collect())
            .collect();
        let mut s = UniqueColorSearch::new(items.len(), edges);
        (1..=items.len().max(1)).find(|&k| s.solve(k).is_some()).unwrap()
    }

    #[test]
    fn partial_matches_brute_force() {
        let graphs = [
            (Graph::cycle(5), vs(&[0])),
            (Graph::cycle(6), vs(&[0, 3])),
            (Graph::complete(5), vs(&[0, 1])),
            (
                Graph::from_edges(7, [(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (1, 5), (6, 0)]).unwrap(),
                vs(&[0, 1]),
            ),
        ];
        for (g, x) in &graphs {
            for v in [Variant::Closed, Variant::Open] {
                let p = partial_coloring(g, x, v).unwrap();
                assert_eq!(p.colors_used, brute_partial(g, x, v), "{g:?} {x} {v}");
            }
        }
    }

    #[test]
    fn d_zero_threshold() {
        // threshold graph: 0 universal over 1..3, 1–2 edge
        let g = Graph::from_edges(4, [(0, 1), (0, 2), (0, 3), (1, 2)]).unwrap();
        let m = Modulator::new(&g, vs(&[]), ResidualClass::Threshold).unwrap();
        let out = approx_cfcn_threshold(&g, &m).unwrap();
        assert_eq!(out.coloring.as_slice(), &[1, 0, 0, 0]);
        assert_eq!(out.colors_used, chi(&g, Variant::Closed));

        let out = approx_cfon_threshold(&g, &m).unwrap();
        assert!(verify(&g, &out.coloring, Variant::Open).is_valid());
        assert!(out.colors_used <= chi(&g, Variant::Open) + 2);
    }

    #[test]
    fn one_modulator_vertex_over_a_star() {
        // star centered at 1 on {1,2,3,4}; x = 0 adjacent to 2 and 3
        let g = Graph::from_edges(5, [(1, 2), (1, 3), (1, 4), (0, 2), (0, 3)]).unwrap();
        let m = Modulator::new(&g, vs(&[0]), ResidualClass::Threshold).unwrap();
        for (v, slack) in [(Variant::Closed, 1), (Variant::Open, 2)] {
            let out = approx_threshold(&g, &m, v).unwrap();
            assert!(verify(&g, &out.coloring, v).is_valid());
            let best = chi(&g, v);
            assert!(best <= out.colors_used && out.colors_used <= best + slack);
        }
    }

    #[test]
    fn singleton_residual_uses_a_modulator_partner() {
        let g = Graph::path(2);
        let m = Modulator::new(&g, vs(&[0]), ResidualClass::Threshold).unwrap();
        let out = approx_cfon_threshold(&g, &m).unwrap();
        assert!(verify(&g, &out.coloring, Variant::Open).is_valid());
    }

    #[test]
    fn errors_and_caveats() {
        let g = Graph::from_edges(3, [(0, 1)]).unwrap();
        let m = Modulator::new(&g, vs(&[]), ResidualClass::Threshold).unwrap();
        assert_eq!(approx_cfon_threshold(&g, &m), Err(FptError::IsolatedVertex(2)));
        assert_eq!(approx_cfcn_threshold(&g, &m), Err(FptError::Disconnected));

        // removing the center of P3 leaves two isolated vertices
        let p3 = Graph::path(3);
        let m = Modulator::new(&p3, vs(&[1]), ResidualClass::Threshold).unwrap();
        let out = approx_cfcn_threshold(&p3, &m).unwrap();
        assert!(verify(&p3, &out.coloring, Variant::Closed).is_valid());
        assert_eq!(out.caveats, vec![Caveat::DisconnectedResidual]);
    }
}
