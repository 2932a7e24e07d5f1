//! Graph-class recognition with certificates, modulators and modular
//! decomposition.

mod modular;
mod modulator;

pub use modular::{modular_decomposition, MdKind, MdNode, ModularDecomposition};
pub use modulator::{
    cluster_modulator, find_induced_p3, find_threshold_obstruction, minimum_modulator, threshold_modulator, Modulator,
    ModulatorError, ResidualClass,
};

use std::collections::VecDeque;
use std::fmt;

use crate::graph::{Graph, Vertex, VertexSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GraphClass {
    Bipartite,
    Cluster,
    Split,
    Threshold,
    Cograph,
    /// Interval graph whose representation was supplied by the caller.
    IntervalGiven,
    General,
}

impl GraphClass {
    pub fn name(self) -> &'static str {
        match self {
            GraphClass::Bipartite => "bipartite",
            GraphClass::Cluster => "cluster",
            GraphClass::Split => "split",
            GraphClass::Threshold => "threshold",
            GraphClass::Cograph => "cograph",
            GraphClass::IntervalGiven => "interval-given",
            GraphClass::General => "general",
        }
    }
}

impl fmt::Display for GraphClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Two color classes of a bipartite graph. `left` holds the smallest vertex of
/// every component.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bipartition {
    pub left: VertexSet,
    pub right: VertexSet,
}

impl Bipartition {
    pub fn is_valid(&self, g: &Graph) -> bool {
        self.left.len() + self.right.len() == g.n()
            && g.vertices().all(|v| self.left.contains(v) != self.right.contains(v))
            && g.edges().all(|(u, v)| self.left.contains(u) != self.left.contains(v))
    }
}

pub fn bipartition(g: &Graph) -> Option<Bipartition> {
    let mut side: Vec<Option<bool>> = vec![None; g.n()];
    for s in g.vertices() {
        if side[s].is_some() {
            continue;
        }
        side[s] = Some(false);
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            let su = side[u].unwrap();
            for &w in g.neighbors(u) {
                match side[w] {
                    None => {
                        side[w] = Some(!su);
                        queue.push_back(w);
                    }
                    Some(sw) if sw == su => return None,
                    Some(_) => {}
                }
            }
        }
    }
    let left = g.vertices().filter(|&v| side[v] == Some(false)).collect();
    let right = g.vertices().filter(|&v| side[v] == Some(true)).collect();
    Some(Bipartition { left, right })
}

/// Partition into a clique side and an independent side.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SplitPartition {
    pub clique: VertexSet,
    pub independent: VertexSet,
}

impl SplitPartition {
    pub fn is_valid(&self, g: &Graph) -> bool {
        let c = self.clique.as_slice();
        let i = self.independent.as_slice();
        c.len() + i.len() == g.n()
            && g.vertices()
                .all(|v| self.clique.contains(v) != self.independent.contains(v))
            && c.iter()
                .enumerate()
                .all(|(a, &u)| c[a + 1..].iter().all(|&v| g.has_edge(u, v)))
            && i.iter()
                .enumerate()
                .all(|(a, &u)| i[a + 1..].iter().all(|&v| !g.has_edge(u, v)))
    }

    /// Every valid split partition of `g`: this one plus all partitions
    /// obtained by moving one vertex across or exchanging one pair.
    pub fn neighbors_in(&self, g: &Graph) -> Vec<SplitPartition> {
        let mut out = vec![self.clone()];
        let mk = |clique: VertexSet| SplitPartition {
            independent: g.vertices().filter(|v| !clique.contains(*v)).collect(),
            clique,
        };
        for c in &self.clique {
            let mut cl = self.clique.clone();
            cl.remove(c);
            out.push(mk(cl.clone()));
            for i in &self.independent {
                let mut swapped = cl.clone();
                swapped.insert(i);
                out.push(mk(swapped));
            }
        }
        for i in &self.independent {
            let mut cl = self.clique.clone();
            cl.insert(i);
            out.push(mk(cl));
        }
        out.retain(|p| p.is_valid(g));
        out.sort_by(|a, b| (b.clique.len(), &a.clique).cmp(&(a.clique.len(), &b.clique)));
        out.dedup();
        out
    }
}

/// Split recognition from the degree sequence. With degrees sorted
/// decreasingly and `m = max{ i : d_i ≥ i − 1 }`, the graph is split iff
/// `Σ_{i≤m} d_i = m(m−1) + Σ_{i>m} d_i`; the `m` top-degree vertices then form
/// a maximum clique.
pub fn split_partition(g: &Graph) -> Option<SplitPartition> {
    let mut order: Vec<Vertex> = g.vertices().collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    let degs: Vec<usize> = order.iter().map(|&v| g.degree(v)).collect();
    let m = (1..=degs.len()).filter(|&i| degs[i - 1] + 1 >= i).max().unwrap_or(0);
    let top: usize = degs[..m].iter().sum();
    let rest: usize = degs[m..].iter().sum();
    if top != m * m.saturating_sub(1) + rest {
        return None;
    }
    let clique: VertexSet = order[..m].iter().copied().collect();
    let independent = order[m..].iter().copied().collect();
    let p = SplitPartition { clique, independent };
    debug_assert!(p.is_valid(g));
    Some(p)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ThresholdStep {
    Isolated,
    Universal,
}

/// Elimination order: repeatedly remove an isolated or universal vertex of
/// what remains. Reversed, it is a creation sequence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThresholdSequence {
    pub removals: Vec<(Vertex, ThresholdStep)>,
}

impl ThresholdSequence {
    /// Rebuilds the graph by replaying the creation sequence.
    pub fn reconstruct(&self, n: usize) -> Graph {
        let mut added: Vec<Vertex> = Vec::new();
        let mut edges = Vec::new();
        for &(v, step) in self.removals.iter().rev() {
            if step == ThresholdStep::Universal {
                edges.extend(added.iter().map(|&u| (u, v)));
            }
            added.push(v);
        }
        Graph::from_edges(n, edges).expect("creation sequence yields a simple graph")
    }
}

pub fn threshold_sequence(g: &Graph) -> Option<ThresholdSequence> {
    let n = g.n();
    let mut alive = vec![true; n];
    let mut deg: Vec<usize> = g.vertices().map(|v| g.degree(v)).collect();
    let mut remaining = n;
    let mut removals = Vec::with_capacity(n);
    while remaining > 0 {
        let pick = (0..n).find_map(|v| {
            if !alive[v] {
                None
            } else if deg[v] == 0 {
                Some((v, ThresholdStep::Isolated))
            } else if deg[v] + 1 == remaining {
                Some((v, ThresholdStep::Universal))
            } else {
                None
            }
        })?;
        let v = pick.0;
        alive[v] = false;
        remaining -= 1;
        for &w in g.neighbors(v) {
            if alive[w] {
                deg[w] -= 1;
            }
        }
        removals.push(pick);
    }
    Some(ThresholdSequence { removals })
}

/// Cliques of a cluster graph (its components), or `None`.
pub fn cluster_cliques(g: &Graph) -> Option<Vec<VertexSet>> {
    let comps = g.connected_components();
    comps
        .iter()
        .all(|c| c.iter().all(|v| g.degree(v) + 1 == c.len()))
        .then_some(comps)
}

pub fn is_cluster(g: &Graph) -> bool {
    cluster_cliques(g).is_some()
}

pub fn is_threshold(g: &Graph) -> bool {
    threshold_sequence(g).is_some()
}

/// `∀x,y: N(x) ⊆ N[y] or N(y) ⊆ N[x]`.
pub fn has_nested_neighborhoods(g: &Graph) -> bool {
    let within = |x: Vertex, y: Vertex| g.neighbors(x).iter().all(|&w| w == y || g.has_edge(w, y));
    g.vertices()
        .all(|x| (x + 1..g.n()).all(|y| within(x, y) || within(y, x)))
}

/// All classes that hold, with certificates.
#[derive(Clone, Debug)]
pub struct Recognition {
    pub bipartite: Option<Bipartition>,
    pub cluster: Option<Vec<VertexSet>>,
    pub split: Option<SplitPartition>,
    pub threshold: Option<ThresholdSequence>,
    pub cograph: Option<ModularDecomposition>,
}

impl Recognition {
    pub fn labels(&self) -> Vec<GraphClass> {
        let mut out = Vec::new();
        if self.bipartite.is_some() {
            out.push(GraphClass::Bipartite);
        }
        if self.cluster.is_some() {
            out.push(GraphClass::Cluster);
        }
        if self.split.is_some() {
            out.push(GraphClass::Split);
        }
        if self.threshold.is_some() {
            out.push(GraphClass::Threshold);
        }
        if self.cograph.is_some() {
            out.push(GraphClass::Cograph);
        }
        if out.is_empty() {
            out.push(GraphClass::General);
        }
        out
    }

    pub fn has(&self, class: GraphClass) -> bool {
        self.labels().contains(&class)
    }
}

pub fn recognize(g: &Graph) -> Recognition {
    let md = modular_decomposition(g);
    Recognition {
        bipartite: bipartition(g),
        cluster: cluster_cliques(g),
        split: split_partition(g),
        threshold: threshold_sequence(g),
        cograph: md.is_cograph().then_some(md),
    }
}
