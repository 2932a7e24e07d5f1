use std::fmt;

use thiserror::Error;

use super::{is_cluster, is_threshold};
use crate::graph::{Graph, Vertex, VertexSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ResidualClass {
    Cluster,
    Threshold,
}

impl fmt::Display for ResidualClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ResidualClass::Cluster => "cluster",
            ResidualClass::Threshold => "threshold",
        })
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ModulatorError {
    #[error("vertex {0} is not in the graph")]
    InvalidVertex(Vertex),
    #[error("G minus {deleted} is not a {class} graph")]
    WrongResidual { deleted: VertexSet, class: ResidualClass },
}

/// Vertex set `X` whose deletion leaves a graph of `residual` class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Modulator {
    pub deleted: VertexSet,
    pub residual: ResidualClass,
}

impl Modulator {
    /// Validated constructor.
    pub fn new(g: &Graph, deleted: VertexSet, residual: ResidualClass) -> Result<Self, ModulatorError> {
        if let Some(v) = deleted.iter().find(|&v| v >= g.n()) {
            return Err(ModulatorError::InvalidVertex(v));
        }
        let m = Modulator { deleted, residual };
        if m.is_valid(g) {
            Ok(m)
        } else {
            Err(ModulatorError::WrongResidual {
                deleted: m.deleted,
                class: residual,
            })
        }
    }

    pub fn d(&self) -> usize {
        self.deleted.len()
    }

    pub fn is_valid(&self, g: &Graph) -> bool {
        let rest = g.without(&self.deleted).graph;
        match self.residual {
            ResidualClass::Cluster => is_cluster(&rest),
            ResidualClass::Threshold => is_threshold(&rest),
        }
    }
}

/// First induced P3 `(a, b, c)` among alive vertices, scanning triples
/// `a < b < c` lexicographically.
pub fn find_induced_p3(g: &Graph, alive: &[bool]) -> Option<[Vertex; 3]> {
    let verts: Vec<Vertex> = g.vertices().filter(|&v| alive[v]).collect();
    for (i, &a) in verts.iter().enumerate() {
        for (j, &b) in verts.iter().enumerate().skip(i + 1) {
            for &c in &verts[j + 1..] {
                let e = g.has_edge(a, b) as u8 + g.has_edge(b, c) as u8 + g.has_edge(a, c) as u8;
                if e == 2 {
                    return Some([a, b, c]);
                }
            }
        }
    }
    None
}

/// First induced P4, C4 or 2K2 among alive vertices, scanning quadruples
/// lexicographically.
pub fn find_threshold_obstruction(g: &Graph, alive: &[bool]) -> Option<[Vertex; 4]> {
    let verts: Vec<Vertex> = g.vertices().filter(|&v| alive[v]).collect();
    let k = verts.len();
    for a in 0..k {
        for b in a + 1..k {
            for c in b + 1..k {
                for d in c + 1..k {
                    let q = [verts[a], verts[b], verts[c], verts[d]];
                    let mut deg = [0u8; 4];
                    let mut m = 0;
                    for x in 0..4 {
                        for y in x + 1..4 {
                            if g.has_edge(q[x], q[y]) {
                                deg[x] += 1;
                                deg[y] += 1;
                                m += 1;
                            }
                        }
                    }
                    deg.sort_unstable();
                    let hit = match m {
                        2 => deg == [1, 1, 1, 1],
                        3 => deg == [1, 1, 2, 2],
                        4 => deg == [2, 2, 2, 2],
                        _ => false,
                    };
                    if hit {
                        return Some(q);
                    }
                }
            }
        }
    }
    None
}

/// Collects every deletion set reachable with exactly `depth` more branches.
fn branch(
    g: &Graph,
    class: ResidualClass,
    alive: &mut Vec<bool>,
    chosen: &mut Vec<Vertex>,
    depth: usize,
    found: &mut Vec<VertexSet>,
) {
    let obstruction: Option<Vec<Vertex>> = match class {
        ResidualClass::Cluster => find_induced_p3(g, alive).map(|t| t.to_vec()),
        ResidualClass::Threshold => find_threshold_obstruction(g, alive).map(|q| q.to_vec()),
    };
    match obstruction {
        None => found.push(chosen.iter().copied().collect()),
        Some(_) if depth == 0 => {}
        Some(hit) => {
            for v in hit {
                alive[v] = false;
                chosen.push(v);
                branch(g, class, alive, chosen, depth - 1, found);
                chosen.pop();
                alive[v] = true;
            }
        }
    }
}

/// Minimum-size modulator of size at most `budget`, ties broken by the
/// lexicographically smallest sorted vertex list. `None` proves no modulator
/// within the budget exists.
pub fn minimum_modulator(g: &Graph, class: ResidualClass, budget: usize) -> Option<Modulator> {
    for depth in 0..=budget {
        let mut found = Vec::new();
        branch(g, class, &mut vec![true; g.n()], &mut Vec::new(), depth, &mut found);
        if let Some(best) = found.into_iter().min() {
            return Some(Modulator {
                deleted: best,
                residual: class,
            });
        }
    }
    None
}

pub fn cluster_modulator(g: &Graph, budget: usize) -> Option<Modulator> {
    minimum_modulator(g, ResidualClass::Cluster, budget)
}

pub fn threshold_modulator(g: &Graph, budget: usize) -> Option<Modulator> {
    minimum_modulator(g, ResidualClass::Threshold, budget)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vs(v: &[Vertex]) -> VertexSet {
        v.iter().copied().collect()
    }

    /// Independent check: every vertex subset of size <= budget, smallest
    /// size first, lexicographic within a size.
    fn brute(g: &Graph, class: ResidualClass, budget: usize) -> Option<VertexSet> {
        let n = g.n();
        let mut best: Option<VertexSet> = None;
        for mask in 0u32..(1 << n) {
            let set: VertexSet = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
            if set.len() > budget
                || !(Modulator {
                    deleted: set.clone(),
                    residual: class,
                })
                .is_valid(g)
            {
                continue;
            }
            let better = match &best {
                None => true,
                Some(b) => (set.len(), &set) < (b.len(), b),
            };
            if better {
                best = Some(set);
            }
        }
        best
    }

    #[test]
    fn cluster_examples() {
        let k = Graph::from_edges(5, [(0, 1), (2, 3), (3, 4), (2, 4)]).unwrap();
        assert_eq!(cluster_modulator(&k, 0).unwrap().deleted, VertexSet::new());
        assert_eq!(cluster_modulator(&Graph::path(3), 1).unwrap().deleted, vs(&[0]));
        assert!(cluster_modulator(&Graph::cycle(5), 1).is_none());
        assert_eq!(cluster_modulator(&Graph::cycle(5), 2).unwrap().d(), 2);
    }

    #[test]
    fn threshold_examples() {
        assert_eq!(threshold_modulator(&Graph::star(3), 0).unwrap().d(), 0);
        let c4 = threshold_modulator(&Graph::cycle(4), 1).unwrap();
        assert_eq!(c4.deleted, vs(&[0]));
        assert!(c4.is_valid(&Graph::cycle(4)));
        let two_k2 = Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        assert_eq!(threshold_modulator(&two_k2, 1).unwrap().deleted, vs(&[0]));
        assert!(threshold_modulator(&two_k2, 0).is_none());
    }

    #[test]
    fn matches_brute_force_on_small_graphs() {
        let graphs = [
            Graph::cycle(5),
            Graph::cycle(6),
            Graph::path(6),
            Graph::from_edges(6, [(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 5), (5, 3)]).unwrap(),
            Graph::from_edges(6, [(0, 1), (2, 3), (4, 5), (0, 2), (2, 4)]).unwrap(),
        ];
        for g in &graphs {
            for class in [ResidualClass::Cluster, ResidualClass::Threshold] {
                for budget in 0..4 {
                    let got = minimum_modulator(g, class, budget).map(|m| m.deleted);
                    assert_eq!(got, brute(g, class, budget), "{g:?} {class} {budget}");
                }
            }
        }
    }

    #[test]
    fn validated_constructor() {
        let g = Graph::path(3);
        assert!(Modulator::new(&g, vs(&[1]), ResidualClass::Cluster).is_ok());
        assert!(matches!(
            Modulator::new(&g, vs(&[]), ResidualClass::Cluster),
            Err(ModulatorError::WrongResidual { .. })
        ));
        assert_eq!(
            Modulator::new(&g, vs(&[9]), ResidualClass::Cluster),
            Err(ModulatorError::InvalidVertex(9))
        );
    }
}
