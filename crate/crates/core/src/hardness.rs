//! Reduction from proper `k`-coloring to open-neighborhood conflict-free
//! `(k+2)`-coloring of split graphs.
//!
//! `G′` adds two universal vertices `x`, `y` to `G`. The split graph `H` has
//! `V(G′)` as a clique plus one independent vertex per edge `uv` of `G′`,
//! adjacent to exactly `u` and `v`.

use thiserror::Error;

use crate::coloring::{verify, Coloring, Variant};
use crate::graph::{Graph, Vertex};
use crate::oracle::{proper_coloring, Oracle};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum HardnessError {
    #[error("k must be at least 3, got {0}")]
    SmallK(usize),
    #[error("coloring of H is not open-neighborhood conflict-free (vertex {0})")]
    InvalidColoring(Vertex),
    #[error("coloring has {got} entries, H has {want} vertices")]
    LengthMismatch { got: usize, want: usize },
    #[error("coloring uses {used} colors, more than k + 2 = {limit}")]
    TooManyColors { used: usize, limit: usize },
    #[error("H has {n} vertices, above the oracle limit of {limit}")]
    TooLarge { n: usize, limit: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GadgetInstance {
    pub source: Graph,
    pub k: usize,
    /// `G` plus the universal pair; ids `0..n` are `G`, then `x`, then `y`.
    pub augmented: Graph,
    pub split: Graph,
    pub x: Vertex,
    pub y: Vertex,
    /// Edge of `G′` and the independent vertex of `H` standing for it, in
    /// lexicographic edge order.
    pub edge_vertices: Vec<((Vertex, Vertex), Vertex)>,
}

impl GadgetInstance {
    /// Clique side of `H`.
    pub fn clique_size(&self) -> usize {
        self.augmented.n()
    }

    /// Map sidecar: `x <id>`, `y <id>`, then `e <u> <v> <id>` per edge of `G′`.
    /// Vertices of `G` keep their ids.
    pub fn map_text(&self) -> String {
        let mut out = format!("x {}\ny {}\n", self.x, self.y);
        for ((u, v), w) in &self.edge_vertices {
            out.push_str(&format!("e {u} {v} {w}\n"));
        }
        out
    }

    /// The explicit coloring from the forward direction: `G` keeps its
    /// colors, every edge vertex takes `k − 1`, `x` takes `k`, `y` takes `k+1`.
    pub fn forward_coloring(&self, proper: &Coloring) -> Coloring {
        let n = self.source.n();
        assert_eq!(proper.len(), n);
        let mut colors = proper.as_slice().to_vec();
        colors.push(self.k);
        colors.push(self.k + 1);
        colors.extend(std::iter::repeat_n(self.k - 1, self.edge_vertices.len()));
        Coloring::new(colors)
    }

    /// Restriction of a valid `(k+2)`-coloring of `H` to `G`.
    pub fn decode(&self, coloring: &Coloring) -> Result<Coloring, HardnessError> {
        if coloring.len() != self.split.n() {
            return Err(HardnessError::LengthMismatch {
                got: coloring.len(),
                want: self.split.n(),
            });
        }
        if let crate::coloring::Verdict::Invalid { vertex } = verify(&self.split, coloring, Variant::Open) {
            return Err(HardnessError::InvalidColoring(vertex));
        }
        let used = coloring.colors_used();
        if used > self.k + 2 {
            return Err(HardnessError::TooManyColors {
                used,
                limit: self.k + 2,
            });
        }
        Ok(Coloring::new(coloring.as_slice()[..self.source.n()].to_vec()))
    }
}

pub fn encode(g: &Graph, k: usize) -> Result<GadgetInstance, HardnessError> {
    if k < 3 {
        return Err(HardnessError::SmallK(k));
    }
    let n = g.n();
    let (x, y) = (n, n + 1);
    let extra = (0..n).flat_map(|v| [(v, x), (v, y)]).chain([(x, y)]);
    let augmented = Graph::from_edges(n + 2, g.edges().chain(extra)).expect("ids in range");
    let mut split_edges: Vec<(Vertex, Vertex)> = (0..n + 2).flat_map(|u| (u + 1..n + 2).map(move |v| (u, v))).collect();
    let mut edge_vertices = Vec::with_capacity(augmented.m());
    for (j, (u, v)) in augmented.edges().enumerate() {
        let w = n + 2 + j;
        split_edges.push((u, w));
        split_edges.push((v, w));
        edge_vertices.push(((u, v), w));
    }
    let split = Graph::from_edges(n + 2 + augmented.m(), split_edges).expect("ids in range");
    debug_assert_eq!(split.n(), 3 * n + 3 + g.m());
    Ok(GadgetInstance {
        source: g.clone(),
        k,
        augmented,
        split,
        x,
        y,
        edge_vertices,
    })
}

pub fn is_proper(g: &Graph, c: &Coloring) -> bool {
    g.edges().all(|(u, v)| c.get(u) != c.get(v))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossReport {
    pub k: usize,
    pub split_vertices: usize,
    pub source_colorable: bool,
    pub gadget_colorable: bool,
    /// Whether the gadget witness (if any) decoded to a proper coloring of `G`
    /// with at most `k` colors.
    pub decoded_ok: Option<bool>,
}

impl CrossReport {
    pub fn agrees(&self) -> bool {
        self.source_colorable == self.gadget_colorable && self.decoded_ok != Some(false)
    }
}

/// Decides both sides of the equivalence by exhaustive search.
pub fn cross_validate(g: &Graph, k: usize, oracle: &Oracle) -> Result<CrossReport, HardnessError> {
    let inst = encode(g, k)?;
    if inst.split.n() > oracle.limit {
        return Err(HardnessError::TooLarge {
            n: inst.split.n(),
            limit: oracle.limit,
        });
    }
    let source_colorable = proper_coloring(g, k).is_some();
    let witness = oracle
        .decide(&inst.split, Variant::Open, k + 2)
        .expect("size and k checked");
    let decoded_ok = witness.as_ref().map(|w| {
        inst.decode(w)
            .map(|c| is_proper(g, &c) && c.colors_used() <= k)
            .unwrap_or(false)
    });
    Ok(CrossReport {
        k,
        split_vertices: inst.split.n(),
        source_colorable,
        gadget_colorable: witness.is_some(),
        decoded_ok,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classes::split_partition;

    #[test]
    fn sizes() {
        let h = encode(&Graph::complete(3), 3).unwrap();
        assert_eq!(h.augmented, Graph::complete(5));
        assert_eq!((h.split.n(), h.split.m()), (15, 30));
        assert_eq!(encode(&Graph::complete(2), 3).unwrap().split.n(), 10);
        assert_eq!(encode(&Graph::empty(1), 3).unwrap().split.n(), 6);
        assert_eq!(encode(&Graph::empty(1), 2), Err(HardnessError::SmallK(2)));
    }

    #[test]
    fn structure() {
        let g = Graph::cycle(5);
        let h = encode(&g, 3).unwrap();
        let p = split_partition(&h.split).unwrap();
        assert!(p.is_valid(&h.split));
        for &((u, v), w) in &h.edge_vertices {
            assert_eq!(h.split.neighbors(w), &[u, v]);
        }
        let clique: Vec<Vertex> = (0..h.clique_size()).collect();
        assert!(clique
            .iter()
            .all(|&a| clique.iter().all(|&b| a == b || h.split.has_edge(a, b))));
    }

    #[test]
    fn forward_and_decode() {
        let k3 = Graph::complete(3);
        let h = encode(&k3, 3).unwrap();
        let c = h.forward_coloring(&Coloring::new(vec![0, 1, 2]));
        assert_eq!(&c.as_slice()[3..5], &[3, 4]);
        assert!(c.as_slice()[5..].iter().all(|&x| x == 2));
        assert!(verify(&h.split, &c, Variant::Open).is_valid());
        assert_eq!(c.colors_used(), 5);
        assert_eq!(h.decode(&c).unwrap().as_slice(), &[0, 1, 2]);

        let bad = Coloring::uniform(h.split.n(), 0);
        assert!(matches!(h.decode(&bad), Err(HardnessError::InvalidColoring(_))));
    }

    #[test]
    fn k2_witness_decodes_properly() {
        let k2 = Graph::complete(2);
        let h = encode(&k2, 3).unwrap();
        let w = Oracle::default().decide(&h.split, Variant::Open, 5).unwrap().unwrap();
        let c = h.decode(&w).unwrap();
        assert!(is_proper(&k2, &c));
    }

    #[test]
    fn equivalence_small() {
        let o = Oracle::default();
        let r = cross_validate(&Graph::complete(3), 3, &o).unwrap();
        assert!(r.source_colorable && r.gadget_colorable && r.agrees());
        assert!(matches!(
            cross_validate(&Graph::complete(4), 3, &o),
            Err(HardnessError::TooLarge { n: 21, limit: 16 })
        ));
    }

    #[test]
    fn equivalence_beyond_default_guard() {
        let o = Oracle::with_limit(24);
        let r = cross_validate(&Graph::complete(4), 3, &o).unwrap();
        assert!(!r.source_colorable && !r.gadget_colorable);
        let r = cross_validate(&Graph::cycle(5), 3, &o).unwrap();
        assert!(r.source_colorable && r.gadget_colorable && r.agrees());
    }
}
