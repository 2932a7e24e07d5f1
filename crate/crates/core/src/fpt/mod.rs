//! Parameterized algorithms: the cluster-deletion kernel with coloring
//! lift-back, and additive approximations for graphs near a threshold graph.

mod kernel;
mod threshold;

use std::collections::BTreeMap;

use thiserror::Error;

use crate::classes::{cluster_cliques, Modulator, ResidualClass};
use crate::graph::{Graph, Vertex, VertexSet};

pub use kernel::{
    build_kernel, minimum_via_kernel, reduce, reduce_cfcn, reduce_cfon, solve_via_kernel, DeletedClique, DeletedVertex,
    KernelInstance, KernelVerdict, Reduction, Route,
};
pub use threshold::{
    approx_cfcn_threshold, approx_cfon_threshold, approx_threshold, partial_coloring, PartialColoring,
};

/// Largest modulator handled; type masks are `u64` and mega-type vectors have
/// `2^d` entries.
pub const MAX_MODULATOR: usize = 16;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FptError {
    #[error("modulator is not valid for the required residual class ({0})")]
    InvalidModulator(ResidualClass),
    #[error("modulator has {d} vertices, above the supported {max}")]
    ModulatorTooLarge { d: usize, max: usize },
    #[error("the number of colors must be at least 1")]
    ZeroColors,
    #[error("vertex {0} is isolated; no open-neighborhood coloring exists")]
    IsolatedVertex(Vertex),
    #[error("graph is not connected")]
    Disconnected,
    #[error("kernel has {n} vertices, above the oracle limit of {limit} (size bound {bound})")]
    KernelTooLarge { n: usize, limit: usize, bound: u128 },
    #[error("partial coloring search exceeded {0} states")]
    SearchTooLarge(usize),
    #[error("coloring has {got} entries, kernel has {want} vertices")]
    KernelColoringLength { got: usize, want: usize },
    #[error("lift-back failed: {0}")]
    Lift(String),
}

/// Vertices of one residual clique grouped by their neighborhood in `X`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliqueTypes {
    pub members: VertexSet,
    /// `(mask, vertices)` pairs sorted by mask; bit `j` of a mask stands for
    /// the `j`-th smallest modulator vertex. Empty types are omitted.
    pub types: Vec<(u64, Vec<Vertex>)>,
}

impl CliqueTypes {
    pub fn rep(&self) -> Vertex {
        self.members.first().expect("cliques are nonempty")
    }

    pub fn type_of(&self, mask: u64) -> &[Vertex] {
        self.types
            .binary_search_by_key(&mask, |t| t.0)
            .map(|i| self.types[i].1.as_slice())
            .unwrap_or(&[])
    }

    /// Sparse mega-type key: nonzero type sizes, each capped at `cap`.
    pub fn mega_key(&self, cap: usize) -> Vec<(u64, usize)> {
        self.types.iter().map(|(m, vs)| (*m, vs.len().min(cap))).collect()
    }

    /// Dense type-count vector of length `2^d`, each entry capped at `cap`.
    pub fn vector(&self, d: usize, cap: usize) -> Vec<usize> {
        let mut out = vec![0; 1 << d];
        for (m, vs) in &self.types {
            out[*m as usize] = vs.len().min(cap);
        }
        out
    }
}

/// Bitmask of `N(v) ∩ X` over the sorted modulator.
pub fn neighbor_mask(g: &Graph, modulator: &VertexSet, v: Vertex) -> u64 {
    modulator
        .iter()
        .enumerate()
        .filter(|&(_, x)| g.has_edge(v, x))
        .fold(0, |acc, (j, _)| acc | 1 << j)
}

fn check_modulator(g: &Graph, m: &Modulator, class: ResidualClass) -> Result<(), FptError> {
    if m.residual != class || !m.is_valid(g) {
        return Err(FptError::InvalidModulator(class));
    }
    if m.d() > MAX_MODULATOR {
        return Err(FptError::ModulatorTooLarge {
            d: m.d(),
            max: MAX_MODULATOR,
        });
    }
    Ok(())
}

/// Partitions every clique of `G ∖ X` into types; cliques are ordered by
/// smallest member, vertices inside a type ascending.
pub fn compute_types(g: &Graph, m: &Modulator) -> Result<Vec<CliqueTypes>, FptError> {
    check_modulator(g, m, ResidualClass::Cluster)?;
    let rest = g.without(&m.deleted);
    let cliques = cluster_cliques(&rest.graph).ok_or(FptError::InvalidModulator(ResidualClass::Cluster))?;
    Ok(cliques
        .into_iter()
        .map(|c| {
            let members: VertexSet = c.iter().map(|v| rest.to_old[v]).collect();
            let mut by_mask: BTreeMap<u64, Vec<Vertex>> = BTreeMap::new();
            for v in &members {
                by_mask.entry(neighbor_mask(g, &m.deleted, v)).or_default().push(v);
            }
            CliqueTypes {
                members,
                types: by_mask.into_iter().collect(),
            }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vs(v: &[Vertex]) -> VertexSet {
        v.iter().copied().collect()
    }

    #[test]
    fn type_examples() {
        // x = 0, clique {1, 2}, only 1 adjacent to x
        let g = Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        let m = Modulator::new(&g, vs(&[0]), ResidualClass::Cluster).unwrap();
        let t = compute_types(&g, &m).unwrap();
        assert_eq!(t.len(), 1);
        assert_eq!(t[0].type_of(1), &[1]);
        assert_eq!(t[0].type_of(0), &[2]);
        assert_eq!(t[0].vector(1, 9), vec![1, 1]);

        let k3 = Graph::complete(3);
        let m = Modulator::new(&k3, vs(&[]), ResidualClass::Cluster).unwrap();
        let t = compute_types(&k3, &m).unwrap();
        assert_eq!(t[0].types, vec![(0, vec![0, 1, 2])]);

        // X = {0, 1}, clique {2} adjacent to both
        let g = Graph::from_edges(3, [(0, 2), (1, 2)]).unwrap();
        let m = Modulator::new(&g, vs(&[0, 1]), ResidualClass::Cluster).unwrap();
        let t = compute_types(&g, &m).unwrap();
        assert_eq!(t[0].types, vec![(0b11, vec![2])]);
        assert_eq!(t[0].mega_key(5), vec![(0b11, 1)]);
    }

    #[test]
    fn wrong_modulator_rejected() {
        let g = Graph::path(3);
        let m = Modulator {
            deleted: VertexSet::new(),
            residual: ResidualClass::Cluster,
        };
        assert_eq!(
            compute_types(&g, &m),
            Err(FptError::InvalidModulator(ResidualClass::Cluster))
        );
    }
}
