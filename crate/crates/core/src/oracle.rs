//! Exact conflict-free chromatic numbers by exhaustive backtracking.
//!
//! The search assigns colors in vertex order with the usual symmetry break
//! (a vertex may use at most one color beyond the largest used so far), so the
//! palette of every partial assignment is a prefix `0..k`. A neighborhood is
//! checked the moment its last member is colored; a fully colored
//! neighborhood without a unique color can never recover.

use thiserror::Error;

use crate::coloring::{verify, Color, Coloring, Variant};
use crate::graph::{Graph, Vertex};

pub const DEFAULT_LIMIT: usize = 16;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("instance has {n} vertices, above the oracle limit of {limit}")]
    TooLarge { n: usize, limit: usize },
    #[error("the number of colors must be at least 1")]
    ZeroColors,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OracleResult {
    Optimal {
        chromatic: usize,
        witness: Coloring,
    },
    /// Some neighborhood is empty (an isolated vertex under the open variant).
    Infeasible,
    /// No coloring with at most `max_k` colors exists.
    AboveBound {
        max_k: usize,
    },
}

impl OracleResult {
    pub fn chromatic(&self) -> Option<usize> {
        match self {
            OracleResult::Optimal { chromatic, .. } => Some(*chromatic),
            _ => None,
        }
    }

    pub fn witness(&self) -> Option<&Coloring> {
        match self {
            OracleResult::Optimal { witness, .. } => Some(witness),
            _ => None,
        }
    }
}

/// Backtracking search for colorings of `n` items in which every listed
/// hyperedge contains a color exactly once. Items outside every hyperedge
/// still get a color (0 by the symmetry break).
#[derive(Clone, Debug)]
pub struct UniqueColorSearch {
    n: usize,
    hyperedges: Vec<Vec<usize>>,
    /// Hyperedges indexed by their largest member.
    closing: Vec<Vec<usize>>,
    nodes: u64,
}

impl UniqueColorSearch {
    pub fn new(n: usize, hyperedges: Vec<Vec<usize>>) -> Self {
        let mut closing = vec![Vec::new(); n];
        for (i, e) in hyperedges.iter().enumerate() {
            if let Some(&last) = e.iter().max() {
                assert!(last < n, "hyperedge member out of range");
                closing[last].push(i);
            }
        }
        Self {
            n,
            hyperedges,
            closing,
            nodes: 0,
        }
    }

    /// Neighborhood hypergraph of `g` under `variant`.
    pub fn for_graph(g: &Graph, variant: Variant) -> Self {
        let edges = g.vertices().map(|v| variant.neighborhood(g, v)).collect();
        Self::new(g.n(), edges)
    }

    pub fn has_empty_hyperedge(&self) -> bool {
        self.hyperedges.iter().any(|e| e.is_empty())
    }

    /// Search nodes visited by the last call to [`solve`](Self::solve).
    pub fn nodes(&self) -> u64 {
        self.nodes
    }

    /// A coloring with at most `k` distinct colors, or `None` if none exists.
    pub fn solve(&mut self, k: usize) -> Option<Vec<Color>> {
        self.nodes = 0;
        if k == 0 || self.has_empty_hyperedge() {
            return if self.n == 0 && !self.has_empty_hyperedge() {
                Some(Vec::new())
            } else {
                None
            };
        }
        let mut colors = vec![0; self.n];
        let mut counts = vec![0u32; k];
        if self.extend(0, 0, k, &mut colors, &mut counts) {
            Some(colors)
        } else {
            None
        }
    }

    fn extend(&mut self, v: usize, palette: usize, k: usize, colors: &mut [Color], counts: &mut [u32]) -> bool {
        if v == self.n {
            return true;
        }
        self.nodes += 1;
        let top = (palette + 1).min(k);
        for c in 0..top {
            colors[v] = c;
            if self.closing_ok(v, colors, counts) {
                let next = palette.max(c + 1);
                if self.extend(v + 1, next, k, colors, counts) {
                    return true;
                }
            }
        }
        false
    }

    fn closing_ok(&self, v: usize, colors: &[Color], counts: &mut [u32]) -> bool {
        self.closing[v].iter().all(|&e| {
            let members = &self.hyperedges[e];
            for &u in members {
                counts[colors[u]] += 1;
            }
            let ok = members.iter().any(|&u| counts[colors[u]] == 1);
            for &u in members {
                counts[colors[u]] = 0;
            }
            ok
        })
    }
}

/// Oracle with a vertex-count guard.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Oracle {
    pub limit: usize,
}

impl Default for Oracle {
    fn default() -> Self {
        Self { limit: DEFAULT_LIMIT }
    }
}

impl Oracle {
    pub fn with_limit(limit: usize) -> Self {
        Self { limit }
    }

    fn guard(&self, g: &Graph) -> Result<(), OracleError> {
        if g.n() > self.limit {
            Err(OracleError::TooLarge {
                n: g.n(),
                limit: self.limit,
            })
        } else {
            Ok(())
        }
    }

    /// A conflict-free coloring with at most `k` colors, if one exists.
    pub fn decide(&self, g: &Graph, variant: Variant, k: usize) -> Result<Option<Coloring>, OracleError> {
        if k == 0 {
            return Err(OracleError::ZeroColors);
        }
        self.guard(g)?;
        let found = UniqueColorSearch::for_graph(g, variant).solve(k).map(Coloring::new);
        if let Some(w) = &found {
            debug_assert!(verify(g, w, variant).is_valid());
        }
        Ok(found)
    }

    /// Minimum number of colors, searching `k = 1, 2, …, max_k` (default `n`).
    pub fn exact(&self, g: &Graph, variant: Variant, max_k: Option<usize>) -> Result<OracleResult, OracleError> {
        self.guard(g)?;
        let mut search = UniqueColorSearch::for_graph(g, variant);
        if search.has_empty_hyperedge() {
            return Ok(OracleResult::Infeasible);
        }
        let max_k = max_k.unwrap_or(g.n().max(1));
        for k in 1..=max_k {
            if let Some(colors) = search.solve(k) {
                let witness = Coloring::new(colors);
                debug_assert!(verify(g, &witness, variant).is_valid());
                return Ok(OracleResult::Optimal { chromatic: k, witness });
            }
        }
        Ok(OracleResult::AboveBound { max_k })
    }
}

pub fn exact_cf(g: &Graph, variant: Variant, max_k: Option<usize>) -> Result<OracleResult, OracleError> {
    Oracle::default().exact(g, variant, max_k)
}

pub fn decide_cf(g: &Graph, variant: Variant, k: usize) -> Result<Option<Coloring>, OracleError> {
    Oracle::default().decide(g, variant, k)
}

/// Proper (classic) `k`-coloring by backtracking, for the hardness reduction's
/// source problem. Not size-guarded; callers keep inputs small.
pub fn proper_coloring(g: &Graph, k: usize) -> Option<Coloring> {
    fn go(g: &Graph, v: Vertex, palette: usize, k: usize, colors: &mut Vec<Color>) -> bool {
        if v == g.n() {
            return true;
        }
        for c in 0..(palette + 1).min(k) {
            if g.neighbors(v).iter().any(|&u| u < v && colors[u] == c) {
                continue;
            }
            colors[v] = c;
            if go(g, v + 1, palette.max(c + 1), k, colors) {
                return true;
            }
        }
        false
    }
    if k == 0 {
        return if g.n() == 0 { Some(Coloring::new(vec![])) } else { None };
    }
    let mut colors = vec![0; g.n()];
    go(g, 0, 0, k, &mut colors).then(|| Coloring::new(colors))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::Variant::{Closed, Open};

    /// Independent brute force over all `k^n` assignments.
    fn brute_min(g: &Graph, variant: Variant) -> Option<usize> {
        let n = g.n();
        for k in 1..=n.max(1) {
            let total = k.pow(n as u32);
            for code in 0..total {
                let mut x = code;
                let colors: Vec<usize> = (0..n)
                    .map(|_| {
                        let c = x % k;
                        x /= k;
                        c
                    })
                    .collect();
                if verify(g, &Coloring::new(colors), variant).is_valid() {
                    return Some(k);
                }
            }
        }
        None
    }

    fn chi(g: &Graph, v: Variant) -> usize {
        exact_cf(g, v, None).unwrap().chromatic().unwrap()
    }

    #[test]
    fn small_values_match_brute_force() {
        let graphs = [
            Graph::complete(2),
            Graph::complete(3),
            Graph::path(3),
            Graph::path(4),
            Graph::cycle(4),
            Graph::cycle(5),
            Graph::star(3),
            Graph::complete(4),
        ];
        for g in &graphs {
            for v in [Closed, Open] {
                assert_eq!(Some(chi(g, v)), brute_min(g, v), "{g:?} {v}");
            }
        }
    }

    #[test]
    fn frozen_examples() {
        assert_eq!(chi(&Graph::complete(2), Closed), 2);
        assert_eq!(chi(&Graph::complete(2), Open), 1);
        assert_eq!(chi(&Graph::complete(3), Open), 3);
        assert_eq!(chi(&Graph::path(3), Closed), 2);
        assert_eq!(chi(&Graph::path(3), Open), 2);
    }

    #[test]
    fn decide_examples() {
        assert!(decide_cf(&Graph::complete(3), Open, 2).unwrap().is_none());
        let w = decide_cf(&Graph::cycle(4), Closed, 2).unwrap().unwrap();
        assert!(verify(&Graph::cycle(4), &w, Closed).is_valid());
        assert!(w.colors_used() <= 2);
        for g in [Graph::complete(2), Graph::path(5), Graph::star(4)] {
            assert!(decide_cf(&g, Closed, 1).unwrap().is_none());
        }
        assert_eq!(decide_cf(&Graph::path(2), Closed, 0), Err(OracleError::ZeroColors));
    }

    #[test]
    fn infeasible_and_bounds() {
        let iso = Graph::from_edges(3, [(0, 1)]).unwrap();
        assert_eq!(exact_cf(&iso, Open, None).unwrap(), OracleResult::Infeasible);
        assert_eq!(chi(&iso, Closed), 2);
        assert_eq!(
            exact_cf(&Graph::complete(3), Open, Some(2)).unwrap(),
            OracleResult::AboveBound { max_k: 2 }
        );
        assert_eq!(
            exact_cf(&Graph::empty(17), Closed, None),
            Err(OracleError::TooLarge { n: 17, limit: 16 })
        );
        assert!(Oracle::with_limit(20).exact(&Graph::empty(17), Closed, None).is_ok());
    }

    #[test]
    fn monotone_in_k() {
        let g = Graph::cycle(5);
        for v in [Closed, Open] {
            let mut prev = false;
            for k in 1..=5 {
                let now = decide_cf(&g, v, k).unwrap().is_some();
                assert!(!prev || now);
                prev = now;
            }
        }
    }

    #[test]
    fn proper_coloring_brute() {
        assert!(proper_coloring(&Graph::complete(4), 3).is_none());
        assert!(proper_coloring(&Graph::cycle(5), 2).is_none());
        let c = proper_coloring(&Graph::cycle(5), 3).unwrap();
        assert!(Graph::cycle(5).edges().all(|(u, v)| c.get(u) != c.get(v)));
    }
}
