//! Simple undirected graphs on dense vertex ids `0..n`, plus the line-oriented
//! graph file format.
//!
//! ```text
//! c optional comment
//! p cf <n> <m>
//! e <u> <v>
//! ```

use std::collections::VecDeque;
use std::fmt;

use thiserror::Error;

pub type Vertex = usize;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("vertex {vertex} out of range (n = {n})")]
    InvalidVertex { vertex: Vertex, n: usize },
    #[error("self-loop on vertex {0}")]
    SelfLoop(Vertex),
}

/// A sorted, duplicate-free set of vertex ids.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSet(Vec<Vertex>);

impl VertexSet {
    pub fn new() -> Self {
        Self(Vec::new())
    }

    pub fn from_sorted_unchecked(members: Vec<Vertex>) -> Self {
        debug_assert!(members.windows(2).all(|w| w[0] < w[1]));
        Self(members)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn insert(&mut self, v: Vertex) -> bool {
        match self.0.binary_search(&v) {
            Ok(_) => false,
            Err(pos) => {
                self.0.insert(pos, v);
                true
            }
        }
    }

    pub fn remove(&mut self, v: Vertex) -> bool {
        match self.0.binary_search(&v) {
            Ok(pos) => {
                self.0.remove(pos);
                true
            }
            Err(_) => false,
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.0.iter().copied()
    }

    pub fn as_slice(&self) -> &[Vertex] {
        &self.0
    }

    pub fn first(&self) -> Option<Vertex> {
        self.0.first().copied()
    }

    pub fn into_vec(self) -> Vec<Vertex> {
        self.0
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        self.iter().chain(other.iter()).collect()
    }
}

impl FromIterator<Vertex> for VertexSet {
    fn from_iter<I: IntoIterator<Item = Vertex>>(iter: I) -> Self {
        let mut v: Vec<Vertex> = iter.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        Self(v)
    }
}

impl From<Vec<Vertex>> for VertexSet {
    fn from(v: Vec<Vertex>) -> Self {
        v.into_iter().collect()
    }
}

impl<'a> IntoIterator for &'a VertexSet {
    type Item = Vertex;
    type IntoIter = std::iter::Copied<std::slice::Iter<'a, Vertex>>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter().copied()
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

/// Immutable simple graph. Neighbor lists are sorted; pair membership is a
/// bit-matrix lookup.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    adj: Vec<Vec<Vertex>>,
    words: usize,
    bits: Vec<u64>,
    m: usize,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

impl Graph {
    /// Builds a graph, collapsing duplicate edges and normalizing endpoint order.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let words = n.div_ceil(64).max(1);
        let mut g = Graph {
            n,
            adj: vec![Vec::new(); n],
            words,
            bits: vec![0; words * n],
            m: 0,
        };
        for (u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(GraphError::InvalidVertex { vertex: w, n });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            if !g.has_edge(u, v) {
                g.set_bit(u, v);
                g.set_bit(v, u);
                g.adj[u].push(v);
                g.adj[v].push(u);
                g.m += 1;
            }
        }
        for list in &mut g.adj {
            list.sort_unstable();
        }
        Ok(g)
    }

    pub fn empty(n: usize) -> Self {
        Self::from_edges(n, std::iter::empty()).expect("edgeless graph is valid")
    }

    pub fn complete(n: usize) -> Self {
        let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
        Self::from_edges(n, edges).expect("complete graph is valid")
    }

    pub fn path(n: usize) -> Self {
        Self::from_edges(n, (1..n).map(|v| (v - 1, v))).expect("path is valid")
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "cycle needs at least 3 vertices");
        Self::from_edges(n, (0..n).map(|v| (v, (v + 1) % n))).expect("cycle is valid")
    }

    /// Star with center 0 and `leaves` leaves.
    pub fn star(leaves: usize) -> Self {
        Self::from_edges(leaves + 1, (1..=leaves).map(|v| (0, v))).expect("star is valid")
    }

    fn set_bit(&mut self, u: Vertex, v: Vertex) {
        self.bits[u * self.words + v / 64] |= 1 << (v % 64);
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn vertices(&self) -> std::ops::Range<Vertex> {
        0..self.n
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        u < self.n && v < self.n && self.bits[u * self.words + v / 64] & (1 << (v % 64)) != 0
    }

    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    fn check(&self, v: Vertex) -> Result<(), GraphError> {
        if v < self.n {
            Ok(())
        } else {
            Err(GraphError::InvalidVertex { vertex: v, n: self.n })
        }
    }

    pub fn open_neighborhood(&self, v: Vertex) -> Result<VertexSet, GraphError> {
        self.check(v)?;
        Ok(VertexSet::from_sorted_unchecked(self.adj[v].clone()))
    }

    pub fn closed_neighborhood(&self, v: Vertex) -> Result<VertexSet, GraphError> {
        let mut s = self.open_neighborhood(v)?;
        s.insert(v);
        Ok(s)
    }

    pub fn is_universal(&self, v: Vertex) -> bool {
        self.degree(v) + 1 == self.n
    }

    pub fn universal_vertex(&self) -> Option<Vertex> {
        self.vertices().find(|&v| self.is_universal(v))
    }

    pub fn has_isolated_vertex(&self) -> bool {
        self.vertices().any(|v| self.degree(v) == 0)
    }

    /// Components ordered by smallest member.
    pub fn connected_components(&self) -> Vec<VertexSet> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for s in self.vertices() {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &w in &self.adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        queue.push_back(w);
                    }
                }
            }
            out.push(comp.into_iter().collect());
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.n <= 1 || self.connected_components().len() == 1
    }

    /// The subgraph induced by `s`, relabeled to `0..|s|` in increasing order
    /// of the original ids.
    pub fn induced_subgraph(&self, s: &VertexSet) -> Result<InducedSubgraph, GraphError> {
        for v in s {
            self.check(v)?;
        }
        let to_old: Vec<Vertex> = s.iter().collect();
        let mut to_new = vec![None; self.n];
        for (i, &v) in to_old.iter().enumerate() {
            to_new[v] = Some(i);
        }
        let edges = self.edges().filter_map(|(u, v)| Some((to_new[u]?, to_new[v]?)));
        let graph = Graph::from_edges(to_old.len(), edges)?;
        Ok(InducedSubgraph { graph, to_old, to_new })
    }

    /// `G ∖ X`.
    pub fn without(&self, removed: &VertexSet) -> InducedSubgraph {
        let keep: VertexSet = self.vertices().filter(|v| !removed.contains(*v)).collect();
        self.induced_subgraph(&keep)
            .expect("complement of a vertex set is in range")
    }

    pub fn complement(&self) -> Graph {
        let edges = (0..self.n)
            .flat_map(|u| (u + 1..self.n).map(move |v| (u, v)))
            .filter(|&(u, v)| !self.has_edge(u, v));
        Graph::from_edges(self.n, edges).expect("complement is simple")
    }

    /// Applies a vertex permutation: vertex `v` becomes `perm[v]`.
    pub fn relabel(&self, perm: &[Vertex]) -> Graph {
        assert_eq!(perm.len(), self.n);
        Graph::from_edges(self.n, self.edges().map(|(u, v)| (perm[u], perm[v])))
            .expect("permutation preserves simplicity")
    }

    /// Canonical text serialization: header then edges in lexicographic order.
    pub fn to_text(&self) -> String {
        let mut out = format!("p cf {} {}\n", self.n, self.m);
        for (u, v) in self.edges() {
            out.push_str(&format!("e {u} {v}\n"));
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self, GraphError> {
        let mut header: Option<usize> = None;
        let mut edges = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let err = |msg: &str| GraphError::Parse {
                line,
                msg: msg.to_string(),
            };
            let mut tok = raw.split_whitespace();
            match tok.next() {
                None | Some("c") => continue,
                Some("p") => {
                    if header.is_some() {
                        return Err(err("duplicate header"));
                    }
                    if tok.next() != Some("cf") {
                        return Err(err("malformed header, expected `p cf <n> <m>`"));
                    }
                    let n = parse_num(tok.next(), line, "vertex count")?;
                    parse_num(tok.next(), line, "edge count")?;
                    if tok.next().is_some() {
                        return Err(err("trailing tokens in header"));
                    }
                    header = Some(n);
                }
                Some("e") => {
                    let n = header.ok_or_else(|| err("edge before header"))?;
                    let u = parse_num(tok.next(), line, "endpoint")?;
                    let v = parse_num(tok.next(), line, "endpoint")?;
                    if tok.next().is_some() {
                        return Err(err("trailing tokens in edge line"));
                    }
                    if u >= n || v >= n {
                        return Err(err(&format!("vertex {} out of range (n = {n})", u.max(v))));
                    }
                    if u == v {
                        return Err(err(&format!("self-loop on vertex {u}")));
                    }
                    edges.push((u, v));
                }
                Some(other) => return Err(err(&format!("unknown line type `{other}`"))),
            }
        }
        let n = header.ok_or(GraphError::Parse {
            line: 0,
            msg: "missing header".into(),
        })?;
        Graph::from_edges(n, edges)
    }
}

fn parse_num(tok: Option<&str>, line: usize, what: &str) -> Result<usize, GraphError> {
    let tok = tok.ok_or_else(|| GraphError::Parse {
        line,
        msg: format!("missing {what}"),
    })?;
    tok.parse().map_err(|_| GraphError::Parse {
        line,
        msg: format!("bad {what} `{tok}`"),
    })
}

/// An induced subgraph together with its vertex relabeling.
#[derive(Clone, Debug)]
pub struct InducedSubgraph {
    pub graph: Graph,
    /// `to_old[new] = old`.
    pub to_old: Vec<Vertex>,
    /// `to_new[old] = Some(new)` for members.
    pub to_new: Vec<Option<Vertex>>,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vs(v: &[Vertex]) -> VertexSet {
        v.iter().copied().collect()
    }

    #[test]
    fn parse_small_graphs() {
        let k2 = Graph::parse("p cf 2 1\ne 0 1\n").unwrap();
        assert_eq!((k2.n(), k2.m()), (2, 1));
        let p3 = Graph::parse("p cf 3 2\ne 0 1\ne 1 2\n").unwrap();
        assert_eq!(p3, Graph::path(3));
        let k3 = Graph::parse("c triangle\np cf 3 3\ne 0 1\ne 1 2\ne 0 2\n").unwrap();
        assert_eq!(k3, Graph::complete(3));
    }

    #[test]
    fn duplicate_edges_collapse() {
        let g = Graph::parse("p cf 2 3\ne 0 1\ne 1 0\ne 0 1\n").unwrap();
        assert_eq!(g.m(), 1);
    }

    #[test]
    fn parse_errors_name_the_line() {
        assert!(matches!(
            Graph::parse("p cf x 1\n"),
            Err(GraphError::Parse { line: 1, .. })
        ));
        assert!(matches!(
            Graph::parse("q cf 2 1\n"),
            Err(GraphError::Parse { line: 1, .. })
        ));
        assert!(matches!(
            Graph::parse("p cf 2 1\ne 0 2\n"),
            Err(GraphError::Parse { line: 2, .. })
        ));
        assert!(matches!(
            Graph::parse("p cf 2 1\nc\ne 1 1\n"),
            Err(GraphError::Parse { line: 3, .. })
        ));
        assert!(Graph::parse("e 0 1\n").is_err());
        assert!(Graph::parse("").is_err());
    }

    #[test]
    fn neighborhoods() {
        let p3 = Graph::path(3);
        assert_eq!(p3.open_neighborhood(1).unwrap(), vs(&[0, 2]));
        assert_eq!(p3.closed_neighborhood(1).unwrap(), vs(&[0, 1, 2]));
        let k3 = Graph::complete(3);
        assert_eq!(k3.open_neighborhood(0).unwrap(), vs(&[1, 2]));
        let k2 = Graph::complete(2);
        assert_eq!(k2.closed_neighborhood(0).unwrap(), vs(&[0, 1]));
        let e = Graph::empty(2);
        assert!(e.open_neighborhood(1).unwrap().is_empty());
        assert_eq!(e.closed_neighborhood(1).unwrap(), vs(&[1]));
        assert!(matches!(k3.open_neighborhood(3), Err(GraphError::InvalidVertex { .. })));
        assert!(k3.closed_neighborhood(7).is_err());
    }

    #[test]
    fn components() {
        assert_eq!(Graph::complete(2).connected_components(), vec![vs(&[0, 1])]);
        let two = Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        assert_eq!(two.connected_components(), vec![vs(&[0, 1]), vs(&[2, 3])]);
        assert_eq!(
            Graph::empty(3).connected_components(),
            vec![vs(&[0]), vs(&[1]), vs(&[2])]
        );
    }

    #[test]
    fn induced() {
        let k3 = Graph::complete(3);
        assert_eq!(k3.induced_subgraph(&vs(&[0, 1])).unwrap().graph, Graph::complete(2));
        let p3 = Graph::path(3);
        let sub = p3.induced_subgraph(&vs(&[0, 2])).unwrap();
        assert_eq!(sub.graph, Graph::empty(2));
        assert_eq!(sub.to_old, vec![0, 2]);
        let all = p3.induced_subgraph(&vs(&[0, 1, 2])).unwrap();
        assert_eq!(all.graph, p3);
        assert!(p3.induced_subgraph(&vs(&[5])).is_err());
    }

    #[test]
    fn rejects_bad_edges() {
        assert_eq!(Graph::from_edges(2, [(0, 0)]), Err(GraphError::SelfLoop(0)));
        assert!(matches!(
            Graph::from_edges(2, [(0, 2)]),
            Err(GraphError::InvalidVertex { .. })
        ));
    }

    #[test]
    fn wide_graph_bit_matrix() {
        let g = Graph::from_edges(130, [(0, 129), (64, 65), (63, 64)]).unwrap();
        assert!(g.has_edge(129, 0));
        assert!(g.has_edge(65, 64));
        assert!(!g.has_edge(0, 64));
        assert_eq!(g.neighbors(64), &[63, 65]);
    }
}
