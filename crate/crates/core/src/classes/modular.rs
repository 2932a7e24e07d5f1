use std::fmt;

use crate::graph::{Graph, Vertex, VertexSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MdKind {
    Leaf(Vertex),
    Series,
    Parallel,
    Prime,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MdNode {
    pub kind: MdKind,
    pub children: Vec<usize>,
    /// Leaves below this node.
    pub module: VertexSet,
}

/// Modular decomposition tree stored as an arena; children are ordered by
/// their smallest vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModularDecomposition {
    nodes: Vec<MdNode>,
    root: usize,
}

/// Splits on components of the graph, then of its complement; a node where
/// both are connected is prime and its children are its maximal proper
/// modules.
pub fn modular_decomposition(g: &Graph) -> ModularDecomposition {
    let mut md = ModularDecomposition {
        nodes: Vec::new(),
        root: 0,
    };
    if g.n() == 0 {
        md.nodes.push(MdNode {
            kind: MdKind::Parallel,
            children: vec![],
            module: VertexSet::new(),
        });
        return md;
    }
    let all: VertexSet = g.vertices().collect();
    md.root = build(g, all, &mut md.nodes);
    md
}

fn build(g: &Graph, set: VertexSet, nodes: &mut Vec<MdNode>) -> usize {
    if set.len() == 1 {
        nodes.push(MdNode {
            kind: MdKind::Leaf(set.first().unwrap()),
            children: vec![],
            module: set,
        });
        return nodes.len() - 1;
    }
    let (kind, parts) = {
        let comps = components_within(g, &set, false);
        if comps.len() > 1 {
            (MdKind::Parallel, comps)
        } else {
            let co = components_within(g, &set, true);
            if co.len() > 1 {
                (MdKind::Series, co)
            } else {
                (MdKind::Prime, maximal_modules(g, &set))
            }
        }
    };
    let children = parts.into_iter().map(|p| build(g, p, nodes)).collect();
    nodes.push(MdNode {
        kind,
        children,
        module: set,
    });
    nodes.len() - 1
}

/// Components of `G[set]` (or of its complement), ordered by smallest member.
fn components_within(g: &Graph, set: &VertexSet, complement: bool) -> Vec<VertexSet> {
    let members = set.as_slice();
    let mut comp = vec![usize::MAX; members.len()];
    let mut out = Vec::new();
    for start in 0..members.len() {
        if comp[start] != usize::MAX {
            continue;
        }
        let id = out.len();
        comp[start] = id;
        let mut stack = vec![start];
        let mut found = vec![members[start]];
        while let Some(i) = stack.pop() {
            for j in 0..members.len() {
                if comp[j] == usize::MAX && g.has_edge(members[i], members[j]) != complement {
                    comp[j] = id;
                    stack.push(j);
                    found.push(members[j]);
                }
            }
        }
        out.push(found.into_iter().collect());
    }
    out
}

/// Smallest module of `G[set]` containing `seed`.
fn module_closure(g: &Graph, set: &VertexSet, seed: &[Vertex]) -> VertexSet {
    let mut module: VertexSet = seed.iter().copied().collect();
    loop {
        let splitter = set.iter().find(|&z| {
            !module.contains(z) && {
                let adj = module.iter().filter(|&u| g.has_edge(u, z)).count();
                adj != 0 && adj != module.len()
            }
        });
        match splitter {
            Some(z) => {
                module.insert(z);
            }
            None => return module,
        }
    }
}

/// Maximal proper modules of a node whose graph and complement are both
/// connected; these partition `set`.
fn maximal_modules(g: &Graph, set: &VertexSet) -> Vec<VertexSet> {
    let mut assigned = VertexSet::new();
    let mut out = Vec::new();
    for v in set {
        if assigned.contains(v) {
            continue;
        }
        let mut module: VertexSet = [v].into_iter().collect();
        for w in set {
            if w == v || module.contains(w) {
                continue;
            }
            let m = module_closure(g, set, &[v, w]);
            if m.len() < set.len() {
                module = module.union(&m);
            }
        }
        for u in &module {
            assigned.insert(u);
        }
        out.push(module);
    }
    out
}

impl ModularDecomposition {
    pub fn root(&self) -> usize {
        self.root
    }

    pub fn node(&self, id: usize) -> &MdNode {
        &self.nodes[id]
    }

    pub fn nodes(&self) -> &[MdNode] {
        &self.nodes
    }

    pub fn is_cograph(&self) -> bool {
        self.nodes.iter().all(|n| n.kind != MdKind::Prime)
    }

    /// Representative graph of an internal node: one vertex per child, an
    /// edge when the child modules are adjacent.
    pub fn quotient(&self, g: &Graph, id: usize) -> Graph {
        let kids = &self.nodes[id].children;
        let reps: Vec<Vertex> = kids.iter().map(|&c| self.nodes[c].module.first().unwrap()).collect();
        let edges = (0..reps.len())
            .flat_map(|a| (a + 1..reps.len()).map(move |b| (a, b)))
            .filter(|&(a, b)| g.has_edge(reps[a], reps[b]));
        Graph::from_edges(reps.len(), edges).expect("quotient is simple")
    }

    /// Checks leaves, module property, and node labels against `g`.
    pub fn validate(&self, g: &Graph) -> Result<(), String> {
        let root = &self.nodes[self.root];
        if root.module.len() != g.n() {
            return Err("root module is not V(G)".into());
        }
        for (id, node) in self.nodes.iter().enumerate() {
            if let MdKind::Leaf(v) = node.kind {
                if node.module.as_slice() != [v] {
                    return Err(format!("leaf {id} module mismatch"));
                }
                continue;
            }
            let union: VertexSet = node
                .children
                .iter()
                .flat_map(|&c| self.nodes[c].module.iter())
                .collect();
            let sizes: usize = node.children.iter().map(|&c| self.nodes[c].module.len()).sum();
            if union != node.module || sizes != union.len() {
                return Err(format!("node {id}: children do not partition its module"));
            }
            if !is_module(g, &node.module) {
                return Err(format!("node {id}: {} is not a module", node.module));
            }
            for &c in &node.children {
                if !is_module(g, &self.nodes[c].module) {
                    return Err(format!("node {c} is not a module"));
                }
            }
            let q = self.quotient(g, id);
            let r = q.n();
            let ok = match node.kind {
                MdKind::Series => q.m() == r * (r - 1) / 2 && self.children_fully(g, node, true),
                MdKind::Parallel => q.m() == 0 && self.children_fully(g, node, false),
                MdKind::Prime => r >= 4 && q.m() > 0 && q.m() < r * (r - 1) / 2,
                MdKind::Leaf(_) => unreachable!(),
            };
            if !ok {
                return Err(format!("node {id} label {:?} does not match its children", node.kind));
            }
        }
        Ok(())
    }

    fn children_fully(&self, g: &Graph, node: &MdNode, joined: bool) -> bool {
        let kids = &node.children;
        kids.iter().enumerate().all(|(a, &x)| {
            kids[a + 1..].iter().all(|&y| {
                self.nodes[x]
                    .module
                    .iter()
                    .all(|u| self.nodes[y].module.iter().all(|v| g.has_edge(u, v) == joined))
            })
        })
    }

    fn fmt_node(&self, f: &mut fmt::Formatter<'_>, id: usize) -> fmt::Result {
        let node = &self.nodes[id];
        match node.kind {
            MdKind::Leaf(v) => write!(f, "{v}"),
            kind => {
                let tag = match kind {
                    MdKind::Series => "S",
                    MdKind::Parallel => "P",
                    _ => "Q",
                };
                write!(f, "{tag}(")?;
                for (i, &c) in node.children.iter().enumerate() {
                    if i > 0 {
                        write!(f, " ")?;
                    }
                    self.fmt_node(f, c)?;
                }
                write!(f, ")")
            }
        }
    }
}

/// Compact term: `S(..)` series, `P(..)` parallel, `Q(..)` prime.
impl fmt::Display for ModularDecomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_node(f, self.root)
    }
}

pub fn is_module(g: &Graph, m: &VertexSet) -> bool {
    g.vertices().filter(|&z| !m.contains(z)).all(|z| {
        let adj = m.iter().filter(|&u| g.has_edge(u, z)).count();
        adj == 0 || adj == m.len()
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn p3_is_series_over_center_and_parallel_leaves() {
        let md = modular_decomposition(&Graph::path(3));
        md.validate(&Graph::path(3)).unwrap();
        assert_eq!(md.to_string(), "S(P(0 2) 1)");
    }

    #[test]
    fn k3_and_p4() {
        let md = modular_decomposition(&Graph::complete(3));
        assert_eq!(md.to_string(), "S(0 1 2)");
        let p4 = Graph::path(4);
        let md = modular_decomposition(&p4);
        assert_eq!(md.node(md.root()).kind, MdKind::Prime);
        assert!(!md.is_cograph());
        md.validate(&p4).unwrap();
    }

    #[test]
    fn c4_is_join_of_two_independent_pairs() {
        let md = modular_decomposition(&Graph::cycle(4));
        assert_eq!(md.to_string(), "S(P(0 2) P(1 3))");
        assert!(md.is_cograph());
    }

    #[test]
    fn prime_node_with_nontrivial_children() {
        // P4 with vertex 0 replaced by the twin pair {0, 4}
        let g = Graph::from_edges(5, [(0, 1), (4, 1), (1, 2), (2, 3)]).unwrap();
        let md = modular_decomposition(&g);
        md.validate(&g).unwrap();
        assert_eq!(md.to_string(), "Q(P(0 4) 1 2 3)");
    }

    #[test]
    fn disconnected_root_is_parallel() {
        let g = Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        let md = modular_decomposition(&g);
        assert_eq!(md.to_string(), "P(S(0 1) S(2 3))");
    }
}
