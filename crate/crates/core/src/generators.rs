//! Seeded instance generators with certificates, and exhaustive enumeration
//! of small connected graphs up to isomorphism.

use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::classes::{
    bipartition, is_cluster, is_threshold, modular_decomposition, split_partition, Bipartition, GraphClass, Modulator,
    ResidualClass, SplitPartition, ThresholdSequence, ThresholdStep,
};
use crate::graph::{Graph, Vertex, VertexSet};
use crate::interval::{Interval, IntervalRep};

/// Largest vertex count accepted by [`enumerate_connected`].
pub const ENUMERATION_LIMIT: usize = 8;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GenError {
    #[error("{0}")]
    Knobs(String),
    #[error("enumeration supports at most {max} vertices, got {n}")]
    TooLarge { n: usize, max: usize },
    #[error("no hereditary filter for class {0}")]
    UnsupportedFilter(GraphClass),
    #[error("unknown generator class `{0}`")]
    UnknownClass(String),
    #[error("gave up after {0} attempts to draw a connected instance")]
    Rejection(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GenClass {
    Cluster,
    Interval,
    ClusterModulator,
    ThresholdModulator,
    Threshold,
    Split,
    Bipartite,
    Cograph,
    Random,
}

impl GenClass {
    pub const ALL: [GenClass; 9] = [
        GenClass::Cluster,
        GenClass::Interval,
        GenClass::ClusterModulator,
        GenClass::ThresholdModulator,
        GenClass::Threshold,
        GenClass::Split,
        GenClass::Bipartite,
        GenClass::Cograph,
        GenClass::Random,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            GenClass::Cluster => "cluster",
            GenClass::Interval => "interval",
            GenClass::ClusterModulator => "cluster-modulator",
            GenClass::ThresholdModulator => "threshold-modulator",
            GenClass::Threshold => "threshold",
            GenClass::Split => "split",
            GenClass::Bipartite => "bipartite",
            GenClass::Cograph => "cograph",
            GenClass::Random => "random",
        }
    }
}

impl fmt::Display for GenClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for GenClass {
    type Err = GenError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        GenClass::ALL
            .into_iter()
            .find(|c| c.tag() == s)
            .ok_or_else(|| GenError::UnknownClass(s.to_string()))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct GenSpec {
    pub class: GenClass,
    pub n: usize,
    pub seed: u64,
    /// Modulator size for the modulator classes.
    pub d: usize,
    /// Edge probability for random choices.
    pub p: f64,
    /// Explicit clique sizes for [`GenClass::Cluster`]; overrides `n`.
    pub cliques: Option<Vec<usize>>,
    pub connected: bool,
}

impl GenSpec {
    pub fn new(class: GenClass, n: usize, seed: u64) -> Self {
        GenSpec {
            class,
            n,
            seed,
            d: 0,
            p: 0.5,
            cliques: None,
            connected: true,
        }
    }

    pub fn with_d(mut self, d: usize) -> Self {
        self.d = d;
        self
    }

    pub fn with_p(mut self, p: f64) -> Self {
        self.p = p;
        self
    }

    pub fn with_cliques(mut self, sizes: Vec<usize>) -> Self {
        self.cliques = Some(sizes);
        self.connected = false;
        self
    }

    pub fn disconnected(mut self) -> Self {
        self.connected = false;
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    None,
    Cliques(Vec<VertexSet>),
    Intervals(IntervalRep),
    Modulator(Modulator),
    Threshold(ThresholdSequence),
    Split(SplitPartition),
    Bipartition(Bipartition),
}

impl Certificate {
    pub fn kind(&self) -> &'static str {
        match self {
            Certificate::None => "none",
            Certificate::Cliques(_) => "cliques",
            Certificate::Intervals(_) => "intervals",
            Certificate::Modulator(_) => "modulator",
            Certificate::Threshold(_) => "threshold",
            Certificate::Split(_) => "split",
            Certificate::Bipartition(_) => "bipartition",
        }
    }

    /// Line-oriented text. Intervals use the interval file format; the other
    /// kinds use `k <members…>` per clique, `x <v>`, `t <v> isolated|universal`
    /// in removal order, `clique <v>` / `indep <v>`, and `left <v>` / `right <v>`.
    pub fn to_text(&self) -> String {
        let lines = |tag: &str, set: &VertexSet| -> String { set.iter().map(|v| format!("{tag} {v}\n")).collect() };
        match self {
            Certificate::None => String::new(),
            Certificate::Cliques(cs) => cs
                .iter()
                .map(|c| {
                    let ids: Vec<String> = c.iter().map(|v| v.to_string()).collect();
                    format!("k {}\n", ids.join(" "))
                })
                .collect(),
            Certificate::Intervals(rep) => rep.to_text(),
            Certificate::Modulator(m) => lines("x", &m.deleted),
            Certificate::Threshold(seq) => seq
                .removals
                .iter()
                .map(|(v, step)| {
                    let word = match step {
                        ThresholdStep::Isolated => "isolated",
                        ThresholdStep::Universal => "universal",
                    };
                    format!("t {v} {word}\n")
                })
                .collect(),
            Certificate::Split(p) => lines("clique", &p.clique) + &lines("indep", &p.independent),
            Certificate::Bipartition(b) => lines("left", &b.left) + &lines("right", &b.right),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generated {
    pub graph: Graph,
    pub certificate: Certificate,
}

impl Generated {
    /// Re-checks the certificate (or the class, when there is none).
    pub fn validate(&self, class: GenClass) -> bool {
        let g = &self.graph;
        match (&self.certificate, class) {
            (Certificate::Cliques(cs), _) => {
                is_cluster(g)
                    && cs
                        .iter()
                        .all(|c| c.iter().all(|u| c.iter().all(|v| u == v || g.has_edge(u, v))))
            }
            (Certificate::Intervals(rep), _) => rep.validate(g).is_ok(),
            (Certificate::Modulator(m), _) => m.is_valid(g),
            (Certificate::Threshold(seq), _) => &seq.reconstruct(g.n()) == g,
            (Certificate::Split(p), _) => p.is_valid(g),
            (Certificate::Bipartition(b), _) => b.is_valid(g),
            (Certificate::None, GenClass::Cograph) => modular_decomposition(g).is_cograph(),
            (Certificate::None, _) => true,
        }
    }
}

fn knobs<T>(msg: impl Into<String>) -> Result<T, GenError> {
    Err(GenError::Knobs(msg.into()))
}

const MAX_ATTEMPTS: usize = 1000;

/// Builds the instance described by `spec`; equal specs give equal output.
pub fn generate(spec: &GenSpec) -> Result<Generated, GenError> {
    if !(0.0..=1.0).contains(&spec.p) {
        return knobs("edge probability must lie in [0, 1]");
    }
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let n = spec.n;
    if n == 0 && spec.cliques.is_none() {
        return knobs("n must be at least 1");
    }
    match spec.class {
        GenClass::Cluster => {
            let sizes = match &spec.cliques {
                Some(s) if s.contains(&0) => return knobs("clique sizes must be positive"),
                Some(s) => s.clone(),
                None if spec.connected => vec![n],
                None => random_composition(&mut rng, n),
            };
            let (graph, cliques) = disjoint_cliques(&sizes);
            Ok(Generated {
                graph,
                certificate: Certificate::Cliques(cliques),
            })
        }
        GenClass::Interval => interval(&mut rng, n, spec.connected),
        GenClass::ClusterModulator => cluster_modulator(&mut rng, spec),
        GenClass::ThresholdModulator => threshold_modulator(&mut rng, spec),
        GenClass::Threshold => {
            let seq = random_threshold_sequence(&mut rng, n, spec.connected);
            Ok(Generated {
                graph: seq.reconstruct(n),
                certificate: Certificate::Threshold(seq),
            })
        }
        GenClass::Split => split(&mut rng, spec),
        GenClass::Bipartite => bipartite(&mut rng, spec),
        GenClass::Cograph => {
            let mut edges = Vec::new();
            let verts: Vec<Vertex> = (0..n).collect();
            cograph_edges(&mut rng, &verts, spec.connected, &mut edges);
            let graph = Graph::from_edges(n, edges).expect("ids in range");
            Ok(Generated {
                graph,
                certificate: Certificate::None,
            })
        }
        GenClass::Random => {
            let mut edges: BTreeSet<(Vertex, Vertex)> = BTreeSet::new();
            if spec.connected {
                edges.extend(random_tree(&mut rng, n));
            }
            for u in 0..n {
                for v in u + 1..n {
                    if rng.gen_bool(spec.p) {
                        edges.insert((u, v));
                    }
                }
            }
            let graph = Graph::from_edges(n, edges).expect("ids in range");
            Ok(Generated {
                graph,
                certificate: Certificate::None,
            })
        }
    }
}

fn random_composition(rng: &mut ChaCha8Rng, n: usize) -> Vec<usize> {
    let mut sizes = Vec::new();
    let mut left = n;
    while left > 0 {
        let s = rng.gen_range(1..=left);
        sizes.push(s);
        left -= s;
    }
    sizes
}

fn disjoint_cliques(sizes: &[usize]) -> (Graph, Vec<VertexSet>) {
    let mut edges = Vec::new();
    let mut cliques = Vec::new();
    let mut start = 0;
    for &s in sizes {
        for u in start..start + s {
            for v in u + 1..start + s {
                edges.push((u, v));
            }
        }
        cliques.push((start..start + s).collect());
        start += s;
    }
    (Graph::from_edges(start, edges).expect("ids in range"), cliques)
}

/// Edges of a random tree in which vertex `i > 0` hangs below an earlier one.
fn random_tree(rng: &mut ChaCha8Rng, n: usize) -> Vec<(Vertex, Vertex)> {
    (1..n).map(|i| (rng.gen_range(0..i), i)).collect()
}

fn interval(rng: &mut ChaCha8Rng, n: usize, connected: bool) -> Result<Generated, GenError> {
    for _ in 0..MAX_ATTEMPTS {
        let mut pts: Vec<i64> = (0..2 * n as i64).collect();
        pts.shuffle(rng);
        let rep = IntervalRep::new(
            pts.chunks(2)
                .map(|c| Interval::from_ints(c[0].min(c[1]), c[0].max(c[1])))
                .collect(),
        );
        let graph = rep.intersection_graph();
        if !connected || graph.is_connected() {
            return Ok(Generated {
                graph,
                certificate: Certificate::Intervals(rep),
            });
        }
    }
    Err(GenError::Rejection(MAX_ATTEMPTS))
}

/// Random relabeling applied to a graph and a vertex set.
fn shuffle_labels(rng: &mut ChaCha8Rng, g: &Graph, set: &VertexSet) -> (Graph, VertexSet) {
    let mut perm: Vec<Vertex> = (0..g.n()).collect();
    perm.shuffle(rng);
    (g.relabel(&perm), set.iter().map(|v| perm[v]).collect())
}

fn cluster_modulator(rng: &mut ChaCha8Rng, spec: &GenSpec) -> Result<Generated, GenError> {
    let (n, d) = (spec.n, spec.d);
    if d > n {
        return knobs("modulator larger than the graph");
    }
    if spec.connected && d == 0 && spec.cliques.as_ref().is_some_and(|c| c.len() > 1) {
        return knobs("several cliques without a modulator cannot be connected");
    }
    let sizes = match &spec.cliques {
        Some(s) => s.clone(),
        None if d == 0 && spec.connected => vec![n],
        None => random_composition(rng, n - d),
    };
    let residual: usize = sizes.iter().sum();
    let total = residual + d;
    let (base, cliques) = disjoint_cliques(&sizes);
    let mut edges: BTreeSet<(Vertex, Vertex)> = base.edges().collect();
    let xs: Vec<Vertex> = (residual..total).collect();
    for &x in &xs {
        for v in 0..total {
            if v != x && rng.gen_bool(spec.p) {
                edges.insert((v.min(x), v.max(x)));
            }
        }
    }
    if spec.connected && d > 0 {
        let hub = xs[0];
        for c in &cliques {
            edges.insert((c.first().unwrap(), hub));
        }
        for &x in &xs[1..] {
            edges.insert((hub, x));
        }
    }
    let g = Graph::from_edges(total, edges).expect("ids in range");
    let (g, x) = shuffle_labels(rng, &g, &xs.into_iter().collect());
    let m = Modulator::new(&g, x, ResidualClass::Cluster).expect("construction leaves cliques");
    Ok(Generated {
        graph: g,
        certificate: Certificate::Modulator(m),
    })
}

fn random_threshold_sequence(rng: &mut ChaCha8Rng, n: usize, connected: bool) -> ThresholdSequence {
    // removals are listed last-added first
    let mut added: Vec<ThresholdStep> = (1..n)
        .map(|_| {
            if rng.gen_bool(0.5) {
                ThresholdStep::Universal
            } else {
                ThresholdStep::Isolated
            }
        })
        .collect();
    if connected && n > 1 {
        *added.last_mut().unwrap() = ThresholdStep::Universal;
    }
    added.insert(0, ThresholdStep::Isolated);
    // vertex i is the i-th added; removal order is reverse
    let removals = (0..n).rev().map(|v| (v, added[v])).collect();
    ThresholdSequence { removals }
}

fn threshold_modulator(rng: &mut ChaCha8Rng, spec: &GenSpec) -> Result<Generated, GenError> {
    let (n, d) = (spec.n, spec.d);
    if d >= n {
        return knobs("threshold modulator needs at least one residual vertex");
    }
    let r = n - d;
    let seq = random_threshold_sequence(rng, r, true);
    let base = seq.reconstruct(r);
    let mut edges: BTreeSet<(Vertex, Vertex)> = base.edges().collect();
    let xs: Vec<Vertex> = (r..n).collect();
    for &x in &xs {
        for v in 0..n {
            if v != x && rng.gen_bool(spec.p) {
                edges.insert((v.min(x), v.max(x)));
            }
        }
        if !(0..r).any(|v| edges.contains(&(v, x))) {
            edges.insert((rng.gen_range(0..r), x));
        }
    }
    let g = Graph::from_edges(n, edges).expect("ids in range");
    let (g, x) = shuffle_labels(rng, &g, &xs.into_iter().collect());
    let m = Modulator::new(&g, x, ResidualClass::Threshold).expect("construction leaves a threshold graph");
    Ok(Generated {
        graph: g,
        certificate: Certificate::Modulator(m),
    })
}

fn split(rng: &mut ChaCha8Rng, spec: &GenSpec) -> Result<Generated, GenError> {
    let n = spec.n;
    let c = rng.gen_range(1..=n);
    let mut edges = Vec::new();
    for u in 0..c {
        for v in u + 1..c {
            edges.push((u, v));
        }
    }
    for i in c..n {
        let mut any = false;
        for u in 0..c {
            if rng.gen_bool(spec.p) {
                edges.push((u, i));
                any = true;
            }
        }
        if spec.connected && !any {
            edges.push((rng.gen_range(0..c), i));
        }
    }
    let g = Graph::from_edges(n, edges).expect("ids in range");
    let p = SplitPartition {
        clique: (0..c).collect(),
        independent: (c..n).collect(),
    };
    Ok(Generated {
        graph: g,
        certificate: Certificate::Split(p),
    })
}

fn bipartite(rng: &mut ChaCha8Rng, spec: &GenSpec) -> Result<Generated, GenError> {
    let n = spec.n;
    let mut side = vec![false; n];
    let mut edges: BTreeSet<(Vertex, Vertex)> = BTreeSet::new();
    if spec.connected {
        for (a, b) in random_tree(rng, n) {
            side[b] = !side[a];
            edges.insert((a, b));
        }
    } else {
        for s in side.iter_mut() {
            *s = rng.gen_bool(0.5);
        }
    }
    for u in 0..n {
        for v in u + 1..n {
            if side[u] != side[v] && rng.gen_bool(spec.p) {
                edges.insert((u, v));
            }
        }
    }
    let g = Graph::from_edges(n, edges).expect("ids in range");
    let b = Bipartition {
        left: (0..n).filter(|&v| !side[v]).collect(),
        right: (0..n).filter(|&v| side[v]).collect(),
    };
    Ok(Generated {
        graph: g,
        certificate: Certificate::Bipartition(b),
    })
}

/// Random cotree: split the vertex list into parts and join (series) or keep
/// apart (parallel); `join` forces a series root.
fn cograph_edges(rng: &mut ChaCha8Rng, verts: &[Vertex], join: bool, edges: &mut Vec<(Vertex, Vertex)>) {
    if verts.len() <= 1 {
        return;
    }
    let series = join || rng.gen_bool(0.5);
    let cuts = rng.gen_range(1..verts.len());
    let mut bounds: Vec<usize> = (1..verts.len()).collect();
    bounds.shuffle(rng);
    let mut bounds: Vec<usize> = bounds[..cuts].to_vec();
    bounds.sort_unstable();
    bounds.insert(0, 0);
    bounds.push(verts.len());
    let parts: Vec<&[Vertex]> = bounds.windows(2).map(|w| &verts[w[0]..w[1]]).collect();
    for part in &parts {
        cograph_edges(rng, part, false, edges);
    }
    if series {
        for (i, a) in parts.iter().enumerate() {
            for b in &parts[i + 1..] {
                for &u in a.iter() {
                    for &v in b.iter() {
                        edges.push((u, v));
                    }
                }
            }
        }
    }
}

fn class_filter(class: Option<GraphClass>) -> Result<fn(&Graph) -> bool, GenError> {
    Ok(match class {
        None | Some(GraphClass::General) => |_| true,
        Some(GraphClass::Split) => |g| split_partition(g).is_some(),
        Some(GraphClass::Bipartite) => |g| bipartition(g).is_some(),
        Some(GraphClass::Cograph) => |g| modular_decomposition(g).is_cograph(),
        Some(GraphClass::Threshold) => is_threshold,
        Some(GraphClass::Cluster) => is_cluster,
        Some(other) => return Err(GenError::UnsupportedFilter(other)),
    })
}

/// Canonical adjacency code: the lexicographically smallest upper-triangle
/// bit string over all labelings that list vertices by refined degree class.
pub fn canonical_code(g: &Graph) -> u64 {
    let n = g.n();
    assert!(n <= 11, "canonical codes fit 64 bits up to 11 vertices");
    let mut color: Vec<usize> = g.vertices().map(|v| g.degree(v)).collect();
    loop {
        let sigs: Vec<(usize, Vec<usize>)> = g
            .vertices()
            .map(|v| {
                let mut s: Vec<usize> = g.neighbors(v).iter().map(|&w| color[w]).collect();
                s.sort_unstable();
                (color[v], s)
            })
            .collect();
        let mut distinct = sigs.clone();
        distinct.sort();
        distinct.dedup();
        let next: Vec<usize> = sigs.iter().map(|s| distinct.binary_search(s).unwrap()).collect();
        let stable = distinct.len() == color.iter().collect::<HashSet<_>>().len();
        color = next;
        if stable {
            break;
        }
    }
    let mut cells: Vec<Vec<Vertex>> = Vec::new();
    let mut classes: Vec<usize> = color.clone();
    classes.sort_unstable();
    classes.dedup();
    for c in classes {
        cells.push(g.vertices().filter(|&v| color[v] == c).collect());
    }
    let mut order = Vec::with_capacity(n);
    let mut best = u64::MAX;
    permute_cells(g, &mut cells, 0, &mut order, &mut best);
    best
}

fn code_of(g: &Graph, order: &[Vertex]) -> u64 {
    let mut code = 0u64;
    for i in 0..order.len() {
        for j in i + 1..order.len() {
            code = code << 1 | u64::from(g.has_edge(order[i], order[j]));
        }
    }
    code
}

fn permute_cells(g: &Graph, cells: &mut [Vec<Vertex>], ci: usize, order: &mut Vec<Vertex>, best: &mut u64) {
    if ci == cells.len() {
        *best = (*best).min(code_of(g, order));
        return;
    }
    permute_within(g, cells, ci, 0, order, best);
}

fn permute_within(g: &Graph, cells: &mut [Vec<Vertex>], ci: usize, i: usize, order: &mut Vec<Vertex>, best: &mut u64) {
    if i == cells[ci].len() {
        permute_cells(g, cells, ci + 1, order, best);
        return;
    }
    for j in i..cells[ci].len() {
        cells[ci].swap(i, j);
        order.push(cells[ci][i]);
        permute_within(g, cells, ci, i + 1, order, best);
        order.pop();
        cells[ci].swap(i, j);
    }
}

fn from_code(n: usize, code: u64) -> Graph {
    let total = n * (n.saturating_sub(1)) / 2;
    let mut edges = Vec::new();
    let mut bit = total;
    for i in 0..n {
        for j in i + 1..n {
            bit -= 1;
            if code >> bit & 1 == 1 {
                edges.push((i, j));
            }
        }
    }
    Graph::from_edges(n, edges).expect("ids in range")
}

/// All connected graphs on exactly `n` vertices up to isomorphism that belong
/// to `class` (every supported class is closed under induced subgraphs, so
/// graphs are grown one vertex at a time from members of the class).
pub fn enumerate_connected(n: usize, class: Option<GraphClass>) -> Result<Vec<Graph>, GenError> {
    Ok(enumerate_up_to(n, class)?.pop().unwrap_or_default())
}

/// Levels `1..=n` of [`enumerate_connected`].
pub fn enumerate_up_to(n: usize, class: Option<GraphClass>) -> Result<Vec<Vec<Graph>>, GenError> {
    if n > ENUMERATION_LIMIT {
        return Err(GenError::TooLarge {
            n,
            max: ENUMERATION_LIMIT,
        });
    }
    let keep = class_filter(class)?;
    let mut levels: Vec<Vec<Graph>> = Vec::new();
    if n == 0 {
        return Ok(levels);
    }
    let mut level = vec![Graph::empty(1)];
    for size in 2..=n {
        let mut seen = BTreeSet::new();
        for g in &level {
            for mask in 1u32..(1 << (size - 1)) {
                let edges = g
                    .edges()
                    .chain((0..size - 1).filter(|&v| mask >> v & 1 == 1).map(|v| (v, size - 1)));
                let h = Graph::from_edges(size, edges).expect("ids in range");
                if keep(&h) {
                    seen.insert(canonical_code(&h));
                }
            }
        }
        levels.push(std::mem::take(&mut level));
        level = seen.into_iter().map(|c| from_code(size, c)).collect();
    }
    levels.push(level);
    if !keep(&levels[0][0]) {
        levels[0].clear();
    }
    Ok(levels)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classes::recognize;

    #[test]
    fn known_counts() {
        let counts: Vec<usize> = enumerate_up_to(6, None).unwrap().iter().map(|l| l.len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 6, 21, 112]);
    }

    #[test]
    fn filtered_examples() {
        let split3 = enumerate_connected(3, Some(GraphClass::Split)).unwrap();
        assert_eq!(split3.len(), 2);
        assert!(split3.contains(&Graph::complete(3)));
        assert_eq!(enumerate_connected(2, None).unwrap(), vec![Graph::complete(2)]);
        let co4 = enumerate_connected(4, Some(GraphClass::Cograph)).unwrap();
        assert_eq!(co4.len(), 5);
        assert!(co4.iter().all(|g| canonical_code(g) != canonical_code(&Graph::path(4))));
        assert_eq!(enumerate_connected(9, None), Err(GenError::TooLarge { n: 9, max: 8 }));
    }

    #[test]
    fn canonical_code_is_invariant() {
        let g = Graph::from_edges(6, [(0, 1), (1, 2), (2, 3), (3, 0), (0, 4), (4, 5)]).unwrap();
        let code = canonical_code(&g);
        for perm in [[5, 4, 3, 2, 1, 0], [1, 2, 3, 4, 5, 0], [2, 0, 1, 5, 3, 4]] {
            assert_eq!(canonical_code(&g.relabel(&perm)), code);
        }
        assert_ne!(canonical_code(&Graph::path(6)), code);
    }

    #[test]
    fn generators_validate_and_are_deterministic() {
        for class in GenClass::ALL {
            for seed in 0..20 {
                let spec = GenSpec::new(class, 9, seed).with_d(2);
                let a = generate(&spec).unwrap();
                assert_eq!(a, generate(&spec).unwrap());
                assert!(a.validate(class), "{class} seed {seed}");
                assert!(a.graph.is_connected(), "{class} seed {seed}");
            }
        }
    }

    #[test]
    fn class_examples() {
        let g = generate(&GenSpec::new(GenClass::Cluster, 0, 0).with_cliques(vec![3, 2])).unwrap();
        assert_eq!(g.graph, Graph::from_edges(5, [(0, 1), (0, 2), (1, 2), (3, 4)]).unwrap());
        assert!(recognize(&g.graph).cluster.is_some());

        let g = generate(&GenSpec::new(GenClass::Interval, 5, 7)).unwrap();
        let Certificate::Intervals(rep) = &g.certificate else {
            panic!()
        };
        assert_eq!(rep.len(), 5);
        assert!(rep.validate(&g.graph).is_ok());

        let g = generate(&GenSpec::new(GenClass::ClusterModulator, 8, 3).with_d(2)).unwrap();
        let Certificate::Modulator(m) = &g.certificate else {
            panic!()
        };
        assert_eq!(m.d(), 2);

        assert!(generate(&GenSpec::new(GenClass::ThresholdModulator, 2, 0).with_d(2)).is_err());
        assert!(generate(&GenSpec::new(GenClass::Random, 4, 0).with_p(1.5)).is_err());
        assert_eq!("split".parse::<GenClass>(), Ok(GenClass::Split));

        let g = generate(&GenSpec::new(GenClass::Split, 4, 1)).unwrap();
        let text = g.certificate.to_text();
        assert_eq!(text.lines().count(), 4);
        assert!(text
            .lines()
            .all(|l| l.starts_with("clique ") || l.starts_with("indep ")));
    }
}
