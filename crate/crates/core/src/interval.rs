//! Four-color sweeps for interval graphs, driven by a representation whose
//! endpoints are pairwise distinct.

use std::fmt;

use num_rational::Ratio;
use thiserror::Error;

use crate::coloring::{Coloring, Variant};
use crate::graph::{Graph, Vertex};
use crate::polysolve::SolveOutcome;

pub type Endpoint = Ratio<i64>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Interval {
    pub left: Endpoint,
    pub right: Endpoint,
}

impl Interval {
    pub fn new(left: Endpoint, right: Endpoint) -> Self {
        Interval { left, right }
    }

    pub fn from_ints(left: i64, right: i64) -> Self {
        Interval::new(Ratio::from_integer(left), Ratio::from_integer(right))
    }

    pub fn meets(&self, other: &Interval) -> bool {
        self.left <= other.right && other.left <= self.right
    }

    pub fn contains(&self, other: &Interval) -> bool {
        self.left <= other.left && other.right <= self.right
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum IntervalError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("representation has {got} intervals, graph has {want} vertices")]
    CountMismatch { got: usize, want: usize },
    #[error("interval of vertex {0} has left endpoint not below its right endpoint")]
    Degenerate(Vertex),
    #[error("vertices {0} and {1} share an endpoint")]
    SharedEndpoint(Vertex, Vertex),
    #[error("pair ({0}, {1}): edge and interval overlap disagree")]
    Mismatch(Vertex, Vertex),
    #[error("graph is not connected")]
    Disconnected,
    #[error("graph needs at least {0} edge(s)")]
    TooFewEdges(usize),
}

/// One closed interval per vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntervalRep {
    intervals: Vec<Interval>,
}

fn parse_endpoint(tok: &str) -> Option<Endpoint> {
    match tok.split_once('/') {
        Some((a, b)) => {
            let (a, b): (i64, i64) = (a.parse().ok()?, b.parse().ok()?);
            (b != 0).then(|| Ratio::new(a, b))
        }
        None => tok.parse().ok().map(Ratio::from_integer),
    }
}

fn fmt_endpoint(x: &Endpoint) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

impl IntervalRep {
    pub fn new(intervals: Vec<Interval>) -> Self {
        IntervalRep { intervals }
    }

    pub fn from_ints(pairs: &[(i64, i64)]) -> Self {
        IntervalRep::new(pairs.iter().map(|&(l, r)| Interval::from_ints(l, r)).collect())
    }

    pub fn len(&self) -> usize {
        self.intervals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    pub fn get(&self, v: Vertex) -> &Interval {
        &self.intervals[v]
    }

    pub fn intervals(&self) -> &[Interval] {
        &self.intervals
    }

    pub fn intersection_graph(&self) -> Graph {
        let n = self.len();
        let edges = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .filter(|&(u, v)| self.intervals[u].meets(&self.intervals[v]));
        Graph::from_edges(n, edges).expect("pairs are in range and distinct")
    }

    /// Vertex order by increasing left endpoint.
    pub fn sweep_order(&self) -> Vec<Vertex> {
        let mut order: Vec<Vertex> = (0..self.len()).collect();
        order.sort_by(|&a, &b| self.intervals[a].left.cmp(&self.intervals[b].left).then(a.cmp(&b)));
        order
    }

    /// Vertex whose interval has the largest right endpoint.
    pub fn rightmost(&self) -> Option<Vertex> {
        (0..self.len()).max_by(|&a, &b| self.intervals[a].right.cmp(&self.intervals[b].right).then(b.cmp(&a)))
    }

    /// Lines `i <vertex> <left> <right>`, endpoints as integers or `p/q`.
    pub fn to_text(&self) -> String {
        self.intervals
            .iter()
            .enumerate()
            .map(|(v, iv)| format!("i {v} {} {}\n", fmt_endpoint(&iv.left), fmt_endpoint(&iv.right)))
            .collect()
    }

    /// Parses `i` lines; `c` comment and blank lines are skipped. Every vertex
    /// `0..n` must appear exactly once.
    pub fn parse(text: &str, n: usize) -> Result<Self, IntervalError> {
        let mut slots: Vec<Option<Interval>> = vec![None; n];
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let err = |msg: &str| IntervalError::Parse {
                line,
                msg: msg.to_string(),
            };
            let toks: Vec<&str> = raw.split_whitespace().collect();
            match toks.first() {
                None | Some(&"c") => continue,
                Some(&"i") if toks.len() == 4 => {
                    let v: Vertex = toks[1].parse().map_err(|_| err("bad vertex id"))?;
                    let l = parse_endpoint(toks[2]).ok_or_else(|| err("bad left endpoint"))?;
                    let r = parse_endpoint(toks[3]).ok_or_else(|| err("bad right endpoint"))?;
                    let slot = slots.get_mut(v).ok_or_else(|| err("vertex out of range"))?;
                    if slot.is_some() {
                        return Err(err("duplicate vertex"));
                    }
                    *slot = Some(Interval::new(l, r));
                }
                _ => return Err(err("expected `i <vertex> <left> <right>`")),
            }
        }
        let intervals = slots
            .into_iter()
            .enumerate()
            .map(|(v, s)| {
                s.ok_or(IntervalError::Parse {
                    line: 0,
                    msg: format!("vertex {v} has no interval"),
                })
            })
            .collect::<Result<_, _>>()?;
        Ok(IntervalRep { intervals })
    }

    /// Checks distinct endpoints and that the intersection graph equals `g`,
    /// reporting the first offending pair in lexicographic order.
    pub fn validate(&self, g: &Graph) -> Result<(), IntervalError> {
        if self.len() != g.n() {
            return Err(IntervalError::CountMismatch {
                got: self.len(),
                want: g.n(),
            });
        }
        if let Some(v) = (0..self.len()).find(|&v| self.intervals[v].left >= self.intervals[v].right) {
            return Err(IntervalError::Degenerate(v));
        }
        let mut points: Vec<(Endpoint, Vertex)> = self
            .intervals
            .iter()
            .enumerate()
            .flat_map(|(v, iv)| [(iv.left, v), (iv.right, v)])
            .collect();
        points.sort();
        if let Some(w) = points.windows(2).find(|w| w[0].0 == w[1].0) {
            let (a, b) = (w[0].1.min(w[1].1), w[0].1.max(w[1].1));
            return Err(IntervalError::SharedEndpoint(a, b));
        }
        for u in 0..g.n() {
            for v in u + 1..g.n() {
                if g.has_edge(u, v) != self.intervals[u].meets(&self.intervals[v]) {
                    return Err(IntervalError::Mismatch(u, v));
                }
            }
        }
        Ok(())
    }
}

impl fmt::Display for IntervalRep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// Whether an explicit assignment in the sweep may replace a color given in
/// an earlier iteration. Zero-fill never replaces a color under either policy.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Overwrite {
    /// Named vertices always receive their color.
    Explicit,
    /// Already colored vertices keep their color.
    #[default]
    Never,
}

struct Sweep<'a> {
    g: &'a Graph,
    rep: &'a IntervalRep,
    colors: Vec<Option<usize>>,
    policy: Overwrite,
    rightmost: Vertex,
}

impl<'a> Sweep<'a> {
    fn new(g: &'a Graph, rep: &'a IntervalRep, policy: Overwrite) -> Self {
        let rightmost = rep.rightmost().expect("nonempty");
        Sweep {
            g,
            rep,
            colors: vec![None; g.n()],
            policy,
            rightmost,
        }
    }

    fn left(&self, v: Vertex) -> Endpoint {
        self.rep.get(v).left
    }

    fn right(&self, v: Vertex) -> Endpoint {
        self.rep.get(v).right
    }

    /// Neighbor with the largest right endpoint over the closed neighborhood.
    fn reach(&self, v: Vertex) -> Vertex {
        *self
            .g
            .neighbors(v)
            .iter()
            .max_by_key(|&&w| self.right(w))
            .filter(|&&w| self.right(w) > self.right(v))
            .expect("a connected graph always has a neighbor reaching further right")
    }

    fn assign(&mut self, v: Vertex, c: usize) {
        if self.policy == Overwrite::Explicit || self.colors[v].is_none() {
            self.colors[v] = Some(c);
        }
    }

    fn zero_fill(&mut self, around: &[Vertex], keep: impl Fn(Vertex) -> bool) {
        let mut targets: Vec<Vertex> = around
            .iter()
            .flat_map(|&a| self.g.neighbors(a).iter().copied())
            .collect();
        targets.sort_unstable();
        targets.dedup();
        for w in targets {
            if self.colors[w].is_none() && keep(w) {
                self.colors[w] = Some(0);
            }
        }
    }

    /// The shared non-rightmost branch of both sweeps.
    fn chain(&mut self, vi: Vertex) {
        let start = self.left(vi);
        let vl = self.reach(vi);
        if vl == self.rightmost {
            self.assign(vi, 1);
            self.assign(vl, 2);
            let rep = self.rep;
            self.zero_fill(&[vi, vl], |w| rep.get(w).left >= start);
        } else {
            let vl2 = self.reach(vl);
            self.assign(vi, 1);
            self.assign(vl, 2);
            self.assign(vl2, 3);
            let rep = self.rep;
            let limit = self.right(vl2);
            self.zero_fill(&[vi, vl, vl2], |w| {
                rep.get(w).right <= limit && rep.get(w).left >= start
            });
        }
    }

    fn finish(self) -> Coloring {
        Coloring::new(
            self.colors
                .into_iter()
                .map(|c| c.expect("every vertex is swept"))
                .collect(),
        )
    }
}

fn check_input(g: &Graph, rep: &IntervalRep, min_edges: usize) -> Result<(), IntervalError> {
    rep.validate(g)?;
    if g.m() < min_edges {
        return Err(IntervalError::TooFewEdges(min_edges));
    }
    if !g.is_connected() {
        return Err(IntervalError::Disconnected);
    }
    Ok(())
}

/// Closed-neighborhood sweep with the given overwrite policy.
pub fn cfcn_sweep(g: &Graph, rep: &IntervalRep, policy: Overwrite) -> Result<Coloring, IntervalError> {
    check_input(g, rep, 1)?;
    let mut s = Sweep::new(g, rep, policy);
    for vi in rep.sweep_order() {
        if s.colors[vi].is_some() {
            continue;
        }
        if vi == s.rightmost {
            let start = s.left(vi);
            s.assign(vi, 1);
            s.zero_fill(&[vi], |w| rep.get(w).left >= start);
        } else {
            s.chain(vi);
        }
    }
    Ok(s.finish())
}

/// Open-neighborhood sweep with the given overwrite policy.
pub fn cfon_sweep(g: &Graph, rep: &IntervalRep, policy: Overwrite) -> Result<Coloring, IntervalError> {
    check_input(g, rep, 2)?;
    let mut s = Sweep::new(g, rep, policy);
    for vi in rep.sweep_order() {
        if s.colors[vi].is_some() {
            continue;
        }
        if vi == s.rightmost {
            let here = *rep.get(vi);
            let nested = (0..g.n()).any(|w| w != vi && here.contains(rep.get(w)));
            if !nested {
                s.assign(vi, 1);
                continue;
            }
            let start = here.left;
            let partner = g
                .neighbors(vi)
                .iter()
                .copied()
                .filter(|&w| rep.get(w).left >= start)
                .min_by_key(|&w| rep.get(w).left)
                .expect("a nested interval is a neighbor starting to the right");
            s.assign(vi, 1);
            s.assign(partner, 2);
            s.zero_fill(&[vi], |w| rep.get(w).left >= start);
        } else {
            s.chain(vi);
        }
    }
    Ok(s.finish())
}

/// Closed-neighborhood coloring with at most four colors.
pub fn cfcn_interval(g: &Graph, rep: &IntervalRep) -> Result<SolveOutcome, IntervalError> {
    let c = cfcn_sweep(g, rep, Overwrite::default())?;
    Ok(SolveOutcome::new(g, Variant::Closed, c))
}

/// Open-neighborhood coloring with at most four colors.
pub fn cfon_interval(g: &Graph, rep: &IntervalRep) -> Result<SolveOutcome, IntervalError> {
    let c = cfon_sweep(g, rep, Overwrite::default())?;
    Ok(SolveOutcome::new(g, Variant::Open, c))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::verify;
    use proptest::prelude::*;

    fn p4() -> (Graph, IntervalRep) {
        let rep = IntervalRep::from_ints(&[(0, 2), (1, 4), (3, 6), (5, 7)]);
        (Graph::path(4), rep)
    }

    #[test]
    fn validation() {
        let (g, rep) = p4();
        assert_eq!(rep.validate(&g), Ok(()));
        let k2 = Graph::complete(2);
        assert_eq!(
            IntervalRep::from_ints(&[(0, 1), (2, 3)]).validate(&k2),
            Err(IntervalError::Mismatch(0, 1))
        );
        assert_eq!(
            IntervalRep::from_ints(&[(0, 2), (2, 3)]).validate(&k2),
            Err(IntervalError::SharedEndpoint(0, 1))
        );
        assert_eq!(
            IntervalRep::from_ints(&[(1, 1), (0, 3)]).validate(&k2),
            Err(IntervalError::Degenerate(0))
        );
    }

    #[test]
    fn text_round_trip_with_fractions() {
        let text = "c demo\ni 0 0 2\ni 1 7/2 9/2\n\ni 2 1 4\n";
        let rep = IntervalRep::parse(text, 3).unwrap();
        assert_eq!(rep.get(1).left, Ratio::new(7, 2));
        assert_eq!(IntervalRep::parse(&rep.to_text(), 3).unwrap(), rep);
        assert!(matches!(
            IntervalRep::parse("i 0 0 x\n", 1),
            Err(IntervalError::Parse { line: 1, .. })
        ));
        assert!(IntervalRep::parse("i 0 0 1\n", 2).is_err());
        assert!(IntervalRep::parse("i 0 0 1\ni 0 2 3\n", 2).is_err());
    }

    #[test]
    fn closed_traces() {
        let k2 = Graph::complete(2);
        let out = cfcn_interval(&k2, &IntervalRep::from_ints(&[(0, 2), (1, 3)])).unwrap();
        assert_eq!(out.coloring.as_slice(), &[1, 2]);

        let (g, rep) = p4();
        let out = cfcn_interval(&g, &rep).unwrap();
        assert_eq!(out.coloring.as_slice(), &[1, 2, 3, 1]);
        assert!(verify(&g, &out.coloring, Variant::Closed).is_valid());

        let k3 = Graph::complete(3);
        let out = cfcn_interval(&k3, &IntervalRep::from_ints(&[(0, 10), (1, 11), (2, 12)])).unwrap();
        assert!(verify(&k3, &out.coloring, Variant::Closed).is_valid());
        assert!(out.colors_used <= 4);
    }

    #[test]
    fn open_traces() {
        // center [1,5] contains [3,4]
        let p3 = Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        let rep = IntervalRep::from_ints(&[(0, 2), (1, 5), (3, 4)]);
        let out = cfon_interval(&p3, &rep).unwrap();
        assert!(verify(&p3, &out.coloring, Variant::Open).is_valid());
        assert!(out.colors_used <= 4);

        let (g, rep) = p4();
        let out = cfon_interval(&g, &rep).unwrap();
        assert!(verify(&g, &out.coloring, Variant::Open).is_valid());
        assert!(out.colors_used <= 4);

        let k2 = Graph::complete(2);
        assert_eq!(
            cfon_interval(&k2, &IntervalRep::from_ints(&[(0, 2), (1, 3)])),
            Err(IntervalError::TooFewEdges(2))
        );
    }

    #[test]
    fn disconnected_rejected() {
        let g = Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        let rep = IntervalRep::from_ints(&[(0, 2), (1, 3), (4, 6), (5, 7)]);
        assert_eq!(cfcn_interval(&g, &rep), Err(IntervalError::Disconnected));
    }

    fn staircase(n: usize) -> IntervalRep {
        IntervalRep::from_ints(&(0..n as i64).map(|i| (2 * i, 2 * i + 3)).collect::<Vec<_>>())
    }

    #[test]
    fn paths_up_to_fifty() {
        for n in 3..=50 {
            let rep = staircase(n);
            let g = rep.intersection_graph();
            assert_eq!(g, Graph::path(n));
            for variant in [Variant::Closed, Variant::Open] {
                for policy in [Overwrite::Never, Overwrite::Explicit] {
                    let c = match variant {
                        Variant::Closed => cfcn_sweep(&g, &rep, policy),
                        Variant::Open => cfon_sweep(&g, &rep, policy),
                    }
                    .unwrap();
                    assert!(verify(&g, &c, variant).is_valid(), "n={n} {variant} {policy:?}");
                    assert!(c.colors_used() <= 4);
                }
            }
        }
    }

    fn nonzero_colors_independent(g: &Graph, c: &Coloring) -> bool {
        g.edges().all(|(u, v)| c.get(u) == 0 || c.get(u) != c.get(v))
    }

    prop_compose! {
        fn arb_rep()(n in 2usize..30, seed in any::<u64>()) -> IntervalRep {
            use rand::{seq::SliceRandom, SeedableRng};
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let mut pts: Vec<i64> = (0..2 * n as i64).collect();
            pts.shuffle(&mut rng);
            let pairs: Vec<(i64, i64)> = pts.chunks(2).map(|c| (c[0].min(c[1]), c[0].max(c[1]))).collect();
            IntervalRep::from_ints(&pairs)
        }
    }

    proptest! {
        #[test]
        fn sweeps_are_valid_with_four_colors(rep in arb_rep()) {
            let g = rep.intersection_graph();
            prop_assume!(g.is_connected() && g.m() >= 2);
            for policy in [Overwrite::Never, Overwrite::Explicit] {
                let c = cfcn_sweep(&g, &rep, policy).unwrap();
                prop_assert!(verify(&g, &c, Variant::Closed).is_valid());
                prop_assert!(c.colors_used() <= 4);
                prop_assert!(nonzero_colors_independent(&g, &c));
                let c = cfon_sweep(&g, &rep, policy).unwrap();
                prop_assert!(verify(&g, &c, Variant::Open).is_valid());
                prop_assert!(c.colors_used() <= 4);
            }
        }

        #[test]
        fn relabeling_permutes_the_coloring(rep in arb_rep(), seed in any::<u64>()) {
            use rand::{seq::SliceRandom, SeedableRng};
            let g = rep.intersection_graph();
            prop_assume!(g.is_connected() && g.m() >= 2);
            let mut perm: Vec<Vertex> = (0..g.n()).collect();
            perm.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed));
            let mut moved = vec![*rep.get(0); g.n()];
            for v in 0..g.n() {
                moved[perm[v]] = *rep.get(v);
            }
            let rep2 = IntervalRep::new(moved);
            let g2 = g.relabel(&perm);
            let a = cfcn_interval(&g, &rep).unwrap().coloring;
            let b = cfcn_interval(&g2, &rep2).unwrap().coloring;
            for (v, &w) in perm.iter().enumerate() {
                prop_assert_eq!(a.get(v), b.get(w));
            }
        }
    }
}
