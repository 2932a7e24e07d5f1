//! Colorings, the unique-color predicate and the CF-CN / CF-ON verifiers.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::graph::{Graph, Vertex};

pub type Color = usize;

/// Which neighborhood every vertex must see a unique color in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Variant {
    /// Closed neighborhoods `N[v]` (CF-CN).
    Closed,
    /// Open neighborhoods `N(v)` (CF-ON).
    Open,
}

impl Variant {
    pub fn short(self) -> &'static str {
        match self {
            Variant::Closed => "cn",
            Variant::Open => "on",
        }
    }

    /// Members of the neighborhood of `v` this variant constrains.
    pub fn neighborhood(self, g: &Graph, v: Vertex) -> Vec<Vertex> {
        let mut out = g.neighbors(v).to_vec();
        if self == Variant::Closed {
            let pos = out.binary_search(&v).unwrap_err();
            out.insert(pos, v);
        }
        out
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.short())
    }
}

impl FromStr for Variant {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "cn" | "closed" => Ok(Variant::Closed),
            "on" | "open" => Ok(Variant::Open),
            _ => Err(format!("unknown variant `{s}` (expected cn or on)")),
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ColoringError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("vertex {vertex} out of range (n = {n})")]
    VertexOutOfRange { vertex: Vertex, n: usize },
    #[error("no color given for vertex {0}")]
    MissingVertex(Vertex),
    #[error("vertex {0} colored more than once")]
    DuplicateVertex(Vertex),
    #[error("coloring has {got} entries but the graph has {expected} vertices")]
    LengthMismatch { expected: usize, got: usize },
}

/// Total map vertex -> color. Colors are arbitrary non-negative integers; the
/// size of a coloring is the number of distinct values.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Coloring(Vec<Color>);

impl Coloring {
    pub fn new(colors: Vec<Color>) -> Self {
        Self(colors)
    }

    pub fn uniform(n: usize, color: Color) -> Self {
        Self(vec![color; n])
    }

    /// Checks that the coloring covers exactly the vertices of `g`.
    pub fn for_graph(g: &Graph, colors: Vec<Color>) -> Result<Self, ColoringError> {
        if colors.len() != g.n() {
            return Err(ColoringError::LengthMismatch {
                expected: g.n(),
                got: colors.len(),
            });
        }
        Ok(Self(colors))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, v: Vertex) -> Color {
        self.0[v]
    }

    pub fn set(&mut self, v: Vertex, c: Color) {
        self.0[v] = c;
    }

    pub fn as_slice(&self) -> &[Color] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<Color> {
        self.0
    }

    pub fn colors_used(&self) -> usize {
        let mut c = self.0.clone();
        c.sort_unstable();
        c.dedup();
        c.len()
    }

    pub fn max_color(&self) -> Option<Color> {
        self.0.iter().copied().max()
    }

    /// Smallest color occurring exactly once among `members`, if any.
    pub fn unique_color<I>(&self, members: I) -> Option<Color>
    where
        I: IntoIterator<Item = Vertex>,
    {
        let colors: Vec<Color> = members.into_iter().map(|v| self.0[v]).collect();
        unique_in_multiset(colors)
    }

    /// Applies `map` to every color.
    pub fn recolor(&self, map: impl Fn(Color) -> Color) -> Coloring {
        Coloring(self.0.iter().map(|&c| map(c)).collect())
    }

    /// Renumbers colors to `0..k` in order of first appearance.
    pub fn normalized(&self) -> Coloring {
        let mut seen: Vec<(Color, Color)> = Vec::new();
        let out = self
            .0
            .iter()
            .map(|&c| match seen.iter().find(|(old, _)| *old == c) {
                Some(&(_, new)) => new,
                None => {
                    let new = seen.len();
                    seen.push((c, new));
                    new
                }
            })
            .collect();
        Coloring(out)
    }

    pub fn to_text(&self) -> String {
        self.0.iter().enumerate().map(|(v, c)| format!("v {v} {c}\n")).collect()
    }

    /// Parses `v <vertex> <color>` lines; every vertex of an `n`-vertex graph
    /// must appear exactly once.
    pub fn parse(text: &str, n: usize) -> Result<Self, ColoringError> {
        let mut colors: Vec<Option<Color>> = vec![None; n];
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let mut tok = raw.split_whitespace();
            match tok.next() {
                None | Some("c") => continue,
                Some("v") => {}
                Some(other) => {
                    return Err(ColoringError::Parse {
                        line,
                        msg: format!("unknown line type `{other}`"),
                    })
                }
            }
            let mut num = |what: &str| -> Result<usize, ColoringError> {
                let t = tok.next().ok_or_else(|| ColoringError::Parse {
                    line,
                    msg: format!("missing {what}"),
                })?;
                t.parse().map_err(|_| ColoringError::Parse {
                    line,
                    msg: format!("bad {what} `{t}`"),
                })
            };
            let v = num("vertex")?;
            let c = num("color")?;
            if tok.next().is_some() {
                return Err(ColoringError::Parse {
                    line,
                    msg: "trailing tokens".into(),
                });
            }
            if v >= n {
                return Err(ColoringError::VertexOutOfRange { vertex: v, n });
            }
            if colors[v].replace(c).is_some() {
                return Err(ColoringError::DuplicateVertex(v));
            }
        }
        colors
            .into_iter()
            .enumerate()
            .map(|(v, c)| c.ok_or(ColoringError::MissingVertex(v)))
            .collect::<Result<Vec<_>, _>>()
            .map(Coloring)
    }
}

impl From<Vec<Color>> for Coloring {
    fn from(v: Vec<Color>) -> Self {
        Coloring(v)
    }
}

/// Smallest value occurring exactly once in the multiset.
pub fn unique_in_multiset(mut colors: Vec<Color>) -> Option<Color> {
    colors.sort_unstable();
    let mut i = 0;
    while i < colors.len() {
        let mut j = i + 1;
        while j < colors.len() && colors[j] == colors[i] {
            j += 1;
        }
        if j - i == 1 {
            return Some(colors[i]);
        }
        i = j;
    }
    None
}

/// Verifier outcome. `Invalid` names the smallest vertex whose neighborhood
/// has no unique color.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Valid,
    Invalid { vertex: Vertex },
}

impl Verdict {
    pub fn is_valid(self) -> bool {
        self == Verdict::Valid
    }
}

/// # Panics
/// If the coloring does not have one entry per vertex of `g`.
pub fn verify(g: &Graph, c: &Coloring, variant: Variant) -> Verdict {
    assert_eq!(c.len(), g.n(), "coloring length must match vertex count");
    for v in g.vertices() {
        let hood = variant.neighborhood(g, v);
        if c.unique_color(hood).is_none() {
            return Verdict::Invalid { vertex: v };
        }
    }
    Verdict::Valid
}

pub fn verify_cfcn(g: &Graph, c: &Coloring) -> Verdict {
    verify(g, c, Variant::Closed)
}

pub fn verify_cfon(g: &Graph, c: &Coloring) -> Verdict {
    verify(g, c, Variant::Open)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn unique_color_examples() {
        assert_eq!(unique_in_multiset(vec![0, 1, 1]), Some(0));
        assert_eq!(unique_in_multiset(vec![1, 1]), None);
        assert_eq!(unique_in_multiset(vec![]), None);
        assert_eq!(unique_in_multiset(vec![3, 2, 3, 5]), Some(2));
    }

    #[test]
    fn closed_verifier() {
        let k2 = Graph::complete(2);
        assert_eq!(verify_cfcn(&k2, &vec![0, 1].into()), Verdict::Valid);
        assert_eq!(verify_cfcn(&k2, &vec![0, 0].into()), Verdict::Invalid { vertex: 0 });
        assert_eq!(verify_cfcn(&Graph::path(3), &vec![0, 1, 0].into()), Verdict::Valid);
        // isolated vertex sees itself
        assert_eq!(verify_cfcn(&Graph::empty(1), &vec![0].into()), Verdict::Valid);
    }

    #[test]
    fn open_verifier() {
        let k2 = Graph::complete(2);
        assert_eq!(verify_cfon(&k2, &vec![0, 0].into()), Verdict::Valid);
        let k3 = Graph::complete(3);
        assert_eq!(verify_cfon(&k3, &vec![0, 1, 1].into()), Verdict::Invalid { vertex: 0 });
        let c4 = Graph::cycle(4);
        assert_eq!(verify_cfon(&c4, &vec![0, 0, 1, 1].into()), Verdict::Valid);
        let iso = Graph::from_edges(3, [(0, 1)]).unwrap();
        assert_eq!(verify_cfon(&iso, &vec![0, 1, 2].into()), Verdict::Invalid { vertex: 2 });
    }

    #[test]
    fn one_coloring_never_closed_valid_with_an_edge() {
        for g in [Graph::complete(2), Graph::path(5), Graph::cycle(6), Graph::star(3)] {
            assert!(!verify_cfcn(&g, &Coloring::uniform(g.n(), 0)).is_valid());
        }
    }

    #[test]
    fn coloring_file_roundtrip_and_errors() {
        let c = Coloring::parse("v 0 0\nv 1 1\n", 2).unwrap();
        assert_eq!(c, Coloring::new(vec![0, 1]));
        assert_eq!(Coloring::parse(&c.to_text(), 2).unwrap(), c);
        assert_eq!(Coloring::parse("v 0 0\n", 2), Err(ColoringError::MissingVertex(1)));
        assert_eq!(
            Coloring::parse("v 0 0\nv 0 1\nv 1 1\n", 2),
            Err(ColoringError::DuplicateVertex(0))
        );
        assert!(matches!(
            Coloring::parse("v 2 0\n", 2),
            Err(ColoringError::VertexOutOfRange { vertex: 2, n: 2 })
        ));
        assert!(matches!(
            Coloring::parse("v 0\n", 1),
            Err(ColoringError::Parse { line: 1, .. })
        ));
    }

    #[test]
    fn colors_used_counts_distinct_values() {
        assert_eq!(Coloring::new(vec![7, 7, 2, 9]).colors_used(), 3);
        assert_eq!(Coloring::new(vec![5, 5, 2]).normalized(), Coloring::new(vec![0, 0, 1]));
    }

    proptest! {
        #[test]
        fn unique_color_is_order_independent(mut colors in prop::collection::vec(0usize..4, 0..10), seed in any::<u64>()) {
            let before = unique_in_multiset(colors.clone());
            // deterministic shuffle driven by the seed
            let len = colors.len();
            let mut s = seed;
            for i in (1..len).rev() {
                s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                colors.swap(i, (s >> 33) as usize % (i + 1));
            }
            prop_assert_eq!(before, unique_in_multiset(colors));
        }
    }
}
