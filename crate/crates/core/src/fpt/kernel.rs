use std::collections::BTreeMap;

use super::{check_modulator, compute_types, CliqueTypes, FptError};
use crate::classes::{Modulator, ResidualClass};
use crate::coloring::{verify, Color, Coloring, Variant};
use crate::graph::{Graph, Vertex, VertexSet};
use crate::oracle::Oracle;
use crate::polysolve::{lemma1_cfcn, lemma1_cfon, Optimality, SolveOutcome};

/// A vertex removed because its type exceeded the cap.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DeletedVertex {
    pub vertex: Vertex,
    pub clique_rep: Vertex,
    pub mask: u64,
}

/// A clique removed because its mega-type had too many members;
/// `survivor_rep` names the first kept clique of the same mega-type.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DeletedClique {
    pub clique_rep: Vertex,
    pub survivor_rep: Vertex,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelInstance {
    pub graph: Graph,
    /// Original id of each kernel vertex, ascending.
    pub kept: Vec<Vertex>,
    /// Modulator in original ids.
    pub modulator: VertexSet,
    pub k: usize,
    pub variant: Variant,
    pub deleted_vertices: Vec<DeletedVertex>,
    pub deleted_cliques: Vec<DeletedClique>,
    types: Vec<CliqueTypes>,
}

/// Per-type cap: `k + 1` closed, `2k + 1` open.
pub(super) fn type_cap(variant: Variant, k: usize) -> usize {
    match variant {
        Variant::Closed => k + 1,
        Variant::Open => 2 * k + 1,
    }
}

/// Copies of a color a full type is guaranteed to contain.
fn repeat_needed(variant: Variant) -> usize {
    match variant {
        Variant::Closed => 2,
        Variant::Open => 3,
    }
}

impl KernelInstance {
    pub fn d(&self) -> usize {
        self.modulator.len()
    }

    pub fn cap(&self) -> usize {
        type_cap(self.variant, self.k)
    }

    /// `d + (cap+1)^(2^d) · (d+1) · 2^d · cap`, saturating.
    pub fn size_bound(&self) -> u128 {
        let d = self.d() as u32;
        let cap = self.cap() as u128;
        let types = 1u128.checked_shl(d).unwrap_or(u128::MAX);
        let mega = u32::try_from(types)
            .ok()
            .and_then(|e| (cap + 1).checked_pow(e))
            .unwrap_or(u128::MAX);
        mega.saturating_mul(d as u128 + 1)
            .saturating_mul(types)
            .saturating_mul(cap)
            .saturating_add(d as u128)
    }

    pub fn respects_bound(&self) -> bool {
        (self.graph.n() as u128) <= self.size_bound()
    }

    pub fn modulator_in_kernel(&self) -> VertexSet {
        self.modulator
            .iter()
            .map(|x| self.kept.binary_search(&x).expect("X is never reduced"))
            .collect()
    }

    /// Provenance sidecar: `x <v>` per modulator vertex, `kv <kernel-id>
    /// <original-id>` per kept vertex, `dv <vertex> <clique-rep> <mask>` per
    /// deleted vertex (mask in binary, bit `j` for the `j`-th smallest
    /// modulator vertex) and `dc <clique-rep> <survivor-rep>` per deleted clique.
    pub fn provenance_text(&self) -> String {
        let mut out = String::new();
        for x in &self.modulator {
            out.push_str(&format!("x {x}\n"));
        }
        for (new, old) in self.kept.iter().enumerate() {
            out.push_str(&format!("kv {new} {old}\n"));
        }
        for dv in &self.deleted_vertices {
            out.push_str(&format!("dv {} {} {:b}\n", dv.vertex, dv.clique_rep, dv.mask));
        }
        for dc in &self.deleted_cliques {
            out.push_str(&format!("dc {} {}\n", dc.clique_rep, dc.survivor_rep));
        }
        out
    }

    /// Original-id coloring from a valid kernel coloring: deleted cliques copy
    /// an unmarked surviving clique of their mega-type, then deleted vertices
    /// take a color repeated in the survivors of their type.
    pub fn lift(&self, g: &Graph, kernel_coloring: &Coloring) -> Result<Coloring, FptError> {
        if kernel_coloring.len() != self.graph.n() {
            return Err(FptError::KernelColoringLength {
                got: kernel_coloring.len(),
                want: self.graph.n(),
            });
        }
        let mut colors: Vec<Option<Color>> = vec![None; g.n()];
        for (new, &old) in self.kept.iter().enumerate() {
            colors[old] = Some(kernel_coloring.get(new));
        }
        let removed: VertexSet = self.deleted_vertices.iter().map(|dv| dv.vertex).collect();
        let survivors = |t: &[Vertex]| -> Vec<Vertex> { t.iter().copied().filter(|&v| !removed.contains(v)).collect() };
        let by_rep: BTreeMap<Vertex, &CliqueTypes> = self.types.iter().map(|c| (c.rep(), c)).collect();

        if !self.deleted_cliques.is_empty() {
            let marked = self.critical_cliques(kernel_coloring);
            let cap = self.cap();
            let deleted_reps: VertexSet = self.deleted_cliques.iter().map(|dc| dc.clique_rep).collect();
            for dc in &self.deleted_cliques {
                let target = by_rep[&dc.clique_rep];
                let key = target.mega_key(cap);
                let source = self
                    .types
                    .iter()
                    .filter(|c| !deleted_reps.contains(c.rep()) && c.mega_key(cap) == key)
                    .find(|c| !marked.contains(c.rep()))
                    .ok_or_else(|| FptError::Lift(format!("every clique like {} is critical", dc.clique_rep)))?;
                for (mask, members) in &target.types {
                    let from = survivors(source.type_of(*mask));
                    let to = survivors(members);
                    if from.len() != to.len() {
                        return Err(FptError::Lift(format!("type {mask:#b} sizes differ")));
                    }
                    for (&a, &b) in from.iter().zip(&to) {
                        colors[b] = colors[a];
                    }
                }
            }
        }

        let need = repeat_needed(self.variant);
        for dv in &self.deleted_vertices {
            let kept = survivors(by_rep[&dv.clique_rep].type_of(dv.mask));
            let mut counts: BTreeMap<Color, usize> = BTreeMap::new();
            for v in kept {
                *counts.entry(colors[v].expect("survivors are colored")).or_default() += 1;
            }
            let repeated = counts
                .iter()
                .find(|&(_, &n)| n >= need)
                .map(|(&c, _)| c)
                .ok_or_else(|| FptError::Lift(format!("no color repeats {need} times beside {}", dv.vertex)))?;
            colors[dv.vertex] = Some(repeated);
        }

        let lifted = Coloring::new(
            colors
                .into_iter()
                .enumerate()
                .map(|(v, c)| c.ok_or_else(|| FptError::Lift(format!("vertex {v} left uncolored"))))
                .collect::<Result<_, _>>()?,
        );
        if !verify(g, &lifted, self.variant).is_valid() {
            return Err(FptError::Lift("lifted coloring fails the verifier".into()));
        }
        Ok(lifted)
    }

    /// Representatives of cliques holding, for some `x ∈ X`, the first
    /// (smallest id) vertex with a unique color in the neighborhood of `x`.
    fn critical_cliques(&self, kernel_coloring: &Coloring) -> VertexSet {
        let clique_of: BTreeMap<Vertex, Vertex> = self
            .types
            .iter()
            .flat_map(|c| c.members.iter().map(move |v| (v, c.rep())))
            .collect();
        let mut marked = VertexSet::new();
        for x in self.modulator_in_kernel().iter() {
            let hood = self.variant.neighborhood(&self.graph, x);
            let hood_colors: Vec<Color> = hood.iter().map(|&v| kernel_coloring.get(v)).collect();
            let first = hood
                .iter()
                .find(|&&v| hood_colors.iter().filter(|&&c| c == kernel_coloring.get(v)).count() == 1);
            if let Some(&v) = first {
                if let Some(&rep) = clique_of.get(&self.kept[v]) {
                    marked.insert(rep);
                }
            }
        }
        marked
    }
}

/// Applies the type cap exhaustively (keeping smallest ids), then keeps the
/// `d + 1` cliques with smallest members per mega-type. Never short-circuits.
pub fn build_kernel(g: &Graph, m: &Modulator, variant: Variant, k: usize) -> Result<KernelInstance, FptError> {
    if k == 0 {
        return Err(FptError::ZeroColors);
    }
    check_modulator(g, m, ResidualClass::Cluster)?;
    if variant == Variant::Open {
        if let Some(v) = g.vertices().find(|&v| g.degree(v) == 0) {
            return Err(FptError::IsolatedVertex(v));
        }
    }
    let types = compute_types(g, m)?;
    let cap = type_cap(variant, k);
    let mut removed = vec![false; g.n()];
    let mut deleted_vertices = Vec::new();
    for clique in &types {
        for (mask, members) in &clique.types {
            for &v in members.iter().skip(cap) {
                removed[v] = true;
                deleted_vertices.push(DeletedVertex {
                    vertex: v,
                    clique_rep: clique.rep(),
                    mask: *mask,
                });
            }
        }
    }
    let mut groups: BTreeMap<Vec<(u64, usize)>, Vec<&CliqueTypes>> = BTreeMap::new();
    for clique in &types {
        groups.entry(clique.mega_key(cap)).or_default().push(clique);
    }
    let mut deleted_cliques = Vec::new();
    for members in groups.values() {
        let survivor_rep = members[0].rep();
        for clique in members.iter().skip(m.d() + 1) {
            for v in &clique.members {
                removed[v] = true;
            }
            deleted_cliques.push(DeletedClique {
                clique_rep: clique.rep(),
                survivor_rep,
            });
        }
    }
    deleted_cliques.sort_by_key(|dc| dc.clique_rep);
    deleted_vertices.sort_by_key(|dv| dv.vertex);
    let keep: VertexSet = g.vertices().filter(|&v| !removed[v]).collect();
    let sub = g.induced_subgraph(&keep).expect("kept vertices are in range");
    let kernel = KernelInstance {
        graph: sub.graph,
        kept: sub.to_old,
        modulator: m.deleted.clone(),
        k,
        variant,
        deleted_vertices,
        deleted_cliques,
        types,
    };
    debug_assert!(kernel.respects_bound());
    Ok(kernel)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Reduction {
    Kernel(KernelInstance),
    /// `k` is at least the modulator bound and the bounded construction fits.
    Lemma1(SolveOutcome),
}

fn lemma1(g: &Graph, m: &Modulator, variant: Variant) -> Option<SolveOutcome> {
    match variant {
        Variant::Closed => lemma1_cfcn(g, m).ok(),
        Variant::Open => lemma1_cfon(g, m).ok(),
    }
}

fn lemma1_threshold(variant: Variant, d: usize) -> usize {
    match variant {
        Variant::Closed => d + 2,
        Variant::Open => 2 * d + 2,
    }
}

/// Kernelizes, unless `k` reaches `d + 2` (closed) or `2d + 2` (open) and the
/// bounded construction really uses at most `k` colors.
pub fn reduce(g: &Graph, m: &Modulator, variant: Variant, k: usize) -> Result<Reduction, FptError> {
    if k == 0 {
        return Err(FptError::ZeroColors);
    }
    check_modulator(g, m, ResidualClass::Cluster)?;
    if k >= lemma1_threshold(variant, m.d()) {
        if let Some(out) = lemma1(g, m, variant).filter(|o| o.colors_used <= k) {
            return Ok(Reduction::Lemma1(out));
        }
    }
    build_kernel(g, m, variant, k).map(Reduction::Kernel)
}

pub fn reduce_cfcn(g: &Graph, m: &Modulator, k: usize) -> Result<Reduction, FptError> {
    reduce(g, m, Variant::Closed, k)
}

pub fn reduce_cfon(g: &Graph, m: &Modulator, k: usize) -> Result<Reduction, FptError> {
    reduce(g, m, Variant::Open, k)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Route {
    Lemma1,
    Kernel,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum KernelVerdict {
    Yes { coloring: Coloring, route: Route },
    No,
}

/// Decides `k`-colorability through the kernel and lifts a witness back.
pub fn solve_via_kernel(
    g: &Graph,
    m: &Modulator,
    variant: Variant,
    k: usize,
    oracle: &Oracle,
) -> Result<KernelVerdict, FptError> {
    match reduce(g, m, variant, k)? {
        Reduction::Lemma1(out) => Ok(KernelVerdict::Yes {
            coloring: out.coloring,
            route: Route::Lemma1,
        }),
        Reduction::Kernel(kernel) => {
            if kernel.graph.n() > oracle.limit {
                return Err(FptError::KernelTooLarge {
                    n: kernel.graph.n(),
                    limit: oracle.limit,
                    bound: kernel.size_bound(),
                });
            }
            let found = oracle.decide(&kernel.graph, variant, k).expect("size and k checked");
            match found {
                None => Ok(KernelVerdict::No),
                Some(kc) => Ok(KernelVerdict::Yes {
                    coloring: kernel.lift(g, &kc)?,
                    route: Route::Kernel,
                }),
            }
        }
    }
}

/// Smallest `k` accepted by [`solve_via_kernel`], with its lifted witness.
pub fn minimum_via_kernel(
    g: &Graph,
    m: &Modulator,
    variant: Variant,
    oracle: &Oracle,
) -> Result<SolveOutcome, FptError> {
    let top = lemma1_threshold(variant, m.d()).max(g.n()).max(1);
    for k in 1..=top {
        if let KernelVerdict::Yes { coloring, .. } = solve_via_kernel(g, m, variant, k, oracle)? {
            let mut out = SolveOutcome::new(g, variant, coloring);
            out.optimality = Optimality::Exact;
            return Ok(out);
        }
    }
    Err(FptError::Lift("no k up to the vertex count admits a coloring".into()))
}
