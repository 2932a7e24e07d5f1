use std::path::{Path, PathBuf};

use cfcolor::classes::{
    bipartition, minimum_modulator, modular_decomposition, recognize, split_partition, Modulator, ResidualClass,
    ThresholdStep,
};
use cfcolor::fpt::{
    approx_threshold, build_kernel, minimum_via_kernel, reduce, solve_via_kernel, FptError, KernelVerdict, Reduction,
};
use cfcolor::generators::{generate, Certificate, GenSpec};
use cfcolor::hardness::{cross_validate, encode, HardnessError};
use cfcolor::interval::{cfcn_interval, cfon_interval, IntervalError, IntervalRep};
use cfcolor::oracle::{Oracle, OracleError, OracleResult};
use cfcolor::polysolve::{
    lemma1_cfcn, lemma1_cfon, solve_bipartite_cfcn, solve_cograph, solve_split_cfcn, PolyError, SolveOutcome,
};
use cfcolor::{verify, Coloring, Graph, Variant, Verdict};

use crate::report::RunReport;
use crate::{Command, Failure, GadgetCommand, GenArgs, KernelizeArgs, ModulatorArg, SolveArgs, Status, Strategy};

pub fn run(command: Command, r: &mut RunReport) -> Result<Status, Failure> {
    match command {
        Command::Verify {
            variant,
            graph,
            coloring,
        } => verify_cmd(r, variant.into(), &graph, &coloring),
        Command::Oracle {
            variant,
            k,
            limit,
            out,
            graph,
        } => oracle_cmd(r, variant.into(), k, limit, out, &graph),
        Command::Recognize { graph } => recognize_cmd(r, &graph),
        Command::Modulator { class, budget, graph } => modulator_cmd(r, class.into(), budget, &graph),
        Command::Solve(args) => solve_cmd(r, args),
        Command::Kernelize(args) => kernelize_cmd(r, args),
        Command::Gadget(GadgetCommand::Encode { k, out, map, graph }) => gadget_encode(r, k, out, map, &graph),
        Command::Gadget(GadgetCommand::Validate { k, limit, graph }) => gadget_validate(r, k, limit, &graph),
        Command::Gen(args) => gen_cmd(r, args),
    }
}

fn load_graph(r: &mut RunReport, path: &Path) -> Result<Graph, Failure> {
    let text = r.read_input("graph", path)?;
    let g = Graph::parse(&text).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
    r.put("vertices", g.n());
    r.put("edges", g.m());
    r.mark("parse");
    Ok(g)
}

fn or_default(out: Option<PathBuf>, graph: &Path, ext: &str) -> PathBuf {
    out.unwrap_or_else(|| graph.with_extension(ext))
}

fn oracle_err(e: OracleError) -> Failure {
    match e {
        OracleError::TooLarge { .. } => Failure::Guard(e.to_string()),
        _ => Failure::Usage(e.to_string()),
    }
}

fn poly_err(e: PolyError) -> Failure {
    Failure::Rejected(e.to_string())
}

fn fpt_err(e: FptError) -> Failure {
    match e {
        FptError::KernelTooLarge { .. } | FptError::SearchTooLarge(_) | FptError::ModulatorTooLarge { .. } => {
            Failure::Guard(e.to_string())
        }
        FptError::Lift(_) | FptError::KernelColoringLength { .. } => Failure::Defect(e.to_string()),
        FptError::ZeroColors => Failure::Usage(e.to_string()),
        _ => Failure::Rejected(e.to_string()),
    }
}

fn interval_err(e: IntervalError) -> Failure {
    match e {
        IntervalError::Disconnected | IntervalError::TooFewEdges(_) => Failure::Rejected(e.to_string()),
        _ => Failure::Io(format!("interval file: {e}")),
    }
}

fn verify_cmd(r: &mut RunReport, variant: Variant, graph: &Path, coloring: &Path) -> Result<Status, Failure> {
    let g = load_graph(r, graph)?;
    let text = r.read_input("coloring", coloring)?;
    let c = Coloring::parse(&text, g.n()).map_err(|e| Failure::Io(format!("{}: {e}", coloring.display())))?;
    r.put("variant", variant.short());
    r.put("colors-used", c.colors_used());
    let verdict = verify(&g, &c, variant);
    r.mark("verify");
    match verdict {
        Verdict::Valid => {
            r.put("verdict", "valid");
            Ok(Status::Yes)
        }
        Verdict::Invalid { vertex } => {
            r.put("verdict", "invalid");
            r.put("failing-vertex", vertex);
            Ok(Status::No)
        }
    }
}

fn oracle_cmd(
    r: &mut RunReport,
    variant: Variant,
    k: Option<usize>,
    limit: usize,
    out: Option<PathBuf>,
    graph: &Path,
) -> Result<Status, Failure> {
    let g = load_graph(r, graph)?;
    r.put("variant", variant.short());
    let oracle = Oracle::with_limit(limit);
    let out = or_default(out, graph, "col");
    match k {
        Some(k) => {
            let found = oracle.decide(&g, variant, k).map_err(oracle_err)?;
            r.mark("search");
            r.put("k", k);
            match found {
                Some(w) => {
                    r.put("colorable", "yes");
                    r.write_artifact("coloring", &out, &w.to_text())?;
                    Ok(Status::Yes)
                }
                None => {
                    r.put("colorable", "no");
                    Ok(Status::No)
                }
            }
        }
        None => {
            let result = oracle.exact(&g, variant, None).map_err(oracle_err)?;
            r.mark("search");
            match result {
                OracleResult::Optimal { chromatic, witness } => {
                    r.put("chromatic", chromatic);
                    r.write_artifact("coloring", &out, &witness.to_text())?;
                    Ok(Status::Yes)
                }
                OracleResult::Infeasible => {
                    r.put("chromatic", "infeasible");
                    Ok(Status::No)
                }
                OracleResult::AboveBound { max_k } => {
                    r.put("chromatic", format!("above {max_k}"));
                    Ok(Status::No)
                }
            }
        }
    }
}

fn recognize_cmd(r: &mut RunReport, graph: &Path) -> Result<Status, Failure> {
    let g = load_graph(r, graph)?;
    let rec = recognize(&g);
    r.mark("recognize");
    let labels: Vec<&str> = rec.labels().iter().map(|c| c.name()).collect();
    r.put("classes", labels.join(","));
    r.put("connected", if g.is_connected() { "yes" } else { "no" });
    if let Some(b) = &rec.bipartite {
        r.put("bipartite-left", &b.left);
        r.put("bipartite-right", &b.right);
    }
    if let Some(cs) = &rec.cluster {
        let parts: Vec<String> = cs.iter().map(|c| c.to_string()).collect();
        r.put("cluster-cliques", parts.join(" "));
    }
    if let Some(p) = &rec.split {
        r.put("split-clique", &p.clique);
        r.put("split-independent", &p.independent);
    }
    if let Some(seq) = &rec.threshold {
        let steps: Vec<String> = seq
            .removals
            .iter()
            .map(|(v, s)| format!("{v}{}", if *s == ThresholdStep::Universal { 'u' } else { 'i' }))
            .collect();
        r.put("threshold-removals", steps.join(" "));
    }
    if let Some(md) = &rec.cograph {
        r.put("cograph-tree-nodes", md.nodes().len());
    }
    Ok(Status::Yes)
}

fn modulator_cmd(r: &mut RunReport, class: ResidualClass, budget: usize, graph: &Path) -> Result<Status, Failure> {
    let g = load_graph(r, graph)?;
    r.put("class", class);
    r.put("budget", budget);
    let found = minimum_modulator(&g, class, budget);
    r.mark("search");
    match found {
        Some(m) => {
            r.put("modulator", &m.deleted);
            r.put("d", m.d());
            Ok(Status::Yes)
        }
        None => {
            r.put("modulator", "none");
            Ok(Status::No)
        }
    }
}

fn resolve_modulator(
    r: &mut RunReport,
    g: &Graph,
    arg: &ModulatorArg,
    class: ResidualClass,
    budget: usize,
) -> Result<Modulator, Failure> {
    let m = match arg {
        ModulatorArg::Auto => minimum_modulator(g, class, budget)
            .ok_or_else(|| Failure::Rejected(format!("no {class} modulator with at most {budget} vertices")))?,
        ModulatorArg::Given(set) => {
            if let Some(v) = set.iter().find(|&v| v >= g.n()) {
                return Err(Failure::Usage(format!("modulator vertex {v} out of range")));
            }
            Modulator::new(g, set.clone(), class)
                .map_err(|_| Failure::Rejected(format!("removing {set} does not leave a {class} graph")))?
        }
    };
    r.put("modulator", &m.deleted);
    r.put("modulator-class", class);
    Ok(m)
}

enum Solved {
    Colored(SolveOutcome, &'static str),
    No,
}

fn run_strategy(r: &mut RunReport, g: &Graph, variant: Variant, args: &SolveArgs) -> Result<Solved, Failure> {
    let closed_only = |name: &str| {
        if variant == Variant::Closed {
            Ok(())
        } else {
            Err(Failure::Usage(format!(
                "the {name} strategy solves the closed variant only"
            )))
        }
    };
    let modulator = args.modulator.clone().unwrap_or(ModulatorArg::Auto);
    let oracle = Oracle::with_limit(args.limit);
    let outcome = match args.strategy {
        Strategy::Auto => return auto(r, g, variant, args),
        Strategy::Bipartite => {
            closed_only("bipartite")?;
            let b = bipartition(g).ok_or_else(|| Failure::Rejected("graph is not bipartite".into()))?;
            (solve_bipartite_cfcn(g, &b).map_err(poly_err)?, "bipartite")
        }
        Strategy::Split => {
            closed_only("split")?;
            let p = split_partition(g).ok_or_else(|| Failure::Rejected("graph is not split".into()))?;
            (solve_split_cfcn(g, &p).map_err(poly_err)?, "split")
        }
        Strategy::Cograph => (
            solve_cograph(g, &modular_decomposition(g), variant).map_err(poly_err)?,
            "cograph",
        ),
        Strategy::Lemma1 => {
            let m = resolve_modulator(r, g, &modulator, ResidualClass::Cluster, args.budget)?;
            (lemma1(g, &m, variant).map_err(poly_err)?, "lemma1")
        }
        Strategy::Interval => {
            let path = args
                .intervals
                .as_ref()
                .ok_or_else(|| Failure::Usage("the interval strategy needs --intervals".into()))?;
            let text = r.read_input("intervals", path)?;
            let rep = IntervalRep::parse(&text, g.n()).map_err(interval_err)?;
            let out = match variant {
                Variant::Closed => cfcn_interval(g, &rep),
                Variant::Open => cfon_interval(g, &rep),
            };
            (out.map_err(interval_err)?, "interval")
        }
        Strategy::Fpt => {
            let m = resolve_modulator(r, g, &modulator, ResidualClass::Cluster, args.budget)?;
            match args.k {
                Some(k) => {
                    r.put("k", k);
                    match solve_via_kernel(g, &m, variant, k, &oracle).map_err(fpt_err)? {
                        KernelVerdict::No => return Ok(Solved::No),
                        KernelVerdict::Yes { coloring, .. } => (SolveOutcome::new(g, variant, coloring), "fpt"),
                    }
                }
                None => (minimum_via_kernel(g, &m, variant, &oracle).map_err(fpt_err)?, "fpt"),
            }
        }
        Strategy::Threshold => {
            let m = resolve_modulator(r, g, &modulator, ResidualClass::Threshold, args.budget)?;
            (approx_threshold(g, &m, variant).map_err(fpt_err)?, "threshold")
        }
        Strategy::Oracle => (exhaustive(g, variant, &oracle)?, "oracle"),
    };
    Ok(Solved::Colored(outcome.0, outcome.1))
}

fn lemma1(g: &Graph, m: &Modulator, variant: Variant) -> Result<SolveOutcome, PolyError> {
    match variant {
        Variant::Closed => lemma1_cfcn(g, m),
        Variant::Open => lemma1_cfon(g, m),
    }
}

fn exhaustive(g: &Graph, variant: Variant, oracle: &Oracle) -> Result<SolveOutcome, Failure> {
    match oracle.exact(g, variant, None).map_err(oracle_err)? {
        OracleResult::Optimal { witness, .. } => Ok(SolveOutcome::new(g, variant, witness).exact()),
        OracleResult::Infeasible => Err(Failure::Rejected("an open neighborhood is empty".into())),
        OracleResult::AboveBound { max_k } => Err(Failure::Defect(format!("no coloring with {max_k} colors"))),
    }
}

/// Split, then bipartite (closed only), then cograph, then the smaller of the
/// cluster and threshold modulators within the budget, then exhaustive search.
fn auto(r: &mut RunReport, g: &Graph, variant: Variant, args: &SolveArgs) -> Result<Solved, Failure> {
    if variant == Variant::Open {
        if let Some(v) = g.vertices().find(|&v| g.degree(v) == 0) {
            return Err(Failure::Rejected(format!(
                "vertex {v} is isolated; no open-neighborhood coloring exists"
            )));
        }
    }
    if variant == Variant::Closed && g.m() == 0 {
        return Ok(Solved::Colored(
            SolveOutcome::new(g, variant, Coloring::uniform(g.n(), 0)),
            "edgeless",
        ));
    }
    let connected = g.is_connected();
    if variant == Variant::Closed && connected {
        if let Some(p) = split_partition(g) {
            return Ok(Solved::Colored(solve_split_cfcn(g, &p).map_err(poly_err)?, "split"));
        }
        if let Some(b) = bipartition(g) {
            return Ok(Solved::Colored(
                solve_bipartite_cfcn(g, &b).map_err(poly_err)?,
                "bipartite",
            ));
        }
    }
    let md = modular_decomposition(g);
    if connected && md.is_cograph() {
        if let Ok(out) = solve_cograph(g, &md, variant) {
            return Ok(Solved::Colored(out, "cograph"));
        }
    }
    let oracle = Oracle::with_limit(args.limit);
    let cluster = minimum_modulator(g, ResidualClass::Cluster, args.budget);
    let threshold = minimum_modulator(g, ResidualClass::Threshold, args.budget);
    let mut routes: Vec<Modulator> = cluster.into_iter().chain(threshold).collect();
    routes.sort_by_key(|m| m.d());
    for m in routes {
        let out = match m.residual {
            ResidualClass::Cluster => match minimum_via_kernel(g, &m, variant, &oracle) {
                Ok(out) => Some((out, "fpt")),
                Err(FptError::KernelTooLarge { .. }) => lemma1(g, &m, variant).ok().map(|o| (o, "lemma1")),
                Err(_) => None,
            },
            ResidualClass::Threshold => approx_threshold(g, &m, variant).ok().map(|o| (o, "threshold")),
        };
        if let Some((out, name)) = out {
            r.put("modulator", &m.deleted);
            r.put("modulator-class", m.residual);
            return Ok(Solved::Colored(out, name));
        }
    }
    if g.n() <= args.limit {
        return Ok(Solved::Colored(exhaustive(g, variant, &oracle)?, "oracle"));
    }
    Err(Failure::Guard(format!(
        "no structural route applies and {} vertices exceed the search limit of {}",
        g.n(),
        args.limit
    )))
}

fn solve_cmd(r: &mut RunReport, args: SolveArgs) -> Result<Status, Failure> {
    let g = load_graph(r, &args.graph)?;
    let variant: Variant = args.variant.into();
    r.put("variant", variant.short());
    let solved = run_strategy(r, &g, variant, &args)?;
    r.mark("solve");
    let (out, name) = match solved {
        Solved::No => {
            r.put("colorable", "no");
            return Ok(Status::No);
        }
        Solved::Colored(out, name) => (out, name),
    };
    r.put("strategy", name);
    if let Verdict::Invalid { vertex } = verify(&g, &out.coloring, variant) {
        return Err(Failure::Defect(format!(
            "{name} output fails the verifier at vertex {vertex}"
        )));
    }
    r.mark("verify");
    r.put("colors-used", out.colors_used);
    r.put("optimality", out.optimality);
    if !out.caveats.is_empty() {
        let cs: Vec<String> = out.caveats.iter().map(|c| c.to_string()).collect();
        r.put("caveats", cs.join(","));
    }
    let path = or_default(args.out, &args.graph, "col");
    r.write_artifact("coloring", &path, &out.coloring.to_text())?;
    Ok(Status::Yes)
}

fn kernelize_cmd(r: &mut RunReport, args: KernelizeArgs) -> Result<Status, Failure> {
    let g = load_graph(r, &args.graph)?;
    let variant: Variant = args.variant.into();
    r.put("variant", variant.short());
    r.put("k", args.k);
    let m = resolve_modulator(r, &g, &args.modulator, ResidualClass::Cluster, args.budget)?;
    let kernel = build_kernel(&g, &m, variant, args.k).map_err(fpt_err)?;
    let shortcut = matches!(reduce(&g, &m, variant, args.k).map_err(fpt_err)?, Reduction::Lemma1(_));
    r.mark("kernelize");
    r.put("kernel-vertices", kernel.graph.n());
    r.put("kernel-edges", kernel.graph.m());
    r.put("kernel-size-bound", kernel.size_bound());
    r.put("deleted-vertices", kernel.deleted_vertices.len());
    r.put("deleted-cliques", kernel.deleted_cliques.len());
    r.put("lemma1-shortcut", if shortcut { "yes" } else { "no" });
    let out = or_default(args.out, &args.graph, "kernel.cf");
    let map = or_default(args.map, &args.graph, "kernel.map");
    r.write_artifact("kernel", &out, &kernel.graph.to_text())?;
    r.write_artifact("map", &map, &kernel.provenance_text())?;
    Ok(Status::Yes)
}

fn hardness_err(e: HardnessError) -> Failure {
    match e {
        HardnessError::SmallK(_) => Failure::Usage(e.to_string()),
        HardnessError::TooLarge { .. } => Failure::Guard(e.to_string()),
        _ => Failure::Defect(e.to_string()),
    }
}

fn gadget_encode(
    r: &mut RunReport,
    k: usize,
    out: Option<PathBuf>,
    map: Option<PathBuf>,
    graph: &Path,
) -> Result<Status, Failure> {
    let g = load_graph(r, graph)?;
    let inst = encode(&g, k).map_err(hardness_err)?;
    r.mark("encode");
    r.put("k", k);
    r.put("gadget-vertices", inst.split.n());
    r.put("gadget-edges", inst.split.m());
    r.put("gadget-clique", inst.clique_size());
    let out = or_default(out, graph, "gadget.cf");
    let map = or_default(map, graph, "gadget.map");
    r.write_artifact("gadget", &out, &inst.split.to_text())?;
    r.write_artifact("map", &map, &inst.map_text())?;
    Ok(Status::Yes)
}

fn gadget_validate(r: &mut RunReport, k: usize, limit: usize, graph: &Path) -> Result<Status, Failure> {
    let g = load_graph(r, graph)?;
    let report = cross_validate(&g, k, &Oracle::with_limit(limit)).map_err(hardness_err)?;
    r.mark("validate");
    let yn = |b: bool| if b { "yes" } else { "no" };
    r.put("k", k);
    r.put("gadget-vertices", report.split_vertices);
    r.put("source-colorable", yn(report.source_colorable));
    r.put("gadget-colorable", yn(report.gadget_colorable));
    r.put("witness-decodes", report.decoded_ok.map_or("n/a", yn));
    r.put("equivalence", if report.agrees() { "holds" } else { "violated" });
    Ok(if report.agrees() { Status::Yes } else { Status::No })
}

fn gen_cmd(r: &mut RunReport, args: GenArgs) -> Result<Status, Failure> {
    let mut spec = GenSpec::new(args.class, args.n, args.seed)
        .with_d(args.d)
        .with_p(args.p);
    if let Some(sizes) = args.cliques {
        spec = spec.with_cliques(sizes);
        spec.connected = !args.disconnected;
    }
    if args.disconnected {
        spec = spec.disconnected();
    }
    let generated = generate(&spec).map_err(|e| Failure::Usage(e.to_string()))?;
    r.mark("generate");
    r.put("class", args.class);
    r.put("seed", args.seed);
    r.put("vertices", generated.graph.n());
    r.put("edges", generated.graph.m());
    r.put("certificate", generated.certificate.kind());
    let out = args
        .out
        .unwrap_or_else(|| PathBuf::from(format!("{}-n{}-s{}.cf", args.class, args.n, args.seed)));
    r.write_artifact("graph", &out, &generated.graph.to_text())?;
    if generated.certificate != Certificate::None {
        r.write_artifact(
            "certificate",
            &out.with_extension("cert"),
            &generated.certificate.to_text(),
        )?;
    }
    Ok(Status::Yes)
}
