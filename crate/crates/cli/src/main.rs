//! `dpflex`: check, reduce, resolve, sample and audit plane graphs from the shell.
//!
//! Exit status: 0 on success, 1 when a verification fails or an audit finds
//! a negative final charge, 2 on bad input or an exhausted budget.

mod report;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use dpflex::cover::{parse_cover, parse_req};
use dpflex::discharge::{audit, Element};
use dpflex::flex::{
    build_resolution, build_resolution_from, epsilon, satisfy_request, DistBudget, ForbiddingScope, Plan,
    ResolveOptions, Resolution, SatisfyMode, SatisfyOptions,
};
use dpflex::reducible::{
    all_matches, check_fix, check_forb, find_reducible_among, Budgets, Counterexample, Search, Verdict,
};
use dpflex::{parse_pg, Coloring, Cover, Error, FamilyKind, PlaneGraph, RcKind, ReducibleMatch, VerifyOptions};

use report::{list, Format, Report};

#[derive(Parser)]
#[command(name = "dpflex", version, about = "Flexible DP-4-coloring workbench for plane graphs")]
struct Cli {
    /// Output rendering; `structured` is line-stable `key=value` text.
    #[arg(long, global = true, value_enum, default_value = "human")]
    format: Format,

    #[command(flatten)]
    budgets: BudgetArgs,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct BudgetArgs {
    /// Most covers examined per FIX vertex or FORB set.
    #[arg(long, global = true, env = "DPFLEX_COVER_BUDGET", default_value_t = 100_000_000)]
    cover_budget: u128,
    /// Most search states per coloring search.
    #[arg(long, global = true, env = "DPFLEX_COLORING_BUDGET", default_value_t = 10_000_000)]
    coloring_budget: u64,
    /// Most outcomes kept by the exact distribution.
    #[arg(long, global = true, env = "DPFLEX_OUTCOME_BUDGET", default_value_t = 1_000_000)]
    outcome_budget: usize,
    /// Draws used when sampling replaces the exact distribution.
    #[arg(long, global = true, env = "DPFLEX_SAMPLE_COUNT", default_value_t = 1000)]
    sample_count: usize,
}

#[derive(Args)]
struct GraphArg {
    /// Plane graph in `.pg` format.
    #[arg(long)]
    graph: PathBuf,
}

#[derive(Args)]
struct CoverArg {
    /// Cover in `.cover` format; the identity 4-cover when absent.
    #[arg(long)]
    cover: Option<PathBuf>,
}

#[derive(Args)]
struct ResolveArgs {
    /// Take the first block from this configuration instead of the priority order.
    #[arg(long, value_parser = parse_kind)]
    first: Option<RcKind>,
    /// Graph in which FORB decides forbidding sets.
    #[arg(long, value_enum, default_value = "residual")]
    scope: Scope,
}

#[derive(Clone, Copy, ValueEnum)]
enum Scope {
    Residual,
    Original,
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Canonical,
    All,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a graph and test it for 4-cycles and intersecting triangles.
    Check {
        #[command(flatten)]
        graph: GraphArg,
    },
    /// Locate a reducible configuration and verify it.
    FindReducible {
        #[command(flatten)]
        graph: GraphArg,
        /// Only these configurations (e.g. `RC2,RC9`).
        #[arg(long, value_delimiter = ',', value_parser = parse_kind)]
        kind: Vec<RcKind>,
        /// List every occurrence instead of verifying the first.
        #[arg(long)]
        all: bool,
    },
    /// Run FIX and FORB on a located configuration or an explicit block.
    Verify {
        #[command(flatten)]
        graph: GraphArg,
        /// Verify the first occurrence of this configuration.
        #[arg(long, value_parser = parse_kind, conflicts_with = "block", required_unless_present = "block")]
        kind: Option<RcKind>,
        /// Block vertices, comma-separated.
        #[arg(long, value_delimiter = ',')]
        block: Vec<usize>,
        /// Boundary vertices, comma-separated.
        #[arg(long, value_delimiter = ',', requires = "block")]
        boundary: Vec<usize>,
        #[arg(long, value_enum, default_value = "canonical")]
        family: Family,
        /// Enumerate covers on the whole block without peeling.
        #[arg(long)]
        no_peel: bool,
    },
    /// Build a resolution and report the fixation bound.
    Resolve {
        #[command(flatten)]
        graph: GraphArg,
        #[command(flatten)]
        cover: CoverArg,
        #[command(flatten)]
        resolve: ResolveArgs,
    },
    /// Draw colorings from the recursive distribution.
    Sample {
        #[command(flatten)]
        graph: GraphArg,
        #[command(flatten)]
        cover: CoverArg,
        #[command(flatten)]
        resolve: ResolveArgs,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Number of draws; `--sample-count` when absent.
        #[arg(long)]
        n: Option<usize>,
    },
    /// Find a coloring worth at least epsilon of a weighted request.
    Satisfy {
        #[command(flatten)]
        graph: GraphArg,
        #[command(flatten)]
        cover: CoverArg,
        #[command(flatten)]
        resolve: ResolveArgs,
        /// Request in `.req` format.
        #[arg(long)]
        request: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Apply the discharging rules and audit the final charges.
    Discharge {
        #[command(flatten)]
        graph: GraphArg,
        /// Append the transfer log as `transfer` lines.
        #[arg(long)]
        log: bool,
    },
    /// List every coloring of a cover.
    Enumerate {
        #[command(flatten)]
        graph: GraphArg,
        #[command(flatten)]
        cover: CoverArg,
        /// Print at most this many colorings.
        #[arg(long)]
        limit: Option<usize>,
    },
}

fn parse_kind(s: &str) -> Result<RcKind, String> {
    RcKind::parse(s).ok_or_else(|| format!("unknown configuration {s:?}, expected RC1 to RC9"))
}

/// An input or budget error, reported with exit status 2.
struct Failure(String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(e.to_string())
    }
}

type Outcome = Result<(Report, u8), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((report, status)) => {
            print!("{}", report.render(cli.format));
            ExitCode::from(status)
        }
        Err(Failure(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure(format!("{}: {e}", path.display())))
}

fn load_graph(arg: &GraphArg) -> Result<PlaneGraph, Failure> {
    parse_pg(&read(&arg.graph)?).map_err(|e| Failure(format!("{}: {e}", arg.graph.display())))
}

fn load_cover(arg: &CoverArg, g: &PlaneGraph) -> Result<Cover, Failure> {
    match &arg.cover {
        Some(p) => parse_cover(&read(p)?, g.graph()).map_err(|e| Failure(format!("{}: {e}", p.display()))),
        None => Ok(Cover::identity(g.graph(), 4)),
    }
}

fn verify_options(b: &BudgetArgs) -> VerifyOptions {
    VerifyOptions {
        budgets: Budgets { covers: b.cover_budget, coloring_states: b.coloring_budget, ..Budgets::default() },
        ..VerifyOptions::default()
    }
}

fn dist_budget(b: &BudgetArgs) -> DistBudget {
    DistBudget { outcomes: b.outcome_budget, states: b.coloring_budget }
}

fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Check { graph } => check(graph),
        Command::FindReducible { graph, kind, all } => find(cli, graph, kind, *all),
        Command::Verify { graph, kind, block, boundary, family, no_peel } => {
            let g = load_graph(graph)?;
            let mut opts = verify_options(&cli.budgets);
            opts.family = match family {
                Family::Canonical => FamilyKind::Canonical,
                Family::All => FamilyKind::All,
            };
            opts.peel = !no_peel;
            let m = match kind {
                Some(k) => match find_reducible_among(&g, &[*k])? {
                    Search::Found(m) => m,
                    Search::NotFound(_) => return Err(Failure(format!("no {k} in the graph"))),
                },
                None => ReducibleMatch::new(RcKind::Rc1, vec![], block.iter().copied(), boundary.iter().copied()),
            };
            let mut r = Report::default();
            r.field("command", "verify");
            if kind.is_some() {
                r.field("kind", m.kind);
            }
            let ok = verify_into(&mut r, &g, &m, &opts)?;
            Ok((r, if ok { 0 } else { 1 }))
        }
        Command::Resolve { graph, cover, resolve: ra } => {
            let g = load_graph(graph)?;
            let cover = load_cover(cover, &g)?;
            let mut r = Report::default();
            r.field("command", "resolve");
            let Some(res) = resolution_into(&mut r, cli, &g, ra)? else { return Ok((r, 1)) };
            r.rational("epsilon", &epsilon(4, res.b));
            let plan = Plan::new(&g, &cover, &res, cli.budgets.coloring_budget)?;
            match plan.exact(cli.budgets.outcome_budget, &mut |_, _| Ok(())) {
                Ok(d) => {
                    r.field("outcomes", d.len());
                    if let Some(fx) = d.min_fixation_probability() {
                        r.rational("min_fixation", &fx.probability);
                        r.field("min_fixation_at", format!("{}:{}", fx.vertex, fx.color));
                        r.field("bound_holds", fx.probability >= epsilon(4, res.b));
                    }
                }
                Err(Error::BudgetExceeded { needed, limit, .. }) => {
                    r.field("min_fixation", format!("unavailable (support {needed} > {limit})"));
                }
                Err(e) => return Err(e.into()),
            }
            Ok((r, 0))
        }
        Command::Sample { graph, cover, resolve: ra, seed, n } => {
            let g = load_graph(graph)?;
            let cover = load_cover(cover, &g)?;
            let mut r = Report::default();
            r.field("command", "sample").field("seed", seed);
            let Some(res) = resolution_into(&mut r, cli, &g, ra)? else { return Ok((r, 1)) };
            let plan = Plan::new(&g, &cover, &res, cli.budgets.coloring_budget)?;
            let n = n.unwrap_or(cli.budgets.sample_count);
            r.field("draws", n);
            for i in 0..n {
                let phi = plan.sample_seeded(*seed, i as u64)?;
                r.record("sample", vec![("index", i.to_string()), ("coloring", coloring(&phi))]);
            }
            Ok((r, 0))
        }
        Command::Satisfy { graph, cover, resolve: ra, request, seed } => {
            let g = load_graph(graph)?;
            let cover = load_cover(cover, &g)?;
            let w = parse_req(&read(request)?, &cover).map_err(|e| Failure(format!("{}: {e}", request.display())))?;
            let mut r = Report::default();
            r.field("command", "satisfy");
            let Some(res) = resolution_into(&mut r, cli, &g, ra)? else { return Ok((r, 1)) };
            let opts = SatisfyOptions {
                budget: dist_budget(&cli.budgets),
                draws: cli.budgets.sample_count,
                seed: *seed,
                ..SatisfyOptions::default()
            };
            let s = satisfy_request(&g, &cover, &res, &w, &opts)?;
            match s.mode {
                SatisfyMode::Exact => r.field("mode", "exact"),
                SatisfyMode::Sampled { draws } => r.field("mode", format!("sampled({draws})")),
            };
            r.rational("epsilon", &s.epsilon);
            r.rational("value", &s.value);
            r.rational("total", &s.total);
            r.rational("bound", &(&s.epsilon * &s.total));
            if let Some(mean) = &s.expectation {
                r.rational("expectation", mean);
            }
            r.field("bound_holds", s.meets_bound());
            r.field("coloring", coloring(&s.coloring));
            Ok((r, if s.meets_bound() { 0 } else { 1 }))
        }
        Command::Discharge { graph, log } => discharge(graph, *log),
        Command::Enumerate { graph, cover, limit } => {
            let g = load_graph(graph)?;
            let cover = load_cover(cover, &g)?;
            let all = cover.enumerate_colorings(cli.budgets.coloring_budget)?;
            let mut r = Report::default();
            r.field("command", "enumerate").field("colorings", all.len());
            for phi in all.iter().take(limit.unwrap_or(usize::MAX)) {
                r.record("coloring", vec![("colors", coloring(phi))]);
            }
            Ok((r, 0))
        }
    }
}

fn coloring(phi: &Coloring) -> String {
    list(phi.0.iter())
}

fn check(arg: &GraphArg) -> Outcome {
    let g = load_graph(arg)?;
    let mut r = Report::default();
    r.field("command", "check")
        .field("vertices", g.n())
        .field("edges", g.edge_count())
        .field("faces", g.faces().len())
        .field("components", g.component_count());
    let lengths: Vec<usize> = g.faces().iter().map(|f| f.len()).collect();
    r.field("face_lengths", list(lengths));
    r.field("min_degree", (0..g.n()).map(|v| g.degree(v)).min().map_or("-".into(), |d| d.to_string()));
    let class = g.class_report();
    r.field("in_class", class.in_class());
    if let Some(c) = class.four_cycle {
        r.field("four_cycle", list(c));
    }
    if let Some((s, t)) = class.intersecting_triangles {
        r.field("intersecting_triangles", format!("{};{}", list(s), list(t)));
    }
    Ok((r, if class.in_class() { 0 } else { 1 }))
}

fn match_fields(m: &ReducibleMatch) -> Vec<(&'static str, String)> {
    vec![
        ("kind", m.kind.to_string()),
        ("anchor", list(&m.anchor)),
        ("block", list(&m.block)),
        ("boundary", list(&m.boundary)),
        ("size", m.block_size().to_string()),
    ]
}

fn find(cli: &Cli, arg: &GraphArg, kinds: &[RcKind], all: bool) -> Outcome {
    let g = load_graph(arg)?;
    let kinds: Vec<RcKind> = if kinds.is_empty() { RcKind::ALL.to_vec() } else { kinds.to_vec() };
    let mut r = Report::default();
    r.field("command", "find-reducible");
    if all {
        let mut total = 0;
        for &k in &kinds {
            for m in all_matches(&g, k)? {
                total += 1;
                r.record("match", match_fields(&m));
            }
        }
        r.field("matches", total);
        return Ok((r, 0));
    }
    match find_reducible_among(&g, &kinds)? {
        Search::Found(m) => {
            r.field("found", true);
            r.field("kind", m.kind).field("anchor", list(&m.anchor));
            let ok = verify_into(&mut r, &g, &m, &verify_options(&cli.budgets))?;
            Ok((r, if ok { 0 } else { 1 }))
        }
        Search::NotFound(scan) => {
            r.field("found", false);
            for (k, n) in scan.scanned {
                r.record("scanned", vec![("kind", k.to_string()), ("occurrences", n.to_string())]);
            }
            Ok((r, 0))
        }
    }
}

fn verify_into(r: &mut Report, g: &PlaneGraph, m: &ReducibleMatch, opts: &VerifyOptions) -> Result<bool, Failure> {
    let fix = check_fix(g, &m.block, &m.boundary, opts)?;
    let forb = check_forb(g, &m.block, &m.boundary, opts)?;
    let sf = dpflex::reducible::size_function(g, &m.block, &m.boundary, opts.k);
    r.field("block", list(&m.block))
        .field("boundary", list(&m.boundary))
        .field("size", m.block_size())
        .field("list_sizes", list(sf.sizes))
        .field("family", opts.family.name())
        .field("peel", opts.peel);
    let clause = |r: &mut Report, name: &str, v: &Verdict| {
        r.record(
            name,
            vec![
                ("holds", v.holds.to_string()),
                ("cases", v.cases.to_string()),
                ("skipped", v.skipped.to_string()),
                ("covers", v.covers_checked.to_string()),
            ],
        );
    };
    clause(r, "fix", &fix);
    clause(r, "forb", &forb);
    let ok = fix.holds && forb.holds;
    r.field("verified", ok);
    if let Some(ce) = fix.counterexample.as_ref().or(forb.counterexample.as_ref()) {
        counterexample_into(r, ce);
    }
    Ok(ok)
}

fn counterexample_into(r: &mut Report, ce: &Counterexample) {
    r.field("counterexample", ce.describe());
    if let Some(text) = ce.cover_text() {
        r.block("cover", &text);
    }
}

fn resolution_into(r: &mut Report, cli: &Cli, g: &PlaneGraph, ra: &ResolveArgs) -> Result<Option<Resolution>, Failure> {
    let opts = ResolveOptions {
        verify: verify_options(&cli.budgets),
        scope: match ra.scope {
            Scope::Residual => ForbiddingScope::Residual,
            Scope::Original => ForbiddingScope::Original,
        },
    };
    let built = match ra.first {
        Some(k) => match find_reducible_among(g, &[k])? {
            Search::Found(m) => build_resolution_from(g, &m, &opts),
            Search::NotFound(_) => return Err(Failure(format!("no {k} in the graph"))),
        },
        None => build_resolution(g, &opts),
    };
    let res = match built {
        Ok(res) => res,
        Err(e @ (Error::Stuck { .. } | Error::VerificationFailed { .. })) => {
            r.field("resolved", false).field("reason", e);
            return Ok(None);
        }
        Err(e) => return Err(e.into()),
    };
    r.field("resolved", true);
    for (i, s) in res.steps.iter().enumerate() {
        r.record(
            "step",
            vec![
                ("index", i.to_string()),
                ("kind", s.label()),
                ("block", list(&s.block)),
                ("boundary", list(&s.boundary)),
                ("removed", list(s.removed())),
                ("covers", s.covers_checked.to_string()),
            ],
        );
    }
    r.field("m", res.m()).field("b", res.b);
    Ok(Some(res))
}

fn discharge(arg: &GraphArg, log: bool) -> Outcome {
    let g = load_graph(arg)?;
    let a = audit(&g)?;
    let mut r = Report::default();
    r.field("command", "discharge");
    for v in &a.vertices {
        r.record(
            "vertex",
            vec![
                ("id", v.vertex.to_string()),
                ("class", v.class.clone()),
                ("initial", v.initial.to_string()),
                ("sent", v.sent.to_string()),
                ("final", v.final_charge.to_string()),
            ],
        );
    }
    for f in &a.faces {
        r.record(
            "face",
            vec![
                ("id", f.face.to_string()),
                ("boundary", list(&f.boundary)),
                ("case", f.case.name().replace(' ', "_")),
                ("initial", f.initial.to_string()),
                ("received", f.received.to_string()),
                ("final", f.final_charge.to_string()),
                ("k", list(&f.k_set)),
            ],
        );
    }
    if log {
        for t in &a.ledger.transfers {
            r.record(
                "transfer",
                vec![
                    ("from", format!("v{}", t.from)),
                    ("to", format!("f{}", t.to)),
                    ("amount", t.amount.to_string()),
                    ("rule", t.rule.to_string()),
                ],
            );
        }
    }
    r.charge("total", a.ledger.total());
    r.field("conserved", a.conserved());
    let negatives: Vec<String> = a
        .negatives
        .iter()
        .map(|e| match e {
            Element::Vertex(v) => format!("v{v}"),
            Element::Face(f) => format!("f{f}"),
        })
        .collect();
    r.field("negatives", list(&negatives));
    r.field("lemma_grade", a.lemma_grade());
    for w in &a.warnings {
        r.field("warning", w);
    }
    let status = if a.lemma_grade() && !a.negatives.is_empty() { 1 } else { 0 };
    Ok((r, status))
}
