//! `secnum`: sectional numbers and coincidence checks on finite spaces.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use secnum_core::coincidence::{
    check_cp_implies_fpp, check_key_lemma, check_main_theorem, check_remark, has_fpp, Status,
    TheoremReport,
};
use secnum_core::format::{write_space, Document};
use secnum_core::harness::census::{census_spaces, DEFAULT_CENSUS_POINTS, MAX_CENSUS_POINTS};
use secnum_core::harness::{run_suite, SuiteConfig};
use secnum_core::homotopy::cat;
use secnum_core::sectional::{relative_sec, relative_secat, relative_tc_bounds, sec, secat, Route};
use secnum_core::{CMap, Error, Limits, Space};

const EXIT_VIOLATION: u8 = 2;
const EXIT_INCONCLUSIVE: u8 = 3;
const EXIT_INPUT: u8 = 4;

#[derive(Parser)]
#[command(
    name = "secnum",
    version,
    about = "Sectional numbers, LS-category and coincidence on finite spaces"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute an invariant of a space or a map.
    Compute {
        #[arg(long)]
        input: PathBuf,
        /// Map file; required for sec and secat.
        #[arg(long)]
        map: Option<PathBuf>,
        #[arg(long, value_enum)]
        invariant: Invariant,
    },
    /// Relative sectional invariants of p along g.
    Relative {
        #[arg(long)]
        p: PathBuf,
        #[arg(long)]
        g: PathBuf,
        #[arg(long, value_enum)]
        invariant: RelativeInvariant,
        #[arg(long, value_enum, default_value = "pullback")]
        route: RouteArg,
        /// Spaces shared by both map files.
        #[arg(long)]
        input: Option<PathBuf>,
    },
    /// Check a theorem on one triple (X, Y; g).
    Check {
        #[arg(long, value_enum)]
        claim: ClaimArg,
        #[arg(long)]
        x: PathBuf,
        #[arg(long)]
        y: PathBuf,
        #[arg(long)]
        g: PathBuf,
        #[arg(long, default_value_t = 2)]
        k: usize,
    },
    /// List all spaces up to homeomorphism as a space document.
    Census {
        #[arg(long, default_value_t = DEFAULT_CENSUS_POINTS)]
        max_points: usize,
        #[arg(long)]
        posets_only: bool,
        /// Allow five-point censuses.
        #[arg(long)]
        extended: bool,
    },
    /// Run the property suite and write a JSON report.
    Suite {
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
        /// Worker threads; overrides the config.
        #[arg(long)]
        threads: Option<usize>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Invariant {
    Sec,
    Secat,
    Cat,
    Fpp,
}

#[derive(Clone, Copy, ValueEnum)]
enum RelativeInvariant {
    Sec,
    Secat,
    TcBounds,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum RouteArg {
    Pullback,
    Lift,
    Both,
}

#[derive(Clone, Copy, ValueEnum)]
enum ClaimArg {
    Remark,
    KeyLemma,
    MainTheorem,
    CpImpliesFpp,
}

enum Failure {
    Input(String),
    Inconclusive(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_budget() {
            Failure::Inconclusive(e.to_string())
        } else {
            Failure::Input(e.to_string())
        }
    }
}

type Outcome = Result<u8, Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

/// Adds the blocks of `path` to `doc`. A file may repeat a space already in
/// `doc` if the definitions agree, or refer to it without redefining it.
fn load(doc: &mut Document, path: &Path) -> Result<(), Failure> {
    let text = read(path)?;
    let located = |e: Error| Failure::Input(format!("{}: {e}", path.display()));
    let other = match Document::parse(&text) {
        Ok(d) => d,
        Err(standalone) => {
            let mut joined = doc.clone();
            return match joined.extend_from_str(&text) {
                Ok(()) => {
                    *doc = joined;
                    Ok(())
                }
                Err(_) => Err(located(standalone)),
            };
        }
    };
    for (name, space) in other.spaces() {
        match doc.space(name) {
            Some(s) if **s == **space => {}
            Some(_) => {
                return Err(Failure::Input(format!(
                    "{}: space `{name}` conflicts with an earlier definition",
                    path.display()
                )))
            }
            None => doc.add_space(name, space.clone()).map_err(located)?,
        }
    }
    for (name, map) in other.maps() {
        if doc.map(name) != Some(map) {
            doc.add_map(name, map.clone()).map_err(located)?;
        }
    }
    Ok(())
}

fn first_space(doc: &Document, path: &Path) -> Result<Space, Failure> {
    doc.spaces()
        .first()
        .map(|(_, s)| s.clone())
        .ok_or_else(|| Failure::Input(format!("{}: no space defined", path.display())))
}

fn last_map(doc: &Document, path: &Path) -> Result<CMap, Failure> {
    doc.last_map()
        .cloned()
        .ok_or_else(|| Failure::Input(format!("{}: no map defined", path.display())))
}

fn print(v: &Value) {
    println!(
        "{}",
        serde_json::to_string_pretty(v).expect("values serialize")
    );
}

fn compute(input: &Path, map: Option<&Path>, invariant: Invariant, limits: &Limits) -> Outcome {
    let mut doc = Document::new();
    load(&mut doc, input)?;
    let budget = limits.new_budget();
    let out = match invariant {
        Invariant::Sec | Invariant::Secat => {
            let path =
                map.ok_or_else(|| Failure::Input("--map is required for sec and secat".into()))?;
            load(&mut doc, path)?;
            let f = last_map(&doc, path)?;
            let o = if matches!(invariant, Invariant::Sec) {
                sec(&f, &budget)?
            } else {
                secat(&f, &budget)?
            };
            json!({ "invariant": name(invariant), "value": o.value, "result": o.to_json() })
        }
        Invariant::Cat => {
            let x = first_space(&doc, input)?;
            let o = cat(&x, &budget)?;
            json!({
                "invariant": "cat",
                "value": o.value,
                "degenerate": o.degenerate,
                "cover": o.cover.iter().map(|u| u.to_vec()).collect::<Vec<_>>(),
            })
        }
        Invariant::Fpp => {
            let x = first_space(&doc, input)?;
            let v = has_fpp(&x, &budget)?;
            if !v.exhaustive {
                return Err(Failure::Inconclusive(
                    "budget exhausted before the search finished".into(),
                ));
            }
            json!({
                "invariant": "fpp",
                "holds": v.holds,
                "exhaustive": v.exhaustive,
                "witness": v.witness.as_ref().map(|w| w.assignment().to_vec()),
            })
        }
    };
    print(&out);
    Ok(0)
}

fn name(i: Invariant) -> &'static str {
    match i {
        Invariant::Sec => "sec",
        Invariant::Secat => "secat",
        Invariant::Cat => "cat",
        Invariant::Fpp => "fpp",
    }
}

fn relative(
    p_path: &Path,
    g_path: &Path,
    input: Option<&Path>,
    invariant: RelativeInvariant,
    route: RouteArg,
    limits: &Limits,
) -> Outcome {
    let mut base = Document::new();
    if let Some(i) = input {
        load(&mut base, i)?;
    }
    let mut pd = base.clone();
    load(&mut pd, p_path)?;
    let mut gd = base;
    load(&mut gd, g_path)?;
    let p = last_map(&pd, p_path)?;
    let g = last_map(&gd, g_path)?;
    let budget = limits.new_budget();
    match invariant {
        RelativeInvariant::Sec => {
            let mut results = serde_json::Map::new();
            let routes: &[(Route, &str)] = match route {
                RouteArg::Pullback => &[(Route::Pullback, "pullback")],
                RouteArg::Lift => &[(Route::Lift, "lift")],
                RouteArg::Both => &[(Route::Pullback, "pullback"), (Route::Lift, "lift")],
            };
            let mut values = Vec::new();
            for &(r, label) in routes {
                let o = relative_sec(&p, &g, r, limits, &budget)?;
                values.push(o.value);
                results.insert(label.into(), o.to_json());
            }
            let agree = values.windows(2).all(|w| w[0] == w[1]);
            print(&json!({
                "invariant": "sec_g",
                "value": values[0],
                "routes_agree": agree,
                "routes": results,
            }));
            Ok(if agree { 0 } else { EXIT_VIOLATION })
        }
        RelativeInvariant::Secat => {
            let o = relative_secat(&p, &g, limits, &budget)?;
            print(&json!({ "invariant": "secat_g", "value": o.value, "result": o.to_json() }));
            Ok(0)
        }
        RelativeInvariant::TcBounds => {
            let t = relative_tc_bounds(&p, &g, limits, &budget)?;
            print(&json!({ "invariant": "tc_g", "bounds": t }));
            Ok(0)
        }
    }
}

fn check(claim: ClaimArg, x: &Path, y: &Path, g_path: &Path, k: usize, limits: &Limits) -> Outcome {
    let mut doc = Document::new();
    load(&mut doc, x)?;
    let xs = first_space(&doc, x)?;
    load(&mut doc, y)?;
    let mut yd = Document::new();
    load(&mut yd, y)?;
    let ys = first_space(&yd, y)?;
    load(&mut doc, g_path)?;
    let g = last_map(&doc, g_path)?;
    if **g.source() != *xs || **g.target() != *ys {
        return Err(Failure::Input(
            "g must map the space of --x to the space of --y".into(),
        ));
    }
    let budget = limits.new_budget();
    let report: TheoremReport = match claim {
        ClaimArg::Remark => check_remark(&g, limits, &budget)?,
        ClaimArg::KeyLemma => check_key_lemma(&g, k, limits, &budget)?,
        ClaimArg::MainTheorem => check_main_theorem(&g, limits, &budget)?,
        ClaimArg::CpImpliesFpp => check_cp_implies_fpp(&g, &budget)?,
    };
    print(&serde_json::to_value(&report).expect("reports serialize"));
    let statuses: Vec<Status> = report.conclusions.iter().map(|c| c.status).collect();
    Ok(if statuses.contains(&Status::Violated) {
        EXIT_VIOLATION
    } else if statuses.contains(&Status::Inconclusive) {
        EXIT_INCONCLUSIVE
    } else {
        0
    })
}

fn census(max_points: usize, posets_only: bool, extended: bool) -> Outcome {
    let cap = if extended {
        MAX_CENSUS_POINTS
    } else {
        DEFAULT_CENSUS_POINTS
    };
    if max_points > cap {
        return Err(Failure::Input(format!(
            "--max-points {max_points} exceeds {cap}{}",
            if extended {
                ""
            } else {
                " (use --extended for 5)"
            }
        )));
    }
    let kind = if posets_only { "posets" } else { "spaces" };
    let mut out = String::new();
    for n in 0..=max_points {
        let spaces = census_spaces(n, posets_only)?;
        out.push_str(&format!("# {} {kind} on {n} points\n", spaces.len()));
        for (i, s) in spaces.iter().enumerate() {
            out.push_str(&write_space(&format!("c{n}_{i}"), s));
        }
    }
    print!("{out}");
    Ok(0)
}

fn suite(config: Option<&Path>, seed: u64, out: &Path, threads: Option<usize>) -> Outcome {
    let (mut cfg, explicit_budget) = match config {
        Some(path) => {
            let text = read(path)?;
            let raw: Value = serde_json::from_str(&text)
                .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
            let explicit = raw.get("budget").is_some();
            (SuiteConfig::from_json(&text)?, explicit)
        }
        None => (SuiteConfig::default(), false),
    };
    cfg.seed = seed;
    cfg.out = Some(out.to_owned());
    if let Some(t) = threads {
        cfg.threads = t;
    }
    if !explicit_budget {
        cfg.budget = Limits::from_env().budget;
    }
    cfg.validate()?;
    let run = run_suite(&cfg)?;
    run.write(out)?;
    let r = &run.report;
    eprintln!(
        "{} checks: {} verified, {} hypothesis-not-met, {} violated, {} inconclusive",
        r.totals.instances,
        r.totals.verified,
        r.totals.hypothesis_not_met,
        r.totals.violated,
        r.totals.inconclusive
    );
    for v in &r.violations {
        eprintln!("VIOLATED {}: {}", v.claim, v.detail);
    }
    Ok(r.exit_code() as u8)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let limits = Limits::from_env();
    let result = match &cli.command {
        Command::Compute {
            input,
            map,
            invariant,
        } => compute(input, map.as_deref(), *invariant, &limits),
        Command::Relative {
            p,
            g,
            invariant,
            route,
            input,
        } => relative(p, g, input.as_deref(), *invariant, *route, &limits),
        Command::Check { claim, x, y, g, k } => check(*claim, x, y, g, *k, &limits),
        Command::Census {
            max_points,
            posets_only,
            extended,
        } => census(*max_points, *posets_only, *extended),
        Command::Suite {
            config,
            seed,
            out,
            threads,
        } => suite(config.as_deref(), *seed, out, *threads),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_INPUT)
        }
        Err(Failure::Inconclusive(msg)) => {
            eprintln!("inconclusive: {msg}");
            ExitCode::from(EXIT_INCONCLUSIVE)
        }
    }
}
