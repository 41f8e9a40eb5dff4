//! `locgpd`: command-line driver for the finite local groupoid workbench.
//!
//! Every command prints a report `{ "config": …, "result": … }`. Exit
//! status is 0 when the checked property holds (or the command simply
//! answers), 1 when it fails, and 2 on usage or input errors.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use locgpd::assoc::{assoc_order_with, removed_pairs, restrict_to_n_associative};
use locgpd::complexes::{certify_equivalence, verify_detailed};
use locgpd::flows::{associator_witness, LadderConfig};
use locgpd::geometry::{
    cover_witness, export_cover_grid, export_tetrahedron, monodromy_lattice, quad_check,
    quad_check_windowed, tetrahedron_witness, CoverConfig, Lambda, V2,
};
use locgpd::groupoid::{cyclic, interval_group, pair_restriction, path_edges, validate};
use locgpd::homotopy::{ac_vs_pi1, pi1_json, pi1_presentation, simplicial_monodromy_ab};
use locgpd::io::{read_table, to_json, write_table};
use locgpd::lace::{emit_svg, lace_report};
use locgpd::nerve::{build_nerve, check_simplicial_identities, horn_check};
use locgpd::words::{
    ac_build, associators, completion_kernel, random_equivalent_pairs, AcLimits, AcOutcome,
};
use locgpd::{Bounds, FiniteLocalGroupoid, ObjIx, Word};

#[derive(Debug, Parser, Serialize)]
#[command(name = "locgpd", version, about = "Finite local groupoid workbench")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Seed for sampled checks; LOCGPD_SEED takes precedence.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum Format {
    Json,
    Text,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
enum Command {
    /// Check the local groupoid axioms of a table.
    Validate {
        table: PathBuf,
        /// Also require the inverse domain to be closed under products.
        #[arg(long)]
        strict: bool,
    },
    /// Shrink the multiplication domain until the table is n-associative.
    Restrict {
        table: PathBuf,
        #[arg(short, default_value_t = 3)]
        n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build the associative completion.
    Ac {
        table: PathBuf,
        #[command(flatten)]
        limits: LimitArgs,
    },
    /// Associators at each object and the kernel of the completion map.
    AssocSet {
        table: PathBuf,
        #[command(flatten)]
        limits: LimitArgs,
        #[command(flatten)]
        bounds: BoundArgs,
    },
    /// Check n-associativity over all well-formed tuples.
    AssocOrder {
        table: PathBuf,
        #[arg(short, default_value_t = 3)]
        n: usize,
        /// Give up beyond this many tuples.
        #[arg(long, default_value_t = 50_000_000)]
        max_tuples: u128,
    },
    /// Nerve levels, simplicial identities and horn filling.
    Nerve {
        table: PathBuf,
        #[arg(long, default_value_t = 3)]
        dim: usize,
        #[arg(long, default_value_t = 3)]
        horn_dim: usize,
        #[arg(long, default_value_t = 1_000_000)]
        max_horns: usize,
        /// Fail unless every horn fills.
        #[arg(long)]
        require_kan: bool,
    },
    /// Presentation of the edge-path group of the nerve.
    Pi1 {
        table: PathBuf,
        #[arg(long)]
        base: Option<String>,
    },
    /// Compare the completion's vertex group with the nerve's edge-path group.
    AcVsPi1 {
        table: PathBuf,
        #[command(flatten)]
        limits: LimitArgs,
    },
    /// Abelianized simplicial monodromy at a basepoint.
    Smon {
        table: PathBuf,
        #[arg(long)]
        base: Option<String>,
    },
    /// Certify word equivalences by good complexes.
    Certify {
        table: PathBuf,
        /// Comma-separated arrow ids.
        #[arg(long, requires = "w2")]
        w1: Option<String>,
        #[arg(long, requires = "w1")]
        w2: Option<String>,
        /// Certify this many seeded random equivalent pairs instead.
        #[arg(long, conflicts_with = "w1")]
        random: Option<usize>,
        #[command(flatten)]
        bounds: BoundArgs,
    },
    /// Area groupoids over spheres.
    Sphere {
        #[command(subcommand)]
        which: SphereCmd,
    },
    /// The cover of the punctured plane.
    Cover {
        #[command(subcommand)]
        which: CoverCmd,
    },
    /// The ladder local group.
    Ladder {
        #[command(subcommand)]
        which: LadderCmd,
    },
    /// Edge sequences on the subdivided triangle.
    Lace {
        #[arg(long)]
        k: usize,
        /// Write one SVG frame per prefix here.
        #[arg(long)]
        svg: Option<PathBuf>,
        /// Report only the verifier outcomes.
        #[arg(long)]
        verify_only: bool,
    },
    /// Write a finite sample of a continuum example as a table.
    ExportFinite {
        #[arg(value_enum)]
        which: ExportKind,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write a built-in example table.
    Example {
        #[arg(value_enum)]
        name: ExampleName,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Args, Serialize)]
struct LimitArgs {
    /// Coset enumeration cap.
    #[arg(long, default_value_t = 200_000)]
    coset_limit: usize,
    /// Word length cap for associator searches.
    #[arg(long, default_value_t = 8)]
    len_limit: usize,
}

impl From<&LimitArgs> for AcLimits {
    fn from(a: &LimitArgs) -> Self {
        AcLimits {
            coset_limit: a.coset_limit,
            len_limit: a.len_limit,
        }
    }
}

#[derive(Debug, Args, Serialize)]
struct BoundArgs {
    #[arg(long, default_value_t = 12)]
    max_len: usize,
    #[arg(long, default_value_t = 1_000_000)]
    max_steps: usize,
}

impl From<&BoundArgs> for Bounds {
    fn from(b: &BoundArgs) -> Self {
        Bounds {
            max_len: b.max_len,
            max_steps: b.max_steps,
        }
    }
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
enum SphereCmd {
    /// The six-arrow word around the inscribed tetrahedron.
    Tetra {
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// The quadrangle identity on random admissible triples.
    QuadCheck {
        /// Twist parameter; omit for the plain sphere.
        #[arg(long)]
        lambda: Option<Lambda>,
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        /// Use the uncapped second window π/|λ|.
        #[arg(long)]
        literal_window: bool,
    },
    /// The period lattice 4π(ℤ + λℤ).
    Lattice {
        #[arg(long)]
        lambda: Lambda,
        #[arg(long, default_value_t = 10_000)]
        n_max: u64,
        /// Gaps below this count as evidence of non-discreteness.
        #[arg(long, default_value_t = 4e-3 * std::f64::consts::PI)]
        threshold: f64,
    },
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
enum CoverCmd {
    /// A triple whose two bracketings land on different sheets.
    Witness {
        #[arg(long, default_value_t = 1.0)]
        hole_x: f64,
        #[arg(long, default_value_t = 0.0)]
        hole_y: f64,
        #[arg(long, default_value_t = 0.05)]
        hole_radius: f64,
        #[arg(long, default_value_t = 0.75)]
        ball: f64,
    },
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
enum LadderCmd {
    /// Associator of the rung-n loop word.
    Witness {
        #[arg(short)]
        n: i64,
        #[arg(long, default_value_t = 1e-4)]
        step: f64,
        #[arg(long, default_value_t = 0.1)]
        radius: f64,
        #[arg(long, default_value_t = 1e-8)]
        calibration_tol: f64,
        /// Allowed distance from the expected value.
        #[arg(long, default_value_t = 1e-4)]
        tol: f64,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
enum ExportKind {
    Tetra,
    Cover,
    CoverSymmetric,
}

#[derive(Debug, Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
enum ExampleName {
    Z2,
    Z3,
    Interval1,
    Interval2,
    Interval1Mod5,
    Tree4,
    Path4,
    Cycle5,
}

struct Outcome {
    ok: bool,
    result: Value,
}

fn answer(result: Value) -> Outcome {
    Outcome { ok: true, result }
}

fn check(ok: bool, result: Value) -> Outcome {
    Outcome { ok, result }
}

fn load(path: &Path) -> Result<FiniteLocalGroupoid> {
    read_table(path).with_context(|| format!("loading {}", path.display()))
}

fn object(g: &FiniteLocalGroupoid, name: Option<&str>) -> Result<ObjIx> {
    match name {
        None => Ok(0),
        Some(n) => g
            .find_object(n)
            .ok_or_else(|| anyhow!("no object named {n}")),
    }
}

fn save(g: &FiniteLocalGroupoid, out: Option<&Path>) -> Result<Value> {
    match out {
        Some(p) => {
            write_table(g, p)?;
            Ok(json!(p.display().to_string()))
        }
        None => Ok(serde_json::from_str(&to_json(g))?),
    }
}

fn builtin(name: ExampleName) -> Result<FiniteLocalGroupoid> {
    let g = match name {
        ExampleName::Z2 => cyclic(2)?,
        ExampleName::Z3 => cyclic(3)?,
        ExampleName::Interval1 => interval_group(1, None)?,
        ExampleName::Interval2 => interval_group(2, None)?,
        ExampleName::Interval1Mod5 => interval_group(1, Some(5))?,
        ExampleName::Tree4 => pair_restriction(4, &[(0, 1), (1, 2), (1, 3)])?,
        ExampleName::Path4 => pair_restriction(4, &path_edges(4))?,
        ExampleName::Cycle5 => pair_restriction(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)])?,
    };
    Ok(g)
}

fn run(cmd: &Command, seed: u64) -> Result<Outcome> {
    Ok(match cmd {
        Command::Validate { table, strict } => {
            let g = load(table)?;
            let r = validate(&g);
            let ok = if *strict {
                r.passed_strict()
            } else {
                r.passed()
            };
            check(ok, json!({ "passed": ok, "report": r }))
        }
        Command::Restrict { table, n, out } => {
            let g = load(table)?;
            let h = restrict_to_n_associative(&g, *n)?;
            let removed: Vec<_> = removed_pairs(&g, &h)
                .into_iter()
                .map(|(a, b)| [g.id(a), g.id(b)])
                .collect();
            answer(
                json!({ "removed": removed, "inverse_domain": h.inv_entries().len(), "table": save(&h, out.as_deref())? }),
            )
        }
        Command::Ac { table, limits } => {
            let g = load(table)?;
            match ac_build(&g, limits.into()) {
                Ok(b) => {
                    let ok = !matches!(b.outcome, AcOutcome::NotStabilized { .. });
                    check(ok, b.to_json(&g))
                }
                Err(e) => check(false, json!({ "error": e.to_string() })),
            }
        }
        Command::AssocSet {
            table,
            limits,
            bounds,
        } => {
            let g = load(table)?;
            let b: Bounds = bounds.into();
            let per_object: BTreeMap<_, _> = (0..g.n_objects())
                .map(|x| {
                    (
                        g.object_name(x).to_string(),
                        associators(&g, x, b).to_json(&g),
                    )
                })
                .collect();
            match completion_kernel(&g, limits.into(), b) {
                Ok(k) => answer(json!({ "associators": per_object, "kernel": k.to_json(&g) })),
                Err(e) => check(
                    false,
                    json!({ "associators": per_object, "error": e.to_string() }),
                ),
            }
        }
        Command::AssocOrder {
            table,
            n,
            max_tuples,
        } => {
            let g = load(table)?;
            let r = assoc_order_with(&g, *n, *max_tuples)?;
            check(r.passed(), r.to_json(&g))
        }
        Command::Nerve {
            table,
            dim,
            horn_dim,
            max_horns,
            require_kan,
        } => {
            let g = load(table)?;
            let x = build_nerve(&g, *dim)?;
            let ids = check_simplicial_identities(&x);
            let horns = horn_check(&x, *horn_dim, *max_horns);
            let counts: Vec<_> = (0..=x.m_max()).map(|m| x.count(m)).collect();
            let ok = ids.failures == 0 && (!require_kan || horns.unfillable() == 0);
            check(
                ok,
                json!({ "counts": counts, "identities": ids, "horns": horns, "kan": horns.unfillable() == 0 }),
            )
        }
        Command::Pi1 { table, base } => {
            let g = load(table)?;
            let x = build_nerve(&g, 2)?;
            let p = pi1_presentation(&x, object(&g, base.as_deref())?)?;
            answer(pi1_json(&g, &p))
        }
        Command::AcVsPi1 { table, limits } => {
            let g = load(table)?;
            let r = ac_vs_pi1(&g, limits.into())?;
            check(r.isomorphic.unwrap_or(r.h1_equal), serde_json::to_value(r)?)
        }
        Command::Smon { table, base } => {
            let g = load(table)?;
            let r = simplicial_monodromy_ab(&g, object(&g, base.as_deref())?)?;
            check(r.agrees != Some(false), serde_json::to_value(r)?)
        }
        Command::Certify {
            table,
            w1,
            w2,
            random,
            bounds,
        } => {
            let g = load(table)?;
            let b: Bounds = bounds.into();
            let pairs = match (w1, w2, random) {
                (Some(a), Some(c), _) => vec![(Word::parse(&g, a)?, Word::parse(&g, c)?)],
                (_, _, Some(n)) => random_equivalent_pairs(&g, seed, *n),
                _ => bail!("give --w1 and --w2, or --random N"),
            };
            let mut rows = Vec::new();
            let mut ok = true;
            for (a, c) in &pairs {
                let row = match certify_equivalence(a, c, &g, b)? {
                    Some(cert) => {
                        let verified = verify_detailed(&cert, &g);
                        ok &= verified.is_ok();
                        let mut v = cert.to_json(&g);
                        v["verified"] = json!(verified.is_ok());
                        if let Err(e) = verified {
                            v["error"] = json!(e);
                        }
                        v
                    }
                    None => {
                        ok = false;
                        json!({ "w1": a.show(&g), "w2": c.show(&g), "certificate": null })
                    }
                };
                rows.push(row);
            }
            if pairs.len() == 1 {
                check(ok, rows.pop().expect("one row"))
            } else {
                check(
                    ok,
                    json!({ "pairs": pairs.len(), "all_verified": ok, "certificates": rows }),
                )
            }
        }
        Command::Sphere { which } => match which {
            SphereCmd::Tetra { tol } => {
                let w = tetrahedron_witness();
                let two_pi = 2.0 * std::f64::consts::PI;
                let ok = (w.left - two_pi).abs() < *tol && (w.right + two_pi).abs() < *tol;
                check(ok, serde_json::to_value(w)?)
            }
            SphereCmd::QuadCheck {
                lambda,
                samples,
                tol,
                literal_window,
            } => {
                let l = lambda.map(Lambda::value);
                let r = if *literal_window {
                    quad_check_windowed(
                        *samples,
                        seed,
                        l,
                        l.filter(|v| *v != 0.0)
                            .map(|v| std::f64::consts::PI / v.abs()),
                        *tol,
                    )
                } else {
                    quad_check(*samples, seed, l, *tol)
                };
                check(r.passed, serde_json::to_value(r)?)
            }
            SphereCmd::Lattice {
                lambda,
                n_max,
                threshold,
            } => {
                let r = monodromy_lattice(*lambda, *n_max, *threshold);
                answer(serde_json::to_value(r)?)
            }
        },
        Command::Cover {
            which:
                CoverCmd::Witness {
                    hole_x,
                    hole_y,
                    hole_radius,
                    ball,
                },
        } => {
            let cfg = CoverConfig {
                center: V2(*hole_x, *hole_y),
                radius: *hole_radius,
                ball: *ball,
                ..CoverConfig::default()
            };
            match cover_witness(&cfg) {
                Ok(w) => check(
                    w.same_point && w.winding_difference.abs() == 1,
                    serde_json::to_value(w)?,
                ),
                Err(e) => check(false, json!({ "error": e.to_string() })),
            }
        }
        Command::Ladder {
            which:
                LadderCmd::Witness {
                    n,
                    step,
                    radius,
                    calibration_tol,
                    tol,
                },
        } => {
            let cfg = LadderConfig {
                radius: *radius,
                step: *step,
                calibration_tol: *calibration_tol,
            };
            match associator_witness(*n, cfg) {
                Ok(w) => {
                    let off = (w.witness.0 - w.expected.0)
                        .abs()
                        .max((w.witness.1 - w.expected.1).abs());
                    let v = json!({
                        "n": w.n,
                        "amplitude": w.amplitude,
                        "calibration_residual": w.calibration_residual,
                        "expected": w.expected,
                        "inside_out": w.inside_out.result,
                        "split": w.split.result,
                        "witness": w.witness,
                        "distance": off,
                    });
                    check(off < *tol, v)
                }
                Err(e) => check(false, json!({ "error": e.to_string() })),
            }
        }
        Command::Lace {
            k,
            svg,
            verify_only,
        } => {
            let (seq, report) = lace_report(*k)?;
            let ok = report.block_derivation && report.lace_decomposition;
            let mut v = if *verify_only {
                json!({ "block_derivation": report.block_derivation, "lace_decomposition": report.lace_decomposition })
            } else {
                serde_json::to_value(&report)?
            };
            if let Some(dir) = svg {
                let frames = emit_svg(&seq, dir)?;
                v["frames"] = json!(frames.len());
            }
            check(ok, v)
        }
        Command::ExportFinite { which, out } => {
            let e = match which {
                ExportKind::Tetra => export_tetrahedron()?,
                ExportKind::Cover => export_cover_grid(&CoverConfig::default(), false)?,
                ExportKind::CoverSymmetric => export_cover_grid(&CoverConfig::default(), true)?,
            };
            let dropped: Vec<_> = e.dropped.iter().map(|(a, b)| [a, b]).collect();
            answer(
                json!({ "summary": e.summary(), "dropped": dropped, "table": save(&e.table, out.as_deref())? }),
            )
        }
        Command::Example { name, out } => {
            let g = builtin(*name)?;
            answer(
                json!({ "objects": g.n_objects(), "arrows": g.n_arrows(), "table": save(&g, out.as_deref())? }),
            )
        }
    })
}

fn render_text(report: &Value, ok: bool) -> String {
    let mut s = format!("status: {}\n", if ok { "ok" } else { "FAIL" });
    if let Some(obj) = report["result"].as_object() {
        for (k, v) in obj {
            s.push_str(&format!("{k}: {v}\n"));
        }
    } else {
        s.push_str(&format!("result: {}\n", report["result"]));
    }
    s
}

fn main() -> ExitCode {
    let mut cli = Cli::parse();
    if let Ok(s) = std::env::var("LOCGPD_SEED") {
        match s.trim().parse() {
            Ok(v) => cli.seed = v,
            Err(_) => {
                eprintln!("error: LOCGPD_SEED is not an unsigned integer: {s}");
                return ExitCode::from(2);
            }
        }
    }
    match run(&cli.command, cli.seed) {
        Ok(out) => {
            let report = json!({ "config": &cli, "result": out.result });
            let text = match cli.format {
                Format::Json => serde_json::to_string_pretty(&report).expect("serializable") + "\n",
                Format::Text => render_text(&report, out.ok),
            };
            // a closed pipe downstream is not an error of ours
            let _ = std::io::stdout().lock().write_all(text.as_bytes());
            ExitCode::from(if out.ok { 0 } else { 1 })
        }
        Err(e) => {
            let mut msg = String::new();
            for cause in e.chain().map(|c| c.to_string()) {
                if !msg.contains(&cause) {
                    msg.push_str(if msg.is_empty() { "" } else { ": " });
                    msg.push_str(&cause);
                }
            }
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_lists_result_keys_in_order() {
        let r = json!({ "config": {}, "result": { "b": 2, "a": [1] } });
        assert_eq!(render_text(&r, false), "status: FAIL\na: [1]\nb: 2\n");
        assert_eq!(
            render_text(&json!({ "result": 3 }), true),
            "status: ok\nresult: 3\n"
        );
    }

    #[test]
    fn arguments_parse() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
        assert!(Cli::try_parse_from(["locgpd", "lace"]).is_err());
        assert!(Cli::try_parse_from(["locgpd", "--seed", "4", "lace", "--k", "3"]).is_ok());
    }
}
