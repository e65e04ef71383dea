use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use morita_core::bibundle::{is_biprincipal, is_principal, morita_equivalent, tensor};
use morita_core::catalog::{self, CatalogRun};
use morita_core::cocycle::{lift_cocycle, pushforward, validate_cocycle};
use morita_core::fpgroup::coset::finite_order;
use morita_core::groupoid::{isotropy, orbits, validate_groupoid};
use morita_core::homotopy::{borel_pi1, check_eff_sequence, check_example4_sequence, eff_translation, pi0, pi1_finite, pi1_nerve};
use morita_core::report::Report;
use morita_core::schema::{self, Source};

#[derive(Parser)]
#[command(name = "morita", version, about = "Finite groupoids, Morita equivalence and fundamental groups")]
struct Cli {
    /// Emit machine-readable JSON.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a document of any supported kind.
    Validate { file: PathBuf },
    /// Orbit classes of a groupoid.
    Orbits { file: PathBuf },
    /// Isotropy group at an object.
    Isotropy {
        file: PathBuf,
        #[arg(long)]
        at: usize,
    },
    /// Fundamental group of a groupoid, or of an action groupoid with --borel.
    Pi1 {
        file: Option<PathBuf>,
        #[arg(long, conflicts_with = "borel")]
        nerve: bool,
        #[arg(long)]
        borel: bool,
        #[arg(long)]
        action: Option<PathBuf>,
        /// Basepoint: an object, or a vertex with --borel.
        #[arg(long, default_value_t = 0)]
        base: usize,
    },
    /// Decide Morita equivalence of two groupoids.
    Morita { a: PathBuf, b: PathBuf },
    /// Tensor product Q ⊗ P of two bibundles.
    Tensor { q: PathBuf, p: PathBuf },
    /// Ineffective kernel and effective quotient of an action.
    Eff {
        #[arg(long)]
        action: PathBuf,
    },
    /// Lift a cocycle along a functor.
    LiftCocycle {
        #[arg(long)]
        functor: PathBuf,
        #[arg(long)]
        cocycle: PathBuf,
    },
    /// Verify an exact sequence for an action.
    CheckSeq {
        which: Sequence,
        #[arg(long)]
        action: PathBuf,
        #[arg(long, default_value_t = 0)]
        base: usize,
    },
    /// Worked examples.
    Catalog {
        #[command(subcommand)]
        command: CatalogCommand,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Sequence {
    Example4,
    Eff,
}

#[derive(Subcommand)]
enum CatalogCommand {
    List,
    Run {
        name: Option<String>,
        #[arg(long, conflicts_with = "name")]
        all: bool,
    },
}

/// Input problems exit with 2, failed checks with 1.
enum Failure {
    Input(anyhow::Error),
    Check,
}

impl<E: Into<anyhow::Error>> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Input(e.into())
    }
}

type Outcome = Result<(), Failure>;

struct Out {
    json: bool,
}

impl Out {
    fn emit(&self, human: impl FnOnce() -> String, machine: impl FnOnce() -> Value) {
        if self.json {
            println!("{}", serde_json::to_string_pretty(&machine()).expect("json"));
        } else {
            println!("{}", human());
        }
    }

    fn report(&self, r: &Report) -> Outcome {
        self.emit(|| r.to_string(), || serde_json::to_value(r).expect("report"));
        if r.passed() {
            Ok(())
        } else {
            Err(Failure::Check)
        }
    }
}

fn load<T>(path: &Path, read: impl Fn(&Source) -> schema::SchemaResult<T>) -> anyhow::Result<T> {
    schema::load(path, read).map_err(|e| anyhow!("{e}"))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = Out { json: cli.json };
    match run(cli.command, &out) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check) => ExitCode::from(1),
        Err(Failure::Input(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command, out: &Out) -> Outcome {
    match command {
        Command::Validate { file } => validate(&file, out),
        Command::Orbits { file } => {
            let g = load(&file, schema::read_groupoid)?;
            let classes = orbits(&g);
            out.emit(
                || classes.iter().enumerate().map(|(i, c)| format!("orbit {i}: {c:?}")).collect::<Vec<_>>().join("\n"),
                || json!({ "orbits": classes }),
            );
            Ok(())
        }
        Command::Isotropy { file, at } => {
            let g = load(&file, schema::read_groupoid)?;
            let iso = isotropy(&g, at)?;
            let grp = &iso.group;
            out.emit(
                || {
                    format!(
                        "isotropy at {at}: order {}, {}\narrows: {:?}",
                        grp.order(),
                        if grp.is_abelian() { "abelian" } else { "non-abelian" },
                        iso.arrows
                    )
                },
                || json!({ "object": at, "order": grp.order(), "abelian": grp.is_abelian(), "arrows": iso.arrows, "group": schema::group_to_json(grp) }),
            );
            Ok(())
        }
        Command::Pi1 { file, nerve, borel, action, base } => pi1(file, nerve, borel, action, base, out),
        Command::Morita { a, b } => {
            let g = load(&a, schema::read_groupoid)?;
            let h = load(&b, schema::read_groupoid)?;
            let d = morita_equivalent(&g, &h);
            let verified = d.witness.as_ref().is_some_and(is_biprincipal);
            out.emit(
                || {
                    let mut s = String::from(if d.equivalent { "equivalent" } else { "not equivalent" });
                    s.push_str(&format!("\n{}", d.reason));
                    if let Some(w) = &d.witness {
                        s.push_str(&format!("\nwitness: biprincipal bibundle with {} points (validated: {verified})", w.total()));
                        s.push_str(&format!("\nmatched orbit representatives: {:?}", d.matching));
                        s.push_str(&format!("\n{}", serde_json::to_string_pretty(&schema::bibundle_to_json(w)).expect("json")));
                    }
                    s
                },
                || {
                    json!({
                        "equivalent": d.equivalent,
                        "reason": d.reason,
                        "matching": d.matching,
                        "witnessValidated": verified,
                        "witness": d.witness.as_ref().map(schema::bibundle_to_json),
                    })
                },
            );
            Ok(())
        }
        Command::Tensor { q, p } => {
            let q = load(&q, schema::read_bibundle)?;
            let p = load(&p, schema::read_bibundle)?;
            let t = tensor(&q, &p)?;
            let principal = is_principal(&t).is_principal();
            out.emit(
                || format!("{}\nprincipal: {principal}", serde_json::to_string_pretty(&schema::bibundle_to_json(&t)).expect("json")),
                || schema::bibundle_to_json(&t),
            );
            Ok(())
        }
        Command::Eff { action } => {
            let a = load(&action, schema::read_action)?;
            let eff = eff_translation(&a)?;
            out.emit(
                || format!("K = {:?} (order {})\nquotient group order {}", eff.kernel, eff.kernel.len(), eff.quotient.group.order()),
                || json!({ "kernel": eff.kernel, "quotientMap": eff.map, "quotient": schema::action_to_json(&eff.quotient) }),
            );
            Ok(())
        }
        Command::LiftCocycle { functor, cocycle } => {
            let phi = load(&functor, schema::read_functor)?;
            let c = load(&cocycle, schema::read_cocycle)?;
            if c.groupoid != phi.target {
                return Err(Failure::Input(anyhow!("{}: cocycle groupoid differs from the functor target", cocycle.display())));
            }
            if let Some(v) = validate_cocycle(&c).violations.first() {
                return Err(Failure::Input(anyhow!("{}: not a cocycle: {v}", cocycle.display())));
            }
            let lift = lift_cocycle(&phi, &c, None)?;
            let round_trip = pushforward(&phi, &lift)? == c;
            out.emit(
                || format!("{}\npushforward equals input: {round_trip}", serde_json::to_string_pretty(&schema::cocycle_to_json(&lift)).expect("json")),
                || json!({ "lift": schema::cocycle_to_json(&lift), "roundTrip": round_trip }),
            );
            if round_trip {
                Ok(())
            } else {
                Err(Failure::Check)
            }
        }
        Command::CheckSeq { which, action, base } => {
            let a = load(&action, schema::read_action)?;
            let r = match which {
                Sequence::Example4 => check_example4_sequence(&a, base)?,
                Sequence::Eff => check_eff_sequence(&a, base)?,
            };
            out.report(&r)
        }
        Command::Catalog { command } => catalog_command(command, out),
    }
}

fn pi1(file: Option<PathBuf>, nerve: bool, borel: bool, action: Option<PathBuf>, base: usize, out: &Out) -> Outcome {
    if borel {
        let path = action.or(file).context("--borel needs --action <file>")?;
        let a = load(&path, schema::read_action)?;
        let model = borel_pi1(&a, base)?;
        let p = model.presentation();
        let ab = p.abelianization();
        let order = finite_order(p);
        out.emit(
            || {
                format!(
                    "pi1 = {ab} (abelianized)\norder: {}\ngenerators: {}, relators: {}",
                    order.map_or("unknown".to_string(), |n| n.to_string()),
                    p.generator_count(),
                    p.relators().len()
                )
            },
            || {
                json!({
                    "abelianization": ab.to_string(),
                    "order": order,
                    "presentation": schema::presentation_to_json(p),
                    "fiberMap": schema::presentation_map_to_json(&model.fiber_map),
                    "projMap": schema::presentation_map_to_json(&model.proj_map),
                })
            },
        );
        return Ok(());
    }
    let path = file.context("a groupoid file is required")?;
    let g = load(&path, schema::read_groupoid)?;
    if nerve {
        let p = pi1_nerve(&g, base)?;
        let ab = p.abelianization();
        out.emit(
            || format!("pi1 = {ab} (abelianized, nerve)\norder: {}", finite_order(&p).map_or("unknown".into(), |n| n.to_string())),
            || json!({ "abelianization": ab.to_string(), "presentation": schema::presentation_to_json(&p) }),
        );
    } else {
        let grp = pi1_finite(&g, base)?;
        let components = pi0(&g, base)?;
        out.emit(
            || format!("pi1 at {base}: order {}\npi0 = {}", grp.order(), components.len()),
            || json!({ "order": grp.order(), "pi0": components.len(), "group": schema::group_to_json(&grp) }),
        );
    }
    Ok(())
}

fn catalog_command(command: CatalogCommand, out: &Out) -> Outcome {
    match command {
        CatalogCommand::List => {
            let entries = catalog::entries();
            out.emit(
                || entries.iter().map(|e| format!("{:22} {}", e.name, e.description)).collect::<Vec<_>>().join("\n"),
                || json!(entries.iter().map(|e| json!({ "name": e.name, "description": e.description, "expected": e.expected })).collect::<Vec<_>>()),
            );
            Ok(())
        }
        CatalogCommand::Run { name, all } => {
            let entries = if all {
                catalog::entries()
            } else {
                let name = name.context("give an entry name or --all")?;
                vec![catalog::find(&name).ok_or_else(|| anyhow!("no catalog entry named {name:?}; try `catalog list`"))?]
            };
            let runs: Vec<CatalogRun> = entries.iter().map(|e| e.run()).collect::<Result<_, _>>()?;
            out.emit(
                || runs.iter().map(render_run).collect::<Vec<_>>().join("\n").trim_end().to_string(),
                || if all { json!(runs) } else { json!(runs[0]) },
            );
            if runs.iter().all(|r| r.passed) {
                Ok(())
            } else {
                Err(Failure::Check)
            }
        }
    }
}

fn render_run(r: &CatalogRun) -> String {
    let mut s = format!("{}: {}\n", r.name, if r.passed { "pass" } else { "FAIL" });
    for l in &r.lines {
        s.push_str(&format!("  {l}\n"));
    }
    for m in &r.missing {
        s.push_str(&format!("  missing expected line: {m}\n"));
    }
    for c in &r.failed_checks {
        s.push_str(&format!("  failed check: {c}\n"));
    }
    s
}

fn validate(path: &Path, out: &Out) -> Outcome {
    let text = std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    let doc: Value = serde_json::from_str(&text).map_err(|e| anyhow!("{}:{}:{}: {e}", path.display(), e.line(), e.column()))?;
    let has = |k: &str| doc.get(k).is_some();
    let src = Source::file(&text, path);
    let fail = |e: schema::SchemaError| Failure::Input(anyhow!("{e}"));
    let (kind, problems): (&str, Vec<String>) = if has("objects") {
        let g = schema::read_groupoid_unchecked(&src).map_err(fail)?;
        ("groupoid", validate_groupoid(&g).violations.iter().map(|v| v.to_string()).collect())
    } else if has("total") {
        let b = schema::read_bibundle(&src).map_err(fail)?;
        let r = is_principal(&b);
        let mut p = Vec::new();
        if !r.is_principal() {
            p.push(format!("not principal: {r:?}"));
        }
        ("bibundle", p)
    } else if has("objMap") {
        schema::read_functor(&src).map_err(fail)?;
        ("functor", Vec::new())
    } else if has("vertexAction") {
        schema::read_action(&src).map_err(fail)?;
        ("action", Vec::new())
    } else if has("vertices") {
        schema::read_complex(&src).map_err(fail)?;
        ("complex", Vec::new())
    } else if has("images") {
        schema::read_presentation_map(&src).map_err(fail)?;
        ("presentation map", Vec::new())
    } else if has("generators") {
        schema::read_presentation(&src).map_err(fail)?;
        ("presentation", Vec::new())
    } else if has("N") {
        let c = schema::read_cocycle(&src).map_err(fail)?;
        ("cocycle", validate_cocycle(&c).violations.iter().map(|v| v.to_string()).collect())
    } else {
        return Err(Failure::Input(anyhow!("{}: unrecognised document kind", path.display())));
    };
    out.emit(
        || {
            if problems.is_empty() {
                format!("valid {kind}")
            } else {
                format!("invalid {kind}:\n  {}", problems.join("\n  "))
            }
        },
        || json!({ "kind": kind, "valid": problems.is_empty(), "violations": problems }),
    );
    if problems.is_empty() {
        Ok(())
    } else {
        Err(Failure::Check)
    }
}
