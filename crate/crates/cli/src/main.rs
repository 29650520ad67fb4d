use std::path::{Path, PathBuf};
use std::io::Write;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use roiter_core::explorer::{
    cogeneration_closure, default_enumeration_bound, enumerate_indecomposables, take_off_sequence, SubcatSnapshot,
};
use roiter_core::grmeasure::{gr_measure, gr_submodule};
use roiter_core::registry::{self, Status, VerifyOptions, SCHEMA};
use roiter_core::repcore::{
    decompose, hom_dim, is_cogenerated, is_indecomposable, load_module, resolve_algebra, submodule_lattice,
    write_module,
};
use roiter_core::tame::knit_dim_vectors;
use roiter_core::{AlgebraPresentation, Caps, Error, Representation};

#[derive(Parser)]
#[command(name = "roiter", version, about = "Gabriel-Roiter measures and module experiments over small prime fields")]
struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Worker threads (output does not depend on this).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Seed for randomized subroutines.
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(flatten)]
    caps: CapArgs,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Tsv,
    Text,
}

#[derive(Args)]
struct CapArgs {
    /// Submodule enumeration runs when p^length <= 2^BITS.
    #[arg(long, global = true, value_name = "BITS")]
    submodule_bits: Option<u32>,
    /// Exhaustive Hom/End searches run when p^dim <= 2^BITS.
    #[arg(long, global = true, value_name = "BITS")]
    exhaustive_bits: Option<u32>,
    /// Random samples tried before falling back to an exhaustive search.
    #[arg(long, global = true, value_name = "N")]
    random_tries: Option<usize>,
    /// Override the length guard of indecomposable enumeration.
    #[arg(long, global = true, value_name = "L")]
    enumerate_len: Option<usize>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Algebra presentations.
    Algebra {
        #[command(subcommand)]
        cmd: AlgebraCmd,
    },
    /// Module files.
    Mod {
        #[command(subcommand)]
        cmd: ModCmd,
    },
    /// Gabriel-Roiter measures.
    Gr {
        #[command(subcommand)]
        cmd: GrCmd,
    },
    /// The smallest measures among indecomposables of bounded length.
    Takeoff {
        alg: String,
        #[arg(long)]
        max_len: usize,
        /// How many of the smallest measures to print.
        #[arg(long, default_value_t = 3)]
        count: usize,
    },
    /// Indecomposables cogenerated by the direct sum of the seeds.
    Closure {
        alg: String,
        /// Module files.
        #[arg(long, num_args = 1.., required = true)]
        seeds: Vec<PathBuf>,
        #[arg(long)]
        max_len: usize,
    },
    /// Indecomposables up to isomorphism, with measures.
    Enumerate {
        alg: String,
        #[arg(long)]
        max_len: Option<usize>,
    },
    /// Dimension vectors of the preprojective component via the Coxeter matrix.
    Knit {
        alg: String,
        /// Number of τ⁻ steps per projective.
        #[arg(long)]
        steps: usize,
    },
    /// Run the checks of a built-in example (`all` runs every example).
    Verify {
        id: String,
        /// Also run the K(3) variant of the cogeneration check.
        #[arg(long)]
        k3: bool,
        /// Use the alternative zero relation in the remark example.
        #[arg(long)]
        remark_alternate: bool,
    },
    /// List the built-in examples.
    Examples,
}

#[derive(Subcommand)]
enum AlgebraCmd {
    /// Parse, check admissibility and print the graded dimensions.
    Validate { file: String },
}

#[derive(Subcommand)]
enum ModCmd {
    /// Check the relations and print basic invariants.
    Check {
        #[arg(required = true)]
        files: Vec<PathBuf>,
    },
    /// dim Hom(X, Y).
    Hom { x: PathBuf, y: PathBuf },
    /// Whether X embeds in a power of M.
    Cogen { x: PathBuf, m: PathBuf },
    /// Indecomposable summands.
    Decompose { file: PathBuf },
    /// All submodules (within the submodule cap).
    Submodules { file: PathBuf },
}

#[derive(Subcommand)]
enum GrCmd {
    /// The Gabriel-Roiter measure of a module.
    Measure { file: PathBuf },
    /// A Gabriel-Roiter submodule of an indecomposable.
    Submodule { file: PathBuf },
}

/// Exit status: check failure.
const FAIL: u8 = 1;
const USAGE: u8 = 2;
const CAP: u8 = 3;

struct Out {
    text: String,
    tsv: Option<String>,
    json: Value,
    status: u8,
}

impl Out {
    fn ok(text: String, json: Value) -> Self {
        Out { text, tsv: None, json, status: 0 }
    }
}

fn exit_for(e: &Error) -> u8 {
    match e {
        Error::CapExceeded { .. } => CAP,
        Error::Io(_) | Error::Parse { .. } | Error::UnknownVertex(_) | Error::UnknownArrow(_) => USAGE,
        Error::Precondition(_) => USAGE,
        _ => FAIL,
    }
}

fn load_algebra(reference: &str) -> roiter_core::Result<Arc<AlgebraPresentation>> {
    resolve_algebra(reference, Path::new("."))
}

fn load(path: &Path) -> roiter_core::Result<Representation> {
    load_module(path)
}

fn dims_str(d: &[usize]) -> String {
    format!("({})", d.iter().map(usize::to_string).collect::<Vec<_>>().join(","))
}

fn snapshot_out(snap: &SubcatSnapshot) -> Out {
    let mut text = String::new();
    for (m, mu) in snap.members.iter().zip(&snap.measures) {
        text.push_str(&format!("{}\t{}\t{}\n", m.length(), dims_str(m.dims()), mu));
    }
    text.push_str(&format!("{} classes\n", snap.len()));
    let mut json = snap.to_json();
    json["schema"] = json!(SCHEMA);
    Out { text, tsv: Some(snap.to_tsv()), json, status: 0 }
}

fn run(cli: &Cli, caps: &Caps) -> roiter_core::Result<Out> {
    Ok(match &cli.cmd {
        Cmd::Algebra { cmd: AlgebraCmd::Validate { file } } => {
            let alg = load_algebra(file)?;
            let rep = alg.validate();
            let mut text = format!(
                "ok: {} vertices, {} arrows, {} relations, dimension {}, longest nonzero path {}\n",
                alg.num_vertices(),
                alg.quiver().arrows().len(),
                alg.relations().len(),
                rep.total_dimension,
                rep.nilpotency_bound
            );
            let mut tsv = String::from("source\ttarget\tlength\tdimension\n");
            for (s, t, l, d) in &rep.graded_pieces {
                text.push_str(&format!("  e_{s} A_{l} e_{t}: {d}\n"));
                tsv.push_str(&format!("{s}\t{t}\t{l}\t{d}\n"));
            }
            Out { text, tsv: Some(tsv), json: json!({"schema": SCHEMA, "valid": true, "report": rep}), status: 0 }
        }
        Cmd::Mod { cmd } => run_mod(cmd, caps)?,
        Cmd::Gr { cmd: GrCmd::Measure { file } } => {
            let x = load(file)?;
            let mu = gr_measure(&x, caps)?;
            Out::ok(format!("{mu}\n"), json!({"schema": SCHEMA, "dims": x.dims(), "measure": mu}))
        }
        Cmd::Gr { cmd: GrCmd::Submodule { file } } => {
            let x = load(file)?;
            let (sub, mu) = gr_submodule(&x, caps)?;
            let (u, _) = sub.to_representation(&x);
            Out::ok(
                format!("{} {mu}\n", dims_str(u.dims())),
                json!({"schema": SCHEMA, "dims": u.dims(), "measure": mu}),
            )
        }
        Cmd::Takeoff { alg, max_len, count } => {
            let a = load_algebra(alg)?;
            let snap = enumerate_indecomposables(&a, *max_len, caps)?;
            let rep = take_off_sequence(&snap, *count);
            let mut text = String::new();
            let mut tsv = String::from("measure\tdims\n");
            for e in &rep.entries {
                let ds: Vec<String> = e.dims.iter().map(|d| dims_str(d)).collect();
                text.push_str(&format!("{}\t{}\n", e.measure, ds.join(" ")));
                tsv.push_str(&format!("{}\t{}\n", e.measure, ds.join(" ")));
            }
            if rep.truncated {
                text.push_str(&format!("only {} measures occur up to length {max_len}\n", rep.entries.len()));
            }
            let mut json = json!(rep);
            json["schema"] = json!(SCHEMA);
            Out { text, tsv: Some(tsv), json, status: 0 }
        }
        Cmd::Closure { alg, seeds, max_len } => {
            let a = load_algebra(alg)?;
            let seeds = seeds.iter().map(|p| load(p)).collect::<roiter_core::Result<Vec<_>>>()?;
            if seeds.iter().any(|s| **s.algebra() != *a) {
                return Err(Error::AlgebraMismatch);
            }
            snapshot_out(&cogeneration_closure(&a, &seeds, *max_len, caps)?)
        }
        Cmd::Enumerate { alg, max_len } => {
            let a = load_algebra(alg)?;
            let l = max_len.unwrap_or_else(|| caps.enumerate_len.unwrap_or_else(|| default_enumeration_bound(&a)));
            snapshot_out(&enumerate_indecomposables(&a, l, caps)?)
        }
        Cmd::Knit { alg, steps } => {
            let a = load_algebra(alg)?;
            let rows = knit_dim_vectors(&a, *steps)?;
            let names = a.quiver().vertices();
            let mut text = String::new();
            let mut tsv = String::from("vertex\tj\tdims\n");
            for r in &rows {
                let d: Vec<String> = r.dims.iter().map(i64::to_string).collect();
                text.push_str(&format!("tau^-{} P({}) = ({})\n", r.j, names[r.vertex], d.join(",")));
                tsv.push_str(&format!("{}\t{}\t{}\n", names[r.vertex], r.j, d.join(" ")));
            }
            let rows_json: Vec<Value> =
                rows.iter().map(|r| json!({"vertex": names[r.vertex], "j": r.j, "dims": r.dims})).collect();
            Out { text, tsv: Some(tsv), json: json!({"schema": SCHEMA, "rows": rows_json}), status: 0 }
        }
        Cmd::Verify { id, k3, remark_alternate } => {
            let opts = VerifyOptions { with_k3: *k3, remark_alternate: *remark_alternate };
            let ids: Vec<String> = if id == "all" {
                registry::list_examples().iter().map(|e| e.id.to_string()).collect()
            } else {
                vec![id.clone()]
            };
            let mut reports = Vec::new();
            for id in &ids {
                reports.push(registry::verify_with(id, caps, &opts)?);
            }
            let mut text = String::new();
            let mut tsv = String::from("id\tcheck\tkind\tstatus\tmillis\tdetail\n");
            let (mut failed, mut skipped) = (false, false);
            for rep in &reports {
                for c in &rep.checks {
                    let status = match c.status {
                        Status::Pass => "pass",
                        Status::Fail => "FAIL",
                        Status::SkippedAtCap => "skipped-at-cap",
                    };
                    let kind = serde_json::to_value(c.kind).expect("kind serializes");
                    let kind = kind.as_str().unwrap_or_default();
                    text.push_str(&format!("[{status}] {} [{kind}] {} ({} ms)\n", rep.id, c.name, c.millis));
                    if !c.detail.is_empty() {
                        text.push_str(&format!("    {}\n", c.detail));
                    }
                    tsv.push_str(&format!("{}\t{}\t{kind}\t{status}\t{}\t{}\n", rep.id, c.name, c.millis, c.detail));
                }
                failed |= !rep.passed();
                skipped |= rep.skipped() > 0;
            }
            let status = if failed {
                FAIL
            } else if skipped {
                CAP
            } else {
                0
            };
            let json = if reports.len() == 1 {
                json!(reports[0])
            } else {
                json!({"schema": SCHEMA, "reports": reports})
            };
            Out { text, tsv: Some(tsv), json, status }
        }
        Cmd::Examples => {
            let list = registry::list_examples();
            let mut text = String::new();
            let mut tsv = String::from("id\talgebra\tquiver\tdescription\n");
            for e in &list {
                text.push_str(&format!("{:<22} {:<10} {}\n{:<33} {}\n", e.id, e.algebra, e.quiver, "", e.description));
                tsv.push_str(&format!("{}\t{}\t{}\t{}\n", e.id, e.algebra, e.quiver, e.description));
            }
            Out { text, tsv: Some(tsv), json: json!({"schema": SCHEMA, "examples": list}), status: 0 }
        }
    })
}

fn run_mod(cmd: &ModCmd, caps: &Caps) -> roiter_core::Result<Out> {
    Ok(match cmd {
        ModCmd::Check { files } => {
            let mut text = String::new();
            let mut tsv = String::from("file\tdims\tlength\tindecomposable\ttop\tsocle\n");
            let mut rows = Vec::new();
            for f in files {
                let x = load(f)?;
                x.check()?;
                let ind = if x.is_zero() { false } else { is_indecomposable(&x, caps)? };
                text.push_str(&format!(
                    "{}: ok, dims {}, length {}, {}, top {}, socle {}\n",
                    f.display(),
                    dims_str(x.dims()),
                    x.length(),
                    if ind { "indecomposable" } else { "decomposable" },
                    dims_str(&x.top_dims()),
                    dims_str(&x.socle_dims())
                ));
                tsv.push_str(&format!(
                    "{}\t{}\t{}\t{ind}\t{}\t{}\n",
                    f.display(),
                    dims_str(x.dims()),
                    x.length(),
                    dims_str(&x.top_dims()),
                    dims_str(&x.socle_dims())
                ));
                rows.push(json!({
                    "file": f.display().to_string(), "dims": x.dims(), "length": x.length(),
                    "indecomposable": ind, "top": x.top_dims(), "socle": x.socle_dims(),
                    "projective": x.is_projective(), "injective": x.is_injective(),
                }));
            }
            Out { text, tsv: Some(tsv), json: json!({"schema": SCHEMA, "modules": rows}), status: 0 }
        }
        ModCmd::Hom { x, y } => {
            let (x, y) = (load(x)?, load(y)?);
            x.require_same_algebra(&y)?;
            let d = hom_dim(&x, &y);
            Out::ok(format!("{d}\n"), json!({"schema": SCHEMA, "hom_dim": d}))
        }
        ModCmd::Cogen { x, m } => {
            let (x, m) = (load(x)?, load(m)?);
            let c = is_cogenerated(&x, &m)?;
            Out::ok(format!("{c}\n"), json!({"schema": SCHEMA, "cogenerated": c}))
        }
        ModCmd::Decompose { file } => {
            let x = load(file)?;
            let parts = decompose(&x, caps)?;
            let alg_ref = x.algebra().name().unwrap_or("ALGEBRA").to_string();
            let mut text = String::new();
            for (i, p) in parts.iter().enumerate() {
                text.push_str(&format!("# summand {} {}\n{}", i + 1, dims_str(p.dims()), write_module(p, &alg_ref)));
            }
            let tsv = parts.iter().map(|p| format!("{}\t{}\n", p.length(), dims_str(p.dims()))).collect();
            let js: Vec<Value> =
                parts.iter().map(|p| json!({"dims": p.dims(), "module": write_module(p, &alg_ref)})).collect();
            Out { text, tsv: Some(tsv), json: json!({"schema": SCHEMA, "summands": js}), status: 0 }
        }
        ModCmd::Submodules { file } => {
            let x = load(file)?;
            let lat = submodule_lattice(&x, caps)?;
            let mut text = String::new();
            let mut tsv = String::from("index\tdims\tlength\n");
            for (i, s) in lat.subs.iter().enumerate() {
                text.push_str(&format!("{i}\t{}\n", dims_str(&s.dims())));
                tsv.push_str(&format!("{i}\t{}\t{}\n", dims_str(&s.dims()), s.length()));
            }
            text.push_str(&format!("{} submodules\n", lat.subs.len()));
            let js: Vec<Value> = lat.subs.iter().map(|s| json!(s.dims())).collect();
            Out { text, tsv: Some(tsv), json: json!({"schema": SCHEMA, "count": js.len(), "dims": js}), status: 0 }
        }
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { USAGE } else { 0 });
        }
    };
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(USAGE);
        }
    }
    let mut caps = Caps::default();
    if let Some(s) = cli.seed {
        caps = caps.with_seed(s);
    }
    let c = &cli.caps;
    caps.submodule_bits = c.submodule_bits.unwrap_or(caps.submodule_bits);
    caps.exhaustive_bits = c.exhaustive_bits.unwrap_or(caps.exhaustive_bits);
    caps.random_tries = c.random_tries.unwrap_or(caps.random_tries);
    caps.enumerate_len = c.enumerate_len.or(caps.enumerate_len);
    match run(&cli, &caps) {
        Ok(out) => {
            let body = match cli.format {
                Format::Text => out.text,
                Format::Tsv => out.tsv.unwrap_or(out.text),
                Format::Json => serde_json::to_string_pretty(&out.json).expect("json") + "\n",
            };
            // a closed pipe (e.g. `| head`) is not an error
            let mut stdout = std::io::stdout().lock();
            match stdout.write_all(body.as_bytes()).and_then(|_| stdout.flush()) {
                Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => {
                    eprintln!("error: {e}");
                    ExitCode::from(USAGE)
                }
                _ => ExitCode::from(out.status),
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_for(&e))
        }
    }
}
