mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use commands::{Ctx, Outcome};
use quiverkit::scenario::Status;
use serde_json::json;

#[derive(Parser)]
#[command(name = "quiverkit", version, about = "Exact computations for bound quiver algebras and their modules")]
struct Cli {
    /// Base field: Q or F<p> (overrides the field in input files).
    #[arg(long, global = true)]
    field: Option<String>,
    /// Iteration cap for syzygy and stabilization searches.
    #[arg(long, global = true, default_value_t = quiverkit::homol::DEFAULT_CAP)]
    cap: usize,
    /// Exit with status 3 when results are inconclusive.
    #[arg(long, global = true)]
    strict: bool,
    /// Write the machine-readable report to this path (`-` for stdout).
    #[arg(long, global = true, value_name = "PATH")]
    json: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Algebra-level queries.
    Alg {
        #[command(subcommand)]
        op: AlgCmd,
    },
    /// Module-level queries. Modules are named in the file or written as A, P<v>, S<v>, I<v>, S<v>^[l], joined by `+`.
    Mod {
        #[command(subcommand)]
        op: ModCmd,
    },
    /// Gorenstein projective tests.
    Gp {
        #[command(subcommand)]
        op: GpCmd,
    },
    /// Endomorphism algebras of generators.
    Endo {
        #[command(subcommand)]
        op: EndoCmd,
    },
    /// Stable and stabilized Hom spaces.
    Sg {
        #[command(subcommand)]
        op: SgCmd,
    },
    /// Dual-number algebras of acyclic quivers.
    Dual {
        #[command(subcommand)]
        op: DualCmd,
    },
    /// Run a named end-to-end scenario.
    Verify { scenario: String },
}

#[derive(Subcommand)]
enum AlgCmd {
    /// Quiver, relations, dimension and global dimension.
    Info { file: PathBuf },
    /// Path basis of the algebra.
    Basis { file: PathBuf },
    /// Check associativity, unit and the nilpotency bound.
    Check { file: PathBuf },
}

#[derive(Subcommand)]
enum ModCmd {
    /// dim Hom(X, Y).
    Hom { file: PathBuf, x: String, y: String },
    /// dim Ext^n(X, Y).
    Ext { file: PathBuf, degree: usize, x: String, y: String },
    /// Projective dimension, or unbounded within the cap.
    Pd { file: PathBuf, x: String },
    /// Split into indecomposable summands.
    Decompose { file: PathBuf, x: String },
}

#[derive(Subcommand)]
enum GpCmd {
    /// Decide whether X is Gorenstein projective.
    Test { file: PathBuf, x: String },
    /// Classify all indecomposables of a Nakayama algebra.
    List { file: PathBuf },
}

#[derive(Subcommand)]
enum EndoCmd {
    /// Gabriel quiver of End(M)^op.
    Quiver { file: PathBuf, m: String },
    /// Quiver and relation basis of End(M)^op.
    Present { file: PathBuf, m: String },
    /// Check a claimed quiver with relations, given as an algebra file.
    Verify { file: PathBuf, m: String, claim: PathBuf },
}

#[derive(Subcommand)]
enum SgCmd {
    /// dim of the stable Hom space modulo projectives.
    Stablehom { file: PathBuf, x: String, y: String },
    /// dim Hom(X, Y[shift]) in the singularity category.
    Stabhom {
        file: PathBuf,
        x: String,
        y: String,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        shift: i64,
    },
    /// Zero objects and isomorphism classes among indecomposables.
    Classify { file: PathBuf },
    /// Indecomposables X with Hom(M, X[i]) = 0 for all i.
    Perp { file: PathBuf, m: String },
}

#[derive(Subcommand)]
enum DualCmd {
    /// The module eta(X) over the dual-number algebra.
    Eta { file: PathBuf, x: String },
    /// Check the Hom identity for eta over all base indecomposables.
    Equ1 { file: PathBuf },
    /// Perpendicular category of a base module E.
    Perp { file: PathBuf, e: String },
}

fn command_name(cmd: &Cmd) -> String {
    let (group, op) = match cmd {
        Cmd::Alg { op } => ("alg", match op {
            AlgCmd::Info { .. } => "info",
            AlgCmd::Basis { .. } => "basis",
            AlgCmd::Check { .. } => "check",
        }),
        Cmd::Mod { op } => ("mod", match op {
            ModCmd::Hom { .. } => "hom",
            ModCmd::Ext { .. } => "ext",
            ModCmd::Pd { .. } => "pd",
            ModCmd::Decompose { .. } => "decompose",
        }),
        Cmd::Gp { op } => ("gp", match op {
            GpCmd::Test { .. } => "test",
            GpCmd::List { .. } => "list",
        }),
        Cmd::Endo { op } => ("endo", match op {
            EndoCmd::Quiver { .. } => "quiver",
            EndoCmd::Present { .. } => "present",
            EndoCmd::Verify { .. } => "verify",
        }),
        Cmd::Sg { op } => ("sg", match op {
            SgCmd::Stablehom { .. } => "stablehom",
            SgCmd::Stabhom { .. } => "stabhom",
            SgCmd::Classify { .. } => "classify",
            SgCmd::Perp { .. } => "perp",
        }),
        Cmd::Dual { op } => ("dual", match op {
            DualCmd::Eta { .. } => "eta",
            DualCmd::Equ1 { .. } => "equ1",
            DualCmd::Perp { .. } => "perp",
        }),
        Cmd::Verify { .. } => ("verify", ""),
    };
    if op.is_empty() { group.to_string() } else { format!("{group} {op}") }
}

fn dispatch(ctx: &Ctx, cmd: &Cmd) -> quiverkit::Result<Outcome> {
    use commands as c;
    match cmd {
        Cmd::Alg { op } => match op {
            AlgCmd::Info { file } => c::alg_info(ctx, file),
            AlgCmd::Basis { file } => c::alg_basis(ctx, file),
            AlgCmd::Check { file } => c::alg_check(ctx, file),
        },
        Cmd::Mod { op } => match op {
            ModCmd::Hom { file, x, y } => c::mod_hom(ctx, file, x, y),
            ModCmd::Ext { file, degree, x, y } => c::mod_ext(ctx, file, *degree, x, y),
            ModCmd::Pd { file, x } => c::mod_pd(ctx, file, x),
            ModCmd::Decompose { file, x } => c::mod_decompose(ctx, file, x),
        },
        Cmd::Gp { op } => match op {
            GpCmd::Test { file, x } => c::gp_test(ctx, file, x),
            GpCmd::List { file } => c::gp_list(ctx, file),
        },
        Cmd::Endo { op } => match op {
            EndoCmd::Quiver { file, m } => c::endo_quiver(ctx, file, m),
            EndoCmd::Present { file, m } => c::endo_present(ctx, file, m),
            EndoCmd::Verify { file, m, claim } => c::endo_verify(ctx, file, m, claim),
        },
        Cmd::Sg { op } => match op {
            SgCmd::Stablehom { file, x, y } => c::sg_stablehom(ctx, file, x, y),
            SgCmd::Stabhom { file, x, y, shift } => c::sg_stabhom(ctx, file, x, y, *shift),
            SgCmd::Classify { file } => c::sg_classify(ctx, file),
            SgCmd::Perp { file, m } => c::sg_perp(ctx, file, m),
        },
        Cmd::Dual { op } => match op {
            DualCmd::Eta { file, x } => c::dual_eta(ctx, file, x),
            DualCmd::Equ1 { file } => c::dual_equ1(ctx, file),
            DualCmd::Perp { file, e } => c::dual_perp(ctx, file, e),
        },
        Cmd::Verify { scenario } => c::verify(ctx, scenario),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let field = match cli.field.as_deref().map(commands::parse_field).transpose() {
        Ok(f) => f,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let ctx = Ctx { field, cap: cli.cap };
    let name = command_name(&cli.cmd);
    let out = match dispatch(&ctx, &cli.cmd) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let doc = match &cli.cmd {
        Cmd::Verify { .. } => out.json.clone(),
        _ => json!({
            "command": name,
            "status": out.status,
            "result": out.json,
            "version": env!("CARGO_PKG_VERSION"),
        }),
    };
    let rendered = serde_json::to_string_pretty(&doc).expect("report serializes");
    match &cli.json {
        Some(p) if p.as_os_str() == "-" => println!("{rendered}"),
        Some(p) => {
            print!("{}", out.text);
            if let Err(e) = std::fs::write(p, rendered + "\n") {
                eprintln!("error: cannot write {}: {e}", p.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{}", out.text),
    }
    match out.status {
        Status::Pass => ExitCode::SUCCESS,
        Status::Fail => ExitCode::from(1),
        Status::Inconclusive if cli.strict => ExitCode::from(3),
        Status::Inconclusive => ExitCode::SUCCESS,
    }
}
