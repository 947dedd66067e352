//! `pa` — exact computations in partition algebras from the command line.
//!
//! Every verb prints human-readable text by default and the module-standard
//! JSON with `--json`.  Numeric output is always exact (rational strings,
//! never floats), and JSON output is byte-stable across runs unless `--meta`
//! adds a provenance header.  Exit codes: 0 success, 1 a verification ran
//! and failed, 2 usage or domain errors (one-line diagnostic on stderr).

mod suites;

use std::fmt::Display;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use pa_core::algebra::{
    check_presentation, juxtapose, mul_diagram, mul_orbit, to_diagram, to_orbit, AlgebraElement,
    Basis, XiSpec,
};
use pa_core::ideal::{
    ideal_closure_with, propagating_ideal, verify_enn_generation, verify_kernel_generation,
    ClosureOptions,
};
use pa_core::idempotent::{
    c_const, essential_idempotent, two_row_character, verify_noncentrality, verify_square_identity,
    verify_steps, verify_xief, xi, xi_half, CycleType,
};
use pa_core::report::VerificationReport;
use pa_core::scalar::Scalar;
use pa_core::schurweyl::{centralizer_dim, commutant_check, kernel_basis, phi};
use pa_core::setpart::{enumerate, Level, SetPartition};
use pa_core::PaError;

#[derive(Parser)]
#[command(name = "pa", version, about = "Exact computations in partition algebras")]
struct Cli {
    /// Emit JSON instead of human-readable text
    #[arg(long, global = true)]
    json: bool,
    /// Prepend provenance metadata (tool version, timestamp) to the output
    #[arg(long, global = true)]
    meta: bool,
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Clone, Copy, ValueEnum)]
enum BasisArg {
    Diagram,
    Orbit,
}

impl From<BasisArg> for Basis {
    fn from(b: BasisArg) -> Basis {
        match b {
            BasisArg::Diagram => Basis::Diagram,
            BasisArg::Orbit => Basis::Orbit,
        }
    }
}

#[derive(Subcommand)]
enum Verb {
    /// List the set partitions at a level in canonical order
    Enumerate {
        /// Level, e.g. "2" or "5/2"
        #[arg(long)]
        level: String,
        /// Restrict to rook partitions (blocks of size <= 2 crossing rows)
        #[arg(long)]
        rook: bool,
        /// Print only the number of partitions
        #[arg(long)]
        count: bool,
    },
    /// Multiply two basis elements
    Mul {
        #[arg(long, value_enum)]
        basis: BasisArg,
        #[arg(long)]
        level: String,
        /// The algebra parameter, an exact rational such as "5" or "-7/2"
        #[arg(long)]
        xi: String,
        /// Left factor, e.g. "1,2,3|4,5,6"
        #[arg(long)]
        a: String,
        /// Right factor
        #[arg(long)]
        b: String,
    },
    /// Expand a basis element of one basis over the other basis
    Convert {
        #[arg(long)]
        level: String,
        #[arg(long)]
        xi: String,
        /// Basis the input partition is read in
        #[arg(long, value_enum)]
        from: BasisArg,
        #[arg(long)]
        pi: String,
    },
    /// Matrix of a basis element under the tensor-space representation
    Phi {
        #[arg(long)]
        level: String,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum)]
        basis: BasisArg,
        #[arg(long)]
        pi: String,
    },
    /// Dimensions attached to the representation kernel at a level
    Kernel {
        #[arg(long)]
        level: String,
        #[arg(long)]
        n: usize,
    },
    /// Essential idempotent data
    Idempotent {
        #[command(subcommand)]
        which: IdempotentCmd,
    },
    /// Central idempotent supported on rook partitions
    Xi {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: usize,
        /// Build the half-level variant (one appended strand)
        #[arg(long)]
        half: bool,
        /// Expand over the diagram basis instead of the orbit basis
        #[arg(long)]
        diagram: bool,
    },
    /// Ideal-closure linear algebra
    Ideal {
        #[command(subcommand)]
        which: IdealCmd,
    },
    /// Verification suites (exit 1 when a checked identity fails)
    Verify {
        #[command(subcommand)]
        which: VerifyCmd,
    },
    /// Two-row symmetric-group character value
    Character {
        #[arg(long)]
        n: usize,
        /// Second row length j of the shape [n-j, j]
        #[arg(long)]
        j: usize,
        /// Cycle type as comma-separated lengths, e.g. "2,1,1"
        #[arg(long = "cycle-type")]
        cycle_type: String,
    },
}

#[derive(Subcommand)]
enum IdempotentCmd {
    /// The essential idempotent e as an orbit-basis element
    E(EArgs),
    /// The constant c with e^2 = c e
    C {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: usize,
    },
}

#[derive(Args)]
struct EArgs {
    /// Level number (with --half: the half level k+1/2)
    #[arg(long)]
    k: usize,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    half: bool,
}

#[derive(Subcommand)]
enum IdealCmd {
    /// Two-sided ideal closure of an idempotent generator
    Close {
        #[arg(long)]
        level: String,
        #[arg(long)]
        n: usize,
        /// Generator: the essential idempotent of the level ("e") or the
        /// padded idempotent e_{n,n} with identity strands ("enn")
        #[arg(long, value_enum)]
        gen: GenArg,
        /// With --gen e: pad the essential idempotent of this lower integer
        /// level with identity strands instead
        #[arg(long)]
        from_level: Option<usize>,
        #[arg(long)]
        override_size_guard: bool,
    },
    /// Span of the diagram basis elements with bounded propagating number
    Propagating {
        #[arg(long)]
        level: String,
        #[arg(long)]
        ell: usize,
        #[arg(long)]
        xi: String,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum GenArg {
    E,
    Enn,
}

#[derive(Subcommand)]
enum VerifyCmd {
    /// Defining relations of the generator presentation
    Presentation {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        xi: String,
    },
    /// Absorption, annihilation and idempotency of the central idempotent
    Steps {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: usize,
    },
    /// Boundary collapse of the central idempotent onto the essential one
    Xief {
        #[arg(long)]
        k: usize,
    },
    /// Square of the padded essential idempotent
    Square {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        ell: usize,
    },
    /// Witness products deciding (non)centrality of the essential idempotent
    Noncentrality {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: usize,
    },
    /// The essential idempotent generates the representation kernel
    Kernel {
        #[arg(long)]
        level: String,
        #[arg(long)]
        n: usize,
    },
    /// The padded idempotent generates the kernel when the level exceeds n
    Enn {
        #[arg(long)]
        level: String,
        #[arg(long)]
        n: usize,
    },
    /// Random symmetric-group elements commute with the representation image
    Commutant {
        #[arg(long)]
        level: String,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 3)]
        trials: usize,
    },
    /// Aggregated suites
    All {
        #[arg(long, value_enum, default_value_t = Profile::Quick)]
        profile: Profile,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Profile {
    /// Small-level suites, a few seconds
    Quick,
    /// The complete documented battery, a few minutes
    Full,
}

/// How a command's payload is rendered.
struct Output {
    json: bool,
    meta: bool,
}

impl Output {
    fn emit<T: Serialize + Display>(&self, value: &T) -> Result<(), PaError> {
        if self.json {
            let body = if self.meta {
                serde_json::to_string(&json!({
                    "meta": meta_block(),
                    "value": value,
                }))?
            } else {
                serde_json::to_string(value)?
            };
            println!("{body}");
        } else {
            if self.meta {
                println!("# pa {} at unix {}", env!("CARGO_PKG_VERSION"), unix_time());
            }
            println!("{value}");
        }
        Ok(())
    }

    /// For payloads without a natural Display: a JSON value plus prepared
    /// human lines.
    fn emit_value(&self, value: &serde_json::Value, human: &str) -> Result<(), PaError> {
        if self.json {
            let body = if self.meta {
                serde_json::to_string(&json!({"meta": meta_block(), "value": value}))?
            } else {
                serde_json::to_string(value)?
            };
            println!("{body}");
        } else {
            if self.meta {
                println!("# pa {} at unix {}", env!("CARGO_PKG_VERSION"), unix_time());
            }
            println!("{human}");
        }
        Ok(())
    }
}

fn unix_time() -> u64 {
    std::time::SystemTime::now()
        .duration_since(std::time::UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0)
}

fn meta_block() -> serde_json::Value {
    json!({
        "tool": "pa",
        "version": env!("CARGO_PKG_VERSION"),
        "unix_time": unix_time(),
    })
}

fn init_threads() {
    if let Ok(v) = std::env::var("PA_THREADS") {
        if let Ok(t) = v.trim().parse::<usize>() {
            if t > 0 {
                // Ignore failure: the pool may already be initialized.
                let _ = rayon::ThreadPoolBuilder::new()
                    .num_threads(t)
                    .build_global();
            }
        }
    }
}

fn parse_level(s: &str) -> Result<Level, PaError> {
    let level: Level = s.parse()?;
    level.validate()?;
    Ok(level)
}

fn parse_scalar(s: &str) -> Result<Scalar, PaError> {
    s.parse()
}

fn basis_term(
    level: Level,
    basis: Basis,
    xi: &Scalar,
    pi: &str,
) -> Result<AlgebraElement, PaError> {
    let pi: SetPartition = pi.parse()?;
    AlgebraElement::basis_element(level, basis, XiSpec::Numeric(xi.clone()), pi)
}

/// Runs a report-producing action and prints the report; exit 1 on failure.
fn finish_report(out: &Output, rep: VerificationReport) -> Result<u8, PaError> {
    out.emit(&rep)?;
    Ok(if rep.pass() { 0 } else { 1 })
}

fn run(cli: Cli) -> Result<u8, PaError> {
    let out = Output {
        json: cli.json,
        meta: cli.meta,
    };
    match cli.verb {
        Verb::Enumerate { level, rook, count } => {
            let level = parse_level(&level)?;
            let parts: Vec<SetPartition> = enumerate(level)
                .into_iter()
                .filter(|p| !rook || p.is_rook())
                .collect();
            if count {
                out.emit_value(&json!(parts.len()), &parts.len().to_string())?;
            } else {
                let strings: Vec<String> = parts.iter().map(|p| p.to_string()).collect();
                out.emit_value(&json!(strings), &strings.join("\n"))?;
            }
            Ok(0)
        }
        Verb::Mul {
            basis,
            level,
            xi,
            a,
            b,
        } => {
            let level = parse_level(&level)?;
            let basis: Basis = basis.into();
            let xi = parse_scalar(&xi)?;
            let a = basis_term(level, basis, &xi, &a)?;
            let b = basis_term(level, basis, &xi, &b)?;
            let prod = match basis {
                Basis::Diagram => mul_diagram(&a, &b)?,
                Basis::Orbit => mul_orbit(&a, &b)?,
            };
            out.emit(&prod)?;
            Ok(0)
        }
        Verb::Convert {
            level,
            xi,
            from,
            pi,
        } => {
            let level = parse_level(&level)?;
            let xi = parse_scalar(&xi)?;
            let a = basis_term(level, from.into(), &xi, &pi)?;
            let converted = match from {
                BasisArg::Diagram => to_orbit(&a)?,
                BasisArg::Orbit => to_diagram(&a)?,
            };
            out.emit(&converted)?;
            Ok(0)
        }
        Verb::Phi {
            level,
            n,
            basis,
            pi,
        } => {
            let level = parse_level(&level)?;
            let a = basis_term(level, basis.into(), &Scalar::from(n as i64), &pi)?;
            let m = phi(&a, n)?;
            out.emit(&m)?;
            Ok(0)
        }
        Verb::Kernel { level, n } => {
            let level = parse_level(&level)?;
            let ambient = level.dimension();
            let centralizer = centralizer_dim(level, n);
            let kernel = kernel_basis(level, n).len();
            let v = json!({
                "ambient": ambient.to_string(),
                "centralizer": centralizer,
                "kernel": kernel,
            });
            let human = format!(
                "ambient {ambient}\ncentralizer {centralizer}\nkernel {kernel}"
            );
            out.emit_value(&v, &human)?;
            Ok(0)
        }
        Verb::Idempotent { which } => match which {
            IdempotentCmd::E(args) => {
                let level = if args.half {
                    Level::Half(args.k)
                } else {
                    Level::Integer(args.k)
                };
                let e = essential_idempotent(level, args.n)?;
                out.emit(&e)?;
                Ok(0)
            }
            IdempotentCmd::C { k, n } => {
                let c = c_const(k, n)?;
                out.emit_value(&json!(c.to_string()), &c.to_string())?;
                Ok(0)
            }
        },
        Verb::Xi {
            k,
            n,
            half,
            diagram,
        } => {
            let mut el = if half { xi_half(k, n)? } else { xi(k, n)? };
            if diagram {
                el = to_diagram(&el)?;
            }
            out.emit(&el)?;
            Ok(0)
        }
        Verb::Ideal { which } => match which {
            IdealCmd::Close {
                level,
                n,
                gen,
                from_level,
                override_size_guard,
            } => {
                let level = parse_level(&level)?;
                let generator = build_closure_generator(level, n, gen, from_level)?;
                let opts = ClosureOptions {
                    override_size_guard,
                };
                let run = ideal_closure_with(&[generator], level, &Scalar::from(n as i64), &opts)?;
                let ambient = run.basis.ambient_dim();
                let kernel_dim = ambient - centralizer_dim(level, n);
                let mut vanishes = true;
                for i in 0..run.basis.dim() {
                    if !phi(&run.basis.row_element(i)?, n)?.is_zero() {
                        vanishes = false;
                        break;
                    }
                }
                let pass = run.basis.dim() == kernel_dim && vanishes;
                let v = json!({
                    "rounds": run.rounds,
                    "dim": run.basis.dim(),
                    "kernel_dim": kernel_dim,
                    "pass": pass,
                });
                let human = format!(
                    "rounds {:?}\ndim {}\nkernel_dim {}\npass {}",
                    run.rounds,
                    run.basis.dim(),
                    kernel_dim,
                    pass
                );
                out.emit_value(&v, &human)?;
                Ok(if pass { 0 } else { 1 })
            }
            IdealCmd::Propagating { level, ell, xi } => {
                let level = parse_level(&level)?;
                let xi = parse_scalar(&xi)?;
                let b = propagating_ideal(level, ell, &xi)?;
                let v = json!({"dim": b.dim(), "ambient": b.ambient_dim()});
                let human = format!("dim {}\nambient {}", b.dim(), b.ambient_dim());
                out.emit_value(&v, &human)?;
                Ok(0)
            }
        },
        Verb::Verify { which } => match which {
            VerifyCmd::Presentation { k, xi } => {
                let xi = parse_scalar(&xi)?;
                finish_report(&out, check_presentation(k, &xi)?)
            }
            VerifyCmd::Steps { k, n } => finish_report(&out, verify_steps(k, n)?),
            VerifyCmd::Xief { k } => finish_report(&out, verify_xief(k)?),
            VerifyCmd::Square { n, ell } => finish_report(&out, verify_square_identity(n, ell)?),
            VerifyCmd::Noncentrality { k, n } => {
                finish_report(&out, verify_noncentrality(k, n)?)
            }
            VerifyCmd::Kernel { level, n } => {
                let level = parse_level(&level)?;
                finish_report(&out, verify_kernel_generation(level, n)?)
            }
            VerifyCmd::Enn { level, n } => {
                let level = parse_level(&level)?;
                finish_report(&out, verify_enn_generation(level, n)?)
            }
            VerifyCmd::Commutant { level, n, trials } => {
                let level = parse_level(&level)?;
                finish_report(&out, commutant_check(level, n, trials)?)
            }
            VerifyCmd::All { profile } => {
                let rep = match profile {
                    Profile::Quick => suites::quick()?,
                    Profile::Full => suites::full()?,
                };
                finish_report(&out, rep)
            }
        },
        Verb::Character { n, j, cycle_type } => {
            let parts: Result<Vec<usize>, _> =
                cycle_type.split(',').map(|p| p.trim().parse()).collect();
            let parts =
                parts.map_err(|_| PaError::domain(format!("bad cycle type `{cycle_type}`")))?;
            let ct = CycleType::new(parts)?;
            let chi = two_row_character(&ct, n, j)?;
            out.emit_value(&json!(chi.to_string()), &chi.to_string())?;
            Ok(0)
        }
    }
}

/// The generator for `ideal close`: the essential idempotent of the level,
/// a lower-level essential idempotent padded with identity strands, or the
/// padded idempotent e_{n,n}.
fn build_closure_generator(
    level: Level,
    n: usize,
    gen: GenArg,
    from_level: Option<usize>,
) -> Result<AlgebraElement, PaError> {
    let m = level.storage_k();
    match (gen, from_level) {
        (GenArg::E, None) => essential_idempotent(level, n),
        (GenArg::E, Some(l)) => {
            if l > m {
                return Err(PaError::domain(format!(
                    "--from-level {l} exceeds the target level"
                )));
            }
            let e = essential_idempotent(Level::Integer(l), n)?;
            let mut g = juxtapose(&e, m - l, Basis::Diagram)?;
            if level.is_half() {
                g = pa_core::algebra::restrict_to_half(&g)?;
            }
            Ok(g)
        }
        (GenArg::Enn, None) => {
            if m < n {
                return Err(PaError::domain(format!(
                    "the padded idempotent needs level >= n, got level {level}, n = {n}"
                )));
            }
            let e = essential_idempotent(Level::Integer(n), n)?;
            let mut g = juxtapose(&e, m - n, Basis::Diagram)?;
            if level.is_half() {
                g = pa_core::algebra::restrict_to_half(&g)?;
            }
            Ok(g)
        }
        (GenArg::Enn, Some(_)) => Err(PaError::domain(
            "--from-level only applies to --gen e",
        )),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    init_threads();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
