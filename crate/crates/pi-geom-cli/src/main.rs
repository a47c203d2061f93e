//! Command-line front end: sample rotational surfaces, loxodromes and
//! geodesics to CSV/JSON, and run the numerical verification suites.
//!
//! Exit codes: 0 on success, 2 on construction or parse errors (clap
//! uses the same code for bad flags), 3 when a requested verification
//! fails.

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use pi_geom::verify::{
    verify_all, verify_closed_form_curve, verify_core, verify_geodesic, verify_integrated_curve,
    verify_loxodrome, verify_loxodrome_curve, verify_meridian_curve, DEFAULT_SEED,
};
use pi_geom::{
    integrate, meridian_geodesic, parse, GeodesicClosedForm, Loxodrome, LoxodromeKind,
    MeridianKind, ParamCurve, RotationalSurface, SampleTable, Sign, TableMeta,
    VerificationReport,
};

#[derive(Parser)]
#[command(
    name = "pi-geom",
    version,
    about = "Rotational surfaces, loxodromes and geodesics in pseudo-isotropic space",
    after_help = "Exit codes: 0 success, 2 construction/parse error, 3 verification failure."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    /// Profile in the xz-plane; meridians are space-like
    SpacelikeMeridian,
    /// Profile in the yz-plane; meridians are time-like
    TimelikeMeridian,
}

impl From<KindArg> for MeridianKind {
    fn from(k: KindArg) -> MeridianKind {
        match k {
            KindArg::SpacelikeMeridian => MeridianKind::SpacelikeMeridian,
            KindArg::TimelikeMeridian => MeridianKind::TimelikeMeridian,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum LoxKindArg {
    /// Space-like curve, space-like meridian
    Ss,
    /// Time-like curve, space-like meridian
    Ts,
    /// Space-like curve, time-like meridian
    St,
    /// Time-like curve, time-like meridian
    Tt,
}

impl From<LoxKindArg> for LoxodromeKind {
    fn from(k: LoxKindArg) -> LoxodromeKind {
        match k {
            LoxKindArg::Ss => LoxodromeKind::SS,
            LoxKindArg::Ts => LoxodromeKind::TS,
            LoxKindArg::St => LoxodromeKind::ST,
            LoxKindArg::Tt => LoxodromeKind::TT,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    All,
    Core,
    Loxodrome,
    Geodesic,
}

#[derive(Args)]
struct OutputOpts {
    /// Output format for the sample table
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Write the table to a file instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

fn sign_from(value: i8, flag: &str) -> Result<Sign> {
    match value {
        1 => Ok(Sign::Plus),
        -1 => Ok(Sign::Minus),
        other => bail!("{flag} must be 1 or -1, got {other}"),
    }
}

#[derive(Subcommand)]
enum Command {
    /// Sample a rotational surface on a (u, v) grid
    Surface {
        #[arg(long, value_enum)]
        kind: KindArg,
        /// Profile expression f(u), e.g. "exp(u)"
        #[arg(long)]
        profile: String,
        #[arg(long, allow_negative_numbers = true)]
        u_min: f64,
        #[arg(long, allow_negative_numbers = true)]
        u_max: f64,
        #[arg(long, allow_negative_numbers = true)]
        v_min: f64,
        #[arg(long, allow_negative_numbers = true)]
        v_max: f64,
        /// Grid points along u
        #[arg(long, default_value_t = 50)]
        nu: usize,
        /// Grid points along v
        #[arg(long, default_value_t = 50)]
        nv: usize,
        #[command(flatten)]
        output: OutputOpts,
    },
    /// Sample a loxodrome; --verify checks unit speed and the constant
    /// meridian angle
    Loxodrome {
        #[arg(long, value_enum)]
        kind: LoxKindArg,
        /// Constant meridian angle (must be > 0 for ts/st)
        #[arg(long)]
        angle: f64,
        /// u-branch, 1 or -1 (tt fixes -1)
        #[arg(long, allow_negative_numbers = true)]
        sign_u: Option<i8>,
        /// v-branch, 1 or -1
        #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
        sign_v: i8,
        #[arg(long)]
        profile: String,
        #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
        t_min: f64,
        #[arg(long, default_value_t = 2.0, allow_negative_numbers = true)]
        t_max: f64,
        #[arg(long, default_value_t = 500)]
        samples: usize,
        /// Run the unit-speed / constant-angle checks (report on stderr)
        #[arg(long)]
        verify: bool,
        #[command(flatten)]
        output: OutputOpts,
    },
    /// Sample a geodesic (closed form, meridian, or RK4 integration)
    Geodesic {
        #[command(subcommand)]
        mode: GeodesicMode,
    },
    /// Run the numerical verification suites
    Verify {
        #[arg(value_enum, default_value_t = SuiteArg::All)]
        suite: SuiteArg,
        /// Seed for the randomized draws
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Report format: csv renders text lines, json the full report
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        /// Write the report to a file instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum GeodesicMode {
    /// The closed-form family; the t-range must satisfy
    /// (c1 t + c2)^2 > c^2 (t-min seeds the branch)
    ClosedForm {
        /// Angular constant (u^2 v' along the curve), non-zero
        #[arg(long, allow_negative_numbers = true)]
        c: f64,
        /// First-integral constant, > 0
        #[arg(long, allow_negative_numbers = true)]
        c1: f64,
        #[arg(long, allow_negative_numbers = true)]
        c2: f64,
        /// Additive constant of v(t)
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        c5: f64,
        /// u-branch, 1 or -1
        #[arg(long, default_value_t = -1, allow_negative_numbers = true)]
        sign_u: i8,
        #[arg(long, value_enum)]
        kind: KindArg,
        #[arg(long)]
        profile: String,
        #[arg(long, allow_negative_numbers = true)]
        t_min: f64,
        #[arg(long, allow_negative_numbers = true)]
        t_max: f64,
        #[arg(long, default_value_t = 500)]
        samples: usize,
        /// Check residuals, the conserved quantity and the first
        /// integral (report on stderr)
        #[arg(long)]
        verify: bool,
        #[command(flatten)]
        output: OutputOpts,
    },
    /// The meridian geodesic u = slope * t + intercept at fixed v
    Meridian {
        #[arg(long, allow_negative_numbers = true)]
        slope: f64,
        #[arg(long, allow_negative_numbers = true)]
        intercept: f64,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        v0: f64,
        #[arg(long, value_enum)]
        kind: KindArg,
        #[arg(long)]
        profile: String,
        #[arg(long, allow_negative_numbers = true)]
        t_min: f64,
        #[arg(long, allow_negative_numbers = true)]
        t_max: f64,
        #[arg(long, default_value_t = 500)]
        samples: usize,
        #[arg(long)]
        verify: bool,
        #[command(flatten)]
        output: OutputOpts,
    },
    /// Fixed-step RK4 on the geodesic system, seeded either from an
    /// explicit state (--u0 --v0 --du0 --dv0) or from the closed form
    /// (--c --c1 --c2 [--c5] [--sign-u]) evaluated at t-min
    Integrate {
        #[arg(long, allow_negative_numbers = true)]
        u0: Option<f64>,
        #[arg(long, allow_negative_numbers = true)]
        v0: Option<f64>,
        #[arg(long, allow_negative_numbers = true)]
        du0: Option<f64>,
        #[arg(long, allow_negative_numbers = true)]
        dv0: Option<f64>,
        #[arg(long, allow_negative_numbers = true)]
        c: Option<f64>,
        #[arg(long, allow_negative_numbers = true)]
        c1: Option<f64>,
        #[arg(long, allow_negative_numbers = true)]
        c2: Option<f64>,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        c5: f64,
        #[arg(long, default_value_t = -1, allow_negative_numbers = true)]
        sign_u: i8,
        #[arg(long, value_enum)]
        kind: KindArg,
        #[arg(long)]
        profile: String,
        #[arg(long, allow_negative_numbers = true)]
        t_min: f64,
        #[arg(long, allow_negative_numbers = true)]
        t_max: f64,
        /// RK4 step
        #[arg(long, default_value_t = 1e-3)]
        step: f64,
        #[arg(long, default_value_t = 500)]
        samples: usize,
        /// Check conserved-quantity drift and node residuals; with
        /// closed-form seeding, also cross-check the trajectory
        #[arg(long)]
        verify: bool,
        #[command(flatten)]
        output: OutputOpts,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn emit_table(table: &SampleTable, output: &OutputOpts) -> Result<()> {
    let text = match output.format {
        Format::Csv => table.to_csv(),
        Format::Json => {
            let mut s = table.to_json();
            s.push('\n');
            s
        }
    };
    match &output.out {
        Some(path) => std::fs::write(path, text)
            .with_context(|| format!("writing {}", path.display()))?,
        None => print!("{text}"),
    }
    Ok(())
}

/// Prints the verification report to stderr and picks the exit code.
fn finish_verified(report: &VerificationReport) -> ExitCode {
    eprint!("{}", report.render_text());
    if report.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(3)
    }
}

fn run(command: Command) -> Result<ExitCode> {
    match command {
        Command::Surface { kind, profile, u_min, u_max, v_min, v_max, nu, nv, output } => {
            if u_min <= 0.0 && u_max >= 0.0 {
                bail!(
                    "u-range [{u_min}, {u_max}] contains 0, where the induced metric \
                     degenerates; sample either side of the axis"
                );
            }
            let ast = parse(&profile).context("parsing --profile")?;
            let kind: MeridianKind = kind.into();
            let surface = RotationalSurface::new(kind, ast);
            let meta = TableMeta::new(
                format!("surface kind={kind}"),
                format!("u in [{u_min}, {u_max}] x v in [{v_min}, {v_max}], {nu}x{nv} samples"),
            )
            .with_param("profile", &profile)
            .with_param("kind", kind);
            let table = SampleTable::from_surface(&surface, meta, (u_min, u_max), (v_min, v_max), nu, nv)?;
            emit_table(&table, &output)?;
            Ok(ExitCode::SUCCESS)
        }

        Command::Loxodrome {
            kind,
            angle,
            sign_u,
            sign_v,
            profile,
            t_min,
            t_max,
            samples,
            verify,
            output,
        } => {
            let kind: LoxodromeKind = kind.into();
            let su = match sign_u {
                Some(v) => sign_from(v, "--sign-u")?,
                None if kind == LoxodromeKind::TT => Sign::Minus,
                None => Sign::Plus,
            };
            let sv = sign_from(sign_v, "--sign-v")?;
            let ast = parse(&profile).context("parsing --profile")?;
            let lox = Loxodrome::new(kind, angle, su, sv, ast, (t_min, t_max))?;
            let meta = TableMeta::new(
                format!("loxodrome kind={}", kind.as_str()),
                format!("t in [{t_min}, {t_max}], {samples} samples"),
            )
            .with_param("angle", angle)
            .with_param("sign_u", su)
            .with_param("sign_v", sv)
            .with_param("profile", &profile);
            let table = SampleTable::from_curve(&lox.to_curve(), meta, t_min, t_max, samples)?;
            emit_table(&table, &output)?;
            if verify {
                let report = verify_loxodrome_curve(&lox, t_min, t_max, samples)?;
                return Ok(finish_verified(&report));
            }
            Ok(ExitCode::SUCCESS)
        }

        Command::Geodesic { mode } => run_geodesic(mode),

        Command::Verify { suite, seed, format, out } => {
            let report = match suite {
                SuiteArg::All => verify_all(seed),
                SuiteArg::Core => verify_core(seed),
                SuiteArg::Loxodrome => verify_loxodrome(seed),
                SuiteArg::Geodesic => verify_geodesic(seed),
            };
            let text = match format {
                Format::Csv => report.render_text(),
                Format::Json => {
                    let mut s = report.to_json();
                    s.push('\n');
                    s
                }
            };
            match out {
                Some(path) => std::fs::write(&path, text)
                    .with_context(|| format!("writing {}", path.display()))?,
                None => print!("{text}"),
            }
            Ok(if report.passed() { ExitCode::SUCCESS } else { ExitCode::from(3) })
        }
    }
}

fn run_geodesic(mode: GeodesicMode) -> Result<ExitCode> {
    match mode {
        GeodesicMode::ClosedForm {
            c,
            c1,
            c2,
            c5,
            sign_u,
            kind,
            profile,
            t_min,
            t_max,
            samples,
            verify,
            output,
        } => {
            let su = sign_from(sign_u, "--sign-u")?;
            let ast = parse(&profile).context("parsing --profile")?;
            let kind: MeridianKind = kind.into();
            let geo = GeodesicClosedForm::new(c, c1, c2, c5, su, kind, ast, t_min)?;
            let meta = TableMeta::new(
                "geodesic closed-form",
                format!("t in [{t_min}, {t_max}], {samples} samples"),
            )
            .with_param("c", c)
            .with_param("c1", c1)
            .with_param("c2", c2)
            .with_param("c5", c5)
            .with_param("sign_u", su)
            .with_param("kind", kind)
            .with_param("profile", &profile);
            let table = SampleTable::from_curve(&geo.to_curve(), meta, t_min, t_max, samples)?;
            emit_table(&table, &output)?;
            if verify {
                let report = verify_closed_form_curve(&geo, t_min, t_max, samples)?;
                return Ok(finish_verified(&report));
            }
            Ok(ExitCode::SUCCESS)
        }

        GeodesicMode::Meridian {
            slope,
            intercept,
            v0,
            kind,
            profile,
            t_min,
            t_max,
            samples,
            verify,
            output,
        } => {
            let ast = parse(&profile).context("parsing --profile")?;
            let kind: MeridianKind = kind.into();
            let curve = meridian_geodesic(slope, intercept, v0, kind, ast)?;
            let meta = TableMeta::new(
                "geodesic meridian",
                format!("t in [{t_min}, {t_max}], {samples} samples"),
            )
            .with_param("slope", slope)
            .with_param("intercept", intercept)
            .with_param("v0", v0)
            .with_param("kind", kind)
            .with_param("profile", &profile);
            let table = SampleTable::from_curve(&curve, meta, t_min, t_max, samples)?;
            emit_table(&table, &output)?;
            if verify {
                let report = verify_meridian_curve(&curve, t_min, t_max, samples)?;
                return Ok(finish_verified(&report));
            }
            Ok(ExitCode::SUCCESS)
        }

        GeodesicMode::Integrate {
            u0,
            v0,
            du0,
            dv0,
            c,
            c1,
            c2,
            c5,
            sign_u,
            kind,
            profile,
            t_min,
            t_max,
            step,
            samples,
            verify,
            output,
        } => {
            let ast = parse(&profile).context("parsing --profile")?;
            let kind: MeridianKind = kind.into();
            let explicit = [u0, v0, du0, dv0];
            let closed = [c, c1, c2];
            let (state, reference) = if closed.iter().any(Option::is_some) {
                if explicit.iter().any(Option::is_some) {
                    bail!("pass either --u0/--v0/--du0/--dv0 or --c/--c1/--c2, not both");
                }
                let (Some(c), Some(c1), Some(c2)) = (c, c1, c2) else {
                    bail!("closed-form seeding needs --c, --c1 and --c2");
                };
                let su = sign_from(sign_u, "--sign-u")?;
                let geo = GeodesicClosedForm::new(c, c1, c2, c5, su, kind, ast.clone(), t_min)?;
                (geo.state_at(t_min)?, Some(geo))
            } else {
                let (Some(u0), Some(v0), Some(du0), Some(dv0)) = (u0, v0, du0, dv0) else {
                    bail!("explicit seeding needs --u0, --v0, --du0 and --dv0");
                };
                (pi_geom::GeodesicState { u: u0, v: v0, du: du0, dv: dv0 }, None)
            };
            let curve: ParamCurve = integrate(kind, ast, state, (t_min, t_max), step)?;
            let meta = TableMeta::new(
                "geodesic rk4",
                format!("t in [{t_min}, {t_max}], {samples} samples, step {step}"),
            )
            .with_param("u0", state.u)
            .with_param("v0", state.v)
            .with_param("du0", state.du)
            .with_param("dv0", state.dv)
            .with_param("kind", kind)
            .with_param("profile", &profile)
            .with_param("step", step);
            let table = SampleTable::from_curve(&curve, meta, t_min, t_max, samples)?;
            emit_table(&table, &output)?;
            if verify {
                let report = verify_integrated_curve(&curve, reference.as_ref())?;
                return Ok(finish_verified(&report));
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}
