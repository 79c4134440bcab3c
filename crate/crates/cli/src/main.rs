mod input;

use clap::{Parser, Subcommand, ValueEnum};
use quadrot_apps::{
    largest_empty_square_in_box, largest_empty_square_pinned, mes_classes, min_annulus, min_annulus_at_box_events,
    AnnulusResult, Objective,
};
use quadrot_geom::{validate_general_position, PointSet, Tolerance, QUARTER};
use quadrot_kinetic::{run_rotation_with, write_jsonl, KineticConfig, KineticError, RotationTrace};
use quadrot_testkit::{brute_force_four_squares, compare_traces, TestkitError};
use quadrot_vd::{build_diagram_reference, build_diagram_traced, svg, VdError};
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("general position violated: {0}")]
    GeneralPosition(String),
    #[error("internal invariant broken: {0}")]
    Invariant(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Parse(_) => 2,
            CliError::GeneralPosition(_) => 3,
            CliError::Invariant(_) => 4,
            CliError::Io(_) => 5,
        }
    }
}

impl From<KineticError> for CliError {
    fn from(e: KineticError) -> Self {
        match e {
            KineticError::GeneralPosition { .. } | KineticError::Geom(_) | KineticError::Vd(VdError::GeneralPosition(..)) => {
                CliError::GeneralPosition(e.to_string())
            }
            _ => CliError::Invariant(e.to_string()),
        }
    }
}

impl From<VdError> for CliError {
    fn from(e: VdError) -> Self {
        match e {
            VdError::Structure(_) => CliError::Invariant(e.to_string()),
            _ => CliError::GeneralPosition(e.to_string()),
        }
    }
}

impl From<TestkitError> for CliError {
    fn from(e: TestkitError) -> Self {
        match e {
            TestkitError::InvalidParameter(_) => CliError::Parse(e.to_string()),
            TestkitError::GeneralPosition(_) | TestkitError::Geom(_) | TestkitError::RetriesExhausted(_) => {
                CliError::GeneralPosition(e.to_string())
            }
            TestkitError::Vd(v) => v.into(),
        }
    }
}

impl From<quadrot_apps::AppError> for CliError {
    fn from(e: quadrot_apps::AppError) -> Self {
        match e {
            quadrot_apps::AppError::Trace(_) => CliError::Invariant(e.to_string()),
            _ => CliError::GeneralPosition(e.to_string()),
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "quadrot", version, about = "Empty squares and Voronoi diagrams under rotating axes")]
struct Cli {
    /// Angular tolerance in radians.
    #[arg(long, global = true, env = "QUADROT_EPS_ANGLE")]
    eps_angle: Option<f64>,
    /// Length tolerance in units of the input coordinates.
    #[arg(long, global = true, env = "QUADROT_EPS_LEN")]
    eps_len: Option<f64>,
    /// Rebuild the diagram from scratch after every event and compare.
    #[arg(long, global = true, env = "QUADROT_PARANOID")]
    paranoid: bool,
    /// Output file; standard output when absent.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum LesVariant {
    Pinned,
    Boxed,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum AnnulusObjective {
    Width,
    Area,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Family {
    Quad,
    Linear,
    Random,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// All 4-squares over a quarter turn, one JSON line each, then a summary.
    Squares { input: PathBuf },
    /// SVG of the diagram at one orientation in [0, π/2).
    Vd {
        input: PathBuf,
        #[arg(long, allow_negative_numbers = true)]
        theta: f64,
    },
    /// The full rotation trace as JSON lines.
    Rotate { input: PathBuf },
    /// Largest empty square over all orientations.
    Les {
        input: PathBuf,
        #[arg(long, value_enum, default_value = "pinned")]
        variant: LesVariant,
    },
    /// Minimum square annulus over all orientations.
    Annulus {
        input: PathBuf,
        #[arg(long, value_enum, default_value = "width")]
        objective: AnnulusObjective,
    },
    /// Generate a point set as CSV.
    Gen {
        #[arg(value_enum)]
        family: Family,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0.1)]
        eps: f64,
        /// Point spacing of the linear family.
        #[arg(long, default_value_t = 10.0)]
        spacing: f64,
        #[arg(long, env = "QUADROT_SEED", default_value_t = 0)]
        seed: u64,
        /// Relative perturbation; the quadratic family needs some to be in
        /// general position.
        #[arg(long, default_value_t = 0.0)]
        jitter: f64,
    },
    /// Compare the rotation against brute force on seeded random sets.
    Verify {
        #[arg(long, default_value_t = 10)]
        sets: usize,
        #[arg(long, default_value_t = 4)]
        n_min: usize,
        #[arg(long, default_value_t = 12)]
        n_max: usize,
        #[arg(long, env = "QUADROT_SEED", default_value_t = 0)]
        seed: u64,
    },
}

struct Ctx {
    eps_angle: Option<f64>,
    eps_len: Option<f64>,
    paranoid: bool,
    out: Option<PathBuf>,
}

impl Ctx {
    fn tol(&self, ps: &PointSet) -> Result<Tolerance, CliError> {
        let mut t = Tolerance::for_points(ps);
        if let Some(a) = self.eps_angle {
            t.angle = a;
        }
        if let Some(l) = self.eps_len {
            t.len = l;
        }
        if !(t.angle > 0.0 && t.len > 0.0) {
            return Err(CliError::Parse("tolerances must be positive".into()));
        }
        Ok(t)
    }

    fn load(&self, path: &PathBuf) -> Result<PointSet, CliError> {
        input::parse_points(&std::fs::read_to_string(path)?)
    }

    /// Reject inputs the validator flags, printing the witnesses.
    fn require_general_position(&self, ps: &PointSet) -> Result<(), CliError> {
        let v = validate_general_position(ps, &self.tol(ps)?);
        if v.is_empty() {
            return Ok(());
        }
        let ids = |ix: &[u32]| ix.iter().map(|&i| ps.get(i).id.to_string()).collect::<Vec<_>>().join(",");
        let w: Vec<String> = v
            .iter()
            .take(5)
            .map(|x| match x {
                quadrot_geom::Violation::CollinearTriple(t) => format!("collinear ids {}", ids(t)),
                quadrot_geom::Violation::EqualOrthogonalDiagonals(q) => format!("equal orthogonal diagonals ids {}", ids(q)),
                quadrot_geom::Violation::SimultaneousAlignment { first, second, orientation } => {
                    format!("pairs {} and {} align together at {orientation}", ids(first), ids(second))
                }
            })
            .collect();
        Err(CliError::GeneralPosition(format!("{} violation(s): {}", v.len(), w.join("; "))))
    }

    fn rotate(&self, ps: &PointSet) -> Result<RotationTrace, CliError> {
        self.require_general_position(ps)?;
        let mut cfg = if self.paranoid { KineticConfig::paranoid() } else { KineticConfig::default() };
        cfg.tol = Some(self.tol(ps)?);
        Ok(run_rotation_with(ps, &cfg)?)
    }

    fn emit(&self, bytes: &[u8]) -> Result<(), CliError> {
        match &self.out {
            Some(p) => std::fs::write(p, bytes)?,
            None => std::io::stdout().write_all(bytes)?,
        }
        Ok(())
    }
}

fn num(x: f64) -> String {
    format!("{x:.16e}")
}

fn annulus_json(a: &AnnulusResult, objective: &str, source: &str) -> String {
    format!(
        r#"{{"record":"annulus","objective":"{objective}","phi":{},"center":[{},{}],"outer":{},"inner":{},"width":{},"area":{},"source":"{source}"}}"#,
        num(a.phi),
        num(a.center.0),
        num(a.center.1),
        num(a.outer),
        num(a.inner),
        num(a.width),
        num(a.area)
    )
}

fn run(cli: Cli) -> Result<(), CliError> {
    let ctx = Ctx { eps_angle: cli.eps_angle, eps_len: cli.eps_len, paranoid: cli.paranoid, out: cli.out };
    match cli.cmd {
        Cmd::Squares { input } => {
            let ps = ctx.load(&input)?;
            let t = ctx.rotate(&ps)?;
            let mut buf = Vec::new();
            write_jsonl(&t, &ps, &mut buf)?;
            let mut out: Vec<u8> = buf
                .split(|&b| b == b'\n')
                .filter(|l| l.starts_with(br#"{"record":"square""#))
                .flat_map(|l| l.iter().copied().chain([b'\n']))
                .collect();
            let counts: Vec<String> =
                t.type_counts().iter().map(|(k, v)| format!(r#""{}":{v}"#, k.name())).collect();
            out.extend(format!(r#"{{"record":"summary","s4":{},"types":{{{}}}}}"#, t.s4(), counts.join(",")).bytes());
            out.push(b'\n');
            eprintln!("s4 = {}", t.s4());
            ctx.emit(&out)
        }
        Cmd::Vd { input, theta } => {
            if !(0.0..QUARTER).contains(&theta) {
                return Err(CliError::Parse(format!(
                    "theta {theta} is outside [0, pi/2); the same diagram is at {}",
                    quadrot_geom::canonical(theta)
                )));
            }
            let ps = ctx.load(&input)?;
            let tol = ctx.tol(&ps)?;
            let g = if ps.len() <= 30 { build_diagram_reference(&ps, theta, &tol)? } else { build_diagram_traced(&ps, theta, &tol)? };
            ctx.emit(svg::to_svg(&ps, &g, svg::default_viewport(&ps, &g)).as_bytes())
        }
        Cmd::Rotate { input } => {
            let ps = ctx.load(&input)?;
            let t = ctx.rotate(&ps)?;
            let mut buf = Vec::new();
            write_jsonl(&t, &ps, &mut buf)?;
            ctx.emit(&buf)
        }
        Cmd::Les { input, variant } => {
            let ps = ctx.load(&input)?;
            let t = ctx.rotate(&ps)?;
            let classes = mes_classes(&t)?;
            let (r, name) = match variant {
                LesVariant::Pinned => (largest_empty_square_pinned(&ps, &classes)?, "pinned"),
                LesVariant::Boxed => (largest_empty_square_in_box(&ps, &classes)?, "boxed"),
            };
            let line = match r {
                None => format!(r#"{{"record":"les","variant":"{name}","unbounded":true}}"#),
                Some(r) => format!(
                    r#"{{"record":"les","variant":"{name}","phi":{},"center":[{},{}],"radius":{}}}"#,
                    num(r.phi()),
                    num(r.square.center.0),
                    num(r.square.center.1),
                    num(r.radius())
                ),
            };
            ctx.emit(format!("{line}\n").as_bytes())
        }
        Cmd::Annulus { input, objective } => {
            let ps = ctx.load(&input)?;
            let (o, name) = match objective {
                AnnulusObjective::Width => (Objective::Width, "width"),
                AnnulusObjective::Area => (Objective::Area, "area"),
            };
            let line = match ctx.rotate(&ps) {
                Ok(t) => annulus_json(&min_annulus(&ps, &mes_classes(&t)?, o)?, name, "classes"),
                Err(CliError::GeneralPosition(why)) => {
                    eprintln!("no rotation trace ({why}); searching bounding-box event orientations only");
                    annulus_json(&min_annulus_at_box_events(&ps, o)?, name, "box-events")
                }
                Err(e) => return Err(e),
            };
            ctx.emit(format!("{line}\n").as_bytes())
        }
        Cmd::Gen { family, n, eps, spacing, seed, jitter } => {
            let ps = match family {
                Family::Quad => quadrot_testkit::gen_quadratic_family(n, eps)?,
                Family::Linear => quadrot_testkit::gen_linear_family(n, eps, spacing)?,
                Family::Random => quadrot_testkit::gen_random_general(n, seed, jitter)?,
            };
            let ps = if jitter > 0.0 && !matches!(family, Family::Random) {
                quadrot_testkit::perturb(&ps, jitter, seed)?
            } else {
                ps
            };
            ctx.emit(input::write_points(&ps).as_bytes())
        }
        Cmd::Verify { sets, n_min, n_max, seed } => {
            if n_min == 0 || n_max < n_min {
                return Err(CliError::Parse(format!("bad size range {n_min}..{n_max}")));
            }
            let mut out = String::new();
            let mut bad = 0;
            for i in 0..sets {
                let n = n_min + i % (n_max - n_min + 1);
                let ps = quadrot_testkit::gen_random_general(n, seed + i as u64, 0.0)?;
                let t = ctx.rotate(&ps)?;
                let b = brute_force_four_squares(&ps, &ctx.tol(&ps)?)?;
                let rep = compare_traces(&t, &b, ps.scale());
                if !rep.is_equivalent() || rep.max_phi_err >= 1e-8 {
                    bad += 1;
                }
                out.push_str(&format!("set {i} (n={n}, seed={}): {rep}\n", seed + i as u64));
            }
            if bad == 0 {
                out.push_str(&format!("all equivalent ({sets} sets)\n"));
                ctx.emit(out.as_bytes())
            } else {
                out.push_str(&format!("{bad} of {sets} sets differ\n"));
                ctx.emit(out.as_bytes())?;
                Err(CliError::Invariant(format!("{bad} of {sets} sets differ from brute force")))
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("quadrot: {e}");
            ExitCode::from(e.code())
        }
    }
}
