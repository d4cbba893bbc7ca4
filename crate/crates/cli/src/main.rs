//! `zlab`: runs the numerical suites and writes CSV tables plus an
//! append-only JSONL run manifest.

mod manifest;
mod table;

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{Instant, SystemTime, UNIX_EPOCH};

use clap::{Args, Parser, Subcommand, ValueEnum};

use zlab_core::cache::ConstantsCache;
use zlab_core::fermat::{fermat_equivalence_check, fermat_target};
use zlab_core::functionals::{
    chain_compare, functional_approximant, substitution_constant, tau_for_height, CbarRef, FunctionalApproximant,
    FunctionalKind, FunctionalParam,
};
use zlab_core::gram::gram_range;
use zlab_core::ladders::ladder_chain;
use zlab_core::moments::MomentEstimate;
use zlab_core::report::sig15;
use zlab_core::sums::{verify_asymptotic_trend, SumKind, SumResult};
use zlab_core::zeta::{hardy_z, theta, theta_deriv, zeta_real};
use zlab_core::{Lab, PrecisionConfig, ZlabError};

use manifest::{load_config, RunManifest};
use table::Table;

#[derive(Parser, Debug)]
#[command(name = "zlab", version, about = "Hardy Z, Gram points, Jacob's ladders and Gram-point moment sums")]
struct Cli {
    /// CSV output file (stdout when omitted).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// PrecisionConfig JSON, or a run manifest whose config should be reused.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Worker threads; 0 means one per available core.
    #[arg(long, global = true, default_value_t = 0)]
    jobs: usize,
    /// Manifest file to append to (default: manifest.jsonl next to --out).
    #[arg(long, global = true)]
    manifest: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// ϑ(t) and ϑ'(t).
    #[command(allow_negative_numbers = true)]
    Theta {
        #[arg(long, value_delimiter = ',', required = true)]
        t: Vec<f64>,
    },
    /// Hardy's Z(t) at a list of heights or on a regular grid.
    #[command(allow_negative_numbers = true)]
    Z {
        #[arg(long, value_delimiter = ',')]
        t: Vec<f64>,
        #[command(flatten)]
        grid: Grid,
    },
    /// Gram points in [from, to).
    #[command(allow_negative_numbers = true)]
    Gram {
        #[arg(long)]
        from: f64,
        #[arg(long)]
        to: f64,
    },
    /// Interval moments of |ζ|² or |S₁|^{2l}.
    #[command(allow_negative_numbers = true)]
    Moments {
        #[arg(long, value_enum)]
        kind: MomentArg,
        #[arg(long)]
        from: f64,
        #[arg(long)]
        to: f64,
        #[arg(long, default_value_t = 1.0)]
        sigma: f64,
        #[arg(long, value_delimiter = ',', default_value = "1")]
        l: Vec<u32>,
    },
    /// Fits c̄(l) on [T, T + H] and stores it in the constants cache.
    #[command(allow_negative_numbers = true)]
    Cbar {
        #[arg(long, default_value_t = 1)]
        l: u32,
        #[arg(long)]
        t: f64,
        #[arg(long)]
        h: f64,
    },
    /// A Jacob's-ladder chain T, T¹, …, Tᵏ.
    #[command(allow_negative_numbers = true)]
    Ladder {
        #[arg(long)]
        t: f64,
        #[arg(long, default_value_t = 4)]
        k: usize,
    },
    /// Gram-point sums on [from, to) or on [T, 2T) for each of --heights.
    #[command(allow_negative_numbers = true)]
    Sum {
        #[arg(long, value_enum)]
        kind: SumArg,
        #[arg(long)]
        from: Option<f64>,
        #[arg(long)]
        to: Option<f64>,
        #[arg(long, value_delimiter = ',')]
        heights: Vec<f64>,
    },
    /// Functional approximants along a τ schedule.
    #[command(allow_negative_numbers = true)]
    Functional {
        #[arg(long, value_enum)]
        kind: KindArg,
        #[arg(long, default_value_t = 1.0)]
        x: f64,
        #[command(flatten)]
        param: ParamArgs,
        #[command(flatten)]
        schedule: Schedule,
    },
    /// Fermat rational (xⁿ + yⁿ)/zⁿ against its functional trace.
    #[command(allow_negative_numbers = true)]
    Fermat {
        #[arg(long)]
        x: u64,
        #[arg(long)]
        y: u64,
        #[arg(long)]
        z: u64,
        #[arg(long)]
        n: u32,
        #[arg(long, value_enum)]
        kind: KindArg,
        #[command(flatten)]
        param: ParamArgs,
        #[command(flatten)]
        schedule: Schedule,
        /// Also write the approximant trace (functional columns) here.
        #[arg(long)]
        trace: Option<PathBuf>,
    },
    /// A, B and C at one implied height.
    #[command(allow_negative_numbers = true)]
    Chain {
        #[arg(long, default_value_t = 1.0)]
        x: f64,
        #[arg(long, default_value_t = 1.0)]
        sigma: f64,
        #[command(flatten)]
        cbar: CbarArgs,
        /// τ for kind A; B and C are placed at the same height.
        #[arg(long, conflicts_with = "height")]
        tau: Option<f64>,
        /// Implied height T instead of τ.
        #[arg(long)]
        height: Option<f64>,
    },
    /// Verification suites with a PASS/FAIL table; exit status 1 on FAIL.
    #[command(allow_negative_numbers = true)]
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
        #[arg(long, value_delimiter = ',', default_value = "1e3,5e3,2e4")]
        heights: Vec<f64>,
    },
}

#[derive(Args, Debug)]
struct Grid {
    #[arg(long, requires_all = ["to", "step"])]
    from: Option<f64>,
    #[arg(long)]
    to: Option<f64>,
    #[arg(long)]
    step: Option<f64>,
}

#[derive(Args, Debug)]
struct ParamArgs {
    /// σ for kinds A and C.
    #[arg(long, default_value_t = 1.0)]
    sigma: f64,
    #[command(flatten)]
    cbar: CbarArgs,
}

/// Which cached c̄(l) fit kind B uses.
#[derive(Args, Debug)]
struct CbarArgs {
    #[arg(long, default_value_t = 1)]
    l: u32,
    #[arg(long, default_value_t = 1e4)]
    cbar_t: f64,
    #[arg(long, default_value_t = 1e3)]
    cbar_h: f64,
}

#[derive(Args, Debug)]
struct Schedule {
    #[arg(long, value_delimiter = ',', conflicts_with = "heights")]
    tau: Vec<f64>,
    /// Implied heights T; τ is derived per kind and x.
    #[arg(long, value_delimiter = ',')]
    heights: Vec<f64>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum MomentArg {
    Critical2,
    Sigma2,
    S1moment,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SumArg {
    Pair,
    Fourth,
}

impl From<SumArg> for SumKind {
    fn from(k: SumArg) -> SumKind {
        match k {
            SumArg::Pair => SumKind::Pair,
            SumArg::Fourth => SumKind::Fourth,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum KindArg {
    #[value(name = "A", alias = "a")]
    A,
    #[value(name = "B", alias = "b")]
    B,
    #[value(name = "C", alias = "c")]
    C,
}

impl From<KindArg> for FunctionalKind {
    fn from(k: KindArg) -> FunctionalKind {
        match k {
            KindArg::A => FunctionalKind::A,
            KindArg::B => FunctionalKind::B,
            KindArg::C => FunctionalKind::C,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Suite {
    Asymptotics,
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Lib(ZlabError),
    Io(std::io::Error),
    Verify,
}

impl From<ZlabError> for Failure {
    fn from(e: ZlabError) -> Self {
        Failure::Lib(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e)
    }
}

impl Failure {
    fn class(&self) -> &'static str {
        match self {
            Failure::Usage(_) => "usage",
            Failure::Lib(e) => e.class(),
            Failure::Io(_) => "io",
            Failure::Verify => "verify-fail",
        }
    }

    fn exit_code(&self) -> u8 {
        match self {
            Failure::Verify => 1,
            Failure::Usage(_) => 2,
            Failure::Lib(ZlabError::Domain(_) | ZlabError::Config(_) | ZlabError::Pole) => 2,
            Failure::Lib(ZlabError::Precision { .. }) => 4,
            Failure::Lib(_) | Failure::Io(_) => 3,
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Usage(m) => m.clone(),
            Failure::Lib(e) => e.to_string(),
            Failure::Io(e) => e.to_string(),
            Failure::Verify => "verification failed".into(),
        }
    }
}

type Outcome<T> = std::result::Result<T, Failure>;

/// Everything a command records for the manifest besides its outputs.
struct Run {
    lab: Lab,
    constants: BTreeMap<String, f64>,
    cbar_keys: Vec<String>,
    outputs: Vec<manifest::OutputRecord>,
}

impl Run {
    fn emit(&mut self, table: &Table, path: Option<&Path>) -> Outcome<()> {
        if let Some(rec) = table.emit(path)? {
            self.outputs.push(rec);
        }
        Ok(())
    }

    fn param(&mut self, kind: FunctionalKind, p: &ParamArgs) -> Outcome<FunctionalParam> {
        match kind {
            FunctionalKind::B => self.cbar_param(&p.cbar),
            _ => Ok(FunctionalParam::Sigma(p.sigma)),
        }
    }

    fn cbar_param(&mut self, c: &CbarArgs) -> Outcome<FunctionalParam> {
        let (key, entry) = self.lab.cached_cbar(c.l, c.cbar_t, c.cbar_h)?;
        if !self.cbar_keys.contains(&key) {
            self.cbar_keys.push(key.clone());
        }
        Ok(FunctionalParam::L(CbarRef { l: c.l, key, value: entry.cbar }))
    }

    /// Logs K and the fifth-power normalization behind it.
    fn record_constant(&mut self, kind: FunctionalKind, param: &FunctionalParam) -> Outcome<()> {
        let k = substitution_constant(&self.lab, kind, param)?;
        self.constants.insert(format!("K_{kind}({})", param.label()), k);
        match param {
            FunctionalParam::Sigma(s) => {
                let z = zeta_real(self.lab.cfg(), 2.0 * s)?;
                self.constants.insert(format!("zeta(2sigma)^5({})", param.label()), z.powi(5));
            }
            FunctionalParam::L(c) => {
                self.constants.insert(format!("cbar^5({})", c.key), c.value.powi(5));
            }
        }
        Ok(())
    }

    fn taus(&self, kind: FunctionalKind, x: f64, param: &FunctionalParam, s: &Schedule) -> Outcome<Vec<f64>> {
        if s.tau.is_empty() == s.heights.is_empty() {
            return Err(Failure::Usage("give exactly one of --tau or --heights".into()));
        }
        if !s.tau.is_empty() {
            return Ok(s.tau.clone());
        }
        s.heights
            .iter()
            .map(|&t| tau_for_height(&self.lab, kind, x, param, t).map_err(Failure::from))
            .collect()
    }
}

fn functional_header() -> Table {
    Table::new(&["kind", "x", "param", "tau", "T", "value", "rel_err"])
}

fn functional_row(a: &FunctionalApproximant) -> Vec<String> {
    vec![
        a.kind.to_string(),
        sig15(a.x),
        a.param.label(),
        sig15(a.tau),
        sig15(a.t),
        sig15(a.value),
        sig15(a.rel_err),
    ]
}

fn sum_row(s: &SumResult) -> Vec<String> {
    let opt = |v: Option<f64>| v.map(sig15).unwrap_or_default();
    vec![s.kind.to_string(), sig15(s.t_lo), s.terms.to_string(), sig15(s.value), opt(s.main_term), opt(s.ratio)]
}

fn moment_row(m: &MomentEstimate) -> Vec<String> {
    vec![m.kind.to_string(), sig15(m.t_lo), sig15(m.t_hi), sig15(m.value), sig15(m.per_unit), sig15(m.quad_error)]
}

fn execute(cli: &Cli, run: &mut Run) -> Outcome<()> {
    let out = cli.out.as_deref();
    let cfg = *run.lab.cfg();
    match &cli.command {
        Command::Theta { t } => {
            let mut tab = Table::new(&["t", "theta", "theta_deriv"]);
            for &ti in t {
                tab.push(vec![sig15(ti), sig15(theta(ti)?), sig15(theta_deriv(ti)?)]);
            }
            run.emit(&tab, out)
        }
        Command::Z { t, grid } => {
            let mut heights = t.clone();
            if let (Some(a), Some(b), Some(h)) = (grid.from, grid.to, grid.step) {
                if !(h > 0.0 && b >= a) {
                    return Err(Failure::Usage("grid needs --step > 0 and --to ≥ --from".into()));
                }
                heights.extend((0..).map(|i| a + i as f64 * h).take_while(|&v| v < b));
            }
            if heights.is_empty() {
                return Err(Failure::Usage("give --t or --from/--to/--step".into()));
            }
            let mut tab = Table::new(&["t", "z"]);
            for ti in heights {
                tab.push(vec![sig15(ti), sig15(hardy_z(&cfg, ti)?)]);
            }
            run.emit(&tab, out)
        }
        Command::Gram { from, to } => {
            let r = gram_range(&cfg, *from, *to)?;
            let mut tab = Table::new(&["nu", "t", "residual"]);
            for p in &r.points {
                tab.push(vec![p.nu.to_string(), sig15(p.t), sig15(p.residual)]);
            }
            run.emit(&tab, out)
        }
        Command::Moments { kind, from, to, sigma, l } => {
            let rows = match kind {
                MomentArg::Critical2 => vec![run.lab.second_moment_critical(*from, *to)?],
                MomentArg::Sigma2 => vec![run.lab.second_moment_sigma(*sigma, *from, *to)?],
                MomentArg::S1moment => run.lab.s1_moments(l, *from, *to)?,
            };
            let mut tab = Table::new(&["kind", "t_lo", "t_hi", "value", "per_unit", "quad_error"]);
            for m in &rows {
                tab.push(moment_row(m));
            }
            run.emit(&tab, out)
        }
        Command::Cbar { l, t, h } => {
            let est = run.lab.estimate_cbar(*l, *t, *h)?;
            run.cbar_keys.push(est.cache_key());
            let mut tab = Table::new(&["l", "T", "H", "cbar", "spread", "key"]);
            tab.push(vec![l.to_string(), sig15(*t), sig15(*h), sig15(est.cbar), sig15(est.spread), est.cache_key()]);
            run.emit(&tab, out)
        }
        Command::Ladder { t, k } => {
            let chain = ladder_chain(&cfg, *t, *k)?;
            let pts = chain.points();
            let mut tab = Table::new(&["r", "T_r", "gap", "slice_integral", "residual"]);
            tab.push(vec!["0".into(), sig15(pts[0]), String::new(), String::new(), String::new()]);
            for r in 1..pts.len() {
                tab.push(vec![
                    r.to_string(),
                    sig15(pts[r]),
                    sig15(pts[r] - pts[r - 1]),
                    sig15(chain.slice_integrals[r - 1]),
                    sig15(chain.residuals[r - 1]),
                ]);
            }
            run.emit(&tab, out)
        }
        Command::Sum { kind, from, to, heights } => {
            let kind = SumKind::from(*kind);
            let ranges: Vec<(f64, f64)> = match (from, to) {
                (Some(a), Some(b)) if heights.is_empty() => vec![(*a, *b)],
                (None, None) if !heights.is_empty() => heights.iter().map(|&t| (t, 2.0 * t)).collect(),
                _ => return Err(Failure::Usage("give --from/--to or --heights".into())),
            };
            let mut tab = Table::new(&["kind", "T", "terms", "value", "main_term", "ratio"]);
            for (a, b) in ranges {
                tab.push(sum_row(&run.lab.gram_values(a, b)?.sum(kind)));
            }
            run.emit(&tab, out)
        }
        Command::Functional { kind, x, param, schedule } => {
            let kind = FunctionalKind::from(*kind);
            let p = run.param(kind, param)?;
            run.record_constant(kind, &p)?;
            let mut tab = functional_header();
            for tau in run.taus(kind, *x, &p, schedule)? {
                tab.push(functional_row(&functional_approximant(&run.lab, kind, *x, &p, tau)?));
            }
            run.emit(&tab, out)
        }
        Command::Fermat { x, y, z, n, kind, param, schedule, trace } => {
            let kind = FunctionalKind::from(*kind);
            let target = fermat_target(*x, *y, *z, *n)?;
            let p = run.param(kind, param)?;
            run.record_constant(kind, &p)?;
            let taus = run.taus(kind, target, &p, schedule)?;
            let w = fermat_equivalence_check(&run.lab, *x, *y, *z, *n, kind, &p, &taus)?;
            let mut tab = Table::new(&["x", "y", "z", "n", "numerator", "denominator", "is_one", "verdict"]);
            tab.push(vec![
                x.to_string(),
                y.to_string(),
                z.to_string(),
                n.to_string(),
                w.numerator.clone(),
                w.denominator.clone(),
                w.is_one_exact.to_string(),
                w.verdict.to_string(),
            ]);
            if let Some(path) = trace {
                let mut tr = functional_header();
                for a in &w.approximants {
                    tr.push(functional_row(a));
                }
                run.emit(&tr, Some(path))?;
            }
            eprintln!("fermat ({x}, {y}, {z}, {n}): {}/{} verdict {}", w.numerator, w.denominator, w.verdict);
            run.emit(&tab, out)
        }
        Command::Chain { x, sigma, cbar, tau, height } => {
            let pb = run.cbar_param(cbar)?;
            let pa = FunctionalParam::Sigma(*sigma);
            let tau = match (tau, height) {
                (Some(t), None) => *t,
                (None, Some(h)) => tau_for_height(&run.lab, FunctionalKind::A, *x, &pa, *h)?,
                _ => return Err(Failure::Usage("give --tau or --height".into())),
            };
            for (kind, p) in [(FunctionalKind::A, &pa), (FunctionalKind::B, &pb), (FunctionalKind::C, &pa)] {
                run.record_constant(kind, p)?;
            }
            let FunctionalParam::L(c) = pb else { unreachable!("cbar_param returns L") };
            let rep = chain_compare(&run.lab, *x, *sigma, c, tau)?;
            let mut tab = functional_header();
            for m in &rep.members {
                tab.push(functional_row(m));
            }
            for (a, b, d) in &rep.deviations {
                eprintln!("chain {a}-{b}: deviation {}", sig15(*d));
            }
            eprintln!("chain at T = {}: {}", sig15(rep.t), if rep.pass { "PASS" } else { "FAIL" });
            run.emit(&tab, out)
        }
        Command::Verify { suite: Suite::Asymptotics, heights } => {
            let mut tab = Table::new(&["kind", "T", "terms", "value", "main_term", "ratio", "pass"]);
            let mut all = true;
            for kind in [SumKind::Pair, SumKind::Fourth] {
                let rep = verify_asymptotic_trend(&cfg, kind, heights)?;
                let verdict = if rep.pass { "PASS" } else { "FAIL" };
                for s in &rep.sums {
                    let mut row = sum_row(s);
                    row.push(verdict.into());
                    tab.push(row);
                }
                eprintln!("asymptotics/{kind}: {verdict}");
                all &= rep.pass;
            }
            run.emit(&tab, out)?;
            if all {
                Ok(())
            } else {
                Err(Failure::Verify)
            }
        }
    }
}

fn manifest_path(cli: &Cli) -> PathBuf {
    if let Some(m) = &cli.manifest {
        return m.clone();
    }
    match cli.out.as_deref().and_then(Path::parent) {
        Some(dir) if !dir.as_os_str().is_empty() => dir.join("manifest.jsonl"),
        _ => PathBuf::from("manifest.jsonl"),
    }
}

fn setup(cli: &Cli) -> Outcome<Lab> {
    let cfg = match &cli.config {
        Some(p) => load_config(p).map_err(ZlabError::Config)?,
        None => PrecisionConfig::default(),
    };
    if cli.jobs > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(cli.jobs)
            .build_global()
            .map_err(|e| Failure::Usage(format!("--jobs: {e}")))?;
    }
    let cache = ConstantsCache::open(ConstantsCache::default_dir())?;
    Ok(Lab::new(cfg)?.with_cache(cache))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let started = Instant::now();
    let started_unix = SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0);

    let lab = match setup(&cli) {
        Ok(lab) => lab,
        Err(f) => return fail(&f),
    };
    let mut run = Run { lab, constants: BTreeMap::new(), cbar_keys: Vec::new(), outputs: Vec::new() };
    let result = execute(&cli, &mut run);

    let record = RunManifest {
        command: std::env::args().collect(),
        config: *run.lab.cfg(),
        jobs: rayon::current_num_threads(),
        constants: run.constants,
        cbar_keys: run.cbar_keys,
        started_unix,
        wall_clock_s: started.elapsed().as_secs_f64(),
        status: match &result {
            Ok(()) => "ok".into(),
            Err(f) => f.class().into(),
        },
        outputs: run.outputs,
    };
    if let Err(e) = record.append(&manifest_path(&cli)) {
        return fail(&Failure::Io(e));
    }
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => fail(&f),
    }
}

fn fail(f: &Failure) -> ExitCode {
    let msg = serde_json::json!({ "error": f.class(), "message": f.message() });
    eprintln!("{msg}");
    ExitCode::from(f.exit_code())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(args: &[&str]) -> Cli {
        Cli::try_parse_from(std::iter::once("zlab").chain(args.iter().copied())).unwrap()
    }

    fn run_with_cache(dir: &Path) -> Run {
        let lab = Lab::new(PrecisionConfig::default()).unwrap().with_cache(ConstantsCache::open(dir).unwrap());
        Run { lab, constants: BTreeMap::new(), cbar_keys: Vec::new(), outputs: Vec::new() }
    }

    fn csv_rows(path: &Path) -> Vec<Vec<String>> {
        let mut r = csv::Reader::from_path(path).unwrap();
        r.records().map(|rec| rec.unwrap().iter().map(String::from).collect()).collect()
    }

    #[test]
    fn gram_table_has_contiguous_indices() {
        let dir = tempfile::tempdir().unwrap();
        let out = dir.path().join("g.csv");
        let cli = parse(&["gram", "--from", "1000", "--to", "2000", "--out", out.to_str().unwrap()]);
        let mut run = run_with_cache(dir.path());
        execute(&cli, &mut run).unwrap();
        let rows = csv_rows(&out);
        assert_eq!(rows.len(), 868);
        assert_eq!(run.outputs[0].rows, 868);
        let nus: Vec<u64> = rows.iter().map(|r| r[0].parse().unwrap()).collect();
        assert!(nus.windows(2).all(|w| w[1] == w[0] + 1));
    }

    #[test]
    fn output_digest_is_reproducible() {
        let dir = tempfile::tempdir().unwrap();
        let digest = |name: &str| {
            let out = dir.path().join(name);
            let cli = parse(&["sum", "--kind", "fourth", "--heights", "300,600", "--out", out.to_str().unwrap()]);
            let mut run = run_with_cache(dir.path());
            execute(&cli, &mut run).unwrap();
            run.outputs[0].sha256.clone()
        };
        assert_eq!(digest("a.csv"), digest("b.csv"));
    }

    #[test]
    fn fermat_row_reports_exact_rational() {
        let dir = tempfile::tempdir().unwrap();
        let out = dir.path().join("f.csv");
        let cli = parse(&[
            "fermat", "--x", "1", "--y", "1", "--z", "1", "--n", "3", "--kind", "A", "--heights", "200,400", "--out",
            out.to_str().unwrap(),
        ]);
        let mut run = run_with_cache(dir.path());
        execute(&cli, &mut run).unwrap();
        let rows = csv_rows(&out);
        assert_eq!(&rows[0][..7], ["1", "1", "1", "3", "2", "1", "false"]);
        assert!(run.constants.contains_key("K_A(sigma=1)"), "{:?}", run.constants);
    }

    #[test]
    fn kind_b_without_fitted_cbar_is_a_config_error() {
        let dir = tempfile::tempdir().unwrap();
        let cli = parse(&["functional", "--kind", "B", "--heights", "1000"]);
        let err = execute(&cli, &mut run_with_cache(dir.path())).unwrap_err();
        assert_eq!((err.class(), err.exit_code()), ("config", 2));
    }

    #[test]
    fn schedule_needs_exactly_one_source() {
        let dir = tempfile::tempdir().unwrap();
        let cli = parse(&["functional", "--kind", "A"]);
        let err = execute(&cli, &mut run_with_cache(dir.path())).unwrap_err();
        assert_eq!(err.exit_code(), 2);
        assert!(Cli::try_parse_from(["zlab", "functional", "--kind", "A", "--tau", "1", "--heights", "2"]).is_err());
    }

    #[test]
    fn negative_height_is_a_domain_error() {
        let dir = tempfile::tempdir().unwrap();
        let cli = parse(&["theta", "--t", "-5"]);
        let err = execute(&cli, &mut run_with_cache(dir.path())).unwrap_err();
        assert_eq!((err.class(), err.exit_code()), ("domain", 2));
    }

    #[test]
    fn exit_codes_by_class() {
        assert_eq!(Failure::Verify.exit_code(), 1);
        assert_eq!(Failure::Usage(String::new()).exit_code(), 2);
        assert_eq!(Failure::Lib(ZlabError::Pole).exit_code(), 2);
        assert_eq!(Failure::Io(std::io::Error::other("x")).exit_code(), 3);
    }

    #[test]
    fn manifest_defaults_next_to_output() {
        assert_eq!(manifest_path(&parse(&["theta", "--t", "1", "--out", "res/x.csv"])), Path::new("res/manifest.jsonl"));
        assert_eq!(manifest_path(&parse(&["theta", "--t", "1", "--out", "x.csv"])), Path::new("manifest.jsonl"));
    }
}
