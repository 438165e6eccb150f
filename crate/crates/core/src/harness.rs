//! Seeded verification suites and report emission for the `octolab` binary.
//!
//! Every suite is a pure function of its [`RunConfig`]; reports are JSON
//! documents whose only run-dependent fields are named `elapsed_ms`.

use std::io::Write;
use std::path::{Path, PathBuf};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::{associator, BasisTable, BasisUnit, Octonion, TripleCensus};
use crate::error::{Error, Result};
use crate::lattice::{linear_sum, random_function, read_function, BoxRegion, FileHeader, LatticeFunction, Region, SPLIT_AXIS};
use crate::operators::{cr_profile, factorization_residual, is_monogenic, OperatorVariant};
use crate::scalar::{Mode, Rational, Scalar};
use crate::stokes::{theorem_report, IdentityReport, PairingSign, ReportMeta, Theorem};
use crate::timing::Stopwatch;

/// Mixed into the seed of `g` to obtain the seed of `f` in Stokes runs.
pub const F_SEED_MIX: u64 = 0x9E37_79B9_7F4A_7C15;

/// Largest box radius accepted without `--force` (`7^8` sites).
pub const MAX_RADIUS: u32 = 3;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_IO: i32 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    VerifyAlgebra,
    VerifyFactorization,
    Stokes,
    MonogenicDemo,
    Census,
}

impl Command {
    pub fn as_str(self) -> &'static str {
        match self {
            Command::VerifyAlgebra => "verify-algebra",
            Command::VerifyFactorization => "verify-factorization",
            Command::Stokes => "stokes",
            Command::MonogenicDemo => "monogenic-demo",
            Command::Census => "census",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub mode: Mode,
    /// Lattice constant as typed; parsed in the scalar type of `mode`.
    pub h: String,
    pub radius: u32,
    pub seed: u64,
    /// Number of consecutive seeds; `None` picks the command default.
    pub seeds: Option<u32>,
    pub theorem: Theorem,
    pub sign: PairingSign,
    pub h_power: u32,
    pub tol: Option<f64>,
    pub out: Option<PathBuf>,
    pub csv: Option<PathBuf>,
    /// Input files replacing generated functions.
    pub functions: Vec<PathBuf>,
    pub force: bool,
    /// Random samples per algebra property; 0 leaves only table checks.
    pub samples: usize,
    /// Basis index `k` of the right multiplier in `f e_k`.
    pub multiplier: usize,
}

impl RunConfig {
    pub fn new(command: Command) -> Self {
        RunConfig {
            command,
            mode: Mode::Exact,
            h: "1".into(),
            radius: 1,
            seed: 1,
            seeds: None,
            theorem: Theorem::T1,
            sign: PairingSign::Minus,
            h_power: 8,
            tol: None,
            out: None,
            csv: None,
            functions: Vec::new(),
            force: false,
            samples: 1000,
            multiplier: 3,
        }
    }

    fn seed_count(&self) -> u32 {
        self.seeds.unwrap_or(match self.command {
            Command::VerifyFactorization => 20,
            _ => 1,
        })
    }

    /// Rejects inconsistent settings before any work is done.
    pub fn validate(&self) -> Result<()> {
        let config = |msg: String| Err(Error::Config(msg));
        match (self.mode, self.tol) {
            (Mode::Exact, Some(_)) => return config("--tol is not allowed in exact mode; residuals must vanish exactly".into()),
            (Mode::Float, None) if !matches!(self.command, Command::VerifyAlgebra | Command::Census) => {
                return config("float mode needs an explicit --tol".into())
            }
            (_, Some(t)) if t.is_nan() || t < 0.0 || t.is_infinite() => return config(format!("--tol must be a finite non-negative number, got {t}")),
            _ => {}
        }
        if self.mode == Mode::Float && matches!(self.command, Command::VerifyAlgebra | Command::Census) {
            return config(format!("{} runs in exact arithmetic only", self.command.as_str()));
        }
        if self.radius > MAX_RADIUS && !self.force {
            return config(format!("radius {} exceeds {MAX_RADIUS}; pass --force to run anyway", self.radius));
        }
        if !matches!(self.h_power, 7 | 8) {
            return config(format!("--h-power must be 7 or 8, got {}", self.h_power));
        }
        if self.multiplier > 7 {
            return config(format!("--multiplier must be a basis index 0..=7, got {}", self.multiplier));
        }
        if self.seed_count() == 0 {
            return config("--seeds must be at least 1".into());
        }
        if self.functions.len() > 2 {
            return config("at most two --function files (g, then f)".into());
        }
        if !self.functions.is_empty() && matches!(self.command, Command::VerifyAlgebra | Command::Census | Command::MonogenicDemo) {
            return config(format!("{} does not read function files", self.command.as_str()));
        }
        Ok(())
    }
}

/// Finished suite: whether it passed, the JSON report and an optional CSV
/// summary with one row per seed.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub passed: bool,
    pub json: String,
    pub csv: Option<String>,
}

pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Io(_) => EXIT_IO,
        Error::Domain(_) | Error::Parse { .. } | Error::TooLarge { .. } | Error::Config(_) => EXIT_USAGE,
    }
}

/// Runs the configured suite without touching the file system except to
/// read `--function` inputs.
pub fn execute(cfg: &RunConfig) -> Result<Outcome> {
    cfg.validate()?;
    match cfg.command {
        Command::VerifyAlgebra => {
            let report = verify_algebra(cfg.samples, cfg.seed, &BasisTable::STANDARD);
            Ok(Outcome { passed: report.passed, json: to_json(&report), csv: None })
        }
        Command::Census => {
            let report = census_report();
            Ok(Outcome { passed: true, json: to_json(&report), csv: None })
        }
        Command::VerifyFactorization => match cfg.mode {
            Mode::Exact => factorization_outcome::<Rational>(cfg),
            Mode::Float => factorization_outcome::<f64>(cfg),
        },
        Command::Stokes => match cfg.mode {
            Mode::Exact => stokes_outcome::<Rational>(cfg),
            Mode::Float => stokes_outcome::<f64>(cfg),
        },
        Command::MonogenicDemo => match cfg.mode {
            Mode::Exact => monogenic_outcome::<Rational>(cfg),
            Mode::Float => monogenic_outcome::<f64>(cfg),
        },
    }
}

/// Runs the suite, writes the report to `--out` (or stdout) and the CSV to
/// `--csv`, and returns the process exit code.
pub fn run(cfg: &RunConfig) -> i32 {
    let outcome = match execute(cfg) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("octolab: {e}");
            return exit_code(&e);
        }
    };
    if let Err(e) = emit(cfg, &outcome) {
        eprintln!("octolab: {e}");
        return EXIT_IO;
    }
    if outcome.passed {
        EXIT_OK
    } else {
        EXIT_FAILURE
    }
}

fn emit(cfg: &RunConfig, outcome: &Outcome) -> std::io::Result<()> {
    let write = |path: &Path, text: &str| {
        std::fs::write(path, text).map_err(|e| std::io::Error::new(e.kind(), format!("{}: {e}", path.display())))
    };
    match &cfg.out {
        Some(path) => write(path, &outcome.json)?,
        None => std::io::stdout().lock().write_all(outcome.json.as_bytes())?,
    }
    if let (Some(path), Some(csv)) = (&cfg.csv, &outcome.csv) {
        write(path, csv)?;
    }
    Ok(())
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

fn parse_h<S: Scalar>(text: &str) -> Result<S> {
    let h = S::parse_user(text).map_err(|e| Error::Config(format!("--h: {e}")))?;
    if !h.is_positive() {
        return Err(Error::Config(format!("--h must be positive, got {text}")));
    }
    Ok(h)
}

fn tolerance(cfg: &RunConfig) -> f64 {
    cfg.tol.unwrap_or(0.0)
}

fn with_path(path: &Path, err: Error) -> Error {
    match err {
        Error::Io(e) => Error::Io(std::io::Error::new(e.kind(), format!("{}: {e}", path.display()))),
        other => other,
    }
}

fn load<S: Scalar>(path: &PathBuf) -> Result<LatticeFunction<S>> {
    let header = FileHeader::read(path).map_err(|e| with_path(path, e))?;
    if header.mode != S::MODE {
        return Err(Error::Config(format!(
            "{} holds a {} mode function but the run is in {} mode",
            path.display(),
            header.mode,
            S::MODE
        )));
    }
    read_function(path).map_err(|e| with_path(path, e))
}

// ---------------------------------------------------------------------------
// verify-algebra
// ---------------------------------------------------------------------------

/// Products `e_i e_j` for rows `i = 0..7`, transcribed from the reference
/// multiplication table independently of [`BasisTable::STANDARD`].
const REFERENCE_TABLE: &str = "
    1    e1   e2   e3   e4   e5   e6   e7
    e1   -1   e4   e5   -e2  -e3  -e7  e6
    e2   -e4  -1   e6   e1   e7   -e3  -e5
    e3   -e5  -e6  -1   -e7  e1   e2   e4
    e4   e2   -e1  e7   -1   -e6  e5   -e3
    e5   e3   -e7  -e1  e6   -1   -e4  e2
    e6   e7   e3   -e2  -e5  e4   -1   -e1
    e7   -e6  e5   -e4  e3   -e2  e1   -1
";

fn parse_unit(token: &str) -> BasisUnit {
    let (sign, rest) = match token.strip_prefix('-') {
        Some(r) => (-1, r),
        None => (1, token),
    };
    let index = match rest {
        "1" => 0,
        e => e.strip_prefix('e').and_then(|d| d.parse().ok()).expect("reference table entry"),
    };
    BasisUnit { sign, index }
}

fn reference_table() -> [[BasisUnit; 8]; 8] {
    let rows: Vec<Vec<BasisUnit>> = REFERENCE_TABLE
        .lines()
        .filter(|l| !l.trim().is_empty())
        .map(|l| l.split_whitespace().map(parse_unit).collect())
        .collect();
    std::array::from_fn(|i| std::array::from_fn(|j| rows[i][j]))
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub name: &'static str,
    pub passed: bool,
    pub cases: usize,
    /// First few counterexamples, rendered.
    pub failures: Vec<String>,
}

const MAX_LISTED_FAILURES: usize = 10;

struct Check {
    name: &'static str,
    cases: usize,
    failures: Vec<String>,
    failed: usize,
}

impl Check {
    fn new(name: &'static str) -> Self {
        Check { name, cases: 0, failures: Vec::new(), failed: 0 }
    }

    fn record(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failed += 1;
            if self.failures.len() < MAX_LISTED_FAILURES {
                self.failures.push(describe());
            }
        }
    }

    fn finish(self) -> CheckResult {
        CheckResult { name: self.name, passed: self.failed == 0, cases: self.cases, failures: self.failures }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct AlgebraReport {
    pub command: &'static str,
    pub samples: usize,
    pub seed: u64,
    pub checks: Vec<CheckResult>,
    pub census: TripleCensus,
    pub passed: bool,
    pub elapsed_ms: u64,
}

impl AlgebraReport {
    pub fn check(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }
}

fn random_octonion(rng: &mut ChaCha8Rng) -> Octonion<Rational> {
    Octonion::new(std::array::from_fn(|_| Rational::new(rng.random_range(-9..=9), rng.random_range(1..=4))))
}

fn unit_octonion(u: BasisUnit) -> Octonion<Rational> {
    Octonion::from_basis_unit(u)
}

/// Table fidelity, basis-unit identities and the triple census are computed
/// from `table`; the sampled identities use the library product. A faulty
/// table therefore shows up in the table-driven checks by name.
pub fn verify_algebra(samples: usize, seed: u64, table: &BasisTable) -> AlgebraReport {
    let timer = Stopwatch::start();
    let reference = reference_table();
    let unit = |i: usize| BasisUnit { sign: 1, index: i as u8 };
    let mut checks = Vec::new();

    let mut c = Check::new("table");
    for i in 0..8 {
        for j in 0..8 {
            let (got, want) = (table.get(i, j), reference[i][j]);
            c.record(got == want, || format!("e{i}*e{j}: table has {got}, reference has {want}"));
        }
    }
    checks.push(c.finish());

    let mut c = Check::new("units");
    for i in 0..8 {
        c.record(table.get(0, i) == unit(i) && table.get(i, 0) == unit(i), || format!("e0 is not an identity for e{i}"));
    }
    for i in 1..8 {
        c.record(table.get(i, i) == BasisUnit { sign: -1, index: 0 }, || format!("e{i}*e{i} = {}", table.get(i, i)));
    }
    checks.push(c.finish());

    let mut c = Check::new("anticommutativity");
    for i in 1..8 {
        for j in (1..8).filter(|&j| j != i) {
            c.record(table.get(i, j) == table.get(j, i).negated(), || format!("e{i}*e{j} = {} but e{j}*e{i} = {}", table.get(i, j), table.get(j, i)));
        }
    }
    checks.push(c.finish());

    let m = |a: BasisUnit, b: BasisUnit| table.mul_units(a, b);
    let mut c = Check::new("alternativity (basis)");
    for i in 0..8 {
        for j in 0..8 {
            let (a, b) = (unit(i), unit(j));
            c.record(m(a, m(a, b)) == m(m(a, a), b), || format!("e{i}(e{i}e{j}) != (e{i}e{i})e{j}"));
            c.record(m(m(a, b), b) == m(a, m(b, b)), || format!("(e{i}e{j})e{j} != e{i}(e{j}e{j})"));
        }
    }
    checks.push(c.finish());

    let mut c = Check::new("moufang (basis)");
    let mut census = TripleCensus { associative: 0, anti_associative: 0 };
    for i in 0..8 {
        for j in 0..8 {
            for k in 0..8 {
                let (a, b, z) = (unit(i), unit(j), unit(k));
                c.record(m(m(m(a, b), z), b) == m(a, m(b, m(z, b))), || format!("((e{i}e{j})e{k})e{j} != e{i}(e{j}(e{k}e{j}))"));
                c.record(m(z, m(a, m(z, b))) == m(m(m(z, a), z), b), || format!("e{k}(e{i}(e{k}e{j})) != ((e{k}e{i})e{k})e{j}"));
                if m(m(a, b), z) == m(a, m(b, z)) {
                    census.associative += 1;
                } else {
                    census.anti_associative += 1;
                }
            }
        }
    }
    checks.push(c.finish());

    // Basis products are signed units, so each triple either associates or
    // anti-associates; the associator of the units must agree.
    let mut c = Check::new("triple sign vs associator");
    for i in 0..8 {
        for j in 0..8 {
            for k in 0..8 {
                let (a, b, z) = (unit(i), unit(j), unit(k));
                let (left, right) = (m(m(a, b), z), m(a, m(b, z)));
                let sigma_neg = left == right.negated();
                let consistent = left == right || sigma_neg;
                let assoc = associator(&unit_octonion(unit(i)), &unit_octonion(unit(j)), &unit_octonion(unit(k)));
                c.record(consistent && (sigma_neg == !assoc.is_zero()), || format!("triple ({i},{j},{k})"));
            }
        }
    }
    checks.push(c.finish());

    let mut c = Check::new("census");
    c.record(census.associative + census.anti_associative == 512, || format!("{census:?} does not partition 512"));
    c.record(census == crate::algebra::triple_census(), || format!("{census:?} differs from the library census"));
    checks.push(c.finish());

    if samples > 0 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut alt = Check::new("alternativity (random)");
        let mut mou = Check::new("moufang (random)");
        let mut norm = Check::new("norm multiplicativity");
        let mut conj = Check::new("conjugate norm");
        let mut alter = Check::new("associator alternation");
        let mut zero_div = Check::new("no zero divisors");
        for n in 0..samples {
            let (a, b, z) = (random_octonion(&mut rng), random_octonion(&mut rng), random_octonion(&mut rng));
            alt.record(a.mul(&a.mul(&b)) == a.mul(&a).mul(&b) && a.mul(&b).mul(&b) == a.mul(&b.mul(&b)), || format!("sample {n}"));
            mou.record(a.mul(&b).mul(&z).mul(&b) == a.mul(&b.mul(&z.mul(&b))), || format!("sample {n}"));
            norm.record(a.mul(&b).norm_sq() == a.norm_sq() * b.norm_sq(), || format!("sample {n}"));
            conj.record(a.mul(&a.conj()) == Octonion::real(a.norm_sq()), || format!("sample {n}"));
            let abc = associator(&a, &b, &z);
            alter.record(
                associator(&b, &a, &z) == -abc.clone()
                    && associator(&a, &z, &b) == -abc.clone()
                    && associator(&z, &b, &a) == -abc
                    && associator(&a, &a, &b).is_zero()
                    && associator(&a, &b, &b).is_zero(),
                || format!("sample {n}"),
            );
            zero_div.record(a.is_zero() || b.is_zero() || !a.mul(&b).is_zero(), || format!("sample {n}"));
        }
        checks.extend([alt, mou, norm, conj, alter, zero_div].map(Check::finish));
    }

    let passed = checks.iter().all(|c| c.passed);
    AlgebraReport { command: Command::VerifyAlgebra.as_str(), samples, seed, checks, census, passed, elapsed_ms: timer.elapsed_ms() }
}

// ---------------------------------------------------------------------------
// census
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Serialize)]
pub struct CensusReport {
    pub command: &'static str,
    pub associative: usize,
    pub anti_associative: usize,
    /// Anti-associative ordered triples, lexicographic.
    pub anti_associative_triples: Vec<[usize; 3]>,
}

pub fn census_report() -> CensusReport {
    let census = crate::algebra::triple_census();
    let mut triples = Vec::new();
    for i in 0..8 {
        for j in 0..8 {
            for k in 0..8 {
                if crate::algebra::triple_sign(i, j, k).is_ok_and(|s| s < 0) {
                    triples.push([i, j, k]);
                }
            }
        }
    }
    CensusReport {
        command: Command::Census.as_str(),
        associative: census.associative,
        anti_associative: census.anti_associative,
        anti_associative_triples: triples,
    }
}

// ---------------------------------------------------------------------------
// verify-factorization
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Serialize)]
pub struct FactorizationRow {
    /// Seed of the generated function; absent for file inputs and the zero function.
    pub seed: Option<u64>,
    pub input: String,
    pub support: usize,
    pub residual_sites: usize,
    pub max_residual: Vec<String>,
    pub max_abs: f64,
    pub passed: bool,
    pub elapsed_ms: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct FactorizationReport {
    pub command: &'static str,
    pub mode: Mode,
    pub h: String,
    pub radius: u32,
    pub tol: Option<f64>,
    pub rows: Vec<FactorizationRow>,
    pub passed: bool,
    pub elapsed_ms: u64,
}

fn factorization_row<S: Scalar>(f: &LatticeFunction<S>, seed: Option<u64>, input: String, tol: f64) -> FactorizationRow {
    let timer = Stopwatch::start();
    let residual = factorization_residual(f);
    let worst = residual
        .iter()
        .map(|(_, v)| v)
        .fold(None::<&Octonion<S>>, |best, v| match best {
            Some(b) if b.max_abs() >= v.max_abs() => Some(b),
            _ => Some(v),
        })
        .cloned()
        .unwrap_or_else(Octonion::zero);
    let passed = match S::MODE {
        Mode::Exact => residual.is_empty(),
        Mode::Float => worst.max_abs() <= tol,
    };
    FactorizationRow {
        seed,
        input,
        support: f.len(),
        residual_sites: residual.len(),
        max_abs: worst.max_abs(),
        max_residual: worst.render_vec(),
        passed,
        elapsed_ms: timer.elapsed_ms(),
    }
}

pub fn verify_factorization<S: Scalar>(cfg: &RunConfig) -> Result<FactorizationReport> {
    let timer = Stopwatch::start();
    let h: S = parse_h(&cfg.h)?;
    let tol = tolerance(cfg);
    let mut rows = Vec::new();
    if cfg.functions.is_empty() {
        let bounds = BoxRegion::cube(cfg.radius as i32);
        for n in 0..cfg.seed_count() as u64 {
            let seed = cfg.seed.wrapping_add(n);
            let f = random_function(&bounds, seed, h.clone())?;
            rows.push(factorization_row(&f, Some(seed), format!("random box {bounds}"), tol));
        }
        let zero = LatticeFunction::zero(h.clone(), Region::Whole)?;
        rows.push(factorization_row(&zero, None, "zero".into(), tol));
    } else {
        for path in &cfg.functions {
            let f = load::<S>(path)?;
            rows.push(factorization_row(&f, None, path.display().to_string(), tol));
        }
    }
    let passed = rows.iter().all(|r| r.passed);
    Ok(FactorizationReport {
        command: Command::VerifyFactorization.as_str(),
        mode: S::MODE,
        h: h.render(),
        radius: cfg.radius,
        tol: cfg.tol,
        rows,
        passed,
        elapsed_ms: timer.elapsed_ms(),
    })
}

fn factorization_outcome<S: Scalar>(cfg: &RunConfig) -> Result<Outcome> {
    let report = verify_factorization::<S>(cfg)?;
    let csv = csv_rows(
        &["seed", "input", "support", "residual_sites", "max_abs", "passed"],
        report.rows.iter().map(|r| {
            vec![
                r.seed.map_or_else(String::new, |s| s.to_string()),
                r.input.clone(),
                r.support.to_string(),
                r.residual_sites.to_string(),
                r.max_abs.to_string(),
                r.passed.to_string(),
            ]
        }),
    )?;
    Ok(Outcome { passed: report.passed, json: to_json(&report), csv: Some(csv) })
}

// ---------------------------------------------------------------------------
// stokes
// ---------------------------------------------------------------------------

/// Box holding the random support for `theorem`: the full cube for the
/// whole lattice, the slab `0 <= m7 <= r` (upper) or `-r <= m7 <= 0` (lower)
/// for the half-lattices.
pub fn stokes_box(theorem: Theorem, radius: u32) -> BoxRegion {
    let r = radius as i32;
    let cube = BoxRegion::cube(r);
    let (mut lo, mut hi) = (cube.lo, cube.hi);
    match theorem {
        Theorem::T1 => {}
        Theorem::T2 => lo.0[SPLIT_AXIS] = 0,
        Theorem::T3 => hi.0[SPLIT_AXIS] = 0,
    }
    BoxRegion::new(lo, hi)
}

/// Seeded `(g, f)` pair for one Stokes run.
pub fn stokes_pair<S: Scalar>(theorem: Theorem, bounds: &BoxRegion, seed: u64, h: S) -> Result<(LatticeFunction<S>, LatticeFunction<S>)> {
    let region = theorem.region();
    let g = random_function(bounds, seed, h.clone())?.with_region(region)?;
    let f = random_function(bounds, seed ^ F_SEED_MIX, h)?.with_region(region)?;
    Ok((g, f))
}

#[derive(Debug, Clone, Serialize)]
#[serde(bound = "")]
pub struct StokesSuite<S: Scalar> {
    pub command: &'static str,
    pub tol: Option<f64>,
    /// `f_k` in the printed boundary terms is read as the full function `f`.
    pub boundary_reading: Option<&'static str>,
    pub reports: Vec<IdentityReport<S>>,
    pub passed: bool,
}

pub fn run_stokes<S: Scalar>(cfg: &RunConfig) -> Result<StokesSuite<S>> {
    let tol = tolerance(cfg);
    let mut reports = Vec::new();
    if cfg.functions.is_empty() {
        let h: S = parse_h(&cfg.h)?;
        let bounds = stokes_box(cfg.theorem, cfg.radius);
        for n in 0..cfg.seed_count() as u64 {
            let seed = cfg.seed.wrapping_add(n);
            let (g, f) = stokes_pair(cfg.theorem, &bounds, seed, h.clone())?;
            let meta = ReportMeta { seed: Some(seed), bounds: Some(bounds) };
            reports.push(theorem_report(&g, &f, cfg.theorem, cfg.sign, cfg.h_power, meta)?);
        }
    } else {
        let g = load::<S>(&cfg.functions[0])?;
        let f = match cfg.functions.get(1) {
            Some(p) => load::<S>(p)?,
            None => g.clone(),
        };
        if g.region() != cfg.theorem.region() || f.region() != cfg.theorem.region() {
            return Err(Error::Config(format!(
                "{} needs functions on the {} region, got {} and {}",
                cfg.theorem.as_str(),
                cfg.theorem.region(),
                g.region(),
                f.region()
            )));
        }
        let bounds = match (g.bounding_box(), f.bounding_box()) {
            (Some(a), Some(b)) => Some(a.union(&b)),
            (a, b) => a.or(b),
        };
        reports.push(theorem_report(&g, &f, cfg.theorem, cfg.sign, cfg.h_power, ReportMeta { seed: None, bounds })?);
    }
    let passed = reports.iter().all(|r| r.derived_holds(tol));
    Ok(StokesSuite {
        command: Command::Stokes.as_str(),
        tol: cfg.tol,
        boundary_reading: (cfg.theorem != Theorem::T1).then_some("f_k read as f"),
        reports,
        passed,
    })
}

fn stokes_outcome<S: Scalar>(cfg: &RunConfig) -> Result<Outcome> {
    let suite = run_stokes::<S>(cfg)?;
    let csv = csv_rows(
        &["seed", "theorem", "sign", "h_power", "claim_residual", "derived_residual", "site_count", "elapsed_ms"],
        suite.reports.iter().map(|r| {
            vec![
                r.seed.map_or_else(String::new, |s| s.to_string()),
                r.theorem.as_str().to_string(),
                r.sign.as_str().to_string(),
                r.h_power.to_string(),
                r.claim_residual.render(),
                r.derived_residual.render(),
                r.site_count.to_string(),
                r.elapsed_ms.to_string(),
            ]
        }),
    )?;
    Ok(Outcome { passed: suite.passed, json: to_json(&suite), csv: Some(csv) })
}

// ---------------------------------------------------------------------------
// monogenic-demo
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Serialize)]
pub struct MonogenicSide {
    pub function: String,
    pub monogenic: bool,
    /// Operator output when it is the same at every interior site.
    pub constant_residual: Option<Vec<String>>,
    pub max_residual: Vec<String>,
    pub nonzero_sites: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct MonogenicReport {
    pub command: &'static str,
    pub mode: Mode,
    pub h: String,
    pub radius: u32,
    pub multiplier: usize,
    pub interior_sites: usize,
    pub f: MonogenicSide,
    pub g: MonogenicSide,
    /// `e1 e_k - e2 (e4 e_k)`, the value `D- (f e_k)` must take.
    pub expected_g_residual: Vec<String>,
    pub passed: bool,
    pub elapsed_ms: u64,
}

/// `f = x1 - x2 e4` on the cube of `radius`, and `g = f e_k`, checked with
/// the left backward operator on the box interior.
pub fn monogenic_demo<S: Scalar>(h: S, radius: u32, multiplier: usize, tol: f64) -> Result<MonogenicReport> {
    let timer = Stopwatch::start();
    if multiplier > 7 {
        return Err(Error::Config(format!("multiplier must be a basis index 0..=7, got {multiplier}")));
    }
    let bounds = BoxRegion::cube(radius as i32);
    let f = linear_sum(&[(1, Octonion::unit(0)), (2, -Octonion::unit(4))], &bounds, h.clone())?;
    let variant = OperatorVariant::LEFT_BACKWARD;
    let fc = is_monogenic(&f, variant, tol)?;
    let e_k = Octonion::unit(multiplier);
    let g = f.into_right_mul(&e_k);
    let gp = cr_profile(&g, variant);
    let g_monogenic = gp.max_residual.max_abs() <= tol;
    let expected = Octonion::unit(1).mul(&e_k) - Octonion::unit(2).mul(&Octonion::unit(4).mul(&e_k));

    let interior = match gp.region {
        Region::Box(b) => b.site_count() as usize,
        _ => unreachable!("box inputs give box outputs"),
    };
    let g_matches = gp.visited_sites == interior
        && gp.common_value.as_ref().is_some_and(|v| match S::MODE {
            Mode::Exact => *v == expected,
            Mode::Float => v.approx_eq(&expected, tol),
        });
    let f_ok = fc.monogenic && fc.profile.visited_sites == interior;

    let side = |function: String, monogenic: bool, p: &crate::operators::CrProfile<S>| MonogenicSide {
        function,
        monogenic,
        constant_residual: p.common_value.as_ref().map(Octonion::render_vec),
        max_residual: p.max_residual.render_vec(),
        nonzero_sites: p.nonzero_sites,
    };
    Ok(MonogenicReport {
        command: Command::MonogenicDemo.as_str(),
        mode: S::MODE,
        h: h.render(),
        radius,
        multiplier,
        interior_sites: interior,
        f: side("x1 - x2 e4".into(), fc.monogenic, &fc.profile),
        g: side(format!("(x1 - x2 e4) e{multiplier}"), g_monogenic, &gp),
        expected_g_residual: expected.render_vec(),
        passed: f_ok && g_matches,
        elapsed_ms: timer.elapsed_ms(),
    })
}

fn monogenic_outcome<S: Scalar>(cfg: &RunConfig) -> Result<Outcome> {
    let report = monogenic_demo(parse_h::<S>(&cfg.h)?, cfg.radius, cfg.multiplier, tolerance(cfg))?;
    Ok(Outcome { passed: report.passed, json: to_json(&report), csv: None })
}

// ---------------------------------------------------------------------------

fn csv_rows(header: &[&str], rows: impl Iterator<Item = Vec<String>>) -> Result<String> {
    #[cfg(feature = "cli")]
    {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(header).map_err(|e| Error::Config(e.to_string()))?;
        for row in rows {
            w.write_record(&row).map_err(|e| Error::Config(e.to_string()))?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Config(e.to_string()))?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }
    #[cfg(not(feature = "cli"))]
    {
        let mut out = header.join(",");
        out.push('\n');
        for row in rows {
            out.push_str(&row.join(","));
            out.push('\n');
        }
        Ok(out)
    }
}
