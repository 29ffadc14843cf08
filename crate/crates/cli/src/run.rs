use std::time::Instant;

use num_rational::BigRational;
use rayon::prelude::*;
use sha2::{Digest, Sha256};
use thetaloc_core::deformation::{
    geometry_verdict, profile_from_fields, AssumptionStatus, DeformationError, LedgerEntry, SplittingProfile,
};
use thetaloc_core::exact::{is_prime, primes_in, Poly};
use thetaloc_core::numberfield::{NfElement, NumberField};
use thetaloc_core::qexp::{
    generalized_coefficient_with, CoefficientOptions, CoefficientReport, CoefficientSetup, QexpError, SearchBound,
    SetupSpec,
};

use crate::config::{parse_config, Rat, RunConfig, TaskMode};
use crate::report::{
    CoefficientSection, Conventions, Diagnostics, Failure, PrecisionLoss, RunReport, SetupSummary, Tags, Timings,
    VerdictSection, TOOL, VERSION,
};
use crate::CliError;

/// Command-line overrides applied on top of the config.
#[derive(Clone, Debug, Default)]
pub struct RunOptions {
    /// `None` runs what the task section asks for.
    pub mode: Option<TaskMode>,
    pub ell_min: Option<u64>,
    pub ell_max: Option<u64>,
    pub precision: Option<u32>,
    pub threads: Option<usize>,
}

#[derive(Debug)]
pub struct RunOutcome {
    pub report: RunReport,
    pub timings: Timings,
}

impl RunOutcome {
    /// 0 on full success, 1 when some prime failed.
    pub fn exit_code(&self) -> i32 {
        if self.report.diagnostics.failures.is_empty() {
            0
        } else {
            1
        }
    }
}

fn ms(t: Instant) -> f64 {
    t.elapsed().as_secs_f64() * 1e3
}

fn schema(path: &str, message: impl ToString) -> CliError {
    CliError::Config { path: path.into(), message: message.to_string() }
}

fn rats(v: &[Rat]) -> Vec<BigRational> {
    v.iter().map(|r| r.0.clone()).collect()
}

fn field(path: &str, coeffs: &[Rat]) -> Result<NumberField, CliError> {
    NumberField::new(Poly::new(rats(coeffs))).map_err(|e| schema(path, e))
}

fn element(k: &NumberField, path: &str, coords: &[Rat]) -> Result<NfElement, CliError> {
    k.element(rats(coords)).map_err(|e| schema(path, e))
}

/// F's generator in `target`: the configured image, or the rational root of
/// F's linear polynomial.
fn base_image(base: &NumberField, target: &NumberField, path: &str, given: Option<&[Rat]>) -> Result<NfElement, CliError> {
    match given {
        Some(c) => element(target, path, c),
        None if base.degree() == 1 => Ok(target.from_rational(-base.poly().coeff(0))),
        None => Err(schema(path, "required when F ≠ ℚ")),
    }
}

fn qexp_error(e: QexpError) -> CliError {
    let module = match &e {
        QexpError::Galois(_) => "galois",
        QexpError::Field(_) => "numberfield",
        QexpError::Padic(_) => "padics",
        _ => "qexp",
    };
    CliError::Arithmetic { module, message: e.to_string() }
}

fn deformation_error(e: DeformationError) -> CliError {
    CliError::Arithmetic { module: "deformation", message: e.to_string() }
}

/// Adds an entry unless the assumption is already recorded; a later failure
/// overrides an earlier non-failure.
fn record(ledger: &mut Vec<LedgerEntry>, assumption: &str, status: AssumptionStatus) {
    match ledger.iter_mut().find(|e| e.assumption == assumption) {
        Some(e) if status == AssumptionStatus::Failed => e.status = status,
        Some(_) => {}
        None => ledger.push(LedgerEntry { assumption: assumption.into(), status }),
    }
}

fn status(ok: bool, computed: bool) -> AssumptionStatus {
    match (ok, computed) {
        (false, _) => AssumptionStatus::Failed,
        (true, true) => AssumptionStatus::Computed,
        (true, false) => AssumptionStatus::Asserted,
    }
}

struct Fields {
    base: NumberField,
    m: NumberField,
}

fn load_fields(cfg: &RunConfig) -> Result<Fields, CliError> {
    let base = field("fields.F.poly", &cfg.fields.f.poly)?;
    let m = field("fields.M.poly", &cfg.fields.m.poly)?;
    if m.degree() != 2 * base.degree() {
        return Err(schema("fields.M.poly", "M must be quadratic over F"));
    }
    Ok(Fields { base, m })
}

fn live_profile(cfg: &RunConfig, fl: &Fields) -> Result<(SplittingProfile, &'static str), CliError> {
    let img = base_image(&fl.base, &fl.m, "fields.M.base_image", cfg.fields.m.base_image.as_deref())?;
    let a = &cfg.assertions;
    let profile =
        profile_from_fields(&fl.base, &fl.m, &img, cfg.arithmetic.p, &a.stabilization, a.leopoldt_m, a.p_regular)
            .map_err(deformation_error)?;
    let Some(declared) = &a.profile else { return Ok((profile, "computed")) };
    let declared_profile = SplittingProfile {
        n: profile.n,
        r: declared.r.unwrap_or(profile.r),
        primes: declared.primes.clone(),
        leopoldt_assumed: a.leopoldt_m,
        p_regular: a.p_regular,
    };
    let live: Vec<(u32, u32, bool)> = profile.primes.iter().map(|q| (q.e, q.f, q.splits_in_m)).collect();
    declared_profile.cross_validate(&live).map_err(deformation_error)?;
    if declared_profile.r != profile.r {
        return Err(deformation_error(DeformationError::ProfileMismatch(format!(
            "declared r = {}, signature of M gives {}",
            declared_profile.r, profile.r
        ))));
    }
    Ok((profile, "computed+declared"))
}

fn setup_spec(cfg: &RunConfig, fl: &Fields, precision: u32) -> Result<SetupSpec, CliError> {
    let hs = cfg.fields.h.as_ref().ok_or_else(|| schema("fields.H", "required for coefficients"))?;
    let ch = cfg.character.as_ref().ok_or_else(|| schema("character", "required for coefficients"))?;
    let h = field("fields.H.poly", &hs.poly)?;
    let base_img = base_image(&fl.base, &h, "fields.H.base_image", hs.base_image.as_deref())?;
    let automorphisms = hs
        .automorphisms
        .iter()
        .enumerate()
        .map(|(i, a)| element(&h, &format!("fields.H.automorphisms[{i}]"), a))
        .collect::<Result<Vec<_>, _>>()?;
    let psi_generators = ch
        .generators
        .iter()
        .enumerate()
        .map(|(i, g)| Ok((element(&h, &format!("character.generators[{i}].image"), &g.image)?, g.exponent)))
        .collect::<Result<Vec<_>, CliError>>()?;
    if ch.order == 0 {
        return Err(schema("character.order", "must be positive"));
    }
    let search = match &cfg.task.search {
        None => SearchBound::default(),
        Some(s) => {
            let mut b = SearchBound::with_max_h(s.max_h);
            if let Some(t) = &s.t2_scales {
                b.t2_scales = t.clone();
            }
            if let Some(m) = s.max_points {
                b.max_points = m;
            }
            b
        }
    };
    Ok(SetupSpec {
        base: fl.base.clone(),
        base_image: base_img,
        m: fl.m.clone(),
        m_image: element(&h, "fields.H.m_image", &hs.m_image)?,
        automorphisms,
        sigma: element(&h, "fields.H.sigma", &hs.sigma)?,
        psi_order: ch.order,
        psi_generators,
        conjugation: hs.conjugation.as_ref().map(|c| element(&h, "fields.H.conjugation", c)).transpose()?,
        p: cfg.arithmetic.p,
        precision,
        stabilization: cfg.assertions.stabilization.clone(),
        alpha_weights: cfg.arithmetic.alpha_weights.as_ref().map(|w| rats(w)),
        tame_level: cfg.arithmetic.tame_level.clone(),
        search,
        h,
    })
}

/// Parses a config and builds the coefficient setup it describes.
pub fn coefficient_setup(config_bytes: &[u8], precision: Option<u32>) -> Result<CoefficientSetup, CliError> {
    let cfg = parse_config(config_bytes).map_err(|e| CliError::Config { path: e.path, message: e.message })?;
    let fl = load_fields(&cfg)?;
    let spec = setup_spec(&cfg, &fl, precision.unwrap_or(cfg.arithmetic.precision))?;
    CoefficientSetup::new(spec).map_err(qexp_error)
}

fn summarize(setup: &CoefficientSetup, precision: u32, alpha: &Option<Vec<Rat>>) -> SetupSummary {
    let g = setup.group();
    let psi = setup.psi.domain().into_iter().map(|s| (s, setup.psi.exponent(s).expect("in domain"))).collect();
    SetupSummary {
        p: setup.p,
        precision,
        residue_degree: setup.context().f(),
        elements: (0..g.order()).map(|s| g.image(s).clone()).collect(),
        subgroup_gm: setup.dihedral.subgroup_gm().to_vec(),
        gm_is_cyclic: setup.dihedral.gm_is_cyclic(),
        sigma: setup.dihedral.sigma(),
        conjugation: setup.conjugation,
        conjugations: setup.dihedral.conjugations().to_vec(),
        psi_order: setup.psi.modulus(),
        psi,
        heart: setup.heart.clone(),
        heart_field_is_cm: setup.heart_field_is_cm(),
        iprime: setup.iprime.clone(),
        alpha_weights: match alpha {
            Some(w) => w.iter().map(|r| r.0.to_string()).collect(),
            None => vec!["1".to_string(); setup.iprime.len()],
        },
        excluded: setup.excluded.iter().copied().collect(),
    }
}

fn coefficient_ledger(ledger: &mut Vec<LedgerEntry>, cfg: &RunConfig, setup: &CoefficientSetup) {
    let a = &cfg.assertions;
    record(ledger, "Leopoldt conjecture for M", status(a.leopoldt_m, false));
    record(ledger, "p-regular", status(a.p_regular, false));
    record(ledger, "M totally real", status(setup.dihedral.m_totally_real(), true));
    record(ledger, "ψ♥ nontrivial", status(!setup.heart.degenerate, true));
    record(ledger, "S_p nonempty", status(setup.p_primes.iter().any(|q| q.splits_in_m), true));
    record(ledger, "p unramified in H", AssumptionStatus::Computed);
    if setup.conjugation.is_some() {
        record(ledger, "c central modulo ker ψ♥", AssumptionStatus::Computed);
    }
    record(ledger, "ψ comes from a ray class character of M", AssumptionStatus::Asserted);
    record(ledger, "U_𝔭-eigenvalues match the chosen stabilization", AssumptionStatus::Asserted);
}

fn ell_list(cfg: &RunConfig, opts: &RunOptions) -> Vec<u64> {
    if opts.ell_min.is_none() && opts.ell_max.is_none() {
        if let Some(list) = &cfg.task.ell {
            let mut v: Vec<u64> = list.iter().copied().filter(|&l| is_prime(l)).collect();
            v.sort_unstable();
            v.dedup();
            return v;
        }
    }
    let lo = opts.ell_min.unwrap_or(cfg.task.ell_min);
    let hi = opts.ell_max.unwrap_or(cfg.task.ell_max);
    if hi < lo {
        return Vec::new();
    }
    primes_in(lo, hi)
}

fn hex_sha256(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// Runs the pipeline on raw config bytes.
pub fn run(config_bytes: &[u8], opts: &RunOptions) -> Result<RunOutcome, CliError> {
    let start = Instant::now();
    let mut timings = Timings::default();
    let cfg = parse_config(config_bytes).map_err(|e| CliError::Config { path: e.path, message: e.message })?;
    let p = cfg.arithmetic.p;
    if !is_prime(p) {
        return Err(schema("arithmetic.p", format!("{p} is not prime")));
    }
    let precision = opts.precision.unwrap_or(cfg.arithmetic.precision);
    if precision == 0 {
        return Err(schema("arithmetic.precision", "must be positive"));
    }
    let mode = opts.mode.unwrap_or(cfg.task.mode);
    let want_verdicts = mode != TaskMode::Coefficients;
    let want_coefficients = mode != TaskMode::Verdicts;

    let fl = load_fields(&cfg)?;
    let mut ledger = Vec::new();

    let t = Instant::now();
    let mut verdict = None;
    let mut live = None;
    if want_verdicts {
        let (profile, source) = live_profile(&cfg, &fl)?;
        let a = &cfg.assertions;
        let v = geometry_verdict(&profile, a.ramification.as_ref(), a.cm.as_ref()).map_err(deformation_error)?;
        for e in &v.assumptions_ledger {
            record(&mut ledger, &e.assumption, e.status);
        }
        live = Some(profile.clone());
        verdict = Some(VerdictSection { profile, profile_source: source, verdict: v });
    }
    timings.verdict_ms = ms(t);

    let mut setup_summary = None;
    let mut coefficients = None;
    let mut failures = Vec::new();
    let mut precision_losses = Vec::new();
    if want_coefficients {
        let t = Instant::now();
        let spec = setup_spec(&cfg, &fl, precision)?;
        let setup = CoefficientSetup::new(spec).map_err(qexp_error)?;
        let profile = setup.splitting_profile(cfg.assertions.leopoldt_m, cfg.assertions.p_regular);
        if let Some(l) = &live {
            if l != &profile {
                return Err(deformation_error(DeformationError::ProfileMismatch(
                    "factorization through H disagrees with the factorization through M".into(),
                )));
            }
        }
        coefficient_ledger(&mut ledger, &cfg, &setup);
        setup_summary = Some(summarize(&setup, precision, &cfg.arithmetic.alpha_weights));
        timings.setup_ms = ms(t);

        let ells = ell_list(&cfg, opts);
        let copts = CoefficientOptions { second_representative: cfg.task.second_representative, cross_check: true };
        let work = |ell: &u64| -> (u64, Vec<CoefficientReport>, f64) {
            let t = Instant::now();
            let reports = match generalized_coefficient_with(&setup, *ell, &copts) {
                Ok(r) => r,
                Err(e) => vec![CoefficientReport::failed(&setup, *ell, e.to_string())],
            };
            (*ell, reports, ms(t))
        };
        let threads = opts.threads.unwrap_or(0);
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .map_err(|e| CliError::Io { path: "thread pool".into(), message: e.to_string() })?;
        // collect preserves input order, so the result is independent of scheduling
        let results: Vec<(u64, Vec<CoefficientReport>, f64)> = pool.install(|| ells.par_iter().map(work).collect());

        let mut entries = Vec::new();
        for (ell, reports, elapsed) in results {
            timings.per_ell_ms.insert(ell, elapsed);
            for r in reports {
                if let Some(msg) = &r.failure {
                    failures.push(Failure { ell, prime: r.prime.clone(), message: msg.clone() });
                }
                if let Some(prec) = r.precision {
                    if prec < precision as i64 {
                        precision_losses.push(PrecisionLoss {
                            ell,
                            prime: r.prime.clone(),
                            precision: prec,
                            lost: precision as i64 - prec,
                        });
                    }
                }
                entries.push(r);
            }
        }
        let inert_ok = entries.iter().all(|r| r.invariance_ok);
        record(&mut ledger, "coefficient independent of λ", status(inert_ok, true));
        coefficients =
            Some(CoefficientSection { ells, second_representative: cfg.task.second_representative, entries });
    }

    let tags = Tags {
        conductor: cfg.character.as_ref().and_then(|c| c.conductor.clone()),
        nebentypus: cfg.character.as_ref().and_then(|c| c.nebentypus.clone()),
        tame_level: cfg.arithmetic.tame_level.clone(),
    };
    let report = RunReport {
        tool: TOOL,
        version: VERSION,
        config_sha256: hex_sha256(config_bytes),
        command: mode,
        conventions: Conventions::default(),
        tags,
        setup: setup_summary,
        verdict,
        coefficients,
        diagnostics: Diagnostics { assumptions_ledger: ledger, precision_losses, failures },
    };
    timings.total_ms = ms(start);
    Ok(RunOutcome { report, timings })
}
