use std::collections::BTreeSet;

use serde::Serialize;

use super::{find_lambda_units, CoefficientSetup, LambdaUnit, QexpError};
use crate::exact::is_prime;
use crate::galois::{eta_value, frobenius_at, Cyclo};
use crate::numberfield::{factor_rational_prime, lies_over, NfElement, NumberFieldError, PrimeFactor};
use crate::padics::{plog, PadicJson, PadicNumber};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Classification {
    Split,
    Inert,
    Excluded,
    /// The computation failed before the splitting type was settled.
    Undetermined,
}

#[derive(Clone, Debug)]
pub struct CoefficientOptions {
    /// Also compute the value from a second, independent λ-unit.
    pub second_representative: bool,
    /// Also evaluate the Frobenius-side expression for comparison.
    pub cross_check: bool,
}

impl Default for CoefficientOptions {
    fn default() -> Self {
        CoefficientOptions { second_representative: false, cross_check: true }
    }
}

/// A second λ-unit for the same λ and the value it produces.
#[derive(Clone, Debug, Serialize)]
pub struct AlternativeValue {
    pub h: u32,
    pub alpha: NfElement,
    pub value: PadicJson,
    /// Agreement, in p-adic digits, with the main value.
    pub agreement: i64,
}

#[derive(Clone, Debug, Serialize)]
pub struct LambdaValue {
    /// Local generator of λ modulo ℓ.
    pub lambda: Vec<u64>,
    pub h: u32,
    pub alpha: NfElement,
    /// |D_λ ∩ ker ψ♥|.
    pub d: usize,
    pub frobenius: usize,
    pub eta: Cyclo,
    /// Σ α_i·u(ψ♥, λ, g_i).
    pub unit_log: PadicJson,
    pub value: PadicJson,
    #[serde(skip)]
    pub raw_value: PadicNumber,
    #[serde(skip)]
    pub raw_unit_log: PadicNumber,
    /// Agreement of the Frobenius-side evaluation with `unit_log`.
    pub frobenius_side_agreement: Option<i64>,
    pub alternative: Option<AlternativeValue>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CoefficientReport {
    pub ell: u64,
    /// Local generator of the prime of F above ℓ; empty when ℓ is excluded
    /// before factoring.
    pub prime: Vec<u64>,
    pub classification: Classification,
    pub reason: Option<String>,
    /// ψ(Frob_λ), ψ^σ(Frob_λ) when ℓ splits in M.
    pub classical_eigenvalues: Vec<Cyclo>,
    pub alpha_weights: Vec<PadicJson>,
    pub value: Option<PadicJson>,
    #[serde(skip)]
    pub raw_value: Option<PadicNumber>,
    pub per_lambda: Vec<LambdaValue>,
    /// Least agreement, in p-adic digits, between the values at different λ.
    pub invariance_agreement: Option<i64>,
    pub invariance_ok: bool,
    pub precision: Option<i64>,
    /// Set when the computation for this prime failed (e.g. no λ-unit found).
    pub failure: Option<String>,
}

/// Agreement of two values in digits, capped by the context precision.
fn agreement(setup: &CoefficientSetup, a: &PadicNumber, b: &PadicNumber) -> i64 {
    let ctx = setup.context();
    ctx.agreement(a, b).unwrap_or(ctx.precision() as i64)
}

fn heart_weighted_sum<F>(setup: &CoefficientSetup, mut log_at: F) -> Result<PadicNumber, QexpError>
where
    F: FnMut(usize) -> Result<PadicNumber, QexpError>,
{
    let ctx = setup.context();
    let mut acc = ctx.zero();
    for &g in setup.dihedral.subgroup_gm() {
        let term = ctx.mul(&setup.heart_value(g)?, &log_at(g)?);
        acc = ctx.add(&acc, &term);
    }
    Ok(acc)
}

fn check_degenerate(setup: &CoefficientSetup) -> Result<(), QexpError> {
    if setup.heart.degenerate && setup.dihedral.subgroup_gm().len() > 1 {
        return Err(QexpError::DegenerateCharacter);
    }
    Ok(())
}

/// u(ψ♥, λ, g_i) = (1/(h·d))·Σ_{g∈G″} ψ♥(g)·log_p ι_{π_g(j)}(α) for the
/// embedding label j = g_i, where d = |D_λ ∩ ker ψ♥| accounts for the norm
/// from H down to the field cut out by ψ♥.
pub fn eigen_unit_log(setup: &CoefficientSetup, j: usize, unit: &LambdaUnit, d: usize) -> Result<PadicNumber, QexpError> {
    check_degenerate(setup)?;
    if j >= setup.embeddings.len() {
        return Err(QexpError::EmbeddingGap(format!("label {j}")));
    }
    let ctx = setup.context();
    let sum = heart_weighted_sum(setup, |g| {
        let x = setup.embeddings.evaluate(setup.perms[g][j], &unit.alpha);
        Ok(plog(&x, ctx)?)
    })?;
    Ok(ctx.div(&sum, &ctx.from_int(unit.h as i64 * d as i64))?)
}

/// Σ_i α_i·u(ψ♥, λ, g_i) computed by moving α with automorphisms instead
/// of permuting embeddings: for each g_i pick s_i with ι_{j₀}∘s_i = ι_{g_i}
/// and evaluate (s_i∘g)(α) symbolically at the single embedding j₀.
pub fn frobenius_side_log(setup: &CoefficientSetup, unit: &LambdaUnit, d: usize) -> Result<PadicNumber, QexpError> {
    check_degenerate(setup)?;
    let ctx = setup.context();
    let grp = setup.group();
    let mut total = ctx.zero();
    for (&j, w) in setup.iprime.iter().zip(&setup.alpha_weights) {
        let fres = ctx.residue(&setup.embeddings.evaluate(j, &setup.base_image))?;
        let mut j0 = None;
        for k in 0..setup.embeddings.len() {
            if ctx.residue(&setup.embeddings.evaluate(k, &setup.base_image))? == fres {
                j0 = Some(k);
                break;
            }
        }
        let j0 = j0.expect("j itself qualifies");
        let s = (0..grp.order())
            .find(|&s| setup.perms[s][j0] == j)
            .ok_or_else(|| QexpError::EmbeddingGap(format!("no automorphism carries {j0} to {j}")))?;
        let sum = heart_weighted_sum(setup, |g| {
            let moved = grp.apply(grp.compose(s, g), &unit.alpha);
            Ok(plog(&setup.embeddings.evaluate(j0, &moved), ctx)?)
        })?;
        total = ctx.add(&total, &ctx.mul(w, &sum));
    }
    Ok(ctx.div(&total, &ctx.from_int(unit.h as i64 * d as i64))?)
}

/// Ψ′(u) = Σ_i α_i Σ_{g∈G″} ψ♥(g)·log_p ι_{π_g(g_i)}(u) for u a unit at
/// every place above p.
pub fn psi_prime(setup: &CoefficientSetup, weights: &[PadicNumber], u: &NfElement) -> Result<PadicNumber, QexpError> {
    if weights.len() != setup.iprime.len() {
        return Err(QexpError::InvalidSetup("α-weight count must match I′_F".into()));
    }
    let ctx = setup.context();
    let values: Vec<PadicNumber> = (0..setup.embeddings.len()).map(|j| setup.embeddings.evaluate(j, u)).collect();
    if values.iter().any(|v| !ctx.is_unit(v)) {
        return Err(QexpError::NonUnitInput);
    }
    let logs = values.iter().map(|v| plog(v, ctx)).collect::<Result<Vec<_>, _>>()?;
    let mut total = ctx.zero();
    for (&j, w) in setup.iprime.iter().zip(weights) {
        let sum = heart_weighted_sum(setup, |g| Ok(logs[setup.perms[g][j]].clone()))?;
        total = ctx.add(&total, &ctx.mul(w, &sum));
    }
    Ok(total)
}

fn weighted_unit_log(setup: &CoefficientSetup, unit: &LambdaUnit, d: usize) -> Result<PadicNumber, QexpError> {
    let ctx = setup.context();
    let mut total = ctx.zero();
    for (&j, w) in setup.iprime.iter().zip(&setup.alpha_weights) {
        total = ctx.add(&total, &ctx.mul(w, &eigen_unit_log(setup, j, unit, d)?));
    }
    Ok(total)
}

fn excluded_report(setup: &CoefficientSetup, ell: u64, prime: Vec<u64>, reason: impl Into<String>) -> CoefficientReport {
    let ctx = setup.context();
    CoefficientReport {
        ell,
        prime,
        classification: Classification::Excluded,
        reason: Some(reason.into()),
        classical_eigenvalues: Vec::new(),
        alpha_weights: setup.alpha_weights.iter().map(|w| ctx.to_json(w)).collect(),
        value: None,
        raw_value: None,
        per_lambda: Vec::new(),
        invariance_agreement: None,
        invariance_ok: true,
        precision: None,
        failure: None,
    }
}

impl CoefficientReport {
    /// Placeholder record for a prime whose computation raised an error.
    pub fn failed(setup: &CoefficientSetup, ell: u64, message: impl Into<String>) -> Self {
        let mut r = excluded_report(setup, ell, Vec::new(), "");
        r.classification = Classification::Undetermined;
        r.reason = None;
        r.invariance_ok = false;
        r.failure = Some(message.into());
        r
    }
}

fn factor_or_exclude(k: &crate::numberfield::NumberField, ell: u64) -> Result<Result<Vec<PrimeFactor>, String>, QexpError> {
    match factor_rational_prime(k, ell) {
        Ok(f) => Ok(Ok(f)),
        Err(NumberFieldError::IndexDivisor(_)) => Ok(Err("ℓ divides the index of the equation order".into())),
        Err(e) => Err(e.into()),
    }
}

/// The coefficient at every prime of F above the rational prime ℓ.
pub fn generalized_coefficient(setup: &CoefficientSetup, ell: u64) -> Result<Vec<CoefficientReport>, QexpError> {
    generalized_coefficient_with(setup, ell, &CoefficientOptions::default())
}

pub fn generalized_coefficient_with(
    setup: &CoefficientSetup,
    ell: u64,
    opts: &CoefficientOptions,
) -> Result<Vec<CoefficientReport>, QexpError> {
    if !is_prime(ell) {
        return Err(QexpError::InvalidSetup(format!("{ell} is not prime")));
    }
    if setup.excluded.contains(&ell) {
        return Ok(vec![excluded_report(setup, ell, vec![], "ℓ divides the tame level or p")]);
    }
    let grp = setup.group();
    if grp.has_denominator_divisible_by(ell) {
        return Ok(vec![excluded_report(setup, ell, vec![], "ℓ divides a denominator of the automorphisms")]);
    }
    let h_primes = match factor_or_exclude(&setup.field, ell)? {
        Ok(f) => f,
        Err(why) => return Ok(vec![excluded_report(setup, ell, vec![], why)]),
    };
    if h_primes.iter().any(|q| q.e > 1) {
        return Ok(vec![excluded_report(setup, ell, vec![], "ℓ ramifies in H")]);
    }
    let (f_primes, m_primes) = match (factor_or_exclude(&setup.base, ell)?, factor_or_exclude(&setup.m, ell)?) {
        (Ok(a), Ok(b)) => (a, b),
        (Err(why), _) | (_, Err(why)) => return Ok(vec![excluded_report(setup, ell, vec![], why)]),
    };
    if [&setup.base_image, &setup.m_image].iter().any(|x| (x.denominator() % ell).bits() == 0) {
        return Ok(vec![excluded_report(setup, ell, vec![], "ℓ divides a denominator of the subfield generators")]);
    }
    let mut out = Vec::new();
    for fp in &f_primes {
        let mut sigma_l = Vec::new();
        for (i, q) in h_primes.iter().enumerate() {
            if lies_over(&setup.base_image, fp, q)? {
                sigma_l.push(i);
            }
        }
        let mut m_under = BTreeSet::new();
        for &i in &sigma_l {
            for (k, v) in m_primes.iter().enumerate() {
                if lies_over(&setup.m_image, v, &h_primes[i])? {
                    m_under.insert(k);
                }
            }
        }
        out.push(coefficient_at_prime(setup, ell, fp, &h_primes, &sigma_l, m_under.len() == 2, opts)?);
    }
    Ok(out)
}

fn coefficient_at_prime(
    setup: &CoefficientSetup,
    ell: u64,
    fp: &PrimeFactor,
    h_primes: &[PrimeFactor],
    sigma_l: &[usize],
    split: bool,
    opts: &CoefficientOptions,
) -> Result<CoefficientReport, QexpError> {
    let ctx = setup.context();
    let grp = setup.group();
    let d = &setup.dihedral;
    let q_exp = fp.f as u32;
    let frob0 = frobenius_at(grp, &h_primes[sigma_l[0]], q_exp, &[])?;
    if d.in_gm(frob0) != split {
        return Err(QexpError::PreconditionSplit(format!(
            "Frobenius at ℓ = {ell} disagrees with the factorization in M"
        )));
    }
    let mut report = excluded_report(setup, ell, fp.local_generator.clone(), "");
    report.reason = None;
    if split {
        let twist = setup.psi.twist(grp, d.sigma())?;
        report.classification = Classification::Split;
        report.classical_eigenvalues = vec![setup.psi.value(frob0)?, twist.value(frob0)?];
        report.value = Some(ctx.to_json(&PadicNumber::ExactZero));
        report.raw_value = Some(PadicNumber::ExactZero);
        report.precision = None;
        return Ok(report);
    }
    report.classification = Classification::Inert;
    let wanted = if opts.second_representative { 2 } else { 1 };
    for &idx in sigma_l {
        let units = match find_lambda_units(&setup.field, &setup.order, h_primes, idx, &setup.search, wanted) {
            Ok(u) => u,
            Err(e @ QexpError::BoundExceeded { .. }) => {
                report.failure = Some(format!("λ = {:?}: {e}", h_primes[idx].local_generator));
                report.invariance_ok = false;
                break;
            }
            Err(e) => return Err(e),
        };
        let frob = frobenius_at(grp, &h_primes[idx], q_exp, &[])?;
        let (eta, _) = eta_value(&setup.psi, d, frob)?;
        let eta_p = setup.cyclo_value(eta)?;
        let dk = setup.decomposition_kernel_size(h_primes, idx)?;
        let unit_log = weighted_unit_log(setup, &units[0], dk)?;
        let value = ctx.mul(&eta_p, &unit_log);
        let frobenius_side_agreement = if opts.cross_check {
            Some(agreement(setup, &frobenius_side_log(setup, &units[0], dk)?, &unit_log))
        } else {
            None
        };
        let alternative = match units.get(1) {
            Some(u) => {
                let v = ctx.mul(&eta_p, &weighted_unit_log(setup, u, dk)?);
                Some(AlternativeValue {
                    h: u.h,
                    alpha: u.alpha.clone(),
                    value: ctx.to_json(&v),
                    agreement: agreement(setup, &v, &value),
                })
            }
            None => None,
        };
        report.per_lambda.push(LambdaValue {
            lambda: h_primes[idx].local_generator.clone(),
            h: units[0].h,
            alpha: units[0].alpha.clone(),
            d: dk,
            frobenius: frob,
            eta,
            unit_log: ctx.to_json(&unit_log),
            value: ctx.to_json(&value),
            raw_value: value,
            raw_unit_log: unit_log,
            frobenius_side_agreement,
            alternative,
        });
    }
    if let Some(first) = report.per_lambda.first() {
        let v = first.raw_value.clone();
        let precision = v.absolute_precision();
        let inv = report.per_lambda.iter().skip(1).map(|l| agreement(setup, &l.raw_value, &v)).min();
        let threshold = precision.map(|p| p - 5).unwrap_or(i64::MIN);
        report.invariance_agreement = inv;
        report.invariance_ok = report.failure.is_none() && inv.is_none_or(|a| a >= threshold);
        report.precision = precision;
        report.value = Some(first.value.clone());
        report.raw_value = Some(v);
    }
    Ok(report)
}
