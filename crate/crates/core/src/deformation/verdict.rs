use serde::{Deserialize, Serialize};

use super::{DeformationError, SplittingProfile};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AssumptionStatus {
    Computed,
    Asserted,
    Failed,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LedgerEntry {
    pub assumption: String,
    pub status: AssumptionStatus,
}

/// A three-way verdict. Failed hypotheses give `Inapplicable`, never `False`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", content = "reason", rename_all = "snake_case")]
pub enum Outcome {
    True,
    False,
    Inapplicable(String),
    Inconclusive(String),
}

impl Outcome {
    pub fn from_bool(b: bool) -> Self {
        if b {
            Outcome::True
        } else {
            Outcome::False
        }
    }

    pub fn is_true(&self) -> bool {
        matches!(self, Outcome::True)
    }
}

/// Hypotheses of the ramification criterion for M with complex places.
/// None of them is decidable here; all are asserted by the caller.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RamificationFlags {
    pub conductor_split: bool,
    pub absolutely_irreducible: bool,
    pub p_distinguished: bool,
    pub heart_residual_not_quadratic: bool,
    pub p_unramified_in_m: bool,
}

/// The biquadratic CM situation: M = F·K with K imaginary quadratic.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CmDescriptor {
    pub p_split_in_k: bool,
    pub xi_heart_even_order: bool,
    pub psi_heart_square_nontrivial: bool,
    /// p-regularity at each place above p.
    pub regular_places: Vec<bool>,
}

/// Local contribution dim H¹(M_v, ψ♥⁻¹) = e·f of a prime in S_p.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Contribution {
    pub prime: usize,
    pub e: u32,
    pub f: u32,
    pub local_h1_dim: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RamifiedVerdict {
    /// n − r − |S^p| − Σ_{S^p} e·f.
    pub margin: i64,
    pub ramified: Outcome,
    pub t0_lower_bound: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeometryVerdict {
    pub fiber_tangent_dim: Option<u32>,
    pub ord_tangent_dim: Option<u32>,
    pub total_tangent_dim: u32,
    pub smooth: bool,
    pub etale: Outcome,
    pub ramified: Outcome,
    pub margin: Option<i64>,
    pub t0_lower_bound: i64,
    pub contributions: Vec<Contribution>,
    pub assumptions_ledger: Vec<LedgerEntry>,
}

fn totally_real_hypotheses(p: &SplittingProfile) -> Result<(), DeformationError> {
    p.validate()?;
    if p.r != 0 {
        return Err(DeformationError::Inapplicable(format!("M is not totally real (r = {})", p.r)));
    }
    if !p.leopoldt_assumed {
        return Err(DeformationError::Inapplicable("Leopoldt conjecture for M not assumed".into()));
    }
    if !p.p_regular {
        return Err(DeformationError::Inapplicable("ρ is not p-regular".into()));
    }
    Ok(())
}

/// Σ_{𝔭_i ∈ S_p} e_i·f_i, the tangent dimension of the weight-κ fiber.
pub fn fiber_tangent_dim(p: &SplittingProfile) -> Result<u32, DeformationError> {
    totally_real_hypotheses(p)?;
    Ok(p.split_degree())
}

/// max{1, Σ_{S_p} e_i·f_i}.
pub fn ord_tangent_dim(p: &SplittingProfile) -> Result<u32, DeformationError> {
    Ok(fiber_tangent_dim(p)?.max(1))
}

/// Étaleness in the biquadratic CM case. Also returns the ledger of the
/// hypotheses consulted.
pub fn etale_verdict(case: &CmDescriptor) -> (Outcome, Vec<LedgerEntry>) {
    let checks = [
        ("p splits in the imaginary quadratic K", case.p_split_in_k),
        ("ξ♥ has even order", case.xi_heart_even_order),
        ("ψ♥² is nontrivial", case.psi_heart_square_nontrivial),
        ("p-regular at every place above p", !case.regular_places.is_empty() && case.regular_places.iter().all(|&b| b)),
    ];
    let ledger = checks
        .iter()
        .map(|&(name, ok)| LedgerEntry {
            assumption: name.into(),
            status: if ok { AssumptionStatus::Asserted } else { AssumptionStatus::Failed },
        })
        .collect();
    let outcome = match checks.iter().find(|(_, ok)| !ok) {
        Some((name, _)) => Outcome::Inapplicable(format!("hypothesis fails: {name}")),
        None => Outcome::True,
    };
    (outcome, ledger)
}

/// The ramification criterion for M with 2r complex embeddings.
pub fn ramified_verdict(
    p: &SplittingProfile,
    flags: &RamificationFlags,
) -> Result<(RamifiedVerdict, Vec<LedgerEntry>), DeformationError> {
    p.validate()?;
    let nonsplit = p.nonsplit_primes().count() as i64;
    let margin = p.n as i64 - p.r as i64 - nonsplit - p.nonsplit_degree() as i64;
    let checks = [
        ("conductor condition at split primes", flags.conductor_split),
        ("absolute irreducibility over F(√p*)", flags.absolutely_irreducible),
        ("p-distinguished", flags.p_distinguished),
        ("residual ψ♥ not quadratic", flags.heart_residual_not_quadratic),
        ("p unramified in M", flags.p_unramified_in_m),
    ];
    let mut ledger: Vec<LedgerEntry> = checks
        .iter()
        .map(|&(name, ok)| LedgerEntry {
            assumption: name.into(),
            status: if ok { AssumptionStatus::Asserted } else { AssumptionStatus::Failed },
        })
        .collect();
    ledger.push(LedgerEntry {
        assumption: "n − r − |S^p| − Σ_{S^p} e·f > 0".into(),
        status: if margin > 0 { AssumptionStatus::Computed } else { AssumptionStatus::Failed },
    });
    let ramified = if let Some((name, _)) = checks.iter().find(|(_, ok)| !ok) {
        Outcome::Inapplicable(format!("hypothesis fails: {name}"))
    } else if margin > 0 {
        Outcome::True
    } else {
        Outcome::Inconclusive(format!("margin {margin} is not positive"))
    };
    Ok((RamifiedVerdict { margin, ramified, t0_lower_bound: margin.max(0) }, ledger))
}

fn push(ledger: &mut Vec<LedgerEntry>, name: &str, status: AssumptionStatus) {
    if !ledger.iter().any(|e| e.assumption == name) {
        ledger.push(LedgerEntry { assumption: name.into(), status });
    }
}

fn asserted(b: bool) -> AssumptionStatus {
    if b {
        AssumptionStatus::Asserted
    } else {
        AssumptionStatus::Failed
    }
}

/// Full verdict record. `cm` selects the biquadratic CM case, `ram` supplies
/// the hypotheses of the ramification criterion.
pub fn geometry_verdict(
    p: &SplittingProfile,
    ram: Option<&RamificationFlags>,
    cm: Option<&CmDescriptor>,
) -> Result<GeometryVerdict, DeformationError> {
    p.validate()?;
    let mut ledger = Vec::new();
    push(&mut ledger, "Leopoldt conjecture for M", asserted(p.leopoldt_assumed));
    push(&mut ledger, "p-regular", asserted(p.p_regular));
    let totally_real = p.r == 0;
    if cm.is_some() {
        push(
            &mut ledger,
            "M has complex places",
            if totally_real { AssumptionStatus::Failed } else { AssumptionStatus::Computed },
        );
    } else {
        push(
            &mut ledger,
            "M totally real",
            if totally_real { AssumptionStatus::Computed } else { AssumptionStatus::Failed },
        );
    }

    let contributions: Vec<Contribution> = p
        .primes
        .iter()
        .enumerate()
        .filter(|(_, q)| q.splits_in_m)
        .map(|(i, q)| Contribution { prime: i, e: q.e, f: q.f, local_h1_dim: q.local_degree() })
        .collect();
    let contribution_total: u32 = contributions.iter().map(|c| c.local_h1_dim).sum();

    let mut v = GeometryVerdict {
        fiber_tangent_dim: None,
        ord_tangent_dim: None,
        total_tangent_dim: p.n + 1,
        smooth: false,
        etale: Outcome::Inapplicable("no applicable criterion".into()),
        ramified: Outcome::Inapplicable("ramification hypotheses not supplied".into()),
        margin: None,
        t0_lower_bound: 0,
        contributions,
        assumptions_ledger: Vec::new(),
    };

    if let Some(case) = cm {
        let (etale, l) = etale_verdict(case);
        for e in l {
            push(&mut ledger, &e.assumption, e.status);
        }
        if etale.is_true() {
            v.fiber_tangent_dim = Some(0);
            v.ord_tangent_dim = Some(1);
            v.smooth = true;
        }
        v.etale = etale;
    } else {
        match fiber_tangent_dim(p) {
            Ok(d) => {
                debug_assert_eq!(d, contribution_total);
                v.fiber_tangent_dim = Some(d);
                v.ord_tangent_dim = Some(d.max(1));
                v.smooth = true;
                v.etale = Outcome::from_bool(d == 0);
                v.t0_lower_bound = d as i64;
            }
            Err(DeformationError::Inapplicable(why)) => v.etale = Outcome::Inapplicable(why),
            Err(e) => return Err(e),
        }
    }

    if let Some(flags) = ram {
        let (rv, l) = ramified_verdict(p, flags)?;
        for e in l {
            push(&mut ledger, &e.assumption, e.status);
        }
        v.ramified = rv.ramified;
        v.margin = Some(rv.margin);
        if !totally_real {
            v.t0_lower_bound = rv.t0_lower_bound;
        }
    }
    v.assumptions_ledger = ledger;
    Ok(v)
}
