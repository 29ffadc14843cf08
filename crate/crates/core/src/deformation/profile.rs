use serde::{Deserialize, Serialize};

use super::DeformationError;

/// Which Frobenius eigenvalue the chosen p-stabilization uses at a prime of
/// F above p that splits in M.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum StabClass {
    /// U_𝔭-eigenvalue ψ^σ(Frob_v).
    #[serde(rename = "I")]
    I,
    /// U_𝔭-eigenvalue ψ(Frob_v).
    #[serde(rename = "I'")]
    IPrime,
    #[serde(rename = "none")]
    None,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeAboveP {
    pub e: u32,
    pub f: u32,
    pub splits_in_m: bool,
    pub stab_class: StabClass,
}

impl PrimeAboveP {
    pub fn split(e: u32, f: u32, class: StabClass) -> Self {
        PrimeAboveP { e, f, splits_in_m: true, stab_class: class }
    }

    pub fn nonsplit(e: u32, f: u32) -> Self {
        PrimeAboveP { e, f, splits_in_m: false, stab_class: StabClass::None }
    }

    pub fn local_degree(&self) -> u32 {
        self.e * self.f
    }
}

/// How p decomposes in F and M, plus the global hypotheses.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplittingProfile {
    /// [F : ℚ].
    pub n: u32,
    /// M has 2r complex embeddings.
    pub r: u32,
    pub primes: Vec<PrimeAboveP>,
    pub leopoldt_assumed: bool,
    pub p_regular: bool,
}

impl SplittingProfile {
    pub fn validate(&self) -> Result<(), DeformationError> {
        let bad = |m: String| Err(DeformationError::InvalidProfile(m));
        if self.n == 0 {
            return bad("[F:ℚ] must be positive".into());
        }
        if self.r > self.n {
            return bad(format!("r = {} exceeds [F:ℚ] = {}", self.r, self.n));
        }
        for (i, p) in self.primes.iter().enumerate() {
            if p.e == 0 || p.f == 0 {
                return bad(format!("prime {i}: e and f must be positive"));
            }
            if p.splits_in_m != (p.stab_class != StabClass::None) {
                return bad(format!("prime {i}: stabilization class must be set exactly for split primes"));
            }
        }
        let total: u32 = self.primes.iter().map(PrimeAboveP::local_degree).sum();
        if total > self.n {
            return bad(format!("Σ e·f = {total} exceeds [F:ℚ] = {}", self.n));
        }
        Ok(())
    }

    /// S_p: primes above p splitting in M.
    pub fn split_primes(&self) -> impl Iterator<Item = &PrimeAboveP> {
        self.primes.iter().filter(|p| p.splits_in_m)
    }

    /// S^p: the remaining primes above p.
    pub fn nonsplit_primes(&self) -> impl Iterator<Item = &PrimeAboveP> {
        self.primes.iter().filter(|p| !p.splits_in_m)
    }

    pub fn split_degree(&self) -> u32 {
        self.split_primes().map(PrimeAboveP::local_degree).sum()
    }

    pub fn nonsplit_degree(&self) -> u32 {
        self.nonsplit_primes().map(PrimeAboveP::local_degree).sum()
    }

    /// Compares with live data: `(e, f, splits_in_m)` for every prime of F
    /// above p. The lists must agree as multisets and cover p completely.
    pub fn cross_validate(&self, live: &[(u32, u32, bool)]) -> Result<(), DeformationError> {
        let mut mine: Vec<(u32, u32, bool)> = self.primes.iter().map(|p| (p.e, p.f, p.splits_in_m)).collect();
        let mut theirs = live.to_vec();
        mine.sort_unstable();
        theirs.sort_unstable();
        if mine != theirs {
            return Err(DeformationError::ProfileMismatch(format!("declared {mine:?}, computed {theirs:?}")));
        }
        let total: u32 = live.iter().map(|(e, f, _)| e * f).sum();
        if total != self.n {
            return Err(DeformationError::ProfileMismatch(format!("Σ e·f = {total} but [F:ℚ] = {}", self.n)));
        }
        Ok(())
    }
}
