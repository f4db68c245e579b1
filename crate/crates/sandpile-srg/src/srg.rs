//! Parameter arithmetic for strongly regular graphs: feasibility checks,
//! the Laplacian spectrum, critical-group order and exponent bound, and
//! complementation. Everything here is a pure function of the parameter
//! quadruple `(v, k, lambda, mu)`; no graph is ever constructed.

use crate::arith::sqrt_exact;
use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::Zero;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SrgError {
    #[error("degenerate parameters (v={v}, k={k}): need 0 < k < v - 1")]
    DegenerateParams { v: u64, k: u64 },
    #[error("mu = 0: a connected non-complete strongly regular graph has mu >= 1")]
    ZeroMu,
    #[error("edge-count identity fails: k(k-lambda-1) = {lhs} but (v-k-1)mu = {rhs}")]
    CountingIdentity { lhs: i64, rhs: i64 },
    #[error("eigenvalue multiplicities are not positive integers (f = {f_num}/{den})")]
    NonIntegralMultiplicity { f_num: i64, den: u64 },
    #[error("irrational eigenvalues but 2k + (v-1)(lambda-mu) = {residue} != 0; infeasible")]
    ConferenceOddity { residue: i64 },
    #[error("v = {v} does not divide r^f * s^g; no such graph exists")]
    NonIntegralOrder { v: u64 },
    #[error("complement parameters are degenerate (complement is disconnected or complete)")]
    ComplementDegenerate,
    #[error("spectrum is irrational (conference graph); this operation needs integer eigenvalues")]
    ConferenceGraph,
}

/// The parameter quadruple of a strongly regular graph. Construction
/// enforces `0 < k < v-1`, `mu >= 1`, and the two-way edge count
/// `k(k - lambda - 1) = (v - k - 1) mu`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct SrgParams {
    v: u64,
    k: u64,
    lambda: u64,
    mu: u64,
}

impl SrgParams {
    pub fn new(v: u64, k: u64, lambda: u64, mu: u64) -> Result<Self, SrgError> {
        if k == 0 || k + 1 >= v {
            return Err(SrgError::DegenerateParams { v, k });
        }
        if mu == 0 {
            return Err(SrgError::ZeroMu);
        }
        // lambda <= k - 2 for any non-complete strongly regular graph, so
        // compute the left side in signed arithmetic before comparing.
        let lhs = k as i128 * (k as i128 - lambda as i128 - 1);
        let rhs = ((v - k - 1) * mu) as i128;
        if lhs != rhs {
            return Err(SrgError::CountingIdentity {
                lhs: lhs as i64,
                rhs: rhs as i64,
            });
        }
        Ok(SrgParams { v, k, lambda, mu })
    }

    pub fn v(&self) -> u64 {
        self.v
    }

    pub fn k(&self) -> u64 {
        self.k
    }

    pub fn lambda(&self) -> u64 {
        self.lambda
    }

    pub fn mu(&self) -> u64 {
        self.mu
    }

    /// The nonzero Laplacian eigenvalues `r < s` and multiplicities
    /// `f, g`, solved from `r+s = 2k - lambda + mu`, `rs = mu v`,
    /// `f+g = v-1`, `rf+sg = vk`. A non-square discriminant means a
    /// conference graph (legal only when the multiplicities can be equal).
    pub fn spectrum(&self) -> Result<LaplacianSpectrum, SrgError> {
        let (v, k, lambda, mu) = (self.v, self.k, self.lambda, self.mu);
        let trace = 2 * k + mu - lambda; // r + s; lambda <= k - 2 by construction
        let disc_signed = trace as i128 * trace as i128 - 4 * mu as i128 * v as i128;
        if disc_signed < 0 {
            // r, s complex: impossible for a real symmetric matrix, so the
            // parameters are infeasible; surface as non-integral.
            return Err(SrgError::NonIntegralMultiplicity {
                f_num: disc_signed as i64,
                den: 1,
            });
        }
        let disc = disc_signed as u64;
        let (root, exact) = sqrt_exact(disc);
        if !exact {
            // Conference graph: multiplicities must balance exactly.
            let residue = 2 * k as i64 + (v as i64 - 1) * (lambda as i64 - mu as i64);
            if residue != 0 || (v - 1) % 2 != 0 {
                return Err(SrgError::ConferenceOddity { residue });
            }
            return Ok(LaplacianSpectrum::Conference {
                multiplicity: (v - 1) / 2,
            });
        }
        if root == 0 {
            // r = s contradicts two distinct nonzero eigenvalues.
            return Err(SrgError::NonIntegralMultiplicity { f_num: 0, den: 0 });
        }
        let r = (trace - root) / 2;
        let s = (trace + root) / 2;
        if r == 0 {
            return Err(SrgError::DegenerateParams { v, k });
        }
        // f = (s(v-1) - vk) / (s - r), g = v - 1 - f
        let f_num = (s * (v - 1)) as i64 - (v * k) as i64;
        let den = s - r;
        if f_num <= 0 || f_num % den as i64 != 0 {
            return Err(SrgError::NonIntegralMultiplicity { f_num, den });
        }
        let f = f_num as u64 / den;
        if f >= v - 1 {
            return Err(SrgError::NonIntegralMultiplicity { f_num, den });
        }
        let g = v - 1 - f;
        Ok(LaplacianSpectrum::Integral(IntegralSpectrum { r, s, f, g }))
    }

    /// Parameters of the complement graph:
    /// `(v, v-k-1, v-2-2k+mu, v-2k+lambda)`.
    pub fn complement(&self) -> Result<SrgParams, SrgError> {
        let (v, k, lambda, mu) = (self.v, self.k, self.lambda, self.mu);
        let k2 = v - k - 1;
        let lambda2 = (v + mu)
            .checked_sub(2 + 2 * k)
            .ok_or(SrgError::ComplementDegenerate)?;
        let mu2 = (v + lambda)
            .checked_sub(2 * k)
            .ok_or(SrgError::ComplementDegenerate)?;
        SrgParams::new(v, k2, lambda2, mu2).map_err(|_| SrgError::ComplementDegenerate)
    }
}

impl std::fmt::Display for SrgParams {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "srg({},{},{},{})", self.v, self.k, self.lambda, self.mu)
    }
}

impl std::fmt::Debug for SrgParams {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{self}")
    }
}

/// Nonzero Laplacian spectrum of a strongly regular graph. Conference
/// graphs have irrational eigenvalues, so only the (common) multiplicity
/// is available there.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LaplacianSpectrum {
    Integral(IntegralSpectrum),
    Conference { multiplicity: u64 },
}

impl LaplacianSpectrum {
    pub fn is_integral(&self) -> bool {
        matches!(self, LaplacianSpectrum::Integral(_))
    }

    /// The integral spectrum, or the conference-graph refusal.
    pub fn integral(&self) -> Result<&IntegralSpectrum, SrgError> {
        match self {
            LaplacianSpectrum::Integral(s) => Ok(s),
            LaplacianSpectrum::Conference { .. } => Err(SrgError::ConferenceGraph),
        }
    }
}

/// Integer Laplacian eigenvalues `0 < r < s` with multiplicities `f, g`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct IntegralSpectrum {
    pub r: u64,
    pub f: u64,
    pub s: u64,
    pub g: u64,
}

impl IntegralSpectrum {
    /// Order of the critical group, `r^f s^g / v` (the matrix-tree count
    /// of spanning trees). Errors when `v` fails to divide the product,
    /// which certifies the parameter set infeasible.
    pub fn critical_group_order(&self, v: u64) -> Result<BigUint, SrgError> {
        let product =
            BigUint::from(self.r).pow(self.f as u32) * BigUint::from(self.s).pow(self.g as u32);
        let (q, rem) = product.div_rem(&BigUint::from(v));
        if !rem.is_zero() {
            return Err(SrgError::NonIntegralOrder { v });
        }
        Ok(q)
    }

    /// `r*s = mu*v`, which annihilates the critical group, so the group
    /// exponent divides it.
    pub fn exponent_bound(&self) -> u64 {
        self.r * self.s
    }
}

/// Outcome of the raw-integer feasibility screen.
#[derive(Clone, Debug, Serialize)]
pub struct FeasibilityReport {
    /// `k(k - lambda - 1) = (v - k - 1) mu` (with the basic shape
    /// conditions `0 < k < v-1`, `mu >= 1` folded in).
    pub identity_ok: bool,
    /// Eigenvalue multiplicities exist as positive integers.
    pub multiplicities_integral: bool,
    /// `v <= f(f+3)/2` and `v <= g(g+3)/2`; evaluated only for integral
    /// spectra, and left `true` otherwise.
    pub absolute_bound_ok: bool,
    /// Irrational eigenvalues with balanced multiplicities.
    pub conference: bool,
    pub notes: Vec<String>,
}

impl FeasibilityReport {
    pub fn all_ok(&self) -> bool {
        self.identity_ok && self.multiplicities_integral && self.absolute_bound_ok
    }
}

/// Screen a raw parameter quadruple. Failures are report entries, never
/// errors; each failed condition is flagged and explained in `notes`.
pub fn validate_params(v: u64, k: u64, lambda: u64, mu: u64) -> FeasibilityReport {
    let mut report = FeasibilityReport {
        identity_ok: true,
        multiplicities_integral: true,
        absolute_bound_ok: true,
        conference: false,
        notes: Vec::new(),
    };
    let params = match SrgParams::new(v, k, lambda, mu) {
        Ok(p) => p,
        Err(e) => {
            report.identity_ok = false;
            report.notes.push(e.to_string());
            return report;
        }
    };
    match params.spectrum() {
        Ok(LaplacianSpectrum::Integral(spec)) => {
            // absolute bound on both multiplicities
            for (name, m) in [("f", spec.f), ("g", spec.g)] {
                let bound = m * (m + 3) / 2;
                if v > bound {
                    report.absolute_bound_ok = false;
                    report.notes.push(format!(
                        "absolute bound fails at {name}: v = {v} > {name}({name}+3)/2 = {bound}"
                    ));
                }
            }
            if spec.critical_group_order(v).is_err() {
                report.multiplicities_integral = false;
                report.notes.push("v does not divide r^f s^g".to_string());
            }
        }
        Ok(LaplacianSpectrum::Conference { .. }) => {
            report.conference = true;
            report
                .notes
                .push("conference graph: irrational eigenvalues, f = g = (v-1)/2".to_string());
        }
        Err(e) => {
            report.multiplicities_integral = false;
            report.notes.push(e.to_string());
        }
    }
    report
}
