//! Parameter-only prediction of the Sylow p-subgroups of the critical
//! group of a strongly regular graph.
//!
//! For a prime `p` and integral spectrum `r^f s^g`, everything is driven
//! by the valuation pattern `(a, b) = (v_p(r), v_p(s))`, normalized so
//! `a <= b`, and by `gamma = v_p(v)`:
//!
//! * `a = 0`: the Sylow subgroup is forced exactly
//!   ([`predict_coprime`], with the p-rank trichotomy in
//!   [`coprime_trichotomy`]);
//! * `a = b = 1`: the p-rank `e_0` determines the group
//!   ([`predict_both_once`]);
//! * `(a, b) = (1, 2)`: the p-rank determines the group up to two
//!   candidate families ([`predict_once_twice`]);
//! * anything else: no closed form — a constraint system on the
//!   elementary divisor multiplicities is emitted instead.
//!
//! [`consistency_check`] compares any prediction against a directly
//! computed group, which is how the library cross-verifies the two
//! pipelines end to end.

use crate::arith::{factor_u64, is_prime_u64, valuation_u64};
use crate::group::AbelianGroup;
use crate::matrix::PrimeLocalDivisors;
use crate::srg::{IntegralSpectrum, SrgError, SrgParams};
use num_bigint::BigUint;
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PredictError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("hypothesis violation: {op} needs valuations {needed}, got (a, b) = ({a}, {b})")]
    HypothesisViolation {
        op: &'static str,
        needed: &'static str,
        a: u32,
        b: u32,
    },
    #[error("inconsistent parameters: {0}")]
    InconsistentParameters(String),
    #[error("mu-divisibility contradiction at p = {p}: case {case} needs {needed}, mu = {mu}")]
    MuDivisibilityContradiction {
        p: u64,
        case: u8,
        needed: &'static str,
        mu: u64,
    },
    #[error("e0 = {e0} out of range [{lo}, {hi}]")]
    E0OutOfRange { e0: u64, lo: u64, hi: u64 },
    #[error(transparent)]
    Srg(#[from] SrgError),
}

/// Valuation data for one prime, normalized so that `a <= b`. After
/// normalization `f` is the multiplicity of the eigenvalue with
/// valuation `a` and `g` the multiplicity of the one with valuation `b`
/// (the structure statements are symmetric in the two eigenvalues, so
/// one orientation suffices).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeContext {
    pub p: u64,
    pub a: u32,
    pub b: u32,
    /// p-adic valuation of the vertex count.
    pub gamma: u32,
    pub f: u64,
    pub g: u64,
}

impl PrimeContext {
    /// `v_p(|K|) = a f + b g - gamma`, the p-order exponent of the
    /// critical group.
    pub fn order_exponent(&self) -> i64 {
        self.a as i64 * self.f as i64 + self.b as i64 * self.g as i64 - self.gamma as i64
    }
}

/// Exact valuations of the spectrum at `p`, normalized as in
/// [`PrimeContext`]. Refuses conference graphs.
pub fn prime_context(params: &SrgParams, p: u64) -> Result<PrimeContext, PredictError> {
    if !is_prime_u64(p) {
        return Err(PredictError::NotPrime(p));
    }
    let spec = *params.spectrum()?.integral()?;
    let va = valuation_u64(spec.r, p);
    let vb = valuation_u64(spec.s, p);
    let gamma = valuation_u64(params.v(), p);
    let (a, f, b, g) = if va <= vb {
        (va, spec.f, vb, spec.g)
    } else {
        (vb, spec.g, va, spec.f)
    };
    Ok(PrimeContext {
        p,
        a,
        b,
        gamma,
        f,
        g,
    })
}

/// An affine function `constant + e0_coeff * e0` of the p-rank.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Affine {
    pub constant: i64,
    pub e0_coeff: i64,
}

impl Affine {
    fn new(constant: i64, e0_coeff: i64) -> Self {
        Affine { constant, e0_coeff }
    }

    /// Evaluate; `None` when negative.
    pub fn eval(&self, e0: u64) -> Option<u64> {
        let value = self.constant as i128 + self.e0_coeff as i128 * e0 as i128;
        u64::try_from(value).ok()
    }

    pub fn render(&self) -> String {
        let (c, k) = (self.constant, self.e0_coeff);
        if k == 0 {
            return c.to_string();
        }
        let term = match k.abs() {
            1 => "e0".to_string(),
            m => format!("{m}e0"),
        };
        if c == 0 {
            return if k > 0 { term } else { format!("-{term}") };
        }
        if k > 0 {
            format!("{term}{c:+}")
        } else {
            format!("{c}-{term}")
        }
    }
}

/// Which of the two candidate families of the (1,2)-valuation statement
/// a rank-parametrized case belongs to (`Single` for the (1,1) case,
/// which has only one family).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CaseLabel {
    Single,
    A,
    B,
}

impl std::fmt::Display for CaseLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CaseLabel::Single => write!(f, "single"),
            CaseLabel::A => write!(f, "A"),
            CaseLabel::B => write!(f, "B"),
        }
    }
}

/// One family of groups parametrized by the p-rank `e0`: multiplicity of
/// `Z/p^i` is the affine function attached to exponent `i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankCase {
    pub p: u64,
    pub label: CaseLabel,
    /// `(exponent i, multiplicity of Z/p^i as a function of e0)`.
    pub multiplicities: Vec<(u32, Affine)>,
    /// Inclusive range of e0 values with all multiplicities nonnegative.
    pub e0_range: (u64, u64),
}

impl RankCase {
    /// The group this case yields at a given p-rank, if in range.
    pub fn group_at(&self, e0: u64) -> Option<AbelianGroup> {
        if e0 < self.e0_range.0 || e0 > self.e0_range.1 {
            return None;
        }
        let mut parts = Vec::new();
        for &(exp, aff) in &self.multiplicities {
            parts.push((BigUint::from(self.p), exp, aff.eval(e0)?));
        }
        Some(AbelianGroup::from_prime_powers(parts))
    }

    pub fn render(&self) -> String {
        let body = self
            .multiplicities
            .iter()
            .map(|(exp, aff)| {
                let q = BigUint::from(self.p).pow(*exp);
                format!("(Z/{q})^({})", aff.render())
            })
            .collect::<Vec<_>>()
            .join(" + ");
        format!(
            "case {}: {} for e0 in [{}, {}]",
            self.label, body, self.e0_range.0, self.e0_range.1
        )
    }
}

/// Constraint system emitted when no structure statement covers the
/// valuation pattern: the multiplicities `e_0..e_max` still satisfy the
/// counting and order equations and the eigenvalue bounds.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstraintSystem {
    pub p: u64,
    /// `e_0 + e_1 + ... + e_max = f + g`
    pub count_sum: u64,
    /// `1*e_1 + 2*e_2 + ... = a f + b g - gamma`
    pub weighted_sum: u64,
    /// Elementary divisor exponents are at most `a + b` (the product of
    /// the eigenvalues annihilates the group).
    pub max_exponent: u32,
    /// Eigenvalue multiplicity bounds to honor: for each entry,
    /// `multiplicity <= sum_{j<=valuation} e_j` and
    /// `multiplicity <= 1 + sum_{j>=valuation} e_j`.
    pub eigen_bounds: Vec<EigenBoundSpec>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EigenBoundSpec {
    pub valuation: u32,
    pub multiplicity: u64,
}

/// Prediction for one prime.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SylowPrediction {
    /// The group is forced.
    Exact(AbelianGroup),
    /// One or more families parametrized by the p-rank.
    RankParametrized(Vec<RankCase>),
    /// No closed form for this valuation pattern; constraints only.
    ConstraintsOnly(ConstraintSystem),
    NotApplicable(NotApplicableReason),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NotApplicableReason {
    ConferenceGraph,
    PrimeCoprimeToOrder,
}

impl std::fmt::Display for NotApplicableReason {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            NotApplicableReason::ConferenceGraph => {
                write!(f, "conference graph: eigenvalues are irrational")
            }
            NotApplicableReason::PrimeCoprimeToOrder => {
                write!(f, "the prime does not divide the group order")
            }
        }
    }
}

impl SylowPrediction {
    pub fn render(&self) -> String {
        match self {
            SylowPrediction::Exact(g) => g.to_string(),
            SylowPrediction::RankParametrized(cases) => cases
                .iter()
                .map(RankCase::render)
                .collect::<Vec<_>>()
                .join("; "),
            SylowPrediction::ConstraintsOnly(sys) => format!(
                "no closed form for this valuation pattern; constraints: \
                 sum(e_i) = {}, sum(i*e_i) = {}, exponents <= {}",
                sys.count_sum, sys.weighted_sum, sys.max_exponent
            ),
            SylowPrediction::NotApplicable(reason) => format!("not applicable: {reason}"),
        }
    }
}

/// Exact Sylow subgroup when `p` divides only one eigenvalue (`a = 0`):
/// `Z/p^(b-gamma) + (Z/p^b)^(g-1)`, where the first summand is absorbed
/// when `gamma = 0` and vanishes when `gamma = b`.
pub fn predict_coprime(ctx: &PrimeContext) -> Result<SylowPrediction, PredictError> {
    require(
        ctx,
        "predict_coprime",
        "a = 0 <= 1 <= b",
        ctx.a == 0 && ctx.b >= 1,
    )?;
    if ctx.gamma > ctx.b {
        return Err(PredictError::InconsistentParameters(format!(
            "gamma = {} exceeds b = {}; v_p(|K|) would be negative",
            ctx.gamma, ctx.b
        )));
    }
    let mut parts = vec![(ctx.p, ctx.b, ctx.g - 1)];
    if ctx.b > ctx.gamma {
        parts.push((ctx.p, ctx.b - ctx.gamma, 1));
    }
    Ok(SylowPrediction::Exact(AbelianGroup::from_parts(&parts)))
}

/// The p-rank trichotomy in the `a = 0` case.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoprimeCase {
    /// 1: `gamma = 0`; 2: `0 < gamma < b`; 3: `gamma = b`.
    pub case: u8,
    /// Forced p-rank of the Laplacian: `f` in cases 1-2, `f + 1` in case 3.
    pub e0: u64,
    pub group: AbelianGroup,
}

/// Case split for `a = 0`: the vertex-count valuation `gamma` decides the
/// case, the case decides the p-rank and whether `p` divides `mu`. A
/// divisibility mismatch against the actual `mu` certifies the parameters
/// inconsistent.
pub fn coprime_trichotomy(ctx: &PrimeContext, mu: u64) -> Result<CoprimeCase, PredictError> {
    let prediction = predict_coprime(ctx)?;
    let group = match prediction {
        SylowPrediction::Exact(g) => g,
        _ => unreachable!("coprime prediction is always exact"),
    };
    let (case, e0, needs_mu_divisible) = if ctx.gamma == 0 {
        (1u8, ctx.f, true)
    } else if ctx.gamma < ctx.b {
        (2, ctx.f, true)
    } else {
        (3, ctx.f + 1, false)
    };
    if mu.is_multiple_of(ctx.p) != needs_mu_divisible {
        return Err(PredictError::MuDivisibilityContradiction {
            p: ctx.p,
            case,
            needed: if needs_mu_divisible {
                "p | mu"
            } else {
                "p coprime to mu"
            },
            mu,
        });
    }
    Ok(CoprimeCase { case, e0, group })
}

/// `a = b = 1`: the p-rank determines the group,
/// `(Z/p)^(f+g+gamma-2e0) + (Z/p^2)^(e0-gamma)`.
pub fn predict_both_once(
    ctx: &PrimeContext,
    e0: Option<u64>,
) -> Result<SylowPrediction, PredictError> {
    require(
        ctx,
        "predict_both_once",
        "a = b = 1",
        ctx.a == 1 && ctx.b == 1,
    )?;
    let lo = ctx.gamma as u64;
    let hi = (ctx.f + ctx.g + ctx.gamma as u64) / 2;
    let case = RankCase {
        p: ctx.p,
        label: CaseLabel::Single,
        multiplicities: vec![
            (
                1,
                Affine::new((ctx.f + ctx.g + ctx.gamma as u64) as i64, -2),
            ),
            (2, Affine::new(-(ctx.gamma as i64), 1)),
        ],
        e0_range: (lo, hi),
    };
    match e0 {
        None => Ok(SylowPrediction::RankParametrized(vec![case])),
        Some(e0) => match case.group_at(e0) {
            Some(group) => Ok(SylowPrediction::Exact(group)),
            None => Err(PredictError::E0OutOfRange { e0, lo, hi }),
        },
    }
}

/// `(a, b) = (1, 2)`: the p-rank determines the group up to two
/// families,
/// `(Z/p)^(f-e0) + (Z/p^2)^(g+gamma-e0) + (Z/p^3)^(e0-gamma)` (case A) or
/// `(Z/p)^(f+1-e0) + (Z/p^2)^(g+gamma-2-e0) + (Z/p^3)^(e0-gamma+1)`
/// (case B); when `gamma = 0` only case A can occur.
pub fn predict_once_twice(
    ctx: &PrimeContext,
    e0: Option<u64>,
) -> Result<SylowPrediction, PredictError> {
    require(
        ctx,
        "predict_once_twice",
        "(a, b) = (1, 2)",
        ctx.a == 1 && ctx.b == 2,
    )?;
    let (f, g, gamma) = (ctx.f as i64, ctx.g as i64, ctx.gamma as i64);
    let mut cases = Vec::new();
    let case_a = RankCase {
        p: ctx.p,
        label: CaseLabel::A,
        multiplicities: vec![
            (1, Affine::new(f, -1)),
            (2, Affine::new(g + gamma, -1)),
            (3, Affine::new(-gamma, 1)),
        ],
        e0_range: (gamma as u64, (f.min(g + gamma)) as u64),
    };
    if case_a.e0_range.0 <= case_a.e0_range.1 {
        cases.push(case_a);
    }
    if gamma >= 1 {
        let lo = (gamma - 1) as u64;
        let hi = (f + 1).min(g + gamma - 2);
        if hi >= lo as i64 {
            cases.push(RankCase {
                p: ctx.p,
                label: CaseLabel::B,
                multiplicities: vec![
                    (1, Affine::new(f + 1, -1)),
                    (2, Affine::new(g + gamma - 2, -1)),
                    (3, Affine::new(1 - gamma, 1)),
                ],
                e0_range: (lo, hi as u64),
            });
        }
    }
    match e0 {
        None => Ok(SylowPrediction::RankParametrized(cases)),
        Some(e0) => {
            let mut hits: Vec<RankCase> = Vec::new();
            for case in &cases {
                if case.group_at(e0).is_some() {
                    let mut pinned = case.clone();
                    pinned.e0_range = (e0, e0);
                    hits.push(pinned);
                }
            }
            match hits.len() {
                0 => {
                    let lo = cases.iter().map(|c| c.e0_range.0).min().unwrap_or(0);
                    let hi = cases.iter().map(|c| c.e0_range.1).max().unwrap_or(0);
                    Err(PredictError::E0OutOfRange { e0, lo, hi })
                }
                1 => Ok(SylowPrediction::Exact(
                    hits[0].group_at(e0).expect("in range"),
                )),
                _ => Ok(SylowPrediction::RankParametrized(hits)),
            }
        }
    }
}

fn require(
    ctx: &PrimeContext,
    op: &'static str,
    needed: &'static str,
    ok: bool,
) -> Result<(), PredictError> {
    if ok {
        Ok(())
    } else {
        Err(PredictError::HypothesisViolation {
            op,
            needed,
            a: ctx.a,
            b: ctx.b,
        })
    }
}

/// Upper bound on the multiplicity of a Laplacian eigenvalue with
/// p-adic valuation (at least) `i`, read off the elementary divisor
/// multiplicities of a connected graph:
/// if `p^i` divides the eigenvalue, `m <= 1 + sum_{j >= i} e_j`;
/// if `p^i` exactly divides it, `m <= sum_{j <= i} e_j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EigenBound {
    pub eta_valuation: u32,
    pub exact: bool,
    pub bound: u64,
}

pub fn eigen_multiplicity_bound(e: &PrimeLocalDivisors, i: u32, exact: bool) -> EigenBound {
    let i_us = i as usize;
    let bound = if exact {
        e.e.iter().take(i_us + 1).sum::<u64>()
    } else {
        1 + e.e.iter().skip(i_us).sum::<u64>()
    };
    EigenBound {
        eta_valuation: i,
        exact,
        bound,
    }
}

/// Prediction for a single prime, dispatching on the valuation pattern.
/// `NotApplicable` when `p` does not divide the group order.
pub fn predict_prime(
    params: &SrgParams,
    p: u64,
    e0: Option<u64>,
) -> Result<SylowPrediction, PredictError> {
    let ctx = prime_context(params, p)?;
    if ctx.order_exponent() <= 0 {
        if ctx.order_exponent() < 0 {
            return Err(PredictError::InconsistentParameters(format!(
                "v_{p}(r^f s^g / v) = {} is negative",
                ctx.order_exponent()
            )));
        }
        return Ok(SylowPrediction::NotApplicable(
            NotApplicableReason::PrimeCoprimeToOrder,
        ));
    }
    if ctx.a == 0 {
        return predict_coprime(&ctx);
    }
    if ctx.a == 1 && ctx.b == 1 {
        return predict_both_once(&ctx, e0);
    }
    if ctx.a == 1 && ctx.b == 2 {
        return predict_once_twice(&ctx, e0);
    }
    Ok(SylowPrediction::ConstraintsOnly(ConstraintSystem {
        p,
        count_sum: ctx.f + ctx.g,
        weighted_sum: ctx.order_exponent() as u64,
        max_exponent: ctx.a + ctx.b,
        eigen_bounds: vec![
            EigenBoundSpec {
                valuation: ctx.a,
                multiplicity: ctx.f,
            },
            EigenBoundSpec {
                valuation: ctx.b,
                multiplicity: ctx.g,
            },
        ],
    }))
}

/// Full prediction report: one entry per prime dividing the critical
/// group order, ascending. `e0_hints` supplies p-ranks for the
/// rank-parametrized patterns where known.
#[derive(Clone, Debug)]
pub struct PredictionReport {
    pub params: SrgParams,
    pub spectrum: IntegralSpectrum,
    pub order: BigUint,
    pub entries: Vec<(u64, SylowPrediction)>,
}

pub fn predict_all(
    params: &SrgParams,
    e0_hints: Option<&BTreeMap<u64, u64>>,
) -> Result<PredictionReport, PredictError> {
    let spectrum = *params.spectrum()?.integral()?;
    let order = spectrum.critical_group_order(params.v())?;
    let mut primes: Vec<u64> = factor_u64(spectrum.r)
        .into_keys()
        .chain(factor_u64(spectrum.s).into_keys())
        .collect();
    primes.sort_unstable();
    primes.dedup();
    let mut entries = Vec::new();
    for p in primes {
        let ctx = prime_context(params, p)?;
        if ctx.order_exponent() <= 0 {
            continue; // p cancels against the vertex count
        }
        assert!(
            ctx.a + ctx.b >= 1,
            "a prime dividing the order must divide an eigenvalue"
        );
        let hint = e0_hints.and_then(|h| h.get(&p)).copied();
        entries.push((p, predict_prime(params, p, hint)?));
    }
    Ok(PredictionReport {
        params: *params,
        spectrum,
        order,
        entries,
    })
}

/// Outcome of comparing a prediction with a directly computed Sylow
/// subgroup at a known p-rank.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Match,
    MatchWithCase(CaseLabel),
    Mismatch(String),
}

impl Verdict {
    pub fn is_match(&self) -> bool {
        !matches!(self, Verdict::Mismatch(_))
    }
}

/// Check a prediction against a computed group. Exact predictions must
/// equal the group; rank-parametrized ones must contain it at `e0` in
/// exactly one case; constraint systems are verified equation by
/// equation.
pub fn consistency_check(
    prediction: &SylowPrediction,
    computed: &AbelianGroup,
    e0: u64,
) -> Verdict {
    match prediction {
        SylowPrediction::Exact(g) => {
            if g == computed {
                Verdict::Match
            } else {
                Verdict::Mismatch(format!("predicted {g}, computed {computed}"))
            }
        }
        SylowPrediction::RankParametrized(cases) => {
            let hits: Vec<&RankCase> = cases
                .iter()
                .filter(|c| c.group_at(e0).as_ref() == Some(computed))
                .collect();
            match hits.as_slice() {
                [one] => Verdict::MatchWithCase(one.label),
                [] => Verdict::Mismatch(format!(
                    "no case yields {computed} at e0 = {e0} (cases: {})",
                    cases
                        .iter()
                        .map(RankCase::render)
                        .collect::<Vec<_>>()
                        .join("; ")
                )),
                _ => Verdict::Mismatch(format!("multiple cases yield the same group at e0 = {e0}")),
            }
        }
        SylowPrediction::ConstraintsOnly(sys) => check_constraints(sys, computed, e0),
        SylowPrediction::NotApplicable(reason) => {
            if computed.is_trivial() {
                Verdict::Match
            } else {
                Verdict::Mismatch(format!(
                    "prediction not applicable ({reason}) but computed group is {computed}"
                ))
            }
        }
    }
}

fn check_constraints(sys: &ConstraintSystem, computed: &AbelianGroup, e0: u64) -> Verdict {
    let mults = computed.multiplicities(sys.p);
    // full e-list: e_0 = given rank, e_i = group multiplicities
    let mut e: Vec<u64> = vec![e0];
    e.extend_from_slice(mults);
    if e.iter().sum::<u64>() != sys.count_sum {
        return Verdict::Mismatch(format!(
            "count equation fails: sum(e) = {}, expected {}",
            e.iter().sum::<u64>(),
            sys.count_sum
        ));
    }
    let weighted: u64 = e.iter().enumerate().map(|(i, &m)| i as u64 * m).sum();
    if weighted != sys.weighted_sum {
        return Verdict::Mismatch(format!(
            "order equation fails: sum(i*e_i) = {weighted}, expected {}",
            sys.weighted_sum
        ));
    }
    if mults.len() > sys.max_exponent as usize {
        return Verdict::Mismatch(format!(
            "exponent {} exceeds the annihilator bound {}",
            mults.len(),
            sys.max_exponent
        ));
    }
    for spec in &sys.eigen_bounds {
        let i = spec.valuation as usize;
        let below: u64 = e.iter().take(i + 1).sum();
        let above: u64 = 1 + e.iter().skip(i).sum::<u64>();
        if spec.multiplicity > below || spec.multiplicity > above {
            return Verdict::Mismatch(format!(
                "eigenvalue bound fails at valuation {i}: multiplicity {} vs sums {below}/{above}",
                spec.multiplicity
            ));
        }
    }
    Verdict::Match
}

/// The arithmetic nonexistence argument for the parameter set
/// (28, 9, 0, 4): the p-rank trichotomy forces a 6-dimensional kernel
/// over the 7-element field, while neighborhood counting around an edge
/// exhibits 7 independent kernel vectors. Every number here is computed
/// from the parameters, not hardcoded.
#[derive(Clone, Debug)]
pub struct NonexistenceReport {
    pub params: SrgParams,
    pub spectrum: IntegralSpectrum,
    /// The odd prime dividing exactly one eigenvalue.
    pub prime: u64,
    pub trichotomy_case: u8,
    /// Forced rank of the Laplacian over the prime field.
    pub p_rank: u64,
    /// `v - p_rank`.
    pub kernel_dimension: u64,
    /// With lambda = 0 the two endpoint neighborhoods are disjoint.
    pub lambda_zero_disjoint: bool,
    /// Vertices left over around a fixed edge: v - 2 - 2(k-1).
    pub outside_count: u64,
    /// Edges each outside vertex has inside the outside set: k - 2 mu.
    pub internal_degree: u64,
    /// The outside set decomposes into this many disjoint edges.
    pub disjoint_edges: u64,
    /// Two-vertex path components including the fixed edge itself.
    pub path_components: u64,
    /// Kernel vectors: one per path component, plus the all-ones vector.
    pub independent_kernel_vectors: u64,
    pub contradiction: bool,
    /// The absolute bound v <= g(g+3)/2 fails independently.
    pub absolute_bound: u64,
    pub absolute_bound_violated: bool,
}

pub fn nonexistence_28_report() -> NonexistenceReport {
    let params = SrgParams::new(28, 9, 0, 4).expect("(28,9,0,4) satisfies the identities");
    let spectrum = *params
        .spectrum()
        .expect("integral spectrum")
        .integral()
        .expect("not a conference graph");
    let (v, k, lambda, mu) = (params.v(), params.k(), params.lambda(), params.mu());

    // The interesting prime: divides exactly one eigenvalue, so the
    // trichotomy pins the p-rank.
    let prime = factor_u64(spectrum.r * spectrum.s)
        .into_keys()
        .find(|&p| spectrum.r.is_multiple_of(p) != spectrum.s.is_multiple_of(p))
        .expect("a prime dividing exactly one eigenvalue");
    let ctx = prime_context(&params, prime).expect("integral spectrum");
    let cc = coprime_trichotomy(&ctx, mu).expect("trichotomy applies");
    let p_rank = cc.e0;
    let kernel_dimension = v - p_rank;

    // Fix adjacent x, y. X = N(x) \ {y}, Y = N(y) \ {x}; lambda = 0
    // forces X and Y disjoint, leaving Z of size v - 2 - 2(k-1).
    assert_eq!(lambda, 0, "the counting step uses lambda = 0");
    let outside_count = v - 2 - 2 * (k - 1);
    // Each z in Z is non-adjacent to both x and y, so mu edges go into
    // X union {y}; none reach y (z is outside Y), so mu into X, mu into
    // Y, and the rest stay inside Z.
    let internal_degree = k - 2 * mu;
    assert_eq!(internal_degree, 1, "outside set must decompose into edges");
    assert_eq!(outside_count % 2, 0);
    let disjoint_edges = outside_count / 2;
    let path_components = disjoint_edges + 1; // the edge {x, y} joins in
    let independent_kernel_vectors = path_components + 1; // plus all-ones
    let contradiction = independent_kernel_vectors > kernel_dimension;

    let small_mult = spectrum.f.min(spectrum.g);
    let absolute_bound = small_mult * (small_mult + 3) / 2;
    NonexistenceReport {
        params,
        spectrum,
        prime,
        trichotomy_case: cc.case,
        p_rank,
        kernel_dimension,
        lambda_zero_disjoint: lambda == 0,
        outside_count,
        internal_degree,
        disjoint_edges,
        path_components,
        independent_kernel_vectors,
        contradiction,
        absolute_bound,
        absolute_bound_violated: v > absolute_bound,
    }
}

impl NonexistenceReport {
    /// Human-readable walkthrough of the argument.
    pub fn lines(&self) -> Vec<String> {
        let s = &self.spectrum;
        vec![
            format!(
                "{}: Laplacian spectrum {}^{} and {}^{}",
                self.params, s.r, s.f, s.s, s.g
            ),
            format!(
                "p = {}: trichotomy case {} forces {}-rank {} of the Laplacian, \
                 so the kernel mod {} has dimension {}",
                self.prime,
                self.trichotomy_case,
                self.prime,
                self.p_rank,
                self.prime,
                self.kernel_dimension
            ),
            format!(
                "fix an edge {{x, y}}: lambda = 0 makes the neighborhoods disjoint, \
                 leaving {} outside vertices with {} internal edge(s) each",
                self.outside_count, self.internal_degree
            ),
            format!(
                "outside set = {} disjoint edges; with {{x, y}} that is {} two-vertex \
                 path components, each giving a kernel vector",
                self.disjoint_edges, self.path_components
            ),
            format!(
                "{} independent kernel vectors (components plus the all-ones vector) \
                 exceed dimension {}: contradiction = {}",
                self.independent_kernel_vectors, self.kernel_dimension, self.contradiction
            ),
            format!(
                "independently, the absolute bound fails: v = {} > {}",
                self.params.v(),
                self.absolute_bound
            ),
        ]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(v: u64, k: u64, l: u64, m: u64) -> SrgParams {
        SrgParams::new(v, k, l, m).unwrap()
    }

    #[test]
    fn context_unknown_190_graph() {
        let ctx = prime_context(&params(190, 84, 33, 40), 2).unwrap();
        // eigenvalues 80^133, 95^56; normalized so a = 0 pairs with 95
        assert_eq!(
            ctx,
            PrimeContext {
                p: 2,
                a: 0,
                b: 4,
                gamma: 1,
                f: 56,
                g: 133
            }
        );
    }

    #[test]
    fn context_28_9_0_4_at_7() {
        let ctx = prime_context(&params(28, 9, 0, 4), 7).unwrap();
        assert_eq!((ctx.a, ctx.b, ctx.gamma), (0, 1, 1));
        assert_eq!((ctx.f, ctx.g), (21, 6));
    }

    #[test]
    fn context_25_12_5_6_at_5() {
        let ctx = prime_context(&params(25, 12, 5, 6), 5).unwrap();
        assert_eq!((ctx.a, ctx.b, ctx.gamma, ctx.f, ctx.g), (1, 1, 2, 12, 12));
    }

    #[test]
    fn context_rejects_conference() {
        assert_eq!(
            prime_context(&params(5, 2, 0, 1), 5),
            Err(PredictError::Srg(SrgError::ConferenceGraph))
        );
    }

    #[test]
    fn coprime_190_graph() {
        let ctx = prime_context(&params(190, 84, 33, 40), 2).unwrap();
        let p = predict_coprime(&ctx).unwrap();
        assert_eq!(p.render(), "Z/8 + (Z/16)^132");
    }

    #[test]
    fn coprime_full_group_for_conway_99() {
        let report = predict_all(&params(99, 14, 1, 2), None).unwrap();
        let rendered: Vec<(u64, String)> = report
            .entries
            .iter()
            .map(|(p, pred)| (*p, pred.render()))
            .collect();
        assert_eq!(
            rendered,
            vec![
                (2, "(Z/2)^44".to_string()),
                (3, "(Z/9)^43".to_string()),
                (11, "(Z/11)^53".to_string()),
            ]
        );
    }

    #[test]
    fn coprime_28_9_0_4() {
        let ctx = prime_context(&params(28, 9, 0, 4), 7).unwrap();
        let pred = predict_coprime(&ctx).unwrap();
        assert_eq!(pred.render(), "(Z/7)^5");
        let cc = coprime_trichotomy(&ctx, 4).unwrap();
        assert_eq!(cc.case, 3);
        assert_eq!(cc.e0, 22);
    }

    #[test]
    fn trichotomy_cases_by_gamma() {
        // (99,14,1,2) at p=2: gamma = 0 -> case 1, e0 = f
        let ctx2 = prime_context(&params(99, 14, 1, 2), 2).unwrap();
        let cc = coprime_trichotomy(&ctx2, 2).unwrap();
        assert_eq!((cc.case, cc.e0), (1, 54));
        // at p=11: gamma = 1 = b -> case 3, e0 = f + 1 = 45
        let ctx11 = prime_context(&params(99, 14, 1, 2), 11).unwrap();
        let cc = coprime_trichotomy(&ctx11, 2).unwrap();
        assert_eq!((cc.case, cc.e0), (3, 45));
        assert_eq!(cc.group.to_string(), "(Z/11)^53");
        // (190,84,33,40) at p=2: gamma = 1 < b = 4 -> case 2
        let ctx190 = prime_context(&params(190, 84, 33, 40), 2).unwrap();
        let cc = coprime_trichotomy(&ctx190, 40).unwrap();
        assert_eq!((cc.case, cc.e0), (2, 56));
    }

    #[test]
    fn trichotomy_rejects_wrong_hypothesis() {
        // (36,14,4,6) at p=2: both eigenvalues even
        let ctx = prime_context(&params(36, 14, 4, 6), 2).unwrap();
        assert_eq!((ctx.a, ctx.b), (1, 2));
        assert!(matches!(
            predict_coprime(&ctx),
            Err(PredictError::HypothesisViolation { .. })
        ));
    }

    #[test]
    fn both_once_paley_25_class() {
        let ctx = prime_context(&params(25, 12, 5, 6), 5).unwrap();
        let exact9 = predict_both_once(&ctx, Some(9)).unwrap();
        assert_eq!(exact9.render(), "(Z/5)^8 + (Z/25)^7");
        let exact12 = predict_both_once(&ctx, Some(12)).unwrap();
        assert_eq!(exact12.render(), "(Z/5)^2 + (Z/25)^10");
        let symbolic = predict_both_once(&ctx, None).unwrap();
        match &symbolic {
            SylowPrediction::RankParametrized(cases) => {
                assert_eq!(cases.len(), 1);
                assert_eq!(cases[0].e0_range, (2, 13));
            }
            other => panic!("expected rank-parametrized, got {other:?}"),
        }
        assert_eq!(
            predict_both_once(&ctx, Some(1)),
            Err(PredictError::E0OutOfRange {
                e0: 1,
                lo: 2,
                hi: 13
            })
        );
    }

    #[test]
    fn both_once_symbolic_88_graph() {
        let ctx = prime_context(&params(88, 27, 6, 9), 3).unwrap();
        assert_eq!((ctx.a, ctx.b, ctx.gamma, ctx.f, ctx.g), (1, 1, 0, 55, 32));
        let pred = predict_both_once(&ctx, None).unwrap();
        match &pred {
            SylowPrediction::RankParametrized(cases) => {
                assert_eq!(
                    cases[0].render(),
                    "case single: (Z/3)^(87-2e0) + (Z/9)^(e0) for e0 in [0, 43]"
                );
            }
            other => panic!("unexpected {other:?}"),
        }
        // collapsing at e0 = 40 gives (Z/3)^7 + (Z/9)^40
        let at40 = predict_both_once(&ctx, Some(40)).unwrap();
        assert_eq!(at40.render(), "(Z/3)^7 + (Z/9)^40");
    }

    #[test]
    fn once_twice_moore_graph_families() {
        let ctx = prime_context(&params(3250, 57, 0, 1), 5).unwrap();
        assert_eq!(
            (ctx.a, ctx.b, ctx.gamma, ctx.f, ctx.g),
            (1, 2, 3, 1520, 1729)
        );
        let pred = predict_once_twice(&ctx, None).unwrap();
        let SylowPrediction::RankParametrized(cases) = &pred else {
            panic!("expected families");
        };
        assert_eq!(cases.len(), 2);
        assert_eq!(
            cases[0].render(),
            "case A: (Z/5)^(1520-e0) + (Z/25)^(1732-e0) + (Z/125)^(e0-3) for e0 in [3, 1520]"
        );
        assert_eq!(
            cases[1].render(),
            "case B: (Z/5)^(1521-e0) + (Z/25)^(1730-e0) + (Z/125)^(e0-2) for e0 in [2, 1521]"
        );
    }

    #[test]
    fn once_twice_schlafli_gamma_zero() {
        let ctx = prime_context(&params(27, 16, 10, 8), 2).unwrap();
        assert_eq!((ctx.a, ctx.b, ctx.gamma, ctx.f, ctx.g), (1, 2, 0, 20, 6));
        let symbolic = predict_once_twice(&ctx, None).unwrap();
        let SylowPrediction::RankParametrized(cases) = &symbolic else {
            panic!()
        };
        assert_eq!(cases.len(), 1, "gamma = 0 emits case A only");
        // e3 = e0 in case A when gamma = 0
        assert_eq!(cases[0].multiplicities[2].1, Affine::new(0, 1));
        let exact = predict_once_twice(&ctx, Some(6)).unwrap();
        assert_eq!(exact.render(), "(Z/2)^14 + (Z/8)^6");
    }

    #[test]
    fn once_twice_chang_kneser_class() {
        // srg(28,15,6,10): eigenvalues 14^20, 20^7, gamma = 2
        let ctx = prime_context(&params(28, 15, 6, 10), 2).unwrap();
        assert_eq!((ctx.a, ctx.b, ctx.gamma, ctx.f, ctx.g), (1, 2, 2, 20, 7));
        // e0 = 8: only case A survives
        let at8 = predict_once_twice(&ctx, Some(8)).unwrap();
        assert_eq!(at8.render(), "(Z/2)^12 + Z/4 + (Z/8)^6");
        // e0 = 7: both cases are possible
        let at7 = predict_once_twice(&ctx, Some(7)).unwrap();
        let SylowPrediction::RankParametrized(hits) = &at7 else {
            panic!("expected two candidates");
        };
        assert_eq!(hits.len(), 2);
        let case_b = hits.iter().find(|c| c.label == CaseLabel::B).unwrap();
        assert_eq!(
            case_b.group_at(7).unwrap().to_string(),
            "(Z/2)^14 + (Z/8)^6"
        );
    }

    #[test]
    fn constraints_only_pattern() {
        // (81,40,13,26): eigenvalues 39^72, 54^8; at p = 3 valuations (1, 3)
        let pred = predict_prime(&params(81, 40, 13, 26), 3, None).unwrap();
        let SylowPrediction::ConstraintsOnly(sys) = &pred else {
            panic!("expected constraints, got {pred:?}");
        };
        assert_eq!(sys.count_sum, 80);
        assert_eq!(sys.weighted_sum, 72 + 24 - 4);
        assert_eq!(sys.max_exponent, 4);
    }

    #[test]
    fn predict_all_88_graph_dispatch() {
        let report = predict_all(&params(88, 27, 6, 9), None).unwrap();
        let kinds: Vec<(u64, bool)> = report
            .entries
            .iter()
            .map(|(p, pred)| (*p, matches!(pred, SylowPrediction::Exact(_))))
            .collect();
        // eigenvalues 24^55, 33^32: p = 2, 11 exact; p = 3 rank-parametrized
        assert_eq!(kinds, vec![(2, true), (3, false), (11, true)]);
    }

    #[test]
    fn predict_prime_not_applicable() {
        let pred = predict_prime(&params(10, 3, 0, 1), 7, None).unwrap();
        assert!(matches!(
            pred,
            SylowPrediction::NotApplicable(NotApplicableReason::PrimeCoprimeToOrder)
        ));
    }

    #[test]
    fn eigen_bounds_petersen_and_rook() {
        // Petersen invariant factors 1,1,1,1,1,2,10,10,10: at p = 5,
        // e = (6, 3); the exact bound at valuation 1 is 9 >= g = 4.
        let e = PrimeLocalDivisors {
            p: 5,
            e: vec![6, 3],
            free_rank: 1,
        };
        assert_eq!(eigen_multiplicity_bound(&e, 1, true).bound, 9);
        assert_eq!(eigen_multiplicity_bound(&e, 0, true).bound, 6);
        // rook(4) at p = 2: e = (6, 0, 0, 5, 0, 4); divisible bound at
        // valuation 3 is 1 + 5 + 0 + 4 = 10 >= f = 6.
        let e = PrimeLocalDivisors {
            p: 2,
            e: vec![6, 0, 0, 5, 0, 4],
            free_rank: 1,
        };
        assert_eq!(eigen_multiplicity_bound(&e, 3, false).bound, 10);
    }

    #[test]
    fn consistency_verdicts() {
        let exact = SylowPrediction::Exact(AbelianGroup::from_parts(&[(7, 1, 5)]));
        let good = AbelianGroup::from_parts(&[(7, 1, 5)]);
        let bad = AbelianGroup::from_parts(&[(7, 1, 4)]);
        assert_eq!(consistency_check(&exact, &good, 22), Verdict::Match);
        assert!(matches!(
            consistency_check(&exact, &bad, 22),
            Verdict::Mismatch(_)
        ));

        let ctx = prime_context(&params(28, 15, 6, 10), 2).unwrap();
        let symbolic = predict_once_twice(&ctx, None).unwrap();
        let kneser_k2 = AbelianGroup::from_parts(&[(2, 1, 14), (2, 3, 6)]);
        assert_eq!(
            consistency_check(&symbolic, &kneser_k2, 7),
            Verdict::MatchWithCase(CaseLabel::B)
        );
        let chang_k2 = AbelianGroup::from_parts(&[(2, 1, 12), (2, 2, 1), (2, 3, 6)]);
        assert_eq!(
            consistency_check(&symbolic, &chang_k2, 8),
            Verdict::MatchWithCase(CaseLabel::A)
        );
        assert!(matches!(
            consistency_check(&symbolic, &chang_k2, 7),
            Verdict::Mismatch(_)
        ));
    }

    #[test]
    fn consistency_constraints() {
        let pred = predict_prime(&params(81, 40, 13, 26), 3, None).unwrap();
        // e = (3, 69, 1, 7, 0) satisfies every constraint: count 80,
        // weighted sum 69 + 2 + 21 = 92, exponents <= 4, and the
        // eigenvalue bounds e0 + e1 >= f = 72 and 1 + e3 + e4 >= g = 8.
        let group = AbelianGroup::from_parts(&[(3, 1, 69), (3, 2, 1), (3, 3, 7)]);
        assert_eq!(consistency_check(&pred, &group, 3), Verdict::Match);
        // same shape but short one factor: the count equation fails
        let wrong = AbelianGroup::from_parts(&[(3, 1, 68), (3, 2, 1), (3, 3, 7)]);
        assert!(matches!(
            consistency_check(&pred, &wrong, 3),
            Verdict::Mismatch(_)
        ));
        // bounds violated even though count and order pass:
        // e = (40, 0, 28, 12, 0) has e0 + e1 = 40 < f
        let unbalanced = AbelianGroup::from_parts(&[(3, 2, 28), (3, 3, 12)]);
        assert!(matches!(
            consistency_check(&pred, &unbalanced, 40),
            Verdict::Mismatch(_)
        ));
    }

    #[test]
    fn nonexistence_28_numbers() {
        let report = nonexistence_28_report();
        assert_eq!(report.prime, 7);
        assert_eq!(report.trichotomy_case, 3);
        assert_eq!(report.p_rank, 22);
        assert_eq!(report.kernel_dimension, 6);
        assert!(report.lambda_zero_disjoint);
        assert_eq!(report.outside_count, 10);
        assert_eq!(report.internal_degree, 1);
        assert_eq!(report.disjoint_edges, 5);
        assert_eq!(report.path_components, 6);
        assert_eq!(report.independent_kernel_vectors, 7);
        assert!(report.contradiction);
        assert_eq!(report.absolute_bound, 27);
        assert!(report.absolute_bound_violated);
    }

    #[test]
    fn both_once_range_endpoints() {
        // at the lower endpoint e0 = gamma the group is elementary
        // abelian; at the upper endpoint (when the range is exact) there
        // are no Z/p summands
        let ctx = prime_context(&params(25, 12, 5, 6), 5).unwrap();
        let low = predict_both_once(&ctx, Some(ctx.gamma as u64)).unwrap();
        assert_eq!(low.render(), "(Z/5)^22"); // f + g - gamma copies
        let hi = (ctx.f + ctx.g + ctx.gamma as u64) / 2;
        assert_eq!((ctx.f + ctx.g + ctx.gamma as u64) % 2, 0);
        let high = predict_both_once(&ctx, Some(hi)).unwrap();
        assert_eq!(high.render(), "(Z/25)^11");
    }

    #[test]
    fn affine_rendering() {
        assert_eq!(Affine::new(87, -2).render(), "87-2e0");
        assert_eq!(Affine::new(0, 1).render(), "e0");
        assert_eq!(Affine::new(-3, 1).render(), "e0-3");
        assert_eq!(Affine::new(1520, -1).render(), "1520-e0");
        assert_eq!(Affine::new(5, 0).render(), "5");
        assert_eq!(Affine::new(1, 1).render(), "e0+1");
    }

    #[test]
    fn rank_case_total_order_invariant() {
        // every case yields groups of the forced p-order across its range
        for (v, k, l, m, p) in [
            (25u64, 12, 5, 6, 5u64),
            (3250, 57, 0, 1, 5),
            (28, 15, 6, 10, 2),
        ] {
            let prms = params(v, k, l, m);
            let ctx = prime_context(&prms, p).unwrap();
            let pred = predict_prime(&prms, p, None).unwrap();
            let SylowPrediction::RankParametrized(cases) = pred else {
                panic!("expected families for {v} {k} {l} {m}");
            };
            for case in cases {
                for e0 in case.e0_range.0..=case.e0_range.1.min(case.e0_range.0 + 50) {
                    let group = case.group_at(e0).expect("in range");
                    let expected = BigUint::from(p).pow(ctx.order_exponent() as u32);
                    assert_eq!(group.order(), expected, "case {} e0={e0}", case.label);
                }
            }
        }
    }
}
