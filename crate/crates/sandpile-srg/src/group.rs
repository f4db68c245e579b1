//! Finite abelian groups and critical-group extraction.
//!
//! The canonical internal presentation is the elementary-divisor map:
//! for each prime `p`, the multiplicities of `Z/p`, `Z/p^2`, ... . All
//! structure results in this crate are stated per prime, so that form is
//! primary; the invariant-factor chain is a derived view. Two groups are
//! isomorphic exactly when their canonical maps are equal, so `==` is
//! isomorphism.

use crate::arith::{factor, is_prime_u64};
use crate::matrix::{IntMatrix, MatrixError, SmithNormalForm};
use num_bigint::BigUint;
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GroupError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("matrix is not a graph Laplacian ({0})")]
    NotLaplacian(&'static str),
    #[error("graph is disconnected ({zeros} zero invariant factors)")]
    Disconnected { zeros: usize },
    #[error(transparent)]
    Matrix(#[from] MatrixError),
}

/// A finite abelian group, keyed by prime: `divisors[p] = [m_1, m_2, ...]`
/// where `m_i` is the multiplicity of `Z/p^i`.
///
/// Invariants: no multiplicity list is empty or ends in zero.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct AbelianGroup {
    divisors: BTreeMap<BigUint, Vec<u64>>,
}

impl AbelianGroup {
    pub fn trivial() -> Self {
        AbelianGroup::default()
    }

    pub fn is_trivial(&self) -> bool {
        self.divisors.is_empty()
    }

    /// Build from `(prime, exponent, multiplicity)` summands, i.e. the
    /// direct sum of `(Z/p^exponent)^multiplicity` over the entries.
    pub fn from_prime_powers<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (BigUint, u32, u64)>,
    {
        let mut g = AbelianGroup::trivial();
        for (p, exponent, multiplicity) in terms {
            g.add_summand(p, exponent, multiplicity);
        }
        g
    }

    /// Convenience constructor from machine-word primes.
    pub fn from_parts(terms: &[(u64, u32, u64)]) -> Self {
        Self::from_prime_powers(terms.iter().map(|&(p, e, m)| (BigUint::from(p), e, m)))
    }

    fn add_summand(&mut self, p: BigUint, exponent: u32, multiplicity: u64) {
        if exponent == 0 || multiplicity == 0 {
            return;
        }
        debug_assert!(p >= BigUint::from(2u32));
        let list = self.divisors.entry(p).or_default();
        let idx = exponent as usize - 1;
        if list.len() <= idx {
            list.resize(idx + 1, 0);
        }
        list[idx] += multiplicity;
    }

    /// Build from a chain of (not necessarily sorted) nonzero factor
    /// values; factors equal to 1 contribute nothing.
    pub fn from_invariant_factors(factors: &[BigUint]) -> Self {
        let mut g = AbelianGroup::trivial();
        for d in factors {
            assert!(
                !d.is_zero(),
                "invariant factors of a finite group are nonzero"
            );
            for (p, e) in factor(d) {
                g.add_summand(p, e as u32, 1);
            }
        }
        g
    }

    /// The unique chain d_1 | d_2 | ... | d_n with d_1 > 1 presenting the
    /// group as a direct sum of cyclic groups Z/d_i.
    pub fn invariant_factors(&self) -> Vec<BigUint> {
        let n = self
            .divisors
            .values()
            .map(|m| m.iter().sum::<u64>() as usize)
            .max()
            .unwrap_or(0);
        let mut out = vec![BigUint::one(); n];
        for (p, mults) in &self.divisors {
            // exponents ascending, right-aligned against the chain
            let mut exps: Vec<u32> = Vec::new();
            for (i, &m) in mults.iter().enumerate() {
                for _ in 0..m {
                    exps.push(i as u32 + 1);
                }
            }
            let offset = n - exps.len();
            for (j, e) in exps.into_iter().enumerate() {
                out[offset + j] *= p.pow(e);
            }
        }
        out
    }

    /// The Sylow p-subgroup (trivial when p does not divide the order).
    pub fn sylow(&self, p: u64) -> Result<AbelianGroup, GroupError> {
        if !is_prime_u64(p) {
            return Err(GroupError::NotPrime(p));
        }
        let key = BigUint::from(p);
        let mut g = AbelianGroup::trivial();
        if let Some(mults) = self.divisors.get(&key) {
            g.divisors.insert(key, mults.clone());
        }
        Ok(g)
    }

    pub fn order(&self) -> BigUint {
        let mut order = BigUint::one();
        for (p, mults) in &self.divisors {
            let weight: u64 = mults
                .iter()
                .enumerate()
                .map(|(i, &m)| (i as u64 + 1) * m)
                .sum();
            order *= p.pow(weight as u32);
        }
        order
    }

    pub fn exponent(&self) -> BigUint {
        let mut exp = BigUint::one();
        for (p, mults) in &self.divisors {
            exp *= p.pow(mults.len() as u32);
        }
        exp
    }

    /// Primes dividing the order, ascending.
    pub fn primes(&self) -> impl Iterator<Item = &BigUint> {
        self.divisors.keys()
    }

    /// Multiplicities `[m_1, m_2, ...]` at `p`; empty when p is coprime
    /// to the order.
    pub fn multiplicities(&self, p: u64) -> &[u64] {
        self.divisors
            .get(&BigUint::from(p))
            .map(Vec::as_slice)
            .unwrap_or(&[])
    }

    /// Stable JSON form: `{"p": [m_1, ...], ...}` with decimal keys.
    pub fn to_json(&self) -> serde_json::Value {
        let map: serde_json::Map<String, serde_json::Value> = self
            .divisors
            .iter()
            .map(|(p, m)| (p.to_string(), serde_json::json!(m)))
            .collect();
        serde_json::Value::Object(map)
    }

    /// Canonical text in invariant-factor form, e.g. `Z/2 + (Z/10)^3`.
    pub fn invariant_factor_string(&self) -> String {
        let factors = self.invariant_factors();
        if factors.is_empty() {
            return "0".into();
        }
        let mut parts: Vec<(BigUint, u64)> = Vec::new();
        for d in factors {
            match parts.last_mut() {
                Some((value, count)) if *value == d => *count += 1,
                _ => parts.push((d, 1)),
            }
        }
        parts
            .into_iter()
            .map(|(d, count)| render_cyclic(&d.to_string(), count))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// `Z/d` or `(Z/d)^count`.
fn render_cyclic(d: &str, count: u64) -> String {
    if count == 1 {
        format!("Z/{d}")
    } else {
        format!("(Z/{d})^{count}")
    }
}

impl fmt::Display for AbelianGroup {
    /// Elementary-divisor form, ascending prime then ascending exponent,
    /// e.g. `(Z/2)^4 + (Z/5)^3`. The trivial group prints as `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        for (p, mults) in &self.divisors {
            for (i, &m) in mults.iter().enumerate() {
                if m == 0 {
                    continue;
                }
                let q = p.pow(i as u32 + 1);
                parts.push(render_cyclic(&q.to_string(), m));
            }
        }
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AbelianGroup({self})")
    }
}

fn check_laplacian(l: &IntMatrix) -> Result<(), GroupError> {
    if !l.is_square() {
        return Err(GroupError::NotLaplacian("not square"));
    }
    if !l.is_symmetric() {
        return Err(GroupError::NotLaplacian("not symmetric"));
    }
    for i in 0..l.rows() {
        let sum: num_bigint::BigInt = (0..l.cols()).map(|j| l[(i, j)].clone()).sum();
        if !sum.is_zero() {
            return Err(GroupError::NotLaplacian("row sums are not zero"));
        }
    }
    Ok(())
}

/// Critical group of a connected graph from its Laplacian, together with
/// the Smith normal form it was read from.
///
/// The cokernel of the Laplacian is the critical group plus one free
/// summand; the group is formed from the nonzero invariant factors, and
/// more than one zero factor means the graph is disconnected.
pub fn critical_group_with_snf(
    l: &IntMatrix,
) -> Result<(AbelianGroup, SmithNormalForm), GroupError> {
    check_laplacian(l)?;
    let snf = l.snf(false);
    let zeros = snf.zero_count();
    if zeros != 1 {
        return Err(GroupError::Disconnected { zeros });
    }
    let nonzero: Vec<BigUint> = snf.nonzero_factors().cloned().collect();
    Ok((AbelianGroup::from_invariant_factors(&nonzero), snf))
}

/// Critical group of a connected graph from its Laplacian.
pub fn critical_group(l: &IntMatrix) -> Result<AbelianGroup, GroupError> {
    critical_group_with_snf(l).map(|(g, _)| g)
}

/// Critical group assembled prime-by-prime from local elementary divisor
/// computations, avoiding global Smith normal form entry growth.
///
/// `primes` lists each prime dividing the group order with an exponent
/// cap (for a strongly regular graph, the sum of the p-valuations of the
/// two nonzero eigenvalues suffices).
pub fn critical_group_prime_local(
    l: &IntMatrix,
    primes: &[(u64, u32)],
) -> Result<AbelianGroup, GroupError> {
    check_laplacian(l)?;
    let mut g = AbelianGroup::trivial();
    for &(p, cap) in primes {
        let local = l.local_elementary_divisors(p, cap)?;
        if local.free_rank != 1 {
            return Err(GroupError::Disconnected {
                zeros: local.free_rank,
            });
        }
        for (i, &m) in local.e.iter().enumerate().skip(1) {
            g.add_summand(BigUint::from(p), i as u32, m);
        }
    }
    Ok(g)
}
