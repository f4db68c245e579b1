//! Exact integer matrix kernel: Smith normal form, ranks and kernels over
//! prime fields, and prime-local elementary divisor computation.
//!
//! All arithmetic is arbitrary-precision; there is no floating point and
//! no modular shortcut that could silently lose exactness. The Smith
//! normal form routine is classical elimination with a minimum-absolute-
//! value pivot rule, which keeps entry growth tolerable for the matrix
//! sizes this crate targets (a few hundred rows).

use crate::arith::{is_prime_u64, valuation};
use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::fmt;
use thiserror::Error;

/// Default dimension limit for [`IntMatrix::minor_gcd`]; minor
/// enumeration is factorial and only meant as a small-scale oracle.
pub const MINOR_GCD_DIM_LIMIT: usize = 12;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MatrixError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error(
        "a nonzero invariant factor has {p}-adic valuation above the cap {cap}; raise the cap"
    )]
    CapExceeded { p: u64, cap: u32 },
    #[error("minor enumeration on a {rows}x{cols} matrix exceeds the dimension limit {limit}")]
    OrderTooLarge {
        rows: usize,
        cols: usize,
        limit: usize,
    },
}

/// Dense integer matrix in row-major order.
#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<BigInt>) -> Self {
        assert_eq!(data.len(), rows * cols, "entry count must be rows*cols");
        IntMatrix { rows, cols, data }
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMatrix::new(rows, cols, vec![BigInt::zero(); rows * cols])
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zero(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn from_i64(rows: usize, cols: usize, entries: &[i64]) -> Self {
        assert_eq!(entries.len(), rows * cols);
        IntMatrix::new(
            rows,
            cols,
            entries.iter().map(|&e| BigInt::from(e)).collect(),
        )
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> i64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(BigInt::from(f(i, j)));
            }
        }
        IntMatrix::new(rows, cols, data)
    }

    pub fn diagonal(entries: &[i64]) -> Self {
        let n = entries.len();
        let mut m = IntMatrix::zero(n, n);
        for (i, &e) in entries.iter().enumerate() {
            m[(i, i)] = BigInt::from(e);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(
            self.cols, other.rows,
            "dimension mismatch in matrix product"
        );
        let mut out = IntMatrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let prod = a * &other[(k, j)];
                    out[(i, j)] += prod;
                }
            }
        }
        out
    }

    /// Submatrix on the given row and column index sets.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> IntMatrix {
        let mut data = Vec::with_capacity(rows.len() * cols.len());
        for &i in rows {
            for &j in cols {
                data.push(self[(i, j)].clone());
            }
        }
        IntMatrix::new(rows.len(), cols.len(), data)
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> BigInt {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.data.clone();
        let at = |a: &[BigInt], i: usize, j: usize, n: usize| -> BigInt { a[i * n + j].clone() };
        let mut sign = 1i32;
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[k * n + k].is_zero() {
                match (k + 1..n).find(|&i| !a[i * n + k].is_zero()) {
                    Some(i) => {
                        for j in 0..n {
                            a.swap(k * n + j, i * n + j);
                        }
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = at(&a, i, j, n) * at(&a, k, k, n) - at(&a, i, k, n) * at(&a, k, j, n);
                    a[i * n + j] = num / &prev;
                }
                a[i * n + k] = BigInt::zero();
            }
            prev = at(&a, k, k, n);
        }
        let det = a[(n - 1) * n + (n - 1)].clone();
        if sign < 0 {
            -det
        } else {
            det
        }
    }

    /// Rank over the rationals, by fraction-free elimination with full
    /// pivoting.
    pub fn rank(&self) -> usize {
        let (m, n) = (self.rows, self.cols);
        let mut a = self.data.clone();
        let mut rank = 0;
        let mut prev = BigInt::one();
        while rank < m && rank < n {
            let pivot = (rank..m)
                .flat_map(|i| (rank..n).map(move |j| (i, j)))
                .find(|&(i, j)| !a[i * n + j].is_zero());
            let Some((pi, pj)) = pivot else { break };
            if pi != rank {
                for j in 0..n {
                    a.swap(rank * n + j, pi * n + j);
                }
            }
            if pj != rank {
                for i in 0..m {
                    a.swap(i * n + rank, i * n + pj);
                }
            }
            for i in rank + 1..m {
                for j in rank + 1..n {
                    let num =
                        &a[i * n + j] * &a[rank * n + rank] - &a[i * n + rank] * &a[rank * n + j];
                    a[i * n + j] = num / &prev;
                }
                a[i * n + rank] = BigInt::zero();
            }
            prev = a[rank * n + rank].clone();
            rank += 1;
        }
        rank
    }

    /// Smith normal form. With `want_transforms`, also returns unimodular
    /// `U` and `V` with `U * self * V = diag(invariant factors)`.
    pub fn snf(&self, want_transforms: bool) -> SmithNormalForm {
        let (m, n) = (self.rows, self.cols);
        let mut a = self.clone();
        let mut left = want_transforms.then(|| IntMatrix::identity(m));
        let mut right = want_transforms.then(|| IntMatrix::identity(n));
        let t = m.min(n);

        for k in 0..t {
            if find_min_abs(&a, k).is_none() {
                break; // remaining block is zero; diagonal stays zero
            }
            loop {
                let (pi, pj) = find_min_abs(&a, k).expect("nonzero block");
                swap_rows(&mut a, &mut left, k, pi);
                swap_cols(&mut a, &mut right, k, pj);

                let mut clean = true;
                for i in k + 1..m {
                    if a[(i, k)].is_zero() {
                        continue;
                    }
                    let q = &a[(i, k)] / &a[(k, k)];
                    let rem_nonzero = !(&a[(i, k)] - &q * &a[(k, k)]).is_zero();
                    add_row_multiple(&mut a, &mut left, i, k, &-q);
                    if rem_nonzero {
                        clean = false;
                    }
                }
                for j in k + 1..n {
                    if a[(k, j)].is_zero() {
                        continue;
                    }
                    let q = &a[(k, j)] / &a[(k, k)];
                    let rem_nonzero = !(&a[(k, j)] - &q * &a[(k, k)]).is_zero();
                    add_col_multiple(&mut a, &mut right, j, k, &-q);
                    if rem_nonzero {
                        clean = false;
                    }
                }
                if !clean {
                    continue; // a smaller pivot appeared; re-select
                }
                // Row and column k are clear. Enforce that the pivot
                // divides the rest of the block, which yields the
                // divisibility chain directly.
                let offender = (k + 1..m)
                    .flat_map(|i| (k + 1..n).map(move |j| (i, j)))
                    .find(|&(i, j)| !(&a[(i, j)] % &a[(k, k)]).is_zero());
                match offender {
                    Some((i, _)) => add_row_multiple(&mut a, &mut left, k, i, &BigInt::one()),
                    None => break,
                }
            }
            if a[(k, k)].is_negative() {
                negate_row(&mut a, &mut left, k);
            }
        }

        let invariant_factors = (0..t)
            .map(|k| {
                a[(k, k)]
                    .to_biguint()
                    .expect("diagonal entries are normalized nonnegative")
            })
            .collect();
        SmithNormalForm {
            invariant_factors,
            left,
            right,
        }
    }

    /// Rank over the field with `p` elements.
    pub fn rank_mod_p(&self, p: u64) -> Result<usize, MatrixError> {
        let a = self.reduce_mod(p)?;
        Ok(echelonize(a, self.rows, self.cols, p).1)
    }

    /// Basis of the null space over the field with `p` elements, as
    /// vectors with entries in `0..p`.
    pub fn kernel_basis_mod_p(&self, p: u64) -> Result<Vec<Vec<u64>>, MatrixError> {
        let a = self.reduce_mod(p)?;
        let (rref, rank, pivot_cols) = rref_mod_p(a, self.rows, self.cols, p);
        let mut basis = Vec::with_capacity(self.cols - rank);
        let is_pivot = |j: usize| pivot_cols.contains(&j);
        for free in (0..self.cols).filter(|&j| !is_pivot(j)) {
            let mut v = vec![0u64; self.cols];
            v[free] = 1;
            for (row, &pc) in pivot_cols.iter().enumerate() {
                let coeff = rref[row * self.cols + free];
                v[pc] = (p - coeff) % p;
            }
            basis.push(v);
        }
        Ok(basis)
    }

    /// Multiplicities of `p^i` among the invariant factors, for `i` up to
    /// `cap`, computed by elimination over the localization at `p`
    /// (concretely: modulo `p^(cap+1)`, tracking pivot valuations). The
    /// free rank is the number of zero invariant factors.
    pub fn local_elementary_divisors(
        &self,
        p: u64,
        cap: u32,
    ) -> Result<PrimeLocalDivisors, MatrixError> {
        if !is_prime_u64(p) {
            return Err(MatrixError::NotPrime(p));
        }
        let (m, n) = (self.rows, self.cols);
        let t = m.min(n);
        let big_p = BigUint::from(p);
        let modulus = big_p.pow(cap + 1);
        let mut a: Vec<BigUint> = self
            .data
            .iter()
            .map(|x| {
                let r = x.mod_floor(&BigInt::from_biguint(Sign::Plus, modulus.clone()));
                r.to_biguint().expect("mod_floor is nonnegative")
            })
            .collect();

        let mut pivot_valuations: Vec<u32> = Vec::new();
        for k in 0..t {
            // Entry of minimal p-valuation in the remaining block.
            let mut best: Option<(usize, usize, u64)> = None;
            'search: for i in k..m {
                for j in k..n {
                    let entry = &a[i * n + j];
                    if entry.is_zero() {
                        continue;
                    }
                    let v = valuation(entry, &big_p);
                    if best.is_none_or(|(_, _, bv)| v < bv) {
                        best = Some((i, j, v));
                        if v == 0 {
                            break 'search;
                        }
                    }
                }
            }
            let Some((pi, pj, val)) = best else { break };
            if pi != k {
                for j in 0..n {
                    a.swap(k * n + j, pi * n + j);
                }
            }
            if pj != k {
                for i in 0..m {
                    a.swap(i * n + k, i * n + pj);
                }
            }
            // Scale row k by the inverse of the pivot's unit part, so the
            // pivot becomes exactly p^val (a unit scaling is invisible to
            // elementary divisors over the localization).
            let p_val = big_p.pow(val as u32);
            let unit = &a[k * n + k] / &p_val;
            let inv = modular_inverse(&unit, &modulus);
            for j in k..n {
                a[k * n + j] = &a[k * n + j] * &inv % &modulus;
            }
            for i in k + 1..m {
                if a[i * n + k].is_zero() {
                    continue;
                }
                let mult = &a[i * n + k] / &p_val; // exact: valuation >= val
                for j in k..n {
                    let sub = &mult * &a[k * n + j] % &modulus;
                    let cur = &a[i * n + j];
                    a[i * n + j] = if *cur >= sub {
                        cur - sub
                    } else {
                        cur + &modulus - sub
                    };
                }
            }
            for j in k + 1..n {
                if a[k * n + j].is_zero() {
                    continue;
                }
                let mult = &a[k * n + j] / &p_val;
                for i in k..m {
                    let sub = &mult * &a[i * n + k] % &modulus;
                    let cur = &a[i * n + j];
                    a[i * n + j] = if *cur >= sub {
                        cur - sub
                    } else {
                        cur + &modulus - sub
                    };
                }
            }
            pivot_valuations.push(val as u32);
        }

        // Positions that vanished mod p^(cap+1) are either genuinely zero
        // invariant factors or nonzero ones with valuation past the cap;
        // the exact rank tells them apart.
        let vanished = t - pivot_valuations.len();
        let free_rank = t - self.rank();
        if vanished > free_rank {
            return Err(MatrixError::CapExceeded { p, cap });
        }
        debug_assert_eq!(vanished, free_rank);

        let mut e = vec![0u64; cap as usize + 1];
        for v in pivot_valuations {
            e[v as usize] += 1;
        }
        Ok(PrimeLocalDivisors { p, e, free_rank })
    }

    /// Greatest common divisor of all `k` by `k` minors (the k-th
    /// determinantal divisor); zero when every minor vanishes.
    ///
    /// Enumeration is combinatorial, so both dimensions must be at most
    /// [`MINOR_GCD_DIM_LIMIT`]. `k` must be at most `min(rows, cols)`.
    pub fn minor_gcd(&self, k: usize) -> Result<BigUint, MatrixError> {
        self.minor_gcd_with_limit(k, MINOR_GCD_DIM_LIMIT)
    }

    pub fn minor_gcd_with_limit(&self, k: usize, limit: usize) -> Result<BigUint, MatrixError> {
        if self.rows > limit || self.cols > limit {
            return Err(MatrixError::OrderTooLarge {
                rows: self.rows,
                cols: self.cols,
                limit,
            });
        }
        assert!(
            k >= 1 && k <= self.rows.min(self.cols),
            "minor order must satisfy 1 <= k <= min(rows, cols)"
        );
        let mut acc = BigUint::zero();
        let one = BigUint::one();
        for rows in combinations(self.rows, k) {
            for cols in combinations(self.cols, k) {
                let det = self.submatrix(&rows, &cols).determinant();
                acc = acc.gcd(&det.magnitude().clone());
                if acc == one {
                    return Ok(acc);
                }
            }
        }
        Ok(acc)
    }

    fn reduce_mod(&self, p: u64) -> Result<Vec<u64>, MatrixError> {
        if !is_prime_u64(p) {
            return Err(MatrixError::NotPrime(p));
        }
        let big_p = BigInt::from(p);
        Ok(self
            .data
            .iter()
            .map(|x| x.mod_floor(&big_p).to_u64().expect("residue fits u64"))
            .collect())
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix {}x{}", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self[(i, j)].to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = self
            .data
            .iter()
            .map(|x| x.to_string().len())
            .max()
            .unwrap_or(1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{:>width$}", self[(i, j)].to_string(), width = width)?;
            }
            if i + 1 < self.rows {
                writeln!(f)?;
            }
        }
        Ok(())
    }
}

/// Result of [`IntMatrix::snf`]: the invariant factor chain and, when
/// requested, the unimodular transforms.
#[derive(Clone, Debug)]
pub struct SmithNormalForm {
    /// Nonnegative, each dividing the next, zeros trailing.
    pub invariant_factors: Vec<BigUint>,
    pub left: Option<IntMatrix>,
    pub right: Option<IntMatrix>,
}

impl SmithNormalForm {
    /// The nonzero invariant factors.
    pub fn nonzero_factors(&self) -> impl Iterator<Item = &BigUint> {
        self.invariant_factors.iter().filter(|s| !s.is_zero())
    }

    pub fn zero_count(&self) -> usize {
        self.invariant_factors
            .iter()
            .filter(|s| s.is_zero())
            .count()
    }
}

/// Multiplicities `e_i` of `p^i` among the invariant factors of a matrix
/// (index 0 is the p-rank), together with the count of zero factors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeLocalDivisors {
    pub p: u64,
    /// `e[i]` = number of nonzero invariant factors exactly divisible by `p^i`.
    pub e: Vec<u64>,
    pub free_rank: usize,
}

impl PrimeLocalDivisors {
    /// The p-rank (`e_0`).
    pub fn p_rank(&self) -> u64 {
        self.e[0]
    }
}

fn find_min_abs(a: &IntMatrix, k: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in k..a.rows() {
        for j in k..a.cols() {
            if a[(i, j)].is_zero() {
                continue;
            }
            match best {
                Some(b) if a[b].magnitude() <= a[(i, j)].magnitude() => {}
                _ => best = Some((i, j)),
            }
        }
    }
    best
}

fn swap_rows(a: &mut IntMatrix, left: &mut Option<IntMatrix>, i: usize, j: usize) {
    if i == j {
        return;
    }
    for c in 0..a.cols() {
        let tmp = a[(i, c)].clone();
        a[(i, c)] = a[(j, c)].clone();
        a[(j, c)] = tmp;
    }
    if let Some(u) = left {
        for c in 0..u.cols() {
            let tmp = u[(i, c)].clone();
            u[(i, c)] = u[(j, c)].clone();
            u[(j, c)] = tmp;
        }
    }
}

fn swap_cols(a: &mut IntMatrix, right: &mut Option<IntMatrix>, i: usize, j: usize) {
    if i == j {
        return;
    }
    for r in 0..a.rows() {
        let tmp = a[(r, i)].clone();
        a[(r, i)] = a[(r, j)].clone();
        a[(r, j)] = tmp;
    }
    if let Some(v) = right {
        for r in 0..v.rows() {
            let tmp = v[(r, i)].clone();
            v[(r, i)] = v[(r, j)].clone();
            v[(r, j)] = tmp;
        }
    }
}

/// row_i += q * row_j
fn add_row_multiple(
    a: &mut IntMatrix,
    left: &mut Option<IntMatrix>,
    i: usize,
    j: usize,
    q: &BigInt,
) {
    if q.is_zero() {
        return;
    }
    for c in 0..a.cols() {
        let add = q * &a[(j, c)];
        a[(i, c)] += add;
    }
    if let Some(u) = left {
        for c in 0..u.cols() {
            let add = q * &u[(j, c)];
            u[(i, c)] += add;
        }
    }
}

/// col_i += q * col_j
fn add_col_multiple(
    a: &mut IntMatrix,
    right: &mut Option<IntMatrix>,
    i: usize,
    j: usize,
    q: &BigInt,
) {
    if q.is_zero() {
        return;
    }
    for r in 0..a.rows() {
        let add = q * &a[(r, j)];
        a[(r, i)] += add;
    }
    if let Some(v) = right {
        for r in 0..v.rows() {
            let add = q * &v[(r, j)];
            v[(r, i)] += add;
        }
    }
}

fn negate_row(a: &mut IntMatrix, left: &mut Option<IntMatrix>, i: usize) {
    for c in 0..a.cols() {
        let neg = -a[(i, c)].clone();
        a[(i, c)] = neg;
    }
    if let Some(u) = left {
        for c in 0..u.cols() {
            let neg = -u[(i, c)].clone();
            u[(i, c)] = neg;
        }
    }
}

/// Row echelon over F_p; returns (matrix, rank).
fn echelonize(mut a: Vec<u64>, rows: usize, cols: usize, p: u64) -> (Vec<u64>, usize) {
    let mut rank = 0;
    for col in 0..cols {
        let Some(pivot_row) = (rank..rows).find(|&i| !a[i * cols + col].is_multiple_of(p)) else {
            continue;
        };
        for j in 0..cols {
            a.swap(rank * cols + j, pivot_row * cols + j);
        }
        let inv = inverse_mod_p(a[rank * cols + col], p);
        for j in col..cols {
            a[rank * cols + j] = mul_mod(a[rank * cols + j], inv, p);
        }
        for i in 0..rows {
            if i == rank || a[i * cols + col] == 0 {
                continue;
            }
            let factor = a[i * cols + col];
            for j in col..cols {
                let sub = mul_mod(factor, a[rank * cols + j], p);
                a[i * cols + j] = (a[i * cols + j] + p - sub) % p;
            }
        }
        rank += 1;
        if rank == rows {
            break;
        }
    }
    (a, rank)
}

/// Reduced row echelon over F_p; returns (matrix, rank, pivot columns).
fn rref_mod_p(a: Vec<u64>, rows: usize, cols: usize, p: u64) -> (Vec<u64>, usize, Vec<usize>) {
    let (a, rank) = echelonize(a, rows, cols, p);
    let mut pivots = Vec::with_capacity(rank);
    for row in 0..rank {
        let col = (0..cols)
            .find(|&j| a[row * cols + j] != 0)
            .expect("echelon row below rank is nonzero");
        pivots.push(col);
    }
    (a, rank, pivots)
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn inverse_mod_p(a: u64, p: u64) -> u64 {
    // Extended Euclid; a is nonzero mod the prime p.
    let (mut old_r, mut r) = (a as i128, p as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    debug_assert_eq!(old_r, 1, "inverse of a multiple of p");
    old_s.rem_euclid(p as i128) as u64
}

fn modular_inverse(a: &BigUint, modulus: &BigUint) -> BigUint {
    let a = BigInt::from_biguint(Sign::Plus, a.clone());
    let m = BigInt::from_biguint(Sign::Plus, modulus.clone());
    let e = a.extended_gcd(&m);
    assert!(e.gcd.is_one(), "unit part must be coprime to the modulus");
    e.x.mod_floor(&m)
        .to_biguint()
        .expect("mod_floor nonnegative")
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..k).collect();
    if k > n {
        return out;
    }
    loop {
        out.push(cur.clone());
        // advance to the next k-combination of 0..n
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] != i + n - k {
                break;
            }
            if i == 0 {
                return out;
            }
        }
        cur[i] += 1;
        for j in i + 1..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn factors_u64(s: &SmithNormalForm) -> Vec<u64> {
        s.invariant_factors
            .iter()
            .map(|x| x.to_u64().unwrap())
            .collect()
    }

    #[test]
    fn snf_identity() {
        let s = IntMatrix::identity(4).snf(false);
        assert_eq!(factors_u64(&s), vec![1, 1, 1, 1]);
    }

    #[test]
    fn snf_known_4x4() {
        let m = IntMatrix::from_i64(
            4,
            4,
            &[
                -6, 111, -36, 6, 5, -672, 210, 74, 0, -255, 81, 24, -7, 255, -81, -10,
            ],
        );
        let s = m.snf(true);
        assert_eq!(factors_u64(&s), vec![1, 3, 21, 0]);
        let u = s.left.as_ref().unwrap();
        let v = s.right.as_ref().unwrap();
        let prod = u.mul(&m).mul(v);
        let diag = IntMatrix::diagonal(&[1, 3, 21, 0]);
        assert_eq!(prod, diag);
        assert_eq!(u.determinant().magnitude(), &BigUint::one().clone());
        assert_eq!(v.determinant().magnitude(), &BigUint::one().clone());
    }

    #[test]
    fn snf_divisibility_chain_and_shape() {
        let m = IntMatrix::from_i64(3, 5, &[2, 4, 4, 6, 8, 10, 6, 12, 0, 4, 2, 2, 2, 2, 2]);
        let s = m.snf(false);
        assert_eq!(s.invariant_factors.len(), 3);
        for w in s.invariant_factors.windows(2) {
            if !w[0].is_zero() {
                assert!(
                    (&w[1] % &w[0]).is_zero(),
                    "chain violated: {:?}",
                    s.invariant_factors
                );
            } else {
                assert!(w[1].is_zero());
            }
        }
    }

    #[test]
    fn snf_matches_minor_gcd_oracle() {
        // Product of the first k invariant factors = gcd of k x k minors.
        let m = IntMatrix::from_i64(3, 3, &[2, 4, 4, -6, 6, 12, 10, -4, -16]);
        let s = m.snf(false);
        let mut prod = BigUint::one();
        for k in 1..=3usize {
            prod *= &s.invariant_factors[k - 1];
            assert_eq!(prod, m.minor_gcd(k).unwrap(), "k = {k}");
        }
    }

    #[test]
    fn minor_gcd_examples() {
        let id3 = IntMatrix::identity(3);
        assert_eq!(id3.minor_gcd(2).unwrap(), BigUint::from(1u32));
        let d = IntMatrix::diagonal(&[2, 4, 8]);
        assert_eq!(d.minor_gcd(2).unwrap(), BigUint::from(8u32));
        assert_eq!(d.minor_gcd(3).unwrap(), BigUint::from(64u32));
    }

    #[test]
    fn minor_gcd_guard() {
        let m = IntMatrix::zero(13, 13);
        assert!(matches!(
            m.minor_gcd(2),
            Err(MatrixError::OrderTooLarge { .. })
        ));
    }

    #[test]
    fn rank_and_determinant() {
        let m = IntMatrix::from_i64(3, 3, &[1, 2, 3, 4, 5, 6, 7, 8, 9]);
        assert_eq!(m.rank(), 2);
        assert_eq!(m.determinant(), BigInt::zero());
        let m2 = IntMatrix::from_i64(3, 3, &[2, 0, 1, 1, 1, 0, 0, 3, 4]);
        assert_eq!(m2.determinant(), BigInt::from(11));
        assert_eq!(m2.rank(), 3);
    }

    #[test]
    fn rank_mod_p_basics() {
        let zero = IntMatrix::zero(4, 4);
        assert_eq!(zero.rank_mod_p(5).unwrap(), 0);
        assert_eq!(IntMatrix::identity(4).rank_mod_p(2).unwrap(), 4);
        let m = IntMatrix::from_i64(2, 2, &[2, 4, 6, 8]);
        assert_eq!(m.rank_mod_p(2).unwrap(), 0);
        assert_eq!(m.rank_mod_p(3).unwrap(), 2);
        assert_eq!(m.rank_mod_p(4), Err(MatrixError::NotPrime(4)));
    }

    #[test]
    fn kernel_mod_p() {
        let id = IntMatrix::identity(3);
        assert!(id.kernel_basis_mod_p(7).unwrap().is_empty());
        let m = IntMatrix::from_i64(2, 3, &[1, 1, 0, 0, 2, 2]);
        let basis = m.kernel_basis_mod_p(2).unwrap();
        assert_eq!(basis.len(), 3 - m.rank_mod_p(2).unwrap());
        for v in &basis {
            for i in 0..2 {
                let dot: u64 = (0..3)
                    .map(|j| {
                        let e = m[(i, j)].mod_floor(&BigInt::from(2)).to_u64().unwrap();
                        e * v[j]
                    })
                    .sum();
                assert_eq!(dot % 2, 0);
            }
        }
    }

    #[test]
    fn local_divisors_diag() {
        let m = IntMatrix::diagonal(&[1, 3, 9]);
        let d = m.local_elementary_divisors(3, 3).unwrap();
        assert_eq!(d.e, vec![1, 1, 1, 0]);
        assert_eq!(d.free_rank, 0);
    }

    #[test]
    fn local_divisors_cap_exceeded() {
        let m = IntMatrix::diagonal(&[1, 8]);
        assert_eq!(
            m.local_elementary_divisors(2, 2),
            Err(MatrixError::CapExceeded { p: 2, cap: 2 })
        );
        let d = m.local_elementary_divisors(2, 3).unwrap();
        assert_eq!(d.e, vec![1, 0, 0, 1]);
    }

    #[test]
    fn local_divisors_with_free_rank() {
        // diag(2, 6, 0): invariant factors 2 | 6 | 0.
        let m = IntMatrix::diagonal(&[2, 6, 0]);
        let d = m.local_elementary_divisors(2, 4).unwrap();
        assert_eq!(d.e, vec![0, 2, 0, 0, 0]);
        assert_eq!(d.free_rank, 1);
        let d3 = m.local_elementary_divisors(3, 4).unwrap();
        assert_eq!(d3.e, vec![1, 1, 0, 0, 0]);
        assert_eq!(d3.free_rank, 1);
    }

    #[test]
    fn local_divisors_match_global_snf() {
        let m = IntMatrix::from_i64(
            4,
            4,
            &[4, 2, 0, -8, 2, 10, 6, 4, 0, 6, 18, 12, -8, 4, 12, 40],
        );
        let s = m.snf(false);
        for p in [2u64, 3, 5] {
            let cap = 8;
            let d = m.local_elementary_divisors(p, cap).unwrap();
            let mut expected = vec![0u64; cap as usize + 1];
            for f in s.nonzero_factors() {
                expected[valuation(f, &BigUint::from(p)) as usize] += 1;
            }
            assert_eq!(d.e, expected, "p = {p}");
            assert_eq!(d.free_rank, s.zero_count());
        }
    }

    #[test]
    fn combinations_enumerate() {
        assert_eq!(combinations(4, 2).len(), 6);
        assert_eq!(combinations(3, 3), vec![vec![0, 1, 2]]);
        assert_eq!(combinations(2, 3), Vec::<Vec<usize>>::new());
    }
}
