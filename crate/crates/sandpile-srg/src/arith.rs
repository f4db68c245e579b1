//! Small exact-arithmetic helpers: primality testing, integer
//! factorization, and p-adic valuations. Everything here is
//! deterministic; no floating point is used anywhere.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use std::collections::BTreeMap;

fn mulmod(a: u128, b: u128, m: u128) -> u128 {
    // Schoolbook double-and-add; operands stay below 2^127 here because
    // callers reduce mod m first and m < 2^127.
    let mut result = 0u128;
    let mut a = a % m;
    let mut b = b % m;
    while b > 0 {
        if b & 1 == 1 {
            result = (result + a) % m;
        }
        a = (a << 1) % m;
        b >>= 1;
    }
    result
}

fn powmod(mut base: u128, mut exp: u128, m: u128) -> u128 {
    let mut result = 1u128;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            result = mulmod(result, base, m);
        }
        base = mulmod(base, base, m);
        exp >>= 1;
    }
    result
}

/// Deterministic Miller-Rabin. The base set is sufficient for all
/// inputs below 3.3 * 10^24, which covers u64 with a wide margin.
pub fn is_prime_u64(n: u64) -> bool {
    is_prime_u128(n as u128)
}

fn is_prime_u128(n: u128) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u128, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41] {
        if n == p {
            return true;
        }
        if n.is_multiple_of(p) {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d & 1 == 0 {
        d >>= 1;
        s += 1;
    }
    'witness: for a in [2u128, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41] {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn pollard_rho(n: u128) -> u128 {
    // Brent's cycle variant with deterministic restarts.
    debug_assert!(n > 1 && n & 1 == 1 && !is_prime_u128(n));
    for c in 1u128.. {
        let f = |x: u128| (mulmod(x, x, n) + c) % n;
        let mut x = 2u128;
        let mut y = 2u128;
        let mut d = 1u128;
        while d == 1 {
            x = f(x);
            y = f(f(y));
            d = gcd_u128(x.abs_diff(y), n);
        }
        if d != n {
            return d;
        }
    }
    unreachable!()
}

fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn factor_u128_into(n: u128, out: &mut BTreeMap<BigUint, u64>) {
    let mut n = n;
    for p in [2u128, 3, 5] {
        while n.is_multiple_of(p) {
            *out.entry(BigUint::from(p)).or_insert(0) += 1;
            n /= p;
        }
    }
    let mut d = 7u128;
    let increments = [4u128, 2, 4, 2, 4, 6, 2, 6];
    let mut idx = 0;
    while d <= 100_000 && d * d <= n {
        while n.is_multiple_of(d) {
            *out.entry(BigUint::from(d)).or_insert(0) += 1;
            n /= d;
        }
        d += increments[idx];
        idx = (idx + 1) % increments.len();
    }
    // Whatever survives trial division is split recursively.
    fn split(n: u128, out: &mut BTreeMap<BigUint, u64>) {
        if n == 1 {
            return;
        }
        if is_prime_u128(n) {
            *out.entry(BigUint::from(n)).or_insert(0) += 1;
            return;
        }
        let d = pollard_rho(n);
        split(d, out);
        split(n / d, out);
    }
    split(n, out);
}

/// Prime factorization as an ordered map prime -> exponent.
///
/// Trial division plus Pollard rho; inputs beyond 2^127 are reduced by
/// trial division first and the cofactor must fit in u128 (far beyond
/// anything a Laplacian invariant factor produces in this crate).
pub fn factor(n: &BigUint) -> BTreeMap<BigUint, u64> {
    let mut out = BTreeMap::new();
    if n.is_zero() || n.is_one() {
        return out;
    }
    let mut rest = n.clone();
    let mut d = 2u32;
    while d <= 100_000 && BigUint::from(d) * BigUint::from(d) <= rest {
        let big_d = BigUint::from(d);
        while (&rest % &big_d).is_zero() {
            *out.entry(big_d.clone()).or_insert(0) += 1;
            rest /= &big_d;
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if rest.is_one() {
        return out;
    }
    match rest.to_u128() {
        Some(small) => factor_u128_into(small, &mut out),
        None => panic!("factor: cofactor exceeds 128 bits: {rest}"),
    }
    out
}

/// Prime factorization for machine-word inputs.
pub fn factor_u64(n: u64) -> BTreeMap<u64, u32> {
    factor(&BigUint::from(n))
        .into_iter()
        .map(|(p, e)| (p.to_u64().expect("factor of a u64 fits in u64"), e as u32))
        .collect()
}

/// The p-adic valuation of `n`, i.e. the largest `e` with `p^e | n`.
/// Panics on `n == 0` (the valuation is infinite there).
pub fn valuation_u64(mut n: u64, p: u64) -> u32 {
    assert!(n != 0, "valuation of zero is undefined");
    assert!(p >= 2);
    let mut e = 0;
    while n.is_multiple_of(p) {
        n /= p;
        e += 1;
    }
    e
}

/// p-adic valuation of a nonzero big integer.
pub fn valuation(n: &BigUint, p: &BigUint) -> u64 {
    assert!(!n.is_zero(), "valuation of zero is undefined");
    let mut e = 0;
    let mut rest = n.clone();
    loop {
        let (q, r) = rest.div_rem(p);
        if !r.is_zero() {
            return e;
        }
        rest = q;
        e += 1;
    }
}

/// Floor of the integer square root, with an exactness flag.
pub fn sqrt_exact(n: u64) -> (u64, bool) {
    if n == 0 {
        return (0, true);
    }
    let n128 = n as u128;
    let mut root = (n as f64).sqrt() as u128;
    // Float gives a seed only; correct it exactly.
    while root > 0 && root * root > n128 {
        root -= 1;
    }
    while (root + 1) * (root + 1) <= n128 {
        root += 1;
    }
    (root as u64, root * root == n128)
}
