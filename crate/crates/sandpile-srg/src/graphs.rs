//! Graph construction: the built-in strongly regular families, Laplacian
//! assembly, and parameter recovery from adjacency data.
//!
//! Every generator self-checks its output against the advertised
//! parameter quadruple via [`Graph::srg_parameters`], so a construction
//! mistake fails loudly at build time rather than corrupting results
//! downstream. Vertex orderings are fixed and documented per generator;
//! critical groups do not depend on them, but golden Smith-normal-form
//! fixtures do.

use crate::matrix::IntMatrix;
use crate::srg::SrgParams;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FamilyError {
    #[error("bad order for {family}: {reason}")]
    BadOrder {
        family: &'static str,
        reason: String,
    },
}

/// Why adjacency data fails to be a (non-boring) strongly regular graph;
/// the first violated condition is reported.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum NotSrg {
    #[error("graph has fewer than two vertices")]
    TooSmall,
    #[error("not regular: vertex {u} has degree {deg_u}, vertex {v} has degree {deg_v}")]
    NotRegular {
        u: usize,
        deg_u: u64,
        v: usize,
        deg_v: u64,
    },
    #[error("graph has no edges")]
    Edgeless,
    #[error("graph is complete")]
    Complete,
    #[error("graph is disconnected")]
    Disconnected,
    #[error("adjacent pairs disagree on common neighbors: {expected} vs {found}")]
    AdjacentCountVaries { expected: u64, found: u64 },
    #[error("non-adjacent pairs disagree on common neighbors: {expected} vs {found}")]
    NonadjacentCountVaries { expected: u64, found: u64 },
}

/// Simple undirected graph as a symmetric 0/1 adjacency matrix with zero
/// diagonal.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    adj: Vec<bool>,
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        Graph {
            n,
            adj: vec![false; n * n],
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert!(u != v, "no self-loops");
        assert!(u < self.n && v < self.n);
        self.adj[u * self.n + v] = true;
        self.adj[v * self.n + u] = true;
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u * self.n + v]
    }

    pub fn degree(&self, u: usize) -> u64 {
        (0..self.n).filter(|&v| self.has_edge(u, v)).count() as u64
    }

    pub fn edge_count(&self) -> usize {
        (0..self.n)
            .map(|u| (u + 1..self.n).filter(|&v| self.has_edge(u, v)).count())
            .sum()
    }

    /// Complement graph (same vertex order).
    pub fn complement(&self) -> Graph {
        let mut g = Graph::empty(self.n);
        for u in 0..self.n {
            for v in u + 1..self.n {
                if !self.has_edge(u, v) {
                    g.add_edge(u, v);
                }
            }
        }
        g
    }

    /// Laplacian matrix `L = D - A`.
    pub fn laplacian(&self) -> IntMatrix {
        IntMatrix::from_fn(self.n, self.n, |i, j| {
            if i == j {
                self.degree(i) as i64
            } else if self.has_edge(i, j) {
                -1
            } else {
                0
            }
        })
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return false;
        }
        let mut seen = vec![false; self.n];
        let mut stack = vec![0usize];
        seen[0] = true;
        let mut count = 1;
        while let Some(u) = stack.pop() {
            for v in 0..self.n {
                if self.has_edge(u, v) && !seen[v] {
                    seen[v] = true;
                    count += 1;
                    stack.push(v);
                }
            }
        }
        count == self.n
    }

    fn common_neighbors(&self, u: usize, v: usize) -> u64 {
        (0..self.n)
            .filter(|&w| self.has_edge(u, w) && self.has_edge(v, w))
            .count() as u64
    }

    /// Recover `(v, k, lambda, mu)` if this graph is a connected,
    /// non-boring strongly regular graph; otherwise report the first
    /// violated condition.
    pub fn srg_parameters(&self) -> Result<SrgParams, NotSrg> {
        if self.n < 2 {
            return Err(NotSrg::TooSmall);
        }
        let k = self.degree(0);
        for u in 1..self.n {
            let d = self.degree(u);
            if d != k {
                return Err(NotSrg::NotRegular {
                    u: 0,
                    deg_u: k,
                    v: u,
                    deg_v: d,
                });
            }
        }
        if k == 0 {
            return Err(NotSrg::Edgeless);
        }
        if k as usize == self.n - 1 {
            return Err(NotSrg::Complete);
        }
        if !self.is_connected() {
            return Err(NotSrg::Disconnected);
        }
        let mut lambda: Option<u64> = None;
        let mut mu: Option<u64> = None;
        for u in 0..self.n {
            for v in u + 1..self.n {
                let c = self.common_neighbors(u, v);
                if self.has_edge(u, v) {
                    match lambda {
                        None => lambda = Some(c),
                        Some(expected) if expected != c => {
                            return Err(NotSrg::AdjacentCountVaries { expected, found: c })
                        }
                        _ => {}
                    }
                } else {
                    match mu {
                        None => mu = Some(c),
                        Some(expected) if expected != c => {
                            return Err(NotSrg::NonadjacentCountVaries { expected, found: c })
                        }
                        _ => {}
                    }
                }
            }
        }
        let lambda = lambda.expect("k >= 1 gives an adjacent pair");
        let mu = mu.expect("non-complete gives a non-adjacent pair");
        // Uniform counts on a connected regular non-complete graph satisfy
        // the parameter invariants automatically.
        Ok(SrgParams::new(self.n as u64, k, lambda, mu)
            .expect("uniform common-neighbor counts yield valid parameters"))
    }
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Graph(n={}, edges={})", self.n, self.edge_count())
    }
}

fn self_check(graph: Graph, family: &str, expected: (u64, u64, u64, u64)) -> Graph {
    let p = graph
        .srg_parameters()
        .unwrap_or_else(|e| panic!("{family}: construction is not strongly regular: {e}"));
    let got = (p.v(), p.k(), p.lambda(), p.mu());
    assert_eq!(got, expected, "{family}: parameter mismatch");
    graph
}

/// Petersen graph, srg(10,3,0,1). Vertices 0..4 are an outer 5-cycle,
/// 5..9 the inner pentagram, vertex `i` spoked to `i+5`.
pub fn petersen() -> Graph {
    let mut g = Graph::empty(10);
    for i in 0..5 {
        g.add_edge(i, (i + 1) % 5);
        g.add_edge(i, i + 5);
        g.add_edge(5 + i, 5 + (i + 2) % 5);
    }
    self_check(g, "petersen", (10, 3, 0, 1))
}

/// `n x n` rook graph: vertices are cells `(i, j)` (index `i*n + j`),
/// adjacent when they share a row or column. srg(n^2, 2(n-1), n-2, 2).
pub fn rook(n: usize) -> Result<Graph, FamilyError> {
    if n < 2 {
        return Err(FamilyError::BadOrder {
            family: "rook",
            reason: format!("need n >= 2, got {n}"),
        });
    }
    let mut g = Graph::empty(n * n);
    for a in 0..n * n {
        for b in a + 1..n * n {
            let (ra, ca) = (a / n, a % n);
            let (rb, cb) = (b / n, b % n);
            if (ra == rb) != (ca == cb) {
                g.add_edge(a, b);
            }
        }
    }
    let n64 = n as u64;
    Ok(self_check(
        g,
        "rook",
        (n64 * n64, 2 * (n64 - 1), n64 - 2, 2),
    ))
}

/// Kneser graph on the k-subsets of an n-set, adjacent when disjoint.
/// Subsets are ordered lexicographically. Strongly regular only for
/// k = 2 (where the self-check applies): srg(C(n,2), C(n-2,2), C(n-4,2), C(n-3,2)).
pub fn kneser(n: usize, k: usize) -> Result<Graph, FamilyError> {
    if k < 1 || n <= 2 * k {
        return Err(FamilyError::BadOrder {
            family: "kneser",
            reason: format!("need 1 <= k and n > 2k, got n={n}, k={k}"),
        });
    }
    let subsets = k_subsets(n, k);
    let mut g = Graph::empty(subsets.len());
    for a in 0..subsets.len() {
        for b in a + 1..subsets.len() {
            if subsets[a].iter().all(|x| !subsets[b].contains(x)) {
                g.add_edge(a, b);
            }
        }
    }
    if k == 2 {
        let c2 = |m: u64| m * (m - 1) / 2;
        let n64 = n as u64;
        return Ok(self_check(
            g,
            "kneser",
            (c2(n64), c2(n64 - 2), c2(n64 - 4), c2(n64 - 3)),
        ));
    }
    Ok(g)
}

/// Triangular graph T(n): the 2-subsets of an n-set (lexicographic),
/// adjacent when they intersect. srg(C(n,2), 2(n-2), n-2, 4); the
/// complement of kneser(n, 2).
pub fn triangular(n: usize) -> Result<Graph, FamilyError> {
    if n < 4 {
        return Err(FamilyError::BadOrder {
            family: "triangular",
            reason: format!("need n >= 4, got {n}"),
        });
    }
    let subsets = k_subsets(n, 2);
    let mut g = Graph::empty(subsets.len());
    for a in 0..subsets.len() {
        for b in a + 1..subsets.len() {
            if subsets[a].iter().any(|x| subsets[b].contains(x)) {
                g.add_edge(a, b);
            }
        }
    }
    let n64 = n as u64;
    Ok(self_check(
        g,
        "triangular",
        (n64 * (n64 - 1) / 2, 2 * (n64 - 2), n64 - 2, 4),
    ))
}

/// Shrikhande graph, srg(16,6,2,2): Cayley graph on (Z/4)^2 (vertex
/// `(x, y)` at index `4x + y`) with connection set {±(1,0), ±(0,1), ±(1,1)}.
/// Same parameters as rook(4) but a different critical group.
pub fn shrikhande() -> Graph {
    let mut g = Graph::empty(16);
    let idx = |x: usize, y: usize| 4 * (x % 4) + (y % 4);
    for x in 0..4 {
        for y in 0..4 {
            for (dx, dy) in [(1, 0), (0, 1), (1, 1)] {
                g.add_edge(idx(x, y), idx(x + dx, y + dy));
            }
        }
    }
    self_check(g, "shrikhande", (16, 6, 2, 2))
}

/// Schläfli graph, srg(27,16,10,8).
///
/// Built as the complement of the line-intersection pattern of a double
/// six: vertices `a_1..a_6`, `b_1..b_6`, `c_{ij}` for i < j (indices
/// 0..5, 6..11, then `c_{ij}` lexicographic); `a_i ~ b_j` iff i != j,
/// `a_i ~ c_{jk}` and `b_i ~ c_{jk}` iff i is in {j,k}, and
/// `c_{ij} ~ c_{kl}` iff the pairs are disjoint. That pattern is
/// srg(27,10,1,5); its complement is the Schläfli graph.
pub fn schlafli() -> Graph {
    let mut g = Graph::empty(27);
    let a = |i: usize| i;
    let b = |i: usize| 6 + i;
    let pairs = k_subsets(6, 2);
    let c_of = |i: usize, j: usize| {
        12 + pairs
            .iter()
            .position(|p| p == &[i.min(j), i.max(j)])
            .unwrap()
    };
    for i in 0..6 {
        for j in 0..6 {
            if i != j {
                if i < j {
                    g.add_edge(a(i), b(j));
                    g.add_edge(a(j), b(i));
                }
                g.add_edge(a(i), c_of(i, j));
                g.add_edge(b(i), c_of(i, j));
            }
        }
    }
    for (x, p) in pairs.iter().enumerate() {
        for (y, q) in pairs.iter().enumerate().skip(x + 1) {
            if p.iter().all(|e| !q.contains(e)) {
                g.add_edge(12 + x, 12 + y);
            }
        }
    }
    let skew = self_check(g, "double six", (27, 10, 1, 5));
    self_check(skew.complement(), "schlafli", (27, 16, 10, 8))
}

/// Paley graph on the field with `q` elements, `q` a prime power
/// congruent to 1 mod 4. Vertices are field elements in enumeration
/// order (base-p digit order for prime powers); `x ~ y` iff `x - y` is a
/// nonzero square, detected by `(x-y)^((q-1)/2) = 1`. The congruence
/// makes -1 a square, so the relation is symmetric.
pub fn paley(q: u64) -> Result<Graph, FamilyError> {
    let bad = |reason: String| FamilyError::BadOrder {
        family: "paley",
        reason,
    };
    if q % 4 != 1 {
        return Err(bad(format!("q = {q} is not congruent to 1 mod 4")));
    }
    let factors = crate::arith::factor_u64(q);
    if factors.len() != 1 {
        return Err(bad(format!("q = {q} is not a prime power")));
    }
    let (&p, &d) = factors.iter().next().unwrap();
    let field = FiniteField::new(p, d as usize);
    let n = q as usize;
    let half = (q - 1) / 2;
    let mut g = Graph::empty(n);
    for i in 0..n {
        for j in i + 1..n {
            let diff = field.sub(&field.element(i as u64), &field.element(j as u64));
            if field.is_one(&field.pow(&diff, half)) {
                // symmetry self-check: the negated difference must agree
                let rev = field.sub(&field.element(j as u64), &field.element(i as u64));
                assert!(
                    field.is_one(&field.pow(&rev, half)),
                    "paley: -1 must be a square when q = 1 mod 4"
                );
                g.add_edge(i, j);
            }
        }
    }
    Ok(self_check(
        g,
        "paley",
        (q, (q - 1) / 2, (q - 5) / 4, (q - 1) / 4),
    ))
}

fn k_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Arithmetic in the field with p^d elements, as polynomials over F_p
/// modulo a fixed irreducible. The modulus is the monic irreducible of
/// degree d whose non-leading coefficient vector (c_0, ..., c_{d-1}) has
/// the smallest value as base-p digits, so the construction is
/// deterministic.
struct FiniteField {
    p: u64,
    d: usize,
    /// Coefficients c_0..c_{d-1} of the monic modulus x^d + sum c_i x^i.
    modulus: Vec<u64>,
}

impl FiniteField {
    fn new(p: u64, d: usize) -> FiniteField {
        assert!(d >= 1);
        if d == 1 {
            return FiniteField {
                p,
                d,
                modulus: vec![0],
            };
        }
        let total = p.pow(d as u32);
        for value in 0..total {
            let modulus = digits(value, p, d);
            let field = FiniteField {
                p,
                d,
                modulus: modulus.clone(),
            };
            if field.modulus_is_irreducible() {
                return field;
            }
        }
        unreachable!("an irreducible polynomial of every degree exists over F_p")
    }

    #[cfg(test)]
    fn q(&self) -> u64 {
        self.p.pow(self.d as u32)
    }

    /// Field element with the given enumeration index (base-p digits are
    /// the polynomial coefficients, constant term first).
    fn element(&self, index: u64) -> Vec<u64> {
        digits(index, self.p, self.d)
    }

    fn zero(&self) -> Vec<u64> {
        vec![0; self.d]
    }

    fn one(&self) -> Vec<u64> {
        let mut e = self.zero();
        e[0] = 1;
        e
    }

    fn is_one(&self, x: &[u64]) -> bool {
        x == self.one().as_slice()
    }

    fn sub(&self, x: &[u64], y: &[u64]) -> Vec<u64> {
        x.iter()
            .zip(y)
            .map(|(a, b)| (a + self.p - b) % self.p)
            .collect()
    }

    fn mul(&self, x: &[u64], y: &[u64]) -> Vec<u64> {
        // schoolbook product, then reduction by the monic modulus
        let mut prod = vec![0u64; 2 * self.d];
        for (i, &a) in x.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in y.iter().enumerate() {
                prod[i + j] = (prod[i + j] + a * b) % self.p;
            }
        }
        for deg in (self.d..2 * self.d).rev() {
            let coeff = prod[deg];
            if coeff == 0 {
                continue;
            }
            prod[deg] = 0;
            // x^deg = x^(deg-d) * x^d = -x^(deg-d) * (modulus tail)
            for (i, &m) in self.modulus.iter().enumerate() {
                let sub = coeff * m % self.p;
                let slot = deg - self.d + i;
                prod[slot] = (prod[slot] + self.p - sub) % self.p;
            }
        }
        prod.truncate(self.d);
        prod
    }

    fn pow(&self, x: &[u64], mut e: u64) -> Vec<u64> {
        let mut base = x.to_vec();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// Trial division by every monic polynomial of degree 1..=d/2.
    fn modulus_is_irreducible(&self) -> bool {
        // full coefficient vector of the modulus, degree d
        let mut full: Vec<u64> = self.modulus.clone();
        full.push(1);
        for deg in 1..=self.d / 2 {
            for value in 0..self.p.pow(deg as u32) {
                let mut divisor = digits(value, self.p, deg);
                divisor.push(1); // monic
                if poly_divides(&divisor, &full, self.p) {
                    return false;
                }
            }
        }
        true
    }
}

fn digits(mut value: u64, p: u64, len: usize) -> Vec<u64> {
    let mut out = vec![0u64; len];
    for slot in out.iter_mut() {
        *slot = value % p;
        value /= p;
    }
    debug_assert_eq!(value, 0);
    out
}

/// Does the monic polynomial `divisor` divide `poly` over F_p?
fn poly_divides(divisor: &[u64], poly: &[u64], p: u64) -> bool {
    let mut rem: Vec<u64> = poly.to_vec();
    let dd = divisor.len() - 1;
    while rem.len() > dd {
        let lead = *rem.last().unwrap();
        if lead != 0 {
            let shift = rem.len() - 1 - dd;
            for (i, &c) in divisor.iter().enumerate() {
                rem[shift + i] = (rem[shift + i] + p - lead * c % p) % p;
            }
        }
        rem.pop();
    }
    rem.iter().all(|&c| c == 0)
}
