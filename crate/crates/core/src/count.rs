//! Spanning-tree counting: exact (matrix-tree theorem with fraction-free
//! elimination), log-domain, partition weights and Grimmett's upper bound.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul};

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{One, ToPrimitive, Zero};
use rand::Rng;

use crate::error::Result;
use crate::graph::{Graph, Multigraph, Partition};

/// Exact nonnegative count (spanning trees, forests, partition weights).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct BigCount(pub BigUint);

impl BigCount {
    pub fn zero() -> Self {
        BigCount(BigUint::zero())
    }

    pub fn one() -> Self {
        BigCount(BigUint::one())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn to_u64(&self) -> Option<u64> {
        self.0.to_u64()
    }

    /// Nearest `f64`; infinite beyond the `f64` range.
    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::INFINITY)
    }

    /// Natural log; `-inf` for zero. Accurate for values beyond `f64` range.
    pub fn ln(&self) -> f64 {
        if self.0.is_zero() {
            return f64::NEG_INFINITY;
        }
        let bits = self.0.bits();
        if bits <= 1000 {
            return libm::log(self.to_f64());
        }
        let shift = bits - 64;
        let top = (&self.0 >> shift).to_f64().unwrap_or(f64::INFINITY);
        libm::log(top) + shift as f64 * core::f64::consts::LN_2
    }

    pub fn pow(base: u64, exp: u32) -> Self {
        BigCount(num_traits::pow(BigUint::from(base), exp as usize))
    }

    /// Returns true with probability exactly `1 / self`. `self` must be
    /// nonzero.
    pub fn one_in<R: Rng + ?Sized>(&self, rng: &mut R) -> bool {
        assert!(!self.0.is_zero(), "probability 1/0");
        if let Some(t) = self.0.to_u64() {
            return rng.random_range(0..t) == 0;
        }
        // Rejection sampling of a uniform value below self.
        let bits = self.0.bits();
        let words = bits.div_ceil(32) as usize;
        let excess = (words as u64 * 32 - bits) as u32;
        loop {
            let mut digits: Vec<u32> = (0..words).map(|_| rng.next_u32()).collect();
            if let Some(top) = digits.last_mut() {
                *top >>= excess;
            }
            let draw = BigUint::new(digits);
            if draw < self.0 {
                return draw.is_zero();
            }
        }
    }
}

impl From<u64> for BigCount {
    fn from(v: u64) -> Self {
        BigCount(BigUint::from(v))
    }
}

impl From<BigUint> for BigCount {
    fn from(v: BigUint) -> Self {
        BigCount(v)
    }
}

impl fmt::Display for BigCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

impl Mul for BigCount {
    type Output = BigCount;
    fn mul(self, rhs: BigCount) -> BigCount {
        BigCount(self.0 * rhs.0)
    }
}

impl<'a> Mul<&'a BigCount> for BigCount {
    type Output = BigCount;
    fn mul(self, rhs: &'a BigCount) -> BigCount {
        BigCount(self.0 * &rhs.0)
    }
}

impl Add for BigCount {
    type Output = BigCount;
    fn add(self, rhs: BigCount) -> BigCount {
        BigCount(self.0 + rhs.0)
    }
}

impl<'a> Add<&'a BigCount> for BigCount {
    type Output = BigCount;
    fn add(self, rhs: &'a BigCount) -> BigCount {
        BigCount(self.0 + &rhs.0)
    }
}

impl core::iter::Sum for BigCount {
    fn sum<I: Iterator<Item = BigCount>>(iter: I) -> Self {
        iter.fold(BigCount::zero(), |a, b| a + b)
    }
}

impl<'a> core::iter::Sum<&'a BigCount> for BigCount {
    fn sum<I: Iterator<Item = &'a BigCount>>(iter: I) -> Self {
        iter.fold(BigCount::zero(), |a, b| a + b)
    }
}

impl core::iter::Product for BigCount {
    fn product<I: Iterator<Item = BigCount>>(iter: I) -> Self {
        iter.fold(BigCount::one(), |a, b| a * b)
    }
}

/// Natural-log magnitude of a count, with an explicit zero flag.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogCount {
    pub ln: f64,
    pub is_zero: bool,
}

impl LogCount {
    pub const ZERO: LogCount = LogCount {
        ln: f64::NEG_INFINITY,
        is_zero: true,
    };

    pub fn from_ln(ln: f64) -> Self {
        LogCount { ln, is_zero: false }
    }
}

/// Determinant of an integer matrix by Bareiss elimination in `i128`,
/// giving up (returning `None`) on overflow.
fn bareiss_i128(mut m: Vec<Vec<i128>>) -> Option<i128> {
    let n = m.len();
    if n == 0 {
        return Some(1);
    }
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if m[k][k] == 0 {
            let swap = (k + 1..n).find(|&i| m[i][k] != 0)?;
            m.swap(k, swap);
            sign = -sign;
        }
        let pivot = m[k][k];
        for i in k + 1..n {
            for j in k + 1..n {
                let a = m[i][j].checked_mul(pivot)?;
                let b = m[i][k].checked_mul(m[k][j])?;
                m[i][j] = a.checked_sub(b)? / prev;
            }
            m[i][k] = 0;
        }
        prev = pivot;
    }
    Some(sign * m[n - 1][n - 1])
}

fn bareiss_big(rows: &[Vec<i128>]) -> BigInt {
    let n = rows.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut m: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(swap) => {
                    m.swap(k, swap);
                    negate = !negate;
                }
                None => return BigInt::zero(),
            }
        }
        let pivot = m[k][k].clone();
        for i in k + 1..n {
            for j in k + 1..n {
                let t = &m[i][j] * &pivot - &m[i][k] * &m[k][j];
                m[i][j] = t / &prev;
            }
            m[i][k] = BigInt::zero();
        }
        prev = pivot;
    }
    let det = m[n - 1][n - 1].clone();
    if negate {
        -det
    } else {
        det
    }
}

/// Exact determinant of a small integer matrix.
fn exact_det(rows: Vec<Vec<i128>>) -> BigInt {
    match bareiss_i128(rows.clone()) {
        Some(d) => BigInt::from(d),
        None => bareiss_big(&rows),
    }
}

fn det_to_count(det: BigInt) -> BigCount {
    match det.into_parts() {
        (Sign::Minus, _) => unreachable!("Laplacian minors are nonnegative"),
        (_, mag) => BigCount(mag),
    }
}

/// Laplacian with the last row and column removed.
fn reduced_laplacian(h: &Multigraph) -> Vec<Vec<i128>> {
    let n = h.num_vertices();
    let mut lap = vec![vec![0i128; n - 1]; n - 1];
    for (i, row) in lap.iter_mut().enumerate() {
        for j in 0..n {
            let m = h.multiplicity(i, j) as i128;
            row[i] += m;
            if j < n - 1 {
                row[j] -= m;
            }
        }
    }
    lap
}

/// Number of spanning trees of a simple graph; 0 when disconnected.
pub fn count_spanning_trees(g: &Graph) -> BigCount {
    if g.num_vertices() <= 1 {
        return BigCount::one();
    }
    if !g.is_connected() {
        return BigCount::zero();
    }
    count_spanning_trees_multigraph(&Multigraph::from(g))
}

/// Number of spanning trees of a loopless multigraph, counting parallel
/// edges as distinct.
pub fn count_spanning_trees_multigraph(h: &Multigraph) -> BigCount {
    let n = h.num_vertices();
    if n <= 1 {
        return BigCount::one();
    }
    det_to_count(exact_det(reduced_laplacian(h)))
}

/// `ln` of the spanning-tree count via a Cholesky factorization of the
/// reduced Laplacian. Use for graphs too large for exact counting.
pub fn log_count_spanning_trees(g: &Graph) -> LogCount {
    let n = g.num_vertices();
    if n <= 1 {
        return LogCount::from_ln(0.0);
    }
    if !g.is_connected() {
        return LogCount::ZERO;
    }
    let m = n - 1;
    let mut a = vec![0.0f64; m * m];
    for &(u, v) in g.edges() {
        if u < m {
            a[u * m + u] += 1.0;
        }
        if v < m {
            a[v * m + v] += 1.0;
        }
        if u < m && v < m {
            a[u * m + v] -= 1.0;
            a[v * m + u] -= 1.0;
        }
    }
    // In-place lower Cholesky; the reduced Laplacian of a connected graph is
    // positive definite.
    let mut log_det = 0.0;
    for j in 0..m {
        let mut d = a[j * m + j];
        for k in 0..j {
            d -= a[j * m + k] * a[j * m + k];
        }
        let d = libm::sqrt(d);
        a[j * m + j] = d;
        log_det += 2.0 * libm::log(d);
        for i in j + 1..m {
            let mut s = a[i * m + j];
            for k in 0..j {
                s -= a[i * m + k] * a[j * m + k];
            }
            a[i * m + j] = s / d;
        }
    }
    LogCount::from_ln(log_det)
}

/// Spanning-tree weight of `p`: the product of the tree counts of the
/// subgraphs induced by its blocks.
pub fn partition_weight(g: &Graph, p: &Partition) -> Result<BigCount> {
    p.validate(g)?;
    Ok(p.blocks()
        .iter()
        .map(|b| count_spanning_trees(&g.induced_subgraph(b)))
        .product())
}

/// Grimmett's bound on the largest spanning-tree count of any graph with `m`
/// edges on `n >= 2` vertices: `(1/n) (2m / (n-1))^(n-1)`.
pub fn grimmett_bound(m: usize, n: usize) -> f64 {
    assert!(n >= 2, "the bound needs at least two vertices");
    let base = 2.0 * m as f64 / (n - 1) as f64;
    libm::pow(base, (n - 1) as f64) / n as f64
}
