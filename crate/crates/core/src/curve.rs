//! Curves over finite fields described purely by zeta data.
//!
//! A curve enters as `q` together with the integer numerator `P(T)` of its
//! zeta function; every quantity needed downstream (point counts, closed
//! points, effective divisor counts, divisor shapes) is derived from that by
//! exact integer recurrences. Validation is rejection-based: the functional
//! equation must hold and all derived counts up to the working bound must be
//! nonnegative integers. Nothing certifies that an actual curve realizes the
//! data, and nothing downstream needs that.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partitions::{partitions, CycleType};
use crate::Int;

/// Degrees up to which constructors derive and validate point counts.
pub const DEFAULT_ZETA_BOUND: usize = 12;

/// A curve over `F_q`, given by the numerator of its zeta function.
#[derive(Debug, Clone, PartialEq)]
pub struct ZetaData {
    q: u64,
    numerator: Vec<Int>,
    bound: usize,
    point_counts: Vec<Int>,
    closed_counts: Vec<Int>,
}

impl ZetaData {
    pub fn new(q: u64, numerator: Vec<Int>) -> Result<Self> {
        Self::with_bound(q, numerator, DEFAULT_ZETA_BOUND)
    }

    pub fn with_bound(q: u64, numerator: Vec<Int>, bound: usize) -> Result<Self> {
        if !is_prime_power(q) {
            return Err(Error::InvalidZeta(format!("q = {q} is not a prime power")));
        }
        let mut numerator = numerator;
        while numerator.len() > 1 && numerator.last().map_or(false, |c| c.is_zero()) {
            numerator.pop();
        }
        if numerator.is_empty() || numerator[0] != BigInt::one() {
            return Err(Error::InvalidZeta("numerator must have constant term 1".into()));
        }
        let deg = numerator.len() - 1;
        if deg % 2 != 0 {
            return Err(Error::InvalidZeta(format!(
                "numerator degree {deg} is odd; expected 2g"
            )));
        }
        let g = deg / 2;
        // functional equation P(T) = q^g T^{2g} P(1/(qT)): a_{2g-i} = q^{g-i} a_i
        for i in 0..=g {
            let expected = BigInt::from(q).pow((g - i) as u32) * &numerator[i];
            if numerator[deg - i] != expected {
                return Err(Error::InvalidZeta(format!(
                    "functional equation fails at coefficient {}: {} != {}",
                    deg - i,
                    numerator[deg - i],
                    expected
                )));
            }
        }
        let point_counts = derive_point_counts(q, &numerator, bound)?;
        let closed_counts = derive_closed_counts(&point_counts)?;
        Ok(ZetaData {
            q,
            numerator,
            bound,
            point_counts,
            closed_counts,
        })
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn genus(&self) -> usize {
        (self.numerator.len() - 1) / 2
    }

    pub fn numerator(&self) -> &[Int] {
        &self.numerator
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    /// `N_n = #X(F_{q^n})` for `n = 1..=n_max`.
    pub fn point_counts(&self, n_max: usize) -> Result<Vec<Int>> {
        if n_max <= self.bound {
            return Ok(self.point_counts[..n_max].to_vec());
        }
        derive_point_counts(self.q, &self.numerator, n_max)
    }

    /// Closed-point counts `a_1..a_{n_max}`.
    pub fn closed_point_counts(&self, n_max: usize) -> Result<Vec<Int>> {
        if n_max <= self.bound {
            return Ok(self.closed_counts[..n_max].to_vec());
        }
        derive_closed_counts(&self.point_counts(n_max)?)
    }

    /// Number of effective divisors of degree `d`, i.e. the `T^d` coefficient
    /// of `P(T) / ((1-T)(1-qT))`.
    pub fn effective_divisor_count(&self, d: usize) -> Int {
        let qi = BigInt::from(self.q);
        let mut total = BigInt::zero();
        for (i, a) in self.numerator.iter().enumerate() {
            if i > d {
                break;
            }
            // sum_{k=0}^{d-i} q^k = (q^{d-i+1} - 1)/(q - 1)
            let geom = (qi.pow((d - i + 1) as u32) - 1) / (&qi - 1);
            total += a * geom;
        }
        total
    }
}

fn is_prime_power(q: u64) -> bool {
    if q < 2 {
        return false;
    }
    let mut p = 2u64;
    while p * p <= q {
        if q % p == 0 {
            let mut m = q;
            while m % p == 0 {
                m /= p;
            }
            return m == 1;
        }
        p += 1;
    }
    true // q itself is prime
}

fn derive_point_counts(q: u64, numerator: &[Int], n_max: usize) -> Result<Vec<Int>> {
    let deg = numerator.len() - 1;
    // e_i = (-1)^i a_i are the elementary symmetric functions of the inverse
    // roots; Newton's identities give the power sums entirely over Z
    let e: Vec<Int> = numerator
        .iter()
        .enumerate()
        .map(|(i, a)| if i % 2 == 0 { a.clone() } else { -a })
        .collect();
    let mut power_sums: Vec<Int> = Vec::with_capacity(n_max + 1);
    power_sums.push(BigInt::from(deg as i64)); // p_0 = number of inverse roots
    let mut out = Vec::with_capacity(n_max);
    for k in 1..=n_max {
        let mut p_k = BigInt::zero();
        for i in 1..k.min(deg + 1) {
            let term = &e[i] * &power_sums[k - i];
            if i % 2 == 1 {
                p_k += term;
            } else {
                p_k -= term;
            }
        }
        if k <= deg {
            let last = BigInt::from(k as i64) * &e[k];
            if k % 2 == 1 {
                p_k += last;
            } else {
                p_k -= last;
            }
        }
        power_sums.push(p_k.clone());
        let n_k: Int = BigInt::from(q).pow(k as u32) + 1 - p_k;
        if n_k.is_negative() {
            return Err(Error::InvalidZeta(format!(
                "derived point count N_{k} = {n_k} is negative"
            )));
        }
        out.push(n_k);
    }
    Ok(out)
}

fn derive_closed_counts(point_counts: &[Int]) -> Result<Vec<Int>> {
    let n_max = point_counts.len();
    let mut out = Vec::with_capacity(n_max);
    for n in 1..=n_max {
        let mut sum = BigInt::zero();
        for m in 1..=n {
            if n % m != 0 {
                continue;
            }
            match moebius(n / m) {
                1 => sum += &point_counts[m - 1],
                -1 => sum -= &point_counts[m - 1],
                _ => {}
            }
        }
        let (a_n, rem) = sum.div_rem(&BigInt::from(n as i64));
        if !rem.is_zero() {
            return Err(Error::InvalidZeta(format!(
                "closed-point count a_{n} is not integral ({sum}/{n})"
            )));
        }
        if a_n.is_negative() {
            return Err(Error::InvalidZeta(format!(
                "closed-point count a_{n} = {a_n} is negative"
            )));
        }
        out.push(a_n);
    }
    Ok(out)
}

fn moebius(mut n: usize) -> i32 {
    let mut mu = 1i32;
    let mut p = 2usize;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            mu = -mu;
        }
        p += 1;
    }
    if n > 1 {
        mu = -mu;
    }
    mu
}

/// An unramified double cover, encoded by the base curve and the
/// L-polynomial of the quadratic character.
#[derive(Debug, Clone, PartialEq)]
pub struct DoubleCover {
    base: ZetaData,
    eta_numerator: Vec<Int>,
    cover: ZetaData,
}

impl DoubleCover {
    pub fn new(base: ZetaData, eta_numerator: Vec<Int>) -> Result<Self> {
        Self::with_bound(base, eta_numerator, DEFAULT_ZETA_BOUND)
    }

    pub fn with_bound(base: ZetaData, eta_numerator: Vec<Int>, bound: usize) -> Result<Self> {
        let g = base.genus();
        if g == 0 {
            return Err(Error::InvalidCover(
                "base curve must have genus >= 1 to carry an unramified quadratic character"
                    .into(),
            ));
        }
        let mut eta = eta_numerator;
        while eta.len() > 1 && eta.last().map_or(false, |c| c.is_zero()) {
            eta.pop();
        }
        if eta.len() != 2 * g - 1 {
            return Err(Error::InvalidCover(format!(
                "eta numerator must have degree {}, got degree {}",
                2 * g - 2,
                eta.len() - 1
            )));
        }
        if eta.is_empty() || eta[0] != BigInt::one() {
            return Err(Error::InvalidCover("eta numerator must have constant term 1".into()));
        }
        let product = poly_mul(base.numerator(), &eta);
        let cover = ZetaData::with_bound(base.q(), product, bound)
            .map_err(|e| Error::InvalidCover(format!("zeta of the cover is invalid: {e}")))?;
        Ok(DoubleCover {
            base,
            eta_numerator: eta,
            cover,
        })
    }

    pub fn base(&self) -> &ZetaData {
        &self.base
    }

    pub fn cover(&self) -> &ZetaData {
        &self.cover
    }

    pub fn eta_numerator(&self) -> &[Int] {
        &self.eta_numerator
    }

    /// Closed-point counts of the covering curve.
    pub fn cover_closed_points(&self, n_max: usize) -> Result<Vec<Int>> {
        self.cover.closed_point_counts(n_max)
    }

    /// All divisor shapes of the given total degree on the covering curve,
    /// with exact divisor counts.
    pub fn shapes_of_degree(&self, degree: usize) -> Result<Vec<(DivisorShape, Int)>> {
        enumerate_shapes(&self.cover_closed_points(degree.max(1))?, degree)
    }
}

fn poly_mul(a: &[Int], b: &[Int]) -> Vec<Int> {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// The multiset of (closed-point degree, multiplicity) pairs of an effective
/// divisor: the complete invariant for every quantity computed here.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DivisorShape {
    entries: Vec<(usize, usize)>,
}

impl DivisorShape {
    /// Entries are canonicalized by sorting on (degree, multiplicity).
    pub fn new(mut entries: Vec<(usize, usize)>) -> Result<Self> {
        if entries.iter().any(|&(d, m)| d == 0 || m == 0) {
            return Err(Error::InvalidParameter(
                "shape entries need positive degree and multiplicity".into(),
            ));
        }
        entries.sort_unstable();
        Ok(DivisorShape { entries })
    }

    pub fn empty() -> Self {
        DivisorShape { entries: Vec::new() }
    }

    pub fn entries(&self) -> &[(usize, usize)] {
        &self.entries
    }

    pub fn total_degree(&self) -> usize {
        self.entries.iter().map(|&(d, m)| d * m).sum()
    }

    pub fn is_multiplicity_free(&self) -> bool {
        self.entries.iter().all(|&(_, m)| m == 1)
    }

    /// Number of decompositions into two effective divisors weighted by the
    /// degree of the first part: the coefficient list of
    /// `prod_entries sum_{j=0}^{m} x^{j*deg}`, length `total_degree + 1`.
    pub fn splitting_polynomial(&self) -> Vec<Int> {
        let total = self.total_degree();
        let mut poly = vec![BigInt::zero(); total + 1];
        poly[0] = BigInt::one();
        let mut deg = 0usize;
        for &(d, m) in &self.entries {
            let mut next = vec![BigInt::zero(); total + 1];
            for j in 0..=m {
                let shift = j * d;
                for t in 0..=deg {
                    if poly[t].is_zero() {
                        continue;
                    }
                    next[t + shift] += &poly[t];
                }
            }
            deg += d * m;
            poly = next;
        }
        poly
    }
}

impl fmt::Display for DivisorShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.entries.is_empty() {
            return write!(f, "-");
        }
        let parts: Vec<String> = self
            .entries
            .iter()
            .map(|&(d, m)| format!("({d},{m})"))
            .collect();
        write!(f, "{}", parts.join("+"))
    }
}

/// Count of rational decompositions `E = E_1 + E_2` with `deg E_1 = i`.
pub fn splitting_count(shape: &DivisorShape, i: usize) -> Result<Int> {
    let total = shape.total_degree();
    if i > total {
        return Err(Error::IndexOutOfRange {
            i: i as i64,
            max: total,
        });
    }
    Ok(shape.splitting_polynomial()[i].clone())
}

/// Frobenius cycle type on the geometric points of a multiplicity-free
/// divisor: the parts are the closed-point degrees.
pub fn shape_cycle_type(shape: &DivisorShape) -> Result<CycleType> {
    if !shape.is_multiplicity_free() {
        return Err(Error::MultiplicityUnsupported);
    }
    let mut parts: Vec<usize> = shape.entries().iter().map(|&(d, _)| d).collect();
    parts.sort_unstable_by(|a, b| b.cmp(a));
    CycleType::new(parts)
}

/// Enumerate every divisor shape of the given total degree realizable with
/// the supplied closed-point counts (`counts[i]` = points of degree `i+1`),
/// along with the exact number of effective divisors of that shape. Shapes
/// are returned in canonical sorted order.
pub fn enumerate_shapes(counts: &[Int], degree: usize) -> Result<Vec<(DivisorShape, Int)>> {
    if counts.len() < degree {
        return Err(Error::InvalidParameter(format!(
            "need closed-point counts up to degree {degree}, got {}",
            counts.len()
        )));
    }
    let mut out = Vec::new();
    let mut entries = Vec::new();
    shape_rec(counts, degree, degree, &mut entries, &mut out);
    out.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(out)
}

fn shape_rec(
    counts: &[Int],
    max_deg: usize,
    remaining: usize,
    entries: &mut Vec<(usize, usize)>,
    out: &mut Vec<(DivisorShape, Int)>,
) {
    if remaining == 0 {
        let count = shape_count(counts, entries);
        if !count.is_zero() {
            out.push((
                DivisorShape::new(entries.clone()).expect("entries are positive"),
                count,
            ));
        }
        return;
    }
    if max_deg == 0 {
        return;
    }
    // choose the multiset of multiplicities used at degree max_deg
    let budget = remaining / max_deg;
    for weight in 0..=budget {
        for mu in partitions(weight) {
            let before = entries.len();
            entries.extend(mu.parts().iter().map(|&m| (max_deg, m)));
            shape_rec(
                counts,
                max_deg - 1,
                remaining - weight * max_deg,
                entries,
                out,
            );
            entries.truncate(before);
        }
    }
}

/// Number of divisors with the given shape: per degree, a falling factorial
/// of the point supply divided by the symmetry of repeated multiplicities.
fn shape_count(counts: &[Int], entries: &[(usize, usize)]) -> Int {
    let mut total = BigInt::one();
    let mut i = 0usize;
    while i < entries.len() {
        let d = entries[i].0;
        let mut mults = Vec::new();
        while i < entries.len() && entries[i].0 == d {
            mults.push(entries[i].1);
            i += 1;
        }
        let supply = &counts[d - 1];
        let mut numer = BigInt::one();
        for t in 0..mults.len() {
            numer *= supply - BigInt::from(t as i64);
        }
        if numer.is_zero() || numer.is_negative() {
            return BigInt::zero();
        }
        let mut denom = BigInt::one();
        let mut j = 0usize;
        while j < mults.len() {
            let v = mults[j];
            let mut reps = 0usize;
            while j < mults.len() && mults[j] == v {
                reps += 1;
                j += 1;
            }
            denom *= crate::partitions::factorial(reps);
        }
        total *= numer / denom;
    }
    total
}

/// On-disk curve description. TOML with exactly these three fields.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurveConfig {
    pub q: u64,
    pub zeta_numerator: Vec<i64>,
    pub eta_numerator: Vec<i64>,
}

impl CurveConfig {
    pub fn parse(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::InvalidConfig(e.to_string()))
    }

    pub fn serialize(&self) -> String {
        toml::to_string(self).expect("curve config serializes")
    }

    pub fn to_cover(&self) -> Result<DoubleCover> {
        self.to_cover_with_bound(DEFAULT_ZETA_BOUND)
    }

    pub fn to_cover_with_bound(&self, bound: usize) -> Result<DoubleCover> {
        let base = ZetaData::with_bound(
            self.q,
            self.zeta_numerator.iter().map(|&c| BigInt::from(c)).collect(),
            bound,
        )?;
        DoubleCover::with_bound(
            base,
            self.eta_numerator.iter().map(|&c| BigInt::from(c)).collect(),
            bound,
        )
    }
}
