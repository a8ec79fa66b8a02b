//! Exact class functions on symmetric groups.
//!
//! Two independent routes to the two-row irreducible characters live here:
//! the telescoped difference of permutation characters (fast path, used by
//! the tensor layer) and the Murnaghan-Nakayama recursion (oracle). Tests
//! require them to agree; nothing in the crate assumes it.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::partitions::{class_size, cycle_types, factorial, CycleType, Partition};
use crate::{Int, Rat};

/// Number of `i`-element subsets of `{1..n}` stable under a permutation of
/// the given cycle type; equals the trace of that permutation on the
/// permutation module of `i`-subsets. Computed as the `x^i` coefficient of
/// `prod_cycles (1 + x^l)`.
pub fn subset_fix_count(ct: &CycleType, i: usize) -> Result<Int> {
    let n = ct.n();
    if i > n {
        return Err(Error::IndexOutOfRange { i: i as i64, max: n });
    }
    Ok(subset_fix_polynomial(ct)[i].clone())
}

/// Coefficient list of `prod_cycles (1 + x^l)`, length `n + 1`.
pub fn subset_fix_polynomial(ct: &CycleType) -> Vec<Int> {
    let n = ct.n();
    let mut poly = vec![BigInt::zero(); n + 1];
    poly[0] = BigInt::one();
    let mut deg = 0usize;
    for &l in ct.parts() {
        // multiply by (1 + x^l), descending to reuse the buffer
        deg += l;
        for j in (l..=deg).rev() {
            let lower = poly[j - l].clone();
            poly[j] += lower;
        }
    }
    poly
}

/// Character of the two-row irreducible `[k, n-k]` at a cycle type, via the
/// telescoping `chi_{[k,n-k]} = psi_{n-k} - psi_{n-k-1}` (with `psi_{-1} = 0`).
pub fn two_row_character(n: usize, k: usize, ct: &CycleType) -> Result<Int> {
    if 2 * k < n || k > n {
        return Err(Error::TwoRowOutOfRange { n, k });
    }
    if ct.n() != n {
        return Err(Error::SizeMismatch {
            expected: n,
            got: ct.n(),
        });
    }
    let poly = subset_fix_polynomial(ct);
    let j = n - k;
    let lower = if j == 0 {
        BigInt::zero()
    } else {
        poly[j - 1].clone()
    };
    Ok(poly[j].clone() - lower)
}

/// Murnaghan-Nakayama evaluation of `chi_lambda` at a cycle type.
pub fn mn_character(lambda: &Partition, ct: &CycleType) -> Result<Int> {
    if lambda.n() != ct.n() {
        return Err(Error::SizeMismatch {
            expected: lambda.n(),
            got: ct.n(),
        });
    }
    let mut cache = HashMap::new();
    Ok(mn_rec(lambda.parts(), ct.parts(), &mut cache))
}

type MnCache = HashMap<(Vec<usize>, Vec<usize>), Int>;

fn mn_rec(lambda: &[usize], cycles: &[usize], cache: &mut MnCache) -> Int {
    if cycles.is_empty() {
        return BigInt::one(); // lambda is empty too
    }
    let key = (lambda.to_vec(), cycles.to_vec());
    if let Some(v) = cache.get(&key) {
        return v.clone();
    }
    let t = cycles[0];
    let rest = &cycles[1..];
    let m = lambda.len();
    // first-column hook lengths ("beta numbers"): strictly decreasing
    let betas: Vec<usize> = lambda
        .iter()
        .enumerate()
        .map(|(j, &p)| p + (m - 1 - j))
        .collect();
    let mut total = BigInt::zero();
    for (j, &b) in betas.iter().enumerate() {
        if b < t {
            continue;
        }
        let target = b - t;
        if betas.contains(&target) {
            continue;
        }
        // strip height = number of beta values jumped over
        let height = betas
            .iter()
            .filter(|&&x| target < x && x < b)
            .count();
        let mut new_betas = betas.clone();
        new_betas[j] = target;
        new_betas.sort_unstable_by(|a, b| b.cmp(a));
        let new_lambda: Vec<usize> = new_betas
            .iter()
            .enumerate()
            .map(|(i, &x)| x - (m - 1 - i))
            .filter(|&p| p > 0)
            .collect();
        let sub = mn_rec(&new_lambda, rest, cache);
        if height % 2 == 0 {
            total += sub;
        } else {
            total -= sub;
        }
    }
    cache.insert(key, total.clone());
    total
}

/// Full Murnaghan-Nakayama character table of `S_n`: rows and columns both
/// follow the canonical partition order of [`crate::partitions::partitions`].
pub fn mn_table(n: usize) -> Vec<Vec<Int>> {
    let cts = cycle_types(n);
    let mut cache = HashMap::new();
    crate::partitions::partitions(n)
        .iter()
        .map(|lam| {
            cts.iter()
                .map(|ct| mn_rec(lam.parts(), ct.parts(), &mut cache))
                .collect()
        })
        .collect()
}

/// Multiplicity of `rho_lambda` in the permutation module of `i`-subsets,
/// i.e. the inner product `<psi_i, chi_lambda>` with `chi_lambda` from the
/// Murnaghan-Nakayama oracle. The intermediate rational must be integral;
/// anything else is an implementation bug.
pub fn irreducible_multiplicity(lambda: &Partition, i: usize, n: usize) -> Result<Int> {
    if lambda.n() != n {
        return Err(Error::SizeMismatch {
            expected: n,
            got: lambda.n(),
        });
    }
    if i > n {
        return Err(Error::IndexOutOfRange { i: i as i64, max: n });
    }
    let mut sum = BigInt::zero();
    for ct in cycle_types(n) {
        let psi = subset_fix_count(&ct, i)?;
        let chi = mn_character(lambda, &ct)?;
        sum += class_size(&ct) * psi * chi;
    }
    let order = factorial(n);
    let (q, r) = num_integer::Integer::div_rem(&sum, &order);
    assert!(
        r.is_zero(),
        "inner product <psi_{i}, chi_{lambda}> not integral: {sum}/{order}"
    );
    Ok(q)
}

/// Dimension of the irreducible `rho_lambda`, by the hook length formula.
pub fn hook_dimension(lambda: &Partition) -> Int {
    let parts = lambda.parts();
    let n = lambda.n();
    if n == 0 {
        return BigInt::one();
    }
    // conjugate partition column lengths
    let width = parts[0];
    let mut conj = vec![0usize; width];
    for &p in parts {
        for c in conj.iter_mut().take(p) {
            *c += 1;
        }
    }
    let mut hooks = BigInt::one();
    for (i, &p) in parts.iter().enumerate() {
        for j in 0..p {
            let hook = (p - j) + (conj[j] - i) - 1;
            hooks *= BigInt::from(hook);
        }
    }
    factorial(n) / hooks
}

/// An exact class function on `S_n`, tabulated on every cycle type.
#[derive(Debug, Clone, PartialEq)]
pub struct ClassFunction {
    n: usize,
    values: BTreeMap<Partition, Rat>,
}

impl ClassFunction {
    pub fn from_fn<F>(n: usize, mut f: F) -> Result<Self>
    where
        F: FnMut(&CycleType) -> Result<Rat>,
    {
        let mut values = BTreeMap::new();
        for ct in cycle_types(n) {
            let v = f(&ct)?;
            values.insert(ct.0, v);
        }
        Ok(ClassFunction { n, values })
    }

    /// The permutation character `psi_i` of the `i`-subset module.
    pub fn permutation_character(n: usize, i: usize) -> Result<Self> {
        Self::from_fn(n, |ct| Ok(Rat::from_integer(subset_fix_count(ct, i)?)))
    }

    /// The two-row irreducible character `chi_{[k,n-k]}`, telescoped route.
    pub fn two_row(n: usize, k: usize) -> Result<Self> {
        Self::from_fn(n, |ct| Ok(Rat::from_integer(two_row_character(n, k, ct)?)))
    }

    /// An irreducible character via the Murnaghan-Nakayama oracle.
    pub fn murnaghan_nakayama(lambda: &Partition) -> Result<Self> {
        Self::from_fn(lambda.n(), |ct| {
            Ok(Rat::from_integer(mn_character(lambda, ct)?))
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn value(&self, ct: &CycleType) -> Option<&Rat> {
        self.values.get(&ct.0)
    }

    /// The class inner product `(1/n!) sum_ct |ct| f(ct) g(ct)`.
    pub fn inner_product(&self, other: &ClassFunction) -> Result<Rat> {
        if self.n != other.n {
            return Err(Error::SizeMismatch {
                expected: self.n,
                got: other.n,
            });
        }
        let mut acc = Rat::zero();
        for (p, v) in &self.values {
            let ct = CycleType(p.clone());
            let w = &other.values[p];
            acc += Rat::from_integer(class_size(&ct)) * v * w;
        }
        Ok(acc / Rat::from_integer(factorial(self.n)))
    }

    pub fn add(&self, other: &ClassFunction) -> Result<ClassFunction> {
        if self.n != other.n {
            return Err(Error::SizeMismatch {
                expected: self.n,
                got: other.n,
            });
        }
        let values = self
            .values
            .iter()
            .map(|(p, v)| (p.clone(), v + &other.values[p]))
            .collect();
        Ok(ClassFunction { n: self.n, values })
    }

    pub fn zero(n: usize) -> Self {
        ClassFunction {
            n,
            values: cycle_types(n)
                .into_iter()
                .map(|ct| (ct.0, Rat::zero()))
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    fn ct(parts: &[usize]) -> CycleType {
        CycleType::new(parts.to_vec()).unwrap()
    }

    fn pt(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn subset_fix_counts_in_s4() {
        assert_eq!(subset_fix_count(&ct(&[1, 1, 1, 1]), 2).unwrap(), Int::from(6));
        assert_eq!(subset_fix_count(&ct(&[2, 1, 1]), 2).unwrap(), Int::from(2));
        assert_eq!(subset_fix_count(&ct(&[4]), 2).unwrap(), Int::from(0));
        assert!(subset_fix_count(&ct(&[4]), 5).is_err());
    }

    #[test]
    fn subset_fix_count_is_palindromic() {
        for n in 0..=8 {
            for ct in cycle_types(n) {
                for i in 0..=n {
                    assert_eq!(
                        subset_fix_count(&ct, i).unwrap(),
                        subset_fix_count(&ct, n - i).unwrap(),
                        "ct = {ct}, i = {i}"
                    );
                }
            }
        }
    }

    #[test]
    fn two_row_character_examples() {
        // trivial representation
        for c in cycle_types(5) {
            assert_eq!(two_row_character(5, 5, &c).unwrap(), Int::from(1));
        }
        assert_eq!(two_row_character(4, 2, &ct(&[2, 2])).unwrap(), Int::from(2));
        assert_eq!(
            two_row_character(4, 3, &ct(&[1, 1, 1, 1])).unwrap(),
            Int::from(3)
        );
        assert!(two_row_character(4, 1, &ct(&[4])).is_err());
    }

    #[test]
    fn mn_character_examples() {
        assert_eq!(mn_character(&pt(&[1, 1]), &ct(&[2])).unwrap(), Int::from(-1));
        assert_eq!(
            mn_character(&pt(&[2, 2]), &ct(&[1, 1, 1, 1])).unwrap(),
            Int::from(2)
        );
        assert_eq!(mn_character(&pt(&[2, 1]), &ct(&[3])).unwrap(), Int::from(-1));
        assert!(mn_character(&pt(&[2, 1]), &ct(&[2])).is_err());
    }

    #[test]
    fn mn_matches_hook_dimension_at_identity() {
        for n in 1..=8 {
            let id = CycleType::identity(n);
            for lam in crate::partitions::partitions(n) {
                assert_eq!(
                    mn_character(&lam, &id).unwrap(),
                    hook_dimension(&lam),
                    "lambda = {lam}"
                );
            }
        }
    }

    #[test]
    fn telescoped_two_row_agrees_with_mn_oracle() {
        for n in 1..=10usize {
            for k in n.div_ceil(2)..=n {
                let lam = Partition::two_row(n, k).unwrap();
                for c in cycle_types(n) {
                    assert_eq!(
                        two_row_character(n, k, &c).unwrap(),
                        mn_character(&lam, &c).unwrap(),
                        "n = {n}, k = {k}, ct = {c}"
                    );
                }
            }
        }
    }

    #[test]
    fn multiplicity_examples() {
        assert_eq!(
            irreducible_multiplicity(&pt(&[3, 1]), 1, 4).unwrap(),
            Int::from(1)
        );
        assert_eq!(
            irreducible_multiplicity(&pt(&[2, 1, 1]), 2, 4).unwrap(),
            Int::from(0)
        );
        assert_eq!(
            irreducible_multiplicity(&pt(&[4]), 3, 4).unwrap(),
            Int::from(1)
        );
    }

    #[test]
    fn hook_dimensions() {
        assert_eq!(hook_dimension(&pt(&[6])), Int::from(1));
        assert_eq!(hook_dimension(&pt(&[2, 2])), Int::from(2));
        assert_eq!(hook_dimension(&pt(&[3, 1])), Int::from(3));
        // subtraction formula for two-row shapes
        for n in 1..=10usize {
            for k in n.div_ceil(2)..=n {
                let lam = Partition::two_row(n, k).unwrap();
                let binom = |a: usize, b: i64| -> Int {
                    if b < 0 {
                        Int::from(0)
                    } else {
                        num_integer::binomial(Int::from(a), Int::from(b))
                    }
                };
                let expected = binom(n, (n - k) as i64) - binom(n, n as i64 - k as i64 - 1);
                assert_eq!(hook_dimension(&lam), expected, "n = {n}, k = {k}");
            }
        }
    }

    #[test]
    fn telescoping_decomposition_of_permutation_character() {
        // psi_i = sum_{j <= min(i, n-i)} chi_{[n-j, j]}
        for n in 1..=10 {
            for i in 0..=n {
                let psi = ClassFunction::permutation_character(n, i).unwrap();
                let mut sum = ClassFunction::zero(n);
                for j in 0..=i.min(n - i) {
                    sum = sum.add(&ClassFunction::two_row(n, n - j).unwrap()).unwrap();
                }
                assert_eq!(psi, sum, "n = {n}, i = {i}");
            }
        }
    }

    #[test]
    fn mn_rows_are_orthonormal() {
        for n in 1..=8 {
            let lams = crate::partitions::partitions(n);
            let chars: Vec<ClassFunction> = lams
                .iter()
                .map(|l| ClassFunction::murnaghan_nakayama(l).unwrap())
                .collect();
            for (a, ca) in chars.iter().enumerate() {
                for (b, cb) in chars.iter().enumerate() {
                    let ip = ca.inner_product(cb).unwrap();
                    let expected = if a == b { Rat::one() } else { Rat::zero() };
                    assert_eq!(ip, expected, "n = {n}, a = {a}, b = {b}");
                }
            }
        }
    }

    use num_traits::One;
}
