//! The tensor space `V = (Q^2)^{⊗n}` with its symmetric-group action.
//!
//! Basis vectors are sign strings of length `n`, encoded as `n`-bit indices
//! with `+` as bit 0, `-` as bit 1, and the leftmost tensor factor in the
//! most significant bit. The flip operator `H` sends a basis vector to the
//! sum of its `n` single-flip neighbours; it commutes with the permutation
//! action and restricts to each isotypic component as a ladder with known
//! integer spectrum, which [`isotypic_spectrum`] recomputes from scratch by
//! exact elimination.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::characters::{hook_dimension, two_row_character};
use crate::error::{Error, Result};
use crate::linalg::{column_space_basis, integer_spectrum, restrict, SparseMat};
use crate::partitions::{cycle_types, factorial, CycleType, Partition};
use crate::{rat_to_int, Int, Operator, Rat, DEFAULT_TENSOR_CAP};

/// A sign string in `{+,-}^n`, stored as its bit encoding.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SignString {
    pub n: usize,
    pub bits: usize,
}

impl SignString {
    pub fn new(n: usize, bits: usize) -> Self {
        assert!(bits < (1usize << n));
        SignString { n, bits }
    }

    /// Flip the sign at tensor position `i` (0-based from the left).
    pub fn flip(self, i: usize) -> Self {
        SignString {
            n: self.n,
            bits: self.bits ^ (1 << (self.n - 1 - i)),
        }
    }
}

impl std::fmt::Display for SignString {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for i in 0..self.n {
            let bit = (self.bits >> (self.n - 1 - i)) & 1;
            write!(f, "{}", if bit == 0 { '+' } else { '-' })?;
        }
        Ok(())
    }
}

/// Canonical representative of a cycle type: cycles laid out on `0..n` left
/// to right, longest first. Returned as the image list `i -> sigma(i)`.
pub fn canonical_permutation(ct: &CycleType) -> Vec<usize> {
    let mut perm = vec![0usize; ct.n()];
    let mut start = 0usize;
    for &l in ct.parts() {
        for off in 0..l {
            perm[start + off] = start + (off + 1) % l;
        }
        start += l;
    }
    perm
}

/// Cycle type of an arbitrary permutation given as an image list.
pub fn cycle_type_of(perm: &[usize]) -> CycleType {
    let n = perm.len();
    let mut seen = vec![false; n];
    let mut parts = Vec::new();
    for i in 0..n {
        if seen[i] {
            continue;
        }
        let mut len = 0usize;
        let mut j = i;
        while !seen[j] {
            seen[j] = true;
            j = perm[j];
            len += 1;
        }
        parts.push(len);
    }
    parts.sort_unstable_by(|a, b| b.cmp(a));
    CycleType::new(parts).expect("cycle lengths are positive")
}

/// Index of the basis vector obtained by permuting tensor positions: the
/// sign at position `i` moves to position `perm[i]`.
pub fn permute_index(eps: usize, perm: &[usize]) -> usize {
    let n = perm.len();
    let mut out = 0usize;
    for (i, &target) in perm.iter().enumerate() {
        let bit = (eps >> (n - 1 - i)) & 1;
        out |= bit << (n - 1 - target);
    }
    out
}

/// Permutation operator on `V` for the canonical representative of `ct`.
pub fn perm_operator(ct: &CycleType, n: usize) -> Result<Operator> {
    if ct.n() != n {
        return Err(Error::SizeMismatch {
            expected: n,
            got: ct.n(),
        });
    }
    let perm = canonical_permutation(ct);
    let dim = 1usize << n;
    Ok(SparseMat::from_triplets(
        dim,
        dim,
        (0..dim).map(|eps| (permute_index(eps, &perm), eps, Rat::one())),
    ))
}

/// The flip operator `H`: each basis vector maps to the sum of its `n`
/// Hamming-distance-1 neighbours. Symmetric, trace zero, commutes with every
/// permutation operator.
pub fn yz_operator(n: usize) -> Operator {
    let dim = 1usize << n;
    SparseMat::from_triplets(
        dim,
        dim,
        (0..dim).flat_map(|eps| {
            (0..n).map(move |i| (eps ^ (1 << (n - 1 - i)), eps, Rat::one()))
        }),
    )
}

/// Powers of `H`, sharing the sparse multiplication.
pub fn yz_power(n: usize, r: usize) -> Operator {
    let mut acc = SparseMat::identity(1 << n);
    let h = yz_operator(n);
    for _ in 0..r {
        acc = acc.mul(&h);
    }
    acc
}

fn check_cap(n: usize, cap: usize) -> Result<()> {
    if n > cap {
        return Err(Error::TensorCapExceeded { n, cap });
    }
    Ok(())
}

/// Central idempotent projecting onto the `rho_lambda`-isotypic component,
/// `(dim rho_lambda / n!) sum_sigma chi_lambda(sigma) P_sigma`. Only two-row
/// labels are accepted; all other isotypic components of `V` vanish.
pub fn isotypic_projector(lambda: &Partition, n: usize) -> Result<Operator> {
    isotypic_projector_capped(lambda, n, DEFAULT_TENSOR_CAP)
}

pub fn isotypic_projector_capped(lambda: &Partition, n: usize, cap: usize) -> Result<Operator> {
    check_cap(n, cap)?;
    if lambda.n() != n {
        return Err(Error::SizeMismatch {
            expected: n,
            got: lambda.n(),
        });
    }
    let Some(k) = lambda.two_row_k() else {
        return Err(Error::NotTwoRow(lambda.to_string()));
    };
    let dim = 1usize << n;
    // character values indexed by cycle type; small integers, so the whole
    // sum over n! permutations is accumulated in i64 and scaled once
    let mut chi_values = std::collections::BTreeMap::new();
    for ct in cycle_types(n) {
        let chi = two_row_character(n, k, &ct)?;
        let chi_i64 = i64::try_from(&chi).expect("two-row character fits i64");
        chi_values.insert(ct.0.parts().to_vec(), chi_i64);
    }
    let mut acc = vec![0i64; dim * dim];
    let mut perm_buf: Vec<usize> = (0..n).collect();
    permute_all(&mut perm_buf, 0, &mut |perm| {
        let ct = cycle_type_of(perm);
        let chi = chi_values[ct.parts()];
        if chi == 0 {
            return;
        }
        for eps in 0..dim {
            acc[permute_index(eps, perm) * dim + eps] += chi;
        }
    });
    let scale = Rat::new(hook_dimension(lambda), factorial(n));
    Ok(SparseMat::from_triplets(
        dim,
        dim,
        acc.iter().enumerate().filter(|(_, &v)| v != 0).map(|(idx, &v)| {
            (
                idx / dim,
                idx % dim,
                &scale * Rat::from_integer(BigInt::from(v)),
            )
        }),
    ))
}

fn permute_all<F: FnMut(&[usize])>(items: &mut Vec<usize>, start: usize, f: &mut F) {
    if start == items.len() {
        f(items);
        return;
    }
    for i in start..items.len() {
        items.swap(start, i);
        permute_all(items, start + 1, f);
        items.swap(start, i);
    }
}

/// Exact spectrum (eigenvalue, multiplicity) of `H` on the image of the
/// two-row isotypic projector `e_{[k, n-k]}`, computed by elimination to an
/// image basis, restriction, and an exact characteristic polynomial. Sorted
/// by eigenvalue.
pub fn isotypic_spectrum(n: usize, k: usize) -> Result<Vec<(i64, usize)>> {
    isotypic_spectrum_capped(n, k, DEFAULT_TENSOR_CAP)
}

pub fn isotypic_spectrum_capped(n: usize, k: usize, cap: usize) -> Result<Vec<(i64, usize)>> {
    check_cap(n, cap)?;
    let lambda = Partition::two_row(n, k)?;
    let projector = isotypic_projector_capped(&lambda, n, cap)?;
    let (basis, pivots) = column_space_basis(&projector);
    let restricted = restrict(&yz_operator(n), &basis, &pivots)?;
    // Eigenvalues of the restriction are eigenvalues of H itself, and the
    // row sums of H are all n, so the spectrum lies in [-n, n].
    integer_spectrum(&restricted, n as i64)
}

/// The spectrum the theory predicts for `[k, n-k]`: the arithmetic
/// progression `-(2k-n), -(2k-n)+2, ..., 2k-n`, each eigenvalue with
/// multiplicity `dim rho_{[k,n-k]}`.
pub fn ladder_spectrum(n: usize, k: usize) -> Result<Vec<(i64, usize)>> {
    let lambda = Partition::two_row(n, k)?;
    let mult_int = hook_dimension(&lambda);
    let mult = usize::try_from(&mult_int)
        .map_err(|_| Error::InvalidParameter("hook dimension overflows usize".into()))?;
    let m = (2 * k - n) as i64;
    Ok((-m..=m)
        .step_by(2)
        .map(|e| (e, mult))
        .collect())
}

/// `Tr(op . P_sigma)` for the canonical representative of `ct`.
pub fn trace_with_cycle_type(op: &Operator, ct: &CycleType) -> Result<Int> {
    let n = ct.n();
    if op.nrows() != (1usize << n) {
        return Err(Error::SizeMismatch {
            expected: op.nrows(),
            got: 1usize << n,
        });
    }
    let perm = canonical_permutation(ct);
    let mut acc = Rat::zero();
    for eps in 0..op.nrows() {
        acc += op.get(eps, permute_index(eps, &perm));
    }
    Ok(rat_to_int(&acc))
}

/// `Tr(H^r . P_sigma)` by explicit sparse operator arithmetic on `V`.
pub fn brute_trace(n: usize, r: usize, ct: &CycleType) -> Result<Int> {
    brute_trace_capped(n, r, ct, DEFAULT_TENSOR_CAP)
}

pub fn brute_trace_capped(n: usize, r: usize, ct: &CycleType, cap: usize) -> Result<Int> {
    check_cap(n, cap)?;
    if ct.n() != n {
        return Err(Error::SizeMismatch {
            expected: n,
            got: ct.n(),
        });
    }
    trace_with_cycle_type(&yz_power(n, r), ct)
}

/// The same trace through the isotypic block structure: for `n = 2d`,
/// `sum_{k=0}^{d} [sum_{j=k-d}^{d-k} (2j)^r] chi_{[2d-k,k]}(ct)`. No tensor
/// space is built, so this path has no cap and scales to large `n`.
pub fn structured_trace(n: usize, r: usize, ct: &CycleType) -> Result<Int> {
    if n % 2 != 0 {
        return Err(Error::OddTensorSize(n));
    }
    if ct.n() != n {
        return Err(Error::SizeMismatch {
            expected: n,
            got: ct.n(),
        });
    }
    let d = n / 2;
    let mut total = BigInt::zero();
    for k in 0..=d {
        let mut weight = BigInt::zero();
        let hi = (d - k) as i64;
        for j in -hi..=hi {
            weight += pow_int(2 * j, r);
        }
        if weight.is_zero() {
            continue;
        }
        total += weight * two_row_character(n, n - k, ct)?;
    }
    Ok(total)
}

/// `base^exp` over the integers with `0^0 = 1`.
pub fn pow_int(base: i64, exp: usize) -> Int {
    let mut acc = BigInt::one();
    for _ in 0..exp {
        acc *= BigInt::from(base);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::partitions;

    fn ct(parts: &[usize]) -> CycleType {
        CycleType::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn sign_string_display_and_flip() {
        let s = SignString::new(3, 0b000);
        assert_eq!(s.to_string(), "+++");
        assert_eq!(s.flip(0).to_string(), "-++");
        assert_eq!(s.flip(2).to_string(), "++-");
    }

    #[test]
    fn perm_operator_traces() {
        assert_eq!(
            perm_operator(&ct(&[1, 1]), 2).unwrap().trace(),
            Rat::from_integer(4.into())
        );
        assert_eq!(
            perm_operator(&ct(&[2]), 2).unwrap().trace(),
            Rat::from_integer(2.into())
        );
        assert_eq!(
            perm_operator(&ct(&[2, 1]), 3).unwrap().trace(),
            Rat::from_integer(4.into())
        );
        // trace = 2^{number of cycles}, over all classes up to n = 6
        for n in 0..=6 {
            for c in cycle_types(n) {
                let expected = Rat::from_integer(BigInt::from(1) << c.num_cycles());
                assert_eq!(perm_operator(&c, n).unwrap().trace(), expected, "ct = {c}");
            }
        }
    }

    #[test]
    fn yz_operator_shape() {
        // n = 1: the basis swap
        let h1 = yz_operator(1);
        assert_eq!(h1.get(0, 1), Rat::one());
        assert_eq!(h1.get(1, 0), Rat::one());
        assert_eq!(h1.get(0, 0), Rat::zero());
        // n = 2: H e_{++} = e_{-+} + e_{+-}
        let h2 = yz_operator(2);
        assert_eq!(h2.get(0b10, 0b00), Rat::one());
        assert_eq!(h2.get(0b01, 0b00), Rat::one());
        assert_eq!(h2.get(0b11, 0b00), Rat::zero());
        for n in 1..=8 {
            let h = yz_operator(n);
            assert_eq!(h.trace(), Rat::zero());
            assert_eq!(h.nnz(), n << n, "n ones per row");
        }
    }

    #[test]
    fn yz_commutes_with_all_permutations() {
        for n in 1..=8 {
            let h = yz_operator(n);
            for c in cycle_types(n) {
                let p = perm_operator(&c, n).unwrap();
                assert_eq!(h.mul(&p), p.mul(&h), "n = {n}, ct = {c}");
            }
        }
    }

    #[test]
    fn projector_is_idempotent_and_commutes_with_h() {
        for (n, parts) in [(2usize, vec![2]), (3, vec![2, 1]), (4, vec![3, 1])] {
            let lam = Partition::new(parts).unwrap();
            let e = isotypic_projector(&lam, n).unwrap();
            assert_eq!(e.mul(&e), e, "idempotent for {lam}");
            let h = yz_operator(n);
            assert_eq!(e.mul(&h), h.mul(&e), "commutes for {lam}");
        }
    }

    #[test]
    fn projector_rejects_bad_labels() {
        let lam = Partition::new(vec![2, 1, 1]).unwrap();
        assert!(matches!(
            isotypic_projector(&lam, 4),
            Err(Error::NotTwoRow(_))
        ));
        let lam2 = Partition::new(vec![9]).unwrap();
        assert!(matches!(
            isotypic_projector(&lam2, 9),
            Err(Error::TensorCapExceeded { .. })
        ));
    }

    #[test]
    fn projector_ranks() {
        // rank e_lambda = (2k - n + 1) * dim rho_lambda
        let e = isotypic_projector(&Partition::new(vec![2]).unwrap(), 2).unwrap();
        assert_eq!(column_space_basis(&e).0.len(), 3);
        let expected4 = [(4usize, 5usize), (3, 9), (2, 2)];
        let mut total = 0usize;
        for (k, rank) in expected4 {
            let lam = Partition::two_row(4, k).unwrap();
            let e = isotypic_projector(&lam, 4).unwrap();
            assert_eq!(column_space_basis(&e).0.len(), rank, "k = {k}");
            total += rank;
        }
        assert_eq!(total, 16);
    }

    #[test]
    fn projectors_are_mutually_orthogonal() {
        for n in [3usize, 4] {
            let ks: Vec<usize> = (n.div_ceil(2)..=n).collect();
            for &a in &ks {
                for &b in &ks {
                    if a == b {
                        continue;
                    }
                    let ea =
                        isotypic_projector(&Partition::two_row(n, a).unwrap(), n).unwrap();
                    let eb =
                        isotypic_projector(&Partition::two_row(n, b).unwrap(), n).unwrap();
                    assert!(ea.mul(&eb).is_zero(), "n = {n}, a = {a}, b = {b}");
                }
            }
        }
    }

    #[test]
    fn spectrum_examples() {
        assert_eq!(isotypic_spectrum(2, 2).unwrap(), vec![(-2, 1), (0, 1), (2, 1)]);
        assert_eq!(isotypic_spectrum(2, 1).unwrap(), vec![(0, 1)]);
        assert_eq!(
            isotypic_spectrum(4, 3).unwrap(),
            vec![(-2, 3), (0, 3), (2, 3)]
        );
        // odd n: eigenvalues are odd integers
        assert_eq!(isotypic_spectrum(3, 2).unwrap(), vec![(-1, 2), (1, 2)]);
    }

    #[test]
    fn spectrum_matches_ladder_and_char_poly_oracle() {
        for n in 1..=5usize {
            for k in n.div_ceil(2)..=n {
                let got = isotypic_spectrum(n, k).unwrap();
                assert_eq!(got, ladder_spectrum(n, k).unwrap(), "n = {n}, k = {k}");
                // independent oracle: Berkowitz char poly of the restriction
                let lam = Partition::two_row(n, k).unwrap();
                let e = isotypic_projector(&lam, n).unwrap();
                let (basis, pivots) = column_space_basis(&e);
                let restricted = restrict(&yz_operator(n), &basis, &pivots).unwrap();
                let cp = crate::linalg::char_poly(&restricted);
                let mut expected = vec![Rat::one()];
                for (ev, mult) in &got {
                    for _ in 0..*mult {
                        // multiply by (t - ev)
                        let mut next = vec![Rat::zero(); expected.len() + 1];
                        for (i, c) in expected.iter().enumerate() {
                            next[i] += c.clone();
                            next[i + 1] -= Rat::from_integer((*ev).into()) * c;
                        }
                        expected = next;
                    }
                }
                assert_eq!(cp, expected, "char poly at n = {n}, k = {k}");
            }
        }
    }

    #[test]
    fn brute_trace_examples() {
        assert_eq!(brute_trace(2, 2, &ct(&[1, 1])).unwrap(), Int::from(8));
        assert_eq!(brute_trace(2, 1, &ct(&[1, 1])).unwrap(), Int::from(0));
        assert_eq!(brute_trace(4, 2, &ct(&[1, 1, 1, 1])).unwrap(), Int::from(64));
        assert!(brute_trace(10, 0, &CycleType::identity(10)).is_err());
    }

    #[test]
    fn structured_trace_examples() {
        assert_eq!(structured_trace(2, 2, &ct(&[2])).unwrap(), Int::from(8));
        assert_eq!(structured_trace(2, 0, &ct(&[2])).unwrap(), Int::from(2));
        assert_eq!(
            structured_trace(4, 2, &ct(&[1, 1, 1, 1])).unwrap(),
            Int::from(64)
        );
        assert!(structured_trace(3, 0, &ct(&[3])).is_err());
    }

    #[test]
    fn brute_and_structured_agree_up_to_n6() {
        for d in 0..=3usize {
            let n = 2 * d;
            for r in 0..=4usize {
                let hr = yz_power(n, r);
                for c in cycle_types(n) {
                    let brute = trace_with_cycle_type(&hr, &c).unwrap();
                    let structured = structured_trace(n, r, &c).unwrap();
                    assert_eq!(brute, structured, "n = {n}, r = {r}, ct = {c}");
                }
            }
        }
    }

    #[test]
    fn trace_is_a_class_function() {
        // same cycle type, different layouts: trace must not depend on the representative
        let n = 5;
        let hr = yz_power(n, 3);
        // sigma = (01)(234) laid out two ways
        let laid_out = canonical_permutation(&ct(&[3, 2]));
        let alt = vec![1usize, 0, 3, 4, 2]; // (01) first, then (234)
        assert_eq!(cycle_type_of(&alt), ct(&[3, 2]));
        let trace_of = |perm: &[usize]| {
            let mut acc = Rat::zero();
            for eps in 0..hr.nrows() {
                acc += hr.get(eps, permute_index(eps, perm));
            }
            acc
        };
        assert_eq!(trace_of(&laid_out), trace_of(&alt));
    }

    #[test]
    fn structured_trace_scales_past_the_brute_cap() {
        // at n = 20 the tensor space would be 2^20-dimensional; the block
        // formula reduces to characters and must match the permutation-side
        // formula 2^r sum_i (i-d)^r psi_i
        let n = 20usize;
        let d = (n / 2) as i64;
        for parts in [vec![20], vec![12, 8], vec![5, 5, 5, 5], vec![2; 10]] {
            let c = CycleType::new(parts).unwrap();
            for r in 0..=4usize {
                let psi = crate::characters::subset_fix_polynomial(&c);
                let mut expected = BigInt::zero();
                for (i, count) in psi.iter().enumerate() {
                    expected += pow_int(2 * (i as i64 - d), r) * count;
                }
                assert_eq!(structured_trace(n, r, &c).unwrap(), expected, "r = {r}, ct = {c}");
            }
        }
    }

    #[test]
    fn completeness_of_two_row_ranks() {
        for n in 1..=5usize {
            let mut total = 0usize;
            for k in n.div_ceil(2)..=n {
                let lam = Partition::two_row(n, k).unwrap();
                let e = isotypic_projector(&lam, n).unwrap();
                total += column_space_basis(&e).0.len();
            }
            assert_eq!(total, 1 << n, "n = {n}");
        }
        // and non-two-row labels are rejected rather than projecting to zero
        for lam in partitions(4) {
            if lam.two_row_k().is_none() {
                assert!(isotypic_projector(&lam, 4).is_err());
            }
        }
    }
}
