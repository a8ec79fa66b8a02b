//! Finite model of the double-coset invariant.
//!
//! Over `F = F_q` (q odd) and its quadratic extension `K`, the group
//! `G = PGL_2(F)` carries commuting actions of the split torus `A` (diagonal
//! matrices) and the nonsplit torus `T = K^x / F^x`, embedded by the
//! multiplication action of `K` on itself in the basis `{1, theta}` with
//! `theta^2 = delta` a nonsquare. Writing an invertible matrix as
//! `e a1(alpha) + f a1(beta)` (top row from `alpha`, bottom row from `beta`),
//! the invariant of its double coset is `alpha conj(beta) / Tr(alpha
//! conj(beta))`, normalized so that every output has trace 1. The census
//! enumerates the whole group, partitions it into `A\G/T` double cosets and
//! reports what the invariant does on them.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::gf::SmallField;
use crate::DEFAULT_CENSUS_Q_CAP;

/// 2x2 matrix over the subfield, row major: `[a, b, c, d]`.
pub type Mat = [u16; 4];

#[derive(Debug, Clone)]
pub struct QuadraticModel {
    q: u64,
    field: SmallField, // K = F_{q^2}
    in_subfield: Vec<bool>,
    subfield: Vec<u16>,
    theta: u16,
    delta: u16,
    // z -> (x, y) with z = x + y * theta, both coordinates in the subfield
    coords: Vec<(u16, u16)>,
}

impl QuadraticModel {
    pub fn new(q: u64) -> Result<Self> {
        if q % 2 == 0 {
            return Err(Error::UnsupportedQ {
                q,
                reason: "the invariant formula needs odd characteristic".into(),
            });
        }
        let (p, m) = prime_power_split(q).ok_or_else(|| Error::UnsupportedQ {
            q,
            reason: "not a prime power".into(),
        })?;
        let field = SmallField::new(p, 2 * m)?;
        let in_subfield: Vec<bool> = field.elements().map(|z| field.pow(z, q) == z).collect();
        let subfield: Vec<u16> = field.elements().filter(|&z| in_subfield[z as usize]).collect();
        assert_eq!(subfield.len() as u64, q, "subfield has q elements");
        let theta = field
            .elements()
            .find(|&z| !in_subfield[z as usize] && in_subfield[field.mul(z, z) as usize])
            .expect("K = F(sqrt(delta)) in odd characteristic");
        let delta = field.mul(theta, theta);
        let mut coords = vec![(u16::MAX, u16::MAX); field.size()];
        for &x in &subfield {
            for &y in &subfield {
                let z = field.add(x, field.mul(y, theta));
                coords[z as usize] = (x, y);
            }
        }
        assert!(coords.iter().all(|&(x, _)| x != u16::MAX), "{{1, theta}} is a basis");
        Ok(QuadraticModel {
            q,
            field,
            in_subfield,
            subfield,
            theta,
            delta,
            coords,
        })
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn field(&self) -> &SmallField {
        &self.field
    }

    pub fn theta(&self) -> u16 {
        self.theta
    }

    pub fn is_in_subfield(&self, z: u16) -> bool {
        self.in_subfield[z as usize]
    }

    pub fn subfield(&self) -> &[u16] {
        &self.subfield
    }

    /// Conjugation `z -> z^q`, the nontrivial automorphism of `K/F`.
    pub fn conj(&self, z: u16) -> u16 {
        self.field.pow(z, self.q)
    }

    /// `Tr_{K/F}(z) = z + conj(z)`.
    pub fn trace(&self, z: u16) -> u16 {
        self.field.add(z, self.conj(z))
    }

    /// `Nm_{K/F}(z) = z * conj(z)`.
    pub fn norm(&self, z: u16) -> u16 {
        self.field.mul(z, self.conj(z))
    }

    /// Elements of `K` with trace 1.
    pub fn trace_one_elements(&self) -> Vec<u16> {
        self.field.elements().filter(|&z| self.trace(z) == 1).collect()
    }

    /// `x + y * theta` from subfield coordinates.
    pub fn compose(&self, x: u16, y: u16) -> u16 {
        self.field.add(x, self.field.mul(y, self.theta))
    }

    /// Matrix of multiplication by `z` on `K` in the basis `{1, theta}`.
    pub fn alpha1(&self, z: u16) -> Mat {
        let (x, y) = self.coords[z as usize];
        [x, self.field.mul(y, self.delta), y, x]
    }

    pub fn mat_mul(&self, a: &Mat, b: &Mat) -> Mat {
        let f = &self.field;
        [
            f.add(f.mul(a[0], b[0]), f.mul(a[1], b[2])),
            f.add(f.mul(a[0], b[1]), f.mul(a[1], b[3])),
            f.add(f.mul(a[2], b[0]), f.mul(a[3], b[2])),
            f.add(f.mul(a[2], b[1]), f.mul(a[3], b[3])),
        ]
    }

    pub fn mat_det(&self, m: &Mat) -> u16 {
        let f = &self.field;
        f.sub(f.mul(m[0], m[3]), f.mul(m[1], m[2]))
    }

    /// Canonical representative of the class of `m` in `PGL_2`: the first
    /// nonzero entry is scaled to 1.
    pub fn pgl_canonical(&self, m: &Mat) -> Mat {
        let lead = m.iter().find(|&&e| e != 0).expect("nonzero matrix");
        let s = self.field.inv(*lead).expect("nonzero entry");
        [
            self.field.mul(m[0], s),
            self.field.mul(m[1], s),
            self.field.mul(m[2], s),
            self.field.mul(m[3], s),
        ]
    }

    /// All of `PGL_2(F)` as canonical representatives, sorted.
    pub fn pgl_elements(&self) -> Vec<Mat> {
        let mut set = BTreeSet::new();
        for &a in &self.subfield {
            for &b in &self.subfield {
                for &c in &self.subfield {
                    for &d in &self.subfield {
                        let m = [a, b, c, d];
                        if self.mat_det(&m) == 0 {
                            continue;
                        }
                        set.insert(self.pgl_canonical(&m));
                    }
                }
            }
        }
        set.into_iter().collect()
    }

    /// Unique decomposition `g = e a1(alpha) + f a1(beta)`: the top row of
    /// `g` is the top row of `a1(alpha)`, the bottom row that of `a1(beta)`.
    pub fn decompose(&self, g: &Mat) -> (u16, u16) {
        let delta_inv = self.field.inv(self.delta).expect("delta is nonzero");
        let alpha = self.compose(g[0], self.field.mul(g[1], delta_inv));
        let beta = self.compose(g[3], g[2]);
        (alpha, beta)
    }

    /// The double-coset invariant `alpha conj(beta) / Tr(alpha conj(beta))`.
    ///
    /// The output always has trace 1 (asserted). In this model
    /// `Tr(alpha conj(beta)) = 2 det(g)`, so the degenerate locus and the
    /// singular locus coincide; the trace is tested first and the
    /// determinant check remains as a guard.
    pub fn quad_invariant(&self, g: &Mat) -> Result<u16> {
        assert!(
            g.iter().all(|&e| self.is_in_subfield(e)),
            "matrix entries must lie in the subfield"
        );
        let (alpha, beta) = self.decompose(g);
        let w = self.field.mul(alpha, self.conj(beta));
        let t = self.trace(w);
        if t == 0 {
            return Err(Error::Degenerate);
        }
        if self.mat_det(g) == 0 {
            return Err(Error::NonInvertible);
        }
        let xi = self
            .field
            .mul(w, self.field.inv(t).expect("nonzero trace"));
        assert_eq!(self.trace(xi), 1, "invariant must have trace 1");
        Ok(xi)
    }

    /// Representatives of the split torus `A(F)` in `PGL_2`: `diag(w, 1)`.
    pub fn split_torus(&self) -> Vec<Mat> {
        self.subfield
            .iter()
            .filter(|&&w| w != 0)
            .map(|&w| [w, 0, 0, 1])
            .collect()
    }

    /// Representatives of `T(F) = K^x / F^x` under `alpha1`.
    pub fn nonsplit_torus(&self) -> Vec<Mat> {
        let mut reps = Vec::new();
        for z in self.field.elements().skip(1) {
            // canonical coset representative: smallest index in z * F^x
            let min = self
                .subfield
                .iter()
                .filter(|&&c| c != 0)
                .map(|&c| self.field.mul(c, z))
                .min()
                .unwrap();
            if min == z {
                reps.push(self.alpha1(z));
            }
        }
        reps
    }

    /// Partition of `PGL_2(F)` into `A\G/T` double cosets, each sorted, the
    /// list sorted by its smallest member.
    pub fn double_cosets(&self) -> Vec<Vec<Mat>> {
        let elements = self.pgl_elements();
        let a_reps = self.split_torus();
        let t_reps = self.nonsplit_torus();
        let mut remaining: BTreeSet<Mat> = elements.into_iter().collect();
        let mut cosets = Vec::new();
        while let Some(&seed) = remaining.iter().next() {
            let mut orbit = BTreeSet::new();
            let mut frontier = vec![seed];
            orbit.insert(seed);
            while let Some(g) = frontier.pop() {
                for a in &a_reps {
                    for t in &t_reps {
                        let image = self.pgl_canonical(&self.mat_mul(&self.mat_mul(a, &g), t));
                        if orbit.insert(image) {
                            frontier.push(image);
                        }
                    }
                }
            }
            for m in &orbit {
                remaining.remove(m);
            }
            cosets.push(orbit.into_iter().collect());
        }
        cosets
    }
}

fn prime_power_split(q: u64) -> Option<(u64, usize)> {
    if q < 2 {
        return None;
    }
    let mut p = 2u64;
    while p * p <= q {
        if q % p == 0 {
            let mut m = q;
            let mut e = 0usize;
            while m % p == 0 {
                m /= p;
                e += 1;
            }
            return if m == 1 { Some((p, e)) } else { None };
        }
        p += 1;
    }
    Some((q, 1))
}

/// Brute-force census of the invariant over all of `PGL_2(F)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CensusRecord {
    pub q: u64,
    pub group_order: usize,
    pub double_cosets: usize,
    /// Cosets on which the invariant is undefined (vanishing trace).
    pub degenerate_cosets: usize,
    /// Individual group elements with vanishing trace denominator.
    pub degenerate_elements: usize,
    pub distinct_invariants: usize,
    pub trace_one_count: usize,
    /// Whether the invariant took a single value on every coset where it is
    /// defined. A `false` here is a finding, not an error.
    pub constant_on_cosets: bool,
}

pub fn orbit_census(q: u64) -> Result<CensusRecord> {
    orbit_census_capped(q, DEFAULT_CENSUS_Q_CAP)
}

pub fn orbit_census_capped(q: u64, cap: u64) -> Result<CensusRecord> {
    if q > cap {
        return Err(Error::UnsupportedQ {
            q,
            reason: format!("census is capped at q <= {cap}"),
        });
    }
    let model = QuadraticModel::new(q)?;
    let cosets = model.double_cosets();
    let group_order: usize = cosets.iter().map(|c| c.len()).sum();
    let mut distinct = BTreeSet::new();
    let mut degenerate_cosets = 0usize;
    let mut degenerate_elements = 0usize;
    let mut constant = true;
    for coset in &cosets {
        let mut values = BTreeMap::new();
        for g in coset {
            match model.quad_invariant(g) {
                Ok(xi) => {
                    *values.entry(xi).or_insert(0usize) += 1;
                }
                Err(Error::Degenerate) => degenerate_elements += 1,
                Err(e) => return Err(e),
            }
        }
        if values.is_empty() {
            degenerate_cosets += 1;
            continue;
        }
        if values.len() > 1 {
            constant = false;
        }
        distinct.extend(values.keys().copied());
    }
    Ok(CensusRecord {
        q,
        group_order,
        double_cosets: cosets.len(),
        degenerate_cosets,
        degenerate_elements,
        distinct_invariants: distinct.len(),
        trace_one_count: model.trace_one_elements().len(),
        constant_on_cosets: constant,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn model_basics_q3() {
        let m = QuadraticModel::new(3).unwrap();
        assert_eq!(m.subfield().len(), 3);
        assert_eq!(m.field().size(), 9);
        // conjugation is an involution fixing exactly F
        for z in m.field().elements() {
            assert_eq!(m.conj(m.conj(z)), z);
            assert_eq!(m.is_in_subfield(z), m.conj(z) == z);
            assert!(m.is_in_subfield(m.trace(z)));
            assert!(m.is_in_subfield(m.norm(z)));
        }
        assert_eq!(m.trace_one_elements().len(), 3);
    }

    #[test]
    fn rejects_even_and_composite_q() {
        assert!(matches!(QuadraticModel::new(4), Err(Error::UnsupportedQ { .. })));
        assert!(matches!(QuadraticModel::new(6), Err(Error::UnsupportedQ { .. })));
        assert!(QuadraticModel::new(9).is_ok());
    }

    #[test]
    fn pgl_order() {
        // |PGL_2(F_q)| = q^3 - q
        for q in [3u64, 5] {
            let m = QuadraticModel::new(q).unwrap();
            assert_eq!(m.pgl_elements().len() as u64, q * q * q - q);
        }
    }

    #[test]
    fn torus_sizes() {
        let m = QuadraticModel::new(5).unwrap();
        assert_eq!(m.split_torus().len(), 4); // q - 1
        assert_eq!(m.nonsplit_torus().len(), 6); // q + 1
    }

    #[test]
    fn invariant_on_identity_like_class() {
        // alpha = beta = 1: xi = 1 / Tr(1) = inverse of 2 in F
        let m = QuadraticModel::new(3).unwrap();
        let xi = m.quad_invariant(&[1, 0, 0, 1]).unwrap();
        assert_eq!(xi, 2); // 1/2 = 2 in F_3
        assert_eq!(m.trace(xi), 1);
    }

    #[test]
    fn degenerate_input_alpha_theta_beta_one() {
        // alpha = theta (pure imaginary, so Tr(theta) = 0), beta = 1:
        // g takes its top row from a1(theta) and bottom row from a1(1)
        let m = QuadraticModel::new(3).unwrap();
        let a1t = m.alpha1(m.theta());
        let g = [a1t[0], a1t[1], 0, 1];
        let (alpha, beta) = m.decompose(&g);
        assert_eq!(alpha, m.theta());
        assert_eq!(beta, 1);
        assert!(matches!(m.quad_invariant(&g), Err(Error::Degenerate)));
    }

    #[test]
    fn trace_relation_between_invariant_and_determinant() {
        // In this model Tr(alpha conj(beta)) = 2 det(g): degeneracy on
        // invertible classes cannot occur. Verify the identity exhaustively.
        let m = QuadraticModel::new(5).unwrap();
        for g in m.pgl_elements() {
            let (alpha, beta) = m.decompose(&g);
            let w = m.field().mul(alpha, m.conj(beta));
            let two_det = m.field().add(m.mat_det(&g), m.mat_det(&g));
            assert_eq!(m.trace(w), two_det);
        }
    }

    #[test]
    fn census_q3() {
        let census = orbit_census(3).unwrap();
        assert_eq!(census.group_order, 24);
        assert_eq!(census.trace_one_count, 3);
        assert_eq!(census.double_cosets, census.distinct_invariants);
        assert!(census.constant_on_cosets);
        assert_eq!(census.degenerate_cosets, 0);
        assert_eq!(census.degenerate_elements, 0);
    }

    #[test]
    fn census_respects_cap() {
        assert!(matches!(
            orbit_census(13),
            Err(Error::UnsupportedQ { .. })
        ));
        assert!(orbit_census_capped(13, 13).is_ok());
    }
}
