//! Orbit-by-orbit comparison of the two trace distributions.
//!
//! One side of the comparison is a Laurent polynomial in `q^s` assembled from
//! splitting counts of a divisor shape; its normalized derivatives are the
//! `J_r` values. The other side is a trace of the r-th power of the flip
//! operator composed with a Frobenius permutation, computed both by brute
//! operator arithmetic and through the isotypic block structure. The engine
//! asserts exact equality row by row and treats any discrepancy as its
//! primary alarm.

use std::fmt::Write as _;

use num_traits::Zero;

use crate::curve::{shape_cycle_type, splitting_count, DivisorShape};
use crate::error::{Error, Result};
use crate::laurent::Laurent;
use crate::tensor::{brute_trace_capped, pow_int, structured_trace};
use crate::{int_to_rat, QsLaurent, Rat, DEFAULT_TENSOR_CAP};

/// Which route computes the operator-side value `I_r`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IrPath {
    /// Explicit `Tr(H^r . P_sigma)` on the `2^{2d}`-dimensional tensor space.
    Brute,
    /// Character formula over the isotypic blocks; scales to any degree.
    Structured,
}

/// The orbital integral attached to a shape of degree `2d`:
/// `sum_{i=0}^{2d} N_i(shape) * q^{2(i-d)s}`.
pub fn geometric_orbital(shape: &DivisorShape, d: usize) -> Result<QsLaurent> {
    let total = shape.total_degree();
    if total != 2 * d {
        return Err(Error::DegreeMismatch {
            shape_degree: total,
            expected: 2 * d,
        });
    }
    let poly = shape.splitting_polynomial();
    Ok(Laurent::from_pairs(poly.into_iter().enumerate().map(
        |(i, c)| (2 * (i as i64 - d as i64), int_to_rat(c)),
    )))
}

/// `J_r` of a shape: the normalized r-th derivative of the orbital at
/// `s = 0`. Both available routes (the derivative functional and the direct
/// `2^r sum_i (i-d)^r N_i` formula) are computed and must agree.
pub fn jr_value(shape: &DivisorShape, d: usize, r: usize) -> Result<Rat> {
    let orbital = geometric_orbital(shape, d)?;
    let via_derivative = orbital.normalized_derivative(r);
    let mut direct = Rat::zero();
    for i in 0..=2 * d {
        let n_i = splitting_count(shape, i)?;
        direct += int_to_rat(pow_int(2 * (i as i64 - d as i64), r) * n_i);
    }
    assert_eq!(
        via_derivative, direct,
        "derivative functional disagrees with the direct J_r formula"
    );
    Ok(via_derivative)
}

/// `I_r` of a multiplicity-free shape, through the chosen trace path.
pub fn ir_value(shape: &DivisorShape, r: usize, path: IrPath) -> Result<Rat> {
    ir_value_capped(shape, r, path, DEFAULT_TENSOR_CAP)
}

pub fn ir_value_capped(shape: &DivisorShape, r: usize, path: IrPath, cap: usize) -> Result<Rat> {
    let ct = shape_cycle_type(shape)?;
    let n = shape.total_degree();
    let value = match path {
        IrPath::Brute => brute_trace_capped(n, r, &ct, cap)?,
        IrPath::Structured => structured_trace(n, r, &ct)?,
    };
    Ok(int_to_rat(value))
}

/// One `r` row of an orbit report.
#[derive(Debug, Clone, PartialEq)]
pub struct OrbitRow {
    pub r: usize,
    pub j_r: Rat,
    pub i_r_brute: Option<Rat>,
    pub i_r_structured: Option<Rat>,
    pub equal: bool,
}

/// The full per-orbit comparison record.
#[derive(Debug, Clone, PartialEq)]
pub struct OrbitReport {
    pub shape: DivisorShape,
    pub d: usize,
    pub orbital: QsLaurent,
    pub rows: Vec<OrbitRow>,
}

pub const ORBIT_TSV_HEADER: &str = "shape\td\tr\tj_r\ti_r_brute\ti_r_structured\tequal";

impl OrbitReport {
    /// TSV rows matching [`ORBIT_TSV_HEADER`]; absent values print as `-`.
    pub fn tsv_rows(&self) -> Vec<String> {
        self.rows
            .iter()
            .map(|row| {
                format!(
                    "{}\t{}\t{}\t{}\t{}\t{}\t{}",
                    self.shape,
                    self.d,
                    row.r,
                    row.j_r,
                    opt(&row.i_r_brute),
                    opt(&row.i_r_structured),
                    row.equal
                )
            })
            .collect()
    }

    /// Structured-text rendering of the whole report.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "orbit_report:").unwrap();
        writeln!(out, "  shape: {}", self.shape).unwrap();
        writeln!(out, "  d: {}", self.d).unwrap();
        writeln!(out, "  orbital: {}", self.orbital).unwrap();
        for row in &self.rows {
            writeln!(
                out,
                "  row: r={} j_r={} i_r_brute={} i_r_structured={} equal={}",
                row.r,
                row.j_r,
                opt(&row.i_r_brute),
                opt(&row.i_r_structured),
                row.equal
            )
            .unwrap();
        }
        out
    }

    pub fn all_equal(&self) -> bool {
        self.rows.iter().all(|r| r.equal)
    }
}

fn opt(v: &Option<Rat>) -> String {
    match v {
        Some(x) => x.to_string(),
        None => "-".to_string(),
    }
}

/// Compare both distributions on one orbit for `r = 0..=r_max`.
///
/// The operator-side columns are present only where they are defined: both
/// require a multiplicity-free shape, and the brute column additionally
/// respects the tensor cap. Any inequality among present values is an
/// [`Error::IdentityViolation`] carrying the full report.
pub fn compare_orbit(shape: &DivisorShape, d: usize, r_max: usize) -> Result<OrbitReport> {
    compare_orbit_capped(shape, d, r_max, DEFAULT_TENSOR_CAP)
}

pub fn compare_orbit_capped(
    shape: &DivisorShape,
    d: usize,
    r_max: usize,
    cap: usize,
) -> Result<OrbitReport> {
    let orbital = geometric_orbital(shape, d)?;
    let free = shape.is_multiplicity_free();
    let use_brute = free && 2 * d <= cap;
    let mut rows = Vec::with_capacity(r_max + 1);
    let mut first_violation = None;
    for r in 0..=r_max {
        let j_r = jr_value(shape, d, r)?;
        let i_r_structured = if free {
            Some(ir_value_capped(shape, r, IrPath::Structured, cap)?)
        } else {
            None
        };
        let i_r_brute = if use_brute {
            Some(ir_value_capped(shape, r, IrPath::Brute, cap)?)
        } else {
            None
        };
        let equal = i_r_structured.iter().all(|v| *v == j_r)
            && i_r_brute.iter().all(|v| *v == j_r);
        if !equal && first_violation.is_none() {
            first_violation = Some(r);
        }
        rows.push(OrbitRow {
            r,
            j_r,
            i_r_brute,
            i_r_structured,
            equal,
        });
    }
    let report = OrbitReport {
        shape: shape.clone(),
        d,
        orbital,
        rows,
    };
    if let Some(r) = first_violation {
        return Err(Error::IdentityViolation {
            shape: shape.to_string(),
            r,
            report: Box::new(report),
        });
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::{enumerate_shapes, ZetaData};
    use crate::{rat_to_int, Int};
    use num_bigint::BigInt;
    use num_traits::One;

    fn shape(entries: &[(usize, usize)]) -> DivisorShape {
        DivisorShape::new(entries.to_vec()).unwrap()
    }

    fn rat(v: i64) -> Rat {
        Rat::from_integer(v.into())
    }

    #[test]
    fn orbital_of_four_rational_points() {
        let s = shape(&[(1, 1), (1, 1), (1, 1), (1, 1)]);
        let orbital = geometric_orbital(&s, 2).unwrap();
        assert_eq!(orbital.to_string(), "-4:1+-2:4+0:6+2:4+4:1");
        assert!(orbital.is_palindromic());
    }

    #[test]
    fn orbital_of_two_inert_points() {
        let s = shape(&[(2, 1), (2, 1)]);
        let orbital = geometric_orbital(&s, 2).unwrap();
        assert_eq!(orbital.to_string(), "-4:1+0:2+4:1");
    }

    #[test]
    fn orbital_of_empty_shape() {
        let orbital = geometric_orbital(&DivisorShape::empty(), 0).unwrap();
        assert_eq!(orbital.to_string(), "0:1");
        assert!(geometric_orbital(&DivisorShape::empty(), 1).is_err());
    }

    #[test]
    fn jr_examples() {
        let s = shape(&[(1, 1), (1, 1), (1, 1), (1, 1)]);
        assert_eq!(jr_value(&s, 2, 2).unwrap(), rat(64));
        assert_eq!(jr_value(&s, 2, 0).unwrap(), rat(16));
        // r = 0 counts all splittings: prod (m + 1)
        let thick = shape(&[(1, 2), (2, 3)]);
        assert_eq!(jr_value(&thick, 4, 0).unwrap(), rat(12));
        // odd r vanishes on palindromic orbitals
        for r in [1usize, 3, 5] {
            assert_eq!(jr_value(&s, 2, r).unwrap(), rat(0));
            assert_eq!(jr_value(&thick, 4, r).unwrap(), rat(0));
        }
    }

    #[test]
    fn ir_examples() {
        let s = shape(&[(1, 1), (1, 1), (1, 1), (1, 1)]);
        assert_eq!(ir_value(&s, 2, IrPath::Brute).unwrap(), rat(64));
        assert_eq!(ir_value(&s, 2, IrPath::Structured).unwrap(), rat(64));
        let two_points = shape(&[(1, 1), (1, 1)]);
        assert_eq!(ir_value(&two_points, 0, IrPath::Brute).unwrap(), rat(4));
        let mixed = shape(&[(2, 1), (1, 1), (1, 1)]);
        assert_eq!(ir_value(&mixed, 2, IrPath::Brute).unwrap(), rat(48));
        assert_eq!(ir_value(&mixed, 2, IrPath::Structured).unwrap(), rat(48));
        assert_eq!(jr_value(&mixed, 2, 2).unwrap(), rat(48));
        let thick = shape(&[(1, 2)]);
        assert!(matches!(
            ir_value(&thick, 0, IrPath::Structured),
            Err(Error::MultiplicityUnsupported)
        ));
    }

    #[test]
    fn compare_orbit_on_split_shape() {
        let s = shape(&[(1, 1), (1, 1), (1, 1), (1, 1)]);
        let report = compare_orbit(&s, 2, 4).unwrap();
        assert!(report.all_equal());
        let row2 = &report.rows[2];
        assert_eq!(row2.j_r, rat(64));
        assert_eq!(row2.i_r_brute, Some(rat(64)));
        assert_eq!(row2.i_r_structured, Some(rat(64)));
    }

    #[test]
    fn compare_orbit_on_two_inert_points() {
        let s = shape(&[(2, 1), (2, 1)]);
        let report = compare_orbit(&s, 2, 2).unwrap();
        assert!(report.all_equal());
        assert_eq!(report.rows[0].j_r, rat(4));
        assert_eq!(report.rows[1].j_r, rat(0));
        assert_eq!(report.rows[2].j_r, rat(32));
        // multiplicity-free, so the operator side is present and agrees
        assert_eq!(report.rows[2].i_r_brute, Some(rat(32)));
        assert_eq!(report.rows[2].i_r_structured, Some(rat(32)));
    }

    #[test]
    fn compare_orbit_on_thick_shape_has_j_side_only() {
        // a double point: multiplicity 2, so no cycle-type model exists and
        // the operator-side columns are absent rather than failed
        let thick = shape(&[(1, 2)]);
        let report = compare_orbit(&thick, 1, 2).unwrap();
        assert!(report.all_equal());
        assert_eq!(report.rows[0].j_r, rat(3));
        for row in &report.rows {
            assert!(row.i_r_brute.is_none());
            assert!(row.i_r_structured.is_none());
        }
    }

    #[test]
    fn compare_orbit_on_empty_shape() {
        let report = compare_orbit(&DivisorShape::empty(), 0, 3).unwrap();
        assert!(report.all_equal());
        assert_eq!(report.rows[0].j_r, Rat::one());
        for row in &report.rows[1..] {
            assert_eq!(row.j_r, rat(0));
            assert_eq!(row.i_r_brute, Some(rat(0)));
        }
    }

    #[test]
    fn key_identity_over_all_shapes_of_small_degree() {
        // every multiplicity-free shape with a generous point supply
        let counts: Vec<Int> = vec![
            BigInt::from(6),
            BigInt::from(4),
            BigInt::from(3),
            BigInt::from(2),
            BigInt::from(2),
            BigInt::from(1),
        ];
        for d in 0..=3usize {
            for (s, _) in enumerate_shapes(&counts, 2 * d).unwrap() {
                let report = compare_orbit(&s, d, 5).unwrap();
                assert!(report.all_equal(), "shape {s}");
                if s.is_multiplicity_free() {
                    for row in &report.rows {
                        assert!(row.i_r_brute.is_some() && row.i_r_structured.is_some());
                        // odd-r vanishing on both sides
                        if row.r % 2 == 1 {
                            assert_eq!(row.j_r, rat(0));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn orbit_totals_factor_through_divisor_counts() {
        // summing N_i over all shapes of degree 2d, weighted by shape counts,
        // counts pairs of effective divisors of degrees (i, 2d - i)
        let z = ZetaData::new(3, vec![1.into(), 0.into(), 3.into()]).unwrap();
        for d in 0..=2usize {
            let counts = z.closed_point_counts((2 * d).max(1)).unwrap();
            let shapes = enumerate_shapes(&counts, 2 * d).unwrap();
            for i in 0..=2 * d {
                let mut total = BigInt::from(0);
                for (s, c) in &shapes {
                    total += c * splitting_count(s, i).unwrap();
                }
                let expected = z.effective_divisor_count(i)
                    * z.effective_divisor_count(2 * d - i);
                assert_eq!(total, expected, "d = {d}, i = {i}");
            }
            // hence the weighted orbital total is consistent in every r
            for r in 0..=4usize {
                let mut weighted = Rat::zero();
                for (s, c) in &shapes {
                    weighted += int_to_rat(c.clone()) * jr_value(s, d, r).unwrap();
                }
                let mut expected = Rat::zero();
                for i in 0..=2 * d {
                    let pair = z.effective_divisor_count(i)
                        * z.effective_divisor_count(2 * d - i);
                    expected += int_to_rat(pow_int(2 * (i as i64 - d as i64), r) * pair);
                }
                assert_eq!(weighted, expected, "d = {d}, r = {r}");
            }
        }
    }

    #[test]
    fn report_serialization() {
        let s = shape(&[(1, 1), (1, 1)]);
        let report = compare_orbit(&s, 1, 1).unwrap();
        let rows = report.tsv_rows();
        assert_eq!(rows.len(), 2);
        assert_eq!(rows[0], "(1,1)+(1,1)\t1\t0\t4\t4\t4\ttrue");
        let text = report.to_text();
        assert!(text.starts_with("orbit_report:\n  shape: (1,1)+(1,1)\n  d: 1\n"));
        assert!(text.contains("orbital: -2:1+0:2+2:1"));
    }

    #[test]
    fn identity_violation_error_carries_the_report() {
        let s = shape(&[(1, 1), (2, 1), (3, 1)]);
        let report = compare_orbit(&s, 3, 6).unwrap();
        assert!(report.all_equal());
        assert_eq!(rat_to_int(&report.rows[0].j_r), Int::from(8));
        // the violation variant renders with its location
        let err = Error::IdentityViolation {
            shape: s.to_string(),
            r: 2,
            report: Box::new(report),
        };
        let msg = err.to_string();
        assert!(msg.contains("(1,1)+(2,1)+(3,1)"));
        assert!(msg.contains("r = 2"));
    }
}
