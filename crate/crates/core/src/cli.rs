//! Batch command surface: parameter validation, deterministic table
//! emission, and the exit-status contract.
//!
//! Every command iterates its loop indices in canonical order and builds the
//! full output as a string, so identical invocations are byte-identical.
//! Violations of a checked identity are data (rows with `equal=false` /
//! `match=false`), counted in the outcome; invalid input is an error.

use std::fmt::Write as _;

use num_traits::Zero;

use crate::characters::subset_fix_polynomial;
use crate::curve::CurveConfig;
use crate::error::{Error, Result};
use crate::orbit::{compare_orbit_capped, OrbitReport};
use crate::partitions::cycle_types;
use crate::tensor::{
    isotypic_spectrum_capped, ladder_spectrum, pow_int, structured_trace, trace_with_cycle_type,
    yz_operator,
};
use crate::{int_to_rat, quad, Rat, DEFAULT_CENSUS_Q_CAP, DEFAULT_SHAPE_DEGREE_CAP, DEFAULT_TENSOR_CAP};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Tsv,
    Text,
}

#[derive(Debug, Clone)]
pub enum Command {
    VerifyIdentity {
        d_max: usize,
        r_max: usize,
    },
    CurveReport {
        config_text: String,
        /// Run a single degree...
        d: Option<usize>,
        /// ...or sweep over all degrees `0..=d_max`.
        d_max: Option<usize>,
        r_max: usize,
    },
    Spectrum {
        n: usize,
    },
    Census {
        q: u64,
    },
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub command: Command,
    pub format: OutputFormat,
    pub tensor_cap: usize,
    pub shape_degree_cap: usize,
    pub census_q_cap: u64,
}

impl RunConfig {
    pub fn new(command: Command) -> Self {
        RunConfig {
            command,
            format: OutputFormat::Tsv,
            tensor_cap: DEFAULT_TENSOR_CAP,
            shape_degree_cap: DEFAULT_SHAPE_DEGREE_CAP,
            census_q_cap: DEFAULT_CENSUS_Q_CAP,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunOutcome {
    pub output: String,
    pub violations: usize,
}

pub fn run(cfg: &RunConfig) -> Result<RunOutcome> {
    match &cfg.command {
        Command::VerifyIdentity { d_max, r_max } => {
            cmd_verify_identity(*d_max, *r_max, cfg.tensor_cap, cfg.format)
        }
        Command::CurveReport {
            config_text,
            d,
            d_max,
            r_max,
        } => cmd_curve_report(config_text, *d, *d_max, *r_max, cfg),
        Command::Spectrum { n } => cmd_spectrum(*n, cfg.tensor_cap, cfg.format),
        Command::Census { q } => cmd_census(*q, cfg.census_q_cap, cfg.format),
    }
}

/// Exhaustive check of the key identity: for each `d <= d_max`, every cycle
/// type of `S_{2d}`, and every `r <= r_max`, the permutation-side value
/// `2^r sum_i (i-d)^r psi_i` must equal both trace computations.
fn cmd_verify_identity(
    d_max: usize,
    r_max: usize,
    tensor_cap: usize,
    format: OutputFormat,
) -> Result<RunOutcome> {
    if 2 * d_max > tensor_cap {
        return Err(Error::TensorCapExceeded {
            n: 2 * d_max,
            cap: tensor_cap,
        });
    }
    let mut out = String::new();
    let mut violations = 0usize;
    match format {
        OutputFormat::Tsv => {
            writeln!(out, "d\tcycle_type\tr\tj_r\ti_r_brute\ti_r_structured\tequal").unwrap()
        }
        OutputFormat::Text => {
            writeln!(out, "verify_identity:").unwrap();
            writeln!(out, "  d_max: {d_max}").unwrap();
            writeln!(out, "  r_max: {r_max}").unwrap();
        }
    }
    for d in 1..=d_max {
        let n = 2 * d;
        let h = yz_operator(n);
        let mut powers = Vec::with_capacity(r_max + 1);
        powers.push(crate::Operator::identity(1 << n));
        for _ in 1..=r_max {
            let next = powers.last().unwrap().mul(&h);
            powers.push(next);
        }
        for ct in cycle_types(n) {
            let psi = subset_fix_polynomial(&ct);
            for (r, power) in powers.iter().enumerate() {
                let mut j_r = Rat::zero();
                for (i, count) in psi.iter().enumerate() {
                    j_r += int_to_rat(pow_int(2 * (i as i64 - d as i64), r) * count);
                }
                let brute = int_to_rat(trace_with_cycle_type(power, &ct)?);
                let structured = int_to_rat(structured_trace(n, r, &ct)?);
                let equal = j_r == brute && j_r == structured;
                if !equal {
                    violations += 1;
                }
                match format {
                    OutputFormat::Tsv => writeln!(
                        out,
                        "{d}\t{ct}\t{r}\t{j_r}\t{brute}\t{structured}\t{equal}"
                    )
                    .unwrap(),
                    OutputFormat::Text => writeln!(
                        out,
                        "  row: d={d} ct={ct} r={r} j_r={j_r} i_r_brute={brute} i_r_structured={structured} equal={equal}"
                    )
                    .unwrap(),
                }
            }
        }
    }
    if format == OutputFormat::Text {
        writeln!(out, "  violations: {violations}").unwrap();
    }
    Ok(RunOutcome { output: out, violations })
}

fn cmd_curve_report(
    config_text: &str,
    d: Option<usize>,
    d_max: Option<usize>,
    r_max: usize,
    cfg: &RunConfig,
) -> Result<RunOutcome> {
    let degrees: Vec<usize> = match (d, d_max) {
        (Some(d), None) => vec![d],
        (None, Some(dm)) => (0..=dm).collect(),
        _ => {
            return Err(Error::InvalidParameter(
                "curve-report needs exactly one of --d or --d-max".into(),
            ))
        }
    };
    let max_degree = 2 * degrees.iter().copied().max().unwrap_or(0);
    if max_degree > cfg.shape_degree_cap {
        return Err(Error::InvalidParameter(format!(
            "shape degree {} exceeds cap {}",
            max_degree, cfg.shape_degree_cap
        )));
    }
    let config = CurveConfig::parse(config_text)?;
    let cover = config.to_cover_with_bound(max_degree.max(crate::curve::DEFAULT_ZETA_BOUND))?;
    let mut out = String::new();
    let mut violations = 0usize;
    match cfg.format {
        OutputFormat::Tsv => writeln!(
            out,
            "shape\tcount\td\tr\tj_r\ti_r_brute\ti_r_structured\tequal"
        )
        .unwrap(),
        OutputFormat::Text => {
            writeln!(out, "curve_report:").unwrap();
            writeln!(out, "  q: {}", config.q).unwrap();
        }
    }
    for &deg_half in &degrees {
        let shapes = cover.shapes_of_degree(2 * deg_half)?;
        for (shape, count) in shapes {
            let report = match compare_orbit_capped(&shape, deg_half, r_max, cfg.tensor_cap) {
                Ok(report) => report,
                Err(Error::IdentityViolation { report, .. }) => {
                    violations += report.rows.iter().filter(|row| !row.equal).count();
                    *report
                }
                Err(e) => return Err(e),
            };
            emit_orbit_report(&mut out, &report, &count, cfg.format);
        }
    }
    if cfg.format == OutputFormat::Text {
        writeln!(out, "  violations: {violations}").unwrap();
    }
    Ok(RunOutcome { output: out, violations })
}

fn emit_orbit_report(
    out: &mut String,
    report: &OrbitReport,
    count: &crate::Int,
    format: OutputFormat,
) {
    match format {
        OutputFormat::Tsv => {
            for row in &report.rows {
                writeln!(
                    out,
                    "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
                    report.shape,
                    count,
                    report.d,
                    row.r,
                    row.j_r,
                    opt(&row.i_r_brute),
                    opt(&row.i_r_structured),
                    row.equal
                )
                .unwrap();
            }
        }
        OutputFormat::Text => {
            writeln!(out, "  shape: {}", report.shape).unwrap();
            writeln!(out, "    count: {count}").unwrap();
            writeln!(out, "    d: {}", report.d).unwrap();
            writeln!(out, "    orbital: {}", report.orbital).unwrap();
            for row in &report.rows {
                writeln!(
                    out,
                    "    row: r={} j_r={} i_r_brute={} i_r_structured={} equal={}",
                    row.r,
                    row.j_r,
                    opt(&row.i_r_brute),
                    opt(&row.i_r_structured),
                    row.equal
                )
                .unwrap();
            }
        }
    }
}

fn opt(v: &Option<Rat>) -> String {
    match v {
        Some(x) => x.to_string(),
        None => "-".to_string(),
    }
}

fn fmt_spectrum(spec: &[(i64, usize)]) -> String {
    if spec.is_empty() {
        return "-".to_string();
    }
    spec.iter()
        .map(|(ev, mult)| format!("{ev}:{mult}"))
        .collect::<Vec<_>>()
        .join("+")
}

/// One row per admissible `k`: the predicted ladder spectrum next to the one
/// recomputed by exact elimination.
fn cmd_spectrum(n: usize, tensor_cap: usize, format: OutputFormat) -> Result<RunOutcome> {
    if n > tensor_cap {
        return Err(Error::TensorCapExceeded { n, cap: tensor_cap });
    }
    if n == 0 {
        return Err(Error::InvalidParameter("spectrum needs n >= 1".into()));
    }
    let mut out = String::new();
    let mut violations = 0usize;
    match format {
        OutputFormat::Tsv => writeln!(out, "n\tk\tclaimed\tcomputed\tmatch").unwrap(),
        OutputFormat::Text => {
            writeln!(out, "spectrum:").unwrap();
            writeln!(out, "  n: {n}").unwrap();
        }
    }
    for k in n.div_ceil(2)..=n {
        let claimed = ladder_spectrum(n, k)?;
        let (computed_str, matches) = match isotypic_spectrum_capped(n, k, tensor_cap) {
            Ok(computed) => {
                let m = computed == claimed;
                (fmt_spectrum(&computed), m)
            }
            Err(Error::NonIntegralSpectrum(coeffs)) => {
                (format!("non-integral:{}", coeffs.join(",")), false)
            }
            Err(e) => return Err(e),
        };
        if !matches {
            violations += 1;
        }
        match format {
            OutputFormat::Tsv => writeln!(
                out,
                "{n}\t{k}\t{}\t{computed_str}\t{matches}",
                fmt_spectrum(&claimed)
            )
            .unwrap(),
            OutputFormat::Text => writeln!(
                out,
                "  row: k={k} claimed={} computed={computed_str} match={matches}",
                fmt_spectrum(&claimed)
            )
            .unwrap(),
        }
    }
    if format == OutputFormat::Text {
        writeln!(out, "  violations: {violations}").unwrap();
    }
    Ok(RunOutcome { output: out, violations })
}

fn cmd_census(q: u64, census_cap: u64, format: OutputFormat) -> Result<RunOutcome> {
    let census = quad::orbit_census_capped(q, census_cap)?;
    let mut out = String::new();
    let fields: [(&str, String); 8] = [
        ("q", census.q.to_string()),
        ("group_order", census.group_order.to_string()),
        ("double_cosets", census.double_cosets.to_string()),
        ("degenerate_cosets", census.degenerate_cosets.to_string()),
        ("degenerate_elements", census.degenerate_elements.to_string()),
        ("distinct_invariants", census.distinct_invariants.to_string()),
        ("trace_one_count", census.trace_one_count.to_string()),
        ("constant_on_cosets", census.constant_on_cosets.to_string()),
    ];
    match format {
        OutputFormat::Tsv => {
            writeln!(out, "field\tvalue").unwrap();
            for (k, v) in &fields {
                writeln!(out, "{k}\t{v}").unwrap();
            }
        }
        OutputFormat::Text => {
            writeln!(out, "census:").unwrap();
            for (k, v) in &fields {
                writeln!(out, "  {k}: {v}").unwrap();
            }
        }
    }
    // the bijectivity claim: one invariant value per double coset
    let consistent = census.constant_on_cosets
        && census.double_cosets == census.distinct_invariants
        && census.degenerate_cosets == 0;
    Ok(RunOutcome {
        output: out,
        violations: usize::from(!consistent),
    })
}
