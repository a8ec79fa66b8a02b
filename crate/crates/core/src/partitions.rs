//! Partitions and cycle types of symmetric groups.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::Int;

/// A partition `[p_1, ..., p_k]` with weakly decreasing positive parts.
///
/// The empty partition is the unique partition of 0. `[n, 0]` is not a valid
/// parts list; the two-row label with `n - k = 0` is just `[n]`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.iter().any(|&p| p == 0) {
            return Err(Error::InvalidParameter("partition parts must be >= 1".into()));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidParameter(
                "partition parts must be weakly decreasing".into(),
            ));
        }
        Ok(Partition { parts })
    }

    /// Two-row label `[k, n-k]`, with `[n]` when `k = n`.
    pub fn two_row(n: usize, k: usize) -> Result<Self> {
        if 2 * k < n || k > n {
            return Err(Error::TwoRowOutOfRange { n, k });
        }
        if k == n {
            if n == 0 {
                return Ok(Partition { parts: vec![] });
            }
            return Ok(Partition { parts: vec![n] });
        }
        Ok(Partition {
            parts: vec![k, n - k],
        })
    }

    /// When this is `[k, n-k]` (at most two rows), return `k`.
    pub fn two_row_k(&self) -> Option<usize> {
        match self.parts.len() {
            0 | 1 => Some(self.n()),
            2 => Some(self.parts[0]),
            _ => None,
        }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// The integer being partitioned.
    pub fn n(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }
}

/// Serializes as comma-joined parts, e.g. `3,1`. Empty partition: `-`.
impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return write!(f, "-");
        }
        let strs: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "{}", strs.join(","))
    }
}

impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || s == "-" {
            return Partition::new(vec![]);
        }
        let parts: std::result::Result<Vec<usize>, _> =
            s.split(',').map(|p| p.trim().parse::<usize>()).collect();
        match parts {
            Ok(parts) => Partition::new(parts),
            Err(e) => Err(Error::InvalidParameter(format!("bad partition '{s}': {e}"))),
        }
    }
}

/// A partition read as the cycle lengths of a permutation, i.e. a conjugacy
/// class of `S_n`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CycleType(pub Partition);

impl CycleType {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        Ok(CycleType(Partition::new(parts)?))
    }

    pub fn identity(n: usize) -> Self {
        CycleType(Partition { parts: vec![1; n] })
    }

    pub fn parts(&self) -> &[usize] {
        self.0.parts()
    }

    pub fn n(&self) -> usize {
        self.0.n()
    }

    pub fn num_cycles(&self) -> usize {
        self.0.len()
    }
}

impl fmt::Display for CycleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// All partitions of `n`, in descending lexicographic order: `[n]` first,
/// `[1,...,1]` last. This ordering is the canonical iteration order
/// everywhere in the crate.
pub fn partitions(n: usize) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    descend(n, n, &mut current, &mut out);
    out
}

fn descend(remaining: usize, max_part: usize, current: &mut Vec<usize>, out: &mut Vec<Partition>) {
    if remaining == 0 {
        out.push(Partition {
            parts: current.clone(),
        });
        return;
    }
    let top = max_part.min(remaining);
    for part in (1..=top).rev() {
        current.push(part);
        descend(remaining - part, part, current, out);
        current.pop();
    }
}

/// All cycle types of `S_n` in canonical order.
pub fn cycle_types(n: usize) -> Vec<CycleType> {
    partitions(n).into_iter().map(CycleType).collect()
}

pub fn factorial(n: usize) -> Int {
    let mut acc = BigInt::one();
    for i in 2..=n {
        acc *= BigInt::from(i);
    }
    acc
}

/// The centralizer order `z_ct = prod(l_i) * prod(mult_l!)` of a cycle type.
pub fn centralizer_order(ct: &CycleType) -> Int {
    let mut z = BigInt::one();
    let parts = ct.parts();
    let mut i = 0;
    while i < parts.len() {
        let l = parts[i];
        let mut mult = 0usize;
        while i < parts.len() && parts[i] == l {
            mult += 1;
            i += 1;
        }
        for _ in 0..mult {
            z *= BigInt::from(l);
        }
        z *= factorial(mult);
    }
    z
}

/// The size `n!/z_ct` of the conjugacy class labeled by `ct`.
pub fn class_size(ct: &CycleType) -> Int {
    factorial(ct.n()) / centralizer_order(ct)
}
