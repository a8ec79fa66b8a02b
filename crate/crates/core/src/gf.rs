//! Table-based arithmetic for small finite fields.
//!
//! Elements of `F_{p^k}` are indices `0..p^k`, read base-`p` as coefficient
//! vectors against a fixed monic irreducible modulus (the lexicographically
//! first one, so construction is deterministic). Everything is precomputed
//! into lookup tables; the fields used here never exceed a few hundred
//! elements.

use crate::error::{Error, Result};

#[derive(Debug, Clone)]
pub struct SmallField {
    p: u64,
    k: usize,
    size: usize,
    modulus: Vec<u64>,
    add_t: Vec<u16>,
    mul_t: Vec<u16>,
    neg_t: Vec<u16>,
    inv_t: Vec<u16>,
}

impl SmallField {
    pub fn new(p: u64, k: usize) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::UnsupportedQ {
                q: p,
                reason: "characteristic must be prime".into(),
            });
        }
        let size_u64 = p.checked_pow(k as u32).ok_or_else(|| Error::UnsupportedQ {
            q: p,
            reason: "field too large".into(),
        })?;
        if size_u64 > u16::MAX as u64 {
            return Err(Error::UnsupportedQ {
                q: p,
                reason: format!("field of size {size_u64} exceeds the table limit"),
            });
        }
        let size = size_u64 as usize;
        let modulus = find_irreducible(p, k);
        let mut add_t = vec![0u16; size * size];
        let mut mul_t = vec![0u16; size * size];
        let mut neg_t = vec![0u16; size];
        for a in 0..size {
            let da = digits(a as u64, p, k);
            neg_t[a] = index(&da.iter().map(|&c| (p - c) % p).collect::<Vec<_>>(), p) as u16;
            for b in 0..size {
                let db = digits(b as u64, p, k);
                let sum: Vec<u64> = da.iter().zip(&db).map(|(&x, &y)| (x + y) % p).collect();
                add_t[a * size + b] = index(&sum, p) as u16;
                let prod = poly_mul_mod(&da, &db, &modulus, p);
                mul_t[a * size + b] = index(&prod, p) as u16;
            }
        }
        let mut inv_t = vec![0u16; size];
        for a in 1..size {
            let b = (1..size)
                .find(|&b| mul_t[a * size + b] == 1)
                .expect("every nonzero element of a field is invertible");
            inv_t[a] = b as u16;
        }
        Ok(SmallField {
            p,
            k,
            size,
            modulus,
            add_t,
            mul_t,
            neg_t,
            inv_t,
        })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.k
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn add(&self, a: u16, b: u16) -> u16 {
        self.add_t[a as usize * self.size + b as usize]
    }

    pub fn sub(&self, a: u16, b: u16) -> u16 {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: u16, b: u16) -> u16 {
        self.mul_t[a as usize * self.size + b as usize]
    }

    pub fn neg(&self, a: u16) -> u16 {
        self.neg_t[a as usize]
    }

    /// Multiplicative inverse; zero has none.
    pub fn inv(&self, a: u16) -> Option<u16> {
        if a == 0 {
            None
        } else {
            Some(self.inv_t[a as usize])
        }
    }

    pub fn pow(&self, a: u16, e: u64) -> u16 {
        let mut acc = 1u16;
        let mut base = a;
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn elements(&self) -> impl Iterator<Item = u16> {
        0..self.size as u16
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn digits(mut v: u64, p: u64, k: usize) -> Vec<u64> {
    let mut out = vec![0u64; k];
    for slot in out.iter_mut() {
        *slot = v % p;
        v /= p;
    }
    out
}

fn index(coeffs: &[u64], p: u64) -> u64 {
    coeffs.iter().rev().fold(0u64, |acc, &c| acc * p + c)
}

/// Lexicographically first monic irreducible polynomial of degree `k`,
/// as ascending coefficients of length `k + 1`.
fn find_irreducible(p: u64, k: usize) -> Vec<u64> {
    if k == 1 {
        return vec![0, 1]; // x
    }
    let total = p.pow(k as u32);
    for v in 0..total {
        let mut coeffs = digits(v, p, k);
        coeffs.push(1);
        if is_irreducible(&coeffs, p) {
            return coeffs;
        }
    }
    unreachable!("irreducible polynomials exist in every degree");
}

fn is_irreducible(poly: &[u64], p: u64) -> bool {
    let deg = poly.len() - 1;
    for d in 1..=deg / 2 {
        let total = p.pow(d as u32);
        for v in 0..total {
            let mut div = digits(v, p, d);
            div.push(1);
            if poly_rem(poly, &div, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

fn poly_rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut rem: Vec<u64> = a.to_vec();
    let db = b.len() - 1;
    debug_assert_eq!(b[db], 1, "divisor must be monic");
    while rem.len() > db {
        let lead = *rem.last().unwrap() % p;
        let shift = rem.len() - 1 - db;
        if lead != 0 {
            for (i, &c) in b.iter().enumerate() {
                let idx = shift + i;
                rem[idx] = (rem[idx] + p * p - (lead * c) % p) % p;
            }
        }
        rem.pop();
    }
    rem
}

fn poly_mul_mod(a: &[u64], b: &[u64], modulus: &[u64], p: u64) -> Vec<u64> {
    let k = modulus.len() - 1;
    let mut prod = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    let mut rem = poly_rem(&prod, modulus, p);
    rem.resize(k, 0);
    rem
}
