//! Brute-force point counting over extension fields, the referee for the
//! cohomological pipeline.
//!
//! Everything here is deliberately self-contained: the field arithmetic,
//! irreducibility testing and inversion are written independently of the
//! fixed-point machinery, so an error in one side cannot hide in the other.
//! The count over a field with Q elements is 1 + sum over x of
//! (1 + chi(P(x))) with chi the quadratic character, one point at infinity
//! for the odd-degree model.

use rayon::prelude::*;

use crate::curve::CurveSpec;
use crate::error::{Error, Result};
use crate::zeta::counts_from_numerator;

/// Enumeration ceiling: fields larger than this are refused.
pub const DEFAULT_BUDGET: u128 = 1 << 24;

/// `F_p[u]/(modulus)`, the field the enumeration runs in. Elements are dense
/// coefficient vectors of length deg(modulus), lowest first.
#[derive(Clone, Debug)]
pub struct CountingField {
    p: u64,
    modulus: Vec<u64>,
}

impl CountingField {
    /// Field of size p^degree with the first irreducible modulus found by
    /// an increasing scan.
    pub fn new(p: u64, degree: usize) -> Self {
        Self::with_modulus(p, find_irreducible(p, degree, 0))
    }

    /// Field with a caller-chosen monic irreducible modulus.
    pub fn with_modulus(p: u64, modulus: Vec<u64>) -> Self {
        assert!(p >= 3 && p % 2 == 1, "odd characteristic only");
        assert_eq!(*modulus.last().unwrap(), 1, "modulus must be monic");
        assert!(poly_is_irreducible(&modulus, p), "modulus must be irreducible");
        CountingField { p, modulus }
    }

    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    pub fn size(&self) -> u128 {
        (self.p as u128).pow(self.degree() as u32)
    }

    pub fn zero(&self) -> Vec<u64> {
        vec![0; self.degree()]
    }

    pub fn one(&self) -> Vec<u64> {
        let mut e = self.zero();
        e[0] = 1;
        e
    }

    /// The i-th element in enumeration order: base-p digits of i.
    pub fn element(&self, index: u128) -> Vec<u64> {
        let mut e = self.zero();
        let mut rest = index;
        for slot in e.iter_mut() {
            *slot = (rest % self.p as u128) as u64;
            rest /= self.p as u128;
        }
        debug_assert_eq!(rest, 0);
        e
    }

    pub fn add(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        a.iter().zip(b).map(|(&x, &y)| (x + y) % self.p).collect()
    }

    pub fn mul(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let d = self.degree();
        let p = self.p;
        let mut prod = vec![0u64; 2 * d - 1];
        for i in 0..d {
            if a[i] == 0 {
                continue;
            }
            for j in 0..d {
                prod[i + j] = (prod[i + j] + a[i] * b[j] % p) % p;
            }
        }
        // fold with the monic modulus
        for i in (d..prod.len()).rev() {
            let top = prod[i];
            if top != 0 {
                prod[i] = 0;
                for j in 0..d {
                    let t = top * self.modulus[j] % p;
                    prod[i - d + j] = (prod[i - d + j] + p - t) % p;
                }
            }
        }
        prod.truncate(d);
        prod
    }

    pub fn pow(&self, a: &[u64], mut e: u128) -> Vec<u64> {
        let mut base = a.to_vec();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    pub fn is_zero(&self, a: &[u64]) -> bool {
        a.iter().all(|&x| x == 0)
    }
}

/// 0 for zero, +1 for nonzero squares, -1 otherwise, by evaluating
/// a^((Q-1)/2).
pub fn quadratic_character(field: &CountingField, a: &[u64]) -> i8 {
    if field.is_zero(a) {
        return 0;
    }
    let r = field.pow(a, (field.size() - 1) / 2);
    if r == field.one() {
        1
    } else {
        -1
    }
}

/// Embedding of `F_q = F_p[t]/(fq_modulus)` into the counting field, through
/// an exhaustively located root of the defining polynomial.
pub struct Embedding<'a> {
    field: &'a CountingField,
    root_powers: Vec<Vec<u64>>,
}

impl<'a> Embedding<'a> {
    pub fn new(field: &'a CountingField, fq_modulus: &[u64]) -> Self {
        let n = fq_modulus.len() - 1;
        let root = if n == 1 {
            // t - c splits everywhere; the root is -c
            let mut r = field.zero();
            r[0] = (field.p - fq_modulus[0] % field.p) % field.p;
            r
        } else {
            let mut found = None;
            for idx in 0..field.size() {
                let cand = field.element(idx);
                if field.is_zero(&eval_mod_p(field, fq_modulus, &cand)) {
                    found = Some(cand);
                    break;
                }
            }
            found.expect("the subfield polynomial must split in the extension")
        };
        let mut root_powers = Vec::with_capacity(n);
        let mut acc = field.one();
        for _ in 0..n {
            root_powers.push(acc.clone());
            acc = field.mul(&acc, &root);
        }
        Embedding { field, root_powers }
    }

    /// Coordinates over F_p to an element of the counting field.
    pub fn embed(&self, coords: &[i64]) -> Vec<u64> {
        let p = self.field.p;
        let mut out = self.field.zero();
        for (i, &c) in coords.iter().enumerate() {
            let c = (c as i128).rem_euclid(p as i128) as u64;
            if c != 0 {
                let mut scaled = self.root_powers[i].clone();
                for slot in scaled.iter_mut() {
                    *slot = *slot * c % p;
                }
                out = self.field.add(&out, &scaled);
            }
        }
        out
    }
}

fn eval_mod_p(field: &CountingField, poly: &[u64], x: &[u64]) -> Vec<u64> {
    let mut acc = field.zero();
    for &c in poly.iter().rev() {
        acc = field.mul(&acc, x);
        if c % field.p != 0 {
            acc[0] = (acc[0] + c % field.p) % field.p;
        }
    }
    acc
}

/// #X(F_(q^m)) for the smooth projective model, by enumeration. The
/// fq_modulus fixes the representation of F_q the curve coefficients refer
/// to (reduced mod p, n+1 entries).
pub fn naive_count(spec: &CurveSpec, fq_modulus: &[u64], m: u32, budget: u128) -> Result<u128> {
    // refuse oversized fields before scanning for a modulus
    let mut size: u128 = 1;
    for _ in 0..spec.n * m as usize {
        size = size.saturating_mul(spec.p as u128);
    }
    if size > budget {
        return Err(Error::BudgetExceeded { needed: size, budget });
    }
    naive_count_in(&CountingField::new(spec.p, spec.n * m as usize), spec, fq_modulus, budget)
}

/// Same count in a caller-supplied field of degree n*m, for checking that
/// the answer does not depend on the modulus.
pub fn naive_count_in(
    field: &CountingField,
    spec: &CurveSpec,
    fq_modulus: &[u64],
    budget: u128,
) -> Result<u128> {
    assert_eq!(field.p, spec.p);
    let size = field.size();
    if size > budget {
        return Err(Error::BudgetExceeded { needed: size, budget });
    }
    let embedding = Embedding::new(field, fq_modulus);
    let coeffs: Vec<Vec<u64>> = spec.coeffs.iter().map(|c| embedding.embed(c)).collect();

    let eval = |x: &[u64]| -> Vec<u64> {
        let mut acc = field.zero();
        for c in coeffs.iter().rev() {
            acc = field.mul(&acc, x);
            acc = field.add(&acc, c);
        }
        acc
    };
    let count_range = |range: std::ops::Range<u128>| -> u128 {
        let mut affine = 0u128;
        for idx in range {
            let x = field.element(idx);
            let chi = quadratic_character(field, &eval(&x));
            affine += (1 + chi as i64) as u128;
        }
        affine
    };
    let affine: u128 = if size >= (1 << 16) {
        let workers = rayon::current_num_threads().max(1) as u128;
        let chunk = size.div_ceil(workers * 8);
        let ranges: Vec<std::ops::Range<u128>> = (0..size)
            .step_by(chunk as usize)
            .map(|lo| lo..(lo + chunk).min(size))
            .collect();
        ranges.into_par_iter().map(count_range).sum()
    } else {
        count_range(0..size)
    };
    Ok(affine + 1)
}

/// Per-extension comparison of the numerator-derived counts against the
/// enumeration. Disagreement and budget refusals are reported, not thrown.
#[derive(Clone, Debug)]
pub struct VerifyEntry {
    pub extension: u32,
    pub from_numerator: i128,
    pub oracle: Option<u128>,
    pub agree: Option<bool>,
}

#[derive(Clone, Debug, Default)]
pub struct VerifyReport {
    pub entries: Vec<VerifyEntry>,
}

impl VerifyReport {
    pub fn all_checked_agree(&self) -> bool {
        self.entries.iter().all(|e| e.agree != Some(false))
    }

    pub fn any_budget_exceeded(&self) -> bool {
        self.entries.iter().any(|e| e.oracle.is_none())
    }
}

pub fn verify_counts(
    spec: &CurveSpec,
    fq_modulus: &[u64],
    numerator: &[i128],
    mmax: u32,
    budget: u128,
) -> VerifyReport {
    let q = (spec.p as u128).pow(spec.n as u32);
    let mut report = VerifyReport::default();
    for m in 1..=mmax {
        let expected = counts_from_numerator(numerator, q, m);
        let oracle = naive_count(spec, fq_modulus, m, budget).ok();
        let agree = oracle.map(|o| o as i128 == expected);
        report.entries.push(VerifyEntry { extension: m, from_numerator: expected, oracle, agree });
    }
    report
}

// --- self-contained F_p[x] helpers --------------------------------------

fn poly_mul_mod(a: &[u64], b: &[u64], modulus: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let d = modulus.len() - 1;
    let mut prod = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y % p) % p;
        }
    }
    for i in (d..prod.len()).rev() {
        let top = prod[i];
        if top != 0 {
            prod[i] = 0;
            for j in 0..d {
                let t = top * modulus[j] % p;
                prod[i - d + j] = (prod[i - d + j] + p - t) % p;
            }
        }
    }
    prod.truncate(d);
    while prod.last() == Some(&0) {
        prod.pop();
    }
    prod
}

fn poly_pow_p(mut base: Vec<u64>, times: usize, modulus: &[u64], p: u64) -> Vec<u64> {
    // base^(p^times) by repeated p-th powers
    for _ in 0..times {
        let mut acc = vec![1u64];
        let mut sq = base.clone();
        let mut e = p;
        while e > 0 {
            if e & 1 == 1 {
                acc = poly_mul_mod(&acc, &sq, modulus, p);
            }
            e >>= 1;
            if e > 0 {
                sq = poly_mul_mod(&sq, &sq, modulus, p);
            }
        }
        base = acc;
    }
    base
}

fn poly_gcd_is_const(a: &[u64], b: &[u64], p: u64) -> bool {
    let inv = |x: u64| -> u64 {
        // Fermat inversion, independent of the Euclid used elsewhere
        let mut acc = 1u64;
        let mut base = x % p;
        let mut e = p - 2;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % p;
            }
            e >>= 1;
            base = base * base % p;
        }
        acc
    };
    let mut f = a.to_vec();
    let mut g = b.to_vec();
    let trim = |v: &mut Vec<u64>| {
        while v.last() == Some(&0) {
            v.pop();
        }
    };
    trim(&mut f);
    trim(&mut g);
    while !g.is_empty() {
        let li = inv(*g.last().unwrap());
        let mut r = f.clone();
        while r.len() >= g.len() && !r.is_empty() {
            let shift = r.len() - g.len();
            let c = *r.last().unwrap() * li % p;
            for (j, &y) in g.iter().enumerate() {
                r[shift + j] = (r[shift + j] + p - c * y % p) % p;
            }
            trim(&mut r);
        }
        f = g;
        g = r;
        trim(&mut g);
    }
    f.len() == 1
}

fn poly_is_irreducible(f: &[u64], p: u64) -> bool {
    let d = f.len() - 1;
    if d == 0 {
        return false;
    }
    if d == 1 {
        return true;
    }
    let x = vec![0u64, 1];
    let full = poly_pow_p(x.clone(), d, f, p);
    // x^(p^d) must equal x
    let mut diff = full;
    diff.resize(2, 0);
    diff[1] = (diff[1] + p - 1) % p;
    if diff.iter().any(|&c| c != 0) {
        return false;
    }
    let mut rest = d;
    let mut ell = 2;
    let mut prime_divisors = Vec::new();
    while ell * ell <= rest {
        if rest.is_multiple_of(ell) {
            prime_divisors.push(ell);
            while rest.is_multiple_of(ell) {
                rest /= ell;
            }
        }
        ell += 1;
    }
    if rest > 1 {
        prime_divisors.push(rest);
    }
    for ell in prime_divisors {
        let sub = poly_pow_p(x.clone(), d / ell, f, p);
        let mut diff = sub;
        diff.resize(diff.len().max(2), 0);
        diff[1] = (diff[1] + p - 1) % p;
        if !poly_gcd_is_const(&diff, f, p) {
            return false;
        }
    }
    true
}

/// The `skip`-th monic irreducible of the given degree in increasing scan
/// order; skip = 0 is the default modulus.
pub fn find_irreducible(p: u64, degree: usize, skip: usize) -> Vec<u64> {
    if degree == 1 {
        return vec![skip as u64 % p, 1];
    }
    let mut remaining = skip;
    let mut index: u128 = 0;
    loop {
        let mut f = vec![0u64; degree + 1];
        let mut rest = index;
        for slot in f.iter_mut().take(degree) {
            *slot = (rest % p as u128) as u64;
            rest /= p as u128;
        }
        assert_eq!(rest, 0, "ran out of candidates of degree {}", degree);
        f[degree] = 1;
        if poly_is_irreducible(&f, p) {
            if remaining == 0 {
                return f;
            }
            remaining -= 1;
        }
        index += 1;
    }
}
