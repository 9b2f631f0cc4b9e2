//! Fixed-point arithmetic in Z/p^Nw and in the unramified extension Z_q.
//!
//! Every value is carried as a residue modulo p^Nw regardless of its
//! valuation. Divisions by p-powers truncate: the quotient's unknown top
//! digits are filled with zeroes once and never change, so identical inputs
//! always produce bit-identical outputs. An element of Z_q is a vector of n
//! residues, the coordinates on 1, t, ..., t^(n-1) modulo a monic degree-n
//! polynomial whose reduction mod p is irreducible.

use std::sync::Arc;

use crate::error::{Error, Result};

/// Residues must stay below 2^62 so that a single add cannot overflow u64.
const CAPACITY_BITS: u32 = 62;

/// An element of Z_q at working precision: n residues mod p^Nw, constant
/// coordinate first.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ZqElem {
    pub(crate) c: Vec<u64>,
}

impl ZqElem {
    pub fn coeffs(&self) -> &[u64] {
        &self.c
    }
}

/// Ring context: the prime, extension degree, working precision and modulus,
/// plus the precomputed Frobenius image of the generator. Immutable after
/// construction; share it behind an `Arc`.
#[derive(Debug)]
pub struct PadicParams {
    p: u64,
    n: usize,
    nw: u32,
    /// p^0 .. p^nw
    p_pows: Vec<u64>,
    /// Monic, length n+1, residues mod p^nw.
    modulus: Vec<u64>,
    /// Powers sigma(t)^0 .. sigma(t)^(n-1) used to apply the automorphism.
    sigma_pows: Vec<ZqElem>,
}

impl PadicParams {
    /// Builds the ring. `modulus`, when given, lists n+1 integers (constant
    /// first) whose reduction mod p must be monic and irreducible; when
    /// absent and n > 1, the scan-smallest irreducible of degree n is used.
    pub fn new(p: u64, n: usize, nw: u32, modulus: Option<&[i64]>) -> Result<Arc<Self>> {
        if p < 3 || p.is_multiple_of(2) {
            return Err(Error::EvenCharacteristic);
        }
        if !is_prime_u64(p) {
            return Err(Error::NotPrime(p));
        }
        if n == 0 || nw == 0 {
            return Err(Error::PrecisionOutOfRange { requested: nw, available: 1 });
        }
        let mut p_pows = Vec::with_capacity(nw as usize + 1);
        let mut acc: u64 = 1;
        p_pows.push(acc);
        for _ in 0..nw {
            acc = acc
                .checked_mul(p)
                .filter(|m| *m < (1u64 << CAPACITY_BITS))
                .ok_or(Error::CapacityExceeded { p, nw })?;
            p_pows.push(acc);
        }
        let pnw = p_pows[nw as usize];

        let modulus: Vec<u64> = match modulus {
            Some(raw) => {
                if raw.len() != n + 1 {
                    return Err(Error::WrongDegree {
                        expected: format!("{} modulus coefficients", n + 1),
                        got: raw.len(),
                    });
                }
                let m: Vec<u64> = raw.iter().map(|&x| reduce_signed(x, pnw)).collect();
                if m[n] != 1 {
                    return Err(Error::NotMonic);
                }
                let mbar: Vec<u64> = m.iter().map(|&x| x % p).collect();
                if n > 1 && !fp::is_irreducible(&mbar, p) {
                    return Err(Error::NotIrreducible);
                }
                m
            }
            None => {
                if n == 1 {
                    vec![0, 1] // Z_q = Z_p, modulus t
                } else {
                    
                    fp::smallest_irreducible(n, p) // digits already in [0, p)
                }
            }
        };

        let mut params = PadicParams { p, n, nw, p_pows, modulus, sigma_pows: Vec::new() };
        params.sigma_pows = params.compute_sigma_powers()?;
        Ok(Arc::new(params))
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn extension_degree(&self) -> usize {
        self.n
    }

    pub fn working_precision(&self) -> u32 {
        self.nw
    }

    /// p^e for e <= Nw.
    pub fn p_pow(&self, e: u32) -> u64 {
        self.p_pows[e as usize]
    }

    pub fn residue_modulus(&self) -> u64 {
        self.p_pows[self.nw as usize]
    }

    pub fn modulus_coeffs(&self) -> &[u64] {
        &self.modulus
    }

    // --- element construction -------------------------------------------

    pub fn zero(&self) -> ZqElem {
        ZqElem { c: vec![0; self.n] }
    }

    pub fn one(&self) -> ZqElem {
        self.from_int(1)
    }

    pub fn from_int(&self, x: i64) -> ZqElem {
        let mut c = vec![0; self.n];
        c[0] = reduce_signed(x, self.residue_modulus());
        ZqElem { c }
    }

    /// Element from F_p-basis coordinates (constant first, short vectors
    /// padded with zeroes).
    pub fn from_coords(&self, coords: &[i64]) -> ZqElem {
        assert!(coords.len() <= self.n, "too many coordinates for extension degree");
        let m = self.residue_modulus();
        let mut c = vec![0; self.n];
        for (i, &x) in coords.iter().enumerate() {
            c[i] = reduce_signed(x, m);
        }
        ZqElem { c }
    }

    pub fn is_zero(&self, a: &ZqElem) -> bool {
        a.c.iter().all(|&x| x == 0)
    }

    /// A unit iff the reduction mod p is nonzero in F_q.
    pub fn is_unit(&self, a: &ZqElem) -> bool {
        a.c.iter().any(|&x| x % self.p != 0)
    }

    // --- ring operations --------------------------------------------------

    pub fn add(&self, a: &ZqElem, b: &ZqElem) -> ZqElem {
        self.check(a);
        self.check(b);
        let m = self.residue_modulus();
        let c = a
            .c
            .iter()
            .zip(&b.c)
            .map(|(&x, &y)| {
                let s = x + y;
                if s >= m {
                    s - m
                } else {
                    s
                }
            })
            .collect();
        ZqElem { c }
    }

    pub fn sub(&self, a: &ZqElem, b: &ZqElem) -> ZqElem {
        self.check(a);
        self.check(b);
        let m = self.residue_modulus();
        let c = a
            .c
            .iter()
            .zip(&b.c)
            .map(|(&x, &y)| if x >= y { x - y } else { m - y + x })
            .collect();
        ZqElem { c }
    }

    pub fn neg(&self, a: &ZqElem) -> ZqElem {
        let m = self.residue_modulus();
        let c = a.c.iter().map(|&x| if x == 0 { 0 } else { m - x }).collect();
        ZqElem { c }
    }

    pub fn mul(&self, a: &ZqElem, b: &ZqElem) -> ZqElem {
        self.check(a);
        self.check(b);
        let n = self.n;
        let m = self.residue_modulus();
        if n == 1 {
            return ZqElem { c: vec![mul_mod(a.c[0], b.c[0], m)] };
        }
        // schoolbook product, then fold t^k for k >= n down with the
        // monic modulus relation t^n = -(m_0 + ... + m_{n-1} t^{n-1})
        let mut prod = vec![0u64; 2 * n - 1];
        for i in 0..n {
            if a.c[i] == 0 {
                continue;
            }
            for j in 0..n {
                prod[i + j] = add_mod(prod[i + j], mul_mod(a.c[i], b.c[j], m), m);
            }
        }
        self.fold_modulus(&mut prod);
        prod.truncate(n);
        ZqElem { c: prod }
    }

    /// Multiply by a plain residue.
    pub fn mul_scalar(&self, a: &ZqElem, s: u64) -> ZqElem {
        let m = self.residue_modulus();
        let s = s % m;
        ZqElem { c: a.c.iter().map(|&x| mul_mod(x, s, m)).collect() }
    }

    pub(crate) fn fold_modulus(&self, prod: &mut Vec<u64>) {
        let n = self.n;
        let m = self.residue_modulus();
        for i in (n..prod.len()).rev() {
            let top = prod[i];
            if top != 0 {
                prod[i] = 0;
                for j in 0..n {
                    if self.modulus[j] != 0 {
                        let t = mul_mod(top, self.modulus[j], m);
                        prod[i - n + j] = sub_mod(prod[i - n + j], t, m);
                    }
                }
            }
        }
        prod.truncate(n.max(prod.len().min(n)));
    }

    pub fn pow(&self, a: &ZqElem, mut e: u64) -> ZqElem {
        let mut base = a.clone();
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

    /// Inverse of a unit, exact at precision Nw (Hensel lift of the residue
    /// field inverse).
    pub fn inv(&self, a: &ZqElem) -> Result<ZqElem> {
        if !self.is_unit(a) {
            return Err(Error::NotUnit);
        }
        let p = self.p;
        let abar: Vec<u64> = a.c.iter().map(|&x| x % p).collect();
        let mbar: Vec<u64> = self.modulus.iter().map(|&x| x % p).collect();
        let inv_bar = fp::inv_mod(&abar, &mbar, p).ok_or(Error::NotUnit)?;
        let mut x = ZqElem { c: inv_bar };
        x.c.resize(self.n, 0);
        // x correct mod p; each step doubles the number of good digits
        let steps = 64 - (self.nw as u64).leading_zeros();
        let two = self.from_int(2);
        for _ in 0..=steps {
            let ax = self.mul(a, &x);
            let corr = self.sub(&two, &ax);
            x = self.mul(&x, &corr);
        }
        debug_assert!(self.is_zero(&self.sub(&self.mul(a, &x), &self.one())));
        Ok(x)
    }

    /// Inverse of a plain residue that is a unit mod p.
    pub fn inv_scalar(&self, s: u64) -> Result<u64> {
        if s.is_multiple_of(self.p) {
            return Err(Error::NotUnit);
        }
        Ok(self.inv(&self.residue_elem(s))?.c[0])
    }

    fn residue_elem(&self, x: u64) -> ZqElem {
        let mut c = vec![0; self.n];
        c[0] = x % self.residue_modulus();
        ZqElem { c }
    }

    // --- Frobenius automorphism -------------------------------------------

    /// The Witt-vector Frobenius: the unique ring automorphism fixing Z_p
    /// that reduces to the p-power map on F_q.
    pub fn frobenius(&self, a: &ZqElem) -> ZqElem {
        self.check(a);
        if self.n == 1 {
            return a.clone();
        }
        let mut acc = self.zero();
        for i in 0..self.n {
            if a.c[i] != 0 {
                acc = self.add(&acc, &self.mul_scalar(&self.sigma_pows[i], a.c[i]));
            }
        }
        acc
    }

    /// Newton-lift the root of the modulus congruent to t^p mod p, then
    /// cache its powers. One-time cost per ring.
    fn compute_sigma_powers(&self) -> Result<Vec<ZqElem>> {
        let n = self.n;
        if n == 1 {
            return Ok(vec![self.one()]);
        }
        let t = {
            let mut c = vec![0u64; n];
            c[1] = 1;
            ZqElem { c }
        };
        let mut s = self.pow(&t, self.p);
        // m'(s) must be a unit mod p, i.e. the modulus separable
        let dm = self.eval_modulus_derivative(&s);
        if !self.is_unit(&dm) {
            return Err(Error::NewtonNonconvergence);
        }
        let steps = (64 - (self.nw as u64).leading_zeros()) + 1;
        for _ in 0..steps {
            let num = self.eval_modulus(&s);
            let den = self.eval_modulus_derivative(&s);
            let step = self.mul(&num, &self.inv(&den)?);
            s = self.sub(&s, &step);
        }
        if !self.is_zero(&self.eval_modulus(&s)) {
            return Err(Error::NewtonNonconvergence);
        }
        let mut pows = Vec::with_capacity(n);
        let mut acc = self.one();
        for _ in 0..n {
            pows.push(acc.clone());
            acc = self.mul(&acc, &s);
        }
        Ok(pows)
    }

    fn eval_modulus(&self, x: &ZqElem) -> ZqElem {
        // Horner with the modulus' constant coefficients
        let mut acc = self.zero();
        for &mi in self.modulus.iter().rev() {
            acc = self.mul(&acc, x);
            if mi != 0 {
                acc = self.add(&acc, &self.residue_elem(mi));
            }
        }
        acc
    }

    fn eval_modulus_derivative(&self, x: &ZqElem) -> ZqElem {
        let m = self.residue_modulus();
        let mut acc = self.zero();
        for i in (1..self.modulus.len()).rev() {
            acc = self.mul(&acc, x);
            let coeff = mul_mod(self.modulus[i], i as u64 % m, m);
            if coeff != 0 {
                acc = self.add(&acc, &self.residue_elem(coeff));
            }
        }
        acc
    }

    // --- precision handling ------------------------------------------------

    /// Truncate to the low `digits` p-adic digits (for comparing runs at
    /// different guard settings).
    pub fn reduce_precision(&self, a: &ZqElem, digits: u32) -> Result<ZqElem> {
        if digits == 0 || digits > self.nw {
            return Err(Error::PrecisionOutOfRange { requested: digits, available: self.nw });
        }
        let m = self.p_pows[digits as usize];
        Ok(ZqElem { c: a.c.iter().map(|&x| x % m).collect() })
    }

    /// Divide by p^e, discarding the low e digits. The quotient's top e
    /// digits are fixed to zero, once and for all.
    pub fn shift_down(&self, a: &ZqElem, e: u32) -> ZqElem {
        if e == 0 {
            return a.clone();
        }
        let d = self.p_pows[e as usize];
        ZqElem { c: a.c.iter().map(|&x| x / d).collect() }
    }

    /// True if every coordinate is divisible by p^e as a residue.
    pub fn divisible(&self, a: &ZqElem, e: u32) -> bool {
        let d = self.p_pows[e as usize];
        a.c.iter().all(|&x| x % d == 0)
    }

    /// Splits m = p^e * u with u a unit; e capped at Nw.
    pub fn split_p_part(&self, m: u64) -> (u32, u64) {
        debug_assert!(m > 0);
        let mut e = 0u32;
        let mut u = m;
        while u.is_multiple_of(self.p) && e < self.nw {
            u /= self.p;
            e += 1;
        }
        (e, u)
    }

    fn check(&self, a: &ZqElem) {
        assert_eq!(a.c.len(), self.n, "element from a different ring context");
    }
}

#[inline]
pub(crate) fn add_mod(a: u64, b: u64, m: u64) -> u64 {
    let s = a + b;
    if s >= m {
        s - m
    } else {
        s
    }
}

#[inline]
pub(crate) fn sub_mod(a: u64, b: u64, m: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        m - b + a
    }
}

#[inline]
pub(crate) fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub(crate) fn reduce_signed(x: i64, m: u64) -> u64 {
    let r = (x as i128).rem_euclid(m as i128);
    r as u64
}

pub(crate) fn is_prime_u64(x: u64) -> bool {
    if x < 2 {
        return false;
    }
    if x.is_multiple_of(2) {
        return x == 2;
    }
    let mut d = 3u64;
    while d * d <= x {
        if x.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Polynomial arithmetic over F_p used for modulus selection, irreducibility
/// checking and residue-field inversion. Coefficients lowest first.
pub(crate) mod fp {
    use super::{is_prime_u64, mul_mod};

    pub fn trim(f: &mut Vec<u64>) {
        while f.last() == Some(&0) {
            f.pop();
        }
    }

    pub fn mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + mul_mod(x, y, p)) % p;
            }
        }
        trim(&mut out);
        out
    }

    /// Remainder of f by monic m.
    pub fn rem(f: &[u64], m: &[u64], p: u64) -> Vec<u64> {
        debug_assert_eq!(*m.last().unwrap(), 1);
        let d = m.len() - 1;
        let mut r = f.to_vec();
        while r.len() > d {
            let top = *r.last().unwrap();
            let k = r.len() - 1 - d;
            if top != 0 {
                for j in 0..d {
                    let t = mul_mod(top, m[j], p);
                    r[k + j] = (r[k + j] + p - t) % p;
                }
            }
            r.pop();
            trim(&mut r);
            if r.len() <= d {
                break;
            }
        }
        r
    }

    pub fn pow_mod(base: &[u64], mut e: u64, m: &[u64], p: u64) -> Vec<u64> {
        let mut b = rem(base, m, p);
        let mut acc = vec![1u64];
        while e > 0 {
            if e & 1 == 1 {
                acc = rem(&mul(&acc, &b, p), m, p);
            }
            e >>= 1;
            if e > 0 {
                b = rem(&mul(&b, &b, p), m, p);
            }
        }
        acc
    }

    fn inv_int(a: u64, p: u64) -> u64 {
        // extended Euclid on integers
        let (mut r0, mut r1) = (p as i128, (a % p) as i128);
        let (mut s0, mut s1) = (0i128, 1i128);
        while r1 != 0 {
            let q = r0 / r1;
            let r = r0 - q * r1;
            r0 = r1;
            r1 = r;
            let s = s0 - q * s1;
            s0 = s1;
            s1 = s;
        }
        debug_assert_eq!(r0, 1);
        s0.rem_euclid(p as i128) as u64
    }

    pub fn gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let mut f = a.to_vec();
        let mut g = b.to_vec();
        trim(&mut f);
        trim(&mut g);
        while !g.is_empty() {
            let lead = *g.last().unwrap();
            let li = inv_int(lead, p);
            let monic: Vec<u64> = g.iter().map(|&x| mul_mod(x, li, p)).collect();
            let r = rem(&f, &monic, p);
            f = g;
            g = r;
            trim(&mut g);
        }
        f
    }

    /// Inverse of a mod monic m, when gcd(a, m) = 1.
    pub fn inv_mod(a: &[u64], m: &[u64], p: u64) -> Option<Vec<u64>> {
        let mut a = a.to_vec();
        trim(&mut a);
        if a.is_empty() {
            return None;
        }
        // extended Euclid tracking only the a-cofactor
        let (mut r0, mut r1) = (m.to_vec(), a);
        let (mut t0, mut t1) = (Vec::new(), vec![1u64]);
        while !r1.is_empty() {
            let lead = *r1.last().unwrap();
            let li = inv_int(lead, p);
            // divide r0 by r1: long division over the field
            let mut q = vec![0u64; r0.len().saturating_sub(r1.len()) + 1];
            let mut r = r0.clone();
            while r.len() >= r1.len() && !r.is_empty() {
                let shift = r.len() - r1.len();
                let coeff = mul_mod(*r.last().unwrap(), li, p);
                q[shift] = (q[shift] + coeff) % p;
                for (j, &y) in r1.iter().enumerate() {
                    let t = mul_mod(coeff, y, p);
                    r[shift + j] = (r[shift + j] + p - t) % p;
                }
                trim(&mut r);
            }
            let qt1 = mul(&q, &t1, p);
            let mut t2 = t0.clone();
            t2.resize(t2.len().max(qt1.len()), 0);
            for (i, &y) in qt1.iter().enumerate() {
                t2[i] = (t2[i] + p - y) % p;
            }
            trim(&mut t2);
            r0 = r1;
            r1 = r;
            t0 = t1;
            t1 = t2;
        }
        if r0.len() != 1 {
            return None; // nonconstant gcd
        }
        let li = inv_int(r0[0], p);
        let mut out: Vec<u64> = t0.iter().map(|&x| mul_mod(x, li, p)).collect();
        trim(&mut out);
        Some(out)
    }

    /// Rabin test: f of degree d is irreducible iff t^(p^d) = t mod f and
    /// gcd(t^(p^(d/l)) - t, f) is constant for every prime l dividing d.
    pub fn is_irreducible(f: &[u64], p: u64) -> bool {
        let d = f.len() - 1;
        if d == 0 {
            return false;
        }
        if *f.last().unwrap() != 1 {
            return false;
        }
        if d == 1 {
            return true;
        }
        let t = vec![0u64, 1];
        // t^(p^k) by k successive p-th powers
        let frob = |k: usize| -> Vec<u64> {
            let mut r = t.clone();
            for _ in 0..k {
                r = pow_mod(&r, p, f, p);
            }
            r
        };
        let full = frob(d);
        let mut diff = full.clone();
        diff.resize(diff.len().max(2), 0);
        diff[1] = (diff[1] + p - 1) % p;
        trim(&mut diff);
        if !diff.is_empty() {
            return false;
        }
        for l in prime_factors(d as u64) {
            let sub = frob(d / l as usize);
            let mut diff = sub.clone();
            diff.resize(diff.len().max(2), 0);
            diff[1] = (diff[1] + p - 1) % p;
            trim(&mut diff);
            let g = gcd(&diff, f, p);
            if g.len() != 1 {
                return false;
            }
        }
        true
    }

    fn prime_factors(mut x: u64) -> Vec<u64> {
        let mut out = Vec::new();
        let mut d = 2;
        while d * d <= x {
            if x.is_multiple_of(d) {
                out.push(d);
                while x.is_multiple_of(d) {
                    x /= d;
                }
            }
            d += 1;
        }
        if x > 1 {
            out.push(x);
        }
        out
    }

    /// Deterministic default modulus: scan candidates t^n + c, c enumerated
    /// by increasing value of sum c_i p^i, and keep the first irreducible.
    pub fn smallest_irreducible(n: usize, p: u64) -> Vec<u64> {
        debug_assert!(is_prime_u64(p));
        let mut index: u64 = 0;
        loop {
            let mut f = vec![0u64; n + 1];
            let mut rest = index;
            for slot in f.iter_mut().take(n) {
                *slot = rest % p;
                rest /= p;
            }
            assert_eq!(rest, 0, "no irreducible of degree {} found below p^n", n);
            f[n] = 1;
            if is_irreducible(&f, p) {
                return f;
            }
            index += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn ring(p: u64, n: usize, nw: u32) -> Arc<PadicParams> {
        PadicParams::new(p, n, nw, None).unwrap()
    }

    #[test]
    fn mul_in_prime_ring() {
        // 7 * 18 = 126 = 1 mod 25
        let zq = ring(5, 1, 2);
        let a = zq.from_int(7);
        let b = zq.from_int(18);
        assert_eq!(zq.mul(&a, &b), zq.one());
    }

    #[test]
    fn additive_identity_and_associativity() {
        let zq = ring(7, 2, 3);
        let mut rng = StdRng::seed_from_u64(1);
        for _ in 0..100 {
            let a = zq.from_coords(&[rng.gen_range(0..343), rng.gen_range(0..343)]);
            let b = zq.from_coords(&[rng.gen_range(0..343), rng.gen_range(0..343)]);
            let c = zq.from_coords(&[rng.gen_range(0..343), rng.gen_range(0..343)]);
            assert_eq!(zq.add(&a, &zq.zero()), a);
            assert_eq!(zq.mul(&zq.mul(&a, &b), &c), zq.mul(&a, &zq.mul(&b, &c)));
            // distributivity and commutativity while we are here
            assert_eq!(zq.mul(&a, &zq.add(&b, &c)), zq.add(&zq.mul(&a, &b), &zq.mul(&a, &c)));
            assert_eq!(zq.mul(&a, &b), zq.mul(&b, &a));
        }
    }

    #[test]
    fn inverse_of_unit() {
        let zq = ring(5, 1, 2);
        assert_eq!(zq.inv(&zq.from_int(7)).unwrap(), zq.from_int(18));
        assert_eq!(zq.inv(&zq.one()).unwrap(), zq.one());
        assert_eq!(zq.inv(&zq.from_int(5)), Err(Error::NotUnit));
    }

    #[test]
    fn inverse_random_units() {
        let zq = ring(7, 3, 4);
        let m = zq.residue_modulus() as i64;
        let mut rng = StdRng::seed_from_u64(2);
        for _ in 0..100 {
            let a = zq.from_coords(&[
                rng.gen_range(0..m),
                rng.gen_range(0..m),
                rng.gen_range(0..m),
            ]);
            if !zq.is_unit(&a) {
                continue;
            }
            let inv = zq.inv(&a).unwrap();
            assert_eq!(zq.mul(&a, &inv), zq.one());
        }
    }

    #[test]
    fn frobenius_is_identity_on_prime_field() {
        let zq = ring(11, 1, 3);
        for x in [0i64, 1, 5, 100, -3] {
            let a = zq.from_int(x);
            assert_eq!(zq.frobenius(&a), a);
        }
    }

    #[test]
    fn frobenius_reduces_to_p_power() {
        let zq = ring(5, 2, 3);
        let p = 5u64;
        let mut rng = StdRng::seed_from_u64(3);
        for _ in 0..50 {
            let a = zq.from_coords(&[rng.gen_range(0..125), rng.gen_range(0..125)]);
            let fa = zq.frobenius(&a);
            let lhs = zq.reduce_precision(&fa, 1).unwrap();
            let rhs = zq.reduce_precision(&zq.pow(&a, p), 1).unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn frobenius_order_divides_extension_degree() {
        let zq = ring(5, 3, 4);
        let m = zq.residue_modulus() as i64;
        let mut rng = StdRng::seed_from_u64(4);
        for _ in 0..100 {
            let a = zq.from_coords(&[
                rng.gen_range(0..m),
                rng.gen_range(0..m),
                rng.gen_range(0..m),
            ]);
            let mut b = a.clone();
            for _ in 0..3 {
                b = zq.frobenius(&b);
            }
            assert_eq!(b, a);
        }
    }

    #[test]
    fn frobenius_is_a_ring_homomorphism() {
        let zq = ring(7, 2, 4);
        let m = zq.residue_modulus() as i64;
        let mut rng = StdRng::seed_from_u64(5);
        for _ in 0..100 {
            let a = zq.from_coords(&[rng.gen_range(0..m), rng.gen_range(0..m)]);
            let b = zq.from_coords(&[rng.gen_range(0..m), rng.gen_range(0..m)]);
            assert_eq!(zq.frobenius(&zq.add(&a, &b)), zq.add(&zq.frobenius(&a), &zq.frobenius(&b)));
            assert_eq!(zq.frobenius(&zq.mul(&a, &b)), zq.mul(&zq.frobenius(&a), &zq.frobenius(&b)));
        }
    }

    #[test]
    fn precision_reduction() {
        let zq = ring(5, 1, 3);
        let a = zq.from_int(24);
        assert_eq!(zq.reduce_precision(&a, 3).unwrap(), a);
        assert_eq!(zq.reduce_precision(&a, 1).unwrap(), zq.from_int(4));
        let via_three = zq.reduce_precision(&zq.reduce_precision(&a, 3).unwrap(), 2).unwrap();
        assert_eq!(via_three, zq.reduce_precision(&a, 2).unwrap());
        assert!(zq.reduce_precision(&a, 4).is_err());
        assert!(zq.reduce_precision(&a, 0).is_err());
    }

    #[test]
    fn default_moduli_are_deterministic() {
        let a = ring(5, 2, 2);
        let b = ring(5, 2, 2);
        assert_eq!(a.modulus_coeffs(), b.modulus_coeffs());
        // smallest irreducible quadratic over F_5 by the scan order: t^2 + 2
        assert_eq!(a.modulus_coeffs(), &[2, 0, 1]);
        let c = ring(7, 2, 2);
        assert_eq!(c.modulus_coeffs(), &[1, 0, 1]);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert_eq!(PadicParams::new(2, 1, 2, None).unwrap_err(), Error::EvenCharacteristic);
        assert_eq!(PadicParams::new(9, 1, 2, None).unwrap_err(), Error::NotPrime(9));
        assert!(matches!(
            PadicParams::new(5, 2, 2, Some(&[1, 0, 2])).unwrap_err(),
            Error::NotMonic
        ));
        // t^2 + 1 is reducible over F_5
        assert_eq!(
            PadicParams::new(5, 2, 2, Some(&[1, 0, 1])).unwrap_err(),
            Error::NotIrreducible
        );
        assert!(matches!(
            PadicParams::new(3, 1, 45, None).unwrap_err(),
            Error::CapacityExceeded { .. }
        ));
    }

    #[test]
    fn shift_down_truncates() {
        let zq = ring(5, 1, 3);
        let a = zq.from_int(77); // 3*25 + 0*5 + 2
        assert_eq!(zq.shift_down(&a, 1), zq.from_int(15)); // 77 / 5 = 15
        assert!(zq.divisible(&zq.from_int(50), 2));
        assert!(!zq.divisible(&zq.from_int(55), 2));
    }

    #[test]
    #[should_panic(expected = "different ring context")]
    fn mixed_ring_elements_panic() {
        let a = ring(5, 1, 2);
        let b = ring(5, 2, 2);
        let x = a.one();
        let y = b.one();
        // combining elements from different contexts is a caller bug
        let _ = b.add(&y, &x);
    }
}
