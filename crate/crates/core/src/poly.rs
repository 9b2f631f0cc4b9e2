//! Dense polynomials over Z_q and the Bezout decomposition against
//! (P, P') that drives the pole-order reduction.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::padic::{PadicParams, ZqElem};

/// Coefficients lowest degree first, trailing zeroes trimmed; the zero
/// polynomial is the empty sequence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZqPoly {
    pub(crate) c: Vec<ZqElem>,
}

impl ZqPoly {
    pub fn zero() -> Self {
        ZqPoly { c: Vec::new() }
    }

    pub fn from_coeffs(zq: &PadicParams, coeffs: Vec<ZqElem>) -> Self {
        let mut f = ZqPoly { c: coeffs };
        f.trim(zq);
        f
    }

    pub fn from_ints(zq: &PadicParams, coeffs: &[i64]) -> Self {
        Self::from_coeffs(zq, coeffs.iter().map(|&x| zq.from_int(x)).collect())
    }

    /// x^k
    pub fn monomial(zq: &PadicParams, k: usize) -> Self {
        let mut c = vec![zq.zero(); k + 1];
        c[k] = zq.one();
        ZqPoly { c }
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[ZqElem] {
        &self.c
    }

    pub fn coeff(&self, zq: &PadicParams, i: usize) -> ZqElem {
        self.c.get(i).cloned().unwrap_or_else(|| zq.zero())
    }

    pub fn leading(&self) -> Option<&ZqElem> {
        self.c.last()
    }

    fn trim(&mut self, zq: &PadicParams) {
        while self.c.last().map(|x| zq.is_zero(x)) == Some(true) {
            self.c.pop();
        }
    }

    pub fn add(&self, zq: &PadicParams, other: &Self) -> Self {
        let len = self.c.len().max(other.c.len());
        let mut c = Vec::with_capacity(len);
        for i in 0..len {
            let a = self.c.get(i);
            let b = other.c.get(i);
            c.push(match (a, b) {
                (Some(a), Some(b)) => zq.add(a, b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            });
        }
        Self::from_coeffs(zq, c)
    }

    pub fn sub(&self, zq: &PadicParams, other: &Self) -> Self {
        let len = self.c.len().max(other.c.len());
        let mut c = Vec::with_capacity(len);
        for i in 0..len {
            let a = self.c.get(i);
            let b = other.c.get(i);
            c.push(match (a, b) {
                (Some(a), Some(b)) => zq.sub(a, b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => zq.neg(b),
                (None, None) => unreachable!(),
            });
        }
        Self::from_coeffs(zq, c)
    }

    pub fn neg(&self, zq: &PadicParams) -> Self {
        ZqPoly { c: self.c.iter().map(|x| zq.neg(x)).collect() }
    }

    pub fn mul(&self, zq: &PadicParams, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut c = vec![zq.zero(); self.c.len() + other.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if zq.is_zero(a) {
                continue;
            }
            for (j, b) in other.c.iter().enumerate() {
                let t = zq.mul(a, b);
                c[i + j] = zq.add(&c[i + j], &t);
            }
        }
        Self::from_coeffs(zq, c)
    }

    pub fn mul_elem(&self, zq: &PadicParams, s: &ZqElem) -> Self {
        Self::from_coeffs(zq, self.c.iter().map(|x| zq.mul(x, s)).collect())
    }

    pub fn mul_residue(&self, zq: &PadicParams, s: u64) -> Self {
        Self::from_coeffs(zq, self.c.iter().map(|x| zq.mul_scalar(x, s)).collect())
    }

    /// Multiply by x^k.
    pub fn shift_x(&self, zq: &PadicParams, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut c = vec![zq.zero(); k];
        c.extend(self.c.iter().cloned());
        ZqPoly { c }
    }

    /// Substitute x -> x^k.
    pub fn compose_x_pow(&self, zq: &PadicParams, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut c = vec![zq.zero(); (self.c.len() - 1) * k + 1];
        for (i, a) in self.c.iter().enumerate() {
            c[i * k] = a.clone();
        }
        ZqPoly { c }
    }

    pub fn derivative(&self, zq: &PadicParams) -> Self {
        if self.c.len() <= 1 {
            return Self::zero();
        }
        let c = self
            .c
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, a)| zq.mul_scalar(a, i as u64 % zq.residue_modulus()))
            .collect();
        Self::from_coeffs(zq, c)
    }

    pub fn eval(&self, zq: &PadicParams, x: &ZqElem) -> ZqElem {
        let mut acc = zq.zero();
        for a in self.c.iter().rev() {
            acc = zq.mul(&acc, x);
            acc = zq.add(&acc, a);
        }
        acc
    }

    /// Apply the Frobenius automorphism to every coefficient.
    pub fn frobenius_coeffs(&self, zq: &PadicParams) -> Self {
        ZqPoly { c: self.c.iter().map(|a| zq.frobenius(a)).collect() }
    }

    /// Truncate every coefficient to the low `digits` p-adic digits.
    pub fn reduce_precision(&self, zq: &PadicParams, digits: u32) -> Result<Self> {
        let mut c = Vec::with_capacity(self.c.len());
        for a in &self.c {
            c.push(zq.reduce_precision(a, digits)?);
        }
        Ok(Self::from_coeffs(zq, c))
    }

    pub fn pow(&self, zq: &PadicParams, e: u64) -> Self {
        let mut acc = ZqPoly::from_ints(zq, &[1]);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(zq, &base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(zq, &base);
            }
        }
        acc
    }

    /// Quotient and remainder with deg r < deg d; the divisor's leading
    /// coefficient must be a unit.
    pub fn divmod(&self, zq: &PadicParams, d: &Self) -> Result<(Self, Self)> {
        let dd = match d.degree() {
            None => return Err(Error::NonUnitLeading),
            Some(dd) => dd,
        };
        let lead = d.leading().unwrap();
        if !zq.is_unit(lead) {
            return Err(Error::NonUnitLeading);
        }
        let lead_inv = zq.inv(lead)?;
        let mut rem = self.clone();
        let nd = match rem.degree() {
            None => return Ok((Self::zero(), Self::zero())),
            Some(nd) => nd,
        };
        if nd < dd {
            return Ok((Self::zero(), rem));
        }
        let mut q = vec![zq.zero(); nd - dd + 1];
        while let Some(nr) = rem.degree() {
            if nr < dd {
                break;
            }
            let coeff = zq.mul(rem.leading().unwrap(), &lead_inv);
            let shift = nr - dd;
            q[shift] = coeff.clone();
            // rem -= coeff * x^shift * d
            for (j, dj) in d.c.iter().enumerate() {
                let t = zq.mul(&coeff, dj);
                rem.c[shift + j] = zq.sub(&rem.c[shift + j], &t);
            }
            rem.trim(zq);
        }
        Ok((Self::from_coeffs(zq, q), rem))
    }
}

/// One-time Bezout pair for (P, P'): U, V with P U + P' V = 1, reused by
/// every reduction step on the curve.
#[derive(Clone, Debug)]
pub struct BezoutContext {
    zq: Arc<PadicParams>,
    ptilde: ZqPoly,
    ptilde_deriv: ZqPoly,
    u: ZqPoly,
    v: ZqPoly,
}

impl BezoutContext {
    /// Runs the extended Euclid over the residue field, then lifts the pair
    /// to the working precision. Fails with `NotSquarefree` when
    /// gcd(P, P') is nonconstant mod p.
    pub fn new(zq: Arc<PadicParams>, ptilde: &ZqPoly, ptilde_deriv: &ZqPoly) -> Result<Self> {
        let fq = PadicParams::new(
            zq.p(),
            zq.extension_degree(),
            1,
            Some(&zq.modulus_coeffs().iter().map(|&x| (x % zq.p()) as i64).collect::<Vec<_>>()),
        )?;
        let pbar = reduce_poly_to(&fq, ptilde);
        let dbar = reduce_poly_to(&fq, ptilde_deriv);
        let (ubar, vbar) = ext_euclid_field(&fq, &pbar, &dbar).ok_or(Error::NotSquarefree)?;

        // Lift to precision Nw: each pass squares the modulus of correctness,
        // since the new defect is the square of the old one.
        let mut u = lift_poly_from(&zq, &ubar);
        let mut v = lift_poly_from(&zq, &vbar);
        let one = ZqPoly::from_ints(&zq, &[1]);
        let steps = 64 - (zq.working_precision() as u64).leading_zeros();
        for _ in 0..=steps {
            let combo = ptilde.mul(&zq, &u).add(&zq, &ptilde_deriv.mul(&zq, &v));
            let defect = one.sub(&zq, &combo);
            if defect.is_zero() {
                break;
            }
            // solve P du + P' dv = defect - defect^2 using the current pair,
            // folding the quotient of (v * defect) by P into du
            let (q, dv) = v.mul(&zq, &defect).divmod(&zq, ptilde)?;
            let du = u.mul(&zq, &defect).add(&zq, &ptilde_deriv.mul(&zq, &q));
            u = u.add(&zq, &du);
            v = v.add(&zq, &dv);
        }
        let check = ptilde.mul(&zq, &u).add(&zq, &ptilde_deriv.mul(&zq, &v));
        assert_eq!(check, one, "Bezout pair failed P U + P' V = 1");
        Ok(BezoutContext { zq, ptilde: ptilde.clone(), ptilde_deriv: ptilde_deriv.clone(), u, v })
    }

    pub fn cofactors(&self) -> (&ZqPoly, &ZqPoly) {
        (&self.u, &self.v)
    }

    /// Split A = P B + P' C with deg C < deg P. The exact division by P
    /// must be remainder-free; anything else is a hard invariant failure.
    pub fn decompose(&self, a: &ZqPoly) -> (ZqPoly, ZqPoly) {
        let zq = &*self.zq;
        let (_, c) = a
            .mul(zq, &self.v)
            .divmod(zq, &self.ptilde)
            .expect("monic modulus division cannot fail");
        let num = a.sub(zq, &self.ptilde_deriv.mul(zq, &c));
        let (b, rem) = num.divmod(zq, &self.ptilde).expect("monic modulus division cannot fail");
        assert!(rem.is_zero(), "Bezout decomposition left a remainder");
        (b, c)
    }
}

pub(crate) fn reduce_poly_to(target: &PadicParams, f: &ZqPoly) -> ZqPoly {
    let coeffs = f
        .c
        .iter()
        .map(|a| target.from_coords(&a.coeffs().iter().map(|&x| (x % target.p()) as i64).collect::<Vec<_>>()))
        .collect();
    ZqPoly::from_coeffs(target, coeffs)
}

pub(crate) fn lift_poly_from(target: &PadicParams, f: &ZqPoly) -> ZqPoly {
    let coeffs = f
        .c
        .iter()
        .map(|a| target.from_coords(&a.coeffs().iter().map(|&x| x as i64).collect::<Vec<_>>()))
        .collect();
    ZqPoly::from_coeffs(target, coeffs)
}

/// Extended Euclid over the residue field: returns (u, v) with
/// a u + b v = 1, or None when gcd(a, b) is nonconstant.
fn ext_euclid_field(fq: &PadicParams, a: &ZqPoly, b: &ZqPoly) -> Option<(ZqPoly, ZqPoly)> {
    let one = ZqPoly::from_ints(fq, &[1]);
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut u0, mut u1) = (one.clone(), ZqPoly::zero());
    let (mut v0, mut v1) = (ZqPoly::zero(), one);
    while !r1.is_zero() {
        let (q, r) = r0.divmod(fq, &r1).ok()?;
        let u = u0.sub(fq, &q.mul(fq, &u1));
        let v = v0.sub(fq, &q.mul(fq, &v1));
        r0 = r1;
        r1 = r;
        u0 = u1;
        u1 = u;
        v0 = v1;
        v1 = v;
    }
    if r0.degree() != Some(0) {
        return None;
    }
    let scale = fq.inv(r0.leading().unwrap()).ok()?;
    Some((u0.mul_elem(fq, &scale), v0.mul_elem(fq, &scale)))
}
