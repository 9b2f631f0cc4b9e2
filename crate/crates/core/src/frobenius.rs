//! Images of the basis differentials under the p-power Frobenius lift.
//!
//! The lift sends x to x^p and y to y^p (1 + E/P^p)^(1/2) with
//! E = P^sigma(x^p) - P(x)^p, so 1/y maps to the binomial series
//! sum_k C(-1/2,k) E(x)^k y^(-p(2k+1)). E vanishes mod p coefficientwise,
//! hence the k-th term of an image carries p^(k+1) (one factor from
//! d(x^p) = p x^(p-1) dx) and truncating at K = Nw - 1 changes nothing at
//! working precision.

use crate::curve::{LiftedCurve, OddYForm};
use crate::padic::{PadicParams, ZqElem};
use crate::poly::ZqPoly;

/// Coefficients C(r/2, k) for k = 0..=kmax, r odd. Each step multiplies by
/// (r - 2k + 2)/(2k); the p-part of k divides exactly because the
/// coefficients are p-integral for odd p.
pub(crate) fn half_binomials(zq: &PadicParams, r: i64, kmax: u32) -> Vec<ZqElem> {
    let mut out = Vec::with_capacity(kmax as usize + 1);
    let mut c = zq.one();
    out.push(c.clone());
    for k in 1..=kmax as i64 {
        c = zq.mul(&c, &zq.from_int(r - 2 * k + 2));
        let (e, unit) = zq.split_p_part(2 * k as u64);
        c = zq.mul_scalar(&c, zq.inv_scalar(unit).expect("unit part of 2k"));
        debug_assert!(zq.divisible(&c, e), "binomial step must divide exactly");
        c = zq.shift_down(&c, e);
        out.push(c.clone());
    }
    out
}

/// C(-1/2, k): the k-th coefficient of (1 + z)^(-1/2).
pub fn binom_half(zq: &PadicParams, k: u32) -> ZqElem {
    half_binomials(zq, -1, k).pop().unwrap()
}

/// Which y-power the reductions target: dx/y is the default; dx/y^3 keeps
/// the Frobenius matrix integral for every p and genus.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum BasisKind {
    #[default]
    YPowerOne,
    YPowerThree,
}

impl BasisKind {
    /// Numerator r of the series exponent r/2 for 1/y^m.
    fn series_numerator(self) -> i64 {
        match self {
            BasisKind::YPowerOne => -1,
            BasisKind::YPowerThree => -3,
        }
    }

    /// m in x^i dx / y^m.
    pub(crate) fn y_power(self) -> u64 {
        match self {
            BasisKind::YPowerOne => 1,
            BasisKind::YPowerThree => 3,
        }
    }
}

/// Image of x^i dx / y^m under the lift, truncated after the E^K term:
/// sum_k p C(-m/2,k) x^(pi+p-1) E(x)^k at pole index (p(2k+m)-1)/2.
pub fn frobenius_image(curve: &LiftedCurve, basis: BasisKind, i: usize, k_trunc: u32) -> OddYForm {
    assert!(i < 2 * curve.genus(), "basis index out of range");
    let zq = &**curve.zq();
    let p = zq.p();
    let coeffs = half_binomials(zq, basis.series_numerator(), k_trunc);
    let x_shift = p as usize * i + p as usize - 1;
    let m = basis.y_power();
    let mut form = OddYForm::zero();
    let mut e_pow = ZqPoly::from_ints(zq, &[1]);
    for (k, coeff) in coeffs.iter().enumerate() {
        let scalar = zq.mul_scalar(coeff, p);
        let term = e_pow.mul_elem(zq, &scalar).shift_x(zq, x_shift);
        let slot = ((p * (2 * k as u64 + m) - 1) / 2) as i64;
        form.add_term(zq, slot, term);
        if k < k_trunc as usize {
            e_pow = e_pow.mul(zq, curve.e_poly());
        }
    }
    form
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::CurveSpec;

    fn curve(p: u64, coeffs: &[i64]) -> LiftedCurve {
        LiftedCurve::validate(&CurveSpec::prime_field(p, coeffs), None).unwrap()
    }

    #[test]
    fn binomial_series_start() {
        let zq = crate::padic::PadicParams::new(7, 1, 2, None).unwrap();
        assert_eq!(binom_half(&zq, 0), zq.one());
        // C(-1/2, 1) = -1/2
        let minus_half = zq.mul(&zq.from_int(-1), &zq.inv(&zq.from_int(2)).unwrap());
        assert_eq!(binom_half(&zq, 1), minus_half);
        // C(-1/2, 2) = 3/8, and 3 * 8^-1 = 31 mod 49
        assert_eq!(binom_half(&zq, 2), zq.from_int(31));
    }

    #[test]
    fn image_mod_p_squared_is_the_leading_term() {
        let c = curve(7, &[0, -1, 0, 1]);
        let zq = &**c.zq();
        let p = 7u64;
        for i in 0..2 {
            let img = frobenius_image(&c, BasisKind::YPowerOne, i, c.plan().series_trunc);
            for (&j, a) in img.terms() {
                let reduced = a.reduce_precision(zq, 2).unwrap();
                if j == ((p - 1) / 2) as i64 {
                    let expect = ZqPoly::monomial(zq, (p as usize) * i + p as usize - 1)
                        .mul_residue(zq, p)
                        .reduce_precision(zq, 2)
                        .unwrap();
                    assert_eq!(reduced, expect);
                } else {
                    assert!(reduced.is_zero(), "term k >= 1 must vanish mod p^2");
                }
            }
        }
    }

    #[test]
    fn slots_follow_the_series_layout() {
        let c = curve(5, &[1, 1, 0, 1]);
        let k = c.plan().series_trunc;
        let img = frobenius_image(&c, BasisKind::YPowerOne, 1, k);
        let allowed: Vec<i64> =
            (0..=k as u64).map(|kk| ((5 * (2 * kk + 1) - 1) / 2) as i64).collect();
        for &j in img.terms().keys() {
            assert!(allowed.contains(&j), "unexpected pole index {}", j);
        }
    }

    #[test]
    fn worked_image_for_the_quintic_field() {
        // p = 5, P = x^3 + x + 1, i = 0, K = 1: slot 2 carries 5x^4 and
        // slot 7 carries -(5/2) x^4 E(x)
        let c = curve(5, &[1, 1, 0, 1]);
        let zq = &**c.zq();
        let img = frobenius_image(&c, BasisKind::YPowerOne, 0, 1);
        let x4 = ZqPoly::monomial(zq, 4);
        assert_eq!(img.terms()[&2], x4.mul_residue(zq, 5));
        // independent evaluation of E = P(x^5) - P(x)^5 for the prime field
        let ptilde = ZqPoly::from_ints(zq, &[1, 1, 0, 1]);
        let e_direct = ptilde.compose_x_pow(zq, 5).sub(zq, &ptilde.pow(zq, 5));
        let minus_five_halves = zq.mul(&zq.from_int(-5), &zq.inv(&zq.from_int(2)).unwrap());
        let expect = e_direct.mul_elem(zq, &minus_five_halves).shift_x(zq, 4);
        assert_eq!(img.terms()[&7], expect);
        assert_eq!(img.terms().len(), 2);
    }

    #[test]
    fn term_k_carries_p_to_the_k_plus_one() {
        let c = curve(5, &[2, 0, 3, 1, 0, 1]); // genus 2
        let zq = &**c.zq();
        let p = 5u64;
        let k = c.plan().series_trunc.min(zq.working_precision() - 1);
        let img = frobenius_image(&c, BasisKind::YPowerOne, 0, k);
        for (&j, a) in img.terms() {
            let kk = ((2 * j as u64 + 1) / p - 1) / 2;
            let e = (kk as u32 + 1).min(zq.working_precision());
            assert!(
                a.coeffs().iter().all(|c| zq.divisible(c, e)),
                "term at pole {} lacks p^{}",
                j,
                e
            );
        }
    }

    #[test]
    fn squared_series_telescopes() {
        // the coefficients of ((1+z)^(1/2))^2, truncated, must be 1, 1, 0, ...
        let zq = crate::padic::PadicParams::new(7, 1, 6, None).unwrap();
        let k = 5u32;
        let half = half_binomials(&zq, 1, k);
        for m in 0..=k as usize {
            let mut acc = zq.zero();
            for a in 0..=m {
                acc = zq.add(&acc, &zq.mul(&half[a], &half[m - a]));
            }
            let expect = if m <= 1 { zq.one() } else { zq.zero() };
            assert_eq!(acc, expect, "coefficient of z^{}", m);
        }
    }

    #[test]
    fn images_are_deterministic() {
        let c1 = curve(7, &[0, -1, 0, 1]);
        let c2 = curve(7, &[0, -1, 0, 1]);
        let k = c1.plan().series_trunc;
        assert_eq!(
            frobenius_image(&c1, BasisKind::YPowerOne, 1, k),
            frobenius_image(&c2, BasisKind::YPowerOne, 1, k)
        );
    }
}
