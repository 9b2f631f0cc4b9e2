//! Rewriting forms as combinations of the basis differentials, and assembly
//! of the Frobenius matrix.
//!
//! Pole side: if A = P B + P' C then A dx/y^s is cohomologous to
//! (B + 2C'/(s-2)) dx/y^(s-2), a consequence of d(C/y^(s-2)) vanishing in
//! cohomology. Applying it from the largest pole index downward leaves a
//! single polynomial at the base level.
//!
//! Infinity side: from d(x^t y) = (t x^(t-1) P + x^t P'/2) dx/y, the
//! combination t x^(t-1) P + x^t P'/2 vanishes in cohomology; its leading
//! coefficient (2t+2g+1)/2 sits at degree t+2g, so choosing t = deg - 2g
//! eliminates the top coefficient until the degree falls below 2g. For the
//! dx/y^3 basis the same game starts from d(x^t / y), whose relation is
//! t x^(t-1) P - x^t P'/2 with leading coefficient (2t-2g-1)/2.
//!
//! Divisions by s-2 and by 2t+2g+1 split off the p-part and shift it out of
//! the fixed-point window, inventing zero top digits; the plan's guard
//! digits budget for the loss, and a shift beyond the budget aborts the run.

use rayon::prelude::*;

use crate::curve::{LiftedCurve, OddYForm};
use crate::error::{Error, Result};
use crate::frobenius::{frobenius_image, BasisKind};
use crate::padic::{PadicParams, ZqElem};
use crate::poly::ZqPoly;

/// Coordinates on the 2g basis differentials. When the plan carries a
/// nonzero scale, every coordinate is p^scale times the true value, the
/// same power for every vector of the run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisVector {
    coords: Vec<ZqElem>,
}

impl BasisVector {
    pub(crate) fn from_coords(coords: Vec<ZqElem>) -> Self {
        BasisVector { coords }
    }

    pub fn coords(&self) -> &[ZqElem] {
        &self.coords
    }

    pub fn reduce_precision(&self, zq: &PadicParams, digits: u32) -> Result<BasisVector> {
        let mut coords = Vec::with_capacity(self.coords.len());
        for c in &self.coords {
            coords.push(zq.reduce_precision(c, digits)?);
        }
        Ok(BasisVector { coords })
    }

    pub fn is_zero(&self, zq: &PadicParams) -> bool {
        self.coords.iter().all(|c| zq.is_zero(c))
    }
}

/// The matrix of the p-power Frobenius: column i is the reduced image of
/// the i-th basis differential, with the precision bookkeeping of the run.
#[derive(Clone, Debug)]
pub struct FrobMatrix {
    cols: Vec<BasisVector>,
    basis: BasisKind,
    working_digits: u32,
    guard: u32,
    /// Columns carry p^scale times the true coordinates.
    scale: u32,
    /// Largest single p-power shift any division needed.
    shift_used: u32,
}

impl FrobMatrix {
    pub fn dim(&self) -> usize {
        self.cols.len()
    }

    pub fn cols(&self) -> &[BasisVector] {
        &self.cols
    }

    pub fn entry(&self, row: usize, col: usize) -> &ZqElem {
        &self.cols[col].coords[row]
    }

    pub fn basis(&self) -> BasisKind {
        self.basis
    }

    pub fn scale(&self) -> u32 {
        self.scale
    }

    pub fn guard(&self) -> u32 {
        self.guard
    }

    pub fn working_digits(&self) -> u32 {
        self.working_digits
    }

    pub fn shift_used(&self) -> u32 {
        self.shift_used
    }

    pub(crate) fn from_parts(
        cols: Vec<BasisVector>,
        basis: BasisKind,
        working_digits: u32,
        guard: u32,
        scale: u32,
        shift_used: u32,
    ) -> Self {
        FrobMatrix { cols, basis, working_digits, guard, scale, shift_used }
    }
}

#[derive(Default)]
struct ShiftTracker {
    max_shift: u32,
}

impl ShiftTracker {
    fn record(&mut self, shift: u32, guard: u32) -> Result<()> {
        if shift > guard {
            return Err(Error::GuardExhausted { shift, guard });
        }
        self.max_shift = self.max_shift.max(shift);
        Ok(())
    }
}

/// poly * 2 / d for a signed odd integer d: unit part by inversion, p-part
/// by shifting digits out.
fn divide_by_odd(
    curve: &LiftedCurve,
    poly: &ZqPoly,
    d: i64,
    tracker: &mut ShiftTracker,
) -> Result<ZqPoly> {
    let zq = &**curve.zq();
    debug_assert!(d != 0 && d % 2 != 0);
    let (e, unit) = zq.split_p_part(d.unsigned_abs());
    tracker.record(e, curve.plan().guard)?;
    let mut scale = zq.mul_scalar(&zq.from_int(2), zq.inv_scalar(unit)?);
    if d < 0 {
        scale = zq.neg(&scale);
    }
    let mut out = poly.mul_elem(zq, &scale);
    if e > 0 {
        out = ZqPoly::from_coeffs(zq, out.coeffs().iter().map(|c| zq.shift_down(c, e)).collect());
    }
    Ok(out)
}

/// One pole-order reduction: A dx/y^s to the cohomologous form at level
/// s - 2, for odd s >= 3.
pub fn reduce_pole_step(curve: &LiftedCurve, a: &ZqPoly, s: u64) -> Result<ZqPoly> {
    let mut tracker = ShiftTracker::default();
    pole_step(curve, a, s, &mut tracker)
}

fn pole_step(curve: &LiftedCurve, a: &ZqPoly, s: u64, tracker: &mut ShiftTracker) -> Result<ZqPoly> {
    assert!(s >= 3 && s % 2 == 1, "pole level must be odd and at least 3");
    let zq = &**curve.zq();
    if a.is_zero() {
        return Ok(ZqPoly::zero());
    }
    let (b, c) = curve.bezout().decompose(a);
    let term = divide_by_odd(curve, &c.derivative(zq), (s - 2) as i64, tracker)?;
    Ok(b.add(zq, &term))
}

/// One leading-term elimination for A dx/y at degree >= 2g; inputs of lower
/// degree pass through unchanged.
pub fn reduce_infinity_step(curve: &LiftedCurve, a: &ZqPoly) -> Result<ZqPoly> {
    let mut tracker = ShiftTracker::default();
    infinity_step(curve, a, BasisKind::YPowerOne, &mut tracker)
}

fn infinity_step(
    curve: &LiftedCurve,
    a: &ZqPoly,
    basis: BasisKind,
    tracker: &mut ShiftTracker,
) -> Result<ZqPoly> {
    let zq = &**curve.zq();
    let g = curve.genus();
    let deg = match a.degree() {
        None => return Ok(ZqPoly::zero()),
        Some(d) if d < 2 * g => return Ok(a.clone()),
        Some(d) => d,
    };
    let t = (deg - 2 * g) as i64;
    // leading coefficient of the relation at degree t + 2g
    let lead_num: i64 = match basis {
        BasisKind::YPowerOne => 2 * t + 2 * g as i64 + 1,
        BasisKind::YPowerThree => 2 * t - 2 * g as i64 - 1,
    };
    let factor =
        divide_by_odd(curve, &ZqPoly::from_coeffs(zq, vec![a.coeff(zq, deg)]), lead_num, tracker)?;
    let factor = factor.coeff(zq, 0);
    // subtract factor * (t x^(t-1) P +/- x^t P'/2)
    let mut out = a.clone();
    if t > 0 {
        let scaled = curve
            .ptilde()
            .mul_elem(zq, &zq.mul_scalar(&factor, t as u64))
            .shift_x(zq, t as usize - 1);
        out = out.sub(zq, &scaled);
    }
    let half = zq.inv(&zq.from_int(2)).expect("2 is a unit for odd p");
    let mut dhalf = zq.mul(&factor, &half);
    if matches!(basis, BasisKind::YPowerThree) {
        dhalf = zq.neg(&dhalf);
    }
    let scaled = curve.ptilde_deriv().mul_elem(zq, &dhalf).shift_x(zq, t as usize);
    out = out.sub(zq, &scaled);
    // the top coefficient vanishes in exact arithmetic; force the invented
    // residue left by the truncated division to the same choice
    let mut coeffs = out.coeffs().to_vec();
    coeffs.resize(deg + 1, zq.zero());
    coeffs.truncate(deg);
    Ok(ZqPoly::from_coeffs(zq, coeffs))
}

/// Full cascade: largest pole index first, then the degree cascade at the
/// base level. The input must already be folded to nonnegative indices.
/// Returns the coordinates (times p^scale when the plan demands a scale).
pub fn reduce_to_basis(
    curve: &LiftedCurve,
    basis: BasisKind,
    form: &OddYForm,
) -> Result<BasisVector> {
    let mut tracker = ShiftTracker::default();
    reduce_with_tracker(curve, basis, form, &mut tracker)
}

fn reduce_with_tracker(
    curve: &LiftedCurve,
    basis: BasisKind,
    form: &OddYForm,
    tracker: &mut ShiftTracker,
) -> Result<BasisVector> {
    assert!(form.is_folded(), "fold positive y-powers before reducing");
    let zq = &**curve.zq();
    let g = curve.genus();
    let scale = effective_scale(curve, basis);
    let work = if scale > 0 { form.scale_residue(zq, zq.p_pow(scale)) } else { form.clone() };

    // base level of the cascade: pole index 0 for dx/y, 1 for dx/y^3
    let base = match basis {
        BasisKind::YPowerOne => 0i64,
        BasisKind::YPowerThree => 1,
    };
    let mut cur = ZqPoly::zero();
    if let Some(top) = work.max_pole() {
        for j in ((base + 1)..=top).rev() {
            if let Some(a) = work.terms().get(&j) {
                cur = cur.add(zq, a);
            }
            if !cur.is_zero() {
                cur = pole_step(curve, &cur, (2 * j + 1) as u64, tracker)?;
            }
        }
    }
    if let Some(a) = work.terms().get(&base) {
        cur = cur.add(zq, a);
    }
    if basis == BasisKind::YPowerThree {
        // a residual dx/y part rises to the y^3 level through y^2 = P
        if let Some(a) = work.terms().get(&0) {
            cur = cur.add(zq, &a.mul(zq, curve.ptilde()));
        }
    }
    while cur.degree().is_some_and(|d| d >= 2 * g) {
        cur = infinity_step(curve, &cur, basis, tracker)?;
    }
    let mut coords = cur.coeffs().to_vec();
    coords.resize(2 * g, zq.zero());
    Ok(BasisVector { coords })
}

pub(crate) fn effective_scale(curve: &LiftedCurve, basis: BasisKind) -> u32 {
    match basis {
        BasisKind::YPowerOne => curve.plan().scale,
        // the dx/y^3 basis carries an integral matrix for every p and g
        BasisKind::YPowerThree => 0,
    }
}

/// Column i is the reduced Frobenius image of the i-th basis differential;
/// columns are independent and computed in parallel.
pub fn frobenius_matrix(curve: &LiftedCurve, basis: BasisKind) -> Result<FrobMatrix> {
    let g = curve.genus();
    let k = curve.plan().series_trunc;
    let results: Vec<Result<(BasisVector, u32)>> = (0..2 * g)
        .into_par_iter()
        .map(|i| {
            let image = frobenius_image(curve, basis, i, k);
            let folded = curve.fold_into_poles(&image);
            let mut tracker = ShiftTracker::default();
            let col = reduce_with_tracker(curve, basis, &folded, &mut tracker)?;
            Ok((col, tracker.max_shift))
        })
        .collect();
    let mut cols = Vec::with_capacity(2 * g);
    let mut shift_used = 0;
    for r in results {
        let (col, shift) = r?;
        cols.push(col);
        shift_used = shift_used.max(shift);
    }
    Ok(FrobMatrix::from_parts(
        cols,
        basis,
        curve.plan().working_digits,
        curve.plan().guard,
        effective_scale(curve, basis),
        shift_used,
    ))
}

/// The exact differential d(C/y^(s-2)) as a form: C' dx/y^(s-2) minus
/// (s-2)/2 C P' dx/y^s. Reduces to zero; used by tests and the acceptance
/// suite.
pub fn exact_differential(curve: &LiftedCurve, c: &ZqPoly, s: u64) -> OddYForm {
    assert!(s >= 3 && s % 2 == 1);
    let zq = &**curve.zq();
    let mut form = OddYForm::zero();
    form.add_term(zq, ((s - 2 - 1) / 2) as i64, c.derivative(zq));
    let half = zq.inv(&zq.from_int(2)).expect("2 is a unit");
    let coeff = zq.neg(&zq.mul_scalar(&half, s - 2));
    form.add_term(zq, ((s - 1) / 2) as i64, c.mul(zq, curve.ptilde_deriv()).mul_elem(zq, &coeff));
    form
}
