//! From the Frobenius matrix to the zeta numerator Q(t), the point counts
//! and the Jacobian group order.
//!
//! The q-power matrix is the sigma-twisted product of n copies of the
//! p-power matrix. Its reversed characteristic polynomial det(I - tM) is
//! computed by the Berkowitz scheme, which never divides, so entries
//! divisible by p are harmless. Each coefficient is a rational integer
//! residue; the Weil bound |a_i| <= binom(2g,i) q^(i/2) pins the integer
//! for i <= g, and the functional equation a_(g+i) = q^i a_(g-i) fills the
//! rest.

use std::time::Instant;

use crate::curve::LiftedCurve;
use crate::error::{Error, Result};
use crate::frobenius::BasisKind;
use crate::padic::{PadicParams, ZqElem};
use crate::precision::PrecisionPlan;
use crate::reduce::{frobenius_matrix, BasisVector, FrobMatrix};

/// Everything a run reports.
#[derive(Clone, Debug)]
pub struct ZetaResult {
    /// Q(t) coefficients, constant term first; Q(0) = 1.
    pub numerator: Vec<i128>,
    /// Q(1), the Jacobian group order.
    pub group_order: i128,
    /// Point counts over the extension of degree m for m = 1..=g+1.
    pub counts: Vec<i128>,
    pub plan: PrecisionPlan,
    pub basis: BasisKind,
    /// Largest single digit shift any division needed.
    pub shift_used: u32,
    pub timings: Timings,
}

#[derive(Clone, Copy, Debug, Default)]
pub struct Timings {
    /// Frobenius images and reduction to the basis.
    pub matrix_us: u128,
    /// Sigma-twisted product and characteristic polynomial.
    pub charpoly_us: u128,
    /// Weil lift, counts, checks.
    pub lift_us: u128,
    pub total_us: u128,
}

/// The product M = Phi^(sigma^(n-1)) ... Phi^sigma Phi. For n = 1 this is
/// Phi itself. The output scale is n times the input scale.
pub fn q_power_matrix(zq: &PadicParams, phi: &FrobMatrix) -> FrobMatrix {
    let n = zq.extension_degree();
    let d = phi.dim();
    let mut rows = to_rows(phi);
    let base = to_rows(phi);
    for _ in 1..n {
        let twisted = map_entries(&rows, |e| zq.frobenius(e));
        rows = mat_mul(zq, &twisted, &base);
    }
    let cols = (0..d)
        .map(|c| BasisVector::from_coords((0..d).map(|r| rows[r][c].clone()).collect()))
        .collect();
    FrobMatrix::from_parts(
        cols,
        phi.basis(),
        phi.working_digits(),
        phi.guard(),
        phi.scale() * n as u32,
        phi.shift_used(),
    )
}

fn to_rows(m: &FrobMatrix) -> Vec<Vec<ZqElem>> {
    let d = m.dim();
    (0..d).map(|r| (0..d).map(|c| m.entry(r, c).clone()).collect()).collect()
}

fn map_entries(m: &[Vec<ZqElem>], f: impl Fn(&ZqElem) -> ZqElem) -> Vec<Vec<ZqElem>> {
    m.iter().map(|row| row.iter().map(&f).collect()).collect()
}

fn mat_mul(zq: &PadicParams, a: &[Vec<ZqElem>], b: &[Vec<ZqElem>]) -> Vec<Vec<ZqElem>> {
    let d = a.len();
    let mut out = vec![vec![zq.zero(); d]; d];
    for r in 0..d {
        for c in 0..d {
            let mut acc = zq.zero();
            for k in 0..d {
                acc = zq.add(&acc, &zq.mul(&a[r][k], &b[k][c]));
            }
            out[r][c] = acc;
        }
    }
    out
}

/// Coefficients of det(I - tM), constant first, by the Berkowitz scheme:
/// the coefficient vector of each leading principal submatrix is a Toeplitz
/// image of the previous one, built from the Krylov products row * M^k * col.
pub fn charpoly_reversed(zq: &PadicParams, m: &FrobMatrix) -> Vec<ZqElem> {
    let rows = to_rows(m);
    let d = rows.len();
    assert!(d >= 1);
    let mut coeffs = vec![zq.one(), zq.neg(&rows[0][0])];
    for i in 1..d {
        // Toeplitz column: 1, -corner, -(row col), -(row M col), ...
        let corner = &rows[i][i];
        let row: Vec<&ZqElem> = (0..i).map(|k| &rows[i][k]).collect();
        let mut krylov: Vec<ZqElem> = (0..i).map(|k| rows[k][i].clone()).collect();
        let mut toeplitz = Vec::with_capacity(i + 2);
        toeplitz.push(zq.one());
        toeplitz.push(zq.neg(corner));
        for _ in 0..i {
            let mut dot = zq.zero();
            for (rk, kk) in row.iter().zip(&krylov) {
                dot = zq.add(&dot, &zq.mul(rk, kk));
            }
            toeplitz.push(zq.neg(&dot));
            let mut next = vec![zq.zero(); i];
            for (r, slot) in next.iter_mut().enumerate() {
                let mut acc = zq.zero();
                for k in 0..i {
                    acc = zq.add(&acc, &zq.mul(&rows[r][k], &krylov[k]));
                }
                *slot = acc;
            }
            krylov = next;
        }
        // truncated convolution of the Toeplitz column with the old vector
        let mut next = vec![zq.zero(); i + 2];
        for (j, c) in coeffs.iter().enumerate() {
            for (k, t) in toeplitz.iter().enumerate() {
                if j + k < i + 2 {
                    next[j + k] = zq.add(&next[j + k], &zq.mul(c, t));
                }
            }
        }
        coeffs = next;
    }
    coeffs
}

/// The unique integer congruent to `residue` mod `modulus` with
/// a^2 < bound_sq, or a^2 = bound_sq and a > 0 (the window (-B, B]).
pub(crate) fn weil_lift(residue: u64, modulus: u64, bound_sq: u128) -> Option<i128> {
    let mut found = None;
    for cand in [residue as i128, residue as i128 - modulus as i128] {
        let sq = (cand * cand) as u128;
        let inside = sq < bound_sq || (sq == bound_sq && cand > 0);
        if inside {
            if found.is_some() {
                return None; // window wider than the modulus: precision bug
            }
            found = Some(cand);
        }
    }
    found
}

fn binomial_u128(n: u64, k: u64) -> u128 {
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

/// Recover Q(t) from the q-power matrix: Berkowitz, descale by the column
/// scale, reject extension components, lift a_1..a_g through the Weil
/// window and fill the rest by the functional equation. Every emitted Q is
/// re-checked against the bounds and the computed residues.
pub fn lift_numerator(
    zq: &PadicParams,
    plan: &PrecisionPlan,
    matrix: &FrobMatrix,
) -> Result<Vec<i128>> {
    let d = matrix.dim();
    let genus = (d / 2) as u64;
    let n_target = plan.target_digits;
    let pn = zq.p_pow(n_target);
    let q: u128 = (zq.p() as u128).pow(zq.extension_degree() as u32);
    let raw = charpoly_reversed(zq, matrix);
    assert_eq!(raw.len(), d + 1);
    assert_eq!(raw[0], zq.one(), "det(I - tM) must have constant term 1");

    // strip the scale: coefficient i of det(I - tM) carries scale * i digits
    let scale = matrix.scale();
    let descaled: Vec<ZqElem> =
        raw.iter().enumerate().map(|(i, c)| zq.shift_down(c, scale * i as u32)).collect();

    let mut coeffs = vec![0i128; d + 1];
    coeffs[0] = 1;
    for i in 1..=genus as usize {
        let c = &descaled[i];
        // a rational integer: every extension coordinate vanishes
        for &ext in &c.coeffs()[1..] {
            if ext % pn != 0 {
                return Err(Error::NotRational { index: i });
            }
        }
        let residue = c.coeffs()[0] % pn;
        let bound_sq = binomial_u128(2 * genus, i as u64).pow(2) * q.pow(i as u32);
        coeffs[i] =
            weil_lift(residue, pn, bound_sq).ok_or(Error::LiftAmbiguous { index: i, residue })?;
    }
    for i in 1..=genus as usize {
        coeffs[genus as usize + i] = q.pow(i as u32) as i128 * coeffs[genus as usize - i];
    }

    // consistency of the filled half against the computed residues, at
    // whatever digits survive the deeper descaling
    for i in genus as usize + 1..=d {
        let avail =
            plan.working_digits as i64 - plan.guard as i64 - (scale * i as u32) as i64;
        let digits = (avail.min(n_target as i64)).max(0) as u32;
        if digits == 0 {
            continue;
        }
        let pd = zq.p_pow(digits);
        let c = &descaled[i];
        for &ext in &c.coeffs()[1..] {
            if ext % pd != 0 {
                return Err(Error::NotRational { index: i });
            }
        }
        let residue = (c.coeffs()[0] % pd) as i128;
        let expect = coeffs[i].rem_euclid(pd as i128);
        assert_eq!(
            residue, expect,
            "functional equation disagrees with the computed residue of a_{}",
            i
        );
    }
    // Weil bounds hold for the whole emitted numerator
    for (i, &a) in coeffs.iter().enumerate() {
        let bound_sq = binomial_u128(2 * genus, i as u64).pow(2) * q.pow(i as u32);
        let sq = (a * a) as u128;
        assert!(
            sq < bound_sq || (sq == bound_sq && a > 0),
            "emitted a_{} = {} violates its Weil bound",
            i,
            a
        );
    }
    Ok(coeffs)
}

/// #X(F_(q^m)) = q^m + 1 - s_m with s_m the m-th power sum of the inverse
/// roots of Q, from the Newton identities on the coefficients.
pub fn counts_from_numerator(numerator: &[i128], q: u128, m: u32) -> i128 {
    assert!(m >= 1);
    let d = numerator.len() - 1;
    let a = |i: usize| -> i128 {
        if i <= d {
            numerator[i]
        } else {
            0
        }
    };
    let mut sums = vec![0i128; m as usize + 1];
    for k in 1..=m as usize {
        let mut s = if k <= d { -(k as i128) * a(k) } else { 0 };
        for i in 1..k {
            s -= a(i) * sums[k - i];
        }
        sums[k] = s;
    }
    (q.pow(m) as i128) + 1 - sums[m as usize]
}

/// The full pipeline on a validated curve.
pub fn assemble_zeta(curve: &LiftedCurve, basis: BasisKind) -> Result<ZetaResult> {
    let zq = &**curve.zq();
    let plan = *curve.plan();
    let genus = curve.genus();
    let t0 = Instant::now();

    let phi = frobenius_matrix(curve, basis)?;
    let t1 = Instant::now();

    let m = q_power_matrix(zq, &phi);
    let numerator = lift_numerator(zq, &plan, &m)?;
    let t2 = Instant::now();

    // determinant of the q-power matrix is q^genus, visible in the top
    // coefficient of det(I - tM) once the scale is stripped
    let q: u128 = (zq.p() as u128).pow(zq.extension_degree() as u32);
    let det_shift = m.scale() * 2 * genus as u32;
    let avail = plan.working_digits as i64 - plan.guard as i64 - det_shift as i64;
    let check_digits = avail.min(plan.target_digits as i64).max(0) as u32;
    if check_digits >= 1 {
        let det_expect = zq.pow(
            &zq.from_int(zq.p() as i64),
            (zq.extension_degree() * genus) as u64,
        );
        let det_got = zq.shift_down(&charpoly_reversed(zq, &m)[2 * genus], det_shift);
        assert_eq!(
            zq.reduce_precision(&det_got, check_digits)?,
            zq.reduce_precision(&det_expect, check_digits)?,
            "det(q-power matrix) must be q^g"
        );
    }

    let group_order: i128 = numerator.iter().sum();
    assert!(group_order > 0, "the Jacobian order Q(1) must be positive");
    let counts: Vec<i128> =
        (1..=genus as u32 + 1).map(|mm| counts_from_numerator(&numerator, q, mm)).collect();
    let t3 = Instant::now();

    Ok(ZetaResult {
        numerator,
        group_order,
        counts,
        plan,
        basis,
        shift_used: phi.shift_used(),
        timings: Timings {
            matrix_us: (t1 - t0).as_micros(),
            charpoly_us: (t2 - t1).as_micros(),
            lift_us: (t3 - t2).as_micros(),
            total_us: (t3 - t0).as_micros(),
        },
    })
}
