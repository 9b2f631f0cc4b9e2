//! Working-precision selection.
//!
//! The numerator coefficient a_i is pinned by its residue once the residue
//! modulus exceeds twice the Weil bound binom(2g,i) q^(i/2); i = g dominates.
//! On top of those target digits the plan adds guard digits absorbing the
//! p-power divisions of the reduction cascade, and, for p <= 2g+1 where the
//! dx/y basis need not carry an integral Frobenius matrix, a scale exponent:
//! every basis coordinate is carried multiplied by p^scale so that it stays
//! representable in fixed point. The lift of a_i strips p^(n*scale*i)
//! again; i = g is the deepest strip that must keep all N digits, so the
//! scale contributes n*scale*g extra working digits.

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrecisionPlan {
    /// N: digits that pin every a_i, i <= g.
    pub target_digits: u32,
    /// Extra digits absorbing division losses in the reductions.
    pub guard: u32,
    /// Basis coordinates are carried as p^scale times their true value.
    pub scale: u32,
    /// Nw = target + guard + n * scale * genus.
    pub working_digits: u32,
    /// K: the Frobenius series keeps terms 0..=K.
    pub series_trunc: u32,
    /// Largest pole index the truncated series produces.
    pub max_pole: u64,
}

impl PrecisionPlan {
    /// Digits trusted after the cascade: Nw - guard.
    pub fn trusted_digits(&self) -> u32 {
        self.working_digits - self.guard
    }
}

/// Smallest e >= 0 with p^e >= x.
fn ceil_log(p: u64, x: u128) -> u32 {
    let mut e = 0;
    let mut acc: u128 = 1;
    while acc < x {
        acc *= p as u128;
        e += 1;
    }
    e
}

fn binomial(n: u64, k: u64) -> u128 {
    let k = k.min(n - k);
    let mut num: u128 = 1;
    for i in 0..k {
        num = num
            .checked_mul((n - i) as u128)
            .expect("binomial overflow: genus far beyond supported range");
        num /= (i + 1) as u128;
    }
    num
}

/// Minimal N with p^N > 2 binom(2g,g) q^(g/2), decided exactly by squaring
/// both sides.
fn uniqueness_digits(genus: u32, p: u64, n: usize) -> u32 {
    let central = binomial(2 * genus as u64, genus as u64);
    // bound^2 = 4 C^2 q^g with q = p^n
    let mut bound2 = 4u128
        .checked_mul(central * central)
        .expect("Weil bound overflow");
    for _ in 0..(genus as usize * n) {
        bound2 = bound2.checked_mul(p as u128).expect("Weil bound overflow");
    }
    let mut digits = 1u32;
    let mut p2n: u128 = (p as u128) * (p as u128); // p^(2N)
    while p2n <= bound2 {
        digits += 1;
        p2n = p2n
            .checked_mul(p as u128)
            .and_then(|x| x.checked_mul(p as u128))
            .expect("precision requirement overflow");
    }
    digits
}

/// The default plan: uniqueness digits, guard from the pole-index bound,
/// truncation K = Nw - 1, iterated to a fixed point (guard grows only
/// logarithmically with K, so the iteration settles).
pub fn required_precision(genus: u32, p: u64, n: usize) -> PrecisionPlan {
    build_plan(genus, p, n, None, GuardOverride::None, None)
        .expect("default plan construction cannot fail")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GuardOverride {
    None,
    /// Extra digits on top of the formula value.
    Relative(u32),
    /// Absolute count; refused when below the formula value.
    Absolute(u32),
}

/// Plan with optional user overrides. Overrides may only strengthen the
/// defaults, except the truncation order which is an experiment knob.
pub fn plan_with_overrides(
    genus: u32,
    p: u64,
    n: usize,
    precision: Option<u32>,
    guard: GuardOverride,
    trunc: Option<u32>,
) -> Result<PrecisionPlan> {
    build_plan(genus, p, n, precision, guard, trunc)
}

fn build_plan(
    genus: u32,
    p: u64,
    n: usize,
    precision: Option<u32>,
    guard_override: GuardOverride,
    trunc: Option<u32>,
) -> Result<PrecisionPlan> {
    if genus < 1 {
        return Err(Error::WrongDegree { expected: "genus at least 1".into(), got: 0 });
    }
    if p < 3 || p.is_multiple_of(2) {
        return Err(Error::EvenCharacteristic);
    }
    if !crate::padic::is_prime_u64(p) {
        return Err(Error::NotPrime(p));
    }
    let needed = uniqueness_digits(genus, p, n);
    let target = match precision {
        None => needed,
        Some(v) if v >= needed => v,
        Some(v) => {
            return Err(Error::BadOverride(format!(
                "precision {} below the uniqueness requirement {}",
                v, needed
            )))
        }
    };
    let scale = basis_denominator_bound(genus, p);
    let scale_digits = scale * n as u32 * genus;

    let guard_formula = |k: u32| -> (u32, u64) {
        let jmax = (p * (2 * k as u64 + 1) - 1) / 2;
        let a = ceil_log(p, (2 * genus as u128 + 1) * (jmax as u128 + 1));
        let b = ceil_log(p, 2 * jmax as u128 + 1);
        (a + b + 1, jmax)
    };

    if let Some(k) = trunc {
        if k == 0 {
            return Err(Error::BadOverride("truncation order must be at least 1".into()));
        }
        let (mut g, jmax) = guard_formula(k);
        g = apply_guard_override(g, guard_override)?;
        return Ok(PrecisionPlan {
            target_digits: target,
            guard: g,
            scale,
            working_digits: target + g + scale_digits,
            series_trunc: k,
            max_pole: jmax,
        });
    }

    let mut guard = 2u32;
    for _ in 0..64 {
        let nw = target + guard + scale_digits;
        let (next, _) = guard_formula(nw - 1);
        if next == guard {
            break;
        }
        guard = next;
    }
    let guard = apply_guard_override(guard, guard_override)?;
    let nw = target + guard + scale_digits;
    let (_, jmax) = guard_formula(nw - 1);
    Ok(PrecisionPlan {
        target_digits: target,
        guard,
        scale,
        working_digits: nw,
        series_trunc: nw - 1,
        max_pole: jmax,
    })
}

/// Denominator bound for the dx/y basis. For p > 2g+1 the Frobenius matrix
/// is integral outright. Below that, the k-th series term sits at pole index
/// j_k = (p(2k+1)-1)/2 carrying k+1 factors of p, and its reduction clears
/// its denominator after multiplication by p^d with
/// p^d >= (2g+1)(j_k+1) - 2; the worst shortfall over k bounds the matrix
/// denominator. The shortfall decays in k, so a short scan suffices.
fn basis_denominator_bound(genus: u32, p: u64) -> u32 {
    if p > 2 * genus as u64 + 1 {
        return 0;
    }
    let mut worst = 0i64;
    for k in 0u64..64 {
        let jk = (p * (2 * k + 1) - 1) / 2;
        let d = ceil_log(p, (2 * genus as u128 + 1) * (jk as u128 + 1) - 2) as i64;
        worst = worst.max(d - (k as i64 + 1));
        if (k as i64 + 1) > d + worst {
            break;
        }
    }
    worst.max(0) as u32
}

fn apply_guard_override(formula: u32, ov: GuardOverride) -> Result<u32> {
    match ov {
        GuardOverride::None => Ok(formula),
        GuardOverride::Relative(extra) => Ok(formula + extra),
        GuardOverride::Absolute(v) if v >= formula => Ok(v),
        GuardOverride::Absolute(v) => Err(Error::BadOverride(format!(
            "guard {} below the formula value {}",
            v, formula
        ))),
    }
}
