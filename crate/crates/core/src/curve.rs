//! Curve model, validation, and differential forms odd in y.
//!
//! The affine model is y^2 = P(x) with P monic, squarefree, of odd degree
//! 2g+1; the smooth projective model adds one point at infinity. Only the
//! eigenspace of forms odd in y matters for the zeta function, so the one
//! form type carries sums A_j(x) dx / y^(2j+1) indexed by the pole order j.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::padic::{PadicParams, ZqElem};
use crate::poly::{BezoutContext, ZqPoly};
use crate::precision::{required_precision, PrecisionPlan};

/// Raw curve input: F_q coefficients given by their F_p coordinates,
/// constant term first, 2g+2 entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveSpec {
    pub p: u64,
    pub n: usize,
    /// Optional extension modulus, n+1 integers, constant first.
    pub modulus: Option<Vec<i64>>,
    /// Coefficients of P(x), each a vector of at most n F_p coordinates.
    pub coeffs: Vec<Vec<i64>>,
}

impl CurveSpec {
    /// Convenience constructor for prime fields.
    pub fn prime_field(p: u64, coeffs: &[i64]) -> Self {
        CurveSpec {
            p,
            n: 1,
            modulus: None,
            coeffs: coeffs.iter().map(|&c| vec![c]).collect(),
        }
    }

    pub fn genus(&self) -> Result<usize> {
        let len = self.coeffs.len();
        if len < 4 || !len.is_multiple_of(2) {
            return Err(Error::WrongDegree {
                expected: "an even count 2g+2 >= 4 of coefficients".into(),
                got: len,
            });
        }
        Ok((len - 2) / 2)
    }
}

/// The curve lifted to working precision: P, P', E = P^sigma(x^p) - P(x)^p
/// and the Bezout pair for (P, P'), all fixed for the run.
#[derive(Debug)]
pub struct LiftedCurve {
    zq: Arc<PadicParams>,
    plan: PrecisionPlan,
    genus: usize,
    ptilde: ZqPoly,
    ptilde_deriv: ZqPoly,
    e_poly: ZqPoly,
    bezout: BezoutContext,
}

impl LiftedCurve {
    /// Checks every model hypothesis and builds the lift. Each failure names
    /// the violated hypothesis; `plan` defaults from the curve parameters.
    pub fn validate(spec: &CurveSpec, plan: Option<PrecisionPlan>) -> Result<Self> {
        if spec.p < 3 || spec.p.is_multiple_of(2) {
            return Err(Error::EvenCharacteristic);
        }
        if !crate::padic::is_prime_u64(spec.p) {
            return Err(Error::NotPrime(spec.p));
        }
        let genus = spec.genus()?;
        let plan = plan.unwrap_or_else(|| required_precision(genus as u32, spec.p, spec.n));
        let zq = PadicParams::new(
            spec.p,
            spec.n,
            plan.working_digits,
            spec.modulus.as_deref(),
        )?;

        // digit lift: reduce every coordinate into [0, p) and reuse it
        let p = spec.p;
        let mut lifted = Vec::with_capacity(spec.coeffs.len());
        for coord in &spec.coeffs {
            if coord.len() > spec.n {
                return Err(Error::Parse {
                    position: "coefficient".into(),
                    message: format!(
                        "{} coordinates given for extension degree {}",
                        coord.len(),
                        spec.n
                    ),
                });
            }
            let digits: Vec<i64> =
                coord.iter().map(|&x| (x as i128).rem_euclid(p as i128) as i64).collect();
            lifted.push(zq.from_coords(&digits));
        }
        let leading = lifted.last().unwrap();
        if *leading != zq.one() {
            return Err(Error::NotMonic);
        }
        let ptilde = ZqPoly::from_coeffs(&zq, lifted);
        debug_assert_eq!(ptilde.degree(), Some(2 * genus + 1));
        let ptilde_deriv = ptilde.derivative(&zq);

        // squarefreeness of the reduction is exactly what makes the Bezout
        // pair exist
        let bezout = BezoutContext::new(zq.clone(), &ptilde, &ptilde_deriv)?;

        let e_poly = {
            let frob = ptilde.frobenius_coeffs(&zq);
            let sub = frob.compose_x_pow(&zq, p as usize);
            let pow = ptilde.pow(&zq, p);
            let e = sub.sub(&zq, &pow);
            assert!(
                e.coeffs().iter().all(|c| zq.divisible(c, 1)),
                "E must vanish mod p coefficientwise"
            );
            e
        };

        Ok(LiftedCurve { zq, plan, genus, ptilde, ptilde_deriv, e_poly, bezout })
    }

    pub fn zq(&self) -> &Arc<PadicParams> {
        &self.zq
    }

    pub fn plan(&self) -> &PrecisionPlan {
        &self.plan
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn ptilde(&self) -> &ZqPoly {
        &self.ptilde
    }

    pub fn ptilde_deriv(&self) -> &ZqPoly {
        &self.ptilde_deriv
    }

    pub fn e_poly(&self) -> &ZqPoly {
        &self.e_poly
    }

    pub fn bezout(&self) -> &BezoutContext {
        &self.bezout
    }

    /// Rewrites terms with positive y-powers (j < 0) through y^2 = P(x),
    /// folding A y^(2m-1) dx into A P^m dx / y. Idempotent.
    pub fn fold_into_poles(&self, form: &OddYForm) -> OddYForm {
        let zq = &*self.zq;
        let mut out = OddYForm::zero();
        for (&j, a) in &form.terms {
            if j >= 0 {
                out.add_term(zq, j, a.clone());
            } else {
                let m = (-j) as u64;
                let folded = a.mul(zq, &self.ptilde.pow(zq, m));
                out.add_term(zq, 0, folded);
            }
        }
        out
    }
}

/// A finite sum of A_j(x) dx / y^(2j+1); absent indices mean zero. Negative
/// j denotes positive powers of y (y^(2|j|-1) dx).
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct OddYForm {
    terms: BTreeMap<i64, ZqPoly>,
}

impl OddYForm {
    pub fn zero() -> Self {
        OddYForm { terms: BTreeMap::new() }
    }

    pub fn from_term(j: i64, a: ZqPoly) -> Self {
        let mut f = Self::zero();
        if !a.is_zero() {
            f.terms.insert(j, a);
        }
        f
    }

    pub fn terms(&self) -> &BTreeMap<i64, ZqPoly> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn max_pole(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn is_folded(&self) -> bool {
        self.terms.keys().next().is_none_or(|&j| j >= 0)
    }

    pub fn add_term(&mut self, zq: &PadicParams, j: i64, a: ZqPoly) {
        if a.is_zero() {
            return;
        }
        match self.terms.remove(&j) {
            None => {
                self.terms.insert(j, a);
            }
            Some(old) => {
                let sum = old.add(zq, &a);
                if !sum.is_zero() {
                    self.terms.insert(j, sum);
                }
            }
        }
    }

    pub fn add(&self, zq: &PadicParams, other: &Self) -> Self {
        let mut out = self.clone();
        for (&j, a) in &other.terms {
            out.add_term(zq, j, a.clone());
        }
        out
    }

    pub fn scale(&self, zq: &PadicParams, c: &ZqElem) -> Self {
        let mut out = Self::zero();
        for (&j, a) in &self.terms {
            out.add_term(zq, j, a.mul_elem(zq, c));
        }
        out
    }

    pub fn scale_residue(&self, zq: &PadicParams, s: u64) -> Self {
        let mut out = Self::zero();
        for (&j, a) in &self.terms {
            out.add_term(zq, j, a.mul_residue(zq, s));
        }
        out
    }
}
