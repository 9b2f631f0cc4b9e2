//! Shared helpers for the benchmark targets.

use hyperzeta::{CurveSpec, LiftedCurve};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

/// Deterministic squarefree curve of the given genus over F_p.
pub fn sample_curve(seed: u64, p: u64, genus: usize) -> CurveSpec {
    let mut rng = StdRng::seed_from_u64(seed);
    loop {
        let deg = 2 * genus + 1;
        let mut coeffs: Vec<i64> = (0..deg).map(|_| rng.gen_range(0..p as i64)).collect();
        coeffs.push(1);
        let spec = CurveSpec::prime_field(p, &coeffs);
        if LiftedCurve::validate(&spec, None).is_ok() {
            return spec;
        }
    }
}
