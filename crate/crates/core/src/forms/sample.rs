//! Reproducible random forms and maps for property checks.

use rand::Rng;

use super::discriminant::discriminant_exact;
use super::form::BinaryForm;
use super::map::LinearMap;

/// Integer form of the given degree with coefficients uniform in
/// `[-bound, bound]`, rejection-sampled until the discriminant is nonzero.
pub fn random_integer_form<R: Rng + ?Sized>(rng: &mut R, degree: usize, bound: i64) -> BinaryForm {
    loop {
        let coeffs: Vec<i64> = (0..=degree).map(|_| rng.gen_range(-bound..=bound)).collect();
        let Ok(f) = BinaryForm::from_integers(&coeffs) else { continue };
        if discriminant_exact(&f).is_ok_and(|d| d != num_traits::Zero::zero()) {
            return f;
        }
    }
}

/// Real 2x2 map with entries uniform in `[-2, 2]` and `|det|` in
/// `[det_min, det_max]`.
pub fn random_real_map<R: Rng + ?Sized>(rng: &mut R, det_min: f64, det_max: f64) -> LinearMap {
    loop {
        let e: [f64; 4] = std::array::from_fn(|_| rng.gen_range(-2.0..=2.0));
        let det = (e[0] * e[3] - e[1] * e[2]).abs();
        if (det_min..=det_max).contains(&det) {
            return LinearMap::from_f64(e[0], e[1], e[2], e[3]).expect("finite entries");
        }
    }
}

/// Integer map with entries in `[-bound, bound]` and nonzero determinant.
pub fn random_integer_map<R: Rng + ?Sized>(rng: &mut R, bound: i64) -> LinearMap {
    loop {
        let e: [i64; 4] = std::array::from_fn(|_| rng.gen_range(-bound..=bound));
        if e[0] * e[3] != e[1] * e[2] {
            return LinearMap::from_integers(e[0], e[1], e[2], e[3]);
        }
    }
}

/// Product of random elementary integer shears and swaps, so the result
/// lies in GL2(Z).
pub fn random_unimodular_map<R: Rng + ?Sized>(rng: &mut R, steps: usize) -> LinearMap {
    let mut m = LinearMap::identity();
    for _ in 0..steps {
        let t: i64 = rng.gen_range(-3..=3);
        let g = match rng.gen_range(0..3) {
            0 => LinearMap::from_integers(1, t, 0, 1),
            1 => LinearMap::from_integers(1, 0, t, 1),
            _ => LinearMap::from_integers(0, 1, 1, 0),
        };
        m = m.product(&g);
    }
    m
}
