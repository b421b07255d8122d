//! Seeded random inputs shared by the verification suites, tests and examples.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::hardy::BallPoint;
use crate::quat::{Quaternion, UnitImaginary};
use crate::series::SliceSeries;

pub type FixtureRng = ChaCha8Rng;

pub fn rng(seed: u64) -> FixtureRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Components uniform in `[-1, 1]`.
pub fn random_quaternion<R: Rng>(r: &mut R) -> Quaternion {
    Quaternion::new(
        r.gen_range(-1.0..1.0),
        r.gen_range(-1.0..1.0),
        r.gen_range(-1.0..1.0),
        r.gen_range(-1.0..1.0),
    )
}

/// Uniform on the unit sphere `S^3`.
pub fn random_unit_quaternion<R: Rng>(r: &mut R) -> Quaternion {
    loop {
        let q = random_quaternion(r);
        let n = q.norm();
        if n > 1e-3 && n <= 1.0 {
            return q * (1.0 / n);
        }
    }
}

pub fn random_imaginary<R: Rng>(r: &mut R) -> UnitImaginary {
    loop {
        let v = [r.gen_range(-1.0..1.0), r.gen_range(-1.0..1.0), r.gen_range(-1.0..1.0)];
        let n2 = v.iter().map(|x| x * x).sum::<f64>();
        if n2 > 1e-6 && n2 <= 1.0 {
            return UnitImaginary::new(v).expect("nonzero direction");
        }
    }
}

/// Uniform (by volume) in the closed 4-ball of the given radius.
pub fn random_ball_point<R: Rng>(r: &mut R, radius: f64) -> BallPoint {
    let dir = random_unit_quaternion(r);
    let rho = radius * r.gen::<f64>().powf(0.25);
    BallPoint::new(dir * rho).expect("radius below one")
}

/// Coefficients with components uniform in `[-scale, scale]`.
pub fn random_series<R: Rng>(r: &mut R, order: usize, scale: f64) -> SliceSeries {
    SliceSeries::new((0..=order).map(|_| random_quaternion(r) * scale).collect())
}

/// Dominant constant term (`|a_0| >= min_a0`) with geometrically decaying tail,
/// so that the series has no zeros in the closed unit ball.
pub fn random_nonvanishing_series<R: Rng>(r: &mut R, order: usize, min_a0: f64) -> SliceSeries {
    let a0 = random_unit_quaternion(r) * r.gen_range(min_a0..=1.0f64.max(min_a0));
    let m = a0.norm();
    let mut coeffs = vec![a0];
    let mut w = 0.4 * m / 2.0;
    for _ in 1..=order {
        coeffs.push(random_quaternion(r) * w);
        w *= 0.4;
    }
    SliceSeries::new(coeffs)
}

/// Polynomial of the given degree with random coefficients, padded to `order`.
pub fn random_polynomial<R: Rng>(r: &mut R, degree: usize, order: usize) -> SliceSeries {
    random_series(r, degree, 1.0).with_order(order)
}
