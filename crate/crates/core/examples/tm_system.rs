//! Blaschke products and the Takenaka–Malmquist system: orthonormal for any parameters,
//! the monomials `q^k` when every parameter is zero.

use slice_afd::fixtures::{random_ball_point, random_imaginary, rng};
use slice_afd::hardy::{blaschke_eval, BallPoint, TmSystem};

fn main() {
    let mut r = rng(11);
    let mut params: Vec<BallPoint> = (0..8).map(|_| random_ball_point(&mut r, 0.9)).collect();
    params.push(params[7]);
    let tm = TmSystem::new(&params, 256);
    println!(
        "{} functions, Gram deviation from identity {:.2e}",
        tm.len(),
        tm.gram_deviation()
    );

    let fourier = TmSystem::new(&[BallPoint::ORIGIN; 4], 8);
    for (k, t) in fourier.tm_functions().iter().enumerate() {
        let nonzero: Vec<usize> = (0..=8).filter(|&n| !t.coeff(n).is_zero()).collect();
        println!("T_{} has nonzero coefficients at {nonzero:?}", k + 1);
    }

    let a = params[0];
    for t in [0.0, 1.0, 2.5] {
        let z = random_imaginary(&mut r).exp(t);
        println!("|B_a(e^(It))| - 1 = {:.2e}", blaschke_eval(a, z).norm() - 1.0);
    }
}
