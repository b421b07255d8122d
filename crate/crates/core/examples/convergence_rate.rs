//! Remainders of an atomic signal against `M / sqrt(m)`.

use slice_afd::afd::{rate_report, AtomicSignal, SearchConfig};
use slice_afd::fixtures::{random_ball_point, random_quaternion, rng};

fn main() -> slice_afd::Result<()> {
    let mut r = rng(19);
    let sig = AtomicSignal::new((0..8).map(|_| (random_ball_point(&mut r, 0.8), random_quaternion(&mut r))));
    let rep = rate_report(&sig, 30, 0.0, 256, &SearchConfig::default())?;
    println!("M = {:.4}, |f| = {:.4}", rep.mass, rep.signal_norm);
    println!("m,remainder_norm,bound,pass");
    for row in &rep.rows {
        println!("{},{:.6e},{:.6e},{}", row.m, row.remainder_norm, row.bound, row.pass);
    }
    Ok(())
}
