//! Restricting the parameter search to one complex slice versus searching the whole ball.

use slice_afd::afd::{afd_decompose, SearchConfig};
use slice_afd::fixtures::{random_ball_point, random_quaternion, rng};
use slice_afd::hardy::szego_kernel;
use slice_afd::quat::UnitImaginary;
use slice_afd::series::SliceSeries;

fn main() {
    let mut r = rng(23);
    // kernels centred on different slices
    let f = (0..4).fold(SliceSeries::zero(256), |acc, _| {
        acc.add(&szego_kernel(random_ball_point(&mut r, 0.7), 256).mul_right(random_quaternion(&mut r)))
    });
    let full = afd_decompose(&f, 10, 0.0, &SearchConfig::default());
    let sliced = afd_decompose(
        &f,
        10,
        0.0,
        &SearchConfig {
            slice: Some(UnitImaginary::E1),
            ..Default::default()
        },
    );
    println!("m   full ball     slice C_e1");
    for m in 0..=10 {
        println!(
            "{m:>2}  {:.6e}  {:.6e}",
            full.remainder_norms()[m],
            sliced.remainder_norms()[m]
        );
    }
}
