//! The backward shift splits `f = e_a ⟨f, e_a⟩ + B_a * S_a f`.

use slice_afd::fixtures::{random_ball_point, random_series, rng};
use slice_afd::hardy::{backward_shift_parts, blaschke_factor, szego_kernel};

fn main() {
    let mut r = rng(5);
    let n = 128;
    let f = random_series(&mut r, n, 1.0);
    let a = random_ball_point(&mut r, 0.8);
    let parts = backward_shift_parts(&f, a);

    let rebuilt = szego_kernel(a, n)
        .mul_right(parts.coefficient)
        .add(&blaschke_factor(a, n).star_mul(&parts.shifted));
    let dev = rebuilt.with_order(n - 1).max_abs_diff(&f.clone().with_order(n - 1));
    println!("reconstruction deviation {dev:.2e}");
    println!(
        "|S_a f|^2 = {:.12}   |f|^2 - |<f,e_a>|^2 = {:.12}",
        parts.shifted.norm_sqr(),
        f.norm_sqr() - parts.coefficient.norm_sqr()
    );
}
