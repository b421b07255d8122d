//! Szegő kernels reproduce point values: `⟨f, e_a⟩ = sqrt(1 - |a|^2) f(a)`.
//! The coefficient inner product is checked against boundary quadrature.

use slice_afd::fixtures::{random_ball_point, random_series, rng};
use slice_afd::hardy::{inner_product, inner_product_quadrature, szego_kernel};

fn main() {
    let mut r = rng(7);
    let n = 256;
    let f = random_series(&mut r, n, 1.0);
    for _ in 0..4 {
        let a = random_ball_point(&mut r, 0.9);
        let lhs = inner_product(&f, &szego_kernel(a, n));
        let rhs = f.eval(a.value()) * a.weight();
        println!(
            "|a| = {:.3}  <f,e_a> = {lhs}  deviation {:.2e}",
            a.norm(),
            (lhs - rhs).norm()
        );
    }

    let g = random_series(&mut r, 24, 1.0);
    let h = random_series(&mut r, 24, 1.0);
    let quad = inner_product_quadrature(&g, &h, 50, 16);
    println!("coefficients {}", inner_product(&g, &h));
    println!("quadrature   {}  slice spread {:.2e}", quad.value, quad.slice_spread);
}
