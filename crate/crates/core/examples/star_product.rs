//! The `*`-product of slice power series, its pointwise twist formula and the regular reciprocal.

use slice_afd::quat::Quaternion;
use slice_afd::series::{eval_reciprocal_star, eval_star_pointwise, SliceSeries};

fn main() -> slice_afd::Result<()> {
    // f = 1 + q e1, g = e2 + q
    let f = SliceSeries::new(vec![Quaternion::ONE, Quaternion::E1]).with_order(8);
    let g = SliceSeries::new(vec![Quaternion::E2, Quaternion::ONE]).with_order(8);

    let fg = f.star_mul(&g);
    let gf = g.star_mul(&f);
    println!("f*g coefficients: {:?}", &fg.coeffs()[..3]);
    println!("g*f coefficients: {:?}", &gf.coeffs()[..3]);

    let q = Quaternion::new(0.2, 0.1, -0.3, 0.4);
    println!("(f*g)(q) from series  = {}", fg.eval(q));
    println!("f(q) g(f(q)^-1 q f(q)) = {}", eval_star_pointwise(&f, &g, q));
    println!("f(q) g(q)             = {}  (not the same)", f.eval(q) * g.eval(q));

    println!("f^s = f*f^c = {:?}", &f.symmetrize().coeffs()[..3]);
    let inv = f.regular_reciprocal()?;
    let one = f.star_mul(&inv);
    println!(
        "f*f^-* - 1 max deviation: {:.3e}",
        one.max_abs_diff(&SliceSeries::one(8))
    );

    // f^-* * g at q without forming the reciprocal series
    let long = f.clone().with_order(64);
    let direct = long.regular_reciprocal()?.star_mul(&g.clone().with_order(64)).eval(q);
    println!(
        "(f^-* * g)(q): pointwise {}  series {}",
        eval_reciprocal_star(&f, &g, q)?,
        direct
    );
    Ok(())
}
