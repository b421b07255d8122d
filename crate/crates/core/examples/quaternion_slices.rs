//! Quaternion arithmetic and the slice structure `q = x + yI`.

use slice_afd::quat::{imaginary_from_angles, slice_decompose, Quaternion};

fn main() -> slice_afd::Result<()> {
    let p = Quaternion::new(1.0, 2.0, -1.0, 0.5);
    let q = Quaternion::new(0.0, 1.0, 1.0, 0.0);
    println!("p q     = {}", p * q);
    println!("q p     = {}", q * p);
    println!("|pq|    = {:.15}  |p||q| = {:.15}", (p * q).norm(), p.norm() * q.norm());
    println!("p^-1 p  = {}", p.inv()? * p);

    let s = slice_decompose(p);
    println!("p = {} + {} I with I = {:?}", s.xcoord, s.ycoord, s.unit.direction());
    println!("I^2     = {}", s.unit.as_quaternion() * s.unit.as_quaternion());

    let i = imaginary_from_angles(std::f64::consts::FRAC_PI_3, 0.25)?;
    let z = i.exp(0.7);
    println!("exp(0.7 I) = {z}, modulus {:.15}", z.norm());
    Ok(())
}
