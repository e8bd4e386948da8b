// Group cohomology with twisted coefficients: bar complex for finite groups,
// closed forms for SL(2, Z) and GL(2, Z).

use std::error::Error;

use twogroup::group::make_cyclic;
use twogroup::group_cohomology::{
    bar_cohomology, gl2z_cohomology, invariants, sl2z_cohomology, ArithmeticGroupTag, ModuleRep,
};
use twogroup::linalg::{Field, RatMatrix};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    // Z/2 acting on Z by the sign
    let z2 = make_cyclic(2)?;
    let sign = ModuleRep::from_generator_images(&z2, &[RatMatrix::from_i64(&[vec![-1]])])?;
    println!("H^*(Z/2; Z_sign) over GF(2): {:?}", bar_cohomology(&sign, 4, Field::Prime(2))?);
    println!("H^*(Z/2; Z_sign) over GF(3): {:?}", bar_cohomology(&sign, 4, Field::Prime(3))?);
    println!("H^*(Z/2; Z_sign) over Q:     {:?}", bar_cohomology(&sign, 4, Field::Rationals)?);

    // SL(2, Z) on the exterior powers of its standard representation
    let standard = ModuleRep::standard(ArithmeticGroupTag::SL2Z);
    for k in 0..=2 {
        let m = standard.exterior_power(k)?;
        println!("H^*(SL(2,Z); Λ^{k} Q^2) = {:?}", sl2z_cohomology(&m, 2)?);
    }

    // GL(2, Z) on the determinant line Λ^2 Q^2
    let det = ModuleRep::standard(ArithmeticGroupTag::GL2Z).exterior_power(2)?;
    println!("H^*(GL(2,Z); det) = {:?}", gl2z_cohomology(&det, 2)?);
    println!("GL(2,Z) invariants twisted by the determinant: {}", invariants(&det, Some(&[-1, 1, 1]))?.len());
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
