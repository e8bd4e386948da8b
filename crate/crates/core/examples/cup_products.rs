// Cup products of cochains on BZ/2 and a coboundary test.

use std::error::Error;

use twogroup::group::make_cyclic;
use twogroup::homology::{cup_product, is_coboundary, Cochain};
use twogroup::nerve::NerveLevels;
use twogroup::CrossedModule;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let levels = NerveLevels::new(CrossedModule::of_group(&make_cyclic(2)?), 4, 1 << 16);
    // the generator of H^1(BZ/2; F2): the 1-cochain reading off the edge label
    let x = Cochain::from_fn(&levels, 1, Some(2), |i| levels.simplex(1, i).edges[0] as i64)?;
    assert!(x.coboundary(&levels)?.is_zero());

    let mut power = x.clone();
    for n in 2..=4 {
        power = cup_product(&levels, &power, &x)?;
        assert!(power.coboundary(&levels)?.is_zero());
        println!("x^{n} is a coboundary: {}", is_coboundary(&levels, &power)?);
    }

    let x2 = cup_product(&levels, &x, &x)?;
    let sum = x2.add(&x2)?;
    println!("x^2 + x^2 vanishes mod 2: {}", sum.is_zero());
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
