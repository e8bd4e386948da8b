// Cohomology of a nerve over GF(2), GF(3), Q and Z.

use std::error::Error;

use twogroup::crossed::cyclic_module;
use twogroup::homology::{cohomology, Coefficients, CohomologyOptions};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    // [Z/2 → 1] is an Eilenberg–MacLane space K(Z/2, 2)
    let k = cyclic_module(2, 1, 0)?;
    let opts = CohomologyOptions::new(4);
    for coeffs in [Coefficients::Prime(2), Coefficients::Prime(3), Coefficients::Rationals] {
        println!("K(Z/2,2) over {coeffs}: {:?}", cohomology(&k, coeffs, &opts)?.ranks());
    }
    let z = cohomology(&k, Coefficients::Integers, &opts)?;
    for n in 0..=4 {
        println!("  H^{n}(K(Z/2,2); Z): rank {}, torsion {:?}", z.degrees[n].rank, z.torsion(n));
    }

    // the unnormalized complex gives the same answer with more cochains
    let u = cohomology(&k, Coefficients::Prime(2), &CohomologyOptions::new(3).normalized(false))?;
    let n = cohomology(&k, Coefficients::Prime(2), &CohomologyOptions::new(3))?;
    assert_eq!(u.ranks(), n.ranks());
    println!("cochains in degree 3: {} unnormalized, {} normalized", u.degrees[3].cochains, n.degrees[3].cochains);

    // a tight budget is reported rather than exceeded
    match cohomology(&cyclic_module(4, 4, 1)?, Coefficients::Prime(2), &CohomologyOptions::new(6).budget(100_000)) {
        Err(e) => println!("[Z/4 → Z/4] to degree 6: {e}"),
        Ok(r) => println!("[Z/4 → Z/4]: {:?}", r.ranks()),
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
