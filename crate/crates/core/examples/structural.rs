// Poincaré series of free graded commutative algebras and of several
// 2-groups built from compact Lie groups.

use std::error::Error;

use twogroup::group::make_cyclic;
use twogroup::group_cohomology::ModuleRep;
use twogroup::linalg::RatMatrix;
use twogroup::structural::{
    compact_cokernel_cohomology, finite_cokernel_cohomology, free_gca_dims, kernel_torus_cohomology, kunneth,
    string_group, Cokernel, CompactGroupSpec, LieType,
};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    println!("S(x1, y2) through degree 8: {:?}", free_gca_dims(&[1, 2], 8)?.dims);
    println!("circle kernel: {:?}", kernel_torus_cohomology(1, 9).support());
    let torus2 = kernel_torus_cohomology(2, 9);
    println!("two circles via Künneth: {:?}", kunneth(&kernel_torus_cohomology(1, 9), &kernel_torus_cohomology(1, 9))?.dims);
    assert_eq!(torus2.dims, kunneth(&kernel_torus_cohomology(1, 9), &kernel_torus_cohomology(1, 9))?.dims);

    // Z/2 swapping two circle factors
    let swap = ModuleRep::from_generator_images(&make_cyclic(2)?, &[RatMatrix::from_i64(&[vec![0, 1], vec![1, 0]])])?;
    println!("swap cokernel: {:?}", finite_cokernel_cohomology(2, &swap, 12)?.dims);

    for name in ["A1", "A2", "G2"] {
        let ty = LieType::parse(name)?;
        println!("{name}: BG generators in degrees {:?}; string group support {:?}", ty.classifying_degrees(), string_group(ty, 24).support());
    }

    let u1_over_su2 = CompactGroupSpec { center_rank: 2, cokernel: Cokernel::Simple(LieType::parse("A1")?), transgression_rank: 1 };
    println!("rank-2 kernel over SU(2), one class transgressed: {:?}", compact_cokernel_cohomology(&u1_over_su2, 9)?.dims);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
