// Fixed vectors of three integer matrices on exterior powers of Q^3.

use std::error::Error;

use twogroup::group_cohomology::{exterior_power_matrix, fixed_subspace, soule_matrices};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    for (name, m) in soule_matrices() {
        let dims: Vec<usize> =
            (0..=3).map(|k| exterior_power_matrix(&m, k).map(|e| fixed_subspace(e.rows(), &[e]).len())).collect::<Result<_, _>>()?;
        println!("{name}: dim of fixed vectors on Λ^0..Λ^3 = {dims:?}");
        let line = fixed_subspace(3, std::slice::from_ref(&m));
        let shown: Vec<String> = line[0].iter().map(|x| x.to_string()).collect();
        println!("  fixed line in Q^3 spanned by ({})", shown.join(", "));
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
