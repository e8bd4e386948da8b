// Building crossed modules, checking their axioms, and comparing two of
// them through a morphism.

use std::error::Error;

use twogroup::crossed::cyclic_module;
use twogroup::group::make_cyclic;
use twogroup::{CrossedModule, CrossedModuleMorphism, GroupAction, GroupHom};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    // [Z/4 → Z/2], generator to generator, trivial action
    let x = cyclic_module(4, 2, 1)?;
    let inv = x.homotopy_invariants();
    println!("[Z/4 → Z/2]: π1 has order {}, π2 has order {}", inv.pi_low.order(), inv.pi_high.order());
    assert!(x.validate().is_valid());

    // Z/2 acting on Z/3 by inversion, with trivial boundary
    let (z2, z3) = (make_cyclic(2)?, make_cyclic(3)?);
    let inversion = GroupAction::from_fn(&z2, &z3, |g, h| if h == 0 { g } else { z3.inv(g) })?;
    let twisted = CrossedModule::new(GroupHom::trivial(&z3, &z2), inversion)?;
    println!("twisted [Z/3 → Z/2] has trivial action: {}", twisted.action().is_trivial());

    // a boundary that is not a homomorphism is refused
    let bad = GroupHom::new(z2.clone(), make_cyclic(4)?, vec![0, 1]);
    println!("Z/2 → Z/4 sending 1 to 1: {}", bad.err().map(|e| e.to_string()).unwrap_or_default());

    // [π2 → 1] → [G → i(G)] induces isomorphisms on π1 and π2
    let f = CrossedModuleMorphism::kernel_inclusion(&x);
    println!("kernel inclusion is an equivalence: {}", f.is_equivalence());
    assert!(f.is_equivalence());
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
