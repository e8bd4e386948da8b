// E2 pages of the spectral sequence for the 2-groups built from SL(n, Z)
// and GL(n, Z).

use std::error::Error;

use twogroup::structural::{e2_page, Variant};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    for variant in [Variant::SL, Variant::GL] {
        for n in 0..=3 {
            let page = e2_page(variant, n, 3, 9)?;
            println!("{variant:?}({n}, Z): nonzero entries {:?}", page.nonzero());
        }
    }
    let page = e2_page(Variant::SL, 3, 2, 9)?;
    println!("SL(3, Z), p = 1: {:?}", (0..=9).map(|q| page.get(1, q)).collect::<Vec<_>>());
    println!("n = 4: {}", e2_page(Variant::SL, 4, 2, 12).err().map(|e| e.to_string()).unwrap_or_default());
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
