// Levels of the nerve, face maps, normalized coordinates and horn fillers.

use std::error::Error;

use twogroup::crossed::cyclic_module;
use twogroup::nerve::{check_kan, NerveLevels, NormalizedCoordinates};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let cm = cyclic_module(2, 2, 1)?;
    let levels = NerveLevels::new(cm.clone(), 4, 1 << 20);
    for p in 0..=4 {
        println!("level {p}: {} simplices, {} nondegenerate", levels.level_count(p), levels.nondegenerate_count(p));
    }

    let s = levels.simplex(3, 37);
    let coords = NormalizedCoordinates::from_simplex(&s);
    println!("simplex 37 at level 3: g = {:?}, h = {:?}", coords.g_part, coords.h_part);
    for i in 0..=3 {
        let face = s.face(i);
        assert!(face.is_valid(&cm));
        println!("  d{i} has index {}", levels.index_of(&face));
    }
    assert_eq!(s.degeneracy(1).face(1), s);

    for m in 1..=3 {
        for j in 0..=m {
            let k = check_kan(&levels, m, j)?;
            println!("Λ[{m},{j}]: {} horns, fillers per horn {}..{}", k.horn_count, k.min_fillers, k.max_fillers);
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
