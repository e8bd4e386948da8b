//! A fixed collection of small crossed modules used by the test suites and
//! examples. Every entry has `|G|·|H| ≤ 16`.

use crate::crossed::{cyclic_module, CrossedModule};
use crate::group::{direct_product, make_cyclic, FiniteGroup, GroupAction, GroupHom};

fn inversion(actor: &FiniteGroup, space: &FiniteGroup) -> GroupAction {
    // actor Z/2 acts on an abelian space by inversion
    GroupAction::from_fn(actor, space, |g, h| if h == 0 { g } else { space.inv(g) }).expect("inversion is an action")
}

/// Named crossed modules, smallest first.
pub fn small_crossed_modules() -> Vec<(&'static str, CrossedModule)> {
    let z = |n| make_cyclic(n).expect("cyclic group");
    let v4 = direct_product(&z(2), &z(2));
    let one = FiniteGroup::trivial();
    let mut out = vec![
        ("[1 → 1]", CrossedModule::of_group(&one)),
        ("[Z/2 → 1]", cyclic_module(2, 1, 0).unwrap()),
        ("[1 → Z/2]", CrossedModule::of_group(&z(2))),
        ("[Z/3 → 1]", cyclic_module(3, 1, 0).unwrap()),
        ("[1 → Z/3]", CrossedModule::of_group(&z(3))),
        ("[Z/2 → Z/2] id", cyclic_module(2, 2, 1).unwrap()),
        ("[Z/2 → Z/2] 0", cyclic_module(2, 2, 0).unwrap()),
        ("[Z/4 → 1]", cyclic_module(4, 1, 0).unwrap()),
        ("[1 → Z/4]", CrossedModule::of_group(&z(4))),
        ("[Z/2×Z/2 → 1]", CrossedModule::of_abelian(&v4).unwrap()),
        ("[1 → Z/2×Z/2]", CrossedModule::of_group(&v4)),
        ("[Z/4 → Z/2]", cyclic_module(4, 2, 1).unwrap()),
        ("[Z/2 → Z/4]", cyclic_module(2, 4, 2).unwrap()),
        ("[Z/3 → Z/3] id", cyclic_module(3, 3, 1).unwrap()),
        ("[Z/4 → Z/4] id", cyclic_module(4, 4, 1).unwrap()),
        ("[Z/4 → Z/4] ×2", cyclic_module(4, 4, 2).unwrap()),
    ];
    let twisted = |g: FiniteGroup| {
        let h = z(2);
        let i = GroupHom::trivial(&g, &h);
        CrossedModule::new(i, inversion(&h, &g)).expect("trivial boundary with an abelian action")
    };
    out.push(("[Z/3 → Z/2] twisted", twisted(z(3))));
    out.push(("[Z/4 → Z/2] twisted", twisted(z(4))));
    let swap = {
        let h = z(2);
        let act = GroupAction::from_fn(&h, &v4, |g, k| if k == 0 { g } else { (g % 2) * 2 + g / 2 }).unwrap();
        CrossedModule::new(GroupHom::trivial(&v4, &h), act).unwrap()
    };
    out.push(("[Z/2×Z/2 → Z/2] swap", swap));
    let proj = GroupHom::new(v4.clone(), z(2), vec![0, 1, 0, 1]).unwrap();
    out.push(("[Z/2×Z/2 → Z/2] projection", CrossedModule::with_trivial_action(proj).unwrap()));
    let incl = GroupHom::new(z(2), v4.clone(), vec![0, 1]).unwrap();
    out.push(("[Z/2 → Z/2×Z/2] inclusion", CrossedModule::with_trivial_action(incl).unwrap()));
    out.push(("[1 → S3]", CrossedModule::of_group(&FiniteGroup::symmetric(3).unwrap())));
    out
}
