//! The group K(H) of a (2)-polarized curve, its antisymplectic self-maps, and the
//! allowed subgroups of K(H_M) x K(H_N).

use nonsimple::finite::{antisymplectic_maps, classify_subgroup, enumerate_allowed, FiniteSymplecticModule, SymplecticModule};
use nonsimple::PolarizationType;

fn main() {
    for d in [vec![2], vec![3], vec![2, 2]] {
        let ty = PolarizationType::new(d).unwrap();
        let module = FiniteSymplecticModule::new(&ty);
        let allowed = enumerate_allowed(&ty).unwrap();
        println!("D = {ty}: |K(H)| = {}, {} allowed subgroups", module.order(), allowed.len());
        if ty.product() == 2 {
            println!("  antisymplectic maps: {}", antisymplectic_maps(&module).len());
            for k in &allowed {
                println!("  {:?} -> {:?}", k.canonical_generators(), classify_subgroup(k));
            }
        }
    }
}
