//! Quotient of M x N by each allowed subgroup; every quotient is principally polarized.

use nonsimple::finite::enumerate_allowed;
use nonsimple::quotient::{product, quotient_ppav};
use nonsimple::sample::{random_siegel, rng};
use nonsimple::torus::PolarizedTorus;
use nonsimple::PolarizationType;

fn main() {
    let ty = PolarizationType::new(vec![3]).unwrap();
    let mut r = rng(5);
    let m = PolarizedTorus::new(random_siegel(&mut r, 1, 5), ty.clone()).unwrap();
    let n = PolarizedTorus::new(random_siegel(&mut r, 1, 5), ty.complementary(2).unwrap()).unwrap();
    let p = product(&m, &n).unwrap();
    for (i, k) in enumerate_allowed(&ty).unwrap().iter().enumerate().take(4) {
        let q = quotient_ppav(&p, k).unwrap();
        println!("K_{i}: type {}, index {}, Z' = {:?}", q.induced_type, q.lattice_index, q.z_prime.matrix());
    }
}
