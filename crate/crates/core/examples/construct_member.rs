//! Build a member of the locus from Z_M and Z_N, certify it, and recover Z_N.

use nonsimple::humbert::{complementary_period, satisfies_equations};
use nonsimple::sample::sample_member;
use nonsimple::torus::{embed, norm_endomorphism, PolarizedTorus};
use nonsimple::PolarizationType;

fn main() {
    let ty = PolarizationType::new(vec![1, 2]).unwrap();
    let (z_m, z_n, member) = sample_member(5, &ty, 2024, 6).unwrap();
    println!("Z_M = {:?}", z_m.matrix());
    println!("Z_A = {:?}", member.z_a.matrix());
    println!("lattice coordinates of M:\n{:?}", member.c_m);
    for c in &member.certificate.checks {
        println!("  {:<16} {:<5} {}", c.name, c.passed, c.detail);
    }
    println!("satisfies the locus equations: {}", satisfies_equations(&member.z_a, &ty));
    println!("Z_N recovered: {}", complementary_period(&member.z_a, &ty).unwrap() == z_n);

    let a = PolarizedTorus::principal(member.z_a.clone());
    let nm = norm_endomorphism(&embed(&a, &member.c_m).unwrap()).unwrap();
    println!("analytic representation of Nm_M:\n{:?}", nm.analytic_rep);
}
