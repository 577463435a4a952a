//! Equation counts and dimensions of the locus for small g and k.

use nonsimple::humbert::{locus_dimension, locus_equations};
use nonsimple::PolarizationType;

fn main() {
    println!(" g  k  equations  dim  codim");
    for g in 2..=8 {
        for k in 1..=g / 2 {
            let eqs = locus_equations(g, k, &PolarizationType::principal(k)).unwrap();
            let (dim, codim) = locus_dimension(g, k).unwrap();
            println!("{g:>2} {k:>2} {:>10} {dim:>4} {codim:>6}", eqs.independent_count());
        }
    }
    let eqs = locus_equations(2, 1, &PolarizationType::new(vec![2]).unwrap()).unwrap();
    println!("g = 2, D = (2): {}", serde_json::to_string(&eqs).unwrap());
}
