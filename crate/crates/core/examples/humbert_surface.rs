//! A genus-2 period matrix on the Humbert surface of discriminant 4 and the singular
//! relation that detects it.

use nonsimple::humbert::{detect_singular_relations, humbert_discriminant};
use nonsimple::linalg::{Gaussian, Matrix};
use nonsimple::torus::SiegelMatrix;

fn main() {
    let t2 = Gaussian::from_ints(1, 2);
    let t3 = Gaussian::from_ints(0, 5);
    let t1 = t2.clone() + t2.clone();
    let z = SiegelMatrix::new(Matrix::from_rows(vec![vec![t1, t2.clone()], vec![t2, t3]])).unwrap();
    println!("Z = {:?}", z.matrix());
    for r in detect_singular_relations(&z, 2, false).unwrap() {
        println!("relation {:?}, discriminant {}", r.rel, humbert_discriminant(&r.rel));
    }
}
