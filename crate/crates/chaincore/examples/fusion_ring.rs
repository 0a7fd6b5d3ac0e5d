//! The fusion (representation) ring of a finite group: tensor products
//! decomposed into simples with exact integer multiplicities.

use std::sync::Arc;

use chaincore::charmodp::{character_table_modp, choose_prime};
use chaincore::fusion::fusion_from_group;
use chaincore::group::quaternion;

fn main() {
    let g = Arc::new(quaternion());
    let t = character_table_modp(&g, choose_prime(&g)).unwrap();
    let f = fusion_from_group(&t).unwrap();
    println!("Q8 fusion ring, dims {:?}", f.dims);
    for v in 0..f.rank() {
        for w in v..f.rank() {
            let out = f.multiply(&f.basis(v), &f.basis(w));
            println!("  {} * {} = {:?}", f.labels[v], f.labels[w], out);
        }
    }
    let problems = f.validate();
    assert!(problems.is_empty(), "{problems:?}");
    println!("unit, dual, dimension, and associativity axioms verified");
}
