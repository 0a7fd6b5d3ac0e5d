//! Exact character table of S4 over a prime field, with degrees and
//! orthogonality checked.

use std::sync::Arc;

use chaincore::charmodp::{character_table_modp, choose_prime};
use chaincore::group::symmetric;

fn main() {
    let g = Arc::new(symmetric(4));
    let p = choose_prime(&g);
    let t = character_table_modp(&g, p).unwrap();
    println!("S4: order {}, exponent {}, prime {}", g.order, g.exponent, p);
    println!("degrees: {:?}", t.degrees);
    println!("class sizes: {:?}", t.classes.iter().map(|c| c.members.len()).collect::<Vec<_>>());
    println!("table mod {p} (rows are irreps, columns conjugacy classes):");
    for row in &t.table {
        println!("  {row:?}");
    }
    assert!(t.orthogonality_holds());
    let reg = t.regular_character();
    for v in 0..t.num_irreps() {
        assert_eq!(t.multiplicity(&reg, v), t.degrees[v]);
    }
    println!("orthogonality and regular-character multiplicities verified");
}
