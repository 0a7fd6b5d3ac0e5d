//! The chain group of a pair H <= G is isomorphic to the character group
//! of Z(G) meet H. Verified end to end for Q8 over its cyclic subgroup <i>.

use std::sync::Arc;

use chaincore::chain::verify_caniso;
use chaincore::group::{quaternion, subgroup_generated};

fn main() {
    let q8 = Arc::new(quaternion());
    let i = q8.labels.iter().position(|l| l == "i").unwrap();
    let h = subgroup_generated(&q8, &[i]);
    let r = verify_caniso(&q8, &h, None, 100_000).unwrap();
    println!("Q8 over <i>");
    println!("  presentation: {} generators, {} relations", r.generators, r.relations);
    println!("  chain-group invariant factors: {:?}", r.chain_invariants);
    println!("  relative center invariant factors: {:?}",
        r.target.as_ref().unwrap().invariant_factors);
    println!("  coset enumeration order: {:?}", r.tc_order);
    for c in &r.verdicts {
        println!("  [{}] {}: {}", if c.pass { "PASS" } else { "FAIL" }, c.name, c.detail);
    }
    assert!(r.all_pass());
    assert_eq!(r.chain_invariants, Some(vec![2]));
}
