//! Restriction to a normal subgroup partitions both sets of simples, and
//! the two partitions are dual to each other. Shown for S3 over A3.

use std::sync::Arc;

use chaincore::charmodp::{character_table_modp, choose_prime};
use chaincore::clifford::verify_partition_duality;
use chaincore::fusion::branching_from_groups;
use chaincore::group::{subgroup_generated, symmetric};

fn main() {
    let s3 = Arc::new(symmetric(3));
    let rot = s3
        .perms
        .as_ref()
        .unwrap()
        .iter()
        .position(|p| p == &vec![1, 2, 0])
        .unwrap();
    let a3 = subgroup_generated(&s3, &[rot]);
    let p = choose_prime(&s3);
    let tg = character_table_modp(&s3, p).unwrap();
    let th = character_table_modp(&Arc::new(a3.group.clone()), p).unwrap();
    let b = branching_from_groups(&tg, &th, &a3.elements).unwrap();
    let r = verify_partition_duality(&b);
    println!("S3 over A3");
    println!("  big-ring blocks (same restriction support): {:?}", r.sim_h);
    println!("  small-ring blocks (constituent classes):    {:?}", r.sim_b);
    for c in &r.checks {
        println!("  [{}] {}: {}", if c.pass { "PASS" } else { "FAIL" }, c.name, c.detail);
    }
    assert!(r.all_pass());
}
