//! Run every verification over the bundled corpus: each group's full
//! subgroup lattice is swept through the chain-group isomorphism, the
//! partition duality, the subgroup isomorphism theorem, and Frobenius
//! reciprocity.

use chaincore::report::Status;
use chaincore::runner::{run_corpus, RunConfig};

fn main() {
    let cfg = RunConfig::default();
    let report = run_corpus(&cfg).unwrap();
    for v in &report.verdicts {
        if v.name.ends_with("sweep") {
            let tag = match v.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::Inconclusive => "INCONCLUSIVE",
            };
            println!("[{tag}] {}: {}", v.name, v.detail);
        }
    }
    println!("total: {} verdicts in {} ms", report.verdicts.len(), report.timing_ms);
    assert_eq!(report.overall(), Status::Pass);
}
