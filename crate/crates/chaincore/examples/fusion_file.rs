//! Chain groups extend past group rings: load the Kac-Paljutkin fusion ring
//! from its JSON file and compute its chain group.

use std::path::Path;

use chaincore::fusion::{load_fusion_file, BranchingData};
use chaincore::chain::chain_presentation;
use chaincore::presentation::{abelianization, AbelianInvariants};

fn main() {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("data/kac_paljutkin.fusion.json");
    let (big, branching) = load_fusion_file(&path, false).unwrap();
    let expected = big.expected_chain_group.clone();
    println!("loaded {} simples, dims {:?}", big.rank(), big.dims);
    let b = match branching {
        Some(b) => b,
        None => BranchingData::identity(big),
    };
    let (pres, _) = chain_presentation(&b, false).unwrap();
    let AbelianInvariants::Finite(ab) = abelianization(&pres) else {
        panic!("chain group of a finite ring is finite");
    };
    println!("chain-group invariant factors: {:?}", ab.invariant_factors);
    assert_eq!(Some(ab.invariant_factors), expected);
    println!("matches the file's expected value");
}
