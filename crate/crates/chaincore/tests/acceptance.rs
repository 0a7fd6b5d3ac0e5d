//! Acceptance gate: one test per criterion, each printing a single
//! pass/fail line. Everything here runs exact arithmetic; there are no
//! tolerances.

use std::path::Path;
use std::sync::Arc;
use std::time::Instant;

use chaincore::chain::{chain_presentation, dual_group, verify_caniso, verify_iso_theorem};
use chaincore::charmodp::{character_table_modp, choose_prime, valid_prime};
use chaincore::clifford::{sim_b_partition, sim_h_partition, verify_partition_duality};
use chaincore::fusion::{branching_from_groups, fusion_from_group, load_fusion_file, BranchingData};
use chaincore::group::{self, FiniteGroup, Subgroup};
use chaincore::parse::{parse_group, parse_subgroup};
use chaincore::presentation::{
    abelianization, smith_normal_form, todd_coxeter, AbelianInvariants, GroupPresentation,
    TcOutcome,
};
use chaincore::runner::DEFAULT_CORPUS;

fn corpus() -> Vec<(String, Arc<FiniteGroup>)> {
    DEFAULT_CORPUS
        .iter()
        .map(|s| (s.to_string(), parse_group(s, 2000).unwrap()))
        .collect()
}

fn branching_for(g: &Arc<FiniteGroup>, h: &Subgroup, p: u64) -> BranchingData {
    let tg = character_table_modp(g, p).unwrap();
    let th = character_table_modp(&Arc::new(h.group.clone()), p).unwrap();
    branching_from_groups(&tg, &th, &h.elements).unwrap()
}

fn report(criterion: &str, pass: bool, detail: &str) {
    println!(
        "[{}] {criterion}: {detail}",
        if pass { "PASS" } else { "FAIL" }
    );
    assert!(pass, "{criterion}: {detail}");
}

#[test]
fn criterion_1_isomorphism_sweep() {
    let start = Instant::now();
    let mut pairs = 0usize;
    for (name, g) in corpus() {
        for h in group::subgroup_lattice(&g) {
            let r = verify_caniso(&g, &h, None, 200_000).unwrap();
            assert!(r.all_pass(), "{name}, |H| = {}: {:?}", h.order(), r.verdicts);
            assert_eq!(
                r.chain_invariants.as_ref().unwrap(),
                &r.target.as_ref().unwrap().invariant_factors
            );
            assert_eq!(r.tc_order, Some(r.target.as_ref().unwrap().order));
            pairs += 1;
        }
    }
    let elapsed = start.elapsed();
    report(
        "criterion 1 (isomorphism sweep)",
        elapsed.as_secs() < 60,
        &format!("{pairs} (G,H) pairs verified in {} ms", elapsed.as_millis()),
    );
}

#[test]
fn criterion_2_specializations() {
    let mut checked = 0usize;
    for (name, g) in corpus() {
        let full = group::full_subgroup(&g);
        let r = verify_caniso(&g, &full, None, 200_000).unwrap();
        assert!(r.all_pass(), "{name} full");
        let z_inv = dual_group(&group::center(&g)).unwrap().invariant_factors;
        assert_eq!(r.chain_invariants, Some(z_inv), "{name}: C(G) vs center");
        let r = verify_caniso(&g, &group::trivial_subgroup(&g), None, 200_000).unwrap();
        assert!(r.all_pass(), "{name} trivial");
        assert_eq!(r.chain_invariants, Some(vec![]), "{name}: C(G,1) nontrivial");
        checked += 1;
    }
    report(
        "criterion 2 (specializations H = G and H = 1)",
        true,
        &format!("{checked} groups"),
    );
}

#[test]
fn criterion_3_clifford_duality() {
    let mut normal = 0usize;
    for (name, g) in corpus() {
        let p = choose_prime(&g);
        for h in group::subgroup_lattice(&g) {
            if !group::is_normal(&h) {
                continue;
            }
            let b = branching_for(&g, &h, p);
            let r = verify_partition_duality(&b);
            assert!(r.all_pass(), "{name}, |H| = {}: {:?}", h.order(), r.checks);
            normal += 1;
        }
    }
    // worked oracle: S3 over A3
    let s3 = parse_group("S3", 2000).unwrap();
    let a3 = parse_subgroup(&s3, "gen:[(0 1 2)]").unwrap();
    let b = branching_for(&s3, &a3, choose_prime(&s3));
    let r = verify_partition_duality(&b);
    assert_eq!(r.sim_h, vec![vec![0, 1], vec![2]]);
    assert_eq!(r.sim_b, vec![vec![0], vec![1, 2]]);
    report(
        "criterion 3 (Clifford partition duality)",
        true,
        &format!("{normal} normal subgroups, S3/A3 oracle matched"),
    );
}

#[test]
fn criterion_4_negative_control() {
    let s3 = parse_group("S3", 2000).unwrap();
    let h = parse_subgroup(&s3, "gen:[(0 1)]").unwrap();
    assert!(!group::is_normal(&h));
    let b = branching_for(&s3, &h, choose_prime(&s3));
    // the equivalence theorems must detectably break without normality
    let broke = sim_h_partition(&b).is_err()
        || sim_b_partition(&b).is_err()
        || !verify_partition_duality(&b).all_pass();
    report(
        "criterion 4 (non-normal negative control)",
        broke,
        "a Clifford assertion fails for <(0 1)> in S3",
    );
}

#[test]
fn criterion_5_character_tables() {
    for (name, g) in corpus() {
        let p = choose_prime(&g);
        let t = character_table_modp(&g, p).unwrap();
        assert!(t.orthogonality_holds(), "{name}: orthogonality mod {p}");
        let sumsq: u64 = t.degrees.iter().map(|d| d * d).sum();
        assert_eq!(sumsq, g.order as u64, "{name}: degree square sum");
        let reg = t.regular_character();
        for v in 0..t.num_irreps() {
            assert_eq!(t.multiplicity(&reg, v), t.degrees[v], "{name}: regular");
        }
        // a second valid prime must give identical integer data
        let p2 = (1..)
            .map(|k| p + k * g.exponent as u64)
            .find(|&q| valid_prime(&g, q))
            .unwrap();
        let t2 = character_table_modp(&g, p2).unwrap();
        assert_eq!(t.degrees, t2.degrees, "{name}: degrees differ across primes");
        let f = fusion_from_group(&t).unwrap();
        let f2 = fusion_from_group(&t2).unwrap();
        assert_eq!(f.tensor, f2.tensor, "{name}: fusion differs across primes");
    }
    report(
        "criterion 5 (character tables, prime-independence)",
        true,
        &format!("{} groups at two primes each", DEFAULT_CORPUS.len()),
    );
}

#[test]
fn criterion_6_fusion_axioms_and_frobenius() {
    let mut pairs = 0usize;
    for (name, g) in corpus() {
        let p = choose_prime(&g);
        let t = character_table_modp(&g, p).unwrap();
        let f = fusion_from_group(&t).unwrap();
        let problems = f.validate();
        assert!(problems.is_empty(), "{name}: {problems:?}");
        for h in group::subgroup_lattice(&g) {
            let b = branching_for(&g, &h, p);
            for v in 0..b.big.rank() {
                let down = b.restrict(&b.big.basis(v)).unwrap();
                for w in 0..b.small.rank() {
                    let up = b.induce(&b.small.basis(w)).unwrap();
                    assert_eq!(down[w], up[v], "{name}: Frobenius at ({v},{w})");
                }
            }
            pairs += 1;
        }
    }
    report(
        "criterion 6 (fusion axioms, Frobenius reciprocity)",
        true,
        &format!("{pairs} (G,H) pairs"),
    );
}

#[test]
fn criterion_7_quantum_example() {
    let start = Instant::now();
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("data/kac_paljutkin.fusion.json");
    let (big, branching) = load_fusion_file(&path, false).unwrap();
    let expected = big.expected_chain_group.clone().unwrap();
    let b = branching.unwrap_or_else(|| BranchingData::identity(big));
    assert!(b.validate().is_empty());
    let (pres, _) = chain_presentation(&b, false).unwrap();
    let AbelianInvariants::Finite(ab) = abelianization(&pres) else {
        panic!("infinite abelianization")
    };
    assert_eq!(ab.invariant_factors, expected);
    assert_eq!(ab.invariant_factors, vec![2]);
    let TcOutcome::Completed { order, .. } = todd_coxeter(&pres, 100_000) else {
        panic!("enumeration exhausted")
    };
    assert_eq!(order as u64, ab.order);
    let elapsed = start.elapsed();
    report(
        "criterion 7 (Kac-Paljutkin fusion file)",
        elapsed.as_millis() < 1000,
        &format!("invariants [2] in {} ms", elapsed.as_millis()),
    );
}

#[test]
fn criterion_8_isomorphism_theorem() {
    let mut pairs = 0usize;
    for (name, g) in corpus() {
        for h in group::subgroup_lattice(&g) {
            let c = verify_iso_theorem(&h).unwrap();
            assert!(c.pass, "{name}, |H| = {}: {}", h.order(), c.detail);
            pairs += 1;
        }
    }
    report(
        "criterion 8 (subgroup isomorphism theorem)",
        true,
        &format!("{pairs} (G,H) pairs"),
    );
}

#[test]
fn criterion_9_presentation_engine() {
    let snf = smith_normal_form(&[vec![2, 0], vec![0, 3]]);
    assert_eq!(snf.d, vec![1, 6]);
    let s3 = GroupPresentation::new(2, vec![vec![1, 1], vec![2, 2], vec![1, 2, 1, 2, 1, 2]]);
    let TcOutcome::Completed { order, .. } = todd_coxeter(&s3, 10_000) else {
        panic!("exhausted")
    };
    assert_eq!(order, 6);
    // abelianization order divides enumerated order across the corpus
    let mut checked = 0usize;
    for (name, g) in corpus() {
        let p = choose_prime(&g);
        for h in group::subgroup_lattice(&g) {
            let b = branching_for(&g, &h, p);
            let (pres, _) = chain_presentation(&b, false).unwrap();
            let AbelianInvariants::Finite(ab) = abelianization(&pres) else {
                panic!("{name}: infinite chain group")
            };
            let TcOutcome::Completed { order, .. } = todd_coxeter(&pres, 200_000) else {
                panic!("{name}: exhausted")
            };
            assert_eq!(
                (order as u64) % ab.order.max(1),
                0,
                "{name}: abelianization does not divide"
            );
            checked += 1;
        }
    }
    report(
        "criterion 9 (presentation engine oracles)",
        true,
        &format!("SNF and enumeration oracles, {checked} corpus presentations"),
    );
}
