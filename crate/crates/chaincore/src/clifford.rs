//! The two equivalence relations attached to a branching datum — on the big
//! ring via common restriction constituents, on the small ring via common
//! covering simples — and the duality between their partitions. The defining
//! equivalences are re-checked on the data rather than assumed, so corrupt
//! or non-normal input is detected instead of silently accepted.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fusion::BranchingData;

/// One verified claim in a report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

impl Check {
    pub fn new(name: &str, pass: bool, detail: impl Into<String>) -> Check {
        Check {
            name: name.to_string(),
            pass,
            detail: detail.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CliffordReport {
    /// Partition of the big ring's simples (fibers of the support map).
    pub sim_h: Vec<Vec<usize>>,
    /// Partition of the small ring's simples (distinct support sets).
    pub sim_b: Vec<Vec<usize>>,
    /// Per big simple V, the set of small simples in its restriction.
    pub const_map: Vec<Vec<usize>>,
    pub checks: Vec<Check>,
}

impl CliffordReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

/// Small simples occurring in the restriction of big simple `v`.
pub fn const_support(b: &BranchingData, v: usize) -> Vec<usize> {
    b.b[v]
        .iter()
        .enumerate()
        .filter(|(_, &m)| m > 0)
        .map(|(w, _)| w)
        .collect()
}

fn supports(b: &BranchingData) -> Vec<Vec<usize>> {
    (0..b.big.rank()).map(|v| const_support(b, v)).collect()
}

fn fibers_of_support(supp: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let mut blocks: Vec<(Vec<usize>, Vec<usize>)> = Vec::new();
    for (v, s) in supp.iter().enumerate() {
        match blocks.iter_mut().find(|(key, _)| key == s) {
            Some((_, members)) => members.push(v),
            None => blocks.push((s.clone(), vec![v])),
        }
    }
    blocks.sort_by_key(|(_, m)| m[0]);
    blocks.into_iter().map(|(_, m)| m).collect()
}

fn overlapping(a: &[usize], b: &[usize]) -> bool {
    a.iter().any(|x| b.contains(x))
}

/// Overlapping supports must be equal supports; the core assertion behind
/// both partitions.
fn check_overlap_equal(supp: &[Vec<usize>]) -> std::result::Result<(), (usize, usize)> {
    for v in 0..supp.len() {
        for w in (v + 1)..supp.len() {
            if overlapping(&supp[v], &supp[w]) && supp[v] != supp[w] {
                return Err((v, w));
            }
        }
    }
    Ok(())
}

/// Partition of the big ring's simples by equality of restriction supports.
/// Fails if two supports overlap without being equal (non-normal or corrupt
/// input).
pub fn sim_h_partition(b: &BranchingData) -> Result<Vec<Vec<usize>>> {
    let supp = supports(b);
    check_overlap_equal(&supp).map_err(|(v, w)| {
        Error::TheoremViolation(format!(
            "supports of {v} and {w} overlap but differ: {:?} vs {:?}",
            supp[v], supp[w]
        ))
    })?;
    Ok(fibers_of_support(&supp))
}

/// Partition of the small ring's simples into the distinct support sets.
pub fn sim_b_partition(b: &BranchingData) -> Result<Vec<Vec<usize>>> {
    let supp = supports(b);
    let mut covered = vec![false; b.small.rank()];
    for s in &supp {
        for &w in s {
            covered[w] = true;
        }
    }
    if let Some(w) = covered.iter().position(|&c| !c) {
        return Err(Error::UncoveredIrrep(w));
    }
    check_overlap_equal(&supp).map_err(|(v, w)| {
        Error::TheoremViolation(format!(
            "support sets of {v} and {w} overlap but differ, so they do not partition"
        ))
    })?;
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    for s in &supp {
        if !blocks.contains(s) {
            blocks.push(s.clone());
        }
    }
    blocks.sort_by_key(|s| s[0]);
    Ok(blocks)
}

/// True iff V occurs in W (x) Ind(unit), the big-ring form of support
/// equality; checked against support equality and rejected on mismatch.
pub fn embedding_criterion(b: &BranchingData, v: usize, w: usize) -> Result<bool> {
    let a = b.induce(&b.small.basis(b.small.unit))?;
    let expansion = b.big.multiply(&b.big.basis(w), &a);
    let embeds = expansion[v] > 0;
    let same_support = const_support(b, v) == const_support(b, w);
    if embeds != same_support {
        return Err(Error::TheoremViolation(format!(
            "embedding criterion ({embeds}) disagrees with support equality ({same_support}) for ({v},{w})"
        )));
    }
    Ok(embeds)
}

/// Full duality report: the support map's range is the small partition, its
/// fibers are the big partition, all blocks are finite, and the embedding
/// criterion agrees with support equality everywhere. Failures are recorded,
/// not raised.
pub fn verify_partition_duality(b: &BranchingData) -> CliffordReport {
    let supp = supports(b);
    let mut checks = Vec::new();

    let overlap = check_overlap_equal(&supp);
    checks.push(Check::new(
        "overlapping supports are equal",
        overlap.is_ok(),
        match overlap {
            Ok(()) => "all pairs".to_string(),
            Err((v, w)) => format!("simples {v} and {w} overlap with unequal supports"),
        },
    ));

    let sim_h = fibers_of_support(&supp);
    let sim_b: Vec<Vec<usize>> = {
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        for s in &supp {
            if !s.is_empty() && !blocks.contains(s) {
                blocks.push(s.clone());
            }
        }
        blocks.sort_by_key(|s| s[0]);
        blocks
    };

    let mut covered = vec![false; b.small.rank()];
    for s in &supp {
        for &w in s {
            covered[w] = true;
        }
    }
    let cover_ok = covered.iter().all(|&c| c);
    let disjoint_ok = overlap.is_ok();
    checks.push(Check::new(
        "support sets partition the small simples",
        cover_ok && disjoint_ok,
        if cover_ok {
            "covered and pairwise disjoint-or-equal".to_string()
        } else {
            format!(
                "uncovered small simple {}",
                covered.iter().position(|&c| !c).unwrap()
            )
        },
    ));

    checks.push(Check::new(
        "fibers of the support map are the big-ring classes",
        sim_h.iter().map(|blk| blk.len()).sum::<usize>() == b.big.rank(),
        format!("{} blocks over {} simples", sim_h.len(), b.big.rank()),
    ));

    let max_dim = *b.big.dims.iter().max().unwrap_or(&1) as usize;
    let finite_ok = sim_b.iter().all(|blk| blk.len() <= max_dim);
    checks.push(Check::new(
        "small-ring classes are bounded by the largest dimension",
        finite_ok,
        format!("max block {} <= max dim {max_dim}", sim_b.iter().map(|b| b.len()).max().unwrap_or(0)),
    ));

    let mut embed_ok = true;
    let mut embed_detail = "agrees on all pairs".to_string();
    'outer: for v in 0..b.big.rank() {
        for w in 0..b.big.rank() {
            if let Err(e) = embedding_criterion(b, v, w) {
                embed_ok = false;
                embed_detail = e.to_string();
                break 'outer;
            }
        }
    }
    checks.push(Check::new(
        "embedding criterion matches support equality",
        embed_ok,
        embed_detail,
    ));

    CliffordReport {
        sim_h,
        sim_b,
        const_map: supp,
        checks,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::charmodp::{character_table_modp, choose_prime};
    use crate::fusion::{branching_from_groups, BranchingData, FusionData};
    use crate::group::{center, quaternion, subgroup_generated, symmetric};
    use std::sync::Arc;

    fn branching_s3_a3() -> BranchingData {
        let g = Arc::new(symmetric(3));
        let rot = g
            .perms
            .as_ref()
            .unwrap()
            .iter()
            .position(|p| p == &vec![1, 2, 0])
            .unwrap();
        let a3 = subgroup_generated(&g, &[rot]);
        let p = choose_prime(&g);
        let tg = character_table_modp(&g, p).unwrap();
        let th = character_table_modp(&Arc::new(a3.group.clone()), p).unwrap();
        branching_from_groups(&tg, &th, &a3.elements).unwrap()
    }

    fn branching_s3_transposition() -> BranchingData {
        let g = Arc::new(symmetric(3));
        let h = subgroup_generated(&g, &[1]);
        let p = choose_prime(&g);
        let tg = character_table_modp(&g, p).unwrap();
        let th = character_table_modp(&Arc::new(h.group.clone()), p).unwrap();
        branching_from_groups(&tg, &th, &h.elements).unwrap()
    }

    #[test]
    fn supports_s3_a3() {
        let b = branching_s3_a3();
        assert_eq!(const_support(&b, 0), vec![0]);
        assert_eq!(const_support(&b, 1), vec![0]);
        assert_eq!(const_support(&b, 2), vec![1, 2]);
    }

    #[test]
    fn partitions_s3_a3() {
        let b = branching_s3_a3();
        assert_eq!(sim_h_partition(&b).unwrap(), vec![vec![0, 1], vec![2]]);
        assert_eq!(sim_b_partition(&b).unwrap(), vec![vec![0], vec![1, 2]]);
        let rep = verify_partition_duality(&b);
        assert!(rep.all_pass());
    }

    #[test]
    fn identity_branching_gives_singletons() {
        let g = Arc::new(symmetric(3));
        let t = character_table_modp(&g, 7).unwrap();
        let f = crate::fusion::fusion_from_group(&t).unwrap();
        let b = BranchingData::identity(f);
        let sim_h = sim_h_partition(&b).unwrap();
        assert!(sim_h.iter().all(|blk| blk.len() == 1));
        let sim_b = sim_b_partition(&b).unwrap();
        assert_eq!(sim_b.len(), 3);
    }

    #[test]
    fn q8_over_center() {
        let q8 = Arc::new(quaternion());
        let z = center(&q8);
        let p = choose_prime(&q8);
        let tg = character_table_modp(&q8, p).unwrap();
        let th = character_table_modp(&Arc::new(z.group.clone()), p).unwrap();
        let b = branching_from_groups(&tg, &th, &z.elements).unwrap();
        let sim_h = sim_h_partition(&b).unwrap();
        let mut sizes: Vec<usize> = sim_h.iter().map(|blk| blk.len()).collect();
        sizes.sort();
        assert_eq!(sizes, vec![1, 4]); // the four 1-dims, then t
        assert!(verify_partition_duality(&b).all_pass());
    }

    #[test]
    fn embedding_criterion_s3_a3() {
        let b = branching_s3_a3();
        assert!(embedding_criterion(&b, 0, 1).unwrap()); // sgn (x) ind(unit) contains triv
        assert!(embedding_criterion(&b, 2, 2).unwrap());
        assert!(!embedding_criterion(&b, 2, 0).unwrap());
        for v in 0..3 {
            assert!(embedding_criterion(&b, v, v).unwrap());
        }
    }

    #[test]
    fn negative_control_non_normal() {
        let b = branching_s3_transposition();
        // triv and std share the trivial constituent but have different supports
        assert!(matches!(sim_h_partition(&b), Err(Error::TheoremViolation(_))));
        let rep = verify_partition_duality(&b);
        assert!(!rep.all_pass());
    }

    #[test]
    fn uncovered_irrep_detected() {
        // branching into a ring with an extra simple nothing restricts to
        let f: FusionData = {
            let g = Arc::new(crate::group::cyclic(2));
            let t = character_table_modp(&g, 3).unwrap();
            crate::fusion::fusion_from_group(&t).unwrap()
        };
        let mut b = BranchingData::identity(f);
        b.b[0] = vec![1, 0];
        b.b[1] = vec![1, 0];
        assert!(matches!(sim_b_partition(&b), Err(Error::UncoveredIrrep(1))));
    }
}
