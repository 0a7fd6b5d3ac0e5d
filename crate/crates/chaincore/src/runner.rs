//! Subcommand drivers: single chain or Clifford runs, fusion-file runs,
//! group inspection, and the full corpus sweep.

use std::path::PathBuf;
use std::sync::Arc;
use std::time::Instant;

use rayon::prelude::*;

use crate::chain::{self, chain_presentation, verify_caniso};
use crate::charmodp::{character_table_modp, choose_prime};
use crate::clifford::verify_partition_duality;
use crate::error::{Error, Result};
use crate::fusion::{branching_from_groups, fusion_from_group, load_fusion_file, BranchingData};
use crate::group::{self, FiniteGroup, Subgroup};
use crate::parse::{parse_group, parse_subgroup};
use crate::presentation::{
    abelianization, todd_coxeter, AbelianInvariants, TcOutcome, Verdict,
};
use crate::report::{Report, Status, VerdictEntry};

pub const DEFAULT_LIMIT: usize = 200_000;
pub const DEFAULT_CAP: usize = 2000;

/// Groups swept by `corpus` when no manifest is given.
pub const DEFAULT_CORPUS: &[&str] = &[
    "C2", "C3", "C4", "C5", "C6", "C7", "C8", "C9", "C10", "C11", "C12",
    "C2xC2", "C2xC4", "S3", "S4", "D4", "D5", "D6", "Q8", "A4", "SL23",
];

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub group: Option<String>,
    pub subgroup: Option<String>,
    pub prime: Option<u64>,
    pub limit: usize,
    pub cap: usize,
    pub manifest: Option<PathBuf>,
    pub fusion_path: Option<PathBuf>,
    pub allow_noncommutative: bool,
    pub force: bool,
    pub workers: Option<usize>,
}

impl Default for RunConfig {
    fn default() -> RunConfig {
        RunConfig {
            group: None,
            subgroup: None,
            prime: None,
            limit: DEFAULT_LIMIT,
            cap: DEFAULT_CAP,
            manifest: None,
            fusion_path: None,
            allow_noncommutative: false,
            force: false,
            workers: None,
        }
    }
}

fn require_group(cfg: &RunConfig) -> Result<Arc<FiniteGroup>> {
    let spec = cfg
        .group
        .as_deref()
        .ok_or_else(|| Error::ParseError("--group is required".into()))?;
    parse_group(spec, cfg.cap)
}

fn require_subgroup(cfg: &RunConfig, g: &Arc<FiniteGroup>) -> Result<Subgroup> {
    let spec = cfg.subgroup.as_deref().unwrap_or("full");
    parse_subgroup(g, spec)
}

fn verdict_entry(name: &str, v: &Verdict) -> VerdictEntry {
    match v {
        Verdict::Pass => VerdictEntry {
            name: name.into(),
            status: Status::Pass,
            detail: String::new(),
        },
        Verdict::Fail(m) => VerdictEntry {
            name: name.into(),
            status: Status::Fail,
            detail: m.clone(),
        },
        Verdict::Inconclusive(m) => VerdictEntry {
            name: name.into(),
            status: Status::Inconclusive,
            detail: m.clone(),
        },
    }
}

/// `chain`: the full isomorphism pipeline on one (G, H) pair.
pub fn run_chaingroup(cfg: &RunConfig) -> Result<Report> {
    let start = Instant::now();
    let g = require_group(cfg)?;
    let h = require_subgroup(cfg, &g)?;
    let mut report = Report::new("chain");
    report.input("group", cfg.group.as_deref().unwrap_or_default());
    report.input("subgroup", cfg.subgroup.as_deref().unwrap_or("full"));
    let r = verify_caniso(&g, &h, cfg.prime, cfg.limit)?;
    report.set_chain(&r);
    for c in &r.verdicts {
        if c.name.starts_with("chain group isomorphic") {
            let mut v = verdict_entry(&c.name, &r.certificate);
            if v.detail.is_empty() {
                v.detail = c.detail.clone();
            }
            report.verdicts.push(v);
        } else {
            report.push_checks(std::slice::from_ref(c));
        }
    }
    report.timing_ms = start.elapsed().as_millis() as u64;
    Ok(report)
}

/// `clifford`: partition duality for a normal subgroup.
pub fn run_clifford(cfg: &RunConfig) -> Result<Report> {
    let start = Instant::now();
    let g = require_group(cfg)?;
    let h = require_subgroup(cfg, &g)?;
    if !group::is_normal(&h) && !cfg.force {
        return Err(Error::NotNormal);
    }
    let p = match cfg.prime {
        Some(p) => p,
        None => choose_prime(&g),
    };
    let tg = character_table_modp(&g, p)?;
    let th = character_table_modp(&Arc::new(h.group.clone()), p)?;
    let b = branching_from_groups(&tg, &th, &h.elements)?;
    let r = verify_partition_duality(&b);
    let mut report = Report::new("clifford");
    report.input("group", cfg.group.as_deref().unwrap_or_default());
    report.input("subgroup", cfg.subgroup.as_deref().unwrap_or("full"));
    report.set_clifford(&r, &b.big.labels, &b.small.labels);
    report.push_checks(&r.checks);
    report.timing_ms = start.elapsed().as_millis() as u64;
    Ok(report)
}

/// `fusion`: validate a fusion file and compute its chain group.
pub fn run_fusion(cfg: &RunConfig) -> Result<Report> {
    let start = Instant::now();
    let path = cfg
        .fusion_path
        .as_deref()
        .ok_or_else(|| Error::ParseError("fusion file path is required".into()))?;
    let (big, branching) = load_fusion_file(path, cfg.allow_noncommutative)?;
    let expected = big.expected_chain_group.clone();
    let b = match branching {
        Some(b) => b,
        None => BranchingData::identity(big),
    };
    let mut report = Report::new("fusion");
    report.input("file", path.display().to_string());

    let branch_problems = b.validate();
    report.verdicts.push(VerdictEntry {
        name: "fusion and branching axioms".into(),
        status: if branch_problems.is_empty() {
            Status::Pass
        } else {
            Status::Fail
        },
        detail: if branch_problems.is_empty() {
            format!("rank {} ring validated", b.big.rank())
        } else {
            branch_problems.join("; ")
        },
    });
    if !branch_problems.is_empty() {
        report.timing_ms = start.elapsed().as_millis() as u64;
        return Ok(report);
    }

    let (pres, _) = chain_presentation(&b, cfg.allow_noncommutative)?;
    let invariants = match abelianization(&pres) {
        AbelianInvariants::Finite(ab) => Some(ab.invariant_factors),
        AbelianInvariants::Infinite { .. } => None,
    };
    let tc_order = match todd_coxeter(&pres, cfg.limit) {
        TcOutcome::Completed { order, .. } => Some(order as u64),
        TcOutcome::Exhausted { .. } => None,
    };
    report.chain = Some(crate::report::ChainSection {
        generators: pres.ngens,
        relations: pres.relations.len(),
        invariant_factors: invariants.clone(),
        tc_order,
    });
    // SNF and coset enumeration are independent computations; they must agree
    if let (Some(inv), Some(tc)) = (&invariants, tc_order) {
        let ab_order: u64 = inv.iter().product();
        report.verdicts.push(VerdictEntry {
            name: "abelianization and coset enumeration agree".into(),
            status: if ab_order == tc { Status::Pass } else { Status::Fail },
            detail: format!("abelianized order {ab_order}, enumerated order {tc}"),
        });
    }
    if let Some(want) = expected {
        let status = match &invariants {
            Some(got) if *got == want => Status::Pass,
            Some(_) => Status::Fail,
            None => Status::Fail,
        };
        report.verdicts.push(VerdictEntry {
            name: "chain group matches expected".into(),
            status,
            detail: format!("expected {want:?}, computed {invariants:?}"),
        });
    }
    report.timing_ms = start.elapsed().as_millis() as u64;
    Ok(report)
}

/// `group`: inspect a parsed group and sanity-check its character table.
pub fn run_group(cfg: &RunConfig) -> Result<Report> {
    let start = Instant::now();
    let g = require_group(cfg)?;
    let p = match cfg.prime {
        Some(p) => p,
        None => choose_prime(&g),
    };
    let t = character_table_modp(&g, p)?;
    let mut report = Report::new("group");
    report.input("group", cfg.group.as_deref().unwrap_or_default());
    report.input("order", g.order.to_string());
    report.input("exponent", g.exponent.to_string());
    report.input("classes", t.classes.len().to_string());
    report.input("degrees", format!("{:?}", t.degrees));
    report.input("prime", p.to_string());
    let z = group::center(&g);
    report.input(
        "center",
        format!("{:?}", chain::dual_group(&z)?.invariant_factors),
    );
    report.verdicts.push(VerdictEntry {
        name: "orthogonality relations".into(),
        status: if t.orthogonality_holds() { Status::Pass } else { Status::Fail },
        detail: format!("mod {p}"),
    });
    let sumsq: u64 = t.degrees.iter().map(|d| d * d).sum();
    report.verdicts.push(VerdictEntry {
        name: "degrees square-sum to the order".into(),
        status: if sumsq == g.order as u64 { Status::Pass } else { Status::Fail },
        detail: format!("sum of squares {sumsq}, order {}", g.order),
    });
    report.timing_ms = start.elapsed().as_millis() as u64;
    Ok(report)
}

/// Frobenius reciprocity on all basis vectors of one branching datum.
fn frobenius_holds(b: &BranchingData) -> bool {
    let ng = b.big.rank();
    let nh = b.small.rank();
    (0..ng).all(|v| {
        let down = b.restrict(&b.big.basis(v)).expect("basis length");
        (0..nh).all(|w| {
            let up = b.induce(&b.small.basis(w)).expect("basis length");
            down[w] == up[v]
        })
    })
}

/// Every check the corpus runs against a single group, as verdict entries
/// keyed by the group's spec string.
fn corpus_entry(spec: &str, cfg: &RunConfig) -> Vec<VerdictEntry> {
    let fail = |name: &str, detail: String| VerdictEntry {
        name: format!("{spec}: {name}"),
        status: Status::Fail,
        detail,
    };
    let g = match parse_group(spec, cfg.cap) {
        Ok(g) => g,
        Err(e) => return vec![fail("parse", e.to_string())],
    };
    let p = match cfg.prime {
        Some(p) => p,
        None => choose_prime(&g),
    };
    let tg = match character_table_modp(&g, p) {
        Ok(t) => t,
        Err(e) => return vec![fail("character table", e.to_string())],
    };
    let mut out = Vec::new();
    let entry = |name: &str, pass: bool, detail: String| VerdictEntry {
        name: format!("{spec}: {name}"),
        status: if pass { Status::Pass } else { Status::Fail },
        detail,
    };

    match fusion_from_group(&tg) {
        Ok(f) => {
            let problems = f.validate();
            out.push(entry(
                "fusion axioms",
                problems.is_empty(),
                if problems.is_empty() {
                    format!("rank {}", f.rank())
                } else {
                    problems.join("; ")
                },
            ));
        }
        Err(e) => out.push(fail("fusion ring", e.to_string())),
    }

    let lattice = group::subgroup_lattice(&g);
    let mut caniso_pass = 0usize;
    let mut duality_pass = 0usize;
    let mut duality_total = 0usize;
    let mut iso_pass = 0usize;
    let mut frobenius_pass = 0usize;
    for h in &lattice {
        match verify_caniso(&g, h, cfg.prime, cfg.limit) {
            Ok(r) if r.all_pass() => caniso_pass += 1,
            Ok(r) => {
                let bad: Vec<String> = r
                    .verdicts
                    .iter()
                    .filter(|c| !c.pass)
                    .map(|c| format!("{} ({})", c.name, c.detail))
                    .collect();
                out.push(fail(
                    &format!("caniso H of order {}", h.order()),
                    bad.join("; "),
                ));
            }
            Err(e) => out.push(fail(
                &format!("caniso H of order {}", h.order()),
                e.to_string(),
            )),
        }
        match chain::verify_iso_theorem(h) {
            Ok(c) if c.pass => iso_pass += 1,
            Ok(c) => out.push(fail(
                &format!("iso theorem H of order {}", h.order()),
                c.detail,
            )),
            Err(e) => out.push(fail("iso theorem", e.to_string())),
        }
        let th = match character_table_modp(&Arc::new(h.group.clone()), p) {
            Ok(t) => t,
            Err(e) => {
                out.push(fail("subgroup character table", e.to_string()));
                continue;
            }
        };
        let b = match branching_from_groups(&tg, &th, &h.elements) {
            Ok(b) => b,
            Err(e) => {
                out.push(fail("branching", e.to_string()));
                continue;
            }
        };
        if frobenius_holds(&b) {
            frobenius_pass += 1;
        } else {
            out.push(fail(
                &format!("Frobenius reciprocity H of order {}", h.order()),
                "restriction and induction multiplicities disagree".into(),
            ));
        }
        if group::is_normal(h) {
            duality_total += 1;
            let r = verify_partition_duality(&b);
            if r.all_pass() {
                duality_pass += 1;
            } else {
                let bad: Vec<String> = r
                    .checks
                    .iter()
                    .filter(|c| !c.pass)
                    .map(|c| format!("{} ({})", c.name, c.detail))
                    .collect();
                out.push(fail(
                    &format!("partition duality H of order {}", h.order()),
                    bad.join("; "),
                ));
            }
        }
    }
    let n = lattice.len();
    out.push(entry(
        "chain-group isomorphism sweep",
        caniso_pass == n,
        format!("{caniso_pass}/{n} subgroups"),
    ));
    out.push(entry(
        "partition duality sweep",
        duality_pass == duality_total,
        format!("{duality_pass}/{duality_total} normal subgroups"),
    ));
    out.push(entry(
        "isomorphism theorem sweep",
        iso_pass == n,
        format!("{iso_pass}/{n} subgroups"),
    ));
    out.push(entry(
        "Frobenius reciprocity sweep",
        frobenius_pass == n,
        format!("{frobenius_pass}/{n} subgroups"),
    ));
    out
}

fn manifest_specs(cfg: &RunConfig) -> Result<Vec<String>> {
    match &cfg.manifest {
        None => Ok(DEFAULT_CORPUS.iter().map(|s| s.to_string()).collect()),
        Some(path) => {
            let text = std::fs::read_to_string(path)?;
            Ok(text
                .lines()
                .map(str::trim)
                .filter(|l| !l.is_empty() && !l.starts_with('#'))
                .map(str::to_string)
                .collect())
        }
    }
}

pub fn worker_count(cfg: &RunConfig) -> usize {
    if let Some(w) = cfg.workers {
        return w.max(1);
    }
    std::env::var("CHAINCORE_WORKERS")
        .ok()
        .and_then(|v| v.parse().ok())
        .filter(|&w| w > 0)
        .unwrap_or_else(|| {
            std::thread::available_parallelism().map_or(1, |n| n.get())
        })
}

/// `corpus`: sweep a list of groups (the bundled corpus by default),
/// running every verification on every subgroup in each group's lattice.
pub fn run_corpus(cfg: &RunConfig) -> Result<Report> {
    let start = Instant::now();
    let specs = manifest_specs(cfg)?;
    let mut report = Report::new("corpus");
    report.input("entries", specs.len().to_string());
    if let Some(m) = &cfg.manifest {
        report.input("manifest", m.display().to_string());
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(worker_count(cfg))
        .build()
        .map_err(|e| Error::ParseError(e.to_string()))?;
    let mut entries: Vec<(String, Vec<VerdictEntry>)> = pool.install(|| {
        specs
            .par_iter()
            .map(|spec| (spec.clone(), corpus_entry(spec, cfg)))
            .collect()
    });
    entries.sort_by(|a, b| a.0.cmp(&b.0));
    for (_, vs) in entries {
        report.verdicts.extend(vs);
    }
    let failures = report
        .verdicts
        .iter()
        .filter(|v| v.status == Status::Fail)
        .count();
    report.input("failures", failures.to_string());
    report.timing_ms = start.elapsed().as_millis() as u64;
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(group: &str, subgroup: &str) -> RunConfig {
        RunConfig {
            group: Some(group.into()),
            subgroup: Some(subgroup.into()),
            ..RunConfig::default()
        }
    }

    #[test]
    fn chain_q8_i() {
        let r = run_chaingroup(&cfg("Q8", "gen:[i]")).unwrap();
        assert_eq!(r.overall(), Status::Pass);
        let c = r.chain.as_ref().unwrap();
        assert_eq!(c.invariant_factors, Some(vec![2]));
        assert_eq!(c.tc_order, Some(2));
    }

    #[test]
    fn chain_s3_full_is_trivial() {
        let r = run_chaingroup(&cfg("S3", "full")).unwrap();
        assert_eq!(r.overall(), Status::Pass);
        assert_eq!(r.chain.as_ref().unwrap().invariant_factors, Some(vec![]));
    }

    #[test]
    fn chain_c6_full() {
        let r = run_chaingroup(&cfg("C6", "full")).unwrap();
        assert_eq!(r.overall(), Status::Pass);
        assert_eq!(r.chain.as_ref().unwrap().invariant_factors, Some(vec![6]));
    }

    #[test]
    fn clifford_s3_a3() {
        let r = run_clifford(&cfg("S3", "gen:[(0 1 2)]")).unwrap();
        assert_eq!(r.overall(), Status::Pass);
        let c = r.clifford.as_ref().unwrap();
        assert_eq!(c.sim_h.len(), 2);
        assert_eq!(c.sim_b.len(), 2);
    }

    #[test]
    fn clifford_non_normal_rejected() {
        let err = run_clifford(&cfg("S3", "gen:[(0 1)]")).unwrap_err();
        assert!(matches!(err, Error::NotNormal));
        let mut forced = cfg("S3", "gen:[(0 1)]");
        forced.force = true;
        let r = run_clifford(&forced).unwrap();
        assert_eq!(r.overall(), Status::Fail);
    }

    #[test]
    fn corpus_single_entry_c4() {
        let dir = std::env::temp_dir().join("chaincore_manifest_test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("c4.txt");
        std::fs::write(&path, "C4\n").unwrap();
        let c = RunConfig {
            manifest: Some(path),
            workers: Some(1),
            ..RunConfig::default()
        };
        let r = run_corpus(&c).unwrap();
        assert_eq!(r.overall(), Status::Pass);
        // C4 has exactly 3 subgroups
        let sweep = r
            .verdicts
            .iter()
            .find(|v| v.name == "C4: chain-group isomorphism sweep")
            .unwrap();
        assert_eq!(sweep.detail, "3/3 subgroups");
    }

    #[test]
    fn corpus_empty_manifest() {
        let dir = std::env::temp_dir().join("chaincore_manifest_test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("empty.txt");
        std::fs::write(&path, "# nothing\n").unwrap();
        let c = RunConfig {
            manifest: Some(path),
            ..RunConfig::default()
        };
        let r = run_corpus(&c).unwrap();
        assert_eq!(r.overall(), Status::Pass);
        assert_eq!(r.inputs["entries"], "0");
    }

    #[test]
    fn group_inspection() {
        let r = run_group(&cfg("S4", "full")).unwrap();
        assert_eq!(r.overall(), Status::Pass);
        assert_eq!(r.inputs["degrees"], "[1, 1, 2, 3, 3]");
    }
}
