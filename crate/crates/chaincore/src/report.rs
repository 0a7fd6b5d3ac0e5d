//! Machine- and human-readable run reports. The JSON form round-trips:
//! a report parsed back from its own JSON compares equal.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::chain::ChainGroupReport;
use crate::clifford::{Check, CliffordReport};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Pass,
    Fail,
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerdictEntry {
    pub name: String,
    pub status: Status,
    pub detail: String,
}

impl VerdictEntry {
    pub fn from_check(c: &Check) -> VerdictEntry {
        VerdictEntry {
            name: c.name.clone(),
            status: if c.pass { Status::Pass } else { Status::Fail },
            detail: c.detail.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainSection {
    pub generators: usize,
    pub relations: usize,
    /// None when the abelianization is infinite.
    pub invariant_factors: Option<Vec<u64>>,
    /// None when coset enumeration was exhausted.
    pub tc_order: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CliffordSection {
    #[serde(rename = "simH")]
    pub sim_h: Vec<Vec<String>>,
    #[serde(rename = "simB")]
    pub sim_b: Vec<Vec<String>>,
    pub const_map: BTreeMap<String, Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub inputs: BTreeMap<String, String>,
    pub verdicts: Vec<VerdictEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub chain: Option<ChainSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub clifford: Option<CliffordSection>,
    pub timing_ms: u64,
}

impl Report {
    pub fn new(command: &str) -> Report {
        Report {
            command: command.to_string(),
            inputs: BTreeMap::new(),
            verdicts: Vec::new(),
            chain: None,
            clifford: None,
            timing_ms: 0,
        }
    }

    pub fn input(&mut self, key: &str, value: impl Into<String>) {
        self.inputs.insert(key.to_string(), value.into());
    }

    pub fn push_checks(&mut self, checks: &[Check]) {
        self.verdicts.extend(checks.iter().map(VerdictEntry::from_check));
    }

    pub fn overall(&self) -> Status {
        if self.verdicts.iter().any(|v| v.status == Status::Fail) {
            Status::Fail
        } else if self.verdicts.iter().any(|v| v.status == Status::Inconclusive) {
            Status::Inconclusive
        } else {
            Status::Pass
        }
    }

    /// 0 all PASS, 1 any FAIL, 2 any INCONCLUSIVE.
    pub fn exit_code(&self) -> i32 {
        match self.overall() {
            Status::Pass => 0,
            Status::Fail => 1,
            Status::Inconclusive => 2,
        }
    }

    pub fn set_chain(&mut self, r: &ChainGroupReport) {
        self.chain = Some(ChainSection {
            generators: r.generators,
            relations: r.relations,
            invariant_factors: r.chain_invariants.clone(),
            tc_order: r.tc_order,
        });
    }

    pub fn set_clifford(&mut self, r: &CliffordReport, labels_big: &[String], labels_small: &[String]) {
        let name_all = |blocks: &[Vec<usize>], labels: &[String]| {
            blocks
                .iter()
                .map(|b| b.iter().map(|&i| labels[i].clone()).collect())
                .collect()
        };
        let const_map = r
            .const_map
            .iter()
            .enumerate()
            .map(|(v, supp)| {
                (
                    labels_big[v].clone(),
                    supp.iter().map(|&w| labels_small[w].clone()).collect(),
                )
            })
            .collect();
        self.clifford = Some(CliffordSection {
            sim_h: name_all(&r.sim_h, labels_big),
            sim_b: name_all(&r.sim_b, labels_small),
            const_map,
        });
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        use std::fmt::Write;
        let mut out = String::new();
        writeln!(out, "chaincore {}", self.command).unwrap();
        for (k, v) in &self.inputs {
            writeln!(out, "  {k}: {v}").unwrap();
        }
        if let Some(c) = &self.chain {
            writeln!(out, "chain presentation: {} generators, {} relations", c.generators, c.relations).unwrap();
            match &c.invariant_factors {
                Some(inv) if inv.is_empty() => writeln!(out, "  invariant factors: (trivial)").unwrap(),
                Some(inv) => writeln!(out, "  invariant factors: {inv:?}").unwrap(),
                None => writeln!(out, "  invariant factors: infinite abelianization").unwrap(),
            }
            match c.tc_order {
                Some(n) => writeln!(out, "  coset enumeration order: {n}").unwrap(),
                None => writeln!(out, "  coset enumeration: exhausted").unwrap(),
            }
        }
        if let Some(c) = &self.clifford {
            let fmt_blocks = |blocks: &[Vec<String>]| {
                blocks
                    .iter()
                    .map(|b| format!("{{{}}}", b.join(", ")))
                    .collect::<Vec<_>>()
                    .join(" ")
            };
            writeln!(out, "simH blocks: {}", fmt_blocks(&c.sim_h)).unwrap();
            writeln!(out, "simB blocks: {}", fmt_blocks(&c.sim_b)).unwrap();
            for (v, supp) in &c.const_map {
                writeln!(out, "  const({v}) = {{{}}}", supp.join(", ")).unwrap();
            }
        }
        for v in &self.verdicts {
            let tag = match v.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::Inconclusive => "INCONCLUSIVE",
            };
            writeln!(out, "[{tag}] {}: {}", v.name, v.detail).unwrap();
        }
        let overall = match self.overall() {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Inconclusive => "INCONCLUSIVE",
        };
        writeln!(out, "overall: {overall} ({} ms)", self.timing_ms).unwrap();
        out
    }
}
