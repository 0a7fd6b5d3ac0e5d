//! Fusion rings and branching data: derived from modular character tables
//! for honest finite groups, or ingested from JSON files for quantum
//! examples, plus restriction/induction at the multiplicity level.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::charmodp::CharacterTableModP;
use crate::error::{Error, Result};

/// A fusion ring: simple-object labels, dimensions and the multiplicity
/// tensor N^U_{V,W}, stored as (V, W) -> dense vector over U.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FusionData {
    pub labels: Vec<String>,
    pub dims: Vec<u64>,
    pub unit: usize,
    pub dual: Vec<usize>,
    pub tensor: BTreeMap<(usize, usize), Vec<u64>>,
    pub commutative: bool,
    /// Invariant factors the chain group of this ring is expected to have,
    /// when the authoring side knows them (file input only).
    pub expected_chain_group: Option<Vec<u64>>,
}

impl FusionData {
    pub fn rank(&self) -> usize {
        self.labels.len()
    }

    pub fn n(&self, v: usize, w: usize) -> &[u64] {
        &self.tensor[&(v, w)]
    }

    /// Basis vector of the simple object `v` in the representation ring.
    pub fn basis(&self, v: usize) -> Vec<u64> {
        let mut x = vec![0u64; self.rank()];
        x[v] = 1;
        x
    }

    /// Product of two multiplicity vectors in the representation ring.
    pub fn multiply(&self, x: &[u64], y: &[u64]) -> Vec<u64> {
        let mut out = vec![0u64; self.rank()];
        for v in 0..self.rank() {
            if x[v] == 0 {
                continue;
            }
            for w in 0..self.rank() {
                if y[w] == 0 {
                    continue;
                }
                let coeff = x[v] * y[w];
                for (u, &m) in self.n(v, w).iter().enumerate() {
                    out[u] += coeff * m;
                }
            }
        }
        out
    }

    /// Check every fusion axiom; returns one line per failed identity.
    pub fn validate(&self) -> Vec<String> {
        let n = self.rank();
        let mut bad = Vec::new();
        if self.dims.len() != n || self.dual.len() != n || self.unit >= n {
            bad.push("shape: labels/dims/dual lengths or unit index inconsistent".into());
            return bad;
        }
        for v in 0..n {
            for w in 0..n {
                if self.tensor.get(&(v, w)).map(|t| t.len()) != Some(n) {
                    bad.push(format!("shape: tensor entry ({v},{w}) missing or wrong length"));
                    return bad;
                }
            }
        }
        for v in 0..n {
            for u in 0..n {
                if self.n(self.unit, v)[u] != u64::from(u == v) {
                    bad.push(format!("unit law: N^{u}_(unit,{v}) != delta"));
                }
                if self.n(v, self.unit)[u] != u64::from(u == v) {
                    bad.push(format!("unit law: N^{u}_({v},unit) != delta"));
                }
            }
        }
        for v in 0..n {
            for w in 0..n {
                let want = u64::from(w == self.dual[v]);
                if self.n(v, w)[self.unit] != want {
                    bad.push(format!("dual law: N^unit_({v},{w}) = {} expected {want}", self.n(v, w)[self.unit]));
                }
            }
        }
        for v in 0..n {
            for w in 0..n {
                let total: u64 = self.n(v, w).iter().zip(&self.dims).map(|(m, d)| m * d).sum();
                if total != self.dims[v] * self.dims[w] {
                    bad.push(format!(
                        "dimension law: sum N^U_({v},{w}) dim U = {total} != {}",
                        self.dims[v] * self.dims[w]
                    ));
                }
            }
        }
        // associativity: (V x W) x Y = V x (W x Y) coefficientwise
        for v in 0..n {
            for w in 0..n {
                for y in 0..n {
                    for u in 0..n {
                        let lhs: u64 = (0..n).map(|x| self.n(v, w)[x] * self.n(x, y)[u]).sum();
                        let rhs: u64 = (0..n).map(|x| self.n(w, y)[x] * self.n(v, x)[u]).sum();
                        if lhs != rhs {
                            bad.push(format!("associativity: ({v},{w},{y}) -> {u}: {lhs} != {rhs}"));
                        }
                    }
                }
            }
        }
        if self.commutative {
            for v in 0..n {
                for w in 0..n {
                    if self.n(v, w) != self.n(w, v) {
                        bad.push(format!("commutativity: N_({v},{w}) != N_({w},{v})"));
                    }
                }
            }
        }
        bad
    }
}

/// Restriction multiplicities from a big fusion ring to a small one.
/// Row V (over the big ring), column W (over the small one).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BranchingData {
    pub big: FusionData,
    pub small: FusionData,
    pub b: Vec<Vec<u64>>,
}

impl BranchingData {
    /// The H = G case: branching along the identity.
    pub fn identity(f: FusionData) -> BranchingData {
        let n = f.rank();
        let b = (0..n)
            .map(|i| (0..n).map(|j| u64::from(i == j)).collect())
            .collect();
        BranchingData {
            small: f.clone(),
            big: f,
            b,
        }
    }

    pub fn restrict(&self, x: &[u64]) -> Result<Vec<u64>> {
        if x.len() != self.big.rank() {
            return Err(Error::DimensionMismatch {
                want: self.big.rank(),
                got: x.len(),
            });
        }
        let mut out = vec![0u64; self.small.rank()];
        for (v, &xv) in x.iter().enumerate() {
            if xv == 0 {
                continue;
            }
            for (w, o) in out.iter_mut().enumerate() {
                *o += xv * self.b[v][w];
            }
        }
        Ok(out)
    }

    pub fn induce(&self, y: &[u64]) -> Result<Vec<u64>> {
        if y.len() != self.small.rank() {
            return Err(Error::DimensionMismatch {
                want: self.small.rank(),
                got: y.len(),
            });
        }
        Ok(self
            .b
            .iter()
            .map(|row| row.iter().zip(y).map(|(&b, &y)| b * y).sum())
            .collect())
    }

    /// True iff U and V (x) W share a simple constituent after restriction.
    pub fn non_disjoint(&self, u: usize, v: usize, w: usize) -> bool {
        let ru = self.restrict(&self.big.basis(u)).unwrap();
        let rv = self.restrict(&self.big.basis(v)).unwrap();
        let rw = self.restrict(&self.big.basis(w)).unwrap();
        let prod = self.small.multiply(&rv, &rw);
        ru.iter().zip(&prod).any(|(&a, &b)| a * b > 0)
    }

    /// Branching-specific axioms; one line per failure.
    pub fn validate(&self) -> Vec<String> {
        let mut bad = Vec::new();
        let (ng, nh) = (self.big.rank(), self.small.rank());
        if self.b.len() != ng || self.b.iter().any(|r| r.len() != nh) {
            bad.push("shape: branching matrix dimensions".into());
            return bad;
        }
        for v in 0..ng {
            let total: u64 = self.b[v].iter().zip(&self.small.dims).map(|(m, d)| m * d).sum();
            if total != self.big.dims[v] {
                bad.push(format!("row dimension: restriction of {v} has dim {total} != {}", self.big.dims[v]));
            }
        }
        for w in 0..nh {
            let want = u64::from(w == self.small.unit);
            if self.b[self.big.unit][w] != want {
                bad.push(format!("unit row: B[unit,{w}] = {} expected {want}", self.b[self.big.unit][w]));
            }
        }
        // restriction is a ring map
        for v in 0..ng {
            for w in 0..ng {
                let mut lhs = vec![0u64; nh];
                for (u, &m) in self.big.n(v, w).iter().enumerate() {
                    for x in 0..nh {
                        lhs[x] += m * self.b[u][x];
                    }
                }
                let rhs = self.small.multiply(&self.b[v], &self.b[w]);
                if lhs != rhs {
                    bad.push(format!("ring map: restriction of {v} (x) {w} disagrees"));
                }
            }
        }
        bad
    }
}

/// Fusion ring of a finite group from its mod-p character table: tensor
/// multiplicities via pointwise character products, duals via the class of
/// inverses.
pub fn fusion_from_group(t: &CharacterTableModP) -> Result<FusionData> {
    let r = t.num_irreps();
    let fp = &t.fp;
    let mut tensor = BTreeMap::new();
    for v in 0..r {
        for w in 0..r {
            let phi: Vec<u64> = (0..r).map(|j| fp.mul(t.table[v][j], t.table[w][j])).collect();
            let mults = t.decompose(&phi, Some(t.degrees[v] * t.degrees[w]))?;
            tensor.insert((v, w), mults);
        }
    }
    let mut dual = vec![0usize; r];
    for v in 0..r {
        let conj: Vec<u64> = (0..r).map(|j| t.table[v][t.classes[j].inverse_class]).collect();
        dual[v] = (0..r)
            .position(|w| t.table[w] == conj)
            .expect("the conjugate of an irreducible character is in the table");
    }
    Ok(FusionData {
        labels: (0..r).map(|i| format!("chi{i}")).collect(),
        dims: t.degrees.clone(),
        unit: 0,
        dual,
        tensor,
        commutative: true,
        expected_chain_group: None,
    })
}

/// Restriction multiplicities along an embedding of groups, both character
/// tables at the same prime. `embed[h]` is the image in G of element h of H.
pub fn branching_from_groups(
    tg: &CharacterTableModP,
    th: &CharacterTableModP,
    embed: &[usize],
) -> Result<BranchingData> {
    if tg.p != th.p {
        return Err(Error::PrimeMismatch(tg.p, th.p));
    }
    let g = &tg.group;
    let h = &th.group;
    if embed.len() != h.order {
        return Err(Error::NotAHomomorphism("domain size mismatch".into()));
    }
    let mut seen = std::collections::HashSet::new();
    for &x in embed {
        if x >= g.order || !seen.insert(x) {
            return Err(Error::NotAHomomorphism("not injective or out of range".into()));
        }
    }
    for a in 0..h.order {
        for b in 0..h.order {
            if embed[h.mul(a, b)] != g.mul(embed[a], embed[b]) {
                return Err(Error::NotAHomomorphism(format!(
                    "embed({a}*{b}) != embed({a})*embed({b})"
                )));
            }
        }
    }
    let fp = &tg.fp;
    let ng = tg.num_irreps();
    let nh = th.num_irreps();
    let h_inv = fp.inv((h.order as u64) % fp.p);
    let mut b = vec![vec![0u64; nh]; ng];
    for v in 0..ng {
        for w in 0..nh {
            let mut acc = 0u64;
            for x in 0..h.order {
                let cv = tg.table[v][tg.class_of[embed[x]]];
                let cw = th.table[w][th.class_of[h.inv[x]]];
                acc = fp.add(acc, fp.mul(cv, cw));
            }
            b[v][w] = fp.mul(acc, h_inv);
        }
    }
    let big = fusion_from_group(tg)?;
    let small = fusion_from_group(th)?;
    for v in 0..ng {
        let total: u64 = b[v].iter().zip(&small.dims).map(|(m, d)| m * d).sum();
        if total != big.dims[v] {
            return Err(Error::NonIntegral(format!(
                "branching row {v} lifts to dimension {total}, expected {}",
                big.dims[v]
            )));
        }
    }
    Ok(BranchingData { big, small, b })
}

// ---- JSON file format ----

#[derive(Debug, Serialize, Deserialize)]
struct TensorEntryFile {
    v: usize,
    w: usize,
    out: Vec<u64>,
}

#[derive(Debug, Serialize, Deserialize)]
struct FusionBody {
    labels: Vec<String>,
    dims: Vec<u64>,
    unit: usize,
    dual: Vec<usize>,
    tensor: Vec<TensorEntryFile>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    expected_chain_group: Option<Vec<u64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    comment: Option<String>,
}

#[derive(Debug, Serialize, Deserialize)]
struct BranchingBody {
    small: FusionBody,
    matrix: Vec<Vec<u64>>,
}

#[derive(Debug, Serialize, Deserialize)]
struct FusionFile {
    #[serde(flatten)]
    fusion: FusionBody,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    branching: Option<BranchingBody>,
}

fn body_to_fusion(body: FusionBody) -> Result<FusionData> {
    let n = body.labels.len();
    if body.dims.len() != n || body.dual.len() != n || body.unit >= n {
        return Err(Error::ParseError("labels/dims/dual lengths or unit index inconsistent".into()));
    }
    let mut tensor: BTreeMap<(usize, usize), Vec<u64>> = BTreeMap::new();
    for e in body.tensor {
        if e.v >= n || e.w >= n || e.out.len() != n {
            return Err(Error::ParseError(format!("tensor entry ({},{}) out of range", e.v, e.w)));
        }
        if tensor.insert((e.v, e.w), e.out).is_some() {
            return Err(Error::ParseError(format!("duplicate tensor entry ({},{})", e.v, e.w)));
        }
    }
    // materialize omitted pairs: unit law where forced, zero otherwise
    for v in 0..n {
        for w in 0..n {
            tensor.entry((v, w)).or_insert_with(|| {
                if v == body.unit {
                    (0..n).map(|u| u64::from(u == w)).collect()
                } else if w == body.unit {
                    (0..n).map(|u| u64::from(u == v)).collect()
                } else {
                    vec![0u64; n]
                }
            });
        }
    }
    let commutative = (0..n).all(|v| (0..n).all(|w| tensor[&(v, w)] == tensor[&(w, v)]));
    let f = FusionData {
        labels: body.labels,
        dims: body.dims,
        unit: body.unit,
        dual: body.dual,
        tensor,
        commutative,
        expected_chain_group: body.expected_chain_group,
    };
    let bad = f.validate();
    if !bad.is_empty() {
        return Err(Error::ValidationError(bad.join("; ")));
    }
    Ok(f)
}

/// Load a fusion file, validating every axiom. Non-commutative rings are
/// rejected unless `allow_noncommutative` is set.
pub fn load_fusion_file(
    path: &Path,
    allow_noncommutative: bool,
) -> Result<(FusionData, Option<BranchingData>)> {
    let text = std::fs::read_to_string(path)?;
    let file: FusionFile =
        serde_json::from_str(&text).map_err(|e| Error::ParseError(e.to_string()))?;
    let big = body_to_fusion(file.fusion)?;
    if !big.commutative && !allow_noncommutative {
        return Err(Error::NonCommutativeFusion);
    }
    let branching = match file.branching {
        None => None,
        Some(bb) => {
            let small = body_to_fusion(bb.small)?;
            let b = BranchingData {
                big: big.clone(),
                small,
                b: bb.matrix,
            };
            let bad = b.validate();
            if !bad.is_empty() {
                return Err(Error::ValidationError(bad.join("; ")));
            }
            Some(b)
        }
    };
    Ok((big, branching))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::charmodp::{character_table_modp, choose_prime};
    use crate::group::{quaternion, subgroup_generated, symmetric, Subgroup};
    use std::sync::Arc;

    fn s3_tables() -> (CharacterTableModP, CharacterTableModP, Vec<usize>) {
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
        (tg, th, a3.elements)
    }

    fn sub_table(h: &Subgroup, p: u64) -> CharacterTableModP {
        character_table_modp(&Arc::new(h.group.clone()), p).unwrap()
    }

    #[test]
    fn s3_fusion() {
        let (tg, _, _) = s3_tables();
        let f = fusion_from_group(&tg).unwrap();
        assert!(f.validate().is_empty());
        // std (x) std = triv + sgn + std
        assert_eq!(f.n(2, 2), &[1, 1, 1]);
        // unit law
        for v in 0..3 {
            assert_eq!(f.n(0, v), &f.basis(v)[..]);
        }
    }

    #[test]
    fn q8_fusion() {
        let g = Arc::new(quaternion());
        let t = character_table_modp(&g, 13).unwrap();
        let f = fusion_from_group(&t).unwrap();
        assert!(f.validate().is_empty());
        let two = f.dims.iter().position(|&d| d == 2).unwrap();
        // t (x) t = sum of the four one-dims
        let mut want = vec![1u64; 5];
        want[two] = 0;
        assert_eq!(f.n(two, two), &want[..]);
        let sq: u64 = f.dims.iter().map(|d| d * d).sum();
        assert_eq!(sq, 8);
    }

    #[test]
    fn corrupted_fusion_reported() {
        let (tg, _, _) = s3_tables();
        let mut f = fusion_from_group(&tg).unwrap();
        f.tensor.insert((0, 1), vec![1, 0, 0]); // break the unit law
        let bad = f.validate();
        assert!(bad.iter().any(|m| m.contains("unit law")));
    }

    #[test]
    fn s3_a3_branching() {
        let (tg, th, embed) = s3_tables();
        let b = branching_from_groups(&tg, &th, &embed).unwrap();
        assert!(b.validate().is_empty());
        assert_eq!(b.b[0], vec![1, 0, 0]);
        assert_eq!(b.b[1], vec![1, 0, 0]);
        // std restricts to the two nontrivial characters of A3
        assert_eq!(b.b[2][0], 0);
        assert_eq!(b.b[2][1] + b.b[2][2], 2);
        assert_eq!(b.b[2][1], 1);

        // restrict/induce examples
        assert_eq!(b.restrict(&[0, 0, 1]).unwrap(), vec![0, 1, 1]);
        assert_eq!(b.restrict(&[0, 0, 0]).unwrap(), vec![0, 0, 0]);
        assert_eq!(b.restrict(&[1, 1, 0]).unwrap(), vec![2, 0, 0]);
        assert_eq!(b.induce(&[1, 0, 0]).unwrap(), vec![1, 1, 0]);
        assert_eq!(b.induce(&[0, 1, 0]).unwrap(), vec![0, 0, 1]);
        assert!(matches!(
            b.restrict(&[1, 2]),
            Err(Error::DimensionMismatch { want: 3, got: 2 })
        ));
    }

    #[test]
    fn identity_branching_is_identity() {
        let (tg, _, _) = s3_tables();
        let f = fusion_from_group(&tg).unwrap();
        let b = BranchingData::identity(f);
        assert!(b.validate().is_empty());
        for v in 0..3 {
            assert_eq!(b.induce(&b.big.basis(v)).unwrap(), b.big.basis(v));
        }
    }

    #[test]
    fn everything_restricts_to_trivial_subgroup() {
        let g = Arc::new(symmetric(3));
        let p = choose_prime(&g);
        let tg = character_table_modp(&g, p).unwrap();
        let triv = crate::group::trivial_subgroup(&g);
        let th = sub_table(&triv, p);
        let b = branching_from_groups(&tg, &th, &triv.elements).unwrap();
        for v in 0..3 {
            assert_eq!(b.b[v], vec![b.big.dims[v]]);
        }
    }

    #[test]
    fn frobenius_reciprocity() {
        let (tg, th, embed) = s3_tables();
        let b = branching_from_groups(&tg, &th, &embed).unwrap();
        for v in 0..b.big.rank() {
            for w in 0..b.small.rank() {
                let lhs: u64 = b
                    .restrict(&b.big.basis(v))
                    .unwrap()
                    .iter()
                    .zip(&b.small.basis(w))
                    .map(|(&a, &c)| a * c)
                    .sum();
                let rhs: u64 = b
                    .induce(&b.small.basis(w))
                    .unwrap()
                    .iter()
                    .zip(&b.big.basis(v))
                    .map(|(&a, &c)| a * c)
                    .sum();
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn non_disjoint_examples() {
        let q8 = Arc::new(quaternion());
        let p = choose_prime(&q8);
        let tg = character_table_modp(&q8, p).unwrap();
        let z = crate::group::center(&q8);
        let th = sub_table(&z, p);
        let b = branching_from_groups(&tg, &th, &z.elements).unwrap();
        let two = b.big.dims.iter().position(|&d| d == 2).unwrap();
        let one_dims: Vec<usize> = (0..5).filter(|&i| i != two).collect();
        // a 1-dim vs t (x) t: both restrict through the trivial central character
        assert!(b.non_disjoint(one_dims[1], two, two));
        // t vs (1-dim (x) 1-dim): sign character vs trivial
        assert!(!b.non_disjoint(two, one_dims[0], one_dims[1]));
        // U = V, W = unit
        assert!(b.non_disjoint(two, two, b.big.unit));
    }

    #[test]
    fn bad_embedding_rejected() {
        let (tg, th, _) = s3_tables();
        assert!(matches!(
            branching_from_groups(&tg, &th, &[0, 0, 0]),
            Err(Error::NotAHomomorphism(_))
        ));
        let g = Arc::new(symmetric(3));
        let t5 = character_table_modp(&g, 13).unwrap();
        assert!(matches!(
            branching_from_groups(&tg, &t5, &[0, 1, 2, 3, 4, 5]),
            Err(Error::PrimeMismatch(7, 13))
        ));
    }
}
