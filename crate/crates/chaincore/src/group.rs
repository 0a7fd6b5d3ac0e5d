//! Finite groups as explicit multiplication tables, built by closing a set
//! of permutation generators, plus the subgroup operations the rest of the
//! engine needs: intersections, joins, centers, normality, quotients and
//! conjugacy classes.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::sync::Arc;

use crate::error::{Error, Result};

/// A finite group materialized as a full multiplication table.
/// The identity is always element 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    pub order: usize,
    mul: Vec<usize>,
    pub inv: Vec<usize>,
    pub identity: usize,
    pub labels: Vec<String>,
    pub exponent: usize,
    /// Underlying permutations when the group was built from permutation
    /// generators; used only to match `perm:` subgroup specs.
    pub perms: Option<Vec<Vec<usize>>>,
}

/// One conjugacy class: a representative, its members, and the index of the
/// class containing the inverses.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjClass {
    pub rep: usize,
    pub members: Vec<usize>,
    pub inverse_class: usize,
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

impl FiniteGroup {
    /// Build from a raw table; computes identity, inverses and exponent and
    /// checks the group axioms by exhaustive scan.
    pub fn from_table(
        table: Vec<Vec<usize>>,
        labels: Vec<String>,
        perms: Option<Vec<Vec<usize>>>,
    ) -> Result<FiniteGroup> {
        let n = table.len();
        assert_eq!(labels.len(), n);
        let bad = |m: &str| Error::InvalidPermutation(m.to_string());
        let identity = (0..n)
            .find(|&e| (0..n).all(|a| table[e][a] == a && table[a][e] == a))
            .ok_or_else(|| bad("table has no identity"))?;
        if identity != 0 {
            return Err(bad("identity must be element 0"));
        }
        let mut inv = vec![usize::MAX; n];
        for a in 0..n {
            inv[a] = (0..n)
                .find(|&b| table[a][b] == identity)
                .ok_or_else(|| bad("element without inverse"))?;
        }
        let mut flat = Vec::with_capacity(n * n);
        for row in &table {
            if row.len() != n || row.iter().any(|&x| x >= n) {
                return Err(bad("malformed multiplication table"));
            }
            flat.extend_from_slice(row);
        }
        let mut g = FiniteGroup {
            order: n,
            mul: flat,
            inv,
            identity,
            labels,
            exponent: 1,
            perms,
        };
        // full associativity scan is cubic; above this size spot-check instead
        if n <= 128 {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        if g.mul(a, g.mul(b, c)) != g.mul(g.mul(a, b), c) {
                            return Err(bad("table is not associative"));
                        }
                    }
                }
            }
        } else {
            let step = n / 32 + 1;
            for a in (0..n).step_by(step) {
                for b in (0..n).step_by(step) {
                    for c in (0..n).step_by(step) {
                        if g.mul(a, g.mul(b, c)) != g.mul(g.mul(a, b), c) {
                            return Err(bad("table is not associative"));
                        }
                    }
                }
            }
        }
        g.exponent = (0..n).fold(1, |e, a| lcm(e, g.element_order(a)));
        Ok(g)
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order + b]
    }

    pub fn pow(&self, a: usize, k: usize) -> usize {
        let mut acc = self.identity;
        for _ in 0..k {
            acc = self.mul(acc, a);
        }
        acc
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn conjugate(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inv[g])
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (0..self.order).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn conjugacy_classes(&self) -> Vec<ConjClass> {
        let mut class_of = vec![usize::MAX; self.order];
        let mut classes: Vec<ConjClass> = Vec::new();
        for x in 0..self.order {
            if class_of[x] != usize::MAX {
                continue;
            }
            let id = classes.len();
            let mut members: BTreeSet<usize> = BTreeSet::new();
            for g in 0..self.order {
                members.insert(self.conjugate(g, x));
            }
            for &m in &members {
                class_of[m] = id;
            }
            classes.push(ConjClass {
                rep: x,
                members: members.into_iter().collect(),
                inverse_class: usize::MAX,
            });
        }
        for i in 0..classes.len() {
            classes[i].inverse_class = class_of[self.inv[classes[i].rep]];
        }
        classes
    }
}

/// Compose permutations: `(a * b)(x) = a(b(x))`.
fn compose(a: &[usize], b: &[usize]) -> Vec<usize> {
    b.iter().map(|&x| a[x]).collect()
}

fn check_permutation(p: &[usize], degree: usize) -> Result<()> {
    let mut seen = vec![false; degree];
    if p.len() != degree {
        return Err(Error::InvalidPermutation(format!(
            "degree mismatch: {} vs {}",
            p.len(),
            degree
        )));
    }
    for &x in p {
        if x >= degree || seen[x] {
            return Err(Error::InvalidPermutation(format!("bad image list {p:?}")));
        }
        seen[x] = true;
    }
    Ok(())
}

fn generator_name(i: usize) -> String {
    if i < 26 {
        ((b'a' + i as u8) as char).to_string()
    } else {
        format!("g{i}")
    }
}

/// Breadth-first closure of a permutation generating set. Element labels are
/// the shortest words in the generator names found by the search.
pub fn group_from_generators(gens: &[Vec<usize>], cap: usize) -> Result<FiniteGroup> {
    let degree = gens.first().map_or(1, |g| g.len());
    for g in gens {
        check_permutation(g, degree)?;
    }
    let identity: Vec<usize> = (0..degree).collect();
    let mut elements = vec![identity.clone()];
    let mut words = vec!["e".to_string()];
    let mut index: HashMap<Vec<usize>, usize> = HashMap::new();
    index.insert(identity, 0);
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        for (gi, g) in gens.iter().enumerate() {
            let prod = compose(&elements[i], g);
            if !index.contains_key(&prod) {
                if elements.len() >= cap {
                    return Err(Error::CapExceeded(cap));
                }
                let word = if i == 0 {
                    generator_name(gi)
                } else {
                    format!("{}{}", words[i], generator_name(gi))
                };
                index.insert(prod.clone(), elements.len());
                elements.push(prod);
                words.push(word);
                queue.push_back(elements.len() - 1);
            }
        }
    }
    let n = elements.len();
    let mut table = vec![vec![0usize; n]; n];
    for a in 0..n {
        for b in 0..n {
            table[a][b] = index[&compose(&elements[a], &elements[b])];
        }
    }
    FiniteGroup::from_table(table, words, Some(elements))
}

/// Direct product; acts on the disjoint union of the factors' domains when
/// both factors carry permutations.
pub fn direct_product(g: &FiniteGroup, h: &FiniteGroup) -> FiniteGroup {
    let (n, m) = (g.order, h.order);
    let idx = |i: usize, j: usize| i * m + j;
    let mut table = vec![vec![0usize; n * m]; n * m];
    let mut labels = vec![String::new(); n * m];
    for i in 0..n {
        for j in 0..m {
            labels[idx(i, j)] = format!("({},{})", g.labels[i], h.labels[j]);
            for k in 0..n {
                for l in 0..m {
                    table[idx(i, j)][idx(k, l)] = idx(g.mul(i, k), h.mul(j, l));
                }
            }
        }
    }
    let perms = match (&g.perms, &h.perms) {
        (Some(pg), Some(ph)) => {
            let dg = pg[0].len();
            let dh = ph[0].len();
            let mut ps = Vec::with_capacity(n * m);
            for i in 0..n {
                for j in 0..m {
                    let mut p: Vec<usize> = pg[i].clone();
                    p.extend(ph[j].iter().map(|&x| x + dg));
                    debug_assert_eq!(p.len(), dg + dh);
                    ps.push(p);
                }
            }
            Some(ps)
        }
        _ => None,
    };
    FiniteGroup::from_table(table, labels, perms).expect("product of groups is a group")
}

// ---- presets ----

pub fn cyclic(n: usize) -> FiniteGroup {
    assert!(n >= 1);
    let cycle: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
    if n == 1 {
        return group_from_generators(&[], 2).unwrap();
    }
    group_from_generators(&[cycle], n + 1).unwrap()
}

fn cycle_perm(degree: usize, points: &[usize]) -> Vec<usize> {
    let mut p: Vec<usize> = (0..degree).collect();
    for w in 0..points.len() {
        p[points[w]] = points[(w + 1) % points.len()];
    }
    p
}

pub fn symmetric(n: usize) -> FiniteGroup {
    assert!(n >= 1);
    if n == 1 {
        return group_from_generators(&[], 2).unwrap();
    }
    let mut gens = vec![cycle_perm(n, &[0, 1])];
    if n > 2 {
        gens.push(cycle_perm(n, &(0..n).collect::<Vec<_>>()));
    }
    group_from_generators(&gens, (1..=n).product::<usize>() + 1).unwrap()
}

pub fn alternating(n: usize) -> FiniteGroup {
    assert!(n >= 3);
    let three = cycle_perm(n, &[0, 1, 2]);
    let long = if n % 2 == 1 {
        cycle_perm(n, &(0..n).collect::<Vec<_>>())
    } else {
        cycle_perm(n, &(1..n).collect::<Vec<_>>())
    };
    let cap = (1..=n).product::<usize>() / 2 + 1;
    group_from_generators(&[three, long], cap).unwrap()
}

/// Dihedral group of order 2n.
pub fn dihedral(n: usize) -> FiniteGroup {
    assert!(n >= 2);
    let r = cycle_perm(n, &(0..n).collect::<Vec<_>>());
    let s: Vec<usize> = (0..n).map(|i| (n - i) % n).collect();
    group_from_generators(&[r, s], 2 * n + 1).unwrap()
}

/// The quaternion group {±1, ±i, ±j, ±k}.
pub fn quaternion() -> FiniteGroup {
    // regular action of Q8 on itself, elements ordered 1,-1,i,-i,j,-j,k,-k
    let labels = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"];
    // quaternion units as (sign, axis) with axis 0 = 1, 1 = i, 2 = j, 3 = k
    let split = |x: usize| -> (i32, usize) {
        let sign = if x % 2 == 0 { 1 } else { -1 };
        (sign, x / 2)
    };
    let fuse = |sign: i32, axis: usize| -> usize {
        let base = axis * 2;
        if sign == 1 {
            base
        } else {
            base + 1
        }
    };
    let unit_mul = |a: usize, b: usize| -> (i32, usize) {
        // multiplication of 1,i,j,k
        match (a, b) {
            (0, x) => (1, x),
            (x, 0) => (1, x),
            (x, y) if x == y => (-1, 0),
            (1, 2) => (1, 3),
            (2, 1) => (-1, 3),
            (2, 3) => (1, 1),
            (3, 2) => (-1, 1),
            (3, 1) => (1, 2),
            (1, 3) => (-1, 2),
            _ => unreachable!(),
        }
    };
    let mut table = vec![vec![0usize; 8]; 8];
    for a in 0..8 {
        for b in 0..8 {
            let (sa, ua) = split(a);
            let (sb, ub) = split(b);
            let (s, u) = unit_mul(ua, ub);
            table[a][b] = fuse(sa * sb * s, u);
        }
    }
    FiniteGroup::from_table(table, labels.iter().map(|s| s.to_string()).collect(), None).unwrap()
}

/// SL(2,3): 2x2 matrices over F_3 of determinant 1, order 24.
pub fn sl2_3() -> FiniteGroup {
    let mut mats: Vec<[i64; 4]> = Vec::new();
    for a in 0..3i64 {
        for b in 0..3i64 {
            for c in 0..3i64 {
                for d in 0..3i64 {
                    if (a * d - b * c).rem_euclid(3) == 1 {
                        mats.push([a, b, c, d]);
                    }
                }
            }
        }
    }
    // identity first
    let id_pos = mats.iter().position(|m| *m == [1, 0, 0, 1]).unwrap();
    mats.swap(0, id_pos);
    let index: HashMap<[i64; 4], usize> = mats.iter().enumerate().map(|(i, &m)| (m, i)).collect();
    let mm = |x: &[i64; 4], y: &[i64; 4]| -> [i64; 4] {
        [
            (x[0] * y[0] + x[1] * y[2]).rem_euclid(3),
            (x[0] * y[1] + x[1] * y[3]).rem_euclid(3),
            (x[2] * y[0] + x[3] * y[2]).rem_euclid(3),
            (x[2] * y[1] + x[3] * y[3]).rem_euclid(3),
        ]
    };
    let n = mats.len();
    let mut table = vec![vec![0usize; n]; n];
    for i in 0..n {
        for j in 0..n {
            table[i][j] = index[&mm(&mats[i], &mats[j])];
        }
    }
    let labels = mats
        .iter()
        .map(|m| format!("[{},{};{},{}]", m[0], m[1], m[2], m[3]))
        .collect();
    FiniteGroup::from_table(table, labels, None).unwrap()
}

// ---- subgroups ----

/// A subgroup carried as a sorted set of parent indices together with a
/// materialized group on those elements (subgroup index i is `elements[i]`).
#[derive(Debug, Clone)]
pub struct Subgroup {
    pub parent: Arc<FiniteGroup>,
    pub elements: Vec<usize>,
    pub group: FiniteGroup,
}

impl Subgroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, parent_index: usize) -> bool {
        self.elements.binary_search(&parent_index).is_ok()
    }

    pub fn same_parent(&self, other: &Subgroup) -> bool {
        Arc::ptr_eq(&self.parent, &other.parent)
    }

    fn from_element_set(parent: &Arc<FiniteGroup>, set: &BTreeSet<usize>) -> Subgroup {
        let elements: Vec<usize> = set.iter().copied().collect();
        debug_assert_eq!(elements[0], parent.identity);
        let pos: HashMap<usize, usize> = elements.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        let n = elements.len();
        let mut table = vec![vec![0usize; n]; n];
        for i in 0..n {
            for j in 0..n {
                table[i][j] = pos[&parent.mul(elements[i], elements[j])];
            }
        }
        let labels = elements.iter().map(|&e| parent.labels[e].clone()).collect();
        let perms = parent
            .perms
            .as_ref()
            .map(|ps| elements.iter().map(|&e| ps[e].clone()).collect());
        let group = FiniteGroup::from_table(table, labels, perms).expect("closed subset is a group");
        assert_eq!(parent.order % n, 0, "Lagrange violated: subset not a subgroup");
        Subgroup {
            parent: Arc::clone(parent),
            elements,
            group,
        }
    }
}

fn close_under_mul(parent: &FiniteGroup, seed: &BTreeSet<usize>) -> BTreeSet<usize> {
    let mut set = seed.clone();
    set.insert(parent.identity);
    let mut frontier: Vec<usize> = set.iter().copied().collect();
    while let Some(x) = frontier.pop() {
        let snapshot: Vec<usize> = set.iter().copied().collect();
        for &y in &snapshot {
            for z in [parent.mul(x, y), parent.mul(y, x), parent.inv[x]] {
                if set.insert(z) {
                    frontier.push(z);
                }
            }
        }
    }
    set
}

/// Smallest subgroup containing the given parent elements.
pub fn subgroup_generated(parent: &Arc<FiniteGroup>, elems: &[usize]) -> Subgroup {
    let seed: BTreeSet<usize> = elems.iter().copied().collect();
    assert!(seed.iter().all(|&e| e < parent.order), "element index out of range");
    let set = close_under_mul(parent, &seed);
    Subgroup::from_element_set(parent, &set)
}

pub fn trivial_subgroup(parent: &Arc<FiniteGroup>) -> Subgroup {
    subgroup_generated(parent, &[])
}

pub fn full_subgroup(parent: &Arc<FiniteGroup>) -> Subgroup {
    subgroup_generated(parent, &(0..parent.order).collect::<Vec<_>>())
}

pub fn intersection(h: &Subgroup, k: &Subgroup) -> Result<Subgroup> {
    if !h.same_parent(k) {
        return Err(Error::ParentMismatch);
    }
    let set: BTreeSet<usize> = h
        .elements
        .iter()
        .copied()
        .filter(|&e| k.contains(e))
        .collect();
    Ok(Subgroup::from_element_set(&h.parent, &set))
}

pub fn join(h: &Subgroup, k: &Subgroup) -> Result<Subgroup> {
    if !h.same_parent(k) {
        return Err(Error::ParentMismatch);
    }
    let union: Vec<usize> = h
        .elements
        .iter()
        .chain(k.elements.iter())
        .copied()
        .collect();
    Ok(subgroup_generated(&h.parent, &union))
}

pub fn center(parent: &Arc<FiniteGroup>) -> Subgroup {
    let set: BTreeSet<usize> = (0..parent.order)
        .filter(|&z| (0..parent.order).all(|g| parent.mul(z, g) == parent.mul(g, z)))
        .collect();
    Subgroup::from_element_set(parent, &set)
}

/// Subgroup generated by all commutators.
pub fn derived_subgroup(parent: &Arc<FiniteGroup>) -> Subgroup {
    let mut comms = Vec::new();
    for a in 0..parent.order {
        for b in 0..parent.order {
            let c = parent.mul(
                parent.mul(a, b),
                parent.mul(parent.inv[a], parent.inv[b]),
            );
            comms.push(c);
        }
    }
    subgroup_generated(parent, &comms)
}

pub fn is_normal(h: &Subgroup) -> bool {
    let g = &h.parent;
    (0..g.order).all(|x| h.elements.iter().all(|&e| h.contains(g.conjugate(x, e))))
}

pub fn normal_closure(h: &Subgroup) -> Subgroup {
    let g = &h.parent;
    let mut set: BTreeSet<usize> = h.elements.iter().copied().collect();
    loop {
        let mut grew = false;
        let snapshot: Vec<usize> = set.iter().copied().collect();
        for &e in &snapshot {
            for x in 0..g.order {
                if set.insert(g.conjugate(x, e)) {
                    grew = true;
                }
            }
        }
        set = close_under_mul(g, &set);
        if !grew {
            break;
        }
    }
    Subgroup::from_element_set(g, &set)
}

/// Quotient by a normal subgroup; cosets are labelled by their minimal
/// representative, which is also coset 0 for the identity coset.
pub fn quotient_group(parent: &Arc<FiniteGroup>, n: &Subgroup) -> Result<FiniteGroup> {
    if !is_normal(n) {
        return Err(Error::NotNormal);
    }
    let g = parent;
    let mut coset_of = vec![usize::MAX; g.order];
    let mut reps: Vec<usize> = Vec::new();
    for x in 0..g.order {
        if coset_of[x] != usize::MAX {
            continue;
        }
        let id = reps.len();
        for &e in &n.elements {
            coset_of[g.mul(x, e)] = id;
        }
        reps.push(x);
    }
    let q = reps.len();
    let mut table = vec![vec![0usize; q]; q];
    for i in 0..q {
        for j in 0..q {
            table[i][j] = coset_of[g.mul(reps[i], reps[j])];
        }
    }
    let labels = reps.iter().map(|&r| format!("[{}]", g.labels[r])).collect();
    FiniteGroup::from_table(table, labels, None)
}

/// All subgroups: cyclic subgroups first, then iterated pairwise joins to a
/// fixed point. Exact for any finite group at desk scale.
pub fn subgroup_lattice(parent: &Arc<FiniteGroup>) -> Vec<Subgroup> {
    let mut sets: BTreeSet<Vec<usize>> = BTreeSet::new();
    sets.insert(vec![parent.identity]);
    for g in 0..parent.order {
        sets.insert(subgroup_generated(parent, &[g]).elements);
    }
    loop {
        let current: Vec<Vec<usize>> = sets.iter().cloned().collect();
        let before = sets.len();
        for i in 0..current.len() {
            for j in (i + 1)..current.len() {
                let union: Vec<usize> = current[i]
                    .iter()
                    .chain(current[j].iter())
                    .copied()
                    .collect();
                sets.insert(subgroup_generated(parent, &union).elements);
            }
        }
        if sets.len() == before {
            break;
        }
    }
    let mut subs: Vec<Subgroup> = sets
        .iter()
        .map(|els| Subgroup::from_element_set(parent, &els.iter().copied().collect()))
        .collect();
    subs.sort_by(|a, b| (a.order(), &a.elements).cmp(&(b.order(), &b.elements)));
    subs
}
