//! Exact character tables modulo a prime, by Burnside-Dixon splitting of the
//! class-sum matrices over F_p. No floating point and no cyclotomics: every
//! downstream consumer needs only integer multiplicities and root-of-unity
//! exponents, and those lift uniquely once p > |G| and p = 1 (mod exponent).

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::group::{ConjClass, FiniteGroup};
use crate::modp::{mat_vec, nullspace, row_reduce, Fp};

#[derive(Debug, Clone)]
pub struct CharacterTableModP {
    pub group: Arc<FiniteGroup>,
    pub p: u64,
    pub fp: Fp,
    /// Primitive e-th root of unity mod p, e = exponent of the group.
    pub zeta: u64,
    pub classes: Vec<ConjClass>,
    pub class_of: Vec<usize>,
    /// Integer degrees, trivial character first.
    pub degrees: Vec<u64>,
    /// Row V, column j: character value of irrep V on class j, mod p.
    pub table: Vec<Vec<u64>>,
    /// Prime-independent sort key per row: at every class, the multiset of
    /// eigenvalue exponents of the class representative (as integer
    /// multiplicities). Determines a canonical irrep order across primes.
    pub signatures: Vec<Vec<Vec<u64>>>,
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Smallest prime p with p = 1 (mod exponent) and p > |G|; then every degree
/// and multiplicity in sight is < p and lifts uniquely from its residue.
pub fn choose_prime(g: &FiniteGroup) -> u64 {
    let e = g.exponent as u64;
    let n = g.order as u64;
    let mut p = e + 1;
    loop {
        if p > n && is_prime(p) {
            return p;
        }
        p += e;
    }
}

pub fn valid_prime(g: &FiniteGroup, p: u64) -> bool {
    is_prime(p) && p > g.order as u64 && (p - 1) % g.exponent as u64 == 0
}

/// Least k < e with zeta^k = target; zeta must have order e.
pub fn discrete_log(p: u64, zeta: u64, target: u64, e: usize) -> Result<usize> {
    let fp = Fp::new(p);
    let mut x = 1u64;
    for k in 0..e {
        if x == target % p {
            return Ok(k);
        }
        x = fp.mul(x, zeta);
    }
    Err(Error::NotAPower(target))
}

fn class_sum_matrix(g: &FiniteGroup, classes: &[ConjClass], class_of: &[usize], i: usize, fp: &Fp) -> Vec<Vec<u64>> {
    let r = classes.len();
    // counts[j][k] = #{(x,y) : x in C_i, y in C_j, xy in C_k} = a_ijk * |C_k|
    let mut counts = vec![vec![0u64; r]; r];
    for &x in &classes[i].members {
        for y in 0..g.order {
            counts[class_of[y]][class_of[g.mul(x, y)]] += 1;
        }
    }
    // the class-sum action on the omega vector: (M_i)_{jk} = a_ijk
    let mut m = vec![vec![0u64; r]; r];
    for j in 0..r {
        for k in 0..r {
            let ck = classes[k].members.len() as u64;
            debug_assert_eq!(counts[j][k] % ck, 0);
            m[j][k] = (counts[j][k] / ck) % fp.p;
        }
    }
    m
}

fn isqrt(n: u64) -> u64 {
    let mut r = (n as f64).sqrt() as u64;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

pub fn character_table_modp(group: &Arc<FiniteGroup>, p: u64) -> Result<CharacterTableModP> {
    if !valid_prime(group, p) {
        return Err(Error::BadPrime(p));
    }
    let fp = Fp::new(p);
    let classes = group.conjugacy_classes();
    let r = classes.len();
    let mut class_of = vec![0usize; group.order];
    for (ci, c) in classes.iter().enumerate() {
        for &m in &c.members {
            class_of[m] = ci;
        }
    }

    // split class space into common eigenspaces of the class-sum matrices
    let mut spaces: Vec<Vec<Vec<u64>>> = vec![(0..r)
        .map(|i| {
            let mut v = vec![0u64; r];
            v[i] = 1;
            v
        })
        .collect()];
    for i in 1..r {
        if spaces.iter().all(|s| s.len() == 1) {
            break;
        }
        let m = class_sum_matrix(group, &classes, &class_of, i, &fp);
        let mut next: Vec<Vec<Vec<u64>>> = Vec::new();
        for basis in spaces {
            if basis.len() == 1 {
                next.push(basis);
                continue;
            }
            next.extend(split_space(&fp, &m, basis)?);
        }
        spaces = next;
    }
    if spaces.iter().any(|s| s.len() != 1) {
        return Err(Error::SplitFailure(r));
    }

    // recover characters from the normalized eigenvectors
    let order_mod = (group.order as u64) % p;
    let mut rows: Vec<(u64, Vec<u64>)> = Vec::new();
    for basis in &spaces {
        let w = &basis[0];
        if w[0] == 0 {
            return Err(Error::SplitFailure(r));
        }
        let norm = fp.inv(w[0]);
        let omega: Vec<u64> = w.iter().map(|&x| fp.mul(x, norm)).collect();
        let mut s = 0u64;
        for k in 0..r {
            let csize = (classes[k].members.len() as u64) % p;
            let term = fp.mul(fp.mul(omega[k], omega[classes[k].inverse_class]), fp.inv(csize));
            s = fp.add(s, term);
        }
        let d2 = fp.mul(order_mod, fp.inv(s));
        let d = (1..=isqrt(group.order as u64))
            .find(|&d| fp.mul(d % p, d % p) == d2)
            .ok_or(Error::SplitFailure(r))?;
        let chi: Vec<u64> = (0..r)
            .map(|k| {
                let csize = (classes[k].members.len() as u64) % p;
                fp.mul(fp.mul(d % p, omega[k]), fp.inv(csize))
            })
            .collect();
        rows.push((d, chi));
    }

    let exponent = group.exponent as u64;
    let zeta = fp.root_of_unity(exponent);

    // canonical, prime-independent ordering: trivial character first, then
    // by (degree, eigenvalue-multiplicity signature per class)
    let signature = |chi: &[u64]| -> Vec<Vec<u64>> {
        classes
            .iter()
            .map(|c| {
                let m = group.element_order(c.rep);
                let zm = fp.pow(zeta, exponent / m as u64);
                let zm_inv = fp.inv(zm);
                let m_inv = fp.inv(m as u64 % p);
                (0..m)
                    .map(|u| {
                        let mut acc = 0u64;
                        let mut x = group.identity;
                        for t in 0..m {
                            let term = fp.mul(chi[class_of[x]], fp.pow(zm_inv, (u * t) as u64));
                            acc = fp.add(acc, term);
                            x = group.mul(x, c.rep);
                        }
                        fp.mul(acc, m_inv)
                    })
                    .collect()
            })
            .collect()
    };
    let trivial_pos = rows
        .iter()
        .position(|(d, chi)| *d == 1 && chi.iter().all(|&x| x == 1))
        .expect("every group has the trivial character");
    let trivial = rows.swap_remove(trivial_pos);
    let mut keyed: Vec<(u64, Vec<Vec<u64>>, Vec<u64>)> = rows
        .into_iter()
        .map(|(d, chi)| {
            let sig = signature(&chi);
            (d, sig, chi)
        })
        .collect();
    keyed.sort_by(|a, b| (a.0, &a.1).cmp(&(b.0, &b.1)));
    let mut degrees = vec![trivial.0];
    let mut signatures = vec![signature(&trivial.1)];
    let mut table = vec![trivial.1];
    for (d, sig, chi) in keyed {
        degrees.push(d);
        signatures.push(sig);
        table.push(chi);
    }

    Ok(CharacterTableModP {
        group: Arc::clone(group),
        p,
        fp,
        zeta,
        classes,
        class_of,
        degrees,
        table,
        signatures,
    })
}

/// Split an invariant subspace into eigenspaces of `m`.
fn split_space(fp: &Fp, m: &[Vec<u64>], basis: Vec<Vec<u64>>) -> Result<Vec<Vec<Vec<u64>>>> {
    let k = basis.len();
    let mut rref = basis;
    let pivots = row_reduce(fp, &mut rref);
    debug_assert_eq!(pivots.len(), k);
    // restricted matrix: column j = coordinates of m * b_j
    let mut a = vec![vec![0u64; k]; k];
    for (j, b) in rref.iter().enumerate() {
        let image = mat_vec(fp, m, b);
        for (l, &pc) in pivots.iter().enumerate() {
            a[l][j] = image[pc];
        }
    }
    let mut out = Vec::new();
    let mut found = 0;
    for lambda in 0..fp.p {
        let shifted: Vec<Vec<u64>> = (0..k)
            .map(|i| {
                (0..k)
                    .map(|j| {
                        if i == j {
                            fp.sub(a[i][j], lambda)
                        } else {
                            a[i][j]
                        }
                    })
                    .collect()
            })
            .collect();
        let kernel = nullspace(fp, &shifted);
        if kernel.is_empty() {
            continue;
        }
        found += kernel.len();
        let mut vectors: Vec<Vec<u64>> = kernel
            .iter()
            .map(|c| {
                let mut v = vec![0u64; rref[0].len()];
                for (j, &cj) in c.iter().enumerate() {
                    for (pos, val) in rref[j].iter().enumerate() {
                        v[pos] = fp.add(v[pos], fp.mul(cj, *val));
                    }
                }
                v
            })
            .collect();
        row_reduce(fp, &mut vectors);
        out.push(vectors);
        if found == k {
            break;
        }
    }
    if found != k {
        return Err(Error::SplitFailure(k));
    }
    Ok(out)
}

impl CharacterTableModP {
    pub fn num_irreps(&self) -> usize {
        self.table.len()
    }

    /// Residue of the inner product <phi, chi_V>, lifted to [0, p).
    pub fn multiplicity(&self, phi: &[u64], v: usize) -> u64 {
        let fp = &self.fp;
        let mut acc = 0u64;
        for j in 0..self.classes.len() {
            let csize = (self.classes[j].members.len() as u64) % self.p;
            let conj = self.table[v][self.classes[j].inverse_class];
            acc = fp.add(acc, fp.mul(fp.mul(csize, phi[j] % self.p), conj));
        }
        fp.mul(acc, fp.inv((self.group.order as u64) % self.p))
    }

    /// Decompose a class function into irrep multiplicities; when the true
    /// total dimension is known the lift is checked against it.
    pub fn decompose(&self, phi: &[u64], expected_dim: Option<u64>) -> Result<Vec<u64>> {
        let mults: Vec<u64> = (0..self.num_irreps()).map(|v| self.multiplicity(phi, v)).collect();
        if let Some(dim) = expected_dim {
            let total: u64 = mults.iter().zip(&self.degrees).map(|(m, d)| m * d).sum();
            if total != dim {
                return Err(Error::NonIntegral(format!(
                    "lifted multiplicities give dimension {total}, expected {dim}"
                )));
            }
        }
        Ok(mults)
    }

    /// Class function of the regular representation.
    pub fn regular_character(&self) -> Vec<u64> {
        let mut phi = vec![0u64; self.classes.len()];
        phi[0] = (self.group.order as u64) % self.p;
        phi
    }

    /// Exponent k in Z/e with zeta^k = chi_V(z)/chi_V(1), for central z.
    pub fn central_character(&self, v: usize, z: usize) -> Result<usize> {
        let g = &self.group;
        if (0..g.order).any(|x| g.mul(z, x) != g.mul(x, z)) {
            return Err(Error::NotCentral(z));
        }
        let target = self
            .fp
            .mul(self.table[v][self.class_of[z]], self.fp.inv(self.degrees[v] % self.p));
        discrete_log(self.p, self.zeta, target, g.exponent)
            .map_err(|_| Error::NoExponent(g.exponent))
    }

    /// Both orthogonality relations, as exact identities mod p.
    pub fn orthogonality_holds(&self) -> bool {
        let fp = &self.fp;
        let r = self.classes.len();
        let n_inv = fp.inv((self.group.order as u64) % self.p);
        for v in 0..r {
            for w in 0..r {
                let mut acc = 0u64;
                for j in 0..r {
                    let csize = (self.classes[j].members.len() as u64) % self.p;
                    let term = fp.mul(
                        fp.mul(csize, self.table[v][j]),
                        self.table[w][self.classes[j].inverse_class],
                    );
                    acc = fp.add(acc, term);
                }
                if fp.mul(acc, n_inv) != u64::from(v == w) {
                    return false;
                }
            }
        }
        // column orthogonality: sum_V chi_V(i) chi_V(j^-1) = |G|/|C_i| delta_ij
        for i in 0..r {
            for j in 0..r {
                let mut acc = 0u64;
                for v in 0..r {
                    acc = fp.add(
                        acc,
                        fp.mul(self.table[v][i], self.table[v][self.classes[j].inverse_class]),
                    );
                }
                let want = if i == j {
                    fp.mul(
                        (self.group.order as u64) % self.p,
                        fp.inv((self.classes[i].members.len() as u64) % self.p),
                    )
                } else {
                    0
                };
                if acc != want {
                    return false;
                }
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{cyclic, quaternion, symmetric};

    #[test]
    fn prime_choice() {
        assert_eq!(choose_prime(&symmetric(3)), 7);
        assert_eq!(choose_prime(&quaternion()), 13);
        assert_eq!(choose_prime(&cyclic(2)), 3);
    }

    #[test]
    fn s3_table() {
        let g = Arc::new(symmetric(3));
        let t = character_table_modp(&g, 7).unwrap();
        assert_eq!(t.degrees, vec![1, 1, 2]);
        assert!(t.orthogonality_holds());
        let sq: u64 = t.degrees.iter().map(|d| d * d).sum();
        assert_eq!(sq, 6);
        // frozen oracle: the integer character table of S3 on classes
        // (1, transpositions, 3-cycles), reduced mod 7 up to row order
        let classes_by_size: Vec<usize> = {
            let mut idx: Vec<usize> = (0..3).collect();
            idx.sort_by_key(|&j| (t.classes[j].members.len(), t.group.element_order(t.classes[j].rep)));
            idx
        };
        let fp = Fp::new(7);
        let oracle: Vec<Vec<i64>> = vec![vec![1, 1, 1], vec![1, -1, 1], vec![2, 0, -1]];
        let mut got: Vec<Vec<u64>> = t
            .table
            .iter()
            .map(|row| classes_by_size.iter().map(|&j| row[j]).collect())
            .collect();
        let mut want: Vec<Vec<u64>> = oracle
            .iter()
            .map(|row| {
                // oracle columns: identity, 3-cycles, transpositions; reorder
                // to (identity, then by class size): sizes 1,2,3 -> 1, cycles, transp
                vec![fp.from_i64(row[0]), fp.from_i64(row[2]), fp.from_i64(row[1])]
            })
            .collect();
        got.sort();
        want.sort();
        assert_eq!(got, want);
    }

    #[test]
    fn c2_table() {
        let g = Arc::new(cyclic(2));
        let t = character_table_modp(&g, 3).unwrap();
        assert_eq!(t.table, vec![vec![1, 1], vec![1, 2]]);
    }

    #[test]
    fn q8_table() {
        let g = Arc::new(quaternion());
        let t = character_table_modp(&g, 13).unwrap();
        assert_eq!(t.degrees, vec![1, 1, 1, 1, 2]);
        assert!(t.orthogonality_holds());
    }

    #[test]
    fn bad_prime_rejected() {
        let g = Arc::new(symmetric(3));
        assert!(matches!(character_table_modp(&g, 5), Err(Error::BadPrime(5))));
        assert!(character_table_modp(&g, 13).is_ok()); // 13 = 1 mod 6
    }

    #[test]
    fn regular_multiplicities() {
        let g = Arc::new(symmetric(3));
        let t = character_table_modp(&g, 7).unwrap();
        let reg = t.regular_character();
        for v in 0..t.num_irreps() {
            assert_eq!(t.multiplicity(&reg, v), t.degrees[v]);
        }
        // trivial against trivial
        let triv = t.table[0].clone();
        assert_eq!(t.multiplicity(&triv, 0), 1);
    }

    #[test]
    fn pointwise_square_of_std_contains_sign() {
        let g = Arc::new(symmetric(3));
        let t = character_table_modp(&g, 7).unwrap();
        let std = 2; // degree-2 row is last by ordering
        let fp = t.fp;
        let phi: Vec<u64> = (0..3).map(|j| fp.mul(t.table[std][j], t.table[std][j])).collect();
        // sign character is the other degree-1 row
        assert_eq!(t.multiplicity(&phi, 1), 1);
        assert_eq!(t.multiplicity(&phi, 0), 1);
        assert_eq!(t.multiplicity(&phi, 2), 1);
    }

    #[test]
    fn central_characters() {
        let g = Arc::new(quaternion());
        let t = character_table_modp(&g, 13).unwrap();
        let minus_one = 1; // element -1
        // the 2-dim irrep sees -1 as the scalar -1 = zeta_4^2
        let two_dim = t.degrees.iter().position(|&d| d == 2).unwrap();
        assert_eq!(t.central_character(two_dim, minus_one).unwrap(), 2);
        assert_eq!(t.central_character(0, minus_one).unwrap(), 0);
        for v in 0..t.num_irreps() {
            assert_eq!(t.central_character(v, g.identity).unwrap(), 0);
        }
        // i is not central in Q8
        assert!(matches!(t.central_character(0, 2), Err(Error::NotCentral(2))));
    }

    #[test]
    fn discrete_logs() {
        assert_eq!(discrete_log(13, 5, 12, 4).unwrap(), 2);
        assert_eq!(discrete_log(13, 5, 1, 4).unwrap(), 0);
        assert_eq!(discrete_log(7, 3, 3, 6).unwrap(), 1);
        assert!(matches!(discrete_log(13, 5, 2, 4), Err(Error::NotAPower(2))));
    }

    #[test]
    fn central_character_is_homomorphism() {
        let g = Arc::new(quaternion());
        let t = character_table_modp(&g, 13).unwrap();
        let e = g.exponent;
        for v in 0..t.num_irreps() {
            for &z1 in &[0usize, 1] {
                for &z2 in &[0usize, 1] {
                    let k1 = t.central_character(v, z1).unwrap();
                    let k2 = t.central_character(v, z2).unwrap();
                    let k12 = t.central_character(v, g.mul(z1, z2)).unwrap();
                    assert_eq!((k1 + k2) % e, k12);
                }
            }
        }
    }

    #[test]
    fn prime_independence_of_lifts() {
        let g = Arc::new(symmetric(3));
        let t1 = character_table_modp(&g, 7).unwrap();
        let t2 = character_table_modp(&g, 13).unwrap();
        assert_eq!(t1.degrees, t2.degrees);
        assert_eq!(t1.signatures, t2.signatures);
        for v in 0..t1.num_irreps() {
            assert_eq!(
                t1.multiplicity(&t1.regular_character(), v),
                t2.multiplicity(&t2.regular_character(), v)
            );
        }
    }
}
