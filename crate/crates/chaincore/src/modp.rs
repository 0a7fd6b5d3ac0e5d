//! Arithmetic and small dense linear algebra over a prime field F_p.
//!
//! All residues are kept in `0..p`. The primes in play stay well below
//! 2^31, so products fit in u64 without widening tricks.

/// A prime field F_p with elementwise operations on plain `u64` residues.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Fp {
    pub p: u64,
}

impl Fp {
    pub fn new(p: u64) -> Self {
        debug_assert!(p < 1 << 31);
        Fp { p }
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        a * b % self.p
    }

    pub fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1;
        base %= self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse via Fermat; `a` must be nonzero.
    pub fn inv(&self, a: u64) -> u64 {
        debug_assert!(a % self.p != 0);
        self.pow(a, self.p - 2)
    }

    /// Canonical residue of a signed integer.
    pub fn from_i64(&self, a: i64) -> u64 {
        let p = self.p as i64;
        (a.rem_euclid(p)) as u64
    }

    /// Multiplicative order of `a` (a must be nonzero).
    pub fn order(&self, a: u64) -> u64 {
        let mut x = a % self.p;
        let mut k = 1;
        while x != 1 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// A primitive e-th root of unity; requires e | p - 1.
    pub fn root_of_unity(&self, e: u64) -> u64 {
        assert_eq!((self.p - 1) % e, 0);
        for g in 2..self.p {
            let z = self.pow(g, (self.p - 1) / e);
            if self.order(z) == e {
                return z;
            }
        }
        unreachable!("F_p^* is cyclic, a primitive root exists")
    }
}

/// Reduce `rows` in place to row echelon form with unit pivots.
/// Returns the pivot column of each surviving row.
pub fn row_reduce(fp: &Fp, rows: &mut Vec<Vec<u64>>) -> Vec<usize> {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(pr) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(r, pr);
        let inv = fp.inv(rows[r][c]);
        for x in rows[r].iter_mut() {
            *x = fp.mul(*x, inv);
        }
        for i in 0..rows.len() {
            if i != r && rows[i][c] != 0 {
                let f = rows[i][c];
                for j in 0..ncols {
                    let t = fp.mul(f, rows[r][j]);
                    rows[i][j] = fp.sub(rows[i][j], t);
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

/// Basis of the right nullspace of `m` (rows of the result are kernel vectors).
pub fn nullspace(fp: &Fp, m: &[Vec<u64>]) -> Vec<Vec<u64>> {
    let ncols = m.first().map_or(0, |r| r.len());
    let mut rows: Vec<Vec<u64>> = m.to_vec();
    let pivots = row_reduce(fp, &mut rows);
    let pivot_set: std::collections::HashSet<usize> = pivots.iter().copied().collect();
    let mut basis = Vec::new();
    for free in 0..ncols {
        if pivot_set.contains(&free) {
            continue;
        }
        let mut v = vec![0u64; ncols];
        v[free] = 1;
        for (ri, &pc) in pivots.iter().enumerate() {
            v[pc] = fp.neg(rows[ri][free]);
        }
        basis.push(v);
    }
    basis
}

/// Matrix-vector product over F_p.
pub fn mat_vec(fp: &Fp, m: &[Vec<u64>], v: &[u64]) -> Vec<u64> {
    m.iter()
        .map(|row| {
            row.iter()
                .zip(v)
                .fold(0, |acc, (&a, &b)| fp.add(acc, fp.mul(a, b)))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_ops() {
        let fp = Fp::new(13);
        assert_eq!(fp.mul(5, 5), 12);
        assert_eq!(fp.inv(5), 8); // 5*8 = 40 = 39+1
        assert_eq!(fp.from_i64(-1), 12);
        assert_eq!(fp.order(5), 4);
    }

    #[test]
    fn primitive_roots() {
        let fp = Fp::new(13);
        let z = fp.root_of_unity(4);
        assert_eq!(fp.order(z), 4);
        let fp7 = Fp::new(7);
        assert_eq!(fp7.order(fp7.root_of_unity(6)), 6);
    }

    #[test]
    fn nullspace_of_singular_matrix() {
        let fp = Fp::new(7);
        // rank 1, kernel dimension 2
        let m = vec![vec![1, 2, 3], vec![2, 4, 6]];
        let ker = nullspace(&fp, &m);
        assert_eq!(ker.len(), 2);
        for v in &ker {
            assert_eq!(mat_vec(&fp, &m, v), vec![0, 0]);
        }
    }
}
