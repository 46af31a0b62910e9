//! Dense matrices over the prime field 𝔽_p with exact row reduction.
//!
//! Everything downstream (modules, cohomology, solvers) reduces to rank,
//! kernel and solve over 𝔽_p, so this file is deliberately boring: flat
//! row-major `u32` storage and schoolbook elimination.

use super::GmodError;

/// A matrix over 𝔽_p. Entries are kept reduced to `0..p`.
#[derive(Clone, PartialEq, Eq)]
pub struct FpMatrix {
    pub p: u32,
    pub rows: usize,
    pub cols: usize,
    data: Vec<u32>,
}

impl std::fmt::Debug for FpMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "FpMatrix {}x{} mod {}", self.rows, self.cols, self.p)?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", &self.data[r * self.cols..(r + 1) * self.cols])?;
        }
        Ok(())
    }
}

pub fn inv_mod(a: u32, p: u32) -> u32 {
    // p is prime and a != 0 mod p
    let mut result: u64 = 1;
    let mut base = (a % p) as u64;
    let mut e = p - 2;
    let m = p as u64;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % m;
        }
        base = base * base % m;
        e >>= 1;
    }
    result as u32
}

impl FpMatrix {
    pub fn zeros(p: u32, rows: usize, cols: usize) -> Self {
        FpMatrix { p, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(p: u32, n: usize) -> Self {
        let mut m = Self::zeros(p, n, n);
        for i in 0..n {
            m[(i, i)] = 1;
        }
        m
    }

    pub fn from_rows(p: u32, rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut m = Self::zeros(p, r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, &v) in row.iter().enumerate() {
                m[(i, j)] = v.rem_euclid(p as i64) as u32;
            }
        }
        m
    }

    pub fn row(&self, r: usize) -> &[u32] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn data(&self) -> &[u32] {
        &self.data
    }

    pub fn col_vec(&self, c: usize) -> Vec<u32> {
        (0..self.rows).map(|r| self[(r, c)]).collect()
    }

    pub fn set_col(&mut self, c: usize, v: &[u32]) {
        assert_eq!(v.len(), self.rows);
        for r in 0..self.rows {
            self[(r, c)] = v[r] % self.p;
        }
    }

    pub fn transpose(&self) -> FpMatrix {
        let mut t = Self::zeros(self.p, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t[(c, r)] = self[(r, c)];
            }
        }
        t
    }

    pub fn add(&self, other: &FpMatrix) -> Result<FpMatrix, GmodError> {
        if self.rows != other.rows || self.cols != other.cols || self.p != other.p {
            return Err(GmodError::DimensionMismatch {
                ctx: "add",
                lhs: (self.rows, self.cols),
                rhs: (other.rows, other.cols),
            });
        }
        let mut out = self.clone();
        for (a, &b) in out.data.iter_mut().zip(&other.data) {
            *a = (*a + b) % self.p;
        }
        Ok(out)
    }

    pub fn sub(&self, other: &FpMatrix) -> Result<FpMatrix, GmodError> {
        let neg = other.scale(self.p - 1);
        self.add(&neg)
    }

    pub fn scale(&self, s: u32) -> FpMatrix {
        let s = s % self.p;
        let mut out = self.clone();
        for a in out.data.iter_mut() {
            *a = ((*a as u64) * (s as u64) % self.p as u64) as u32;
        }
        out
    }

    pub fn mul(&self, other: &FpMatrix) -> Result<FpMatrix, GmodError> {
        if self.cols != other.rows || self.p != other.p {
            return Err(GmodError::DimensionMismatch {
                ctx: "mul",
                lhs: (self.rows, self.cols),
                rhs: (other.rows, other.cols),
            });
        }
        let p = self.p as u64;
        let mut out = Self::zeros(self.p, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)] as u64;
                if a == 0 {
                    continue;
                }
                let orow = other.row(k);
                let base = i * out.cols;
                for j in 0..other.cols {
                    let v = &mut out.data[base + j];
                    *v = ((*v as u64 + a * orow[j] as u64) % p) as u32;
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[u32]) -> Result<Vec<u32>, GmodError> {
        if v.len() != self.cols {
            return Err(GmodError::DimensionMismatch {
                ctx: "mul_vec",
                lhs: (self.rows, self.cols),
                rhs: (v.len(), 1),
            });
        }
        let p = self.p as u64;
        let mut out = vec![0u32; self.rows];
        for i in 0..self.rows {
            let row = self.row(i);
            let mut acc = 0u64;
            for (a, &b) in row.iter().zip(v) {
                acc = (acc + *a as u64 * b as u64) % p;
            }
            out[i] = acc as u32;
        }
        Ok(out)
    }

    /// Kronecker product; row-major on both index pairs, so
    /// `(a ⊗ b)[(i1*br+i2, j1*bc+j2)] = a[(i1,j1)]*b[(i2,j2)]`.
    pub fn kronecker(&self, other: &FpMatrix) -> FpMatrix {
        assert_eq!(self.p, other.p);
        let p = self.p as u64;
        let mut out = Self::zeros(self.p, self.rows * other.rows, self.cols * other.cols);
        for i1 in 0..self.rows {
            for j1 in 0..self.cols {
                let a = self[(i1, j1)] as u64;
                if a == 0 {
                    continue;
                }
                for i2 in 0..other.rows {
                    for j2 in 0..other.cols {
                        let v = a * other[(i2, j2)] as u64 % p;
                        out[(i1 * other.rows + i2, j1 * other.cols + j2)] = v as u32;
                    }
                }
            }
        }
        out
    }

    pub fn block_diag(p: u32, blocks: &[&FpMatrix]) -> FpMatrix {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Self::zeros(p, rows, cols);
        let (mut ro, mut co) = (0, 0);
        for b in blocks {
            assert_eq!(b.p, p);
            for r in 0..b.rows {
                for c in 0..b.cols {
                    out[(ro + r, co + c)] = b[(r, c)];
                }
            }
            ro += b.rows;
            co += b.cols;
        }
        out
    }

    pub fn hstack(&self, other: &FpMatrix) -> FpMatrix {
        assert_eq!(self.rows, other.rows);
        assert_eq!(self.p, other.p);
        let mut out = Self::zeros(self.p, self.rows, self.cols + other.cols);
        for r in 0..self.rows {
            out.data[r * out.cols..r * out.cols + self.cols].copy_from_slice(self.row(r));
            out.data[r * out.cols + self.cols..(r + 1) * out.cols].copy_from_slice(other.row(r));
        }
        out
    }

    pub fn vstack(&self, other: &FpMatrix) -> FpMatrix {
        assert_eq!(self.cols, other.cols);
        assert_eq!(self.p, other.p);
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        FpMatrix { p: self.p, rows: self.rows + other.rows, cols: self.cols, data }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    /// In-place Gauss-Jordan. Returns rank and the pivot columns.
    fn reduce(&mut self) -> (usize, Vec<usize>) {
        let p = self.p as u64;
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(pr) = (r..self.rows).find(|&i| self[(i, c)] != 0) else {
                continue;
            };
            if pr != r {
                // swap rows pr and r
                for j in 0..self.cols {
                    self.data.swap(pr * self.cols + j, r * self.cols + j);
                }
            }
            let inv = inv_mod(self[(r, c)], self.p) as u64;
            for j in c..self.cols {
                let v = &mut self.data[r * self.cols + j];
                *v = (*v as u64 * inv % p) as u32;
            }
            for i in 0..self.rows {
                if i == r || self[(i, c)] == 0 {
                    continue;
                }
                let f = (p - self[(i, c)] as u64) % p;
                for j in c..self.cols {
                    let v = self.data[r * self.cols + j] as u64;
                    let t = &mut self.data[i * self.cols + j];
                    *t = ((*t as u64 + f * v) % p) as u32;
                }
            }
            pivots.push(c);
            r += 1;
        }
        (r, pivots)
    }

    /// Reduced row echelon form: `(rank, pivot columns, reduced matrix)`.
    pub fn rref(&self) -> (usize, Vec<usize>, FpMatrix) {
        let mut m = self.clone();
        let (rank, pivots) = m.reduce();
        (rank, pivots, m)
    }

    pub fn rank(&self) -> usize {
        self.rref().0
    }

    /// Basis of the right null space `{v : self * v = 0}`.
    pub fn kernel(&self) -> Vec<Vec<u32>> {
        let (rank, pivots, red) = self.rref();
        let p = self.p;
        let pivot_set: std::collections::BTreeSet<usize> = pivots.iter().copied().collect();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivot_set.contains(c)).collect();
        let mut basis = Vec::with_capacity(free.len());
        for &fc in &free {
            let mut v = vec![0u32; self.cols];
            v[fc] = 1;
            for (r, &pc) in pivots.iter().enumerate().take(rank) {
                // pivot row r: x_pc + sum over free cols = 0
                let coeff = red[(r, fc)];
                if coeff != 0 {
                    v[pc] = p - coeff;
                }
            }
            basis.push(v);
        }
        basis
    }

    /// Any particular solution of `self * x = b`, or `None`.
    pub fn solve(&self, b: &[u32]) -> Result<Option<Vec<u32>>, GmodError> {
        if b.len() != self.rows {
            return Err(GmodError::DimensionMismatch {
                ctx: "solve",
                lhs: (self.rows, self.cols),
                rhs: (b.len(), 1),
            });
        }
        let mut aug = Self::zeros(self.p, self.rows, self.cols + 1);
        for r in 0..self.rows {
            aug.data[r * aug.cols..r * aug.cols + self.cols].copy_from_slice(self.row(r));
            aug[(r, self.cols)] = b[r] % self.p;
        }
        let (_, pivots, red) = aug.rref();
        if pivots.contains(&self.cols) {
            return Ok(None); // inconsistent: pivot in the augmented column
        }
        let mut x = vec![0u32; self.cols];
        for (r, &pc) in pivots.iter().enumerate() {
            x[pc] = red[(r, self.cols)];
        }
        Ok(Some(x))
    }

    /// Inverse of a square matrix, or `None` if singular.
    pub fn inverse(&self) -> Option<FpMatrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let aug = self.hstack(&Self::identity(self.p, n));
        let (rank, _, red) = aug.rref();
        if rank < n {
            return None;
        }
        let mut inv = Self::zeros(self.p, n, n);
        for r in 0..n {
            for c in 0..n {
                inv[(r, c)] = red[(r, n + c)];
            }
        }
        Some(inv)
    }

    /// Row space membership test against an rref basis produced by `rref`.
    pub fn pow(&self, mut e: u64) -> FpMatrix {
        assert_eq!(self.rows, self.cols);
        let mut result = Self::identity(self.p, self.rows);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base).unwrap();
            }
            base = base.mul(&base).unwrap();
            e >>= 1;
        }
        result
    }
}

impl std::ops::Index<(usize, usize)> for FpMatrix {
    type Output = u32;
    fn index(&self, (r, c): (usize, usize)) -> &u32 {
        debug_assert!(r < self.rows && c < self.cols);
        &self.data[r * self.cols + c]
    }
}

impl std::ops::IndexMut<(usize, usize)> for FpMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut u32 {
        debug_assert!(r < self.rows && c < self.cols);
        &mut self.data[r * self.cols + c]
    }
}

/// A subspace of 𝔽_p^n held as an rref row basis, supporting cheap
/// membership tests and incremental closure.
#[derive(Clone, Debug)]
pub struct Subspace {
    pub p: u32,
    pub ambient: usize,
    rows: Vec<Vec<u32>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn empty(p: u32, ambient: usize) -> Self {
        Subspace { p, ambient, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn from_vectors<'a, I: IntoIterator<Item = &'a [u32]>>(p: u32, ambient: usize, vs: I) -> Self {
        let mut s = Self::empty(p, ambient);
        for v in vs {
            s.insert(v);
        }
        s
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn basis(&self) -> &[Vec<u32>] {
        &self.rows
    }

    /// Reduce `v` against the current basis; returns the residue.
    pub fn reduce_vec(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(v.len(), self.ambient);
        let p = self.p as u64;
        let mut w: Vec<u32> = v.iter().map(|&x| x % self.p).collect();
        for (row, &pc) in self.rows.iter().zip(&self.pivots) {
            let c = w[pc];
            if c != 0 {
                let f = (p - c as u64) % p;
                for (wi, &ri) in w.iter_mut().zip(row) {
                    *wi = ((*wi as u64 + f * ri as u64) % p) as u32;
                }
            }
        }
        w
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        self.reduce_vec(v).iter().all(|&x| x == 0)
    }

    /// Insert `v`; returns true if the dimension grew.
    pub fn insert(&mut self, v: &[u32]) -> bool {
        let mut w = self.reduce_vec(v);
        let Some(pc) = w.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = inv_mod(w[pc], self.p) as u64;
        let p = self.p as u64;
        for x in w.iter_mut() {
            *x = (*x as u64 * inv % p) as u32;
        }
        // back-substitute into existing rows to keep rref shape
        for row in self.rows.iter_mut() {
            let c = row[pc];
            if c != 0 {
                let f = (p - c as u64) % p;
                for (ri, &wi) in row.iter_mut().zip(&w) {
                    *ri = ((*ri as u64 + f * wi as u64) % p) as u32;
                }
            }
        }
        let at = self.pivots.iter().position(|&q| q > pc).unwrap_or(self.pivots.len());
        self.pivots.insert(at, pc);
        self.rows.insert(at, w);
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn rref_identity() {
        let m = FpMatrix::identity(2, 3);
        let (rank, _, _) = m.rref();
        assert_eq!(rank, 3);
        assert!(m.kernel().is_empty());
    }

    #[test]
    fn rref_zero() {
        let m = FpMatrix::zeros(3, 2, 5);
        assert_eq!(m.rank(), 0);
        assert_eq!(m.kernel().len(), 5);
    }

    #[test]
    fn rref_rank_one() {
        let m = FpMatrix::from_rows(2, &[vec![1, 1], vec![1, 1]]);
        assert_eq!(m.rank(), 1);
        let ker = m.kernel();
        assert_eq!(ker, vec![vec![1, 1]]);
    }

    #[test]
    fn solve_and_inverse() {
        let m = FpMatrix::from_rows(5, &[vec![1, 2], vec![3, 4]]);
        let x = m.solve(&[1, 0]).unwrap().unwrap();
        assert_eq!(m.mul_vec(&x).unwrap(), vec![1, 0]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv).unwrap(), FpMatrix::identity(5, 2));
    }

    #[test]
    fn subspace_closure() {
        let mut s = Subspace::empty(3, 3);
        assert!(s.insert(&[1, 2, 0]));
        assert!(s.insert(&[0, 1, 1]));
        assert!(!s.insert(&[1, 0, 1])); // 1*r1 - 2*r2
        assert_eq!(s.dim(), 2);
        assert!(s.contains(&[2, 4, 0]));
        assert!(!s.contains(&[0, 0, 1]));
    }

    proptest! {
        #[test]
        fn kernel_vectors_annihilate(seed in any::<u64>()) {
            use rand::{Rng, SeedableRng};
            let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(seed);
            for &p in &[2u32, 3, 5] {
                let rows = rng.random_range(1..6);
                let cols = rng.random_range(1..6);
                let mut m = FpMatrix::zeros(p, rows, cols);
                for r in 0..rows {
                    for c in 0..cols {
                        m[(r, c)] = rng.random_range(0..p);
                    }
                }
                let ker = m.kernel();
                prop_assert_eq!(m.rank() + ker.len(), cols);
                for v in &ker {
                    prop_assert!(m.mul_vec(v).unwrap().iter().all(|&x| x == 0));
                }
            }
        }
    }
}
