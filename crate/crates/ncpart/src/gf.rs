//! Exact linear algebra over the prime fields `F_p` for small `p`.
//!
//! Matrices are dense row-major byte matrices with entries in `0..p`. The
//! canonical form of a subspace is the reduced row-echelon form of any
//! spanning set: pivots are 1 with zeros above and below, pivot columns
//! strictly increase, zero rows are dropped. Equal subspaces therefore have
//! identical basis matrices, which gives subspaces value semantics.

use std::fmt;

use crate::{Error, Result};

fn inv_mod(a: u8, p: u8) -> u8 {
    (1..p).find(|&b| (a as u16 * b as u16) % p as u16 == 1).expect("p prime, a nonzero")
}

/// Row-major matrix over `F_p`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GfMat {
    p: u8,
    cols: usize,
    data: Vec<u8>,
}

impl GfMat {
    pub fn new(p: u8, cols: usize, rows: &[Vec<u8>]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols);
            data.extend(r.iter().map(|&x| x % p));
        }
        GfMat { p, cols, data }
    }

    pub fn zero(p: u8, rows: usize, cols: usize) -> Self {
        GfMat { p, cols, data: vec![0; rows * cols] }
    }

    pub fn p(&self) -> u8 {
        self.p
    }

    pub fn rows(&self) -> usize {
        self.data.len().checked_div(self.cols).unwrap_or(0)
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, r: usize, c: usize) -> u8 {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: u8) {
        self.data[r * self.cols + c] = v % self.p;
    }

    pub fn row(&self, r: usize) -> &[u8] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    /// In-place reduced row-echelon form; returns the rank. Zero rows sink to
    /// the bottom and are kept (callers drop them as needed).
    pub fn rref(&mut self) -> usize {
        let p = self.p as u16;
        let rows = self.rows();
        let mut pivot_row = 0;
        for col in 0..self.cols {
            let Some(src) = (pivot_row..rows).find(|&r| self.at(r, col) != 0) else {
                continue;
            };
            for c in 0..self.cols {
                let tmp = self.at(src, c);
                self.set(src, c, self.at(pivot_row, c));
                self.set(pivot_row, c, tmp);
            }
            let inv = inv_mod(self.at(pivot_row, col), self.p) as u16;
            for c in 0..self.cols {
                let v = (self.at(pivot_row, c) as u16 * inv % p) as u8;
                self.set(pivot_row, c, v);
            }
            for r in 0..rows {
                if r != pivot_row && self.at(r, col) != 0 {
                    let f = self.at(r, col) as u16;
                    for c in 0..self.cols {
                        let v = (self.at(r, c) as u16 + (p - 1) * f % p * self.at(pivot_row, c) as u16)
                            % p;
                        self.set(r, c, v as u8);
                    }
                }
            }
            pivot_row += 1;
            if pivot_row == rows {
                break;
            }
        }
        pivot_row
    }

    pub fn rank(&self) -> usize {
        self.clone().rref()
    }
}

/// A linear subspace of `F_p^d` in canonical (RREF, no zero rows) form.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subspace {
    p: u8,
    ambient: u8,
    basis: GfMat,
}

impl Subspace {
    /// Canonicalize a spanning set.
    pub fn from_rows(p: u8, ambient: u8, rows: &[Vec<u8>]) -> Self {
        let mut m = GfMat::new(p, ambient as usize, rows);
        let rank = m.rref();
        m.data.truncate(rank * ambient as usize);
        Subspace { p, ambient, basis: m }
    }

    pub fn zero(p: u8, ambient: u8) -> Self {
        Subspace::from_rows(p, ambient, &[])
    }

    pub fn full(p: u8, ambient: u8) -> Self {
        let rows: Vec<Vec<u8>> = (0..ambient as usize)
            .map(|i| {
                let mut r = vec![0; ambient as usize];
                r[i] = 1;
                r
            })
            .collect();
        Subspace::from_rows(p, ambient, &rows)
    }

    pub fn line(p: u8, ambient: u8, v: &[u8]) -> Self {
        Subspace::from_rows(p, ambient, &[v.to_vec()])
    }

    pub fn p(&self) -> u8 {
        self.p
    }

    pub fn ambient_dim(&self) -> u8 {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn basis(&self) -> &GfMat {
        &self.basis
    }

    fn check_compatible(&self, other: &Subspace) -> Result<()> {
        if self.p != other.p || self.ambient != other.ambient {
            return Err(Error::Usage(format!(
                "ambient mismatch: F_{}^{} vs F_{}^{}",
                self.p, self.ambient, other.p, other.ambient
            )));
        }
        Ok(())
    }

    /// Lattice join in `L(F_p^d)`: the sum of subspaces.
    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_compatible(other)?;
        let rows: Vec<Vec<u8>> = (0..self.dim())
            .map(|r| self.basis.row(r).to_vec())
            .chain((0..other.dim()).map(|r| other.basis.row(r).to_vec()))
            .collect();
        Ok(Subspace::from_rows(self.p, self.ambient, &rows))
    }

    /// Lattice meet in `L(F_p^d)`: the intersection, via the Zassenhaus
    /// double-block elimination.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.check_compatible(other)?;
        let d = self.ambient as usize;
        let mut rows: Vec<Vec<u8>> = Vec::new();
        for r in 0..self.dim() {
            let mut row = self.basis.row(r).to_vec();
            row.extend_from_slice(self.basis.row(r));
            rows.push(row);
        }
        for r in 0..other.dim() {
            let mut row = other.basis.row(r).to_vec();
            row.extend(std::iter::repeat_n(0, d));
            rows.push(row);
        }
        let mut m = GfMat::new(self.p, 2 * d, &rows);
        m.rref();
        let inter: Vec<Vec<u8>> = (0..m.rows())
            .filter(|&r| m.row(r)[..d].iter().all(|&x| x == 0))
            .map(|r| m.row(r)[d..].to_vec())
            .collect();
        Ok(Subspace::from_rows(self.p, self.ambient, &inter))
    }

    pub fn contains_vector(&self, v: &[u8]) -> bool {
        let mut m = GfMat::new(self.p, self.ambient as usize, &[v.to_vec()]);
        // Reduce v by the basis; contained iff it vanishes.
        let p = self.p as u16;
        for r in 0..self.dim() {
            let pivot = self.basis.row(r).iter().position(|&x| x != 0).unwrap();
            let f = m.at(0, pivot) as u16;
            if f != 0 {
                for c in 0..self.ambient as usize {
                    let v = (m.at(0, c) as u16 + (p - 1) * f % p * self.basis.at(r, c) as u16) % p;
                    m.set(0, c, v as u8);
                }
            }
        }
        (0..self.ambient as usize).all(|c| m.at(0, c) == 0)
    }

    pub fn contains(&self, other: &Subspace) -> bool {
        (0..other.dim()).all(|r| self.contains_vector(other.basis.row(r)))
    }
}

impl fmt::Display for Subspace {
    /// Basis rows in digit form, semicolon separated; `0` for the zero space.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.dim() == 0 {
            return write!(f, "0");
        }
        for r in 0..self.dim() {
            if r > 0 {
                write!(f, ";")?;
            }
            for c in 0..self.ambient as usize {
                write!(f, "{}", self.basis.at(r, c))?;
            }
        }
        Ok(())
    }
}

/// Gaussian binomial coefficient: the number of `k`-dimensional subspaces of
/// `F_p^d`, by the closed product formula.
pub fn gaussian_binomial(p: u64, d: u64, k: u64) -> u64 {
    if k > d {
        return 0;
    }
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for i in 0..k {
        num *= (p as u128).pow((d - i) as u32) - 1;
        den *= (p as u128).pow((i + 1) as u32) - 1;
    }
    (num / den) as u64
}

/// All subspaces of `F_p^d`, every dimension, in canonical order (dimension,
/// then lexicographic basis). Enumerates RREF matrices directly: one per
/// choice of pivot columns and free entries.
pub fn enumerate_subspaces(p: u8, d: u8, budget: &crate::Budget) -> Result<Vec<Subspace>> {
    let size = (p as u64).checked_pow(d as u32).unwrap_or(u64::MAX);
    if size > budget.max_field_size {
        return Err(Error::Resource(format!(
            "field size {p}^{d} exceeds budget {}",
            budget.max_field_size
        )));
    }
    let dd = d as usize;
    let mut out = Vec::new();
    for k in 0..=dd {
        for pivots in combinations(dd, k) {
            // Free entries: (row i, col c) with c > pivots[i] and c not a pivot.
            let mut free = Vec::new();
            for (i, &pc) in pivots.iter().enumerate() {
                for c in pc + 1..dd {
                    if !pivots.contains(&c) {
                        free.push((i, c));
                    }
                }
            }
            let total = (p as u64).pow(free.len() as u32);
            for assignment in 0..total {
                let mut m = GfMat::zero(p, k, dd);
                for (i, &pc) in pivots.iter().enumerate() {
                    m.set(i, pc, 1);
                }
                let mut a = assignment;
                for &(i, c) in &free {
                    m.set(i, c, (a % p as u64) as u8);
                    a /= p as u64;
                }
                out.push(Subspace { p, ambient: d, basis: m });
            }
        }
    }
    out.sort();
    // Self-check against the closed form.
    for k in 0..=dd as u64 {
        let count = out.iter().filter(|s| s.dim() as u64 == k).count() as u64;
        let expect = gaussian_binomial(p as u64, d as u64, k);
        if count != expect {
            return Err(Error::Integrity(format!(
                "enumerated {count} subspaces of dim {k} in F_{p}^{d}, Gaussian binomial says {expect}"
            )));
        }
    }
    Ok(out)
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}
