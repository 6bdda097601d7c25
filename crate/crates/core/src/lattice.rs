//! Quotients of Z^n by full-rank integer lattices.

use std::fmt;

use crate::error::TilingError;
use crate::geometry::{Cell, MAX_DIM};

/// `Z^n / L`. Residues are reduced against an upper-triangular Hermite basis,
/// so every class has a unique representative in the box
/// `[0, h_00) x [0, h_11) x ...` and a mixed-radix index.
#[derive(Clone, PartialEq, Eq)]
pub struct QuotientRegion {
    dim: usize,
    rows: Vec<Vec<i64>>,
    hnf: [[i64; MAX_DIM]; MAX_DIM],
    det: u64,
}

impl fmt::Debug for QuotientRegion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("QuotientRegion").field("rows", &self.rows).field("det", &self.det).finish()
    }
}

impl QuotientRegion {
    /// Lattice spanned by `rows`, which must be `dim` independent vectors.
    pub fn new(rows: Vec<Vec<i64>>) -> Result<QuotientRegion, TilingError> {
        let dim = rows.len();
        if !(1..=MAX_DIM).contains(&dim) || rows.iter().any(|r| r.len() != dim) {
            return Err(TilingError::LatticeShape { dim });
        }
        QuotientRegion::from_generators(dim, rows)
    }

    /// Lattice generated by any number of vectors; must have full rank.
    pub fn from_generators(dim: usize, rows: Vec<Vec<i64>>) -> Result<QuotientRegion, TilingError> {
        if !(1..=MAX_DIM).contains(&dim) || rows.iter().any(|r| r.len() != dim) {
            return Err(TilingError::LatticeShape { dim });
        }
        let hnf = hermite(dim, &rows).ok_or(TilingError::DegenerateLattice)?;
        let det = (0..dim).map(|k| hnf[k][k] as u64).product();
        Ok(QuotientRegion { dim, rows, hnf, det })
    }

    /// The cube `[0, side)^dim` with opposite faces identified.
    pub fn cubic(dim: usize, side: i64) -> Result<QuotientRegion, TilingError> {
        let rows = (0..dim).map(|i| (0..dim).map(|j| if i == j { side } else { 0 }).collect()).collect();
        QuotientRegion::new(rows)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.rows
    }

    /// Number of residue classes, `|det L|`.
    pub fn det(&self) -> u64 {
        self.det
    }

    /// Sides of the box holding the canonical representatives.
    pub fn radices(&self) -> Vec<i64> {
        (0..self.dim).map(|k| self.hnf[k][k]).collect()
    }

    pub fn reduce(&self, c: Cell) -> Cell {
        let mut v = [0i64; MAX_DIM];
        for k in 0..self.dim {
            v[k] = c.0[k] as i64;
        }
        for k in 0..self.dim {
            let q = v[k].div_euclid(self.hnf[k][k]);
            if q != 0 {
                for j in k..self.dim {
                    v[j] -= q * self.hnf[k][j];
                }
            }
        }
        let mut out = [0i32; MAX_DIM];
        for k in 0..self.dim {
            out[k] = v[k] as i32;
        }
        Cell(out)
    }

    pub fn index(&self, c: Cell) -> usize {
        let r = self.reduce(c);
        let mut idx = 0usize;
        for k in 0..self.dim {
            idx = idx * self.hnf[k][k] as usize + r.0[k] as usize;
        }
        idx
    }

    pub fn cell_at(&self, mut idx: usize) -> Cell {
        let mut out = [0i32; MAX_DIM];
        for k in (0..self.dim).rev() {
            let r = self.hnf[k][k] as usize;
            out[k] = (idx % r) as i32;
            idx /= r;
        }
        Cell(out)
    }

    pub fn equivalent(&self, a: Cell, b: Cell) -> bool {
        self.reduce(a) == self.reduce(b)
    }

    /// Whether `v` lies in the lattice.
    pub fn contains_vector(&self, v: Cell) -> bool {
        self.reduce(v) == Cell::ORIGIN
    }
}

/// Upper-triangular Hermite basis of the row lattice, or `None` if the rows
/// do not span `dim` dimensions.
fn hermite(dim: usize, rows: &[Vec<i64>]) -> Option<[[i64; MAX_DIM]; MAX_DIM]> {
    let mut m: Vec<[i64; MAX_DIM]> = rows
        .iter()
        .map(|r| {
            let mut a = [0i64; MAX_DIM];
            a[..dim].copy_from_slice(r);
            a
        })
        .collect();
    let mut out = [[0i64; MAX_DIM]; MAX_DIM];
    for col in 0..dim {
        // Euclid on column `col` among the remaining rows.
        loop {
            let mut nz: Vec<usize> = (0..m.len()).filter(|&r| m[r][col] != 0).collect();
            if nz.len() <= 1 {
                break;
            }
            nz.sort_by_key(|&r| m[r][col].abs());
            let pivot = nz[0];
            for &r in &nz[1..] {
                let q = m[r][col] / m[pivot][col];
                for j in 0..dim {
                    m[r][j] -= q * m[pivot][j];
                }
            }
        }
        let pivot = (0..m.len()).find(|&r| m[r][col] != 0)?;
        let mut row = m.swap_remove(pivot);
        if row[col] < 0 {
            row.iter_mut().for_each(|x| *x = -*x);
        }
        out[col] = row;
    }
    for k in (0..dim).rev() {
        for i in 0..k {
            let q = out[i][k].div_euclid(out[k][k]);
            for j in 0..dim {
                out[i][j] -= q * out[k][j];
            }
        }
    }
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn brick_lattice_det() {
        let l = QuotientRegion::new(vec![vec![80, 60, 0], vec![-80, 60, 0], vec![0, 0, 60]]).unwrap();
        assert_eq!(l.det(), 2 * 80 * 60 * 60);
        assert!(l.contains_vector(Cell::xyz(160, 0, 0)));
        assert!(l.contains_vector(Cell::xyz(0, 120, 0)));
        assert!(!l.contains_vector(Cell::xyz(80, 0, 0)));
        assert!(l.equivalent(Cell::xyz(3, 4, 5), Cell::xyz(83, 64, -55)));
    }

    #[test]
    fn degenerate_rejected() {
        assert_eq!(
            QuotientRegion::new(vec![vec![1, 2], vec![2, 4]]).unwrap_err(),
            TilingError::DegenerateLattice
        );
        assert!(matches!(QuotientRegion::new(vec![vec![1, 2]]), Err(TilingError::LatticeShape { .. })));
    }

    #[test]
    fn index_round_trip() {
        let l = QuotientRegion::new(vec![vec![3, 1], vec![1, -2]]).unwrap();
        assert_eq!(l.det(), 7);
        let mut seen = vec![false; 7];
        for idx in 0..7 {
            let c = l.cell_at(idx);
            assert_eq!(l.index(c), idx);
            seen[l.index(c)] = true;
        }
        assert!(seen.iter().all(|&s| s));
    }

    #[test]
    fn extra_generators() {
        let l = QuotientRegion::from_generators(2, vec![vec![4, 0], vec![0, 4], vec![2, 2]]).unwrap();
        assert_eq!(l.det(), 8);
    }
}
