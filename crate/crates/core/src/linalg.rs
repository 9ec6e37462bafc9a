//! Small dense matrices over GF(2^m).

use std::fmt;

use crate::ff2k::{FieldCtx, FieldElement};

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<FieldElement>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for r in 0..self.rows {
            if r > 0 {
                f.write_str("; ")?;
            }
            for c in 0..self.cols {
                if c > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{}", self[(r, c)])?;
            }
        }
        f.write_str("]")
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = FieldElement;

    fn index(&self, (r, c): (usize, usize)) -> &FieldElement {
        &self.data[r * self.cols + c]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut FieldElement {
        &mut self.data[r * self.cols + c]
    }
}

impl Matrix {
    pub fn zeros(field: &FieldCtx, rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: &FieldCtx, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m[(i, i)] = field.one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<FieldElement>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, r: usize) -> &[FieldElement] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix {
            rows: self.cols,
            cols: self.rows,
            data: self.data.clone(),
        };
        for r in 0..self.rows {
            for c in 0..self.cols {
                t[(c, r)] = self[(r, c)];
            }
        }
        t
    }

    pub fn mul(&self, field: &FieldCtx, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = Matrix::zeros(field, self.rows, other.cols);
        for r in 0..self.rows {
            for c in 0..other.cols {
                let mut acc = field.zero();
                for k in 0..self.cols {
                    acc = field.add(acc, field.mul(self[(r, k)], other[(k, c)]));
                }
                out[(r, c)] = acc;
            }
        }
        out
    }

    /// Inverse by Gauss-Jordan elimination; `None` if singular.
    pub fn inverse(&self, field: &FieldCtx) -> Option<Matrix> {
        assert_eq!(self.rows, self.cols, "inverse of a non-square matrix");
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Matrix::identity(field, n);
        for col in 0..n {
            let p = (col..n).find(|&r| !a[(r, col)].is_zero())?;
            a.swap_rows(p, col);
            inv.swap_rows(p, col);
            let s = field.inv(a[(col, col)]).ok()?;
            a.scale_row(field, col, s);
            inv.scale_row(field, col, s);
            for r in 0..n {
                let f = a[(r, col)];
                if r != col && !f.is_zero() {
                    a.add_row_multiple(field, r, col, f);
                    inv.add_row_multiple(field, r, col, f);
                }
            }
        }
        Some(inv)
    }

    pub fn rank(&self, field: &FieldCtx) -> usize {
        let raw: Vec<Vec<u32>> = (0..self.rows)
            .map(|r| self.row(r).iter().map(|x| x.bits()).collect())
            .collect();
        rank_raw(field, raw, self.cols)
    }

    /// A basis of the right kernel `{v : A v = 0}`.
    pub fn kernel(&self, field: &FieldCtx) -> Vec<Vec<FieldElement>> {
        let mut a = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            let Some(p) = (row..self.rows).find(|&r| !a[(r, col)].is_zero()) else {
                continue;
            };
            a.swap_rows(p, row);
            let s = field.inv(a[(row, col)]).expect("pivot is nonzero");
            a.scale_row(field, row, s);
            for r in 0..self.rows {
                let f = a[(r, col)];
                if r != row && !f.is_zero() {
                    a.add_row_multiple(field, r, row, f);
                }
            }
            pivots.push(col);
            row += 1;
        }
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&fc| {
                let mut v = vec![field.zero(); self.cols];
                v[fc] = field.one();
                for (r, &pc) in pivots.iter().enumerate() {
                    v[pc] = a[(r, fc)];
                }
                v
            })
            .collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for c in 0..self.cols {
                self.data.swap(a * self.cols + c, b * self.cols + c);
            }
        }
    }

    fn scale_row(&mut self, field: &FieldCtx, r: usize, s: FieldElement) {
        for c in 0..self.cols {
            self[(r, c)] = field.mul(self[(r, c)], s);
        }
    }

    /// row[dst] += f * row[src]
    fn add_row_multiple(&mut self, field: &FieldCtx, dst: usize, src: usize, f: FieldElement) {
        for c in 0..self.cols {
            let v = field.mul(self[(src, c)], f);
            self[(dst, c)] = field.add(self[(dst, c)], v);
        }
    }
}

/// Rank of a matrix given as raw rows of bit-vectors. Rows are consumed.
pub(crate) fn rank_raw(field: &FieldCtx, mut rows: Vec<Vec<u32>>, cols: usize) -> usize {
    let mut rank = 0;
    for col in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(rank, p);
        let inv = field.inv_raw(rows[rank][col]);
        let pivot: Vec<u32> = rows[rank].iter().map(|&x| field.mul_raw(x, inv)).collect();
        for row in rows.iter_mut().skip(rank + 1) {
            let f = row[col];
            if f != 0 {
                for c in col..cols {
                    if pivot[c] != 0 {
                        row[c] ^= field.mul_raw(pivot[c], f);
                    }
                }
            }
        }
        rows[rank] = pivot;
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn inverse_round_trip() {
        let f = FieldCtx::new(8).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let mut done = 0;
        while done < 20 {
            let rows = (0..4)
                .map(|_| {
                    (0..4)
                        .map(|_| f.element(rng.gen_range(0..256)).unwrap())
                        .collect()
                })
                .collect();
            let m = Matrix::from_rows(rows);
            if let Some(inv) = m.inverse(&f) {
                assert_eq!(m.mul(&f, &inv), Matrix::identity(&f, 4));
                assert_eq!(m.rank(&f), 4);
                done += 1;
            } else {
                assert!(m.rank(&f) < 4);
            }
        }
    }

    #[test]
    fn kernel_of_rank_deficient() {
        let f = FieldCtx::new(4).unwrap();
        let (o, z, u) = (f.one(), f.zero(), f.u());
        let m = Matrix::from_rows(vec![vec![o, u, z], vec![u, f.mul(u, u), z]]);
        assert_eq!(m.rank(&f), 1);
        let ker = m.kernel(&f);
        assert_eq!(ker.len(), 2);
        for v in ker {
            for r in 0..2 {
                let mut acc = z;
                for c in 0..3 {
                    acc = f.add(acc, f.mul(m[(r, c)], v[c]));
                }
                assert!(acc.is_zero());
            }
        }
    }
}
