//! Dense linear algebra over F_{2^m}: row reduction, kernels and affine systems.
//!
//! Pivoting is deterministic: columns are scanned left to right and the
//! topmost remaining row with a nonzero entry becomes the pivot row. Equal
//! row spaces therefore always reduce to identical matrices.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{FieldCtx, FieldElem};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GfMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<FieldElem>,
}

impl fmt::Debug for GfMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "GfMatrix {}x{}", self.rows, self.cols)?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", self.row(r))?;
        }
        Ok(())
    }
}

impl GfMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        GfMatrix {
            rows,
            cols,
            entries: vec![FieldElem::ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = FieldElem::ONE;
        }
        m
    }

    pub fn from_entries(rows: usize, cols: usize, entries: Vec<FieldElem>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        Ok(GfMatrix {
            rows,
            cols,
            entries,
        })
    }

    /// Builds a matrix from rows of equal length; `cols` fixes the width when `rows` is empty.
    pub fn from_rows(cols: usize, rows: &[Vec<FieldElem>]) -> Result<Self> {
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for (i, r) in rows.iter().enumerate() {
            if r.len() != cols {
                return Err(Error::Dimension(format!(
                    "row {i} has length {}, expected {cols}",
                    r.len()
                )));
            }
            entries.extend_from_slice(r);
        }
        Ok(GfMatrix {
            rows: rows.len(),
            cols,
            entries,
        })
    }

    /// Convenience constructor from small integers (bit patterns).
    pub fn from_u32_rows(rows: &[&[u32]]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        let rows: Vec<Vec<FieldElem>> = rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|&b| FieldElem::from_bits_unchecked(b))
                    .collect()
            })
            .collect();
        Self::from_rows(cols, &rows)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[FieldElem] {
        &self.entries
    }

    pub fn row(&self, r: usize) -> &[FieldElem] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_mut(&mut self, r: usize) -> &mut [FieldElem] {
        &mut self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<FieldElem>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn push_row(&mut self, row: &[FieldElem]) {
        assert_eq!(row.len(), self.cols, "row length");
        self.entries.extend_from_slice(row);
        self.rows += 1;
    }

    /// Drops the first column.
    pub fn without_first_column(&self) -> GfMatrix {
        let cols = self.cols.saturating_sub(1);
        let mut entries = Vec::with_capacity(self.rows * cols);
        for r in 0..self.rows {
            entries.extend_from_slice(&self.row(r)[1..]);
        }
        GfMatrix {
            rows: self.rows,
            cols,
            entries,
        }
    }

    pub fn mul_vec(&self, ctx: &FieldCtx, v: &[FieldElem]) -> Result<Vec<FieldElem>> {
        if v.len() != self.cols {
            return Err(Error::Dimension(format!(
                "vector of length {} against {} columns",
                v.len(),
                self.cols
            )));
        }
        Ok((0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .fold(FieldElem::ZERO, |acc, (&a, &b)| acc + ctx.mul(a, b))
            })
            .collect())
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        let (head, tail) = self.entries.split_at_mut(hi * self.cols);
        head[lo * self.cols..(lo + 1) * self.cols].swap_with_slice(&mut tail[..self.cols]);
    }

    /// Reduces in place to reduced row echelon form, drops zero rows and
    /// returns the pivot column of each remaining row.
    pub fn rref(&mut self, ctx: &FieldCtx) -> Vec<usize> {
        let cols = self.cols;
        let mut pivots = Vec::new();
        let mut next = 0;
        for col in 0..cols {
            if next == self.rows {
                break;
            }
            let Some(p) = (next..self.rows).find(|&r| !self.entries[r * cols + col].is_zero())
            else {
                continue;
            };
            self.swap_rows(next, p);
            let lead = self.entries[next * cols + col];
            if lead != FieldElem::ONE {
                let inv = ctx.inv(lead).expect("pivot is nonzero");
                for e in self.row_mut(next)[col..].iter_mut() {
                    *e = ctx.mul(*e, inv);
                }
            }
            let (before, rest) = self.entries.split_at_mut(next * cols);
            let (pivot_row, after) = rest.split_at_mut(cols);
            let eliminate = |row: &mut [FieldElem]| {
                let factor = row[col];
                if factor.is_zero() {
                    return;
                }
                for (e, &p) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                    if !p.is_zero() {
                        *e += ctx.mul(factor, p);
                    }
                }
            };
            before.chunks_exact_mut(cols).for_each(eliminate);
            after.chunks_exact_mut(cols).for_each(eliminate);
            pivots.push(col);
            next += 1;
        }
        self.rows = next;
        self.entries.truncate(next * cols);
        pivots
    }
}

impl std::ops::Index<(usize, usize)> for GfMatrix {
    type Output = FieldElem;

    fn index(&self, (r, c): (usize, usize)) -> &FieldElem {
        &self.entries[r * self.cols + c]
    }
}

impl std::ops::IndexMut<(usize, usize)> for GfMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut FieldElem {
        &mut self.entries[r * self.cols + c]
    }
}

/// Kernel basis of a matrix already in RREF with the given pivots.
///
/// One vector per free column `f`: a 1 in position `f`, the negated
/// (in characteristic 2: identical) column entries at the pivot positions.
fn kernel_from_rref(reduced: &GfMatrix, pivots: &[usize]) -> Vec<Vec<FieldElem>> {
    let cols = reduced.cols();
    let mut is_pivot = vec![false; cols];
    for &p in pivots {
        is_pivot[p] = true;
    }
    (0..cols)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut v = vec![FieldElem::ZERO; cols];
            v[f] = FieldElem::ONE;
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = reduced[(r, f)];
            }
            v
        })
        .collect()
}

/// Rank and a kernel basis of `m`.
pub fn rref_kernel(ctx: &FieldCtx, m: &GfMatrix) -> (usize, Vec<Vec<FieldElem>>) {
    let mut reduced = m.clone();
    let pivots = reduced.rref(ctx);
    let kernel = kernel_from_rref(&reduced, &pivots);
    (pivots.len(), kernel)
}

/// Solution set of a consistent affine system: `particular + span(kernel)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineSolution {
    pub particular: Vec<FieldElem>,
    pub kernel: Vec<Vec<FieldElem>>,
}

impl AffineSolution {
    /// Every solution, sorted lexicographically by coordinate bit values.
    ///
    /// The count is `q^{kernel.len()}`; callers keep the kernel small.
    pub fn all_solutions(&self, ctx: &FieldCtx) -> Vec<Vec<FieldElem>> {
        let mut out = vec![self.particular.clone()];
        for basis in &self.kernel {
            let mut next = Vec::with_capacity(out.len() * ctx.order() as usize);
            for v in &out {
                for c in ctx.elements() {
                    next.push(
                        v.iter()
                            .zip(basis)
                            .map(|(&x, &b)| x + ctx.mul(c, b))
                            .collect(),
                    );
                }
            }
            out = next;
        }
        out.sort();
        out
    }
}

/// Solves `m · x = c`; `Ok(None)` when the system is inconsistent.
pub fn solve_affine(
    ctx: &FieldCtx,
    m: &GfMatrix,
    c: &[FieldElem],
) -> Result<Option<AffineSolution>> {
    if c.len() != m.rows() {
        return Err(Error::Dimension(format!(
            "right-hand side of length {} for {} rows",
            c.len(),
            m.rows()
        )));
    }
    let n = m.cols();
    let mut aug = GfMatrix::zeros(m.rows(), n + 1);
    for r in 0..m.rows() {
        aug.row_mut(r)[..n].copy_from_slice(m.row(r));
        aug[(r, n)] = c[r];
    }
    let pivots = aug.rref(ctx);
    if pivots.last() == Some(&n) {
        return Ok(None);
    }
    let mut particular = vec![FieldElem::ZERO; n];
    for (r, &p) in pivots.iter().enumerate() {
        particular[p] = aug[(r, n)];
    }
    let mut coeff = aug;
    coeff.cols = n;
    coeff.entries = (0..coeff.rows)
        .flat_map(|r| {
            let start = r * (n + 1);
            start..start + n
        })
        .map(|i| coeff.entries[i])
        .collect();
    let kernel = kernel_from_rref(&coeff, &pivots);
    Ok(Some(AffineSolution { particular, kernel }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn f2() -> FieldCtx {
        FieldCtx::new(1).unwrap()
    }

    fn v(bits: &[u32]) -> Vec<FieldElem> {
        bits.iter()
            .map(|&b| FieldElem::from_bits_unchecked(b))
            .collect()
    }

    #[test]
    fn identity_has_trivial_kernel() {
        let (rank, ker) = rref_kernel(&f2(), &GfMatrix::identity(2));
        assert_eq!(rank, 2);
        assert!(ker.is_empty());
    }

    #[test]
    fn example_matrix_430() {
        let m =
            GfMatrix::from_u32_rows(&[&[0, 0, 0, 0], &[0, 0, 0, 0], &[0, 1, 0, 0], &[0, 1, 0, 0]])
                .unwrap();
        let (rank, ker) = rref_kernel(&f2(), &m);
        assert_eq!(rank, 1);
        assert_eq!(ker.len(), 3);

        let sol = solve_affine(&f2(), &m, &v(&[0, 0, 1, 1])).unwrap().unwrap();
        let all = sol.all_solutions(&f2());
        assert_eq!(all.len(), 8);
        assert!(all.iter().all(|x| x[1] == FieldElem::ONE));
        let unit_b0: Vec<_> = all.into_iter().filter(|x| !x[0].is_zero()).collect();
        assert_eq!(
            unit_b0,
            vec![
                v(&[1, 1, 0, 0]),
                v(&[1, 1, 0, 1]),
                v(&[1, 1, 1, 0]),
                v(&[1, 1, 1, 1])
            ]
        );
    }

    #[test]
    fn example_matrix_431_inconsistent() {
        let m = GfMatrix::from_u32_rows(&[&[0, 0, 0], &[0, 0, 0], &[0, 1, 0]]).unwrap();
        assert_eq!(solve_affine(&f2(), &m, &v(&[0, 1, 1])).unwrap(), None);
    }

    #[test]
    fn identity_solves_uniquely() {
        let f = FieldCtx::new(2).unwrap();
        let c = v(&[3, 0, 2]);
        let sol = solve_affine(&f, &GfMatrix::identity(3), &c)
            .unwrap()
            .unwrap();
        assert_eq!(sol.particular, c);
        assert!(sol.kernel.is_empty());
    }

    #[test]
    fn rhs_length_checked() {
        assert!(solve_affine(&f2(), &GfMatrix::identity(2), &v(&[1])).is_err());
    }

    #[test]
    fn solve_affine_matches_exhaustive_search() {
        // every 3x3 matrix over F_2 against every right-hand side
        let f = f2();
        for mbits in 0u32..512 {
            let entries = (0..9)
                .map(|i| FieldElem::from_bits_unchecked(mbits >> i & 1))
                .collect();
            let m = GfMatrix::from_entries(3, 3, entries).unwrap();
            let images: Vec<Vec<FieldElem>> = (0u32..8)
                .map(|x| m.mul_vec(&f, &v(&[x & 1, x >> 1 & 1, x >> 2 & 1])).unwrap())
                .collect();
            for cbits in 0u32..8 {
                let c = v(&[cbits & 1, cbits >> 1 & 1, cbits >> 2 & 1]);
                let mut expected: Vec<Vec<FieldElem>> = (0u32..8)
                    .filter(|&x| images[x as usize] == c)
                    .map(|x| v(&[x & 1, x >> 1 & 1, x >> 2 & 1]))
                    .collect();
                expected.sort();
                match solve_affine(&f, &m, &c).unwrap() {
                    None => assert!(expected.is_empty()),
                    Some(sol) => assert_eq!(sol.all_solutions(&f), expected),
                }
            }
        }
    }

    fn arb_matrix() -> impl Strategy<Value = (u32, usize, usize, Vec<u32>)> {
        (1u32..=3, 1usize..6, 1usize..6).prop_flat_map(|(m, r, c)| {
            proptest::collection::vec(0u32..(1 << m), r * c).prop_map(move |e| (m, r, c, e))
        })
    }

    proptest! {
        #[test]
        fn kernel_vectors_are_annihilated((m, r, c, e) in arb_matrix()) {
            let f = FieldCtx::new(m).unwrap();
            let mat = GfMatrix::from_entries(r, c, e.into_iter().map(FieldElem::from_bits_unchecked).collect()).unwrap();
            let (rank, ker) = rref_kernel(&f, &mat);
            prop_assert_eq!(rank + ker.len(), c);
            for k in &ker {
                prop_assert!(mat.mul_vec(&f, k).unwrap().iter().all(|x| x.is_zero()));
            }
            let mut reduced = mat.clone();
            let pivots = reduced.rref(&f);
            prop_assert_eq!(pivots.len(), rank);
            prop_assert_eq!(reduced.rows(), rank);
        }
    }
}
