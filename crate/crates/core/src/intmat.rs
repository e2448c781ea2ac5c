//! Exact linear algebra over the integers and the rationals.
//!
//! Dense matrices of [`BigInt`] with Hermite and Smith normal forms (both
//! with unimodular transforms), saturated integer kernels, integer and
//! rational linear solvers, and plain Gaussian elimination over `Q`.  Row
//! convention throughout: a matrix acts on column vectors, a lattice is
//! spanned by the rows of its basis matrix.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Dense integer matrix with an explicit shape, so zero-row and zero-column
/// matrices stay meaningful.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMat {
    nrows: usize,
    ncols: usize,
    rows: Vec<Vec<BigInt>>,
}

impl IntMat {
    pub fn new(rows: Vec<Vec<BigInt>>, ncols: usize) -> Self {
        for r in &rows {
            assert_eq!(r.len(), ncols, "ragged matrix");
        }
        IntMat { nrows: rows.len(), ncols, rows }
    }

    pub fn from_i64(rows: &[Vec<i64>], ncols: usize) -> Self {
        IntMat::new(
            rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect(),
            ncols,
        )
    }

    pub fn zero(nrows: usize, ncols: usize) -> Self {
        IntMat { nrows, ncols, rows: vec![vec![BigInt::zero(); ncols]; nrows] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMat::zero(n, n);
        for i in 0..n {
            m.rows[i][i] = BigInt::one();
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.rows[i]
    }

    pub fn rows(&self) -> &[Vec<BigInt>] {
        &self.rows
    }

    pub fn entry(&self, i: usize, j: usize) -> &BigInt {
        &self.rows[i][j]
    }

    pub fn set_entry(&mut self, i: usize, j: usize, value: BigInt) {
        self.rows[i][j] = value;
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(|r| r.iter().all(|x| x.is_zero()))
    }

    pub fn transpose(&self) -> IntMat {
        let mut t = IntMat::zero(self.ncols, self.nrows);
        for i in 0..self.nrows {
            for j in 0..self.ncols {
                t.rows[j][i] = self.rows[i][j].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMat) -> IntMat {
        assert_eq!(self.ncols, other.nrows, "dimension mismatch in product");
        let mut p = IntMat::zero(self.nrows, other.ncols);
        for i in 0..self.nrows {
            for k in 0..self.ncols {
                if self.rows[i][k].is_zero() {
                    continue;
                }
                for j in 0..other.ncols {
                    let t = &self.rows[i][k] * &other.rows[k][j];
                    p.rows[i][j] += t;
                }
            }
        }
        p
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.ncols, v.len());
        self.rows
            .iter()
            .map(|r| r.iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// Vertical concatenation: `self` on top of `other`.
    pub fn vstack(&self, other: &IntMat) -> IntMat {
        assert_eq!(self.ncols, other.ncols);
        let mut rows = self.rows.clone();
        rows.extend(other.rows.iter().cloned());
        IntMat::new(rows, self.ncols)
    }

    /// Horizontal concatenation: `self` to the left of `other`.
    pub fn hstack(&self, other: &IntMat) -> IntMat {
        assert_eq!(self.nrows, other.nrows);
        let rows = self
            .rows
            .iter()
            .zip(&other.rows)
            .map(|(a, b)| {
                let mut r = a.clone();
                r.extend(b.iter().cloned());
                r
            })
            .collect();
        IntMat::new(rows, self.ncols + other.ncols)
    }

    /// Row-style Hermite normal form together with a unimodular transform:
    /// returns `(h, u)` with `u * self == h`.  Pivots are positive, pivot
    /// columns strictly increase, every entry above a pivot is reduced into
    /// `[0, pivot)`, and zero rows sit at the bottom.  The nonzero rows are
    /// the canonical basis of the row lattice of `self`.
    pub fn hermite_with_transform(&self) -> (IntMat, IntMat) {
        let m = self.nrows;
        let n = self.ncols;
        let mut h = self.rows.clone();
        let mut u = IntMat::identity(m).rows;
        let mut row = 0usize;
        for col in 0..n {
            if row == m {
                break;
            }
            // Reduce the column below `row` to a single nonzero entry by
            // repeated division with remainder; the minimal absolute value
            // strictly decreases, so this terminates.
            loop {
                let mut piv: Option<usize> = None;
                for i in row..m {
                    if !h[i][col].is_zero() {
                        piv = match piv {
                            Some(p) if h[p][col].abs() <= h[i][col].abs() => Some(p),
                            _ => Some(i),
                        };
                    }
                }
                let Some(p) = piv else { break };
                h.swap(row, p);
                u.swap(row, p);
                let mut clean = true;
                let pivot_row = h[row].clone();
                let pivot_u = u[row].clone();
                let pivot = pivot_row[col].clone();
                for i in (row + 1)..m {
                    if h[i][col].is_zero() {
                        continue;
                    }
                    let q = &h[i][col] / &pivot;
                    if !q.is_zero() {
                        row_sub_scaled(&mut h[i], &pivot_row, &q);
                        row_sub_scaled(&mut u[i], &pivot_u, &q);
                    }
                    if !h[i][col].is_zero() {
                        clean = false;
                    }
                }
                if clean {
                    break;
                }
            }
            if !h[row][col].is_zero() {
                if h[row][col].is_negative() {
                    for x in h[row].iter_mut() {
                        *x = -std::mem::take(x);
                    }
                    for x in u[row].iter_mut() {
                        *x = -std::mem::take(x);
                    }
                }
                let pivot_row = h[row].clone();
                let pivot_u = u[row].clone();
                let pivot = pivot_row[col].clone();
                for i in 0..row {
                    let q = h[i][col].div_floor(&pivot);
                    if !q.is_zero() {
                        row_sub_scaled(&mut h[i], &pivot_row, &q);
                        row_sub_scaled(&mut u[i], &pivot_u, &q);
                    }
                }
                row += 1;
            }
        }
        (IntMat::new(h, n), IntMat::new(u, m))
    }

    /// Canonical Hermite normal form of the row lattice: the nonzero rows of
    /// [`IntMat::hermite_with_transform`], zero rows dropped.
    pub fn hermite(&self) -> IntMat {
        let (h, _) = self.hermite_with_transform();
        let rows: Vec<Vec<BigInt>> =
            h.rows.into_iter().filter(|r| r.iter().any(|x| !x.is_zero())).collect();
        IntMat::new(rows, self.ncols)
    }

    /// Rank over `Q` (equals the number of nonzero rows of the Hermite form).
    pub fn rank(&self) -> usize {
        self.hermite().nrows
    }

    /// Basis of the integer kernel `{ x : self * x = 0 }`, one basis vector
    /// per row.  The kernel of a map into a free abelian group is saturated,
    /// so any integral basis of it (as produced here) spans it exactly.
    pub fn kernel(&self) -> IntMat {
        let (h, u) = self.transpose().hermite_with_transform();
        let rows: Vec<Vec<BigInt>> = h
            .rows
            .iter()
            .zip(u.rows)
            .filter(|(hr, _)| hr.iter().all(|x| x.is_zero()))
            .map(|(_, ur)| ur)
            .collect();
        IntMat::new(rows, self.ncols)
    }

    /// One integer solution of `self * x = b`, if any exists.
    pub fn solve(&self, b: &[BigInt]) -> Option<Vec<BigInt>> {
        assert_eq!(b.len(), self.nrows);
        let (h, u) = self.transpose().hermite_with_transform();
        // self * u^T = h^T, so solve h^T y = b by peeling pivots, then
        // x = u^T y.
        let mut residue: Vec<BigInt> = b.to_vec();
        let mut y: Vec<BigInt> = vec![BigInt::zero(); h.nrows];
        for i in 0..h.nrows {
            let Some(j) = h.rows[i].iter().position(|x| !x.is_zero()) else { continue };
            let (q, r) = residue[j].div_rem(&h.rows[i][j]);
            if !r.is_zero() {
                return None;
            }
            for t in 0..h.ncols {
                let s = &q * &h.rows[i][t];
                residue[t] -= s;
            }
            y[i] = q;
        }
        if residue.iter().any(|x| !x.is_zero()) {
            return None;
        }
        let mut x = vec![BigInt::zero(); self.ncols];
        for i in 0..h.nrows {
            if y[i].is_zero() {
                continue;
            }
            for t in 0..self.ncols {
                let s = &y[i] * &u.rows[i][t];
                x[t] += s;
            }
        }
        Some(x)
    }

    /// Smith normal form with transforms: `(u, s, v)` with `u * self * v = s`
    /// diagonal, `u` and `v` unimodular, and nonnegative diagonal entries in
    /// divisibility order `d_1 | d_2 | ...` followed by zeros.
    pub fn smith_with_transform(&self) -> (IntMat, IntMat, IntMat) {
        let m = self.nrows;
        let n = self.ncols;
        let mut h = self.rows.clone();
        let mut u = IntMat::identity(m).rows;
        let mut v = IntMat::identity(n).rows;
        let mut t = 0usize;
        'outer: while t < m && t < n {
            // Pick the minimal-absolute-value nonzero entry of the working
            // block as pivot; if there is none, the block is zero.
            let mut piv: Option<(usize, usize)> = None;
            for i in t..m {
                for j in t..n {
                    if !h[i][j].is_zero() {
                        piv = match piv {
                            Some((pi, pj)) if h[pi][pj].abs() <= h[i][j].abs() => Some((pi, pj)),
                            _ => Some((i, j)),
                        };
                    }
                }
            }
            let Some((pi, pj)) = piv else { break };
            h.swap(t, pi);
            u.swap(t, pi);
            col_swap(&mut h, t, pj);
            col_swap(&mut v, t, pj);

            // Clear row and column t.  A nonzero remainder becomes a smaller
            // candidate pivot, so restart the block in that case.
            let pivot_row = h[t].clone();
            let pivot_u = u[t].clone();
            let pivot = pivot_row[t].clone();
            let mut clean = true;
            for i in (t + 1)..m {
                if h[i][t].is_zero() {
                    continue;
                }
                let q = &h[i][t] / &pivot;
                if !q.is_zero() {
                    row_sub_scaled(&mut h[i], &pivot_row, &q);
                    row_sub_scaled(&mut u[i], &pivot_u, &q);
                }
                if !h[i][t].is_zero() {
                    clean = false;
                }
            }
            for j in (t + 1)..n {
                if h[t][j].is_zero() {
                    continue;
                }
                let q = &h[t][j] / &pivot;
                if !q.is_zero() {
                    col_sub_scaled(&mut h, j, t, &q);
                    col_sub_scaled(&mut v, j, t, &q);
                }
                if !h[t][j].is_zero() {
                    clean = false;
                }
            }
            if !clean {
                continue 'outer;
            }
            // Divisibility fix: the pivot must divide the remaining block.
            for i in (t + 1)..m {
                for j in (t + 1)..n {
                    if !(&h[i][j] % &pivot).is_zero() {
                        let src = h[i].clone();
                        let src_u = u[i].clone();
                        row_add(&mut h[t], &src);
                        row_add(&mut u[t], &src_u);
                        continue 'outer;
                    }
                }
            }
            if h[t][t].is_negative() {
                for x in h[t].iter_mut() {
                    *x = -std::mem::take(x);
                }
                for x in u[t].iter_mut() {
                    *x = -std::mem::take(x);
                }
            }
            t += 1;
        }
        // Every column operation was applied identically to `v` starting
        // from the identity, so `v` accumulates the right factor directly:
        // h_final = self * E_1 ... E_k = self * v, hence u * self * v = s.
        (IntMat::new(u, m), IntMat::new(h, n), IntMat::new(v, n))
    }

    /// Nonzero invariant factors `d_1 | d_2 | ...` of the matrix.
    pub fn smith_invariants(&self) -> Vec<BigInt> {
        let (_, s, _) = self.smith_with_transform();
        let mut out = Vec::new();
        for i in 0..s.nrows.min(s.ncols) {
            if !s.rows[i][i].is_zero() {
                out.push(s.rows[i][i].clone());
            }
        }
        out
    }

    /// Determinant of a square matrix by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> BigInt {
        assert_eq!(self.nrows, self.ncols, "determinant of a non-square matrix");
        let n = self.nrows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.rows.clone();
        let mut sign = 1i32;
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                let Some(p) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                    return BigInt::zero();
                };
                a.swap(k, p);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &a[k][k] * &a[i][j] - &a[i][k] * &a[k][j];
                    a[i][j] = num / &prev;
                }
                a[i][k] = BigInt::zero();
            }
            prev = a[k][k].clone();
        }
        let d = a[n - 1][n - 1].clone();
        if sign < 0 { -d } else { d }
    }
}

fn row_sub_scaled(target: &mut [BigInt], src: &[BigInt], q: &BigInt) {
    for (t, s) in target.iter_mut().zip(src) {
        *t -= q * s;
    }
}

fn row_add(target: &mut [BigInt], src: &[BigInt]) {
    for (t, s) in target.iter_mut().zip(src) {
        *t += s;
    }
}

fn col_swap(rows: &mut [Vec<BigInt>], a: usize, b: usize) {
    for r in rows.iter_mut() {
        r.swap(a, b);
    }
}

fn col_sub_scaled(rows: &mut [Vec<BigInt>], target: usize, src: usize, q: &BigInt) {
    for r in rows.iter_mut() {
        let s = q * &r[src];
        r[target] -= s;
    }
}

// ---------------------------------------------------------------------------
// Rational Gaussian elimination.
// ---------------------------------------------------------------------------

/// Rank of a matrix over `Q` given as rows.
pub fn rat_rank(rows: &[Vec<BigRational>]) -> usize {
    let mut a: Vec<Vec<BigRational>> = rows.to_vec();
    let m = a.len();
    if m == 0 {
        return 0;
    }
    let n = a[0].len();
    let mut rank = 0usize;
    for col in 0..n {
        let Some(p) = (rank..m).find(|&i| !a[i][col].is_zero()) else { continue };
        a.swap(rank, p);
        let pivot = a[rank][col].clone();
        for i in 0..m {
            if i != rank && !a[i][col].is_zero() {
                let f = &a[i][col] / &pivot;
                for j in col..n {
                    let s = &f * &a[rank][j];
                    a[i][j] -= s;
                }
            }
        }
        rank += 1;
        if rank == m {
            break;
        }
    }
    rank
}

/// Basis (rows) of the rational kernel `{ x in Q^ncols : rows * x = 0 }`.
pub fn rat_kernel(rows: &[Vec<BigRational>], ncols: usize) -> Vec<Vec<BigRational>> {
    let mut a: Vec<Vec<BigRational>> = rows.to_vec();
    let m = a.len();
    let mut pivots: Vec<(usize, usize)> = Vec::new(); // (row, col)
    let mut rank = 0usize;
    for col in 0..ncols {
        let Some(p) = (rank..m).find(|&i| !a[i][col].is_zero()) else { continue };
        a.swap(rank, p);
        let pivot = a[rank][col].clone();
        for j in 0..ncols {
            a[rank][j] = &a[rank][j] / &pivot;
        }
        for i in 0..m {
            if i != rank && !a[i][col].is_zero() {
                let f = a[i][col].clone();
                for j in 0..ncols {
                    let s = &f * &a[rank][j];
                    a[i][j] -= s;
                }
            }
        }
        pivots.push((rank, col));
        rank += 1;
        if rank == m {
            break;
        }
    }
    let pivot_cols: Vec<usize> = pivots.iter().map(|&(_, c)| c).collect();
    let mut basis = Vec::new();
    for free in 0..ncols {
        if pivot_cols.contains(&free) {
            continue;
        }
        let mut x = vec![BigRational::zero(); ncols];
        x[free] = BigRational::one();
        for &(r, c) in &pivots {
            x[c] = -a[r][free].clone();
        }
        basis.push(x);
    }
    basis
}

/// One rational solution of `rows * x = b`, if the system is consistent.
pub fn rat_solve(rows: &[Vec<BigRational>], b: &[BigRational]) -> Option<Vec<BigRational>> {
    let m = rows.len();
    assert_eq!(b.len(), m);
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut a: Vec<Vec<BigRational>> = rows
        .iter()
        .zip(b)
        .map(|(r, rhs)| {
            let mut row = r.clone();
            row.push(rhs.clone());
            row
        })
        .collect();
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut rank = 0usize;
    for col in 0..ncols {
        let Some(p) = (rank..m).find(|&i| !a[i][col].is_zero()) else { continue };
        a.swap(rank, p);
        let pivot = a[rank][col].clone();
        for j in 0..=ncols {
            a[rank][j] = &a[rank][j] / &pivot;
        }
        for i in 0..m {
            if i != rank && !a[i][col].is_zero() {
                let f = a[i][col].clone();
                for j in 0..=ncols {
                    let s = &f * &a[rank][j];
                    a[i][j] -= s;
                }
            }
        }
        pivots.push((rank, col));
        rank += 1;
        if rank == m {
            break;
        }
    }
    // Inconsistent iff a zero row has nonzero right-hand side.
    for i in rank..m {
        if !a[i][ncols].is_zero() {
            return None;
        }
    }
    let mut x = vec![BigRational::zero(); ncols];
    for &(r, c) in &pivots {
        x[c] = a[r][ncols].clone();
    }
    Some(x)
}

/// Clear denominators of a rational matrix: returns `(a, d)` with integer
/// matrix `a` and positive integer `d` such that `rows = a / d`.
pub fn clear_denominators(rows: &[Vec<BigRational>], ncols: usize) -> (IntMat, BigInt) {
    let mut d = BigInt::one();
    for r in rows {
        for x in r {
            d = d.lcm(x.denom());
        }
    }
    let a = rows
        .iter()
        .map(|r| r.iter().map(|x| (x * BigRational::from_integer(d.clone())).to_integer()).collect())
        .collect();
    (IntMat::new(a, ncols), d)
}
