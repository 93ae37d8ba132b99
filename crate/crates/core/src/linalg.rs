//! Exact integer linear algebra: small dense matrices for correspondence
//! blocks and Gram pairings, fraction-free dense rank/determinant, a sparse
//! elimination engine for the large kernel-rank computations, and Smith
//! normal form for the torsion certification mode.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

// ---------------------------------------------------------------------------
// Small dense integer matrices
// ---------------------------------------------------------------------------

/// A dense integer matrix with checked i128 arithmetic. Sized for graded
/// correspondence blocks and Gram matrices (a few dozen rows at most).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mat {
    rows: usize,
    cols: usize,
    data: Vec<i128>,
}

impl Mat {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zero(n, n);
        for i in 0..n {
            m[(i, i)] = 1;
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<i128>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Mat {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn transpose(&self) -> Mat {
        let mut out = Mat::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)];
            }
        }
        out
    }

    pub fn mul(&self, rhs: &Mat) -> Mat {
        assert_eq!(self.cols, rhs.rows, "shape mismatch in matrix product");
        let mut out = Mat::zero(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == 0 {
                    continue;
                }
                for j in 0..rhs.cols {
                    let prod = a.checked_mul(rhs[(k, j)]).expect("matrix entry overflow");
                    out[(i, j)] = out[(i, j)].checked_add(prod).expect("matrix entry overflow");
                }
            }
        }
        out
    }

    pub fn add(&self, rhs: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&rhs.data) {
            *a = a.checked_add(*b).expect("matrix entry overflow");
        }
        out
    }

    pub fn sub(&self, rhs: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&rhs.data) {
            *a = a.checked_sub(*b).expect("matrix entry overflow");
        }
        out
    }

    pub fn scale(&self, k: i128) -> Mat {
        let mut out = self.clone();
        for a in out.data.iter_mut() {
            *a = a.checked_mul(k).expect("matrix entry overflow");
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&a| a == 0)
    }

    pub fn rank(&self) -> usize {
        let rows: Vec<Vec<BigInt>> = (0..self.rows)
            .map(|i| (0..self.cols).map(|j| BigInt::from(self[(i, j)])).collect())
            .collect();
        rank_dense(rows)
    }

    pub fn det(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of non-square matrix");
        let rows: Vec<Vec<BigInt>> = (0..self.rows)
            .map(|i| (0..self.cols).map(|j| BigInt::from(self[(i, j)])).collect())
            .collect();
        det_bareiss(rows)
    }

    /// Inverse of a unimodular matrix (det ±1), which is again integral.
    pub fn inverse_unimodular(&self) -> Mat {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let det = self.det();
        assert!(
            det.clone().abs().is_one(),
            "matrix is not unimodular (det {det})"
        );
        let sign: i128 = if det.is_negative() { -1 } else { 1 };
        let mut adj = Mat::zero(n, n);
        for i in 0..n {
            for j in 0..n {
                // cofactor C_ji for the adjugate
                let minor: Vec<Vec<BigInt>> = (0..n)
                    .filter(|&r| r != j)
                    .map(|r| {
                        (0..n)
                            .filter(|&c| c != i)
                            .map(|c| BigInt::from(self[(r, c)]))
                            .collect()
                    })
                    .collect();
                let m = if n == 1 {
                    BigInt::one()
                } else {
                    det_bareiss(minor)
                };
                let s = if (i + j) % 2 == 0 { 1i128 } else { -1 };
                let val = i128::try_from(m).expect("cofactor overflow") * s * sign;
                adj[(i, j)] = val;
            }
        }
        debug_assert!(self.mul(&adj) == Mat::identity(n));
        adj
    }
}

impl std::ops::Index<(usize, usize)> for Mat {
    type Output = i128;
    fn index(&self, (i, j): (usize, usize)) -> &i128 {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Mat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut i128 {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Display for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self[(i, j)].to_string()).collect();
            writeln!(f, "[ {} ]", row.join(" "))?;
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Dense fraction-free elimination (Bareiss)
// ---------------------------------------------------------------------------

/// Exact rank over ℚ by fraction-free Gaussian elimination.
pub fn rank_dense(mut rows: Vec<Vec<BigInt>>) -> usize {
    let nrows = rows.len();
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut rank = 0;
    let mut prev = BigInt::one();
    let mut col = 0;
    while rank < nrows && col < ncols {
        // find a pivot in this column
        let pivot = (rank..nrows).find(|&r| !rows[r][col].is_zero());
        let Some(p) = pivot else {
            col += 1;
            continue;
        };
        rows.swap(rank, p);
        for r in rank + 1..nrows {
            for c in col + 1..ncols {
                let v = (&rows[rank][col] * &rows[r][c] - &rows[r][col] * &rows[rank][c])
                    / &prev;
                rows[r][c] = v;
            }
            rows[r][col] = BigInt::zero();
        }
        prev = rows[rank][col].clone();
        rank += 1;
        col += 1;
    }
    rank
}

/// Exact determinant by Bareiss elimination.
pub fn det_bareiss(mut rows: Vec<Vec<BigInt>>) -> BigInt {
    let n = rows.len();
    if n == 0 {
        return BigInt::one();
    }
    assert!(rows.iter().all(|r| r.len() == n));
    let mut sign = 1i32;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if rows[k][k].is_zero() {
            let swap = (k + 1..n).find(|&r| !rows[r][k].is_zero());
            match swap {
                Some(r) => {
                    rows.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&rows[k][k] * &rows[i][j] - &rows[i][k] * &rows[k][j]) / &prev;
                rows[i][j] = v;
            }
            rows[i][k] = BigInt::zero();
        }
        prev = rows[k][k].clone();
    }
    let det = rows[n - 1][n - 1].clone();
    if sign < 0 {
        -det
    } else {
        det
    }
}

// ---------------------------------------------------------------------------
// Sparse exact rank
// ---------------------------------------------------------------------------

/// A sparse integer matrix assembled row-by-row; entries are small at build
/// time (divisibility conditions contribute ±1 sums).
#[derive(Debug, Clone)]
pub struct SparseIntMat {
    pub ncols: usize,
    pub rows: Vec<Vec<(u32, i64)>>,
}

impl SparseIntMat {
    pub fn new(ncols: usize) -> Self {
        SparseIntMat {
            ncols,
            rows: Vec::new(),
        }
    }

    /// Adds a row given as (column, coefficient) pairs; duplicates are merged
    /// and zeros dropped.
    pub fn push_row(&mut self, mut entries: Vec<(u32, i64)>) {
        entries.sort_unstable_by_key(|&(c, _)| c);
        let mut merged: Vec<(u32, i64)> = Vec::with_capacity(entries.len());
        for (c, v) in entries {
            debug_assert!((c as usize) < self.ncols);
            match merged.last_mut() {
                Some(last) if last.0 == c => last.1 += v,
                _ => merged.push((c, v)),
            }
        }
        merged.retain(|&(_, v)| v != 0);
        if !merged.is_empty() {
            self.rows.push(merged);
        }
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(|r| r.len()).sum()
    }

    pub fn to_dense(&self) -> Vec<Vec<BigInt>> {
        let mut out = vec![vec![BigInt::zero(); self.ncols]; self.rows.len()];
        for (i, row) in self.rows.iter().enumerate() {
            for &(c, v) in row {
                out[i][c as usize] = BigInt::from(v);
            }
        }
        out
    }

    /// Exact rank over ℚ. Elimination runs in checked i128 with content
    /// stripping; on overflow the computation restarts with big integers.
    pub fn rank(&self) -> usize {
        match eliminate::<i128>(self) {
            Ok(r) => r,
            Err(Overflow) => eliminate::<BigInt>(self).expect("bigint elimination is total"),
        }
    }

    /// Kernel rank over ℚ (number of columns minus rank).
    pub fn kernel_rank(&self) -> usize {
        self.ncols - self.rank()
    }
}

#[derive(Debug)]
struct Overflow;

/// Coefficient arithmetic required by the sparse elimination.
trait Coeff: Clone + PartialEq + Sized {
    fn from_i64(v: i64) -> Self;
    fn is_zero_c(&self) -> bool;
    fn is_unit_c(&self) -> bool;
    fn is_neg_c(&self) -> bool;
    fn neg_c(&self) -> Self;
    fn mul_checked(&self, other: &Self) -> Result<Self, Overflow>;
    /// a*b − c*d, the elimination kernel.
    fn cross(a: &Self, b: &Self, c: &Self, d: &Self) -> Result<Self, Overflow>;
    fn gcd_c(&self, other: &Self) -> Self;
    fn div_exact_c(&self, other: &Self) -> Self;
}

impl Coeff for i128 {
    fn from_i64(v: i64) -> Self {
        v as i128
    }
    fn is_zero_c(&self) -> bool {
        *self == 0
    }
    fn is_unit_c(&self) -> bool {
        *self == 1 || *self == -1
    }
    fn is_neg_c(&self) -> bool {
        *self < 0
    }
    fn neg_c(&self) -> Self {
        -*self
    }
    fn mul_checked(&self, other: &Self) -> Result<Self, Overflow> {
        self.checked_mul(*other).ok_or(Overflow)
    }
    fn cross(a: &Self, b: &Self, c: &Self, d: &Self) -> Result<Self, Overflow> {
        let x = a.checked_mul(*b).ok_or(Overflow)?;
        let y = c.checked_mul(*d).ok_or(Overflow)?;
        x.checked_sub(y).ok_or(Overflow)
    }
    fn gcd_c(&self, other: &Self) -> Self {
        Integer::gcd(self, other)
    }
    fn div_exact_c(&self, other: &Self) -> Self {
        self / other
    }
}

impl Coeff for BigInt {
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
    fn is_zero_c(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_unit_c(&self) -> bool {
        self.abs().is_one()
    }
    fn is_neg_c(&self) -> bool {
        self.is_negative()
    }
    fn neg_c(&self) -> Self {
        -self
    }
    fn mul_checked(&self, other: &Self) -> Result<Self, Overflow> {
        Ok(self * other)
    }
    fn cross(a: &Self, b: &Self, c: &Self, d: &Self) -> Result<Self, Overflow> {
        Ok(a * b - c * d)
    }
    fn gcd_c(&self, other: &Self) -> Self {
        Integer::gcd(self, other)
    }
    fn div_exact_c(&self, other: &Self) -> Self {
        self / other
    }
}

fn normalize_row<C: Coeff>(row: &mut Vec<(u32, C)>) {
    row.retain(|(_, v)| !v.is_zero_c());
    if row.is_empty() {
        return;
    }
    let mut g = row[0].1.clone();
    for (_, v) in row.iter().skip(1) {
        if g.is_unit_c() {
            break;
        }
        g = g.gcd_c(v);
    }
    if g.is_neg_c() {
        g = g.neg_c();
    }
    let flip = row[0].1.is_neg_c();
    for (_, v) in row.iter_mut() {
        let mut nv = v.div_exact_c(&g);
        if flip {
            nv = nv.neg_c();
        }
        *v = nv;
    }
}

/// Sparse Gaussian elimination with a Markowitz-style pivot rule: shortest
/// active row, then the entry (unit preferred) in the lightest column.
fn eliminate<C: Coeff>(m: &SparseIntMat) -> Result<usize, Overflow> {
    let ncols = m.ncols;
    let mut rows: Vec<Option<Vec<(u32, C)>>> = m
        .rows
        .iter()
        .map(|r| {
            let mut row: Vec<(u32, C)> =
                r.iter().map(|&(c, v)| (c, C::from_i64(v))).collect();
            normalize_row(&mut row);
            Some(row)
        })
        .collect();
    let nrows = rows.len();

    let mut col_count = vec![0u32; ncols];
    // rows (possibly stale) that touch each column
    let mut col_rows: Vec<Vec<u32>> = vec![Vec::new(); ncols];
    for (i, row) in rows.iter().enumerate() {
        for (c, _) in row.as_ref().unwrap() {
            col_count[*c as usize] += 1;
            col_rows[*c as usize].push(i as u32);
        }
    }

    // buckets of candidate pivot rows by nnz (lazily maintained)
    let max_nnz = rows
        .iter()
        .map(|r| r.as_ref().unwrap().len())
        .max()
        .unwrap_or(0);
    let mut buckets: Vec<Vec<u32>> = vec![Vec::new(); max_nnz + 1];
    for (i, row) in rows.iter().enumerate() {
        let len = row.as_ref().unwrap().len();
        if len > 0 {
            buckets[len].push(i as u32);
        }
    }

    let mut rank = 0usize;
    let mut bucket_lo = 1usize;
    loop {
        // pop the next genuine shortest active row
        let mut pivot_row_id: Option<u32> = None;
        while bucket_lo < buckets.len() {
            match buckets[bucket_lo].pop() {
                Some(r) => {
                    if let Some(row) = &rows[r as usize] {
                        if row.len() == bucket_lo {
                            pivot_row_id = Some(r);
                            break;
                        }
                    }
                }
                None => bucket_lo += 1,
            }
        }
        let Some(pr) = pivot_row_id else { break };

        // choose pivot column within the row
        let prow = rows[pr as usize].take().unwrap();
        let mut best: Option<(bool, u32, u32)> = None; // (non_unit, col_count, col)
        for (c, v) in &prow {
            let key = (!v.is_unit_c(), col_count[*c as usize], *c);
            if best.map_or(true, |b| key < b) {
                best = Some(key);
            }
        }
        let (_, _, pcol) = best.unwrap();
        let pval = prow
            .iter()
            .find(|(c, _)| *c == pcol)
            .map(|(_, v)| v.clone())
            .unwrap();

        // eliminate pcol from every other active row
        let touching = std::mem::take(&mut col_rows[pcol as usize]);
        for r in touching {
            if r == pr || rows[r as usize].is_none() {
                continue;
            }
            let row = rows[r as usize].as_ref().unwrap();
            let Ok(idx) = row.binary_search_by_key(&pcol, |&(c, _)| c) else {
                continue; // stale
            };
            let rval = row[idx].1.clone();
            // new_row = pval·row − rval·prow
            let row = rows[r as usize].take().unwrap();
            let mut new_row: Vec<(u32, C)> = Vec::with_capacity(row.len() + prow.len());
            let (mut i, mut j) = (0usize, 0usize);
            let mut failed = None;
            while i < row.len() || j < prow.len() {
                let next = match (row.get(i), prow.get(j)) {
                    (Some(&(c1, ref v1)), Some(&(c2, ref v2))) => match c1.cmp(&c2) {
                        Ordering::Less => {
                            i += 1;
                            pval.mul_checked(v1).map(|v| (c1, v))
                        }
                        Ordering::Greater => {
                            j += 1;
                            rval.mul_checked(v2).map(|v| (c2, v.neg_c()))
                        }
                        Ordering::Equal => {
                            i += 1;
                            j += 1;
                            C::cross(&pval, v1, &rval, v2).map(|v| (c1, v))
                        }
                    },
                    (Some(&(c1, ref v1)), None) => {
                        i += 1;
                        pval.mul_checked(v1).map(|v| (c1, v))
                    }
                    (None, Some(&(c2, ref v2))) => {
                        j += 1;
                        rval.mul_checked(v2).map(|v| (c2, v.neg_c()))
                    }
                    (None, None) => unreachable!(),
                };
                match next {
                    Ok((c, v)) => {
                        if !v.is_zero_c() {
                            new_row.push((c, v));
                        }
                    }
                    Err(o) => {
                        failed = Some(o);
                        break;
                    }
                }
            }
            // restore old counts before deciding what to do
            for (c, _) in &row {
                col_count[*c as usize] -= 1;
            }
            if let Some(o) = failed {
                return Err(o);
            }
            normalize_row(&mut new_row);
            for (c, _) in &new_row {
                col_count[*c as usize] += 1;
                col_rows[*c as usize].push(r);
            }
            let len = new_row.len();
            if len > 0 {
                if len >= buckets.len() {
                    buckets.resize(len + 1, Vec::new());
                }
                buckets[len].push(r);
                if len < bucket_lo {
                    bucket_lo = len;
                }
                rows[r as usize] = Some(new_row);
            } else {
                rows[r as usize] = None;
            }
        }

        // retire the pivot row
        for (c, _) in &prow {
            col_count[*c as usize] -= 1;
        }
        rank += 1;
        debug_assert!(rank <= nrows.min(ncols));
    }
    Ok(rank)
}

// ---------------------------------------------------------------------------
// Smith normal form
// ---------------------------------------------------------------------------

/// Smith normal form invariant factors (non-negative, divisibility chain).
/// Intended for the small certification mode; the input is consumed densely.
pub fn smith_invariants(m: &SparseIntMat) -> Vec<BigInt> {
    let mut a = m.to_dense();
    let nrows = a.len();
    let ncols = m.ncols;
    let mut invariants = Vec::new();
    let mut t = 0usize;
    loop {
        if t >= nrows || t >= ncols {
            break;
        }
        // locate minimal non-zero |entry| in the trailing submatrix
        let mut pivot: Option<(usize, usize)> = None;
        for i in t..nrows {
            for j in t..ncols {
                if !a[i][j].is_zero()
                    && pivot.map_or(true, |(pi, pj)| a[i][j].abs() < a[pi][pj].abs())
                {
                    pivot = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        // clear row and column t; restart when remainders appear
        let mut clean = true;
        for i in t + 1..nrows {
            if a[i][t].is_zero() {
                continue;
            }
            let q = div_round(&a[i][t], &a[t][t]);
            if !q.is_zero() {
                for j in t..ncols {
                    let v = &a[i][j] - &q * &a[t][j];
                    a[i][j] = v;
                }
            }
            if !a[i][t].is_zero() {
                clean = false;
            }
        }
        for j in t + 1..ncols {
            if a[t][j].is_zero() {
                continue;
            }
            let q = div_round(&a[t][j], &a[t][t]);
            if !q.is_zero() {
                for i in t..nrows {
                    let v = &a[i][j] - &q * &a[i][t];
                    a[i][j] = v;
                }
            }
            if !a[t][j].is_zero() {
                clean = false;
            }
        }
        if !clean {
            continue;
        }
        // enforce divisibility of the trailing block by the pivot
        let piv = a[t][t].clone();
        let mut offender = None;
        'scan: for i in t + 1..nrows {
            for j in t + 1..ncols {
                if !(&a[i][j] % &piv).is_zero() {
                    offender = Some(i);
                    break 'scan;
                }
            }
        }
        if let Some(i) = offender {
            for j in t..ncols {
                let v = &a[t][j] + &a[i][j];
                a[t][j] = v;
            }
            continue;
        }
        invariants.push(piv.abs());
        t += 1;
    }
    invariants
}

/// Quotient rounded to nearest, which keeps remainders at most |b|/2.
fn div_round(a: &BigInt, b: &BigInt) -> BigInt {
    let (mut q, r) = a.div_rem(b);
    let two_r: BigInt = &r * 2;
    if two_r.abs() > b.abs() {
        if (r.is_negative()) == (b.is_negative()) {
            q += 1;
        } else {
            q -= 1;
        }
    }
    q
}
