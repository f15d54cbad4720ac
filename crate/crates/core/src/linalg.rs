//! Dense integer matrices, Smith normal form and ranks over prime fields.

use std::fmt::Debug;

use num_traits::{One, Zero};

use crate::scalar::{from_i64, ExactInt};

/// Row-major dense matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Clone + Zero> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![T::zero(); rows * cols] }
    }

    pub fn from_rows(rows: usize, cols: usize, entries: Vec<Vec<T>>) -> Self {
        assert_eq!(entries.len(), rows);
        let data: Vec<T> = entries
            .into_iter()
            .flat_map(|r| {
                assert_eq!(r.len(), cols);
                r
            })
            .collect();
        Matrix { rows, cols, data }
    }

    pub fn identity(n: usize) -> Self
    where
        T: One,
    {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, T::one());
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &T {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: T) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[T] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn map<U: Clone + Zero>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    /// Block matrix `[[a, b], [c, d]]`; shapes must agree.
    pub fn block(a: &Self, b: &Self, c: &Self, d: &Self) -> Self {
        assert_eq!(a.rows, b.rows);
        assert_eq!(c.rows, d.rows);
        assert_eq!(a.cols, c.cols);
        assert_eq!(b.cols, d.cols);
        let mut m = Self::zeros(a.rows + c.rows, a.cols + b.cols);
        for (blk, r0, c0) in [(a, 0, 0), (b, 0, a.cols), (c, a.rows, 0), (d, a.rows, a.cols)] {
            for r in 0..blk.rows {
                for col in 0..blk.cols {
                    m.set(r0 + r, c0 + col, blk.get(r, col).clone());
                }
            }
        }
        m
    }
}

impl<T> Matrix<T>
where
    T: Clone + Zero + std::ops::Add<Output = T> + std::ops::Mul<Output = T> + std::ops::Sub<Output = T>,
{
    /// Matrix product; panics on shape mismatch.
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "shape mismatch in product");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out.get(i, j).clone() + a.clone() * other.get(k, j).clone();
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a.clone() - b.clone()).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| T::zero() - a.clone()).collect() }
    }
}

impl<I: ExactInt> Matrix<I> {
    pub fn from_i64_rows(rows: usize, cols: usize, entries: &[Vec<i64>]) -> Self {
        Self::from_rows(rows, cols, entries.iter().map(|r| r.iter().map(|&x| from_i64(x)).collect()).collect())
    }
}

/// Nonzero invariant factors `d_1 | d_2 | ... | d_r` (positive), `r` the rank.
pub fn smith_invariants<I: ExactInt>(m: &Matrix<I>) -> Vec<I> {
    let mut a = m.clone();
    let (rows, cols) = (a.rows, a.cols);
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // smallest nonzero entry in the trailing block
        let mut pivot: Option<(usize, usize)> = None;
        for r in t..rows {
            for c in t..cols {
                let v = a.get(r, c);
                if !v.is_zero() && pivot.is_none_or(|(pr, pc)| v.abs() < a.get(pr, pc).abs()) {
                    pivot = Some((r, c));
                }
            }
        }
        let Some((pr, pc)) = pivot else { break };
        swap_rows(&mut a, t, pr);
        swap_cols(&mut a, t, pc);
        loop {
            let mut dirty = false;
            // clear column t below the pivot
            for r in t + 1..rows {
                if a.get(r, t).is_zero() {
                    continue;
                }
                let q = a.get(r, t).div_floor(a.get(t, t));
                add_row_multiple(&mut a, r, t, &q);
                if !a.get(r, t).is_zero() {
                    dirty = true;
                }
            }
            // clear row t right of the pivot
            for c in t + 1..cols {
                if a.get(t, c).is_zero() {
                    continue;
                }
                let q = a.get(t, c).div_floor(a.get(t, t));
                add_col_multiple(&mut a, c, t, &q);
                if !a.get(t, c).is_zero() {
                    dirty = true;
                }
            }
            if dirty {
                move_min_to_pivot(&mut a, t);
                continue;
            }
            // divisibility of the trailing block by the pivot
            let p = a.get(t, t).clone();
            let bad = (t + 1..rows).find(|&r| (t + 1..cols).any(|c| !a.get(r, c).is_multiple_of(&p)));
            match bad {
                Some(r) => {
                    let one = I::one();
                    add_row_multiple(&mut a, t, r, &(I::zero() - one));
                    move_min_to_pivot(&mut a, t);
                }
                None => break,
            }
        }
        diag.push(a.get(t, t).abs());
        t += 1;
    }
    diag
}

fn move_min_to_pivot<I: ExactInt>(a: &mut Matrix<I>, t: usize) {
    let mut best = (t, t);
    for r in t..a.rows {
        for c in t..a.cols {
            let v = a.get(r, c);
            if !v.is_zero() && (a.get(best.0, best.1).is_zero() || v.abs() < a.get(best.0, best.1).abs()) {
                best = (r, c);
            }
        }
    }
    swap_rows(a, t, best.0);
    swap_cols(a, t, best.1);
}

fn swap_rows<T>(a: &mut Matrix<T>, i: usize, j: usize) {
    if i == j {
        return;
    }
    for c in 0..a.cols {
        a.data.swap(i * a.cols + c, j * a.cols + c);
    }
}

fn swap_cols<T>(a: &mut Matrix<T>, i: usize, j: usize) {
    if i == j {
        return;
    }
    for r in 0..a.rows {
        a.data.swap(r * a.cols + i, r * a.cols + j);
    }
}

/// row_dst -= q * row_src
fn add_row_multiple<I: ExactInt>(a: &mut Matrix<I>, dst: usize, src: usize, q: &I) {
    for c in 0..a.cols {
        let s = a.get(src, c).clone();
        if s.is_zero() {
            continue;
        }
        let v = a.get(dst, c).clone() - q.clone() * s;
        a.set(dst, c, v);
    }
}

/// col_dst -= q * col_src
fn add_col_multiple<I: ExactInt>(a: &mut Matrix<I>, dst: usize, src: usize, q: &I) {
    for r in 0..a.rows {
        let s = a.get(r, src).clone();
        if s.is_zero() {
            continue;
        }
        let v = a.get(r, dst).clone() - q.clone() * s;
        a.set(r, dst, v);
    }
}

/// Rank over the integers (equivalently over the rationals).
pub fn rank<I: ExactInt>(m: &Matrix<I>) -> usize {
    smith_invariants(m).len()
}

/// Rank of the reduction modulo a prime `p < 2^32`.
pub fn rank_mod_p<I: ExactInt>(m: &Matrix<I>, p: u64) -> usize {
    assert!((2..1 << 32).contains(&p), "prime out of supported range");
    let pi: I = from_i64(p as i64);
    let mut a: Vec<Vec<u64>> = (0..m.rows)
        .map(|r| {
            m.row(r)
                .iter()
                .map(|x| x.mod_floor(&pi).to_u64().expect("reduced entry fits u64"))
                .collect()
        })
        .collect();
    let mut rank = 0;
    for c in 0..m.cols {
        let Some(pr) = (rank..m.rows).find(|&r| a[r][c] != 0) else { continue };
        a.swap(rank, pr);
        let inv = pow_mod(a[rank][c], p - 2, p);
        for x in a[rank].iter_mut() {
            *x = *x * inv % p;
        }
        for r in 0..m.rows {
            if r != rank && a[r][c] != 0 {
                let f = a[r][c];
                for k in 0..m.cols {
                    a[r][k] = (a[r][k] + (p - f) * a[rank][k]) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1u64;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    r
}
