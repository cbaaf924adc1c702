//! Sparse integer matrices and exact rank computation.
//!
//! Matrices are stored by columns of `(row, value)` pairs with strictly
//! increasing rows and no explicit zeros. Boundary matrices only contain
//! `±1`, so integer storage is exact for every field; values are reduced
//! into the chosen field at elimination time.
//!
//! Over the rationals the rank is computed by fraction-free column
//! elimination on integers: a column is combined with a pivot column as
//! `a·v − b·u` and then divided by the gcd of its entries. This runs on
//! checked `i64` first and restarts on `BigInt` if an entry ever overflows.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::field::{inv_mod, mul_mod, FieldChoice};

pub type SparseColumn<T> = Vec<(usize, T)>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    columns: Vec<SparseColumn<i64>>,
}

impl SparseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseMatrix {
            rows,
            cols,
            columns: vec![Vec::new(); cols],
        }
    }

    /// Builds a matrix from columns; entries are sorted and zeros dropped.
    pub fn from_columns(rows: usize, columns: Vec<SparseColumn<i64>>) -> Self {
        let columns: Vec<_> = columns
            .into_iter()
            .map(|mut c| {
                c.retain(|&(_, v)| v != 0);
                c.sort_unstable_by_key(|&(r, _)| r);
                debug_assert!(c.iter().all(|&(r, _)| r < rows));
                c
            })
            .collect();
        SparseMatrix {
            rows,
            cols: columns.len(),
            columns,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn column(&self, j: usize) -> &[(usize, i64)] {
        &self.columns[j]
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(Vec::len).sum()
    }

    pub fn get(&self, r: usize, c: usize) -> i64 {
        self.columns[c]
            .binary_search_by_key(&r, |&(row, _)| row)
            .map(|k| self.columns[c][k].1)
            .unwrap_or(0)
    }

    pub fn to_dense(&self) -> Vec<Vec<i64>> {
        let mut out = vec![vec![0; self.cols]; self.rows];
        for (c, col) in self.columns.iter().enumerate() {
            for &(r, v) in col {
                out[r][c] = v;
            }
        }
        out
    }

    /// `self · v` for a sparse integer vector indexed by columns.
    pub fn apply(&self, v: &[(usize, i64)]) -> Vec<(usize, i64)> {
        let mut acc = vec![0i64; self.rows];
        for &(c, x) in v {
            for &(r, m) in &self.columns[c] {
                acc[r] += m * x;
            }
        }
        acc.into_iter().enumerate().filter(|&(_, x)| x != 0).collect()
    }

    /// `self · other`.
    pub fn mul(&self, other: &SparseMatrix) -> Result<SparseMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                actual: other.rows,
            });
        }
        let columns = other.columns.iter().map(|c| self.apply(c)).collect();
        Ok(SparseMatrix {
            rows: self.rows,
            cols: other.cols,
            columns,
        })
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(Vec::is_empty)
    }

    /// Rank over `field`.
    pub fn rank(&self, field: FieldChoice) -> usize {
        match field {
            FieldChoice::ExactRational => rank_integer(self.rows, &self.columns),
            FieldChoice::PrimeField { p } => {
                let cols = self
                    .columns
                    .iter()
                    .map(|c| {
                        c.iter()
                            .map(|&(r, v)| (r, (v as i128).rem_euclid(p as i128) as u64))
                            .filter(|&(_, v)| v != 0)
                            .collect()
                    })
                    .collect();
                rank_mod_p(self.rows, cols, p)
            }
        }
    }

    /// "smat-v1": `rows cols`, then 1-based `r c value` triples in column order.
    pub fn to_smat_v1(&self) -> String {
        let mut out = format!("{} {}\n", self.rows, self.cols);
        for (c, col) in self.columns.iter().enumerate() {
            for &(r, v) in col {
                let _ = writeln!(out, "{} {} {}", r + 1, c + 1, v);
            }
        }
        out
    }
}

/// Rank over the rationals of an integer matrix given by columns.
pub(crate) fn rank_integer(rows: usize, columns: &[SparseColumn<i64>]) -> usize {
    match rank_checked_i64(rows, columns) {
        Some(r) => r,
        None => {
            let big = columns
                .iter()
                .map(|c| c.iter().map(|&(r, v)| (r, BigInt::from(v))).collect())
                .collect();
            rank_bigint(rows, big)
        }
    }
}

fn rank_checked_i64(rows: usize, columns: &[SparseColumn<i64>]) -> Option<usize> {
    let mut pivots: Vec<Option<SparseColumn<i64>>> = vec![None; rows];
    let mut rank = 0;
    for col in columns {
        let mut v = col.clone();
        while let Some(&(r, vr)) = v.first() {
            match &pivots[r] {
                Some(u) => {
                    let ur = u[0].1;
                    let g = ur.gcd(&vr);
                    v = combine_i64(ur / g, &v, vr / g, u)?;
                }
                None => {
                    normalize_i64(&mut v);
                    pivots[r] = Some(v);
                    rank += 1;
                    break;
                }
            }
        }
    }
    Some(rank)
}

/// `a·v − b·u`, or `None` on overflow. The leading entries cancel.
fn combine_i64(a: i64, v: &[(usize, i64)], b: i64, u: &[(usize, i64)]) -> Option<SparseColumn<i64>> {
    let mut out = Vec::with_capacity(v.len() + u.len());
    let (mut i, mut j) = (0, 0);
    while i < v.len() || j < u.len() {
        let (r, x) = match (v.get(i), u.get(j)) {
            (Some(&(rv, xv)), Some(&(ru, xu))) if rv == ru => {
                i += 1;
                j += 1;
                (rv, a.checked_mul(xv)?.checked_sub(b.checked_mul(xu)?)?)
            }
            (Some(&(rv, xv)), Some(&(ru, _))) if rv < ru => {
                i += 1;
                (rv, a.checked_mul(xv)?)
            }
            (Some(&(rv, xv)), None) => {
                i += 1;
                (rv, a.checked_mul(xv)?)
            }
            (_, Some(&(ru, xu))) => {
                j += 1;
                (ru, b.checked_mul(xu)?.checked_neg()?)
            }
            (None, None) => unreachable!(),
        };
        if x == i64::MIN {
            return None;
        }
        if x != 0 {
            out.push((r, x));
        }
    }
    let g = out.iter().fold(0i64, |g, &(_, x)| g.gcd(&x));
    if g > 1 {
        for e in &mut out {
            e.1 /= g;
        }
    }
    Some(out)
}

fn normalize_i64(v: &mut [(usize, i64)]) {
    let g = v.iter().fold(0i64, |g, &(_, x)| g.gcd(&x));
    let g = if v[0].1 < 0 { -g } else { g };
    if g != 1 {
        for e in v.iter_mut() {
            e.1 /= g;
        }
    }
}

fn rank_bigint(rows: usize, columns: Vec<SparseColumn<BigInt>>) -> usize {
    let mut pivots: Vec<Option<SparseColumn<BigInt>>> = vec![None; rows];
    let mut rank = 0;
    for mut v in columns {
        v.retain(|(_, x)| !x.is_zero());
        v.sort_by_key(|(r, _)| *r);
        while let Some((r, vr)) = v.first().map(|(r, x)| (*r, x.clone())) {
            match &pivots[r] {
                Some(u) => {
                    let ur = &u[0].1;
                    let g = ur.gcd(&vr);
                    v = combine_big(&(ur / &g), &v, &(vr / &g), u);
                }
                None => {
                    let g = v.iter().fold(BigInt::zero(), |g, (_, x)| g.gcd(x));
                    let g = if v[0].1.is_negative() { -g } else { g };
                    if !g.is_one() {
                        for e in &mut v {
                            e.1 = &e.1 / &g;
                        }
                    }
                    pivots[r] = Some(v);
                    rank += 1;
                    break;
                }
            }
        }
    }
    rank
}

fn combine_big(a: &BigInt, v: &[(usize, BigInt)], b: &BigInt, u: &[(usize, BigInt)]) -> SparseColumn<BigInt> {
    let mut out = Vec::with_capacity(v.len() + u.len());
    let (mut i, mut j) = (0, 0);
    while i < v.len() || j < u.len() {
        let take_v = j >= u.len() || (i < v.len() && v[i].0 <= u[j].0);
        let take_u = i >= v.len() || (j < u.len() && u[j].0 <= v[i].0);
        let (r, x) = if take_v && take_u {
            let e = (v[i].0, a * &v[i].1 - b * &u[j].1);
            i += 1;
            j += 1;
            e
        } else if take_v {
            let e = (v[i].0, a * &v[i].1);
            i += 1;
            e
        } else {
            let e = (u[j].0, -(b * &u[j].1));
            j += 1;
            e
        };
        if !x.is_zero() {
            out.push((r, x));
        }
    }
    let g = out.iter().fold(BigInt::zero(), |g, (_, x)| g.gcd(x));
    if g > BigInt::one() {
        for e in &mut out {
            e.1 = &e.1 / &g;
        }
    }
    out
}

/// Rank over GF(p); entries must already be reduced and non-zero.
pub(crate) fn rank_mod_p(rows: usize, columns: Vec<SparseColumn<u64>>, p: u64) -> usize {
    let mut pivots: Vec<Option<SparseColumn<u64>>> = vec![None; rows];
    let mut rank = 0;
    for mut v in columns {
        while let Some(&(r, vr)) = v.first() {
            match &pivots[r] {
                // Pivot columns are monic, so v ← v − vr·u clears row r.
                Some(u) => v = axpy_mod(&v, p - vr, u, p),
                None => {
                    let inv = inv_mod(vr, p);
                    for e in &mut v {
                        e.1 = mul_mod(e.1, inv, p);
                    }
                    pivots[r] = Some(v);
                    rank += 1;
                    break;
                }
            }
        }
    }
    rank
}

/// `v + c·u` mod p.
fn axpy_mod(v: &[(usize, u64)], c: u64, u: &[(usize, u64)], p: u64) -> SparseColumn<u64> {
    let mut out = Vec::with_capacity(v.len() + u.len());
    let (mut i, mut j) = (0, 0);
    while i < v.len() || j < u.len() {
        let (r, x) = match (v.get(i), u.get(j)) {
            (Some(&(rv, xv)), Some(&(ru, xu))) if rv == ru => {
                i += 1;
                j += 1;
                (rv, (xv + mul_mod(c, xu, p)) % p)
            }
            (Some(&(rv, xv)), Some(&(ru, _))) if rv < ru => {
                i += 1;
                (rv, xv)
            }
            (Some(&(rv, xv)), None) => {
                i += 1;
                (rv, xv)
            }
            (_, Some(&(ru, xu))) => {
                j += 1;
                (ru, mul_mod(c, xu, p))
            }
            (None, None) => unreachable!(),
        };
        if x != 0 {
            out.push((r, x));
        }
    }
    out
}

/// Dimension of the span of `vectors` over `field`.
pub fn kernel_rank_of(vectors: &[Vec<BigRational>], field: FieldChoice) -> Result<usize> {
    let Some(first) = vectors.first() else {
        return Ok(0);
    };
    let len = first.len();
    if let Some(bad) = vectors.iter().find(|v| v.len() != len) {
        return Err(Error::DimensionMismatch {
            expected: len,
            actual: bad.len(),
        });
    }
    match field {
        FieldChoice::ExactRational => {
            // Clearing denominators column by column does not change the span.
            let cols = vectors
                .iter()
                .map(|v| {
                    let lcm = v.iter().fold(BigInt::one(), |l, x| l.lcm(x.denom()));
                    v.iter()
                        .enumerate()
                        .filter(|(_, x)| !x.is_zero())
                        .map(|(r, x)| (r, x.numer() * (&lcm / x.denom())))
                        .collect()
                })
                .collect();
            Ok(rank_bigint(len, cols))
        }
        FieldChoice::PrimeField { p } => {
            let pb = BigInt::from(p);
            let reduce = |x: &BigInt| x.mod_floor(&pb).to_u64().expect("residue below p");
            let mut cols = Vec::with_capacity(vectors.len());
            for v in vectors {
                let mut col = Vec::new();
                for (r, x) in v.iter().enumerate() {
                    let den = reduce(x.denom());
                    if den == 0 {
                        return Err(Error::InvalidField(format!("denominator of {x} vanishes modulo {p}")));
                    }
                    let val = mul_mod(reduce(x.numer()), inv_mod(den, p), p);
                    if val != 0 {
                        col.push((r, val));
                    }
                }
                cols.push(col);
            }
            Ok(rank_mod_p(len, cols, p))
        }
    }
}
