//! Exact linear algebra over `F_q`: elimination, rank, kernels, canonical
//! subspaces, Grassmannian enumeration and rank decomposition.

use std::cmp::Ordering;
use std::fmt;

use itertools::Itertools;
use num_traits::ToPrimitive;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::bounds::gaussian_binomial;
use crate::error::{Error, Result};
use crate::ff::{expand_to_matrix, Field, FieldElement, Fq};

/// Grassmannian enumeration refuses to produce more subspaces than this.
pub const GRASSMANNIAN_GUARD: u64 = 1 << 24;

/// Dense `rows × cols` matrix over `F_q`, row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct MatrixFq {
    fq: Fq,
    rows: usize,
    cols: usize,
    data: Vec<u8>,
}

impl fmt::Debug for MatrixFq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{:?}", self.fq, self.to_rows())
    }
}

impl MatrixFq {
    pub fn zeros(fq: Fq, rows: usize, cols: usize) -> Self {
        MatrixFq {
            fq,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(fq: Fq, n: usize) -> Self {
        let mut m = Self::zeros(fq, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(fq: Fq, rows: &[Vec<u8>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        Self::from_rows_with_cols(fq, rows, cols)
    }

    /// Like [`from_rows`](Self::from_rows) but keeps the column count when
    /// `rows` is empty.
    pub fn from_rows_with_cols(fq: Fq, rows: &[Vec<u8>], cols: usize) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::DimensionMismatch(format!(
                    "ragged matrix: row of length {} in a {}-column matrix",
                    r.len(),
                    cols
                )));
            }
            if let Some(&c) = r.iter().find(|&&c| c >= fq.q()) {
                return Err(Error::InvalidElement(format!(
                    "{c} is not an element of {fq:?}"
                )));
            }
            data.extend_from_slice(r);
        }
        Ok(MatrixFq {
            fq,
            rows: rows.len(),
            cols,
            data,
        })
    }

    pub fn random<R: Rng + ?Sized>(fq: Fq, rows: usize, cols: usize, rng: &mut R) -> Self {
        let data = (0..rows * cols).map(|_| rng.gen_range(0..fq.q())).collect();
        MatrixFq {
            fq,
            rows,
            cols,
            data,
        }
    }

    pub fn fq(&self) -> Fq {
        self.fq
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u8 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u8) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[u8] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<u8>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&c| c == 0)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.fq, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    fn check_same_shape(&self, other: &Self) -> Result<()> {
        if self.rows != other.rows || self.cols != other.cols || self.fq != other.fq {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} over {:?} vs {}x{} over {:?}",
                self.rows, self.cols, self.fq, other.rows, other.cols, other.fq
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other)?;
        let fq = self.fq;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| fq.add(a, b))
            .collect();
        Ok(MatrixFq {
            data,
            ..self.clone()
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other)?;
        let fq = self.fq;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| fq.sub(a, b))
            .collect();
        Ok(MatrixFq {
            data,
            ..self.clone()
        })
    }

    pub fn scale(&self, c: u8) -> Self {
        let fq = self.fq;
        MatrixFq {
            data: self.data.iter().map(|&a| fq.mul(c, a)).collect(),
            ..self.clone()
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows || self.fq != other.fq {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let fq = self.fq;
        let mut out = Self::zeros(fq, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let v = fq.add(out.get(i, j), fq.mul(a, other.get(k, j)));
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    /// `[self | other]`.
    pub fn hstack(&self, other: &Self) -> Result<Self> {
        if self.rows != other.rows || self.fq != other.fq {
            return Err(Error::DimensionMismatch("hstack row count mismatch".into()));
        }
        let mut out = Self::zeros(self.fq, self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j));
            }
            for j in 0..other.cols {
                out.set(i, self.cols + j, other.get(i, j));
            }
        }
        Ok(out)
    }

    /// Sub-matrix made of the given columns, in the given order.
    pub fn select_columns(&self, cols: &[usize]) -> Self {
        let mut out = Self::zeros(self.fq, self.rows, cols.len());
        for i in 0..self.rows {
            for (jj, &j) in cols.iter().enumerate() {
                out.set(i, jj, self.get(i, j));
            }
        }
        out
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (MatrixFq, Vec<usize>) {
        let fq = self.fq;
        let mut a = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..a.cols {
            if r == a.rows {
                break;
            }
            let Some(p) = (r..a.rows).find(|&i| a.get(i, c) != 0) else {
                continue;
            };
            a.swap_rows(r, p);
            let inv = fq.inv(a.get(r, c)).unwrap();
            if inv != 1 {
                for j in c..a.cols {
                    let v = fq.mul(inv, a.get(r, j));
                    a.set(r, j, v);
                }
            }
            for i in 0..a.rows {
                if i == r {
                    continue;
                }
                let f = a.get(i, c);
                if f == 0 {
                    continue;
                }
                for j in c..a.cols {
                    let v = fq.sub(a.get(i, j), fq.mul(f, a.get(r, j)));
                    a.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (a, pivots)
    }

    pub fn rank(&self) -> usize {
        if self.fq.q() == 2 && self.cols <= 64 {
            let mut words: Vec<u64> = (0..self.rows)
                .map(|i| {
                    self.row(i)
                        .iter()
                        .enumerate()
                        .fold(0u64, |acc, (j, &b)| acc | ((b as u64) << j))
                })
                .collect();
            return rank_f2(&mut words);
        }
        self.rref().1.len()
    }

    /// Basis of the right kernel `{v : A v = 0}` as rows of the result.
    pub fn kernel(&self) -> MatrixFq {
        let fq = self.fq;
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut out = Self::zeros(fq, free.len(), self.cols);
        for (k, &f) in free.iter().enumerate() {
            out.set(k, f, 1);
            for (i, &p) in pivots.iter().enumerate() {
                out.set(k, p, fq.neg(r.get(i, f)));
            }
        }
        out
    }

    pub fn rowspace(&self) -> Subspace {
        Subspace::from_generators(self)
    }

    pub fn colspace(&self) -> Subspace {
        Subspace::from_generators(&self.transpose())
    }
}

/// Rank of a set of `F_2` vectors packed into machine words. Destroys the input.
pub fn rank_f2(words: &mut [u64]) -> usize {
    let mut rank = 0;
    for i in 0..words.len() {
        let pivot = words[i];
        if pivot == 0 {
            continue;
        }
        rank += 1;
        let low = pivot & pivot.wrapping_neg();
        for w in &mut words[i + 1..] {
            if *w & low != 0 {
                *w ^= pivot;
            }
        }
    }
    rank
}

/// Rank over `F_q` of a vector over `F_{q^m}` (rank of its matrix expansion).
pub fn rank_of_vector(field: &Field, x: &[FieldElement]) -> usize {
    if field.q() == 2 {
        // the packed element is already its column bit vector
        let mut words: Vec<u64> = x.iter().map(|e| e.index()).collect();
        return rank_f2(&mut words);
    }
    expand_to_matrix(field, x).rank()
}

/// Rank distance `rk(x − y)`.
pub fn rank_distance(field: &Field, x: &[FieldElement], y: &[FieldElement]) -> usize {
    debug_assert_eq!(x.len(), y.len());
    if field.q() == 2 {
        let mut words: Vec<u64> = x
            .iter()
            .zip(y)
            .map(|(a, b)| a.index() ^ b.index())
            .collect();
        return rank_f2(&mut words);
    }
    let diff: Vec<FieldElement> = x.iter().zip(y).map(|(&a, &b)| field.sub(a, b)).collect();
    rank_of_vector(field, &diff)
}

/// Subspace of `F_q^n` held by its RREF basis; equality is basis equality.
#[derive(Clone, PartialEq, Eq)]
pub struct Subspace {
    basis: MatrixFq,
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Subspace(n={}, {:?})",
            self.ambient(),
            self.basis.to_rows()
        )
    }
}

impl PartialOrd for Subspace {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Subspace {
    fn cmp(&self, other: &Self) -> Ordering {
        (
            self.basis.fq.q(),
            self.ambient(),
            self.dim(),
            &self.basis.data,
        )
            .cmp(&(
                other.basis.fq.q(),
                other.ambient(),
                other.dim(),
                &other.basis.data,
            ))
    }
}

impl std::hash::Hash for Subspace {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.basis.cols.hash(state);
        self.basis.data.hash(state);
    }
}

/// JSON form of a subspace: `{ambient, basis}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubspaceJson {
    pub ambient: usize,
    pub basis: Vec<Vec<u8>>,
}

impl Subspace {
    /// Row space of `generators`.
    pub fn from_generators(generators: &MatrixFq) -> Self {
        let (r, pivots) = generators.rref();
        let rows: Vec<Vec<u8>> = (0..pivots.len()).map(|i| r.row(i).to_vec()).collect();
        Subspace {
            basis: MatrixFq::from_rows_with_cols(generators.fq, &rows, generators.cols).unwrap(),
        }
    }

    pub fn zero(fq: Fq, ambient: usize) -> Self {
        Subspace {
            basis: MatrixFq::zeros(fq, 0, ambient),
        }
    }

    pub fn full(fq: Fq, ambient: usize) -> Self {
        Subspace {
            basis: MatrixFq::identity(fq, ambient),
        }
    }

    pub fn ambient(&self) -> usize {
        self.basis.cols
    }

    pub fn dim(&self) -> usize {
        self.basis.rows
    }

    pub fn fq(&self) -> Fq {
        self.basis.fq
    }

    /// The RREF basis, one row per basis vector.
    pub fn basis(&self) -> &MatrixFq {
        &self.basis
    }

    pub fn contains(&self, v: &[u8]) -> bool {
        if v.len() != self.ambient() {
            return false;
        }
        let mut rows = self.basis.to_rows();
        rows.push(v.to_vec());
        MatrixFq::from_rows_with_cols(self.fq(), &rows, self.ambient())
            .map(|m| m.rank() == self.dim())
            .unwrap_or(false)
    }

    fn check_ambient(&self, other: &Self) -> Result<()> {
        if self.ambient() != other.ambient() || self.fq() != other.fq() {
            return Err(Error::DimensionMismatch(format!(
                "subspaces of F_{}^{} and F_{}^{}",
                self.fq().q(),
                self.ambient(),
                other.fq().q(),
                other.ambient()
            )));
        }
        Ok(())
    }

    /// `U + V`.
    pub fn sum(&self, other: &Self) -> Result<Subspace> {
        self.check_ambient(other)?;
        let mut rows = self.basis.to_rows();
        rows.extend(other.basis.to_rows());
        let m = MatrixFq::from_rows_with_cols(self.fq(), &rows, self.ambient())?;
        Ok(Subspace::from_generators(&m))
    }

    pub fn to_json(&self) -> SubspaceJson {
        SubspaceJson {
            ambient: self.ambient(),
            basis: self.basis.to_rows(),
        }
    }

    pub fn from_json(fq: Fq, json: &SubspaceJson) -> Result<Self> {
        let m = MatrixFq::from_rows_with_cols(fq, &json.basis, json.ambient)?;
        let s = Subspace::from_generators(&m);
        if s.dim() != json.basis.len() {
            return Err(Error::Precondition(
                "basis rows are linearly dependent".into(),
            ));
        }
        Ok(s)
    }
}

/// `d_S(U, V) = 2 dim(U + V) − dim U − dim V`.
pub fn subspace_distance(u: &Subspace, v: &Subspace) -> Result<usize> {
    let s = u.sum(v)?;
    Ok(2 * s.dim() - u.dim() - v.dim())
}

/// All `r`-dimensional subspaces of `F_q^n`, ordered by pivot pattern
/// (lexicographic) and then by free entries (first free entry most
/// significant).
pub fn grassmannian_enumerate(n: usize, r: usize, fq: Fq) -> Result<Vec<Subspace>> {
    if r > n {
        return Err(Error::Precondition(format!(
            "dimension {r} exceeds ambient {n}"
        )));
    }
    let count = gaussian_binomial(n as u64, r as u64, fq.q() as u64)?;
    match count.to_u64() {
        Some(c) if c <= GRASSMANNIAN_GUARD => {}
        _ => {
            return Err(Error::GuardExceeded {
                what: "Grassmannian",
                needed: count.to_string(),
                limit: GRASSMANNIAN_GUARD,
            })
        }
    }
    let q = fq.q();
    let mut out = Vec::with_capacity(count.to_usize().unwrap());
    for pivots in (0..n).combinations(r) {
        let free: Vec<(usize, usize)> = pivots
            .iter()
            .enumerate()
            .flat_map(|(i, &p)| {
                let pivots = &pivots;
                (p + 1..n)
                    .filter(move |j| !pivots.contains(j))
                    .map(move |j| (i, j))
            })
            .collect();
        let mut template = MatrixFq::zeros(fq, r, n);
        for (i, &p) in pivots.iter().enumerate() {
            template.set(i, p, 1);
        }
        let mut digits = vec![0u8; free.len()];
        loop {
            let mut m = template.clone();
            for (&(i, j), &d) in free.iter().zip(&digits) {
                m.set(i, j, d);
            }
            out.push(Subspace { basis: m });
            // increment with the last free entry least significant
            let mut k = free.len();
            loop {
                if k == 0 {
                    break;
                }
                k -= 1;
                digits[k] += 1;
                if digits[k] == q {
                    digits[k] = 0;
                } else {
                    break;
                }
            }
            if digits.iter().all(|&d| d == 0) {
                break;
            }
        }
    }
    Ok(out)
}

/// Rank decomposition `X = Gᵀ H` with `G: r × m` and `H: r × n` full rank.
///
/// `H` is the nonzero part of `rref(X)` and `Gᵀ` is `X` restricted to the
/// pivot columns. For `X = 0` both factors have zero rows.
pub fn rank_decompose(x: &MatrixFq) -> (MatrixFq, MatrixFq) {
    let (r, pivots) = x.rref();
    let rows: Vec<Vec<u8>> = (0..pivots.len()).map(|i| r.row(i).to_vec()).collect();
    let h = MatrixFq::from_rows_with_cols(x.fq, &rows, x.cols).unwrap();
    let g = x.select_columns(&pivots).transpose();
    (g, h)
}

/// Product `Gᵀ H` with the zero-rank convention (empty factors give zero).
pub fn recompose(g: &MatrixFq, h: &MatrixFq) -> Result<MatrixFq> {
    g.transpose().mul(h)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Sandwich {
    pub lower: usize,
    pub middle: usize,
    pub upper: usize,
}

impl Sandwich {
    pub fn holds(&self) -> bool {
        self.lower <= self.middle && self.middle <= self.upper
    }
}

/// For equal-rank `X, Y`: `(½d_S(row) + ½d_S(col), rk(X − Y), min{½d_S(row), ½d_S(col)} + rk X)`.
pub fn distance_sandwich_check(x: &MatrixFq, y: &MatrixFq) -> Result<Sandwich> {
    x.check_same_shape(y)?;
    let r = x.rank();
    if r != y.rank() {
        return Err(Error::Precondition(format!(
            "ranks differ: {} vs {}",
            r,
            y.rank()
        )));
    }
    // equal dimensions make both distances even
    let d_row = subspace_distance(&x.rowspace(), &y.rowspace())? / 2;
    let d_col = subspace_distance(&x.colspace(), &y.colspace())? / 2;
    Ok(Sandwich {
        lower: d_row + d_col,
        middle: x.sub(y)?.rank(),
        upper: d_row.min(d_col) + r,
    })
}
