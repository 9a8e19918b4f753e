//! Dense exact matrices over the rationals and over Laurent polynomials.

use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::poly::LaurentPoly;
use crate::rational::{format_rational, parse_rational, Rational};

/// Commutative ring with exact division, as needed by fraction-free elimination.
pub trait Scalar: Clone + PartialEq + fmt::Debug + fmt::Display {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn plus(&self, other: &Self) -> Self;
    fn minus(&self, other: &Self) -> Self;
    fn times(&self, other: &Self) -> Self;
    fn negated(&self) -> Self;
    /// `self / other` when the quotient exists in the ring.
    fn divide_exact(&self, other: &Self) -> Option<Self>;
    /// Compact textual form without internal whitespace.
    fn to_token(&self) -> String;
}

impl Scalar for Rational {
    fn zero() -> Self {
        <Rational as Zero>::zero()
    }
    fn one() -> Self {
        <Rational as One>::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn negated(&self) -> Self {
        -self
    }
    fn divide_exact(&self, other: &Self) -> Option<Self> {
        (!Zero::is_zero(other)).then(|| self / other)
    }
    fn to_token(&self) -> String {
        format_rational(self)
    }
}

impl Scalar for LaurentPoly {
    fn zero() -> Self {
        LaurentPoly::zero()
    }
    fn one() -> Self {
        LaurentPoly::one()
    }
    fn is_zero(&self) -> bool {
        LaurentPoly::is_zero(self)
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn negated(&self) -> Self {
        -self
    }
    fn divide_exact(&self, other: &Self) -> Option<Self> {
        self.exact_div(other)
    }
    fn to_token(&self) -> String {
        self.to_string().replace(' ', "")
    }
}

/// Row-major dense matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

pub type RatMatrix = Matrix<Rational>;
pub type LaurentMatrix = Matrix<LaurentPoly>;

impl<T: Scalar> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, T::one());
        }
        m
    }

    pub fn empty() -> Self {
        Self::zeros(0, 0)
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Ok(Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn entries(&self) -> impl Iterator<Item = &T> {
        self.data.iter()
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn try_map<U: Scalar>(&self, f: impl Fn(&T) -> Result<U>) -> Result<Matrix<U>> {
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect::<Result<_>>()?,
        })
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    fn same_shape(&self, other: &Self) -> Result<()> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_shape(other)?;
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(other.data.iter())
                .map(|(a, b)| a.plus(b))
                .collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.same_shape(other)?;
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(other.data.iter())
                .map(|(a, b)| a.minus(b))
                .collect(),
        })
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out.get(i, j).plus(&a.times(other.get(k, j)));
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &T) -> Self {
        self.map(|a| a.times(c))
    }

    pub fn neg(&self) -> Self {
        self.map(|a| a.negated())
    }

    /// Block-diagonal sum `self ⊕ other`.
    pub fn block_sum(&self, other: &Self) -> Self {
        let mut out = Self::zeros(self.rows + other.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j).clone());
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                out.set(self.rows + i, self.cols + j, other.get(i, j).clone());
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let mut acc = Self::identity(self.rows);
        for _ in 0..e {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// Determinant by fraction-free (Bareiss) elimination; the empty matrix has determinant 1.
    pub fn det(&self) -> Result<T> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        let mut m = self.clone();
        let mut sign_flip = false;
        let mut prev = T::one();
        for k in 0..n {
            let Some(piv) = (k..n).find(|&r| !m.get(r, k).is_zero()) else {
                return Ok(T::zero());
            };
            if piv != k {
                for j in 0..n {
                    m.data.swap(piv * n + j, k * n + j);
                }
                sign_flip = !sign_flip;
            }
            let pkk = m.get(k, k).clone();
            for i in k + 1..n {
                let mik = m.get(i, k).clone();
                for j in k + 1..n {
                    let num = m.get(i, j).times(&pkk).minus(&mik.times(m.get(k, j)));
                    let v = num
                        .divide_exact(&prev)
                        .ok_or_else(|| Error::Invariant("Bareiss division was not exact".into()))?;
                    m.set(i, j, v);
                }
                m.set(i, k, T::zero());
            }
            prev = pkk;
        }
        let d = if n == 0 {
            T::one()
        } else {
            m.get(n - 1, n - 1).clone()
        };
        Ok(if sign_flip { d.negated() } else { d })
    }

    /// Text form: a header line `rows cols` then one whitespace-separated line per row.
    pub fn to_text(&self) -> String {
        let mut s = if self.is_square() {
            format!("{}\n", self.rows)
        } else {
            format!("{} {}\n", self.rows, self.cols)
        };
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_token()).collect();
            s.push_str(&row.join(" "));
            s.push('\n');
        }
        s
    }
}

impl RatMatrix {
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| {
                    r.iter()
                        .map(|&x| Rational::from_integer(x.into()))
                        .collect()
                })
                .collect(),
        )
        .expect("rectangular literal")
    }

    pub fn is_integral(&self) -> bool {
        self.data.iter().all(|x| x.denom().is_one())
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && *self == self.transpose()
    }

    /// Exact inverse by Gauss–Jordan elimination.
    pub fn inverse(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Self::identity(n);
        for k in 0..n {
            let piv = (k..n)
                .find(|&r| !Zero::is_zero(a.get(r, k)))
                .ok_or(Error::Singular)?;
            if piv != k {
                for j in 0..n {
                    a.data.swap(piv * n + j, k * n + j);
                    inv.data.swap(piv * n + j, k * n + j);
                }
            }
            let p = a.get(k, k).recip();
            for j in 0..n {
                let v = a.get(k, j) * &p;
                a.set(k, j, v);
                let w = inv.get(k, j) * &p;
                inv.set(k, j, w);
            }
            for i in 0..n {
                if i == k {
                    continue;
                }
                let f = a.get(i, k).clone();
                if Zero::is_zero(&f) {
                    continue;
                }
                for j in 0..n {
                    let v = a.get(i, j) - &f * a.get(k, j);
                    a.set(i, j, v);
                    let w = inv.get(i, j) - &f * inv.get(k, j);
                    inv.set(i, j, w);
                }
            }
        }
        Ok(inv)
    }

    pub fn rank(&self) -> usize {
        let mut a = self.clone();
        let (rows, cols) = (self.rows, self.cols);
        let mut r = 0;
        for c in 0..cols {
            let Some(piv) = (r..rows).find(|&i| !Zero::is_zero(a.get(i, c))) else {
                continue;
            };
            for j in 0..cols {
                a.data.swap(piv * cols + j, r * cols + j);
            }
            let p = a.get(r, c).clone();
            for i in r + 1..rows {
                let f = a.get(i, c) / &p;
                if Zero::is_zero(&f) {
                    continue;
                }
                for j in c..cols {
                    let v = a.get(i, j) - &f * a.get(r, j);
                    a.set(i, j, v);
                }
            }
            r += 1;
        }
        r
    }

    /// Signature and nullity of a symmetric rational matrix by symmetric elimination:
    /// largest diagonal pivot first, hyperbolic 2×2 blocks when the diagonal vanishes.
    pub fn sym_signature(&self) -> Result<(i64, usize)> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        if !self.is_symmetric() {
            return Err(Error::NotSymmetric);
        }
        let mut s = self.clone();
        let mut active: Vec<usize> = (0..self.rows).collect();
        let mut signature = 0i64;
        loop {
            let diag = active
                .iter()
                .copied()
                .filter(|&i| !Zero::is_zero(s.get(i, i)))
                .max_by(|&a, &b| s.get(a, a).abs().cmp(&s.get(b, b).abs()).then(b.cmp(&a)));
            if let Some(k) = diag {
                let d = s.get(k, k).clone();
                signature += if d.is_positive() { 1 } else { -1 };
                active.retain(|&i| i != k);
                for &i in &active {
                    let f = s.get(i, k) / &d;
                    if Zero::is_zero(&f) {
                        continue;
                    }
                    for &j in &active {
                        let v = s.get(i, j) - &f * s.get(k, j);
                        s.set(i, j, v);
                    }
                }
                continue;
            }
            let off = active.iter().enumerate().find_map(|(ai, &i)| {
                active[ai + 1..]
                    .iter()
                    .find(|&&j| !Zero::is_zero(s.get(i, j)))
                    .map(|&j| (i, j))
            });
            let Some((i, j)) = off else {
                return Ok((signature, active.len()));
            };
            // the block [[0, b], [b, 0]] has one positive and one negative eigenvalue
            let b = s.get(i, j).clone();
            active.retain(|&x| x != i && x != j);
            for &r in &active {
                for &c in &active {
                    let corr = (s.get(r, i) * s.get(j, c) + s.get(r, j) * s.get(i, c)) / &b;
                    let v = s.get(r, c) - corr;
                    s.set(r, c, v);
                }
            }
        }
    }
}

impl LaurentMatrix {
    /// Entrywise `t ↦ t^n`.
    pub fn substitute_power(&self, n: i64) -> Result<Self> {
        self.try_map(|p| p.substitute_power(n))
    }

    /// Transpose composed with `t ↦ t⁻¹`.
    pub fn hermitian_conjugate(&self) -> Self {
        self.transpose().map(|p| p.reciprocal())
    }

    pub fn is_hermitian(&self) -> bool {
        self.is_square() && *self == self.hermitian_conjugate()
    }

    pub fn from_rational(m: &RatMatrix) -> Self {
        m.map(|c| LaurentPoly::constant(c.clone()))
    }
}

impl<T: Scalar> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_token()).collect();
            write!(f, "[{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Parses the matrix text format with entries read by `entry`. Lines whose first
/// non-blank character is `#` and blank lines are skipped. `line_offset` shifts reported
/// line numbers.
pub fn parse_matrix_with<T: Scalar>(
    text: &str,
    entry: impl Fn(&str) -> Option<T>,
) -> Result<Matrix<T>> {
    let mut lines = text
        .lines()
        .enumerate()
        .filter(|(_, l)| {
            let t = l.trim();
            !t.is_empty() && !t.starts_with('#')
        })
        .map(|(i, l)| (i + 1, l));
    let (hline, header) = lines.next().ok_or(Error::Parse {
        line: 1,
        column: 1,
        message: "missing dimension header".into(),
    })?;
    let dims: Vec<(usize, &str)> = tokens(header);
    let parse_dim = |(col, tok): (usize, &str)| -> Result<usize> {
        tok.parse::<usize>().map_err(|_| Error::Parse {
            line: hline,
            column: col,
            message: format!("malformed dimension `{tok}`"),
        })
    };
    let (rows, cols) = match dims.len() {
        1 => {
            let n = parse_dim(dims[0])?;
            (n, n)
        }
        2 => (parse_dim(dims[0])?, parse_dim(dims[1])?),
        _ => {
            return Err(Error::Parse {
                line: hline,
                column: 1,
                message: "header must be `n` or `rows cols`".into(),
            })
        }
    };
    let mut data = Vec::with_capacity(rows * cols);
    let mut last_line = hline;
    for r in 0..rows {
        let (lno, line) = lines.next().ok_or(Error::Parse {
            line: last_line + 1,
            column: 1,
            message: format!("expected {rows} rows, found {r}"),
        })?;
        last_line = lno;
        let toks = tokens(line);
        if toks.len() != cols {
            return Err(Error::Parse {
                line: lno,
                column: toks.get(cols).map_or(line.len() + 1, |t| t.0),
                message: format!("ragged row: expected {cols} entries, found {}", toks.len()),
            });
        }
        for (col, tok) in toks {
            let v = entry(tok).ok_or_else(|| Error::Parse {
                line: lno,
                column: col,
                message: format!("malformed number `{tok}`"),
            })?;
            data.push(v);
        }
    }
    if let Some((lno, _)) = lines.next() {
        return Err(Error::Parse {
            line: lno,
            column: 1,
            message: "unexpected trailing row".into(),
        });
    }
    Ok(Matrix { rows, cols, data })
}

pub fn parse_rat_matrix(text: &str) -> Result<RatMatrix> {
    parse_matrix_with(text, parse_rational)
}

pub fn parse_laurent_matrix(text: &str) -> Result<LaurentMatrix> {
    parse_matrix_with(text, |tok| tok.parse::<LaurentPoly>().ok())
}

/// Whitespace-separated tokens with 1-based column positions.
fn tokens(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in line.char_indices() {
        if ch.is_whitespace() {
            if let Some(s) = start.take() {
                out.push((s + 1, &line[s..i]));
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        out.push((s + 1, &line[s..]));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, rat};
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};

    fn lp(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    /// Cofactor (Laplace) expansion along the first row.
    fn det_cofactor<T: Scalar>(m: &Matrix<T>) -> T {
        let n = m.rows();
        if n == 0 {
            return T::one();
        }
        let mut acc = T::zero();
        for j in 0..n {
            let minor = Matrix::from_fn(n - 1, n - 1, |r, c| {
                m.get(r + 1, if c < j { c } else { c + 1 }).clone()
            });
            let term = m.get(0, j).times(&det_cofactor(&minor));
            acc = if j % 2 == 0 {
                acc.plus(&term)
            } else {
                acc.minus(&term)
            };
        }
        acc
    }

    #[test]
    fn determinant_examples() {
        assert_eq!(
            RatMatrix::from_i64(&[&[0, 1], &[-1, 0]]).det().unwrap(),
            rat(1)
        );
        assert_eq!(RatMatrix::empty().det().unwrap(), rat(1));
        let m = LaurentMatrix::from_rows(vec![
            vec![lp("1 - t"), lp("1")],
            vec![lp("-t"), lp("t - 1")],
        ])
        .unwrap();
        assert_eq!(m.det().unwrap(), lp("-t^2 + 3t - 1"));
        assert!(matches!(
            RatMatrix::zeros(2, 3).det(),
            Err(Error::NotSquare { .. })
        ));
    }

    #[test]
    fn inverse_examples() {
        let j = RatMatrix::from_i64(&[&[0, 1], &[-1, 0]]);
        assert_eq!(
            j.inverse().unwrap(),
            RatMatrix::from_i64(&[&[0, -1], &[1, 0]])
        );
        assert_eq!(
            RatMatrix::identity(3).inverse().unwrap(),
            RatMatrix::identity(3)
        );
        assert_eq!(
            RatMatrix::from_i64(&[&[1, 2], &[2, 4]]).inverse(),
            Err(Error::Singular)
        );
        // Γ for the trefoil
        let a = RatMatrix::from_i64(&[&[-1, 1], &[0, -1]]);
        let g = a
            .sub(&a.transpose())
            .unwrap()
            .inverse()
            .unwrap()
            .mul(&a)
            .unwrap();
        assert_eq!(g, RatMatrix::from_i64(&[&[0, 1], &[-1, 1]]));
    }

    #[test]
    fn block_sum_examples() {
        let m = RatMatrix::from_i64(&[&[1, 2], &[3, 4]]);
        assert_eq!(m.block_sum(&RatMatrix::empty()), m);
        let ab = RatMatrix::from_i64(&[&[5]]).block_sum(&RatMatrix::from_i64(&[&[7]]));
        assert_eq!(ab, RatMatrix::from_i64(&[&[5, 0], &[0, 7]]));
    }

    #[test]
    fn substitution_examples() {
        let m = LaurentMatrix::from_rows(vec![vec![lp("t"), lp("1")], vec![lp("0"), lp("t^-1")]])
            .unwrap();
        let expect =
            LaurentMatrix::from_rows(vec![vec![lp("t^2"), lp("1")], vec![lp("0"), lp("t^-2")]])
                .unwrap();
        assert_eq!(m.substitute_power(2).unwrap(), expect);
        assert_eq!(
            LaurentMatrix::identity(3).substitute_power(-4).unwrap(),
            LaurentMatrix::identity(3)
        );
    }

    #[test]
    fn signature_examples() {
        let s = RatMatrix::from_i64(&[&[-2, 1], &[1, -2]]);
        assert_eq!(s.sym_signature().unwrap(), (-2, 0));
        let h = RatMatrix::from_i64(&[&[0, 1], &[1, 0]]);
        assert_eq!(h.sym_signature().unwrap(), (0, 0));
        assert_eq!(RatMatrix::zeros(3, 3).sym_signature().unwrap(), (0, 3));
        assert_eq!(RatMatrix::empty().sym_signature().unwrap(), (0, 0));
        assert_eq!(
            RatMatrix::from_i64(&[&[0, 1], &[0, 0]]).sym_signature(),
            Err(Error::NotSymmetric)
        );
        // hyperbolic block with a remaining definite part
        let m = RatMatrix::from_i64(&[&[0, 1, 1], &[1, 0, 1], &[1, 1, 0]]);
        assert_eq!(m.sym_signature().unwrap(), (-1, 0));
    }

    #[test]
    fn text_format() {
        let m = RatMatrix::from_rows(vec![vec![frac(1, 2), rat(1)], vec![rat(0), frac(-1, 2)]])
            .unwrap();
        let back = parse_rat_matrix(&m.to_text()).unwrap();
        assert_eq!(back, m);
        let lm = LaurentMatrix::from_rows(vec![vec![lp("t^-2 - 3 + t^2")]]).unwrap();
        assert_eq!(parse_laurent_matrix(&lm.to_text()).unwrap(), lm);
        assert!(matches!(
            parse_rat_matrix("2\n1 2\n3\n"),
            Err(Error::Parse { line: 3, .. })
        ));
        assert!(matches!(
            parse_rat_matrix("1\nx\n"),
            Err(Error::Parse {
                line: 2,
                column: 1,
                ..
            })
        ));
        assert_eq!(parse_rat_matrix("2 1\n4\n5\n").unwrap().cols(), 1);
    }

    #[test]
    fn bareiss_matches_cofactor_on_small_random() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for n in 0..=4usize {
            for _ in 0..40 {
                let m = RatMatrix::from_fn(n, n, |_, _| {
                    frac(rng.gen_range(-5..=5), rng.gen_range(1..=4))
                });
                assert_eq!(m.det().unwrap(), det_cofactor(&m));
            }
        }
    }

    #[test]
    fn laurent_bareiss_matches_cofactor() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for n in 1..=3usize {
            for _ in 0..15 {
                let m = LaurentMatrix::from_fn(n, n, |_, _| {
                    LaurentPoly::from_terms(&[
                        (rng.gen_range(-2..=2), rng.gen_range(-3..=3)),
                        (rng.gen_range(-2..=2), rng.gen_range(-3..=3)),
                    ])
                });
                assert_eq!(m.det().unwrap(), det_cofactor(&m));
                // det of t ↦ t^k substitution equals substituted det
                let k = rng.gen_range(2..=3);
                assert_eq!(
                    m.substitute_power(k).unwrap().det().unwrap(),
                    m.det().unwrap().substitute_power(k).unwrap()
                );
            }
        }
    }

    fn small_matrix(n: usize) -> impl Strategy<Value = RatMatrix> {
        prop::collection::vec(-4i64..5, n * n)
            .prop_map(move |v| RatMatrix::from_fn(n, n, |i, j| rat(v[i * n + j])))
    }

    fn unimodular(n: usize) -> impl Strategy<Value = RatMatrix> {
        prop::collection::vec((0..n, 0..n, -2i64..3), 0..8).prop_map(move |ops| {
            let mut p = RatMatrix::identity(n);
            for (i, j, c) in ops {
                if i != j {
                    let mut e = RatMatrix::identity(n);
                    e.set(i, j, rat(c));
                    p = p.mul(&e).unwrap();
                }
            }
            p
        })
    }

    proptest! {
        #[test]
        fn inverse_is_an_involution(m in small_matrix(3)) {
            prop_assume!(!Zero::is_zero(&m.det().unwrap()));
            let inv = m.inverse().unwrap();
            prop_assert_eq!(m.mul(&inv).unwrap(), RatMatrix::identity(3));
            prop_assert_eq!(inv.inverse().unwrap(), m);
        }

        #[test]
        fn signature_congruence_invariant(m in small_matrix(4), p in unimodular(4)) {
            let s = m.add(&m.transpose()).unwrap();
            let c = p.transpose().mul(&s).unwrap().mul(&p).unwrap();
            prop_assert_eq!(s.sym_signature().unwrap(), c.sym_signature().unwrap());
        }

        #[test]
        fn signature_additive(a in small_matrix(2), b in small_matrix(3)) {
            let sa = a.add(&a.transpose()).unwrap();
            let sb = b.add(&b.transpose()).unwrap();
            let (x, nx) = sa.sym_signature().unwrap();
            let (y, ny) = sb.sym_signature().unwrap();
            prop_assert_eq!(sa.block_sum(&sb).sym_signature().unwrap(), (x + y, nx + ny));
        }

        #[test]
        fn det_of_block_sum(a in small_matrix(2), b in small_matrix(2)) {
            prop_assert_eq!(
                a.block_sum(&b).det().unwrap(),
                a.det().unwrap() * b.det().unwrap()
            );
        }

        #[test]
        fn signature_bounds(m in small_matrix(4)) {
            let s = m.add(&m.transpose()).unwrap();
            let (sig, null) = s.sym_signature().unwrap();
            let rank = s.rank();
            prop_assert_eq!(rank + null, 4);
            prop_assert!(sig.unsigned_abs() as usize <= rank);
            prop_assert_eq!((sig.unsigned_abs() as usize) % 2, rank % 2);
        }
    }
}
