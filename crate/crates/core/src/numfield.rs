//! Arithmetic in simple algebraic extensions `Q[x]/(m)` and exact Hermitian signatures
//! at roots of unity.

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::exactmat::LaurentMatrix;
use crate::poly::{
    chebyshev_c, cyclotomic, gcd_u64, real_cyclotomic, real_roots, IntPoly, LaurentPoly, QPoly,
    RealRoot,
};
use crate::rational::{rat, Rational};

/// The field `Q[x]/(m)` for an irreducible `m`.
#[derive(Clone, Debug)]
pub struct NumberField {
    modulus: QPoly,
    x_inv: QPoly,
}

impl NumberField {
    pub fn new(m: &IntPoly) -> Self {
        let modulus = QPoly::from_int(m);
        let x = QPoly::monomial(rat(1), 1);
        let mut field = NumberField {
            modulus,
            x_inv: QPoly::zero(),
        };
        field.x_inv = field
            .inv(&field.reduce(&x))
            .expect("x is a unit modulo an irreducible m ≠ x");
        field
    }

    pub fn degree(&self) -> usize {
        self.modulus.deg()
    }

    pub fn reduce(&self, p: &QPoly) -> QPoly {
        p.rem(&self.modulus)
    }

    pub fn mul(&self, a: &QPoly, b: &QPoly) -> QPoly {
        self.reduce(&(a * b))
    }

    pub fn inv(&self, a: &QPoly) -> Option<QPoly> {
        if a.is_zero() {
            return None;
        }
        let (g, s, _) = a.ext_gcd(&self.modulus);
        (g.deg() == 0).then(|| self.reduce(&s.scale(&g.leading().recip())))
    }

    /// Image of a Laurent polynomial under `t ↦ x`.
    pub fn embed(&self, f: &LaurentPoly) -> QPoly {
        let (q, lo) = f.to_qpoly_shifted();
        let mut acc = self.reduce(&q);
        let step = if lo >= 0 {
            self.reduce(&QPoly::monomial(rat(1), 1))
        } else {
            self.x_inv.clone()
        };
        for _ in 0..lo.unsigned_abs() {
            acc = self.mul(&acc, &step);
        }
        acc
    }
}

/// Rank of `b(t)` evaluated at a root of the irreducible `lambda`; by Galois invariance this
/// is the same at every root.
pub fn rank_at_root(b: &LaurentMatrix, lambda: &IntPoly) -> usize {
    let field = NumberField::new(lambda);
    let (rows, cols) = (b.rows(), b.cols());
    let mut m: Vec<Vec<QPoly>> = (0..rows)
        .map(|i| (0..cols).map(|j| field.embed(b.get(i, j))).collect())
        .collect();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(p, r);
        let inv = field.inv(&m[r][c]).expect("nonzero element of a field");
        for i in r + 1..rows {
            if m[i][c].is_zero() {
                continue;
            }
            let f = field.mul(&m[i][c], &inv);
            for j in c..cols {
                let v = &m[i][j] - &field.mul(&f, &m[r][j]);
                m[i][j] = v;
            }
        }
        r += 1;
    }
    r
}

/// `2cos(2πa/q)` as an isolated root of the real cyclotomic polynomial; `None` for `q ≤ 2`,
/// where the value is rational.
pub fn two_cos(a: u64, q: u64) -> Option<RealRoot> {
    if q <= 2 {
        return None;
    }
    let b = (a % q).min(q - a % q);
    // roots ascend in u as b descends over reduced residues below q/2
    let mut bs: Vec<u64> = (1..)
        .take_while(|&k| 2 * k < q)
        .filter(|&k| gcd_u64(k, q) == 1)
        .collect();
    bs.reverse();
    let idx = bs.iter().position(|&k| k == b)?;
    real_roots(&real_cyclotomic(q), &rat(-2), &rat(2))
        .into_iter()
        .nth(idx)
}

/// The cyclotomic field of order `q` with a chosen embedding `x ↦ e^{2πi a/q}`.
struct CyclotomicEmbedding {
    q: u64,
    field: NumberField,
    /// `2cos(2πa/q)` as an algebraic number; `None` when it is rational (`q ≤ 2`).
    c: Option<RealRoot>,
}

impl CyclotomicEmbedding {
    fn new(a: u64, q: u64) -> Self {
        let field = NumberField::new(&cyclotomic(q));
        let c = two_cos(a, q);
        CyclotomicEmbedding { q, field, c }
    }

    fn embed(&self, f: &LaurentPoly) -> QPoly {
        let q = self.q as i64;
        let mut v = vec![Rational::zero(); self.q as usize];
        for (e, c) in f.terms() {
            v[e.rem_euclid(q) as usize] += c;
        }
        self.field.reduce(&QPoly::new(v))
    }

    fn conj(&self, e: &QPoly) -> QPoly {
        let q = self.q as usize;
        let mut v = vec![Rational::zero(); q];
        for (k, c) in e.coeffs().iter().enumerate() {
            v[(q - k) % q] += c;
        }
        self.field.reduce(&QPoly::new(v))
    }

    /// Sign of a real field element under the embedding.
    fn sign(&mut self, e: &QPoly) -> i32 {
        if e.is_zero() {
            return 0;
        }
        // e = c_0 + Σ c_k (x^k + x^-k)/2 since e equals its conjugate
        let mut h = QPoly::constant(e.coeff(0));
        for (k, ck) in e.coeffs().iter().enumerate().skip(1) {
            if !ck.is_zero() {
                h = &h + &QPoly::from_int(&chebyshev_c(k)).scale(&(ck / rat(2)));
            }
        }
        match &mut self.c {
            None => {
                let c = if self.q == 1 { rat(2) } else { rat(-2) };
                let v = h.eval(&c);
                if v.is_zero() {
                    0
                } else if v.is_positive() {
                    1
                } else {
                    -1
                }
            }
            Some(root) => {
                if h.is_zero() {
                    return 0;
                }
                let lc = h.leading();
                let g = h.to_int_primitive();
                let s = root.sign_of(&g);
                if lc.is_negative() == g.leading().is_negative() {
                    s
                } else {
                    -s
                }
            }
        }
    }
}

/// Exact signature and nullity of the Hermitian matrix `b(ω)`, `ω = e^{2πi a/q}`.
/// `b` must satisfy `b(t)ᵀ = b(t⁻¹)`.
pub fn hermitian_signature(b: &LaurentMatrix, a: u64, q: u64) -> Result<(i64, usize)> {
    if !b.is_square() {
        return Err(Error::NotSquare {
            rows: b.rows(),
            cols: b.cols(),
        });
    }
    if q == 0 || a >= q || gcd_u64(a, q) != 1 {
        return Err(Error::AngleOutOfRange(format!("{a}/{q}")));
    }
    let n = b.rows();
    let mut emb = CyclotomicEmbedding::new(a, q);
    let mut h: Vec<Vec<QPoly>> = (0..n)
        .map(|i| (0..n).map(|j| emb.embed(b.get(i, j))).collect())
        .collect();
    for i in 0..n {
        for j in i..n {
            if h[i][j] != emb.conj(&h[j][i]) {
                return Err(Error::NotHermitian);
            }
        }
    }
    let mut active: Vec<usize> = (0..n).collect();
    let mut signature = 0i64;
    loop {
        if let Some(pos) = active.iter().position(|&k| !h[k][k].is_zero()) {
            let k = active.remove(pos);
            let s = emb.sign(&h[k][k]);
            debug_assert_ne!(s, 0);
            signature += s as i64;
            let inv = emb.field.inv(&h[k][k]).expect("nonzero pivot");
            for &i in &active {
                if h[i][k].is_zero() {
                    continue;
                }
                let f = emb.field.mul(&h[i][k], &inv);
                for &j in &active {
                    if h[k][j].is_zero() {
                        continue;
                    }
                    let v = &h[i][j] - &emb.field.mul(&f, &h[k][j]);
                    h[i][j] = v;
                }
            }
            continue;
        }
        let off = active.iter().find_map(|&i| {
            active
                .iter()
                .find(|&&j| j != i && !h[i][j].is_zero())
                .map(|&j| (i, j))
        });
        let Some((i, j)) = off else {
            return Ok((signature, active.len()));
        };
        // column i += c·column j with c = conj(h_ij); the new diagonal is 2|h_ij|²
        let c = emb.conj(&h[i][j]);
        let cc = h[i][j].clone();
        for &k in &active {
            if k == i {
                continue;
            }
            let v = &h[k][i] + &emb.field.mul(&h[k][j], &c);
            h[k][i] = v;
        }
        let hii = emb
            .field
            .mul(&emb.field.mul(&cc, &c), &QPoly::constant(rat(2)));
        for &k in &active {
            if k != i {
                h[i][k] = emb.conj(&h[k][i]);
            }
        }
        h[i][i] = hii;
    }
}
