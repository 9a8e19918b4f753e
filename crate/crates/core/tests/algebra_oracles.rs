use bingcheck_core::poly::{cyclotomic, divisors, resultant, IntPoly};
use bingcheck_core::{RatMatrix, Rational};
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn sylvester(f: &IntPoly, g: &IntPoly) -> RatMatrix {
    let (m, n) = (f.deg(), g.deg());
    let size = m + n;
    let mut s = RatMatrix::zeros(size, size);
    for r in 0..n {
        for k in 0..=m {
            s.set(r, r + k, f.coeff(m - k).into());
        }
    }
    for r in 0..m {
        for k in 0..=n {
            s.set(n + r, r + k, g.coeff(n - k).into());
        }
    }
    s
}

#[test]
fn resultant_is_sylvester_determinant() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..200 {
        let (df, dg) = (1 + rng.gen_range(0..5), 1 + rng.gen_range(0..5));
        let mut poly = |d: usize| {
            let mut c: Vec<i64> = (0..d).map(|_| rng.gen_range(-6..=6)).collect();
            c.push(*[-3i64, -1, 1, 2, 5].get(rng.gen_range(0..5)).unwrap());
            IntPoly::from_i64(&c)
        };
        let (f, g) = (poly(df), poly(dg));
        let det = sylvester(&f, &g).det().unwrap();
        assert_eq!(Rational::from(resultant(&f, &g)), det, "{f:?} {g:?}");
    }
}

#[test]
fn cyclotomic_products_give_t_n_minus_one() {
    for n in 1..=40u64 {
        let prod = divisors(n)
            .into_iter()
            .fold(IntPoly::one(), |acc, d| &acc * &cyclotomic(d));
        let mut want = vec![BigInt::from(0); n as usize + 1];
        want[0] = BigInt::from(-1);
        want[n as usize] = BigInt::from(1);
        assert_eq!(prod, IntPoly::new(want), "n = {n}");
    }
}
