use proptest::prelude::*;

use crate::exactmat::RatMatrix;
use crate::rational::rat;
use crate::seifert::SeifertMatrix;

/// Admissible integral Seifert matrices `Pᵀ(S + E)P` with `S` symmetric, `E` a block sum of
/// `[[0, 1], [0, 0]]` and `P` unimodular, so that `det(A - Aᵀ) = 1`.
pub fn admissible(max_genus: usize) -> impl Strategy<Value = SeifertMatrix> {
    (0..=max_genus).prop_flat_map(|g| {
        let n = 2 * g;
        (
            prop::collection::vec(-2i64..=2, n * n),
            prop::collection::vec((0..n.max(1), 0..n.max(1), -1i64..=1), 0..6),
        )
            .prop_map(move |(s, ops)| {
                let mut a0 = RatMatrix::from_fn(n, n, |i, j| {
                    let (x, y) = (i.min(j), i.max(j));
                    rat(s[x * n + y])
                });
                for k in 0..n / 2 {
                    let v = a0.get(2 * k, 2 * k + 1) + rat(1);
                    a0.set(2 * k, 2 * k + 1, v);
                }
                let mut p = RatMatrix::identity(n);
                for (i, j, c) in ops {
                    if i != j && i < n && j < n {
                        let mut e = RatMatrix::identity(n);
                        e.set(i, j, rat(c));
                        p = p.mul(&e).unwrap();
                    }
                }
                let a = p.transpose().mul(&a0).unwrap().mul(&p).unwrap();
                SeifertMatrix::new(a).expect("admissible by construction")
            })
    })
}
