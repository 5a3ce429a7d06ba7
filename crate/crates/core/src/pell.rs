//! Fundamental solutions of Pell equations and the resulting automorphs of
//! indefinite binary quadratic forms.

use num_traits::{One, Zero};

use crate::linalg::{isqrt, Int};

/// Fundamental solution `(x, y)` of `x² − N y² = 1`, `N > 0` not a square,
/// from the continued fraction expansion of `√N`.
pub fn pell_fundamental(n: &Int) -> Option<(Int, Int)> {
    if n <= &Int::zero() {
        return None;
    }
    let a0 = isqrt(n);
    if &a0 * &a0 == *n {
        return None;
    }
    let (mut m, mut d, mut a) = (Int::zero(), Int::one(), a0.clone());
    let (mut p_prev, mut p) = (Int::one(), a0.clone());
    let (mut q_prev, mut q) = (Int::zero(), Int::one());
    loop {
        if &p * &p - n * &q * &q == Int::one() {
            return Some((p, q));
        }
        m = &d * &a - &m;
        d = (n - &m * &m) / &d;
        a = (&a0 + &m) / &d;
        let p_next = &a * &p + &p_prev;
        let q_next = &a * &q + &q_prev;
        p_prev = std::mem::replace(&mut p, p_next);
        q_prev = std::mem::replace(&mut q, q_next);
    }
}

/// A proper automorph of infinite order of the binary form with Gram
/// `[[a, b], [b, c]]` when `b² − ac` is a positive non-square.
///
/// With `(x, y)` the fundamental Pell solution for `N = b² − ac`, the matrix
/// `x·I + y·J`, `J = [[−b, −c], [a, b]]`, preserves the form and has
/// positive eigenvalues.
pub fn binary_automorph(gram: &[[Int; 2]; 2]) -> Option<[[Int; 2]; 2]> {
    let (a, b, c) = (&gram[0][0], &gram[0][1], &gram[1][1]);
    let disc = b * b - a * c;
    let (x, y) = pell_fundamental(&disc)?;
    Some([[&x - b * &y, -(c * &y)], [a * &y, &x + b * &y]])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::int;

    #[test]
    fn classic_pell_values() {
        assert_eq!(pell_fundamental(&int(2)), Some((int(3), int(2))));
        assert_eq!(pell_fundamental(&int(7)), Some((int(8), int(3))));
        assert_eq!(
            pell_fundamental(&int(61)),
            Some((int(1766319049), int(226153980)))
        );
        assert_eq!(pell_fundamental(&int(9)), None);
    }

    #[test]
    fn automorph_preserves_form() {
        let g = [[int(2), int(1)], [int(1), int(-2)]];
        let m = binary_automorph(&g).unwrap();
        // mᵀ g m == g
        for i in 0..2 {
            for j in 0..2 {
                let mut s = int(0);
                for k in 0..2 {
                    for l in 0..2 {
                        s += &m[k][i] * &g[k][l] * &m[l][j];
                    }
                }
                assert_eq!(s, g[i][j]);
            }
        }
        assert_eq!(&m[0][0] * &m[1][1] - &m[0][1] * &m[1][0], int(1));
    }
}
