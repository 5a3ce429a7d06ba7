//! LLL reduction of positive definite rational forms and Fincke–Pohst
//! enumeration of all integer vectors below a bound.

use num_traits::{One, Signed, Zero};

use crate::linalg::{bilinear, ceil_sqrt_rat, identity_int, rat, rat_int, to_rat_vec, Int, Rat};

fn round_rat(x: &Rat) -> Int {
    (x + rat(1, 2)).floor().to_integer()
}

fn basis_gram(g: &[Vec<Rat>], basis: &[Vec<Int>]) -> Vec<Vec<Rat>> {
    let rb: Vec<Vec<Rat>> = basis.iter().map(|b| to_rat_vec(b)).collect();
    rb.iter()
        .map(|x| rb.iter().map(|y| bilinear(g, x, y)).collect())
        .collect()
}

/// Gram–Schmidt coefficients `mu` and squared lengths `bstar` from a Gram matrix.
fn gram_schmidt(gram: &[Vec<Rat>]) -> (Vec<Vec<Rat>>, Vec<Rat>) {
    let n = gram.len();
    let mut mu = vec![vec![Rat::zero(); n]; n];
    let mut bstar = vec![Rat::zero(); n];
    for i in 0..n {
        for j in 0..i {
            let mut s = gram[i][j].clone();
            for l in 0..j {
                s -= &mu[j][l] * &mu[i][l] * &bstar[l];
            }
            mu[i][j] = s / &bstar[j];
        }
        let mut s = gram[i][i].clone();
        for l in 0..i {
            s -= &mu[i][l] * &mu[i][l] * &bstar[l];
        }
        bstar[i] = s;
    }
    (mu, bstar)
}

/// LLL-reduced basis (rows, in the original coordinates) for a positive
/// definite form, with parameter 3/4. The returned matrix is unimodular.
pub fn lll_reduce(g: &[Vec<Rat>]) -> Vec<Vec<Int>> {
    let n = g.len();
    let mut basis = identity_int(n);
    if n < 2 {
        return basis;
    }
    let delta = rat(3, 4);
    let mut k = 1;
    while k < n {
        for j in (0..k).rev() {
            let (mu, _) = gram_schmidt(&basis_gram(g, &basis));
            let r = round_rat(&mu[k][j]);
            if !r.is_zero() {
                let bj = basis[j].clone();
                for (x, y) in basis[k].iter_mut().zip(bj.iter()) {
                    *x -= &r * y;
                }
            }
        }
        let (mu, bstar) = gram_schmidt(&basis_gram(g, &basis));
        let lhs = &bstar[k];
        let rhs = (&delta - &mu[k][k - 1] * &mu[k][k - 1]) * &bstar[k - 1];
        if *lhs >= rhs {
            k += 1;
        } else {
            basis.swap(k, k - 1);
            k = (k - 1).max(1);
        }
    }
    basis
}

/// Every integer vector `x` (zero included) with `xᵀ g x <= bound`, for a
/// positive definite rational `g`. Search runs in an LLL-reduced basis;
/// results are returned in the original coordinates, sorted.
pub fn short_vectors(g: &[Vec<Rat>], bound: &Rat) -> Vec<Vec<Int>> {
    let n = g.len();
    if n == 0 || bound.is_negative() {
        return if n == 0 { vec![vec![]] } else { vec![] };
    }
    let basis = lll_reduce(g);
    let reduced = basis_gram(g, &basis);
    let mut out = Vec::new();
    enumerate_reduced(&reduced, bound, |y| {
        let x: Vec<Int> = (0..n)
            .map(|c| y.iter().zip(&basis).map(|(yi, b)| yi * &b[c]).sum())
            .collect();
        out.push(x);
    });
    out.sort();
    out
}

/// Cohen's square-completion of a positive definite form:
/// `Q(x) = Σ q_ii (x_i + Σ_{j>i} q_ij x_j)²`.
fn completed_square(g: &[Vec<Rat>]) -> Vec<Vec<Rat>> {
    let n = g.len();
    let mut q = g.to_vec();
    for i in 0..n {
        for j in i + 1..n {
            q[j][i] = q[i][j].clone();
            q[i][j] = &q[i][j] / &q[i][i];
        }
        for k in i + 1..n {
            for l in k..n {
                let d = &q[k][i] * &q[i][l];
                q[k][l] -= d;
            }
        }
    }
    q
}

fn enumerate_reduced(g: &[Vec<Rat>], bound: &Rat, mut emit: impl FnMut(&[Int])) {
    let n = g.len();
    let q = completed_square(g);
    let mut x = vec![Int::zero(); n];
    descend(&q, n, bound.clone(), &mut x, &mut emit);
}

fn descend(
    q: &[Vec<Rat>],
    level: usize,
    remaining: Rat,
    x: &mut [Int],
    emit: &mut impl FnMut(&[Int]),
) {
    if level == 0 {
        emit(x);
        return;
    }
    let i = level - 1;
    let n = q.len();
    let mut center = Rat::zero();
    for j in i + 1..n {
        center += &q[i][j] * rat_int(&x[j]);
    }
    // need q_ii (x_i + center)² <= remaining
    let t = &remaining / &q[i][i];
    let s = ceil_sqrt_rat(&t) + Int::one();
    let lo = (-&center).floor().to_integer() - &s;
    let hi = (-&center).ceil().to_integer() + &s;
    let mut xi = lo;
    while xi <= hi {
        let shifted = rat_int(&xi) + &center;
        let used = &q[i][i] * &shifted * &shifted;
        if used <= remaining {
            x[i] = xi.clone();
            descend(q, i, &remaining - used, x, emit);
        }
        xi += 1;
    }
    x[i] = Int::zero();
}
