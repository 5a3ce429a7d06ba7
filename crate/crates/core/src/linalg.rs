//! Exact integer and rational linear algebra used throughout the crate.
//!
//! Everything here is arbitrary precision. Matrices are row-major
//! `Vec<Vec<_>>`; vectors are plain `Vec<_>`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Int = BigInt;
pub type Rat = BigRational;

pub fn int(v: i64) -> Int {
    BigInt::from(v)
}

pub fn rat(n: i64, d: i64) -> Rat {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(v: &Int) -> Rat {
    BigRational::from_integer(v.clone())
}

pub fn to_rat_vec(v: &[Int]) -> Vec<Rat> {
    v.iter().map(rat_int).collect()
}

pub fn to_rat_matrix(m: &[Vec<Int>]) -> Vec<Vec<Rat>> {
    m.iter().map(|r| to_rat_vec(r)).collect()
}

pub fn ints(v: &[i64]) -> Vec<Int> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

pub fn int_matrix(m: &[&[i64]]) -> Vec<Vec<Int>> {
    m.iter().map(|r| ints(r)).collect()
}

pub fn dot_int(a: &[Int], b: &[Int]) -> Int {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn dot_rat(a: &[Rat], b: &[Rat]) -> Rat {
    a.iter().zip(b).fold(Rat::zero(), |acc, (x, y)| acc + x * y)
}

/// `xᵀ G y` over the rationals.
pub fn bilinear(gram: &[Vec<Rat>], x: &[Rat], y: &[Rat]) -> Rat {
    let gy = mat_vec(gram, y);
    dot_rat(x, &gy)
}

pub fn mat_vec(m: &[Vec<Rat>], x: &[Rat]) -> Vec<Rat> {
    m.iter().map(|row| dot_rat(row, x)).collect()
}

pub fn mat_vec_int(m: &[Vec<Int>], x: &[Int]) -> Vec<Int> {
    m.iter().map(|row| dot_int(row, x)).collect()
}

pub fn mat_mul_int(a: &[Vec<Int>], b: &[Vec<Int>]) -> Vec<Vec<Int>> {
    let cols = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| row.iter().zip(b).map(|(x, br)| x * &br[j]).sum())
                .collect()
        })
        .collect()
}

pub fn mat_mul_rat(a: &[Vec<Rat>], b: &[Vec<Rat>]) -> Vec<Vec<Rat>> {
    let cols = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    row.iter()
                        .zip(b)
                        .fold(Rat::zero(), |acc, (x, br)| acc + x * &br[j])
                })
                .collect()
        })
        .collect()
}

pub fn transpose<T: Clone>(m: &[Vec<T>]) -> Vec<Vec<T>> {
    let cols = m.first().map_or(0, |r| r.len());
    (0..cols)
        .map(|j| m.iter().map(|r| r[j].clone()).collect())
        .collect()
}

pub fn identity_int(n: usize) -> Vec<Vec<Int>> {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { Int::one() } else { Int::zero() })
                .collect()
        })
        .collect()
}

pub fn gcd_all(v: &[Int]) -> Int {
    v.iter().fold(Int::zero(), |g, x| g.gcd(x))
}

pub fn lcm_denominators(v: &[Rat]) -> Int {
    v.iter().fold(Int::one(), |l, x| l.lcm(x.denom()))
}

/// Divide by the gcd of the entries. The zero vector is returned unchanged.
pub fn primitive(v: &[Int]) -> Vec<Int> {
    let g = gcd_all(v);
    if g.is_zero() {
        return v.to_vec();
    }
    v.iter().map(|x| x / &g).collect()
}

/// Positive multiple of a rational vector that is a primitive integral vector.
pub fn primitive_of_rat(v: &[Rat]) -> Vec<Int> {
    let l = lcm_denominators(v);
    let scaled: Vec<Int> = v.iter().map(|x| (x * rat_int(&l)).to_integer()).collect();
    primitive(&scaled)
}

pub fn is_zero_vec<T: Zero>(v: &[T]) -> bool {
    v.iter().all(|x| x.is_zero())
}

pub fn scale_rat(v: &[Rat], s: &Rat) -> Vec<Rat> {
    v.iter().map(|x| x * s).collect()
}

pub fn add_rat(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub_rat(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// Floor of the square root of a nonnegative integer.
pub fn isqrt(n: &Int) -> Int {
    if n.is_negative() {
        return Int::zero();
    }
    n.sqrt()
}

/// Smallest integer `s` with `s*s >= t` for a nonnegative rational `t`.
pub fn ceil_sqrt_rat(t: &Rat) -> Int {
    if !t.is_positive() {
        return Int::zero();
    }
    let c = t.ceil().to_integer();
    let mut s = isqrt(&c);
    while rat_int(&(&s * &s)) < *t {
        s += 1;
    }
    s
}

/// Bareiss fraction-free determinant.
pub fn det_int(m: &[Vec<Int>]) -> Int {
    let n = m.len();
    if n == 0 {
        return Int::one();
    }
    let mut a = m.to_vec();
    let mut sign = Int::one();
    let mut prev = Int::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(swap) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                return Int::zero();
            };
            a.swap(k, swap);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// Row echelon form over the rationals; returns the pivot columns.
fn row_reduce(m: &mut [Vec<Rat>]) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                let pivot_row = m[r].clone();
                for (x, y) in m[i].iter_mut().zip(pivot_row.iter()) {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank_rat(m: &[Vec<Rat>]) -> usize {
    let mut a = m.to_vec();
    row_reduce(&mut a).len()
}

pub fn rank_int(m: &[Vec<Int>]) -> usize {
    rank_rat(&to_rat_matrix(m))
}

/// Basis of `{x : m·x = 0}` over the rationals, `cols` being the ambient dimension.
pub fn nullspace_rat(m: &[Vec<Rat>], cols: usize) -> Vec<Vec<Rat>> {
    let mut a = m.to_vec();
    let pivots = row_reduce(&mut a);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut x = vec![Rat::zero(); cols];
            x[f] = Rat::one();
            for (row, &pc) in pivots.iter().enumerate() {
                x[pc] = -a[row][f].clone();
            }
            x
        })
        .collect()
}

/// Solve a square nonsingular system `a·x = b`.
pub fn solve_rat(a: &[Vec<Rat>], b: &[Rat]) -> Option<Vec<Rat>> {
    let n = a.len();
    let mut aug: Vec<Vec<Rat>> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let pivots = row_reduce(&mut aug);
    if pivots.len() != n || pivots.iter().any(|&p| p >= n) {
        return None;
    }
    Some(aug.iter().map(|r| r[n].clone()).collect())
}

pub fn inverse_rat(a: &[Vec<Rat>]) -> Option<Vec<Vec<Rat>>> {
    let n = a.len();
    let mut aug: Vec<Vec<Rat>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Rat::one() } else { Rat::zero() }));
            r
        })
        .collect();
    let pivots = row_reduce(&mut aug);
    if pivots.len() != n || pivots.iter().any(|&p| p >= n) {
        return None;
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Row Hermite normal form of the lattice spanned by the rows of `m`.
/// Zero rows are dropped; pivots are positive and entries above a pivot are
/// reduced into `[0, pivot)`.
pub fn hnf_rows(m: &[Vec<Int>]) -> Vec<Vec<Int>> {
    let mut a: Vec<Vec<Int>> = m.to_vec();
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        loop {
            let nonzero: Vec<usize> = (r..rows).filter(|&i| !a[i][c].is_zero()).collect();
            if nonzero.is_empty() {
                break;
            }
            let p = *nonzero
                .iter()
                .min_by(|&&i, &&j| a[i][c].abs().cmp(&a[j][c].abs()))
                .unwrap();
            a.swap(r, p);
            let mut done = true;
            for i in r + 1..rows {
                if !a[i][c].is_zero() {
                    let q = a[i][c].div_floor(&a[r][c]);
                    let pivot_row = a[r].clone();
                    for (x, y) in a[i].iter_mut().zip(pivot_row.iter()) {
                        *x -= &q * y;
                    }
                    if !a[i][c].is_zero() {
                        done = false;
                    }
                }
            }
            if done {
                break;
            }
        }
        if r < rows && !a[r][c].is_zero() {
            if a[r][c].is_negative() {
                for x in a[r].iter_mut() {
                    *x = -x.clone();
                }
            }
            for i in 0..r {
                let q = a[i][c].div_floor(&a[r][c]);
                if !q.is_zero() {
                    let pivot_row = a[r].clone();
                    for (x, y) in a[i].iter_mut().zip(pivot_row.iter()) {
                        *x -= &q * y;
                    }
                }
            }
            r += 1;
        }
    }
    a.truncate(r);
    a
}

/// Saturated integer kernel `{x ∈ ℤ^cols : m·x = 0}` computed with unimodular
/// column operations, returned in Hermite normal form.
pub fn integer_kernel(m: &[Vec<Int>], cols: usize) -> Vec<Vec<Int>> {
    let mut a: Vec<Vec<Int>> = m.to_vec();
    // columns of `u` track the unimodular transform
    let mut u = identity_int(cols);
    let mut pc = 0;
    for row in 0..a.len() {
        if pc == cols {
            break;
        }
        loop {
            let nz: Vec<usize> = (pc..cols).filter(|&c| !a[row][c].is_zero()).collect();
            if nz.is_empty() {
                break;
            }
            let p = *nz
                .iter()
                .min_by(|&&i, &&j| a[row][i].abs().cmp(&a[row][j].abs()))
                .unwrap();
            swap_cols(&mut a, pc, p);
            swap_cols(&mut u, pc, p);
            let mut done = true;
            for c in pc + 1..cols {
                if !a[row][c].is_zero() {
                    let q = a[row][c].div_floor(&a[row][pc]);
                    sub_col_multiple(&mut a, c, pc, &q);
                    sub_col_multiple(&mut u, c, pc, &q);
                    if !a[row][c].is_zero() {
                        done = false;
                    }
                }
            }
            if done {
                pc += 1;
                break;
            }
        }
    }
    let basis: Vec<Vec<Int>> = (pc..cols)
        .map(|c| u.iter().map(|r| r[c].clone()).collect())
        .collect();
    hnf_rows(&basis)
}

fn swap_cols(m: &mut [Vec<Int>], i: usize, j: usize) {
    if i != j {
        for r in m.iter_mut() {
            r.swap(i, j);
        }
    }
}

fn sub_col_multiple(m: &mut [Vec<Int>], target: usize, src: usize, q: &Int) {
    for r in m.iter_mut() {
        let s = &r[src] * q;
        r[target] -= s;
    }
}

/// Elementary divisors (nonzero diagonal of the Smith normal form).
pub fn smith_invariants(m: &[Vec<Int>]) -> Vec<Int> {
    let mut a: Vec<Vec<Int>> = m.to_vec();
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut out = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // smallest nonzero entry in the trailing block
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !a[i][j].is_zero() && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs())
                {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap(t, pi);
        swap_cols(&mut a, t, pj);
        loop {
            let mut clean = true;
            for i in t + 1..rows {
                if !a[i][t].is_zero() {
                    let q = a[i][t].div_floor(&a[t][t]);
                    let pivot_row = a[t].clone();
                    for (x, y) in a[i].iter_mut().zip(pivot_row.iter()) {
                        *x -= &q * y;
                    }
                    if !a[i][t].is_zero() {
                        clean = false;
                        a.swap(t, i);
                    }
                }
            }
            for j in t + 1..cols {
                if !a[t][j].is_zero() {
                    let q = a[t][j].div_floor(&a[t][t]);
                    sub_col_multiple(&mut a, j, t, &q);
                    if !a[t][j].is_zero() {
                        clean = false;
                        swap_cols(&mut a, t, j);
                    }
                }
            }
            if clean {
                // divisibility condition on the remaining block
                let bad = (t + 1..rows)
                    .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                    .find(|&(i, j)| !(&a[i][j] % &a[t][t]).is_zero());
                match bad {
                    Some((i, _)) => {
                        let row_i = a[i].clone();
                        for (x, y) in a[t].iter_mut().zip(row_i.iter()) {
                            *x += y;
                        }
                    }
                    None => break,
                }
            }
        }
        out.push(a[t][t].abs());
        t += 1;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn determinant_small() {
        let m = int_matrix(&[&[2, -1, 0], &[-1, 2, -1], &[0, -1, 2]]);
        assert_eq!(det_int(&m), int(4));
        let u = int_matrix(&[&[0, 1], &[1, 0]]);
        assert_eq!(det_int(&u), int(-1));
    }

    #[test]
    fn kernel_is_saturated() {
        // 2x + 4y = 0 has kernel spanned by (2, -1), not (4, -2)
        let k = integer_kernel(&int_matrix(&[&[2, 4, 0]]), 3);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!((int(2) * &v[0] + int(4) * &v[1]).is_zero());
        }
        let inv = smith_invariants(&k);
        assert!(inv.iter().all(|d| d.is_one()));
    }

    #[test]
    fn smith_of_diagonalizable() {
        let m = int_matrix(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]);
        assert_eq!(smith_invariants(&m), ints(&[2, 6, 12]));
    }

    #[test]
    fn hnf_reduces() {
        let h = hnf_rows(&int_matrix(&[&[0, 1, 0], &[1, 0, 1], &[1, 1, 1]]));
        assert_eq!(h, int_matrix(&[&[1, 0, 1], &[0, 1, 0]]));
    }

    #[test]
    fn ceil_sqrt_is_tight() {
        assert_eq!(ceil_sqrt_rat(&rat(9, 1)), int(3));
        assert_eq!(ceil_sqrt_rat(&rat(10, 1)), int(4));
        assert_eq!(ceil_sqrt_rat(&rat(1, 4)), int(1));
    }
}
