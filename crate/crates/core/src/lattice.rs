//! Integral lattices given by Gram matrices.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Signed, Zero};

use crate::error::{MorikitError, Result};
use crate::linalg::{
    det_int, gcd_all, hnf_rows, integer_kernel, mat_vec_int, primitive, to_rat_matrix, Int, Rat,
};

/// An integral lattice: a symmetric integer Gram matrix in a fixed basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Lattice {
    gram: Vec<Vec<Int>>,
}

/// Coordinates of a lattice element in the lattice basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticeVector(pub Vec<Int>);

impl LatticeVector {
    pub fn new(coords: Vec<Int>) -> Self {
        LatticeVector(coords)
    }

    pub fn from_i64(coords: &[i64]) -> Self {
        LatticeVector(coords.iter().map(|&c| Int::from(c)).collect())
    }

    pub fn zero(rank: usize) -> Self {
        LatticeVector(vec![Int::zero(); rank])
    }

    pub fn coords(&self) -> &[Int] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        LatticeVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        LatticeVector(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, k: &Int) -> Self {
        LatticeVector(self.0.iter().map(|a| a * k).collect())
    }

    pub fn neg(&self) -> Self {
        LatticeVector(self.0.iter().map(|a| -a).collect())
    }
}

impl fmt::Display for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StandardLattice {
    /// The hyperbolic plane.
    U,
    /// The negative definite E8 lattice.
    E8Minus,
    /// `U^4 ⊕ (-E8)^2`, the even unimodular lattice of signature (4,20).
    Mukai,
}

impl FromStr for StandardLattice {
    type Err = MorikitError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "U" | "u" => Ok(StandardLattice::U),
            "E8_minus" | "e8_minus" | "-E8" => Ok(StandardLattice::E8Minus),
            "mukai" | "Mukai" => Ok(StandardLattice::Mukai),
            other => Err(MorikitError::UnknownLattice(other.to_string())),
        }
    }
}

// Bourbaki labelling: chain 1-3-4-5-6-7-8 with node 2 attached to node 4.
const E8_EDGES: [(usize, usize); 7] = [(0, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (1, 3)];

/// Result of diagonalising a rational symmetric form by congruence.
#[derive(Debug, Clone)]
pub struct Diagonalization {
    /// Basis vectors (in the original coordinates) of the nondegenerate part.
    pub basis: Vec<Vec<Rat>>,
    /// `form(basis[i], basis[i])`, all nonzero.
    pub diagonal: Vec<Rat>,
    /// Basis of the radical.
    pub radical: Vec<Vec<Rat>>,
}

/// Symmetric Gaussian reduction of a rational form.
pub fn diagonalize(gram: &[Vec<Rat>]) -> Diagonalization {
    let n = gram.len();
    let mut basis: Vec<Vec<Rat>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { Rat::one() } else { Rat::zero() })
                .collect()
        })
        .collect();
    let form = |x: &[Rat], y: &[Rat]| crate::linalg::bilinear(gram, x, y);
    let mut done_basis = Vec::new();
    let mut diagonal = Vec::new();
    let mut rest: Vec<Vec<Rat>> = std::mem::take(&mut basis);
    loop {
        if rest.is_empty() {
            break;
        }
        let pivot = (0..rest.len()).find(|&i| !form(&rest[i], &rest[i]).is_zero());
        let pivot = match pivot {
            Some(p) => p,
            None => {
                let pair = (0..rest.len())
                    .flat_map(|i| (i + 1..rest.len()).map(move |j| (i, j)))
                    .find(|&(i, j)| !form(&rest[i], &rest[j]).is_zero());
                match pair {
                    Some((i, j)) => {
                        let bj = rest[j].clone();
                        for (x, y) in rest[i].iter_mut().zip(bj.iter()) {
                            *x += y;
                        }
                        i
                    }
                    None => break,
                }
            }
        };
        let p = rest.remove(pivot);
        let pp = form(&p, &p);
        for b in rest.iter_mut() {
            let c = form(b, &p) / &pp;
            if !c.is_zero() {
                for (x, y) in b.iter_mut().zip(p.iter()) {
                    *x -= &c * y;
                }
            }
        }
        done_basis.push(p);
        diagonal.push(pp);
    }
    Diagonalization {
        basis: done_basis,
        diagonal,
        radical: rest,
    }
}

/// `(positive, negative)` counts of a rational form; errors on degeneracy.
pub fn rational_signature(gram: &[Vec<Rat>]) -> Result<(usize, usize)> {
    let d = diagonalize(gram);
    if !d.radical.is_empty() {
        return Err(MorikitError::Degenerate {
            radical: d
                .radical
                .iter()
                .map(|v| v.iter().map(|x| x.to_string()).collect())
                .collect(),
        });
    }
    let pos = d.diagonal.iter().filter(|x| x.is_positive()).count();
    Ok((pos, d.diagonal.len() - pos))
}

impl Lattice {
    pub fn new(gram: Vec<Vec<Int>>) -> Result<Self> {
        let n = gram.len();
        for row in &gram {
            if row.len() != n {
                return Err(MorikitError::DimensionMismatch {
                    expected: n,
                    got: row.len(),
                });
            }
        }
        for i in 0..n {
            for j in 0..i {
                if gram[i][j] != gram[j][i] {
                    return Err(MorikitError::NotSymmetric);
                }
            }
        }
        Ok(Lattice { gram })
    }

    pub fn from_i64(gram: &[&[i64]]) -> Result<Self> {
        Lattice::new(crate::linalg::int_matrix(gram))
    }

    pub fn standard(which: StandardLattice) -> Lattice {
        match which {
            StandardLattice::U => Lattice {
                gram: crate::linalg::int_matrix(&[&[0, 1], &[1, 0]]),
            },
            StandardLattice::E8Minus => {
                let mut g = vec![vec![Int::zero(); 8]; 8];
                for (i, row) in g.iter_mut().enumerate() {
                    row[i] = Int::from(-2);
                }
                for &(a, b) in &E8_EDGES {
                    g[a][b] = Int::one();
                    g[b][a] = Int::one();
                }
                Lattice { gram: g }
            }
            StandardLattice::Mukai => {
                let u = Lattice::standard(StandardLattice::U);
                let e8 = Lattice::standard(StandardLattice::E8Minus);
                let mut l = u.clone();
                for _ in 0..3 {
                    l = l.direct_sum(&u);
                }
                l.direct_sum(&e8).direct_sum(&e8)
            }
        }
    }

    /// Standard lattice by name: `U`, `E8_minus` or `mukai`.
    pub fn build_standard(name: &str) -> Result<Lattice> {
        Ok(Lattice::standard(name.parse()?))
    }

    pub fn rank(&self) -> usize {
        self.gram.len()
    }

    pub fn gram(&self) -> &[Vec<Int>] {
        &self.gram
    }

    pub fn gram_rat(&self) -> Vec<Vec<Rat>> {
        to_rat_matrix(&self.gram)
    }

    pub fn direct_sum(&self, other: &Lattice) -> Lattice {
        let (a, b) = (self.rank(), other.rank());
        let mut g = vec![vec![Int::zero(); a + b]; a + b];
        for i in 0..a {
            g[i][..a].clone_from_slice(&self.gram[i]);
        }
        for i in 0..b {
            g[a + i][a..].clone_from_slice(&other.gram[i]);
        }
        Lattice { gram: g }
    }

    fn check(&self, x: &LatticeVector) -> Result<()> {
        if x.len() != self.rank() {
            return Err(MorikitError::DimensionMismatch {
                expected: self.rank(),
                got: x.len(),
            });
        }
        Ok(())
    }

    /// The bilinear form `xᵀ G y`.
    pub fn pair(&self, x: &LatticeVector, y: &LatticeVector) -> Result<Int> {
        self.check(x)?;
        self.check(y)?;
        Ok(crate::linalg::dot_int(&x.0, &mat_vec_int(&self.gram, &y.0)))
    }

    pub fn square(&self, x: &LatticeVector) -> Result<Int> {
        self.pair(x, x)
    }

    /// Row vector `xᵀ G`, i.e. the functional `y ↦ (x, y)`.
    pub fn dual_functional(&self, x: &LatticeVector) -> Result<Vec<Int>> {
        self.check(x)?;
        Ok(mat_vec_int(&self.gram, &x.0))
    }

    /// gcd of `(x, y)` over all lattice vectors `y`.
    pub fn divisibility(&self, x: &LatticeVector) -> Result<Int> {
        Ok(gcd_all(&self.dual_functional(x)?))
    }

    pub fn determinant(&self) -> Int {
        det_int(&self.gram)
    }

    pub fn is_even(&self) -> bool {
        self.gram
            .iter()
            .enumerate()
            .all(|(i, r)| (&r[i] % Int::from(2)).is_zero())
    }

    pub fn signature(&self) -> Result<(usize, usize)> {
        rational_signature(&self.gram_rat())
    }

    /// Saturated basis of `{x : (x, s) = 0 for all s ∈ S}`.
    ///
    /// The basis is the Hermite normal form of the kernel listed from the last
    /// pivot to the first.
    pub fn orthogonal_complement(&self, s: &[LatticeVector]) -> Result<Vec<LatticeVector>> {
        let rows = s
            .iter()
            .map(|v| self.dual_functional(v))
            .collect::<Result<Vec<_>>>()?;
        let mut kernel = if rows.is_empty() {
            hnf_rows(&crate::linalg::identity_int(self.rank()))
        } else {
            integer_kernel(&rows, self.rank())
        };
        kernel.reverse();
        Ok(kernel.into_iter().map(LatticeVector).collect())
    }

    /// `x` divided by the gcd of its coordinates.
    pub fn primitivize(&self, x: &LatticeVector) -> Result<LatticeVector> {
        self.check(x)?;
        if x.is_zero() {
            return Err(MorikitError::ZeroVector);
        }
        Ok(LatticeVector(primitive(&x.0)))
    }

    /// Gram matrix of the given vectors.
    pub fn restricted_gram(&self, basis: &[LatticeVector]) -> Result<Vec<Vec<Int>>> {
        basis
            .iter()
            .map(|a| basis.iter().map(|b| self.pair(a, b)).collect())
            .collect()
    }
}

pub fn is_primitive(v: &[Int]) -> bool {
    gcd_all(v).is_one()
}
