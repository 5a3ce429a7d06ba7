//! The algebraic part of the extended Mukai lattice of a K3^[n]-type
//! variety: `Λ_alg` with its Mukai vector `v` and a polarization `h ∈ v⊥`.
//!
//! Curve classes in `H₂` are represented by their canonical rational
//! representative in `v⊥ ⊗ ℚ`, i.e. `θ∨(a) = a − ((a,v)/(v,v))·v`.
//!
//! Sign convention for the Hilbert scheme model: basis `(r, Pic(S), s)` with
//! `r² = s² = 0`, `(r,s) = −1`, Mukai vector `v = r + (1−n)s` and
//! `δ̃ = r + (n−1)s`, so that `v² = 2n−2` and `δ̃² = −2(n−1)`.

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{MorikitError, Result};
use crate::lattice::{is_primitive, Lattice, LatticeVector};
use crate::linalg::{
    bilinear, dot_rat, inverse_rat, lcm_denominators, mat_vec, rat_int, to_rat_vec, Int, Rat,
};

/// An integral divisor class in `H²(X)_alg = v⊥ ∩ Λ_alg`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DivisorClass {
    pub coords: LatticeVector,
}

/// A curve class: rational representative in `v⊥ ⊗ ℚ` with its square.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CurveClass {
    pub coords: Vec<Rat>,
    pub q: Rat,
    pub denominator: Int,
}

/// Anything with rational coordinates in the `Λ_alg` basis.
pub trait ClassCoords {
    fn rat_coords(&self) -> Vec<Rat>;
}

impl ClassCoords for DivisorClass {
    fn rat_coords(&self) -> Vec<Rat> {
        to_rat_vec(self.coords.coords())
    }
}

impl ClassCoords for CurveClass {
    fn rat_coords(&self) -> Vec<Rat> {
        self.coords.clone()
    }
}

impl ClassCoords for LatticeVector {
    fn rat_coords(&self) -> Vec<Rat> {
        to_rat_vec(self.coords())
    }
}

impl ClassCoords for Vec<Rat> {
    fn rat_coords(&self) -> Vec<Rat> {
        self.clone()
    }
}

/// Data remembered when the model was built from a K3 Picard lattice.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HilbertData {
    pub pic_gram: Vec<Vec<Int>>,
    pub h_k3: Vec<Int>,
    /// `δ̃ = r + (n−1)s`.
    pub delta: LatticeVector,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtendedAlgebraicLattice {
    lattice: Lattice,
    v: LatticeVector,
    h: LatticeVector,
    n: Int,
    v_sq: Int,
    h2_basis: Vec<LatticeVector>,
    h2_gram: Vec<Vec<Int>>,
    h2_gram_inv: Vec<Vec<Rat>>,
    hilbert: Option<HilbertData>,
}

impl ExtendedAlgebraicLattice {
    /// `Λ_alg = ℤr ⊕ Pic(S) ⊕ ℤs` for `S^[n]`, polarized by the image of `h_k3`.
    pub fn from_k3_hilbert(pic_gram: &[Vec<Int>], n: &Int, h_k3: &[Int]) -> Result<Self> {
        if n < &Int::from(2) {
            return Err(MorikitError::NTooSmall(n.to_string()));
        }
        let pic = Lattice::new(pic_gram.to_vec())?;
        if !pic.is_even() {
            return Err(MorikitError::NotEven);
        }
        let rho = pic.rank();
        if rho == 0 {
            return Err(MorikitError::Input("Picard lattice has rank 0".into()));
        }
        let (p, q) = pic.signature()?;
        if (p, q) != (1, rho - 1) {
            return Err(MorikitError::WrongSignature {
                expected_pos: 1,
                expected_neg: rho - 1,
                pos: p,
                neg: q,
            });
        }
        let hk = LatticeVector(h_k3.to_vec());
        let hk_sq = pic.square(&hk)?;
        if !hk_sq.is_positive() {
            return Err(MorikitError::HNotPositive(hk_sq.to_string()));
        }
        let rank = rho + 2;
        let mut gram = vec![vec![Int::zero(); rank]; rank];
        gram[0][rank - 1] = Int::from(-1);
        gram[rank - 1][0] = Int::from(-1);
        for i in 0..rho {
            gram[i + 1][1..=rho].clone_from_slice(&pic_gram[i]);
        }
        let one_minus_n = Int::one() - n;
        let mut v = vec![Int::zero(); rank];
        v[0] = Int::one();
        v[rank - 1] = one_minus_n.clone();
        let mut delta = vec![Int::zero(); rank];
        delta[0] = Int::one();
        delta[rank - 1] = -one_minus_n;
        let mut h = vec![Int::zero(); rank];
        h[1..=rho].clone_from_slice(h_k3);
        let mut model =
            ExtendedAlgebraicLattice::from_raw(gram, LatticeVector(v), LatticeVector(h))?;
        model.hilbert = Some(HilbertData {
            pic_gram: pic_gram.to_vec(),
            h_k3: h_k3.to_vec(),
            delta: LatticeVector(delta),
        });
        Ok(model)
    }

    /// Validated wrapper around a user-supplied `(Λ_alg, v, h)`.
    pub fn from_raw(gram: Vec<Vec<Int>>, v: LatticeVector, h: LatticeVector) -> Result<Self> {
        let lattice = Lattice::new(gram)?;
        let v_sq = lattice.square(&v)?;
        lattice.square(&h)?;
        if v.is_zero() || !is_primitive(v.coords()) {
            return Err(MorikitError::VNotPrimitive);
        }
        let two = Int::from(2);
        if v_sq < two || !v_sq.is_even() {
            return Err(MorikitError::BadVSquare(v_sq.to_string()));
        }
        let n = (&v_sq + &two) / &two;
        let hv = lattice.pair(&h, &v)?;
        if !hv.is_zero() {
            return Err(MorikitError::HNotOrthogonal(hv.to_string()));
        }
        let h_sq = lattice.square(&h)?;
        if !h_sq.is_positive() {
            return Err(MorikitError::HNotPositive(h_sq.to_string()));
        }
        let rank = lattice.rank();
        let (p, q) = lattice.signature()?;
        if (p, q) != (2, rank - 2) {
            return Err(MorikitError::WrongSignature {
                expected_pos: 2,
                expected_neg: rank - 2,
                pos: p,
                neg: q,
            });
        }
        let h2_basis = lattice.orthogonal_complement(std::slice::from_ref(&v))?;
        let h2_gram = lattice.restricted_gram(&h2_basis)?;
        let h2_gram_inv = inverse_rat(&crate::linalg::to_rat_matrix(&h2_gram))
            .ok_or_else(|| MorikitError::Input("v⊥ is degenerate".into()))?;
        Ok(ExtendedAlgebraicLattice {
            lattice,
            v,
            h,
            n,
            v_sq,
            h2_basis,
            h2_gram,
            h2_gram_inv,
            hilbert: None,
        })
    }

    /// Same lattice and Mukai vector with a different polarization.
    pub fn with_polarization(&self, h: LatticeVector) -> Result<Self> {
        let mut next =
            ExtendedAlgebraicLattice::from_raw(self.lattice.gram().to_vec(), self.v.clone(), h)?;
        next.hilbert = self.hilbert.clone();
        Ok(next)
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn rank(&self) -> usize {
        self.lattice.rank()
    }

    pub fn v(&self) -> &LatticeVector {
        &self.v
    }

    pub fn h(&self) -> &LatticeVector {
        &self.h
    }

    pub fn n(&self) -> &Int {
        &self.n
    }

    pub fn v_sq(&self) -> &Int {
        &self.v_sq
    }

    pub fn hilbert(&self) -> Option<&HilbertData> {
        self.hilbert.as_ref()
    }

    pub fn delta(&self) -> Option<&LatticeVector> {
        self.hilbert.as_ref().map(|d| &d.delta)
    }

    /// Saturated basis of `H²(X)_alg = v⊥ ∩ Λ_alg`.
    pub fn h2_alg_basis(&self) -> Vec<DivisorClass> {
        self.h2_basis
            .iter()
            .map(|c| DivisorClass { coords: c.clone() })
            .collect()
    }

    pub fn h2_basis_vectors(&self) -> &[LatticeVector] {
        &self.h2_basis
    }

    pub fn h2_rank(&self) -> usize {
        self.h2_basis.len()
    }

    /// Beauville–Bogomolov Gram matrix of `H²(X)_alg` in [`Self::h2_alg_basis`].
    pub fn h2_gram(&self) -> &[Vec<Int>] {
        &self.h2_gram
    }

    pub fn h2_gram_rat(&self) -> Vec<Vec<Rat>> {
        crate::linalg::to_rat_matrix(&self.h2_gram)
    }

    /// Checked divisor class.
    pub fn divisor(&self, coords: LatticeVector) -> Result<DivisorClass> {
        let pv = self.lattice.pair(&coords, &self.v)?;
        if !pv.is_zero() {
            return Err(MorikitError::Input(format!(
                "class {coords} is not orthogonal to v (pairing {pv})"
            )));
        }
        Ok(DivisorClass { coords })
    }

    pub fn pair(&self, x: &LatticeVector, y: &LatticeVector) -> Result<Int> {
        self.lattice.pair(x, y)
    }

    /// `θ∨(a)`: orthogonal projection of `a` onto `v⊥ ⊗ ℚ`.
    pub fn theta_dual(&self, a: &LatticeVector) -> Result<CurveClass> {
        let av = self.lattice.pair(a, &self.v)?;
        let a_sq = self.lattice.square(a)?;
        let t = Rat::new(av.clone(), self.v_sq.clone());
        let coords: Vec<Rat> = a
            .coords()
            .iter()
            .zip(self.v.coords())
            .map(|(ai, vi)| rat_int(ai) - &t * rat_int(vi))
            .collect();
        let q = rat_int(&a_sq) - Rat::new(&av * &av, self.v_sq.clone());
        let denominator = lcm_denominators(&coords);
        Ok(CurveClass {
            coords,
            q,
            denominator,
        })
    }

    /// Curve class with the given rational representative (must lie in `v⊥`).
    pub fn curve_from_coords(&self, coords: Vec<Rat>) -> CurveClass {
        let g = self.lattice.gram_rat();
        let q = bilinear(&g, &coords, &coords);
        let denominator = lcm_denominators(&coords);
        CurveClass {
            coords,
            q,
            denominator,
        }
    }

    /// Beauville–Bogomolov pairing extended to rational classes.
    pub fn q_pair(&self, x: &impl ClassCoords, y: &impl ClassCoords) -> Rat {
        bilinear(&self.lattice.gram_rat(), &x.rat_coords(), &y.rat_coords())
    }

    /// `q_pair(h, x)`, the height of a class.
    pub fn height(&self, x: &impl ClassCoords) -> Rat {
        self.q_pair(&self.h, x)
    }

    /// Coordinates of a class of `v⊥ ⊗ ℚ` in the `H²_alg` basis.
    pub fn to_h2(&self, x: &impl ClassCoords) -> Vec<Rat> {
        let g = self.lattice.gram_rat();
        let xr = x.rat_coords();
        let gx = mat_vec(&g, &xr);
        let pairings: Vec<Rat> = self
            .h2_basis
            .iter()
            .map(|b| dot_rat(&to_rat_vec(b.coords()), &gx))
            .collect();
        mat_vec(&self.h2_gram_inv, &pairings)
    }

    /// Inverse of [`Self::to_h2`].
    pub fn from_h2(&self, c: &[Rat]) -> Vec<Rat> {
        let mut out = vec![Rat::zero(); self.rank()];
        for (ci, b) in c.iter().zip(&self.h2_basis) {
            for (o, bj) in out.iter_mut().zip(b.coords()) {
                *o += ci * rat_int(bj);
            }
        }
        out
    }

    /// `(gram, v, h)` as plain integer data.
    pub fn to_raw(&self) -> (Vec<Vec<Int>>, Vec<Int>, Vec<Int>) {
        (
            self.lattice.gram().to_vec(),
            self.v.coords().to_vec(),
            self.h.coords().to_vec(),
        )
    }
}
