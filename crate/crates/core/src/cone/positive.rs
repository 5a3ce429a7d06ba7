//! The positive cone of a hyperbolic lattice and exact tests mixing it with
//! polyhedral cones.

use num_traits::{One, Signed, Zero};

use crate::cone::polyhedral::RationalCone;
use crate::linalg::{
    bilinear, det_int, hnf_rows, inverse_rat, isqrt, mat_vec, mat_vec_int, primitive,
    primitive_of_rat, to_rat_matrix, to_rat_vec, Int, Rat,
};

/// `{x : q(x) >= 0, (x, h) >= 0}` for a form of signature `(1, ρ−1)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PositiveCone {
    gram: Vec<Vec<Int>>,
    gram_rat: Vec<Vec<Rat>>,
    h: Vec<Int>,
    isotropic: Option<[Vec<Int>; 2]>,
}

impl PositiveCone {
    pub fn new(gram: Vec<Vec<Int>>, h: Vec<Int>) -> Self {
        let gram_rat = to_rat_matrix(&gram);
        let isotropic = if gram.len() == 2 {
            rational_isotropic_pair(&gram, &h)
        } else {
            None
        };
        PositiveCone {
            gram,
            gram_rat,
            h,
            isotropic,
        }
    }

    pub fn dim(&self) -> usize {
        self.gram.len()
    }

    pub fn gram(&self) -> &[Vec<Int>] {
        &self.gram
    }

    pub fn h(&self) -> &[Int] {
        &self.h
    }

    /// The two rational isotropic boundary rays in rank 2, if they exist.
    pub fn isotropic_rays(&self) -> Option<&[Vec<Int>; 2]> {
        self.isotropic.as_ref()
    }

    pub fn pair(&self, x: &[Rat], y: &[Rat]) -> Rat {
        bilinear(&self.gram_rat, x, y)
    }

    pub fn square(&self, x: &[Rat]) -> Rat {
        self.pair(x, x)
    }

    pub fn height(&self, x: &[Rat]) -> Rat {
        self.pair(&to_rat_vec(&self.h), x)
    }

    /// Primitive integral covector `G·x`, i.e. the functional `(·, x)`.
    pub fn covector(&self, x: &[Rat]) -> Vec<Int> {
        primitive_of_rat(&mat_vec(&self.gram_rat, x))
    }

    pub fn covector_int(&self, x: &[Int]) -> Vec<Int> {
        primitive(&mat_vec_int(&self.gram, x))
    }

    pub fn is_interior(&self, x: &[Rat]) -> bool {
        self.square(x).is_positive() && self.height(x).is_positive()
    }

    pub fn contains(&self, x: &[Rat]) -> bool {
        if x.iter().all(Zero::is_zero) {
            return true;
        }
        !self.square(x).is_negative() && self.height(x).is_positive()
    }

    /// The positive cone as a rational polyhedral cone, when it is one
    /// (rank 1, or rank 2 with rational isotropic rays).
    pub fn as_polyhedral(&self) -> Option<RationalCone> {
        match self.dim() {
            1 => Some(RationalCone::from_generators(1, &[primitive(&self.h)], &[])),
            2 => self
                .isotropic
                .as_ref()
                .map(|w| RationalCone::from_generators(2, &w[..], &[])),
            _ => None,
        }
    }

    /// A point of `K ∩ Pos°`, not necessarily in the relative interior of `K`.
    fn positive_point(&self, k: &RationalCone) -> Option<Vec<Rat>> {
        let mut gens = k.rays.clone();
        gens.extend(k.lineality.iter().cloned());
        let basis = hnf_rows(&gens);
        if basis.is_empty() {
            return None;
        }
        let b = to_rat_matrix(&basis);
        let gs: Vec<Vec<Rat>> = b
            .iter()
            .map(|x| b.iter().map(|y| self.pair(x, y)).collect())
            .collect();
        let gs_inv = inverse_rat(&gs)?;
        let hb: Vec<Rat> = b.iter().map(|x| self.height(x)).collect();
        let coeffs = mat_vec(&gs_inv, &hb);
        let mut xs = vec![Rat::zero(); self.dim()];
        for (c, row) in coeffs.iter().zip(&b) {
            for (xi, ri) in xs.iter_mut().zip(row) {
                *xi += c * ri;
            }
        }
        if !self.square(&xs).is_positive() {
            return None;
        }
        if k.contains(&xs) {
            return Some(xs);
        }
        k.facets
            .iter()
            .find_map(|f| self.positive_point(&k.face(f)))
    }

    /// A point in the relative interior of `K` lying in `Pos°`, if `K` meets `Pos°`.
    pub fn meets_interior(&self, k: &RationalCone) -> Option<Vec<Rat>> {
        let y = self.positive_point(k)?;
        let c = to_rat_vec(&k.relative_interior_point());
        if c.iter().all(Zero::is_zero) {
            return Some(y);
        }
        let mut eps = Rat::one();
        loop {
            let p: Vec<Rat> = y.iter().zip(&c).map(|(a, b)| a + &eps * b).collect();
            if self.is_interior(&p) {
                return Some(p);
            }
            eps /= Int::from(2);
        }
    }

    /// For each negative class `R_i` (in the cone generated by `Pos` and all
    /// of them), whether it spans an extremal ray. `R_i` is kept iff the face
    /// `{D : (D,R_j) >= 0 ∀j, (D,R_i) = 0}` is a facet meeting `Pos°`.
    pub fn extremal_negative(&self, rays: &[Vec<Int>]) -> Vec<bool> {
        let covs: Vec<Vec<Int>> = rays.iter().map(|r| self.covector_int(r)).collect();
        let rho = self.dim();
        covs.iter()
            .map(|f| {
                let k = RationalCone::from_inequalities(rho, &covs, std::slice::from_ref(f));
                k.dim() + 1 == rho && self.positive_point(&k).is_some()
            })
            .collect()
    }

    /// `Pos ∩ {D : (D,R) >= 0}` for the given classes: the cone together
    /// with a flag telling whether the quadric contributes to its boundary.
    /// When the flag is set the cone is the polyhedral part only.
    pub fn nef(&self, rays: &[Vec<Int>]) -> (RationalCone, bool) {
        let covs: Vec<Vec<Int>> = rays.iter().map(|r| self.covector_int(r)).collect();
        let rho = self.dim();
        if let Some(pos) = self.as_polyhedral() {
            let mut ineqs = covs;
            ineqs.extend(pos.facets.iter().cloned());
            return (
                RationalCone::from_inequalities(rho, &ineqs, &pos.equations),
                false,
            );
        }
        let p = RationalCone::from_inequalities(rho, &covs, &[]);
        let inside =
            p.is_pointed() && !p.is_zero() && p.rays.iter().all(|r| self.contains(&to_rat_vec(r)));
        (p, !inside)
    }

    /// Polyhedral part of `Pos + cone(rays)`: the cone on the rays together
    /// with the rational generators of `Pos` when it is polyhedral.
    pub fn mori_polyhedral(&self, rays: &[Vec<Int>]) -> RationalCone {
        let mut gens = rays.to_vec();
        if let Some(pos) = self.as_polyhedral() {
            gens.extend(pos.rays.iter().cloned());
        }
        RationalCone::from_generators(self.dim(), &gens, &[])
    }

    /// Exact membership of `x` in `Pos + cone(rays)`.
    pub fn mori_contains(&self, rays: &[Vec<Int>], x: &[Rat]) -> bool {
        if x.iter().all(Zero::is_zero) {
            return true;
        }
        let mut covs: Vec<Vec<Int>> = rays.iter().map(|r| self.covector_int(r)).collect();
        covs.push(self.covector(x).iter().map(|c| -c).collect());
        let k = RationalCone::from_inequalities(self.dim(), &covs, &[]);
        !(k.is_full_dimensional() && self.positive_point(&k).is_some())
    }
}

/// Rational isotropic rays of a binary form, oriented positively against `h`.
fn rational_isotropic_pair(g: &[Vec<Int>], h: &[Int]) -> Option<[Vec<Int>; 2]> {
    let (a, b, c) = (&g[0][0], &g[0][1], &g[1][1]);
    let disc = -det_int(g);
    let s = isqrt(&disc);
    if &s * &s != disc {
        return None;
    }
    let (w1, w2) = if a.is_zero() {
        (
            vec![Int::one(), Int::zero()],
            vec![-c.clone(), b * Int::from(2)],
        )
    } else {
        (vec![&s - b, a.clone()], vec![-(&s) - b, a.clone()])
    };
    let gh = mat_vec_int(g, h);
    let orient = |w: Vec<Int>| {
        let w = primitive(&w);
        let t: Int = w.iter().zip(&gh).map(|(x, y)| x * y).sum();
        if t.is_negative() {
            w.iter().map(|x| -x).collect()
        } else {
            w
        }
    };
    let mut pair = [orient(w1), orient(w2)];
    pair.sort();
    Some(pair)
}
