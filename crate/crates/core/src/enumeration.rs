//! Bounded exact enumeration of the theorem set
//! `{a ∈ Λ_alg : a² ≥ −2, |(a,v)| ≤ v²/2, (h, θ∨(a)) > 0}` and of the
//! `(−2)`-classes generating the effective cone of a K3 surface.
//!
//! The search runs over an indefinite lattice by bounding a positive
//! definite majorant `M(x) = 2·q(π x) − x²`, where `π` projects onto the
//! positive definite span of `v` and the reference class.

use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};

use crate::cone::polyhedral::RationalCone;
use crate::cone::positive::PositiveCone;
use crate::error::{MorikitError, Result};
use crate::lattice::{Lattice, LatticeVector};
use crate::linalg::{
    dot_int, inverse_rat, mat_vec, mat_vec_int, primitive, primitive_of_rat, rat_int,
    to_rat_matrix, to_rat_vec, Int, Rat,
};
use crate::markman::{CurveClass, ExtendedAlgebraicLattice};
use crate::pell::binary_automorph;
use crate::shortvec::short_vectors;

type Matrix = Vec<Vec<Int>>;

/// Largest power of the Pell automorph tried when looking for one that is
/// integral on the whole lattice.
const MAX_AUTOMORPH_POWER: u32 = 10_000;

/// Search budget: classes of height above `height_bound` are not reported.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnumerationBudget {
    pub height_bound: Rat,
    pub coeff_bound: Option<u32>,
}

impl EnumerationBudget {
    pub fn new(height_bound: Rat) -> Result<Self> {
        if !height_bound.is_positive() {
            return Err(MorikitError::BadBudget);
        }
        Ok(EnumerationBudget {
            height_bound,
            coeff_bound: None,
        })
    }

    /// `B = 10·(2n−2)`.
    pub fn default_for(model: &ExtendedAlgebraicLattice) -> Self {
        EnumerationBudget {
            height_bound: rat_int(&(model.v_sq() * Int::from(10))),
            coeff_bound: None,
        }
    }

    pub fn with_coeff_bound(mut self, c: u32) -> Result<Self> {
        if c == 0 {
            return Err(MorikitError::BadCoeffBound);
        }
        self.coeff_bound = Some(c);
        Ok(self)
    }
}

/// An element `a` of the theorem set with its image `R = θ∨(a)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TheoremClass {
    pub a: LatticeVector,
    pub r: CurveClass,
    pub a_sq: Int,
    pub av: Int,
    pub height: Rat,
}

/// A lattice point passing the numerical conditions, before it is attached
/// to a model.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Found {
    pub a: Vec<Int>,
    pub a_sq: Int,
    pub av: Int,
    pub q: Rat,
    pub height: Rat,
}

impl Found {
    fn sort_key(&self) -> (Rat, Vec<Int>) {
        (self.height.clone(), self.a.clone())
    }

    fn negated(&self) -> Found {
        Found {
            a: self.a.iter().map(|x| -x).collect(),
            a_sq: self.a_sq.clone(),
            av: -&self.av,
            q: self.q.clone(),
            height: -&self.height,
        }
    }
}

/// Search region shared by the theorem set (with a Mukai vector) and the K3
/// effective cone (without one).
#[derive(Debug, Clone)]
pub(crate) struct ClassSearch {
    gram: Vec<Vec<Int>>,
    gram_rat: Vec<Vec<Rat>>,
    v: Option<Vec<Int>>,
    v_sq: Int,
    av_max: Int,
    a_sq_min: Int,
    reference: Vec<Int>,
    ref_sq: Int,
    h_basis: Vec<Vec<Int>>,
    h_gram: Vec<Vec<Int>>,
    /// `x ↦` coordinates of the projection of `x` in `h_basis`.
    to_h: Vec<Vec<Rat>>,
    /// Whether a negative class orthogonal to the reference is an error.
    reject_walls: bool,
}

/// Result of the rank-2 exactness pass.
#[derive(Debug, Clone, Default)]
pub(crate) struct Exactness {
    pub extra: Vec<Found>,
    /// `extra` is every negative class, so no height search is needed.
    pub exhaustive: bool,
    pub complete: bool,
}

/// Outcome of the search for extremal classes.
#[derive(Debug, Clone)]
pub(crate) struct ExtremalSearch {
    /// Every negative class found, sorted by height then coordinates.
    pub candidates: Vec<Found>,
    /// One representative per extremal ray.
    pub rays: Vec<Found>,
    /// The same rays as primitive integral vectors in `H` coordinates.
    pub ray_keys: Vec<Vec<Int>>,
    pub complete: bool,
    pub height_bound: Rat,
}

impl ClassSearch {
    pub fn for_model(model: &ExtendedAlgebraicLattice) -> Self {
        Self::for_model_with_reference(model, model.h().coords())
    }

    pub fn for_model_with_reference(model: &ExtendedAlgebraicLattice, reference: &[Int]) -> Self {
        let h_basis: Vec<Vec<Int>> = model
            .h2_basis_vectors()
            .iter()
            .map(|b| b.coords().to_vec())
            .collect();
        Self::build(
            model.lattice().gram().to_vec(),
            Some(model.v().coords().to_vec()),
            model.n() - Int::one(),
            Int::from(-2),
            reference.to_vec(),
            h_basis,
        )
    }

    pub fn for_k3(pic_gram: &[Vec<Int>], h: &[Int]) -> Self {
        let rank = pic_gram.len();
        Self::build(
            pic_gram.to_vec(),
            None,
            Int::zero(),
            Int::from(-2),
            h.to_vec(),
            crate::linalg::identity_int(rank),
        )
    }

    fn build(
        gram: Vec<Vec<Int>>,
        v: Option<Vec<Int>>,
        av_max: Int,
        a_sq_min: Int,
        reference: Vec<Int>,
        h_basis: Vec<Vec<Int>>,
    ) -> Self {
        let gram_rat = to_rat_matrix(&gram);
        let reject_walls = v.is_some();
        let v_sq = v
            .as_ref()
            .map_or_else(Int::one, |v| dot_int(v, &mat_vec_int(&gram, v)));
        let ref_sq = dot_int(&reference, &mat_vec_int(&gram, &reference));
        let h_gram: Vec<Vec<Int>> = h_basis
            .iter()
            .map(|x| {
                let gx = mat_vec_int(&gram, x);
                h_basis.iter().map(|y| dot_int(y, &gx)).collect()
            })
            .collect();
        let to_h = if h_basis.is_empty() {
            Vec::new()
        } else {
            let inv = inverse_rat(&to_rat_matrix(&h_gram)).expect("v⊥ is non-degenerate");
            let bg: Vec<Vec<Rat>> = h_basis
                .iter()
                .map(|b| to_rat_vec(&mat_vec_int(&gram, b)))
                .collect();
            crate::linalg::mat_mul_rat(&inv, &bg)
        };
        ClassSearch {
            gram,
            gram_rat,
            v,
            v_sq,
            av_max,
            a_sq_min,
            reference,
            ref_sq,
            h_basis,
            h_gram,
            to_h,
            reject_walls,
        }
    }

    pub fn h_rank(&self) -> usize {
        self.h_basis.len()
    }

    pub fn positive_cone(&self) -> PositiveCone {
        let h = primitive_of_rat(&self.to_h(&self.reference));
        PositiveCone::new(self.h_gram.clone(), h)
    }

    /// Smallest possible `q` of a class satisfying the numerical conditions.
    pub fn q_min(&self) -> Rat {
        rat_int(&self.a_sq_min) - Rat::new(&self.av_max * &self.av_max, self.v_sq.clone())
    }

    pub fn to_h(&self, a: &[Int]) -> Vec<Rat> {
        mat_vec(&self.to_h, &to_rat_vec(a))
    }

    pub fn ray_key(&self, a: &[Int]) -> Vec<Int> {
        primitive_of_rat(&self.to_h(a))
    }

    pub fn lift_h(&self, c: &[Rat]) -> Vec<Rat> {
        let mut out = vec![Rat::zero(); self.gram.len()];
        for (ci, b) in c.iter().zip(&self.h_basis) {
            for (o, bj) in out.iter_mut().zip(b) {
                *o += ci * rat_int(bj);
            }
        }
        out
    }

    fn pair_v(&self, a: &[Int]) -> Int {
        match &self.v {
            Some(v) => dot_int(a, &mat_vec_int(&self.gram, v)),
            None => Int::zero(),
        }
    }

    /// The numerical conditions without the height: `a² ≥ min`, `|(a,v)| ≤ max`, `q < 0`.
    pub fn classify(&self, a: &[Int]) -> Option<Found> {
        let ga = mat_vec_int(&self.gram, a);
        let a_sq = dot_int(a, &ga);
        if a_sq < self.a_sq_min {
            return None;
        }
        let av = self.pair_v(a);
        if av.abs() > self.av_max {
            return None;
        }
        let q = rat_int(&a_sq) - Rat::new(&av * &av, self.v_sq.clone());
        if !q.is_negative() {
            return None;
        }
        let height = rat_int(&dot_int(&self.reference, &ga));
        Some(Found {
            a: a.to_vec(),
            a_sq,
            av,
            q,
            height,
        })
    }

    /// `M = [2(Gv)(Gv)ᵀ/v²] + 2(Gr)(Gr)ᵀ/r² − G` for the reference `r`.
    pub fn majorant(&self) -> Vec<Vec<Rat>> {
        let m = self.gram.len();
        let gr = to_rat_vec(&mat_vec_int(&self.gram, &self.reference));
        let two = Rat::from_integer(Int::from(2));
        let cr = &two / rat_int(&self.ref_sq);
        let gv = self
            .v
            .as_ref()
            .map(|v| to_rat_vec(&mat_vec_int(&self.gram, v)));
        let cv = &two / rat_int(&self.v_sq);
        (0..m)
            .map(|i| {
                (0..m)
                    .map(|j| {
                        let mut x = &cr * &gr[i] * &gr[j] - &self.gram_rat[i][j];
                        if let Some(gv) = &gv {
                            x += &cv * &gv[i] * &gv[j];
                        }
                        x
                    })
                    .collect()
            })
            .collect()
    }

    /// Majorant bound covering all classes with `|height| <= b`.
    fn majorant_bound(&self, b: &Rat) -> Rat {
        let two = Rat::from_integer(Int::from(2));
        let av_part = Rat::new(&self.av_max * &self.av_max, self.v_sq.clone());
        let ref_part = b * b / rat_int(&self.ref_sq);
        two * (av_part + ref_part) - rat_int(&self.a_sq_min)
    }

    /// All negative classes with `0 < height <= b`, sorted.
    pub fn search(&self, b: &Rat) -> Vec<Found> {
        let m = self.majorant();
        let mut out: Vec<Found> = short_vectors(&m, &self.majorant_bound(b))
            .iter()
            .filter_map(|a| self.classify(a))
            .filter(|f| f.height.is_positive() && &f.height <= b)
            .collect();
        out.sort_by_key(Found::sort_key);
        out
    }

    /// A negative class orthogonal to the reference, if any.
    pub fn on_wall(&self) -> Option<Found> {
        let m = self.majorant();
        short_vectors(&m, &self.majorant_bound(&Rat::zero()))
            .iter()
            .filter_map(|a| self.classify(a))
            .find(|f| f.height.is_zero())
    }

    /// Certify completeness when `H` has rank 2.
    pub fn rank2_exactness(&self) -> Exactness {
        let g = &self.h_gram;
        let c = -self.q_min();
        let pos = self.positive_cone();
        if let Some([w1, w2]) = pos.isotropic_rays() {
            return Exactness {
                extra: self.isotropic_negative_set(w1, w2, &c),
                exhaustive: true,
                complete: true,
            };
        }
        let h2 = [
            [g[0][0].clone(), g[0][1].clone()],
            [g[1][0].clone(), g[1][1].clone()],
        ];
        let Some(gamma) = binary_automorph(&h2) else {
            return Exactness::default();
        };
        let Some((big_inv, gamma_h)) = self.integral_power(&gamma) else {
            return Exactness::default();
        };
        // fundamental domain [w1, γw1) for the action on negative lines
        let gh = mat_vec(&to_rat_matrix(g), &self.to_h(&self.reference));
        let w1 = primitive_of_rat(&[-gh[1].clone(), gh[0].clone()]);
        let w2 = mat_vec_int(&gamma_h, &w1);
        let q1 = dot_int(&w1, &mat_vec_int(g, &w1));
        let q12 = dot_int(&w1, &mat_vec_int(g, &w2));
        let margin = rat_int(&(q1.abs() - q12.max(Int::zero())));
        let w = vec![
            vec![rat_int(&w1[0]), rat_int(&w2[0])],
            vec![rat_int(&w1[1]), rat_int(&w2[1])],
        ];
        let w_inv = inverse_rat(&w).expect("γ has no rational eigenvector");
        let coords = crate::linalg::mat_mul_rat(&w_inv, &self.to_h);
        let dim = self.gram.len();
        let gv = self
            .v
            .as_ref()
            .map(|v| to_rat_vec(&mat_vec_int(&self.gram, v)));
        let form: Vec<Vec<Rat>> = (0..dim)
            .map(|i| {
                (0..dim)
                    .map(|j| {
                        let mut x = &coords[0][i] * &coords[0][j] + &coords[1][i] * &coords[1][j];
                        if let Some(gv) = &gv {
                            x += &gv[i] * &gv[j] / rat_int(&self.v_sq);
                        }
                        x
                    })
                    .collect()
            })
            .collect();
        let bound = Rat::new(&self.av_max * &self.av_max, self.v_sq.clone()) + c / margin;
        let mut extra = Vec::new();
        for a in short_vectors(&form, &bound) {
            let ab = mat_vec(&coords, &to_rat_vec(&a));
            if !ab[0].is_positive() || ab[1].is_negative() {
                continue;
            }
            let Some(f) = self.classify(&a) else { continue };
            if f.height.is_zero() {
                continue;
            }
            extra.push(orient(f));
            let back = mat_vec_int(&big_inv, &a);
            if let Some(f) = self.classify(&back) {
                extra.push(orient(f));
            }
        }
        extra.sort_by_key(Found::sort_key);
        extra.dedup();
        Exactness {
            extra,
            exhaustive: false,
            complete: true,
        }
    }

    /// Every negative class when `H` has rational isotropic rays `w1, w2`.
    ///
    /// `q(R) = 2(a,w1)(a,w2)/(w1,w2)` with integral pairings, so `q >= −c`
    /// leaves finitely many pairings; together with `(a,v)` they determine
    /// `a`.
    fn isotropic_negative_set(&self, w1: &[Int], w2: &[Int], c: &Rat) -> Vec<Found> {
        let lift = |w: &[Int]| -> Vec<Int> {
            self.lift_h(&to_rat_vec(w))
                .iter()
                .map(|x| x.to_integer())
                .collect()
        };
        let mut rows = vec![
            mat_vec_int(&self.gram, &lift(w1)),
            mat_vec_int(&self.gram, &lift(w2)),
        ];
        if let Some(v) = &self.v {
            rows.push(mat_vec_int(&self.gram, v));
        }
        let inv = inverse_rat(&to_rat_matrix(&rows)).expect("w1, w2, v are independent");
        let w12 = dot_int(w1, &mat_vec_int(&self.h_gram, w2)).abs();
        let k = (c * rat_int(&w12) / Rat::from_integer(Int::from(2)))
            .floor()
            .to_integer();
        let mut avs = Vec::new();
        if self.v.is_some() {
            let mut av = -self.av_max.clone();
            while av <= self.av_max {
                avs.push(av.clone());
                av += 1;
            }
        }
        let mut out = Vec::new();
        let mut p1 = -k.clone();
        while p1 <= k {
            if !p1.is_zero() {
                let reach = &k / p1.abs();
                let mut m = Int::one();
                while m <= reach {
                    let p2 = if p1.is_positive() { -&m } else { m.clone() };
                    let mut targets: Vec<Vec<Rat>> = Vec::new();
                    if avs.is_empty() {
                        targets.push(vec![rat_int(&p1), rat_int(&p2)]);
                    }
                    for av in &avs {
                        targets.push(vec![rat_int(&p1), rat_int(&p2), rat_int(av)]);
                    }
                    for t in targets {
                        let a = mat_vec(&inv, &t);
                        if !a.iter().all(|x| x.is_integer()) {
                            continue;
                        }
                        let a: Vec<Int> = a.iter().map(|x| x.to_integer()).collect();
                        if let Some(f) = self.classify(&a) {
                            if !f.height.is_zero() {
                                out.push(orient(f));
                            }
                        }
                    }
                    m += 1;
                }
            }
            p1 += 1;
        }
        out.sort_by_key(Found::sort_key);
        out.dedup();
        out
    }

    /// Smallest power of the automorph `γ` of `H` that extends (by the
    /// identity on `v`) to an integral isometry of the ambient lattice.
    /// Returns the inverse of the ambient matrix and the matrix on `H`.
    fn integral_power(&self, gamma: &[[Int; 2]; 2]) -> Option<(Matrix, Matrix)> {
        let g1: Vec<Vec<Int>> = gamma.iter().map(|r| r.to_vec()).collect();
        let mut gk = g1.clone();
        let dim = self.gram.len();
        for _ in 0..MAX_AUTOMORPH_POWER {
            let gkr = to_rat_matrix(&gk);
            // columns: images of the standard basis vectors
            let mut cols: Vec<Vec<Rat>> = Vec::with_capacity(dim);
            for j in 0..dim {
                let mut e = vec![Int::zero(); dim];
                e[j] = Int::one();
                let hpart = mat_vec(&gkr, &self.to_h(&e));
                let mut img = self.lift_h(&hpart);
                if let Some(v) = &self.v {
                    let t = Rat::new(self.pair_v(&e), self.v_sq.clone());
                    for (x, vi) in img.iter_mut().zip(v) {
                        *x += &t * rat_int(vi);
                    }
                }
                cols.push(img);
            }
            if cols.iter().flatten().all(|x| x.is_integer()) {
                let m: Vec<Vec<Int>> = (0..dim)
                    .map(|i| (0..dim).map(|j| cols[j][i].to_integer()).collect())
                    .collect();
                let inv = inverse_rat(&to_rat_matrix(&m))?;
                let inv: Vec<Vec<Int>> = inv
                    .iter()
                    .map(|r| r.iter().map(|x| x.to_integer()).collect())
                    .collect();
                return Some((inv, gk));
            }
            gk = crate::linalg::mat_mul_int(&gk, &g1);
        }
        None
    }

    /// Negative classes within the budget, the rank-2 exactness pass, ray
    /// deduplication and the extremality filter.
    pub fn extremal(&self, budget: &EnumerationBudget) -> Result<ExtremalSearch> {
        if let Some(f) = self.on_wall().filter(|_| self.reject_walls) {
            return Err(MorikitError::PolarizationOnWall(
                LatticeVector(f.a).to_string(),
            ));
        }
        let rank = self.h_rank();
        let mut height_bound = budget.height_bound.clone();
        let mut complete = rank <= 1;
        let mut extra = Vec::new();
        let mut exhaustive = false;
        if rank == 2 {
            let ex = self.rank2_exactness();
            complete = ex.complete;
            exhaustive = ex.exhaustive;
            extra = ex.extra;
        }
        let mut candidates = if rank <= 1 || exhaustive {
            Vec::new()
        } else {
            self.search(&height_bound)
        };
        if let Some(top) = extra.iter().map(|f| &f.height).max() {
            if exhaustive && top > &height_bound {
                height_bound = top.clone();
            }
        }
        candidates.extend(extra);
        candidates.sort_by_key(Found::sort_key);
        candidates.dedup();
        let mut by_ray: BTreeMap<Vec<Int>, Found> = BTreeMap::new();
        for f in &candidates {
            by_ray
                .entry(self.ray_key(&f.a))
                .or_insert_with(|| f.clone());
        }
        // a ray extremal in Pos + cone(R) is extremal in cone(R)
        let hull = RationalCone::from_generators(
            self.h_rank(),
            &by_ray.keys().cloned().collect::<Vec<_>>(),
            &[],
        );
        by_ray.retain(|k, _| hull.rays.contains(k));
        let keys: Vec<Vec<Int>> = by_ray.keys().cloned().collect();
        let keep = self.positive_cone().extremal_negative(&keys);
        let mut rays: Vec<(Vec<Int>, Found)> = by_ray
            .into_iter()
            .zip(keep)
            .filter(|(_, k)| *k)
            .map(|(kv, _)| kv)
            .collect();
        rays.sort_by_key(|x| x.1.sort_key());
        let (ray_keys, rays) = rays.into_iter().unzip();
        Ok(ExtremalSearch {
            candidates,
            rays,
            ray_keys,
            complete,
            height_bound,
        })
    }
}

fn orient(f: Found) -> Found {
    if f.height.is_negative() {
        f.negated()
    } else {
        f
    }
}

pub(crate) fn theorem_class(model: &ExtendedAlgebraicLattice, f: &Found) -> TheoremClass {
    let a = LatticeVector(f.a.clone());
    let r = model.theta_dual(&a).expect("dimension checked");
    TheoremClass {
        a,
        r,
        a_sq: f.a_sq.clone(),
        av: f.av.clone(),
        height: f.height.clone(),
    }
}

/// Positive definite majorant `M(x) = 2·q(π x) − x²`, with `π` the
/// projection onto `span(v, h)`.
pub fn majorant(model: &ExtendedAlgebraicLattice) -> Vec<Vec<Rat>> {
    ClassSearch::for_model(model).majorant()
}

/// Negative classes of the theorem set with height at most the budget,
/// sorted by height and then coordinates.
pub fn enumerate_theorem_set(
    model: &ExtendedAlgebraicLattice,
    budget: &EnumerationBudget,
) -> Vec<TheoremClass> {
    ClassSearch::for_model(model)
        .search(&budget.height_bound)
        .iter()
        .map(|f| theorem_class(model, f))
        .collect()
}

/// Extremal negative rays of the Mori cone with their lifts and the
/// completeness flag.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtremalRays {
    pub rays: Vec<TheoremClass>,
    /// Every negative class the search visited (within the effective bound).
    pub candidates: Vec<TheoremClass>,
    pub complete: bool,
    pub height_bound: Rat,
}

pub fn extremal_rays(
    model: &ExtendedAlgebraicLattice,
    budget: &EnumerationBudget,
) -> Result<ExtremalRays> {
    let es = ClassSearch::for_model(model).extremal(budget)?;
    Ok(ExtremalRays {
        rays: es.rays.iter().map(|f| theorem_class(model, f)).collect(),
        candidates: es
            .candidates
            .iter()
            .map(|f| theorem_class(model, f))
            .collect(),
        complete: es.complete,
        height_bound: es.height_bound,
    })
}

/// One curve class per extremal negative ray, represented by its lift of
/// smallest height.
pub fn negative_extremal_rays(
    model: &ExtendedAlgebraicLattice,
    budget: &EnumerationBudget,
) -> Result<Vec<CurveClass>> {
    Ok(extremal_rays(model, budget)?
        .rays
        .into_iter()
        .map(|t| t.r)
        .collect())
}

/// Extremal rays of the closed cone generated by `{D : D² ≥ −2, (D,h) > 0}`
/// on a K3 surface.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct K3Cone {
    pub rays: Vec<Vec<Int>>,
    /// `(−2)`-classes among the rays.
    pub negative_rays: Vec<Vec<Int>>,
    /// Whether part of the boundary is the round positive cone.
    pub quadric_boundary: bool,
    pub complete: bool,
}

pub fn k3_pseudoeffective(
    pic_gram: &[Vec<Int>],
    h: &[Int],
    budget: &EnumerationBudget,
) -> Result<K3Cone> {
    let pic = Lattice::new(pic_gram.to_vec())?;
    let rho = pic.rank();
    let (p, q) = pic.signature()?;
    if (p, q) != (1, rho - 1) {
        return Err(MorikitError::WrongSignature {
            expected_pos: 1,
            expected_neg: rho - 1,
            pos: p,
            neg: q,
        });
    }
    let hv = LatticeVector(h.to_vec());
    let h_sq = pic.square(&hv)?;
    if !h_sq.is_positive() {
        return Err(MorikitError::HNotPositive(h_sq.to_string()));
    }
    if rho == 1 {
        return Ok(K3Cone {
            rays: vec![primitive(h)],
            negative_rays: Vec::new(),
            quadric_boundary: false,
            complete: true,
        });
    }
    let search = ClassSearch::for_k3(pic_gram, h);
    let es = search.extremal(budget)?;
    let pos = search.positive_cone();
    let negative_rays: Vec<Vec<Int>> = es.rays.iter().map(|f| primitive(&f.a)).collect();
    let (_, quadric_boundary) = pos.nef(&negative_rays);
    let rays = pos.mori_polyhedral(&negative_rays).rays;
    Ok(K3Cone {
        rays,
        negative_rays,
        quadric_boundary,
        complete: es.complete,
    })
}

/// Literal application of the theorem predicate to every vector with
/// coordinates in `[−c, c]`; classes of non-negative square included.
pub fn box_oracle(model: &ExtendedAlgebraicLattice, coeff_bound: u32) -> Result<Vec<TheoremClass>> {
    if coeff_bound == 0 {
        return Err(MorikitError::BadCoeffBound);
    }
    let c = i64::from(coeff_bound);
    let dim = model.rank();
    let g = model.lattice().gram();
    let v = model.v().coords();
    let h = model.h().coords();
    let half = model.v_sq() / Int::from(2);
    let mut out = Vec::new();
    let mut x = vec![-c; dim];
    loop {
        let a: Vec<Int> = x.iter().map(|&t| Int::from(t)).collect();
        let ga = mat_vec_int(g, &a);
        let a_sq = dot_int(&a, &ga);
        let av = dot_int(v, &ga);
        let height = dot_int(h, &ga);
        if a_sq >= Int::from(-2) && av.abs() <= half && height.is_positive() {
            let f = Found {
                a,
                a_sq,
                av,
                q: Rat::zero(),
                height: rat_int(&height),
            };
            out.push(theorem_class(model, &f));
        }
        let mut i = 0;
        while i < dim && x[i] == c {
            x[i] = -c;
            i += 1;
        }
        if i == dim {
            break;
        }
        x[i] += 1;
    }
    out.sort_by(|p, q| (&p.height, &p.a).cmp(&(&q.height, &q.a)));
    Ok(out)
}
