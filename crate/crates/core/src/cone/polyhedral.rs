//! Exact polyhedral cones via the double description method.

use num_traits::{Signed, Zero};

use crate::linalg::{
    dot_int, hnf_rows, nullspace_rat, primitive, primitive_of_rat, rank_int, to_rat_matrix,
    to_rat_vec, Int, Rat,
};

/// A polyhedral cone `cone(rays) + span(lineality) = {x : F·x >= 0, E·x = 0}`.
///
/// All vectors are primitive integral. Rays are taken modulo the lineality
/// space (projected onto its orthogonal complement) and sorted; facets are
/// irredundant and sorted; `lineality` and `equations` are in Hermite normal
/// form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RationalCone {
    pub ambient_dim: usize,
    pub rays: Vec<Vec<Int>>,
    pub lineality: Vec<Vec<Int>>,
    pub facets: Vec<Vec<Int>>,
    pub equations: Vec<Vec<Int>>,
}

struct DdRay {
    v: Vec<Int>,
    zero: Vec<usize>,
}

fn is_subset(small: &[usize], big: &[usize]) -> bool {
    small.iter().all(|x| big.binary_search(x).is_ok())
}

fn intersect(a: &[usize], b: &[usize]) -> Vec<usize> {
    a.iter()
        .copied()
        .filter(|x| b.binary_search(x).is_ok())
        .collect()
}

fn combine(s: &Int, x: &[Int], t: &Int, y: &[Int]) -> Vec<Int> {
    primitive(
        &x.iter()
            .zip(y)
            .map(|(a, b)| s * a - t * b)
            .collect::<Vec<_>>(),
    )
}

/// Extreme rays and lineality basis of `{x : a·x >= 0 for a in ineqs}`.
fn double_description(dim: usize, ineqs: &[Vec<Int>]) -> (Vec<Vec<Int>>, Vec<Vec<Int>>) {
    let mut lin: Vec<Vec<Int>> = crate::linalg::identity_int(dim);
    let mut rays: Vec<DdRay> = Vec::new();
    for (k, a) in ineqs.iter().enumerate() {
        if let Some(idx) = lin.iter().position(|l| !dot_int(a, l).is_zero()) {
            let mut l0 = lin.remove(idx);
            let mut s = dot_int(a, &l0);
            if s.is_negative() {
                l0 = l0.iter().map(|x| -x).collect();
                s = -s;
            }
            for l in lin.iter_mut() {
                let t = dot_int(a, l);
                if !t.is_zero() {
                    *l = combine(&s, l, &t, &l0);
                }
            }
            for r in rays.iter_mut() {
                let t = dot_int(a, &r.v);
                if !t.is_zero() {
                    r.v = combine(&s, &r.v, &t, &l0);
                }
                r.zero.push(k);
            }
            rays.push(DdRay {
                v: primitive(&l0),
                zero: (0..k).collect(),
            });
            continue;
        }
        let signs: Vec<Int> = rays.iter().map(|r| dot_int(a, &r.v)).collect();
        let mut next: Vec<DdRay> = Vec::new();
        for (i, r) in rays.iter().enumerate() {
            if signs[i].is_positive() {
                next.push(DdRay {
                    v: r.v.clone(),
                    zero: r.zero.clone(),
                });
            } else if signs[i].is_zero() {
                let mut z = r.zero.clone();
                z.push(k);
                next.push(DdRay {
                    v: r.v.clone(),
                    zero: z,
                });
            }
        }
        for (p, rp) in rays.iter().enumerate() {
            if !signs[p].is_positive() {
                continue;
            }
            for (n, rn) in rays.iter().enumerate() {
                if !signs[n].is_negative() {
                    continue;
                }
                let common = intersect(&rp.zero, &rn.zero);
                let adjacent = rays
                    .iter()
                    .enumerate()
                    .all(|(o, ro)| o == p || o == n || !is_subset(&common, &ro.zero));
                if adjacent {
                    let v = combine(&signs[p], &rn.v, &signs[n], &rp.v);
                    let mut z = common;
                    z.push(k);
                    next.push(DdRay { v, zero: z });
                }
            }
        }
        rays = next;
    }
    let mut out: Vec<Vec<Int>> = rays.into_iter().map(|r| r.v).collect();
    out.sort();
    out.dedup();
    (out, lin)
}

/// Project onto the orthogonal complement of `lin` (standard dot product)
/// and scale to a primitive integral vector.
fn reduce_mod_lineality(v: &[Int], lin: &[Vec<Int>]) -> Vec<Int> {
    if lin.is_empty() {
        return primitive(v);
    }
    let dim = v.len();
    let complement = nullspace_rat(&to_rat_matrix(lin), dim);
    // solve v = Σ c_i l_i + w with w ⟂ lin
    let mut basis: Vec<Vec<Rat>> = lin.iter().map(|l| to_rat_vec(l)).collect();
    basis.extend(complement.iter().cloned());
    let m = crate::linalg::transpose(&basis);
    let coeffs = crate::linalg::solve_rat(&m, &to_rat_vec(v)).expect("basis is complete");
    let mut w = vec![Rat::zero(); dim];
    for (c, b) in coeffs.iter().zip(&basis).skip(lin.len()) {
        for (wi, bi) in w.iter_mut().zip(b) {
            *wi += c * bi;
        }
    }
    primitive_of_rat(&w)
}

fn with_equalities(ineqs: &[Vec<Int>], eqs: &[Vec<Int>]) -> Vec<Vec<Int>> {
    let mut all: Vec<Vec<Int>> = ineqs
        .iter()
        .filter(|a| !a.iter().all(Zero::is_zero))
        .map(|a| primitive(a))
        .collect();
    for e in eqs {
        if e.iter().all(Zero::is_zero) {
            continue;
        }
        let e = primitive(e);
        all.push(e.iter().map(|x| -x).collect());
        all.push(e);
    }
    all.sort();
    all.dedup();
    all
}

impl RationalCone {
    /// `{x : a·x >= 0 for a in ineqs, e·x = 0 for e in eqs}`.
    pub fn from_inequalities(dim: usize, ineqs: &[Vec<Int>], eqs: &[Vec<Int>]) -> Self {
        let all = with_equalities(ineqs, eqs);
        let (rays, lin) = double_description(dim, &all);
        Self::from_generators(dim, &rays, &lin)
    }

    /// `cone(rays) + span(lineality)`.
    pub fn from_generators(dim: usize, rays: &[Vec<Int>], lineality: &[Vec<Int>]) -> Self {
        // facets are the extreme rays of the dual cone
        let dual_ineqs = with_equalities(rays, lineality);
        let (facets, equations) = double_description(dim, &dual_ineqs);
        // recover an irredundant generating set from the facets
        let primal = with_equalities(&facets, &equations);
        let (prays, plin) = double_description(dim, &primal);
        let lineality = hnf_rows(&plin);
        let mut rays: Vec<Vec<Int>> = prays
            .iter()
            .map(|r| reduce_mod_lineality(r, &lineality))
            .filter(|r| !r.iter().all(Zero::is_zero))
            .collect();
        rays.sort();
        rays.dedup();
        let mut facets: Vec<Vec<Int>> = facets.iter().map(|f| primitive(f)).collect();
        let equations = hnf_rows(&equations);
        facets = facets
            .into_iter()
            .map(|f| reduce_mod_lineality(&f, &equations))
            .filter(|f| !f.iter().all(Zero::is_zero))
            .collect();
        facets.sort();
        facets.dedup();
        RationalCone {
            ambient_dim: dim,
            rays,
            lineality,
            facets,
            equations,
        }
    }

    pub fn full_space(dim: usize) -> Self {
        Self::from_inequalities(dim, &[], &[])
    }

    /// `{y : y·x >= 0 for all x in self}`.
    pub fn dual(&self) -> Self {
        Self::from_inequalities(self.ambient_dim, &self.rays, &self.lineality)
    }

    pub fn dim(&self) -> usize {
        let mut gens = self.rays.clone();
        gens.extend(self.lineality.iter().cloned());
        if gens.is_empty() {
            0
        } else {
            rank_int(&gens)
        }
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.dim() == self.ambient_dim
    }

    pub fn is_pointed(&self) -> bool {
        self.lineality.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.rays.is_empty() && self.lineality.is_empty()
    }

    pub fn contains(&self, x: &[Rat]) -> bool {
        self.facets
            .iter()
            .all(|f| !crate::linalg::dot_rat(&to_rat_vec(f), x).is_negative())
            && self
                .equations
                .iter()
                .all(|e| crate::linalg::dot_rat(&to_rat_vec(e), x).is_zero())
    }

    pub fn contains_int(&self, x: &[Int]) -> bool {
        self.contains(&to_rat_vec(x))
    }

    /// Rays of `self` on which the facet is tight.
    pub fn tight_rays(&self, facet: &[Int]) -> Vec<Vec<Int>> {
        self.rays
            .iter()
            .filter(|r| dot_int(facet, r).is_zero())
            .cloned()
            .collect()
    }

    /// The face cut out by a facet inequality.
    pub fn face(&self, facet: &[Int]) -> RationalCone {
        RationalCone::from_generators(self.ambient_dim, &self.tight_rays(facet), &self.lineality)
    }

    /// A point of the relative interior: the sum of the rays.
    pub fn relative_interior_point(&self) -> Vec<Int> {
        let mut p = vec![Int::zero(); self.ambient_dim];
        for r in &self.rays {
            for (pi, ri) in p.iter_mut().zip(r) {
                *pi += ri;
            }
        }
        p
    }
}
