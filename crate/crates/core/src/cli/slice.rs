//! Affine slices `{x : (x, D) = 1}` of cones in `H²_alg`, in coordinates of a
//! basis of `D⊥`, for external plotting.

use num_traits::{Signed, ToPrimitive, Zero};
use serde_json::{json, Value};

use super::report::{int_rows, rat, rats};
use crate::cone::{PositiveCone, RationalCone};
use crate::linalg::{integer_kernel, inverse_rat, mat_vec, mat_vec_int, to_rat_vec, Int, Rat};

/// Denominator used for the sampled points of the round boundary.
const SAMPLE_DENOMINATOR: i64 = 1_000_000;

pub struct Frame {
    normal: Vec<Int>,
    normal_sq: Rat,
    basis: Vec<Vec<Int>>,
    basis_gram_inv: Vec<Vec<Rat>>,
    basis_gram: Vec<Vec<Rat>>,
}

impl Frame {
    /// `None` unless `normal` is in the interior of the positive cone.
    pub fn new(positive: &PositiveCone, normal: &[Int]) -> Option<Frame> {
        let n = to_rat_vec(normal);
        if !positive.is_interior(&n) {
            return None;
        }
        let cov = mat_vec_int(positive.gram(), normal);
        let basis = integer_kernel(&[cov], normal.len());
        let basis_gram: Vec<Vec<Rat>> = basis
            .iter()
            .map(|x| {
                basis
                    .iter()
                    .map(|y| positive.pair(&to_rat_vec(x), &to_rat_vec(y)))
                    .collect()
            })
            .collect();
        let basis_gram_inv = if basis.is_empty() {
            Vec::new()
        } else {
            inverse_rat(&basis_gram)?
        };
        Some(Frame {
            normal: normal.to_vec(),
            normal_sq: positive.square(&n),
            basis,
            basis_gram_inv,
            basis_gram,
        })
    }

    /// Plane coordinates of `x / (x, D)`, or `None` if `(x, D) <= 0`.
    fn project(&self, positive: &PositiveCone, x: &[Int]) -> Option<Vec<Rat>> {
        let xr = to_rat_vec(x);
        let s = positive.pair(&xr, &to_rat_vec(&self.normal));
        if !s.is_positive() {
            return None;
        }
        let p: Vec<Rat> = xr.iter().map(|c| c / &s).collect();
        let pairings: Vec<Rat> = self
            .basis
            .iter()
            .map(|b| positive.pair(&to_rat_vec(b), &p))
            .collect();
        Some(mat_vec(&self.basis_gram_inv, &pairings))
    }

    pub fn describe(&self) -> Value {
        json!({
            "normal": super::report::ints(&self.normal),
            "basis": int_rows(&self.basis),
            "origin": rats(&self.normal.iter().map(|c| Rat::from(c.clone()) / &self.normal_sq).collect::<Vec<_>>()),
        })
    }

    /// The section of `cone`. Vertices are listed in boundary order when the
    /// plane is two dimensional and the section is a bounded polygon.
    pub fn cone(&self, positive: &PositiveCone, cone: &RationalCone) -> Value {
        let mut verts: Vec<(Vec<Int>, Vec<Rat>)> = cone
            .rays
            .iter()
            .filter_map(|r| self.project(positive, r).map(|p| (r.clone(), p)))
            .collect();
        let bounded = cone.lineality.is_empty() && verts.len() == cone.rays.len();
        if bounded && self.basis.len() == 2 && verts.len() > 2 {
            verts = cyclic_order(cone, verts);
        }
        json!({
            "bounded": bounded,
            "vertices": Value::Array(verts.iter().map(|(_, p)| rats(p)).collect()),
        })
    }

    /// The section of the positive cone: `{t : tᵀ G t >= −1/D²}` with `G`
    /// negative definite, plus rational points near its boundary.
    pub fn positive(&self, samples: usize) -> Value {
        let rhs = -(Rat::from(Int::from(1)) / &self.normal_sq);
        let g: Vec<Vec<f64>> = self
            .basis_gram
            .iter()
            .map(|r| r.iter().map(|x| x.to_f64().unwrap_or(0.0)).collect())
            .collect();
        let c = 1.0 / self.normal_sq.to_f64().unwrap_or(1.0);
        let pts: Vec<Vec<f64>> = match g.len() {
            1 => {
                let t = (c / -g[0][0]).sqrt();
                vec![vec![-t], vec![t]]
            }
            2 => {
                // −G = L Lᵀ
                let l11 = (-g[0][0]).sqrt();
                let l21 = -g[1][0] / l11;
                let l22 = (-g[1][1] - l21 * l21).sqrt();
                (0..samples)
                    .map(|k| {
                        let th = std::f64::consts::TAU * k as f64 / samples as f64;
                        let (u0, u1) = (th.cos() * c.sqrt(), th.sin() * c.sqrt());
                        // solve Lᵀ t = u
                        let t1 = u1 / l22;
                        let t0 = (u0 - l21 * t1) / l11;
                        vec![t0, t1]
                    })
                    .collect()
            }
            _ => Vec::new(),
        };
        let approx: Vec<Value> = pts
            .iter()
            .map(|p| {
                let q: Vec<Rat> = p
                    .iter()
                    .map(|x| {
                        Rat::new(
                            Int::from((x * SAMPLE_DENOMINATOR as f64).round() as i64),
                            Int::from(SAMPLE_DENOMINATOR),
                        )
                    })
                    .collect();
                rats(&q)
            })
            .collect();
        json!({
            "gram": Value::Array(self.basis_gram.iter().map(|r| rats(r)).collect()),
            "rhs": rat(&rhs),
            "samples": approx,
        })
    }
}

/// Orders the rays of a pointed 3-dimensional cone around its boundary using
/// the facet incidences.
fn cyclic_order(
    cone: &RationalCone,
    verts: Vec<(Vec<Int>, Vec<Rat>)>,
) -> Vec<(Vec<Int>, Vec<Rat>)> {
    let k = verts.len();
    let incident = |i: usize, j: usize| {
        cone.facets.iter().any(|f| {
            let on = |r: &[Int]| crate::linalg::dot_int(f, r).is_zero();
            on(&verts[i].0) && on(&verts[j].0)
        })
    };
    let mut order = vec![0usize];
    let mut used = vec![false; k];
    used[0] = true;
    while order.len() < k {
        let last = *order.last().expect("non-empty");
        match (0..k).find(|&j| !used[j] && incident(last, j)) {
            Some(j) => {
                used[j] = true;
                order.push(j);
            }
            None => return verts,
        }
    }
    order.into_iter().map(|i| verts[i].clone()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{int_matrix, ints};

    #[test]
    fn square_section_is_cyclic() {
        let pos = PositiveCone::new(
            int_matrix(&[&[2, 0, 0], &[0, -2, 0], &[0, 0, -2]]),
            ints(&[1, 0, 0]),
        );
        let f = Frame::new(&pos, &ints(&[1, 0, 0])).unwrap();
        let c = RationalCone::from_generators(
            3,
            &int_matrix(&[&[2, 1, 1], &[2, -1, -1], &[2, 1, -1], &[2, -1, 1]]),
            &[],
        );
        let v = f.cone(&pos, &c);
        assert_eq!(v["bounded"], json!(true));
        let verts = v["vertices"].as_array().unwrap();
        assert_eq!(verts.len(), 4);
        // consecutive vertices differ in exactly one coordinate
        for i in 0..4 {
            let a = &verts[i];
            let b = &verts[(i + 1) % 4];
            let diff = (0..2).filter(|&j| a[j] != b[j]).count();
            assert_eq!(diff, 1);
        }
        assert!(Frame::new(&pos, &ints(&[0, 1, 0])).is_none());
    }
}
