//! Reflections in negative divisor classes and the exceptional classes
//! generating `W_Exc`.

use std::collections::BTreeSet;

use num_traits::{One, Signed, Zero};

use crate::enumeration::{extremal_rays, EnumerationBudget};
use crate::error::{MorikitError, Result};
use crate::lattice::LatticeVector;
use crate::linalg::{mat_vec, mat_vec_int, primitive, primitive_of_rat, rat_int, Int, Rat};
use crate::markman::{DivisorClass, ExtendedAlgebraicLattice};

/// An integral isometry of `Λ_alg` restricting to the reflection
/// `x ↦ x − 2(x,e)/(e,e)·e` on `H²_alg`.
///
/// When that reflection extended by the identity on `v` is integral,
/// `v_sign` is `1`; otherwise the extension acting by `−1` on `v` is used and
/// `v_sign` is `−1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reflection {
    pub e: DivisorClass,
    /// Action on `Λ_alg` coordinates (column vectors).
    pub matrix: Vec<Vec<Int>>,
    pub v_sign: i8,
    /// Action on `H²_alg` coordinates.
    pub h2_matrix: Vec<Vec<Int>>,
}

impl Reflection {
    pub fn apply(&self, x: &LatticeVector) -> LatticeVector {
        LatticeVector(mat_vec_int(&self.matrix, x.coords()))
    }

    pub fn apply_h2(&self, x: &[Rat]) -> Vec<Rat> {
        mat_vec(&crate::linalg::to_rat_matrix(&self.h2_matrix), x)
    }
}

/// `I − 2·w (G w)ᵀ / (w,w)`.
fn reflection_matrix(gram: &[Vec<Int>], w: &[Int]) -> Vec<Vec<Rat>> {
    let gw = mat_vec_int(gram, w);
    let w_sq: Int = w.iter().zip(&gw).map(|(a, b)| a * b).sum();
    let c = Rat::new(Int::from(-2), w_sq);
    (0..w.len())
        .map(|i| {
            (0..w.len())
                .map(|j| {
                    let d = if i == j { Rat::one() } else { Rat::zero() };
                    d + &c * rat_int(&w[i]) * rat_int(&gw[j])
                })
                .collect()
        })
        .collect()
}

fn integral(m: &[Vec<Rat>]) -> Option<Vec<Vec<Int>>> {
    m.iter()
        .map(|r| {
            r.iter()
                .map(|x| x.is_integer().then(|| x.to_integer()))
                .collect()
        })
        .collect()
}

/// The reflection in `e`, if some extension of it to `Λ_alg` is integral.
pub fn reflection(
    model: &ExtendedAlgebraicLattice,
    e: &DivisorClass,
) -> Result<Option<Reflection>> {
    let e_sq = model.pair(&e.coords, &e.coords)?;
    if !e_sq.is_negative() {
        return Err(MorikitError::NonNegativeSquare(e_sq.to_string()));
    }
    let ev = model.pair(&e.coords, model.v())?;
    if !ev.is_zero() {
        return Err(MorikitError::Input(format!(
            "class {} is not orthogonal to v",
            e.coords
        )));
    }
    let e = DivisorClass {
        coords: LatticeVector(primitive(e.coords.coords())),
    };
    let gram = model.lattice().gram();
    let rho_e = reflection_matrix(gram, e.coords.coords());
    let (matrix, v_sign) = if let Some(m) = integral(&rho_e) {
        (m, 1)
    } else {
        let rho_v = reflection_matrix(gram, model.v().coords());
        match integral(&crate::linalg::mat_mul_rat(&rho_v, &rho_e)) {
            Some(m) => (m, -1),
            None => return Ok(None),
        }
    };
    let eh = primitive_of_rat(&model.to_h2(&e));
    let h2 = reflection_matrix(model.h2_gram(), &eh);
    let h2_matrix = integral(&h2).expect("restriction of an integral isometry");
    Ok(Some(Reflection {
        e,
        matrix,
        v_sign,
        h2_matrix,
    }))
}

/// Divisor class with the given `H²_alg` coordinates.
pub(crate) fn divisor_from_h2(model: &ExtendedAlgebraicLattice, c: &[Int]) -> DivisorClass {
    let mut out = vec![Int::zero(); model.rank()];
    for (ci, b) in c.iter().zip(model.h2_basis_vectors()) {
        for (o, bj) in out.iter_mut().zip(b.coords()) {
            *o += ci * bj;
        }
    }
    DivisorClass {
        coords: LatticeVector(out),
    }
}

/// Primitive negative divisors proportional to an enumerated class whose
/// reflection is integral, oriented positively against `h`.
pub fn exceptional_candidates(
    model: &ExtendedAlgebraicLattice,
    budget: &EnumerationBudget,
) -> Result<Vec<DivisorClass>> {
    let ex = extremal_rays(model, budget)?;
    let keys: BTreeSet<Vec<Int>> = ex
        .candidates
        .iter()
        .map(|t| primitive_of_rat(&model.to_h2(&t.r)))
        .collect();
    let mut out = Vec::new();
    for k in keys {
        let e = divisor_from_h2(model, &k);
        if reflection(model, &e)?.is_some() {
            out.push(e);
        }
    }
    out.sort();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{int, int_matrix, ints, rat};

    fn hilbert(n: i64) -> ExtendedAlgebraicLattice {
        ExtendedAlgebraicLattice::from_k3_hilbert(&int_matrix(&[&[2]]), &int(n), &ints(&[1]))
            .unwrap()
    }

    #[test]
    fn delta_reflection_n2() {
        let m = hilbert(2);
        let d = DivisorClass {
            coords: LatticeVector::from_i64(&[1, 0, 1]),
        };
        let r = reflection(&m, &d).unwrap().unwrap();
        assert_eq!(r.v_sign, 1);
        assert_eq!(r.apply(&d.coords), LatticeVector::from_i64(&[-1, 0, -1]));
        assert_eq!(r.apply(m.v()), m.v().clone());
    }

    #[test]
    fn delta_reflection_n3_needs_sign() {
        let m = hilbert(3);
        let d = DivisorClass {
            coords: LatticeVector::from_i64(&[1, 0, 2]),
        };
        // pure reflection: −s ↦ −s + δ̃/2 is not integral
        let pure = reflection_matrix(m.lattice().gram(), d.coords.coords());
        assert_eq!(pure[0][2], rat(-1, 2));
        let r = reflection(&m, &d).unwrap().unwrap();
        assert_eq!(r.v_sign, -1);
        assert_eq!(r.apply(m.v()), m.v().neg());
        assert_eq!(r.apply(&d.coords), d.coords.neg());
    }

    #[test]
    fn flop_wall_is_not_integral() {
        let m = hilbert(2);
        let e = DivisorClass {
            coords: LatticeVector::from_i64(&[-3, 2, -3]),
        };
        assert_eq!(reflection(&m, &e).unwrap(), None);
    }

    #[test]
    fn non_negative_square_rejected() {
        let m = hilbert(2);
        let e = DivisorClass {
            coords: LatticeVector::from_i64(&[0, 1, 0]),
        };
        assert!(matches!(
            reflection(&m, &e),
            Err(MorikitError::NonNegativeSquare(_))
        ));
    }

    #[test]
    fn n2_exceptional_is_delta() {
        let m = hilbert(2)
            .with_polarization(LatticeVector::from_i64(&[-1, 5, -1]))
            .unwrap();
        let b = EnumerationBudget::new(rat(30, 1)).unwrap();
        let ex = exceptional_candidates(&m, &b).unwrap();
        assert_eq!(
            ex,
            vec![DivisorClass {
                coords: LatticeVector::from_i64(&[1, 0, 1])
            }]
        );
    }
}
