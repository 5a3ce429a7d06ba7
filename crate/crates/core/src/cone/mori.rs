//! Assembly of the Mori cone from the positive cone and the extremal
//! negative classes, and of the nef cone as its dual.

use num_traits::Signed;

use crate::cone::polyhedral::RationalCone;
use crate::cone::positive::PositiveCone;
use crate::enumeration::ClassSearch;
use crate::enumeration::{EnumerationBudget, TheoremClass};
use crate::error::{MorikitError, Result};
use crate::linalg::{to_rat_vec, Int, Rat};
use crate::markman::{ClassCoords, CurveClass, ExtendedAlgebraicLattice};

/// The Mori cone `Pos + cone(R_1, …, R_k)` in `H²_alg` coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConeDescription {
    /// Cone spanned by the negative rays, plus the rational generators of the
    /// positive cone when it is polyhedral. Equal to the Mori cone unless
    /// `quadric_boundary` is set.
    pub polyhedral: RationalCone,
    /// Extremal negative rays with their lifts.
    pub rays: Vec<TheoremClass>,
    /// The same rays as primitive integral vectors in `H²_alg` coordinates.
    pub ray_coords: Vec<Vec<Int>>,
    pub positive: PositiveCone,
    pub quadric_boundary: bool,
    pub complete: bool,
    /// Height bound actually searched (may exceed the budget in rank 2).
    pub height_bound: Rat,
}

impl ConeDescription {
    /// Exact membership of a class given in `H²_alg` coordinates.
    pub fn contains(&self, x: &[Rat]) -> bool {
        if !self.quadric_boundary {
            return self.polyhedral.contains(x);
        }
        self.positive.mori_contains(&self.ray_coords, x)
    }

    /// Membership of a curve class given in `Λ_alg` coordinates.
    pub fn contains_class(&self, model: &ExtendedAlgebraicLattice, x: &impl ClassCoords) -> bool {
        self.contains(&model.to_h2(&x.rat_coords()))
    }

    pub fn curve_classes(&self) -> Vec<&CurveClass> {
        self.rays.iter().map(|t| &t.r).collect()
    }
}

/// The nef cone in `H²_alg` coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NefCone {
    /// Equal to the nef cone unless `quadric_boundary` is set, in which case
    /// the nef cone is this cone intersected with the positive cone.
    pub cone: RationalCone,
    pub quadric_boundary: bool,
    pub complete: bool,
    /// The classes whose orthogonal hyperplanes bound the cone.
    pub walls: Vec<CurveClass>,
}

impl NefCone {
    pub fn contains(&self, positive: &PositiveCone, x: &[Rat]) -> bool {
        self.cone.contains(x) && (!self.quadric_boundary || positive.contains(x))
    }
}

/// `{y : y·x >= 0 for all x ∈ C}`.
pub fn dual_cone(c: &RationalCone) -> RationalCone {
    c.dual()
}

pub(crate) fn assemble(
    model: &ExtendedAlgebraicLattice,
    budget: &EnumerationBudget,
) -> Result<(ConeDescription, NefCone)> {
    let search = ClassSearch::for_model(model);
    let es = search.extremal(budget)?;
    let positive = search.positive_cone();
    let (nef, quadric_boundary) = positive.nef(&es.ray_keys);
    let h = to_rat_vec(positive.h());
    if !nef.contains(&h)
        || es
            .ray_keys
            .iter()
            .any(|r| !positive.height(&to_rat_vec(r)).is_positive())
    {
        return Err(MorikitError::PolarizationOutsideNef);
    }
    let rays: Vec<TheoremClass> = es
        .rays
        .iter()
        .map(|f| crate::enumeration::theorem_class(model, f))
        .collect();
    let walls = rays.iter().map(|t| t.r.clone()).collect();
    let mori = ConeDescription {
        polyhedral: positive.mori_polyhedral(&es.ray_keys),
        rays,
        ray_coords: es.ray_keys.clone(),
        positive,
        quadric_boundary,
        complete: es.complete,
        height_bound: es.height_bound.clone(),
    };
    let nef = NefCone {
        cone: nef,
        quadric_boundary,
        complete: es.complete,
        walls,
    };
    Ok((mori, nef))
}

/// The Mori cone: the positive cone plus the extremal negative rays of the
/// theorem set within the budget.
pub fn mori_cone(
    model: &ExtendedAlgebraicLattice,
    budget: &EnumerationBudget,
) -> Result<ConeDescription> {
    Ok(assemble(model, budget)?.0)
}

/// The nef cone `Pos ∩ {D : (D,R) >= 0}` over the Mori rays `R`.
pub fn nef_cone(model: &ExtendedAlgebraicLattice, budget: &EnumerationBudget) -> Result<NefCone> {
    Ok(assemble(model, budget)?.1)
}
