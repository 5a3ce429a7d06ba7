//! Chamber decomposition of the movable cone.
//!
//! Starting from the nef cone of `h`, chambers are explored breadth first by
//! crossing flopping walls; walls whose divisor is exceptional bound the
//! movable cone and are not crossed. The theorem set is recomputed in every
//! chamber with an interior point as the polarization.

use num_traits::{One, Signed};

use crate::cone::polyhedral::RationalCone;
use crate::cone::positive::PositiveCone;
use crate::cone::weyl::{divisor_from_h2, reflection, Reflection};
use crate::enumeration::{theorem_class, ClassSearch, EnumerationBudget};
use crate::error::{MorikitError, Result};
use crate::linalg::{dot_rat, primitive, primitive_of_rat, rat, to_rat_vec, Int, Rat};
use crate::markman::{CurveClass, DivisorClass, ExtendedAlgebraicLattice};

/// Largest rank of `H²_alg` for which chambers are enumerated.
pub const MAX_CHAMBER_RANK: usize = 4;

/// Default bound on the number of wall crossings and reflections.
pub const DEFAULT_WORD_BOUND: usize = 8;

/// Halvings tried when stepping across a wall.
const MAX_STEP_HALVINGS: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum WallKind {
    /// The divisor proportional to the wall class has an integral reflection.
    Exceptional,
    Flop,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Wall {
    pub class: CurveClass,
    /// Primitive divisor proportional to the class, positive on the chamber.
    pub divisor: DivisorClass,
    /// `divisor` in `H²_alg` coordinates.
    pub h2: Vec<Int>,
    pub kind: WallKind,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Chamber {
    pub cone: RationalCone,
    pub quadric_boundary: bool,
    pub walls: Vec<Wall>,
    pub contains_h: bool,
    /// Primitive integral point of the interior, in `H²_alg` coordinates.
    pub interior_point: Vec<Int>,
    /// Number of wall crossings from the chamber of `h`.
    pub depth: usize,
    pub complete: bool,
}

impl Chamber {
    pub fn contains(&self, positive: &PositiveCone, x: &[Rat]) -> bool {
        self.cone.contains(x) && (!self.quadric_boundary || positive.contains(x))
    }

    /// Strict interior membership.
    pub fn contains_interior(&self, positive: &PositiveCone, x: &[Rat]) -> bool {
        positive.is_interior(x)
            && self
                .cone
                .facets
                .iter()
                .all(|f| dot_rat(&to_rat_vec(f), x).is_positive())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MovableDecomposition {
    pub chambers: Vec<Chamber>,
    /// Reflections in the exceptional walls met, sorted by divisor.
    pub exceptional: Vec<Reflection>,
    /// The exceptional divisors in `H²_alg` coordinates, positive on `h`.
    pub exceptional_h2: Vec<Vec<Int>>,
    /// `{D : (D,e) >= 0}` over the exceptional divisors, intersected with
    /// the positive cone unless `region_quadric` is set.
    pub region: RationalCone,
    pub region_quadric: bool,
    pub positive: PositiveCone,
    pub word_bound: usize,
    pub complete: bool,
}

impl MovableDecomposition {
    pub fn in_region(&self, x: &[Rat]) -> bool {
        self.positive.contains(x) && self.region.contains(x)
    }

    /// Reflect `x` through violated exceptional walls until it lands in the
    /// movable region. Returns the image and the number of reflections, or
    /// `None` if `word_bound` reflections do not suffice.
    pub fn reduce(&self, x: &[Rat]) -> Option<(Vec<Rat>, usize)> {
        let mut p = x.to_vec();
        for step in 0..=self.word_bound {
            let violated = self
                .exceptional
                .iter()
                .zip(&self.exceptional_h2)
                .find(|(_, e)| self.positive.pair(&p, &to_rat_vec(e)).is_negative())
                .map(|(r, _)| r);
            match violated {
                None => return Some((p, step)),
                Some(r) if step < self.word_bound => p = r.apply_h2(&p),
                Some(_) => return None,
            }
        }
        None
    }
}

struct Computed {
    chamber: Chamber,
    flops: Vec<Vec<Int>>,
}

fn compute_chamber(
    model: &ExtendedAlgebraicLattice,
    budget: &EnumerationBudget,
    reference: &[Int],
    positive: &PositiveCone,
    depth: usize,
) -> Result<Computed> {
    let lifted = divisor_from_h2(model, reference);
    let local = model.with_polarization(lifted.coords)?;
    let search = ClassSearch::for_model(&local);
    let es = search.extremal(budget)?;
    let local_pos = search.positive_cone();
    let (cone, quadric_boundary) = local_pos.nef(&es.ray_keys);
    let mut walls = Vec::new();
    let mut flops = Vec::new();
    for (f, key) in es.rays.iter().zip(&es.ray_keys) {
        let divisor = divisor_from_h2(model, key);
        let kind = if reflection(model, &divisor)?.is_some() {
            WallKind::Exceptional
        } else {
            flops.push(key.clone());
            WallKind::Flop
        };
        walls.push(Wall {
            class: theorem_class(&local, f).r,
            divisor,
            h2: key.clone(),
            kind,
        });
    }
    let chamber = Chamber {
        cone,
        quadric_boundary,
        walls,
        contains_h: false,
        interior_point: reference.to_vec(),
        depth,
        complete: es.complete,
    };
    let h = to_rat_vec(positive.h());
    let contains_h = chamber.contains_interior(positive, &h);
    Ok(Computed {
        chamber: Chamber {
            contains_h,
            ..chamber
        },
        flops,
    })
}

/// Step from `z`, a point of the relative interior of the facet
/// `(·, w) = 0`, into the neighbouring chamber.
fn cross(
    model: &ExtendedAlgebraicLattice,
    budget: &EnumerationBudget,
    positive: &PositiveCone,
    z: &[Rat],
    w: &[Int],
    depth: usize,
) -> Result<Option<Computed>> {
    let dir = to_rat_vec(w);
    let mut eps = Rat::one();
    for _ in 0..MAX_STEP_HALVINGS {
        let p: Vec<Rat> = z.iter().zip(&dir).map(|(a, b)| a + &eps * b).collect();
        eps *= rat(1, 2);
        if !positive.is_interior(&p) {
            continue;
        }
        let reference = primitive_of_rat(&p);
        match compute_chamber(model, budget, &reference, positive, depth) {
            Ok(c) if c.chamber.contains(positive, z) => return Ok(Some(c)),
            Ok(_) | Err(MorikitError::PolarizationOnWall(_)) => continue,
            Err(e) => return Err(e),
        }
    }
    Ok(None)
}

/// A point of the relative interior of a wall face inside `Pos°`, preferring
/// the sum of the primitive rays of the face.
fn wall_point(positive: &PositiveCone, face: &RationalCone) -> Option<Vec<Rat>> {
    if face.is_pointed() && !face.is_zero() {
        let z = to_rat_vec(&primitive(&face.relative_interior_point()));
        if positive.is_interior(&z) {
            return Some(z);
        }
    }
    positive
        .meets_interior(face)
        .map(|z| to_rat_vec(&primitive_of_rat(&z)))
}

/// Chambers of the movable cone reachable from the chamber of `h` within
/// `word_bound` wall crossings.
pub fn movable_chambers(
    model: &ExtendedAlgebraicLattice,
    budget: &EnumerationBudget,
    word_bound: usize,
) -> Result<MovableDecomposition> {
    let rank = model.h2_rank();
    if rank > MAX_CHAMBER_RANK {
        return Err(MorikitError::UnsupportedRank {
            rank,
            max: MAX_CHAMBER_RANK,
        });
    }
    let positive = ClassSearch::for_model(model).positive_cone();
    let start = compute_chamber(model, budget, positive.h(), &positive, 0)?;
    let mut complete = true;
    let mut chambers: Vec<Chamber> = vec![start.chamber.clone()];
    let mut queue = std::collections::VecDeque::from([start]);
    while let Some(Computed { chamber, flops }) = queue.pop_front() {
        complete &= chamber.complete;
        for w in &flops {
            let cov = positive.covector_int(w);
            let opposite: Vec<Int> = cov.iter().map(|x| -x).collect();
            let Some(z) = wall_point(&positive, &chamber.cone.face(&cov)) else {
                complete = false;
                continue;
            };
            let known = chambers.iter().any(|c| {
                c.cone != chamber.cone
                    && c.cone.facets.contains(&opposite)
                    && c.contains(&positive, &z)
            });
            if known {
                continue;
            }
            if chamber.depth >= word_bound {
                complete = false;
                continue;
            }
            match cross(model, budget, &positive, &z, w, chamber.depth + 1)? {
                Some(next) if !chambers.iter().any(|c| c.cone == next.chamber.cone) => {
                    chambers.push(next.chamber.clone());
                    queue.push_back(next);
                }
                Some(_) => {}
                None => complete = false,
            }
        }
    }
    chambers.sort_by(|a, b| (a.depth, &a.cone.rays).cmp(&(b.depth, &b.cone.rays)));

    let mut divisors: Vec<DivisorClass> = chambers
        .iter()
        .flat_map(|c| c.walls.iter())
        .filter(|w| w.kind == WallKind::Exceptional)
        .map(|w| w.divisor.clone())
        .collect();
    divisors.sort();
    divisors.dedup();
    let mut exceptional = Vec::new();
    let mut keys = Vec::new();
    for d in &divisors {
        let r = reflection(model, d)?.expect("exceptional walls reflect integrally");
        keys.push(primitive_of_rat(&model.to_h2(d)));
        exceptional.push(r);
    }
    let (region, region_quadric) = positive.nef(&keys);

    Ok(MovableDecomposition {
        chambers,
        exceptional,
        exceptional_h2: keys,
        region,
        region_quadric,
        positive,
        word_bound,
        complete,
    })
}
