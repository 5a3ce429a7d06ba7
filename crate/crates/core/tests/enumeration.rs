use std::collections::BTreeSet;

use morikit::enumeration::{
    box_oracle, enumerate_theorem_set, extremal_rays, k3_pseudoeffective, majorant,
    negative_extremal_rays,
};
use morikit::linalg::{int, int_matrix, ints, rat, Int, Rat};
use morikit::{
    EnumerationBudget, ExtendedAlgebraicLattice, LatticeVector, MorikitError, RationalCone,
    TheoremClass,
};
use num_traits::{Signed, Zero};
use proptest::prelude::*;

fn hilbert(n: i64, ample: &[i64]) -> ExtendedAlgebraicLattice {
    ExtendedAlgebraicLattice::from_k3_hilbert(&int_matrix(&[&[2]]), &int(n), &ints(&[1]))
        .unwrap()
        .with_polarization(LatticeVector::from_i64(ample))
        .unwrap()
}

fn budget(b: i64) -> EnumerationBudget {
    EnumerationBudget::new(rat(b, 1)).unwrap()
}

/// Leading principal minors by fraction-free elimination on a copy.
fn leading_minors(m: &[Vec<Rat>]) -> Vec<Rat> {
    (1..=m.len())
        .map(|k| {
            let mut a: Vec<Vec<Rat>> = m[..k].iter().map(|r| r[..k].to_vec()).collect();
            let mut det = Rat::from_integer(Int::from(1));
            for c in 0..k {
                let Some(p) = (c..k).find(|&r| !a[r][c].is_zero()) else {
                    return Rat::zero();
                };
                if p != c {
                    a.swap(p, c);
                    det = -det;
                }
                det *= a[c][c].clone();
                for r in c + 1..k {
                    let f = &a[r][c] / &a[c][c];
                    for j in c..k {
                        let t = &f * &a[c][j];
                        a[r][j] -= t;
                    }
                }
            }
            det
        })
        .collect()
}

fn quad(m: &[Vec<Rat>], x: &[i64]) -> Rat {
    let mut s = Rat::zero();
    for (i, xi) in x.iter().enumerate() {
        for (j, xj) in x.iter().enumerate() {
            s += &m[i][j] * Rat::from_integer(Int::from(xi * xj));
        }
    }
    s
}

fn key(t: &TheoremClass) -> Vec<Int> {
    t.a.coords().to_vec()
}

fn in_box(t: &TheoremClass, c: i64) -> bool {
    t.a.coords().iter().all(|x| x.abs() <= Int::from(c))
}

/// Enumerated classes inside the box against oracle classes below the height
/// bound with negative square.
fn oracle_agrees(m: &ExtendedAlgebraicLattice, b: i64, c: u32) {
    let en: BTreeSet<Vec<Int>> = enumerate_theorem_set(m, &budget(b))
        .iter()
        .filter(|t| in_box(t, c.into()))
        .map(key)
        .collect();
    let or: BTreeSet<Vec<Int>> = box_oracle(m, c)
        .unwrap()
        .iter()
        .filter(|t| t.r.q.is_negative() && t.height <= rat(b, 1))
        .map(key)
        .collect();
    assert!(!or.is_empty());
    assert_eq!(en, or);
}

#[test]
fn oracle_equivalence_rank_three() {
    oracle_agrees(&hilbert(2, &[-1, 5, -1]), 30, 6);
    oracle_agrees(&hilbert(3, &[-1, 5, -2]), 30, 6);
    oracle_agrees(&hilbert(5, &[-1, 9, -4]), 40, 6);
    oracle_agrees(&hilbert(2, &[-1, 3, -1]), 20, 6);
}

#[test]
fn majorant_is_positive_definite() {
    for (n, ample) in [(2, [-1, 5, -1]), (3, [-1, 5, -2]), (5, [-1, 9, -4])] {
        let m = hilbert(n, &ample);
        let maj = majorant(&m);
        assert!(leading_minors(&maj).iter().all(Signed::is_positive));
        let v: Vec<i64> = m
            .v()
            .coords()
            .iter()
            .map(|x| i64::try_from(x).unwrap())
            .collect();
        assert_eq!(quad(&maj, &v), Rat::from_integer(m.v_sq().clone()));
    }
}

#[test]
fn majorant_rank_two_is_identity_form() {
    let m = ExtendedAlgebraicLattice::from_raw(
        int_matrix(&[&[2, 0], &[0, 2]]),
        LatticeVector::from_i64(&[1, 0]),
        LatticeVector::from_i64(&[0, 1]),
    )
    .unwrap();
    assert_eq!(
        majorant(&m),
        vec![vec![rat(2, 1), rat(0, 1)], vec![rat(0, 1), rat(2, 1)]]
    );
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn majorant_dominates_negative_squares(x in proptest::collection::vec(-40i64..=40, 3)) {
        let m = hilbert(3, &[-1, 5, -2]);
        let maj = majorant(&m);
        let xv = LatticeVector::from_i64(&x);
        let sq = Rat::from_integer(m.pair(&xv, &xv).unwrap());
        let mx = quad(&maj, &x);
        prop_assert!(!mx.is_negative());
        if sq.is_negative() {
            prop_assert!(mx >= -sq);
        }
    }
}

#[test]
fn theorem_set_fixture() {
    let m = hilbert(2, &[-1, 5, -1]);
    let set = enumerate_theorem_set(&m, &budget(30));
    let find = |a: &[i64]| {
        set.iter()
            .find(|t| t.a == LatticeVector::from_i64(a))
            .cloned()
    };
    let r = find(&[1, 0, 0]).unwrap();
    assert_eq!(
        (r.a_sq.clone(), r.av.clone(), r.height.clone()),
        (int(0), int(1), rat(1, 1))
    );
    assert_eq!(r.r.coords, vec![rat(1, 2), rat(0, 1), rat(1, 2)]);
    assert_eq!(r.r.q, rat(-1, 2));
    let d = find(&[1, 0, 1]).unwrap();
    assert_eq!(
        (d.a_sq.clone(), d.av.clone(), d.r.q.clone()),
        (int(-2), int(0), rat(-2, 1))
    );
    for t in &set {
        assert!(t.height.is_positive() && t.height <= rat(30, 1));
    }
    let keys: Vec<(Rat, Vec<Int>)> = set.iter().map(|t| (t.height.clone(), key(t))).collect();
    let mut sorted = keys.clone();
    sorted.sort();
    assert_eq!(keys, sorted);
    assert_eq!(set, enumerate_theorem_set(&m, &budget(30)));
}

#[test]
fn tiny_budget_yields_nothing() {
    let m = hilbert(2, &[-1, 5, -1]);
    assert!(enumerate_theorem_set(&m, &EnumerationBudget::new(rat(1, 100)).unwrap()).is_empty());
    assert!(matches!(
        EnumerationBudget::new(rat(0, 1)),
        Err(MorikitError::BadBudget)
    ));
}

#[test]
fn length_bound_holds_and_is_attained() {
    let models = [
        (2, hilbert(2, &[-1, 5, -1])),
        (3, hilbert(3, &[-1, 5, -2])),
        (5, hilbert(5, &[-1, 9, -4])),
    ];
    let mut attained = false;
    for (n, m) in &models {
        let floor = rat(-(n + 3), 2);
        for t in enumerate_theorem_set(m, &budget(60)) {
            assert!(t.r.q >= floor);
            let identity =
                Rat::from_integer(t.a_sq.clone()) - Rat::new(&t.av * &t.av, Int::from(2 * n - 2));
            assert_eq!(identity, t.r.q);
            assert!(identity >= rat(-2, 1) - rat(n - 1, 2));
            if t.a_sq == int(-2) && t.av.abs() == int(n - 1) {
                assert_eq!(t.r.q, floor);
                attained = true;
            }
        }
    }
    assert!(attained);
}

#[test]
fn two_extremal_rays_for_n2() {
    let m = hilbert(2, &[-1, 5, -1]);
    let rays = negative_extremal_rays(&m, &budget(30)).unwrap();
    assert_eq!(rays.len(), 2);
    assert_eq!(rays[0].coords, vec![rat(1, 2), rat(0, 1), rat(1, 2)]);
    assert_eq!(rays[0].q, rat(-1, 2));
    assert_eq!(rays[1].q, rat(-5, 2));
    let ex = extremal_rays(&m, &budget(30)).unwrap();
    assert!(ex.complete);
}

#[test]
fn n5_rays_respect_the_length_bound() {
    let m = hilbert(5, &[-1, 9, -4]);
    let rays = negative_extremal_rays(&m, &budget(80)).unwrap();
    assert_eq!(
        rays.iter().map(|r| r.q.clone()).collect::<Vec<_>>(),
        vec![rat(-1, 8), rat(-5, 2)]
    );
    assert!(rays.iter().all(|r| r.q >= rat(-4, 1)));
}

#[test]
fn rank_one_divisor_lattice_has_no_rays() {
    let m = ExtendedAlgebraicLattice::from_raw(
        int_matrix(&[&[2, 0], &[0, 2]]),
        LatticeVector::from_i64(&[1, 0]),
        LatticeVector::from_i64(&[0, 1]),
    )
    .unwrap();
    assert!(negative_extremal_rays(&m, &budget(20)).unwrap().is_empty());
}

#[test]
fn box_oracle_contract() {
    let m = hilbert(2, &[-1, 5, -1]);
    assert!(matches!(
        box_oracle(&m, 0),
        Err(MorikitError::BadCoeffBound)
    ));
    let all = box_oracle(&m, 3).unwrap();
    assert!(all.iter().all(|t| !t.a.is_zero() && t.height.is_positive()));
}

/// Extremal rays of the cone spanned by all `D` in a box with `D² ≥ −2`,
/// `(D,h) > 0`.
fn k3_box_rays(gram: &[&[i64]], h: &[i64], c: i64) -> Vec<Vec<Int>> {
    let g = int_matrix(gram);
    let mut gens = Vec::new();
    for a in -c..=c {
        for b in -c..=c {
            let x = [Int::from(a), Int::from(b)];
            let sq = &g[0][0] * &x[0] * &x[0]
                + Int::from(2) * &g[0][1] * &x[0] * &x[1]
                + &g[1][1] * &x[1] * &x[1];
            let hx = (&g[0][0] * &x[0] + &g[0][1] * &x[1]) * Int::from(h[0])
                + (&g[1][0] * &x[0] + &g[1][1] * &x[1]) * Int::from(h[1]);
            if sq >= Int::from(-2) && hx.is_positive() {
                gens.push(x.to_vec());
            }
        }
    }
    RationalCone::from_generators(2, &gens, &[]).rays
}

#[test]
fn k3_baseline() {
    let b = budget(20);
    let one = k3_pseudoeffective(&int_matrix(&[&[2]]), &ints(&[1]), &b).unwrap();
    assert_eq!(one.rays, vec![ints(&[1])]);
    assert!(one.complete);

    let diag = k3_pseudoeffective(&int_matrix(&[&[2, 0], &[0, -2]]), &ints(&[1, 0]), &b).unwrap();
    assert_eq!(diag.rays, vec![ints(&[1, -1]), ints(&[1, 1])]);
    assert!(diag.negative_rays.is_empty() && diag.complete);
    assert_eq!(diag.rays, k3_box_rays(&[&[2, 0], &[0, -2]], &[1, 0], 50));

    let irr = k3_pseudoeffective(&int_matrix(&[&[2, 1], &[1, -2]]), &ints(&[1, 0]), &b).unwrap();
    assert_eq!(irr.rays, vec![ints(&[0, 1]), ints(&[1, -1])]);
    assert!(irr.complete && !irr.quadric_boundary);
    assert_eq!(irr.rays, k3_box_rays(&[&[2, 1], &[1, -2]], &[1, 0], 50));

    let bad = k3_pseudoeffective(&int_matrix(&[&[-2]]), &ints(&[1]), &b);
    assert!(matches!(bad, Err(MorikitError::WrongSignature { .. })));
}
