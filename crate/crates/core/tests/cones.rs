use morikit::cone::{
    dual_cone, exceptional_candidates, mori_cone, movable_chambers, nef_cone, reflection,
    MovableDecomposition, DEFAULT_WORD_BOUND,
};
use morikit::linalg::{int, int_matrix, ints, mat_mul_int, rat, to_rat_vec, transpose, Int, Rat};
use morikit::{
    DivisorClass, EnumerationBudget, ExtendedAlgebraicLattice, LatticeVector, MorikitError,
    RationalCone,
};
use num_traits::Signed;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn hilbert(pic: &[&[i64]], n: i64, h_k3: &[i64], ample: &[i64]) -> ExtendedAlgebraicLattice {
    ExtendedAlgebraicLattice::from_k3_hilbert(&int_matrix(pic), &int(n), &ints(h_k3))
        .unwrap()
        .with_polarization(LatticeVector::from_i64(ample))
        .unwrap()
}

fn n2() -> ExtendedAlgebraicLattice {
    hilbert(&[&[2]], 2, &[1], &[-1, 5, -1])
}

fn budget(b: i64) -> EnumerationBudget {
    EnumerationBudget::new(rat(b, 1)).unwrap()
}

fn random_cone(rng: &mut ChaCha8Rng) -> RationalCone {
    let dim = rng.gen_range(2..=5);
    let k = rng.gen_range(1..=dim + 3);
    let gens: Vec<Vec<Int>> = (0..k)
        .map(|_| {
            (0..dim)
                .map(|_| Int::from(rng.gen_range(-4i64..=4)))
                .collect()
        })
        .collect();
    RationalCone::from_generators(dim, &gens, &[])
}

#[test]
fn double_dual_is_identity() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..100 {
        let c = random_cone(&mut rng);
        let d = dual_cone(&c);
        for r in &c.rays {
            for f in &d.rays {
                let p: Int = r.iter().zip(f).map(|(a, b)| a * b).sum();
                assert!(!p.is_negative());
            }
        }
        assert_eq!(dual_cone(&d), c);
    }
}

#[test]
fn dual_examples() {
    let orthant =
        RationalCone::from_generators(3, &int_matrix(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]), &[]);
    assert_eq!(dual_cone(&orthant), orthant);
    let ray = RationalCone::from_generators(2, &[ints(&[1, 0])], &[]);
    let half = dual_cone(&ray);
    assert_eq!(half.facets, vec![ints(&[1, 0])]);
    assert_eq!(half.lineality.len(), 1);
    assert!(half.contains(&[rat(0, 1), rat(-3, 1)]) && !half.contains(&[rat(-1, 1), rat(0, 1)]));
}

#[test]
fn double_description_is_consistent() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..100 {
        let c = random_cone(&mut rng);
        for f in &c.facets {
            let tight = c.tight_rays(f);
            assert!(tight.len() + c.lineality.len() + 1 >= c.dim() || c.dim() <= 1);
            for r in &c.rays {
                let p: Int = r.iter().zip(f).map(|(a, b)| a * b).sum();
                assert!(!p.is_negative());
            }
        }
        let again = RationalCone::from_inequalities(c.ambient_dim, &c.facets, &c.equations);
        assert_eq!(again, c);
    }
}

/// `Mᵀ G M = G`, `M² = I`, `M e = −e`, `M v = ±v`, `M` fixes `{e, v}⊥`.
fn check_reflection(m: &ExtendedAlgebraicLattice, e: &DivisorClass) {
    let r = reflection(m, e).unwrap().expect("integral");
    let g = m.lattice().gram().to_vec();
    let mt = transpose(&r.matrix);
    assert_eq!(mat_mul_int(&mat_mul_int(&mt, &g), &r.matrix), g);
    let id: Vec<Vec<Int>> = (0..g.len())
        .map(|i| (0..g.len()).map(|j| Int::from(i64::from(i == j))).collect())
        .collect();
    assert_eq!(mat_mul_int(&r.matrix, &r.matrix), id);
    assert_eq!(r.apply(&e.coords), e.coords.neg());
    let v = m.v();
    let sv = if r.v_sign == 1 { v.clone() } else { v.neg() };
    assert_eq!(&r.apply(v), &sv);
    let perp = m
        .lattice()
        .orthogonal_complement(&[e.coords.clone(), v.clone()])
        .unwrap();
    assert_eq!(perp.len(), g.len() - 2);
    for x in &perp {
        assert_eq!(&r.apply(x), x);
    }
}

#[test]
fn reflection_suite() {
    let models = [
        n2(),
        hilbert(&[&[2]], 3, &[1], &[-1, 5, -2]),
        hilbert(&[&[2]], 5, &[1], &[-1, 9, -4]),
        hilbert(&[&[4]], 2, &[1], &[-1, 5, -1]),
        hilbert(&[&[2, 0], &[0, -2]], 2, &[1, 0], &[-1, 7, 1, -1]),
    ];
    let mut checked = 0;
    for m in &models {
        let b = EnumerationBudget::default_for(m);
        for e in exceptional_candidates(m, &b).unwrap() {
            check_reflection(m, &e);
            checked += 1;
        }
    }
    assert!(checked >= models.len());
}

#[test]
fn reflection_examples() {
    let m = n2();
    let delta = DivisorClass {
        coords: LatticeVector::from_i64(&[1, 0, 1]),
    };
    assert_eq!(reflection(&m, &delta).unwrap().unwrap().v_sign, 1);
    let flop = DivisorClass {
        coords: LatticeVector::from_i64(&[-3, 2, -3]),
    };
    assert!(reflection(&m, &flop).unwrap().is_none());
    let hs = DivisorClass {
        coords: LatticeVector::from_i64(&[0, 1, 0]),
    };
    assert!(matches!(
        reflection(&m, &hs),
        Err(MorikitError::NonNegativeSquare(_))
    ));
    let m3 = hilbert(&[&[2]], 3, &[1], &[-1, 5, -2]);
    let d3 = DivisorClass {
        coords: LatticeVector::from_i64(&[1, 0, 2]),
    };
    assert_eq!(reflection(&m3, &d3).unwrap().unwrap().v_sign, -1);
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let r = reflection(&m, &delta).unwrap().unwrap();
    for _ in 0..100 {
        let x = LatticeVector::new(
            (0..3)
                .map(|_| Int::from(rng.gen_range(-50i64..=50)))
                .collect(),
        );
        assert_eq!(r.apply(&r.apply(&x)), x);
    }
}

#[test]
fn exceptional_candidates_examples() {
    let ex = exceptional_candidates(&n2(), &budget(30)).unwrap();
    assert_eq!(
        ex,
        vec![DivisorClass {
            coords: LatticeVector::from_i64(&[1, 0, 1])
        }]
    );
    let rank_two = ExtendedAlgebraicLattice::from_raw(
        int_matrix(&[&[2, 0], &[0, 2]]),
        LatticeVector::from_i64(&[1, 0]),
        LatticeVector::from_i64(&[0, 1]),
    )
    .unwrap();
    assert!(exceptional_candidates(&rank_two, &budget(10))
        .unwrap()
        .is_empty());
}

fn random_positive(rng: &mut ChaCha8Rng, d: &MovableDecomposition) -> Vec<Rat> {
    let dim = d.positive.dim();
    loop {
        let p: Vec<Rat> = (0..dim)
            .map(|_| {
                Rat::new(
                    Int::from(rng.gen_range(-400i64..=400)),
                    Int::from(rng.gen_range(1i64..=20)),
                )
            })
            .collect();
        if d.positive.is_interior(&p) {
            return p;
        }
    }
}

#[test]
fn fundamental_domain_n2() {
    let m = n2();
    let d = movable_chambers(&m, &budget(30), DEFAULT_WORD_BOUND).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(19);
    for _ in 0..200 {
        let p = random_positive(&mut rng, &d);
        let (img, steps) = d.reduce(&p).unwrap();
        assert!(steps <= d.word_bound);
        assert!(d.in_region(&img));
        // the only exceptional wall is δ̃⊥, so the image is (x, −|y|)
        assert_eq!(img, vec![p[0].clone(), -p[1].abs()]);
        if d.in_region(&p) {
            assert_eq!((img, steps), (p, 0));
        }
    }
}

fn check_tiling(d: &MovableDecomposition, seed: u64, samples: usize) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut inside = 0;
    while inside < samples {
        let p = random_positive(&mut rng, d);
        if !d.in_region(&p) {
            continue;
        }
        inside += 1;
        let closed = d
            .chambers
            .iter()
            .filter(|c| c.contains(&d.positive, &p))
            .count();
        let open = d
            .chambers
            .iter()
            .filter(|c| c.contains_interior(&d.positive, &p))
            .count();
        assert!(closed >= 1, "{p:?} not covered");
        assert!(open <= 1, "{p:?} inside two chambers");
    }
}

#[test]
fn chambers_tile_the_movable_region() {
    let d2 = movable_chambers(&n2(), &budget(30), DEFAULT_WORD_BOUND).unwrap();
    assert_eq!(d2.chambers.len(), 2);
    check_tiling(&d2, 23, 500);

    let m5 = hilbert(&[&[2]], 5, &[1], &[-1, 9, -4]);
    let d5 = movable_chambers(
        &m5,
        &EnumerationBudget::default_for(&m5),
        DEFAULT_WORD_BOUND,
    )
    .unwrap();
    assert!(d5.complete);
    assert_eq!(d5.chambers.len(), 5);
    check_tiling(&d5, 29, 500);

    let m3 = hilbert(&[&[2, 0], &[0, -2]], 2, &[1, 0], &[-1, 7, 1, -1]);
    let d3 = movable_chambers(
        &m3,
        &EnumerationBudget::default_for(&m3),
        DEFAULT_WORD_BOUND,
    )
    .unwrap();
    assert_eq!(d3.chambers.len(), 3);
    check_tiling(&d3, 31, 500);
}

#[test]
fn nef_chamber_matches_nef_cone() {
    let models = [
        n2(),
        hilbert(&[&[2]], 3, &[1], &[-1, 5, -2]),
        hilbert(&[&[2]], 5, &[1], &[-1, 9, -4]),
        hilbert(&[&[4]], 2, &[1], &[-1, 5, -1]),
        hilbert(&[&[2, 0], &[0, -2]], 2, &[1, 0], &[-1, 7, 1, -1]),
    ];
    for m in &models {
        let b = EnumerationBudget::default_for(m);
        let nef = nef_cone(m, &b).unwrap();
        let mori = mori_cone(m, &b).unwrap();
        let d = movable_chambers(m, &b, DEFAULT_WORD_BOUND).unwrap();
        let with_h: Vec<_> = d.chambers.iter().filter(|c| c.contains_h).collect();
        assert_eq!(with_h.len(), 1);
        assert_eq!(with_h[0].cone, nef.cone);
        let walls: Vec<Vec<Int>> = mori
            .polyhedral
            .rays
            .iter()
            .map(|r| mori.positive.covector_int(r))
            .collect();
        for f in &nef.cone.facets {
            assert!(walls.contains(f));
        }
        for dr in &nef.cone.rays {
            for r in &mori.ray_coords {
                assert!(!mori
                    .positive
                    .pair(&to_rat_vec(dr), &to_rat_vec(r))
                    .is_negative());
            }
        }
        let h = to_rat_vec(mori.positive.h());
        assert!(nef.contains(&mori.positive, &h));
        assert!(mori.contains(&h));
        let minus: Vec<Rat> = h.iter().map(|x| -x).collect();
        assert!(!mori.contains(&minus));
        for r in &mori.ray_coords {
            assert!(mori.contains(&to_rat_vec(r)));
        }
    }
}

#[test]
fn rank_two_without_walls_is_the_positive_cone() {
    // a1² = 3a2² − 1 has no solutions, so no class has q in [−2, 0)
    let plane = ExtendedAlgebraicLattice::from_raw(
        int_matrix(&[&[2, 0, 0], &[0, 2, 0], &[0, 0, -6]]),
        LatticeVector::from_i64(&[1, 0, 0]),
        LatticeVector::from_i64(&[0, 1, 0]),
    )
    .unwrap();
    let d = movable_chambers(&plane, &budget(20), DEFAULT_WORD_BOUND).unwrap();
    assert_eq!(d.chambers.len(), 1);
    let c = &d.chambers[0];
    assert!(c.walls.is_empty() && c.quadric_boundary && c.contains_h);
    assert!(d.complete && d.exceptional.is_empty());
    let h = to_rat_vec(d.positive.h());
    assert!(c.contains(&d.positive, &h));
    let outside: Vec<Rat> = h.iter().map(|x| -x).collect();
    assert!(!c.contains(&d.positive, &outside));
}
