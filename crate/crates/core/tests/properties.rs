use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

use gkz_core::exactla::{dot, ints, kernel_basis, solve_particular, square_inverse, IntMatrix, RatMatrix};
use gkz_core::gorcone::{check_preconditions, dual_generators, gorenstein_report, splitting_pattern_holds};
use gkz_core::gseries::{
    build_series, enumerate_support, estimate_holds, gamma_coefficient, l1_norm, support_lemma_holds, verify_series,
    CoefficientEngine, Status,
};
use gkz_core::polycone::{chambers, RationalCone};
use gkz_core::srring::GradedAlgebra;
use gkz_core::triang::{enumerate_regular, PointConfiguration, Simplex, Triangulation};

fn pentagon() -> PointConfiguration {
    PointConfiguration::from_rows(&[vec![1, 1, 1, 1, 1, 1], vec![0, 1, -1, 0, 1, 0], vec![1, 1, 0, 0, 0, -1]]).unwrap()
}

fn all_triangulations() -> (PointConfiguration, Vec<Triangulation>) {
    let cfg = pentagon();
    let e = enumerate_regular(&cfg, 0).unwrap();
    (cfg, e.triangulations)
}

fn star(cfg: &PointConfiguration) -> Triangulation {
    let s: Vec<Simplex> = [[1, 2, 4], [1, 3, 4], [2, 4, 5], [3, 4, 6], [4, 5, 6]]
        .iter()
        .map(|i| Simplex::from_one_based(i).unwrap())
        .collect();
    Triangulation::from_maximal(cfg, &s).unwrap()
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn matrix_strategy(rows: std::ops::RangeInclusive<usize>, cols: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = Vec<Vec<i64>>> {
    (rows, cols).prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-3i64..=3, c), r))
}

fn product_box(n: usize, lo: i64, hi: i64) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out.into_iter().flat_map(|p| (lo..=hi).map(move |x| [p.clone(), vec![x]].concat())).collect();
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn kernel_rows_annihilate(rows in matrix_strategy(1..=3, 2..=5)) {
        let a = IntMatrix::from_rows(&rows);
        let k = kernel_basis(&a);
        for r in 0..k.rows() {
            prop_assert!(a.mul_vec(k.row(r)).unwrap().iter().all(Zero::is_zero));
        }
        prop_assert_eq!(k.rows() + a.rank(), a.cols());
    }

    #[test]
    fn kernel_is_saturated(rows in matrix_strategy(1..=2, 3..=4)) {
        let a = IntMatrix::from_rows(&rows);
        let k = kernel_basis(&a);
        prop_assume!(k.rows() > 0);
        let kt = k.transpose();
        for l in product_box(a.cols(), -3, 3) {
            let l = ints(&l);
            if a.mul_vec(&l).unwrap().iter().all(Zero::is_zero) {
                prop_assert!(solve_particular(&kt, &l).is_ok(), "{:?} not in the span", l);
            }
        }
    }

    #[test]
    fn inverse_times_matrix_is_identity(rows in matrix_strategy(3..=3, 3..=3)) {
        let m = IntMatrix::from_rows(&rows);
        prop_assume!(!m.det().unwrap().is_zero());
        let (inv, det) = square_inverse(&m).unwrap();
        prop_assert_eq!(det, m.det().unwrap());
        prop_assert_eq!(inv.mul(&m.to_rat()), RatMatrix::identity(3));
    }

    #[test]
    fn particular_solution_has_zero_residual(rows in matrix_strategy(1..=3, 3..=5), seed in prop::collection::vec(-4i64..=4, 5)) {
        let a = IntMatrix::from_rows(&rows);
        let x = ints(&seed[..a.cols()]);
        let beta = a.mul_vec(&x).unwrap();
        let g = solve_particular(&a, &beta).unwrap();
        prop_assert_eq!(a.mul_vec(&g).unwrap(), beta);
    }

    #[test]
    fn double_dual_keeps_rays(gens in prop::collection::vec(prop::collection::vec(-3i64..=3, 3), 1..=5)) {
        let gens: Vec<Vec<BigInt>> = gens.iter().map(|g| ints(g)).collect();
        let c = RationalCone::from_integer_generators(3, &gens).unwrap();
        for g in c.generators() {
            for f in c.inequalities() {
                prop_assert!(!dot(&g, &f).is_negative());
            }
        }
        let twice = c.dualize().dualize();
        let mut lhs = c.generators();
        let mut rhs = twice.generators();
        lhs.sort();
        rhs.sort();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn membership_matches_small_combinations(
        gens in prop::collection::vec(prop::collection::vec(-2i64..=2, 3), 1..=3),
        x in prop::collection::vec(-3i64..=3, 3),
    ) {
        let gens: Vec<Vec<BigInt>> = gens.iter().map(|g| ints(g)).collect();
        let c = RationalCone::from_integer_generators(3, &gens).unwrap();
        let x = ints(&x);
        let found = product_box(gens.len(), 0, 6).iter().any(|coef| {
            (0..3).all(|i| {
                let s: BigInt = gens.iter().zip(coef).map(|(g, k)| &g[i] * BigInt::from(*k)).sum();
                s == &x[i] * BigInt::from(2)
            })
        });
        if found {
            prop_assert!(c.contains_integer(&x));
        }
        if !c.contains_integer(&x) {
            prop_assert!(!found);
        }
    }

    #[test]
    fn central_chambers_closed_under_negation(vs in prop::collection::vec(prop::collection::vec(-2i64..=2, 3), 1..=5)) {
        let vs: Vec<Vec<BigInt>> = vs.iter().map(|v| ints(v)).filter(|v| v.iter().any(|x| !x.is_zero())).collect();
        prop_assume!(!vs.is_empty());
        let ch = chambers(3, &vs);
        let signs: BTreeSet<String> = ch.iter().map(|c| c.signs.to_string()).collect();
        for c in &ch {
            prop_assert!(signs.contains(&c.signs.negate().to_string()));
        }
    }

    #[test]
    fn weights_and_heights_agree(d in prop::collection::vec(1i64..=9, 6)) {
        let cfg = pentagon();
        let heights: Vec<BigRational> = d.iter().map(|&x| rat(x)).collect();
        let from_heights = Triangulation::from_heights(&cfg, &heights);
        prop_assume!(from_heights.is_ok());
        let b = cfg.b();
        let w: Vec<BigRational> = (0..b.rows())
            .map(|k| (0..b.cols()).map(|j| BigRational::from_integer(b.get(k, j).clone()) * &heights[j]).sum())
            .collect();
        let from_weight = Triangulation::from_weight(&cfg, &w).unwrap();
        let from_heights = from_heights.unwrap();
        prop_assert_eq!(from_heights.maximal(), from_weight.maximal());
    }

    #[test]
    fn secondary_cone_contains_its_weight(k in 0usize..10) {
        let (cfg, ts) = all_triangulations();
        let t = &ts[k];
        prop_assert!(t.secondary_cone(&cfg).contains_in_interior(t.weight()));
    }

    #[test]
    fn ring_multiplication_is_associative_and_commutative(
        k in 0usize..10,
        x in prop::collection::vec(-3i64..=3, 6),
        y in prop::collection::vec(-3i64..=3, 6),
        z in prop::collection::vec(-3i64..=3, 6),
    ) {
        let (cfg, ts) = all_triangulations();
        let ring = GradedAlgebra::build(&cfg, &ts[k]).unwrap();
        let n = ring.total_dim();
        let elem = |v: &[i64]| {
            let mut c = vec![BigRational::zero(); n];
            for (i, x) in v.iter().take(n).enumerate() {
                c[i] = rat(*x);
            }
            gkz_core::srring::AlgebraElement::new(c)
        };
        let (x, y, z) = (elem(&x), elem(&y), elem(&z));
        prop_assert_eq!(ring.mul(&ring.mul(&x, &y), &z), ring.mul(&x, &ring.mul(&y, &z)));
        prop_assert_eq!(ring.mul(&x, &y), ring.mul(&y, &x));
    }

    #[test]
    fn coefficient_paths_agree(k in 0usize..10, m in prop::collection::vec(-3i64..=3, 3)) {
        let (cfg, ts) = all_triangulations();
        let ring = GradedAlgebra::build(&cfg, &ts[k]).unwrap();
        let b = cfg.b();
        let lambda: Vec<BigInt> = (0..6).map(|j| (0..3).map(|r| b.get(r, j) * BigInt::from(m[r])).sum()).collect();
        let engine = CoefficientEngine::new(&ring);
        let slow = engine.gamma_coefficient(&lambda);
        prop_assert_eq!(&slow, &engine.gamma_coefficient_fast(&lambda));
        let negative: Vec<usize> = (0..6).filter(|&j| lambda[j].is_negative()).collect();
        if !ts[k].is_face(&negative) {
            prop_assert!(slow.is_zero());
        }
    }
}

#[test]
fn enumerated_triangulations_are_consistent() {
    let (cfg, ts) = all_triangulations();
    assert_eq!(ts.len(), 10);
    let total = ts[0].total_volume();
    assert_eq!(total, BigInt::from(5));
    for t in &ts {
        assert_eq!(t.volumes().iter().sum::<BigInt>(), total);
        for s in t.maximal() {
            assert!(cfg.is_independent(s.indices()));
        }
        let vertices: BTreeSet<usize> = t.simplices(1).iter().map(|s| s.indices()[0]).collect();
        assert!(vertices.iter().all(|&j| j < cfg.npoints()));
        if t.is_unimodular() {
            assert_eq!(vertices.len(), cfg.npoints());
        }
        assert!(t.interior_simplices_missing_core(&cfg).is_empty());
    }
}

#[test]
fn enumeration_matches_chamber_brute_force() {
    let cfg = pentagon();
    let e = enumerate_regular(&cfg, 0).unwrap();
    assert!(e.is_connected());
    let mut found = BTreeSet::new();
    for c in chambers(cfg.corank(), cfg.wall_normals()) {
        let w: Vec<BigRational> = c.witness.iter().map(|x| BigRational::from_integer(x.clone())).collect();
        if let Ok(t) = Triangulation::from_weight(&cfg, &w) {
            found.insert(t.maximal().to_vec());
        }
    }
    assert_eq!(found.len(), e.len());
}

#[test]
fn rings_of_all_triangulations() {
    let (cfg, ts) = all_triangulations();
    let xis = [[7, 3, -2], [11, -5, 4], [13, 2, 9]];
    for t in &ts {
        let ring = GradedAlgebra::build(&cfg, t).unwrap();
        assert_eq!(ring.total_dim(), t.maximal().len());
        assert!(ring.poincare_check().equal);
        for j in 0..cfg.npoints() {
            assert!(ring.pow(&ring.generator(j), cfg.rank() as u32).is_zero());
        }
        for xi in &xis {
            let xi: Vec<BigRational> = xi.iter().map(|&x| rat(x)).collect();
            let basis = ring.distinguished_basis(&xi).unwrap();
            let rows: Vec<Vec<BigRational>> = basis.iter().map(|(_, e)| e.coords().to_vec()).collect();
            assert_eq!(RatMatrix::from_rows(&rows, ring.total_dim()).rank(), ring.total_dim());
        }
        let core = ring.core_element();
        assert!(ring.coriso_check(&core).holds());
    }
}

#[test]
fn euler_residuals_vanish_for_every_triangulation() {
    let (cfg, ts) = all_triangulations();
    let zero = vec![BigInt::zero(); cfg.rank()];
    for t in &ts {
        let ring = GradedAlgebra::build(&cfg, t).unwrap();
        let s = build_series(&ring, &zero, 4).unwrap();
        for i in 0..cfg.rank() {
            assert!(s.apply_euler(&ring, i).terms.is_empty());
        }
    }
}

#[test]
fn star_series_passes_verification() {
    let cfg = pentagon();
    let ring = GradedAlgebra::build(&cfg, &star(&cfg)).unwrap();
    for beta in [vec![0, 0, 0], vec![-1, 0, 0], vec![-2, 0, 0]] {
        let report = verify_series(&ring, &ints(&beta), 4, 5, 7).unwrap();
        assert!(report.all_passed, "{:?}", report.checks);
        if beta[0] < 0 {
            assert!(report.checks.iter().any(|c| c.name == "core_ideal" && c.status == Status::Pass));
        }
    }
}

#[test]
fn term_set_is_exact() {
    let cfg = pentagon();
    let t = star(&cfg);
    let ring = GradedAlgebra::build(&cfg, &t).unwrap();
    let beta = ints(&[0, 0, 0]);
    let order = 4;
    let series = build_series(&ring, &beta, order).unwrap();
    let gamma0 = solve_particular(cfg.a(), &beta).unwrap();
    let b = cfg.b();
    let mut expected = BTreeSet::new();
    for m in product_box(3, -8, 8) {
        let lambda: Vec<BigInt> = (0..6).map(|j| &gamma0[j] + (0..3).map(|r| b.get(r, j) * BigInt::from(m[r])).sum::<BigInt>()).collect();
        if l1_norm(&lambda) > BigInt::from(order) {
            continue;
        }
        let negative: Vec<usize> = (0..6).filter(|&j| lambda[j].is_negative()).collect();
        if t.is_face(&negative) && !gamma_coefficient(&ring, &lambda).is_zero() {
            expected.insert(lambda);
        }
    }
    let got: BTreeSet<Vec<BigInt>> = series.terms.keys().cloned().collect();
    assert_eq!(got, expected);
    let support: BTreeSet<Vec<BigInt>> = enumerate_support(&cfg, &t, &beta, order).unwrap().into_iter().collect();
    assert!(got.is_subset(&support));
    for l in &got {
        assert_eq!(cfg.a().mul_vec(l).unwrap(), beta);
    }
}

#[test]
fn support_lemma_and_estimate_on_all_triangulations() {
    let (cfg, ts) = all_triangulations();
    let zero = vec![BigInt::zero(); cfg.rank()];
    for t in &ts {
        let ring = GradedAlgebra::build(&cfg, t).unwrap();
        let dual = t.secondary_cone(&cfg).dualize();
        for l in build_series(&ring, &zero, 4).unwrap().terms.keys() {
            assert!(support_lemma_holds(&cfg, t, &dual, l));
            assert!(estimate_holds(l, cfg.rank() - 1));
        }
    }
}

#[test]
fn gorenstein_preconditions_and_splitting() {
    let (cfg, ts) = all_triangulations();
    let mut passing = 0;
    for t in &ts {
        let core = t.core();
        let interior_core = !core.is_empty() && !cfg.in_boundary(core.indices());
        let ok = check_preconditions(&cfg, t).is_ok();
        assert_eq!(ok, interior_core && t.is_unimodular());
        if !ok {
            continue;
        }
        passing += 1;
        let report = gorenstein_report(&cfg, t).unwrap();
        assert_eq!(report.index, 1);
        assert_eq!(report.a0, cfg.point(3));
        let core0: Vec<usize> = report.core.iter().map(|i| i - 1).collect();
        for g in dual_generators(&cfg, t).unwrap() {
            assert!(splitting_pattern_holds(&cfg, &core0, g.core_index - 1, &g.row));
            for j in 0..cfg.npoints() {
                assert!(!dot(&g.row, &cfg.point(j)).is_negative());
            }
            if report.is_reflexive {
                assert!(dot(&g.row, &report.a0).is_one());
            }
        }
        for bx in &report.boxes {
            for p in &bx.points {
                assert!(splitting_pattern_holds(&cfg, &core0, bx.core_index - 1, p));
            }
        }
        let mut reversed = t.maximal().to_vec();
        reversed.reverse();
        let t2 = Triangulation::from_maximal(&cfg, &reversed).unwrap();
        assert_eq!(gorenstein_report(&cfg, &t2).unwrap(), report);
    }
    assert!(passing >= 1);
}
