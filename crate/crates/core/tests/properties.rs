use polymem::field::{PrimeField, DEFAULT_PRIME};
use polymem::linalg::Matrix;
use polymem::membership::MembershipProblem;
use polymem::pointset::PointSet;
use polymem::polytope::HPolytope;
use polymem::rational::{int, to_rational_point};
use polymem::sparsepoly::{random_system, SparsePoly};
use proptest::prelude::*;

fn fp() -> PrimeField {
    PrimeField::new(DEFAULT_PRIME).unwrap()
}

fn points2(max: usize) -> impl Strategy<Value = PointSet> {
    prop::collection::vec((-3i64..=3, -3i64..=3), 1..max)
        .prop_map(|v| PointSet::new(2, v.into_iter().map(|(x, y)| vec![x, y])).unwrap())
}

fn small_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..6, 1usize..6)
        .prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-3i64..=3, c), r))
}

fn poly2() -> impl Strategy<Value = SparsePoly> {
    prop::collection::vec(((-2i64..=2, -2i64..=2), -5i64..=5), 0..6).prop_map(|terms| {
        SparsePoly::from_terms(
            fp(),
            2,
            terms.into_iter().map(|((x, y), c)| (vec![x, y], c)),
        )
        .unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn rank_plus_nullity(rows in small_matrix()) {
        let m = Matrix::from_i64_rows(fp(), &rows);
        let kernel = m.kernel_basis();
        prop_assert_eq!(m.rank() + kernel.len(), m.cols());
        for v in &kernel {
            prop_assert!(m.mul_vec(v).iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn erosion_undoes_sum(a in points2(8), b in points2(4)) {
        prop_assert!(a.is_subset(&a.minkowski_sum(&b).erode(&b)));
        prop_assert!(a.erode(&b).minkowski_sum(&b).is_subset(&a));
    }

    #[test]
    fn erosion_commutes_with_translation(a in points2(8), b in points2(4), u in (-4i64..=4, -4i64..=4)) {
        let v = vec![u.0, u.1];
        prop_assert_eq!(a.translate(&v).erode(&b), a.erode(&b).translate(&v));
        prop_assert_eq!(a.erode(&b.translate(&v)), a.erode(&b).translate(&[-u.0, -u.1]));
    }

    #[test]
    fn hull_contains_its_points(a in points2(8)) {
        let h = HPolytope::from_points(&a).unwrap();
        prop_assert!(a.is_subset(&h.lattice_points()));
        for v in h.vertices() {
            prop_assert!(v.iter().all(|x| x.is_integer()));
        }
    }

    #[test]
    fn eroded_body_plus_body_fits(a in points2(8), s in 2i64..4) {
        let b = HPolytope::from_points(&a).unwrap();
        if b.is_lower_dimensional() {
            return Ok(());
        }
        let x = HPolytope::simplex(2, 1).dilate(&int(s + 2)).unwrap();
        if let Some(e) = x.erode(&b).unwrap() {
            let sum = e.minkowski_sum(&b).unwrap();
            prop_assert!(sum.is_subset_of(&x));
        }
    }

    #[test]
    fn lattice_points_match_membership(a in points2(8)) {
        let h = HPolytope::from_points(&a).unwrap();
        let (lo, hi) = h.bounding_box().unwrap();
        let z = h.lattice_points();
        for x in lo[0]..=hi[0] {
            for y in lo[1]..=hi[1] {
                prop_assert_eq!(z.contains(&[x, y]), h.contains(&to_rational_point(&[x, y])));
            }
        }
    }

    #[test]
    fn ring_laws(p in poly2(), q in poly2(), r in poly2()) {
        prop_assert_eq!(p.mul(&q).unwrap(), q.mul(&p).unwrap());
        let left = p.mul(&q.add(&r).unwrap()).unwrap();
        let right = p.mul(&q).unwrap().add(&p.mul(&r).unwrap()).unwrap();
        prop_assert_eq!(left, right);
        let field = fp();
        let pt = [field.elem(3), field.elem(7)];
        let prod = p.mul(&q).unwrap().eval(&pt).unwrap();
        prop_assert_eq!(prod, field.mul(p.eval(&pt).unwrap(), q.eval(&pt).unwrap()));
    }

    #[test]
    fn membership_dimensions_are_consistent(a in points2(10), c in points2(5), seed in 0u64..1000) {
        let b = HPolytope::simplex(2, 1).lattice_points();
        let f = random_system(fp(), &[b.clone(), b], seed).unwrap();
        let p = MembershipProblem::new(a.clone(), vec![c.clone(), c], f).unwrap();
        let r = p.solve();
        prop_assert_eq!(r.dim_v + r.dim_ker, r.dim_w);
        prop_assert_eq!(r.basis.len(), r.dim_v);
        for g in &r.basis {
            prop_assert!(g.support().is_subset(&a));
        }
    }
}
