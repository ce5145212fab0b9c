use polymem::chain::{
    build_normal_chain, check_erosion_identities, classify_erosion, epsilon0, eroded_steps_valid,
    negative_chain, validate_chain, ChainConfig, ErosionClass, FacetOrder,
};
use polymem::rational::int;
use polymem::{HPolytope, PointSet};

fn square_pyramid() -> HPolytope {
    let pts = PointSet::new(
        3,
        vec![
            vec![-1, -1, -1],
            vec![1, -1, -1],
            vec![-1, 1, -1],
            vec![1, 1, -1],
            vec![0, 0, 1],
        ],
    )
    .unwrap();
    HPolytope::from_points(&pts).unwrap()
}

fn bodies() -> Vec<(&'static str, HPolytope)> {
    vec![
        ("square", HPolytope::cube(2, -1, 1)),
        ("triangle", HPolytope::simplex(2, 1)),
        ("pyramid", square_pyramid()),
    ]
}

#[test]
fn chains_validate_to_three() {
    for (name, b) in bodies() {
        let chain = build_normal_chain(&b, &ChainConfig::new(int(3))).unwrap();
        let report = validate_chain(&chain, &int(3)).unwrap();
        assert!(report.passed(), "{name}: {report:?}");
        for (i, ids) in check_erosion_identities(&chain).unwrap().iter().enumerate() {
            assert!(ids.passed(), "{name} step {i}: {ids:?}");
        }
    }
}

#[test]
fn psi_ordered_chains_validate() {
    for (name, b) in bodies() {
        let mut cfg = ChainConfig::new(int(3));
        cfg.order = FacetOrder::Psi;
        let chain = build_normal_chain(&b, &cfg).unwrap();
        assert!(validate_chain(&chain, &int(3)).unwrap().passed(), "{name}");
    }
}

#[test]
fn eroded_terms_stay_in_chains() {
    for (name, b) in bodies() {
        let chain = build_normal_chain(&b, &ChainConfig::new(int(4))).unwrap();
        let eroded = eroded_steps_valid(&chain).unwrap();
        assert!(!eroded.is_empty(), "{name}");
        for (i, v) in eroded {
            assert!(v.passed(), "{name} step {i}: {v:?}");
        }
    }
}

#[test]
fn negative_chains_keep_facet_count() {
    for (name, b) in bodies() {
        let neg = negative_chain(&b, None, &ChainConfig::new(int(2)).tau_floor).unwrap();
        let l = neg.base.facets().len();
        for t in &neg.terms {
            assert_eq!(t.facet_count(), l, "{name}");
        }
        assert_eq!(neg.surrounded, vec![l - 1], "{name}");
        let inner = neg.terms.last().unwrap();
        for p in inner.lattice_points().iter() {
            let q: Vec<_> = p.iter().map(|&x| int(x)).collect();
            assert!(neg.base.contains_in_interior(&q), "{name}");
        }
    }
}

#[test]
fn erosion_classes_where_the_bracket_decides() {
    for (name, b) in bodies() {
        let chain = build_normal_chain(&b, &ChainConfig::new(int(4))).unwrap();
        let (_, t_crit) = epsilon0(&chain.base, &chain.center).unwrap();
        for (i, term) in chain.terms.iter().enumerate() {
            let (t1, t2) = chain.bracket_of(i);
            for j in 1..=4 {
                let class = classify_erosion(&chain, term, &(t1.clone(), t2.clone()), j).unwrap();
                let lo = &t1 - int(j as i64);
                let hi = &t2 - int(j as i64);
                if lo >= chain.epsilon0 {
                    assert_eq!(class, ErosionClass::ChainElement, "{name} term {i} j {j}");
                } else if lo >= int(1) && hi < t_crit {
                    assert_eq!(class, ErosionClass::LatticeEqualsB, "{name} term {i} j {j}");
                } else if hi < int(1) {
                    assert!(
                        matches!(
                            class,
                            ErosionClass::StrictlyInterior
                                | ErosionClass::LatticeEqualsB
                                | ErosionClass::Empty
                        ),
                        "{name} term {i} j {j}: {class:?}"
                    );
                }
            }
        }
    }
}

#[test]
fn straddling_bracket_is_unclassified() {
    // the first shift of the square chain moves one facet across factor 2
    let chain = build_normal_chain(&HPolytope::cube(2, -1, 1), &ChainConfig::new(int(3))).unwrap();
    let class = classify_erosion(&chain, &chain.terms[2], &chain.bracket_of(2), 1).unwrap();
    assert_eq!(class, ErosionClass::Unclassified);
}
