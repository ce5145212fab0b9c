use polymem::field::{PrimeField, DEFAULT_PRIME};
use polymem::membership::MembershipProblem;
use polymem::osculate::{
    branch_series, coeff_matrix, default_order, find_smooth_point, multiplicity, osculating_poly,
    osculation_report, Multiplicity,
};
use polymem::polytope::HPolytope;
use polymem::sparsepoly::{seeded_rng, SparsePoly};
use rand::Rng;

fn fp() -> PrimeField {
    PrimeField::new(DEFAULT_PRIME).unwrap()
}

#[test]
fn conics_and_cubics_in_low_degree() {
    let e = HPolytope::simplex(2, 1).lattice_points();
    let e2 = HPolytope::simplex(2, 2).lattice_points();
    for d in [2, 3] {
        let b = HPolytope::simplex(2, d).lattice_points();
        for seed in [1, 2] {
            let f = SparsePoly::random_generic_seeded(fp(), &b, seed).unwrap();
            for a in [&e, &e2] {
                let r = osculation_report(a, &f, seed).unwrap();
                assert!(
                    r.rank_matches(a.len()),
                    "d {d} seed {seed}: rank {} dimV {}",
                    r.rank,
                    r.dim_v
                );
                assert!(r.flags_exact(a.len()));
                assert_eq!(r.flags.len(), a.len() - r.dim_v);
            }
        }
    }
}

#[test]
fn multiplicity_matches_kernel_membership() {
    let field = fp();
    let b = HPolytope::simplex(2, 3).lattice_points();
    let a = HPolytope::simplex(2, 2).lattice_points();
    let f = SparsePoly::random_generic_seeded(field, &b, 4).unwrap();
    let pt = find_smooth_point(&f, 4).unwrap();
    let branch = branch_series(&f, pt, default_order(&a)).unwrap();
    let m = coeff_matrix(&a, &branch, branch.order()).unwrap();
    let mut rng = seeded_rng(99, field.modulus());
    for i in 0..a.len() {
        let kernel = m.kernel_of_top(i);
        let g = kernel.iter().fold(SparsePoly::zero(field, 2), |acc, v| {
            acc.add(&v.scale(field.elem(rng.gen_range(1..field.modulus()))))
                .unwrap()
        });
        let mult = multiplicity(&g, &branch);
        assert!(
            matches!(mult, Multiplicity::Exact(x) if x >= i)
                || matches!(mult, Multiplicity::AtLeast(_))
        );
        // a random element off the kernel vanishes to lower order
        let coeffs: Vec<_> = (0..a.len())
            .map(|_| field.elem(rng.gen_range(1..field.modulus())))
            .collect();
        let h = m.poly_from(&coeffs);
        let in_kernel = m
            .matrix
            .top_rows(i)
            .mul_vec(&coeffs)
            .iter()
            .all(|c| c.is_zero());
        let deep = match multiplicity(&h, &branch) {
            Multiplicity::Exact(x) => x >= i,
            Multiplicity::AtLeast(_) => true,
        };
        assert_eq!(in_kernel, deep);
    }
}

#[test]
fn members_vanish_along_the_branch() {
    let field = fp();
    let b = HPolytope::simplex(2, 2).lattice_points();
    let a = HPolytope::simplex(2, 3).lattice_points();
    let f = SparsePoly::random_generic_seeded(field, &b, 6).unwrap();
    let pt = find_smooth_point(&f, 6).unwrap();
    let branch = branch_series(&f, pt, default_order(&a)).unwrap();
    let p = MembershipProblem::new(a.clone(), vec![a.erode(&b)], vec![f.clone()]).unwrap();
    let r = p.solve();
    assert_eq!(r.dim_v, 3);
    for g in &r.basis {
        assert_eq!(
            multiplicity(g, &branch),
            Multiplicity::AtLeast(branch.order())
        );
    }
}

#[test]
fn quadrics_reach_multiplicity_four_on_a_conic() {
    let b = HPolytope::simplex(2, 2).lattice_points();
    let f = SparsePoly::random_generic_seeded(fp(), &b, 21).unwrap();
    let r = osculation_report(&b, &f, 3).unwrap();
    assert_eq!(r.dim_v, 1);
    let g = osculating_poly(&b, &f, r.point, 4, 7).unwrap();
    let branch = branch_series(&f, r.point, 20).unwrap();
    assert_eq!(multiplicity(&g, &branch), Multiplicity::Exact(4));
}
