use polymem::koszul::{koszul_kernel_dim, KoszulReading};
use polymem::membership::Protocol;
use polymem::polytope::HPolytope;

#[test]
fn four_simplex_with_three_generators() {
    let b = HPolytope::simplex(4, 1).lattice_points();
    let c = HPolytope::simplex(4, 2).lattice_points();
    let r = koszul_kernel_dim(&c, &b, 3, &Protocol::default()).unwrap();
    assert_eq!(r.oracle, 14);
    assert_eq!(r.formula, 14);
    assert_eq!(r.confirmed, KoszulReading::Corrected);
}

#[test]
fn corrected_formula_on_small_instances() {
    for (n, k, s) in [(2, 2, 2), (2, 2, 3), (3, 2, 2), (3, 3, 2), (3, 3, 3)] {
        let b = HPolytope::simplex(n, 1).lattice_points();
        let c = HPolytope::simplex(n, s).lattice_points();
        let r = koszul_kernel_dim(&c, &b, k, &Protocol::default()).unwrap();
        assert!(
            r.formula_matches(),
            "n {n} k {k} s {s}: {} vs {}",
            r.formula,
            r.oracle
        );
    }
    for s in [2, 3] {
        let b = HPolytope::cube(2, 0, 1).lattice_points();
        let c = HPolytope::cube(2, 0, s).lattice_points();
        let r = koszul_kernel_dim(&c, &b, 2, &Protocol::default()).unwrap();
        assert!(r.formula_matches());
    }
}

#[test]
fn constant_syzygy_only() {
    let b = HPolytope::simplex(2, 1).lattice_points();
    let r = koszul_kernel_dim(&b, &b, 2, &Protocol::default()).unwrap();
    assert_eq!(r.oracle, 1);
}
