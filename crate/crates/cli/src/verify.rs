//! Acceptance criteria, each an exact check over every prime and seed of the
//! protocol.

use std::fs;
use std::path::PathBuf;

use anyhow::{bail, Result};
use rand::seq::IteratorRandom;
use rand::Rng;
use serde_json::{json, Value};

use polymem::chain::{build_normal_chain, check_erosion_identities, validate_chain, ChainConfig};
use polymem::field::PrimeField;
use polymem::koszul::koszul_kernel_dim;
use polymem::membership::{
    foundation_supports, membership_dim, stabilization_check, MembershipProblem, Protocol,
    SystemSpec,
};
use polymem::osculate::osculation_report;
use polymem::polytope::HPolytope;
use polymem::rational::{int, to_rational_point};
use polymem::sparsepoly::{seeded_rng, SparsePoly};
use polymem::PointSet;

use crate::{
    cmd_chain, cmd_decompose, cmd_foundation, cmd_koszul, cmd_membership, cmd_osculate,
    cmd_polytope, cmd_stabilize, ChainArgs, DecomposeArgs, FoundationArgs, GeneratorArgs,
    KoszulArgs, MembershipArgs, OrderArg, OsculateArgs, PolytopeArgs, PolytopeOp, SpacingArg,
    StabilizeArgs,
};

#[derive(Clone, Debug)]
pub struct Criterion {
    pub id: usize,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl Criterion {
    pub fn line(&self) -> String {
        let status = if self.passed { "PASS" } else { "FAIL" };
        format!(
            "{status} criterion {:>2} {}: {}",
            self.id, self.name, self.detail
        )
    }
}

pub struct Outcome {
    pub suite: String,
    pub criteria: Vec<Criterion>,
}

impl Outcome {
    pub fn passed(&self) -> bool {
        self.criteria.iter().all(|c| c.passed)
    }

    pub fn to_json(&self) -> Value {
        let criteria: Vec<Value> = self
            .criteria
            .iter()
            .map(|c| json!({ "id": c.id, "name": c.name, "passed": c.passed, "detail": c.detail }))
            .collect();
        json!({ "suite": self.suite, "passed": self.passed(), "criteria": criteria })
    }
}

pub const SUITES: &[(&str, &[usize])] = &[
    ("example-1", &[1]),
    ("simplex-table", &[2]),
    ("paper-table-s4", &[2]),
    ("single-generator", &[3]),
    ("two-generator-kernel", &[4]),
    ("foundation", &[5]),
    ("stabilization", &[6]),
    ("normal-chain", &[7]),
    ("koszul", &[8]),
    ("osculation", &[9]),
    ("determinism", &[10]),
    ("all", &[1, 2, 3, 4, 5, 6, 7, 8, 9, 10]),
];

pub fn run_suite(suite: &str, protocol: &Protocol) -> Result<Outcome> {
    let Some((_, ids)) = SUITES.iter().find(|(name, _)| *name == suite) else {
        let names: Vec<&str> = SUITES.iter().map(|(n, _)| *n).collect();
        bail!(
            "unknown suite {suite:?}; known suites: {}",
            names.join(", ")
        );
    };
    let criteria = ids.iter().map(|&id| run_criterion(id, protocol)).collect();
    Ok(Outcome {
        suite: suite.to_string(),
        criteria,
    })
}

pub fn run_criterion(id: usize, protocol: &Protocol) -> Criterion {
    let (name, result): (&'static str, Result<(bool, String)>) = match id {
        1 => ("example 1", example_one(protocol)),
        2 => ("two-simplex table", simplex_table(protocol)),
        3 => ("single generator", single_generator(protocol)),
        4 => ("two-generator kernel", two_generator_kernel(protocol)),
        5 => ("foundation", foundation(protocol)),
        6 => ("stabilization", stabilization(protocol)),
        7 => ("normal chains", normal_chains()),
        8 => ("koszul formula", koszul(protocol)),
        9 => ("osculation", osculation(protocol)),
        10 => ("determinism", determinism(protocol)),
        _ => ("unknown", Ok((false, format!("no criterion {id}")))),
    };
    let (passed, detail) = result.unwrap_or_else(|e| (false, format!("error: {e:#}")));
    Criterion {
        id,
        name,
        passed,
        detail,
    }
}

fn fields(protocol: &Protocol) -> Result<Vec<PrimeField>> {
    protocol
        .primes
        .iter()
        .map(|&p| PrimeField::new(p).map_err(|e| anyhow::anyhow!("{e}")))
        .collect()
}

fn simplex(n: usize, s: i64) -> PointSet {
    if s == 0 {
        return PointSet::origin(n);
    }
    HPolytope::simplex(n, s).lattice_points()
}

fn dim_v(
    a: &PointSet,
    c: Vec<PointSet>,
    generators: Vec<PointSet>,
    protocol: &Protocol,
) -> Result<usize> {
    let spec = SystemSpec {
        a: a.clone(),
        c,
        generators,
    };
    Ok(membership_dim(&spec, protocol)?.dim_v)
}

fn example_one(protocol: &Protocol) -> Result<(bool, String)> {
    let a = PointSet::new(1, vec![vec![0], vec![2]])?;
    let c = PointSet::new(1, vec![vec![0], vec![1]])?;
    let mut ok = true;
    let mut dims = Vec::new();
    for field in fields(protocol)? {
        let f = SparsePoly::from_terms(field, 1, vec![(vec![0], 1), (vec![1], 1)])?;
        let r = MembershipProblem::new(a.clone(), vec![c.clone()], vec![f])?.solve();
        dims.push(r.dim_v);
        let proportional = r.basis.len() == 1 && {
            let g = &r.basis[0];
            let c0 = g.coeff(&[0]);
            g.len() == 2 && !c0.is_zero() && g.coeff(&[2]) == field.neg(c0)
        };
        ok &= r.dim_v == 1 && proportional;
    }
    Ok((
        ok,
        format!("dimV per prime {dims:?}, basis proportional to 1 - x^2: {ok}"),
    ))
}

fn simplex_table(protocol: &Protocol) -> Result<(bool, String)> {
    let e = simplex(2, 1);
    let cases = [
        ((2, 3), 0),
        ((3, 4), 0),
        ((2, 4), 0),
        ((1, 2), 1),
        ((1, 3), 1),
        ((1, 1), 2),
    ];
    let mut ok = true;
    let mut parts = Vec::new();
    for ((d1, d2), expected) in cases {
        let c = vec![simplex(2, d2 - d1), PointSet::origin(2)];
        let got = dim_v(&e, c, vec![simplex(2, d1), simplex(2, d2)], protocol)?;
        ok &= got == expected;
        parts.push(format!("({d1},{d2})->{got}"));
    }
    Ok((ok, parts.join(" ")))
}

/// Lattice points of the hull of `lo..=hi` random points of `pool`.
pub fn random_convex(
    pool: &PointSet,
    lo: usize,
    hi: usize,
    rng: &mut impl Rng,
) -> Result<PointSet> {
    let count = rng.gen_range(lo..=hi);
    let pts = PointSet::new(pool.dim(), pool.iter().cloned().choose_multiple(rng, count))?;
    Ok(HPolytope::from_points(&pts)?.lattice_points())
}

fn single_generator(protocol: &Protocol) -> Result<(bool, String)> {
    let bodies = [
        HPolytope::simplex(1, 1),
        HPolytope::simplex(1, 2),
        HPolytope::simplex(2, 1),
        HPolytope::simplex(2, 2),
        HPolytope::cube(2, 0, 1),
    ];
    let mut rng = seeded_rng(protocol.seeds[0], 3);
    let mut failures = 0;
    for round in 0..20 {
        let b = &bodies[round % bodies.len()];
        let zb = b.lattice_points();
        let big = b.dilate(&int(4))?.lattice_points();
        let a = random_convex(&big, 1, 5, &mut rng)?;
        let expected = a.erode(&zb).len();
        if dim_v(&a, vec![big], vec![zb], protocol)? != expected {
            failures += 1;
        }
    }
    Ok((
        failures == 0,
        format!("{} of 20 instances match |A ⊖ Z(B)|", 20 - failures),
    ))
}

fn two_generator_kernel(protocol: &Protocol) -> Result<(bool, String)> {
    let mut ok = true;
    let mut parts = Vec::new();
    for (name, b) in [
        ("E", HPolytope::simplex(2, 1)),
        ("square", HPolytope::cube(2, 0, 1)),
    ] {
        let zb = b.lattice_points();
        for s in [2, 3] {
            let c = b.dilate(&int(s))?.lattice_points();
            let expected = c.erode(&zb).len();
            for field in fields(protocol)? {
                for &seed in &protocol.seeds {
                    let f =
                        polymem::sparsepoly::random_system(field, &[zb.clone(), zb.clone()], seed)?;
                    let p =
                        MembershipProblem::new(c.clone(), vec![c.clone(), c.clone()], f.clone())?;
                    let kernel = p.syzygy_kernel();
                    ok &= kernel.len() == expected;
                    ok &= kernel
                        .iter()
                        .all(|t| polymem::membership::is_koszul_multiple(t, &f[0], &f[1], &c));
                }
            }
            parts.push(format!("{name}/{s}B: {expected}"));
        }
    }
    Ok((ok, parts.join(", ")))
}

fn foundation(protocol: &Protocol) -> Result<(bool, String)> {
    let mut rng = seeded_rng(protocol.seeds[0], 5);
    let mut ok = true;
    let mut parts = Vec::new();
    for (name, b) in [
        ("simplex", HPolytope::simplex(3, 1)),
        ("cube", HPolytope::cube(3, 0, 1)),
    ] {
        let zb = b.lattice_points();
        let three = b.dilate(&int(3))?;
        let boundary = three
            .lattice_points()
            .difference(&three.interior_lattice_points());
        let drop = boundary
            .iter()
            .choose(&mut rng)
            .expect("boundary is nonempty")
            .clone();
        let mut a3 = three.lattice_points();
        a3.remove(&drop);
        let targets = [zb.clone(), b.dilate(&int(2))?.lattice_points(), a3];
        for k in 1..=2 {
            for (ai, a) in targets.iter().enumerate() {
                let found = foundation_supports(a, &b, k, false)?;
                let back: Vec<i64> = found
                    .shift_b
                    .iter()
                    .zip(&found.shift_a)
                    .map(|(x, y)| x - y)
                    .collect();
                let oracle = b
                    .translate(&to_rational_point(&found.shift_b))
                    .dilate(&(&found.t + int(2)))?
                    .lattice_points()
                    .translate(&back);
                let gens = vec![zb.clone(); k];
                let got = dim_v(a, found.supports.clone(), gens.clone(), protocol)?;
                let want = dim_v(a, vec![oracle; k], gens, protocol)?;
                ok &= got == want && (ai != 0 || got == k);
                parts.push(format!("{name} k={k} A{ai}: {got}/{want}"));
            }
        }
    }
    Ok((ok, parts.join(", ")))
}

fn stabilization(protocol: &Protocol) -> Result<(bool, String)> {
    let b = HPolytope::cube(2, -1, 1);
    let chain = build_normal_chain(&b, &ChainConfig::new(int(3)))?;
    let pool = b.dilate(&int(3))?.lattice_points();
    let mut rng = seeded_rng(protocol.seeds[0], 6);
    let mut ok = true;
    let mut parts = Vec::new();
    for _ in 0..5 {
        let a = random_convex(&pool, 4, 7, &mut rng)?;
        let r = stabilization_check(&a, 2, &chain, protocol)?;
        ok &= r.is_constant();
        parts.push(format!(
            "|A|={} from {:?}: {:?}",
            a.len(),
            r.first_index,
            r.dims
        ));
    }
    Ok((ok, parts.join("; ")))
}

pub fn square_pyramid() -> HPolytope {
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
    .expect("points are three-dimensional");
    HPolytope::from_points(&pts).expect("pyramid is full-dimensional")
}

fn normal_chains() -> Result<(bool, String)> {
    let mut ok = true;
    let mut parts = Vec::new();
    for (name, b) in [
        ("square", HPolytope::cube(2, -1, 1)),
        ("triangle", HPolytope::simplex(2, 1)),
        ("pyramid", square_pyramid()),
    ] {
        let chain = build_normal_chain(&b, &ChainConfig::new(int(3)))?;
        let report = validate_chain(&chain, &int(3))?;
        let ids = check_erosion_identities(&chain)?;
        let good = report.passed() && ids.iter().all(|i| i.passed());
        ok &= good;
        parts.push(format!(
            "{name}: {} steps {}",
            chain.steps.len(),
            if good { "valid" } else { "INVALID" }
        ));
    }
    Ok((ok, parts.join(", ")))
}

fn koszul(protocol: &Protocol) -> Result<(bool, String)> {
    let e = simplex(2, 1);
    let small = koszul_kernel_dim(&simplex(2, 2), &e, 2, protocol)?;
    let b4 = simplex(4, 1);
    let big = koszul_kernel_dim(&simplex(4, 2), &b4, 3, protocol)?;
    let ok =
        small.oracle == 3 && small.formula_matches() && big.formula_matches() && big.oracle == 14;
    Ok((
        ok,
        format!(
            "k=2: formula {} oracle {}; k=3 on the 4-simplex: oracle {}, formula {}, printed form {}, confirmed reading {}",
            small.formula, small.oracle, big.oracle, big.formula, big.formula_as_printed, big.confirmed
        ),
    ))
}

fn osculation(protocol: &Protocol) -> Result<(bool, String)> {
    let targets = [("Z(E)", simplex(2, 1)), ("Z(2E)", simplex(2, 2))];
    let mut ok = true;
    let mut parts = Vec::new();
    for field in fields(protocol)? {
        for &seed in &protocol.seeds {
            for (curve, d) in [("conic", 2), ("cubic", 3)] {
                let f = SparsePoly::random_generic_seeded(field, &simplex(2, d), seed)?;
                for (name, a) in &targets {
                    let r = osculation_report(a, &f, seed)?;
                    let good = r.rank_matches(a.len())
                        && r.flags_exact(a.len())
                        && r.flags.len() == a.len() - r.dim_v;
                    ok &= good;
                    if field.modulus() == protocol.primes[0] && seed == protocol.seeds[0] {
                        parts.push(format!(
                            "{curve} in {name}: rank {} dimV {}",
                            r.rank, r.dim_v
                        ));
                    }
                }
            }
        }
    }
    Ok((ok, parts.join(", ")))
}

const FIXTURES: &[(&str, &str)] = &[
    (
        "example1_a.json",
        include_str!("../fixtures/example1_a.json"),
    ),
    (
        "example1_c.json",
        include_str!("../fixtures/example1_c.json"),
    ),
    (
        "example1_f.json",
        include_str!("../fixtures/example1_f.json"),
    ),
    (
        "example1_g.json",
        include_str!("../fixtures/example1_g.json"),
    ),
    ("triangle.json", include_str!("../fixtures/triangle.json")),
    (
        "triangle_times2.json",
        include_str!("../fixtures/triangle_times2.json"),
    ),
    ("square.json", include_str!("../fixtures/square.json")),
    ("cube3.json", include_str!("../fixtures/cube3.json")),
    (
        "cube3_times3.json",
        include_str!("../fixtures/cube3_times3.json"),
    ),
    ("conic.json", include_str!("../fixtures/conic.json")),
];

/// Writes the bundled fixtures into a fresh directory.
pub fn write_fixtures() -> Result<PathBuf> {
    let dir = std::env::temp_dir().join(format!("polymem-fixtures-{}", std::process::id()));
    fs::create_dir_all(&dir)?;
    for (name, text) in FIXTURES {
        fs::write(dir.join(name), text)?;
    }
    Ok(dir)
}

/// One report per command on the bundled fixtures.
pub fn command_reports(
    dir: &std::path::Path,
    protocol: &Protocol,
) -> Result<Vec<(&'static str, String)>> {
    let p = |n: &str| dir.join(n);
    let membership = MembershipArgs {
        a: p("example1_a.json"),
        gens: GeneratorArgs {
            b: None,
            k: 1,
            f: vec![p("example1_f.json")],
        },
        c: vec![p("example1_c.json")],
        t: None,
        allow_outside: false,
    };
    let generic = MembershipArgs {
        a: p("cube3_times3.json"),
        gens: GeneratorArgs {
            b: Some(p("cube3.json")),
            k: 1,
            f: vec![],
        },
        c: vec![],
        t: None,
        allow_outside: false,
    };
    let decompose = DecomposeArgs {
        problem: MembershipArgs {
            a: p("example1_a.json"),
            ..membership.clone()
        },
        g: p("example1_g.json"),
    };
    let chain = ChainArgs {
        b: p("square.json"),
        t: "2".into(),
        order: OrderArg::Ascending,
        spacing: SpacingArg::Geometric,
        negative: false,
    };
    let negative = ChainArgs {
        negative: true,
        ..chain.clone()
    };
    let found = FoundationArgs {
        a: p("cube3_times3.json"),
        b: p("cube3.json"),
        k: 1,
        allow_outside: false,
    };
    let stab = StabilizeArgs {
        a: p("triangle_times2.json"),
        b: p("square.json"),
        k: 1,
        t: "2".into(),
    };
    let kos = KoszulArgs {
        b: p("triangle.json"),
        c: None,
        k: 2,
    };
    let osc = OsculateArgs {
        a: p("triangle.json"),
        f: Some(p("conic.json")),
        b: None,
    };
    let poly = PolytopeArgs {
        b: p("square.json"),
        op: PolytopeOp::Epsilon0,
        with: None,
        a: None,
        t: None,
    };
    let s = |v: Value| polymem::json::to_string(&v);
    Ok(vec![
        ("membership", s(cmd_membership(&membership, protocol)?)),
        ("membership-generic", s(cmd_membership(&generic, protocol)?)),
        ("decompose", s(cmd_decompose(&decompose, protocol)?)),
        ("chain", s(cmd_chain(&chain)?)),
        ("chain-negative", s(cmd_chain(&negative)?)),
        ("foundation", s(cmd_foundation(&found, protocol)?)),
        ("stabilize", s(cmd_stabilize(&stab, protocol)?)),
        ("koszul", s(cmd_koszul(&kos, protocol)?)),
        ("osculate", s(cmd_osculate(&osc, protocol)?)),
        ("polytope", s(cmd_polytope(&poly)?)),
    ])
}

fn determinism(protocol: &Protocol) -> Result<(bool, String)> {
    let dir = write_fixtures()?;
    let first = command_reports(&dir, protocol)?;
    let second = command_reports(&dir, protocol)?;
    let _ = fs::remove_dir_all(&dir);
    let differing: Vec<&str> = first
        .iter()
        .zip(&second)
        .filter(|(a, b)| a.1 != b.1)
        .map(|(a, _)| a.0)
        .collect();
    Ok((
        differing.is_empty(),
        if differing.is_empty() {
            format!("{} commands byte-identical across two runs", first.len())
        } else {
            format!("reports differ for {}", differing.join(", "))
        },
    ))
}
