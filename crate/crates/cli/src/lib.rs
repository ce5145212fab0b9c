//! Subcommands of the `polymem` executable. Every command is a pure function
//! of its inputs, the primes and the seeds, and returns a JSON report that
//! embeds its own configuration.

pub mod verify;

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use polymem::chain::{
    build_normal_chain, check_erosion_identities, default_center, epsilon0, negative_chain,
    validate_chain, ChainConfig, FacetOrder, Spacing,
};
use polymem::field::{PrimeField, DEFAULT_PRIME, SECOND_PRIME};
use polymem::json as pj;
use polymem::koszul::koszul_kernel_dim;
use polymem::membership::{
    foundation_supports, membership_dim, stabilization_check, MembershipError, MembershipProblem,
    MembershipReport, Protocol, SystemSpec,
};
use polymem::osculate::{osculation_report, MAX_SCAN_PRIME};
use polymem::polytope::{bernstein_number_2d, min_enclosing_factor_points, HPolytope};
use polymem::rational::{format_rational, int, parse_rational, to_rational_point, Rational};
use polymem::sparsepoly::SparsePoly;
use polymem::PointSet;

/// Exit code for malformed input or a failed computation.
pub const EXIT_INPUT: i32 = 1;
/// Exit code when primes or seeds disagree on a dimension.
pub const EXIT_GENERICITY: i32 = 2;
/// Exit code when a verification suite has a failing criterion.
pub const EXIT_VERIFY: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "polymem",
    version,
    about = "Sparse polynomial membership experiments"
)]
pub struct Cli {
    /// Prime modulus; repeat for the agreement protocol.
    #[arg(long = "prime", global = true)]
    pub primes: Vec<u64>,
    /// Sampling seed; repeat for the agreement protocol.
    #[arg(long = "seed", global = true)]
    pub seeds: Vec<u64>,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Dimension and basis of the polynomials supported in A that lie in the ideal.
    Membership(MembershipArgs),
    /// Multipliers expressing g in terms of the generators.
    Decompose(DecomposeArgs),
    /// Build and validate a normal chain of B.
    Chain(ChainArgs),
    /// Multiplier supports predicted to be a foundation for A.
    Foundation(FoundationArgs),
    /// Membership dimensions along a normal chain.
    Stabilize(StabilizeArgs),
    /// Koszul kernel dimension against a direct rank.
    Koszul(KoszulArgs),
    /// Osculating flag of a plane curve in the monomial embedding of A.
    Osculate(OsculateArgs),
    /// Ad-hoc polytope operations.
    Polytope(PolytopeArgs),
    /// Run a named acceptance suite.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct GeneratorArgs {
    /// Newton polytope (or point set) whose lattice points carry generic generators.
    #[arg(long)]
    pub b: Option<PathBuf>,
    /// Number of generic generators on B.
    #[arg(long, default_value_t = 1)]
    pub k: usize,
    /// Explicit generator polynomial; repeat for several.
    #[arg(long = "f")]
    pub f: Vec<PathBuf>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct MembershipArgs {
    /// Target support A (point set or polytope).
    #[arg(long)]
    pub a: PathBuf,
    #[command(flatten)]
    pub gens: GeneratorArgs,
    /// Multiplier support; one shared file or one per generator. Defaults to the foundation.
    #[arg(long = "c")]
    pub c: Vec<PathBuf>,
    /// Dilation factor overriding the foundation's t.
    #[arg(long)]
    pub t: Option<String>,
    /// Allow k outside 1..n-1.
    #[arg(long)]
    pub allow_outside: bool,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct DecomposeArgs {
    #[command(flatten)]
    pub problem: MembershipArgs,
    /// Polynomial to decompose.
    #[arg(long)]
    pub g: PathBuf,
}

#[derive(Debug, Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum OrderArg {
    Ascending,
    Psi,
}

#[derive(Debug, Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SpacingArg {
    Geometric,
    Equidistant,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct ChainArgs {
    #[arg(long)]
    pub b: PathBuf,
    /// Target dilation factor.
    #[arg(long, default_value = "3")]
    pub t: String,
    #[arg(long, value_enum, default_value_t = OrderArg::Ascending)]
    pub order: OrderArg,
    #[arg(long, value_enum, default_value_t = SpacingArg::Geometric)]
    pub spacing: SpacingArg,
    /// Build the descending chain from B down to eps_{-1} B instead.
    #[arg(long)]
    pub negative: bool,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct FoundationArgs {
    #[arg(long)]
    pub a: PathBuf,
    #[arg(long)]
    pub b: PathBuf,
    #[arg(long, default_value_t = 1)]
    pub k: usize,
    #[arg(long)]
    pub allow_outside: bool,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct StabilizeArgs {
    #[arg(long)]
    pub a: PathBuf,
    #[arg(long)]
    pub b: PathBuf,
    #[arg(long, default_value_t = 1)]
    pub k: usize,
    #[arg(long, default_value = "3")]
    pub t: String,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct KoszulArgs {
    #[arg(long)]
    pub b: PathBuf,
    /// Multiplier support C; defaults to Z(2B).
    #[arg(long)]
    pub c: Option<PathBuf>,
    #[arg(long, default_value_t = 2)]
    pub k: usize,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct OsculateArgs {
    #[arg(long)]
    pub a: PathBuf,
    /// Explicit curve; otherwise a generic curve on Z(B) is sampled.
    #[arg(long)]
    pub f: Option<PathBuf>,
    #[arg(long)]
    pub b: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PolytopeOp {
    Describe,
    LatticePoints,
    Dilate,
    Erode,
    Sum,
    Enclosing,
    Bernstein,
    Epsilon0,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct PolytopeArgs {
    #[arg(long)]
    pub b: PathBuf,
    #[arg(long, value_enum, default_value_t = PolytopeOp::Describe)]
    pub op: PolytopeOp,
    /// Second polytope for erode, sum and bernstein.
    #[arg(long)]
    pub with: Option<PathBuf>,
    /// Point set for enclosing.
    #[arg(long)]
    pub a: Option<PathBuf>,
    /// Factor for dilate.
    #[arg(long)]
    pub t: Option<String>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct VerifyArgs {
    #[arg(long, default_value = "all")]
    pub suite: String,
}

/// Marker error for a failing verification suite.
#[derive(Debug)]
pub struct SuiteFailed(pub String);

impl std::fmt::Display for SuiteFailed {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "suite {} has failing criteria", self.0)
    }
}

impl std::error::Error for SuiteFailed {}

pub fn exit_code(err: &anyhow::Error) -> i32 {
    for cause in err.chain() {
        if let Some(MembershipError::GenericityFailure(_)) = cause.downcast_ref::<MembershipError>()
        {
            return EXIT_GENERICITY;
        }
        if cause.downcast_ref::<SuiteFailed>().is_some() {
            return EXIT_VERIFY;
        }
    }
    EXIT_INPUT
}

/// Default primes: `POLYMEM_PRIME_DEFAULT` (when set) replaces the first prime.
pub fn default_primes() -> Result<Vec<u64>> {
    let first = match std::env::var("POLYMEM_PRIME_DEFAULT") {
        Ok(v) => v
            .trim()
            .parse::<u64>()
            .with_context(|| format!("POLYMEM_PRIME_DEFAULT is not an integer: {v}"))?,
        Err(_) => DEFAULT_PRIME,
    };
    let second = if first == SECOND_PRIME {
        DEFAULT_PRIME
    } else {
        SECOND_PRIME
    };
    Ok(vec![first, second])
}

pub fn protocol(primes: &[u64], seeds: &[u64]) -> Result<Protocol> {
    let primes = if primes.is_empty() {
        default_primes()?
    } else {
        primes.to_vec()
    };
    let seeds = if seeds.is_empty() {
        vec![1, 2]
    } else {
        seeds.to_vec()
    };
    for &p in &primes {
        PrimeField::new(p).map_err(|e| anyhow!("{e}"))?;
    }
    Ok(Protocol { primes, seeds })
}

fn read_json(path: &Path) -> Result<Value> {
    let text =
        fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("malformed JSON in {}", path.display()))
}

/// A point set, or the lattice points of a polytope file (one with
/// `"facets"` or `"vertices"`).
pub fn load_points(path: &Path) -> Result<PointSet> {
    let v = read_json(path)?;
    if v.get("facets").is_some() || v.get("vertices").is_some() {
        return Ok(load_polytope_value(v, path)?.lattice_points());
    }
    pj::pointset_from_value(v).with_context(|| format!("bad point set in {}", path.display()))
}

fn load_polytope_value(v: Value, path: &Path) -> Result<HPolytope> {
    pj::polytope_from_value(v).with_context(|| format!("bad polytope in {}", path.display()))
}

pub fn load_polytope(path: &Path) -> Result<HPolytope> {
    load_polytope_value(read_json(path)?, path)
}

fn parse_factor(s: &str) -> Result<Rational> {
    parse_rational(s).map_err(|e| anyhow!("bad factor {s:?}: {e}"))
}

fn report(
    command: &str,
    config: impl Serialize,
    protocol: Option<&Protocol>,
    result: Value,
) -> Result<Value> {
    let mut cfg = serde_json::to_value(config)?;
    if let (Some(p), Value::Object(map)) = (protocol, &mut cfg) {
        map.insert("primes".into(), json!(p.primes));
        map.insert("seeds".into(), json!(p.seeds));
    }
    Ok(json!({ "command": command, "config": cfg, "result": result }))
}

enum Generators {
    Random(Vec<PointSet>),
    Explicit(Vec<Value>),
}

impl Generators {
    fn load(args: &GeneratorArgs) -> Result<(Generators, Option<HPolytope>)> {
        if !args.f.is_empty() {
            let vals = args
                .f
                .iter()
                .map(|p| read_json(p))
                .collect::<Result<Vec<_>>>()?;
            let body = args.b.as_deref().map(load_polytope).transpose()?;
            return Ok((Generators::Explicit(vals), body));
        }
        let Some(b) = &args.b else {
            bail!("give either --b (generic generators) or --f (explicit generators)");
        };
        let body = load_polytope(b)?;
        if args.k == 0 {
            bail!("--k must be positive");
        }
        Ok((
            Generators::Random(vec![body.lattice_points(); args.k]),
            Some(body),
        ))
    }

    fn len(&self) -> usize {
        match self {
            Generators::Random(s) => s.len(),
            Generators::Explicit(v) => v.len(),
        }
    }

    fn sample(&self, field: PrimeField, seed: u64) -> Result<Vec<SparsePoly>> {
        match self {
            Generators::Random(supports) => {
                Ok(polymem::sparsepoly::random_system(field, supports, seed)?)
            }
            Generators::Explicit(vals) => vals
                .iter()
                .map(|v| pj::poly_from_value(v.clone(), field).map_err(Into::into))
                .collect(),
        }
    }
}

struct Problem {
    a: PointSet,
    c: Vec<PointSet>,
    gens: Generators,
    translation: Vec<i64>,
    within: bool,
}

fn load_problem(args: &MembershipArgs) -> Result<Problem> {
    let a = load_points(&args.a)?;
    let (gens, body) = Generators::load(&args.gens)?;
    let k = gens.len();
    let mut translation = vec![0; a.dim()];
    let mut within = true;
    let c = if !args.c.is_empty() {
        let cs = args
            .c
            .iter()
            .map(|p| load_points(p))
            .collect::<Result<Vec<_>>>()?;
        match cs.len() {
            1 => vec![cs[0].clone(); k],
            n if n == k => cs,
            n => bail!("{n} multiplier supports for {k} generators"),
        }
    } else {
        let Some(b) = body else {
            bail!("without --c the multiplier supports come from --b");
        };
        let found = foundation_supports(&a, &b, k, args.allow_outside)?;
        translation = found
            .shift_b
            .iter()
            .zip(&found.shift_a)
            .map(|(x, y)| x - y)
            .collect();
        within = found.within_hypotheses;
        match &args.t {
            Some(t) => {
                let t = parse_factor(t)?;
                let shifted = b.translate(&to_rational_point(&found.shift_b));
                let pts = if t > int(0) {
                    shifted.dilate(&t)?.lattice_points()
                } else {
                    PointSet::origin(a.dim())
                };
                vec![pts.translate(&translation); k]
            }
            None => found.supports,
        }
    };
    Ok(Problem {
        a,
        c,
        gens,
        translation,
        within,
    })
}

fn solve_problem(p: &Problem, protocol: &Protocol) -> Result<MembershipReport> {
    if let Generators::Random(supports) = &p.gens {
        let spec = SystemSpec {
            a: p.a.clone(),
            c: p.c.clone(),
            generators: supports.clone(),
        };
        return Ok(membership_dim(&spec, protocol)?);
    }
    let mut first = None;
    protocol.agree(|field, seed| {
        let f = p
            .gens
            .sample(field, seed)
            .map_err(|e| MembershipError::GenericityFailure(e.to_string()))?;
        let r = MembershipProblem::new(p.a.clone(), p.c.clone(), f)?.solve();
        let dims = (r.dim_w, r.dim_ker, r.dim_v);
        if first.is_none() {
            first = Some(r);
        }
        Ok(dims)
    })?;
    let r = first.expect("protocol ran");
    Ok(MembershipReport {
        dim_w: r.dim_w,
        dim_ker: r.dim_ker,
        dim_v: r.dim_v,
        basis: r.basis,
        omega_rows: r.omega_rows,
        omega_cols: r.omega_cols,
        primes: protocol.primes.clone(),
        seeds: protocol.seeds.clone(),
    })
}

pub fn cmd_membership(args: &MembershipArgs, protocol: &Protocol) -> Result<Value> {
    let p = load_problem(args)?;
    let r = solve_problem(&p, protocol)?;
    let mut result = pj::membership_json(&r, &p.translation);
    result["withinHypotheses"] = json!(p.within);
    result["supports"] = json!(p.c.iter().map(pj::pointset_to_json).collect::<Vec<_>>());
    report("membership", args, Some(protocol), result)
}

pub fn cmd_decompose(args: &DecomposeArgs, protocol: &Protocol) -> Result<Value> {
    let p = load_problem(&args.problem)?;
    let g_val = read_json(&args.g)?;
    let mut runs = Vec::new();
    for &prime in &protocol.primes {
        let field = PrimeField::new(prime).map_err(|e| anyhow!("{e}"))?;
        let seed = protocol.seeds[0];
        let f = p.gens.sample(field, seed)?;
        let g = pj::poly_from_value(g_val.clone(), field)?;
        let problem = MembershipProblem::new(p.a.clone(), p.c.clone(), f.clone())?;
        let d = problem.decompose(&g)?;
        let mut o = pj::decomposition_json(&d);
        o["prime"] = json!(prime);
        o["seed"] = json!(seed);
        o["generators"] = json!(f.iter().map(pj::poly_to_json).collect::<Vec<_>>());
        runs.push(o);
    }
    report("decompose", args, Some(protocol), json!({ "runs": runs }))
}

pub fn cmd_chain(args: &ChainArgs) -> Result<Value> {
    let b = load_polytope(&args.b)?;
    let result = if args.negative {
        let floor = ChainConfig::new(int(2)).tau_floor;
        pj::negative_chain_json(&negative_chain(&b, None, &floor)?)
    } else {
        let t = parse_factor(&args.t)?;
        let mut cfg = ChainConfig::new(t.clone());
        cfg.order = match args.order {
            OrderArg::Ascending => FacetOrder::Ascending,
            OrderArg::Psi => FacetOrder::Psi,
        };
        cfg.spacing = match args.spacing {
            SpacingArg::Geometric => Spacing::Geometric,
            SpacingArg::Equidistant => Spacing::Equidistant,
        };
        let chain = build_normal_chain(&b, &cfg)?;
        let rep = validate_chain(&chain, &t)?;
        let ids = check_erosion_identities(&chain)?;
        pj::chain_json(&chain, &rep, &ids)
    };
    report("chain", args, None, result)
}

pub fn cmd_foundation(args: &FoundationArgs, protocol: &Protocol) -> Result<Value> {
    let a = load_points(&args.a)?;
    let b = load_polytope(&args.b)?;
    let found = foundation_supports(&a, &b, args.k, args.allow_outside)?;
    let spec = SystemSpec::uniform(a, found.supports[0].clone(), b.lattice_points(), args.k);
    let dims = membership_dim(&spec, protocol)?;
    let translation: Vec<i64> = found
        .shift_b
        .iter()
        .zip(&found.shift_a)
        .map(|(x, y)| x - y)
        .collect();
    let mut result = pj::foundation_json(&found);
    result["membership"] = pj::membership_json(&dims, &translation);
    report("foundation", args, Some(protocol), result)
}

pub fn cmd_stabilize(args: &StabilizeArgs, protocol: &Protocol) -> Result<Value> {
    let a = load_points(&args.a)?;
    let b = load_polytope(&args.b)?;
    let chain = build_normal_chain(&b, &ChainConfig::new(parse_factor(&args.t)?))?;
    let r = stabilization_check(&a, args.k, &chain, protocol)?;
    let mut result = pj::stabilization_json(&r);
    result["chainLength"] = json!(chain.terms.len());
    report("stabilize", args, Some(protocol), result)
}

pub fn cmd_koszul(args: &KoszulArgs, protocol: &Protocol) -> Result<Value> {
    let b = load_polytope(&args.b)?;
    let c = match &args.c {
        Some(p) => load_points(p)?,
        None if b.contains_origin() => b.dilate(&int(2))?.lattice_points(),
        None => b.dilate_about(&b.vertices()[0], &int(2))?.lattice_points(),
    };
    let r = koszul_kernel_dim(&c, &b.lattice_points(), args.k, protocol)?;
    report("koszul", args, Some(protocol), pj::koszul_json(&r))
}

pub fn cmd_osculate(args: &OsculateArgs, protocol: &Protocol) -> Result<Value> {
    let a = load_points(&args.a)?;
    let prime = protocol.primes[0];
    let seed = protocol.seeds[0];
    if prime > MAX_SCAN_PRIME {
        bail!("osculate scans the field; use a prime at most {MAX_SCAN_PRIME}");
    }
    let field = PrimeField::new(prime).map_err(|e| anyhow!("{e}"))?;
    let f = match (&args.f, &args.b) {
        (Some(p), _) => pj::poly_from_value(read_json(p)?, field)?,
        (None, Some(b)) => {
            SparsePoly::random_generic_seeded(field, &load_polytope(b)?.lattice_points(), seed)?
        }
        (None, None) => bail!("give --f or --b"),
    };
    let r = osculation_report(&a, &f, seed)?;
    let mut result = pj::osculation_json(&r);
    result["prime"] = json!(prime);
    result["seed"] = json!(seed);
    result["curve"] = pj::poly_to_json(&f);
    report("osculate", args, None, result)
}

pub fn cmd_polytope(args: &PolytopeArgs) -> Result<Value> {
    let b = load_polytope(&args.b)?;
    let other = || -> Result<HPolytope> {
        let p = args
            .with
            .as_ref()
            .ok_or_else(|| anyhow!("this operation needs --with"))?;
        load_polytope(p)
    };
    let result = match args.op {
        PolytopeOp::Describe => {
            let mut v = pj::polytope_to_json(&b.normalized());
            v["facetCount"] = json!(b.facet_count());
            v["latticePoints"] = json!(b.lattice_points().len());
            v["interiorLatticePoints"] = json!(b.interior_lattice_points().len());
            v
        }
        PolytopeOp::LatticePoints => pj::pointset_to_json(&b.lattice_points()),
        PolytopeOp::Dilate => {
            let t = parse_factor(
                args.t
                    .as_deref()
                    .ok_or_else(|| anyhow!("dilate needs --t"))?,
            )?;
            pj::polytope_to_json(&b.dilate(&t)?)
        }
        PolytopeOp::Erode => match b.erode(&other()?)? {
            Some(e) => pj::polytope_to_json(&e),
            None => json!(null),
        },
        PolytopeOp::Sum => pj::polytope_to_json(&b.minkowski_sum(&other()?)?),
        PolytopeOp::Enclosing => {
            let p = args
                .a
                .as_ref()
                .ok_or_else(|| anyhow!("enclosing needs --a"))?;
            json!(format_rational(&min_enclosing_factor_points(
                &load_points(p)?,
                &b
            )?))
        }
        PolytopeOp::Bernstein => json!(bernstein_number_2d(&b, &other()?)?),
        PolytopeOp::Epsilon0 => {
            let center = default_center(&b);
            let (eps0, t_crit) = epsilon0(&b, &center)?;
            json!({
                "center": center.iter().map(format_rational).collect::<Vec<_>>(),
                "epsilon0": format_rational(&eps0),
                "tCrit": format_rational(&t_crit),
            })
        }
    };
    report("polytope", args, None, result)
}

/// Runs one parsed command and returns the serialized report.
pub fn run(cli: &Cli) -> Result<String> {
    let protocol = protocol(&cli.primes, &cli.seeds)?;
    let value = match &cli.command {
        Command::Membership(a) => cmd_membership(a, &protocol)?,
        Command::Decompose(a) => cmd_decompose(a, &protocol)?,
        Command::Chain(a) => cmd_chain(a)?,
        Command::Foundation(a) => cmd_foundation(a, &protocol)?,
        Command::Stabilize(a) => cmd_stabilize(a, &protocol)?,
        Command::Koszul(a) => cmd_koszul(a, &protocol)?,
        Command::Osculate(a) => cmd_osculate(a, &protocol)?,
        Command::Polytope(a) => cmd_polytope(a)?,
        Command::Verify(a) => {
            let outcome = verify::run_suite(&a.suite, &protocol)?;
            for c in &outcome.criteria {
                println!("{}", c.line());
            }
            let text = pj::to_string(&outcome.to_json());
            if !outcome.passed() {
                if let Some(out) = &cli.out {
                    write_atomic(out, &text)?;
                }
                return Err(SuiteFailed(a.suite.clone()).into());
            }
            return Ok(text);
        }
    };
    Ok(pj::to_string(&value))
}

/// Writes through a temporary file in the same directory, then renames.
pub fn write_atomic(path: &Path, text: &str) -> Result<()> {
    let tmp = path.with_extension("tmp-write");
    fs::write(&tmp, text).with_context(|| format!("cannot write {}", tmp.display()))?;
    fs::rename(&tmp, path).with_context(|| format!("cannot move report to {}", path.display()))?;
    Ok(())
}
