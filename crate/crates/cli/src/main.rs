use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use codent::catalog;
use codent::codes::{enumerate_code, is_self_dual, is_type2, GenMatrix};
use codent::enumerators::{coefficient_matrix, is_invariant, swe_with_limit, DEFAULT_PAIRS_LIMIT};
use codent::groups::close_group;
use codent::molien::{expand_formula, fixed_space_dim, molien_series, RationalFormula, DEFAULT_ORDER};
use codent::poly::CLASS_VARS;
use codent::verify::{self, EmitKind, Format, VerifyConfig, DEFAULT_CLOSURE_LIMIT};
use codent::{CMatrix, Error, RingSpec, SwePoly};

#[derive(Parser)]
#[command(name = "codent", version, about = "Exact invariants of Type II codes over F_2 x Z_4")]
struct Cli {
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Close a generator set and report the group order.
    Group(GroupArgs),
    /// Enumerate a code and certify self-duality and the Type II condition.
    Code(CodeArgs),
    /// Symmetrized weight enumerator of a code tuple.
    Swe(SweArgs),
    /// Molien series of a group, optionally compared with a closed form.
    Molien(MolienArgs),
    /// Check that a polynomial is fixed by every generator.
    Invariance(InvarianceArgs),
    /// Coefficient matrix of enumerators at chosen monomials, and its determinant.
    Independence(IndependenceArgs),
    /// Reproduce every published number and report per claim.
    #[command(name = "verify-paper")]
    VerifyPaper(VerifyArgs),
    /// Print a catalog object.
    Emit(EmitArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum GroupName {
    #[value(name = "H")]
    H,
    #[value(name = "G")]
    G,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutFormat {
    Json,
    Text,
}

impl From<OutFormat> for Format {
    fn from(f: OutFormat) -> Self {
        match f {
            OutFormat::Json => Format::Json,
            OutFormat::Text => Format::Text,
        }
    }
}

#[derive(Args)]
struct GroupArgs {
    #[arg(long, value_enum, conflicts_with = "generators")]
    group: Option<GroupName>,
    /// JSON list of square matrices.
    #[arg(long)]
    generators: Option<PathBuf>,
    #[arg(long, default_value_t = DEFAULT_CLOSURE_LIMIT)]
    limit: usize,
}

#[derive(Args)]
struct CodeArgs {
    /// Catalog id (e8, q8, k8, d16, k16) or path to a generator-matrix JSON file.
    code: String,
}

#[derive(Args)]
struct SweArgs {
    /// Ring JSON `{"ks": [..]}`; defaults to F_2 x Z_4.
    #[arg(long)]
    spec: Option<PathBuf>,
    /// One code per ring factor: catalog ids or generator-matrix JSON files.
    #[arg(long, num_args = 1.., required = true)]
    codes: Vec<String>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "text")]
    format: OutFormat,
    #[arg(long, default_value_t = DEFAULT_PAIRS_LIMIT)]
    pairs_limit: u64,
}

#[derive(Args)]
struct MolienArgs {
    #[arg(long, value_enum, default_value = "H")]
    group: GroupName,
    #[arg(long, default_value_t = DEFAULT_ORDER)]
    order: usize,
    /// JSON `{"numerator": [..], "denominator": [..]}`, or `H` for the bundled closed form.
    #[arg(long)]
    formula: Option<String>,
    /// Also compute the fixed-space dimension directly at this degree.
    #[arg(long)]
    deep_degree: Option<u32>,
}

#[derive(Args)]
struct InvarianceArgs {
    /// Catalog enumerator id or polynomial JSON file.
    poly: String,
    #[arg(long, value_enum, default_value = "H")]
    group: GroupName,
}

#[derive(Args)]
struct IndependenceArgs {
    /// Use the bundled enumerators and monomials of this degree (8 or 16).
    #[arg(long, conflicts_with_all = ["polys", "monomials"])]
    degree: Option<u32>,
    /// Catalog enumerator ids or polynomial JSON files.
    #[arg(long, num_args = 1..)]
    polys: Vec<String>,
    /// Monomials such as `a^8` or `a*c^3*d^3*f^9`.
    #[arg(long, num_args = 1..)]
    monomials: Vec<String>,
}

#[derive(Args)]
struct VerifyArgs {
    /// JSON configuration; command-line flags override it.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long = "skip-G")]
    skip_g: bool,
    #[arg(long)]
    deep_degree: Option<u32>,
    #[arg(long)]
    pairs_limit: Option<u64>,
    /// Replace a bundled code, e.g. `q8=my_q8.json`.
    #[arg(long = "code", value_parser = parse_override)]
    codes: Vec<(String, PathBuf)>,
    #[arg(long, value_enum, default_value = "text")]
    format: OutFormat,
}

#[derive(Args)]
struct EmitArgs {
    #[arg(value_parser = ["matrix", "poly", "series", "code"])]
    what: String,
    id: String,
    #[arg(long, value_enum, default_value = "text")]
    format: OutFormat,
}

fn parse_override(s: &str) -> Result<(String, PathBuf), String> {
    let (id, path) = s.split_once('=').ok_or("expected ID=PATH")?;
    Ok((id.to_string(), PathBuf::from(path)))
}

/// Failure classes mapped to exit codes.
enum Failure {
    Claim(String),
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::NotFound(_) | Error::Parse(_) | Error::Shape(_) | Error::UnsupportedSpec(_) => {
                Failure::Usage(e.to_string())
            }
            _ => Failure::Claim(e.to_string()),
        }
    }
}

type CliResult = Result<(), Failure>;

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn load_code(arg: &str) -> Result<GenMatrix, Failure> {
    if catalog::CODE_IDS.contains(&arg) {
        Ok(catalog::code(arg)?)
    } else {
        read_json(Path::new(arg))
    }
}

fn load_poly(arg: &str) -> Result<SwePoly, Failure> {
    match verify::catalog_poly(arg) {
        Ok(p) => Ok(p),
        Err(Error::NotFound(_)) => read_json(Path::new(arg)),
        Err(e) => Err(e.into()),
    }
}

fn generators(name: GroupName) -> Result<Vec<CMatrix>, Failure> {
    Ok(match name {
        GroupName::H => catalog::h_generators()?,
        GroupName::G => catalog::g_generators()?,
    })
}

fn write_out(text: &str, out: Option<&Path>) -> CliResult {
    match out {
        Some(p) => std::fs::write(p, text).map_err(|e| Failure::Usage(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run_group(a: GroupArgs) -> CliResult {
    let (label, gens) = match (&a.generators, a.group) {
        (Some(p), _) => (p.display().to_string(), read_json::<Vec<CMatrix>>(p)?),
        (None, Some(g)) => (group_label(g).to_string(), generators(g)?),
        (None, None) => (group_label(GroupName::H).to_string(), generators(GroupName::H)?),
    };
    let grp = close_group(&gens, a.limit)?;
    let out = serde_json::json!({"group": label, "dim": grp.dim(), "order": grp.order()});
    println!("{out}");
    Ok(())
}

fn group_label(g: GroupName) -> &'static str {
    match g {
        GroupName::H => "H",
        GroupName::G => "G",
    }
}

fn run_code(a: CodeArgs) -> CliResult {
    let code = enumerate_code(&load_code(&a.code)?)?;
    let (sd, t2) = (is_self_dual(&code), is_type2(&code));
    let out = serde_json::json!({
        "modulus": code.modulus(),
        "n": code.n(),
        "size": code.len(),
        "self_dual": sd,
        "type_ii": t2,
        "hamming_weights": code.hamming_weights(),
    });
    println!("{out}");
    if sd && t2 {
        Ok(())
    } else {
        Err(Failure::Claim(format!("{} is not a self-dual Type II code", a.code)))
    }
}

fn run_swe(a: SweArgs) -> CliResult {
    let spec = match &a.spec {
        Some(p) => read_json::<RingSpec>(p)?,
        None => RingSpec::f2_z4(),
    };
    let sets = a.codes.iter().map(|c| Ok(enumerate_code(&load_code(c)?)?)).collect::<Result<Vec<_>, Failure>>()?;
    let refs: Vec<_> = sets.iter().collect();
    let w = swe_with_limit(&refs, &spec, a.pairs_limit)?;
    let text = match a.format {
        OutFormat::Text => format!("{w}\n"),
        OutFormat::Json => serde_json::to_string_pretty(&w).expect("serializable") + "\n",
    };
    write_out(&text, a.out.as_deref())
}

fn run_molien(a: MolienArgs) -> CliResult {
    let gens = generators(a.group)?;
    let grp = close_group(&gens, DEFAULT_CLOSURE_LIMIT)?;
    let series = molien_series(&grp, a.order)?;
    println!("{}", serde_json::to_string(&series).expect("serializable"));
    let mut ok = true;
    if let Some(f) = &a.formula {
        let formula = if f == "H" { catalog::molien_formula_h() } else { read_json::<RationalFormula>(Path::new(f))? };
        let agree = expand_formula(&formula, a.order) == series;
        println!("formula: {}", if agree { "agrees" } else { "disagrees" });
        ok &= agree;
    }
    if let Some(d) = a.deep_degree {
        let dim = fixed_space_dim(&gens, d)?;
        let m = series.coeff(d as usize);
        let agree = m.is_integer() && m.to_integer() == dim.into();
        println!("degree {d}: fixed space {dim}, Molien {m}: {}", if agree { "agrees" } else { "disagrees" });
        ok &= agree;
    }
    if ok {
        Ok(())
    } else {
        Err(Failure::Claim("series comparison failed".into()))
    }
}

fn run_invariance(a: InvarianceArgs) -> CliResult {
    let f = load_poly(&a.poly)?;
    let gens = generators(a.group)?;
    let ok = is_invariant(&f, &gens)?;
    println!("{}", serde_json::json!({"poly": a.poly, "group": group_label(a.group), "invariant": ok}));
    if ok {
        Ok(())
    } else {
        Err(Failure::Claim(format!("{} is not invariant", a.poly)))
    }
}

fn parse_monomial(s: &str) -> Result<Vec<u32>, Failure> {
    let p = SwePoly::parse(s, &CLASS_VARS)?;
    match p.terms().next() {
        Some((m, c)) if p.len() == 1 && c.is_one() => Ok(m.0.clone()),
        _ => Err(Failure::Usage(format!("not a monomial: {s:?}"))),
    }
}

fn run_independence(a: IndependenceArgs) -> CliResult {
    let (polys, mons): (Vec<SwePoly>, Vec<Vec<u32>>) = match a.degree {
        Some(8) => (
            catalog::DEGREE8_PAIRS.iter().map(|p| verify::catalog_poly(p.0)).collect::<Result<_, _>>()?,
            catalog::DEGREE8_MONOMIALS.iter().map(|m| m.to_vec()).collect(),
        ),
        Some(16) => (
            catalog::DEGREE16_PAIRS.iter().map(|p| verify::catalog_poly(p.0)).collect::<Result<_, _>>()?,
            catalog::DEGREE16_MONOMIALS.iter().map(|m| m.to_vec()).collect(),
        ),
        Some(d) => return Err(Failure::Usage(format!("no bundled enumerators of degree {d}"))),
        None => (
            a.polys.iter().map(|p| load_poly(p)).collect::<Result<_, _>>()?,
            a.monomials.iter().map(|m| parse_monomial(m)).collect::<Result<_, _>>()?,
        ),
    };
    if polys.is_empty() || polys.len() != mons.len() {
        return Err(Failure::Usage(format!("need as many monomials as polynomials ({} vs {})", mons.len(), polys.len())));
    }
    let m = coefficient_matrix(&polys, &mons)?;
    let det = m.det()?;
    print!("{m}");
    println!("det = {det}");
    if det.is_zero() {
        Err(Failure::Claim("coefficient matrix is singular".into()))
    } else {
        Ok(())
    }
}

fn run_verify(a: VerifyArgs) -> CliResult {
    let mut cfg = match &a.config {
        Some(p) => VerifyConfig::load(p)?,
        None => VerifyConfig::default(),
    };
    cfg.skip_g |= a.skip_g;
    if a.deep_degree.is_some() {
        cfg.deep_degree = a.deep_degree;
    }
    if let Some(n) = a.pairs_limit {
        cfg.pairs_limit = n;
    }
    for (id, path) in a.codes {
        if !catalog::CODE_IDS.contains(&id.as_str()) {
            return Err(Failure::Usage(format!("unknown code id {id:?}")));
        }
        cfg.codes.insert(id, path);
    }
    let report = verify::verify_paper(&cfg);
    match a.format {
        OutFormat::Text => print!("{}", report.to_text()),
        OutFormat::Json => println!("{}", serde_json::to_string_pretty(&report).expect("serializable")),
    }
    if report.pass {
        Ok(())
    } else {
        Err(Failure::Claim(format!("failing claims: {}", report.failing().join(", "))))
    }
}

fn run_emit(a: EmitArgs) -> CliResult {
    let kind: EmitKind = a.what.parse()?;
    print!("{}", verify::emit(kind, &a.id, a.format.into())?);
    Ok(())
}

fn init() {
    tracing_subscriber::fmt()
        .with_writer(std::io::stderr)
        .with_env_filter(
            tracing_subscriber::EnvFilter::try_from_env("CODENT_LOG").unwrap_or_else(|_| "warn".into()),
        )
        .init();
    if let Some(n) = std::env::var("CODENT_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        if n > 0 {
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    init();
    let res = match cli.cmd {
        Command::Group(a) => run_group(a),
        Command::Code(a) => run_code(a),
        Command::Swe(a) => run_swe(a),
        Command::Molien(a) => run_molien(a),
        Command::Invariance(a) => run_invariance(a),
        Command::Independence(a) => run_independence(a),
        Command::VerifyPaper(a) => run_verify(a),
        Command::Emit(a) => run_emit(a),
    };
    match res {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Claim(msg)) => {
            eprintln!("codent: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("codent: {msg}");
            ExitCode::from(2)
        }
    }
}
