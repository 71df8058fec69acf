//! The end-to-end check of every published number, and byte-stable
//! emission of catalog objects.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::catalog;
use crate::codes::{self, enumerate_code, is_self_dual, is_type2, CodeSet, GenMatrix};
use crate::cyclotomic::Cyclo8;
use crate::enumerators::{coefficient_matrix, evaluate, is_invariant, swe_with_limit, DEFAULT_PAIRS_LIMIT};
use crate::error::{Error, Result};
use crate::groups::{build_zeta, close_group, symmetrize};
use crate::linalg::CMatrix;
use crate::molien::{expand_formula, fixed_space_dim, molien_series, RationalSeries, DEFAULT_ORDER};
use crate::poly::{SwePoly, CLASS_VARS};

/// Element cap for the closures of G and H.
pub const DEFAULT_CLOSURE_LIMIT: usize = 1 << 21;

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct VerifyConfig {
    pub skip_g: bool,
    /// Extra degree for the direct fixed-space computation.
    pub deep_degree: Option<u32>,
    pub pairs_limit: u64,
    pub closure_limit: usize,
    pub molien_order: usize,
    /// Replacement generator matrices by catalog id.
    pub codes: BTreeMap<String, PathBuf>,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            skip_g: false,
            deep_degree: None,
            pairs_limit: DEFAULT_PAIRS_LIMIT,
            closure_limit: DEFAULT_CLOSURE_LIMIT,
            molien_order: DEFAULT_ORDER,
            codes: BTreeMap::new(),
        }
    }
}

impl VerifyConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::NotFound(format!("{}: {e}", path.display())))?;
        let mut cfg: VerifyConfig =
            serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
        let base = path.parent().unwrap_or(Path::new("."));
        for p in cfg.codes.values_mut() {
            if p.is_relative() {
                *p = base.join(&*p);
            }
        }
        Ok(cfg)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Pass,
    Fail,
    Skipped,
}

/// Why a claim failed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FailureKind {
    /// A computed value differs from the published one.
    PaperMismatch,
    /// Two independent computations disagree.
    InternalInconsistency,
    /// The computation itself did not finish.
    Error,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ClaimResult {
    pub id: String,
    pub criterion: u8,
    pub expected: String,
    pub computed: String,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failure: Option<FailureKind>,
    pub elapsed_ms: u64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VerificationReport {
    pub claims: Vec<ClaimResult>,
    pub pass: bool,
}

impl VerificationReport {
    pub fn failing(&self) -> Vec<&str> {
        self.claims.iter().filter(|c| c.verdict == Verdict::Fail).map(|c| c.id.as_str()).collect()
    }

    pub fn claim(&self, id: &str) -> Option<&ClaimResult> {
        self.claims.iter().find(|c| c.id == id)
    }

    /// One line per claim, without timings.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for c in &self.claims {
            let tag = match (c.verdict, c.failure) {
                (Verdict::Pass, _) => "PASS".to_string(),
                (Verdict::Skipped, _) => "SKIP".to_string(),
                (Verdict::Fail, Some(FailureKind::PaperMismatch)) => "FAIL (mismatch vs paper fixture)".to_string(),
                (Verdict::Fail, Some(FailureKind::InternalInconsistency)) => "FAIL (internal inconsistency)".to_string(),
                (Verdict::Fail, _) => "FAIL (error)".to_string(),
            };
            out.push_str(&format!("[{}] {}: {} | expected {} | computed {}\n", c.criterion, c.id, tag, c.expected, c.computed));
        }
        out.push_str(if self.pass { "overall: PASS\n" } else { "overall: FAIL\n" });
        out
    }
}

/// What a claim body reports back.
struct Outcome {
    expected: String,
    computed: String,
    ok: bool,
    kind: FailureKind,
}

impl Outcome {
    fn paper(expected: impl ToString, computed: impl ToString, ok: bool) -> Self {
        Outcome { expected: expected.to_string(), computed: computed.to_string(), ok, kind: FailureKind::PaperMismatch }
    }

    fn internal(expected: impl ToString, computed: impl ToString, ok: bool) -> Self {
        Outcome {
            expected: expected.to_string(),
            computed: computed.to_string(),
            ok,
            kind: FailureKind::InternalInconsistency,
        }
    }
}

struct Runner {
    claims: Vec<ClaimResult>,
}

impl Runner {
    fn run(&mut self, id: &str, criterion: u8, body: impl FnOnce() -> Result<Outcome>) {
        let start = Instant::now();
        let res = body();
        let elapsed_ms = start.elapsed().as_millis() as u64;
        let claim = match res {
            Ok(o) => ClaimResult {
                id: id.into(),
                criterion,
                expected: o.expected,
                computed: o.computed,
                verdict: if o.ok { Verdict::Pass } else { Verdict::Fail },
                failure: (!o.ok).then_some(o.kind),
                elapsed_ms,
            },
            Err(e) => ClaimResult {
                id: id.into(),
                criterion,
                expected: "completion".into(),
                computed: e.to_string(),
                verdict: Verdict::Fail,
                failure: Some(FailureKind::Error),
                elapsed_ms,
            },
        };
        tracing::info!(
            claim = id,
            verdict = ?claim.verdict,
            elapsed_ms,
            peak_rss_kb = peak_rss_kb().unwrap_or(0),
            "claim finished"
        );
        self.claims.push(claim);
    }

    fn skip(&mut self, id: &str, criterion: u8, expected: impl ToString, why: &str) {
        self.claims.push(ClaimResult {
            id: id.into(),
            criterion,
            expected: expected.to_string(),
            computed: format!("skipped ({why})"),
            verdict: Verdict::Skipped,
            failure: None,
            elapsed_ms: 0,
        });
    }
}

/// Peak resident set size from `/proc`, where available.
pub fn peak_rss_kb() -> Option<u64> {
    let status = std::fs::read_to_string("/proc/self/status").ok()?;
    let line = status.lines().find(|l| l.starts_with("VmHWM:"))?;
    line.split_whitespace().nth(1)?.parse().ok()
}

/// Catalog code source honouring overrides from the config.
struct Codes<'a> {
    overrides: &'a BTreeMap<String, PathBuf>,
}

impl Codes<'_> {
    fn gen(&self, id: &str) -> Result<GenMatrix> {
        match self.overrides.get(id) {
            Some(path) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| Error::NotFound(format!("{}: {e}", path.display())))?;
                serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
            }
            None => catalog::code(id),
        }
    }

    fn sum(&self, ids: &[&str]) -> Result<GenMatrix> {
        let mut g = self.gen(ids[0])?;
        for id in &ids[1..] {
            g = codes::direct_sum(&g, &self.gen(id)?)?;
        }
        Ok(g)
    }
}

fn mass(f: &SwePoly) -> Result<Cyclo8> {
    evaluate(f, &vec![Cyclo8::one(); f.nvars()])
}

fn diff_summary(computed: &SwePoly, printed: &SwePoly) -> String {
    let mut bad = Vec::new();
    let mut keys: Vec<_> = computed.terms().map(|(m, _)| m.clone()).collect();
    keys.extend(printed.terms().map(|(m, _)| m.clone()));
    keys.sort();
    keys.dedup();
    for m in keys {
        let (a, b) = (computed.coeff(&m.0), printed.coeff(&m.0));
        if a != b {
            bad.push(format!("{} computed {a} printed {b}", SwePoly::monomial(m.0.clone(), Cyclo8::one())));
        }
    }
    let n = bad.len();
    bad.truncate(3);
    format!("{n} differing terms, e.g. {}", bad.join("; "))
}

/// Runs every claim in order. Later claims that depend on a failed
/// computation report an error rather than being skipped.
pub fn verify_paper(cfg: &VerifyConfig) -> VerificationReport {
    let mut r = Runner { claims: Vec::new() };
    let spec = catalog::ring();
    let src = Codes { overrides: &cfg.codes };

    r.run("generators", 1, || {
        let g = catalog::g_generators()?;
        let h = catalog::h_generators()?;
        let mut bad = Vec::new();
        for (i, name) in catalog::GENERATOR_NAMES.iter().enumerate().take(5) {
            if g[i] != catalog::printed_matrix(name)? {
                bad.push(name.to_string());
            }
            if h[i] != catalog::printed_matrix(&format!("phi_{name}"))? {
                bad.push(format!("phi_{name}"));
            }
        }
        if g[5] != build_zeta(8) || h[5] != build_zeta(6) || symmetrize(&g[5], &spec)? != h[5] {
            bad.push("zeta8".into());
        }
        Ok(Outcome::paper("12 matrices equal to the printed ones", if bad.is_empty() { "all equal".into() } else { format!("differ: {}", bad.join(", ")) }, bad.is_empty()))
    });

    let h_gens = catalog::h_generators();
    let mut h_group = None;
    r.run("order-H", 2, || {
        let gens = h_gens.clone()?;
        let grp = close_group(&gens, cfg.closure_limit)?;
        let order = grp.order();
        h_group = Some(grp);
        Ok(Outcome::paper(catalog::ORDER_H, order, order == catalog::ORDER_H))
    });
    if cfg.skip_g {
        r.skip("order-G", 2, catalog::ORDER_G, "--skip-G");
    } else {
        r.run("order-G", 2, || {
            let grp = close_group(&catalog::g_generators()?, cfg.closure_limit)?;
            Ok(Outcome::paper(catalog::ORDER_G, grp.order(), grp.order() == catalog::ORDER_G))
        });
    }

    let mut sets: BTreeMap<String, CodeSet> = BTreeMap::new();
    r.run("codes", 3, || {
        let expect_sizes = [("e8", 16usize), ("q8", 256), ("k8", 256), ("d16", 256), ("k16", 65536)];
        let sums: [&[&str]; 4] = [&["e8", "e8"], &["q8", "q8"], &["q8", "k8"], &["k8", "k8"]];
        let mut bad = Vec::new();
        let mut summary = Vec::new();
        for (id, size) in expect_sizes {
            let c = enumerate_code(&src.gen(id)?)?;
            let ok = c.len() == size && is_self_dual(&c) && is_type2(&c);
            summary.push(format!("{id}:{}", c.len()));
            if !ok {
                bad.push(id.to_string());
            }
            sets.insert(id.into(), c);
        }
        for ids in sums {
            let c = enumerate_code(&src.sum(ids)?)?;
            let name = ids.join("+");
            if !(is_self_dual(&c) && is_type2(&c)) {
                bad.push(name.clone());
            }
            sets.insert(name, c);
        }
        let computed = if bad.is_empty() {
            format!("all self-dual Type II; sizes {}", summary.join(" "))
        } else {
            format!("failed: {}; sizes {}", bad.join(", "), summary.join(" "))
        };
        Ok(Outcome::paper("self-dual Type II; sizes e8:16 q8:256 k8:256 d16:256 k16:65536", computed, bad.is_empty()))
    });

    let get = |sets: &BTreeMap<String, CodeSet>, ids: &[&str]| -> Result<CodeSet> {
        let key = ids.join("+");
        match sets.get(&key) {
            Some(c) => Ok(c.clone()),
            None => enumerate_code(&src.sum(ids)?),
        }
    };

    let mut deg8: Vec<SwePoly> = Vec::new();
    r.run("swe-degree8", 4, || {
        let mut bad = Vec::new();
        for (id, a, b) in catalog::DEGREE8_PAIRS {
            let w = swe_with_limit(&[&get(&sets, &[a])?, &get(&sets, &[b])?], &spec, cfg.pairs_limit)?;
            let printed = catalog::printed_poly(id)?;
            if w != printed {
                bad.push(format!("{id}: {}", diff_summary(&w, &printed)));
            }
            deg8.push(w);
        }
        let computed = if bad.is_empty() { "both equal".to_string() } else { bad.join(" | ") };
        Ok(Outcome::paper("W_E8_Q8 and W_E8_K8 equal to the printed polynomials", computed, bad.is_empty()))
    });

    r.run("invariance-degree8", 5, || {
        let gens = h_gens.clone()?;
        let flags: Vec<bool> = deg8.iter().map(|f| is_invariant(f, &gens)).collect::<Result<_>>()?;
        if flags.is_empty() {
            return Err(Error::Internal("degree-8 enumerators unavailable".into()));
        }
        Ok(Outcome::paper("invariant under all 6 generators", format!("{flags:?}"), flags.iter().all(|&b| b)))
    });

    r.run("independence-degree8", 6, || {
        let mons: Vec<Vec<u32>> = catalog::DEGREE8_MONOMIALS.iter().map(|m| m.to_vec()).collect();
        if deg8.len() != 2 {
            return Err(Error::Internal("degree-8 enumerators unavailable".into()));
        }
        let m = coefficient_matrix(&deg8, &mons)?;
        let det = m.det()?;
        let expected = CMatrix::from_int_rows(&[vec![1, 32], vec![1, 128]])?;
        Ok(Outcome::paper("[[1, 32], [1, 128]], det 96", format!("det {det}"), m == expected && !det.is_zero()))
    });

    let mut deg16: Vec<(&str, SwePoly)> = Vec::new();
    r.run("invariance-degree16", 5, || {
        let gens = h_gens.clone()?;
        let mut bad = Vec::new();
        for (id, a, b) in catalog::DEGREE16_PAIRS {
            let w = swe_with_limit(&[&get(&sets, a)?, &get(&sets, b)?], &spec, cfg.pairs_limit)?;
            if w.homogeneous_degree() != Some(16) || !is_invariant(&w, &gens)? {
                bad.push(id);
            }
            deg16.push((id, w));
        }
        let computed = if bad.is_empty() { "all invariant".to_string() } else { format!("not invariant: {}", bad.join(", ")) };
        Ok(Outcome::paper("6 enumerators invariant under all 6 generators", computed, bad.is_empty()))
    });

    r.run("independence-degree16", 6, || {
        if deg16.len() != 6 {
            return Err(Error::Internal("degree-16 enumerators unavailable".into()));
        }
        let polys: Vec<SwePoly> = deg16.iter().map(|(_, p)| p.clone()).collect();
        let mons: Vec<Vec<u32>> = catalog::DEGREE16_MONOMIALS.iter().map(|m| m.to_vec()).collect();
        let det = coefficient_matrix(&polys, &mons)?.det()?;
        Ok(Outcome::paper("nonzero determinant", format!("det {det}"), !det.is_zero()))
    });

    r.run("cross-checks", 8, || {
        let mut bad = Vec::new();
        let products = [4096u64, 4096];
        for (w, p) in deg8.iter().zip(products) {
            if mass(w)? != Cyclo8::from_integer(p as i64) {
                bad.push("degree-8 mass");
            }
        }
        for (id, a, b) in catalog::DEGREE16_PAIRS {
            let size = (get(&sets, a)?.len() * get(&sets, b)?.len()) as i64;
            match deg16.iter().find(|(i, _)| *i == id) {
                Some((_, w)) if mass(w)? == Cyclo8::from_integer(size) => {}
                _ => bad.push("degree-16 mass"),
            }
        }
        let square = deg8.first().ok_or_else(|| Error::Internal("degree-8 enumerators unavailable".into()))?.pow(2)?;
        match deg16.iter().find(|(i, _)| *i == "W2_E8_Q8") {
            Some((_, w)) if *w == square => {}
            _ => bad.push("multiplicativity"),
        }
        bad.dedup();
        let computed = if bad.is_empty() { "all consistent".to_string() } else { format!("failed: {}", bad.join(", ")) };
        Ok(Outcome::internal("mass = product of code sizes; W_E8_Q8^2 = W(E8+E8, Q8+Q8)", computed, bad.is_empty()))
    });

    let mut series: Option<RationalSeries> = None;
    r.run("molien", 7, || {
        let grp = h_group.as_ref().ok_or_else(|| Error::Internal("closure of H unavailable".into()))?;
        let n = cfg.molien_order.max(48);
        let s = molien_series(grp, n)?;
        let mut expected = vec![0i64; 49];
        for (i, c) in catalog::MOLIEN_H_PRINTED.iter().enumerate() {
            expected[8 * i] = *c as i64;
        }
        let printed_ok = s.truncate(48) == RationalSeries::from_ints(&expected);
        let formula_ok = expand_formula(&catalog::molien_formula_h(), n) == s;
        series = Some(s.clone());
        let computed = format!("{}; formula {}", s.truncate(48), if formula_ok { "agrees" } else { "disagrees" });
        Ok(Outcome::paper(
            format!("{} and the closed form to t^{n}", RationalSeries::from_ints(&expected)),
            computed,
            printed_ok && formula_ok,
        ))
    });

    r.run("fixed-space", 8, || {
        let gens = h_gens.clone()?;
        let s = series.as_ref().ok_or_else(|| Error::Internal("Molien series unavailable".into()))?;
        let mut degrees = vec![0u32, 1, 8];
        if let Some(d) = cfg.deep_degree {
            if !degrees.contains(&d) {
                degrees.push(d);
            }
        }
        let mut parts = Vec::new();
        let mut ok = true;
        for d in degrees {
            let dim = fixed_space_dim(&gens, d)?;
            let m = s.coeff(d as usize);
            ok &= m == num_rational::BigRational::from_integer(dim.into());
            parts.push(format!("d{d}: {dim} vs {m}"));
        }
        Ok(Outcome::internal("direct dimension = Molien coefficient", parts.join(", "), ok))
    });

    let pass = r.claims.iter().all(|c| c.verdict != Verdict::Fail);
    VerificationReport { claims: r.claims, pass }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EmitKind {
    Matrix,
    Poly,
    Series,
    Code,
}

impl std::str::FromStr for EmitKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "matrix" => EmitKind::Matrix,
            "poly" => EmitKind::Poly,
            "series" => EmitKind::Series,
            "code" => EmitKind::Code,
            _ => return Err(Error::Parse(format!("unknown kind {s:?}"))),
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Text,
}

impl std::str::FromStr for Format {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(Format::Json),
            "text" => Ok(Format::Text),
            _ => Err(Error::Parse(format!("unknown format {s:?}"))),
        }
    }
}

/// Ids accepted by [`emit`] for each kind.
pub fn emit_ids(kind: EmitKind) -> Vec<String> {
    match kind {
        EmitKind::Matrix => catalog::GENERATOR_NAMES
            .iter()
            .flat_map(|n| [n.to_string(), format!("phi_{n}")])
            .collect(),
        EmitKind::Poly => catalog::DEGREE8_PAIRS
            .iter()
            .map(|p| p.0.to_string())
            .chain(catalog::DEGREE16_PAIRS.iter().map(|p| p.0.to_string()))
            .collect(),
        EmitKind::Series => vec!["molien_H".into(), "formula_H".into()],
        EmitKind::Code => catalog::CODE_IDS.iter().map(|s| s.to_string()).collect(),
    }
}

fn json<T: Serialize>(v: &T) -> Result<String> {
    serde_json::to_string_pretty(v).map_err(|e| Error::Internal(e.to_string()))
}

/// Matrix by emit id.
pub fn catalog_matrix(id: &str) -> Result<CMatrix> {
    let (phi, name) = match id.strip_prefix("phi_") {
        Some(rest) => (true, rest),
        None => (false, id),
    };
    let i = catalog::GENERATOR_NAMES
        .iter()
        .position(|n| *n == name)
        .ok_or_else(|| Error::NotFound(format!("matrix {id:?}")))?;
    let m = if phi { catalog::h_generators()? } else { catalog::g_generators()? };
    Ok(m[i].clone())
}

/// Enumerator by emit id, computed from the bundled codes.
pub fn catalog_poly(id: &str) -> Result<SwePoly> {
    let spec = catalog::ring();
    let src = Codes { overrides: &BTreeMap::new() };
    let (a, b): (Vec<&str>, Vec<&str>) = if let Some(p) = catalog::DEGREE8_PAIRS.iter().find(|p| p.0 == id) {
        (vec![p.1], vec![p.2])
    } else if let Some(p) = catalog::DEGREE16_PAIRS.iter().find(|p| p.0 == id) {
        (p.1.to_vec(), p.2.to_vec())
    } else {
        return Err(Error::NotFound(format!("polynomial {id:?}")));
    };
    let ca = enumerate_code(&src.sum(&a)?)?;
    let cb = enumerate_code(&src.sum(&b)?)?;
    swe_with_limit(&[&ca, &cb], &spec, DEFAULT_PAIRS_LIMIT)
}

/// Series by emit id, to order [`DEFAULT_ORDER`].
pub fn catalog_series(id: &str) -> Result<RationalSeries> {
    match id {
        "molien_H" => molien_series(&close_group(&catalog::h_generators()?, DEFAULT_CLOSURE_LIMIT)?, DEFAULT_ORDER),
        "formula_H" => Ok(expand_formula(&catalog::molien_formula_h(), DEFAULT_ORDER)),
        _ => Err(Error::NotFound(format!("series {id:?}"))),
    }
}

/// Deterministic rendering of a catalog object.
pub fn emit(kind: EmitKind, id: &str, format: Format) -> Result<String> {
    let mut out = match (kind, format) {
        (EmitKind::Matrix, Format::Text) => catalog_matrix(id)?.to_string(),
        (EmitKind::Matrix, Format::Json) => json(&catalog_matrix(id)?)?,
        (EmitKind::Poly, Format::Text) => catalog_poly(id)?.to_text(&CLASS_VARS),
        (EmitKind::Poly, Format::Json) => json(&catalog_poly(id)?)?,
        (EmitKind::Series, Format::Text) => catalog_series(id)?.to_string(),
        (EmitKind::Series, Format::Json) => serde_json::to_string(&catalog_series(id)?).map_err(|e| Error::Internal(e.to_string()))?,
        (EmitKind::Code, Format::Json) => serde_json::to_string(&catalog::code(id)?).map_err(|e| Error::Internal(e.to_string()))?,
        (EmitKind::Code, Format::Text) => {
            let g = catalog::code(id)?;
            let rows: Vec<String> = g
                .rows()
                .iter()
                .map(|r| r.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" "))
                .collect();
            format!("Z_{} length {}\n{}", g.modulus(), g.n(), rows.join("\n"))
        }
    };
    if !out.ends_with('\n') {
        out.push('\n');
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn emit_is_stable_and_checks_ids() {
        let a = emit(EmitKind::Matrix, "phi_chi", Format::Text).unwrap();
        assert_eq!(a, emit(EmitKind::Matrix, "phi_chi", Format::Text).unwrap());
        assert_eq!(a.lines().count(), 6);
        assert!(matches!(emit(EmitKind::Matrix, "psi", Format::Text), Err(Error::NotFound(_))));
        assert!(matches!(emit(EmitKind::Poly, "W_X", Format::Json), Err(Error::NotFound(_))));
        let code = emit(EmitKind::Code, "e8", Format::Text).unwrap();
        assert!(code.starts_with("Z_2 length 8\n1 1 1 1 0 0 0 0"));
    }

    #[test]
    fn emitted_poly_parses_back_to_the_fixture() {
        let text = emit(EmitKind::Poly, "W_E8_K8", Format::Text).unwrap();
        assert_eq!(SwePoly::parse(text.trim(), &CLASS_VARS).unwrap(), catalog::printed_poly("W_E8_K8").unwrap());
    }

    #[test]
    fn config_rejects_unknown_keys() {
        assert!(serde_json::from_str::<VerifyConfig>(r#"{"skip_g": true}"#).unwrap().skip_g);
        assert!(serde_json::from_str::<VerifyConfig>(r#"{"skip_gg": true}"#).is_err());
    }
}
