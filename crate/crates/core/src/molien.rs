//! Molien series of closed groups, checked against closed forms and
//! against fixed-space dimensions computed directly.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use rustc_hash::FxHashMap;
use serde::{Deserialize, Serialize};

use crate::cyclotomic::{Cyclo8, IntCyclo};
use crate::error::{Error, Result};
use crate::groups::{GroupClosure, PackedMat};
use crate::linalg::CMatrix;
use crate::poly::{substitute_linear, Packing, SwePoly};

/// Order used when none is given; the top numerator degree of the H formula.
pub const DEFAULT_ORDER: usize = 56;

/// Largest monomial basis [`fixed_space_dim`] accepts by default
/// (degree 16 in six variables).
pub const DEFAULT_MONOMIAL_LIMIT: usize = 20_349;

/// Truncated power series `sum_{d <= N} c_d t^d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalSeries {
    coeffs: Vec<BigRational>,
}

impl RationalSeries {
    pub fn new(coeffs: Vec<BigRational>) -> Self {
        RationalSeries { coeffs }
    }

    pub fn from_ints(v: &[i64]) -> Self {
        RationalSeries { coeffs: v.iter().map(|&x| BigRational::from_integer(x.into())).collect() }
    }

    /// Truncation order `N`.
    pub fn order(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, d: usize) -> BigRational {
        self.coeffs.get(d).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn truncate(&self, n: usize) -> RationalSeries {
        RationalSeries { coeffs: self.coeffs.iter().take(n + 1).cloned().collect() }
    }

    /// Coefficients as machine integers, if they all are.
    pub fn as_integers(&self) -> Option<Vec<i64>> {
        self.coeffs.iter().map(|c| c.is_integer().then(|| c.to_integer().to_i64()).flatten()).collect()
    }
}

impl fmt::Display for RationalSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (d, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            match (d, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => f.write_str("t")?,
                (1, false) => write!(f, "{mag}*t")?,
                (_, true) => write!(f, "t^{d}")?,
                (_, false) => write!(f, "{mag}*t^{d}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        write!(f, " + O(t^{})", self.coeffs.len())
    }
}

fn rational_json(r: &BigRational) -> serde_json::Value {
    if r.is_integer() {
        if let Some(v) = r.to_integer().to_i64() {
            return v.into();
        }
    }
    r.to_string().into()
}

fn rational_from_json(v: &serde_json::Value) -> std::result::Result<BigRational, String> {
    match v {
        serde_json::Value::Number(n) => {
            n.as_i64().map(|x| BigRational::from_integer(x.into())).ok_or_else(|| format!("not an integer: {n}"))
        }
        serde_json::Value::String(s) => crate::ring::parse_rational(s).map_err(|e| e.to_string()),
        other => Err(format!("bad coefficient {other}")),
    }
}

impl Serialize for RationalSeries {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let v: Vec<serde_json::Value> = self.coeffs.iter().map(rational_json).collect();
        v.serialize(s)
    }
}

impl<'de> Deserialize<'de> for RationalSeries {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = Vec::<serde_json::Value>::deserialize(d)?;
        let coeffs = raw.iter().map(rational_from_json).collect::<std::result::Result<_, _>>();
        coeffs.map(RationalSeries::new).map_err(serde::de::Error::custom)
    }
}

/// `numerator(t) / denominator(t)` with integer coefficients, lowest degree first.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawFormula", into = "RawFormula")]
pub struct RationalFormula {
    numerator: Vec<BigInt>,
    denominator: Vec<BigInt>,
}

#[derive(Serialize, Deserialize)]
struct RawFormula {
    numerator: Vec<serde_json::Value>,
    denominator: Vec<serde_json::Value>,
}

fn int_list(v: &[serde_json::Value]) -> Result<Vec<BigInt>> {
    v.iter()
        .map(|x| {
            let r = rational_from_json(x).map_err(Error::Parse)?;
            if !r.is_integer() {
                return Err(Error::Parse(format!("formula coefficient {r} is not an integer")));
            }
            Ok(r.to_integer())
        })
        .collect()
}

impl TryFrom<RawFormula> for RationalFormula {
    type Error = Error;
    fn try_from(r: RawFormula) -> Result<Self> {
        RationalFormula::new(int_list(&r.numerator)?, int_list(&r.denominator)?)
    }
}

impl From<RationalFormula> for RawFormula {
    fn from(f: RationalFormula) -> Self {
        let conv = |v: &[BigInt]| v.iter().map(|c| rational_json(&BigRational::from_integer(c.clone()))).collect();
        RawFormula { numerator: conv(&f.numerator), denominator: conv(&f.denominator) }
    }
}

impl RationalFormula {
    pub fn new(numerator: Vec<BigInt>, denominator: Vec<BigInt>) -> Result<Self> {
        if denominator.first().is_none_or(Zero::is_zero) {
            return Err(Error::domain("denominator must have a nonzero constant term"));
        }
        Ok(RationalFormula { numerator, denominator })
    }

    pub fn from_ints(numerator: &[i64], denominator: &[i64]) -> Result<Self> {
        Self::new(numerator.iter().map(|&x| x.into()).collect(), denominator.iter().map(|&x| x.into()).collect())
    }

    /// Builds the denominator as a product of powers of the given factors.
    pub fn from_factors(numerator: &[i64], factors: &[(&[i64], u32)]) -> Self {
        let mut den = vec![BigInt::one()];
        for (f, e) in factors {
            for _ in 0..*e {
                let mut next = vec![BigInt::zero(); den.len() + f.len() - 1];
                for (i, a) in den.iter().enumerate() {
                    for (j, &b) in f.iter().enumerate() {
                        next[i + j] += a * b;
                    }
                }
                den = next;
            }
        }
        Self::new(numerator.iter().map(|&x| x.into()).collect(), den).expect("factors have nonzero constant terms")
    }

    pub fn numerator(&self) -> &[BigInt] {
        &self.numerator
    }

    pub fn denominator(&self) -> &[BigInt] {
        &self.denominator
    }
}

/// Power-series division of the formula up to `t^n`.
pub fn expand_formula(f: &RationalFormula, n: usize) -> RationalSeries {
    let den: Vec<BigRational> = f.denominator.iter().map(|c| BigRational::from_integer(c.clone())).collect();
    let d0 = den[0].clone();
    let mut out: Vec<BigRational> = Vec::with_capacity(n + 1);
    for m in 0..=n {
        let mut acc = f.numerator.get(m).map(|c| BigRational::from_integer(c.clone())).unwrap_or_else(BigRational::zero);
        for (i, di) in den.iter().enumerate().take(m + 1).skip(1) {
            if !di.is_zero() {
                acc -= di * &out[m - i];
            }
        }
        out.push(acc / &d0);
    }
    RationalSeries::new(out)
}

/// `1/p(t)` to order `n` for `p(0) = 1`.
fn invert_unit_series(p: &[Cyclo8], n: usize) -> Vec<Cyclo8> {
    let mut q: Vec<Cyclo8> = Vec::with_capacity(n + 1);
    q.push(Cyclo8::one());
    for m in 1..=n {
        let mut acc = Cyclo8::zero();
        for i in 1..p.len().min(m + 1) {
            if !p[i].is_zero() {
                acc -= &(&p[i] * &q[m - i]);
            }
        }
        q.push(acc);
    }
    q
}

/// Dyadic coefficients of `det(I - tA)`, each reduced to lowest terms.
pub type CharKey = Vec<(IntCyclo, u32)>;

fn reduce_dyadic(mut x: IntCyclo, mut e: u32) -> (IntCyclo, u32) {
    if x.is_zero() {
        return (IntCyclo::ZERO, 0);
    }
    while e > 0 && x.0.iter().all(|v| v % 2 == 0) {
        x = IntCyclo(x.0.map(|v| v / 2));
        e -= 1;
    }
    (x, e)
}

/// `det(I - tA)` for a packed element, over `Z[z]` with checked arithmetic.
pub fn packed_char_key(p: &PackedMat) -> Option<CharKey> {
    let n = p.dim();
    let m: Vec<IntCyclo> = (0..n * n).map(|k| p.numerator(k / n, k % n)).collect();
    let matmul = |a: &[IntCyclo], b: &[IntCyclo]| -> Option<Vec<IntCyclo>> {
        let mut out = vec![IntCyclo::ZERO; n * n];
        for i in 0..n {
            for k in 0..n {
                let aik = a[i * n + k];
                if aik.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let bkj = b[k * n + j];
                    if bkj.is_zero() {
                        continue;
                    }
                    out[i * n + j] = out[i * n + j].checked_add(&aik.checked_mul(&bkj)?)?;
                }
            }
        }
        Some(out)
    };
    // power traces p_k = tr(M^k), then Newton: k c_k = -sum_{i=1..k} p_i c_{k-i}
    let trace = |a: &[IntCyclo]| (0..n).try_fold(IntCyclo::ZERO, |acc, i| acc.checked_add(&a[i * n + i]));
    let mut traces = Vec::with_capacity(n);
    let mut power = m.clone();
    traces.push(trace(&power)?);
    for _ in 1..n {
        power = matmul(&m, &power)?;
        traces.push(trace(&power)?);
    }
    let mut coeffs = vec![IntCyclo::ONE];
    for k in 1..=n {
        let mut acc = IntCyclo::ZERO;
        for i in 1..=k {
            acc = acc.checked_add(&traces[i - 1].checked_mul(&coeffs[k - i])?)?;
        }
        coeffs.push(acc.neg().div_exact(k as i128)?);
    }
    let e = p.exp();
    Some(coeffs.into_iter().enumerate().map(|(k, c)| reduce_dyadic(c, e * k as u32)).collect())
}

fn key_from_cmatrix(m: &CMatrix) -> Result<CharKey> {
    let poly = m.char_det()?;
    (0..=m.rows())
        .map(|k| {
            let (x, e) = poly.coeff(k).to_dyadic().ok_or_else(|| Error::Internal("non-dyadic char poly".into()))?;
            Ok(reduce_dyadic(x, e))
        })
        .collect()
}

fn char_key(p: &PackedMat) -> Result<CharKey> {
    match packed_char_key(p) {
        Some(k) => Ok(k),
        None => key_from_cmatrix(&p.to_cmatrix()),
    }
}

fn key_poly(k: &CharKey) -> Vec<Cyclo8> {
    k.iter().map(|(x, e)| Cyclo8::from_dyadic(x, *e)).collect()
}

/// Counts of group elements by `det(I - tA)`.
pub fn char_poly_buckets<'a, I>(elements: I) -> Result<BTreeMap<CharKey, u64>>
where
    I: IntoParallelIterator<Item = &'a PackedMat>,
{
    let maps: Vec<Result<FxHashMap<CharKey, u64>>> = elements
        .into_par_iter()
        .fold(
            || Ok(FxHashMap::default()),
            |acc: Result<FxHashMap<CharKey, u64>>, p| {
                let mut acc = acc?;
                *acc.entry(char_key(p)?).or_insert(0) += 1;
                Ok(acc)
            },
        )
        .collect();
    let mut out = BTreeMap::new();
    for m in maps {
        for (k, c) in m? {
            *out.entry(k).or_insert(0) += c;
        }
    }
    Ok(out)
}

/// `sum_A 1/det(I - tA)` over the buckets, before dividing by `|G|`.
pub fn bucketed_sum(buckets: &BTreeMap<CharKey, u64>, n: usize) -> Vec<Cyclo8> {
    let parts: Vec<Vec<Cyclo8>> = buckets
        .par_iter()
        .map(|(k, &count)| {
            let c = Cyclo8::from_integer(count as i64);
            invert_unit_series(&key_poly(k), n).into_iter().map(|q| &q * &c).collect()
        })
        .collect();
    let mut acc = vec![Cyclo8::zero(); n + 1];
    for p in parts {
        for (a, b) in acc.iter_mut().zip(p) {
            *a += b;
        }
    }
    acc
}

/// The same sum computed element by element with the generic determinant.
pub fn unbucketed_sum(elements: &[CMatrix], n: usize) -> Result<Vec<Cyclo8>> {
    let parts: Vec<Result<Vec<Cyclo8>>> = elements
        .par_iter()
        .map(|m| Ok(invert_unit_series(m.char_det()?.coeffs(), n)))
        .collect();
    let mut acc = vec![Cyclo8::zero(); n + 1];
    for p in parts {
        for (a, b) in acc.iter_mut().zip(p?) {
            *a += b;
        }
    }
    Ok(acc)
}

/// `(1/|G|) sum_{A in G} 1/det(I - tA)` to order `n`.
pub fn molien_series(group: &GroupClosure, n: usize) -> Result<RationalSeries> {
    let buckets = char_poly_buckets(group.packed().collect::<Vec<_>>())?;
    tracing::debug!(elements = group.order(), buckets = buckets.len(), "char poly buckets");
    let sum = bucketed_sum(&buckets, n);
    let order = BigRational::from_integer(BigInt::from(group.order()));
    let mut out = Vec::with_capacity(n + 1);
    for (d, c) in sum.iter().enumerate() {
        let r = c
            .as_rational()
            .ok_or_else(|| Error::Internal(format!("Molien coefficient at t^{d} is not rational: {c}")))?;
        let v = r / &order;
        if !v.is_integer() || v.is_negative() {
            return Err(Error::Internal(format!("Molien coefficient at t^{d} is {v}")));
        }
        out.push(v);
    }
    Ok(RationalSeries::new(out))
}

/// `C(degree + n - 1, n - 1)`, the number of monomials of that degree.
pub fn monomial_count(nvars: usize, degree: u32) -> Option<usize> {
    if nvars == 0 {
        return Some(usize::from(degree == 0));
    }
    let mut acc: u128 = 1;
    for i in 1..nvars as u128 {
        acc = acc.checked_mul(degree as u128 + i)? / i;
    }
    usize::try_from(acc).ok()
}

/// All exponent vectors of the given degree.
pub fn monomials(nvars: usize, degree: u32) -> Vec<Vec<u32>> {
    fn rec(nvars: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() + 1 == nvars {
            cur.push(left);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for e in (0..=left).rev() {
            cur.push(e);
            rec(nvars, left - e, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if nvars > 0 {
        rec(nvars, degree, &mut Vec::new(), &mut out);
    } else if degree == 0 {
        out.push(vec![]);
    }
    out
}

pub fn fixed_space_dim(generators: &[CMatrix], degree: u32) -> Result<usize> {
    Ok(fixed_space_basis(generators, degree, DEFAULT_MONOMIAL_LIMIT)?.len())
}

type SparseVec = BTreeMap<u128, Cyclo8>;

/// A basis of the homogeneous invariants of the given degree.
///
/// Starts from all monomials and cuts the space down one generator at a
/// time, in the order given by [`with_sparse_conjugates`]. For a basis `f_j`
/// of the current space, the vectors `g.f_j - f_j` are eliminated
/// incrementally and every dependency among them yields an element of the
/// next space.
pub fn fixed_space_basis(generators: &[CMatrix], degree: u32, limit: usize) -> Result<Vec<SwePoly>> {
    let Some(first) = generators.first() else {
        return Err(Error::domain("no generators"));
    };
    let n = first.rows();
    if generators.iter().any(|g| g.rows() != n || g.cols() != n) {
        return Err(Error::shape("generators must be square and of equal size"));
    }
    let count = monomial_count(n, degree).unwrap_or(usize::MAX);
    if count > limit {
        return Err(Error::DimensionOverflow { dim: count, limit });
    }
    let packing = Packing::for_degree(n, degree)
        .ok_or_else(|| Error::DimensionOverflow { dim: count, limit })?;
    let mut basis: Vec<SwePoly> =
        monomials(n, degree).into_iter().map(|e| SwePoly::monomial(e, Cyclo8::one())).collect();
    let order = with_sparse_conjugates(generators)?;
    for g in &order {
        if basis.is_empty() {
            break;
        }
        let images: Vec<Result<SparseVec>> = basis
            .par_iter()
            .map(|f| {
                let d = substitute_linear(g, f)?.sub(f)?;
                Ok(d.terms().map(|(m, c)| (packing.pack(&m.0), c.clone())).collect())
            })
            .collect();
        let images = images.into_iter().collect::<Result<Vec<_>>>()?;
        let combos = kernel_combos(&images, basis.len())?;
        let mut next = Vec::with_capacity(combos.len());
        for combo in &combos {
            let mut f = SwePoly::zero(n);
            for (k, c) in combo {
                for (m, x) in basis[*k].terms() {
                    f.add_term(m.0.clone(), x * c);
                }
            }
            next.push(normalise(f)?);
        }
        tracing::debug!(nonzeros = g.nonzero_count(), before = basis.len(), after = next.len(), "fixed space step");
        basis = next;
    }
    Ok(basis)
}

/// The generators plus `d s d^-1` and `d^-1 s d` for each generator `d` of
/// small finite order and each strictly sparser generator `s`, whenever the
/// conjugate is sparser than `d`. These lie in the generated group, so the
/// fixed space is unchanged, but they cut it down cheaply before the dense
/// step. Sorted by nonzero count, duplicates removed.
pub fn with_sparse_conjugates(generators: &[CMatrix]) -> Result<Vec<CMatrix>> {
    let mut out: Vec<CMatrix> = generators.to_vec();
    for d in generators {
        let Some(dinv) = finite_order_inverse(d, 64)? else { continue };
        for s in generators.iter().filter(|s| s.nonzero_count() < d.nonzero_count()) {
            for c in [d.mat_mul(s)?.mat_mul(&dinv)?, dinv.mat_mul(s)?.mat_mul(d)?] {
                if c.nonzero_count() < d.nonzero_count() {
                    out.push(c);
                }
            }
        }
    }
    out.sort_by_key(|m| (m.nonzero_count(), m.canonical_key()));
    out.dedup();
    Ok(out)
}

/// `d^(k-1)` where `k <= max_order` is the order of `d`, if it has one.
fn finite_order_inverse(d: &CMatrix, max_order: u32) -> Result<Option<CMatrix>> {
    let id = CMatrix::identity(d.rows());
    let mut prev = id.clone();
    let mut p = d.clone();
    for _ in 1..max_order {
        if p == id {
            return Ok(Some(prev));
        }
        prev = p.clone();
        p = p.mat_mul(d)?;
    }
    Ok(None)
}

type Combo = BTreeMap<usize, Cyclo8>;

/// Basis of `{c : sum_j c_j v_j = 0}`.
///
/// When the vectors are long compared to their number, elimination first
/// runs on a sample of coordinates, which yields a superspace of the kernel.
/// The residuals of that superspace on all coordinates are then eliminated
/// exactly, so the answer does not depend on the sample.
fn kernel_combos(vectors: &[SparseVec], count: usize) -> Result<Vec<Combo>> {
    let support: std::collections::BTreeSet<u128> = vectors.iter().flat_map(|v| v.keys().copied()).collect();
    let want = 2 * count + 32;
    if support.len() <= 2 * want {
        return eliminate(vectors.iter().cloned());
    }
    let step = support.len() / want;
    let sample: std::collections::BTreeSet<u128> = support.into_iter().step_by(step).collect();
    let coarse = eliminate(
        vectors.iter().map(|v| v.iter().filter(|(k, _)| sample.contains(k)).map(|(k, c)| (*k, c.clone())).collect()),
    )?;
    let residuals: Vec<SparseVec> = coarse
        .par_iter()
        .map(|c| {
            let mut r = SparseVec::new();
            for (j, x) in c {
                axpy(&mut r, &-x, &vectors[*j]);
            }
            r
        })
        .collect();
    let fine = eliminate(residuals.into_iter())?;
    Ok(fine
        .iter()
        .map(|outer| {
            let mut c = Combo::new();
            for (i, x) in outer {
                axpy(&mut c, &-x, &coarse[*i]);
            }
            c
        })
        .collect())
}

/// Incremental elimination; every vector that reduces to zero contributes
/// its combination of the inputs to the kernel.
fn eliminate(vectors: impl Iterator<Item = SparseVec>) -> Result<Vec<Combo>> {
    let mut pivots: BTreeMap<u128, (SparseVec, Combo)> = BTreeMap::new();
    let mut kernel = Vec::new();
    for (j, mut v) in vectors.enumerate() {
        let mut combo = Combo::new();
        combo.insert(j, Cyclo8::one());
        while let Some((&lead, lc)) = v.iter().next_back() {
            let Some((pv, pc)) = pivots.get(&lead) else { break };
            let factor = lc.clone();
            axpy(&mut v, &factor, pv);
            axpy(&mut combo, &factor, pc);
        }
        match v.iter().next_back() {
            None => kernel.push(combo),
            Some((&lead, lc)) => {
                let inv = lc.inv()?;
                for x in v.values_mut() {
                    *x = &*x * &inv;
                }
                for x in combo.values_mut() {
                    *x = &*x * &inv;
                }
                pivots.insert(lead, (v, combo));
            }
        }
    }
    Ok(kernel)
}

/// `v -= f * w` for sparse vectors.
fn axpy<K: Ord + Copy>(v: &mut BTreeMap<K, Cyclo8>, f: &Cyclo8, w: &BTreeMap<K, Cyclo8>) {
    for (k, x) in w {
        let t = f * x;
        let e = v.entry(*k).or_default();
        *e -= &t;
        if e.is_zero() {
            v.remove(k);
        }
    }
}

/// Scales so the largest monomial has coefficient one.
fn normalise(f: SwePoly) -> Result<SwePoly> {
    match f.terms().next_back() {
        Some((_, c)) => Ok(f.scale(&c.inv()?)),
        None => Err(Error::Internal("zero vector in fixed-space basis".into())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::close_group;

    fn ints(s: &RationalSeries) -> Vec<i64> {
        s.as_integers().unwrap()
    }

    #[test]
    fn formula_expansion() {
        let f = RationalFormula::from_ints(&[1], &[1, -1]).unwrap();
        assert_eq!(ints(&expand_formula(&f, 3)), vec![1, 1, 1, 1]);
        let g = RationalFormula::from_ints(&[1, 0, -1], &[1, -1]).unwrap();
        assert_eq!(ints(&expand_formula(&g, 4)), vec![1, 1, 0, 0, 0]);
        assert!(RationalFormula::from_ints(&[1], &[0, 1]).is_err());
        let half = RationalFormula::from_ints(&[1], &[2]).unwrap();
        assert_eq!(expand_formula(&half, 0).coeff(0), BigRational::new(1.into(), 2.into()));
    }

    #[test]
    fn formula_json_round_trip() {
        let f = RationalFormula::from_ints(&[1, 2], &[1, 0, -1]).unwrap();
        let s = serde_json::to_string(&f).unwrap();
        assert_eq!(serde_json::from_str::<RationalFormula>(&s).unwrap(), f);
        assert!(serde_json::from_str::<RationalFormula>(r#"{"numerator":[1],"denominator":[0]}"#).is_err());
    }

    #[test]
    fn trivial_group() {
        let g = close_group(&[CMatrix::identity(1)], 10).unwrap();
        assert_eq!(ints(&molien_series(&g, 5).unwrap()), vec![1; 6]);
    }

    #[test]
    fn plus_minus_identity() {
        let g = close_group(&[CMatrix::scalar(2, Cyclo8::from_integer(-1))], 10).unwrap();
        assert_eq!(ints(&molien_series(&g, 6).unwrap()), vec![1, 0, 3, 0, 5, 0, 7]);
    }

    #[test]
    fn bucketed_matches_unbucketed() {
        let g = close_group(&[CMatrix::scalar(2, Cyclo8::z()), CMatrix::from_int_rows(&[vec![0, 1], vec![1, 0]]).unwrap()], 100)
            .unwrap();
        let elems: Vec<CMatrix> = (0..g.order()).map(|i| g.element(i).unwrap()).collect();
        let buckets = char_poly_buckets(g.packed().collect::<Vec<_>>()).unwrap();
        assert!(buckets.len() < g.order());
        assert_eq!(bucketed_sum(&buckets, 10), unbucketed_sum(&elems, 10).unwrap());
    }

    #[test]
    fn packed_key_matches_generic_determinant() {
        let m = CMatrix::from_rows(vec![
            vec![Cyclo8::from_dyadic(&IntCyclo([1, 1, 0, 0]), 1), Cyclo8::z()],
            vec![Cyclo8::from_integer(3), Cyclo8::from_dyadic(&IntCyclo([0, 0, 0, 1]), 2)],
        ])
        .unwrap();
        let p = PackedMat::from_cmatrix(&m).unwrap();
        assert_eq!(packed_char_key(&p).unwrap(), key_from_cmatrix(&m).unwrap());
    }

    #[test]
    fn monomial_enumeration() {
        assert_eq!(monomial_count(6, 8), Some(1287));
        assert_eq!(monomial_count(6, 16), Some(20349));
        assert_eq!(monomials(6, 8).len(), 1287);
        assert_eq!(monomials(3, 2).len(), 6);
    }

    #[test]
    fn fixed_space_small_groups() {
        let neg = CMatrix::scalar(2, Cyclo8::from_integer(-1));
        assert_eq!(fixed_space_dim(&[neg.clone()], 1).unwrap(), 0);
        assert_eq!(fixed_space_dim(&[neg.clone()], 2).unwrap(), 3);
        let swap = CMatrix::from_int_rows(&[vec![0, 1], vec![1, 0]]).unwrap();
        // symmetric polynomials in two variables: x+y, then x^2+y^2 and xy
        assert_eq!(fixed_space_dim(&[swap.clone()], 1).unwrap(), 1);
        assert_eq!(fixed_space_dim(&[swap.clone(), neg.clone()], 2).unwrap(), 2);
        assert_eq!(fixed_space_dim(&[swap, neg], 3).unwrap(), 0);
        let big = CMatrix::identity(6);
        assert!(matches!(fixed_space_basis(&[big], 17, DEFAULT_MONOMIAL_LIMIT), Err(Error::DimensionOverflow { .. })));
    }

    #[test]
    fn sparse_conjugates_stay_in_group() {
        let h = crate::catalog::h_generators().unwrap();
        let aug = with_sparse_conjugates(&h).unwrap();
        assert!(aug.len() > h.len());
        assert!(aug.windows(2).all(|w| w[0].nonzero_count() <= w[1].nonzero_count()));
        let g = close_group(&h, 1 << 20).unwrap();
        assert!(aug.iter().all(|m| g.contains(m)));
        assert!(h.iter().all(|m| aug.contains(m)));
        // a generator of infinite order gets no conjugates
        let shear = CMatrix::from_int_rows(&[vec![1, 1], vec![0, 1]]).unwrap();
        let swap = CMatrix::from_int_rows(&[vec![0, 1], vec![1, 0]]).unwrap();
        assert_eq!(with_sparse_conjugates(&[shear.clone(), swap.clone()]).unwrap().len(), 2);
    }

    #[test]
    fn series_display_and_json() {
        let s = RationalSeries::from_ints(&[1, 0, -3, 1]);
        assert_eq!(s.to_string(), "1 - 3*t^2 + t^3 + O(t^4)");
        let js = serde_json::to_string(&s).unwrap();
        assert_eq!(js, "[1,0,-3,1]");
        assert_eq!(serde_json::from_str::<RationalSeries>(&js).unwrap(), s);
    }
}
