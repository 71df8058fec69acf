//! Sparse multivariate polynomials with [`Cyclo8`] coefficients, and the
//! linear-substitution kernel behind the group action.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;
use rustc_hash::FxHashMap;
use serde::{Deserialize, Serialize};

use crate::cyclotomic::{Cyclo8, IntCyclo};
use crate::error::{Error, Result};
use crate::linalg::CMatrix;

/// Default variable names for the six classes of `F_2 x Z_4`.
pub const CLASS_VARS: [&str; 6] = ["a", "b", "c", "d", "e", "f"];

/// Exponent vector. Ordered by total degree, then by exponents compared
/// from the last variable backwards.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.iter().rev().cmp(other.0.iter().rev()))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SwePoly {
    nvars: usize,
    terms: BTreeMap<Monomial, Cyclo8>,
}

impl SwePoly {
    pub fn zero(nvars: usize) -> Self {
        SwePoly { nvars, terms: BTreeMap::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Self::monomial(vec![0; nvars], Cyclo8::one())
    }

    pub fn monomial(exps: Vec<u32>, coeff: Cyclo8) -> Self {
        let mut p = Self::zero(exps.len());
        p.add_term(exps, coeff);
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> std::collections::btree_map::Iter<'_, Monomial, Cyclo8> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, exps: Vec<u32>, coeff: Cyclo8) {
        assert_eq!(exps.len(), self.nvars, "exponent vector length");
        if coeff.is_zero() {
            return;
        }
        let key = Monomial(exps);
        match self.terms.get_mut(&key) {
            Some(c) => {
                *c += &coeff;
                if c.is_zero() {
                    self.terms.remove(&key);
                }
            }
            None => {
                self.terms.insert(key, coeff);
            }
        }
    }

    pub fn coeff(&self, exps: &[u32]) -> Cyclo8 {
        self.terms.get(&Monomial(exps.to_vec())).cloned().unwrap_or_default()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// The common degree of every term, if there is one.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut degs = self.terms.keys().map(Monomial::degree);
        let d = degs.next()?;
        degs.all(|x| x == d).then_some(d)
    }

    pub fn add(&self, other: &SwePoly) -> Result<SwePoly> {
        self.check_vars(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.0.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &SwePoly) -> Result<SwePoly> {
        self.check_vars(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.0.clone(), -c);
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Cyclo8) -> SwePoly {
        let mut out = SwePoly::zero(self.nvars);
        for (m, v) in &self.terms {
            out.add_term(m.0.clone(), v * c);
        }
        out
    }

    pub fn mul(&self, other: &SwePoly) -> Result<SwePoly> {
        self.check_vars(other)?;
        if let (Some(a), Some(b)) = (IntPoly::from_poly(self), IntPoly::from_poly(other)) {
            if let Some(p) = a.mul(&b) {
                return Ok(p.to_poly());
            }
        }
        let mut acc: BTreeMap<Monomial, Cyclo8> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let e: Vec<u32> = ma.0.iter().zip(&mb.0).map(|(x, y)| x + y).collect();
                *acc.entry(Monomial(e)).or_default() += ca * cb;
            }
        }
        acc.retain(|_, c| !c.is_zero());
        Ok(SwePoly { nvars: self.nvars, terms: acc })
    }

    pub fn pow(&self, e: u32) -> Result<SwePoly> {
        let mut acc = SwePoly::one(self.nvars);
        for _ in 0..e {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    pub fn evaluate(&self, point: &[Cyclo8]) -> Result<Cyclo8> {
        if point.len() != self.nvars {
            return Err(Error::shape(format!("point has {} coordinates, expected {}", point.len(), self.nvars)));
        }
        let maxdeg = self.terms.keys().flat_map(|m| m.0.iter().copied()).max().unwrap_or(0) as usize;
        let powers: Vec<Vec<Cyclo8>> = point
            .iter()
            .map(|x| {
                let mut v = vec![Cyclo8::one()];
                for k in 1..=maxdeg {
                    let next = &v[k - 1] * x;
                    v.push(next);
                }
                v
            })
            .collect();
        let mut acc = Cyclo8::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    t = &t * &powers[i][e as usize];
                }
            }
            acc += t;
        }
        Ok(acc)
    }

    fn check_vars(&self, other: &SwePoly) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::shape(format!("{} vs {} variables", self.nvars, other.nvars)));
        }
        Ok(())
    }

    /// Renders with the given variable names, e.g. `96*a^3*b^4*c`.
    pub fn to_text(&self, vars: &[&str]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let (neg, coef) = match c.as_rational() {
                Some(r) if r < &num_rational::BigRational::zero() => (true, Cyclo8::from_rational(-r)),
                _ => (false, c.clone()),
            };
            if k > 0 {
                out.push_str(if neg { " - " } else { " + " });
            } else if neg {
                out.push('-');
            }
            let factors: Vec<String> = m
                .0
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| if e == 1 { vars[i].to_string() } else { format!("{}^{e}", vars[i]) })
                .collect();
            let coef_text = if coef.is_rational() { coef.to_string() } else { format!("({coef})") };
            match (coef.is_one(), factors.is_empty()) {
                (true, true) => out.push('1'),
                (true, false) => out.push_str(&factors.join("*")),
                (false, true) => out.push_str(&coef_text),
                (false, false) => {
                    out.push_str(&coef_text);
                    out.push('*');
                    out.push_str(&factors.join("*"));
                }
            }
        }
        out
    }

    /// Parses the text form produced by [`SwePoly::to_text`]. Coefficients
    /// may be rationals or parenthesised cyclotomic literals.
    pub fn parse(text: &str, vars: &[&str]) -> Result<SwePoly> {
        let mut p = SwePoly::zero(vars.len());
        let mut chars = text.chars().peekable();
        let mut sign = 1i64;
        let mut cur = String::new();
        let mut depth = 0;
        let mut pieces = Vec::new();
        while let Some(ch) = chars.next() {
            match ch {
                '(' => {
                    depth += 1;
                    cur.push(ch);
                }
                ')' => {
                    depth -= 1;
                    cur.push(ch);
                }
                '+' | '-' if depth == 0 => {
                    if !cur.trim().is_empty() {
                        pieces.push((sign, std::mem::take(&mut cur)));
                        sign = 1;
                    }
                    if ch == '-' {
                        sign = -sign;
                    }
                }
                _ => cur.push(ch),
            }
        }
        if cur.trim().is_empty() {
            return Err(Error::Parse(format!("dangling sign or empty polynomial in {text:?}")));
        }
        pieces.push((sign, cur));
        for (sign, piece) in pieces {
            let (exps, coef) = parse_poly_term(piece.trim(), vars)?;
            p.add_term(exps, if sign < 0 { -coef } else { coef });
        }
        Ok(p)
    }
}

fn parse_poly_term(t: &str, vars: &[&str]) -> Result<(Vec<u32>, Cyclo8)> {
    let bad = || Error::Parse(format!("bad polynomial term {t:?}"));
    let mut exps = vec![0u32; vars.len()];
    let mut coef = Cyclo8::one();
    let mut rest = t;
    if let Some(stripped) = rest.strip_prefix('(') {
        let close = stripped.find(')').ok_or_else(bad)?;
        coef = stripped[..close].parse()?;
        rest = stripped[close + 1..].trim_start().trim_start_matches('*');
    }
    for factor in rest.split(|c: char| c == '*' || c.is_whitespace()).filter(|s| !s.is_empty()) {
        let (base, e) = match factor.split_once('^') {
            Some((b, e)) => (b, e.parse::<u32>().map_err(|_| bad())?),
            None => (factor, 1),
        };
        if let Some(i) = vars.iter().position(|v| *v == base) {
            exps[i] += e;
        } else if e == 1 {
            coef = &coef * &factor.parse::<Cyclo8>()?;
        } else {
            return Err(bad());
        }
    }
    Ok((exps, coef))
}

impl fmt::Display for SwePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.nvars <= CLASS_VARS.len() {
            f.write_str(&self.to_text(&CLASS_VARS[..self.nvars]))
        } else {
            let names: Vec<String> = (0..self.nvars).map(|i| format!("x{i}")).collect();
            let refs: Vec<&str> = names.iter().map(String::as_str).collect();
            f.write_str(&self.to_text(&refs))
        }
    }
}

#[derive(Serialize, Deserialize)]
struct JsonTerm {
    exp: Vec<u32>,
    coeff: Cyclo8,
}

#[derive(Serialize, Deserialize)]
struct JsonPoly {
    nvars: usize,
    terms: Vec<JsonTerm>,
}

impl Serialize for SwePoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        JsonPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| JsonTerm { exp: m.0.clone(), coeff: c.clone() }).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for SwePoly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = JsonPoly::deserialize(d)?;
        let mut p = SwePoly::zero(raw.nvars);
        for t in raw.terms {
            if t.exp.len() != raw.nvars {
                return Err(serde::de::Error::custom("exponent vector length does not match nvars"));
            }
            p.add_term(t.exp, t.coeff);
        }
        Ok(p)
    }
}

/// Exponent vectors packed into a `u128`, `bits` per variable.
#[derive(Clone, Copy, Debug)]
pub(crate) struct Packing {
    pub nvars: usize,
    pub bits: u32,
}

impl Packing {
    /// Packing able to hold any monomial of total degree `<= max_degree`.
    pub fn for_degree(nvars: usize, max_degree: u32) -> Option<Packing> {
        let bits = 32 - max_degree.leading_zeros();
        let bits = bits.max(1);
        (nvars as u32 * bits <= 128).then_some(Packing { nvars, bits })
    }

    pub fn pack(&self, exps: &[u32]) -> u128 {
        exps.iter().enumerate().fold(0u128, |acc, (i, &e)| acc | (e as u128) << (self.bits * i as u32))
    }

    pub fn unpack(&self, key: u128) -> Vec<u32> {
        let mask = (1u128 << self.bits) - 1;
        (0..self.nvars).map(|i| ((key >> (self.bits * i as u32)) & mask) as u32).collect()
    }

    pub fn unit(&self, var: usize) -> u128 {
        1u128 << (self.bits * var as u32)
    }
}

/// Coefficient arithmetic for the substitution kernel; `None` on overflow.
pub(crate) trait Coef: Clone + Send + Sync {
    fn zero() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Option<Self>;
    fn mul(&self, o: &Self) -> Option<Self>;
}

impl Coef for IntCyclo {
    fn zero() -> Self {
        IntCyclo::ZERO
    }
    fn is_zero(&self) -> bool {
        IntCyclo::is_zero(self)
    }
    fn add(&self, o: &Self) -> Option<Self> {
        self.checked_add(o)
    }
    fn mul(&self, o: &Self) -> Option<Self> {
        self.checked_mul(o)
    }
}

impl Coef for Cyclo8 {
    fn zero() -> Self {
        Cyclo8::zero()
    }
    fn is_zero(&self) -> bool {
        Cyclo8::is_zero(self)
    }
    fn add(&self, o: &Self) -> Option<Self> {
        Some(self + o)
    }
    fn mul(&self, o: &Self) -> Option<Self> {
        Some(self * o)
    }
}

type PMap<C> = FxHashMap<u128, C>;

fn pmul<C: Coef>(a: &PMap<C>, b: &PMap<C>) -> Option<PMap<C>> {
    let mut out: PMap<C> = FxHashMap::with_capacity_and_hasher(a.len().max(b.len()), Default::default());
    for (ka, ca) in a {
        for (kb, cb) in b {
            let p = ca.mul(cb)?;
            match out.entry(ka + kb) {
                std::collections::hash_map::Entry::Occupied(mut e) => {
                    let s = e.get().add(&p)?;
                    *e.get_mut() = s;
                }
                std::collections::hash_map::Entry::Vacant(e) => {
                    e.insert(p);
                }
            }
        }
    }
    out.retain(|_, c| !c.is_zero());
    Some(out)
}

fn padd_into<C: Coef>(acc: &mut PMap<C>, b: PMap<C>) -> Option<()> {
    for (k, c) in b {
        match acc.entry(k) {
            std::collections::hash_map::Entry::Occupied(mut e) => {
                let s = e.get().add(&c)?;
                *e.get_mut() = s;
            }
            std::collections::hash_map::Entry::Vacant(e) => {
                e.insert(c);
            }
        }
    }
    Some(())
}

/// `f(L_1, ..., L_n)` for linear forms `L_i = sum_j m_ij x_j`.
///
/// Terms are walked as a trie over the variables. With
/// `f = sum_k x_v^k f_k`, the image is evaluated by Horner's rule in `L_v`,
/// so each step multiplies by a form of at most `n` terms. The first level
/// runs in parallel; sums are exact so the result does not depend on the split.
pub(crate) fn substitute<C: Coef>(
    packing: Packing,
    lin: &[PMap<C>],
    terms: &[(Vec<u32>, C)],
) -> Option<PMap<C>> {
    let mut sorted: Vec<&(Vec<u32>, C)> = terms.iter().collect();
    sorted.sort_by(|a, b| a.0.cmp(&b.0));
    if packing.nvars == 0 {
        return walk(&sorted, 0, lin);
    }
    let groups = split_by_var(&sorted, 0);
    let subs: Vec<Option<(u32, PMap<C>)>> =
        groups.par_iter().map(|(k, grp)| Some((*k, walk(grp, 1, lin)?))).collect();
    let subs = subs.into_iter().collect::<Option<Vec<_>>>()?;
    let mut acc = horner(subs, &lin[0])?;
    acc.retain(|_, c| !c.is_zero());
    Some(acc)
}

/// `sum_k l^k * sub_k` for `subs` sorted by ascending `k`.
fn horner<C: Coef>(mut subs: Vec<(u32, PMap<C>)>, l: &PMap<C>) -> Option<PMap<C>> {
    let Some((mut k, mut acc)) = subs.pop() else { return Some(PMap::default()) };
    while k > 0 {
        acc = pmul(&acc, l)?;
        k -= 1;
        if subs.last().is_some_and(|s| s.0 == k) {
            let (_, s) = subs.pop().expect("checked");
            padd_into(&mut acc, s)?;
        }
    }
    Some(acc)
}

fn split_by_var<'a, C>(terms: &[&'a (Vec<u32>, C)], v: usize) -> Vec<(u32, Vec<&'a (Vec<u32>, C)>)> {
    let mut out: Vec<(u32, Vec<&(Vec<u32>, C)>)> = Vec::new();
    for t in terms {
        match out.last_mut() {
            Some((k, g)) if *k == t.0[v] => g.push(t),
            _ => out.push((t.0[v], vec![t])),
        }
    }
    out
}

fn walk<C: Coef>(terms: &[&(Vec<u32>, C)], v: usize, lin: &[PMap<C>]) -> Option<PMap<C>> {
    if v == lin.len() {
        let mut c = C::zero();
        for t in terms {
            c = c.add(&t.1)?;
        }
        let mut m = PMap::default();
        if !c.is_zero() {
            m.insert(0u128, c);
        }
        return Some(m);
    }
    let mut subs = Vec::new();
    for (k, grp) in split_by_var(terms, v) {
        subs.push((k, walk(&grp, v + 1, lin)?));
    }
    horner(subs, &lin[v])
}

/// Polynomial over `Z[z]` with a common rational denominator.
pub(crate) struct IntPoly {
    pub nvars: usize,
    pub terms: Vec<(Vec<u32>, IntCyclo)>,
    pub denom: BigInt,
}

impl IntPoly {
    pub fn from_poly(p: &SwePoly) -> Option<IntPoly> {
        let denom = p
            .terms
            .values()
            .flat_map(|c| c.coeffs().iter().map(|r| r.denom().clone()))
            .fold(BigInt::one(), |l, d| l.lcm(&d));
        let mut terms = Vec::with_capacity(p.len());
        for (m, c) in &p.terms {
            let mut v = [0i128; 4];
            for (slot, r) in v.iter_mut().zip(c.coeffs()) {
                *slot = (r.numer() * (&denom / r.denom())).to_i128()?;
            }
            terms.push((m.0.clone(), IntCyclo(v)));
        }
        Some(IntPoly { nvars: p.nvars, terms, denom })
    }

    fn mul(&self, other: &IntPoly) -> Option<IntPoly> {
        let deg = self.terms.iter().map(|t| t.0.iter().sum::<u32>()).max().unwrap_or(0)
            + other.terms.iter().map(|t| t.0.iter().sum::<u32>()).max().unwrap_or(0);
        let packing = Packing::for_degree(self.nvars, deg)?;
        let pa: PMap<IntCyclo> = self.terms.iter().map(|(e, c)| (packing.pack(e), *c)).collect();
        let pb: PMap<IntCyclo> = other.terms.iter().map(|(e, c)| (packing.pack(e), *c)).collect();
        let prod = pmul(&pa, &pb)?;
        Some(IntPoly {
            nvars: self.nvars,
            terms: prod.into_iter().map(|(k, c)| (packing.unpack(k), c)).collect(),
            denom: &self.denom * &other.denom,
        })
    }

    fn to_poly(&self) -> SwePoly {
        let mut p = SwePoly::zero(self.nvars);
        let inv = num_rational::BigRational::new(BigInt::one(), self.denom.clone());
        for (e, c) in &self.terms {
            p.add_term(e.clone(), c.to_cyclo().scale(&inv));
        }
        p
    }
}

/// `m . f = f(sum_j m_1j x_j, ..., sum_j m_nj x_j)`.
///
/// Runs over `Z[z]` with checked `i128` arithmetic when `m` is dyadic and
/// falls back to exact rational arithmetic otherwise or on overflow.
pub fn substitute_linear(m: &CMatrix, f: &SwePoly) -> Result<SwePoly> {
    let n = f.nvars();
    if m.rows() != n || m.cols() != n {
        return Err(Error::shape(format!("action matrix must be {n}x{n}")));
    }
    if f.is_empty() {
        return Ok(f.clone());
    }
    let maxdeg = f.total_degree().unwrap_or(0);
    let packing = Packing::for_degree(n, maxdeg)
        .ok_or_else(|| Error::DimensionOverflow { dim: maxdeg as usize, limit: 128 / n.max(1) })?;
    if let Some(p) = substitute_fast(m, f, packing) {
        return Ok(p);
    }
    let lin: Vec<PMap<Cyclo8>> = (0..n)
        .map(|i| {
            (0..n)
                .filter(|&j| !m.get(i, j).is_zero())
                .map(|j| (packing.unit(j), m.get(i, j).clone()))
                .collect()
        })
        .collect();
    let terms: Vec<(Vec<u32>, Cyclo8)> = f.terms().map(|(k, c)| (k.0.clone(), c.clone())).collect();
    let out = substitute(packing, &lin, &terms).expect("exact arithmetic cannot overflow");
    let mut p = SwePoly::zero(n);
    for (k, c) in out {
        p.add_term(packing.unpack(k), c);
    }
    Ok(p)
}

fn substitute_fast(m: &CMatrix, f: &SwePoly, packing: Packing) -> Option<SwePoly> {
    let n = f.nvars();
    let parts: Vec<(IntCyclo, u32)> = m.entries().iter().map(Cyclo8::to_dyadic).collect::<Option<_>>()?;
    let exp = parts.iter().map(|p| p.1).max().unwrap_or(0);
    let mut lin: Vec<PMap<IntCyclo>> = vec![PMap::default(); n];
    for (k, (num, e)) in parts.iter().enumerate() {
        if num.is_zero() {
            continue;
        }
        let scaled = num.checked_mul_int(1i128 << (exp - e))?;
        lin[k / n].insert(packing.unit(k % n), scaled);
    }
    let ip = IntPoly::from_poly(f)?;
    let out = substitute(packing, &lin, &ip.terms)?;
    let mut p = SwePoly::zero(n);
    for (k, c) in out {
        let exps = packing.unpack(k);
        let deg: u32 = exps.iter().sum();
        // image of a degree-d term carries 2^(-exp*d) from the scaled matrix
        let den = &ip.denom * (BigInt::one() << (exp * deg) as usize);
        p.add_term(exps, c.to_cyclo().scale(&num_rational::BigRational::new(BigInt::one(), den)));
    }
    Some(p)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vars() -> &'static [&'static str] {
        &CLASS_VARS
    }

    #[test]
    fn ordering_matches_printed_layout() {
        let p = SwePoly::parse("c^8 + 4*a^6*c^2 + 96*a^3*b^4*c + 32*b^8 + a^8", vars()).unwrap();
        assert_eq!(p.to_text(vars()), "a^8 + 32*b^8 + 96*a^3*b^4*c + 4*a^6*c^2 + c^8");
    }

    #[test]
    fn parse_and_print() {
        let p = SwePoly::parse("2*a*b - 3*c^2 + (1/4*z + 1/4*z^3)*d", vars()).unwrap();
        assert_eq!(p.coeff(&[1, 1, 0, 0, 0, 0]), Cyclo8::from_integer(2));
        assert_eq!(p.coeff(&[0, 0, 2, 0, 0, 0]), Cyclo8::from_integer(-3));
        let text = p.to_text(vars());
        assert_eq!(SwePoly::parse(&text, vars()).unwrap(), p);
        assert!(SwePoly::parse("a^x", vars()).is_err());
        assert!(SwePoly::parse("a +", vars()).is_err());
        assert!(SwePoly::parse("g^2", vars()).is_err());
        assert_eq!(SwePoly::parse("a - a", vars()).unwrap().to_text(vars()), "0");
    }

    #[test]
    fn json_form() {
        let p = SwePoly::parse("a^2 + 3*b*c", vars()).unwrap();
        let js = serde_json::to_value(&p).unwrap();
        assert_eq!(js["terms"][1]["exp"], serde_json::json!([0, 1, 1, 0, 0, 0]));
        let back: SwePoly = serde_json::from_value(js).unwrap();
        assert_eq!(back, p);
    }

    #[test]
    fn multiplication_and_powers() {
        let x = SwePoly::parse("a + b", &vars()[..2]).unwrap();
        let sq = x.pow(2).unwrap();
        assert_eq!(sq, SwePoly::parse("a^2 + 2*a*b + b^2", &vars()[..2]).unwrap());
        let half = SwePoly::parse("(1/2)*a", &vars()[..2]).unwrap();
        assert_eq!(half.mul(&half).unwrap(), SwePoly::parse("1/4*a^2", &vars()[..2]).unwrap());
    }

    #[test]
    fn substitution_fast_and_exact_paths_agree() {
        let f = SwePoly::parse("a^3 + 2*a*b^2 - 5*b^3 + a*b*c", &vars()[..3]).unwrap();
        let m = CMatrix::from_rows(vec![
            vec![Cyclo8::z(), Cyclo8::from_integer(1), Cyclo8::zero()],
            vec![Cyclo8::zero(), Cyclo8::from_rational(num_rational::BigRational::new(1.into(), 2.into())), Cyclo8::root_of_unity(3)],
            vec![Cyclo8::from_integer(2), Cyclo8::zero(), Cyclo8::one()],
        ])
        .unwrap();
        let fast = substitute_linear(&m, &f).unwrap();
        let packing = Packing::for_degree(3, 3).unwrap();
        let lin: Vec<PMap<Cyclo8>> = (0..3)
            .map(|i| (0..3).filter(|&j| !m.get(i, j).is_zero()).map(|j| (packing.unit(j), m.get(i, j).clone())).collect())
            .collect();
        let terms: Vec<(Vec<u32>, Cyclo8)> = f.terms().map(|(k, c)| (k.0.clone(), c.clone())).collect();
        let mut exact = SwePoly::zero(3);
        for (k, c) in substitute(packing, &lin, &terms).unwrap() {
            exact.add_term(packing.unpack(k), c);
        }
        assert_eq!(fast, exact);
        // non-dyadic matrix takes the exact path
        let third = CMatrix::scalar(3, Cyclo8::from_rational(num_rational::BigRational::new(1.into(), 3.into())));
        let scaled = substitute_linear(&third, &f).unwrap();
        assert_eq!(scaled, f.scale(&Cyclo8::from_rational(num_rational::BigRational::new(1.into(), 27.into()))));
    }

    #[test]
    fn packing_round_trip() {
        let p = Packing::for_degree(6, 16).unwrap();
        assert_eq!(p.bits, 5);
        let e = vec![1, 0, 3, 3, 0, 9];
        assert_eq!(p.unpack(p.pack(&e)), e);
        assert!(Packing::for_degree(40, 16).is_none());
    }
}
