//! Symmetrized weight enumerators of code tuples and the group action on them.

use rayon::prelude::*;
use rustc_hash::FxHashMap;

use crate::codes::CodeSet;
use crate::cyclotomic::Cyclo8;
use crate::error::{Error, Result};
use crate::linalg::CMatrix;
use crate::poly::{substitute_linear, Packing, SwePoly};
use crate::ring::{class_reps, class_table, RingSpec};

/// Default cap on the number of codeword tuples visited by [`swe`].
pub const DEFAULT_PAIRS_LIMIT: u64 = 1 << 28;

pub fn swe(codes: &[&CodeSet], spec: &RingSpec) -> Result<SwePoly> {
    swe_with_limit(codes, spec, DEFAULT_PAIRS_LIMIT)
}

/// `sum over (c_1..c_g) of prod_a x_a^{n_a}`, where `n_a` counts the
/// coordinates whose symbol tuple lies in the class `a` of `R / +-1`.
pub fn swe_with_limit(codes: &[&CodeSet], spec: &RingSpec, limit: u64) -> Result<SwePoly> {
    let g = spec.g();
    if codes.len() != g {
        return Err(Error::domain(format!("expected {g} codes for this ring, got {}", codes.len())));
    }
    let n = codes[0].n();
    for (i, c) in codes.iter().enumerate() {
        if c.n() != n {
            return Err(Error::domain(format!("code {i} has length {}, expected {n}", c.n())));
        }
        if c.modulus() as i64 != spec.modulus(i) {
            return Err(Error::domain(format!(
                "code {i} is over Z_{}, the ring needs Z_{}",
                c.modulus(),
                spec.modulus(i)
            )));
        }
    }
    let tuples = codes.iter().try_fold(1u64, |acc, c| acc.checked_mul(c.len() as u64));
    match tuples {
        Some(t) if t <= limit => {}
        _ => return Err(Error::EnumerationOverflow { limit }),
    }
    let nvars = class_reps(spec).len();
    let packing = Packing::for_degree(nvars, n as u32)
        .ok_or_else(|| Error::domain(format!("length {n} too large for packed exponents")))?;
    let table = class_table(spec);
    let units: Vec<u128> = table.iter().map(|&c| packing.unit(c)).collect();
    // place value of code i in the lexicographic index of R
    let moduli = spec.moduli();
    let mut place = vec![1usize; g];
    for i in (0..g.saturating_sub(1)).rev() {
        place[i] = place[i + 1] * moduli[i + 1] as usize;
    }

    let counts = codes[0]
        .words()
        .collect::<Vec<_>>()
        .into_par_iter()
        .fold(FxHashMap::<u128, u64>::default, |mut acc, w0| {
            let base: Vec<usize> = w0.iter().map(|&s| s as usize * place[0]).collect();
            visit(codes, 1, &place, base, &units, &mut acc);
            acc
        })
        .reduce(FxHashMap::default, |a, b| if a.len() >= b.len() { merge(a, b) } else { merge(b, a) });
    let mut p = SwePoly::zero(nvars);
    for (k, c) in counts {
        p.add_term(packing.unpack(k), Cyclo8::from_integer(c as i64));
    }
    Ok(p)
}

fn merge(mut a: FxHashMap<u128, u64>, b: FxHashMap<u128, u64>) -> FxHashMap<u128, u64> {
    for (k, v) in b {
        *a.entry(k).or_insert(0) += v;
    }
    a
}

fn visit(
    codes: &[&CodeSet],
    level: usize,
    place: &[usize],
    partial: Vec<usize>,
    units: &[u128],
    acc: &mut FxHashMap<u128, u64>,
) {
    if level == codes.len() {
        let key = partial.iter().map(|&i| units[i]).sum();
        *acc.entry(key).or_insert(0) += 1;
        return;
    }
    if level + 1 == codes.len() {
        for w in codes[level].words() {
            let key: u128 = partial.iter().zip(w).map(|(&i, &s)| units[i + s as usize * place[level]]).sum();
            *acc.entry(key).or_insert(0) += 1;
        }
        return;
    }
    for w in codes[level].words() {
        let next = partial.iter().zip(w).map(|(&i, &s)| i + s as usize * place[level]).collect();
        visit(codes, level + 1, place, next, units, acc);
    }
}

/// `m . f = f(sum_j m_1j x_j, ..., sum_j m_nj x_j)`.
///
/// This is a right action: `act(a, act(b, f)) == act(b * a, f)`.
pub fn act(m: &CMatrix, f: &SwePoly) -> Result<SwePoly> {
    substitute_linear(m, f)
}

/// True iff every generator fixes `f` exactly.
pub fn is_invariant(f: &SwePoly, generators: &[CMatrix]) -> Result<bool> {
    for g in generators {
        if act(g, f)? != *f {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn evaluate(f: &SwePoly, point: &[Cyclo8]) -> Result<Cyclo8> {
    f.evaluate(point)
}

/// Row `i` holds the coefficients of `polys[i]` at each monomial.
pub fn coefficient_matrix(polys: &[SwePoly], monomials: &[Vec<u32>]) -> Result<CMatrix> {
    let mut rows: Vec<Vec<Cyclo8>> = Vec::with_capacity(polys.len());
    for p in polys {
        if let Some(m) = monomials.iter().find(|m| m.len() != p.nvars()) {
            return Err(Error::shape(format!("monomial {m:?} does not fit {} variables", p.nvars())));
        }
        rows.push(monomials.iter().map(|m| p.coeff(m)).collect());
    }
    CMatrix::new(polys.len(), monomials.len(), rows.concat())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::{enumerate_code, GenMatrix};

    fn code(m: u32, n: usize, rows: Vec<Vec<u32>>) -> CodeSet {
        enumerate_code(&GenMatrix::new(m, n, rows).unwrap()).unwrap()
    }

    #[test]
    fn zero_codes_give_single_monomial() {
        let spec = RingSpec::f2_z4();
        let a = code(2, 5, vec![]);
        let b = code(4, 5, vec![]);
        let w = swe(&[&a, &b], &spec).unwrap();
        assert_eq!(w, SwePoly::monomial(vec![5, 0, 0, 0, 0, 0], Cyclo8::one()));
    }

    #[test]
    fn small_pair_by_hand() {
        // C1 = {00, 11} over Z2, C2 = {00, 13, 22, 31} over Z4
        let spec = RingSpec::f2_z4();
        let a = code(2, 2, vec![vec![1, 1]]);
        let b = code(4, 2, vec![vec![1, 3]]);
        let w = swe(&[&a, &b], &spec).unwrap();
        // symbol pairs (x, y) map to a=(0,0) b=(0,+-1) c=(0,2) d=(1,0) e=(1,+-1) f=(1,2)
        let expect = SwePoly::parse("a^2 + 2*b^2 + c^2 + d^2 + 2*e^2 + f^2", &crate::poly::CLASS_VARS).unwrap();
        assert_eq!(w, expect);
    }

    #[test]
    fn mismatches_are_rejected() {
        let spec = RingSpec::f2_z4();
        let a = code(2, 2, vec![vec![1, 1]]);
        let b = code(4, 3, vec![]);
        let c = code(4, 2, vec![vec![1, 3]]);
        assert!(matches!(swe(&[&a, &b], &spec), Err(Error::Domain(_))));
        assert!(matches!(swe(&[&c, &a], &spec), Err(Error::Domain(_))));
        assert!(matches!(swe(&[&a], &spec), Err(Error::Domain(_))));
        assert!(matches!(swe_with_limit(&[&a, &c], &spec, 7), Err(Error::EnumerationOverflow { limit: 7 })));
    }

    #[test]
    fn coefficient_extraction() {
        let p = SwePoly::parse("a^2 + 5*a*b", &["a", "b"]).unwrap();
        let m = coefficient_matrix(&[p], &[vec![2, 0], vec![0, 2], vec![1, 1]]).unwrap();
        assert_eq!(m, CMatrix::from_int_rows(&[vec![1, 0, 5]]).unwrap());
        assert!(coefficient_matrix(&[SwePoly::one(2)], &[vec![1]]).is_err());
    }

    #[test]
    fn scaling_action() {
        let f = SwePoly::monomial(vec![4, 0], Cyclo8::one());
        let d = CMatrix::diag(vec![Cyclo8::from_integer(2), Cyclo8::one()]);
        assert_eq!(act(&d, &f).unwrap(), f.scale(&Cyclo8::from_integer(16)));
        assert_eq!(act(&CMatrix::identity(2), &f).unwrap(), f);
        assert!(act(&CMatrix::identity(3), &f).is_err());
    }
}
