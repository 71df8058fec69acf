//! The coefficient ring `R = Z_{2k_1} x ... x Z_{2k_g}` modulo `a ~ -a`,
//! with the parameter sets `Omega(D)` and `Lambda(D)`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type IntMatrix = Vec<Vec<i64>>;
pub type RatMatrix = Vec<Vec<BigRational>>;

/// `ks = [k_1, ..., k_g]` with `k_i | k_{i+1}`; `alpha = k_1`, `alphas[i] = k_i / alpha`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawSpec", into = "RawSpec")]
pub struct RingSpec {
    ks: Vec<u32>,
    alpha: u32,
    alphas: Vec<u32>,
}

#[derive(Serialize, Deserialize)]
struct RawSpec {
    ks: Vec<u32>,
}

impl TryFrom<RawSpec> for RingSpec {
    type Error = Error;
    fn try_from(r: RawSpec) -> Result<Self> {
        RingSpec::new(r.ks)
    }
}

impl From<RingSpec> for RawSpec {
    fn from(s: RingSpec) -> Self {
        RawSpec { ks: s.ks }
    }
}

impl RingSpec {
    pub fn new(ks: Vec<u32>) -> Result<Self> {
        if ks.is_empty() {
            return Err(Error::domain("ring spec needs at least one factor"));
        }
        if ks.contains(&0) {
            return Err(Error::domain("k_i must be positive"));
        }
        if ks.windows(2).any(|w| w[1] % w[0] != 0) {
            return Err(Error::domain(format!("k_i must divide k_(i+1): {ks:?}")));
        }
        let alpha = ks[0];
        let alphas = ks.iter().map(|k| k / alpha).collect();
        Ok(RingSpec { ks, alpha, alphas })
    }

    /// `F_2 x Z_4`.
    pub fn f2_z4() -> Self {
        Self::new(vec![1, 2]).expect("valid spec")
    }

    pub fn ks(&self) -> &[u32] {
        &self.ks
    }

    pub fn alpha(&self) -> u32 {
        self.alpha
    }

    pub fn alphas(&self) -> &[u32] {
        &self.alphas
    }

    pub fn g(&self) -> usize {
        self.ks.len()
    }

    /// Modulus `2k_i` of factor `i`.
    pub fn modulus(&self, i: usize) -> i64 {
        2 * self.ks[i] as i64
    }

    pub fn moduli(&self) -> Vec<i64> {
        (0..self.g()).map(|i| self.modulus(i)).collect()
    }

    /// `|R|`.
    pub fn order(&self) -> usize {
        self.ks.iter().map(|&k| 2 * k as usize).product()
    }

    /// Position of `a` in the lexicographic enumeration.
    pub fn index_of(&self, a: &RElement) -> usize {
        a.coords.iter().enumerate().fold(0usize, |acc, (i, &c)| acc * self.modulus(i) as usize + c as usize)
    }

    pub fn element_at(&self, mut idx: usize) -> RElement {
        let mut coords = vec![0i64; self.g()];
        for i in (0..self.g()).rev() {
            let m = self.modulus(i) as usize;
            coords[i] = (idx % m) as i64;
            idx /= m;
        }
        RElement { coords }
    }

    pub fn element(&self, coords: &[i64]) -> Result<RElement> {
        if coords.len() != self.g() {
            return Err(Error::shape(format!("element has {} coordinates, ring has {}", coords.len(), self.g())));
        }
        let coords = coords.iter().enumerate().map(|(i, &c)| c.rem_euclid(self.modulus(i))).collect();
        Ok(RElement { coords })
    }

    pub fn neg(&self, a: &RElement) -> RElement {
        RElement {
            coords: a.coords.iter().enumerate().map(|(i, &c)| (-c).rem_euclid(self.modulus(i))).collect(),
        }
    }
}

/// Element of `R`, every coordinate reduced into `0..2k_i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RElement {
    coords: Vec<i64>,
}

impl RElement {
    pub fn coords(&self) -> &[i64] {
        &self.coords
    }
}

/// A class `{a, -a}` of `R / ~`: its lexicographically smaller member and its
/// position among all classes.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ClassIndex {
    pub rep: RElement,
    pub index: usize,
}

/// All of `R` in lexicographic order, first factor outermost.
pub fn enumerate_r(spec: &RingSpec) -> Vec<RElement> {
    (0..spec.order()).map(|i| spec.element_at(i)).collect()
}

fn class_rep(a: &RElement, spec: &RingSpec) -> RElement {
    let n = spec.neg(a);
    if n < *a {
        n
    } else {
        a.clone()
    }
}

/// Class representatives in lexicographic order; position = variable index.
pub fn class_reps(spec: &RingSpec) -> Vec<RElement> {
    enumerate_r(spec).into_iter().filter(|a| class_rep(a, spec) == *a).collect()
}

/// Table mapping each element index of `R` to its class index.
pub fn class_table(spec: &RingSpec) -> Vec<usize> {
    let reps = class_reps(spec);
    enumerate_r(spec)
        .iter()
        .map(|a| {
            let r = class_rep(a, spec);
            reps.binary_search(&r).expect("representative is listed")
        })
        .collect()
}

pub fn classify(a: &RElement, spec: &RingSpec) -> ClassIndex {
    let rep = class_rep(a, spec);
    let index = class_reps(spec).binary_search(&rep).expect("representative is listed");
    ClassIndex { rep, index }
}

fn check_square(m: usize, g: usize, what: &str) -> Result<()> {
    if m != g {
        return Err(Error::shape(format!("{what} must be {g}x{g}")));
    }
    Ok(())
}

fn int_det(u: &IntMatrix) -> i128 {
    // Bareiss fraction-free elimination.
    let n = u.len();
    let mut a: Vec<Vec<i128>> = u.iter().map(|r| r.iter().map(|&v| v as i128).collect()).collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n {
        if a[k][k] == 0 {
            match (k + 1..n).find(|&r| a[r][k] != 0) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    sign * a[n - 1][n - 1]
}

/// Determinant of a small integer matrix.
pub fn integer_det(u: &IntMatrix) -> Result<i128> {
    if u.is_empty() || u.iter().any(|r| r.len() != u.len()) {
        return Err(Error::shape("determinant of a non-square matrix"));
    }
    Ok(int_det(u))
}

/// `U in GL(g, Z)` with `D^-1 U D` integral.
pub fn omega_member(u: &IntMatrix, spec: &RingSpec) -> Result<bool> {
    let g = spec.g();
    check_square(u.len(), g, "U")?;
    for r in u {
        check_square(r.len(), g, "U")?;
    }
    if int_det(u).abs() != 1 {
        return Ok(false);
    }
    let a = spec.alphas();
    // (D^-1 U D)_ij = u_ij * alpha_j / alpha_i
    Ok((0..g).all(|i| (0..g).all(|j| (u[i][j] * a[j] as i64) % a[i] as i64 == 0)))
}

/// The same membership test phrased as congruences on the entries below
/// the diagonal: `u_ij = 0 mod alpha_i / alpha_j` for `i > j`.
pub fn omega_member_by_congruence(u: &IntMatrix, spec: &RingSpec) -> Result<bool> {
    let g = spec.g();
    check_square(u.len(), g, "U")?;
    for r in u {
        check_square(r.len(), g, "U")?;
    }
    if int_det(u).abs() != 1 {
        return Ok(false);
    }
    let a = spec.alphas();
    Ok((0..g).all(|i| (0..i).all(|j| u[i][j] % (a[i] / a[j]) as i64 == 0)))
}

/// Symmetric rational `S` with `S D` integral.
pub fn lambda_member(s: &RatMatrix, spec: &RingSpec) -> Result<bool> {
    let g = spec.g();
    check_square(s.len(), g, "S")?;
    for r in s {
        check_square(r.len(), g, "S")?;
    }
    let symmetric = (0..g).all(|i| (0..i).all(|j| s[i][j] == s[j][i]));
    let a = spec.alphas();
    let integral = (0..g).all(|i| (0..g).all(|j| (&s[i][j] * BigInt::from(a[j])).is_integer()));
    Ok(symmetric && integral)
}

/// Membership phrased per entry: `S_ij = S_ji in (1/k_i) Z` for `i <= j`.
pub fn lambda_member_by_levels(s: &RatMatrix, spec: &RingSpec) -> Result<bool> {
    let g = spec.g();
    check_square(s.len(), g, "S")?;
    for r in s {
        check_square(r.len(), g, "S")?;
    }
    let ks = spec.ks();
    Ok((0..g).all(|i| {
        (i..g).all(|j| s[i][j] == s[j][i] && (&s[i][j] * BigInt::from(ks[i])).is_integer())
    }))
}

/// Inverse of a unimodular integer matrix (adjugate over `det = +-1`).
pub fn unimodular_inverse(u: &IntMatrix) -> Result<IntMatrix> {
    let n = u.len();
    let det = integer_det(u)?;
    if det.abs() != 1 {
        return Err(Error::domain("matrix is not unimodular"));
    }
    let mut inv = vec![vec![0i64; n]; n];
    for i in 0..n {
        for j in 0..n {
            let minor: IntMatrix = (0..n)
                .filter(|&r| r != j)
                .map(|r| (0..n).filter(|&c| c != i).map(|c| u[r][c]).collect())
                .collect();
            let cof = if n == 1 { 1 } else { int_det(&minor) };
            let sign = if (i + j) % 2 == 0 { 1 } else { -1 };
            inv[i][j] = (sign * cof * det) as i64;
        }
    }
    Ok(inv)
}

/// Parses a rational literal `p` or `p/q`.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || Error::Parse(format!("bad rational {s:?}"));
    match s.trim().split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(Error::DivisionByZero);
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(s.trim().parse().map_err(|_| bad())?)),
    }
}

pub fn rat_matrix(rows: &[&[&str]]) -> Result<RatMatrix> {
    rows.iter().map(|r| r.iter().map(|s| parse_rational(s)).collect()).collect()
}

/// `gcd` helper used by code enumeration.
pub(crate) fn gcd_i64(a: i64, b: i64) -> i64 {
    a.gcd(&b)
}


#[cfg(test)]
mod tests {
    use super::*;

    fn specs() -> Vec<RingSpec> {
        [vec![1], vec![2], vec![1, 1], vec![1, 2], vec![2, 2], vec![1, 4], vec![1, 1, 2], vec![2, 4], vec![1, 2, 4]]
            .into_iter()
            .map(|ks| RingSpec::new(ks).unwrap())
            .collect()
    }

    #[test]
    fn spec_validation() {
        assert!(RingSpec::new(vec![2, 3]).is_err());
        assert!(RingSpec::new(vec![]).is_err());
        assert!(RingSpec::new(vec![0]).is_err());
        let s = RingSpec::new(vec![2, 4]).unwrap();
        assert_eq!((s.alpha(), s.alphas()), (2, &[1, 2][..]));
        let js = serde_json::to_string(&RingSpec::f2_z4()).unwrap();
        assert_eq!(js, r#"{"ks":[1,2]}"#);
        let back: RingSpec = serde_json::from_str(&js).unwrap();
        assert_eq!(back, RingSpec::f2_z4());
        assert!(serde_json::from_str::<RingSpec>(r#"{"ks":[2,3]}"#).is_err());
    }

    #[test]
    fn enumeration_order() {
        let one = RingSpec::new(vec![1]).unwrap();
        let coords: Vec<_> = enumerate_r(&one).iter().map(|a| a.coords().to_vec()).collect();
        assert_eq!(coords, vec![vec![0], vec![1]]);

        let s = RingSpec::f2_z4();
        let coords: Vec<_> = enumerate_r(&s).iter().map(|a| a.coords().to_vec()).collect();
        let expected: Vec<Vec<i64>> =
            vec![vec![0, 0], vec![0, 1], vec![0, 2], vec![0, 3], vec![1, 0], vec![1, 1], vec![1, 2], vec![1, 3]];
        assert_eq!(coords, expected);
        assert_eq!(enumerate_r(&RingSpec::new(vec![1, 1]).unwrap()).len(), 4);
        for (i, a) in enumerate_r(&s).iter().enumerate() {
            assert_eq!(s.index_of(a), i);
        }
    }

    #[test]
    fn classification() {
        let s = RingSpec::f2_z4();
        let c = classify(&s.element(&[0, 3]).unwrap(), &s);
        assert_eq!((c.rep.coords(), c.index), (&[0, 1][..], 1));
        let c = classify(&s.element(&[0, 0]).unwrap(), &s);
        assert_eq!((c.rep.coords(), c.index), (&[0, 0][..], 0));
        let c = classify(&s.element(&[1, 2]).unwrap(), &s);
        assert_eq!((c.rep.coords(), c.index), (&[1, 2][..], 5));
        let reps: Vec<_> = class_reps(&s).iter().map(|a| a.coords().to_vec()).collect();
        assert_eq!(reps, vec![vec![0, 0], vec![0, 1], vec![0, 2], vec![1, 0], vec![1, 1], vec![1, 2]]);
        assert_eq!(class_table(&s), vec![0, 1, 2, 1, 3, 4, 5, 4]);
    }

    #[test]
    fn classify_is_constant_on_pairs() {
        for s in specs() {
            for a in enumerate_r(&s) {
                assert_eq!(classify(&a, &s), classify(&s.neg(&a), &s));
            }
        }
    }

    #[test]
    fn class_count_formula() {
        // 2^(g-1) (alpha^g * prod alphas + 1) when alpha = 1; in general the
        // count is (|R| + #{a : a = -a}) / 2.
        let s = RingSpec::f2_z4();
        assert_eq!(class_reps(&s).len(), 2 * (2 + 1));
        for s in specs() {
            let self_paired = enumerate_r(&s).iter().filter(|a| s.neg(a) == **a).count();
            assert_eq!(class_reps(&s).len(), (s.order() + self_paired) / 2);
            assert_eq!(self_paired, 1 << s.g());
        }
    }

    #[test]
    fn omega_examples() {
        let s = RingSpec::f2_z4();
        let u1 = vec![vec![-1, -1], vec![0, -1]];
        let u2 = vec![vec![-1, -1], vec![-2, -1]];
        let bad = vec![vec![1, 0], vec![1, 1]];
        assert!(omega_member(&u1, &s).unwrap());
        assert!(omega_member(&u2, &s).unwrap());
        assert!(!omega_member(&bad, &s).unwrap());
        assert!(!omega_member(&vec![vec![2, 0], vec![0, 1]], &s).unwrap());
        assert!(matches!(omega_member(&vec![vec![1]], &s), Err(Error::Shape(_))));
        for u in [&u1, &u2] {
            let inv = unimodular_inverse(u).unwrap();
            assert!(omega_member(&inv, &s).unwrap());
        }
    }

    #[test]
    fn omega_forms_agree() {
        let mut mats = Vec::new();
        for a in -2..=2 {
            for b in -2..=2 {
                for c in -2..=2 {
                    for d in -2..=2 {
                        mats.push(vec![vec![a, b], vec![c, d]]);
                    }
                }
            }
        }
        for ks in [vec![1, 1], vec![1, 2], vec![1, 4], vec![2, 4], vec![2, 8]] {
            let s = RingSpec::new(ks).unwrap();
            for u in &mats {
                assert_eq!(omega_member(u, &s).unwrap(), omega_member_by_congruence(u, &s).unwrap(), "{u:?}");
            }
        }
        let s3 = RingSpec::new(vec![1, 2, 4]).unwrap();
        let u = vec![vec![1, 0, 0], vec![2, 1, 0], vec![4, 2, 1]];
        assert!(omega_member(&u, &s3).unwrap());
        assert!(omega_member_by_congruence(&u, &s3).unwrap());
        let u = vec![vec![1, 0, 0], vec![0, 1, 0], vec![2, 0, 1]];
        assert!(!omega_member(&u, &s3).unwrap());
        assert!(!omega_member_by_congruence(&u, &s3).unwrap());
    }

    #[test]
    fn lambda_examples() {
        let s = RingSpec::f2_z4();
        let s1 = rat_matrix(&[&["1", "1"], &["1", "1/2"]]).unwrap();
        let s2 = rat_matrix(&[&["0", "0"], &["0", "1/2"]]).unwrap();
        let bad = rat_matrix(&[&["1/2", "0"], &["0", "0"]]).unwrap();
        let asym = rat_matrix(&[&["0", "1"], &["0", "0"]]).unwrap();
        for (m, expected) in [(&s1, true), (&s2, true), (&bad, false), (&asym, false)] {
            assert_eq!(lambda_member(m, &s).unwrap(), expected);
            assert_eq!(lambda_member_by_levels(m, &s).unwrap(), expected);
        }
        assert!(lambda_member(&vec![vec![BigRational::new(1.into(), 2.into())]], &s).is_err());
    }

    #[test]
    fn lambda_forms_agree_when_alpha_is_one() {
        let vals = ["0", "1", "1/2", "1/4", "-1/2", "3/2"];
        for ks in [vec![1, 1], vec![1, 2], vec![1, 4]] {
            let s = RingSpec::new(ks).unwrap();
            for a in vals {
                for b in vals {
                    for d in vals {
                        let m = rat_matrix(&[&[a, b], &[b, d]]).unwrap();
                        assert_eq!(lambda_member(&m, &s).unwrap(), lambda_member_by_levels(&m, &s).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn gcd_helper() {
        assert_eq!(gcd_i64(4, 6), 2);
        assert_eq!(gcd_i64(0, 4), 4);
    }
}
