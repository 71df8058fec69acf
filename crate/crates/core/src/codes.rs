//! Linear codes over `Z_{2k}` given by generator matrices, with
//! self-duality and Type II checks.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default cap on the number of coefficient tuples / codewords.
pub const DEFAULT_ENUMERATION_LIMIT: u64 = 1 << 26;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawGen", into = "RawGen")]
pub struct GenMatrix {
    modulus: u32,
    n: usize,
    rows: Vec<Vec<u8>>,
}

#[derive(Serialize, Deserialize)]
struct RawGen {
    modulus: u32,
    n: usize,
    rows: Vec<Vec<u32>>,
}

impl TryFrom<RawGen> for GenMatrix {
    type Error = Error;
    fn try_from(r: RawGen) -> Result<Self> {
        GenMatrix::new(r.modulus, r.n, r.rows)
    }
}

impl From<GenMatrix> for RawGen {
    fn from(g: GenMatrix) -> Self {
        RawGen {
            modulus: g.modulus,
            n: g.n,
            rows: g.rows.into_iter().map(|r| r.into_iter().map(u32::from).collect()).collect(),
        }
    }
}

impl GenMatrix {
    pub fn new(modulus: u32, n: usize, rows: Vec<Vec<u32>>) -> Result<Self> {
        if modulus == 0 || modulus % 2 != 0 || modulus > 256 {
            return Err(Error::domain(format!("modulus must be even and at most 256, got {modulus}")));
        }
        if n == 0 {
            return Err(Error::domain("code length must be positive"));
        }
        let mut out = Vec::with_capacity(rows.len());
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != n {
                return Err(Error::shape(format!("row {i} has length {}, expected {n}", row.len())));
            }
            if let Some(v) = row.iter().find(|&&v| v >= modulus) {
                return Err(Error::domain(format!("row {i} has entry {v} outside Z_{modulus}")));
            }
            out.push(row.into_iter().map(|v| v as u8).collect());
        }
        Ok(GenMatrix { modulus, n, rows: out })
    }

    /// The zero code of length `n`.
    pub fn zero(modulus: u32, n: usize) -> Result<Self> {
        Self::new(modulus, n, vec![])
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> &[Vec<u8>] {
        &self.rows
    }

    /// Additive order of each row.
    fn row_orders(&self) -> Vec<u64> {
        self.rows
            .iter()
            .map(|r| {
                let g = r.iter().fold(self.modulus as i64, |acc, &v| crate::ring::gcd_i64(acc, v as i64));
                (self.modulus as i64 / g) as u64
            })
            .collect()
    }
}

/// Fully enumerated code, words sorted lexicographically.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CodeSet {
    modulus: u32,
    n: usize,
    words: Vec<u8>,
    source: GenMatrix,
}

impl CodeSet {
    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.words.len() / self.n
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn source(&self) -> &GenMatrix {
        &self.source
    }

    pub fn word(&self, i: usize) -> &[u8] {
        &self.words[i * self.n..(i + 1) * self.n]
    }

    pub fn words(&self) -> impl ExactSizeIterator<Item = &[u8]> + '_ {
        self.words.chunks_exact(self.n)
    }

    pub fn contains(&self, w: &[u8]) -> bool {
        if w.len() != self.n {
            return false;
        }
        let (mut lo, mut hi) = (0, self.len());
        while lo < hi {
            let mid = (lo + hi) / 2;
            match self.word(mid).cmp(w) {
                std::cmp::Ordering::Less => lo = mid + 1,
                std::cmp::Ordering::Greater => hi = mid,
                std::cmp::Ordering::Equal => return true,
            }
        }
        false
    }

    /// Number of codewords of each Hamming weight `0..=n`.
    pub fn hamming_weights(&self) -> Vec<u64> {
        let mut dist = vec![0u64; self.n + 1];
        for w in self.words() {
            dist[w.iter().filter(|&&v| v != 0).count()] += 1;
        }
        dist
    }

    /// Euclidean norm `sum x_i^2` with entries lifted to `0..2k`.
    pub fn norm(w: &[u8]) -> u64 {
        w.iter().map(|&v| (v as u64) * (v as u64)).sum()
    }

    fn add(&self, a: &[u8], b: &[u8]) -> Vec<u8> {
        a.iter().zip(b).map(|(&x, &y)| ((x as u32 + y as u32) % self.modulus) as u8).collect()
    }
}

fn add_mod(a: &mut [u8], b: &[u8], m: u32) {
    for (x, &y) in a.iter_mut().zip(b) {
        *x = ((*x as u32 + y as u32) % m) as u8;
    }
}

fn finish(g: &GenMatrix, mut words: Vec<Vec<u8>>) -> Result<CodeSet> {
    words.sort_unstable();
    words.dedup();
    let code = CodeSet { modulus: g.modulus, n: g.n, words: words.concat(), source: g.clone() };
    check_code(&code)?;
    Ok(code)
}

/// Post-enumeration sanity: zero present, closed under adding each row,
/// size divides `(2k)^n`.
fn check_code(c: &CodeSet) -> Result<()> {
    if !c.contains(&vec![0u8; c.n]) {
        return Err(Error::Internal("enumerated code lacks the zero word".into()));
    }
    for w in c.words() {
        for r in c.source.rows() {
            if !c.contains(&c.add(w, r)) {
                return Err(Error::Internal("enumerated code is not additively closed".into()));
            }
        }
    }
    let mut size = c.len() as u128;
    let m = c.modulus as u128;
    // |C| divides m^n iff repeatedly dividing by gcd(size, m) reaches 1
    while size > 1 {
        let g = num_integer::gcd(size, m);
        if g == 1 {
            return Err(Error::Internal(format!("code size {} does not divide {m}^{}", c.len(), c.n)));
        }
        size /= g;
    }
    Ok(())
}

pub fn enumerate_code(g: &GenMatrix) -> Result<CodeSet> {
    enumerate_code_with_limit(g, DEFAULT_ENUMERATION_LIMIT)
}

/// Full additive span of the rows.
///
/// Iterates coefficient tuples `c_r in 0..ord(row_r)` with an odometer,
/// deduplicating afterwards (rows may be dependent). Falls back to
/// breadth-first additive closure when the tuple count exceeds `limit`.
pub fn enumerate_code_with_limit(g: &GenMatrix, limit: u64) -> Result<CodeSet> {
    let orders = g.row_orders();
    let tuples = orders.iter().try_fold(1u64, |acc, &o| acc.checked_mul(o));
    match tuples {
        Some(t) if t <= limit => enumerate_by_tuples(g, &orders),
        _ => enumerate_by_closure(g, limit),
    }
}

fn enumerate_by_tuples(g: &GenMatrix, orders: &[u64]) -> Result<CodeSet> {
    let total: u64 = orders.iter().product();
    let mut digits = vec![0u64; orders.len()];
    let mut cur = vec![0u8; g.n];
    let mut words = Vec::with_capacity(total as usize);
    for _ in 0..total {
        words.push(cur.clone());
        // odometer: each changed digit adds its row once (wrapping adds ord*row = 0 too)
        for (r, d) in digits.iter_mut().enumerate() {
            add_mod(&mut cur, &g.rows[r], g.modulus);
            *d += 1;
            if *d < orders[r] {
                break;
            }
            *d = 0;
        }
    }
    finish(g, words)
}

pub(crate) fn enumerate_by_closure(g: &GenMatrix, limit: u64) -> Result<CodeSet> {
    let zero = vec![0u8; g.n];
    let mut seen: HashSet<Vec<u8>> = HashSet::from([zero.clone()]);
    let mut frontier = vec![zero];
    while let Some(w) = frontier.pop() {
        for r in &g.rows {
            let mut next = w.clone();
            add_mod(&mut next, r, g.modulus);
            if seen.insert(next.clone()) {
                if seen.len() as u64 > limit {
                    return Err(Error::EnumerationOverflow { limit });
                }
                frontier.push(next);
            }
        }
    }
    finish(g, seen.into_iter().collect())
}

fn inner(a: &[u8], b: &[u8], m: u32) -> u64 {
    a.iter().zip(b).map(|(&x, &y)| x as u64 * y as u64).sum::<u64>() % m as u64
}

/// `C = C^perp`: the generating rows are pairwise orthogonal (so every pair
/// of codewords is, by bilinearity) and `|C|^2 = (2k)^n`.
pub fn is_self_dual(c: &CodeSet) -> bool {
    let rows = c.source.rows();
    let orthogonal = rows.iter().enumerate().all(|(i, a)| rows[i..].iter().all(|b| inner(a, b, c.modulus) == 0));
    let full = (c.len() as u128).checked_mul(c.len() as u128) == (c.modulus as u128).checked_pow(c.n as u32);
    orthogonal && full
}

/// Self-dual with every norm divisible by `4k = 2 * modulus`.
pub fn is_type2(c: &CodeSet) -> bool {
    let four_k = 2 * c.modulus as u64;
    is_self_dual(c) && c.words().all(|w| CodeSet::norm(w) % four_k == 0)
}

/// Block-diagonal generator matrix of `a (+) b`.
pub fn direct_sum(a: &GenMatrix, b: &GenMatrix) -> Result<GenMatrix> {
    if a.modulus != b.modulus {
        return Err(Error::domain(format!("moduli differ: {} vs {}", a.modulus, b.modulus)));
    }
    let n = a.n + b.n;
    let mut rows = Vec::with_capacity(a.rows.len() + b.rows.len());
    for r in &a.rows {
        let mut row: Vec<u32> = r.iter().map(|&v| v as u32).collect();
        row.resize(n, 0);
        rows.push(row);
    }
    for r in &b.rows {
        let mut row = vec![0u32; a.n];
        row.extend(r.iter().map(|&v| v as u32));
        rows.push(row);
    }
    GenMatrix::new(a.modulus, n, rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e8() -> GenMatrix {
        GenMatrix::new(
            2,
            8,
            vec![
                vec![1, 1, 1, 1, 0, 0, 0, 0],
                vec![0, 0, 1, 1, 1, 1, 0, 0],
                vec![0, 0, 0, 0, 1, 1, 1, 1],
                vec![1, 0, 1, 0, 1, 0, 1, 0],
            ],
        )
        .unwrap()
    }

    #[test]
    fn e8_by_brute_force() {
        let g = e8();
        let c = enumerate_code(&g).unwrap();
        // oracle: all 2^4 combinations summed independently
        let mut oracle: Vec<Vec<u8>> = (0..16u32)
            .map(|mask| {
                (0..8)
                    .map(|j| (0..4).filter(|r| mask >> r & 1 == 1).map(|r| g.rows()[r][j] as u32).sum::<u32>() % 2)
                    .map(|v| v as u8)
                    .collect()
            })
            .collect();
        oracle.sort();
        oracle.dedup();
        assert_eq!(c.words().map(<[u8]>::to_vec).collect::<Vec<_>>(), oracle);
        assert!(is_self_dual(&c) && is_type2(&c));
        assert_eq!(c.hamming_weights(), vec![1, 0, 0, 0, 14, 0, 0, 0, 1]);
    }

    #[test]
    fn tuples_and_closure_agree() {
        let g = GenMatrix::new(4, 4, vec![vec![1, 1, 1, 1], vec![0, 2, 0, 2], vec![2, 2, 2, 2]]).unwrap();
        let a = enumerate_code(&g).unwrap();
        let b = enumerate_by_closure(&g, 1 << 20).unwrap();
        assert_eq!(a, b);
        // dependent row: 2*(1,1,1,1) = (2,2,2,2)
        assert_eq!(a.len(), 8);
    }

    #[test]
    fn small_negative_cases() {
        let c = enumerate_code(&GenMatrix::new(2, 2, vec![vec![1, 0]]).unwrap()).unwrap();
        assert!(!is_self_dual(&c));
        let rep = enumerate_code(&GenMatrix::new(2, 2, vec![vec![1, 1]]).unwrap()).unwrap();
        assert!(is_self_dual(&rep));
        assert!(!is_type2(&rep));
    }

    #[test]
    fn direct_sums() {
        let e = e8();
        let ee = direct_sum(&e, &e).unwrap();
        assert_eq!(ee.n(), 16);
        assert_eq!(enumerate_code(&ee).unwrap().len(), 256);
        let z = GenMatrix::zero(2, 3).unwrap();
        let padded = enumerate_code(&direct_sum(&e, &z).unwrap()).unwrap();
        let plain = enumerate_code(&e).unwrap();
        assert_eq!(padded.len(), plain.len());
        for (p, w) in padded.words().zip(plain.words()) {
            assert_eq!(&p[..8], w);
            assert_eq!(&p[8..], &[0, 0, 0]);
        }
        let q = GenMatrix::new(4, 2, vec![vec![1, 1]]).unwrap();
        assert!(matches!(direct_sum(&e, &q), Err(Error::Domain(_))));
    }

    #[test]
    fn validation_and_limits() {
        assert!(GenMatrix::new(3, 2, vec![]).is_err());
        assert!(GenMatrix::new(4, 2, vec![vec![4, 0]]).is_err());
        assert!(GenMatrix::new(4, 2, vec![vec![1]]).is_err());
        let g = GenMatrix::new(4, 8, (0..8).map(|i| (0..8).map(|j| (i == j) as u32).collect()).collect()).unwrap();
        assert!(matches!(enumerate_code_with_limit(&g, 1000), Err(Error::EnumerationOverflow { limit: 1000 })));
        let zero = enumerate_code(&GenMatrix::zero(4, 5).unwrap()).unwrap();
        assert_eq!(zero.len(), 1);
    }

    #[test]
    fn json_form() {
        let js = r#"{"modulus":4,"n":2,"rows":[[1,3]]}"#;
        let g: GenMatrix = serde_json::from_str(js).unwrap();
        assert_eq!(serde_json::to_string(&g).unwrap(), js);
        assert!(serde_json::from_str::<GenMatrix>(r#"{"modulus":4,"n":2,"rows":[[1,4]]}"#).is_err());
    }
}
