//! Dense exact matrices over `Q(z)`.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::cyclotomic::Cyclo8;
use crate::error::{Error, Result};

/// Row-major dense matrix with [`Cyclo8`] entries.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawMatrix")]
pub struct CMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Cyclo8>,
}

#[derive(Deserialize)]
struct RawMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Cyclo8>,
}

impl TryFrom<RawMatrix> for CMatrix {
    type Error = Error;
    fn try_from(r: RawMatrix) -> Result<Self> {
        CMatrix::new(r.rows, r.cols, r.entries)
    }
}

impl CMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Cyclo8>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::shape("matrix dimensions must be positive"));
        }
        if entries.len() != rows * cols {
            return Err(Error::shape(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        Ok(CMatrix { rows, cols, entries })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        CMatrix { rows, cols, entries: vec![Cyclo8::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        Self::scalar(n, Cyclo8::one())
    }

    pub fn scalar(n: usize, c: Cyclo8) -> Self {
        Self::diag(vec![c; n])
    }

    pub fn diag(d: Vec<Cyclo8>) -> Self {
        let n = d.len();
        let mut m = Self::zeros(n, n);
        for (i, c) in d.into_iter().enumerate() {
            m.entries[i * n + i] = c;
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Cyclo8>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::shape("ragged rows"));
        }
        Self::new(r, c, rows.into_iter().flatten().collect())
    }

    pub fn from_int_rows(rows: &[Vec<i64>]) -> Result<Self> {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&v| Cyclo8::from_integer(v)).collect()).collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[Cyclo8] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> &Cyclo8 {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Cyclo8) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Cyclo8] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn nonzero_count(&self) -> usize {
        self.entries.iter().filter(|e| !e.is_zero()).count()
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self.get(i, j).is_zero()))
    }

    pub fn mat_mul(&self, other: &CMatrix) -> Result<CMatrix> {
        if self.cols != other.rows {
            return Err(Error::shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = CMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.entries[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &CMatrix) -> Result<CMatrix> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::shape("cannot add matrices of different shapes"));
        }
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect();
        Ok(CMatrix { rows: self.rows, cols: self.cols, entries })
    }

    pub fn scale(&self, c: &Cyclo8) -> CMatrix {
        CMatrix { rows: self.rows, cols: self.cols, entries: self.entries.iter().map(|e| e * c).collect() }
    }

    pub fn pow(&self, mut e: u32) -> Result<CMatrix> {
        if !self.is_square() {
            return Err(Error::shape("power of a non-square matrix"));
        }
        let mut base = self.clone();
        let mut acc = CMatrix::identity(self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mat_mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mat_mul(&base)?;
            }
        }
        Ok(acc)
    }

    pub fn transpose(&self) -> CMatrix {
        let mut out = CMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.entries[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        out
    }

    /// Conjugate transpose under `z -> z^-1`.
    pub fn adjoint(&self) -> CMatrix {
        let mut t = self.transpose();
        for e in &mut t.entries {
            *e = e.conj();
        }
        t
    }

    /// Exact check `M * adjoint(M) = I`.
    pub fn is_unitary(&self) -> bool {
        self.is_square()
            && self.mat_mul(&self.adjoint()).map(|p| p == CMatrix::identity(self.rows)).unwrap_or(false)
    }

    pub fn det(&self) -> Result<Cyclo8> {
        if !self.is_square() {
            return Err(Error::shape("determinant of a non-square matrix"));
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut det = Cyclo8::one();
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| !a.get(r, col).is_zero()) else {
                return Ok(Cyclo8::zero());
            };
            if p != col {
                a.swap_rows(p, col);
                det = -det;
            }
            let pivot = a.get(col, col).clone();
            det *= &pivot;
            let pinv = pivot.inv()?;
            for r in col + 1..n {
                let f = a.get(r, col) * &pinv;
                if f.is_zero() {
                    continue;
                }
                a.row_sub_scaled(r, col, &f, col);
            }
        }
        Ok(det)
    }

    /// `det(I - t*M)` as a polynomial in `t`.
    ///
    /// Faddeev-LeVerrier: with `B_0 = 0`, `B_k = M B_{k-1} + c_{k-1} I`,
    /// `c_k = -tr(M B_k) / k`, the polynomial is `sum_k c_k t^k`.
    pub fn char_det(&self) -> Result<TPoly> {
        if !self.is_square() {
            return Err(Error::shape("characteristic polynomial of a non-square matrix"));
        }
        let n = self.rows;
        let mut coeffs = vec![Cyclo8::one()];
        let mut b = CMatrix::zeros(n, n);
        for k in 1..=n {
            b = self.mat_mul(&b)?;
            for i in 0..n {
                b.entries[i * n + i] += &coeffs[k - 1];
            }
            let mb = self.mat_mul(&b)?;
            let tr = (0..n).fold(Cyclo8::zero(), |acc, i| acc + mb.get(i, i));
            let inv_k = BigRational::new(BigInt::from(-1), BigInt::from(k));
            coeffs.push(tr.scale(&inv_k));
        }
        Ok(TPoly::new(coeffs))
    }

    /// Reduced row echelon form and the pivot columns.
    pub fn rref(&self) -> (CMatrix, Vec<usize>) {
        let mut a = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for col in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !a.get(i, col).is_zero()) else {
                continue;
            };
            a.swap_rows(p, r);
            let pinv = a.get(r, col).inv().expect("pivot is nonzero");
            for j in col..self.cols {
                let v = a.get(r, j) * &pinv;
                a.set(r, j, v);
            }
            for i in 0..self.rows {
                if i == r {
                    continue;
                }
                let f = a.get(i, col).clone();
                if !f.is_zero() {
                    a.row_sub_scaled(i, r, &f, col);
                }
            }
            pivots.push(col);
            r += 1;
        }
        (a, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right kernel `{v : M v = 0}`.
    pub fn nullspace(&self) -> Vec<Vec<Cyclo8>> {
        let (r, pivots) = self.rref();
        let mut basis = Vec::new();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![Cyclo8::zero(); self.cols];
            v[free] = Cyclo8::one();
            for (row, &p) in pivots.iter().enumerate() {
                v[p] = -r.get(row, free);
            }
            basis.push(v);
        }
        basis
    }

    /// Injective byte encoding of the canonical text form.
    pub fn canonical_key(&self) -> Vec<u8> {
        let mut s = format!("{}x{}", self.rows, self.cols);
        for e in &self.entries {
            s.push('|');
            s.push_str(&e.to_string());
        }
        s.into_bytes()
    }

    pub fn apply(&self, v: &[Cyclo8]) -> Result<Vec<Cyclo8>> {
        if v.len() != self.cols {
            return Err(Error::shape("vector length does not match matrix columns"));
        }
        Ok((0..self.rows)
            .map(|i| self.row(i).iter().zip(v).fold(Cyclo8::zero(), |acc, (a, b)| acc + a * b))
            .collect())
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// `row[target] -= f * row[src]` for columns `from..`.
    fn row_sub_scaled(&mut self, target: usize, src: usize, f: &Cyclo8, from: usize) {
        for j in from..self.cols {
            let s = self.get(src, j);
            if s.is_zero() {
                continue;
            }
            let v = f * s;
            self.entries[target * self.cols + j] -= &v;
        }
    }
}

impl fmt::Debug for CMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CMatrix {}x{}\n{self}", self.rows, self.cols)
    }
}

/// Bracketed rows, one per line.
impl fmt::Display for CMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let cells: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

/// Polynomial in `t` with [`Cyclo8`] coefficients, trailing zeros trimmed.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct TPoly {
    coeffs: Vec<Cyclo8>,
}

impl TPoly {
    pub fn new(mut coeffs: Vec<Cyclo8>) -> Self {
        while coeffs.last().is_some_and(Cyclo8::is_zero) {
            coeffs.pop();
        }
        TPoly { coeffs }
    }

    pub fn coeffs(&self) -> &[Cyclo8] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> Cyclo8 {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn mul(&self, other: &TPoly) -> TPoly {
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return TPoly::new(vec![]);
        }
        let mut out = vec![Cyclo8::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        TPoly::new(out)
    }
}

impl fmt::Display for TPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| match k {
                0 => format!("({c})"),
                1 => format!("({c})*t"),
                _ => format!("({c})*t^{k}"),
            })
            .collect();
        if terms.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&terms.join(" + "))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(v: i64) -> Cyclo8 {
        Cyclo8::from_integer(v)
    }

    #[test]
    fn identity_is_neutral() {
        let m = CMatrix::from_rows(
            (0..6).map(|i| (0..6).map(|j| Cyclo8::root_of_unity(i * j)).collect()).collect(),
        )
        .unwrap();
        assert_eq!(CMatrix::identity(6).mat_mul(&m).unwrap(), m);
    }

    #[test]
    fn shape_errors() {
        let a = CMatrix::zeros(2, 3);
        assert!(matches!(a.mat_mul(&a), Err(Error::Shape(_))));
        assert!(matches!(a.det(), Err(Error::Shape(_))));
        assert!(matches!(a.char_det(), Err(Error::Shape(_))));
        assert!(CMatrix::new(2, 2, vec![c(1)]).is_err());
    }

    #[test]
    fn zeta_to_the_eighth() {
        let zeta = CMatrix::scalar(8, Cyclo8::z());
        assert_eq!(zeta.pow(8).unwrap(), CMatrix::identity(8));
        assert_ne!(zeta.pow(4).unwrap(), CMatrix::identity(8));
    }

    #[test]
    fn determinants() {
        assert_eq!(CMatrix::identity(6).det().unwrap(), c(1));
        let u2 = CMatrix::from_int_rows(&[vec![-1, -1], vec![-2, -1]]).unwrap();
        assert_eq!(u2.det().unwrap(), c(-1));
        let d = CMatrix::diag(vec![Cyclo8::z(), Cyclo8::root_of_unity(2), c(-1)]);
        assert_eq!(d.det().unwrap(), Cyclo8::from_ints([0, 0, 0, -1]));
        let singular = CMatrix::from_int_rows(&[vec![1, 2], vec![2, 4]]).unwrap();
        assert!(singular.det().unwrap().is_zero());
    }

    #[test]
    fn char_det_examples() {
        let p = CMatrix::identity(2).char_det().unwrap();
        assert_eq!(p, TPoly::new(vec![c(1), c(-2), c(1)]));

        // (1 - z t)^6 expanded with binomial coefficients
        let p = CMatrix::scalar(6, Cyclo8::z()).char_det().unwrap();
        let binom = [1, 6, 15, 20, 15, 6, 1];
        for (k, b) in binom.iter().enumerate() {
            let expected = Cyclo8::root_of_unity(k as i64 + 4 * k as i64).scale(&BigRational::from_integer((*b).into()));
            assert_eq!(p.coeff(k), expected, "k = {k}");
        }
    }

    #[test]
    fn nullspace_examples() {
        assert_eq!(CMatrix::zeros(2, 2).nullspace().len(), 2);
        assert!(CMatrix::identity(3).nullspace().is_empty());
        let m = CMatrix::from_int_rows(&[vec![1, 32], vec![1, 128]]).unwrap();
        assert!(m.nullspace().is_empty());
        let m = CMatrix::from_int_rows(&[vec![1, 2, 3], vec![2, 4, 6]]).unwrap();
        let ns = m.nullspace();
        assert_eq!(ns.len(), 2);
        for v in ns {
            assert!(m.apply(&v).unwrap().iter().all(Cyclo8::is_zero));
        }
    }

    #[test]
    fn canonical_keys() {
        let i6 = CMatrix::identity(6);
        assert_eq!(i6.canonical_key(), CMatrix::identity(6).canonical_key());
        assert_ne!(i6.canonical_key(), i6.scale(&c(-1)).canonical_key());
        let js = serde_json::to_string(&i6).unwrap();
        let back: CMatrix = serde_json::from_str(&js).unwrap();
        assert_eq!(back.canonical_key(), i6.canonical_key());
        // shape is part of the key
        assert_ne!(CMatrix::zeros(1, 4).canonical_key(), CMatrix::zeros(2, 2).canonical_key());
    }

    #[test]
    fn json_rejects_bad_shape() {
        let bad = r#"{"rows":2,"cols":2,"entries":[[[1,1],[0,1],[0,1],[0,1]]]}"#;
        assert!(serde_json::from_str::<CMatrix>(bad).is_err());
    }

    fn small_cyclo() -> impl Strategy<Value = Cyclo8> {
        prop::array::uniform4(-3i64..=3).prop_map(Cyclo8::from_ints)
    }

    fn small_matrix(n: usize) -> impl Strategy<Value = CMatrix> {
        prop::collection::vec(small_cyclo(), n * n).prop_map(move |e| CMatrix::new(n, n, e).unwrap())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn det_is_multiplicative(a in small_matrix(3), b in small_matrix(3)) {
            let ab = a.mat_mul(&b).unwrap();
            prop_assert_eq!(ab.det().unwrap(), a.det().unwrap() * b.det().unwrap());
        }

        #[test]
        fn char_det_is_conjugation_invariant(m in small_matrix(4), perm in Just((0..4usize).collect::<Vec<_>>()).prop_shuffle()) {
            let mut p = CMatrix::zeros(4, 4);
            for (i, &j) in perm.iter().enumerate() {
                p.set(i, j, c(1));
            }
            let conj = p.mat_mul(&m).unwrap().mat_mul(&p.transpose()).unwrap();
            prop_assert_eq!(conj.char_det().unwrap(), m.char_det().unwrap());
        }

        #[test]
        fn char_det_constant_and_top_terms(m in small_matrix(3)) {
            let p = m.char_det().unwrap();
            prop_assert_eq!(p.coeff(0), c(1));
            // top coefficient of det(I - tM) is (-1)^n det(M)
            prop_assert_eq!(p.coeff(3), -m.det().unwrap());
        }

        #[test]
        fn rank_nullity(rows in 1usize..4, cols in 1usize..5, seed in prop::collection::vec(-2i64..=2, 20)) {
            let entries: Vec<Cyclo8> = (0..rows * cols).map(|k| {
                let v = seed[k % seed.len()];
                Cyclo8::from_ints([v, 0, (v * k as i64) % 3, 0])
            }).collect();
            let m = CMatrix::new(rows, cols, entries).unwrap();
            let ns = m.nullspace();
            prop_assert_eq!(m.rank() + ns.len(), cols);
            for v in ns {
                prop_assert!(m.apply(&v).unwrap().iter().all(Cyclo8::is_zero));
            }
        }
    }
}
