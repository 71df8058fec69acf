//! The generator families acting on `C[R]`, the class-sum map `phi`
//! and finite matrix-group closure.

use std::hash::BuildHasherDefault;

use indexmap::IndexSet;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use rustc_hash::FxHasher;
use tracing::debug;

use crate::cyclotomic::{Cyclo8, IntCyclo};
use crate::error::{Error, Result};
use crate::linalg::CMatrix;
use crate::ring::{class_reps, class_table, enumerate_r, lambda_member, omega_member, IntMatrix, RatMatrix, RingSpec};

/// `e(x)` for a rational `x` with `8x` integral.
fn e_of(x: &BigRational) -> Result<Cyclo8> {
    let eighths = x * BigRational::from_integer(BigInt::from(8));
    if !eighths.is_integer() {
        return Err(Error::UnsupportedSpec(format!("e({x}) is not an 8th root of unity")));
    }
    let k = (eighths.to_integer() % BigInt::from(8)).to_i64().expect("reduced mod 8");
    Ok(Cyclo8::root_of_unity(k))
}

/// `chi = e(1/8)^g (2^g alpha^g prod alpha_i)^(-1/2) (e(<D^-1 a, b> / 2 alpha))_{a,b}`.
pub fn build_chi(spec: &RingSpec) -> Result<CMatrix> {
    let g = spec.g() as u32;
    let scale: u64 = (1u64 << g)
        * (spec.alpha() as u64).pow(g)
        * spec.alphas().iter().map(|&a| a as u64).product::<u64>();
    if !scale.is_power_of_two() {
        return Err(Error::UnsupportedSpec(format!(
            "normalisation 2^g alpha^g prod(alpha_i) = {scale} is not a power of two"
        )));
    }
    let prefactor = Cyclo8::root_of_unity(g as i64) * Cyclo8::inv_sqrt_pow2(scale.trailing_zeros());
    let elems = enumerate_r(spec);
    let n = elems.len();
    let mut entries = Vec::with_capacity(n * n);
    for a in &elems {
        for b in &elems {
            // <D^-1 a, b> / 2 alpha = sum_i a_i b_i / (2 k_i)
            let mut x = BigRational::zero();
            for i in 0..spec.g() {
                let num = BigInt::from(a.coords()[i] * b.coords()[i]);
                x += BigRational::new(num, BigInt::from(2 * spec.ks()[i] as i64));
            }
            entries.push(&prefactor * e_of(&x)?);
        }
    }
    CMatrix::new(n, n, entries)
}

/// `xi_U = (sqrt(det U) delta_{b = U a})_{a,b}` with `sqrt(-1) = z^2`.
pub fn build_xi(u: &IntMatrix, spec: &RingSpec) -> Result<CMatrix> {
    if !omega_member(u, spec)? {
        return Err(Error::domain(format!("{u:?} is not in Omega(D)")));
    }
    let det = crate::ring::integer_det(u)?;
    let root = if det == 1 { Cyclo8::one() } else { Cyclo8::root_of_unity(2) };
    let elems = enumerate_r(spec);
    let n = elems.len();
    let mut m = CMatrix::zeros(n, n);
    for (ia, a) in elems.iter().enumerate() {
        let image: Vec<i64> =
            (0..spec.g()).map(|i| (0..spec.g()).map(|j| u[i][j] * a.coords()[j]).sum()).collect();
        let b = spec.element(&image)?;
        m.set(ia, spec.index_of(&b), root.clone());
    }
    Ok(m)
}

/// `eta_S = diag(e(S[a] / 4 alpha))`.
pub fn build_eta(s: &RatMatrix, spec: &RingSpec) -> Result<CMatrix> {
    if !lambda_member(s, spec)? {
        return Err(Error::domain("S is not in Lambda(D)"));
    }
    let four_alpha = BigRational::from_integer(BigInt::from(4 * spec.alpha() as i64));
    let mut diag = Vec::new();
    for a in enumerate_r(spec) {
        let c = a.coords();
        let mut quad = BigRational::zero();
        for i in 0..spec.g() {
            for j in 0..spec.g() {
                quad += &s[i][j] * BigInt::from(c[i] * c[j]);
            }
        }
        diag.push(e_of(&(quad / &four_alpha))?);
    }
    Ok(CMatrix::diag(diag))
}

/// `zeta_n = e(1/8) I_n`.
pub fn build_zeta(n: usize) -> CMatrix {
    CMatrix::scalar(n, Cyclo8::z())
}

/// `phi(g)_{a,b} = sum over d in class b of g_{rep(a), d}`.
///
/// Fails with [`Error::NotSymmetrizable`] when the row of `-rep(a)` gives a
/// different class sum, i.e. the result would depend on the representative.
pub fn symmetrize(gmat: &CMatrix, spec: &RingSpec) -> Result<CMatrix> {
    let n = spec.order();
    if gmat.rows() != n || gmat.cols() != n {
        return Err(Error::shape(format!("phi expects a {n}x{n} matrix")));
    }
    let table = class_table(spec);
    let reps = class_reps(spec);
    let m = reps.len();
    let class_sums = |row: usize| {
        let mut sums = vec![Cyclo8::zero(); m];
        for (d, &cls) in table.iter().enumerate() {
            let v = gmat.get(row, d);
            if !v.is_zero() {
                sums[cls] += v;
            }
        }
        sums
    };
    let mut out = Vec::with_capacity(m * m);
    for (ia, rep) in reps.iter().enumerate() {
        let row = spec.index_of(rep);
        let sums = class_sums(row);
        let neg_row = spec.index_of(&spec.neg(rep));
        if neg_row != row && class_sums(neg_row) != sums {
            return Err(Error::NotSymmetrizable(format!("class {ia} row sums depend on the representative")));
        }
        out.extend(sums);
    }
    CMatrix::new(m, m, out)
}

/// A square matrix over `Z[z][1/2]` stored as `num / 2^exp` with `i8`
/// coordinates. Normalised so that `exp` is minimal, which makes equality
/// of the packed form equality of matrices.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct PackedMat {
    exp: u8,
    data: Box<[i8]>,
}

type FxIndexSet<T> = IndexSet<T, BuildHasherDefault<FxHasher>>;

impl PackedMat {
    pub fn from_cmatrix(m: &CMatrix) -> Option<PackedMat> {
        let parts: Vec<(IntCyclo, u32)> = m.entries().iter().map(Cyclo8::to_dyadic).collect::<Option<_>>()?;
        let exp = parts.iter().map(|p| p.1).max().unwrap_or(0);
        let mut wide = Vec::with_capacity(parts.len() * 4);
        for (num, e) in parts {
            for v in num.0 {
                wide.push(v.checked_mul(1i128 << (exp - e))?.to_i64()?);
            }
        }
        Self::normalise(exp, wide)
    }

    fn normalise(mut exp: u32, mut wide: Vec<i64>) -> Option<PackedMat> {
        while exp > 0 && wide.iter().all(|v| v % 2 == 0) {
            for v in &mut wide {
                *v /= 2;
            }
            exp -= 1;
        }
        let data = wide.into_iter().map(|v| i8::try_from(v).ok()).collect::<Option<Box<[i8]>>>()?;
        Some(PackedMat { exp: u8::try_from(exp).ok()?, data })
    }

    pub fn dim(&self) -> usize {
        ((self.data.len() / 4) as f64).sqrt() as usize
    }

    pub fn exp(&self) -> u32 {
        self.exp as u32
    }

    /// Numerator entry `(i, j)` as an element of `Z[z]`.
    pub fn numerator(&self, i: usize, j: usize) -> IntCyclo {
        let n = self.dim();
        let o = (i * n + j) * 4;
        IntCyclo([0, 1, 2, 3].map(|k| self.data[o + k] as i128))
    }

    pub fn to_cmatrix(&self) -> CMatrix {
        let n = self.dim();
        let entries = (0..n * n)
            .map(|k| Cyclo8::from_dyadic(&self.numerator(k / n, k % n), self.exp as u32))
            .collect();
        CMatrix::new(n, n, entries).expect("square")
    }

    pub fn key(&self) -> Vec<u8> {
        let mut k = Vec::with_capacity(self.data.len() + 1);
        k.push(self.exp);
        k.extend(self.data.iter().map(|&v| v as u8));
        k
    }

    fn identity(n: usize) -> PackedMat {
        let mut data = vec![0i8; n * n * 4];
        for i in 0..n {
            data[(i * n + i) * 4] = 1;
        }
        PackedMat { exp: 0, data: data.into_boxed_slice() }
    }
}

/// Left factor in sparse row form for fast products.
struct SparseGen {
    exp: u32,
    rows: Vec<Vec<(usize, [i64; 4])>>,
}

impl SparseGen {
    fn new(p: &PackedMat) -> Self {
        let n = p.dim();
        let rows = (0..n)
            .map(|i| {
                (0..n)
                    .filter_map(|k| {
                        let c = p.numerator(i, k);
                        (!c.is_zero()).then(|| (k, c.0.map(|v| v as i64)))
                    })
                    .collect()
            })
            .collect();
        SparseGen { exp: p.exp as u32, rows }
    }

    fn mul(&self, x: &PackedMat) -> Option<PackedMat> {
        let n = self.rows.len();
        let mut out = vec![0i64; n * n * 4];
        for (i, row) in self.rows.iter().enumerate() {
            for &(k, g) in row {
                for j in 0..n {
                    let o = (k * n + j) * 4;
                    let xs = &x.data[o..o + 4];
                    if xs.iter().all(|&v| v == 0) {
                        continue;
                    }
                    let t = &mut out[(i * n + j) * 4..(i * n + j) * 4 + 4];
                    for (a, &ga) in g.iter().enumerate() {
                        if ga == 0 {
                            continue;
                        }
                        for (b, &xb) in xs.iter().enumerate() {
                            let p = ga * xb as i64;
                            if a + b < 4 {
                                t[a + b] += p;
                            } else {
                                t[a + b - 4] -= p;
                            }
                        }
                    }
                }
            }
        }
        PackedMat::normalise(self.exp + x.exp as u32, out)
    }
}

/// The closure of a finite set of generators, in breadth-first discovery order.
#[derive(Debug)]
pub struct GroupClosure {
    dim: usize,
    generators: Vec<CMatrix>,
    elements: FxIndexSet<PackedMat>,
}

impl GroupClosure {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generators(&self) -> &[CMatrix] {
        &self.generators
    }

    pub fn packed(&self) -> impl ExactSizeIterator<Item = &PackedMat> + '_ {
        self.elements.iter()
    }

    pub fn packed_at(&self, i: usize) -> Option<&PackedMat> {
        self.elements.get_index(i)
    }

    pub fn element(&self, i: usize) -> Option<CMatrix> {
        self.elements.get_index(i).map(PackedMat::to_cmatrix)
    }

    pub fn contains(&self, m: &CMatrix) -> bool {
        PackedMat::from_cmatrix(m).is_some_and(|p| self.elements.contains(&p))
    }

    /// True when every generator maps the element set into itself.
    pub fn is_closed(&self) -> bool {
        let gens: Vec<SparseGen> = self
            .generators
            .iter()
            .map(|g| SparseGen::new(&PackedMat::from_cmatrix(g).expect("packable generator")))
            .collect();
        self.elements
            .par_iter()
            .all(|x| gens.iter().all(|g| g.mul(x).is_some_and(|p| self.elements.contains(&p))))
    }
}

const CHUNK: usize = 8192;

fn validate_generators(generators: &[CMatrix]) -> Result<(usize, Vec<PackedMat>)> {
    let first = generators.first().ok_or_else(|| Error::domain("no generators"))?;
    let n = first.rows();
    for g in generators {
        if !g.is_square() || g.rows() != n {
            return Err(Error::shape(format!("generators must all be {n}x{n}")));
        }
    }
    let mut packed = Vec::new();
    for g in generators {
        if g.det()?.is_zero() {
            return Err(Error::domain("generator is singular"));
        }
        packed.push(PackedMat::from_cmatrix(g).ok_or_else(|| {
            Error::UnsupportedSpec("generator entries must be dyadic with small numerators".into())
        })?);
    }
    Ok((n, packed))
}

fn overflow_err() -> Error {
    Error::UnsupportedSpec("group element numerators exceed the packed range".into())
}

/// Breadth-first closure under left multiplication by the generators.
///
/// Frontier products are computed in parallel in fixed-size chunks and
/// inserted sequentially, so the discovery order does not depend on the
/// number of threads.
pub fn close_group(generators: &[CMatrix], limit: usize) -> Result<GroupClosure> {
    let (n, packed) = validate_generators(generators)?;
    let gens: Vec<SparseGen> = packed.iter().map(SparseGen::new).collect();
    let mut elements: FxIndexSet<PackedMat> = FxIndexSet::default();
    elements.insert(PackedMat::identity(n));
    let mut start = 0;
    while start < elements.len() {
        let end = elements.len();
        let mut lo = start;
        while lo < end {
            let hi = (lo + CHUNK).min(end);
            let products: Vec<Option<PackedMat>> = (lo..hi)
                .into_par_iter()
                .flat_map_iter(|idx| {
                    let x = &elements[idx];
                    gens.iter().map(move |g| g.mul(x))
                })
                .collect();
            for p in products {
                elements.insert(p.ok_or_else(overflow_err)?);
                if elements.len() > limit {
                    return Err(Error::ClosureOverflow { limit });
                }
            }
            lo = hi;
        }
        debug!(layer_start = start, size = elements.len(), "closure layer");
        start = end;
    }
    Ok(GroupClosure { dim: n, generators: generators.to_vec(), elements })
}

/// Depth-first closure; sequential, used to cross-check [`close_group`].
pub fn close_group_dfs(generators: &[CMatrix], limit: usize) -> Result<GroupClosure> {
    let (n, packed) = validate_generators(generators)?;
    let gens: Vec<SparseGen> = packed.iter().map(SparseGen::new).collect();
    let mut elements: FxIndexSet<PackedMat> = FxIndexSet::default();
    let id = PackedMat::identity(n);
    elements.insert(id.clone());
    let mut stack = vec![id];
    while let Some(x) = stack.pop() {
        for g in &gens {
            let p = g.mul(&x).ok_or_else(overflow_err)?;
            if elements.insert(p.clone()) {
                if elements.len() > limit {
                    return Err(Error::ClosureOverflow { limit });
                }
                stack.push(p);
            }
        }
    }
    Ok(GroupClosure { dim: n, generators: generators.to_vec(), elements })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::rat_matrix;

    fn spec() -> RingSpec {
        RingSpec::f2_z4()
    }

    fn u1() -> IntMatrix {
        vec![vec![-1, -1], vec![0, -1]]
    }

    fn u2() -> IntMatrix {
        vec![vec![-1, -1], vec![-2, -1]]
    }

    #[test]
    fn chi_corner_and_symmetry() {
        let chi = build_chi(&spec()).unwrap();
        let quarter = Cyclo8::from_ints([0, 1, 0, 1]).scale(&BigRational::new(1.into(), 4.into()));
        assert_eq!(chi.get(0, 0), &quarter);
        assert_eq!(chi, chi.transpose());
        assert!(chi.entries().iter().all(|e| *e == quarter || *e == -&quarter || {
            // +-(z^3 - z)/4 entries
            let alt = Cyclo8::from_ints([0, -1, 0, 1]).scale(&BigRational::new(1.into(), 4.into()));
            *e == alt || *e == -alt
        }));
        assert!(chi.is_unitary());
    }

    #[test]
    fn chi_rejects_unsupported_specs() {
        // ks = [1, 3] gives 2^2 * 1 * 3 = 12
        let s = RingSpec::new(vec![1, 3]).unwrap();
        assert!(matches!(build_chi(&s), Err(Error::UnsupportedSpec(_))));
    }

    #[test]
    fn xi_examples() {
        let s = spec();
        let xi1 = build_xi(&u1(), &s).unwrap();
        // row (0,1) -> column (1,3)
        assert!(xi1.get(1, 7).is_one());
        assert_eq!(xi1.nonzero_count(), 8);
        assert_eq!(xi1.mat_mul(&xi1).unwrap(), CMatrix::identity(8));
        let xi2 = build_xi(&u2(), &s).unwrap();
        assert!(xi2.entries().iter().all(|e| e.is_zero() || *e == Cyclo8::root_of_unity(2)));
        assert_eq!(build_xi(&vec![vec![1, 0], vec![0, 1]], &s).unwrap(), CMatrix::identity(8));
        let bad = vec![vec![1, 0], vec![1, 1]];
        assert!(matches!(build_xi(&bad, &s), Err(Error::Domain(_))));
    }

    #[test]
    fn eta_examples() {
        let s = spec();
        let r = Cyclo8::root_of_unity;
        let s1 = rat_matrix(&[&["1", "1"], &["1", "1/2"]]).unwrap();
        let s2 = rat_matrix(&[&["0", "0"], &["0", "1/2"]]).unwrap();
        assert_eq!(
            build_eta(&s1, &s).unwrap(),
            CMatrix::diag(vec![r(0), r(1), r(4), r(1), r(2), r(7), r(6), r(7)])
        );
        assert_eq!(
            build_eta(&s2, &s).unwrap(),
            CMatrix::diag(vec![r(0), r(1), r(4), r(1), r(0), r(1), r(4), r(1)])
        );
        let zero = rat_matrix(&[&["0", "0"], &["0", "0"]]).unwrap();
        assert_eq!(build_eta(&zero, &s).unwrap(), CMatrix::identity(8));
        let bad = rat_matrix(&[&["1/2", "0"], &["0", "0"]]).unwrap();
        assert!(matches!(build_eta(&bad, &s), Err(Error::Domain(_))));
    }

    #[test]
    fn zeta_and_its_symmetrization() {
        let z8 = build_zeta(8);
        assert_eq!(z8.pow(8).unwrap(), CMatrix::identity(8));
        assert_eq!(symmetrize(&z8, &spec()).unwrap(), CMatrix::scalar(6, Cyclo8::z()));
    }

    #[test]
    fn phi_examples() {
        let s = spec();
        let r = Cyclo8::root_of_unity;
        assert_eq!(symmetrize(&CMatrix::identity(8), &s).unwrap(), CMatrix::identity(6));
        let s1 = rat_matrix(&[&["1", "1"], &["1", "1/2"]]).unwrap();
        let eta = build_eta(&s1, &s).unwrap();
        assert_eq!(symmetrize(&eta, &s).unwrap(), CMatrix::diag(vec![r(0), r(1), r(4), r(2), r(7), r(6)]));
        let phi_chi = symmetrize(&build_chi(&s).unwrap(), &s).unwrap();
        let half = Cyclo8::from_ints([0, 1, 0, 1]).scale(&BigRational::new(1.into(), 2.into()));
        assert_eq!(phi_chi.get(0, 1), &half);
        assert!(matches!(symmetrize(&CMatrix::identity(6), &s), Err(Error::Shape(_))));
    }

    #[test]
    fn phi_detects_representative_dependence() {
        let s = spec();
        // eta-like diagonal that differs on (0,1) and (0,3)
        let mut d = vec![Cyclo8::one(); 8];
        d[3] = Cyclo8::from_integer(-1);
        assert!(matches!(symmetrize(&CMatrix::diag(d), &s), Err(Error::NotSymmetrizable(_))));
    }

    #[test]
    fn packed_round_trip() {
        let chi = build_chi(&spec()).unwrap();
        let p = PackedMat::from_cmatrix(&chi).unwrap();
        assert_eq!(p.exp(), 2);
        assert_eq!(p.to_cmatrix(), chi);
        let third = CMatrix::scalar(2, Cyclo8::from_rational(BigRational::new(1.into(), 3.into())));
        assert!(PackedMat::from_cmatrix(&third).is_none());
    }

    #[test]
    fn sparse_product_matches_exact() {
        let s = spec();
        let chi = build_chi(&s).unwrap();
        let xi2 = build_xi(&u2(), &s).unwrap();
        let exact = xi2.mat_mul(&chi).unwrap();
        let fast = SparseGen::new(&PackedMat::from_cmatrix(&xi2).unwrap())
            .mul(&PackedMat::from_cmatrix(&chi).unwrap())
            .unwrap();
        assert_eq!(fast.to_cmatrix(), exact);
        let sq = SparseGen::new(&PackedMat::from_cmatrix(&chi).unwrap())
            .mul(&PackedMat::from_cmatrix(&chi).unwrap())
            .unwrap();
        assert_eq!(sq.to_cmatrix(), chi.mat_mul(&chi).unwrap());
    }

    #[test]
    fn cyclic_scalar_group() {
        let g = close_group(&[build_zeta(3)], 100).unwrap();
        assert_eq!(g.order(), 8);
        assert!(g.is_closed());
        assert!(g.contains(&CMatrix::identity(3)));
        assert!(matches!(close_group(&[build_zeta(3)], 5), Err(Error::ClosureOverflow { limit: 5 })));
    }

    #[test]
    fn closure_validation() {
        assert!(matches!(close_group(&[build_zeta(3), build_zeta(2)], 100), Err(Error::Shape(_))));
        assert!(close_group(&[CMatrix::zeros(2, 2)], 100).is_err());
        assert!(close_group(&[], 100).is_err());
    }

    #[test]
    fn closure_is_strategy_and_order_independent() {
        let s = spec();
        let r = |m: CMatrix| symmetrize(&m, &s).unwrap();
        let s1 = rat_matrix(&[&["1", "1"], &["1", "1/2"]]).unwrap();
        let s2 = rat_matrix(&[&["0", "0"], &["0", "1/2"]]).unwrap();
        let gens = vec![
            r(build_xi(&u1(), &s).unwrap()),
            r(build_xi(&u2(), &s).unwrap()),
            r(build_eta(&s1, &s).unwrap()),
            r(build_eta(&s2, &s).unwrap()),
        ];
        let bfs = close_group(&gens, 1 << 20).unwrap();
        let dfs = close_group_dfs(&gens, 1 << 20).unwrap();
        let mut rev = gens.clone();
        rev.reverse();
        let bfs_rev = close_group(&rev, 1 << 20).unwrap();
        assert_eq!(bfs.order(), dfs.order());
        assert_eq!(bfs.order(), bfs_rev.order());
        assert!(bfs.is_closed());
        for x in dfs.packed() {
            assert!(bfs.elements.contains(x));
        }
    }
}
