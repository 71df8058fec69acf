//! Bundled instance data for `F_2 x Z_4` and the printed objects it is
//! checked against.

use crate::codes::GenMatrix;
use crate::cyclotomic::Cyclo8;
use crate::error::{Error, Result};
use crate::groups::{build_chi, build_eta, build_xi, build_zeta, symmetrize};
use crate::linalg::CMatrix;
use crate::molien::RationalFormula;
use crate::poly::{SwePoly, CLASS_VARS};
use crate::ring::{rat_matrix, IntMatrix, RatMatrix, RingSpec};

/// Generator names, in the order used by [`g_generators`] and [`h_generators`].
pub const GENERATOR_NAMES: [&str; 6] = ["chi", "xi_u1", "xi_u2", "eta_s1", "eta_s2", "zeta8"];

pub const CODE_IDS: [&str; 5] = ["e8", "q8", "k8", "d16", "k16"];

pub const MATRIX_IDS: [&str; 10] = [
    "chi", "xi_u1", "xi_u2", "eta_s1", "eta_s2", "phi_chi", "phi_xi_u1", "phi_xi_u2", "phi_eta_s1", "phi_eta_s2",
];

pub const POLY_IDS: [&str; 2] = ["W_E8_Q8", "W_E8_K8"];

pub const ORDER_G: usize = 589_824;
pub const ORDER_H: usize = 294_912;

/// Nonzero Molien coefficients at `t^0, t^8, ..., t^48`.
pub const MOLIEN_H_PRINTED: [u64; 7] = [1, 2, 6, 20, 46, 96, 195];

/// The monomials whose coefficients separate the two degree-8 enumerators.
pub const DEGREE8_MONOMIALS: [[u32; 6]; 2] = [[8, 0, 0, 0, 0, 0], [0, 8, 0, 0, 0, 0]];

/// `ac^3d^3f^9, a^2c^2d^4f^8, c^4d^4f^8, d^8f^8, ab^2cd^2e^2f^8, b^4e^4f^8`.
pub const DEGREE16_MONOMIALS: [[u32; 6]; 6] = [
    [1, 0, 3, 3, 0, 9],
    [2, 0, 2, 4, 0, 8],
    [0, 0, 4, 4, 0, 8],
    [0, 0, 0, 8, 0, 8],
    [1, 2, 1, 2, 2, 8],
    [0, 4, 0, 0, 4, 8],
];

/// The six degree-16 enumerators as (id, binary summands, quaternary summands).
pub const DEGREE16_PAIRS: [(&str, &[&str], &[&str]); 6] = [
    ("W2_E8_Q8", &["e8", "e8"], &["q8", "q8"]),
    ("W2_E8_K8", &["e8", "e8"], &["k8", "k8"]),
    ("W_E8E8_Q8K8", &["e8", "e8"], &["q8", "k8"]),
    ("W_E8E8_K16", &["e8", "e8"], &["k16"]),
    ("W_D16_Q8Q8", &["d16"], &["q8", "q8"]),
    ("W_D16_Q8K8", &["d16"], &["q8", "k8"]),
];

/// The degree-8 enumerators as (id, binary code, quaternary code).
pub const DEGREE8_PAIRS: [(&str, &str, &str); 2] = [("W_E8_Q8", "e8", "q8"), ("W_E8_K8", "e8", "k8")];

pub fn ring() -> RingSpec {
    RingSpec::f2_z4()
}

pub fn u1() -> IntMatrix {
    vec![vec![-1, -1], vec![0, -1]]
}

pub fn u2() -> IntMatrix {
    vec![vec![-1, -1], vec![-2, -1]]
}

pub fn s1() -> RatMatrix {
    rat_matrix(&[&["1", "1"], &["1", "1/2"]]).expect("static matrix")
}

pub fn s2() -> RatMatrix {
    rat_matrix(&[&["0", "0"], &["0", "1/2"]]).expect("static matrix")
}

/// `chi, xi_u1, xi_u2, eta_s1, eta_s2, zeta_8` on the 8-dimensional space.
pub fn g_generators() -> Result<Vec<CMatrix>> {
    let spec = ring();
    Ok(vec![
        build_chi(&spec)?,
        build_xi(&u1(), &spec)?,
        build_xi(&u2(), &spec)?,
        build_eta(&s1(), &spec)?,
        build_eta(&s2(), &spec)?,
        build_zeta(spec.order()),
    ])
}

/// Symmetrized images of [`g_generators`] on the 6 class variables.
pub fn h_generators() -> Result<Vec<CMatrix>> {
    let spec = ring();
    g_generators()?.iter().map(|m| symmetrize(m, &spec)).collect()
}

fn matrix_text(id: &str) -> Option<&'static str> {
    Some(match id {
        "chi" => include_str!("../fixtures/matrices/chi.txt"),
        "xi_u1" => include_str!("../fixtures/matrices/xi_u1.txt"),
        "xi_u2" => include_str!("../fixtures/matrices/xi_u2.txt"),
        "eta_s1" => include_str!("../fixtures/matrices/eta_s1.txt"),
        "eta_s2" => include_str!("../fixtures/matrices/eta_s2.txt"),
        "phi_chi" => include_str!("../fixtures/matrices/phi_chi.txt"),
        "phi_xi_u1" => include_str!("../fixtures/matrices/phi_xi_u1.txt"),
        "phi_xi_u2" => include_str!("../fixtures/matrices/phi_xi_u2.txt"),
        "phi_eta_s1" => include_str!("../fixtures/matrices/phi_eta_s1.txt"),
        "phi_eta_s2" => include_str!("../fixtures/matrices/phi_eta_s2.txt"),
        _ => return None,
    })
}

fn code_text(id: &str) -> Option<&'static str> {
    Some(match id {
        "e8" => include_str!("../fixtures/codes/e8.json"),
        "q8" => include_str!("../fixtures/codes/q8.json"),
        "k8" => include_str!("../fixtures/codes/k8.json"),
        "d16" => include_str!("../fixtures/codes/d16.json"),
        "k16" => include_str!("../fixtures/codes/k16.json"),
        _ => return None,
    })
}

fn poly_text(id: &str) -> Option<&'static str> {
    Some(match id {
        "W_E8_Q8" => include_str!("../fixtures/polys/w_e8_q8.txt"),
        "W_E8_K8" => include_str!("../fixtures/polys/w_e8_k8.txt"),
        _ => return None,
    })
}

/// A printed matrix fixture.
pub fn printed_matrix(id: &str) -> Result<CMatrix> {
    let text = matrix_text(id).ok_or_else(|| Error::NotFound(format!("matrix {id:?}")))?;
    parse_matrix(text)
}

/// The generator matrix of a bundled code.
pub fn code(id: &str) -> Result<GenMatrix> {
    let text = code_text(id).ok_or_else(|| Error::NotFound(format!("code {id:?}")))?;
    serde_json::from_str(text).map_err(|e| Error::Parse(format!("code {id}: {e}")))
}

/// A printed enumerator in the class variables `a..f`.
pub fn printed_poly(id: &str) -> Result<SwePoly> {
    let text = poly_text(id).ok_or_else(|| Error::NotFound(format!("polynomial {id:?}")))?;
    SwePoly::parse(text.trim(), &CLASS_VARS)
}

/// `(1 - t^8 + 3t^16 + 4t^24 + 5t^32 + 3t^40 + 7t^48 + 2t^56) / ((1-t^8)^3 (1-t^24)^3)`.
pub fn molien_formula_h() -> RationalFormula {
    let mut num = vec![0i64; 57];
    for (d, c) in [(0, 1), (8, -1), (16, 3), (24, 4), (32, 5), (40, 3), (48, 7), (56, 2)] {
        num[d] = c;
    }
    let mut f8 = vec![0i64; 9];
    f8[0] = 1;
    f8[8] = -1;
    let mut f24 = vec![0i64; 25];
    f24[0] = 1;
    f24[24] = -1;
    RationalFormula::from_factors(&num, &[(&f8, 3), (&f24, 3)])
}

/// Parses one bracketed row per line, cells separated by commas.
pub fn parse_matrix(text: &str) -> Result<CMatrix> {
    let mut rows = Vec::new();
    for line in text.lines().map(str::trim).filter(|l| !l.is_empty()) {
        let inner = line
            .strip_prefix('[')
            .and_then(|l| l.strip_suffix(']'))
            .ok_or_else(|| Error::Parse(format!("matrix row must be bracketed: {line:?}")))?;
        let row = inner.split(',').map(|c| c.trim().parse::<Cyclo8>()).collect::<Result<Vec<_>>>()?;
        rows.push(row);
    }
    CMatrix::from_rows(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_load() {
        for id in MATRIX_IDS {
            let m = printed_matrix(id).unwrap();
            assert!(m.rows() == 8 || m.rows() == 6, "{id}");
        }
        for id in CODE_IDS {
            code(id).unwrap();
        }
        assert_eq!(printed_poly("W_E8_Q8").unwrap().homogeneous_degree(), Some(8));
        assert_eq!(printed_poly("W_E8_K8").unwrap().homogeneous_degree(), Some(8));
        assert!(matches!(printed_matrix("nope"), Err(Error::NotFound(_))));
    }

    #[test]
    fn printed_polys_have_full_mass() {
        let ones = vec![Cyclo8::one(); 6];
        for id in POLY_IDS {
            assert_eq!(printed_poly(id).unwrap().evaluate(&ones).unwrap(), Cyclo8::from_integer(4096), "{id}");
        }
    }

    #[test]
    fn generators_match_printed_matrices() {
        let g = g_generators().unwrap();
        let h = h_generators().unwrap();
        for (i, name) in GENERATOR_NAMES.iter().enumerate().take(5) {
            assert_eq!(g[i], printed_matrix(name).unwrap(), "{name}");
            assert_eq!(h[i], printed_matrix(&format!("phi_{name}")).unwrap(), "phi_{name}");
        }
    }

    #[test]
    fn matrix_parser_rejects_garbage() {
        assert!(parse_matrix("[1, 2]\n3, 4").is_err());
        assert!(parse_matrix("[1, 2]\n[3]").is_err());
        assert!(parse_matrix("[1, q]").is_err());
    }
}
