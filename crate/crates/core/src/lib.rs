//! Exact computations for Type II codes over `F_2 x Z_4` and the finite
//! matrix groups acting on their symmetrized weight enumerators.
//!
//! All arithmetic is exact over `Q(z)`, `z = exp(2 pi i / 8)`.

pub mod catalog;
pub mod codes;
pub mod cyclotomic;
pub mod enumerators;
pub mod error;
pub mod groups;
pub mod linalg;
pub mod molien;
pub mod poly;
pub mod ring;
pub mod verify;

pub use codes::{CodeSet, GenMatrix};
pub use cyclotomic::Cyclo8;
pub use error::{Error, Result};
pub use groups::GroupClosure;
pub use linalg::{CMatrix, TPoly};
pub use molien::{RationalFormula, RationalSeries};
pub use poly::{Monomial, SwePoly};
pub use ring::{RElement, RingSpec};
