//! Exact-arithmetic computer algebra for Gröbner bases of submodules of
//! graded free modules over polynomial rings: normal forms and Buchberger's
//! algorithm, cone (Stanley) decompositions with Macaulay constants, Hilbert
//! series and regularity, Fitting ideals and regular sequences,
//! homogenization, and the closed-form degree bounds these ingredients
//! combine into, plus a verification pipeline that checks the bound
//! inequalities against actual reduced Gröbner bases.

pub mod bounds;
pub mod cones;
pub mod error;
pub mod field;
pub mod format;
pub mod groebner;
pub mod hilbert;
pub mod module;
pub mod monomial;
pub mod order;
pub mod poly;
pub mod rng;
pub mod structure;
pub mod verify;

pub use error::Error;
pub use field::{FieldSpec, Scalar};
pub use format::{parse, print, ProblemFile};
pub use module::{FreeModule, FreeModuleSpec, ModuleElement, ModuleMonomial};
pub use monomial::Monomial;
pub use order::{MonomialOrder, PositionStrategy, RingOrder};
