//! Exact symbolic computation of the cohomology of finite Lie conformal
//! algebras.
//!
//! A finite Lie conformal algebra is a finitely generated free module over the
//! polynomial ring in one formal symbol `∂`, equipped with a polynomial
//! λ-bracket. This crate represents such algebras by explicit bracket tables,
//! checks the defining axioms symbolically, builds the associated basic and
//! reduced cochain complexes with coefficients in one-dimensional modules, and
//! computes cohomology dimensions together with explicit representative
//! cocycles — all over exact rational arithmetic, with no floating point
//! anywhere.
//!
//! The main entry points are:
//!
//! * [`algebra::LieConformalAlgebra`] — bracket tables, axiom checking,
//!   builtin algebras (`vir`, `hv`, `sv`), and a text loader;
//! * [`coeff::CoeffModule`] — trivial one-dimensional coefficients `C_a` and
//!   free rank-one coefficients `M_{α,β}`;
//! * [`cochain`] — cochains, the differential, and the homotopy operators;
//! * [`engine`] — graded/filtered complexes, exact rank computations,
//!   dimension tables, and representative extraction.

pub mod algebra;
pub mod cochain;
pub mod coeff;
pub mod engine;
pub mod linalg;
pub mod poly;
pub mod rational;

use poly::Var;

/// Errors surfaced by parsing, validation, and the cohomology engine.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// A line-oriented input file failed to parse.
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    /// A polynomial expression failed to parse.
    #[error("polynomial syntax error in `{input}`: {msg}")]
    PolySyntax { input: String, msg: String },
    /// A rational literal failed to parse.
    #[error("invalid rational literal `{0}`")]
    BadRational(String),
    /// A generator name was not declared by the algebra.
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    /// A builtin algebra name was not recognized.
    #[error("unknown builtin algebra `{0}` (expected vir, hv, or sv)")]
    UnknownAlgebra(String),
    /// Simultaneous variable renaming would merge two variables.
    #[error("variable renaming is not injective: {0} and {1} both map to {2}")]
    RenameCollision(Var, Var, Var),
    /// An operation required a Virasoro marker that was never designated.
    #[error("algebra `{0}` has no Virasoro generator designated")]
    MissingVirasoro(String),
    /// The designated Virasoro generator does not self-bracket as required.
    #[error("generator `{0}` is marked Virasoro but [{0}_x {0}] != (D + 2*x) {0}")]
    BadVirasoro(String),
    /// The algebra admits no conformal-weight grading over the marker.
    #[error("algebra `{0}` is not graded by conformal weights: {1}")]
    NotGraded(String, String),
    /// Axiom verification failed while loading an algebra.
    #[error("algebra `{0}` fails the Lie conformal axioms: {1}")]
    AxiomsFailed(String, String),
    /// An operator was applied to a cochain of unusable arity.
    #[error("operation requires a cochain of arity at least 1")]
    ArityTooSmall,
    /// The requested coefficient/mode combination is outside the proven scope.
    #[error("{0}")]
    UnsupportedCoefficients(String),
    /// A coefficient specification string failed to parse.
    #[error("invalid coefficient spec `{input}`: {msg}")]
    CoeffSpec { input: String, msg: String },
    /// A cochain value used variables outside its arity.
    #[error("cochain component on {tuple:?} uses variable {var} outside its arity")]
    BadComponentVariable { tuple: Vec<String>, var: Var },
    /// Cochain JSON did not describe a valid cochain.
    #[error("invalid cochain data: {0}")]
    BadCochain(String),
    /// An internal exactness or consistency verification failed.
    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
