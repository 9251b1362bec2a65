//! Exact invariants of plane cusp singularities.
//!
//! Standard bases in `Q{x, y}` under the weighted order, semimodules of
//! differential values computed with Delorme's algorithm, the Bernstein–Sato
//! roots that can be certified from them, and the extended Jacobian ideal.

pub mod bernstein;
pub mod curve;
pub mod differentials;
pub mod error;
pub mod jacobian;
pub mod poly;
pub mod sample;
pub mod semimodule;
pub mod standard_basis;
pub mod valuation;

pub use bernstein::{
    certified_roots_from_semimodule, decide_root, residue, GammaExpr, RootDecision, RootKind, Verdict,
};
pub use curve::{
    newton_puiseux, CurveEquation, CuspidalSets, Form, Parametrization, Semigroup,
};
pub use differentials::{delorme, differential_value, DifferentialBasis, OneForm};
pub use error::{Error, Result};
pub use jacobian::{jacobian_basis_direct, jacobian_basis_via_differentials, tjurina_number, JacobianBasis};
pub use poly::{rat, int, Exponent, Rational, Term, TruncatedPoly, Var, WeightedOrder};
pub use semimodule::{AbstractSemimodule, SemimoduleBasis};
pub use standard_basis::{buchberger, final_reduction, Codimension, FinalReduction, StandardBasis};
pub use valuation::Valuation;
