//! Exact local-global norm machinery over Q at desk scale: certified p-adic
//! arithmetic, degree <= 4 local factorization, Hilbert symbols and Brauer
//! invariants, local norm groups with cross-validated membership, the global
//! norm-principle decision procedure, and constructive prime-degree cyclic
//! extensions with prescribed local behavior.

pub mod arith;
pub mod error;
pub mod padic;
pub mod local_poly;
pub mod modp;
pub mod padic_poly;
pub mod poly;
pub mod unram;

pub use arith::{legendre_int, legendre_rat, squarefree_part, valuation, Rational};
pub use error::{Error, Result};
pub use padic::{padic_arith, padic_sqrt, square_class, PAdic, SquareClass, DEFAULT_PRECISION};
pub use poly::{discriminant, factor_over_q, parse_poly, resolvent_cubic, QPoly};
