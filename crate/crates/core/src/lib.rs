//! Exact bounds on progression-free subsets of `F_q^n`.
//!
//! * [`coeffs`]: coefficient rows of `(1 + x + ... + x^(q-1))^n`, monomial
//!   counts `m_d`, and the bound `3 m_{(q-1)n/3}`.
//! * [`asymptotics`]: the rate function `C(r, q)`, its minimization, and the
//!   growth inequalities.
//! * [`coeff_oracle`]: root-of-unity coefficient extraction, an independent
//!   floating-point check on the exact rows.
//! * [`ffld`]: prime fields, vectors, point sets, and the progression-free
//!   predicate.
//! * [`polyspace`]: monomial bases, evaluation matrices, rank over `F_p`, and
//!   the dimension inequalities of the polynomial method.
//! * [`search`]: branch-and-bound for maximum progression-free sets, and the
//!   card-game checker.
//!
//! Rate and oracle code is generic over the floating scalar ([`Real`]); the
//! aliases below fix it to `f64`, which is what the rest of the crate and the
//! CLI use.

pub mod asymptotics;
pub mod coeff_oracle;
pub mod coeffs;
pub mod error;
pub mod ffld;
pub(crate) mod json;
pub mod polyspace;
pub mod repro;
pub mod scalar;
pub mod search;

pub use coeffs::{cf_step, coeff_row, eg_bound, m_value, CoeffRow, RationalDegree};
pub use error::{Error, Result};
pub use ffld::{FieldVector, PointSet, PrimeField, ProgressionSpec};
pub use scalar::Real;

/// Default scalar for rate and oracle computations.
pub type Float = f64;
pub type RateReport = asymptotics::RateReport<Float>;
pub type GrowthReport = asymptotics::GrowthReport<Float>;
pub type AppendixReport = asymptotics::AppendixReport<Float>;
pub type CoeffOracleQuery = coeff_oracle::CoeffOracleQuery<Float>;
