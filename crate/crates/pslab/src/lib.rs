//! Exact computational toolkit for floor-power ("Piatetski-Shapiro") sequences
//! `PS(α) = {⌊n^α⌋ : n ∈ ℕ}` and their additive representation counts.
//!
//! The crate answers questions of the shape *"in how many ways is an integer a
//! sum of two members of floor-power sequences, and how does that count grow?"*
//! with exact integer arithmetic on the counting side and carefully bounded
//! floating-point on the analytic side:
//!
//! - [`exactfloor`] — the arithmetic bedrock: exponents are exact rationals
//!   `α = p/q`, `⌊n^α⌋` is computed by certified big-integer root extraction,
//!   and `PS(α)`-membership is an integer comparison, never a float decision.
//! - [`counting`] — `R_{α1,α2}(N)`, the three-variable counts `𝒩^{(1,2)}`,
//!   `𝒩^{(3)}`, `𝒩^{AP}`, and brute-force oracles they are tested against.
//! - [`specfun`] — Γ, B, the regularized incomplete beta `I_t(a,b)`, and
//!   double-exponential quadrature for endpoint-singular integrands.
//! - [`asymptotics`] — every closed-form constant and conjectured limit the
//!   counts are compared to, plus independent 2-D Riemann-sum oracles for the
//!   singular integrals behind them.
//! - [`expsum`] — exponential sums `Σ e(f(n))` over the phase families that
//!   govern the counts' error terms, with first/second/third-derivative and
//!   exponent-pair bound checkers, a two-dimensional counting-error probe, and
//!   a star-discrepancy estimate.
//! - [`params`] — feasibility witnesses `(β1, β2, γ̂0)` for the inequality
//!   systems used by the error analysis, with per-inequality slacks.
//! - [`witness`] — constructive search for a representation
//!   `N = ⌊n1^{α1}⌋ + ⌊n2^{α2}⌋` (fast sufficient-condition scan with exact
//!   certification, exhaustive fallback).
//! - [`tolerances`] — every numeric tolerance used by tests, in one place,
//!   each with its rationale.
//!
//! # Exactness contract
//!
//! Counts are integers and are computed exactly: the only floating-point in
//! the counting path is a *filter* (a double-precision estimate of `n^α` that
//! is always confirmed by a big-integer comparison before it can influence a
//! result). Analytic values (constants, integrals, bounds) are `f64` with
//! documented tolerances.

pub mod asymptotics;
pub mod counting;
pub mod exactfloor;
pub mod expsum;
pub mod params;
pub mod specfun;
pub mod tolerances;
pub mod witness;

pub use exactfloor::RationalExponent;
