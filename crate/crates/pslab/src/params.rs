//! Feasibility witnesses for the exponent-pair parameter region: verifies
//! the four-inequality hypothesis system, constructs interval midpoints for
//! the auxiliary parameters `β1, β2`, and then a `γ̂0` satisfying a ten-way
//! affine constraint system — reporting every inequality as a signed slack.
//!
//! Slacks are returned as signed values rather than booleans: callers assert
//! `> 0` with no tolerance, and sampling stays a safe margin inside the open
//! region so floating-point noise cannot flip a sign.

// Feasibility checks are written `!(a < b)` on purpose: a NaN comparison is
// false, so the negated form routes NaN into the rejection branch, where the
// "simplified" `a >= b` would silently accept it.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

use thiserror::Error;

/// Errors from witness construction.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum ParamsError {
    /// Inputs outside the hypothesis region `x ∈ (1/2,1)², x1+x2 > 3/2`.
    #[error("domain error: {0}")]
    DomainError(String),
    /// A feasibility interval came out empty. The underlying lemmas prove
    /// this cannot happen on the valid region, so this is surfaced as a
    /// loud implementation-bug signal, never swallowed.
    #[error("empty feasibility interval: {0}")]
    EmptyInterval(String),
}

fn check_region(x1: f64, x2: f64) -> Result<(), ParamsError> {
    let open_unit_half = |x: f64| x > 0.5 && x < 1.0;
    if !(open_unit_half(x1) && open_unit_half(x2) && x1 + x2 > 1.5) {
        return Err(ParamsError::DomainError(format!(
            "need x1, x2 ∈ (1/2, 1) with x1 + x2 > 3/2, got ({x1}, {x2})"
        )));
    }
    Ok(())
}

/// Signed slacks of the four hypothesis inequalities at `(x1, x2)`
/// (positive = satisfied), with `s = 2 − x1 − x2`:
///
/// 1. `x1 + 2(x2−1)s > 0`
/// 2. `x2 + 2(x1−1)s > 0`
/// 3. `x1 − (2−x2)s > 0`
/// 4. `x2 − (2−x1)s > 0`
pub fn verify_lemma01(x1: f64, x2: f64) -> Result<[f64; 4], ParamsError> {
    check_region(x1, x2)?;
    let s = 2.0 - x1 - x2;
    Ok([
        x1 + 2.0 * (x2 - 1.0) * s,
        x2 + 2.0 * (x1 - 1.0) * s,
        x1 - (2.0 - x2) * s,
        x2 - (2.0 - x1) * s,
    ])
}

/// The `β` feasibility intervals and their midpoints.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FeasibleBetas {
    /// Midpoint of the first interval.
    pub beta1: f64,
    /// Midpoint of the second interval.
    pub beta2: f64,
    /// `(lower, upper)` envelope of the first interval.
    pub interval1: (f64, f64),
    /// `(lower, upper)` envelope of the second interval.
    pub interval2: (f64, f64),
}

/// Envelope of one β interval: with `s = 2 − x1 − x2`, `Xi = (1−xi)/s`,
/// the constraint system for `β1` is
/// `max{0, 2(1−x2) − 1/s + 2X1} < β1 < min{X1, 2(1−x2), 1/s − 2}`
/// (and symmetrically for `β2` with the roles swapped).
fn beta_envelope(x_own: f64, x_other: f64, s: f64) -> (f64, f64) {
    let x_cap_own = (1.0 - x_own) / s;
    let lower = 0f64.max(2.0 * (1.0 - x_other) - 1.0 / s + 2.0 * x_cap_own);
    let upper = x_cap_own.min(2.0 * (1.0 - x_other)).min(1.0 / s - 2.0);
    (lower, upper)
}

/// Constructs `(β1, β2)` as the midpoints of their feasibility intervals.
///
/// Also asserts the cross constraints
/// `βi < min{1/2 + (1/2)/s − X_{3−i}, 1/(3 − x_{3−i})}` the downstream
/// system needs; the lemmas guarantee nonemptiness, so any violation is
/// reported as [`ParamsError::EmptyInterval`].
pub fn feasible_betas(x1: f64, x2: f64) -> Result<FeasibleBetas, ParamsError> {
    check_region(x1, x2)?;
    let s = 2.0 - x1 - x2;
    let interval1 = beta_envelope(x1, x2, s);
    let interval2 = beta_envelope(x2, x1, s);
    for (label, (lo, hi)) in [("beta1", interval1), ("beta2", interval2)] {
        if !(lo < hi) {
            return Err(ParamsError::EmptyInterval(format!(
                "{label} envelope [{lo}, {hi}] at ({x1}, {x2})"
            )));
        }
    }
    let beta1 = 0.5 * (interval1.0 + interval1.1);
    let beta2 = 0.5 * (interval2.0 + interval2.1);
    // Cross constraints: βi < min{1/2 + (1/2)/s − X_{3−i}, 1/(3−x_{3−i})}.
    let x_cap = |x: f64| (1.0 - x) / s;
    for (label, b, x_opp) in [("beta1", beta1, x2), ("beta2", beta2, x1)] {
        let bound = (0.5 + 0.5 / s - x_cap(x_opp)).min(1.0 / (3.0 - x_opp));
        if !(b < bound) {
            return Err(ParamsError::EmptyInterval(format!(
                "{label} midpoint {b} breaks cross constraint {bound} at ({x1}, {x2})"
            )));
        }
    }
    Ok(FeasibleBetas { beta1, beta2, interval1, interval2 })
}

/// The ten affine constraints on `γ̂0`, as `(c, d, r)` meaning
/// `c·γ̂0 + d < r`. Order matters: slack indices are 1-based in reports.
fn gamma_constraints(x1: f64, x2: f64, beta1: f64, beta2: f64) -> [(f64, f64, f64); 10] {
    let t = x1 + x2 - 1.0;
    [
        (beta1, 0.0, 1.0 - x1),
        (-(beta1 / 2.0 + x2 - 1.0), x2 - 0.5, t),
        (beta1 / 2.0, 0.5, t),
        (beta1 - 0.5, x1 - 0.5, t),
        (beta1 + 1.0 - x2, x2 - 1.0, t),
        (beta2, 0.0, 1.0 - x2),
        (-(beta2 / 2.0 + x1 - 1.0), x1 - 0.5, t),
        (beta2 / 2.0, 0.5, t),
        (beta2 - 0.5, x2 - 0.5, t),
        (beta2 + 1.0 - x1, x1 - 1.0, t),
    ]
}

/// A constructed `γ̂0` with its ten signed slacks.
#[derive(Debug, Clone, PartialEq)]
pub struct GammaWitness {
    /// Midpoint of `(2 − x1 − x2, γ*)`.
    pub gamma_hat0: f64,
    /// Signed slack of each of the ten inequalities at `gamma_hat0`.
    pub slacks: [f64; 10],
}

/// Constructs `γ̂0` for given `(x1, x2, β1, β2)`.
///
/// Each constraint is affine in `γ̂0`; positive-coefficient constraints give
/// upper roots whose minimum, clipped to 1, is the supremum `γ*`. The
/// returned value is the midpoint of `(2 − x1 − x2, γ*)`, and all ten slacks
/// there must come out positive — an empty interval or a nonpositive slack
/// contradicts the feasibility lemma and is surfaced as an error.
pub fn feasible_gamma0(
    x1: f64,
    x2: f64,
    beta1: f64,
    beta2: f64,
) -> Result<GammaWitness, ParamsError> {
    check_region(x1, x2)?;
    let s = 2.0 - x1 - x2;
    let constraints = gamma_constraints(x1, x2, beta1, beta2);
    let mut gamma_star = 1.0f64;
    for (i, &(c, d, r)) in constraints.iter().enumerate() {
        if c > 0.0 {
            gamma_star = gamma_star.min((r - d) / c);
        } else if c == 0.0 && d >= r {
            return Err(ParamsError::EmptyInterval(format!(
                "constraint {} holds for no γ̂0 at ({x1}, {x2})",
                i + 1
            )));
        }
    }
    if !(gamma_star > s) {
        return Err(ParamsError::EmptyInterval(format!(
            "γ̂0 interval ({s}, {gamma_star}) empty at ({x1}, {x2})"
        )));
    }
    let gamma_hat0 = 0.5 * (s + gamma_star);
    let mut slacks = [0.0f64; 10];
    for (i, &(c, d, r)) in constraints.iter().enumerate() {
        slacks[i] = r - (c * gamma_hat0 + d);
        if !(slacks[i] > 0.0) {
            return Err(ParamsError::EmptyInterval(format!(
                "slack {} nonpositive ({}) at γ̂0 = {gamma_hat0}, ({x1}, {x2})",
                i + 1,
                slacks[i]
            )));
        }
    }
    Ok(GammaWitness { gamma_hat0, slacks })
}

/// A complete parameter witness: the inputs, the normalized complements
/// `Xi = (1−xi)/(2−x1−x2)` (which sum to 1), the β midpoints, `γ̂0`, and
/// every inequality slack by name.
#[derive(Debug, Clone, PartialEq)]
pub struct ParamWitness {
    pub x1: f64,
    pub x2: f64,
    pub x_cap1: f64,
    pub x_cap2: f64,
    pub beta1: f64,
    pub beta2: f64,
    pub gamma_hat0: f64,
    /// `(name, signed slack)` for all 4 + 10 inequalities.
    pub slacks: Vec<(&'static str, f64)>,
}

/// Runs the full pipeline (hypothesis check → β midpoints → γ̂0) and bundles
/// the results.
pub fn build_witness(x1: f64, x2: f64) -> Result<ParamWitness, ParamsError> {
    const HYPOTHESIS_NAMES: [&str; 4] =
        ["hypothesis-1", "hypothesis-2", "hypothesis-3", "hypothesis-4"];
    const GAMMA_NAMES: [&str; 10] = [
        "gamma0-1", "gamma0-2", "gamma0-3", "gamma0-4", "gamma0-5", "gamma0-6", "gamma0-7",
        "gamma0-8", "gamma0-9", "gamma0-10",
    ];
    let hyp = verify_lemma01(x1, x2)?;
    let betas = feasible_betas(x1, x2)?;
    let gamma = feasible_gamma0(x1, x2, betas.beta1, betas.beta2)?;
    let s = 2.0 - x1 - x2;
    let mut slacks = Vec::with_capacity(14);
    slacks.extend(HYPOTHESIS_NAMES.iter().zip(hyp).map(|(&n, v)| (n, v)));
    slacks.extend(GAMMA_NAMES.iter().zip(gamma.slacks).map(|(&n, v)| (n, v)));
    Ok(ParamWitness {
        x1,
        x2,
        x_cap1: (1.0 - x1) / s,
        x_cap2: (1.0 - x2) / s,
        beta1: betas.beta1,
        beta2: betas.beta2,
        gamma_hat0: gamma.gamma_hat0,
        slacks,
    })
}
