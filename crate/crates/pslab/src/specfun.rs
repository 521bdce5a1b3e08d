//! Special functions and quadrature: `Γ`, `B`, the regularized incomplete
//! beta `I_t(a, b)`, and double-exponential quadrature for integrands with
//! algebraic endpoint singularities.
//!
//! Everything here is `f64`-valued with tolerances documented in
//! [`crate::tolerances`]: the gamma family targets 1e-12 relative accuracy on
//! the ranges the rest of the crate uses, and the tanh-sinh integrator reaches
//! 1e-10 absolute on `x^γ`-singular integrands (γ > −1) by handing the
//! integrand exact *distances to the endpoints* rather than only the node
//! position — near a non-zero endpoint the position alone cannot resolve the
//! singular mass (one ulp of `1.0` already hides ~1e-6 of the mass of
//! `(1−x)^{-0.6}`).

use thiserror::Error;

/// Errors for the special-function layer.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum SpecFunError {
    /// Argument outside the mathematical domain of the function.
    #[error("domain error: {0}")]
    DomainError(String),
    /// Iteration failed to reach the requested accuracy.
    #[error("no convergence after {0} refinement levels")]
    NoConvergence(u32),
}

/// Result of an adaptive quadrature: the value, a conservative error
/// estimate (the last inter-level difference), and the number of integrand
/// evaluations spent.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureResult {
    /// The computed integral.
    pub value: f64,
    /// Conservative absolute error estimate.
    pub error_estimate: f64,
    /// Number of integrand evaluations.
    pub evaluations: u64,
}

/// A quadrature node: the abscissa together with its exactly-computed
/// distances to the two interval endpoints. Integrands with endpoint
/// singularities should use the distances (e.g. `(dist_a * dist_b).powf(g)`)
/// — they stay accurate far below one ulp of the endpoint positions.
#[derive(Debug, Clone, Copy)]
pub struct QuadNode {
    /// Node position `x ∈ (a, b)` (best f64 representation).
    pub x: f64,
    /// Exact distance `x − a`.
    pub dist_a: f64,
    /// Exact distance `b − x`.
    pub dist_b: f64,
}

/// Lanczos coefficients, `g = 7`, 9 terms: relative error below ~1e-13 across
/// the positive axis once paired with the reflection formula.
const LANCZOS_G: f64 = 7.0;
// Published g = 7, n = 9 coefficient set, transcribed verbatim (the extra
// digits beyond f64 round to the intended values and document the source).
#[allow(clippy::excessive_precision)]
const LANCZOS_COEFFS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// The gamma function `Γ(x)` for `x > 0`, via the Lanczos approximation with
/// reflection below 1/2. Relative error ≤ ~1e-13 on `[0.1, 50]`.
pub fn gamma(x: f64) -> Result<f64, SpecFunError> {
    if !x.is_finite() || x <= 0.0 {
        return Err(SpecFunError::DomainError(format!("gamma requires x > 0, got {x}")));
    }
    Ok(gamma_unchecked(x))
}

fn gamma_unchecked(x: f64) -> f64 {
    if x < 0.5 {
        // Reflection: Γ(x) = π / (sin(πx) · Γ(1−x)).
        std::f64::consts::PI / ((std::f64::consts::PI * x).sin() * gamma_unchecked(1.0 - x))
    } else {
        let z = x - 1.0;
        let mut acc = LANCZOS_COEFFS[0];
        for (i, &c) in LANCZOS_COEFFS.iter().enumerate().skip(1) {
            acc += c / (z + i as f64);
        }
        let t = z + LANCZOS_G + 0.5;
        (2.0 * std::f64::consts::PI).sqrt() * t.powf(z + 0.5) * (-t).exp() * acc
    }
}

/// The beta function `B(a, b) = Γ(a)Γ(b)/Γ(a+b)` for `a, b > 0`.
pub fn beta(a: f64, b: f64) -> Result<f64, SpecFunError> {
    if !(a.is_finite() && b.is_finite()) || a <= 0.0 || b <= 0.0 {
        return Err(SpecFunError::DomainError(format!(
            "beta requires a, b > 0, got ({a}, {b})"
        )));
    }
    Ok(gamma_unchecked(a) * gamma_unchecked(b) / gamma_unchecked(a + b))
}

/// Iteration cap for the incomplete-beta continued fraction.
const INC_BETA_MAX_ITER: u32 = 200;

/// The regularized incomplete beta function `I_t(a, b)` for `t ∈ [0, 1]`,
/// `a, b > 0`, by the modified-Lentz continued fraction, switching to the
/// symmetry identity `I_t(a,b) = 1 − I_{1−t}(b,a)` where the fraction
/// converges fastest (`t > (a+1)/(a+b+2)`). Absolute error ≤ ~1e-14.
pub fn reg_inc_beta(t: f64, a: f64, b: f64) -> Result<f64, SpecFunError> {
    if !(a.is_finite() && b.is_finite()) || a <= 0.0 || b <= 0.0 {
        return Err(SpecFunError::DomainError(format!(
            "reg_inc_beta requires a, b > 0, got ({a}, {b})"
        )));
    }
    if !(0.0..=1.0).contains(&t) {
        return Err(SpecFunError::DomainError(format!(
            "reg_inc_beta requires t ∈ [0, 1], got {t}"
        )));
    }
    if t == 0.0 || t == 1.0 {
        return Ok(t);
    }
    if t > (a + 1.0) / (a + b + 2.0) {
        return Ok(1.0 - inc_beta_cf(1.0 - t, b, a)?);
    }
    inc_beta_cf(t, a, b)
}

/// Continued-fraction evaluation of `I_t(a, b)` in its fast-converging
/// region `t ≤ (a+1)/(a+b+2)`.
fn inc_beta_cf(t: f64, a: f64, b: f64) -> Result<f64, SpecFunError> {
    const TINY: f64 = 1e-30;
    const EPS: f64 = 1e-16;

    // Prefactor t^a (1−t)^b / (a · B(a, b)), in logs for stability.
    let ln_beta =
        gamma_unchecked(a).ln() + gamma_unchecked(b).ln() - gamma_unchecked(a + b).ln();
    let prefactor = (a * t.ln() + b * (1.0 - t).ln() - ln_beta).exp() / a;

    let qab = a + b;
    let qap = a + 1.0;
    let qam = a - 1.0;
    let mut c = 1.0;
    let mut d = 1.0 - qab * t / qap;
    if d.abs() < TINY {
        d = TINY;
    }
    d = 1.0 / d;
    let mut h = d;
    for m in 1..=INC_BETA_MAX_ITER {
        let m = f64::from(m);
        let m2 = 2.0 * m;
        // Even step.
        let aa = m * (b - m) * t / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if d.abs() < TINY {
            d = TINY;
        }
        c = 1.0 + aa / c;
        if c.abs() < TINY {
            c = TINY;
        }
        d = 1.0 / d;
        h *= d * c;
        // Odd step.
        let aa = -(a + m) * (qab + m) * t / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if d.abs() < TINY {
            d = TINY;
        }
        c = 1.0 + aa / c;
        if c.abs() < TINY {
            c = TINY;
        }
        d = 1.0 / d;
        let del = d * c;
        h *= del;
        if (del - 1.0).abs() < EPS {
            return Ok(prefactor * h);
        }
    }
    Err(SpecFunError::NoConvergence(INC_BETA_MAX_ITER))
}

/// Maximum tanh-sinh refinement level (level `m` uses step `h = 2^{-m}`).
const TANH_SINH_MAX_LEVEL: u32 = 12;
/// Truncation of the node range: beyond `|t| = 6.2` every weight underflows.
const TANH_SINH_T_MAX: f64 = 6.2;
/// Nodes closer to an endpoint than this are dropped; for `x^γ` singularities
/// with γ bounded away from −1 the discarded mass is far below 1e-100.
/// (Accuracy necessarily degrades as γ → −1: mass below this scale is
/// unreachable in double precision.)
const TANH_SINH_MIN_DIST: f64 = 1e-280;

/// Integrates `f` over `[a, b]` to absolute-or-relative tolerance `tol` with
/// the tanh-sinh (double-exponential) rule; admissible integrands are
/// integrable with at worst algebraic endpoint singularities `x^γ`, `γ > −1`.
///
/// This is the plain-callback form: the integrand sees only the node
/// position. Full accuracy at a *non-zero* singular endpoint needs the
/// distance-aware form [`integrate_singular_nodes`].
pub fn integrate_singular<F>(f: F, a: f64, b: f64, tol: f64) -> Result<QuadratureResult, SpecFunError>
where
    F: Fn(f64) -> f64,
{
    integrate_singular_nodes(|node| f(node.x), a, b, tol)
}

/// Distance-aware tanh-sinh quadrature: the integrand receives each node
/// with its exact distances to both endpoints (see [`QuadNode`]), so
/// `(dist_a·dist_b)^γ`-type singular factors can be evaluated to full
/// precision arbitrarily close to either endpoint.
pub fn integrate_singular_nodes<F>(
    f: F,
    a: f64,
    b: f64,
    tol: f64,
) -> Result<QuadratureResult, SpecFunError>
where
    F: Fn(QuadNode) -> f64,
{
    if !(a.is_finite() && b.is_finite()) || a >= b {
        return Err(SpecFunError::DomainError(format!(
            "integration interval must be finite with a < b, got [{a}, {b}]"
        )));
    }
    if !(tol.is_finite() && tol > 0.0) {
        return Err(SpecFunError::DomainError(format!("tolerance must be positive, got {tol}")));
    }

    let half_width = 0.5 * (b - a);
    let mut evaluations: u64 = 0;

    // Contribution of the node at abscissa parameter t (both signs handled by
    // the caller passing ±t); the level's step factor h is applied outside.
    let mut node_term = |t: f64| -> f64 {
        let u = std::f64::consts::FRAC_PI_2 * t.sinh();
        let e = (-2.0 * u.abs()).exp();
        if e == 0.0 {
            return 0.0; // weight underflows; node indistinguishable from endpoint
        }
        let denom = 1.0 + e;
        let near = (b - a) * e / denom; // distance to the nearer endpoint
        let far = (b - a) / denom; // distance to the farther endpoint
        if near < TANH_SINH_MIN_DIST {
            return 0.0;
        }
        let (x, dist_a, dist_b) = if u >= 0.0 {
            (b - near, far, near)
        } else {
            (a + near, near, far)
        };
        // w(t) = (π/2)·cosh(t)·sech²(u), times the interval half-width.
        let weight = t.cosh() * std::f64::consts::FRAC_PI_2 * (4.0 * e / (denom * denom))
            * half_width;
        if weight == 0.0 {
            return 0.0;
        }
        evaluations += 1;
        weight * f(QuadNode { x, dist_a, dist_b })
    };

    // Level 0: step h = 1, all integer nodes.
    let mut h = 1.0;
    let mut sum = node_term(0.0);
    let mut k = 1.0;
    while k * h <= TANH_SINH_T_MAX {
        sum += node_term(k * h) + node_term(-k * h);
        k += 1.0;
    }
    let mut value = h * sum;

    for level in 1..=TANH_SINH_MAX_LEVEL {
        h *= 0.5;
        // New nodes are the odd multiples of the refined step.
        let mut new_sum = 0.0;
        let mut k = 1.0;
        while k * h <= TANH_SINH_T_MAX {
            new_sum += node_term(k * h) + node_term(-k * h);
            k += 2.0;
        }
        let refined = 0.5 * value + h * new_sum;
        let diff = (refined - value).abs();
        value = refined;
        // First refinement is too coarse to trust a difference estimate.
        if level >= 2 && diff <= tol * value.abs().max(1.0) {
            if !value.is_finite() {
                return Err(SpecFunError::NoConvergence(level));
            }
            return Ok(QuadratureResult { value, error_estimate: diff, evaluations });
        }
    }
    Err(SpecFunError::NoConvergence(TANH_SINH_MAX_LEVEL))
}
