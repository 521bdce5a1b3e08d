//! Exact evaluation of `⌊n^{p/q}⌋`, floor-power sequence membership, and the
//! gap function `φ_α` — the arithmetic bedrock every other module uses.
//!
//! Exponents are exact rationals `α = p/q > 1` parsed from decimal strings, so
//! every floor and every membership verdict reduces to an integer comparison
//! (`y^q ≤ n^p`, `n0^p < (k+1)^q`, …) that is decided with big-integer
//! arithmetic. Double precision appears in two roles only:
//!
//! - as a *seed/filter* that is always confirmed by an exact comparison before
//!   it can influence a result (fast path of [`floor_pow`], [`is_ps_member`]);
//! - as the value domain of the explicitly float-valued diagnostics
//!   ([`phi`], [`frac`], [`dist_to_nearest_int`]), which are never used to
//!   decide a count.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::ToPrimitive;
use thiserror::Error;

/// How far a double-precision power estimate must sit from the nearest
/// integer before the fast path is allowed to propose a floor (which is then
/// still certified exactly). Estimates closer than this go straight to the
/// big-integer route.
const FAST_PATH_INTEGER_MARGIN: f64 = 1e-6;

/// Largest magnitude for which `f64` still resolves neighboring integers
/// (2^52); beyond this the fast path is pointless.
const FAST_PATH_MAX: f64 = 4.503_599_627_370_496e15;

/// Errors from [`parse_alpha`] / [`RationalExponent::new`].
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseAlphaError {
    /// The input is not a plain finite decimal (`"1.23"`, `"2"`).
    #[error("malformed decimal exponent: {0:?}")]
    MalformedDecimal(String),
    /// The decimal parsed fine but its value is ≤ 1.
    #[error("exponent must be > 1, got {0:?}")]
    AlphaNotGreaterThanOne(String),
    /// The reduced numerator or denominator does not fit in 32 bits.
    #[error("reduced exponent {0} does not fit in 32-bit numerator/denominator")]
    ExponentTooLarge(String),
}

/// An exact exponent `α = p/q` with `gcd(p,q) = 1` and `p > q ≥ 1`, so that
/// `α > 1` always holds and `n^α` has the exact meaning `(n^p)^{1/q}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RationalExponent {
    p: u32,
    q: u32,
}

impl RationalExponent {
    /// Builds `p/q` after reducing by the gcd; rejects values ≤ 1 and
    /// numerators/denominators that do not fit in 32 bits after reduction.
    pub fn new(p: u64, q: u64) -> Result<Self, ParseAlphaError> {
        assert!(q >= 1, "denominator must be positive");
        let g = p.gcd(&q);
        let (p, q) = (p / g, q / g);
        if p <= q {
            return Err(ParseAlphaError::AlphaNotGreaterThanOne(format!("{p}/{q}")));
        }
        match (u32::try_from(p), u32::try_from(q)) {
            (Ok(p), Ok(q)) => Ok(Self { p, q }),
            _ => Err(ParseAlphaError::ExponentTooLarge(format!("{p}/{q}"))),
        }
    }

    /// Numerator of the reduced exponent.
    pub fn p(&self) -> u32 {
        self.p
    }

    /// Denominator of the reduced exponent.
    pub fn q(&self) -> u32 {
        self.q
    }

    /// `α` as a double (for diagnostics and analytic formulas only).
    pub fn as_f64(&self) -> f64 {
        f64::from(self.p) / f64::from(self.q)
    }

    /// `1/α` as a double.
    pub fn inv_as_f64(&self) -> f64 {
        f64::from(self.q) / f64::from(self.p)
    }
}

impl fmt::Display for RationalExponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.p, self.q)
    }
}

impl FromStr for RationalExponent {
    type Err = ParseAlphaError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_alpha(s)
    }
}

/// Parses a finite decimal string like `"1.23"` into the exact reduced
/// rational `123/100`. Plain integers (`"2"`) are accepted with `q = 1`.
pub fn parse_alpha(text: &str) -> Result<RationalExponent, ParseAlphaError> {
    let malformed = || ParseAlphaError::MalformedDecimal(text.to_owned());
    let (int_part, frac_part) = match text.split_once('.') {
        Some((i, f)) => (i, f),
        None => (text, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(malformed());
    }
    if text.contains('.') && frac_part.is_empty() {
        return Err(malformed());
    }
    let all_digits = |s: &str| !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit());
    if !all_digits(int_part) || !(frac_part.is_empty() || all_digits(frac_part)) {
        return Err(malformed());
    }
    // p0/q0 = (digits as integer) / 10^(# fractional digits), built in u128.
    if int_part.len() + frac_part.len() > 30 {
        return Err(ParseAlphaError::ExponentTooLarge(text.to_owned()));
    }
    let mut p0: u128 = 0;
    for b in int_part.bytes().chain(frac_part.bytes()) {
        p0 = p0 * 10 + u128::from(b - b'0');
    }
    let q0: u128 = 10u128.pow(frac_part.len() as u32);
    let g = p0.gcd(&q0);
    let (p, q) = (p0 / g, q0 / g);
    if p <= q {
        return Err(ParseAlphaError::AlphaNotGreaterThanOne(text.to_owned()));
    }
    match (u32::try_from(p), u32::try_from(q)) {
        (Ok(p), Ok(q)) => Ok(RationalExponent { p, q }),
        _ => Err(ParseAlphaError::ExponentTooLarge(text.to_owned())),
    }
}

/// Membership verdict for an integer `k` in `PS(α) = {⌊n^α⌋ : n ∈ ℕ}`,
/// carrying the witness `n` with `⌊n^α⌋ = k` when one exists.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PsMembership {
    /// The integer whose membership was tested.
    pub k: u64,
    /// Whether `k ∈ PS(α)`.
    pub member: bool,
    /// The unique `n` with `⌊n^α⌋ = k`, present iff `member`.
    pub witness: Option<u64>,
}

/// Error for the capped big-integer variant of [`floor_pow_big`].
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FloorPowError {
    /// The configured bit-size cap would be exceeded by `n^p`.
    #[error("intermediate n^p needs {needed} bits, exceeding the configured cap of {cap}")]
    SizeCapExceeded {
        /// Bits required by the intermediate power.
        needed: u64,
        /// The configured cap.
        cap: u64,
    },
}

/// The unique `y ≥ 0` with `y^r ≤ x < (y+1)^r`, by integer Newton iteration
/// seeded from a floating estimate and finished with exact certification.
///
/// The iteration `y ← ((r−1)·y + x/y^{r−1}) / r` starting from any
/// over-estimate decreases monotonically to the integer root; the final
/// adjustment loops restore the two-sided certificate exactly.
///
/// # Panics
/// If `r = 0`.
pub fn nth_root_floor(x: &BigUint, r: u32) -> BigUint {
    assert!(r >= 1, "root order must be ≥ 1");
    if r == 1 || x.bits() <= 1 {
        // x ∈ {0, 1} is its own r-th root.
        return x.clone();
    }
    if u64::from(r) >= x.bits() {
        // 2^bits > x and r ≥ bits ⟹ 2^r > x ⟹ root is 1.
        return BigUint::from(1u32);
    }

    let mut y = root_seed(x, r);
    loop {
        // y_next = ((r-1)·y + x / y^{r-1}) / r, in integers.
        let y_next = (&y * (r - 1) + x / y.pow(r - 1)) / r;
        if y_next >= y {
            break;
        }
        y = y_next;
    }
    // Certification: walk to the exact floor (at most a couple of steps).
    while y.pow(r) > *x {
        y -= 1u32;
    }
    while (&y + 1u32).pow(r) <= *x {
        y += 1u32;
    }
    y
}

/// An over-estimate of `x^{1/r}`: from a 53-bit mantissa when the logarithm
/// is trustworthy, else the power of two `2^⌈bits/r⌉ > x^{1/r}`.
fn root_seed(x: &BigUint, r: u32) -> BigUint {
    let bits = x.bits();
    // log2(x) from the top 53 bits: x ≈ m·2^s with 2^52 ≤ m < 2^53.
    let s = bits.saturating_sub(53);
    let m = (x >> s).to_f64().expect("53-bit mantissa fits f64");
    let log2_x = m.log2() + s as f64;
    let e = log2_x / f64::from(r);
    if e < 900.0 {
        // Inflate by 1 ulp-scale margin so the seed is definitely ≥ the root.
        let approx = (e.exp2() * (1.0 + 1e-9)).ceil() + 1.0;
        big_from_f64(approx)
    } else {
        BigUint::from(1u32) << (bits.div_ceil(u64::from(r)) as usize)
    }
}

/// Converts a positive finite `f64` (integral value) to a `BigUint`.
fn big_from_f64(v: f64) -> BigUint {
    debug_assert!(v.is_finite() && v >= 1.0);
    let (mantissa, exponent) = {
        let bits = v.to_bits();
        let exp = ((bits >> 52) & 0x7ff) as i64 - 1075;
        let man = (bits & ((1u64 << 52) - 1)) | (1u64 << 52);
        (man, exp)
    };
    let m = BigUint::from(mantissa);
    if exponent >= 0 {
        m << (exponent as usize)
    } else {
        m >> ((-exponent) as usize)
    }
}

/// Exact comparison of `a^ea` versus `b^eb` without materializing the powers
/// unless needed: a bit-length screen first, then `u128`, then big integers.
fn cmp_pow(a: u64, ea: u32, b: u64, eb: u32) -> Ordering {
    match (a, b) {
        (0, 0) => return Ordering::Equal,
        (0, _) => return Ordering::Less,
        (_, 0) => return Ordering::Greater,
        _ => {}
    }
    // a^ea has between (bits(a)-1)·ea + 1 and bits(a)·ea bits; disjoint ranges decide.
    let (la, ha) = pow_bit_range(a, ea);
    let (lb, hb) = pow_bit_range(b, eb);
    if ha < lb {
        return Ordering::Less;
    }
    if hb < la {
        return Ordering::Greater;
    }
    if let (Some(pa), Some(pb)) = (checked_pow_u128(a, ea), checked_pow_u128(b, eb)) {
        return pa.cmp(&pb);
    }
    BigUint::from(a).pow(ea).cmp(&BigUint::from(b).pow(eb))
}

/// Inclusive bit-length bounds of `a^e` for `a ≥ 1`, `e ≥ 1`.
fn pow_bit_range(a: u64, e: u32) -> (u64, u64) {
    let bits = u64::from(64 - a.leading_zeros());
    let e = u64::from(e);
    ((bits - 1) * e + 1, bits * e)
}

fn checked_pow_u128(base: u64, exp: u32) -> Option<u128> {
    u128::from(base).checked_pow(exp)
}

/// `⌊n^α⌋` computed exactly as `nth_root_floor(n^p, q)`, with a certified
/// double-precision fast path.
///
/// The fast path evaluates `n^α` in `f64`; when that estimate is at least
/// [`FAST_PATH_INTEGER_MARGIN`] away from an integer, its floor `y` is
/// *proposed* and then certified by the exact comparisons `y^q ≤ n^p` and
/// `n^p < (y+1)^q`; on any doubt the big-integer route decides.
///
/// # Panics
/// If `n = 0`, or if the exact result does not fit `u64` (callers in this
/// crate stay far below; use [`floor_pow_big`] for the general form).
pub fn floor_pow(n: u64, alpha: RationalExponent) -> u64 {
    assert!(n >= 1, "base must be positive");
    let (p, q) = (alpha.p, alpha.q);
    if let Some(y) = floor_pow_fast(n, p, q) {
        return y;
    }
    let exact = nth_root_floor(&BigUint::from(n).pow(p), q);
    exact.to_u64().expect("floor_pow result exceeds u64; use floor_pow_big")
}

/// Fast path of [`floor_pow`]: propose a floor from `f64` and certify it
/// exactly; `None` means "fall back to the big-integer route".
fn floor_pow_fast(n: u64, p: u32, q: u32) -> Option<u64> {
    let t = (n as f64).powf(f64::from(p) / f64::from(q));
    if !t.is_finite() || t >= FAST_PATH_MAX {
        return None;
    }
    if (t - t.round()).abs() <= FAST_PATH_INTEGER_MARGIN {
        return None;
    }
    let y = t.floor() as u64;
    // Certify y^q ≤ n^p < (y+1)^q.
    if cmp_pow(y, q, n, p) != Ordering::Greater && cmp_pow(y + 1, q, n, p) == Ordering::Greater {
        Some(y)
    } else {
        None
    }
}

/// `⌊n^α⌋` for arbitrarily large `n`, with an optional cap on the bit size of
/// the intermediate `n^p` (the cap is a guard knob; `None` means unbounded).
pub fn floor_pow_big(
    n: &BigUint,
    alpha: RationalExponent,
    bit_cap: Option<u64>,
) -> Result<BigUint, FloorPowError> {
    assert!(!n.is_zero_ext(), "base must be positive");
    let needed = n.bits().saturating_mul(u64::from(alpha.p));
    if let Some(cap) = bit_cap {
        if needed > cap {
            return Err(FloorPowError::SizeCapExceeded { needed, cap });
        }
    }
    Ok(nth_root_floor(&n.pow(alpha.p), alpha.q))
}

/// Small extension trait so the zero test above reads at the call site.
trait IsZeroExt {
    fn is_zero_ext(&self) -> bool;
}

impl IsZeroExt for BigUint {
    fn is_zero_ext(&self) -> bool {
        self.bits() == 0
    }
}

/// Exact membership test `k ∈ PS(α)` with witness.
///
/// `k ∈ PS(α)` iff some `n` has `n^α ∈ [k, k+1)`, i.e. iff the smallest `n0`
/// with `n0^p ≥ k^q` also satisfies `n0^p < (k+1)^q`; that `n0` is the witness.
pub fn is_ps_member(k: u64, alpha: RationalExponent) -> PsMembership {
    assert!(k >= 1, "membership is defined for positive integers");
    let (p, q) = (alpha.p, alpha.q);
    // Seed: n0 ≈ k^{1/α}; then adjust exactly so that c^p < k^q ≤ (c+1)^p.
    let t = (k as f64).powf(f64::from(q) / f64::from(p));
    let mut c = t.floor() as u64;
    while c > 0 && cmp_pow(c, p, k, q) != Ordering::Less {
        c -= 1;
    }
    while cmp_pow(c + 1, p, k, q) == Ordering::Less {
        c += 1;
    }
    let n0 = c + 1;
    let member = cmp_pow(n0, p, k + 1, q) == Ordering::Less;
    PsMembership { k, member, witness: member.then_some(n0) }
}

/// The gap `φ_α(x) = (x+1)^{1/α} − x^{1/α}`, evaluated without cancellation
/// as `x^{1/α}·expm1((1/α)·ln1p(1/x))`. Float-valued diagnostic only.
pub fn phi(alpha: RationalExponent, x: f64) -> f64 {
    phi_inv_exp(alpha.inv_as_f64(), x)
}

/// [`phi`] generalized to a raw exponent `c = 1/α ∈ (0, 1]` (the `c = 1`
/// extension telescopes to exactly 1).
pub fn phi_inv_exp(c: f64, x: f64) -> f64 {
    assert!(c > 0.0 && c <= 1.0, "inverse exponent must lie in (0, 1]");
    assert!(x >= 0.0, "argument must be nonnegative");
    if x == 0.0 {
        return 1.0;
    }
    x.powf(c) * (c * (1.0 / x).ln_1p()).exp_m1()
}

/// Fractional part `{x} = x − ⌊x⌋ ∈ [0, 1)`. Diagnostic only.
pub fn frac(x: f64) -> f64 {
    x - x.floor()
}

/// Distance to the nearest integer `‖x‖ ∈ [0, 1/2]`. Diagnostic only.
pub fn dist_to_nearest_int(x: f64) -> f64 {
    let f = frac(x);
    f.min(1.0 - f)
}

/// The two-sided fractional condition for a pair `(n, N−n)` to contribute to
/// the representation count:
/// `({−n^{1/α1}} < φ_{α1}(n)) ∧ ({−(N−n)^{1/α2}} < φ_{α2}(N−n))`.
///
/// Implemented via the exact equivalence with sequence membership — each
/// conjunct holds iff the corresponding integer lies in its floor-power
/// sequence — so the verdict is integer-exact, never a float comparison.
pub fn frac_criterion(
    n: u64,
    big_n: u64,
    alpha1: RationalExponent,
    alpha2: RationalExponent,
) -> bool {
    assert!(n >= 1 && n < big_n, "need 1 ≤ n < N");
    is_ps_member(n, alpha1).member && is_ps_member(big_n - n, alpha2).member
}
