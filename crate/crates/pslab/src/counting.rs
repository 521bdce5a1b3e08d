//! Exact counting of additive representations by floor-power values: the
//! two-term count `R(N)` and the three quantities over triples (two-term
//! sums landing in the sequence, bounded three-term relations, and
//! three-term arithmetic progressions), each paired with a brute-force
//! oracle.
//!
//! Counts are exact `u64` arithmetic end to end — the only floating point in
//! this module is the predicted main term attached to each record. Loops
//! parallelize over the outer index; counts are associative integer sums, so
//! any work partition yields the identical result.

use crate::asymptotics::{conjecture_rhs, leading_constant_R, ConjectureKind};
use crate::exactfloor::{floor_pow, is_ps_member, RationalExponent};
use rayon::prelude::*;
use thiserror::Error;

/// Errors from the counting layer.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CountingError {
    /// A brute-force oracle was asked to exceed its configured bound.
    #[error("brute-force oracle capped at {cap}, got parameter {n}")]
    CapExceeded { n: u64, cap: u64 },
}

/// One counting result: the parameter it was evaluated at, the exponent(s),
/// the exact count, the predicted main term, and their ratio.
///
/// `leading` (and hence `ratio`) is `NaN` when the exponent lies outside the
/// range where the matching prediction is defined (e.g. `α ≥ 3` for the
/// triple counts); the count itself is always exact.
#[derive(Debug, Clone, PartialEq)]
pub struct CountRecord {
    /// `N` (two-term count) or `x` (triple counts).
    pub parameter: u64,
    /// One exponent for the triple counts, two for `R`.
    pub alphas: Vec<RationalExponent>,
    /// The exact count.
    pub count: u64,
    /// Predicted main term at this parameter.
    pub leading: f64,
    /// `count / leading`.
    pub ratio: f64,
}

impl CountRecord {
    fn new(parameter: u64, alphas: Vec<RationalExponent>, count: u64, leading: f64) -> Self {
        let ratio = count as f64 / leading;
        Self { parameter, alphas, count, leading, ratio }
    }
}

/// Exact number of ordered pairs `(n1, n2)` of positive integers with
/// `⌊n1^{α1}⌋ + ⌊n2^{α2}⌋ = N`, for `N ≥ 2`.
///
/// Walks `n1` while `⌊n1^{α1}⌋ ≤ N − 1` and asks membership of the
/// complement — valid because `n ↦ ⌊n^α⌋` is strictly increasing for
/// `α > 1`, so each attained value has exactly one preimage. The attached
/// main term is `Γ(1+1/α1)Γ(1+1/α2)/Γ(1/α1+1/α2) · N^{1/α1+1/α2−1}`.
#[allow(non_snake_case)]
pub fn count_R(n: u64, alpha1: RationalExponent, alpha2: RationalExponent) -> CountRecord {
    assert!(n >= 2, "count_R requires N ≥ 2, got {n}");
    let mut count = 0u64;
    let mut n1 = 1u64;
    loop {
        let f1 = floor_pow(n1, alpha1);
        if f1 > n - 1 {
            break;
        }
        if is_ps_member(n - f1, alpha2).member {
            count += 1;
        }
        n1 += 1;
    }
    let (a1, a2) = (alpha1.inv_as_f64(), alpha2.inv_as_f64());
    let leading = leading_constant_R(alpha1.as_f64(), alpha2.as_f64())
        * (n as f64).powf(a1 + a2 - 1.0);
    CountRecord::new(n, vec![alpha1, alpha2], count, leading)
}

/// Default parameter cap for [`count_R_bruteforce`].
pub const BRUTEFORCE_DEFAULT_CAP: u64 = 100_000;

/// Brute-force oracle for [`count_R`]: tabulates both floor-power sequences
/// and double-loops over all pairs, sharing no counting logic with the
/// membership route. Capped at [`BRUTEFORCE_DEFAULT_CAP`].
#[allow(non_snake_case)]
pub fn count_R_bruteforce(
    n: u64,
    alpha1: RationalExponent,
    alpha2: RationalExponent,
) -> Result<u64, CountingError> {
    count_R_bruteforce_with_cap(n, alpha1, alpha2, BRUTEFORCE_DEFAULT_CAP)
}

/// [`count_R_bruteforce`] with an explicit cap.
#[allow(non_snake_case)]
pub fn count_R_bruteforce_with_cap(
    n: u64,
    alpha1: RationalExponent,
    alpha2: RationalExponent,
    cap: u64,
) -> Result<u64, CountingError> {
    if n > cap {
        return Err(CountingError::CapExceeded { n, cap });
    }
    let values_below = |alpha: RationalExponent| -> Vec<u64> {
        let mut v = Vec::new();
        let mut k = 1u64;
        loop {
            let f = floor_pow(k, alpha);
            if f > n {
                break;
            }
            v.push(f);
            k += 1;
        }
        v
    };
    let f1 = values_below(alpha1);
    let f2 = values_below(alpha2);
    let mut count = 0u64;
    for &a in &f1 {
        for &b in &f2 {
            // f2 is increasing: nothing beyond this b can land on n.
            if a + b > n {
                break;
            }
            if a + b == n {
                count += 1;
            }
        }
    }
    Ok(count)
}

/// Bitset representations are used up to this many value bits (~37 MB);
/// beyond that the attained values are sparse enough that a sorted array
/// with binary search wins on memory and build time.
const BITSET_MAX_BITS: u64 = 300_000_000;

/// The set `{⌊n^α⌋ : n ≥ 1}` truncated at a maximum value, for O(1)/O(log)
/// membership queries inside the quadratic counting loops. An optimization
/// layer only: tests pin it against `is_ps_member` value by value.
pub struct PsTable {
    alpha: RationalExponent,
    max_value: u64,
    repr: PsRepr,
}

enum PsRepr {
    /// Bit `v` set iff `v` is attained. Indexed directly.
    Bits(Vec<u64>),
    /// Strictly increasing attained values; binary-searched.
    Sorted(Vec<u64>),
}

impl PsTable {
    /// Tabulates all attained values `≤ max_value`.
    pub fn build(alpha: RationalExponent, max_value: u64) -> Self {
        let repr = if max_value < BITSET_MAX_BITS {
            let mut bits = vec![0u64; (max_value / 64 + 1) as usize];
            let mut n = 1u64;
            loop {
                let f = floor_pow(n, alpha);
                if f > max_value {
                    break;
                }
                bits[(f / 64) as usize] |= 1 << (f % 64);
                n += 1;
            }
            PsRepr::Bits(bits)
        } else {
            let mut values = Vec::new();
            let mut n = 1u64;
            loop {
                let f = floor_pow(n, alpha);
                if f > max_value {
                    break;
                }
                values.push(f);
                n += 1;
            }
            PsRepr::Sorted(values)
        };
        Self { alpha, max_value, repr }
    }

    /// Whether `v` is an attained value. Queries above the build bound
    /// return `false` (callers keep `v` in range; this is belt and braces).
    pub fn contains(&self, v: u64) -> bool {
        if v == 0 || v > self.max_value {
            return false;
        }
        match &self.repr {
            PsRepr::Bits(bits) => bits[(v / 64) as usize] >> (v % 64) & 1 == 1,
            PsRepr::Sorted(values) => values.binary_search(&v).is_ok(),
        }
    }

    /// The exponent this table was built for.
    pub fn alpha(&self) -> RationalExponent {
        self.alpha
    }
}

/// Floor-power values `⌊n^α⌋` for `n = 1..=x` (index 0 unused).
fn floor_pow_table(x: u64, alpha: RationalExponent) -> Vec<u64> {
    let mut fl = Vec::with_capacity(x as usize + 1);
    fl.push(0); // n = 0 sentinel, never read
    for n in 1..=x {
        fl.push(floor_pow(n, alpha));
    }
    fl
}

/// Shared quadratic pass computing the two-term-sum count (no bound on the
/// landing index) and the bounded three-term count in one sweep.
fn two_and_three_term_counts(x: u64, alpha: RationalExponent) -> (u64, u64) {
    assert!(x >= 2, "triple counts require x ≥ 2, got {x}");
    let fl = floor_pow_table(x, alpha);
    let cap = fl[x as usize];
    let table = PsTable::build(alpha, 2 * cap);
    // The summand set is symmetric in (l, m): count l ≤ m once and weight
    // off-diagonal pairs by 2.
    let (n12, n3) = (1..=x)
        .into_par_iter()
        .map(|l| {
            let fal = fl[l as usize];
            let mut in_sequence = 0u64;
            let mut bounded = 0u64;
            for m in l..=x {
                let v = fal + fl[m as usize];
                if table.contains(v) {
                    let w = if m == l { 1 } else { 2 };
                    in_sequence += w;
                    // v ≤ ⌊x^α⌋ forces the (unique) witness ≤ x, because
                    // the value map is strictly increasing.
                    if v <= cap {
                        bounded += w;
                    }
                }
            }
            (in_sequence, bounded)
        })
        .reduce(|| (0, 0), |a, b| (a.0 + b.0, a.1 + b.1));
    (n12, n3)
}

fn triple_leading(x: u64, alpha: RationalExponent, kind: ConjectureKind) -> f64 {
    let af = alpha.as_f64();
    match conjecture_rhs(kind, af) {
        Ok(c) => c * (x as f64).powf(3.0 - af),
        Err(_) => f64::NAN,
    }
}

/// Number of triples `(l, m, n)` with `l, m ≤ x` and
/// `⌊l^α⌋ + ⌊m^α⌋ = ⌊n^α⌋` — the landing index `n` is unbounded (it is
/// determined by the attained value, at most `2⌊x^α⌋`).
#[allow(non_snake_case)]
pub fn count_N12(x: u64, alpha: RationalExponent) -> CountRecord {
    let (n12, _) = two_and_three_term_counts(x, alpha);
    CountRecord::new(x, vec![alpha], n12, triple_leading(x, alpha, ConjectureKind::N12))
}

/// Number of triples `(l, m, n)` with `n ≤ x` and `⌊l^α⌋ + ⌊m^α⌋ = ⌊n^α⌋`
/// (so `l, m < n` automatically). For the strict bound `n < x` evaluate at
/// `x − 1`.
#[allow(non_snake_case)]
pub fn count_N3(x: u64, alpha: RationalExponent) -> CountRecord {
    let (_, n3) = two_and_three_term_counts(x, alpha);
    CountRecord::new(x, vec![alpha], n3, triple_leading(x, alpha, ConjectureKind::N3))
}

/// Both of the above from a single quadratic pass — the figure sweeps need
/// the two counts at identical parameters and the loop cost dominates.
#[allow(non_snake_case)]
pub fn count_N12_N3(x: u64, alpha: RationalExponent) -> (CountRecord, CountRecord) {
    let (n12, n3) = two_and_three_term_counts(x, alpha);
    (
        CountRecord::new(x, vec![alpha], n12, triple_leading(x, alpha, ConjectureKind::N12)),
        CountRecord::new(x, vec![alpha], n3, triple_leading(x, alpha, ConjectureKind::N3)),
    )
}

/// Number of three-term arithmetic progressions inside the attained-value
/// sequence with strictly increasing indices: triples `l < m < n ≤ x` with
/// `⌊l^α⌋ + ⌊n^α⌋ = 2⌊m^α⌋`.
///
/// Loops over `(m, n)` and tests `v = 2⌊m^α⌋ − ⌊n^α⌋`; any witness of an
/// attained `v` satisfies `l < m` automatically since `v < ⌊m^α⌋`.
#[allow(non_snake_case)]
pub fn count_NAP(x: u64, alpha: RationalExponent) -> CountRecord {
    assert!(x >= 2, "triple counts require x ≥ 2, got {x}");
    let fl = floor_pow_table(x, alpha);
    let table = PsTable::build(alpha, fl[x as usize]);
    let count: u64 = (2..=x)
        .into_par_iter()
        .map(|m| {
            let two_fm = 2 * fl[m as usize];
            let mut c = 0u64;
            for n in (m + 1)..=x {
                let fn_ = fl[n as usize];
                if fn_ >= two_fm {
                    break; // values increase in n; v stays ≤ 0 from here
                }
                if table.contains(two_fm - fn_) {
                    c += 1;
                }
            }
            c
        })
        .sum();
    CountRecord::new(x, vec![alpha], count, triple_leading(x, alpha, ConjectureKind::Ap))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn alpha(p: u64, q: u64) -> RationalExponent {
        RationalExponent::new(p, q).unwrap()
    }

    #[test]
    fn count_r_hand_values() {
        assert_eq!(count_R(2, alpha(6, 5), alpha(6, 5)).count, 1);
        assert_eq!(count_R(10, alpha(3, 2), alpha(3, 2)).count, 3);
        assert_eq!(count_R(10, alpha(6, 5), alpha(6, 5)).count, 3);
    }

    #[test]
    fn count_r_enumerated_pairs_match_hand_list() {
        // (10, 3/2): pairs (2,4), (4,2), (3,3).
        let a = alpha(3, 2);
        let mut pairs = Vec::new();
        for n1 in 1..=10u64 {
            for n2 in 1..=10u64 {
                if floor_pow(n1, a) + floor_pow(n2, a) == 10 {
                    pairs.push((n1, n2));
                }
            }
        }
        assert_eq!(pairs, vec![(2, 4), (3, 3), (4, 2)]);
    }

    #[test]
    fn count_r_record_fields() {
        let rec = count_R(100, alpha(6, 5), alpha(5, 4));
        assert_eq!(rec.parameter, 100);
        assert_eq!(rec.alphas.len(), 2);
        assert!(rec.leading > 0.0);
        assert!((rec.ratio - rec.count as f64 / rec.leading).abs() < 1e-15);
    }

    #[test]
    fn bruteforce_agrees_on_examples() {
        assert_eq!(count_R_bruteforce(2, alpha(6, 5), alpha(6, 5)).unwrap(), 1);
        assert_eq!(count_R_bruteforce(10, alpha(3, 2), alpha(3, 2)).unwrap(), 3);
    }

    #[test]
    fn bruteforce_cap() {
        let e = count_R_bruteforce(200_000, alpha(6, 5), alpha(6, 5)).unwrap_err();
        assert_eq!(e, CountingError::CapExceeded { n: 200_000, cap: BRUTEFORCE_DEFAULT_CAP });
        assert!(count_R_bruteforce_with_cap(150, alpha(6, 5), alpha(6, 5), 100).is_err());
    }

    #[test]
    fn membership_and_bruteforce_routes_agree() {
        // Exact equality of the two independently-coded counts on a sweep;
        // the acceptance suite extends this to N ≤ 2000 and more exponents.
        for &(p, q) in &[(6u64, 5u64), (3, 2), (11, 10), (4, 3)] {
            let a = alpha(p, q);
            for n in 2..=300u64 {
                assert_eq!(
                    count_R(n, a, a).count,
                    count_R_bruteforce(n, a, a).unwrap(),
                    "mismatch at N={n}, α={a}"
                );
            }
        }
        // Mixed exponents.
        let (a1, a2) = (alpha(6, 5), alpha(3, 2));
        for n in 2..=200u64 {
            assert_eq!(count_R(n, a1, a2).count, count_R_bruteforce(n, a1, a2).unwrap());
        }
    }

    #[test]
    fn ps_table_matches_membership_bitset_repr() {
        for &(p, q) in &[(6u64, 5u64), (3, 2), (2, 1)] {
            let a = alpha(p, q);
            let table = PsTable::build(a, 5000);
            for v in 1..=5000u64 {
                assert_eq!(
                    table.contains(v),
                    is_ps_member(v, a).member,
                    "table/membership disagree at v={v}, α={a}"
                );
            }
            assert!(!table.contains(0));
            assert!(!table.contains(5001));
        }
    }

    #[test]
    fn ps_table_matches_membership_sorted_repr() {
        // A build bound past the bitset cutoff forces the sorted-array
        // representation; the attained values up there are sparse.
        let a = alpha(5, 2);
        let max = 400_000_000u64;
        let table = PsTable::build(a, max);
        for n in 1..=2000u64 {
            let f = floor_pow(n, a);
            if f > max {
                break;
            }
            assert!(table.contains(f));
            if f < max {
                assert_eq!(table.contains(f + 1), is_ps_member(f + 1, a).member);
            }
        }
    }

    #[test]
    fn count_n3_hand_values() {
        assert_eq!(count_N3(2, alpha(6, 5)).count, 1);
        // Ordered Pythagorean-style triples with hypotenuse index ≤ 25.
        assert_eq!(count_N3(25, alpha(2, 1)).count, 16);
    }

    #[test]
    fn count_n3_consistency_sum() {
        // Summing the two-term count over attained targets reproduces the
        // bounded triple count exactly.
        for &(p, q) in &[(6u64, 5u64), (3, 2)] {
            let a = alpha(p, q);
            let x = 300u64;
            let mut total = 0u64;
            for n in 1..=x {
                let target = floor_pow(n, a);
                if target >= 2 {
                    total += count_R(target, a, a).count;
                }
            }
            assert_eq!(total, count_N3(x, a).count, "α={a}");
        }
    }

    #[test]
    fn count_n12_matches_triple_loop_oracle() {
        let a = alpha(6, 5);
        let x = 150u64;
        let fl = floor_pow_table(x, a);
        // Oracle: enumerate (l, m) and search the landing index directly.
        let mut oracle = 0u64;
        for l in 1..=x {
            for m in 1..=x {
                let v = fl[l as usize] + fl[m as usize];
                let mut n = 1u64;
                loop {
                    let f = floor_pow(n, a);
                    if f == v {
                        oracle += 1;
                        break;
                    }
                    if f > v {
                        break;
                    }
                    n += 1;
                }
            }
        }
        assert_eq!(count_N12(x, a).count, oracle);
    }

    #[test]
    fn count_nap_matches_triple_loop_oracle() {
        for &(p, q) in &[(6u64, 5u64), (2, 1)] {
            let a = alpha(p, q);
            let x = 300u64;
            let fl = floor_pow_table(x, a);
            let mut oracle = 0u64;
            for l in 1..=x {
                for m in (l + 1)..=x {
                    for n in (m + 1)..=x {
                        if fl[l as usize] + fl[n as usize] == 2 * fl[m as usize] {
                            oracle += 1;
                        }
                    }
                }
            }
            assert_eq!(count_NAP(x, a).count, oracle, "α={a}");
        }
    }

    #[test]
    fn ap_relates_to_two_term_count_by_halving() {
        // With the landing index unbounded, progressions through a fixed
        // middle index m are the off-diagonal pairs summing to 2⌊m^α⌋, and
        // the diagonal pair (m, m) always exists: strict unordered count
        // = (Σ_m R(2⌊m^α⌋) − y) / 2.
        let a = alpha(6, 5);
        let y = 300u64;
        let mut rhs_sum = 0u64;
        for m in 1..=y {
            rhs_sum += count_R(2 * floor_pow(m, a), a, a).count;
        }
        // Left side: (m, n) pairs with m ≤ y, n unbounded.
        let n_max = 2u64 * y + 10; // ⌊n^α⌋ < 2⌊y^α⌋ keeps n well below this
        let fl = floor_pow_table(n_max, a);
        let mut strict = 0u64;
        for m in 1..=y {
            let two_fm = 2 * fl[m as usize];
            for n in (m + 1)..=n_max {
                if fl[n as usize] >= two_fm {
                    break;
                }
                if is_ps_member(two_fm - fl[n as usize], a).member {
                    strict += 1;
                }
            }
        }
        assert_eq!(2 * strict, rhs_sum - y);
    }

    #[test]
    fn count_n3_is_monotone_in_x() {
        let a = alpha(6, 5);
        let mut prev = 0u64;
        for x in 2..=80u64 {
            let c = count_N3(x, a).count;
            assert!(c >= prev);
            prev = c;
        }
    }

    #[test]
    fn shared_pass_matches_individual_counts() {
        let a = alpha(5, 4);
        let x = 120u64;
        let (n12, n3) = count_N12_N3(x, a);
        assert_eq!(n12.count, count_N12(x, a).count);
        assert_eq!(n3.count, count_N3(x, a).count);
        assert!(n12.count >= n3.count);
    }

    #[test]
    fn triple_leading_is_nan_outside_prediction_range() {
        // α = 7/2 ≥ 3: count stays exact, prediction undefined.
        let rec = count_N3(50, alpha(7, 2));
        assert!(rec.leading.is_nan());
        assert!(rec.ratio.is_nan());
    }
}
