//! Extended-exponent arithmetic.
//!
//! Frequency values grow like n! (about 10^1134 at n = 500) while tail
//! probabilities go below 10^-127, so no built-in float covers the range.
//! [`WideScalar`] keeps an ordinary double mantissa but a 64-bit binary
//! exponent. Only non-negative values are representable; every quantity in
//! scope (frequencies, probabilities, costs) is non-negative, and rejecting
//! negatives surfaces cancellation bugs immediately.
//!
//! With the `compensated` feature the mantissa becomes a double-double pair
//! carried through every operation; the default build uses a single double.

use num_bigint::BigUint;
use num_traits::{One, Zero};
use std::cmp::Ordering;
use std::fmt;

use crate::error::Error;

/// Arbitrary-precision non-negative integer, used by the exact oracles.
pub type ExactCount = BigUint;

/// n! as an exact big integer.
pub fn exact_factorial(n: u64) -> ExactCount {
    let mut acc = ExactCount::one();
    for k in 2..=n {
        acc *= k;
    }
    acc
}

/// Non-negative real with value `mantissa * 2^exponent`.
///
/// Invariants: mantissa is in [1,2) or exactly 0 (then the exponent is 0
/// too), and every arithmetic result is renormalized. Relative error per
/// add/mul/div is below 2^-50.
#[derive(Clone, Copy, Debug)]
pub struct WideScalar {
    m: f64,
    #[cfg(feature = "compensated")]
    m_lo: f64,
    e: i64,
}

const EXP_OVERFLOW_MSG: &str = "wide scalar exponent overflow";

// 2^k as an exact f64 for |k| <= 1022.
#[inline]
fn pow2(k: i64) -> f64 {
    debug_assert!((-1022..=1023).contains(&k));
    f64::from_bits(((1023 + k) as u64) << 52)
}

// Exact product: a*b = p + err.
#[cfg(feature = "compensated")]
#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

// Exact sum: a+b = s + err.
#[cfg(feature = "compensated")]
#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

impl WideScalar {
    pub const ZERO: WideScalar = WideScalar {
        m: 0.0,
        #[cfg(feature = "compensated")]
        m_lo: 0.0,
        e: 0,
    };
    pub const ONE: WideScalar = WideScalar {
        m: 1.0,
        #[cfg(feature = "compensated")]
        m_lo: 0.0,
        e: 0,
    };

    #[inline]
    fn make(m: f64, e: i64) -> Self {
        WideScalar {
            m,
            #[cfg(feature = "compensated")]
            m_lo: 0.0,
            e,
        }
    }

    #[cfg(feature = "compensated")]
    #[inline]
    fn make2(m: f64, m_lo: f64, e: i64) -> Self {
        WideScalar { m, m_lo, e }
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.m == 0.0
    }

    /// Construct from a finite non-negative double. Panics on negative,
    /// NaN or infinite input.
    pub fn from_f64(x: f64) -> Self {
        assert!(
            x.is_finite() && x >= 0.0,
            "wide scalar requires a finite non-negative value, got {x}"
        );
        if x == 0.0 {
            return Self::ZERO;
        }
        let (m, e) = split_f64(x);
        Self::make(m, e)
    }

    pub fn from_u64(x: u64) -> Self {
        assert!(x <= (1u64 << 53), "from_u64 beyond exact double range");
        Self::from_f64(x as f64)
    }

    /// Exact ratio of two small integers.
    pub fn from_ratio(num: u64, den: u64) -> Self {
        Self::from_u64(num).div(Self::from_u64(den))
    }

    /// Round a big integer to the nearest representable wide scalar.
    pub fn from_exact(x: &ExactCount) -> Self {
        if x.is_zero() {
            return Self::ZERO;
        }
        let bits = x.bits();
        if bits <= 53 {
            let lo: u64 = x.iter_u64_digits().next().unwrap();
            return Self::from_f64(lo as f64);
        }
        // Keep the top 54 bits and round to nearest on the 54th.
        let shift = bits - 54;
        let top: u64 = (x >> shift).iter_u64_digits().next().unwrap();
        let rounded = (top >> 1) + (top & 1);
        let v = Self::from_f64(rounded as f64);
        Self::make(v.m, v.e.checked_add(shift as i64 + 1).expect(EXP_OVERFLOW_MSG))
    }

    /// `mantissa * 2^exponent` with mantissa in [1,2); panics otherwise.
    pub fn from_parts(mantissa: f64, exponent: i64) -> Self {
        assert!(
            (1.0..2.0).contains(&mantissa),
            "mantissa must lie in [1,2), got {mantissa}"
        );
        Self::make(mantissa, exponent)
    }

    pub fn mantissa(&self) -> f64 {
        self.m
    }

    pub fn exponent(&self) -> i64 {
        self.e
    }

    #[inline]
    fn renorm(m: f64, e: i64) -> Self {
        debug_assert!(m > 0.0 && m.is_finite());
        let (adj, e_adj) = split_f64(m);
        Self::make(adj, e.checked_add(e_adj).expect(EXP_OVERFLOW_MSG))
    }

    pub fn add(self, rhs: Self) -> Self {
        if self.is_zero() {
            return rhs;
        }
        if rhs.is_zero() {
            return self;
        }
        let (hi, lo) = if self.e >= rhs.e { (self, rhs) } else { (rhs, self) };
        let d = hi.e - lo.e;
        if d > 107 {
            return hi;
        }
        // Scaling by 2^-d splits into two exact steps when d > 1022
        // cannot happen (d <= 107 here).
        let scale = pow2(-d);
        #[cfg(not(feature = "compensated"))]
        {
            if d > 54 {
                return hi;
            }
            Self::renorm(hi.m + lo.m * scale, hi.e)
        }
        #[cfg(feature = "compensated")]
        {
            let (s, err) = two_sum(hi.m, lo.m * scale);
            let err = err + (hi.m_lo + lo.m_lo * scale);
            let norm = Self::renorm(s, hi.e);
            let adj = pow2(-(norm.e - hi.e));
            Self::make2(norm.m, err * adj, norm.e).quick_renorm()
        }
    }

    #[cfg(feature = "compensated")]
    #[inline]
    fn quick_renorm(self) -> Self {
        let (s, e) = two_sum(self.m, self.m_lo);
        if (1.0..2.0).contains(&s) {
            return Self::make2(s, e, self.e);
        }
        let norm = Self::renorm(s, self.e);
        let adj = pow2(-(norm.e - self.e));
        Self::make2(norm.m, e * adj, norm.e)
    }

    pub fn mul(self, rhs: Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::ZERO;
        }
        let e = self.e.checked_add(rhs.e).expect(EXP_OVERFLOW_MSG);
        #[cfg(not(feature = "compensated"))]
        {
            Self::renorm(self.m * rhs.m, e)
        }
        #[cfg(feature = "compensated")]
        {
            let (p, perr) = two_prod(self.m, rhs.m);
            let perr = perr + self.m * rhs.m_lo + self.m_lo * rhs.m;
            let norm = Self::renorm(p, e);
            let adj = pow2(-(norm.e - e));
            Self::make2(norm.m, perr * adj, norm.e).quick_renorm()
        }
    }

    /// Panics on a zero divisor; use [`WideScalar::checked_div`] where the
    /// divisor is not known to be positive.
    pub fn div(self, rhs: Self) -> Self {
        self.checked_div(rhs).expect("division by zero wide scalar")
    }

    pub fn checked_div(self, rhs: Self) -> Result<Self, Error> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(Self::ZERO);
        }
        let e = self.e.checked_sub(rhs.e).expect(EXP_OVERFLOW_MSG);
        #[cfg(not(feature = "compensated"))]
        {
            Ok(Self::renorm(self.m / rhs.m, e))
        }
        #[cfg(feature = "compensated")]
        {
            let q1 = self.m / rhs.m;
            // One Newton correction against the double-double operands.
            let (p, perr) = two_prod(q1, rhs.m);
            let r = (self.m - p) - perr - q1 * rhs.m_lo + self.m_lo;
            let q2 = r / rhs.m;
            let norm = Self::renorm(q1, e);
            let adj = pow2(-(norm.e - e));
            Ok(Self::make2(norm.m, q2 * adj, norm.e).quick_renorm())
        }
    }

    /// Exact scaling by a power of two.
    pub fn scale_pow2(self, k: i64) -> Self {
        if self.is_zero() {
            return self;
        }
        let mut out = self;
        out.e = out.e.checked_add(k).expect(EXP_OVERFLOW_MSG);
        out
    }

    /// Nearest double; saturates to `INFINITY`/`0` outside the double range.
    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        if self.e > 1023 {
            return f64::INFINITY;
        }
        if self.e < -1074 {
            return 0.0;
        }
        let v = self.value_f64();
        if self.e >= -1021 {
            v * pow2(self.e)
        } else {
            // Two exact steps to reach the subnormal range.
            v * pow2(-1021) * pow2(self.e + 1021)
        }
    }

    #[inline]
    fn value_f64(&self) -> f64 {
        #[cfg(not(feature = "compensated"))]
        {
            self.m
        }
        #[cfg(feature = "compensated")]
        {
            self.m + self.m_lo
        }
    }

    /// Base-10 logarithm (f64 accuracy); panics on zero.
    pub fn log10(&self) -> f64 {
        assert!(!self.is_zero(), "log10 of zero");
        (self.e as f64) * std::f64::consts::LOG10_2 + self.value_f64().log10()
    }

    /// Relative deviation |self/other - 1|; other must be nonzero.
    pub fn rel_diff(&self, other: Self) -> f64 {
        if self.is_zero() && other.is_zero() {
            return 0.0;
        }
        (self.div(other).to_f64() - 1.0).abs()
    }

    /// Scientific-notation decimal string with `digits` significant digits
    /// (1..=17), round-half-even; zero prints as "0".
    pub fn to_decimal(&self, digits: usize) -> String {
        assert!((1..=17).contains(&digits), "digits must be in 1..=17");
        if self.is_zero() {
            return "0".to_string();
        }
        // Split e*log10(2) into integer and fractional parts without losing
        // the fraction to the magnitude of the product.
        const LOG10_2_HI: f64 = 0.301029995663981198017;
        const LOG10_2_LO: f64 = -2.80372812778517039373e-18;
        assert!(
            self.e.unsigned_abs() <= 1 << 53,
            "decimal conversion limited to |exponent| <= 2^53"
        );
        let ef = self.e as f64;
        let p = ef * LOG10_2_HI;
        let perr = ef.mul_add(LOG10_2_HI, -p);
        let p_int = p.trunc();
        let p_frac = p - p_int;
        let frac_all = p_frac + perr + ef * LOG10_2_LO + self.value_f64().log10();
        let fl = frac_all.floor();
        let mut d10 = p_int as i64 + fl as i64;
        let m10 = 10f64.powf(frac_all - fl);
        let formatted = format!("{:.*e}", digits - 1, m10);
        // Rounding may carry the mantissa to 10.0 ("1.00e1").
        let (mant, carry) = formatted.split_once('e').expect("exponent marker");
        d10 += carry.parse::<i64>().expect("carry exponent");
        format!("{mant}e{d10}")
    }

    /// n! by repeated multiplication; relative error below n * 2^-50.
    pub fn factorial(n: u64) -> Self {
        let mut acc = Self::ONE;
        for k in 2..=n {
            acc = acc.mul(Self::from_u64(k));
        }
        acc
    }
}

// Mantissa in [1,2) plus base-2 exponent; exact for all finite positive x.
fn split_f64(x: f64) -> (f64, i64) {
    let bits = x.to_bits();
    let raw = ((bits >> 52) & 0x7ff) as i64;
    if raw == 0 {
        // Subnormal: renormalize through an exact scale.
        let (m, e) = split_f64(x * pow2(200));
        (m, e - 200)
    } else {
        (
            f64::from_bits((bits & 0x000f_ffff_ffff_ffff) | (1023u64 << 52)),
            raw - 1023,
        )
    }
}

impl PartialEq for WideScalar {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for WideScalar {}

impl PartialOrd for WideScalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for WideScalar {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self.is_zero(), other.is_zero()) {
            (true, true) => Ordering::Equal,
            (true, false) => Ordering::Less,
            (false, true) => Ordering::Greater,
            (false, false) => (self.e, self.value_f64())
                .partial_cmp(&(other.e, other.value_f64()))
                .expect("normalized mantissa is never NaN"),
        }
    }
}

impl fmt::Display for WideScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_decimal(6))
    }
}

/// Streaming pairwise summation of non-negative wide scalars.
///
/// Partial sums are kept per binary level, so every term takes part in at
/// most 64 additions regardless of the term count. Deterministic for a
/// fixed push order.
pub struct WideSum {
    levels: [WideScalar; 64],
    occupied: u64,
}

impl Default for WideSum {
    fn default() -> Self {
        Self::new()
    }
}

impl WideSum {
    pub fn new() -> Self {
        WideSum {
            levels: [WideScalar::ZERO; 64],
            occupied: 0,
        }
    }

    #[inline]
    pub fn push(&mut self, x: WideScalar) {
        let mut carry = x;
        let mut k = 0;
        while self.occupied & (1 << k) != 0 {
            carry = carry.add(self.levels[k]);
            self.occupied &= !(1 << k);
            k += 1;
        }
        self.levels[k] = carry;
        self.occupied |= 1 << k;
    }

    /// Sum of everything pushed so far, combined small-to-large.
    pub fn total(&self) -> WideScalar {
        let mut acc = WideScalar::ZERO;
        for k in 0..64 {
            if self.occupied & (1 << k) != 0 {
                acc = acc.add(self.levels[k]);
            }
        }
        acc
    }
}

/// Kahan-compensated accumulator for plain doubles.
#[derive(Clone, Copy, Default)]
pub struct Kahan {
    sum: f64,
    c: f64,
}

impl Kahan {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, x: f64) {
        let y = x - self.c;
        let t = self.sum + y;
        self.c = (t - self.sum) - y;
        self.sum = t;
    }

    pub fn total(&self) -> f64 {
        self.sum
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ws(x: f64) -> WideScalar {
        WideScalar::from_f64(x)
    }

    #[test]
    fn additive_identity() {
        let x = ws(3.75);
        assert_eq!(WideScalar::ZERO.add(x), x);
        assert_eq!(x.add(WideScalar::ZERO), x);
    }

    #[test]
    fn exact_power_of_two_product() {
        let a = WideScalar::from_parts(1.0, 1000);
        let p = a.mul(a);
        assert_eq!(p.mantissa(), 1.0);
        assert_eq!(p.exponent(), 2000);
    }

    #[test]
    fn factorial_small_values() {
        assert_eq!(WideScalar::factorial(0), WideScalar::ONE);
        assert_eq!(WideScalar::factorial(10).to_f64(), 3_628_800.0);
        let f20 = WideScalar::factorial(20);
        let exact = exact_factorial(20);
        assert_eq!(exact.to_string(), "2432902008176640000");
        assert!(f20.rel_diff(WideScalar::from_exact(&exact)) < 1e-14);
    }

    #[test]
    fn factorial_500_magnitude() {
        // Independent magnitude oracle: sum of log10(k) in plain doubles.
        let log_sum: f64 = (2..=500u64).map(|k| (k as f64).log10()).sum();
        let f = WideScalar::factorial(500);
        assert!((f.log10() - log_sum).abs() < 0.1);
        assert!((f.log10() - 1134.0).abs() < 0.1);
    }

    #[test]
    fn factorial_matches_exact_count_up_to_500() {
        let mut exact = ExactCount::one();
        let mut wide = WideScalar::ONE;
        for n in 2..=500u64 {
            exact *= n;
            wide = wide.mul(WideScalar::from_u64(n));
            assert!(
                wide.rel_diff(WideScalar::from_exact(&exact)) < 5e-14,
                "factorial diverged at n = {n}"
            );
        }
    }

    #[test]
    fn decimal_rendering() {
        assert_eq!(WideScalar::ZERO.to_decimal(4), "0");
        assert_eq!(WideScalar::from_parts(1.0, 10).to_decimal(4), "1.024e3");
        assert_eq!(ws(0.5).to_decimal(3), "5.00e-1");
        assert_eq!(ws(1.0).to_decimal(1), "1e0");
        assert_eq!(ws(9.9999).to_decimal(3), "1.00e1");
    }

    #[test]
    fn decimal_rendering_factorial_500() {
        // Exact decimal oracle from the big integer.
        let exact = exact_factorial(500).to_string();
        let wide = WideScalar::factorial(500).to_decimal(4);
        // 500! starts 1220136... so half-even rounding to 4 digits is plain.
        assert_eq!(&exact[..4], "1220");
        let expected = format!("1.220e{}", exact.len() - 1);
        assert_eq!(wide, expected);
        assert_eq!(wide, "1.220e1134");
    }

    #[test]
    fn agrees_with_native_doubles() {
        // Deterministic sweep over mixed-magnitude pairs.
        let samples: Vec<f64> = (1..60)
            .map(|k| (k as f64) * 1.7 + 0.3 + (k as f64).sqrt() * 1e-3)
            .collect();
        for (idx, &a) in samples.iter().enumerate() {
            for &b in &samples[idx..] {
                let (wa, wb) = (ws(a), ws(b));
                for (wide, native) in [
                    (wa.add(wb), a + b),
                    (wa.mul(wb), a * b),
                    (wa.div(wb), a / b),
                ] {
                    assert!(
                        (wide.to_f64() / native - 1.0).abs() < 1e-14,
                        "mismatch for a={a} b={b}"
                    );
                }
            }
        }
    }

    #[test]
    fn tiny_term_is_absorbed_not_lost() {
        let big = WideScalar::from_parts(1.0, 200);
        let small = WideScalar::from_parts(1.0, -200);
        assert_eq!(big.add(small), big);
        let sum = ws(1.0).add(ws(2f64.powi(-40)));
        assert!(sum > ws(1.0));
    }

    #[test]
    fn from_exact_rounds_large_integers() {
        let x = (ExactCount::one() << 200u32) + ExactCount::from(12345u64);
        let w = WideScalar::from_exact(&x);
        assert_eq!(w.exponent(), 200);
        assert_eq!(w.mantissa(), 1.0);
    }

    #[test]
    fn pairwise_sum_of_many_tiny_terms() {
        // 10^7 equal terms; naive accumulation in singles would lose
        // several digits, the cascade keeps full precision.
        let term = ws(0.1);
        let n = 10_000_000u64;
        let mut acc = WideSum::new();
        for _ in 0..n {
            acc.push(term);
        }
        let expected = term.mul(WideScalar::from_u64(n));
        assert!(acc.total().rel_diff(expected) < 1e-14);
    }

    #[test]
    fn kahan_compensates() {
        let mut k = Kahan::new();
        k.add(1e16);
        for _ in 0..10_000 {
            k.add(1.0);
        }
        assert_eq!(k.total(), 1e16 + 10_000.0);
    }

    #[test]
    fn ordering_is_total_on_values() {
        let vals = [
            WideScalar::ZERO,
            ws(1e-300),
            ws(0.5),
            ws(1.0),
            ws(1.5),
            ws(2.0),
            WideScalar::from_parts(1.0, 900),
        ];
        for w in vals.windows(2) {
            assert!(w[0] < w[1]);
        }
    }

    #[test]
    #[should_panic(expected = "non-negative")]
    fn negative_values_are_rejected() {
        let _ = WideScalar::from_f64(-1.0);
    }

    #[test]
    fn division_by_zero_is_a_domain_error() {
        assert_eq!(
            ws(1.0).checked_div(WideScalar::ZERO),
            Err(Error::DivisionByZero)
        );
    }
}
