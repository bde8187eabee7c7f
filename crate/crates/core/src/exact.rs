//! Exact rational helpers for thresholds that gate comparisons.
//!
//! Real-valued parameters (`alpha`, `k`, `eps`, `c`) are converted to the
//! simplest rational within floating point precision, so `0.3` becomes
//! exactly `3/10` and a degree never flips across a threshold on rounding.

use num_rational::Ratio;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = Ratio<i128>;

pub fn rational(name: &'static str, x: f64) -> Result<Rational> {
    if !x.is_finite() {
        return Err(Error::param(name, format!("{x} is not finite")));
    }
    Rational::approximate_float(x)
        .ok_or_else(|| Error::param(name, format!("{x} has no rational approximation")))
}

pub fn int(x: usize) -> Rational {
    Rational::from_integer(x as i128)
}

pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// `⌊r⌋` for a nonnegative rational, as a count.
pub fn floor_count(r: &Rational) -> usize {
    if *r <= Rational::zero() {
        0
    } else {
        r.floor().to_integer() as usize
    }
}

/// `⌈r⌉` for a nonnegative rational, as a count.
pub fn ceil_count(r: &Rational) -> usize {
    if *r <= Rational::zero() {
        0
    } else {
        r.ceil().to_integer() as usize
    }
}

/// `⌊√x⌋` for a nonnegative rational `x`; equals `isqrt(⌊x⌋)`.
pub fn floor_sqrt(x: &Rational) -> usize {
    let f = floor_count(x) as u128;
    let mut r = (f as f64).sqrt() as u128;
    while r * r > f {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= f {
        r += 1;
    }
    r as usize
}

/// `⌊2·√eps·n⌋`, computed as `⌊√(4·eps·n²)⌋`.
pub fn floor_two_sqrt_eps_n(eps: &Rational, n: usize) -> usize {
    floor_sqrt(&(eps * int(4 * n * n)))
}

pub fn choose2(t: usize) -> usize {
    t * t.saturating_sub(1) / 2
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decimal_parameters_are_exact() {
        assert_eq!(rational("x", 0.3).unwrap(), Rational::new(3, 10));
        assert_eq!(rational("x", 0.4).unwrap(), Rational::new(2, 5));
        assert_eq!(rational("x", 2.5).unwrap(), Rational::new(5, 2));
        assert!(rational("x", f64::NAN).is_err());
    }

    #[test]
    fn floors_and_ceilings() {
        let r = rational("eps", 0.29).unwrap();
        assert_eq!(floor_count(&(r * int(100))), 29);
        assert_eq!(ceil_count(&Rational::new(7, 2)), 4);
        assert_eq!(ceil_count(&Rational::new(8, 2)), 4);
        // 2·√0.04·100 = 40 exactly
        assert_eq!(
            floor_two_sqrt_eps_n(&rational("eps", 0.04).unwrap(), 100),
            40
        );
        // 2·√0.1·10 ≈ 6.32
        assert_eq!(floor_two_sqrt_eps_n(&rational("eps", 0.1).unwrap(), 10), 6);
        assert_eq!(floor_sqrt(&int(15)), 3);
        assert_eq!(floor_sqrt(&int(16)), 4);
    }
}
