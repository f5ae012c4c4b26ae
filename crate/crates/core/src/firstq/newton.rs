//! Fixed-point Newton-Raphson for `1/√(r²)`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Fractional bits used when none are given.
pub const DEFAULT_FRAC_BITS: u32 = 32;

/// Starting point of the iteration.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum InitialGuess {
    /// `2^{−⌈e/2⌉}` with `e` the exponent of the leading bit of `r²`.
    PowerOfTwo,
    Given(f64),
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct NewtonResult {
    pub value: f64,
    /// Result with `frac_bits` fractional bits.
    pub raw: u128,
    /// Updates that moved the iterate by more than one ulp.
    pub iterations: u32,
    pub initial: f64,
}

fn to_raw(x: f64, frac_bits: u32) -> u128 {
    (x * 2f64.powi(frac_bits as i32)).floor() as u128
}

/// Iterate `a ← a(3 − a² r²)/2` on `frac_bits`-bit fixed point until an update
/// changes `a` by at most one ulp.
///
/// `r2` is truncated to the fixed-point grid. The product `a² r²` is kept at
/// `2·frac_bits` fractional bits before the final multiply, and `r²` must stay
/// below `2^{100 − frac_bits}`.
pub fn newton_invsqrt(r2: f64, frac_bits: u32, guess: InitialGuess) -> Result<NewtonResult> {
    if frac_bits == 0 || frac_bits > 40 {
        return Err(Error::InvalidArgument(format!("fractional bits {frac_bits} outside 1..=40")));
    }
    if !r2.is_finite() || r2 < 0.0 {
        return Err(Error::InvalidArgument(format!("r² = {r2}")));
    }
    let f = frac_bits;
    if r2 >= 2f64.powi(100 - f as i32) {
        return Err(Error::InvalidArgument(format!("r² = {r2} overflows the fixed-point range")));
    }
    let r2_raw = to_raw(r2, f);
    if r2_raw == 0 {
        return Err(Error::SingularInput);
    }
    let initial = match guess {
        InitialGuess::PowerOfTwo => {
            let e = (127 - r2_raw.leading_zeros()) as i32 - f as i32;
            2f64.powi(-(e as f64 / 2.0).ceil() as i32)
        }
        InitialGuess::Given(a) => a,
    };
    let basin = initial * initial * (r2_raw as f64 / 2f64.powi(f as i32));
    if !(initial > 0.0) || !(basin > 0.0 && basin < 3.0) {
        return Err(Error::OutsideBasin(basin));
    }
    let mut a = to_raw(initial, f) as i128;
    if a == 0 {
        return Err(Error::OutsideBasin(basin));
    }
    let three = 3i128 << (2 * f);
    let mut iterations = 0;
    for _ in 0..200 {
        // a·r²·a is exact at 3f fractional bits; keep 2f
        let y = (a * r2_raw as i128 * a) >> f;
        let next = (a * (three - y)) >> (2 * f + 1);
        if next <= 0 {
            return Err(Error::OutsideBasin(basin));
        }
        let step = (next - a).abs();
        a = next;
        if step <= 1 {
            break;
        }
        iterations += 1;
    }
    Ok(NewtonResult { value: a as f64 / 2f64.powi(f as i32), raw: a as u128, iterations, initial })
}

/// Most iterations over `r² = 2^k`, `k ∈ [−span, span]`.
pub fn worst_iterations(frac_bits: u32, span: i32) -> Result<u32> {
    (-span..=span)
        .map(|k| newton_invsqrt(2f64.powi(k), frac_bits, InitialGuess::PowerOfTwo).map(|r| r.iterations))
        .try_fold(0, |m, r| r.map(|i| m.max(i)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixed_point_at_one() {
        let r = newton_invsqrt(1.0, 32, InitialGuess::Given(1.0)).unwrap();
        assert_eq!((r.value, r.iterations), (1.0, 0));
    }

    #[test]
    fn four_gives_half() {
        let r = newton_invsqrt(4.0, 32, InitialGuess::PowerOfTwo).unwrap();
        assert!((r.value - 0.5).abs() <= 2f64.powi(-32));
    }

    #[test]
    fn sweep_converges_quickly() {
        assert!(worst_iterations(32, 20).unwrap() <= 5);
        for k in -20..=20 {
            let r2 = (2f64.powi(k) * 1.37 * 2f64.powi(32)).floor() / 2f64.powi(32);
            let r = newton_invsqrt(r2, 32, InitialGuess::PowerOfTwo).unwrap();
            assert!((r.value - 1.0 / r2.sqrt()).abs() < 1e-7 * (1.0 / r2.sqrt()).max(1.0), "r² = {r2}");
        }
    }

    #[test]
    fn errors() {
        assert_eq!(newton_invsqrt(0.0, 32, InitialGuess::PowerOfTwo), Err(Error::SingularInput));
        assert!(matches!(newton_invsqrt(4.0, 32, InitialGuess::Given(1.0)), Err(Error::OutsideBasin(_))));
    }
}
