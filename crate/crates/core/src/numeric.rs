//! Float conversions for arbitrary-precision values.
//!
//! `BigUint::to_f64` saturates to infinity once a value outgrows the f64
//! range, which would turn exact moment ratios into `inf/inf`.  The helpers
//! here rescale by powers of two first, so results stay accurate (relative
//! error ~2⁻⁶³) regardless of operand size.

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

/// `num / den` as an f64, correct to ~1 ulp for ratios of any magnitude.
pub(crate) fn ratio_to_f64(num: &BigUint, den: &BigUint) -> f64 {
    assert!(!den.is_zero(), "ratio_to_f64: zero denominator");
    if num.is_zero() {
        return 0.0;
    }
    let nb = num.bits() as i64;
    let db = den.bits() as i64;
    // Scale so the integer quotient carries ~64 significant bits.
    let shift = 64 - (nb - db);
    let q = if shift >= 0 {
        (num << shift as u64) / den
    } else {
        num / (den << (-shift) as u64)
    };
    let qf = q.to_f64().expect("quotient was scaled into f64 range");
    // powi(2, -shift) is exact (power of two), so only q's floor truncation
    // and the final multiply round.
    qf * 2f64.powi(-shift as i32)
}

/// Natural log of a positive big integer.
pub(crate) fn ln_biguint(v: &BigUint) -> f64 {
    assert!(!v.is_zero(), "ln_biguint: log of zero");
    let bits = v.bits();
    if bits <= 900 {
        v.to_f64().expect("fits f64 range").ln()
    } else {
        let shift = bits - 64;
        let top = (v >> shift).to_f64().expect("64-bit head fits f64");
        top.ln() + shift as f64 * std::f64::consts::LN_2
    }
}
