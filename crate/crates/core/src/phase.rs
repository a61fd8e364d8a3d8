use std::f64::consts::TAU;

use num_complex::Complex64;

/// `ω^k` with `ω = e^{2πi/q}`. Quarter turns are returned exactly, so the
/// `q = 2` and `q = 4` transforms involve no rounding in the phases, and
/// `ω^{-k}` is always the exact conjugate of `ω^k`.
pub fn root_of_unity(q: u32, k: i64) -> Complex64 {
    let q64 = q as i64;
    let m = k.rem_euclid(q64);
    match 4 * m {
        0 => Complex64::new(1.0, 0.0),
        x if x == q64 => Complex64::new(0.0, 1.0),
        x if x == 2 * q64 => Complex64::new(-1.0, 0.0),
        x if x == 3 * q64 => Complex64::new(0.0, -1.0),
        _ if 2 * m > q64 => Complex64::from_polar(1.0, -TAU * (q64 - m) as f64 / q as f64),
        _ => Complex64::from_polar(1.0, TAU * m as f64 / q as f64),
    }
}
