//! Real Gamma function and exact-at-integers trigonometry in units of π.

use std::f64::consts::PI;

const LANCZOS_G: f64 = 7.0;
const LANCZOS_COEF: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

fn factorial(n: u32) -> f64 {
    (1..=n).fold(1.0, |acc, k| acc * k as f64)
}

fn is_integer(x: f64) -> bool {
    x == x.trunc()
}

/// Lanczos approximation, valid for `x >= 0.5`.
fn gamma_lanczos(x: f64) -> f64 {
    let x = x - 1.0;
    let mut a = LANCZOS_COEF[0];
    for (k, c) in LANCZOS_COEF.iter().enumerate().skip(1) {
        a += c / (x + k as f64);
    }
    let t = x + LANCZOS_G + 0.5;
    // t^(x+1/2) split in two halves so large arguments do not overflow early
    let half = t.powf(0.5 * (x + 0.5));
    (2.0 * PI).sqrt() * half * (half * (-t).exp()) * a
}

/// `Γ(x)` for real `x`.  Poles return `NaN`.
pub fn gamma(x: f64) -> f64 {
    if is_integer(x) {
        if x <= 0.0 {
            return f64::NAN;
        }
        if x <= 171.0 {
            return factorial(x as u32 - 1);
        }
        return f64::INFINITY;
    }
    if x < 0.5 {
        PI / (sin_pi(x) * gamma_lanczos(1.0 - x))
    } else {
        gamma_lanczos(x)
    }
}

/// `1/Γ(x)`, an entire function: zero at the non-positive integers.
pub fn rgamma(x: f64) -> f64 {
    if is_integer(x) && x <= 0.0 {
        return 0.0;
    }
    if x < 0.5 {
        sin_pi(x) * gamma_lanczos(1.0 - x) / PI
    } else {
        1.0 / gamma(x)
    }
}

/// `sin(πx)`, exactly zero at integers.
pub fn sin_pi(x: f64) -> f64 {
    if is_integer(x) {
        return 0.0;
    }
    // reduce to r in [-1, 1]
    let r = x - 2.0 * (0.5 * x).round();
    if r > 0.5 {
        (PI * (1.0 - r)).sin()
    } else if r < -0.5 {
        -(PI * (1.0 + r)).sin()
    } else {
        (PI * r).sin()
    }
}

/// `cos(πx)`, exactly zero at half-integers.
pub fn cos_pi(x: f64) -> f64 {
    sin_pi(x + 0.5)
}
