//! Upper branch of the Lambert W function by Halley iteration.

use std::f64::consts::E;

use super::HardCoreError;

const MAX_ITERATIONS: usize = 64;

/// `W(x)`: the `w >= -1` with `w·e^w = x`, for `x >= -1/e`.
///
/// Iterates until `|w·e^w - x| <= 1e-12·max(1, |x|)` or the iterate stops moving.
pub fn lambert_w(x: f64) -> Result<f64, HardCoreError> {
    let branch_point = -1.0 / E;
    if x.is_nan() || x < branch_point {
        return Err(HardCoreError::LambertDomain(x));
    }
    if x == 0.0 {
        return Ok(0.0);
    }
    if x == branch_point {
        return Ok(-1.0);
    }
    if x.is_infinite() {
        return Ok(f64::INFINITY);
    }
    let tol = 1e-12 * x.abs().max(1.0);
    let mut w = initial_guess(x);
    for _ in 0..MAX_ITERATIONS {
        let ew = w.exp();
        let f = w * ew - x;
        if f.abs() <= tol * 0.25 {
            break;
        }
        let w1 = w + 1.0;
        let denom = ew * w1 - (w + 2.0) * f / (2.0 * w1);
        let next = w - f / denom;
        // the upper branch never goes below -1
        let next = if next <= -1.0 { (w - 1.0) / 2.0 } else { next };
        if next == w {
            break;
        }
        w = next;
    }
    Ok(w)
}

fn initial_guess(x: f64) -> f64 {
    if x >= 0.0 {
        if x > 3.0 {
            let l1 = x.ln();
            l1 - l1.ln()
        } else {
            (1.0 + x).ln()
        }
    } else {
        // series about the branch point
        let p = (2.0 * (E * x + 1.0)).max(0.0).sqrt();
        -1.0 + p - p * p / 3.0 + 11.0 / 72.0 * p * p * p
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn special_values() {
        assert_eq!(lambert_w(0.0).unwrap(), 0.0);
        assert!((lambert_w(E).unwrap() - 1.0).abs() < 1e-12);
        assert!((lambert_w(1.0).unwrap() - 0.567_143_290_409_783_8).abs() < 1e-12);
        assert_eq!(lambert_w(-1.0 / E).unwrap(), -1.0);
        assert!(matches!(
            lambert_w(-0.5),
            Err(HardCoreError::LambertDomain(_))
        ));
        assert!(lambert_w(f64::NAN).is_err());
    }

    #[test]
    fn residuals_across_range() {
        for &x in &[-0.367, -0.3, -0.1, 1e-10, 0.5, 2.0, 10.0, 1e3, 1e6, 1e12] {
            let w = lambert_w(x).unwrap();
            assert!(
                (w * w.exp() - x).abs() <= 1e-12 * x.abs().max(1.0),
                "x={x} w={w}"
            );
        }
    }
}
