//! Parameters of the flaw-resampling algorithm and the checklist of the
//! hypotheses under which its guarantees hold.

use serde::Serialize;

use super::ResampleError;
use crate::hardcore::{derive_occupancy_certificate, DerivedCertificate};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// λ and ℓ from `Δ`, `t` and `ε`.
    Theorem,
    /// λ, ℓ and the list size supplied by the user.
    Manual,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Hypothesis {
    pub name: &'static str,
    pub holds: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct Params {
    pub mode: Mode,
    pub delta_max: usize,
    pub k: usize,
    pub t: f64,
    pub epsilon: Option<f64>,
    pub lambda: f64,
    pub ell: f64,
    pub a: f64,
    /// The certificate used for `q`; absent when `r` is undefined.
    pub certificate: Option<DerivedCertificate>,
    pub r: Option<f64>,
    /// Computed list size in theorem mode, the user's in manual mode.
    pub q: Option<f64>,
    /// `(1+ε)Δ/log(Δ/√t)`, the target list size.
    pub q_target: Option<f64>,
    pub psi: f64,
    pub psi_b: f64,
    pub psi_u: f64,
    pub delta: f64,
    pub hypotheses: Vec<Hypothesis>,
}

fn check_common(delta_max: usize, k: usize, t: f64) -> Result<(), ResampleError> {
    if k < 3 {
        return Err(ResampleError::Domain(format!(
            "k must be at least 3 (got {k})"
        )));
    }
    if !(t >= 0.0 && t.is_finite()) {
        return Err(ResampleError::Domain(format!(
            "t must be a finite value >= 0 (got {t})"
        )));
    }
    if delta_max < 2 {
        return Err(ResampleError::Domain(format!(
            "maximum degree must be at least 2 (got {delta_max})"
        )));
    }
    Ok(())
}

/// `r = (λ/(1+λ))·ℓ/(1-√(7 log Δ/ℓ))`, defined only when `ℓ > 7 log Δ`.
pub fn r_value(lambda: f64, ell: f64, delta_max: usize) -> Option<f64> {
    let ratio = 7.0 * (delta_max as f64).ln() / ell;
    (ratio < 1.0).then(|| (lambda / (1.0 + lambda)) * ell / (1.0 - ratio.sqrt()))
}

/// Parameters from `Δ`, `k`, `t` and `ε`: `log(1+λ) = 1/(a log(Δ/√t))` and
/// `ℓ = (40a/log(Δ/√t))(Δ/√t)^{ε/(1+ε)}`.
pub fn derive_params(
    delta_max: usize,
    k: usize,
    t: f64,
    epsilon: f64,
) -> Result<Params, ResampleError> {
    check_common(delta_max, k, t)?;
    if !(epsilon > 0.0 && epsilon.is_finite()) {
        return Err(ResampleError::Domain(format!(
            "epsilon must be positive (got {epsilon})"
        )));
    }
    let a = a_value(k, t);
    if a == 0.0 || t == 0.0 {
        return Err(ResampleError::Domain(
            "theorem mode needs t > 0 (the fugacity is undefined at t = 0)".into(),
        ));
    }
    let scale = delta_max as f64 / t.sqrt();
    if scale <= 1.0 {
        return Err(ResampleError::Domain(format!(
            "Δ/√t = {scale} must exceed 1"
        )));
    }
    let log_scale = scale.ln();
    let lambda = (1.0 / (a * log_scale)).exp_m1();
    let ell = 40.0 * a / log_scale * scale.powf(epsilon / (1.0 + epsilon));
    let r = r_value(lambda, ell, delta_max);
    let certificate = match r {
        Some(r) => Some(derive_occupancy_certificate(
            a,
            delta_max as f64 / r,
            lambda,
        )?),
        None => None,
    };
    let q = r
        .zip(certificate.as_ref())
        .map(|(r, c)| r * c.beta_plus_gamma_d);
    build(
        Mode::Theorem,
        delta_max,
        k,
        t,
        Some(epsilon),
        lambda,
        ell,
        a,
        r,
        certificate,
        q,
    )
}

/// Parameters with user-chosen `λ`, `ℓ` and list size `q`.
pub fn manual_params(
    delta_max: usize,
    k: usize,
    t: f64,
    lambda: f64,
    ell: f64,
    q: usize,
) -> Result<Params, ResampleError> {
    check_common(delta_max, k, t)?;
    if !(lambda > 0.0 && lambda.is_finite()) {
        return Err(ResampleError::Domain(format!(
            "lambda must be positive (got {lambda})"
        )));
    }
    if !(ell > 0.0 && ell.is_finite()) {
        return Err(ResampleError::Domain(format!(
            "ell must be positive (got {ell})"
        )));
    }
    let a = a_value(k, t);
    let r = r_value(lambda, ell, delta_max);
    let certificate = match r {
        Some(r) => Some(derive_occupancy_certificate(
            a,
            delta_max as f64 / r,
            lambda,
        )?),
        None => None,
    };
    build(
        Mode::Manual,
        delta_max,
        k,
        t,
        None,
        lambda,
        ell,
        a,
        r,
        certificate,
        Some(q as f64),
    )
}

fn a_value(k: usize, t: f64) -> f64 {
    (k - 3) as f64 + (2.0 * t).sqrt()
}

#[allow(clippy::too_many_arguments)]
fn build(
    mode: Mode,
    delta_max: usize,
    k: usize,
    t: f64,
    epsilon: Option<f64>,
    lambda: f64,
    ell: f64,
    a: f64,
    r: Option<f64>,
    certificate: Option<DerivedCertificate>,
    q: Option<f64>,
) -> Result<Params, ResampleError> {
    let psi = 4.0 * (1.0 + ell * lambda) / (1.0 + ell * lambda + 4.0 * t * lambda);
    let d = delta_max as f64;
    let log_d = d.ln();
    let scale = d / t.sqrt();
    let q_target = epsilon
        .filter(|_| t > 0.0 && scale > 1.0)
        .map(|eps| (1.0 + eps) * d / scale.ln());

    let mut hypotheses = vec![
        Hypothesis {
            name: "delta_at_least_64",
            holds: delta_max >= 64,
            detail: format!("Δ = {delta_max}"),
        },
        Hypothesis {
            name: "ell_above_7_log_delta",
            holds: ell > 7.0 * log_d,
            detail: format!("ℓ = {ell:.6}, 7 log Δ = {:.6}", 7.0 * log_d),
        },
        Hypothesis {
            name: "t_at_most_ell_over_40",
            holds: t <= ell / 40.0,
            detail: format!("t = {t}, ℓ/40 = {:.6}", ell / 40.0),
        },
    ];
    let log1 = lambda.ln_1p();
    let damp = 1.0 - a / 2.0 * log1;
    let needed = (8.0 * d.powi(4)).ln() / (log1 * damp);
    hypotheses.push(Hypothesis {
        name: "ell_over_8_forces_large_z",
        holds: damp > 0.0 && ell / 8.0 >= needed,
        detail: format!("ℓ/8 = {:.6}, required {:.6}", ell / 8.0, needed),
    });
    if let Some(eps) = epsilon {
        let cap = d.powf(2.0 * eps / (1.0 + 2.0 * eps)) / (log_d * log_d);
        hypotheses.push(Hypothesis {
            name: "t_within_fan_budget",
            holds: t <= cap,
            detail: format!("t = {t}, Δ^(2ε/(1+2ε))/(log Δ)² = {cap:.6}"),
        });
    }
    if let (Mode::Theorem, Some(target)) = (mode, q_target) {
        hypotheses.push(match q {
            Some(q) => Hypothesis {
                name: "q_within_target",
                holds: q <= target,
                detail: format!(
                    "q = {q:.6}, (1+ε)Δ/log(Δ/√t) = {target:.6}, margin {:.6}",
                    target - q
                ),
            },
            None => Hypothesis {
                name: "q_within_target",
                holds: false,
                detail: "q undefined because ℓ <= 7 log Δ".into(),
            },
        });
    }
    Ok(Params {
        mode,
        delta_max,
        k,
        t,
        epsilon,
        lambda,
        ell,
        a,
        certificate,
        r,
        q,
        q_target,
        psi,
        psi_b: psi / (4.0 * d.powi(3)),
        psi_u: psi * lambda / (1.0 + ell * lambda),
        delta: 0.25,
        hypotheses,
    })
}

impl Params {
    /// Upper bound on `T0` for `n` vertices: `log2 Z̃ + Σ log2(1+ψ_B) + log2 max_S 1/Πψ_f`,
    /// with `Z̃ <= (1+(Δ+max(Δ,q))λ)^n` and at most `nΔ` flaws of type `U`.
    pub fn t0_bound(&self, n: usize) -> f64 {
        let n = n as f64;
        let d = self.delta_max as f64;
        let list = self.q.map_or(d, |q| q.ceil().max(d));
        n * (1.0 + (d + list) * self.lambda).log2()
            + n * self.psi_b.ln_1p() / std::f64::consts::LN_2
            + n * (1.0 / self.psi_b).log2().max(0.0)
            + n * d * (1.0 / self.psi_u).log2().max(0.0)
    }

    /// Default phase-one budget: `max(2·T0, 10⁴)` steps.
    pub fn step_budget(&self, n: usize) -> u64 {
        (2.0 * self.t0_bound(n)).ceil().max(1e4) as u64
    }

    pub fn failed_hypotheses(&self) -> Vec<&'static str> {
        self.hypotheses
            .iter()
            .filter(|h| !h.holds)
            .map(|h| h.name)
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fan_order_three_half_gives_a_one() {
        let p = derive_params(1000, 3, 0.5, 1.0).unwrap();
        assert!((p.a - 1.0).abs() < 1e-15);
        assert!(((1.0 + p.lambda).ln() - 1.0 / (1000.0 / 0.5f64.sqrt()).ln()).abs() < 1e-15);
    }

    #[test]
    fn t_zero_psi_values() {
        let p = manual_params(10, 3, 0.0, 0.7, 5.0, 11).unwrap();
        assert_eq!(p.psi, 4.0);
        assert!((p.psi_b - 1.0 / 1000.0).abs() < 1e-18);
        assert!((p.psi_u - 4.0 * 0.7 / (1.0 + 5.0 * 0.7)).abs() < 1e-15);
    }

    #[test]
    fn psi_b_band() {
        for (t, ell, lambda) in [(0.5, 40.0, 0.1), (1.0, 40.0, 2.0), (2.0, 400.0, 0.01)] {
            let p = manual_params(100, 4, t, lambda, ell, 50).unwrap();
            assert!(p.t <= p.ell / 40.0);
            let d3 = 1e6;
            assert!(p.psi_b <= 1.0 / d3 + 1e-18);
            assert!(p.psi_b >= std::f64::consts::E / (3.0 * d3));
        }
    }

    #[test]
    fn t_equal_to_ell_is_flagged() {
        let p = manual_params(100, 4, 5.0, 1.0, 5.0, 50).unwrap();
        assert!(p.failed_hypotheses().contains(&"t_at_most_ell_over_40"));
    }

    #[test]
    fn domain_errors() {
        assert!(derive_params(100, 2, 0.5, 1.0).is_err());
        assert!(derive_params(100, 3, -1.0, 1.0).is_err());
        assert!(derive_params(100, 3, 0.5, 0.0).is_err());
        assert!(derive_params(100, 3, 0.0, 1.0).is_err());
    }

    #[test]
    fn q_equals_closed_form() {
        let p = derive_params(1 << 20, 4, 2.0, 1.0).unwrap();
        let r = p.r.unwrap();
        let c = p.certificate.unwrap();
        let q = r * (c.certificate.beta + c.certificate.gamma * p.delta_max as f64 / r);
        assert!((q - p.q.unwrap()).abs() < 1e-9 * q);
    }
}
