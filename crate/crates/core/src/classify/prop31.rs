use alloc::format;

use super::ClassifyError;
use crate::equations::{residual_table, EquationId};
use crate::functions::{CFunction, Exponential};
use crate::{Setting, C64};

const MATCH_EPS: f64 = 1e-6;

/// Outcome of [`verify_prop31`].
#[derive(Debug, Clone, PartialEq)]
pub struct Prop31Report {
    pub integral: C64,
    /// `∫f dμ ≈ 0` exactly when `f ≈ 0`.
    pub zero_iff_integral_zero: bool,
    pub alpha: Option<C64>,
    pub chi: Option<Exponential>,
    /// `max |f − [∫χdμ]χ|`.
    pub reconstruction_residual: Option<f64>,
    /// `max |f(xσ(y)) − α f(x) f(y)|`.
    pub pointwise_residual: Option<f64>,
}

impl Prop31Report {
    pub fn passed(&self) -> bool {
        self.zero_iff_integral_zero
    }
}

/// Checks a solution of `∫f(xσ(y)t)dμ(t) = f(x)f(y)` against the form
/// `f = [∫χdμ]χ` with `χ` a σ-invariant exponential, and recovers `χ`.
pub fn verify_prop31(setting: &Setting, f: &CFunction) -> Result<Prop31Report, ClassifyError> {
    let eps = setting.tol().residual_eps;
    let fnorm = f.norm_inf();
    let t = residual_table(
        setting.semigroup(),
        setting.sigma(),
        Some(setting.measure()),
        EquationId::KMultSigma,
        f,
        None,
    )?;
    let res = t.iter().flatten().map(|v| v.norm()).fold(0.0, f64::max);
    let scale = (fnorm * fnorm.max(setting.measure().total_variation())).max(1.0);
    if res > eps * scale {
        return Err(ClassifyError::NotASolution { residual: res });
    }
    let integral = setting.integral(f);
    let int_zero = setting.moment_is_zero(integral, f);
    let f_zero = fnorm <= eps;
    if f_zero || int_zero {
        let report = Prop31Report {
            integral,
            zero_iff_integral_zero: f_zero == int_zero,
            alpha: None,
            chi: None,
            reconstruction_residual: None,
            pointwise_residual: None,
        };
        if !report.zero_iff_integral_zero {
            return Err(ClassifyError::InternalContradiction(format!(
                "nonzero solution with vanishing integral {integral}"
            )));
        }
        return Ok(report);
    }
    let denom = setting.double_moment(f);
    if setting.moment_is_zero(denom, f) {
        return Err(ClassifyError::InternalContradiction(
            "double moment vanishes for a nonzero solution".into(),
        ));
    }
    let alpha = integral / denom;
    let candidate = f.scale(alpha);
    let chi = setting
        .exponentials()
        .iter()
        .find(|e| {
            e.function().max_diff(&candidate) <= MATCH_EPS && e.is_sigma_invariant(setting.sigma())
        })
        .cloned()
        .ok_or_else(|| {
            ClassifyError::InternalContradiction("αf is not a σ-invariant exponential".into())
        })?;
    let m = setting.integral(chi.function());
    let recon = chi.function().scale(m).max_diff(f);
    let s = setting.semigroup();
    let sigma = setting.sigma();
    let mut pointwise: f64 = 0.0;
    for x in 0..s.len() {
        for y in 0..s.len() {
            pointwise = pointwise.max((f[s.op(x, sigma.apply(y))] - alpha * f[x] * f[y]).norm());
        }
    }
    let tol = eps * (1.0 + fnorm) * (1.0 + fnorm * alpha.norm());
    if recon > tol || pointwise > tol {
        return Err(ClassifyError::InternalContradiction(format!(
            "recovered exponential does not reproduce f (residuals {recon:e}, {pointwise:e})"
        )));
    }
    Ok(Prop31Report {
        integral,
        zero_iff_integral_zero: true,
        alpha: Some(alpha),
        chi: Some(chi),
        reconstruction_residual: Some(recon),
        pointwise_residual: Some(pointwise),
    })
}
