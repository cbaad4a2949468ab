use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::decompose::{
    decompose_sine_addition_with, decompose_sine_subtraction_with, SineAddDecomposition,
    SineSubDecomposition,
};
use super::family::{build_pair, validate_descriptor, FamilyDescriptor};
use super::prop31::verify_prop31;
use super::ClassifyError;
use crate::equations::{ks_scale, residual_table, EquationId};
use crate::functions::{sigma_pullback, CFunction};
use crate::linalg::{rank, ComplexMatrix};
use crate::{Setting, C64};

/// The path a classifier took and the quantities it computed on the way.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ClassificationTrace {
    pub branches: Vec<&'static str>,
    pub dependent: Option<bool>,
    pub integral_f: Option<C64>,
    pub integral_g: Option<C64>,
    pub m_f: Option<C64>,
    pub m_g: Option<C64>,
    pub gamma: Option<C64>,
    pub beta: Option<C64>,
    pub delta: Option<C64>,
    pub alpha: Option<C64>,
    pub xi: Option<C64>,
    pub integral_psi: Option<C64>,
    pub psi: Option<CFunction>,
}

impl ClassificationTrace {
    /// Recorded scalar quantities by name, in a fixed order.
    pub fn constants(&self) -> Vec<(&'static str, C64)> {
        [
            ("integral_f", self.integral_f),
            ("integral_g", self.integral_g),
            ("m_f", self.m_f),
            ("m_g", self.m_g),
            ("gamma", self.gamma),
            ("beta", self.beta),
            ("delta", self.delta),
            ("alpha", self.alpha),
            ("xi", self.xi),
            ("integral_psi", self.integral_psi),
        ]
        .into_iter()
        .filter_map(|(k, v)| v.map(|v| (k, v)))
        .collect()
    }
}

fn check_solution(
    setting: &Setting,
    eq: EquationId,
    f: &CFunction,
    g: &CFunction,
) -> Result<(), ClassifyError> {
    let t = residual_table(
        setting.semigroup(),
        setting.sigma(),
        Some(setting.measure()),
        eq,
        f,
        Some(g),
    )?;
    let res = t.iter().flatten().map(|v| v.norm()).fold(0.0, f64::max);
    if res > setting.tol().residual_eps * ks_scale(setting.measure(), f, g) {
        return Err(ClassifyError::NotASolution { residual: res });
    }
    Ok(())
}

pub(crate) fn is_dependent(setting: &Setting, f: &CFunction, g: &CFunction) -> bool {
    ComplexMatrix::from_rows(&[f.values().to_vec(), g.values().to_vec()])
        .map_or(true, |m| rank(&m, setting.tol()) < 2)
}

fn ratio(f: &CFunction, g: &CFunction) -> C64 {
    let num: C64 = f
        .values()
        .iter()
        .zip(g.values())
        .map(|(a, b)| a.conj() * b)
        .sum();
    let den: f64 = f.values().iter().map(|a| a.norm_sqr()).sum();
    num / den
}

fn contradiction(msg: &str) -> ClassifyError {
    ClassifyError::InternalContradiction(msg.into())
}

fn products_vanish(setting: &Setting, f: &CFunction) -> bool {
    let s = setting.semigroup();
    let bound =
        setting.tol().residual_eps * (1.0 + f.norm_inf() * setting.measure().total_variation());
    (0..s.len())
        .all(|x| (0..s.len()).all(|y| setting.shifted_integral(f, s.op(x, y)).norm() <= bound))
}

/// Validates the recovered descriptor and checks it rebuilds `(f, g)`.
fn round_trip(
    setting: &Setting,
    desc: FamilyDescriptor,
    f: &CFunction,
    g: &CFunction,
    trace: ClassificationTrace,
) -> Result<(FamilyDescriptor, ClassificationTrace), ClassifyError> {
    let report = validate_descriptor(setting, &desc);
    if !report.passed() {
        let failed: Vec<&str> = report.failures().map(|l| l.name).collect();
        return Err(ClassifyError::InternalContradiction(format!(
            "recovered {} fails {}",
            desc.tag(),
            failed.join(", ")
        )));
    }
    let (f2, g2) = build_pair(setting, &desc);
    let err = f2.max_diff(f).max(g2.max_diff(g));
    if err > setting.tol().residual_eps * (1.0 + f.norm_inf() + g.norm_inf()) {
        return Err(ClassifyError::InternalContradiction(format!(
            "recovered {} rebuilds the pair only to {err:e}",
            desc.tag()
        )));
    }
    Ok((desc, trace))
}

fn unrepresentable(note: String) -> ClassifyError {
    ClassifyError::Unrepresentable(note)
}

/// Recovers the family of a solution of the subtraction law.
pub fn classify_t36(
    setting: &Setting,
    f: &CFunction,
    g: &CFunction,
) -> Result<(FamilyDescriptor, ClassificationTrace), ClassifyError> {
    check_solution(setting, EquationId::KSSub, f, g)?;
    let mut tr = ClassificationTrace::default();
    let tol = setting.tol();
    if f.norm_inf() <= tol.residual_eps {
        tr.branches.push("f_zero");
        return round_trip(setting, FamilyDescriptor::T36_1 { g: g.clone() }, f, g, tr);
    }
    let dependent = is_dependent(setting, f, g);
    tr.dependent = Some(dependent);
    if dependent {
        tr.branches.push("dependent");
        if !products_vanish(setting, f) {
            return Err(contradiction(
                "dependent pair with nonvanishing product integrals",
            ));
        }
        let k = ratio(f, g);
        return round_trip(
            setting,
            FamilyDescriptor::T36_2 { f: f.clone(), k },
            f,
            g,
            tr,
        );
    }
    let int_f = setting.integral(f);
    let int_g = setting.integral(g);
    tr.integral_f = Some(int_f);
    tr.integral_g = Some(int_g);
    if !setting.moment_is_zero(int_f, f) {
        return Err(contradiction("independent solution with ∫f dμ ≠ 0"));
    }
    if setting.moment_is_zero(int_g, g) {
        return Err(contradiction("independent solution with ∫g dμ = 0"));
    }
    let m_g = setting.double_moment(g);
    let m_f = setting.double_moment(f);
    tr.m_g = Some(m_g);
    tr.m_f = Some(m_f);
    let (s, sigma, exps) = (setting.semigroup(), setting.sigma(), setting.exponentials());

    if setting.moment_is_zero(m_g, g) {
        tr.branches.push("m_g_zero");
        if setting.moment_is_zero(m_f, f) {
            return Err(contradiction("both double moments vanish"));
        }
        let gamma = int_g / m_f;
        tr.gamma = Some(gamma);
        let desc = match decompose_sine_subtraction_with(s, sigma, exps, g, &f.scale(gamma), tol)? {
            SineSubDecomposition::TwoCharacter { chi, b, c } => {
                FamilyDescriptor::T36_3 { chi, gamma, b, c }
            }
            SineSubDecomposition::CharacterPlusPhi { chi, phi, .. } => {
                FamilyDescriptor::T36_6 { chi, phi, gamma }
            }
            SineSubDecomposition::Unrepresentable { note } => return Err(unrepresentable(note)),
        };
        return round_trip(setting, desc, f, g, tr);
    }
    if setting.moment_is_zero(m_f, f) {
        tr.branches.push("m_f_zero");
        let beta = int_g / m_g;
        tr.beta = Some(beta);
        let desc = match decompose_sine_subtraction_with(s, sigma, exps, f, &g.scale(beta), tol)? {
            SineSubDecomposition::TwoCharacter { chi, b, c } => {
                FamilyDescriptor::T36_4 { chi, beta, b, c }
            }
            SineSubDecomposition::CharacterPlusPhi { chi, phi, c } => {
                FamilyDescriptor::T36_8 { chi, phi, c }
            }
            SineSubDecomposition::Unrepresentable { note } => return Err(unrepresentable(note)),
        };
        return round_trip(setting, desc, f, g, tr);
    }
    tr.branches.push("both_moments_nonzero");
    let delta = int_g / m_g;
    let alpha = m_f / m_g;
    tr.delta = Some(delta);
    tr.alpha = Some(alpha);
    let shifted = f.combine(C64::new(1.0, 0.0), g, -alpha);
    let desc =
        match decompose_sine_subtraction_with(s, sigma, exps, &shifted, &g.scale(delta), tol)? {
            SineSubDecomposition::TwoCharacter { chi, b, c } => FamilyDescriptor::T36_5 {
                chi,
                alpha,
                delta,
                b,
                c,
            },
            SineSubDecomposition::CharacterPlusPhi { chi, phi, c } => FamilyDescriptor::T36_7 {
                chi,
                phi,
                alpha,
                c,
                delta,
            },
            SineSubDecomposition::Unrepresentable { note } => return Err(unrepresentable(note)),
        };
    round_trip(setting, desc, f, g, tr)
}

/// `ψ(y) = [∬g(yσ(s)t)dμ(s)dμ(t) − g(y)∫g dμ] / ∫f dμ`.
fn psi(setting: &Setting, f: &CFunction, g: &CFunction) -> CFunction {
    let s = setting.semigroup();
    let sigma = setting.sigma();
    let int_f = setting.integral(f);
    let int_g = setting.integral(g);
    let values = (0..s.len())
        .map(|y| {
            let dbl: C64 = setting
                .measure()
                .atoms()
                .iter()
                .map(|&(z, w)| w * setting.shifted_integral(g, s.op(y, sigma.apply(z))))
                .sum();
            (dbl - g[y] * int_g) / int_f
        })
        .collect();
    CFunction::new(values)
}

/// Recovers the family of a solution of the addition law.
pub fn classify_t44(
    setting: &Setting,
    f: &CFunction,
    g: &CFunction,
) -> Result<(FamilyDescriptor, ClassificationTrace), ClassifyError> {
    check_solution(setting, EquationId::KSAdd, f, g)?;
    let mut tr = ClassificationTrace::default();
    let tol = setting.tol();
    if f.norm_inf() <= tol.residual_eps {
        tr.branches.push("f_zero");
        return round_trip(setting, FamilyDescriptor::T44_1 { g: g.clone() }, f, g, tr);
    }
    let dependent = is_dependent(setting, f, g);
    tr.dependent = Some(dependent);
    if dependent {
        let delta = ratio(f, g);
        tr.delta = Some(delta);
        if g.norm_inf() <= tol.residual_eps * (1.0 + f.norm_inf()) {
            tr.branches.push("g_zero");
            if !products_vanish(setting, f) {
                return Err(contradiction("g = 0 with nonvanishing product integrals"));
            }
            return round_trip(setting, FamilyDescriptor::T44_2 { f: f.clone() }, f, g, tr);
        }
        tr.branches.push("dependent");
        let report = verify_prop31(setting, &f.scale(2.0 * delta))?;
        let chi = report.chi.ok_or_else(|| contradiction("2δf vanishes"))?;
        return round_trip(setting, FamilyDescriptor::T44_3 { chi, delta }, f, g, tr);
    }
    let int_f = setting.integral(f);
    let int_g = setting.integral(g);
    tr.integral_f = Some(int_f);
    tr.integral_g = Some(int_g);
    let (s, sigma, exps) = (setting.semigroup(), setting.sigma(), setting.exponentials());

    if setting.moment_is_zero(int_f, f) {
        if setting.moment_is_zero(int_g, g) {
            return Err(contradiction("independent solution with ∫f dμ = ∫g dμ = 0"));
        }
        let m_g = setting.double_moment(g);
        let m_f = setting.double_moment(f);
        tr.m_g = Some(m_g);
        tr.m_f = Some(m_f);
        if setting.moment_is_zero(m_g, g) {
            tr.branches.push("m_g_zero");
            if setting.moment_is_zero(m_f, f) {
                return Err(contradiction("both double moments vanish"));
            }
            let beta = int_g / m_f;
            tr.beta = Some(beta);
            let desc = match decompose_sine_addition_with(s, sigma, exps, g, &f.scale(beta), tol)? {
                SineAddDecomposition::TwoCharacter { chi1, chi2, .. } => {
                    let alpha = setting.integral(chi1.function()) * beta;
                    FamilyDescriptor::T44_4 { chi1, chi2, alpha }
                }
                SineAddDecomposition::CharacterPlusPhi { .. } => {
                    return Err(contradiction(
                        "character-plus-φ shape with vanishing double moment of g",
                    ))
                }
                SineAddDecomposition::Unrepresentable { note } => {
                    return Err(unrepresentable(note))
                }
            };
            return round_trip(setting, desc, f, g, tr);
        }
        tr.branches.push("m_g_nonzero");
        if !setting.moment_is_zero(m_f, f) {
            return Err(contradiction("both double moments nonzero"));
        }
        let alpha = int_g / m_g;
        tr.alpha = Some(alpha);
        let parity_tol = tol.residual_eps * (1.0 + f.norm_inf() + g.norm_inf());
        if sigma_pullback(f, sigma).max_diff(f) > parity_tol
            || sigma_pullback(g, sigma).max_diff(g) > parity_tol
        {
            return Err(contradiction("f or g is not σ-invariant"));
        }
        let desc = match decompose_sine_addition_with(s, sigma, exps, f, &g.scale(alpha), tol)? {
            SineAddDecomposition::TwoCharacter { chi1, chi2, c } => {
                let a = setting.integral(chi1.function()) / (2.0 * c);
                FamilyDescriptor::T44_4 {
                    chi1,
                    chi2,
                    alpha: a,
                }
            }
            SineAddDecomposition::CharacterPlusPhi { chi, phi } => {
                FamilyDescriptor::T44_5 { chi, phi }
            }
            SineAddDecomposition::Unrepresentable { note } => return Err(unrepresentable(note)),
        };
        return round_trip(setting, desc, f, g, tr);
    }

    tr.branches.push("integral_f_nonzero");
    let p = psi(setting, f, g);
    let int_psi = setting.integral(&p);
    let xi = int_psi / int_f;
    tr.integral_psi = Some(int_psi);
    tr.xi = Some(xi);
    tr.psi = Some(p.clone());
    if setting.moment_is_zero(int_psi, &p) {
        tr.branches.push("xi_zero");
        let report = verify_prop31(setting, g)?;
        let chi = report.chi.ok_or_else(|| contradiction("g vanishes"))?;
        return round_trip(
            setting,
            FamilyDescriptor::T44_6 {
                chi,
                big_phi: f.clone(),
            },
            f,
            g,
            tr,
        );
    }
    let alpha = xi.sqrt();
    tr.alpha = Some(alpha);
    let plus = verify_prop31(setting, &g.combine(C64::new(1.0, 0.0), f, alpha))?;
    let minus = verify_prop31(setting, &g.combine(C64::new(1.0, 0.0), f, -alpha))?;
    let (Some(chi1), Some(chi2)) = (plus.chi, minus.chi) else {
        return Err(contradiction("g ± αf vanishes"));
    };
    if chi1.exact_values() == chi2.exact_values() {
        return Err(contradiction("g + αf and g − αf share their exponential"));
    }
    round_trip(
        setting,
        FamilyDescriptor::T44_4 { chi1, chi2, alpha },
        f,
        g,
        tr,
    )
}

/// Dispatches on the equation: `KSSub` or `KSAdd`.
pub fn classify(
    setting: &Setting,
    eq: EquationId,
    f: &CFunction,
    g: &CFunction,
) -> Result<(FamilyDescriptor, ClassificationTrace), ClassifyError> {
    match eq {
        EquationId::KSSub => classify_t36(setting, f, g),
        EquationId::KSAdd => classify_t44(setting, f, g),
        other => Err(ClassifyError::PreconditionViolation(format!(
            "no classifier for {other}"
        ))),
    }
}
