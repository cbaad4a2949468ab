use alloc::vec::Vec;

use num_traits::Float;

use super::tree::is_dependent;
use super::ClassifyError;
use crate::equations::{ks_scale, residual_table, EquationId};
use crate::functions::CFunction;
use crate::{Setting, C64};

#[derive(Debug, Clone, PartialEq)]
pub struct LemmaCheck {
    pub name: &'static str,
    pub value: f64,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct LemmaReport {
    pub checks: Vec<LemmaCheck>,
}

impl LemmaReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn get(&self, name: &str) -> Option<&LemmaCheck> {
        self.checks.iter().find(|c| c.name == name)
    }

    fn push(&mut self, name: &'static str, value: f64, passed: bool) {
        self.checks.push(LemmaCheck {
            name,
            value,
            passed,
        });
    }
}

fn preconditions(
    setting: &Setting,
    eq: EquationId,
    f: &CFunction,
    g: &CFunction,
) -> Result<f64, ClassifyError> {
    let t = residual_table(
        setting.semigroup(),
        setting.sigma(),
        Some(setting.measure()),
        eq,
        f,
        Some(g),
    )?;
    let res = t.iter().flatten().map(|v| v.norm()).fold(0.0, f64::max);
    let scale = ks_scale(setting.measure(), f, g);
    if res > setting.tol().residual_eps * scale {
        return Err(ClassifyError::NotASolution { residual: res });
    }
    if is_dependent(setting, f, g) {
        return Err(ClassifyError::PreconditionViolation(
            "f and g are linearly dependent".into(),
        ));
    }
    Ok(scale)
}

/// Max over `x, y` of `|f(xσ(y))·M_g − [f(x)g(y) + s·f(y)g(x)]·∫g + s·g(xσ(y))·M_f|`
/// with `s = −1` for the subtraction law and `s = +1` for the addition law.
fn two_sided_identity(setting: &Setting, f: &CFunction, g: &CFunction, sign: f64) -> f64 {
    let s = setting.semigroup();
    let sigma = setting.sigma();
    let (int_g, m_f, m_g) = (
        setting.integral(g),
        setting.double_moment(f),
        setting.double_moment(g),
    );
    let sg = C64::new(sign, 0.0);
    let mut worst: f64 = 0.0;
    for x in 0..s.len() {
        for y in 0..s.len() {
            let a = s.op(x, sigma.apply(y));
            let v = f[a] * m_g - (f[x] * g[y] + sg * f[y] * g[x]) * int_g + sg * g[a] * m_f;
            worst = worst.max(v.norm());
        }
    }
    worst
}

fn identity_scale(setting: &Setting, f: &CFunction, g: &CFunction) -> f64 {
    let tv = setting.measure().total_variation();
    (1.0 + f.norm_inf()) * (1.0 + g.norm_inf()) * (1.0 + tv * tv) * (1.0 + g.norm_inf() + tv)
}

/// Structural facts about an independent solution of the subtraction law:
/// `∫f dμ = 0`, the two-sided identity linking `f(xσ(y))` with the double
/// moments, `∫g dμ ≠ 0`, and that the two double moments do not both vanish.
pub fn lemma_suite_t36(
    setting: &Setting,
    f: &CFunction,
    g: &CFunction,
) -> Result<LemmaReport, ClassifyError> {
    preconditions(setting, EquationId::KSSub, f, g)?;
    let eps = setting.tol().residual_eps;
    let mut r = LemmaReport::default();
    let int_f = setting.integral(f);
    r.push(
        "integral_f_vanishes",
        int_f.norm(),
        setting.moment_is_zero(int_f, f),
    );
    let id = two_sided_identity(setting, f, g, -1.0);
    r.push(
        "two_sided_identity",
        id,
        id <= eps * identity_scale(setting, f, g),
    );
    let int_g = setting.integral(g);
    r.push(
        "integral_g_nonzero",
        int_g.norm(),
        !setting.moment_is_zero(int_g, g),
    );
    let (m_f, m_g) = (setting.double_moment(f), setting.double_moment(g));
    let both_zero = setting.moment_is_zero(m_g, g) && setting.moment_is_zero(m_f, f);
    r.push(
        "double_moments_not_both_zero",
        m_f.norm().max(m_g.norm()),
        !both_zero,
    );
    Ok(r)
}

/// Structural facts about an independent solution of the addition law.
///
/// When `∫f dμ = 0`: the two-sided identity, `∫g dμ ≠ 0`, equality of the
/// three double moments `∬f(ts)`, `∬f(σ(t)s)`, `∬f(sσ(t))`, the double
/// moments of `f` and `g` not both zero, and `M_g ≠ 0 ⇒ M_f = 0`.
///
/// Otherwise: `∫g(xσ(y)t)dμ(t) = g(x)g(y) + ξ·f(x)f(y)` with
/// `ξ = ∫ψ dμ / ∫f dμ`, `ψ` as in the classifier.
pub fn lemma_suite_t44(
    setting: &Setting,
    f: &CFunction,
    g: &CFunction,
) -> Result<LemmaReport, ClassifyError> {
    preconditions(setting, EquationId::KSAdd, f, g)?;
    let eps = setting.tol().residual_eps;
    let mut r = LemmaReport::default();
    let s = setting.semigroup();
    let sigma = setting.sigma();
    let atoms = setting.measure().atoms();
    let int_f = setting.integral(f);
    if setting.moment_is_zero(int_f, f) {
        let id = two_sided_identity(setting, f, g, 1.0);
        r.push(
            "two_sided_identity",
            id,
            id <= eps * identity_scale(setting, f, g),
        );
        let int_g = setting.integral(g);
        r.push(
            "integral_g_nonzero",
            int_g.norm(),
            !setting.moment_is_zero(int_g, g),
        );
        let dbl = |op: &dyn Fn(usize, usize) -> usize| -> C64 {
            atoms
                .iter()
                .flat_map(|&(t, wt)| atoms.iter().map(move |&(u, wu)| (t, u, wt * wu)))
                .map(|(t, u, w)| w * f[op(t, u)])
                .sum()
        };
        let plain = dbl(&|t, u| s.op(t, u));
        let left = dbl(&|t, u| s.op(sigma.apply(t), u));
        let right = dbl(&|t, u| s.op(u, sigma.apply(t)));
        let spread = (plain - left).norm().max((left - right).norm());
        let tv = setting.measure().total_variation();
        r.push(
            "double_moments_of_f_agree",
            spread,
            spread <= eps * (1.0 + f.norm_inf() * tv * tv),
        );
        let (m_f, m_g) = (setting.double_moment(f), setting.double_moment(g));
        let (zf, zg) = (
            setting.moment_is_zero(m_f, f),
            setting.moment_is_zero(m_g, g),
        );
        r.push(
            "double_moments_not_both_zero",
            m_f.norm().max(m_g.norm()),
            !(zf && zg),
        );
        r.push("m_g_nonzero_forces_m_f_zero", m_f.norm(), zg || zf);
    } else {
        let int_g = setting.integral(g);
        let mut worst_psi: f64 = 0.0;
        let psi: Vec<C64> = (0..s.len())
            .map(|y| {
                let dbl: C64 = atoms
                    .iter()
                    .map(|&(z, w)| w * setting.shifted_integral(g, s.op(y, sigma.apply(z))))
                    .sum();
                (dbl - g[y] * int_g) / int_f
            })
            .collect();
        let psi = CFunction::new(psi);
        let xi = setting.integral(&psi) / int_f;
        let k = setting.transform(g);
        for x in 0..s.len() {
            for y in 0..s.len() {
                worst_psi = worst_psi.max((k[x][y] - g[x] * g[y] - xi * f[x] * f[y]).norm());
            }
        }
        let base = 1.0 + g.norm_inf() + f.norm_inf() * Float::sqrt(xi.norm());
        let scale = base * base * (1.0 + setting.measure().total_variation());
        r.push(
            "product_identity_for_g",
            worst_psi,
            worst_psi <= eps * scale,
        );
    }
    Ok(r)
}
