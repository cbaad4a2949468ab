use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use super::ClassifyError;
use crate::equations::{residual_table, EquationId};
use crate::functions::{sigma_pullback, CFunction, Exponential};
use crate::{Setting, C64};

#[allow(non_camel_case_types)]
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FamilyTag {
    T36_1,
    T36_2,
    T36_3,
    T36_4,
    T36_5,
    T36_6,
    T36_7,
    T36_8,
    T44_1,
    T44_2,
    T44_3,
    T44_4,
    T44_5,
    T44_6,
}

impl FamilyTag {
    pub const ALL: [FamilyTag; 14] = [
        FamilyTag::T36_1,
        FamilyTag::T36_2,
        FamilyTag::T36_3,
        FamilyTag::T36_4,
        FamilyTag::T36_5,
        FamilyTag::T36_6,
        FamilyTag::T36_7,
        FamilyTag::T36_8,
        FamilyTag::T44_1,
        FamilyTag::T44_2,
        FamilyTag::T44_3,
        FamilyTag::T44_4,
        FamilyTag::T44_5,
        FamilyTag::T44_6,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FamilyTag::T36_1 => "T36_1",
            FamilyTag::T36_2 => "T36_2",
            FamilyTag::T36_3 => "T36_3",
            FamilyTag::T36_4 => "T36_4",
            FamilyTag::T36_5 => "T36_5",
            FamilyTag::T36_6 => "T36_6",
            FamilyTag::T36_7 => "T36_7",
            FamilyTag::T36_8 => "T36_8",
            FamilyTag::T44_1 => "T44_1",
            FamilyTag::T44_2 => "T44_2",
            FamilyTag::T44_3 => "T44_3",
            FamilyTag::T44_4 => "T44_4",
            FamilyTag::T44_5 => "T44_5",
            FamilyTag::T44_6 => "T44_6",
        }
    }

    /// The subtraction law for `T36_*`, the addition law for `T44_*`.
    pub fn equation(self) -> EquationId {
        if (self as u8) < (FamilyTag::T44_1 as u8) {
            EquationId::KSSub
        } else {
            EquationId::KSAdd
        }
    }
}

impl fmt::Display for FamilyTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FamilyTag {
    type Err = ClassifyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        FamilyTag::ALL
            .into_iter()
            .find(|t| t.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| ClassifyError::UnknownTag(s.into()))
    }
}

/// One solution family with its parameters.
///
/// Subtraction-law families (`T36_*`), with `χσ = χ∘σ` and `m = ∫χdμ`:
///
/// | tag | `f` | `g` |
/// |-----|-----|-----|
/// | 1 | `0` | any |
/// | 2 | `f` with `∫f(xyt)dμ(t) = 0` | `k·f` |
/// | 3 | `[(χ+χσ) + c(χ−χσ)]/(2γ)` | `b(χ−χσ)` |
/// | 4 | `b(χ−χσ)` | `[(χ+χσ) + c(χ−χσ)]/(2β)` |
/// | 5 | `[α(χ+χσ) + (αc+2bδ)(χ−χσ)]/(2δ)` | `[(χ+χσ) + c(χ−χσ)]/(2δ)` |
/// | 6 | `(χ − φ/m)/γ` | `φ` |
/// | 7 | `[αχ + (αc+δ)φ]/δ` | `(χ + cφ)/δ` |
/// | 8 | `φ` | `m(χ + cφ)` |
///
/// Addition-law families (`T44_*`), `mᵢ = ∫χᵢdμ`:
///
/// | tag | `f` | `g` |
/// |-----|-----|-----|
/// | 1 | `0` | any |
/// | 2 | `f` with `∫f(xyt)dμ(t) = 0` | `0` |
/// | 3 | `mχ/(2δ)` | `mχ/2` |
/// | 4 | `(m₁χ₁ − m₂χ₂)/(2α)` | `(m₁χ₁ + m₂χ₂)/2` |
/// | 5 | `φ` | `mχ` |
/// | 6 | `Φ` | `mχ` |
#[allow(non_camel_case_types)]
#[derive(Debug, Clone, PartialEq)]
pub enum FamilyDescriptor {
    T36_1 {
        g: CFunction,
    },
    T36_2 {
        f: CFunction,
        k: C64,
    },
    T36_3 {
        chi: Exponential,
        gamma: C64,
        b: C64,
        c: C64,
    },
    T36_4 {
        chi: Exponential,
        beta: C64,
        b: C64,
        c: C64,
    },
    T36_5 {
        chi: Exponential,
        alpha: C64,
        delta: C64,
        b: C64,
        c: C64,
    },
    T36_6 {
        chi: Exponential,
        phi: CFunction,
        gamma: C64,
    },
    T36_7 {
        chi: Exponential,
        phi: CFunction,
        alpha: C64,
        c: C64,
        delta: C64,
    },
    T36_8 {
        chi: Exponential,
        phi: CFunction,
        c: C64,
    },
    T44_1 {
        g: CFunction,
    },
    T44_2 {
        f: CFunction,
    },
    T44_3 {
        chi: Exponential,
        delta: C64,
    },
    T44_4 {
        chi1: Exponential,
        chi2: Exponential,
        alpha: C64,
    },
    T44_5 {
        chi: Exponential,
        phi: CFunction,
    },
    T44_6 {
        chi: Exponential,
        big_phi: CFunction,
    },
}

impl FamilyDescriptor {
    pub fn tag(&self) -> FamilyTag {
        match self {
            FamilyDescriptor::T36_1 { .. } => FamilyTag::T36_1,
            FamilyDescriptor::T36_2 { .. } => FamilyTag::T36_2,
            FamilyDescriptor::T36_3 { .. } => FamilyTag::T36_3,
            FamilyDescriptor::T36_4 { .. } => FamilyTag::T36_4,
            FamilyDescriptor::T36_5 { .. } => FamilyTag::T36_5,
            FamilyDescriptor::T36_6 { .. } => FamilyTag::T36_6,
            FamilyDescriptor::T36_7 { .. } => FamilyTag::T36_7,
            FamilyDescriptor::T36_8 { .. } => FamilyTag::T36_8,
            FamilyDescriptor::T44_1 { .. } => FamilyTag::T44_1,
            FamilyDescriptor::T44_2 { .. } => FamilyTag::T44_2,
            FamilyDescriptor::T44_3 { .. } => FamilyTag::T44_3,
            FamilyDescriptor::T44_4 { .. } => FamilyTag::T44_4,
            FamilyDescriptor::T44_5 { .. } => FamilyTag::T44_5,
            FamilyDescriptor::T44_6 { .. } => FamilyTag::T44_6,
        }
    }

    /// Scalar parameters by name.
    pub fn scalars(&self) -> Vec<(&'static str, C64)> {
        use FamilyDescriptor as D;
        match self {
            D::T36_1 { .. }
            | D::T44_1 { .. }
            | D::T44_2 { .. }
            | D::T44_5 { .. }
            | D::T44_6 { .. } => Vec::new(),
            D::T36_2 { k, .. } => alloc::vec![("k", *k)],
            D::T36_3 { gamma, b, c, .. } => alloc::vec![("gamma", *gamma), ("b", *b), ("c", *c)],
            D::T36_4 { beta, b, c, .. } => alloc::vec![("beta", *beta), ("b", *b), ("c", *c)],
            D::T36_5 {
                alpha, delta, b, c, ..
            } => {
                alloc::vec![("alpha", *alpha), ("delta", *delta), ("b", *b), ("c", *c)]
            }
            D::T36_6 { gamma, .. } => alloc::vec![("gamma", *gamma)],
            D::T36_7 {
                alpha, c, delta, ..
            } => alloc::vec![("alpha", *alpha), ("c", *c), ("delta", *delta)],
            D::T36_8 { c, .. } => alloc::vec![("c", *c)],
            D::T44_3 { delta, .. } => alloc::vec![("delta", *delta)],
            D::T44_4 { alpha, .. } => alloc::vec![("alpha", *alpha)],
        }
    }

    /// Exponential parameters by name.
    pub fn exponentials(&self) -> Vec<(&'static str, &Exponential)> {
        use FamilyDescriptor as D;
        match self {
            D::T36_1 { .. } | D::T36_2 { .. } | D::T44_1 { .. } | D::T44_2 { .. } => Vec::new(),
            D::T36_3 { chi, .. }
            | D::T36_4 { chi, .. }
            | D::T36_5 { chi, .. }
            | D::T36_6 { chi, .. }
            | D::T36_7 { chi, .. }
            | D::T36_8 { chi, .. }
            | D::T44_3 { chi, .. }
            | D::T44_5 { chi, .. }
            | D::T44_6 { chi, .. } => alloc::vec![("chi", chi)],
            D::T44_4 { chi1, chi2, .. } => alloc::vec![("chi1", chi1), ("chi2", chi2)],
        }
    }

    /// Function parameters by name.
    pub fn functions(&self) -> Vec<(&'static str, &CFunction)> {
        use FamilyDescriptor as D;
        match self {
            D::T36_1 { g } | D::T44_1 { g } => alloc::vec![("g", g)],
            D::T36_2 { f, .. } | D::T44_2 { f } => alloc::vec![("f", f)],
            D::T36_6 { phi, .. }
            | D::T36_7 { phi, .. }
            | D::T36_8 { phi, .. }
            | D::T44_5 { phi, .. } => {
                alloc::vec![("phi", phi)]
            }
            D::T44_6 { big_phi, .. } => alloc::vec![("Phi", big_phi)],
            _ => Vec::new(),
        }
    }
}

/// One constraint attached to a family, with the value it was judged on.
#[derive(Debug, Clone, PartialEq)]
pub struct ConstraintLine {
    pub name: &'static str,
    pub value: C64,
    pub expected: Option<C64>,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct ConstraintReport {
    pub lines: Vec<ConstraintLine>,
}

impl ConstraintReport {
    pub fn passed(&self) -> bool {
        self.lines.iter().all(|l| l.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &ConstraintLine> {
        self.lines.iter().filter(|l| !l.passed)
    }

    fn push(&mut self, name: &'static str, value: C64, expected: Option<C64>, passed: bool) {
        self.lines.push(ConstraintLine {
            name,
            value,
            expected,
            passed,
        });
    }
}

impl fmt::Display for ConstraintReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let failed: Vec<&str> = self.failures().map(|l| l.name).collect();
        write!(f, "failed constraints: {}", failed.join(", "))
    }
}

const ONE: C64 = C64::new(1.0, 0.0);
const ZERO: C64 = C64::new(0.0, 0.0);

fn bool_value(b: bool) -> C64 {
    if b {
        ONE
    } else {
        ZERO
    }
}

struct Checker<'a> {
    setting: &'a Setting,
    report: ConstraintReport,
}

impl Checker<'_> {
    fn eps(&self) -> f64 {
        self.setting.tol().residual_eps
    }

    fn len_ok(&mut self, name: &'static str, h: &CFunction) -> bool {
        let ok = h.len() == self.setting.len() && h.is_finite();
        self.report.push(
            name,
            C64::new(h.len() as f64, 0.0),
            Some(C64::new(self.setting.len() as f64, 0.0)),
            ok,
        );
        ok
    }

    fn exp_ok(&mut self, name: &'static str, chi: &Exponential) -> bool {
        let s = self.setting.semigroup();
        let ok = chi.len() == s.len()
            && Exponential::from_exact(s, chi.exact_values().to_vec()).is_some();
        self.report.push(name, bool_value(ok), Some(ONE), ok);
        ok
    }

    fn nonzero(&mut self, name: &'static str, v: C64) {
        let ok = v.norm() > self.eps();
        self.report.push(name, v, None, ok);
    }

    fn equal(&mut self, name: &'static str, v: C64, expected: C64) {
        let ok = (v - expected).norm() <= self.eps() * (1.0 + expected.norm());
        self.report.push(name, v, Some(expected), ok);
    }

    fn flag(&mut self, name: &'static str, ok: bool) {
        self.report.push(name, bool_value(ok), Some(ONE), ok);
    }

    fn integral(&self, h: &CFunction) -> C64 {
        self.setting.integral(h)
    }

    fn sigma_relation(&mut self, chi: &Exponential, invariant: bool) {
        let inv = chi.is_sigma_invariant(self.setting.sigma());
        if invariant {
            self.flag("chi_sigma_invariant", inv);
        } else {
            self.flag("chi_not_sigma_invariant", !inv);
        }
    }

    fn phi_checks(&mut self, chi: &Exponential, phi: &CFunction, parity: f64) {
        let tol = self.eps() * (1.0 + phi.norm_inf());
        self.report.push(
            "phi_nonzero",
            C64::new(phi.norm_inf(), 0.0),
            None,
            phi.norm_inf() > tol,
        );
        let pulled = sigma_pullback(phi, self.setting.sigma());
        let d = pulled.max_diff(&phi.scale(C64::new(parity, 0.0)));
        let name = if parity < 0.0 {
            "phi_sigma_antisymmetric"
        } else {
            "phi_sigma_symmetric"
        };
        self.report
            .push(name, C64::new(d, 0.0), Some(ZERO), d <= tol);
        let r = max_residual(
            self.setting,
            EquationId::SpecialSineAdd,
            phi,
            Some(chi.function()),
        );
        self.report.push(
            "phi_special_sine_addition",
            C64::new(r, 0.0),
            Some(ZERO),
            r <= tol,
        );
    }

    fn annihilates_products(&mut self, f: &CFunction) {
        let s = self.setting.semigroup();
        let mut worst: f64 = 0.0;
        for x in 0..s.len() {
            for y in 0..s.len() {
                worst = worst.max(self.setting.shifted_integral(f, s.op(x, y)).norm());
            }
        }
        let ok = worst <= self.eps() * (1.0 + f.norm_inf());
        self.report.push(
            "product_integrals_vanish",
            C64::new(worst, 0.0),
            Some(ZERO),
            ok,
        );
    }
}

fn max_residual(setting: &Setting, eq: EquationId, f: &CFunction, g: Option<&CFunction>) -> f64 {
    residual_table(
        setting.semigroup(),
        setting.sigma(),
        Some(setting.measure()),
        eq,
        f,
        g,
    )
    .map(|t| t.iter().flatten().map(|v| v.norm()).fold(0.0, f64::max))
    .unwrap_or(f64::INFINITY)
}

/// Evaluates every constraint attached to the descriptor's family.
pub fn validate_descriptor(setting: &Setting, desc: &FamilyDescriptor) -> ConstraintReport {
    use FamilyDescriptor as D;
    let mut ck = Checker {
        setting,
        report: ConstraintReport::default(),
    };
    for (name, h) in desc.functions() {
        let _ = name;
        ck.len_ok("function_length", h);
    }
    let mut exps_ok = true;
    for (_, chi) in desc.exponentials() {
        exps_ok &= ck.exp_ok("chi_exponential", chi);
    }
    if !exps_ok || !ck.report.passed() {
        return ck.report;
    }
    match desc {
        D::T36_1 { .. } | D::T44_1 { .. } => {}
        D::T36_2 { f, .. } | D::T44_2 { f } => {
            ck.report.push(
                "f_nonzero",
                C64::new(f.norm_inf(), 0.0),
                None,
                f.norm_inf() > ck.eps(),
            );
            ck.annihilates_products(f);
        }
        D::T36_3 { chi, gamma, b, c } => {
            ck.sigma_relation(chi, false);
            ck.nonzero("gamma_nonzero", *gamma);
            ck.nonzero("b_nonzero", *b);
            ck.nonzero("c_not_minus_one", c + ONE);
            ck.nonzero("c_not_one", c - ONE);
            if (c + ONE).norm() > ck.eps() && (c - ONE).norm() > ck.eps() {
                let m = ck.integral(chi.function());
                let ms = ck.integral(&sigma_pullback(chi.function(), setting.sigma()));
                ck.equal("integral_chi", m, -2.0 * b / (ONE + c));
                ck.equal("integral_chi_sigma", ms, 2.0 * b / (ONE - c));
            }
        }
        D::T36_4 { chi, beta, b, .. } => {
            ck.sigma_relation(chi, false);
            ck.nonzero("beta_nonzero", *beta);
            ck.nonzero("b_nonzero", *b);
            if beta.norm() > ck.eps() {
                let m = ck.integral(chi.function());
                let ms = ck.integral(&sigma_pullback(chi.function(), setting.sigma()));
                ck.equal("integral_chi", m, beta.inv());
                ck.equal("integral_chi_sigma", ms, beta.inv());
            }
        }
        D::T36_5 {
            chi,
            alpha,
            delta,
            b,
            c,
        } => {
            ck.sigma_relation(chi, false);
            ck.nonzero("alpha_nonzero", *alpha);
            ck.nonzero("delta_nonzero", *delta);
            ck.nonzero("b_nonzero", *b);
            let w = 2.0 * b * delta + alpha * c;
            ck.nonzero("alpha_not_plus_w", alpha - w);
            ck.nonzero("alpha_not_minus_w", alpha + w);
            let d1 = alpha * (ONE + c) + 2.0 * b * delta;
            let d2 = alpha * (c - ONE) + 2.0 * b * delta;
            if d1.norm() > ck.eps() && d2.norm() > ck.eps() {
                let m = ck.integral(chi.function());
                let ms = ck.integral(&sigma_pullback(chi.function(), setting.sigma()));
                ck.equal("integral_chi", m, 2.0 * b / d1);
                ck.equal("integral_chi_sigma", ms, 2.0 * b / d2);
            }
        }
        D::T36_6 { chi, phi, gamma } => {
            ck.sigma_relation(chi, true);
            ck.phi_checks(chi, phi, -1.0);
            ck.nonzero("gamma_nonzero", *gamma);
            let m = ck.integral(chi.function());
            ck.nonzero("integral_chi_nonzero", m);
            ck.equal("integral_phi", ck.integral(phi), m * m);
        }
        D::T36_7 {
            chi,
            phi,
            alpha,
            c,
            delta,
        } => {
            ck.sigma_relation(chi, true);
            ck.phi_checks(chi, phi, -1.0);
            ck.nonzero("delta_nonzero", *delta);
            let d = alpha * c + delta;
            ck.nonzero("alpha_c_plus_delta_nonzero", d);
            if d.norm() > ck.eps() {
                ck.equal("integral_chi", ck.integral(chi.function()), d.inv());
                ck.equal("integral_phi", ck.integral(phi), -alpha / (d * d));
            }
        }
        D::T36_8 { chi, phi, .. } => {
            ck.sigma_relation(chi, true);
            ck.phi_checks(chi, phi, -1.0);
            ck.nonzero("integral_chi_nonzero", ck.integral(chi.function()));
            ck.equal("integral_phi", ck.integral(phi), ZERO);
        }
        D::T44_3 { chi, delta } => {
            ck.sigma_relation(chi, true);
            ck.nonzero("delta_nonzero", *delta);
            ck.nonzero("integral_chi_nonzero", ck.integral(chi.function()));
        }
        D::T44_4 { chi1, chi2, alpha } => {
            ck.flag(
                "chi1_differs_from_chi2",
                chi1.exact_values() != chi2.exact_values(),
            );
            ck.flag(
                "chi1_sigma_invariant",
                chi1.is_sigma_invariant(setting.sigma()),
            );
            ck.flag(
                "chi2_sigma_invariant",
                chi2.is_sigma_invariant(setting.sigma()),
            );
            ck.nonzero("alpha_nonzero", *alpha);
            ck.nonzero("integral_chi1_nonzero", ck.integral(chi1.function()));
            ck.nonzero("integral_chi2_nonzero", ck.integral(chi2.function()));
        }
        D::T44_5 { chi, phi } => {
            ck.sigma_relation(chi, true);
            ck.phi_checks(chi, phi, 1.0);
            ck.nonzero("integral_chi_nonzero", ck.integral(chi.function()));
            ck.equal("integral_phi", ck.integral(phi), ZERO);
        }
        D::T44_6 { chi, big_phi } => {
            ck.sigma_relation(chi, true);
            let m = ck.integral(chi.function());
            ck.nonzero("integral_chi_nonzero", m);
            let norm = big_phi.norm_inf();
            ck.report
                .push("Phi_nonzero", C64::new(norm, 0.0), None, norm > ck.eps());
            let r = max_residual(
                setting,
                EquationId::SpecialKSAdd,
                big_phi,
                Some(chi.function()),
            );
            let scale = 1.0 + norm * (setting.measure().total_variation() + m.norm());
            ck.report.push(
                "Phi_special_ks_addition",
                C64::new(r, 0.0),
                Some(ZERO),
                r <= ck.eps() * scale,
            );
        }
    }
    ck.report
}

/// `(f, g)` for a descriptor, without validation.
pub fn build_pair(setting: &Setting, desc: &FamilyDescriptor) -> (CFunction, CFunction) {
    use FamilyDescriptor as D;
    let n = setting.len();
    let half = C64::new(0.5, 0.0);
    let sym_anti = |chi: &Exponential| {
        let cs = sigma_pullback(chi.function(), setting.sigma());
        (chi.function() + &cs, chi.function() - &cs)
    };
    let m = |chi: &Exponential| setting.integral(chi.function());
    match desc {
        D::T36_1 { g } | D::T44_1 { g } => (CFunction::zeros(n), g.clone()),
        D::T36_2 { f, k } => (f.clone(), f.scale(*k)),
        D::T44_2 { f } => (f.clone(), CFunction::zeros(n)),
        D::T36_3 { chi, gamma, b, c } => {
            let (p, q) = sym_anti(chi);
            let h = (2.0 * gamma).inv();
            (p.combine(h, &q, c * h), q.scale(*b))
        }
        D::T36_4 { chi, beta, b, c } => {
            let (p, q) = sym_anti(chi);
            let h = (2.0 * beta).inv();
            (q.scale(*b), p.combine(h, &q, c * h))
        }
        D::T36_5 {
            chi,
            alpha,
            delta,
            b,
            c,
        } => {
            let (p, q) = sym_anti(chi);
            let h = (2.0 * delta).inv();
            let f = p.combine(alpha * h, &q, (alpha * c + 2.0 * b * delta) * h);
            (f, p.combine(h, &q, c * h))
        }
        D::T36_6 { chi, phi, gamma } => {
            let f = chi
                .function()
                .combine(gamma.inv(), phi, -(gamma * m(chi)).inv());
            (f, phi.clone())
        }
        D::T36_7 {
            chi,
            phi,
            alpha,
            c,
            delta,
        } => {
            let di = delta.inv();
            let f = chi
                .function()
                .combine(alpha * di, phi, (alpha * c + delta) * di);
            (f, chi.function().combine(di, phi, c * di))
        }
        D::T36_8 { chi, phi, c } => {
            let mm = m(chi);
            (phi.clone(), chi.function().combine(mm, phi, c * mm))
        }
        D::T44_3 { chi, delta } => {
            let g = chi.function().scale(m(chi) * half);
            (g.scale(delta.inv()), g)
        }
        D::T44_4 { chi1, chi2, alpha } => {
            let (m1, m2) = (m(chi1), m(chi2));
            let a = (2.0 * alpha).inv();
            let f = chi1.function().combine(m1 * a, chi2.function(), -m2 * a);
            (
                f,
                chi1.function()
                    .combine(m1 * half, chi2.function(), m2 * half),
            )
        }
        D::T44_5 { chi, phi } => (phi.clone(), chi.function().scale(m(chi))),
        D::T44_6 { chi, big_phi } => (big_phi.clone(), chi.function().scale(m(chi))),
    }
}

fn construct_for(
    setting: &Setting,
    desc: &FamilyDescriptor,
    eq: EquationId,
) -> Result<(CFunction, CFunction), ClassifyError> {
    if desc.tag().equation() != eq {
        return Err(ClassifyError::UnknownTag(desc.tag().name().into()));
    }
    let report = validate_descriptor(setting, desc);
    if !report.passed() {
        return Err(ClassifyError::ConstraintViolation(report));
    }
    Ok(build_pair(setting, desc))
}

/// Builds a solution of the subtraction law from a `T36_*` descriptor.
pub fn construct_t36(
    setting: &Setting,
    desc: &FamilyDescriptor,
) -> Result<(CFunction, CFunction), ClassifyError> {
    construct_for(setting, desc, EquationId::KSSub)
}

/// Builds a solution of the addition law from a `T44_*` descriptor.
pub fn construct_t44(
    setting: &Setting,
    desc: &FamilyDescriptor,
) -> Result<(CFunction, CFunction), ClassifyError> {
    construct_for(setting, desc, EquationId::KSAdd)
}

/// Dispatches on the descriptor's theorem.
pub fn construct(
    setting: &Setting,
    desc: &FamilyDescriptor,
) -> Result<(CFunction, CFunction), ClassifyError> {
    construct_for(setting, desc, desc.tag().equation())
}
