//! Residual checkers for the functional equations handled by the crate.
//!
//! | id               | identity checked for all `x, y`                          |
//! |------------------|-----------------------------------------------------------|
//! | `SineSub`        | `f(xσ(y)) = f(x)g(y) − f(y)g(x)`                          |
//! | `SineAdd`        | `f(xσ(y)) = f(x)g(y) + f(y)g(x)`                          |
//! | `KSSub`          | `∫f(xσ(y)t)dμ(t) = f(x)g(y) − f(y)g(x)`                   |
//! | `KSAdd`          | `∫f(xσ(y)t)dμ(t) = f(x)g(y) + f(y)g(x)`                   |
//! | `CosSub`         | `F(xσ(y)) = F(x)F(y) − (F−g)(y)(F−g)(x)`                  |
//! | `SpecialKSAdd`   | `∫f(xσ(y)t)dμ(t) = [f(x)χ(y) + f(y)χ(x)]·∫χdμ`            |
//! | `SpecialSineAdd` | `φ(xy) = φ(x)χ(y) + χ(x)φ(y)`                             |
//! | `KMultSigma`     | `∫f(xσ(y)t)dμ(t) = f(x)f(y)`                              |
//!
//! For the two special laws the second function slot carries `χ`.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use thiserror::Error;

use crate::algebra::{FiniteSemigroup, InvolutiveAutomorphism};
use crate::functions::{integrate, kannappan_transform, CFunction, DiscreteMeasure};
use crate::linalg::{ComplexMatrix, ToleranceProfile};
use crate::C64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum EquationId {
    SineSub,
    SineAdd,
    KSSub,
    KSAdd,
    CosSub,
    SpecialKSAdd,
    SpecialSineAdd,
    KMultSigma,
}

impl EquationId {
    pub const ALL: [EquationId; 8] = [
        EquationId::SineSub,
        EquationId::SineAdd,
        EquationId::KSSub,
        EquationId::KSAdd,
        EquationId::CosSub,
        EquationId::SpecialKSAdd,
        EquationId::SpecialSineAdd,
        EquationId::KMultSigma,
    ];

    pub fn name(self) -> &'static str {
        match self {
            EquationId::SineSub => "SineSub",
            EquationId::SineAdd => "SineAdd",
            EquationId::KSSub => "KSSub",
            EquationId::KSAdd => "KSAdd",
            EquationId::CosSub => "CosSub",
            EquationId::SpecialKSAdd => "SpecialKSAdd",
            EquationId::SpecialSineAdd => "SpecialSineAdd",
            EquationId::KMultSigma => "KMultSigma",
        }
    }

    /// Whether `μ` appears in the identity.
    pub fn uses_measure(self) -> bool {
        matches!(
            self,
            EquationId::KSSub
                | EquationId::KSAdd
                | EquationId::SpecialKSAdd
                | EquationId::KMultSigma
        )
    }

    /// Whether a second function is required.
    pub fn is_binary(self) -> bool {
        !matches!(self, EquationId::KMultSigma)
    }
}

impl fmt::Display for EquationId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for EquationId {
    type Err = EquationError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let lower = s.to_ascii_lowercase();
        let id = match lower.as_str() {
            "sinesub" | "sine-sub" => EquationId::SineSub,
            "sineadd" | "sine-add" => EquationId::SineAdd,
            "kssub" | "kss" => EquationId::KSSub,
            "ksadd" | "ksa" => EquationId::KSAdd,
            "cossub" | "cos-sub" => EquationId::CosSub,
            "specialksadd" | "special-ks-add" => EquationId::SpecialKSAdd,
            "specialsineadd" | "special-sine-add" => EquationId::SpecialSineAdd,
            "kmultsigma" | "kmult" => EquationId::KMultSigma,
            _ => return Err(EquationError::UnknownEquation),
        };
        Ok(id)
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EquationError {
    #[error("wrong number of functions for this equation")]
    ArityMismatch,
    #[error("this equation needs a measure")]
    MeasureMissing,
    #[error("function length does not match the semigroup")]
    SizeMismatch,
    #[error("unknown equation name")]
    UnknownEquation,
    #[error("semigroup has no identity")]
    NotAMonoid,
    #[error("input is not a solution (residual {residual:e})")]
    NotASolution { residual: f64 },
    #[error(
        "g(e) vanishes while f(e) does not (multiplied identity residual {identity_residual:e})"
    )]
    DegenerateGe { identity_residual: f64 },
}

/// Maximum pointwise residual of one equation.
#[derive(Debug, Clone, PartialEq)]
pub struct CheckReport {
    pub equation: EquationId,
    pub max_residual: f64,
    pub argmax: (usize, usize),
    pub verdict: bool,
}

/// `LHS(x,y) − RHS(x,y)` over all pairs.
pub fn residual_table(
    s: &FiniteSemigroup,
    sigma: &InvolutiveAutomorphism,
    mu: Option<&DiscreteMeasure>,
    eq: EquationId,
    f: &CFunction,
    g: Option<&CFunction>,
) -> Result<Vec<Vec<C64>>, EquationError> {
    let n = s.len();
    if eq.is_binary() != g.is_some() {
        return Err(EquationError::ArityMismatch);
    }
    if f.len() != n || g.is_some_and(|g| g.len() != n) || sigma.len() != n {
        return Err(EquationError::SizeMismatch);
    }
    let mu = match (eq.uses_measure(), mu) {
        (true, None) => return Err(EquationError::MeasureMissing),
        (true, Some(m)) => {
            if m.min_size() > n {
                return Err(EquationError::SizeMismatch);
            }
            Some(m)
        }
        (false, _) => None,
    };
    let lhs: Vec<Vec<C64>> = match (eq, mu) {
        (EquationId::SpecialSineAdd, _) => table(n, |x, y| f[s.op(x, y)]),
        (_, Some(m)) => kannappan_transform(s, sigma, m, f),
        (_, None) => table(n, |x, y| f[s.op(x, sigma.apply(y))]),
    };
    let zero = CFunction::zeros(0);
    let g = g.unwrap_or(&zero);
    let rhs = |x: usize, y: usize| -> C64 {
        match eq {
            EquationId::SineSub | EquationId::KSSub => f[x] * g[y] - f[y] * g[x],
            EquationId::SineAdd | EquationId::KSAdd => f[x] * g[y] + f[y] * g[x],
            EquationId::CosSub => f[x] * f[y] - (f[y] - g[y]) * (f[x] - g[x]),
            EquationId::SpecialSineAdd => f[x] * g[y] + g[x] * f[y],
            EquationId::SpecialKSAdd => {
                (f[x] * g[y] + f[y] * g[x]) * mu.map_or(C64::new(0.0, 0.0), |m| integrate(m, g))
            }
            EquationId::KMultSigma => f[x] * f[y],
        }
    };
    Ok(table(n, |x, y| lhs[x][y] - rhs(x, y)))
}

fn table(n: usize, cell: impl Fn(usize, usize) -> C64) -> Vec<Vec<C64>> {
    (0..n)
        .map(|x| (0..n).map(|y| cell(x, y)).collect())
        .collect()
}

fn max_entry(t: &[Vec<C64>]) -> (f64, (usize, usize)) {
    let mut best = (0.0, (0, 0));
    for (x, row) in t.iter().enumerate() {
        for (y, v) in row.iter().enumerate() {
            if v.norm() > best.0 {
                best = (v.norm(), (x, y));
            }
        }
    }
    best
}

pub fn residual(
    s: &FiniteSemigroup,
    sigma: &InvolutiveAutomorphism,
    mu: Option<&DiscreteMeasure>,
    eq: EquationId,
    f: &CFunction,
    g: Option<&CFunction>,
    tol: &ToleranceProfile,
) -> Result<CheckReport, EquationError> {
    let t = residual_table(s, sigma, mu, eq, f, g)?;
    let (max_residual, argmax) = max_entry(&t);
    Ok(CheckReport {
        equation: eq,
        max_residual,
        argmax,
        verdict: max_residual <= tol.residual_eps,
    })
}

pub fn is_solution(
    s: &FiniteSemigroup,
    sigma: &InvolutiveAutomorphism,
    mu: Option<&DiscreteMeasure>,
    eq: EquationId,
    f: &CFunction,
    g: Option<&CFunction>,
    tol: &ToleranceProfile,
) -> Result<bool, EquationError> {
    Ok(residual(s, sigma, mu, eq, f, g, tol)?.verdict)
}

/// Size of the terms in a `KSSub`/`KSAdd` identity, used to turn an
/// absolute tolerance into a relative one: `max(1, ‖f‖∞·max(‖g‖∞, |μ|))`.
pub fn ks_scale(mu: &DiscreteMeasure, f: &CFunction, g: &CFunction) -> f64 {
    (f.norm_inf() * g.norm_inf().max(mu.total_variation())).max(1.0)
}

/// Matrix of the linear map `f ↦ ∫f(xσ(y)t)dμ(t) − f(x)g(y) ∓ f(y)g(x)` for
/// a fixed `g`; row `x·n + y`, column `f`-coordinate. `sign` is `−1` for the
/// subtraction law and `+1` for the addition law.
pub fn ks_operator(
    s: &FiniteSemigroup,
    sigma: &InvolutiveAutomorphism,
    mu: &DiscreteMeasure,
    g: &CFunction,
    sign: f64,
) -> ComplexMatrix {
    let n = s.len();
    let mut a = ComplexMatrix::zeros(n * n, n);
    let sign = C64::new(sign, 0.0);
    for x in 0..n {
        for y in 0..n {
            let r = x * n + y;
            let xs = s.op(x, sigma.apply(y));
            for &(z, w) in mu.atoms() {
                a[(r, s.op(xs, z))] += w;
            }
            a[(r, x)] -= g[y];
            a[(r, y)] -= sign * g[x];
        }
    }
    a
}

/// One labelled sub-residual of [`monoid_reduction_check`].
#[derive(Debug, Clone, PartialEq)]
pub struct SubResidual {
    pub label: &'static str,
    pub residual: f64,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReductionReport {
    pub identity: usize,
    pub f_at_e: C64,
    pub g_at_e: C64,
    pub checks: Vec<SubResidual>,
}

impl ReductionReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// Reductions available on a monoid with identity `e`.
///
/// Putting `y = e` gives `∫f(at)dμ(t) = g(e)f(a) ∓ f(e)g(a)`, hence
///
/// ```text
/// g(e)·f(xσ(y)) = f(x)g(y) ∓ f(y)g(x) ± f(e)·g(xσ(y)).
/// ```
///
/// This is always checked. When `f(e) = 0` it is the whole story. When both
/// `f(e)` and `g(e)` are nonzero, put `G = g/g(e)`:
/// for the subtraction law `F = f/f(e) − G` solves the sine subtraction law
/// with `G`; for the addition law `F = ½(G + f/f(e))` solves the cosine
/// subtraction law with `G`.
pub fn monoid_reduction_check(
    s: &FiniteSemigroup,
    sigma: &InvolutiveAutomorphism,
    mu: &DiscreteMeasure,
    f: &CFunction,
    g: &CFunction,
    sign: f64,
    tol: &ToleranceProfile,
) -> Result<ReductionReport, EquationError> {
    let e = s.identity().ok_or(EquationError::NotAMonoid)?;
    let eq = if sign < 0.0 {
        EquationId::KSSub
    } else {
        EquationId::KSAdd
    };
    let scale = ks_scale(mu, f, g);
    let base = residual(s, sigma, Some(mu), eq, f, Some(g), tol)?;
    if base.max_residual > tol.residual_eps * scale {
        return Err(EquationError::NotASolution {
            residual: base.max_residual,
        });
    }
    let n = s.len();
    let (fe, ge) = (f[e], g[e]);
    let sgn = C64::new(sign, 0.0);
    let identity = table(n, |x, y| {
        let a = s.op(x, sigma.apply(y));
        ge * f[a] - (f[x] * g[y] + sgn * f[y] * g[x] - sgn * fe * g[a])
    });
    let (id_res, _) = max_entry(&identity);
    let mut checks = vec![SubResidual {
        label: "multiplied_identity",
        residual: id_res,
        passed: id_res <= tol.residual_eps * scale,
    }];
    let f_zero = fe.norm() <= tol.residual_eps * (1.0 + f.norm_inf());
    let g_zero = ge.norm() <= tol.residual_eps * (1.0 + g.norm_inf());
    if !f_zero && g_zero {
        return Err(EquationError::DegenerateGe {
            identity_residual: id_res,
        });
    }
    if !f_zero {
        let big_g = g.scale(ge.inv());
        let f_n = f.scale(fe.inv());
        let sub_scale =
            (1.0 + f_n.norm_inf() + big_g.norm_inf()) * (1.0 + f_n.norm_inf() + big_g.norm_inf());
        let (label, report) = if sign < 0.0 {
            let big_f = &f_n - &big_g;
            (
                "sine_subtraction",
                residual(
                    s,
                    sigma,
                    None,
                    EquationId::SineSub,
                    &big_f,
                    Some(&big_g),
                    tol,
                )?,
            )
        } else {
            let big_f = (&big_g + &f_n).scale(C64::new(0.5, 0.0));
            (
                "cosine_subtraction",
                residual(
                    s,
                    sigma,
                    None,
                    EquationId::CosSub,
                    &big_f,
                    Some(&big_g),
                    tol,
                )?,
            )
        };
        checks.push(SubResidual {
            label,
            residual: report.max_residual,
            passed: report.max_residual <= tol.residual_eps * sub_scale,
        });
    }
    Ok(ReductionReport {
        identity: e,
        f_at_e: fe,
        g_at_e: ge,
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn z(n: usize) -> FiniteSemigroup {
        FiniteSemigroup::from_fn(n, |x, y| (x + y) % n).unwrap()
    }

    fn neg3() -> InvolutiveAutomorphism {
        InvolutiveAutomorphism::new(&z(3), vec![0, 2, 1]).unwrap()
    }

    fn t36_4_pair() -> (CFunction, CFunction) {
        let r3 = 3f64.sqrt();
        (
            CFunction::new(vec![c(0.0, 0.0), c(0.0, r3), c(0.0, -r3)]),
            CFunction::from_real(&[1.0, -0.5, -0.5]),
        )
    }

    #[test]
    fn kssub_examples() {
        let tol = ToleranceProfile::default();
        let s = z(3);
        let d0 = DiscreteMeasure::point_mass(0);
        let g = CFunction::from_real(&[3.0, 7.0, 1.0]);
        let r = residual(
            &s,
            &neg3(),
            Some(&d0),
            EquationId::KSSub,
            &CFunction::zeros(3),
            Some(&g),
            &tol,
        )
        .unwrap();
        assert_eq!(r.max_residual, 0.0);

        let (f, g) = t36_4_pair();
        let r = residual(
            &s,
            &neg3(),
            Some(&d0),
            EquationId::KSSub,
            &f,
            Some(&g),
            &tol,
        )
        .unwrap();
        assert!(r.max_residual < 1e-14 && r.verdict);
    }

    #[test]
    fn ksadd_example() {
        let tol = ToleranceProfile::default();
        let s = z(2);
        let id = InvolutiveAutomorphism::identity(2);
        let f = CFunction::from_real(&[0.0, 1.0]);
        let g = CFunction::from_real(&[1.0, 0.0]);
        let d0 = DiscreteMeasure::point_mass(0);
        assert!(is_solution(&s, &id, Some(&d0), EquationId::KSAdd, &f, Some(&g), &tol).unwrap());
    }

    #[test]
    fn kmult_example() {
        let tol = ToleranceProfile::default();
        let s = z(2);
        let id = InvolutiveAutomorphism::identity(2);
        let mu = DiscreteMeasure::new(2, vec![(0, c(2.0, 0.0))]).unwrap();
        let f = CFunction::constant(2, c(2.0, 0.0));
        assert!(is_solution(&s, &id, Some(&mu), EquationId::KMultSigma, &f, None, &tol).unwrap());
    }

    #[test]
    fn arity_and_measure_errors() {
        let tol = ToleranceProfile::default();
        let s = z(2);
        let id = InvolutiveAutomorphism::identity(2);
        let f = CFunction::zeros(2);
        let d0 = DiscreteMeasure::point_mass(0);
        assert_eq!(
            residual(&s, &id, Some(&d0), EquationId::KSSub, &f, None, &tol),
            Err(EquationError::ArityMismatch)
        );
        assert_eq!(
            residual(&s, &id, None, EquationId::KSSub, &f, Some(&f), &tol),
            Err(EquationError::MeasureMissing)
        );
        assert!(residual(&s, &id, None, EquationId::SineSub, &f, Some(&f), &tol).is_ok());
    }

    #[test]
    fn operator_matches_residual() {
        let s = z(3);
        let mu = DiscreteMeasure::new(3, vec![(1, c(0.5, -1.0)), (2, c(2.0, 0.0))]).unwrap();
        let f = CFunction::new(vec![c(1.0, 2.0), c(-0.5, 0.0), c(0.0, 3.0)]);
        let g = CFunction::new(vec![c(0.0, 1.0), c(2.0, 0.0), c(-1.0, -1.0)]);
        for (sign, eq) in [(-1.0, EquationId::KSSub), (1.0, EquationId::KSAdd)] {
            let a = ks_operator(&s, &neg3(), &mu, &g, sign);
            let v = a.mul_vec(f.values());
            let t = residual_table(&s, &neg3(), Some(&mu), eq, &f, Some(&g)).unwrap();
            for x in 0..3 {
                for y in 0..3 {
                    assert!((v[x * 3 + y] - t[x][y]).norm() < 1e-13);
                }
            }
        }
    }

    #[test]
    fn reduction_examples() {
        let tol = ToleranceProfile::default();
        let (f, g) = t36_4_pair();
        let d0 = DiscreteMeasure::point_mass(0);
        let r = monoid_reduction_check(&z(3), &neg3(), &d0, &f, &g, -1.0, &tol).unwrap();
        assert!(r.passed());
        assert_eq!(r.checks.len(), 1);

        let f = CFunction::from_real(&[0.0, 1.0]);
        let g = CFunction::from_real(&[1.0, 0.0]);
        let id = InvolutiveAutomorphism::identity(2);
        let r = monoid_reduction_check(&z(2), &id, &d0, &f, &g, 1.0, &tol).unwrap();
        assert!(r.passed());

        let lz = FiniteSemigroup::from_fn(2, |x, _| x).unwrap();
        let err = monoid_reduction_check(&lz, &id, &d0, &f, &g, 1.0, &tol).unwrap_err();
        assert_eq!(err, EquationError::NotAMonoid);
    }

    #[test]
    fn reduction_with_nonzero_values_at_identity() {
        // T44_3-type pair on Z2: f = g = (½,½) solves the addition law with
        // f(e), g(e) both nonzero.
        let tol = ToleranceProfile::default();
        let id = InvolutiveAutomorphism::identity(2);
        let d0 = DiscreteMeasure::point_mass(0);
        let f = CFunction::constant(2, c(0.5, 0.0));
        let r = monoid_reduction_check(&z(2), &id, &d0, &f, &f, 1.0, &tol).unwrap();
        assert!(r.passed());
        assert_eq!(r.checks[1].label, "cosine_subtraction");
    }
}
