//! Recognisers for solutions of the sine subtraction and sine addition laws
//! in terms of exponentials of the semigroup.

use alloc::string::String;
use alloc::vec::Vec;

use super::ClassifyError;
use crate::algebra::{FiniteSemigroup, InvolutiveAutomorphism};
use crate::equations::{residual, EquationId};
use crate::functions::{enumerate_exponentials, sigma_pullback, CFunction, Exponential};
use crate::linalg::{rank, solve_affine, ComplexMatrix, ToleranceProfile};
use crate::C64;

/// Relative tolerance for matching a function against a combination of
/// exponentials. Distinct exponentials differ by at least `|1 − e^{iπ/3}|`
/// somewhere, so a loose bound cannot confuse them; the classifier's final
/// round trip is checked at the strict tolerance.
const MATCH_EPS: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq)]
pub enum SineSubDecomposition {
    /// `F = b(χ − χσ)`, `G = [(χ + χσ) + c(χ − χσ)]/2`, `χ ≠ χσ`.
    TwoCharacter {
        chi: Exponential,
        b: C64,
        c: C64,
    },
    /// `F = φ`, `G = χ + cφ`, `χσ = χ`, `φσ = −φ`.
    CharacterPlusPhi {
        chi: Exponential,
        phi: CFunction,
        c: C64,
    },
    Unrepresentable {
        note: String,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub enum SineAddDecomposition {
    /// `F = c(χ₁ − χ₂)`, `G = (χ₁ + χ₂)/2`, both σ-invariant.
    TwoCharacter {
        chi1: Exponential,
        chi2: Exponential,
        c: C64,
    },
    /// `F = φ`, `G = χ`, `χσ = χ`, `φσ = φ`.
    CharacterPlusPhi {
        chi: Exponential,
        phi: CFunction,
    },
    Unrepresentable {
        note: String,
    },
}

fn scale_of(f: &CFunction, g: &CFunction) -> f64 {
    1.0 + f.norm_inf() + g.norm_inf()
}

/// Least-squares coefficients of `target` on two independent columns, if the
/// fit is within `MATCH_EPS` relative to the target size.
fn fit2(target: &CFunction, a: &CFunction, b: &CFunction) -> Option<(C64, C64)> {
    let n = target.len();
    let rows: Vec<Vec<C64>> = (0..n).map(|x| alloc::vec![a[x], b[x]]).collect();
    let m = ComplexMatrix::from_rows(&rows).ok()?;
    let loose = ToleranceProfile {
        residual_eps: 0.5,
        rank_eps: 1e-8,
    };
    let sol = solve_affine(&m, target.values(), &loose).ok()?;
    let (p, q) = (sol.particular[0], sol.particular[1]);
    let fitted = a.combine(p, b, q);
    (fitted.max_diff(target) <= MATCH_EPS * (1.0 + target.norm_inf())).then_some((p, q))
}

fn independent(f: &CFunction, g: &CFunction, tol: &ToleranceProfile) -> bool {
    let m = ComplexMatrix::from_rows(&[f.values().to_vec(), g.values().to_vec()]);
    m.is_ok_and(|m| rank(&m, tol) == 2)
}

fn near(a: C64, b: C64, scale: f64) -> bool {
    (a - b).norm() <= MATCH_EPS * scale
}

fn solves_special(
    s: &FiniteSemigroup,
    sigma: &InvolutiveAutomorphism,
    chi: &Exponential,
    phi: &CFunction,
    tol: &ToleranceProfile,
) -> bool {
    residual(
        s,
        sigma,
        None,
        EquationId::SpecialSineAdd,
        phi,
        Some(chi.function()),
        tol,
    )
    .is_ok_and(|r| r.max_residual <= MATCH_EPS * (1.0 + phi.norm_inf()))
}

/// Writes a solution `(F, G)` of `F(xσ(y)) = F(x)G(y) − F(y)G(x)` in one of
/// the two shapes of [`SineSubDecomposition`].
pub fn decompose_sine_subtraction(
    s: &FiniteSemigroup,
    sigma: &InvolutiveAutomorphism,
    f: &CFunction,
    g: &CFunction,
    tol: &ToleranceProfile,
) -> Result<SineSubDecomposition, ClassifyError> {
    decompose_sine_subtraction_with(s, sigma, &enumerate_exponentials(s), f, g, tol)
}

pub(crate) fn decompose_sine_subtraction_with(
    s: &FiniteSemigroup,
    sigma: &InvolutiveAutomorphism,
    exps: &[Exponential],
    f: &CFunction,
    g: &CFunction,
    tol: &ToleranceProfile,
) -> Result<SineSubDecomposition, ClassifyError> {
    let r = residual(s, sigma, None, EquationId::SineSub, f, Some(g), tol)?;
    let sc = scale_of(f, g);
    if r.max_residual > tol.residual_eps * sc * sc {
        return Err(ClassifyError::NotASolution {
            residual: r.max_residual,
        });
    }
    if !independent(f, g, tol) {
        return Ok(SineSubDecomposition::Unrepresentable {
            note: "dependent/zero input".into(),
        });
    }
    let one = C64::new(1.0, 0.0);
    for chi in exps {
        let chi_s = chi.pullback(sigma);
        if chi_s.exact_values() != chi.exact_values() {
            let (Some((u, v)), Some((p, q))) = (
                fit2(f, chi.function(), chi_s.function()),
                fit2(g, chi.function(), chi_s.function()),
            ) else {
                continue;
            };
            if near(u, -v, 1.0 + f.norm_inf())
                && u.norm() > MATCH_EPS
                && near(p + q, one, 1.0 + g.norm_inf())
            {
                let b = (u - v) * 0.5;
                return Ok(SineSubDecomposition::TwoCharacter {
                    chi: chi.clone(),
                    b,
                    c: p - q,
                });
            }
        } else {
            let phi = f;
            let anti = sigma_pullback(phi, sigma).max_diff(&-phi);
            if anti > MATCH_EPS * (1.0 + phi.norm_inf()) || !solves_special(s, sigma, chi, phi, tol)
            {
                continue;
            }
            let rest = g - chi.function();
            let nn: f64 = phi.values().iter().map(|v| v.norm_sqr()).sum();
            let c: C64 = phi
                .values()
                .iter()
                .zip(rest.values())
                .map(|(p, r)| p.conj() * r)
                .sum::<C64>()
                / nn;
            if rest.max_diff(&phi.scale(c)) <= MATCH_EPS * (1.0 + g.norm_inf()) {
                return Ok(SineSubDecomposition::CharacterPlusPhi {
                    chi: chi.clone(),
                    phi: phi.clone(),
                    c,
                });
            }
        }
    }
    Ok(SineSubDecomposition::Unrepresentable {
        note: "no exponential fits".into(),
    })
}

/// Writes a solution `(F, G)` of `F(xσ(y)) = F(x)G(y) + F(y)G(x)` in one of
/// the two shapes of [`SineAddDecomposition`].
pub fn decompose_sine_addition(
    s: &FiniteSemigroup,
    sigma: &InvolutiveAutomorphism,
    f: &CFunction,
    g: &CFunction,
    tol: &ToleranceProfile,
) -> Result<SineAddDecomposition, ClassifyError> {
    decompose_sine_addition_with(s, sigma, &enumerate_exponentials(s), f, g, tol)
}

pub(crate) fn decompose_sine_addition_with(
    s: &FiniteSemigroup,
    sigma: &InvolutiveAutomorphism,
    exps: &[Exponential],
    f: &CFunction,
    g: &CFunction,
    tol: &ToleranceProfile,
) -> Result<SineAddDecomposition, ClassifyError> {
    let r = residual(s, sigma, None, EquationId::SineAdd, f, Some(g), tol)?;
    let sc = scale_of(f, g);
    if r.max_residual > tol.residual_eps * sc * sc {
        return Err(ClassifyError::NotASolution {
            residual: r.max_residual,
        });
    }
    if !independent(f, g, tol) {
        return Ok(SineAddDecomposition::Unrepresentable {
            note: "dependent/zero input".into(),
        });
    }
    let half = C64::new(0.5, 0.0);
    let invariant: Vec<&Exponential> = exps
        .iter()
        .filter(|e| e.is_sigma_invariant(sigma))
        .collect();
    for (i, chi1) in invariant.iter().enumerate() {
        // G = χ with F a σ-symmetric solution of the special law
        if g.max_diff(chi1.function()) <= MATCH_EPS * (1.0 + g.norm_inf()) {
            let sym = sigma_pullback(f, sigma).max_diff(f);
            if sym <= MATCH_EPS * (1.0 + f.norm_inf()) && solves_special(s, sigma, chi1, f, tol) {
                return Ok(SineAddDecomposition::CharacterPlusPhi {
                    chi: (*chi1).clone(),
                    phi: f.clone(),
                });
            }
        }
        for chi2 in &invariant[i + 1..] {
            let (Some((p, q)), Some((u, v))) = (
                fit2(g, chi1.function(), chi2.function()),
                fit2(f, chi1.function(), chi2.function()),
            ) else {
                continue;
            };
            let gs = 1.0 + g.norm_inf();
            if near(p, half, gs)
                && near(q, half, gs)
                && near(u, -v, 1.0 + f.norm_inf())
                && u.norm() > MATCH_EPS
            {
                return Ok(SineAddDecomposition::TwoCharacter {
                    chi1: (*chi1).clone(),
                    chi2: (*chi2).clone(),
                    c: (u - v) * 0.5,
                });
            }
        }
    }
    Ok(SineAddDecomposition::Unrepresentable {
        note: "no exponential fits".into(),
    })
}
