//! Desk-scale completeness probe: enumerate candidate `g` on a coefficient
//! grid, solve the (linear in `f`) equation for `f`, classify every hit.

use kannappan_core::classify::{classify, ClassifyError, FamilyDescriptor};
use kannappan_core::equations::{is_solution, ks_operator, EquationId};
use kannappan_core::functions::solve_sine_addition_special;
use kannappan_core::linalg::nullspace;
use kannappan_core::{CFunction, Setting, C64};
use thiserror::Error;

/// `{0, ±1, ±i, ±½}`.
pub fn default_grid() -> Vec<C64> {
    [
        (0.0, 0.0),
        (1.0, 0.0),
        (-1.0, 0.0),
        (0.0, 1.0),
        (0.0, -1.0),
        (0.5, 0.0),
        (-0.5, 0.0),
    ]
    .iter()
    .map(|&(re, im)| C64::new(re, im))
    .collect()
}

#[derive(Debug, Clone)]
pub struct Hit {
    pub f: CFunction,
    pub g: CFunction,
    pub desc: FamilyDescriptor,
}

#[derive(Debug, Error)]
pub enum SearchError {
    #[error("equation {0} has no classifier")]
    Unsupported(EquationId),
    #[error("solution f = {f:?}, g = {g:?} did not classify: {error}")]
    UnclassifiedSolution {
        f: CFunction,
        g: CFunction,
        error: ClassifyError,
    },
}

/// Exponentials followed by a basis of the `φ` solving the special sine
/// addition law for each exponential.
pub fn search_basis(setting: &Setting) -> Vec<CFunction> {
    let mut basis: Vec<CFunction> = setting
        .exponentials()
        .iter()
        .map(|e| e.function().clone())
        .collect();
    for chi in setting.exponentials() {
        if let Ok(sol) = solve_sine_addition_special(
            setting.semigroup(),
            chi.function(),
            None,
            &[],
            setting.tol(),
        ) {
            basis.extend(sol.basis);
        }
    }
    basis
}

/// Every `g = a·u + b·v` with `u, v` from [`search_basis`] (one or two terms)
/// and `a, b` from the grid, in canonical order, without repeats.
fn candidates(basis: &[CFunction], grid: &[C64]) -> Vec<CFunction> {
    let nonzero: Vec<C64> = grid.iter().copied().filter(|z| z.norm() > 0.0).collect();
    let mut out: Vec<CFunction> = Vec::new();
    let mut push = |g: CFunction| {
        if !out.iter().any(|h| h.max_diff(&g) < 1e-12) {
            out.push(g);
        }
    };
    if let Some(b) = basis.first() {
        push(CFunction::zeros(b.len()));
    }
    for u in basis {
        for &a in &nonzero {
            push(u.scale(a));
        }
    }
    for (i, u) in basis.iter().enumerate() {
        for v in &basis[i + 1..] {
            for &a in &nonzero {
                for &b in &nonzero {
                    push(u.combine(a, v, b));
                }
            }
        }
    }
    out
}

pub fn grid_completeness_search(
    setting: &Setting,
    eq: EquationId,
    grid: &[C64],
) -> Result<Vec<Hit>, SearchError> {
    let sign = match eq {
        EquationId::KSSub => -1.0,
        EquationId::KSAdd => 1.0,
        other => return Err(SearchError::Unsupported(other)),
    };
    let mut hits = Vec::new();
    for g in candidates(&search_basis(setting), grid) {
        let a = ks_operator(
            setting.semigroup(),
            setting.sigma(),
            setting.measure(),
            &g,
            sign,
        );
        for v in nullspace(&a, setting.tol()) {
            let f = CFunction::new(v);
            let verified = is_solution(
                setting.semigroup(),
                setting.sigma(),
                Some(setting.measure()),
                eq,
                &f,
                Some(&g),
                setting.tol(),
            )
            .unwrap_or(false);
            if !verified {
                continue;
            }
            match classify(setting, eq, &f, &g) {
                Ok((desc, _)) => hits.push(Hit {
                    f,
                    g: g.clone(),
                    desc,
                }),
                Err(error) => {
                    return Err(SearchError::UnclassifiedSolution {
                        f,
                        g: g.clone(),
                        error,
                    })
                }
            }
        }
    }
    Ok(hits)
}
