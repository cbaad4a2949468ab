//! Seeded generator of family instances for the forward-soundness sweep.
//!
//! Parameters come from a small complex grid; measures are fitted so that
//! every moment constraint of the family holds.

use kannappan_core::classify::{construct, FamilyDescriptor, FamilyTag};
use kannappan_core::functions::{
    fit_measure, sigma_pullback, solve_sine_addition_special, solve_special_ks_addition, Parity,
};
use kannappan_core::{
    CFunction, DiscreteMeasure, Exponential, InvolutiveAutomorphism, Setting, ToleranceProfile, C64,
};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::catalog;

const GRID: [(f64, f64); 12] = [
    (1.0, 0.0),
    (-1.0, 0.0),
    (2.0, 0.0),
    (-2.0, 0.0),
    (0.5, 0.0),
    (-0.5, 0.0),
    (0.0, 1.0),
    (0.0, -1.0),
    (1.0, 1.0),
    (1.0, -1.0),
    (0.0, 2.0),
    (-0.5, 0.5),
];

const MAX_ATTEMPTS: usize = 200;

#[derive(Debug, Error)]
pub enum SweepError {
    #[error("could not draw a valid {0} instance in {MAX_ATTEMPTS} attempts")]
    Exhausted(FamilyTag),
}

/// A constructed pair together with the descriptor that produced it.
#[derive(Debug, Clone)]
pub struct Instance {
    pub label: String,
    pub setting: Setting,
    pub desc: FamilyDescriptor,
    pub f: CFunction,
    pub g: CFunction,
}

#[derive(Clone)]
struct Base {
    name: &'static str,
    setting: Setting,
}

struct Bases {
    z2: Base,
    z3_id: Base,
    z3_neg: Base,
    t4: Base,
    tsq4: Base,
    null3: Base,
}

fn base(
    name: &'static str,
    s: kannappan_core::FiniteSemigroup,
    sigma: InvolutiveAutomorphism,
    tol: ToleranceProfile,
) -> Base {
    let setting =
        Setting::new(s, sigma, DiscreteMeasure::point_mass(0), tol).expect("catalog setting");
    Base { name, setting }
}

impl Bases {
    fn new(tol: ToleranceProfile) -> Self {
        let id = InvolutiveAutomorphism::identity;
        let z3 = catalog::lookup("Z3").expect("Z3");
        let tsq = catalog::lookup("TruncSq4").expect("TruncSq4");
        Bases {
            z2: base("Z2", catalog::cyclic(2), id(2), tol),
            z3_id: base("Z3", catalog::cyclic(3), id(3), tol),
            z3_neg: base(
                "Z3-neg",
                z3.semigroup.clone(),
                z3.preferred_involution(),
                tol,
            ),
            t4: base("Trunc4", catalog::truncated(4), id(4), tol),
            tsq4: base(
                "TruncSq4-swap",
                tsq.semigroup.clone(),
                tsq.preferred_involution(),
                tol,
            ),
            null3: base("Null3", catalog::null(3), id(3), tol),
        }
    }
}

fn pick(rng: &mut ChaCha8Rng) -> C64 {
    let (re, im) = GRID[rng.gen_range(0..GRID.len())];
    C64::new(re, im)
}

fn pick_vec(rng: &mut ChaCha8Rng, n: usize) -> CFunction {
    CFunction::new((0..n).map(|_| pick(rng)).collect())
}

fn ones(n: usize) -> CFunction {
    CFunction::constant(n, C64::new(1.0, 0.0))
}

/// Measure on `support` meeting every `∫h dμ = target`.
fn fitted(b: &Base, constraints: &[(CFunction, C64)], support: &[usize]) -> Option<Setting> {
    let mu = fit_measure(b.setting.len(), constraints, support, b.setting.tol()).ok()?;
    b.setting.with_measure(mu).ok()
}

/// A generic measure: total mass and one random moment prescribed.
fn random_measure(rng: &mut ChaCha8Rng, b: &Base) -> Option<Setting> {
    let n = b.setting.len();
    let mut support: Vec<usize> = (0..n).collect();
    support.shuffle(rng);
    support.truncate(n.min(3));
    support.sort_unstable();
    let h = pick_vec(rng, n);
    let constraints = [(ones(n), pick(rng)), (h, pick(rng))];
    fitted(b, &constraints[..support.len().min(2)], &support)
}

fn sigma_invariant(st: &Setting) -> Vec<Exponential> {
    st.exponentials()
        .iter()
        .filter(|e| e.is_sigma_invariant(st.sigma()))
        .cloned()
        .collect()
}

fn sigma_variant(st: &Setting) -> Vec<Exponential> {
    st.exponentials()
        .iter()
        .filter(|e| !e.is_sigma_invariant(st.sigma()))
        .cloned()
        .collect()
}

/// The exponential of `T₄` (or `T₄×T₄`) supported at the identity alone.
fn point_exponential(st: &Setting) -> Exponential {
    st.exponentials()
        .iter()
        .find(|e| {
            e.function()
                .values()
                .iter()
                .skip(1)
                .all(|v| v.norm() == 0.0)
        })
        .cloned()
        .expect("point exponential")
}

struct Draw<'a> {
    rng: &'a mut ChaCha8Rng,
    bases: &'a Bases,
}

impl Draw<'_> {
    /// One candidate `(base name, setting, descriptor)`; `None` to retry.
    fn candidate(&mut self, tag: FamilyTag) -> Option<(&'static str, Setting, FamilyDescriptor)> {
        use FamilyDescriptor as D;
        let bs = self.bases;
        let rng = &mut *self.rng;
        let one = C64::new(1.0, 0.0);
        match tag {
            FamilyTag::T36_1 | FamilyTag::T44_1 => {
                let b = [&bs.z2, &bs.z3_neg, &bs.t4, &bs.tsq4][rng.gen_range(0..4)];
                let st = random_measure(rng, b)?;
                let g = pick_vec(rng, st.len());
                let desc = if tag == FamilyTag::T36_1 {
                    D::T36_1 { g }
                } else {
                    D::T44_1 { g }
                };
                Some((b.name, st, desc))
            }
            FamilyTag::T36_2 | FamilyTag::T44_2 => {
                let (b, st, zero_at) = if rng.gen_bool(0.5) {
                    let b = &bs.null3;
                    (b, random_measure(rng, b)?, 0)
                } else {
                    let b = &bs.t4;
                    (b, fitted(b, &[(ones(4), pick(rng))], &[3])?, 3)
                };
                let mut v = pick_vec(rng, st.len()).into_values();
                v[zero_at] = C64::new(0.0, 0.0);
                let f = CFunction::new(v);
                let desc = if tag == FamilyTag::T36_2 {
                    D::T36_2 { f, k: pick(rng) }
                } else {
                    D::T44_2 { f }
                };
                Some((b.name, st, desc))
            }
            FamilyTag::T36_3 | FamilyTag::T36_4 | FamilyTag::T36_5 => {
                let b = &bs.z3_neg;
                let chi = sigma_variant(&b.setting).choose(rng)?.clone();
                let (b_, c_) = (pick(rng), pick(rng));
                let (m, ms, desc) = match tag {
                    FamilyTag::T36_3 => {
                        let gamma = pick(rng);
                        let m = -2.0 * b_ / (one + c_);
                        let ms = 2.0 * b_ / (one - c_);
                        (
                            m,
                            ms,
                            D::T36_3 {
                                chi: chi.clone(),
                                gamma,
                                b: b_,
                                c: c_,
                            },
                        )
                    }
                    FamilyTag::T36_4 => {
                        let beta = pick(rng);
                        (
                            beta.inv(),
                            beta.inv(),
                            D::T36_4 {
                                chi: chi.clone(),
                                beta,
                                b: b_,
                                c: c_,
                            },
                        )
                    }
                    _ => {
                        let (alpha, delta) = (pick(rng), pick(rng));
                        let m = 2.0 * b_ / (alpha * (one + c_) + 2.0 * b_ * delta);
                        let ms = 2.0 * b_ / (alpha * (c_ - one) + 2.0 * b_ * delta);
                        (
                            m,
                            ms,
                            D::T36_5 {
                                chi: chi.clone(),
                                alpha,
                                delta,
                                b: b_,
                                c: c_,
                            },
                        )
                    }
                };
                if !(m.is_finite() && ms.is_finite()) {
                    return None;
                }
                let cs = sigma_pullback(chi.function(), b.setting.sigma());
                let st = fitted(
                    b,
                    &[(chi.function().clone(), m), (cs, ms), (ones(3), pick(rng))],
                    &[0, 1, 2],
                )?;
                Some((b.name, st, desc))
            }
            FamilyTag::T36_6 | FamilyTag::T36_7 | FamilyTag::T36_8 => {
                let b = &bs.tsq4;
                let chi = point_exponential(&b.setting);
                let phis = solve_sine_addition_special(
                    b.setting.semigroup(),
                    chi.function(),
                    Some((b.setting.sigma(), Parity::Antisymmetric)),
                    &[],
                    b.setting.tol(),
                )
                .ok()?;
                let phi0 = phis.basis.first()?.clone();
                let phi = phi0.scale(pick(rng));
                let (m, mphi, desc) = match tag {
                    FamilyTag::T36_6 => {
                        let m = pick(rng);
                        (
                            m,
                            m * m,
                            D::T36_6 {
                                chi: chi.clone(),
                                phi: phi.clone(),
                                gamma: pick(rng),
                            },
                        )
                    }
                    FamilyTag::T36_7 => {
                        let (alpha, c_, delta) = (pick(rng), pick(rng), pick(rng));
                        let d = alpha * c_ + delta;
                        (
                            d.inv(),
                            -alpha / (d * d),
                            D::T36_7 {
                                chi: chi.clone(),
                                phi: phi.clone(),
                                alpha,
                                c: c_,
                                delta,
                            },
                        )
                    }
                    _ => (
                        pick(rng),
                        C64::new(0.0, 0.0),
                        D::T36_8 {
                            chi: chi.clone(),
                            phi: phi.clone(),
                            c: pick(rng),
                        },
                    ),
                };
                if !(m.is_finite() && mphi.is_finite()) {
                    return None;
                }
                let cons = [
                    (chi.function().clone(), m),
                    (phi, mphi),
                    (ones(16), pick(rng)),
                ];
                let st = fitted(b, &cons, &[0, 1, 4, 5, 8, 10])?;
                Some((b.name, st, desc))
            }
            FamilyTag::T44_3 => {
                let b = [&bs.z2, &bs.z3_id, &bs.z3_neg, &bs.t4][rng.gen_range(0..4)];
                let chi = sigma_invariant(&b.setting).choose(rng)?.clone();
                let n = b.setting.len();
                let support: Vec<usize> = (0..n).collect();
                let st = fitted(
                    b,
                    &[
                        (chi.function().clone(), pick(rng)),
                        (pick_vec(rng, n), pick(rng)),
                    ],
                    &support,
                )?;
                Some((
                    b.name,
                    st,
                    D::T44_3 {
                        chi,
                        delta: pick(rng),
                    },
                ))
            }
            FamilyTag::T44_4 => {
                let b = [&bs.z2, &bs.z3_id, &bs.t4][rng.gen_range(0..3)];
                let mut chis = sigma_invariant(&b.setting);
                chis.shuffle(rng);
                let (chi1, chi2) = (chis.first()?.clone(), chis.get(1)?.clone());
                let support: Vec<usize> = (0..b.setting.len()).collect();
                let cons = [
                    (chi1.function().clone(), pick(rng)),
                    (chi2.function().clone(), pick(rng)),
                ];
                let st = fitted(b, &cons, &support)?;
                Some((
                    b.name,
                    st,
                    D::T44_4 {
                        chi1,
                        chi2,
                        alpha: pick(rng),
                    },
                ))
            }
            FamilyTag::T44_5 => {
                let b = &bs.t4;
                let chi = point_exponential(&b.setting);
                let phi = CFunction::from_real(&[0.0, 1.0, 0.0, 0.0]).scale(pick(rng));
                let cons = [
                    (chi.function().clone(), pick(rng)),
                    (phi.clone(), C64::new(0.0, 0.0)),
                    (ones(4), pick(rng)),
                ];
                let st = fitted(b, &cons, &[0, 1, 2, 3])?;
                Some((b.name, st, D::T44_5 { chi, phi }))
            }
            FamilyTag::T44_6 => {
                let b = &bs.t4;
                let chi = point_exponential(&b.setting);
                let st = fitted(
                    b,
                    &[(chi.function().clone(), pick(rng)), (ones(4), pick(rng))],
                    &[0, 1],
                )?;
                let sols = solve_special_ks_addition(
                    st.semigroup(),
                    st.sigma(),
                    st.measure(),
                    &chi,
                    st.tol(),
                )
                .ok()?;
                let big_phi = sols.first()?.scale(pick(rng));
                Some((b.name, st, D::T44_6 { chi, big_phi }))
            }
        }
    }
}

/// `per_family` instances of each of the 14 families, in family order.
pub fn sweep(
    seed: u64,
    per_family: usize,
    tol: ToleranceProfile,
) -> Result<Vec<Instance>, SweepError> {
    let bases = Bases::new(tol);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(per_family * FamilyTag::ALL.len());
    for tag in FamilyTag::ALL {
        for i in 0..per_family {
            let mut draw = Draw {
                rng: &mut rng,
                bases: &bases,
            };
            let (name, setting, desc, f, g) = (0..MAX_ATTEMPTS)
                .find_map(|_| {
                    let (name, st, desc) = draw.candidate(tag)?;
                    let (f, g) = construct(&st, &desc).ok()?;
                    Some((name, st, desc, f, g))
                })
                .ok_or(SweepError::Exhausted(tag))?;
            out.push(Instance {
                label: format!("{tag}/{name}/{i}"),
                setting,
                desc,
                f,
                g,
            });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sweep_is_reproducible() {
        let a = sweep(7, 3, ToleranceProfile::default()).unwrap();
        let b = sweep(7, 3, ToleranceProfile::default()).unwrap();
        assert_eq!(a.len(), 42);
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(x.label, y.label);
            assert_eq!(x.f, y.f);
            assert_eq!(x.g, y.g);
        }
    }
}
