//! Complex functions on a finite semigroup, discrete measures, exponentials,
//! and the linear solvers for the special sine addition law
//! `φ(xy) = φ(x)χ(y) + χ(x)φ(y)` and its integral counterpart
//! `∫φ(xσ(y)t)dμ(t) = [φ(x)χ(y) + φ(y)χ(x)]·∫χdμ`.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Add, Index, Mul, Neg, Sub};

use thiserror::Error;

use crate::algebra::{index_period, FiniteSemigroup, InvolutiveAutomorphism};
use crate::linalg::{nullspace, solve_affine, ComplexMatrix, LinalgError, ToleranceProfile};
use crate::roots::RootValue;
use crate::C64;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FunctionError {
    #[error("linear system is inconsistent (residual {residual:e})")]
    Inconsistent { residual: f64 },
    #[error("∫χ dμ is numerically zero")]
    DegenerateMoment,
    #[error("χ∘σ differs from χ")]
    SigmaMismatch,
    #[error("measure has no atoms")]
    EmptyMeasure,
    #[error("support index {0} repeated")]
    DuplicateAtom(usize),
    #[error("element index {0} out of range")]
    OutOfRange(usize),
    #[error("function has length {got}, semigroup has {expected} elements")]
    SizeMismatch { expected: usize, got: usize },
    #[error("non-finite value")]
    NonFinite,
    #[error(transparent)]
    Linalg(LinalgError),
}

impl From<LinalgError> for FunctionError {
    fn from(e: LinalgError) -> Self {
        match e {
            LinalgError::Inconsistent { residual } => FunctionError::Inconsistent { residual },
            other => FunctionError::Linalg(other),
        }
    }
}

const ZERO: C64 = C64::new(0.0, 0.0);

/// A function `S → ℂ`, `values[x] = f(x)`.
#[derive(Debug, Clone, PartialEq)]
pub struct CFunction {
    values: Vec<C64>,
}

impl CFunction {
    pub fn new(values: Vec<C64>) -> Self {
        CFunction { values }
    }

    pub fn from_real(values: &[f64]) -> Self {
        CFunction {
            values: values.iter().map(|&v| C64::new(v, 0.0)).collect(),
        }
    }

    pub fn zeros(n: usize) -> Self {
        CFunction {
            values: vec![ZERO; n],
        }
    }

    pub fn constant(n: usize, c: C64) -> Self {
        CFunction { values: vec![c; n] }
    }

    pub fn values(&self) -> &[C64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<C64> {
        self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.values
            .iter()
            .all(|z| z.re.is_finite() && z.im.is_finite())
    }

    pub fn norm_inf(&self) -> f64 {
        self.values.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// `max_x |f(x) − g(x)|`.
    pub fn max_diff(&self, other: &CFunction) -> f64 {
        assert_eq!(self.len(), other.len());
        self.values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn is_zero(&self, tol: &ToleranceProfile) -> bool {
        self.norm_inf() <= tol.residual_eps
    }

    pub fn scale(&self, c: C64) -> CFunction {
        CFunction {
            values: self.values.iter().map(|v| v * c).collect(),
        }
    }

    /// `a·self + b·other`.
    pub fn combine(&self, a: C64, other: &CFunction, b: C64) -> CFunction {
        assert_eq!(self.len(), other.len());
        CFunction {
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(x, y)| a * x + b * y)
                .collect(),
        }
    }

    fn check_len(&self, n: usize) -> Result<(), FunctionError> {
        if self.len() != n {
            return Err(FunctionError::SizeMismatch {
                expected: n,
                got: self.len(),
            });
        }
        Ok(())
    }
}

impl Index<usize> for CFunction {
    type Output = C64;
    fn index(&self, x: usize) -> &C64 {
        &self.values[x]
    }
}

impl Add for &CFunction {
    type Output = CFunction;
    fn add(self, rhs: &CFunction) -> CFunction {
        self.combine(C64::new(1.0, 0.0), rhs, C64::new(1.0, 0.0))
    }
}

impl Sub for &CFunction {
    type Output = CFunction;
    fn sub(self, rhs: &CFunction) -> CFunction {
        self.combine(C64::new(1.0, 0.0), rhs, C64::new(-1.0, 0.0))
    }
}

impl Mul<C64> for &CFunction {
    type Output = CFunction;
    fn mul(self, rhs: C64) -> CFunction {
        self.scale(rhs)
    }
}

impl Neg for &CFunction {
    type Output = CFunction;
    fn neg(self) -> CFunction {
        self.scale(C64::new(-1.0, 0.0))
    }
}

/// `μ = Σ αᵢ δ_{zᵢ}` with distinct support points.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteMeasure {
    atoms: Vec<(usize, C64)>,
}

impl DiscreteMeasure {
    /// `n` is the size of the semigroup the measure lives on.
    pub fn new(n: usize, atoms: Vec<(usize, C64)>) -> Result<Self, FunctionError> {
        if atoms.is_empty() {
            return Err(FunctionError::EmptyMeasure);
        }
        let mut seen = vec![false; n];
        for &(z, w) in &atoms {
            if z >= n {
                return Err(FunctionError::OutOfRange(z));
            }
            if seen[z] {
                return Err(FunctionError::DuplicateAtom(z));
            }
            if !w.re.is_finite() || !w.im.is_finite() {
                return Err(FunctionError::NonFinite);
            }
            seen[z] = true;
        }
        Ok(DiscreteMeasure { atoms })
    }

    pub fn point_mass(z: usize) -> Self {
        DiscreteMeasure {
            atoms: vec![(z, C64::new(1.0, 0.0))],
        }
    }

    pub fn atoms(&self) -> &[(usize, C64)] {
        &self.atoms
    }

    /// Largest support index plus one.
    pub fn min_size(&self) -> usize {
        self.atoms.iter().map(|a| a.0 + 1).max().unwrap_or(0)
    }

    pub fn total_variation(&self) -> f64 {
        self.atoms.iter().map(|a| a.1.norm()).sum()
    }
}

/// `∫ h dμ = Σ αᵢ h(zᵢ)`.
pub fn integrate(mu: &DiscreteMeasure, h: &CFunction) -> C64 {
    mu.atoms.iter().map(|&(z, w)| w * h[z]).sum()
}

/// `∫ h(a·t) dμ(t)`.
pub fn shifted_integral(s: &FiniteSemigroup, mu: &DiscreteMeasure, h: &CFunction, a: usize) -> C64 {
    mu.atoms.iter().map(|&(z, w)| w * h[s.op(a, z)]).sum()
}

/// `∬ h(σ(s)·k) dμ(k) dμ(s)`.
pub fn double_moment(
    s: &FiniteSemigroup,
    sigma: &InvolutiveAutomorphism,
    mu: &DiscreteMeasure,
    h: &CFunction,
) -> C64 {
    mu.atoms
        .iter()
        .map(|&(zs, ws)| ws * shifted_integral(s, mu, h, sigma.apply(zs)))
        .sum()
}

/// `K[x][y] = ∫ f(x·σ(y)·t) dμ(t)`.
pub fn kannappan_transform(
    s: &FiniteSemigroup,
    sigma: &InvolutiveAutomorphism,
    mu: &DiscreteMeasure,
    f: &CFunction,
) -> Vec<Vec<C64>> {
    let n = s.len();
    // the integral only depends on the product x·σ(y)
    let shifted: Vec<C64> = (0..n).map(|a| shifted_integral(s, mu, f, a)).collect();
    (0..n)
        .map(|x| (0..n).map(|y| shifted[s.op(x, sigma.apply(y))]).collect())
        .collect()
}

/// `f∘σ`.
pub fn sigma_pullback(f: &CFunction, sigma: &InvolutiveAutomorphism) -> CFunction {
    CFunction {
        values: (0..f.len()).map(|x| f[sigma.apply(x)]).collect(),
    }
}

/// Nonzero and multiplicative within `residual_eps`.
pub fn is_exponential(s: &FiniteSemigroup, chi: &CFunction, tol: &ToleranceProfile) -> bool {
    if chi.len() != s.len() || chi.norm_inf() <= tol.residual_eps {
        return false;
    }
    (0..s.len()).all(|x| {
        (0..s.len()).all(|y| (chi[s.op(x, y)] - chi[x] * chi[y]).norm() <= tol.residual_eps)
    })
}

/// A nonzero multiplicative function, held exactly and as floats.
#[derive(Debug, Clone, PartialEq)]
pub struct Exponential {
    function: CFunction,
    exact: Vec<RootValue>,
}

impl Exponential {
    /// Builds from exact values; checks multiplicativity exactly.
    pub fn from_exact(s: &FiniteSemigroup, exact: Vec<RootValue>) -> Option<Self> {
        let n = s.len();
        if exact.len() != n || exact.iter().all(|v| v.is_zero()) {
            return None;
        }
        for x in 0..n {
            for y in 0..n {
                if exact[s.op(x, y)] != exact[x] * exact[y] {
                    return None;
                }
            }
        }
        Some(Self::embed(exact))
    }

    fn embed(exact: Vec<RootValue>) -> Self {
        let function = CFunction::new(exact.iter().map(|v| v.to_complex()).collect());
        Exponential { function, exact }
    }

    pub fn function(&self) -> &CFunction {
        &self.function
    }

    pub fn exact_values(&self) -> &[RootValue] {
        &self.exact
    }

    pub fn len(&self) -> usize {
        self.exact.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exact.is_empty()
    }

    /// `χ∘σ`, exactly.
    pub fn pullback(&self, sigma: &InvolutiveAutomorphism) -> Exponential {
        Self::embed(
            (0..self.len())
                .map(|x| self.exact[sigma.apply(x)])
                .collect(),
        )
    }

    pub fn is_sigma_invariant(&self, sigma: &InvolutiveAutomorphism) -> bool {
        (0..self.len()).all(|x| self.exact[sigma.apply(x)] == self.exact[x])
    }

    /// Pointwise product of two exponentials on factor semigroups, laid out
    /// as in [`FiniteSemigroup::product`].
    pub fn tensor(&self, other: &Exponential) -> Exponential {
        let mut exact = Vec::with_capacity(self.len() * other.len());
        for a in &self.exact {
            for b in &other.exact {
                exact.push(*a * *b);
            }
        }
        Self::embed(exact)
    }
}

/// Every exponential `S → ℂ`, sorted lexicographically by exact values.
///
/// Values are searched in `{0} ∪ U_p` where `p` is the period of the
/// element: `x^(i+p) = x^i` forces `χ(x) = 0` or `χ(x)^p = 1`.
pub fn enumerate_exponentials(s: &FiniteSemigroup) -> Vec<Exponential> {
    let n = s.len();
    let candidates: Vec<Vec<RootValue>> = (0..n)
        .map(|x| {
            let p = index_period(s, x).period as u32;
            let mut c = vec![RootValue::Zero];
            c.extend((0..p).map(|j| RootValue::root(i64::from(j), p)));
            c.sort();
            c
        })
        .collect();
    let mut out = Vec::new();
    dfs_exponentials(s, &candidates, vec![None; n], &mut out);
    out
}

fn dfs_exponentials(
    s: &FiniteSemigroup,
    candidates: &[Vec<RootValue>],
    partial: Vec<Option<RootValue>>,
    out: &mut Vec<Exponential>,
) {
    let Some(x) = partial.iter().position(Option::is_none) else {
        let exact: Vec<RootValue> = partial
            .into_iter()
            .map(|v| v.unwrap_or(RootValue::Zero))
            .collect();
        if exact.iter().any(|v| !v.is_zero()) {
            out.push(Exponential::embed(exact));
        }
        return;
    };
    for &v in &candidates[x] {
        let mut next = partial.clone();
        next[x] = Some(v);
        if propagate_products(s, candidates, &mut next) {
            dfs_exponentials(s, candidates, next, out);
        }
    }
}

fn propagate_products(
    s: &FiniteSemigroup,
    candidates: &[Vec<RootValue>],
    vals: &mut [Option<RootValue>],
) -> bool {
    let n = s.len();
    loop {
        let mut changed = false;
        for a in 0..n {
            let Some(va) = vals[a] else { continue };
            for b in 0..n {
                let Some(vb) = vals[b] else { continue };
                let c = s.op(a, b);
                let want = va * vb;
                match vals[c] {
                    Some(vc) if vc != want => return false,
                    Some(_) => {}
                    None => {
                        if !candidates[c].contains(&want) {
                            return false;
                        }
                        vals[c] = Some(want);
                        changed = true;
                    }
                }
            }
        }
        if !changed {
            return true;
        }
    }
}

/// σ-parity constraint `φ∘σ = ±φ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Symmetric,
    Antisymmetric,
}

impl Parity {
    pub fn sign(self) -> f64 {
        match self {
            Parity::Symmetric => 1.0,
            Parity::Antisymmetric => -1.0,
        }
    }
}

/// An affine family `particular + span(basis)`.
#[derive(Debug, Clone, PartialEq)]
pub struct AffineFunctions {
    pub particular: CFunction,
    pub basis: Vec<CFunction>,
}

fn unit(n: usize) -> Vec<C64> {
    vec![ZERO; n]
}

/// Solutions of `φ(xy) = φ(x)χ(y) + χ(x)φ(y)`, optionally with a σ-parity
/// and moment constraints `∫φ dμ = target` appended as extra rows.
pub fn solve_sine_addition_special(
    s: &FiniteSemigroup,
    chi: &CFunction,
    parity: Option<(&InvolutiveAutomorphism, Parity)>,
    moments: &[(&DiscreteMeasure, C64)],
    tol: &ToleranceProfile,
) -> Result<AffineFunctions, FunctionError> {
    let n = s.len();
    chi.check_len(n)?;
    let one = C64::new(1.0, 0.0);
    let mut a = ComplexMatrix::zeros(0, n);
    let mut b = Vec::new();
    for x in 0..n {
        for y in 0..n {
            let mut row = unit(n);
            row[s.op(x, y)] += one;
            row[x] -= chi[y];
            row[y] -= chi[x];
            a.push_row(&row);
            b.push(ZERO);
        }
    }
    if let Some((sigma, par)) = parity {
        for x in 0..n {
            let mut row = unit(n);
            row[sigma.apply(x)] += one;
            row[x] -= C64::new(par.sign(), 0.0);
            a.push_row(&row);
            b.push(ZERO);
        }
    }
    for &(mu, target) in moments {
        let mut row = unit(n);
        for &(z, w) in mu.atoms() {
            if z >= n {
                return Err(FunctionError::OutOfRange(z));
            }
            row[z] += w;
        }
        a.push_row(&row);
        b.push(target);
    }
    let sol = solve_affine(&a, &b, tol)?;
    Ok(AffineFunctions {
        particular: CFunction::new(sol.particular),
        basis: sol.nullspace.into_iter().map(CFunction::new).collect(),
    })
}

/// Basis of the solutions `Φ` of
/// `∫Φ(xσ(y)t)dμ(t) = [Φ(x)χ(y) + Φ(y)χ(x)]·∫χdμ`.
pub fn solve_special_ks_addition(
    s: &FiniteSemigroup,
    sigma: &InvolutiveAutomorphism,
    mu: &DiscreteMeasure,
    chi: &Exponential,
    tol: &ToleranceProfile,
) -> Result<Vec<CFunction>, FunctionError> {
    let n = s.len();
    chi.function().check_len(n)?;
    if !chi.is_sigma_invariant(sigma) {
        return Err(FunctionError::SigmaMismatch);
    }
    let m = integrate(mu, chi.function());
    if m.norm() <= tol.residual_eps {
        return Err(FunctionError::DegenerateMoment);
    }
    let c = chi.function();
    let mut a = ComplexMatrix::zeros(0, n);
    for x in 0..n {
        for y in 0..n {
            let mut row = unit(n);
            let xs = s.op(x, sigma.apply(y));
            for &(z, w) in mu.atoms() {
                row[s.op(xs, z)] += w;
            }
            row[x] -= c[y] * m;
            row[y] -= c[x] * m;
            a.push_row(&row);
        }
    }
    Ok(nullspace(&a, tol).into_iter().map(CFunction::new).collect())
}

/// Minimal-norm weights on `support` meeting `∫h_k dμ = target_k`.
pub fn fit_measure(
    n: usize,
    constraints: &[(CFunction, C64)],
    support: &[usize],
    tol: &ToleranceProfile,
) -> Result<DiscreteMeasure, FunctionError> {
    if support.is_empty() {
        return Err(FunctionError::EmptyMeasure);
    }
    for &z in support {
        if z >= n {
            return Err(FunctionError::OutOfRange(z));
        }
    }
    let mut a = ComplexMatrix::zeros(0, support.len());
    let mut b = Vec::with_capacity(constraints.len());
    for (h, target) in constraints {
        h.check_len(n)?;
        let row: Vec<C64> = support.iter().map(|&z| h[z]).collect();
        a.push_row(&row);
        b.push(*target);
    }
    let sol = solve_affine(&a, &b, tol)?;
    DiscreteMeasure::new(n, support.iter().copied().zip(sol.particular).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::f64::consts::PI;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn cyclic(n: usize) -> FiniteSemigroup {
        FiniteSemigroup::from_fn(n, |x, y| (x + y) % n).unwrap()
    }

    fn trunc(k: usize) -> FiniteSemigroup {
        FiniteSemigroup::from_fn(k, |x, y| (x + y).min(k - 1)).unwrap()
    }

    fn omega() -> C64 {
        C64::from_polar(1.0, 2.0 * PI / 3.0)
    }

    fn chi1() -> CFunction {
        CFunction::new((0..3).map(|x| omega().powu(x)).collect())
    }

    fn negation(n: usize) -> InvolutiveAutomorphism {
        InvolutiveAutomorphism::new(&cyclic(n), (0..n).map(|x| (n - x) % n).collect()).unwrap()
    }

    #[test]
    fn integrate_examples() {
        let h = CFunction::from_real(&[4.0, 5.0]);
        assert_eq!(integrate(&DiscreteMeasure::point_mass(0), &h), c(4.0, 0.0));
        let two = DiscreteMeasure::new(2, vec![(0, c(2.0, 0.0))]).unwrap();
        assert_eq!(
            integrate(&two, &CFunction::constant(2, c(1.0, 0.0))),
            c(2.0, 0.0)
        );
        let mu = DiscreteMeasure::new(3, vec![(0, c(1.0, 0.0)), (1, c(1.0, 0.0))]).unwrap();
        assert!((integrate(&mu, &chi1()) - (c(1.0, 0.0) + omega())).norm() < 1e-15);
    }

    #[test]
    fn measure_validation() {
        assert_eq!(
            DiscreteMeasure::new(3, vec![]),
            Err(FunctionError::EmptyMeasure)
        );
        assert_eq!(
            DiscreteMeasure::new(3, vec![(3, c(1.0, 0.0))]),
            Err(FunctionError::OutOfRange(3))
        );
        assert_eq!(
            DiscreteMeasure::new(3, vec![(1, c(1.0, 0.0)), (1, c(2.0, 0.0))]),
            Err(FunctionError::DuplicateAtom(1))
        );
    }

    #[test]
    fn transform_examples() {
        let t4 = trunc(4);
        let id = InvolutiveAutomorphism::identity(4);
        let f = CFunction::from_real(&[1.0, -2.0, 0.5, 3.0]);
        let k = kannappan_transform(&t4, &id, &DiscreteMeasure::point_mass(0), &f);
        for x in 0..4 {
            for y in 0..4 {
                assert_eq!(k[x][y], f[t4.op(x, y)]);
            }
        }

        let z3 = cyclic(3);
        let k = kannappan_transform(&z3, &negation(3), &DiscreteMeasure::point_mass(0), &chi1());
        for x in 0..3u32 {
            for y in 0..3u32 {
                let expect = omega().powi(x as i32 - y as i32);
                assert!((k[x as usize][y as usize] - expect).norm() < 1e-14);
            }
        }

        let k = kannappan_transform(
            &z3,
            &negation(3),
            &DiscreteMeasure::point_mass(1),
            &CFunction::zeros(3),
        );
        assert!(k.iter().flatten().all(|v| *v == ZERO));
    }

    #[test]
    fn pullback_examples() {
        let f = CFunction::from_real(&[1.0, 2.0, 3.0]);
        assert_eq!(sigma_pullback(&f, &InvolutiveAutomorphism::identity(3)), f);
        let r3 = 3f64.sqrt();
        let g = CFunction::new(vec![c(0.0, 0.0), c(0.0, r3), c(0.0, -r3)]);
        assert_eq!(
            sigma_pullback(&g, &negation(3)),
            CFunction::new(vec![c(0.0, 0.0), c(0.0, -r3), c(0.0, r3)])
        );
        let k = CFunction::constant(3, c(2.0, 1.0));
        assert_eq!(sigma_pullback(&k, &negation(3)), k);
    }

    #[test]
    fn exponential_checks() {
        let tol = ToleranceProfile::default();
        assert!(is_exponential(&cyclic(3), &chi1(), &tol));
        assert!(!is_exponential(&cyclic(3), &CFunction::zeros(3), &tol));
        assert!(!is_exponential(
            &cyclic(2),
            &CFunction::from_real(&[1.0, 2.0]),
            &tol
        ));
    }

    #[test]
    fn exponential_counts() {
        let z3 = enumerate_exponentials(&cyclic(3));
        assert_eq!(z3.len(), 3);
        assert_eq!(z3[0].exact_values(), &[RootValue::ONE; 3]);
        let t4 = enumerate_exponentials(&trunc(4));
        assert_eq!(t4.len(), 2);
        assert_eq!(
            t4[0].function(),
            &CFunction::from_real(&[1.0, 0.0, 0.0, 0.0])
        );
        assert_eq!(t4[1].function(), &CFunction::from_real(&[1.0; 4]));
        let lz = FiniteSemigroup::from_fn(2, |x, _| x).unwrap();
        let e = enumerate_exponentials(&lz);
        assert_eq!(e.len(), 1);
        assert_eq!(e[0].function(), &CFunction::from_real(&[1.0, 1.0]));
    }

    #[test]
    fn sine_addition_special_examples() {
        let tol = ToleranceProfile::default();
        let t4 = trunc(4);
        let eps = CFunction::from_real(&[1.0, 0.0, 0.0, 0.0]);
        let sol = solve_sine_addition_special(&t4, &eps, None, &[], &tol).unwrap();
        assert_eq!(sol.basis, vec![CFunction::from_real(&[0.0, 1.0, 0.0, 0.0])]);
        assert!(sol.particular.norm_inf() < 1e-15);

        let z3 = cyclic(3);
        let sol =
            solve_sine_addition_special(&z3, &CFunction::constant(3, c(1.0, 0.0)), None, &[], &tol)
                .unwrap();
        assert!(sol.basis.is_empty());

        // antisymmetric φ on T4×T4 for χ0⊗χ0
        let sq = t4.product(&t4);
        let swap = InvolutiveAutomorphism::new(&sq, (0..16).map(|i| (i % 4) * 4 + i / 4).collect())
            .unwrap();
        let exps = enumerate_exponentials(&t4);
        let chi = exps[0].tensor(&exps[0]);
        let sol = solve_sine_addition_special(
            &sq,
            chi.function(),
            Some((&swap, Parity::Antisymmetric)),
            &[],
            &tol,
        )
        .unwrap();
        assert_eq!(sol.basis.len(), 1);
        let phi0 = [0.0, 1.0, 0.0, 0.0];
        let eps0 = [1.0, 0.0, 0.0, 0.0];
        let expect: Vec<f64> = (0..16)
            .map(|i| phi0[i / 4] * eps0[i % 4] - eps0[i / 4] * phi0[i % 4])
            .collect();
        let expect = CFunction::from_real(&expect);
        let b = &sol.basis[0];
        let ratio = b[4] / expect[4];
        assert!(b.max_diff(&expect.scale(ratio)) < 1e-12);
    }

    #[test]
    fn moment_rows_constrain_solutions() {
        let tol = ToleranceProfile::default();
        let t4 = trunc(4);
        let eps = CFunction::from_real(&[1.0, 0.0, 0.0, 0.0]);
        let mu = DiscreteMeasure::new(4, vec![(1, c(2.0, 0.0))]).unwrap();
        let sol =
            solve_sine_addition_special(&t4, &eps, None, &[(&mu, c(3.0, 0.0))], &tol).unwrap();
        assert!(sol.basis.is_empty());
        assert!(
            sol.particular
                .max_diff(&CFunction::from_real(&[0.0, 1.5, 0.0, 0.0]))
                < 1e-12
        );
        let zero_mu = DiscreteMeasure::new(4, vec![(0, c(1.0, 0.0))]).unwrap();
        let err = solve_sine_addition_special(&t4, &eps, None, &[(&zero_mu, c(1.0, 0.0))], &tol)
            .unwrap_err();
        assert!(matches!(err, FunctionError::Inconsistent { .. }));
    }

    #[test]
    fn special_ks_addition_examples() {
        let tol = ToleranceProfile::default();
        let t4 = trunc(4);
        let id = InvolutiveAutomorphism::identity(4);
        let exps = enumerate_exponentials(&t4);
        let basis =
            solve_special_ks_addition(&t4, &id, &DiscreteMeasure::point_mass(0), &exps[0], &tol)
                .unwrap();
        assert_eq!(basis, vec![CFunction::from_real(&[0.0, 1.0, 0.0, 0.0])]);

        let err =
            solve_special_ks_addition(&t4, &id, &DiscreteMeasure::point_mass(1), &exps[0], &tol)
                .unwrap_err();
        assert_eq!(err, FunctionError::DegenerateMoment);

        let z3 = cyclic(3);
        let e3 = enumerate_exponentials(&z3);
        let err = solve_special_ks_addition(
            &z3,
            &negation(3),
            &DiscreteMeasure::point_mass(0),
            &e3[1],
            &tol,
        );
        assert_eq!(err.unwrap_err(), FunctionError::SigmaMismatch);
    }

    #[test]
    fn fit_measure_examples() {
        let tol = ToleranceProfile::default();
        let one = CFunction::constant(1, c(1.0, 0.0));
        let mu = fit_measure(1, &[(one, c(1.0, 0.0))], &[0], &tol).unwrap();
        assert_eq!(mu.atoms(), &[(0, c(1.0, 0.0))]);

        let chi0 = CFunction::constant(3, c(1.0, 0.0));
        let chi2 = sigma_pullback(&chi1(), &negation(3));
        let cons = vec![
            (chi1(), c(-2.0, 0.0)),
            (chi2.clone(), c(2.0, 0.0)),
            (chi0.clone(), c(0.0, 0.0)),
        ];
        let mu = fit_measure(3, &cons, &[0, 1, 2], &tol).unwrap();
        // inverse DFT: w_z = (1/3) Σ_j m_j conj(χ_j(z))
        for &(z, w) in mu.atoms() {
            let expect = (c(-2.0, 0.0) * chi1()[z].conj() + c(2.0, 0.0) * chi2[z].conj()) / 3.0;
            assert!((w - expect).norm() < 1e-12);
        }
        for (h, t) in &cons {
            assert!((integrate(&mu, h) - t).norm() < 1e-12);
        }

        let zero = CFunction::zeros(3);
        let err = fit_measure(3, &[(zero, c(1.0, 0.0))], &[0, 1], &tol).unwrap_err();
        assert!(matches!(err, FunctionError::Inconsistent { .. }));
    }
}
