#![allow(dead_code)]

use core::f64::consts::PI;

use kannappan_core::functions::{enumerate_exponentials, sigma_pullback};
use kannappan_core::{
    CFunction, DiscreteMeasure, Exponential, FiniteSemigroup, InvolutiveAutomorphism, Setting,
    ToleranceProfile, C64,
};

pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

pub fn cyclic(n: usize) -> FiniteSemigroup {
    FiniteSemigroup::from_fn(n, |x, y| (x + y) % n).unwrap()
}

pub fn trunc(k: usize) -> FiniteSemigroup {
    FiniteSemigroup::from_fn(k, |x, y| (x + y).min(k - 1)).unwrap()
}

pub fn negation(n: usize) -> InvolutiveAutomorphism {
    InvolutiveAutomorphism::new(&cyclic(n), (0..n).map(|x| (n - x) % n).collect()).unwrap()
}

pub fn trunc_sq(k: usize) -> FiniteSemigroup {
    trunc(k).product(&trunc(k))
}

pub fn swap(k: usize) -> InvolutiveAutomorphism {
    InvolutiveAutomorphism::new(
        &trunc_sq(k),
        (0..k * k).map(|i| (i % k) * k + i / k).collect(),
    )
    .unwrap()
}

pub fn setting(s: FiniteSemigroup, sigma: InvolutiveAutomorphism, mu: DiscreteMeasure) -> Setting {
    Setting::new(s, sigma, mu, ToleranceProfile::default()).unwrap()
}

pub fn omega() -> C64 {
    C64::from_polar(1.0, 2.0 * PI / 3.0)
}

/// χ₁(x) = ω^x on ℤ₃.
pub fn chi1() -> Exponential {
    enumerate_exponentials(&cyclic(3))
        .into_iter()
        .find(|e| (e.function()[1] - omega()).norm() < 1e-12)
        .unwrap()
}

/// ε⊗ε on T₄×T₄ and the antisymmetric φ with +1 at (1,0), −1 at (0,1).
pub fn eps_sq_and_phi() -> (Exponential, CFunction) {
    let exps = enumerate_exponentials(&trunc(4));
    let eps = exps.iter().find(|e| e.function()[1].norm() < 0.5).unwrap();
    let chi = eps.tensor(eps);
    let mut phi = vec![c(0.0, 0.0); 16];
    phi[4] = c(1.0, 0.0);
    phi[1] = c(-1.0, 0.0);
    (chi, CFunction::new(phi))
}

pub fn pullback(chi: &Exponential, sigma: &InvolutiveAutomorphism) -> CFunction {
    sigma_pullback(chi.function(), sigma)
}
