use alloc::vec::Vec;

use crate::algebra::{check_involution, AlgebraError, FiniteSemigroup, InvolutiveAutomorphism};
use crate::functions::{
    double_moment, enumerate_exponentials, integrate, kannappan_transform, shifted_integral,
    CFunction, DiscreteMeasure, Exponential, FunctionError,
};
use crate::linalg::ToleranceProfile;
use crate::C64;

/// A semigroup with its involution, measure and tolerances, plus the
/// exponentials of the semigroup computed once up front.
#[derive(Debug, Clone)]
pub struct Setting {
    semigroup: FiniteSemigroup,
    sigma: InvolutiveAutomorphism,
    measure: DiscreteMeasure,
    tol: ToleranceProfile,
    exponentials: Vec<Exponential>,
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SettingError {
    #[error("involution: {0}")]
    Sigma(AlgebraError),
    #[error("measure: {0}")]
    Measure(FunctionError),
}

impl Setting {
    pub fn new(
        semigroup: FiniteSemigroup,
        sigma: InvolutiveAutomorphism,
        measure: DiscreteMeasure,
        tol: ToleranceProfile,
    ) -> Result<Self, SettingError> {
        check_involution(&semigroup, sigma.as_slice()).map_err(SettingError::Sigma)?;
        if measure.min_size() > semigroup.len() {
            return Err(SettingError::Measure(FunctionError::OutOfRange(
                measure.min_size() - 1,
            )));
        }
        let exponentials = enumerate_exponentials(&semigroup);
        Ok(Setting {
            semigroup,
            sigma,
            measure,
            tol,
            exponentials,
        })
    }

    pub fn semigroup(&self) -> &FiniteSemigroup {
        &self.semigroup
    }

    pub fn sigma(&self) -> &InvolutiveAutomorphism {
        &self.sigma
    }

    pub fn measure(&self) -> &DiscreteMeasure {
        &self.measure
    }

    pub fn tol(&self) -> &ToleranceProfile {
        &self.tol
    }

    pub fn len(&self) -> usize {
        self.semigroup.len()
    }

    pub fn is_empty(&self) -> bool {
        self.semigroup.is_empty()
    }

    /// All exponentials, in canonical order.
    pub fn exponentials(&self) -> &[Exponential] {
        &self.exponentials
    }

    pub fn with_measure(&self, measure: DiscreteMeasure) -> Result<Setting, SettingError> {
        if measure.min_size() > self.len() {
            return Err(SettingError::Measure(FunctionError::OutOfRange(
                measure.min_size() - 1,
            )));
        }
        Ok(Setting {
            measure,
            ..self.clone()
        })
    }

    pub fn integral(&self, h: &CFunction) -> C64 {
        integrate(&self.measure, h)
    }

    pub fn shifted_integral(&self, h: &CFunction, a: usize) -> C64 {
        shifted_integral(&self.semigroup, &self.measure, h, a)
    }

    pub fn double_moment(&self, h: &CFunction) -> C64 {
        double_moment(&self.semigroup, &self.sigma, &self.measure, h)
    }

    pub fn transform(&self, f: &CFunction) -> Vec<Vec<C64>> {
        kannappan_transform(&self.semigroup, &self.sigma, &self.measure, f)
    }

    /// `|v| ≤ residual_eps·(1 + ‖h‖∞)`.
    pub fn moment_is_zero(&self, v: C64, h: &CFunction) -> bool {
        self.tol.is_zero(v, h.norm_inf())
    }
}
