//! Physical inputs and the derived symbol set shared by every other module.
//!
//! All quantities are in reduced units with `hbar = mu = r0 = 1`: lengths are
//! multiples of the effective range, wavenumbers are in `1/r0`, and energies
//! are stored as `2 mu E / hbar^2` (units of `hbar^2 / (2 mu r0^2)`).

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ParamError {
    #[error("effective range must be positive and finite, got {0}")]
    NonPositiveRange(f64),
    #[error("scattering length must be finite and nonzero, got {0}")]
    InvalidScatteringLength(f64),
    #[error(
        "scattering length a_s = {a_s} lies in [0, 2 r0] = [0, {two_r0}]; \
         the positive-branch potential needs a_s > 2 r0"
    )]
    ForbiddenWindow { a_s: f64, two_r0: f64 },
    #[error("at unitarity the branch must be chosen explicitly")]
    UnitarityNeedsBranch,
}

/// Scattering length, with the `|a_s| -> infinity` limit kept as its own state.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ScatteringLength {
    Finite(f64),
    Unitarity,
}

/// Sign branch of a concrete potential.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Branch {
    /// `a_s < 0`, no bound state, `V_-`.
    Negative,
    /// `a_s > 2 r0`, one shallow bound state, `V_+`.
    Positive,
}

/// Branch tag carried by [`DerivedParams`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BranchTag {
    NegativeAs,
    PositiveAs,
    Unitarity,
}

impl BranchTag {
    pub fn admits(self, branch: Branch) -> bool {
        matches!(
            (self, branch),
            (BranchTag::Unitarity, _)
                | (BranchTag::NegativeAs, Branch::Negative)
                | (BranchTag::PositiveAs, Branch::Positive)
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScatteringParams {
    pub scattering_length: ScatteringLength,
    /// Effective range; sets the length unit. Reduced-unit callers pass 1.
    pub effective_range: f64,
}

impl ScatteringParams {
    pub fn new(a_s: f64, r0: f64) -> Result<Self, ParamError> {
        let p = Self {
            scattering_length: ScatteringLength::Finite(a_s),
            effective_range: r0,
        };
        p.validate()?;
        Ok(p)
    }

    /// Reduced-unit parameters (`r0 = 1`) for a scattering length in units of `r0`.
    pub fn reduced(a_s: f64) -> Result<Self, ParamError> {
        Self::new(a_s, 1.0)
    }

    pub fn unitarity(r0: f64) -> Result<Self, ParamError> {
        let p = Self {
            scattering_length: ScatteringLength::Unitarity,
            effective_range: r0,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<(), ParamError> {
        let r0 = self.effective_range;
        if !(r0.is_finite() && r0 > 0.0) {
            return Err(ParamError::NonPositiveRange(r0));
        }
        if let ScatteringLength::Finite(a_s) = self.scattering_length {
            if !a_s.is_finite() || a_s == 0.0 {
                return Err(ParamError::InvalidScatteringLength(a_s));
            }
            if a_s > 0.0 && a_s <= 2.0 * r0 {
                return Err(ParamError::ForbiddenWindow { a_s, two_r0: 2.0 * r0 });
            }
        }
        Ok(())
    }

    /// `a_s / r0`, or `None` at unitarity.
    pub fn reduced_scattering_length(&self) -> Option<f64> {
        match self.scattering_length {
            ScatteringLength::Finite(a) => Some(a / self.effective_range),
            ScatteringLength::Unitarity => None,
        }
    }
}

/// Derived dimensionless symbols, all in units of `r0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DerivedParams {
    /// `a_s / r0`; `None` at unitarity.
    pub a_s: Option<f64>,
    /// `sqrt(1 - 2 r0 / a_s)`.
    pub alpha: f64,
    /// `1 + alpha`.
    pub beta: f64,
    /// `beta / r0`.
    pub kappa: f64,
    /// `1/alpha - 1`.
    pub epsilon: f64,
    /// Positive root of `lambda (lambda + 1) = 2 / alpha`.
    pub lambda1: f64,
    /// Negative root.
    pub lambda2: f64,
    /// `-alpha` on the positive branch.
    pub big_lambda: Option<f64>,
    /// Bound-state wavenumber `(1 - alpha) / r0` on the positive branch.
    pub kappa0: Option<f64>,
    pub sign: BranchTag,
}

pub fn derive_params(p: &ScatteringParams) -> Result<DerivedParams, ParamError> {
    p.validate()?;
    let (a_s, alpha, sign) = match p.reduced_scattering_length() {
        None => (None, 1.0, BranchTag::Unitarity),
        Some(a) => {
            let alpha = (1.0 - 2.0 / a).sqrt();
            let sign = if a < 0.0 {
                BranchTag::NegativeAs
            } else {
                BranchTag::PositiveAs
            };
            (Some(a), alpha, sign)
        }
    };
    let beta = 1.0 + alpha;
    let (lambda1, lambda2) = lambda_roots(alpha);
    let (big_lambda, kappa0) = match sign {
        BranchTag::PositiveAs => (Some(-alpha), Some(1.0 - alpha)),
        _ => (None, None),
    };
    Ok(DerivedParams {
        a_s,
        alpha,
        beta,
        kappa: beta,
        epsilon: if sign == BranchTag::Unitarity {
            0.0
        } else {
            1.0 / alpha - 1.0
        },
        lambda1,
        lambda2,
        big_lambda,
        kappa0,
        sign,
    })
}

/// Roots of `lambda (lambda + 1) = 2 / alpha`, ordered `(positive, negative)`.
fn lambda_roots(alpha: f64) -> (f64, f64) {
    if alpha == 1.0 {
        return (1.0, -2.0);
    }
    let disc = (1.0 + 8.0 / alpha).sqrt();
    let l2 = -0.5 - 0.5 * disc;
    // Vieta for the small root avoids cancellation in -1/2 + disc/2.
    let l1 = (-2.0 / alpha) / l2;
    (l1, l2)
}

impl DerivedParams {
    /// The Poschl-Teller degree that reproduces the sign of `a_s`.
    pub fn branch_lambda(&self) -> Result<f64, ParamError> {
        match self.sign {
            BranchTag::NegativeAs => Ok(self.lambda1),
            BranchTag::PositiveAs => Ok(self.lambda2),
            BranchTag::Unitarity => Err(ParamError::UnitarityNeedsBranch),
        }
    }

    pub fn lambda_on(&self, branch: Branch) -> f64 {
        match branch {
            Branch::Negative => self.lambda1,
            Branch::Positive => self.lambda2,
        }
    }

    /// Concrete branch, if the parameters fix one.
    pub fn branch(&self) -> Option<Branch> {
        match self.sign {
            BranchTag::NegativeAs => Some(Branch::Negative),
            BranchTag::PositiveAs => Some(Branch::Positive),
            BranchTag::Unitarity => None,
        }
    }

    /// Resolve the branch, using `choice` only at unitarity.
    pub fn resolve_branch(&self, choice: Option<Branch>) -> Result<Branch, ParamError> {
        self.branch()
            .or(choice)
            .ok_or(ParamError::UnitarityNeedsBranch)
    }
}
