use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Positive definite kernel family on the plane. Only the Gaussian is
/// provided; it is bounded by 1 and Lipschitz in the RKHS sense with constant
/// `sqrt(2)/sigma` against the ∞-norm.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum KernelFamily {
    Gaussian,
}

/// A parameterized positive definite kernel on the plane.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KernelSpec {
    family: KernelFamily,
    bandwidth: f64,
}

impl KernelSpec {
    /// Gaussian kernel `k(x, y) = exp(-|x - y|^2 / (2 sigma^2))`.
    pub fn gaussian(sigma: f64) -> Result<Self> {
        if !(sigma.is_finite() && sigma > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "kernel bandwidth must be positive and finite, got {sigma}"
            )));
        }
        Ok(Self { family: KernelFamily::Gaussian, bandwidth: sigma })
    }

    pub fn family(&self) -> KernelFamily {
        self.family
    }

    pub fn bandwidth(&self) -> f64 {
        self.bandwidth
    }

    /// Uniform bound on `|k|`; 1 for the Gaussian.
    pub fn bound(&self) -> f64 {
        1.0
    }

    /// RKHS Lipschitz constant against the ∞-norm on the plane:
    /// `|k(.,x) - k(.,y)|_H^2 = 2(1 - k(x,y)) <= |x-y|^2/sigma^2 <= 2|x-y|_inf^2/sigma^2`.
    pub fn lipschitz(&self) -> f64 {
        std::f64::consts::SQRT_2 / self.bandwidth
    }
}

/// Evaluates the kernel at a pair of plane points. Values lie in `(0, 1]`.
pub fn plane_kernel(x: [f64; 2], y: [f64; 2], spec: &KernelSpec) -> f64 {
    match spec.family {
        KernelFamily::Gaussian => {
            let dx = x[0] - y[0];
            let dy = x[1] - y[1];
            let s = spec.bandwidth;
            (-(dx * dx + dy * dy) / (2.0 * s * s)).exp()
        }
    }
}
