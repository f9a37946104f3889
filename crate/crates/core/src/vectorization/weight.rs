use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default arctangent exponent.
pub const DEFAULT_P_ARC: u32 = 5;

/// Weight function on diagram points. Every family vanishes on the diagonal
/// (and below it) and is nonnegative above it; in particular the unweighted
/// family is 1 strictly above the diagonal and 0 on it, which never changes a
/// computed value because source diagrams drop zero-persistence pairs.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum WeightSpec {
    /// `w0(x) = 1` off the diagonal.
    Unweighted,
    /// `w1(x) = pers(x)`.
    Linear,
    /// `w_arc(x) = arctan(scale * pers(x)^exponent)`.
    Arctangent { scale: f64, exponent: u32 },
}

impl WeightSpec {
    pub fn arctangent(scale: f64, exponent: u32) -> Result<Self> {
        if !(scale.is_finite() && scale > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "arctangent scale must be positive and finite, got {scale}"
            )));
        }
        if exponent == 0 {
            return Err(Error::InvalidParameter(
                "arctangent exponent must be a positive integer".into(),
            ));
        }
        Ok(Self::Arctangent { scale, exponent })
    }
}

/// Evaluates the weight at a diagram point `x = (birth, death)`.
pub fn weight(x: [f64; 2], spec: &WeightSpec) -> f64 {
    let pers = x[1] - x[0];
    if pers <= 0.0 {
        return 0.0;
    }
    match *spec {
        WeightSpec::Unweighted => 1.0,
        WeightSpec::Linear => pers,
        WeightSpec::Arctangent { scale, exponent } => {
            (scale * pers.powi(exponent as i32)).atan()
        }
    }
}
