use thiserror::Error;

/// Failure modes of the skid model and the machinery built on it.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum SkidError {
    #[error("invalid parameter `{symbol}`: {reason}")]
    InvalidParams {
        symbol: &'static str,
        reason: String,
    },

    #[error("invalid state `{symbol}`: {reason}")]
    InvalidState {
        symbol: &'static str,
        reason: String,
    },

    #[error("degenerate state: course angle Theta_C is undefined at V_X1 = 0")]
    DegenerateState,

    #[error("singular yaw rate: |omega_z| = {0:e} rad/s is below the model threshold")]
    SingularYawRate(f64),

    #[error("singular denominator in yaw acceleration: D = {0:e}")]
    SingularDenominator(f64),

    #[error("singular course angle: Theta_C = {0} rad is too close to pi/2")]
    SingularCourseAngle(f64),

    #[error("singular slip angle: cos(delta_1) = {0:e}")]
    SingularSlipAngle(f64),

    #[error("invalid drive-wheel slip S_x = {0}: expected a value in [0, 1]")]
    InvalidSlip(f64),

    #[error("singular evaluation inside speed bracket near V_X1 = {0} m/s")]
    SingularInBracket(f64),
}

impl SkidError {
    /// True for errors caused by evaluating the model at a singular point,
    /// as opposed to invalid inputs.
    pub fn is_singular(&self) -> bool {
        matches!(
            self,
            SkidError::DegenerateState
                | SkidError::SingularYawRate(_)
                | SkidError::SingularDenominator(_)
                | SkidError::SingularCourseAngle(_)
                | SkidError::SingularSlipAngle(_)
                | SkidError::SingularInBracket(_)
        )
    }

    pub(crate) fn params(symbol: &'static str, reason: impl Into<String>) -> Self {
        SkidError::InvalidParams {
            symbol,
            reason: reason.into(),
        }
    }

    pub(crate) fn state(symbol: &'static str, reason: impl Into<String>) -> Self {
        SkidError::InvalidState {
            symbol,
            reason: reason.into(),
        }
    }
}

pub type Result<T, E = SkidError> = std::result::Result<T, E>;
