//! Errors and their exit codes.

use epiattr_core::tower::SearchLimit;
use epiattr_core::{
    AttractorError, OracleError, ProfileError, SweepError, TowerError, VerifyError,
};

pub const FAILED: u8 = 1;
pub const USAGE: u8 = 2;
pub const CAP: u8 = 3;

#[derive(Debug)]
pub struct Fail {
    pub code: u8,
    pub message: String,
}

impl Fail {
    pub fn usage(message: impl Into<String>) -> Self {
        Fail {
            code: USAGE,
            message: message.into(),
        }
    }

    pub fn internal(message: impl Into<String>) -> Self {
        Fail {
            code: FAILED,
            message: message.into(),
        }
    }

    fn with(code: u8, e: impl ToString) -> Self {
        Fail {
            code,
            message: e.to_string(),
        }
    }
}

impl From<TowerError> for Fail {
    fn from(e: TowerError) -> Self {
        let code = match e {
            TowerError::LevelCap { .. } | TowerError::LengthCap { .. } => CAP,
            TowerError::DirectiveExhausted { .. } => USAGE,
        };
        Fail::with(code, e)
    }
}

impl From<VerifyError> for Fail {
    fn from(e: VerifyError) -> Self {
        Fail::with(USAGE, e)
    }
}

impl From<OracleError> for Fail {
    fn from(e: OracleError) -> Self {
        let code = match e {
            OracleError::TooLong { .. } | OracleError::BudgetExhausted { .. } => CAP,
            OracleError::MaxSizeTooLarge { .. } | OracleError::Verify(_) => USAGE,
        };
        Fail::with(code, e)
    }
}

impl From<AttractorError> for Fail {
    fn from(e: AttractorError) -> Self {
        match e {
            AttractorError::Tower(t) => t.into(),
            AttractorError::Verify(v) => v.into(),
            AttractorError::NotFound { limit, .. } => {
                let code = match limit {
                    SearchLimit::LevelCap | SearchLimit::LengthCap => CAP,
                    SearchLimit::DirectiveExhausted => USAGE,
                };
                Fail::with(code, e)
            }
            AttractorError::Internal(_) => Fail::with(FAILED, e),
            _ => Fail::with(USAGE, e),
        }
    }
}

impl From<ProfileError> for Fail {
    fn from(e: ProfileError) -> Self {
        match e {
            ProfileError::Tower(t) => t.into(),
            ProfileError::Oracle(o) => o.into(),
            ProfileError::Disagreement(_) => Fail::with(FAILED, e),
        }
    }
}

impl From<SweepError> for Fail {
    fn from(e: SweepError) -> Self {
        match e {
            SweepError::Tower(t) => t.into(),
            SweepError::Attractor(a) => a.into(),
            SweepError::Oracle(o) => o.into(),
        }
    }
}
