use alloc::boxed::Box;
use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

/// Errors raised by the models.
///
/// `InvalidParameter` is an input that breaks a type invariant and is
/// detected before any arithmetic happens; the remaining variants are domain
/// errors where the inputs are individually valid but the formula has no
/// meaningful value.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    InvalidParameter {
        field: &'static str,
        value: f64,
        requirement: &'static str,
    },
    /// The closed-form dice count is negative: the die does not fit the wafer.
    DieTooLarge { die_area: f64, diameter: f64, count: f64 },
    ZeroDice,
    ZeroYield,
    /// A markup or ratio denominator is zero or negative.
    NonPositiveDenominator { what: &'static str, value: f64 },
    ZeroBaseline,
    ZeroAttackCost,
    /// A swept configuration failed; `value` is the offending sweep point.
    SweepPoint {
        parameter: &'static str,
        value: f64,
        source: Box<Error>,
    },
}

impl Error {
    pub(crate) fn invalid(field: &'static str, value: f64, requirement: &'static str) -> Self {
        Error::InvalidParameter {
            field,
            value,
            requirement,
        }
    }

    /// True for invariant violations on the inputs, false for domain errors.
    pub fn is_invalid_parameter(&self) -> bool {
        matches!(self, Error::InvalidParameter { .. })
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidParameter {
                field,
                value,
                requirement,
            } => write!(f, "{field} = {value} violates: {requirement}"),
            Error::DieTooLarge {
                die_area,
                diameter,
                count,
            } => write!(
                f,
                "die of {die_area} mm² does not fit a {diameter} mm wafer (dice count {count:.3} < 0)"
            ),
            Error::ZeroDice => f.write_str("dice per wafer is zero"),
            Error::ZeroYield => f.write_str("die yield is zero"),
            Error::NonPositiveDenominator { what, value } => {
                write!(f, "{what} must be positive, got {value}")
            }
            Error::ZeroBaseline => f.write_str("baseline total chip cost is zero"),
            Error::ZeroAttackCost => f.write_str("attack cost is zero; feasibility ratio undefined"),
            Error::SweepPoint {
                parameter,
                value,
                source,
            } => write!(f, "sweep of {parameter} failed at value {value}: {source}"),
        }
    }
}

impl core::error::Error for Error {
    fn source(&self) -> Option<&(dyn core::error::Error + 'static)> {
        match self {
            Error::SweepPoint { source, .. } => Some(source.as_ref()),
            _ => None,
        }
    }
}

pub(crate) fn require_finite(field: &'static str, value: f64) -> Result<()> {
    if value.is_finite() {
        Ok(())
    } else {
        Err(Error::invalid(field, value, "must be finite"))
    }
}

pub(crate) fn require_non_negative(field: &'static str, value: f64) -> Result<()> {
    require_finite(field, value)?;
    if value >= 0.0 {
        Ok(())
    } else {
        Err(Error::invalid(field, value, "must be >= 0"))
    }
}

pub(crate) fn require_positive(field: &'static str, value: f64) -> Result<()> {
    require_finite(field, value)?;
    if value > 0.0 {
        Ok(())
    } else {
        Err(Error::invalid(field, value, "must be > 0"))
    }
}

pub(crate) fn require_unit_interval(field: &'static str, value: f64) -> Result<()> {
    require_finite(field, value)?;
    if (0.0..=1.0).contains(&value) {
        Ok(())
    } else {
        Err(Error::invalid(field, value, "must lie in [0, 1]"))
    }
}
