//! The six benchmark functions with closed-form first derivatives.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TestFunction {
    F1,
    F2,
    F3,
    F4,
    F5,
    F6,
}

/// Where a function's fine-scale content sits on `[-1, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FreqClass {
    Low,
    InteriorHigh,
    BoundaryHigh,
}

impl TestFunction {
    pub const ALL: [TestFunction; 6] = [Self::F1, Self::F2, Self::F3, Self::F4, Self::F5, Self::F6];

    pub fn id(self) -> &'static str {
        match self {
            Self::F1 => "f1",
            Self::F2 => "f2",
            Self::F3 => "f3",
            Self::F4 => "f4",
            Self::F5 => "f5",
            Self::F6 => "f6",
        }
    }

    pub fn eval(self, x: f64) -> f64 {
        match self {
            Self::F1 => x.exp(),
            Self::F2 => x * x * x - 3.0 * x * x + 0.5 * x,
            Self::F3 => (100.0 / (1.0 + 25.0 * x * x)).cos(),
            Self::F4 => libm::erf(x),
            Self::F5 => (100.0 * x * x).cos(),
            Self::F6 => 1.0 / (1.1 - x * x),
        }
    }

    pub fn deriv(self, x: f64) -> f64 {
        match self {
            Self::F1 => x.exp(),
            Self::F2 => 3.0 * x * x - 6.0 * x + 0.5,
            Self::F3 => {
                let q = 1.0 + 25.0 * x * x;
                (100.0 / q).sin() * 5000.0 * x / (q * q)
            }
            Self::F4 => std::f64::consts::FRAC_2_SQRT_PI * (-x * x).exp(),
            Self::F5 => -200.0 * x * (100.0 * x * x).sin(),
            Self::F6 => {
                let q = 1.1 - x * x;
                2.0 * x / (q * q)
            }
        }
    }

    pub fn freq_class(self) -> FreqClass {
        match self {
            Self::F1 | Self::F2 => FreqClass::Low,
            Self::F3 | Self::F4 => FreqClass::InteriorHigh,
            Self::F5 | Self::F6 => FreqClass::BoundaryHigh,
        }
    }

    pub fn sample(self, x: &[f64]) -> Vec<f64> {
        x.iter().map(|&v| self.eval(v)).collect()
    }

    pub fn sample_deriv(self, x: &[f64]) -> Vec<f64> {
        x.iter().map(|&v| self.deriv(v)).collect()
    }
}

impl fmt::Display for TestFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for TestFunction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        Self::ALL
            .into_iter()
            .find(|f| f.id().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::UnknownFunction(s.to_string()))
    }
}
