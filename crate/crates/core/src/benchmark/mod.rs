//! Seeded, dimension-scalable LSGO benchmark family `F1..F15`.
//!
//! | id      | structure                                   | base          |
//! |---------|---------------------------------------------|---------------|
//! | F1-F3   | fully separable                             | Elliptic, Rastrigin, Ackley |
//! | F4-F7   | rotated subcomponents + separable tail      | Elliptic, Rastrigin, Ackley, Schwefel 1.2 |
//! | F8-F11  | rotated subcomponents, no tail              | same as F4-F7 |
//! | F12-F14 | overlapping subcomponents                   | Rosenbrock, Schwefel (conforming), Schwefel (conflicting) |
//! | F15     | fully non-separable                         | Schwefel 1.2  |
//!
//! Instance data (shift, permutation, weights, rotations) is regenerated
//! from `(function id, dimension, seed)`.

mod base;
mod descriptor;
mod instance;
mod layout;
mod transform;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub use base::BaseFunction;
pub use descriptor::{InstanceDescriptor, SubcomponentDescriptor, TailDescriptor};
pub use instance::{make_instance, BenchmarkInstance, Subcomponent, Tail};
pub use layout::{Layout, REFERENCE_SIZES};
pub use transform::{
    asymmetry, asymmetry_inverse, conditioning_diagonal, irregularity, irregularity_inverse,
    Rotation, Segment, TransformPipeline,
};

use crate::{Error, Result};

/// Variable-interaction structure of a benchmark function.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Family {
    FullySeparable,
    /// Partially separable with a separable tail.
    SeparableTail,
    /// Partially separable, every coordinate in some subcomponent.
    NoSeparableTail,
    Overlapping {
        conflicting: bool,
    },
    NonSeparable,
}

/// Benchmark function identifier, `F1..=F15`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct FunctionId(u8);

impl FunctionId {
    pub fn new(n: u8) -> Result<Self> {
        if (1..=15).contains(&n) {
            Ok(Self(n))
        } else {
            Err(Error::config(format!("unknown benchmark function F{n}")))
        }
    }

    pub fn all() -> impl Iterator<Item = FunctionId> {
        (1..=15).map(FunctionId)
    }

    pub fn number(self) -> u8 {
        self.0
    }

    pub fn family(self) -> Family {
        match self.0 {
            1..=3 => Family::FullySeparable,
            4..=7 => Family::SeparableTail,
            8..=11 => Family::NoSeparableTail,
            12 | 13 => Family::Overlapping { conflicting: false },
            14 => Family::Overlapping { conflicting: true },
            _ => Family::NonSeparable,
        }
    }

    pub fn base(self) -> BaseFunction {
        match self.0 {
            1 | 4 | 8 => BaseFunction::Elliptic,
            2 | 5 | 9 => BaseFunction::Rastrigin,
            3 | 6 | 10 => BaseFunction::Ackley,
            12 => BaseFunction::Rosenbrock,
            _ => BaseFunction::Schwefel12,
        }
    }

    /// Whether subcomponents get a rotation block.
    pub fn rotated(self) -> bool {
        matches!(
            self.family(),
            Family::SeparableTail | Family::NoSeparableTail
        ) || matches!(self.0, 13 | 14)
    }

    /// `(irregularity, asymmetry beta, conditioning alpha)` for this function.
    pub fn transform_settings(self) -> (bool, f64, f64) {
        match self.base() {
            BaseFunction::Elliptic => (true, 0.0, 1.0),
            BaseFunction::Rastrigin | BaseFunction::Ackley => (true, 0.2, 10.0),
            BaseFunction::Schwefel12 => (true, 0.2, 1.0),
            BaseFunction::Rosenbrock | BaseFunction::Sphere => (false, 0.0, 1.0),
        }
    }

    pub fn tail_base(self) -> BaseFunction {
        if self.0 == 7 {
            BaseFunction::Sphere
        } else {
            self.base()
        }
    }
}

impl fmt::Display for FunctionId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F{}", self.0)
    }
}

impl FromStr for FunctionId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let digits = t.strip_prefix(['F', 'f']).unwrap_or(t);
        let n: u8 = digits
            .parse()
            .map_err(|_| Error::config(format!("unknown benchmark function {s:?}")))?;
        Self::new(n)
    }
}

impl TryFrom<String> for FunctionId {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<FunctionId> for String {
    fn from(id: FunctionId) -> String {
        id.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_ids() {
        assert_eq!("F5".parse::<FunctionId>().unwrap().number(), 5);
        assert_eq!("15".parse::<FunctionId>().unwrap().to_string(), "F15");
        assert!("F16".parse::<FunctionId>().is_err());
        assert!("F0".parse::<FunctionId>().is_err());
        assert!("G3".parse::<FunctionId>().is_err());
    }

    #[test]
    fn family_table() {
        let fam = |n| FunctionId::new(n).unwrap().family();
        assert!((1..=3).all(|n| fam(n) == Family::FullySeparable));
        assert!((4..=7).all(|n| fam(n) == Family::SeparableTail));
        assert!((8..=11).all(|n| fam(n) == Family::NoSeparableTail));
        assert_eq!(fam(13), Family::Overlapping { conflicting: false });
        assert_eq!(fam(14), Family::Overlapping { conflicting: true });
        assert_eq!(fam(15), Family::NonSeparable);
        let base = |n| FunctionId::new(n).unwrap().base();
        assert_eq!(base(7), BaseFunction::Schwefel12);
        assert_eq!(base(12), BaseFunction::Rosenbrock);
        assert_eq!(base(10), BaseFunction::Ackley);
    }
}
