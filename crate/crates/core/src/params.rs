//! `(PAR, CR, F)` parameter vectors and the key-value parameter file format.
//!
//! ```text
//! # comment
//! population_size = 200
//! F5.par = 0.10
//! F5.cr = 0.40
//! F5.f = 0.29
//! ```
//!
//! Keys of the form `Fn.par`, `Fn.cr`, `Fn.f` make up per-function triples;
//! every other key is kept as a global setting. The same format is written
//! by the tuner.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::benchmark::FunctionId;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ParamVector {
    pub par: f64,
    pub cr: f64,
    pub f: f64,
}

impl ParamVector {
    pub const LOWER: [f64; 3] = [0.0, 0.0, 0.0];
    pub const UPPER: [f64; 3] = [1.0, 1.0, 2.0];

    pub fn new(par: f64, cr: f64, f: f64) -> Result<Self> {
        let p = Self { par, cr, f };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        for ((v, lo), hi) in self.to_array().iter().zip(Self::LOWER).zip(Self::UPPER) {
            if !(lo..=hi).contains(v) {
                return Err(Error::config(format!(
                    "parameters (PAR {}, CR {}, F {}) outside [0,1]x[0,1]x[0,2]",
                    self.par, self.cr, self.f
                )));
            }
        }
        Ok(())
    }

    pub fn to_array(self) -> [f64; 3] {
        [self.par, self.cr, self.f]
    }

    /// Clamps each gene into its bounds.
    pub fn from_array_clamped(a: [f64; 3]) -> Self {
        let c = |i: usize| a[i].clamp(Self::LOWER[i], Self::UPPER[i]);
        Self {
            par: c(0),
            cr: c(1),
            f: c(2),
        }
    }
}

/// Parsed parameter file.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ParamFile {
    pub globals: BTreeMap<String, f64>,
    pub functions: BTreeMap<FunctionId, ParamVector>,
}

impl ParamFile {
    pub fn parse(text: &str) -> Result<Self> {
        let mut globals = BTreeMap::new();
        let mut partial: BTreeMap<FunctionId, [Option<f64>; 3]> = BTreeMap::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |msg: &str| Error::Parse(format!("line {}: {msg}: {raw:?}", lineno + 1));
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| err("expected `key = value`"))?;
            let (key, value) = (key.trim(), value.trim());
            let value: f64 = value.parse().map_err(|_| err("value is not a number"))?;
            match key.split_once('.') {
                Some((id, field)) => {
                    let id: FunctionId = id.parse().map_err(|_| err("unknown function id"))?;
                    let slot = match field {
                        "par" => 0,
                        "cr" => 1,
                        "f" => 2,
                        _ => return Err(err("field must be par, cr or f")),
                    };
                    if partial.entry(id).or_default()[slot]
                        .replace(value)
                        .is_some()
                    {
                        return Err(err("duplicate key"));
                    }
                }
                None => {
                    if globals.insert(key.to_string(), value).is_some() {
                        return Err(err("duplicate key"));
                    }
                }
            }
        }
        let mut functions = BTreeMap::new();
        for (id, slots) in partial {
            match slots {
                [Some(par), Some(cr), Some(f)] => {
                    functions.insert(id, ParamVector::new(par, cr, f)?);
                }
                _ => return Err(Error::Parse(format!("{id} needs par, cr and f"))),
            }
        }
        Ok(Self { globals, functions })
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.globals {
            let _ = writeln!(out, "{k} = {v}");
        }
        for (id, p) in &self.functions {
            let _ = writeln!(
                out,
                "{id}.par = {}\n{id}.cr = {}\n{id}.f = {}",
                p.par, p.cr, p.f
            );
        }
        out
    }

    pub fn get(&self, id: FunctionId) -> Result<ParamVector> {
        self.functions
            .get(&id)
            .copied()
            .ok_or_else(|| Error::config(format!("no parameters for {id}")))
    }
}

const BUNDLED: &str = include_str!("../data/specialist_params.txt");

/// The bundled parameter file.
pub fn bundled() -> &'static ParamFile {
    static CELL: OnceLock<ParamFile> = OnceLock::new();
    CELL.get_or_init(|| ParamFile::parse(BUNDLED).expect("bundled parameter file is valid"))
}

/// Specialist `(PAR, CR, F)` for one function.
pub fn load_specialist_params(id: FunctionId) -> Result<ParamVector> {
    bundled().get(id)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn id(n: u8) -> FunctionId {
        FunctionId::new(n).unwrap()
    }

    #[test]
    fn spot_values() {
        assert_eq!(
            load_specialist_params(id(1)).unwrap(),
            ParamVector {
                par: 0.3,
                cr: 0.36,
                f: 0.3
            }
        );
        assert_eq!(
            load_specialist_params(id(5)).unwrap(),
            ParamVector {
                par: 0.10,
                cr: 0.40,
                f: 0.29
            }
        );
        assert_eq!(
            load_specialist_params(id(9)).unwrap(),
            ParamVector {
                par: 0.37,
                cr: 0.15,
                f: 0.37
            }
        );
        assert_eq!(
            load_specialist_params(id(15)).unwrap(),
            ParamVector {
                par: 0.34,
                cr: 0.14,
                f: 0.51
            }
        );
        assert_eq!(bundled().functions.len(), 15);
        assert_eq!(bundled().globals["population_size"], 200.0);
        assert_eq!(bundled().globals["par_default"], 0.4);
    }

    #[test]
    fn render_round_trips() {
        let f = bundled().clone();
        assert_eq!(ParamFile::parse(&f.render()).unwrap(), f);
    }

    #[test]
    fn parse_errors() {
        for bad in [
            "F1.par = 0.1\nF1.cr = 0.2",
            "F16.par = 0.1",
            "F1.xx = 0.1",
            "F1.par = abc",
            "no equals sign",
            "a = 1\na = 2",
            "F1.par = 0.1\nF1.cr = 0.2\nF1.f = 2.5",
        ] {
            assert!(ParamFile::parse(bad).is_err(), "{bad}");
        }
        assert!(ParamFile::default().get(id(3)).is_err());
    }

    #[test]
    fn clamping() {
        let p = ParamVector::from_array_clamped([-0.5, 1.5, 3.0]);
        assert_eq!(p.to_array(), [0.0, 1.0, 2.0]);
        assert!(ParamVector::new(0.5, 0.5, 0.0).is_ok());
    }
}
