//! Flat `key = value` experiment configuration.
//!
//! One pair per line; `#` starts a comment; blank lines are ignored.
//! Unknown keys and repeated keys are errors.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::experiments::SolutionParams;
use crate::schemes::{InvariantCoefficients, SchemeKind};

pub const KEYS: &[&str] = &[
    "solution", "scheme", "a", "b", "c", "d", "x0", "y0", "h", "k", "M", "N", "seed", "out_dir", "alpha", "beta",
    "gamma", "delta", "A", "s", "swap_captions", "value",
];

#[derive(Debug, Clone, PartialEq)]
pub struct Config {
    /// `s1`, `s2`, `s3` or `constant`.
    pub solution: Option<String>,
    pub scheme: SchemeKind,
    pub x0: f64,
    pub y0: f64,
    pub h: f64,
    pub k: f64,
    pub m: usize,
    pub n: usize,
    pub seed: u64,
    pub out_dir: Option<PathBuf>,
    pub params: SolutionParams,
    pub swap_captions: bool,
    /// Value of the `constant` solution.
    pub value: f64,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            solution: None,
            scheme: SchemeKind::INVARIANT,
            x0: 0.0,
            y0: 0.0,
            h: 0.02,
            k: 0.02,
            m: 10,
            n: 10,
            seed: 42,
            out_dir: None,
            params: SolutionParams::default(),
            swap_captions: false,
            value: 1.0,
        }
    }
}

fn num(key: &str, v: &str) -> Result<f64> {
    v.parse::<f64>()
        .ok()
        .filter(|x| x.is_finite())
        .ok_or_else(|| Error::Config(format!("{key}: expected a finite number, got '{v}'")))
}

fn count(key: &str, v: &str) -> Result<usize> {
    v.parse::<usize>()
        .map_err(|_| Error::Config(format!("{key}: expected a non-negative integer, got '{v}'")))
}

fn flag(key: &str, v: &str) -> Result<bool> {
    match v.to_ascii_lowercase().as_str() {
        "true" | "yes" | "1" => Ok(true),
        "false" | "no" | "0" => Ok(false),
        _ => Err(Error::Config(format!("{key}: expected true or false, got '{v}'"))),
    }
}

impl Config {
    pub fn parse(text: &str) -> Result<Config> {
        let mut pairs = BTreeMap::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| Error::Config(format!("line {}: expected key=value", lineno + 1)))?;
            let (key, value) = (key.trim(), value.trim());
            if !KEYS.contains(&key) {
                return Err(Error::Config(format!("line {}: unknown key '{key}'", lineno + 1)));
            }
            if pairs.insert(key.to_string(), value.to_string()).is_some() {
                return Err(Error::Config(format!("line {}: duplicate key '{key}'", lineno + 1)));
            }
        }
        Self::from_pairs(&pairs)
    }

    pub fn load(path: &Path) -> Result<Config> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    fn from_pairs(p: &BTreeMap<String, String>) -> Result<Config> {
        let mut c = Config::default();
        let get = |k: &str| p.get(k).map(String::as_str);
        if let Some(v) = get("solution") {
            let v = v.to_ascii_lowercase();
            if !["s1", "s2", "s3", "constant"].contains(&v.as_str()) {
                return Err(Error::Config(format!("unknown solution '{v}'")));
            }
            c.solution = Some(v);
        }
        for (key, slot) in [
            ("x0", &mut c.x0),
            ("y0", &mut c.y0),
            ("alpha", &mut c.params.alpha),
            ("beta", &mut c.params.beta),
            ("gamma", &mut c.params.gamma),
            ("delta", &mut c.params.delta),
            ("A", &mut c.params.a),
            ("s", &mut c.params.s),
            ("value", &mut c.value),
        ] {
            if let Some(v) = get(key) {
                *slot = num(key, v)?;
            }
        }
        if let Some(v) = get("h") {
            c.h = num("h", v)?;
            c.k = c.h;
        }
        if let Some(v) = get("k") {
            c.k = num("k", v)?;
        }
        if !(c.h > 0.0 && c.k > 0.0) {
            return Err(Error::Config("h and k must be positive".into()));
        }
        if let Some(v) = get("M") {
            c.m = count("M", v)?;
        }
        if let Some(v) = get("N") {
            c.n = count("N", v)?;
        }
        if c.m < 2 || c.n < 2 {
            return Err(Error::Config("M and N must be at least 2".into()));
        }
        if let Some(v) = get("seed") {
            c.seed = v
                .parse()
                .map_err(|_| Error::Config(format!("seed: expected an unsigned integer, got '{v}'")))?;
        }
        c.out_dir = get("out_dir").map(PathBuf::from);
        if let Some(v) = get("swap_captions") {
            c.swap_captions = flag("swap_captions", v)?;
        }

        let coeff = |key: &str, default: f64| get(key).map_or(Ok(default), |v| num(key, v));
        let mut scheme: SchemeKind = get("scheme").unwrap_or("invariant-explicit").parse()?;
        match &mut scheme {
            SchemeKind::InvariantExplicit { a } => *a = coeff("a", 0.5)?,
            SchemeKind::InvariantImplicit(ic) => {
                *ic = InvariantCoefficients::new(coeff("a", 0.5)?, coeff("b", 0.0)?, coeff("c", 0.5)?, coeff("d", 0.0)?)
                    .map_err(|e| Error::Config(e.to_string()))?;
            }
            _ => {}
        }
        c.scheme = scheme;
        Ok(c)
    }
}
