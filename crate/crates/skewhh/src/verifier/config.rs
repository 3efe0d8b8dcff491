//! Scenario configuration: a flat, line-oriented `key = value` format with
//! `[section]` headers.  All numbers are exact (rationals as `a/b`, formal
//! parameters as symbols).

use std::collections::BTreeMap;

use thiserror::Error;

use crate::algebra::parse::{parse_aelement, parse_scalar};
use crate::algebra::{AutomorphismSpec, BaseAlgebra};
use crate::complex::y::TwistVariant;
use crate::complex::{Margin, Window};
use crate::scalar::Scalar;
use crate::skew::ESpec;

#[derive(Error, Debug)]
pub enum ConfigError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("[{section}] {key}: {msg}")]
    Value {
        section: String,
        key: String,
        msg: String,
    },
    #[error("missing key [{section}] {key}")]
    Missing { section: String, key: String },
    #[error("invalid scenario: {0}")]
    Invalid(String),
}

/// Parsed and resolved scenario.
pub struct Scenario {
    pub spec: ESpec,
    pub window: Window,
    pub margin: Margin,
    pub suites: Vec<String>,
    pub seed: u64,
    pub format: OutputFormat,
    pub variant: TwistVariant,
    pub parallel: bool,
    /// Raw key/value view for suite-specific extras.
    pub raw: BTreeMap<(String, String), String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OutputFormat {
    Table,
    Json,
}

fn parse_raw(src: &str) -> Result<BTreeMap<(String, String), String>, ConfigError> {
    let mut out = BTreeMap::new();
    let mut section = String::from("global");
    for (ln, line) in src.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if let Some(name) = line.strip_prefix('[') {
            let name = name.strip_suffix(']').ok_or(ConfigError::Syntax {
                line: ln + 1,
                msg: "unterminated section header".into(),
            })?;
            section = name.trim().to_string();
            continue;
        }
        let (k, v) = line.split_once('=').ok_or(ConfigError::Syntax {
            line: ln + 1,
            msg: "expected key = value".into(),
        })?;
        out.insert(
            (section.clone(), k.trim().to_string()),
            v.trim().to_string(),
        );
    }
    Ok(out)
}

pub fn parse_scenario(src: &str) -> Result<Scenario, ConfigError> {
    let raw = parse_raw(src)?;
    let get = |section: &str, key: &str| -> Option<&String> {
        raw.get(&(section.to_string(), key.to_string()))
    };
    let require = |section: &str, key: &str| -> Result<&String, ConfigError> {
        get(section, key).ok_or_else(|| ConfigError::Missing {
            section: section.into(),
            key: key.into(),
        })
    };
    let scalar_value = |section: &str, key: &str, v: &str| -> Result<Scalar, ConfigError> {
        if v == "generic" {
            return match key {
                "p" => Ok(Scalar::param_p()),
                _ => Ok(Scalar::param_q()),
            };
        }
        parse_scalar(v).map_err(|e| ConfigError::Value {
            section: section.into(),
            key: key.into(),
            msg: e.to_string(),
        })
    };

    // [algebra]
    let kind = require("algebra", "kind")?.as_str();
    let base = match kind {
        "polynomial" => BaseAlgebra::Polynomial,
        "laurent" => BaseAlgebra::Laurent,
        "quantum_affine" => {
            let v: usize = require("algebra", "vars")?
                .parse()
                .map_err(|_| ConfigError::Value {
                    section: "algebra".into(),
                    key: "vars".into(),
                    msg: "expected an integer".into(),
                })?;
            let mut qmat = vec![vec![Scalar::one(); v]; v];
            for i in 0..v {
                for j in (i + 1)..v {
                    let key = format!("q{}{}", i + 1, j + 1);
                    let s = match get("algebra", &key) {
                        Some(s) => scalar_value("algebra", &key, s)?,
                        None => Scalar::one(),
                    };
                    let inv = s.invert().map_err(|_| ConfigError::Value {
                        section: "algebra".into(),
                        key: key.clone(),
                        msg: "q-matrix entries must be invertible".into(),
                    })?;
                    qmat[i][j] = s;
                    qmat[j][i] = inv;
                }
            }
            BaseAlgebra::quantum_affine(qmat)
                .map_err(|e| ConfigError::Invalid(e.to_string()))?
        }
        other => {
            return Err(ConfigError::Value {
                section: "algebra".into(),
                key: "kind".into(),
                msg: format!("unknown kind '{}'", other),
            })
        }
    };

    // [e]
    let lambda = match get("e", "lambda") {
        Some(v) => Some(scalar_value("e", "lambda", v)?),
        None => None,
    };
    let auto = |section: &str, key: &str, text: &str| -> Result<AutomorphismSpec, ConfigError> {
        let text = text.trim();
        if text == "id" || text == "identity" {
            return Ok(AutomorphismSpec::Identity);
        }
        if let Some(rest) = text.strip_prefix("scale") {
            let rest = rest.trim();
            let parts: Vec<&str> = if rest.is_empty() {
                vec![]
            } else {
                rest.split(',').map(|s| s.trim()).collect()
            };
            if parts.is_empty() {
                return Err(ConfigError::Value {
                    section: section.into(),
                    key: key.into(),
                    msg: "scale needs at least one factor".into(),
                });
            }
            let mut factors = Vec::new();
            for p in &parts {
                factors.push(scalar_value(section, key, p)?);
            }
            if factors.len() == 1 && base.nvars() > 1 {
                factors = vec![factors[0].clone(); base.nvars()];
            }
            return Ok(AutomorphismSpec::MonomialScaling(factors));
        }
        if let Some(rest) = text.strip_prefix("shift") {
            let rest = rest.trim();
            let l = if rest.is_empty() {
                lambda.clone().ok_or_else(|| ConfigError::Value {
                    section: section.into(),
                    key: key.into(),
                    msg: "shift needs a value or a lambda key".into(),
                })?
            } else {
                scalar_value(section, key, rest)?
            };
            return Ok(AutomorphismSpec::Shift(l));
        }
        Err(ConfigError::Value {
            section: section.into(),
            key: key.into(),
            msg: format!("unknown automorphism '{}'", text),
        })
    };
    let alpha = auto("e", "alpha", require("e", "alpha")?)?;
    let gamma = match get("e", "gamma") {
        Some(text) => auto("e", "gamma", text)?,
        None => AutomorphismSpec::Identity,
    };
    let u_text = require("e", "u")?;
    let u = parse_aelement(u_text, &base).map_err(|e| ConfigError::Value {
        section: "e".into(),
        key: "u".into(),
        msg: e.to_string(),
    })?;
    let p = match get("e", "p") {
        Some(v) => scalar_value("e", "p", v)?,
        None => Scalar::one(),
    };
    let spec = ESpec::new(base, &alpha, &gamma, u, p)
        .map_err(|e| ConfigError::Invalid(e.to_string()))?;

    // [window]
    let int = |section: &str, key: &str, default: i64| -> Result<i64, ConfigError> {
        match get(section, key) {
            Some(v) => v.parse().map_err(|_| ConfigError::Value {
                section: section.into(),
                key: key.into(),
                msg: "expected an integer".into(),
            }),
            None => Ok(default),
        }
    };
    let weights = match get("window", "weights") {
        Some(v) => parse_weights(v).map_err(|msg| ConfigError::Value {
            section: "window".into(),
            key: "weights".into(),
            msg,
        })?,
        None => vec![0],
    };
    let max_i = int("window", "max_i", 3)? as u32;
    let max_adeg = int("window", "max_adeg", 3)?;
    let max_len = int("window", "max_len", 3)? as u32;
    let mut window = Window::new(weights, max_i, max_adeg, max_len);
    if let Some(v) = get("window", "max_j") {
        window = window.with_max_j(v.parse().map_err(|_| ConfigError::Value {
            section: "window".into(),
            key: "max_j".into(),
            msg: "expected an integer".into(),
        })?);
    }
    if let Some(v) = get("window", "max_basis") {
        window.max_basis = v.parse().map_err(|_| ConfigError::Value {
            section: "window".into(),
            key: "max_basis".into(),
            msg: "expected an integer".into(),
        })?;
    }
    let udeg = spec.u.degree();
    let default_margin = crate::homology::min_margin(udeg, true);
    let margin = Margin::new(
        int("window", "margin_i", default_margin.di as i64)? as u32,
        int("window", "margin_adeg", default_margin.dadeg)?,
        int("window", "margin_len", default_margin.dlen as i64)? as u32,
    );

    // [run]
    let suites = match get("run", "suites") {
        Some(v) => v
            .split(',')
            .map(|s| s.trim().to_string())
            .filter(|s| !s.is_empty())
            .collect(),
        None => vec![],
    };
    let seed = int("run", "seed", 42)? as u64;
    let format = match get("run", "format").map(|s| s.as_str()) {
        None | Some("table") => OutputFormat::Table,
        Some("json") => OutputFormat::Json,
        Some(other) => {
            return Err(ConfigError::Value {
                section: "run".into(),
                key: "format".into(),
                msg: format!("unknown format '{}'", other),
            })
        }
    };
    let variant = match get("run", "variant").map(|s| s.as_str()) {
        None | Some("plus") => TwistVariant::GammaJ,
        Some("minus") => TwistVariant::GammaNegJ,
        Some(other) => {
            return Err(ConfigError::Value {
                section: "run".into(),
                key: "variant".into(),
                msg: format!("unknown variant '{}' (plus|minus)", other),
            })
        }
    };
    let parallel = matches!(get("run", "parallel").map(|s| s.as_str()), Some("true"));
    Ok(Scenario {
        spec,
        window,
        margin,
        suites,
        seed,
        format,
        variant,
        parallel,
        raw,
    })
}

fn parse_weights(v: &str) -> Result<Vec<i64>, String> {
    let v = v.trim();
    if let Some((a, b)) = v.split_once("..") {
        let lo: i64 = a.trim().parse().map_err(|_| "bad range start".to_string())?;
        let hi: i64 = b.trim().parse().map_err(|_| "bad range end".to_string())?;
        if lo > hi {
            return Err("empty weight range".into());
        }
        return Ok((lo..=hi).collect());
    }
    let mut out = Vec::new();
    for part in v.split(',') {
        out.push(
            part.trim()
                .parse()
                .map_err(|_| format!("bad weight '{}'", part))?,
        );
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_shift_scenario() {
        let cfg = r#"
# example
[algebra]
kind = polynomial

[e]
u = -(t-1)^2/4
alpha = shift
lambda = 2

[window]
weights = 0
max_i = 3
max_adeg = 8

[run]
suites = casimir, lemma-1.3
seed = 7
"#;
        let sc = parse_scenario(cfg).unwrap();
        assert!(sc.spec.validate().is_ok());
        assert_eq!(sc.suites, vec!["casimir", "lemma-1.3"]);
        assert_eq!(sc.seed, 7);
        assert_eq!(sc.window.max_adeg, 8);
    }

    #[test]
    fn parse_quantum_affine_scenario() {
        let cfg = r#"
[algebra]
kind = quantum_affine
vars = 2
q12 = q

[e]
u = t1
p = generic
alpha = scale q
gamma = scale 1, q^-1

[window]
weights = -2..2
"#;
        let sc = parse_scenario(cfg).unwrap();
        assert!(sc.spec.validate().is_ok());
        assert_eq!(sc.window.weights, vec![-2, -1, 0, 1, 2]);
    }

    #[test]
    fn parse_errors_carry_position() {
        let e = parse_scenario("[algebra\nkind = polynomial").err().unwrap();
        assert!(matches!(e, ConfigError::Syntax { line: 1, .. }));
        let cfg = "[algebra]\nkind = polynomial\n[e]\nu = -(t*1\nalpha = shift 1";
        let e = parse_scenario(cfg).err().unwrap();
        assert!(matches!(e, ConfigError::Value { .. }));
    }
}
