//! TOML description of an inner product. Every number is an exact string.
//!
//! ```toml
//! mode = "exact"
//!
//! [measure]
//! type = "laguerre"
//! alpha = "0"
//!
//! [[masses]]
//! c = "-1"
//! order = 1
//! lambda = "2"
//! ```

use std::ops::Range;

use dsop_core::rational::parse_rational;
use dsop_core::{Error, ExtInterval, ExtReal, LaguerreParam, MassTerm, Measure, Rational, SobolevSpec};
use serde::{Deserialize, Serialize};
use toml::Spanned;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    #[default]
    Exact,
    Float,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MeasureKind {
    Laguerre,
    Moments,
}

/// `type = "laguerre"` takes `alpha`; `type = "moments"` takes `values` and
/// `hull`, whose ends may be "-inf" or "inf".
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MeasureDoc {
    #[serde(rename = "type")]
    pub kind: MeasureKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<Spanned<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub values: Option<Vec<Spanned<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hull: Option<[Spanned<String>; 2]>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MassDoc {
    pub c: Spanned<String>,
    pub order: usize,
    pub lambda: Spanned<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigDoc {
    #[serde(default)]
    pub mode: Mode,
    pub measure: Spanned<MeasureDoc>,
    #[serde(default)]
    pub masses: Vec<MassDoc>,
}

/// A config problem with its location in the source, when known.
#[derive(Clone, Debug, PartialEq)]
pub struct ConfigError {
    pub message: String,
    pub line: Option<usize>,
    pub column: Option<usize>,
}

impl ConfigError {
    fn at(source: &str, span: Option<Range<usize>>, message: impl Into<String>) -> Self {
        let (line, column) = match span {
            Some(r) => {
                let (l, c) = line_col(source, r.start);
                (Some(l), Some(c))
            }
            None => (None, None),
        };
        ConfigError {
            message: message.into(),
            line,
            column,
        }
    }

    pub fn render(&self, path: &str) -> String {
        match (self.line, self.column) {
            (Some(l), Some(c)) => format!("{path}:{l}:{c}: {}", self.message),
            _ => format!("{path}: {}", self.message),
        }
    }
}

fn line_col(source: &str, offset: usize) -> (usize, usize) {
    let before = &source[..offset.min(source.len())];
    let line = before.matches('\n').count() + 1;
    let column = before.rfind('\n').map_or(before.chars().count(), |i| before[i + 1..].chars().count()) + 1;
    (line, column)
}

/// A parsed and validated config.
#[derive(Clone, Debug)]
pub struct Config {
    pub doc: ConfigDoc,
    pub spec: SobolevSpec,
}

impl Config {
    pub fn mode(&self) -> Mode {
        self.doc.mode
    }
}

fn number(source: &str, s: &Spanned<String>) -> Result<Rational, ConfigError> {
    parse_rational(s.get_ref()).map_err(|e| ConfigError::at(source, Some(s.span()), e.to_string()))
}

fn endpoint(source: &str, s: &Spanned<String>) -> Result<ExtReal, ConfigError> {
    match s.get_ref().trim() {
        "inf" | "+inf" => Ok(ExtReal::PosInf),
        "-inf" => Ok(ExtReal::NegInf),
        _ => number(source, s).map(ExtReal::Finite),
    }
}

impl ConfigDoc {
    pub fn parse(source: &str) -> Result<Self, ConfigError> {
        toml::from_str(source).map_err(|e| ConfigError::at(source, e.span(), e.message().to_string()))
    }

    /// Builds the inner product. `source` is only used to locate errors.
    pub fn build(&self, source: &str) -> Result<SobolevSpec, ConfigError> {
        let table = Some(self.measure.span());
        let m = self.measure.get_ref();
        let measure = match (m.kind, &m.alpha, &m.values, &m.hull) {
            (MeasureKind::Laguerre, Some(alpha), None, None) => {
                let a = number(source, alpha)?;
                let param = LaguerreParam::from_rational(&a, self.mode == Mode::Exact);
                Measure::Laguerre(param.map_err(|e| ConfigError::at(source, Some(alpha.span()), e.to_string()))?)
            }
            (MeasureKind::Laguerre, ..) => {
                return Err(ConfigError::at(source, table, "a laguerre measure takes exactly the key alpha"))
            }
            (MeasureKind::Moments, None, Some(values), Some(hull)) => {
                let values = values.iter().map(|v| number(source, v)).collect::<Result<Vec<_>, _>>()?;
                let lo = endpoint(source, &hull[0])?;
                let hi = endpoint(source, &hull[1])?;
                if lo >= hi {
                    return Err(ConfigError::at(source, Some(hull[0].span()), "hull must satisfy lo < hi"));
                }
                Measure::Moments {
                    values,
                    hull: ExtInterval::new(lo, hi),
                }
            }
            (MeasureKind::Moments, ..) => {
                return Err(ConfigError::at(source, table, "a moments measure takes exactly the keys values and hull"))
            }
        };
        let mut masses = Vec::with_capacity(self.masses.len());
        for m in &self.masses {
            let c = number(source, &m.c)?;
            let lambda = number(source, &m.lambda)?;
            // Validate term by term so errors point at the offending entry.
            let single = SobolevSpec::new(measure.clone(), vec![MassTerm::new(c.clone(), m.order, lambda.clone())]);
            if let Err(e) = single {
                let span = match &e {
                    Error::InvalidMass(msg) if msg.starts_with("lambda") => m.lambda.span(),
                    _ => m.c.span(),
                };
                return Err(ConfigError::at(source, Some(span), e.to_string()));
            }
            masses.push(MassTerm::new(c, m.order, lambda));
        }
        SobolevSpec::new(measure, masses).map_err(|e| ConfigError::at(source, None, e.to_string()))
    }
}

pub fn load_str(source: &str) -> Result<Config, ConfigError> {
    let doc = ConfigDoc::parse(source)?;
    let spec = doc.build(source)?;
    Ok(Config { doc, spec })
}

#[cfg(test)]
mod tests {
    use super::*;

    impl ConfigDoc {
        fn to_toml(&self) -> String {
            toml::to_string(self).expect("config documents always serialize")
        }
    }

    const EXAMPLE: &str = r#"
mode = "exact"

[measure]
type = "laguerre"
alpha = "0"

[[masses]]
c = "-1"
order = 0
lambda = "10"

[[masses]]
c = "-3"
order = 1
lambda = "5"
"#;

    #[test]
    fn parses_and_round_trips() {
        let cfg = load_str(EXAMPLE).unwrap();
        assert_eq!(cfg.spec.d_star(), 2);
        let text = cfg.doc.to_toml();
        let again = ConfigDoc::parse(&text).unwrap();
        assert_eq!(again, cfg.doc);
        assert_eq!(again.to_toml(), text);
    }

    #[test]
    fn moments_measure() {
        let src = r#"
[measure]
type = "moments"
values = ["1", "0", "1/3", "0", "1/5"]
hull = ["-1", "1"]

[[masses]]
c = "2"
order = 1
lambda = "1/2"
"#;
        let cfg = load_str(src).unwrap();
        assert_eq!(cfg.spec.moment_count(), Some(5));
        let round = ConfigDoc::parse(&cfg.doc.to_toml()).unwrap();
        assert_eq!(round, cfg.doc);
    }

    #[test]
    fn negative_lambda_is_located() {
        let src = EXAMPLE.replace("lambda = \"5\"", "lambda = \"-1\"");
        let err = load_str(&src).unwrap_err();
        assert!(err.message.contains("lambda must be nonnegative"), "{err:?}");
        assert_eq!(err.line, Some(16));
        assert_eq!(err.column, Some(10));
    }

    #[test]
    fn unknown_keys_rejected() {
        let src = EXAMPLE.replace("order = 1", "order = 1\nweight = 3");
        let err = load_str(&src).unwrap_err();
        assert!(err.message.contains("weight"), "{err:?}");
        assert!(err.line.is_some());
        let src = EXAMPLE.replace("alpha = \"0\"", "alpha = \"0\"\nbeta = \"1\"");
        assert!(load_str(&src).is_err());
    }

    #[test]
    fn decimals_rejected() {
        let src = EXAMPLE.replace("\"-3\"", "\"-3.5\"");
        let err = load_str(&src).unwrap_err();
        assert_eq!(err.line, Some(14));
    }
}
