//! Line-oriented metric specification files.
//!
//! ```text
//! # Schwarzschild, units with G = c = 1
//! coords = t,r,theta,phi
//! param rs = 1.0
//! g[0][0] = 1 - rs/r
//! g[1][1] = -1/(1 - rs/r)
//! g[2][2] = -r^2
//! g[3][3] = -r^2*sin(theta)^2
//! ```
//!
//! Indices are 0-based positions in the `coords` list. Omitted components are
//! zero and writing `g[0][1]` also sets `g[1][0]`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use thiserror::Error;

use super::{Env, Expr, ExprError};

/// Storage order of the ten independent components.
pub const COMPONENT_PAIRS: [(usize, usize); 10] = [
    (0, 0),
    (0, 1),
    (0, 2),
    (0, 3),
    (1, 1),
    (1, 2),
    (1, 3),
    (2, 2),
    (2, 3),
    (3, 3),
];

/// Slot of `g[mu][nu]` in [`COMPONENT_PAIRS`] order; symmetric in its arguments.
pub fn component_index(mu: usize, nu: usize) -> usize {
    let (i, j) = if mu <= nu { (mu, nu) } else { (nu, mu) };
    debug_assert!(j < 4);
    // rows of the upper triangle have lengths 4, 3, 2, 1
    i * 4 - i * (i.saturating_sub(1)) / 2 + (j - i)
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MetricSpecError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: {source}")]
    Expr { line: usize, source: ExprError },
    #[error("missing `coords = ...` line")]
    MissingCoords,
    #[error("line {line}: need exactly 4 coordinates, got {count}")]
    CoordArity { line: usize, count: usize },
    #[error("line {line}: `{name}` is not a valid identifier")]
    BadIdentifier { line: usize, name: String },
    #[error("duplicate name `{0}` among coordinates and parameters")]
    DuplicateName(String),
    #[error("line {line}: component g[{mu}][{nu}] assigned twice")]
    DuplicateComponent { line: usize, mu: usize, nu: usize },
    #[error("line {line}: index {index} outside 0..3")]
    IndexOutOfRange { line: usize, index: String },
    #[error("component g[{mu}][{nu}] references undeclared `{name}`")]
    Undeclared { mu: usize, nu: usize, name: String },
    #[error("unknown parameter `{0}`")]
    UnknownParameter(String),
    #[error("parameter `{name}` must be finite, got {value}")]
    NonFiniteParameter { name: String, value: f64 },
}

/// A metric g_{mu nu}(x) given by component expressions.
#[derive(Debug, Clone, PartialEq)]
pub struct MetricSpec {
    coords: [String; 4],
    params: BTreeMap<String, f64>,
    components: [Expr; 10],
}

impl MetricSpec {
    pub fn new(
        coords: [String; 4],
        params: BTreeMap<String, f64>,
        components: [Expr; 10],
    ) -> Result<Self, MetricSpecError> {
        for name in coords.iter().chain(params.keys()) {
            if !is_identifier(name) || name == "pi" {
                return Err(MetricSpecError::BadIdentifier {
                    line: 0,
                    name: name.clone(),
                });
            }
        }
        for (i, a) in coords.iter().enumerate() {
            if coords[..i].contains(a) || params.contains_key(a) {
                return Err(MetricSpecError::DuplicateName(a.clone()));
            }
        }
        for (name, &value) in &params {
            if !value.is_finite() {
                return Err(MetricSpecError::NonFiniteParameter {
                    name: name.clone(),
                    value,
                });
            }
        }
        for (slot, expr) in components.iter().enumerate() {
            let (mu, nu) = COMPONENT_PAIRS[slot];
            if let Some(name) = expr
                .identifiers()
                .into_iter()
                .find(|n| !coords.iter().any(|c| c == n) && !params.contains_key(*n))
            {
                return Err(MetricSpecError::Undeclared {
                    mu,
                    nu,
                    name: name.to_string(),
                });
            }
        }
        Ok(MetricSpec {
            coords,
            params,
            components,
        })
    }

    pub fn coords(&self) -> &[String; 4] {
        &self.coords
    }

    pub fn params(&self) -> &BTreeMap<String, f64> {
        &self.params
    }

    pub fn component(&self, mu: usize, nu: usize) -> &Expr {
        &self.components[component_index(mu, nu)]
    }

    /// The metric is diagonal as written (every off-diagonal entry is the zero literal).
    pub fn is_diagonal(&self) -> bool {
        COMPONENT_PAIRS
            .iter()
            .zip(&self.components)
            .all(|(&(i, j), e)| i == j || e.is_zero_literal())
    }

    /// Override a declared parameter.
    pub fn set_param(&mut self, name: &str, value: f64) -> Result<(), MetricSpecError> {
        if !value.is_finite() {
            return Err(MetricSpecError::NonFiniteParameter {
                name: name.into(),
                value,
            });
        }
        match self.params.get_mut(name) {
            Some(slot) => {
                *slot = value;
                Ok(())
            }
            None => Err(MetricSpecError::UnknownParameter(name.into())),
        }
    }

    /// Evaluate all ten components at coordinate values `x`.
    pub fn eval_at(&self, x: &[f64; 4]) -> Result<[[f64; 4]; 4], ExprError> {
        let env = PointEnv { spec: self, x };
        let mut g = [[0.0; 4]; 4];
        for (slot, expr) in self.components.iter().enumerate() {
            let (mu, nu) = COMPONENT_PAIRS[slot];
            let v = expr.eval(&env)?;
            g[mu][nu] = v;
            g[nu][mu] = v;
        }
        Ok(g)
    }

    /// Canonical text form; parses back to an equal spec.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "coords = {}", self.coords.join(","));
        for (name, value) in &self.params {
            let _ = writeln!(out, "param {name} = {value:?}");
        }
        for (slot, expr) in self.components.iter().enumerate() {
            if expr.is_zero_literal() {
                continue;
            }
            let (mu, nu) = COMPONENT_PAIRS[slot];
            let _ = writeln!(out, "g[{mu}][{nu}] = {expr}");
        }
        out
    }
}

struct PointEnv<'a> {
    spec: &'a MetricSpec,
    x: &'a [f64; 4],
}

impl Env for PointEnv<'_> {
    fn lookup(&self, name: &str) -> Option<f64> {
        match self.spec.coords.iter().position(|c| c == name) {
            Some(i) => Some(self.x[i]),
            None => self.spec.params.get(name).copied(),
        }
    }
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

pub fn parse_metric_spec(source: &str) -> Result<MetricSpec, MetricSpecError> {
    let mut coords: Option<[String; 4]> = None;
    let mut params = BTreeMap::new();
    let mut components: [Option<Expr>; 10] = Default::default();

    for (idx, raw) in source.lines().enumerate() {
        let line = idx + 1;
        let text = raw.split('#').next().unwrap_or("").trim();
        if text.is_empty() {
            continue;
        }
        let Some((lhs, rhs)) = text.split_once('=') else {
            return Err(MetricSpecError::Syntax {
                line,
                message: format!("expected `=` in `{text}`"),
            });
        };
        let (lhs, rhs) = (lhs.trim(), rhs.trim());

        if lhs == "coords" {
            if coords.is_some() {
                return Err(MetricSpecError::Syntax {
                    line,
                    message: "second `coords` line".into(),
                });
            }
            let names: Vec<String> = rhs.split(',').map(|s| s.trim().to_string()).collect();
            if let Some(bad) = names.iter().find(|n| !is_identifier(n) || *n == "pi") {
                return Err(MetricSpecError::BadIdentifier {
                    line,
                    name: bad.clone(),
                });
            }
            let count = names.len();
            coords = Some(
                names
                    .try_into()
                    .map_err(|_| MetricSpecError::CoordArity { line, count })?,
            );
        } else if let Some(name) = lhs.strip_prefix("param ") {
            let name = name.trim();
            if !is_identifier(name) || name == "pi" {
                return Err(MetricSpecError::BadIdentifier {
                    line,
                    name: name.into(),
                });
            }
            let value = rhs
                .parse::<Expr>()
                .and_then(|e| e.eval(&[] as &[(&str, f64)]))
                .map_err(|source| MetricSpecError::Expr { line, source })?;
            if params.insert(name.to_string(), value).is_some() {
                return Err(MetricSpecError::DuplicateName(name.into()));
            }
        } else if let Some(rest) = lhs.strip_prefix("g[") {
            let (mu, nu) = parse_indices(rest, line)?;
            let expr = rhs
                .parse::<Expr>()
                .map_err(|source| MetricSpecError::Expr { line, source })?;
            let slot = &mut components[component_index(mu, nu)];
            if slot.is_some() {
                return Err(MetricSpecError::DuplicateComponent { line, mu, nu });
            }
            *slot = Some(expr);
        } else {
            return Err(MetricSpecError::Syntax {
                line,
                message: format!("unknown directive `{lhs}`"),
            });
        }
    }

    let coords = coords.ok_or(MetricSpecError::MissingCoords)?;
    MetricSpec::new(
        coords,
        params,
        components.map(|c| c.unwrap_or_else(Expr::zero)),
    )
}

// parses `i][j]` (the text after `g[`)
fn parse_indices(rest: &str, line: usize) -> Result<(usize, usize), MetricSpecError> {
    let malformed = || MetricSpecError::Syntax {
        line,
        message: format!("malformed component `g[{rest}`"),
    };
    let (first, tail) = rest.split_once(']').ok_or_else(malformed)?;
    let second = tail
        .trim()
        .strip_prefix('[')
        .and_then(|t| t.strip_suffix(']'))
        .ok_or_else(malformed)?;
    let index = |s: &str| -> Result<usize, MetricSpecError> {
        match s.trim().parse::<usize>() {
            Ok(i) if i < 4 => Ok(i),
            _ => Err(MetricSpecError::IndexOutOfRange {
                line,
                index: s.trim().into(),
            }),
        }
    };
    Ok((index(first)?, index(second)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    const SCHWARZSCHILD: &str = "\
coords = t,r,theta,phi
param rs = 1.0
g[0][0] = 1 - rs/r
g[1][1] = -1/(1 - rs/r)
g[2][2] = -r^2
g[3][3] = -r^2*sin(theta)^2
";

    #[test]
    fn component_slots_cover_upper_triangle() {
        for (slot, &(i, j)) in COMPONENT_PAIRS.iter().enumerate() {
            assert_eq!(component_index(i, j), slot);
            assert_eq!(component_index(j, i), slot);
        }
    }

    #[test]
    fn parses_schwarzschild() {
        let spec = parse_metric_spec(SCHWARZSCHILD).unwrap();
        assert_eq!(spec.coords()[2], "theta");
        assert_eq!(spec.params()["rs"], 1.0);
        assert_eq!(spec.component(0, 0), &"1 - rs/r".parse::<Expr>().unwrap());
        assert!(spec.component(0, 1).is_zero_literal());
        assert!(spec.is_diagonal());
        let g = spec
            .eval_at(&[0.0, 2.0, std::f64::consts::FRAC_PI_2, 0.0])
            .unwrap();
        assert_eq!(g[0][0], 0.5);
        assert_eq!(g[1][1], -2.0);
    }

    #[test]
    fn duplicate_component_rejected() {
        let src = format!("{SCHWARZSCHILD}g[0][0] = 1\n");
        assert!(matches!(
            parse_metric_spec(&src),
            Err(MetricSpecError::DuplicateComponent {
                line: 7,
                mu: 0,
                nu: 0
            })
        ));
        let src = "coords = t,x,y,z\ng[0][1] = 1\ng[1][0] = 2\n";
        assert!(matches!(
            parse_metric_spec(src),
            Err(MetricSpecError::DuplicateComponent { .. })
        ));
    }

    #[test]
    fn coords_arity_rejected() {
        assert!(matches!(
            parse_metric_spec("coords = t,r\n"),
            Err(MetricSpecError::CoordArity { line: 1, count: 2 })
        ));
    }

    #[test]
    fn missing_coords_and_bad_indices() {
        assert_eq!(
            parse_metric_spec("g[0][0] = 1\n"),
            Err(MetricSpecError::MissingCoords)
        );
        assert!(matches!(
            parse_metric_spec("coords = t,x,y,z\ng[4][0] = 1\n"),
            Err(MetricSpecError::IndexOutOfRange { .. })
        ));
        assert!(matches!(
            parse_metric_spec("coords = t,x,y,z\ng[0] = 1\n"),
            Err(MetricSpecError::Syntax { line: 2, .. })
        ));
    }

    #[test]
    fn names_must_be_distinct_and_declared() {
        assert!(matches!(
            parse_metric_spec("coords = t,x,x,z\n"),
            Err(MetricSpecError::DuplicateName(_))
        ));
        assert!(matches!(
            parse_metric_spec("coords = t,x,y,z\nparam x = 1\n"),
            Err(MetricSpecError::DuplicateName(_))
        ));
        assert!(matches!(
            parse_metric_spec("coords = t,x,y,pi\n"),
            Err(MetricSpecError::BadIdentifier { .. })
        ));
        assert!(matches!(
            parse_metric_spec("coords = t,x,y,z\ng[0][0] = 1 + m*x\n"),
            Err(MetricSpecError::Undeclared { mu: 0, nu: 0, .. })
        ));
    }

    #[test]
    fn comments_and_blank_lines() {
        let src = "# header\n\ncoords = t, x, y, z  # cartesian\ng[0][0] = 1 # time\n";
        let spec = parse_metric_spec(src).unwrap();
        assert_eq!(spec.coords()[1], "x");
    }

    #[test]
    fn off_diagonal_symmetric() {
        let spec = parse_metric_spec("coords = t,x,y,z\ng[0][0] = 1\ng[1][0] = 0.25\n").unwrap();
        assert_eq!(spec.component(0, 1), spec.component(1, 0));
        assert!(!spec.is_diagonal());
        let g = spec.eval_at(&[0.0; 4]).unwrap();
        assert_eq!(g[0][1], 0.25);
        assert_eq!(g[1][0], 0.25);
    }

    #[test]
    fn set_param_only_declared() {
        let mut spec = parse_metric_spec(SCHWARZSCHILD).unwrap();
        spec.set_param("rs", 2.0).unwrap();
        assert_eq!(spec.params()["rs"], 2.0);
        assert_eq!(
            spec.set_param("M", 1.0),
            Err(MetricSpecError::UnknownParameter("M".into()))
        );
    }

    #[test]
    fn text_round_trip() {
        let spec = parse_metric_spec(SCHWARZSCHILD).unwrap();
        assert_eq!(parse_metric_spec(&spec.to_text()).unwrap(), spec);
    }
}
