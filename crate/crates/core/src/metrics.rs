//! Built-in metrics, stored as spec text so they round-trip through the parser.

use crate::expr::{parse_metric_spec, MetricSpec, MetricSpecError};

pub const MINKOWSKI: &str = "\
# flat spacetime, cartesian coordinates
coords = t,x,y,z
g[0][0] = 1
g[1][1] = -1
g[2][2] = -1
g[3][3] = -1
";

pub const SPHERICAL_MINKOWSKI: &str = "\
# flat spacetime, spherical coordinates
coords = t,r,theta,phi
g[0][0] = 1
g[1][1] = -1
g[2][2] = -r^2
g[3][3] = -r^2*sin(theta)^2
";

pub const SCHWARZSCHILD: &str = "\
# Schwarzschild exterior, geometric units, rs = 2GM/c^2
coords = t,r,theta,phi
param rs = 1.0
g[0][0] = 1 - rs/r
g[1][1] = -1/(1 - rs/r)
g[2][2] = -r^2
g[3][3] = -r^2*sin(theta)^2
";

pub const RINDLER: &str = "\
# uniformly accelerated frame, proper acceleration a at x = 0
coords = t,x,y,z
param a = 1.0
g[0][0] = (1 + a*x)^2
g[1][1] = -1
g[2][2] = -1
g[3][3] = -1
";

pub const BUILTIN_NAMES: [&str; 4] = [
    "minkowski",
    "spherical-minkowski",
    "schwarzschild",
    "rindler",
];

pub fn builtin_source(name: &str) -> Option<&'static str> {
    match name {
        "minkowski" => Some(MINKOWSKI),
        "spherical-minkowski" => Some(SPHERICAL_MINKOWSKI),
        "schwarzschild" => Some(SCHWARZSCHILD),
        "rindler" => Some(RINDLER),
        _ => None,
    }
}

/// Parsed built-in metric, or `None` for an unknown name.
pub fn builtin(name: &str) -> Option<Result<MetricSpec, MetricSpecError>> {
    builtin_source(name).map(parse_metric_spec)
}
