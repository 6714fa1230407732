//! Numerical kernels for freely falling local frames and the thermal spectrum
//! seen by an accelerated observer.
//!
//! * [`expr`]: expression language and metric-spec files.
//! * [`geometry`]: vierbein, objects of anholonomity, spin connection and
//!   Christoffel symbols by central differences.
//! * [`lingrav`]: the quadratic spin-2 kinetic operator on plane waves and its
//!   gauge identities.
//! * [`thermal`]: the Doppler-chirp Fourier amplitude (closed form through a
//!   complex Gamma function, and by contour-rotated quadrature) plus
//!   Unruh/Hawking temperatures.

pub mod csv;
pub mod expr;
pub mod geometry;
pub mod lingrav;
pub mod metrics;
pub mod thermal;
