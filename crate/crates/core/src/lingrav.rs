//! Quadratic spin-2 action on plane waves in a local Minkowski frame.
//!
//! The action density is `-(1/8 kappa) h_ab eps^{cade} eps_c^{bfg} d_d d_f h_eg`.
//! For a real mode `h_ab(x) = A_ab cos(k.x)` the derivative pair becomes
//! `d_d d_f -> -k_d k_f`. [`kinetic_apply`] returns
//! `T^{eg} = eps^{cade} eps_c^{bfg} k_d k_f A_ab` without that minus sign, and
//! [`action_density`] restores it:
//! `Q = -(1/8 kappa) A_eg (-T^{eg}) = A_eg T^{eg} / (8 kappa)`.
//! The factor 1/2 from averaging cos^2 is left out, so `Q` is a quadratic form
//! in the amplitude rather than an energy.
//!
//! `eps^{0123} = +1`; all raising and lowering uses `eta = diag(+1,-1,-1,-1)`,
//! so `eps_{0123} = -1`. `A` and `k` carry lower indices.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::csv::{fmt_f64, CsvBuf};
use crate::geometry::{Mat4, ETA};
use crate::thermal::PhysicalConstants;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LingravError {
    #[error("amplitude is not symmetric: A[{0}][{1}] != A[{1}][{0}]")]
    Asymmetric(usize, usize),
    #[error("mode components must be finite")]
    NonFinite,
    #[error("coupling must be positive and finite, got {0}")]
    BadCoupling(f64),
    #[error("at least one trial is required")]
    NoTrials,
}

/// Sign of the permutation `idx` of (0,1,2,3), 0 when an index repeats.
pub fn levi_civita(idx: [usize; 4]) -> f64 {
    let mut sign = 1.0;
    for i in 0..4 {
        for j in i + 1..4 {
            if idx[i] == idx[j] {
                return 0.0;
            }
            if idx[i] > idx[j] {
                sign = -sign;
            }
        }
    }
    sign
}

/// Totally antisymmetric unit tensor with `eps^{0123} = +1`.
#[derive(Debug, Clone)]
pub struct EpsilonTensor {
    /// (c, [c, x, y, z], sign) for all 24 permutations, grouped by leading index
    perms: Vec<([usize; 4], f64)>,
}

impl Default for EpsilonTensor {
    fn default() -> Self {
        Self::new()
    }
}

impl EpsilonTensor {
    pub fn new() -> Self {
        let mut perms = Vec::with_capacity(24);
        for c in 0..4 {
            for a in 0..4 {
                for d in 0..4 {
                    for e in 0..4 {
                        let s = levi_civita([c, a, d, e]);
                        if s != 0.0 {
                            perms.push(([c, a, d, e], s));
                        }
                    }
                }
            }
        }
        EpsilonTensor { perms }
    }

    pub fn upper(&self, idx: [usize; 4]) -> f64 {
        levi_civita(idx)
    }

    /// `eps_{abcd}`; lowering all four indices with eta flips the sign.
    pub fn lower(&self, idx: [usize; 4]) -> f64 {
        idx.iter().map(|&i| ETA[i]).product::<f64>() * levi_civita(idx)
    }

    pub fn nonzero(&self) -> &[([usize; 4], f64)] {
        &self.perms
    }

    fn with_leading(&self, c: usize) -> &[([usize; 4], f64)] {
        &self.perms[c * 6..c * 6 + 6]
    }

    /// `eps^{cade} eps_c^{bfg}` summed over `c`.
    pub fn contracted(&self, ade: [usize; 3], bfg: [usize; 3]) -> f64 {
        (0..4)
            .map(|c| {
                ETA[c]
                    * levi_civita([c, ade[0], ade[1], ade[2]])
                    * levi_civita([c, bfg[0], bfg[1], bfg[2]])
            })
            .sum()
    }
}

/// Plane-wave amplitude `A_ab` and wave covector `k_a`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolarizationMode {
    amplitude: Mat4,
    k: [f64; 4],
}

impl PolarizationMode {
    pub fn new(amplitude: Mat4, k: [f64; 4]) -> Result<Self, LingravError> {
        if !amplitude.iter().flatten().chain(&k).all(|v| v.is_finite()) {
            return Err(LingravError::NonFinite);
        }
        for i in 0..4 {
            for j in i + 1..4 {
                if amplitude[i][j] != amplitude[j][i] {
                    return Err(LingravError::Asymmetric(i, j));
                }
            }
        }
        Ok(PolarizationMode { amplitude, k })
    }

    /// `A_ab = k_a xi_b + xi_a k_b`
    pub fn pure_gauge(k: [f64; 4], xi: [f64; 4]) -> Result<Self, LingravError> {
        let mut a = [[0.0; 4]; 4];
        for i in 0..4 {
            for j in 0..4 {
                a[i][j] = k[i] * xi[j] + xi[i] * k[j];
            }
        }
        Self::new(a, k)
    }

    pub fn amplitude(&self) -> &Mat4 {
        &self.amplitude
    }

    pub fn k(&self) -> [f64; 4] {
        self.k
    }

    pub fn scaled(&self, amp: f64, wave: f64) -> Self {
        PolarizationMode {
            amplitude: self.amplitude.map(|row| row.map(|v| v * amp)),
            k: self.k.map(|v| v * wave),
        }
    }

    /// Same wave vector, amplitudes added.
    pub fn plus(&self, other: &Mat4) -> Self {
        let mut a = self.amplitude;
        for i in 0..4 {
            for j in 0..4 {
                a[i][j] += other[i][j];
            }
        }
        PolarizationMode {
            amplitude: a,
            k: self.k,
        }
    }

    fn abs(&self) -> Self {
        PolarizationMode {
            amplitude: self.amplitude.map(|row| row.map(f64::abs)),
            k: self.k.map(f64::abs),
        }
    }
}

/// Gravitational coupling `kappa = 8 pi G / c^3`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Coupling {
    kappa: f64,
}

impl Coupling {
    pub fn new(kappa: f64) -> Result<Self, LingravError> {
        if kappa.is_finite() && kappa > 0.0 {
            Ok(Coupling { kappa })
        } else {
            Err(LingravError::BadCoupling(kappa))
        }
    }

    pub fn from_constants(k: &PhysicalConstants) -> Self {
        Coupling {
            kappa: 8.0 * std::f64::consts::PI * k.g / (k.c * k.c * k.c),
        }
    }

    pub fn si() -> Self {
        Self::from_constants(&PhysicalConstants::si())
    }

    pub fn natural() -> Self {
        Self::from_constants(&PhysicalConstants::natural())
    }

    pub fn kappa(&self) -> f64 {
        self.kappa
    }
}

// With `absolute`, every sign is dropped: the sum of term magnitudes for a
// mode whose entries are already non-negative.
fn kinetic_raw(eps: &EpsilonTensor, mode: &PolarizationMode, absolute: bool) -> Mat4 {
    let a = &mode.amplitude;
    let k = &mode.k;
    let mut t = [[0.0; 4]; 4];
    for c in 0..4 {
        for &([_, ia, id, ie], s1) in eps.with_leading(c) {
            let left = if absolute { k[id] } else { ETA[c] * s1 * k[id] };
            for &([_, ib, i_f, ig], s2) in eps.with_leading(c) {
                let s2 = if absolute { 1.0 } else { s2 };
                t[ie][ig] += left * s2 * k[i_f] * a[ia][ib];
            }
        }
    }
    t
}

/// `T^{eg} = eps^{cade} eps_c^{bfg} k_d k_f A_ab`, symmetrized in (e, g).
pub fn kinetic_apply(mode: &PolarizationMode) -> Mat4 {
    let raw = kinetic_raw(&EpsilonTensor::new(), mode, false);
    let mut t = [[0.0; 4]; 4];
    let mut asym = 0.0f64;
    for e in 0..4 {
        for g in 0..4 {
            t[e][g] = 0.5 * (raw[e][g] + raw[g][e]);
            asym = asym.max((raw[e][g] - raw[g][e]).abs());
        }
    }
    // 36 terms feed each entry
    let amax = mode
        .amplitude
        .iter()
        .flatten()
        .fold(0.0f64, |m, v| m.max(v.abs()));
    let kmax = mode.k.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    debug_assert!(
        asym <= 36.0 * 1e-12 * amax * kmax * kmax,
        "kinetic tensor asymmetric by {asym}"
    );
    t
}

fn contract(a: &Mat4, t: &Mat4) -> f64 {
    let mut s = 0.0;
    for i in 0..4 {
        for j in 0..4 {
            s += a[i][j] * t[i][j];
        }
    }
    s
}

/// Quadratic form per unit volume, `-(1/8 kappa) A_ab (-T^{ab})`.
pub fn action_density(mode: &PolarizationMode, c: &Coupling) -> f64 {
    contract(&mode.amplitude, &kinetic_apply(mode)) / (8.0 * c.kappa)
}

/// Sum of the absolute values of every term in [`action_density`]; the
/// natural scale for judging roundoff in `Q`.
fn action_magnitude(mode: &PolarizationMode, c: &Coupling) -> f64 {
    let m = mode.abs();
    let t = kinetic_raw(&EpsilonTensor::new(), &m, true);
    contract(&m.amplitude, &t) / (8.0 * c.kappa)
}

/// Tolerances applied per trial.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaugeTolerances {
    /// gauge nullity and gauge-shift invariance, relative to the term magnitude
    pub gauge: f64,
    /// `k_e T^{eg}` relative to `max|k| * max|T|`
    pub bianchi: f64,
}

impl Default for GaugeTolerances {
    fn default() -> Self {
        GaugeTolerances {
            gauge: 1e-10,
            bianchi: 1e-12,
        }
    }
}

impl GaugeTolerances {
    pub fn scaled(&self, factor: f64) -> Self {
        GaugeTolerances {
            gauge: self.gauge * factor,
            bianchi: self.bianchi * factor,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrialOutcome {
    pub trial: u64,
    pub mode: PolarizationMode,
    pub xi: [f64; 4],
    /// worst of the pure-gauge nullity and the gauge-shift mismatch
    pub residual_gauge: f64,
    pub residual_bianchi: f64,
    pub pass: bool,
}

fn ratio(num: f64, den: f64) -> f64 {
    if num == 0.0 {
        0.0
    } else {
        num / den
    }
}

/// `max_g |k_e T^{eg}|` relative to `max|k| max|T|`.
pub fn bianchi_residual(mode: &PolarizationMode) -> f64 {
    let t = kinetic_apply(mode);
    let k = mode.k;
    let mut worst = 0.0f64;
    for g in 0..4 {
        let s: f64 = (0..4).map(|e| k[e] * t[e][g]).sum();
        worst = worst.max(s.abs());
    }
    let kmax = k.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let tmax = t.iter().flatten().fold(0.0f64, |m, v| m.max(v.abs()));
    ratio(worst, kmax * tmax)
}

/// Check the three gauge identities for one mode and gauge parameter.
pub fn check_mode(
    mode: &PolarizationMode,
    xi: [f64; 4],
    coupling: &Coupling,
    tol: &GaugeTolerances,
) -> TrialOutcome {
    let gauge = PolarizationMode::pure_gauge(mode.k, xi).unwrap_or(*mode);
    let shifted = mode.plus(&gauge.amplitude);

    let q_gauge = action_density(&gauge, coupling);
    let null = ratio(q_gauge.abs(), action_magnitude(&gauge, coupling));

    let q = action_density(mode, coupling);
    let q_shifted = action_density(&shifted, coupling);
    let den = action_magnitude(mode, coupling).max(action_magnitude(&shifted, coupling));
    let shift = ratio((q_shifted - q).abs(), den);

    let residual_gauge = null.max(shift);
    let residual_bianchi = bianchi_residual(mode).max(bianchi_residual(&shifted));
    let pass = residual_gauge <= tol.gauge && residual_bianchi <= tol.bianchi;
    TrialOutcome {
        trial: 0,
        mode: *mode,
        xi,
        residual_gauge,
        residual_bianchi,
        pass,
    }
}

fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

fn uniform4(rng: &mut impl Rng) -> [f64; 4] {
    std::array::from_fn(|_| rng.gen_range(-1.0..=1.0))
}

/// Random symmetric amplitude with entries in [-1, 1].
pub fn random_amplitude(rng: &mut impl Rng) -> Mat4 {
    let raw: Mat4 = std::array::from_fn(|_| uniform4(rng));
    let mut a = [[0.0; 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            a[i][j] = 0.5 * (raw[i][j] + raw[j][i]);
        }
    }
    a
}

/// Null covector `(|v|, v)` from a random spatial `v`.
pub fn random_null_k(rng: &mut impl Rng) -> [f64; 4] {
    let v: [f64; 3] = std::array::from_fn(|_| rng.gen_range(-1.0..=1.0));
    let n = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
    [n, v[0], v[1], v[2]]
}

/// Transverse-traceless amplitude for a null covector `k = (|v|, v)`:
/// `A = p (e1 e1 - e2 e2) + q (e1 e2 + e2 e1)` with `e1, e2` spatial and
/// orthogonal to `v`.
pub fn tt_amplitude(k: [f64; 4], p: f64, q: f64) -> Mat4 {
    let v = [k[1], k[2], k[3]];
    let n = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
    let u = v.map(|x| x / n);
    // seed e1 with the axis least aligned with u
    let axis = (0..3)
        .min_by(|&i, &j| u[i].abs().total_cmp(&u[j].abs()))
        .unwrap_or(0);
    let mut seed = [0.0; 3];
    seed[axis] = 1.0;
    let dot = seed[0] * u[0] + seed[1] * u[1] + seed[2] * u[2];
    let mut e1 = [
        seed[0] - dot * u[0],
        seed[1] - dot * u[1],
        seed[2] - dot * u[2],
    ];
    let l1 = (e1[0] * e1[0] + e1[1] * e1[1] + e1[2] * e1[2]).sqrt();
    e1 = e1.map(|x| x / l1);
    let e2 = [
        u[1] * e1[2] - u[2] * e1[1],
        u[2] * e1[0] - u[0] * e1[2],
        u[0] * e1[1] - u[1] * e1[0],
    ];
    let mut a = [[0.0; 4]; 4];
    for i in 0..3 {
        for j in 0..3 {
            a[i + 1][j + 1] =
                p * (e1[i] * e1[j] - e2[i] * e2[j]) + q * (e1[i] * e2[j] + e2[i] * e1[j]);
        }
    }
    // exact symmetry
    for i in 0..4 {
        for j in 0..i {
            a[i][j] = a[j][i];
        }
    }
    a
}

#[derive(Debug, Clone, PartialEq)]
pub struct GaugeReport {
    pub seed: u64,
    pub outcomes: Vec<TrialOutcome>,
}

impl GaugeReport {
    pub fn passed(&self) -> usize {
        self.outcomes.iter().filter(|o| o.pass).count()
    }

    pub fn failed(&self) -> usize {
        self.outcomes.len() - self.passed()
    }

    pub fn all_pass(&self) -> bool {
        self.failed() == 0
    }

    pub fn first_failure(&self) -> Option<&TrialOutcome> {
        self.outcomes.iter().find(|o| !o.pass)
    }

    pub fn worst_gauge(&self) -> f64 {
        self.outcomes
            .iter()
            .fold(0.0, |m, o| m.max(o.residual_gauge))
    }

    pub fn worst_bianchi(&self) -> f64 {
        self.outcomes
            .iter()
            .fold(0.0, |m, o| m.max(o.residual_bianchi))
    }

    /// `trial,seed,residual_gauge,residual_bianchi,pass`
    pub fn to_csv(&self) -> String {
        let mut buf = CsvBuf::new();
        buf.header(&[
            "trial",
            "seed",
            "residual_gauge",
            "residual_bianchi",
            "pass",
        ]);
        for o in &self.outcomes {
            buf.row([
                o.trial.to_string(),
                self.seed.to_string(),
                fmt_f64(o.residual_gauge),
                fmt_f64(o.residual_bianchi),
                u8::from(o.pass).to_string(),
            ]);
        }
        buf.into_string()
    }
}

/// Randomized gauge identities; trial `i` draws from stream `i` of a ChaCha
/// generator keyed by `seed`, so results do not depend on scheduling.
pub fn gauge_orbit_check(trials: u64, seed: u64) -> Result<GaugeReport, LingravError> {
    gauge_orbit_check_with(
        trials,
        seed,
        &Coupling::natural(),
        &GaugeTolerances::default(),
    )
}

pub fn gauge_orbit_check_with(
    trials: u64,
    seed: u64,
    coupling: &Coupling,
    tol: &GaugeTolerances,
) -> Result<GaugeReport, LingravError> {
    if trials == 0 {
        return Err(LingravError::NoTrials);
    }
    let outcomes = (0..trials)
        .into_par_iter()
        .map(|trial| {
            let mut rng = trial_rng(seed, trial);
            let amplitude = random_amplitude(&mut rng);
            let k = uniform4(&mut rng);
            let xi = uniform4(&mut rng);
            let mode = PolarizationMode { amplitude, k };
            TrialOutcome {
                trial,
                ..check_mode(&mode, xi, coupling, tol)
            }
        })
        .collect();
    Ok(GaugeReport { seed, outcomes })
}
