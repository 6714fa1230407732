//! Signature-aware factorization g = E^T eta E.
//!
//! `g = L D L^T` with `L` unit lower triangular, processed from the time row
//! down. Lorentzian signature means `D_0 > 0` and `D_1, D_2, D_3 < 0`
//! (Sylvester's law of inertia), in which case `E = sqrt|D| L^T` satisfies
//! `E^T eta E = g`. For a diagonal metric `L = 1` and `E` is the diagonal
//! square-root tetrad.

use super::{Mat4, ETA};

/// Outcome of the LDL^T sweep.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Ldl {
    pub l: Mat4,
    pub d: [f64; 4],
}

pub(crate) fn ldl(g: &Mat4) -> Ldl {
    let mut l = [[0.0; 4]; 4];
    let mut d = [0.0; 4];
    for k in 0..4 {
        l[k][k] = 1.0;
        let mut dk = g[k][k];
        for j in 0..k {
            dk -= l[k][j] * l[k][j] * d[j];
        }
        d[k] = dk;
        for i in k + 1..4 {
            let mut s = g[i][k];
            for j in 0..k {
                s -= l[i][j] * l[k][j] * d[j];
            }
            l[i][k] = if dk != 0.0 { s / dk } else { f64::NAN };
        }
    }
    Ldl { l, d }
}

/// Indices whose pivot sign disagrees with eta.
pub(crate) fn signature_violations(d: &[f64; 4]) -> Vec<usize> {
    (0..4).filter(|&k| !(d[k] * ETA[k] > 0.0)).collect()
}

/// `e[alpha][mu]` from a factorization with correct signs.
pub(crate) fn frame_from_ldl(f: &Ldl) -> Mat4 {
    let mut e = [[0.0; 4]; 4];
    for alpha in 0..4 {
        let s = f.d[alpha].abs().sqrt();
        for mu in alpha..4 {
            e[alpha][mu] = s * f.l[mu][alpha];
        }
    }
    e
}

/// Gauss-Jordan inverse with partial pivoting; `None` when singular.
pub(crate) fn invert(m: &Mat4) -> Option<Mat4> {
    let mut a = *m;
    let mut inv = [[0.0; 4]; 4];
    for (i, row) in inv.iter_mut().enumerate() {
        row[i] = 1.0;
    }
    for col in 0..4 {
        let pivot = (col..4).max_by(|&x, &y| a[x][col].abs().total_cmp(&a[y][col].abs()))?;
        if a[pivot][col] == 0.0 {
            return None;
        }
        a.swap(col, pivot);
        inv.swap(col, pivot);
        let p = a[col][col];
        for j in 0..4 {
            a[col][j] /= p;
            inv[col][j] /= p;
        }
        for r in 0..4 {
            if r != col {
                let factor = a[r][col];
                if factor != 0.0 {
                    for j in 0..4 {
                        a[r][j] -= factor * a[col][j];
                        inv[r][j] -= factor * inv[col][j];
                    }
                }
            }
        }
    }
    Some(inv)
}

pub(crate) fn transpose(m: &Mat4) -> Mat4 {
    let mut t = [[0.0; 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            t[j][i] = m[i][j];
        }
    }
    t
}
