use crate::csv::{fmt_f64, CsvBuf};
use crate::expr::MetricSpec;

use super::{ConnectionBundle, Mat4, Rank3};

const COLUMNS: [&str; 4] = ["index1", "index2", "index3", "value"];

/// CSV dump of every object in `bundle`, one header-led block per tensor.
/// Rank-2 blocks leave `index3` empty. Indices are 0-based coordinate or
/// Lorentz positions as stated in each block's header.
pub fn connection_csv(spec: &MetricSpec, bundle: &ConnectionBundle) -> String {
    let mut buf = CsvBuf::new();
    let coords = spec.coords().join(",");
    let point: Vec<String> = bundle.point.0.iter().map(|v| fmt_f64(*v)).collect();
    let step: Vec<String> = bundle.step.iter().map(|v| fmt_f64(*v)).collect();
    buf.comment(&format!(
        "coords=({coords}) point=({}) step=({})",
        point.join(","),
        step.join(",")
    ));
    buf.comment("signature eta=diag(+1,-1,-1,-1); derivatives by central differences");

    rank2(
        &mut buf,
        "metric g_{mu nu}; index1=mu index2=nu",
        &bundle.tetrad.g,
    );
    rank2(
        &mut buf,
        "vierbein e^alpha_mu; index1=alpha (Lorentz) index2=mu (coordinate)",
        &bundle.tetrad.e,
    );
    rank2(
        &mut buf,
        "inverse vierbein e_alpha^mu; index1=alpha (Lorentz) index2=mu (coordinate)",
        &bundle.tetrad.einv,
    );
    rank3(
        &mut buf,
        "anholonomity Omega_{mu nu}^lambda = 1/2[e_a^lambda d_mu e^a_nu - (mu<->nu)]; index1=mu index2=nu index3=lambda",
        &bundle.omega,
    );
    rank3(
        &mut buf,
        "spin connection Gamma_mu^{alpha beta}; Gamma_{mu nu lambda} = S_{lambda mu nu}, S_{abc} = Omega_{abc} - Omega_{cab} + Omega_{bca}; index1=mu index2=alpha index3=beta",
        &bundle.spin,
    );
    rank3(
        &mut buf,
        "christoffel Gamma^lambda_{mu nu}; index1=lambda index2=mu index3=nu",
        &bundle.christoffel,
    );
    buf.comment(&format!(
        "tetrad_postulate_residual={}",
        fmt_f64(bundle.residual)
    ));
    buf.into_string()
}

fn rank2(buf: &mut CsvBuf, title: &str, m: &Mat4) {
    buf.comment(&format!("tensor: {title}"));
    buf.header(&COLUMNS);
    for (i, row) in m.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            buf.row([i.to_string(), j.to_string(), String::new(), fmt_f64(*v)]);
        }
    }
}

fn rank3(buf: &mut CsvBuf, title: &str, t: &Rank3) {
    buf.comment(&format!("tensor: {title}"));
    buf.header(&COLUMNS);
    for (i, plane) in t.iter().enumerate() {
        for (j, row) in plane.iter().enumerate() {
            for (k, v) in row.iter().enumerate() {
                buf.row([i.to_string(), j.to_string(), k.to_string(), fmt_f64(*v)]);
            }
        }
    }
}
