//! Artifact rendering.  Every verb emits either a JSON object (floats at
//! 17 significant digits, exact values as `"p/q"` strings) or a tabular
//! TSV form of the same data.

use cyclat::cyclic::PrimeSpotCertificate;
use cyclat::lattice::LatticeBasis;
use cyclat::linalg::Matrix;
use cyclat::polyring::RingElement;
use cyclat::rat::{format_float, format_rational, Rational};

#[derive(Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Tsv,
}

pub fn json_rationals(v: &[Rational]) -> String {
    let parts: Vec<String> = v.iter().map(|r| format!("\"{}\"", format_rational(r))).collect();
    format!("[{}]", parts.join(", "))
}

pub fn json_floats(v: &[f64]) -> String {
    let parts: Vec<String> = v.iter().map(|&x| format_float(x)).collect();
    format!("[{}]", parts.join(", "))
}

pub fn tsv_rationals(v: &[Rational]) -> String {
    v.iter().map(format_rational).collect::<Vec<_>>().join(",")
}

fn tsv_floats(v: &[f64]) -> String {
    v.iter().map(|&x| format_float(x)).collect::<Vec<_>>().join(",")
}

/// Row-major JSON array of `"p/q"` strings.
fn json_matrix_rows(m: &Matrix) -> String {
    let rows: Vec<String> = (0..m.rows()).map(|i| json_rationals(m.row(i))).collect();
    format!("[{}]", rows.join(", "))
}

fn tsv_matrix_rows(m: &Matrix) -> String {
    (0..m.rows())
        .map(|i| m.row(i).iter().map(format_rational).collect::<Vec<_>>().join("\t"))
        .collect::<Vec<_>>()
        .join("\n")
}

pub fn ideal_matrix_report(
    f: &RingElement,
    matrix: &Matrix,
    det: &Rational,
    det_spectral: f64,
    format: Format,
) -> String {
    match format {
        Format::Json => format!(
            "{{\n  \"phi\": {},\n  \"f\": {},\n  \"matrix\": {},\n  \"det\": \"{}\",\n  \"det_spectral\": {}\n}}",
            json_rationals(f.ctx().phi().coeffs()),
            json_rationals(&f.to_vector()),
            json_matrix_rows(matrix),
            format_rational(det),
            format_float(det_spectral),
        ),
        Format::Tsv => format!(
            "{}\ndet\t{}\ndet_spectral\t{}",
            tsv_matrix_rows(matrix),
            format_rational(det),
            format_float(det_spectral),
        ),
    }
}

pub fn certificate_report(cert: &PrimeSpotCertificate, format: Format) -> String {
    match format {
        Format::Json => format!(
            "{{\n  \"g\": {},\n  \"u\": {},\n  \"t_g\": {},\n  \"t_g_values\": {},\n  \"t_g_min\": {}\n}}",
            json_rationals(&cert.g().to_vector()),
            json_rationals(&cert.u().to_vector()),
            json_rationals(&cert.tg().to_vector()),
            json_floats(cert.tg_values()),
            format_float(cert.tg_min()),
        ),
        Format::Tsv => format!(
            "g\t{}\nu\t{}\nt_g\t{}\nt_g_values\t{}\nt_g_min\t{}",
            tsv_rationals(&cert.g().to_vector()),
            tsv_rationals(&cert.u().to_vector()),
            tsv_rationals(&cert.tg().to_vector()),
            tsv_floats(cert.tg_values()),
            format_float(cert.tg_min()),
        ),
    }
}

pub fn verdict_report(key: &str, value: bool, format: Format) -> String {
    match format {
        Format::Json => format!("{{\n  \"{key}\": {value}\n}}"),
        Format::Tsv => format!("{key}\t{value}"),
    }
}

/// A basis in the `{"n", "m", "basis": [[...] per column]}` file schema,
/// so emitted lattices feed back into `--basis`.
pub fn basis_report(l: &LatticeBasis, format: Format) -> String {
    match format {
        Format::Json => {
            let cols: Vec<String> = (0..l.rank()).map(|j| json_rationals(&l.column(j))).collect();
            format!(
                "{{\n  \"n\": {},\n  \"m\": {},\n  \"basis\": [{}]\n}}",
                l.ambient_dim(),
                l.rank(),
                cols.join(", ")
            )
        }
        Format::Tsv => tsv_matrix_rows(l.matrix()),
    }
}

pub fn samples_report(samples: &[Vec<Rational>], seed: u64, format: Format) -> String {
    match format {
        Format::Json => {
            let rows: Vec<String> = samples.iter().map(|x| json_rationals(x)).collect();
            format!("{{\n  \"seed\": {},\n  \"samples\": [{}]\n}}", seed, rows.join(", "))
        }
        Format::Tsv => samples
            .iter()
            .map(|x| x.iter().map(format_rational).collect::<Vec<_>>().join("\t"))
            .collect::<Vec<_>>()
            .join("\n"),
    }
}

/// TSV twin of `SmoothingReport::to_json`; optional fields are omitted.
pub fn report_tsv(report: &cyclat::smoothing::SmoothingReport) -> String {
    let mut lines = vec![
        format!("epsilon\t{}", format_float(report.epsilon)),
        format!("eta\t{}", format_float(report.eta)),
        format!("bound_lambda\t{}", format_float(report.bound_lambda)),
        format!("bound_gs\t{}", format_float(report.bound_gs)),
    ];
    if let Some(bt) = report.bound_tg {
        lines.push(format!("bound_tg\t{}", format_float(bt)));
    }
    lines.push(format!("truncation_radius\t{}", format_float(report.truncation_radius)));
    if let Some(cert) = &report.certificate {
        lines.push(format!("u\t{}", tsv_rationals(&cert.u().to_vector())));
        lines.push(format!("t_g\t{}", tsv_rationals(&cert.tg().to_vector())));
        lines.push(format!("t_g_min\t{}", format_float(cert.tg_min())));
    }
    lines.join("\n")
}
