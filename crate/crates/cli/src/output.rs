//! CSV and plot-script writers. Numbers use 17 significant digits so every
//! value parses back to the identical double; failed cells print `nan`.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use skidsim_core::SweepVar;

pub fn fmt_num(v: f64) -> String {
    if v.is_nan() {
        "nan".to_string()
    } else if v.is_infinite() {
        if v > 0.0 { "inf" } else { "-inf" }.to_string()
    } else {
        format!("{v:.16e}")
    }
}

/// Renders a header and numeric rows.
pub fn csv(header: &[String], rows: impl IntoIterator<Item = Vec<f64>>) -> String {
    let mut out = header.join(",");
    out.push('\n');
    for row in rows {
        let cells: Vec<String> = row.into_iter().map(fmt_num).collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}

pub fn write(path: &Path, contents: &str) -> std::io::Result<()> {
    std::fs::write(path, contents)
        .map_err(|e| std::io::Error::new(e.kind(), format!("cannot write {}: {e}", path.display())))
}

/// Converts an internal value to its command-line unit.
pub fn to_boundary(var: SweepVar, v: f64) -> f64 {
    match var {
        SweepVar::Delta1 => v.to_degrees(),
        _ => v,
    }
}

pub fn from_boundary(var: SweepVar, v: f64) -> f64 {
    match var {
        SweepVar::Delta1 => v.to_radians(),
        _ => v,
    }
}

pub fn axis_label(var: SweepVar) -> &'static str {
    match var {
        SweepVar::VX1 => "v_x1_mps",
        SweepVar::OmegaZ => "omega_z_radps",
        SweepVar::Phi => "phi",
        SweepVar::SX => "s_x",
        SweepVar::Delta1 => "delta_1_deg",
    }
}

/// Column label for one series value, e.g. `eps_z_delta2deg`.
pub fn series_label(var: SweepVar, v: f64) -> String {
    // Degree values come back from radians with rounding noise; labels only.
    let b = (to_boundary(var, v) * 1e9).round() / 1e9;
    let b = if b == 0.0 { 0.0 } else { b };
    match var {
        SweepVar::VX1 => format!("eps_z_v{b}mps"),
        SweepVar::OmegaZ => format!("eps_z_omega{b}radps"),
        SweepVar::Phi => format!("eps_z_phi{b}"),
        SweepVar::SX => format!("eps_z_sx{b}"),
        SweepVar::Delta1 => format!("eps_z_delta{b}deg"),
    }
}

/// Writes `<csv>.gp`, a gnuplot script plotting every column against the first.
pub fn write_plot_script(csv_path: &Path, header: &[String]) -> std::io::Result<PathBuf> {
    let mut script_path = csv_path.as_os_str().to_owned();
    script_path.push(".gp");
    let script_path = PathBuf::from(script_path);
    let data = csv_path
        .file_name()
        .map(|n| n.to_string_lossy().into_owned())
        .unwrap_or_default();
    let mut s = String::new();
    let _ = writeln!(s, "set datafile separator ','");
    let _ = writeln!(s, "set datafile missing 'nan'");
    let _ = writeln!(s, "set key autotitle columnhead");
    let _ = writeln!(s, "set xlabel '{}'", header[0]);
    let _ = writeln!(s, "set ylabel 'eps_z, rad/s^2'");
    let _ = writeln!(s, "set grid");
    let _ = writeln!(
        s,
        "plot for [i=2:{}] '{}' using 1:i with lines",
        header.len(),
        data
    );
    write(&script_path, &s)?;
    Ok(script_path)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    proptest! {
        #[test]
        fn round_trip_is_exact(bits in any::<u64>()) {
            let v = f64::from_bits(bits);
            prop_assume!(v.is_finite());
            let back: f64 = fmt_num(v).parse().unwrap();
            prop_assert_eq!(back.to_bits(), v.to_bits());
        }
    }

    #[test]
    fn special_tokens() {
        assert_eq!(fmt_num(f64::NAN), "nan");
        assert!(fmt_num(f64::INFINITY).parse::<f64>().unwrap().is_infinite());
        assert_eq!(fmt_num(1.0), "1.0000000000000000e0");
    }

    #[test]
    fn labels() {
        assert_eq!(
            series_label(SweepVar::Delta1, 2f64.to_radians()),
            "eps_z_delta2deg"
        );
        assert_eq!(series_label(SweepVar::Delta1, 0.0), "eps_z_delta0deg");
        assert_eq!(series_label(SweepVar::VX1, 5.0), "eps_z_v5mps");
        assert_eq!(series_label(SweepVar::Phi, 0.25), "eps_z_phi0.25");
    }

    #[test]
    fn csv_layout() {
        let s = csv(&["a".into(), "b".into()], vec![vec![1.0, f64::NAN]]);
        assert_eq!(s, "a,b\n1.0000000000000000e0,nan\n");
    }
}
