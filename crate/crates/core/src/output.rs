//! CSV/JSON rendering and atomic file output.

use std::io::Write;
use std::path::Path;

use serde_json::json;

use crate::limits::LimitDistribution;
use crate::spectral::SpectralMeasure;
use crate::{Error, Result};

/// `%.12g`-style formatting: 12 significant digits, trailing zeros trimmed.
pub fn fmt_num(x: f64) -> String {
    const DIGITS: i32 = 12;
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let sci = format!("{:.*e}", (DIGITS - 1) as usize, x);
    let (mantissa, exp) = sci.split_once('e').expect("scientific format has an exponent");
    let exp: i32 = exp.parse().expect("exponent is an integer");
    if (-4..DIGITS).contains(&exp) {
        let decimals = (DIGITS - 1 - exp).max(0) as usize;
        trim_zeros(format!("{:.*}", decimals, x))
    } else {
        format!("{}e{}{:02}", trim_zeros(mantissa.to_string()), if exp < 0 { '-' } else { '+' }, exp.abs())
    }
}

fn trim_zeros(s: String) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

/// `x,probability` rows; with `positive_only`, sites with zero probability are skipped.
pub fn distribution_csv(p: &[f64], positive_only: bool) -> String {
    let mut out = String::from("x,probability\n");
    for (x, &v) in p.iter().enumerate() {
        if positive_only && v <= 0.0 {
            continue;
        }
        out.push_str(&format!("{x},{}\n", fmt_num(v)));
    }
    out
}

/// Limit distribution CSV; Type II adds a `cesaro` column. Ends with `# escape_mass=...`.
pub fn limit_csv(dist: &LimitDistribution) -> String {
    let mut out = String::new();
    if dist.parity_resolved {
        out.push_str("x,probability,cesaro\n");
        for (x, (p, c)) in dist.p.iter().zip(dist.cesaro()).enumerate() {
            out.push_str(&format!("{x},{},{}\n", fmt_num(*p), fmt_num(c)));
        }
    } else {
        out.push_str(&distribution_csv(&dist.p, false));
    }
    out.push_str(&format!("# escape_mass={}\n", fmt_num(dist.escape_mass)));
    out
}

pub fn measure_json(measure: &SpectralMeasure) -> String {
    let ac: Vec<_> = measure.ac.iter().map(|s| json!({"theta": s.theta, "w": s.w})).collect();
    let atoms: Vec<_> = measure.atoms.iter().map(|a| json!({"theta": a.theta, "mass": a.mass})).collect();
    let value = json!({"ac": ac, "atoms": atoms, "total_mass": measure.total_mass()});
    serde_json::to_string_pretty(&value).expect("JSON values always serialize") + "\n"
}

pub fn limit_json(dist: &LimitDistribution) -> String {
    serde_json::to_string_pretty(dist).expect("JSON values always serialize") + "\n"
}

/// Writes `contents` to `path` via a temporary file in the same directory, or to stdout.
pub fn emit(path: Option<&Path>, contents: &str) -> Result<()> {
    let io = |e: std::io::Error| Error::InvalidArgument(format!("cannot write output: {e}"));
    match path {
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(contents.as_bytes()).map_err(io)?;
            stdout.flush().map_err(io)
        }
        Some(path) => {
            let dir = match path.parent() {
                Some(d) if !d.as_os_str().is_empty() => d,
                _ => Path::new("."),
            };
            let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io)?;
            tmp.write_all(contents.as_bytes()).map_err(io)?;
            tmp.persist(path).map_err(|e| io(e.error))?;
            Ok(())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::limits::{limit_dist_ii, tree_limit, TreeCase};
    use crate::spectral::SpectralMeasure;
    use crate::{Complex64, WalkType};

    #[test]
    fn number_format() {
        assert_eq!(fmt_num(0.5), "0.5");
        assert_eq!(fmt_num(0.5000000000000001), "0.5");
        assert_eq!(fmt_num(1.0), "1");
        assert_eq!(fmt_num(0.0), "0");
        assert_eq!(fmt_num(-0.1125), "-0.1125");
        assert_eq!(fmt_num(1.0 / 3.0), "0.333333333333");
        assert_eq!(fmt_num(2.5e-7), "2.5e-07");
        assert_eq!(fmt_num(1.23456789012345e15), "1.23456789012e+15");
        assert_eq!(fmt_num(123456.0), "123456");
        for x in [0.1234567, 3.3e-9, 7.0 / 9.0] {
            let back: f64 = fmt_num(x).parse().unwrap();
            assert!(((back - x) / x).abs() < 1e-11);
        }
    }

    #[test]
    fn csv_shapes() {
        assert_eq!(distribution_csv(&[0.5, 0.0, 0.5], true), "x,probability\n0,0.5\n2,0.5\n");
        let text = limit_csv(&tree_limit(3, TreeCase::B, 1).unwrap());
        assert_eq!(text, "x,probability,cesaro\n0,0.25,0.125\n1,0.375,0.1875\n# escape_mass=0.5\n");
        let zeros = limit_csv(&limit_dist_ii(Complex64::new(-1.0 / 3.0, 0.0), 1).unwrap());
        assert!(zeros.ends_with("# escape_mass=1\n"));
    }

    #[test]
    fn measure_json_schema() {
        let m = SpectralMeasure::compute(WalkType::I, Complex64::new(0.6, 0.0), 8).unwrap();
        let v: serde_json::Value = serde_json::from_str(&measure_json(&m)).unwrap();
        assert_eq!(v["atoms"][0]["theta"], 0.0);
        assert_eq!(v["atoms"][0]["mass"], 0.6);
        assert_eq!(v["ac"].as_array().unwrap().len(), 16);
        assert!(v["ac"][0]["w"].is_number());
        assert!((v["total_mass"].as_f64().unwrap() - 1.0).abs() < 1e-3);
    }

    #[test]
    fn atomic_write() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("out.csv");
        emit(Some(&path), "a\n").unwrap();
        emit(Some(&path), "b\n").unwrap();
        assert_eq!(std::fs::read_to_string(&path).unwrap(), "b\n");
        assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
        assert!(emit(Some(&dir.path().join("missing/out.csv")), "x").is_err());
    }
}
