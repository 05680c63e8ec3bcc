//! Comma-separated sweep tables.

use std::io::Write;

use geosteer::criteria::Criterion;
use geosteer::SweepRecord;

use crate::CliError;

pub const HEADER: [&str; 10] = ["family", "alpha", "v", "T1", "normSq", "ent", "steer", "bell", "chsh", "steer_margin"];
pub const SIGNIFICANT_DIGITS: usize = 12;

/// `%.{digits}g`-style formatting: shortest of fixed or exponent notation,
/// trailing zeros removed.
pub fn format_significant(x: f64, digits: usize) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let sci = format!("{:.*e}", digits - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -4 || exp >= digits as i32 {
        let mantissa = trim_zeros(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{mantissa}e{sign}{:02}", exp.abs())
    } else {
        let decimals = (digits as i32 - 1 - exp).max(0) as usize;
        trim_zeros(&format!("{:.*}", decimals, x)).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

fn flag(rec: &SweepRecord, c: Criterion) -> &'static str {
    if rec.verdicts.iter().any(|v| v.criterion == c && v.detected) {
        "1"
    } else {
        "0"
    }
}

pub fn write_table<W: Write>(records: &[SweepRecord], out: W) -> Result<(), CliError> {
    let mut w = csv::Writer::from_writer(out);
    let io = |e: csv::Error| CliError::Io(e.to_string());
    w.write_record(HEADER).map_err(io)?;
    for rec in records {
        let g = |x: f64| format_significant(x, SIGNIFICANT_DIGITS);
        let steer = rec.verdicts.iter().find(|v| v.criterion == Criterion::GeometricSteering).expect("steering verdict");
        w.write_record([
            rec.family_name.clone(),
            rec.alpha().map(g).unwrap_or_default(),
            g(rec.v()),
            g(rec.t1),
            g(rec.norm_sq),
            flag(rec, Criterion::GeometricEntanglement).to_string(),
            flag(rec, Criterion::GeometricSteering).to_string(),
            flag(rec, Criterion::GeometricBell).to_string(),
            flag(rec, Criterion::ChshHorodecki).to_string(),
            g(steer.margin),
        ])
        .map_err(io)?;
    }
    w.flush().map_err(|e| CliError::Io(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn significant_digit_formatting() {
        assert_eq!(format_significant(0.5, 12), "0.5");
        assert_eq!(format_significant(1.0, 12), "1");
        assert_eq!(format_significant(0.1 + 0.2, 12), "0.3");
        assert_eq!(format_significant(2.0 / 3.0, 12), "0.666666666667");
        assert_eq!(format_significant(-1.5e-7, 12), "-1.5e-07");
        assert_eq!(format_significant(123456.789, 12), "123456.789");
        assert_eq!(format_significant(1e15, 12), "1e+15");
        assert_eq!(format_significant(0.0, 12), "0");
    }
}
