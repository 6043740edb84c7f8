//! File formats: family JSON, report JSON and curvature CSV.
//!
//! Floats are written like C's `%.17g` in JSON and `%.12g` in CSV, so JSON
//! output round-trips exactly and is byte-stable across runs.

use std::io;

use serde::Serialize;
use serde_json::Value;

use crate::curvature::CurvatureReport;
use crate::error::{Error, Result};
use crate::family::FiniteExpFamily;

pub const JSON_DIGITS: usize = 17;
pub const CSV_DIGITS: usize = 12;

/// `%.{digits}g` formatting: `digits` significant digits, positional
/// notation for exponents in `[-5, digits)`, trailing zeros removed.
pub fn format_sig(x: f64, digits: usize) -> String {
    assert!(digits >= 1);
    if x == 0.0 {
        return if x.is_sign_negative() { "-0".into() } else { "0".into() };
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let sci = format!("{:.*e}", digits - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent marker");
    let exp: i32 = exp.parse().expect("integer exponent");
    let (neg, mantissa) = match mantissa.strip_prefix('-') {
        Some(m) => (true, m),
        None => (false, mantissa),
    };
    let all: String = mantissa.chars().filter(|c| *c != '.').collect();
    let sign = if neg { "-" } else { "" };

    if exp < -5 || exp >= digits as i32 {
        let mut m = mantissa.to_string();
        if m.contains('.') {
            m = m.trim_end_matches('0').trim_end_matches('.').to_string();
        }
        let esign = if exp < 0 { '-' } else { '+' };
        return format!("{sign}{m}e{esign}{:02}", exp.abs());
    }
    let body = if exp < 0 {
        format!("0.{}{}", "0".repeat((-exp - 1) as usize), all)
    } else {
        let split = exp as usize + 1;
        format!("{}.{}", &all[..split], &all[split..])
    };
    let body = if body.contains('.') {
        body.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        body
    };
    format!("{sign}{body}")
}

struct SigFormatter;

impl serde_json::ser::Formatter for SigFormatter {
    fn write_f64<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        if value.is_finite() {
            writer.write_all(format_sig(value, JSON_DIGITS).as_bytes())
        } else {
            writer.write_all(b"null")
        }
    }

    fn write_f32<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(writer, value as f64)
    }
}

/// Compact JSON with 17-significant-digit floats.
pub fn to_json<T: Serialize + ?Sized>(value: &T) -> String {
    let mut out = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut out, SigFormatter);
    value
        .serialize(&mut ser)
        .expect("serializing plain data cannot fail");
    String::from_utf8(out).expect("serde_json emits UTF-8")
}

fn number_array(root: &serde_json::Map<String, Value>, key: &'static str) -> Result<Vec<f64>> {
    let v = root
        .get(key)
        .ok_or_else(|| Error::Parse(format!("missing key \"{key}\"")))?;
    let arr = v
        .as_array()
        .ok_or_else(|| Error::Parse(format!("\"{key}\" must be an array of numbers")))?;
    arr.iter()
        .enumerate()
        .map(|(i, x)| {
            x.as_f64()
                .filter(|f| f.is_finite())
                .ok_or_else(|| Error::Parse(format!("\"{key}\"[{i}] is not a finite number: {x}")))
        })
        .collect()
}

/// Parses `{"C": [...], "F": [...]}`. Diagnostics name the offending key.
pub fn parse_family(text: &str) -> Result<FiniteExpFamily> {
    let root: Value =
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("invalid JSON: {e}")))?;
    let obj = root
        .as_object()
        .ok_or_else(|| Error::Parse("top level must be an object with keys \"C\" and \"F\"".into()))?;
    let c = number_array(obj, "C")?;
    let f = number_array(obj, "F")?;
    if c.len() != f.len() {
        return Err(Error::Parse(format!(
            "\"C\" has {} entries but \"F\" has {}",
            c.len(),
            f.len()
        )));
    }
    if c.len() < 2 {
        return Err(Error::Parse(format!(
            "\"C\" and \"F\" need at least 2 entries, got {}",
            c.len()
        )));
    }
    FiniteExpFamily::new(c, f).map_err(|e| match e {
        Error::ConstantStatistic => Error::Parse("\"F\" is constant".into()),
        other => other,
    })
}

pub fn family_to_json(fam: &FiniteExpFamily) -> String {
    to_json(fam)
}

/// `theta,scal` rows at 12 significant digits.
pub fn curvature_csv(report: &CurvatureReport) -> String {
    let mut out = String::from("theta,scal\n");
    for (t, s) in report.thetas.iter().zip(&report.values) {
        out.push_str(&format_sig(*t, CSV_DIGITS));
        out.push(',');
        out.push_str(&format_sig(*s, CSV_DIGITS));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sig_formatting_matches_printf_g() {
        assert_eq!(format_sig(0.0, 17), "0");
        assert_eq!(format_sig(2.0, 17), "2");
        assert_eq!(format_sig(0.5, 17), "0.5");
        assert_eq!(format_sig(0.4, 17), "0.40000000000000002");
        assert_eq!(format_sig(-1.5, 12), "-1.5");
        assert_eq!(format_sig(2f64.ln() * 2.0, 17), "1.3862943611198906");
        assert_eq!(format_sig(1e-7, 12), "1e-07");
        assert_eq!(format_sig(1.25e20, 12), "1.25e+20");
        assert_eq!(format_sig(123456.0, 3), "1.23e+05");
        assert_eq!(format_sig(0.000123, 12), "0.000123");
        assert_eq!(format_sig(1.0 / 3.0, 12), "0.333333333333");
    }

    #[test]
    fn sig17_round_trips() {
        for x in [0.1, 1.0 / 3.0, -2.5e-300, 6.02e23, std::f64::consts::PI, 1e-5, 12345.678] {
            let s = format_sig(x, 17);
            assert_eq!(s.parse::<f64>().unwrap(), x, "{s}");
        }
    }

    #[test]
    fn parse_valid_family() {
        let f = parse_family(r#"{"C": [0, 0.6931471805599453, 0], "F": [0, 1, 2]}"#).unwrap();
        assert_eq!(f.f(), &[0.0, 1.0, 2.0]);
    }

    #[test]
    fn parse_diagnostics_name_keys() {
        let msg = |s: &str| parse_family(s).unwrap_err().to_string();
        assert!(msg(r#"{"C": [0, 0], "F": [0, 1, 2]}"#).contains("\"C\" has 2"));
        assert!(msg(r#"{"F": [0, 1]}"#).contains("\"C\""));
        assert!(msg(r#"{"C": [0, "x"], "F": [0, 1]}"#).contains("\"C\"[1]"));
        assert!(msg(r#"{"C": [0, 0], "F": [0, NaN]}"#).contains("invalid JSON"));
        assert!(msg(r#"{"C": [0, 0], "F": [0, 1e999]}"#).contains("invalid JSON"));
        assert!(msg(r#"{"C": [0], "F": [1]}"#).contains("at least 2"));
        assert!(msg(r#"{"C": [0, 0], "F": [1, 1]}"#).contains("\"F\" is constant"));
        assert!(msg("[1, 2]").contains("top level"));
    }

    #[test]
    fn family_json_round_trips() {
        let f = FiniteExpFamily::new(vec![0.1, -1.0 / 3.0], vec![0.0, 2.5]).unwrap();
        let text = family_to_json(&f);
        assert_eq!(text, r#"{"C":[0.10000000000000001,-0.33333333333333331],"F":[0,2.5]}"#);
        assert_eq!(parse_family(&text).unwrap(), f);
    }

    #[test]
    fn csv_layout() {
        let report = CurvatureReport {
            thetas: vec![-1.0, 0.0, 1.0],
            values: vec![0.5, 0.5, 0.5],
            is_constant: true,
            lambda: Some(0.5),
            max_deviation: 0.0,
            tolerance: 1e-8,
        };
        assert_eq!(curvature_csv(&report), "theta,scal\n-1,0.5\n0,0.5\n1,0.5\n");
        let json = to_json(&report);
        assert!(json.starts_with(r#"{"thetas":[-1,0,1],"values":[0.5,0.5,0.5],"is_constant":true,"lambda":0.5"#));
    }
}
