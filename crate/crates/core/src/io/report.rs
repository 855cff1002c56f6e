//! CSV and JSON report emission with fixed float and rational formatting.

use num_rational::Ratio;
use serde::{Serialize, Serializer};
use serde_json::Value;

/// Significant digits used for every float in a report.
pub const SIGNIFICANT_DIGITS: usize = 12;

/// `%.12g`-style formatting: fixed notation for exponents in `[-5, 12)`,
/// scientific otherwise, trailing zeros dropped.
pub fn fmt_float(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return "0".into();
    }
    let sci = format!("{:.*e}", SIGNIFICANT_DIGITS - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent");
    let exp: i32 = exp.parse().expect("exponent");
    if (-5..SIGNIFICANT_DIGITS as i32).contains(&exp) {
        let decimals = (SIGNIFICANT_DIGITS as i32 - 1 - exp).max(0) as usize;
        trim_zeros(format!("{x:.decimals$}"))
    } else {
        format!("{}e{exp}", trim_zeros(mantissa.to_string()))
    }
}

fn trim_zeros(s: String) -> String {
    if !s.contains('.') {
        return s;
    }
    s.trim_end_matches('0').trim_end_matches('.').to_string()
}

pub fn fmt_ratio(r: &Ratio<i64>) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn ratio_as_string<S: Serializer>(r: &Ratio<i64>, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&fmt_ratio(r))
}

pub fn ratios_as_strings<S: Serializer>(rs: &[Ratio<i64>], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(rs.iter().map(fmt_ratio))
}

/// `"p/q"` or a bare integer.
pub fn parse_ratio(s: &str) -> Option<Ratio<i64>> {
    let (p, q) = s.split_once('/').unwrap_or((s, "1"));
    let (p, q): (i64, i64) = (p.trim().parse().ok()?, q.trim().parse().ok()?);
    (q != 0).then(|| Ratio::new(p, q))
}

/// Rounds every float in a JSON tree to the report precision.
fn round_floats(v: &mut Value) {
    match v {
        Value::Number(n) if n.is_f64() => {
            let x = n.as_f64().expect("f64");
            let rounded: f64 = fmt_float(x).parse().expect("formatted float");
            *v = serde_json::Number::from_f64(rounded).map_or(Value::Null, Value::Number);
        }
        Value::Array(items) => items.iter_mut().for_each(round_floats),
        Value::Object(map) => map.values_mut().for_each(round_floats),
        _ => {}
    }
}

/// Row-oriented view of a result for CSV output.
pub trait Tabular {
    fn header(&self) -> Vec<String>;
    fn rows(&self) -> Vec<Vec<String>>;
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum ReportFormat {
    Csv,
    Json,
}

pub fn to_csv(x: &dyn Tabular) -> Vec<u8> {
    let mut out = x.header().join(",");
    out.push('\n');
    for row in x.rows() {
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out.into_bytes()
}

/// Pretty JSON with struct field order preserved and floats rounded.
pub fn to_json<T: Serialize + ?Sized>(x: &T) -> Vec<u8> {
    let mut v = serde_json::to_value(x).expect("report serializes");
    round_floats(&mut v);
    let mut out = serde_json::to_vec_pretty(&v).expect("json");
    out.push(b'\n');
    out
}

pub fn emit_report<T: Serialize + Tabular>(x: &T, format: ReportFormat) -> Vec<u8> {
    match format {
        ReportFormat::Csv => to_csv(x),
        ReportFormat::Json => to_json(x),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn float_formatting() {
        assert_eq!(fmt_float(0.0), "0");
        assert_eq!(fmt_float(1.0), "1");
        assert_eq!(fmt_float(-2.5), "-2.5");
        assert_eq!(fmt_float(1.0 / 3.0), "0.333333333333");
        assert_eq!(fmt_float(1.0996), "1.0996");
        assert_eq!(fmt_float(123456789012345.0), "1.23456789012e14");
        assert_eq!(fmt_float(1.5e-7), "1.5e-7");
        assert_eq!(fmt_float(0.00012), "0.00012");
        assert_eq!(fmt_float(f64::INFINITY), "inf");
    }

    #[test]
    fn ratio_round_trip() {
        let r = Ratio::new(34, 16);
        assert_eq!(fmt_ratio(&r), "17/8");
        assert_eq!(parse_ratio("17/8"), Some(r));
        assert_eq!(parse_ratio("1/0"), None);
        assert_eq!(parse_ratio("3"), Some(Ratio::from_integer(3)));
        assert_eq!(parse_ratio("x"), None);
    }
}
