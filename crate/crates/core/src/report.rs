//! JSON and CSV output.
//!
//! Floats are rounded to 12 significant digits before printing so that
//! reports stay stable across platforms; exact fractions print as `num/den`.

use num_rational::Ratio;
use serde::Serialize;
use serde_json::Value;

use crate::{Error, Result};

pub const SIGNIFICANT_DIGITS: usize = 12;

pub const CSV_HEADER: &str = "p,cohering_power,nsid,lower,exact,upper,classical_lo,classical_hi";

/// Round to [`SIGNIFICANT_DIGITS`] significant digits.
pub fn round_sig(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    format!("{:.*e}", SIGNIFICANT_DIGITS - 1, x)
        .parse()
        .expect("formatted float parses")
}

pub fn format_float(x: f64) -> String {
    let r = round_sig(x);
    // -0 prints as 0.
    if r == 0.0 {
        "0".to_string()
    } else {
        r.to_string()
    }
}

pub fn ratio_string(r: Ratio<u64>) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

fn round_value(v: &mut Value) {
    match v {
        Value::Number(n) if n.is_f64() => {
            let x = round_sig(n.as_f64().expect("f64 number"));
            *v = serde_json::Number::from_f64(x).map_or(Value::Null, Value::Number);
        }
        Value::Array(items) => items.iter_mut().for_each(round_value),
        Value::Object(map) => map.values_mut().for_each(round_value),
        _ => {}
    }
}

/// Pretty JSON with every float rounded.
pub fn to_json<T: Serialize>(value: &T) -> Result<String> {
    let mut v = serde_json::to_value(value).map_err(|e| Error::Io(e.to_string()))?;
    round_value(&mut v);
    let mut s = serde_json::to_string_pretty(&v).map_err(|e| Error::Io(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

/// A preparation or detection parameter: one value for every block, or one
/// per block.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(untagged)]
pub enum PValue {
    Shared(f64),
    PerBlock(Vec<f64>),
}

impl PValue {
    pub fn from_list(ps: &[f64]) -> Self {
        match ps {
            [p] => PValue::Shared(*p),
            _ => PValue::PerBlock(ps.to_vec()),
        }
    }
}

/// Exact-run summary.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunReport {
    #[serde(rename = "N")]
    pub n: u64,
    pub x: u64,
    pub r: u64,
    #[serde(rename = "L")]
    pub bits: u32,
    pub p_prep: Option<PValue>,
    pub p_detect: Option<PValue>,
    pub exact: Option<f64>,
    pub classical: f64,
    /// `f(N, r) / 2^L` in lowest terms.
    pub classical_fraction: String,
    pub lower_bound: f64,
    pub upper_bound: f64,
}

/// One row of a parameter sweep.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SweepRow {
    pub p: f64,
    pub cohering_power: f64,
    pub nsid: f64,
    pub lower: f64,
    pub exact: f64,
    pub upper: f64,
    pub classical_lo: f64,
    pub classical_hi: f64,
}

impl SweepRow {
    pub fn csv_line(&self) -> String {
        [
            self.p,
            self.cohering_power,
            self.nsid,
            self.lower,
            self.exact,
            self.upper,
            self.classical_lo,
            self.classical_hi,
        ]
        .map(format_float)
        .join(",")
    }

    pub fn sandwiched(&self) -> bool {
        self.lower <= self.exact && self.exact <= self.upper
    }
}

pub fn to_csv(rows: &[SweepRow]) -> String {
    let mut s = String::from(CSV_HEADER);
    s.push('\n');
    for row in rows {
        s.push_str(&row.csv_line());
        s.push('\n');
    }
    s
}
