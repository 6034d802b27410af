//! Parsing of numeric flag values: plain numbers, multiples of `pi`, and
//! `START:STOP:COUNT[:open]` axis ranges.

use abflux::grid::linspace;

/// Parses `1.5`, `pi`, `-pi`, `4pi`, `0.5pi`.
pub fn parse_scalar(text: &str) -> Result<f64, String> {
    let t = text.trim();
    let value = if let Some(prefix) = t.strip_suffix("pi") {
        let factor = match prefix {
            "" | "+" => 1.0,
            "-" => -1.0,
            p => p.parse::<f64>().map_err(|e| format!("bad multiple of pi '{text}': {e}"))?,
        };
        factor * std::f64::consts::PI
    } else {
        t.parse::<f64>().map_err(|e| format!("bad number '{text}': {e}"))?
    };
    if !value.is_finite() {
        return Err(format!("'{text}' is not finite"));
    }
    Ok(value)
}

/// Axis specification for grid commands.
#[derive(Debug, Clone, PartialEq)]
pub struct AxisSpec {
    pub start: f64,
    pub stop: f64,
    pub count: usize,
    pub half_open: bool,
}

impl AxisSpec {
    pub fn values(&self) -> Vec<f64> {
        linspace(self.start, self.stop, self.count, self.half_open)
    }
}

pub fn parse_axis(text: &str) -> Result<AxisSpec, String> {
    let parts: Vec<&str> = text.split(':').collect();
    match parts.as_slice() {
        [v] => {
            let v = parse_scalar(v)?;
            Ok(AxisSpec { start: v, stop: v, count: 1, half_open: false })
        }
        [a, b, n] | [a, b, n, _] => {
            let half_open = match parts.get(3) {
                None => false,
                Some(&"open") => true,
                Some(other) => return Err(format!("unknown axis flag '{other}', expected 'open'")),
            };
            let start = parse_scalar(a)?;
            let stop = parse_scalar(b)?;
            let count = n.trim().parse::<usize>().map_err(|e| format!("bad point count '{n}': {e}"))?;
            if count == 0 {
                return Err("axis point count must be at least 1".into());
            }
            if stop < start {
                return Err(format!("axis range {start}..{stop} is decreasing"));
            }
            Ok(AxisSpec { start, stop, count, half_open })
        }
        _ => Err(format!("axis '{text}' must be VALUE or START:STOP:COUNT[:open]")),
    }
}
