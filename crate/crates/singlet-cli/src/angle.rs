//! Angle arguments: plain radians or rational multiples of pi, so the
//! canonical settings stay exact in command lines (`pi/3`, `2pi/3`, `-pi/2`,
//! `0.5pi`, `2*pi/3`, `1.047`).

use std::f64::consts::PI;

pub fn parse_angle(input: &str) -> Result<f64, String> {
    let trimmed = input.trim();
    if trimmed.is_empty() {
        return Err("empty angle".into());
    }
    let (sign, rest) = match trimmed.strip_prefix('-') {
        Some(r) => (-1.0, r),
        None => (1.0, trimmed.strip_prefix('+').unwrap_or(trimmed)),
    };
    if let Some(pos) = rest.find("pi") {
        let coef_part = rest[..pos].trim_end_matches('*');
        let tail = &rest[pos + 2..];
        let coef: f64 = if coef_part.is_empty() {
            1.0
        } else {
            coef_part
                .parse()
                .map_err(|_| format!("bad coefficient in angle `{input}`"))?
        };
        let denom: f64 = if tail.is_empty() {
            1.0
        } else {
            let d = tail
                .strip_prefix('/')
                .ok_or_else(|| format!("unexpected text after `pi` in `{input}`"))?;
            let v: f64 = d
                .parse()
                .map_err(|_| format!("bad denominator in angle `{input}`"))?;
            if v == 0.0 {
                return Err(format!("zero denominator in angle `{input}`"));
            }
            v
        };
        let value = sign * coef * PI / denom;
        if !value.is_finite() {
            return Err(format!("angle `{input}` is not finite"));
        }
        Ok(value)
    } else {
        let v: f64 = rest.parse().map_err(|_| {
            format!("cannot parse angle `{input}`: expected radians or a pi fraction like pi/3")
        })?;
        if !v.is_finite() {
            return Err(format!("angle `{input}` is not finite"));
        }
        Ok(sign * v)
    }
}
