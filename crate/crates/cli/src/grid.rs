//! Exact decimal grids such as `re=-0.9:0.9:0.1,im=0`.

use anyhow::{bail, Context, Result};

/// A decimal number `num / 10^scale`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Decimal {
    pub num: i64,
    pub scale: u32,
}

impl Decimal {
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        let (neg, body) = match s.strip_prefix('-') {
            Some(r) => (true, r),
            None => (false, s.strip_prefix('+').unwrap_or(s)),
        };
        let (int, frac) = body.split_once('.').unwrap_or((body, ""));
        if int.is_empty() && frac.is_empty()
            || !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit())
        {
            bail!("bad decimal `{s}`");
        }
        let digits = format!("{int}{frac}");
        let num: i64 = digits
            .parse()
            .with_context(|| format!("decimal `{s}` out of range"))?;
        Ok(Decimal {
            num: if neg { -num } else { num },
            scale: frac.len() as u32,
        })
    }

    fn rescale(self, scale: u32) -> i64 {
        self.num * 10i64.pow(scale - self.scale)
    }

    pub fn denominator(self) -> i64 {
        10i64.pow(self.scale)
    }
}

impl std::fmt::Display for Decimal {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.scale == 0 {
            return write!(f, "{}", self.num);
        }
        let d = self.denominator();
        let sign = if self.num < 0 { "-" } else { "" };
        let a = self.num.unsigned_abs();
        write!(
            f,
            "{sign}{}.{:0w$}",
            a / d as u64,
            a % d as u64,
            w = self.scale as usize
        )
    }
}

/// Points `a, a + h, …` not exceeding `b`.
pub fn axis(spec: &str) -> Result<Vec<Decimal>> {
    let parts: Vec<&str> = spec.split(':').collect();
    match parts.as_slice() {
        [v] => Ok(vec![Decimal::parse(v)?]),
        [a, b, h] => {
            let (a, b, h) = (Decimal::parse(a)?, Decimal::parse(b)?, Decimal::parse(h)?);
            let scale = a.scale.max(b.scale).max(h.scale);
            let (a0, b0, h0) = (a.rescale(scale), b.rescale(scale), h.rescale(scale));
            if h0 <= 0 {
                bail!("grid step must be positive");
            }
            if b0 < a0 {
                bail!("empty grid range {spec}");
            }
            let count = (b0 - a0) / h0 + 1;
            if count > 100_000 {
                bail!("grid too large ({count} points)");
            }
            Ok((0..count)
                .map(|k| Decimal {
                    num: a0 + k * h0,
                    scale,
                })
                .collect())
        }
        _ => bail!("expected `start:stop:step` or a single value, got `{spec}`"),
    }
}

/// Parses `re=..,im=..`; a missing axis is the single value 0.
pub fn parse(src: &str) -> Result<(Vec<Decimal>, Vec<Decimal>)> {
    let zero = vec![Decimal { num: 0, scale: 0 }];
    let (mut re, mut im) = (zero.clone(), zero);
    for part in src.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let (k, v) = part
            .split_once('=')
            .with_context(|| format!("expected `re=` or `im=` in `{part}`"))?;
        match k.trim() {
            "re" => re = axis(v)?,
            "im" => im = axis(v)?,
            other => bail!("unknown grid axis `{other}`"),
        }
    }
    Ok((re, im))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decimal_round_trip() {
        for s in ["0", "-0.9", "0.05", "12.5", "-3"] {
            assert_eq!(Decimal::parse(s).unwrap().to_string(), s);
        }
    }

    #[test]
    fn axis_is_exact() {
        let v = axis("-0.9:0.9:0.1").unwrap();
        assert_eq!(v.len(), 19);
        assert_eq!(v[9].num, 0);
        assert_eq!(v.last().unwrap().to_string(), "0.9");
    }

    #[test]
    fn missing_axis_is_zero() {
        let (re, im) = parse("re=0:1:0.5").unwrap();
        assert_eq!(re.len(), 3);
        assert_eq!(im, vec![Decimal { num: 0, scale: 0 }]);
    }
}
