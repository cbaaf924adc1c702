//! Argument parsers that clap cannot derive on its own.

use anyhow::{anyhow, bail, Context, Result};
use circm_core::CirculantSpec;

/// Accepts `C_10(1,4,5)`, `C10(1,4,5)` and `10:1,4,5`. An empty set is
/// written `C_5()` or `5:`.
pub fn circulant(text: &str) -> Result<CirculantSpec> {
    let t = text.trim();
    let (n, set) = if let Some((n, set)) = t.split_once(':') {
        (n, set)
    } else {
        let body = t
            .strip_prefix('C')
            .ok_or_else(|| anyhow!("expected C_n(s1,s2,...) or n:s1,s2,..., got {text:?}"))?;
        let body = body.strip_prefix('_').unwrap_or(body);
        let (n, rest) = body.split_once('(').ok_or_else(|| anyhow!("missing '(' in {text:?}"))?;
        let set = rest
            .strip_suffix(')')
            .ok_or_else(|| anyhow!("missing ')' in {text:?}"))?;
        (n, set)
    };
    let n: usize = n
        .trim()
        .parse()
        .with_context(|| format!("bad vertex count in {text:?}"))?;
    let set = numbers(set)?;
    Ok(CirculantSpec::new(n, set)?)
}

pub fn numbers(text: &str) -> Result<Vec<usize>> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| s.parse().with_context(|| format!("bad integer {s:?}")))
        .collect()
}

/// Inclusive range `a..b` (or `a..=b`, or a single value).
pub fn range(text: &str) -> Result<(usize, usize)> {
    match text.split_once("..") {
        Some((lo, hi)) => {
            let hi = hi.strip_prefix('=').unwrap_or(hi);
            Ok((lo.trim().parse()?, hi.trim().parse()?))
        }
        None => {
            let v = text.trim().parse()?;
            Ok((v, v))
        }
    }
}

/// `a*d + b`, written as e.g. `3d+4`, `2d`, `d-1` or `7`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Linear {
    pub coeff: i64,
    pub offset: i64,
}

impl Linear {
    pub fn eval(self, d: usize) -> i64 {
        self.coeff * d as i64 + self.offset
    }
}

pub fn linear(text: &str) -> Result<Linear> {
    let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if t.is_empty() {
        bail!("empty expression");
    }
    let Some(pos) = t.find('d') else {
        return Ok(Linear {
            coeff: 0,
            offset: t.parse().with_context(|| format!("bad expression {text:?}"))?,
        });
    };
    let coeff = match &t[..pos] {
        "" | "+" => 1,
        "-" => -1,
        c => c
            .trim_end_matches('*')
            .parse()
            .with_context(|| format!("bad coefficient in {text:?}"))?,
    };
    let rest = &t[pos + 1..];
    let offset = if rest.is_empty() {
        0
    } else {
        let sign = match rest.as_bytes()[0] {
            b'+' => 1,
            b'-' => -1,
            _ => bail!("bad expression {text:?}"),
        };
        sign * rest[1..]
            .parse::<i64>()
            .with_context(|| format!("bad offset in {text:?}"))?
    };
    Ok(Linear { coeff, offset })
}

/// `lo..hi` with linear endpoints in `d`, inclusive.
pub fn linear_range(text: &str) -> Result<(Linear, Linear)> {
    let (lo, hi) = text
        .split_once("..")
        .ok_or_else(|| anyhow!("expected lo..hi, got {text:?}"))?;
    let hi = hi.strip_prefix('=').unwrap_or(hi);
    Ok((linear(lo)?, linear(hi)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn circulant_notations() {
        for text in ["C_10(1,4,5)", "C10(1, 4, 5)", "10:1,4,5", "10:5,4,1"] {
            assert_eq!(circulant(text).unwrap().to_string(), "C_10(1,4,5)");
        }
        assert_eq!(circulant("C_5()").unwrap().set(), &[] as &[usize]);
        assert!(circulant("K5").is_err());
        assert!(circulant("6:4").is_err());
    }

    #[test]
    fn linear_expressions() {
        assert_eq!(linear("3d+4").unwrap(), Linear { coeff: 3, offset: 4 });
        assert_eq!(linear("2d").unwrap(), Linear { coeff: 2, offset: 0 });
        assert_eq!(linear("d-1").unwrap(), Linear { coeff: 1, offset: -1 });
        assert_eq!(linear("7").unwrap(), Linear { coeff: 0, offset: 7 });
        assert_eq!(linear("4*d+3").unwrap().eval(2), 11);
        assert!(linear("3x").is_err());
        let (lo, hi) = linear_range("2d..3d+4").unwrap();
        assert_eq!((lo.eval(3), hi.eval(3)), (6, 13));
    }

    #[test]
    fn ranges() {
        assert_eq!(range("1..3").unwrap(), (1, 3));
        assert_eq!(range("1..=3").unwrap(), (1, 3));
        assert_eq!(range("4").unwrap(), (4, 4));
        assert!(range("a..b").is_err());
    }
}
