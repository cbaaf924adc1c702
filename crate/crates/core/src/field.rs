//! Coefficient fields for homology.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Prime used when a prime field is requested without an explicit modulus.
pub const DEFAULT_PRIME: u64 = 32003;

/// Exact coefficient field: the rationals or `GF(p)` with `2 <= p < 2^61`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum FieldChoice {
    #[default]
    ExactRational,
    PrimeField {
        p: u64,
    },
}

impl FieldChoice {
    pub fn prime(p: u64) -> Result<Self> {
        if p >= 1 << 61 {
            return Err(Error::InvalidField(format!("modulus {p} is not below 2^61")));
        }
        if !is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        Ok(FieldChoice::PrimeField { p })
    }

    pub fn default_prime() -> Self {
        FieldChoice::PrimeField { p: DEFAULT_PRIME }
    }
}

impl fmt::Display for FieldChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldChoice::ExactRational => write!(f, "q"),
            FieldChoice::PrimeField { p } => write!(f, "gf:{p}"),
        }
    }
}

/// Accepts `q` and `gf:P` (`gf` alone means `gf:32003`).
impl FromStr for FieldChoice {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "q" | "Q" => Ok(FieldChoice::ExactRational),
            "gf" => Ok(FieldChoice::default_prime()),
            other => {
                let p = other
                    .strip_prefix("gf:")
                    .ok_or_else(|| Error::InvalidField(format!("unknown field {other:?}")))?;
                let p: u64 = p
                    .parse()
                    .map_err(|_| Error::InvalidField(format!("bad modulus {p:?}")))?;
                FieldChoice::prime(p)
            }
        }
    }
}

#[inline]
pub(crate) fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

/// Inverse of a non-zero residue modulo a prime.
pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(!a.is_multiple_of(p));
    pow_mod(a, p - 2, p)
}

/// Deterministic Miller–Rabin for 64-bit inputs.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &w in &WITNESSES {
        if n.is_multiple_of(w) {
            return n == w;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &WITNESSES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes() {
        let small: Vec<u64> = (0..60).filter(|&n| is_prime(n)).collect();
        assert_eq!(
            small,
            vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59]
        );
        assert!(is_prime(32003));
        assert!(!is_prime(32001));
        assert!(is_prime((1 << 61) - 1));
        assert!(!is_prime(3215031751)); // strong pseudoprime to bases 2, 3, 5, 7
    }

    #[test]
    fn parse_fields() {
        assert_eq!("q".parse::<FieldChoice>().unwrap(), FieldChoice::ExactRational);
        assert_eq!("gf:7".parse::<FieldChoice>().unwrap(), FieldChoice::PrimeField { p: 7 });
        assert_eq!("gf".parse::<FieldChoice>().unwrap(), FieldChoice::default_prime());
        assert!("gf:8".parse::<FieldChoice>().is_err());
        assert!("gf:2305843009213693951".parse::<FieldChoice>().is_ok());
        assert!(FieldChoice::prime(2305843009213693967).is_err());
        assert!("r".parse::<FieldChoice>().is_err());
        assert_eq!(FieldChoice::prime(5).unwrap().to_string(), "gf:5");
    }
}
