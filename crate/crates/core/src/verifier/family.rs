//! Closed-form classification predicates.

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Expected behaviour of `C_n(1, …, d)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyStatus {
    pub n: usize,
    pub d: usize,
    pub well_covered_expected: bool,
    pub cm_expected: bool,
    pub buchsbaum_not_cm_expected: bool,
}

pub fn expected_family_status(n: usize, d: usize) -> Result<FamilyStatus> {
    if d == 0 || n < 2 * d {
        return Err(Error::Domain(format!("need n >= 2d >= 2, got n = {n}, d = {d}")));
    }
    Ok(FamilyStatus {
        n,
        d,
        well_covered_expected: n <= 3 * d + 2 || n == 4 * d + 3,
        cm_expected: n <= 3 * d + 2 && n != 2 * d + 2,
        buchsbaum_not_cm_expected: n == 2 * d + 2 || n == 4 * d + 3,
    })
}

/// Cohen–Macaulayness of the cubic circulant `C_{2n}(a, n)`:
/// `2n / gcd(a, 2n) ∈ {3, 4}`.
pub fn expected_cubic_cm(two_n: usize, a: usize) -> Result<bool> {
    if two_n == 0 || !two_n.is_multiple_of(2) {
        return Err(Error::Domain(format!("2n = {two_n} must be positive and even")));
    }
    if a == 0 || a >= two_n / 2 {
        return Err(Error::Domain(format!("a = {a} outside 1..{}", two_n / 2)));
    }
    Ok(matches!(two_n / a.gcd(&two_n), 3 | 4))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn family_examples() {
        let s = expected_family_status(9, 3).unwrap();
        assert!(s.cm_expected && s.well_covered_expected && !s.buchsbaum_not_cm_expected);
        let s = expected_family_status(8, 3).unwrap();
        assert!(!s.cm_expected && s.buchsbaum_not_cm_expected && s.well_covered_expected);
        let s = expected_family_status(15, 3).unwrap();
        assert!(s.well_covered_expected && !s.cm_expected && s.buchsbaum_not_cm_expected);
        let s = expected_family_status(12, 3).unwrap();
        assert!(!s.well_covered_expected && !s.cm_expected);
        assert!(expected_family_status(5, 3).is_err());
        assert!(expected_family_status(4, 0).is_err());
    }

    #[test]
    fn five_cycle_is_the_only_odd_cycle_beyond_triangle() {
        let cm: Vec<usize> = (2..=12)
            .filter(|&n| expected_family_status(n, 1).unwrap().cm_expected)
            .collect();
        assert_eq!(cm, vec![2, 3, 5]);
    }

    #[test]
    fn cubic_examples() {
        assert!(expected_cubic_cm(12, 4).unwrap());
        assert!(!expected_cubic_cm(8, 1).unwrap());
        assert!(expected_cubic_cm(8, 2).unwrap());
        assert!(expected_cubic_cm(4, 1).unwrap());
        assert!(expected_cubic_cm(6, 2).unwrap());
        assert!(!expected_cubic_cm(6, 1).unwrap());
        assert!(expected_cubic_cm(7, 1).is_err());
        assert!(expected_cubic_cm(8, 4).is_err());
        assert!(expected_cubic_cm(8, 0).is_err());
    }
}
