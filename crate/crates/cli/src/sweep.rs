//! Batch sweeps over circulant families, one JSON object per case.

use anyhow::Result;
use circm_core::graph::ISOMORPHISM_LIMIT;
use circm_core::properties::{graph_report, is_cohen_macaulay, PropertyReport, ReportOptions};
use circm_core::verifier::{expected_cubic_cm, expected_family_status, FamilyStatus};
use circm_core::{
    cubic_decompose, independence_complex, is_isomorphic_small, is_well_covered, make_circulant, CirculantSpec,
    FieldChoice,
};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::parse::Linear;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContiguousLine {
    pub d: usize,
    pub n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expected: Option<FamilyStatus>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub well_covered_matches: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cm_matches: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub report: Option<PropertyReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

/// Cases `(d, n)` for `d` in `d_range` and `n` between the two linear
/// bounds, both inclusive, in key order.
pub fn contiguous_cases(d_range: (usize, usize), n_range: (Linear, Linear)) -> Vec<(usize, usize)> {
    let mut cases = Vec::new();
    for d in d_range.0..=d_range.1 {
        let lo = n_range.0.eval(d).max(1);
        let hi = n_range.1.eval(d);
        for n in lo..=hi {
            cases.push((d, n as usize));
        }
    }
    cases
}

pub fn contiguous_line(d: usize, n: usize, field: FieldChoice, options: &ReportOptions) -> ContiguousLine {
    let mut line = ContiguousLine {
        d,
        n,
        expected: expected_family_status(n, d).ok(),
        well_covered_matches: None,
        cm_matches: None,
        report: None,
        error: None,
    };
    let report = CirculantSpec::contiguous(n, d)
        .map_err(anyhow::Error::from)
        .and_then(|spec| Ok(graph_report(&make_circulant(&spec), field, options)?));
    match report {
        Ok(report) => {
            if let Some(expected) = line.expected {
                line.well_covered_matches = Some(report.well_covered == expected.well_covered_expected);
                line.cm_matches = report.cm.map(|cm| cm == expected.cm_expected);
            }
            line.report = Some(report);
        }
        Err(e) => line.error = Some(e.to_string()),
    }
    line
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CubicLine {
    pub two_n: usize,
    pub a: usize,
    pub graph: String,
    pub components: usize,
    pub component: String,
    pub connected: bool,
    pub well_covered: bool,
    pub cm: bool,
    pub cm_expected: bool,
    /// Smallest `a'` with `C_{2n}(a', n)` isomorphic to this graph, when the
    /// brute-force isomorphism test applies.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub isomorphic_to: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

/// Cases `(2n, a)` with `2n ≤ max_two_n` even and `1 ≤ a < n`.
pub fn cubic_cases(max_two_n: usize) -> Vec<(usize, usize)> {
    (4..=max_two_n)
        .step_by(2)
        .flat_map(|two_n| (1..two_n / 2).map(move |a| (two_n, a)))
        .collect()
}

pub fn cubic_line(two_n: usize, a: usize, field: FieldChoice) -> CubicLine {
    let run = || -> Result<CubicLine> {
        let spec = CirculantSpec::new(two_n, [a, two_n / 2])?;
        let g = make_circulant(&spec);
        let dec = cubic_decompose(two_n, a)?;
        let isomorphic_to = if two_n <= ISOMORPHISM_LIMIT {
            let mut found = spec.to_string();
            for b in 1..a {
                let other = CirculantSpec::new(two_n, [b, two_n / 2])?;
                if is_isomorphic_small(&g, &make_circulant(&other))? {
                    found = other.to_string();
                    break;
                }
            }
            Some(found)
        } else {
            None
        };
        Ok(CubicLine {
            two_n,
            a,
            graph: spec.to_string(),
            components: dec.copies,
            component: dec.component_spec.to_string(),
            connected: g.is_connected(),
            well_covered: is_well_covered(&g),
            cm: is_cohen_macaulay(&independence_complex(&g), field),
            cm_expected: expected_cubic_cm(two_n, a)?,
            isomorphic_to,
            error: None,
        })
    };
    run().unwrap_or_else(|e| CubicLine {
        two_n,
        a,
        graph: format!("C_{two_n}({a},{})", two_n / 2),
        components: 0,
        component: String::new(),
        connected: false,
        well_covered: false,
        cm: false,
        cm_expected: false,
        isomorphic_to: None,
        error: Some(e.to_string()),
    })
}

/// Evaluates `f` on every case on a pool of `jobs` threads; results come
/// back in case order regardless of scheduling.
pub fn run_parallel<C, T, F>(cases: &[C], jobs: usize, f: F) -> Result<Vec<T>>
where
    C: Sync,
    T: Send,
    F: Fn(&C) -> T + Sync + Send,
{
    let pool = rayon::ThreadPoolBuilder::new().num_threads(jobs).build()?;
    Ok(pool.install(|| cases.par_iter().map(&f).collect()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::linear_range;
    use circm_core::properties::Checks;

    #[test]
    fn case_enumeration() {
        let cases = contiguous_cases((1, 2), linear_range("2d..3d+1").unwrap());
        assert_eq!(cases, vec![(1, 2), (1, 3), (1, 4), (2, 4), (2, 5), (2, 6), (2, 7)]);
        assert!(contiguous_cases((3, 1), linear_range("2d..3d").unwrap()).is_empty());
        assert!(contiguous_cases((1, 2), linear_range("3d..2d").unwrap()).is_empty());
        assert_eq!(cubic_cases(8), vec![(4, 1), (6, 1), (6, 2), (8, 1), (8, 2), (8, 3)]);
    }

    #[test]
    fn contiguous_lines_match_expectation() {
        let options = ReportOptions {
            checks: "cm,bb".parse::<Checks>().unwrap(),
            ..ReportOptions::default()
        };
        for (d, n) in contiguous_cases((1, 2), linear_range("2d..3d+4").unwrap()) {
            let line = contiguous_line(d, n, FieldChoice::ExactRational, &options);
            assert_eq!(line.cm_matches, Some(true), "d = {d}, n = {n}");
            assert_eq!(line.well_covered_matches, Some(true), "d = {d}, n = {n}");
        }
        let bad = contiguous_line(3, 5, FieldChoice::ExactRational, &options);
        assert!(bad.error.is_some() && bad.report.is_none());
    }

    #[test]
    fn cubic_lines() {
        let line = cubic_line(8, 3, FieldChoice::ExactRational);
        assert!(line.connected && line.well_covered && !line.cm && !line.cm_expected);
        assert_eq!(line.isomorphic_to.as_deref(), Some("C_8(1,4)"));
        let line = cubic_line(8, 2, FieldChoice::ExactRational);
        assert_eq!((line.components, line.component.as_str()), (2, "C_4(1,2)"));
        assert!(line.cm && line.cm_expected && !line.connected);
    }

    #[test]
    fn parallel_order_is_case_order() {
        let cases: Vec<usize> = (0..100).collect();
        let out = run_parallel(&cases, 3, |&k| k * k).unwrap();
        assert_eq!(out, cases.iter().map(|k| k * k).collect::<Vec<_>>());
    }
}
