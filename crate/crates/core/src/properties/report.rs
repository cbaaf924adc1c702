//! Cross-validated property reports.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::complex::{f_vector, independence_complex, Complex};
use crate::error::{Error, Result};
use crate::field::FieldChoice;
use crate::graph::Graph;
use crate::homology::{reduced_betti, BettiTable};
use crate::vertex_set::VertexSet;

use super::decomposable::is_vertex_decomposable;
use super::hochster::projective_dimension;
use super::reisner::{buchsbaum_witness, cohen_macaulay_witness, ReisnerWitness};
use super::shelling::{is_shellable, ShellingEvidence, TriState, DEFAULT_NODE_BUDGET};

/// Which checkers to run. Well-coveredness and f/h-vectors are always
/// reported since they are cheap.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Checks {
    pub cm: bool,
    pub buchsbaum: bool,
    pub vertex_decomposable: bool,
    pub shellable: bool,
    pub pdim: bool,
    pub betti: bool,
}

impl Checks {
    pub const ALL: Checks = Checks {
        cm: true,
        buchsbaum: true,
        vertex_decomposable: true,
        shellable: true,
        pdim: true,
        betti: true,
    };
    pub const NONE: Checks = Checks {
        cm: false,
        buchsbaum: false,
        vertex_decomposable: false,
        shellable: false,
        pdim: false,
        betti: false,
    };
}

impl Default for Checks {
    fn default() -> Self {
        Checks::ALL
    }
}

/// Comma-separated subset of `wc,cm,bb,vd,sh,pdim,betti`, or `all`.
impl FromStr for Checks {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut checks = Checks::NONE;
        for name in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            match name {
                "all" => checks = Checks::ALL,
                "wc" => {}
                "cm" => checks.cm = true,
                "bb" => checks.buchsbaum = true,
                "vd" => checks.vertex_decomposable = true,
                "sh" => checks.shellable = true,
                "pdim" => checks.pdim = true,
                "betti" => checks.betti = true,
                other => return Err(Error::Domain(format!("unknown check {other:?}"))),
            }
        }
        Ok(checks)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportOptions {
    pub checks: Checks,
    pub node_budget: u64,
    /// Lifts the vertex-count guard on the projective dimension.
    pub allow_large: bool,
}

impl Default for ReportOptions {
    fn default() -> Self {
        ReportOptions {
            checks: Checks::ALL,
            node_budget: DEFAULT_NODE_BUDGET,
            allow_large: false,
        }
    }
}

/// Where the reported shellability answer comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ShellableSource {
    Search,
    /// Search inconclusive; shellable complexes are Cohen–Macaulay.
    InferredFromCm,
    /// Search inconclusive; vertex decomposable complexes are shellable.
    InferredFromVd,
}

impl ShellableSource {
    pub fn as_str(self) -> &'static str {
        match self {
            ShellableSource::Search => "search",
            ShellableSource::InferredFromCm => "inferred-from-cm",
            ShellableSource::InferredFromVd => "inferred-from-vd",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HochsterWitness {
    pub set: VertexSet,
    pub degree: i64,
}

/// Checker results for one complex. `None` means "not requested".
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropertyReport {
    pub graph: Option<String>,
    pub vertex_count: usize,
    pub field: FieldChoice,
    pub alpha: usize,
    pub krull_dim: usize,
    pub dim: i64,
    pub f_vector: Vec<i64>,
    pub h_vector: Vec<i64>,
    pub h_nonnegative: bool,
    pub pure: bool,
    pub well_covered: bool,
    /// A facet smaller than the largest one.
    pub small_facet: Option<VertexSet>,
    pub cm: Option<bool>,
    pub cm_witness: Option<ReisnerWitness>,
    pub buchsbaum: Option<bool>,
    pub buchsbaum_witness: Option<ReisnerWitness>,
    pub vertex_decomposable: Option<bool>,
    pub shellable: Option<TriState>,
    pub shellable_source: Option<ShellableSource>,
    pub shelling_evidence: Option<ShellingEvidence>,
    pub shelling_nodes: Option<u64>,
    pub shelling_order: Option<Vec<VertexSet>>,
    pub pdim: Option<usize>,
    pub depth: Option<usize>,
    pub pdim_witness: Option<HochsterWitness>,
    pub betti: Option<BettiTable>,
    pub euler_ok: Option<bool>,
}

fn violated(premise: Option<bool>, conclusion: Option<bool>) -> bool {
    premise == Some(true) && conclusion == Some(false)
}

impl PropertyReport {
    /// Every implication between the reported properties.
    pub fn check_invariants(&self) -> Result<()> {
        let sh = self.shellable.and_then(TriState::as_bool);
        let fail = |what: &str| Err(Error::Inconsistency(format!("{what} ({})", self.subject())));
        let chain = [
            ("vertex decomposable but not shellable", self.vertex_decomposable, sh),
            (
                "vertex decomposable but not Cohen-Macaulay",
                self.vertex_decomposable,
                self.cm,
            ),
            ("shellable but not Cohen-Macaulay", sh, self.cm),
            ("Cohen-Macaulay but not Buchsbaum", self.cm, self.buchsbaum),
            ("Cohen-Macaulay but not well-covered", self.cm, Some(self.well_covered)),
            (
                "Cohen-Macaulay with a negative h-vector entry",
                self.cm,
                Some(self.h_nonnegative),
            ),
            ("Buchsbaum but not pure", self.buchsbaum, Some(self.pure)),
        ];
        for (what, premise, conclusion) in chain {
            if violated(premise, conclusion) {
                return fail(what);
            }
        }
        if self.well_covered != self.pure {
            return fail("well-coveredness differs from purity");
        }
        if self.krull_dim != self.alpha || self.krull_dim as i64 != self.dim + 1 {
            return fail("Krull dimension differs from the independence number");
        }
        if let (Some(cm), Some(pdim)) = (self.cm, self.pdim) {
            if cm != (self.vertex_count - pdim == self.krull_dim) {
                return fail("Reisner and Hochster disagree on Cohen-Macaulayness");
            }
        }
        if self.cm == Some(false) && self.cm_witness.is_none() {
            return fail("missing Reisner witness");
        }
        if self.euler_ok == Some(false) {
            return fail("Euler characteristic mismatch");
        }
        Ok(())
    }

    fn subject(&self) -> String {
        self.graph
            .clone()
            .unwrap_or_else(|| format!("complex on {} vertices", self.vertex_count))
    }
}

impl fmt::Display for PropertyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let flag = |b: Option<bool>| b.map_or("-".to_string(), |b| b.to_string());
        writeln!(f, "subject        {}", self.subject())?;
        writeln!(f, "field          {}", self.field)?;
        writeln!(f, "alpha          {}", self.alpha)?;
        writeln!(f, "dim            {}", self.dim)?;
        writeln!(f, "f-vector       {:?}", self.f_vector)?;
        write!(f, "h-vector       {:?}", self.h_vector)?;
        if !self.h_nonnegative {
            write!(f, "  (warning: negative entry)")?;
        }
        writeln!(f)?;
        write!(f, "well-covered   {}", self.well_covered)?;
        if let Some(facet) = self.small_facet {
            write!(f, "  (small facet {facet})")?;
        }
        writeln!(f)?;
        if self.cm.is_some() {
            write!(f, "cohen-macaulay {}", flag(self.cm))?;
            if let Some(w) = self.cm_witness {
                write!(f, "  (H~_{} of link of {} non-zero)", w.degree, w.face)?;
            }
            writeln!(f)?;
        }
        if self.buchsbaum.is_some() {
            write!(f, "buchsbaum      {}", flag(self.buchsbaum))?;
            if let Some(w) = self.buchsbaum_witness {
                write!(f, "  (H~_{} of link of {} non-zero)", w.degree, w.face)?;
            }
            writeln!(f)?;
        }
        if self.vertex_decomposable.is_some() {
            writeln!(f, "vertex-decomp  {}", flag(self.vertex_decomposable))?;
        }
        if let Some(sh) = self.shellable {
            let source = self.shellable_source.map_or("", ShellableSource::as_str);
            writeln!(f, "shellable      {}  ({source})", sh.as_str())?;
        }
        if let (Some(pdim), Some(depth)) = (self.pdim, self.depth) {
            writeln!(f, "pdim           {pdim}")?;
            writeln!(f, "depth          {depth}  (krull dim {})", self.krull_dim)?;
        }
        if let Some(b) = &self.betti {
            let entries: Vec<String> = b
                .betti
                .iter()
                .enumerate()
                .map(|(k, v)| format!("H~_{}={v}", k as i64 - 1))
                .collect();
            writeln!(f, "betti          {}", entries.join(" "))?;
        }
        Ok(())
    }
}

/// Runs the requested checkers on `c` and validates the result.
pub fn complex_report(c: &Complex, field: FieldChoice, options: &ReportOptions) -> Result<PropertyReport> {
    let checks = options.checks;
    let fh = f_vector(c);
    let pure = c.is_pure();
    let alpha = (c.dim() + 1) as usize;
    let small_facet = c
        .facets()
        .iter()
        .copied()
        .filter(|f| f.len() < alpha)
        .min_by(|a, b| a.len().cmp(&b.len()).then(a.lex_cmp(*b)));

    let pdim = if checks.pdim {
        Some(projective_dimension(c, field, options.allow_large)?)
    } else {
        None
    };
    let cm_witness = if checks.cm || checks.shellable {
        cohen_macaulay_witness(c, field)
    } else {
        None
    };
    let cm = (checks.cm || checks.shellable).then_some(cm_witness.is_none());
    let (buchsbaum, buchsbaum_witness) = if !checks.buchsbaum {
        (None, None)
    } else if pure {
        let w = buchsbaum_witness(c, field)?;
        (Some(w.is_none()), w)
    } else {
        (Some(false), None)
    };
    let vd = (checks.vertex_decomposable || checks.shellable).then(|| is_vertex_decomposable(c));

    let mut shelling = None;
    if checks.shellable {
        let outcome = is_shellable(c, options.node_budget);
        let (status, source) = match (outcome.status, cm, vd) {
            (TriState::Unknown, Some(false), _) => (TriState::False, ShellableSource::InferredFromCm),
            (TriState::Unknown, _, Some(true)) => (TriState::True, ShellableSource::InferredFromVd),
            (status, _, _) => (status, ShellableSource::Search),
        };
        shelling = Some((status, source, outcome));
    }

    let betti = checks.betti.then(|| reduced_betti(c, field));
    let euler_ok = betti
        .as_ref()
        .map(|b| b.euler_characteristic() == fh.reduced_euler_characteristic());

    let report = PropertyReport {
        graph: None,
        vertex_count: c.vertex_count(),
        field,
        alpha,
        krull_dim: alpha,
        dim: c.dim(),
        h_nonnegative: fh.h_nonnegative(),
        f_vector: fh.f,
        h_vector: fh.h,
        pure,
        well_covered: pure,
        small_facet,
        cm: if checks.cm { cm } else { None },
        cm_witness: if checks.cm { cm_witness } else { None },
        buchsbaum,
        buchsbaum_witness,
        vertex_decomposable: if checks.vertex_decomposable { vd } else { None },
        shellable: shelling.as_ref().map(|s| s.0),
        shellable_source: shelling.as_ref().map(|s| s.1),
        shelling_evidence: shelling.as_ref().map(|s| s.2.evidence),
        shelling_nodes: shelling.as_ref().map(|s| s.2.nodes),
        shelling_order: shelling.and_then(|s| s.2.order),
        pdim: pdim.map(|d| d.pdim),
        depth: pdim.map(|d| d.depth),
        pdim_witness: pdim.map(|d| HochsterWitness {
            set: d.witness_set,
            degree: d.witness_degree,
        }),
        betti,
        euler_ok,
    };
    // Hidden checks used for inference still have to be consistent.
    let mut audit = report.clone();
    audit.cm = cm;
    audit.cm_witness = cm_witness;
    audit.vertex_decomposable = vd;
    audit.check_invariants()?;
    Ok(report)
}

/// Report on `Ind(g)`.
pub fn graph_report(g: &Graph, field: FieldChoice, options: &ReportOptions) -> Result<PropertyReport> {
    let mut report = complex_report(&independence_complex(g), field, options)?;
    report.graph = g.origin().map(ToString::to_string);
    Ok(report)
}

/// Every checker with default guards.
pub fn full_report(g: &Graph, field: FieldChoice, node_budget: u64) -> Result<PropertyReport> {
    let options = ReportOptions {
        node_budget,
        ..ReportOptions::default()
    };
    graph_report(g, field, &options)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{make_circulant, CirculantSpec};

    fn circ(n: usize, s: &[usize]) -> Graph {
        make_circulant(&CirculantSpec::new(n, s.iter().copied()).unwrap())
    }

    const Q: FieldChoice = FieldChoice::ExactRational;

    #[test]
    fn lex_product_examples() {
        let r = full_report(&circ(10, &[1, 4, 5]), Q, DEFAULT_NODE_BUDGET).unwrap();
        assert_eq!(r.cm, Some(true));
        assert_eq!(r.shellable, Some(TriState::True));
        let r = full_report(&circ(10, &[1, 2, 3, 5]), Q, DEFAULT_NODE_BUDGET).unwrap();
        assert_eq!((r.cm, r.alpha), (Some(false), 2));
        assert_eq!(r.vertex_count - r.pdim.unwrap(), 1);
        assert_eq!(r.graph.as_deref(), Some("C_10(1,2,3,5)"));
    }

    #[test]
    fn edgeless_graph_is_a_simplex() {
        let r = full_report(&Graph::edgeless(3).unwrap(), Q, DEFAULT_NODE_BUDGET).unwrap();
        assert_eq!(r.cm, Some(true));
        assert_eq!(r.buchsbaum, Some(true));
        assert_eq!(r.vertex_decomposable, Some(true));
        assert_eq!(r.shellable, Some(TriState::True));
        assert!(r.well_covered && r.pure && r.h_nonnegative);
        assert_eq!((r.pdim, r.depth), (Some(0), Some(3)));
    }

    #[test]
    fn witnesses_for_false_answers() {
        let r = full_report(&circ(7, &[1]), Q, DEFAULT_NODE_BUDGET).unwrap();
        assert_eq!(r.cm, Some(false));
        assert_eq!(r.cm_witness.unwrap().face, VertexSet::EMPTY);
        assert_eq!(r.buchsbaum, Some(true));
        assert_eq!(r.shelling_evidence, Some(ShellingEvidence::NegativeHEntry { k: 3 }));
        let r = full_report(&circ(6, &[1]), Q, DEFAULT_NODE_BUDGET).unwrap();
        assert!(!r.well_covered);
        assert_eq!(r.small_facet.unwrap().len(), 2);
        assert_eq!(r.buchsbaum, Some(false));
    }

    #[test]
    fn budget_fallback_is_recorded() {
        let options = ReportOptions {
            node_budget: 1,
            ..ReportOptions::default()
        };
        // Triangle boundary plus a disjoint edge: h = (1, 3, 0), disconnected.
        let c = Complex::from_facets(
            5,
            [[1, 2], [1, 3], [2, 3], [4, 5]]
                .iter()
                .map(|e| VertexSet::from_labels(e.iter().copied()))
                .collect(),
        )
        .unwrap();
        let r = complex_report(&c, Q, &options).unwrap();
        assert_eq!(r.h_vector, vec![1, 3, 0]);
        assert_eq!(r.shelling_evidence, Some(ShellingEvidence::BudgetExhausted));
        assert_eq!(r.shellable, Some(TriState::False));
        assert_eq!(r.shellable_source, Some(ShellableSource::InferredFromCm));
        // Ind(C_7(2,3)) is a 7-cycle, hence Cohen-Macaulay and decomposable.
        let r = graph_report(&circ(7, &[2, 3]), Q, &options).unwrap();
        assert_eq!(r.h_vector, vec![1, 5, 1]);
        assert_eq!(r.shellable, Some(TriState::True));
        assert_eq!(r.shellable_source, Some(ShellableSource::InferredFromVd));
        let r = graph_report(&circ(5, &[1]), Q, &options).unwrap();
        assert_eq!(r.shellable, Some(TriState::True));
        assert_eq!(r.shellable_source, Some(ShellableSource::InferredFromVd));
    }

    #[test]
    fn checks_parse() {
        let c: Checks = "cm,bb".parse().unwrap();
        assert!(c.cm && c.buchsbaum && !c.pdim);
        assert_eq!("all".parse::<Checks>().unwrap(), Checks::ALL);
        assert_eq!("wc".parse::<Checks>().unwrap(), Checks::NONE);
        assert!("cm,xx".parse::<Checks>().is_err());
    }

    #[test]
    fn partial_checks_omit_fields() {
        let options = ReportOptions {
            checks: "cm".parse().unwrap(),
            ..ReportOptions::default()
        };
        let r = graph_report(&circ(20, &[1, 2]), Q, &options).unwrap();
        assert!(r.pdim.is_none() && r.buchsbaum.is_none() && r.betti.is_none());
        assert_eq!(r.cm, Some(false));
        let all = full_report(&circ(20, &[1, 2]), Q, DEFAULT_NODE_BUDGET);
        assert!(all.unwrap_err().is_guard());
    }

    #[test]
    fn json_round_trip() {
        let r = full_report(&circ(9, &[1, 3]), Q, DEFAULT_NODE_BUDGET).unwrap();
        let text = serde_json::to_string(&r).unwrap();
        let back: PropertyReport = serde_json::from_str(&text).unwrap();
        assert_eq!(back, r);
        assert!(text.contains("\"shellable\":"));
    }

    #[test]
    fn inconsistency_is_detected() {
        let mut r = full_report(&circ(5, &[1]), Q, DEFAULT_NODE_BUDGET).unwrap();
        r.buchsbaum = Some(false);
        assert!(matches!(r.check_invariants(), Err(Error::Inconsistency(_))));
    }
}
