//! Machine-readable run reports: a single versioned document with `config`,
//! `checks`, `branches` and `verdict` sections, serialized as JSON with a
//! stable field order so byte-identical reruns can be pinned by golden files.

use crate::ansatz::{SolutionBranch, SolveOutcome};
use crate::hopf::CheckReport;
use crate::scalar::{Scalar, Symbol};
use crate::text::{parse_scalar, ParseError};
use serde::Serialize;
use std::collections::BTreeMap;

pub const FORMAT_VERSION: u32 = 1;

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub format_version: u32,
    pub config: Config,
    /// The generated ansatz system with provenance tags (solve runs only).
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub system: Vec<SystemEntry>,
    pub checks: Vec<CheckEntry>,
    pub branches: Vec<BranchEntry>,
    pub verdict: Verdict,
}

/// One generated equation: which axiom produced it, on which input, in which
/// tensor component, and the polynomial that must vanish.
#[derive(Clone, Debug, Serialize)]
pub struct SystemEntry {
    pub axiom: String,
    pub input: String,
    pub component: String,
    pub equation: String,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Config {
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub structure: Option<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub axioms: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_word_len: Option<usize>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub specialize: BTreeMap<String, String>,
    pub seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub budget: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub include_star: Option<bool>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckEntry {
    pub axiom: String,
    pub structure: String,
    pub word_length_bound: usize,
    pub inputs_checked: usize,
    pub status: String,
    pub witnesses: Vec<[String; 2]>,
}

impl From<&CheckReport> for CheckEntry {
    fn from(r: &CheckReport) -> CheckEntry {
        CheckEntry {
            axiom: r.axiom.clone(),
            structure: r.structure.clone(),
            word_length_bound: r.word_length_bound,
            inputs_checked: r.inputs_checked,
            status: if r.holds() { "holds" } else { "fails" }.into(),
            witnesses: r
                .witnesses
                .iter()
                .map(|(i, w)| [i.clone(), w.clone()])
                .collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct BranchEntry {
    pub status: String,
    /// Unknowns eliminated to zero are listed explicitly, so a branch is the
    /// full record of its assignment.
    pub assignment: BTreeMap<String, String>,
    /// Symbols assumed nonzero while dividing, in elimination order.
    pub assumptions: Vec<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub residual: Vec<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub matches: Vec<String>,
}

impl BranchEntry {
    pub fn new(b: &SolutionBranch, matches: Vec<String>) -> BranchEntry {
        BranchEntry {
            status: if b.stuck { "stuck" } else { "solved" }.into(),
            assignment: b
                .assignment
                .iter()
                .map(|(s, v)| (s.name.clone(), v.to_string()))
                .collect(),
            assumptions: b.assumptions.iter().map(|s| s.name.clone()).collect(),
            residual: b.residual.iter().map(|e| e.to_string()).collect(),
            matches,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Verdict {
    pub status: String,
    pub detail: Vec<String>,
}

impl Report {
    pub fn new(config: Config) -> Report {
        Report {
            format_version: FORMAT_VERSION,
            config,
            system: Vec::new(),
            checks: Vec::new(),
            branches: Vec::new(),
            verdict: Verdict {
                status: "pass".into(),
                detail: Vec::new(),
            },
        }
    }

    pub fn push_check(&mut self, r: &CheckReport) {
        let entry = CheckEntry::from(r);
        if entry.status == "fails" {
            self.verdict.status = "fail".into();
            self.verdict
                .detail
                .push(format!("{} on {} fails", entry.axiom, entry.structure));
        }
        self.checks.push(entry);
    }

    pub fn push_outcome(&mut self, out: &SolveOutcome, matcher: impl Fn(&SolutionBranch) -> Vec<String>) {
        for b in &out.solved {
            self.branches.push(BranchEntry::new(b, matcher(b)));
        }
        for b in &out.stuck {
            self.branches.push(BranchEntry::new(b, Vec::new()));
        }
        self.verdict.detail.push(format!(
            "branch exploration: {} bifurcations, {} subproblems, {} degenerate prunes, {} unexplored",
            out.steps_used, out.pops, out.pruned_degenerate, out.unexplored
        ));
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    /// Human-readable one-line-per-item summary.
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            out.push_str(&format!(
                "{:5} {} on {} (L <= {}, {} inputs)\n",
                c.status, c.axiom, c.structure, c.word_length_bound, c.inputs_checked
            ));
            for [input, witness] in &c.witnesses {
                out.push_str(&format!("      witness [{input}]: {witness}\n"));
            }
        }
        for (i, b) in self.branches.iter().enumerate() {
            let nonzero: Vec<String> = b
                .assignment
                .iter()
                .filter(|(_, v)| v.as_str() != "0")
                .map(|(k, v)| format!("{k}={v}"))
                .collect();
            let tag = if b.matches.is_empty() {
                String::new()
            } else {
                format!(" [{}]", b.matches.join(", "))
            };
            out.push_str(&format!(
                "branch {i}: {}{tag} nonzero: {}\n",
                b.status,
                nonzero.join(", ")
            ));
        }
        out.push_str(&format!("verdict: {}\n", self.verdict.status));
        for d in &self.verdict.detail {
            out.push_str(&format!("  {d}\n"));
        }
        out
    }
}

/// Parse `name=value` bindings (`r=q`, `q=3`) for substitution flags.
pub fn parse_bindings(items: &[String]) -> Result<BTreeMap<Symbol, Scalar>, ParseError> {
    let mut out = BTreeMap::new();
    for item in items {
        let (name, value) = item
            .split_once('=')
            .ok_or_else(|| ParseError::Expected("name=value binding", item.clone()))?;
        out.insert(Symbol::named(name.trim()), parse_scalar(value.trim())?);
    }
    Ok(out)
}

pub fn bindings_config(b: &BTreeMap<Symbol, Scalar>) -> BTreeMap<String, String> {
    b.iter().map(|(s, v)| (s.name.clone(), v.to_string())).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bindings_parse() {
        let b = parse_bindings(&["r=q".into(), "q=3".into()]).unwrap();
        assert_eq!(b.len(), 2);
        assert_eq!(b[&Symbol::q()], Scalar::from_int(3));
        assert_eq!(b[&Symbol::r()], Scalar::var(Symbol::q()));
        assert!(parse_bindings(&["nonsense".into()]).is_err());
    }

    #[test]
    fn report_serialization_is_stable() {
        let mut rep = Report::new(Config {
            command: "check".into(),
            structure: Some("ar_hopf".into()),
            seed: 0,
            ..Config::default()
        });
        let json1 = rep.to_json();
        assert_eq!(json1, rep.to_json());
        assert!(json1.starts_with("{\n  \"format_version\": 1"));
        rep.push_check(&CheckReport {
            axiom: "counit".into(),
            structure: "ar_hopf".into(),
            word_length_bound: 2,
            inputs_checked: 14,
            witnesses: vec![],
        });
        assert_eq!(rep.verdict.status, "pass");
        rep.push_check(&CheckReport {
            axiom: "antipode-left".into(),
            structure: "ar_hopf".into(),
            word_length_bound: 2,
            inputs_checked: 14,
            witnesses: vec![("a".into(), "residual 1".into())],
        });
        assert_eq!(rep.verdict.status, "fail");
        assert!(rep.render_text().contains("witness [a]: residual 1"));
    }
}
