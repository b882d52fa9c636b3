//! Structured verdicts of verifier runs.

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Pass,
    Fail,
    /// A hypothesis of the claim does not hold for this input.
    Inapplicable,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubClaim {
    pub id: String,
    pub statement: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub kind: String,
    pub label: String,
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub claim: String,
    pub ring: String,
    pub module: Option<String>,
    pub verdict: Verdict,
    pub subclaims: Vec<SubClaim>,
    pub witnesses: Vec<Witness>,
    pub trusted_assumptions: Vec<String>,
    pub notes: Vec<String>,
}

impl Certificate {
    pub fn new(claim: &str, ring: String, module: Option<String>) -> Self {
        Certificate {
            claim: claim.to_string(),
            ring,
            module,
            verdict: Verdict::Pass,
            subclaims: Vec::new(),
            witnesses: Vec::new(),
            trusted_assumptions: Vec::new(),
            notes: Vec::new(),
        }
    }

    /// Records a sub-claim; the verdict becomes the conjunction.
    pub fn check(&mut self, id: &str, statement: impl Into<String>, passed: bool, detail: impl Into<String>) -> bool {
        self.subclaims.push(SubClaim { id: id.to_string(), statement: statement.into(), passed, detail: detail.into() });
        if !passed && self.verdict == Verdict::Pass {
            self.verdict = Verdict::Fail;
        }
        passed
    }

    pub fn witness(&mut self, kind: &str, label: impl Into<String>, value: impl Into<String>) {
        self.witnesses.push(Witness { kind: kind.to_string(), label: label.into(), value: value.into() });
    }

    pub fn note(&mut self, text: impl Into<String>) {
        self.notes.push(text.into());
    }

    pub fn trust(&mut self, items: impl IntoIterator<Item = String>) {
        for t in items {
            if !self.trusted_assumptions.contains(&t) {
                self.trusted_assumptions.push(t);
            }
        }
    }

    /// Marks the claim as not applicable, with the reason.
    pub fn inapplicable(mut self, reason: impl Into<String>) -> Self {
        self.verdict = Verdict::Inapplicable;
        self.notes.push(reason.into());
        self
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub fn subclaim(&self, id: &str) -> Option<&SubClaim> {
        self.subclaims.iter().find(|s| s.id == id)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificates serialize")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn verdict_is_conjunction() {
        let mut c = Certificate::new("demo", "QQ[x]".into(), None);
        assert!(c.passed());
        c.check("a", "first", true, "");
        c.check("b", "second", false, "broken");
        c.check("c", "third", true, "");
        assert_eq!(c.verdict, Verdict::Fail);
        let json = c.to_json();
        for key in ["\"claim\"", "\"subclaims\"", "\"witnesses\"", "\"trusted_assumptions\""] {
            assert!(json.contains(key));
        }
    }
}
