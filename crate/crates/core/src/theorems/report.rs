use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::groups::FiniteGroup;
use crate::words::{evaluate, parse};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    /// The hypothesis of the statement does not hold for this group.
    Vacuous,
    /// Not decided; see `reason`.
    Skipped,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Params {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub c: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub d: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub p: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub n: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Assigned {
    pub var: u32,
    pub index: usize,
    pub element: String,
}

/// Data that lets a failure be re-checked: when `word` is present it
/// evaluates to a nonidentity element at `assignment`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub word: Option<String>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub assignment: Vec<Assigned>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub elements: Vec<String>,
    pub note: String,
}

impl Witness {
    pub fn from_assignment(g: &FiniteGroup, word: &str, assignment: &[(u32, usize)], note: impl Into<String>) -> Self {
        Witness {
            word: Some(word.to_string()),
            assignment: assignment
                .iter()
                .map(|&(var, index)| Assigned { var, index, element: g.element(index).to_string() })
                .collect(),
            elements: Vec::new(),
            note: note.into(),
        }
    }

    pub fn note(note: impl Into<String>) -> Self {
        Witness { note: note.into(), ..Witness::default() }
    }

    /// Re-evaluates the word at the assignment: `Some(true)` when it is a
    /// nonidentity element (the violation reproduces), `None` when there is
    /// no word to evaluate or it does not parse.
    pub fn reproduces(&self, g: &FiniteGroup) -> Option<bool> {
        let expr = parse(self.word.as_deref()?).ok()?;
        let a: HashMap<u32, usize> = self.assignment.iter().map(|a| (a.var, a.index)).collect();
        evaluate(&expr, &a, g).ok().map(|v| v != g.identity())
    }
}

/// Outcome of one check on one group. Serialized as one JSON object per line
/// with fields in declaration order.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub check: String,
    pub group: String,
    pub params: Params,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub reason: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<Witness>,
    /// Tuples or pairs examined by the sweeps behind the verdict.
    pub work: u64,
    pub sampled: bool,
    pub details: BTreeMap<String, Value>,
    /// Only filled when timings are requested; keeps report files reproducible.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub wall_ms: Option<u64>,
}

impl VerificationReport {
    pub fn new(check: &str, group: &str, params: Params) -> Self {
        VerificationReport {
            check: check.into(),
            group: group.into(),
            params,
            verdict: Verdict::Pass,
            reason: None,
            witness: None,
            work: 0,
            sampled: false,
            details: BTreeMap::new(),
            wall_ms: None,
        }
    }

    pub fn detail(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.details.insert(key.into(), value.into());
        self
    }

    pub fn set(&mut self, verdict: Verdict, reason: impl Into<String>) -> &mut Self {
        self.verdict = verdict;
        self.reason = Some(reason.into());
        self
    }

    pub fn fail(&mut self, witness: Witness) -> &mut Self {
        self.verdict = Verdict::Fail;
        self.witness = Some(witness);
        self
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub vacuous: usize,
    pub skipped: usize,
}

impl Summary {
    pub fn of(reports: &[VerificationReport]) -> Summary {
        let mut s = Summary::default();
        for r in reports {
            match r.verdict {
                Verdict::Pass => s.pass += 1,
                Verdict::Fail => s.fail += 1,
                Verdict::Vacuous => s.vacuous += 1,
                Verdict::Skipped => s.skipped += 1,
            }
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{make, Construction};

    #[test]
    fn json_field_order_is_fixed() {
        let mut r = VerificationReport::new("demo", "sym3", Params { d: Some(2), ..Params::default() });
        r.detail("b", 2).detail("a", 1);
        assert_eq!(
            r.to_json_line(),
            r#"{"check":"demo","group":"sym3","params":{"d":2},"verdict":"pass","work":0,"sampled":false,"details":{"a":1,"b":2}}"#
        );
        let back: VerificationReport = serde_json::from_str(&r.to_json_line()).unwrap();
        assert_eq!(back, r);
    }

    #[test]
    fn witnesses_reproduce() {
        let s3 = make(&Construction::Symmetric(3)).unwrap();
        let w = Witness::from_assignment(&s3, "(c x1 x2)", &[(1, 1), (2, 2)], "noncommuting");
        assert_eq!(w.reproduces(&s3), Some(true));
        let w = Witness::from_assignment(&s3, "(c x1 x2)", &[(1, 1), (2, 1)], "commuting");
        assert_eq!(w.reproduces(&s3), Some(false));
        assert_eq!(Witness::note("x").reproduces(&s3), None);
    }
}
