//! Structured pass/fail reports and their canonical JSON form.

use std::collections::BTreeMap;

use serde::ser::{SerializeSeq, Serializer};
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::linalg::{format_scalar, Mat, Scalar};
use crate::parity::Parity;

/// Witnesses kept per failing claim; further failures are only counted.
pub const MAX_WITNESSES_PER_CLAIM: usize = 8;

/// Rationals as `"p"` or `"p/q"` strings.
pub fn ser_scalars<S: Serializer>(v: &[Scalar], s: S) -> Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for x in v {
        seq.serialize_element(&format_scalar(x))?;
    }
    seq.end()
}

pub fn mat_strings(m: &Mat) -> Vec<Vec<String>> {
    (0..m.rows()).map(|r| m.row(r).iter().map(format_scalar).collect()).collect()
}

/// Pretty JSON with sorted keys and a trailing newline.
pub fn to_canonical_json<T: Serialize>(value: &T) -> String {
    // serde_json's Map is ordered by key unless `preserve_order` is enabled.
    let v = serde_json::to_value(value).expect("report types serialize");
    let mut s = serde_json::to_string_pretty(&v).expect("values serialize");
    s.push('\n');
    s
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped { reason: String },
}

/// A counterexample: what was checked, and the maps involved.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub note: String,
    pub matrices: Vec<Vec<Vec<String>>>,
}

impl Witness {
    pub fn new(note: impl Into<String>, maps: &[&Mat]) -> Self {
        Witness {
            note: note.into(),
            matrices: maps.iter().map(|m| mat_strings(m)).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Claim {
    pub id: String,
    #[serde(flatten)]
    pub status: Status,
    /// Number of instances checked.
    pub checked: usize,
    pub failures: usize,
    pub witnesses: Vec<Witness>,
}

impl Claim {
    pub fn skipped(id: impl Into<String>, reason: impl Into<String>) -> Self {
        Claim {
            id: id.into(),
            status: Status::Skipped { reason: reason.into() },
            checked: 0,
            failures: 0,
            witnesses: Vec::new(),
        }
    }

    pub fn is_pass(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn is_fail(&self) -> bool {
        self.status == Status::Fail
    }

    pub fn is_skipped(&self) -> bool {
        matches!(self.status, Status::Skipped { .. })
    }
}

/// Accumulates instance checks for one claim.
#[derive(Debug)]
pub struct ClaimBuilder {
    id: String,
    checked: usize,
    failures: usize,
    witnesses: Vec<Witness>,
}

impl ClaimBuilder {
    pub fn new(id: impl Into<String>) -> Self {
        ClaimBuilder {
            id: id.into(),
            checked: 0,
            failures: 0,
            witnesses: Vec::new(),
        }
    }

    /// Records one instance; `witness` is only built when `ok` is false.
    pub fn check(&mut self, ok: bool, witness: impl FnOnce() -> Witness) -> bool {
        self.checked += 1;
        if !ok {
            self.failures += 1;
            if self.witnesses.len() < MAX_WITNESSES_PER_CLAIM {
                self.witnesses.push(witness());
            }
        }
        ok
    }

    pub fn finish(self) -> Claim {
        Claim {
            status: if self.failures == 0 { Status::Pass } else { Status::Fail },
            id: self.id,
            checked: self.checked,
            failures: self.failures,
            witnesses: self.witnesses,
        }
    }
}

/// Dimension of one solved space.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct DimEntry {
    pub space: String,
    pub k: usize,
    pub xi: Parity,
    pub dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PropReport {
    pub id: String,
    pub claims: Vec<Claim>,
    pub dims: Vec<DimEntry>,
    /// Truth values of predicates that are reported rather than asserted.
    pub observations: BTreeMap<String, bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

impl PropReport {
    pub fn new(id: impl Into<String>) -> Self {
        PropReport {
            id: id.into(),
            claims: Vec::new(),
            dims: Vec::new(),
            observations: BTreeMap::new(),
            seed: None,
        }
    }

    pub fn push(&mut self, claim: Claim) {
        self.claims.push(claim);
        self.claims.sort_by(|a, b| a.id.cmp(&b.id));
    }

    pub fn claim(&self, id: &str) -> Option<&Claim> {
        self.claims.iter().find(|c| c.id == id)
    }

    /// No claim failed (skipped claims are allowed).
    pub fn passed(&self) -> bool {
        !self.claims.iter().any(Claim::is_fail)
    }

    pub fn failing(&self) -> impl Iterator<Item = &Claim> {
        self.claims.iter().filter(|c| c.is_fail())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn claims_stay_sorted_and_capped() {
        let mut r = PropReport::new("demo");
        let mut b = ClaimBuilder::new("z");
        for i in 0..20 {
            b.check(i % 2 == 0, || Witness::new("odd", &[]));
        }
        let z = b.finish();
        assert_eq!((z.checked, z.failures, z.witnesses.len()), (20, 10, MAX_WITNESSES_PER_CLAIM));
        r.push(z);
        r.push(Claim::skipped("a", "hypothesis fails"));
        assert_eq!(r.claims[0].id, "a");
        assert!(!r.passed());
    }

    #[test]
    fn canonical_json_sorts_keys() {
        let mut r = PropReport::new("demo");
        r.observations.insert("b".into(), true);
        r.observations.insert("a".into(), false);
        r.push(ClaimBuilder::new("c").finish());
        let s = to_canonical_json(&r);
        assert!(s.ends_with('\n'));
        assert!(s.find("\"claims\"").unwrap() < s.find("\"dims\"").unwrap());
        assert!(s.find("\"a\"").unwrap() < s.find("\"b\"").unwrap());
        assert!(s.contains("\"status\": \"pass\""));
        assert_eq!(s, to_canonical_json(&r));
    }

    #[test]
    fn digest_is_hex_sha256() {
        assert_eq!(
            sha256_hex(b"abc"),
            "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad"
        );
    }
}
