//! JSON wire formats. Instances serialize directly (see [`Instance`]);
//! schemes, MSI instances, and anonymous utilities use the name-based
//! representations below and are validated while being resolved against an
//! instance.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::model::{
    AnonymousUtility, Instance, JointScheme, MarginalScheme, Profile, PublicScheme,
};
use crate::public::MsiInstance;
use crate::{Error, Result};

/// One `(state, profile, prob)` row of a joint or public scheme.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ProfileEntry {
    pub state: String,
    pub profile: Vec<String>,
    pub prob: f64,
}

/// One `(receiver, state, candidate, prob)` cell of a marginal scheme.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MarginalEntry {
    pub receiver: String,
    pub state: String,
    pub candidate: String,
    pub prob: f64,
}

/// Scheme file, tagged by kind; `value` optionally records the solver's
/// claimed sender value for later verification.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum SchemeFile {
    Joint {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        value: Option<f64>,
        entries: Vec<ProfileEntry>,
    },
    Public {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        value: Option<f64>,
        entries: Vec<ProfileEntry>,
    },
    Marginal {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        value: Option<f64>,
        entries: Vec<MarginalEntry>,
    },
}

impl SchemeFile {
    pub fn claimed_value(&self) -> Option<f64> {
        match self {
            SchemeFile::Joint { value, .. }
            | SchemeFile::Public { value, .. }
            | SchemeFile::Marginal { value, .. } => *value,
        }
    }
}

fn state_index(inst: &Instance, name: &str) -> Result<usize> {
    inst.states
        .iter()
        .position(|s| s == name)
        .ok_or_else(|| Error::Format(format!("unknown state {name:?}")))
}

fn candidate_index(inst: &Instance, name: &str) -> Result<usize> {
    inst.candidates
        .iter()
        .position(|c| c == name)
        .ok_or_else(|| Error::Format(format!("unknown candidate {name:?}")))
}

fn receiver_index(inst: &Instance, name: &str) -> Result<usize> {
    inst.receivers
        .iter()
        .position(|r| r.name == name)
        .ok_or_else(|| Error::Format(format!("unknown receiver {name:?}")))
}

fn profile_rows(inst: &Instance, entries: &[ProfileEntry]) -> Result<Vec<BTreeMap<Profile, f64>>> {
    let mut rows: Vec<BTreeMap<Profile, f64>> = vec![BTreeMap::new(); inst.num_states()];
    for entry in entries {
        let theta = state_index(inst, &entry.state)?;
        if entry.profile.len() != inst.num_receivers() {
            return Err(Error::Format(format!(
                "profile in state {:?} has {} entries, expected {}",
                entry.state,
                entry.profile.len(),
                inst.num_receivers()
            )));
        }
        let profile: Profile = entry
            .profile
            .iter()
            .map(|c| candidate_index(inst, c))
            .collect::<Result<_>>()?;
        *rows[theta].entry(profile).or_insert(0.0) += entry.prob;
    }
    Ok(rows)
}

fn rows_to_entries(inst: &Instance, rows: &[BTreeMap<Profile, f64>]) -> Vec<ProfileEntry> {
    let mut entries = Vec::new();
    for (theta, row) in rows.iter().enumerate() {
        for (profile, &prob) in row {
            entries.push(ProfileEntry {
                state: inst.states[theta].clone(),
                profile: profile
                    .iter()
                    .map(|&c| inst.candidates[c].clone())
                    .collect(),
                prob,
            });
        }
    }
    entries
}

pub fn joint_to_wire(inst: &Instance, scheme: &JointScheme, value: Option<f64>) -> SchemeFile {
    SchemeFile::Joint {
        value,
        entries: rows_to_entries(inst, &scheme.rows),
    }
}

pub fn public_to_wire(inst: &Instance, scheme: &PublicScheme, value: Option<f64>) -> SchemeFile {
    SchemeFile::Public {
        value,
        entries: rows_to_entries(inst, &scheme.rows),
    }
}

pub fn marginal_to_wire(
    inst: &Instance,
    scheme: &MarginalScheme,
    value: Option<f64>,
) -> SchemeFile {
    let mut entries = Vec::new();
    for (r, per_state) in scheme.probs.iter().enumerate() {
        for (theta, row) in per_state.iter().enumerate() {
            for (c, &prob) in row.iter().enumerate() {
                if prob != 0.0 {
                    entries.push(MarginalEntry {
                        receiver: inst.receivers[r].name.clone(),
                        state: inst.states[theta].clone(),
                        candidate: inst.candidates[c].clone(),
                        prob,
                    });
                }
            }
        }
    }
    SchemeFile::Marginal { value, entries }
}

/// Resolves a scheme file against an instance, validating probabilities.
pub enum ResolvedScheme {
    Joint(JointScheme),
    Public(PublicScheme),
    Marginal(MarginalScheme),
}

pub fn resolve_scheme(inst: &Instance, file: &SchemeFile) -> Result<ResolvedScheme> {
    match file {
        SchemeFile::Joint { entries, .. } => {
            let rows = profile_rows(inst, entries)?;
            Ok(ResolvedScheme::Joint(JointScheme::new(
                inst.num_receivers(),
                inst.num_candidates(),
                rows,
            )?))
        }
        SchemeFile::Public { entries, .. } => {
            let rows = profile_rows(inst, entries)?;
            Ok(ResolvedScheme::Public(PublicScheme::new(
                inst.num_receivers(),
                inst.num_candidates(),
                rows,
            )?))
        }
        SchemeFile::Marginal { entries, .. } => {
            let mut probs = vec![
                vec![vec![0.0; inst.num_candidates()]; inst.num_states()];
                inst.num_receivers()
            ];
            for e in entries {
                let r = receiver_index(inst, &e.receiver)?;
                let theta = state_index(inst, &e.state)?;
                let c = candidate_index(inst, &e.candidate)?;
                probs[r][theta][c] += e.prob;
            }
            Ok(ResolvedScheme::Marginal(MarginalScheme::new(probs)?))
        }
    }
}

/// MSI instance wire format: subsets listed by element name.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MsiFile {
    pub elements: Vec<String>,
    pub subsets: Vec<Vec<String>>,
    pub k: usize,
    pub q: usize,
}

pub fn msi_to_wire(msi: &MsiInstance) -> MsiFile {
    MsiFile {
        elements: msi.elements.clone(),
        subsets: msi
            .subsets
            .iter()
            .map(|s| s.iter().map(|&e| msi.elements[e].clone()).collect())
            .collect(),
        k: msi.k,
        q: msi.q,
    }
}

pub fn resolve_msi(file: &MsiFile) -> Result<MsiInstance> {
    let index = |name: &String| {
        file.elements
            .iter()
            .position(|e| e == name)
            .ok_or_else(|| Error::Format(format!("unknown element {name:?}")))
    };
    let subsets = file
        .subsets
        .iter()
        .map(|s| s.iter().map(index).collect::<Result<BTreeSet<usize>>>())
        .collect::<Result<Vec<_>>>()?;
    let msi = MsiInstance {
        elements: file.elements.clone(),
        subsets,
        k: file.k,
        q: file.q,
    };
    msi.validate()?;
    Ok(msi)
}

/// Anonymous sender utility wire format: per state (in instance order), a
/// list of `{counts, value}` records that must cover every count vector.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CountValue {
    pub counts: Vec<usize>,
    pub value: f64,
}

pub type AnonymousUtilityFile = Vec<Vec<CountValue>>;

pub fn anonymous_to_wire(anon: &AnonymousUtility) -> AnonymousUtilityFile {
    anon.per_state
        .iter()
        .map(|m| {
            m.iter()
                .map(|(counts, &value)| CountValue {
                    counts: counts.clone(),
                    value,
                })
                .collect()
        })
        .collect()
}

pub fn resolve_anonymous(
    file: &AnonymousUtilityFile,
    num_receivers: usize,
    num_candidates: usize,
) -> Result<AnonymousUtility> {
    let per_state = file
        .iter()
        .map(|entries| {
            let mut map = BTreeMap::new();
            for e in entries {
                if map.insert(e.counts.clone(), e.value).is_some() {
                    return Err(Error::Format(format!(
                        "duplicate count vector {:?}",
                        e.counts
                    )));
                }
            }
            Ok(map)
        })
        .collect::<Result<Vec<_>>>()?;
    let anon = AnonymousUtility { per_state };
    anon.validate(num_receivers, num_candidates)?;
    Ok(anon)
}

/// Parses and validates an instance from JSON.
pub fn instance_from_json(text: &str) -> Result<Instance> {
    let inst: Instance = serde_json::from_str(text)?;
    inst.checked()
}

pub fn instance_to_json(inst: &Instance) -> Result<String> {
    Ok(serde_json::to_string_pretty(inst)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::model::{marginals_of, VotingRule};

    #[test]
    fn instance_json_roundtrip() {
        let inst = fixtures::example1();
        let text = instance_to_json(&inst).unwrap();
        let back = instance_from_json(&text).unwrap();
        assert_eq!(back.states, inst.states);
        assert_eq!(back.rule, VotingRule::KVoting { k: 2 });
        assert_eq!(back.receivers[2].utility, inst.receivers[2].utility);
    }

    #[test]
    fn instance_json_matches_documented_shape() {
        let text = r#"{
            "states": ["A", "B"],
            "prior": [0.5, 0.5],
            "candidates": ["c0", "c1"],
            "receivers": [{"name": "v1", "utility": [[1.0, 0.0], [-1.0, 0.0]]}],
            "rule": {"type": "k-voting", "k": 1}
        }"#;
        let inst = instance_from_json(text).unwrap();
        assert_eq!(inst.num_receivers(), 1);
        assert_eq!(inst.rule, VotingRule::KVoting { k: 1 });
    }

    #[test]
    fn scheme_roundtrip_and_row_sum_check() {
        let inst = fixtures::example1();
        let scheme = JointScheme::deterministic(3, 2, vec![vec![0, 1, 0]; 3]).unwrap();
        let wire = joint_to_wire(&inst, &scheme, Some(1.0));
        let text = serde_json::to_string_pretty(&wire).unwrap();
        let parsed: SchemeFile = serde_json::from_str(&text).unwrap();
        assert_eq!(parsed.claimed_value(), Some(1.0));
        match resolve_scheme(&inst, &parsed).unwrap() {
            ResolvedScheme::Joint(s) => assert_eq!(s, scheme),
            _ => panic!("wrong scheme kind"),
        }

        // A row summing to 0.9 is rejected.
        let bad = SchemeFile::Joint {
            value: None,
            entries: vec![
                ProfileEntry {
                    state: "A".into(),
                    profile: vec!["c0".into(), "c1".into(), "c0".into()],
                    prob: 0.9,
                },
                ProfileEntry {
                    state: "B".into(),
                    profile: vec!["c0".into(), "c0".into(), "c0".into()],
                    prob: 1.0,
                },
                ProfileEntry {
                    state: "C".into(),
                    profile: vec!["c0".into(), "c0".into(), "c0".into()],
                    prob: 1.0,
                },
            ],
        };
        assert!(matches!(
            resolve_scheme(&inst, &bad),
            Err(Error::InvalidScheme(_))
        ));
    }

    #[test]
    fn marginal_wire_roundtrip() {
        let inst = fixtures::example1();
        let scheme = JointScheme::deterministic(3, 2, vec![vec![0, 1, 1]; 3]).unwrap();
        let m = marginals_of(&scheme);
        let wire = marginal_to_wire(&inst, &m, None);
        match resolve_scheme(&inst, &wire).unwrap() {
            ResolvedScheme::Marginal(back) => assert_eq!(back, m),
            _ => panic!("wrong scheme kind"),
        }
    }

    #[test]
    fn msi_wire_roundtrip() {
        let msi = crate::gen::gen_msi(&crate::gen::MsiGenConfig {
            elements: 3,
            subsets: 2,
            k: 1,
            q: 2,
            seed: 3,
        });
        let wire = msi_to_wire(&msi);
        let text = serde_json::to_string(&wire).unwrap();
        let parsed: MsiFile = serde_json::from_str(&text).unwrap();
        assert_eq!(resolve_msi(&parsed).unwrap(), msi);
    }
}
