use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{AnalysisError, FindingKind};

macro_rules! check_ids {
    ($($id:ident = $n:literal, $slug:literal, $kind:ident, $title:literal;)*) => {
        /// Stable identifier of a competency question.
        #[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
        pub enum CheckId {
            $($id = $n),*
        }

        impl CheckId {
            pub const ALL: [CheckId; 26] = [$(CheckId::$id),*];

            pub fn number(self) -> u8 {
                self as u8
            }

            pub fn as_str(self) -> &'static str {
                match self {
                    $(CheckId::$id => stringify!($id)),*
                }
            }

            /// Long name accepted by `--checks`.
            pub fn slug(self) -> &'static str {
                match self {
                    $(CheckId::$id => $slug),*
                }
            }

            pub fn kind(self) -> FindingKind {
                match self {
                    $(CheckId::$id => FindingKind::$kind),*
                }
            }

            pub fn title(self) -> &'static str {
                match self {
                    $(CheckId::$id => $title),*
                }
            }
        }
    };
}

check_ids! {
    CQ1 = 1, "trustless-delegation", DesignSmell, "permission delegations without trust or monitoring";
    CQ2 = 2, "redundant-monitoring", DesignSmell, "monitoring of already trusted permission delegations";
    CQ3 = 3, "sensitivity", QueryRow, "personal information by sensitivity level";
    CQ4 = 4, "vulnerable-information", QueryRow, "vulnerabilities and the information subject to them";
    CQ5 = 5, "exploiting-threats", QueryRow, "vulnerabilities and the threats exploiting them";
    CQ6 = 6, "unmitigated-vulnerabilities", QueryRow, "vulnerabilities no privacy goal mitigates";
    CQ7 = 7, "threatened-information", QueryRow, "threats and the information they threaten";
    CQ8 = 8, "threat-severity", QueryRow, "threats by impact severity";
    CQ9 = 9, "intentional-threats", QueryRow, "intentional threats and the information they threaten";
    CQ10 = 10, "threat-actors", QueryRow, "actors and the intentional threats they intend";
    CQ11 = 11, "attack-methods", QueryRow, "attack methods and the threats including them";
    CQ12 = 12, "incidental-threats", QueryRow, "incidental threats and the information they threaten";
    CQ13 = 13, "threat-probability", QueryRow, "incidental threats by probability";
    CQ14 = 14, "realized-privacy-goals", QueryRow, "privacy goals realized by privacy constraints";
    CQ15 = 15, "applied-mechanisms", QueryRow, "privacy mechanisms and the information they are applied to";
    CQ16 = 16, "non-disclosure", Disclosure, "personal information read without permission";
    CQ17 = 17, "confidential-provision", Disclosure, "personal information provided non-confidentially";
    CQ18 = 18, "need-to-know", Disclosure, "personal information used without being needed";
    CQ19 = 19, "purpose-of-use", Disclosure, "personal information used for an incompatible purpose";
    CQ20 = 20, "anonymity", Identifiability, "anonymity requirements without an anonymization mechanism";
    CQ21 = 21, "unlinkability", Linkability, "unlinkability requirements without an unlinking mechanism";
    CQ22 = 22, "unobservability", Observability, "owner activities observable through collected information";
    CQ23 = 23, "notice", Unnotified, "personal information collected without permission";
    CQ24 = 24, "authentication", Untransparent, "agents that cannot be authenticated or play threat-actor roles";
    CQ25 = 25, "authorization", Untransparent, "personal information used without a matching permission";
    CQ26 = 26, "non-repudiation", Unaccountable, "delegations the delegatee has not adopted";
}

impl CheckId {
    pub fn from_number(n: u32) -> Option<CheckId> {
        CheckId::ALL.into_iter().find(|c| u32::from(c.number()) == n)
    }

    pub fn is_violation_check(self) -> bool {
        self.kind().is_violation()
    }
}

impl fmt::Display for CheckId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Accepts `CQ16` (any case) or a long name such as `non-disclosure`.
impl FromStr for CheckId {
    type Err = AnalysisError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        let numbered = t
            .get(..2)
            .filter(|p| p.eq_ignore_ascii_case("cq"))
            .and_then(|_| t[2..].parse::<u32>().ok())
            .and_then(CheckId::from_number);
        numbered
            .or_else(|| CheckId::ALL.into_iter().find(|c| c.slug().eq_ignore_ascii_case(t)))
            .ok_or_else(|| AnalysisError::UnknownCheckId(t.to_string()))
    }
}

impl Serialize for CheckId {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(self.as_str())
    }
}

impl<'de> Deserialize<'de> for CheckId {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Named sets of checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckGroup {
    All,
    Organizational,
    Risk,
    Treatment,
    Privacy,
    Violations,
    Queries,
}

impl CheckGroup {
    pub const ALL: [CheckGroup; 7] = [
        CheckGroup::All,
        CheckGroup::Organizational,
        CheckGroup::Risk,
        CheckGroup::Treatment,
        CheckGroup::Privacy,
        CheckGroup::Violations,
        CheckGroup::Queries,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CheckGroup::All => "all",
            CheckGroup::Organizational => "organizational",
            CheckGroup::Risk => "risk",
            CheckGroup::Treatment => "treatment",
            CheckGroup::Privacy => "privacy",
            CheckGroup::Violations => "violations",
            CheckGroup::Queries => "queries",
        }
    }

    pub fn members(self) -> Vec<CheckId> {
        let range = |a: u8, b: u8| CheckId::ALL.into_iter().filter(move |c| (a..=b).contains(&c.number()));
        match self {
            CheckGroup::All => CheckId::ALL.to_vec(),
            CheckGroup::Organizational => range(1, 3).collect(),
            CheckGroup::Risk => range(4, 13).collect(),
            CheckGroup::Treatment => range(14, 15).collect(),
            CheckGroup::Privacy => range(16, 26).collect(),
            CheckGroup::Violations => CheckId::ALL.into_iter().filter(|c| c.is_violation_check()).collect(),
            CheckGroup::Queries => CheckId::ALL.into_iter().filter(|c| !c.is_violation_check()).collect(),
        }
    }
}

/// The set of enabled checks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckSelection(BTreeSet<CheckId>);

impl CheckSelection {
    pub fn all() -> Self {
        Self(CheckId::ALL.into_iter().collect())
    }

    pub fn none() -> Self {
        Self(BTreeSet::new())
    }

    pub fn only(ids: impl IntoIterator<Item = CheckId>) -> Self {
        Self(ids.into_iter().collect())
    }

    /// Comma-separated ids (`CQ4`), ranges (`CQ16-CQ26`), long names
    /// (`non-repudiation`) and group names (`risk`). Any unknown entry
    /// rejects the whole list.
    pub fn parse(spec: &str) -> Result<Self, AnalysisError> {
        let mut set = BTreeSet::new();
        for item in spec.split(',').map(str::trim) {
            if item.is_empty() {
                return Err(AnalysisError::UnknownCheckId(spec.trim().to_string()));
            }
            if let Some(group) = CheckGroup::ALL.into_iter().find(|g| g.name().eq_ignore_ascii_case(item)) {
                set.extend(group.members());
                continue;
            }
            match item.split_once('-') {
                Some((a, b)) if a.trim().len() >= 3 && a.trim()[..2].eq_ignore_ascii_case("cq") => {
                    let a: CheckId = a.parse()?;
                    let b: CheckId = b.parse()?;
                    if a > b {
                        return Err(AnalysisError::UnknownCheckId(item.to_string()));
                    }
                    set.extend(CheckId::ALL.into_iter().filter(|c| (a..=b).contains(c)));
                }
                _ => {
                    set.insert(item.parse()?);
                }
            }
        }
        Ok(Self(set))
    }

    pub fn contains(&self, id: CheckId) -> bool {
        self.0.contains(&id)
    }

    pub fn iter(&self) -> impl Iterator<Item = CheckId> + '_ {
        self.0.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}
