//! Named identities and axiom sets.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::models::SemiringName;
use crate::term::Identity;

use super::parse_flat_identity;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Axiom {
    pub id: String,
    pub identity: Identity,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.id, self.identity)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AxiomError {
    #[error("unknown axiom or axiom set {0:?}")]
    Unknown(String),
    #[error("axiom id {0:?} defined twice with different identities")]
    Conflict(String),
}

/// The identities satisfied by every two-element semiring, as written.
pub const SR2_IDENTITIES: [(&str, &str); 10] = [
    ("eq1", "x^2y ~ xy"),
    ("eq2", "xy^2 ~ xy"),
    ("eq3", "xyzt ~ xzyt"),
    ("eq4", "(xy)^2 ~ xy"),
    ("eq5", "x + yz ~ x + yz + 2xz"),
    ("eq6", "x + yz ~ x + yz + 2yx"),
    ("eq7", "x + yz ~ x + yz + 2x^2"),
    ("eq8", "x + yz ~ x + yz + 2xyz"),
    ("eq9", "x + yz ~ x + yz + 2yzx"),
    ("eq10", "x + y ~ x + 3y"),
];

/// Doubling commutes with both operations. The additive one is trivial once
/// sums are flattened; it is kept so the registry mirrors the written list.
pub const DOUBLING_IDENTITIES: [(&str, &str); 2] = [("eq12", "(2x) + (2y) ~ 2(x + y)"), ("eq13", "(2x)(2y) ~ 2xy")];

/// Extra axioms cutting out the additively idempotent part.
pub const AI_IDENTITIES: [(&str, &str); 2] = [("ai1", "2x ~ x"), ("ai2", "x + yz ~ x + yz + xz + yx")];

pub const REDUCED: [&str; 5] = ["eq3", "eq4", "eq5", "eq6", "eq10"];

/// Equational basis of each two-element semiring.
pub fn basis_text(s: SemiringName) -> &'static [&'static str] {
    use SemiringName::*;
    match s {
        L2 => &["x + x ~ x", "xy ~ x"],
        R2 => &["x + x ~ x", "xy ~ y"],
        M2 => &["x + x ~ x", "x + y ~ xy"],
        D2 => &["x + x ~ x", "x^2 ~ x", "xy ~ yx", "x + xy ~ x"],
        N2 => &["x + x ~ x", "xy ~ zt", "z + xy ~ z"],
        T2 => &["x + x ~ x", "xy ~ zt", "z + xy ~ xy"],
        Z2 => &["x + y ~ z + u", "xy ~ x + y"],
        W2 => &["x + y ~ z + u", "x^2 ~ x", "xy ~ yx"],
        Z7 => &["x + x + y ~ y", "xy ~ x + x"],
        Z8 => &["x + x + y ~ y", "x^2 ~ x", "xy ~ yx"],
    }
}

/// Basis of `s` with ids like `L2.b1`.
pub fn basis(s: SemiringName) -> Vec<(String, Identity)> {
    basis_text(s)
        .iter()
        .enumerate()
        .map(|(i, text)| (format!("{s}.b{}", i + 1), parse(text)))
        .collect()
}

fn parse(text: &str) -> Identity {
    parse_flat_identity(text).expect("registry identity parses")
}

/// Every named identity.
pub fn registry() -> Vec<Axiom> {
    let mut out: Vec<Axiom> = SR2_IDENTITIES
        .iter()
        .chain(DOUBLING_IDENTITIES.iter())
        .chain(AI_IDENTITIES.iter())
        .map(|(id, text)| Axiom { id: id.to_string(), identity: parse(text) })
        .collect();
    for s in SemiringName::ALL {
        out.extend(basis(s).into_iter().map(|(id, identity)| Axiom { id, identity }));
    }
    out
}

pub fn lookup(id: &str) -> Option<Axiom> {
    registry().into_iter().find(|a| a.id == id)
}

/// An ordered set of axioms addressed by id.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct AxiomSet {
    name: String,
    axioms: BTreeMap<String, Identity>,
}

impl AxiomSet {
    /// Resolves a set name: `sr2`, `reduced`, `ai`, `doubling`, `all`, a
    /// semiring name for its basis, a single axiom id, or a comma-separated
    /// list of any of these.
    pub fn named(name: &str) -> Result<AxiomSet, AxiomError> {
        let mut set = AxiomSet { name: name.trim().to_string(), axioms: BTreeMap::new() };
        for part in name.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            for axiom in resolve(part)? {
                set.insert(axiom)?;
            }
        }
        if set.axioms.is_empty() {
            return Err(AxiomError::Unknown(name.to_string()));
        }
        Ok(set)
    }

    pub fn from_axioms(name: &str, axioms: impl IntoIterator<Item = Axiom>) -> Result<AxiomSet, AxiomError> {
        let mut set = AxiomSet { name: name.to_string(), axioms: BTreeMap::new() };
        for a in axioms {
            set.insert(a)?;
        }
        Ok(set)
    }

    pub fn insert(&mut self, a: Axiom) -> Result<(), AxiomError> {
        match self.axioms.get(&a.id) {
            Some(existing) if *existing != a.identity => Err(AxiomError::Conflict(a.id)),
            _ => {
                self.axioms.insert(a.id, a.identity);
                Ok(())
            }
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn get(&self, id: &str) -> Option<&Identity> {
        self.axioms.get(id)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &Identity)> {
        self.axioms.iter().map(|(k, v)| (k.as_str(), v))
    }

    pub fn identities(&self) -> impl Iterator<Item = &Identity> {
        self.axioms.values()
    }

    pub fn len(&self) -> usize {
        self.axioms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.axioms.is_empty()
    }

    /// The two-element semirings satisfying every axiom.
    pub fn models(&self) -> Vec<SemiringName> {
        SemiringName::ALL
            .into_iter()
            .filter(|s| self.identities().all(|id| crate::models::satisfies(s.table(), id).unwrap_or(false)))
            .collect()
    }
}

fn ids(list: &[(&'static str, &'static str)]) -> Vec<&'static str> {
    list.iter().map(|(id, _)| *id).collect()
}

fn resolve(part: &str) -> Result<Vec<Axiom>, AxiomError> {
    let by_ids = |ids: &[&str]| ids.iter().map(|id| lookup(id).expect("registered")).collect::<Vec<_>>();
    Ok(match part.to_ascii_lowercase().as_str() {
        "sr2" => by_ids(&ids(&SR2_IDENTITIES)),
        "reduced" => by_ids(&REDUCED),
        "doubling" => by_ids(&ids(&DOUBLING_IDENTITIES)),
        "ai" => by_ids(&["eq3", "eq4", "ai1", "ai2"]),
        "all" => registry(),
        _ => {
            if let Ok(s) = part.parse::<SemiringName>() {
                basis(s).into_iter().map(|(id, identity)| Axiom { id, identity }).collect()
            } else {
                vec![lookup(part).ok_or_else(|| AxiomError::Unknown(part.to_string()))?]
            }
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models;

    #[test]
    fn registry_contents() {
        assert_eq!(lookup("eq4").unwrap().identity.to_string(), "xyxy ~ xy");
        assert_eq!(lookup("eq13").unwrap().identity.to_string(), "4xy ~ 2xy");
        assert!(lookup("eq12").unwrap().identity.is_trivial());
        assert_eq!(lookup("L2.b2").unwrap().identity.to_string(), "xy ~ x");
        assert!(lookup("eq11").is_none());
    }

    #[test]
    fn named_sets() {
        assert_eq!(AxiomSet::named("sr2").unwrap().len(), 10);
        assert_eq!(AxiomSet::named("reduced").unwrap().len(), 5);
        assert_eq!(AxiomSet::named("D2").unwrap().len(), 4);
        assert_eq!(AxiomSet::named("eq3, eq4").unwrap().len(), 2);
        assert_eq!(AxiomSet::named("reduced,eq1").unwrap().len(), 6);
        assert!(AxiomSet::named("nope").is_err());
        assert!(AxiomSet::named("").is_err());
    }

    #[test]
    fn every_semiring_satisfies_the_common_identities() {
        for a in AxiomSet::named("sr2,doubling").unwrap().identities() {
            for s in models::all_semirings() {
                assert!(models::satisfies(s, a).unwrap(), "{} fails {a}", s.name);
            }
        }
    }

    #[test]
    fn bases_hold_in_their_semiring() {
        for s in SemiringName::ALL {
            for (id, b) in basis(s) {
                assert!(models::satisfies(s.table(), &b).unwrap(), "{id}");
            }
        }
    }

    #[test]
    fn ai_axioms_model_exactly_the_ai_semirings() {
        assert_eq!(AxiomSet::named("ai").unwrap().models(), SemiringName::AI.to_vec());
    }
}
