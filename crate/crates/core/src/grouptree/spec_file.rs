//! JSON group spec files.
//!
//! ```json
//! {"kind": "semidirect",
//!  "h": {"kind": "abelian", "invariant_factors": [7]},
//!  "g": {"kind": "abelian", "invariant_factors": [3]},
//!  "action": {"on_generators": [{"g_element": [1], "matrix": [[2]]}]}}
//! ```
//!
//! `g_element` is the canonical flat coordinate vector of an element of `g`; `matrix` is
//! row-major with column `j` holding the image of the `j`-th generator of `h`. An empty or
//! missing `on_generators` list means the trivial action.

use serde::{Deserialize, Serialize};

use super::abelian::AbelianGroup;
use super::action::{ActionSpec, Endo};
use super::tree::{ApGroupTree, Node};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum GroupSpec {
    Abelian {
        invariant_factors: Vec<u64>,
    },
    Semidirect {
        h: Box<GroupSpec>,
        g: Box<GroupSpec>,
        #[serde(default)]
        action: ActionJson,
    },
    Direct {
        left: Box<GroupSpec>,
        right: Box<GroupSpec>,
    },
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ActionJson {
    #[serde(default)]
    pub on_generators: Vec<GeneratorImage>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorImage {
    pub g_element: Vec<u64>,
    pub matrix: Vec<Vec<i64>>,
}

impl GroupSpec {
    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("group specs always serialise")
    }

    pub fn build(&self, cap: usize) -> Result<ApGroupTree> {
        match self {
            GroupSpec::Abelian { invariant_factors } => {
                Ok(ApGroupTree::abelian(AbelianGroup::new(invariant_factors.clone())?))
            }
            GroupSpec::Semidirect { h, g, action } => {
                let GroupSpec::Abelian { invariant_factors } = h.as_ref() else {
                    return Err(Error::Spec("semidirect \"h\" must be an abelian node".into()));
                };
                let h = AbelianGroup::new(invariant_factors.clone())?;
                let g = g.build(cap)?;
                let mut spec = ActionSpec::new();
                for image in &action.on_generators {
                    if image.g_element.len() != g.width()
                        || image.g_element.iter().zip(g.radices()).any(|(c, n)| c >= n)
                    {
                        return Err(Error::Spec(format!(
                            "g_element {:?} is not a coordinate vector for {g}",
                            image.g_element
                        )));
                    }
                    let x = g.unflatten(&image.g_element);
                    spec = spec.with(x, Endo::from_rows(&h, &image.matrix)?);
                }
                ApGroupTree::semidirect(h, g, &spec, cap)
            }
            GroupSpec::Direct { left, right } => ApGroupTree::direct(left.build(cap)?, right.build(cap)?),
        }
    }

    /// Spec listing the action on the standard generators of each `g`.
    pub fn from_tree(tree: &ApGroupTree) -> Self {
        match tree.node() {
            Node::Abelian(h) => GroupSpec::Abelian {
                invariant_factors: h.factors().to_vec(),
            },
            Node::Semidirect { h, g, action } => {
                let on_generators = if action.is_trivial() {
                    Vec::new()
                } else {
                    g.generators()
                        .iter()
                        .map(|x| {
                            let flat = g.flatten(x).expect("generators belong to g");
                            GeneratorImage {
                                matrix: action.get(g.index_of_flat(&flat)).to_rows(),
                                g_element: flat,
                            }
                        })
                        .collect()
                };
                GroupSpec::Semidirect {
                    h: Box::new(GroupSpec::Abelian {
                        invariant_factors: h.factors().to_vec(),
                    }),
                    g: Box::new(GroupSpec::from_tree(g)),
                    action: ActionJson { on_generators },
                }
            }
            Node::Direct(l, r) => GroupSpec::Direct {
                left: Box::new(GroupSpec::from_tree(l)),
                right: Box::new(GroupSpec::from_tree(r)),
            },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grouptree::DEFAULT_ENUMERATION_CAP;

    #[test]
    fn parses_frobenius_group() {
        let text = r#"{"kind":"semidirect",
            "h":{"kind":"abelian","invariant_factors":[7]},
            "g":{"kind":"abelian","invariant_factors":[3]},
            "action":{"on_generators":[{"g_element":[1],"matrix":[[2]]}]}}"#;
        let tree = GroupSpec::from_json(text)
            .unwrap()
            .build(DEFAULT_ENUMERATION_CAP)
            .unwrap();
        assert_eq!(tree.order(), 21);
        let back = GroupSpec::from_tree(&tree);
        assert_eq!(back, GroupSpec::from_json(text).unwrap());
    }

    #[test]
    fn trivial_action_by_omission() {
        let text = r#"{"kind":"semidirect",
            "h":{"kind":"abelian","invariant_factors":[5]},
            "g":{"kind":"abelian","invariant_factors":[3]}}"#;
        let tree = GroupSpec::from_json(text)
            .unwrap()
            .build(DEFAULT_ENUMERATION_CAP)
            .unwrap();
        assert_eq!(tree.order(), 15);
    }

    #[test]
    fn rejects_bad_documents() {
        for bad in [
            r#"{"kind":"abelian","invariant_factors":[3,9]}"#,
            r#"{"kind":"cyclic","n":3}"#,
            r#"{"kind":"semidirect","h":{"kind":"direct","left":{"kind":"abelian","invariant_factors":[3]},"right":{"kind":"abelian","invariant_factors":[5]}},"g":{"kind":"abelian","invariant_factors":[2]}}"#,
            r#"{"kind":"semidirect","h":{"kind":"abelian","invariant_factors":[3]},"g":{"kind":"abelian","invariant_factors":[2]},"action":{"on_generators":[{"g_element":[2],"matrix":[[2]]}]}}"#,
            r#"{"kind":"semidirect","h":{"kind":"abelian","invariant_factors":[3]},"g":{"kind":"abelian","invariant_factors":[2]},"action":{"on_generators":[{"g_element":[1],"matrix":[[0]]}]}}"#,
        ] {
            let parsed = GroupSpec::from_json(bad).and_then(|s| s.build(DEFAULT_ENUMERATION_CAP));
            assert!(parsed.is_err(), "{bad}");
        }
    }
}
