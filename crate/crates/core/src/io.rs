//! JSON documents for families, path sums and decompositions.
//!
//! Families: `{"n": 3, "sets": [[1,2],[1,3]]}` with 1-indexed, strictly
//! increasing inner lists, or `{"n": 3, "masks": [3, 5]}`. Writers always emit
//! the `sets` form sorted by `(size, mask)`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::family::Family;
use crate::kleitman::{Decomposition, Edge};
use crate::pathsum::AxisFlow;
use crate::perm::factorial;
use crate::set::{GroundSet, SetMask};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilyDoc {
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sets: Option<Vec<Vec<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub masks: Option<Vec<u32>>,
}

impl FamilyDoc {
    pub fn from_family(f: &Family) -> Self {
        FamilyDoc {
            n: f.n(),
            sets: Some(
                f.sorted_members()
                    .into_iter()
                    .map(SetMask::labels)
                    .collect(),
            ),
            masks: None,
        }
    }

    pub fn to_family(&self) -> Result<Family> {
        let n = GroundSet::new(self.n)?;
        let masks: Vec<SetMask> = match (&self.sets, &self.masks) {
            (Some(sets), None) => sets
                .iter()
                .map(|s| {
                    if s.windows(2).any(|w| w[0] >= w[1]) {
                        return Err(Error::Format(format!(
                            "set {s:?} is not strictly increasing"
                        )));
                    }
                    n.set(s)
                })
                .collect::<Result<_>>()?,
            (None, Some(masks)) => masks.iter().map(|&m| n.mask(m)).collect::<Result<_>>()?,
            _ => {
                return Err(Error::Format(
                    "expected exactly one of \"sets\" or \"masks\"".into(),
                ))
            }
        };
        let mut f = Family::empty(n);
        for m in masks {
            if !f.insert(m)? {
                return Err(Error::Format(format!("duplicate set {m}")));
            }
        }
        Ok(f)
    }
}

pub fn parse_family(text: &[u8]) -> Result<Family> {
    serde_json::from_slice::<FamilyDoc>(text)?.to_family()
}

/// Compact single-line JSON.
pub fn family_to_json(f: &Family) -> String {
    serde_json::to_string(&FamilyDoc::from_family(f)).expect("family documents serialize")
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlowDoc {
    pub n: usize,
    /// Axis label to values in rank order.
    pub axes: BTreeMap<u32, Vec<i64>>,
}

impl FlowDoc {
    pub fn from_flow(flow: &AxisFlow) -> Self {
        FlowDoc {
            n: flow.ground().size(),
            axes: flow
                .ground()
                .elements()
                .map(|a| (a.label() as u32, flow.axis(a).to_vec()))
                .collect(),
        }
    }

    pub fn to_flow(&self) -> Result<AxisFlow> {
        let n = GroundSet::new(self.n)?;
        let mut axes = Vec::with_capacity(n.size());
        for a in n.elements() {
            let v = self
                .axes
                .get(&(a.label() as u32))
                .ok_or_else(|| Error::Format(format!("missing axis {a}")))?;
            axes.push(v.clone());
        }
        if self.axes.len() != n.size() {
            return Err(Error::Format("unexpected axis labels".into()));
        }
        AxisFlow::from_axes(n, axes)
    }
}

pub fn flow_to_json(flow: &AxisFlow) -> String {
    serde_json::to_string(&FlowDoc::from_flow(flow)).expect("flow documents serialize")
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LambdaEntry {
    pub from: u32,
    pub to: u32,
    pub num: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionDoc {
    pub n: usize,
    pub denominator: u64,
    pub c: Vec<i64>,
    /// Sorted by `(to, from)`.
    pub lambda: Vec<LambdaEntry>,
}

impl DecompositionDoc {
    pub fn from_decomposition(d: &Decomposition) -> Self {
        DecompositionDoc {
            n: d.n.size(),
            denominator: d.denominator,
            c: d.c_num.clone(),
            lambda: d
                .lambda_num
                .iter()
                .map(|(e, &num)| LambdaEntry {
                    from: e.from.bits(),
                    to: e.to.bits(),
                    num,
                })
                .collect(),
        }
    }

    /// Shape checks only; the algebra is left to `verify_decomposition`.
    pub fn to_decomposition(&self) -> Result<Decomposition> {
        let n = GroundSet::new(self.n)?;
        if self.denominator != factorial(n.size()) {
            return Err(Error::Format(format!("denominator must be {}!", n.size())));
        }
        let mut lambda_num = BTreeMap::new();
        for e in &self.lambda {
            let edge = Edge::new(n.mask(e.from)?, n.mask(e.to)?);
            if lambda_num.insert(edge, e.num).is_some() {
                return Err(Error::Format(format!(
                    "duplicate edge ({}, {})",
                    e.from, e.to
                )));
            }
        }
        Ok(Decomposition {
            n,
            denominator: self.denominator,
            c_num: self.c.clone(),
            lambda_num,
        })
    }
}

pub fn decomposition_to_json(d: &Decomposition) -> String {
    serde_json::to_string(&DecompositionDoc::from_decomposition(d))
        .expect("decomposition documents serialize")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kleitman::build_decomposition;
    use crate::pathsum::pathsum_formula;

    fn g(n: usize) -> GroundSet {
        GroundSet::new(n).unwrap()
    }

    #[test]
    fn parse_examples() {
        let f = parse_family(br#"{"n":3,"sets":[[1,2],[1,3],[2,3],[1,2,3]]}"#).unwrap();
        assert_eq!(f, Family::from_predicate(g(3), |m| m.len() >= 2));
        let f = parse_family(br#"{"n":2,"masks":[1,3]}"#).unwrap();
        assert_eq!(
            f,
            Family::from_sets(g(2), &[&[1usize][..], &[1, 2]]).unwrap()
        );
    }

    #[test]
    fn parse_errors() {
        let bad: &[&[u8]] = &[
            br#"{"n":2,"sets":[[3]]}"#,
            br#"{"n":2,"sets":[[1],[1]]}"#,
            br#"{"n":2,"sets":[[2,1]]}"#,
            br#"{"n":2,"sets":[[1,1]]}"#,
            br#"{"n":2,"masks":[4]}"#,
            br#"{"n":2,"masks":[1,1]}"#,
            br#"{"n":2}"#,
            br#"{"n":2,"sets":[],"masks":[]}"#,
            br#"{"n":0,"sets":[]}"#,
            br#"{"n":2,"sets":[],"extra":1}"#,
            br#"{"n":2,"sets":"#,
        ];
        for text in bad {
            assert!(
                parse_family(text).is_err(),
                "{}",
                String::from_utf8_lossy(text)
            );
        }
        assert!(matches!(
            parse_family(br#"{"n":2,"sets":[[3]]}"#),
            Err(Error::ElementOutOfRange { .. })
        ));
    }

    #[test]
    fn writer_sorts_by_size_then_mask() {
        let f = parse_family(br#"{"n":3,"masks":[7,4,3,0,1]}"#).unwrap();
        assert_eq!(
            family_to_json(&f),
            r#"{"n":3,"sets":[[],[1],[3],[1,2],[1,2,3]]}"#
        );
    }

    #[test]
    fn flow_document() {
        let f = Family::from_predicate(g(3), |m| m.len() <= 1);
        let flow = pathsum_formula(&f);
        let text = flow_to_json(&flow);
        assert_eq!(
            text,
            r#"{"n":3,"axes":{"1":[2,4,4,2],"2":[2,4,4,2],"3":[2,4,4,2]}}"#
        );
        let back: FlowDoc = serde_json::from_str(&text).unwrap();
        assert_eq!(back.to_flow().unwrap(), flow);
    }

    #[test]
    fn decomposition_document() {
        let d = build_decomposition(&Family::from_predicate(g(3), |m| m.len() >= 2)).unwrap();
        let text = decomposition_to_json(&d);
        assert!(text.starts_with(r#"{"n":3,"denominator":6,"c":[2,2,2],"lambda":[{"from":1,"to":3,"num":2},{"from":2,"to":3,"num":2}"#));
        let doc: DecompositionDoc = serde_json::from_str(&text).unwrap();
        assert_eq!(doc.to_decomposition().unwrap(), d);
    }
}
