//! Survey of all maximal intersecting families at a given `n`: flags,
//! empty-set minimality and star coefficients, optionally reduced up to
//! relabelling.

use std::collections::BTreeMap;
use std::time::Instant;

use serde::Serialize;

use crate::enumerate::{enumerate_maximal_intersecting_with, Canonicalizer};
use crate::error::Result;
use crate::exec::Exec;
use crate::family::{Family, FamilyFlags};
use crate::io::FamilyDoc;
use crate::kleitman::{is_empty_minimal_with, Witness};
use crate::set::GroundSet;

pub const MAX_SURVEY_N: usize = 6;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SurveyOptions {
    /// One record per isomorphism class.
    pub canonical: bool,
    /// Attach per-record wall time. Makes output nondeterministic.
    pub timing: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SurveyRecord {
    pub family: FamilyDoc,
    pub canonical: FamilyDoc,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub class_size: Option<usize>,
    pub flags: FamilyFlags,
    pub empty_minimal: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    /// Star coefficient numerators over `n!`; present exactly when minimal.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub c: Option<Vec<i64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub micros: Option<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SurveySummary {
    pub n: usize,
    /// Families, or classes when canonical.
    pub total: usize,
    pub empty_minimal: usize,
    pub central: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Survey {
    pub records: Vec<SurveyRecord>,
    pub summary: SurveySummary,
}

struct Assessed {
    family: Family,
    canonical: Family,
    flags: FamilyFlags,
    witness: Option<Witness>,
    c: Option<Vec<i64>>,
    micros: u64,
}

fn assess(family: &Family, canon: &Canonicalizer) -> Result<Assessed> {
    let start = Instant::now();
    let flags = family.classify();
    let check = is_empty_minimal_with(family, Exec::Sequential)?;
    let c = check.is_minimal().then(|| {
        family
            .ground()
            .elements()
            .map(|a| check.flow.axis(a)[0])
            .collect()
    });
    Ok(Assessed {
        family: family.clone(),
        canonical: canon.canonicalize(family),
        flags,
        witness: check.witness,
        c,
        micros: start.elapsed().as_micros() as u64,
    })
}

pub fn survey(n: usize, options: SurveyOptions, exec: Exec) -> Result<Survey> {
    let ground = GroundSet::bounded(n, MAX_SURVEY_N)?;
    let families = enumerate_maximal_intersecting_with(n, exec)?;
    let canon = Canonicalizer::new(ground)?;
    let assessed = exec
        .map(&families, |f| assess(f, &canon))
        .into_iter()
        .collect::<Result<Vec<_>>>()?;

    let to_record = |a: Assessed, class_size: Option<usize>| SurveyRecord {
        family: FamilyDoc::from_family(&a.family),
        canonical: FamilyDoc::from_family(&a.canonical),
        class_size,
        flags: a.flags,
        empty_minimal: a.witness.is_none(),
        witness: a.witness,
        c: a.c,
        micros: options.timing.then_some(a.micros),
    };

    let records: Vec<SurveyRecord> = if options.canonical {
        // Families arrive sorted, so the first family seen is the class representative.
        let mut classes: BTreeMap<Family, (Assessed, usize)> = BTreeMap::new();
        for a in assessed {
            classes
                .entry(a.canonical.clone())
                .and_modify(|(_, count)| *count += 1)
                .or_insert((a, 1));
        }
        classes
            .into_values()
            .map(|(a, k)| to_record(a, Some(k)))
            .collect()
    } else {
        assessed.into_iter().map(|a| to_record(a, None)).collect()
    };

    let summary = SurveySummary {
        n,
        total: records.len(),
        empty_minimal: records.iter().filter(|r| r.empty_minimal).count(),
        central: records.iter().filter(|r| r.flags.central).count(),
    };
    Ok(Survey { records, summary })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_surveys() {
        let s = survey(3, SurveyOptions::default(), Exec::Sequential).unwrap();
        assert_eq!(
            s.summary,
            SurveySummary {
                n: 3,
                total: 4,
                empty_minimal: 4,
                central: 1
            }
        );
        let s = survey(4, SurveyOptions::default(), Exec::Sequential).unwrap();
        assert_eq!(
            s.summary,
            SurveySummary {
                n: 4,
                total: 12,
                empty_minimal: 12,
                central: 8
            }
        );
        for r in &s.records {
            assert_eq!(r.c.as_ref().unwrap().iter().sum::<i64>(), 24);
            assert!(r.micros.is_none());
        }
    }

    #[test]
    fn canonical_classes() {
        let s = survey(
            3,
            SurveyOptions {
                canonical: true,
                timing: false,
            },
            Exec::Sequential,
        )
        .unwrap();
        assert_eq!(s.summary.total, 2);
        let sizes: Vec<usize> = s.records.iter().map(|r| r.class_size.unwrap()).collect();
        assert_eq!(sizes.iter().sum::<usize>(), 4);
    }

    #[test]
    fn strategy_independent() {
        let opts = SurveyOptions {
            canonical: true,
            timing: false,
        };
        assert_eq!(
            survey(5, opts, Exec::Sequential).unwrap(),
            survey(5, opts, Exec::Parallel).unwrap()
        );
    }

    #[test]
    fn range() {
        assert!(survey(0, SurveyOptions::default(), Exec::Sequential).is_err());
        assert!(survey(7, SurveyOptions::default(), Exec::Sequential).is_err());
    }
}
