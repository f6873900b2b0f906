//! Exhaustive invariant suites, one per identity the construction relies on.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::enumerate::{enumerate_downsets, enumerate_maximal_intersecting_with};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::family::Family;
use crate::kleitman::{
    build_decomposition, is_empty_minimal, verify_decomposition, DownsetProfile,
};
use crate::pathsum::{pathsum_bruteforce_with, pathsum_formula, theta_trace, AxisFlow, ShiftTag};
use crate::perm::{factorial, PermutationSet};
use crate::set::GroundSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    /// Closed formula equals brute-force path enumeration.
    Formula,
    /// Divergence of the path sum equals `n!·(1_F − 1_{[n]⊕F})`.
    Conservation,
    /// α and β partial compositions agree on downsets.
    Equivalence,
    /// Every empty-minimal family decomposes and the decomposition verifies.
    Decomposition,
    /// Dot-product identity and star bound against every downset.
    Chvatal,
}

impl Suite {
    pub const ALL: [Suite; 5] = [
        Suite::Formula,
        Suite::Conservation,
        Suite::Equivalence,
        Suite::Decomposition,
        Suite::Chvatal,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Formula => "formula",
            Suite::Conservation => "conservation",
            Suite::Equivalence => "equivalence",
            Suite::Decomposition => "decomposition",
            Suite::Chvatal => "chvatal",
        }
    }

    pub fn max_n(self) -> usize {
        match self {
            Suite::Decomposition => 6,
            _ => 5,
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| format!("unknown suite {s:?}"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub n: usize,
    pub checked: usize,
    /// Inputs the suite does not apply to, e.g. families that are not
    /// empty-minimal.
    pub skipped: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failure: Option<String>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

/// First failure message over `items`, in input order.
fn first_failure<T: Sync>(
    items: &[T],
    exec: Exec,
    check: impl Fn(&T) -> Option<String> + Sync + Send,
) -> Option<String> {
    exec.map(items, check).into_iter().flatten().next()
}

/// Downsets and duals of maximal intersecting families at `n`.
fn flow_inputs(n: usize, exec: Exec) -> Result<Vec<Family>> {
    let mut v = enumerate_downsets(n)?;
    v.extend(
        enumerate_maximal_intersecting_with(n, exec)?
            .iter()
            .map(Family::dual),
    );
    Ok(v)
}

fn conservation_failure(f: &Family, flow: &AxisFlow, label: &str) -> Option<String> {
    let n = f.ground();
    let scale = factorial(n.size()) as i64;
    let end = f.translate(n.full());
    n.masks().find_map(|a| {
        let want = scale * (f.contains(a) as i64 - end.contains(a) as i64);
        let got = flow.divergence(a);
        (got != want).then(|| format!("{label} divergence of {f} at {a}: {got}, expected {want}"))
    })
}

pub fn run_suite(suite: Suite, n: usize, exec: Exec) -> Result<SuiteReport> {
    let ground = GroundSet::bounded(n, suite.max_n())?;
    let mut skipped = 0;
    let (checked, failure) = match suite {
        Suite::Formula => {
            let inputs = flow_inputs(n, exec)?;
            let failure = first_failure(&inputs, exec, |f| {
                let brute = pathsum_bruteforce_with(f, Exec::Sequential).expect("n in range");
                let formula = pathsum_formula(f);
                let mismatch =
                    formula
                        .edges()
                        .zip(brute.edges())
                        .find_map(|((a, from, x), (_, _, y))| {
                            (x != y).then(|| {
                                format!(
                                    "{f}: edge ({from}, {}) formula {x} vs brute force {y}",
                                    from.with(a)
                                )
                            })
                        });
                mismatch
            });
            (inputs.len(), failure)
        }
        Suite::Conservation => {
            let inputs = flow_inputs(n, exec)?;
            let failure = first_failure(&inputs, exec, |f| {
                let brute = pathsum_bruteforce_with(f, Exec::Sequential).expect("n in range");
                conservation_failure(f, &brute, "brute-force")
                    .or_else(|| conservation_failure(f, &pathsum_formula(f), "formula"))
            });
            (inputs.len(), failure)
        }
        Suite::Equivalence => {
            let inputs = enumerate_downsets(n)?;
            let perms: Vec<_> = PermutationSet::new(ground).iter().collect();
            let failure = first_failure(&inputs, exec, |f| {
                perms.iter().find_map(|sigma| {
                    let alpha = theta_trace(ShiftTag::Alpha, sigma, f, n).ok()?;
                    let beta = theta_trace(ShiftTag::Beta, sigma, f, n).ok()?;
                    let mismatch = alpha.families().zip(beta.families()).enumerate().find_map(
                        |(k, (x, y))| {
                            (x != y).then(|| format!("{f}: σ = {sigma:?}, k = {k}: {x} vs {y}"))
                        },
                    );
                    mismatch
                })
            });
            (inputs.len() * perms.len(), failure)
        }
        Suite::Decomposition => {
            let inputs = enumerate_maximal_intersecting_with(n, exec)?;
            let outcomes = exec.map(&inputs, |f| -> Option<Option<String>> {
                let minimal = is_empty_minimal(f)
                    .expect("enumerated families are maximal")
                    .is_minimal();
                if !minimal {
                    return None;
                }
                Some(match build_decomposition(f) {
                    Err(e) => Some(format!("{f}: {e}")),
                    Ok(d) => verify_decomposition(f, &d)
                        .err()
                        .map(|v| format!("{f}: {v}")),
                })
            });
            skipped = outcomes.iter().filter(|o| o.is_none()).count();
            let failure = outcomes.into_iter().flatten().flatten().next();
            (inputs.len() - skipped, failure)
        }
        Suite::Chvatal => {
            let families = enumerate_maximal_intersecting_with(n, exec)?;
            let profiles = enumerate_downsets(n)?
                .iter()
                .map(DownsetProfile::new)
                .collect::<Result<Vec<_>>>()?;
            let vectors: Vec<_> = families.iter().map(|f| (f, f.vector())).collect();
            let failure = first_failure(&profiles, exec, |p| {
                vectors.iter().find_map(|(f, v)| {
                    let r = p.check_vector(f, v);
                    (!r.identity_ok || !r.bound_ok)
                        .then(|| format!("F = {f}, G = {}: {r:?}", p.family()))
                })
            });
            (families.len() * profiles.len(), failure)
        }
    };
    Ok(SuiteReport {
        suite,
        n,
        checked,
        skipped,
        failure,
    })
}

/// Parses a suite name, mapping failures into the crate error.
pub fn parse_suite(name: &str) -> Result<Suite> {
    name.parse().map_err(Error::Format)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_roundtrip() {
        for s in Suite::ALL {
            assert_eq!(parse_suite(s.name()).unwrap(), s);
        }
        assert!(parse_suite("bogus").is_err());
    }

    #[test]
    fn small_suites_pass() {
        for s in Suite::ALL {
            for n in 1..=3 {
                let r = run_suite(s, n, Exec::Sequential).unwrap();
                assert!(r.passed(), "{r:?}");
            }
        }
        assert_eq!(
            run_suite(Suite::Formula, 3, Exec::Sequential)
                .unwrap()
                .checked,
            20 + 4
        );
        assert_eq!(
            run_suite(Suite::Chvatal, 3, Exec::Sequential)
                .unwrap()
                .checked,
            4 * 20
        );
    }

    #[test]
    fn range_checks() {
        assert!(run_suite(Suite::Formula, 6, Exec::Sequential).is_err());
        assert!(run_suite(Suite::Decomposition, 7, Exec::Sequential).is_err());
    }
}
