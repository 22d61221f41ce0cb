use alloc::vec::Vec;
use core::fmt;

use super::lattice::Site;
use super::neighborhood::Pattern;
use super::rule::{MonotoneRule, RuleKind};

/// One broken standing assumption.
#[derive(Clone, Debug, PartialEq)]
pub enum Violation {
    /// Some offset `x` has `-x` outside the neighborhood.
    NeighborhoodNotSymmetric { offset: Site },
    /// A probability is outside `[0, 1]` or not a number.
    ProbabilityOutOfRange { set: Vec<Site>, value: f64 },
    /// One listed minimal set contains another.
    NotAntichain { smaller: Vec<Site>, larger: Vec<Site> },
    /// `S1 ⊆ S2` but `π(S1) > π(S2)`.
    Monotonicity { smaller: Vec<Site>, larger: Vec<Site> },
    /// `π(∅) > 0`, so occupied cells could appear without contact.
    EmptySetSufficient,
    /// A set containing the origin has `π(S) < 1`.
    NotSolidifying { set: Vec<Site> },
    /// `π(-S) != π(S)` for the given `S`.
    Asymmetric { set: Vec<Site> },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NeighborhoodNotSymmetric { offset } => {
                write!(f, "neighborhood not symmetric: ({}, {}) has no mirror", offset.x, offset.y)
            }
            Violation::ProbabilityOutOfRange { set, value } => {
                write!(f, "probability {value} out of range for {}", SetFmt(set))
            }
            Violation::NotAntichain { smaller, larger } => {
                write!(f, "not an antichain: {} is contained in {}", SetFmt(smaller), SetFmt(larger))
            }
            Violation::Monotonicity { smaller, larger } => write!(
                f,
                "monotonicity: {} has larger probability than its superset {}",
                SetFmt(smaller),
                SetFmt(larger)
            ),
            Violation::EmptySetSufficient => f.write_str("empty set is sufficient"),
            Violation::NotSolidifying { set } => {
                write!(f, "not solidifying: {} contains the origin but is not sure", SetFmt(set))
            }
            Violation::Asymmetric { set } => {
                write!(f, "asymmetric: the reflection of {} has a different probability", SetFmt(set))
            }
        }
    }
}

struct SetFmt<'a>(&'a [Site]);

impl fmt::Display for SetFmt<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, s) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "({}, {})", s.x, s.y)?;
        }
        f.write_str("}")
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    /// True when the only violations are asymmetries. Stepping and the
    /// perturbation engine need monotonicity, `π(∅) = 0` and solidification
    /// but not symmetry.
    pub fn admits_dynamics(&self) -> bool {
        self.violations.iter().all(|v| matches!(v, Violation::Asymmetric { .. }))
    }
}

/// Checks the four standing assumptions. Violations are returned as data.
pub fn validate_rule(rule: &MonotoneRule) -> ValidationReport {
    let n = rule.neighborhood();
    let mut out = Vec::new();
    for &s in n.offsets() {
        if !n.contains(-s) {
            out.push(Violation::NeighborhoodNotSymmetric { offset: s });
        }
    }
    let symmetric_nb = out.is_empty();
    let origin = n.origin_index();
    match rule.kind() {
        RuleKind::Threshold(theta) => {
            if *theta == 0 {
                out.push(Violation::EmptySetSufficient);
            }
        }
        RuleKind::Antichain(sets) => {
            for (i, a) in sets.iter().enumerate() {
                if a.is_empty() {
                    out.push(Violation::EmptySetSufficient);
                }
                for b in &sets[i + 1..] {
                    let (small, large) = if a.is_subset_of(*b) {
                        (a, b)
                    } else if b.is_subset_of(*a) {
                        (b, a)
                    } else {
                        continue;
                    };
                    out.push(Violation::NotAntichain {
                        smaller: n.sites_of(*small),
                        larger: n.sites_of(*large),
                    });
                }
            }
            if symmetric_nb {
                for m in sets {
                    let r = n.reflect(*m).expect("symmetric neighborhood");
                    if rule.probability(r) < 1.0 {
                        out.push(Violation::Asymmetric { set: n.sites_of(*m) });
                    }
                }
            }
        }
        RuleKind::ProbTable(t) => {
            let size = n.len();
            let empty_reported = t.get(Pattern::EMPTY) > 0.0;
            if empty_reported {
                out.push(Violation::EmptySetSufficient);
            }
            for m in 0..1u64 << size {
                let s = Pattern(m);
                let raw = t.get(s);
                if !(0.0..=1.0).contains(&raw) {
                    out.push(Violation::ProbabilityOutOfRange { set: n.sites_of(s), value: raw });
                }
                if s.contains_index(origin) {
                    if raw < 1.0 {
                        out.push(Violation::NotSolidifying { set: n.sites_of(s) });
                    }
                    continue;
                }
                let ps = rule.probability(s);
                for i in 0..size {
                    if !s.contains_index(i) {
                        let bigger = s.with(i);
                        if rule.probability(bigger) < ps {
                            out.push(Violation::Monotonicity {
                                smaller: n.sites_of(s),
                                larger: n.sites_of(bigger),
                            });
                        }
                    }
                }
                if symmetric_nb {
                    let r = n.reflect(s).expect("symmetric neighborhood");
                    // report each unordered pair once
                    if s.0 < r.0 && rule.probability(r) != ps {
                        out.push(Violation::Asymmetric { set: n.sites_of(s) });
                    }
                }
            }
        }
    }
    ValidationReport { violations: out }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ca::Neighborhood;
    use alloc::string::ToString;
    use alloc::vec;

    fn s(x: i64, y: i64) -> Site {
        Site::new(x, y)
    }

    #[test]
    fn threshold_rules_are_valid() {
        let r = MonotoneRule::threshold(Neighborhood::moore(), 3);
        assert!(validate_rule(&r).is_valid());
        let r = MonotoneRule::threshold(Neighborhood::moore(), 0);
        assert_eq!(validate_rule(&r).violations, vec![Violation::EmptySetSufficient]);
    }

    #[test]
    fn nested_minimal_sets_are_flagged() {
        let r = MonotoneRule::antichain(
            Neighborhood::von_neumann(),
            &[vec![s(1, 0)], vec![s(1, 0), s(-1, 0)], vec![s(-1, 0)]],
        )
        .unwrap();
        let rep = validate_rule(&r);
        assert!(rep
            .violations
            .iter()
            .any(|v| matches!(v, Violation::NotAntichain { .. })));
        assert!(rep.violations[0].to_string().starts_with("not an antichain"));
    }

    #[test]
    fn decreasing_table_is_flagged() {
        let (a, b) = (s(1, 0), s(-1, 0));
        let r = MonotoneRule::prob_table(
            Neighborhood::von_neumann(),
            &[(vec![a], 0.5), (vec![b], 0.5), (vec![a, b], 0.3)],
        )
        .unwrap();
        let rep = validate_rule(&r);
        assert!(rep
            .violations
            .iter()
            .any(|v| v.to_string().starts_with("monotonicity")));
        assert!(!rep.admits_dynamics());
    }

    #[test]
    fn one_sided_antichain_is_asymmetric_only() {
        let r = MonotoneRule::antichain(Neighborhood::von_neumann(), &[vec![s(1, 0)]]).unwrap();
        let rep = validate_rule(&r);
        assert!(!rep.is_valid());
        assert!(rep.admits_dynamics());
    }

    #[test]
    fn asymmetric_neighborhood() {
        let n = Neighborhood::new(vec![s(0, 0), s(1, 0)]).unwrap();
        let rep = validate_rule(&MonotoneRule::threshold(n, 1));
        assert_eq!(rep.violations, vec![Violation::NeighborhoodNotSymmetric { offset: s(1, 0) }]);
    }
}
