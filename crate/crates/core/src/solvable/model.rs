use alloc::vec;
use alloc::vec::Vec;

use crate::ca::{MonotoneRule, Neighborhood, Pattern, Site};
use crate::error::{Error, Result};

/// Von Neumann neighborhood plus `(1, -1)` and `(-1, 1)`.
pub fn solvable_neighborhood() -> Neighborhood {
    Neighborhood::new(vec![
        Site::new(0, 0),
        Site::new(1, 0),
        Site::new(-1, 0),
        Site::new(0, 1),
        Site::new(0, -1),
        Site::new(1, -1),
        Site::new(-1, 1),
    ])
    .expect("seven distinct offsets")
}

fn sure_sets() -> Vec<Vec<Site>> {
    vec![
        vec![Site::new(-1, 0)],
        vec![Site::new(0, 1)],
        vec![Site::new(1, -1), Site::new(0, -1)],
        vec![Site::new(-1, 1), Site::new(1, 0)],
    ]
}

/// `π_p`: one on supersets of the four sure sets, `p` on other nonempty
/// sets, zero on the empty set.
pub fn solvable_rule(p: f64) -> Result<MonotoneRule> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::Domain(alloc::format!("p = {p} outside [0, 1]")));
    }
    let nb = solvable_neighborhood();
    let sure: Vec<Pattern> = sure_sets().iter().map(|s| nb.pattern_of(s)).collect::<Result<_>>()?;
    let origin = nb.origin_index();
    MonotoneRule::prob_table_fn(nb, |s| {
        if s.contains_index(origin) || sure.iter().any(|&m| m.is_subset_of(s)) {
            1.0
        } else if s.is_empty() {
            0.0
        } else {
            p
        }
    })
}

/// The `p → 0` skeleton: only the four sure conditions.
pub fn skeleton_rule() -> MonotoneRule {
    MonotoneRule::antichain(solvable_neighborhood(), &sure_sets()).expect("sure sets form an antichain")
}
