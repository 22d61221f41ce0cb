use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use super::lattice::{Site, Symmetry};
use crate::error::{Error, Result};

/// Largest neighborhood whose subsets fit in a [`Pattern`].
pub const MAX_PATTERN_SITES: usize = 64;

/// A subset of a neighborhood, encoded by offset index.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Pattern(pub u64);

impl Pattern {
    pub const EMPTY: Pattern = Pattern(0);

    #[inline]
    pub fn contains_index(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    #[inline]
    pub fn with(self, i: usize) -> Pattern {
        Pattern(self.0 | 1 << i)
    }

    #[inline]
    pub fn is_subset_of(self, other: Pattern) -> bool {
        self.0 & !other.0 == 0
    }

    #[inline]
    pub fn len(self) -> u32 {
        self.0.count_ones()
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn indices(self) -> impl Iterator<Item = usize> {
        let bits = self.0;
        (0..64).filter(move |i| bits >> i & 1 == 1)
    }
}

/// A finite neighborhood `N ⊂ Z²` with a fixed offset indexing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Neighborhood {
    offsets: Vec<Site>,
    index: BTreeMap<Site, usize>,
    radius: i64,
}

impl Neighborhood {
    /// Builds a neighborhood from distinct offsets, which must include the
    /// origin. Symmetry is a rule-level standing assumption and is checked by
    /// [`super::validate_rule`].
    pub fn new(offsets: Vec<Site>) -> Result<Self> {
        let mut index = BTreeMap::new();
        for (i, &s) in offsets.iter().enumerate() {
            if index.insert(s, i).is_some() {
                return Err(Error::InvalidInput(format!("duplicate offset ({}, {})", s.x, s.y)));
            }
        }
        if !index.contains_key(&Site::ORIGIN) {
            return Err(Error::InvalidInput("neighborhood must contain the origin".into()));
        }
        let radius = offsets.iter().map(|s| s.chebyshev()).max().unwrap_or(0);
        Ok(Neighborhood { offsets, index, radius })
    }

    /// Range-`rho` box `{x : |x|_∞ <= rho}`, listed row by row from the bottom.
    pub fn box_range(rho: i64) -> Self {
        let mut v = Vec::new();
        for y in -rho..=rho {
            for x in -rho..=rho {
                v.push(Site::new(x, y));
            }
        }
        Self::new(v).expect("box offsets are distinct and contain the origin")
    }

    /// Range-`rho` diamond `{x : |x|_1 <= rho}`.
    pub fn diamond(rho: i64) -> Self {
        let mut v = Vec::new();
        for y in -rho..=rho {
            for x in -rho..=rho {
                if x.abs() + y.abs() <= rho {
                    v.push(Site::new(x, y));
                }
            }
        }
        Self::new(v).expect("diamond offsets are distinct and contain the origin")
    }

    pub fn moore() -> Self {
        Self::box_range(1)
    }

    pub fn von_neumann() -> Self {
        Self::diamond(1)
    }

    pub fn len(&self) -> usize {
        self.offsets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.offsets.is_empty()
    }

    pub fn offsets(&self) -> &[Site] {
        &self.offsets
    }

    /// Offsets other than the origin.
    pub fn nonzero(&self) -> impl Iterator<Item = Site> + '_ {
        self.offsets.iter().copied().filter(|s| !s.is_zero())
    }

    /// Largest Chebyshev norm of an offset.
    pub fn radius(&self) -> i64 {
        self.radius
    }

    pub fn index_of(&self, s: Site) -> Option<usize> {
        self.index.get(&s).copied()
    }

    pub fn origin_index(&self) -> usize {
        self.index[&Site::ORIGIN]
    }

    pub fn contains(&self, s: Site) -> bool {
        self.index.contains_key(&s)
    }

    pub fn is_symmetric(&self) -> bool {
        self.offsets.iter().all(|&s| self.contains(-s))
    }

    pub fn fits_pattern(&self) -> bool {
        self.len() <= MAX_PATTERN_SITES
    }

    /// Encodes a list of offsets as a pattern.
    pub fn pattern_of(&self, sites: &[Site]) -> Result<Pattern> {
        if !self.fits_pattern() {
            return Err(Error::InvalidInput(format!(
                "neighborhood has {} sites; subset encoding supports at most {MAX_PATTERN_SITES}",
                self.len()
            )));
        }
        let mut p = Pattern::EMPTY;
        for &s in sites {
            let i = self.index_of(s).ok_or(Error::OffsetOutsideNeighborhood(s))?;
            p = p.with(i);
        }
        Ok(p)
    }

    pub fn sites_of(&self, p: Pattern) -> Vec<Site> {
        p.indices().filter(|&i| i < self.len()).map(|i| self.offsets[i]).collect()
    }

    /// Pattern of `-S`. Requires a symmetric neighborhood.
    pub fn reflect(&self, p: Pattern) -> Option<Pattern> {
        let mut out = Pattern::EMPTY;
        for i in p.indices() {
            out = out.with(self.index_of(-self.offsets[i])?);
        }
        Some(out)
    }

    /// Image of the neighborhood under a lattice symmetry, with the offset
    /// order preserved (index `i` maps to index `i`).
    pub fn transformed(&self, g: &Symmetry) -> Neighborhood {
        Neighborhood::new(self.offsets.iter().map(|&s| g.apply(s)).collect())
            .expect("a symmetry maps distinct offsets to distinct offsets")
    }
}
