//! Finite Alexandroff spaces as complete Heyting algebras.
//!
//! A space is built from a preorder on at most 64 points: the opens are
//! exactly the down-closed sets, stored as bit masks. On such a space the
//! meet of any family of opens is plain intersection (arbitrary
//! intersections of opens stay open), joins are unions, and the exponential
//! is `b^a = join of all t with t meet a below b`.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SpaceError {
    TooManyPoints { got: usize, max: usize },
    NoPoints,
    BadPoint { point: usize, n: usize },
    NotAntisymmetric { a: usize, b: usize },
    ForeignOpen { mask: u64 },
    NotWellBehaved(String),
    LimitExceeded { got: usize, max: usize },
}

impl core::fmt::Display for SpaceError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            SpaceError::TooManyPoints { got, max } => {
                write!(f, "{} points exceeds the supported maximum {}", got, max)
            }
            SpaceError::NoPoints => write!(f, "a space needs at least one point"),
            SpaceError::BadPoint { point, n } => {
                write!(f, "point {} out of range for {} points", point, n)
            }
            SpaceError::NotAntisymmetric { a, b } => {
                write!(f, "points {} and {} are order-equivalent (not T0)", a, b)
            }
            SpaceError::ForeignOpen { mask } => {
                write!(f, "mask {:#b} is not an open of this space", mask)
            }
            SpaceError::NotWellBehaved(why) => write!(f, "space is not well behaved: {}", why),
            SpaceError::LimitExceeded { got, max } => {
                write!(f, "requested {} points, hard cap is {}", got, max)
            }
        }
    }
}

/// An open set of a fixed space, as a bit mask over point indices.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Hash)]
pub struct Open(pub u64);

/// Verdict of the well-behavedness check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WellBehavedReport {
    pub has_bottom: bool,
    pub has_top: bool,
    /// First pair of points whose minimal neighborhoods intersect outside the
    /// minimal-neighborhood family, if any.
    pub bad_pair: Option<(usize, usize)>,
}

impl WellBehavedReport {
    pub fn ok(&self) -> bool {
        self.has_bottom && self.has_top && self.bad_pair.is_none()
    }

    pub fn describe(&self) -> String {
        if self.ok() {
            return "well behaved".to_string();
        }
        let mut parts = Vec::new();
        if !self.has_bottom {
            parts.push("no bottom point".to_string());
        }
        if !self.has_top {
            parts.push("no top point".to_string());
        }
        if let Some((x, y)) = self.bad_pair {
            parts.push(format!(
                "minimal neighborhoods of {} and {} meet outside the family",
                x, y
            ));
        }
        parts.join("; ")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Space {
    n: usize,
    /// `below[x]` = mask of `{t | t <= x}`; this is the minimal neighborhood
    /// of `x`.
    below: Vec<u64>,
    /// All down-closed masks, sorted ascending. Index into this family is the
    /// canonical open index used in tables and reports.
    opens: Vec<u64>,
    t0: bool,
    bottom: Option<usize>,
    top: Option<usize>,
    names: Vec<String>,
}

/// Hard cap for enumeration-driven search.
pub const MAX_SEARCH_POINTS: usize = 6;

/// Practical cap for explicit open families (2^n masks get enumerated).
pub const MAX_POINTS: usize = 16;

impl Space {
    /// Builds the space generated by the reflexive-transitive closure of
    /// `pairs` (each `(a, b)` meaning `a <= b`). With `strict_t0` an
    /// order-equivalence between distinct points is an error; otherwise the
    /// space is kept and flagged as non-T0.
    pub fn from_poset(n: usize, pairs: &[(usize, usize)], strict_t0: bool) -> Result<Self, SpaceError> {
        if n == 0 {
            return Err(SpaceError::NoPoints);
        }
        if n > MAX_POINTS {
            return Err(SpaceError::TooManyPoints { got: n, max: MAX_POINTS });
        }
        for &(a, b) in pairs {
            let bad = if a >= n { a } else { b };
            if a >= n || b >= n {
                return Err(SpaceError::BadPoint { point: bad, n });
            }
        }
        let mut below: Vec<u64> = (0..n).map(|x| 1u64 << x).collect();
        // closure: iterate `t <= a <= b  =>  t <= b` until stable
        loop {
            let mut changed = false;
            for &(a, b) in pairs {
                let merged = below[b] | below[a];
                if merged != below[b] {
                    below[b] = merged;
                    changed = true;
                }
            }
            for x in 0..n {
                for y in 0..n {
                    if below[y] & (1 << x) != 0 {
                        let merged = below[y] | below[x];
                        if merged != below[y] {
                            below[y] = merged;
                            changed = true;
                        }
                    }
                }
            }
            if !changed {
                break;
            }
        }
        let mut t0 = true;
        for a in 0..n {
            for b in a + 1..n {
                if below[a] & (1 << b) != 0 && below[b] & (1 << a) != 0 {
                    if strict_t0 {
                        return Err(SpaceError::NotAntisymmetric { a, b });
                    }
                    t0 = false;
                }
            }
        }
        let full = if n == 64 { !0u64 } else { (1u64 << n) - 1 };
        let mut opens = Vec::new();
        for mask in 0..=full {
            let mut down_closed = true;
            let mut m = mask;
            while m != 0 {
                let x = m.trailing_zeros() as usize;
                if below[x] & mask != below[x] {
                    down_closed = false;
                    break;
                }
                m &= m - 1;
            }
            if down_closed {
                opens.push(mask);
            }
        }
        let bottom = (0..n).find(|&b| (0..n).all(|y| below[y] & (1 << b) != 0));
        let top = (0..n).find(|&t| below[t] == full);
        let names = (0..n).map(|i| format!("p{}", i)).collect();
        Ok(Space {
            n,
            below,
            opens,
            t0,
            bottom,
            top,
            names,
        })
    }

    pub fn n_points(&self) -> usize {
        self.n
    }

    pub fn is_t0(&self) -> bool {
        self.t0
    }

    pub fn full_mask(&self) -> u64 {
        if self.n == 64 {
            !0
        } else {
            (1u64 << self.n) - 1
        }
    }

    pub fn whole(&self) -> Open {
        Open(self.full_mask())
    }

    pub fn empty(&self) -> Open {
        Open(0)
    }

    pub fn bottom(&self) -> Option<usize> {
        self.bottom
    }

    pub fn top(&self) -> Option<usize> {
        self.top
    }

    pub fn opens(&self) -> &[u64] {
        &self.opens
    }

    pub fn n_opens(&self) -> usize {
        self.opens.len()
    }

    pub fn open_by_index(&self, i: usize) -> Option<Open> {
        self.opens.get(i).map(|&m| Open(m))
    }

    /// Canonical index of an open in the mask-sorted family.
    pub fn open_index(&self, o: Open) -> Option<usize> {
        self.opens.binary_search(&o.0).ok()
    }

    pub fn is_open(&self, mask: u64) -> bool {
        self.opens.binary_search(&mask).is_ok()
    }

    fn guard(&self, o: Open) -> Result<u64, SpaceError> {
        if self.is_open(o.0) {
            Ok(o.0)
        } else {
            Err(SpaceError::ForeignOpen { mask: o.0 })
        }
    }

    /// Minimal neighborhood of a point.
    pub fn min_nbhd(&self, x: usize) -> Open {
        Open(self.below[x])
    }

    pub fn le(&self, a: usize, b: usize) -> bool {
        self.below[b] & (1 << a) != 0
    }

    pub fn point_name(&self, x: usize) -> &str {
        &self.names[x]
    }

    pub fn set_point_name(&mut self, x: usize, name: impl Into<String>) {
        self.names[x] = name.into();
    }

    pub fn points_of(&self, o: Open) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(move |&x| o.0 & (1 << x) != 0)
    }

    pub fn contains(&self, o: Open, x: usize) -> bool {
        o.0 & (1 << x) != 0
    }

    // -- lattice operations over opens ------------------------------------

    pub fn meet(&self, a: Open, b: Open) -> Result<Open, SpaceError> {
        Ok(Open(self.guard(a)? & self.guard(b)?))
    }

    pub fn join(&self, a: Open, b: Open) -> Result<Open, SpaceError> {
        Ok(Open(self.guard(a)? | self.guard(b)?))
    }

    /// Meet of an arbitrary family; the empty meet is the whole space. On an
    /// Alexandroff space the intersection of opens is already open, so no
    /// interior pass is needed.
    pub fn big_meet(&self, family: impl IntoIterator<Item = Open>) -> Result<Open, SpaceError> {
        let mut acc = self.full_mask();
        for o in family {
            acc &= self.guard(o)?;
        }
        debug_assert!(self.is_open(acc));
        Ok(Open(acc))
    }

    pub fn big_join(&self, family: impl IntoIterator<Item = Open>) -> Result<Open, SpaceError> {
        let mut acc = 0u64;
        for o in family {
            acc |= self.guard(o)?;
        }
        Ok(Open(acc))
    }

    /// Relative pseudo-complement `b^a`: the largest open `t` with
    /// `t meet a <= b`.
    pub fn exp(&self, b: Open, a: Open) -> Result<Open, SpaceError> {
        let b = self.guard(b)?;
        let a = self.guard(a)?;
        let mut acc = 0u64;
        for &t in &self.opens {
            if t & a & !b == 0 {
                acc |= t;
            }
        }
        Ok(Open(acc))
    }

    /// `~a = exp(empty, a)`.
    pub fn neg(&self, a: Open) -> Result<Open, SpaceError> {
        self.exp(self.empty(), a)
    }

    pub fn leq(&self, a: Open, b: Open) -> Result<bool, SpaceError> {
        Ok(self.guard(a)? & !self.guard(b)? == 0)
    }

    // -- structure checks ---------------------------------------------------

    /// Full verification that the stored family is a topology closed under
    /// union and intersection and contains the empty set and the whole space.
    pub fn verify_topology(&self) -> Result<(), SpaceError> {
        if !self.is_open(0) || !self.is_open(self.full_mask()) {
            return Err(SpaceError::ForeignOpen { mask: self.full_mask() });
        }
        for &a in &self.opens {
            for &b in &self.opens {
                if !self.is_open(a | b) {
                    return Err(SpaceError::ForeignOpen { mask: a | b });
                }
                if !self.is_open(a & b) {
                    return Err(SpaceError::ForeignOpen { mask: a & b });
                }
            }
        }
        Ok(())
    }

    /// Checks the two well-behavedness conditions (plus the top-point
    /// requirement that makes the empty infimum meaningful): pairwise
    /// intersections of minimal neighborhoods are minimal neighborhoods, and
    /// a bottom point sits inside every inhabited open.
    pub fn well_behaved(&self) -> WellBehavedReport {
        let mut bad_pair = None;
        'outer: for x in 0..self.n {
            for y in x + 1..self.n {
                let inter = self.below[x] & self.below[y];
                if !(0..self.n).any(|z| self.below[z] == inter) {
                    bad_pair = Some((x, y));
                    break 'outer;
                }
            }
        }
        WellBehavedReport {
            has_bottom: self.bottom.is_some(),
            has_top: self.top.is_some(),
            bad_pair,
        }
    }

    pub fn require_well_behaved(&self) -> Result<(), SpaceError> {
        let r = self.well_behaved();
        if r.ok() {
            Ok(())
        } else {
            Err(SpaceError::NotWellBehaved(r.describe()))
        }
    }

    /// The point `t` with `min_nbhd(t)` equal to the intersection of the
    /// minimal neighborhoods of `pts`; the empty infimum is the top point.
    pub fn inf_points(&self, pts: impl IntoIterator<Item = usize>) -> Result<usize, SpaceError> {
        let mut acc = self.full_mask();
        for p in pts {
            if p >= self.n {
                return Err(SpaceError::BadPoint { point: p, n: self.n });
            }
            acc &= self.below[p];
        }
        (0..self.n)
            .find(|&z| self.below[z] == acc)
            .ok_or_else(|| SpaceError::NotWellBehaved(format!("no point realizes mask {:#b}", acc)))
    }

    // -- stock spaces used across tests and fixtures -------------------------

    /// The one-point space: the two-valued classical model.
    pub fn classical() -> Space {
        Space::from_poset(1, &[], true).unwrap()
    }

    /// The Sierpinski space: bottom 0 below top 1, opens 0, 1, 2 in canonical
    /// order.
    pub fn sierpinski() -> Space {
        Space::from_poset(2, &[(0, 1)], true).unwrap()
    }

    /// The four-point diamond `b < l, r < t` with six opens.
    pub fn diamond() -> Space {
        let mut s = Space::from_poset(4, &[(0, 1), (0, 2), (1, 3), (2, 3)], true).unwrap();
        for (i, n) in ["b", "l", "r", "t"].iter().enumerate() {
            s.set_point_name(i, *n);
        }
        s
    }

    #[cfg(test)]
    pub(crate) fn corrupt_opens_for_test(&mut self, drop_mask: u64) {
        self.opens.retain(|&m| m != drop_mask);
    }
}
