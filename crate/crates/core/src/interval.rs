//! Finite unions of real intervals with explicit endpoint flags.
//!
//! Open versus closed endpoints matter here: a periodic spectrum and its
//! q-interior differ by finitely many points, and intersections over a
//! family of operators have to keep track of exactly those points.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
    pub lo_closed: bool,
    pub hi_closed: bool,
}

impl Interval {
    /// Infinite endpoints are always stored open.
    pub fn new(lo: f64, hi: f64, lo_closed: bool, hi_closed: bool) -> Self {
        Interval {
            lo,
            hi,
            lo_closed: lo_closed && lo.is_finite(),
            hi_closed: hi_closed && hi.is_finite(),
        }
    }

    pub fn closed(lo: f64, hi: f64) -> Self {
        Interval::new(lo, hi, true, true)
    }

    pub fn open(lo: f64, hi: f64) -> Self {
        Interval::new(lo, hi, false, false)
    }

    pub fn point(x: f64) -> Self {
        Interval::closed(x, x)
    }

    pub fn is_empty(&self) -> bool {
        match self.lo.partial_cmp(&self.hi) {
            Some(Ordering::Less) => false,
            Some(Ordering::Equal) => !(self.lo_closed && self.hi_closed),
            _ => true,
        }
    }

    pub fn contains(&self, x: f64) -> bool {
        let above = if self.lo_closed { x >= self.lo } else { x > self.lo };
        let below = if self.hi_closed { x <= self.hi } else { x < self.hi };
        above && below
    }

    pub fn width(&self) -> f64 {
        if self.is_empty() {
            0.0
        } else {
            self.hi - self.lo
        }
    }

    pub fn midpoint(&self) -> f64 {
        0.5 * (self.lo + self.hi)
    }

    pub fn intersect(&self, other: &Interval) -> Interval {
        let (lo, lo_closed) = match self.lo.partial_cmp(&other.lo) {
            Some(Ordering::Greater) => (self.lo, self.lo_closed),
            Some(Ordering::Less) => (other.lo, other.lo_closed),
            _ => (self.lo, self.lo_closed && other.lo_closed),
        };
        let (hi, hi_closed) = match self.hi.partial_cmp(&other.hi) {
            Some(Ordering::Less) => (self.hi, self.hi_closed),
            Some(Ordering::Greater) => (other.hi, other.hi_closed),
            _ => (self.hi, self.hi_closed && other.hi_closed),
        };
        Interval::new(lo, hi, lo_closed, hi_closed)
    }

    /// Smallest interval containing both; flags follow the extreme endpoints.
    pub fn hull(&self, other: &Interval) -> Interval {
        if self.is_empty() {
            return *other;
        }
        if other.is_empty() {
            return *self;
        }
        let (lo, lo_closed) = match self.lo.partial_cmp(&other.lo) {
            Some(Ordering::Less) => (self.lo, self.lo_closed),
            Some(Ordering::Greater) => (other.lo, other.lo_closed),
            _ => (self.lo, self.lo_closed || other.lo_closed),
        };
        let (hi, hi_closed) = match self.hi.partial_cmp(&other.hi) {
            Some(Ordering::Greater) => (self.hi, self.hi_closed),
            Some(Ordering::Less) => (other.hi, other.hi_closed),
            _ => (self.hi, self.hi_closed || other.hi_closed),
        };
        Interval::new(lo, hi, lo_closed, hi_closed)
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.lo == self.hi && !self.is_empty() {
            return write!(f, "{{{:?}}}", self.lo);
        }
        write!(
            f,
            "{}{:?}, {:?}{}",
            if self.lo_closed { '[' } else { '(' },
            self.lo,
            self.hi,
            if self.hi_closed { ']' } else { ')' }
        )
    }
}

/// Sorted, pairwise disjoint, nonempty intervals. Two pieces that share an
/// endpoint are merged unless that endpoint is excluded from both.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct IntervalUnion {
    intervals: Vec<Interval>,
}

impl IntervalUnion {
    pub fn empty() -> Self {
        IntervalUnion::default()
    }

    pub fn real_line() -> Self {
        IntervalUnion { intervals: vec![Interval::open(f64::NEG_INFINITY, f64::INFINITY)] }
    }

    pub fn single(iv: Interval) -> Self {
        IntervalUnion::from_intervals(vec![iv])
    }

    pub fn from_intervals(mut pieces: Vec<Interval>) -> Self {
        pieces.retain(|iv| !iv.is_empty());
        pieces.sort_by(|x, y| {
            x.lo.partial_cmp(&y.lo)
                .unwrap_or(Ordering::Equal)
                .then(y.lo_closed.cmp(&x.lo_closed))
        });
        let mut out: Vec<Interval> = Vec::with_capacity(pieces.len());
        for iv in pieces {
            if let Some(cur) = out.last_mut() {
                let touches = iv.lo < cur.hi
                    || (iv.lo == cur.hi && (cur.hi_closed || iv.lo_closed));
                if touches {
                    match iv.hi.partial_cmp(&cur.hi) {
                        Some(Ordering::Greater) => {
                            cur.hi = iv.hi;
                            cur.hi_closed = iv.hi_closed;
                        }
                        Some(Ordering::Equal) => cur.hi_closed |= iv.hi_closed,
                        _ => {}
                    }
                    continue;
                }
            }
            out.push(iv);
        }
        IntervalUnion { intervals: out }
    }

    pub fn intervals(&self) -> &[Interval] {
        &self.intervals
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    pub fn len(&self) -> usize {
        self.intervals.len()
    }

    pub fn contains(&self, x: f64) -> bool {
        self.intervals.iter().any(|iv| iv.contains(x))
    }

    /// Lebesgue measure.
    pub fn measure(&self) -> f64 {
        self.intervals.iter().map(Interval::width).sum()
    }

    pub fn intersect(&self, other: &IntervalUnion) -> IntervalUnion {
        let mut pieces = Vec::new();
        for a in &self.intervals {
            for b in &other.intervals {
                let c = a.intersect(b);
                if !c.is_empty() {
                    pieces.push(c);
                }
            }
        }
        IntervalUnion::from_intervals(pieces)
    }

    pub fn union(&self, other: &IntervalUnion) -> IntervalUnion {
        let mut pieces = self.intervals.clone();
        pieces.extend_from_slice(&other.intervals);
        IntervalUnion::from_intervals(pieces)
    }

    /// Complement in the real line.
    pub fn complement(&self) -> IntervalUnion {
        let mut pieces = Vec::with_capacity(self.intervals.len() + 1);
        let mut lo = f64::NEG_INFINITY;
        let mut lo_closed = false;
        for iv in &self.intervals {
            pieces.push(Interval::new(lo, iv.lo, lo_closed, !iv.lo_closed));
            lo = iv.hi;
            lo_closed = !iv.hi_closed;
        }
        pieces.push(Interval::new(lo, f64::INFINITY, lo_closed, false));
        IntervalUnion::from_intervals(pieces)
    }

    pub fn difference(&self, other: &IntervalUnion) -> IntervalUnion {
        self.intersect(&other.complement())
    }
}

impl fmt::Display for IntervalUnion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.intervals.is_empty() {
            return write!(f, "∅");
        }
        for (i, iv) in self.intervals.iter().enumerate() {
            if i > 0 {
                write!(f, " ∪ ")?;
            }
            write!(f, "{iv}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn closed_meets_open() {
        let u = IntervalUnion::single(Interval::closed(-2.0, 2.0));
        let v = IntervalUnion::single(Interval::open(-2.0, 2.0));
        assert_eq!(u.intersect(&v), v);
    }

    #[test]
    fn punctured_interval_meets_closed() {
        let u = IntervalUnion::from_intervals(vec![Interval::open(-2.0, 0.0), Interval::open(0.0, 2.0)]);
        assert_eq!(u.len(), 2);
        let v = IntervalUnion::single(Interval::closed(-1.5, 1.5));
        let expected = IntervalUnion::from_intervals(vec![
            Interval::new(-1.5, 0.0, true, false),
            Interval::new(0.0, 1.5, false, true),
        ]);
        assert_eq!(u.intersect(&v), expected);
        assert!(!u.intersect(&v).contains(0.0));
    }

    #[test]
    fn empty_meets_anything() {
        let v = IntervalUnion::single(Interval::closed(0.0, 1.0));
        assert!(IntervalUnion::empty().intersect(&v).is_empty());
    }

    #[test]
    fn touching_closed_pieces_merge() {
        let u = IntervalUnion::from_intervals(vec![Interval::closed(-2.0, 0.0), Interval::closed(0.0, 2.0)]);
        assert_eq!(u.intervals(), &[Interval::closed(-2.0, 2.0)]);
    }

    #[test]
    fn complement_round_trip() {
        let u = IntervalUnion::from_intervals(vec![
            Interval::new(-1.0, 0.0, true, false),
            Interval::point(0.5),
            Interval::open(1.0, 3.0),
        ]);
        let c = u.complement();
        assert!(c.contains(0.0) && !c.contains(0.5) && c.contains(1.0) && !c.contains(2.0));
        assert_eq!(c.complement(), u);
    }

    fn arb_interval() -> impl Strategy<Value = Interval> {
        (-8i32..8, 0i32..5, any::<bool>(), any::<bool>()).prop_map(|(lo, len, lc, hc)| {
            // quarter-integer grid so shared endpoints actually occur
            let lo = lo as f64 / 4.0;
            Interval::new(lo, lo + len as f64 / 4.0, lc, hc)
        })
    }

    fn arb_union() -> impl Strategy<Value = IntervalUnion> {
        prop::collection::vec(arb_interval(), 0..5).prop_map(IntervalUnion::from_intervals)
    }

    fn probe_points() -> Vec<f64> {
        (-80..=80).map(|i| i as f64 / 8.0).collect()
    }

    proptest! {
        #[test]
        fn intersect_is_commutative(u in arb_union(), v in arb_union()) {
            prop_assert_eq!(u.intersect(&v), v.intersect(&u));
        }

        #[test]
        fn intersect_is_associative(u in arb_union(), v in arb_union(), w in arb_union()) {
            prop_assert_eq!(u.intersect(&v).intersect(&w), u.intersect(&v.intersect(&w)));
        }

        #[test]
        fn intersect_is_idempotent(u in arb_union()) {
            prop_assert_eq!(u.intersect(&u), u);
        }

        #[test]
        fn intersect_is_pointwise_and(u in arb_union(), v in arb_union()) {
            let w = u.intersect(&v);
            for x in probe_points() {
                prop_assert_eq!(w.contains(x), u.contains(x) && v.contains(x));
            }
        }

        #[test]
        fn canonical_form_is_sorted_and_disjoint(u in arb_union()) {
            for pair in u.intervals().windows(2) {
                let (a, b) = (pair[0], pair[1]);
                prop_assert!(a.hi <= b.lo);
                prop_assert!(!(a.hi == b.lo && (a.hi_closed || b.lo_closed)));
            }
            for iv in u.intervals() {
                prop_assert!(!iv.is_empty());
            }
        }
    }
}
