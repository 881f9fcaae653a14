//! Families of vertex sets and iteration traces.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::vertex_set::VertexSet;

/// A nonempty, deduplicated, sorted set of nonempty vertex sets.
///
/// In the geometric maps every member is a canonical polytope; in the
/// abstract map members are arbitrary subsets.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Family {
    members: Vec<VertexSet>,
}

impl Family {
    pub fn new<I>(members: I) -> Result<Self>
    where
        I: IntoIterator,
        I::Item: Into<VertexSet>,
    {
        let mut members: Vec<VertexSet> = members.into_iter().map(Into::into).collect();
        if members.is_empty() {
            return Err(Error::EmptyFamily);
        }
        if members.iter().any(|m| m.is_empty()) {
            return Err(Error::EmptyLabelSet);
        }
        members.sort();
        members.dedup();
        Ok(Family { members })
    }

    pub fn members(&self) -> &[VertexSet] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, set: VertexSet) -> bool {
        self.members.binary_search(&set).is_ok()
    }

    pub fn union(&self) -> VertexSet {
        self.members
            .iter()
            .fold(VertexSet::EMPTY, |acc, &m| acc.union(m))
    }

    pub fn iter(&self) -> impl Iterator<Item = VertexSet> + '_ {
        self.members.iter().copied()
    }
}

/// The orbit `X_0, X_1, ..` up to its first repetition:
/// `history[transient + period] == history[transient]`, and all entries of
/// `history` are distinct.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Trace {
    history: Vec<Family>,
    transient: usize,
    period: usize,
}

impl Trace {
    /// Rebuilds a trace from stored parts, checking its invariants.
    pub fn from_parts(history: Vec<Family>, transient: usize, period: usize) -> Result<Self> {
        if period == 0 || transient + period != history.len() {
            return Err(Error::InvalidArgument(
                "trace length must equal transient + period".into(),
            ));
        }
        let mut seen = BTreeMap::new();
        for (i, f) in history.iter().enumerate() {
            if seen.insert(f, i).is_some() {
                return Err(Error::InvalidArgument("trace history repeats".into()));
            }
        }
        Ok(Trace {
            history,
            transient,
            period,
        })
    }

    pub fn history(&self) -> &[Family] {
        &self.history
    }

    pub fn transient(&self) -> usize {
        self.transient
    }

    pub fn period(&self) -> usize {
        self.period
    }

    /// `X_i` for any `i`, following the cycle past the stored history.
    pub fn state(&self, i: usize) -> &Family {
        if i < self.history.len() {
            &self.history[i]
        } else {
            let offset = (i - self.transient) % self.period;
            &self.history[self.transient + offset]
        }
    }

    /// The recurring states.
    pub fn cycle(&self) -> &[Family] {
        &self.history[self.transient..]
    }
}

/// Iterates `step` from `start` until some state repeats.
///
/// Every visited state is kept in an ordered map from state to first index,
/// so the transient and period are exact.
pub fn iterate_until_repeat<F>(start: Family, max_iter: usize, mut step: F) -> Result<Trace>
where
    F: FnMut(&Family) -> Result<Family>,
{
    let mut first_seen: BTreeMap<Family, usize> = BTreeMap::new();
    let mut history: Vec<Family> = Vec::new();
    let mut current = start;
    loop {
        if let Some(&mu) = first_seen.get(&current) {
            let period = history.len() - mu;
            return Ok(Trace {
                history,
                transient: mu,
                period,
            });
        }
        if history.len() >= max_iter {
            return Err(Error::MaxIterExceeded(max_iter));
        }
        let next = step(&current)?;
        first_seen.insert(current.clone(), history.len());
        history.push(current);
        current = next;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn fam(sets: &[&[usize]]) -> Family {
        Family::new(
            sets.iter()
                .map(|s| s.iter().copied().collect::<VertexSet>()),
        )
        .unwrap()
    }

    #[test]
    fn family_canonical_order_and_dedup() {
        let f = fam(&[&[2], &[0, 1], &[0, 2], &[0, 1]]);
        assert_eq!(f.len(), 3);
        assert_eq!(f.members()[0].to_vec(), [0, 1]);
        assert_eq!(f.members()[2].to_vec(), [2]);
        assert!(f.contains(VertexSet::singleton(2)));
        assert_eq!(
            Family::new(Vec::<VertexSet>::new()),
            Err(Error::EmptyFamily)
        );
        assert_eq!(Family::new([VertexSet::EMPTY]), Err(Error::EmptyLabelSet));
    }

    #[test]
    fn detects_transient_and_period() {
        // States 0 -> 1 -> 2 -> 3 -> 2 encoded as singletons.
        let next = |f: &Family| {
            let i = f.members()[0].first().unwrap();
            let j = if i == 3 { 2 } else { i + 1 };
            Family::new([VertexSet::singleton(j)])
        };
        let trace = iterate_until_repeat(fam(&[&[0]]), 100, next).unwrap();
        assert_eq!((trace.transient(), trace.period()), (2, 2));
        assert_eq!(trace.history().len(), 4);
        assert_eq!(trace.state(4), &fam(&[&[2]]));
        assert_eq!(trace.state(7), &fam(&[&[3]]));
        assert_eq!(
            iterate_until_repeat(fam(&[&[0]]), 3, next),
            Err(Error::MaxIterExceeded(3))
        );
    }

    #[test]
    fn fixed_point_has_period_one() {
        let trace = iterate_until_repeat(fam(&[&[0]]), 10, |f| Ok(f.clone())).unwrap();
        assert_eq!((trace.transient(), trace.period()), (0, 1));
    }

    #[test]
    fn from_parts_validates() {
        let a = fam(&[&[0]]);
        let b = fam(&[&[1]]);
        assert!(Trace::from_parts(vec![a.clone(), b.clone()], 0, 2).is_ok());
        assert!(Trace::from_parts(vec![a.clone(), a.clone()], 0, 2).is_err());
        assert!(Trace::from_parts(vec![a, b], 1, 2).is_err());
    }
}
