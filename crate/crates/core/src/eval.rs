//! Incremental solution state for the single-flip neighbourhood.
//!
//! A [`SearchState`] tracks which facilities are open, the facility each
//! customer is served by, the inverse customer lists and the objective, so
//! that the effect of opening or closing one facility can be computed
//! without re-evaluating the whole solution.

use std::fmt;

use crate::cost::Cost;
use crate::error::{Error, Result};
use crate::instance::Instance;

/// Open/closed flag per facility.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OpenSet(Vec<bool>);

impl OpenSet {
    pub fn all(n: usize) -> Self {
        Self(vec![true; n])
    }

    pub fn none(n: usize) -> Self {
        Self(vec![false; n])
    }

    pub fn from_bools(bits: Vec<bool>) -> Self {
        Self(bits)
    }

    /// Zero-based facility indices to open; out-of-range indices panic.
    pub fn from_indices(n: usize, open: &[usize]) -> Self {
        let mut set = Self::none(n);
        for &i in open {
            set.0[i] = true;
        }
        set
    }

    /// Facility `i` is open iff bit `i` of `mask` is set.
    pub fn from_mask(n: usize, mask: u64) -> Self {
        Self((0..n).map(|i| mask >> i & 1 == 1).collect())
    }

    /// Inverse of [`OpenSet::from_mask`]; `None` for more than 64 facilities.
    pub fn to_mask(&self) -> Option<u64> {
        (self.0.len() <= 64).then(|| {
            self.0
                .iter()
                .enumerate()
                .fold(0u64, |acc, (i, &b)| acc | (u64::from(b) << i))
        })
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    #[inline]
    pub fn is_open(&self, i: usize) -> bool {
        self.0[i]
    }

    pub fn count(&self) -> usize {
        self.0.iter().filter(|&&b| b).count()
    }

    pub fn iter_open(&self) -> impl Iterator<Item = usize> + '_ {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &b)| b)
            .map(|(i, _)| i)
    }

    pub fn as_slice(&self) -> &[bool] {
        &self.0
    }

    /// Returns a copy with facility `i` toggled.
    pub fn flipped(&self, i: usize) -> Self {
        let mut next = self.clone();
        next.0[i] = !next.0[i];
        next
    }

    fn toggle(&mut self, i: usize) {
        self.0[i] = !self.0[i];
    }
}

/// Space-separated `0`/`1` tokens, facility 1 first.
impl fmt::Display for OpenSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, &b) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

/// Objective of an open set, computed from scratch.
///
/// This is the reference every incremental computation is checked against.
pub fn evaluate_full<C: Cost>(inst: &Instance<C>, open: &OpenSet) -> Result<C> {
    if open.len() != inst.n() {
        return Err(Error::OpenSetLength {
            expected: inst.n(),
            found: open.len(),
        });
    }
    let opened: Vec<usize> = open.iter_open().collect();
    if opened.is_empty() {
        return Err(Error::EmptyOpenSet);
    }
    let fixed: C = opened.iter().map(|&i| inst.opening_cost(i)).sum();
    let service: C = (0..inst.m())
        .map(|j| {
            opened
                .iter()
                .map(|&i| inst.service_cost(i, j))
                .min()
                .expect("open set is non-empty")
        })
        .sum();
    Ok(fixed + service)
}

/// A feasible solution with its assignment bookkeeping.
///
/// Every customer is served by its cheapest open facility, the lowest index
/// among equally cheap ones. At least one facility is open at all times.
#[derive(Debug, Clone)]
pub struct SearchState<'a, C = i64> {
    inst: &'a Instance<C>,
    open: OpenSet,
    open_count: usize,
    assign: Vec<usize>,
    /// `served[j] == c[assign[j]][j]`, kept contiguous for the open scan.
    served: Vec<C>,
    members: Vec<Vec<usize>>,
    /// Position of customer `j` inside `members[assign[j]]`.
    slot: Vec<usize>,
    objective: C,
}

impl<'a, C: Cost> SearchState<'a, C> {
    /// All facilities open, each customer at its cheapest facility.
    pub fn init_all_open(inst: &'a Instance<C>) -> Self {
        Self::build(inst, OpenSet::all(inst.n()))
    }

    pub fn from_open_set(inst: &'a Instance<C>, open: OpenSet) -> Result<Self> {
        if open.len() != inst.n() {
            return Err(Error::OpenSetLength {
                expected: inst.n(),
                found: open.len(),
            });
        }
        if open.count() == 0 {
            return Err(Error::EmptyOpenSet);
        }
        Ok(Self::build(inst, open))
    }

    fn build(inst: &'a Instance<C>, open: OpenSet) -> Self {
        let (n, m) = (inst.n(), inst.m());
        let mut state = Self {
            inst,
            open_count: open.count(),
            open,
            assign: vec![0; m],
            served: vec![C::zero(); m],
            members: vec![Vec::new(); n],
            slot: vec![0; m],
            objective: C::zero(),
        };
        let mut objective: C = state.open.iter_open().map(|i| inst.opening_cost(i)).sum();
        for j in 0..m {
            let (i, cost) = state.nearest_open(j);
            state.assign[j] = i;
            state.served[j] = cost;
            state.slot[j] = state.members[i].len();
            state.members[i].push(j);
            objective = objective + cost;
        }
        state.objective = objective;
        state
    }

    pub fn instance(&self) -> &'a Instance<C> {
        self.inst
    }

    pub fn objective(&self) -> C {
        self.objective
    }

    pub fn open_set(&self) -> &OpenSet {
        &self.open
    }

    pub fn open_count(&self) -> usize {
        self.open_count
    }

    pub fn is_open(&self, i: usize) -> bool {
        self.open.is_open(i)
    }

    /// Facility serving each customer.
    pub fn assignment(&self) -> &[usize] {
        &self.assign
    }

    /// Customers currently served by facility `i`, in no particular order.
    pub fn members(&self, i: usize) -> &[usize] {
        &self.members[i]
    }

    /// Objective change of flipping facility `i`, without mutating the state.
    ///
    /// `Ok(None)` means the flip would close the last open facility.
    pub fn delta_flip(&self, i: usize) -> Result<Option<C>> {
        self.check_index(i)?;
        Ok(self.delta(i))
    }

    /// [`SearchState::delta_flip`] for an index known to be in range.
    #[inline]
    pub(crate) fn delta(&self, i: usize) -> Option<C> {
        if self.open.is_open(i) {
            if self.open_count == 1 {
                return None;
            }
            let mut delta = C::zero() - self.inst.opening_cost(i);
            for &j in &self.members[i] {
                let (_, next) = self.nearest_open_except(j, i);
                delta = delta + (next - self.served[j]);
            }
            Some(delta)
        } else {
            let saving = self
                .inst
                .facility_row(i)
                .iter()
                .zip(&self.served)
                .fold(C::zero(), |acc, (&c, &s)| acc + (c - s).min(C::zero()));
            Some(self.inst.opening_cost(i) + saving)
        }
    }

    /// Flips facility `i` and repairs the assignment. Returns the objective
    /// change, which always equals what [`SearchState::delta_flip`] reported.
    pub fn apply_flip(&mut self, i: usize) -> Result<C> {
        self.check_index(i)?;
        if self.open.is_open(i) && self.open_count == 1 {
            return Err(Error::InfeasibleFlip { index: i });
        }
        Ok(self.flip(i))
    }

    pub(crate) fn flip(&mut self, i: usize) -> C {
        let before = self.objective;
        if self.open.is_open(i) {
            self.open.toggle(i);
            self.open_count -= 1;
            let mut delta = C::zero() - self.inst.opening_cost(i);
            let moved = std::mem::take(&mut self.members[i]);
            for j in moved {
                let (to, cost) = self.nearest_open(j);
                delta = delta + (cost - self.served[j]);
                self.assign[j] = to;
                self.served[j] = cost;
                self.slot[j] = self.members[to].len();
                self.members[to].push(j);
            }
            self.objective = before + delta;
        } else {
            self.open.toggle(i);
            self.open_count += 1;
            let mut delta = self.inst.opening_cost(i);
            let row = self.inst.facility_row(i);
            for (j, &c) in row.iter().enumerate() {
                let s = self.served[j];
                if c < s || (c == s && i < self.assign[j]) {
                    delta = delta + (c - s);
                    self.detach(j);
                    self.assign[j] = i;
                    self.served[j] = c;
                    self.slot[j] = self.members[i].len();
                    self.members[i].push(j);
                }
            }
            self.objective = before + delta;
        }
        self.objective - before
    }

    fn detach(&mut self, j: usize) {
        let from = self.assign[j];
        let pos = self.slot[j];
        let list = &mut self.members[from];
        list.swap_remove(pos);
        if let Some(&moved) = list.get(pos) {
            self.slot[moved] = pos;
        }
    }

    /// Cheapest open facility for customer `j`, lowest index on ties.
    fn nearest_open(&self, j: usize) -> (usize, C) {
        self.nearest_open_except(j, usize::MAX)
    }

    #[inline]
    fn nearest_open_except(&self, j: usize, skip: usize) -> (usize, C) {
        let open = self.open.as_slice();
        let mut best: Option<(usize, C)> = None;
        for (k, &c) in self.inst.customer_column(j).iter().enumerate() {
            if open[k] && k != skip && best.is_none_or(|(_, b)| c < b) {
                best = Some((k, c));
            }
        }
        best.expect("another facility is open")
    }

    fn check_index(&self, i: usize) -> Result<()> {
        if i >= self.inst.n() {
            return Err(Error::IndexOutOfRange {
                index: i,
                n: self.inst.n(),
            });
        }
        Ok(())
    }

    /// Re-derives every bookkeeping invariant from scratch.
    pub fn check_invariants(&self) -> std::result::Result<(), String> {
        let inst = self.inst;
        if self.open_count != self.open.count() || self.open_count == 0 {
            return Err(format!(
                "open_count {} vs {} set bits",
                self.open_count,
                self.open.count()
            ));
        }
        for j in 0..inst.m() {
            let i = self.assign[j];
            if !self.open.is_open(i) {
                return Err(format!("customer {j} assigned to closed facility {i}"));
            }
            let best = self
                .open
                .iter_open()
                .min_by_key(|&k| (inst.service_cost(k, j), k))
                .unwrap();
            if best != i {
                return Err(format!("customer {j} at {i}, cheapest open is {best}"));
            }
            if self.served[j] != inst.service_cost(i, j) {
                return Err(format!("served cost of customer {j} is stale"));
            }
            if self.members[i].get(self.slot[j]) != Some(&j) {
                return Err(format!("customer {j} missing from members of {i}"));
            }
        }
        let listed: usize = self.members.iter().map(Vec::len).sum();
        if listed != inst.m() {
            return Err(format!(
                "members lists hold {listed} entries, m = {}",
                inst.m()
            ));
        }
        let full = evaluate_full(inst, &self.open).map_err(|e| e.to_string())?;
        if full != self.objective {
            return Err(format!(
                "tracked objective {} vs full {}",
                self.objective, full
            ));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::{generate, ModelId, Rng64};

    fn symmetric() -> Instance<i64> {
        Instance::new(vec![1, 1], vec![vec![1, 10], vec![10, 1]]).unwrap()
    }

    fn expensive_second() -> Instance<i64> {
        Instance::new(vec![1, 10], vec![vec![1, 1], vec![1, 1]]).unwrap()
    }

    #[test]
    fn init_single_facility() {
        let inst = Instance::new(vec![5i64], vec![vec![3, 4]]).unwrap();
        let s = SearchState::init_all_open(&inst);
        assert_eq!(s.objective(), 12);
        s.check_invariants().unwrap();
    }

    #[test]
    fn init_symmetric() {
        let inst = symmetric();
        let s = SearchState::init_all_open(&inst);
        assert_eq!(s.objective(), 4);
        assert_eq!(s.assignment(), &[0, 1]);
        s.check_invariants().unwrap();
    }

    #[test]
    fn full_evaluation() {
        let inst = symmetric();
        assert_eq!(evaluate_full(&inst, &OpenSet::all(2)).unwrap(), 4);
        assert_eq!(
            evaluate_full(&inst, &OpenSet::from_indices(2, &[0])).unwrap(),
            12
        );
        assert!(matches!(
            evaluate_full(&inst, &OpenSet::none(2)),
            Err(Error::EmptyOpenSet)
        ));
        assert!(matches!(
            evaluate_full(&inst, &OpenSet::all(3)),
            Err(Error::OpenSetLength { .. })
        ));
    }

    #[test]
    fn deltas_on_symmetric_instance() {
        let inst = symmetric();
        let all = SearchState::init_all_open(&inst);
        assert_eq!(all.delta_flip(1).unwrap(), Some(8));

        let only_first = SearchState::from_open_set(&inst, OpenSet::from_indices(2, &[0])).unwrap();
        assert_eq!(only_first.delta_flip(1).unwrap(), Some(-8));
        assert_eq!(only_first.delta_flip(0).unwrap(), None);
        assert!(matches!(
            only_first.delta_flip(2),
            Err(Error::IndexOutOfRange { index: 2, n: 2 })
        ));
    }

    #[test]
    fn closing_last_facility_is_refused() {
        let inst = symmetric();
        let mut s = SearchState::from_open_set(&inst, OpenSet::from_indices(2, &[1])).unwrap();
        assert!(matches!(
            s.apply_flip(1),
            Err(Error::InfeasibleFlip { index: 1 })
        ));
        assert_eq!(s.open_count(), 1);
        s.check_invariants().unwrap();
    }

    #[test]
    fn close_expensive_facility() {
        let inst = expensive_second();
        let mut s = SearchState::init_all_open(&inst);
        assert_eq!(s.apply_flip(1).unwrap(), -10);
        assert_eq!(s.objective(), 3);
        assert_eq!(s.assignment(), &[0, 0]);
        s.check_invariants().unwrap();
    }

    #[test]
    fn reopening_restores_tied_assignment() {
        // Facility 0 and 1 tie for every customer; after closing and
        // reopening 0 the customers must return to the lower index.
        let inst = Instance::new(vec![1i64, 1], vec![vec![2, 2], vec![2, 2]]).unwrap();
        let mut s = SearchState::init_all_open(&inst);
        assert_eq!(s.assignment(), &[0, 0]);
        s.apply_flip(0).unwrap();
        assert_eq!(s.assignment(), &[1, 1]);
        s.apply_flip(0).unwrap();
        assert_eq!(s.assignment(), &[0, 0]);
        s.check_invariants().unwrap();
    }

    fn random_state<'a>(inst: &'a Instance<i64>, rng: &mut Rng64) -> SearchState<'a, i64> {
        let n = inst.n();
        let mut bits: Vec<bool> = (0..n).map(|_| rng.below(2) == 1).collect();
        if !bits.iter().any(|&b| b) {
            bits[rng.below(n as u64) as usize] = true;
        }
        SearchState::from_open_set(inst, OpenSet::from_bools(bits)).unwrap()
    }

    #[test]
    fn delta_matches_full_difference() {
        let mut rng = Rng64::new(17);
        for model in ModelId::all() {
            for case in 0..250 {
                let n = 1 + rng.below(30) as usize;
                let m = 1 + rng.below(60) as usize;
                let inst = generate::<i64>(model, n, m, case).unwrap();
                let s = random_state(&inst, &mut rng);
                let i = rng.below(n as u64) as usize;
                let current = evaluate_full(&inst, s.open_set()).unwrap();
                let expected = evaluate_full(&inst, &s.open_set().flipped(i))
                    .ok()
                    .map(|v| v - current);
                assert_eq!(s.delta_flip(i).unwrap(), expected);
            }
        }
    }

    #[test]
    fn double_flip_is_an_involution() {
        let mut rng = Rng64::new(5);
        for case in 0..100 {
            let model = ModelId::all()[case % 4];
            let n = 2 + rng.below(10) as usize;
            let m = 1 + rng.below(20) as usize;
            let inst = generate::<i64>(model, n, m, case as u64).unwrap();
            let mut s = random_state(&inst, &mut rng);
            let i = rng.below(n as u64) as usize;
            let (open, assign, obj) =
                (s.open_set().clone(), s.assignment().to_vec(), s.objective());
            if s.apply_flip(i).is_err() {
                continue;
            }
            s.apply_flip(i).unwrap();
            assert_eq!(s.open_set(), &open);
            assert_eq!(s.assignment(), &assign[..]);
            assert_eq!(s.objective(), obj);
            s.check_invariants().unwrap();
        }
    }

    #[test]
    fn random_walk_keeps_invariants() {
        let mut rng = Rng64::new(8);
        for model in ModelId::all() {
            let inst = generate::<i64>(model, 12, 40, 3).unwrap();
            let mut s = SearchState::init_all_open(&inst);
            for _ in 0..300 {
                let i = rng.below(12) as usize;
                match s.delta_flip(i).unwrap() {
                    Some(d) => {
                        let before = s.objective();
                        assert_eq!(s.apply_flip(i).unwrap(), d);
                        assert_eq!(s.objective(), before + d);
                    }
                    None => assert!(s.apply_flip(i).is_err()),
                }
                s.check_invariants().unwrap();
            }
        }
    }

    #[test]
    fn narrower_scalar_agrees() {
        let wide = generate::<i64>(ModelId::Model1, 9, 25, 1).unwrap();
        let narrow = generate::<i32>(ModelId::Model1, 9, 25, 1).unwrap();
        let mut a = SearchState::init_all_open(&wide);
        let mut b = SearchState::init_all_open(&narrow);
        for i in [3, 1, 4, 1, 5] {
            assert_eq!(a.apply_flip(i).unwrap(), b.apply_flip(i).unwrap() as i64);
        }
        assert_eq!(a.objective(), b.objective() as i64);
    }

    #[test]
    fn open_set_helpers() {
        let s = OpenSet::from_mask(4, 0b1010);
        assert_eq!(s.to_string(), "0 1 0 1");
        assert_eq!(s.to_mask(), Some(0b1010));
        assert_eq!(s.iter_open().collect::<Vec<_>>(), vec![1, 3]);
        assert_eq!(s.flipped(0).count(), 3);
    }
}
