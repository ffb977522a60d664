//! Sparse exact linear algebra: the incremental eliminator that underlies
//! basis construction, membership tests, and rank computations.
//!
//! Vectors are sparse over `u32` coordinates with [`CycloScalar`] entries.
//! The [`Eliminator`] keeps a reduced row-echelon span and can report, for a
//! dependent vector, the exact combination of previously accepted vectors
//! that produces it. Pivoting is positional (smallest coordinate wins), so
//! results are deterministic and independent of scalar magnitudes.

use crate::cyclo::{CycloField, CycloScalar};
use std::collections::BTreeMap;

/// Sorted sparse vector; indices strictly increase and entries are nonzero.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SparseVec {
    entries: Vec<(u32, CycloScalar)>,
}

impl SparseVec {
    pub fn zero() -> Self {
        SparseVec {
            entries: Vec::new(),
        }
    }

    pub fn singleton(idx: u32, c: CycloScalar) -> Self {
        SparseVec {
            entries: vec![(idx, c)],
        }
    }

    /// Build from entries already in strictly increasing index order with
    /// nonzero scalars.
    pub fn from_sorted(entries: Vec<(u32, CycloScalar)>) -> Self {
        debug_assert!(entries.windows(2).all(|w| w[0].0 < w[1].0));
        SparseVec { entries }
    }

    /// Build from unsorted, possibly repeated entries.
    pub fn collect(field: &CycloField, it: impl IntoIterator<Item = (u32, CycloScalar)>) -> Self {
        let mut map: BTreeMap<u32, CycloScalar> = BTreeMap::new();
        for (i, c) in it {
            match map.entry(i) {
                std::collections::btree_map::Entry::Vacant(e) => {
                    e.insert(c);
                }
                std::collections::btree_map::Entry::Occupied(mut e) => {
                    field.add_assign(e.get_mut(), &c);
                }
            }
        }
        SparseVec {
            entries: map
                .into_iter()
                .filter(|(_, c)| !field.is_zero(c))
                .collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[(u32, CycloScalar)] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<(u32, CycloScalar)> {
        self.entries
    }

    pub fn get(&self, idx: u32) -> Option<&CycloScalar> {
        self.entries
            .binary_search_by_key(&idx, |(i, _)| *i)
            .ok()
            .map(|p| &self.entries[p].1)
    }

    /// Entry with the smallest coordinate.
    pub fn lead(&self) -> Option<(u32, &CycloScalar)> {
        self.entries.first().map(|(i, c)| (*i, c))
    }

    pub fn scale(&mut self, field: &CycloField, c: &CycloScalar) {
        if field.is_zero(c) {
            self.entries.clear();
            return;
        }
        for (_, x) in &mut self.entries {
            *x = field.mul(x, c);
        }
    }

    pub fn scaled(&self, field: &CycloField, c: &CycloScalar) -> Self {
        let mut out = self.clone();
        out.scale(field, c);
        out
    }

    /// `self += c * other` (merge of two sorted lists).
    pub fn add_scaled(&mut self, field: &CycloField, other: &SparseVec, c: &CycloScalar) {
        if field.is_zero(c) || other.is_zero() {
            return;
        }
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let (mut i, mut j) = (0, 0);
        while i < self.entries.len() && j < other.entries.len() {
            let (ia, _) = self.entries[i];
            let (ib, cb) = &other.entries[j];
            match ia.cmp(ib) {
                std::cmp::Ordering::Less => {
                    out.push(self.entries[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push((*ib, field.mul(cb, c)));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let s = field.add(&self.entries[i].1, &field.mul(cb, c));
                    if !field.is_zero(&s) {
                        out.push((ia, s));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.entries[i..]);
        for (ib, cb) in &other.entries[j..] {
            out.push((*ib, field.mul(cb, c)));
        }
        self.entries = out;
    }

    pub fn add(&mut self, field: &CycloField, other: &SparseVec) {
        self.add_scaled(field, other, &field.one());
    }

    /// Re-index entries through `f`; `f` must be strictly increasing.
    pub fn map_index(&self, f: impl Fn(u32) -> u32) -> SparseVec {
        let entries: Vec<(u32, CycloScalar)> = self
            .entries
            .iter()
            .map(|(i, c)| (f(*i), c.clone()))
            .collect();
        debug_assert!(entries.windows(2).all(|w| w[0].0 < w[1].0));
        SparseVec { entries }
    }
}

/// Result of feeding one vector to the eliminator.
#[derive(Clone, Debug)]
pub enum AddOutcome {
    /// The vector enlarged the span; it is now (after normalization) a row.
    Independent,
    /// The vector already lay in the span; `combo` writes it over the ids of
    /// previously accepted independent vectors.
    Dependent { combo: SparseVec },
}

impl AddOutcome {
    pub fn is_independent(&self) -> bool {
        matches!(self, AddOutcome::Independent)
    }
}

struct Row {
    vec: SparseVec,
    /// Combination over input ids reproducing `vec`; empty when not tracking.
    expr: SparseVec,
}

/// Incremental reduced-row-echelon span with optional expression tracking.
pub struct Eliminator {
    rows: Vec<Row>,
    pivot_rows: BTreeMap<u32, usize>,
    pivot_ids: Vec<u32>,
    next_id: u32,
    track: bool,
}

impl Eliminator {
    pub fn new(track_expressions: bool) -> Self {
        Eliminator {
            rows: Vec::new(),
            pivot_rows: BTreeMap::new(),
            pivot_ids: Vec::new(),
            next_id: 0,
            track: track_expressions,
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Ids (insertion order) of the inputs that became pivots.
    pub fn pivot_ids(&self) -> &[u32] {
        &self.pivot_ids
    }

    pub fn pivot_columns(&self) -> impl Iterator<Item = u32> + '_ {
        self.pivot_rows.keys().copied()
    }

    /// The reduced rows ordered by pivot column: a canonical basis of the
    /// span. Because every row is 1 at its own pivot and 0 at all others, a
    /// member vector's coordinates over this basis are just its values at
    /// the pivot columns.
    pub fn canonical_rows(&self) -> Vec<&SparseVec> {
        self.pivot_rows.values().map(|&r| &self.rows[r].vec).collect()
    }

    /// Reduce `v` against the current span without inserting it. Returns the
    /// residual and (when tracking) the combination over accepted input ids
    /// accounting for the reduced part: `v = combo . inputs + residual`.
    pub fn reduce(&self, field: &CycloField, v: &SparseVec) -> (SparseVec, SparseVec) {
        let mut res = v.clone();
        let mut combo = SparseVec::zero();
        let mut i = 0;
        while i < res.entries.len() {
            let col = res.entries[i].0;
            if let Some(&r) = self.pivot_rows.get(&col) {
                let c = res.entries[i].1.clone();
                res.add_scaled(field, &self.rows[r].vec, &field.neg(&c));
                if self.track {
                    combo.add_scaled(field, &self.rows[r].expr, &c);
                }
            } else {
                i += 1;
            }
        }
        (res, combo)
    }

    pub fn contains(&self, field: &CycloField, v: &SparseVec) -> bool {
        self.reduce(field, v).0.is_zero()
    }

    /// Feed the next input vector; returns its id and the outcome.
    pub fn add(&mut self, field: &CycloField, v: &SparseVec) -> (u32, AddOutcome) {
        let id = self.next_id;
        self.next_id += 1;
        let (mut res, combo) = self.reduce(field, v);
        if res.is_zero() {
            return (id, AddOutcome::Dependent { combo });
        }
        let (col, lead) = {
            let (c, l) = res.lead().unwrap();
            (c, l.clone())
        };
        let inv = field.inv(&lead).expect("nonzero lead");
        res.scale(field, &inv);
        let expr = if self.track {
            let mut e = SparseVec::singleton(id, field.one());
            e.add_scaled(field, &combo, &field.from_integer(-1));
            e.scale(field, &inv);
            e
        } else {
            SparseVec::zero()
        };
        // back-substitute into every older row so the span stays fully reduced
        for r in 0..self.rows.len() {
            if let Some(c) = self.rows[r].vec.get(col).cloned() {
                let nc = field.neg(&c);
                self.rows[r].vec.add_scaled(field, &res, &nc);
                if self.track {
                    let expr_delta = expr.scaled(field, &nc);
                    self.rows[r].expr.add(field, &expr_delta);
                }
            }
        }
        self.pivot_rows.insert(col, self.rows.len());
        self.rows.push(Row { vec: res, expr });
        self.pivot_ids.push(id);
        (id, AddOutcome::Independent)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclo::{CycloField, RootSpec};
    use proptest::prelude::*;

    fn sv(field: &CycloField, entries: &[(u32, i64)]) -> SparseVec {
        SparseVec::collect(
            field,
            entries.iter().map(|(i, c)| (*i, field.from_integer(*c))),
        )
    }

    #[test]
    fn collect_merges_and_drops_zeros() {
        let f = CycloField::new(1).unwrap();
        let v = SparseVec::collect(
            &f,
            vec![
                (3, f.from_integer(2)),
                (1, f.from_integer(5)),
                (3, f.from_integer(-2)),
            ],
        );
        assert_eq!(v.len(), 1);
        assert_eq!(v.lead().unwrap().0, 1);
    }

    #[test]
    fn add_scaled_cancels() {
        let f = CycloField::new(1).unwrap();
        let mut a = sv(&f, &[(0, 1), (2, 3)]);
        let b = sv(&f, &[(0, 1), (1, 1)]);
        a.add_scaled(&f, &b, &f.from_integer(-1));
        assert_eq!(a, sv(&f, &[(1, -1), (2, 3)]));
    }

    #[test]
    fn eliminator_tracks_dependencies() {
        let f = CycloField::new(1).unwrap();
        let mut el = Eliminator::new(true);
        let (id0, o0) = el.add(&f, &sv(&f, &[(0, 2), (1, 1)]));
        let (id1, o1) = el.add(&f, &sv(&f, &[(1, 3)]));
        assert!(o0.is_independent() && o1.is_independent());
        // 5*(first) - (second) should come back as exactly that combination
        let mut probe = sv(&f, &[(0, 10), (1, 5)]);
        probe.add_scaled(&f, &sv(&f, &[(1, 3)]), &f.from_integer(-1));
        let (_, outcome) = el.add(&f, &probe);
        match outcome {
            AddOutcome::Dependent { combo } => {
                assert!(f.eq(combo.get(id0).unwrap(), &f.from_integer(5)));
                assert!(f.eq(combo.get(id1).unwrap(), &f.from_integer(-1)));
            }
            AddOutcome::Independent => panic!("expected dependence"),
        }
        assert_eq!(el.rank(), 2);
        assert_eq!(el.pivot_ids(), &[0, 1]);
    }

    #[test]
    fn membership_without_insertion() {
        let f = CycloField::new(4).unwrap();
        let i = f.root(RootSpec::new(1, 4).unwrap()).unwrap();
        let mut el = Eliminator::new(false);
        let mut v = SparseVec::singleton(0, f.one());
        v.add_scaled(&f, &SparseVec::singleton(2, i.clone()), &f.one());
        el.add(&f, &v);
        assert!(el.contains(&f, &v.scaled(&f, &i)));
        assert!(!el.contains(&f, &SparseVec::singleton(2, f.one())));
        assert_eq!(el.rank(), 1);
    }

    fn dense_rank_q(rows: &[Vec<i64>]) -> usize {
        // floating-point elimination; fine as a cross-check on tiny integer matrices
        let mut m: Vec<Vec<f64>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| x as f64).collect())
            .collect();
        let (nr, nc) = (m.len(), m.first().map(|r| r.len()).unwrap_or(0));
        let mut rank = 0;
        for col in 0..nc {
            let piv = (rank..nr).find(|&r| m[r][col].abs() > 1e-7);
            if let Some(p) = piv {
                m.swap(rank, p);
                let d = m[rank][col];
                for r in 0..nr {
                    if r != rank && m[r][col].abs() > 1e-12 {
                        let fct = m[r][col] / d;
                        for c in 0..nc {
                            let delta = fct * m[rank][c];
                            m[r][c] -= delta;
                        }
                    }
                }
                rank += 1;
            }
        }
        rank
    }

    proptest! {
        #[test]
        fn rank_matches_dense_elimination(
            raw in proptest::collection::vec(
                proptest::collection::vec(-3i64..4, 5),
                1..7,
            )
        ) {
            let f = CycloField::new(1).unwrap();
            let mut el = Eliminator::new(true);
            for row in &raw {
                let entries: Vec<(u32, i64)> = row
                    .iter()
                    .enumerate()
                    .map(|(i, &c)| (i as u32, c))
                    .collect();
                el.add(&f, &sv(&f, &entries));
            }
            prop_assert_eq!(el.rank(), dense_rank_q(&raw));
        }

        #[test]
        fn dependent_combo_reconstructs_input(
            raw in proptest::collection::vec(
                proptest::collection::vec(-2i64..3, 4),
                1..6,
            )
        ) {
            let f = CycloField::new(1).unwrap();
            let mut el = Eliminator::new(true);
            let mut inputs: Vec<SparseVec> = Vec::new();
            for row in &raw {
                let entries: Vec<(u32, i64)> = row
                    .iter()
                    .enumerate()
                    .map(|(i, &c)| (i as u32, c))
                    .collect();
                let v = sv(&f, &entries);
                let (_, outcome) = el.add(&f, &v);
                if let AddOutcome::Dependent { combo } = outcome {
                    let mut rebuilt = SparseVec::zero();
                    for (id, c) in combo.entries() {
                        rebuilt.add_scaled(&f, &inputs[*id as usize], c);
                    }
                    prop_assert_eq!(&rebuilt, &v);
                }
                inputs.push(v);
            }
        }
    }
}
