//! Degree-by-degree construction of the Nichols algebra B(V).
//!
//! The defining criterion is dual: an element of positive degree is zero
//! exactly when all skew derivations `<y_i, ->` kill it. The tower exploits
//! the `N^n` grading: each multidegree block is built independently, a word
//! is tested for independence through the stacked coordinates of its `n`
//! derivation images in the already-finished lower blocks, and the pivot
//! words of a deterministic exact elimination become the basis.

use crate::braiding::{BraidedSpace, MultiDegree};
use crate::cyclo::CycloScalar;
use crate::free::{self, BracketKind, FreeElement, Word};
use crate::linalg::{AddOutcome, Eliminator, SparseVec};
use crate::{Error, Result};
use std::collections::BTreeMap;

/// One multidegree block of the tower.
#[derive(Clone, Debug)]
struct Block {
    /// Basis words, increasing lexicographic order.
    basis: Vec<Word>,
    /// `deriv[b][i]` = coordinates of `<y_i, basis[b]>` in the block one
    /// step down in direction `i` (empty when letter `i` is absent).
    deriv: Vec<Vec<SparseVec>>,
    /// Normal forms of every word `b x_j` with `b` a basis word one step
    /// down; this table is what drives all products.
    red: BTreeMap<Word, SparseVec>,
    /// Words found dependent, with their expression over the basis
    /// (each entry is the relation `word - combo = 0`).
    kernel: Vec<(Word, SparseVec)>,
}

/// A general element of B(V): coordinates per multidegree block.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MultiVec {
    comps: BTreeMap<MultiDegree, SparseVec>,
}

impl MultiVec {
    pub fn zero() -> Self {
        MultiVec {
            comps: BTreeMap::new(),
        }
    }

    pub fn single(deg: MultiDegree, coords: SparseVec) -> Self {
        let mut comps = BTreeMap::new();
        if !coords.is_zero() {
            comps.insert(deg, coords);
        }
        MultiVec { comps }
    }

    pub fn is_zero(&self) -> bool {
        self.comps.is_empty()
    }

    pub fn components(&self) -> impl Iterator<Item = (&MultiDegree, &SparseVec)> {
        self.comps.iter()
    }

    pub fn coords_at(&self, deg: &MultiDegree) -> Option<&SparseVec> {
        self.comps.get(deg)
    }

    /// The unique component when there is exactly one.
    pub fn homogeneous(&self) -> Option<(&MultiDegree, &SparseVec)> {
        if self.comps.len() == 1 {
            self.comps.iter().next()
        } else {
            None
        }
    }

    /// Install a block's coordinates; the degree must not be present yet.
    pub fn insert_block(&mut self, deg: MultiDegree, coords: SparseVec) {
        if coords.is_zero() {
            return;
        }
        let prev = self.comps.insert(deg, coords);
        debug_assert!(prev.is_none(), "block already present");
    }

    pub fn add_scaled(
        &mut self,
        field: &crate::cyclo::CycloField,
        other: &MultiVec,
        c: &CycloScalar,
    ) {
        for (deg, sv) in &other.comps {
            let entry = self.comps.entry(deg.clone()).or_insert_with(SparseVec::zero);
            entry.add_scaled(field, sv, c);
        }
        self.comps.retain(|_, sv| !sv.is_zero());
    }

    pub fn scale(&mut self, field: &crate::cyclo::CycloField, c: &CycloScalar) {
        if field.is_zero(c) {
            self.comps.clear();
            return;
        }
        for sv in self.comps.values_mut() {
            sv.scale(field, c);
        }
    }
}

/// Whether a power was observed to vanish within the decidable range.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Nilpotency {
    /// `u^k = 0` and `u^j != 0` for `j < k`.
    Vanishes(u32),
    /// No power vanished; nonvanishing verified for all `k` up to the
    /// carried value (limited by the requested bound or by the cap).
    NotWithinCap(u32),
}

/// Total dimension verdict for a capped tower.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TotalDim {
    Finite(usize),
    /// No zero-dimensional degree was reached by the cap; nothing is claimed
    /// beyond it.
    InfiniteBeyondCap(u32),
}

impl TotalDim {
    pub fn finite(&self) -> Option<usize> {
        match self {
            TotalDim::Finite(d) => Some(*d),
            TotalDim::InfiniteBeyondCap(_) => None,
        }
    }
}

/// The capped Nichols algebra: basis, reduction tables, and derivation data
/// for every multidegree of total degree up to `cap`.
#[derive(Clone, Debug)]
pub struct NicholsTower {
    space: BraidedSpace,
    cap: u32,
    blocks: BTreeMap<MultiDegree, Block>,
    dims: Vec<usize>,
}

impl NicholsTower {
    /// Build the tower degree by degree. Once some total degree comes out
    /// zero-dimensional every higher degree is zero too (the algebra is
    /// graded and generated in degree 1), so construction stops there.
    pub fn build(space: BraidedSpace, cap: u32) -> Result<Self> {
        let f = space.field().clone();
        let n = space.n();
        let mut blocks: BTreeMap<MultiDegree, Block> = BTreeMap::new();
        let mut red0 = BTreeMap::new();
        red0.insert(Word::empty(), SparseVec::singleton(0, f.one()));
        blocks.insert(
            MultiDegree::zero(n),
            Block {
                basis: vec![Word::empty()],
                deriv: vec![vec![SparseVec::zero(); n]],
                red: red0,
                kernel: Vec::new(),
            },
        );
        let mut dims = vec![1usize];
        for d in 1..=cap {
            let mut total = 0usize;
            for alpha in MultiDegree::all_of_total(n, d) {
                let block = build_block(&space, &blocks, &alpha)?;
                total += block.basis.len();
                blocks.insert(alpha, block);
            }
            dims.push(total);
            if total == 0 {
                dims.resize(cap as usize + 1, 0);
                break;
            }
        }
        Ok(NicholsTower {
            space,
            cap,
            blocks,
            dims,
        })
    }

    pub fn space(&self) -> &BraidedSpace {
        &self.space
    }

    pub fn cap(&self) -> u32 {
        self.cap
    }

    /// Dimensions per total degree, `0..=cap`.
    pub fn hilbert(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self, d: u32) -> usize {
        self.dims.get(d as usize).copied().unwrap_or(0)
    }

    pub fn total_dim(&self) -> TotalDim {
        match self.dims.iter().position(|&d| d == 0) {
            Some(z) => TotalDim::Finite(self.dims[..z].iter().sum()),
            None => TotalDim::InfiniteBeyondCap(self.cap),
        }
    }

    /// Largest degree with a nonzero component, when finiteness is decided.
    pub fn top_degree(&self) -> Option<u32> {
        match self.total_dim() {
            TotalDim::Finite(_) => Some(self.dims.iter().rposition(|&d| d > 0).unwrap() as u32),
            TotalDim::InfiniteBeyondCap(_) => None,
        }
    }

    pub fn block_basis(&self, alpha: &MultiDegree) -> Option<&[Word]> {
        self.blocks.get(alpha).map(|b| b.basis.as_slice())
    }

    /// Basis words of a whole total degree, grouped by multidegree
    /// (ascending), words ascending within each block.
    pub fn basis_at_degree(&self, d: u32) -> Vec<(MultiDegree, Vec<Word>)> {
        self.blocks
            .iter()
            .filter(|(deg, b)| deg.total() == d && !b.basis.is_empty())
            .map(|(deg, b)| (deg.clone(), b.basis.clone()))
            .collect()
    }

    /// Relations discovered in one block: pairs `(word, combination)` with
    /// `word = combination . basis` in B(V).
    pub fn kernel_at(&self, alpha: &MultiDegree) -> Vec<(Word, FreeElement)> {
        let Some(block) = self.blocks.get(alpha) else {
            return Vec::new();
        };
        block
            .kernel
            .iter()
            .map(|(w, combo)| {
                let elem = FreeElement::collect(
                    &self.space,
                    combo
                        .entries()
                        .iter()
                        .map(|(i, c)| (block.basis[*i as usize].clone(), c.clone())),
                );
                (w.clone(), elem)
            })
            .collect()
    }

    fn check_degree(&self, d: u32) -> Result<()> {
        if d > self.cap {
            Err(Error::CapExceeded {
                degree: d,
                cap: self.cap,
            })
        } else {
            Ok(())
        }
    }

    /// Coordinates of a single word in its block basis.
    pub fn nf_word(&self, w: &Word) -> Result<(MultiDegree, SparseVec)> {
        let n = self.space.n();
        if let Some(&bad) = w.letters().iter().find(|&&l| l as usize >= n) {
            return Err(Error::InvalidArgument(format!(
                "letter {} out of range for rank {n}",
                bad as u32 + 1
            )));
        }
        self.check_degree(w.len() as u32)?;
        let f = self.space.field();
        let mut deg = MultiDegree::zero(n);
        let mut coords = SparseVec::singleton(0, f.one());
        for &l in w.letters() {
            let (ndeg, ncoords) = self.append_letter_coords(&deg, &coords, l as usize)?;
            deg = ndeg;
            coords = ncoords;
            if coords.is_zero() {
                return Ok((w.degree(n), SparseVec::zero()));
            }
        }
        Ok((deg, coords))
    }

    fn append_letter_coords(
        &self,
        beta: &MultiDegree,
        coords: &SparseVec,
        j: usize,
    ) -> Result<(MultiDegree, SparseVec)> {
        let target = beta.add_unit(j);
        self.check_degree(target.total())?;
        if coords.is_zero() {
            return Ok((target, SparseVec::zero()));
        }
        let (Some(tb), Some(sb)) = (self.blocks.get(&target), self.blocks.get(beta)) else {
            return Ok((target, SparseVec::zero()));
        };
        let f = self.space.field();
        let mut out = SparseVec::zero();
        for (bidx, c) in coords.entries() {
            let mut key = sb.basis[*bidx as usize].0.clone();
            key.push(j as u8);
            let r = tb
                .red
                .get(&Word(key))
                .expect("reduction entry for basis-word extension");
            out.add_scaled(f, r, c);
        }
        Ok((target, out))
    }

    /// Normal form of a free element (all components must fit the cap).
    pub fn nf(&self, u: &FreeElement) -> Result<MultiVec> {
        let f = self.space.field();
        let mut out = MultiVec::zero();
        for (w, c) in u.terms() {
            let (deg, coords) = self.nf_word(w)?;
            out.add_scaled(f, &MultiVec::single(deg, coords), c);
        }
        Ok(out)
    }

    pub fn is_zero_elem(&self, u: &FreeElement) -> Result<bool> {
        Ok(self.nf(u)?.is_zero())
    }

    /// Right-multiply a reduced element by one generator.
    pub fn append_letter(&self, v: &MultiVec, j: usize) -> Result<MultiVec> {
        let f = self.space.field();
        let mut out = MultiVec::zero();
        for (beta, coords) in v.components() {
            let (deg, nc) = self.append_letter_coords(beta, coords, j)?;
            out.add_scaled(f, &MultiVec::single(deg, nc), &f.one());
        }
        Ok(out)
    }

    pub fn append_word(&self, v: &MultiVec, w: &Word) -> Result<MultiVec> {
        let mut acc = v.clone();
        for &l in w.letters() {
            acc = self.append_letter(&acc, l as usize)?;
            if acc.is_zero() {
                break;
            }
        }
        Ok(acc)
    }

    /// Right-multiply a reduced element by a free element.
    pub fn mul_free(&self, v: &MultiVec, u: &FreeElement) -> Result<MultiVec> {
        let f = self.space.field();
        let mut out = MultiVec::zero();
        for (w, c) in u.terms() {
            let t = self.append_word(v, w)?;
            out.add_scaled(f, &t, c);
        }
        Ok(out)
    }

    /// `<y_i, ->` on a reduced element, using the stored derivation data.
    pub fn derive_nf(&self, v: &MultiVec, i: usize) -> Result<MultiVec> {
        let n = self.space.n();
        if i >= n {
            return Err(Error::InvalidArgument(format!(
                "derivation index {i} out of range for rank {n}"
            )));
        }
        let f = self.space.field();
        let mut out = MultiVec::zero();
        for (beta, coords) in v.components() {
            if beta.get(i) == 0 {
                continue;
            }
            let block = self.blocks.get(beta).expect("component block exists");
            let target = beta.checked_sub(&MultiDegree::unit(n, i)).unwrap();
            let mut acc = SparseVec::zero();
            for (bidx, c) in coords.entries() {
                acc.add_scaled(f, &block.deriv[*bidx as usize][i], c);
            }
            out.add_scaled(f, &MultiVec::single(target, acc), &f.one());
        }
        Ok(out)
    }

    /// Iterated pairing `<y_{i_1} ... y_{i_k}, u>`, rightmost acting first.
    pub fn pair(&self, yword: &[usize], u: &FreeElement) -> Result<MultiVec> {
        let mut acc = self.nf(u)?;
        for &i in yword.iter().rev() {
            acc = self.derive_nf(&acc, i)?;
        }
        Ok(acc)
    }

    /// Reconstruct the canonical free representative of a reduced element.
    pub fn to_free(&self, v: &MultiVec) -> FreeElement {
        FreeElement::collect(
            &self.space,
            v.components().flat_map(|(deg, coords)| {
                let basis = self
                    .blocks
                    .get(deg)
                    .map(|b| b.basis.as_slice())
                    .unwrap_or(&[]);
                coords
                    .entries()
                    .iter()
                    .map(move |(i, c)| (basis[*i as usize].clone(), c.clone()))
                    .collect::<Vec<_>>()
            }),
        )
    }

    /// Bracket of two reduced elements, computed in B(V). Both sides are
    /// expanded over their multidegree components so the braiding scalar is
    /// taken per homogeneous pair.
    pub fn bracket_nf(
        &self,
        kind: BracketKind,
        u: &MultiVec,
        v: &MultiVec,
    ) -> Result<MultiVec> {
        let f = self.space.field();
        let mut out = MultiVec::zero();
        for (du, cu) in u.components() {
            let pu = MultiVec::single(du.clone(), cu.clone());
            let fu = self.to_free(&pu);
            for (dv, cv) in v.components() {
                let pv = MultiVec::single(dv.clone(), cv.clone());
                let fv = self.to_free(&pv);
                let uv = self.mul_free(&pu, &fv)?;
                let vu = self.mul_free(&pv, &fu)?;
                match kind {
                    BracketKind::Std => {
                        let p = self.space.bicharacter(dv, du)?;
                        let mut t = vu;
                        t.add_scaled(f, &uv, &f.neg(&p));
                        out.add_scaled(f, &t, &f.one());
                    }
                    BracketKind::Minus => {
                        let mut t = uv;
                        t.add_scaled(f, &vu, &f.from_integer(-1));
                        out.add_scaled(f, &t, &f.one());
                    }
                    BracketKind::C => {
                        let p = self.space.bicharacter(du, dv)?;
                        let mut t = uv;
                        t.add_scaled(f, &vu, &f.neg(&p));
                        out.add_scaled(f, &t, &f.one());
                    }
                }
            }
        }
        Ok(out)
    }

    /// Test whether `w . u = 0` in B(V) where the product may overshoot the
    /// cap by exactly one degree: the product vanishes iff all its
    /// derivations (which live inside the cap) vanish.
    pub fn product_is_zero(&self, w: &MultiVec, u: &FreeElement) -> Result<bool> {
        if w.is_zero() || u.is_zero() {
            return Ok(true);
        }
        let f = self.space.field();
        let n = self.space.n();
        let du = u
            .homogeneous_degree(&self.space)
            .ok_or_else(|| Error::InvalidArgument("product test needs homogeneous u".into()))?;
        let (dw, _) = w
            .homogeneous()
            .ok_or_else(|| Error::InvalidArgument("product test needs homogeneous w".into()))?;
        let total = dw.total() + du.total();
        if total <= self.cap {
            return Ok(self.mul_free(w, u)?.is_zero());
        }
        if total != self.cap + 1 {
            return Err(Error::CapExceeded {
                degree: total,
                cap: self.cap,
            });
        }
        let dw = dw.clone();
        for i in 0..n {
            // <y_i, w u> = <y_i, w> u + chi(e_i, deg w)^{-1} w <y_i, u>
            let mut v = self.mul_free(&self.derive_nf(w, i)?, u)?;
            let twist = f.inv(&self.space.bicharacter(&MultiDegree::unit(n, i), &dw)?)?;
            let t2 = self.mul_free(w, &free::derive(&self.space, i, u)?)?;
            v.add_scaled(f, &t2, &twist);
            if !v.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Smallest `k <= kmax` with `u^k = 0`, for homogeneous `u`. The highest
    /// decidable power is `floor((cap+1)/deg u)` thanks to the derivation
    /// criterion at the boundary; beyond that the verified range is
    /// reported, never a claim.
    pub fn power_nilpotency(&self, u: &FreeElement, kmax: u32) -> Result<Nilpotency> {
        let du = u
            .homogeneous_degree(&self.space)
            .ok_or_else(|| Error::InvalidArgument("nilpotency probe needs homogeneous u".into()))?;
        let t = du.total();
        if t == 0 {
            return Err(Error::InvalidArgument(
                "nilpotency of a degree-0 element is not meaningful".into(),
            ));
        }
        if t > self.cap + 1 {
            return Err(Error::CapExceeded {
                degree: t,
                cap: self.cap,
            });
        }
        let f = self.space.field();
        let mut cur = MultiVec::single(
            MultiDegree::zero(self.space.n()),
            SparseVec::singleton(0, f.one()),
        );
        for k in 1..=kmax {
            let target = k * t;
            if target <= self.cap {
                cur = self.mul_free(&cur, u)?;
                if cur.is_zero() {
                    return Ok(Nilpotency::Vanishes(k));
                }
            } else if target == self.cap + 1 {
                if self.product_is_zero(&cur, u)? {
                    return Ok(Nilpotency::Vanishes(k));
                }
                return Ok(Nilpotency::NotWithinCap(k));
            } else {
                return Ok(Nilpotency::NotWithinCap(k - 1));
            }
        }
        Ok(Nilpotency::NotWithinCap(kmax))
    }

    /// Versioned JSON description: dims, per-block basis words, and the
    /// relations with exact scalar literals. Deterministic.
    pub fn to_json(&self) -> serde_json::Value {
        let f = self.space.field();
        let blocks: Vec<serde_json::Value> = self
            .blocks
            .iter()
            .filter(|(deg, b)| !(deg.total() > 0 && b.basis.is_empty() && b.kernel.is_empty()))
            .map(|(deg, b)| {
                serde_json::json!({
                    "degree": deg,
                    "basis": b.basis.iter().map(|w| w.to_string()).collect::<Vec<_>>(),
                    "relations": b.kernel.iter().map(|(w, combo)| {
                        serde_json::json!({
                            "word": w.to_string(),
                            "combo": combo.entries().iter().map(|(i, c)| {
                                serde_json::json!([i, f.to_literal(c)])
                            }).collect::<Vec<_>>(),
                        })
                    }).collect::<Vec<_>>(),
                })
            })
            .collect();
        serde_json::json!({
            "tower_version": 1,
            "n": self.space.n(),
            "conductor": f.conductor(),
            "cap": self.cap,
            "dims": self.dims,
            "blocks": blocks,
        })
    }
}

fn build_block(
    space: &BraidedSpace,
    blocks: &BTreeMap<MultiDegree, Block>,
    alpha: &MultiDegree,
) -> Result<Block> {
    let f = space.field();
    let n = space.n();
    // candidates: every basis word one step down, extended by the missing letter
    let mut cands: Vec<(Word, usize, u32)> = Vec::new();
    for j in 0..n {
        if alpha.get(j) == 0 {
            continue;
        }
        let parent_key = alpha.checked_sub(&MultiDegree::unit(n, j)).unwrap();
        let parent = blocks.get(&parent_key).expect("parent block built");
        for (bi, b) in parent.basis.iter().enumerate() {
            let mut w = b.0.clone();
            w.push(j as u8);
            cands.push((Word(w), j, bi as u32));
        }
    }
    cands.sort();
    // stacked coordinate layout over the n derivation targets
    let mut offsets = vec![0u32; n];
    {
        let mut off = 0u32;
        for (i, o) in offsets.iter_mut().enumerate() {
            *o = off;
            if alpha.get(i) > 0 {
                let key = alpha.checked_sub(&MultiDegree::unit(n, i)).unwrap();
                off += blocks.get(&key).expect("derivation block built").basis.len() as u32;
            }
        }
    }
    let mut elim = Eliminator::new(true);
    let mut basis: Vec<Word> = Vec::new();
    let mut deriv: Vec<Vec<SparseVec>> = Vec::new();
    let mut red: BTreeMap<Word, SparseVec> = BTreeMap::new();
    let mut kernel: Vec<(Word, SparseVec)> = Vec::new();
    for (w, j, bi) in cands {
        let parent_key = alpha.checked_sub(&MultiDegree::unit(n, j)).unwrap();
        let parent = blocks.get(&parent_key).unwrap();
        let mut parts: Vec<SparseVec> = Vec::with_capacity(n);
        for i in 0..n {
            if alpha.get(i) == 0 {
                parts.push(SparseVec::zero());
                continue;
            }
            let ti_key = alpha.checked_sub(&MultiDegree::unit(n, i)).unwrap();
            let ti = blocks.get(&ti_key).unwrap();
            let mut acc = SparseVec::zero();
            let dv = &parent.deriv[bi as usize][i];
            if !dv.is_zero() {
                // <y_i, b> x_j, pushed through the reduction table one down
                let src_key = parent_key.checked_sub(&MultiDegree::unit(n, i)).unwrap();
                let src = blocks.get(&src_key).unwrap();
                for (b2, c) in dv.entries() {
                    let mut key = src.basis[*b2 as usize].0.clone();
                    key.push(j as u8);
                    let r = ti.red.get(&Word(key)).expect("reduction entry");
                    acc.add_scaled(f, r, c);
                }
            }
            if i == j {
                // the Leibniz term that consumes the appended letter
                let twist = f.inv(&space.bicharacter(&MultiDegree::unit(n, i), &parent_key)?)?;
                acc.add_scaled(f, &SparseVec::singleton(bi, f.one()), &twist);
            }
            parts.push(acc);
        }
        let mut stacked_entries: Vec<(u32, CycloScalar)> = Vec::new();
        for (i, p) in parts.iter().enumerate() {
            for (k, c) in p.entries() {
                stacked_entries.push((offsets[i] + k, c.clone()));
            }
        }
        let stacked = SparseVec::collect(f, stacked_entries);
        let (_, outcome) = elim.add(f, &stacked);
        match outcome {
            AddOutcome::Independent => {
                let idx = basis.len() as u32;
                red.insert(w.clone(), SparseVec::singleton(idx, f.one()));
                basis.push(w);
                deriv.push(parts);
            }
            AddOutcome::Dependent { combo } => {
                let pivot_ids = elim.pivot_ids();
                let mapped = SparseVec::collect(
                    f,
                    combo.entries().iter().map(|(id, c)| {
                        let pos = pivot_ids
                            .binary_search(id)
                            .expect("combo references pivots");
                        (pos as u32, c.clone())
                    }),
                );
                red.insert(w.clone(), mapped.clone());
                kernel.push((w, mapped));
            }
        }
    }
    Ok(Block {
        basis,
        deriv,
        red,
        kernel,
    })
}

/// Rank of the total quantum symmetrizer in tensor degree `d`: an oracle
/// for the block dimensions that never touches derivations. The adjacent
/// braiding sends slots `(a, b)` to `q_ab (b, a)`; a permutation acts along
/// any reduced word (the braid relations make this unambiguous), and the
/// rank of the sum over the symmetric group equals `dim B(V)_d`.
pub fn symmetrizer_rank(space: &BraidedSpace, d: u32) -> Result<usize> {
    let n = space.n();
    if d == 0 {
        return Ok(1);
    }
    let cols = (n as u64).checked_pow(d).unwrap_or(u64::MAX);
    if d > 7 || cols > 100_000 {
        return Err(Error::InvalidArgument(format!(
            "symmetrizer at degree {d} over rank {n} is out of the feasible range"
        )));
    }
    let f = space.field();
    // all words of length d, grouped by content
    let mut groups: BTreeMap<MultiDegree, Vec<Vec<u8>>> = BTreeMap::new();
    let mut w = vec![0u8; d as usize];
    loop {
        groups
            .entry(MultiDegree::of_letters(n, &w))
            .or_default()
            .push(w.clone());
        let mut k = d as usize;
        loop {
            if k == 0 {
                break;
            }
            k -= 1;
            if (w[k] as usize) + 1 < n {
                w[k] += 1;
                for x in w.iter_mut().skip(k + 1) {
                    *x = 0;
                }
                break;
            }
            if k == 0 {
                w.clear();
                break;
            }
        }
        if w.is_empty() {
            break;
        }
    }
    // reduced words for every permutation of d slots
    let mut perms: Vec<Vec<usize>> = Vec::new();
    let mut idx: Vec<usize> = (0..d as usize).collect();
    permutations(&mut idx, 0, &mut perms);
    let reduced: Vec<Vec<usize>> = perms.iter().map(|p| bubble_reduced_word(p)).collect();
    let mut rank = 0usize;
    for words in groups.values() {
        let index: BTreeMap<&[u8], u32> = words
            .iter()
            .enumerate()
            .map(|(i, w)| (w.as_slice(), i as u32))
            .collect();
        let mut elim = Eliminator::new(false);
        for word in words {
            let mut row = SparseVec::zero();
            for rw in &reduced {
                let mut cur = word.clone();
                let mut scalar = f.one();
                for &k in rw {
                    scalar = f.mul(&scalar, space.q(cur[k] as usize, cur[k + 1] as usize));
                    cur.swap(k, k + 1);
                }
                row.add_scaled(
                    f,
                    &SparseVec::singleton(index[cur.as_slice()], scalar),
                    &f.one(),
                );
            }
            elim.add(f, &row);
        }
        rank += elim.rank();
    }
    Ok(rank)
}

fn permutations(idx: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
    if k == idx.len() {
        out.push(idx.clone());
        return;
    }
    for i in k..idx.len() {
        idx.swap(k, i);
        permutations(idx, k + 1, out);
        idx.swap(k, i);
    }
}

/// Adjacent-swap positions that sort `perm`; reversed, they build `perm`
/// from the identity, and the count equals the inversion number, so the
/// word is reduced.
fn bubble_reduced_word(perm: &[usize]) -> Vec<usize> {
    let mut p = perm.to_vec();
    let mut swaps = Vec::new();
    loop {
        let mut done = true;
        for k in 0..p.len().saturating_sub(1) {
            if p[k] > p[k + 1] {
                p.swap(k, k + 1);
                swaps.push(k);
                done = false;
            }
        }
        if done {
            break;
        }
    }
    swaps.reverse();
    swaps
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclo::ScalarLit;
    use crate::free::{bracket, BracketKind};

    fn space_from(rows: Vec<Vec<ScalarLit>>) -> BraidedSpace {
        BraidedSpace::from_literals(&rows).unwrap()
    }

    fn linear_example() -> BraidedSpace {
        // q_ii = -1, q_12 q_21 = 1
        let one = ScalarLit::integer(1);
        let m1 = ScalarLit::integer(-1);
        space_from(vec![vec![m1.clone(), one.clone()], vec![one, m1]])
    }

    fn qls23() -> BraidedSpace {
        // N_1 = 2, N_2 = 3 with p_12 = 1/2, p_21 = 2
        space_from(vec![
            vec![ScalarLit::integer(-1), ScalarLit::rational(1, 2)],
            vec![ScalarLit::integer(2), ScalarLit::zeta(1, 3)],
        ])
    }

    #[test]
    fn linear_example_dims() {
        let t = NicholsTower::build(linear_example(), 4).unwrap();
        assert_eq!(t.hilbert(), &[1, 2, 1, 0, 0]);
        assert_eq!(t.total_dim(), TotalDim::Finite(4));
        assert_eq!(t.top_degree(), Some(2));
    }

    #[test]
    fn rank_one_root_of_unity() {
        let t = NicholsTower::build(
            space_from(vec![vec![ScalarLit::zeta(1, 3)]]),
            4,
        )
        .unwrap();
        assert_eq!(t.hilbert(), &[1, 1, 1, 0, 0]);
        assert_eq!(t.total_dim(), TotalDim::Finite(3));
    }

    #[test]
    fn trivial_braiding_grows_like_polynomials() {
        let one = ScalarLit::integer(1);
        let t = NicholsTower::build(
            space_from(vec![vec![one.clone(), one.clone()], vec![one.clone(), one]]),
            3,
        )
        .unwrap();
        assert_eq!(t.hilbert(), &[1, 2, 3, 4]);
        assert_eq!(t.total_dim(), TotalDim::InfiniteBeyondCap(3));
        assert_eq!(t.top_degree(), None);
    }

    #[test]
    fn quantum_linear_hilbert_series() {
        let t = NicholsTower::build(qls23(), 4).unwrap();
        // (1+t)(1+t+t^2) = 1 + 2t + 2t^2 + t^3
        assert_eq!(t.hilbert(), &[1, 2, 2, 1, 0]);
        assert_eq!(t.total_dim(), TotalDim::Finite(6));
    }

    #[test]
    fn normal_forms_in_linear_example() {
        let s = linear_example();
        let t = NicholsTower::build(s.clone(), 3).unwrap();
        // x_1^2 = 0
        assert!(t.is_zero_elem(&FreeElement::from_word(&s, Word::parse("11").unwrap())).unwrap());
        // basis words reduce to unit vectors
        let (deg, coords) = t.nf_word(&Word::parse("12").unwrap()).unwrap();
        assert_eq!(deg, MultiDegree(vec![1, 1]));
        assert_eq!(coords.entries().len(), 1);
        assert!(s.field().eq(&coords.entries()[0].1, &s.field().one()));
        // x_2 x_1 = q_21 x_1 x_2 = x_1 x_2 here
        let (_, c21) = t.nf_word(&Word::parse("21").unwrap()).unwrap();
        assert_eq!(coords, c21);
        // cap guard
        assert!(matches!(
            t.nf_word(&Word::parse("1212").unwrap()),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn kernel_relations_derive_to_zero() {
        let s = qls23();
        let t = NicholsTower::build(s.clone(), 4).unwrap();
        let mut seen = 0;
        for d in 1..=4u32 {
            for alpha in MultiDegree::all_of_total(2, d) {
                for (w, combo) in t.kernel_at(&alpha) {
                    seen += 1;
                    let rel = FreeElement::from_word(&s, w).sub(&s, &combo);
                    for i in 0..2 {
                        let der = free::derive(&s, i, &rel).unwrap();
                        assert!(t.nf(&der).unwrap().is_zero());
                    }
                }
            }
        }
        assert!(seen > 0);
    }

    #[test]
    fn pairing_reduces_degree() {
        let s = qls23();
        let t = NicholsTower::build(s.clone(), 4).unwrap();
        let f = s.field();
        // <y_2, x_2^2> = (2)_a x_2 with a = p_22^{-1}
        let u = FreeElement::from_word(&s, Word::parse("22").unwrap());
        let got = t.pair(&[1], &u).unwrap();
        let a = f.inv(s.q(1, 1)).unwrap();
        let mut expected = t.nf(&FreeElement::from_word(&s, Word::parse("2").unwrap())).unwrap();
        expected.scale(f, &f.quantum_int(2, &a));
        assert_eq!(got, expected);
        // full-length pairing lands in degree zero
        let v = t.pair(&[1, 0], &FreeElement::from_word(&s, Word::parse("12").unwrap())).unwrap();
        let (deg, _) = v.homogeneous().unwrap();
        assert_eq!(deg.total(), 0);
    }

    #[test]
    fn symmetrizer_matches_tower_dims() {
        for s in [linear_example(), qls23()] {
            let t = NicholsTower::build(s.clone(), 4).unwrap();
            for d in 0..=4u32 {
                assert_eq!(
                    symmetrizer_rank(&s, d).unwrap(),
                    t.dim(d),
                    "degree {d} mismatch"
                );
            }
        }
        assert_eq!(symmetrizer_rank(&linear_example(), 1).unwrap(), 2);
        assert_eq!(symmetrizer_rank(&linear_example(), 2).unwrap(), 1);
        assert!(symmetrizer_rank(&linear_example(), 40).is_err());
    }

    #[test]
    fn power_nilpotency_basics() {
        let s = linear_example();
        let t = NicholsTower::build(s.clone(), 4).unwrap();
        let x1 = FreeElement::generator(&s, 0).unwrap();
        assert_eq!(
            t.power_nilpotency(&x1, 6).unwrap(),
            Nilpotency::Vanishes(2)
        );
        let s1 = space_from(vec![vec![ScalarLit::zeta(1, 3)]]);
        let t1 = NicholsTower::build(s1.clone(), 4).unwrap();
        let x = FreeElement::generator(&s1, 0).unwrap();
        assert_eq!(t1.power_nilpotency(&x, 6).unwrap(), Nilpotency::Vanishes(3));
        let one = ScalarLit::integer(1);
        let st = space_from(vec![vec![one]]);
        let tt = NicholsTower::build(st.clone(), 3).unwrap();
        let xt = FreeElement::generator(&st, 0).unwrap();
        assert_eq!(
            tt.power_nilpotency(&xt, 12).unwrap(),
            Nilpotency::NotWithinCap(4)
        );
    }

    #[test]
    fn boundary_degree_decision() {
        // cap 2 tower still decides x^3 = 0 through the derivation criterion
        let s = space_from(vec![vec![ScalarLit::zeta(1, 3)]]);
        let t = NicholsTower::build(s.clone(), 2).unwrap();
        let x = FreeElement::generator(&s, 0).unwrap();
        assert_eq!(t.power_nilpotency(&x, 6).unwrap(), Nilpotency::Vanishes(3));
        // cap 1: x^2 != 0 is still decidable, x^3 is not
        let t1 = NicholsTower::build(s.clone(), 1).unwrap();
        assert_eq!(
            t1.power_nilpotency(&x, 6).unwrap(),
            Nilpotency::NotWithinCap(2)
        );
    }

    #[test]
    fn bracket_nf_agrees_with_free_bracket() {
        let s = qls23();
        let t = NicholsTower::build(s.clone(), 4).unwrap();
        let x1 = FreeElement::generator(&s, 0).unwrap();
        let x2 = FreeElement::generator(&s, 1).unwrap();
        for kind in [BracketKind::Std, BracketKind::Minus, BracketKind::C] {
            let free_side = t.nf(&bracket(&s, kind, &x1, &x2).unwrap()).unwrap();
            let nf_side = t
                .bracket_nf(kind, &t.nf(&x1).unwrap(), &t.nf(&x2).unwrap())
                .unwrap();
            assert_eq!(free_side, nf_side);
        }
    }

    #[test]
    fn to_free_round_trips() {
        let s = qls23();
        let t = NicholsTower::build(s.clone(), 4).unwrap();
        let e = FreeElement::parse(&s, "\"21\" + (2) * \"122\"").unwrap();
        let mv = t.nf(&e).unwrap();
        let back = t.nf(&t.to_free(&mv)).unwrap();
        assert_eq!(mv, back);
    }

    #[test]
    fn json_description_is_deterministic() {
        let s = qls23();
        let a = NicholsTower::build(s.clone(), 3).unwrap().to_json();
        let b = NicholsTower::build(s, 3).unwrap().to_json();
        assert_eq!(
            serde_json::to_string(&a).unwrap(),
            serde_json::to_string(&b).unwrap()
        );
        assert_eq!(a["tower_version"], 1);
    }
}
