//! Super-letters: Lyndon words, their standard bracketings, and the hard
//! subset whose restricted monotone products form a basis of B(V).
//!
//! A Lyndon word is strictly smaller than each of its proper suffixes. Its
//! standard bracketing splits at the longest proper Lyndon suffix and
//! brackets the two halves. A bracketed Lyndon word is *hard* when its
//! normal form does not lie in the span of monotone products (strictly
//! decreasing factors, exponents below the factors' heights) of hard
//! letters already found; processing runs degree-ascending and, within a
//! degree, in decreasing lexicographic order.

use crate::braiding::{BraidedSpace, MultiDegree};
use crate::cyclo::{CycloScalar, Order};
use crate::free::{bracket, BracketKind, FreeElement, Word};
use crate::linalg::Eliminator;
use crate::tower::{MultiVec, NicholsTower, Nilpotency};
use crate::{Error, Result};

/// A bracketed Lyndon word with its computed invariants.
#[derive(Clone, Debug)]
pub struct SuperLetter {
    pub word: Word,
    /// Parenthesized display of the standard bracketing.
    pub tree: String,
    /// The bracketing expanded in the free algebra.
    pub bracketing: FreeElement,
    /// Normal form of the bracketing in the tower.
    pub image: MultiVec,
    /// Braiding self-pairing of the word's multidegree.
    pub p_uu: CycloScalar,
    pub ord_puu: Order,
    /// Power nilpotency of the image, bounded by the tower cap.
    pub height: Nilpotency,
    pub hard: bool,
}

/// A hard super-letter that could not be shown nilpotent within bounds.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScanCandidate {
    pub word: Word,
    pub ord_puu: u64,
    /// All powers up to this exponent were verified nonzero.
    pub verified_through: u32,
}

/// All Lyndon words over `1 < 2 < ... < n` of length `1..=cap`, grouped by
/// length, each group in decreasing lexicographic order.
pub fn lyndon_words(n: usize, cap: u32) -> Vec<Vec<Word>> {
    let mut groups: Vec<Vec<Word>> = vec![Vec::new(); cap as usize];
    if n == 0 || cap == 0 {
        return groups;
    }
    // Duval's generation in lexicographic order
    let mut w: Vec<u8> = vec![0];
    loop {
        groups[w.len() - 1].push(Word(w.clone()));
        let mut next = Vec::with_capacity(cap as usize);
        while next.len() < cap as usize {
            next.push(w[next.len() % w.len()]);
        }
        while let Some(&last) = next.last() {
            if last as usize == n - 1 {
                next.pop();
            } else {
                break;
            }
        }
        if next.is_empty() {
            break;
        }
        *next.last_mut().unwrap() += 1;
        w = next;
    }
    for g in &mut groups {
        g.reverse();
    }
    groups
}

/// Strictly smaller than all proper suffixes.
pub fn is_lyndon(w: &Word) -> bool {
    let v = &w.0;
    if v.is_empty() {
        return false;
    }
    (1..v.len()).all(|i| v.as_slice() < &v[i..])
}

fn split_at_longest_lyndon_suffix(w: &Word) -> usize {
    for i in 1..w.0.len() {
        if is_lyndon(&Word(w.0[i..].to_vec())) {
            return i;
        }
    }
    unreachable!("every final letter is a Lyndon suffix")
}

/// Standard (Shirshov) bracketing of a Lyndon word: split at the longest
/// proper Lyndon suffix and bracket recursively.
pub fn standard_bracketing(space: &BraidedSpace, w: &Word) -> Result<FreeElement> {
    Ok(standard_bracketing_with_tree(space, w)?.0)
}

/// Bracketing plus a parenthesized rendering of the tree.
pub fn standard_bracketing_with_tree(
    space: &BraidedSpace,
    w: &Word,
) -> Result<(FreeElement, String)> {
    if !is_lyndon(w) {
        return Err(Error::InvalidArgument(format!(
            "word \"{w}\" is not Lyndon"
        )));
    }
    if w.0.len() == 1 {
        let i = w.0[0] as usize;
        return Ok((
            FreeElement::generator(space, i)?,
            format!("x{}", i + 1),
        ));
    }
    let split = split_at_longest_lyndon_suffix(w);
    let (left, lt) = standard_bracketing_with_tree(space, &Word(w.0[..split].to_vec()))?;
    let (right, rt) = standard_bracketing_with_tree(space, &Word(w.0[split..].to_vec()))?;
    Ok((
        bracket(space, BracketKind::Std, &left, &right)?,
        format!("[{lt},{rt}]"),
    ))
}

fn exponent_limit(height: Nilpotency) -> u32 {
    match height {
        // exponents strictly below the height
        Nilpotency::Vanishes(h) => h.saturating_sub(1),
        Nilpotency::NotWithinCap(_) => u32::MAX,
    }
}

/// Collect the block coordinates at `target` of every monotone product of
/// the given letters (assumed sorted by strictly decreasing word) whose
/// multidegree is exactly `target`.
fn monotone_product_coords(
    tower: &NicholsTower,
    letters: &[&SuperLetter],
    target: &MultiDegree,
) -> Result<Vec<crate::linalg::SparseVec>> {
    let f = tower.space().field();
    let n = tower.space().n();
    let mut out = Vec::new();
    let unit = MultiVec::single(
        MultiDegree::zero(n),
        crate::linalg::SparseVec::singleton(0, f.one()),
    );
    fn rec(
        tower: &NicholsTower,
        letters: &[&SuperLetter],
        idx: usize,
        remaining: MultiDegree,
        acc: &MultiVec,
        out: &mut Vec<crate::linalg::SparseVec>,
    ) -> Result<()> {
        if remaining.total() == 0 {
            if let Some((_, coords)) = acc.homogeneous() {
                out.push(coords.clone());
            }
            return Ok(());
        }
        if idx == letters.len() {
            return Ok(());
        }
        let letter = letters[idx];
        let ldeg = letter.word.degree(tower.space().n());
        // exponent 0: skip this letter
        rec(tower, letters, idx + 1, remaining.clone(), acc, out)?;
        let limit = exponent_limit(letter.height);
        let mut cur = acc.clone();
        let mut rem = remaining;
        let mut k = 0u32;
        while k < limit {
            let Some(next_rem) = rem.checked_sub(&ldeg) else {
                break;
            };
            cur = tower.mul_free(&cur, &letter.bracketing)?;
            if cur.is_zero() {
                break;
            }
            rem = next_rem;
            k += 1;
            rec(tower, letters, idx + 1, rem.clone(), &cur, out)?;
        }
        Ok(())
    }
    rec(tower, letters, 0, target.clone(), &unit, &mut out)?;
    Ok(out)
}

/// Detect the hard super-letters of all degrees up to `cap`.
pub fn hard_superletters(tower: &NicholsTower, cap: u32) -> Result<Vec<SuperLetter>> {
    if cap > tower.cap() {
        return Err(Error::CapExceeded {
            degree: cap,
            cap: tower.cap(),
        });
    }
    let space = tower.space();
    let f = space.field();
    let n = space.n();
    let mut found: Vec<SuperLetter> = Vec::new();
    for group in lyndon_words(n, cap) {
        for w in group {
            let (bracketing, tree) = standard_bracketing_with_tree(space, &w)?;
            let image = tower.nf(&bracketing)?;
            if image.is_zero() {
                continue;
            }
            let alpha = w.degree(n);
            // span of monotone products of the letters found so far
            let mut desc: Vec<&SuperLetter> = found.iter().collect();
            desc.sort_by(|a, b| b.word.cmp(&a.word));
            let products = monotone_product_coords(tower, &desc, &alpha)?;
            let mut elim = Eliminator::new(false);
            for p in &products {
                elim.add(f, p);
            }
            let coords = image
                .coords_at(&alpha)
                .expect("image is homogeneous at the word's degree");
            if elim.contains(f, coords) {
                continue;
            }
            let p_uu = space.bicharacter(&alpha, &alpha)?;
            let ord_puu = f.mult_order(&p_uu)?;
            let kmax = (tower.cap() + 1) / alpha.total();
            let height = tower.power_nilpotency(&bracketing, kmax.max(1))?;
            found.push(SuperLetter {
                word: w,
                tree,
                bracketing,
                image,
                p_uu,
                ord_puu,
                height,
                hard: true,
            });
        }
    }
    Ok(found)
}

/// Hard super-letters with `ord(p_uu) = m > 1` (finite) whose powers never
/// vanished within `kmax` and the cap. Reported as candidates only; nothing
/// is asserted beyond the verified range.
pub fn m_infinity_scan(
    tower: &NicholsTower,
    cap: u32,
    kmax: u32,
) -> Result<Vec<ScanCandidate>> {
    let letters = hard_superletters(tower, cap)?;
    let mut out = Vec::new();
    for l in letters {
        let m = match l.ord_puu {
            Order::Finite(m) if m > 1 => m,
            _ => continue,
        };
        match tower.power_nilpotency(&l.bracketing, kmax)? {
            Nilpotency::Vanishes(_) => {}
            Nilpotency::NotWithinCap(checked) => out.push(ScanCandidate {
                word: l.word,
                ord_puu: m,
                verified_through: checked,
            }),
        }
    }
    Ok(out)
}

/// Verify that monotone products of the given hard letters with exponents
/// below their heights are independent and span every degree through `cap`.
/// Returns the first failing degree, if any.
pub fn restricted_pbw_failure(
    tower: &NicholsTower,
    letters: &[SuperLetter],
    cap: u32,
) -> Result<Option<u32>> {
    let f = tower.space().field();
    let n = tower.space().n();
    let mut desc: Vec<&SuperLetter> = letters.iter().collect();
    desc.sort_by(|a, b| b.word.cmp(&a.word));
    for d in 1..=cap {
        let mut count = 0usize;
        let mut rank = 0usize;
        for alpha in MultiDegree::all_of_total(n, d) {
            let products = monotone_product_coords(tower, &desc, &alpha)?;
            let mut elim = Eliminator::new(false);
            for p in &products {
                elim.add(f, p);
            }
            count += products.len();
            rank += elim.rank();
        }
        if count != rank || rank != tower.dim(d) {
            return Ok(Some(d));
        }
    }
    Ok(None)
}

/// Short single-letter codes (`a`–`r`, skipping `o`) for the seventeen
/// rank-2 Lyndon words appearing in the hard-letter tables.
pub fn decode_letter_code(s: &str) -> Result<Word> {
    let digits = match s {
        "a" => "112",
        "b" => "122",
        "c" => "1112",
        "d" => "11212",
        "e" => "11112",
        "f" => "1112112",
        "g" => "1121212",
        "h" => "111112",
        "i" => "111121112",
        "j" => "11121112112",
        "k" => "1112112112",
        "l" => "11211212",
        "m" => "112121121212",
        "n" => "112121212",
        "p" => "11211211212",
        "q" => "1121121211212",
        "r" => "12",
        _ => {
            return Err(Error::InvalidArgument(format!(
                "unknown letter code {s:?}"
            )))
        }
    };
    Word::parse(digits)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braiding::{cartan_preset, CartanType};
    use crate::cyclo::{CycloField, RootSpec, ScalarLit};

    fn space_from(rows: Vec<Vec<ScalarLit>>) -> BraidedSpace {
        BraidedSpace::from_literals(&rows).unwrap()
    }

    fn qls23() -> BraidedSpace {
        space_from(vec![
            vec![ScalarLit::integer(-1), ScalarLit::rational(1, 2)],
            vec![ScalarLit::integer(2), ScalarLit::zeta(1, 3)],
        ])
    }

    fn a2(ord: u64, cap: u32) -> NicholsTower {
        let f = CycloField::new(ord).unwrap();
        let q = f.root(RootSpec::new(1, ord).unwrap()).unwrap();
        let s = cartan_preset(CartanType::A, 2, &f, &q).unwrap();
        NicholsTower::build(s, cap).unwrap()
    }

    #[test]
    fn lyndon_enumeration_small() {
        let g = lyndon_words(2, 3);
        let words = |v: &[Word]| v.iter().map(|w| w.to_string()).collect::<Vec<_>>();
        assert_eq!(words(&g[0]), vec!["2", "1"]);
        assert_eq!(words(&g[1]), vec!["12"]);
        assert_eq!(words(&g[2]), vec!["122", "112"]);
        for group in &g {
            for w in group {
                assert!(is_lyndon(w));
            }
        }
    }

    fn necklace_count(n: u64, d: u64) -> u64 {
        // Witt's formula via Moebius
        fn mu(mut k: u64) -> i64 {
            let mut m = 1i64;
            let mut p = 2;
            while p * p <= k {
                if k % p == 0 {
                    k /= p;
                    if k % p == 0 {
                        return 0;
                    }
                    m = -m;
                }
                p += 1;
            }
            if k > 1 {
                m = -m;
            }
            m
        }
        let mut s = 0i64;
        for e in 1..=d {
            if d % e == 0 {
                s += mu(e) * (n as i64).pow((d / e) as u32);
            }
        }
        (s / d as i64) as u64
    }

    #[test]
    fn lyndon_counts_match_witt_formula() {
        for n in [2usize, 3] {
            let g = lyndon_words(n, 6);
            for d in 1..=6u64 {
                assert_eq!(
                    g[d as usize - 1].len() as u64,
                    necklace_count(n as u64, d),
                    "n={n} d={d}"
                );
            }
        }
    }

    #[test]
    fn bracketing_follows_standard_factorization() {
        let s = qls23();
        let x1 = FreeElement::generator(&s, 0).unwrap();
        let x2 = FreeElement::generator(&s, 1).unwrap();
        let b12 = bracket(&s, BracketKind::Std, &x1, &x2).unwrap();
        assert_eq!(
            standard_bracketing(&s, &Word::parse("12").unwrap()).unwrap(),
            b12
        );
        let b112 = bracket(&s, BracketKind::Std, &x1, &b12).unwrap();
        assert_eq!(
            standard_bracketing(&s, &Word::parse("112").unwrap()).unwrap(),
            b112
        );
        // 11212 splits as 112 . 12
        let b11212 = bracket(&s, BracketKind::Std, &b112, &b12).unwrap();
        let (got, tree) =
            standard_bracketing_with_tree(&s, &Word::parse("11212").unwrap()).unwrap();
        assert_eq!(got, b11212);
        assert_eq!(tree, "[[x1,[x1,x2]],[x1,x2]]");
        for bad in ["21", "11", "212"] {
            assert!(standard_bracketing(&s, &Word::parse(bad).unwrap()).is_err());
        }
    }

    #[test]
    fn letter_codes_decode() {
        assert_eq!(decode_letter_code("a").unwrap(), Word::parse("112").unwrap());
        assert_eq!(decode_letter_code("r").unwrap(), Word::parse("12").unwrap());
        assert_eq!(
            decode_letter_code("q").unwrap(),
            Word::parse("1121121211212").unwrap()
        );
        assert!(decode_letter_code("z").is_err());
        let all = [
            "a", "b", "c", "d", "e", "f", "g", "h", "i", "j", "k", "l", "m", "n", "p", "q", "r",
        ];
        for l in all {
            assert!(is_lyndon(&decode_letter_code(l).unwrap()));
        }
    }

    #[test]
    fn quantum_linear_space_has_only_generators() {
        let t = NicholsTower::build(qls23(), 5).unwrap();
        let hard = hard_superletters(&t, 5).unwrap();
        let words: Vec<String> = hard.iter().map(|l| l.word.to_string()).collect();
        assert_eq!(words, vec!["2", "1"]);
        assert_eq!(restricted_pbw_failure(&t, &hard, 5).unwrap(), None);
    }

    #[test]
    fn rank_two_preset_has_three_letters() {
        let t = a2(4, 9);
        let hard = hard_superletters(&t, 6).unwrap();
        let mut words: Vec<String> = hard.iter().map(|l| l.word.to_string()).collect();
        words.sort();
        assert_eq!(words, vec!["1", "12", "2"]);
        // Cartan rows: height equals ord(p_uu) whenever it was decided
        for l in &hard {
            if let (Nilpotency::Vanishes(h), Order::Finite(m)) = (l.height, l.ord_puu) {
                assert_eq!(h as u64, m, "letter {}", l.word);
            }
        }
        assert_eq!(restricted_pbw_failure(&t, &hard, 6).unwrap(), None);
    }

    #[test]
    fn b2_type_fixture_has_four_letters() {
        // short root on vertex 1: q_11 = q, q_12 q_21 = q^{-2}, q_22 = q^2
        let s = space_from(vec![
            vec![ScalarLit::zeta(1, 9), ScalarLit::zeta(7, 9)],
            vec![ScalarLit::integer(1), ScalarLit::zeta(2, 9)],
        ]);
        let f = s.field().clone();
        let q = f.root(RootSpec::new(1, 9).unwrap()).unwrap();
        let t = NicholsTower::build(s.clone(), 5).unwrap();
        let hard = hard_superletters(&t, 5).unwrap();
        let mut words: Vec<String> = hard.iter().map(|l| l.word.to_string()).collect();
        words.sort();
        assert_eq!(words, vec!["1", "112", "12", "2"]);
        // self-pairings: {q^2, q, q^2, q} as a multiset, q the vertex-2 label
        let mut got: Vec<String> = hard.iter().map(|l| f.format(&l.p_uu)).collect();
        got.sort();
        let qq = f.mul(&q, &q);
        let mut want = vec![
            f.format(&qq),
            f.format(&q),
            f.format(&qq),
            f.format(&q),
        ];
        want.sort();
        assert_eq!(got, want);
        assert_eq!(restricted_pbw_failure(&t, &hard, 5).unwrap(), None);
        // the long-root-first preset is the mirror image: 122 instead of 112
        let sp = cartan_preset(CartanType::B, 2, &f, &q).unwrap();
        let tp = NicholsTower::build(sp, 5).unwrap();
        let mut mirrored: Vec<String> = hard_superletters(&tp, 5)
            .unwrap()
            .iter()
            .map(|l| l.word.to_string())
            .collect();
        mirrored.sort();
        assert_eq!(mirrored, vec!["1", "12", "122", "2"]);
    }

    #[test]
    fn superletter_invariants() {
        let t = a2(3, 6);
        let s = t.space().clone();
        for l in hard_superletters(&t, 4).unwrap() {
            assert!(is_lyndon(&l.word));
            assert!(l.hard);
            let alpha = l.word.degree(2);
            let p = s.bicharacter(&alpha, &alpha).unwrap();
            assert!(s.field().eq(&p, &l.p_uu));
            let (deg, _) = l.image.homogeneous().unwrap();
            assert_eq!(*deg, alpha);
        }
    }

    #[test]
    fn scans_on_settled_fixtures_are_empty() {
        // finite Cartan type: every hard letter is nilpotent
        let t = a2(3, 9);
        assert!(m_infinity_scan(&t, 4, 12).unwrap().is_empty());
        // trivial braiding: powers never vanish but ord(p_uu) = 1 is excluded
        let one = ScalarLit::integer(1);
        let t2 = NicholsTower::build(
            space_from(vec![vec![one.clone(), one.clone()], vec![one.clone(), one]]),
            4,
        )
        .unwrap();
        assert!(m_infinity_scan(&t2, 4, 12).unwrap().is_empty());
    }

    #[test]
    fn scan_reports_undecided_letters() {
        // a rank-1 point of order 5 capped too low to see x^5 = 0
        let t = NicholsTower::build(space_from(vec![vec![ScalarLit::zeta(1, 5)]]), 3).unwrap();
        let got = m_infinity_scan(&t, 3, 12).unwrap();
        assert_eq!(got.len(), 1);
        assert_eq!(got[0].word, Word::parse("1").unwrap());
        assert_eq!(got[0].ord_puu, 5);
        assert_eq!(got[0].verified_through, 4);
        // with a cap past the vanishing degree the candidate disappears
        let t2 = NicholsTower::build(space_from(vec![vec![ScalarLit::zeta(1, 5)]]), 5).unwrap();
        assert!(m_infinity_scan(&t2, 5, 12).unwrap().is_empty());
    }
}
