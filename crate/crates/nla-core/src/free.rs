//! The free algebra on `x_1..x_n` over a diagonal braiding: words,
//! multidegree-graded elements, the three braided brackets, iterated and
//! nested bracket constructors, the balanced sigma bracket, and the skew
//! derivations at the free level.

use crate::braiding::{BraidedSpace, MultiDegree};
use crate::cyclo::CycloScalar;
use crate::{Error, Result};
use std::collections::BTreeMap;
use std::fmt;

/// A word over the generators, stored 0-based. Ordering is length-then-lex
/// free: shorter prefixes compare smaller, letters compare `1 < 2 < ... < n`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(pub Vec<u8>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letter(i: u8) -> Self {
        Word(vec![i])
    }

    /// Parse a 1-based digit string like "112"; empty string is the unit.
    pub fn parse(s: &str) -> Result<Self> {
        let mut letters = Vec::with_capacity(s.len());
        for ch in s.chars() {
            let d = ch
                .to_digit(10)
                .filter(|&d| d >= 1)
                .ok_or_else(|| Error::Parse(format!("bad word character {ch:?}")))?;
            letters.push((d - 1) as u8);
        }
        Ok(Word(letters))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[u8] {
        &self.0
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn degree(&self, n: usize) -> MultiDegree {
        MultiDegree::of_letters(n, &self.0)
    }

    pub fn pow(&self, k: usize) -> Word {
        let mut v = Vec::with_capacity(self.0.len() * k);
        for _ in 0..k {
            v.extend_from_slice(&self.0);
        }
        Word(v)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &l in &self.0 {
            write!(f, "{}", l as u32 + 1)?;
        }
        Ok(())
    }
}

/// Which braided bracket to use.
///
/// For homogeneous `u, v` with `p_uv = chi(deg u, deg v)`:
/// `Std` is `v u - p_vu u v`, `Minus` is `u v - v u`, and `C` is
/// `u v - p_uv v u`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BracketKind {
    Std,
    Minus,
    C,
}

/// Side for iterated brackets: `Left` nests as `[u, [u, ... [u, v]]]`,
/// `Right` as `[[[v, u], u], ..., u]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// Finite linear combination of words; zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct FreeElement {
    terms: BTreeMap<Word, CycloScalar>,
}

impl FreeElement {
    pub fn zero() -> Self {
        FreeElement {
            terms: BTreeMap::new(),
        }
    }

    pub fn unit(space: &BraidedSpace) -> Self {
        Self::monomial(space, Word::empty(), space.field().one())
    }

    pub fn generator(space: &BraidedSpace, i: usize) -> Result<Self> {
        if i >= space.n() {
            return Err(Error::InvalidArgument(format!(
                "generator index {i} out of range for rank {}",
                space.n()
            )));
        }
        Ok(Self::monomial(
            space,
            Word::letter(i as u8),
            space.field().one(),
        ))
    }

    pub fn from_word(space: &BraidedSpace, w: Word) -> Self {
        Self::monomial(space, w, space.field().one())
    }

    pub fn monomial(space: &BraidedSpace, w: Word, c: CycloScalar) -> Self {
        let mut terms = BTreeMap::new();
        if !space.field().is_zero(&c) {
            terms.insert(w, c);
        }
        FreeElement { terms }
    }

    pub fn collect(
        space: &BraidedSpace,
        it: impl IntoIterator<Item = (Word, CycloScalar)>,
    ) -> Self {
        let f = space.field();
        let mut terms: BTreeMap<Word, CycloScalar> = BTreeMap::new();
        for (w, c) in it {
            match terms.entry(w) {
                std::collections::btree_map::Entry::Vacant(e) => {
                    e.insert(c);
                }
                std::collections::btree_map::Entry::Occupied(mut e) => {
                    f.add_assign(e.get_mut(), &c);
                }
            }
        }
        terms.retain(|_, c| !f.is_zero(c));
        FreeElement { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &CycloScalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, w: &Word) -> Option<&CycloScalar> {
        self.terms.get(w)
    }

    pub fn add(&self, space: &BraidedSpace, other: &FreeElement) -> FreeElement {
        let f = space.field();
        let mut out = self.terms.clone();
        for (w, c) in &other.terms {
            match out.entry(w.clone()) {
                std::collections::btree_map::Entry::Vacant(e) => {
                    e.insert(c.clone());
                }
                std::collections::btree_map::Entry::Occupied(mut e) => {
                    f.add_assign(e.get_mut(), c);
                }
            }
        }
        out.retain(|_, c| !f.is_zero(c));
        FreeElement { terms: out }
    }

    pub fn sub(&self, space: &BraidedSpace, other: &FreeElement) -> FreeElement {
        self.add(space, &other.scaled(space, &space.field().from_integer(-1)))
    }

    pub fn scaled(&self, space: &BraidedSpace, c: &CycloScalar) -> FreeElement {
        let f = space.field();
        if f.is_zero(c) {
            return FreeElement::zero();
        }
        FreeElement {
            terms: self
                .terms
                .iter()
                .map(|(w, x)| (w.clone(), f.mul(x, c)))
                .collect(),
        }
    }

    /// Concatenation product, bilinear.
    pub fn multiply(&self, space: &BraidedSpace, other: &FreeElement) -> FreeElement {
        let f = space.field();
        FreeElement::collect(
            space,
            self.terms.iter().flat_map(|(wu, cu)| {
                other
                    .terms
                    .iter()
                    .map(move |(wv, cv)| (wu.concat(wv), f.mul(cu, cv)))
            }),
        )
    }

    pub fn pow(&self, space: &BraidedSpace, k: usize) -> FreeElement {
        let mut acc = FreeElement::unit(space);
        for _ in 0..k {
            acc = acc.multiply(space, self);
        }
        acc
    }

    /// Split into homogeneous components keyed by multidegree.
    pub fn components(&self, space: &BraidedSpace) -> BTreeMap<MultiDegree, FreeElement> {
        let n = space.n();
        let mut out: BTreeMap<MultiDegree, FreeElement> = BTreeMap::new();
        for (w, c) in &self.terms {
            let d = w.degree(n);
            out.entry(d)
                .or_insert_with(FreeElement::zero)
                .terms
                .insert(w.clone(), c.clone());
        }
        out
    }

    /// The common multidegree when every term shares one.
    pub fn homogeneous_degree(&self, space: &BraidedSpace) -> Option<MultiDegree> {
        let mut it = self.terms.keys();
        let first = it.next()?.degree(space.n());
        for w in it {
            if w.degree(space.n()) != first {
                return None;
            }
        }
        Some(first)
    }
}

/// The chosen bracket of two homogeneous elements; non-homogeneous inputs
/// are split into components and bracketed pairwise.
pub fn bracket(
    space: &BraidedSpace,
    kind: BracketKind,
    u: &FreeElement,
    v: &FreeElement,
) -> Result<FreeElement> {
    let mut acc = FreeElement::zero();
    for (du, cu) in u.components(space) {
        for (dv, cv) in v.components(space) {
            let uv = cu.multiply(space, &cv);
            let vu = cv.multiply(space, &cu);
            let piece = match kind {
                BracketKind::Std => {
                    let p = space.bicharacter(&dv, &du)?;
                    vu.sub(space, &uv.scaled(space, &p))
                }
                BracketKind::Minus => uv.sub(space, &vu),
                BracketKind::C => {
                    let p = space.bicharacter(&du, &dv)?;
                    uv.sub(space, &vu.scaled(space, &p))
                }
            };
            acc = acc.add(space, &piece);
        }
    }
    Ok(acc)
}

/// `m`-fold iterated bracket: `Left` gives `[u, [u, ... [u, v]]]` (`m`
/// copies of `u`), `Right` gives `[[[v, u], u] ... u]`; `m = 0` returns `v`.
pub fn iterated_bracket(
    space: &BraidedSpace,
    kind: BracketKind,
    side: Side,
    u: &FreeElement,
    v: &FreeElement,
    m: usize,
) -> Result<FreeElement> {
    let mut acc = v.clone();
    for _ in 0..m {
        acc = match side {
            Side::Left => bracket(space, kind, u, &acc)?,
            Side::Right => bracket(space, kind, &acc, u)?,
        };
    }
    Ok(acc)
}

/// Right-to-left nesting of generators:
/// `[x_{i_1}, [x_{i_2}, [... x_{i_m}]]]` (0-based indices).
pub fn left_nested(space: &BraidedSpace, kind: BracketKind, indices: &[usize]) -> Result<FreeElement> {
    let (&last, rest) = indices
        .split_last()
        .ok_or_else(|| Error::InvalidArgument("empty generator sequence".into()))?;
    let mut acc = FreeElement::generator(space, last)?;
    for &i in rest.iter().rev() {
        acc = bracket(space, kind, &FreeElement::generator(space, i)?, &acc)?;
    }
    Ok(acc)
}

/// Balanced binary bracketing with the plain commutator: a list of length
/// `2^k` (k >= 1) is split in half, each half bracketed recursively.
pub fn sigma_bracket(space: &BraidedSpace, zs: &[FreeElement]) -> Result<FreeElement> {
    let len = zs.len();
    if len < 2 || !len.is_power_of_two() {
        return Err(Error::InvalidArgument(format!(
            "sigma bracket needs a power-of-two length >= 2, got {len}"
        )));
    }
    if len == 2 {
        return bracket(space, BracketKind::Minus, &zs[0], &zs[1]);
    }
    let half = len / 2;
    let left = sigma_bracket(space, &zs[..half])?;
    let right = sigma_bracket(space, &zs[half..])?;
    bracket(space, BracketKind::Minus, &left, &right)
}

/// Check `[[u,v],w] = [u,[v,w]] + p_wv [[u,w],v] + p_vu (p_wv p_vw - 1) [u,w] v`
/// for homogeneous `u, v, w` — a formal identity of the braided bracket.
pub fn kharchenko_identity_check(
    space: &BraidedSpace,
    u: &FreeElement,
    v: &FreeElement,
    w: &FreeElement,
) -> Result<bool> {
    let f = space.field();
    let (du, dv, dw) = match (
        u.homogeneous_degree(space),
        v.homogeneous_degree(space),
        w.homogeneous_degree(space),
    ) {
        (Some(a), Some(b), Some(c)) => (a, b, c),
        _ => {
            return Err(Error::InvalidArgument(
                "identity check needs homogeneous inputs".into(),
            ))
        }
    };
    let k = BracketKind::Std;
    let lhs = bracket(space, k, &bracket(space, k, u, v)?, w)?;
    let p_wv = space.bicharacter(&dw, &dv)?;
    let p_vu = space.bicharacter(&dv, &du)?;
    let p_vw = space.bicharacter(&dv, &dw)?;
    let t1 = bracket(space, k, u, &bracket(space, k, v, w)?)?;
    let t2 = bracket(space, k, &bracket(space, k, u, w)?, v)?.scaled(space, &p_wv);
    let coeff = f.mul(
        &p_vu,
        &f.sub(&f.mul(&p_wv, &p_vw), &f.one()),
    );
    let t3 = bracket(space, k, u, w)?.multiply(space, v).scaled(space, &coeff);
    let rhs = t1.add(space, &t2).add(space, &t3);
    Ok(lhs == rhs)
}

/// Free-level skew derivation `<y_i, ->`: sends `x_j` to `delta_ij`, with
/// `<y_i, uv> = <y_i,u> v + chi(e_i, deg u)^{-1} u <y_i,v>`. On a word this
/// removes each occurrence of letter `i` with the prefix twist.
pub fn derive(space: &BraidedSpace, i: usize, u: &FreeElement) -> Result<FreeElement> {
    let n = space.n();
    if i >= n {
        return Err(Error::InvalidArgument(format!(
            "derivation index {i} out of range for rank {n}"
        )));
    }
    let f = space.field();
    let e_i = MultiDegree::unit(n, i);
    let mut out = Vec::new();
    for (w, c) in u.terms() {
        let letters = w.letters();
        for t in 0..letters.len() {
            if letters[t] as usize != i {
                continue;
            }
            let prefix = MultiDegree::of_letters(n, &letters[..t]);
            let twist = f.inv(&space.bicharacter(&e_i, &prefix)?)?;
            let mut rest = Vec::with_capacity(letters.len() - 1);
            rest.extend_from_slice(&letters[..t]);
            rest.extend_from_slice(&letters[t + 1..]);
            out.push((Word(rest), f.mul(c, &twist)));
        }
    }
    Ok(FreeElement::collect(space, out))
}

/// Iterated derivation for a word in the dual generators, rightmost letter
/// acting first: `<y_i y_j, u> = <y_i, <y_j, u>>`.
pub fn pair_free(space: &BraidedSpace, yword: &[usize], u: &FreeElement) -> Result<FreeElement> {
    let mut acc = u.clone();
    for &i in yword.iter().rev() {
        acc = derive(space, i, &acc)?;
    }
    Ok(acc)
}

impl FreeElement {
    /// Text form: `(coeff) * "word"` terms joined by ` + `, words as 1-based
    /// digit strings; zero prints as `0`.
    pub fn format(&self, space: &BraidedSpace) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let f = space.field();
        self.terms
            .iter()
            .map(|(w, c)| format!("({}) * \"{}\"", f.format(c), w))
            .collect::<Vec<_>>()
            .join(" + ")
    }

    /// Parse the same text form produced by [`FreeElement::format`]. Scalars
    /// accept sums of `p/q` and `p/q z<N>^<k>` factors.
    pub fn parse(space: &BraidedSpace, s: &str) -> Result<FreeElement> {
        let mut acc = FreeElement::zero();
        for part in split_top_level(s)? {
            let part = part.trim();
            if part.is_empty() || part == "0" {
                continue;
            }
            let (coeff, word) = parse_term(space, part)?;
            acc = acc.add(space, &FreeElement::monomial(space, word, coeff));
        }
        Ok(acc)
    }
}

/// Split on `+` at paren/quote depth zero.
fn split_top_level(s: &str) -> Result<Vec<String>> {
    let mut parts = Vec::new();
    let mut cur = String::new();
    let mut depth = 0i32;
    let mut in_quotes = false;
    for ch in s.chars() {
        match ch {
            '"' => {
                in_quotes = !in_quotes;
                cur.push(ch);
            }
            '(' if !in_quotes => {
                depth += 1;
                cur.push(ch);
            }
            ')' if !in_quotes => {
                depth -= 1;
                if depth < 0 {
                    return Err(Error::Parse("unbalanced parentheses".into()));
                }
                cur.push(ch);
            }
            '+' if !in_quotes && depth == 0 => {
                parts.push(std::mem::take(&mut cur));
            }
            _ => cur.push(ch),
        }
    }
    if depth != 0 || in_quotes {
        return Err(Error::Parse("unterminated group in element text".into()));
    }
    parts.push(cur);
    Ok(parts)
}

fn parse_term(space: &BraidedSpace, part: &str) -> Result<(CycloScalar, Word)> {
    let f = space.field();
    // forms: (scalar) * "word" | (scalar) "word" | "word" | (scalar)
    let (scalar_text, word_text) = if let Some(q) = part.find('"') {
        let end = part[q + 1..]
            .find('"')
            .ok_or_else(|| Error::Parse("unterminated word quote".into()))?;
        let word = &part[q + 1..q + 1 + end];
        let mut head = part[..q].trim();
        if let Some(stripped) = head.strip_suffix('*') {
            head = stripped.trim();
        }
        (head, Some(word))
    } else {
        (part.trim(), None)
    };
    let coeff = if scalar_text.is_empty() {
        f.one()
    } else {
        let inner = scalar_text
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .unwrap_or(scalar_text);
        parse_scalar_text(space, inner)?
    };
    let word = match word_text {
        Some(t) => Word::parse(t)?,
        None => Word::empty(),
    };
    if space.n() > 0 {
        if let Some(&bad) = word.letters().iter().find(|&&l| l as usize >= space.n()) {
            return Err(Error::Parse(format!(
                "letter {} out of range for rank {}",
                bad as u32 + 1,
                space.n()
            )));
        }
    }
    Ok((coeff, word))
}

/// Parse a scalar written as `t_1 + t_2 + ...` where each `t` is
/// `[rational] [z<N>[^<k>]]` (at least one factor present).
fn parse_scalar_text(space: &BraidedSpace, s: &str) -> Result<CycloScalar> {
    let f = space.field();
    let mut acc = f.zero();
    for term in s.split('+') {
        let term = term.trim();
        if term.is_empty() {
            return Err(Error::Parse(format!("empty scalar term in {s:?}")));
        }
        let (rat_text, zeta_text) = match term.find('z') {
            Some(p) => (term[..p].trim().trim_end_matches('*').trim(), Some(&term[p..])),
            None => (term, None),
        };
        let mut val = if rat_text.is_empty() {
            f.one()
        } else {
            f.from_rational(crate::cyclo::parse_rational(rat_text)?)
        };
        if let Some(zt) = zeta_text {
            let body = &zt[1..];
            let (n_text, k_text) = match body.find('^') {
                Some(p) => (&body[..p], &body[p + 1..]),
                None => (body, "1"),
            };
            let n: u64 = n_text
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad root order in {term:?}")))?;
            let k: i64 = k_text
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad root exponent in {term:?}")))?;
            let root = f.root(crate::cyclo::RootSpec::new(k, n)?)?;
            val = f.mul(&val, &root);
        }
        f.add_assign(&mut acc, &val);
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclo::{CycloField, RootSpec, ScalarLit};
    use proptest::prelude::*;

    fn space2() -> BraidedSpace {
        // q11 = z12, q12 = 1/2, q21 = -1, q22 = z12^5 — deliberately asymmetric
        let rows = vec![
            vec![ScalarLit::zeta(1, 12), ScalarLit::rational(1, 2)],
            vec![ScalarLit::integer(-1), ScalarLit::zeta(5, 12)],
        ];
        BraidedSpace::from_literals(&rows).unwrap()
    }

    fn space3() -> BraidedSpace {
        let rows = vec![
            vec![
                ScalarLit::zeta(1, 3),
                ScalarLit::integer(2),
                ScalarLit::rational(1, 2),
            ],
            vec![
                ScalarLit::integer(-1),
                ScalarLit::zeta(2, 3),
                ScalarLit::integer(1),
            ],
            vec![
                ScalarLit::integer(3),
                ScalarLit::zeta(1, 3),
                ScalarLit::integer(-1),
            ],
        ];
        BraidedSpace::from_literals(&rows).unwrap()
    }

    fn gen(space: &BraidedSpace, i: usize) -> FreeElement {
        FreeElement::generator(space, i).unwrap()
    }

    #[test]
    fn multiplication_is_concatenation() {
        let s = space2();
        let x1 = gen(&s, 0);
        let x2 = gen(&s, 1);
        let prod = x1.multiply(&s, &x2);
        assert_eq!(prod.format(&s), "(1) * \"12\"");
        let sum = x1.add(&s, &x2).multiply(&s, &x1);
        assert_eq!(sum.format(&s), "(1) * \"11\" + (1) * \"21\"");
        let unit = FreeElement::unit(&s);
        assert_eq!(unit.multiply(&s, &prod), prod);
    }

    #[test]
    fn bracket_definitions() {
        let s = space2();
        let f = s.field();
        let x1 = gen(&s, 0);
        let x2 = gen(&s, 1);
        // minus(x,x) = 0
        assert!(bracket(&s, BracketKind::Minus, &x1, &x1).unwrap().is_zero());
        // std(x1,x2) = x2 x1 - p21 x1 x2
        let b = bracket(&s, BracketKind::Std, &x1, &x2).unwrap();
        let w21 = Word::parse("21").unwrap();
        let w12 = Word::parse("12").unwrap();
        assert!(f.eq(b.coeff(&w21).unwrap(), &f.one()));
        assert!(f.eq(b.coeff(&w12).unwrap(), &f.neg(s.q(1, 0))));
        // std(u,u) = (1 - p_uu) u^2
        let u = b.clone();
        let du = u.homogeneous_degree(&s).unwrap();
        let puu = s.bicharacter(&du, &du).unwrap();
        let lhs = bracket(&s, BracketKind::Std, &u, &u).unwrap();
        let rhs = u
            .multiply(&s, &u)
            .scaled(&s, &f.sub(&f.one(), &puu));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn std_and_c_brackets_swap() {
        let s = space3();
        let x = gen(&s, 0);
        let yz = bracket(&s, BracketKind::Std, &gen(&s, 1), &gen(&s, 2)).unwrap();
        let a = bracket(&s, BracketKind::Std, &x, &yz).unwrap();
        let b = bracket(&s, BracketKind::C, &yz, &x).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn std_is_scaled_c_on_edgeless_pairs() {
        // with p12 p21 = 1: [u,v] = -p_vu [u,v]_c
        let rows = vec![
            vec![ScalarLit::integer(-1), ScalarLit::rational(1, 2)],
            vec![ScalarLit::integer(2), ScalarLit::integer(-1)],
        ];
        let s = BraidedSpace::from_literals(&rows).unwrap();
        let f = s.field();
        let u = gen(&s, 0);
        let v = gen(&s, 1);
        let std = bracket(&s, BracketKind::Std, &u, &v).unwrap();
        let c = bracket(&s, BracketKind::C, &u, &v).unwrap();
        let p_vu = s.q(1, 0).clone();
        assert_eq!(std, c.scaled(&s, &f.neg(&p_vu)));
    }

    #[test]
    fn iterated_bracket_binomial_expansion() {
        let s = space2();
        let f = s.field();
        let x1 = gen(&s, 0);
        let x2 = gen(&s, 1);
        for m in 0..=6usize {
            let lhs =
                iterated_bracket(&s, BracketKind::Minus, Side::Left, &x1, &x2, m).unwrap();
            let mut rhs = FreeElement::zero();
            let mut binom = 1i64;
            for k in 0..=m {
                let mut letters = vec![0u8; m - k];
                letters.push(1);
                letters.extend(std::iter::repeat(0u8).take(k));
                let sign = if k % 2 == 0 { binom } else { -binom };
                rhs = rhs.add(
                    &s,
                    &FreeElement::monomial(&s, Word(letters), f.from_integer(sign)),
                );
                binom = binom * (m as i64 - k as i64) / (k as i64 + 1);
            }
            assert_eq!(lhs, rhs, "binomial expansion at m = {m}");
        }
    }

    #[test]
    fn iterated_bracket_small_case() {
        let s = space2();
        let x1 = gen(&s, 0);
        let x2 = gen(&s, 1);
        let e = iterated_bracket(&s, BracketKind::Minus, Side::Left, &x1, &x2, 2).unwrap();
        assert_eq!(e.format(&s), "(1) * \"112\" + (-2) * \"121\" + (1) * \"211\"");
    }

    #[test]
    fn left_nested_matches_manual_nesting() {
        let s = space3();
        let manual = bracket(
            &s,
            BracketKind::Minus,
            &gen(&s, 0),
            &bracket(&s, BracketKind::Minus, &gen(&s, 1), &gen(&s, 2)).unwrap(),
        )
        .unwrap();
        let nested = left_nested(&s, BracketKind::Minus, &[0, 1, 2]).unwrap();
        assert_eq!(manual, nested);
        let single = left_nested(&s, BracketKind::Std, &[1]).unwrap();
        assert_eq!(single, gen(&s, 1));
        assert!(left_nested(&s, BracketKind::Std, &[]).is_err());
    }

    #[test]
    fn sigma_bracket_shapes() {
        let s = space2();
        let x1 = gen(&s, 0);
        let x2 = gen(&s, 1);
        let direct = bracket(&s, BracketKind::Minus, &x1, &x2).unwrap();
        assert_eq!(sigma_bracket(&s, &[x1.clone(), x2.clone()]).unwrap(), direct);
        assert!(sigma_bracket(&s, &[x1.clone(), x1.clone()])
            .unwrap()
            .is_zero());
        let four = sigma_bracket(&s, &[x1.clone(), x2.clone(), x1.clone(), x2.clone()]).unwrap();
        let manual = bracket(&s, BracketKind::Minus, &direct, &direct).unwrap();
        assert_eq!(four, manual);
        assert!(sigma_bracket(&s, &[x1.clone(), x2.clone(), x1.clone()]).is_err());
        assert!(sigma_bracket(&s, &[x1]).is_err());
    }

    #[test]
    fn derivation_defining_cases() {
        let s = space2();
        let f = s.field();
        let x1 = gen(&s, 0);
        let x2 = gen(&s, 1);
        assert_eq!(derive(&s, 0, &x1).unwrap(), FreeElement::unit(&s));
        assert!(derive(&s, 0, &x2).unwrap().is_zero());
        assert!(derive(&s, 0, &FreeElement::unit(&s)).unwrap().is_zero());
        assert!(derive(&s, 2, &x1).is_err());
        // <y_i, x_i^m> = (m)_a x_i^{m-1}, a = p_ii^{-1}
        let a = f.inv(s.q(0, 0)).unwrap();
        for m in 1..=5usize {
            let lhs = derive(&s, 0, &x1.pow(&s, m)).unwrap();
            let rhs = x1
                .pow(&s, m - 1)
                .scaled(&s, &f.quantum_int(m as u64, &a));
            assert_eq!(lhs, rhs, "power rule at m = {m}");
        }
        // <y_1, [x_1, x_2]^-> = (1 - p_12^{-1}) x_2
        let b = bracket(&s, BracketKind::Minus, &x1, &x2).unwrap();
        let c12 = f.sub(&f.one(), &f.inv(s.q(0, 1)).unwrap());
        assert_eq!(derive(&s, 0, &b).unwrap(), x2.scaled(&s, &c12));
        // <y_2, [x_1, x_2]^-> = (p_21^{-1} - 1) x_1
        let c21 = f.sub(&f.inv(s.q(1, 0)).unwrap(), &f.one());
        assert_eq!(derive(&s, 1, &b).unwrap(), x1.scaled(&s, &c21));
    }

    #[test]
    fn nested_pairing_formula() {
        // <y_i^m y_j, iterated minus bracket> = (c-1)^m (m)_a!  (unit word)
        let s = space2();
        let f = s.field();
        let x1 = gen(&s, 0);
        let x2 = gen(&s, 1);
        let a = f.inv(s.q(0, 0)).unwrap();
        let c = f.inv(s.q(1, 0)).unwrap();
        for m in 0..=4usize {
            let u = iterated_bracket(&s, BracketKind::Minus, Side::Left, &x1, &x2, m).unwrap();
            let mut yw = vec![0usize; m];
            yw.push(1);
            let got = pair_free(&s, &yw, &u).unwrap();
            let scalar = f.mul(
                &f.pow(&f.sub(&c, &f.one()), m as i64).unwrap(),
                &f.quantum_factorial(m as u64, &a),
            );
            let expected = FreeElement::monomial(&s, Word::empty(), scalar);
            assert_eq!(got, expected, "pairing at m = {m}");
        }
    }

    #[test]
    fn parse_round_trip() {
        let s = space2();
        let f = s.field();
        let b = bracket(&s, BracketKind::Std, &gen(&s, 0), &gen(&s, 1)).unwrap();
        let text = b.format(&s);
        let back = FreeElement::parse(&s, &text).unwrap();
        assert_eq!(b, back);
        // handwritten forms
        let e = FreeElement::parse(&s, "\"12\" + (-1/2 z12^3) * \"21\"").unwrap();
        let w21 = Word::parse("21").unwrap();
        let z3 = f.root(RootSpec::new(3, 12).unwrap()).unwrap();
        let expected = f.neg(&f.mul(&f.from_rational(num::BigRational::new(
            num::BigInt::from(1),
            num::BigInt::from(2),
        )), &z3));
        assert!(f.eq(e.coeff(&w21).unwrap(), &expected));
        assert_eq!(FreeElement::parse(&s, "0").unwrap(), FreeElement::zero());
        assert!(FreeElement::parse(&s, "\"13\"").is_err());
        assert!(FreeElement::parse(&s, "(1").is_err());
    }

    #[test]
    fn words_order_and_parse() {
        let w1 = Word::parse("112").unwrap();
        let w2 = Word::parse("12").unwrap();
        assert!(w1 < w2); // 1 < 2 at the second letter
        assert!(Word::parse("11").unwrap() < w1); // prefix first
        assert_eq!(w1.to_string(), "112");
        assert!(Word::parse("1x2").is_err());
        assert!(Word::parse("102").is_err());
        let f = CycloField::new(1).unwrap();
        let _ = f;
    }

    proptest! {
        #[test]
        fn formal_identity_on_random_triples(
            au in 0usize..3, bu in 0usize..3,
            av in 0usize..3, bv in 0usize..3,
            aw in 0usize..3, bw in 0usize..3,
        ) {
            // homogeneous degree-2 words over the rank-3 space
            let s = space3();
            let mk = |a: usize, b: usize| {
                FreeElement::from_word(&s, Word(vec![a as u8, b as u8]))
            };
            let (u, v, w) = (mk(au, bu), mk(av, bv), mk(aw, bw));
            prop_assert!(kharchenko_identity_check(&s, &u, &v, &w).unwrap());
        }

        #[test]
        fn twisted_leibniz_rule(
            wu in proptest::collection::vec(0u8..2, 0..4),
            wv in proptest::collection::vec(0u8..2, 0..4),
            i in 0usize..2,
        ) {
            let s = space2();
            let f = s.field();
            let u = FreeElement::from_word(&s, Word(wu.clone()));
            let v = FreeElement::from_word(&s, Word(wv));
            let lhs = derive(&s, i, &u.multiply(&s, &v)).unwrap();
            let du = MultiDegree::of_letters(2, &wu);
            let twist = f
                .inv(&s.bicharacter(&MultiDegree::unit(2, i), &du).unwrap())
                .unwrap();
            let rhs = derive(&s, i, &u)
                .unwrap()
                .multiply(&s, &v)
                .add(&s, &u.multiply(&s, &derive(&s, i, &v).unwrap()).scaled(&s, &twist));
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn bracket_degree_additivity(
            wu in proptest::collection::vec(0u8..2, 1..4),
            wv in proptest::collection::vec(0u8..2, 1..4),
        ) {
            let s = space2();
            let u = FreeElement::from_word(&s, Word(wu.clone()));
            let v = FreeElement::from_word(&s, Word(wv.clone()));
            for kind in [BracketKind::Std, BracketKind::Minus, BracketKind::C] {
                let b = bracket(&s, kind, &u, &v).unwrap();
                if !b.is_zero() {
                    let expect = MultiDegree::of_letters(2, &wu)
                        .add(&MultiDegree::of_letters(2, &wv));
                    prop_assert_eq!(b.homogeneous_degree(&s).unwrap(), expect);
                }
            }
        }

        #[test]
        fn minus_bracket_antisymmetry(
            wu in proptest::collection::vec(0u8..3, 1..4),
            wv in proptest::collection::vec(0u8..3, 1..4),
        ) {
            let s = space3();
            let u = FreeElement::from_word(&s, Word(wu));
            let v = FreeElement::from_word(&s, Word(wv));
            let ab = bracket(&s, BracketKind::Minus, &u, &v).unwrap();
            let ba = bracket(&s, BracketKind::Minus, &v, &u).unwrap();
            prop_assert_eq!(ab, ba.scaled(&s, &s.field().from_integer(-1)));
        }
    }
}
