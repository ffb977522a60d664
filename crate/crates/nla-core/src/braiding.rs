//! Braided vector spaces of diagonal type: the braiding matrix, the
//! bicharacter on multidegrees, generalized / directed / mixed Dynkin
//! diagrams, structural predicates, and Cartan-type presets.

use crate::cyclo::{lcm, CycloField, CycloScalar, ScalarLit};
use crate::{Error, Result};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

/// Multidegree in `N^n`: one exponent per generator.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MultiDegree(pub Vec<u32>);

impl MultiDegree {
    pub fn zero(n: usize) -> Self {
        MultiDegree(vec![0; n])
    }

    /// The degree `e_i` of the generator `x_i` (0-based).
    pub fn unit(n: usize, i: usize) -> Self {
        let mut v = vec![0; n];
        v[i] = 1;
        MultiDegree(v)
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn get(&self, i: usize) -> u32 {
        self.0[i]
    }

    pub fn add(&self, other: &MultiDegree) -> MultiDegree {
        MultiDegree(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    pub fn add_unit(&self, i: usize) -> MultiDegree {
        let mut v = self.0.clone();
        v[i] += 1;
        MultiDegree(v)
    }

    /// Componentwise difference, `None` if any coordinate would go negative.
    pub fn checked_sub(&self, other: &MultiDegree) -> Option<MultiDegree> {
        let mut v = Vec::with_capacity(self.0.len());
        for (a, b) in self.0.iter().zip(&other.0) {
            v.push(a.checked_sub(*b)?);
        }
        Some(MultiDegree(v))
    }

    /// Degree of a word given as 0-based letters.
    pub fn of_letters(n: usize, letters: &[u8]) -> Self {
        let mut v = vec![0u32; n];
        for &l in letters {
            v[l as usize] += 1;
        }
        MultiDegree(v)
    }

    /// All multidegrees of the given total degree, in increasing lex order.
    pub fn all_of_total(n: usize, total: u32) -> Vec<MultiDegree> {
        fn rec(n: usize, total: u32, acc: &mut Vec<u32>, out: &mut Vec<MultiDegree>) {
            if n == 1 {
                acc.push(total);
                out.push(MultiDegree(acc.clone()));
                acc.pop();
                return;
            }
            for first in 0..=total {
                acc.push(first);
                rec(n - 1, total - first, acc, out);
                acc.pop();
            }
        }
        let mut out = Vec::new();
        rec(n, total, &mut Vec::new(), &mut out);
        out
    }
}

impl fmt::Display for MultiDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, e) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

/// A diagonal braiding: rank `n` plus the matrix `q_ij`, all entries nonzero.
#[derive(Clone, Debug)]
pub struct BraidedSpace {
    n: usize,
    field: CycloField,
    q: Vec<Vec<CycloScalar>>,
}

impl BraidedSpace {
    pub fn new(field: CycloField, q: Vec<Vec<CycloScalar>>) -> Result<Self> {
        let n = q.len();
        if n == 0 {
            return Err(Error::Shape("braiding matrix must be nonempty".into()));
        }
        for (i, row) in q.iter().enumerate() {
            if row.len() != n {
                return Err(Error::Shape(format!(
                    "row {i} has length {} in a {n}-row matrix",
                    row.len()
                )));
            }
            for (j, entry) in row.iter().enumerate() {
                if field.is_zero(entry) {
                    return Err(Error::InvalidBraiding(i, j));
                }
            }
        }
        Ok(BraidedSpace { n, field, q })
    }

    /// Load from scalar literals; the conductor is the lcm of all entries.
    pub fn from_literals(rows: &[Vec<ScalarLit>]) -> Result<Self> {
        let mut conductor = 1u64;
        for row in rows {
            for lit in row {
                conductor = lcm(conductor, lit.conductor());
            }
        }
        let field = CycloField::new(conductor)?;
        let q: Vec<Vec<CycloScalar>> = rows
            .iter()
            .map(|row| {
                row.iter()
                    .map(|lit| field.from_literal(lit))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        BraidedSpace::new(field, q)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> &CycloField {
        &self.field
    }

    pub fn q(&self, i: usize, j: usize) -> &CycloScalar {
        &self.q[i][j]
    }

    pub fn matrix(&self) -> &Vec<Vec<CycloScalar>> {
        &self.q
    }

    /// `chi(alpha, beta) = prod q_ij^(alpha_i beta_j)`.
    pub fn bicharacter(&self, alpha: &MultiDegree, beta: &MultiDegree) -> Result<CycloScalar> {
        if alpha.rank() != self.n || beta.rank() != self.n {
            return Err(Error::Shape(format!(
                "multidegree rank must be {}",
                self.n
            )));
        }
        let mut acc = self.field.one();
        for i in 0..self.n {
            let a = alpha.get(i) as i64;
            if a == 0 {
                continue;
            }
            for j in 0..self.n {
                let b = beta.get(j) as i64;
                if b == 0 {
                    continue;
                }
                let p = self.field.pow(&self.q[i][j], a * b)?;
                acc = self.field.mul(&acc, &p);
            }
        }
        Ok(acc)
    }

    pub fn diagram(&self) -> GeneralizedDynkinDiagram {
        let f = &self.field;
        let one = f.one();
        let mut edge_labels = BTreeMap::new();
        let mut directed_arrows = BTreeSet::new();
        for i in 0..self.n {
            for j in 0..self.n {
                if i == j {
                    continue;
                }
                if !f.eq(&self.q[i][j], &one) {
                    directed_arrows.insert((i, j));
                }
                if i < j {
                    let p = f.mul(&self.q[i][j], &self.q[j][i]);
                    if !f.eq(&p, &one) {
                        edge_labels.insert((i, j), p);
                    }
                }
            }
        }
        GeneralizedDynkinDiagram {
            n: self.n,
            vertex_labels: (0..self.n).map(|i| self.q[i][i].clone()).collect(),
            edge_labels,
            directed_arrows,
            field: self.field.clone(),
        }
    }

    /// DOT text for the undirected labeled diagram.
    pub fn dot_gdd(&self) -> String {
        self.diagram().to_dot()
    }

    /// DOT text for the directed diagram: an arrow `i -> j` whenever
    /// `q_ij != 1`, labeled by `q_ij`.
    pub fn dot_directed(&self) -> String {
        let f = &self.field;
        let d = self.diagram();
        let mut out = String::from("digraph directed {\n");
        for (i, l) in d.vertex_labels.iter().enumerate() {
            out.push_str(&format!("  v{} [label=\"{}: {}\"];\n", i + 1, i + 1, f.format(l)));
        }
        for &(i, j) in &d.directed_arrows {
            out.push_str(&format!(
                "  v{} -> v{} [label=\"{}\"];\n",
                i + 1,
                j + 1,
                f.format(&self.q[i][j])
            ));
        }
        out.push_str("}\n");
        out
    }

    /// DOT text overlaying the undirected diagram and the arrows.
    pub fn dot_mixed(&self) -> String {
        let f = &self.field;
        let d = self.diagram();
        let mut out = String::from("digraph mixed {\n");
        for (i, l) in d.vertex_labels.iter().enumerate() {
            out.push_str(&format!("  v{} [label=\"{}: {}\"];\n", i + 1, i + 1, f.format(l)));
        }
        for ((i, j), l) in &d.edge_labels {
            out.push_str(&format!(
                "  v{} -> v{} [dir=none, label=\"{}\"];\n",
                i + 1,
                j + 1,
                f.format(l)
            ));
        }
        for &(i, j) in &d.directed_arrows {
            out.push_str(&format!(
                "  v{} -> v{} [label=\"{}\"];\n",
                i + 1,
                j + 1,
                f.format(&self.q[i][j])
            ));
        }
        out.push_str("}\n");
        out
    }
}

/// Undirected labeled diagram (vertices `q_ii`, edges `q_ij q_ji != 1`)
/// together with the arrow set of the directed variant.
#[derive(Clone, Debug)]
pub struct GeneralizedDynkinDiagram {
    pub n: usize,
    pub vertex_labels: Vec<CycloScalar>,
    /// Keyed by `(i, j)` with `i < j`; present only when the label is not 1.
    pub edge_labels: BTreeMap<(usize, usize), CycloScalar>,
    /// Ordered pairs `(i, j)` with `q_ij != 1`.
    pub directed_arrows: BTreeSet<(usize, usize)>,
    field: CycloField,
}

impl GeneralizedDynkinDiagram {
    pub fn field(&self) -> &CycloField {
        &self.field
    }

    /// Graph connectivity of the edge set; a single vertex counts as
    /// connected.
    pub fn is_connected(&self) -> bool {
        if self.n <= 1 {
            return true;
        }
        let mut seen = vec![false; self.n];
        let mut stack = vec![0usize];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for &(i, j) in self.edge_labels.keys() {
                let other = if i == v {
                    j
                } else if j == v {
                    i
                } else {
                    continue;
                };
                if !seen[other] {
                    seen[other] = true;
                    stack.push(other);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Every one of the `C(n,2)` possible edges is present.
    pub fn is_complete(&self) -> bool {
        self.edge_labels.len() == self.n * (self.n - 1) / 2
    }

    /// No edges at all (and at least two vertices): `q_ij q_ji = 1` for all
    /// `i != j`.
    pub fn is_quantum_linear(&self) -> bool {
        self.n >= 2 && self.edge_labels.is_empty()
    }

    pub fn to_dot(&self) -> String {
        let f = &self.field;
        let mut out = String::from("graph gdd {\n");
        for (i, l) in self.vertex_labels.iter().enumerate() {
            out.push_str(&format!("  v{} [label=\"{}: {}\"];\n", i + 1, i + 1, f.format(l)));
        }
        for ((i, j), l) in &self.edge_labels {
            out.push_str(&format!(
                "  v{} -- v{} [label=\"{}\"];\n",
                i + 1,
                j + 1,
                f.format(l)
            ));
        }
        out.push_str("}\n");
        out
    }
}

/// Two spaces are twist equivalent when their diagrams agree vertex for
/// vertex: equal `q_ii` and equal products `q_ij q_ji`. No vertex relabeling
/// is attempted.
pub fn twist_equivalent(s1: &BraidedSpace, s2: &BraidedSpace) -> Result<bool> {
    if s1.n != s2.n {
        return Ok(false);
    }
    let l = lcm(s1.field.conductor(), s2.field.conductor());
    let big = CycloField::new(l)?;
    for i in 0..s1.n {
        for j in 0..s1.n {
            let a = if i == j {
                s1.q[i][i].clone()
            } else {
                s1.field.mul(&s1.q[i][j], &s1.q[j][i])
            };
            let b = if i == j {
                s2.q[i][i].clone()
            } else {
                s2.field.mul(&s2.q[i][j], &s2.q[j][i])
            };
            if !big.eq(&big.embed(&s1.field, &a)?, &big.embed(&s2.field, &b)?) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The nine connected finite Cartan shapes with their standard labels.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum CartanType {
    A,
    B,
    C,
    D,
    E6,
    E7,
    E8,
    F4,
    G2,
}

impl CartanType {
    pub fn parse(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "A" => Ok(CartanType::A),
            "B" => Ok(CartanType::B),
            "C" => Ok(CartanType::C),
            "D" => Ok(CartanType::D),
            "E6" => Ok(CartanType::E6),
            "E7" => Ok(CartanType::E7),
            "E8" => Ok(CartanType::E8),
            "F4" => Ok(CartanType::F4),
            "G2" => Ok(CartanType::G2),
            other => Err(Error::InvalidPreset(format!("unknown type {other:?}"))),
        }
    }

    pub fn check_rank(self, n: usize) -> Result<()> {
        let ok = match self {
            CartanType::A => n >= 1,
            CartanType::B | CartanType::C => n >= 2,
            CartanType::D => n >= 4,
            CartanType::E6 => n == 6,
            CartanType::E7 => n == 7,
            CartanType::E8 => n == 8,
            CartanType::F4 => n == 4,
            CartanType::G2 => n == 2,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidPreset(format!(
                "rank {n} is not valid for type {self:?}"
            )))
        }
    }

    /// Chain / fork edges as unordered 0-based pairs.
    fn edges(self, n: usize) -> Vec<(usize, usize)> {
        match self {
            CartanType::D => {
                let mut e: Vec<(usize, usize)> = (0..n.saturating_sub(3))
                    .map(|i| (i, i + 1))
                    .collect();
                e.push((n - 3, n - 2));
                e.push((n - 3, n - 1));
                e
            }
            CartanType::E6 | CartanType::E7 | CartanType::E8 => {
                let mut e: Vec<(usize, usize)> = (0..n - 2).map(|i| (i, i + 1)).collect();
                e.push((n - 4, n - 1));
                e
            }
            _ => (0..n - 1).map(|i| (i, i + 1)).collect(),
        }
    }

    /// Exponent of `q` at each vertex (the diagonal label is `q^d_i`).
    fn vertex_exponents(self, n: usize) -> Vec<i64> {
        match self {
            CartanType::B => {
                let mut v = vec![2i64; n];
                v[n - 1] = 1;
                v
            }
            CartanType::C => {
                let mut v = vec![1i64; n];
                v[n - 1] = 2;
                v
            }
            CartanType::F4 => vec![2, 2, 1, 1],
            CartanType::G2 => vec![1, 3],
            _ => vec![1i64; n],
        }
    }

    /// Exponent of `q` on each edge, aligned with `edges(n)`.
    fn edge_exponents(self, n: usize) -> Vec<i64> {
        match self {
            CartanType::B => vec![-2; n - 1],
            CartanType::C => {
                let mut v = vec![-1i64; n - 1];
                v[n - 2] = -2;
                v
            }
            CartanType::F4 => vec![-2, -2, -1],
            CartanType::G2 => vec![-3],
            _ => vec![-1; self.edges(n).len()],
        }
    }
}

/// Braiding matrix with `q_ii` and `q_ij q_ji` matching the standard labeled
/// diagram of the given type. Off-diagonal split: for an edge `i < j` the
/// whole label goes to `q_ij` and `q_ji = 1`; non-edges get `q_ij = q_ji = 1`.
pub fn cartan_preset(
    t: CartanType,
    n: usize,
    field: &CycloField,
    q: &CycloScalar,
) -> Result<BraidedSpace> {
    t.check_rank(n)?;
    if field.is_zero(q) {
        return Err(Error::InvalidPreset("q must be nonzero".into()));
    }
    let mut m: Vec<Vec<CycloScalar>> = vec![vec![field.one(); n]; n];
    for (i, e) in t.vertex_exponents(n).iter().enumerate() {
        m[i][i] = field.pow(q, *e)?;
    }
    for ((i, j), e) in t.edges(n).into_iter().zip(t.edge_exponents(n)) {
        let (i, j) = if i < j { (i, j) } else { (j, i) };
        m[i][j] = field.pow(q, e)?;
    }
    BraidedSpace::new(field.clone(), m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclo::RootSpec;
    use proptest::prelude::*;

    fn lit_matrix(entries: &[&[ScalarLit]]) -> BraidedSpace {
        let rows: Vec<Vec<ScalarLit>> = entries.iter().map(|r| r.to_vec()).collect();
        BraidedSpace::from_literals(&rows).unwrap()
    }

    fn quantum_linear_example() -> BraidedSpace {
        let m1 = ScalarLit::integer(-1);
        let one = ScalarLit::integer(1);
        lit_matrix(&[&[m1.clone(), one.clone()], &[one, m1]])
    }

    fn a2_zeta3() -> BraidedSpace {
        let f = CycloField::new(3).unwrap();
        let z = f.root(RootSpec::new(1, 3).unwrap()).unwrap();
        cartan_preset(CartanType::A, 2, &f, &z).unwrap()
    }

    #[test]
    fn quantum_linear_space_has_no_edges() {
        let s = quantum_linear_example();
        let d = s.diagram();
        assert!(d.edge_labels.is_empty());
        assert!(d.is_quantum_linear());
        assert!(!d.is_connected());
        assert!(!d.is_complete());
    }

    #[test]
    fn rank_one_trivial_space() {
        let s = lit_matrix(&[&[ScalarLit::integer(1)]]);
        let d = s.diagram();
        assert!(d.is_connected());
        assert!(!d.is_quantum_linear());
        assert!(d.directed_arrows.is_empty());
    }

    #[test]
    fn explicit_matrix_matches_preset_diagram() {
        // [[z3, z3^2], [1, z3]] carries the same diagram as the A2 preset
        let z = ScalarLit::zeta(1, 3);
        let z2 = ScalarLit::zeta(2, 3);
        let s = lit_matrix(&[&[z.clone(), z2], &[ScalarLit::integer(1), z]]);
        assert!(twist_equivalent(&s, &a2_zeta3()).unwrap());
        let d = s.diagram();
        assert_eq!(d.edge_labels.len(), 1);
        let f = s.field();
        let qinv = f.pow(s.q(0, 0), -1).unwrap();
        assert!(f.eq(&d.edge_labels[&(0, 1)], &qinv));
    }

    #[test]
    fn zero_entry_rejected() {
        let z = ScalarLit::integer(0);
        let one = ScalarLit::integer(1);
        let err = BraidedSpace::from_literals(&[vec![one.clone(), z], vec![one.clone(), one]]);
        assert!(matches!(err, Err(Error::InvalidBraiding(0, 1))));
    }

    #[test]
    fn non_square_rejected() {
        let one = ScalarLit::integer(1);
        let err = BraidedSpace::from_literals(&[vec![one.clone(), one.clone()], vec![one]]);
        assert!(matches!(err, Err(Error::Shape(_))));
    }

    #[test]
    fn bicharacter_defining_cases() {
        let s = a2_zeta3();
        let f = s.field();
        let e1 = MultiDegree::unit(2, 0);
        let e2 = MultiDegree::unit(2, 1);
        assert!(f.eq(&s.bicharacter(&e1, &e2).unwrap(), s.q(0, 1)));
        let zero = MultiDegree::zero(2);
        assert!(f.eq(&s.bicharacter(&zero, &e2).unwrap(), &f.one()));
        // chi(e1+e2, e1+e2) = q11 q12 q21 q22 = z3 at the A2 preset
        let both = e1.add(&e2);
        let z = f.root(RootSpec::new(1, 3).unwrap()).unwrap();
        assert!(f.eq(&s.bicharacter(&both, &both).unwrap(), &z));
        assert!(s.bicharacter(&MultiDegree::zero(3), &e2).is_err());
    }

    #[test]
    fn a3_preset_is_a_chain() {
        let f = CycloField::new(3).unwrap();
        let z = f.root(RootSpec::new(1, 3).unwrap()).unwrap();
        let s = cartan_preset(CartanType::A, 3, &f, &z).unwrap();
        let d = s.diagram();
        let keys: Vec<(usize, usize)> = d.edge_labels.keys().copied().collect();
        assert_eq!(keys, vec![(0, 1), (1, 2)]);
        assert!(d.is_connected());
        assert!(!d.is_complete());
    }

    #[test]
    fn twist_equivalence_of_the_two_linear_variants() {
        // same q_ii = -1 and q12 q21 = 1, different q12
        let one = ScalarLit::integer(1);
        let m1 = ScalarLit::integer(-1);
        let v1 = lit_matrix(&[&[m1.clone(), one.clone()], &[one.clone(), m1.clone()]]);
        let v2 = lit_matrix(&[&[m1.clone(), m1.clone()], &[m1.clone(), m1.clone()]]);
        assert!(twist_equivalent(&v1, &v2).unwrap());
        assert!(twist_equivalent(&v1, &v1).unwrap());
    }

    #[test]
    fn a2_and_b2_presets_are_not_twist_equivalent() {
        let f = CycloField::new(3).unwrap();
        let z = f.root(RootSpec::new(1, 3).unwrap()).unwrap();
        let a2 = cartan_preset(CartanType::A, 2, &f, &z).unwrap();
        let b2 = cartan_preset(CartanType::B, 2, &f, &z).unwrap();
        assert!(!twist_equivalent(&a2, &b2).unwrap());
    }

    #[test]
    fn g2_preset_labels() {
        let f = CycloField::new(7).unwrap();
        let z = f.root(RootSpec::new(1, 7).unwrap()).unwrap();
        let s = cartan_preset(CartanType::G2, 2, &f, &z).unwrap();
        assert!(f.eq(s.q(0, 0), &z));
        assert!(f.eq(s.q(1, 1), &f.pow(&z, 3).unwrap()));
        let p = f.mul(s.q(0, 1), s.q(1, 0));
        assert!(f.eq(&p, &f.pow(&z, -3).unwrap()));
    }

    #[test]
    fn b3_preset_labels() {
        let f = CycloField::new(8).unwrap();
        let z = f.root(RootSpec::new(1, 8).unwrap()).unwrap();
        let s = cartan_preset(CartanType::B, 3, &f, &z).unwrap();
        let q2 = f.pow(&z, 2).unwrap();
        assert!(f.eq(s.q(0, 0), &q2));
        assert!(f.eq(s.q(1, 1), &q2));
        assert!(f.eq(s.q(2, 2), &z));
        let d = s.diagram();
        let qm2 = f.pow(&z, -2).unwrap();
        assert!(f.eq(&d.edge_labels[&(0, 1)], &qm2));
        assert!(f.eq(&d.edge_labels[&(1, 2)], &qm2));
    }

    #[test]
    fn d4_and_e6_shapes() {
        let f = CycloField::new(5).unwrap();
        let z = f.root(RootSpec::new(1, 5).unwrap()).unwrap();
        let d4 = cartan_preset(CartanType::D, 4, &f, &z).unwrap().diagram();
        let keys: Vec<(usize, usize)> = d4.edge_labels.keys().copied().collect();
        assert_eq!(keys, vec![(0, 1), (1, 2), (1, 3)]);
        let e6 = cartan_preset(CartanType::E6, 6, &f, &z).unwrap().diagram();
        let keys: Vec<(usize, usize)> = e6.edge_labels.keys().copied().collect();
        assert_eq!(keys, vec![(0, 1), (1, 2), (2, 3), (2, 5), (3, 4)]);
        assert!(e6.is_connected());
        assert!(cartan_preset(CartanType::D, 3, &f, &z).is_err());
        assert!(cartan_preset(CartanType::E6, 7, &f, &z).is_err());
    }

    #[test]
    fn diagram_ignores_transposition() {
        let z = ScalarLit::zeta(1, 12);
        let two = ScalarLit::rational(2, 1);
        let m1 = ScalarLit::integer(-1);
        let s = lit_matrix(&[&[m1.clone(), z.clone()], &[two.clone(), m1.clone()]]);
        let st = lit_matrix(&[&[m1.clone(), two], &[z, m1]]);
        assert!(twist_equivalent(&s, &st).unwrap());
        let (d, dt) = (s.diagram(), st.diagram());
        assert_eq!(
            d.edge_labels.keys().collect::<Vec<_>>(),
            dt.edge_labels.keys().collect::<Vec<_>>()
        );
        // arrows do depend on orientation
        assert!(d.directed_arrows.contains(&(0, 1)));
    }

    #[test]
    fn dot_outputs_have_expected_shape() {
        let s = a2_zeta3();
        let gdd = s.dot_gdd();
        assert!(gdd.starts_with("graph gdd {"));
        assert!(gdd.contains("v1 -- v2"));
        let directed = s.dot_directed();
        assert!(directed.starts_with("digraph"));
        assert!(directed.contains("v1 -> v2"));
        let mixed = s.dot_mixed();
        assert!(mixed.contains("dir=none"));
    }

    proptest! {
        #[test]
        fn bicharacter_is_biadditive(
            a in proptest::collection::vec(0u32..4, 2),
            b in proptest::collection::vec(0u32..4, 2),
            c in proptest::collection::vec(0u32..4, 2),
        ) {
            let half = ScalarLit::rational(1, 2);
            let z = ScalarLit::zeta(1, 12);
            let m1 = ScalarLit::integer(-1);
            let s = lit_matrix(&[&[z.clone(), half], &[m1, z]]);
            let f = s.field();
            let (a, b, c) = (MultiDegree(a), MultiDegree(b), MultiDegree(c));
            let lhs = s.bicharacter(&a.add(&b), &c).unwrap();
            let rhs = f.mul(
                &s.bicharacter(&a, &c).unwrap(),
                &s.bicharacter(&b, &c).unwrap(),
            );
            prop_assert!(f.eq(&lhs, &rhs));
            let lhs2 = s.bicharacter(&a, &b.add(&c)).unwrap();
            let rhs2 = f.mul(
                &s.bicharacter(&a, &b).unwrap(),
                &s.bicharacter(&a, &c).unwrap(),
            );
            prop_assert!(f.eq(&lhs2, &rhs2));
        }

        #[test]
        fn a_type_complete_only_at_rank_two(n in 2usize..6) {
            let f = CycloField::new(3).unwrap();
            let z = f.root(RootSpec::new(1, 3).unwrap()).unwrap();
            let d = cartan_preset(CartanType::A, n, &f, &z).unwrap().diagram();
            prop_assert!(d.is_connected());
            prop_assert_eq!(d.is_complete(), n == 2);
        }
    }
}
