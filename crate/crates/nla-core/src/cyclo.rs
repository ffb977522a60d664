//! Exact arithmetic in cyclotomic fields `Q(zeta_L)`.
//!
//! A scalar is a vector of rationals over the power basis
//! `1, zeta, ..., zeta^(phi(L)-1)`, reduced modulo the L-th cyclotomic
//! polynomial. Every scalar the engine ever touches is a sum of terms
//! `(p/q) * zeta_N^k`, so a single conductor per computation suffices; when
//! two conductors meet, both sides embed into the lcm.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use std::fmt::Write as _;
use std::str::FromStr;

use crate::{Error, Result};

/// A root of unity `zeta_N^k`, with `0 <= k < N`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct RootSpec {
    pub k: u64,
    pub n: u64,
}

impl RootSpec {
    pub fn new(k: i64, n: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidOrder);
        }
        let k = k.rem_euclid(n as i64) as u64;
        Ok(RootSpec { k, n })
    }

    /// Multiplicative order of `zeta_n^k`.
    pub fn order(&self) -> u64 {
        if self.k == 0 {
            1
        } else {
            self.n / gcd(self.k, self.n)
        }
    }
}

/// Order of a scalar under multiplication.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Order {
    Finite(u64),
    Infinite,
}

impl Order {
    pub fn finite(&self) -> Option<u64> {
        match self {
            Order::Finite(n) => Some(*n),
            Order::Infinite => None,
        }
    }
}

/// Element of `Q(zeta_L)` over the power basis; length equals `phi(L)`.
///
/// A scalar is only meaningful relative to the [`CycloField`] that produced
/// it; all arithmetic goes through the field object.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycloScalar {
    pub(crate) coeffs: Vec<BigRational>,
}

impl CycloScalar {
    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }
}

/// The field `Q(zeta_L)` with precomputed reduction data.
#[derive(Clone, Debug)]
pub struct CycloField {
    conductor: u64,
    phi: usize,
    /// Coefficients of the monic minimal polynomial `Phi_L` (length phi+1).
    min_poly: Vec<BigRational>,
    /// `zeta^m` over the power basis for `m` in `phi ..= 2*phi - 2`.
    high_powers: Vec<Vec<BigRational>>,
}

impl CycloField {
    pub fn new(conductor: u64) -> Result<Self> {
        if conductor == 0 {
            return Err(Error::InvalidOrder);
        }
        let phi_int = cyclotomic_polynomial(conductor);
        let min_poly: Vec<BigRational> = phi_int
            .iter()
            .map(|c| BigRational::from_integer(c.clone()))
            .collect();
        let phi = min_poly.len() - 1;
        // zeta^phi = -(lower part of Phi); shift-and-reduce for the rest.
        let mut high_powers: Vec<Vec<BigRational>> = Vec::new();
        if phi > 0 {
            let first: Vec<BigRational> = min_poly[..phi].iter().map(|c| -c.clone()).collect();
            high_powers.push(first);
            for _ in 1..phi.saturating_sub(1) {
                let prev = high_powers.last().unwrap();
                let mut next = vec![BigRational::zero(); phi];
                let top = prev[phi - 1].clone();
                for i in (1..phi).rev() {
                    next[i] = prev[i - 1].clone();
                }
                if !top.is_zero() {
                    for (i, c) in high_powers[0].iter().enumerate() {
                        next[i] += &top * c;
                    }
                }
                high_powers.push(next);
            }
        }
        Ok(CycloField {
            conductor,
            phi,
            min_poly,
            high_powers,
        })
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    /// Degree of the field extension, `phi(L)`.
    pub fn degree(&self) -> usize {
        self.phi
    }

    pub fn zero(&self) -> CycloScalar {
        CycloScalar {
            coeffs: vec![BigRational::zero(); self.phi],
        }
    }

    pub fn one(&self) -> CycloScalar {
        self.from_integer(1)
    }

    pub fn from_integer(&self, n: i64) -> CycloScalar {
        self.from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_rational(&self, r: BigRational) -> CycloScalar {
        let mut s = self.zero();
        s.coeffs[0] = r;
        s
    }

    /// `zeta_N^k` as an element; `N` must divide the conductor.
    pub fn root(&self, spec: RootSpec) -> Result<CycloScalar> {
        if spec.n == 0 || self.conductor % spec.n != 0 {
            return Err(Error::InvalidArgument(format!(
                "root of order {} does not live at conductor {}",
                spec.n, self.conductor
            )));
        }
        let e = (spec.k * (self.conductor / spec.n)) % self.conductor;
        Ok(self.zeta_power(e))
    }

    /// `zeta_L^e` reduced over the power basis.
    fn zeta_power(&self, e: u64) -> CycloScalar {
        let e = (e % self.conductor) as usize;
        if e < self.phi {
            let mut s = self.zero();
            s.coeffs[e] = BigRational::one();
            return s;
        }
        // walk up one multiplication-by-zeta at a time; conductors are small
        let mut cur = {
            let mut s = self.zero();
            s.coeffs[self.phi - 1] = BigRational::one();
            s
        };
        for _ in self.phi - 1..e {
            cur = self.mul_by_zeta(&cur);
        }
        cur
    }

    fn mul_by_zeta(&self, a: &CycloScalar) -> CycloScalar {
        let mut out = self.zero();
        let top = a.coeffs[self.phi - 1].clone();
        for i in (1..self.phi).rev() {
            out.coeffs[i] = a.coeffs[i - 1].clone();
        }
        if !top.is_zero() {
            for (i, c) in self.high_powers[0].iter().enumerate() {
                out.coeffs[i] += &top * c;
            }
        }
        out
    }

    pub fn is_zero(&self, a: &CycloScalar) -> bool {
        a.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn eq(&self, a: &CycloScalar, b: &CycloScalar) -> bool {
        a.coeffs == b.coeffs
    }

    pub fn add(&self, a: &CycloScalar, b: &CycloScalar) -> CycloScalar {
        CycloScalar {
            coeffs: a
                .coeffs
                .iter()
                .zip(&b.coeffs)
                .map(|(x, y)| x + y)
                .collect(),
        }
    }

    pub fn add_assign(&self, a: &mut CycloScalar, b: &CycloScalar) {
        for (x, y) in a.coeffs.iter_mut().zip(&b.coeffs) {
            *x += y;
        }
    }

    pub fn sub(&self, a: &CycloScalar, b: &CycloScalar) -> CycloScalar {
        CycloScalar {
            coeffs: a
                .coeffs
                .iter()
                .zip(&b.coeffs)
                .map(|(x, y)| x - y)
                .collect(),
        }
    }

    pub fn neg(&self, a: &CycloScalar) -> CycloScalar {
        CycloScalar {
            coeffs: a.coeffs.iter().map(|x| -x).collect(),
        }
    }

    pub fn mul(&self, a: &CycloScalar, b: &CycloScalar) -> CycloScalar {
        if self.phi == 1 {
            return CycloScalar {
                coeffs: vec![&a.coeffs[0] * &b.coeffs[0]],
            };
        }
        // schoolbook convolution, then fold powers >= phi through the table
        let mut conv = vec![BigRational::zero(); 2 * self.phi - 1];
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                conv[i + j] += x * y;
            }
        }
        let mut out: Vec<BigRational> = conv[..self.phi].to_vec();
        for m in self.phi..2 * self.phi - 1 {
            let c = &conv[m];
            if c.is_zero() {
                continue;
            }
            for (i, h) in self.high_powers[m - self.phi].iter().enumerate() {
                out[i] += c * h;
            }
        }
        CycloScalar { coeffs: out }
    }

    pub fn mul_add_assign(&self, acc: &mut CycloScalar, a: &CycloScalar, b: &CycloScalar) {
        let p = self.mul(a, b);
        self.add_assign(acc, &p);
    }

    pub fn inv(&self, a: &CycloScalar) -> Result<CycloScalar> {
        if self.is_zero(a) {
            return Err(Error::DivisionByZero);
        }
        if self.phi == 1 {
            return Ok(CycloScalar {
                coeffs: vec![a.coeffs[0].recip()],
            });
        }
        let coeffs = poly_inverse_mod(&a.coeffs, &self.min_poly).ok_or(Error::DivisionByZero)?;
        let mut out = vec![BigRational::zero(); self.phi];
        out[..coeffs.len()].clone_from_slice(&coeffs);
        Ok(CycloScalar { coeffs: out })
    }

    pub fn div(&self, a: &CycloScalar, b: &CycloScalar) -> Result<CycloScalar> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    pub fn pow(&self, a: &CycloScalar, e: i64) -> Result<CycloScalar> {
        if e < 0 {
            let inv = self.inv(a)?;
            return self.pow(&inv, -e);
        }
        let mut base = a.clone();
        let mut e = e as u64;
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        Ok(acc)
    }

    /// Re-express a scalar from a field whose conductor divides ours.
    pub fn embed(&self, src: &CycloField, a: &CycloScalar) -> Result<CycloScalar> {
        if self.conductor % src.conductor != 0 {
            return Err(Error::InvalidArgument(format!(
                "cannot embed conductor {} into {}",
                src.conductor, self.conductor
            )));
        }
        let step = self.conductor / src.conductor;
        let mut out = self.zero();
        for (k, c) in a.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let z = self.zeta_power(k as u64 * step);
            for (i, zc) in z.coeffs.iter().enumerate() {
                out.coeffs[i] += c * zc;
            }
        }
        Ok(out)
    }

    /// `(k)_a = 1 + a + ... + a^(k-1)`.
    pub fn quantum_int(&self, k: u64, a: &CycloScalar) -> CycloScalar {
        let mut acc = self.zero();
        let mut p = self.one();
        for _ in 0..k {
            self.add_assign(&mut acc, &p);
            p = self.mul(&p, a);
        }
        acc
    }

    /// `(k)_a! = (1)_a (2)_a ... (k)_a`; empty product for `k = 0`.
    pub fn quantum_factorial(&self, k: u64, a: &CycloScalar) -> CycloScalar {
        let mut acc = self.one();
        for j in 1..=k {
            acc = self.mul(&acc, &self.quantum_int(j, a));
        }
        acc
    }

    /// Smallest `m` with `a^m = 1`, searched over the divisors of `2L`
    /// (the only orders a root of unity in `Q(zeta_L)` can have).
    pub fn mult_order(&self, a: &CycloScalar) -> Result<Order> {
        if self.is_zero(a) {
            return Err(Error::DivisionByZero);
        }
        let one = self.one();
        for d in divisors(2 * self.conductor) {
            if self.eq(&self.pow(a, d as i64).unwrap(), &one) {
                return Ok(Order::Finite(d));
            }
        }
        Ok(Order::Infinite)
    }

    /// Float estimate of `|a|` under the embedding `zeta_L -> exp(2 pi i/L)`.
    /// Advisory only; never used for exact decisions.
    pub fn approx_modulus(&self, a: &CycloScalar) -> f64 {
        let mut re = 0.0f64;
        let mut im = 0.0f64;
        for (k, c) in a.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let x = c.to_f64().unwrap_or(f64::NAN);
            let ang = 2.0 * std::f64::consts::PI * (k as f64) / (self.conductor as f64);
            re += x * ang.cos();
            im += x * ang.sin();
        }
        (re * re + im * im).sqrt()
    }

    pub fn from_literal(&self, lit: &ScalarLit) -> Result<CycloScalar> {
        let mut acc = self.zero();
        for term in lit.terms() {
            let r = parse_rational(&term.rat)?;
            let spec = RootSpec::new(term.zeta.0, term.zeta.1)?;
            let root = self.root(spec)?;
            let term_val = self.mul(&self.from_rational(r), &root);
            self.add_assign(&mut acc, &term_val);
        }
        Ok(acc)
    }

    /// Canonical literal form: one term per nonzero power-basis coefficient.
    pub fn to_literal(&self, a: &CycloScalar) -> ScalarLit {
        let mut terms = Vec::new();
        for (k, c) in a.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            terms.push(LitTerm {
                rat: format_rational(c),
                zeta: (k as i64, self.conductor),
            });
        }
        if terms.is_empty() {
            terms.push(LitTerm {
                rat: "0".into(),
                zeta: (0, 1),
            });
        }
        ScalarLit::Sum(terms)
    }

    /// Human-readable form, e.g. `1/2 + -1 z12^3`.
    pub fn format(&self, a: &CycloScalar) -> String {
        if self.is_zero(a) {
            return "0".into();
        }
        let mut out = String::new();
        let mut first = true;
        for (k, c) in a.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                out.push_str(" + ");
            }
            first = false;
            if k == 0 {
                let _ = write!(out, "{}", format_rational(c));
            } else if c.is_one() {
                let _ = write!(out, "z{}^{}", self.conductor, k);
            } else {
                let _ = write!(out, "{} z{}^{}", format_rational(c), self.conductor, k);
            }
        }
        out
    }
}

/// Build `zeta_N^k` in its own field `Q(zeta_N)`.
pub fn make_root(spec: RootSpec) -> Result<(CycloField, CycloScalar)> {
    let field = CycloField::new(spec.n)?;
    let s = field.root(spec)?;
    Ok((field, s))
}

/// Lift two scalars from possibly different conductors into the lcm field.
pub fn unify(
    fa: &CycloField,
    a: &CycloScalar,
    fb: &CycloField,
    b: &CycloScalar,
) -> Result<(CycloField, CycloScalar, CycloScalar)> {
    let l = lcm(fa.conductor(), fb.conductor());
    let field = CycloField::new(l)?;
    let ea = field.embed(fa, a)?;
    let eb = field.embed(fb, b)?;
    Ok((field, ea, eb))
}

// ---------------------------------------------------------------------------
// scalar literals (the JSON exchange format for scalars)

/// One term `(p/q) * zeta_N^k`. `rat` defaults to "1", `zeta` to `[0, 1]`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct LitTerm {
    #[serde(default = "default_rat")]
    pub rat: String,
    #[serde(default = "default_zeta")]
    pub zeta: (i64, u64),
}

fn default_rat() -> String {
    "1".into()
}
fn default_zeta() -> (i64, u64) {
    (0, 1)
}

/// A scalar literal: a single term or a sum of terms.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(untagged)]
pub enum ScalarLit {
    Term(LitTerm),
    Sum(Vec<LitTerm>),
}

impl ScalarLit {
    pub fn terms(&self) -> &[LitTerm] {
        match self {
            ScalarLit::Term(t) => std::slice::from_ref(t),
            ScalarLit::Sum(ts) => ts,
        }
    }

    pub fn rational(p: i64, q: i64) -> Self {
        ScalarLit::Term(LitTerm {
            rat: if q == 1 {
                format!("{p}")
            } else {
                format!("{p}/{q}")
            },
            zeta: (0, 1),
        })
    }

    pub fn integer(p: i64) -> Self {
        Self::rational(p, 1)
    }

    pub fn zeta(k: i64, n: u64) -> Self {
        ScalarLit::Term(LitTerm {
            rat: "1".into(),
            zeta: (k, n),
        })
    }

    /// Smallest conductor at which every term of this literal lives.
    pub fn conductor(&self) -> u64 {
        self.terms()
            .iter()
            .fold(1, |acc, t| lcm(acc, t.zeta.1.max(1)))
    }
}

pub fn parse_rational(s: &str) -> Result<BigRational> {
    BigRational::from_str(s.trim())
        .map_err(|e| Error::Parse(format!("bad rational {s:?}: {e}")))
        .and_then(|r| {
            if r.denom().is_zero() {
                Err(Error::DivisionByZero)
            } else {
                Ok(r)
            }
        })
}

pub fn format_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        format!("{}", r.numer())
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

// ---------------------------------------------------------------------------
// integer and polynomial helpers

pub fn gcd(a: u64, b: u64) -> u64 {
    let (mut a, mut b) = (a, b);
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        0
    } else {
        a / gcd(a, b) * b
    }
}

fn divisors(n: u64) -> Vec<u64> {
    let mut ds = Vec::new();
    let mut i = 1;
    while i * i <= n {
        if n % i == 0 {
            ds.push(i);
            if i != n / i {
                ds.push(n / i);
            }
        }
        i += 1;
    }
    ds.sort_unstable();
    ds
}

/// Coefficients of `Phi_n`, low power first.
fn cyclotomic_polynomial(n: u64) -> Vec<BigInt> {
    // X^n - 1 divided by Phi_d for every proper divisor d, built bottom-up.
    let mut cache: Vec<(u64, Vec<BigInt>)> = Vec::new();
    for d in divisors(n) {
        let mut poly = vec![BigInt::from(-1)];
        poly.extend(std::iter::repeat_with(BigInt::zero).take(d as usize - 1));
        poly.push(BigInt::one()); // X^d - 1
        for (e, phi_e) in &cache {
            if d % e == 0 {
                poly = int_poly_div_exact(&poly, phi_e);
            }
        }
        cache.push((d, poly));
    }
    cache.pop().unwrap().1
}

/// Exact division of integer polynomials (the divisor is monic).
fn int_poly_div_exact(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let mut rem: Vec<BigInt> = num.to_vec();
    let dn = den.len() - 1;
    let mut quot = vec![BigInt::zero(); rem.len() - dn];
    for i in (0..quot.len()).rev() {
        let c = rem[i + dn].clone();
        if c.is_zero() {
            continue;
        }
        quot[i] = c.clone();
        for (j, d) in den.iter().enumerate() {
            let t = &c * d;
            rem[i + j] -= t;
        }
    }
    debug_assert!(rem.iter().all(|c| c.is_zero()));
    quot
}

fn poly_deg(p: &[BigRational]) -> Option<usize> {
    p.iter().rposition(|c| !c.is_zero())
}

fn poly_trim(mut p: Vec<BigRational>) -> Vec<BigRational> {
    while p.len() > 1 && p.last().map(|c| c.is_zero()).unwrap_or(false) {
        p.pop();
    }
    p
}

/// Remainder and quotient of rational polynomials.
fn poly_divmod(num: &[BigRational], den: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let dd = poly_deg(den).expect("division by zero polynomial");
    let lead = den[dd].clone();
    let mut rem: Vec<BigRational> = num.to_vec();
    let nd = match poly_deg(&rem) {
        Some(d) if d >= dd => d,
        _ => return (vec![BigRational::zero()], poly_trim(rem)),
    };
    let mut quot = vec![BigRational::zero(); nd - dd + 1];
    for i in (0..quot.len()).rev() {
        let c = &rem[i + dd] / &lead;
        if c.is_zero() {
            continue;
        }
        quot[i] = c.clone();
        for (j, d) in den.iter().enumerate().take(dd + 1) {
            let t = &c * d;
            rem[i + j] -= t;
        }
    }
    (poly_trim(quot), poly_trim(rem))
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if y.is_zero() {
                continue;
            }
            out[i + j] += x * y;
        }
    }
    poly_trim(out)
}

fn poly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len().max(b.len());
    let mut out = vec![BigRational::zero(); n];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    poly_trim(out)
}

/// Inverse of `a` modulo the monic polynomial `m`, if coprime.
fn poly_inverse_mod(a: &[BigRational], m: &[BigRational]) -> Option<Vec<BigRational>> {
    // extended Euclid on (m, a)
    let mut r0: Vec<BigRational> = m.to_vec();
    let mut r1: Vec<BigRational> = poly_trim(a.to_vec());
    let mut t0: Vec<BigRational> = vec![BigRational::zero()];
    let mut t1: Vec<BigRational> = vec![BigRational::one()];
    while poly_deg(&r1).is_some() && poly_deg(&r1).unwrap() > 0 {
        let (q, r) = poly_divmod(&r0, &r1);
        let t = poly_sub(&t0, &poly_mul(&q, &t1));
        r0 = r1;
        r1 = r;
        t0 = t1;
        t1 = t;
        if poly_deg(&r1).is_none() {
            return None; // common factor of positive degree
        }
    }
    let c = r1[0].clone();
    if c.is_zero() {
        return None;
    }
    let inv_c = c.recip();
    let scaled: Vec<BigRational> = t1.iter().map(|x| x * &inv_c).collect();
    let (_, rem) = poly_divmod(&scaled, m);
    Some(rem)
}
