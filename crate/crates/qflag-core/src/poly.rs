//! Sparse multivariate polynomials with exact rational coefficients.
//!
//! The variable universe is fixed: Chern-root style variables `x1, x2, ...`,
//! quantum deformation variables `q1, q2, ...`, and the loop parameter `h`.
//! Every polynomial carries the grading
//!
//! ```text
//! deg x_i = 2,    deg q_i = 4,    deg h = 2.
//! ```
//!
//! Monomials are kept in a canonical sorted order (graded, then lexicographic
//! with `x1 > x2 > ... > q1 > q2 > ... > h`), so `Display` output and JSON
//! serialization are deterministic.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::rat::{rat, Rat};

/// A variable of the polynomial ring. Indices are 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Variable {
    X(usize),
    Q(usize),
    H,
}

impl fmt::Display for Variable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Variable::X(i) => write!(f, "x{i}"),
            Variable::Q(i) => write!(f, "q{i}"),
            Variable::H => write!(f, "h"),
        }
    }
}

/// Exponent vector of a single monomial. Trailing zeros are stripped so the
/// representation is canonical and equality is structural.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    x: Vec<u16>,
    q: Vec<u16>,
    h: u16,
}

fn strip(mut v: Vec<u16>) -> Vec<u16> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

impl Monomial {
    pub fn new(x: Vec<u16>, q: Vec<u16>, h: u16) -> Self {
        Monomial {
            x: strip(x),
            q: strip(q),
            h,
        }
    }

    pub fn one() -> Self {
        Monomial {
            x: Vec::new(),
            q: Vec::new(),
            h: 0,
        }
    }

    pub fn var(v: Variable) -> Self {
        Self::var_pow(v, 1)
    }

    pub fn var_pow(v: Variable, e: u16) -> Self {
        let mut m = Self::one();
        if e > 0 {
            match v {
                Variable::X(i) => {
                    m.x = vec![0; i];
                    m.x[i - 1] = e;
                }
                Variable::Q(i) => {
                    m.q = vec![0; i];
                    m.q[i - 1] = e;
                }
                Variable::H => m.h = e,
            }
        }
        m
    }

    pub fn is_one(&self) -> bool {
        self.x.is_empty() && self.q.is_empty() && self.h == 0
    }

    /// Exponent of `x_i` (1-based).
    pub fn x_exp(&self, i: usize) -> u16 {
        self.x.get(i - 1).copied().unwrap_or(0)
    }

    /// Exponent of `q_i` (1-based).
    pub fn q_exp(&self, i: usize) -> u16 {
        self.q.get(i - 1).copied().unwrap_or(0)
    }

    pub fn h_exp(&self) -> u16 {
        self.h
    }

    pub fn x_exps(&self) -> &[u16] {
        &self.x
    }

    pub fn q_exps(&self) -> &[u16] {
        &self.q
    }

    /// Degree under `deg x = 2, deg q = 4, deg h = 2`.
    pub fn degree(&self) -> i64 {
        2 * self.x.iter().map(|&e| e as i64).sum::<i64>()
            + 4 * self.q.iter().map(|&e| e as i64).sum::<i64>()
            + 2 * self.h as i64
    }

    /// Product of two monomials (exponents add).
    pub fn mul(&self, other: &Monomial) -> Monomial {
        let n = self.x.len().max(other.x.len());
        let mut x = vec![0u16; n];
        for (i, &e) in self.x.iter().enumerate() {
            x[i] += e;
        }
        for (i, &e) in other.x.iter().enumerate() {
            x[i] += e;
        }
        let n = self.q.len().max(other.q.len());
        let mut q = vec![0u16; n];
        for (i, &e) in self.q.iter().enumerate() {
            q[i] += e;
        }
        for (i, &e) in other.q.iter().enumerate() {
            q[i] += e;
        }
        Monomial::new(x, q, self.h + other.h)
    }

    /// Componentwise divisibility.
    pub fn divides(&self, other: &Monomial) -> bool {
        self.x.iter().enumerate().all(|(i, &e)| e <= other.x.get(i).copied().unwrap_or(0))
            && self.q.iter().enumerate().all(|(i, &e)| e <= other.q.get(i).copied().unwrap_or(0))
            && self.h <= other.h
    }

    /// Exact quotient; caller must ensure `self.divides(other)` beforehand.
    pub fn quotient(other: &Monomial, divisor: &Monomial) -> Monomial {
        debug_assert!(divisor.divides(other));
        let x = (0..other.x.len())
            .map(|i| other.x[i] - divisor.x.get(i).copied().unwrap_or(0))
            .collect();
        let q = (0..other.q.len())
            .map(|i| other.q[i] - divisor.q.get(i).copied().unwrap_or(0))
            .collect();
        Monomial::new(x, q, other.h - divisor.h)
    }

    /// Swap the exponents of `x_i` and `x_j` (1-based).
    pub fn swap_x(&self, i: usize, j: usize) -> Monomial {
        let n = self.x.len().max(i).max(j);
        let mut x = self.x.clone();
        x.resize(n, 0);
        x.swap(i - 1, j - 1);
        Monomial::new(x, self.q.clone(), self.h)
    }

    fn lex_cmp(&self, other: &Monomial) -> Ordering {
        let n = self.x.len().max(other.x.len());
        for i in 0..n {
            let a = self.x.get(i).copied().unwrap_or(0);
            let b = other.x.get(i).copied().unwrap_or(0);
            if a != b {
                return a.cmp(&b);
            }
        }
        let n = self.q.len().max(other.q.len());
        for i in 0..n {
            let a = self.q.get(i).copied().unwrap_or(0);
            let b = other.q.get(i).copied().unwrap_or(0);
            if a != b {
                return a.cmp(&b);
            }
        }
        self.h.cmp(&other.h)
    }
}

/// Graded-lex order: first by graded degree, then lexicographically with
/// `x1 > x2 > ... > q1 > ... > h`. `Greater` means "later leading term".
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.lex_cmp(other))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut parts = Vec::new();
        for (i, &e) in self.x.iter().enumerate() {
            if e == 1 {
                parts.push(format!("x{}", i + 1));
            } else if e > 1 {
                parts.push(format!("x{}^{}", i + 1, e));
            }
        }
        for (i, &e) in self.q.iter().enumerate() {
            if e == 1 {
                parts.push(format!("q{}", i + 1));
            } else if e > 1 {
                parts.push(format!("q{}^{}", i + 1, e));
            }
        }
        if self.h == 1 {
            parts.push("h".to_string());
        } else if self.h > 1 {
            parts.push(format!("h^{}", self.h));
        }
        write!(f, "{}", parts.join("*"))
    }
}

/// Homogeneity report under the grading `deg x = 2, deg q = 4, deg h = 2`.
/// The zero polynomial is homogeneous with no degree (a `-inf` sentinel).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradingReport {
    pub homogeneous: bool,
    pub degree: Option<i64>,
}

/// Sparse polynomial: canonical map from monomials to nonzero rational
/// coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Polynomial {
    terms: BTreeMap<Monomial, Rat>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial::default()
    }

    pub fn one() -> Self {
        Polynomial::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        let mut p = Polynomial::zero();
        p.add_term(Monomial::one(), c);
        p
    }

    pub fn from_int(n: i64) -> Self {
        Polynomial::constant(rat(n))
    }

    pub fn var(v: Variable) -> Self {
        let mut p = Polynomial::zero();
        p.add_term(Monomial::var(v), Rat::one());
        p
    }

    pub fn monomial(m: Monomial, c: Rat) -> Self {
        let mut p = Polynomial::zero();
        p.add_term(m, c);
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Adds `c * m` in place, keeping the no-zero-coefficient invariant.
    pub fn add_term(&mut self, m: Monomial, c: Rat) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get() + &c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Monomial, &Rat)> {
        self.terms.iter()
    }

    /// Leading term in the canonical graded-lex order.
    pub fn leading(&self) -> Option<(&Monomial, &Rat)> {
        self.terms.iter().next_back()
    }

    pub fn coeff(&self, m: &Monomial) -> Rat {
        self.terms.get(m).cloned().unwrap_or_else(Rat::zero)
    }

    /// Constant value if the polynomial has no variables, else `None`.
    pub fn as_constant(&self) -> Option<Rat> {
        if self.is_zero() {
            return Some(Rat::zero());
        }
        if self.terms.len() == 1 {
            if let Some((m, c)) = self.terms.iter().next() {
                if m.is_one() {
                    return Some(c.clone());
                }
            }
        }
        None
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }

    pub fn scale(&self, c: &Rat) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial {
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &Rat) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial {
            terms: self
                .terms
                .iter()
                .map(|(k, v)| (k.mul(m), v * c))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut out = Polynomial::one();
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    /// The logarithmic derivative `q_i * d/dq_i`, i.e. the derivative along
    /// `t_i` under the exponential coordinates `q_i = e^{t_i}`.
    pub fn q_log_derivative(&self, i: usize) -> Polynomial {
        let mut out = Polynomial::zero();
        for (m, c) in &self.terms {
            let e = m.q_exp(i);
            if e > 0 {
                out.add_term(m.clone(), c * rat(e as i64));
            }
        }
        out
    }

    /// Homogeneity and degree under the standard grading.
    pub fn graded_degree(&self) -> GradingReport {
        let mut degs = self.terms.keys().map(|m| m.degree());
        match degs.next() {
            None => GradingReport {
                homogeneous: true,
                degree: None,
            },
            Some(d) => {
                if degs.all(|e| e == d) {
                    GradingReport {
                        homogeneous: true,
                        degree: Some(d),
                    }
                } else {
                    GradingReport {
                        homogeneous: false,
                        degree: None,
                    }
                }
            }
        }
    }

    /// Substitutes polynomials for variables. Variables not present in the
    /// assignment are left alone.
    pub fn substitute(&self, assignment: &BTreeMap<Variable, Polynomial>) -> Polynomial {
        let mut out = Polynomial::zero();
        for (m, c) in &self.terms {
            let mut kept_x = m.x_exps().to_vec();
            let mut kept_q = m.q_exps().to_vec();
            let mut kept_h = m.h_exp();
            let mut factor = Polynomial::constant(c.clone());
            for (v, p) in assignment {
                let e = match v {
                    Variable::X(i) => {
                        let e = m.x_exp(*i);
                        if e > 0 {
                            kept_x[*i - 1] = 0;
                        }
                        e
                    }
                    Variable::Q(i) => {
                        let e = m.q_exp(*i);
                        if e > 0 {
                            kept_q[*i - 1] = 0;
                        }
                        e
                    }
                    Variable::H => {
                        let e = kept_h;
                        kept_h = 0;
                        e
                    }
                };
                if e > 0 {
                    factor = factor.mul(&p.pow(e as u32));
                }
            }
            out = out.add(&factor.mul_monomial(&Monomial::new(kept_x, kept_q, kept_h), &Rat::one()));
        }
        out
    }

    /// Sets every `q_i` to zero (the classical limit).
    pub fn set_q_zero(&self) -> Polynomial {
        Polynomial {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.q_exps().iter().all(|&e| e == 0))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Sets `h` to zero.
    pub fn set_h_zero(&self) -> Polynomial {
        Polynomial {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.h_exp() == 0)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Applies the transposition of `x_i` and `x_j` to every monomial.
    pub fn swap_x(&self, i: usize, j: usize) -> Polynomial {
        let mut out = Polynomial::zero();
        for (m, c) in &self.terms {
            out.add_term(m.swap_x(i, j), c.clone());
        }
        out
    }

    /// `true` iff every coefficient is a nonnegative integer.
    pub fn has_nonneg_integer_coeffs(&self) -> bool {
        self.terms
            .values()
            .all(|c| c.is_integer() && !c.is_negative())
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            let neg = c.is_negative();
            let abs = if neg { -c.clone() } else { c.clone() };
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if m.is_one() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{abs}*{m}")?;
            }
        }
        Ok(())
    }
}
