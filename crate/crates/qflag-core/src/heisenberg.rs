//! Normal-ordered arithmetic in the Heisenberg algebra over `R[h]`:
//! generators `Q_1..Q_l, P_1..P_l` subject to
//!
//! ```text
//! [Q_i, Q_j] = [P_i, P_j] = 0,      [P_i, Q_j] = delta_ij h Q_j,
//! ```
//!
//! graded by `deg Q_i = 4, deg P_i = deg h = 2`. Every element is stored
//! uniquely as a combination of normal-ordered monomials `Q^I P^J h^m`.
//!
//! On top of the arithmetic sit the Toda elements: the column polynomials
//! `E(i, k)` built from the three-term recurrence
//! `E(i,k) = E(i,k-1) + X_k E(i-1,k-1) + Q_{k-1} E(i-2,k-2)` with
//! `X_k = P_{k-1} - P_k`, the quadratic integral `D_1`, and the module
//! action on quantum cohomology `P_i.a = sigma_{s_i} * a + h q_i d/dq_i a`,
//! `Q_i.a = q_i a`.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::chevalley::{build_divisor_matrices, OperatorMatrix, QSchubertVector};
use crate::poly::{Monomial, Polynomial, Variable};
use crate::rat::{rat, Rat};
use crate::report::VerifyReport;
use crate::roots::{CartanMatrix, RootSystem, WeylGroup};
use crate::Result;

/// A normal-ordered monomial `Q^I P^J h^m`. Trailing zeros of the exponent
/// vectors are stripped so equality is structural.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct HeisMonomial {
    q: Vec<u16>,
    p: Vec<u16>,
    h: u16,
}

fn strip(mut v: Vec<u16>) -> Vec<u16> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

impl HeisMonomial {
    pub fn new(q: Vec<u16>, p: Vec<u16>, h: u16) -> Self {
        HeisMonomial {
            q: strip(q),
            p: strip(p),
            h,
        }
    }

    pub fn one() -> Self {
        HeisMonomial {
            q: Vec::new(),
            p: Vec::new(),
            h: 0,
        }
    }

    pub fn q_exp(&self, i: usize) -> u16 {
        self.q.get(i - 1).copied().unwrap_or(0)
    }

    pub fn p_exp(&self, i: usize) -> u16 {
        self.p.get(i - 1).copied().unwrap_or(0)
    }

    pub fn q_exps(&self) -> &[u16] {
        &self.q
    }

    pub fn p_exps(&self) -> &[u16] {
        &self.p
    }

    pub fn h_exp(&self) -> u16 {
        self.h
    }

    /// Degree under `deg Q = 4, deg P = deg h = 2`.
    pub fn degree(&self) -> i64 {
        4 * self.q.iter().map(|&e| e as i64).sum::<i64>()
            + 2 * self.p.iter().map(|&e| e as i64).sum::<i64>()
            + 2 * self.h as i64
    }
}

impl std::fmt::Display for HeisMonomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut parts = Vec::new();
        for (i, &e) in self.q.iter().enumerate() {
            if e == 1 {
                parts.push(format!("Q{}", i + 1));
            } else if e > 1 {
                parts.push(format!("Q{}^{}", i + 1, e));
            }
        }
        for (i, &e) in self.p.iter().enumerate() {
            if e == 1 {
                parts.push(format!("P{}", i + 1));
            } else if e > 1 {
                parts.push(format!("P{}^{}", i + 1, e));
            }
        }
        if self.h == 1 {
            parts.push("h".to_string());
        } else if self.h > 1 {
            parts.push(format!("h^{}", self.h));
        }
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join("*"))
        }
    }
}

/// An element of the Heisenberg algebra in normal-ordered form.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct HeisenbergElement {
    terms: BTreeMap<HeisMonomial, Rat>,
}

fn binomial(r: u16, t: u16) -> Rat {
    let mut v = Rat::one();
    for s in 0..t {
        v = v * rat((r - s) as i64) / rat((s + 1) as i64);
    }
    v
}

impl HeisenbergElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        let mut e = Self::default();
        e.add_term(HeisMonomial::one(), c);
        e
    }

    pub fn q_gen(i: usize) -> Self {
        let mut q = vec![0; i];
        q[i - 1] = 1;
        let mut e = Self::default();
        e.add_term(HeisMonomial::new(q, Vec::new(), 0), Rat::one());
        e
    }

    pub fn p_gen(i: usize) -> Self {
        let mut p = vec![0; i];
        p[i - 1] = 1;
        let mut e = Self::default();
        e.add_term(HeisMonomial::new(Vec::new(), p, 0), Rat::one());
        e
    }

    pub fn hbar() -> Self {
        let mut e = Self::default();
        e.add_term(HeisMonomial::new(Vec::new(), Vec::new(), 1), Rat::one());
        e
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&HeisMonomial, &Rat)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, m: HeisMonomial, c: Rat) {
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

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        HeisenbergElement {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), -c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, k: &Rat) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        HeisenbergElement {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * k)).collect(),
        }
    }

    /// Product, re-normal-ordered through `P_i^r Q_i^s =
    /// sum_t binom(r, t) s^t h^t Q_i^s P_i^{r-t}` (different indices
    /// commute outright).
    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                // variables where a P of the left factor passes a Q of the right
                let crossing: Vec<(usize, u16, u16)> = (1..=m1.p.len())
                    .filter_map(|i| {
                        let r = m1.p_exp(i);
                        let s = m2.q_exp(i);
                        (r > 0 && s > 0).then_some((i, r, s))
                    })
                    .collect();
                let nq = m1.q.len().max(m2.q.len());
                let q: Vec<u16> = (1..=nq).map(|i| m1.q_exp(i) + m2.q_exp(i)).collect();
                let np = m1.p.len().max(m2.p.len());
                let base_p: Vec<u16> = (1..=np).map(|i| m1.p_exp(i) + m2.p_exp(i)).collect();
                let base_h = m1.h + m2.h;
                let base_c = c1 * c2;
                // odometer over the reordering count t_i in 0..=r_i per crossing
                let mut t = vec![0u16; crossing.len()];
                loop {
                    let mut coeff = base_c.clone();
                    let mut p = base_p.clone();
                    let mut extra_h = 0u16;
                    for (pos, &(i, r, s)) in crossing.iter().enumerate() {
                        let ti = t[pos];
                        coeff = coeff * binomial(r, ti) * rat((s as i64).pow(ti as u32));
                        p[i - 1] -= ti;
                        extra_h += ti;
                    }
                    out.add_term(HeisMonomial::new(q.clone(), p, base_h + extra_h), coeff);
                    // advance odometer
                    let mut pos = 0;
                    loop {
                        if pos == crossing.len() {
                            break;
                        }
                        t[pos] += 1;
                        if t[pos] <= crossing[pos].1 {
                            break;
                        }
                        t[pos] = 0;
                        pos += 1;
                    }
                    if pos == crossing.len() {
                        break;
                    }
                }
            }
        }
        out
    }

    pub fn commutator(&self, other: &Self) -> Self {
        self.mul(other).sub(&other.mul(self))
    }

    /// Homogeneity report under `deg Q = 4, deg P = deg h = 2`.
    pub fn graded_degree(&self) -> crate::poly::GradingReport {
        let mut degs = self.terms.keys().map(|m| m.degree());
        match degs.next() {
            None => crate::poly::GradingReport {
                homogeneous: true,
                degree: None,
            },
            Some(d) => crate::poly::GradingReport {
                homogeneous: degs.all(|e| e == d),
                degree: Some(d),
            },
        }
    }

    /// `true` iff no monomial contains both `Q_j` and `P_j` for the same `j`
    /// (the structural property of the Toda column elements).
    pub fn has_no_mixed_qp(&self) -> bool {
        self.terms.keys().all(|m| {
            (1..=m.q.len().max(m.p.len())).all(|j| m.q_exp(j) == 0 || m.p_exp(j) == 0)
        })
    }

    /// Commutative substitution `Q_i -> q_sub(i), P_i -> p_sub(i), h -> h_sub`
    /// into the polynomial ring. Well-defined only because the target is
    /// commutative.
    pub fn substitute(
        &self,
        q_sub: &dyn Fn(usize) -> Polynomial,
        p_sub: &dyn Fn(usize) -> Polynomial,
        h_sub: &Polynomial,
    ) -> Polynomial {
        let mut out = Polynomial::zero();
        for (m, c) in &self.terms {
            let mut f = Polynomial::constant(c.clone());
            for i in 1..=m.q.len() {
                let e = m.q_exp(i);
                if e > 0 {
                    f = f.mul(&q_sub(i).pow(e as u32));
                }
            }
            for i in 1..=m.p.len() {
                let e = m.p_exp(i);
                if e > 0 {
                    f = f.mul(&p_sub(i).pow(e as u32));
                }
            }
            if m.h > 0 {
                f = f.mul(&h_sub.pow(m.h as u32));
            }
            out = out.add(&f);
        }
        out
    }
}

impl std::fmt::Display for HeisenbergElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        use num_traits::Signed;
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
            let is_unit_mono = m == &HeisMonomial::one();
            if is_unit_mono {
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

/// The Toda column elements `E(i, k)` at rank `n` (type `A_{n-1}`): the
/// variable universe is `Q_1..Q_{n-1}, P_1..P_{n-1}` and `P_n = 0`.
pub struct TodaElements {
    n: usize,
    table: Vec<Vec<HeisenbergElement>>,
}

impl TodaElements {
    pub fn new(n: usize) -> Self {
        let p = |i: usize| -> HeisenbergElement {
            if i == 0 || i >= n {
                HeisenbergElement::zero()
            } else {
                HeisenbergElement::p_gen(i)
            }
        };
        let mut table: Vec<Vec<HeisenbergElement>> = vec![vec![HeisenbergElement::one()]];
        for k in 1..=n {
            let x_k = p(k - 1).sub(&p(k));
            let get = |table: &Vec<Vec<HeisenbergElement>>, kk: i32, ii: i32| {
                if ii < 0 || kk < 0 || ii > kk {
                    HeisenbergElement::zero()
                } else {
                    table[kk as usize][ii as usize].clone()
                }
            };
            let mut row = Vec::with_capacity(k + 1);
            for i in 0..=k {
                let (ik, kk) = (i as i32, k as i32);
                let mut v = get(&table, kk - 1, ik);
                v = v.add(&x_k.mul(&get(&table, kk - 1, ik - 1)));
                if k >= 2 {
                    v = v.add(
                        &HeisenbergElement::q_gen(k - 1).mul(&get(&table, kk - 2, ik - 2)),
                    );
                }
                row.push(v);
            }
            table.push(row);
        }
        TodaElements { n, table }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `E(i, k)`, zero outside `0 <= i <= k <= n`.
    pub fn get(&self, i: i32, k: i32) -> HeisenbergElement {
        if i < 0 || k < 0 || i > k || k > self.n as i32 {
            HeisenbergElement::zero()
        } else {
            self.table[k as usize][i as usize].clone()
        }
    }

    /// `X_k = P_{k-1} - P_k` under the rank conventions.
    pub fn x_gen(&self, k: usize) -> HeisenbergElement {
        let p = |i: usize| -> HeisenbergElement {
            if i == 0 || i >= self.n {
                HeisenbergElement::zero()
            } else {
                HeisenbergElement::p_gen(i)
            }
        };
        p(k - 1).sub(&p(k))
    }
}

/// The quadratic Toda integral
/// `D_1 = sum_{i,j} <a_i^v, a_j^v> P_i P_j - sum_i <a_i^v, a_i^v> Q_i`.
pub fn toda_d1(rs: &RootSystem) -> Result<HeisenbergElement> {
    let l = rs.rank();
    let mut out = HeisenbergElement::zero();
    for i in 1..=l {
        for j in 1..=l {
            let inner = rs.coroot_inner(i - 1, j - 1)?;
            if !inner.is_zero() {
                out = out.add(
                    &HeisenbergElement::p_gen(i)
                        .mul(&HeisenbergElement::p_gen(j))
                        .scale(&inner),
                );
            }
        }
    }
    for i in 1..=l {
        let inner = rs.coroot_inner(i - 1, i - 1)?;
        out = out.sub(&HeisenbergElement::q_gen(i).scale(&inner));
    }
    Ok(out)
}

/// The module of quantum cohomology over the Heisenberg algebra:
/// `Q_i.a = q_i a` and `P_i.a = sigma_{s_i} * a + h q_i d/dq_i a`, with the
/// star product given by the Chevalley operator matrices.
pub struct DModule<'a> {
    matrices: &'a [OperatorMatrix],
}

impl<'a> DModule<'a> {
    pub fn new(matrices: &'a [OperatorMatrix]) -> Self {
        DModule { matrices }
    }

    /// `P_i . a` (1-based `i`).
    pub fn apply_p(&self, i: usize, a: &QSchubertVector) -> QSchubertVector {
        let mut out = self.matrices[i - 1].apply(a);
        let h = Polynomial::var(Variable::H);
        for (w, p) in &a.coeffs {
            out.add_term(*w, p.q_log_derivative(i).mul(&h));
        }
        out
    }

    /// Action of a normal-ordered element: for each monomial `Q^I P^J h^m`
    /// the `P` factors act first (right to left), then the `q^I h^m`
    /// multiplication.
    pub fn apply(&self, d: &HeisenbergElement, a: &QSchubertVector) -> QSchubertVector {
        let mut out = QSchubertVector::zero();
        for (m, c) in d.iter() {
            let mut v = a.clone();
            for i in (1..=m.p_exps().len()).rev() {
                for _ in 0..m.p_exp(i) {
                    v = self.apply_p(i, &v);
                }
            }
            let mono = Monomial::new(Vec::new(), m.q_exps().to_vec(), m.h_exp());
            let factor = Polynomial::monomial(mono, c.clone());
            out = out.add(&v.scale_poly(&factor));
        }
        out
    }
}

/// Exact verification battery for the Toda elements at rank `n`: pairwise
/// commutation within each column, the adjacent-column bracket symmetry, the
/// locality relations for `X_k` and `Q_k`, the noncommutative straightening
/// identity, commutation with `D_1`, and the annihilation of the vacuum by
/// the column-`n` elements under the module action.
pub fn verify_identities(n: usize) -> Result<VerifyReport> {
    let rs = RootSystem::build(CartanMatrix::type_a(n - 1)?)?;
    let wg = WeylGroup::enumerate(&rs);
    let matrices = build_divisor_matrices(&rs, &wg)?;
    let toda = TodaElements::new(n);
    let mut report = VerifyReport::new("heisenberg");

    let mut cases = 0;
    let mut ok = true;
    for k in 1..=n as i32 {
        for i in 0..=k {
            for j in 0..=k {
                cases += 1;
                if !toda.get(i, k).commutator(&toda.get(j, k)).is_zero() {
                    ok = false;
                }
            }
        }
    }
    report.add_family("column elements commute: [E(i,k), E(j,k)] = 0", ok, cases);

    let mut cases = 0;
    let mut ok = true;
    for k in 0..n as i32 {
        for i in 0..=(k + 1) {
            for j in 0..=(k + 1) {
                cases += 1;
                let lhs = toda.get(j + 1, k + 1).commutator(&toda.get(i, k));
                let rhs = toda.get(i + 1, k + 1).commutator(&toda.get(j, k));
                if lhs != rhs {
                    ok = false;
                }
            }
        }
    }
    report.add_family(
        "bracket symmetry: [E(j+1,k+1), E(i,k)] = [E(i+1,k+1), E(j,k)]",
        ok,
        cases,
    );

    let mut cases = 0;
    let mut ok = true;
    for k in 1..=n {
        for l in 0..k {
            for j in 0..=(l as i32) {
                cases += 1;
                if !toda.x_gen(k).commutator(&toda.get(j, l as i32)).is_zero() {
                    ok = false;
                }
                if k <= n - 1 {
                    cases += 1;
                    if !HeisenbergElement::q_gen(k)
                        .commutator(&toda.get(j, l as i32))
                        .is_zero()
                    {
                        ok = false;
                    }
                }
            }
        }
    }
    report.add_family("locality: [X_k, E(j,l)] = [Q_k, E(j,l)] = 0 for l < k", ok, cases);

    let mut cases = 0;
    let mut ok = true;
    for k in 1..n as i32 {
        for i in 0..=(k + 1) {
            for j in 0..=(k + 1) {
                cases += 1;
                let qk = HeisenbergElement::q_gen(k as usize);
                let lhs = toda
                    .get(i, k)
                    .mul(&toda.get(j + 1, k + 1))
                    .add(&toda.get(i + 1, k).mul(&toda.get(j, k)))
                    .add(&qk.mul(&toda.get(i - 1, k - 1)).mul(&toda.get(j, k)));
                let rhs = toda
                    .get(j, k)
                    .mul(&toda.get(i + 1, k + 1))
                    .add(&toda.get(j + 1, k).mul(&toda.get(i, k)))
                    .add(&qk.mul(&toda.get(j - 1, k - 1)).mul(&toda.get(i, k)));
                if lhs != rhs {
                    ok = false;
                }
            }
        }
    }
    report.add_family("noncommutative straightening identity", ok, cases);

    let d1 = toda_d1(&rs)?;
    let mut cases = 0;
    let mut ok = true;
    for i in 0..=n as i32 {
        cases += 1;
        if !d1.commutator(&toda.get(i, n as i32)).is_zero() {
            ok = false;
        }
    }
    report.add_family("[D_1, E(i,n)] = 0", ok, cases);

    let module = DModule::new(&matrices);
    let vacuum = QSchubertVector::basis(wg.identity_index());
    let mut cases = 0;
    let mut ok = true;
    for i in 1..=n as i32 {
        cases += 1;
        if !module.apply(&toda.get(i, n as i32), &vacuum).is_zero() {
            ok = false;
        }
    }
    report.add_family("annihilation: E(i,n).1 = 0", ok, cases);

    Ok(report)
}
