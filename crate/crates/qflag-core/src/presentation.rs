//! The quantum cohomology ring of `Fl_n` in its polynomial presentation:
//! quantum elementary polynomials, the straightening algorithm onto the
//! standard monomial basis, multiplication matrices in that basis, quantum
//! Giambelli polynomials, and products pulled back to the Schubert basis.
//!
//! The quantum elementary polynomial `qe(i, k)` deforms the elementary
//! symmetric polynomial `e_i(x_1..x_k)` and obeys the three-term recurrence
//!
//! ```text
//! qe(i, k) = qe(i, k-1) + x_k qe(i-1, k-1) + q_{k-1} qe(i-2, k-2),
//! ```
//!
//! with `qe(0, k) = 1` and `qe(i, k) = 0` unless `0 <= i <= k`. The quantum
//! ring is `R[x_1..x_n, q_1..q_{n-1}] / <qe(1, n), ..., qe(n, n)>` and the
//! cosets of the standard monomials
//! `qe(i_1, 1) ... qe(i_{n-1}, n-1)`, `0 <= i_j <= j`, form a basis over
//! `R[q]`.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Mutex, OnceLock};

use num_traits::Zero;

use crate::chevalley::{
    build_divisor_matrices, matrix_flatness_report, OperatorMatrix, QSchubertVector,
};
use crate::perm::Perm;
use crate::poly::{Polynomial, Variable};
use crate::rat::{rat, Rat};
use crate::report::{Failure, VerifyReport, CONVENTION_MULTIPLIER_YK};
use crate::roots::{CartanMatrix, RootSystem, WeylGroup};
use crate::schubert::{SchubertTable, StdIndex, Transition};
use crate::{Error, Result};

/// Rewrite-step budget for the straightening algorithm; far above anything a
/// supported rank can need.
pub const STRAIGHTEN_BUDGET: usize = 1_000_000;

/// One summand of a formal product of quantum elementary generators:
/// `coeff * qe(idx_1, col_1) * qe(idx_2, col_2) * ...`. Out-of-range factors
/// follow the zero conventions (`qe(i, k) = 0` unless `0 <= i <= k`), so any
/// integer pairs are accepted.
#[derive(Debug, Clone)]
pub struct QeTerm {
    pub coeff: Polynomial,
    pub factors: Vec<(i32, i32)>,
}

impl QeTerm {
    pub fn new(coeff: Polynomial, factors: Vec<(i32, i32)>) -> Self {
        QeTerm { coeff, factors }
    }

    /// The standard monomial with index `idx` as a formal product.
    pub fn from_std_index(idx: &StdIndex) -> Self {
        let factors = idx
            .iter()
            .enumerate()
            .map(|(j, &i)| (i as i32, (j + 1) as i32))
            .collect();
        QeTerm {
            coeff: Polynomial::one(),
            factors,
        }
    }
}

/// A vector in the quantum standard monomial basis: finitely supported map
/// from standard indices to polynomials in the `q` variables.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct QStdVector {
    pub coeffs: BTreeMap<StdIndex, Polynomial>,
}

impl QStdVector {
    pub fn add_term(&mut self, idx: StdIndex, p: Polynomial) {
        if p.is_zero() {
            return;
        }
        let entry = self
            .coeffs
            .entry(idx.clone())
            .or_insert_with(Polynomial::zero)
            .add(&p);
        if entry.is_zero() {
            self.coeffs.remove(&idx);
        } else {
            self.coeffs.insert(idx, entry);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::default();
        }
        QStdVector {
            coeffs: self
                .coeffs
                .iter()
                .map(|(i, p)| (i.clone(), p.scale(c)))
                .collect(),
        }
    }
}

/// Normalizes a term: drops unit factors `qe(0, k)`, kills terms with a
/// zero factor (`i < 0` or `i > k`) or a factor in the quotient relations
/// (`qe(i, n) = 0` for `i >= 1`), and sorts factors by column.
fn normalize(term: QeTerm, n: usize) -> Option<QeTerm> {
    if term.coeff.is_zero() {
        return None;
    }
    let mut factors = Vec::with_capacity(term.factors.len());
    for (idx, col) in term.factors {
        if idx == 0 {
            continue;
        }
        if idx < 0 || idx > col {
            return None;
        }
        if col == n as i32 {
            return None; // qe(i, n) with i >= 1 generates the ideal
        }
        factors.push((idx, col));
    }
    factors.sort_by_key(|&(i, c)| (c, i));
    Some(QeTerm {
        coeff: term.coeff,
        factors,
    })
}

/// Position of the first factor sharing its column with the next one, i.e.
/// the lowest repeated column.
fn duplicate_column(term: &QeTerm) -> Option<usize> {
    term.factors
        .windows(2)
        .position(|w| w[0].1 == w[1].1)
}

/// Rewrite-order key. Every application of the exchange identity strictly
/// increases `(-sum i, sum i*c, sum i^2)` lexicographically: the `q`-carrying
/// summands drop the index sum by two, the column-raising summands keep it
/// and raise the column-weighted sum, and the in-column spread keeps both and
/// raises the sum of squares. This both proves termination and lets the work
/// queue process each factor multiset exactly once, smallest key first.
fn rewrite_key(factors: &[(i32, i32)]) -> (i64, i64, i64) {
    let mut phi = 0i64;
    let mut psi = 0i64;
    let mut theta = 0i64;
    for &(i, c) in factors {
        phi += i as i64;
        psi += (i as i64) * (c as i64);
        theta += (i as i64) * (i as i64);
    }
    (-phi, psi, theta)
}

/// Straightens a formal combination of products of quantum elementary
/// generators into the standard monomial basis, working modulo the quotient
/// relations `qe(i, n) = 0`.
///
/// Repeated columns are resolved lowest-column first through the three-term
/// exchange identity; each resolution either spreads the pair apart within
/// its column, moves a factor up one column, or moves one down with a `q`
/// factor. Like terms are merged eagerly, so the frontier size is bounded by
/// the number of reachable factor multisets.
pub fn straighten(input: Vec<QeTerm>, n: usize) -> Result<QStdVector> {
    if n < 2 {
        return Err(Error::RankOutOfRange {
            n,
            max: crate::schubert::MAX_N,
        });
    }
    type Key = ((i64, i64, i64), Vec<(i32, i32)>);
    let mut work: BTreeMap<Key, Polynomial> = BTreeMap::new();
    let mut push = |work: &mut BTreeMap<Key, Polynomial>, t: QeTerm| {
        if let Some(t) = normalize(t, n) {
            let key = (rewrite_key(&t.factors), t.factors);
            match work.entry(key) {
                std::collections::btree_map::Entry::Vacant(e) => {
                    e.insert(t.coeff);
                }
                std::collections::btree_map::Entry::Occupied(mut e) => {
                    let sum = e.get().add(&t.coeff);
                    if sum.is_zero() {
                        e.remove();
                    } else {
                        *e.get_mut() = sum;
                    }
                }
            }
        }
    };
    for t in input {
        for &(_, col) in &t.factors {
            if col > n as i32 {
                return Err(Error::IndexOutOfRange {
                    what: "quantum elementary column",
                    index: col as usize,
                    max: n,
                });
            }
        }
        push(&mut work, t);
    }
    let mut out = QStdVector::default();
    let mut steps = 0usize;
    while let Some(((_, factors), coeff)) = work.pop_first() {
        let term = QeTerm { coeff, factors };
        match duplicate_column(&term) {
            None => {
                let mut idx = vec![0u16; n - 1];
                for &(i, c) in &term.factors {
                    idx[c as usize - 1] = i as u16;
                }
                out.add_term(idx, term.coeff);
            }
            Some(pos) => {
                steps += 1;
                if steps > STRAIGHTEN_BUDGET {
                    return Err(Error::StraighteningBudget);
                }
                let (a, c) = term.factors[pos];
                let (b, _) = term.factors[pos + 1];
                let mut rest = term.factors.clone();
                rest.remove(pos + 1);
                rest.remove(pos);
                // qe(a,c) qe(b,c) = qe(a-1,c) qe(b+1,c) + qe(b,c) qe(a,c+1)
                //                 - qe(a-1,c) qe(b+1,c+1)
                //                 + q_c ( qe(b-1,c-1) qe(a-1,c)
                //                       - qe(a-2,c-1) qe(b,c) )
                let qc = term.coeff.mul(&Polynomial::var(Variable::Q(c as usize)));
                let summands = [
                    (term.coeff.clone(), (a - 1, c), (b + 1, c)),
                    (term.coeff.clone(), (b, c), (a, c + 1)),
                    (term.coeff.neg(), (a - 1, c), (b + 1, c + 1)),
                    (qc.clone(), (b - 1, c - 1), (a - 1, c)),
                    (qc.neg(), (a - 2, c - 1), (b, c)),
                ];
                for (coeff, f1, f2) in summands {
                    let mut factors = rest.clone();
                    factors.push(f1);
                    factors.push(f2);
                    push(&mut work, QeTerm { coeff, factors });
                }
            }
        }
    }
    Ok(out)
}

/// Builds the full table of quantum elementary polynomials `qe(i, k)` for
/// `0 <= i <= k <= n`.
fn qelementary_table(n: usize) -> Vec<Vec<Polynomial>> {
    let mut table: Vec<Vec<Polynomial>> = Vec::with_capacity(n + 1);
    table.push(vec![Polynomial::one()]);
    for k in 1..=n {
        let get = |table: &Vec<Vec<Polynomial>>, kk: i32, ii: i32| -> Polynomial {
            if ii < 0 || kk < 0 || ii > kk {
                Polynomial::zero()
            } else {
                table[kk as usize][ii as usize].clone()
            }
        };
        let mut row = Vec::with_capacity(k + 1);
        for i in 0..=k {
            let (ik, kk) = (i as i32, k as i32);
            let mut v = get(&table, kk - 1, ik);
            v = v.add(&get(&table, kk - 1, ik - 1).mul(&Polynomial::var(Variable::X(k))));
            if k >= 2 {
                v = v.add(
                    &get(&table, kk - 2, ik - 2).mul(&Polynomial::var(Variable::Q(k - 1))),
                );
            }
            row.push(v);
        }
        table.push(row);
    }
    table
}

/// The quantum elementary polynomial `qe(i, k)` in `x_1..x_k, q_1..q_{k-1}`.
pub fn qelementary(i: usize, k: usize, n: usize) -> Result<Polynomial> {
    if k > n || i > k {
        return Err(Error::IndexOutOfRange {
            what: "quantum elementary",
            index: i.max(k),
            max: n,
        });
    }
    Ok(qelementary_table(k)[k][i].clone())
}

/// The quantum cohomology ring of `Fl_n` with all cached machinery: Schubert
/// and transition tables, quantum elementary polynomials, the straightening
/// pair table, multiplication matrices, and the Chevalley-side operators for
/// cross-route checks.
pub struct FlagRing {
    n: usize,
    rs: RootSystem,
    wg: WeylGroup,
    schubert: SchubertTable,
    transition: Transition,
    qe: Vec<Vec<Polynomial>>,
    perm_to_widx: BTreeMap<Perm, usize>,
    widx_to_perm: Vec<Perm>,
    index_pos: HashMap<StdIndex, usize>,
    pair_cache: Mutex<HashMap<(usize, usize), QStdVector>>,
    omegas: OnceLock<Vec<OperatorMatrix>>,
    chevalley: OnceLock<Vec<OperatorMatrix>>,
}

impl FlagRing {
    pub fn new(n: usize) -> Result<Self> {
        let rs = RootSystem::build(CartanMatrix::type_a(n - 1)?)?;
        let wg = WeylGroup::enumerate(&rs);
        let schubert = SchubertTable::new(n)?;
        let transition = Transition::new(&schubert)?;
        let qe = qelementary_table(n);
        let mut perm_to_widx = BTreeMap::new();
        let mut widx_to_perm = vec![Perm::identity(n); wg.order()];
        for w in Perm::all(n) {
            let idx = w.weyl_index(&rs, &wg)?;
            perm_to_widx.insert(w.clone(), idx);
            widx_to_perm[idx] = w;
        }
        let index_pos = transition
            .indices
            .iter()
            .cloned()
            .enumerate()
            .map(|(p, i)| (i, p))
            .collect();
        Ok(FlagRing {
            n,
            rs,
            wg,
            schubert,
            transition,
            qe,
            perm_to_widx,
            widx_to_perm,
            index_pos,
            pair_cache: Mutex::new(HashMap::new()),
            omegas: OnceLock::new(),
            chevalley: OnceLock::new(),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn root_system(&self) -> &RootSystem {
        &self.rs
    }

    pub fn weyl_group(&self) -> &WeylGroup {
        &self.wg
    }

    pub fn schubert_table(&self) -> &SchubertTable {
        &self.schubert
    }

    pub fn transition(&self) -> &Transition {
        &self.transition
    }

    pub fn std_indices(&self) -> &[StdIndex] {
        &self.transition.indices
    }

    pub fn qelementary(&self, i: usize, k: usize) -> Result<&Polynomial> {
        self.qe
            .get(k)
            .and_then(|row| row.get(i))
            .ok_or(Error::IndexOutOfRange {
                what: "quantum elementary",
                index: i.max(k),
                max: self.n,
            })
    }

    pub fn weyl_index_of(&self, w: &Perm) -> Result<usize> {
        self.perm_to_widx
            .get(w)
            .copied()
            .ok_or_else(|| Error::InvalidPermutation(format!("{w} is not in S_{}", self.n)))
    }

    pub fn perm_of_weyl(&self, widx: usize) -> &Perm {
        &self.widx_to_perm[widx]
    }

    /// The quantum standard monomial `qe(i_1,1)*...*qe(i_{n-1},n-1)` as an
    /// actual polynomial in `x, q`.
    pub fn quantum_std_monomial(&self, idx: &StdIndex) -> Result<Polynomial> {
        let mut out = Polynomial::one();
        for (j, &i) in idx.iter().enumerate() {
            out = out.mul(self.qelementary(i as usize, j + 1)?);
        }
        Ok(out)
    }

    /// Straightened product of two standard monomials, cached lazily.
    pub fn straighten_pair(&self, a: usize, b: usize) -> Result<QStdVector> {
        let key = (a.min(b), a.max(b));
        if let Some(v) = self.pair_cache.lock().unwrap().get(&key) {
            return Ok(v.clone());
        }
        let mut factors = QeTerm::from_std_index(&self.transition.indices[key.0]).factors;
        factors.extend(QeTerm::from_std_index(&self.transition.indices[key.1]).factors);
        let v = straighten(vec![QeTerm::new(Polynomial::one(), factors)], self.n)?;
        self.pair_cache.lock().unwrap().insert(key, v.clone());
        Ok(v)
    }

    /// The quantum Giambelli polynomial of `sigma_w`: the classical Schubert
    /// expansion in standard elementary monomials with every factor replaced
    /// by its quantum deformation.
    pub fn quantize_schubert(&self, w: &Perm) -> Result<Polynomial> {
        let wpos = self
            .transition
            .perm_position(w)
            .ok_or_else(|| Error::InvalidPermutation(format!("{w} is not in S_{}", self.n)))?;
        let mut out = Polynomial::zero();
        for (ipos, idx) in self.transition.indices.iter().enumerate() {
            let c = &self.transition.to_std[ipos][wpos];
            if !c.is_zero() {
                out = out.add(&self.quantum_std_monomial(idx)?.scale(c));
            }
        }
        Ok(out)
    }

    /// Classical standard-monomial coordinates of `sigma_w` (column of the
    /// inverse transition matrix).
    fn std_coords(&self, w: &Perm) -> Result<Vec<Rat>> {
        let wpos = self
            .transition
            .perm_position(w)
            .ok_or_else(|| Error::InvalidPermutation(format!("{w} is not in S_{}", self.n)))?;
        Ok((0..self.transition.indices.len())
            .map(|ipos| self.transition.to_std[ipos][wpos].clone())
            .collect())
    }

    /// Quantum product computed in the presentation: multiply the quantum
    /// Giambelli expansions factor by factor, straighten every standard
    /// monomial pair, and pull the result back to the Schubert basis through
    /// the (constant, invertible) transition matrix.
    pub fn product(&self, u: &Perm, v: &Perm) -> Result<QSchubertVector> {
        let cu = self.std_coords(u)?;
        let cv = self.std_coords(v)?;
        let size = self.transition.indices.len();
        let mut acc = QStdVector::default();
        for a in 0..size {
            if cu[a].is_zero() {
                continue;
            }
            for b in 0..size {
                if cv[b].is_zero() {
                    continue;
                }
                let pair = self.straighten_pair(a, b)?;
                let c = cu[a].clone() * cv[b].clone();
                for (idx, p) in &pair.coeffs {
                    acc.add_term(idx.clone(), p.scale(&c));
                }
            }
        }
        self.std_vector_to_schubert(&acc)
    }

    /// Converts standard-monomial coordinates to Schubert coordinates. The
    /// change of basis is the classical transition matrix (the quantum
    /// Giambelli classes are by construction constant combinations of the
    /// quantum standard monomials).
    pub fn std_vector_to_schubert(&self, v: &QStdVector) -> Result<QSchubertVector> {
        let mut out = QSchubertVector::zero();
        for (idx, p) in &v.coeffs {
            let ipos = *self
                .index_pos
                .get(idx)
                .ok_or_else(|| Error::Internal(format!("unknown standard index {idx:?}")))?;
            for (wpos, w) in self.transition.perms.iter().enumerate() {
                let c = &self.transition.to_schubert[wpos][ipos];
                if !c.is_zero() {
                    out.add_term(self.weyl_index_of(w)?, p.scale(c));
                }
            }
        }
        Ok(out)
    }

    /// The Chevalley-operator matrices for `A_{n-1}`, built once.
    pub fn chevalley_matrices(&self) -> Result<&[OperatorMatrix]> {
        if self.chevalley.get().is_none() {
            let ms = build_divisor_matrices(&self.rs, &self.wg)?;
            let _ = self.chevalley.set(ms);
        }
        Ok(self.chevalley.get().unwrap())
    }

    /// Quantum product along the Chevalley route. One factor must be a
    /// simple transposition (or the identity); general products are the
    /// presentation route's job.
    pub fn product_via_chevalley(&self, u: &Perm, v: &Perm) -> Result<QSchubertVector> {
        let (divisor, other) = if u.length() <= 1 {
            (u, v)
        } else if v.length() <= 1 {
            (v, u)
        } else {
            return Err(Error::Unsupported(
                "the Chevalley route computes divisor-times-class products only; \
                 use the presentation route for general factors"
                    .into(),
            ));
        };
        let other_idx = self.weyl_index_of(other)?;
        if divisor.length() == 0 {
            return Ok(QSchubertVector::basis(other_idx));
        }
        let i = (1..self.n)
            .find(|&i| divisor == &Perm::identity(self.n).multiply_adjacent(i))
            .expect("length-one permutations are simple transpositions");
        let ms = self.chevalley_matrices()?;
        Ok(ms[i - 1].apply(&QSchubertVector::basis(other_idx)))
    }

    /// Multiplication matrices by `y_k = -(x_1 + ... + x_k) = -qe(1, k)` in
    /// the quantum standard monomial basis, built by straightening.
    pub fn omega_matrices(&self) -> Result<&[OperatorMatrix]> {
        if self.omegas.get().is_none() {
            let size = self.transition.indices.len();
            let mut ms = Vec::with_capacity(self.n - 1);
            for k in 1..self.n {
                let mut cols = Vec::with_capacity(size);
                for idx in &self.transition.indices {
                    let mut factors = vec![(1i32, k as i32)];
                    factors.extend(QeTerm::from_std_index(idx).factors);
                    let v = straighten(
                        vec![QeTerm::new(Polynomial::one().neg(), factors)],
                        self.n,
                    )?;
                    let mut col = BTreeMap::new();
                    for (l_idx, p) in v.coeffs {
                        let pos = *self
                            .index_pos
                            .get(&l_idx)
                            .ok_or_else(|| Error::Internal("bad straightening index".into()))?;
                        col.insert(pos, p);
                    }
                    cols.push(col);
                }
                ms.push(OperatorMatrix { size, cols });
            }
            let _ = self.omegas.set(ms);
        }
        Ok(self.omegas.get().unwrap())
    }

    pub fn std_index_label(&self, pos: usize) -> String {
        let idx = &self.transition.indices[pos];
        format!(
            "e({})",
            idx.iter()
                .map(|i| i.to_string())
                .collect::<Vec<_>>()
                .join(",")
        )
    }

    /// Flatness of the connection built from the presentation multiplication
    /// matrices: `[Omega_i, Omega_j] = 0` and
    /// `q_i d/dq_i Omega_j = q_j d/dq_j Omega_i`, exact.
    pub fn presentation_flatness_report(&self) -> Result<VerifyReport> {
        let ms = self.omega_matrices()?;
        Ok(matrix_flatness_report(
            ms,
            &|pos| self.std_index_label(pos),
            "quantization",
            &[CONVENTION_MULTIPLIER_YK],
        ))
    }

    /// Agreement of the presentation product with the Chevalley operators on
    /// every divisor-times-class product.
    pub fn divisor_agreement_report(&self) -> Result<VerifyReport> {
        let mut report =
            VerifyReport::new("divisor-agreement").with_conventions(&[CONVENTION_MULTIPLIER_YK]);
        let mut cases = 0;
        let mut ok = true;
        for k in 1..self.n {
            let sk = Perm::identity(self.n).multiply_adjacent(k);
            for v in Perm::all(self.n) {
                cases += 1;
                let via_presentation = self.product(&sk, &v)?;
                let via_chevalley = self.product_via_chevalley(&sk, &v)?;
                if via_presentation != via_chevalley {
                    ok = false;
                    report.add_failure(Failure {
                        i: k,
                        j: 0,
                        row: sk.to_string(),
                        col: v.to_string(),
                        lhs: self.display_vector(&via_presentation),
                        rhs: self.display_vector(&via_chevalley),
                    });
                }
            }
        }
        report.add_family("presentation product = Chevalley product on divisors", ok, cases);
        Ok(report)
    }

    /// The full quantization suite: flatness of the presentation connection
    /// plus divisor-route agreement.
    pub fn quantization_report(&self) -> Result<VerifyReport> {
        let mut report = self.presentation_flatness_report()?;
        let agreement = self.divisor_agreement_report()?;
        for fam in agreement.families {
            report.add_family(fam.name, fam.pass, fam.cases);
        }
        for f in agreement.failures {
            report.add_failure(f);
        }
        Ok(report)
    }

    /// Classical-limit suite: at `q = 0` the Chevalley operators reduce to
    /// the cup-product (Monk) matrices, quantum Giambelli polynomials reduce
    /// to Schubert polynomials modulo the symmetric ideal with matching
    /// degrees, and the quantum elementary polynomials reduce to the
    /// classical ones.
    pub fn classical_limit_report(&self) -> Result<VerifyReport> {
        let mut report = VerifyReport::new("classical-limit");
        let ms = self.chevalley_matrices()?;

        let mut cases = 0;
        let mut ok = true;
        for (i, m) in ms.iter().enumerate() {
            let si = Perm::identity(self.n).multiply_adjacent(i + 1);
            for w in Perm::all(self.n) {
                cases += 1;
                let widx = self.weyl_index_of(&w)?;
                let classical = QSchubertVector {
                    coeffs: m.cols[widx].clone(),
                }
                .set_q_zero();
                let cup = self.schubert.cup_product(&si, &w)?;
                let mut expect = QSchubertVector::zero();
                for (v, c) in &cup.coeffs {
                    expect.add_term(self.weyl_index_of(v)?, Polynomial::constant(c.clone()));
                }
                if classical != expect {
                    ok = false;
                    report.add_failure(Failure {
                        i: i + 1,
                        j: 0,
                        row: si.to_string(),
                        col: w.to_string(),
                        lhs: self.display_vector(&classical),
                        rhs: self.display_vector(&expect),
                    });
                }
            }
        }
        report.add_family("q -> 0 of omega_i is the Monk matrix", ok, cases);

        let mut cases = 0;
        let mut ok = true;
        for w in Perm::all(self.n) {
            cases += 1;
            let qg = self.quantize_schubert(&w)?;
            let classical = self.schubert.ideal().normal_form(&qg.set_q_zero());
            let expect = self.schubert.polynomial(&w)?;
            let degree_ok = qg.graded_degree().homogeneous
                && (w.length() == 0 || qg.graded_degree().degree == Some(2 * w.length() as i64));
            if &classical != expect || !degree_ok {
                ok = false;
                report.add_failure(Failure {
                    i: 0,
                    j: 0,
                    row: w.to_string(),
                    col: "q=0".into(),
                    lhs: classical.to_string(),
                    rhs: expect.to_string(),
                });
            }
        }
        report.add_family("quantum Giambelli at q = 0 is Schubert", ok, cases);

        let mut cases = 0;
        let mut ok = true;
        for k in 0..=self.n {
            for i in 0..=k {
                cases += 1;
                if self.qe[k][i].set_q_zero() != crate::schubert::elementary(i, k) {
                    ok = false;
                }
            }
        }
        report.add_family("qe(i, k) at q = 0 is e_i(x_1..x_k)", ok, cases);
        Ok(report)
    }

    /// Renders a Schubert-basis vector with permutation labels, longest
    /// classes first, e.g. `sigma[312] + q1*sigma[123]`.
    pub fn display_vector(&self, v: &QSchubertVector) -> String {
        if v.is_zero() {
            return "0".to_string();
        }
        v.coeffs
            .iter()
            .rev()
            .map(|(widx, p)| {
                let label = self.perm_of_weyl(*widx);
                if p.as_constant().map(|c| c == rat(1)).unwrap_or(false) {
                    format!("sigma[{label}]")
                } else if p.num_terms() > 1 {
                    format!("({p})*sigma[{label}]")
                } else {
                    format!("{p}*sigma[{label}]")
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }

    /// JSON object `{perm: polynomial}` for a Schubert-basis vector, keys in
    /// one-line notation, values in canonical text form.
    pub fn vector_to_json(&self, v: &QSchubertVector) -> serde_json::Value {
        let mut map = serde_json::Map::new();
        for (widx, p) in &v.coeffs {
            map.insert(self.perm_of_weyl(*widx).to_string(), p.to_string().into());
        }
        serde_json::Value::Object(map)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(i: usize) -> Polynomial {
        Polynomial::var(Variable::X(i))
    }

    fn q(i: usize) -> Polynomial {
        Polynomial::var(Variable::Q(i))
    }

    #[test]
    fn qelementary_small_values() {
        assert_eq!(qelementary(1, 1, 3).unwrap(), x(1));
        assert_eq!(qelementary(2, 2, 3).unwrap(), x(1).mul(&x(2)).add(&q(1)));
        assert_eq!(qelementary(1, 2, 3).unwrap(), x(1).add(&x(2)));
        assert_eq!(qelementary(0, 2, 3).unwrap(), Polynomial::one());
        assert!(qelementary(3, 2, 3).is_err());
    }

    #[test]
    fn qelementary_classical_limit_and_grading() {
        for n in [3usize, 4, 5] {
            let table = qelementary_table(n);
            for k in 0..=n {
                for i in 0..=k {
                    assert_eq!(table[k][i].set_q_zero(), crate::schubert::elementary(i, k));
                    let rep = table[k][i].graded_degree();
                    assert!(rep.homogeneous);
                    if i > 0 {
                        assert_eq!(rep.degree, Some(2 * i as i64));
                    }
                }
            }
        }
    }

    #[test]
    fn straighten_square_of_first_generator() {
        // qe(1,1)^2 = e(1,1) - e(0,2) + q1 e(0,0) for n = 3
        let v = straighten(
            vec![QeTerm::new(Polynomial::one(), vec![(1, 1), (1, 1)])],
            3,
        )
        .unwrap();
        let mut expect = QStdVector::default();
        expect.add_term(vec![1, 1], Polynomial::one());
        expect.add_term(vec![0, 2], Polynomial::one().neg());
        expect.add_term(vec![0, 0], q(1));
        assert_eq!(v, expect);
    }

    #[test]
    fn straighten_standard_input_is_identity() {
        for n in [3usize, 4] {
            for idx in crate::schubert::standard_indices(n) {
                let v = straighten(vec![QeTerm::from_std_index(&idx)], n).unwrap();
                let mut expect = QStdVector::default();
                expect.add_term(idx.clone(), Polynomial::one());
                assert_eq!(v, expect, "n={n} idx={idx:?}");
            }
        }
    }

    #[test]
    fn straighten_kills_quotient_generators() {
        // qe(i, n) times anything straightens to zero
        for i in 1..=3i32 {
            let v = straighten(
                vec![QeTerm::new(Polynomial::one(), vec![(i, 3), (1, 1)])],
                3,
            )
            .unwrap();
            assert!(v.is_zero(), "i={i}");
        }
    }

    #[test]
    fn exchange_identity_is_a_polynomial_identity() {
        // the commutative three-term exchange used by the straightener,
        // checked as an actual identity of quantum elementary polynomials
        let n = 4usize;
        let table = qelementary_table(n);
        let get = |i: i32, k: i32| -> Polynomial {
            if i < 0 || k < 0 || i > k || k > n as i32 {
                Polynomial::zero()
            } else {
                table[k as usize][i as usize].clone()
            }
        };
        for k in 1..=3i32 {
            for i in -1..=(k + 1) {
                for j in -1..=(k + 1) {
                    let lhs = get(i, k)
                        .mul(&get(j + 1, k + 1))
                        .add(&get(i + 1, k).mul(&get(j, k)))
                        .add(
                            &get(i - 1, k - 1)
                                .mul(&get(j, k))
                                .mul(&Polynomial::var(Variable::Q(k as usize))),
                        );
                    let rhs = get(j, k)
                        .mul(&get(i + 1, k + 1))
                        .add(&get(j + 1, k).mul(&get(i, k)))
                        .add(
                            &get(j - 1, k - 1)
                                .mul(&get(i, k))
                                .mul(&Polynomial::var(Variable::Q(k as usize))),
                        );
                    assert_eq!(lhs, rhs, "k={k} i={i} j={j}");
                }
            }
        }
    }

    #[test]
    fn quantize_schubert_examples() {
        let ring = FlagRing::new(3).unwrap();
        // sigma_{312} (Schubert polynomial x1^2) quantizes to x1^2 - q1
        let p = ring.quantize_schubert(&Perm::parse("312").unwrap()).unwrap();
        assert_eq!(p, x(1).pow(2).sub(&q(1)));
        // identity and degree-two classes are unchanged
        let p = ring.quantize_schubert(&Perm::parse("123").unwrap()).unwrap();
        assert_eq!(p, Polynomial::one());
        let p = ring.quantize_schubert(&Perm::parse("213").unwrap()).unwrap();
        assert_eq!(p, x(1));
    }

    #[test]
    fn product_reproduces_chevalley_examples() {
        let ring = FlagRing::new(3).unwrap();
        let s1 = Perm::parse("213").unwrap();
        // sigma_{s1} o sigma_{s1} = sigma_{312} + q1
        let p = ring.product(&s1, &s1).unwrap();
        assert_eq!(ring.display_vector(&p), "sigma[312] + q1*sigma[123]");
        // sigma_{s1} o sigma_{w0} = q1 sigma_{231} + q1 q2 sigma_{123}
        let w0 = Perm::parse("321").unwrap();
        let p = ring.product(&s1, &w0).unwrap();
        assert_eq!(
            ring.display_vector(&p),
            "q1*sigma[231] + q1*q2*sigma[123]"
        );
        // unit
        let e = Perm::parse("123").unwrap();
        for v in Perm::all(3) {
            let p = ring.product(&e, &v).unwrap();
            assert_eq!(p, QSchubertVector::basis(ring.weyl_index_of(&v).unwrap()));
        }
    }

    #[test]
    fn fl2_divisor_square_is_q() {
        let ring = FlagRing::new(2).unwrap();
        let s = Perm::parse("21").unwrap();
        let p = ring.product(&s, &s).unwrap();
        assert_eq!(ring.display_vector(&p), "q1*sigma[12]");
    }

    #[test]
    fn omega_matrices_n2() {
        let ring = FlagRing::new(2).unwrap();
        let ms = ring.omega_matrices().unwrap();
        assert_eq!(ms.len(), 1);
        // basis (e(0), e(1)); multiplication by -x1 sends 1 to -e(1) and
        // e(1) to -x1^2 = q1 modulo the relations
        assert_eq!(ms[0].entry(1, 0), Polynomial::one().neg());
        assert_eq!(ms[0].entry(0, 1), q(1).neg());
        assert_eq!(ms[0].entry(0, 0), Polynomial::zero());
        assert_eq!(ms[0].entry(1, 1), Polynomial::zero());
    }

    #[test]
    fn omega_classical_limit_is_classical_multiplication() {
        // q -> 0 of Omega_k equals the matrix of multiplication by
        // -(x_1+...+x_k) in the classical standard monomial basis
        let ring = FlagRing::new(3).unwrap();
        let ms = ring.omega_matrices().unwrap();
        let t = ring.schubert_table();
        let indices = ring.std_indices().to_vec();
        for (kpos, m) in ms.iter().enumerate() {
            let yk = crate::schubert::elementary(1, kpos + 1).neg();
            for (bpos, idx) in indices.iter().enumerate() {
                // classical product in the e-basis via Schubert expansion
                let f = crate::schubert::std_elementary_monomial(idx, 3).unwrap().mul(&yk);
                let class = t.expand(&f).unwrap();
                // expected column: convert the Schubert expansion to e-coords
                let tr = ring.transition();
                let mut expect: Vec<Rat> = vec![Rat::zero(); indices.len()];
                for (w, c) in &class.coeffs {
                    let wpos = tr.perm_position(w).unwrap();
                    for ipos in 0..indices.len() {
                        let t_c = tr.to_std[ipos][wpos].clone();
                        if !t_c.is_zero() {
                            expect[ipos] += t_c * c.clone();
                        }
                    }
                }
                for ipos in 0..indices.len() {
                    let got = m.entry(ipos, bpos).set_q_zero();
                    assert_eq!(got, Polynomial::constant(expect[ipos].clone()));
                }
            }
        }
    }

    #[test]
    fn presentation_flatness_n3() {
        let ring = FlagRing::new(3).unwrap();
        let report = ring.presentation_flatness_report().unwrap();
        assert!(report.pass, "{report}");
    }

    #[test]
    fn divisor_agreement_n3() {
        let ring = FlagRing::new(3).unwrap();
        let report = ring.divisor_agreement_report().unwrap();
        assert!(report.pass, "{report}");
    }

    #[test]
    fn classical_limit_report_n3() {
        let ring = FlagRing::new(3).unwrap();
        let report = ring.classical_limit_report().unwrap();
        assert!(report.pass, "{report}");
    }

    #[test]
    fn chevalley_route_rejects_general_factors() {
        let ring = FlagRing::new(3).unwrap();
        let u = Perm::parse("231").unwrap();
        assert!(ring.product_via_chevalley(&u, &u).is_err());
    }

    #[test]
    fn omega_matches_chevalley_after_basis_change() {
        // -Omega_k = T^{-1} omega_k T where T is the transition matrix from
        // e-coordinates to Schubert coordinates
        let ring = FlagRing::new(3).unwrap();
        let omegas = ring.omega_matrices().unwrap();
        let chev = ring.chevalley_matrices().unwrap();
        let tr = ring.transition();
        let size = tr.indices.len();
        for k in 0..ring.n() - 1 {
            for bpos in 0..size {
                // column bpos of T^{-1} omega_k T, computed by hand
                let mut schub = QSchubertVector::zero();
                for wpos in 0..size {
                    let c = &tr.to_schubert[wpos][bpos];
                    if !c.is_zero() {
                        let widx = ring.weyl_index_of(&tr.perms[wpos]).unwrap();
                        schub.add_term(widx, Polynomial::constant(c.clone()));
                    }
                }
                let applied = chev[k].apply(&schub);
                // back to e-coordinates
                let mut expect: Vec<Polynomial> = vec![Polynomial::zero(); size];
                for (widx, p) in &applied.coeffs {
                    let w = ring.perm_of_weyl(*widx).clone();
                    let wpos = tr.perm_position(&w).unwrap();
                    for ipos in 0..size {
                        let c = &tr.to_std[ipos][wpos];
                        if !c.is_zero() {
                            expect[ipos] = expect[ipos].add(&p.scale(c));
                        }
                    }
                }
                for ipos in 0..size {
                    assert_eq!(omegas[k].entry(ipos, bpos).neg(), expect[ipos]);
                }
            }
        }
    }
}
