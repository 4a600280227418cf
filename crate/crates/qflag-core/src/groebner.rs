//! Buchberger's algorithm and normal forms under the pure lexicographic
//! order `x1 > x2 > ... > q1 > q2 > ... > h`.
//!
//! This is verification support: tests use it as a quotient-ring oracle that
//! is independent of the straightening rewrite system, so the two can certify
//! each other.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use crate::poly::{Monomial, Polynomial};
use crate::rat::Rat;

/// Pure lex comparison (no degree component), `x1` most significant.
fn lex_cmp(a: &Monomial, b: &Monomial) -> Ordering {
    let n = a.x_exps().len().max(b.x_exps().len());
    for i in 0..n {
        let ea = a.x_exps().get(i).copied().unwrap_or(0);
        let eb = b.x_exps().get(i).copied().unwrap_or(0);
        if ea != eb {
            return ea.cmp(&eb);
        }
    }
    let n = a.q_exps().len().max(b.q_exps().len());
    for i in 0..n {
        let ea = a.q_exps().get(i).copied().unwrap_or(0);
        let eb = b.q_exps().get(i).copied().unwrap_or(0);
        if ea != eb {
            return ea.cmp(&eb);
        }
    }
    a.h_exp().cmp(&b.h_exp())
}

fn leading(f: &Polynomial) -> Option<(Monomial, Rat)> {
    f.iter()
        .max_by(|(m1, _), (m2, _)| lex_cmp(m1, m2))
        .map(|(m, c)| (m.clone(), c.clone()))
}

fn lcm(a: &Monomial, b: &Monomial) -> Monomial {
    let nx = a.x_exps().len().max(b.x_exps().len());
    let x = (0..nx)
        .map(|i| {
            a.x_exps()
                .get(i)
                .copied()
                .unwrap_or(0)
                .max(b.x_exps().get(i).copied().unwrap_or(0))
        })
        .collect();
    let nq = a.q_exps().len().max(b.q_exps().len());
    let q = (0..nq)
        .map(|i| {
            a.q_exps()
                .get(i)
                .copied()
                .unwrap_or(0)
                .max(b.q_exps().get(i).copied().unwrap_or(0))
        })
        .collect();
    Monomial::new(x, q, a.h_exp().max(b.h_exp()))
}

/// An ideal with a completed lex Groebner basis.
pub struct LexIdeal {
    basis: Vec<(Polynomial, Monomial, Rat)>, // (g, lt(g), lc(g))
}

impl LexIdeal {
    /// Runs Buchberger's algorithm to completion, selecting the pair with
    /// the smallest lcm first (normal strategy; the naive stack order makes
    /// pure-lex computations explode).
    pub fn groebner(generators: Vec<Polynomial>) -> Self {
        let mut basis: Vec<(Polynomial, Monomial, Rat)> = Vec::new();
        for g in generators {
            if let Some((lt, lc)) = leading(&g) {
                basis.push((g, lt, lc));
            }
        }
        let mut pairs: BTreeMap<(i64, Monomial), Vec<(usize, usize)>> = BTreeMap::new();
        let mut queue_pair = |pairs: &mut BTreeMap<(i64, Monomial), Vec<(usize, usize)>>,
                              basis: &[(Polynomial, Monomial, Rat)],
                              i: usize,
                              j: usize| {
            let l = lcm(&basis[i].1, &basis[j].1);
            // product criterion: coprime leading terms reduce to zero
            if l == basis[i].1.mul(&basis[j].1) {
                return;
            }
            pairs.entry((l.degree(), l)).or_default().push((i, j));
        };
        for i in 0..basis.len() {
            for j in 0..i {
                queue_pair(&mut pairs, &basis, j, i);
            }
        }
        while let Some((key, bucket)) = pairs.pop_first() {
            let l = key.1;
            for (i, j) in bucket {
                let mi = Monomial::quotient(&l, &basis[i].1);
                let mj = Monomial::quotient(&l, &basis[j].1);
                let one = Rat::from(num_bigint::BigInt::from(1));
                let s = basis[i]
                    .0
                    .mul_monomial(&mi, &(one.clone() / basis[i].2.clone()))
                    .sub(&basis[j].0.mul_monomial(&mj, &(one / basis[j].2.clone())));
                let r = reduce(&s, &basis);
                if !r.is_zero() {
                    let (lt, lc) = leading(&r).unwrap();
                    basis.push((r, lt, lc));
                    for k in 0..basis.len() - 1 {
                        queue_pair(&mut pairs, &basis, k, basis.len() - 1);
                    }
                }
            }
        }
        // interreduce for faster normal forms
        let snapshot = basis.clone();
        let reduced: Vec<(Polynomial, Monomial, Rat)> = snapshot
            .iter()
            .enumerate()
            .filter_map(|(i, (g, lt, _))| {
                // drop generators whose leading term another one divides
                let redundant = snapshot
                    .iter()
                    .enumerate()
                    .any(|(j, (_, ltj, _))| i != j && ltj.divides(lt) && (lt != ltj || j < i));
                if redundant {
                    None
                } else {
                    let others: Vec<_> = snapshot
                        .iter()
                        .enumerate()
                        .filter(|(j, _)| *j != i)
                        .map(|(_, e)| e.clone())
                        .collect();
                    let r = reduce(g, &others);
                    leading(&r).map(|(lt, lc)| (r, lt, lc))
                }
            })
            .collect();
        LexIdeal { basis: reduced }
    }

    /// Unique normal form: no term of the result is divisible by any leading
    /// term of the basis.
    pub fn normal_form(&self, f: &Polynomial) -> Polynomial {
        reduce(f, &self.basis)
    }

    pub fn basis_len(&self) -> usize {
        self.basis.len()
    }
}

fn reduce(f: &Polynomial, basis: &[(Polynomial, Monomial, Rat)]) -> Polynomial {
    let mut f = f.clone();
    loop {
        let mut step = None;
        'search: for (m, c) in f.iter() {
            for (g, lt, lc) in basis {
                if lt.divides(m) {
                    step = Some((m.clone(), c.clone(), g.clone(), lt.clone(), lc.clone()));
                    break 'search;
                }
            }
        }
        match step {
            None => return f,
            Some((m, c, g, lt, lc)) => {
                let quot = Monomial::quotient(&m, &lt);
                f = f.sub(&g.mul_monomial(&quot, &(c / lc)));
            }
        }
    }
}
