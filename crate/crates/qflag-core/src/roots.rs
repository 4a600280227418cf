//! Root systems built from Cartan matrices, and Weyl group enumeration.
//!
//! Conventions. The Cartan matrix entry `a[i][j]` is the pairing of the
//! simple root `alpha_j` against the simple coroot `alpha_i^v`, so the
//! simple reflection acts on root coordinates by
//! `s_i(v) = v - (row i of A, v) e_i`. The invariant inner product is
//! symmetrized by `d_i` with `d_i a_ij = d_j a_ji`, scaled so that short
//! roots have squared length 2 in each component.
//!
//! Weyl group elements are identified with their integer action matrices on
//! the root lattice; equality is matrix equality, and the enumeration order
//! (by length, then lexicographically on the canonical reduced word) is
//! deterministic.

use std::collections::HashMap;

use num_traits::{One, Signed, Zero};

use crate::rat::{rat, Rat};
use crate::{Error, Result};

/// Hard cap on the positive-root closure; all supported finite types stay
/// far below this.
pub const CLOSURE_BOUND: usize = 500;

/// An integer Cartan matrix of finite type.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CartanMatrix {
    rank: usize,
    entries: Vec<Vec<i64>>,
}

impl CartanMatrix {
    pub fn new(entries: Vec<Vec<i64>>) -> Result<Self> {
        let rank = entries.len();
        if rank == 0 {
            return Err(Error::InvalidCartan("empty matrix".into()));
        }
        for row in &entries {
            if row.len() != rank {
                return Err(Error::InvalidCartan("matrix is not square".into()));
            }
        }
        for i in 0..rank {
            if entries[i][i] != 2 {
                return Err(Error::InvalidCartan(format!(
                    "diagonal entry a[{i}][{i}] = {} (must be 2)",
                    entries[i][i]
                )));
            }
            for j in 0..rank {
                if i != j {
                    if entries[i][j] > 0 {
                        return Err(Error::InvalidCartan(format!(
                            "off-diagonal entry a[{i}][{j}] = {} (must be <= 0)",
                            entries[i][j]
                        )));
                    }
                    if (entries[i][j] == 0) != (entries[j][i] == 0) {
                        return Err(Error::InvalidCartan(format!(
                            "a[{i}][{j}] = 0 but a[{j}][{i}] != 0"
                        )));
                    }
                }
            }
        }
        Ok(CartanMatrix { rank, entries })
    }

    /// Standard matrix for a named type: "A1".."A9", "B2", "G2".
    pub fn preset(name: &str) -> Result<Self> {
        let name = name.trim().to_uppercase();
        if let Some(n) = name.strip_prefix('A').and_then(|s| s.parse::<usize>().ok()) {
            if (1..=9).contains(&n) {
                return Self::type_a(n);
            }
        }
        match name.as_str() {
            "B2" => Self::new(vec![vec![2, -1], vec![-2, 2]]),
            "G2" => Self::new(vec![vec![2, -1], vec![-3, 2]]),
            _ => Err(Error::InvalidCartan(format!("unknown preset \"{name}\""))),
        }
    }

    /// Type A_l Cartan matrix (tridiagonal with -1 off the diagonal).
    pub fn type_a(l: usize) -> Result<Self> {
        let mut m = vec![vec![0i64; l]; l];
        for i in 0..l {
            m[i][i] = 2;
            if i + 1 < l {
                m[i][i + 1] = -1;
                m[i + 1][i] = -1;
            }
        }
        Self::new(m)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.entries[i][j]
    }

    pub fn transpose(&self) -> CartanMatrix {
        let mut m = vec![vec![0i64; self.rank]; self.rank];
        for i in 0..self.rank {
            for j in 0..self.rank {
                m[i][j] = self.entries[j][i];
            }
        }
        CartanMatrix {
            rank: self.rank,
            entries: m,
        }
    }

    /// Symmetrizer `d` with `d_i a_ij = d_j a_ji`, positive rationals scaled
    /// so that `min d_i = 1` in each connected component (short roots get
    /// squared length 2).
    fn symmetrizer(&self) -> Result<Vec<Rat>> {
        let l = self.rank;
        let mut d: Vec<Option<Rat>> = vec![None; l];
        // propagate over each connected component of the Dynkin graph
        for start in 0..l {
            if d[start].is_some() {
                continue;
            }
            let mut component = vec![start];
            d[start] = Some(Rat::one());
            let mut stack = vec![start];
            while let Some(i) = stack.pop() {
                for j in 0..l {
                    if i != j && self.entries[i][j] != 0 && d[j].is_none() {
                        let dj = d[i].clone().unwrap() * rat(self.entries[i][j])
                            / rat(self.entries[j][i]);
                        d[j] = Some(dj);
                        component.push(j);
                        stack.push(j);
                    }
                }
            }
            let min = component
                .iter()
                .map(|&j| d[j].clone().unwrap())
                .min()
                .unwrap();
            for &j in &component {
                let v = d[j].clone().unwrap() / min.clone();
                d[j] = Some(v);
            }
        }
        let d: Vec<Rat> = d.into_iter().map(|v| v.unwrap()).collect();
        for i in 0..l {
            for j in 0..l {
                if d[i].clone() * rat(self.entries[i][j]) != d[j].clone() * rat(self.entries[j][i])
                {
                    return Err(Error::InvalidCartan("matrix is not symmetrizable".into()));
                }
            }
        }
        if d.iter().any(|v| !v.is_positive()) {
            return Err(Error::InvalidCartan("symmetrizer is not positive".into()));
        }
        Ok(d)
    }
}

fn is_positive_vec(v: &[i64]) -> bool {
    v.iter().all(|&c| c >= 0) && v.iter().any(|&c| c > 0)
}

fn is_negative_vec(v: &[i64]) -> bool {
    v.iter().all(|&c| c <= 0) && v.iter().any(|&c| c < 0)
}

/// A finite root system: positive roots and coroots in the simple bases.
#[derive(Debug, Clone)]
pub struct RootSystem {
    cartan: CartanMatrix,
    /// Positive roots as coordinate vectors in the simple-root basis,
    /// ordered by height, then lexicographically.
    positive_roots: Vec<Vec<i64>>,
    /// Coroot of `positive_roots[k]` in the simple-coroot basis.
    positive_coroots: Vec<Vec<i64>>,
    /// Height of each coroot (sum of its coordinates).
    coroot_heights: Vec<i64>,
    symmetrizer: Vec<Rat>,
}

impl RootSystem {
    /// Builds the full positive-root closure from the simple roots.
    pub fn build(cartan: CartanMatrix) -> Result<Self> {
        let l = cartan.rank();
        let symmetrizer = cartan.symmetrizer()?;
        let mut roots: Vec<Vec<i64>> = Vec::new();
        let mut seen: HashMap<Vec<i64>, ()> = HashMap::new();
        for i in 0..l {
            let mut e = vec![0i64; l];
            e[i] = 1;
            seen.insert(e.clone(), ());
            roots.push(e);
        }
        let mut head = 0;
        while head < roots.len() {
            let alpha = roots[head].clone();
            head += 1;
            for i in 0..l {
                let pairing: i64 = (0..l).map(|j| cartan.entry(i, j) * alpha[j]).sum();
                let mut beta = alpha.clone();
                beta[i] -= pairing;
                if is_negative_vec(&beta) {
                    continue; // only happens for beta = -alpha_i
                }
                if !is_positive_vec(&beta) {
                    return Err(Error::Internal(
                        "reflection produced a mixed-sign vector".into(),
                    ));
                }
                if !seen.contains_key(&beta) {
                    if roots.len() >= CLOSURE_BOUND {
                        return Err(Error::NotFiniteType(CLOSURE_BOUND));
                    }
                    seen.insert(beta.clone(), ());
                    roots.push(beta);
                }
            }
        }
        roots.sort_by(|a, b| {
            let ha: i64 = a.iter().sum();
            let hb: i64 = b.iter().sum();
            ha.cmp(&hb).then_with(|| a.cmp(b))
        });

        // coroot of alpha = sum_j c_j (d_j / d_alpha) alpha_j^v,
        // where d_alpha = (alpha, alpha) / 2 and (alpha_j, alpha_k) = d_j a_jk.
        let mut coroots = Vec::with_capacity(roots.len());
        let mut heights = Vec::with_capacity(roots.len());
        for alpha in &roots {
            let mut norm = Rat::zero();
            for j in 0..l {
                for k in 0..l {
                    norm += symmetrizer[j].clone()
                        * rat(cartan.entry(j, k))
                        * rat(alpha[j])
                        * rat(alpha[k]);
                }
            }
            let d_alpha = norm / rat(2);
            let mut m = Vec::with_capacity(l);
            for j in 0..l {
                let mj = rat(alpha[j]) * symmetrizer[j].clone() / d_alpha.clone();
                if !mj.is_integer() {
                    return Err(Error::Internal(format!(
                        "non-integral coroot coordinate {mj} for root {alpha:?}"
                    )));
                }
                m.push(mj.to_integer().try_into().map_err(|_| {
                    Error::Internal("coroot coordinate out of i64 range".into())
                })?);
            }
            heights.push(m.iter().sum());
            coroots.push(m);
        }

        Ok(RootSystem {
            cartan,
            positive_roots: roots,
            positive_coroots: coroots,
            coroot_heights: heights,
            symmetrizer,
        })
    }

    pub fn rank(&self) -> usize {
        self.cartan.rank()
    }

    pub fn cartan(&self) -> &CartanMatrix {
        &self.cartan
    }

    pub fn num_positive_roots(&self) -> usize {
        self.positive_roots.len()
    }

    pub fn positive_root(&self, idx: usize) -> Result<&[i64]> {
        self.positive_roots
            .get(idx)
            .map(|v| v.as_slice())
            .ok_or(Error::IndexOutOfRange {
                what: "positive root",
                index: idx,
                max: self.positive_roots.len(),
            })
    }

    pub fn positive_roots(&self) -> &[Vec<i64>] {
        &self.positive_roots
    }

    pub fn positive_coroots(&self) -> &[Vec<i64>] {
        &self.positive_coroots
    }

    pub fn coroot(&self, idx: usize) -> Result<&[i64]> {
        self.positive_coroots
            .get(idx)
            .map(|v| v.as_slice())
            .ok_or(Error::IndexOutOfRange {
                what: "positive root",
                index: idx,
                max: self.positive_coroots.len(),
            })
    }

    /// Height of the coroot of positive root `idx`.
    pub fn coroot_height(&self, idx: usize) -> Result<i64> {
        self.coroot_heights
            .get(idx)
            .copied()
            .ok_or(Error::IndexOutOfRange {
                what: "positive root",
                index: idx,
                max: self.coroot_heights.len(),
            })
    }

    pub fn symmetrizer(&self) -> &[Rat] {
        &self.symmetrizer
    }

    /// `lambda_i(alpha^v)`: the i-th simple-coroot coordinate of the coroot
    /// of positive root `alpha_idx`. Indices are 0-based.
    pub fn pairing_fundamental_weight(&self, i: usize, alpha_idx: usize) -> Result<i64> {
        if i >= self.rank() {
            return Err(Error::IndexOutOfRange {
                what: "simple root",
                index: i,
                max: self.rank(),
            });
        }
        Ok(self.coroot(alpha_idx)?[i])
    }

    /// Inner product of simple coroots, `<alpha_i^v, alpha_j^v> = a_ij / d_j`.
    pub fn coroot_inner(&self, i: usize, j: usize) -> Result<Rat> {
        if i >= self.rank() || j >= self.rank() {
            return Err(Error::IndexOutOfRange {
                what: "simple root",
                index: i.max(j),
                max: self.rank(),
            });
        }
        Ok(rat(self.cartan.entry(i, j)) / self.symmetrizer[j].clone())
    }

    /// Action matrix of the simple reflection `s_i` on root coordinates
    /// (row-major, acting on column vectors).
    pub fn simple_reflection(&self, i: usize) -> Vec<i64> {
        let l = self.rank();
        let mut m = identity(l);
        for j in 0..l {
            m[i * l + j] -= self.cartan.entry(i, j);
        }
        m
    }

    /// Action matrix of the reflection in positive root `alpha_idx`:
    /// `s_alpha(v) = v - v(alpha^v) alpha`.
    pub fn root_reflection(&self, alpha_idx: usize) -> Result<Vec<i64>> {
        let l = self.rank();
        let c = self.positive_root(alpha_idx)?.to_vec();
        let m = self.coroot(alpha_idx)?.to_vec();
        // pairing of alpha_j against alpha^v: sum_k m_k a[k][j]
        let mut pair = vec![0i64; l];
        for j in 0..l {
            pair[j] = (0..l).map(|k| m[k] * self.cartan.entry(k, j)).sum();
        }
        let mut s = identity(l);
        for p in 0..l {
            for j in 0..l {
                s[p * l + j] -= c[p] * pair[j];
            }
        }
        Ok(s)
    }
}

pub(crate) fn identity(l: usize) -> Vec<i64> {
    let mut m = vec![0i64; l * l];
    for i in 0..l {
        m[i * l + i] = 1;
    }
    m
}

pub(crate) fn mat_mul(a: &[i64], b: &[i64], l: usize) -> Vec<i64> {
    let mut out = vec![0i64; l * l];
    for i in 0..l {
        for k in 0..l {
            let aik = a[i * l + k];
            if aik == 0 {
                continue;
            }
            for j in 0..l {
                out[i * l + j] += aik * b[k * l + j];
            }
        }
    }
    out
}

fn mat_vec(m: &[i64], v: &[i64], l: usize) -> Vec<i64> {
    (0..l)
        .map(|i| (0..l).map(|j| m[i * l + j] * v[j]).sum())
        .collect()
}

/// A Weyl group element: integer action matrix on the root lattice, with
/// cached length and lexicographically minimal reduced word (0-based
/// generator indices).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeylElement {
    pub action: Vec<i64>,
    pub length: usize,
    pub word: Vec<usize>,
}

/// The full Weyl group of a root system, in the deterministic order
/// (length, then lex on canonical word). Index 0 is the identity and the
/// last index is the longest element.
#[derive(Debug, Clone)]
pub struct WeylGroup {
    rank: usize,
    elements: Vec<WeylElement>,
    index: HashMap<Vec<i64>, usize>,
}

impl WeylGroup {
    /// Enumerates the whole group by breadth-first search over reduced words.
    pub fn enumerate(rs: &RootSystem) -> Self {
        let l = rs.rank();
        let gens: Vec<Vec<i64>> = (0..l).map(|i| rs.simple_reflection(i)).collect();
        let mut elements = vec![WeylElement {
            action: identity(l),
            length: 0,
            word: Vec::new(),
        }];
        let mut index = HashMap::new();
        index.insert(identity(l), 0usize);
        let mut level: Vec<usize> = vec![0];
        while !level.is_empty() {
            let mut next = Vec::new();
            for &widx in &level {
                let (action, word) = {
                    let w = &elements[widx];
                    (w.action.clone(), w.word.clone())
                };
                for (i, g) in gens.iter().enumerate() {
                    // l(w s_i) = l(w) + 1 iff w(alpha_i) > 0
                    let mut alpha_i = vec![0i64; l];
                    alpha_i[i] = 1;
                    if !is_positive_vec(&mat_vec(&action, &alpha_i, l)) {
                        continue;
                    }
                    let m = mat_mul(&action, g, l);
                    if index.contains_key(&m) {
                        continue;
                    }
                    let mut w = word.clone();
                    w.push(i);
                    index.insert(m.clone(), elements.len());
                    next.push(elements.len());
                    elements.push(WeylElement {
                        action: m,
                        length: w.len(),
                        word: w,
                    });
                }
            }
            level = next;
        }
        // BFS visits parents in lex-word order and generators in ascending
        // order, so the first word found for each element is lex-minimal;
        // levels come out sorted already, but make the order explicit.
        let mut order: Vec<usize> = (0..elements.len()).collect();
        order.sort_by(|&a, &b| {
            (elements[a].length, &elements[a].word).cmp(&(elements[b].length, &elements[b].word))
        });
        let elements: Vec<WeylElement> = order.into_iter().map(|i| elements[i].clone()).collect();
        let mut index = HashMap::new();
        for (i, w) in elements.iter().enumerate() {
            index.insert(w.action.clone(), i);
        }
        WeylGroup {
            rank: l,
            elements,
            index,
        }
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn element(&self, idx: usize) -> &WeylElement {
        &self.elements[idx]
    }

    pub fn elements(&self) -> &[WeylElement] {
        &self.elements
    }

    pub fn identity_index(&self) -> usize {
        0
    }

    pub fn longest_index(&self) -> usize {
        self.elements.len() - 1
    }

    pub fn index_of_action(&self, action: &[i64]) -> Option<usize> {
        self.index.get(action).copied()
    }

    /// Index of `w * s_i` for a simple reflection (0-based `i`).
    pub fn multiply_simple(&self, rs: &RootSystem, widx: usize, i: usize) -> Result<usize> {
        if i >= self.rank {
            return Err(Error::IndexOutOfRange {
                what: "simple reflection",
                index: i,
                max: self.rank,
            });
        }
        let m = mat_mul(
            &self.elements[widx].action,
            &rs.simple_reflection(i),
            self.rank,
        );
        self.index
            .get(&m)
            .copied()
            .ok_or_else(|| Error::Internal("product left the enumerated group".into()))
    }

    /// Index of `w * s_alpha` for the reflection in positive root `alpha_idx`.
    pub fn reflect(&self, rs: &RootSystem, widx: usize, alpha_idx: usize) -> Result<usize> {
        let s = rs.root_reflection(alpha_idx)?;
        let m = mat_mul(&self.elements[widx].action, &s, self.rank);
        self.index
            .get(&m)
            .copied()
            .ok_or_else(|| Error::Internal("reflection left the enumerated group".into()))
    }

    /// Element index of a product of simple reflections.
    pub fn element_from_word(&self, rs: &RootSystem, word: &[usize]) -> Result<usize> {
        let mut m = identity(self.rank);
        for &i in word {
            if i >= self.rank {
                return Err(Error::IndexOutOfRange {
                    what: "simple reflection",
                    index: i,
                    max: self.rank,
                });
            }
            m = mat_mul(&m, &rs.simple_reflection(i), self.rank);
        }
        self.index
            .get(&m)
            .copied()
            .ok_or_else(|| Error::Internal("word product left the enumerated group".into()))
    }

    /// Number of positive roots sent negative by `w` (an independent length
    /// computation, used for cross-checks).
    pub fn inversion_count(&self, rs: &RootSystem, widx: usize) -> usize {
        let l = self.rank;
        let action = &self.elements[widx].action;
        rs.positive_roots()
            .iter()
            .filter(|alpha| is_negative_vec(&mat_vec(action, alpha, l)))
            .count()
    }

    /// Human-readable name: "e" for the identity, else "s1*s2*..." from the
    /// canonical word (1-based in the display).
    pub fn label(&self, widx: usize) -> String {
        let w = &self.elements[widx];
        if w.word.is_empty() {
            "e".to_string()
        } else {
            w.word
                .iter()
                .map(|i| format!("s{}", i + 1))
                .collect::<Vec<_>>()
                .join("*")
        }
    }
}
