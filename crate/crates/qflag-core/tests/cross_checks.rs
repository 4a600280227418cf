//! Cross-module consistency checks: the straightening rewrite system against
//! a Groebner-basis quotient oracle, and the presentation product against
//! iterated divisor application.

use qflag_core::chevalley::{DivisorOperators, QSchubertVector};
use qflag_core::groebner::LexIdeal;
use qflag_core::perm::Perm;
use qflag_core::poly::Polynomial;
use qflag_core::presentation::{qelementary, straighten, FlagRing, QeTerm};
use qflag_core::roots::{CartanMatrix, RootSystem, WeylGroup};
use qflag_core::schubert::standard_indices;

/// Linear extension of the presentation product to a Schubert-basis vector.
fn product_with_vector(ring: &FlagRing, u: &Perm, v: &QSchubertVector) -> QSchubertVector {
    let mut out = QSchubertVector::zero();
    for (widx, p) in &v.coeffs {
        let w = ring.perm_of_weyl(*widx).clone();
        let term = ring.product(u, &w).unwrap();
        out = out.add(&term.scale_poly(p));
    }
    out
}

#[test]
fn straightening_matches_groebner_oracle_n3() {
    // every product of two standard monomials, straightened, re-expanded as
    // a polynomial in x and q, agrees with the input modulo the quantum ideal
    let n = 3;
    let ideal = LexIdeal::groebner((1..=n).map(|i| qelementary(i, n, n).unwrap()).collect());
    let ring = FlagRing::new(n).unwrap();
    let indices = standard_indices(n);
    for a in &indices {
        for b in &indices {
            let mut factors = QeTerm::from_std_index(a).factors;
            factors.extend(QeTerm::from_std_index(b).factors);
            let straightened =
                straighten(vec![QeTerm::new(Polynomial::one(), factors)], n).unwrap();
            let mut recombined = Polynomial::zero();
            for (idx, c) in &straightened.coeffs {
                recombined = recombined.add(&ring.quantum_std_monomial(idx).unwrap().mul(c));
            }
            let product = ring
                .quantum_std_monomial(a)
                .unwrap()
                .mul(&ring.quantum_std_monomial(b).unwrap());
            assert!(
                ideal.normal_form(&product.sub(&recombined)).is_zero(),
                "a={a:?} b={b:?}"
            );
        }
    }
}

#[test]
fn straightening_matches_groebner_oracle_divisor_triples_n4() {
    // spot-check the rank-four straightener against the oracle on products
    // qe(1,k) * standard monomial (the omega-matrix columns)
    let n = 4;
    let ideal = LexIdeal::groebner((1..=n).map(|i| qelementary(i, n, n).unwrap()).collect());
    let ring = FlagRing::new(n).unwrap();
    for k in 1..n {
        for idx in standard_indices(n) {
            let mut factors = vec![(1i32, k as i32)];
            factors.extend(QeTerm::from_std_index(&idx).factors);
            let straightened =
                straighten(vec![QeTerm::new(Polynomial::one(), factors)], n).unwrap();
            let mut recombined = Polynomial::zero();
            for (l_idx, c) in &straightened.coeffs {
                recombined = recombined.add(&ring.quantum_std_monomial(l_idx).unwrap().mul(c));
            }
            let product = qelementary(1, k, n)
                .unwrap()
                .mul(&ring.quantum_std_monomial(&idx).unwrap());
            assert!(
                ideal.normal_form(&product.sub(&recombined)).is_zero(),
                "k={k} idx={idx:?}"
            );
        }
    }
}

#[test]
fn iterated_divisor_words_agree_across_routes_n3() {
    // applying the Chevalley operators along a reduced word equals iterating
    // the presentation product with the corresponding divisors
    let ring = FlagRing::new(3).unwrap();
    let rs = RootSystem::build(CartanMatrix::type_a(2).unwrap()).unwrap();
    let wg = WeylGroup::enumerate(&rs);
    let ops = DivisorOperators::new(&rs, &wg).unwrap();
    for u in Perm::all(3) {
        let word = u.reduced_word();
        for v in Perm::all(3) {
            let vidx = ring.weyl_index_of(&v).unwrap();
            let chevalley_route = ops.apply_word(&word, &QSchubertVector::basis(vidx));
            let mut presentation_route = QSchubertVector::basis(vidx);
            for &i in word.iter().rev() {
                let si = Perm::identity(3).multiply_adjacent(i + 1);
                presentation_route = product_with_vector(&ring, &si, &presentation_route);
            }
            assert_eq!(chevalley_route, presentation_route, "u={u} v={v}");
        }
    }
}

#[test]
fn presentation_product_is_commutative_and_associative_n3() {
    let ring = FlagRing::new(3).unwrap();
    let perms = Perm::all(3);
    for u in &perms {
        for v in &perms {
            assert_eq!(ring.product(u, v).unwrap(), ring.product(v, u).unwrap());
        }
    }
    for u in &perms {
        for v in &perms {
            let uv = ring.product(u, v).unwrap();
            for w in &perms {
                let vw = ring.product(v, w).unwrap();
                let left = product_with_vector(&ring, w, &uv);
                let right = product_with_vector(&ring, u, &vw);
                assert_eq!(left, right, "u={u} v={v} w={w}");
            }
        }
    }
}

#[test]
fn products_are_graded_n3_n4() {
    use qflag_core::chevalley::is_homogeneous_of_degree;
    for n in [3usize, 4] {
        let ring = FlagRing::new(n).unwrap();
        for u in Perm::all(n) {
            for v in Perm::all(n) {
                let p = ring.product(&u, &v).unwrap();
                let expected = 2 * (u.length() + v.length()) as i64;
                assert!(
                    is_homogeneous_of_degree(ring.weyl_group(), &p, expected),
                    "n={n} u={u} v={v}"
                );
            }
        }
    }
}
