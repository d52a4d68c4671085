use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use super::{add_word, bilinear, degree_three_table, is_basis_word_n, table_product, BasisWord, Shape, WordPoly};
use crate::expansion::normal_form_basis;
use crate::presentation::Presentation;
use crate::rational::Rational;
use crate::term::{Monomial, Polynomial};

/// The free `Nov_s` algebra on the basis 𝒩.
#[derive(Clone, Debug)]
pub struct NovS {
    table: BTreeMap<Monomial, Vec<(BasisWord, Rational)>>,
}

impl Default for NovS {
    fn default() -> Self {
        Self::new()
    }
}

fn sign(odd: bool) -> Rational {
    Rational::from_integer(if odd { -1 } else { 1 })
}

/// `x_{r1}((x_{r2} x_{r3}) … x_{rn})` with the tail sorted, brought to
/// `r1 ≤ r2` using `x_a(x_b …) = (-1)^(n-1) x_b(x_a …)`.
fn right_word(r1: u32, r2: u32, mut tail: Vec<u32>, c: &Rational, out: &mut WordPoly) {
    tail.sort_unstable();
    let n = tail.len() + 2;
    let (a, b, c) = if r1 <= r2 { (r1, r2, c.clone()) } else { (r2, r1, c * &sign(n % 2 == 0)) };
    if a == b && n % 2 == 0 {
        return;
    }
    let mut gens = Vec::with_capacity(n);
    gens.push(a);
    gens.push(b);
    gens.extend(tail);
    add_word(out, BasisWord::right(gens), &c);
}

/// Product of two left-normed words of degrees `p, q ≥ 2`:
/// `(-1)^q x_{j1}((x_{i1} x_{i2}) … )` with everything after `i1` sorted.
fn left_times_left(a: &[u32], b: &[u32], c: &Rational, out: &mut WordPoly) {
    let q = b.len();
    let mut tail: Vec<u32> = a[1..].to_vec();
    tail.extend_from_slice(&b[1..]);
    right_word(b[0], a[0], tail, &(c * &sign(q % 2 == 1)), out);
}

impl NovS {
    pub fn new() -> Self {
        let p = Presentation::builtin("nov_s").expect("builtin");
        let cb = normal_form_basis(&p, 3);
        NovS { table: degree_three_table(&cb, is_basis_word_n) }
    }

    /// Product of two basis words.
    pub fn mult(&self, a: &BasisWord, b: &BasisWord) -> WordPoly {
        let mut out = WordPoly::new();
        self.mult_into(a, b, &Rational::ONE, &mut out);
        out
    }

    fn mult_into(&self, a: &BasisWord, b: &BasisWord, c: &Rational, out: &mut WordPoly) {
        let (p, q) = (a.degree(), b.degree());
        if p + q == 2 {
            add_word(out, BasisWord::left(alloc::vec![a.gens[0], b.gens[0]]), c);
            return;
        }
        if p + q == 3 {
            let mut gens = a.gens.clone();
            gens.extend_from_slice(&b.gens);
            let shape = if p == 2 { Shape::LeftNormed } else { Shape::RightNormed };
            table_product(&self.table, shape, &gens, c, out);
            return;
        }
        if a.is_right() || b.is_right() {
            return;
        }
        match (p, q) {
            (1, _) => right_word(a.gens[0], b.gens[0], b.gens[1..].to_vec(), c, out),
            (_, 1) => {
                let x = b.gens[0];
                let last = a.gens[p - 1];
                let mut gens = a.gens.clone();
                gens.push(x);
                if x >= last {
                    add_word(out, BasisWord::left(gens), c);
                    return;
                }
                gens[1..].sort_unstable();
                add_word(out, BasisWord::left(gens), c);
                // (A m) x = (A x) m + A(m x) - A(x m), right symmetry
                let head = &a.gens[..p - 1];
                left_times_left(head, &[last, x], c, out);
                left_times_left(head, &[x, last], &-c, out);
            }
            _ => left_times_left(&a.gens, &b.gens, c, out),
        }
    }

    pub fn mult_poly(&self, a: &WordPoly, b: &WordPoly) -> WordPoly {
        bilinear(a, b, |u, v| self.mult(u, v))
    }

    /// Image of a one-operation monomial under the evaluation homomorphism.
    pub fn eval(&self, m: &Monomial) -> WordPoly {
        match m.split() {
            None => {
                let mut out = WordPoly::new();
                add_word(&mut out, BasisWord::generator(m.as_leaf().unwrap()), &Rational::ONE);
                out
            }
            Some((_, l, r)) => self.mult_poly(&self.eval(&l), &self.eval(&r)),
        }
    }

    pub fn eval_poly(&self, q: &Polynomial) -> WordPoly {
        let mut out = WordPoly::new();
        for (m, c) in q.iter() {
            for (w, x) in self.eval(m) {
                add_word(&mut out, w, &(&x * c));
            }
        }
        out
    }

    /// Normal form of a one-operation polynomial, written with operation `op`.
    pub fn normal_form(&self, q: &Polynomial, op: usize) -> Polynomial {
        super::word_poly_to_polynomial(&self.eval_poly(q), op)
    }
}

/// Normal form in 𝒩 of a polynomial over one operation (index 0).
pub fn nf_nov_s(q: &Polynomial) -> Polynomial {
    NovS::new().normal_form(q, 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expansion::ConsequenceTower;
    use crate::normal_form::is_basis_n;
    use crate::term::{multilinear_basis, parse_polynomial, permutations, Signature};

    fn sig() -> Signature {
        Signature::from_glyphs(&['<'])
    }

    #[test]
    fn degree_three_words_are_fixed() {
        let nov = NovS::new();
        for p in permutations(3) {
            for w in [BasisWord::left(p.clone()), BasisWord::right(p.clone())] {
                if is_basis_word_n(&w) {
                    let v = nov.eval(&w.to_monomial(0));
                    assert_eq!(v.len(), 1);
                    assert_eq!(v[&w], Rational::ONE);
                }
            }
        }
    }

    #[test]
    fn identity_thirteen_vanishes() {
        let nov = NovS::new();
        for t in ["(a<(b<c))<d", "a<(b<(c<d))", "(x2<(x2<x1))<x1"] {
            let q = parse_polynomial(t, &sig()).unwrap();
            assert!(nov.eval_poly(&q).is_empty(), "{t}");
        }
    }

    #[test]
    fn evaluation_agrees_with_linear_algebra() {
        let nov = NovS::new();
        let p = Presentation::builtin("nov_s").unwrap();
        let mut tower = ConsequenceTower::new(&p);
        for n in 1..=5 {
            let cb = tower.level(n);
            for m in multilinear_basis(&sig(), n) {
                let nf = nov.normal_form(&Polynomial::from_monomial(m.clone()), 0);
                assert!(nf.iter().all(|(w, _)| is_basis_n(w)));
                let diff = &Polynomial::from_monomial(m.clone()) - &nf;
                assert!(cb.contains(&diff).unwrap(), "n={n} {:?} -> {:?}", m, nf);
            }
        }
    }
}
