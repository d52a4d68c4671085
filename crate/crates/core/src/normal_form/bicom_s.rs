use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use super::{add_word, bilinear, degree_three_table, is_basis_word_b, table_product, BasisWord, Shape, WordPoly};
use crate::expansion::normal_form_basis;
use crate::presentation::Presentation;
use crate::rational::Rational;
use crate::term::{Monomial, Polynomial};

/// The free `BiCom_s` algebra on the basis ℬ.
#[derive(Clone, Debug)]
pub struct BiComS {
    table: BTreeMap<Monomial, Vec<(BasisWord, Rational)>>,
}

impl Default for BiComS {
    fn default() -> Self {
        Self::new()
    }
}

impl BiComS {
    pub fn new() -> Self {
        let p = Presentation::builtin("bicom_s").expect("builtin");
        let cb = normal_form_basis(&p, 3);
        BiComS { table: degree_three_table(&cb, is_basis_word_b) }
    }

    /// Product of two basis words. From total degree 4 every product is the
    /// left-normed word on the sorted generators.
    pub fn mult(&self, a: &BasisWord, b: &BasisWord) -> WordPoly {
        let mut out = WordPoly::new();
        let (p, q) = (a.degree(), b.degree());
        let mut gens = a.gens.clone();
        gens.extend_from_slice(&b.gens);
        match p + q {
            2 => add_word(&mut out, BasisWord::left(gens), &Rational::ONE),
            3 => {
                let shape = if p == 2 { Shape::LeftNormed } else { Shape::RightNormed };
                table_product(&self.table, shape, &gens, &Rational::ONE, &mut out);
            }
            _ => {
                gens.sort_unstable();
                add_word(&mut out, BasisWord::left(gens), &Rational::ONE);
            }
        }
        out
    }

    pub fn mult_poly(&self, a: &WordPoly, b: &WordPoly) -> WordPoly {
        bilinear(a, b, |u, v| self.mult(u, v))
    }

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

    pub fn normal_form(&self, q: &Polynomial, op: usize) -> Polynomial {
        super::word_poly_to_polynomial(&self.eval_poly(q), op)
    }
}

/// Normal form in ℬ of a polynomial over one operation (index 0).
pub fn nf_bicom_s(q: &Polynomial) -> Polynomial {
    BiComS::new().normal_form(q, 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expansion::ConsequenceTower;
    use crate::normal_form::is_basis_b;
    use crate::term::{multilinear_basis, parse_polynomial, Signature};

    fn sig() -> Signature {
        Signature::from_glyphs(&['>'])
    }

    #[test]
    fn identity_sixteen() {
        let b = BiComS::new();
        let q = parse_polynomial("((a>b)>c)>d - d>(c>(b>a))", &sig()).unwrap();
        assert!(b.eval_poly(&q).is_empty());
        let one = parse_polynomial("((x2>x1)>x3)>x4", &sig()).unwrap();
        let expect = parse_polynomial("((x1>x2)>x3)>x4", &sig()).unwrap();
        assert_eq!(b.normal_form(&one, 0), expect);
    }

    #[test]
    fn evaluation_agrees_with_linear_algebra() {
        let b = BiComS::new();
        let p = Presentation::builtin("bicom_s").unwrap();
        let mut tower = ConsequenceTower::new(&p);
        for n in 1..=5 {
            let cb = tower.level(n);
            for m in multilinear_basis(&sig(), n) {
                let nf = b.normal_form(&Polynomial::from_monomial(m.clone()), 0);
                assert!(nf.iter().all(|(w, _)| is_basis_b(w)));
                let diff = &Polynomial::from_monomial(m.clone()) - &nf;
                assert!(cb.contains(&diff).unwrap(), "n={n} {:?} -> {:?}", m, nf);
            }
        }
    }
}
