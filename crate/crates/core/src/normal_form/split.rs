//! The free dual `DerNov` algebra as `𝒩 ⊕ ℬ`.
//!
//! Mixed products are removed with
//!
//! ```text
//! u≺(v≻w) = 0
//! (b≺c)≻a = -a≺(b≺c)
//! a≻(b≺c) = a≺(b≺c)
//! (a≻b)≺x = (a≻x)≻b - x≻(a≻b)
//! (a≻b)≺(c≺d) = 0
//! ```
//!
//! so the evaluation map into the pure parts is an algebra homomorphism
//! onto the sum of a `Nov_s` algebra (`≺`) and a `BiCom_s` algebra (`≻`).

use alloc::collections::BTreeMap;

use super::{add_word, BasisWord, BiComS, NovS, WordPoly};
use crate::rational::Rational;
use crate::term::{Monomial, Polynomial};

pub const PREC: usize = 0;
pub const SUCC: usize = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Part {
    /// Pure `≺` words; generators are kept here.
    Prec,
    Succ,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SplitWord {
    pub part: Part,
    pub word: BasisWord,
}

pub type SplitPoly = BTreeMap<SplitWord, Rational>;

#[derive(Clone, Copy, PartialEq, Eq)]
enum Kind {
    Gen,
    Prec,
    Succ,
}

fn kind(w: &SplitWord) -> Kind {
    match (w.word.is_generator(), w.part) {
        (true, _) => Kind::Gen,
        (false, Part::Prec) => Kind::Prec,
        (false, Part::Succ) => Kind::Succ,
    }
}

fn tag(out: &mut SplitPoly, part: Part, p: WordPoly, c: &Rational) {
    for (w, x) in p {
        let key = SplitWord { part, word: w };
        let e = out.entry(key.clone()).or_insert(Rational::ZERO);
        *e += &(&x * c);
        if e.is_zero() {
            out.remove(&key);
        }
    }
}

/// Evaluation into `𝒩 ⊕ ℬ` for terms over `{≺, ≻}` (operation indices 0
/// and 1).
#[derive(Clone, Debug, Default)]
pub struct DerNovDual {
    nov: NovS,
    bicom: BiComS,
}

impl DerNovDual {
    pub fn new() -> Self {
        DerNovDual { nov: NovS::new(), bicom: BiComS::new() }
    }

    pub fn nov(&self) -> &NovS {
        &self.nov
    }

    pub fn bicom(&self) -> &BiComS {
        &self.bicom
    }

    pub fn mult(&self, op: usize, a: &SplitWord, b: &SplitWord) -> SplitPoly {
        let mut out = SplitPoly::new();
        let one = Rational::ONE;
        let minus = Rational::from_integer(-1);
        let (ka, kb) = (kind(a), kind(b));
        let (u, v) = (&a.word, &b.word);
        if op == PREC {
            match (ka, kb) {
                (_, Kind::Succ) | (Kind::Succ, Kind::Prec) => {}
                (Kind::Succ, Kind::Gen) => {
                    let (s1, s2) = u.split().expect("product word");
                    let first = self.bicom.mult_poly(&self.bicom.mult(&s1, v), &single(s2));
                    tag(&mut out, Part::Succ, first, &one);
                    tag(&mut out, Part::Succ, self.bicom.mult(v, u), &minus);
                }
                _ => tag(&mut out, Part::Prec, self.nov.mult(u, v), &one),
            }
        } else {
            match (ka, kb) {
                (Kind::Prec, Kind::Succ) | (Kind::Succ, Kind::Prec) => {}
                (Kind::Prec, _) => tag(&mut out, Part::Prec, self.nov.mult(v, u), &minus),
                (Kind::Gen, Kind::Prec) => tag(&mut out, Part::Prec, self.nov.mult(u, v), &one),
                _ => tag(&mut out, Part::Succ, self.bicom.mult(u, v), &one),
            }
        }
        out
    }

    pub fn mult_poly(&self, op: usize, a: &SplitPoly, b: &SplitPoly) -> SplitPoly {
        let mut out = SplitPoly::new();
        for (u, cu) in a {
            for (v, cv) in b {
                let c = cu * cv;
                for (w, x) in self.mult(op, u, v) {
                    let e = out.entry(w.clone()).or_insert(Rational::ZERO);
                    *e += &(&x * &c);
                    if e.is_zero() {
                        out.remove(&w);
                    }
                }
            }
        }
        out
    }

    pub fn eval(&self, m: &Monomial) -> SplitPoly {
        match m.split() {
            None => {
                let mut out = SplitPoly::new();
                out.insert(SplitWord { part: Part::Prec, word: BasisWord::generator(m.as_leaf().unwrap()) }, Rational::ONE);
                out
            }
            Some((op, l, r)) => {
                assert!(op <= SUCC, "terms over two operations expected");
                self.mult_poly(op, &self.eval(&l), &self.eval(&r))
            }
        }
    }

    /// `(pure ≺ part, pure ≻ part)`, each written in its basis.
    pub fn split(&self, q: &Polynomial) -> (Polynomial, Polynomial) {
        let mut prec = Polynomial::zero();
        let mut succ = Polynomial::zero();
        for (m, c) in q.iter() {
            for (w, x) in self.eval(m) {
                let x = &x * c;
                match w.part {
                    Part::Prec => prec.add_term(w.word.to_monomial(PREC), &x),
                    Part::Succ => succ.add_term(w.word.to_monomial(SUCC), &x),
                }
            }
        }
        (prec, succ)
    }
}

fn single(w: BasisWord) -> WordPoly {
    let mut p = WordPoly::new();
    add_word(&mut p, w, &Rational::ONE);
    p
}

/// Splits a polynomial over `{≺, ≻}` into its pure `≺` and `≻` parts in
/// the bases 𝒩 and ℬ.
pub fn split_dernov_dual(q: &Polynomial) -> (Polynomial, Polynomial) {
    DerNovDual::new().split(q)
}
