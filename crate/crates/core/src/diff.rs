//! Commutative differential polynomials with two commuting derivations and
//! the embeddings of `DerNov` and Novikov algebras into them.
//!
//! `x_i^(n,m)` stands for `dⁿ ∂ᵐ x_i`. The embeddings are
//!
//! ```text
//! τ(a≻b) = ∂(τa)·d(τb)      τ(a≺b) = τa·d(∂(τb))      τ_nov(a∘b) = τa·d(τb)
//! ```

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt::{self, Write as _};

use crate::linalg::{rank, SparseMatrix};
use crate::rational::Rational;
use crate::term::{multilinear_basis, Monomial, Polynomial, Signature};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DiffVariable {
    pub generator: u32,
    pub d_order: u32,
    pub pd_order: u32,
}

impl DiffVariable {
    pub fn new(generator: u32, d_order: u32, pd_order: u32) -> Self {
        DiffVariable { generator, d_order, pd_order }
    }
}

impl fmt::Display for DiffVariable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x{}^({},{})", self.generator, self.d_order, self.pd_order)
    }
}

/// Sorted multiset of variables.
pub type DiffMonomial = Vec<DiffVariable>;

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct DiffPolynomial {
    terms: BTreeMap<DiffMonomial, Rational>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Derivation {
    D,
    Partial,
}

impl DiffPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        let mut p = Self::zero();
        p.add_term(Vec::new(), &Rational::ONE);
        p
    }

    pub fn variable(v: DiffVariable) -> Self {
        let mut p = Self::zero();
        p.add_term(alloc::vec![v], &Rational::ONE);
        p
    }

    /// `x_i^(0,0)`.
    pub fn generator(i: u32) -> Self {
        Self::variable(DiffVariable::new(i, 0, 0))
    }

    pub fn add_term(&mut self, mut m: DiffMonomial, c: &Rational) {
        if c.is_zero() {
            return;
        }
        m.sort_unstable();
        let e = self.terms.entry(m.clone()).or_insert(Rational::ZERO);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn add_scaled(&mut self, other: &DiffPolynomial, c: &Rational) {
        for (m, x) in &other.terms {
            self.add_term(m.clone(), &(x * c));
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&DiffMonomial, &Rational)> {
        self.terms.iter()
    }

    pub fn mul(&self, other: &DiffPolynomial) -> DiffPolynomial {
        let mut out = DiffPolynomial::zero();
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                let mut m = a.clone();
                m.extend_from_slice(b);
                out.add_term(m, &(x * y));
            }
        }
        out
    }

    fn derive(&self, which: Derivation) -> DiffPolynomial {
        let mut out = DiffPolynomial::zero();
        for (m, c) in &self.terms {
            for i in 0..m.len() {
                let mut t = m.clone();
                match which {
                    Derivation::D => t[i].d_order += 1,
                    Derivation::Partial => t[i].pd_order += 1,
                }
                out.add_term(t, c);
            }
        }
        out
    }

    /// The derivation `d`.
    pub fn deriv_d(&self) -> DiffPolynomial {
        self.derive(Derivation::D)
    }

    /// The derivation `∂`.
    pub fn deriv_pd(&self) -> DiffPolynomial {
        self.derive(Derivation::Partial)
    }
}

impl core::ops::Add<&DiffPolynomial> for &DiffPolynomial {
    type Output = DiffPolynomial;
    fn add(self, rhs: &DiffPolynomial) -> DiffPolynomial {
        let mut p = self.clone();
        p.add_scaled(rhs, &Rational::ONE);
        p
    }
}

impl core::ops::Sub<&DiffPolynomial> for &DiffPolynomial {
    type Output = DiffPolynomial;
    fn sub(self, rhs: &DiffPolynomial) -> DiffPolynomial {
        let mut p = self.clone();
        p.add_scaled(rhs, &Rational::from_integer(-1));
        p
    }
}

impl fmt::Display for DiffPolynomial {
    /// Terms in increasing order of their sorted variable lists, variables
    /// joined by `*`, coefficients other than ±1 as a prefix.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            match (i, c.is_negative()) {
                (0, true) => f.write_char('-')?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let a = c.abs();
            if m.is_empty() {
                write!(f, "{a}")?;
                continue;
            }
            if !a.is_one() {
                write!(f, "{a} ")?;
            }
            for (j, v) in m.iter().enumerate() {
                if j > 0 {
                    f.write_char('*')?;
                }
                write!(f, "{v}")?;
            }
        }
        Ok(())
    }
}

/// Which embedding to apply to a term.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Embedding {
    /// `≺` (index 0) and `≻` (index 1).
    Tau,
    /// A single operation.
    TauNov,
}

/// Image of a monomial over `{≺, ≻}`.
pub fn tau(m: &Monomial) -> DiffPolynomial {
    match m.split() {
        None => DiffPolynomial::generator(m.as_leaf().unwrap()),
        Some((op, l, r)) => {
            let (a, b) = (tau(&l), tau(&r));
            match op {
                0 => a.mul(&b.deriv_pd().deriv_d()),
                1 => a.deriv_pd().mul(&b.deriv_d()),
                _ => panic!("tau is defined on two operations"),
            }
        }
    }
}

/// Image of a monomial over one operation under `a∘b ↦ a·d(b)`.
pub fn tau_nov(m: &Monomial) -> DiffPolynomial {
    match m.split() {
        None => DiffPolynomial::generator(m.as_leaf().unwrap()),
        Some((_, l, r)) => tau_nov(&l).mul(&tau_nov(&r).deriv_d()),
    }
}

pub fn apply(map: Embedding, q: &Polynomial) -> DiffPolynomial {
    let f = match map {
        Embedding::Tau => tau,
        Embedding::TauNov => tau_nov,
    };
    let mut out = DiffPolynomial::zero();
    for (m, c) in q.iter() {
        out.add_scaled(&f(m), c);
    }
    out
}

/// Whether the relation maps to zero.
pub fn verify_identity_under_tau(rel: &Polynomial, map: Embedding) -> bool {
    apply(map, rel).is_zero()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightProfile {
    /// `(Σ d-orders, Σ ∂-orders)` per monomial, in term order.
    pub weights: Vec<(u64, u64)>,
    /// All monomials share one weight pair.
    pub homogeneous: bool,
}

impl WeightProfile {
    /// The shared weight pair of a homogeneous nonzero polynomial.
    pub fn common(&self) -> Option<(u64, u64)> {
        if self.homogeneous {
            self.weights.first().copied()
        } else {
            None
        }
    }
}

pub fn weight_profile(p: &DiffPolynomial) -> WeightProfile {
    let weights: Vec<(u64, u64)> = p
        .iter()
        .map(|(m, _)| m.iter().fold((0, 0), |(a, b), v| (a + v.d_order as u64, b + v.pd_order as u64)))
        .collect();
    let homogeneous = weights.windows(2).all(|w| w[0] == w[1]);
    WeightProfile { weights, homogeneous }
}

/// Rank of the τ-images of all multilinear degree-`n` monomials over
/// `{≺, ≻}`.
pub fn tau_image_rank(n: usize) -> usize {
    let mut cols: BTreeMap<DiffMonomial, usize> = BTreeMap::new();
    let mut rows = Vec::new();
    for m in multilinear_basis(&Signature::prec_succ(), n) {
        let img = tau(&m);
        let mut row: Vec<(usize, Rational)> = Vec::with_capacity(img.len());
        for (k, c) in img.iter() {
            let next = cols.len();
            row.push((*cols.entry(k.clone()).or_insert(next), c.clone()));
        }
        rows.push(row);
    }
    rank(&SparseMatrix::from_rows(cols.len(), rows))
}

/// τ-coordinates of a monomial, for reducing right tensor factors.
pub fn tau_coordinates(m: &Monomial) -> Vec<(DiffMonomial, Rational)> {
    tau(m).iter().map(|(k, c)| (k.clone(), c.clone())).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::Presentation;
    use crate::term::{parse_monomial, parse_polynomial};
    use alloc::string::ToString;

    fn v(i: u32, n: u32, m: u32) -> DiffPolynomial {
        DiffPolynomial::variable(DiffVariable::new(i, n, m))
    }

    #[test]
    fn derivations() {
        let x1 = DiffPolynomial::generator(1);
        let x2 = DiffPolynomial::generator(2);
        assert_eq!(x1.deriv_d(), v(1, 1, 0));
        assert_eq!(x1.mul(&x2).deriv_d(), &v(1, 1, 0).mul(&x2) + &x1.mul(&v(2, 1, 0)));
        assert_eq!(x1.deriv_pd().deriv_d(), x1.deriv_d().deriv_pd());
        assert_eq!(x1.deriv_pd().deriv_d(), v(1, 1, 1));
        assert!(DiffPolynomial::one().deriv_d().is_zero());
    }

    #[test]
    fn tau_examples() {
        let s = Signature::prec_succ();
        let m = |t: &str| parse_monomial(t, &s).unwrap();
        assert_eq!(tau(&m("x1>x2")), v(1, 0, 1).mul(&v(2, 1, 0)));
        assert_eq!(tau(&m("x1<x2")), v(1, 0, 0).mul(&v(2, 1, 1)));
        assert_eq!(tau(&m("x1")), v(1, 0, 0));
        assert_eq!(tau(&m("x1>x2")).to_string(), "x1^(0,1)*x2^(1,0)");
    }

    #[test]
    fn identities_under_embeddings() {
        let dn = Presentation::builtin("dernov").unwrap();
        assert!(dn.relations().iter().all(|r| verify_identity_under_tau(r, Embedding::Tau)));
        let nov = Presentation::builtin("novikov").unwrap();
        assert!(nov.relations().iter().all(|r| verify_identity_under_tau(r, Embedding::TauNov)));
        let s = Signature::prec_succ();
        let five = parse_polynomial("a<(b<c) + (b<c)>a", &s).unwrap();
        assert!(!verify_identity_under_tau(&five, Embedding::Tau));
    }

    #[test]
    fn weights() {
        let s = Signature::prec_succ();
        let w = weight_profile(&tau(&parse_monomial("x2<x1", &s).unwrap()));
        assert_eq!(w.common(), Some((1, 1)));
        let w = weight_profile(&tau(&parse_monomial("(x1>x3)<(x2>x4)", &s).unwrap()));
        assert_eq!(w.common(), Some((3, 3)));
        assert_eq!(weight_profile(&DiffPolynomial::generator(1)).common(), Some((0, 0)));
        let mixed = &v(1, 1, 0) + &v(1, 0, 0);
        assert!(!weight_profile(&mixed).homogeneous);
    }

    #[test]
    fn image_ranks() {
        assert_eq!(tau_image_rank(2), 4);
        assert_eq!(tau_image_rank(3), 36);
    }
}
