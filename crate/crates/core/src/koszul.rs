//! Koszul duals of quadratic presentations through the Jacobi identity of
//! the tensor bracket.
//!
//! For algebras `A` (dual signature, variables `y`) and `B` (primal
//! signature, variables `x`) the bracket on `A ⊗ B` is
//!
//! ```text
//! [y_a⊗x_a, y_b⊗x_b] = Σ_∘ s₁ (y_a∘y_b)⊗(x_a∘x_b) + s₂ (y_b∘y_a)⊗(x_b∘x_a)
//! ```
//!
//! with `(s₁, s₂) = (1, -1)`. Writing the Jacobiator as `Σ_β L_β ⊗ β` over
//! the normal forms `β` of the primal presentation, the dual relations are
//! the span of the `L_β`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::expansion::{normal_form_basis, ComponentBasis};
use crate::linalg::{rank, RowReducer, SparseMatrix, SparseVec};
use crate::presentation::Presentation;
use crate::rational::Rational;
use crate::term::{multilinear_basis, Monomial, Polynomial, Signature};

/// Signs attached to the two argument orders of each dual basis element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualPairingBasis {
    pub same_order: Rational,
    pub swapped_order: Rational,
}

impl Default for DualPairingBasis {
    fn default() -> Self {
        DualPairingBasis { same_order: Rational::ONE, swapped_order: Rational::from_integer(-1) }
    }
}

impl DualPairingBasis {
    /// Every sign negated.
    pub fn flipped(&self) -> Self {
        DualPairingBasis { same_order: -&self.same_order, swapped_order: -&self.swapped_order }
    }

    /// `(y_i∘y_j)⊗(x_i∘x_j)` paired with `(s₁, s₂)` for each operation:
    /// `2·ops` elements as `(op, swapped, sign)`.
    pub fn elements(&self, ops: usize) -> Vec<(usize, bool, Rational)> {
        (0..ops)
            .flat_map(|op| [(op, false, self.same_order.clone()), (op, true, self.swapped_order.clone())])
            .collect()
    }
}

/// Formal sum of `left ⊗ right`, left over the dual signature and right over
/// the primal one.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TensorElement {
    terms: BTreeMap<(Monomial, Monomial), Rational>,
}

impl TensorElement {
    pub fn zero() -> Self {
        Self::default()
    }

    /// `y_i ⊗ x_i`.
    pub fn generator(i: u32) -> Self {
        let mut t = Self::zero();
        t.add((Monomial::leaf(i), Monomial::leaf(i)), &Rational::ONE);
        t
    }

    pub fn add(&mut self, key: (Monomial, Monomial), c: &Rational) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(key.clone()).or_insert(Rational::ZERO);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn add_scaled(&mut self, other: &TensorElement, c: &Rational) {
        for (k, v) in &other.terms {
            self.add(k.clone(), &(v * c));
        }
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(Monomial, Monomial), &Rational)> {
        self.terms.iter()
    }
}

/// The skew-symmetric bracket, extended bilinearly.
pub fn bracket(u: &TensorElement, v: &TensorElement, ops: usize, basis: &DualPairingBasis) -> TensorElement {
    let mut out = TensorElement::zero();
    let elements = basis.elements(ops);
    for ((ya, xa), ca) in u.iter() {
        for ((yb, xb), cb) in v.iter() {
            let c = ca * cb;
            for (op, swapped, sign) in &elements {
                let key = if *swapped {
                    (Monomial::product(*op, yb, ya), Monomial::product(*op, xb, xa))
                } else {
                    (Monomial::product(*op, ya, yb), Monomial::product(*op, xa, xb))
                };
                out.add(key, &(&c * sign));
            }
        }
    }
    out
}

/// `[[1,2],3] + [[2,3],1] + [[3,1],2]` over a signature with `ops`
/// operations.
pub fn jacobiator_for(ops: usize, basis: &DualPairingBasis) -> TensorElement {
    let g = TensorElement::generator;
    let mut j = TensorElement::zero();
    for (a, b, c) in [(1, 2, 3), (2, 3, 1), (3, 1, 2)] {
        let inner = bracket(&g(a), &g(b), ops, basis);
        j.add_scaled(&bracket(&inner, &g(c), ops, basis), &Rational::ONE);
    }
    j
}

fn require_quadratic(p: &Presentation) -> Result<()> {
    if p.is_quadratic() {
        Ok(())
    } else {
        Err(Error::NonQuadratic)
    }
}

pub fn jacobiator(p: &Presentation) -> Result<TensorElement> {
    require_quadratic(p)?;
    Ok(jacobiator_for(p.signature().len(), &DualPairingBasis::default()))
}

/// The coefficients `L_k` of `J = Σ_k L_k ⊗ e_k`, where each right factor is
/// expanded by `coords` into independent coordinates `e_k`.
pub fn dual_coefficients<K: Ord + Clone>(
    j: &TensorElement,
    mut coords: impl FnMut(&Monomial) -> Vec<(K, Rational)>,
) -> BTreeMap<K, Polynomial> {
    let mut out: BTreeMap<K, Polynomial> = BTreeMap::new();
    let mut cache: BTreeMap<Monomial, Vec<(K, Rational)>> = BTreeMap::new();
    for ((y, x), c) in j.iter() {
        let cs = cache.entry(x.clone()).or_insert_with(|| coords(x));
        for (k, v) in cs.iter() {
            out.entry(k.clone()).or_default().add_term(y.clone(), &(c * v));
        }
    }
    out.retain(|_, p| !p.is_zero());
    out
}

/// Row-reduced generating set of the span of `polys` (multilinear, degree
/// `n`), greatest leading monomial first.
pub fn row_reduced_span(sig: &Signature, n: usize, polys: &[Polynomial]) -> Vec<Polynomial> {
    let mut columns = multilinear_basis(sig, n);
    columns.reverse();
    let index: BTreeMap<&Monomial, usize> = columns.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let mut reducer = RowReducer::new(columns.len());
    for p in polys {
        let row: SparseVec = p.iter().map(|(m, c)| (index[m], c.clone())).collect();
        reducer.insert(row);
    }
    let (rows, _) = reducer.finish();
    rows.iter()
        .map(|r| Polynomial::from_terms(r.iter().map(|(c, x)| (columns[*c].clone(), x.clone()))))
        .collect()
}

/// Dual presentation whose right factors are reduced by an arbitrary
/// coordinate map.
pub fn dual_presentation_via<K: Ord + Clone>(
    p: &Presentation,
    basis: &DualPairingBasis,
    coords: impl FnMut(&Monomial) -> Vec<(K, Rational)>,
) -> Result<Presentation> {
    require_quadratic(p)?;
    let sig = p.signature().clone();
    let j = jacobiator_for(sig.len(), basis);
    let ls: Vec<Polynomial> = dual_coefficients(&j, coords).into_values().collect();
    let relations = row_reduced_span(&sig, 3, &ls);
    Presentation::new(format!("{}^!", p.name()), sig, relations)
}

/// Koszul dual with right factors reduced to the normal forms of `p` at
/// arity 3. Operations keep their glyphs.
pub fn dual_presentation(p: &Presentation) -> Result<Presentation> {
    dual_presentation_with(p, &DualPairingBasis::default())
}

pub fn dual_presentation_with(p: &Presentation, basis: &DualPairingBasis) -> Result<Presentation> {
    require_quadratic(p)?;
    let cb = normal_form_basis(p, 3);
    dual_presentation_via(p, basis, |x| normal_form_coords(&cb, x))
}

fn normal_form_coords(cb: &ComponentBasis, x: &Monomial) -> Vec<(usize, Rational)> {
    let col = cb.column_of(x).expect("multilinear right factor");
    cb.reduce_vector(&[(col, Rational::ONE)])
}

/// Operation map identifying a one-operation presentation with its
/// opposite, for use with `relation_spaces_equivalent`.
pub fn opposite_map(ops: usize) -> Vec<(usize, bool)> {
    (0..ops).map(|o| (o, true)).collect()
}

pub fn identity_map(ops: usize) -> Vec<(usize, bool)> {
    (0..ops).map(|o| (o, false)).collect()
}

/// Whether the normal-form images of `monos` in arity `n` are linearly
/// independent.
pub fn check_independence(p: &Presentation, monos: &[Monomial], n: usize) -> Result<bool> {
    for m in monos {
        if m.degree() != n {
            return Err(Error::ArityMismatch { expected: n, found: m.degree() });
        }
        if !m.is_multilinear() {
            return Err(Error::NotMultilinear);
        }
    }
    let cb = normal_form_basis(p, n);
    independent_in(&cb, monos)
}

pub fn independent_in(cb: &ComponentBasis, monos: &[Monomial]) -> Result<bool> {
    let mut rows = Vec::with_capacity(monos.len());
    for m in monos {
        rows.push(cb.reduce_vector(&cb.vector_of(&Polynomial::from_monomial(m.clone()))?));
    }
    Ok(rank(&SparseMatrix::from_rows(cb.columns().len(), rows)) == monos.len())
}
