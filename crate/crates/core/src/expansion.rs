//! Multilinear components of T-ideals.
//!
//! The degree-`n` multilinear part of the ideal generated by a presentation
//! is built degree by degree. The space at degree `k` is spanned by
//!
//! * the relations of degree `k` under all relabelings of their variables;
//! * the images of the degree-`k-1` space under `v ↦ v∘x_k`, `v ↦ x_k∘v`
//!   and `x_i ↦ x_i∘x_k`, `x_i ↦ x_k∘x_i`, for every operation `∘`,
//!   followed by the transpositions `(j k)`.
//!
//! The degree-`k-1` space is invariant under the symmetric group on
//! `k-1` letters and the four kinds of images are equivariant, so the
//! transpositions are enough to reach all relabelings at degree `k`.

use alloc::vec;
use alloc::vec::Vec;

use hashbrown::{HashMap, HashSet};

use crate::error::{Error, Result};
use crate::linalg::{RowReducer, SparseMatrix, SparseVec};
use crate::presentation::Presentation;
use crate::rational::Rational;
use crate::term::{multilinear_basis, permutations, Monomial, Node, Polynomial, Signature};

/// Largest arity computed without an explicit override.
pub const fn default_arity_cap(ops: usize) -> usize {
    match ops {
        0 | 1 => 6,
        2 => 5,
        _ => 4,
    }
}

/// Column labels shared by every matrix over the same multilinear basis.
pub fn column_labels(sig: &Signature, n: usize) -> Vec<u64> {
    let tag = ((n as u64) << 48) | ((sig.len() as u64) << 40);
    (0..multilinear_basis_len(sig, n)).map(|i| tag | i as u64).collect()
}

fn multilinear_basis_len(sig: &Signature, n: usize) -> usize {
    crate::term::multilinear_count(sig.len(), n) as usize
}

/// Reduced consequence space at one arity, with its normal forms.
///
/// Columns are the multilinear monomials in decreasing monomial order, so
/// pivots are greatest monomials and the normal forms are the smaller
/// monomials left over.
#[derive(Clone, Debug)]
pub struct ComponentBasis {
    signature: Signature,
    arity: usize,
    columns: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
    rows: Vec<SparseVec>,
    pivots: Vec<usize>,
    pivot_row: Vec<Option<u32>>,
    normal_forms: Vec<usize>,
    /// Sparse independent rows spanning the same space, as generated.
    generators: Vec<SparseVec>,
}

impl ComponentBasis {
    fn new(
        signature: Signature,
        arity: usize,
        columns: Vec<Monomial>,
        reducer: RowReducer,
        generators: Vec<SparseVec>,
    ) -> Self {
        let (rows, pivots) = reducer.finish();
        let mut pivot_row = vec![None; columns.len()];
        for (r, &c) in pivots.iter().enumerate() {
            pivot_row[c] = Some(r as u32);
        }
        let normal_forms = (0..columns.len()).filter(|&c| pivot_row[c].is_none()).collect();
        let index = columns.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
        ComponentBasis { signature, arity, columns, index, rows, pivots, pivot_row, normal_forms, generators }
    }

    pub fn signature(&self) -> &Signature {
        &self.signature
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    /// Number of normal forms, the dimension of the free algebra's component.
    pub fn dim(&self) -> usize {
        self.normal_forms.len()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// All multilinear monomials, greatest first.
    pub fn columns(&self) -> &[Monomial] {
        &self.columns
    }

    pub fn column_of(&self, m: &Monomial) -> Option<usize> {
        self.index.get(m).copied()
    }

    /// Normal-form monomials, greatest first.
    pub fn normal_forms(&self) -> impl Iterator<Item = &Monomial> + '_ {
        self.normal_forms.iter().map(|&c| &self.columns[c])
    }

    pub fn normal_form_columns(&self) -> &[usize] {
        &self.normal_forms
    }

    pub fn is_normal_form(&self, m: &Monomial) -> bool {
        self.column_of(m).is_some_and(|c| self.pivot_row[c].is_none())
    }

    /// Pivot monomials, greatest first.
    pub fn pivots(&self) -> impl Iterator<Item = &Monomial> + '_ {
        self.pivots.iter().map(|&c| &self.columns[c])
    }

    /// The consequence space in reduced row echelon form.
    pub fn consequence_matrix(&self) -> SparseMatrix {
        SparseMatrix::from_rows(self.columns.len(), self.rows.clone())
            .with_labels(column_labels(&self.signature, self.arity))
    }

    /// Column vector of a multilinear homogeneous polynomial of this arity.
    pub fn vector_of(&self, q: &Polynomial) -> Result<SparseVec> {
        let mut v: SparseVec = Vec::with_capacity(q.len());
        for (m, c) in q.iter() {
            if m.degree() != self.arity {
                return Err(Error::ArityMismatch { expected: self.arity, found: m.degree() });
            }
            let col = self.column_of(m).ok_or(Error::NotMultilinear)?;
            v.push((col, c.clone()));
        }
        v.sort_unstable_by_key(|e| e.0);
        Ok(v)
    }

    pub fn polynomial_of(&self, v: &[(usize, Rational)]) -> Polynomial {
        Polynomial::from_terms(v.iter().map(|(c, x)| (self.columns[*c].clone(), x.clone())))
    }

    /// Reduces a column vector to normal-form coordinates.
    pub fn reduce_vector(&self, v: &[(usize, Rational)]) -> SparseVec {
        let mut acc: HashMap<usize, Rational> = HashMap::new();
        let mut add = |c: usize, x: Rational| {
            let e = acc.entry(c).or_insert(Rational::ZERO);
            *e += &x;
        };
        for (c, x) in v {
            match self.pivot_row[*c] {
                None => add(*c, x.clone()),
                Some(r) => {
                    for (c2, y) in &self.rows[r as usize][1..] {
                        add(*c2, -(x * y));
                    }
                }
            }
        }
        let mut out: SparseVec = acc.into_iter().filter(|(_, x)| !x.is_zero()).collect();
        out.sort_unstable_by_key(|e| e.0);
        out
    }

    /// Canonical representative of `q` supported on normal forms.
    pub fn reduce(&self, q: &Polynomial) -> Result<Polynomial> {
        let v = self.vector_of(q)?;
        Ok(self.polynomial_of(&self.reduce_vector(&v)))
    }

    /// The normal-form expression of one monomial.
    pub fn reduce_monomial(&self, m: &Monomial) -> Result<Polynomial> {
        self.reduce(&Polynomial::from_monomial(m.clone()))
    }

    /// Reduction rule of a pivot monomial, `None` for normal forms.
    pub fn rewrite_rule(&self, m: &Monomial) -> Option<Polynomial> {
        let r = self.pivot_row[self.column_of(m)?]?;
        let tail = &self.rows[r as usize][1..];
        Some(self.polynomial_of(tail).scale(&Rational::from_integer(-1)))
    }

    /// Whether `q` lies in the consequence space.
    pub fn contains(&self, q: &Polynomial) -> Result<bool> {
        Ok(self.reduce_vector(&self.vector_of(q)?).is_empty())
    }
}

/// Progress report: arity finished, rank, number of columns.
pub type ProgressFn<'a> = &'a mut dyn FnMut(usize, usize, usize);

/// Component bases at arities `1..=n`, built incrementally.
#[derive(Clone, Debug)]
pub struct ConsequenceTower {
    presentation: Presentation,
    levels: Vec<ComponentBasis>,
}

impl ConsequenceTower {
    pub fn new(presentation: &Presentation) -> Self {
        ConsequenceTower { presentation: presentation.clone(), levels: Vec::new() }
    }

    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    pub fn built_to(&self) -> usize {
        self.levels.len()
    }

    /// Builds every arity up to `n`.
    pub fn extend_to(&mut self, n: usize) {
        self.extend_with_progress(n, &mut |_, _, _| {});
    }

    pub fn extend_with_progress(&mut self, n: usize, progress: ProgressFn<'_>) {
        while self.levels.len() < n {
            let k = self.levels.len() + 1;
            let level = self.build_level(k);
            progress(k, level.rank(), level.columns.len());
            self.levels.push(level);
        }
    }

    /// Component basis at arity `n` (building it if needed).
    pub fn level(&mut self, n: usize) -> &ComponentBasis {
        assert!(n >= 1, "arity must be positive");
        self.extend_to(n);
        &self.levels[n - 1]
    }

    pub fn into_level(mut self, n: usize) -> ComponentBasis {
        self.extend_to(n);
        self.levels.swap_remove(n - 1)
    }

    fn build_level(&self, k: usize) -> ComponentBasis {
        let sig = self.presentation.signature().clone();
        let mut columns = multilinear_basis(&sig, k);
        columns.reverse();
        let index: HashMap<Monomial, usize> = columns.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
        let mut reducer = RowReducer::new(columns.len());
        let mut seen: HashSet<SparseVec> = HashSet::new();
        let mut generators: Vec<SparseVec> = Vec::new();
        let mut push = |poly: &mut Vec<(Monomial, Rational)>, reducer: &mut RowReducer| {
            if reducer.rank() == reducer.cols() {
                return;
            }
            let mut v: SparseVec = Vec::with_capacity(poly.len());
            for (m, c) in poly.drain(..) {
                v.push((index[&m], c));
            }
            let Some(v) = canonical_row(v) else { return };
            if seen.insert(v.clone()) && reducer.insert(v.clone()) {
                generators.push(v);
            }
        };

        let mut buf = Vec::new();
        for r in self.presentation.relations() {
            if r.homogeneous_degree() != Some(k) {
                continue;
            }
            for perm in permutations(k) {
                buf.extend(r.iter().map(|(m, c)| (m.relabel(|v| perm[v as usize - 1]), c.clone())));
                push(&mut buf, &mut reducer);
            }
        }

        if k >= 2 {
            if let Some(prev) = self.levels.get(k - 2) {
                let fresh = Monomial::leaf(k as u32);
                let fresh_nodes = [Node::leaf(k as u32)];
                let ops = sig.len();
                for row in &prev.generators {
                    let terms: Vec<(&Monomial, &Rational)> = row.iter().map(|(c, x)| (&prev.columns[*c], x)).collect();
                    let mut images: Vec<Vec<(Monomial, Rational)>> = Vec::new();
                    for op in 0..ops {
                        images.push(terms.iter().map(|(m, c)| (Monomial::product(op, m, &fresh), (*c).clone())).collect());
                        images.push(terms.iter().map(|(m, c)| (Monomial::product(op, &fresh, m), (*c).clone())).collect());
                        for i in 1..k as u32 {
                            let left = [Node::op(op), Node::leaf(i), fresh_nodes[0]];
                            let right = [Node::op(op), fresh_nodes[0], Node::leaf(i)];
                            images.push(terms.iter().map(|(m, c)| (m.replace_leaf(i, &left), (*c).clone())).collect());
                            images.push(terms.iter().map(|(m, c)| (m.replace_leaf(i, &right), (*c).clone())).collect());
                        }
                    }
                    for img in &images {
                        for j in 1..=k as u32 {
                            let kk = k as u32;
                            buf.extend(img.iter().map(|(m, c)| {
                                let m = if j == kk {
                                    m.clone()
                                } else {
                                    m.relabel(|v| if v == j { kk } else if v == kk { j } else { v })
                                };
                                (m, c.clone())
                            }));
                            push(&mut buf, &mut reducer);
                        }
                    }
                }
            }
        }
        ComponentBasis::new(sig, k, columns, reducer, generators)
    }
}

/// Sorted, merged, scaled so the first coefficient is one.
fn canonical_row(mut v: SparseVec) -> Option<SparseVec> {
    v.sort_unstable_by_key(|e| e.0);
    let mut out: SparseVec = Vec::with_capacity(v.len());
    for (c, x) in v {
        match out.last_mut() {
            Some((lc, lx)) if *lc == c => *lx += &x,
            _ => out.push((c, x)),
        }
    }
    out.retain(|(_, x)| !x.is_zero());
    let inv = out.first()?.1.recip();
    if !inv.is_one() {
        for (_, x) in &mut out {
            *x = &*x * &inv;
        }
    }
    Some(out)
}

/// Multilinear degree-`n` component of the ideal, in reduced row echelon
/// form over the columns of [`ComponentBasis::columns`].
pub fn consequence_space(p: &Presentation, n: usize) -> SparseMatrix {
    normal_form_basis(p, n).consequence_matrix()
}

pub fn normal_form_basis(p: &Presentation, n: usize) -> ComponentBasis {
    ConsequenceTower::new(p).into_level(n)
}

/// Dimension of the multilinear degree-`n` component of the free algebra.
pub fn component_dim(p: &Presentation, n: usize) -> usize {
    normal_form_basis(p, n).dim()
}

/// Dimensions at arities `1..=n`.
pub fn component_dims(p: &Presentation, n: usize) -> Vec<usize> {
    let mut t = ConsequenceTower::new(p);
    t.extend_to(n);
    (1..=n).map(|k| t.level(k).dim()).collect()
}

pub fn reduce(q: &Polynomial, cb: &ComponentBasis) -> Result<Polynomial> {
    cb.reduce(q)
}

/// Whether `p1`, with operations renamed by `op_map`, and `p2` generate the
/// same consequence spaces at every arity up to `max_arity`.
///
/// `op_map[i] = (j, reversed)` sends operation `i` of `p1` to operation `j`
/// of `p2`, swapping arguments when `reversed` is set.
pub fn relation_spaces_equivalent(
    p1: &Presentation,
    p2: &Presentation,
    op_map: &[(usize, bool)],
    max_arity: usize,
) -> Result<bool> {
    let l = p1.signature().len();
    let r = p2.signature().len();
    if l != r || op_map.len() != l {
        return Err(Error::SignatureMismatch { left: l, right: r });
    }
    let mut targets: Vec<usize> = op_map.iter().map(|e| e.0).collect();
    targets.sort_unstable();
    targets.dedup();
    if targets.len() != l || targets.iter().any(|&t| t >= r) {
        return Err(Error::SignatureMismatch { left: l, right: r });
    }
    let mapped = p1.map_operations(op_map, p2.signature())?;
    let mut t1 = ConsequenceTower::new(&mapped);
    let mut t2 = ConsequenceTower::new(p2);
    for n in 1..=max_arity {
        let a = t1.level(n).consequence_matrix();
        let b = t2.level(n).consequence_matrix();
        if !crate::linalg::subspace_equal(&a, &b)? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::term::{parse_monomial, parse_polynomial};

    fn builtin(name: &str) -> Presentation {
        Presentation::builtin(name).unwrap()
    }

    fn binom(n: u64, k: u64) -> u64 {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn novikov_dims() {
        let dims = component_dims(&builtin("novikov"), 4);
        let expect: Vec<usize> = (1..=4).map(|n| binom(2 * n - 2, n - 1) as usize).collect();
        assert_eq!(dims, expect);
        assert_eq!(consequence_space(&builtin("novikov"), 3).nrows(), 6);
    }

    #[test]
    fn bicommutative_dims() {
        let dims = component_dims(&builtin("bicommutative"), 5);
        assert_eq!(&dims[1..], &[2, 6, 14, 30]);
    }

    #[test]
    fn dernov_low_arity() {
        let dims = component_dims(&builtin("dernov"), 3);
        assert_eq!(dims, vec![1, 4, 36]);
        assert_eq!(consequence_space(&builtin("dernov"), 3).nrows(), 12);
    }

    #[test]
    fn dual_dims_low_arity() {
        assert_eq!(component_dims(&builtin("dernov_dual"), 4), vec![1, 4, 12, 11]);
    }

    #[test]
    fn free_has_no_consequences() {
        let p = Presentation::free(Signature::prec_succ());
        for n in 1..=3 {
            assert_eq!(consequence_space(&p, n).nrows(), 0);
        }
    }

    #[test]
    fn normal_forms_of_split_parts() {
        assert_eq!(component_dims(&builtin("nov_s"), 5), vec![1, 2, 6, 10, 15]);
        assert_eq!(component_dims(&builtin("bicom_s"), 5), vec![1, 2, 6, 1, 1]);
    }

    #[test]
    fn reduction_examples() {
        let nov = builtin("novikov");
        let sig = nov.signature().clone();
        let cb = normal_form_basis(&nov, 3);
        assert_eq!(cb.dim() + cb.rank(), 12);
        let m = parse_monomial("(x1*x3)*x2", &sig).unwrap();
        let r = cb.reduce_monomial(&m).unwrap();
        let other = parse_monomial("(x1*x2)*x3", &sig).unwrap();
        // right-commutativity identifies the two; the greater one is rewritten
        assert_eq!(cb.reduce_monomial(&other).unwrap(), r);
        assert_eq!(r.len(), 1);
        assert!(cb.is_normal_form(r.iter().next().unwrap().0));
        for nf in cb.normal_forms() {
            assert_eq!(cb.reduce_monomial(nf).unwrap(), Polynomial::from_monomial(nf.clone()));
        }
        for rel in nov.relations() {
            assert!(cb.reduce(rel).unwrap().is_zero());
        }
        let cb2 = normal_form_basis(&nov, 2);
        assert_eq!(cb2.dim(), 2);
        let bad = parse_polynomial("x1*x2", &sig).unwrap();
        assert_eq!(cb.reduce(&bad), Err(Error::ArityMismatch { expected: 3, found: 2 }));
    }

    #[test]
    fn redundant_and_reordered_relations() {
        let nov_s = builtin("nov_s");
        let dims = component_dims(&nov_s, 5);
        let mut rels = nov_s.relations().to_vec();
        let last = rels.pop().unwrap();
        let without = Presentation::new("w", nov_s.signature().clone(), rels.clone()).unwrap();
        assert_eq!(component_dims(&without, 5), dims);
        rels.insert(0, last);
        rels.reverse();
        let reordered = Presentation::new("r", nov_s.signature().clone(), rels).unwrap();
        assert_eq!(component_dims(&reordered, 5), dims);
    }

    #[test]
    fn equivalence_checks() {
        let nov = builtin("novikov");
        let bic = builtin("bicommutative");
        assert!(relation_spaces_equivalent(&nov, &nov, &[(0, false)], 4).unwrap());
        assert!(!relation_spaces_equivalent(&nov, &bic, &[(0, false)], 3).unwrap());
        assert!(matches!(
            relation_spaces_equivalent(&nov, &builtin("dernov"), &[(0, false)], 3),
            Err(Error::SignatureMismatch { .. })
        ));
    }
}
