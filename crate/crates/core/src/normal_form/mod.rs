//! Closed-form bases of the free `Nov_s` and `BiCom_s` algebras and the
//! splitting of the free dual `DerNov` algebra into their sum.
//!
//! Basis words are left-normed `((x_{m1} x_{m2}) …) x_{mn}` or right-normed
//! `x_{r1} ((x_{r2} x_{r3}) …) x_{rn}`. Products of total degree at most 3
//! come from a table computed by linear algebra at arity 3; longer products
//! follow closed rules.

mod bicom_s;
mod nov_s;
mod split;

pub use bicom_s::{nf_bicom_s, BiComS};
pub use nov_s::{nf_nov_s, NovS};
pub use split::{split_dernov_dual, DerNovDual, Part, SplitWord};

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::expansion::ComponentBasis;
use crate::linalg::solve_combination;
use crate::rational::Rational;
use crate::term::{permutations, Monomial, Polynomial};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Shape {
    LeftNormed,
    RightNormed,
}

/// A left- or right-normed word. Generators and degree-2 words are stored
/// as left-normed.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BasisWord {
    pub shape: Shape,
    pub gens: Vec<u32>,
}

pub type NBasisMonomial = BasisWord;
pub type BBasisMonomial = BasisWord;

/// Linear combination of basis words.
pub type WordPoly = BTreeMap<BasisWord, Rational>;

impl BasisWord {
    pub fn generator(g: u32) -> Self {
        BasisWord { shape: Shape::LeftNormed, gens: vec![g] }
    }

    pub fn left(gens: Vec<u32>) -> Self {
        assert!(!gens.is_empty());
        BasisWord { shape: Shape::LeftNormed, gens }
    }

    pub fn right(gens: Vec<u32>) -> Self {
        assert!(gens.len() >= 3, "right-normed words have degree at least 3");
        BasisWord { shape: Shape::RightNormed, gens }
    }

    pub fn degree(&self) -> usize {
        self.gens.len()
    }

    pub fn is_generator(&self) -> bool {
        self.gens.len() == 1
    }

    pub fn is_right(&self) -> bool {
        self.shape == Shape::RightNormed
    }

    /// The word as a tree over operation `op`.
    pub fn to_monomial(&self, op: usize) -> Monomial {
        match self.shape {
            Shape::LeftNormed => Monomial::left_normed(op, &self.gens),
            Shape::RightNormed => Monomial::right_normed(op, &self.gens),
        }
    }

    /// Recognizes a left- or right-normed tree over a single operation.
    pub fn from_monomial(m: &Monomial) -> Option<Self> {
        let ops = m.op_mask();
        if ops.count_ones() > 1 {
            return None;
        }
        let gens: Vec<u32> = m.leaves().collect();
        if gens.len() <= 2 {
            return Some(BasisWord::left(gens));
        }
        let op = m.root_op()?;
        if *m == Monomial::left_normed(op, &gens) {
            Some(BasisWord::left(gens))
        } else if *m == Monomial::right_normed(op, &gens) {
            Some(BasisWord::right(gens))
        } else {
            None
        }
    }

    /// Top-level factors of a word of degree at least 2.
    pub fn split(&self) -> Option<(BasisWord, BasisWord)> {
        let n = self.gens.len();
        if n < 2 {
            return None;
        }
        Some(match self.shape {
            Shape::LeftNormed => (BasisWord::left(self.gens[..n - 1].to_vec()), BasisWord::generator(self.gens[n - 1])),
            Shape::RightNormed => (BasisWord::generator(self.gens[0]), BasisWord::left(self.gens[1..].to_vec())),
        })
    }
}

fn sorted(v: &[u32]) -> bool {
    v.windows(2).all(|w| w[0] <= w[1])
}

/// Index constraints shared by both bases up to degree 3: left-normed
/// `(k1 k2) k3` needs `k2 ≤ k3`, right-normed `l1 (l2 l3)` needs `l1 ≥ l2`.
fn low_degree_basis(w: &BasisWord) -> bool {
    match (w.degree(), w.shape) {
        (0..=2, Shape::LeftNormed) => true,
        (3, Shape::LeftNormed) => w.gens[1] <= w.gens[2],
        (3, Shape::RightNormed) => w.gens[0] >= w.gens[1],
        _ => false,
    }
}

/// Membership of a word in the basis 𝒩.
///
/// From degree 4: left-normed words with `m2 ≤ … ≤ mn`, right-normed words
/// with `r3 ≤ … ≤ rn` and `r1 ≤ r2`. For even degree `r1 = r2` is excluded:
/// there `x_a(x_b …) = -x_b(x_a …)`, so such words vanish.
pub fn is_basis_word_n(w: &BasisWord) -> bool {
    let n = w.degree();
    if n <= 3 {
        return low_degree_basis(w);
    }
    match w.shape {
        Shape::LeftNormed => sorted(&w.gens[1..]),
        Shape::RightNormed => {
            let (r1, r2) = (w.gens[0], w.gens[1]);
            sorted(&w.gens[2..]) && if n % 2 == 0 { r1 < r2 } else { r1 <= r2 }
        }
    }
}

/// Membership of a word in the basis ℬ: from degree 4, only fully sorted
/// left-normed words.
pub fn is_basis_word_b(w: &BasisWord) -> bool {
    if w.degree() <= 3 {
        return low_degree_basis(w);
    }
    w.shape == Shape::LeftNormed && sorted(&w.gens)
}

pub fn is_basis_n(m: &Monomial) -> bool {
    BasisWord::from_monomial(m).is_some_and(|w| is_basis_word_n(&w))
}

pub fn is_basis_b(m: &Monomial) -> bool {
    BasisWord::from_monomial(m).is_some_and(|w| is_basis_word_b(&w))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CensusMode {
    /// Words using each of `x1..xn` exactly once.
    Multilinear,
    /// Words over the generators `x1..xk`, repetitions allowed.
    Generators(u32),
}

fn census(n: usize, mode: CensusMode, member: fn(&BasisWord) -> bool) -> u64 {
    assert!(n >= 1, "degree must be positive");
    let shapes: &[Shape] = if n >= 3 { &[Shape::LeftNormed, Shape::RightNormed] } else { &[Shape::LeftNormed] };
    let mut count = 0u64;
    let mut check = |gens: &[u32]| {
        for &shape in shapes {
            if member(&BasisWord { shape, gens: gens.to_vec() }) {
                count += 1;
            }
        }
    };
    match mode {
        CensusMode::Multilinear => {
            for p in permutations(n) {
                check(&p);
            }
        }
        CensusMode::Generators(k) => {
            if k == 0 {
                return 0;
            }
            let mut seq = vec![1u32; n];
            loop {
                check(&seq);
                let mut i = n;
                loop {
                    if i == 0 {
                        return count;
                    }
                    i -= 1;
                    if seq[i] < k {
                        seq[i] += 1;
                        seq[i + 1..].iter_mut().for_each(|x| *x = 1);
                        break;
                    }
                }
            }
        }
    }
    count
}

/// Number of 𝒩 words of degree `n`.
pub fn census_n(n: usize, mode: CensusMode) -> u64 {
    census(n, mode, is_basis_word_n)
}

/// Number of ℬ words of degree `n`.
pub fn census_b(n: usize, mode: CensusMode) -> u64 {
    census(n, mode, is_basis_word_b)
}

pub fn word_poly_to_polynomial(p: &WordPoly, op: usize) -> Polynomial {
    Polynomial::from_terms(p.iter().map(|(w, c)| (w.to_monomial(op), c.clone())))
}

pub(crate) fn add_word(out: &mut WordPoly, w: BasisWord, c: &Rational) {
    if c.is_zero() {
        return;
    }
    let e = out.entry(w.clone()).or_insert(Rational::ZERO);
    *e += c;
    if e.is_zero() {
        out.remove(&w);
    }
}

/// Expression of every multilinear degree-3 monomial in the basis words
/// accepted by `member`, via the component basis `cb` of arity 3.
pub(crate) fn degree_three_table(
    cb: &ComponentBasis,
    member: fn(&BasisWord) -> bool,
) -> BTreeMap<Monomial, Vec<(BasisWord, Rational)>> {
    let op = 0;
    let mut words = Vec::new();
    for p in permutations(3) {
        for shape in [Shape::LeftNormed, Shape::RightNormed] {
            let w = BasisWord { shape, gens: p.clone() };
            if member(&w) {
                words.push(w);
            }
        }
    }
    let image = |m: &Monomial| cb.reduce_vector(&[(cb.column_of(m).expect("multilinear"), Rational::ONE)]);
    let rows: Vec<_> = words.iter().map(|w| image(&w.to_monomial(op))).collect();
    let mut table = BTreeMap::new();
    for m in cb.columns() {
        let c = solve_combination(cb.columns().len(), &rows, &image(m)).expect("basis words span the component");
        let expr = words.iter().cloned().zip(c).filter(|(_, c)| !c.is_zero()).collect();
        table.insert(m.clone(), expr);
    }
    table
}

/// Evaluates the degree-3 product with leaves `gens` in tree `shape` (one
/// operation, index 0) through `table`, relabeling repeated generators by
/// stable rank and substituting back.
pub(crate) fn table_product(
    table: &BTreeMap<Monomial, Vec<(BasisWord, Rational)>>,
    shape: Shape,
    gens: &[u32],
    c: &Rational,
    out: &mut WordPoly,
) {
    debug_assert_eq!(gens.len(), 3);
    let mut order: Vec<usize> = (0..3).collect();
    order.sort_by_key(|&i| (gens[i], i));
    let mut rank = [0u32; 3];
    for (r, &i) in order.iter().enumerate() {
        rank[i] = r as u32 + 1;
    }
    let m = match shape {
        Shape::LeftNormed => Monomial::left_normed(0, &rank),
        Shape::RightNormed => Monomial::right_normed(0, &rank),
    };
    let value_of_rank = |r: u32| gens[order[r as usize - 1]];
    for (w, x) in &table[&m] {
        let gens = w.gens.iter().map(|&r| value_of_rank(r)).collect();
        add_word(out, BasisWord { shape: w.shape, gens }, &(x * c));
    }
}

/// Linear extension of `mult` over two word polynomials.
pub(crate) fn bilinear(a: &WordPoly, b: &WordPoly, mut mult: impl FnMut(&BasisWord, &BasisWord) -> WordPoly) -> WordPoly {
    let mut out = WordPoly::new();
    for (u, cu) in a {
        for (v, cv) in b {
            let c = cu * cv;
            for (w, x) in mult(u, v) {
                add_word(&mut out, w, &(&x * &c));
            }
        }
    }
    out
}
