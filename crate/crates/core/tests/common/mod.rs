//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeMap;

use operad_forge_core::linalg::{RowReducer, SparseVec};
use operad_forge_core::presentation::Presentation;
use operad_forge_core::term::{multilinear_basis, Monomial, Polynomial, Signature};
use operad_forge_core::Rational;
use rand::Rng;

/// Row space of multilinear polynomials of one arity.
pub struct Span {
    columns: Vec<Monomial>,
    index: BTreeMap<Monomial, usize>,
    reducer: RowReducer,
}

impl Span {
    pub fn new(sig: &Signature, n: usize) -> Self {
        let columns = multilinear_basis(sig, n);
        let index = columns.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        let reducer = RowReducer::new(columns.len());
        Span { columns, index, reducer }
    }

    pub fn vector(&self, q: &Polynomial) -> SparseVec {
        let mut v: SparseVec = q.iter().map(|(m, c)| (self.index[m], c.clone())).collect();
        v.sort_unstable_by_key(|e| e.0);
        v
    }

    pub fn insert(&mut self, q: &Polynomial) {
        let v = self.vector(q);
        self.reducer.insert(v);
    }

    pub fn contains(&self, q: &Polynomial) -> bool {
        self.reducer.reduce(self.vector(q)).is_empty()
    }

    pub fn rank(&self) -> usize {
        self.reducer.rank()
    }

    pub fn free_dim(&self) -> usize {
        self.columns.len()
    }

    pub fn basis(self) -> Vec<Polynomial> {
        let cols = self.columns;
        let (rows, _) = self.reducer.finish();
        rows.into_iter()
            .map(|r| Polynomial::from_terms(r.into_iter().map(|(c, x)| (cols[c].clone(), x))))
            .collect()
    }
}

fn monomials_on(sig: &Signature, block: &[u32]) -> Vec<Monomial> {
    multilinear_basis(sig, block.len())
        .into_iter()
        .map(|m| m.relabel(|v| block[v as usize - 1]))
        .collect()
}

/// Every surjection `[n] → [d]`, as blocks of the induced ordered partition.
fn ordered_partitions(n: usize, d: usize) -> Vec<Vec<Vec<u32>>> {
    let mut out = Vec::new();
    let mut f = vec![0usize; n];
    loop {
        let mut blocks = vec![Vec::new(); d];
        for (i, &b) in f.iter().enumerate() {
            blocks[b].push(i as u32 + 1);
        }
        if blocks.iter().all(|b| !b.is_empty()) {
            out.push(blocks);
        }
        let mut i = 0;
        loop {
            if i == n {
                return out;
            }
            f[i] += 1;
            if f[i] < d {
                break;
            }
            f[i] = 0;
            i += 1;
        }
    }
}

fn cartesian(lists: &[Vec<Monomial>]) -> Vec<Vec<Monomial>> {
    let mut acc: Vec<Vec<Monomial>> = vec![Vec::new()];
    for l in lists {
        acc = acc
            .into_iter()
            .flat_map(|prefix| {
                l.iter().map(move |m| {
                    let mut p = prefix.clone();
                    p.push(m.clone());
                    p
                })
            })
            .collect();
    }
    acc
}

/// Multilinear components of the T-ideal, built from the definition: all
/// substitution instances of the relations, then closure under left and
/// right multiplication by monomials in the remaining variables.
pub struct NaiveIdeal {
    sig: Signature,
    relations: Vec<Polynomial>,
    levels: Vec<Vec<Polynomial>>,
}

impl NaiveIdeal {
    pub fn new(p: &Presentation) -> Self {
        NaiveIdeal { sig: p.signature().clone(), relations: p.relations().to_vec(), levels: vec![Vec::new()] }
    }

    pub fn basis(&mut self, n: usize) -> &[Polynomial] {
        while self.levels.len() <= n {
            let k = self.levels.len();
            let b = self.build(k);
            self.levels.push(b);
        }
        &self.levels[n]
    }

    pub fn dim(&mut self, n: usize) -> usize {
        let free = multilinear_basis(&self.sig, n).len();
        free - self.basis(n).len()
    }

    fn build(&self, n: usize) -> Vec<Polynomial> {
        let mut span = Span::new(&self.sig, n);
        for r in &self.relations {
            let d = r.homogeneous_degree().expect("homogeneous relation");
            if d > n {
                continue;
            }
            for blocks in ordered_partitions(n, d) {
                let choices: Vec<Vec<Monomial>> = blocks.iter().map(|b| monomials_on(&self.sig, b)).collect();
                for pick in cartesian(&choices) {
                    let assignment: BTreeMap<u32, Monomial> =
                        pick.into_iter().enumerate().map(|(i, m)| (i as u32 + 1, m)).collect();
                    span.insert(&r.substitute(&assignment).unwrap());
                }
            }
        }
        for k in 1..n {
            let lower = &self.levels[k];
            if lower.is_empty() {
                continue;
            }
            for blocks in ordered_partitions(n, 2) {
                let (s, rest) = (&blocks[0], &blocks[1]);
                if s.len() != k {
                    continue;
                }
                let others = monomials_on(&self.sig, rest);
                for u in lower {
                    let u = u.map_monomials(|m| m.relabel(|v| s[v as usize - 1]));
                    for v in &others {
                        for op in 0..self.sig.len() {
                            span.insert(&u.map_monomials(|m| Monomial::product(op, m, v)));
                            span.insert(&u.map_monomials(|m| Monomial::product(op, v, m)));
                        }
                    }
                }
            }
        }
        span.basis()
    }
}

/// Random monomial of the given degree over generators `1..=gens`.
pub fn random_monomial(rng: &mut impl Rng, ops: usize, gens: u32, degree: usize) -> Monomial {
    if degree == 1 {
        return Monomial::leaf(rng.gen_range(1..=gens));
    }
    let left = rng.gen_range(1..degree);
    let l = random_monomial(rng, ops, gens, left);
    let r = random_monomial(rng, ops, gens, degree - left);
    Monomial::product(rng.gen_range(0..ops), &l, &r)
}

/// Random polynomial with a few terms of the given degree and small
/// integer coefficients.
pub fn random_polynomial(rng: &mut impl Rng, ops: usize, gens: u32, degree: usize) -> Polynomial {
    let mut q = Polynomial::zero();
    for _ in 0..rng.gen_range(1..=3) {
        let c = Rational::from_integer(rng.gen_range(-3..=3));
        q.add_term(random_monomial(rng, ops, gens, degree), &c);
    }
    q
}

pub fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}
