//! Exact linear algebra over the rationals, with polynomials playing the
//! role of sparse vectors (monomials are the coordinates).

use std::collections::BTreeMap;

use num::{One, Zero};

use crate::exactpoly::{Monomial, Poly, Rational};

/// Row-echelon basis keyed by leading monomial. Each stored vector has
/// leading coefficient 1 and a leading monomial that no other vector shares.
#[derive(Debug, Clone, Default)]
pub struct EchelonBasis {
    rows: BTreeMap<Monomial, Row>,
}

#[derive(Debug, Clone)]
struct Row {
    vector: Poly,
    // combination of inserted vectors that produced this row
    combo: BTreeMap<usize, Rational>,
}

/// Outcome of reducing one vector against the basis.
enum Reduced {
    Independent(Row),
    Dependent(BTreeMap<usize, Rational>),
}

impl EchelonBasis {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, v: &Poly, mut combo: BTreeMap<usize, Rational>) -> Reduced {
        let mut v = v.clone();
        loop {
            let (lm, lc) = match v.leading_term() {
                None => return Reduced::Dependent(combo),
                Some((m, c)) => (m.clone(), c.clone()),
            };
            match self.rows.get(&lm) {
                Some(row) => {
                    let c = -lc;
                    v.add_scaled(&row.vector, &c);
                    for (i, a) in &row.combo {
                        let e = combo.entry(*i).or_insert_with(Rational::zero);
                        *e += a * &c;
                    }
                    combo.retain(|_, a| !a.is_zero());
                }
                None => {
                    let inv = lc.recip();
                    let vector = v.scale(&inv);
                    let combo = combo.into_iter().map(|(i, a)| (i, a * &inv)).collect();
                    return Reduced::Independent(Row { vector, combo });
                }
            }
        }
    }

    /// Inserts `v`; returns `true` if it increased the rank.
    pub fn insert(&mut self, v: &Poly) -> bool {
        self.insert_tagged(v, usize::MAX).is_none()
    }

    /// Inserts `v` tagged with `tag`. Returns `None` if it was independent,
    /// otherwise the dependency: coefficients `c_i` with `v_tag − Σ c_i v_i`
    /// reducing to zero, expressed as a kernel vector including `tag`.
    fn insert_tagged(&mut self, v: &Poly, tag: usize) -> Option<BTreeMap<usize, Rational>> {
        let mut start = BTreeMap::new();
        if tag != usize::MAX {
            start.insert(tag, Rational::one());
        }
        match self.reduce(v, start) {
            Reduced::Independent(row) => {
                let lm = row.vector.leading_term().unwrap().0.clone();
                self.rows.insert(lm, row);
                None
            }
            Reduced::Dependent(combo) => Some(combo),
        }
    }

    /// Whether `v` lies in the span of the inserted vectors.
    pub fn contains(&self, v: &Poly) -> bool {
        matches!(self.reduce(v, BTreeMap::new()), Reduced::Dependent(_))
    }
}

/// Rank of a family of vectors.
pub fn rank(vectors: &[Poly]) -> usize {
    let mut b = EchelonBasis::new();
    for v in vectors {
        b.insert(v);
    }
    b.rank()
}

/// Basis of the kernel of the linear map sending the `i`-th basis vector of
/// the domain to `images[i]`. Each kernel vector is a sparse list of
/// `(domain index, coefficient)`.
pub fn kernel(images: &[Poly]) -> Vec<Vec<(usize, Rational)>> {
    let mut b = EchelonBasis::new();
    let mut out = Vec::new();
    for (i, v) in images.iter().enumerate() {
        if let Some(combo) = b.insert_tagged(v, i) {
            out.push(combo.into_iter().collect());
        }
    }
    out
}
