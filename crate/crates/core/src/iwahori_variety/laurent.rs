//! Laurent polynomials in `t_1, ..., t_r` and the subring of `S_r`-invariants,
//! stored in the basis of orbit sums `m_a = sum of t^b over the distinct
//! permutations b of a` indexed by weakly decreasing exponent vectors.

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

pub type Exponent = Vec<i32>;

fn sorted_desc(a: &[i32]) -> Exponent {
    let mut v = a.to_vec();
    v.sort_unstable_by(|x, y| y.cmp(x));
    v
}

/// Distinct permutations of `a`.
pub(crate) fn orbit(a: &[i32]) -> Vec<Exponent> {
    let mut v = a.to_vec();
    v.sort_unstable();
    let mut out = vec![v.clone()];
    // lexicographic next-permutation walk visits each distinct arrangement once
    while let Some(i) = (0..v.len().saturating_sub(1)).rev().find(|&i| v[i] < v[i + 1]) {
        let j = (i + 1..v.len()).rev().find(|&j| v[j] > v[i]).unwrap();
        v.swap(i, j);
        v[i + 1..].reverse();
        out.push(v.clone());
    }
    out
}

fn insert<S: Scalar>(terms: &mut BTreeMap<Exponent, S>, key: Exponent, c: S) {
    use std::collections::btree_map::Entry;
    match terms.entry(key) {
        Entry::Vacant(v) => {
            if !c.is_zero() {
                v.insert(c);
            }
        }
        Entry::Occupied(mut o) => {
            let sum = o.get().clone() + c;
            if sum.is_zero() {
                o.remove();
            } else {
                *o.get_mut() = sum;
            }
        }
    }
}

/// A Laurent polynomial in `r` variables.
#[derive(Debug, Clone, PartialEq)]
pub struct LaurentPoly<S: Scalar> {
    nvars: usize,
    terms: BTreeMap<Exponent, S>,
}

impl<S: Scalar> LaurentPoly<S> {
    pub fn zero(nvars: usize) -> Self {
        Self { nvars, terms: BTreeMap::new() }
    }

    pub fn monomial(exponent: Exponent, coeff: S) -> Self {
        let mut p = Self::zero(exponent.len());
        insert(&mut p.terms, exponent, coeff);
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &BTreeMap<Exponent, S> {
        &self.terms
    }

    pub fn coeff(&self, exponent: &[i32]) -> S {
        self.terms.get(exponent).cloned().unwrap_or_else(S::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Reynolds operator: the average of the `S_r`-translates.
    pub fn symmetrize(&self) -> InvariantLaurentPoly<S> {
        let mut terms = BTreeMap::new();
        for (a, c) in &self.terms {
            let lambda = sorted_desc(a);
            let size = S::from_int(orbit(&lambda).len() as i64);
            insert(&mut terms, lambda, c.clone() / size);
        }
        InvariantLaurentPoly { nvars: self.nvars, terms }
    }

    /// Whether the polynomial is fixed by every permutation of the variables.
    pub fn is_symmetric(&self) -> bool {
        self.symmetrize().expand() == *self
    }
}

impl<S: Scalar> Add for &LaurentPoly<S> {
    type Output = LaurentPoly<S>;

    fn add(self, rhs: Self) -> LaurentPoly<S> {
        assert_eq!(self.nvars, rhs.nvars, "variable count mismatch");
        let mut terms = self.terms.clone();
        for (a, c) in &rhs.terms {
            insert(&mut terms, a.clone(), c.clone());
        }
        LaurentPoly { nvars: self.nvars, terms }
    }
}

impl<S: Scalar> Mul for &LaurentPoly<S> {
    type Output = LaurentPoly<S>;

    fn mul(self, rhs: Self) -> LaurentPoly<S> {
        assert_eq!(self.nvars, rhs.nvars, "variable count mismatch");
        let mut terms = BTreeMap::new();
        for (a, x) in &self.terms {
            for (b, y) in &rhs.terms {
                let e: Exponent = a.iter().zip(b).map(|(i, j)| i + j).collect();
                insert(&mut terms, e, x.clone() * y.clone());
            }
        }
        LaurentPoly { nvars: self.nvars, terms }
    }
}

/// An `S_r`-invariant Laurent polynomial in the orbit-sum basis.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound(serialize = "S: Scalar", deserialize = "S: Scalar"))]
#[serde(try_from = "InvariantRecord", into = "InvariantRecord")]
pub struct InvariantLaurentPoly<S: Scalar> {
    nvars: usize,
    terms: BTreeMap<Exponent, S>,
}

impl<S: Scalar> InvariantLaurentPoly<S> {
    pub fn zero(nvars: usize) -> Self {
        Self { nvars, terms: BTreeMap::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Self::orbit_sum(vec![0; nvars])
    }

    /// `m_a`, the sum of the distinct permutations of `t^a`.
    pub fn orbit_sum(exponent: Exponent) -> Self {
        let nvars = exponent.len();
        let mut terms = BTreeMap::new();
        terms.insert(sorted_desc(&exponent), S::one());
        Self { nvars, terms }
    }

    /// Elementary symmetric polynomial `e_k(t_1, ..., t_r)`.
    pub fn elementary(nvars: usize, k: usize) -> Self {
        assert!(k <= nvars, "e_k needs k <= r");
        let exponent = (0..nvars).map(|i| i32::from(i < k)).collect();
        Self::orbit_sum(exponent)
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Exponent, S)>) -> Result<Self> {
        let mut out = BTreeMap::new();
        for (a, c) in terms {
            if a.len() != nvars {
                return Err(Error::invalid(format!(
                    "exponent {a:?} has {} entries, expected {nvars}",
                    a.len()
                )));
            }
            insert(&mut out, sorted_desc(&a), c);
        }
        Ok(Self { nvars, terms: out })
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Coefficients on the orbit sums, keyed by weakly decreasing exponents.
    pub fn terms(&self) -> &BTreeMap<Exponent, S> {
        &self.terms
    }

    pub fn coeff(&self, exponent: &[i32]) -> S {
        self.terms.get(&sorted_desc(exponent)).cloned().unwrap_or_else(S::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, c: &S) -> Self {
        let mut terms = BTreeMap::new();
        for (a, x) in &self.terms {
            insert(&mut terms, a.clone(), x.clone() * c.clone());
        }
        Self { nvars: self.nvars, terms }
    }

    pub fn expand(&self) -> LaurentPoly<S> {
        let mut terms = BTreeMap::new();
        for (a, c) in &self.terms {
            for b in orbit(a) {
                insert(&mut terms, b, c.clone());
            }
        }
        LaurentPoly { nvars: self.nvars, terms }
    }

    /// Largest absolute exponent appearing.
    pub fn max_abs_exponent(&self) -> i32 {
        self.terms.keys().flatten().map(|e| e.abs()).max().unwrap_or(0)
    }
}

impl<S: Scalar> Add for &InvariantLaurentPoly<S> {
    type Output = InvariantLaurentPoly<S>;

    fn add(self, rhs: Self) -> InvariantLaurentPoly<S> {
        assert_eq!(self.nvars, rhs.nvars, "variable count mismatch");
        let mut terms = self.terms.clone();
        for (a, c) in &rhs.terms {
            insert(&mut terms, a.clone(), c.clone());
        }
        InvariantLaurentPoly { nvars: self.nvars, terms }
    }
}

impl<S: Scalar> Neg for &InvariantLaurentPoly<S> {
    type Output = InvariantLaurentPoly<S>;

    fn neg(self) -> InvariantLaurentPoly<S> {
        self.scale(&-S::one())
    }
}

impl<S: Scalar> Sub for &InvariantLaurentPoly<S> {
    type Output = InvariantLaurentPoly<S>;

    fn sub(self, rhs: Self) -> InvariantLaurentPoly<S> {
        self + &(-rhs)
    }
}

impl<S: Scalar> Mul for &InvariantLaurentPoly<S> {
    type Output = InvariantLaurentPoly<S>;

    fn mul(self, rhs: Self) -> InvariantLaurentPoly<S> {
        assert_eq!(self.nvars, rhs.nvars, "variable count mismatch");
        // the coefficient of m_c in a symmetric product is the coefficient of
        // t^c for c weakly decreasing
        let left = self.expand();
        let right = rhs.expand();
        let mut terms = BTreeMap::new();
        for (b, y) in &right.terms {
            for (a, x) in &left.terms {
                let c: Exponent = a.iter().zip(b).map(|(i, j)| i + j).collect();
                if c.windows(2).all(|w| w[0] >= w[1]) {
                    insert(&mut terms, c, x.clone() * y.clone());
                }
            }
        }
        InvariantLaurentPoly { nvars: self.nvars, terms }
    }
}

/// `t_i -> t_i^f` on the invariant ring: the pullback along base change.
pub fn pullback_invariant<S: Scalar>(
    r: usize,
    f: u32,
    poly: &InvariantLaurentPoly<S>,
) -> Result<InvariantLaurentPoly<S>> {
    if poly.nvars != r {
        return Err(Error::invalid(format!(
            "polynomial has {} variables, expected {r}",
            poly.nvars
        )));
    }
    if f == 0 {
        return Err(Error::invalid("residue degree f must be positive"));
    }
    let f = i32::try_from(f).map_err(|_| Error::Overflow("pullback degree"))?;
    let mut terms = BTreeMap::new();
    for (a, c) in &poly.terms {
        let scaled = a
            .iter()
            .map(|e| e.checked_mul(f).ok_or(Error::Overflow("pullback exponent")))
            .collect::<Result<Exponent>>()?;
        terms.insert(scaled, c.clone());
    }
    Ok(InvariantLaurentPoly { nvars: r, terms })
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InvariantRecord {
    r: usize,
    terms: Vec<TermRecord>,
}

#[derive(Serialize, Deserialize)]
struct TermRecord {
    exponents: Exponent,
    coeff: String,
}

impl<S: Scalar> TryFrom<InvariantRecord> for InvariantLaurentPoly<S> {
    type Error = Error;

    fn try_from(r: InvariantRecord) -> Result<Self> {
        let terms = r
            .terms
            .into_iter()
            .map(|t| {
                let c = t
                    .coeff
                    .parse::<S>()
                    .map_err(|_| Error::invalid(format!("invalid coefficient {:?}", t.coeff)))?;
                Ok((t.exponents, c))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_terms(r.r, terms)
    }
}

impl<S: Scalar> From<InvariantLaurentPoly<S>> for InvariantRecord {
    fn from(p: InvariantLaurentPoly<S>) -> Self {
        InvariantRecord {
            r: p.nvars,
            terms: p
                .terms
                .into_iter()
                .map(|(exponents, c)| TermRecord { exponents, coeff: c.to_string() })
                .collect(),
        }
    }
}
