//! Bounded-window certificate that the invariant Laurent ring on the `F` side
//! is a finitely generated module over the pulled-back ring from the `E` side.
//!
//! Write `A = Q[t^{+-1}]^{S_r}` and `B` for the image of `t_i -> t_i^f`.
//! Every monomial is `t^a * (t^f)^k` with `a` in the box `[0, f)^r`, and the
//! monomials `(t^f)^b` with `0 <= b_i <= i` span `Q[t^f]` over its invariants,
//! so the orbit sums of `a + f b` generate `A` over `B`. A greedy pass drops
//! pool elements already reachable from earlier ones; then every invariant
//! monomial in the window is rewritten as `sum_g beta_g g` with `beta_g` in
//! `B`, each by an exact linear solve.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::laurent::{Exponent, InvariantLaurentPoly};
use super::pullback_invariant;
use crate::error::{Error, Result};
use crate::linalg::solve;
use crate::Rational;

pub const MAX_CERT_R: usize = 3;
pub const MAX_CERT_F: u32 = 4;

/// `coeff * pullback(m_multiplier) * generator`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReductionTerm {
    pub generator: usize,
    /// E-side exponents `k`; the factor is the orbit sum of `f k`.
    pub multiplier: Exponent,
    #[serde(with = "crate::scalar::as_string")]
    pub coeff: Rational,
}

/// Expression of the orbit sum `m_target` over the pulled-back ring.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Reduction {
    pub target: Exponent,
    pub terms: Vec<ReductionTerm>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FinitenessCertificate {
    pub r: usize,
    pub f: u32,
    pub window: u32,
    /// Exponent vectors of the generating orbit sums.
    pub generators: Vec<Exponent>,
    pub reductions: Vec<Reduction>,
}

impl FinitenessCertificate {
    /// Recomputes every reduction with ring arithmetic and checks it equals
    /// its target.
    pub fn verify(&self) -> bool {
        let f = self.f;
        self.reductions.iter().all(|red| {
            let mut sum = InvariantLaurentPoly::<Rational>::zero(self.r);
            for t in &red.terms {
                let Some(g) = self.generators.get(t.generator) else {
                    return false;
                };
                let Ok(beta) =
                    pullback_invariant(self.r, f, &InvariantLaurentPoly::orbit_sum(t.multiplier.clone()))
                else {
                    return false;
                };
                let piece = &beta * &InvariantLaurentPoly::orbit_sum(g.clone());
                sum = &sum + &piece.scale(&t.coeff);
            }
            sum == InvariantLaurentPoly::orbit_sum(red.target.clone())
        })
    }
}

fn residue_class(a: &[i32], f: i32) -> Vec<i32> {
    let mut v: Vec<i32> = a.iter().map(|x| x.rem_euclid(f)).collect();
    v.sort_unstable();
    v
}

/// Weakly decreasing vectors of length `r` with entries in `[lo, hi]` and
/// the given sum.
fn decreasing_with_sum(r: usize, lo: i32, hi: i32, sum: i32) -> Vec<Exponent> {
    fn go(r: usize, lo: i32, hi: i32, sum: i32, prefix: &mut Exponent, out: &mut Vec<Exponent>) {
        if r == 0 {
            if sum == 0 {
                out.push(prefix.clone());
            }
            return;
        }
        let r_i = r as i32;
        // the remaining r entries lie in [lo, x], so r*lo <= sum <= r*x
        for x in (lo..=hi).rev() {
            if r_i * x < sum {
                break;
            }
            if sum - x < (r_i - 1) * lo {
                continue;
            }
            prefix.push(x);
            go(r - 1, lo, x, sum - x, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(r, lo, hi, sum, &mut Vec::new(), &mut out);
    out
}

fn decreasing_in_box(r: usize, lo: i32, hi: i32) -> Vec<Exponent> {
    let mut out = Vec::new();
    for s in (r as i32 * lo..=r as i32 * hi).rev() {
        out.extend(decreasing_with_sum(r, lo, hi, s));
    }
    out.sort_unstable_by(|a, b| b.cmp(a));
    out
}

struct Reducer {
    r: usize,
    f: u32,
    window: i32,
}

impl Reducer {
    /// Rewrites `m_target` over the generators, or `None` inside this window.
    fn reduce(&self, target: &[i32], gens: &[Exponent]) -> Option<Vec<ReductionTerm>> {
        let fi = self.f as i32;
        let class = residue_class(target, fi);
        let deg: i32 = target.iter().sum();

        let mut unknowns: Vec<(usize, Exponent, InvariantLaurentPoly<Rational>)> = Vec::new();
        for (gi, g) in gens.iter().enumerate() {
            let gdeg: i32 = g.iter().sum();
            if residue_class(g, fi) != class || (deg - gdeg) % fi != 0 {
                continue;
            }
            let g_poly = InvariantLaurentPoly::orbit_sum(g.clone());
            for k in decreasing_with_sum(self.r, -self.window, self.window, (deg - gdeg) / fi) {
                let beta = pullback_invariant(self.r, self.f, &InvariantLaurentPoly::orbit_sum(k.clone()))
                    .expect("pullback of an orbit sum");
                unknowns.push((gi, k, &beta * &g_poly));
            }
        }
        if unknowns.is_empty() {
            return None;
        }

        let target_vec = target.to_vec();
        let mut row_of: BTreeMap<&Exponent, usize> = BTreeMap::new();
        row_of.insert(&target_vec, 0);
        for (_, _, p) in &unknowns {
            for key in p.terms().keys() {
                let next = row_of.len();
                row_of.entry(key).or_insert(next);
            }
        }
        let mut a = vec![vec![Rational::from_integer(0.into()); unknowns.len()]; row_of.len()];
        for (col, (_, _, p)) in unknowns.iter().enumerate() {
            for (key, c) in p.terms() {
                a[row_of[key]][col] = c.clone();
            }
        }
        let mut b = vec![Rational::from_integer(0.into()); row_of.len()];
        b[0] = Rational::from_integer(1.into());

        let x = solve(&a, &b)?;
        Some(
            unknowns
                .into_iter()
                .zip(x)
                .filter(|(_, c)| *c != Rational::from_integer(0.into()))
                .map(|((generator, multiplier, _), coeff)| ReductionTerm {
                    generator,
                    multiplier,
                    coeff,
                })
                .collect(),
        )
    }
}

/// Orbit sums of `a + f b`, `a` in `[0, f)^r`, `0 <= b_i <= i`, ordered by
/// degree.
fn candidate_pool(r: usize, f: u32) -> Vec<Exponent> {
    let fi = f as i32;
    let mut pool = BTreeSet::new();
    let mut a = vec![0i32; r];
    loop {
        let mut b = vec![0i32; r];
        loop {
            let mut c: Exponent = a.iter().zip(&b).map(|(x, y)| x + fi * y).collect();
            c.sort_unstable_by(|x, y| y.cmp(x));
            pool.insert((c.iter().sum::<i32>(), std::cmp::Reverse(c.clone()), c));
            // odometer over the staircase b_i <= i
            let Some(i) = (0..r).find(|&i| b[i] < i as i32) else { break };
            b[i] += 1;
            b[..i].iter_mut().for_each(|x| *x = 0);
        }
        let Some(i) = (0..r).find(|&i| a[i] < fi - 1) else { break };
        a[i] += 1;
        a[..i].iter_mut().for_each(|x| *x = 0);
    }
    pool.into_iter().map(|(_, _, c)| c).collect()
}

fn try_certificate(r: usize, f: u32, window: u32) -> Option<FinitenessCertificate> {
    let w = i32::try_from(window).ok()?;
    let multiplier_window = i32::try_from(window.div_ceil(f) as usize + r).ok()?;
    let reducer = Reducer { r, f, window: multiplier_window };

    let mut generators: Vec<Exponent> = Vec::new();
    for c in candidate_pool(r, f) {
        if c.iter().any(|&x| x > w) {
            continue;
        }
        if reducer.reduce(&c, &generators).is_none() {
            generators.push(c);
        }
    }

    let mut reductions = Vec::new();
    for target in decreasing_in_box(r, -w, w) {
        let terms = reducer.reduce(&target, &generators)?;
        reductions.push(Reduction { target, terms });
    }
    Some(FinitenessCertificate {
        r,
        f,
        window,
        generators,
        reductions,
    })
}

/// Certificate that base change on `Sym^r` is finite, checked on every
/// invariant monomial with exponents in `[-window, window]`.
///
/// Multipliers from the pulled-back ring have E-side exponents bounded by
/// `ceil(window / f) + r`. Fails with [`Error::WindowTooSmall`] when some
/// monomial has no expression there.
pub fn finiteness_certificate(r: usize, f: u32, window: u32) -> Result<FinitenessCertificate> {
    if r == 0 || r > MAX_CERT_R {
        return Err(Error::invalid(format!("r must lie in 1..={MAX_CERT_R}, got {r}")));
    }
    if f == 0 || f > MAX_CERT_F {
        return Err(Error::invalid(format!("f must lie in 1..={MAX_CERT_F}, got {f}")));
    }
    if let Some(cert) = try_certificate(r, f, window) {
        return Ok(cert);
    }
    let limit = window + f * r as u32;
    let suggested = (window + 1..=limit)
        .find(|&w| try_certificate(r, f, w).is_some())
        .unwrap_or(limit);
    Err(Error::WindowTooSmall { window, suggested })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decreasing_enumeration() {
        assert_eq!(
            decreasing_with_sum(2, -1, 1, 0),
            vec![vec![1, -1], vec![0, 0]]
        );
        // weakly decreasing triples in [-1, 1]: C(3 + 2, 3) = 10
        assert_eq!(decreasing_in_box(3, -1, 1).len(), 10);
    }

    #[test]
    fn pool_for_two_variables() {
        let pool = candidate_pool(2, 2);
        assert_eq!(
            pool,
            vec![
                vec![0, 0],
                vec![1, 0],
                vec![2, 0],
                vec![1, 1],
                vec![3, 0],
                vec![2, 1],
                vec![3, 1]
            ]
        );
    }

    #[test]
    fn univariate_square() {
        let cert = finiteness_certificate(1, 2, 4).unwrap();
        assert_eq!(cert.generators, vec![vec![0], vec![1]]);
        let t3 = cert.reductions.iter().find(|r| r.target == vec![3]).unwrap();
        assert_eq!(
            t3.terms,
            vec![ReductionTerm {
                generator: 1,
                multiplier: vec![1],
                coeff: Rational::from_integer(1.into())
            }]
        );
        assert!(cert.verify());
    }

    #[test]
    fn univariate_cube_matches_division() {
        let cert = finiteness_certificate(1, 3, 6).unwrap();
        assert_eq!(cert.generators, vec![vec![0], vec![1], vec![2]]);
        assert_eq!(cert.reductions.len(), 13);
        // oracle: t^k = (t^3)^{floor(k/3)} * t^{k mod 3}
        for red in &cert.reductions {
            let k = red.target[0];
            assert_eq!(red.terms.len(), 1);
            assert_eq!(red.terms[0].generator, k.rem_euclid(3) as usize);
            assert_eq!(red.terms[0].multiplier, vec![k.div_euclid(3)]);
        }
        assert!(cert.verify());
    }

    #[test]
    fn two_variables_four_generators() {
        let cert = finiteness_certificate(2, 2, 4).unwrap();
        assert!(cert.generators.len() <= 4);
        assert_eq!(
            cert.generators,
            vec![vec![0, 0], vec![1, 0], vec![1, 1], vec![3, 0]]
        );
        assert!(cert.verify());
    }

    #[test]
    fn window_too_small() {
        assert_eq!(
            finiteness_certificate(1, 3, 1),
            Err(Error::WindowTooSmall { window: 1, suggested: 2 })
        );
    }

    #[test]
    fn parameter_limits() {
        assert!(finiteness_certificate(4, 2, 4).is_err());
        assert!(finiteness_certificate(1, 5, 4).is_err());
        assert!(finiteness_certificate(0, 2, 4).is_err());
    }

    #[test]
    fn certificate_json_uses_string_coefficients() {
        let cert = finiteness_certificate(1, 2, 2).unwrap();
        let json = serde_json::to_value(&cert).unwrap();
        assert_eq!(json["reductions"][0]["terms"][0]["coeff"], "1");
        let back: FinitenessCertificate = serde_json::from_value(json).unwrap();
        assert_eq!(back, cert);
    }
}
