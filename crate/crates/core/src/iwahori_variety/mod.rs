//! The extended quotient `(C^x)^n // S_n` and base change on it.
//!
//! Components are indexed by partitions of `n`: a partition with distinct
//! part sizes `n_i` of multiplicities `r_i` gives the component
//! `Sym^{r_1}(C^x) x ... x Sym^{r_l}(C^x)`. Base change along an extension
//! with residue degree `f` raises every coordinate to the `f`-th power.

mod finiteness;
mod laurent;
mod partition;

pub use finiteness::{
    finiteness_certificate, FinitenessCertificate, Reduction, ReductionTerm, MAX_CERT_F,
    MAX_CERT_R,
};
pub use laurent::{pullback_invariant, InvariantLaurentPoly, LaurentPoly};
pub use partition::{partitions, Partition};

use num_complex::Complex;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{complex_cmp, complex_pow, Scalar};

pub const MAX_EXTQUOT_N: u32 = 30;

/// One piece `X^gamma / Z_gamma` of the extended quotient.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "ComponentRecord", into = "ComponentRecord")]
pub struct OrbitComponent {
    partition: Partition,
}

impl OrbitComponent {
    pub fn new(partition: Partition) -> Self {
        Self { partition }
    }

    pub fn partition(&self) -> &Partition {
        &self.partition
    }

    /// `(n_i, r_i)`: distinct part sizes with their multiplicities.
    pub fn distinct_parts(&self) -> Vec<(u32, u32)> {
        self.partition.multiplicities()
    }

    /// Symmetric powers `r_1, ..., r_l` of the factors, in order of
    /// decreasing part size.
    pub fn sym_powers(&self) -> Vec<u32> {
        self.distinct_parts().into_iter().map(|(_, r)| r).collect()
    }

    /// Complex dimension, the number of parts.
    pub fn dimension(&self) -> usize {
        self.partition.len()
    }

    pub fn contains<S: Scalar>(&self, x: &TorusPoint<S>) -> bool {
        let sizes: Vec<u32> = x.factors.iter().map(|c| c.len() as u32).collect();
        sizes == self.sym_powers()
    }
}

impl std::fmt::Display for OrbitComponent {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let factors: Vec<String> = self.sym_powers().iter().map(|r| format!("Sym^{r}")).collect();
        write!(f, "{}", factors.join(" x "))
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FactorRecord {
    pub sym_power: u32,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComponentRecord {
    pub partition: Vec<u32>,
    pub factors: Vec<FactorRecord>,
}

impl TryFrom<ComponentRecord> for OrbitComponent {
    type Error = Error;

    fn try_from(r: ComponentRecord) -> Result<Self> {
        let c = OrbitComponent::new(Partition::new(r.partition)?);
        let given: Vec<u32> = r.factors.iter().map(|f| f.sym_power).collect();
        if given != c.sym_powers() {
            return Err(Error::invalid(format!(
                "factors {given:?} do not match partition {}",
                c.partition
            )));
        }
        Ok(c)
    }
}

impl From<OrbitComponent> for ComponentRecord {
    fn from(c: OrbitComponent) -> Self {
        ComponentRecord {
            factors: c
                .sym_powers()
                .into_iter()
                .map(|sym_power| FactorRecord { sym_power })
                .collect(),
            partition: c.partition.into(),
        }
    }
}

/// `(C^x)^n // S_n` as an ordered list of components.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "ExtendedQuotientRecord", into = "ExtendedQuotientRecord")]
pub struct ExtendedQuotient {
    n: u32,
    components: Vec<OrbitComponent>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExtendedQuotientRecord {
    pub n: u32,
    pub components: Vec<OrbitComponent>,
}

impl TryFrom<ExtendedQuotientRecord> for ExtendedQuotient {
    type Error = Error;

    fn try_from(r: ExtendedQuotientRecord) -> Result<Self> {
        let expected = extended_quotient(r.n)?;
        if expected.components != r.components {
            return Err(Error::invalid(format!(
                "components do not enumerate the partitions of {} in order",
                r.n
            )));
        }
        Ok(expected)
    }
}

impl From<ExtendedQuotient> for ExtendedQuotientRecord {
    fn from(q: ExtendedQuotient) -> Self {
        ExtendedQuotientRecord {
            n: q.n,
            components: q.components,
        }
    }
}

impl ExtendedQuotient {
    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn components(&self) -> &[OrbitComponent] {
        &self.components
    }
}

pub fn extended_quotient(n: u32) -> Result<ExtendedQuotient> {
    if n == 0 || n > MAX_EXTQUOT_N {
        return Err(Error::invalid(format!(
            "n must lie in 1..={MAX_EXTQUOT_N}, got {n}"
        )));
    }
    let components = partitions(n).into_iter().map(OrbitComponent::new).collect();
    Ok(ExtendedQuotient { n, components })
}

/// Component fixed by a permutation of the given cycle type.
pub fn fixed_component(n: u32, cycle_type: &Partition) -> Result<OrbitComponent> {
    if cycle_type.size() != n {
        return Err(Error::invalid(format!(
            "cycle type {cycle_type} is not a partition of {n}"
        )));
    }
    Ok(OrbitComponent::new(cycle_type.clone()))
}

/// A point on a component: one unordered multiset of nonzero coordinates
/// per symmetric-power factor. Stored sorted so equality ignores order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound(serialize = "S: Scalar", deserialize = "S: Scalar"))]
#[serde(try_from = "PointRecord<S>", into = "PointRecord<S>")]
pub struct TorusPoint<S: Scalar> {
    factors: Vec<Vec<Complex<S>>>,
}

#[derive(Serialize, Deserialize)]
#[serde(bound(serialize = "S: Scalar", deserialize = "S: Scalar"))]
pub struct PointRecord<S: Scalar> {
    factors: Vec<Vec<Coord<S>>>,
}

#[derive(Serialize, Deserialize)]
#[serde(bound(serialize = "S: Scalar", deserialize = "S: Scalar"))]
struct Coord<S: Scalar>(#[serde(with = "crate::scalar::complex_as_strings")] Complex<S>);

impl<S: Scalar> TryFrom<PointRecord<S>> for TorusPoint<S> {
    type Error = Error;

    fn try_from(r: PointRecord<S>) -> Result<Self> {
        Self::new(
            r.factors
                .into_iter()
                .map(|f| f.into_iter().map(|c| c.0).collect())
                .collect(),
        )
    }
}

impl<S: Scalar> From<TorusPoint<S>> for PointRecord<S> {
    fn from(p: TorusPoint<S>) -> Self {
        PointRecord {
            factors: p
                .factors
                .into_iter()
                .map(|f| f.into_iter().map(Coord).collect())
                .collect(),
        }
    }
}

impl<S: Scalar> TorusPoint<S> {
    pub fn new(mut factors: Vec<Vec<Complex<S>>>) -> Result<Self> {
        if factors.iter().flatten().any(Zero::is_zero) {
            return Err(Error::ZeroCoordinate);
        }
        if factors.iter().any(Vec::is_empty) {
            return Err(Error::invalid("every symmetric-power factor needs a coordinate"));
        }
        for f in &mut factors {
            f.sort_by(complex_cmp);
        }
        Ok(Self { factors })
    }

    /// Point on `Sym^n`, a single factor.
    pub fn symmetric(coords: Vec<Complex<S>>) -> Result<Self> {
        Self::new(vec![coords])
    }

    pub fn factors(&self) -> &[Vec<Complex<S>>] {
        &self.factors
    }

    pub fn coordinates(&self) -> impl Iterator<Item = &Complex<S>> {
        self.factors.iter().flatten()
    }

    fn map_coords(&self, g: impl Fn(&Complex<S>) -> Complex<S>) -> Self {
        let mut factors: Vec<Vec<Complex<S>>> =
            self.factors.iter().map(|f| f.iter().map(&g).collect()).collect();
        for f in &mut factors {
            f.sort_by(complex_cmp);
        }
        Self { factors }
    }
}

/// `(z_1, ..., z_r) -> (z_1^f, ..., z_r^f)` on every factor of `c`.
pub fn base_change_point<S: Scalar>(
    c: &OrbitComponent,
    x: &TorusPoint<S>,
    f: u32,
) -> Result<TorusPoint<S>> {
    if f == 0 {
        return Err(Error::invalid("residue degree f must be positive"));
    }
    if !c.contains(x) {
        return Err(Error::invalid(format!("point does not lie on component {c}")));
    }
    Ok(x.map_coords(|z| complex_pow(z, i64::from(f))))
}

/// Base change on the curve of unramified twists of the Steinberg
/// representation, the `Sym^1` component: `z -> z^f`.
pub fn steinberg_curve_bc<S: Scalar>(z: &Complex<S>, f: u32) -> Result<Complex<S>> {
    if z.is_zero() {
        return Err(Error::ZeroCoordinate);
    }
    if f == 0 {
        return Err(Error::invalid("residue degree f must be positive"));
    }
    Ok(complex_pow(z, i64::from(f)))
}

/// Base change on `Sym^n(C^x)`, the unramified (spherical) component whose
/// coordinates are Satake parameters.
pub fn satake_bc<S: Scalar>(x: &TorusPoint<S>, f: u32) -> Result<TorusPoint<S>> {
    if x.factors.len() != 1 {
        return Err(Error::invalid("Satake parameters live on a single symmetric power"));
    }
    let n = x.factors[0].len() as u32;
    let c = OrbitComponent::new(Partition::new(vec![1; n as usize])?);
    base_change_point(&c, x, f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{Gaussian, Rational};

    fn g(re: (i64, i64), im: (i64, i64)) -> Gaussian {
        Complex::new(Rational::from_ratio(re.0, re.1), Rational::from_ratio(im.0, im.1))
    }

    fn int(re: i64, im: i64) -> Gaussian {
        g((re, 1), (im, 1))
    }

    #[test]
    fn gl4_components() {
        let q = extended_quotient(4).unwrap();
        let got: Vec<Vec<u32>> = q.components().iter().map(|c| c.sym_powers()).collect();
        assert_eq!(got, vec![vec![1], vec![1, 1], vec![2], vec![1, 2], vec![4]]);
    }

    #[test]
    fn small_quotients() {
        assert_eq!(extended_quotient(1).unwrap().components().len(), 1);
        assert_eq!(extended_quotient(5).unwrap().components().len(), 7);
        assert!(extended_quotient(0).is_err());
        assert!(extended_quotient(31).is_err());
    }

    #[test]
    fn fixed_components() {
        let c = |parts: Vec<u32>| fixed_component(4, &Partition::new(parts).unwrap()).unwrap();
        assert_eq!(c(vec![1, 1, 1, 1]).sym_powers(), vec![4]);
        assert_eq!(c(vec![4]).sym_powers(), vec![1]);
        assert_eq!(c(vec![2, 2]).sym_powers(), vec![2]);
        assert!(fixed_component(5, &Partition::new(vec![2, 2]).unwrap()).is_err());
    }

    #[test]
    fn base_change_examples() {
        let sym1 = OrbitComponent::new(Partition::new(vec![1]).unwrap());
        let i = TorusPoint::symmetric(vec![int(0, 1)]).unwrap();
        let got = base_change_point(&sym1, &i, 2).unwrap();
        assert_eq!(got, TorusPoint::symmetric(vec![int(-1, 0)]).unwrap());

        let sym2 = OrbitComponent::new(Partition::new(vec![1, 1]).unwrap());
        let x = TorusPoint::symmetric(vec![int(3, 0), g((1, 3), (0, 1))]).unwrap();
        let y = base_change_point(&sym2, &x, 2).unwrap();
        assert_eq!(y, TorusPoint::symmetric(vec![g((1, 9), (0, 1)), int(9, 0)]).unwrap());
        assert_eq!(base_change_point(&sym2, &x, 1).unwrap(), x);
    }

    #[test]
    fn point_must_match_component() {
        let sym2 = OrbitComponent::new(Partition::new(vec![1, 1]).unwrap());
        let x = TorusPoint::symmetric(vec![int(2, 0)]).unwrap();
        assert!(base_change_point(&sym2, &x, 2).is_err());
        assert!(matches!(
            TorusPoint::symmetric(vec![int(0, 0)]),
            Err(Error::ZeroCoordinate)
        ));
    }

    #[test]
    fn steinberg_examples() {
        assert_eq!(steinberg_curve_bc(&int(2, 0), 3).unwrap(), int(8, 0));
        assert_eq!(steinberg_curve_bc(&int(0, 1), 4).unwrap(), int(1, 0));
        assert_eq!(steinberg_curve_bc(&int(1, 1), 2).unwrap(), int(0, 2));
    }

    #[test]
    fn satake_examples() {
        let x = TorusPoint::symmetric(vec![int(0, 1), int(0, -1), int(2, 0)]).unwrap();
        assert_eq!(satake_bc(&x, 1).unwrap(), x);
        let y = satake_bc(&x, 4).unwrap();
        assert_eq!(
            y,
            TorusPoint::symmetric(vec![int(1, 0), int(1, 0), int(16, 0)]).unwrap()
        );
    }

    #[test]
    fn component_json() {
        let q = extended_quotient(3).unwrap();
        let json = serde_json::to_string(&q).unwrap();
        assert_eq!(
            json,
            r#"{"n":3,"components":[{"partition":[3],"factors":[{"sym_power":1}]},{"partition":[2,1],"factors":[{"sym_power":1},{"sym_power":1}]},{"partition":[1,1,1],"factors":[{"sym_power":3}]}]}"#
        );
        let back: ExtendedQuotient = serde_json::from_str(&json).unwrap();
        assert_eq!(back, q);
    }

    #[test]
    fn point_json_round_trip() {
        let x = TorusPoint::new(vec![vec![g((1, 2), (-3, 4))], vec![int(1, 0), int(0, 1)]]).unwrap();
        let json = serde_json::to_string(&x).unwrap();
        assert!(json.contains(r#"{"re":"1/2","im":"-3/4"}"#));
        let back: TorusPoint<Rational> = serde_json::from_str(&json).unwrap();
        assert_eq!(back, x);
    }
}
