//! Herbrand function `phi` and its inverse, the Hasse-Herbrand function `psi`,
//! together with the transport of unit-filtration levels and conductors that
//! they govern.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::field::{ExtensionData, RamificationClass};
use super::filtration::RamificationFiltration;
use crate::error::{Error, Result};
use crate::scalar::{ExactScalar, Scalar};
use crate::Rational;

/// Continuous increasing piecewise-linear function on `[0, +inf)` with
/// value 0 at 0. Segment `i` starts at `points[i]` with slope `slopes[i]`;
/// the last segment is an unbounded ray.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound(serialize = "S: Scalar", deserialize = "S: Scalar"))]
pub struct PiecewiseLinearFn<S> {
    #[serde(with = "point_list")]
    points: Vec<(S, S)>,
    #[serde(with = "scalar_list")]
    slopes: Vec<S>,
}

impl<S: Scalar> PiecewiseLinearFn<S> {
    pub fn points(&self) -> &[(S, S)] {
        &self.points
    }

    pub fn slopes(&self) -> &[S] {
        &self.slopes
    }

    pub fn eval(&self, x: &S) -> Result<S> {
        if x.is_negative() {
            return Err(Error::NegativeArgument(x.to_string()));
        }
        let i = self.points.iter().rposition(|(px, _)| px <= x).unwrap_or(0);
        let (px, py) = &self.points[i];
        Ok(py.clone() + self.slopes[i].clone() * (x.clone() - px.clone()))
    }

    /// The inverse function, obtained by swapping coordinates.
    pub fn inverse(&self) -> Self {
        Self {
            points: self.points.iter().map(|(x, y)| (y.clone(), x.clone())).collect(),
            slopes: self.slopes.iter().map(|s| S::one() / s.clone()).collect(),
        }
    }

    pub fn is_convex(&self) -> bool {
        self.slopes.windows(2).all(|w| w[0] <= w[1])
    }

    pub fn is_concave(&self) -> bool {
        self.slopes.windows(2).all(|w| w[0] >= w[1])
    }
}

/// `phi(u) = integral_0^u dt / (G_0 : G_t)` with `G_t = G_i` on `(i-1, i]`.
pub fn phi_fn<S: Scalar>(filt: &RamificationFiltration) -> PiecewiseLinearFn<S> {
    let g0 = filt.inertia_order() as i64;
    let segments = filt.orders().len().max(1);
    let mut points = Vec::with_capacity(segments);
    let mut slopes = Vec::with_capacity(segments);
    let mut y = S::zero();
    for i in 0..segments {
        // on (i, i+1] the integrand is |G_{i+1}| / |G_0|
        let slope = S::from_ratio(filt.order(i + 1) as i64, g0);
        points.push((S::from_int(i as i64), y.clone()));
        y = y + slope.clone();
        slopes.push(slope);
    }
    PiecewiseLinearFn { points, slopes }
}

pub fn psi_fn<S: Scalar>(filt: &RamificationFiltration) -> PiecewiseLinearFn<S> {
    phi_fn(filt).inverse()
}

pub fn phi<S: Scalar>(filt: &RamificationFiltration, u: &S) -> Result<S> {
    phi_fn(filt).eval(u)
}

pub fn psi<S: Scalar>(filt: &RamificationFiltration, x: &S) -> Result<S> {
    psi_fn(filt).eval(x)
}

fn to_u64(v: &BigInt, what: &'static str) -> Result<u64> {
    v.to_u64().ok_or(Error::Overflow(what))
}

/// Level `nu` of the base unit filtration hit by the norm of `U_E^level_e`,
/// i.e. the `nu` with `N(U_E^{psi(nu)}) = U_F^nu`.
///
/// Unramified and tame extensions are always accepted. A wild extension is
/// accepted only when it is totally ramified and Galois and the filtration
/// itself shows `G_{level_e}` trivial.
pub fn norm_level_image(
    ext: &ExtensionData,
    filt: &RamificationFiltration,
    level_e: u64,
) -> Result<u64> {
    filt.check_against(ext)?;
    if ext.classify() == RamificationClass::Wild {
        if !(ext.is_totally_ramified() && ext.galois()) {
            return Err(Error::UnsupportedExtension(
                "wild extension that is not totally ramified and Galois".into(),
            ));
        }
        let idx = usize::try_from(level_e).unwrap_or(usize::MAX);
        if filt.order(idx) != 1 {
            return Err(Error::UnsupportedExtension(format!(
                "G_{level_e} has order {} but the norm transport needs it trivial",
                filt.order(idx)
            )));
        }
    }
    let nu: Rational = phi(filt, &Rational::from_integer(BigInt::from(level_e)))?;
    match nu.as_integer() {
        Some(n) => to_u64(&n, "norm level"),
        None => Err(Error::NotInPsiImage {
            level: level_e,
            phi: nu.to_string(),
        }),
    }
}

/// Conductor of `chi o N_{E/F}` from the conductor of `chi`: `psi(c)`.
pub fn conductor_transport(filt: &RamificationFiltration, c_f: u64) -> Result<u64> {
    if c_f == 0 {
        // unramified characters stay unramified
        return Ok(0);
    }
    let c: Rational = psi(filt, &Rational::from_integer(BigInt::from(c_f)))?;
    let c = c
        .as_integer()
        .expect("psi maps integers to integers");
    debug_assert!(!c.is_zero());
    to_u64(&c, "conductor")
}

mod point_list {
    use serde::de::Error as _;
    use serde::{Deserialize, Deserializer, Serializer};

    use crate::scalar::Scalar;

    pub fn serialize<T: Scalar, S: Serializer>(v: &[(T, T)], ser: S) -> Result<S::Ok, S::Error> {
        ser.collect_seq(v.iter().map(|(x, y)| [x.to_string(), y.to_string()]))
    }

    pub fn deserialize<'de, T: Scalar, D: Deserializer<'de>>(de: D) -> Result<Vec<(T, T)>, D::Error> {
        let raw = Vec::<[String; 2]>::deserialize(de)?;
        raw.into_iter()
            .map(|[x, y]| match (x.parse(), y.parse()) {
                (Ok(x), Ok(y)) => Ok((x, y)),
                _ => Err(D::Error::custom(format!("invalid point ({x}, {y})"))),
            })
            .collect()
    }
}

mod scalar_list {
    use serde::de::Error as _;
    use serde::{Deserialize, Deserializer, Serializer};

    use crate::scalar::Scalar;

    pub fn serialize<T: Scalar, S: Serializer>(v: &[T], ser: S) -> Result<S::Ok, S::Error> {
        ser.collect_seq(v.iter().map(ToString::to_string))
    }

    pub fn deserialize<'de, T: Scalar, D: Deserializer<'de>>(de: D) -> Result<Vec<T>, D::Error> {
        Vec::<String>::deserialize(de)?
            .into_iter()
            .map(|s| s.parse().map_err(|_| D::Error::custom(format!("invalid scalar {s}"))))
            .collect()
    }
}
