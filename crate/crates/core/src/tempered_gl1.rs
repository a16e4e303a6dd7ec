//! Tempered dual of GL(1) as a labelled union of circles, the Weil-degree
//! bookkeeping behind `z -> z^f`, and base change with conductor transport.

use std::collections::BTreeMap;

use num_complex::Complex;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::extension_tower::{
    conductor_transport, unit_quotient_order, ExtensionData, RamificationClass,
    RamificationFiltration,
};
use crate::ktheory::{CircleSpace, CircleMatch, ProperCircleMap};
use crate::scalar::{complex_pow, on_unit_circle, Scalar};

/// Hard cap on enumerated circles in a truncated dual.
pub const MAX_CIRCLES: u128 = 1 << 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FieldSide {
    E,
    F,
}

/// The degree `d(w)` of an abstract Weil-group element, tagged by field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct WeilDegree {
    pub degree: i64,
    pub side: FieldSide,
}

impl WeilDegree {
    pub fn on_e(degree: i64) -> Self {
        Self { degree, side: FieldSide::E }
    }

    pub fn on_f(degree: i64) -> Self {
        Self { degree, side: FieldSide::F }
    }
}

/// `W_E` inside `W_F` multiplies degrees by the residue degree:
/// `d_F(w) = f d_E(w)`.
pub fn include_weil(m: WeilDegree, f: u64) -> Result<WeilDegree> {
    if m.side != FieldSide::E {
        return Err(Error::invalid("include_weil takes an E-side degree"));
    }
    if f == 0 {
        return Err(Error::invalid("residue degree f must be positive"));
    }
    let f = i64::try_from(f).map_err(|_| Error::Overflow("Weil degree"))?;
    let degree = m.degree.checked_mul(f).ok_or(Error::Overflow("Weil degree"))?;
    Ok(WeilDegree::on_f(degree))
}

/// `w -> z^{d(w)}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound(serialize = "S: Scalar", deserialize = "S: Scalar"))]
pub struct UnramifiedQuasicharacter<S: Scalar> {
    #[serde(with = "crate::scalar::complex_as_strings")]
    z: Complex<S>,
    side: FieldSide,
}

impl<S: Scalar> UnramifiedQuasicharacter<S> {
    pub fn new(z: Complex<S>, side: FieldSide) -> Result<Self> {
        if z.is_zero() {
            return Err(Error::ZeroCoordinate);
        }
        Ok(Self { z, side })
    }

    pub fn z(&self) -> &Complex<S> {
        &self.z
    }

    pub fn side(&self) -> FieldSide {
        self.side
    }

    pub fn is_tempered(&self) -> bool {
        on_unit_circle(&self.z)
    }

    pub fn eval(&self, w: WeilDegree) -> Result<Complex<S>> {
        if w.side != self.side {
            return Err(Error::invalid(format!(
                "character lives on {:?} but the degree is on {:?}",
                self.side, w.side
            )));
        }
        Ok(complex_pow(&self.z, w.degree))
    }
}

/// Restriction of an F-side unramified quasicharacter to `W_E`: parameter
/// `z^f`.
pub fn bc_unramified_quasichar<S: Scalar>(
    chi: &UnramifiedQuasicharacter<S>,
    f: u64,
) -> Result<UnramifiedQuasicharacter<S>> {
    if chi.side != FieldSide::F {
        return Err(Error::invalid("base change starts from an F-side character"));
    }
    if f == 0 {
        return Err(Error::invalid("residue degree f must be positive"));
    }
    let f = i64::try_from(f).map_err(|_| Error::Overflow("residue degree"))?;
    UnramifiedQuasicharacter::new(complex_pow(&chi.z, f), FieldSide::E)
}

/// A character of the unit group, known only by its conductor and an
/// index among the characters of that conductor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CharacterLabel {
    pub conductor: u64,
    pub index: u64,
}

impl CharacterLabel {
    pub fn new(conductor: u64, index: u64) -> Self {
        Self { conductor, index }
    }

    pub fn is_unramified(&self) -> bool {
        self.conductor == 0
    }

    pub fn circle_name(&self, side: FieldSide) -> String {
        let prefix = match side {
            FieldSide::F => "chi",
            FieldSide::E => "eta",
        };
        format!("{prefix}[{},{}]", self.conductor, self.index)
    }
}

/// Number of characters of `U` with conductor exactly `c`.
pub fn characters_with_conductor(q: u64, c: u64) -> Result<u128> {
    match c {
        0 => Ok(1),
        _ => {
            let m = u32::try_from(c).map_err(|_| Error::Overflow("conductor"))?;
            let upto = unit_quotient_order(q, m)?;
            let below = if m == 1 { 1 } else { unit_quotient_order(q, m - 1)? };
            Ok(upto - below)
        }
    }
}

/// Circles of the tempered dual with conductor at most `bound`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "DualRecord", into = "DualRecord")]
pub struct TemperedDualGL1 {
    q: u64,
    bound: u64,
    circles: Vec<CharacterLabel>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DualRecord {
    pub q: u64,
    #[serde(rename = "M")]
    pub bound: u64,
    pub circles: Vec<CharacterLabel>,
}

impl TryFrom<DualRecord> for TemperedDualGL1 {
    type Error = Error;

    fn try_from(r: DualRecord) -> Result<Self> {
        let mut circles = r.circles;
        circles.sort();
        for w in circles.windows(2) {
            if w[0] == w[1] {
                return Err(Error::invalid(format!("duplicate circle {:?}", w[0])));
            }
        }
        for c in &circles {
            if c.conductor > r.bound {
                return Err(Error::invalid(format!(
                    "circle {c:?} exceeds the conductor bound {}",
                    r.bound
                )));
            }
            if u128::from(c.index) >= characters_with_conductor(r.q, c.conductor)? {
                return Err(Error::invalid(format!(
                    "index {} out of range for conductor {}",
                    c.index, c.conductor
                )));
            }
        }
        Ok(Self { q: r.q, bound: r.bound, circles })
    }
}

impl From<TemperedDualGL1> for DualRecord {
    fn from(d: TemperedDualGL1) -> Self {
        DualRecord { q: d.q, bound: d.bound, circles: d.circles }
    }
}

impl TemperedDualGL1 {
    /// Every label `(c, j)` with `c <= bound`, ordered by `(c, j)`.
    pub fn truncated(q: u64, bound: u64) -> Result<Self> {
        let mut counts = Vec::new();
        let mut total: u128 = 0;
        for c in 0..=bound {
            let n = characters_with_conductor(q, c)?;
            total = total.saturating_add(n);
            if total > MAX_CIRCLES {
                return Err(Error::TruncationTooLarge { count: total, limit: MAX_CIRCLES });
            }
            counts.push(n as u64);
        }
        let circles = counts
            .iter()
            .enumerate()
            .flat_map(|(c, &n)| (0..n).map(move |j| CharacterLabel::new(c as u64, j)))
            .collect();
        Ok(Self { q, bound, circles })
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn bound(&self) -> u64 {
        self.bound
    }

    pub fn circles(&self) -> &[CharacterLabel] {
        &self.circles
    }

    pub fn circle_space(&self, side: FieldSide) -> CircleSpace {
        CircleSpace::from_unique_labels(self.circles.iter().map(|c| c.circle_name(side)).collect())
    }
}

/// One circle of the source mapped onto a circle of the target by `z -> z^degree`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CirclePair {
    pub from: CharacterLabel,
    pub to: CharacterLabel,
    pub degree: u64,
}

/// Base change on the truncated GL(1) dual.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Gl1BaseChange {
    pub degree: u64,
    pub pairs: Vec<CirclePair>,
    /// Source conductor to target conductor.
    pub conductor_map: BTreeMap<u64, u64>,
}

fn check_gl1_scope(ext: &ExtensionData, filt: &RamificationFiltration) -> Result<()> {
    filt.check_against(ext)?;
    let ok = match ext.classify() {
        RamificationClass::Wild => ext.is_totally_ramified() && ext.galois() && ext.cyclic(),
        _ => true,
    };
    if ok {
        Ok(())
    } else {
        Err(Error::UnsupportedExtension(format!(
            "wild extension (e = {}, p = {}) that is not cyclic totally ramified",
            ext.e(),
            ext.base().p()
        )))
    }
}

/// `chi -> chi o N_{E/F}` circle by circle, with target index overrides for
/// characters known to collide.
pub fn bc_gl1_with_collisions(
    ext: &ExtensionData,
    filt: &RamificationFiltration,
    dual: &TemperedDualGL1,
    target_index: &BTreeMap<CharacterLabel, u64>,
) -> Result<Gl1BaseChange> {
    check_gl1_scope(ext, filt)?;
    if dual.q != ext.base().q() {
        return Err(Error::MismatchedResidueData(format!(
            "dual has q = {} but the extension base has q = {}",
            dual.q,
            ext.base().q()
        )));
    }
    let q_e = ext.top().q();
    let mut conductor_map = BTreeMap::new();
    let mut pairs = Vec::with_capacity(dual.circles.len());
    for &from in &dual.circles {
        let c_e = match conductor_map.get(&from.conductor) {
            Some(&c) => c,
            None => {
                let c = conductor_transport(filt, from.conductor)?;
                conductor_map.insert(from.conductor, c);
                c
            }
        };
        let index = target_index.get(&from).copied().unwrap_or(from.index);
        if u128::from(index) >= characters_with_conductor(q_e, c_e)? {
            return Err(Error::invalid(format!(
                "target index {index} out of range for conductor {c_e}"
            )));
        }
        pairs.push(CirclePair {
            from,
            to: CharacterLabel::new(c_e, index),
            degree: ext.f(),
        });
    }
    Ok(Gl1BaseChange { degree: ext.f(), pairs, conductor_map })
}

/// Base change with every label keeping its index.
pub fn bc_gl1(
    ext: &ExtensionData,
    filt: &RamificationFiltration,
    dual: &TemperedDualGL1,
) -> Result<Gl1BaseChange> {
    bc_gl1_with_collisions(ext, filt, dual, &BTreeMap::new())
}

impl Gl1BaseChange {
    /// Target labels hit by the map, ordered and deduplicated.
    pub fn image(&self) -> Vec<CharacterLabel> {
        let mut out: Vec<CharacterLabel> = self.pairs.iter().map(|p| p.to).collect();
        out.sort();
        out.dedup();
        out
    }

    /// The map as a proper map of circle spaces. Columns are the labels of
    /// `target` when given (it must contain the image), else just the image.
    pub fn circle_map(
        &self,
        source: &TemperedDualGL1,
        target: Option<&TemperedDualGL1>,
    ) -> Result<ProperCircleMap> {
        let targets: Vec<CharacterLabel> = match target {
            Some(t) => t.circles.clone(),
            None => self.image(),
        };
        // both label lists are sorted
        let matches = self
            .pairs
            .iter()
            .map(|p| {
                let s = source
                    .circles
                    .binary_search(&p.from)
                    .map_err(|_| Error::invalid(format!("{:?} not in source", p.from)))?;
                let t = targets
                    .binary_search(&p.to)
                    .map_err(|_| Error::invalid(format!("{:?} not in target", p.to)))?;
                Ok(CircleMatch { source: s, target: t, degree: p.degree })
            })
            .collect::<Result<Vec<_>>>()?;
        ProperCircleMap::new(
            source.circle_space(FieldSide::F),
            CircleSpace::from_unique_labels(
                targets.iter().map(|c| c.circle_name(FieldSide::E)).collect(),
            ),
            matches,
        )
    }
}

/// Closed arc `[start, end]` on the circle, angles in turns.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound(serialize = "S: Scalar", deserialize = "S: Scalar"))]
pub struct Arc<S: Scalar> {
    #[serde(with = "crate::scalar::as_string")]
    pub start: S,
    #[serde(with = "crate::scalar::as_string")]
    pub end: S,
}

impl<S: Scalar> Arc<S> {
    pub fn new(start: S, end: S) -> Result<Self> {
        if start.is_negative() || end > S::one() {
            return Err(Error::invalid("arc endpoints must lie in [0, 1] turns"));
        }
        if end < start {
            return Err(Error::invalid("empty arc: end precedes start"));
        }
        Ok(Self { start, end })
    }

    pub fn length(&self) -> S {
        self.end.clone() - self.start.clone()
    }

    pub fn is_full(&self) -> bool {
        self.length() == S::one()
    }
}

/// Preimage of a closed arc under `z -> z^f`: the `f` arcs
/// `[(start + k)/f, (end + k)/f]`, merged when they close up.
pub fn properness_check<S: Scalar>(f: u64, arc: &Arc<S>) -> Result<Vec<Arc<S>>> {
    if f == 0 {
        return Err(Error::invalid("map degree must be positive"));
    }
    if arc.is_full() {
        return Ok(vec![arc.clone()]);
    }
    let fs = S::from_u64(f).ok_or(Error::Overflow("map degree"))?;
    Ok((0..f)
        .map(|k| {
            let k = S::from_u64(k).expect("k < f fits");
            Arc {
                start: (arc.start.clone() + k.clone()) / fs.clone(),
                end: (arc.end.clone() + k) / fs.clone(),
            }
        })
        .collect())
}
