//! Cuspidal circles of GL(2) labelled by admissible pairs over a totally
//! ramified quadratic extension, and their base change along unramified
//! extensions of odd degree.
//!
//! Whether a character factors through the norm is not decided here; the two
//! admissibility conditions arrive as flags and are only checked for
//! consistency with the extension data.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::extension_tower::{
    compose_tower, conductor_transport, ExtensionData, RamificationFiltration, RamifiedExtension,
};
use crate::ktheory::{induced_map, CircleMatch, CircleSpace, KMorphism, ProperCircleMap};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct XiLabel {
    pub conductor: u64,
    pub index: u64,
    pub unitary: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AdmissibilityFlags {
    /// `xi` does not factor through the norm.
    pub not_norm_factor: bool,
    /// `xi` restricted to the level-one units factors through the norm.
    pub level_one_norm_factor: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AdmissiblePair {
    pub quad: RamifiedExtension,
    pub xi: XiLabel,
    pub flags: AdmissibilityFlags,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AdmissibilityFailure {
    NotQuadratic,
    /// `xi` factors through the norm.
    FactorsThroughNorm,
    /// `xi` is a norm on level-one units but the extension is ramified.
    RamifiedLevelOneNorm,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ScopeViolation {
    NotTotallyRamified,
    NotUnitary,
    PositiveCharacteristic,
    ResidueCharacteristicTwo,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdmissibilityReport {
    pub admissible: bool,
    pub failures: Vec<AdmissibilityFailure>,
    pub in_scope: bool,
    pub scope_violations: Vec<ScopeViolation>,
}

pub fn validate_admissible(pair: &AdmissiblePair) -> AdmissibilityReport {
    let ext = &pair.quad.ext;
    let mut failures = Vec::new();
    if ext.degree() != 2 {
        failures.push(AdmissibilityFailure::NotQuadratic);
    }
    if !pair.flags.not_norm_factor {
        failures.push(AdmissibilityFailure::FactorsThroughNorm);
    }
    if pair.flags.level_one_norm_factor && !ext.is_unramified() {
        failures.push(AdmissibilityFailure::RamifiedLevelOneNorm);
    }
    let mut scope_violations = Vec::new();
    if !(ext.e() == 2 && ext.f() == 1) {
        scope_violations.push(ScopeViolation::NotTotallyRamified);
    }
    if !pair.xi.unitary {
        scope_violations.push(ScopeViolation::NotUnitary);
    }
    if !ext.base().char_zero() {
        scope_violations.push(ScopeViolation::PositiveCharacteristic);
    }
    if ext.base().p() == 2 {
        scope_violations.push(ScopeViolation::ResidueCharacteristicTwo);
    }
    AdmissibilityReport {
        admissible: failures.is_empty(),
        failures,
        in_scope: scope_violations.is_empty(),
        scope_violations,
    }
}

/// A cuspidal circle and its torsion number.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CuspidalCircle {
    pub label: AdmissiblePair,
    pub torsion: u64,
}

impl CuspidalCircle {
    /// The circle of a pair in the totally ramified scope, where `t = 1`.
    pub fn totally_ramified(pair: AdmissiblePair) -> Result<Self> {
        check_pair(&pair)?;
        Ok(Self { label: pair, torsion: 1 })
    }

    pub fn name(&self) -> String {
        let base = self.label.quad.ext.base();
        format!(
            "T(E/F q={} e=2, xi[{},{}])",
            base.q(),
            self.label.xi.conductor,
            self.label.xi.index
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Compositum {
    /// `EL/L`.
    pub over_l: ExtensionData,
    /// `EL/E`.
    pub over_e: ExtensionData,
}

fn check_pair(pair: &AdmissiblePair) -> Result<()> {
    let report = validate_admissible(pair);
    if !report.admissible {
        return Err(Error::OutOfScope(format!(
            "pair is not admissible: {:?}",
            report.failures
        )));
    }
    if !report.in_scope {
        return Err(Error::OutOfScope(format!(
            "pair outside the totally ramified scope: {:?}",
            report.scope_violations
        )));
    }
    Ok(())
}

fn check_quad(quad: &ExtensionData) -> Result<()> {
    let base = quad.base();
    if !base.char_zero() {
        return Err(Error::OutOfScope("base field has positive characteristic".into()));
    }
    if base.p() == 2 {
        return Err(Error::OutOfScope("residue characteristic 2".into()));
    }
    if !(quad.e() == 2 && quad.f() == 1) {
        return Err(Error::OutOfScope(format!(
            "quadratic extension must be totally ramified (e = {}, f = {})",
            quad.e(),
            quad.f()
        )));
    }
    Ok(())
}

fn check_l(quad: &ExtensionData, l: &ExtensionData) -> Result<()> {
    if l.base() != quad.base() {
        return Err(Error::MismatchedResidueData(
            "L and E must share the base field".into(),
        ));
    }
    if !l.is_unramified() {
        return Err(Error::NotUnramified { e: l.e() });
    }
    Ok(())
}

pub fn compositum_invariants(quad: &ExtensionData, l: &ExtensionData) -> Result<Compositum> {
    check_quad(quad)?;
    check_l(quad, l)?;
    // E and L are linearly disjoint: one is totally ramified, the other unramified
    let over_l = ExtensionData::new(l.top(), 2, 1, true, true)?;
    let over_e = ExtensionData::unramified(quad.top(), l.f())?;
    let via_l = compose_tower(l, &over_l)?;
    let via_e = compose_tower(quad, &over_e)?;
    debug_assert_eq!((via_l.e(), via_l.f()), (via_e.e(), via_e.f()));
    Ok(Compositum { over_l, over_e })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Gl2BaseChange {
    pub source: CuspidalCircle,
    pub target: CuspidalCircle,
    pub compositum: Compositum,
    /// Circle degree `f(L/F)`.
    pub degree: u64,
}

impl Gl2BaseChange {
    pub fn circle_map(&self) -> Result<ProperCircleMap> {
        let source = CircleSpace::new(vec![self.source.name()])?;
        let target = CircleSpace::new(vec![self.target.name()])?;
        ProperCircleMap::new(
            source,
            target,
            vec![CircleMatch { source: 0, target: 0, degree: self.degree }],
        )
    }

    pub fn k_matrices(&self) -> Result<(KMorphism, KMorphism)> {
        induced_map(&self.circle_map()?)
    }
}

/// Base change along an unramified `L/F` of odd degree: the circle of
/// `(E/F, xi)` goes to the circle of `(EL/L, xi o N)` by `z -> z^f`.
pub fn bc_gl2(pair: &AdmissiblePair, l: &ExtensionData) -> Result<Gl2BaseChange> {
    check_pair(pair)?;
    check_quad(&pair.quad.ext)?;
    check_l(&pair.quad.ext, l)?;
    if l.f().is_multiple_of(2) {
        return Err(Error::EvenDegree { f: l.f() });
    }
    let compositum = compositum_invariants(&pair.quad.ext, l)?;
    let conductor = conductor_transport(&RamificationFiltration::unramified(), pair.xi.conductor)?;
    let target_pair = AdmissiblePair {
        quad: RamifiedExtension::tame(compositum.over_l)?,
        xi: XiLabel { conductor, ..pair.xi },
        flags: pair.flags,
    };
    Ok(Gl2BaseChange {
        source: CuspidalCircle { label: pair.clone(), torsion: 1 },
        target: CuspidalCircle { label: target_pair, torsion: 1 },
        compositum,
        degree: l.f(),
    })
}
