//! Finite extensions of nonarchimedean local fields, described by numerical
//! invariants, and the ramification functions computed from them.

mod field;
mod filtration;
mod herbrand;

pub use field::{
    classify, compose_tower, unit_quotient_order, ExtensionData, LocalFieldData,
    RamificationClass,
};
pub use filtration::RamificationFiltration;
pub use herbrand::{
    conductor_transport, norm_level_image, phi, phi_fn, psi, psi_fn, PiecewiseLinearFn,
};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An extension together with its ramification filtration.
///
/// Serialized as `{q, p, e, f, galois, cyclic, filtration_orders}`; a missing
/// `filtration_orders` is filled in for tame and unramified extensions.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "ExtensionRecord", into = "ExtensionRecord")]
pub struct RamifiedExtension {
    pub ext: ExtensionData,
    pub filtration: RamificationFiltration,
}

impl RamifiedExtension {
    pub fn new(ext: ExtensionData, filtration: RamificationFiltration) -> Result<Self> {
        filtration.check_against(&ext)?;
        Ok(Self { ext, filtration })
    }

    /// Tame or unramified extension with its canonical filtration.
    pub fn tame(ext: ExtensionData) -> Result<Self> {
        let filtration = RamificationFiltration::for_tame(&ext)?;
        Self::new(ext, filtration)
    }
}

fn default_true() -> bool {
    true
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExtensionRecord {
    pub q: u64,
    pub p: u64,
    #[serde(default = "default_true")]
    pub char_zero: bool,
    pub e: u64,
    pub f: u64,
    pub galois: bool,
    pub cyclic: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub filtration_orders: Option<Vec<u64>>,
}

impl TryFrom<ExtensionRecord> for RamifiedExtension {
    type Error = Error;

    fn try_from(r: ExtensionRecord) -> Result<Self> {
        let base = LocalFieldData::new(r.q, r.p, r.char_zero)?;
        let ext = ExtensionData::new(base, r.e, r.f, r.galois, r.cyclic)?;
        match r.filtration_orders {
            Some(orders) => Self::new(ext, RamificationFiltration::new(orders)?),
            None => Self::tame(ext),
        }
    }
}

impl From<RamifiedExtension> for ExtensionRecord {
    fn from(x: RamifiedExtension) -> Self {
        let base = x.ext.base();
        ExtensionRecord {
            q: base.q(),
            p: base.p(),
            char_zero: base.char_zero(),
            e: x.ext.e(),
            f: x.ext.f(),
            galois: x.ext.galois(),
            cyclic: x.ext.cyclic(),
            filtration_orders: Some(x.filtration.orders().to_vec()),
        }
    }
}
