use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Residue data of a nonarchimedean local field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "FieldRecord", into = "FieldRecord")]
pub struct LocalFieldData {
    q: u64,
    p: u64,
    char_zero: bool,
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FieldRecord {
    q: u64,
    p: u64,
    #[serde(default = "default_true")]
    char_zero: bool,
}

fn default_true() -> bool {
    true
}

impl TryFrom<FieldRecord> for LocalFieldData {
    type Error = Error;

    fn try_from(r: FieldRecord) -> Result<Self> {
        Self::new(r.q, r.p, r.char_zero)
    }
}

impl From<LocalFieldData> for FieldRecord {
    fn from(d: LocalFieldData) -> Self {
        FieldRecord { q: d.q, p: d.p, char_zero: d.char_zero }
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl LocalFieldData {
    /// `q` must be a positive power of the prime `p`.
    pub fn new(q: u64, p: u64, char_zero: bool) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::invalid(format!("residue characteristic {p} is not prime")));
        }
        let mut rest = q;
        let mut k = 0;
        while rest > 1 && rest.is_multiple_of(p) {
            rest /= p;
            k += 1;
        }
        if rest != 1 || k == 0 {
            return Err(Error::invalid(format!(
                "residue cardinality {q} is not a positive power of {p}"
            )));
        }
        Ok(Self { q, p, char_zero })
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn char_zero(&self) -> bool {
        self.char_zero
    }
}

/// Ramification class of a finite extension, read off from `(e, f, p)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RamificationClass {
    Trivial,
    Unramified,
    TameTotallyRamified,
    TameMixed,
    Wild,
}

impl RamificationClass {
    pub fn is_tame_or_unramified(self) -> bool {
        !matches!(self, RamificationClass::Wild)
    }
}

impl std::fmt::Display for RamificationClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            RamificationClass::Trivial => "trivial",
            RamificationClass::Unramified => "unramified",
            RamificationClass::TameTotallyRamified => "tame_totally_ramified",
            RamificationClass::TameMixed => "tame_mixed",
            RamificationClass::Wild => "wild",
        })
    }
}

/// A finite extension E/F described by its numerical invariants.
///
/// Serialized flat as `{q, p, char_zero, e, f, galois, cyclic}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "ExtensionDataRecord", into = "ExtensionDataRecord")]
pub struct ExtensionData {
    base: LocalFieldData,
    e: u64,
    f: u64,
    galois: bool,
    cyclic: bool,
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ExtensionDataRecord {
    #[serde(flatten)]
    base: FieldRecord,
    e: u64,
    f: u64,
    galois: bool,
    cyclic: bool,
}

impl TryFrom<ExtensionDataRecord> for ExtensionData {
    type Error = Error;

    fn try_from(r: ExtensionDataRecord) -> Result<Self> {
        Self::new(LocalFieldData::try_from(r.base)?, r.e, r.f, r.galois, r.cyclic)
    }
}

impl From<ExtensionData> for ExtensionDataRecord {
    fn from(x: ExtensionData) -> Self {
        ExtensionDataRecord {
            base: x.base.into(),
            e: x.e,
            f: x.f,
            galois: x.galois,
            cyclic: x.cyclic,
        }
    }
}

impl ExtensionData {
    pub fn new(base: LocalFieldData, e: u64, f: u64, galois: bool, cyclic: bool) -> Result<Self> {
        if e == 0 || f == 0 {
            return Err(Error::invalid("ramification index and residue degree must be positive"));
        }
        e.checked_mul(f).ok_or(Error::Overflow("degree e*f"))?;
        base.q.checked_pow(u32::try_from(f).map_err(|_| Error::Overflow("q^f"))?)
            .ok_or(Error::Overflow("residue cardinality q^f"))?;
        if cyclic && !galois {
            return Err(Error::invalid("a cyclic extension must be Galois"));
        }
        Ok(Self { base, e, f, galois, cyclic })
    }

    /// Unramified extension of degree `f`; always Galois with cyclic group.
    pub fn unramified(base: LocalFieldData, f: u64) -> Result<Self> {
        Self::new(base, 1, f, true, true)
    }

    /// The trivial extension F/F.
    pub fn trivial(base: LocalFieldData) -> Self {
        Self { base, e: 1, f: 1, galois: true, cyclic: true }
    }

    pub fn base(&self) -> LocalFieldData {
        self.base
    }

    pub fn e(&self) -> u64 {
        self.e
    }

    pub fn f(&self) -> u64 {
        self.f
    }

    pub fn degree(&self) -> u64 {
        self.e * self.f
    }

    pub fn galois(&self) -> bool {
        self.galois
    }

    pub fn cyclic(&self) -> bool {
        self.cyclic
    }

    /// Residue data of the top field E.
    pub fn top(&self) -> LocalFieldData {
        LocalFieldData {
            q: self.base.q.pow(self.f as u32),
            p: self.base.p,
            char_zero: self.base.char_zero,
        }
    }

    pub fn is_unramified(&self) -> bool {
        self.e == 1
    }

    pub fn is_totally_ramified(&self) -> bool {
        self.f == 1
    }

    pub fn classify(&self) -> RamificationClass {
        classify(self)
    }
}

pub fn classify(ext: &ExtensionData) -> RamificationClass {
    if ext.degree() == 1 {
        RamificationClass::Trivial
    } else if ext.e == 1 {
        RamificationClass::Unramified
    } else if ext.e.is_multiple_of(ext.base.p) {
        RamificationClass::Wild
    } else if ext.f == 1 {
        RamificationClass::TameTotallyRamified
    } else {
        RamificationClass::TameMixed
    }
}

/// Stacks `upper` (over the top field of `lower`) on `lower`.
///
/// `e` and `f` multiply; the Galois and cyclic flags are only kept when both
/// layers carry them, which may under-report for the composite.
pub fn compose_tower(lower: &ExtensionData, upper: &ExtensionData) -> Result<ExtensionData> {
    let top = lower.top();
    if upper.base != top {
        return Err(Error::MismatchedResidueData(format!(
            "upper extension sits over q = {}, p = {}, but the lower top field has q = {}, p = {}",
            upper.base.q, upper.base.p, top.q, top.p
        )));
    }
    let e = lower.e.checked_mul(upper.e).ok_or(Error::Overflow("tower e"))?;
    let f = lower.f.checked_mul(upper.f).ok_or(Error::Overflow("tower f"))?;
    ExtensionData::new(
        lower.base,
        e,
        f,
        lower.galois && upper.galois,
        lower.cyclic && upper.cyclic,
    )
}

/// Order of `U_F / U_F^m`, namely `(q - 1) q^(m-1)`.
pub fn unit_quotient_order(q: u64, m: u32) -> Result<u128> {
    if m == 0 {
        return Err(Error::invalid("unit quotient level m must be at least 1"));
    }
    if q < 2 {
        return Err(Error::invalid(format!("residue cardinality {q} is not a prime power")));
    }
    u128::from(q)
        .checked_pow(m - 1)
        .and_then(|qq| qq.checked_mul(u128::from(q - 1)))
        .ok_or(Error::Overflow("unit quotient order"))
}
