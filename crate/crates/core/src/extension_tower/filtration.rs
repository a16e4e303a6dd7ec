use serde::{Deserialize, Serialize};

use super::field::{ExtensionData, RamificationClass};
use crate::error::{Error, Result};

/// Orders `|G_0| >= |G_1| >= ...` of the lower-numbering ramification groups.
///
/// Trailing trivial groups are dropped, so the empty list is the unramified
/// filtration and `order(i) == 1` for every index past the end.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(try_from = "Vec<u64>", into = "Vec<u64>")]
pub struct RamificationFiltration {
    orders: Vec<u64>,
}

impl RamificationFiltration {
    pub fn new(mut orders: Vec<u64>) -> Result<Self> {
        if orders.contains(&0) {
            return Err(Error::invalid("ramification group orders must be positive"));
        }
        for (i, pair) in orders.windows(2).enumerate() {
            if pair[0] % pair[1] != 0 {
                return Err(Error::invalid(format!(
                    "orders must form a subgroup chain: |G_{}| = {} does not divide |G_{}| = {}",
                    i + 1,
                    pair[1],
                    i,
                    pair[0]
                )));
            }
        }
        while orders.last() == Some(&1) {
            orders.pop();
        }
        Ok(Self { orders })
    }

    pub fn unramified() -> Self {
        Self { orders: Vec::new() }
    }

    /// Tame filtration: `G_0` of order `e`, `G_1` trivial.
    pub fn tame(e: u64) -> Result<Self> {
        Self::new(vec![e])
    }

    /// Cyclic totally ramified of prime degree `p` with its single jump at `t`:
    /// `G_0 = ... = G_t` of order `p`, `G_{t+1}` trivial.
    pub fn cyclic_prime_degree(p: u64, t: usize) -> Result<Self> {
        Self::new(vec![p; t + 1])
    }

    /// Default filtration for a tame or unramified extension.
    pub fn for_tame(ext: &ExtensionData) -> Result<Self> {
        if ext.classify() == RamificationClass::Wild {
            return Err(Error::invalid(
                "wild extensions need an explicit ramification filtration",
            ));
        }
        Self::tame(ext.e())
    }

    pub fn orders(&self) -> &[u64] {
        &self.orders
    }

    /// `|G_i|`, with `|G_i| = 1` past the last recorded jump.
    pub fn order(&self, i: usize) -> u64 {
        self.orders.get(i).copied().unwrap_or(1)
    }

    /// `|G_0|`, the ramification index of the extension.
    pub fn inertia_order(&self) -> u64 {
        self.order(0)
    }

    pub fn is_unramified(&self) -> bool {
        self.orders.is_empty()
    }

    /// Whether `G_1` is trivial.
    pub fn is_tame(&self) -> bool {
        self.order(1) == 1
    }

    /// Non-fatal findings: `|G_0/G_1|` should be prime to `p`.
    pub fn warnings(&self, p: u64) -> Vec<String> {
        let index = self.order(0) / self.order(1);
        if p > 1 && index.is_multiple_of(p) {
            vec![format!("|G_0/G_1| = {index} is divisible by the residue characteristic {p}")]
        } else {
            Vec::new()
        }
    }

    /// The filtration must start at `|G_0| = e`, and a tame extension cannot
    /// carry higher ramification.
    pub fn check_against(&self, ext: &ExtensionData) -> Result<()> {
        if self.inertia_order() != ext.e() {
            return Err(Error::invalid(format!(
                "|G_0| = {} but the ramification index is {}",
                self.inertia_order(),
                ext.e()
            )));
        }
        if ext.classify().is_tame_or_unramified() && !self.is_tame() {
            return Err(Error::invalid(format!(
                "tame extension (e = {}) with nontrivial G_1 of order {}",
                ext.e(),
                self.order(1)
            )));
        }
        Ok(())
    }
}

impl TryFrom<Vec<u64>> for RamificationFiltration {
    type Error = Error;

    fn try_from(v: Vec<u64>) -> Result<Self> {
        Self::new(v)
    }
}

impl From<RamificationFiltration> for Vec<u64> {
    fn from(f: RamificationFiltration) -> Self {
        f.orders
    }
}
