//! K-theory of finite disjoint unions of circles and the integer matrices
//! induced by proper maps between them.
//!
//! Matrices put source components on rows. Since K-theory is contravariant,
//! the map of a composite `g o f` is `K(f) * K(g)`.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;
use std::sync::Arc;

use num_rational::Ratio;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Dense `entries` are emitted only up to this many cells.
pub const DENSE_LIMIT: usize = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum Provenance {
    #[default]
    Circle,
    /// A `Sym^n` of the circle, replaced by a circle through `[z_i] -> prod z_i`.
    SymReduced { n: u32 },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CircleComponent {
    pub label: String,
    #[serde(default)]
    pub provenance: Provenance,
}

impl CircleComponent {
    pub fn circle(label: impl Into<String>) -> Self {
        Self { label: label.into(), provenance: Provenance::Circle }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(try_from = "Vec<CircleComponent>", into = "Vec<CircleComponent>")]
pub struct CircleSpace {
    components: Vec<CircleComponent>,
}

impl TryFrom<Vec<CircleComponent>> for CircleSpace {
    type Error = Error;

    fn try_from(components: Vec<CircleComponent>) -> Result<Self> {
        let mut seen = HashSet::with_capacity(components.len());
        for c in &components {
            if !seen.insert(c.label.as_str()) {
                return Err(Error::invalid(format!("duplicate circle label {}", c.label)));
            }
        }
        Ok(Self { components })
    }
}

impl From<CircleSpace> for Vec<CircleComponent> {
    fn from(s: CircleSpace) -> Self {
        s.components
    }
}

impl CircleSpace {
    /// Plain circles with the given labels.
    pub fn new(labels: Vec<String>) -> Result<Self> {
        Self::try_from(labels.into_iter().map(CircleComponent::circle).collect::<Vec<_>>())
    }

    pub fn from_components(components: Vec<CircleComponent>) -> Result<Self> {
        Self::try_from(components)
    }

    pub fn components(&self) -> &[CircleComponent] {
        &self.components
    }

    /// Labels known to be distinct, skipping the uniqueness check.
    pub(crate) fn from_unique_labels(labels: Vec<String>) -> Self {
        Self { components: labels.into_iter().map(CircleComponent::circle).collect() }
    }

    pub fn labels(&self) -> Vec<String> {
        self.components.iter().map(|c| c.label.clone()).collect()
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }
}

/// Source component `source` wraps `degree` times around target component `target`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CircleMatch {
    pub source: usize,
    pub target: usize,
    pub degree: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "MapRecord", into = "MapRecord")]
pub struct ProperCircleMap {
    source: CircleSpace,
    target: CircleSpace,
    matches: Vec<CircleMatch>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapRecord {
    pub source: CircleSpace,
    pub target: CircleSpace,
    pub matches: Vec<CircleMatch>,
}

impl TryFrom<MapRecord> for ProperCircleMap {
    type Error = Error;

    fn try_from(r: MapRecord) -> Result<Self> {
        Self::new(r.source, r.target, r.matches)
    }
}

impl From<ProperCircleMap> for MapRecord {
    fn from(m: ProperCircleMap) -> Self {
        MapRecord { source: m.source, target: m.target, matches: m.matches }
    }
}

impl ProperCircleMap {
    pub fn new(source: CircleSpace, target: CircleSpace, mut matches: Vec<CircleMatch>) -> Result<Self> {
        let mut used = BTreeSet::new();
        for m in &matches {
            if m.source >= source.len() || m.target >= target.len() {
                return Err(Error::invalid(format!(
                    "match {} -> {} out of range ({} x {})",
                    m.source,
                    m.target,
                    source.len(),
                    target.len()
                )));
            }
            if m.degree == 0 {
                return Err(Error::invalid("map degrees must be at least 1"));
            }
            if !used.insert(m.source) {
                return Err(Error::invalid(format!(
                    "source component {} is matched twice",
                    m.source
                )));
            }
        }
        matches.sort_by_key(|m| m.source);
        Ok(Self { source, target, matches })
    }

    /// Every component onto itself with degree 1.
    pub fn identity(space: CircleSpace) -> Self {
        let matches = (0..space.len())
            .map(|i| CircleMatch { source: i, target: i, degree: 1 })
            .collect();
        Self { source: space.clone(), target: space, matches }
    }

    pub fn source(&self) -> &CircleSpace {
        &self.source
    }

    pub fn target(&self) -> &CircleSpace {
        &self.target
    }

    pub fn matches(&self) -> &[CircleMatch] {
        &self.matches
    }

    /// `then o self`.
    pub fn compose(&self, then: &ProperCircleMap) -> Result<ProperCircleMap> {
        if self.target != then.source {
            return Err(Error::invalid("composition: target and source spaces differ"));
        }
        let next: BTreeMap<usize, &CircleMatch> =
            then.matches.iter().map(|m| (m.source, m)).collect();
        let matches = self
            .matches
            .iter()
            .filter_map(|m| {
                next.get(&m.target).map(|n| {
                    m.degree
                        .checked_mul(n.degree)
                        .map(|degree| CircleMatch { source: m.source, target: n.target, degree })
                        .ok_or(Error::Overflow("composite degree"))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        ProperCircleMap::new(self.source.clone(), then.target.clone(), matches)
    }
}

/// Free abelian group with one generator per circle.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KGroup {
    pub degree: u8,
    pub rank: usize,
    pub basis: Vec<String>,
}

impl fmt::Display for KGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "K^{} = Z^{}", self.degree, self.rank)
    }
}

pub fn k_groups(space: &CircleSpace) -> (KGroup, KGroup) {
    let group = |j: u8| KGroup {
        degree: j,
        rank: space.len(),
        basis: space.components.iter().map(|c| format!("alpha{j}[{}]", c.label)).collect(),
    };
    (group(0), group(1))
}

/// Integer matrix, rows indexed by source labels and columns by target labels.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "KMorphismRecord", into = "KMorphismRecord")]
pub struct KMorphism {
    rows: Arc<[String]>,
    cols: Arc<[String]>,
    /// `(row, col) -> value`, nonzero values only.
    entries: BTreeMap<(usize, usize), i64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct KMorphismRecord {
    pub rows: Vec<String>,
    pub cols: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub entries: Option<Vec<Vec<i64>>>,
    pub sparse: Vec<(usize, usize, i64)>,
}

impl TryFrom<KMorphismRecord> for KMorphism {
    type Error = Error;

    fn try_from(r: KMorphismRecord) -> Result<Self> {
        let mut entries = BTreeMap::new();
        for &(i, j, v) in &r.sparse {
            if i >= r.rows.len() || j >= r.cols.len() {
                return Err(Error::invalid(format!("sparse entry ({i}, {j}) out of range")));
            }
            if v != 0 && entries.insert((i, j), v).is_some() {
                return Err(Error::invalid(format!("sparse entry ({i}, {j}) repeated")));
            }
        }
        let m = KMorphism { rows: r.rows.into(), cols: r.cols.into(), entries };
        if let Some(dense) = r.entries {
            if dense != m.dense() {
                return Err(Error::invalid("dense and sparse entries disagree"));
            }
        }
        Ok(m)
    }
}

impl From<KMorphism> for KMorphismRecord {
    fn from(m: KMorphism) -> Self {
        let entries = (m.rows.len() * m.cols.len() <= DENSE_LIMIT).then(|| m.dense());
        KMorphismRecord {
            sparse: m.entries.iter().map(|(&(i, j), &v)| (i, j, v)).collect(),
            rows: m.rows.to_vec(),
            cols: m.cols.to_vec(),
            entries,
        }
    }
}

impl KMorphism {
    pub fn zero(rows: Vec<String>, cols: Vec<String>) -> Self {
        Self { rows: rows.into(), cols: cols.into(), entries: BTreeMap::new() }
    }

    pub fn rows(&self) -> &[String] {
        &self.rows
    }

    pub fn cols(&self) -> &[String] {
        &self.cols
    }

    pub fn get(&self, row: usize, col: usize) -> i64 {
        self.entries.get(&(row, col)).copied().unwrap_or(0)
    }

    pub fn nonzero(&self) -> impl Iterator<Item = (usize, usize, i64)> + '_ {
        self.entries.iter().map(|(&(i, j), &v)| (i, j, v))
    }

    pub fn dense(&self) -> Vec<Vec<i64>> {
        let mut out = vec![vec![0; self.cols.len()]; self.rows.len()];
        for (&(i, j), &v) in &self.entries {
            out[i][j] = v;
        }
        out
    }

    pub fn is_identity(&self) -> bool {
        self.rows.len() == self.cols.len()
            && self.entries.len() == self.rows.len()
            && self.entries.iter().all(|(&(i, j), &v)| i == j && v == 1)
    }

    /// `self * rhs`; `self.cols` must equal `rhs.rows`.
    pub fn matmul(&self, rhs: &KMorphism) -> Result<KMorphism> {
        if self.cols != rhs.rows {
            return Err(Error::invalid("matrix product: inner labels differ"));
        }
        let mut by_row: BTreeMap<usize, Vec<(usize, i64)>> = BTreeMap::new();
        for (&(k, j), &v) in &rhs.entries {
            by_row.entry(k).or_default().push((j, v));
        }
        let mut entries: BTreeMap<(usize, usize), i64> = BTreeMap::new();
        for (&(i, k), &a) in &self.entries {
            for &(j, b) in by_row.get(&k).into_iter().flatten() {
                let prod = a.checked_mul(b).ok_or(Error::Overflow("matrix product"))?;
                let cell = entries.entry((i, j)).or_insert(0);
                *cell = cell.checked_add(prod).ok_or(Error::Overflow("matrix product"))?;
            }
        }
        entries.retain(|_, v| *v != 0);
        Ok(KMorphism { rows: self.rows.clone(), cols: rhs.cols.clone(), entries })
    }
}

/// `(K^0, K^1)` of a proper map: 1 on each match for `K^0`, the degree for `K^1`.
pub fn induced_map(m: &ProperCircleMap) -> Result<(KMorphism, KMorphism)> {
    let rows: Arc<[String]> = m.source.labels().into();
    let cols: Arc<[String]> = m.target.labels().into();
    let mut k0 = KMorphism { rows: rows.clone(), cols: cols.clone(), entries: BTreeMap::new() };
    let mut k1 = KMorphism { rows, cols, entries: BTreeMap::new() };
    for c in &m.matches {
        k0.entries.insert((c.source, c.target), 1);
        let d = i64::try_from(c.degree).map_err(|_| Error::Overflow("map degree"))?;
        k1.entries.insert((c.source, c.target), d);
    }
    Ok((k0, k1))
}

/// A `Sym^n` component carrying `(z_i) -> (z_i^f)`, replaced by a circle
/// carrying `z -> z^f`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReducedComponent {
    pub component: CircleComponent,
    pub degree: u64,
}

pub fn reduce_symmetric_component(label: &str, n: u32, f: u64) -> Result<ReducedComponent> {
    if n == 0 || f == 0 {
        return Err(Error::invalid("symmetric power and degree must be positive"));
    }
    let provenance = if n == 1 { Provenance::Circle } else { Provenance::SymReduced { n } };
    Ok(ReducedComponent {
        component: CircleComponent { label: label.to_string(), provenance },
        degree: f,
    })
}

type Turns = Ratio<i64>;

fn wrap_half(x: Turns) -> Turns {
    // representative in (-1/2, 1/2]
    let half = Turns::new(1, 2);
    let mut y = x - x.floor();
    if y > half {
        y -= Turns::one();
    }
    y
}

/// Winding number of a loop given by exact angles (in turns) at the
/// parameter values `k / samples`, `k = 0..=samples`. The loop must move less
/// than half a turn between consecutive samples.
pub fn winding_number<F>(samples: u32, angle_at: F) -> Result<i64>
where
    F: Fn(Turns) -> Turns,
{
    if samples == 0 {
        return Err(Error::InsufficientSamples { required: 1, given: 0 });
    }
    let n = i64::from(samples);
    let mut total = Turns::zero();
    let mut prev = angle_at(Turns::zero());
    for k in 1..=n {
        let next = angle_at(Turns::new(k, n));
        total += wrap_half(next - prev);
        prev = next;
    }
    if !total.is_integer() {
        return Err(Error::invalid("sampled path is not closed"));
    }
    Ok(total.to_integer())
}

fn check_samples(f: u64, samples: u32) -> Result<i64> {
    let fi = i64::try_from(f).map_err(|_| Error::Overflow("degree"))?;
    let required = fi.checked_mul(4).ok_or(Error::Overflow("sample count"))?;
    if i64::from(samples) < required {
        return Err(Error::InsufficientSamples { required: required as u64, given: samples.into() });
    }
    Ok(fi)
}

/// Degree of `z -> z^f`, from angle increments over the `samples`-th roots of unity.
pub fn circle_degree_oracle(f: u64, samples: u32) -> Result<i64> {
    let fi = check_samples(f, samples)?;
    winding_number(samples, |t| wrap_half(t * fi))
}

/// Degree of the reduced map on `Sym^n`: runs the generating loop
/// `[e(t), 1, ..., 1]`, applies `z -> z^f` in each coordinate, then
/// multiplies the coordinates together.
pub fn sym_degree_oracle(n: u32, f: u64, samples: u32) -> Result<i64> {
    if n == 0 {
        return Err(Error::invalid("symmetric power must be positive"));
    }
    let fi = check_samples(f, samples)?;
    winding_number(samples, |t| {
        let mut coords = vec![Turns::zero(); n as usize];
        coords[0] = t;
        coords.iter().fold(Turns::zero(), |acc, &c| wrap_half(acc + c * fi))
    })
}
