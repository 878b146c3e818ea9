//! Admissible fillings of the `alpha × beta` rectangle.
//!
//! Spots are `(a, b)` = (column, row), both 1-based, with `a ∈ [1, alpha]`
//! and `b ∈ [1, beta]`. Rows and columns must increase strictly; an index may
//! occupy several spots only when its component carries finite torsion that
//! divides the grid distance `(a2 - a1) + (b1 - b2)` between occurrences.

mod canonical;
mod enumerate;
mod profile;

pub use canonical::canonical_filling;
pub use enumerate::{enumerate_admissible, enumerate_admissible_with, hook_length_count, EnumerationConfig, DEFAULT_CELL_BUDGET};
pub use profile::{grid_distance, h_count, h_prime_count, profile, GridDistance, Profile};

use crate::elliptic_pic::ComponentModel;
use num_integer::Integer;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

pub type Index = u32;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FillingError {
    #[error("rectangle must have at least one row and one column (alpha = {alpha}, beta = {beta})")]
    EmptyShape { alpha: usize, beta: usize },
    #[error("row {row} has {len} cells, expected {alpha}")]
    RaggedRow { row: usize, len: usize, alpha: usize },
    #[error("cell {spot} holds {value}, outside 1..={g}")]
    IndexOutOfRange { spot: Spot, value: Index, g: Index },
    #[error("canonical construction needs k = -rho exactly: k = {k}, -rho = {minus_rho}")]
    KNotMinusRho { k: i64, minus_rho: i64 },
    #[error("canonical construction needs 0 <= k < min(alpha, beta) = {bound}, got k = {k}")]
    KOutOfRange { k: i64, bound: i64 },
    #[error("cell budget exceeded: {cells} cells > budget {budget}")]
    BudgetExceeded { cells: usize, budget: usize },
    #[error(transparent)]
    Numerology(#[from] crate::numerology::NumerologyError),
}

/// A spot `(a, b)`: column `a`, row `b`, both 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Spot {
    pub a: usize,
    pub b: usize,
}

impl Spot {
    pub fn new(a: usize, b: usize) -> Self {
        Spot { a, b }
    }
}

impl fmt::Display for Spot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.a, self.b)
    }
}

/// Signed grid distance `(a2 - a1) + (b1 - b2)` between two occurrences.
pub fn occurrence_distance(first: Spot, second: Spot) -> i64 {
    (second.a as i64 - first.a as i64) + (first.b as i64 - second.b as i64)
}

/// Immutable grid of indices with its occurrence map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Filling {
    alpha: usize,
    beta: usize,
    g: Index,
    cells: Vec<Index>,
    occurrences: BTreeMap<Index, Vec<Spot>>,
}

impl Filling {
    /// Builds a filling from `beta` rows of `alpha` indices each.
    pub fn from_rows(g: Index, rows: &[Vec<Index>]) -> Result<Self, FillingError> {
        let beta = rows.len();
        let alpha = rows.first().map_or(0, Vec::len);
        if alpha == 0 || beta == 0 {
            return Err(FillingError::EmptyShape { alpha, beta });
        }
        let mut cells = Vec::with_capacity(alpha * beta);
        for (row_idx, row) in rows.iter().enumerate() {
            if row.len() != alpha {
                return Err(FillingError::RaggedRow { row: row_idx + 1, len: row.len(), alpha });
            }
            cells.extend_from_slice(row);
        }
        Self::from_cells(alpha, beta, g, cells)
    }

    /// Builds a filling from a row-major cell array.
    pub fn from_cells(alpha: usize, beta: usize, g: Index, cells: Vec<Index>) -> Result<Self, FillingError> {
        if alpha == 0 || beta == 0 {
            return Err(FillingError::EmptyShape { alpha, beta });
        }
        assert_eq!(cells.len(), alpha * beta, "cell array must be alpha * beta long");
        let mut occurrences: BTreeMap<Index, Vec<Spot>> = BTreeMap::new();
        for b in 1..=beta {
            for a in 1..=alpha {
                let value = cells[(b - 1) * alpha + (a - 1)];
                let spot = Spot::new(a, b);
                if value == 0 || value > g {
                    return Err(FillingError::IndexOutOfRange { spot, value, g });
                }
                occurrences.entry(value).or_default().push(spot);
            }
        }
        for spots in occurrences.values_mut() {
            spots.sort();
        }
        Ok(Filling { alpha, beta, g, cells, occurrences })
    }

    pub fn alpha(&self) -> usize {
        self.alpha
    }

    pub fn beta(&self) -> usize {
        self.beta
    }

    pub fn g(&self) -> Index {
        self.g
    }

    pub fn cells(&self) -> &[Index] {
        &self.cells
    }

    pub fn get(&self, spot: Spot) -> Index {
        assert!(self.contains_spot(spot), "spot {spot} outside {}x{} grid", self.alpha, self.beta);
        self.cells[(spot.b - 1) * self.alpha + (spot.a - 1)]
    }

    pub fn at(&self, a: usize, b: usize) -> Index {
        self.get(Spot::new(a, b))
    }

    pub fn contains_spot(&self, spot: Spot) -> bool {
        (1..=self.alpha).contains(&spot.a) && (1..=self.beta).contains(&spot.b)
    }

    pub fn row(&self, b: usize) -> &[Index] {
        &self.cells[(b - 1) * self.alpha..b * self.alpha]
    }

    pub fn column(&self, a: usize) -> Vec<Index> {
        (1..=self.beta).map(|b| self.at(a, b)).collect()
    }

    pub fn occurrences(&self) -> &BTreeMap<Index, Vec<Spot>> {
        &self.occurrences
    }

    pub fn spots_of(&self, index: Index) -> &[Spot] {
        self.occurrences.get(&index).map_or(&[], Vec::as_slice)
    }

    /// Whether `index` occupies some spot in column `a`.
    pub fn in_column(&self, index: Index, a: usize) -> bool {
        self.spots_of(index).iter().any(|s| s.a == a)
    }

    /// Whether `index` occupies some spot in row `b`.
    pub fn in_row(&self, index: Index, b: usize) -> bool {
        self.spots_of(index).iter().any(|s| s.b == b)
    }

    pub fn repeated(&self) -> impl Iterator<Item = (Index, &[Spot])> {
        self.occurrences.iter().filter(|(_, s)| s.len() > 1).map(|(&i, s)| (i, s.as_slice()))
    }

    pub fn unused(&self) -> Vec<Index> {
        (1..=self.g).filter(|i| !self.occurrences.contains_key(i)).collect()
    }

    /// One spot per distinct index, the first in row-major order.
    pub fn distinct_index_spots(&self) -> Vec<Spot> {
        let mut spots: Vec<Spot> = self.occurrences.values().map(|s| s[0]).collect();
        spots.sort_by_key(|s| (s.b, s.a));
        spots
    }

    /// Fixed-width text rendering: `beta` lines, cells right-aligned in four
    /// columns, indices with several spots marked `*`.
    pub fn render_ascii(&self) -> String {
        let mut out = String::new();
        for b in 1..=self.beta {
            let mut line = String::new();
            for &v in self.row(b) {
                let mark = if self.spots_of(v).len() > 1 { '*' } else { ' ' };
                line.push_str(&format!("{v:>4}{mark}"));
            }
            out.push_str(line.trim_end());
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self, torsion: &TorsionAssignment) -> FillingJson {
        FillingJson {
            alpha: self.alpha,
            beta: self.beta,
            g: self.g,
            cells: self.cells.clone(),
            torsion: torsion.orders().iter().map(|(i, l)| (i.to_string(), *l)).collect(),
        }
    }
}

/// JSON shape of a filling: row-major cells and torsion orders keyed by index.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FillingJson {
    pub alpha: usize,
    pub beta: usize,
    pub g: Index,
    pub cells: Vec<Index>,
    pub torsion: BTreeMap<String, u32>,
}

/// Torsion order assigned to each index; unlisted indices are generic.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TorsionAssignment {
    orders: BTreeMap<Index, u32>,
}

impl TorsionAssignment {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, index: Index, order: u32) -> Self {
        self.set(index, order);
        self
    }

    pub fn set(&mut self, index: Index, order: u32) {
        assert!(order >= 2, "torsion order must be at least 2");
        self.orders.insert(index, order);
    }

    pub fn order(&self, index: Index) -> Option<u32> {
        self.orders.get(&index).copied()
    }

    pub fn model(&self, index: Index) -> ComponentModel {
        match self.order(index) {
            Some(l) => ComponentModel::Torsion(l),
            None => ComponentModel::Generic,
        }
    }

    pub fn orders(&self) -> &BTreeMap<Index, u32> {
        &self.orders
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Row,
    Column,
}

/// Two adjacent cells along a row or column that fail to increase.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MonotonicityViolation {
    pub direction: Direction,
    pub first: Spot,
    pub second: Spot,
    pub values: (Index, Index),
}

/// Pair of occurrences whose grid distance is not divisible by the torsion
/// order (or a repeated index without any torsion order).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DivisibilityViolation {
    pub index: Index,
    pub first: Spot,
    pub second: Spot,
    pub distance: i64,
    pub order: Option<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub monotonicity: Vec<MonotonicityViolation>,
    pub divisibility: Vec<DivisibilityViolation>,
    /// gcd of the pairwise occurrence distances of every repeated index.
    pub repeated_gcd: BTreeMap<Index, i64>,
    pub unused: Vec<Index>,
    pub coverage: bool,
    pub admissible: bool,
}

/// Checks monotonicity and pairwise torsion divisibility; reports coverage
/// without enforcing it.
pub fn validate(filling: &Filling, torsion: &TorsionAssignment) -> ValidationReport {
    let mut monotonicity = Vec::new();
    for b in 1..=filling.beta {
        for a in 1..=filling.alpha {
            let here = Spot::new(a, b);
            let v = filling.get(here);
            if a < filling.alpha {
                let right = Spot::new(a + 1, b);
                let w = filling.get(right);
                if w <= v {
                    monotonicity.push(MonotonicityViolation {
                        direction: Direction::Row,
                        first: here,
                        second: right,
                        values: (v, w),
                    });
                }
            }
            if b < filling.beta {
                let below = Spot::new(a, b + 1);
                let w = filling.get(below);
                if w <= v {
                    monotonicity.push(MonotonicityViolation {
                        direction: Direction::Column,
                        first: here,
                        second: below,
                        values: (v, w),
                    });
                }
            }
        }
    }

    let mut divisibility = Vec::new();
    let mut repeated_gcd = BTreeMap::new();
    for (index, spots) in filling.repeated() {
        let order = torsion.order(index);
        let mut acc = 0;
        for (n, &first) in spots.iter().enumerate() {
            for &second in &spots[n + 1..] {
                let distance = occurrence_distance(first, second);
                acc = acc.gcd(&distance);
                let ok = order.is_some_and(|l| distance % l as i64 == 0);
                if !ok {
                    divisibility.push(DivisibilityViolation { index, first, second, distance, order });
                }
            }
        }
        repeated_gcd.insert(index, acc);
    }

    let unused = filling.unused();
    ValidationReport {
        admissible: monotonicity.is_empty() && divisibility.is_empty(),
        coverage: unused.is_empty(),
        monotonicity,
        divisibility,
        repeated_gcd,
        unused,
    }
}

/// Bounded search for a single-spot substitution that keeps the filling
/// admissible while lowering the total repetition count
/// `Σ (multiplicity - 1)`. Substituted values range over `1..=g`; a newly
/// repeated value may use any order from `torsion_universe` that divides its
/// distances. Returns true when no such substitution exists.
pub fn is_repetition_minimal(filling: &Filling, torsion: &TorsionAssignment, torsion_universe: &[u32]) -> bool {
    let repetitions = |f: &Filling| -> usize { f.occurrences.values().map(|s| s.len() - 1).sum() };
    let base = repetitions(filling);
    if base == 0 {
        return true;
    }
    for (index, spots) in filling.repeated() {
        for &spot in spots {
            for value in 1..=filling.g {
                if value == index {
                    continue;
                }
                let mut cells = filling.cells.clone();
                cells[(spot.b - 1) * filling.alpha + (spot.a - 1)] = value;
                let Ok(candidate) = Filling::from_cells(filling.alpha, filling.beta, filling.g, cells) else {
                    continue;
                };
                if repetitions(&candidate) >= base {
                    continue;
                }
                let mut t = TorsionAssignment::new();
                let mut feasible = true;
                for (i, _) in candidate.repeated() {
                    let g = validate_gcd(&candidate, i);
                    let order = torsion
                        .order(i)
                        .filter(|l| g % *l as i64 == 0)
                        .or_else(|| torsion_universe.iter().copied().filter(|&l| l >= 2 && g % l as i64 == 0).min());
                    match order {
                        Some(l) => t.set(i, l),
                        None => {
                            feasible = false;
                            break;
                        }
                    }
                }
                if feasible && validate(&candidate, &t).admissible {
                    return false;
                }
            }
        }
    }
    true
}

fn validate_gcd(filling: &Filling, index: Index) -> i64 {
    let spots = filling.spots_of(index);
    let mut acc = 0;
    for (n, &first) in spots.iter().enumerate() {
        for &second in &spots[n + 1..] {
            acc = acc.gcd(&occurrence_distance(first, second));
        }
    }
    acc
}
