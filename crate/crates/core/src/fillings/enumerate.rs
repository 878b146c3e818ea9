use super::{occurrence_distance, Filling, FillingError, Index, Spot, TorsionAssignment};
use num_integer::Integer;

pub const DEFAULT_CELL_BUDGET: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumerationConfig {
    pub cell_budget: usize,
}

impl Default for EnumerationConfig {
    fn default() -> Self {
        EnumerationConfig { cell_budget: DEFAULT_CELL_BUDGET }
    }
}

struct Search<'a> {
    alpha: usize,
    beta: usize,
    g: Index,
    universe: Vec<u32>,
    cells: Vec<Index>,
    spots: Vec<Vec<Spot>>,
    visit: &'a mut dyn FnMut(Filling, TorsionAssignment),
}

impl Search<'_> {
    fn smallest_order(&self, gcd: i64) -> Option<u32> {
        self.universe.iter().copied().find(|&l| gcd % l as i64 == 0)
    }

    fn gcd_with(&self, value: Index, spot: Spot) -> i64 {
        self.spots[value as usize]
            .iter()
            .fold(0i64, |acc, &s| acc.gcd(&occurrence_distance(s, spot)))
    }

    fn run(&mut self, pos: usize) {
        let (alpha, beta) = (self.alpha, self.beta);
        if pos == alpha * beta {
            self.emit();
            return;
        }
        let (a, b) = (pos % alpha + 1, pos / alpha + 1);
        let left = if a > 1 { self.cells[pos - 1] } else { 0 };
        let up = if b > 1 { self.cells[pos - alpha] } else { 0 };
        let chain = ((alpha - a) + (beta - b)) as Index;
        let dominated = ((alpha - a + 1) * (beta - b + 1) - 1) as Index;
        let upper = if self.universe.is_empty() {
            self.g.saturating_sub(dominated)
        } else {
            self.g.saturating_sub(chain)
        };
        let spot = Spot::new(a, b);
        for v in left.max(up) + 1..=upper {
            if !self.spots[v as usize].is_empty() {
                if self.universe.is_empty() {
                    continue;
                }
                let gcd = self.gcd_with(v, spot);
                if self.smallest_order(gcd).is_none() {
                    continue;
                }
            }
            self.cells[pos] = v;
            self.spots[v as usize].push(spot);
            self.run(pos + 1);
            self.spots[v as usize].pop();
        }
    }

    fn emit(&mut self) {
        let filling = Filling::from_cells(self.alpha, self.beta, self.g, self.cells.clone())
            .expect("search only places values in range");
        let mut torsion = TorsionAssignment::new();
        for (index, spots) in filling.repeated() {
            let mut gcd = 0i64;
            for (n, &s) in spots.iter().enumerate() {
                for &t in &spots[n + 1..] {
                    gcd = gcd.gcd(&occurrence_distance(s, t));
                }
            }
            torsion.set(index, self.smallest_order(gcd).expect("checked during search"));
        }
        (self.visit)(filling, torsion);
    }
}

/// Visits every admissible filling of the `alpha × beta` rectangle with
/// indices in `1..=g`, in row-major lexicographic order of the cells.
///
/// An index may repeat only when some order in `torsion_universe` divides
/// all its occurrence distances; the smallest such order is reported.
pub fn enumerate_admissible_with(
    alpha: usize,
    beta: usize,
    g: Index,
    torsion_universe: &[u32],
    config: EnumerationConfig,
    visit: &mut dyn FnMut(Filling, TorsionAssignment),
) -> Result<(), FillingError> {
    if alpha == 0 || beta == 0 {
        return Err(FillingError::EmptyShape { alpha, beta });
    }
    let cells = alpha * beta;
    if cells > config.cell_budget {
        return Err(FillingError::BudgetExceeded { cells, budget: config.cell_budget });
    }
    let mut universe: Vec<u32> = torsion_universe.iter().copied().filter(|&l| l >= 2).collect();
    universe.sort_unstable();
    universe.dedup();
    let mut search = Search {
        alpha,
        beta,
        g,
        universe,
        cells: vec![0; cells],
        spots: vec![Vec::new(); g as usize + 1],
        visit,
    };
    search.run(0);
    Ok(())
}

/// Collecting form of [`enumerate_admissible_with`].
pub fn enumerate_admissible(
    alpha: usize,
    beta: usize,
    g: Index,
    torsion_universe: &[u32],
    config: EnumerationConfig,
) -> Result<Vec<(Filling, TorsionAssignment)>, FillingError> {
    let mut out = Vec::new();
    enumerate_admissible_with(alpha, beta, g, torsion_universe, config, &mut |f, t| out.push((f, t)))?;
    Ok(out)
}

/// Standard Young tableaux of the `alpha × beta` rectangle, by the hook
/// length formula.
pub fn hook_length_count(alpha: usize, beta: usize) -> u128 {
    let n = alpha * beta;
    let mut numerator: u128 = (1..=n as u128).product();
    for a in 1..=alpha {
        for b in 1..=beta {
            let hook = ((alpha - a) + (beta - b) + 1) as u128;
            numerator /= hook;
        }
    }
    numerator
}
