use super::{ChainError, ChainSpec};
use crate::fillings::{h_count, h_prime_count, Filling, Index};
use serde::{Serialize, Serializer};
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SectionLabel {
    /// `s_a`, column `a`.
    S(usize),
    /// `t_b`, row `b`.
    T(usize),
}

impl fmt::Display for SectionLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SectionLabel::S(a) => write!(f, "s_{a}"),
            SectionLabel::T(b) => write!(f, "t_{b}"),
        }
    }
}

impl Serialize for SectionLabel {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Vanishing orders at `(P_i, Q_i)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct OrderPair {
    pub p: i64,
    pub q: i64,
}

impl OrderPair {
    pub fn new(p: i64, q: i64) -> Self {
        OrderPair { p, q }
    }

    pub fn total(&self) -> i64 {
        self.p + self.q
    }
}

impl std::ops::Add for OrderPair {
    type Output = OrderPair;
    fn add(self, rhs: OrderPair) -> OrderPair {
        OrderPair::new(self.p + rhs.p, self.q + rhs.q)
    }
}

impl fmt::Display for OrderPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.p, self.q)
    }
}

/// Orders of every `s_a` and `t_b` on every component.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VanishingTable {
    pub g: usize,
    pub d: i64,
    pub d_bar: i64,
    /// `s[a - 1][i - 1]`.
    pub s: Vec<Vec<OrderPair>>,
    /// `t[b - 1][i - 1]`.
    pub t: Vec<Vec<OrderPair>>,
}

impl VanishingTable {
    pub fn alpha(&self) -> usize {
        self.s.len()
    }

    pub fn beta(&self) -> usize {
        self.t.len()
    }

    pub fn labels(&self) -> Vec<SectionLabel> {
        let s = (1..=self.alpha()).map(SectionLabel::S);
        let t = (1..=self.beta()).map(SectionLabel::T);
        s.chain(t).collect()
    }

    pub fn get(&self, label: SectionLabel, i: usize) -> OrderPair {
        match label {
            SectionLabel::S(a) => self.s[a - 1][i - 1],
            SectionLabel::T(b) => self.t[b - 1][i - 1],
        }
    }

    pub fn get_mut(&mut self, label: SectionLabel, i: usize) -> &mut OrderPair {
        match label {
            SectionLabel::S(a) => &mut self.s[a - 1][i - 1],
            SectionLabel::T(b) => &mut self.t[b - 1][i - 1],
        }
    }

    /// Degree of the series a label belongs to.
    pub fn degree(&self, label: SectionLabel) -> i64 {
        match label {
            SectionLabel::S(_) => self.d,
            SectionLabel::T(_) => self.d_bar,
        }
    }

    /// `ord_{Q_i} + ord_{P_{i+1}}` for `i < g`.
    pub fn node_sum(&self, label: SectionLabel, i: usize) -> i64 {
        self.get(label, i).q + self.get(label, i + 1).p
    }

    pub const TSV_FIRST_COLUMN: &'static str = "section";

    /// One row per label, columns `P_1, Q_1, ..., P_g, Q_g`.
    pub fn to_tsv(&self) -> String {
        let mut out = String::from(Self::TSV_FIRST_COLUMN);
        for i in 1..=self.g {
            out.push_str(&format!("\tP_{i}\tQ_{i}"));
        }
        out.push('\n');
        for label in self.labels() {
            out.push_str(&label.to_string());
            for i in 1..=self.g {
                let o = self.get(label, i);
                out.push_str(&format!("\t{}\t{}", o.p, o.q));
            }
            out.push('\n');
        }
        out
    }
}

/// Runs the limit-section recursion: start at order `index - 1` on `P_1`,
/// take `ord_Q = deg - ord_P` on components whose index sits in the
/// section's column (row for `t_b`) and one less elsewhere, then continue
/// with `ord_P = deg - ord_Q` at the next point.
pub fn section_orders(filling: &Filling, chain: &ChainSpec) -> Result<VanishingTable, ChainError> {
    let g = chain.g;
    let d_bar = chain.d_bar();
    let mut table = VanishingTable { g, d: chain.d, d_bar, s: Vec::new(), t: Vec::new() };
    for a in 1..=filling.alpha() {
        let label = SectionLabel::S(a);
        let rows = run_recursion(label, chain.d, g, |i| filling.in_column(i as Index, a))?;
        for (n, o) in rows.iter().enumerate() {
            let i = n + 1;
            let closed = a as i64 - 1 + i as i64 - 1 - h_count(filling, i as Index, a) as i64;
            if closed != o.p {
                return Err(ChainError::ClosedFormMismatch { label, i, recursion: o.p, closed });
            }
        }
        table.s.push(rows);
    }
    for b in 1..=filling.beta() {
        let label = SectionLabel::T(b);
        let rows = run_recursion(label, d_bar, g, |i| filling.in_row(i as Index, b))?;
        for (n, o) in rows.iter().enumerate() {
            let i = n + 1;
            let closed = b as i64 - 1 + i as i64 - 1 - h_prime_count(filling, i as Index, b) as i64;
            if closed != o.p {
                return Err(ChainError::ClosedFormMismatch { label, i, recursion: o.p, closed });
            }
        }
        table.t.push(rows);
    }
    Ok(table)
}

fn run_recursion(
    label: SectionLabel,
    degree: i64,
    g: usize,
    member: impl Fn(usize) -> bool,
) -> Result<Vec<OrderPair>, ChainError> {
    let start = match label {
        SectionLabel::S(a) => a,
        SectionLabel::T(b) => b,
    } as i64
        - 1;
    let mut p = start;
    let mut out = Vec::with_capacity(g);
    for i in 1..=g {
        let q = degree - p - i64::from(!member(i));
        if p < 0 || q < 0 || p > degree || q > degree {
            return Err(ChainError::OrderOutOfRange { label, i, p, q });
        }
        out.push(OrderPair::new(p, q));
        p = degree - q;
    }
    Ok(out)
}

/// Orders of `s_a ⊗ t_b` on component `i`: the sums of the factor orders.
pub fn product_orders(table: &VanishingTable, a: usize, b: usize, i: usize) -> OrderPair {
    table.get(SectionLabel::S(a), i) + table.get(SectionLabel::T(b), i)
}

/// Number of the memberships "`i` in column `a`" and "`i` in row `b`".
pub fn membership(filling: &Filling, a: usize, b: usize, i: usize) -> u8 {
    u8::from(filling.in_column(i as Index, a)) + u8::from(filling.in_row(i as Index, b))
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::{canonical, sweep};
    use super::*;
    use crate::fillings::{grid_distance, Spot};

    fn pairs(v: &[(i64, i64)]) -> Vec<OrderPair> {
        v.iter().map(|&(p, q)| OrderPair::new(p, q)).collect()
    }

    #[test]
    fn square_instance() {
        let (_, _, _, table) = canonical(4, 1, 3, 0);
        assert_eq!(table.s[0], pairs(&[(0, 3), (0, 2), (1, 2), (1, 1)]));
        assert_eq!(table.s[1], pairs(&[(1, 1), (2, 1), (2, 0), (3, 0)]));
        assert_eq!(table.t[0], pairs(&[(0, 3), (0, 3), (0, 2), (1, 1)]));
        assert_eq!(table.t[1], pairs(&[(1, 1), (2, 0), (3, 0), (3, 0)]));
    }

    #[test]
    fn square_products() {
        let (_, _, _, table) = canonical(4, 1, 3, 0);
        assert_eq!(product_orders(&table, 1, 1, 1), OrderPair::new(0, 6));
        assert_eq!(product_orders(&table, 2, 1, 1), OrderPair::new(1, 4));
        assert_eq!(product_orders(&table, 2, 2, 1), OrderPair::new(2, 2));
    }

    #[test]
    fn five_by_seven_last_component() {
        let (_, _, _, table) = canonical(31, 4, 28, 4);
        for a in 1..=4 {
            assert_eq!(table.get(SectionLabel::S(a), 31).p, a as i64 + 22);
        }
        assert_eq!(table.get(SectionLabel::S(5), 31).p, 28);
    }

    #[test]
    fn tsv_layout() {
        let (_, _, _, table) = canonical(4, 1, 3, 0);
        let tsv = table.to_tsv();
        let lines: Vec<&str> = tsv.lines().collect();
        assert_eq!(lines[0], "section\tP_1\tQ_1\tP_2\tQ_2\tP_3\tQ_3\tP_4\tQ_4");
        assert_eq!(lines[1], "s_1\t0\t3\t0\t2\t1\t2\t1\t1");
        assert_eq!(lines.len(), 5);
    }

    #[test]
    fn sweep_node_sums_and_product_totals() {
        for (g, r, d, k) in sweep() {
            let (f, _, chain, table) = canonical(g, r, d, k);
            let g = g as usize;
            for label in table.labels() {
                for i in 1..g {
                    assert_eq!(table.node_sum(label, i), table.degree(label), "{label} node {i}");
                }
            }
            for a in 1..=chain.alpha() {
                for b in 1..=chain.beta() {
                    for i in 1..=g {
                        let o = product_orders(&table, a, b, i);
                        let m = membership(&f, a, b, i) as i64;
                        assert_eq!(o.total(), 2 * g as i64 - 4 + m);
                        let dist = grid_distance(&f, i as Index, Spot::new(a, b));
                        let outside = f.at(a, b) as usize >= i;
                        assert_eq!(o.p, dist.total() + 2 * i as i64 - 4 + 2 * i64::from(outside));
                        let h = h_count(&f, i as Index, a) as i64;
                        let hp = h_prime_count(&f, i as Index, b) as i64;
                        assert_eq!(o.p, (a as i64 - h) + (b as i64 - hp) + 2 * i as i64 - 4);
                    }
                }
            }
        }
    }

    #[test]
    fn inconsistent_chain_reports_offending_entry() {
        let (f, _, chain, _) = canonical(4, 1, 3, 0);
        let bad = ChainSpec { d: 2, ..chain };
        assert!(matches!(section_orders(&f, &bad), Err(ChainError::OrderOutOfRange { .. })));
    }
}
