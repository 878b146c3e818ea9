//! Comparison of the combinatorial predictions with exact computation.

use super::curve::{Curve, Pt};
use super::field::next_prime;
use super::function::FunctionRep;
use super::linalg::{evaluation_rows, rank_and_nullspace, sample_bound, usable_points};
use super::petri::component_petri;
use super::realization::{realize_at_prime, CurveRealization, SearchLimits};
use super::riemann_roch::{aspect_divisor, rr_basis};
use super::OracleError;
use crate::chain_sections::{Instance, KernelComponent, OrderPair, Point, SectionLabel};
use crate::elliptic_pic::ComponentModel;
use crate::fillings::Index;
use serde::Serialize;
use serde_json::{json, Value};
use std::collections::BTreeMap;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleConfig {
    /// Defaults to [`default_p_min`].
    pub p_min: Option<u64>,
    pub limits: SearchLimits,
    /// Primes tried after a failing comparison.
    pub attempts: usize,
    /// Primes skipped for lack of sample points before giving up.
    pub max_primes: usize,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig { p_min: None, limits: SearchLimits::default(), attempts: 2, max_primes: 40 }
    }
}

/// `4(2g - 2) + 1`.
pub fn default_p_min(g: usize) -> u64 {
    (4 * (2 * g as u64).saturating_sub(2) + 1).max(5)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckRecord {
    pub name: String,
    pub predicted: Value,
    pub computed: Value,
    pub pass: bool,
}

impl CheckRecord {
    fn new(name: impl Into<String>, predicted: Value, computed: Value) -> Self {
        let pass = predicted == computed;
        CheckRecord { name: name.into(), predicted, computed, pass }
    }

    fn with_pass(name: impl Into<String>, predicted: Value, computed: Value, pass: bool) -> Self {
        CheckRecord { name: name.into(), predicted, computed, pass }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComponentReport {
    pub i: usize,
    pub checks: Vec<CheckRecord>,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub instance: Value,
    pub prime: u64,
    /// Primes on which a full comparison ran.
    pub attempts: Vec<u64>,
    pub realizations: Vec<CurveRealization>,
    pub components: Vec<ComponentReport>,
    pub chain_checks: Vec<CheckRecord>,
    pub pass: bool,
}

impl VerificationReport {
    /// `(component, check name)` of every failing check; component 0 marks
    /// chain-level checks.
    pub fn failures(&self) -> Vec<(usize, String)> {
        let mut out: Vec<(usize, String)> = self
            .components
            .iter()
            .flat_map(|c| c.checks.iter().filter(|k| !k.pass).map(move |k| (c.i, k.name.clone())))
            .collect();
        out.extend(self.chain_checks.iter().filter(|k| !k.pass).map(|k| (0, k.name.clone())));
        out
    }

    pub fn check_count(&self) -> usize {
        self.components.iter().map(|c| c.checks.len()).sum::<usize>() + self.chain_checks.len()
    }

    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("report serializes")
    }
}

/// A deliberate corruption of an instance's predictions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Fault {
    /// Shift one table order by `delta`.
    Order { label: SectionLabel, i: usize, point: Point, delta: i64 },
    /// Fixed coefficients move by one; free ones are pinned to zero.
    Coefficient { l: usize, i: usize, term: usize },
}

pub fn inject_fault(instance: &Instance, fault: Fault) -> Instance {
    let mut out = instance.clone();
    match fault {
        Fault::Order { label, i, point, delta } => {
            let o = out.table.get_mut(label, i);
            match point {
                Point::P => o.p += delta,
                Point::Q => o.q += delta,
            }
        }
        Fault::Coefficient { l, i, term } => {
            let el = out.elements.iter_mut().find(|e| e.l == l).expect("element exists");
            let c = el.components.iter_mut().find(|c| c.i == i).expect("component exists");
            let t = &mut c.combo[term];
            t.coeff = Some(t.coeff.map_or(0, |v| v + 1));
        }
    }
    out
}

/// Realizes every component over one prime and compares section orders,
/// node sums, kernel memberships and orders, per-component Petri kernels,
/// and (for fillings using every index) the independence of the products.
///
/// Each table entry must equal the order pair prescribed by the filling, and
/// that pair must cut out a single section whose actual orders dominate it.
/// On torsion components the actual orders can be larger, so node sums are
/// checked as `>= d`.
///
/// A failing comparison is repeated once on the next suitable prime and the
/// later report is returned.
pub fn verify_instance(instance: &Instance, config: &OracleConfig) -> Result<VerificationReport, OracleError> {
    let g = instance.chain.g;
    let mut p = config.p_min.unwrap_or_else(|| default_p_min(g));
    let mut attempts = Vec::new();
    let mut skipped = 0;
    loop {
        let session = OracleSession::find(&instance.chain.components, p, config)?;
        p = session.prime + 1;
        match session.verify(instance) {
            Ok(mut report) => {
                attempts.push(session.prime);
                if report.pass || attempts.len() >= config.attempts.max(1) {
                    report.attempts = attempts;
                    return Ok(report);
                }
            }
            Err(OracleError::InsufficientPoints { needed, available }) => {
                skipped += 1;
                if skipped > config.max_primes {
                    return Err(OracleError::InsufficientPoints { needed, available });
                }
            }
            Err(e) => return Err(e),
        }
    }
}

/// Realizations of every torsion type of a chain over one prime, reusable
/// across instances.
#[derive(Debug, Clone)]
pub struct OracleSession {
    pub prime: u64,
    realizations: BTreeMap<Option<u32>, CurveRealization>,
}

impl OracleSession {
    /// First prime `>= p_min` over which every model in `components` is
    /// realized with enough points for a chain of that length.
    pub fn find(components: &[ComponentModel], p_min: u64, config: &OracleConfig) -> Result<Self, OracleError> {
        let g = components.len() as u64;
        let limits = SearchLimits {
            generic_min_order: config.limits.generic_min_order.max(4 * g + 8),
            min_points: config.limits.min_points.max(12 * g + 24),
            max_curves: config.limits.max_curves,
        };
        let mut models = components.to_vec();
        models.sort_by_key(|m| m.order());
        models.dedup();
        let mut examined = 0;
        let mut p = next_prime(p_min.max(5));
        loop {
            let mut realizations = BTreeMap::new();
            for &m in &models {
                match realize_at_prime(p, m, &limits, &mut examined)? {
                    Some(r) => {
                        realizations.insert(m.order(), r);
                    }
                    None => break,
                }
            }
            if realizations.len() == models.len() {
                return Ok(OracleSession { prime: p, realizations });
            }
            if examined >= limits.max_curves {
                return Err(OracleError::SearchExhausted {
                    what: format!("{models:?} over one prime"),
                    budget: limits.max_curves,
                });
            }
            p = next_prime(p + 1);
        }
    }

    pub fn realizations(&self) -> impl Iterator<Item = &CurveRealization> {
        self.realizations.values()
    }

    /// One comparison over this session's prime, without retry.
    pub fn verify(&self, instance: &Instance) -> Result<VerificationReport, OracleError> {
        if instance.extension.is_some() {
            return Err(OracleError::Unsupported("instances with appended generic components (t >= 1)".into()));
        }
        if let Some(m) = instance.chain.components.iter().find(|m| !self.realizations.contains_key(&m.order())) {
            return Err(OracleError::Unsupported(format!("session has no realization for {m:?}")));
        }
        let (components, chain_checks) = run(instance, &self.realizations)?;
        let pass = components.iter().all(|c| c.checks.iter().all(|k| k.pass)) && chain_checks.iter().all(|k| k.pass);
        let p = &instance.params;
        Ok(VerificationReport {
            instance: json!({"g": p.g, "r": p.r, "d": p.d, "k": instance.k()}),
            prime: self.prime,
            attempts: vec![self.prime],
            realizations: self.realizations.values().cloned().collect(),
            components,
            chain_checks,
            pass,
        })
    }
}

struct ComponentData<'a> {
    real: &'a CurveRealization,
    /// Normalized section functions with their computed orders.
    sections: BTreeMap<SectionLabel, (FunctionRep, OrderPair)>,
}

impl ComponentData<'_> {
    fn curve(&self) -> &Curve {
        &self.real.curve
    }

    fn product(&self, a: usize, b: usize) -> FunctionRep {
        let (s, _) = &self.sections[&SectionLabel::S(a)];
        let (t, _) = &self.sections[&SectionLabel::T(b)];
        s.mul(t, self.curve()).compact()
    }

    fn product_orders(&self, a: usize, b: usize) -> OrderPair {
        self.sections[&SectionLabel::S(a)].1 + self.sections[&SectionLabel::T(b)].1
    }
}

type RunOutput = (Vec<ComponentReport>, Vec<CheckRecord>);

fn run(instance: &Instance, reals: &BTreeMap<Option<u32>, CurveRealization>) -> Result<RunOutput, OracleError> {
    let chain = &instance.chain;
    let table = &instance.table;
    let g = chain.g;
    let mut reports: Vec<ComponentReport> = (1..=g).map(|i| ComponentReport { i, checks: Vec::new() }).collect();
    let mut chain_checks = Vec::new();
    let mut data: Vec<ComponentData> = (1..=g)
        .map(|i| ComponentData { real: &reals[&chain.model(i).order()], sections: BTreeMap::new() })
        .collect();

    // Prescribed orders follow the defining rule on the filling; each must
    // cut out one section whose actual orders, and the node sums they give,
    // may only exceed the prescription.
    let filling = &instance.filling;
    for label in table.labels() {
        let (mut p, deg) = match label {
            SectionLabel::S(a) => (a as i64 - 1, table.d),
            SectionLabel::T(b) => (b as i64 - 1, table.d_bar),
        };
        let mut prev_q: Option<i64> = None;
        for i in 1..=g {
            let cd = &data[i - 1];
            let aspect = instance.aspects.component(i);
            let class = match label {
                SectionLabel::S(_) => &aspect.bundle,
                SectionLabel::T(_) => &aspect.dual,
            };
            let d_class = aspect_divisor(cd.real, class)?;
            let jumps = match label {
                SectionLabel::S(a) => filling.in_column(i as Index, a),
                SectionLabel::T(b) => filling.in_row(i as Index, b),
            };
            let rule = OrderPair::new(p, deg - p - i64::from(!jumps));
            p = deg - rule.q;
            let predicted = table.get(label, i);
            let mut twisted = d_class.clone();
            twisted.add_point(cd.real.p_point, -rule.p);
            twisted.add_point(cd.real.q_point, -rule.q);
            let basis = rr_basis(cd.curve(), &twisted)?;
            let dim = basis.len();
            let actual = basis.first().map(|f| {
                OrderPair::new(
                    f.ord(cd.real.p_point) + d_class.coeff(cd.real.p_point),
                    f.ord(cd.real.q_point) + d_class.coeff(cd.real.q_point),
                )
            });
            let exists = dim == 1 && actual.is_some_and(|o| o.p >= rule.p && o.q >= rule.q);
            reports[i - 1].checks.push(CheckRecord::with_pass(
                format!("{label} orders"),
                order_json(predicted),
                json!({"rule": order_json(rule), "dim": dim, "actual": actual.map(order_json)}),
                exists && predicted == rule,
            ));
            if let (Some(pq), Some(o)) = (prev_q, actual) {
                let sum = pq + o.p;
                chain_checks.push(CheckRecord::with_pass(
                    format!("{label} node {}", i - 1),
                    json!(deg),
                    json!(sum),
                    sum >= deg,
                ));
            }
            prev_q = actual.map(|o| o.q);
            if exists {
                data[i - 1].sections.insert(label, (basis.into_iter().next().expect("dim 1"), actual.expect("dim 1")));
            }
        }
    }
    for (i, cd) in data.iter_mut().enumerate() {
        normalize(cd).map_err(|e| match e {
            OracleError::InsufficientPoints { .. } => e,
            other => OracleError::Unsupported(format!("component {}: {other}", i + 1)),
        })?;
    }
    let complete = |cd: &ComponentData| cd.sections.len() == table.alpha() + table.beta();

    // Kernel elements.
    let mut supported = vec![false; g];
    for el in &instance.elements {
        for c in &el.components {
            let cd = &data[c.i - 1];
            let report = &mut reports[c.i - 1].checks;
            if !complete(cd) {
                continue;
            }
            supported[c.i - 1] |= !c.combo.is_empty();
            report.push(CheckRecord::new(format!("x_{} membership", el.l), json!(true), json!(member(cd, c)?)));
            let orders: Vec<OrderPair> = c.combo.iter().map(|t| cd.product_orders(t.a, t.b)).collect();
            let min_p = orders.iter().map(|o| o.p).min().unwrap_or(i64::MAX);
            let min_q = orders.iter().map(|o| o.q).min().unwrap_or(i64::MAX);
            let ord = |name: &str, want: i64, got: i64| {
                CheckRecord::with_pass(format!("x_{} {name}", el.l), json!(want), json!(got), got >= want)
            };
            report.push(ord("ord_P", c.ord_p, min_p));
            report.push(ord("ord_Q", c.ord_q, min_q));
        }
    }
    for (i, cd) in data.iter().enumerate() {
        if !supported[i] {
            continue;
        }
        let v: Vec<FunctionRep> = (1..=table.alpha()).map(|a| cd.sections[&SectionLabel::S(a)].0.clone()).collect();
        let w: Vec<FunctionRep> = (1..=table.beta()).map(|b| cd.sections[&SectionLabel::T(b)].0.clone()).collect();
        let m = component_petri(cd.curve(), &v, &w)?;
        reports[i].checks.push(CheckRecord::with_pass(
            "petri kernel",
            json!(">= 1"),
            json!(m.kernel_dim),
            m.kernel_dim >= 1,
        ));
    }

    // Independence of one product per index.
    if instance.surjectivity.is_some() && data.iter().all(complete) {
        let spots = instance.filling.distinct_index_spots();
        let mut rows = Vec::new();
        for cd in &data {
            let products: Vec<FunctionRep> = spots.iter().map(|s| cd.product(s.a, s.b)).collect();
            rows.extend(sample_rows(cd.curve(), &products)?);
        }
        let (rank, _) = rank_and_nullspace(data[0].curve().field, &rows, spots.len());
        chain_checks.push(CheckRecord::new("surjectivity rank", json!(spots.len()), json!(rank)));
    }
    Ok((reports, chain_checks))
}

fn order_json(o: OrderPair) -> Value {
    json!([o.p, o.q])
}

/// Scales every section to take the value 1 at the first point where all
/// are defined and nonzero.
fn normalize(cd: &mut ComponentData) -> Result<(), OracleError> {
    let curve = cd.real.curve.clone();
    let fns: Vec<FunctionRep> = cd.sections.values().map(|(f, _)| f.clone()).collect();
    let base = usable_points(&curve, &fns)
        .into_iter()
        .find(|&pt| fns.iter().all(|f| f.eval(&curve, pt) != Some(0)))
        .ok_or(OracleError::InsufficientPoints { needed: 1, available: 0 })?;
    for (f, _) in cd.sections.values_mut() {
        let v = f.eval(&curve, base).expect("usable point");
        *f = f.scaled(curve.field.inv(v), &curve);
    }
    Ok(())
}

/// Evaluation rows at more points than any combination can vanish at.
fn sample_rows(curve: &Curve, fns: &[FunctionRep]) -> Result<Vec<Vec<u64>>, OracleError> {
    let needed = (sample_bound(fns) + 1) as usize;
    let points: Vec<Pt> = usable_points(curve, fns);
    if points.len() < needed {
        return Err(OracleError::InsufficientPoints { needed, available: points.len() });
    }
    Ok(evaluation_rows(curve, fns, &points[..needed]))
}

/// Whether the combination can vanish: fixed coefficients enter as a
/// constant vector, free ones as unknowns.
fn member(cd: &ComponentData, c: &KernelComponent) -> Result<bool, OracleError> {
    let curve = cd.curve();
    let f = curve.field;
    let products: Vec<FunctionRep> = c.combo.iter().map(|t| cd.product(t.a, t.b)).collect();
    if products.is_empty() {
        return Ok(true);
    }
    let rows = sample_rows(curve, &products)?;
    let free: Vec<usize> = (0..c.combo.len()).filter(|&n| c.combo[n].coeff.is_none()).collect();
    let fixed_vec: Vec<u64> = rows
        .iter()
        .map(|row| {
            c.combo
                .iter()
                .zip(row)
                .filter_map(|(t, &v)| t.coeff.map(|k| f.mul(f.elem(k), v)))
                .fold(0, |acc, x| f.add(acc, x))
        })
        .collect();
    let free_rows: Vec<Vec<u64>> = rows.iter().map(|row| free.iter().map(|&n| row[n]).collect()).collect();
    let (free_rank, _) = rank_and_nullspace(f, &free_rows, free.len());
    if c.combo.iter().any(|t| t.coeff.is_some_and(|k| f.elem(k) != 0)) {
        let augmented: Vec<Vec<u64>> =
            free_rows.iter().zip(&fixed_vec).map(|(r, &x)| r.iter().copied().chain([x]).collect()).collect();
        let (aug_rank, _) = rank_and_nullspace(f, &augmented, free.len() + 1);
        Ok(aug_rank == free_rank)
    } else {
        Ok(free_rank < free.len())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quick() -> OracleConfig {
        OracleConfig::default()
    }

    #[test]
    fn square_instance_passes() {
        let inst = Instance::build(4, 1, 3, 0).unwrap();
        let rep = verify_instance(&inst, &quick()).unwrap();
        assert!(rep.pass, "{:?}", rep.failures());
        assert!(rep.chain_checks.iter().any(|c| c.name == "surjectivity rank" && c.computed == json!(4)));
        assert!(rep.realizations.iter().all(|r| r.check_invariants()));
    }

    #[test]
    fn doubled_index_instance_passes() {
        let inst = Instance::build(7, 1, 4, 1).unwrap();
        let rep = verify_instance(&inst, &quick()).unwrap();
        assert!(rep.pass, "{:?}", rep.failures());
        for i in [6, 7] {
            let checks = &rep.components[i - 1].checks;
            assert!(checks.iter().any(|c| c.name == "x_1 membership" && c.pass));
            assert!(checks.iter().any(|c| c.name == "petri kernel" && c.pass));
        }
        assert!(rep.realizations.iter().any(|r| r.order == 2));
    }

    #[test]
    fn corrupted_order_is_flagged_alone() {
        let inst = Instance::build(7, 1, 4, 1).unwrap();
        let cases = [(SectionLabel::S(1), 3, Point::P, 1), (SectionLabel::T(2), 6, Point::P, -1), (SectionLabel::S(2), 7, Point::Q, 1)];
        for (label, i, point, delta) in cases {
            let bad = inject_fault(&inst, Fault::Order { label, i, point, delta });
            let rep = verify_instance(&bad, &quick()).unwrap();
            assert!(!rep.pass);
            assert_eq!(rep.failures(), vec![(i, format!("{label} orders"))]);
            assert_eq!(rep.attempts.len(), 2);
        }
    }

    #[test]
    fn corrupted_coefficients_are_flagged() {
        let inst = Instance::build(7, 1, 4, 1).unwrap();
        for c in &inst.elements[0].components {
            for term in 0..c.combo.len() {
                let bad = inject_fault(&inst, Fault::Coefficient { l: 1, i: c.i, term });
                let rep = verify_instance(&bad, &quick()).unwrap();
                assert_eq!(rep.failures(), vec![(c.i, "x_1 membership".to_string())], "component {} term {term}", c.i);
            }
        }
    }

    #[test]
    fn extended_instances_are_refused() {
        let inst = Instance::build(4, 1, 3, 1).unwrap();
        assert!(matches!(verify_instance(&inst, &quick()), Err(OracleError::Unsupported(_))));
    }
}
