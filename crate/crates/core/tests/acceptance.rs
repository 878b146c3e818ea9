use std::collections::{BTreeSet, HashSet};
use std::path::Path;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use petri_loci::chain_sections::{
    product_orders, ChainSpec, Instance, KernelCertificate, Point, SectionLabel, VanishingTable,
};
use petri_loci::elliptic_pic::{h0_with_vanishing, BundleClass, ComponentModel};
use petri_loci::exact_oracle::{
    find_realization, inject_fault, rr_basis, verify_instance, Divisor, Fault, OracleConfig, OracleSession,
    SearchLimits,
};
use petri_loci::fillings::{enumerate_admissible, grid_distance, EnumerationConfig, Filling, GridDistance, Spot};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome, Duration);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Canonical base instances (`t = 0`) with `g <= 20` and both sides at most 6.
fn base_sweep() -> Vec<(i64, i64, i64, i64)> {
    let mut out = Vec::new();
    for g in 1..=20i64 {
        for r in 0..=5 {
            for d in 0..=2 * g {
                let (alpha, beta) = (r + 1, g - d + r);
                if !(1..=6).contains(&beta) || alpha > beta {
                    continue;
                }
                let k = alpha * beta - g;
                if (0..=r).contains(&k) {
                    out.push((g, r, d, k));
                }
            }
        }
    }
    out
}

fn build(g: i64, r: i64, d: i64, k: i64) -> Result<Instance, String> {
    Instance::build(g, r, d, k).map_err(|e| format!("build ({g},{r},{d},{k}): {e}"))
}

fn golden(name: &str) -> String {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    std::fs::read_to_string(path).expect("golden file")
}

fn criterion_1() -> Outcome {
    let mut orders = BTreeSet::new();
    for ((g, r, d, k), file) in [((31, 4, 28, 4), "rect_5x7.txt"), ((50, 5, 46, 4), "rect_6x9.txt")] {
        let inst = build(g, r, d, k)?;
        let rendered = inst.filling.render_ascii();
        ensure(rendered.trim_end() == golden(file).trim_end(), || format!("{file} differs:\n{rendered}"))?;
        orders.extend(inst.torsion.orders().values().copied());
    }
    let want: BTreeSet<u32> = [2, 4, 6, 8].into();
    ensure(orders == want, || format!("torsion orders {orders:?}"))?;
    Ok("both rectangles exact, torsion orders {2,4,6,8}".into())
}

fn criterion_2() -> Outcome {
    let f = build(31, 4, 28, 4)?.filling;
    let outside = grid_distance(&f, 22, Spot::new(5, 6));
    let inside = grid_distance(&f, 22, Spot::new(3, 3));
    ensure(outside == GridDistance { horizontal: 1, vertical: 5 }, || format!("(5,6): {outside:?}"))?;
    ensure(inside == GridDistance { horizontal: -1, vertical: -3 }, || format!("(3,3): {inside:?}"))?;
    Ok("(5,6) -> (1,5), (3,3) -> (-1,-3)".into())
}

fn below(values: impl IntoIterator<Item = u32>, i: usize) -> i64 {
    values.into_iter().filter(|&v| (v as usize) < i).count() as i64
}

fn check_orders(f: &Filling, chain: &ChainSpec, table: &VanishingTable) -> Result<(), String> {
    let g = chain.g;
    let d_bar = 2 * g as i64 - 2 - chain.d;
    for a in 1..=f.alpha() {
        let label = SectionLabel::S(a);
        for i in 1..=g {
            let closed = (a as i64 - 1) + (i as i64 - 1) - below(f.column(a), i);
            ensure(table.get(label, i).p == closed, || format!("{label} at P_{i}"))?;
            if i < g {
                let sum = table.get(label, i).q + table.get(label, i + 1).p;
                ensure(sum == chain.d, || format!("{label} node {i}: {sum}"))?;
            }
        }
    }
    for b in 1..=f.beta() {
        let label = SectionLabel::T(b);
        for i in 1..=g {
            let closed = (b as i64 - 1) + (i as i64 - 1) - below(f.row(b).iter().copied(), i);
            ensure(table.get(label, i).p == closed, || format!("{label} at P_{i}"))?;
            if i < g {
                let sum = table.get(label, i).q + table.get(label, i + 1).p;
                ensure(sum == d_bar, || format!("{label} node {i}: {sum}"))?;
            }
        }
    }
    for a in 1..=f.alpha() {
        for b in 1..=f.beta() {
            for i in 1..=g {
                let m = i64::from(f.column(a).contains(&(i as u32))) + i64::from(f.row(b).contains(&(i as u32)));
                let total = product_orders(table, a, b, i).total();
                ensure(total == 2 * g as i64 - 4 + m, || format!("s_{a} t_{b} on C_{i}: {total}"))?;
            }
        }
    }
    Ok(())
}

fn criterion_3() -> Outcome {
    let sweep = base_sweep();
    for &(g, r, d, k) in &sweep {
        let inst = build(g, r, d, k)?;
        check_orders(&inst.filling, &inst.chain, &inst.table).map_err(|e| format!("({g},{r},{d},{k}): {e}"))?;
    }
    Ok(format!("{} instances", sweep.len()))
}

/// Sections of a degree `2g - 2` bundle on an elliptic curve vanishing to
/// `(p, q)`, by Riemann-Roch.
fn canonical_h0(model: ComponentModel, g: i64, i: i64, p: i64, q: i64) -> i64 {
    let deg = 2 * g - 2 - p - q;
    if deg > 0 {
        return deg;
    }
    if deg < 0 {
        return 0;
    }
    let shift = 2 * i - 2 - p;
    let trivial = match model.order() {
        Some(l) => shift % l as i64 == 0,
        None => shift == 0,
    };
    i64::from(trivial)
}

fn criterion_4() -> Outcome {
    let mut count = 0;
    for (g, r, d, k) in base_sweep().into_iter().filter(|t| t.3 >= 1) {
        let tag = format!("({g},{r},{d},{k})");
        let inst = build(g, r, d, k)?;
        ensure(inst.elements.len() == k as usize, || format!("{tag}: {} elements", inst.elements.len()))?;
        let mut seen = HashSet::new();
        for (el, mu) in inst.elements.iter().zip(&inst.mu1) {
            for c in &el.components {
                let KernelCertificate::Lindep { bound, h0, terms } = &c.certificate else {
                    return Err(format!("{tag} l={} C_{}: not a lindep certificate", el.l, c.i));
                };
                ensure(*terms == c.combo.len() && *h0 < *terms as i64, || format!("{tag} C_{}: {h0} >= {terms}", c.i))?;
                let model = inst.chain.components[c.i - 1];
                let expect = canonical_h0(model, g, c.i as i64, bound.p, bound.q);
                ensure(*h0 == expect, || format!("{tag} C_{}: h0 {h0} vs {expect}", c.i))?;
                for t in &c.combo {
                    let o = product_orders(&inst.table, t.a, t.b, c.i);
                    ensure(o.p >= bound.p && o.q >= bound.q, || format!("{tag} C_{}: term below bound", c.i))?;
                }
            }
            for i in 1..g as usize {
                let sum = el.node_sum(i);
                ensure(sum >= 2 * g - 2, || format!("{tag} l={} node {i}: {sum}", el.l))?;
            }
            let l = el.l as i64;
            ensure((mu.ord_p, mu.ord_q) == (2 * g - 4 - l, l), || format!("{tag} l={l}: mu1 {mu:?}"))?;
            ensure(seen.insert((mu.ord_p, mu.ord_q)), || format!("{tag}: repeated mu1 orders"))?;
        }
        count += 1;
    }
    Ok(format!("{count} instances with k >= 1"))
}

fn criterion_5() -> Outcome {
    let mut count = 0;
    for g in 2..=20i64 {
        for r in 0..=5 {
            for d in 0..=2 * g {
                let beta = g - d + r;
                if !(1..=6).contains(&beta) || r + 1 > beta {
                    continue;
                }
                for k in 1..=r {
                    let t = g - (r + 1) * beta + k;
                    if t < 1 || k < -(g - (r + 1) * beta) {
                        continue;
                    }
                    let tag = format!("({g},{r},{d},{k})");
                    let inst = build(g, r, d, k)?;
                    let ext = inst.extension.as_ref().ok_or_else(|| format!("{tag}: no extension"))?;
                    ensure(ext.t as i64 == t, || format!("{tag}: t = {}", ext.t))?;
                    for (base, el) in inst.elements.iter().zip(&ext.elements) {
                        for i in ext.g0 + 1..g as usize {
                            ensure(el.node_sum(i) == 2 * g - 2, || format!("{tag} l={} node {i}", el.l))?;
                        }
                        for i in 1..=ext.g0 {
                            let (b, e) = (base.component(i), el.component(i));
                            ensure(e.ord_p == b.ord_p && e.ord_q == b.ord_q + 2 * t, || {
                                format!("{tag} l={} C_{i}: {:?} vs {:?}", el.l, (b.ord_p, b.ord_q), (e.ord_p, e.ord_q))
                            })?;
                        }
                    }
                    for i in 1..=ext.g0 {
                        let (b, e) = (inst.aspects.component(i), ext.aspects.component(i));
                        ensure(e.bundle == b.bundle.add_points(b.model, 0, t), || format!("{tag} C_{i}: bundle twist"))?;
                        ensure(e.dual == b.dual.add_points(b.model, 0, t), || format!("{tag} C_{i}: dual twist"))?;
                    }
                    count += 1;
                }
            }
        }
    }
    Ok(format!("{count} extended instances"))
}

fn criterion_6() -> Outcome {
    let cases = [(4, 1, 3, 0), (7, 1, 4, 1), (3, 1, 2, 1), (5, 1, 3, 1), (6, 1, 4, 0), (7, 2, 6, 2), (8, 1, 5, 0), (8, 2, 7, 1)];
    let mut checks = 0;
    for (g, r, d, k) in cases {
        let inst = build(g, r, d, k)?;
        let rep = verify_instance(&inst, &OracleConfig::default()).map_err(|e| format!("({g},{r},{d},{k}): {e}"))?;
        ensure(rep.pass, || format!("({g},{r},{d},{k}) over {:?}: {:?}", rep.attempts, rep.failures()))?;
        ensure(rep.chain_checks.iter().any(|c| c.name == "surjectivity rank" && c.pass), || {
            format!("({g},{r},{d},{k}): no rank check")
        })?;
        checks += rep.check_count();
    }
    Ok(format!("{} instances, {checks} checks", cases.len()))
}

fn criterion_7() -> Outcome {
    let limits = SearchLimits { generic_min_order: 40, ..SearchLimits::default() };
    let models = [ComponentModel::Torsion(2), ComponentModel::Torsion(3), ComponentModel::Torsion(4), ComponentModel::Generic];
    let mut count = 0;
    for model in models {
        let real = find_realization(model, 53, &limits).map_err(|e| format!("{model:?}: {e}"))?;
        for deg in -2..=12i64 {
            for a in -12..=12i64 {
                let div = Divisor::point(real.p_point, a).add(&Divisor::point(real.q_point, deg - a));
                let dim = rr_basis(&real.curve, &div).map_err(|e| format!("{model:?} {deg} {a}: {e}"))?.len() as i64;
                let expect = match deg {
                    ..=-1 => 0,
                    0 => i64::from(a % real.order as i64 == 0),
                    _ => deg,
                };
                let model_h0 = h0_with_vanishing(model, &BundleClass::new(model, deg, a), 0, 0);
                ensure(dim == expect && dim == model_h0, || {
                    format!("{model:?} deg {deg} offset {a}: rr {dim}, expected {expect}, model {model_h0}")
                })?;
                count += 1;
            }
        }
    }
    Ok(format!("{count} divisors over torsion 2, 3, 4 and generic"))
}

fn hook_count(alpha: usize, beta: usize) -> u128 {
    let mut hooks = Vec::new();
    for a in 1..=alpha {
        for b in 1..=beta {
            hooks.push((alpha - a + beta - b + 1) as u128);
        }
    }
    let mut count: u128 = (1..=(alpha * beta) as u128).product();
    for h in hooks {
        count /= h;
    }
    count
}

fn criterion_8() -> Outcome {
    let mut shapes = 0;
    let config = EnumerationConfig { cell_budget: 12 };
    for alpha in 1..=12 {
        for beta in 1..=12 / alpha {
            let n = enumerate_admissible(alpha, beta, (alpha * beta) as u32, &[], config)
                .map_err(|e| format!("{alpha}x{beta}: {e}"))?
                .len() as u128;
            let want = hook_count(alpha, beta);
            ensure(n == want, || format!("{alpha}x{beta}: {n} vs {want}"))?;
            shapes += 1;
        }
    }
    Ok(format!("{shapes} shapes"))
}

fn criterion_9() -> Outcome {
    let inst = build(7, 1, 4, 1)?;
    let config = OracleConfig::default();
    let session = OracleSession::find(&inst.chain.components, 29, &config).map_err(|e| e.to_string())?;
    let clean = session.verify(&inst).map_err(|e| e.to_string())?;
    ensure(clean.pass, || format!("clean instance fails over {}: {:?}", session.prime, clean.failures()))?;
    let mut faults = 0;
    for label in inst.table.labels() {
        for i in 1..=inst.chain.g {
            for point in [Point::P, Point::Q] {
                for delta in [1, -1] {
                    let bad = inject_fault(&inst, Fault::Order { label, i, point, delta });
                    let rep = session.verify(&bad).map_err(|e| e.to_string())?;
                    let want = vec![(i, format!("{label} orders"))];
                    ensure(rep.failures() == want, || {
                        format!("{label} C_{i} {point:?} {delta:+}: {:?}", rep.failures())
                    })?;
                    faults += 1;
                }
            }
        }
    }
    for el in &inst.elements {
        for c in &el.components {
            for term in 0..c.combo.len() {
                let bad = inject_fault(&inst, Fault::Coefficient { l: el.l, i: c.i, term });
                let rep = session.verify(&bad).map_err(|e| e.to_string())?;
                let want = vec![(c.i, format!("x_{} membership", el.l))];
                ensure(rep.failures() == want, || format!("x_{} C_{} term {term}: {:?}", el.l, c.i, rep.failures()))?;
                faults += 1;
            }
        }
    }
    Ok(format!("{faults} single faults each flagged alone"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("reference fillings", criterion_1, Duration::from_secs(1)),
        ("grid-distance anchors", criterion_2, Duration::from_secs(1)),
        ("section order sweep", criterion_3, Duration::from_secs(30)),
        ("kernel construction sweep", criterion_4, Duration::from_secs(60)),
        ("extension identity", criterion_5, Duration::from_secs(10)),
        ("oracle agreement", criterion_6, Duration::from_secs(300)),
        ("model agreement", criterion_7, Duration::from_secs(60)),
        ("enumeration oracle", criterion_8, Duration::from_secs(30)),
        ("fault injection", criterion_9, Duration::from_secs(30)),
    ];
    let mut all = true;
    for (n, (name, run, budget)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let (ok, detail) = match outcome {
            Ok(d) if elapsed <= budget => (true, d),
            Ok(d) => (false, format!("{d}; over budget {budget:?}")),
            Err(e) => (false, e),
        };
        all &= ok;
        println!(
            "criterion {}: {} {name} ({:.2} s): {detail}",
            n + 1,
            if ok { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64()
        );
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
