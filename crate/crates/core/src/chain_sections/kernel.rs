use super::{product_orders, ChainError, ChainSpec, OrderPair, Point, SectionLabel, VanishingTable};
use crate::elliptic_pic::{class_of_point_divisor, h0_with_vanishing, lindep_witness};
use crate::fillings::{Filling, Spot};
use serde::Serialize;
use std::collections::HashSet;

/// How the `(a, b)` of a term are read on a component.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BasisKind {
    /// `s_a ⊗ t_b`.
    Product,
    /// `eσ_a ⊗ ēσ_b` on an appended generic component, `a, b ∈ [0, r]`.
    Sigma,
}

/// One summand; `coeff = None` means the coefficient is left to the
/// component's kernel computation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Term {
    pub a: usize,
    pub b: usize,
    pub coeff: Option<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum KernelCertificate {
    /// The products vanish at `(P_i, Q_i)` to at least `bound`, where the
    /// canonical aspect has only `h0 <= terms - 1` sections.
    Lindep { bound: OrderPair, h0: i64, terms: usize },
    /// `σ_x ⊗ σ_y - σ_y ⊗ σ_x` multiplies to zero.
    Antisymmetric,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KernelComponent {
    pub i: usize,
    pub basis: BasisKind,
    pub combo: Vec<Term>,
    #[serde(rename = "ordP")]
    pub ord_p: i64,
    #[serde(rename = "ordQ")]
    pub ord_q: i64,
    pub certificate: KernelCertificate,
}

impl KernelComponent {
    pub fn support(&self) -> Vec<(usize, usize)> {
        self.combo.iter().map(|t| (t.a, t.b)).collect()
    }
}

/// A glued collection of per-component Petri-kernel combinations.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KernelElement {
    pub l: usize,
    pub components: Vec<KernelComponent>,
}

impl KernelElement {
    pub fn component(&self, i: usize) -> &KernelComponent {
        &self.components[i - 1]
    }

    /// `ord_{Q_i} + ord_{P_{i+1}}` of the combination.
    pub fn node_sum(&self, i: usize) -> i64 {
        self.component(i).ord_q + self.component(i + 1).ord_p
    }
}

const MAX_TERMS: usize = 4;

type Choice = (Vec<(usize, usize)>, KernelCertificate);

struct Search<'a> {
    chain: &'a ChainSpec,
    table: &'a VanishingTable,
    products: Vec<(usize, usize)>,
    failed: HashSet<(usize, i64, bool)>,
}

impl Search<'_> {
    fn orders(&self, x: (usize, usize), i: usize) -> OrderPair {
        product_orders(self.table, x.0, x.1, i)
    }

    fn certify(&self, i: usize, support: &[(usize, usize)]) -> Option<KernelCertificate> {
        let model = self.chain.model(i);
        let g = self.chain.g as i64;
        let canonical = class_of_point_divisor(model, 2 * i as i64 - 2, 2 * g - 2 * i as i64);
        let orders: Vec<(i64, i64)> = support
            .iter()
            .map(|&x| {
                let o = self.orders(x, i);
                (o.p, o.q)
            })
            .collect();
        let k = support.len() as i64 - 1;
        if !lindep_witness(model, &canonical, &orders, k).ok()? {
            return None;
        }
        let bound = bounds(&orders);
        Some(KernelCertificate::Lindep {
            bound,
            h0: h0_with_vanishing(model, &canonical, bound.p, bound.q),
            terms: support.len(),
        })
    }

    /// Certified supports on `C_i` whose orders at `P_{i+1}` stay at or
    /// below `m`, best first. `strict` keeps only supports reaching `m`.
    fn options(&self, i: usize, m: i64, strict: bool) -> Vec<Choice> {
        let candidates: Vec<(usize, usize)> =
            self.products.iter().copied().filter(|&x| self.orders(x, i + 1).p <= m).collect();
        let floor = |size: usize| 2 * self.chain.g as i64 - 1 - size as i64;
        let mut found = Vec::new();
        for size in 2..=MAX_TERMS.min(candidates.len()) {
            let viable = |acc: &[(usize, usize)]| {
                let (p, q) = bounds_at(self, acc, i);
                p + q >= floor(size)
            };
            for_each_subset(&candidates, size, &viable, &mut |support| {
                let equal = support.iter().map(|&x| self.orders(x, i + 1).p).max() == Some(m);
                if strict && !equal {
                    return;
                }
                if let Some(cert) = self.certify(i, support) {
                    let low = support.iter().map(|&x| self.orders(x, i).p).min().unwrap_or(0);
                    found.push(((!equal, -low, size), support.to_vec(), cert));
                }
            });
        }
        found.sort_by(|x, y| x.0.cmp(&y.0).then_with(|| x.1.cmp(&y.1)));
        found.into_iter().map(|(_, s, c)| (s, c)).collect()
    }

    /// Chooses supports on `C_i, C_{i-1}, ..., C_1` given the minimal order
    /// `m` at `P_{i+1}` of the support above. With `strict`, every node
    /// sum must be exactly `2g - 2`.
    fn descend(&mut self, i: usize, m: i64, strict: bool) -> Option<Vec<Choice>> {
        if i == 0 {
            return Some(Vec::new());
        }
        if self.failed.contains(&(i, m, strict)) {
            return None;
        }
        for (support, cert) in self.options(i, m, strict) {
            let next = support.iter().map(|&x| self.orders(x, i).p).min().unwrap_or(0);
            if let Some(mut below) = self.descend(i - 1, next, strict) {
                below.push((support, cert));
                return Some(below);
            }
        }
        self.failed.insert((i, m, strict));
        None
    }
}

fn bounds(orders: &[(i64, i64)]) -> OrderPair {
    let (p, q) = crate::elliptic_pic::common_bounds(orders);
    OrderPair::new(p, q)
}

fn bounds_at(search: &Search<'_>, support: &[(usize, usize)], i: usize) -> (i64, i64) {
    support.iter().fold((i64::MAX, i64::MAX), |(p, q), &x| {
        let o = search.orders(x, i);
        (p.min(o.p), q.min(o.q))
    })
}

/// Subsets of `items` of the given size in lexicographic order. Partial
/// subsets failing `viable` are not extended.
fn for_each_subset<T: Copy>(items: &[T], size: usize, viable: &dyn Fn(&[T]) -> bool, visit: &mut dyn FnMut(&[T])) {
    fn go<T: Copy>(
        items: &[T],
        size: usize,
        start: usize,
        acc: &mut Vec<T>,
        viable: &dyn Fn(&[T]) -> bool,
        visit: &mut dyn FnMut(&[T]),
    ) {
        if acc.len() == size {
            visit(acc);
            return;
        }
        for n in start..items.len() {
            if items.len() - n < size - acc.len() {
                break;
            }
            acc.push(items[n]);
            if viable(acc) {
                go(items, size, n + 1, acc, viable, visit);
            }
            acc.pop();
        }
    }
    go(items, size, 0, &mut Vec::with_capacity(size), viable, visit);
}

fn terms_for(support: &[(usize, usize)]) -> Vec<Term> {
    match support {
        [x, y] => vec![Term { a: x.0, b: x.1, coeff: Some(1) }, Term { a: y.0, b: y.1, coeff: Some(-1) }],
        _ => support.iter().map(|&(a, b)| Term { a, b, coeff: None }).collect(),
    }
}

/// Builds the `k` kernel elements of a filling carrying the doubled
/// pattern: index `i(l)` at `(alpha-l, beta)` and `(alpha, beta-l)`.
///
/// Element `l` is `s_{alpha-l} ⊗ t_beta - s_alpha ⊗ t_{beta-l}` on every
/// component from the smallest doubled index up to `g`. Below that, each
/// component gets a certified combination of at most four products whose
/// orders at the next node glue with the combination above, exactly when
/// possible and with slack otherwise.
pub fn kernel_elements(
    filling: &Filling,
    chain: &ChainSpec,
    table: &VanishingTable,
    k: usize,
) -> Result<Vec<KernelElement>, ChainError> {
    if k == 0 {
        return Ok(Vec::new());
    }
    let (alpha, beta) = (filling.alpha(), filling.beta());
    let mut top = filling.g() as usize;
    for l in 1..=k {
        let index = filling.get(Spot::new(alpha - l, beta));
        if filling.get(Spot::new(alpha, beta - l)) != index {
            return Err(ChainError::NoDoubledPattern { l, index });
        }
        top = top.min(index as usize);
    }
    let products: Vec<(usize, usize)> =
        (1..=alpha).flat_map(|a| (1..=beta).map(move |b| (a, b))).collect();
    let mut search = Search { chain, table, products, failed: HashSet::new() };

    let mut out = Vec::with_capacity(k);
    for l in 1..=k {
        let pair = vec![(alpha - l, beta), (alpha, beta - l)];
        let mut upper = Vec::new();
        for i in top..=chain.g {
            let cert = search.certify(i, &pair).ok_or(ChainError::NoCertifiedCombination {
                l,
                i,
                candidates: pair.clone(),
            })?;
            upper.push(component(&search, i, pair.clone(), cert));
        }
        let m = pair.iter().map(|&x| search.orders(x, top).p).min().unwrap_or(0);
        let lower = search
            .descend(top - 1, m, true)
            .or_else(|| search.descend(top - 1, m, false))
            .ok_or_else(|| ChainError::NoCertifiedCombination {
            l,
            i: top - 1,
            candidates: search.products.clone(),
        })?;
        let mut components: Vec<KernelComponent> = lower
            .into_iter()
            .enumerate()
            .map(|(n, (support, cert))| component(&search, n + 1, support, cert))
            .collect();
        components.extend(upper);
        out.push(KernelElement { l, components });
    }
    Ok(out)
}

fn component(search: &Search<'_>, i: usize, support: Vec<(usize, usize)>, cert: KernelCertificate) -> KernelComponent {
    let orders: Vec<(i64, i64)> = support
        .iter()
        .map(|&x| {
            let o = search.orders(x, i);
            (o.p, o.q)
        })
        .collect();
    let b = bounds(&orders);
    KernelComponent {
        i,
        basis: BasisKind::Product,
        combo: terms_for(&support),
        ord_p: b.p,
        ord_q: b.q,
        certificate: cert,
    }
}

/// Order data of the second Petri map on the last component.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Mu1Image {
    pub l: usize,
    /// Order at `P_g` of the bicanonical image.
    pub ord_p: i64,
    /// Order at `Q_g` of the tensor `x̄_l` itself.
    pub ord_q: i64,
    /// Order at `Q_g` of the bicanonical image.
    pub image_ord_q: i64,
    /// Fixed part of the pencil `{s_a1, s_a2}`.
    pub fixed: OrderPair,
    /// Fixed part of the dual pencil `{t_b1, t_b2}`.
    pub dual_fixed: OrderPair,
    /// Ramification of the moving part of the pencil at `P_g` and `Q_g`.
    pub ramification: OrderPair,
}

/// For `x = s_a1 ⊗ t_b1 - s_a2 ⊗ t_b2` in the kernel on `C_g`, write
/// `s_a1 = f s_a2`; then `t_b2 = f t_b1` and the image is `-s_a2 t_b1 df`,
/// whose orders follow from those of the factors and `ord(df) = ord(f) - 1`.
pub fn mu1_image_orders(el: &KernelElement, table: &VanishingTable) -> Result<Mu1Image, ChainError> {
    let g = table.g;
    let last = el.components.last().filter(|c| c.i == g).ok_or(ChainError::NotPencilShape { l: el.l })?;
    let (x, y) = match last.combo.as_slice() {
        [x, y] if last.basis == BasisKind::Product && x.coeff == Some(1) && y.coeff == Some(-1) => (*x, *y),
        _ => return Err(ChainError::NotPencilShape { l: el.l }),
    };
    let s1 = table.get(SectionLabel::S(x.a), g);
    let s2 = table.get(SectionLabel::S(y.a), g);
    let t1 = table.get(SectionLabel::T(x.b), g);
    let t2 = table.get(SectionLabel::T(y.b), g);
    let f = OrderPair::new(s1.p - s2.p, s1.q - s2.q);
    if f.p == 0 {
        return Err(ChainError::DegenerateRatio { l: el.l, point: Point::P });
    }
    if f.q == 0 {
        return Err(ChainError::DegenerateRatio { l: el.l, point: Point::Q });
    }
    let fixed = OrderPair::new(s1.p.min(s2.p), s1.q.min(s2.q));
    let dual_fixed = OrderPair::new(t1.p.min(t2.p), t1.q.min(t2.q));
    Ok(Mu1Image {
        l: el.l,
        ord_p: s2.p + t1.p + f.p - 1,
        ord_q: last.ord_q,
        image_ord_q: s2.q + t1.q + f.q - 1,
        fixed,
        dual_fixed,
        ramification: OrderPair::new(f.p.abs() - 1, f.q.abs() - 1),
    })
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::{canonical, sweep};
    use super::*;

    #[test]
    fn small_pencil_element() {
        let (f, _, chain, table) = canonical(7, 1, 4, 1);
        let els = kernel_elements(&f, &chain, &table, 1).unwrap();
        assert_eq!(els.len(), 1);
        for i in [6, 7] {
            let c = els[0].component(i);
            assert_eq!(c.support(), vec![(1, 4), (2, 3)]);
            assert_eq!(c.combo[0].coeff, Some(1));
            assert_eq!(c.combo[1].coeff, Some(-1));
        }
        let mu = mu1_image_orders(&els[0], &table).unwrap();
        assert_eq!((mu.ord_p, mu.ord_q, mu.image_ord_q), (9, 1, 0));
        assert_eq!(mu.fixed, OrderPair::new(2, 0));
    }

    #[test]
    fn five_by_seven_elements() {
        let (f, _, chain, table) = canonical(31, 4, 28, 4);
        let els = kernel_elements(&f, &chain, &table, 4).unwrap();
        assert_eq!(els.len(), 4);
        for el in &els {
            for i in 27..=31 {
                assert_eq!(el.component(i).support(), vec![(5 - el.l, 7), (5, 7 - el.l)]);
            }
            let mu = mu1_image_orders(el, &table).unwrap();
            assert_eq!((mu.ord_p, mu.ord_q), (58 - el.l as i64, el.l as i64));
        }
    }

    #[test]
    fn empty_for_k_zero() {
        let (f, _, chain, table) = canonical(4, 1, 3, 0);
        assert!(kernel_elements(&f, &chain, &table, 0).unwrap().is_empty());
    }

    #[test]
    fn sweep_elements_glue_and_certify() {
        for (g, r, d, k) in sweep() {
            if k == 0 {
                continue;
            }
            let (f, _, chain, table) = canonical(g, r, d, k);
            let els = kernel_elements(&f, &chain, &table, k as usize).unwrap();
            assert_eq!(els.len(), k as usize);
            let gu = g as usize;
            let mut seen = HashSet::new();
            for el in &els {
                assert_eq!(el.components.len(), gu);
                for c in &el.components {
                    assert!(c.combo.len() >= 2 && c.combo.len() <= MAX_TERMS);
                    match &c.certificate {
                        KernelCertificate::Lindep { h0, terms, .. } => assert!(*h0 < *terms as i64),
                        other => panic!("unexpected {other:?}"),
                    }
                }
                for i in 1..gu {
                    assert_eq!(el.node_sum(i), 2 * g - 2, "({g},{r},{d},{k}) l={} node {i}", el.l);
                }
                let mu = mu1_image_orders(el, &table).unwrap();
                let l = el.l as i64;
                assert_eq!((mu.ord_p, mu.ord_q, mu.image_ord_q), (2 * g - 4 - l, l, l - 1));
                assert_eq!(mu.fixed.total(), d - 1 - l);
                assert_eq!(mu.dual_fixed.total(), 2 * g - 2 - d - 1 - l);
                assert_eq!(mu.ramification, OrderPair::new(l, l - 1));
                assert!(seen.insert((mu.ord_p, mu.ord_q)));
            }
        }
    }

    #[test]
    fn missing_doubled_pattern_rejected() {
        let (f, _, chain, table) = canonical(4, 1, 3, 0);
        assert!(matches!(
            kernel_elements(&f, &chain, &table, 1),
            Err(ChainError::NoDoubledPattern { l: 1, .. })
        ));
    }

    #[test]
    fn subsets_enumerated_in_order() {
        let mut seen = Vec::new();
        for_each_subset(&[1, 2, 3, 4], 2, &|_| true, &mut |s| seen.push(s.to_vec()));
        assert_eq!(seen, vec![vec![1, 2], vec![1, 3], vec![1, 4], vec![2, 3], vec![2, 4], vec![3, 4]]);
    }
}
