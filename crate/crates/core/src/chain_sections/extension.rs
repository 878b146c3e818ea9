use super::{
    AspectSeries, BasisKind, ChainError, ChainSpec, ComponentAspect, KernelCertificate, KernelComponent,
    KernelElement, OrderPair, Term, VanishingTable,
};
use crate::elliptic_pic::{class_of_point_divisor, h0_with_vanishing, BundleClass, ComponentModel};
use crate::numerology::extension_params;
use serde::Serialize;

/// A base chain of genus `g0` with `t` generic components appended.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExtendedChain {
    pub t: usize,
    pub g0: usize,
    pub chain: ChainSpec,
    pub aspects: AspectSeries,
    /// Orders of the extended `s_a`, indexed `[a - 1][i - 1]`.
    pub s_orders: Vec<Vec<OrderPair>>,
    pub elements: Vec<KernelElement>,
}

impl ExtendedChain {
    pub fn s(&self, a: usize, i: usize) -> OrderPair {
        self.s_orders[a - 1][i - 1]
    }
}

/// Appends `t = rho + k` generic components to a base chain built for
/// `(g0, r, d0, k)`.
///
/// Base aspects are twisted by `t Q_i`. On an appended component the aspect
/// is `L' ((d-r-g+i-1) P_i + (g-i) Q_i)` with `L'` of degree `r + 1`, equal
/// to `O((r+1) P_i)` up to a nontrivial 2-torsion twist; its dual is
/// `L' ((g-d+i-r-3) P_i + (g-i) Q_i)`. Both carry the `r + 1` sections
/// `σ_j` of `L'` with orders `(j, r-j)` times their fixed parts, and
/// element `l` continues as `σ_r ⊗ σ_{r-l} - σ_{r-l} ⊗ σ_r`.
#[allow(clippy::too_many_arguments)]
pub fn extend_chain(
    base_chain: &ChainSpec,
    base_aspects: &AspectSeries,
    base_table: &VanishingTable,
    base_elements: &[KernelElement],
    g: i64,
    r: i64,
    d: i64,
    k: i64,
) -> Result<ExtendedChain, ChainError> {
    let ext = extension_params(g, r, d, k)?;
    if base_chain.g as i64 != ext.g0 {
        return Err(ChainError::BaseMismatch { base: base_chain.g, g0: ext.g0 });
    }
    let (t, g0, gu) = (ext.t as usize, ext.g0 as usize, g as usize);

    let mut components = base_chain.components.clone();
    components.extend(std::iter::repeat_n(ComponentModel::Generic, t));
    let chain = ChainSpec { g: gu, r, d, components };

    let mut aspects = Vec::with_capacity(gu);
    for c in &base_aspects.components {
        let canonical = class_of_point_divisor(c.model, 2 * c.i as i64 - 2, 2 * g - 2 * c.i as i64);
        let bundle = c.bundle.add_points(c.model, 0, ext.t);
        let dual = c.dual.add_points(c.model, 0, ext.t);
        if c.canonical.add_points(c.model, 0, 2 * ext.t) != canonical || bundle.tensor(c.model, &dual) != canonical {
            return Err(ChainError::AspectMismatch { i: c.i, what: "twisted base aspects do not multiply to K".into() });
        }
        aspects.push(ComponentAspect { i: c.i, model: c.model, bundle, dual, canonical });
    }
    let model = ComponentModel::Generic;
    let l_prime = BundleClass::new(model, r + 1, r + 1).with_two_torsion_twist();
    for i in g0 + 1..=gu {
        let (fp, dfp, fq) = fixed_parts(g, r, d, i);
        if fp < 0 {
            return Err(ChainError::AspectMismatch { i, what: format!("negative fixed part {fp} at P") });
        }
        if dfp < 0 {
            return Err(ChainError::NegativeDualTwist { i, value: dfp });
        }
        let bundle = l_prime.add_points(model, fp, fq);
        let dual = l_prime.add_points(model, dfp, fq);
        let canonical = class_of_point_divisor(model, 2 * i as i64 - 2, 2 * g - 2 * i as i64);
        if bundle.tensor(model, &dual) != canonical {
            return Err(ChainError::AspectMismatch { i, what: "appended aspects do not multiply to K".into() });
        }
        for j in 0..=r {
            for (cls, o) in [(&bundle, sigma_orders(g, r, d, i, j)), (&dual, dual_sigma_orders(g, r, d, i, j))] {
                if h0_with_vanishing(model, cls, o.p, o.q) != 1 {
                    return Err(ChainError::AspectMismatch { i, what: format!("σ_{j} orders {o} not exact") });
                }
            }
        }
        aspects.push(ComponentAspect { i, model, bundle, dual, canonical });
    }

    let mut s_orders = Vec::with_capacity(base_table.alpha());
    for (n, row) in base_table.s.iter().enumerate() {
        let mut ext_row: Vec<OrderPair> = row.iter().map(|o| OrderPair::new(o.p, o.q + ext.t)).collect();
        ext_row.extend((g0 + 1..=gu).map(|i| sigma_orders(g, r, d, i, n as i64)));
        s_orders.push(ext_row);
    }

    let elements = base_elements
        .iter()
        .map(|el| {
            let mut components: Vec<KernelComponent> = el
                .components
                .iter()
                .map(|c| {
                    let certificate = match &c.certificate {
                        KernelCertificate::Lindep { bound, h0, terms } => KernelCertificate::Lindep {
                            bound: OrderPair::new(bound.p, bound.q + 2 * ext.t),
                            h0: *h0,
                            terms: *terms,
                        },
                        other => other.clone(),
                    };
                    KernelComponent { ord_q: c.ord_q + 2 * ext.t, certificate, ..c.clone() }
                })
                .collect();
            let l = el.l as i64;
            for i in g0 + 1..=gu {
                let x = sigma_orders(g, r, d, i, r) + dual_sigma_orders(g, r, d, i, r - l);
                let y = sigma_orders(g, r, d, i, r - l) + dual_sigma_orders(g, r, d, i, r);
                components.push(KernelComponent {
                    i,
                    basis: BasisKind::Sigma,
                    combo: vec![
                        Term { a: r as usize, b: (r - l) as usize, coeff: Some(1) },
                        Term { a: (r - l) as usize, b: r as usize, coeff: Some(-1) },
                    ],
                    ord_p: x.p.min(y.p),
                    ord_q: x.q.min(y.q),
                    certificate: KernelCertificate::Antisymmetric,
                });
            }
            KernelElement { l: el.l, components }
        })
        .collect();

    Ok(ExtendedChain { t, g0, chain, aspects: AspectSeries { components: aspects }, s_orders, elements })
}

/// Fixed parts on appended component `i`: `(P-part of L, P-part of the
/// dual, common Q-part)`.
fn fixed_parts(g: i64, r: i64, d: i64, i: usize) -> (i64, i64, i64) {
    let i = i as i64;
    (d - r - g + i - 1, g - d + i - r - 3, g - i)
}

/// Orders of `eσ_j` on appended component `i`.
pub(crate) fn sigma_orders(g: i64, r: i64, d: i64, i: usize, j: i64) -> OrderPair {
    let (fp, _, fq) = fixed_parts(g, r, d, i);
    OrderPair::new(j + fp, r - j + fq)
}

/// Orders of `ēσ_j` on appended component `i`.
pub(crate) fn dual_sigma_orders(g: i64, r: i64, d: i64, i: usize, j: i64) -> OrderPair {
    let (_, dfp, fq) = fixed_parts(g, r, d, i);
    OrderPair::new(j + dfp, r - j + fq)
}
