use super::{
    extend_chain, kernel_elements, mu1_image_orders, section_orders, surjectivity_certificate, AspectSeries,
    Certificate, ChainError, ChainSpec, ExtendedChain, KernelElement, Mu1Image, VanishingTable,
};
use crate::fillings::{canonical_filling, validate, Filling, FillingJson, TorsionAssignment};
use crate::numerology::{extension_params, BnParams, ExtensionParams};
use serde::Serialize;

/// Everything the construction produces for one `(g, r, d, k)`.
#[derive(Debug, Clone)]
pub struct Instance {
    pub params: BnParams,
    pub extension_params: ExtensionParams,
    pub filling: Filling,
    pub torsion: TorsionAssignment,
    /// Chain of genus `g0` carrying the canonical filling.
    pub chain: ChainSpec,
    pub table: VanishingTable,
    pub aspects: AspectSeries,
    pub elements: Vec<KernelElement>,
    pub mu1: Vec<Mu1Image>,
    /// Present when the filling uses every index.
    pub surjectivity: Option<Certificate>,
    /// Present when `t >= 1`.
    pub extension: Option<ExtendedChain>,
}

#[derive(Serialize)]
struct InstanceJson<'a> {
    g: i64,
    r: i64,
    d: i64,
    k: i64,
    rho: i64,
    t: i64,
    g0: i64,
    d0: i64,
    filling: FillingJson,
    chain: &'a ChainSpec,
    aspects: &'a AspectSeries,
    kernel_elements: &'a [KernelElement],
    mu1: &'a [Mu1Image],
    surjectivity: &'a Option<Certificate>,
    extension: &'a Option<ExtendedChain>,
}

impl Instance {
    /// Canonical filling for the base `(g0, r, d0, k)`, its chain, orders,
    /// aspects and kernel elements, then the generic extension to genus `g`.
    pub fn build(g: i64, r: i64, d: i64, k: i64) -> Result<Self, ChainError> {
        let params = BnParams::new(g, r, d, Some(k))?;
        let ext = extension_params(g, r, d, k)?;
        let (filling, torsion) = canonical_filling(ext.g0, r, ext.d0, k)?;
        let chain = ChainSpec::from_filling(&filling, &torsion, r, ext.d0)?;
        let table = section_orders(&filling, &chain)?;
        let aspects = AspectSeries::from_table(&filling, &chain, &table)?;
        let elements = kernel_elements(&filling, &chain, &table, k as usize)?;
        let mu1 = elements.iter().map(|el| mu1_image_orders(el, &table)).collect::<Result<Vec<_>, _>>()?;
        let surjectivity = if validate(&filling, &torsion).coverage {
            Some(surjectivity_certificate(&filling, &table, &filling.distinct_index_spots())?)
        } else {
            None
        };
        let extension = if ext.t > 0 {
            Some(extend_chain(&chain, &aspects, &table, &elements, g, r, d, k)?)
        } else {
            None
        };
        Ok(Instance {
            params,
            extension_params: ext,
            filling,
            torsion,
            chain,
            table,
            aspects,
            elements,
            mu1,
            surjectivity,
            extension,
        })
    }

    pub fn k(&self) -> i64 {
        self.params.k.unwrap_or(0)
    }

    /// Kernel elements on the full genus-`g` chain.
    pub fn final_elements(&self) -> &[KernelElement] {
        match &self.extension {
            Some(ext) => &ext.elements,
            None => &self.elements,
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        let p = &self.params;
        let e = &self.extension_params;
        let doc = InstanceJson {
            g: p.g,
            r: p.r,
            d: p.d,
            k: self.k(),
            rho: p.rho(),
            t: e.t,
            g0: e.g0,
            d0: e.d0,
            filling: self.filling.to_json(&self.torsion),
            chain: &self.chain,
            aspects: &self.aspects,
            kernel_elements: self.final_elements(),
            mu1: &self.mu1,
            surjectivity: &self.surjectivity,
            extension: &self.extension,
        };
        serde_json::to_value(doc).expect("instance serializes")
    }
}
