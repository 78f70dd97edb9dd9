//! Grassmann-number evaluation oracle: S-points of the group as generator
//! assignments into a finite exterior algebra over the rationals, point
//! evaluation of sections and pullback tables, group-law probes, and
//! comparison against an explicit matrix model. Agreement means literal
//! equality of Grassmann numbers; there are no tolerances.

use crate::rat::{rat, rint, Rat};
use crate::section::{
    delta_sections, delta_theta_sign, inv_pullback, mu_pullback, Section, TwoVarSection,
};
use crate::shcp::Shcp;
use crate::spoly::{bits, Parity, SPoly, Subst, VarSet};
use crate::AlgebraError;
use num_traits::Zero;
use std::sync::Arc;

/// Exterior algebra context on s odd generators.
pub fn grass_ctx(s: usize) -> Arc<VarSet> {
    VarSet::new(vec![], (0..s).map(|i| format!("eta{}", i + 1)).collect())
}

pub fn grass_body(g: &SPoly) -> Rat {
    g.terms
        .iter()
        .find(|(m, _)| m.od == 0)
        .map(|(_, c)| c.clone())
        .unwrap_or_else(|| rint(0))
}

/// An S-point of the group: even Grassmann values for the reduced
/// coordinates, odd values for the odd coordinate sections.
#[derive(Debug, Clone, PartialEq)]
pub struct SPoint {
    pub ctx: Arc<VarSet>,
    pub even_values: Vec<SPoly>,
    pub odd_values: Vec<SPoly>,
}

impl SPoint {
    pub fn new(
        shcp: &Shcp,
        ctx: &Arc<VarSet>,
        even_values: Vec<SPoly>,
        odd_values: Vec<SPoly>,
    ) -> Result<SPoint, AlgebraError> {
        if even_values.len() != shcp.hopf.n() || odd_values.len() != shcp.sla.q() {
            return Err(AlgebraError::InvalidPoint("wrong coordinate count".into()));
        }
        for (g, v) in shcp.hopf.gens.iter().zip(&even_values) {
            if !v.has_parity(Parity::Even) {
                return Err(AlgebraError::ParityMismatch(format!(
                    "even coordinate {} assigned an odd value",
                    g.name
                )));
            }
            if g.invertible && grass_body(v).is_zero() {
                return Err(AlgebraError::ZeroBody(format!(
                    "invertible coordinate {} assigned a zero-body value",
                    g.name
                )));
            }
        }
        for (n, v) in shcp.sla.odd_names.iter().zip(&odd_values) {
            if !v.has_parity(Parity::Odd) {
                return Err(AlgebraError::ParityMismatch(format!(
                    "odd coordinate {n} assigned an even value"
                )));
            }
        }
        Ok(SPoint {
            ctx: ctx.clone(),
            even_values,
            odd_values,
        })
    }

    /// The identity: reduced coordinates take their counit values, odd
    /// coordinates vanish.
    pub fn identity(shcp: &Shcp, ctx: &Arc<VarSet>) -> SPoint {
        SPoint {
            ctx: ctx.clone(),
            even_values: shcp
                .hopf
                .counit_rules
                .iter()
                .map(|c| SPoly::constant(ctx, c.clone()))
                .collect(),
            odd_values: vec![SPoly::zero(ctx); shcp.sla.q()],
        }
    }

    pub fn is_identity(&self, shcp: &Shcp) -> bool {
        self == &SPoint::identity(shcp, &self.ctx)
    }
}

/// Evaluates a coordinate function at the even values of a point.
pub fn eval_coord(shcp: &Shcp, f: &SPoly, pt: &SPoint) -> Result<SPoly, AlgebraError> {
    Subst::new(&shcp.hopf.vars1, &pt.ctx, pt.even_values.clone(), vec![])?.apply(f)
}

fn odd_product(pt: &SPoint, mask: u64) -> SPoly {
    let mut out = SPoly::one(&pt.ctx);
    for b in bits(mask) {
        out = out.mul(&pt.odd_values[b as usize]);
        if out.is_zero() {
            break;
        }
    }
    out
}

/// Point evaluation of a section through its table: the delta section at P
/// evaluates to the signed ordered product of the odd values.
pub fn eval_section(shcp: &Shcp, s: &Section, pt: &SPoint) -> Result<SPoly, AlgebraError> {
    let mut out = SPoly::zero(&pt.ctx);
    for (mask, v) in &s.table {
        let c = eval_coord(shcp, v, pt)?;
        if c.is_zero() {
            continue;
        }
        let od = odd_product(pt, *mask);
        out = out.add(&c.mul(&od).scale(&delta_theta_sign(*mask)));
    }
    Ok(out)
}

/// Point-pair evaluation of a two-variable table; the combined wedge sign
/// follows the product-group convention with the first factor's odd
/// generators preceding the second's.
pub fn eval_two_var(
    shcp: &Shcp,
    t: &TwoVarSection,
    a: &SPoint,
    b: &SPoint,
) -> Result<SPoly, AlgebraError> {
    let n = shcp.hopf.n();
    let ctx = &a.ctx;
    let mut out = SPoly::zero(ctx);
    for ((p, q), v) in &t.table {
        let k = (p.count_ones() + q.count_ones()) as i64;
        let sign = if (k * (k - 1) / 2) % 2 == 0 {
            rint(1)
        } else {
            rint(-1)
        };
        let mut coeff = SPoly::zero(ctx);
        for (m, c) in &v.terms {
            let mut acc = SPoly::constant(ctx, c.clone());
            for i in 0..n {
                if m.ev[i] != 0 {
                    acc = acc.mul(&a.even_values[i].pow(m.ev[i])?);
                }
            }
            for i in 0..n {
                if m.ev[n + i] != 0 {
                    acc = acc.mul(&b.even_values[i].pow(m.ev[n + i])?);
                }
            }
            coeff = coeff.add(&acc);
        }
        if coeff.is_zero() {
            continue;
        }
        let od = odd_product(a, *p).mul(&odd_product(b, *q));
        out = out.add(&coeff.mul(&od).scale(&sign));
    }
    Ok(out)
}

/// Precomputed pullbacks of all coordinate sections: the group law in the
/// table gauge.
#[derive(Debug, Clone)]
pub struct GroupLaw {
    pub mu_even: Vec<TwoVarSection>,
    pub mu_odd: Vec<TwoVarSection>,
    pub inv_even: Vec<Section>,
    pub inv_odd: Vec<Section>,
}

impl GroupLaw {
    pub fn new(shcp: &Shcp) -> Result<GroupLaw, AlgebraError> {
        let (evens, odds) = delta_sections(shcp);
        Ok(GroupLaw {
            mu_even: evens
                .iter()
                .map(|s| mu_pullback(shcp, s))
                .collect::<Result<_, _>>()?,
            mu_odd: odds
                .iter()
                .map(|s| mu_pullback(shcp, s))
                .collect::<Result<_, _>>()?,
            inv_even: evens
                .iter()
                .map(|s| inv_pullback(shcp, s))
                .collect::<Result<_, _>>()?,
            inv_odd: odds
                .iter()
                .map(|s| inv_pullback(shcp, s))
                .collect::<Result<_, _>>()?,
        })
    }
}

/// The product of two points through the multiplication pullback.
pub fn product_point(
    shcp: &Shcp,
    law: &GroupLaw,
    a: &SPoint,
    b: &SPoint,
) -> Result<SPoint, AlgebraError> {
    let even_values = law
        .mu_even
        .iter()
        .map(|t| eval_two_var(shcp, t, a, b))
        .collect::<Result<Vec<_>, _>>()?;
    let odd_values = law
        .mu_odd
        .iter()
        .map(|t| eval_two_var(shcp, t, a, b))
        .collect::<Result<Vec<_>, _>>()?;
    SPoint::new(shcp, &a.ctx, even_values, odd_values)
}

/// The inverse of a point through the inversion pullback.
pub fn inverse_point(shcp: &Shcp, law: &GroupLaw, a: &SPoint) -> Result<SPoint, AlgebraError> {
    let even_values = law
        .inv_even
        .iter()
        .map(|s| eval_section(shcp, s, a))
        .collect::<Result<Vec<_>, _>>()?;
    let odd_values = law
        .inv_odd
        .iter()
        .map(|s| eval_section(shcp, s, a))
        .collect::<Result<Vec<_>, _>>()?;
    SPoint::new(shcp, &a.ctx, even_values, odd_values)
}

/// Point-level associativity (a b) c = a (b c).
pub fn associativity_probe(
    shcp: &Shcp,
    law: &GroupLaw,
    a: &SPoint,
    b: &SPoint,
    c: &SPoint,
) -> Result<bool, AlgebraError> {
    let ab = product_point(shcp, law, a, b)?;
    let bc = product_point(shcp, law, b, c)?;
    Ok(product_point(shcp, law, &ab, c)? == product_point(shcp, law, a, &bc)?)
}

/// Point-level unit and inverse laws: a e = e a = a and a a^-1 = e.
pub fn unit_inverse_probe(shcp: &Shcp, law: &GroupLaw, a: &SPoint) -> Result<bool, AlgebraError> {
    let e = SPoint::identity(shcp, &a.ctx);
    let ae = product_point(shcp, law, a, &e)?;
    let ea = product_point(shcp, law, &e, a)?;
    if &ae != a || &ea != a {
        return Ok(false);
    }
    let ainv = inverse_point(shcp, law, a)?;
    let prod = product_point(shcp, law, a, &ainv)?;
    Ok(prod.is_identity(shcp))
}

/// An explicit matrix-style group law: named coordinates with parities, a
/// dictionary expressing each coordinate as a section, and product formulas
/// over the doubled coordinate set (first-factor copies precede
/// second-factor copies).
#[derive(Debug, Clone)]
pub struct MatrixModel {
    pub even_coords: Vec<String>,
    pub odd_coords: Vec<String>,
    pub dict_even: Vec<Section>,
    pub dict_odd: Vec<Section>,
    pub vars2: Arc<VarSet>,
    pub product_even: Vec<SPoly>,
    pub product_odd: Vec<SPoly>,
}

impl MatrixModel {
    /// The doubled model context: evens [a@1.., a@2..], odds [o@1.., o@2..].
    pub fn doubled_ctx(even_coords: &[String], odd_coords: &[String]) -> Arc<VarSet> {
        let mut evens = Vec::new();
        for slot in 1..=2 {
            for n in even_coords {
                evens.push(crate::spoly::EvenVar {
                    name: format!("{n}@{slot}"),
                    invertible: true,
                });
            }
        }
        let mut odds = Vec::new();
        for slot in 1..=2 {
            for n in odd_coords {
                odds.push(format!("{n}@{slot}"));
            }
        }
        VarSet::new(evens, odds)
    }
}

/// Evaluates the dictionary coordinates of a point.
pub fn model_coords(
    shcp: &Shcp,
    model: &MatrixModel,
    pt: &SPoint,
) -> Result<(Vec<SPoly>, Vec<SPoly>), AlgebraError> {
    let evens = model
        .dict_even
        .iter()
        .map(|s| eval_section(shcp, s, pt))
        .collect::<Result<Vec<_>, _>>()?;
    let odds = model
        .dict_odd
        .iter()
        .map(|s| eval_section(shcp, s, pt))
        .collect::<Result<Vec<_>, _>>()?;
    Ok((evens, odds))
}

/// Point-independent part of the model comparison: the multiplication
/// pullbacks of the dictionary coordinates, computed once.
#[derive(Debug, Clone)]
pub struct ModelCheck {
    pub tables: Vec<TwoVarSection>,
}

impl ModelCheck {
    pub fn new(shcp: &Shcp, model: &MatrixModel) -> Result<ModelCheck, AlgebraError> {
        let kernel = crate::section::MuKernel::new(shcp)?;
        let tables = model
            .dict_even
            .iter()
            .chain(model.dict_odd.iter())
            .map(|d| kernel.apply(shcp, d))
            .collect();
        Ok(ModelCheck { tables })
    }

    /// Exact Grassmann equality of the pullback evaluation with the model's
    /// product formula on the two coordinate tuples.
    pub fn check(
        &self,
        shcp: &Shcp,
        model: &MatrixModel,
        a: &SPoint,
        b: &SPoint,
    ) -> Result<bool, AlgebraError> {
        let (ae, ao) = model_coords(shcp, model, a)?;
        let (be, bo) = model_coords(shcp, model, b)?;
        let even_images: Vec<SPoly> = ae.iter().chain(be.iter()).cloned().collect();
        let odd_images: Vec<SPoly> = ao.iter().chain(bo.iter()).cloned().collect();
        let sub = Subst::new(&model.vars2, &a.ctx, even_images, odd_images)?;
        for (k, table) in self.tables.iter().enumerate() {
            let lhs = eval_two_var(shcp, table, a, b)?;
            let formula = if k < model.product_even.len() {
                &model.product_even[k]
            } else {
                &model.product_odd[k - model.product_even.len()]
            };
            let rhs = sub.apply(formula)?;
            if lhs != rhs {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// One-shot wrapper around `ModelCheck`.
pub fn pullback_vs_model(
    shcp: &Shcp,
    model: &MatrixModel,
    a: &SPoint,
    b: &SPoint,
) -> Result<bool, AlgebraError> {
    ModelCheck::new(shcp, model)?.check(shcp, model, a, b)
}

/// Deterministic pseudo-random stream (splitmix64).
pub struct Rng(u64);

impl Rng {
    pub fn new(seed: u64) -> Rng {
        Rng(seed)
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9E3779B97F4A7C15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
        z ^ (z >> 31)
    }

    pub fn int(&mut self, lo: i64, hi: i64) -> i64 {
        let span = (hi - lo + 1) as u64;
        lo + (self.next_u64() % span) as i64
    }

    pub fn nonzero_rat(&mut self) -> Rat {
        let mut n = 0;
        while n == 0 {
            n = self.int(-9, 9);
        }
        rat(n, self.int(1, 4))
    }

    pub fn rat(&mut self) -> Rat {
        rat(self.int(-9, 9), self.int(1, 4))
    }
}

/// A seeded random point: invertible-body even values with a sparse
/// even-degree soul, and linear odd values.
pub fn random_point(shcp: &Shcp, ctx: &Arc<VarSet>, rng: &mut Rng) -> SPoint {
    let s = ctx.odds.len();
    let even_values = shcp
        .hopf
        .gens
        .iter()
        .map(|g| {
            let body = if g.invertible {
                rng.nonzero_rat()
            } else {
                rng.rat()
            };
            let mut v = SPoly::constant(ctx, body);
            for _ in 0..2 {
                if s >= 2 {
                    let i = rng.int(0, s as i64 - 1) as usize;
                    let j = rng.int(0, s as i64 - 1) as usize;
                    if i != j {
                        let term = SPoly::odd_var(ctx, i)
                            .mul(&SPoly::odd_var(ctx, j))
                            .scale(&rng.rat());
                        v = v.add(&term);
                    }
                }
            }
            v
        })
        .collect();
    let odd_values = (0..shcp.sla.q())
        .map(|_| {
            let mut v = SPoly::zero(ctx);
            for j in 0..s {
                v = v.add(&SPoly::odd_var(ctx, j).scale(&rng.rat()));
            }
            v
        })
        .collect();
    SPoint {
        ctx: ctx.clone(),
        even_values,
        odd_values,
    }
}
