//! Global sections of the super group sheaf in the table gauge: a section is
//! a total map from wedge monomials on the odd part to coordinate functions
//! of the reduced group. This module implements section multiplication, the
//! group-operation pullbacks mu*, i*, e*, translations by rational points,
//! invariant vector fields, and the symbolic group-axiom suite.

use crate::hopf::{coord_eval, left_invariant_op, left_translate_fn, right_translate_fn, GroupPoint};
use crate::rat::{rint, Rat};
use crate::report::{Report, Violation};
use crate::shcp::Shcp;
use crate::spoly::{odd_merge_sign, EvenVar, Mono, Parity, SPoly, Subst, VarSet};
use crate::uea::{
    gamma, gamma_hat_inverse, lift_uea, render_wedge, uea_antipode, uea_coproduct, uea_mul,
    PolyRing, RatRing, Uea, WedgeElement,
};
use crate::AlgebraError;
use std::collections::BTreeMap;
use std::sync::Arc;

/// A global section in the table gauge; zero entries are not stored.
/// Values live in the reduced coordinate ring.
#[derive(Debug, Clone, PartialEq)]
pub struct Section {
    pub table: BTreeMap<u64, SPoly>,
}

impl Section {
    pub fn zero() -> Section {
        Section {
            table: BTreeMap::new(),
        }
    }

    pub fn from_entries(entries: Vec<(u64, SPoly)>) -> Section {
        let mut s = Section::zero();
        for (mask, v) in entries {
            s.add_entry(mask, v);
        }
        s
    }

    pub fn entry(&self, shcp: &Shcp, mask: u64) -> SPoly {
        self.table
            .get(&mask)
            .cloned()
            .unwrap_or_else(|| SPoly::zero(&shcp.hopf.vars1))
    }

    pub fn add_entry(&mut self, mask: u64, v: SPoly) {
        if v.is_zero() {
            return;
        }
        match self.table.get_mut(&mask) {
            Some(old) => {
                *old = old.add(&v);
                if old.is_zero() {
                    self.table.remove(&mask);
                }
            }
            None => {
                self.table.insert(mask, v);
            }
        }
    }

    pub fn add(&self, other: &Section) -> Section {
        let mut out = self.clone();
        for (m, v) in &other.table {
            out.add_entry(*m, v.clone());
        }
        out
    }

    pub fn scale(&self, r: &Rat) -> Section {
        let mut out = Section::zero();
        for (m, v) in &self.table {
            out.add_entry(*m, v.scale(r));
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.table.is_empty()
    }

    /// Parity as a section: wedge length mod 2, when homogeneous.
    pub fn parity(&self) -> Option<Parity> {
        let mut it = self.table.keys().map(|m| {
            if m.count_ones() % 2 == 0 {
                Parity::Even
            } else {
                Parity::Odd
            }
        });
        let first = it.next()?;
        if it.all(|p| p == first) {
            Some(first)
        } else {
            None
        }
    }

    pub fn homogeneous_component(&self, p: Parity) -> Section {
        Section {
            table: self
                .table
                .iter()
                .filter(|(m, _)| {
                    let even = m.count_ones() % 2 == 0;
                    (p == Parity::Even) == even
                })
                .map(|(m, v)| (*m, v.clone()))
                .collect(),
        }
    }
}

/// An element of the product-group section algebra, as a table over wedge
/// pairs with values over the doubled generator set.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoVarSection {
    pub table: BTreeMap<(u64, u64), SPoly>,
}

impl TwoVarSection {
    pub fn zero() -> TwoVarSection {
        TwoVarSection {
            table: BTreeMap::new(),
        }
    }

    pub fn add_entry(&mut self, key: (u64, u64), v: SPoly) {
        if v.is_zero() {
            return;
        }
        match self.table.get_mut(&key) {
            Some(old) => {
                *old = old.add(&v);
                if old.is_zero() {
                    self.table.remove(&key);
                }
            }
            None => {
                self.table.insert(key, v);
            }
        }
    }

    pub fn entry(&self, shcp: &Shcp, key: (u64, u64)) -> SPoly {
        self.table
            .get(&key)
            .cloned()
            .unwrap_or_else(|| SPoly::zero(&shcp.hopf.vars2))
    }
}

/// Table over wedge triples, values over the tripled generator set.
#[derive(Debug, Clone, PartialEq)]
pub struct ThreeVarSection {
    pub table: BTreeMap<(u64, u64, u64), SPoly>,
}

impl ThreeVarSection {
    pub fn zero() -> ThreeVarSection {
        ThreeVarSection {
            table: BTreeMap::new(),
        }
    }

    pub fn add_entry(&mut self, key: (u64, u64, u64), v: SPoly) {
        if v.is_zero() {
            return;
        }
        match self.table.get_mut(&key) {
            Some(old) => {
                *old = old.add(&v);
                if old.is_zero() {
                    self.table.remove(&key);
                }
            }
            None => {
                self.table.insert(key, v);
            }
        }
    }
}

pub fn all_wedges(q: usize) -> Vec<u64> {
    (0..(1u64 << q)).collect()
}

/// The unit section: 1 at the empty wedge.
pub fn unit_section(shcp: &Shcp) -> Section {
    Section::from_entries(vec![(0, SPoly::one(&shcp.hopf.vars1))])
}

/// Purely even section carrying a single coordinate function.
pub fn scalar_section(f: &SPoly) -> Section {
    Section::from_entries(vec![(0, f.clone())])
}

/// The coordinate sections: one per reduced-group generator (value at the
/// empty wedge) and one per odd basis direction (1 at the singleton wedge).
pub fn delta_sections(shcp: &Shcp) -> (Vec<Section>, Vec<Section>) {
    let evens = (0..shcp.hopf.n())
        .map(|i| scalar_section(&shcp.hopf.gen_poly(i)))
        .collect();
    let odds = (0..shcp.sla.q())
        .map(|v| Section::from_entries(vec![(1u64 << v, SPoly::one(&shcp.hopf.vars1))]))
        .collect();
    (evens, odds)
}

/// Section multiplication on tables through the exterior coproduct: split
/// the wedge, pair the factors against the two tables, multiply the values.
/// The sign combines the split-sorting permutation with the Koszul sign of
/// the second section moving past the first wedge part.
pub fn section_mul(shcp: &Shcp, a: &Section, b: &Section) -> Section {
    let _ = shcp;
    let mut out = Section::zero();
    for (pa, va) in &a.table {
        for (pb, vb) in &b.table {
            if let Some(sort) = odd_merge_sign(*pa, *pb) {
                let koszul = if pa.count_ones() % 2 == 1 && pb.count_ones() % 2 == 1 {
                    -1i64
                } else {
                    1
                };
                let v = va.mul(vb).scale(&rint(sort * koszul));
                out.add_entry(pa | pb, v);
            }
        }
    }
    out
}

/// Independent route for the same product: convolution through the
/// enveloping-algebra coproduct, evaluating both factors through the
/// factorization inverse. The second factor must be homogeneous as a
/// section; used to cross-check `section_mul`.
pub fn section_mul_u_route(shcp: &Shcp, a: &Section, b: &Section) -> Section {
    let pb = b.parity();
    let mut out = Section::zero();
    for mask in all_wedges(shcp.sla.q()) {
        let g = gamma(
            &shcp.sla,
            &RatRing,
            &WedgeElement::monomial(&RatRing, mask, rint(1)),
        );
        let d = uea_coproduct(&shcp.sla, &g);
        let mut val = SPoly::zero(&shcp.hopf.vars1);
        for ((u1, u2), c) in &d {
            let sign = match (pb, u1.parity()) {
                (Some(Parity::Odd), Parity::Odd) => rint(-1),
                _ => rint(1),
            };
            let fa = evaluate_on_uea_mono(shcp, a, u1);
            if fa.is_zero() {
                continue;
            }
            let fb = evaluate_on_uea_mono(shcp, b, u2);
            if fb.is_zero() {
                continue;
            }
            val = val.add(&fa.mul(&fb).scale(&(c * sign)));
        }
        out.add_entry(mask, val);
    }
    out
}

fn evaluate_on_uea_mono(shcp: &Shcp, s: &Section, p: &crate::uea::Pbw) -> SPoly {
    evaluate_on_uea(shcp, s, &Uea::monomial(p.clone(), rint(1)))
}

/// Evaluates a section on an arbitrary element of U(g): decompose through
/// the factorization inverse and apply the even parts as left invariant
/// operators on the table values.
pub fn evaluate_on_uea(shcp: &Shcp, s: &Section, u: &Uea<RatRing>) -> SPoly {
    let ring = shcp.ring1();
    let lifted = lift_uea(u, &ring);
    let mut out = SPoly::zero(&shcp.hopf.vars1);
    for ((z, mask), c) in gamma_hat_inverse(&shcp.sla, &ring, &lifted) {
        let tv = s.entry(shcp, mask);
        if tv.is_zero() {
            continue;
        }
        let dz = left_invariant_op(&shcp.hopf, &shcp.tangents, &z, &tv);
        out = out.add(&dz.mul(&c));
    }
    out
}

/// The section-independent part of the multiplication pullback: for each
/// wedge pair, the factorization-inverse decomposition of the sigma-twisted
/// product of the two wedge lifts, with coefficients in the second slot of
/// the doubled context.
#[derive(Debug, Clone)]
pub struct MuKernel {
    pub cells: BTreeMap<(u64, u64), Vec<(crate::uea::Pbw, u64, SPoly)>>,
}

impl MuKernel {
    pub fn new(shcp: &Shcp) -> Result<MuKernel, AlgebraError> {
        let vars2 = shcp.hopf.vars2.clone();
        let ring2 = PolyRing(vars2.clone());
        let mut cells = BTreeMap::new();
        for p in all_wedges(shcp.sla.q()) {
            let gp = gamma(
                &shcp.sla,
                &RatRing,
                &WedgeElement::monomial(&RatRing, p, rint(1)),
            );
            let twisted = shcp.sigma_apply(&gp, &vars2, 1, true)?;
            for q in all_wedges(shcp.sla.q()) {
                let gq = gamma(
                    &shcp.sla,
                    &RatRing,
                    &WedgeElement::monomial(&RatRing, q, rint(1)),
                );
                let v = uea_mul(&shcp.sla, &ring2, &twisted, &lift_uea(&gq, &ring2));
                let decomp: Vec<(crate::uea::Pbw, u64, SPoly)> =
                    gamma_hat_inverse(&shcp.sla, &ring2, &v)
                        .into_iter()
                        .map(|((z, mask), c)| (z, mask, c))
                        .collect();
                cells.insert((p, q), decomp);
            }
        }
        Ok(MuKernel { cells })
    }

    /// Assembles the pullback of a section against the precomputed kernel.
    pub fn apply(&self, shcp: &Shcp, s: &Section) -> TwoVarSection {
        let vars2 = shcp.hopf.vars2.clone();
        let mut out = TwoVarSection::zero();
        for (cell, decomp) in &self.cells {
            let mut val = SPoly::zero(&vars2);
            for (z, mask, c) in decomp {
                let tv = s.entry(shcp, *mask);
                if tv.is_zero() {
                    continue;
                }
                let dz = left_invariant_op(&shcp.hopf, &shcp.tangents, z, &tv);
                let spread = shcp.hopf.coproduct_into(&dz, &vars2, 0, 1);
                val = val.add(&spread.mul(c));
            }
            out.add_entry(*cell, val);
        }
        out
    }
}

/// Multiplication pullback. Cell (P, Q) carries the value of the section on
/// the sigma-twisted product of the two wedge lifts: twist the first factor
/// by the inverted second-slot group variable, multiply in U(g), decompose,
/// apply the section with U(g0)-linearity (giving a function of the product
/// variable), then expand through the coordinate coproduct while the twist
/// coefficients stay in the second slot.
pub fn mu_pullback(shcp: &Shcp, s: &Section) -> Result<TwoVarSection, AlgebraError> {
    Ok(MuKernel::new(shcp)?.apply(shcp, s))
}

/// Inversion pullback: antipode in U(g), twist by the inverted group
/// variable, evaluate, then the coordinate antipode on the result.
pub fn inv_pullback(shcp: &Shcp, s: &Section) -> Result<Section, AlgebraError> {
    let vars1 = shcp.hopf.vars1.clone();
    let ring1 = shcp.ring1();
    let mut out = Section::zero();
    for p in all_wedges(shcp.sla.q()) {
        let gp = gamma(
            &shcp.sla,
            &RatRing,
            &WedgeElement::monomial(&RatRing, p, rint(1)),
        );
        let su = uea_antipode(&shcp.sla, &RatRing, &gp);
        let twisted = shcp.sigma_apply(&su, &vars1, 0, true)?;
        let mut val = SPoly::zero(&vars1);
        for ((z, mask), c) in gamma_hat_inverse(&shcp.sla, &ring1, &twisted) {
            let tv = s.entry(shcp, mask);
            if tv.is_zero() {
                continue;
            }
            let dz = left_invariant_op(&shcp.hopf, &shcp.tangents, &z, &tv);
            val = val.add(&dz.mul(&c));
        }
        if !val.is_zero() {
            out.add_entry(p, shcp.hopf.antipode(&val)?);
        }
    }
    Ok(out)
}

/// Unit pullback: counit of the empty-wedge entry.
pub fn counit_pullback(shcp: &Shcp, s: &Section) -> Rat {
    shcp.hopf.counit(&s.entry(shcp, 0))
}

pub fn left_translate(shcp: &Shcp, s: &Section, h: &GroupPoint) -> Result<Section, AlgebraError> {
    let mut out = Section::zero();
    for (mask, v) in &s.table {
        out.add_entry(*mask, left_translate_fn(&shcp.hopf, v, h)?);
    }
    Ok(out)
}

/// Applies a constant matrix (rows index the output basis) to every letter
/// of every word, then renormalizes.
fn apply_constant_matrix(shcp: &Shcp, mat: &[Vec<Rat>], u: &Uea<RatRing>) -> Uea<RatRing> {
    let n = shcp.sla.dim();
    let mut out = Uea::zero();
    for (p, c) in &u.terms {
        let mut acc = Uea::one(&shcp.sla, &RatRing).scale(&RatRing, c);
        for letter in p.word(&shcp.sla) {
            let mut image: Uea<RatRing> = Uea::zero();
            for (k, row) in mat.iter().enumerate().take(n) {
                if !num_traits::Zero::is_zero(&row[letter]) {
                    image.add_term(
                        &RatRing,
                        crate::uea::Pbw::generator(&shcp.sla, k),
                        row[letter].clone(),
                    );
                }
            }
            acc = uea_mul(&shcp.sla, &RatRing, &acc, &image);
        }
        out = out.add(&RatRing, &acc);
    }
    out
}

/// sigma(h^-1) as an exact matrix at a rational point.
pub fn sigma_inverse_at(shcp: &Shcp, h: &GroupPoint) -> Result<Vec<Vec<Rat>>, AlgebraError> {
    let n = shcp.sla.dim();
    let mut out = vec![vec![Rat::from_integer(0.into()); n]; n];
    for k in 0..n {
        for j in 0..n {
            let s = shcp.hopf.antipode(&shcp.sigma[k][j])?;
            out[k][j] = coord_eval(&shcp.hopf, &s, h)?;
        }
    }
    Ok(out)
}

/// Right translation: twist the wedge argument by sigma(h^-1) at the point,
/// then the reduced right-translation pullback on the values.
pub fn right_translate(shcp: &Shcp, s: &Section, h: &GroupPoint) -> Result<Section, AlgebraError> {
    let mat = sigma_inverse_at(shcp, h)?;
    let mut out = Section::zero();
    for p in all_wedges(shcp.sla.q()) {
        let gp = gamma(
            &shcp.sla,
            &RatRing,
            &WedgeElement::monomial(&RatRing, p, rint(1)),
        );
        let twisted = apply_constant_matrix(shcp, &mat, &gp);
        let val = evaluate_on_uea(shcp, s, &twisted);
        if val.is_zero() {
            continue;
        }
        out.add_entry(p, right_translate_fn(&shcp.hopf, &val, h)?);
    }
    Ok(out)
}

/// Left invariant operator of an element of U(g) applied to a section:
/// result table at P is (-1)^{p(X)} s(gamma(P) X), per homogeneous term.
pub fn left_inv_vf(shcp: &Shcp, x: &Uea<RatRing>, s: &Section) -> Section {
    let mut signed: Uea<RatRing> = Uea::zero();
    for (p, c) in &x.terms {
        let sign = match p.parity() {
            Parity::Odd => rint(-1),
            Parity::Even => rint(1),
        };
        signed.add_term(&RatRing, p.clone(), c * sign);
    }
    let mut out = Section::zero();
    for p in all_wedges(shcp.sla.q()) {
        let gp = gamma(
            &shcp.sla,
            &RatRing,
            &WedgeElement::monomial(&RatRing, p, rint(1)),
        );
        let w = uea_mul(&shcp.sla, &RatRing, &gp, &signed);
        let val = evaluate_on_uea(shcp, s, &w);
        out.add_entry(p, val);
    }
    out
}

/// Right invariant vector field of a basis vector on a section, handled per
/// homogeneous component of the section: the twist coefficients and the
/// result share the single group variable.
pub fn right_inv_vf(
    shcp: &Shcp,
    basis_index: usize,
    s: &Section,
) -> Result<Section, AlgebraError> {
    let ring1 = shcp.ring1();
    let vars1 = shcp.hopf.vars1.clone();
    let px = shcp.sla.parity(basis_index);
    let mut out = Section::zero();
    for comp_parity in [Parity::Even, Parity::Odd] {
        let comp = s.homogeneous_component(comp_parity);
        if comp.is_zero() {
            continue;
        }
        let sign = if px == Parity::Odd && comp_parity == Parity::Odd {
            rint(-1)
        } else {
            rint(1)
        };
        let xg = Uea::generator(&shcp.sla, &RatRing, basis_index);
        let twisted = shcp.sigma_apply(&xg, &vars1, 0, true)?;
        for p in all_wedges(shcp.sla.q()) {
            let gp = gamma(
                &shcp.sla,
                &RatRing,
                &WedgeElement::monomial(&RatRing, p, rint(1)),
            );
            let v = uea_mul(&shcp.sla, &ring1, &twisted, &lift_uea(&gp, &ring1));
            let mut val = SPoly::zero(&vars1);
            for ((z, mask), c) in gamma_hat_inverse(&shcp.sla, &ring1, &v) {
                let tv = comp.entry(shcp, mask);
                if tv.is_zero() {
                    continue;
                }
                let dz = left_invariant_op(&shcp.hopf, &shcp.tangents, &z, &tv);
                val = val.add(&dz.mul(&c));
            }
            out.add_entry(p, val.scale(&sign));
        }
    }
    Ok(out)
}

/// Context with the odd coordinate sections as odd variables, used to move
/// between tables and the supercommutative polynomial presentation.
pub fn theta_ctx(shcp: &Shcp) -> Arc<VarSet> {
    let evens: Vec<EvenVar> = shcp.hopf.vars1.evens.clone();
    let odds: Vec<String> = shcp
        .sla
        .odd_names
        .iter()
        .map(|n| format!("Th_{n}"))
        .collect();
    VarSet::new(evens, odds)
}

/// Sign linking the delta table basis to ordered products of the odd
/// coordinate sections: delta_P = (-1)^{|P|(|P|-1)/2} Theta^P.
pub fn delta_theta_sign(mask: u64) -> Rat {
    let k = mask.count_ones() as i64;
    if (k * (k - 1) / 2) % 2 == 0 {
        rint(1)
    } else {
        rint(-1)
    }
}

/// A section as a polynomial in the odd coordinate sections. The target
/// context must start with the reduced-group generators followed by one odd
/// variable per odd basis direction (possibly followed by payload
/// variables, which stay untouched).
pub fn section_to_poly(shcp: &Shcp, s: &Section, ctx: &Arc<VarSet>) -> SPoly {
    let even_map: Vec<usize> = (0..shcp.hopf.n()).collect();
    let embed = Subst::renaming(&shcp.hopf.vars1, ctx, &even_map, &[]);
    let mut out = SPoly::zero(ctx);
    for (mask, v) in &s.table {
        let coeff = embed
            .apply(v)
            .expect("renaming")
            .scale(&delta_theta_sign(*mask));
        let theta = SPoly::monomial(
            ctx,
            Mono {
                od: *mask,
                ev: vec![0; ctx.evens.len()],
            },
            rint(1),
        );
        out = out.add(&coeff.mul(&theta));
    }
    out
}

/// Inverse of `section_to_poly` for polynomials whose even support lies in
/// the leading reduced-group block.
pub fn poly_to_section(shcp: &Shcp, p: &SPoly) -> Section {
    let n = shcp.hopf.n();
    let mut out = Section::zero();
    for (mask, coeff) in p.split_by_odd_mask() {
        let mut v = SPoly::zero(&shcp.hopf.vars1);
        for (m, c) in &coeff.terms {
            assert!(
                m.ev[n..].iter().all(|e| *e == 0),
                "polynomial has even support outside the group block"
            );
            v = v.add(&SPoly::monomial(
                &shcp.hopf.vars1,
                Mono {
                    od: 0,
                    ev: m.ev[..n].to_vec(),
                },
                c.clone(),
            ));
        }
        out.add_entry(mask, v.scale(&delta_theta_sign(mask)));
    }
    out
}

/// (e* (x) id) or (id (x) e*) of a two-variable section.
pub fn counit_slot(shcp: &Shcp, t: &TwoVarSection, first_slot: bool) -> Section {
    let n = shcp.hopf.n();
    let mut out = Section::zero();
    for ((p, q), v) in &t.table {
        let (kept, killed) = if first_slot { (*q, *p) } else { (*p, *q) };
        if killed != 0 {
            continue;
        }
        let images: Vec<SPoly> = (0..2 * n)
            .map(|k| {
                let slot0 = k < n;
                let i = k % n;
                if slot0 == first_slot {
                    SPoly::constant(&shcp.hopf.vars1, shcp.hopf.counit_rules[i].clone())
                } else {
                    SPoly::even_var(&shcp.hopf.vars1, i, 1)
                }
            })
            .collect();
        let collapsed = Subst::new(&shcp.hopf.vars2, &shcp.hopf.vars1, images, vec![])
            .expect("well formed")
            .apply(v)
            .expect("counit values invertible where needed");
        out.add_entry(kept, collapsed);
    }
    out
}

/// Applies mu* to the chosen slot of a two-variable section; the other slot
/// rides along as an inert purely even payload. Slot 0 expands into slots
/// (0, 1) of the triple context, slot 1 into (1, 2).
pub fn mu_on_slot(
    shcp: &Shcp,
    kernel: &MuKernel,
    t: &TwoVarSection,
    slot: usize,
) -> Result<ThreeVarSection, AlgebraError> {
    let n = shcp.hopf.n();
    let vars3 = shcp.hopf.vars3.clone();
    let mut out = ThreeVarSection::zero();
    let mut grouped: BTreeMap<(u64, Mono), Section> = BTreeMap::new();
    for ((p, q), v) in &t.table {
        let (active_mask, inert_mask) = if slot == 0 { (*p, *q) } else { (*q, *p) };
        for (m, c) in &v.terms {
            let m0 = Mono {
                od: 0,
                ev: m.ev[..n].to_vec(),
            };
            let m1 = Mono {
                od: 0,
                ev: m.ev[n..].to_vec(),
            };
            let (active_mono, inert_mono) = if slot == 0 { (m0, m1) } else { (m1, m0) };
            let e = grouped
                .entry((inert_mask, inert_mono))
                .or_insert_with(Section::zero);
            e.add_entry(
                active_mask,
                SPoly::monomial(&shcp.hopf.vars1, active_mono, c.clone()),
            );
        }
    }
    for ((inert_mask, inert_mono), sect) in grouped {
        let expanded = kernel.apply(shcp, &sect);
        let slot_map: (usize, usize) = if slot == 0 { (0, 1) } else { (1, 2) };
        let inert_slot = if slot == 0 { 2 } else { 0 };
        let even_map: Vec<usize> = (0..n)
            .map(|k| slot_map.0 * n + k)
            .chain((0..n).map(|k| slot_map.1 * n + k))
            .collect();
        let embed = Subst::renaming(&shcp.hopf.vars2, &vars3, &even_map, &[]);
        let mut inert_ev = vec![0i32; 3 * n];
        inert_ev[inert_slot * n..(inert_slot + 1) * n].copy_from_slice(&inert_mono.ev);
        let inert_poly = SPoly::monomial(
            &vars3,
            Mono {
                od: 0,
                ev: inert_ev,
            },
            rint(1),
        );
        for ((p1, p2), v) in &expanded.table {
            let val = embed.apply(v).expect("renaming").mul(&inert_poly);
            let key = if slot == 0 {
                (*p1, *p2, inert_mask)
            } else {
                (inert_mask, *p1, *p2)
            };
            out.add_entry(key, val);
        }
    }
    Ok(out)
}

/// Applies i* to the chosen slot of a two-variable section, then collapses
/// the product variables back to one through section multiplication.
pub fn antipode_slot_and_merge(
    shcp: &Shcp,
    t: &TwoVarSection,
    s_first: bool,
) -> Result<Section, AlgebraError> {
    let n = shcp.hopf.n();
    let mut grouped: BTreeMap<(u64, Mono), Section> = BTreeMap::new();
    for ((p, q), v) in &t.table {
        let (active_mask, other_mask) = if s_first { (*p, *q) } else { (*q, *p) };
        for (m, c) in &v.terms {
            let m0 = Mono {
                od: 0,
                ev: m.ev[..n].to_vec(),
            };
            let m1 = Mono {
                od: 0,
                ev: m.ev[n..].to_vec(),
            };
            let (active_mono, other_mono) = if s_first { (m0, m1) } else { (m1, m0) };
            let e = grouped
                .entry((other_mask, other_mono))
                .or_insert_with(Section::zero);
            e.add_entry(
                active_mask,
                SPoly::monomial(&shcp.hopf.vars1, active_mono, c.clone()),
            );
        }
    }
    let mut out = Section::zero();
    for ((other_mask, other_mono), sect) in grouped {
        let inverted = inv_pullback(shcp, &sect)?;
        let other_fn = SPoly::monomial(&shcp.hopf.vars1, other_mono, rint(1));
        let other_section = Section::from_entries(vec![(other_mask, other_fn)]);
        let prod = if s_first {
            section_mul(shcp, &inverted, &other_section)
        } else {
            section_mul(shcp, &other_section, &inverted)
        };
        out = out.add(&prod);
    }
    Ok(out)
}

/// Left invariant operator of a single even basis vector acting on the
/// chosen slot of a doubled-context value.
pub fn d_on_slot(shcp: &Shcp, v: &SPoly, slot: usize, z_idx: usize) -> SPoly {
    let n = shcp.hopf.n();
    let vars2 = &shcp.hopf.vars2;
    let z = &shcp.tangents[z_idx];
    let mut out = SPoly::zero(vars2);
    for (m, c) in &v.terms {
        let active = Mono {
            od: 0,
            ev: m.ev[slot * n..(slot + 1) * n].to_vec(),
        };
        let single = SPoly::monomial(&shcp.hopf.vars1, active, rint(1));
        let d = crate::hopf::left_invariant_single(&shcp.hopf, z, &single);
        for (dm, dc) in &d.terms {
            let mut ev = m.ev.clone();
            ev[slot * n..(slot + 1) * n].copy_from_slice(&dm.ev);
            out = out.add(&SPoly::monomial(vars2, Mono { od: 0, ev }, c * dc));
        }
    }
    out
}

/// The value of mu*(s) on (gamma(P), Z gamma(Q)) for an even basis vector Z,
/// computed directly from the defining formula.
fn mu_cell_with_even_insertion(
    shcp: &Shcp,
    s: &Section,
    p: u64,
    z_idx: usize,
    q: u64,
) -> Result<SPoly, AlgebraError> {
    let vars2 = shcp.hopf.vars2.clone();
    let ring2 = PolyRing(vars2.clone());
    let gp = gamma(
        &shcp.sla,
        &RatRing,
        &WedgeElement::monomial(&RatRing, p, rint(1)),
    );
    let twisted = shcp.sigma_apply(&gp, &vars2, 1, true)?;
    let zq = uea_mul(
        &shcp.sla,
        &RatRing,
        &Uea::generator(&shcp.sla, &RatRing, z_idx),
        &gamma(
            &shcp.sla,
            &RatRing,
            &WedgeElement::monomial(&RatRing, q, rint(1)),
        ),
    );
    let v = uea_mul(&shcp.sla, &ring2, &twisted, &lift_uea(&zq, &ring2));
    let mut cell = SPoly::zero(&vars2);
    for ((z, mask), c) in gamma_hat_inverse(&shcp.sla, &ring2, &v) {
        let tv = s.entry(shcp, mask);
        if tv.is_zero() {
            continue;
        }
        let dz = left_invariant_op(&shcp.hopf, &shcp.tangents, &z, &tv);
        let spread = shcp.hopf.coproduct_into(&dz, &vars2, 0, 1);
        cell = cell.add(&spread.mul(&c));
    }
    Ok(cell)
}

/// Symbolic group-axiom suite on all coordinate sections: coassociativity of
/// mu*, the unit laws with e*, the antipode laws with i*, and second-slot
/// U(g0)-linearity of mu* (which is what a broken sigma twist destroys).
/// Reports the first failing wedge cell of each failing law.
pub fn hopf_axiom_suite(shcp: &Shcp) -> Result<Report, AlgebraError> {
    let mut report = Report::new();
    let (evens, odds) = delta_sections(shcp);
    let named: Vec<(String, Section)> = evens
        .into_iter()
        .enumerate()
        .map(|(i, s)| (format!("phi_{}", shcp.hopf.gens[i].name), s))
        .chain(
            odds.into_iter()
                .enumerate()
                .map(|(v, s)| (format!("Phi_{}", shcp.sla.odd_names[v]), s)),
        )
        .collect();
    let kernel = MuKernel::new(shcp)?;
    for (name, sect) in &named {
        let t = kernel.apply(shcp, sect);
        let lhs = mu_on_slot(shcp, &kernel, &t, 0)?;
        let rhs = mu_on_slot(shcp, &kernel, &t, 1)?;
        if lhs != rhs {
            let cell = lhs
                .table
                .iter()
                .find(|(k, v)| rhs.table.get(k) != Some(v))
                .map(|(k, _)| *k)
                .or_else(|| {
                    rhs.table
                        .iter()
                        .find(|(k, v)| lhs.table.get(k) != Some(v))
                        .map(|(k, _)| *k)
                })
                .unwrap_or((0, 0, 0));
            report.push(Violation::new(
                "mu-coassociativity",
                format!("{name} cell {cell:?}"),
                "(mu* (x) id) mu* != (id (x) mu*) mu*",
            ));
        }
        for first in [true, false] {
            let collapsed = counit_slot(shcp, &t, first);
            if collapsed != *sect {
                report.push(Violation::new(
                    "mu-unit",
                    name.clone(),
                    if first {
                        "(e* (x) id) mu* != id"
                    } else {
                        "(id (x) e*) mu* != id"
                    },
                ));
            }
        }
        let eps = counit_pullback(shcp, sect);
        let expect = unit_section(shcp).scale(&eps);
        for s_first in [true, false] {
            let merged = antipode_slot_and_merge(shcp, &t, s_first)?;
            if merged != expect {
                report.push(Violation::new(
                    "mu-antipode",
                    name.clone(),
                    if s_first {
                        "m (i* (x) id) mu* != e* 1"
                    } else {
                        "m (id (x) i*) mu* != e* 1"
                    },
                ));
            }
        }
        // second-slot linearity: mu*(s)(gamma(P), Z gamma(Q)) must equal the
        // left invariant operator of Z in the second slot applied to the cell
        'lin: for p in all_wedges(shcp.sla.q()) {
            for q in all_wedges(shcp.sla.q()) {
                for z_idx in 0..shcp.sla.m() {
                    let direct = mu_cell_with_even_insertion(shcp, sect, p, z_idx, q)?;
                    let via_cell = d_on_slot(shcp, &t.entry(shcp, (p, q)), 1, z_idx);
                    if direct != via_cell {
                        report.push(Violation::new(
                            "mu-linearity",
                            format!(
                                "{name} cell ({}, {} {})",
                                wedge_label(shcp, p),
                                shcp.sla.even_names[z_idx],
                                wedge_label(shcp, q)
                            ),
                            "mu* is not U(g0)-linear in the second argument",
                        ));
                        break 'lin;
                    }
                }
            }
        }
    }
    Ok(report)
}

pub fn wedge_label(shcp: &Shcp, mask: u64) -> String {
    render_wedge(&shcp.sla, mask)
}

/// The decomposition table feeding every pullback: cell (P, Q) holds the
/// factorization-inverse decomposition of (h^-1 . gamma(P)) gamma(Q), as
/// (even monomial, wedge, coefficient) triples with coefficients in the
/// single group variable.
pub fn gamma_twist_table(
    shcp: &Shcp,
) -> Result<BTreeMap<(u64, u64), Vec<(crate::uea::Pbw, u64, SPoly)>>, AlgebraError> {
    let vars1 = shcp.hopf.vars1.clone();
    let ring1 = shcp.ring1();
    let mut out = BTreeMap::new();
    for p in all_wedges(shcp.sla.q()) {
        let gp = gamma(
            &shcp.sla,
            &RatRing,
            &WedgeElement::monomial(&RatRing, p, rint(1)),
        );
        let twisted = shcp.sigma_apply(&gp, &vars1, 0, true)?;
        for q in all_wedges(shcp.sla.q()) {
            let gq = gamma(
                &shcp.sla,
                &RatRing,
                &WedgeElement::monomial(&RatRing, q, rint(1)),
            );
            let v = uea_mul(&shcp.sla, &ring1, &twisted, &lift_uea(&gq, &ring1));
            let cells: Vec<(crate::uea::Pbw, u64, SPoly)> = gamma_hat_inverse(&shcp.sla, &ring1, &v)
                .into_iter()
                .map(|((z, mask), c)| (z, mask, c))
                .collect();
            out.insert((p, q), cells);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;
    use crate::standard;

    fn x(shcp: &Shcp, i: usize, e: i32) -> SPoly {
        SPoly::even_var(&shcp.hopf.vars1, i, e)
    }

    #[test]
    fn delta_sections_match_their_tables() {
        let g = standard::gl11_shcp();
        let (evens, odds) = delta_sections(&g);
        assert_eq!(evens[0].entry(&g, 0), g.hopf.gen_poly(0));
        assert!(evens[0].entry(&g, 0b01).is_zero());
        assert_eq!(odds[0].entry(&g, 0b01), SPoly::one(&g.hopf.vars1));
        assert!(odds[0].entry(&g, 0).is_zero());
        let unit = unit_section(&g);
        assert_eq!(unit.entry(&g, 0), SPoly::one(&g.hopf.vars1));
    }

    #[test]
    fn section_products() {
        let g = standard::gl11_shcp();
        let (evens, odds) = delta_sections(&g);
        let u = unit_section(&g);
        assert_eq!(section_mul(&g, &u, &evens[0]), evens[0]);
        // Phi1 Phi2 carries -1 at the top wedge under the Koszul convention
        let p = section_mul(&g, &odds[0], &odds[1]);
        assert_eq!(p.table.len(), 1);
        assert_eq!(p.entry(&g, 0b11), SPoly::one(&g.hopf.vars1).neg());
        // phi1 phi2 at the empty wedge is y1 y2
        let p = section_mul(&g, &evens[0], &evens[1]);
        assert_eq!(p.entry(&g, 0), x(&g, 0, 1).mul(&x(&g, 1, 1)));
        // supercommutativity
        assert_eq!(
            section_mul(&g, &odds[0], &odds[1]),
            section_mul(&g, &odds[1], &odds[0]).scale(&rat(-1, 1))
        );
    }

    #[test]
    fn section_mul_two_routes_agree() {
        let g = standard::gl11_shcp();
        let (evens, odds) = delta_sections(&g);
        let mixed = section_mul(&g, &evens[0], &odds[1]);
        let cases: Vec<(&Section, &Section)> = vec![
            (&evens[0], &odds[0]),
            (&odds[0], &odds[1]),
            (&odds[1], &odds[0]),
            (&evens[0], &evens[1]),
            (&odds[0], &odds[0]),
            (&mixed, &odds[0]),
        ];
        for (a, b) in cases {
            assert_eq!(section_mul(&g, a, b), section_mul_u_route(&g, a, b));
        }
    }

    #[test]
    fn evaluate_on_uea_examples() {
        let g = standard::gl11_shcp();
        let (evens, _) = delta_sections(&g);
        let one = Uea::one(&g.sla, &RatRing);
        assert_eq!(evaluate_on_uea(&g, &evens[0], &one), g.hopf.gen_poly(0));
        // on X1: D_{X1}(y1) = y1
        let x1 = Uea::generator(&g.sla, &RatRing, 0);
        assert_eq!(evaluate_on_uea(&g, &evens[0], &x1), g.hopf.gen_poly(0));
        // on T1 T2: -1/2 y1
        let t1t2 = crate::uea::pbw_normalize(&g.sla, rint(1), vec![2, 3]);
        assert_eq!(
            evaluate_on_uea(&g, &evens[0], &t1t2),
            g.hopf.gen_poly(0).scale(&rat(-1, 2))
        );
    }

    #[test]
    fn theta_poly_roundtrip() {
        let g = standard::gl11_shcp();
        let ctx = theta_ctx(&g);
        let s = Section::from_entries(vec![
            (0, x(&g, 0, 1)),
            (0b01, x(&g, 1, -1).scale(&rat(3, 2))),
            (0b11, x(&g, 0, 2).neg()),
        ]);
        let p = section_to_poly(&g, &s, &ctx);
        assert_eq!(poly_to_section(&g, &p), s);
    }

    #[test]
    fn theta_poly_is_multiplicative() {
        let g = standard::gl11_shcp();
        let ctx = theta_ctx(&g);
        let (evens, odds) = delta_sections(&g);
        let a = evens[0].add(&odds[0]);
        let b = odds[1].add(&evens[1].scale(&rat(-2, 3)));
        let prod = section_mul(&g, &a, &b);
        let pa = section_to_poly(&g, &a, &ctx);
        let pb = section_to_poly(&g, &b, &ctx);
        assert_eq!(section_to_poly(&g, &prod, &ctx), pa.mul(&pb));
    }
}
