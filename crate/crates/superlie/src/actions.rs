//! Actions of a pair on a supermanifold: validation of the reduced-coaction
//! plus infinitesimal-representation data, reconstruction of the full group
//! action pullback, the action axioms, differentials at rational points,
//! stabilizer subalgebras, transitivity rank tests, and orbit-map pullbacks.

use crate::hopf::TangentFunctional;
use crate::linalg::{in_span, Matrix};
use crate::rat::{rint, Rat};
use crate::report::{Report, Violation};
use crate::section::{delta_theta_sign, mu_pullback, Section};
use crate::shcp::Shcp;
use crate::spoly::{bits, Derivation, EvenVar, Mono, Parity, SPoly, Subst, VarSet};
use crate::uea::{gamma, RatRing, Uea, WedgeElement};
use crate::AlgebraError;
use num_traits::Zero;
use std::collections::BTreeMap;
use std::sync::Arc;

/// A polynomial superdomain presentation: even generators (Laurent where
/// flagged invertible) and odd generators squaring to zero.
#[derive(Debug, Clone)]
pub struct SuperDomain {
    pub even_gens: Vec<EvenVar>,
    pub odd_gens: Vec<String>,
    pub vars: Arc<VarSet>,
}

impl SuperDomain {
    pub fn new(evens: Vec<(String, bool)>, odds: Vec<String>) -> SuperDomain {
        let even_gens: Vec<EvenVar> = evens
            .into_iter()
            .map(|(name, invertible)| EvenVar { name, invertible })
            .collect();
        let vars = VarSet::new(even_gens.clone(), odds.clone());
        SuperDomain {
            even_gens,
            odd_gens: odds,
            vars,
        }
    }

    pub fn me(&self) -> usize {
        self.even_gens.len()
    }

    pub fn mo(&self) -> usize {
        self.odd_gens.len()
    }

    pub fn gen_name(&self, i: usize) -> &str {
        if i < self.me() {
            &self.even_gens[i].name
        } else {
            &self.odd_gens[i - self.me()]
        }
    }

    pub fn gen_parity(&self, i: usize) -> Parity {
        if i < self.me() {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn gen_count(&self) -> usize {
        self.me() + self.mo()
    }
}

/// Variable layouts shared by the action computations. Even block:
/// [group generators][domain evens]; odd block: [optional Theta][domain odds].
pub struct ActionCtxs {
    /// group (x) domain, no wedge variables; coaction values live here
    pub gm: Arc<VarSet>,
    /// group (x) Theta (x) domain; reconstructed pullbacks live here
    pub gtm: Arc<VarSet>,
    /// doubled group (x) doubled Theta (x) domain; the axiom checks live here
    pub ggm: Arc<VarSet>,
    /// doubled group (x) domain; coaction coassociativity lives here
    pub g2m: Arc<VarSet>,
}

pub fn action_ctxs(shcp: &Shcp, domain: &SuperDomain) -> ActionCtxs {
    let n = shcp.hopf.n();
    let q = shcp.sla.q();
    let group_evens = |slots: usize| -> Vec<EvenVar> {
        let mut v = Vec::new();
        for s in 0..slots {
            for g in &shcp.hopf.gens {
                let name = if slots == 1 {
                    g.name.clone()
                } else {
                    format!("{}@{}", g.name, s + 1)
                };
                v.push(EvenVar {
                    name,
                    invertible: g.invertible,
                });
            }
        }
        v
    };
    let thetas = |slots: usize| -> Vec<String> {
        let mut v = Vec::new();
        for s in 0..slots {
            for name in &shcp.sla.odd_names {
                let label = if slots == 1 {
                    format!("Th_{name}")
                } else {
                    format!("Th_{name}@{}", s + 1)
                };
                v.push(label);
            }
        }
        v
    };
    let dom_evens: Vec<EvenVar> = domain.even_gens.clone();
    let dom_odds: Vec<String> = domain.odd_gens.clone();
    let _ = (n, q);
    let gm = VarSet::new(
        [group_evens(1), dom_evens.clone()].concat(),
        dom_odds.clone(),
    );
    let gtm = VarSet::new(
        [group_evens(1), dom_evens.clone()].concat(),
        [thetas(1), dom_odds.clone()].concat(),
    );
    let ggm = VarSet::new(
        [group_evens(2), dom_evens.clone()].concat(),
        [thetas(2), dom_odds.clone()].concat(),
    );
    let g2m = VarSet::new([group_evens(2), dom_evens].concat(), dom_odds);
    ActionCtxs { gm, gtm, ggm, g2m }
}

/// Reduced coaction and infinitesimal representation for an action of a
/// pair on a superdomain. The coaction images live in the `gm` context
/// ([group][domain evens] | [domain odds]); the derivations act on the
/// domain context.
#[derive(Debug, Clone)]
pub struct ActionData {
    pub domain: SuperDomain,
    /// One image per domain generator, even generators first.
    pub coaction: Vec<SPoly>,
    /// One derivation of the domain per algebra basis vector.
    pub rho: Vec<Derivation>,
    /// Transitivity of the reduced action is a classical statement supplied
    /// by the user; the rank test is combined with this flag.
    pub reduced_transitive: bool,
}

fn extend_derivation(
    d: &Derivation,
    domain: &SuperDomain,
    target: &Arc<VarSet>,
) -> Derivation {
    // domain evens sit at the tail of the even block, odds at the tail of
    // the odd block; everything else is annihilated
    let ne = target.evens.len() - domain.me();
    let no = target.odds.len() - domain.mo();
    let even_map: Vec<usize> = (0..domain.me()).map(|i| ne + i).collect();
    let odd_map: Vec<usize> = (0..domain.mo()).map(|i| no + i).collect();
    let rename = Subst::renaming(&domain.vars, target, &even_map, &odd_map);
    let mut even_images = vec![SPoly::zero(target); target.evens.len()];
    let mut odd_images = vec![SPoly::zero(target); target.odds.len()];
    for i in 0..domain.me() {
        even_images[ne + i] = rename.apply(&d.even_images[i]).expect("renaming");
    }
    for i in 0..domain.mo() {
        odd_images[no + i] = rename.apply(&d.odd_images[i]).expect("renaming");
    }
    Derivation {
        parity: d.parity,
        even_images,
        odd_images,
    }
}

fn domain_gen_poly(domain: &SuperDomain, ctx: &Arc<VarSet>, i: usize) -> SPoly {
    let ne = ctx.evens.len() - domain.me();
    let no = ctx.odds.len() - domain.mo();
    if i < domain.me() {
        SPoly::even_var(ctx, ne + i, 1)
    } else {
        SPoly::odd_var(ctx, no + (i - domain.me()))
    }
}

/// Tangent functional applied to the group block of a `gm` element.
fn tangent_on_group_block(
    shcp: &Shcp,
    z: &TangentFunctional,
    p: &SPoly,
    gm: &Arc<VarSet>,
) -> SPoly {
    let n = shcp.hopf.n();
    let mut out = SPoly::zero(gm);
    for (m, c) in &p.terms {
        let gmono = Mono {
            od: 0,
            ev: m.ev[..n].to_vec(),
        };
        let zval = z.on_monomial(&shcp.hopf, &gmono);
        if zval.is_zero() {
            continue;
        }
        let mut ev = m.ev.clone();
        ev[..n].fill(0);
        out = out.add(&SPoly::monomial(gm, Mono { od: m.od, ev }, c * zval));
    }
    out
}

/// Validates all the action-data laws: coaction axioms, parity and
/// anti-representation property of rho, and the two compatibility relations
/// tying rho to the coaction and to sigma.
pub fn validate_action_data(shcp: &Shcp, data: &ActionData) -> Result<Report, AlgebraError> {
    let mut report = Report::new();
    let ctxs = action_ctxs(shcp, &data.domain);
    let n = shcp.hopf.n();
    let dim = shcp.sla.dim();
    let dom = &data.domain;
    if data.coaction.len() != dom.gen_count() || data.rho.len() != dim {
        report.push(Violation::new(
            "action-shape",
            "data",
            "one coaction image per domain generator and one derivation per basis vector",
        ));
        return Ok(report);
    }
    // parity of the data
    for (i, img) in data.coaction.iter().enumerate() {
        if !img.has_parity(match dom.gen_parity(i) {
            Parity::Even => Parity::Even,
            Parity::Odd => Parity::Odd,
        }) {
            report.push(Violation::new(
                "coaction-parity",
                dom.gen_name(i),
                "coaction image parity does not match the generator",
            ));
        }
    }
    for (j, d) in data.rho.iter().enumerate() {
        let expect = shcp.sla.parity(j);
        if d.parity != expect {
            report.push(Violation::new(
                "rho-parity",
                shcp.sla.name(j),
                "derivation parity does not match the basis vector",
            ));
            continue;
        }
        for (i, img) in d.even_images.iter().enumerate() {
            let want = expect;
            if !img.has_parity(want) {
                report.push(Violation::new(
                    "rho-parity",
                    format!("{}({})", shcp.sla.name(j), dom.even_gens[i].name),
                    "image parity must be generator parity plus derivation parity",
                ));
            }
        }
        for (i, img) in d.odd_images.iter().enumerate() {
            let want = expect.flip();
            if !img.has_parity(want) {
                report.push(Violation::new(
                    "rho-parity",
                    format!("{}({})", shcp.sla.name(j), dom.odd_gens[i]),
                    "image parity must be generator parity plus derivation parity",
                ));
            }
        }
    }
    // counit law (eps (x) id) abar* = id
    for (i, img) in data.coaction.iter().enumerate() {
        let images: Vec<SPoly> = (0..ctxs.gm.evens.len())
            .map(|k| {
                if k < n {
                    SPoly::constant(&dom.vars, shcp.hopf.counit_rules[k].clone())
                } else {
                    SPoly::even_var(&dom.vars, k - n, 1)
                }
            })
            .collect();
        let odd_images: Vec<SPoly> = (0..dom.mo()).map(|k| SPoly::odd_var(&dom.vars, k)).collect();
        let collapsed = Subst::new(&ctxs.gm, &dom.vars, images, odd_images)?.apply(img)?;
        let expect = if i < dom.me() {
            SPoly::even_var(&dom.vars, i, 1)
        } else {
            SPoly::odd_var(&dom.vars, i - dom.me())
        };
        report.check(
            collapsed == expect,
            "coaction-counit",
            dom.gen_name(i),
            "(eps (x) id) abar* != id",
        );
    }
    // coassociativity (Delta (x) id) abar* = (id (x) abar*) abar*
    {
        let g2m = &ctxs.g2m;
        let dom_even_map: Vec<usize> = (0..dom.me()).map(|i| 2 * n + i).collect();
        let dom_odd_map: Vec<usize> = (0..dom.mo()).collect();
        let lhs_sub = {
            // group generator -> coproduct in slots (0, 1); domain fixed
            let mut even_images = Vec::new();
            for k in 0..n {
                even_images.push(shcp.hopf.coproduct_into(
                    &shcp.hopf.gen_poly(k),
                    g2m,
                    0,
                    1,
                ));
            }
            for i in 0..dom.me() {
                even_images.push(SPoly::even_var(g2m, dom_even_map[i], 1));
            }
            let odd_images: Vec<SPoly> = dom_odd_map
                .iter()
                .map(|&i| SPoly::odd_var(g2m, i))
                .collect();
            Subst::new(&ctxs.gm, g2m, even_images, odd_images)?
        };
        let rhs_sub = {
            // group generator -> slot 0 copy; domain generator -> coaction
            // with group part in slot 1
            let coaction_in_slot1: Vec<SPoly> = data
                .coaction
                .iter()
                .map(|img| {
                    let even_map: Vec<usize> = (0..n)
                        .map(|k| n + k)
                        .chain((0..dom.me()).map(|i| 2 * n + i))
                        .collect();
                    let odd_map: Vec<usize> = (0..dom.mo()).collect();
                    Subst::renaming(&ctxs.gm, g2m, &even_map, &odd_map).apply(img)
                })
                .collect::<Result<_, _>>()?;
            let mut even_images: Vec<SPoly> =
                (0..n).map(|k| SPoly::even_var(g2m, k, 1)).collect();
            even_images.extend(coaction_in_slot1[..dom.me()].iter().cloned());
            let odd_images: Vec<SPoly> = coaction_in_slot1[dom.me()..].to_vec();
            Subst::new(&ctxs.gm, g2m, even_images, odd_images)?
        };
        for (i, img) in data.coaction.iter().enumerate() {
            let lhs = lhs_sub.apply(img)?;
            let rhs = rhs_sub.apply(img)?;
            report.check(
                lhs == rhs,
                "coaction-coassociativity",
                dom.gen_name(i),
                "(Delta (x) id) abar* != (id (x) abar*) abar*",
            );
        }
    }
    // rho is a representation into the opposite algebra:
    // rho([X, Y]) = -[rho X, rho Y]
    for i in 0..dim {
        for j in 0..dim {
            let br = shcp.sla.bracket_basis(i, j);
            let lhs_on = |g: &SPoly| -> SPoly {
                let mut acc = SPoly::zero(&dom.vars);
                for (t, c) in br.iter().enumerate() {
                    if !c.is_zero() {
                        acc = acc.add(&data.rho[t].apply(g).scale(c));
                    }
                }
                acc
            };
            let comm = Derivation::bracket(&data.rho[i], &data.rho[j], &dom.vars);
            let mut ok = true;
            for k in 0..dom.me() {
                let g = SPoly::even_var(&dom.vars, k, 1);
                if lhs_on(&g) != comm.apply(&g).neg() {
                    ok = false;
                }
            }
            for k in 0..dom.mo() {
                let g = SPoly::odd_var(&dom.vars, k);
                if lhs_on(&g) != comm.apply(&g).neg() {
                    ok = false;
                }
            }
            report.check(
                ok,
                "rho-antirepresentation",
                format!("[{}, {}]", shcp.sla.name(i), shcp.sla.name(j)),
                "rho([X, Y]) != -[rho X, rho Y]",
            );
        }
    }
    // compatibility (a): rho(Z) = (Z_e (x) id) abar* for even basis Z
    for z in 0..shcp.sla.m() {
        for (i, img) in data.coaction.iter().enumerate() {
            let derived = tangent_on_group_block(shcp, &shcp.tangents[z], img, &ctxs.gm);
            // land in the domain context
            let even_images: Vec<SPoly> = (0..ctxs.gm.evens.len())
                .map(|k| {
                    if k < n {
                        SPoly::one(&dom.vars)
                    } else {
                        SPoly::even_var(&dom.vars, k - n, 1)
                    }
                })
                .collect();
            let odd_images: Vec<SPoly> =
                (0..dom.mo()).map(|k| SPoly::odd_var(&dom.vars, k)).collect();
            // the group block is already reduced to scalars by the tangent
            let collapse = Subst::new(&ctxs.gm, &dom.vars, even_images, odd_images)?;
            let lhs = collapse.apply(&derived)?;
            let g = if i < dom.me() {
                SPoly::even_var(&dom.vars, i, 1)
            } else {
                SPoly::odd_var(&dom.vars, i - dom.me())
            };
            let rhs = data.rho[z].apply(&g);
            report.check(
                lhs == rhs,
                "compatibility-even",
                format!("{} on {}", shcp.sla.even_names[z], dom.gen_name(i)),
                "rho on the even part does not match the coaction derivative",
            );
        }
    }
    // compatibility (b): rho(sigma(g) Y) = (abar^{g^-1})* rho(Y) (abar^g)*
    {
        // coaction with the antipode applied to the group part, as the
        // substitution target for the domain variables
        let s_twisted: Vec<SPoly> = data
            .coaction
            .iter()
            .map(|img| {
                let mut even_images: Vec<SPoly> = Vec::new();
                for k in 0..n {
                    let rule = shcp.hopf.antipode_rules[k].clone();
                    let even_map: Vec<usize> = (0..n).collect();
                    even_images.push(
                        Subst::renaming(&shcp.hopf.vars1, &ctxs.gm, &even_map, &[])
                            .apply(&rule)?,
                    );
                }
                for i in 0..dom.me() {
                    even_images.push(SPoly::even_var(&ctxs.gm, n + i, 1));
                }
                let odd_images: Vec<SPoly> =
                    (0..dom.mo()).map(|k| SPoly::odd_var(&ctxs.gm, k)).collect();
                Subst::new(&ctxs.gm, &ctxs.gm, even_images, odd_images)?.apply(img)
            })
            .collect::<Result<_, _>>()?;
        let conjugate = |rho_j: &Derivation, f: usize| -> Result<SPoly, AlgebraError> {
            let step1 = &data.coaction[f];
            let rho_gm = extend_derivation(rho_j, dom, &ctxs.gm);
            let step2 = rho_gm.apply(step1);
            let mut even_images: Vec<SPoly> =
                (0..n).map(|k| SPoly::even_var(&ctxs.gm, k, 1)).collect();
            even_images.extend(s_twisted[..dom.me()].iter().cloned());
            let odd_images: Vec<SPoly> = s_twisted[dom.me()..].to_vec();
            Subst::new(&ctxs.gm, &ctxs.gm, even_images, odd_images)?.apply(&step2)
        };
        for j in 0..dim {
            for f in 0..dom.gen_count() {
                let mut lhs = SPoly::zero(&ctxs.gm);
                for k in 0..dim {
                    if shcp.sigma[k][j].is_zero() {
                        continue;
                    }
                    let even_map: Vec<usize> = (0..n).collect();
                    let coeff = Subst::renaming(&shcp.hopf.vars1, &ctxs.gm, &even_map, &[])
                        .apply(&shcp.sigma[k][j])?;
                    let rho_gm = extend_derivation(&data.rho[k], dom, &ctxs.gm);
                    let val = rho_gm.apply(&domain_gen_poly(dom, &ctxs.gm, f));
                    lhs = lhs.add(&coeff.mul(&val));
                }
                let rhs = conjugate(&data.rho[j], f)?;
                report.check(
                    lhs == rhs,
                    "compatibility-sigma",
                    format!("{} on {}", shcp.sla.name(j), dom.gen_name(f)),
                    "rho(sigma(g) Y) != conjugated rho(Y)",
                );
            }
        }
    }
    Ok(report)
}

/// The reconstructed action pullback: per domain generator, an element of
/// the [group][Theta][domain] context, together with the wedge-layer view.
#[derive(Debug, Clone, PartialEq)]
pub struct ActionTable {
    /// Full pullbacks, one per domain generator.
    pub polys: Vec<SPoly>,
    /// Wedge layers: entry P holds rho(gamma(P)) applied to the coaction
    /// image, an element of the [group][domain] context.
    pub tables: Vec<BTreeMap<u64, SPoly>>,
}

/// rho extended to U(g) as a super anti-homomorphism with Koszul signs:
/// rho(l1 ... ln) = (-1)^{sum_{i<j} p_i p_j} rho(ln) ... rho(l1).
fn rho_of_uea(
    shcp: &Shcp,
    rho_ext: &[Derivation],
    u: &Uea<RatRing>,
    arg: &SPoly,
) -> SPoly {
    let ctx = &arg.ctx;
    let mut out = SPoly::zero(ctx);
    for (p, c) in &u.terms {
        let word = p.word(&shcp.sla);
        let odd_count = word
            .iter()
            .filter(|&&l| shcp.sla.parity(l) == Parity::Odd)
            .count() as i64;
        let pair_sign = if (odd_count * (odd_count - 1) / 2) % 2 == 0 {
            rint(1)
        } else {
            rint(-1)
        };
        let mut acc = arg.clone();
        for &l in &word {
            acc = rho_ext[l].apply(&acc);
            if acc.is_zero() {
                break;
            }
        }
        out = out.add(&acc.scale(&(c * pair_sign)));
    }
    out
}

/// Reconstructs the full action pullback from the reduced coaction and the
/// infinitesimal representation.
pub fn reconstruct_action(shcp: &Shcp, data: &ActionData) -> ActionTable {
    let ctxs = action_ctxs(shcp, &data.domain);
    let n = shcp.hopf.n();
    let q = shcp.sla.q();
    let dom = &data.domain;
    let rho_gtm: Vec<Derivation> = data
        .rho
        .iter()
        .map(|d| extend_derivation(d, dom, &ctxs.gtm))
        .collect();
    // embed coaction gm -> gtm
    let even_map: Vec<usize> = (0..n + dom.me()).collect();
    let odd_map: Vec<usize> = (0..dom.mo()).map(|i| q + i).collect();
    let embed = Subst::renaming(&ctxs.gm, &ctxs.gtm, &even_map, &odd_map);
    let mut polys = Vec::new();
    let mut tables = Vec::new();
    for img in &data.coaction {
        let base = embed.apply(img).expect("renaming");
        let mut poly = SPoly::zero(&ctxs.gtm);
        let mut table: BTreeMap<u64, SPoly> = BTreeMap::new();
        for mask in 0..(1u64 << q) {
            let gp = gamma(
                &shcp.sla,
                &RatRing,
                &WedgeElement::monomial(&RatRing, mask, rint(1)),
            );
            let layer = rho_of_uea(shcp, &rho_gtm, &gp, &base);
            if layer.is_zero() {
                continue;
            }
            let theta = SPoly::monomial(
                &ctxs.gtm,
                Mono {
                    od: mask,
                    ev: vec![0; ctxs.gtm.evens.len()],
                },
                delta_theta_sign(mask),
            );
            poly = poly.add(&theta.mul(&layer));
            // the layer itself has no Theta content; record it in gm
            let mut stripped = SPoly::zero(&ctxs.gm);
            for (m, c) in &layer.terms {
                assert!(m.od & ((1u64 << q) - 1) == 0, "layer has wedge content");
                stripped = stripped.add(&SPoly::monomial(
                    &ctxs.gm,
                    Mono {
                        od: m.od >> q,
                        ev: m.ev.clone(),
                    },
                    c.clone(),
                ));
            }
            table.insert(mask, stripped);
        }
        polys.push(poly);
        tables.push(table);
    }
    ActionTable { polys, tables }
}

/// Verifies the two action axioms on the reconstructed pullback:
/// a(mu x id) = a(id x a) and the unit law.
pub fn check_action_axioms(
    shcp: &Shcp,
    data: &ActionData,
    table: &ActionTable,
) -> Result<Report, AlgebraError> {
    let mut report = Report::new();
    let ctxs = action_ctxs(shcp, &data.domain);
    let n = shcp.hopf.n();
    let q = shcp.sla.q();
    let dom = &data.domain;
    // unit law: kill the group variables and the wedges
    for (i, poly) in table.polys.iter().enumerate() {
        let even_images: Vec<SPoly> = (0..ctxs.gtm.evens.len())
            .map(|k| {
                if k < n {
                    SPoly::constant(&dom.vars, shcp.hopf.counit_rules[k].clone())
                } else {
                    SPoly::even_var(&dom.vars, k - n, 1)
                }
            })
            .collect();
        let odd_images: Vec<SPoly> = (0..ctxs.gtm.odds.len())
            .map(|k| {
                if k < q {
                    SPoly::zero(&dom.vars)
                } else {
                    SPoly::odd_var(&dom.vars, k - q)
                }
            })
            .collect();
        let collapsed = Subst::new(&ctxs.gtm, &dom.vars, even_images, odd_images)?.apply(poly)?;
        let expect = if i < dom.me() {
            SPoly::even_var(&dom.vars, i, 1)
        } else {
            SPoly::odd_var(&dom.vars, i - dom.me())
        };
        report.check(
            collapsed == expect,
            "action-unit",
            dom.gen_name(i),
            "the unit law fails",
        );
    }
    // associativity: (mu* (x) id) a* = (id (x) a*) a*
    let me = dom.me();
    let mo = dom.mo();
    for (i, poly) in table.polys.iter().enumerate() {
        // left side: expand the group slot of a*(f) through mu*
        let mut lhs = SPoly::zero(&ctxs.ggm);
        {
            // group terms by domain payload monomial
            let mut grouped: BTreeMap<Mono, Section> = BTreeMap::new();
            for (m, c) in &poly.terms {
                let theta_mask = m.od & ((1u64 << q) - 1);
                let payload = Mono {
                    od: m.od >> q,
                    ev: {
                        let mut ev = vec![0; me];
                        ev.copy_from_slice(&m.ev[n..]);
                        ev
                    },
                };
                let gmono = Mono {
                    od: 0,
                    ev: m.ev[..n].to_vec(),
                };
                let sect = grouped.entry(payload).or_insert_with(Section::zero);
                // table gauge: delta coefficient = theta coefficient * sign
                sect.add_entry(
                    theta_mask,
                    SPoly::monomial(&shcp.hopf.vars1, gmono, c.clone())
                        .scale(&delta_theta_sign(theta_mask)),
                );
            }
            for (payload, sect) in grouped {
                let expanded = mu_pullback(shcp, &sect)?;
                // payload monomial in the big context
                let mut pev = vec![0i32; ctxs.ggm.evens.len()];
                pev[2 * n..].copy_from_slice(&payload.ev);
                let ppoly = SPoly::monomial(
                    &ctxs.ggm,
                    Mono {
                        od: payload.od << (2 * q),
                        ev: pev,
                    },
                    rint(1),
                );
                for ((p1, p2), v) in &expanded.table {
                    let k = (p1.count_ones() + p2.count_ones()) as i64;
                    let sign = if (k * (k - 1) / 2) % 2 == 0 {
                        rint(1)
                    } else {
                        rint(-1)
                    };
                    // embed doubled group coordinates
                    let even_map: Vec<usize> = (0..2 * n).collect();
                    let emb = Subst::renaming(&shcp.hopf.vars2, &ctxs.ggm, &even_map, &[]);
                    let coeff = emb.apply(v)?.scale(&sign);
                    let theta = SPoly::monomial(
                        &ctxs.ggm,
                        Mono {
                            od: p1 | (p2 << q),
                            ev: vec![0; ctxs.ggm.evens.len()],
                        },
                        rint(1),
                    );
                    lhs = lhs.add(&coeff.mul(&theta).mul(&ppoly));
                }
            }
        }
        // right side: substitute the domain generators by their pullbacks in
        // the second copy
        let rhs = {
            let second_copy: Vec<SPoly> = table
                .polys
                .iter()
                .map(|p| {
                    let even_map: Vec<usize> = (0..n)
                        .map(|k| n + k)
                        .chain((0..me).map(|k| 2 * n + k))
                        .collect();
                    let odd_map: Vec<usize> = (0..q)
                        .map(|k| q + k)
                        .chain((0..mo).map(|k| 2 * q + k))
                        .collect();
                    Subst::renaming(&ctxs.gtm, &ctxs.ggm, &even_map, &odd_map).apply(p)
                })
                .collect::<Result<_, _>>()?;
            let mut even_images: Vec<SPoly> = (0..n)
                .map(|k| SPoly::even_var(&ctxs.ggm, k, 1))
                .collect();
            even_images.extend(second_copy[..me].iter().cloned());
            let mut odd_images: Vec<SPoly> =
                (0..q).map(|k| SPoly::odd_var(&ctxs.ggm, k)).collect();
            odd_images.extend(second_copy[me..].iter().cloned());
            Subst::new(&ctxs.gtm, &ctxs.ggm, even_images, odd_images)?.apply(poly)?
        };
        if lhs != rhs {
            // pinpoint the first differing monomial
            let diff = lhs.sub(&rhs);
            let witness = diff
                .terms
                .keys()
                .next()
                .map(|m| format!("first differing monomial {m:?}"))
                .unwrap_or_default();
            report.push(Violation::new(
                "action-associativity",
                format!("{} ({witness})", dom.gen_name(i)),
                "a(mu x id) != a(id x a)",
            ));
        }
    }
    Ok(report)
}

/// A rational point of the domain: values for the even generators; the odd
/// generators evaluate to zero.
pub fn domain_point(domain: &SuperDomain, values: &[Rat]) -> Result<Vec<Rat>, AlgebraError> {
    if values.len() != domain.me() {
        return Err(AlgebraError::InvalidPoint(
            "one value per even generator".into(),
        ));
    }
    for (g, v) in domain.even_gens.iter().zip(values) {
        if g.invertible && v.is_zero() {
            return Err(AlgebraError::InvalidPoint(format!(
                "generator {} is invertible but assigned 0",
                g.name
            )));
        }
    }
    Ok(values.to_vec())
}

fn eval_domain(domain: &SuperDomain, p: &SPoly, point: &[Rat]) -> Result<Rat, AlgebraError> {
    let images: Vec<SPoly> = point
        .iter()
        .map(|v| SPoly::constant(&domain.vars, v.clone()))
        .collect();
    let odd_images = vec![SPoly::zero(&domain.vars); domain.mo()];
    let res = Subst::new(&domain.vars, &domain.vars, images, odd_images)?.apply(p)?;
    res.constant_value()
        .ok_or_else(|| AlgebraError::Malformed("evaluation did not land in scalars".into()))
}

/// The differential of the orbit map at the identity, as an exact matrix:
/// rows are domain generators (evens then odds), columns the algebra basis;
/// the entry is the point evaluation of rho(X) applied to the generator.
pub fn differential_at_identity(
    shcp: &Shcp,
    data: &ActionData,
    point: &[Rat],
) -> Result<Matrix, AlgebraError> {
    let dom = &data.domain;
    let point = domain_point(dom, point)?;
    let rows = dom.gen_count();
    let cols = shcp.sla.dim();
    let mut m = Matrix::new(rows, cols);
    for (j, rho_j) in data.rho.iter().enumerate() {
        for i in 0..rows {
            let g = if i < dom.me() {
                SPoly::even_var(&dom.vars, i, 1)
            } else {
                SPoly::odd_var(&dom.vars, i - dom.me())
            };
            m.data[i][j] = eval_domain(dom, &rho_j.apply(&g), &point)?;
        }
    }
    // parity block structure: even columns only hit even rows
    for (j, _) in data.rho.iter().enumerate() {
        for i in 0..rows {
            let row_parity = dom.gen_parity(i);
            if shcp.sla.parity(j) != row_parity {
                debug_assert!(m.data[i][j].is_zero(), "parity block leak");
            }
        }
    }
    Ok(m)
}

/// A homogeneous basis of the stabilizer subalgebra at a rational point:
/// the exact kernel of the differential, computed per parity block. The
/// result is checked to be closed under the bracket.
pub fn stabilizer_subalgebra(
    shcp: &Shcp,
    data: &ActionData,
    point: &[Rat],
) -> Result<Vec<(Parity, Vec<Rat>)>, AlgebraError> {
    let m = differential_at_identity(shcp, data, point)?;
    let dom = &data.domain;
    let me = dom.me();
    let even_block = Matrix::from_rows(
        (0..me)
            .map(|i| m.data[i][..shcp.sla.m()].to_vec())
            .collect::<Vec<_>>(),
    );
    let odd_block = Matrix::from_rows(
        (me..dom.gen_count())
            .map(|i| m.data[i][shcp.sla.m()..].to_vec())
            .collect::<Vec<_>>(),
    );
    let mut basis: Vec<(Parity, Vec<Rat>)> = Vec::new();
    let dim = shcp.sla.dim();
    if me == 0 {
        for k in 0..shcp.sla.m() {
            let mut v = vec![Rat::zero(); dim];
            v[k] = rint(1);
            basis.push((Parity::Even, v));
        }
    } else {
        for ns in even_block.nullspace() {
            let mut v = vec![Rat::zero(); dim];
            v[..shcp.sla.m()].clone_from_slice(&ns);
            basis.push((Parity::Even, v));
        }
    }
    if dom.mo() == 0 {
        for k in 0..shcp.sla.q() {
            let mut v = vec![Rat::zero(); dim];
            v[shcp.sla.m() + k] = rint(1);
            basis.push((Parity::Odd, v));
        }
    } else {
        for ns in odd_block.nullspace() {
            let mut v = vec![Rat::zero(); dim];
            v[shcp.sla.m()..].clone_from_slice(&ns);
            basis.push((Parity::Odd, v));
        }
    }
    // the kernel of the action differential is a subalgebra
    let span: Vec<Vec<Rat>> = basis.iter().map(|(_, v)| v.clone()).collect();
    for (_, a) in &basis {
        for (_, b) in &basis {
            let br = shcp.sla.bracket_vec(a, b);
            if !in_span(&span, &br) {
                return Err(AlgebraError::Malformed(
                    "stabilizer kernel is not bracket-closed".into(),
                ));
            }
        }
    }
    Ok(basis)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransitivityVerdict {
    pub differential_surjective: bool,
    pub reduced_transitive_asserted: bool,
    pub transitive: bool,
}

/// Transitivity at a rational point: surjectivity of the differential in
/// both parity blocks, combined with the user-asserted reduced transitivity.
pub fn is_transitive_at(
    shcp: &Shcp,
    data: &ActionData,
    point: &[Rat],
) -> Result<TransitivityVerdict, AlgebraError> {
    let m = differential_at_identity(shcp, data, point)?;
    let dom = &data.domain;
    let me = dom.me();
    let even_block = Matrix::from_rows(
        (0..me)
            .map(|i| m.data[i][..shcp.sla.m()].to_vec())
            .collect::<Vec<_>>(),
    );
    let odd_block = Matrix::from_rows(
        (me..dom.gen_count())
            .map(|i| m.data[i][shcp.sla.m()..].to_vec())
            .collect::<Vec<_>>(),
    );
    let surjective = (me == 0 || even_block.rank() == me)
        && (dom.mo() == 0 || odd_block.rank() == dom.mo());
    Ok(TransitivityVerdict {
        differential_surjective: surjective,
        reduced_transitive_asserted: data.reduced_transitive,
        transitive: surjective && data.reduced_transitive,
    })
}

/// The orbit-map pullback at a rational point: evaluating the domain leg of
/// the reconstructed pullback turns each generator into a section.
pub fn orbit_map_pullback(
    shcp: &Shcp,
    data: &ActionData,
    table: &ActionTable,
    point: &[Rat],
) -> Result<Vec<Section>, AlgebraError> {
    let dom = &data.domain;
    let point = domain_point(dom, point)?;
    let ctxs = action_ctxs(shcp, &data.domain);
    let n = shcp.hopf.n();
    let mut out = Vec::new();
    for layers in &table.tables {
        let mut sect = Section::zero();
        for (mask, v) in layers {
            // substitute the domain part at the point, keep the group part
            let even_images: Vec<SPoly> = (0..ctxs.gm.evens.len())
                .map(|k| {
                    if k < n {
                        SPoly::even_var(&shcp.hopf.vars1, k, 1)
                    } else {
                        SPoly::constant(&shcp.hopf.vars1, point[k - n].clone())
                    }
                })
                .collect();
            let odd_images = vec![SPoly::zero(&shcp.hopf.vars1); dom.mo()];
            let val = Subst::new(&ctxs.gm, &shcp.hopf.vars1, even_images, odd_images)?
                .apply(v)?;
            sect.add_entry(*mask, val);
        }
        out.push(sect);
    }
    Ok(out)
}

/// Membership of a rational group point in the reduced stabilizer: the point
/// fixes the evaluated coaction.
pub fn reduced_stabilizer_contains(
    shcp: &Shcp,
    data: &ActionData,
    group_point: &crate::hopf::GroupPoint,
    point: &[Rat],
) -> Result<bool, AlgebraError> {
    let dom = &data.domain;
    let point = domain_point(dom, point)?;
    let n = shcp.hopf.n();
    // evaluate the coaction at (g, p) and compare with the generator values
    for (i, img) in data.coaction.iter().enumerate() {
        let ctxs = action_ctxs(shcp, dom);
        let even_images: Vec<SPoly> = (0..ctxs.gm.evens.len())
            .map(|k| {
                if k < n {
                    SPoly::constant(&dom.vars, group_point.values[k].clone())
                } else {
                    SPoly::constant(&dom.vars, point[k - n].clone())
                }
            })
            .collect();
        let odd_images = vec![SPoly::zero(&dom.vars); dom.mo()];
        let moved = Subst::new(&ctxs.gm, &dom.vars, even_images, odd_images)?.apply(img)?;
        let expect = if i < dom.me() {
            SPoly::constant(&dom.vars, point[i].clone())
        } else {
            SPoly::zero(&dom.vars)
        };
        if moved != expect {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn bits_of(mask: u64) -> Vec<u32> {
    bits(mask).collect()
}
