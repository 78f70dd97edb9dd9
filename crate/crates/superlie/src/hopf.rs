//! Finitely generated commutative Hopf algebras of coordinate functions on
//! the reduced group: Laurent-polynomial elements, the Hopf structure maps,
//! rational points, tangent functionals at the identity, and left invariant
//! differential operators.
//!
//! Invertible generators must be group-like (coproduct g (x) g, counit 1,
//! antipode g^-1); this keeps coproduct and antipode total on the Laurent
//! class and covers tori, GL(1)-factors and unipotent groups.

use crate::rat::{rint, Rat};
use crate::report::{Report, Violation};
use crate::spoly::{EvenVar, Mono, SPoly, Subst, VarSet};
use crate::uea::Pbw;
use crate::AlgebraError;
use num_traits::Zero;
use std::sync::Arc;

#[derive(Debug, Clone)]
pub struct CoordGen {
    pub name: String,
    pub invertible: bool,
}

#[derive(Debug, Clone)]
pub struct CoordHopf {
    pub gens: Vec<CoordGen>,
    /// Single-copy coordinate ring.
    pub vars1: Arc<VarSet>,
    /// Doubled and tripled generator sets; slot s of generator i sits at
    /// even index s * n + i.
    pub vars2: Arc<VarSet>,
    pub vars3: Arc<VarSet>,
    pub coproduct_rules: Vec<SPoly>,
    pub counit_rules: Vec<Rat>,
    pub antipode_rules: Vec<SPoly>,
}

fn slot_vars(gens: &[CoordGen], slots: usize) -> Arc<VarSet> {
    let mut evens = Vec::new();
    for s in 0..slots {
        for g in gens {
            let name = if slots == 1 {
                g.name.clone()
            } else {
                format!("{}@{}", g.name, s + 1)
            };
            evens.push(EvenVar {
                name,
                invertible: g.invertible,
            });
        }
    }
    VarSet::new(evens, vec![])
}

impl CoordHopf {
    pub fn new(
        gens: Vec<CoordGen>,
        coproduct_rules: Vec<SPoly>,
        counit_rules: Vec<Rat>,
        antipode_rules: Vec<SPoly>,
    ) -> CoordHopf {
        let vars1 = slot_vars(&gens, 1);
        let vars2 = slot_vars(&gens, 2);
        let vars3 = slot_vars(&gens, 3);
        assert_eq!(coproduct_rules.len(), gens.len());
        assert_eq!(counit_rules.len(), gens.len());
        assert_eq!(antipode_rules.len(), gens.len());
        CoordHopf {
            gens,
            vars1,
            vars2,
            vars3,
            coproduct_rules,
            counit_rules,
            antipode_rules,
        }
    }

    /// A torus factor: every generator invertible and group-like.
    pub fn torus(names: &[&str]) -> CoordHopf {
        let gens: Vec<CoordGen> = names
            .iter()
            .map(|n| CoordGen {
                name: n.to_string(),
                invertible: true,
            })
            .collect();
        let vars2 = slot_vars(&gens, 2);
        let n = gens.len();
        let coproduct = (0..n)
            .map(|i| SPoly::even_var(&vars2, i, 1).mul(&SPoly::even_var(&vars2, n + i, 1)))
            .collect();
        let vars1 = slot_vars(&gens, 1);
        let antipode = (0..n).map(|i| SPoly::even_var(&vars1, i, -1)).collect();
        CoordHopf::new(gens, coproduct, vec![rint(1); n], antipode)
    }

    /// An additive factor: non-invertible primitive generators.
    pub fn additive(names: &[&str]) -> CoordHopf {
        let gens: Vec<CoordGen> = names
            .iter()
            .map(|n| CoordGen {
                name: n.to_string(),
                invertible: false,
            })
            .collect();
        let vars2 = slot_vars(&gens, 2);
        let n = gens.len();
        let coproduct = (0..n)
            .map(|i| SPoly::even_var(&vars2, i, 1).add(&SPoly::even_var(&vars2, n + i, 1)))
            .collect();
        let vars1 = slot_vars(&gens, 1);
        let antipode = (0..n)
            .map(|i| SPoly::even_var(&vars1, i, 1).neg())
            .collect();
        CoordHopf::new(gens, coproduct, vec![rint(0); n], antipode)
    }

    pub fn n(&self) -> usize {
        self.gens.len()
    }

    pub fn gen_poly(&self, i: usize) -> SPoly {
        SPoly::even_var(&self.vars1, i, 1)
    }

    /// Renames a single-copy element into slot `slot` of a context whose
    /// even variables are laid out in slots of width n().
    pub fn embed(&self, p: &SPoly, target: &Arc<VarSet>, slot: usize) -> SPoly {
        let even_map: Vec<usize> = (0..self.n()).map(|i| slot * self.n() + i).collect();
        Subst::renaming(&self.vars1, target, &even_map, &[])
            .apply(p)
            .expect("renaming cannot fail")
    }

    /// Coproduct into the chosen slots of a multi-slot context.
    pub fn coproduct_into(
        &self,
        p: &SPoly,
        target: &Arc<VarSet>,
        slot_a: usize,
        slot_b: usize,
    ) -> SPoly {
        let n = self.n();
        let images: Vec<SPoly> = (0..n)
            .map(|i| {
                let map: Vec<usize> = (0..n)
                    .map(|k| slot_a * n + k)
                    .chain((0..n).map(|k| slot_b * n + k))
                    .collect();
                Subst::renaming(&self.vars2, target, &map, &[])
                    .apply(&self.coproduct_rules[i])
                    .expect("renaming cannot fail")
            })
            .collect();
        Subst::new(&self.vars1, target, images, vec![])
            .expect("well formed")
            .apply(p)
            .expect("coproduct is polynomial")
    }

    pub fn coproduct(&self, p: &SPoly) -> SPoly {
        self.coproduct_into(p, &self.vars2.clone(), 0, 1)
    }

    pub fn counit(&self, p: &SPoly) -> Rat {
        let images: Vec<SPoly> = self
            .counit_rules
            .iter()
            .map(|r| SPoly::constant(&self.vars1, r.clone()))
            .collect();
        let res = Subst::new(&self.vars1, &self.vars1, images, vec![])
            .expect("well formed")
            .apply(p)
            .expect("counit values of invertible generators are nonzero");
        res.constant_value().expect("counit lands in scalars")
    }

    pub fn antipode(&self, p: &SPoly) -> Result<SPoly, AlgebraError> {
        Subst::new(
            &self.vars1,
            &self.vars1,
            self.antipode_rules.clone(),
            vec![],
        )?
        .apply(p)
    }

    pub fn validate(&self) -> Report {
        let mut report = Report::new();
        let n = self.n();
        for (i, g) in self.gens.iter().enumerate() {
            if g.invertible {
                let grouplike = SPoly::even_var(&self.vars2, i, 1)
                    .mul(&SPoly::even_var(&self.vars2, n + i, 1));
                report.check(
                    self.coproduct_rules[i] == grouplike,
                    "invertible-not-grouplike",
                    &g.name,
                    "invertible generators must have coproduct g (x) g",
                );
                report.check(
                    self.counit_rules[i] == rint(1),
                    "invertible-counit",
                    &g.name,
                    "invertible generators must have counit 1",
                );
                report.check(
                    self.antipode_rules[i] == SPoly::even_var(&self.vars1, i, -1),
                    "invertible-antipode",
                    &g.name,
                    "invertible generators must have antipode g^-1",
                );
            }
            if self.counit_rules[i].is_zero() && g.invertible {
                report.push(Violation::new(
                    "counit-zero-on-invertible",
                    &g.name,
                    "invertible generator with zero counit",
                ));
            }
        }
        for (i, g) in self.gens.iter().enumerate() {
            let gp = self.gen_poly(i);
            // (eps (x) id) Delta = id = (id (x) eps) Delta
            let d = &self.coproduct_rules[i];
            let eps_left = {
                let images: Vec<SPoly> = (0..2 * n)
                    .map(|k| {
                        if k < n {
                            SPoly::constant(&self.vars1, self.counit_rules[k].clone())
                        } else {
                            SPoly::even_var(&self.vars1, k - n, 1)
                        }
                    })
                    .collect();
                Subst::new(&self.vars2, &self.vars1, images, vec![])
                    .expect("well formed")
                    .apply(d)
            };
            let eps_right = {
                let images: Vec<SPoly> = (0..2 * n)
                    .map(|k| {
                        if k < n {
                            SPoly::even_var(&self.vars1, k, 1)
                        } else {
                            SPoly::constant(&self.vars1, self.counit_rules[k - n].clone())
                        }
                    })
                    .collect();
                Subst::new(&self.vars2, &self.vars1, images, vec![])
                    .expect("well formed")
                    .apply(d)
            };
            report.check(
                matches!(&eps_left, Ok(v) if *v == gp),
                "counit-axiom",
                &g.name,
                "(eps (x) id) Delta != id",
            );
            report.check(
                matches!(&eps_right, Ok(v) if *v == gp),
                "counit-axiom",
                &g.name,
                "(id (x) eps) Delta != id",
            );
            // coassociativity: start from Delta(g) in slots (0, 2) and expand
            // the first leg into (0, 1), resp. slots (0, 1) expanding into (1, 2)
            let lhs = {
                let images: Vec<SPoly> = (0..3 * n)
                    .map(|k| {
                        if k < n {
                            self.coproduct_into(&self.gen_poly(k), &self.vars3.clone(), 0, 1)
                        } else {
                            SPoly::even_var(&self.vars3, k, 1)
                        }
                    })
                    .collect();
                let base = self.coproduct_into(&gp, &self.vars3.clone(), 0, 2);
                Subst::new(&self.vars3, &self.vars3, images, vec![])
                    .expect("well formed")
                    .apply(&base)
                    .expect("polynomial")
            };
            let rhs = {
                let images: Vec<SPoly> = (0..3 * n)
                    .map(|k| {
                        if k < n {
                            SPoly::even_var(&self.vars3, k, 1)
                        } else if k < 2 * n {
                            self.coproduct_into(&self.gen_poly(k - n), &self.vars3.clone(), 1, 2)
                        } else {
                            SPoly::even_var(&self.vars3, k, 1)
                        }
                    })
                    .collect();
                let base = self.coproduct_into(&gp, &self.vars3.clone(), 0, 1);
                Subst::new(&self.vars3, &self.vars3, images, vec![])
                    .expect("well formed")
                    .apply(&base)
                    .expect("polynomial")
            };
            report.check(
                lhs == rhs,
                "coassociativity",
                &g.name,
                "(Delta (x) id) Delta != (id (x) Delta) Delta",
            );
            // antipode axiom m (S (x) id) Delta = eps . 1
            match self.antipode_convolution(&gp, true) {
                Ok(lhs) => {
                    let expect = SPoly::constant(&self.vars1, self.counit_rules[i].clone());
                    report.check(
                        lhs == expect,
                        "antipode-axiom",
                        &g.name,
                        "m (S (x) id) Delta != eps 1",
                    );
                }
                Err(e) => {
                    report.push(Violation::new("antipode-axiom", &g.name, e.to_string()));
                }
            }
            match self.antipode_convolution(&gp, false) {
                Ok(lhs) => {
                    let expect = SPoly::constant(&self.vars1, self.counit_rules[i].clone());
                    report.check(
                        lhs == expect,
                        "antipode-axiom",
                        &g.name,
                        "m (id (x) S) Delta != eps 1",
                    );
                }
                Err(e) => {
                    report.push(Violation::new("antipode-axiom", &g.name, e.to_string()));
                }
            }
        }
        report
    }

    /// m (S (x) id) Delta (or the mirror) collapsed back to one variable.
    pub fn antipode_convolution(&self, p: &SPoly, s_first: bool) -> Result<SPoly, AlgebraError> {
        let n = self.n();
        let d = self.coproduct(p);
        let images: Vec<SPoly> = (0..2 * n)
            .map(|k| {
                let (slot0, i) = (k < n, k % n);
                if slot0 == s_first {
                    self.antipode_rules[i].clone()
                } else {
                    SPoly::even_var(&self.vars1, i, 1)
                }
            })
            .collect::<Vec<_>>();
        Subst::new(&self.vars2, &self.vars1, images, vec![])?.apply(&d)
    }
}

/// A rational point of the reduced group, as a generator assignment.
#[derive(Debug, Clone, PartialEq)]
pub struct GroupPoint {
    pub values: Vec<Rat>,
}

impl GroupPoint {
    pub fn new(hopf: &CoordHopf, values: Vec<Rat>) -> Result<GroupPoint, AlgebraError> {
        if values.len() != hopf.n() {
            return Err(AlgebraError::InvalidPoint(
                "wrong number of coordinates".into(),
            ));
        }
        for (g, v) in hopf.gens.iter().zip(&values) {
            if g.invertible && v.is_zero() {
                return Err(AlgebraError::InvalidPoint(format!(
                    "generator {} is invertible but assigned 0",
                    g.name
                )));
            }
        }
        Ok(GroupPoint { values })
    }

    /// The identity: evaluation there is the counit.
    pub fn identity(hopf: &CoordHopf) -> GroupPoint {
        GroupPoint {
            values: hopf.counit_rules.clone(),
        }
    }
}

pub fn coord_eval(hopf: &CoordHopf, p: &SPoly, point: &GroupPoint) -> Result<Rat, AlgebraError> {
    let images: Vec<SPoly> = point
        .values
        .iter()
        .map(|v| SPoly::constant(&hopf.vars1, v.clone()))
        .collect();
    let res = Subst::new(&hopf.vars1, &hopf.vars1, images, vec![])?.apply(p)?;
    res.constant_value()
        .ok_or_else(|| AlgebraError::Malformed("evaluation did not land in scalars".into()))
}

/// A g0-tangent vector at the identity, as an eps-derivation on generators.
#[derive(Debug, Clone, PartialEq)]
pub struct TangentFunctional {
    pub values: Vec<Rat>,
}

impl TangentFunctional {
    /// Extends by Z(fg) = Z(f) eps(g) + eps(f) Z(g) to a Laurent monomial.
    pub fn on_monomial(&self, hopf: &CoordHopf, m: &Mono) -> Rat {
        let mut zero_sites: Vec<(usize, i32)> = Vec::new();
        for (i, e) in m.ev.iter().enumerate() {
            if *e != 0 && hopf.counit_rules[i].is_zero() {
                zero_sites.push((i, *e));
            }
        }
        match zero_sites.len() {
            0 => {
                let mut eps = rint(1);
                let mut sum = Rat::zero();
                for (i, e) in m.ev.iter().enumerate() {
                    if *e == 0 {
                        continue;
                    }
                    let ev = &hopf.counit_rules[i];
                    for _ in 0..e.abs() {
                        if *e > 0 {
                            eps *= ev;
                        } else {
                            eps /= ev;
                        }
                    }
                    sum += rint(*e as i64) * &self.values[i] / ev;
                }
                sum * eps
            }
            1 if zero_sites[0].1 == 1 => {
                let (site, _) = zero_sites[0];
                let mut acc = self.values[site].clone();
                for (i, e) in m.ev.iter().enumerate() {
                    if i == site || *e == 0 {
                        continue;
                    }
                    let ev = &hopf.counit_rules[i];
                    for _ in 0..e.abs() {
                        if *e > 0 {
                            acc *= ev;
                        } else {
                            acc /= ev;
                        }
                    }
                }
                acc
            }
            _ => Rat::zero(),
        }
    }

    pub fn apply(&self, hopf: &CoordHopf, p: &SPoly) -> Rat {
        let mut out = Rat::zero();
        for (m, c) in &p.terms {
            out += c * self.on_monomial(hopf, m);
        }
        out
    }
}

/// The left invariant differential operator of a single even tangent vector:
/// D_Z = (id (x) Z_e) Delta.
pub fn left_invariant_single(hopf: &CoordHopf, z: &TangentFunctional, f: &SPoly) -> SPoly {
    let n = hopf.n();
    let d = hopf.coproduct(f);
    let mut out = SPoly::zero(&hopf.vars1);
    for (m, c) in &d.terms {
        let m0 = Mono {
            od: 0,
            ev: m.ev[..n].to_vec(),
        };
        let m1 = Mono {
            od: 0,
            ev: m.ev[n..].to_vec(),
        };
        let zval = z.on_monomial(hopf, &m1);
        if !zval.is_zero() {
            out = out.add(&SPoly::monomial(&hopf.vars1, m0, c * zval));
        }
    }
    out
}

/// D for an even normal monomial: composition of the single-generator
/// operators in declaration order, D_1 = id.
pub fn left_invariant_op(
    hopf: &CoordHopf,
    tangents: &[TangentFunctional],
    z: &Pbw,
    f: &SPoly,
) -> SPoly {
    assert_eq!(z.od, 0, "left invariant operators take U(g0) monomials");
    let mut out = f.clone();
    // rightmost factor acts first
    for (i, e) in z.ev.iter().enumerate().rev() {
        for _ in 0..*e {
            out = left_invariant_single(hopf, &tangents[i], &out);
        }
    }
    out
}

/// Reduced left translation pullback: f -> f(h .).
pub fn left_translate_fn(
    hopf: &CoordHopf,
    f: &SPoly,
    h: &GroupPoint,
) -> Result<SPoly, AlgebraError> {
    let n = hopf.n();
    let d = hopf.coproduct(f);
    let images: Vec<SPoly> = (0..2 * n)
        .map(|k| {
            if k < n {
                SPoly::constant(&hopf.vars1, h.values[k].clone())
            } else {
                SPoly::even_var(&hopf.vars1, k - n, 1)
            }
        })
        .collect();
    Subst::new(&hopf.vars2, &hopf.vars1, images, vec![])?.apply(&d)
}

/// Reduced right translation pullback: f -> f(. h).
pub fn right_translate_fn(
    hopf: &CoordHopf,
    f: &SPoly,
    h: &GroupPoint,
) -> Result<SPoly, AlgebraError> {
    let n = hopf.n();
    let d = hopf.coproduct(f);
    let images: Vec<SPoly> = (0..2 * n)
        .map(|k| {
            if k < n {
                SPoly::even_var(&hopf.vars1, k, 1)
            } else {
                SPoly::constant(&hopf.vars1, h.values[k - n].clone())
            }
        })
        .collect();
    Subst::new(&hopf.vars2, &hopf.vars1, images, vec![])?.apply(&d)
}
