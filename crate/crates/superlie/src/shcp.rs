//! Super Harish-Chandra pairs: a super Lie algebra, a coordinate Hopf
//! algebra for the reduced group, the representation sigma of the reduced
//! group on the algebra, and the tangent functionals identifying g0 with
//! invariant vector fields. Validation checks the pair axioms; sigma_apply
//! extends sigma multiplicatively to the enveloping algebra.

use crate::algebra::SuperLieAlgebra;
use crate::hopf::{CoordHopf, GroupPoint, TangentFunctional};
use crate::rat::{rint, Rat};
use crate::report::{Report, Violation};
use crate::spoly::{Parity, SPoly, Subst, VarSet};
use crate::uea::{uea_mul, PolyRing, RatRing, Uea};
use crate::AlgebraError;
use num_traits::Zero;
use std::sync::Arc;

#[derive(Debug, Clone)]
pub struct Shcp {
    pub sla: SuperLieAlgebra,
    pub hopf: CoordHopf,
    /// sigma(h) e_j = sum_k sigma[k][j] e_k, entries in the coordinate ring.
    pub sigma: Vec<Vec<SPoly>>,
    /// One tangent functional per even basis vector.
    pub tangents: Vec<TangentFunctional>,
}

impl Shcp {
    pub fn ring1(&self) -> PolyRing {
        PolyRing(self.hopf.vars1.clone())
    }

    pub fn validate(&self) -> Report {
        let mut report = Report::new();
        let n = self.sla.dim();
        if self.sigma.len() != n || self.sigma.iter().any(|row| row.len() != n) {
            report.push(Violation::new(
                "sigma-shape",
                "sigma",
                "matrix must be (m+q) x (m+q)",
            ));
            return report;
        }
        if self.tangents.len() != self.sla.m() {
            report.push(Violation::new(
                "tangent-count",
                "tangents",
                "one tangent functional per even basis vector",
            ));
            return report;
        }
        // parity blocks
        for k in 0..n {
            for j in 0..n {
                if self.sla.parity(k) != self.sla.parity(j) && !self.sigma[k][j].is_zero() {
                    report.push(Violation::new(
                        "sigma-parity-block",
                        format!("sigma[{}][{}]", self.sla.name(k), self.sla.name(j)),
                        "off-parity block must vanish",
                    ));
                }
            }
        }
        // comodule / homomorphism law and counit
        let vars2 = self.hopf.vars2.clone();
        for k in 0..n {
            for j in 0..n {
                let lhs = self.hopf.coproduct(&self.sigma[k][j]);
                let mut rhs = SPoly::zero(&vars2);
                for l in 0..n {
                    let a = self.hopf.embed(&self.sigma[k][l], &vars2, 0);
                    let b = self.hopf.embed(&self.sigma[l][j], &vars2, 1);
                    rhs = rhs.add(&a.mul(&b));
                }
                report.check(
                    lhs == rhs,
                    "sigma-comodule",
                    format!("sigma[{}][{}]", self.sla.name(k), self.sla.name(j)),
                    "Delta(sigma_kj) != sum_l sigma_kl (x) sigma_lj",
                );
                let eps = self.hopf.counit(&self.sigma[k][j]);
                let expect = if k == j { rint(1) } else { rint(0) };
                report.check(
                    eps == expect,
                    "sigma-identity",
                    format!("sigma[{}][{}]", self.sla.name(k), self.sla.name(j)),
                    "counit of sigma must be the identity matrix",
                );
            }
        }
        // bracket equivariance: sigma(g)[e_i, e_j] = [sigma(g)e_i, sigma(g)e_j]
        for i in 0..n {
            for j in 0..n {
                let br = self.sla.bracket_basis(i, j);
                for k in 0..n {
                    let mut lhs = SPoly::zero(&self.hopf.vars1);
                    for (t, c) in br.iter().enumerate() {
                        if !c.is_zero() {
                            lhs = lhs.add(&self.sigma[k][t].scale(c));
                        }
                    }
                    let mut rhs = SPoly::zero(&self.hopf.vars1);
                    for a in 0..n {
                        if self.sigma[a][i].is_zero() {
                            continue;
                        }
                        for b in 0..n {
                            if self.sigma[b][j].is_zero() {
                                continue;
                            }
                            let c = &self.sla.bracket_basis(a, b)[k];
                            if !c.is_zero() {
                                rhs = rhs.add(&self.sigma[a][i].mul(&self.sigma[b][j]).scale(c));
                            }
                        }
                    }
                    report.check(
                        lhs == rhs,
                        "sigma-bracket-equivariance",
                        format!(
                            "[{}, {}] component {}",
                            self.sla.name(i),
                            self.sla.name(j),
                            self.sla.name(k)
                        ),
                        "sigma(g)[x,y] != [sigma(g)x, sigma(g)y]",
                    );
                }
            }
        }
        // infinitesimal compatibility: Z_e(sigma_kj) = ad(Z)_kj
        for z in 0..self.sla.m() {
            let ad = self.sla.ad_matrix(z);
            for k in 0..n {
                for j in 0..n {
                    let got = self.tangents[z].apply(&self.hopf, &self.sigma[k][j]);
                    report.check(
                        got == ad[k][j],
                        "sigma-infinitesimal",
                        format!(
                            "d sigma({})[{}][{}]",
                            self.sla.even_names[z],
                            self.sla.name(k),
                            self.sla.name(j)
                        ),
                        "derivative of sigma at e does not match ad",
                    );
                }
            }
        }
        report
    }

    /// sigma entry with the coordinate antipode applied (the h^-1 twist).
    fn sigma_entry(&self, k: usize, j: usize, inverse: bool) -> Result<SPoly, AlgebraError> {
        if inverse {
            self.hopf.antipode(&self.sigma[k][j])
        } else {
            Ok(self.sigma[k][j].clone())
        }
    }

    /// Extends sigma multiplicatively to U(g), producing coefficients in the
    /// chosen slot of a multi-slot coordinate context. The inverse flag
    /// realizes the twist by the inverted group variable.
    pub fn sigma_apply(
        &self,
        u: &Uea<RatRing>,
        target: &Arc<VarSet>,
        slot: usize,
        inverse: bool,
    ) -> Result<Uea<PolyRing>, AlgebraError> {
        let ring = PolyRing(target.clone());
        let n = self.sla.dim();
        let mut out = Uea::zero();
        for (p, c) in &u.terms {
            let mut acc = Uea::one(&self.sla, &ring).scale(&ring, c);
            for letter in p.word(&self.sla) {
                let mut image: Uea<PolyRing> = Uea::zero();
                for k in 0..n {
                    let entry = self.sigma_entry(k, letter, inverse)?;
                    if entry.is_zero() {
                        continue;
                    }
                    let coeff = self.hopf.embed(&entry, target, slot);
                    image.add_term(
                        &ring,
                        crate::uea::Pbw::generator(&self.sla, k),
                        coeff,
                    );
                }
                acc = uea_mul(&self.sla, &ring, &acc, &image);
            }
            out = out.add(&ring, &acc);
        }
        Ok(out)
    }

    /// sigma evaluated at a rational point, as an exact matrix.
    pub fn sigma_at_point(&self, h: &GroupPoint) -> Result<Vec<Vec<Rat>>, AlgebraError> {
        let n = self.sla.dim();
        let mut out = vec![vec![Rat::zero(); n]; n];
        for k in 0..n {
            for j in 0..n {
                out[k][j] = crate::hopf::coord_eval(&self.hopf, &self.sigma[k][j], h)?;
            }
        }
        Ok(out)
    }
}

/// A morphism of pairs: a Hopf-algebra morphism of the reduced coordinate
/// rings (pullback direction, given on generators of the target pair's ring)
/// together with a linear map of the super Lie algebras.
#[derive(Debug, Clone)]
pub struct ShcpMorphism {
    /// Pullback images in the source pair's coordinate ring, one per target
    /// pair generator.
    pub hopf_pullback: Vec<SPoly>,
    /// Columns are images of the source basis in the target basis.
    pub rho: Vec<Vec<Rat>>,
}

/// Checks the two compatibility conditions of a pair morphism source -> target:
/// rho restricted to even parts matches the differential of the reduced map,
/// and rho intertwines the sigma representations. Positive-direction pullback
/// transport of sections is not provided.
pub fn validate_shcp_morphism(
    source: &Shcp,
    target: &Shcp,
    morphism: &ShcpMorphism,
) -> Result<Report, AlgebraError> {
    let mut report = Report::new();
    let (ns, nt) = (source.sla.dim(), target.sla.dim());
    if morphism.rho.len() != nt || morphism.rho.iter().any(|r| r.len() != ns) {
        report.push(Violation::new(
            "morphism-shape",
            "rho",
            "expected a (target dim) x (source dim) matrix",
        ));
        return Ok(report);
    }
    if morphism.hopf_pullback.len() != target.hopf.n() {
        report.push(Violation::new(
            "morphism-shape",
            "hopf-pullback",
            "one image per target generator",
        ));
        return Ok(report);
    }
    // parity preservation and Lie algebra morphism
    for j in 0..ns {
        for k in 0..nt {
            if !morphism.rho[k][j].is_zero() && source.sla.parity(j) != target.sla.parity(k) {
                report.push(Violation::new(
                    "morphism-parity",
                    format!("rho[{}][{}]", target.sla.name(k), source.sla.name(j)),
                    "rho must preserve parity",
                ));
            }
        }
    }
    let apply_rho = |v: &[Rat]| -> Vec<Rat> {
        (0..nt)
            .map(|k| {
                v.iter()
                    .enumerate()
                    .fold(Rat::zero(), |acc, (j, c)| acc + &morphism.rho[k][j] * c)
            })
            .collect()
    };
    for i in 0..ns {
        for j in 0..ns {
            let lhs = apply_rho(&source.sla.bracket_basis(i, j));
            let ei = apply_rho(&unit_vec(ns, i));
            let ej = apply_rho(&unit_vec(ns, j));
            let rhs = target.sla.bracket_vec(&ei, &ej);
            report.check(
                lhs == rhs,
                "morphism-bracket",
                format!("[{}, {}]", source.sla.name(i), source.sla.name(j)),
                "rho is not a Lie algebra morphism",
            );
        }
    }
    // differential compatibility: Z_e . psi0* = (rho Z)_e on target generators
    for z in 0..source.sla.m() {
        for (g, img) in morphism.hopf_pullback.iter().enumerate() {
            let lhs = source.tangents[z].apply(&source.hopf, img);
            let rz = apply_rho(&unit_vec(ns, z));
            let mut rhs = Rat::zero();
            for (k, c) in rz.iter().enumerate().take(target.sla.m()) {
                if !c.is_zero() {
                    rhs += c * target.tangents[k].values[g].clone();
                }
            }
            report.check(
                lhs == rhs,
                "morphism-differential",
                format!(
                    "{} on {}",
                    source.sla.even_names[z], target.hopf.gens[g].name
                ),
                "restriction of rho to g0 does not match the reduced differential",
            );
        }
    }
    // intertwining: rho sigma_G(g) = sigma_H(psi0(g)) rho, entries pulled
    // back along psi0*
    let pull = Subst::new(
        &target.hopf.vars1,
        &source.hopf.vars1,
        morphism.hopf_pullback.clone(),
        vec![],
    )?;
    for j in 0..ns {
        for k in 0..nt {
            let mut lhs = SPoly::zero(&source.hopf.vars1);
            for l in 0..ns {
                if !morphism.rho[k][l].is_zero() {
                    lhs = lhs.add(&source.sigma[l][j].scale(&morphism.rho[k][l]));
                }
            }
            let mut rhs = SPoly::zero(&source.hopf.vars1);
            for l in 0..nt {
                if !morphism.rho[l][j].is_zero() {
                    rhs = rhs.add(&pull.apply(&target.sigma[k][l])?.scale(&morphism.rho[l][j]));
                }
            }
            report.check(
                lhs == rhs,
                "morphism-intertwine",
                format!("rho sigma e_{} component {}", source.sla.name(j), k),
                "rho does not intertwine the sigma representations",
            );
        }
    }
    Ok(report)
}

fn unit_vec(n: usize, i: usize) -> Vec<Rat> {
    let mut v = vec![Rat::zero(); n];
    v[i] = rint(1);
    v
}

/// Convenience: the purely even sub-pair data of sigma restricted to g1 is
/// often diagonal by characters; this builds a diagonal sigma from entries.
pub fn diagonal_sigma(sla: &SuperLieAlgebra, hopf: &CoordHopf, diag: Vec<SPoly>) -> Vec<Vec<SPoly>> {
    let n = sla.dim();
    assert_eq!(diag.len(), n);
    let mut out = vec![vec![SPoly::zero(&hopf.vars1); n]; n];
    for (i, d) in diag.into_iter().enumerate() {
        out[i][i] = d;
    }
    out
}

pub fn parity_name(p: Parity) -> &'static str {
    match p {
        Parity::Even => "even",
        Parity::Odd => "odd",
    }
}
