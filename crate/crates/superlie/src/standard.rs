//! Ready-made pairs used across the test suites and shipped as CLI fixtures:
//! gl(1|1) with its torus, a purely even torus, and a q = 3 nilpotent
//! algebra over the additive line, plus deliberately broken variants for
//! mutation tests.

use crate::algebra::SuperLieAlgebra;
use crate::hopf::{CoordHopf, TangentFunctional};
use crate::rat::{rint, Rat};
use crate::shcp::Shcp;
use crate::spoly::SPoly;
use num_traits::Zero;
use std::collections::BTreeMap;

fn coeffs(n: usize, entries: &[(usize, i64)]) -> Vec<Rat> {
    let mut v = vec![Rat::zero(); n];
    for (i, c) in entries {
        v[*i] = rint(*c);
    }
    v
}

/// gl(1|1): even basis X1, X2, odd basis T1, T2 with
/// [X_i, T_j] = (-1)^{i+j} T_j and [T1, T2] = -X1 - X2.
pub fn gl11_algebra() -> SuperLieAlgebra {
    let mut brackets = BTreeMap::new();
    // indices: X1 = 0, X2 = 1, T1 = 2, T2 = 3
    brackets.insert((0, 2), coeffs(4, &[(2, 1)]));
    brackets.insert((0, 3), coeffs(4, &[(3, -1)]));
    brackets.insert((1, 2), coeffs(4, &[(2, -1)]));
    brackets.insert((1, 3), coeffs(4, &[(3, 1)]));
    brackets.insert((2, 3), coeffs(4, &[(0, -1), (1, -1)]));
    SuperLieAlgebra::new(
        vec!["X1".into(), "X2".into()],
        vec!["T1".into(), "T2".into()],
        brackets,
    )
}

/// gl(1|1) with [T1, T2] corrupted to -X1 (Jacobi fails).
pub fn gl11_perturbed_bracket() -> SuperLieAlgebra {
    let mut sla = gl11_algebra();
    sla.brackets.insert((2, 3), coeffs(4, &[(0, -1)]));
    sla
}

pub fn gl11_shcp() -> Shcp {
    let sla = gl11_algebra();
    let hopf = CoordHopf::torus(&["y1", "y2"]);
    let vars1 = hopf.vars1.clone();
    let y = |i: usize, e: i32| SPoly::even_var(&vars1, i, e);
    let diag = vec![
        SPoly::one(&vars1),
        SPoly::one(&vars1),
        y(0, 1).mul(&y(1, -1)),
        y(0, -1).mul(&y(1, 1)),
    ];
    let sigma = crate::shcp::diagonal_sigma(&sla, &hopf, diag);
    let tangents = vec![
        TangentFunctional {
            values: vec![rint(1), rint(0)],
        },
        TangentFunctional {
            values: vec![rint(0), rint(1)],
        },
    ];
    Shcp {
        sla,
        hopf,
        sigma,
        tangents,
    }
}

/// gl(1|1) with sigma replaced by the identity matrix (invalid pair: the
/// derivative of sigma no longer matches ad).
pub fn gl11_sigma_identity() -> Shcp {
    let mut pair = gl11_shcp();
    let vars1 = pair.hopf.vars1.clone();
    let n = pair.sla.dim();
    pair.sigma = crate::shcp::diagonal_sigma(
        &pair.sla,
        &pair.hopf,
        (0..n).map(|_| SPoly::one(&vars1)).collect(),
    );
    pair
}

/// A purely even rank-1 torus pair.
pub fn torus1_shcp() -> Shcp {
    let sla = SuperLieAlgebra::new(vec!["X".into()], vec![], BTreeMap::new());
    let hopf = CoordHopf::torus(&["y"]);
    let sigma = crate::shcp::diagonal_sigma(&sla, &hopf, vec![SPoly::one(&hopf.vars1)]);
    Shcp {
        sla,
        hopf,
        sigma,
        tangents: vec![TangentFunctional {
            values: vec![rint(1)],
        }],
    }
}

/// Nilpotent pair with q = 3: central even Z, odd T1, T2, T3,
/// [T1, T2] = Z, everything else zero; reduced group is the additive line.
pub fn nilpotent_q3_shcp() -> Shcp {
    let mut brackets = BTreeMap::new();
    // indices: Z = 0, T1 = 1, T2 = 2, T3 = 3
    brackets.insert((1, 2), coeffs(4, &[(0, 1)]));
    let sla = SuperLieAlgebra::new(
        vec!["Z".into()],
        vec!["T1".into(), "T2".into(), "T3".into()],
        brackets,
    );
    let hopf = CoordHopf::additive(&["z"]);
    let n = sla.dim();
    let sigma = crate::shcp::diagonal_sigma(
        &sla,
        &hopf,
        (0..n).map(|_| SPoly::one(&hopf.vars1)).collect(),
    );
    Shcp {
        sla,
        hopf,
        sigma,
        tangents: vec![TangentFunctional {
            values: vec![rint(1)],
        }],
    }
}

/// The invertible 2x2 matrix model of the gl(1|1) pair: coordinate sections
/// through the dictionary x1 = phi1(1 + Phi1 Phi2 / 2),
/// x2 = phi2(1 - Phi1 Phi2 / 2), th_i = phi_i Phi_i, and the block product
/// formulas of the matrix multiplication.
pub fn gl11_matrix_model(shcp: &Shcp) -> crate::grassmann::MatrixModel {
    use crate::grassmann::MatrixModel;
    use crate::rat::rat;
    use crate::section::Section;
    let vars1 = &shcp.hopf.vars1;
    let y1 = SPoly::even_var(vars1, 0, 1);
    let y2 = SPoly::even_var(vars1, 1, 1);
    let dict_even = vec![
        Section::from_entries(vec![(0, y1.clone()), (0b11, y1.scale(&rat(-1, 2)))]),
        Section::from_entries(vec![(0, y2.clone()), (0b11, y2.scale(&rat(1, 2)))]),
    ];
    let dict_odd = vec![
        Section::from_entries(vec![(0b01, y1.clone())]),
        Section::from_entries(vec![(0b10, y2.clone())]),
    ];
    let even_coords = vec!["x1".to_string(), "x2".to_string()];
    let odd_coords = vec!["th1".to_string(), "th2".to_string()];
    let vars2 = MatrixModel::doubled_ctx(&even_coords, &odd_coords);
    let xe = |slot: usize, i: usize| SPoly::even_var(&vars2, slot * 2 + i, 1);
    let xo = |slot: usize, i: usize| SPoly::odd_var(&vars2, slot * 2 + i);
    let product_even = vec![
        // x1' = x1 y1 + th1 xi2
        xe(0, 0).mul(&xe(1, 0)).add(&xo(0, 0).mul(&xo(1, 1))),
        // x2' = x2 y2 + th2 xi1
        xe(0, 1).mul(&xe(1, 1)).add(&xo(0, 1).mul(&xo(1, 0))),
    ];
    let product_odd = vec![
        // th1' = x1 xi1 + th1 y2
        xe(0, 0).mul(&xo(1, 0)).add(&xo(0, 0).mul(&xe(1, 1))),
        // th2' = th2 y1 + x2 xi2
        xo(0, 1).mul(&xe(1, 0)).add(&xe(0, 1).mul(&xo(1, 1))),
    ];
    MatrixModel {
        even_coords,
        odd_coords,
        dict_even,
        dict_odd,
        vars2,
        product_even,
        product_odd,
    }
}

use crate::actions::{ActionData, SuperDomain};
use crate::spoly::{Derivation, Parity};

fn derivation(
    domain: &SuperDomain,
    parity: Parity,
    even_images: Vec<SPoly>,
    odd_images: Vec<SPoly>,
) -> Derivation {
    assert_eq!(even_images.len(), domain.me());
    assert_eq!(odd_images.len(), domain.mo());
    Derivation {
        parity,
        even_images,
        odd_images,
    }
}

/// gl(1|1) acting on itself by left multiplication: the reduced coaction is
/// the diagonal scaling of the matrix coordinates, rho sends basis vectors
/// to the right invariant vector fields.
pub fn gl11_left_action(shcp: &Shcp) -> ActionData {
    let domain = SuperDomain::new(
        vec![("Y1".into(), true), ("Y2".into(), true)],
        vec!["Xi1".into(), "Xi2".into()],
    );
    let ctxs = crate::actions::action_ctxs(shcp, &domain);
    let gm = &ctxs.gm;
    // gm layout: evens [y1, y2, Y1, Y2], odds [Xi1, Xi2]
    let w = |i: usize| SPoly::even_var(gm, i, 1);
    let ye = |i: usize| SPoly::even_var(gm, 2 + i, 1);
    let xo = |i: usize| SPoly::odd_var(gm, i);
    let coaction = vec![
        w(0).mul(&ye(0)),
        w(1).mul(&ye(1)),
        w(0).mul(&xo(0)),
        w(1).mul(&xo(1)),
    ];
    let d = &domain.vars;
    let dy = |i: usize| SPoly::even_var(d, i, 1);
    let dxi = |i: usize| SPoly::odd_var(d, i);
    let zero = SPoly::zero(d);
    let rho = vec![
        // X1 -> Y1 dY1 + Xi1 dXi1
        derivation(&domain, Parity::Even, vec![dy(0), zero.clone()], vec![dxi(0), zero.clone()]),
        // X2 -> Y2 dY2 + Xi2 dXi2
        derivation(&domain, Parity::Even, vec![zero.clone(), dy(1)], vec![zero.clone(), dxi(1)]),
        // T1 -> Y2 dXi1 + Xi2 dY1
        derivation(&domain, Parity::Odd, vec![dxi(1), zero.clone()], vec![dy(1), zero.clone()]),
        // T2 -> Y1 dXi2 + Xi1 dY2
        derivation(&domain, Parity::Odd, vec![zero.clone(), dxi(0)], vec![zero.clone(), dy(0)]),
    ];
    ActionData {
        domain,
        coaction,
        rho,
        reduced_transitive: true,
    }
}

/// Same data with the two odd derivations swapped (invalid).
pub fn gl11_left_action_swapped(shcp: &Shcp) -> ActionData {
    let mut data = gl11_left_action(shcp);
    data.rho.swap(2, 3);
    data
}

/// gl(1|1) acting on itself by conjugation. The reduced torus conjugates
/// the odd matrix coordinates by the character y1 y2^-1; rho is the
/// difference of right and left invariant fields.
pub fn gl11_conjugation_action(shcp: &Shcp) -> ActionData {
    let domain = SuperDomain::new(
        vec![("Y1".into(), true), ("Y2".into(), true)],
        vec!["Xi1".into(), "Xi2".into()],
    );
    let ctxs = crate::actions::action_ctxs(shcp, &domain);
    let gm = &ctxs.gm;
    let w = |i: usize, e: i32| SPoly::even_var(gm, i, e);
    let ye = |i: usize| SPoly::even_var(gm, 2 + i, 1);
    let xo = |i: usize| SPoly::odd_var(gm, i);
    let coaction = vec![
        ye(0),
        ye(1),
        w(0, 1).mul(&w(1, -1)).mul(&xo(0)),
        w(0, -1).mul(&w(1, 1)).mul(&xo(1)),
    ];
    let d = &domain.vars;
    let dy = |i: usize| SPoly::even_var(d, i, 1);
    let dxi = |i: usize| SPoly::odd_var(d, i);
    let zero = SPoly::zero(d);
    let rho = vec![
        // X1 -> Xi1 dXi1 - Xi2 dXi2
        derivation(
            &domain,
            Parity::Even,
            vec![zero.clone(), zero.clone()],
            vec![dxi(0), dxi(1).neg()],
        ),
        // X2 -> Xi2 dXi2 - Xi1 dXi1
        derivation(
            &domain,
            Parity::Even,
            vec![zero.clone(), zero.clone()],
            vec![dxi(0).neg(), dxi(1)],
        ),
        // T1 -> (Y2 - Y1) dXi1 + Xi2 (dY1 + dY2)
        derivation(
            &domain,
            Parity::Odd,
            vec![dxi(1), dxi(1)],
            vec![dy(1).sub(&dy(0)), zero.clone()],
        ),
        // T2 -> (Y1 - Y2) dXi2 + Xi1 (dY1 + dY2)
        derivation(
            &domain,
            Parity::Odd,
            vec![dxi(0), dxi(0)],
            vec![zero.clone(), dy(0).sub(&dy(1))],
        ),
    ];
    ActionData {
        domain,
        coaction,
        rho,
        reduced_transitive: false,
    }
}

/// The standard representation of gl(1|1) on the (1|1)-dimensional affine
/// superdomain: column vectors under the matrix action.
pub fn r11_standard_action(shcp: &Shcp) -> ActionData {
    let domain = SuperDomain::new(vec![("Y".into(), false)], vec!["Xi".into()]);
    let ctxs = crate::actions::action_ctxs(shcp, &domain);
    let gm = &ctxs.gm;
    let w = |i: usize| SPoly::even_var(gm, i, 1);
    let coaction = vec![
        w(0).mul(&SPoly::even_var(gm, 2, 1)),
        w(1).mul(&SPoly::odd_var(gm, 0)),
    ];
    let d = &domain.vars;
    let y = SPoly::even_var(d, 0, 1);
    let xi = SPoly::odd_var(d, 0);
    let zero = SPoly::zero(d);
    let rho = vec![
        // X1 -> Y dY
        derivation(&domain, Parity::Even, vec![y.clone()], vec![zero.clone()]),
        // X2 -> Xi dXi
        derivation(&domain, Parity::Even, vec![zero.clone()], vec![xi.clone()]),
        // T1 -> Xi dY
        derivation(&domain, Parity::Odd, vec![xi], vec![zero.clone()]),
        // T2 -> Y dXi
        derivation(&domain, Parity::Odd, vec![zero], vec![y]),
    ];
    ActionData {
        domain,
        coaction,
        rho,
        reduced_transitive: false,
    }
}

/// The trivial action on a point.
pub fn trivial_action(shcp: &Shcp) -> ActionData {
    let domain = SuperDomain::new(vec![], vec![]);
    ActionData {
        domain,
        coaction: vec![],
        rho: (0..shcp.sla.dim())
            .map(|i| Derivation {
                parity: shcp.sla.parity(i),
                even_images: vec![],
                odd_images: vec![],
            })
            .collect(),
        reduced_transitive: false,
    }
}
