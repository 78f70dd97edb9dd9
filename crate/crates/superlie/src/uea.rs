//! The super enveloping algebra U(g) in PBW normal form, its Hopf structure,
//! the exterior algebra on the odd part, and the antisymmetrizer linking the
//! two, together with the triangular inverse of the induced factorization
//! U(g0) (x) Lambda(g1) -> U(g).
//!
//! Elements are generic over a commutative coefficient ring so the same
//! kernels serve exact rational scalars and Laurent-polynomial coefficients.

use crate::algebra::SuperLieAlgebra;
use crate::rat::Rat;
use crate::spoly::{bits, odd_merge_sign, Parity, SPoly, VarSet};
use crate::AlgebraError;
use num_traits::Zero;
use std::collections::BTreeMap;
use std::sync::Arc;

pub trait CoeffRing {
    type El: Clone + PartialEq + std::fmt::Debug;
    fn zero(&self) -> Self::El;
    fn one(&self) -> Self::El;
    fn add(&self, a: &Self::El, b: &Self::El) -> Self::El;
    fn neg(&self, a: &Self::El) -> Self::El;
    fn mul(&self, a: &Self::El, b: &Self::El) -> Self::El;
    fn scale(&self, a: &Self::El, r: &Rat) -> Self::El;
    fn from_rat(&self, r: &Rat) -> Self::El;
    fn is_zero(&self, a: &Self::El) -> bool;
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RatRing;

impl CoeffRing for RatRing {
    type El = Rat;
    fn zero(&self) -> Rat {
        Rat::zero()
    }
    fn one(&self) -> Rat {
        Rat::from_integer(1.into())
    }
    fn add(&self, a: &Rat, b: &Rat) -> Rat {
        a + b
    }
    fn neg(&self, a: &Rat) -> Rat {
        -a.clone()
    }
    fn mul(&self, a: &Rat, b: &Rat) -> Rat {
        a * b
    }
    fn scale(&self, a: &Rat, r: &Rat) -> Rat {
        a * r
    }
    fn from_rat(&self, r: &Rat) -> Rat {
        r.clone()
    }
    fn is_zero(&self, a: &Rat) -> bool {
        a.is_zero()
    }
}

/// Coefficients in a purely even polynomial context (Laurent class).
#[derive(Debug, Clone)]
pub struct PolyRing(pub Arc<VarSet>);

impl CoeffRing for PolyRing {
    type El = SPoly;
    fn zero(&self) -> SPoly {
        SPoly::zero(&self.0)
    }
    fn one(&self) -> SPoly {
        SPoly::one(&self.0)
    }
    fn add(&self, a: &SPoly, b: &SPoly) -> SPoly {
        a.add(b)
    }
    fn neg(&self, a: &SPoly) -> SPoly {
        a.neg()
    }
    fn mul(&self, a: &SPoly, b: &SPoly) -> SPoly {
        a.mul(b)
    }
    fn scale(&self, a: &SPoly, r: &Rat) -> SPoly {
        a.scale(r)
    }
    fn from_rat(&self, r: &Rat) -> SPoly {
        SPoly::constant(&self.0, r.clone())
    }
    fn is_zero(&self, a: &SPoly) -> bool {
        a.is_zero()
    }
}

/// Normal monomial: even generators by exponent vector (declaration order),
/// then odd generators as a strictly increasing subset.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Pbw {
    pub ev: Vec<u32>,
    pub od: u64,
}

impl Pbw {
    pub fn unit(m: usize) -> Pbw {
        Pbw {
            ev: vec![0; m],
            od: 0,
        }
    }

    pub fn generator(sla: &SuperLieAlgebra, i: usize) -> Pbw {
        let mut p = Pbw::unit(sla.m());
        if i < sla.m() {
            p.ev[i] = 1;
        } else {
            p.od = 1u64 << (i - sla.m());
        }
        p
    }

    pub fn is_unit(&self) -> bool {
        self.od == 0 && self.ev.iter().all(|e| *e == 0)
    }

    pub fn parity(&self) -> Parity {
        if self.od.count_ones() % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn odd_degree(&self) -> u32 {
        self.od.count_ones()
    }

    /// The word of basis indices this monomial abbreviates.
    pub fn word(&self, sla: &SuperLieAlgebra) -> Vec<usize> {
        let mut w = Vec::new();
        for (i, e) in self.ev.iter().enumerate() {
            for _ in 0..*e {
                w.push(i);
            }
        }
        for b in bits(self.od) {
            w.push(sla.m() + b as usize);
        }
        w
    }

    pub fn even_part(&self) -> Pbw {
        Pbw {
            ev: self.ev.clone(),
            od: 0,
        }
    }

    pub fn render(&self, sla: &SuperLieAlgebra) -> String {
        if self.is_unit() {
            return "1".to_string();
        }
        let mut parts = Vec::new();
        for (i, e) in self.ev.iter().enumerate() {
            if *e == 1 {
                parts.push(sla.even_names[i].clone());
            } else if *e > 1 {
                parts.push(format!("{}^{}", sla.even_names[i], e));
            }
        }
        for b in bits(self.od) {
            parts.push(sla.odd_names[b as usize].clone());
        }
        parts.join("*")
    }
}

#[derive(Debug)]
pub struct Uea<R: CoeffRing> {
    pub terms: BTreeMap<Pbw, R::El>,
}

impl<R: CoeffRing> Clone for Uea<R> {
    fn clone(&self) -> Self {
        Uea {
            terms: self.terms.clone(),
        }
    }
}

impl<R: CoeffRing> PartialEq for Uea<R> {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms
    }
}

impl<R: CoeffRing> Uea<R> {
    pub fn zero() -> Uea<R> {
        Uea {
            terms: BTreeMap::new(),
        }
    }

    pub fn one(sla: &SuperLieAlgebra, ring: &R) -> Uea<R> {
        let mut u = Uea::zero();
        u.terms.insert(Pbw::unit(sla.m()), ring.one());
        u
    }

    pub fn generator(sla: &SuperLieAlgebra, ring: &R, i: usize) -> Uea<R> {
        let mut u = Uea::zero();
        u.terms.insert(Pbw::generator(sla, i), ring.one());
        u
    }

    pub fn monomial(p: Pbw, c: R::El) -> Uea<R> {
        let mut u = Uea::zero();
        u.terms.insert(p, c);
        u
    }

    pub fn add_term(&mut self, ring: &R, p: Pbw, c: R::El) {
        if ring.is_zero(&c) {
            return;
        }
        match self.terms.get_mut(&p) {
            Some(old) => {
                *old = ring.add(old, &c);
                if ring.is_zero(old) {
                    self.terms.remove(&p);
                }
            }
            None => {
                self.terms.insert(p, c);
            }
        }
    }

    pub fn add(&self, ring: &R, other: &Uea<R>) -> Uea<R> {
        let mut out = self.clone();
        for (p, c) in &other.terms {
            out.add_term(ring, p.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, ring: &R, other: &Uea<R>) -> Uea<R> {
        let mut out = self.clone();
        for (p, c) in &other.terms {
            out.add_term(ring, p.clone(), ring.neg(c));
        }
        out
    }

    pub fn scale(&self, ring: &R, r: &Rat) -> Uea<R> {
        let mut out = Uea::zero();
        for (p, c) in &self.terms {
            out.add_term(ring, p.clone(), ring.scale(c, r));
        }
        out
    }

    pub fn scale_el(&self, ring: &R, e: &R::El) -> Uea<R> {
        let mut out = Uea::zero();
        for (p, c) in &self.terms {
            out.add_term(ring, p.clone(), ring.mul(e, c));
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn max_odd_degree(&self) -> Option<u32> {
        self.terms.keys().map(|p| p.odd_degree()).max()
    }

    /// Parity if homogeneous in the Z2-grading.
    pub fn parity(&self) -> Option<Parity> {
        let mut it = self.terms.keys().map(|p| p.parity());
        let first = it.next()?;
        if it.all(|p| p == first) {
            Some(first)
        } else {
            None
        }
    }
}

pub fn lift_uea(u: &Uea<RatRing>, ring: &PolyRing) -> Uea<PolyRing> {
    let mut out = Uea::zero();
    for (p, c) in &u.terms {
        out.add_term(ring, p.clone(), ring.from_rat(c));
    }
    out
}

const STRAIGHTEN_FUEL: usize = 1_000_000;

fn first_violation(sla: &SuperLieAlgebra, word: &[usize]) -> Option<usize> {
    for k in 0..word.len().saturating_sub(1) {
        let (i, j) = (word[k], word[k + 1]);
        if i > j {
            return Some(k);
        }
        if i == j && sla.parity(i) == Parity::Odd {
            return Some(k);
        }
    }
    None
}

fn normal_word_to_pbw(sla: &SuperLieAlgebra, word: &[usize]) -> Pbw {
    let mut p = Pbw::unit(sla.m());
    for &l in word {
        if l < sla.m() {
            p.ev[l] += 1;
        } else {
            p.od |= 1u64 << (l - sla.m());
        }
    }
    p
}

/// Straightens a linear combination of words in the basis generators into
/// PBW normal form, using the defining relation
/// `x y - (-1)^{|x||y|} y x = [x, y]` as a rewriting rule with coefficient
/// merging after every step.
pub fn straighten<R: CoeffRing>(
    sla: &SuperLieAlgebra,
    ring: &R,
    inputs: Vec<(R::El, Vec<usize>)>,
) -> Result<Uea<R>, AlgebraError> {
    let mut pending: BTreeMap<Vec<usize>, R::El> = BTreeMap::new();
    let add_pending = |pending: &mut BTreeMap<Vec<usize>, R::El>, w: Vec<usize>, c: R::El| {
        if ring.is_zero(&c) {
            return;
        }
        match pending.get_mut(&w) {
            Some(old) => {
                *old = ring.add(old, &c);
                if ring.is_zero(old) {
                    pending.remove(&w);
                }
            }
            None => {
                pending.insert(w, c);
            }
        }
    };
    for (c, w) in inputs {
        add_pending(&mut pending, w, c);
    }
    let mut out = Uea::zero();
    let mut fuel = STRAIGHTEN_FUEL;
    while let Some((word, coeff)) = pending.pop_first() {
        match first_violation(sla, &word) {
            None => out.add_term(ring, normal_word_to_pbw(sla, &word), coeff),
            Some(k) => {
                if fuel == 0 {
                    return Err(AlgebraError::FuelExhausted);
                }
                fuel -= 1;
                let (i, j) = (word[k], word[k + 1]);
                let bracket = sla.bracket_basis(i, j);
                if i == j {
                    // odd square: e e = 1/2 [e, e]
                    for (t, c) in bracket.iter().enumerate() {
                        if c.is_zero() {
                            continue;
                        }
                        let mut w = word.clone();
                        w.splice(k..k + 2, [t]);
                        add_pending(
                            &mut pending,
                            w,
                            ring.scale(&coeff, &(c * crate::rat::rat(1, 2))),
                        );
                    }
                } else {
                    let swap_sign =
                        if sla.parity(i) == Parity::Odd && sla.parity(j) == Parity::Odd {
                            crate::rat::rint(-1)
                        } else {
                            crate::rat::rint(1)
                        };
                    let mut swapped = word.clone();
                    swapped.swap(k, k + 1);
                    add_pending(&mut pending, swapped, ring.scale(&coeff, &swap_sign));
                    for (t, c) in bracket.iter().enumerate() {
                        if c.is_zero() {
                            continue;
                        }
                        let mut w = word.clone();
                        w.splice(k..k + 2, [t]);
                        add_pending(&mut pending, w, ring.scale(&coeff, c));
                    }
                }
            }
        }
    }
    Ok(out)
}

pub fn pbw_normalize(sla: &SuperLieAlgebra, coeff: Rat, word: Vec<usize>) -> Uea<RatRing> {
    straighten(sla, &RatRing, vec![(coeff, word)]).expect("straightening terminates")
}

pub fn uea_mul<R: CoeffRing>(
    sla: &SuperLieAlgebra,
    ring: &R,
    a: &Uea<R>,
    b: &Uea<R>,
) -> Uea<R> {
    let mut inputs = Vec::new();
    for (pa, ca) in &a.terms {
        let wa = pa.word(sla);
        for (pb, cb) in &b.terms {
            let mut w = wa.clone();
            w.extend(pb.word(sla));
            inputs.push((ring.mul(ca, cb), w));
        }
    }
    straighten(sla, ring, inputs).expect("straightening terminates")
}

pub fn uea_counit<R: CoeffRing>(sla: &SuperLieAlgebra, ring: &R, u: &Uea<R>) -> R::El {
    u.terms
        .get(&Pbw::unit(sla.m()))
        .cloned()
        .unwrap_or_else(|| ring.zero())
}

/// Super antipode: anti-automorphism with S(X) = -X on generators;
/// S(l1 ... ln) = (-1)^n (-1)^{k(k-1)/2} ln ... l1 for k odd letters.
pub fn uea_antipode<R: CoeffRing>(sla: &SuperLieAlgebra, ring: &R, u: &Uea<R>) -> Uea<R> {
    let mut inputs = Vec::new();
    for (p, c) in &u.terms {
        let mut w = p.word(sla);
        let n = w.len() as u32;
        let k = p.odd_degree();
        w.reverse();
        let sign = if (n + k * (k.saturating_sub(1)) / 2) % 2 == 0 {
            crate::rat::rint(1)
        } else {
            crate::rat::rint(-1)
        };
        inputs.push((ring.scale(c, &sign), w));
    }
    straighten(sla, ring, inputs).expect("straightening terminates")
}

/// Elements of U(g) (x) U(g) over the rationals.
pub type Tensor2 = BTreeMap<(Pbw, Pbw), Rat>;

fn tensor2_add_term(t: &mut Tensor2, key: (Pbw, Pbw), c: Rat) {
    if c.is_zero() {
        return;
    }
    match t.get_mut(&key) {
        Some(old) => {
            *old += c;
            if old.is_zero() {
                t.remove(&key);
            }
        }
        None => {
            t.insert(key, c);
        }
    }
}

fn tensor2_mul(sla: &SuperLieAlgebra, a: &Tensor2, b: &Tensor2) -> Tensor2 {
    let mut out = Tensor2::new();
    for ((a1, b1), c1) in a {
        for ((a2, b2), c2) in b {
            // (a1 (x) b1)(a2 (x) b2) = (-1)^{|b1||a2|} a1 a2 (x) b1 b2
            let sign = if b1.parity() == Parity::Odd && a2.parity() == Parity::Odd {
                crate::rat::rint(-1)
            } else {
                crate::rat::rint(1)
            };
            let left = uea_mul(
                sla,
                &RatRing,
                &Uea::monomial(a1.clone(), crate::rat::rint(1)),
                &Uea::monomial(a2.clone(), crate::rat::rint(1)),
            );
            let right = uea_mul(
                sla,
                &RatRing,
                &Uea::monomial(b1.clone(), crate::rat::rint(1)),
                &Uea::monomial(b2.clone(), crate::rat::rint(1)),
            );
            for (pl, cl) in &left.terms {
                for (pr, cr) in &right.terms {
                    tensor2_add_term(
                        &mut out,
                        (pl.clone(), pr.clone()),
                        c1 * c2 * cl * cr * &sign,
                    );
                }
            }
        }
    }
    out
}

/// Coproduct of U(g): generators are primitive, extended as a superalgebra
/// morphism into U(g) (x) U(g) with Koszul signs.
pub fn uea_coproduct(sla: &SuperLieAlgebra, u: &Uea<RatRing>) -> Tensor2 {
    let mut out = Tensor2::new();
    for (p, c) in &u.terms {
        let mut acc = Tensor2::new();
        acc.insert((Pbw::unit(sla.m()), Pbw::unit(sla.m())), crate::rat::rint(1));
        for l in p.word(sla) {
            let mut gen = Tensor2::new();
            gen.insert(
                (Pbw::generator(sla, l), Pbw::unit(sla.m())),
                crate::rat::rint(1),
            );
            gen.insert(
                (Pbw::unit(sla.m()), Pbw::generator(sla, l)),
                crate::rat::rint(1),
            );
            acc = tensor2_mul(sla, &acc, &gen);
        }
        for (key, v) in acc {
            tensor2_add_term(&mut out, key, v * c);
        }
    }
    out
}

/// Elements of the exterior algebra on the odd part, coefficients in R.
#[derive(Debug, Clone, PartialEq)]
pub struct WedgeElement<R: CoeffRing> {
    pub terms: BTreeMap<u64, R::El>,
}

impl<R: CoeffRing> WedgeElement<R> {
    pub fn zero() -> WedgeElement<R> {
        WedgeElement {
            terms: BTreeMap::new(),
        }
    }

    pub fn monomial(ring: &R, mask: u64, c: R::El) -> WedgeElement<R> {
        let mut w = WedgeElement::zero();
        if !ring.is_zero(&c) {
            w.terms.insert(mask, c);
        }
        w
    }

    pub fn one(ring: &R) -> WedgeElement<R> {
        WedgeElement::monomial(ring, 0, ring.one())
    }

    pub fn add_term(&mut self, ring: &R, mask: u64, c: R::El) {
        if ring.is_zero(&c) {
            return;
        }
        match self.terms.get_mut(&mask) {
            Some(old) => {
                *old = ring.add(old, &c);
                if ring.is_zero(old) {
                    self.terms.remove(&mask);
                }
            }
            None => {
                self.terms.insert(mask, c);
            }
        }
    }
}

/// Coproduct on the exterior algebra: primitive generators, subset splits
/// with the sign of the permutation sorting the split.
pub fn wedge_coproduct(mask: u64) -> Vec<(u64, u64, i64)> {
    let bit_list: Vec<u32> = bits(mask).collect();
    let p = bit_list.len();
    let mut out = Vec::new();
    for sel in 0..(1u64 << p) {
        let mut a = 0u64;
        let mut b = 0u64;
        for (pos, bit) in bit_list.iter().enumerate() {
            if sel & (1 << pos) != 0 {
                a |= 1u64 << bit;
            } else {
                b |= 1u64 << bit;
            }
        }
        let sign = odd_merge_sign(a, b).expect("disjoint by construction");
        out.push((a, b, sign));
    }
    out
}

fn permutations_with_sign(n: usize) -> Vec<(Vec<usize>, i64)> {
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (0..n).collect();
    fn gen(k: usize, idx: &mut Vec<usize>, sign: i64, out: &mut Vec<(Vec<usize>, i64)>) {
        if k == idx.len() {
            out.push((idx.clone(), sign));
            return;
        }
        for i in k..idx.len() {
            idx.swap(k, i);
            let s = if i == k { sign } else { -sign };
            gen(k + 1, idx, s, out);
            idx.swap(k, i);
        }
    }
    gen(0, &mut idx, 1, &mut out);
    out
}

/// The antisymmetrizer: sends the wedge of odd generators to the signed
/// average of the permuted products in U(g), extended linearly.
pub fn gamma<R: CoeffRing>(
    sla: &SuperLieAlgebra,
    ring: &R,
    w: &WedgeElement<R>,
) -> Uea<R> {
    let mut inputs = Vec::new();
    for (mask, c) in &w.terms {
        let letters: Vec<usize> = bits(*mask).map(|b| sla.m() + b as usize).collect();
        let p = letters.len();
        if p == 0 {
            inputs.push((c.clone(), vec![]));
            continue;
        }
        let mut factorial = crate::rat::rint(1);
        for k in 2..=p as i64 {
            factorial *= crate::rat::rint(k);
        }
        let norm = crate::rat::rint(1) / factorial;
        for (perm, sign) in permutations_with_sign(p) {
            let word: Vec<usize> = perm.iter().map(|&i| letters[i]).collect();
            let coeff = ring.scale(c, &(&norm * crate::rat::rint(sign)));
            inputs.push((coeff, word));
        }
    }
    straighten(sla, ring, inputs).expect("straightening terminates")
}

/// Inverse of the factorization map: decomposes u in normal form into
/// sum_i Z_i * gamma(P_i) with Z_i in U(g0), by peeling the highest odd
/// degree, which strictly decreases.
pub fn gamma_hat_inverse<R: CoeffRing>(
    sla: &SuperLieAlgebra,
    ring: &R,
    u: &Uea<R>,
) -> BTreeMap<(Pbw, u64), R::El> {
    let mut rest = u.clone();
    let mut out: BTreeMap<(Pbw, u64), R::El> = BTreeMap::new();
    let mut fuel = 64 + 2;
    while let Some(d) = rest.max_odd_degree() {
        assert!(fuel > 0, "odd degree failed to decrease");
        fuel -= 1;
        let tops: Vec<(Pbw, R::El)> = rest
            .terms
            .iter()
            .filter(|(p, _)| p.odd_degree() == d)
            .map(|(p, c)| (p.clone(), c.clone()))
            .collect();
        for (p, c) in tops {
            let key = (p.even_part(), p.od);
            match out.get_mut(&key) {
                Some(old) => *old = ring.add(old, &c),
                None => {
                    out.insert(key, c.clone());
                }
            }
            let g = gamma(sla, ring, &WedgeElement::monomial(ring, p.od, ring.one()));
            let correction = uea_mul(
                sla,
                ring,
                &Uea::monomial(p.even_part(), c),
                &g,
            );
            rest = rest.sub(ring, &correction);
        }
        debug_assert!(rest.max_odd_degree().map_or(true, |nd| nd < d));
    }
    out.retain(|_, c| !ring.is_zero(c));
    out
}

/// Applies the factorization map to a decomposition (roundtrip partner of
/// `gamma_hat_inverse`).
pub fn gamma_hat_apply<R: CoeffRing>(
    sla: &SuperLieAlgebra,
    ring: &R,
    decomp: &BTreeMap<(Pbw, u64), R::El>,
) -> Uea<R> {
    let mut out = Uea::zero();
    for ((z, mask), c) in decomp {
        let g = gamma(sla, ring, &WedgeElement::monomial(ring, *mask, ring.one()));
        let term = uea_mul(sla, ring, &Uea::monomial(z.clone(), c.clone()), &g);
        out = out.add(ring, &term);
    }
    out
}

pub fn render_wedge(sla: &SuperLieAlgebra, mask: u64) -> String {
    if mask == 0 {
        return "1".to_string();
    }
    bits(mask)
        .map(|b| sla.odd_names[b as usize].clone())
        .collect::<Vec<_>>()
        .join("^")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, rint};
    use crate::standard;

    fn gl11() -> SuperLieAlgebra {
        standard::gl11_algebra()
    }

    // independent oracle: naive recursive rewriter, no worklist merging
    fn naive_normalize(sla: &SuperLieAlgebra, coeff: Rat, word: &[usize]) -> Uea<RatRing> {
        if let Some(k) = first_violation(sla, word) {
            let (i, j) = (word[k], word[k + 1]);
            let mut acc = Uea::zero();
            let bracket = sla.bracket_basis(i, j);
            if i == j {
                for (t, c) in bracket.iter().enumerate() {
                    if !c.is_zero() {
                        let mut w = word.to_vec();
                        w.splice(k..k + 2, [t]);
                        acc = acc.add(&RatRing, &naive_normalize(sla, &coeff * c * rat(1, 2), &w));
                    }
                }
            } else {
                let sign = if sla.parity(i) == Parity::Odd && sla.parity(j) == Parity::Odd {
                    rint(-1)
                } else {
                    rint(1)
                };
                let mut swapped = word.to_vec();
                swapped.swap(k, k + 1);
                acc = acc.add(&RatRing, &naive_normalize(sla, &coeff * sign, &swapped));
                for (t, c) in bracket.iter().enumerate() {
                    if !c.is_zero() {
                        let mut w = word.to_vec();
                        w.splice(k..k + 2, [t]);
                        acc = acc.add(&RatRing, &naive_normalize(sla, &coeff * c, &w));
                    }
                }
            }
            acc
        } else {
            Uea::monomial(normal_word_to_pbw(sla, word), coeff)
        }
    }

    // gl(1|1) indices: X1=0, X2=1, T1=2, T2=3
    #[test]
    fn straighten_matches_spec_examples() {
        let sla = gl11();
        // X1 stays put
        let u = pbw_normalize(&sla, rint(1), vec![0]);
        assert_eq!(u, Uea::generator(&sla, &RatRing, 0));
        // T1 X1 = X1 T1 - T1
        let u = pbw_normalize(&sla, rint(1), vec![2, 0]);
        let mut expect = Uea::zero();
        expect.add_term(&RatRing, Pbw { ev: vec![1, 0], od: 0b01 }, rint(1));
        expect.add_term(&RatRing, Pbw { ev: vec![0, 0], od: 0b01 }, rint(-1));
        assert_eq!(u, expect);
        // T2 T1 = -T1 T2 - X1 - X2
        let u = pbw_normalize(&sla, rint(1), vec![3, 2]);
        let mut expect = Uea::zero();
        expect.add_term(&RatRing, Pbw { ev: vec![0, 0], od: 0b11 }, rint(-1));
        expect.add_term(&RatRing, Pbw { ev: vec![1, 0], od: 0 }, rint(-1));
        expect.add_term(&RatRing, Pbw { ev: vec![0, 1], od: 0 }, rint(-1));
        assert_eq!(u, expect);
    }

    #[test]
    fn straighten_agrees_with_naive_oracle() {
        let sla = gl11();
        let words: Vec<Vec<usize>> = vec![
            vec![3, 2, 1, 0],
            vec![2, 3, 2],
            vec![3, 3],
            vec![1, 0, 3, 2, 1],
            vec![3, 2, 3, 2],
            vec![2, 0, 3, 1],
        ];
        for w in words {
            assert_eq!(
                pbw_normalize(&sla, rint(1), w.clone()),
                naive_normalize(&sla, rint(1), &w),
                "word {w:?}"
            );
        }
    }

    #[test]
    fn odd_squares_vanish() {
        let sla = gl11();
        let t1 = Uea::generator(&sla, &RatRing, 2);
        assert!(uea_mul(&sla, &RatRing, &t1, &t1).is_zero());
    }

    #[test]
    fn unit_and_ordered_product() {
        let sla = gl11();
        let one = Uea::one(&sla, &RatRing);
        let t1 = Uea::generator(&sla, &RatRing, 2);
        let t2 = Uea::generator(&sla, &RatRing, 3);
        assert_eq!(uea_mul(&sla, &RatRing, &one, &t1), t1);
        let prod = uea_mul(&sla, &RatRing, &t1, &t2);
        assert_eq!(
            prod,
            Uea::monomial(Pbw { ev: vec![0, 0], od: 0b11 }, rint(1))
        );
    }

    #[test]
    fn coproduct_of_generators_is_primitive() {
        let sla = gl11();
        let t1 = Uea::generator(&sla, &RatRing, 2);
        let d = uea_coproduct(&sla, &t1);
        assert_eq!(d.len(), 2);
        let unit = Pbw::unit(2);
        let g = Pbw::generator(&sla, 2);
        assert_eq!(d[&(g.clone(), unit.clone())], rint(1));
        assert_eq!(d[&(unit, g)], rint(1));
    }

    #[test]
    fn coproduct_of_odd_product_has_koszul_sign() {
        let sla = gl11();
        let t1t2 = pbw_normalize(&sla, rint(1), vec![2, 3]);
        let d = uea_coproduct(&sla, &t1t2);
        // T1T2 (x) 1 + T1 (x) T2 - T2 (x) T1 + 1 (x) T1T2
        let unit = Pbw::unit(2);
        let t1 = Pbw { ev: vec![0, 0], od: 0b01 };
        let t2 = Pbw { ev: vec![0, 0], od: 0b10 };
        let t12 = Pbw { ev: vec![0, 0], od: 0b11 };
        assert_eq!(d[&(t12.clone(), unit.clone())], rint(1));
        assert_eq!(d[&(t1.clone(), t2.clone())], rint(1));
        assert_eq!(d[&(t2, t1)], rint(-1));
        assert_eq!(d[&(unit, t12)], rint(1));
        assert_eq!(d.len(), 4);
    }

    #[test]
    fn counit_examples() {
        let sla = gl11();
        assert_eq!(uea_counit(&sla, &RatRing, &Uea::one(&sla, &RatRing)), rint(1));
        let t1 = Uea::generator(&sla, &RatRing, 2);
        assert_eq!(uea_counit(&sla, &RatRing, &t1), rint(0));
        let mixed = pbw_normalize(&sla, rint(1), vec![2, 3]).add(
            &RatRing,
            &Uea::generator(&sla, &RatRing, 0).scale(&RatRing, &rat(1, 2)),
        );
        assert_eq!(uea_counit(&sla, &RatRing, &mixed), rint(0));
    }

    #[test]
    fn antipode_examples() {
        let sla = gl11();
        assert_eq!(
            uea_antipode(&sla, &RatRing, &Uea::one(&sla, &RatRing)),
            Uea::one(&sla, &RatRing)
        );
        let t1 = Uea::generator(&sla, &RatRing, 2);
        assert_eq!(
            uea_antipode(&sla, &RatRing, &t1),
            t1.scale(&RatRing, &rint(-1))
        );
        // S(T1 T2) = -T2 T1 = T1 T2 + X1 + X2
        let t1t2 = pbw_normalize(&sla, rint(1), vec![2, 3]);
        let s = uea_antipode(&sla, &RatRing, &t1t2);
        let expect = pbw_normalize(&sla, rint(-1), vec![3, 2]);
        assert_eq!(s, expect);
    }

    #[test]
    fn gamma_examples() {
        let sla = gl11();
        let one = WedgeElement::one(&RatRing);
        assert_eq!(gamma(&sla, &RatRing, &one), Uea::one(&sla, &RatRing));
        let t1 = WedgeElement::monomial(&RatRing, 0b01, rint(1));
        assert_eq!(
            gamma(&sla, &RatRing, &t1),
            Uea::generator(&sla, &RatRing, 2)
        );
        // gamma(T1^T2) = T1 T2 + (X1+X2)/2
        let t12 = WedgeElement::monomial(&RatRing, 0b11, rint(1));
        let g = gamma(&sla, &RatRing, &t12);
        let mut expect = pbw_normalize(&sla, rint(1), vec![2, 3]);
        expect.add_term(&RatRing, Pbw { ev: vec![1, 0], od: 0 }, rat(1, 2));
        expect.add_term(&RatRing, Pbw { ev: vec![0, 1], od: 0 }, rat(1, 2));
        assert_eq!(g, expect);
    }

    #[test]
    fn gamma_hat_inverse_examples() {
        let sla = gl11();
        // identity
        let one = Uea::one(&sla, &RatRing);
        let d = gamma_hat_inverse(&sla, &RatRing, &one);
        assert_eq!(d.len(), 1);
        assert_eq!(d[&(Pbw::unit(2), 0u64)], rint(1));
        // T1 T2 -> 1 (x) T1^T2 - 1/2 (X1+X2) (x) 1
        let t1t2 = pbw_normalize(&sla, rint(1), vec![2, 3]);
        let d = gamma_hat_inverse(&sla, &RatRing, &t1t2);
        assert_eq!(d[&(Pbw::unit(2), 0b11u64)], rint(1));
        assert_eq!(d[&(Pbw { ev: vec![1, 0], od: 0 }, 0u64)], rat(-1, 2));
        assert_eq!(d[&(Pbw { ev: vec![0, 1], od: 0 }, 0u64)], rat(-1, 2));
        assert_eq!(d.len(), 3);
        // gamma(T1^T2)^2 -> 1/4 (X1+X2)^2 (x) 1
        let g = gamma(
            &sla,
            &RatRing,
            &WedgeElement::monomial(&RatRing, 0b11, rint(1)),
        );
        let g2 = uea_mul(&sla, &RatRing, &g, &g);
        let d = gamma_hat_inverse(&sla, &RatRing, &g2);
        assert_eq!(d[&(Pbw { ev: vec![2, 0], od: 0 }, 0u64)], rat(1, 4));
        assert_eq!(d[&(Pbw { ev: vec![1, 1], od: 0 }, 0u64)], rat(1, 2));
        assert_eq!(d[&(Pbw { ev: vec![0, 2], od: 0 }, 0u64)], rat(1, 4));
        assert_eq!(d.len(), 3);
    }

    #[test]
    fn gamma_hat_roundtrip() {
        let sla = gl11();
        let u = pbw_normalize(&sla, rat(3, 2), vec![3, 2, 0])
            .add(&RatRing, &pbw_normalize(&sla, rint(-2), vec![0, 1, 2]))
            .add(&RatRing, &Uea::one(&sla, &RatRing));
        let d = gamma_hat_inverse(&sla, &RatRing, &u);
        let back = gamma_hat_apply(&sla, &RatRing, &d);
        assert_eq!(back, u);
    }
}
