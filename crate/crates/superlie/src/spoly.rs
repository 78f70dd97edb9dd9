//! Sparse supercommutative polynomials over exact rationals.
//!
//! One kernel covers every commutative coefficient algebra in the crate:
//! Laurent polynomials on a reduced group, tensor squares and cubes over
//! doubled generator sets, superdomain presentations with odd generators,
//! and Grassmann algebras. A context declares the even generators (with an
//! invertibility flag; negative exponents are allowed only there) and the
//! odd generators (which square to zero and anticommute).

use crate::rat::{render_rat, Rat};
use crate::AlgebraError;
use num_traits::Zero;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn flip(self) -> Parity {
        match self {
            Parity::Even => Parity::Odd,
            Parity::Odd => Parity::Even,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EvenVar {
    pub name: String,
    pub invertible: bool,
}

/// Generator context. Even variables commute; odd variables anticommute and
/// square to zero. At most 64 odd variables per context.
#[derive(Debug, PartialEq, Eq)]
pub struct VarSet {
    pub evens: Vec<EvenVar>,
    pub odds: Vec<String>,
}

impl VarSet {
    pub fn new(evens: Vec<EvenVar>, odds: Vec<String>) -> Arc<VarSet> {
        assert!(odds.len() <= 64, "too many odd generators");
        Arc::new(VarSet { evens, odds })
    }

    pub fn even_named(names: &[(&str, bool)]) -> Arc<VarSet> {
        VarSet::new(
            names
                .iter()
                .map(|(n, inv)| EvenVar {
                    name: n.to_string(),
                    invertible: *inv,
                })
                .collect(),
            vec![],
        )
    }

    pub fn find_even(&self, name: &str) -> Option<usize> {
        self.evens.iter().position(|v| v.name == name)
    }

    pub fn find_odd(&self, name: &str) -> Option<usize> {
        self.odds.iter().position(|v| v == name)
    }
}

/// Monomial: dense even exponent vector plus an odd-variable bitmask.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Mono {
    pub od: u64,
    pub ev: Vec<i32>,
}

impl Mono {
    pub fn unit(n_evens: usize) -> Mono {
        Mono {
            od: 0,
            ev: vec![0; n_evens],
        }
    }

    pub fn parity(&self) -> Parity {
        if self.od.count_ones() % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

/// Sign of merging two ascending odd index sets into one ascending set;
/// `None` when they overlap (the product vanishes).
pub fn odd_merge_sign(a: u64, b: u64) -> Option<i64> {
    if a & b != 0 {
        return None;
    }
    let mut inversions = 0u32;
    let mut bb = b;
    while bb != 0 {
        let j = bb.trailing_zeros();
        // bits of `a` strictly above j slide past this factor
        inversions += (a >> (j + 1)).count_ones();
        bb &= bb - 1;
    }
    Some(if inversions % 2 == 0 { 1 } else { -1 })
}

/// Iterate the set bits of a mask in ascending order.
pub fn bits(mask: u64) -> impl Iterator<Item = u32> {
    let mut m = mask;
    std::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let b = m.trailing_zeros();
            m &= m - 1;
            Some(b)
        }
    })
}

#[derive(Debug, Clone)]
pub struct SPoly {
    pub ctx: Arc<VarSet>,
    pub terms: BTreeMap<Mono, Rat>,
}

impl PartialEq for SPoly {
    fn eq(&self, other: &Self) -> bool {
        *self.ctx == *other.ctx && self.terms == other.terms
    }
}
impl Eq for SPoly {}

impl SPoly {
    pub fn zero(ctx: &Arc<VarSet>) -> SPoly {
        SPoly {
            ctx: ctx.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(ctx: &Arc<VarSet>, c: Rat) -> SPoly {
        let mut p = SPoly::zero(ctx);
        if !c.is_zero() {
            p.terms.insert(Mono::unit(ctx.evens.len()), c);
        }
        p
    }

    pub fn one(ctx: &Arc<VarSet>) -> SPoly {
        SPoly::constant(ctx, Rat::from_integer(1.into()))
    }

    pub fn even_var(ctx: &Arc<VarSet>, i: usize, exp: i32) -> SPoly {
        assert!(i < ctx.evens.len());
        assert!(exp >= 0 || ctx.evens[i].invertible, "negative exponent on non-invertible generator");
        let mut m = Mono::unit(ctx.evens.len());
        m.ev[i] = exp;
        let mut p = SPoly::zero(ctx);
        p.terms.insert(m, Rat::from_integer(1.into()));
        p
    }

    pub fn odd_var(ctx: &Arc<VarSet>, j: usize) -> SPoly {
        assert!(j < ctx.odds.len());
        let mut m = Mono::unit(ctx.evens.len());
        m.od = 1u64 << j;
        let mut p = SPoly::zero(ctx);
        p.terms.insert(m, Rat::from_integer(1.into()));
        p
    }

    pub fn monomial(ctx: &Arc<VarSet>, m: Mono, c: Rat) -> SPoly {
        let mut p = SPoly::zero(ctx);
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.len() <= 1
            && self
                .terms
                .keys()
                .all(|m| m.od == 0 && m.ev.iter().all(|e| *e == 0))
    }

    pub fn constant_value(&self) -> Option<Rat> {
        if self.is_zero() {
            return Some(Rat::zero());
        }
        if self.is_constant() {
            return self.terms.values().next().cloned();
        }
        None
    }

    /// Parity if homogeneous, else `None`. Only the odd mask counts; even
    /// generators and rational coefficients are parity zero.
    pub fn parity(&self) -> Option<Parity> {
        let mut it = self.terms.keys().map(|m| m.parity());
        let first = it.next()?;
        if it.all(|p| p == first) {
            Some(first)
        } else {
            None
        }
    }

    pub fn has_parity(&self, p: Parity) -> bool {
        self.is_zero() || self.parity() == Some(p)
    }

    fn add_term(&mut self, m: Mono, c: Rat) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(old) => {
                *old += c;
                if old.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn add(&self, other: &SPoly) -> SPoly {
        debug_assert_eq!(*self.ctx, *other.ctx);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &SPoly) -> SPoly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> SPoly {
        SPoly {
            ctx: self.ctx.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), -c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, r: &Rat) -> SPoly {
        if r.is_zero() {
            return SPoly::zero(&self.ctx);
        }
        SPoly {
            ctx: self.ctx.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), c * r))
                .collect(),
        }
    }

    pub fn mul(&self, other: &SPoly) -> SPoly {
        debug_assert_eq!(*self.ctx, *other.ctx);
        let mut out = SPoly::zero(&self.ctx);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                if let Some(sign) = odd_merge_sign(ma.od, mb.od) {
                    let mut ev = ma.ev.clone();
                    for (e, eb) in ev.iter_mut().zip(&mb.ev) {
                        *e += eb;
                    }
                    let m = Mono {
                        od: ma.od | mb.od,
                        ev,
                    };
                    let c = ca * cb * Rat::from_integer(sign.into());
                    out.add_term(m, c);
                }
            }
        }
        out
    }

    pub fn pow(&self, e: i32) -> Result<SPoly, AlgebraError> {
        if e == 0 {
            return Ok(SPoly::one(&self.ctx));
        }
        let base = if e < 0 { self.try_invert()? } else { self.clone() };
        let mut out = SPoly::one(&self.ctx);
        for _ in 0..e.unsigned_abs() {
            out = out.mul(&base);
        }
        Ok(out)
    }

    /// Inverts an element of the form `unit-monomial * (1 + nilpotent)`,
    /// where the nilpotent part has odd content in every term. Covers
    /// Laurent monomials and Grassmann numbers with invertible body.
    pub fn try_invert(&self) -> Result<SPoly, AlgebraError> {
        let body: Vec<(&Mono, &Rat)> = self.terms.iter().filter(|(m, _)| m.od == 0).collect();
        if body.len() != 1 {
            if body.is_empty() {
                return Err(AlgebraError::ZeroBody(self.to_string()));
            }
            return Err(AlgebraError::NotInvertible(self.to_string()));
        }
        let (bm, bc) = (body[0].0.clone(), body[0].1.clone());
        let mut inv_ev = Vec::with_capacity(bm.ev.len());
        for (i, e) in bm.ev.iter().enumerate() {
            if -*e < 0 && !self.ctx.evens[i].invertible {
                return Err(AlgebraError::NotInvertible(self.to_string()));
            }
            inv_ev.push(-*e);
        }
        let unit_inv = SPoly::monomial(
            &self.ctx,
            Mono { od: 0, ev: inv_ev },
            Rat::from_integer(1.into()) / bc.clone(),
        );
        // self = u (1 + n); inverse = u^-1 sum_k (-n)^k
        let n = self.sub(&SPoly::monomial(&self.ctx, bm, bc)).mul(&unit_inv);
        let mut out = SPoly::one(&self.ctx);
        let mut power = SPoly::one(&self.ctx);
        let neg_n = n.neg();
        for _ in 0..self.ctx.odds.len() {
            power = power.mul(&neg_n);
            if power.is_zero() {
                break;
            }
            out = out.add(&power);
        }
        Ok(out.mul(&unit_inv))
    }

    /// Coefficient extraction: collects terms by their odd mask, returning
    /// the purely even cofactor for each mask.
    pub fn split_by_odd_mask(&self) -> BTreeMap<u64, SPoly> {
        let mut out: BTreeMap<u64, SPoly> = BTreeMap::new();
        for (m, c) in &self.terms {
            let entry = out
                .entry(m.od)
                .or_insert_with(|| SPoly::zero(&self.ctx));
            entry.add_term(
                Mono {
                    od: 0,
                    ev: m.ev.clone(),
                },
                c.clone(),
            );
        }
        out
    }
}

impl fmt::Display for SPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut keys: Vec<&Mono> = self.terms.keys().collect();
        keys.sort_by_key(|m| (m.od.count_ones(), m.od, m.ev.clone()));
        let mut first = true;
        for m in keys {
            let c = &self.terms[m];
            let mut factors: Vec<String> = Vec::new();
            for (i, e) in m.ev.iter().enumerate() {
                if *e == 1 {
                    factors.push(self.ctx.evens[i].name.clone());
                } else if *e != 0 {
                    factors.push(format!("{}^{}", self.ctx.evens[i].name, e));
                }
            }
            for b in bits(m.od) {
                factors.push(self.ctx.odds[b as usize].clone());
            }
            let body = factors.join("*");
            let coeff = render_rat(c);
            let term = if body.is_empty() {
                coeff
            } else if coeff == "1" {
                body
            } else if coeff == "-1" {
                format!("-{body}")
            } else {
                format!("{coeff}*{body}")
            };
            if first {
                write!(f, "{term}")?;
                first = false;
            } else if let Some(rest) = term.strip_prefix('-') {
                write!(f, " - {rest}")?;
            } else {
                write!(f, " + {term}")?;
            }
        }
        Ok(())
    }
}

/// A superalgebra morphism out of one context, given by generator images.
#[derive(Debug, Clone)]
pub struct Subst {
    pub target: Arc<VarSet>,
    pub even_images: Vec<SPoly>,
    pub odd_images: Vec<SPoly>,
}

impl Subst {
    pub fn new(
        source: &Arc<VarSet>,
        target: &Arc<VarSet>,
        even_images: Vec<SPoly>,
        odd_images: Vec<SPoly>,
    ) -> Result<Subst, AlgebraError> {
        if even_images.len() != source.evens.len() || odd_images.len() != source.odds.len() {
            return Err(AlgebraError::Malformed(
                "substitution image count mismatch".into(),
            ));
        }
        for img in &even_images {
            if !img.has_parity(Parity::Even) {
                return Err(AlgebraError::ParityMismatch(format!(
                    "even generator mapped to {img}"
                )));
            }
        }
        for img in &odd_images {
            if !img.has_parity(Parity::Odd) {
                return Err(AlgebraError::ParityMismatch(format!(
                    "odd generator mapped to {img}"
                )));
            }
        }
        Ok(Subst {
            target: target.clone(),
            even_images,
            odd_images,
        })
    }

    /// Renaming into a larger context: generator i of `source` goes to the
    /// variable of `target` selected by the index maps.
    pub fn renaming(
        source: &Arc<VarSet>,
        target: &Arc<VarSet>,
        even_map: &[usize],
        odd_map: &[usize],
    ) -> Subst {
        let even_images = even_map
            .iter()
            .map(|&i| SPoly::even_var(target, i, 1))
            .collect();
        let odd_images = odd_map
            .iter()
            .map(|&j| SPoly::odd_var(target, j))
            .collect();
        Subst::new(source, target, even_images, odd_images).expect("renaming is well formed")
    }

    pub fn apply(&self, p: &SPoly) -> Result<SPoly, AlgebraError> {
        let mut out = SPoly::zero(&self.target);
        for (m, c) in &p.terms {
            let mut acc = SPoly::constant(&self.target, c.clone());
            for (i, e) in m.ev.iter().enumerate() {
                if *e != 0 {
                    acc = acc.mul(&self.even_images[i].pow(*e)?);
                }
                if acc.is_zero() {
                    break;
                }
            }
            for b in bits(m.od) {
                acc = acc.mul(&self.odd_images[b as usize]);
                if acc.is_zero() {
                    break;
                }
            }
            out = out.add(&acc);
        }
        Ok(out)
    }
}

/// A graded derivation given on generators, extended by the graded Leibniz
/// rule. Images live in the same context.
#[derive(Debug, Clone)]
pub struct Derivation {
    pub parity: Parity,
    pub even_images: Vec<SPoly>,
    pub odd_images: Vec<SPoly>,
}

impl Derivation {
    pub fn apply(&self, p: &SPoly) -> SPoly {
        let ctx = &p.ctx;
        let mut out = SPoly::zero(ctx);
        for (m, c) in &p.terms {
            // even positions: no sign, the even block precedes the odd block
            for (i, e) in m.ev.iter().enumerate() {
                if *e == 0 || self.even_images[i].is_zero() {
                    continue;
                }
                let mut ev = m.ev.clone();
                ev[i] -= 1;
                let evens_part = SPoly::monomial(
                    ctx,
                    Mono { od: 0, ev },
                    c * Rat::from_integer((*e as i64).into()),
                );
                let odds_part = SPoly::monomial(
                    ctx,
                    Mono {
                        od: m.od,
                        ev: vec![0; ctx.evens.len()],
                    },
                    Rat::from_integer(1.into()),
                );
                out = out.add(&evens_part.mul(&self.even_images[i]).mul(&odds_part));
            }
            // odd positions: the derivation passes the even block freely and
            // the lower odd factors with a Koszul sign
            let mut below = 0u32;
            for b in bits(m.od) {
                let img = &self.odd_images[b as usize];
                if !img.is_zero() {
                    let sign = if self.parity == Parity::Odd && below % 2 == 1 {
                        -1i64
                    } else {
                        1
                    };
                    let low = m.od & ((1u64 << b) - 1);
                    let high = m.od & !((1u64 << b) - 1) & !(1u64 << b);
                    let pre = SPoly::monomial(
                        ctx,
                        Mono {
                            od: low,
                            ev: m.ev.clone(),
                        },
                        c * Rat::from_integer(sign.into()),
                    );
                    let post = SPoly::monomial(
                        ctx,
                        Mono {
                            od: high,
                            ev: vec![0; ctx.evens.len()],
                        },
                        Rat::from_integer(1.into()),
                    );
                    out = out.add(&pre.mul(img).mul(&post));
                }
                below += 1;
            }
        }
        out
    }

    /// Commutator [d1, d2] = d1 d2 - (-1)^{p1 p2} d2 d1 as a derivation,
    /// computed on generators.
    pub fn bracket(d1: &Derivation, d2: &Derivation, ctx: &Arc<VarSet>) -> Derivation {
        let sign = if d1.parity == Parity::Odd && d2.parity == Parity::Odd {
            1i64 // minus (-1)^{1*1} = +1 for the anticommutator convention below
        } else {
            -1
        };
        let comb = |g: &SPoly| -> SPoly {
            d1.apply(&d2.apply(g))
                .add(&d2.apply(&d1.apply(g)).scale(&Rat::from_integer(sign.into())))
        };
        let parity = if d1.parity == d2.parity {
            Parity::Even
        } else {
            Parity::Odd
        };
        Derivation {
            parity,
            even_images: (0..ctx.evens.len())
                .map(|i| comb(&SPoly::even_var(ctx, i, 1)))
                .collect(),
            odd_images: (0..ctx.odds.len())
                .map(|j| comb(&SPoly::odd_var(ctx, j)))
                .collect(),
        }
    }
}
