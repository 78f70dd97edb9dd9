//! Super Lie algebras presented by a graded basis and exact structure
//! constants, with validation of the defining identities.

use crate::rat::Rat;
use crate::report::{Report, Violation};
use crate::spoly::Parity;
use num_traits::Zero;
use std::collections::BTreeMap;

/// Basis indices run 0..m for the even part, then m..m+q for the odd part.
#[derive(Debug, Clone)]
pub struct SuperLieAlgebra {
    pub even_names: Vec<String>,
    pub odd_names: Vec<String>,
    /// Finitely supported table (i, j) -> coefficient vector of [e_i, e_j]
    /// over the full basis. Missing pairs are zero; if only (j, i) is given,
    /// (i, j) is derived by super antisymmetry.
    pub brackets: BTreeMap<(usize, usize), Vec<Rat>>,
}

impl SuperLieAlgebra {
    pub fn new(
        even_names: Vec<String>,
        odd_names: Vec<String>,
        brackets: BTreeMap<(usize, usize), Vec<Rat>>,
    ) -> SuperLieAlgebra {
        let sla = SuperLieAlgebra {
            even_names,
            odd_names,
            brackets,
        };
        for ((i, j), v) in &sla.brackets {
            assert!(*i < sla.dim() && *j < sla.dim(), "bracket index out of range");
            assert_eq!(v.len(), sla.dim(), "bracket vector has wrong length");
        }
        sla
    }

    pub fn m(&self) -> usize {
        self.even_names.len()
    }

    pub fn q(&self) -> usize {
        self.odd_names.len()
    }

    pub fn dim(&self) -> usize {
        self.m() + self.q()
    }

    pub fn parity(&self, i: usize) -> Parity {
        if i < self.m() {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn name(&self, i: usize) -> &str {
        if i < self.m() {
            &self.even_names[i]
        } else {
            &self.odd_names[i - self.m()]
        }
    }

    fn sign(&self, i: usize, j: usize) -> Rat {
        if self.parity(i) == Parity::Odd && self.parity(j) == Parity::Odd {
            Rat::from_integer((-1).into())
        } else {
            Rat::from_integer(1.into())
        }
    }

    /// [e_i, e_j] as a coefficient vector over the full basis.
    pub fn bracket_basis(&self, i: usize, j: usize) -> Vec<Rat> {
        if let Some(v) = self.brackets.get(&(i, j)) {
            return v.clone();
        }
        if let Some(v) = self.brackets.get(&(j, i)) {
            // [e_i, e_j] = -(-1)^{|i||j|} [e_j, e_i]
            let s = -self.sign(i, j);
            return v.iter().map(|c| c * &s).collect();
        }
        vec![Rat::zero(); self.dim()]
    }

    /// Bilinear extension to coefficient vectors.
    pub fn bracket_vec(&self, x: &[Rat], y: &[Rat]) -> Vec<Rat> {
        let mut out = vec![Rat::zero(); self.dim()];
        for (i, a) in x.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in y.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let br = self.bracket_basis(i, j);
                for (k, c) in br.iter().enumerate() {
                    if !c.is_zero() {
                        out[k] = &out[k] + &(a * b * c);
                    }
                }
            }
        }
        out
    }

    /// Matrix of ad(Z) on the full basis for an even basis vector Z; column j
    /// holds the coefficients of [Z, e_j].
    pub fn ad_matrix(&self, z: usize) -> Vec<Vec<Rat>> {
        assert!(self.parity(z) == Parity::Even);
        let n = self.dim();
        let mut mat = vec![vec![Rat::zero(); n]; n];
        for j in 0..n {
            let col = self.bracket_basis(z, j);
            for (k, c) in col.into_iter().enumerate() {
                mat[k][j] = c;
            }
        }
        mat
    }

    fn basis_vec(&self, i: usize) -> Vec<Rat> {
        let mut v = vec![Rat::zero(); self.dim()];
        v[i] = Rat::from_integer(1.into());
        v
    }

    /// Checks parity grading, super antisymmetry and the super Jacobi
    /// identity for every basis pair/triple. Violations are data.
    pub fn validate(&self) -> Report {
        let n = self.dim();
        let mut report = Report::new();
        for ((i, j), v) in &self.brackets {
            let target = if self.parity(*i) == self.parity(*j) {
                Parity::Even
            } else {
                Parity::Odd
            };
            for (k, c) in v.iter().enumerate() {
                if !c.is_zero() && self.parity(k) != target {
                    report.push(Violation::new(
                        "parity-grading",
                        format!("[{}, {}]", self.name(*i), self.name(*j)),
                        format!("coefficient on {} has wrong parity", self.name(k)),
                    ));
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                let lhs = self.bracket_basis(i, j);
                let rhs = self.bracket_basis(j, i);
                let s = -self.sign(i, j);
                let expect: Vec<Rat> = rhs.iter().map(|c| c * &s).collect();
                if lhs != expect {
                    report.push(Violation::new(
                        "super-antisymmetry",
                        format!("[{}, {}]", self.name(i), self.name(j)),
                        "does not match the sign rule against the transposed pair",
                    ));
                }
            }
        }
        // graded Jacobi: [a,[b,c]] = [[a,b],c] + (-1)^{|a||b|} [b,[a,c]]
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let lhs = self.bracket_vec(&self.basis_vec(a), &self.bracket_basis(b, c));
                    let t1 = self.bracket_vec(&self.bracket_basis(a, b), &self.basis_vec(c));
                    let t2 = self.bracket_vec(&self.basis_vec(b), &self.bracket_basis(a, c));
                    let s = self.sign(a, b);
                    let rhs: Vec<Rat> = t1
                        .iter()
                        .zip(&t2)
                        .map(|(x, y)| x + &(y * &s))
                        .collect();
                    if lhs != rhs {
                        report.push(Violation::new(
                            "jacobi",
                            format!(
                                "({}, {}, {})",
                                self.name(a),
                                self.name(b),
                                self.name(c)
                            ),
                            "graded Jacobi identity fails",
                        ));
                    }
                }
            }
        }
        report
    }
}

/// Expands a wedge of odd vectors (coordinates over the odd basis) into the
/// standard wedge basis: subset mask -> coefficient.
pub fn wedge_expand(q: usize, vectors: &[Vec<Rat>]) -> BTreeMap<u64, Rat> {
    let mut acc: BTreeMap<u64, Rat> = BTreeMap::new();
    acc.insert(0u64, Rat::from_integer(1.into()));
    for v in vectors {
        assert_eq!(v.len(), q);
        let mut next: BTreeMap<u64, Rat> = BTreeMap::new();
        for (mask, coeff) in &acc {
            for (j, c) in v.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let bit = 1u64 << j;
                if mask & bit != 0 {
                    continue;
                }
                let above = (mask >> (j + 1)).count_ones();
                let sign = if above % 2 == 0 { 1i64 } else { -1 };
                let val = coeff * c * Rat::from_integer(sign.into());
                let e = next.entry(mask | bit).or_insert_with(Rat::zero);
                *e += val;
            }
        }
        next.retain(|_, c| !c.is_zero());
        acc = next;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rint;
    use crate::standard;

    #[test]
    fn gl11_is_valid() {
        let sla = standard::gl11_algebra();
        assert!(sla.validate().is_empty());
    }

    #[test]
    fn abelian_is_valid() {
        let sla = SuperLieAlgebra::new(
            vec!["A".into(), "B".into()],
            vec!["S".into()],
            BTreeMap::new(),
        );
        assert!(sla.validate().is_empty());
    }

    #[test]
    fn perturbed_bracket_fails_jacobi() {
        let sla = standard::gl11_perturbed_bracket();
        let report = sla.validate();
        assert!(report.contains_kind("jacobi"));
        // brute force found the failing triples; (T1, T1, T2) is among them
        assert!(report
            .violations
            .iter()
            .any(|v| v.kind == "jacobi" && v.site == "(T1, T1, T2)"));
    }

    #[test]
    fn wedge_expansion_signs() {
        // (e2) ^ (e1) = -e1^e2
        let v2 = vec![rint(0), rint(1)];
        let v1 = vec![rint(1), rint(0)];
        let exp = wedge_expand(2, &[v2, v1]);
        assert_eq!(exp.len(), 1);
        assert_eq!(exp[&0b11], rint(-1));
    }

    #[test]
    fn wedge_expansion_repeated_vector_vanishes() {
        let v = vec![rint(1), rint(2)];
        let exp = wedge_expand(2, &[v.clone(), v]);
        assert!(exp.is_empty());
    }
}
