//! Description files: a TOML document with blocks for the algebra, the
//! reduced group, sigma, the tangent functionals, and optional action,
//! sub-pair and matrix-model blocks. All scalars are exact: rational
//! literals are strings "p/q", formulas are parsed by the expression
//! grammar.

use crate::expr::{self, CoproductEnv, Env, VarEnv};
use serde::Deserialize;
use std::collections::BTreeMap;
use std::sync::Arc;
use superlie::actions::{action_ctxs, ActionData, SuperDomain};
use superlie::algebra::SuperLieAlgebra;
use superlie::grassmann::MatrixModel;
use superlie::homogeneous::SubPairSpec;
use superlie::hopf::{CoordGen, CoordHopf, TangentFunctional};
use superlie::rat::{parse_rat, rint, Rat};
use superlie::section::{poly_to_section, theta_ctx, Section};
use superlie::shcp::Shcp;
use superlie::spoly::{Derivation, Parity, SPoly, VarSet};

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileSchema {
    pub algebra: AlgebraSchema,
    #[serde(rename = "reduced-group")]
    pub reduced_group: GroupSchema,
    #[serde(default)]
    pub sigma: BTreeMap<String, BTreeMap<String, String>>,
    #[serde(default)]
    pub tangents: BTreeMap<String, BTreeMap<String, String>>,
    pub action: Option<ActionSchema>,
    pub subpair: Option<SubpairSchema>,
    pub model: Option<ModelSchema>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraSchema {
    #[serde(default)]
    pub even: Vec<String>,
    #[serde(default)]
    pub odd: Vec<String>,
    /// Keys "a,b" for [e_a, e_b]; values map target names to rationals.
    #[serde(default)]
    pub brackets: BTreeMap<String, BTreeMap<String, String>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GenSchema {
    pub name: String,
    #[serde(default)]
    pub invertible: bool,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupSchema {
    #[serde(default)]
    pub generators: Vec<GenSchema>,
    /// Rules for non-invertible generators; invertible ones are group-like.
    #[serde(default)]
    pub coproduct: BTreeMap<String, String>,
    #[serde(default)]
    pub counit: BTreeMap<String, String>,
    #[serde(default)]
    pub antipode: BTreeMap<String, String>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ActionSchema {
    #[serde(default)]
    pub even: Vec<GenSchema>,
    #[serde(default)]
    pub odd: Vec<String>,
    #[serde(rename = "reduced-transitive", default)]
    pub reduced_transitive: bool,
    pub coaction: BTreeMap<String, String>,
    pub rho: BTreeMap<String, BTreeMap<String, String>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VecSchema {
    pub parity: String,
    pub coords: BTreeMap<String, String>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuotientSchema {
    pub generators: Vec<GenSchema>,
    pub images: BTreeMap<String, String>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SubpairSchema {
    pub basis: Vec<VecSchema>,
    pub complement: Option<Vec<VecSchema>>,
    pub quotient: QuotientSchema,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelSchema {
    pub even: Vec<String>,
    pub odd: Vec<String>,
    /// Sections for the model coordinates, as formulas over the coordinate
    /// sections phi_<generator> and Phi_<odd name>.
    pub dictionary: BTreeMap<String, String>,
    /// Product formulas over the doubled model coordinates name@1, name@2.
    pub product: BTreeMap<String, String>,
}

pub struct Loaded {
    pub shcp: Shcp,
    pub action: Option<ActionData>,
    pub subpair: Option<SubPairSpec>,
    pub model: Option<MatrixModel>,
}

pub fn parse_file(text: &str) -> Result<FileSchema, String> {
    toml::from_str(text).map_err(|e| format!("parse error: {e}"))
}

fn basis_index(sla: &SuperLieAlgebra, name: &str) -> Result<usize, String> {
    (0..sla.dim())
        .find(|&i| sla.name(i) == name)
        .ok_or_else(|| format!("unknown basis vector {name:?}"))
}

fn coeff_vec(
    sla: &SuperLieAlgebra,
    coords: &BTreeMap<String, String>,
) -> Result<Vec<Rat>, String> {
    let mut v = vec![Rat::from_integer(0.into()); sla.dim()];
    for (name, value) in coords {
        let i = basis_index(sla, name)?;
        v[i] = parse_rat(value)?;
    }
    Ok(v)
}

fn build_algebra(schema: &AlgebraSchema) -> Result<SuperLieAlgebra, String> {
    let mut names = std::collections::BTreeSet::new();
    for n in schema.even.iter().chain(schema.odd.iter()) {
        if !names.insert(n.clone()) {
            return Err(format!("duplicate basis name {n:?}"));
        }
    }
    let sla = SuperLieAlgebra::new(schema.even.clone(), schema.odd.clone(), BTreeMap::new());
    let mut brackets = BTreeMap::new();
    for (key, value) in &schema.brackets {
        let (a, b) = key
            .split_once(',')
            .ok_or_else(|| format!("bracket key {key:?} must be \"a,b\""))?;
        let i = basis_index(&sla, a.trim())?;
        let j = basis_index(&sla, b.trim())?;
        brackets.insert((i, j), coeff_vec(&sla, value)?);
    }
    Ok(SuperLieAlgebra::new(
        schema.even.clone(),
        schema.odd.clone(),
        brackets,
    ))
}

fn build_hopf(schema: &GroupSchema) -> Result<CoordHopf, String> {
    let gens: Vec<CoordGen> = schema
        .generators
        .iter()
        .map(|g| CoordGen {
            name: g.name.clone(),
            invertible: g.invertible,
        })
        .collect();
    // a scratch pair of contexts to evaluate the rules in
    let scratch = CoordHopf::torus(&[]);
    let _ = scratch;
    let single = VarSet::new(
        gens.iter()
            .map(|g| superlie::spoly::EvenVar {
                name: g.name.clone(),
                invertible: g.invertible,
            })
            .collect(),
        vec![],
    );
    let doubled = {
        let mut evens = Vec::new();
        for slot in 1..=2 {
            for g in &gens {
                evens.push(superlie::spoly::EvenVar {
                    name: format!("{}@{}", g.name, slot),
                    invertible: g.invertible,
                });
            }
        }
        VarSet::new(evens, vec![])
    };
    let n = gens.len();
    let mut coproduct = Vec::new();
    let mut counit = Vec::new();
    let mut antipode = Vec::new();
    for (i, g) in gens.iter().enumerate() {
        if g.invertible {
            for table in [&schema.coproduct, &schema.counit, &schema.antipode] {
                if table.contains_key(&g.name) {
                    return Err(format!(
                        "generator {:?} is invertible (group-like); do not supply rules",
                        g.name
                    ));
                }
            }
            coproduct.push(
                SPoly::even_var(&doubled, i, 1).mul(&SPoly::even_var(&doubled, n + i, 1)),
            );
            counit.push(rint(1));
            antipode.push(SPoly::even_var(&single, i, -1));
        } else {
            let cop_src = schema
                .coproduct
                .get(&g.name)
                .ok_or_else(|| format!("missing coproduct rule for {:?}", g.name))?;
            let env = CoproductEnv {
                single: single.clone(),
                doubled: doubled.clone(),
            };
            coproduct.push(expr::eval(&expr::parse(cop_src)?, &env)?);
            let eps_src = schema
                .counit
                .get(&g.name)
                .ok_or_else(|| format!("missing counit rule for {:?}", g.name))?;
            counit.push(parse_rat(eps_src)?);
            let ant_src = schema
                .antipode
                .get(&g.name)
                .ok_or_else(|| format!("missing antipode rule for {:?}", g.name))?;
            let env = VarEnv {
                vars: single.clone(),
            };
            antipode.push(expr::eval(&expr::parse(ant_src)?, &env)?);
        }
    }
    Ok(CoordHopf::new(gens, coproduct, counit, antipode))
}

fn build_shcp(schema: &FileSchema) -> Result<Shcp, String> {
    let sla = build_algebra(&schema.algebra)?;
    let hopf = build_hopf(&schema.reduced_group)?;
    let n = sla.dim();
    let env = VarEnv {
        vars: hopf.vars1.clone(),
    };
    let mut sigma = vec![vec![SPoly::zero(&hopf.vars1); n]; n];
    for (col_name, rows) in &schema.sigma {
        let j = basis_index(&sla, col_name)?;
        for (row_name, formula) in rows {
            let k = basis_index(&sla, row_name)?;
            sigma[k][j] = expr::eval(&expr::parse(formula)?, &env)?;
        }
    }
    let mut tangents = Vec::new();
    for z in 0..sla.m() {
        let name = &sla.even_names[z];
        let entries = schema
            .tangents
            .get(name)
            .ok_or_else(|| format!("missing tangent functional for {name:?}"))?;
        let mut values = vec![Rat::from_integer(0.into()); hopf.n()];
        for (gname, v) in entries {
            let gi = hopf
                .vars1
                .find_even(gname)
                .ok_or_else(|| format!("unknown generator {gname:?} in tangent for {name:?}"))?;
            values[gi] = parse_rat(v)?;
        }
        tangents.push(TangentFunctional { values });
    }
    Ok(Shcp {
        sla,
        hopf,
        sigma,
        tangents,
    })
}

fn build_action(shcp: &Shcp, schema: &ActionSchema) -> Result<ActionData, String> {
    let domain = SuperDomain::new(
        schema
            .even
            .iter()
            .map(|g| (g.name.clone(), g.invertible))
            .collect(),
        schema.odd.clone(),
    );
    let ctxs = action_ctxs(shcp, &domain);
    let gm_env = VarEnv {
        vars: ctxs.gm.clone(),
    };
    let mut coaction = Vec::new();
    for i in 0..domain.gen_count() {
        let name = domain.gen_name(i);
        let src = schema
            .coaction
            .get(name)
            .ok_or_else(|| format!("missing coaction image for {name:?}"))?;
        coaction.push(expr::eval(&expr::parse(src)?, &gm_env)?);
    }
    let dom_env = VarEnv {
        vars: domain.vars.clone(),
    };
    let mut rho = Vec::new();
    for b in 0..shcp.sla.dim() {
        let name = shcp.sla.name(b);
        let entry = schema.rho.get(name);
        let mut even_images = vec![SPoly::zero(&domain.vars); domain.me()];
        let mut odd_images = vec![SPoly::zero(&domain.vars); domain.mo()];
        if let Some(images) = entry {
            for (gname, formula) in images {
                let val = expr::eval(&expr::parse(formula)?, &dom_env)?;
                if let Some(i) = domain.vars.find_even(gname) {
                    even_images[i] = val;
                } else if let Some(j) = domain.vars.find_odd(gname) {
                    odd_images[j] = val;
                } else {
                    return Err(format!("unknown domain generator {gname:?} in rho"));
                }
            }
        }
        rho.push(Derivation {
            parity: shcp.sla.parity(b),
            even_images,
            odd_images,
        });
    }
    Ok(ActionData {
        domain,
        coaction,
        rho,
        reduced_transitive: schema.reduced_transitive,
    })
}

fn parse_parity(s: &str) -> Result<Parity, String> {
    match s {
        "even" => Ok(Parity::Even),
        "odd" => Ok(Parity::Odd),
        other => Err(format!("parity must be \"even\" or \"odd\", found {other:?}")),
    }
}

fn build_subpair(shcp: &Shcp, schema: &SubpairSchema) -> Result<SubPairSpec, String> {
    let quotient_hopf = build_hopf(&GroupSchema {
        generators: schema
            .quotient
            .generators
            .iter()
            .map(|g| GenSchema {
                name: g.name.clone(),
                invertible: g.invertible,
            })
            .collect(),
        coproduct: BTreeMap::new(),
        counit: BTreeMap::new(),
        antipode: BTreeMap::new(),
    })?;
    let env = VarEnv {
        vars: quotient_hopf.vars1.clone(),
    };
    let mut quotient_images = Vec::new();
    for g in &shcp.hopf.gens {
        let src = schema
            .quotient
            .images
            .get(&g.name)
            .ok_or_else(|| format!("missing quotient image for {:?}", g.name))?;
        quotient_images.push(expr::eval(&expr::parse(src)?, &env)?);
    }
    let mut h_basis = Vec::new();
    for v in &schema.basis {
        h_basis.push((parse_parity(&v.parity)?, coeff_vec(&shcp.sla, &v.coords)?));
    }
    let complement = match &schema.complement {
        Some(vs) => {
            let mut out = Vec::new();
            for v in vs {
                out.push((parse_parity(&v.parity)?, coeff_vec(&shcp.sla, &v.coords)?));
            }
            Some(out)
        }
        None => None,
    };
    Ok(SubPairSpec {
        h_basis,
        quotient_hopf,
        quotient_images,
        complement,
    })
}

/// Environment for section formulas: phi_<generator> is the coordinate
/// section at the empty wedge, Phi_<odd name> the odd coordinate section.
pub struct SectionEnv {
    pub shcp_theta: Arc<VarSet>,
    pub gen_names: Vec<String>,
    pub odd_names: Vec<String>,
}

impl Env for SectionEnv {
    fn resolve(&self, name: &str) -> Result<SPoly, String> {
        if let Some(rest) = name.strip_prefix("phi_") {
            if let Some(i) = self.gen_names.iter().position(|g| g == rest) {
                return Ok(SPoly::even_var(&self.shcp_theta, i, 1));
            }
        }
        if let Some(rest) = name.strip_prefix("Phi_") {
            if let Some(j) = self.odd_names.iter().position(|o| o == rest) {
                return Ok(SPoly::odd_var(&self.shcp_theta, j));
            }
        }
        Err(format!(
            "unknown section {name:?} (expected phi_<generator> or Phi_<odd basis name>)"
        ))
    }

    fn ctx(&self) -> &Arc<VarSet> {
        &self.shcp_theta
    }
}

pub fn parse_section_formula(shcp: &Shcp, src: &str) -> Result<Section, String> {
    let env = SectionEnv {
        shcp_theta: theta_ctx(shcp),
        gen_names: shcp.hopf.gens.iter().map(|g| g.name.clone()).collect(),
        odd_names: shcp.sla.odd_names.clone(),
    };
    let poly = expr::eval(&expr::parse(src)?, &env)?;
    Ok(poly_to_section(shcp, &poly))
}

fn build_model(shcp: &Shcp, schema: &ModelSchema) -> Result<MatrixModel, String> {
    let mut dict_even = Vec::new();
    for name in &schema.even {
        let src = schema
            .dictionary
            .get(name)
            .ok_or_else(|| format!("missing dictionary entry for {name:?}"))?;
        dict_even.push(parse_section_formula(shcp, src)?);
    }
    let mut dict_odd = Vec::new();
    for name in &schema.odd {
        let src = schema
            .dictionary
            .get(name)
            .ok_or_else(|| format!("missing dictionary entry for {name:?}"))?;
        dict_odd.push(parse_section_formula(shcp, src)?);
    }
    let vars2 = MatrixModel::doubled_ctx(&schema.even, &schema.odd);
    let env = VarEnv {
        vars: vars2.clone(),
    };
    let mut product_even = Vec::new();
    for name in &schema.even {
        let src = schema
            .product
            .get(name)
            .ok_or_else(|| format!("missing product formula for {name:?}"))?;
        product_even.push(expr::eval(&expr::parse(src)?, &env)?);
    }
    let mut product_odd = Vec::new();
    for name in &schema.odd {
        let src = schema
            .product
            .get(name)
            .ok_or_else(|| format!("missing product formula for {name:?}"))?;
        product_odd.push(expr::eval(&expr::parse(src)?, &env)?);
    }
    Ok(MatrixModel {
        even_coords: schema.even.clone(),
        odd_coords: schema.odd.clone(),
        dict_even,
        dict_odd,
        vars2,
        product_even,
        product_odd,
    })
}

pub fn load(text: &str) -> Result<Loaded, String> {
    let schema = parse_file(text)?;
    let shcp = build_shcp(&schema)?;
    let action = match &schema.action {
        Some(a) => Some(build_action(&shcp, a)?),
        None => None,
    };
    let subpair = match &schema.subpair {
        Some(s) => Some(build_subpair(&shcp, s)?),
        None => None,
    };
    let model = match &schema.model {
        Some(m) => Some(build_model(&shcp, m)?),
        None => None,
    };
    Ok(Loaded {
        shcp,
        action,
        subpair,
        model,
    })
}
