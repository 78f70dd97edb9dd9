//! Command implementations. Every command returns the rendered output and
//! an exit status: 0 on success, 1 on validation failure.

use crate::descr::{self, Loaded};
use crate::render;
use superlie::actions::{
    check_action_axioms, differential_at_identity, is_transitive_at, reconstruct_action,
    stabilizer_subalgebra, validate_action_data,
};
use superlie::grassmann::{
    associativity_probe, grass_ctx, random_point, unit_inverse_probe, GroupLaw, ModelCheck, Rng,
};
use superlie::homogeneous::{invariant_section_solve, is_invariant_section, CosetSide};
use superlie::rat::{parse_rat, Rat};
use superlie::section::{delta_sections, gamma_twist_table, mu_pullback, Section};
use superlie::shcp::Shcp;
use superlie::spoly::SPoly;

pub struct Outcome {
    pub text: String,
    pub status: i32,
}

fn ok(text: String) -> Outcome {
    Outcome { text, status: 0 }
}

fn fail(text: String) -> Outcome {
    Outcome { text, status: 1 }
}

pub fn load_file(path: &std::path::Path) -> Result<Loaded, String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    descr::load(&text)
}

pub fn cmd_validate(loaded: &Loaded) -> Outcome {
    let mut out = String::new();
    let mut all_ok = true;
    let sla_report = loaded.shcp.sla.validate();
    out.push_str(&format!(
        "algebra: {}\n",
        if sla_report.is_empty() { "ok" } else { "FAIL" }
    ));
    for v in &sla_report.violations {
        out.push_str(&format!("  {v}\n"));
    }
    all_ok &= sla_report.is_empty();
    let hopf_report = loaded.shcp.hopf.validate();
    out.push_str(&format!(
        "reduced group: {}\n",
        if hopf_report.is_empty() { "ok" } else { "FAIL" }
    ));
    for v in &hopf_report.violations {
        out.push_str(&format!("  {v}\n"));
    }
    all_ok &= hopf_report.is_empty();
    let pair_report = loaded.shcp.validate();
    out.push_str(&format!(
        "pair: {}\n",
        if pair_report.is_empty() { "ok" } else { "FAIL" }
    ));
    for v in &pair_report.violations {
        out.push_str(&format!("  {v}\n"));
    }
    all_ok &= pair_report.is_empty();
    if let Some(action) = &loaded.action {
        match validate_action_data(&loaded.shcp, action) {
            Ok(report) => {
                out.push_str(&format!(
                    "action: {}\n",
                    if report.is_empty() { "ok" } else { "FAIL" }
                ));
                for v in &report.violations {
                    out.push_str(&format!("  {v}\n"));
                }
                all_ok &= report.is_empty();
            }
            Err(e) => {
                out.push_str(&format!("action: error: {e}\n"));
                all_ok = false;
            }
        }
    }
    if let Some(sub) = &loaded.subpair {
        let report = superlie::homogeneous::validate_subpair(&loaded.shcp, sub);
        out.push_str(&format!(
            "subpair: {}\n",
            if report.is_empty() { "ok" } else { "FAIL" }
        ));
        for v in &report.violations {
            out.push_str(&format!("  {v}\n"));
        }
        all_ok &= report.is_empty();
    }
    if all_ok {
        ok(out)
    } else {
        fail(out)
    }
}

pub fn cmd_gamma_table(loaded: &Loaded, machine: bool) -> Result<Outcome, String> {
    let shcp = &loaded.shcp;
    let table = gamma_twist_table(shcp).map_err(|e| e.to_string())?;
    if machine {
        let dump = render::dump_gamma_table(shcp, &table);
        Ok(ok(serde_json::to_string_pretty(&dump).expect("serialize")))
    } else {
        let text = render::grid(shcp, "X\\Y", |p, q| {
            render::gamma_cell_human(shcp, &table[&(p, q)])
        });
        Ok(ok(text))
    }
}

fn find_section(shcp: &Shcp, name: &str) -> Result<Section, String> {
    let (evens, odds) = delta_sections(shcp);
    for (i, g) in shcp.hopf.gens.iter().enumerate() {
        if name == format!("phi_{}", g.name) {
            return Ok(evens[i].clone());
        }
    }
    for (v, o) in shcp.sla.odd_names.iter().enumerate() {
        if name == format!("Phi_{o}") {
            return Ok(odds[v].clone());
        }
    }
    Err(format!(
        "unknown section {name:?}; expected phi_<generator> or Phi_<odd basis name>"
    ))
}

pub fn cmd_mul_table(loaded: &Loaded, section: &str, machine: bool) -> Result<Outcome, String> {
    let shcp = &loaded.shcp;
    let s = find_section(shcp, section)?;
    let t = mu_pullback(shcp, &s).map_err(|e| e.to_string())?;
    if machine {
        Ok(ok(
            serde_json::to_string_pretty(&render::dump_two_var(&t)).expect("serialize")
        ))
    } else {
        Ok(ok(render::two_var_table_human(shcp, section, &t)))
    }
}

pub fn cmd_action(loaded: &Loaded, machine: bool) -> Result<Outcome, String> {
    let shcp = &loaded.shcp;
    let action = loaded
        .action
        .as_ref()
        .ok_or_else(|| "the description file has no [action] block".to_string())?;
    let report = validate_action_data(shcp, action).map_err(|e| e.to_string())?;
    if !report.is_empty() {
        return Ok(fail(format!("action data invalid:\n{report}")));
    }
    let table = reconstruct_action(shcp, action);
    let axioms = check_action_axioms(shcp, action, &table).map_err(|e| e.to_string())?;
    if !axioms.is_empty() {
        return Ok(fail(format!("action axioms failed:\n{axioms}")));
    }
    if machine {
        let dump: Vec<(String, render::PolyDump)> = (0..action.domain.gen_count())
            .map(|i| {
                (
                    action.domain.gen_name(i).to_string(),
                    render::dump_poly(&table.polys[i]),
                )
            })
            .collect();
        Ok(ok(serde_json::to_string_pretty(&dump).expect("serialize")))
    } else {
        let mut out = String::new();
        for i in 0..action.domain.gen_count() {
            out.push_str(&format!(
                "a*({}) = {}\n",
                action.domain.gen_name(i),
                table.polys[i]
            ));
        }
        Ok(ok(out))
    }
}

pub fn parse_point(spec: &str) -> Result<Vec<(String, Rat)>, String> {
    if spec.trim().is_empty() {
        return Ok(vec![]);
    }
    spec.split(',')
        .map(|kv| {
            let (k, v) = kv
                .split_once('=')
                .ok_or_else(|| format!("point entry {kv:?} must be name=value"))?;
            Ok((k.trim().to_string(), parse_rat(v.trim())?))
        })
        .collect()
}

fn domain_point_values(
    action: &superlie::actions::ActionData,
    named: &[(String, Rat)],
) -> Result<Vec<Rat>, String> {
    let mut values = vec![None; action.domain.me()];
    for (name, v) in named {
        let i = action
            .domain
            .vars
            .find_even(name)
            .ok_or_else(|| format!("unknown even domain generator {name:?}"))?;
        values[i] = Some(v.clone());
    }
    values
        .into_iter()
        .enumerate()
        .map(|(i, v)| v.ok_or_else(|| format!("missing value for {}", action.domain.even_gens[i].name)))
        .collect()
}

pub fn cmd_stabilizer(loaded: &Loaded, point: &str) -> Result<Outcome, String> {
    let shcp = &loaded.shcp;
    let action = loaded
        .action
        .as_ref()
        .ok_or_else(|| "the description file has no [action] block".to_string())?;
    let values = domain_point_values(action, &parse_point(point)?)?;
    let basis = stabilizer_subalgebra(shcp, action, &values).map_err(|e| e.to_string())?;
    let even_dim = basis
        .iter()
        .filter(|(p, _)| *p == superlie::spoly::Parity::Even)
        .count();
    let odd_dim = basis.len() - even_dim;
    let mut out = format!("stabilizer dimension ({even_dim}|{odd_dim})");
    if basis.is_empty() {
        out.push_str(" trivial\n");
    } else {
        out.push('\n');
        for (_, v) in &basis {
            let terms: Vec<String> = v
                .iter()
                .enumerate()
                .filter(|(_, c)| **c != Rat::from_integer(0.into()))
                .map(|(i, c)| {
                    let cs = superlie::rat::render_rat(c);
                    if cs == "1" {
                        shcp.sla.name(i).to_string()
                    } else {
                        format!("{cs}*{}", shcp.sla.name(i))
                    }
                })
                .collect();
            out.push_str(&format!("  {}\n", terms.join(" + ")));
        }
    }
    Ok(ok(out))
}

pub fn cmd_transitive(loaded: &Loaded, point: &str) -> Result<Outcome, String> {
    let shcp = &loaded.shcp;
    let action = loaded
        .action
        .as_ref()
        .ok_or_else(|| "the description file has no [action] block".to_string())?;
    let values = domain_point_values(action, &parse_point(point)?)?;
    let verdict = is_transitive_at(shcp, action, &values).map_err(|e| e.to_string())?;
    let m = differential_at_identity(shcp, action, &values).map_err(|e| e.to_string())?;
    let out = format!(
        "differential rank {} of {}\ndifferential surjective: {}\nreduced transitivity asserted: {}\ntransitive: {}\n",
        m.rank(),
        action.domain.gen_count(),
        verdict.differential_surjective,
        verdict.reduced_transitive_asserted,
        verdict.transitive
    );
    Ok(ok(out))
}

pub fn laurent_box(shcp: &Shcp, degree: i32) -> Vec<SPoly> {
    let n = shcp.hopf.n();
    let mut out = vec![SPoly::one(&shcp.hopf.vars1)];
    for i in 0..n {
        let lo = if shcp.hopf.gens[i].invertible {
            -degree
        } else {
            0
        };
        let mut next = Vec::new();
        for p in &out {
            for e in lo..=degree {
                next.push(p.mul(&SPoly::even_var(&shcp.hopf.vars1, i, e)));
            }
        }
        out = next;
    }
    out
}

pub fn cmd_invariants(loaded: &Loaded, degree: i32) -> Result<Outcome, String> {
    let shcp = &loaded.shcp;
    let sub = loaded
        .subpair
        .as_ref()
        .ok_or_else(|| "the description file has no [subpair] block".to_string())?;
    let report = superlie::homogeneous::validate_subpair(shcp, sub);
    if !report.is_empty() {
        return Ok(fail(format!("subpair invalid:\n{report}")));
    }
    let ansatz = laurent_box(shcp, degree);
    let basis = invariant_section_solve(shcp, sub, &ansatz, CosetSide::LeftCosets)
        .map_err(|e| e.to_string())?;
    let mut out = format!(
        "invariant subspace dimension {} within the degree-{degree} ansatz\n",
        basis.len()
    );
    for (i, s) in basis.iter().enumerate() {
        let (okv, _) =
            is_invariant_section(shcp, s, sub, CosetSide::LeftCosets).map_err(|e| e.to_string())?;
        debug_assert!(okv);
        out.push_str(&render::section_human(shcp, &format!("b{i}"), s));
    }
    Ok(ok(out))
}

pub fn cmd_oracle(loaded: &Loaded, seed: u64, count: usize) -> Result<Outcome, String> {
    let shcp = &loaded.shcp;
    let s = 2 * shcp.sla.q().max(1);
    let ctx = grass_ctx(s);
    let mut rng = Rng::new(seed);
    let law = GroupLaw::new(shcp).map_err(|e| e.to_string())?;
    let model_check = match &loaded.model {
        Some(model) => Some(ModelCheck::new(shcp, model).map_err(|e| e.to_string())?),
        None => None,
    };
    let mut model_pass = 0usize;
    let mut probe_pass = 0usize;
    for _ in 0..count {
        let a = random_point(shcp, &ctx, &mut rng);
        let b = random_point(shcp, &ctx, &mut rng);
        let c = random_point(shcp, &ctx, &mut rng);
        let mut okp = associativity_probe(shcp, &law, &a, &b, &c).map_err(|e| e.to_string())?;
        okp &= unit_inverse_probe(shcp, &law, &a).map_err(|e| e.to_string())?;
        if okp {
            probe_pass += 1;
        }
        if let (Some(model), Some(check)) = (&loaded.model, &model_check) {
            if check.check(shcp, model, &a, &b).map_err(|e| e.to_string())? {
                model_pass += 1;
            }
        }
    }
    let mut out = format!("group probes: {probe_pass}/{count} exact\n");
    let mut status = if probe_pass == count { 0 } else { 1 };
    if loaded.model.is_some() {
        out.push_str(&format!("model comparison: {model_pass}/{count} exact matches\n"));
        if model_pass != count {
            status = 1;
        }
    }
    Ok(Outcome { text: out, status })
}

/// Round-trip helper used by tests: serialize then re-parse a two-variable
/// dump and compare.
pub fn two_var_roundtrip(shcp: &Shcp, t: &superlie::section::TwoVarSection) -> bool {
    let dump = render::dump_two_var(t);
    let json = serde_json::to_string(&dump).expect("serialize");
    let back: render::TwoVarDump = serde_json::from_str(&json).expect("parse");
    match render::parse_two_var(&back, &shcp.hopf.vars2) {
        Ok(parsed) => &parsed == t,
        Err(_) => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::descr;

    const PURELY_ODD_Q1: &str = r#"
[algebra]
even = []
odd = ["T"]

[reduced-group]
generators = []

[sigma]
T = { T = "1" }
"#;

    #[test]
    fn gamma_table_degenerate_shapes() {
        // q = 0: a single cell holding 1
        let torus = descr::load(include_str!("../fixtures/torus.shcp")).unwrap();
        let table = superlie::section::gamma_twist_table(&torus.shcp).unwrap();
        assert_eq!(table.len(), 1);
        let cell = &table[&(0, 0)];
        assert_eq!(cell.len(), 1);
        assert!(cell[0].0.is_unit());
        assert_eq!(cell[0].1, 0);
        // q = 1 purely odd abelian: 2x2 with zero diagonal in the odd row
        let odd1 = descr::load(PURELY_ODD_Q1).unwrap();
        assert!(odd1.shcp.sla.validate().is_empty());
        assert!(odd1.shcp.validate().is_empty());
        let table = superlie::section::gamma_twist_table(&odd1.shcp).unwrap();
        assert_eq!(table.len(), 4);
        assert!(table[&(1, 1)].is_empty(), "T^2 = 0 kills the diagonal");
        assert_eq!(table[&(0, 1)].len(), 1);
        assert_eq!(table[&(1, 0)].len(), 1);
    }

    #[test]
    fn mul_table_purely_even_torus() {
        let torus = descr::load(include_str!("../fixtures/torus.shcp")).unwrap();
        let out = cmd_mul_table(&torus, "phi_y", false).unwrap();
        assert_eq!(out.status, 0);
        assert!(out.text.contains("x*y"), "{}", out.text);
        let err = cmd_mul_table(&torus, "phi_nope", false);
        assert!(err.is_err());
    }

    #[test]
    fn point_parsing() {
        let p = parse_point("Y1=1,Y2=-3/2").unwrap();
        assert_eq!(p.len(), 2);
        assert_eq!(p[1].1, superlie::rat::rat(-3, 2));
        assert!(parse_point("oops").is_err());
        assert!(parse_point("").unwrap().is_empty());
    }
}
