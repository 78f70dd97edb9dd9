//! Human-readable aligned tables and machine-readable JSON dumps. The
//! machine dumps re-parse to the exact in-memory values.

use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::sync::Arc;
use superlie::rat::{parse_rat, render_rat};
use superlie::section::{Section, TwoVarSection};
use superlie::shcp::Shcp;
use superlie::spoly::{bits, Mono, SPoly, VarSet};
use superlie::uea::Pbw;

/// Renders a polynomial with custom variable names (same term order as the
/// default display).
pub fn poly_with_names(p: &SPoly, even_names: &[String], odd_names: &[String]) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut keys: Vec<&Mono> = p.terms.keys().collect();
    keys.sort_by_key(|m| (m.od.count_ones(), m.od, m.ev.clone()));
    let mut out = String::new();
    for (idx, m) in keys.iter().enumerate() {
        let c = &p.terms[*m];
        let mut factors: Vec<String> = Vec::new();
        for (i, e) in m.ev.iter().enumerate() {
            if *e == 1 {
                factors.push(even_names[i].clone());
            } else if *e != 0 {
                factors.push(format!("{}^{}", even_names[i], e));
            }
        }
        for b in bits(m.od) {
            factors.push(odd_names[b as usize].clone());
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
        if idx == 0 {
            out.push_str(&term);
        } else if let Some(rest) = term.strip_prefix('-') {
            out.push_str(" - ");
            out.push_str(rest);
        } else {
            out.push_str(" + ");
            out.push_str(&term);
        }
    }
    out
}

/// Display names for the doubled group context: when every generator is
/// y-something the first slot prints as the matching x-name, otherwise the
/// slots are suffixed.
pub fn doubled_display_names(shcp: &Shcp) -> Vec<String> {
    let all_y = shcp.hopf.gens.iter().all(|g| g.name.starts_with('y'));
    let mut names = Vec::new();
    for slot in 0..2 {
        for g in &shcp.hopf.gens {
            if all_y {
                if slot == 0 {
                    names.push(format!("x{}", &g.name[1..]));
                } else {
                    names.push(g.name.clone());
                }
            } else {
                names.push(format!("{}@{}", g.name, slot + 1));
            }
        }
    }
    names
}

pub fn wedge_name(shcp: &Shcp, mask: u64) -> String {
    superlie::uea::render_wedge(&shcp.sla, mask)
}

fn wedge_order(q: usize) -> Vec<u64> {
    let mut masks: Vec<u64> = (0..(1u64 << q)).collect();
    masks.sort_by_key(|m| (m.count_ones(), *m));
    masks
}

/// Aligned grid with wedge-labelled rows and columns.
pub fn grid(shcp: &Shcp, title: &str, cell: impl Fn(u64, u64) -> String) -> String {
    let masks = wedge_order(shcp.sla.q());
    let mut rows: Vec<Vec<String>> = Vec::new();
    let mut header = vec![format!("{title}")];
    header.extend(masks.iter().map(|m| wedge_name(shcp, *m)));
    rows.push(header);
    for p in &masks {
        let mut row = vec![wedge_name(shcp, *p)];
        for q in &masks {
            row.push(cell(*p, *q));
        }
        rows.push(row);
    }
    let cols = rows[0].len();
    let widths: Vec<usize> = (0..cols)
        .map(|c| rows.iter().map(|r| r[c].len()).max().unwrap_or(0))
        .collect();
    let mut out = String::new();
    for row in &rows {
        let line: Vec<String> = row
            .iter()
            .enumerate()
            .map(|(c, v)| format!("{v:width$}", width = widths[c]))
            .collect();
        out.push_str(line.join(" | ").trim_end());
        out.push('\n');
    }
    out
}

pub fn two_var_table_human(shcp: &Shcp, name: &str, t: &TwoVarSection) -> String {
    let even_names = doubled_display_names(shcp);
    grid(shcp, &format!("mu*({name})"), |p, q| {
        let v = t.entry(shcp, (p, q));
        poly_with_names(&v, &even_names, &[])
    })
}

pub fn section_human(shcp: &Shcp, name: &str, s: &Section) -> String {
    let masks = wedge_order(shcp.sla.q());
    let mut out = format!("{name}:\n");
    for m in masks {
        let v = s.entry(shcp, m);
        out.push_str(&format!("  {:8} -> {}\n", wedge_name(shcp, m), v));
    }
    out
}

// --- machine-readable dumps ---

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct TermDump {
    pub coeff: String,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub evens: BTreeMap<String, i32>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub odds: Vec<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct PolyDump {
    pub terms: Vec<TermDump>,
}

pub fn dump_poly(p: &SPoly) -> PolyDump {
    let mut terms = Vec::new();
    for (m, c) in &p.terms {
        let mut evens = BTreeMap::new();
        for (i, e) in m.ev.iter().enumerate() {
            if *e != 0 {
                evens.insert(p.ctx.evens[i].name.clone(), *e);
            }
        }
        let odds: Vec<String> = bits(m.od)
            .map(|b| p.ctx.odds[b as usize].clone())
            .collect();
        terms.push(TermDump {
            coeff: render_rat(c),
            evens,
            odds,
        });
    }
    PolyDump { terms }
}

pub fn parse_poly(dump: &PolyDump, ctx: &Arc<VarSet>) -> Result<SPoly, String> {
    let mut out = SPoly::zero(ctx);
    for t in &dump.terms {
        let mut term = SPoly::constant(ctx, parse_rat(&t.coeff)?);
        for (name, e) in &t.evens {
            let i = ctx
                .find_even(name)
                .ok_or_else(|| format!("unknown even variable {name:?}"))?;
            term = term.mul(&SPoly::even_var(ctx, i, *e));
        }
        for name in &t.odds {
            let j = ctx
                .find_odd(name)
                .ok_or_else(|| format!("unknown odd variable {name:?}"))?;
            term = term.mul(&SPoly::odd_var(ctx, j));
        }
        out = out.add(&term);
    }
    Ok(out)
}

fn wedge_indices(mask: u64) -> Vec<u32> {
    bits(mask).collect()
}

fn mask_from_indices(ix: &[u32]) -> u64 {
    ix.iter().fold(0u64, |m, b| m | (1 << b))
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct SectionDump {
    pub entries: Vec<(Vec<u32>, PolyDump)>,
}

pub fn dump_section(s: &Section) -> SectionDump {
    SectionDump {
        entries: s
            .table
            .iter()
            .map(|(m, v)| (wedge_indices(*m), dump_poly(v)))
            .collect(),
    }
}

pub fn parse_section(dump: &SectionDump, ctx: &Arc<VarSet>) -> Result<Section, String> {
    let mut s = Section::zero();
    for (ix, poly) in &dump.entries {
        s.add_entry(mask_from_indices(ix), parse_poly(poly, ctx)?);
    }
    Ok(s)
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct TwoVarDump {
    pub entries: Vec<(Vec<u32>, Vec<u32>, PolyDump)>,
}

pub fn dump_two_var(t: &TwoVarSection) -> TwoVarDump {
    TwoVarDump {
        entries: t
            .table
            .iter()
            .map(|((p, q), v)| (wedge_indices(*p), wedge_indices(*q), dump_poly(v)))
            .collect(),
    }
}

pub fn parse_two_var(dump: &TwoVarDump, ctx: &Arc<VarSet>) -> Result<TwoVarSection, String> {
    let mut t = TwoVarSection::zero();
    for (pi, qi, poly) in &dump.entries {
        t.add_entry(
            (mask_from_indices(pi), mask_from_indices(qi)),
            parse_poly(poly, ctx)?,
        );
    }
    Ok(t)
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct GammaCellDump {
    pub even: BTreeMap<String, u32>,
    pub wedge: Vec<u32>,
    pub coeff: PolyDump,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct GammaTableDump {
    pub cells: Vec<(Vec<u32>, Vec<u32>, Vec<GammaCellDump>)>,
}

pub fn dump_gamma_table(
    shcp: &Shcp,
    table: &BTreeMap<(u64, u64), Vec<(Pbw, u64, SPoly)>>,
) -> GammaTableDump {
    GammaTableDump {
        cells: table
            .iter()
            .map(|((p, q), entries)| {
                let dumped = entries
                    .iter()
                    .map(|(z, w, c)| GammaCellDump {
                        even: z
                            .ev
                            .iter()
                            .enumerate()
                            .filter(|(_, e)| **e != 0)
                            .map(|(i, e)| (shcp.sla.even_names[i].clone(), *e))
                            .collect(),
                        wedge: wedge_indices(*w),
                        coeff: dump_poly(c),
                    })
                    .collect();
                (wedge_indices(*p), wedge_indices(*q), dumped)
            })
            .collect(),
    }
}

pub fn gamma_cell_human(shcp: &Shcp, entries: &[(Pbw, u64, SPoly)]) -> String {
    if entries.is_empty() {
        return "0".to_string();
    }
    let mut sorted = entries.to_vec();
    sorted.sort_by(|a, b| (a.1, &a.0).cmp(&(b.1, &b.0)));
    sorted
        .iter()
        .map(|(z, w, c)| {
            let mut parts = Vec::new();
            let cs = c.to_string();
            if cs != "1" {
                parts.push(format!("({cs})"));
            }
            if !z.is_unit() {
                parts.push(z.render(&shcp.sla));
            }
            if *w != 0 {
                parts.push(superlie::uea::render_wedge(&shcp.sla, *w));
            }
            if parts.is_empty() {
                "1".to_string()
            } else {
                parts.join("*")
            }
        })
        .collect::<Vec<_>>()
        .join(" + ")
}
