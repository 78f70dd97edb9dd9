//! A small recursive-descent parser for polynomial formulas in description
//! files: identifiers, exact integer literals, + - * / ^ and parentheses,
//! plus the slot markers first(...) / second(...) used in coproduct rules.
//! Division is exact and only defined when the divisor is invertible.

use std::sync::Arc;
use superlie::rat::{rint, Rat};
use superlie::spoly::{SPoly, VarSet};

#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Int(i64),
    Var(String),
    /// first(e) / second(e)
    Slot(usize, Box<Expr>),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i32),
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(i64),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn lex(src: &str) -> Result<Vec<Tok>, String> {
    let mut out = Vec::new();
    let chars: Vec<char> = src.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            ' ' | '\t' | '\n' | '\r' => i += 1,
            '+' => {
                out.push(Tok::Plus);
                i += 1;
            }
            '-' => {
                out.push(Tok::Minus);
                i += 1;
            }
            '*' => {
                out.push(Tok::Star);
                i += 1;
            }
            '/' => {
                out.push(Tok::Slash);
                i += 1;
            }
            '^' => {
                out.push(Tok::Caret);
                i += 1;
            }
            '(' => {
                out.push(Tok::LParen);
                i += 1;
            }
            ')' => {
                out.push(Tok::RParen);
                i += 1;
            }
            '0'..='9' => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let text: String = chars[start..i].iter().collect();
                out.push(Tok::Int(
                    text.parse().map_err(|_| format!("integer overflow: {text}"))?,
                ));
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let start = i;
                while i < chars.len()
                    && (chars[i].is_ascii_alphanumeric() || chars[i] == '_' || chars[i] == '@')
                {
                    i += 1;
                }
                out.push(Tok::Ident(chars[start..i].iter().collect()));
            }
            other => return Err(format!("unexpected character {other:?}")),
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, t: Tok) -> Result<(), String> {
        match self.next() {
            Some(got) if got == t => Ok(()),
            got => Err(format!("expected {t:?}, found {got:?}")),
        }
    }

    fn expr(&mut self) -> Result<Expr, String> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.next();
                    acc = Expr::Add(Box::new(acc), Box::new(self.term()?));
                }
                Some(Tok::Minus) => {
                    self.next();
                    acc = Expr::Sub(Box::new(acc), Box::new(self.term()?));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Expr, String> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.next();
                    acc = Expr::Mul(Box::new(acc), Box::new(self.factor()?));
                }
                Some(Tok::Slash) => {
                    self.next();
                    acc = Expr::Div(Box::new(acc), Box::new(self.factor()?));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Expr, String> {
        if let Some(Tok::Minus) = self.peek() {
            self.next();
            return Ok(Expr::Neg(Box::new(self.factor()?)));
        }
        let mut base = self.atom()?;
        if let Some(Tok::Caret) = self.peek() {
            self.next();
            let negative = if let Some(Tok::Minus) = self.peek() {
                self.next();
                true
            } else {
                false
            };
            match self.next() {
                Some(Tok::Int(n)) => {
                    let e = i32::try_from(n).map_err(|_| "exponent too large".to_string())?;
                    base = Expr::Pow(Box::new(base), if negative { -e } else { e });
                }
                got => return Err(format!("expected integer exponent, found {got:?}")),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr, String> {
        match self.next() {
            Some(Tok::Int(n)) => Ok(Expr::Int(n)),
            Some(Tok::Ident(name)) => {
                if let Some(Tok::LParen) = self.peek() {
                    let slot = match name.as_str() {
                        "first" => 0,
                        "second" => 1,
                        other => return Err(format!("unknown function {other:?}")),
                    };
                    self.next();
                    let inner = self.expr()?;
                    self.expect(Tok::RParen)?;
                    Ok(Expr::Slot(slot, Box::new(inner)))
                } else {
                    Ok(Expr::Var(name))
                }
            }
            Some(Tok::LParen) => {
                let inner = self.expr()?;
                self.expect(Tok::RParen)?;
                Ok(inner)
            }
            got => Err(format!("expected an atom, found {got:?}")),
        }
    }
}

pub fn parse(src: &str) -> Result<Expr, String> {
    let toks = lex(src)?;
    let mut p = Parser { toks, pos: 0 };
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(format!("trailing input after expression in {src:?}"));
    }
    Ok(e)
}

/// Resolves identifiers to polynomial values. The slot hook handles
/// first(...) / second(...) by evaluating the inner expression and placing
/// it in the requested slot.
pub trait Env {
    fn resolve(&self, name: &str) -> Result<SPoly, String>;
    fn slot(&self, _slot: usize, _inner: &Expr) -> Result<SPoly, String> {
        Err("slot markers are not allowed in this formula".to_string())
    }
    fn ctx(&self) -> &Arc<VarSet>;
}

pub fn eval(e: &Expr, env: &dyn Env) -> Result<SPoly, String> {
    match e {
        Expr::Int(n) => Ok(SPoly::constant(env.ctx(), rint(*n))),
        Expr::Var(name) => env.resolve(name),
        Expr::Slot(slot, inner) => env.slot(*slot, inner),
        Expr::Neg(a) => Ok(eval(a, env)?.neg()),
        Expr::Add(a, b) => Ok(eval(a, env)?.add(&eval(b, env)?)),
        Expr::Sub(a, b) => Ok(eval(a, env)?.sub(&eval(b, env)?)),
        Expr::Mul(a, b) => Ok(eval(a, env)?.mul(&eval(b, env)?)),
        Expr::Div(a, b) => {
            let denom = eval(b, env)?;
            let inv = denom
                .try_invert()
                .map_err(|err| format!("division by a non-invertible element: {err}"))?;
            Ok(eval(a, env)?.mul(&inv))
        }
        Expr::Pow(a, e) => eval(a, env)?
            .pow(*e)
            .map_err(|err| format!("power failed: {err}")),
    }
}

/// Environment over a plain variable context: names resolve to variables.
pub struct VarEnv {
    pub vars: Arc<VarSet>,
}

impl Env for VarEnv {
    fn resolve(&self, name: &str) -> Result<SPoly, String> {
        if let Some(i) = self.vars.find_even(name) {
            return Ok(SPoly::even_var(&self.vars, i, 1));
        }
        if let Some(j) = self.vars.find_odd(name) {
            return Ok(SPoly::odd_var(&self.vars, j));
        }
        Err(format!("unknown identifier {name:?}"))
    }

    fn ctx(&self) -> &Arc<VarSet> {
        &self.vars
    }
}

/// Environment for coproduct rules: bare identifiers are rejected, slot
/// markers evaluate the inner single-variable expression and rename it into
/// the requested half of a doubled context (slot s of generator i sits at
/// even index s*n + i).
pub struct CoproductEnv {
    pub single: Arc<VarSet>,
    pub doubled: Arc<VarSet>,
}

impl Env for CoproductEnv {
    fn resolve(&self, name: &str) -> Result<SPoly, String> {
        Err(format!(
            "identifier {name:?} must be wrapped in first(...) or second(...) in a coproduct rule"
        ))
    }

    fn slot(&self, slot: usize, inner: &Expr) -> Result<SPoly, String> {
        let env = VarEnv {
            vars: self.single.clone(),
        };
        let value = eval(inner, &env)?;
        let n = self.single.evens.len();
        let even_map: Vec<usize> = (0..n).map(|i| slot * n + i).collect();
        superlie::spoly::Subst::renaming(&self.single, &self.doubled, &even_map, &[])
            .apply(&value)
            .map_err(|e| e.to_string())
    }

    fn ctx(&self) -> &Arc<VarSet> {
        &self.doubled
    }
}

/// Parses an exact rational literal "p/q" or "p".
pub fn parse_rat_str(s: &str) -> Result<Rat, String> {
    superlie::rat::parse_rat(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use superlie::spoly::EvenVar;

    fn ctx() -> Arc<VarSet> {
        VarSet::new(
            vec![
                EvenVar {
                    name: "y1".into(),
                    invertible: true,
                },
                EvenVar {
                    name: "y2".into(),
                    invertible: true,
                },
            ],
            vec!["t1".into()],
        )
    }

    #[test]
    fn parses_laurent_formulas() {
        let env = VarEnv { vars: ctx() };
        let p = eval(&parse("y1*y2^-1 - 1/2").unwrap(), &env).unwrap();
        assert_eq!(p.to_string(), "-1/2 + y1*y2^-1");
        let p = eval(&parse("-(y1 - 2)^2").unwrap(), &env).unwrap();
        assert_eq!(p.to_string(), "-4 + 4*y1 - y1^2");
        let p = eval(&parse("3/4*t1").unwrap(), &env).unwrap();
        assert_eq!(p.to_string(), "3/4*t1");
    }

    #[test]
    fn rejects_bad_input() {
        assert!(parse("y1 +").is_err());
        assert!(parse("(y1").is_err());
        let env = VarEnv { vars: ctx() };
        assert!(eval(&parse("zz").unwrap(), &env).is_err());
        // division by a non-unit
        assert!(eval(&parse("1/(y1 + y2)").unwrap(), &env).is_err());
    }

    #[test]
    fn coproduct_slots() {
        // coordinate rings are purely even
        let single = VarSet::new(
            vec![
                EvenVar {
                    name: "y1".into(),
                    invertible: true,
                },
                EvenVar {
                    name: "y2".into(),
                    invertible: true,
                },
            ],
            vec![],
        );
        let doubled = VarSet::new(
            vec![
                EvenVar {
                    name: "y1@1".into(),
                    invertible: true,
                },
                EvenVar {
                    name: "y2@1".into(),
                    invertible: true,
                },
                EvenVar {
                    name: "y1@2".into(),
                    invertible: true,
                },
                EvenVar {
                    name: "y2@2".into(),
                    invertible: true,
                },
            ],
            vec![],
        );
        let env = CoproductEnv {
            single,
            doubled,
        };
        let p = eval(&parse("first(y1)*second(y1)").unwrap(), &env).unwrap();
        assert_eq!(p.to_string(), "y1@1*y1@2");
        let p = eval(&parse("first(y2) + second(y2)").unwrap(), &env).unwrap();
        assert_eq!(p.to_string(), "y2@2 + y2@1");
        assert!(eval(&parse("y1").unwrap(), &env).is_err());
    }
}
