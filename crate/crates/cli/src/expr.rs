//! Module expressions on the command line:
//! `expr := term ("+" term)*`,
//! `term := name | S(v) | P(v) | Omega(expr) | Omega^n(expr)`.

use findim_core::algebra::BoundAlgebra;
use findim_core::homology::syzygy_power;
use findim_core::rep::Representation;
use thiserror::Error;

use crate::spec::Loaded;

#[derive(Debug, Error, PartialEq, Eq)]
#[error("module expression `{text}`, column {col}: {msg}")]
pub struct ExprError {
    pub text: String,
    pub col: usize,
    pub msg: String,
}

struct Parser<'a> {
    text: &'a str,
    pos: usize,
    loaded: &'a Loaded,
}

impl<'a> Parser<'a> {
    fn err(&self, msg: impl Into<String>) -> ExprError {
        ExprError { text: self.text.to_string(), col: self.pos + 1, msg: msg.into() }
    }

    fn skip_ws(&mut self) {
        while self.text[self.pos..].starts_with(char::is_whitespace) {
            self.pos += self.text[self.pos..].chars().next().map_or(1, char::len_utf8);
        }
    }

    fn eat(&mut self, s: &str) -> bool {
        self.skip_ws();
        if self.text[self.pos..].starts_with(s) {
            self.pos += s.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, s: &str) -> Result<(), ExprError> {
        if self.eat(s) {
            Ok(())
        } else {
            Err(self.err(format!("expected `{s}`")))
        }
    }

    fn word(&mut self) -> Result<&'a str, ExprError> {
        self.skip_ws();
        let rest = &self.text[self.pos..];
        let len = rest
            .find(|c: char| !(c.is_alphanumeric() || c == '_' || c == '\''))
            .unwrap_or(rest.len());
        if len == 0 {
            return Err(self.err("expected a name"));
        }
        self.pos += len;
        Ok(&rest[..len])
    }

    fn alg(&self) -> &'a BoundAlgebra {
        &self.loaded.algebra
    }

    fn vertex(&mut self) -> Result<usize, ExprError> {
        self.expect("(")?;
        let start = self.pos;
        let v = self.word()?;
        let idx = self.alg().quiver().vertex_index(v).ok_or_else(|| {
            let mut e = self.err(format!("unknown vertex `{v}`"));
            e.col = start + 1;
            e
        })?;
        self.expect(")")?;
        Ok(idx)
    }

    fn expr(&mut self) -> Result<Representation, ExprError> {
        let mut m = self.term()?;
        while self.eat("+") {
            m = m.direct_sum(&self.term()?);
        }
        Ok(m)
    }

    fn term(&mut self) -> Result<Representation, ExprError> {
        self.skip_ws();
        let start = self.pos;
        let name = self.word()?;
        match name {
            "S" => Ok(Representation::simple(self.alg(), self.vertex()?)),
            "P" => Ok(Representation::projective(self.alg(), self.vertex()?)),
            "Omega" => {
                let n = if self.eat("^") {
                    let w = self.word()?;
                    w.parse::<usize>().map_err(|_| self.err(format!("expected a power, found `{w}`")))?
                } else {
                    1
                };
                self.expect("(")?;
                let inner = self.expr()?;
                self.expect(")")?;
                Ok(syzygy_power(self.alg(), &inner, n))
            }
            _ => self.loaded.modules.get(name).cloned().ok_or_else(|| {
                let mut e = self.err(format!("unknown module `{name}`"));
                e.col = start + 1;
                e
            }),
        }
    }
}

pub fn parse_module(loaded: &Loaded, text: &str) -> Result<Representation, ExprError> {
    let mut p = Parser { text, pos: 0, loaded };
    let m = p.expr()?;
    p.skip_ws();
    if p.pos != text.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(m)
}

/// Direct sum of several expressions.
pub fn parse_modules(loaded: &Loaded, texts: &[String]) -> Result<Representation, ExprError> {
    let mut m = Representation::zero(&loaded.algebra);
    for t in texts {
        m = m.direct_sum(&parse_module(loaded, t)?);
    }
    Ok(m)
}
