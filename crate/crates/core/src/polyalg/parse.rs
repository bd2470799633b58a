//! Polynomial text grammar and the canonical renderer.
//!
//! ```text
//! expr   := ['-'] term (('+'|'-') term)*
//! term   := factor ('*' factor)*
//! factor := atom ('^' nat)*
//! atom   := rational | var | '(' expr ')'
//! ```
//! There is no implicit multiplication. The renderer emits terms in
//! descending grevlex order and its output parses back to the same polynomial.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::order::MonomialOrder;
use super::poly::Poly;
use crate::error::{Error, Result};
use crate::rational::{fmt_rational, Q};

/// Default variable names for a ring with `n` variables.
pub fn default_names(n: usize) -> Vec<String> {
    match n {
        0..=3 => ["x", "y", "z"][..n].iter().map(|s| s.to_string()).collect(),
        _ => (1..=n).map(|i| format!("x{i}")).collect(),
    }
}

/// Names that the command line reserves for internal variables.
pub const RESERVED: [&str; 6] = ["s", "t", "dt", "beta", "u", "h"];

pub fn valid_var_name(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    vars: &'a [String],
}

impl<'a> Parser<'a> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn nvars(&self) -> usize {
        self.vars.len()
    }

    fn expr(&mut self) -> Result<Poly> {
        let mut acc = Poly::zero(self.nvars());
        let mut sign = 1;
        if self.peek() == Some(b'-') {
            self.pos += 1;
            sign = -1;
        } else if self.peek() == Some(b'+') {
            self.pos += 1;
        }
        loop {
            let t = self.term()?;
            acc = if sign > 0 { &acc + &t } else { &acc - &t };
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    sign = 1;
                }
                Some(b'-') => {
                    self.pos += 1;
                    sign = -1;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Poly> {
        let mut acc = self.factor()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            let f = self.factor()?;
            acc = &acc * &f;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Poly> {
        let mut base = self.atom()?;
        while self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            if start == self.pos {
                return self.err("expected exponent");
            }
            let e: u32 = std::str::from_utf8(&self.src[start..self.pos])
                .unwrap()
                .parse()
                .map_err(|_| Error::Parse {
                    pos: start,
                    msg: "exponent too large".into(),
                })?;
            base = base.pow(e);
        }
        Ok(base)
    }

    fn digits(&mut self) -> Option<BigInt> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return None;
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .parse()
            .ok()
    }

    fn atom(&mut self) -> Result<Poly> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return self.err("expected ')'");
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.digits().unwrap();
                let mut d = BigInt::one();
                if self.src.get(self.pos) == Some(&b'/') {
                    self.pos += 1;
                    match self.digits() {
                        Some(v) if !v.is_zero() => d = v,
                        _ => return self.err("expected nonzero denominator"),
                    }
                }
                Ok(Poly::constant(self.nvars(), Q::new(n, d)))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                match self.vars.iter().position(|v| v == name) {
                    Some(i) => Ok(Poly::var(self.nvars(), i)),
                    None => Err(Error::UnknownVariable(name.to_string())),
                }
            }
            Some(_) => self.err("unexpected character"),
            None => self.err("unexpected end of input"),
        }
    }
}

/// Parse `src` as a polynomial in the named variables.
pub fn parse_poly(src: &str, vars: &[String]) -> Result<Poly> {
    let mut p = Parser {
        src: src.as_bytes(),
        pos: 0,
        vars,
    };
    let e = p.expr()?;
    if p.peek().is_some() {
        return p.err("trailing input");
    }
    Ok(e)
}

/// Render a monomial as `x^2*y`; the empty monomial renders as `""`.
pub fn render_monomial(exps: &[u32], names: &[String]) -> String {
    let mut parts = Vec::new();
    for (i, &e) in exps.iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(names[i].clone()),
            _ => parts.push(format!("{}^{}", names[i], e)),
        }
    }
    parts.join("*")
}

/// Render a list of `(monomial text, coefficient)` pairs already in display order.
pub fn render_terms(terms: &[(String, Q)]) -> String {
    if terms.is_empty() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, (m, c)) in terms.iter().enumerate() {
        let neg = c.is_negative();
        let a = c.abs();
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if m.is_empty() {
            out.push_str(&fmt_rational(&a));
        } else if a.is_one() {
            out.push_str(m);
        } else {
            out.push_str(&fmt_rational(&a));
            out.push('*');
            out.push_str(m);
        }
    }
    out
}

/// Canonical rendering in descending grevlex order.
pub fn render(p: &Poly, names: &[String]) -> String {
    let order = MonomialOrder::grevlex(p.nvars());
    let mut terms: Vec<_> = p.terms().collect();
    terms.sort_by(|a, b| order.cmp(&b.0 .0, &a.0 .0));
    let rendered: Vec<(String, Q)> = terms
        .into_iter()
        .map(|(m, c)| (render_monomial(&m.0, names), c.clone()))
        .collect();
    render_terms(&rendered)
}
