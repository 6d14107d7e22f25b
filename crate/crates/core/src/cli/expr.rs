//! Polynomial expressions and density specs for the `moments` subcommand.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*      // division by constants only
//! unary  := '-' unary | power
//! power  := atom ('^' integer)?
//! atom   := number | x | x1..xn | '(' expr ')'
//! ```

use crate::error::{Error, Result};
use crate::moments::DensitySpec;
use crate::poly::SparsePoly;

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Num(f64),
    Var(usize),
    Op(char),
}

fn tokenize(src: &str, nvars: usize) -> Result<Vec<Token>> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() || c == '.' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '.') {
                i += 1;
            }
            // Exponent part: 1e-3, 2.5E4
            if i < chars.len() && (chars[i] == 'e' || chars[i] == 'E') {
                let mut j = i + 1;
                if j < chars.len() && (chars[j] == '+' || chars[j] == '-') {
                    j += 1;
                }
                if j < chars.len() && chars[j].is_ascii_digit() {
                    i = j;
                    while i < chars.len() && chars[i].is_ascii_digit() {
                        i += 1;
                    }
                }
            }
            let text: String = chars[start..i].iter().collect();
            let v = text
                .parse::<f64>()
                .map_err(|_| Error::Parse(format!("bad number '{text}'")))?;
            out.push(Token::Num(v));
        } else if c == 'x' {
            i += 1;
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let var = if start == i {
                if nvars != 1 {
                    return Err(Error::Parse(format!(
                        "bare 'x' is only allowed with one variable; use x1..x{nvars}"
                    )));
                }
                0
            } else {
                let k: usize = chars[start..i]
                    .iter()
                    .collect::<String>()
                    .parse()
                    .expect("digits");
                if k == 0 || k > nvars {
                    return Err(Error::Parse(format!("variable x{k} outside x1..x{nvars}")));
                }
                k - 1
            };
            out.push(Token::Var(var));
        } else if "+-*/^()".contains(c) {
            out.push(Token::Op(c));
            i += 1;
        } else {
            return Err(Error::Parse(format!(
                "unexpected character '{c}' in '{src}'"
            )));
        }
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    nvars: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn eat(&mut self, op: char) -> bool {
        if self.peek() == Some(&Token::Op(op)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<SparsePoly<f64>> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = acc.add(&self.term()?)?;
            } else if self.eat('-') {
                acc = acc.sub(&self.term()?)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<SparsePoly<f64>> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = acc.mul(&self.unary()?)?;
            } else if self.eat('/') {
                let d = self.unary()?;
                if d.degree() > 0 {
                    return Err(Error::Parse("division by a non-constant polynomial".into()));
                }
                let c = d.coeff(&crate::poly::MultiIndex::zero(self.nvars));
                if c == 0.0 {
                    return Err(Error::Parse("division by zero".into()));
                }
                acc = acc.scale(1.0 / c);
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<SparsePoly<f64>> {
        if self.eat('-') {
            return Ok(self.unary()?.scale(-1.0));
        }
        if self.eat('+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<SparsePoly<f64>> {
        let base = self.atom()?;
        if self.eat('^') {
            match self.tokens.get(self.pos).cloned() {
                Some(Token::Num(e)) if e >= 0.0 && e.fract() == 0.0 && e <= 64.0 => {
                    self.pos += 1;
                    Ok(base.pow(e as u32))
                }
                _ => Err(Error::Parse(
                    "exponent must be a small nonnegative integer".into(),
                )),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<SparsePoly<f64>> {
        match self.tokens.get(self.pos).cloned() {
            Some(Token::Num(v)) => {
                self.pos += 1;
                Ok(SparsePoly::constant(self.nvars, v))
            }
            Some(Token::Var(i)) => {
                self.pos += 1;
                Ok(SparsePoly::var(self.nvars, i))
            }
            Some(Token::Op('(')) => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(')') {
                    return Err(Error::Parse("missing ')'".into()));
                }
                Ok(inner)
            }
            Some(t) => Err(Error::Parse(format!("unexpected token {t:?}"))),
            None => Err(Error::Parse("unexpected end of expression".into())),
        }
    }
}

/// Parses a polynomial in `x1..xn` (`x` when `nvars == 1`).
pub fn parse_poly(src: &str, nvars: usize) -> Result<SparsePoly<f64>> {
    let tokens = tokenize(src, nvars)?;
    if tokens.is_empty() {
        return Err(Error::Parse("empty expression".into()));
    }
    let mut p = Parser {
        tokens,
        pos: 0,
        nvars,
    };
    let out = p.expr()?;
    if p.pos != p.tokens.len() {
        return Err(Error::Parse(format!("trailing input in '{src}'")));
    }
    Ok(out)
}

/// `lo,hi` as a pair.
pub fn parse_interval(src: &str) -> Result<(f64, f64)> {
    let parts: Vec<&str> = src.split(',').map(str::trim).collect();
    if parts.len() != 2 {
        return Err(Error::Parse(format!("expected 'lo,hi', got '{src}'")));
    }
    let num = |s: &str| {
        s.parse::<f64>()
            .map_err(|_| Error::Parse(format!("bad number '{s}' in '{src}'")))
    };
    Ok((num(parts[0])?, num(parts[1])?))
}

/// `poly:<expr>` or `box-indicator:lo,hi;lo,hi*scale` (`·` also accepted).
pub fn parse_density(src: &str, nvars: usize) -> Result<DensitySpec<f64>> {
    if let Some(expr) = src.strip_prefix("poly:") {
        return Ok(DensitySpec::Polynomial(parse_poly(expr, nvars)?));
    }
    if let Some(rest) = src.strip_prefix("box-indicator:") {
        let (boxes, scale) = match rest.find(['*', '·']) {
            Some(pos) => {
                let (b, s) = rest.split_at(pos);
                let s = s.trim_start_matches(['*', '·']).trim();
                let v = s
                    .parse::<f64>()
                    .map_err(|_| Error::Parse(format!("bad scale '{s}'")))?;
                (b, v)
            }
            None => (rest, 1.0),
        };
        let bounds = boxes
            .split(';')
            .map(parse_interval)
            .collect::<Result<Vec<_>>>()?;
        if bounds.len() != nvars {
            return Err(Error::Parse(format!(
                "box-indicator has {} intervals but there are {nvars} variables",
                bounds.len()
            )));
        }
        return DensitySpec::box_indicator(bounds, scale);
    }
    Err(Error::Parse(format!(
        "unknown density '{src}'; expected poly:<expr> or box-indicator:<lo,hi;...>*<scale>"
    )))
}
