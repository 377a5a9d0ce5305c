//! The expression language of the command line: rationals, coordinates
//! `x1..xm`, odd variables `th1..th2n`, the radii `r` and `R` with even
//! integer exponents, products, sums and integer powers.
//!
//! Grammar:
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := atom ['^' integer]
//! atom   := rational | var | '(' expr ')' | '-' atom
//! ```
//! Anticommuting variables keep their source order; lowering applies the
//! Koszul signs, so `th2*th1` becomes `-th1*th2`.

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::grassmann::{superpower_r, SpaceDims, SuperFun};
use crate::scalar::{rat, RadialCoeff, Rational};

use super::CliError;

/// Parsed expression tree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExprAst {
    Number(Rational),
    X(usize),
    Theta(usize),
    /// `r^k` with even integer `k`.
    RadiusPow(i64),
    /// `R^k` with even integer `k`, lowered through the superradius.
    SuperRadiusPow(i64),
    Add(Box<ExprAst>, Box<ExprAst>),
    Sub(Box<ExprAst>, Box<ExprAst>),
    Mul(Box<ExprAst>, Box<ExprAst>),
    Pow(Box<ExprAst>, u32),
    Neg(Box<ExprAst>),
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn lex(src: &str) -> Result<Vec<(usize, Token)>, CliError> {
    let mut out = Vec::new();
    let bytes: Vec<char> = src.chars().collect();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        match c {
            ' ' | '\t' | '\n' | '\r' => i += 1,
            '+' => {
                out.push((i, Token::Plus));
                i += 1;
            }
            '-' => {
                out.push((i, Token::Minus));
                i += 1;
            }
            '*' => {
                out.push((i, Token::Star));
                i += 1;
            }
            '/' => {
                out.push((i, Token::Slash));
                i += 1;
            }
            '^' => {
                out.push((i, Token::Caret));
                i += 1;
            }
            '(' => {
                out.push((i, Token::LParen));
                i += 1;
            }
            ')' => {
                out.push((i, Token::RParen));
                i += 1;
            }
            '0'..='9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let digits: String = bytes[start..i].iter().collect();
                let value: BigInt = digits.parse().expect("digits");
                out.push((start, Token::Int(value)));
            }
            'a'..='z' | 'A'..='Z' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_alphanumeric() {
                    i += 1;
                }
                out.push((start, Token::Ident(bytes[start..i].iter().collect())));
            }
            other => {
                return Err(CliError::Syntax {
                    pos: i,
                    message: format!("unexpected character '{other}'"),
                })
            }
        }
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<(usize, Token)>,
    pos: usize,
    dims: SpaceDims,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(_, t)| t)
    }

    fn here(&self) -> usize {
        self.tokens
            .get(self.pos)
            .map(|(p, _)| *p)
            .unwrap_or(self.end)
    }

    fn bump(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).map(|(_, t)| t.clone());
        self.pos += 1;
        t
    }

    fn expect(&mut self, token: Token, what: &str) -> Result<(), CliError> {
        let pos = self.here();
        match self.bump() {
            Some(t) if t == token => Ok(()),
            _ => Err(CliError::Syntax {
                pos,
                message: format!("expected {what}"),
            }),
        }
    }

    fn expr(&mut self) -> Result<ExprAst, CliError> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Some(Token::Plus) => {
                    self.bump();
                    let rhs = self.term()?;
                    lhs = ExprAst::Add(Box::new(lhs), Box::new(rhs));
                }
                Some(Token::Minus) => {
                    self.bump();
                    let rhs = self.term()?;
                    lhs = ExprAst::Sub(Box::new(lhs), Box::new(rhs));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<ExprAst, CliError> {
        let mut lhs = self.factor()?;
        while matches!(self.peek(), Some(Token::Star)) {
            self.bump();
            let rhs = self.factor()?;
            lhs = ExprAst::Mul(Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn integer(&mut self) -> Result<i64, CliError> {
        let pos = self.here();
        let negative = if matches!(self.peek(), Some(Token::Minus)) {
            self.bump();
            true
        } else {
            false
        };
        match self.bump() {
            Some(Token::Int(v)) => {
                let v = v.to_i64().ok_or(CliError::Syntax {
                    pos,
                    message: "exponent out of range".into(),
                })?;
                Ok(if negative { -v } else { v })
            }
            _ => Err(CliError::Syntax {
                pos,
                message: "expected an integer exponent".into(),
            }),
        }
    }

    fn factor(&mut self) -> Result<ExprAst, CliError> {
        // unary minus binds weaker than '^', so -x1^2 is -(x1^2)
        if matches!(self.peek(), Some(Token::Minus)) {
            self.bump();
            return Ok(ExprAst::Neg(Box::new(self.factor()?)));
        }
        let pos = self.here();
        let atom = self.atom()?;
        if !matches!(self.peek(), Some(Token::Caret)) {
            // bare radii are odd powers
            if matches!(atom, ExprAst::RadiusPow(1) | ExprAst::SuperRadiusPow(1)) {
                return Err(CliError::OddRadialPower { pos });
            }
            return Ok(atom);
        }
        self.bump();
        let exp = self.integer()?;
        match atom {
            ExprAst::RadiusPow(1) => {
                if exp % 2 != 0 {
                    return Err(CliError::OddRadialPower { pos });
                }
                Ok(ExprAst::RadiusPow(exp))
            }
            ExprAst::SuperRadiusPow(1) => {
                if exp % 2 != 0 {
                    return Err(CliError::OddRadialPower { pos });
                }
                Ok(ExprAst::SuperRadiusPow(exp))
            }
            other => {
                let exp = u32::try_from(exp).map_err(|_| CliError::Syntax {
                    pos,
                    message: "negative powers are only defined for r and R".into(),
                })?;
                Ok(ExprAst::Pow(Box::new(other), exp))
            }
        }
    }

    fn atom(&mut self) -> Result<ExprAst, CliError> {
        let pos = self.here();
        match self.bump() {
            Some(Token::Int(numer)) => {
                // rational := integer ['/' positive-integer]
                if matches!(self.peek(), Some(Token::Slash)) {
                    self.bump();
                    let denom_pos = self.here();
                    match self.bump() {
                        Some(Token::Int(denom)) if denom != BigInt::from(0) => {
                            Ok(ExprAst::Number(Rational::new(numer, denom)))
                        }
                        _ => Err(CliError::Syntax {
                            pos: denom_pos,
                            message: "expected a nonzero integer denominator".into(),
                        }),
                    }
                } else {
                    Ok(ExprAst::Number(Rational::from_integer(numer)))
                }
            }
            Some(Token::LParen) => {
                let inner = self.expr()?;
                self.expect(Token::RParen, "')'")?;
                Ok(inner)
            }
            Some(Token::Ident(name)) => self.variable(pos, &name),
            _ => Err(CliError::Syntax {
                pos,
                message: "expected a number, variable or '('".into(),
            }),
        }
    }

    fn variable(&mut self, pos: usize, name: &str) -> Result<ExprAst, CliError> {
        if name == "r" {
            return Ok(ExprAst::RadiusPow(1));
        }
        if name == "R" {
            return Ok(ExprAst::SuperRadiusPow(1));
        }
        if let Some(rest) = name.strip_prefix("th") {
            let j: usize = rest.parse().map_err(|_| CliError::UnknownVariable {
                pos,
                name: name.to_string(),
            })?;
            if j == 0 || j > self.dims.odd() {
                return Err(CliError::UnknownVariable {
                    pos,
                    name: name.to_string(),
                });
            }
            return Ok(ExprAst::Theta(j));
        }
        if let Some(rest) = name.strip_prefix('x') {
            let i: usize = rest.parse().map_err(|_| CliError::UnknownVariable {
                pos,
                name: name.to_string(),
            })?;
            if i == 0 || i > self.dims.m {
                return Err(CliError::UnknownVariable {
                    pos,
                    name: name.to_string(),
                });
            }
            return Ok(ExprAst::X(i));
        }
        Err(CliError::UnknownVariable {
            pos,
            name: name.to_string(),
        })
    }
}

/// Parse a source string against the given dimensions.
pub fn parse(src: &str, dims: SpaceDims) -> Result<ExprAst, CliError> {
    let tokens = lex(src)?;
    let mut parser = Parser {
        tokens,
        pos: 0,
        dims,
        end: src.len(),
    };
    let ast = parser.expr()?;
    if parser.pos != parser.tokens.len() {
        return Err(CliError::Syntax {
            pos: parser.here(),
            message: "trailing input".into(),
        });
    }
    Ok(ast)
}

/// Lower an expression tree to a superfunction.
pub fn lower(ast: &ExprAst, dims: SpaceDims) -> Result<SuperFun, CliError> {
    match ast {
        ExprAst::Number(q) => Ok(SuperFun::constant(dims, q.clone())),
        ExprAst::X(i) => Ok(SuperFun::x(dims, *i)?),
        ExprAst::Theta(j) => Ok(SuperFun::theta(dims, *j)?),
        ExprAst::RadiusPow(k) => Ok(SuperFun::from_coeff(
            dims,
            RadialCoeff::r_power(dims.m, rat(*k)),
        )),
        ExprAst::SuperRadiusPow(k) => Ok(superpower_r(dims, rat(*k))?),
        ExprAst::Add(a, b) => Ok(lower(a, dims)?.add(&lower(b, dims)?)?),
        ExprAst::Sub(a, b) => Ok(lower(a, dims)?.sub(&lower(b, dims)?)?),
        ExprAst::Mul(a, b) => Ok(lower(a, dims)?.mul(&lower(b, dims)?)?),
        ExprAst::Pow(a, k) => Ok(lower(a, dims)?.pow(*k as usize)?),
        ExprAst::Neg(a) => Ok(lower(a, dims)?.neg()),
    }
}

/// Parse and lower in one step.
pub fn parse_superfun(src: &str, dims: SpaceDims) -> Result<SuperFun, CliError> {
    lower(&parse(src, dims)?, dims)
}
