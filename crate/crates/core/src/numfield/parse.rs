//! Textual form of field elements: exact expression strings such as
//! `"(1/2) + (1/2)*sqrt(5)"`, with an exact round-trip parser.
//!
//! Grammar (integers only; rationals are written as quotients):
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := factor (('*'|'/') factor)*
//! factor := ['+'|'-'] atom ['^' uint]
//! atom   := uint | '(' expr ')' | 'sqrt' '(' expr ')'
//! ```
//!
//! `sqrt` arguments must evaluate to non-negative rationals; nested
//! radicals are rejected.

use alloc::boxed::Box;
use alloc::format;
use alloc::string::ToString;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{make_field, split_square, FieldDescriptor, FieldElement, NumFieldError};

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (mask, c) in self.coords().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mag = c.abs();
            if mask == 0 {
                write_rational(f, &mag)?;
            } else {
                let radicand = self.field().basis_radicand(mask);
                if mag.is_one() {
                    write!(f, "sqrt({radicand})")?;
                } else {
                    write_rational(f, &mag)?;
                    write!(f, "*sqrt({radicand})")?;
                }
            }
        }
        Ok(())
    }
}

fn write_rational(f: &mut fmt::Formatter<'_>, q: &BigRational) -> fmt::Result {
    if q.denom().is_one() {
        write!(f, "{}", q.numer())
    } else {
        write!(f, "({}/{})", q.numer(), q.denom())
    }
}

#[derive(Debug, Clone)]
pub(crate) enum Ast {
    Num(BigUint),
    Neg(Box<Ast>),
    Add(Box<Ast>, Box<Ast>),
    Sub(Box<Ast>, Box<Ast>),
    Mul(Box<Ast>, Box<Ast>),
    Div(Box<Ast>, Box<Ast>),
    Pow(Box<Ast>, u32),
    Sqrt(Box<Ast>),
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Int(BigUint),
    Sym(char),
    Sqrt,
}

fn err(msg: impl fmt::Display) -> NumFieldError {
    NumFieldError::Parse(msg.to_string())
}

fn tokenize(src: &str) -> Result<Vec<Token>, NumFieldError> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let b = bytes[i];
        match b {
            b' ' | b'\t' | b'\r' | b'\n' => i += 1,
            b'+' | b'-' | b'*' | b'/' | b'^' | b'(' | b')' => {
                out.push(Token::Sym(b as char));
                i += 1;
            }
            b'0'..=b'9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let digits = &src[start..i];
                out.push(Token::Int(
                    digits.parse().map_err(|_| err("bad integer literal"))?,
                ));
            }
            b'a'..=b'z' | b'A'..=b'Z' | b'_' => {
                let start = i;
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                let word = &src[start..i];
                if word == "sqrt" {
                    out.push(Token::Sqrt);
                } else {
                    return Err(err(format!("unknown symbol '{word}' in scalar expression")));
                }
            }
            _ => return Err(err(format!("unexpected character '{}'", b as char))),
        }
    }
    Ok(out)
}

struct Parser<'a> {
    tokens: &'a [Token],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn bump(&mut self) -> Option<&Token> {
        let t = self.tokens.get(self.pos);
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expect_sym(&mut self, c: char) -> Result<(), NumFieldError> {
        match self.bump() {
            Some(Token::Sym(s)) if *s == c => Ok(()),
            other => Err(err(format!("expected '{c}', found {other:?}"))),
        }
    }

    fn expr(&mut self) -> Result<Ast, NumFieldError> {
        let mut node = self.term()?;
        while let Some(Token::Sym(c @ ('+' | '-'))) = self.peek() {
            let op = *c;
            self.pos += 1;
            let rhs = self.term()?;
            node = if op == '+' {
                Ast::Add(Box::new(node), Box::new(rhs))
            } else {
                Ast::Sub(Box::new(node), Box::new(rhs))
            };
        }
        Ok(node)
    }

    fn term(&mut self) -> Result<Ast, NumFieldError> {
        let mut node = self.factor()?;
        while let Some(Token::Sym(c @ ('*' | '/'))) = self.peek() {
            let op = *c;
            self.pos += 1;
            let rhs = self.factor()?;
            node = if op == '*' {
                Ast::Mul(Box::new(node), Box::new(rhs))
            } else {
                Ast::Div(Box::new(node), Box::new(rhs))
            };
        }
        Ok(node)
    }

    fn factor(&mut self) -> Result<Ast, NumFieldError> {
        let mut negate = false;
        while let Some(Token::Sym(c @ ('+' | '-'))) = self.peek() {
            if *c == '-' {
                negate = !negate;
            }
            self.pos += 1;
        }
        let mut node = self.atom()?;
        if let Some(Token::Sym('^')) = self.peek() {
            self.pos += 1;
            match self.bump() {
                Some(Token::Int(n)) => {
                    let e = u32::try_from(n).map_err(|_| err("exponent too large"))?;
                    node = Ast::Pow(Box::new(node), e);
                }
                other => return Err(err(format!("expected integer exponent, found {other:?}"))),
            }
        }
        if negate {
            node = Ast::Neg(Box::new(node));
        }
        Ok(node)
    }

    fn atom(&mut self) -> Result<Ast, NumFieldError> {
        match self.bump().cloned() {
            Some(Token::Int(n)) => Ok(Ast::Num(n)),
            Some(Token::Sym('(')) => {
                let inner = self.expr()?;
                self.expect_sym(')')?;
                Ok(inner)
            }
            Some(Token::Sqrt) => {
                self.expect_sym('(')?;
                let inner = self.expr()?;
                self.expect_sym(')')?;
                Ok(Ast::Sqrt(Box::new(inner)))
            }
            other => Err(err(format!("expected value, found {other:?}"))),
        }
    }
}

pub(crate) fn parse_ast(src: &str) -> Result<Ast, NumFieldError> {
    let tokens = tokenize(src)?;
    let mut p = Parser {
        tokens: &tokens,
        pos: 0,
    };
    let ast = p.expr()?;
    if p.pos != tokens.len() {
        return Err(err("trailing input after expression"));
    }
    Ok(ast)
}

/// Evaluates a radical-free subtree to an exact rational.
fn eval_rational(ast: &Ast) -> Result<BigRational, NumFieldError> {
    match ast {
        Ast::Num(n) => Ok(BigRational::from_integer(BigInt::from(n.clone()))),
        Ast::Neg(a) => Ok(-eval_rational(a)?),
        Ast::Add(a, b) => Ok(eval_rational(a)? + eval_rational(b)?),
        Ast::Sub(a, b) => Ok(eval_rational(a)? - eval_rational(b)?),
        Ast::Mul(a, b) => Ok(eval_rational(a)? * eval_rational(b)?),
        Ast::Div(a, b) => {
            let d = eval_rational(b)?;
            if d.is_zero() {
                return Err(NumFieldError::DivisionByZero);
            }
            Ok(eval_rational(a)? / d)
        }
        Ast::Pow(a, e) => Ok(num_traits::pow(eval_rational(a)?, *e as usize)),
        Ast::Sqrt(_) => Err(err("nested radicals are not supported")),
    }
}

/// Collects the square-free radicands of every `sqrt` in the tree.
pub(crate) fn collect_radicands(ast: &Ast, out: &mut Vec<i64>) -> Result<(), NumFieldError> {
    match ast {
        Ast::Num(_) => Ok(()),
        Ast::Neg(a) | Ast::Pow(a, _) => collect_radicands(a, out),
        Ast::Add(a, b) | Ast::Sub(a, b) | Ast::Mul(a, b) | Ast::Div(a, b) => {
            collect_radicands(a, out)?;
            collect_radicands(b, out)
        }
        Ast::Sqrt(a) => {
            let q = eval_rational(a)?;
            if q.is_negative() {
                return Err(NumFieldError::NotRepresentable);
            }
            if !q.is_zero() {
                let n = q.numer().magnitude() * q.denom().magnitude();
                let (sf, _) = split_square(&n)?;
                let mut prod: u64 = 1;
                for p in sf {
                    prod = prod
                        .checked_mul(p)
                        .ok_or(NumFieldError::RadicandTooLarge(p))?;
                }
                if prod > 1 {
                    out.push(
                        i64::try_from(prod).map_err(|_| NumFieldError::RadicandTooLarge(prod))?,
                    );
                }
            }
            Ok(())
        }
    }
}

pub(crate) fn eval_ast(ast: &Ast, field: &FieldDescriptor) -> Result<FieldElement, NumFieldError> {
    match ast {
        Ast::Num(n) => Ok(field.from_rational(BigRational::from_integer(BigInt::from(n.clone())))),
        Ast::Neg(a) => Ok(eval_ast(a, field)?.neg()),
        Ast::Add(a, b) => Ok(eval_ast(a, field)?.add(&eval_ast(b, field)?)),
        Ast::Sub(a, b) => Ok(eval_ast(a, field)?.sub(&eval_ast(b, field)?)),
        Ast::Mul(a, b) => Ok(eval_ast(a, field)?.mul(&eval_ast(b, field)?)),
        Ast::Div(a, b) => eval_ast(a, field)?.div(&eval_ast(b, field)?),
        Ast::Pow(a, e) => {
            let base = eval_ast(a, field)?;
            let mut acc = field.one();
            for _ in 0..*e {
                acc = acc.mul(&base);
            }
            Ok(acc)
        }
        Ast::Sqrt(a) => {
            let inner = eval_ast(a, field)?;
            let q = inner
                .as_rational()
                .ok_or_else(|| err("nested radicals are not supported"))?;
            field.sqrt_rational(q)
        }
    }
}

impl FieldElement {
    /// Parses an exact expression, constructing the smallest tower that
    /// holds every radical in it.
    pub fn parse(src: &str) -> Result<FieldElement, NumFieldError> {
        let ast = parse_ast(src)?;
        let mut radicands = Vec::new();
        collect_radicands(&ast, &mut radicands)?;
        let field = make_field(&radicands)?;
        eval_ast(&ast, &field)
    }

    /// Parses an exact expression into a caller-fixed field.
    pub fn parse_in(src: &str, field: &FieldDescriptor) -> Result<FieldElement, NumFieldError> {
        let ast = parse_ast(src)?;
        eval_ast(&ast, field)
    }
}
