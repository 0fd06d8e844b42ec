//! Parser for the polynomial text form.
//!
//! Shares the expression grammar of the scalar parser, extended with
//! variables and named constants. Division is restricted to nonzero
//! constant divisors and `sqrt` arguments must be rational constants, so
//! every accepted input denotes an exact polynomial.

use alloc::boxed::Box;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigUint;

use super::{MultiPoly, PolyError, VarSet};
use crate::numfield::{FieldDescriptor, FieldElement};

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Int(BigUint),
    Ident(String),
    Sym(char),
}

#[derive(Debug, Clone)]
enum Node {
    Num(BigUint),
    Symbol(String),
    Neg(Box<Node>),
    Add(Box<Node>, Box<Node>),
    Sub(Box<Node>, Box<Node>),
    Mul(Box<Node>, Box<Node>),
    Div(Box<Node>, Box<Node>),
    Pow(Box<Node>, u32),
    Sqrt(Box<Node>),
}

fn err(msg: impl fmt::Display) -> PolyError {
    PolyError::Parse(msg.to_string())
}

fn tokenize(src: &str) -> Result<Vec<Token>, PolyError> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        match bytes[i] {
            b' ' | b'\t' | b'\r' | b'\n' => i += 1,
            b @ (b'+' | b'-' | b'*' | b'/' | b'^' | b'(' | b')') => {
                out.push(Token::Sym(b as char));
                i += 1;
            }
            b'0'..=b'9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                out.push(Token::Int(
                    src[start..i].parse().map_err(|_| err("bad integer"))?,
                ));
            }
            b'a'..=b'z' | b'A'..=b'Z' | b'_' => {
                let start = i;
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push(Token::Ident(src[start..i].to_string()));
            }
            b => return Err(err(format!("unexpected character '{}'", b as char))),
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

    fn expect_sym(&mut self, c: char) -> Result<(), PolyError> {
        match self.tokens.get(self.pos) {
            Some(Token::Sym(s)) if *s == c => {
                self.pos += 1;
                Ok(())
            }
            other => Err(err(format!("expected '{c}', found {other:?}"))),
        }
    }

    fn expr(&mut self) -> Result<Node, PolyError> {
        let mut node = self.term()?;
        while let Some(Token::Sym(c @ ('+' | '-'))) = self.peek() {
            let op = *c;
            self.pos += 1;
            let rhs = self.term()?;
            node = if op == '+' {
                Node::Add(Box::new(node), Box::new(rhs))
            } else {
                Node::Sub(Box::new(node), Box::new(rhs))
            };
        }
        Ok(node)
    }

    fn term(&mut self) -> Result<Node, PolyError> {
        let mut node = self.factor()?;
        while let Some(Token::Sym(c @ ('*' | '/'))) = self.peek() {
            let op = *c;
            self.pos += 1;
            let rhs = self.factor()?;
            node = if op == '*' {
                Node::Mul(Box::new(node), Box::new(rhs))
            } else {
                Node::Div(Box::new(node), Box::new(rhs))
            };
        }
        Ok(node)
    }

    fn factor(&mut self) -> Result<Node, PolyError> {
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
            match self.tokens.get(self.pos) {
                Some(Token::Int(n)) => {
                    self.pos += 1;
                    let e = u32::try_from(n).map_err(|_| err("exponent too large"))?;
                    node = Node::Pow(Box::new(node), e);
                }
                other => return Err(err(format!("expected integer exponent, found {other:?}"))),
            }
        }
        if negate {
            node = Node::Neg(Box::new(node));
        }
        Ok(node)
    }

    fn atom(&mut self) -> Result<Node, PolyError> {
        let tok = self.tokens.get(self.pos).cloned();
        self.pos += 1;
        match tok {
            Some(Token::Int(n)) => Ok(Node::Num(n)),
            Some(Token::Sym('(')) => {
                let inner = self.expr()?;
                self.expect_sym(')')?;
                Ok(inner)
            }
            Some(Token::Ident(name)) if name == "sqrt" => {
                self.expect_sym('(')?;
                let inner = self.expr()?;
                self.expect_sym(')')?;
                Ok(Node::Sqrt(Box::new(inner)))
            }
            Some(Token::Ident(name)) => Ok(Node::Symbol(name)),
            other => Err(err(format!("expected value, found {other:?}"))),
        }
    }
}

struct Eval<'a> {
    vars: &'a VarSet,
    field: &'a FieldDescriptor,
    consts: &'a [(&'a str, FieldElement)],
}

impl<'a> Eval<'a> {
    fn eval(&self, node: &Node) -> Result<MultiPoly, PolyError> {
        match node {
            Node::Num(n) => {
                let q =
                    num_rational::BigRational::from_integer(num_bigint::BigInt::from(n.clone()));
                Ok(MultiPoly::constant(self.vars, self.field.from_rational(q)))
            }
            Node::Symbol(name) => {
                if let Some(i) = self.vars.index_of(name) {
                    return Ok(MultiPoly::variable(self.vars, self.field, i));
                }
                if let Some((_, v)) = self.consts.iter().find(|(n, _)| n == name) {
                    return Ok(MultiPoly::constant(self.vars, v.promote(self.field)?));
                }
                Err(err(format!("unknown symbol '{name}'")))
            }
            Node::Neg(a) => Ok(self.eval(a)?.neg()),
            Node::Add(a, b) => Ok(self.eval(a)?.add(&self.eval(b)?)),
            Node::Sub(a, b) => Ok(self.eval(a)?.sub(&self.eval(b)?)),
            Node::Mul(a, b) => Ok(self.eval(a)?.mul(&self.eval(b)?)),
            Node::Div(a, b) => {
                let denom = self.eval(b)?;
                if denom.total_degree() > 0 {
                    return Err(PolyError::DivisionByNonConstant);
                }
                let c = denom.constant_term();
                let inv = c.inverse()?;
                Ok(self.eval(a)?.scale(&inv))
            }
            Node::Pow(a, e) => Ok(self.eval(a)?.pow(*e)),
            Node::Sqrt(a) => {
                let inner = self.eval(a)?;
                if inner.total_degree() > 0 {
                    return Err(err("sqrt of a non-constant polynomial"));
                }
                let c = inner.constant_term();
                let q = c
                    .as_rational()
                    .ok_or_else(|| err("nested radicals are not supported"))?;
                Ok(MultiPoly::constant(self.vars, self.field.sqrt_rational(q)?))
            }
        }
    }
}

/// Parses a polynomial over `vars` with coefficients in `field`.
/// `consts` binds extra names (e.g. `a = sqrt(5)`) usable in the text.
pub fn parse_poly(
    src: &str,
    vars: &VarSet,
    field: &FieldDescriptor,
    consts: &[(&str, FieldElement)],
) -> Result<MultiPoly, PolyError> {
    let tokens = tokenize(src)?;
    let mut p = Parser {
        tokens: &tokens,
        pos: 0,
    };
    let ast = p.expr()?;
    if p.pos != tokens.len() {
        return Err(err("trailing input after expression"));
    }
    Eval {
        vars,
        field,
        consts,
    }
    .eval(&ast)
}
