//! Sparse multivariate polynomials over quadratic-extension field elements.
//!
//! Terms are kept in a map from exponent vectors to nonzero coefficients
//! under the graded reverse lexicographic order, which is the order the
//! reference computer-algebra output uses, so printing is deterministic and
//! golden-file comparable. All arithmetic is exact; floating evaluation
//! goes through a separately compiled [`FloatPoly`] whose coefficients are
//! converted once.

mod parse;

pub use parse::parse_poly;

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::numfield::{FieldDescriptor, FieldElement, NumFieldError};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PolyError {
    VariableMismatch,
    DimensionMismatch {
        expected: usize,
        got: usize,
    },
    /// Construction of a linear form from a higher-degree polynomial.
    DegreeTooHigh {
        degree: u32,
    },
    DivisionByNonConstant,
    Num(NumFieldError),
    Parse(String),
}

impl fmt::Display for PolyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PolyError::VariableMismatch => write!(f, "polynomials use different variable lists"),
            PolyError::DimensionMismatch { expected, got } => {
                write!(f, "expected {expected} values, got {got}")
            }
            PolyError::DegreeTooHigh { degree } => {
                write!(f, "polynomial of degree {degree} is not a linear form")
            }
            PolyError::DivisionByNonConstant => {
                write!(
                    f,
                    "polynomial division is only defined by nonzero constants"
                )
            }
            PolyError::Num(e) => write!(f, "{e}"),
            PolyError::Parse(msg) => write!(f, "parse error: {msg}"),
        }
    }
}

impl core::error::Error for PolyError {}

impl From<NumFieldError> for PolyError {
    fn from(e: NumFieldError) -> Self {
        PolyError::Num(e)
    }
}

/// Shared, ordered variable-name list.
#[derive(Debug, Clone)]
pub struct VarSet {
    names: Arc<Vec<String>>,
}

impl PartialEq for VarSet {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.names, &other.names) || self.names == other.names
    }
}
impl Eq for VarSet {}

impl VarSet {
    pub fn new(names: &[&str]) -> Self {
        VarSet {
            names: Arc::new(names.iter().map(|s| s.to_string()).collect()),
        }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }
}

/// Exponent vector under graded reverse lexicographic order.
///
/// `Ord` is arranged so the leading term of a polynomial is the maximal
/// key: higher total degree wins; at equal degree the monomial whose last
/// differing exponent is smaller is the larger one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        let (da, db) = (self.degree(), other.degree());
        if da != db {
            return da.cmp(&db);
        }
        for i in (0..self.0.len()).rev() {
            if self.0[i] != other.0[i] {
                return other.0[i].cmp(&self.0[i]);
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A sparse exact polynomial: no stored coefficient is zero, exponent
/// vectors all have the variable-list length. Immutable after
/// construction; operations are pure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiPoly {
    vars: VarSet,
    field: FieldDescriptor,
    terms: BTreeMap<Monomial, FieldElement>,
}

impl MultiPoly {
    pub fn zero(vars: &VarSet, field: &FieldDescriptor) -> Self {
        MultiPoly {
            vars: vars.clone(),
            field: field.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: &VarSet, value: FieldElement) -> Self {
        let field = value.field().clone();
        let mut p = MultiPoly::zero(vars, &field);
        p.add_term(Monomial(vec![0; vars.len()]), value);
        p
    }

    pub fn variable(vars: &VarSet, field: &FieldDescriptor, index: usize) -> Self {
        assert!(index < vars.len(), "variable index out of range");
        let mut exps = vec![0; vars.len()];
        exps[index] = 1;
        let mut p = MultiPoly::zero(vars, field);
        p.add_term(Monomial(exps), field.one());
        p
    }

    pub fn from_terms<I>(vars: &VarSet, field: &FieldDescriptor, terms: I) -> Self
    where
        I: IntoIterator<Item = (Vec<u32>, FieldElement)>,
    {
        let mut p = MultiPoly::zero(vars, field);
        for (exps, coeff) in terms {
            assert_eq!(exps.len(), vars.len(), "exponent vector length mismatch");
            p.add_term(Monomial(exps), coeff);
        }
        p
    }

    pub fn vars(&self) -> &VarSet {
        &self.vars
    }

    pub fn field(&self) -> &FieldDescriptor {
        &self.field
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &FieldElement)> {
        self.terms.iter()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Leading (maximal) term under the graded order.
    pub fn leading(&self) -> Option<(&Monomial, &FieldElement)> {
        self.terms.last_key_value()
    }

    pub fn coefficient(&self, exps: &[u32]) -> FieldElement {
        self.terms
            .get(&Monomial(exps.to_vec()))
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    pub fn constant_term(&self) -> FieldElement {
        self.coefficient(&vec![0; self.vars.len()])
    }

    fn add_term(&mut self, mono: Monomial, coeff: FieldElement) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.remove(&mono) {
            None => {
                self.terms.insert(mono, coeff);
            }
            Some(old) => {
                let sum = old.add(&coeff);
                if !sum.is_zero() {
                    self.terms.insert(mono, sum);
                }
            }
        }
    }

    fn assert_compatible(&self, rhs: &MultiPoly) {
        assert!(
            self.vars == rhs.vars,
            "polynomials use different variable lists"
        );
    }

    pub fn add(&self, rhs: &MultiPoly) -> MultiPoly {
        self.assert_compatible(rhs);
        let mut out = self.clone();
        for (m, c) in rhs.terms.iter() {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, rhs: &MultiPoly) -> MultiPoly {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> MultiPoly {
        MultiPoly {
            vars: self.vars.clone(),
            field: self.field.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), c.neg()))
                .collect(),
        }
    }

    pub fn mul(&self, rhs: &MultiPoly) -> MultiPoly {
        self.assert_compatible(rhs);
        let mut out = MultiPoly::zero(&self.vars, &self.field);
        for (ma, ca) in self.terms.iter() {
            for (mb, cb) in rhs.terms.iter() {
                out.add_term(ma.mul(mb), ca.mul(cb));
            }
        }
        out
    }

    pub fn scale(&self, c: &FieldElement) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero(&self.vars, &self.field);
        }
        MultiPoly {
            vars: self.vars.clone(),
            field: self.field.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, k)| (m.clone(), k.mul(c)))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> MultiPoly {
        let mut acc = MultiPoly::constant(&self.vars, self.field.one());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Composes `self` with `assignment[i]` substituted for variable `i`.
    /// Every replacement must share one variable list.
    pub fn substitute(&self, assignment: &[MultiPoly]) -> Result<MultiPoly, PolyError> {
        if assignment.len() != self.vars.len() {
            return Err(PolyError::VariableMismatch);
        }
        let target_vars = match assignment.first() {
            Some(p) => p.vars.clone(),
            None => {
                // No variables: self is a constant in an empty variable list.
                return Ok(self.clone());
            }
        };
        if assignment.iter().any(|p| p.vars != target_vars) {
            return Err(PolyError::VariableMismatch);
        }
        let max_exp: Vec<u32> = (0..self.vars.len())
            .map(|i| self.terms.keys().map(|m| m.0[i]).max().unwrap_or(0))
            .collect();
        let powers: Vec<Vec<MultiPoly>> = assignment
            .iter()
            .zip(&max_exp)
            .map(|(p, &e)| {
                let mut v = Vec::with_capacity(e as usize + 1);
                v.push(MultiPoly::constant(&target_vars, p.field.one()));
                for k in 1..=e {
                    let next = v[k as usize - 1].mul(p);
                    v.push(next);
                }
                v
            })
            .collect();
        let mut out = MultiPoly::zero(&target_vars, &self.field);
        for (m, c) in self.terms.iter() {
            let mut term = MultiPoly::constant(&target_vars, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    term = term.mul(&powers[i][e as usize]);
                }
            }
            out = out.add(&term);
        }
        Ok(out)
    }

    /// Exact evaluation at a point.
    pub fn evaluate(&self, point: &[FieldElement]) -> Result<FieldElement, PolyError> {
        if point.len() != self.vars.len() {
            return Err(PolyError::DimensionMismatch {
                expected: self.vars.len(),
                got: point.len(),
            });
        }
        let max_exp: Vec<u32> = (0..self.vars.len())
            .map(|i| self.terms.keys().map(|m| m.0[i]).max().unwrap_or(0))
            .collect();
        let powers: Vec<Vec<FieldElement>> = point
            .iter()
            .zip(&max_exp)
            .map(|(x, &e)| {
                let mut v = Vec::with_capacity(e as usize + 1);
                v.push(x.field().one());
                for k in 1..=e {
                    let next = v[k as usize - 1].mul(x);
                    v.push(next);
                }
                v
            })
            .collect();
        let mut acc = self.field.zero();
        for (m, c) in self.terms.iter() {
            let mut t = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    t = t.mul(&powers[i][e as usize]);
                }
            }
            acc = acc.add(&t);
        }
        Ok(acc)
    }

    /// Partial derivatives in variable order.
    pub fn gradient(&self) -> Vec<MultiPoly> {
        (0..self.vars.len())
            .map(|i| {
                let mut out = MultiPoly::zero(&self.vars, &self.field);
                for (m, c) in self.terms.iter() {
                    let e = m.0[i];
                    if e == 0 {
                        continue;
                    }
                    let mut exps = m.0.clone();
                    exps[i] -= 1;
                    let coeff = c.scale_rational(&BigRational::from_integer(BigInt::from(e)));
                    out.add_term(Monomial(exps), coeff);
                }
                out
            })
            .collect()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|m| m.degree()).max().unwrap_or(0)
    }

    /// The common total degree of all terms, or `None` when the terms mix
    /// degrees. The zero polynomial reports `Some(0)`.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut iter = self.terms.keys();
        let d = match iter.next() {
            None => return Some(0),
            Some(m) => m.degree(),
        };
        iter.all(|m| m.degree() == d).then_some(d)
    }

    /// Canonical representative up to nonzero scalar: leading coefficient 1.
    pub fn monic(&self) -> MultiPoly {
        match self.leading() {
            None => self.clone(),
            Some((_, lead)) => {
                let inv = lead.inverse().expect("leading coefficient is nonzero");
                self.scale(&inv)
            }
        }
    }

    /// True when the two polynomials agree up to a nonzero scalar.
    pub fn proportional(&self, other: &MultiPoly) -> bool {
        if self.is_zero() || other.is_zero() {
            return self.is_zero() && other.is_zero();
        }
        self.monic() == other.monic()
    }

    /// Scales so that every basis coordinate of every coefficient is an
    /// integer, their collective gcd is 1, and the leading coefficient is
    /// positive under the real embedding.
    pub fn primitive(&self) -> MultiPoly {
        use num_bigint::BigUint;
        if self.is_zero() {
            return self.clone();
        }
        let mut denom_lcm = BigUint::one();
        let mut numer_gcd = BigUint::zero();
        for c in self.terms.values() {
            for q in c.coords() {
                if q.is_zero() {
                    continue;
                }
                denom_lcm = num_integer::lcm(denom_lcm, q.denom().magnitude().clone());
                numer_gcd = num_integer::gcd(numer_gcd, q.numer().magnitude().clone());
            }
        }
        let scale = BigRational::new(BigInt::from(denom_lcm), BigInt::from(numer_gcd));
        let mut out = MultiPoly {
            vars: self.vars.clone(),
            field: self.field.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), c.scale_rational(&scale)))
                .collect(),
        };
        if out.leading().map(|(_, c)| c.sign()) == Some(-1) {
            out = out.neg();
        }
        out
    }

    /// Promotes every coefficient into a larger field tower.
    pub fn promote(&self, target: &FieldDescriptor) -> Result<MultiPoly, NumFieldError> {
        let mut terms = BTreeMap::new();
        for (m, c) in self.terms.iter() {
            terms.insert(m.clone(), c.promote(target)?);
        }
        Ok(MultiPoly {
            vars: self.vars.clone(),
            field: target.clone(),
            terms,
        })
    }

    /// Compiles a float form of the polynomial; coefficients are converted
    /// once, well beyond f64 resolution.
    pub fn to_float(&self) -> FloatPoly {
        FloatPoly {
            nvars: self.vars.len(),
            terms: self
                .terms
                .iter()
                .rev()
                .map(|(m, c)| (m.0.clone(), c.to_f64()))
                .collect(),
        }
    }
}

impl fmt::Display for MultiPoly {
    /// Deterministic text form mirroring computer-algebra printout style:
    /// leading term first, e.g. `-3*x0^2*x1-3*x0*x1^2-...`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            let neg = c.sign() < 0;
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                write!(f, "{}", if neg { "-" } else { "+" })?;
            }
            let mag = c.abs();
            let is_const = m.degree() == 0;
            let mut coeff_written = false;
            if let Some(q) = mag.as_rational() {
                if !q.is_one() || is_const {
                    if q.denom().is_one() {
                        write!(f, "{}", q.numer())?;
                    } else {
                        write!(f, "{}/{}", q.numer(), q.denom())?;
                    }
                    coeff_written = true;
                }
            } else {
                write!(f, "({mag})")?;
                coeff_written = true;
            }
            if !is_const {
                if coeff_written {
                    write!(f, "*")?;
                }
                let mut first_var = true;
                for (i, &e) in m.0.iter().enumerate() {
                    if e == 0 {
                        continue;
                    }
                    if !first_var {
                        write!(f, "*")?;
                    }
                    first_var = false;
                    write!(f, "{}", self.vars.names()[i])?;
                    if e > 1 {
                        write!(f, "^{e}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

/// A polynomial of total degree at most one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearForm(MultiPoly);

impl LinearForm {
    pub fn new(poly: MultiPoly) -> Result<Self, PolyError> {
        let d = poly.total_degree();
        if d > 1 {
            return Err(PolyError::DegreeTooHigh { degree: d });
        }
        Ok(LinearForm(poly))
    }

    pub fn poly(&self) -> &MultiPoly {
        &self.0
    }

    pub fn into_poly(self) -> MultiPoly {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    /// True when every term has degree exactly one.
    pub fn is_homogeneous(&self) -> bool {
        self.0.homogeneous_degree() == Some(1)
    }

    /// Coefficient of variable `i`.
    pub fn coefficient(&self, i: usize) -> FieldElement {
        let mut exps = vec![0u32; self.0.vars().len()];
        exps[i] = 1;
        self.0.coefficient(&exps)
    }

    pub fn constant_part(&self) -> FieldElement {
        self.0.constant_term()
    }

    /// All variable coefficients in order.
    pub fn coefficients(&self) -> Vec<FieldElement> {
        (0..self.0.vars().len())
            .map(|i| self.coefficient(i))
            .collect()
    }
}

impl fmt::Display for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Float-coefficient polynomial for fast approximate evaluation.
#[derive(Debug, Clone)]
pub struct FloatPoly {
    nvars: usize,
    terms: Vec<(Vec<u32>, f64)>,
}

impl FloatPoly {
    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn evaluate(&self, point: &[f64]) -> f64 {
        debug_assert_eq!(point.len(), self.nvars);
        let mut acc = 0.0;
        for (exps, c) in &self.terms {
            let mut t = *c;
            for (i, &e) in exps.iter().enumerate() {
                for _ in 0..e {
                    t *= point[i];
                }
            }
            acc += t;
        }
        acc
    }
}
