//! Exact arithmetic over towers of real quadratic extensions of the
//! rationals.
//!
//! A [`FieldDescriptor`] fixes a field `Q(sqrt(n1), ..., sqrt(nk))` with
//! square-free, multiplicatively independent radicands. Elements are stored
//! as `2^k` rational coordinates with respect to the basis of all subset
//! products of the `sqrt(ni)`, so equality is coordinate-wise, zero testing
//! is trivial, and multiplication is a finite structure-constant table.
//! Signs are decided exactly: a coordinate-wise zero test first, then
//! interval refinement of the radicals at doubling precision, which always
//! terminates because zero was already excluded.

mod parse;
mod real;

pub use real::RealApprox;

use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Maximum number of radicands in a tower. Coordinate count doubles per
/// radicand; nothing in this domain needs more than `sqrt(2)` and `sqrt(5)`.
pub const MAX_TOWER: usize = 4;

/// Largest prime the radicand factorizer will search for.
const FACTOR_LIMIT: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NumFieldError {
    NonPositiveRadicand(i64),
    TowerTooLarge(usize),
    DivisionByZero,
    IncompatibleFields,
    /// The requested square root does not lie in the field.
    NotRepresentable,
    /// A radicand had a prime factor beyond the factorization limit.
    RadicandTooLarge(u64),
    Parse(String),
}

impl fmt::Display for NumFieldError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NumFieldError::NonPositiveRadicand(v) => {
                write!(f, "radicand must be a positive integer, got {v}")
            }
            NumFieldError::TowerTooLarge(k) => {
                write!(
                    f,
                    "field tower with {k} radicands exceeds the limit of {MAX_TOWER}"
                )
            }
            NumFieldError::DivisionByZero => write!(f, "division by zero field element"),
            NumFieldError::IncompatibleFields => {
                write!(f, "operands live in incompatible field towers")
            }
            NumFieldError::NotRepresentable => {
                write!(f, "square root is not representable in this field")
            }
            NumFieldError::RadicandTooLarge(v) => {
                write!(
                    f,
                    "radicand {v} has a prime factor beyond the supported range"
                )
            }
            NumFieldError::Parse(msg) => write!(f, "parse error: {msg}"),
        }
    }
}

impl core::error::Error for NumFieldError {}

#[derive(Debug)]
struct FieldData {
    /// Strictly increasing, square-free, multiplicatively independent.
    radicands: Vec<u64>,
    /// Prime factors of each radicand, sorted ascending.
    primes: Vec<Vec<u64>>,
    /// For each subset mask, the product of the selected radicands.
    subset_products: Vec<BigUint>,
}

/// A field `Q(sqrt(n1), ..., sqrt(nk))`, shared by all its elements.
#[derive(Debug, Clone)]
pub struct FieldDescriptor {
    data: Arc<FieldData>,
}

impl PartialEq for FieldDescriptor {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.data, &other.data) || self.data.radicands == other.data.radicands
    }
}
impl Eq for FieldDescriptor {}

fn factor(mut v: u64) -> Result<Vec<(u64, u32)>, NumFieldError> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p <= FACTOR_LIMIT && p * p <= v {
        if v % p == 0 {
            let mut e = 0;
            while v % p == 0 {
                v /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if v > 1 {
        // No factor up to min(FACTOR_LIMIT, sqrt(v)) remains in v.
        if v <= FACTOR_LIMIT * FACTOR_LIMIT {
            out.push((v, 1)); // certified prime by the trial bound
        } else {
            let r = num_integer::Roots::sqrt(&v);
            if r * r == v {
                out.push((r, 2)); // even exponent either way
            } else {
                return Err(NumFieldError::RadicandTooLarge(v));
            }
        }
    }
    Ok(out)
}

/// Square-free part of `v` as a sorted prime list.
fn square_free_primes(v: u64) -> Result<Vec<u64>, NumFieldError> {
    Ok(factor(v)?
        .into_iter()
        .filter(|&(_, e)| e % 2 == 1)
        .map(|(p, _)| p)
        .collect())
}

fn primes_product(primes: &[u64]) -> u64 {
    primes.iter().product()
}

/// Symmetric difference of two sorted prime lists, with the shared part
/// (the gcd of the two square-free numbers) returned separately.
fn xor_primes(a: &[u64], b: &[u64]) -> (Vec<u64>, u64) {
    let mut out = Vec::new();
    let mut shared = 1u64;
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        if a[i] == b[j] {
            shared *= a[i];
            i += 1;
            j += 1;
        } else if a[i] < b[j] {
            out.push(a[i]);
            i += 1;
        } else {
            out.push(b[j]);
            j += 1;
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    (out, shared)
}

/// Builds the descriptor for `Q(sqrt(v1), ..., sqrt(vm))`.
///
/// Radicands are reduced to their square-free parts; duplicates and
/// multiplicative dependencies (e.g. `sqrt(6)` once `sqrt(2)` and `sqrt(3)`
/// are present) are merged silently, so the returned tower is a reduced
/// independent generating set spanning all requested square roots.
pub fn make_field(radicands: &[i64]) -> Result<FieldDescriptor, NumFieldError> {
    // Rows are kept in reduced echelon form over F2 (prime exponent
    // vectors): every row's leading (largest) prime appears in no other row.
    let mut rows: Vec<Vec<u64>> = Vec::new();
    for &v in radicands {
        if v <= 0 {
            return Err(NumFieldError::NonPositiveRadicand(v));
        }
        let mut cur = square_free_primes(v as u64)?;
        loop {
            if cur.is_empty() {
                break;
            }
            let lead = *cur.last().unwrap();
            match rows.iter().position(|r| *r.last().unwrap() == lead) {
                Some(i) => cur = xor_primes(&cur, &rows[i]).0,
                None => break,
            }
        }
        if cur.is_empty() {
            continue;
        }
        // Back-substitute the new leading prime out of the existing rows.
        let lead = *cur.last().unwrap();
        for row in rows.iter_mut() {
            if row.contains(&lead) {
                *row = xor_primes(row, &cur).0;
            }
        }
        rows.push(cur);
    }
    if rows.len() > MAX_TOWER {
        return Err(NumFieldError::TowerTooLarge(rows.len()));
    }
    rows.sort_by_key(|r| primes_product(r));
    let radicands: Vec<u64> = rows.iter().map(|r| primes_product(r)).collect();
    let dim = 1usize << radicands.len();
    let mut subset_products = Vec::with_capacity(dim);
    for mask in 0..dim {
        let mut p = BigUint::one();
        for (i, &r) in radicands.iter().enumerate() {
            if mask & (1 << i) != 0 {
                p *= BigUint::from(r);
            }
        }
        subset_products.push(p);
    }
    Ok(FieldDescriptor {
        data: Arc::new(FieldData {
            radicands,
            primes: rows,
            subset_products,
        }),
    })
}

/// The rational field (empty tower).
pub fn rationals() -> FieldDescriptor {
    make_field(&[]).expect("empty tower")
}

/// Smallest common tower containing both fields.
pub fn unify(a: &FieldDescriptor, b: &FieldDescriptor) -> Result<FieldDescriptor, NumFieldError> {
    if a == b {
        return Ok(a.clone());
    }
    let all: Vec<i64> = a
        .radicands()
        .iter()
        .chain(b.radicands().iter())
        .map(|&r| r as i64)
        .collect();
    make_field(&all)
}

impl FieldDescriptor {
    pub fn radicands(&self) -> &[u64] {
        &self.data.radicands
    }

    pub fn tower_size(&self) -> usize {
        self.data.radicands.len()
    }

    /// Number of rational coordinates per element.
    pub fn dim(&self) -> usize {
        1 << self.data.radicands.len()
    }

    /// Integer under the root of the basis element selected by `mask`.
    pub fn basis_radicand(&self, mask: usize) -> &BigUint {
        &self.data.subset_products[mask]
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement {
            field: self.clone(),
            coords: vec![BigRational::zero(); self.dim()],
        }
    }

    pub fn one(&self) -> FieldElement {
        self.from_integer(1)
    }

    pub fn from_integer(&self, v: i64) -> FieldElement {
        self.from_rational(BigRational::from_integer(BigInt::from(v)))
    }

    pub fn from_rational(&self, v: BigRational) -> FieldElement {
        let mut coords = vec![BigRational::zero(); self.dim()];
        coords[0] = v;
        FieldElement {
            field: self.clone(),
            coords,
        }
    }

    pub fn ratio(&self, num: i64, den: i64) -> FieldElement {
        assert!(den != 0, "zero denominator");
        self.from_rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    /// The basis element `sqrt(ni)` for the `i`-th radicand of the tower.
    pub fn sqrt_radicand(&self, i: usize) -> FieldElement {
        assert!(i < self.tower_size());
        let mut e = self.zero();
        e.coords[1 << i] = BigRational::one();
        e
    }

    /// Expresses `sqrt(q)` (for `q >= 0`) in this field, if possible.
    pub fn sqrt_rational(&self, q: &BigRational) -> Result<FieldElement, NumFieldError> {
        if q.is_negative() {
            return Err(NumFieldError::NotRepresentable);
        }
        if q.is_zero() {
            return Ok(self.zero());
        }
        // sqrt(a/b) = sqrt(a*b)/b.
        let n = q.numer().magnitude() * q.denom().magnitude();
        let (sf_primes, square_root_part) = split_square(&n)?;
        // Reduce the square-free part against the tower rows, tracking the
        // accumulated gcds: sf * prod(used radicands) = G^2.
        let mut cur = sf_primes;
        let mut g = BigUint::one();
        let mut mask = 0usize;
        while !cur.is_empty() {
            let lead = *cur.last().unwrap();
            let i = self
                .data
                .primes
                .iter()
                .position(|r| *r.last().unwrap() == lead)
                .ok_or(NumFieldError::NotRepresentable)?;
            let (next, shared) = xor_primes(&cur, &self.data.primes[i]);
            cur = next;
            g *= BigUint::from(shared);
            mask ^= 1 << i;
        }
        // sqrt(n) = s * sqrt(sf) = s * G / prod(radicands in mask) * e_mask.
        let numer = BigInt::from(square_root_part * g);
        let denom = BigInt::from(self.data.subset_products[mask].clone() * q.denom().magnitude());
        let mut e = self.zero();
        e.coords[mask] = BigRational::new(numer, denom);
        Ok(e)
    }
}

/// Splits `n > 0` as `sf * s^2` with `sf` square-free; returns the prime
/// list of `sf` and the root `s` of the square part.
fn split_square(n: &BigUint) -> Result<(Vec<u64>, BigUint), NumFieldError> {
    let mut rest = n.clone();
    let mut sf = Vec::new();
    let mut root = BigUint::one();
    let mut p = 2u64;
    while p <= FACTOR_LIMIT {
        let bp = BigUint::from(p);
        if &bp * &bp > rest {
            break;
        }
        let mut e = 0u32;
        while (&rest % &bp).is_zero() {
            rest /= &bp;
            e += 1;
        }
        if e % 2 == 1 {
            sf.push(p);
        }
        for _ in 0..e / 2 {
            root *= &bp;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if !rest.is_one() {
        let r = num_integer::Roots::sqrt(&rest);
        if &r * &r == rest {
            root *= r; // even exponents, no square-free contribution
        } else if rest <= BigUint::from(FACTOR_LIMIT) * BigUint::from(FACTOR_LIMIT) {
            // Certified prime by the trial bound.
            sf.push(u64::try_from(&rest).expect("fits u64"));
        } else {
            return Err(NumFieldError::RadicandTooLarge(u64::MAX));
        }
    }
    sf.sort_unstable();
    Ok((sf, root))
}

/// An exact element of the field fixed by its descriptor.
///
/// Stored in canonical form: `2^k` rationals in lowest terms, so two
/// elements of one tower are equal as real numbers iff their coordinates
/// are identical; across towers, equality promotes into the common tower
/// first. Values are immutable; all operations are pure.
#[derive(Debug, Clone)]
pub struct FieldElement {
    field: FieldDescriptor,
    coords: Vec<BigRational>,
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        if self.field == other.field {
            return self.coords == other.coords;
        }
        match self.unified(other) {
            Ok((a, b)) => a.coords == b.coords,
            Err(_) => false,
        }
    }
}
impl Eq for FieldElement {}

impl FieldElement {
    pub fn field(&self) -> &FieldDescriptor {
        &self.field
    }

    pub fn coords(&self) -> &[BigRational] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.coords[0].is_one() && self.coords[1..].iter().all(|c| c.is_zero())
    }

    pub fn is_rational(&self) -> bool {
        self.coords[1..].iter().all(|c| c.is_zero())
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        if self.is_rational() {
            Some(&self.coords[0])
        } else {
            None
        }
    }

    fn check_same_field(&self, rhs: &FieldElement) -> Result<(), NumFieldError> {
        if self.field == rhs.field {
            Ok(())
        } else {
            Err(NumFieldError::IncompatibleFields)
        }
    }

    /// Promotes into a larger tower, or unifies both operands first.
    /// Returns operands in a common field.
    fn unified(&self, rhs: &FieldElement) -> Result<(FieldElement, FieldElement), NumFieldError> {
        if self.field == rhs.field {
            return Ok((self.clone(), rhs.clone()));
        }
        let target = unify(&self.field, &rhs.field)?;
        Ok((self.promote(&target)?, rhs.promote(&target)?))
    }

    /// Embeds this element into `target`, which must span this field.
    pub fn promote(&self, target: &FieldDescriptor) -> Result<FieldElement, NumFieldError> {
        if self.field == *target {
            return Ok(self.clone());
        }
        // Fast path: the radicands are a literal subset of the target's.
        let positions: Option<Vec<usize>> = self
            .field
            .radicands()
            .iter()
            .map(|r| target.radicands().iter().position(|t| t == r))
            .collect();
        if let Some(pos) = positions {
            let mut out = target.zero();
            for (mask, c) in self.coords.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let mut tmask = 0usize;
                for (i, &p) in pos.iter().enumerate() {
                    if mask & (1 << i) != 0 {
                        tmask |= 1 << p;
                    }
                }
                out.coords[tmask] = c.clone();
            }
            return Ok(out);
        }
        // General path: re-express each basis element as a square root.
        let mut out = target.zero();
        for (mask, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let under_root =
                BigRational::from_integer(BigInt::from(self.field.basis_radicand(mask).clone()));
            let image = target.sqrt_rational(&under_root)?;
            out = out.add(&image.scale_rational(c));
        }
        Ok(out)
    }

    pub fn add(&self, rhs: &FieldElement) -> FieldElement {
        match self.check_same_field(rhs) {
            Ok(()) => {
                let coords = self
                    .coords
                    .iter()
                    .zip(&rhs.coords)
                    .map(|(a, b)| a + b)
                    .collect();
                FieldElement {
                    field: self.field.clone(),
                    coords,
                }
            }
            Err(_) => {
                let (a, b) = self.unified(rhs).expect("incompatible field towers");
                a.add(&b)
            }
        }
    }

    pub fn sub(&self, rhs: &FieldElement) -> FieldElement {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> FieldElement {
        FieldElement {
            field: self.field.clone(),
            coords: self.coords.iter().map(|c| -c).collect(),
        }
    }

    pub fn mul(&self, rhs: &FieldElement) -> FieldElement {
        if self.check_same_field(rhs).is_err() {
            let (a, b) = self.unified(rhs).expect("incompatible field towers");
            return a.mul(&b);
        }
        let dim = self.field.dim();
        let mut coords = vec![BigRational::zero(); dim];
        for (s, a) in self.coords.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (t, b) in rhs.coords.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let shared = s & t;
                let term = if shared == 0 {
                    a * b
                } else {
                    a * b
                        * BigRational::from_integer(BigInt::from(
                            self.field.basis_radicand(shared).clone(),
                        ))
                };
                coords[s ^ t] += term;
            }
        }
        FieldElement {
            field: self.field.clone(),
            coords,
        }
    }

    pub fn scale_rational(&self, c: &BigRational) -> FieldElement {
        FieldElement {
            field: self.field.clone(),
            coords: self.coords.iter().map(|x| x * c).collect(),
        }
    }

    pub fn square(&self) -> FieldElement {
        self.mul(self)
    }

    /// Multiplicative inverse via recursive conjugation: writing
    /// `x = a + b*sqrt(n_top)`, the product `x * (a - b*sqrt(n_top))`
    /// lives one level down the tower.
    pub fn inverse(&self) -> Result<FieldElement, NumFieldError> {
        if self.is_zero() {
            return Err(NumFieldError::DivisionByZero);
        }
        let top = match self.top_radicand_bit() {
            None => {
                let mut out = self.field.zero();
                out.coords[0] = self.coords[0].recip();
                return Ok(out);
            }
            Some(bit) => bit,
        };
        let conj = self.conjugate(top);
        let norm = self.mul(&conj);
        debug_assert!(norm.top_radicand_bit().map_or(true, |b| b < top));
        let inv_norm = norm.inverse()?;
        Ok(conj.mul(&inv_norm))
    }

    pub fn div(&self, rhs: &FieldElement) -> Result<FieldElement, NumFieldError> {
        if self.check_same_field(rhs).is_err() {
            let (a, b) = self.unified(rhs)?;
            return a.div(&b);
        }
        Ok(self.mul(&rhs.inverse()?))
    }

    fn top_radicand_bit(&self) -> Option<usize> {
        let mut top: Option<usize> = None;
        for (mask, c) in self.coords.iter().enumerate() {
            if !c.is_zero() && mask != 0 {
                let high = usize::BITS as usize - 1 - mask.leading_zeros() as usize;
                top = Some(top.map_or(high, |t| t.max(high)));
            }
        }
        top
    }

    /// Flips the sign of every coordinate whose basis element contains
    /// `sqrt(n_bit)`.
    fn conjugate(&self, bit: usize) -> FieldElement {
        let coords = self
            .coords
            .iter()
            .enumerate()
            .map(|(mask, c)| {
                if mask & (1 << bit) != 0 {
                    -c
                } else {
                    c.clone()
                }
            })
            .collect();
        FieldElement {
            field: self.field.clone(),
            coords,
        }
    }

    /// Exact comparison under the real embedding.
    pub fn cmp_real(&self, rhs: &FieldElement) -> core::cmp::Ordering {
        match self.sub(rhs).sign() {
            -1 => core::cmp::Ordering::Less,
            0 => core::cmp::Ordering::Equal,
            _ => core::cmp::Ordering::Greater,
        }
    }

    pub fn abs(&self) -> FieldElement {
        if self.sign() < 0 {
            self.neg()
        } else {
            self.clone()
        }
    }
}
