//! Exact arithmetic in a real quadratic extension `Q(sqrt(D))`.
//!
//! Every value is `a + b*sqrt(D)` with `a`, `b` arbitrary-precision
//! rationals and `D` a fixed nonnegative square-free integer. Signs,
//! comparisons and equality are decided exactly, so distance comparisons
//! and determinant signs never touch floating point.
//!
//! Values are kept in a canonical reduced form:
//! * rationals are stored reduced with positive denominators,
//! * `D <= 1` folds the radical into the rational part,
//! * a zero radical coefficient forces `D = 0`,
//!
//! so structural equality coincides with numeric equality and values hash
//! consistently. A purely rational value (with `D = 0`) is compatible with
//! any extension; combining two values whose radicands are distinct and
//! both nonzero is a contract violation and panics.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;
use thiserror::Error;

/// Errors for construction, parsing and checked arithmetic.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExactNumError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("values live in different extensions: sqrt({left}) vs sqrt({right})")]
    FieldMismatch { left: u64, right: u64 },
    #[error("radicand {0} is not square-free")]
    NotSquareFree(u64),
    #[error("cannot parse {input:?} as an exact value: {reason}")]
    Parse { input: String, reason: String },
    #[error("radicand {0} is too large to factor exactly")]
    FactorLimit(String),
    #[error("square root of a negative value")]
    NegativeRadicand,
}

/// An element `a + b*sqrt(d)` of the quadratic extension `Q(sqrt(d))`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QuadExt {
    a: BigRational,
    b: BigRational,
    d: u64,
}

/// Checks that a declared radicand is usable: `0` and `1` are the trivial
/// (purely rational) cases, anything larger must be square-free.
pub fn validate_radicand(d: u64) -> Result<(), ExactNumError> {
    if d >= 2 && !is_square_free(d) {
        return Err(ExactNumError::NotSquareFree(d));
    }
    Ok(())
}

fn is_square_free(d: u64) -> bool {
    let mut p = 2u64;
    while p.saturating_mul(p) <= d {
        if d.is_multiple_of(p * p) {
            return false;
        }
        p += 1;
    }
    true
}

fn ratio_sign(r: &BigRational) -> i8 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

impl QuadExt {
    /// Builds `a + b*sqrt(d)` after validating that `d` is square-free.
    pub fn new(a: BigRational, b: BigRational, d: u64) -> Result<Self, ExactNumError> {
        validate_radicand(d)?;
        Ok(Self::raw(a, b, d))
    }

    /// Internal constructor; assumes `d` is already a valid radicand and
    /// restores the canonical form.
    fn raw(mut a: BigRational, mut b: BigRational, mut d: u64) -> Self {
        if d == 1 {
            a += &b;
            b = BigRational::zero();
            d = 0;
        } else if d == 0 || b.is_zero() {
            b = BigRational::zero();
            d = 0;
        }
        QuadExt { a, b, d }
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        Self::raw(BigRational::from_integer(n.into()), BigRational::zero(), 0)
    }

    pub fn from_rational(r: BigRational) -> Self {
        Self::raw(r, BigRational::zero(), 0)
    }

    /// Convenience constructor for the rational `n/m`. Panics if `m == 0`.
    pub fn ratio(n: i64, m: i64) -> Self {
        assert!(m != 0, "zero denominator");
        Self::from_rational(BigRational::new(BigInt::from(n), BigInt::from(m)))
    }

    /// The exact square root of a nonnegative rational, expressed with a
    /// single square-free radicand: `sqrt(p/q) = (s/q) * sqrt(D)`.
    pub fn sqrt_of_rational(r: &BigRational) -> Result<Self, ExactNumError> {
        match ratio_sign(r) {
            -1 => Err(ExactNumError::NegativeRadicand),
            0 => Ok(Self::zero()),
            _ => {
                let radicand = r.numer() * r.denom();
                let n = radicand
                    .to_u64()
                    .ok_or_else(|| ExactNumError::FactorLimit(radicand.to_string()))?;
                let (square_part, free_part) = squarefree_decompose(n);
                let coeff = BigRational::new(BigInt::from(square_part), r.denom().clone());
                Ok(Self::raw(BigRational::zero(), coeff, free_part))
            }
        }
    }

    /// Rational part `a`.
    pub fn rational_part(&self) -> &BigRational {
        &self.a
    }

    /// Radical coefficient `b`.
    pub fn radical_part(&self) -> &BigRational {
        &self.b
    }

    /// The radicand `d`; always `0` for purely rational values.
    pub fn radicand(&self) -> u64 {
        self.d
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    /// Resolves the common radicand of two values, or reports a mismatch.
    pub fn common_radicand(&self, other: &Self) -> Result<u64, ExactNumError> {
        match (self.d, other.d) {
            (x, y) if x == y => Ok(x),
            (0, y) => Ok(y),
            (x, 0) => Ok(x),
            (x, y) => Err(ExactNumError::FieldMismatch { left: x, right: y }),
        }
    }

    fn unify(&self, other: &Self, op: &str) -> u64 {
        self.common_radicand(other)
            .unwrap_or_else(|e| panic!("{op}: {e}"))
    }

    /// Sign of the real number `a + b*sqrt(d)`: `-1`, `0` or `+1`.
    ///
    /// Decided by case analysis on the signs of `a` and `b` and, when they
    /// disagree, by the exact comparison of `a^2` against `b^2 * d`.
    pub fn sign(&self) -> i8 {
        if self.b.is_zero() {
            return ratio_sign(&self.a);
        }
        if self.a.is_zero() {
            return ratio_sign(&self.b);
        }
        let sa = ratio_sign(&self.a);
        let sb = ratio_sign(&self.b);
        if sa == sb {
            return sa;
        }
        let lhs = &self.a * &self.a;
        let rhs = &self.b * &self.b * BigRational::from_integer(BigInt::from(self.d));
        match lhs.cmp(&rhs) {
            Ordering::Greater => sa,
            Ordering::Less => sb,
            // Unreachable for square-free d >= 2 (sqrt(d) is irrational),
            // kept for totality.
            Ordering::Equal => 0,
        }
    }

    pub fn is_positive(&self) -> bool {
        self.sign() > 0
    }

    pub fn is_negative(&self) -> bool {
        self.sign() < 0
    }

    /// Multiplicative inverse; errors on zero.
    pub fn recip(&self) -> Result<Self, ExactNumError> {
        if self.is_zero() {
            return Err(ExactNumError::DivisionByZero);
        }
        // 1 / (a + b*sqrt(d)) = (a - b*sqrt(d)) / (a^2 - b^2 d); the norm is
        // nonzero because sqrt(d) is irrational for canonical d >= 2.
        let norm = &self.a * &self.a
            - &self.b * &self.b * BigRational::from_integer(BigInt::from(self.d));
        Ok(Self::raw(&self.a / &norm, -(&self.b) / &norm, self.d))
    }

    /// Checked division; errors on a zero divisor or mismatched radicands.
    pub fn checked_div(&self, rhs: &Self) -> Result<Self, ExactNumError> {
        self.common_radicand(rhs)?;
        Ok(self * &rhs.recip()?)
    }

    /// Floating-point approximation, for informational output only.
    pub fn to_f64(&self) -> Option<f64> {
        Some(self.a.to_f64()? + self.b.to_f64()? * (self.d as f64).sqrt())
    }
}

/// Writes `n = s^2 * d` with `d` square-free and returns `(s, d)`.
fn squarefree_decompose(mut n: u64) -> (u64, u64) {
    let mut square = 1u64;
    let mut free = 1u64;
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0u32;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            square *= p.pow(e / 2);
            if e % 2 == 1 {
                free *= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        free *= n;
    }
    (square, free)
}

impl Add<&QuadExt> for &QuadExt {
    type Output = QuadExt;
    fn add(self, rhs: &QuadExt) -> QuadExt {
        let d = self.unify(rhs, "add");
        QuadExt::raw(&self.a + &rhs.a, &self.b + &rhs.b, d)
    }
}

impl Sub<&QuadExt> for &QuadExt {
    type Output = QuadExt;
    fn sub(self, rhs: &QuadExt) -> QuadExt {
        let d = self.unify(rhs, "sub");
        QuadExt::raw(&self.a - &rhs.a, &self.b - &rhs.b, d)
    }
}

impl Mul<&QuadExt> for &QuadExt {
    type Output = QuadExt;
    fn mul(self, rhs: &QuadExt) -> QuadExt {
        let d = self.unify(rhs, "mul");
        let dd = BigRational::from_integer(BigInt::from(d));
        QuadExt::raw(
            &self.a * &rhs.a + &self.b * &rhs.b * dd,
            &self.a * &rhs.b + &self.b * &rhs.a,
            d,
        )
    }
}

impl Div<&QuadExt> for &QuadExt {
    type Output = QuadExt;
    fn div(self, rhs: &QuadExt) -> QuadExt {
        self.checked_div(rhs).unwrap_or_else(|e| panic!("div: {e}"))
    }
}

macro_rules! forward_binop {
    ($imp:ident, $method:ident) => {
        impl $imp<QuadExt> for QuadExt {
            type Output = QuadExt;
            fn $method(self, rhs: QuadExt) -> QuadExt {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $imp<&'a QuadExt> for QuadExt {
            type Output = QuadExt;
            fn $method(self, rhs: &'a QuadExt) -> QuadExt {
                (&self).$method(rhs)
            }
        }
        impl<'a> $imp<QuadExt> for &'a QuadExt {
            type Output = QuadExt;
            fn $method(self, rhs: QuadExt) -> QuadExt {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
forward_binop!(Div, div);

impl Neg for &QuadExt {
    type Output = QuadExt;
    fn neg(self) -> QuadExt {
        QuadExt::raw(-(&self.a), -(&self.b), self.d)
    }
}

impl Neg for QuadExt {
    type Output = QuadExt;
    fn neg(self) -> QuadExt {
        -&self
    }
}

impl Zero for QuadExt {
    fn zero() -> Self {
        QuadExt {
            a: BigRational::zero(),
            b: BigRational::zero(),
            d: 0,
        }
    }
    fn is_zero(&self) -> bool {
        QuadExt::is_zero(self)
    }
}

impl One for QuadExt {
    fn one() -> Self {
        QuadExt::from_integer(1)
    }
}

impl PartialOrd for QuadExt {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Total order matching the real embedding. Comparing values with distinct
/// nonzero radicands is a contract violation and panics.
impl Ord for QuadExt {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self - other).sign() {
            -1 => Ordering::Less,
            0 => Ordering::Equal,
            _ => Ordering::Greater,
        }
    }
}

impl fmt::Display for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            write!(f, "{}", self.a)
        } else if self.a.is_zero() {
            write!(f, "{}*sqrt({})", self.b, self.d)
        } else if self.b.is_negative() {
            write!(f, "{} - {}*sqrt({})", self.a, -&self.b, self.d)
        } else {
            write!(f, "{} + {}*sqrt({})", self.a, self.b, self.d)
        }
    }
}

impl fmt::Debug for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QuadExt({self})")
    }
}

enum Term {
    Rat(BigRational),
    Surd(BigRational, u64),
}

fn parse_rational(s: &str) -> Result<BigRational, String> {
    let t = s.trim();
    if t.is_empty() {
        return Err("empty number".into());
    }
    match t.split_once('/') {
        None => {
            let n: BigInt = t.parse().map_err(|_| format!("invalid integer {t:?}"))?;
            Ok(BigRational::from_integer(n))
        }
        Some((num, den)) => {
            let n: BigInt = num
                .trim()
                .parse()
                .map_err(|_| format!("invalid numerator {num:?}"))?;
            let d: BigInt = den
                .trim()
                .parse()
                .map_err(|_| format!("invalid denominator {den:?}"))?;
            if d.is_zero() {
                return Err("zero denominator".into());
            }
            Ok(BigRational::new(n, d))
        }
    }
}

fn parse_term(s: &str) -> Result<Term, String> {
    let t = s.trim();
    if let Some(inner) = t.strip_prefix("sqrt(") {
        let d = parse_radicand(inner)?;
        return Ok(Term::Surd(BigRational::one(), d));
    }
    match t.split_once('*') {
        None => Ok(Term::Rat(parse_rational(t)?)),
        Some((coeff, surd)) => {
            let b = parse_rational(coeff)?;
            let inner = surd
                .trim()
                .strip_prefix("sqrt(")
                .ok_or_else(|| format!("expected sqrt(...) after '*', found {surd:?}"))?;
            let d = parse_radicand(inner)?;
            Ok(Term::Surd(b, d))
        }
    }
}

fn parse_radicand(inner_with_paren: &str) -> Result<u64, String> {
    let inner = inner_with_paren
        .strip_suffix(')')
        .ok_or("missing closing parenthesis")?;
    inner
        .trim()
        .parse::<u64>()
        .map_err(|_| format!("invalid radicand {inner:?}"))
}

/// Splits `"x + y"` / `"x - y"` at the top level; a sign belonging to a
/// number always follows another operator or starts the string, so a
/// separator is any `+`/`-` preceded by a digit.
fn split_terms(s: &str) -> (&str, Option<(char, &str)>) {
    for (i, c) in s.char_indices().skip(1) {
        if c == '+' || c == '-' {
            if let Some(prev) = s[..i].trim_end().chars().last() {
                if prev.is_ascii_digit() {
                    return (&s[..i], Some((c, &s[i + 1..])));
                }
            }
        }
    }
    (s, None)
}

impl FromStr for QuadExt {
    type Err = ExactNumError;

    /// Parses the textual form: `p/q`, `p/q*sqrt(D)`, `sqrt(D)` or
    /// `p/q + r/s*sqrt(D)` (with `-` variants).
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = |reason: String| ExactNumError::Parse {
            input: s.to_string(),
            reason,
        };
        let (first, rest) = split_terms(s.trim());
        let first = parse_term(first).map_err(err)?;
        match rest {
            None => match first {
                Term::Rat(a) => Ok(QuadExt::from_rational(a)),
                Term::Surd(b, d) => QuadExt::new(BigRational::zero(), b, d),
            },
            Some((op, second)) => {
                let second = parse_term(second).map_err(err)?;
                match (first, second) {
                    (Term::Rat(a), Term::Surd(b, d)) => {
                        let b = if op == '-' { -b } else { b };
                        QuadExt::new(a, b, d)
                    }
                    _ => Err(err(
                        "expected a rational followed by a single sqrt(...) term".into(),
                    )),
                }
            }
        }
    }
}
