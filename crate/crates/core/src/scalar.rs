//! Exact arithmetic in the rational function field Q(q).
//!
//! Elements are stored as reduced ratios of integer Laurent polynomials. The
//! canonical form (coprime numerator and denominator over Z[q], denominator
//! with lowest exponent 0 and positive leading coefficient) makes structural
//! equality coincide with field equality.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ScalarError {
    #[error("division by zero in Q(q)")]
    DivisionByZero,
    #[error("bad specialization point q = {0}")]
    BadSpecialization(String),
    #[error("parse error at offset {offset}: {message}")]
    Parse { offset: usize, message: String },
}

// ---------------------------------------------------------------------------
// Dense integer polynomials with lowest exponent 0 (helpers for gcd).
// ---------------------------------------------------------------------------

fn trim(p: &mut Vec<BigInt>) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

fn content(p: &[BigInt]) -> BigInt {
    p.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c))
}

fn div_scalar(p: &[BigInt], c: &BigInt) -> Vec<BigInt> {
    p.iter().map(|x| x / c).collect()
}

fn primitive(p: &[BigInt]) -> Vec<BigInt> {
    let c = content(p);
    if c.is_one() || c.is_zero() {
        p.to_vec()
    } else {
        div_scalar(p, &c)
    }
}

/// Pseudo-remainder of `a` by `b` (b nonzero). Only correct up to a unit of
/// Q, which is all the gcd computation needs.
fn prem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let lb = &b[db];
    while r.len() > db {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        for c in r.iter_mut() {
            *c *= lb;
        }
        let shift = dr - db;
        for (i, bc) in b.iter().enumerate() {
            r[i + shift] -= &lr * bc;
        }
        trim(&mut r);
        r = primitive(&r);
    }
    r
}

/// Gcd in Z[q] of two nonzero polynomials, normalized with positive leading
/// coefficient.
fn poly_gcd(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let c = content(a).gcd(&content(b));
    let (mut a, mut b) = (primitive(a), primitive(b));
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    while !b.is_empty() {
        if b.len() == 1 {
            a = vec![BigInt::one()];
            break;
        }
        let r = prem(&a, &b);
        a = b;
        b = primitive(&r);
    }
    let mut g: Vec<BigInt> = a.into_iter().map(|x| x * &c).collect();
    if g.last().is_some_and(|l| l.is_negative()) {
        for x in g.iter_mut() {
            *x = -&*x;
        }
    }
    g
}

/// Exact quotient `a / b` in Z[q]; panics if the division is not exact.
fn poly_div_exact(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if b.len() == 1 {
        return div_scalar(a, &b[0]);
    }
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let lb = &b[db];
    let mut quot = vec![BigInt::zero(); a.len().saturating_sub(db)];
    while r.len() > db {
        let dr = r.len() - 1;
        let (qc, rem) = r[dr].div_rem(lb);
        assert!(rem.is_zero(), "inexact polynomial division");
        let shift = dr - db;
        for (i, bc) in b.iter().enumerate() {
            r[i + shift] -= &qc * bc;
        }
        quot[shift] = qc;
        trim(&mut r);
    }
    assert!(r.is_empty(), "inexact polynomial division");
    trim(&mut quot);
    quot
}

// ---------------------------------------------------------------------------
// Laurent polynomials
// ---------------------------------------------------------------------------

/// An integer Laurent polynomial in q.
///
/// `coeffs[k]` is the coefficient of `q^(low + k)`. The first and last stored
/// coefficients are nonzero; the zero polynomial has no coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    low: i32,
    coeffs: Vec<BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(BigInt::one(), 0)
    }

    pub fn monomial(c: BigInt, exp: i32) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self { low: exp, coeffs: vec![c] }
    }

    pub fn from_terms<I: IntoIterator<Item = (i32, BigInt)>>(terms: I) -> Self {
        let terms: Vec<(i32, BigInt)> = terms.into_iter().collect();
        let Some(low) = terms.iter().map(|t| t.0).min() else {
            return Self::zero();
        };
        let high = terms.iter().map(|t| t.0).max().unwrap();
        let mut coeffs = vec![BigInt::zero(); (high - low + 1) as usize];
        for (e, c) in terms {
            coeffs[(e - low) as usize] += c;
        }
        Self::from_dense(low, coeffs)
    }

    fn from_dense(mut low: i32, mut coeffs: Vec<BigInt>) -> Self {
        trim(&mut coeffs);
        let lead = coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead == coeffs.len() {
            return Self::zero();
        }
        if lead > 0 {
            coeffs.drain(..lead);
            low += lead as i32;
        }
        Self { low, coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.low == 0 && self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Lowest exponent with nonzero coefficient.
    pub fn low_exp(&self) -> Option<i32> {
        (!self.is_zero()).then_some(self.low)
    }

    pub fn high_exp(&self) -> Option<i32> {
        (!self.is_zero()).then(|| self.low + self.coeffs.len() as i32 - 1)
    }

    pub fn coeff(&self, exp: i32) -> BigInt {
        let k = exp - self.low;
        if k < 0 || k as usize >= self.coeffs.len() {
            BigInt::zero()
        } else {
            self.coeffs[k as usize].clone()
        }
    }

    /// Nonzero terms as `(exponent, coefficient)`, ascending by exponent.
    pub fn terms(&self) -> impl Iterator<Item = (i32, &BigInt)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(k, c)| (self.low + k as i32, c))
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }

    /// Multiplies by `q^k`.
    pub fn shift(&self, k: i32) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        Self { low: self.low + k, coeffs: self.coeffs.clone() }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self { low: self.low, coeffs: self.coeffs.iter().map(|x| x * c).collect() }
    }

    pub fn eval(&self, q0: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for (e, c) in self.terms() {
            acc += BigRational::from_integer(c.clone()) * pow_rat(q0, e);
        }
        acc
    }

    fn add_impl(&self, other: &Self, negate: bool) -> Self {
        if other.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return if negate { -other } else { other.clone() };
        }
        let low = self.low.min(other.low);
        let high = self.high_exp().unwrap().max(other.high_exp().unwrap());
        let mut coeffs = vec![BigInt::zero(); (high - low + 1) as usize];
        for (k, c) in self.coeffs.iter().enumerate() {
            coeffs[(self.low - low) as usize + k] += c;
        }
        for (k, c) in other.coeffs.iter().enumerate() {
            let slot = &mut coeffs[(other.low - low) as usize + k];
            if negate {
                *slot -= c;
            } else {
                *slot += c;
            }
        }
        Self::from_dense(low, coeffs)
    }

    fn mul_impl(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Self::from_dense(self.low + other.low, coeffs)
    }

    fn fmt_terms(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let terms: Vec<(i32, &BigInt)> = self.terms().collect();
        for (idx, (e, c)) in terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            match (idx, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mag = c.abs();
            if *e == 0 {
                write!(f, "{mag}")?;
                continue;
            }
            if !mag.is_one() {
                write!(f, "{mag}*")?;
            }
            if *e == 1 {
                write!(f, "q")?;
            } else {
                write!(f, "q^{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_terms(f)
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly { low: self.low, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, o: &LaurentPoly) -> LaurentPoly {
        self.add_impl(o, false)
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, o: &LaurentPoly) -> LaurentPoly {
        self.add_impl(o, true)
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, o: &LaurentPoly) -> LaurentPoly {
        self.mul_impl(o)
    }
}

fn pow_rat(q0: &BigRational, e: i32) -> BigRational {
    if e >= 0 {
        num_traits::pow(q0.clone(), e as usize)
    } else {
        num_traits::pow(q0.recip(), (-e) as usize)
    }
}

// ---------------------------------------------------------------------------
// Rational functions
// ---------------------------------------------------------------------------

/// An element of Q(q) in canonical reduced form.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LaurentFraction {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl LaurentFraction {
    pub fn zero() -> Self {
        Self { num: LaurentPoly::zero(), den: LaurentPoly::one() }
    }

    pub fn one() -> Self {
        Self { num: LaurentPoly::one(), den: LaurentPoly::one() }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_poly(LaurentPoly::monomial(BigInt::from(n), 0))
    }

    pub fn from_poly(p: LaurentPoly) -> Self {
        Self { num: p, den: LaurentPoly::one() }
    }

    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Result<Self, ScalarError> {
        if den.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(Self::normalized(num, den))
    }

    pub fn numerator(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn denominator(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// True when the value is a Laurent polynomial.
    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    fn normalized(num: LaurentPoly, den: LaurentPoly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let s = den.low;
        let num_low = num.low - s;
        let mut n = num.coeffs;
        let mut d = den.coeffs;
        if !(d.len() == 1 && d[0].is_one()) {
            let g = if d.len() == 1 {
                vec![content(&n).gcd(&d[0])]
            } else {
                poly_gcd(&n, &d)
            };
            if !(g.len() == 1 && g[0].is_one()) {
                n = poly_div_exact(&n, &g);
                d = poly_div_exact(&d, &g);
            }
            if d.last().unwrap().is_negative() {
                n.iter_mut().for_each(|c| *c = -&*c);
                d.iter_mut().for_each(|c| *c = -&*c);
            }
        }
        Self {
            num: LaurentPoly::from_dense(num_low, n),
            den: LaurentPoly { low: 0, coeffs: d },
        }
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self, ScalarError> {
        if other.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(Self::normalized(&self.num * &other.den, &self.den * &other.num))
    }

    pub fn inv(&self) -> Result<Self, ScalarError> {
        Self::one().checked_div(self)
    }

    /// Evaluates at `q = q0`, exactly in Q.
    pub fn specialize(&self, q0: &BigRational) -> Result<BigRational, ScalarError> {
        if q0.is_zero() || q0.abs().is_one() {
            return Err(ScalarError::BadSpecialization(q0.to_string()));
        }
        let d = self.den.eval(q0);
        if d.is_zero() {
            return Err(ScalarError::BadSpecialization(q0.to_string()));
        }
        Ok(self.num.eval(q0) / d)
    }

    /// `q^k` times an integer, when the value has that shape.
    pub fn as_signed_q_power(&self) -> Option<(BigInt, i32)> {
        if self.den.is_one() && self.num.coeffs.len() == 1 {
            Some((self.num.coeffs[0].clone(), self.num.low))
        } else {
            None
        }
    }

    fn add_impl(&self, other: &Self, negate: bool) -> Self {
        if other.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return if negate { -other } else { other.clone() };
        }
        if self.den == other.den {
            let num = self.num.add_impl(&other.num, negate);
            if self.den.is_one() {
                return Self { num, den: LaurentPoly::one() };
            }
            return Self::normalized(num, self.den.clone());
        }
        let a = &self.num * &other.den;
        let b = &other.num * &self.den;
        Self::normalized(a.add_impl(&b, negate), &self.den * &other.den)
    }

    fn mul_impl(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        if self.den.is_one() && other.den.is_one() {
            return Self { num: &self.num * &other.num, den: LaurentPoly::one() };
        }
        Self::normalized(&self.num * &other.num, &self.den * &other.den)
    }
}

/// The monomial `q^k`.
pub fn q_power(k: i32) -> LaurentFraction {
    LaurentFraction::from_poly(LaurentPoly::monomial(BigInt::one(), k))
}

/// The quantum integer `[n]_{q^d} = (q^{dn} - q^{-dn}) / (q^d - q^{-d})`.
pub fn q_int(n: u32, d: u32) -> LaurentFraction {
    let n = n as i32;
    let d = d as i32;
    LaurentFraction::from_poly(LaurentPoly::from_terms(
        (0..n).map(|k| (d * (n - 1 - 2 * k), BigInt::one())),
    ))
}

pub fn q_factorial(n: u32, d: u32) -> LaurentFraction {
    (1..=n).fold(LaurentFraction::one(), |acc, k| acc * q_int(k, d))
}

/// The symmetric quantum binomial `[n choose k]_{q^d}`.
pub fn q_binomial(n: u32, k: u32, d: u32) -> LaurentFraction {
    if k > n {
        return LaurentFraction::zero();
    }
    let den = q_factorial(k, d) * q_factorial(n - k, d);
    q_factorial(n, d) / den
}

impl Default for LaurentFraction {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<i64> for LaurentFraction {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl From<LaurentPoly> for LaurentFraction {
    fn from(p: LaurentPoly) -> Self {
        Self::from_poly(p)
    }
}

impl Zero for LaurentFraction {
    fn zero() -> Self {
        LaurentFraction::zero()
    }
    fn is_zero(&self) -> bool {
        LaurentFraction::is_zero(self)
    }
}

impl One for LaurentFraction {
    fn one() -> Self {
        LaurentFraction::one()
    }
}

impl Neg for &LaurentFraction {
    type Output = LaurentFraction;
    fn neg(self) -> LaurentFraction {
        LaurentFraction { num: -&self.num, den: self.den.clone() }
    }
}

impl Neg for LaurentFraction {
    type Output = LaurentFraction;
    fn neg(self) -> LaurentFraction {
        -&self
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $body:expr) => {
        impl $tr<&LaurentFraction> for &LaurentFraction {
            type Output = LaurentFraction;
            fn $method(self, o: &LaurentFraction) -> LaurentFraction {
                let f: fn(&LaurentFraction, &LaurentFraction) -> LaurentFraction = $body;
                f(self, o)
            }
        }
        impl $tr<LaurentFraction> for LaurentFraction {
            type Output = LaurentFraction;
            fn $method(self, o: LaurentFraction) -> LaurentFraction {
                (&self).$method(&o)
            }
        }
        impl $tr<&LaurentFraction> for LaurentFraction {
            type Output = LaurentFraction;
            fn $method(self, o: &LaurentFraction) -> LaurentFraction {
                (&self).$method(o)
            }
        }
        impl $tr<LaurentFraction> for &LaurentFraction {
            type Output = LaurentFraction;
            fn $method(self, o: LaurentFraction) -> LaurentFraction {
                self.$method(&o)
            }
        }
    };
}

forward_binop!(Add, add, |a, b| a.add_impl(b, false));
forward_binop!(Sub, sub, |a, b| a.add_impl(b, true));
forward_binop!(Mul, mul, |a, b| a.mul_impl(b));
forward_binop!(Div, div, |a, b| a.checked_div(b).expect("division by zero in Q(q)"));

impl fmt::Display for LaurentFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        if self.num.num_terms() == 1 {
            write!(f, "{}", self.num)?;
        } else {
            write!(f, "({})", self.num)?;
        }
        if self.den.num_terms() == 1 {
            write!(f, "/{}", self.den)
        } else {
            write!(f, "/({})", self.den)
        }
    }
}

impl fmt::Debug for LaurentFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl serde::Serialize for LaurentFraction {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> serde::Deserialize<'de> for LaurentFraction {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

// ---------------------------------------------------------------------------
// Parsing
// ---------------------------------------------------------------------------

/// Recursive-descent parser for expressions in q.
///
/// ```text
/// expr   := ['+'|'-'] term (('+'|'-') term)*
/// term   := unary (('*'|'/'|'·'|<juxtaposition>) unary)*
/// unary  := '-' unary | power
/// power  := atom ['^' ['-'] digits]
/// atom   := digits | 'q' | '(' expr ')'
/// ```
struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, message: impl Into<String>) -> Result<T, ScalarError> {
        Err(ScalarError::Parse { offset: self.pos, message: message.into() })
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.peek_raw() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    fn peek_raw(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.peek_raw()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += c.len_utf8();
        Some(c)
    }

    fn digits(&mut self) -> Result<BigInt, ScalarError> {
        self.skip_ws();
        let start = self.pos;
        while self.peek_raw().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected digits");
        }
        Ok(self.src[start..self.pos].parse().expect("ascii digits"))
    }

    fn expr(&mut self) -> Result<LaurentFraction, ScalarError> {
        let mut acc = match self.peek() {
            Some('-') => {
                self.bump();
                -self.term()?
            }
            Some('+') => {
                self.bump();
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some('+') => {
                    self.bump();
                    acc = acc + self.term()?;
                }
                Some('-') => {
                    self.bump();
                    acc = acc - self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<LaurentFraction, ScalarError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some('*') | Some('·') => {
                    self.bump();
                    acc = acc * self.unary()?;
                }
                Some('/') => {
                    self.bump();
                    let d = self.unary()?;
                    acc = acc.checked_div(&d).or_else(|_| self.err("division by zero"))?;
                }
                Some(c) if c == 'q' || c == '(' || c.is_ascii_digit() => {
                    acc = acc * self.unary()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<LaurentFraction, ScalarError> {
        if self.peek() == Some('-') {
            self.bump();
            return Ok(-self.unary()?);
        }
        self.power()
    }

    fn power(&mut self) -> Result<LaurentFraction, ScalarError> {
        let base = self.atom()?;
        if self.peek() != Some('^') {
            return Ok(base);
        }
        self.bump();
        let neg = if self.peek() == Some('-') {
            self.bump();
            true
        } else {
            false
        };
        let e: i64 = match i64::try_from(self.digits()?) {
            Ok(e) if e <= i32::MAX as i64 => e,
            _ => return self.err("exponent too large"),
        };
        let mut out = LaurentFraction::one();
        for _ in 0..e {
            out = out * &base;
        }
        if neg {
            out = out.inv().or_else(|_| self.err("zero raised to a negative power"))?;
        }
        Ok(out)
    }

    fn atom(&mut self) -> Result<LaurentFraction, ScalarError> {
        match self.peek() {
            Some('q') => {
                self.bump();
                Ok(q_power(1))
            }
            Some('(') => {
                self.bump();
                let e = self.expr()?;
                if self.bump() != Some(')') {
                    return self.err("expected ')'");
                }
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.digits()?;
                Ok(LaurentFraction::from_poly(LaurentPoly::monomial(n, 0)))
            }
            Some(c) => self.err(format!("unexpected character '{c}'")),
            None => self.err("unexpected end of input"),
        }
    }
}

impl FromStr for LaurentFraction {
    type Err = ScalarError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut p = Parser { src: s, pos: 0 };
        let v = p.expr()?;
        if p.peek().is_some() {
            return p.err("trailing input");
        }
        Ok(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lf(s: &str) -> LaurentFraction {
        s.parse().unwrap()
    }

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn inverse_pair() {
        assert!((q_power(1) * q_power(-1)).is_one());
    }

    #[test]
    fn self_division() {
        let a = lf("q - q^-1");
        assert!((&a / &a).is_one());
    }

    #[test]
    fn long_division_of_q_difference() {
        // (q^2 - q^-2) = (q - q^-1)(q + q^-1)
        let v = lf("q^2 - q^-2") / lf("q - q^-1");
        assert_eq!(v, lf("q + q^-1"));
        assert!(v.is_polynomial());
    }

    #[test]
    fn q_power_values() {
        assert!(q_power(0).is_one());
        assert_eq!(q_power(2).to_string(), "q^2");
        assert_eq!(q_power(-2).to_string(), "q^-2");
    }

    #[test]
    fn quantum_integers() {
        assert!(q_int(0, 1).is_zero());
        assert!(q_int(1, 1).is_one());
        assert_eq!(q_int(2, 1), lf("q + q^-1"));
        assert_eq!(q_int(3, 2), lf("q^4 + 1 + q^-4"));
        assert_eq!(q_binomial(2, 1, 1), q_int(2, 1));
        assert_eq!(q_binomial(3, 1, 2), q_int(3, 2));
        assert!(q_binomial(4, 0, 1).is_one());
    }

    #[test]
    fn specialization_examples() {
        assert_eq!(lf("q + q^-1").specialize(&rat(2, 1)).unwrap(), rat(5, 2));
        assert_eq!(LaurentFraction::one().specialize(&rat(7, 3)).unwrap(), rat(1, 1));
        let v = LaurentFraction::new(
            lf("q^2 - q^-2").numerator().clone(),
            lf("q - q^-1").numerator().clone(),
        )
        .unwrap();
        assert_eq!(v.specialize(&rat(2, 1)).unwrap(), rat(5, 2));
    }

    #[test]
    fn bad_specialization_points() {
        let a = lf("1/(q - 2)");
        assert!(matches!(a.specialize(&rat(2, 1)), Err(ScalarError::BadSpecialization(_))));
        assert!(a.specialize(&rat(1, 1)).is_err());
        assert!(a.specialize(&rat(-1, 1)).is_err());
        assert!(a.specialize(&rat(0, 1)).is_err());
    }

    #[test]
    fn division_by_zero_is_an_error() {
        assert_eq!(
            LaurentFraction::one().checked_div(&LaurentFraction::zero()),
            Err(ScalarError::DivisionByZero)
        );
        assert!(LaurentFraction::new(LaurentPoly::one(), LaurentPoly::zero()).is_err());
        assert!("1/(q - q)".parse::<LaurentFraction>().is_err());
    }

    #[test]
    fn canonical_denominator() {
        let v = lf("(q^2 - 1)/(q + 1)");
        assert_eq!(v, lf("q - 1"));
        let w = lf("1/(2 - 2*q^2)");
        assert_eq!(w.to_string(), "-1/(2*q^2 - 2)");
        assert_eq!(w.denominator().low_exp(), Some(0));
        let u = lf("q^-3/(-q^-1 + q^2)");
        assert_eq!(u.denominator().low_exp(), Some(0));
        assert!(u.denominator().terms().last().unwrap().1.is_positive());
        assert_eq!(u * lf("q^3 - 1"), lf("q^-2"));
    }

    #[test]
    fn rendering_and_parsing() {
        assert_eq!(lf("q^2 - 1 + q^-2").to_string(), "q^2 - 1 + q^-2");
        assert_eq!(lf("2q^3 - 3").to_string(), "2*q^3 - 3");
        assert_eq!(lf("-q").to_string(), "-q");
        assert_eq!(lf("1/2").to_string(), "1/2");
        assert_eq!(lf("(q^2+1)/(q+1)").to_string(), "(q^2 + 1)/(q + 1)");
        assert_eq!(lf("q^-1/2").to_string(), "q^-1/2");
        assert_eq!(lf("(q·q)^-1"), q_power(-2));
        assert!(matches!("q +".parse::<LaurentFraction>(), Err(ScalarError::Parse { .. })));
        assert!("x".parse::<LaurentFraction>().is_err());
    }

    #[test]
    fn gcd_with_content() {
        // 6q^2 - 6 over 4q + 4 reduces to 3(q - 1)/2.
        let v = lf("(6q^2 - 6)/(4q + 4)");
        assert_eq!(v, lf("3*q/2 - 3/2"));
        assert_eq!(v.to_string(), "(3*q - 3)/2");
    }
}
