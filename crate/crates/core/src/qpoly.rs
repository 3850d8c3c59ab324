//! Exact univariate polynomials and rational functions in `q`.
//!
//! [`Poly`] is a dense polynomial with [`BigRational`] coefficients and
//! [`RatQ`] is a reduced quotient of two of them. Negative powers of `q`
//! are kept in the denominator, so Laurent polynomials are just `RatQ`
//! values whose denominator is a power of `q`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Dense polynomial; `coeffs[i]` multiplies `q^i`. No trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Poly {
    coeffs: Vec<BigRational>,
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Poly::from_coeffs(vec![c])
    }

    /// `c * q^e`.
    pub fn monomial(c: BigRational, e: usize) -> Self {
        let mut v = vec![BigRational::zero(); e + 1];
        v[e] = c;
        Poly::from_coeffs(v)
    }

    pub fn from_coeffs(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    /// Integer coefficients, lowest degree first.
    pub fn from_ints(c: &[i64]) -> Self {
        Poly::from_coeffs(c.iter().map(|&x| rat(x)).collect())
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigRational {
        self.coeffs.get(i).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> BigRational {
        self.coeffs.last().cloned().unwrap_or_else(BigRational::zero)
    }

    /// Smallest exponent with a nonzero coefficient.
    pub fn low_degree(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn scale(&self, c: &BigRational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly { coeffs: self.coeffs.iter().map(|x| x * c).collect() }
    }

    /// Divide by `q^k`; the caller guarantees the low terms vanish.
    fn shift_down(&self, k: usize) -> Poly {
        Poly::from_coeffs(self.coeffs[k.min(self.coeffs.len())..].to_vec())
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let inv = self.leading().recip();
        self.scale(&inv)
    }

    /// Quotient and remainder; `d` must be nonzero.
    pub fn div_rem(&self, d: &Poly) -> (Poly, Poly) {
        assert!(!d.is_zero(), "polynomial division by zero");
        let dd = d.degree().unwrap();
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (Poly::zero(), self.clone());
        }
        let lead_inv = d.leading().recip();
        let mut q = vec![BigRational::zero(); r.len() - dd];
        for i in (0..q.len()).rev() {
            let c = &r[i + dd] * &lead_inv;
            if c.is_zero() {
                continue;
            }
            for (j, dj) in d.coeffs.iter().enumerate() {
                if !dj.is_zero() {
                    r[i + j] -= &c * dj;
                }
            }
            q[i] = c;
        }
        r.truncate(dd);
        (Poly::from_coeffs(q), Poly::from_coeffs(r))
    }

    /// Monic gcd (zero if both are zero).
    pub fn gcd(a: &Poly, b: &Poly) -> Poly {
        let (mut x, mut y) = (a.clone(), b.clone());
        while !y.is_zero() {
            let r = x.div_rem(&y).1;
            x = y;
            y = r.monic();
        }
        x.monic()
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// `f(-q)`.
    pub fn substitute_neg(&self) -> Poly {
        Poly {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() })
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, o: &Poly) -> Poly {
        let n = self.coeffs.len().max(o.coeffs.len());
        Poly::from_coeffs((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, o: &Poly) -> Poly {
        let n = self.coeffs.len().max(o.coeffs.len());
        Poly::from_coeffs((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let mut v = vec![BigRational::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    v[i + j] += a * b;
                }
            }
        }
        Poly::from_coeffs(v)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

/// Exact rational function in `q`.
///
/// Canonical form: `num` and `den` are coprime ordinary polynomials, `den`
/// is monic, and zero is `0/1`. Two values are equal iff their fields are.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RatQ {
    num: Poly,
    den: Poly,
}

impl Default for RatQ {
    fn default() -> Self {
        RatQ::zero()
    }
}

impl RatQ {
    pub fn zero() -> Self {
        RatQ { num: Poly::zero(), den: Poly::one() }
    }

    pub fn one() -> Self {
        RatQ::from_int(1)
    }

    pub fn from_int(n: i64) -> Self {
        RatQ::from_rational(rat(n))
    }

    pub fn from_rational(c: BigRational) -> Self {
        RatQ { num: Poly::constant(c), den: Poly::one() }
    }

    pub fn from_poly(p: Poly) -> Self {
        RatQ { num: p, den: Poly::one() }
    }

    /// The indeterminate.
    pub fn q() -> Self {
        RatQ::q_pow(1)
    }

    /// `q^e` for any integer `e`.
    pub fn q_pow(e: i64) -> Self {
        if e >= 0 {
            RatQ::from_poly(Poly::monomial(BigRational::one(), e as usize))
        } else {
            RatQ { num: Poly::one(), den: Poly::monomial(BigRational::one(), (-e) as usize) }
        }
    }

    /// `num/den` in canonical form.
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(RatQ::reduce(num, den))
    }

    fn reduce(num: Poly, den: Poly) -> Self {
        if num.is_zero() {
            return RatQ::zero();
        }
        if den.degree() == Some(0) {
            let inv = den.leading().recip();
            return RatQ { num: num.scale(&inv), den: Poly::one() };
        }
        // strip common powers of q cheaply before the Euclidean gcd
        let k = num.low_degree().unwrap().min(den.low_degree().unwrap());
        let (num, den) = if k > 0 { (num.shift_down(k), den.shift_down(k)) } else { (num, den) };
        let g = Poly::gcd(&num, &den);
        let (num, den) = if g.degree() == Some(0) {
            (num, den)
        } else {
            (num.div_rem(&g).0, den.div_rem(&g).0)
        };
        let inv = den.leading().recip();
        RatQ { num: num.scale(&inv), den: den.scale(&inv) }
    }

    pub fn numer(&self) -> &Poly {
        &self.num
    }

    pub fn denom(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// True when the denominator is 1.
    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// Polynomial with integer coefficients.
    pub fn is_integral_polynomial(&self) -> bool {
        self.is_polynomial() && self.num.is_integral()
    }

    /// Laurent polynomial: denominator is a power of `q`.
    pub fn is_laurent(&self) -> bool {
        self.den.coeffs.iter().rev().skip(1).all(|c| c.is_zero())
    }

    /// Numerator as a polynomial when the denominator is 1.
    pub fn as_poly(&self) -> Option<&Poly> {
        self.is_polynomial().then_some(&self.num)
    }

    /// Constant value when the function is constant.
    pub fn as_constant(&self) -> Option<BigRational> {
        (self.is_polynomial() && self.num.degree().unwrap_or(0) == 0).then(|| self.num.coeff(0))
    }

    pub fn inv(&self) -> Result<RatQ> {
        RatQ::new(self.den.clone(), self.num.clone())
    }

    pub fn checked_div(&self, o: &RatQ) -> Result<RatQ> {
        if o.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self * &o.inv()?)
    }

    pub fn pow(&self, e: i64) -> RatQ {
        let base = if e < 0 { self.inv().expect("negative power of zero") } else { self.clone() };
        let mut acc = RatQ::one();
        for _ in 0..e.unsigned_abs() {
            acc = &acc * &base;
        }
        acc
    }

    /// `f(-q)`.
    pub fn substitute_neg_q(&self) -> RatQ {
        RatQ::reduce(self.num.substitute_neg(), self.den.substitute_neg())
    }

    pub fn evaluate(&self, x: &BigRational) -> Result<BigRational> {
        let d = self.den.eval(x);
        if d.is_zero() {
            return Err(Error::Pole(x.to_string()));
        }
        Ok(self.num.eval(x) / d)
    }

    pub fn evaluate_int(&self, x: i64) -> Result<BigRational> {
        self.evaluate(&rat(x))
    }

    pub fn scale(&self, c: &BigRational) -> RatQ {
        RatQ::reduce(self.num.scale(c), self.den.clone())
    }

    pub fn scale_int(&self, c: i64) -> RatQ {
        self.scale(&rat(c))
    }

    /// Wire format: terms `c*q^e` in decreasing exponent order, and
    /// `(num)/(den)` when the denominator is not 1.
    pub fn to_wire(&self) -> String {
        let n = wire_poly(&self.num);
        if self.den.is_one() {
            n
        } else {
            format!("({})/({})", n, wire_poly(&self.den))
        }
    }
}

fn wire_poly(p: &Poly) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (e, c) in p.coeffs.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        if out.is_empty() {
            if c.is_negative() {
                out.push('-');
            }
        } else {
            out.push_str(if c.is_negative() { " - " } else { " + " });
        }
        out.push_str(&format!("{}*q^{}", c.abs(), e));
    }
    out
}

fn pretty_poly(p: &Poly) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (e, c) in p.coeffs.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let a = c.abs();
        if out.is_empty() {
            if c.is_negative() {
                out.push('-');
            }
        } else {
            out.push_str(if c.is_negative() { " - " } else { " + " });
        }
        let mono = match e {
            0 => String::new(),
            1 => "q".into(),
            _ => format!("q^{e}"),
        };
        if mono.is_empty() {
            out.push_str(&a.to_string());
        } else if a.is_one() {
            out.push_str(&mono);
        } else {
            out.push_str(&format!("{a}*{mono}"));
        }
    }
    out
}

impl fmt::Display for RatQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", pretty_poly(&self.num))
        } else {
            write!(f, "({})/({})", pretty_poly(&self.num), pretty_poly(&self.den))
        }
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", pretty_poly(self))
    }
}

// --- parsing -------------------------------------------------------------

struct Parser<'a> {
    s: &'a [u8],
    i: usize,
}

impl<'a> Parser<'a> {
    fn err(&self, what: &str) -> Error {
        Error::Parse(format!("{what} at byte {} of {:?}", self.i, String::from_utf8_lossy(self.s)))
    }

    fn skip_ws(&mut self) {
        while self.i < self.s.len() && self.s[self.i].is_ascii_whitespace() {
            self.i += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.i).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.i += 1;
            true
        } else {
            false
        }
    }

    fn integer(&mut self) -> Option<BigInt> {
        self.skip_ws();
        let start = self.i;
        while self.i < self.s.len() && self.s[self.i].is_ascii_digit() {
            self.i += 1;
        }
        if start == self.i {
            return None;
        }
        std::str::from_utf8(&self.s[start..self.i]).ok()?.parse().ok()
    }

    fn signed_exponent(&mut self) -> Result<i64> {
        let neg = self.eat(b'-');
        if !neg {
            self.eat(b'+');
        }
        let e = self.integer().ok_or_else(|| self.err("expected exponent"))?;
        let e = e.to_i64().ok_or_else(|| self.err("exponent out of range"))?;
        Ok(if neg { -e } else { e })
    }

    /// sum := term (('+'|'-') term)*
    fn sum(&mut self) -> Result<RatQ> {
        let mut acc = RatQ::zero();
        let mut first = true;
        loop {
            let sign = if self.eat(b'-') {
                -1
            } else if self.eat(b'+') || first {
                1
            } else {
                break;
            };
            first = false;
            let t = self.term()?;
            acc = if sign < 0 { &acc - &t } else { &acc + &t };
            match self.peek() {
                Some(b'+') | Some(b'-') => continue,
                _ => break,
            }
        }
        Ok(acc)
    }

    /// term := factor ('*' factor)*, factor := primary ['^' int], primary := coeff | 'q' | '(' sum ')'
    fn term(&mut self) -> Result<RatQ> {
        let mut acc = self.factor()?;
        loop {
            if self.eat(b'*') {
                let f = self.factor()?;
                acc = &acc * &f;
            } else if self.peek() == Some(b'q') || self.peek() == Some(b'(') {
                let f = self.factor()?;
                acc = &acc * &f;
            } else {
                break;
            }
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<RatQ> {
        let base = self.primary()?;
        if self.eat(b'^') {
            let e = self.signed_exponent()?;
            if e < 0 && base.is_zero() {
                return Err(Error::DivisionByZero);
            }
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn primary(&mut self) -> Result<RatQ> {
        match self.peek() {
            Some(b'q') => {
                self.i += 1;
                Ok(RatQ::q())
            }
            Some(b'(') => {
                self.i += 1;
                let v = self.sum()?;
                if !self.eat(b')') {
                    return Err(self.err("expected ')'"));
                }
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer().unwrap();
                let save = self.i;
                // a '/' followed by digits belongs to the coefficient
                if self.eat(b'/') {
                    if let Some(d) = self.integer() {
                        if d.is_zero() {
                            return Err(Error::DivisionByZero);
                        }
                        return Ok(RatQ::from_rational(BigRational::new(n, d)));
                    }
                    self.i = save;
                }
                Ok(RatQ::from_rational(BigRational::from_integer(n)))
            }
            _ => Err(self.err("expected a term")),
        }
    }

    /// expr := sum ('/' factor)?
    fn expr(&mut self) -> Result<RatQ> {
        let n = self.sum()?;
        if self.eat(b'/') {
            let d = self.factor()?;
            return n.checked_div(&d);
        }
        Ok(n)
    }
}

impl FromStr for RatQ {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let mut p = Parser { s: s.as_bytes(), i: 0 };
        let v = p.expr()?;
        p.skip_ws();
        if p.i != s.len() {
            return Err(p.err("trailing input"));
        }
        Ok(v)
    }
}

impl serde::Serialize for RatQ {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_wire())
    }
}

impl<'de> serde::Deserialize<'de> for RatQ {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

// --- arithmetic ------------------------------------------------------------

impl Add for &RatQ {
    type Output = RatQ;
    fn add(self, o: &RatQ) -> RatQ {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.den == o.den {
            return RatQ::reduce(&self.num + &o.num, self.den.clone());
        }
        RatQ::reduce(&(&self.num * &o.den) + &(&o.num * &self.den), &self.den * &o.den)
    }
}

impl Sub for &RatQ {
    type Output = RatQ;
    fn sub(self, o: &RatQ) -> RatQ {
        self + &(-o)
    }
}

impl Mul for &RatQ {
    type Output = RatQ;
    fn mul(self, o: &RatQ) -> RatQ {
        if self.is_zero() || o.is_zero() {
            return RatQ::zero();
        }
        if self.den.is_one() && o.den.is_one() {
            return RatQ { num: &self.num * &o.num, den: Poly::one() };
        }
        RatQ::reduce(&self.num * &o.num, &self.den * &o.den)
    }
}

impl Div for &RatQ {
    type Output = RatQ;
    /// Panics on a zero divisor; use [`RatQ::checked_div`] for a `Result`.
    fn div(self, o: &RatQ) -> RatQ {
        self.checked_div(o).expect("RatQ division by zero")
    }
}

impl Neg for &RatQ {
    type Output = RatQ;
    fn neg(self) -> RatQ {
        RatQ { num: -&self.num, den: self.den.clone() }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for RatQ {
            type Output = RatQ;
            fn $m(self, o: RatQ) -> RatQ {
                (&self).$m(&o)
            }
        }
        impl $tr<&RatQ> for RatQ {
            type Output = RatQ;
            fn $m(self, o: &RatQ) -> RatQ {
                (&self).$m(o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Neg for RatQ {
    type Output = RatQ;
    fn neg(self) -> RatQ {
        -&self
    }
}

impl std::iter::Sum for RatQ {
    fn sum<I: Iterator<Item = RatQ>>(iter: I) -> RatQ {
        iter.fold(RatQ::zero(), |a, b| &a + &b)
    }
}

impl std::iter::Product for RatQ {
    fn product<I: Iterator<Item = RatQ>>(iter: I) -> RatQ {
        iter.fold(RatQ::one(), |a, b| &a * &b)
    }
}

/// Total order used only for deterministic sorting of keys.
pub fn canonical_cmp(a: &RatQ, b: &RatQ) -> Ordering {
    a.to_wire().cmp(&b.to_wire())
}

/// `q^k - c` as a polynomial.
pub fn q_pow_minus(k: usize, c: i64) -> RatQ {
    let mut p = Poly::monomial(BigRational::one(), k);
    p = &p - &Poly::from_ints(&[c]);
    RatQ::from_poly(p)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> RatQ {
        s.parse().unwrap()
    }

    #[test]
    fn basic_arith() {
        assert_eq!(p("q-1") + RatQ::one(), RatQ::q());
        assert_eq!(p("q^2-1") / p("q-1"), p("q+1"));
        assert_eq!(p("q^3-1") / p("q-1"), p("q^2+q+1"));
        assert!(p("q^2 - 1").checked_div(&RatQ::zero()).is_err());
    }

    #[test]
    fn neg_q() {
        assert_eq!(p("q^2").substitute_neg_q(), p("q^2"));
        assert_eq!(RatQ::q().substitute_neg_q(), p("-q"));
        assert_eq!(p("(q^3+1)/(q+1)").substitute_neg_q(), p("q^2+q+1"));
    }

    #[test]
    fn evaluation() {
        assert_eq!(p("q^2-1").evaluate_int(3).unwrap(), rat(8));
        assert_eq!(RatQ::q().evaluate_int(2).unwrap(), rat(2));
        assert_eq!(p("q^2+q+1").evaluate_int(2).unwrap(), rat(7));
        assert!(p("1/(q-2)").evaluate_int(2).is_err());
    }

    #[test]
    fn laurent_terms() {
        let x = RatQ::q_pow(-3) * p("q^5 + q^3");
        assert_eq!(x, p("q^2+1"));
        let y = RatQ::q_pow(-2) + RatQ::one();
        assert!(y.is_laurent());
        assert!(!y.is_polynomial());
        assert_eq!(y.denom(), &Poly::from_ints(&[0, 0, 1]));
    }

    #[test]
    fn wire_round_trip() {
        for s in ["0", "1", "-q", "q^2 - 1", "(3/2)*q^4 - q + 7", "(q^3 + 1)/(q^2 - 1/3)", "q^-2"] {
            let v = p(s);
            let w = v.to_wire();
            assert_eq!(p(&w), v, "{s} -> {w}");
        }
        assert_eq!(p("q^2-1").to_wire(), "1*q^2 - 1*q^0");
    }

    #[test]
    fn canonical_denominator_is_monic() {
        let v = RatQ::new(Poly::from_ints(&[2]), Poly::from_ints(&[0, 4])).unwrap();
        assert!(v.denom().leading().is_one());
        assert_eq!(v, p("1/2 * q^-1"));
    }
}
