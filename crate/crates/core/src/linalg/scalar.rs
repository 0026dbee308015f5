//! Exact scalars over the three supported involutive fields.
//!
//! * `Q`: rationals, identity involution.
//! * `Qi`: Gaussian rationals `a + bi`, involution is complex conjugation.
//! * `GF(p)`: prime field residues, identity involution.
//!
//! Every scalar is kept in canonical form, so derived equality is value
//! equality.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// A modulus that has been checked to be prime.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Prime(u64);

impl Prime {
    pub fn new(p: u64) -> Result<Self> {
        if is_prime(p) {
            Ok(Prime(p))
        } else {
            Err(Error::NotPrime(p))
        }
    }

    pub fn get(self) -> u64 {
        self.0
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Which field the scalars of a matrix live in, together with its involution.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FieldDescriptor {
    Rationals,
    GaussianRationals,
    PrimeField(Prime),
}

impl FieldDescriptor {
    /// `GF(p)`; fails unless `p` is prime.
    pub fn prime(p: u64) -> Result<Self> {
        Prime::new(p).map(FieldDescriptor::PrimeField)
    }

    pub fn modulus(self) -> Option<u64> {
        match self {
            FieldDescriptor::PrimeField(p) => Some(p.get()),
            _ => None,
        }
    }

    pub fn zero(self) -> Scalar {
        match self {
            FieldDescriptor::Rationals => Scalar::Rational(BigRational::zero()),
            FieldDescriptor::GaussianRationals => Scalar::Gaussian(GaussianRational::zero()),
            FieldDescriptor::PrimeField(p) => Scalar::Residue { value: 0, modulus: p },
        }
    }

    pub fn one(self) -> Scalar {
        self.from_int(1)
    }

    pub fn from_int(self, n: i64) -> Scalar {
        match self {
            FieldDescriptor::Rationals => Scalar::Rational(BigRational::from_integer(n.into())),
            FieldDescriptor::GaussianRationals => Scalar::Gaussian(GaussianRational::new(
                BigRational::from_integer(n.into()),
                BigRational::zero(),
            )),
            FieldDescriptor::PrimeField(p) => Scalar::Residue {
                value: n.rem_euclid(p.get() as i64) as u64,
                modulus: p,
            },
        }
    }

    /// Short tag used in the matrix JSON format.
    pub fn tag(self) -> &'static str {
        match self {
            FieldDescriptor::Rationals => "Q",
            FieldDescriptor::GaussianRationals => "Qi",
            FieldDescriptor::PrimeField(_) => "GF",
        }
    }

    /// Every element of a prime field, in increasing residue order.
    pub fn elements(self) -> Option<Vec<Scalar>> {
        match self {
            FieldDescriptor::PrimeField(p) => Some(
                (0..p.get())
                    .map(|value| Scalar::Residue { value, modulus: p })
                    .collect(),
            ),
            _ => None,
        }
    }

    /// Parse a scalar written in this field's text grammar.
    pub fn parse(self, text: &str) -> Result<Scalar> {
        parse_scalar(text, self)
    }
}

impl fmt::Display for FieldDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldDescriptor::Rationals => f.write_str("Q"),
            FieldDescriptor::GaussianRationals => f.write_str("Q(i)"),
            FieldDescriptor::PrimeField(p) => write!(f, "GF({})", p.get()),
        }
    }
}

/// `re + im·i` with rational parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GaussianRational {
    pub re: BigRational,
    pub im: BigRational,
}

impl GaussianRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        GaussianRational { re, im }
    }

    pub fn zero() -> Self {
        GaussianRational::new(BigRational::zero(), BigRational::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        GaussianRational::new(self.re.clone(), -&self.im)
    }

    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let norm = &self.re * &self.re + &self.im * &self.im;
        Some(GaussianRational::new(&self.re / &norm, -&self.im / &norm))
    }
}

/// One exact field element. The variant always matches the owning matrix's
/// [`FieldDescriptor`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Gaussian(GaussianRational),
    Residue { value: u64, modulus: Prime },
}

impl Scalar {
    pub fn field(&self) -> FieldDescriptor {
        match self {
            Scalar::Rational(_) => FieldDescriptor::Rationals,
            Scalar::Gaussian(_) => FieldDescriptor::GaussianRationals,
            Scalar::Residue { modulus, .. } => FieldDescriptor::PrimeField(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_zero(),
            Scalar::Gaussian(g) => g.is_zero(),
            Scalar::Residue { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_one(),
            Scalar::Gaussian(g) => g.re.is_one() && g.im.is_zero(),
            Scalar::Residue { value, .. } => *value == 1,
        }
    }

    /// The field involution: complex conjugation on `Qi`, identity elsewhere.
    pub fn star(&self) -> Scalar {
        match self {
            Scalar::Gaussian(g) => Scalar::Gaussian(g.conj()),
            other => other.clone(),
        }
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inv(&self) -> Option<Scalar> {
        match self {
            Scalar::Rational(q) => (!q.is_zero()).then(|| Scalar::Rational(q.recip())),
            Scalar::Gaussian(g) => g.inv().map(Scalar::Gaussian),
            Scalar::Residue { value, modulus } => {
                if *value == 0 {
                    return None;
                }
                let p = modulus.get();
                Some(Scalar::Residue {
                    value: pow_mod(*value, p - 2, p),
                    modulus: *modulus,
                })
            }
        }
    }

    pub fn checked_div(&self, rhs: &Scalar) -> Result<Scalar> {
        let inv = rhs.inv().ok_or(Error::DivisionByZero)?;
        Ok(self * &inv)
    }
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

fn field_mismatch(a: &Scalar, b: &Scalar) -> ! {
    panic!("scalar field mismatch: {} vs {}", a.field(), b.field())
}

impl Add for &Scalar {
    type Output = Scalar;

    fn add(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (Scalar::Gaussian(a), Scalar::Gaussian(b)) => {
                Scalar::Gaussian(GaussianRational::new(&a.re + &b.re, &a.im + &b.im))
            }
            (Scalar::Residue { value: a, modulus: p }, Scalar::Residue { value: b, modulus: q })
                if p == q =>
            {
                Scalar::Residue {
                    value: ((*a as u128 + *b as u128) % p.get() as u128) as u64,
                    modulus: *p,
                }
            }
            _ => field_mismatch(self, rhs),
        }
    }
}

impl Sub for &Scalar {
    type Output = Scalar;

    fn sub(self, rhs: &Scalar) -> Scalar {
        self + &(-rhs)
    }
}

impl Mul for &Scalar {
    type Output = Scalar;

    fn mul(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::Gaussian(a), Scalar::Gaussian(b)) => Scalar::Gaussian(GaussianRational::new(
                &a.re * &b.re - &a.im * &b.im,
                &a.re * &b.im + &a.im * &b.re,
            )),
            (Scalar::Residue { value: a, modulus: p }, Scalar::Residue { value: b, modulus: q })
                if p == q =>
            {
                Scalar::Residue {
                    value: mul_mod(*a, *b, p.get()),
                    modulus: *p,
                }
            }
            _ => field_mismatch(self, rhs),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;

    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(q) => Scalar::Rational(-q),
            Scalar::Gaussian(g) => Scalar::Gaussian(GaussianRational::new(-&g.re, -&g.im)),
            Scalar::Residue { value, modulus } => Scalar::Residue {
                value: (modulus.get() - value) % modulus.get(),
                modulus: *modulus,
            },
        }
    }
}

fn fmt_rational(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl fmt::Display for Scalar {
    /// Canonical text: `a`, `a/b`, `re+imi`, `re-imi`, `imi`, or a residue.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(q) => f.write_str(&fmt_rational(q)),
            Scalar::Residue { value, .. } => write!(f, "{value}"),
            Scalar::Gaussian(g) => {
                if g.im.is_zero() {
                    return f.write_str(&fmt_rational(&g.re));
                }
                let mag = g.im.abs();
                let coeff = if mag.is_one() { String::new() } else { fmt_rational(&mag) };
                let sign = if g.im.is_negative() { "-" } else { "+" };
                if g.re.is_zero() {
                    let lead = if g.im.is_negative() { "-" } else { "" };
                    write!(f, "{lead}{coeff}i")
                } else {
                    write!(f, "{}{sign}{coeff}i", fmt_rational(&g.re))
                }
            }
        }
    }
}

fn parse_rational(text: &str) -> Result<BigRational> {
    let malformed = || Error::MalformedScalar(text.to_string());
    let (negative, body) = match text.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, text),
    };
    let digits = |s: &str| -> Result<BigInt> {
        if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
            return Err(malformed());
        }
        s.parse::<BigInt>().map_err(|_| malformed())
    };
    let value = match body.split_once('/') {
        Some((num, den)) => {
            let num = digits(num)?;
            let den = digits(den)?;
            if den.is_zero() {
                return Err(Error::ZeroDenominator(text.to_string()));
            }
            BigRational::new(num, den)
        }
        None => BigRational::from_integer(digits(body)?),
    };
    Ok(if negative { -value } else { value })
}

/// Coefficient of `i`: empty text (bare `i`) means 1, `-` alone means -1.
fn parse_imaginary_coeff(text: &str) -> Result<BigRational> {
    match text {
        "" | "+" => Ok(BigRational::one()),
        "-" => Ok(-BigRational::one()),
        _ => parse_rational(text.strip_prefix('+').unwrap_or(text)),
    }
}

/// Parse scalar text in the grammar of `field`. The Unicode minus sign is
/// accepted wherever `-` is.
pub fn parse_scalar(text: &str, field: FieldDescriptor) -> Result<Scalar> {
    let normalized: String = text.trim().replace('\u{2212}', "-");
    let s = normalized.as_str();
    if s.is_empty() {
        return Err(Error::MalformedScalar(text.to_string()));
    }
    match field {
        FieldDescriptor::Rationals => {
            if s.contains('i') {
                return Err(Error::MalformedScalar(text.to_string()));
            }
            parse_rational(s).map(Scalar::Rational)
        }
        FieldDescriptor::GaussianRationals => {
            let Some(body) = s.strip_suffix('i') else {
                return parse_rational(s)
                    .map(|re| Scalar::Gaussian(GaussianRational::new(re, BigRational::zero())));
            };
            if body.contains('i') {
                return Err(Error::MalformedScalar(text.to_string()));
            }
            // The real/imaginary split is the last sign that is not leading.
            let split = body
                .char_indices()
                .skip(1)
                .filter(|(_, c)| *c == '+' || *c == '-')
                .map(|(idx, _)| idx)
                .last();
            let (re, im) = match split {
                Some(idx) => (parse_rational(&body[..idx])?, parse_imaginary_coeff(&body[idx..])?),
                None => (BigRational::zero(), parse_imaginary_coeff(body)?),
            };
            Ok(Scalar::Gaussian(GaussianRational::new(re, im)))
        }
        FieldDescriptor::PrimeField(p) => {
            if s.contains('/') {
                return Err(Error::MalformedScalar(text.to_string()));
            }
            let q = parse_rational(s)?;
            let modulus = BigInt::from(p.get());
            let value = q.numer().mod_floor_positive(&modulus);
            Ok(Scalar::Residue { value, modulus: p })
        }
    }
}

trait ModFloor {
    fn mod_floor_positive(&self, m: &BigInt) -> u64;
}

impl ModFloor for BigInt {
    fn mod_floor_positive(&self, m: &BigInt) -> u64 {
        use num_integer::Integer;
        use num_traits::ToPrimitive;
        self.mod_floor(m).to_u64().expect("residue fits the modulus")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn parses_rationals() {
        let f = FieldDescriptor::Rationals;
        assert_eq!(parse_scalar("3/4", f).unwrap(), Scalar::Rational(q(3, 4)));
        assert_eq!(parse_scalar("-6/8", f).unwrap(), Scalar::Rational(q(-3, 4)));
        assert_eq!(parse_scalar("\u{2212}2", f).unwrap(), Scalar::Rational(q(-2, 1)));
        assert!(matches!(parse_scalar("1/0", f), Err(Error::ZeroDenominator(_))));
        assert!(parse_scalar("1//2", f).is_err());
        assert!(parse_scalar("i", f).is_err());
        assert!(parse_scalar("", f).is_err());
        assert!(parse_scalar("--1", f).is_err());
    }

    #[test]
    fn parses_gaussian_rationals() {
        let f = FieldDescriptor::GaussianRationals;
        let g = |re, im| Scalar::Gaussian(GaussianRational::new(re, im));
        assert_eq!(parse_scalar("1/2-2/3i", f).unwrap(), g(q(1, 2), q(-2, 3)));
        assert_eq!(parse_scalar("i", f).unwrap(), g(q(0, 1), q(1, 1)));
        assert_eq!(parse_scalar("-i", f).unwrap(), g(q(0, 1), q(-1, 1)));
        assert_eq!(parse_scalar("1+i", f).unwrap(), g(q(1, 1), q(1, 1)));
        assert_eq!(parse_scalar("-3-i", f).unwrap(), g(q(-3, 1), q(-1, 1)));
        assert_eq!(parse_scalar("5", f).unwrap(), g(q(5, 1), q(0, 1)));
        assert!(parse_scalar("1+2/0i", f).is_err());
        assert!(parse_scalar("ii", f).is_err());
        assert!(parse_scalar("1+", f).is_err());
    }

    #[test]
    fn parses_residues() {
        let f = FieldDescriptor::prime(5).unwrap();
        assert_eq!(parse_scalar("7", f).unwrap().to_string(), "2");
        assert_eq!(parse_scalar("-1", f).unwrap().to_string(), "4");
        assert!(parse_scalar("1/2", f).is_err());
        assert!(parse_scalar("i", f).is_err());
    }

    #[test]
    fn rejects_composite_moduli() {
        assert!(FieldDescriptor::prime(1).is_err());
        assert!(FieldDescriptor::prime(4).is_err());
        assert!(FieldDescriptor::prime(91).is_err());
        assert!(FieldDescriptor::prime(97).is_ok());
    }

    #[test]
    fn canonical_printing() {
        let f = FieldDescriptor::GaussianRationals;
        for text in ["0", "i", "-i", "1+i", "1/2-2/3i", "-7/3i", "4", "-1/2+i"] {
            assert_eq!(parse_scalar(text, f).unwrap().to_string(), text);
        }
        assert_eq!(parse_scalar("0+2i", f).unwrap().to_string(), "2i");
        assert_eq!(parse_scalar("3+0i", f).unwrap().to_string(), "3");
    }

    #[test]
    fn inverses_and_division() {
        let f = FieldDescriptor::GaussianRationals;
        let z = parse_scalar("1+i", f).unwrap();
        let inv = z.inv().unwrap();
        assert_eq!(inv.to_string(), "1/2-1/2i");
        assert!((&z * &inv).is_one());
        assert!(matches!(
            f.one().checked_div(&f.zero()),
            Err(Error::DivisionByZero)
        ));
        let gf3 = FieldDescriptor::prime(3).unwrap();
        assert_eq!(gf3.from_int(2).inv().unwrap(), gf3.from_int(2));
        assert!(gf3.zero().inv().is_none());
    }

    #[test]
    fn conjugation_is_an_involutive_automorphism() {
        let f = FieldDescriptor::GaussianRationals;
        let xs: Vec<Scalar> = ["1/2-2/3i", "i", "-3", "2+5i"]
            .iter()
            .map(|t| parse_scalar(t, f).unwrap())
            .collect();
        for a in &xs {
            assert_eq!(a.star().star(), *a);
            for b in &xs {
                assert_eq!((a + b).star(), &a.star() + &b.star());
                assert_eq!((a * b).star(), &a.star() * &b.star());
            }
        }
    }
}
