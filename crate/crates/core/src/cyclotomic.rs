//! Exact arithmetic in the 8th cyclotomic field `Q(z)`, `z = e(1/8)`.
//!
//! Elements are stored on the power basis `{1, z, z^2, z^3}` and reduced
//! with `z^4 = -1`. [`Cyclo8`] carries arbitrary-precision rationals and is
//! the exact type used throughout the public API. [`IntCyclo`] is the ring
//! of integers `Z[z]` with machine-word coordinates and checked arithmetic,
//! used by the hot loops on scaled dyadic data.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::{self, Deserializer};
use serde::ser::{SerializeSeq, Serializer};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An element `c0 + c1*z + c2*z^2 + c3*z^3` of `Q(z)` with `z = e(1/8)`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Cyclo8 {
    c: [BigRational; 4],
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl Cyclo8 {
    pub fn new(c: [BigRational; 4]) -> Self {
        Cyclo8 { c }
    }

    pub fn from_ints(c: [i64; 4]) -> Self {
        Cyclo8 { c: c.map(rat) }
    }

    pub fn from_integer(n: i64) -> Self {
        Self::from_rational(rat(n))
    }

    pub fn from_bigint(n: BigInt) -> Self {
        Self::from_rational(BigRational::from_integer(n))
    }

    pub fn from_rational(r: BigRational) -> Self {
        Cyclo8 { c: [r, BigRational::zero(), BigRational::zero(), BigRational::zero()] }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_integer(1)
    }

    /// The primitive root `z = e(1/8)`.
    pub fn z() -> Self {
        Self::from_ints([0, 1, 0, 0])
    }

    /// `sqrt(2) = z - z^3`.
    pub fn sqrt2() -> Self {
        Self::from_ints([0, 1, 0, -1])
    }

    /// `e(k/8)`, with `k` taken mod 8.
    pub fn root_of_unity(k: i64) -> Self {
        let k = k.rem_euclid(8) as usize;
        let mut c = [0i64; 4];
        if k < 4 {
            c[k] = 1;
        } else {
            c[k - 4] = -1;
        }
        Self::from_ints(c)
    }

    /// `2^(-m/2)`, using `sqrt(2) = z - z^3` for odd `m`.
    pub fn inv_sqrt_pow2(m: u32) -> Self {
        let half = m / 2;
        if m % 2 == 0 {
            Self::from_rational(BigRational::new(BigInt::one(), BigInt::one() << half))
        } else {
            // 2^(-m/2) = sqrt(2) / 2^((m+1)/2)
            let scale = BigRational::new(BigInt::one(), BigInt::one() << (half + 1));
            Self::sqrt2().scale(&scale)
        }
    }

    pub fn coeffs(&self) -> &[BigRational; 4] {
        &self.c
    }

    pub fn coeff(&self, i: usize) -> &BigRational {
        &self.c[i]
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.c[0].is_one() && self.c[1..].iter().all(Zero::is_zero)
    }

    /// True when the element lies in `Q`.
    pub fn is_rational(&self) -> bool {
        self.c[1..].iter().all(Zero::is_zero)
    }

    /// The rational value, if the element lies in `Q`.
    pub fn as_rational(&self) -> Option<&BigRational> {
        self.is_rational().then_some(&self.c[0])
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        Cyclo8 { c: [&self.c[0] * r, &self.c[1] * r, &self.c[2] * r, &self.c[3] * r] }
    }

    /// Multiplication by `z^k`: a signed rotation of the coordinates.
    pub fn mul_root(&self, k: i64) -> Self {
        let k = k.rem_euclid(8) as usize;
        let mut out: [BigRational; 4] = Default::default();
        for (j, cj) in self.c.iter().enumerate() {
            let p = (j + k) % 8;
            if p < 4 {
                out[p] = cj.clone();
            } else {
                out[p - 4] = -cj;
            }
        }
        Cyclo8 { c: out }
    }

    /// Galois automorphism `z -> z^k` for odd `k`.
    pub fn galois(&self, k: i64) -> Self {
        debug_assert!(k % 2 != 0);
        let mut out = Cyclo8::zero();
        for (j, cj) in self.c.iter().enumerate() {
            if !cj.is_zero() {
                out += Cyclo8::root_of_unity(k * j as i64).scale(cj);
            }
        }
        out
    }

    /// Complex conjugation, `z -> z^-1`.
    pub fn conj(&self) -> Self {
        let [c0, c1, c2, c3] = &self.c;
        Cyclo8 { c: [c0.clone(), -c3, -c2, -c1] }
    }

    /// Field norm down to `Q`.
    pub fn norm(&self) -> BigRational {
        let n = self * &self.galois(3) * self.galois(5) * self.galois(7);
        debug_assert!(n.is_rational());
        n.c[0].clone()
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let cofactor = self.galois(3) * self.galois(5) * self.galois(7);
        let n = (self * &cofactor).c[0].clone();
        Ok(cofactor.scale(&n.recip()))
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Cyclo8::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Splits into an integral element over `Z[z]` and a power-of-two
    /// denominator exponent, if every coordinate is dyadic.
    pub fn to_dyadic(&self) -> Option<(IntCyclo, u32)> {
        let mut exp = 0u32;
        for c in &self.c {
            let d = c.denom();
            let tz = d.trailing_zeros().unwrap_or(0);
            if (d >> tz) != BigInt::one() {
                return None;
            }
            exp = exp.max(tz as u32);
        }
        let mut out = [0i128; 4];
        for (o, c) in out.iter_mut().zip(&self.c) {
            let scaled = c * BigRational::from_integer(BigInt::one() << exp);
            *o = scaled.to_integer().to_i128()?;
        }
        Some((IntCyclo(out), exp))
    }

    pub fn from_dyadic(x: &IntCyclo, exp: u32) -> Self {
        let den = BigInt::one() << exp;
        Cyclo8 { c: x.0.map(|v| BigRational::new(BigInt::from(v), den.clone())) }
    }

    /// Approximate complex value, for debugging output only.
    pub fn to_complex_f64(&self) -> (f64, f64) {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let v: Vec<f64> = self.c.iter().map(|r| r.to_f64().unwrap_or(f64::NAN)).collect();
        (v[0] + h * v[1] - h * v[3], h * v[1] + v[2] + h * v[3])
    }

    fn mul_impl(a: &Cyclo8, b: &Cyclo8) -> Cyclo8 {
        let mut acc: [BigInt; 4] = Default::default();
        // Common-denominator convolution keeps the number of gcd reductions to four.
        let den_a = a.c.iter().fold(BigInt::one(), |l, r| l.lcm(r.denom()));
        let den_b = b.c.iter().fold(BigInt::one(), |l, r| l.lcm(r.denom()));
        let na: Vec<BigInt> = a.c.iter().map(|r| r.numer() * (&den_a / r.denom())).collect();
        let nb: Vec<BigInt> = b.c.iter().map(|r| r.numer() * (&den_b / r.denom())).collect();
        for i in 0..4 {
            if na[i].is_zero() {
                continue;
            }
            for j in 0..4 {
                if nb[j].is_zero() {
                    continue;
                }
                let p = &na[i] * &nb[j];
                if i + j < 4 {
                    acc[i + j] += p;
                } else {
                    acc[i + j - 4] -= p;
                }
            }
        }
        let den = den_a * den_b;
        Cyclo8 { c: acc.map(|n| BigRational::new(n, den.clone())) }
    }
}

impl fmt::Debug for Cyclo8 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cyclo8({self})")
    }
}

/// Text form: nonzero terms in ascending powers, e.g. `1/4*z + 1/4*z^3`.
impl fmt::Display for Cyclo8 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.c.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            let var = match k {
                0 => String::new(),
                1 => "z".to_string(),
                _ => format!("z^{k}"),
            };
            if k == 0 {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                f.write_str(&var)?;
            } else {
                write!(f, "{mag}*{var}")?;
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("bad rational {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(Error::DivisionByZero);
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

fn parse_term(term: &str) -> Result<Cyclo8> {
    let term = term.trim();
    let bad = || Error::Parse(format!("bad term {term:?}"));
    if term.is_empty() {
        return Err(bad());
    }
    let (coef, var) = match term.find('z') {
        None => (term, None),
        Some(pos) => {
            let coef = term[..pos].trim().trim_end_matches('*').trim();
            (coef, Some(term[pos + 1..].trim()))
        }
    };
    let c = if coef.is_empty() { BigRational::one() } else { parse_rational(coef)? };
    let power = match var {
        None => 0,
        Some("") => 1,
        Some(rest) => {
            let p = rest.strip_prefix('^').ok_or_else(bad)?;
            p.trim().parse::<i64>().map_err(|_| bad())?
        }
    };
    Ok(Cyclo8::root_of_unity(power).scale(&c))
}

impl FromStr for Cyclo8 {
    type Err = Error;

    /// Accepts any signed sum of terms `q`, `q*z^k`, `z^k`, `q z` in any order.
    fn from_str(s: &str) -> Result<Self> {
        let mut out = Cyclo8::zero();
        let mut sign = 1i64;
        let mut cur = String::new();
        let mut seen_any = false;
        let flush = |cur: &mut String, sign: i64, out: &mut Cyclo8| -> Result<()> {
            let t = parse_term(cur)?;
            *out += if sign < 0 { -t } else { t };
            cur.clear();
            Ok(())
        };
        for ch in s.chars() {
            match ch {
                '+' | '-' => {
                    if !cur.trim().is_empty() {
                        flush(&mut cur, sign, &mut out)?;
                        sign = 1;
                    }
                    if ch == '-' {
                        sign = -sign;
                    }
                }
                _ => {
                    if !ch.is_whitespace() {
                        seen_any = true;
                    }
                    cur.push(ch)
                }
            }
        }
        if !seen_any {
            return Err(Error::Parse(format!("empty cyclotomic literal {s:?}")));
        }
        if !cur.trim().is_empty() {
            flush(&mut cur, sign, &mut out)?;
        } else {
            return Err(Error::Parse(format!("dangling sign in {s:?}")));
        }
        Ok(out)
    }
}

fn bigint_to_json(n: &BigInt) -> serde_json::Value {
    match n.to_i64() {
        Some(v) => serde_json::Value::from(v),
        None => serde_json::Value::from(n.to_string()),
    }
}

fn bigint_from_json<E: de::Error>(v: &serde_json::Value) -> std::result::Result<BigInt, E> {
    match v {
        serde_json::Value::Number(n) => n
            .as_i64()
            .map(BigInt::from)
            .ok_or_else(|| E::custom(format!("non-integer {n}"))),
        serde_json::Value::String(s) => s.parse().map_err(|_| E::custom(format!("bad integer {s:?}"))),
        other => Err(E::custom(format!("expected integer, got {other}"))),
    }
}

/// JSON form: four `[num, den]` pairs.
impl Serialize for Cyclo8 {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(4))?;
        for c in &self.c {
            seq.serialize_element(&[bigint_to_json(c.numer()), bigint_to_json(c.denom())])?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for Cyclo8 {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw: Vec<[serde_json::Value; 2]> = Vec::deserialize(d)?;
        if raw.len() != 4 {
            return Err(de::Error::custom(format!("expected 4 coefficients, got {}", raw.len())));
        }
        let mut c: [BigRational; 4] = Default::default();
        for (slot, [n, den]) in c.iter_mut().zip(&raw) {
            let n = bigint_from_json::<D::Error>(n)?;
            let den = bigint_from_json::<D::Error>(den)?;
            if den.is_zero() {
                return Err(de::Error::custom("zero denominator"));
            }
            *slot = BigRational::new(n, den);
        }
        Ok(Cyclo8 { c })
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $body:expr) => {
        impl $trait<&Cyclo8> for &Cyclo8 {
            type Output = Cyclo8;
            fn $method(self, rhs: &Cyclo8) -> Cyclo8 {
                $body(self, rhs)
            }
        }
        impl $trait<Cyclo8> for Cyclo8 {
            type Output = Cyclo8;
            fn $method(self, rhs: Cyclo8) -> Cyclo8 {
                $body(&self, &rhs)
            }
        }
        impl $trait<&Cyclo8> for Cyclo8 {
            type Output = Cyclo8;
            fn $method(self, rhs: &Cyclo8) -> Cyclo8 {
                $body(&self, rhs)
            }
        }
        impl $trait<Cyclo8> for &Cyclo8 {
            type Output = Cyclo8;
            fn $method(self, rhs: Cyclo8) -> Cyclo8 {
                $body(self, &rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a: &Cyclo8, b: &Cyclo8| Cyclo8 {
    c: [&a.c[0] + &b.c[0], &a.c[1] + &b.c[1], &a.c[2] + &b.c[2], &a.c[3] + &b.c[3]]
});
forward_binop!(Sub, sub, |a: &Cyclo8, b: &Cyclo8| Cyclo8 {
    c: [&a.c[0] - &b.c[0], &a.c[1] - &b.c[1], &a.c[2] - &b.c[2], &a.c[3] - &b.c[3]]
});
forward_binop!(Mul, mul, Cyclo8::mul_impl);

impl AddAssign<&Cyclo8> for Cyclo8 {
    fn add_assign(&mut self, rhs: &Cyclo8) {
        for (a, b) in self.c.iter_mut().zip(&rhs.c) {
            *a += b;
        }
    }
}

impl AddAssign for Cyclo8 {
    fn add_assign(&mut self, rhs: Cyclo8) {
        *self += &rhs;
    }
}

impl SubAssign<&Cyclo8> for Cyclo8 {
    fn sub_assign(&mut self, rhs: &Cyclo8) {
        for (a, b) in self.c.iter_mut().zip(&rhs.c) {
            *a -= b;
        }
    }
}

impl MulAssign<&Cyclo8> for Cyclo8 {
    fn mul_assign(&mut self, rhs: &Cyclo8) {
        *self = &*self * rhs;
    }
}

impl Neg for Cyclo8 {
    type Output = Cyclo8;
    fn neg(self) -> Cyclo8 {
        Cyclo8 { c: self.c.map(|x| -x) }
    }
}

impl Neg for &Cyclo8 {
    type Output = Cyclo8;
    fn neg(self) -> Cyclo8 {
        self.clone().neg()
    }
}

impl From<i64> for Cyclo8 {
    fn from(n: i64) -> Self {
        Cyclo8::from_integer(n)
    }
}

impl From<BigRational> for Cyclo8 {
    fn from(r: BigRational) -> Self {
        Cyclo8::from_rational(r)
    }
}

/// Element of `Z[z]` with `i128` coordinates. Arithmetic is checked.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntCyclo(pub [i128; 4]);

impl IntCyclo {
    pub const ZERO: IntCyclo = IntCyclo([0; 4]);
    pub const ONE: IntCyclo = IntCyclo([1, 0, 0, 0]);

    pub fn from_int(n: i128) -> Self {
        IntCyclo([n, 0, 0, 0])
    }

    pub fn is_zero(&self) -> bool {
        self.0 == [0; 4]
    }

    pub fn checked_add(&self, o: &IntCyclo) -> Option<IntCyclo> {
        Some(IntCyclo([
            self.0[0].checked_add(o.0[0])?,
            self.0[1].checked_add(o.0[1])?,
            self.0[2].checked_add(o.0[2])?,
            self.0[3].checked_add(o.0[3])?,
        ]))
    }

    pub fn checked_sub(&self, o: &IntCyclo) -> Option<IntCyclo> {
        Some(IntCyclo([
            self.0[0].checked_sub(o.0[0])?,
            self.0[1].checked_sub(o.0[1])?,
            self.0[2].checked_sub(o.0[2])?,
            self.0[3].checked_sub(o.0[3])?,
        ]))
    }

    pub fn checked_mul(&self, o: &IntCyclo) -> Option<IntCyclo> {
        let (a, b) = (&self.0, &o.0);
        let mut r = [0i128; 4];
        for i in 0..4 {
            if a[i] == 0 {
                continue;
            }
            for j in 0..4 {
                if b[j] == 0 {
                    continue;
                }
                let p = a[i].checked_mul(b[j])?;
                if i + j < 4 {
                    r[i + j] = r[i + j].checked_add(p)?;
                } else {
                    r[i + j - 4] = r[i + j - 4].checked_sub(p)?;
                }
            }
        }
        Some(IntCyclo(r))
    }

    pub fn checked_mul_int(&self, k: i128) -> Option<IntCyclo> {
        Some(IntCyclo([
            self.0[0].checked_mul(k)?,
            self.0[1].checked_mul(k)?,
            self.0[2].checked_mul(k)?,
            self.0[3].checked_mul(k)?,
        ]))
    }

    /// Exact division by a rational integer; `None` unless every coordinate divides.
    pub fn div_exact(&self, k: i128) -> Option<IntCyclo> {
        if k == 0 || self.0.iter().any(|v| v % k != 0) {
            return None;
        }
        Some(IntCyclo(self.0.map(|v| v / k)))
    }

    pub fn neg(&self) -> IntCyclo {
        IntCyclo(self.0.map(|v| -v))
    }

    pub fn to_cyclo(&self) -> Cyclo8 {
        Cyclo8::from_dyadic(self, 0)
    }
}
