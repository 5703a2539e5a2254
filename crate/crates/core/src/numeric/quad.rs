use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{format_rat, parse_rat, rat_to_f64, ExactRat, Rat};
use crate::error::{Error, Result};

/// A real number `rat + coef * sqrt(rad)` in canonical form.
///
/// `rad` is square-free and greater than one whenever `coef` is nonzero; a
/// rational value always has `coef = 0` and `rad = 0`. With this normal form
/// structural equality coincides with equality of real numbers, and ordering is
/// the real ordering (decided exactly, also across different radicands).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadNum {
    rat: Rat,
    coef: Rat,
    rad: BigInt,
}

/// Splits `n = root^2 * free` with `free` square-free.
// TODO: trial division costs O(n^(1/3)); switch to Pollard rho if radicands
// from user-sized inputs ever get past ~40 digits.
fn square_free_split(n: &BigUint) -> (BigUint, BigUint) {
    if n.is_zero() {
        return (BigUint::zero(), BigUint::zero());
    }
    let r = n.sqrt();
    if &r * &r == *n {
        return (r, BigUint::one());
    }
    let mut m = n.clone();
    let mut root = BigUint::one();
    let mut free = BigUint::one();
    let mut p = BigUint::from(2u32);
    while &p * &p * &p <= m {
        let mut e = 0u32;
        while (&m % &p).is_zero() {
            m /= &p;
            e += 1;
        }
        if e > 0 {
            root *= p.pow(e / 2);
            if e % 2 == 1 {
                free *= &p;
            }
        }
        p += if p == BigUint::from(2u32) { 1u32 } else { 2u32 };
    }
    // every prime factor of m now exceeds the cube root of m
    let r = m.sqrt();
    if &r * &r == m {
        root *= r;
    } else {
        free *= m;
    }
    (root, free)
}

impl QuadNum {
    /// Builds `rat + coef * sqrt(rad)`, absorbing square factors of `rad`.
    pub fn new(rat: Rat, coef: Rat, rad: BigInt) -> Result<Self> {
        if rad.is_negative() {
            return Err(Error::NegativeRadicand(rad.to_string()));
        }
        if coef.is_zero() || rad.is_zero() {
            return Ok(Self::from_rat(rat));
        }
        let (root, free) = square_free_split(rad.magnitude());
        let coef = coef * Rat::from_integer(BigInt::from_biguint(Sign::Plus, root));
        if free.is_one() {
            return Ok(Self::from_rat(rat + coef));
        }
        Ok(QuadNum {
            rat,
            coef,
            rad: BigInt::from_biguint(Sign::Plus, free),
        })
    }

    pub fn from_rat(rat: Rat) -> Self {
        QuadNum {
            rat,
            coef: Rat::zero(),
            rad: BigInt::zero(),
        }
    }

    pub fn zero() -> Self {
        Self::from_rat(Rat::zero())
    }

    pub fn one() -> Self {
        Self::from_rat(Rat::one())
    }

    /// Exact square root of a non-negative rational.
    pub fn sqrt_rat(r: &Rat) -> Result<Self> {
        if r.is_negative() {
            return Err(Error::NegativeSquare(format_rat(r)));
        }
        // sqrt(n/d) = sqrt(n*d)/d
        let d = r.denom().clone();
        Self::new(
            Rat::zero(),
            Rat::new(BigInt::one(), d.clone()),
            r.numer() * d,
        )
    }

    pub fn rational_part(&self) -> &Rat {
        &self.rat
    }

    pub fn radical_coeff(&self) -> &Rat {
        &self.coef
    }

    pub fn radicand(&self) -> &BigInt {
        &self.rad
    }

    pub fn is_rational(&self) -> bool {
        self.coef.is_zero()
    }

    pub fn is_zero(&self) -> bool {
        self.rat.is_zero() && self.coef.is_zero()
    }

    pub fn to_rat(&self) -> Option<Rat> {
        self.is_rational().then(|| self.rat.clone())
    }

    /// Sign of the real number as -1, 0 or +1.
    pub fn sign(&self) -> i8 {
        ordering_to_sign(self.signum())
    }

    fn signum(&self) -> Ordering {
        let sp = self.rat.cmp(&Rat::zero());
        let sq = self.coef.cmp(&Rat::zero());
        if sq == Ordering::Equal {
            return sp;
        }
        if sp == Ordering::Equal || sp == sq {
            return sq;
        }
        // opposite signs: compare p^2 with q^2 D
        let p2 = &self.rat * &self.rat;
        let q2d = &self.coef * &self.coef * Rat::from_integer(self.rad.clone());
        match p2.cmp(&q2d) {
            Ordering::Greater => sp,
            Ordering::Less => sq,
            Ordering::Equal => Ordering::Equal,
        }
    }

    fn common_radicand(&self, other: &Self) -> Result<BigInt> {
        if self.coef.is_zero() {
            Ok(other.rad.clone())
        } else if other.coef.is_zero() || self.rad == other.rad {
            Ok(self.rad.clone())
        } else {
            Err(Error::MixedRadicand(
                self.rad.to_string(),
                other.rad.to_string(),
            ))
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        let rad = self.common_radicand(other)?;
        Self::new(&self.rat + &other.rat, &self.coef + &other.coef, rad)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&-other)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        let rad = self.common_radicand(other)?;
        let d = Rat::from_integer(rad.clone());
        Self::new(
            &self.rat * &other.rat + &self.coef * &other.coef * d,
            &self.rat * &other.coef + &self.coef * &other.rat,
            rad,
        )
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        if other.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let rad = self.common_radicand(other)?;
        let norm =
            &other.rat * &other.rat - &other.coef * &other.coef * Rat::from_integer(rad.clone());
        let num = self.checked_mul(&other.conj())?;
        Ok(num.div_rat(&norm))
    }

    pub fn recip(&self) -> Result<Self> {
        Self::one().checked_div(self)
    }

    pub fn conj(&self) -> Self {
        QuadNum {
            rat: self.rat.clone(),
            coef: -&self.coef,
            rad: self.rad.clone(),
        }
    }

    pub fn mul_rat(&self, r: &Rat) -> Self {
        if r.is_zero() {
            return Self::zero();
        }
        QuadNum {
            rat: &self.rat * r,
            coef: &self.coef * r,
            rad: self.rad.clone(),
        }
    }

    /// Panics on a zero divisor.
    pub fn div_rat(&self, r: &Rat) -> Self {
        assert!(!r.is_zero(), "QuadNum division by zero");
        QuadNum {
            rat: &self.rat / r,
            coef: &self.coef / r,
            rad: self.rad.clone(),
        }
    }

    pub fn add_rat(&self, r: &Rat) -> Self {
        QuadNum {
            rat: &self.rat + r,
            coef: self.coef.clone(),
            rad: self.rad.clone(),
        }
    }

    pub fn to_f64(&self) -> f64 {
        let r = rat_to_f64(&self.rat);
        if self.coef.is_zero() {
            return r;
        }
        let d = rat_to_f64(&Rat::from_integer(self.rad.clone()));
        r + rat_to_f64(&self.coef) * d.sqrt()
    }
}

fn ordering_to_sign(o: Ordering) -> i8 {
    match o {
        Ordering::Less => -1,
        Ordering::Equal => 0,
        Ordering::Greater => 1,
    }
}

/// Sign of `a + r*sqrt(e)` where `a` has a radicand different from `e`.
fn mixed_signum(a: &QuadNum, r: &Rat, e: &BigInt) -> Ordering {
    let sa = a.signum();
    let sb = r.cmp(&Rat::zero());
    if sa == Ordering::Equal || sa == sb {
        return sb;
    }
    if sb == Ordering::Equal {
        return sa;
    }
    let a2 = a.checked_mul(a).expect("same radicand");
    let b2 = r * r * Rat::from_integer(e.clone());
    match a2.add_rat(&-b2).signum() {
        Ordering::Greater => sa,
        Ordering::Less => sb,
        Ordering::Equal => Ordering::Equal,
    }
}

impl Ord for QuadNum {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.checked_sub(other) {
            Ok(diff) => diff.signum(),
            Err(_) => {
                let a = QuadNum {
                    rat: &self.rat - &other.rat,
                    coef: self.coef.clone(),
                    rad: self.rad.clone(),
                };
                mixed_signum(&a, &-&other.coef, &other.rad)
            }
        }
    }
}

impl PartialOrd for QuadNum {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl From<Rat> for QuadNum {
    fn from(r: Rat) -> Self {
        QuadNum::from_rat(r)
    }
}

impl Neg for &QuadNum {
    type Output = QuadNum;
    fn neg(self) -> QuadNum {
        QuadNum {
            rat: -&self.rat,
            coef: -&self.coef,
            rad: self.rad.clone(),
        }
    }
}

impl Neg for QuadNum {
    type Output = QuadNum;
    fn neg(self) -> QuadNum {
        -&self
    }
}

// Operator forms panic on mixed radicands; use the checked_* methods when the
// operands may come from different discriminants.
macro_rules! forward_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr<&QuadNum> for &QuadNum {
            type Output = QuadNum;
            fn $method(self, rhs: &QuadNum) -> QuadNum {
                self.$checked(rhs)
                    .expect("QuadNum operands with mixed radicands")
            }
        }
        impl $tr<QuadNum> for QuadNum {
            type Output = QuadNum;
            fn $method(self, rhs: QuadNum) -> QuadNum {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&QuadNum> for QuadNum {
            type Output = QuadNum;
            fn $method(self, rhs: &QuadNum) -> QuadNum {
                (&self).$method(rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);

impl fmt::Display for QuadNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coef.is_zero() {
            return write!(f, "{}", format_rat(&self.rat));
        }
        let radical = if self.coef.is_one() {
            format!("sqrt({})", self.rad)
        } else if (-&self.coef).is_one() {
            format!("-sqrt({})", self.rad)
        } else {
            format!("{}*sqrt({})", format_rat(&self.coef), self.rad)
        };
        if self.rat.is_zero() {
            return write!(f, "{}", radical);
        }
        match radical.strip_prefix('-') {
            Some(rest) => write!(f, "{} - {}", format_rat(&self.rat), rest),
            None => write!(f, "{} + {}", format_rat(&self.rat), radical),
        }
    }
}

/// Reads the `Display` form back, e.g. `"3/2 - 1/2*sqrt(3)"`, `"-sqrt(2)"` or `"5/4"`.
impl std::str::FromStr for QuadNum {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let err = || Error::ParseQuad(s.to_string());
        if !t.contains("sqrt(") {
            return parse_rat(t).map(QuadNum::from_rat).map_err(|_| err());
        }
        let (rat, sign, radical) = match t.find(" + ").or_else(|| t.find(" - ")) {
            Some(i) => {
                let r = parse_rat(&t[..i]).map_err(|_| err())?;
                let sign = if &t[i..i + 3] == " - " { -1 } else { 1 };
                (r, sign, t[i + 3..].trim())
            }
            None => match t.strip_prefix('-') {
                Some(rest) => (Rat::zero(), -1, rest.trim()),
                None => (Rat::zero(), 1, t),
            },
        };
        let (coef, root) = match radical.split_once('*') {
            Some((c, r)) => (parse_rat(c).map_err(|_| err())?, r.trim()),
            None => (Rat::one(), radical),
        };
        let rad: BigInt = root
            .strip_prefix("sqrt(")
            .and_then(|r| r.strip_suffix(')'))
            .and_then(|r| r.trim().parse().ok())
            .ok_or_else(err)?;
        QuadNum::new(rat, coef * Rat::from_integer(sign.into()), rad)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum RadRepr {
    Num(u64),
    Str(String),
}

#[derive(Serialize, Deserialize)]
struct QuadRepr {
    rat: ExactRat,
    coef: ExactRat,
    rad: RadRepr,
}

impl Serialize for QuadNum {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let rad = match u64::try_from(&self.rad) {
            Ok(n) => RadRepr::Num(n),
            Err(_) => RadRepr::Str(self.rad.to_string()),
        };
        QuadRepr {
            rat: ExactRat(self.rat.clone()),
            coef: ExactRat(self.coef.clone()),
            rad,
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for QuadNum {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = QuadRepr::deserialize(deserializer)?;
        let rad = match repr.rad {
            RadRepr::Num(n) => BigInt::from(n),
            RadRepr::Str(s) => s.parse().map_err(serde::de::Error::custom)?,
        };
        QuadNum::new(repr.rat.0, repr.coef.0, rad).map_err(serde::de::Error::custom)
    }
}
