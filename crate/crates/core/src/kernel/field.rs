//! Prime fields `F_p` and the rationals.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;

use super::KernelError;

/// The coefficient field of every ring in the crate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Field {
    Prime(u64),
    Rational,
}

impl Field {
    /// `F_p`; fails unless `p` is prime.
    pub fn prime(p: u64) -> Result<Field, KernelError> {
        if is_prime(p) {
            Ok(Field::Prime(p))
        } else {
            Err(KernelError::NotPrime(p))
        }
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            Field::Prime(p) => *p,
            Field::Rational => 0,
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Field::Prime(_))
    }

    pub fn zero(&self) -> FieldElem {
        self.from_i64(0)
    }

    pub fn one(&self) -> FieldElem {
        self.from_i64(1)
    }

    pub fn from_i64(&self, v: i64) -> FieldElem {
        match self {
            Field::Prime(p) => FieldElem::Mod { value: (v as i128).rem_euclid(*p as i128) as u64, modulus: *p },
            Field::Rational => FieldElem::Rat(BigRational::from_integer(BigInt::from(v))),
        }
    }

    pub fn from_bigint(&self, v: &BigInt) -> FieldElem {
        match self {
            Field::Prime(p) => {
                let m = BigInt::from(*p);
                let r = ((v % &m) + &m) % &m;
                FieldElem::Mod { value: r.to_u64().expect("reduced residue fits u64"), modulus: *p }
            }
            Field::Rational => FieldElem::Rat(BigRational::from_integer(v.clone())),
        }
    }

    /// `num / den`; `den` must be invertible in the field.
    pub fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Result<FieldElem, KernelError> {
        let n = self.from_bigint(num);
        let d = self.from_bigint(den);
        let inv = d.inv().ok_or(KernelError::DivisionByZero)?;
        Ok(&n * &inv)
    }

    /// A uniformly random element (finite fields) or a small random integer (rationals).
    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> FieldElem {
        match self {
            Field::Prime(p) => FieldElem::Mod { value: rng.gen_range(0..*p), modulus: *p },
            Field::Rational => self.from_i64(rng.gen_range(-9..=9)),
        }
    }

    /// All elements of a finite field in the order `0, 1, ..., p-1`.
    pub fn elements(&self) -> Option<impl Iterator<Item = FieldElem>> {
        match *self {
            Field::Prime(p) => Some((0..p).map(move |value| FieldElem::Mod { value, modulus: p })),
            Field::Rational => None,
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Prime(p) => write!(f, "F_{p}"),
            Field::Rational => write!(f, "Q"),
        }
    }
}

/// Deterministic Miller-Rabin for all `u64`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1u64 % m;
    a %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, m);
        }
        a = mul_mod(a, a, m);
        e >>= 1;
    }
    r
}

/// An element of a [`Field`]. Values of different fields never mix; doing so is a bug and panics.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum FieldElem {
    Mod { value: u64, modulus: u64 },
    Rat(BigRational),
}

impl FieldElem {
    pub fn field(&self) -> Field {
        match self {
            FieldElem::Mod { modulus, .. } => Field::Prime(*modulus),
            FieldElem::Rat(_) => Field::Rational,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            FieldElem::Mod { value, .. } => *value == 0,
            FieldElem::Rat(r) => r.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            FieldElem::Mod { value, .. } => *value == 1,
            FieldElem::Rat(r) => r.is_one(),
        }
    }

    pub fn inv(&self) -> Option<FieldElem> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            FieldElem::Mod { value, modulus } => {
                FieldElem::Mod { value: pow_mod(*value, modulus - 2, *modulus), modulus: *modulus }
            }
            FieldElem::Rat(r) => FieldElem::Rat(r.recip()),
        })
    }

    pub fn pow(&self, mut e: u64) -> FieldElem {
        let mut base = self.clone();
        let mut acc = self.field().one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// The residue in `0..p` of an element of `F_p`.
    pub fn residue(&self) -> Option<u64> {
        match self {
            FieldElem::Mod { value, .. } => Some(*value),
            FieldElem::Rat(_) => None,
        }
    }

    /// Integer representative in `(-p/2, p/2]` for `F_p`; the value itself for `Q`.
    pub fn to_rational(&self) -> BigRational {
        match self {
            FieldElem::Mod { value, modulus } => {
                let v = if *value > modulus / 2 { -((modulus - value) as i64) } else { *value as i64 };
                BigRational::from_integer(BigInt::from(v))
            }
            FieldElem::Rat(r) => r.clone(),
        }
    }

    /// True when the printed form starts with a minus sign.
    pub fn is_negative_repr(&self) -> bool {
        self.to_rational().is_negative()
    }
}

fn check_same(a: &FieldElem, b: &FieldElem) -> u64 {
    match (a, b) {
        (FieldElem::Mod { modulus: p, .. }, FieldElem::Mod { modulus: q, .. }) if p == q => *p,
        (FieldElem::Rat(_), FieldElem::Rat(_)) => 0,
        _ => panic!("field mismatch: {} vs {}", a.field(), b.field()),
    }
}

impl<'a> Add<&'a FieldElem> for &'a FieldElem {
    type Output = FieldElem;
    fn add(self, rhs: &FieldElem) -> FieldElem {
        match check_same(self, rhs) {
            0 => match (self, rhs) {
                (FieldElem::Rat(a), FieldElem::Rat(b)) => FieldElem::Rat(a + b),
                _ => unreachable!(),
            },
            p => match (self, rhs) {
                (FieldElem::Mod { value: a, .. }, FieldElem::Mod { value: b, .. }) => {
                    FieldElem::Mod { value: ((*a as u128 + *b as u128) % p as u128) as u64, modulus: p }
                }
                _ => unreachable!(),
            },
        }
    }
}

impl<'a> Sub<&'a FieldElem> for &'a FieldElem {
    type Output = FieldElem;
    fn sub(self, rhs: &FieldElem) -> FieldElem {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a FieldElem> for &'a FieldElem {
    type Output = FieldElem;
    fn mul(self, rhs: &FieldElem) -> FieldElem {
        match check_same(self, rhs) {
            0 => match (self, rhs) {
                (FieldElem::Rat(a), FieldElem::Rat(b)) => FieldElem::Rat(a * b),
                _ => unreachable!(),
            },
            p => match (self, rhs) {
                (FieldElem::Mod { value: a, .. }, FieldElem::Mod { value: b, .. }) => {
                    FieldElem::Mod { value: mul_mod(*a, *b, p), modulus: p }
                }
                _ => unreachable!(),
            },
        }
    }
}

impl<'a> Div<&'a FieldElem> for &'a FieldElem {
    type Output = FieldElem;
    fn div(self, rhs: &FieldElem) -> FieldElem {
        self * &rhs.inv().expect("division by zero in field")
    }
}

impl Neg for &FieldElem {
    type Output = FieldElem;
    fn neg(self) -> FieldElem {
        match self {
            FieldElem::Mod { value, modulus } => {
                FieldElem::Mod { value: if *value == 0 { 0 } else { modulus - value }, modulus: *modulus }
            }
            FieldElem::Rat(r) => FieldElem::Rat(-r),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<FieldElem> for FieldElem {
            type Output = FieldElem;
            fn $m(self, rhs: FieldElem) -> FieldElem {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Neg for FieldElem {
    type Output = FieldElem;
    fn neg(self) -> FieldElem {
        -&self
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let r = self.to_rational();
        if r.is_integer() {
            write!(f, "{}", r.numer())
        } else {
            write!(f, "{}/{}", r.numer(), r.denom())
        }
    }
}
