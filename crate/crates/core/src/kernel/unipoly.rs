//! Dense univariate polynomials over a [`Field`].

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{Field, FieldElem, KernelError};

/// Coefficients are stored low degree first; the leading coefficient is nonzero unless the
/// polynomial is zero, in which case the list is empty.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UniPoly {
    field: Field,
    coeffs: Vec<FieldElem>,
}

impl UniPoly {
    pub fn new(field: Field, mut coeffs: Vec<FieldElem>) -> UniPoly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { field, coeffs }
    }

    pub fn from_i64s(field: Field, coeffs: &[i64]) -> UniPoly {
        UniPoly::new(field, coeffs.iter().map(|&c| field.from_i64(c)).collect())
    }

    pub fn zero(field: Field) -> UniPoly {
        UniPoly { field, coeffs: vec![] }
    }

    pub fn one(field: Field) -> UniPoly {
        UniPoly::constant(field.one())
    }

    pub fn constant(c: FieldElem) -> UniPoly {
        UniPoly::new(c.field(), vec![c])
    }

    /// `c * t^d`.
    pub fn monomial(c: FieldElem, d: usize) -> UniPoly {
        let field = c.field();
        let mut coeffs = vec![field.zero(); d];
        coeffs.push(c);
        UniPoly::new(field, coeffs)
    }

    /// The variable itself.
    pub fn var(field: Field) -> UniPoly {
        UniPoly::monomial(field.one(), 1)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn coeffs(&self) -> &[FieldElem] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> FieldElem {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial mapped to `-1`.
    pub fn degree_i64(&self) -> i64 {
        self.coeffs.len() as i64 - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// A nonzero constant.
    pub fn is_unit(&self) -> bool {
        self.coeffs.len() == 1
    }

    /// Inverse of a nonzero constant polynomial.
    pub fn constant_inverse(&self) -> Option<FieldElem> {
        if self.coeffs.len() == 1 {
            self.coeffs[0].inv()
        } else {
            None
        }
    }

    pub fn lead(&self) -> FieldElem {
        self.coeffs.last().cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn scale(&self, c: &FieldElem) -> UniPoly {
        UniPoly::new(self.field, self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Scaled to leading coefficient one; zero stays zero.
    pub fn monic(&self) -> UniPoly {
        match self.lead().inv() {
            Some(inv) if !self.is_zero() => self.scale(&inv),
            _ => self.clone(),
        }
    }

    pub fn eval(&self, x: &FieldElem) -> FieldElem {
        let mut acc = self.field.zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    pub fn derivative(&self) -> UniPoly {
        let coeffs = self.coeffs.iter().enumerate().skip(1).map(|(i, c)| c * &self.field.from_i64(i as i64)).collect();
        UniPoly::new(self.field, coeffs)
    }

    pub fn pow(&self, mut e: u32) -> UniPoly {
        let mut base = self.clone();
        let mut acc = UniPoly::one(self.field);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Euclidean division: `self = q * d + r` with `deg r < deg d`.
    pub fn divrem(&self, d: &UniPoly) -> Result<(UniPoly, UniPoly), KernelError> {
        let dd = d.degree().ok_or(KernelError::DivisionByZero)?;
        let inv = d.lead().inv().ok_or(KernelError::DivisionByZero)?;
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return Ok((UniPoly::zero(self.field), self.clone()));
        }
        let mut q = vec![self.field.zero(); r.len() - dd];
        for i in (0..q.len()).rev() {
            let c = &r[i + dd] * &inv;
            if !c.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    r[i + j] = &r[i + j] - &(&c * dc);
                }
            }
            q[i] = c;
        }
        r.truncate(dd);
        Ok((UniPoly::new(self.field, q), UniPoly::new(self.field, r)))
    }

    pub fn rem(&self, d: &UniPoly) -> UniPoly {
        self.divrem(d).expect("nonzero divisor").1
    }

    /// `Some(q)` with `self = q * d` when `d` divides `self`.
    pub fn div_exact(&self, d: &UniPoly) -> Option<UniPoly> {
        let (q, r) = self.divrem(d).ok()?;
        r.is_zero().then_some(q)
    }

    pub fn divides(&self, other: &UniPoly) -> bool {
        if self.is_zero() {
            return other.is_zero();
        }
        other.rem(self).is_zero()
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `(g, s, t)` with `g = s*self + t*other` and `g` the monic gcd.
    pub fn ext_gcd(&self, other: &UniPoly) -> (UniPoly, UniPoly, UniPoly) {
        let f = self.field;
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (UniPoly::one(f), UniPoly::zero(f));
        let (mut t0, mut t1) = (UniPoly::zero(f), UniPoly::one(f));
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1).expect("nonzero");
            let s = &s0 - &(&q * &s1);
            let t = &t0 - &(&q * &t1);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
            t0 = std::mem::replace(&mut t1, t);
        }
        match r0.lead().inv() {
            Some(inv) if !r0.is_zero() => (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv)),
            _ => (r0, s0, t0),
        }
    }

    /// `self^e mod m` for an arbitrary-size exponent.
    pub fn pow_mod(&self, e: &BigUint, m: &UniPoly) -> UniPoly {
        let mut acc = UniPoly::one(self.field).rem(m);
        let base = self.rem(m);
        for i in (0..e.bits()).rev() {
            acc = (&acc * &acc).rem(m);
            if e.bit(i) {
                acc = (&acc * &base).rem(m);
            }
        }
        acc
    }

    pub fn is_squarefree(&self) -> bool {
        !self.is_zero() && self.gcd(&self.derivative()).is_one()
    }

    /// Product of the distinct irreducible factors, monic.
    pub fn squarefree_part(&self) -> Result<UniPoly, KernelError> {
        Ok(self.factor()?.into_iter().fold(UniPoly::one(self.field), |acc, (g, _)| &acc * &g))
    }

    /// Factorization into monic irreducibles with multiplicities, sorted canonically.
    /// The leading coefficient is dropped. Over `Q` only factors of degree at most 3
    /// remaining after rational-root extraction are supported.
    pub fn factor(&self) -> Result<Vec<(UniPoly, u32)>, KernelError> {
        if self.is_zero() {
            return Err(KernelError::Unsupported("factoring the zero polynomial".into()));
        }
        let mut out = match self.field {
            Field::Prime(p) => factor_finite(&self.monic(), p),
            Field::Rational => factor_rational(&self.monic())?,
        };
        out.sort_by(|a, b| canonical_cmp(&a.0, &b.0).then(a.1.cmp(&b.1)));
        // merge equal factors that arrived through different square-free layers
        let mut merged: Vec<(UniPoly, u32)> = Vec::new();
        for (g, m) in out {
            match merged.last_mut() {
                Some((h, k)) if *h == g => *k += m,
                _ => merged.push((g, m)),
            }
        }
        Ok(merged)
    }

    pub fn is_irreducible(&self) -> Result<bool, KernelError> {
        if self.degree().unwrap_or(0) == 0 {
            return Ok(false);
        }
        let f = self.factor()?;
        Ok(f.len() == 1 && f[0].1 == 1)
    }

    pub fn display_with(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            push_term(&mut s, c, &mono);
        }
        s
    }
}

/// Appends `c*mono` to a sum being printed, handling signs and unit coefficients.
pub(crate) fn push_term(s: &mut String, c: &FieldElem, mono: &str) {
    let neg = c.is_negative_repr();
    let abs = if neg { -c } else { c.clone() };
    if s.is_empty() {
        if neg {
            s.push('-');
        }
    } else {
        s.push_str(if neg { " - " } else { " + " });
    }
    if mono.is_empty() {
        s.push_str(&abs.to_string());
    } else if abs.is_one() {
        s.push_str(mono);
    } else {
        s.push_str(&format!("{abs}*{mono}"));
    }
}

fn canonical_cmp(a: &UniPoly, b: &UniPoly) -> std::cmp::Ordering {
    a.degree_i64().cmp(&b.degree_i64()).then_with(|| {
        for i in (0..a.coeffs.len()).rev() {
            let o = match (&a.coeffs[i], &b.coeffs[i]) {
                (FieldElem::Mod { value: x, .. }, FieldElem::Mod { value: y, .. }) => x.cmp(y),
                (x, y) => x.to_rational().cmp(&y.to_rational()),
            };
            if o.is_ne() {
                return o;
            }
        }
        std::cmp::Ordering::Equal
    })
}

fn factor_finite(f: &UniPoly, p: u64) -> Vec<(UniPoly, u32)> {
    let mut out = Vec::new();
    for (g, m) in squarefree_decomposition(f, p) {
        for (h, d) in distinct_degree(&g, p) {
            for irr in equal_degree(&h, d, p) {
                out.push((irr, m));
            }
        }
    }
    out
}

fn squarefree_decomposition(f: &UniPoly, p: u64) -> Vec<(UniPoly, u32)> {
    let field = f.field;
    let mut out = Vec::new();
    if f.degree().unwrap_or(0) == 0 {
        return out;
    }
    let mut c = f.gcd(&f.derivative());
    let mut w = f.div_exact(&c).expect("gcd divides");
    let mut i = 1;
    while !w.is_one() {
        let y = w.gcd(&c);
        let fac = w.div_exact(&y).expect("gcd divides");
        if !fac.is_one() {
            out.push((fac, i));
        }
        c = c.div_exact(&y).expect("gcd divides");
        w = y;
        i += 1;
    }
    if !c.is_one() {
        // c is a p-th power; over F_p the p-th root acts on exponents only
        let root: Vec<FieldElem> = c.coeffs.iter().step_by(p as usize).cloned().collect();
        let root = UniPoly::new(field, root);
        for (g, m) in squarefree_decomposition(&root, p) {
            out.push((g, m * p as u32));
        }
    }
    out
}

fn distinct_degree(f: &UniPoly, p: u64) -> Vec<(UniPoly, usize)> {
    let field = f.field;
    let x = UniPoly::var(field);
    let mut out = Vec::new();
    let mut rest = f.clone();
    let mut h = x.clone();
    let mut i = 1;
    let pb = BigUint::from(p);
    while rest.degree().unwrap_or(0) >= 2 * i {
        h = h.pow_mod(&pb, &rest);
        let g = (&h - &x).gcd(&rest);
        if !g.is_one() {
            rest = rest.div_exact(&g).expect("gcd divides");
            h = h.rem(&rest);
            out.push((g, i));
        }
        i += 1;
    }
    if rest.degree().unwrap_or(0) > 0 {
        let d = rest.degree().unwrap();
        out.push((rest, d));
    }
    out
}

fn equal_degree(f: &UniPoly, d: usize, p: u64) -> Vec<UniPoly> {
    let n = f.degree().unwrap_or(0);
    if n == d {
        return vec![f.clone()];
    }
    let field = f.field;
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed ^ n as u64 ^ p);
    loop {
        let a = UniPoly::new(field, (0..n).map(|_| field.random(&mut rng)).collect());
        if a.degree().unwrap_or(0) == 0 {
            continue;
        }
        let b = if p == 2 {
            // trace map a + a^2 + ... + a^(2^(d-1))
            let mut acc = a.rem(f);
            let mut cur = acc.clone();
            for _ in 1..d {
                cur = (&cur * &cur).rem(f);
                acc = &acc + &cur;
            }
            acc
        } else {
            let e = (BigUint::from(p).pow(d as u32) - 1u32) / 2u32;
            &a.pow_mod(&e, f) - &UniPoly::one(field)
        };
        let g = b.gcd(f);
        if g.degree().unwrap_or(0) > 0 && g.degree() != f.degree() {
            let h = f.div_exact(&g).expect("gcd divides");
            let mut out = equal_degree(&g, d, p);
            out.extend(equal_degree(&h, d, p));
            return out;
        }
    }
}

fn factor_rational(f: &UniPoly) -> Result<Vec<(UniPoly, u32)>, KernelError> {
    let field = f.field;
    let mut rest = f.clone();
    let mut out = Vec::new();
    // integer content: multiply through by the lcm of denominators
    loop {
        let Some(deg) = rest.degree() else { break };
        if deg == 0 {
            break;
        }
        let lcm = rest.coeffs.iter().map(|c| c.to_rational().denom().clone()).fold(BigInt::one(), |a, b| a.lcm(&b));
        let ints: Vec<BigInt> = rest
            .coeffs
            .iter()
            .map(|c| (c.to_rational() * BigRational::from_integer(lcm.clone())).to_integer())
            .collect();
        let low = ints.iter().position(|c| !c.is_zero()).unwrap_or(0);
        if low > 0 {
            let x = UniPoly::var(field);
            for _ in 0..low {
                rest = rest.div_exact(&x).expect("x divides");
                out.push((x.clone(), 1));
            }
            continue;
        }
        let a0 = ints[0].abs();
        let an = ints[deg].abs();
        let mut found = None;
        'search: for num in small_divisors(&a0)? {
            for den in small_divisors(&an)? {
                for sign in [1i64, -1] {
                    let r = BigRational::new(BigInt::from(sign) * &num, den.clone());
                    let fr = FieldElem::Rat(r.clone());
                    if rest.eval(&fr).is_zero() {
                        found = Some(fr);
                        break 'search;
                    }
                }
            }
        }
        match found {
            Some(root) => {
                let lin = UniPoly::new(field, vec![-&root, field.one()]);
                rest = rest.div_exact(&lin).expect("root divides");
                out.push((lin, 1));
            }
            None if deg <= 3 => {
                out.push((rest.monic(), 1));
                break;
            }
            None => {
                return Err(KernelError::Unsupported(
                    "factoring over Q beyond rational roots and degree-3 remainders".into(),
                ))
            }
        }
    }
    Ok(out)
}

fn small_divisors(n: &BigInt) -> Result<Vec<BigInt>, KernelError> {
    let limit = BigInt::from(1_000_000u64);
    if n > &limit {
        return Err(KernelError::Unsupported("rational root search on large coefficients".into()));
    }
    let n: i64 = n.try_into().expect("bounded");
    Ok((1..=n.max(1)).filter(|d| n % d == 0).map(BigInt::from).collect())
}

impl<'a> Add<&'a UniPoly> for &'a UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| &self.coeff(i) + &rhs.coeff(i)).collect();
        UniPoly::new(self.field, coeffs)
    }
}

impl<'a> Sub<&'a UniPoly> for &'a UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| &self.coeff(i) - &rhs.coeff(i)).collect();
        UniPoly::new(self.field, coeffs)
    }
}

impl<'a> Mul<&'a UniPoly> for &'a UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &UniPoly) -> UniPoly {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero(self.field);
        }
        let mut coeffs = vec![self.field.zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] = &coeffs[i + j] + &(a * b);
            }
        }
        UniPoly::new(self.field, coeffs)
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly::new(self.field, self.coeffs.iter().map(|c| -c).collect())
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with("t"))
    }
}

/// A uniformly random polynomial of degree at most `max_deg`.
pub fn random_unipoly<R: Rng + ?Sized>(field: Field, max_deg: usize, rng: &mut R) -> UniPoly {
    UniPoly::new(field, (0..=max_deg).map(|_| field.random(rng)).collect())
}
