//! Exact scalar fields: ℚ, GF(p) and GF(p^k).
//!
//! A [`FieldCtx`] is a cheaply clonable handle; every [`FieldElem`] carries the
//! handle of the field it lives in. Operator impls panic when contexts are
//! mixed; use [`FieldElem::apply`] for the checked path.

pub(crate) mod gfp;

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;

use crate::error::{Error, Result};

pub(crate) use gfp::is_prime;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum FieldKind {
    Rationals,
    Prime { p: u64 },
    /// GF(p)[t]/(modulus); `modulus` is monic of degree `k`, constant term first.
    Extension { p: u64, k: u32, modulus: Vec<u64> },
}

#[derive(Clone, Debug)]
pub struct FieldCtx(Arc<FieldKind>);

impl PartialEq for FieldCtx {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || *self.0 == *other.0
    }
}

impl Eq for FieldCtx {}

const MAX_PRIME: u64 = u32::MAX as u64;

impl FieldCtx {
    pub fn rationals() -> Self {
        FieldCtx(Arc::new(FieldKind::Rationals))
    }

    pub fn prime(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if p > MAX_PRIME {
            return Err(Error::FieldTooLarge { p, k: 1 });
        }
        Ok(FieldCtx(Arc::new(FieldKind::Prime { p })))
    }

    /// GF(p^k) with the lexicographically least monic irreducible modulus.
    /// `k = 1` yields the prime field itself.
    pub fn extension(p: u64, k: u32) -> Result<Self> {
        if k == 0 {
            return Err(Error::DegreeZero);
        }
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if k == 1 {
            return Self::prime(p);
        }
        match p.checked_pow(k) {
            Some(q) if q < (1u64 << 40) && p <= MAX_PRIME => {}
            _ => return Err(Error::FieldTooLarge { p, k }),
        }
        let modulus = gfp::least_irreducible(p, k);
        Ok(FieldCtx(Arc::new(FieldKind::Extension { p, k, modulus })))
    }

    pub fn kind(&self) -> &FieldKind {
        &self.0
    }

    /// 0 for ℚ.
    pub fn characteristic(&self) -> u64 {
        match *self.0 {
            FieldKind::Rationals => 0,
            FieldKind::Prime { p } | FieldKind::Extension { p, .. } => p,
        }
    }

    pub fn degree(&self) -> u32 {
        match *self.0 {
            FieldKind::Extension { k, .. } => k,
            _ => 1,
        }
    }

    /// Number of elements, `None` for ℚ.
    pub fn order(&self) -> Option<u64> {
        match *self.0 {
            FieldKind::Rationals => None,
            FieldKind::Prime { p } => Some(p),
            FieldKind::Extension { p, k, .. } => Some(p.pow(k)),
        }
    }

    pub fn is_char2(&self) -> bool {
        self.characteristic() == 2
    }

    pub fn zero(&self) -> FieldElem {
        self.from_i64(0)
    }

    pub fn one(&self) -> FieldElem {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> FieldElem {
        let repr = match &*self.0 {
            FieldKind::Rationals => Repr::Q(BigRational::from_integer(BigInt::from(n))),
            FieldKind::Prime { p } => Repr::P(reduce_i64(n, *p)),
            FieldKind::Extension { p, k, .. } => {
                let mut v = vec![0u64; *k as usize];
                v[0] = reduce_i64(n, *p);
                Repr::E(v)
            }
        };
        self.wrap(repr)
    }

    /// Reduce an exact rational into this field. Fails if the denominator
    /// vanishes in the characteristic.
    pub fn from_rational(&self, q: &BigRational) -> Result<FieldElem> {
        match &*self.0 {
            FieldKind::Rationals => Ok(self.wrap(Repr::Q(q.clone()))),
            FieldKind::Prime { p } | FieldKind::Extension { p, .. } => {
                let num = self.reduce_bigint(q.numer(), *p);
                let den = self.reduce_bigint(q.denom(), *p);
                num.checked_div(&den)
            }
        }
    }

    fn reduce_bigint(&self, n: &BigInt, p: u64) -> FieldElem {
        let r = n.mod_floor_u64(p);
        self.from_i64(r as i64)
    }

    /// The class of `t` in GF(p)[t]/(modulus).
    pub fn generator(&self) -> Option<FieldElem> {
        match &*self.0 {
            FieldKind::Extension { k, .. } => {
                let mut v = vec![0u64; *k as usize];
                v[1] = 1;
                Some(self.wrap(Repr::E(v)))
            }
            _ => None,
        }
    }

    /// Element number `index` in the canonical enumeration of a finite field:
    /// base-p digits of `index` are the coefficients, constant term first.
    pub fn element(&self, index: u64) -> FieldElem {
        match &*self.0 {
            FieldKind::Rationals => panic!("ℚ has no finite enumeration"),
            FieldKind::Prime { p } => self.wrap(Repr::P(index % p)),
            FieldKind::Extension { p, k, .. } => {
                let mut n = index;
                let v = (0..*k)
                    .map(|_| {
                        let d = n % p;
                        n /= p;
                        d
                    })
                    .collect();
                self.wrap(Repr::E(v))
            }
        }
    }

    /// All elements of a finite field in enumeration order; empty for ℚ.
    pub fn elements(&self) -> impl Iterator<Item = FieldElem> + '_ {
        (0..self.order().unwrap_or(0)).map(move |i| self.element(i))
    }

    /// Uniform element of a finite field; for ℚ a small fraction n/d with
    /// |n| ≤ 9, 1 ≤ d ≤ 3.
    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> FieldElem {
        match self.order() {
            Some(q) => self.element(rng.gen_range(0..q)),
            None => {
                let n = rng.gen_range(-9i64..=9);
                let d = rng.gen_range(1i64..=3);
                self.wrap(Repr::Q(BigRational::new(n.into(), d.into())))
            }
        }
    }

    pub fn random_nonzero<R: Rng + ?Sized>(&self, rng: &mut R) -> FieldElem {
        loop {
            let x = self.random(rng);
            if !x.is_zero() {
                return x;
            }
        }
    }

    fn wrap(&self, repr: Repr) -> FieldElem {
        FieldElem {
            ctx: self.clone(),
            repr,
        }
    }

    pub(crate) fn ensure_same(&self, other: &FieldCtx) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::CtxMismatch {
                left: self.to_string(),
                right: other.to_string(),
            })
        }
    }
}

impl fmt::Display for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &*self.0 {
            FieldKind::Rationals => write!(f, "Q"),
            FieldKind::Prime { p } => write!(f, "GF({p})"),
            FieldKind::Extension { p, k, .. } => write!(f, "GF({p}^{k})"),
        }
    }
}

pub(crate) trait ModFloorU64 {
    fn mod_floor_u64(&self, p: u64) -> u64;
}

impl ModFloorU64 for BigInt {
    fn mod_floor_u64(&self, p: u64) -> u64 {
        use num_integer::Integer;
        let r = self.mod_floor(&BigInt::from(p));
        u64::try_from(r).expect("residue fits")
    }
}

fn reduce_i64(n: i64, p: u64) -> u64 {
    (n as i128).rem_euclid(p as i128) as u64
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum Repr {
    Q(BigRational),
    P(u64),
    /// Exactly `k` coefficients, reduced mod the modulus.
    E(Vec<u64>),
}

#[derive(Clone, Debug)]
pub struct FieldElem {
    ctx: FieldCtx,
    repr: Repr,
}

impl PartialEq for FieldElem {
    fn eq(&self, other: &Self) -> bool {
        self.repr == other.repr && self.ctx == other.ctx
    }
}

impl Eq for FieldElem {}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl FieldElem {
    pub fn ctx(&self) -> &FieldCtx {
        &self.ctx
    }

    pub fn is_zero(&self) -> bool {
        match &self.repr {
            Repr::Q(q) => q.is_zero(),
            Repr::P(x) => *x == 0,
            Repr::E(v) => v.iter().all(|&c| c == 0),
        }
    }

    pub fn is_one(&self) -> bool {
        match &self.repr {
            Repr::Q(q) => q.is_one(),
            Repr::P(x) => *x == 1,
            Repr::E(v) => v[0] == 1 && v[1..].iter().all(|&c| c == 0),
        }
    }

    /// Position in the canonical enumeration; `None` over ℚ.
    pub fn index(&self) -> Option<u64> {
        match (&self.repr, &*self.ctx.0) {
            (Repr::Q(_), _) => None,
            (Repr::P(x), _) => Some(*x),
            (Repr::E(v), FieldKind::Extension { p, .. }) => {
                Some(v.iter().rev().fold(0u64, |acc, &c| acc * p + c))
            }
            _ => unreachable!(),
        }
    }

    /// Total order used for canonical sorting: by value over ℚ, by
    /// enumeration index over finite fields.
    pub fn canonical_cmp(&self, other: &Self) -> Ordering {
        match (&self.repr, &other.repr) {
            (Repr::Q(a), Repr::Q(b)) => a.cmp(b),
            _ => self.index().cmp(&other.index()),
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match &self.repr {
            Repr::Q(q) => Some(q),
            _ => None,
        }
    }

    /// Checked arithmetic: fails on mismatched contexts or division by zero.
    pub fn apply(&self, op: ArithOp, rhs: &FieldElem) -> Result<FieldElem> {
        self.ctx.ensure_same(&rhs.ctx)?;
        Ok(match op {
            ArithOp::Add => self.add_unchecked(rhs),
            ArithOp::Sub => self.sub_unchecked(rhs),
            ArithOp::Mul => self.mul_unchecked(rhs),
            ArithOp::Div => return self.checked_div(rhs),
        })
    }

    pub fn checked_div(&self, rhs: &FieldElem) -> Result<FieldElem> {
        self.ctx.ensure_same(&rhs.ctx)?;
        let inv = rhs.inv()?;
        Ok(self.mul_unchecked(&inv))
    }

    pub fn inv(&self) -> Result<FieldElem> {
        if self.is_zero() {
            return Err(Error::DivideByZero);
        }
        let repr = match (&self.repr, &*self.ctx.0) {
            (Repr::Q(q), _) => Repr::Q(q.recip()),
            (Repr::P(x), FieldKind::Prime { p }) => Repr::P(gfp::inv_mod(*x, *p)),
            (Repr::E(v), FieldKind::Extension { p, k, modulus }) => {
                let inv = gfp::inv_poly_mod(v, modulus, *p).ok_or(Error::DivideByZero)?;
                Repr::E(pad(inv, *k))
            }
            _ => unreachable!("representation does not match field kind"),
        };
        Ok(self.ctx.wrap(repr))
    }

    pub fn pow(&self, mut exp: u64) -> FieldElem {
        let mut acc = self.ctx.one();
        let mut base = self.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            exp >>= 1;
        }
        acc
    }

    pub fn square(&self) -> FieldElem {
        self * self
    }

    /// The unique square root in a field of characteristic 2, computed as
    /// `a^(2^(k-1))` by `k - 1` Frobenius steps.
    pub fn sqrt_char2(&self) -> Result<FieldElem> {
        let ch = self.ctx.characteristic();
        if ch != 2 {
            return Err(Error::WrongCharacteristic {
                expected: "2".into(),
                found: ch,
            });
        }
        let mut b = self.clone();
        for _ in 1..self.ctx.degree() {
            b = b.square();
        }
        Ok(b)
    }

    fn add_unchecked(&self, rhs: &FieldElem) -> FieldElem {
        let repr = match (&self.repr, &rhs.repr, &*self.ctx.0) {
            (Repr::Q(a), Repr::Q(b), _) => Repr::Q(a + b),
            (Repr::P(a), Repr::P(b), FieldKind::Prime { p }) => Repr::P((a + b) % p),
            (Repr::E(a), Repr::E(b), FieldKind::Extension { p, .. }) => {
                Repr::E(a.iter().zip(b).map(|(x, y)| (x + y) % p).collect())
            }
            _ => unreachable!("representation does not match field kind"),
        };
        self.ctx.wrap(repr)
    }

    fn sub_unchecked(&self, rhs: &FieldElem) -> FieldElem {
        self.add_unchecked(&rhs.neg_ref())
    }

    fn mul_unchecked(&self, rhs: &FieldElem) -> FieldElem {
        let repr = match (&self.repr, &rhs.repr, &*self.ctx.0) {
            (Repr::Q(a), Repr::Q(b), _) => Repr::Q(a * b),
            (Repr::P(a), Repr::P(b), FieldKind::Prime { p }) => Repr::P(a * b % p),
            (Repr::E(a), Repr::E(b), FieldKind::Extension { p, k, modulus }) => {
                let prod = gfp::mul(a, b, *p);
                Repr::E(pad(gfp::rem(&prod, modulus, *p), *k))
            }
            _ => unreachable!("representation does not match field kind"),
        };
        self.ctx.wrap(repr)
    }

    fn neg_ref(&self) -> FieldElem {
        let repr = match (&self.repr, &*self.ctx.0) {
            (Repr::Q(a), _) => Repr::Q(-a),
            (Repr::P(a), FieldKind::Prime { p }) => Repr::P((p - a) % p),
            (Repr::E(v), FieldKind::Extension { p, .. }) => {
                Repr::E(v.iter().map(|&c| (p - c) % p).collect())
            }
            _ => unreachable!("representation does not match field kind"),
        };
        self.ctx.wrap(repr)
    }

    /// True when the printed form needs parentheses as a coefficient.
    pub(crate) fn is_compound(&self) -> bool {
        match &self.repr {
            Repr::Q(q) => !q.is_integer(),
            Repr::P(_) => false,
            Repr::E(v) => {
                let nz = v.iter().filter(|&&c| c != 0).count();
                nz > 1 || (nz == 1 && v[0] == 0 && v.iter().any(|&c| c > 1))
            }
        }
    }

    /// Negative rationals print with a leading minus; used by polynomial
    /// printing to emit `a - b` instead of `a + -b`.
    pub(crate) fn is_negative(&self) -> bool {
        matches!(&self.repr, Repr::Q(q) if q.is_negative())
    }
}

fn pad(mut v: Vec<u64>, k: u32) -> Vec<u64> {
    v.resize(k as usize, 0);
    v
}

fn check_same(a: &FieldElem, b: &FieldElem) {
    if a.ctx != b.ctx {
        panic!("field context mismatch: {} vs {}", a.ctx, b.ctx);
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $body:expr) => {
        impl $trait<&FieldElem> for &FieldElem {
            type Output = FieldElem;
            fn $method(self, rhs: &FieldElem) -> FieldElem {
                check_same(self, rhs);
                #[allow(clippy::redundant_closure_call)]
                ($body)(self, rhs)
            }
        }
        impl $trait<FieldElem> for FieldElem {
            type Output = FieldElem;
            fn $method(self, rhs: FieldElem) -> FieldElem {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&FieldElem> for FieldElem {
            type Output = FieldElem;
            fn $method(self, rhs: &FieldElem) -> FieldElem {
                (&self).$method(rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a: &FieldElem, b: &FieldElem| a.add_unchecked(b));
forward_binop!(Sub, sub, |a: &FieldElem, b: &FieldElem| a.sub_unchecked(b));
forward_binop!(Mul, mul, |a: &FieldElem, b: &FieldElem| a.mul_unchecked(b));
forward_binop!(Div, div, |a: &FieldElem, b: &FieldElem| a
    .checked_div(b)
    .expect("division by zero"));

impl Neg for &FieldElem {
    type Output = FieldElem;
    fn neg(self) -> FieldElem {
        self.neg_ref()
    }
}

impl Neg for FieldElem {
    type Output = FieldElem;
    fn neg(self) -> FieldElem {
        self.neg_ref()
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.repr {
            Repr::Q(q) => {
                if q.is_integer() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
            Repr::P(x) => write!(f, "{x}"),
            Repr::E(v) => {
                let mut first = true;
                for (i, &c) in v.iter().enumerate().rev() {
                    if c == 0 {
                        continue;
                    }
                    if !first {
                        write!(f, "+")?;
                    }
                    first = false;
                    match (i, c) {
                        (0, c) => write!(f, "{c}")?,
                        (1, 1) => write!(f, "t")?,
                        (1, c) => write!(f, "{c}*t")?,
                        (i, 1) => write!(f, "t^{i}")?,
                        (i, c) => write!(f, "{c}*t^{i}")?,
                    }
                }
                if first {
                    write!(f, "0")?;
                }
                Ok(())
            }
        }
    }
}
