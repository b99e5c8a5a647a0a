//! Reduced rational functions and partial-fraction decomposition.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{FieldCtx, FieldElem};
use crate::poly::Poly;

/// `num / den` with `gcd(num, den) = 1` and `den` monic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

impl RatFunc {
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        num.ctx().ensure_same(den.ctx())?;
        if den.is_zero() {
            return Err(Error::DivideByZero);
        }
        if num.is_zero() {
            return Ok(Self::zero(num.ctx()));
        }
        let g = num.gcd(&den)?;
        let num = num.divrem(&g)?.0;
        let den = den.divrem(&g)?.0;
        let lc = den.leading().expect("nonzero").inv()?;
        Ok(RatFunc {
            num: num.scale(&lc),
            den: den.scale(&lc),
        })
    }

    pub fn from_poly(p: Poly) -> Self {
        let ctx = p.ctx().clone();
        RatFunc {
            num: p,
            den: Poly::one(&ctx),
        }
    }

    pub fn constant(c: FieldElem) -> Self {
        Self::from_poly(Poly::constant(c))
    }

    pub fn zero(ctx: &FieldCtx) -> Self {
        Self::from_poly(Poly::zero(ctx))
    }

    pub fn one(ctx: &FieldCtx) -> Self {
        Self::from_poly(Poly::one(ctx))
    }

    /// `c / (x - a)^k`
    pub fn pole(c: FieldElem, a: &FieldElem, k: u32) -> Self {
        Self::new(Poly::constant(c), Poly::linear(a).pow(k)).expect("nonzero denominator")
    }

    pub fn ctx(&self) -> &FieldCtx {
        self.num.ctx()
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_poly(&self) -> bool {
        self.den.degree() == Some(0)
    }

    pub fn scale(&self, c: &FieldElem) -> RatFunc {
        if c.is_zero() {
            return Self::zero(self.ctx());
        }
        RatFunc {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn inv(&self) -> Result<RatFunc> {
        RatFunc::new(self.den.clone(), self.num.clone())
    }

    pub fn checked_div(&self, rhs: &RatFunc) -> Result<RatFunc> {
        self.ctx().ensure_same(rhs.ctx())?;
        if rhs.is_zero() {
            return Err(Error::DivideByZero);
        }
        RatFunc::new(&self.num * &rhs.den, &self.den * &rhs.num)
    }

    /// Quotient rule. The cancellation against `den²` is done in two
    /// rounds against `den` to keep the gcds at the degree of `den`.
    pub fn derivative(&self) -> RatFunc {
        let ctx = self.ctx().clone();
        let mut num = &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative());
        if num.is_zero() {
            return Self::zero(&ctx);
        }
        let mut left = self.den.clone();
        let mut right = self.den.clone();
        for part in [&mut left, &mut right] {
            let g = num.gcd(part).expect("nonzero");
            if g.degree() != Some(0) {
                num = num.divrem(&g).expect("nonzero").0;
                *part = part.divrem(&g).expect("nonzero").0;
            }
        }
        Self::from_parts_coprime(num, &left * &right)
    }

    /// Assemble from parts already known to be coprime; normalizes the
    /// denominator to be monic.
    fn from_parts_coprime(num: Poly, den: Poly) -> RatFunc {
        let lc = den.leading().expect("nonzero denominator").inv().expect("nonzero");
        RatFunc {
            num: num.scale(&lc),
            den: den.scale(&lc),
        }
    }

    pub fn pow(&self, exp: u32) -> RatFunc {
        RatFunc {
            num: self.num.pow(exp),
            den: self.den.pow(exp),
        }
    }

    /// Numerator of this function written over the common denominator
    /// `common`; `None` if `den` does not divide `common`.
    pub fn numerator_over(&self, common: &Poly) -> Option<Poly> {
        let cofactor = common.exact_div(&self.den).ok()??;
        Some(&self.num * &cofactor)
    }

    /// Exact decomposition into a polynomial part plus `c / (x - a)^j`
    /// terms. The denominator must split into linear factors over the field.
    pub fn partial_fractions(&self) -> Result<PartialFraction> {
        let ctx = self.ctx().clone();
        let (poly_part, rem) = self.num.divrem(&self.den)?;
        let roots = self.den.roots();
        // verify the roots account for the whole denominator
        let mut split = Poly::one(&ctx);
        for (a, m) in &roots {
            split = &split * &Poly::linear(a).pow(*m as u32);
        }
        if split != self.den {
            let residual = self.den.exact_div(&split)?.expect("product of factors divides den");
            return Err(Error::NonSplitDenominator {
                residual: residual.to_string(),
            });
        }
        let mut terms = Vec::new();
        for (a, m) in &roots {
            // den = (x-a)^m * q; Taylor-expand rem/q at a to order m
            let q = self
                .den
                .exact_div(&Poly::linear(a).pow(*m as u32))?
                .expect("root factor divides den");
            let r_shift = rem.shift(a).truncate(*m);
            let q_shift = q.shift(a).truncate(*m);
            let series = series_div(&r_shift, &q_shift, *m)?;
            // coefficient of u^i contributes to the (x-a)^(m-i) term
            for (i, c) in series.into_iter().enumerate() {
                if !c.is_zero() {
                    terms.push(PfTerm {
                        root: a.clone(),
                        power: (*m - i) as u32,
                        numerator: c,
                    });
                }
            }
        }
        terms.sort_by(|s, t| s.root.canonical_cmp(&t.root).then(t.power.cmp(&s.power)));
        Ok(PartialFraction { poly_part, terms })
    }
}

/// First `n` coefficients of the power series `a / b`, `b(0) ≠ 0`.
fn series_div(a: &Poly, b: &Poly, n: usize) -> Result<Vec<FieldElem>> {
    let b0_inv = b.coeff(0).inv()?;
    let mut out: Vec<FieldElem> = Vec::with_capacity(n);
    for i in 0..n {
        let mut acc = a.coeff(i);
        for (j, o) in out.iter().enumerate() {
            acc = &acc - &(o * &b.coeff(i - j));
        }
        out.push(&acc * &b0_inv);
    }
    Ok(out)
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_poly() {
            return write!(f, "{}", self.num);
        }
        let paren = |p: &Poly| {
            if p.coeffs().iter().filter(|c| !c.is_zero()).count() > 1 {
                format!("({p})")
            } else {
                p.to_string()
            }
        };
        write!(f, "{}/{}", paren(&self.num), paren(&self.den))
    }
}

fn combine(a: &RatFunc, b: &RatFunc, sign_sub: bool) -> RatFunc {
    let left = &a.num * &b.den;
    let right = &b.num * &a.den;
    let num = if sign_sub { &left - &right } else { &left + &right };
    RatFunc::new(num, &a.den * &b.den).expect("nonzero denominator")
}

impl Add<&RatFunc> for &RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        if self.den == rhs.den {
            return RatFunc::new(&self.num + &rhs.num, self.den.clone()).expect("nonzero");
        }
        combine(self, rhs, false)
    }
}

impl Sub<&RatFunc> for &RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        if self.den == rhs.den {
            return RatFunc::new(&self.num - &rhs.num, self.den.clone()).expect("nonzero");
        }
        combine(self, rhs, true)
    }
}

impl Mul<&RatFunc> for &RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        if self.is_zero() || rhs.is_zero() {
            return RatFunc::zero(self.ctx());
        }
        if self.is_poly() && rhs.is_poly() {
            // both denominators are 1 by monicity
            return RatFunc::from_poly(&self.num * &rhs.num);
        }
        // cross-cancel: each numerator is already coprime to its own denominator
        let g1 = self.num.gcd(&rhs.den).expect("nonzero");
        let g2 = rhs.num.gcd(&self.den).expect("nonzero");
        let n1 = self.num.divrem(&g1).expect("nonzero").0;
        let d2 = rhs.den.divrem(&g1).expect("nonzero").0;
        let n2 = rhs.num.divrem(&g2).expect("nonzero").0;
        let d1 = self.den.divrem(&g2).expect("nonzero").0;
        RatFunc::from_parts_coprime(&n1 * &n2, &d1 * &d2)
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

macro_rules! owned_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<RatFunc> for RatFunc {
            type Output = RatFunc;
            fn $method(self, rhs: RatFunc) -> RatFunc {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&RatFunc> for RatFunc {
            type Output = RatFunc;
            fn $method(self, rhs: &RatFunc) -> RatFunc {
                (&self).$method(rhs)
            }
        }
    };
}

owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);

/// `numerator / (x - root)^power`
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PfTerm {
    pub root: FieldElem,
    pub power: u32,
    pub numerator: FieldElem,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartialFraction {
    pub poly_part: Poly,
    /// Sorted by root, then by decreasing power; zero numerators omitted.
    pub terms: Vec<PfTerm>,
}

impl PartialFraction {
    pub fn recombine(&self) -> RatFunc {
        self.terms.iter().fold(
            RatFunc::from_poly(self.poly_part.clone()),
            |acc, t| &acc + &RatFunc::pole(t.numerator.clone(), &t.root, t.power),
        )
    }

    /// Numerator of the `(x - root)^power` term, zero when absent.
    pub fn coefficient(&self, root: &FieldElem, power: u32) -> FieldElem {
        self.terms
            .iter()
            .find(|t| &t.root == root && t.power == power)
            .map(|t| t.numerator.clone())
            .unwrap_or_else(|| root.ctx().zero())
    }
}

#[derive(Serialize)]
struct PfTermJson {
    root: String,
    power: u32,
    numerator: String,
}

impl Serialize for PartialFraction {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr {
            poly_part: String,
            terms: Vec<PfTermJson>,
        }
        Repr {
            poly_part: self.poly_part.to_string(),
            terms: self
                .terms
                .iter()
                .map(|t| PfTermJson {
                    root: t.root.to_string(),
                    power: t.power,
                    numerator: t.numerator.to_string(),
                })
                .collect(),
        }
        .serialize(s)
    }
}
