//! Dense univariate polynomials over a [`FieldCtx`].

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::field::gfp;
use crate::field::{FieldCtx, FieldElem, ModFloorU64};

/// Coefficients constant term first; the leading coefficient is nonzero and
/// the zero polynomial has no coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    ctx: FieldCtx,
    coeffs: Vec<FieldElem>,
}

impl Poly {
    pub fn new(ctx: &FieldCtx, mut coeffs: Vec<FieldElem>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        debug_assert!(coeffs.iter().all(|c| c.ctx() == ctx));
        Poly {
            ctx: ctx.clone(),
            coeffs,
        }
    }

    pub fn from_i64s(ctx: &FieldCtx, coeffs: &[i64]) -> Self {
        Self::new(ctx, coeffs.iter().map(|&c| ctx.from_i64(c)).collect())
    }

    pub fn zero(ctx: &FieldCtx) -> Self {
        Self::new(ctx, Vec::new())
    }

    pub fn one(ctx: &FieldCtx) -> Self {
        Self::constant(ctx.one())
    }

    pub fn constant(c: FieldElem) -> Self {
        let ctx = c.ctx().clone();
        Self::new(&ctx, vec![c])
    }

    pub fn x(ctx: &FieldCtx) -> Self {
        Self::new(ctx, vec![ctx.zero(), ctx.one()])
    }

    /// `x - a`
    pub fn linear(a: &FieldElem) -> Self {
        let ctx = a.ctx().clone();
        Self::new(&ctx, vec![-a, ctx.one()])
    }

    pub fn monomial(c: FieldElem, deg: usize) -> Self {
        let ctx = c.ctx().clone();
        let mut coeffs = vec![ctx.zero(); deg];
        coeffs.push(c);
        Self::new(&ctx, coeffs)
    }

    pub fn ctx(&self) -> &FieldCtx {
        &self.ctx
    }

    pub fn coeffs(&self) -> &[FieldElem] {
        &self.coeffs
    }

    /// Coefficient of `x^i`, zero past the degree.
    pub fn coeff(&self, i: usize) -> FieldElem {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.ctx.zero())
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn leading(&self) -> Option<&FieldElem> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|c| c.is_one())
    }

    pub fn monic(&self) -> Poly {
        match self.leading() {
            None => self.clone(),
            Some(lc) => {
                let inv = lc.inv().expect("leading coefficient is nonzero");
                self.scale(&inv)
            }
        }
    }

    pub fn scale(&self, c: &FieldElem) -> Poly {
        Poly::new(&self.ctx, self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn eval(&self, at: &FieldElem) -> FieldElem {
        self.coeffs
            .iter()
            .rev()
            .fold(self.ctx.zero(), |acc, c| &(&acc * at) + c)
    }

    pub fn pow(&self, mut exp: u32) -> Poly {
        let mut acc = Poly::one(&self.ctx);
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

    /// Coefficientwise derivative in the characteristic of the field.
    pub fn derivative(&self) -> Poly {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * &self.ctx.from_i64(i as i64))
            .collect();
        Poly::new(&self.ctx, coeffs)
    }

    pub fn divrem(&self, rhs: &Poly) -> Result<(Poly, Poly)> {
        self.ctx.ensure_same(&rhs.ctx)?;
        let dr = rhs.degree().ok_or(Error::DivideByZero)?;
        let lead_inv = rhs.coeffs[dr].inv()?;
        let mut r = self.coeffs.clone();
        if r.len() <= dr {
            return Ok((Poly::zero(&self.ctx), self.clone()));
        }
        let mut q = vec![self.ctx.zero(); r.len() - dr];
        for i in (dr..r.len()).rev() {
            if r[i].is_zero() {
                continue;
            }
            let c = &r[i] * &lead_inv;
            for (j, b) in rhs.coeffs.iter().enumerate() {
                let idx = i - dr + j;
                r[idx] = &r[idx] - &(&c * b);
            }
            q[i - dr] = c;
        }
        Ok((Poly::new(&self.ctx, q), Poly::new(&self.ctx, r)))
    }

    pub fn rem(&self, rhs: &Poly) -> Result<Poly> {
        Ok(self.divrem(rhs)?.1)
    }

    /// Division that must leave no remainder.
    pub fn exact_div(&self, rhs: &Poly) -> Result<Option<Poly>> {
        let (q, r) = self.divrem(rhs)?;
        Ok(r.is_zero().then_some(q))
    }

    pub fn divides(&self, other: &Poly) -> bool {
        matches!(other.rem(self), Ok(r) if r.is_zero())
    }

    /// Monic gcd by Euclid's algorithm.
    pub fn gcd(&self, rhs: &Poly) -> Result<Poly> {
        self.ctx.ensure_same(&rhs.ctx)?;
        if self.is_zero() && rhs.is_zero() {
            return Err(Error::BothZero);
        }
        if self.is_zero() || rhs.is_zero() {
            return Ok(if self.is_zero() { rhs.monic() } else { self.monic() });
        }
        if self.coprime_mod_p(rhs) {
            return Ok(Poly::one(&self.ctx));
        }
        let mut a = self.clone();
        let mut b = rhs.clone();
        while !b.is_zero() {
            let r = a.rem(&b)?;
            a = b;
            b = r;
        }
        Ok(a.monic())
    }

    /// Over ℚ, a cheap certificate that `gcd = 1`: reduce modulo a few
    /// word-sized primes that keep both degrees, and test coprimality there.
    /// A constant gcd modulo such a prime forces a constant gcd over ℚ.
    fn coprime_mod_p(&self, rhs: &Poly) -> bool {
        const PRIMES: [u64; 3] = [2_147_483_647, 4_294_967_291, 4_294_967_279];
        if self.ctx.characteristic() != 0 || self.degree() == Some(0) || rhs.degree() == Some(0) {
            return self.degree() == Some(0) || rhs.degree() == Some(0);
        }
        PRIMES.iter().any(|&p| match (self.reduce_mod(p), rhs.reduce_mod(p)) {
            (Some(a), Some(b)) => gfp::gcd(&a, &b, p).len() == 1,
            _ => false,
        })
    }

    /// Coefficients modulo `p`, or `None` if a denominator or the leading
    /// coefficient vanishes there.
    fn reduce_mod(&self, p: u64) -> Option<Vec<u64>> {
        let mut out = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            let q = c.as_rational()?;
            let d = q.denom().mod_floor_u64(p);
            if d == 0 {
                return None;
            }
            out.push(q.numer().mod_floor_u64(p) * gfp::inv_mod(d, p) % p);
        }
        if out.last().is_some_and(|&c| c == 0) {
            return None;
        }
        Some(out)
    }

    pub fn is_squarefree(&self) -> bool {
        match self.gcd(&self.derivative()) {
            Ok(g) => g.degree() == Some(0),
            Err(_) => false,
        }
    }

    /// `p(x + a)`
    pub fn shift(&self, a: &FieldElem) -> Poly {
        let lin = Poly::new(&self.ctx, vec![a.clone(), self.ctx.one()]);
        self.coeffs
            .iter()
            .rev()
            .fold(Poly::zero(&self.ctx), |acc, c| &(&acc * &lin) + &Poly::constant(c.clone()))
    }

    /// `x^n · p(1/x)`; requires `n ≥ deg p`.
    pub fn reversed(&self, n: usize) -> Poly {
        let mut coeffs: Vec<FieldElem> = (0..=n).map(|i| self.coeff(n - i)).collect();
        if self.degree().is_some_and(|d| d > n) {
            panic!("reversal length {n} below degree");
        }
        coeffs.truncate(n + 1);
        Poly::new(&self.ctx, coeffs)
    }

    /// Drop all terms of degree `n` and higher.
    pub fn truncate(&self, n: usize) -> Poly {
        Poly::new(&self.ctx, self.coeffs.iter().take(n).cloned().collect())
    }

    /// Roots in the base field with multiplicity. Finite fields are searched
    /// exhaustively; over ℚ the rational-root candidates are tested. The
    /// roots are ordered by [`FieldElem::canonical_cmp`].
    pub fn roots(&self) -> Vec<(FieldElem, usize)> {
        if self.degree().unwrap_or(0) == 0 {
            return Vec::new();
        }
        let candidates: Vec<FieldElem> = match self.ctx.order() {
            Some(_) => self.ctx.elements().collect(),
            None => rational_root_candidates(self),
        };
        let mut rest = self.clone();
        let mut out = Vec::new();
        for r in candidates {
            let lin = Poly::linear(&r);
            let mut mult = 0;
            while rest.degree().unwrap_or(0) > 0 && rest.eval(&r).is_zero() {
                rest = rest.divrem(&lin).expect("nonzero divisor").0;
                mult += 1;
            }
            if mult > 0 {
                out.push((r, mult));
            }
        }
        out.sort_by(|a, b| a.0.canonical_cmp(&b.0));
        out
    }

    /// Compact form without spaces, e.g. `x^2+t*x+1`.
    pub fn to_compact_string(&self) -> String {
        self.render(false)
    }

    fn render(&self, spaced: bool) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let (plus, minus) = if spaced { (" + ", " - ") } else { ("+", "-") };
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = if neg { -c } else { c.clone() };
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { minus } else { plus });
            }
            let coeff = if mag.is_compound() {
                format!("({mag})")
            } else {
                mag.to_string()
            };
            let var = match i {
                0 => String::new(),
                1 => "x".into(),
                _ => format!("x^{i}"),
            };
            match (i, mag.is_one()) {
                (0, _) => out.push_str(&coeff),
                (_, true) => out.push_str(&var),
                _ => {
                    out.push_str(&coeff);
                    out.push('*');
                    out.push_str(&var);
                }
            }
        }
        out
    }
}

fn rational_root_candidates(p: &Poly) -> Vec<FieldElem> {
    use num_bigint::BigInt;
    use num_integer::Integer;
    use num_rational::BigRational;
    use num_traits::{One, Signed, Zero};

    let ctx = p.ctx();
    // clear denominators to get integer coefficients
    let mut lcm = BigInt::one();
    for c in p.coeffs() {
        let q = c.as_rational().expect("rational coefficients");
        lcm = lcm.lcm(q.denom());
    }
    let ints: Vec<BigInt> = p
        .coeffs()
        .iter()
        .map(|c| (c.as_rational().unwrap() * BigRational::from_integer(lcm.clone())).to_integer())
        .collect();
    let mut out = Vec::new();
    // strip the zero roots first so the constant term is nonzero
    let low = ints.iter().position(|c| !c.is_zero()).unwrap_or(0);
    if low > 0 {
        out.push(ctx.zero());
    }
    let constant = ints[low].abs();
    let lead = ints.last().unwrap().abs();
    let divisors = |n: &BigInt| -> Vec<BigInt> {
        let mut ds = Vec::new();
        let mut d = BigInt::one();
        while &d * &d <= *n {
            if (n % &d).is_zero() {
                ds.push(d.clone());
                ds.push(n / &d);
            }
            d += 1;
        }
        ds
    };
    for num in divisors(&constant) {
        for den in divisors(&lead) {
            for sign in [1, -1] {
                let q = BigRational::new(num.clone() * sign, den.clone());
                let e = ctx.from_rational(&q).expect("nonzero denominator");
                if !out.contains(&e) {
                    out.push(e);
                }
            }
        }
    }
    out
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(true))
    }
}

fn zip_with(a: &Poly, b: &Poly, op: impl Fn(&FieldElem, &FieldElem) -> FieldElem) -> Poly {
    assert!(a.ctx == b.ctx, "field context mismatch: {} vs {}", a.ctx, b.ctx);
    let n = a.coeffs.len().max(b.coeffs.len());
    let coeffs = (0..n).map(|i| op(&a.coeff(i), &b.coeff(i))).collect();
    Poly::new(&a.ctx, coeffs)
}

impl Add<&Poly> for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        zip_with(self, rhs, |x, y| x + y)
    }
}

impl Sub<&Poly> for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        zip_with(self, rhs, |x, y| x - y)
    }
}

impl Mul<&Poly> for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        assert!(self.ctx == rhs.ctx, "field context mismatch: {} vs {}", self.ctx, rhs.ctx);
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero(&self.ctx);
        }
        let mut out = vec![self.ctx.zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        Poly::new(&self.ctx, out)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::new(&self.ctx, self.coeffs.iter().map(|c| -c).collect())
    }
}

macro_rules! owned_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<Poly> for Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Poly> for Poly {
            type Output = Poly;
            fn $method(self, rhs: &Poly) -> Poly {
                (&self).$method(rhs)
            }
        }
    };
}

owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn random_poly(ctx: &FieldCtx, deg: usize, rng: &mut ChaCha8Rng) -> Poly {
        Poly::new(ctx, (0..=deg).map(|_| ctx.random(rng)).collect())
    }

    #[test]
    fn gcd_examples() {
        let q = FieldCtx::rationals();
        let a = Poly::from_i64s(&q, &[-1, 0, 1]);
        let b = Poly::from_i64s(&q, &[-1, 1]);
        assert_eq!(a.gcd(&b).unwrap(), b);

        let f7 = FieldCtx::prime(7).unwrap();
        let f = Poly::from_i64s(&f7, &[1, 0, 0, 0, 0, 1]);
        assert_eq!(f.gcd(&f.derivative()).unwrap(), Poly::one(&f7));

        let f2 = FieldCtx::prime(2).unwrap();
        let h = Poly::from_i64s(&f2, &[0, 1, 1]);
        assert_eq!(h.gcd(&h).unwrap(), h);

        assert_eq!(Poly::zero(&q).gcd(&Poly::zero(&q)), Err(Error::BothZero));
    }

    #[test]
    fn derivative_examples() {
        let f2 = FieldCtx::prime(2).unwrap();
        let a = Poly::from_i64s(&f2, &[1, 0, 1, 1]);
        assert_eq!(a.derivative(), Poly::from_i64s(&f2, &[0, 0, 1]));
        let f5 = FieldCtx::prime(5).unwrap();
        assert!(Poly::from_i64s(&f5, &[0, 0, 0, 0, 0, 1]).derivative().is_zero());
        let q = FieldCtx::rationals();
        assert_eq!(
            Poly::from_i64s(&q, &[0, 3, 1]).derivative(),
            Poly::from_i64s(&q, &[3, 2])
        );
    }

    #[test]
    fn leibniz_and_frobenius() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for ctx in [
            FieldCtx::rationals(),
            FieldCtx::prime(7).unwrap(),
            FieldCtx::extension(2, 4).unwrap(),
        ] {
            for _ in 0..200 {
                let a = random_poly(&ctx, 5, &mut rng);
                let b = random_poly(&ctx, 4, &mut rng);
                let lhs = (&a * &b).derivative();
                let rhs = &(&a * &b.derivative()) + &(&a.derivative() * &b);
                assert_eq!(lhs, rhs);
                let p = ctx.characteristic();
                if p > 0 {
                    assert!(a.pow(p as u32).derivative().is_zero());
                }
            }
        }
    }

    #[test]
    fn divrem_reconstructs() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let ctx = FieldCtx::extension(3, 2).unwrap();
        for _ in 0..100 {
            let a = random_poly(&ctx, 7, &mut rng);
            let b = random_poly(&ctx, 3, &mut rng);
            if b.is_zero() {
                continue;
            }
            let (q, r) = a.divrem(&b).unwrap();
            assert_eq!(&(&q * &b) + &r, a);
            assert!(r.degree() < b.degree() || r.is_zero());
        }
    }

    #[test]
    fn roots_over_finite_and_rational() {
        let f5 = FieldCtx::prime(5).unwrap();
        // (x-1)^2 (x-3)
        let p = &(&Poly::linear(&f5.one()) * &Poly::linear(&f5.one()))
            * &Poly::linear(&f5.from_i64(3));
        let roots = p.roots();
        assert_eq!(roots, vec![(f5.one(), 2), (f5.from_i64(3), 1)]);

        let q = FieldCtx::rationals();
        // 2x^2 - 3x + 1 = (2x - 1)(x - 1), times x
        let p = Poly::from_i64s(&q, &[0, 1, -3, 2]);
        let roots: Vec<String> = p.roots().iter().map(|(r, _)| r.to_string()).collect();
        assert_eq!(roots, vec!["0", "1/2", "1"]);
    }

    #[test]
    fn shift_and_reverse() {
        let q = FieldCtx::rationals();
        let p = Poly::from_i64s(&q, &[1, 2, 3]);
        let a = q.from_i64(2);
        let shifted = p.shift(&a);
        for v in -3..4 {
            let x = q.from_i64(v);
            assert_eq!(shifted.eval(&x), p.eval(&(&x + &a)));
        }
        assert_eq!(p.reversed(3), Poly::from_i64s(&q, &[0, 3, 2, 1]));
    }

    #[test]
    fn display() {
        let q = FieldCtx::rationals();
        assert_eq!(Poly::from_i64s(&q, &[1, 3, 0, 0, 0, 1]).to_string(), "x^5 + 3*x + 1");
        assert_eq!(Poly::from_i64s(&q, &[-1, 0, 1]).to_string(), "x^2 - 1");
        assert_eq!(Poly::from_i64s(&q, &[0, -2]).to_string(), "-2*x");
        let f4 = FieldCtx::extension(2, 2).unwrap();
        let t = f4.generator().unwrap();
        let p = Poly::new(&f4, vec![t.clone(), &t + &f4.one()]);
        assert_eq!(p.to_compact_string(), "(t+1)*x+t");
    }
}
