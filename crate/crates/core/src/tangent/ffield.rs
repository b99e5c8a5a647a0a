//! The function field `k(x)[y]` of a model, elements written as
//! `even + odd·y`, and differential sections `elem · dx^m`.

use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::sync::Arc;

use crate::curves::CurveModel;
use crate::error::{Error, Result};
use crate::field::{FieldCtx, FieldElem};
use crate::poly::Poly;
use crate::ratfunc::RatFunc;

#[derive(Debug)]
struct Inner {
    model: CurveModel,
    /// `y² = f` (odd model) or `y² = y + f` (Artin–Schreier model)
    f: RatFunc,
    /// `y'/y = f'/(2f)` for the odd model, `y' = f'` for the AS model
    dy: RatFunc,
    /// squarefree polynomial whose powers may appear in denominators
    branch: Poly,
}

/// Shared handle on a model's function field.
#[derive(Clone, Debug)]
pub struct FunctionField(Arc<Inner>);

impl PartialEq for FunctionField {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.model == other.0.model
    }
}

impl Eq for FunctionField {}

impl FunctionField {
    pub fn new(model: &CurveModel) -> Self {
        let ctx = model.ctx().clone();
        let (f, dy, branch) = match model {
            CurveModel::Odd(m) => {
                let f = RatFunc::from_poly(m.f().clone());
                let two_f = RatFunc::from_poly(m.f().scale(&ctx.from_i64(2)));
                let dy = RatFunc::from_poly(m.f().derivative())
                    .checked_div(&two_f)
                    .expect("f is nonzero");
                (f, dy, m.f().clone())
            }
            CurveModel::AS(m) => {
                let f = m.f();
                let dy = f.derivative();
                (f, dy, m.branch_poly())
            }
        };
        FunctionField(Arc::new(Inner {
            model: model.clone(),
            f,
            dy,
            branch,
        }))
    }

    pub fn model(&self) -> &CurveModel {
        &self.0.model
    }

    pub fn ctx(&self) -> &FieldCtx {
        self.0.model.ctx()
    }

    pub fn is_artin_schreier(&self) -> bool {
        matches!(self.0.model, CurveModel::AS(_))
    }

    /// Right-hand side `f` of the defining relation.
    pub fn f(&self) -> &RatFunc {
        &self.0.f
    }

    pub fn elem(&self, even: RatFunc, odd: RatFunc) -> FFElem {
        FFElem {
            ff: self.clone(),
            even,
            odd,
        }
    }

    pub fn from_ratfunc(&self, r: RatFunc) -> FFElem {
        self.elem(r, RatFunc::zero(self.ctx()))
    }

    pub fn from_poly(&self, p: Poly) -> FFElem {
        self.from_ratfunc(RatFunc::from_poly(p))
    }

    pub fn zero(&self) -> FFElem {
        self.from_ratfunc(RatFunc::zero(self.ctx()))
    }

    pub fn one(&self) -> FFElem {
        self.from_ratfunc(RatFunc::one(self.ctx()))
    }

    pub fn x(&self) -> FFElem {
        self.from_poly(Poly::x(self.ctx()))
    }

    pub fn y(&self) -> FFElem {
        self.elem(RatFunc::zero(self.ctx()), RatFunc::one(self.ctx()))
    }

    /// `true` if every irreducible factor of `den` divides the branch polynomial.
    fn supported(&self, den: &Poly) -> bool {
        let mut rest = den.clone();
        loop {
            if rest.degree() == Some(0) {
                return true;
            }
            let g = rest.gcd(&self.0.branch).expect("nonzero");
            if g.degree() == Some(0) {
                return false;
            }
            rest = rest.divrem(&g).expect("nonzero").0;
        }
    }
}

/// `even + odd·y`
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FFElem {
    ff: FunctionField,
    even: RatFunc,
    odd: RatFunc,
}

impl FFElem {
    pub fn field(&self) -> &FunctionField {
        &self.ff
    }

    pub fn even(&self) -> &RatFunc {
        &self.even
    }

    pub fn odd(&self) -> &RatFunc {
        &self.odd
    }

    pub fn is_zero(&self) -> bool {
        self.even.is_zero() && self.odd.is_zero()
    }

    pub fn scale(&self, c: &FieldElem) -> FFElem {
        self.ff.elem(self.even.scale(c), self.odd.scale(c))
    }

    pub fn scale_ratfunc(&self, r: &RatFunc) -> FFElem {
        self.ff.elem(&self.even * r, &self.odd * r)
    }

    /// Product reduced by the curve relation.
    pub fn mul(&self, rhs: &FFElem) -> Result<FFElem> {
        if self.ff != rhs.ff {
            return Err(Error::ModelMismatch);
        }
        let f = self.ff.f();
        let oo = &self.odd * &rhs.odd;
        let cross = &(&self.even * &rhs.odd) + &(&self.odd * &rhs.even);
        let even = &(&self.even * &rhs.even) + &(&oo * f);
        // y² = y + f contributes the extra o₁o₂·y
        let odd = if self.ff.is_artin_schreier() {
            &cross + &oo
        } else {
            cross
        };
        Ok(self.ff.elem(even, odd))
    }

    /// Derivative with respect to `x`, as a coefficient of `dx`.
    pub fn derivative(&self) -> Result<FFElem> {
        let dy = &self.ff.0.dy;
        let (even, odd) = if self.ff.is_artin_schreier() {
            (&self.even.derivative() + &(&self.odd * dy), self.odd.derivative())
        } else {
            (self.even.derivative(), &self.odd.derivative() + &(&self.odd * dy))
        };
        if !self.ff.supported(even.den()) || !self.ff.supported(odd.den()) {
            return Err(Error::PoleAtBranch);
        }
        Ok(self.ff.elem(even, odd))
    }
}

impl fmt::Display for FFElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.even.is_zero(), self.odd.is_zero()) {
            (_, true) => write!(f, "{}", self.even),
            (true, false) => write!(f, "({})*y", self.odd),
            (false, false) => write!(f, "{} + ({})*y", self.even, self.odd),
        }
    }
}

impl Add<&FFElem> for &FFElem {
    type Output = FFElem;
    fn add(self, rhs: &FFElem) -> FFElem {
        assert!(self.ff == rhs.ff, "function field mismatch");
        self.ff.elem(&self.even + &rhs.even, &self.odd + &rhs.odd)
    }
}

impl Sub<&FFElem> for &FFElem {
    type Output = FFElem;
    fn sub(self, rhs: &FFElem) -> FFElem {
        assert!(self.ff == rhs.ff, "function field mismatch");
        self.ff.elem(&self.even - &rhs.even, &self.odd - &rhs.odd)
    }
}

impl Neg for &FFElem {
    type Output = FFElem;
    fn neg(self) -> FFElem {
        self.ff.elem(-&self.even, -&self.odd)
    }
}

/// `elem · (dx)^dx_power`
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Section {
    pub elem: FFElem,
    pub dx_power: u8,
}

impl Section {
    pub fn new(elem: FFElem, dx_power: u8) -> Self {
        Section { elem, dx_power }
    }

    pub fn mul(&self, rhs: &Section) -> Result<Section> {
        Ok(Section::new(self.elem.mul(&rhs.elem)?, self.dx_power + rhs.dx_power))
    }

    pub fn scale(&self, c: &FieldElem) -> Section {
        Section::new(self.elem.scale(c), self.dx_power)
    }

    /// `d(coefficient) · dx^(m+1)`, the derivative of the coefficient
    /// against the fixed form `dx^m`.
    pub fn d_coefficient(&self) -> Result<Section> {
        Ok(Section::new(self.elem.derivative()?, self.dx_power + 1))
    }

    pub fn is_zero(&self) -> bool {
        self.elem.is_zero()
    }
}

impl Add<&Section> for &Section {
    type Output = Section;
    fn add(self, rhs: &Section) -> Section {
        assert_eq!(self.dx_power, rhs.dx_power, "adding sections of different weight");
        Section::new(&self.elem + &rhs.elem, self.dx_power)
    }
}

impl fmt::Display for Section {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.dx_power {
            0 => write!(f, "{}", self.elem),
            1 => write!(f, "({})*dx", self.elem),
            m => write!(f, "({})*dx^{m}", self.elem),
        }
    }
}

/// Multiply two function field elements.
pub fn ff_mul(a: &FFElem, b: &FFElem) -> Result<FFElem> {
    a.mul(b)
}

/// `d a`, a section of weight 1.
pub fn ff_differential(a: &FFElem) -> Result<Section> {
    Ok(Section::new(a.derivative()?, 1))
}
