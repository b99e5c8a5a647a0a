//! Explicit bases, coordinates and the maps `Sym² H⁰(ω) → H⁰(ω⊗²)`,
//! `μ0` and `μ1` as exact matrices.

use std::fmt;

use super::ffield::{FunctionField, Section};
use crate::curves::CurveModel;
use crate::error::{Error, Result};
use crate::field::FieldElem;
use crate::linalg::Matrix;
use crate::poly::Poly;
use crate::ratfunc::RatFunc;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpaceLabel {
    H0L,
    H0Omega,
    H0OmegaLdual,
    H0Omega2Ambient,
}

impl fmt::Display for SpaceLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SpaceLabel::H0L => "H0(L)",
            SpaceLabel::H0Omega => "H0(omega)",
            SpaceLabel::H0OmegaLdual => "H0(omega x L^-1)",
            SpaceLabel::H0Omega2Ambient => "H0(omega^2)",
        })
    }
}

/// An ordered basis of a space of sections.
#[derive(Clone, Debug)]
pub struct SpaceBasis {
    pub label: SpaceLabel,
    pub sections: Vec<Section>,
}

impl SpaceBasis {
    pub fn dim(&self) -> usize {
        self.sections.len()
    }
}

/// Dimension of `H⁰(ω⊗²)` by Riemann–Roch.
pub fn omega2_dim(g: usize) -> usize {
    3 * g - 3
}

#[derive(Clone, Debug)]
pub enum Codomain {
    Basis(SpaceLabel),
    /// numerator coefficients over the model's fixed denominators
    Coordinates { dx_power: u8 },
}

/// A linear map written as one matrix row per domain basis vector.
#[derive(Clone, Debug)]
pub struct LinMap {
    pub domain_labels: Vec<String>,
    pub codomain: Codomain,
    pub matrix: Matrix,
}

impl LinMap {
    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }
}

fn regular_section(ff: &FunctionField, even: RatFunc, dx_power: u8) -> Section {
    Section::new(ff.from_ratfunc(even), dx_power)
}

/// `x^i dx/y` written as `(x^i/f) y dx`.
fn odd_model_form(ff: &FunctionField, f: &Poly, i: usize) -> Section {
    let ctx = ff.ctx();
    let odd = RatFunc::new(Poly::monomial(ctx.one(), i), f.clone()).expect("f is nonzero");
    Section::new(ff.elem(RatFunc::zero(ctx), odd), 1)
}

pub fn basis_h0_omega(ff: &FunctionField) -> SpaceBasis {
    let ctx = ff.ctx();
    let sections = match ff.model() {
        CurveModel::Odd(m) => (0..m.genus()).map(|i| odd_model_form(ff, m.f(), i)).collect(),
        CurveModel::AS(m) => m
            .branch_points()
            .map(|a| regular_section(ff, RatFunc::pole(ctx.one(), a, 1), 1))
            .collect(),
    };
    SpaceBasis {
        label: SpaceLabel::H0Omega,
        sections,
    }
}

/// Bases of `H⁰(L)` and `H⁰(ω ⊗ L⁻¹)`.
pub fn basis_h0_l_and_omega_ldual(ff: &FunctionField) -> (SpaceBasis, SpaceBasis) {
    let ctx = ff.ctx();
    let (l, rest) = match ff.model() {
        CurveModel::Odd(m) => {
            let l = vec![
                regular_section(ff, RatFunc::one(ctx), 0),
                Section::new(ff.x(), 0),
            ];
            let rest = (0..m.genus() - 1).map(|j| odd_model_form(ff, m.f(), j)).collect();
            (l, rest)
        }
        CurveModel::AS(m) => {
            let a1 = &m.branch()[0].a;
            let l = vec![
                regular_section(ff, RatFunc::one(ctx), 0),
                Section::new(ff.from_poly(Poly::linear(a1)), 0),
            ];
            let rest = m.branch()[1..]
                .iter()
                .map(|t| {
                    let den = &Poly::linear(a1) * &Poly::linear(&t.a);
                    let r = RatFunc::new(Poly::one(ctx), den).expect("nonzero");
                    regular_section(ff, r, 1)
                })
                .collect();
            (l, rest)
        }
    };
    (
        SpaceBasis {
            label: SpaceLabel::H0L,
            sections: l,
        },
        SpaceBasis {
            label: SpaceLabel::H0OmegaLdual,
            sections: rest,
        },
    )
}

/// Common denominators `(even, odd)` for sections of weight `m`, with the
/// number of numerator coefficients kept for each part.
fn frame(ff: &FunctionField, dx_power: u8) -> (Poly, usize, Poly, usize) {
    let (even, odd) = match ff.model() {
        CurveModel::Odd(m) => (m.f().clone(), m.f().clone()),
        CurveModel::AS(m) => {
            let d = m.branch_poly().pow(dx_power as u32);
            (d.clone(), d)
        }
    };
    let we = even.degree().unwrap_or(0) + 1;
    let wo = odd.degree().unwrap_or(0) + 1;
    (even, we, odd, wo)
}

fn push_numerator(
    out: &mut Vec<FieldElem>,
    part: &RatFunc,
    den: &Poly,
    width: usize,
    what: &str,
) -> Result<()> {
    let num = part
        .numerator_over(den)
        .ok_or_else(|| Error::DenominatorOverflow(format!("{what} part {part} not over {den}")))?;
    if num.degree().is_some_and(|d| d >= width) {
        return Err(Error::DenominatorOverflow(format!("{what} part {part} has a pole at infinity")));
    }
    out.extend((0..width).map(|i| num.coeff(i)));
    Ok(())
}

/// Coordinate rows of sections of a common weight: even-part numerator
/// coefficients followed by odd-part numerator coefficients.
pub fn coordinatize(ff: &FunctionField, sections: &[Section], dx_power: u8) -> Result<Matrix> {
    let (even_den, we, odd_den, wo) = frame(ff, dx_power);
    let mut rows = Vec::with_capacity(sections.len());
    for s in sections {
        if s.dx_power != dx_power {
            return Err(Error::DenominatorOverflow(format!(
                "section of weight {} where weight {dx_power} was expected",
                s.dx_power
            )));
        }
        let mut row = Vec::with_capacity(we + wo);
        push_numerator(&mut row, s.elem.even(), &even_den, we, "even")?;
        push_numerator(&mut row, s.elem.odd(), &odd_den, wo, "odd")?;
        rows.push(row);
    }
    Ok(Matrix::from_rows(ff.ctx(), we + wo, rows))
}

/// Number of even coordinates for weight `m`; the rest are odd.
pub fn even_width(ff: &FunctionField, dx_power: u8) -> usize {
    frame(ff, dx_power).1
}

/// Coordinates in `H⁰(ω⊗²)` of a list of quadratic differentials.
pub fn coordinatize_omega2(ff: &FunctionField, sections: &[Section]) -> Result<LinMap> {
    Ok(LinMap {
        domain_labels: (0..sections.len()).map(|i| format!("s{i}")).collect(),
        codomain: Codomain::Coordinates { dx_power: 2 },
        matrix: coordinatize(ff, sections, 2)?,
    })
}

/// The products `ωᵢ·ωⱼ`, `i ≤ j`.
pub fn sym2_products(ff: &FunctionField) -> Result<(Vec<String>, Vec<Section>)> {
    let basis = basis_h0_omega(ff);
    let mut labels = Vec::new();
    let mut products = Vec::new();
    for i in 0..basis.dim() {
        for j in i..basis.dim() {
            labels.push(format!("w{i}*w{j}"));
            products.push(basis.sections[i].mul(&basis.sections[j])?);
        }
    }
    Ok((labels, products))
}

/// `Sym² H⁰(ω) → H⁰(ω⊗²)`.
pub fn mult_map(ff: &FunctionField) -> Result<LinMap> {
    let (labels, products) = sym2_products(ff)?;
    let matrix = coordinatize(ff, &products, 2)?;
    Ok(LinMap {
        domain_labels: labels,
        codomain: Codomain::Coordinates { dx_power: 2 },
        matrix,
    })
}

/// The tensor basis `rₐ ⊗ s_b` of `H⁰(L) ⊗ H⁰(ω ⊗ L⁻¹)`, index `a·(g−1) + b`.
pub struct TensorBasis {
    pub l: SpaceBasis,
    pub rest: SpaceBasis,
}

impl TensorBasis {
    pub fn new(ff: &FunctionField) -> Self {
        let (l, rest) = basis_h0_l_and_omega_ldual(ff);
        TensorBasis { l, rest }
    }

    pub fn len(&self) -> usize {
        self.l.dim() * self.rest.dim()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// `(r, s)` for a tensor index.
    pub fn factors(&self, idx: usize) -> (&Section, &Section) {
        let n = self.rest.dim();
        (&self.l.sections[idx / n], &self.rest.sections[idx % n])
    }

    pub fn labels(&self) -> Vec<String> {
        (0..self.len())
            .map(|idx| format!("r{}(x)s{}", idx / self.rest.dim(), idx % self.rest.dim()))
            .collect()
    }

    /// `Σ cᵢ · f(rᵢ, sᵢ)` over the nonzero entries of `v`.
    fn combine<F>(&self, v: &[FieldElem], weight: u8, ff: &FunctionField, mut term: F) -> Result<Section>
    where
        F: FnMut(&Section, &Section) -> Result<Section>,
    {
        let mut acc = Section::new(ff.zero(), weight);
        for (idx, c) in v.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (r, s) = self.factors(idx);
            acc = &acc + &term(r, s)?.scale(c);
        }
        Ok(acc)
    }
}

/// `μ0 : H⁰(L) ⊗ H⁰(ω ⊗ L⁻¹) → H⁰(ω)` in the basis of [`basis_h0_omega`].
pub fn mu0_map(ff: &FunctionField) -> Result<LinMap> {
    let tensors = TensorBasis::new(ff);
    let omega = basis_h0_omega(ff);
    let target = coordinatize(ff, &omega.sections, 1)?;
    let mut rows = Vec::with_capacity(tensors.len());
    for idx in 0..tensors.len() {
        let (r, s) = tensors.factors(idx);
        let prod = r.mul(s)?;
        let coords = coordinatize(ff, std::slice::from_ref(&prod), 1)?;
        let row = target.solve_left(coords.row(0)).ok_or_else(|| {
            Error::DenominatorOverflow(format!("product {prod} is not in H0(omega)"))
        })?;
        rows.push(row);
    }
    Ok(LinMap {
        domain_labels: tensors.labels(),
        codomain: Codomain::Basis(SpaceLabel::H0Omega),
        matrix: Matrix::from_rows(ff.ctx(), omega.dim(), rows),
    })
}

/// Basis of `ker μ0` by exact elimination.
pub fn mu0_kernel(mu0: &LinMap) -> Vec<Vec<FieldElem>> {
    mu0.matrix.left_kernel()
}

fn check_kernel(mu0: &LinMap, ker_basis: &[Vec<FieldElem>]) -> Result<()> {
    for (index, v) in ker_basis.iter().enumerate() {
        if v.len() != mu0.matrix.nrows() || mu0.matrix.left_apply(v).iter().any(|e| !e.is_zero()) {
            return Err(Error::NotInKernel { index });
        }
    }
    Ok(())
}

/// `Σ c·dr·s` for each kernel vector.
pub fn mu1_sections(ff: &FunctionField, ker_basis: &[Vec<FieldElem>]) -> Result<Vec<Section>> {
    let tensors = TensorBasis::new(ff);
    check_kernel(&mu0_map(ff)?, ker_basis)?;
    ker_basis
        .iter()
        .map(|v| tensors.combine(v, 2, ff, |r, s| r.d_coefficient()?.mul(s)))
        .collect()
}

/// `−Σ c·r·ds` for each kernel vector, where `ds` differentiates the
/// coefficient of `s` against `dx`.
pub fn mu1_sections_dual(ff: &FunctionField, ker_basis: &[Vec<FieldElem>]) -> Result<Vec<Section>> {
    let tensors = TensorBasis::new(ff);
    let minus_one = -&ff.ctx().one();
    ker_basis
        .iter()
        .map(|v| {
            let s = tensors.combine(v, 2, ff, |r, s| r.mul(&s.d_coefficient()?))?;
            Ok(s.scale(&minus_one))
        })
        .collect()
}

/// `μ1 : ker μ0 → H⁰(ω⊗²)`, `r ⊗ s ↦ dr·s`, on the given kernel basis.
pub fn mu1_image(ff: &FunctionField, ker_basis: &[Vec<FieldElem>]) -> Result<LinMap> {
    let sections = mu1_sections(ff, ker_basis)?;
    Ok(LinMap {
        domain_labels: (0..ker_basis.len()).map(|i| format!("k{i}")).collect(),
        codomain: Codomain::Coordinates { dx_power: 2 },
        matrix: coordinatize(ff, &sections, 2)?,
    })
}

/// Kernel generators in closed form, written in the tensor basis.
///
/// Odd model: `x ⊗ xʲdx/y − 1 ⊗ xʲ⁺¹dx/y` for `j = 0..g−3`.
/// AS model, with `sᵢ = dx/((x−a₁)(x−aᵢ))`: for `i = 3..g`,
/// `(x−a₁) ⊗ (s₂ − sᵢ) + (a₁−a₂)·1 ⊗ s₂ − (a₁−aᵢ)·1 ⊗ sᵢ`.
pub fn closed_form_kernel(ff: &FunctionField) -> Vec<Vec<FieldElem>> {
    let ctx = ff.ctx();
    let g = ff.model().genus();
    let n = g - 1;
    let mut out = Vec::new();
    match ff.model() {
        CurveModel::Odd(_) => {
            for j in 0..g.saturating_sub(2) {
                let mut v = vec![ctx.zero(); 2 * n];
                v[n + j] = ctx.one();
                v[j + 1] = -&ctx.one();
                out.push(v);
            }
        }
        CurveModel::AS(m) => {
            let a: Vec<&FieldElem> = m.branch_points().collect();
            // s-index of aᵢ (1-based i ≥ 2) is i − 2
            for i in 3..=g {
                let mut v = vec![ctx.zero(); 2 * n];
                v[n] = ctx.one();
                v[n + i - 2] = -&ctx.one();
                v[0] = a[0] - a[1];
                v[i - 2] = -&(a[0] - a[i - 1]);
                out.push(v);
            }
        }
    }
    out
}

/// Split coordinate columns into the even block and the odd block.
pub fn parity_blocks(m: &Matrix, even: usize) -> (Matrix, Matrix) {
    (m.select_columns(0..even), m.select_columns(even..m.ncols()))
}

/// Is every row zero?
pub fn is_zero_matrix(m: &Matrix) -> bool {
    m.rows().all(|r| r.iter().all(|e| e.is_zero()))
}
