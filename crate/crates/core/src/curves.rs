//! Hyperelliptic curve models and the characteristic-2 normal form.
//!
//! Odd characteristic curves are `y² = f` with `f` squarefree of degree
//! `2g + 1`. In characteristic 2 the ordinary normal form is the
//! Artin–Schreier equation `y² - y = α₀x + Σ αᵢ/(x - aᵢ)`.

use std::fmt;

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{FieldCtx, FieldElem};
use crate::poly::Poly;
use crate::ratfunc::RatFunc;

fn require_genus(g: usize) -> Result<()> {
    if g < 2 {
        return Err(Error::InvalidGenus(g));
    }
    Ok(())
}

fn char_label(ctx: &FieldCtx) -> String {
    match (ctx.characteristic(), ctx.degree()) {
        (0, _) => "0".into(),
        (p, 1) => p.to_string(),
        (p, k) => format!("{p}^{k}"),
    }
}

/// `y² = f`, char ≠ 2, `deg f = 2g + 1`, `gcd(f, f') = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OddModel {
    f: Poly,
    genus: usize,
}

impl OddModel {
    pub fn new(f: Poly, genus: usize) -> Result<Self> {
        let ch = f.ctx().characteristic();
        if ch == 2 {
            return Err(Error::WrongCharacteristic {
                expected: "not 2".into(),
                found: ch,
            });
        }
        require_genus(genus)?;
        let deg = f.degree().unwrap_or(0);
        if deg != 2 * genus + 1 {
            return Err(Error::WrongDegree {
                expected: format!("2g+1 = {}", 2 * genus + 1),
                found: deg,
            });
        }
        if !f.is_squarefree() {
            return Err(Error::NotSquarefree(f.to_string()));
        }
        Ok(OddModel { f, genus })
    }

    /// Genus read off from an odd degree `2g + 1`.
    pub fn from_poly(f: Poly) -> Result<Self> {
        let deg = f.degree().unwrap_or(0);
        if deg.is_multiple_of(2) || deg < 5 {
            return Err(Error::WrongDegree {
                expected: "odd degree 2g+1 with g >= 2".into(),
                found: deg,
            });
        }
        Self::new(f, (deg - 1) / 2)
    }

    pub fn f(&self) -> &Poly {
        &self.f
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn ctx(&self) -> &FieldCtx {
        self.f.ctx()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BranchTerm {
    pub a: FieldElem,
    pub alpha: FieldElem,
}

/// `y² - y = α₀x + Σ αᵢ/(x - aᵢ)` over a field of characteristic 2.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ASModel {
    alpha0: FieldElem,
    branch: Vec<BranchTerm>,
}

impl ASModel {
    pub fn new(alpha0: FieldElem, branch: Vec<BranchTerm>) -> Result<Self> {
        let ctx = alpha0.ctx().clone();
        if !ctx.is_char2() {
            return Err(Error::WrongCharacteristic {
                expected: "2".into(),
                found: ctx.characteristic(),
            });
        }
        require_genus(branch.len())?;
        for (i, t) in branch.iter().enumerate() {
            ctx.ensure_same(t.a.ctx())?;
            ctx.ensure_same(t.alpha.ctx())?;
            if branch[..i].iter().any(|s| s.a == t.a) {
                return Err(Error::DuplicateBranchPoint(t.a.to_string()));
            }
            if t.alpha.is_zero() {
                return Err(Error::ZeroResidue(t.a.to_string()));
            }
        }
        if alpha0.is_zero() {
            return Err(Error::ZeroAlpha0);
        }
        Ok(ASModel { alpha0, branch })
    }

    pub fn ctx(&self) -> &FieldCtx {
        self.alpha0.ctx()
    }

    pub fn genus(&self) -> usize {
        self.branch.len()
    }

    pub fn alpha0(&self) -> &FieldElem {
        &self.alpha0
    }

    pub fn branch(&self) -> &[BranchTerm] {
        &self.branch
    }

    pub fn branch_points(&self) -> impl Iterator<Item = &FieldElem> {
        self.branch.iter().map(|t| &t.a)
    }

    /// `f = α₀x + Σ αᵢ/(x - aᵢ)`
    pub fn f(&self) -> RatFunc {
        self.branch.iter().fold(
            RatFunc::from_poly(Poly::monomial(self.alpha0.clone(), 1)),
            |acc, t| &acc + &RatFunc::pole(t.alpha.clone(), &t.a, 1),
        )
    }

    /// `Π (x - aᵢ)`
    pub fn branch_poly(&self) -> Poly {
        self.branch_points()
            .fold(Poly::one(self.ctx()), |acc, a| &acc * &Poly::linear(a))
    }

    /// Same model with branch terms sorted canonically by `aᵢ`.
    pub fn canonical(&self) -> ASModel {
        let mut branch = self.branch.clone();
        branch.sort_by(|s, t| s.a.canonical_cmp(&t.a));
        ASModel {
            alpha0: self.alpha0.clone(),
            branch,
        }
    }

    /// One ramification point of order 2 over each `aᵢ` and over ∞.
    pub fn ramification(&self) -> RamificationData {
        let mut points: Vec<(BranchLocus, u32)> = self
            .branch_points()
            .map(|a| (BranchLocus::Finite(a.clone()), 2))
            .collect();
        points.push((BranchLocus::Infinity, 2));
        let total = points.iter().map(|(_, e)| *e as usize).sum();
        RamificationData { points, total }
    }

    /// Encode as `y² + by + c` with `b = Π(x - aᵢ)` and `c = b²f`.
    pub fn to_raw(&self) -> RawASCurve {
        let b = self.branch_poly();
        let f = self.f();
        let c = &RatFunc::from_poly(&b * &b) * &f;
        debug_assert!(c.is_poly());
        RawASCurve {
            a: self.ctx().one(),
            b,
            c: c.num().clone(),
        }
    }

    /// Human form of `f`, e.g. `x + 1/x + 1/(x+1)`.
    pub fn f_string(&self) -> String {
        let paren = |e: &FieldElem| {
            if e.is_compound() {
                format!("({e})")
            } else {
                e.to_string()
            }
        };
        let mut parts = Vec::with_capacity(self.branch.len() + 1);
        parts.push(if self.alpha0.is_one() {
            "x".to_string()
        } else {
            format!("{}*x", paren(&self.alpha0))
        });
        for t in &self.branch {
            let den = if t.a.is_zero() {
                "x".to_string()
            } else {
                format!("({})", Poly::linear(&t.a).to_compact_string())
            };
            parts.push(format!("{}/{}", paren(&t.alpha), den));
        }
        parts.join(" + ")
    }
}

/// `validate_as_model`: the model plus its ramification data.
pub fn validate_as_model(
    alpha0: FieldElem,
    branch: Vec<BranchTerm>,
    genus: usize,
) -> Result<(ASModel, RamificationData)> {
    if branch.len() != genus {
        return Err(Error::WrongDegree {
            expected: format!("{genus} branch terms"),
            found: branch.len(),
        });
    }
    let model = ASModel::new(alpha0, branch)?;
    let ram = model.ramification();
    Ok((model, ram))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BranchLocus {
    Finite(FieldElem),
    Infinity,
}

impl fmt::Display for BranchLocus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BranchLocus::Finite(a) => write!(f, "{a}"),
            BranchLocus::Infinity => write!(f, "inf"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RamificationData {
    pub points: Vec<(BranchLocus, u32)>,
    pub total: usize,
}

impl Serialize for RamificationData {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Point {
            at: String,
            order: u32,
        }
        #[derive(Serialize)]
        struct Repr {
            points: Vec<Point>,
            total: usize,
        }
        Repr {
            points: self
                .points
                .iter()
                .map(|(p, e)| Point {
                    at: p.to_string(),
                    order: *e,
                })
                .collect(),
            total: self.total,
        }
        .serialize(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CurveModel {
    Odd(OddModel),
    AS(ASModel),
}

impl CurveModel {
    pub fn genus(&self) -> usize {
        match self {
            CurveModel::Odd(m) => m.genus(),
            CurveModel::AS(m) => m.genus(),
        }
    }

    pub fn ctx(&self) -> &FieldCtx {
        match self {
            CurveModel::Odd(m) => m.ctx(),
            CurveModel::AS(m) => m.ctx(),
        }
    }

    /// Curve spec string accepted by [`crate::parse::parse_curve_spec`].
    pub fn spec_string(&self) -> String {
        let ch = char_label(self.ctx());
        match self {
            CurveModel::Odd(m) => format!("char={ch};f={}", m.f().to_compact_string()),
            CurveModel::AS(m) => {
                let terms: Vec<String> = m
                    .branch()
                    .iter()
                    .map(|t| format!("({}:{})", t.a, t.alpha))
                    .collect();
                format!("char={ch};alpha0={};terms={}", m.alpha0(), terms.join(","))
            }
        }
    }
}

impl From<OddModel> for CurveModel {
    fn from(m: OddModel) -> Self {
        CurveModel::Odd(m)
    }
}

impl From<ASModel> for CurveModel {
    fn from(m: ASModel) -> Self {
        CurveModel::AS(m)
    }
}

/// Genus of a validated model.
pub fn curve_genus(model: &CurveModel) -> usize {
    model.genus()
}

/// Smallest finite field accepted by [`random_curve`] for genus `g`.
pub fn min_field_size(genus: usize) -> u64 {
    2 * genus as u64
}

/// Seed for trial `trial` at genus `genus` of a run seeded with `seed`.
/// Independent of execution order, so parallel runs are reproducible.
pub fn trial_seed(seed: u64, genus: usize, trial: u64) -> u64 {
    // splitmix64 finalizer over a simple combination
    let mut z = seed
        .wrapping_add((genus as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15))
        .wrapping_add(trial.wrapping_mul(0xD1B5_4A32_D192_ED03));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Rejection-sample a valid model, deterministically from `seed`.
/// Characteristic 2 yields an [`ASModel`], anything else an [`OddModel`].
pub fn random_curve(ctx: &FieldCtx, genus: usize, seed: u64) -> Result<CurveModel> {
    require_genus(genus)?;
    if let Some(q) = ctx.order() {
        let needed = min_field_size(genus);
        if q < needed {
            return Err(Error::FieldTooSmall {
                size: q,
                genus,
                needed,
            });
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    if ctx.is_char2() {
        let q = ctx.order().expect("characteristic 2 fields are finite");
        let points = sample(&mut rng, q as usize, genus);
        let branch = points
            .iter()
            .map(|i| BranchTerm {
                a: ctx.element(i as u64),
                alpha: ctx.random_nonzero(&mut rng),
            })
            .collect();
        let alpha0 = ctx.random_nonzero(&mut rng);
        return Ok(ASModel::new(alpha0, branch)?.into());
    }
    loop {
        let mut coeffs: Vec<FieldElem> = (0..=2 * genus)
            .map(|_| random_coeff(ctx, &mut rng))
            .collect();
        let lead = loop {
            let c = random_coeff(ctx, &mut rng);
            if !c.is_zero() {
                break c;
            }
        };
        coeffs.push(lead);
        let f = Poly::new(ctx, coeffs);
        if let Ok(m) = OddModel::new(f, genus) {
            return Ok(m.into());
        }
    }
}

fn random_coeff<R: Rng>(ctx: &FieldCtx, rng: &mut R) -> FieldElem {
    match ctx.order() {
        Some(_) => ctx.random(rng),
        None => ctx.from_i64(rng.gen_range(-9..=9)),
    }
}

/// `a·y² + b·y + c = 0` over a field of characteristic 2.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawASCurve {
    pub a: FieldElem,
    pub b: Poly,
    pub c: Poly,
}

impl RawASCurve {
    pub fn new(a: FieldElem, b: Poly, c: Poly) -> Result<Self> {
        let ctx = a.ctx().clone();
        if !ctx.is_char2() {
            return Err(Error::WrongCharacteristic {
                expected: "2".into(),
                found: ctx.characteristic(),
            });
        }
        ctx.ensure_same(b.ctx())?;
        ctx.ensure_same(c.ctx())?;
        if a.is_zero() {
            return Err(Error::DegenerateCurve("leading coefficient a is zero".into()));
        }
        if b.is_zero() {
            return Err(Error::NonGenericB("b is zero".into()));
        }
        Ok(RawASCurve { a, b, c })
    }

    pub fn ctx(&self) -> &FieldCtx {
        self.a.ctx()
    }

    /// Apply `x ↦ ρ + 1/x`, `y ↦ y/x^n` with `n = deg b`, sending the root
    /// `ρ` of `b` to infinity. Requires `deg c ≤ 2n`.
    pub fn send_root_to_infinity(&self, rho: &FieldElem) -> Result<RawASCurve> {
        let n = self.b.degree().unwrap_or(0);
        if !self.b.eval(rho).is_zero() {
            return Err(Error::NonGenericB(format!("{rho} is not a root of b")));
        }
        if self.c.degree().unwrap_or(0) > 2 * n {
            return Err(Error::WrongDegree {
                expected: format!("deg c <= 2 deg b = {}", 2 * n),
                found: self.c.degree().unwrap_or(0),
            });
        }
        let b = self.b.shift(rho).reversed(n);
        let c = self.c.shift(rho).reversed(2 * n);
        RawASCurve::new(self.a.clone(), b, c)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ShiftReason {
    DoublePole,
    EvenPowerAtInfinity,
    Constant,
}

/// One substitution, always written as the old `y` in terms of the new one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Transform {
    /// `y = y' / s`
    ScaleY { s: FieldElem },
    /// `y = b·y'`, followed by division of the equation by `b²`
    MulY { by: Poly },
    /// `y = y' + h`
    ShiftY { by: RatFunc, reason: ShiftReason },
}

/// Every substitution applied by [`reduce_to_normal_form`] together with the
/// unit the transformed equation is divided by.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransformLog {
    pub steps: Vec<Transform>,
    pub unit: RatFunc,
}

impl TransformLog {
    /// Compose the logged steps into `y_original = A·y + B`.
    pub fn affine_map(&self, ctx: &FieldCtx) -> (RatFunc, RatFunc) {
        let mut scale = RatFunc::one(ctx);
        let mut offset = RatFunc::zero(ctx);
        for step in &self.steps {
            match step {
                Transform::ScaleY { s } => {
                    scale = scale.scale(&s.inv().expect("nonzero scale"));
                }
                Transform::MulY { by } => {
                    scale = &scale * &RatFunc::from_poly(by.clone());
                }
                Transform::ShiftY { by, .. } => {
                    offset = &offset + &(&scale * by);
                }
            }
        }
        (scale, offset)
    }

    /// Substitute the logged map into `a·y² + b·y + c` and divide by the
    /// unit; returns the coefficients of `y²`, `y` and `1`.
    pub fn replay(&self, raw: &RawASCurve) -> (RatFunc, RatFunc, RatFunc) {
        let ctx = raw.ctx();
        let (s, o) = self.affine_map(ctx);
        let a = RatFunc::constant(raw.a.clone());
        let b = RatFunc::from_poly(raw.b.clone());
        let c = RatFunc::from_poly(raw.c.clone());
        let two = RatFunc::constant(ctx.from_i64(2));
        let quad = &a * &(&s * &s);
        let lin = &(&two * &(&a * &(&s * &o))) + &(&b * &s);
        let cst = &(&(&a * &(&o * &o)) + &(&b * &o)) + &c;
        let div = |r: RatFunc| r.checked_div(&self.unit).expect("unit is nonzero");
        (div(quad), div(lin), div(cst))
    }

    /// True iff the replay gives exactly `y² - y - f`.
    pub fn replay_matches(&self, raw: &RawASCurve, model: &ASModel) -> bool {
        let ctx = raw.ctx();
        let (q, l, c) = self.replay(raw);
        q == RatFunc::one(ctx) && l == -&RatFunc::one(ctx) && c == -&model.f()
    }
}

impl Serialize for TransformLog {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde_json::json;
        let steps: Vec<serde_json::Value> = self
            .steps
            .iter()
            .map(|t| match t {
                Transform::ScaleY { s } => json!({"op": "scale_y", "y": format!("y/({s})")}),
                Transform::MulY { by } => json!({"op": "mul_y", "y": format!("({by})*y"), "divide_by": format!("({by})^2")}),
                Transform::ShiftY { by, reason } => {
                    json!({"op": "shift_y", "y": format!("y + {by}"), "reason": reason})
                }
            })
            .collect();
        json!({"steps": steps, "unit": self.unit.to_string()}).serialize(s)
    }
}

fn shift_y(f: &RatFunc, h: &RatFunc) -> RatFunc {
    // (y + h)² + (y + h) + f = y² + y + (f + h² + h) in characteristic 2
    &(f + &(h * h)) + h
}

/// Solve `d² + d = c` by exhaustive search.
fn artin_schreier_root(c: &FieldElem) -> Option<FieldElem> {
    c.ctx().elements().find(|d| &(&d.square() + d) == c)
}

/// Reduce `a·y² + b·y + c = 0` to `y² - y = α₀x + Σ αᵢ/(x - aᵢ)`.
///
/// `b` must have `g = deg b ≥ 2` distinct roots in the field. The pipeline
/// scales `y` by `1/√a`, substitutes `y ↦ b·y` and divides by `b²`, then
/// removes every double pole `p/(x - a)²` with the shift `y ↦ y + √p/(x - a)`,
/// every even power `c·x^{2m}` with `y ↦ y + √c·x^m`, and the constant with
/// `y ↦ y + d`, `d² + d = c₀`.
pub fn reduce_to_normal_form(raw: &RawASCurve) -> Result<(ASModel, TransformLog)> {
    let ctx = raw.ctx().clone();
    if !ctx.is_char2() {
        return Err(Error::WrongCharacteristic {
            expected: "2".into(),
            found: ctx.characteristic(),
        });
    }
    let genus = raw.b.degree().unwrap_or(0);
    if genus < 2 {
        return Err(Error::NonGenericB(format!(
            "deg b = {genus}, need at least 2"
        )));
    }
    let roots = raw.b.roots();
    if let Some((r, m)) = roots.iter().find(|(_, m)| *m > 1) {
        return Err(Error::NonGenericB(format!("repeated root {r} of multiplicity {m}")));
    }
    if roots.len() < genus {
        return Err(Error::NonGenericB(format!(
            "b = {} has only {} roots in {}",
            raw.b,
            roots.len(),
            ctx
        )));
    }

    let mut steps = Vec::new();
    let s = raw.a.sqrt_char2()?;
    steps.push(Transform::ScaleY { s: s.clone() });
    let b1 = raw.b.scale(&s.inv()?);
    steps.push(Transform::MulY { by: b1.clone() });
    let mut f = RatFunc::new(raw.c.clone(), &b1 * &b1)?;

    // double poles at the roots of b
    let pf = f.partial_fractions()?;
    for (a, _) in &roots {
        let p2 = pf.coefficient(a, 2);
        if p2.is_zero() {
            continue;
        }
        let h = RatFunc::pole(p2.sqrt_char2()?, a, 1);
        f = shift_y(&f, &h);
        steps.push(Transform::ShiftY {
            by: h,
            reason: ShiftReason::DoublePole,
        });
    }

    // polynomial part: clear even powers from the top down
    loop {
        let pf = f.partial_fractions()?;
        let poly = pf.poly_part;
        let d = poly.degree().unwrap_or(0);
        if d < 2 {
            break;
        }
        if d % 2 == 1 {
            return Err(Error::DegenerateCurve(format!(
                "pole of odd order {d} at infinity"
            )));
        }
        let gamma = poly.coeff(d).sqrt_char2()?;
        let h = RatFunc::from_poly(Poly::monomial(gamma, d / 2));
        f = shift_y(&f, &h);
        steps.push(Transform::ShiftY {
            by: h,
            reason: ShiftReason::EvenPowerAtInfinity,
        });
    }

    let pf = f.partial_fractions()?;
    let c0 = pf.poly_part.coeff(0);
    if !c0.is_zero() {
        let d = artin_schreier_root(&c0).ok_or_else(|| Error::ConstantObstruction {
            constant: c0.to_string(),
            field: ctx.to_string(),
        })?;
        let h = RatFunc::constant(d);
        f = shift_y(&f, &h);
        steps.push(Transform::ShiftY {
            by: h,
            reason: ShiftReason::Constant,
        });
    }

    let pf = f.partial_fractions()?;
    debug_assert!(pf.terms.iter().all(|t| t.power == 1));
    let alpha0 = pf.poly_part.coeff(1);
    if alpha0.is_zero() {
        return Err(Error::DegenerateCurve(
            "alpha0 vanishes; infinity is not a branch point".into(),
        ));
    }
    let mut branch = Vec::with_capacity(genus);
    for (a, _) in &roots {
        let alpha = pf.coefficient(a, 1);
        if alpha.is_zero() {
            return Err(Error::DegenerateCurve(format!("residue at {a} vanishes")));
        }
        branch.push(BranchTerm { a: a.clone(), alpha });
    }
    let model = ASModel::new(alpha0, branch)?;

    let unit = RatFunc::from_poly(&raw.b * &raw.b).scale(&raw.a.inv()?);
    let log = TransformLog { steps, unit };
    Ok((model, log))
}
