//! Intersection theory on the Hirzebruch surface `F_n`, whose Picard
//! lattice is spanned by the directrix `E` and a fiber `F` with
//! `E·E = −n`, `E·F = 1`, `F·F = 0`.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

/// `a·E + b·F` on `F_n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct DivisorClass {
    pub n: u32,
    pub a: i64,
    pub b: i64,
}

impl DivisorClass {
    pub fn new(n: u32, a: i64, b: i64) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidSurface);
        }
        Ok(DivisorClass { n, a, b })
    }

    pub fn directrix(n: u32) -> Result<Self> {
        Self::new(n, 1, 0)
    }

    pub fn fiber(n: u32) -> Result<Self> {
        Self::new(n, 0, 1)
    }

    pub fn add(&self, other: &DivisorClass) -> Result<DivisorClass> {
        same_surface(self, other)?;
        Ok(DivisorClass {
            n: self.n,
            a: self.a + other.a,
            b: self.b + other.b,
        })
    }

    pub fn scale(&self, k: i64) -> DivisorClass {
        DivisorClass {
            n: self.n,
            a: k * self.a,
            b: k * self.b,
        }
    }

    pub fn self_intersection(&self) -> i64 {
        intersect(self, self).expect("same surface")
    }
}

impl fmt::Display for DivisorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let b = if self.b < 0 {
            format!(" - {}F", -self.b)
        } else {
            format!(" + {}F", self.b)
        };
        write!(f, "{}E{b}", self.a)
    }
}

fn same_surface(u: &DivisorClass, v: &DivisorClass) -> Result<()> {
    if u.n != v.n {
        return Err(Error::SurfaceMismatch {
            left: u.n,
            right: v.n,
        });
    }
    Ok(())
}

pub fn intersect(u: &DivisorClass, v: &DivisorClass) -> Result<i64> {
    same_surface(u, v)?;
    Ok(-(u.n as i64) * u.a * v.a + u.a * v.b + v.a * u.b)
}

/// `K = −2E − (n+2)F`
pub fn canonical_class(n: u32) -> Result<DivisorClass> {
    DivisorClass::new(n, -2, -(n as i64 + 2))
}

/// Arithmetic genus from `2g − 2 = (K + C)·C`.
pub fn adjunction_genus(c: &DivisorClass) -> Result<i64> {
    let k = canonical_class(c.n)?;
    let kc = intersect(&k.add(c)?, c)?;
    if kc % 2 != 0 {
        return Err(Error::OddAdjunction(kc));
    }
    Ok((kc + 2) / 2)
}

/// `2E + (2g+2)F` on `F_{g+1}`.
pub fn hyperelliptic_class(g: u32) -> Result<DivisorClass> {
    if g < 2 {
        return Err(Error::InvalidGenus(g as usize));
    }
    let c = DivisorClass::new(g + 1, 2, 2 * g as i64 + 2)?;
    debug_assert_eq!(adjunction_genus(&c), Ok(g as i64));
    // the fibers of the double cover meet C twice
    debug_assert_eq!(intersect(&c, &DivisorClass::fiber(g + 1)?), Ok(2));
    Ok(c)
}

/// `(h⁰, projective dimension)` of the hyperelliptic linear system.
///
/// On the curve `O_C(C)` has degree `4g + 4` and is nonspecial, so
/// `h⁰(O_C(C)) = 4g + 4 − g + 1`; the section of `O(C)` vanishing on `C`
/// adds one more on the surface.
pub fn linear_system_dim(g: u32) -> (i64, i64) {
    let g = g as i64;
    let deg = 4 * g + 4;
    let on_curve = deg - g + 1;
    let h0 = on_curve + 1;
    (h0, h0 - 1)
}

/// `dim Aut(F_n) = n + 5`
pub fn aut_dim(n: u32) -> i64 {
    n as i64 + 5
}

/// `dim H_g` as the linear system modulo `Aut(F_{g+1})`.
pub fn hg_dimension(g: u32) -> Result<i64> {
    if g < 2 {
        return Err(Error::InvalidGenus(g as usize));
    }
    let (_, proj) = linear_system_dim(g);
    Ok(proj - aut_dim(g + 1))
}

/// One line of the per-genus table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HirzebruchRow {
    pub genus: u32,
    pub surface: u32,
    pub class: String,
    pub self_intersection: i64,
    pub adjunction_genus: i64,
    pub h0: i64,
    pub proj_dim: i64,
    pub aut_dim: i64,
    pub hg_dim: i64,
}

pub fn hirzebruch_row(g: u32) -> Result<HirzebruchRow> {
    let c = hyperelliptic_class(g)?;
    let (h0, proj_dim) = linear_system_dim(g);
    Ok(HirzebruchRow {
        genus: g,
        surface: c.n,
        class: c.to_string(),
        self_intersection: c.self_intersection(),
        adjunction_genus: adjunction_genus(&c)?,
        h0,
        proj_dim,
        aut_dim: aut_dim(c.n),
        hg_dim: hg_dimension(g)?,
    })
}
