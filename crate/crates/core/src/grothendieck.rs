//! The Grothendieck group of fibered links in the three-sphere, identified
//! with `Z²` through `(μ, λ)`.

use std::ops::{Add, Neg, Sub};

use serde::Serialize;

use crate::error::{HopfError, Result};
use crate::plumbing::PlumbingTree;

/// Formal `Z²` element `(μ, λ)`; entries may be negative.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize)]
pub struct GkClass {
    pub mu: i64,
    pub lambda: i64,
}

impl GkClass {
    pub const fn new(mu: i64, lambda: i64) -> Self {
        Self { mu, lambda }
    }

    pub const HOPF_POSITIVE: GkClass = GkClass::new(1, 0);
    pub const HOPF_NEGATIVE: GkClass = GkClass::new(1, 1);
    pub const TREFOIL: GkClass = GkClass::new(2, 0);
    pub const FIGURE_EIGHT: GkClass = GkClass::new(2, 1);

    pub fn scale(self, k: i64) -> Self {
        Self::new(k * self.mu, k * self.lambda)
    }
}

impl Add for GkClass {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self::new(self.mu + rhs.mu, self.lambda + rhs.lambda)
    }
}

impl Sub for GkClass {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self::new(self.mu - rhs.mu, self.lambda - rhs.lambda)
    }
}

impl Neg for GkClass {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.mu, -self.lambda)
    }
}

pub fn gk_class(tree: &PlumbingTree) -> GkClass {
    GkClass::new(tree.mu() as i64, tree.lambda() as i64)
}

/// Coefficients over `([H⁺], [H⁻])`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct LinkBasis {
    pub hopf_positive: i64,
    pub hopf_negative: i64,
}

impl LinkBasis {
    pub fn recompose(self) -> GkClass {
        GkClass::HOPF_POSITIVE.scale(self.hopf_positive)
            + GkClass::HOPF_NEGATIVE.scale(self.hopf_negative)
    }
}

/// Coefficients over `([T⁺], [E])`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct KnotBasis {
    pub trefoil: i64,
    pub figure_eight: i64,
}

impl KnotBasis {
    pub fn recompose(self) -> GkClass {
        GkClass::TREFOIL.scale(self.trefoil) + GkClass::FIGURE_EIGHT.scale(self.figure_eight)
    }
}

pub fn decompose_link_class(g: GkClass) -> LinkBasis {
    LinkBasis {
        hopf_positive: g.mu - g.lambda,
        hopf_negative: g.lambda,
    }
}

pub fn decompose_knot_class(g: GkClass) -> Result<KnotBasis> {
    let rest = g.mu - 2 * g.lambda;
    if rest % 2 != 0 {
        return Err(HopfError::ParityObstruction {
            mu: g.mu,
            lambda: g.lambda,
        });
    }
    Ok(KnotBasis {
        trefoil: rest / 2,
        figure_eight: g.lambda,
    })
}
