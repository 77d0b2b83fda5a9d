//! Homotopy bookkeeping for the oriented plane field carried by an open book.
//!
//! A [`ManifoldModel`] records `H₁(M; Z)` by its invariant factors. A
//! [`PlaneFieldClass`] stores an absolute chart relative to the model's
//! reference field: the section class `c`, the Euler class (as an `H₁`
//! element via duality) and an integer framing. The obstruction class and
//! the relative framing are differences in this chart, so the cocycle
//! identities hold structurally.
//!
//! The `π₃S² = Z` action only moves the framing. Its stabilizer is
//! `|ξ|·Z`, where `|ξ|` is the divisibility of the torsion-free part of the
//! Euler class; `|ξ| = 0` means the action is free.

use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{HopfError, Result};
use crate::plumbing::{BandSign, PlumbingTree};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ManifoldModel {
    pub name: String,
    /// Invariant factors of `H₁`; `0` stands for a free `Z` summand.
    pub h1: Vec<u64>,
}

impl ManifoldModel {
    pub fn new(name: impl Into<String>, h1: Vec<u64>) -> Result<Self> {
        let model = Self {
            name: name.into(),
            h1,
        };
        model.validate()?;
        Ok(model)
    }

    /// The three-sphere, reference field = plane field of the unknot's book.
    pub fn sphere() -> Self {
        Self {
            name: "S3".into(),
            h1: Vec::new(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.h1.contains(&1) {
            return Err(HopfError::InvalidManifold("trivial factor 1 in H1".into()));
        }
        let torsion: Vec<u64> = self.h1.iter().copied().filter(|&d| d != 0).collect();
        if let Some(w) = torsion.windows(2).find(|w| w[1] % w[0] != 0) {
            return Err(HopfError::InvalidManifold(format!(
                "torsion factors {} and {} do not form a divisibility chain",
                w[0], w[1]
            )));
        }
        Ok(())
    }

    pub fn is_homology_sphere(&self) -> bool {
        self.h1.is_empty()
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let m: Self = serde_json::from_str(text)?;
        m.validate()?;
        Ok(m)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("model serializes")
    }

    pub fn zero(&self) -> H1Element {
        H1Element {
            factors: self.h1.clone(),
            coeffs: vec![0; self.h1.len()],
        }
    }

    pub fn element(&self, coeffs: &[i64]) -> Result<H1Element> {
        H1Element::new(&self.h1, coeffs)
    }

    /// Class whose chart coincides with the reference field.
    pub fn reference_field(&self) -> PlaneFieldClass {
        PlaneFieldClass {
            manifold: self.clone(),
            c: self.zero(),
            euler: self.zero(),
            framing: 0,
        }
    }
}

/// Element of `⊕ Z/dᵢ`, each coefficient reduced into `[0, dᵢ)` (free
/// factors are left as they are).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct H1Element {
    factors: Vec<u64>,
    coeffs: Vec<i64>,
}

impl H1Element {
    pub fn new(factors: &[u64], coeffs: &[i64]) -> Result<Self> {
        if factors.len() != coeffs.len() {
            return Err(HopfError::H1Length {
                expected: factors.len(),
                got: coeffs.len(),
            });
        }
        let coeffs = factors
            .iter()
            .zip(coeffs)
            .map(|(&d, &c)| reduce(c, d))
            .collect();
        Ok(Self {
            factors: factors.to_vec(),
            coeffs,
        })
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    fn combine(&self, other: &Self, f: impl Fn(i64, i64) -> i64) -> Self {
        assert_eq!(
            self.factors, other.factors,
            "H1 elements of different groups"
        );
        let coeffs = self
            .factors
            .iter()
            .zip(self.coeffs.iter().zip(&other.coeffs))
            .map(|(&d, (&a, &b))| reduce(f(a, b), d))
            .collect();
        Self {
            factors: self.factors.clone(),
            coeffs,
        }
    }
}

fn reduce(c: i64, d: u64) -> i64 {
    if d == 0 {
        c
    } else {
        c.mod_floor(&(d as i64))
    }
}

impl std::ops::Add for &H1Element {
    type Output = H1Element;
    fn add(self, rhs: Self) -> H1Element {
        self.combine(rhs, |a, b| a + b)
    }
}

impl std::ops::Sub for &H1Element {
    type Output = H1Element;
    fn sub(self, rhs: Self) -> H1Element {
        self.combine(rhs, |a, b| a - b)
    }
}

impl std::ops::Neg for &H1Element {
    type Output = H1Element;
    fn neg(self) -> H1Element {
        self.combine(self, |a, _| -a)
    }
}

/// Homotopy class of a plane field in the model's chart.
///
/// Equality is the homotopy relation: same manifold, `c` and Euler class,
/// and framings congruent modulo `|ξ|`.
#[derive(Clone, Debug)]
pub struct PlaneFieldClass {
    pub manifold: ManifoldModel,
    pub c: H1Element,
    pub euler: H1Element,
    pub framing: i64,
}

impl PartialEq for PlaneFieldClass {
    fn eq(&self, other: &Self) -> bool {
        if self.manifold != other.manifold || self.c != other.c || self.euler != other.euler {
            return false;
        }
        let diff = other.framing - self.framing;
        match euler_divisibility(self) {
            0 => diff == 0,
            n => diff.mod_floor(&(n as i64)) == 0,
        }
    }
}

impl Eq for PlaneFieldClass {}

impl PlaneFieldClass {
    pub fn new(manifold: &ManifoldModel, c: &[i64], euler: &[i64], framing: i64) -> Result<Self> {
        Ok(Self {
            manifold: manifold.clone(),
            c: manifold.element(c)?,
            euler: manifold.element(euler)?,
            framing,
        })
    }

    /// `{"c":[…],"euler":[…],"framing":n}`; the manifold travels separately.
    pub fn to_json(&self) -> String {
        serde_json::to_string(&FieldChart {
            c: self.c.coeffs.clone(),
            euler: self.euler.coeffs.clone(),
            framing: self.framing,
        })
        .expect("chart serializes")
    }

    pub fn from_json(manifold: &ManifoldModel, text: &str) -> Result<Self> {
        let chart: FieldChart = serde_json::from_str(text)?;
        Self::new(manifold, &chart.c, &chart.euler, chart.framing)
    }
}

impl fmt::Display for PlaneFieldClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_json())
    }
}

#[derive(Serialize, Deserialize)]
struct FieldChart {
    c: Vec<i64>,
    euler: Vec<i64>,
    framing: i64,
}

/// An open book together with the class of its plane field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OpenBookClass {
    pub tree: PlumbingTree,
    pub field: PlaneFieldClass,
}

impl OpenBookClass {
    /// Plumbs the bands of `tree` one by one onto a book whose field is `base`.
    pub fn over(base: PlaneFieldClass, tree: PlumbingTree) -> Self {
        let field = tree
            .bands()
            .iter()
            .fold(base, |xi, b| plumb_effect(&xi, b.sign));
        Self { tree, field }
    }

    /// Book in the three-sphere, starting from the unknot's reference field.
    pub fn on_sphere(tree: PlumbingTree) -> Self {
        Self::over(ManifoldModel::sphere().reference_field(), tree)
    }
}

fn same_manifold(xi: &PlaneFieldClass, eta: &PlaneFieldClass) -> Result<()> {
    if xi.manifold != eta.manifold {
        return Err(HopfError::ManifoldMismatch(
            xi.manifold.name.clone(),
            eta.manifold.name.clone(),
        ));
    }
    Ok(())
}

/// First obstruction `c(ξ, η) ∈ H₁` to a homotopy from `ξ` to `η`.
pub fn obstruction_class(xi: &PlaneFieldClass, eta: &PlaneFieldClass) -> Result<H1Element> {
    same_manifold(xi, eta)?;
    Ok(&eta.c - &xi.c)
}

/// `|ξ|`: gcd of the Euler coefficients over free factors, 0 if they all vanish.
pub fn euler_divisibility(xi: &PlaneFieldClass) -> u64 {
    xi.manifold
        .h1
        .iter()
        .zip(xi.euler.coeffs())
        .filter(|(&d, _)| d == 0)
        .fold(0u64, |g, (_, &e)| g.gcd(&e.unsigned_abs()))
}

/// A relative framing: a residue modulo `modulus`, or a plain integer when
/// the modulus is 0.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct RelativeFraming {
    pub value: i64,
    pub modulus: u64,
}

/// `d(ξ, η)` for homologous fields.
pub fn relative_framing(xi: &PlaneFieldClass, eta: &PlaneFieldClass) -> Result<RelativeFraming> {
    if !obstruction_class(xi, eta)?.is_zero() {
        return Err(HopfError::NotHomologous);
    }
    if xi.euler != eta.euler {
        return Err(HopfError::EulerMismatch);
    }
    let modulus = euler_divisibility(xi);
    let diff = eta.framing - xi.framing;
    let value = if modulus == 0 {
        diff
    } else {
        diff.mod_floor(&(modulus as i64))
    };
    Ok(RelativeFraming { value, modulus })
}

/// Action of `k ∈ π₃S²`.
pub fn act_pi3(k: i64, xi: &PlaneFieldClass) -> PlaneFieldClass {
    PlaneFieldClass {
        framing: xi.framing + k,
        ..xi.clone()
    }
}

/// Effect of one Hopf-band plumbing on the plane-field class: a positive
/// band keeps the homotopy class, a negative band shifts the framing by 1.
pub fn plumb_effect(xi: &PlaneFieldClass, sign: BandSign) -> PlaneFieldClass {
    match sign {
        BandSign::Positive => xi.clone(),
        BandSign::Negative => act_pi3(1, xi),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EquivalenceVerdict {
    pub equivalent: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hminus_budget: Option<u64>,
}

/// Decides whether two books admit isotopic stabilizations. When they do,
/// reports an upper bound on the negative Hopf plumbings needed:
/// `2 + min(d, −d mod |ξ|)`, or `2 + |d|` when `|ξ| = 0`.
pub fn stable_equivalence(a: &OpenBookClass, b: &OpenBookClass) -> Result<EquivalenceVerdict> {
    let c = obstruction_class(&a.field, &b.field)?;
    if !c.is_zero() {
        return Ok(EquivalenceVerdict {
            equivalent: false,
            hminus_budget: None,
        });
    }
    let d = relative_framing(&a.field, &b.field)?;
    let cheaper = if d.modulus == 0 {
        d.value.unsigned_abs()
    } else {
        let back = (d.modulus - d.value as u64) % d.modulus;
        (d.value as u64).min(back)
    };
    Ok(EquivalenceVerdict {
        equivalent: true,
        hminus_budget: Some(2 + cheaper),
    })
}

/// Class in `π₃S² = Z` of disjoint standard framed circles with the given twists.
pub fn pontryagin_class(twists: &[i64]) -> i64 {
    twists.iter().sum()
}
