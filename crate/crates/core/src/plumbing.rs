//! Plumbing trees of Hopf bands: the moves, Seifert-matrix assembly, the
//! invariant report and a canonical representative for equality tests.
//!
//! A tree is an ordered list of bands. Band `k` carries a gluing vector of
//! length `k` (zero-based) holding its linking with every earlier band, so
//! the assembled Seifert matrix is upper triangular with `∓1` on the
//! diagonal and therefore always unimodular.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::error::{HopfError, Result};
use crate::laurent::LaurentPolynomial;
use crate::matrix::{
    alexander_from_seifert, det_exact, homological_monodromy, signature_symmetric,
    smith_invariants, IntMatrix,
};

/// Largest tree `canonical_form` accepts unless told otherwise.
pub const DEFAULT_MU_CAP: usize = 10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum BandSign {
    #[serde(rename = "+")]
    Positive,
    #[serde(rename = "-")]
    Negative,
}

impl BandSign {
    /// Diagonal Seifert entry of the band: `H⁺ ↦ −1`, `H⁻ ↦ +1`.
    pub fn seifert_entry(self) -> i64 {
        match self {
            BandSign::Positive => -1,
            BandSign::Negative => 1,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            BandSign::Positive => '+',
            BandSign::Negative => '-',
        }
    }

    pub fn is_negative(self) -> bool {
        self == BandSign::Negative
    }
}

impl fmt::Display for BandSign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

impl FromStr for BandSign {
    type Err = HopfError;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "+" => Ok(BandSign::Positive),
            "-" => Ok(BandSign::Negative),
            _ => Err(HopfError::Json(format!("unknown band sign {s:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Band {
    pub sign: BandSign,
    #[serde(rename = "x")]
    pub gluing: Vec<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum KnotKind {
    TPlus,
    E,
}

impl KnotKind {
    fn second_sign(self) -> BandSign {
        match self {
            KnotKind::TPlus => BandSign::Positive,
            KnotKind::E => BandSign::Negative,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PlumbingTree {
    bands: Vec<Band>,
}

impl PlumbingTree {
    /// The trivial open book of the unknot: no bands.
    pub fn unknot() -> Self {
        Self::default()
    }

    /// Validates gluing-vector lengths.
    pub fn from_bands(bands: Vec<Band>) -> Result<Self> {
        for (k, b) in bands.iter().enumerate() {
            if b.gluing.len() != k {
                return Err(HopfError::Dimension(format!(
                    "band {k} has a gluing vector of length {}, expected {k}",
                    b.gluing.len()
                )));
            }
        }
        Ok(Self { bands })
    }

    pub fn hopf_band(sign: BandSign) -> Self {
        Self::unknot()
            .hopf_plumb(sign, &[])
            .expect("empty gluing on the unknot")
    }

    pub fn trefoil() -> Self {
        Self::unknot()
            .knot_plumb(KnotKind::TPlus, &[], 1)
            .expect("valid on the unknot")
    }

    pub fn figure_eight() -> Self {
        Self::unknot()
            .knot_plumb(KnotKind::E, &[], 1)
            .expect("valid on the unknot")
    }

    pub fn bands(&self) -> &[Band] {
        &self.bands
    }

    /// Milnor number: the band count.
    pub fn mu(&self) -> usize {
        self.bands.len()
    }

    /// Number of negative bands.
    pub fn lambda(&self) -> usize {
        self.bands.iter().filter(|b| b.sign.is_negative()).count()
    }

    pub fn with_label(mut self, index: usize, label: impl Into<String>) -> Result<Self> {
        let mu = self.mu();
        let band = self
            .bands
            .get_mut(index)
            .ok_or(HopfError::BandIndex { index, mu })?;
        band.label = Some(label.into());
        Ok(self)
    }

    pub fn without_labels(&self) -> Self {
        let bands = self
            .bands
            .iter()
            .map(|b| Band {
                label: None,
                ..b.clone()
            })
            .collect();
        Self { bands }
    }

    /// Plumbs one Hopf band whose linking with the existing bands is `x`.
    pub fn hopf_plumb(&self, sign: BandSign, x: &[i64]) -> Result<Self> {
        if x.len() != self.mu() {
            return Err(HopfError::Dimension(format!(
                "gluing vector has length {}, tree has {} bands",
                x.len(),
                self.mu()
            )));
        }
        let mut bands = self.bands.clone();
        bands.push(Band {
            sign,
            gluing: x.to_vec(),
            label: None,
        });
        Ok(Self { bands })
    }

    /// Murasugi sum of two trees with coupling block `coupling`
    /// (`μ(self)` rows, `μ(other)` columns): Seifert matrix `[[V₁, X], [0, V₂]]`.
    pub fn plumb(&self, other: &Self, coupling: &IntMatrix) -> Result<Self> {
        let (m1, m2) = (self.mu(), other.mu());
        if coupling.rows() != m1 || coupling.cols() != m2 {
            return Err(HopfError::Dimension(format!(
                "coupling is {}x{}, expected {m1}x{m2}",
                coupling.rows(),
                coupling.cols()
            )));
        }
        let mut bands = self.bands.clone();
        for (j, b) in other.bands.iter().enumerate() {
            let mut gluing = Vec::with_capacity(m1 + j);
            for i in 0..m1 {
                let v = &coupling[(i, j)];
                gluing.push(
                    v.to_i64()
                        .ok_or_else(|| HopfError::EntryOverflow(v.clone()))?,
                );
            }
            gluing.extend_from_slice(&b.gluing);
            bands.push(Band {
                sign: b.sign,
                gluing,
                label: b.label.clone(),
            });
        }
        Ok(Self { bands })
    }

    /// `T⁺`- or `E`-plumbing: a positive band glued by `x`, then a second band
    /// crossing it once with coefficient `c = ±1`.
    pub fn knot_plumb(&self, kind: KnotKind, x: &[i64], c: i64) -> Result<Self> {
        if c.abs() != 1 {
            return Err(HopfError::CrossingCoefficient(c));
        }
        let first = self.hopf_plumb(BandSign::Positive, x)?;
        let mut y = vec![0; first.mu()];
        *y.last_mut().expect("first band exists") = c;
        first.hopf_plumb(kind.second_sign(), &y)
    }

    /// Removes band `index` (zero-based); only legal when no later band
    /// links with it.
    pub fn deplumb(&self, index: usize) -> Result<Self> {
        let mu = self.mu();
        if index >= mu {
            return Err(HopfError::BandIndex { index, mu });
        }
        if let Some(by) = (index + 1..mu).find(|&k| self.bands[k].gluing[index] != 0) {
            return Err(HopfError::NotRemovable { index, by });
        }
        let bands = self
            .bands
            .iter()
            .enumerate()
            .filter(|&(k, _)| k != index)
            .map(|(k, b)| {
                let mut b = b.clone();
                if k > index {
                    b.gluing.remove(index);
                }
                b
            })
            .collect();
        Ok(Self { bands })
    }

    /// Seifert matrix as small integers, row-major.
    fn seifert_small(&self) -> Vec<Vec<i64>> {
        let n = self.mu();
        let mut v = vec![vec![0i64; n]; n];
        for (k, b) in self.bands.iter().enumerate() {
            for (i, &x) in b.gluing.iter().enumerate() {
                v[i][k] = x;
            }
            v[k][k] = b.sign.seifert_entry();
        }
        v
    }

    pub fn seifert_matrix(&self) -> IntMatrix {
        IntMatrix::from_rows(&self.seifert_small()).expect("square by construction")
    }

    pub fn invariants(&self) -> InvariantReport {
        let v = self.seifert_matrix();
        let sym = v.add(&v.transpose()).expect("same shape");
        let alexander = alexander_from_seifert(&v).expect("square");
        let sigma = signature_symmetric(&sym).expect("symmetric");
        let det_v = det_exact(&v).expect("square");
        let h = homological_monodromy(&v).expect("plumbing trees are fibered");
        let h_minus_id = h.sub(&IntMatrix::identity(self.mu())).expect("same shape");
        let fingerprint = Fingerprint {
            mu: self.mu(),
            lambda: self.lambda(),
            alexander: alexander.clone(),
            sigma,
            smith_symmetrized: smith_invariants(&sym),
            smith_monodromy: smith_invariants(&h_minus_id),
        };
        InvariantReport {
            mu: self.mu(),
            lambda: self.lambda(),
            alexander,
            sigma,
            det_v,
            fingerprint,
        }
    }

    pub fn canonical_form(&self) -> Result<Self> {
        self.canonical_form_with_cap(DEFAULT_MU_CAP)
    }

    /// Representative with the lexicographically smallest Seifert matrix over
    /// all band orders that keep the matrix upper triangular. Matrices are
    /// compared column by column over the upper triangle (column `k` is the
    /// gluing vector of band `k` followed by its diagonal entry). Labels are
    /// dropped.
    pub fn canonical_form_with_cap(&self, cap: usize) -> Result<Self> {
        let n = self.mu();
        if n > cap {
            return Err(HopfError::CapExceeded { mu: n, cap });
        }
        let v = self.seifert_small();
        let mut search = CanonSearch {
            v: &v,
            placed: vec![false; n],
            order: Vec::with_capacity(n),
            key: Vec::with_capacity(n * (n + 1) / 2),
            best: None,
        };
        search.run();
        let (order, _) = search.best.expect("at least one admissible order");
        let bands = order
            .iter()
            .enumerate()
            .map(|(k, &b)| Band {
                sign: self.bands[b].sign,
                gluing: order[..k].iter().map(|&a| v[a][b]).collect(),
                label: None,
            })
            .collect();
        Ok(Self { bands })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("tree serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: PlumbingTree = serde_json::from_str(text)?;
        Self::from_bands(raw.bands)
    }
}

impl fmt::Display for PlumbingTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_json())
    }
}

struct CanonSearch<'a> {
    v: &'a [Vec<i64>],
    placed: Vec<bool>,
    order: Vec<usize>,
    key: Vec<i64>,
    best: Option<(Vec<usize>, Vec<i64>)>,
}

impl CanonSearch<'_> {
    fn column(&self, b: usize) -> impl Iterator<Item = i64> + '_ {
        self.order
            .iter()
            .map(move |&a| self.v[a][b])
            .chain(std::iter::once(self.v[b][b]))
    }

    fn available(&self, b: usize) -> bool {
        !self.placed[b] && (0..b).all(|a| self.placed[a] || self.v[a][b] == 0)
    }

    fn run(&mut self) {
        let n = self.v.len();
        if self.order.len() == n {
            let better = self.best.as_ref().is_none_or(|(_, k)| self.key < *k);
            if better {
                self.best = Some((self.order.clone(), self.key.clone()));
            }
            return;
        }
        let mut candidates: Vec<(Vec<i64>, usize)> = (0..n)
            .filter(|&b| self.available(b))
            .map(|b| (self.column(b).collect(), b))
            .collect();
        candidates.sort();
        for (col, b) in candidates {
            let len = self.key.len();
            self.key.extend_from_slice(&col);
            let pruned = self
                .best
                .as_ref()
                .is_some_and(|(_, k)| self.key[..] > k[..self.key.len()]);
            if !pruned {
                self.placed[b] = true;
                self.order.push(b);
                self.run();
                self.order.pop();
                self.placed[b] = false;
            }
            self.key.truncate(len);
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Fingerprint {
    pub mu: usize,
    pub lambda: usize,
    pub alexander: LaurentPolynomial,
    pub sigma: i64,
    /// Smith invariants of `V + Vᵀ`.
    pub smith_symmetrized: Vec<BigInt>,
    /// Smith invariants of `h − I`.
    pub smith_monodromy: Vec<BigInt>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantReport {
    pub mu: usize,
    pub lambda: usize,
    pub alexander: LaurentPolynomial,
    pub sigma: i64,
    pub det_v: BigInt,
    pub fingerprint: Fingerprint,
}
