//! Bounded search for a common stabilization of two plumbing trees.
//!
//! Iterative deepening over the total number of Hopf plumbings, then over
//! the split between the two sides. For each split every left sequence is
//! replayed and canonicalized into a table; right sequences are then
//! scanned in enumeration order for a matching canonical form. Sequences are
//! pruned when the `(μ, λ)` counts can no longer agree.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{HopfError, Result};
use crate::plumbing::{BandSign, PlumbingTree, DEFAULT_MU_CAP};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchConfig {
    pub max_moves_per_side: usize,
    /// Gluing coordinates range over `[-coord_bound, coord_bound]`.
    pub coord_bound: u32,
    pub mu_cap: usize,
    /// When set, the first certificate in enumeration order is returned even
    /// though candidates are evaluated in parallel. Otherwise any match wins.
    pub deterministic_order: bool,
    /// `(μ, λ)` pruning; switch off only to cross-check the pruned search.
    pub prune: bool,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self {
            max_moves_per_side: 2,
            coord_bound: 1,
            mu_cap: DEFAULT_MU_CAP,
            deterministic_order: true,
            prune: true,
        }
    }
}

impl SearchConfig {
    pub fn with_depth(max_moves_per_side: usize) -> Self {
        Self {
            max_moves_per_side,
            ..Self::default()
        }
    }
}

/// One Hopf plumbing: sign and gluing vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Move {
    pub sign: BandSign,
    pub x: Vec<i64>,
}

impl Move {
    pub fn apply(&self, tree: &PlumbingTree) -> Result<PlumbingTree> {
        tree.hopf_plumb(self.sign, &self.x)
    }
}

pub fn replay(tree: &PlumbingTree, moves: &[Move]) -> Result<PlumbingTree> {
    moves.iter().try_fold(tree.clone(), |t, m| m.apply(&t))
}

fn negatives(moves: &[Move]) -> usize {
    moves.iter().filter(|m| m.sign.is_negative()).count()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilizationCertificate {
    pub moves_left: Vec<Move>,
    pub moves_right: Vec<Move>,
    pub matched_form: PlumbingTree,
}

#[derive(Serialize, Deserialize)]
struct CertificateJson {
    left: Vec<Move>,
    right: Vec<Move>,
    matched: PlumbingTree,
    budget: usize,
}

impl StabilizationCertificate {
    /// Negative bands added on the left and on the right.
    pub fn budget_used(&self) -> (usize, usize) {
        (negatives(&self.moves_left), negatives(&self.moves_right))
    }

    /// Total negative plumbings in the certificate.
    pub fn budget(&self) -> usize {
        let (l, r) = self.budget_used();
        l + r
    }

    pub fn is_empty(&self) -> bool {
        self.moves_left.is_empty() && self.moves_right.is_empty()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&CertificateJson {
            left: self.moves_left.clone(),
            right: self.moves_right.clone(),
            matched: self.matched_form.clone(),
            budget: self.budget(),
        })
        .expect("certificate serializes")
    }

    /// Parses a certificate. A `budget` that disagrees with the moves is an error.
    pub fn from_json(text: &str) -> Result<Self> {
        let raw: CertificateJson = serde_json::from_str(text)?;
        let matched_form = PlumbingTree::from_bands(raw.matched.bands().to_vec())?;
        let cert = Self {
            moves_left: raw.left,
            moves_right: raw.right,
            matched_form,
        };
        if cert.budget() != raw.budget {
            return Err(HopfError::Json(format!(
                "budget {} does not match the {} negative moves",
                raw.budget,
                cert.budget()
            )));
        }
        Ok(cert)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchOutcome {
    Found(StabilizationCertificate),
    /// No certificate within the configured bounds. Says nothing beyond them.
    Exhausted {
        sequences: u64,
    },
}

impl SearchOutcome {
    pub fn certificate(&self) -> Option<&StabilizationCertificate> {
        match self {
            SearchOutcome::Found(c) => Some(c),
            SearchOutcome::Exhausted { .. } => None,
        }
    }
}

/// All moves available on a tree with `mu` bands, positive sign first,
/// gluing vectors in lexicographic order.
pub fn enumerate_moves(mu: usize, coord_bound: u32) -> Vec<Move> {
    let b = coord_bound as i64;
    let mut vectors: Vec<Vec<i64>> = vec![Vec::new()];
    for _ in 0..mu {
        vectors = vectors
            .into_iter()
            .flat_map(|v| {
                (-b..=b).map(move |c| {
                    let mut w = v.clone();
                    w.push(c);
                    w
                })
            })
            .collect();
    }
    [BandSign::Positive, BandSign::Negative]
        .into_iter()
        .flat_map(|sign| vectors.iter().map(move |x| Move { sign, x: x.clone() }))
        .collect()
}

/// Admissible final λ range for one side.
#[derive(Clone, Copy)]
struct LambdaWindow {
    lo: usize,
    hi: usize,
}

struct Side<'a> {
    start: &'a PlumbingTree,
    cfg: &'a SearchConfig,
    window: Option<LambdaWindow>,
}

impl Side<'_> {
    /// Every sequence of exactly `len` moves, in enumeration order, with the
    /// tree it produces.
    fn sequences(&self, len: usize) -> Vec<(Vec<Move>, PlumbingTree)> {
        let mut out = Vec::new();
        let mut path = Vec::with_capacity(len);
        self.extend(self.start.clone(), len, &mut path, &mut out);
        out
    }

    fn extend(
        &self,
        tree: PlumbingTree,
        remaining: usize,
        path: &mut Vec<Move>,
        out: &mut Vec<(Vec<Move>, PlumbingTree)>,
    ) {
        if let Some(w) = self.window {
            let lambda = tree.lambda();
            if lambda > w.hi || lambda + remaining < w.lo {
                return;
            }
        }
        if remaining == 0 {
            out.push((path.clone(), tree));
            return;
        }
        for mv in enumerate_moves(tree.mu(), self.cfg.coord_bound) {
            let next = mv.apply(&tree).expect("enumerated moves fit the tree");
            path.push(mv);
            self.extend(next, remaining - 1, path, out);
            path.pop();
        }
    }
}

pub fn common_stabilization(
    left: &PlumbingTree,
    right: &PlumbingTree,
    cfg: &SearchConfig,
) -> Result<SearchOutcome> {
    for t in [left, right] {
        let reach = t.mu() + cfg.max_moves_per_side;
        if reach > cfg.mu_cap {
            return Err(HopfError::CapExceeded {
                mu: reach,
                cap: cfg.mu_cap,
            });
        }
    }
    let canon = |t: &PlumbingTree| t.canonical_form_with_cap(cfg.mu_cap);
    let max = cfg.max_moves_per_side;
    let mut examined = 0u64;
    for total in 0..=2 * max {
        for l in total.saturating_sub(max)..=total.min(max) {
            let r = total - l;
            let (lambda_l, lambda_r) = (left.lambda(), right.lambda());
            if cfg.prune {
                let mu_gap = left.mu() + l != right.mu() + r;
                let lambda_gap = lambda_l > lambda_r + r || lambda_r > lambda_l + l;
                if mu_gap || lambda_gap {
                    continue;
                }
            }
            let left_window = cfg.prune.then(|| LambdaWindow {
                lo: lambda_r,
                hi: lambda_r + r,
            });
            let left_seqs = Side {
                start: left,
                cfg,
                window: left_window,
            }
            .sequences(l);
            examined += left_seqs.len() as u64;
            let left_forms: Vec<PlumbingTree> = left_seqs
                .par_iter()
                .map(|(_, t)| canon(t))
                .collect::<Result<_>>()?;
            let mut table: HashMap<PlumbingTree, usize> = HashMap::with_capacity(left_forms.len());
            let (mut lo, mut hi) = (usize::MAX, 0);
            for (i, form) in left_forms.into_iter().enumerate() {
                let lambda = form.lambda();
                lo = lo.min(lambda);
                hi = hi.max(lambda);
                table.entry(form).or_insert(i);
            }
            if table.is_empty() {
                continue;
            }
            let right_window = cfg.prune.then_some(LambdaWindow { lo, hi });
            let right_seqs = Side {
                start: right,
                cfg,
                window: right_window,
            }
            .sequences(r);
            examined += right_seqs.len() as u64;
            let lookup = |(moves, tree): &(Vec<Move>, PlumbingTree)| -> Option<Result<(Vec<Move>, usize, PlumbingTree)>> {
                match canon(tree) {
                    Err(e) => Some(Err(e)),
                    Ok(form) => table.get(&form).map(|&i| Ok((moves.clone(), i, form))),
                }
            };
            let hit = if cfg.deterministic_order {
                right_seqs.par_iter().find_map_first(lookup)
            } else {
                right_seqs.par_iter().find_map_any(lookup)
            };
            if let Some(hit) = hit {
                let (moves_right, i, matched_form) = hit?;
                let moves_left = left_seqs[i].0.clone();
                return Ok(SearchOutcome::Found(StabilizationCertificate {
                    moves_left,
                    moves_right,
                    matched_form,
                }));
            }
        }
    }
    Ok(SearchOutcome::Exhausted {
        sequences: examined,
    })
}

pub fn verify_certificate(
    left: &PlumbingTree,
    right: &PlumbingTree,
    cert: &StabilizationCertificate,
) -> bool {
    verify_certificate_with_cap(left, right, cert, DEFAULT_MU_CAP)
}

/// Replays both move lists, recanonicalizes and compares against the
/// matched form and against each other's invariant reports.
pub fn verify_certificate_with_cap(
    left: &PlumbingTree,
    right: &PlumbingTree,
    cert: &StabilizationCertificate,
    cap: usize,
) -> bool {
    let (Ok(a), Ok(b)) = (
        replay(left, &cert.moves_left),
        replay(right, &cert.moves_right),
    ) else {
        return false;
    };
    let (Ok(ca), Ok(cb)) = (
        a.canonical_form_with_cap(cap),
        b.canonical_form_with_cap(cap),
    ) else {
        return false;
    };
    ca == cb && ca == cert.matched_form && a.invariants() == b.invariants()
}
