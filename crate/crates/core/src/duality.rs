//! Dimension-level check of the duality long exact sequence
//!
//! ```text
//! … → H_{k+1}(Λ) → LCH^{n-k-1}_{ε₁,ε₀} → LCH_k^{ε₀,ε₁} → H_k(Λ) → …
//! ```
//!
//! The maps in the sequence are not computable from the algebra alone, so
//! only the dimensions are tested: a sequence of vector spaces with given
//! dimensions can be exact iff the greedy rank recurrence stays
//! nonnegative and ends at zero.

use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::Dga;
use crate::augment::Augmentation;
use crate::bilinear::{bilinearised_differential, dual_codifferential, GradedDimensions};
use crate::error::Result;

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ExactSequenceData {
    /// Dimension of the Legendrian.
    pub n: i32,
    pub betti: GradedDimensions,
    /// `LCH_*^{ε₀,ε₁}`.
    pub hom: GradedDimensions,
    /// `LCH^*_{ε₁,ε₀}`.
    pub cohom: GradedDimensions,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SequenceTerm {
    pub label: String,
    pub dim: usize,
}

fn term(label: String, dim: usize) -> SequenceTerm {
    SequenceTerm { label, dim }
}

/// Terms in order, for `k` descending, with a single zero term on each
/// side of the nonzero stretch.
pub fn assemble_sequence(data: &ExactSequenceData) -> Vec<SequenceTerm> {
    let mut ks: Vec<i32> = Vec::new();
    ks.extend(
        data.betti
            .descending()
            .iter()
            .flat_map(|&(k, _)| [k - 1, k]),
    );
    ks.extend(data.cohom.descending().iter().map(|&(m, _)| data.n - 1 - m));
    ks.extend(data.hom.descending().iter().map(|&(k, _)| k));
    let (Some(&lo), Some(&hi)) = (ks.iter().min(), ks.iter().max()) else {
        return vec![term("0".into(), 0), term("0".into(), 0)];
    };
    let mut terms = Vec::new();
    for k in (lo..=hi).rev() {
        let m = data.n - k - 1;
        terms.push(term(format!("H_{}", k + 1), data.betti.get(k + 1)));
        terms.push(term(format!("LCH^{m}"), data.cohom.get(m)));
        terms.push(term(format!("LCH_{k}"), data.hom.get(k)));
    }
    terms.push(term(format!("H_{lo}"), data.betti.get(lo)));
    let first = terms.iter().position(|t| t.dim != 0);
    let last = terms.iter().rposition(|t| t.dim != 0);
    match (first, last) {
        (Some(a), Some(b)) => {
            let a = a.saturating_sub(1);
            let b = (b + 1).min(terms.len() - 1);
            terms[a..=b].to_vec()
        }
        _ => vec![term("0".into(), 0), term("0".into(), 0)],
    }
}

pub fn dims(terms: &[SequenceTerm]) -> Vec<usize> {
    terms.iter().map(|t| t.dim).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Feasibility {
    pub feasible: bool,
    /// `ranks[m]` is the rank of the map from term `m` to term `m + 1`.
    pub ranks: Vec<i64>,
    /// First position where the recurrence goes wrong.
    pub failure: Option<usize>,
}

/// `r_{-1} = 0`, `r_m = dims_m − r_{m−1}`; exactness is possible iff every
/// `r_m ≥ 0` and the last one is zero.
pub fn exact_sequence_feasible(dims: &[usize]) -> Feasibility {
    let mut ranks = Vec::with_capacity(dims.len());
    let mut prev = 0i64;
    for (m, &d) in dims.iter().enumerate() {
        let r = d as i64 - prev;
        if r < 0 {
            return Feasibility {
                feasible: false,
                ranks,
                failure: Some(m),
            };
        }
        ranks.push(r);
        prev = r;
    }
    if prev != 0 {
        return Feasibility {
            feasible: false,
            ranks,
            failure: Some(dims.len() - 1),
        };
    }
    ranks.pop();
    Feasibility {
        feasible: true,
        ranks,
        failure: None,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairResult {
    /// 0-based indices into the augmentation list.
    pub e0: usize,
    pub e1: usize,
    pub sequence: Vec<SequenceTerm>,
    pub feasibility: Feasibility,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DualityReport {
    pub n: i32,
    pub betti: GradedDimensions,
    pub pairs: Vec<PairResult>,
}

impl DualityReport {
    pub fn passed(&self) -> bool {
        self.pairs.iter().all(|p| p.feasibility.feasible)
    }

    pub fn pair(&self, e0: usize, e1: usize) -> Option<&PairResult> {
        self.pairs.iter().find(|p| p.e0 == e0 && p.e1 == e1)
    }
}

pub fn pair_data(
    dga: &Dga,
    e0: &Augmentation,
    e1: &Augmentation,
    betti: &GradedDimensions,
    n: i32,
) -> Result<ExactSequenceData> {
    Ok(ExactSequenceData {
        n,
        betti: betti.clone(),
        hom: bilinearised_differential(dga, e0, e1)?.homology(),
        cohom: dual_codifferential(dga, e1, e0)?.homology(),
    })
}

/// Runs the feasibility test for every ordered pair of augmentations.
pub fn duality_check(
    dga: &Dga,
    augs: &[Augmentation],
    betti: &GradedDimensions,
    n: i32,
) -> Result<DualityReport> {
    let k = augs.len();
    let pairs = (0..k * k)
        .into_par_iter()
        .map(|idx| {
            let (i, j) = (idx / k, idx % k);
            let data = pair_data(dga, &augs[i], &augs[j], betti, n)?;
            let sequence = assemble_sequence(&data);
            let feasibility = exact_sequence_feasible(&dims(&sequence));
            Ok(PairResult {
                e0: i,
                e1: j,
                sequence,
                feasibility,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(DualityReport {
        n,
        betti: betti.clone(),
        pairs,
    })
}

/// Betti numbers listed from degree 0 upward.
pub fn betti_from_list(list: &[usize]) -> GradedDimensions {
    GradedDimensions::from_pairs(list.iter().enumerate().map(|(k, &b)| (k as i32, b)))
}
