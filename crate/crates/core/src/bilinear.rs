//! Bilinearised complexes, their homology, the all-pairs table and the
//! classification of augmentations by the rows and columns of that table.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::algebra::{Dga, Field};
use crate::augment::Augmentation;
use crate::engine::{ComponentEngine, DirectEngine};
use crate::error::{Error, Result};
use crate::linalg::Matrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    /// `d`, lowering the grading by one.
    Homological,
    /// `μ¹`, raising the grading by one.
    Cohomological,
}

/// A differential on the span of the generators. `matrix[out][in]` is the
/// coefficient of generator `out` in the image of generator `in`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BilinearisedComplex {
    gradings: Vec<i32>,
    matrix: Matrix,
    direction: Direction,
}

/// Graded dimensions, zero entries omitted. Displayed with degrees
/// descending, e.g. `1:1 0:2`; the empty space prints as `0`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GradedDimensions(BTreeMap<i32, usize>);

impl GradedDimensions {
    pub fn new() -> GradedDimensions {
        GradedDimensions::default()
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (i32, usize)>) -> GradedDimensions {
        let mut g = GradedDimensions::new();
        for (k, v) in pairs {
            g.add(k, v);
        }
        g
    }

    pub fn add(&mut self, degree: i32, dim: usize) {
        if dim == 0 {
            return;
        }
        *self.0.entry(degree).or_insert(0) += dim;
    }

    pub fn get(&self, degree: i32) -> usize {
        self.0.get(&degree).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total(&self) -> usize {
        self.0.values().sum()
    }

    pub fn min_degree(&self) -> Option<i32> {
        self.0.keys().next().copied()
    }

    pub fn max_degree(&self) -> Option<i32> {
        self.0.keys().next_back().copied()
    }

    /// `(degree, dim)` pairs, degrees descending.
    pub fn descending(&self) -> Vec<(i32, usize)> {
        self.0.iter().rev().map(|(&k, &v)| (k, v)).collect()
    }
}

impl fmt::Display for GradedDimensions {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .descending()
            .into_iter()
            .map(|(k, v)| format!("{k}:{v}"))
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

impl Serialize for GradedDimensions {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let pairs = self.descending();
        let mut seq = s.serialize_seq(Some(pairs.len()))?;
        for p in pairs {
            seq.serialize_element(&[p.0 as i64, p.1 as i64])?;
        }
        seq.end()
    }
}

impl BilinearisedComplex {
    pub fn field(&self) -> Field {
        self.matrix.field()
    }

    pub fn direction(&self) -> Direction {
        self.direction
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn gradings(&self) -> &[i32] {
        &self.gradings
    }

    fn step(&self) -> i32 {
        match self.direction {
            Direction::Homological => -1,
            Direction::Cohomological => 1,
        }
    }

    fn degrees(&self) -> Vec<i32> {
        let mut ds: Vec<i32> = self.gradings.clone();
        ds.sort_unstable();
        ds.dedup();
        ds
    }

    fn in_degree(&self, k: i32) -> Vec<usize> {
        (0..self.gradings.len())
            .filter(|&g| self.gradings[g] == k)
            .collect()
    }

    /// The block from degree `k` to degree `k ∓ 1`.
    pub fn block(&self, k: i32) -> Matrix {
        self.matrix
            .select(&self.in_degree(k + self.step()), &self.in_degree(k))
    }

    /// Nonzero entries all connect degree `k` to `k ∓ 1`.
    pub fn is_homogeneous(&self) -> bool {
        let n = self.gradings.len();
        (0..n).all(|out| {
            (0..n).all(|inp| {
                self.matrix.get(out, inp) == 0
                    || self.gradings[out] == self.gradings[inp] + self.step()
            })
        })
    }

    pub fn squares_to_zero(&self) -> bool {
        self.matrix.mul(&self.matrix).is_zero()
    }

    pub fn transpose(&self) -> BilinearisedComplex {
        BilinearisedComplex {
            gradings: self.gradings.clone(),
            matrix: self.matrix.transpose(),
            direction: match self.direction {
                Direction::Homological => Direction::Cohomological,
                Direction::Cohomological => Direction::Homological,
            },
        }
    }

    /// `dim ker − dim im` in every degree.
    pub fn homology(&self) -> GradedDimensions {
        let degrees = self.degrees();
        let ranks: BTreeMap<i32, usize> =
            degrees.iter().map(|&k| (k, self.block(k).rank())).collect();
        let mut out = GradedDimensions::new();
        for &k in &degrees {
            let dim = self.in_degree(k).len();
            let outgoing = ranks[&k];
            let incoming = ranks.get(&(k - self.step())).copied().unwrap_or(0);
            out.add(k, dim - outgoing - incoming);
        }
        out
    }

    /// Image of a single generator, as `(generator, coefficient)` pairs.
    pub fn image(&self, g: usize) -> Vec<(usize, u32)> {
        (0..self.gradings.len())
            .filter_map(|out| {
                let c = self.matrix.get(out, g);
                (c != 0).then_some((out, c))
            })
            .collect()
    }
}

fn check_pair(dga: &Dga, e0: &Augmentation, e1: &Augmentation) -> Result<()> {
    e0.check_dga(dga)?;
    e1.check_dga(dga)
}

/// `d^{ε₀,ε₁}`: each word keeps one letter, the part to its left is
/// evaluated by `ε₀` and the part to its right by `ε₁`.
pub fn bilinearised_differential(
    dga: &Dga,
    e0: &Augmentation,
    e1: &Augmentation,
) -> Result<BilinearisedComplex> {
    bilinearised_differential_with(&DirectEngine, dga, e0, e1)
}

pub fn bilinearised_differential_with(
    engine: &dyn ComponentEngine,
    dga: &Dga,
    e0: &Augmentation,
    e1: &Augmentation,
) -> Result<BilinearisedComplex> {
    check_pair(dga, e0, e1)?;
    let n = dga.len();
    let mut matrix = Matrix::zeros(dga.field(), n, n);
    for a in 0..n {
        let linear = engine.component(dga.differential(a), &[e0, e1])?;
        for (w, c) in linear.terms() {
            matrix.add_to(w.letters()[0], a, c);
        }
    }
    Ok(BilinearisedComplex {
        gradings: dga.generators().iter().map(|g| g.grading()).collect(),
        matrix,
        direction: Direction::Homological,
    })
}

/// `μ¹_{ε₁,ε₀}`, the transpose of `d^{ε₁,ε₀}` (first augmentation on the left).
pub fn dual_codifferential(
    dga: &Dga,
    e1: &Augmentation,
    e0: &Augmentation,
) -> Result<BilinearisedComplex> {
    Ok(bilinearised_differential(dga, e1, e0)?.transpose())
}

/// Entry `(i, j)` is the homology of `d^{ε_i,ε_j}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct LchTable {
    entries: Vec<Vec<GradedDimensions>>,
}

impl LchTable {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, i: usize, j: usize) -> &GradedDimensions {
        &self.entries[i][j]
    }

    pub fn rows(&self) -> &[Vec<GradedDimensions>] {
        &self.entries
    }

    pub fn row(&self, i: usize) -> Vec<GradedDimensions> {
        self.entries[i].clone()
    }

    pub fn column(&self, j: usize) -> Vec<GradedDimensions> {
        self.entries.iter().map(|r| r[j].clone()).collect()
    }

    /// Plain-text grid, one row per line, cells separated by ` | `.
    pub fn render(&self) -> String {
        let cells: Vec<Vec<String>> = self
            .entries
            .iter()
            .map(|r| r.iter().map(|c| c.to_string()).collect())
            .collect();
        let width = cells
            .iter()
            .flatten()
            .map(|c| c.chars().count())
            .max()
            .unwrap_or(1);
        let mut out = String::new();
        for (i, r) in cells.iter().enumerate() {
            let padded: Vec<String> = r.iter().map(|c| format!("{c:<width$}")).collect();
            out.push_str(&format!("e{:<3}{}\n", i + 1, padded.join(" | ").trim_end()));
        }
        out
    }
}

pub fn lch_table(dga: &Dga, augs: &[Augmentation]) -> Result<LchTable> {
    lch_table_with(&DirectEngine, dga, augs)
}

pub fn lch_table_with(
    engine: &dyn ComponentEngine,
    dga: &Dga,
    augs: &[Augmentation],
) -> Result<LchTable> {
    let n = augs.len();
    let cells: Vec<GradedDimensions> = (0..n * n)
        .into_par_iter()
        .map(|k| {
            Ok(bilinearised_differential_with(engine, dga, &augs[k / n], &augs[k % n])?.homology())
        })
        .collect::<Result<_>>()?;
    Ok(LchTable {
        entries: cells.chunks(n.max(1)).map(|c| c.to_vec()).collect(),
    })
}

/// Augmentations grouped by their (row, column) profile in the table. Two
/// augmentations in different cells are not equivalent; augmentations
/// sharing a cell are merely not distinguished by this test.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub cells: Vec<Vec<usize>>,
}

impl Classification {
    pub fn distinguished(&self, i: usize, j: usize) -> bool {
        self.cells
            .iter()
            .all(|c| !(c.contains(&i) && c.contains(&j)))
    }

    pub fn all_singletons(&self) -> bool {
        self.cells.iter().all(|c| c.len() == 1)
    }
}

pub fn classify(table: &LchTable) -> Classification {
    let mut cells: Vec<(Vec<GradedDimensions>, Vec<GradedDimensions>, Vec<usize>)> = Vec::new();
    for i in 0..table.len() {
        let (row, col) = (table.row(i), table.column(i));
        match cells.iter_mut().find(|(r, c, _)| *r == row && *c == col) {
            Some(cell) => cell.2.push(i),
            None => cells.push((row, col, vec![i])),
        }
    }
    Classification {
        cells: cells.into_iter().map(|c| c.2).collect(),
    }
}

pub fn classify_augmentations(dga: &Dga, augs: &[Augmentation]) -> Result<Classification> {
    Ok(classify(&lch_table(dga, augs)?))
}

pub(crate) fn require_index(augs: &[Augmentation], i: usize) -> Result<&Augmentation> {
    augs.get(i).ok_or(Error::IndexOutOfRange {
        index: i + 1,
        len: augs.len(),
    })
}
