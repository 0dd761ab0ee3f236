//! The n-copy algebra and its conjugated differential, used as a second,
//! independent route to the multilinear components.
//!
//! Idempotents are never built: a letter carries its row and column, and a
//! word is admissible when consecutive letters are composable. Indices are
//! 0-based internally and printed 1-based.

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{Dga, Field, GenId, Poly, Word};
use crate::augment::Augmentation;
use crate::engine::{check_segments, ComponentEngine};
use crate::error::{Error, Result};

/// `a_{i,j} = e_i · a · e_j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IndexedGenerator {
    pub base: GenId,
    pub row: usize,
    pub col: usize,
}

pub type IndexedWord = Vec<IndexedGenerator>;

pub fn is_composable(w: &[IndexedGenerator]) -> bool {
    w.windows(2).all(|p| p[0].col == p[1].row)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndexedPoly {
    field: Field,
    terms: BTreeMap<IndexedWord, u32>,
}

impl IndexedPoly {
    pub fn zero(field: Field) -> IndexedPoly {
        IndexedPoly {
            field,
            terms: BTreeMap::new(),
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&IndexedWord, u32)> + '_ {
        self.terms.iter().map(|(w, &c)| (w, c))
    }

    pub fn coeff(&self, w: &[IndexedGenerator]) -> u32 {
        self.terms.get(w).copied().unwrap_or(0)
    }

    pub fn constant_term(&self) -> u32 {
        self.coeff(&[])
    }

    pub fn add_term(&mut self, w: IndexedWord, c: u32) {
        let f = self.field;
        let c = c % f.p();
        if c == 0 {
            return;
        }
        match self.terms.entry(w) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let s = f.add(*o.get(), c);
                if s == 0 {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn homogeneous_part(&self, len: usize) -> IndexedPoly {
        IndexedPoly {
            field: self.field,
            terms: self
                .terms
                .iter()
                .filter(|(w, _)| w.len() == len)
                .map(|(w, &c)| (w.clone(), c))
                .collect(),
        }
    }

    /// Words whose index path `row(first), col(first), …, col(last)` is
    /// `path`, with the indices forgotten.
    pub fn erase_along(&self, path: &[usize]) -> Poly {
        let d = path.len() - 1;
        let terms = self.terms.iter().filter_map(|(w, &c)| {
            let on_path = w.len() == d
                && w.iter()
                    .enumerate()
                    .all(|(k, g)| g.row == path[k] && g.col == path[k + 1]);
            on_path.then(|| (Word::new(w.iter().map(|g| g.base).collect()), c))
        });
        Poly::from_terms(self.field, terms)
    }

    pub fn display(&self, dga: &Dga) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(w, &c)| {
                let word = if w.is_empty() {
                    "1".to_string()
                } else {
                    w.iter()
                        .map(|g| format!("{}_{{{},{}}}", dga.name(g.base), g.row + 1, g.col + 1))
                        .collect::<Vec<_>>()
                        .join(" ")
                };
                if c == 1 {
                    word
                } else {
                    format!("{c} {word}")
                }
            })
            .collect();
        parts.join(" + ")
    }
}

/// Expands `x` into the n-copy algebra between copies `i` and `j`: every
/// word is replaced by the sum over its composable index paths from `i` to
/// `j`; the unit word survives only when `i = j`.
pub fn lift(x: &Poly, n: usize, i: usize, j: usize) -> IndexedPoly {
    let mut out = IndexedPoly::zero(x.field());
    for (w, c) in x.terms() {
        let letters = w.letters();
        if letters.is_empty() {
            if i == j {
                out.add_term(Vec::new(), c);
            }
            continue;
        }
        // interior indices i_1 … i_{k-1}, odometer over [n]^{k-1}
        let k = letters.len();
        let mut inner = vec![0usize; k - 1];
        loop {
            let word: IndexedWord = (0..k)
                .map(|m| IndexedGenerator {
                    base: letters[m],
                    row: if m == 0 { i } else { inner[m - 1] },
                    col: if m == k - 1 { j } else { inner[m] },
                })
                .collect();
            out.add_term(word, c);
            let mut pos = 0;
            while pos < inner.len() {
                inner[pos] += 1;
                if inner[pos] < n {
                    break;
                }
                inner[pos] = 0;
                pos += 1;
            }
            if pos == inner.len() {
                break;
            }
        }
    }
    out
}

/// The n-copy algebra of a DGA.
#[derive(Clone, Copy, Debug)]
pub struct NCopy<'a> {
    dga: &'a Dga,
    n: usize,
}

impl<'a> NCopy<'a> {
    pub fn new(dga: &'a Dga, n: usize) -> Result<NCopy<'a>> {
        if n == 0 {
            return Err(Error::Invalid(
                "the number of copies must be positive".into(),
            ));
        }
        Ok(NCopy { dga, n })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    fn check(&self, g: IndexedGenerator) -> Result<()> {
        if g.base >= self.dga.len() {
            return Err(Error::GeneratorOutOfRange(g.base));
        }
        for idx in [g.row, g.col] {
            if idx >= self.n {
                return Err(Error::IndexOutOfRange {
                    index: idx + 1,
                    len: self.n,
                });
            }
        }
        Ok(())
    }

    /// `∂_n(a_{i,j})`.
    pub fn differential(&self, g: IndexedGenerator) -> Result<IndexedPoly> {
        self.check(g)?;
        Ok(lift(self.dga.differential(g.base), self.n, g.row, g.col))
    }

    /// Leibniz extension of `∂_n`, with the same sign rule as the base algebra.
    pub fn apply_differential(&self, x: &IndexedPoly) -> Result<IndexedPoly> {
        let f = x.field();
        let mut out = IndexedPoly::zero(f);
        for (w, c) in x.terms() {
            let mut prefix_grading: i64 = 0;
            for (pos, &g) in w.iter().enumerate() {
                let dg = self.differential(g)?;
                let s = f.mul(c, f.sign(prefix_grading));
                for (mid, m) in dg.terms() {
                    let mut word = w[..pos].to_vec();
                    word.extend_from_slice(mid);
                    word.extend_from_slice(&w[pos + 1..]);
                    out.add_term(word, f.mul(s, m));
                }
                prefix_grading += self.dga.grading(g.base) as i64;
            }
        }
        Ok(out)
    }
}

/// `ε_E`: `ε_i` on the diagonal block `(i, i)`, zero off the diagonal.
#[derive(Clone, Debug)]
pub struct CombinedAugmentation<'a> {
    augs: Vec<&'a Augmentation>,
}

impl<'a> CombinedAugmentation<'a> {
    pub fn new(augs: Vec<&'a Augmentation>) -> CombinedAugmentation<'a> {
        CombinedAugmentation { augs }
    }

    pub fn n(&self) -> usize {
        self.augs.len()
    }

    pub fn value(&self, g: IndexedGenerator) -> u32 {
        if g.row == g.col {
            self.augs[g.row].value(g.base)
        } else {
            0
        }
    }

    pub fn evaluate(&self, x: &IndexedPoly) -> u32 {
        let f = x.field();
        x.terms().fold(0, |acc, (w, c)| {
            let v = w.iter().fold(c, |v, &g| f.mul(v, self.value(g)));
            f.add(acc, v)
        })
    }

    /// `φ_{ε_E}`: substitutes `x ↦ x + ε_E(x)` in every letter.
    pub fn conjugate(&self, x: &IndexedPoly) -> IndexedPoly {
        let f = x.field();
        let mut out = IndexedPoly::zero(f);
        for (w, c) in x.terms() {
            let mut partial: Vec<(IndexedWord, u32)> = vec![(Vec::new(), c)];
            for &g in w {
                let e = self.value(g);
                let mut next = Vec::with_capacity(partial.len() * 2);
                for (pw, pc) in partial {
                    if e != 0 {
                        next.push((pw.clone(), f.mul(pc, e)));
                    }
                    let mut kept = pw;
                    kept.push(g);
                    next.push((kept, pc));
                }
                partial = next;
            }
            for (pw, pc) in partial {
                out.add_term(pw, pc);
            }
        }
        out
    }
}

/// `∂^{ε_E}(a_{i,j})` restricted to words of length `d`. The constant term
/// of the full conjugate must vanish; a nonzero constant is an error.
pub fn conjugated_component(
    dga: &Dga,
    combined: &CombinedAugmentation<'_>,
    d: usize,
    g: IndexedGenerator,
) -> Result<IndexedPoly> {
    Ok(conjugated_differential(dga, combined, g)?.homogeneous_part(d))
}

/// All of `∂^{ε_E}(a_{i,j})`.
pub fn conjugated_differential(
    dga: &Dga,
    combined: &CombinedAugmentation<'_>,
    g: IndexedGenerator,
) -> Result<IndexedPoly> {
    let nc = NCopy::new(dga, combined.n())?;
    let full = combined.conjugate(&nc.differential(g)?);
    let constant = full.constant_term();
    if constant != 0 {
        return Err(Error::ConstantTerm(format!(
            "conjugated differential of {}_{{{},{}}} has constant term {constant}",
            dga.name(g.base),
            g.row + 1,
            g.col + 1
        )));
    }
    Ok(full)
}

/// Components read off the n-copy conjugation with `n = d + 1` and the
/// index path `0, 1, …, d`.
#[derive(Clone, Copy, Debug, Default)]
pub struct NCopyEngine;

impl ComponentEngine for NCopyEngine {
    fn name(&self) -> &'static str {
        "ncopy"
    }

    fn component(&self, x: &Poly, segments: &[&Augmentation]) -> Result<Poly> {
        check_segments(x, segments)?;
        let d = segments.len() - 1;
        let combined = CombinedAugmentation::new(segments.to_vec());
        let conj = combined.conjugate(&lift(x, d + 1, 0, d));
        let path: Vec<usize> = (0..=d).collect();
        Ok(conj.erase_along(&path))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OracleMismatch {
    pub generator: String,
    pub copies: usize,
    /// Augmentation indices (0-based) making up `E`.
    pub combined: Vec<usize>,
    /// Index path, 0-based.
    pub path: Vec<usize>,
    pub conjugated: String,
    pub reference: String,
}

impl fmt::Display for OracleMismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let one = |v: &[usize]| {
            v.iter()
                .map(|i| (i + 1).to_string())
                .collect::<Vec<_>>()
                .join(",")
        };
        write!(
            f,
            "{}: n={}, E=({}), path ({}): conjugation gives {}, reference gives {}",
            self.generator,
            self.copies,
            one(&self.combined),
            one(&self.path),
            self.conjugated,
            self.reference
        )
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct OracleReport {
    pub checked: usize,
    pub mismatches: Vec<OracleMismatch>,
}

impl OracleReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Upper bound on `Σ_n m^n · |gens| · n²` for [`oracle_check`].
pub const ORACLE_LIMIT: u128 = 20_000_000;

fn tuples(m: usize, len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|t| {
                (0..m).map(move |i| {
                    let mut t = t.clone();
                    t.push(i);
                    t
                })
            })
            .collect();
    }
    out
}

/// Compares the n-copy conjugation with `reference` for every `E ∈ augs^n`
/// (`1 ≤ n ≤ max_n`), every generator, every block `(i, j)` and every index
/// path of length `d ≤ max_d` from `i` to `j`.
#[allow(clippy::needless_range_loop)]
pub fn oracle_check(
    dga: &Dga,
    augs: &[Augmentation],
    max_n: usize,
    max_d: usize,
    reference: &dyn ComponentEngine,
) -> Result<OracleReport> {
    let m = augs.len();
    let mut work: u128 = 0;
    for n in 1..=max_n {
        work = work.saturating_add(
            (m as u128)
                .saturating_pow(n as u32)
                .saturating_mul((dga.len() * n * n) as u128),
        );
    }
    if work > ORACLE_LIMIT {
        return Err(Error::EnumerationTooLarge {
            count: work,
            limit: ORACLE_LIMIT,
        });
    }

    // reference components for every augmentation tuple that can occur
    let mut expected: HashMap<Vec<usize>, Vec<Poly>> = HashMap::new();
    for d in 1..=max_d {
        let keyed: Vec<(Vec<usize>, Vec<Poly>)> = tuples(m, d + 1)
            .into_par_iter()
            .map(|t| {
                let segs: Vec<&Augmentation> = t.iter().map(|&i| &augs[i]).collect();
                let polys = dga
                    .differentials()
                    .iter()
                    .map(|x| reference.component(x, &segs))
                    .collect::<Result<Vec<_>>>()?;
                Ok((t, polys))
            })
            .collect::<Result<_>>()?;
        expected.extend(keyed);
    }

    let mut report = OracleReport::default();
    for n in 1..=max_n {
        let results: Vec<(usize, Vec<OracleMismatch>)> = tuples(m, n)
            .into_par_iter()
            .map(|e| {
                let combined = CombinedAugmentation::new(e.iter().map(|&i| &augs[i]).collect());
                let mut checked = 0;
                let mut bad = Vec::new();
                for a in 0..dga.len() {
                    for i in 0..n {
                        for j in 0..n {
                            let g = IndexedGenerator {
                                base: a,
                                row: i,
                                col: j,
                            };
                            let conj = conjugated_differential(dga, &combined, g)?;
                            for d in 1..=max_d {
                                for mut path in tuples(n, d - 1) {
                                    path.insert(0, i);
                                    path.push(j);
                                    let key: Vec<usize> = path.iter().map(|&k| e[k]).collect();
                                    let want = &expected[&key][a];
                                    let got = conj.erase_along(&path);
                                    checked += 1;
                                    if &got != want {
                                        bad.push(OracleMismatch {
                                            generator: dga.name(a).to_string(),
                                            copies: n,
                                            combined: e.clone(),
                                            path,
                                            conjugated: dga.poly_to_string(&got),
                                            reference: dga.poly_to_string(want),
                                        });
                                    }
                                }
                            }
                        }
                    }
                }
                Ok((checked, bad))
            })
            .collect::<Result<_>>()?;
        for (c, bad) in results {
            report.checked += c;
            report.mismatches.extend(bad);
        }
    }
    Ok(report)
}
