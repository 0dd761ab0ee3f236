//! The augmentation category: multilinear components of the conjugated
//! differential, the operations μ^d, the A∞ relations and the composition
//! on homology.
//!
//! Conventions. A segment list `segs = (s_0, …, s_d)` is read left to right:
//! `s_0` evaluates the part of a word before the first kept letter. In the
//! usual notation `μ^d_{ε_d,…,ε_0}(b_d,…,b_1)` this means `s_0 = ε_d` and
//! the argument list is `(b_d, …, b_1)`, again left to right. The morphism
//! space `C_{X,Y}` consists of letters with `X` on their left and `Y` on
//! their right.
//!
//! Signs. `μ^d(b_d,…,b_1)` is the coefficient of the pattern `b_d … b_1` in
//! `∂a`, multiplied by `(-1)^{gr(b_1)+…+gr(b_d)}`. Over F_2 the sign is
//! invisible; for odd p it is what makes the A∞ relations hold with
//! `✠_j = Σ_{k≤j}(|a_k| - 1)` given the Leibniz rule of the algebra.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::sync::{Arc, RwLock};

use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{Dga, Field, GenId, Poly};
use crate::augment::{enumerate_augmentations, Augmentation};
use crate::engine::{default_engine, ComponentEngine};
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Subspace};

/// A linear combination of generators (the dual basis is identified with
/// the generators).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cochain {
    field: Field,
    coeffs: Vec<u32>,
}

impl Cochain {
    pub fn zero(field: Field, len: usize) -> Cochain {
        Cochain {
            field,
            coeffs: vec![0; len],
        }
    }

    pub fn basis(field: Field, len: usize, g: GenId) -> Cochain {
        let mut c = Cochain::zero(field, len);
        c.coeffs[g] = 1 % field.p();
        c
    }

    pub fn from_coeffs(field: Field, coeffs: Vec<u32>) -> Cochain {
        let coeffs = coeffs.into_iter().map(|v| v % field.p()).collect();
        Cochain { field, coeffs }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn get(&self, g: GenId) -> u32 {
        self.coeffs[g]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// Nonzero `(generator, coefficient)` pairs.
    pub fn support(&self) -> impl Iterator<Item = (GenId, u32)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(g, &c)| (g, c))
    }

    pub fn add_scaled(&mut self, other: &Cochain, s: u32) {
        let f = self.field;
        for (x, &y) in self.coeffs.iter_mut().zip(&other.coeffs) {
            *x = f.add(*x, f.mul(y, s));
        }
    }

    pub fn add_term(&mut self, g: GenId, c: u32) {
        self.coeffs[g] = self.field.add(self.coeffs[g], c);
    }

    pub fn scale(&self, s: u32) -> Cochain {
        let f = self.field;
        Cochain {
            field: f,
            coeffs: self.coeffs.iter().map(|&c| f.mul(c, s)).collect(),
        }
    }

    /// The part supported on generators of reduced grading `k`.
    pub fn part_in_grading(&self, dga: &Dga, k: i32) -> Cochain {
        let mut c = self.clone();
        for (g, x) in c.coeffs.iter_mut().enumerate() {
            if dga.grading(g) != k {
                *x = 0;
            }
        }
        c
    }

    /// Reduced gradings present in the support, ascending.
    pub fn gradings(&self, dga: &Dga) -> Vec<i32> {
        let mut ks: Vec<i32> = self.support().map(|(g, _)| dga.grading(g)).collect();
        ks.sort_unstable();
        ks.dedup();
        ks
    }

    pub fn display(&self, dga: &Dga) -> String {
        let parts: Vec<String> = self
            .support()
            .map(|(g, c)| {
                if c == 1 {
                    dga.name(g).to_string()
                } else {
                    format!("{c} {}", dga.name(g))
                }
            })
            .collect();
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

/// For one segment list: each pattern of kept letters mapped to the
/// generators whose image contains it, with coefficients.
pub type PatternTable = HashMap<Vec<GenId>, Vec<(GenId, u32)>>;

/// Tabulates the length-d components of `polys[a]` for every output
/// generator `a`; with `twisted`, the coefficient for `a` is multiplied by
/// `(-1)^{gr(a)-1}`.
pub(crate) fn pattern_table(
    engine: &dyn ComponentEngine,
    polys: &[Poly],
    output_gradings: Option<&[i32]>,
    segments: &[&Augmentation],
) -> Result<PatternTable> {
    let mut table: PatternTable = HashMap::new();
    for (a, x) in polys.iter().enumerate() {
        let comp = engine.component(x, segments)?;
        let f = x.field();
        let sign = output_gradings.map_or(1 % f.p(), |gr| f.sign(gr[a] as i64 - 1));
        for (w, c) in comp.terms() {
            table
                .entry(w.letters().to_vec())
                .or_default()
                .push((a, f.mul(c, sign)));
        }
    }
    Ok(table)
}

/// Evaluates a multilinear map given on basis patterns at cochain arguments.
pub(crate) fn evaluate_multilinear(
    field: Field,
    out_len: usize,
    args: &[&Cochain],
    mut basis: impl FnMut(&[GenId]) -> Result<Vec<(GenId, u32)>>,
) -> Result<Cochain> {
    let mut out = Cochain::zero(field, out_len);
    let supports: Vec<Vec<(GenId, u32)>> = args.iter().map(|a| a.support().collect()).collect();
    if supports.iter().any(|s| s.is_empty()) {
        return Ok(out);
    }
    let mut idx = vec![0usize; args.len()];
    let mut word = vec![0; args.len()];
    loop {
        let mut coeff = 1 % field.p();
        for (k, &i) in idx.iter().enumerate() {
            let (g, c) = supports[k][i];
            word[k] = g;
            coeff = field.mul(coeff, c);
        }
        for (g, c) in basis(&word)? {
            out.add_term(g, field.mul(c, coeff));
        }
        let mut pos = args.len();
        loop {
            if pos == 0 {
                return Ok(out);
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < supports[pos].len() {
                break;
            }
            idx[pos] = 0;
        }
    }
}

/// Objects are the augmentations of one algebra, in canonical order.
pub struct AugCategory {
    dga: Arc<Dga>,
    augs: Vec<Augmentation>,
    engine: Arc<dyn ComponentEngine>,
    tables: RwLock<HashMap<Vec<usize>, Arc<PatternTable>>>,
}

impl fmt::Debug for AugCategory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("AugCategory")
            .field("generators", &self.dga.len())
            .field("objects", &self.augs.len())
            .field("engine", &self.engine.name())
            .finish()
    }
}

impl AugCategory {
    pub fn new(dga: Arc<Dga>) -> Result<AugCategory> {
        AugCategory::with_engine(dga, default_engine())
    }

    pub fn with_engine(dga: Arc<Dga>, engine: Arc<dyn ComponentEngine>) -> Result<AugCategory> {
        let augs = enumerate_augmentations(&dga)?;
        AugCategory::with_objects(dga, augs, engine)
    }

    pub fn with_objects(
        dga: Arc<Dga>,
        augs: Vec<Augmentation>,
        engine: Arc<dyn ComponentEngine>,
    ) -> Result<AugCategory> {
        for e in &augs {
            e.check_dga(&dga)?;
        }
        Ok(AugCategory {
            dga,
            augs,
            engine,
            tables: RwLock::new(HashMap::new()),
        })
    }

    pub fn dga(&self) -> &Arc<Dga> {
        &self.dga
    }

    pub fn field(&self) -> Field {
        self.dga.field()
    }

    pub fn objects(&self) -> &[Augmentation] {
        &self.augs
    }

    pub fn len(&self) -> usize {
        self.augs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.augs.is_empty()
    }

    pub fn engine(&self) -> &Arc<dyn ComponentEngine> {
        &self.engine
    }

    pub fn object_index(&self, e: &Augmentation) -> Option<usize> {
        self.augs.binary_search(e).ok()
    }

    pub(crate) fn segments(&self, segs: &[usize]) -> Result<Vec<&Augmentation>> {
        segs.iter()
            .map(|&i| {
                self.augs.get(i).ok_or(Error::IndexOutOfRange {
                    index: i + 1,
                    len: self.augs.len(),
                })
            })
            .collect()
    }

    fn table(&self, segs: &[usize]) -> Result<Arc<PatternTable>> {
        if let Some(t) = self.tables.read().expect("table cache").get(segs) {
            return Ok(t.clone());
        }
        let gradings: Vec<i32> = self.dga.generators().iter().map(|g| g.grading()).collect();
        let t = Arc::new(pattern_table(
            self.engine.as_ref(),
            self.dga.differentials(),
            Some(&gradings),
            &self.segments(segs)?,
        )?);
        self.tables
            .write()
            .expect("table cache")
            .insert(segs.to_vec(), t.clone());
        Ok(t)
    }

    /// `∂_d` of a generator for the segment list (unsigned).
    pub fn multilinear_component(&self, segs: &[usize], a: GenId) -> Result<Poly> {
        if a >= self.dga.len() {
            return Err(Error::GeneratorOutOfRange(a));
        }
        self.engine
            .component(self.dga.differential(a), &self.segments(segs)?)
    }

    /// `μ^d` on basis arguments, as `(generator, coefficient)` pairs.
    pub fn mu_pattern(&self, segs: &[usize], word: &[GenId]) -> Result<Vec<(GenId, u32)>> {
        if segs.len() != word.len() + 1 || word.is_empty() {
            return Err(Error::Arity(format!(
                "μ^{} needs {} augmentations, got {}",
                word.len(),
                word.len() + 1,
                segs.len()
            )));
        }
        if let Some(&bad) = word.iter().find(|&&g| g >= self.dga.len()) {
            return Err(Error::GeneratorOutOfRange(bad));
        }
        Ok(self.table(segs)?.get(word).cloned().unwrap_or_default())
    }

    pub fn mu(&self, segs: &[usize], args: &[&Cochain]) -> Result<Cochain> {
        if segs.len() != args.len() + 1 || args.is_empty() {
            return Err(Error::Arity(format!(
                "μ^{} needs {} augmentations, got {}",
                args.len(),
                args.len() + 1,
                segs.len()
            )));
        }
        let table = self.table(segs)?;
        evaluate_multilinear(self.field(), self.dga.len(), args, |w| {
            Ok(table.get(w).cloned().unwrap_or_default())
        })
    }

    pub fn basis(&self, g: GenId) -> Cochain {
        Cochain::basis(self.field(), self.dga.len(), g)
    }

    /// `μ¹` on `C_{X,Y}` as a matrix, column `g` being `μ¹(g)`.
    pub fn mu1_matrix(&self, x: usize, y: usize) -> Result<Matrix> {
        let n = self.dga.len();
        let mut m = Matrix::zeros(self.field(), n, n);
        for g in 0..n {
            for (out, c) in self.mu_pattern(&[x, y], &[g])? {
                m.add_to(out, g, c);
            }
        }
        Ok(m)
    }

    pub fn is_cycle(&self, x: usize, y: usize, c: &Cochain) -> Result<bool> {
        Ok(self.mu(&[x, y], &[c])?.is_zero())
    }

    /// Basis of the cocycles in `C_{X,Y}`.
    pub fn cycles(&self, x: usize, y: usize) -> Result<Vec<Cochain>> {
        let f = self.field();
        Ok(self
            .mu1_matrix(x, y)?
            .kernel_basis()
            .into_iter()
            .map(|v| Cochain::from_coeffs(f, v))
            .collect())
    }

    pub fn boundaries(&self, x: usize, y: usize) -> Result<Subspace> {
        Ok(Subspace::column_space(&self.mu1_matrix(x, y)?))
    }
}

/// `μ^d` for an explicit segment list and generator arguments; see the
/// module documentation for the order conventions.
pub fn mu_d(dga: &Dga, segments: &[&Augmentation], args: &[GenId]) -> Result<Cochain> {
    if segments.len() != args.len() + 1 || args.is_empty() {
        return Err(Error::Arity(format!(
            "μ^{} needs {} augmentations",
            args.len(),
            args.len() + 1
        )));
    }
    let gradings: Vec<i32> = dga.generators().iter().map(|g| g.grading()).collect();
    let table = pattern_table(
        default_engine().as_ref(),
        dga.differentials(),
        Some(&gradings),
        segments,
    )?;
    let mut out = Cochain::zero(dga.field(), dga.len());
    for &(g, c) in table.get(args).map(Vec::as_slice).unwrap_or(&[]) {
        out.add_term(g, c);
    }
    Ok(out)
}

/// `∂_d(a)` for an explicit segment list.
pub fn multilinear_component(dga: &Dga, segments: &[&Augmentation], a: GenId) -> Result<Poly> {
    if a >= dga.len() {
        return Err(Error::GeneratorOutOfRange(a));
    }
    default_engine().component(dga.differential(a), segments)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RelationViolation {
    pub d: usize,
    /// Object indices, 0-based, left to right.
    pub segments: Vec<usize>,
    /// Generator names, left to right.
    pub args: Vec<String>,
    pub residual: String,
}

impl fmt::Display for RelationViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let segs: Vec<String> = self
            .segments
            .iter()
            .map(|i| format!("e{}", i + 1))
            .collect();
        write!(
            f,
            "d={} augs ({}) chords ({}): residual {}",
            self.d,
            segs.join(","),
            self.args.join(","),
            self.residual
        )
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct RelationReport {
    /// Number of (segment list, argument tuple) pairs covered.
    pub checked: u64,
    pub violations: Vec<RelationViolation>,
}

impl RelationReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

pub(crate) fn all_tuples(m: usize, len: usize) -> Vec<Vec<usize>> {
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

/// All subsequences (up to length `max`) of the words of `polys`.
pub(crate) fn subpatterns(polys: &[Poly], max: usize) -> HashSet<Vec<GenId>> {
    let mut out = HashSet::new();
    out.insert(Vec::new());
    for x in polys {
        for (w, _) in x.terms() {
            let l = w.letters();
            let mut layer: Vec<(usize, Vec<GenId>)> = vec![(0, Vec::new())];
            for _ in 0..max.min(l.len()) {
                let mut next = Vec::new();
                for (start, pat) in &layer {
                    for (j, &letter) in l.iter().enumerate().skip(*start) {
                        let mut p = pat.clone();
                        p.push(letter);
                        out.insert(p.clone());
                        next.push((j + 1, p));
                    }
                }
                layer = next;
            }
        }
    }
    out
}

/// The left side of the A∞ relation of arity `d = args.len()`.
pub fn a_infinity_residual(cat: &AugCategory, segs: &[usize], args: &[GenId]) -> Result<Cochain> {
    let f = cat.field();
    let dga = cat.dga();
    let d = args.len();
    let mut out = Cochain::zero(f, dga.len());
    for i in 1..=d {
        for s in 0..=d - i {
            let inner = cat.mu_pattern(&segs[s..=s + i], &args[s..s + i])?;
            if inner.is_empty() {
                continue;
            }
            let mark: i64 = args[s + i..].iter().map(|&g| dga.grading(g) as i64).sum();
            let sign = f.sign(mark);
            let mut outer_segs = segs[..=s].to_vec();
            outer_segs.extend_from_slice(&segs[s + i..]);
            let mut word = args[..s].to_vec();
            word.push(0);
            word.extend_from_slice(&args[s + i..]);
            for (g, c) in inner {
                word[s] = g;
                for (h, e) in cat.mu_pattern(&outer_segs, &word)? {
                    out.add_term(h, f.mul(sign, f.mul(c, e)));
                }
            }
        }
    }
    Ok(out)
}

/// Checks the A∞ relations for every segment list of length `d + 1` and
/// every generator tuple of length `d`, `1 ≤ d ≤ max_d`. Tuples for which
/// every term vanishes for structural reasons (no pattern occurs in any
/// differential) are counted but not evaluated.
pub fn check_a_infinity(cat: &AugCategory, max_d: usize) -> Result<RelationReport> {
    let dga = cat.dga();
    let n = dga.len();
    let m = cat.len();
    let patterns = subpatterns(dga.differentials(), max_d);
    let mut report = RelationReport::default();
    for d in 1..=max_d {
        // an argument tuple matters only if some split has both its inner
        // block and its outer remainder occurring as patterns
        let relevant: Vec<Vec<GenId>> = all_tuples(n, d)
            .into_iter()
            .filter(|args| {
                (1..=d).any(|i| {
                    (0..=d - i).any(|s| {
                        let mut rest = args[..s].to_vec();
                        rest.extend_from_slice(&args[s + i..]);
                        patterns.contains(&args[s..s + i]) && patterns.contains(&rest)
                    })
                })
            })
            .collect();
        let seg_lists = all_tuples(m, d + 1);
        let found: Vec<Vec<RelationViolation>> = seg_lists
            .par_iter()
            .map(|segs| {
                let mut bad = Vec::new();
                for args in &relevant {
                    let r = a_infinity_residual(cat, segs, args)?;
                    if !r.is_zero() {
                        bad.push(RelationViolation {
                            d,
                            segments: segs.clone(),
                            args: args.iter().map(|&g| dga.name(g).to_string()).collect(),
                            residual: r.display(dga),
                        });
                    }
                }
                Ok(bad)
            })
            .collect::<Result<_>>()?;
        report.checked += (seg_lists.len() as u64) * (n as u64).pow(d as u32);
        report.violations.extend(found.into_iter().flatten());
    }
    Ok(report)
}

/// `[x] ∘ [y]` for `x ∈ C_{s0,s1}` and `y ∈ C_{s1,s2}` cocycles, returned as
/// the canonical representative of its class in `C_{s0,s2}`. The sign is
/// `(-1)^{|y|}` on each homogeneous part of `y`.
pub fn homological_composition(
    cat: &AugCategory,
    segs: [usize; 3],
    x: &Cochain,
    y: &Cochain,
) -> Result<Cochain> {
    let [s0, s1, s2] = segs;
    let dga = cat.dga();
    for (c, a, b, name) in [(x, s0, s1, "left"), (y, s1, s2, "right")] {
        if !cat.is_cycle(a, b, c)? {
            return Err(Error::NotACycle(format!(
                "{name} argument {} is not closed",
                c.display(dga)
            )));
        }
    }
    let f = cat.field();
    let mut rep = Cochain::zero(f, dga.len());
    for k in y.gradings(dga) {
        let part = y.part_in_grading(dga, k);
        let prod = cat.mu(&[s0, s1, s2], &[x, &part])?;
        rep.add_scaled(&prod, f.sign(k as i64 + 1));
    }
    let reduced = cat.boundaries(s0, s2)?.reduce(rep.coeffs());
    Ok(Cochain::from_coeffs(f, reduced))
}
