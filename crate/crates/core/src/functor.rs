//! A∞-functors between augmentation categories and pre-natural
//! transformations between them.
//!
//! A DGA map `f: A → B` induces a functor from the augmentations of `B` to
//! those of `A`, sending `ε` to `ε ∘ f`. Its component `F^d` is read off the
//! length-d part of `f(a)` after conjugation, exactly as `μ^d` is read off
//! `∂a` — but without the sign twist, which is what makes the functor
//! equation hold with the same `✠` signs as the A∞ relations.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, RwLock};

use rayon::prelude::*;
use serde::Serialize;

use crate::ainfty::{
    all_tuples, evaluate_multilinear, pattern_table, subpatterns, AugCategory, Cochain,
    PatternTable, RelationReport, RelationViolation,
};
use crate::algebra::{DgaMorphism, GenId};
use crate::augment::pull_back;
use crate::error::{Error, Result};

pub trait AInfinityFunctor: Send + Sync {
    fn source(&self) -> &AugCategory;
    fn target(&self) -> &AugCategory;
    /// Image of a source object, as an index into the target's objects.
    fn object(&self, i: usize) -> usize;
    /// `F^d` on basis arguments, `d = word.len() ≥ 1`.
    fn pattern(&self, segs: &[usize], word: &[GenId]) -> Result<Vec<(GenId, u32)>>;

    fn component(&self, segs: &[usize], args: &[&Cochain]) -> Result<Cochain> {
        check_arity(segs, args.len(), 1)?;
        let t = self.target();
        evaluate_multilinear(t.field(), t.dga().len(), args, |w| self.pattern(segs, w))
    }
}

fn check_arity(segs: &[usize], d: usize, min: usize) -> Result<()> {
    if segs.len() != d + 1 || d < min {
        return Err(Error::Arity(format!(
            "{d} arguments need {} objects, got {}",
            d + 1,
            segs.len()
        )));
    }
    Ok(())
}

/// `F¹ = Id`, all higher components zero.
pub struct IdentityFunctor {
    cat: Arc<AugCategory>,
}

impl IdentityFunctor {
    pub fn new(cat: Arc<AugCategory>) -> IdentityFunctor {
        IdentityFunctor { cat }
    }
}

impl AInfinityFunctor for IdentityFunctor {
    fn source(&self) -> &AugCategory {
        &self.cat
    }

    fn target(&self) -> &AugCategory {
        &self.cat
    }

    fn object(&self, i: usize) -> usize {
        i
    }

    fn pattern(&self, segs: &[usize], word: &[GenId]) -> Result<Vec<(GenId, u32)>> {
        check_arity(segs, word.len(), 1)?;
        Ok(if word.len() == 1 {
            vec![(word[0], 1 % self.cat.field().p())]
        } else {
            Vec::new()
        })
    }
}

/// The functor induced by a DGA map, stored as tables per object tuple.
pub struct InducedFunctor {
    map: DgaMorphism,
    source: Arc<AugCategory>,
    target: Arc<AugCategory>,
    objects: Vec<usize>,
    tables: RwLock<HashMap<Vec<usize>, Arc<PatternTable>>>,
}

impl fmt::Debug for InducedFunctor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("InducedFunctor")
            .field("objects", &self.objects)
            .finish()
    }
}

impl InducedFunctor {
    /// `source` must be a category of augmentations of `map.target()`, and
    /// `target` one of `map.source()` containing every pulled-back object.
    pub fn new(
        map: DgaMorphism,
        source: Arc<AugCategory>,
        target: Arc<AugCategory>,
    ) -> Result<InducedFunctor> {
        if source.dga().as_ref() != map.target().as_ref()
            || target.dga().as_ref() != map.source().as_ref()
        {
            return Err(Error::AlgebraMismatch(
                "categories do not match the map's source and target".into(),
            ));
        }
        let report = map.validate();
        if !report.is_empty() {
            return Err(Error::Invalid(format!(
                "not a DGA map: {}",
                report.violations[0]
            )));
        }
        let mut objects = Vec::with_capacity(source.len());
        for e in source.objects() {
            let pulled = pull_back(e, &map)?;
            // the constant part of the conjugated image must be exactly the
            // pulled-back augmentation, so nothing of order zero survives
            for (a, x) in map.images().iter().enumerate() {
                let c = source.engine().component(x, &[e])?.constant_term();
                if c.value() != pulled.value(a) {
                    return Err(Error::ConstantTerm(format!(
                        "order-zero part of {} does not cancel",
                        map.source().name(a)
                    )));
                }
            }
            let idx = target.object_index(&pulled).ok_or_else(|| {
                Error::Invalid("pulled-back augmentation is not an object of the target".into())
            })?;
            objects.push(idx);
        }
        Ok(InducedFunctor {
            map,
            source,
            target,
            objects,
            tables: RwLock::new(HashMap::new()),
        })
    }

    /// Builds both categories (all augmentations) with the source
    /// category's engine.
    pub fn from_map(map: DgaMorphism, source: Arc<AugCategory>) -> Result<InducedFunctor> {
        let target = Arc::new(AugCategory::with_engine(
            map.source().clone(),
            source.engine().clone(),
        )?);
        InducedFunctor::new(map, source, target)
    }

    pub fn map(&self) -> &DgaMorphism {
        &self.map
    }

    pub fn source_arc(&self) -> &Arc<AugCategory> {
        &self.source
    }

    pub fn target_arc(&self) -> &Arc<AugCategory> {
        &self.target
    }

    fn table(&self, segs: &[usize]) -> Result<Arc<PatternTable>> {
        if let Some(t) = self.tables.read().expect("table cache").get(segs) {
            return Ok(t.clone());
        }
        let t = Arc::new(pattern_table(
            self.source.engine().as_ref(),
            self.map.images(),
            None,
            &self.source.segments(segs)?,
        )?);
        self.tables
            .write()
            .expect("table cache")
            .insert(segs.to_vec(), t.clone());
        Ok(t)
    }
}

impl AInfinityFunctor for InducedFunctor {
    fn source(&self) -> &AugCategory {
        &self.source
    }

    fn target(&self) -> &AugCategory {
        &self.target
    }

    fn object(&self, i: usize) -> usize {
        self.objects[i]
    }

    fn pattern(&self, segs: &[usize], word: &[GenId]) -> Result<Vec<(GenId, u32)>> {
        check_arity(segs, word.len(), 1)?;
        Ok(self.table(segs)?.get(word).cloned().unwrap_or_default())
    }
}

/// Adds `delta · out` to one entry of `F¹`; everything else is passed
/// through. Used to make sure the checks notice broken data.
pub struct PerturbedFunctor<F> {
    pub inner: F,
    pub segs: [usize; 2],
    pub arg: GenId,
    pub out: GenId,
    pub delta: u32,
}

impl<F: AInfinityFunctor> AInfinityFunctor for PerturbedFunctor<F> {
    fn source(&self) -> &AugCategory {
        self.inner.source()
    }

    fn target(&self) -> &AugCategory {
        self.inner.target()
    }

    fn object(&self, i: usize) -> usize {
        self.inner.object(i)
    }

    fn pattern(&self, segs: &[usize], word: &[GenId]) -> Result<Vec<(GenId, u32)>> {
        let mut v = self.inner.pattern(segs, word)?;
        if segs == self.segs && word == [self.arg] {
            v.push((self.out, self.delta));
        }
        Ok(v)
    }
}

/// Boundary lists `start = q_0 < q_1 < … < q_k = end` of the ways to cut
/// `[start, end)` into nonempty blocks; a single `[start]` when empty.
pub(crate) fn cuts(start: usize, end: usize) -> Vec<Vec<usize>> {
    if start == end {
        return vec![vec![start]];
    }
    let mut out = Vec::new();
    for first in start + 1..=end {
        for mut rest in cuts(first, end) {
            rest.insert(0, start);
            out.push(rest);
        }
    }
    out
}

/// `G ∘ F`: first `F`, then `G`, with
/// `H^d = Σ G^r(F^{s_r}(…), …, F^{s_1}(…))`.
pub struct ComposedFunctor<'a> {
    pub first: &'a dyn AInfinityFunctor,
    pub second: &'a dyn AInfinityFunctor,
}

impl<'a> ComposedFunctor<'a> {
    pub fn new(
        first: &'a dyn AInfinityFunctor,
        second: &'a dyn AInfinityFunctor,
    ) -> Result<ComposedFunctor<'a>> {
        if first.target().dga() != second.source().dga()
            || first.target().objects() != second.source().objects()
        {
            return Err(Error::AlgebraMismatch("functors are not composable".into()));
        }
        Ok(ComposedFunctor { first, second })
    }
}

impl AInfinityFunctor for ComposedFunctor<'_> {
    fn source(&self) -> &AugCategory {
        self.first.source()
    }

    fn target(&self) -> &AugCategory {
        self.second.target()
    }

    fn object(&self, i: usize) -> usize {
        self.second.object(self.first.object(i))
    }

    fn pattern(&self, segs: &[usize], word: &[GenId]) -> Result<Vec<(GenId, u32)>> {
        check_arity(segs, word.len(), 1)?;
        let t = self.target();
        let mut out = Cochain::zero(t.field(), t.dga().len());
        let mid = self.first.target();
        for cut in cuts(0, word.len()) {
            let mut inner = Vec::with_capacity(cut.len() - 1);
            for w in cut.windows(2) {
                let mut c = Cochain::zero(mid.field(), mid.dga().len());
                for (g, v) in self.first.pattern(&segs[w[0]..=w[1]], &word[w[0]..w[1]])? {
                    c.add_term(g, v);
                }
                inner.push(c);
            }
            if inner.iter().any(Cochain::is_zero) {
                continue;
            }
            let outer: Vec<usize> = cut.iter().map(|&q| self.first.object(segs[q])).collect();
            let refs: Vec<&Cochain> = inner.iter().collect();
            out.add_scaled(&self.second.component(&outer, &refs)?, 1);
        }
        Ok(out.support().collect())
    }
}

fn basis_cochain(cat: &AugCategory, pairs: Vec<(GenId, u32)>) -> Cochain {
    let mut c = Cochain::zero(cat.field(), cat.dga().len());
    for (g, v) in pairs {
        c.add_term(g, v);
    }
    c
}

/// Both sides of the functor equation on basis arguments; returns
/// `Σ μ^r(F…F) − Σ ±F(…μ^i…)`.
pub fn functor_residual(
    f: &dyn AInfinityFunctor,
    segs: &[usize],
    args: &[GenId],
) -> Result<Cochain> {
    let (src, tgt) = (f.source(), f.target());
    let field = tgt.field();
    let d = args.len();
    check_arity(segs, d, 1)?;
    let mut out = Cochain::zero(field, tgt.dga().len());
    for cut in cuts(0, d) {
        let blocks: Vec<Cochain> = cut
            .windows(2)
            .map(|w| {
                Ok(basis_cochain(
                    tgt,
                    f.pattern(&segs[w[0]..=w[1]], &args[w[0]..w[1]])?,
                ))
            })
            .collect::<Result<_>>()?;
        if blocks.iter().any(Cochain::is_zero) {
            continue;
        }
        let outer: Vec<usize> = cut.iter().map(|&q| f.object(segs[q])).collect();
        let refs: Vec<&Cochain> = blocks.iter().collect();
        out.add_scaled(&tgt.mu(&outer, &refs)?, 1);
    }
    let minus_one = field.neg(1 % field.p());
    for i in 1..=d {
        for s in 0..=d - i {
            let inner = src.mu_pattern(&segs[s..=s + i], &args[s..s + i])?;
            if inner.is_empty() {
                continue;
            }
            let mark: i64 = args[s + i..]
                .iter()
                .map(|&g| src.dga().grading(g) as i64)
                .sum();
            let sign = field.mul(minus_one, field.sign(mark));
            let mut outer_segs = segs[..=s].to_vec();
            outer_segs.extend_from_slice(&segs[s + i..]);
            let mut word = args[..s].to_vec();
            word.push(0);
            word.extend_from_slice(&args[s + i..]);
            for (g, c) in inner {
                word[s] = g;
                for (h, e) in f.pattern(&outer_segs, &word)? {
                    out.add_term(h, field.mul(sign, field.mul(c, e)));
                }
            }
        }
    }
    Ok(out)
}

/// Upper bound on `objects^(d+1) · generators^d` summed over arities.
pub const SWEEP_LIMIT: u128 = 50_000_000;

fn sweep_size(objects: usize, gens: usize, max_d: usize) -> u128 {
    (1..=max_d)
        .map(|d| {
            (objects as u128)
                .saturating_pow(d as u32 + 1)
                .saturating_mul((gens as u128).saturating_pow(d as u32))
        })
        .fold(0u128, |a, b| a.saturating_add(b))
}

fn guard(objects: usize, gens: usize, max_d: usize) -> Result<()> {
    let n = sweep_size(objects, gens, max_d);
    if n > SWEEP_LIMIT {
        return Err(Error::EnumerationTooLarge {
            count: n,
            limit: SWEEP_LIMIT,
        });
    }
    Ok(())
}

/// The functor equation for all object tuples and generator tuples of
/// arity `1 ≤ d ≤ max_d`. Argument tuples that cannot produce a nonzero
/// term are counted but skipped.
pub fn check_functor_equation(f: &dyn AInfinityFunctor, max_d: usize) -> Result<RelationReport> {
    let src = f.source();
    let dga = src.dga();
    let n = dga.len();
    guard(src.len(), n, max_d)?;
    let mu_patterns = subpatterns(dga.differentials(), max_d);
    let mut report = RelationReport::default();
    for d in 1..=max_d {
        let seg_lists = all_tuples(src.len(), d + 1);
        let arg_lists = all_tuples(n, d);
        // F-patterns depend on the object tuple only through the engine,
        // so relevance is decided per object tuple below
        let found: Vec<Vec<RelationViolation>> = seg_lists
            .par_iter()
            .map(|segs| {
                let mut bad = Vec::new();
                for args in &arg_lists {
                    if !functor_relevant(f, segs, args, &mu_patterns)? {
                        continue;
                    }
                    let r = functor_residual(f, segs, args)?;
                    if !r.is_zero() {
                        bad.push(RelationViolation {
                            d,
                            segments: segs.clone(),
                            args: args.iter().map(|&g| dga.name(g).to_string()).collect(),
                            residual: r.display(f.target().dga()),
                        });
                    }
                }
                Ok(bad)
            })
            .collect::<Result<_>>()?;
        report.checked += (seg_lists.len() * arg_lists.len()) as u64;
        report.violations.extend(found.into_iter().flatten());
    }
    Ok(report)
}

// Cheap necessary condition for a nonzero residual: some term must have
// all its functor blocks nonzero, or an inner μ block occurring in a
// differential.
fn functor_relevant(
    f: &dyn AInfinityFunctor,
    segs: &[usize],
    args: &[GenId],
    mu_patterns: &std::collections::HashSet<Vec<GenId>>,
) -> Result<bool> {
    let d = args.len();
    for i in 1..=d {
        for s in 0..=d - i {
            if mu_patterns.contains(&args[s..s + i]) {
                return Ok(true);
            }
        }
    }
    for cut in cuts(0, d) {
        let mut all = true;
        for w in cut.windows(2) {
            if f.pattern(&segs[w[0]..=w[1]], &args[w[0]..w[1]])?.is_empty() {
                all = false;
                break;
            }
        }
        if all {
            return Ok(true);
        }
    }
    Ok(false)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComponentMismatch {
    pub segments: Vec<usize>,
    pub args: Vec<String>,
    pub left: String,
    pub right: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ComparisonReport {
    pub checked: u64,
    pub mismatches: Vec<ComponentMismatch>,
}

impl ComparisonReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Compares objects and components of two functors with the same source
/// and target up to arity `max_d`.
pub fn compare_functors(
    left: &dyn AInfinityFunctor,
    right: &dyn AInfinityFunctor,
    max_d: usize,
) -> Result<ComparisonReport> {
    let src = left.source();
    if src.dga() != right.source().dga() || left.target().dga() != right.target().dga() {
        return Err(Error::AlgebraMismatch(
            "functors have different ends".into(),
        ));
    }
    let dga = src.dga();
    guard(src.len(), dga.len(), max_d)?;
    let mut report = ComparisonReport::default();
    for i in 0..src.len() {
        if left.object(i) != right.object(i) {
            report.mismatches.push(ComponentMismatch {
                segments: vec![i],
                args: Vec::new(),
                left: format!("e{}", left.object(i) + 1),
                right: format!("e{}", right.object(i) + 1),
            });
        }
    }
    let tgt = left.target().dga();
    for d in 1..=max_d {
        let seg_lists = all_tuples(src.len(), d + 1);
        let arg_lists = all_tuples(dga.len(), d);
        let found: Vec<Vec<ComponentMismatch>> = seg_lists
            .par_iter()
            .map(|segs| {
                let mut bad = Vec::new();
                for args in &arg_lists {
                    let mut l = left.pattern(segs, args)?;
                    let mut r = right.pattern(segs, args)?;
                    let (lc, rc) = (
                        basis_cochain(left.target(), std::mem::take(&mut l)),
                        basis_cochain(right.target(), std::mem::take(&mut r)),
                    );
                    if lc != rc {
                        bad.push(ComponentMismatch {
                            segments: segs.clone(),
                            args: args.iter().map(|&g| dga.name(g).to_string()).collect(),
                            left: lc.display(tgt),
                            right: rc.display(tgt),
                        });
                    }
                }
                Ok(bad)
            })
            .collect::<Result<_>>()?;
        report.checked += (seg_lists.len() * arg_lists.len()) as u64;
        report.mismatches.extend(found.into_iter().flatten());
    }
    Ok(report)
}

/// The functor of `f ∘ g` against the composite of the two functors.
/// `g` is applied first, so its functor is applied second.
pub fn check_functor_composition(
    f: &DgaMorphism,
    g: &DgaMorphism,
    source: Arc<AugCategory>,
    max_d: usize,
) -> Result<ComparisonReport> {
    let fg = DgaMorphism::compose(f, g)?;
    let big_f = InducedFunctor::from_map(f.clone(), source.clone())?;
    let big_g = InducedFunctor::from_map(g.clone(), big_f.target_arc().clone())?;
    let composite = ComposedFunctor::new(&big_f, &big_g)?;
    let direct = InducedFunctor::new(fg, source, big_g.target_arc().clone())?;
    compare_functors(&direct, &composite, max_d)
}

pub trait PreNaturalTransformation: Send + Sync {
    fn degree(&self) -> i32;
    /// `T^d` on basis arguments, `d = word.len() ≥ 0`.
    fn pattern(&self, segs: &[usize], word: &[GenId]) -> Result<Vec<(GenId, u32)>>;
}

/// `T¹ = Id`, every other component zero; degree 1.
pub struct IdentityTransformation {
    field_one: u32,
}

impl IdentityTransformation {
    pub fn new(cat: &AugCategory) -> IdentityTransformation {
        IdentityTransformation {
            field_one: 1 % cat.field().p(),
        }
    }
}

impl PreNaturalTransformation for IdentityTransformation {
    fn degree(&self) -> i32 {
        1
    }

    fn pattern(&self, _segs: &[usize], word: &[GenId]) -> Result<Vec<(GenId, u32)>> {
        Ok(if word.len() == 1 {
            vec![(word[0], self.field_one)]
        } else {
            Vec::new()
        })
    }
}

pub struct ZeroTransformation {
    pub degree: i32,
}

impl PreNaturalTransformation for ZeroTransformation {
    fn degree(&self) -> i32 {
        self.degree
    }

    fn pattern(&self, _segs: &[usize], _word: &[GenId]) -> Result<Vec<(GenId, u32)>> {
        Ok(Vec::new())
    }
}

/// `(segments, argument word) ↦ output terms`.
pub type ComponentTable = HashMap<(Vec<usize>, Vec<GenId>), Vec<(GenId, u32)>>;

/// Components listed explicitly; anything not listed is zero.
#[derive(Clone, Debug, Default)]
pub struct ExtensionalTransformation {
    pub degree: i32,
    pub entries: ComponentTable,
}

impl PreNaturalTransformation for ExtensionalTransformation {
    fn degree(&self) -> i32 {
        self.degree
    }

    fn pattern(&self, segs: &[usize], word: &[GenId]) -> Result<Vec<(GenId, u32)>> {
        Ok(self
            .entries
            .get(&(segs.to_vec(), word.to_vec()))
            .cloned()
            .unwrap_or_default())
    }
}

/// `μ¹(T)^d` on basis arguments, for `T` a pre-natural transformation from
/// `f` to `g` (both functors between the same two categories).
///
/// The first sum runs over all ways of writing the arguments as
/// `G`-blocks, then one (possibly empty) `T`-block, then `F`-blocks, with
/// sign `(-1)^{(deg T - 1)·Σ(|a|-1)}` over the arguments inside the
/// `F`-blocks; the second sum feeds `μ^i` of the source into `T`.
pub fn prenatural_differential(
    f: &dyn AInfinityFunctor,
    g: &dyn AInfinityFunctor,
    t: &dyn PreNaturalTransformation,
    segs: &[usize],
    args: &[GenId],
) -> Result<Cochain> {
    if f.source().dga() != g.source().dga() || f.target().dga() != g.target().dga() {
        return Err(Error::AlgebraMismatch(
            "functors must share source and target".into(),
        ));
    }
    check_arity(segs, args.len(), 0)?;
    let (src, tgt) = (f.source(), f.target());
    let field = tgt.field();
    let gdeg = t.degree() as i64;
    let d = args.len();
    let mut out = Cochain::zero(field, tgt.dga().len());

    for u in 0..=d {
        for len in 0..=d - u {
            let tb = basis_cochain(tgt, t.pattern(&segs[u..=u + len], &args[u..u + len])?);
            if tb.is_zero() {
                continue;
            }
            let f_part: i64 = args[u + len..]
                .iter()
                .map(|&a| src.dga().grading(a) as i64)
                .sum();
            let sign = field.sign((gdeg - 1) * f_part);
            for gcut in cuts(0, u) {
                let gblocks: Vec<Cochain> = gcut
                    .windows(2)
                    .map(|w| {
                        Ok(basis_cochain(
                            tgt,
                            g.pattern(&segs[w[0]..=w[1]], &args[w[0]..w[1]])?,
                        ))
                    })
                    .collect::<Result<_>>()?;
                if gblocks.iter().any(Cochain::is_zero) {
                    continue;
                }
                for fcut in cuts(u + len, d) {
                    let fblocks: Vec<Cochain> = fcut
                        .windows(2)
                        .map(|w| {
                            Ok(basis_cochain(
                                tgt,
                                f.pattern(&segs[w[0]..=w[1]], &args[w[0]..w[1]])?,
                            ))
                        })
                        .collect::<Result<_>>()?;
                    if fblocks.iter().any(Cochain::is_zero) {
                        continue;
                    }
                    let mut outer: Vec<usize> = gcut.iter().map(|&q| g.object(segs[q])).collect();
                    outer.extend(fcut.iter().map(|&q| f.object(segs[q])));
                    let mut refs: Vec<&Cochain> = gblocks.iter().collect();
                    refs.push(&tb);
                    refs.extend(fblocks.iter());
                    out.add_scaled(&tgt.mu(&outer, &refs)?, sign);
                }
            }
        }
    }

    let minus_one = field.neg(1 % field.p());
    for i in 1..=d {
        for s in 0..=d - i {
            let inner = src.mu_pattern(&segs[s..=s + i], &args[s..s + i])?;
            if inner.is_empty() {
                continue;
            }
            let mark: i64 = args[s + i..]
                .iter()
                .map(|&a| src.dga().grading(a) as i64)
                .sum();
            let sign = field.mul(minus_one, field.sign(mark + gdeg - 1));
            let mut outer_segs = segs[..=s].to_vec();
            outer_segs.extend_from_slice(&segs[s + i..]);
            let mut word = args[..s].to_vec();
            word.push(0);
            word.extend_from_slice(&args[s + i..]);
            for (h, c) in inner {
                word[s] = h;
                for (k, e) in t.pattern(&outer_segs, &word)? {
                    out.add_term(k, field.mul(sign, field.mul(c, e)));
                }
            }
        }
    }
    Ok(out)
}

/// `μ¹(T)` as a transformation in its own right, computed on demand.
pub struct PrenaturalDifferential<'a> {
    pub f: &'a dyn AInfinityFunctor,
    pub g: &'a dyn AInfinityFunctor,
    pub t: &'a dyn PreNaturalTransformation,
}

impl PreNaturalTransformation for PrenaturalDifferential<'_> {
    fn degree(&self) -> i32 {
        self.t.degree() + 1
    }

    fn pattern(&self, segs: &[usize], word: &[GenId]) -> Result<Vec<(GenId, u32)>> {
        Ok(prenatural_differential(self.f, self.g, self.t, segs, word)?
            .support()
            .collect())
    }
}

/// Lists the nonzero values of `μ¹(T)^d` for `d ≤ max_d`; an empty report
/// means `T` is natural up to that arity.
pub fn check_natural(
    f: &dyn AInfinityFunctor,
    g: &dyn AInfinityFunctor,
    t: &dyn PreNaturalTransformation,
    max_d: usize,
) -> Result<RelationReport> {
    let src = f.source();
    let dga = src.dga();
    guard(src.len(), dga.len(), max_d)?;
    let mut report = RelationReport::default();
    for d in 0..=max_d {
        let seg_lists = all_tuples(src.len(), d + 1);
        let arg_lists = all_tuples(dga.len(), d);
        let found: Vec<Vec<RelationViolation>> = seg_lists
            .par_iter()
            .map(|segs| {
                let mut bad = Vec::new();
                for args in &arg_lists {
                    let r = prenatural_differential(f, g, t, segs, args)?;
                    if !r.is_zero() {
                        bad.push(RelationViolation {
                            d,
                            segments: segs.clone(),
                            args: args.iter().map(|&a| dga.name(a).to_string()).collect(),
                            residual: r.display(f.target().dga()),
                        });
                    }
                }
                Ok(bad)
            })
            .collect::<Result<_>>()?;
        report.checked += (seg_lists.len() * arg_lists.len()) as u64;
        report.violations.extend(found.into_iter().flatten());
    }
    Ok(report)
}
