//! Interchangeable ways of computing the length-d part of a conjugated
//! differential, selected by name.
//!
//! Every engine answers the same question: given a polynomial `x` and a
//! left-to-right list of augmentations `segments = (s_0, …, s_d)`, return the
//! sum of the d-letter words obtained from `x` by keeping d letters and
//! evaluating the gaps, where the gap before the first kept letter is
//! evaluated with `s_0`, the next gap with `s_1`, …, and the gap after the
//! last kept letter with `s_d`. For `d = 0` this is the constant `s_0(x)`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::algebra::{Field, GenId, Poly, Word};
use crate::augment::Augmentation;
use crate::error::{Error, Result};
use crate::ncopy::NCopyEngine;

pub trait ComponentEngine: Send + Sync {
    fn name(&self) -> &'static str;

    /// Length-d component, `d = segments.len() - 1`.
    fn component(&self, x: &Poly, segments: &[&Augmentation]) -> Result<Poly>;
}

impl fmt::Debug for dyn ComponentEngine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ComponentEngine({})", self.name())
    }
}

pub(crate) fn check_segments(x: &Poly, segments: &[&Augmentation]) -> Result<()> {
    let Some(first) = segments.first() else {
        return Err(Error::Arity("at least one augmentation is required".into()));
    };
    for s in segments {
        if s.field() != x.field() {
            return Err(Error::FieldMismatch(x.field().p(), s.field().p()));
        }
        if s.len() != first.len() {
            return Err(Error::AlgebraMismatch(
                "augmentations belong to different algebras".into(),
            ));
        }
    }
    if let Some(bad) = x.letters().find(|&l| l >= first.len()) {
        return Err(Error::GeneratorOutOfRange(bad));
    }
    Ok(())
}

/// Explicit choice of increasing position tuples in every word.
#[derive(Clone, Copy, Debug, Default)]
pub struct DirectEngine;

impl DirectEngine {
    #[allow(clippy::too_many_arguments)]
    fn walk(
        field: Field,
        letters: &[GenId],
        segments: &[&Augmentation],
        start: usize,
        k: usize,
        weight: u32,
        kept: &mut Vec<GenId>,
        out: &mut BTreeMap<Word, u32>,
    ) {
        let d = segments.len() - 1;
        let seg = segments[k];
        if k == d {
            let w = field.mul(weight, seg.evaluate_letters(&letters[start..]));
            if w != 0 {
                let e = out.entry(Word::new(kept.clone())).or_insert(0);
                *e = field.add(*e, w);
            }
            return;
        }
        let mut prefix = 1 % field.p();
        for j in start..=letters.len() - (d - k) {
            if prefix == 0 {
                break;
            }
            kept.push(letters[j]);
            Self::walk(
                field,
                letters,
                segments,
                j + 1,
                k + 1,
                field.mul(weight, prefix),
                kept,
                out,
            );
            kept.pop();
            prefix = field.mul(prefix, seg.value(letters[j]));
        }
    }
}

impl ComponentEngine for DirectEngine {
    fn name(&self) -> &'static str {
        "direct"
    }

    fn component(&self, x: &Poly, segments: &[&Augmentation]) -> Result<Poly> {
        check_segments(x, segments)?;
        let field = x.field();
        let d = segments.len() - 1;
        let mut out = BTreeMap::new();
        let mut kept = Vec::with_capacity(d);
        for (w, c) in x.terms() {
            if w.len() < d {
                continue;
            }
            Self::walk(field, w.letters(), segments, 0, 0, c, &mut kept, &mut out);
        }
        Ok(Poly::from_terms(field, out))
    }
}

/// Engines by name. `direct` is the default.
#[derive(Clone, Debug)]
pub struct EngineRegistry {
    engines: BTreeMap<&'static str, Arc<dyn ComponentEngine>>,
}

pub const DEFAULT_ENGINE: &str = "direct";

impl EngineRegistry {
    pub fn empty() -> EngineRegistry {
        EngineRegistry {
            engines: BTreeMap::new(),
        }
    }

    pub fn register(&mut self, engine: Arc<dyn ComponentEngine>) {
        self.engines.insert(engine.name(), engine);
    }

    pub fn get(&self, name: &str) -> Result<Arc<dyn ComponentEngine>> {
        self.engines.get(name).cloned().ok_or_else(|| {
            Error::Invalid(format!(
                "unknown engine `{name}` (available: {})",
                self.names().join(", ")
            ))
        })
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.engines.keys().copied().collect()
    }
}

impl Default for EngineRegistry {
    fn default() -> Self {
        let mut r = EngineRegistry::empty();
        r.register(Arc::new(DirectEngine));
        r.register(Arc::new(NCopyEngine));
        r
    }
}

pub fn default_engine() -> Arc<dyn ComponentEngine> {
    Arc::new(DirectEngine)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Dga;
    use crate::format::{parse_dga, parse_poly};

    fn trefoil() -> Dga {
        parse_dga(
            "gen a1 1\ngen a2 1\ngen b1 0\ngen b2 0\ngen b3 0\n\
             diff a1 = 1 + b1 + b3 + b1 b2 b3\ndiff a2 = 1 + b1 + b3 + b3 b2 b1\n",
        )
        .unwrap()
    }

    fn aug(t: &Dga, v: &[u32]) -> Augmentation {
        Augmentation::from_degree_zero(t, v).unwrap()
    }

    #[test]
    fn bilinear_examples() {
        let t = trefoil();
        // rows ε₁ = (1,1,1) and ε₂ = (1,0,0) of the trefoil table
        let (e1, e2) = (aug(&t, &[1, 1, 1]), aug(&t, &[1, 0, 0]));
        let d = DirectEngine
            .component(t.differential(0), &[&e1, &e2])
            .unwrap();
        assert_eq!(t.poly_to_string(&d), "b1");
        let d = DirectEngine
            .component(t.differential(0), &[&e2, &e2])
            .unwrap();
        assert_eq!(t.poly_to_string(&d), "b1 + b3");
    }

    #[test]
    fn top_component_is_the_long_word() {
        let t = trefoil();
        let e = aug(&t, &[1, 1, 1]);
        let d = DirectEngine.component(t.differential(0), &[&e; 4]).unwrap();
        assert_eq!(t.poly_to_string(&d), "b1 b2 b3");
        assert!(DirectEngine
            .component(t.differential(0), &[&e; 5])
            .unwrap()
            .is_zero());
    }

    #[test]
    fn zero_augmentations_kill_long_words() {
        let d = parse_dga("gen a 1\ngen b 0\ngen c 0\ndiff a = b c\n").unwrap();
        let z = Augmentation::zero(&d);
        assert!(DirectEngine
            .component(d.differential(0), &[&z, &z])
            .unwrap()
            .is_zero());
    }

    #[test]
    fn constant_part() {
        let d = parse_dga("gen a 1\ngen b 0\ndiff a = 1 + b\n").unwrap();
        let e = Augmentation::from_degree_zero(&d, &[1]).unwrap();
        let x = parse_poly(&d, "1 + b").unwrap();
        assert!(DirectEngine.component(&x, &[&e]).unwrap().is_zero());
        assert_eq!(
            d.poly_to_string(&DirectEngine.component(&x, &[&e, &e]).unwrap()),
            "b"
        );
    }

    #[test]
    fn registry_lookup() {
        let r = EngineRegistry::default();
        assert_eq!(r.names(), vec!["direct", "ncopy"]);
        assert_eq!(r.get("ncopy").unwrap().name(), "ncopy");
        assert!(r.get("nope").is_err());
    }
}
