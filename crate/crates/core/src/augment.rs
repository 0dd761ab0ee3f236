//! Augmentations: algebra maps to F_p vanishing off degree 0 and on the image of ∂.

use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{Dga, DgaMorphism, Field, GenId, Poly, Scalar, Word};
use crate::error::{Error, Result};

/// Largest search space `p^k` that [`enumerate_augmentations`] accepts.
pub const ENUMERATION_LIMIT: u128 = 1 << 24;

/// Values of an augmentation on every generator, in declaration order.
/// Augmentations compare by this tuple.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Augmentation {
    values: Vec<u32>,
    field: Field,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum AugmentationViolation {
    NonZeroOffDegreeZero { generator: String, value: u32 },
    DifferentialNotKilled { generator: String, value: u32 },
}

impl std::fmt::Display for AugmentationViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            AugmentationViolation::NonZeroOffDegreeZero { generator, value } => {
                write!(
                    f,
                    "ε({generator}) = {value} but {generator} is not in degree 0"
                )
            }
            AugmentationViolation::DifferentialNotKilled { generator, value } => {
                write!(f, "ε(∂{generator}) = {value}")
            }
        }
    }
}

impl Augmentation {
    /// Values for every generator, without checking the augmentation equations.
    pub fn new(dga: &Dga, values: Vec<u32>) -> Result<Augmentation> {
        if values.len() != dga.len() {
            return Err(Error::Arity(format!(
                "{} values for {} generators",
                values.len(),
                dga.len()
            )));
        }
        let field = dga.field();
        Ok(Augmentation {
            values: values.into_iter().map(|v| v % field.p()).collect(),
            field,
        })
    }

    /// Values on the degree-0 generators, in declaration order; zero elsewhere.
    pub fn from_degree_zero(dga: &Dga, values: &[u32]) -> Result<Augmentation> {
        let zeros = dga.degree_zero();
        if zeros.len() != values.len() {
            return Err(Error::Arity(format!(
                "{} values for {} degree-0 generators",
                values.len(),
                zeros.len()
            )));
        }
        let mut all = vec![0; dga.len()];
        for (&g, &v) in zeros.iter().zip(values) {
            all[g] = v;
        }
        Augmentation::new(dga, all)
    }

    pub fn zero(dga: &Dga) -> Augmentation {
        Augmentation {
            values: vec![0; dga.len()],
            field: dga.field(),
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn value(&self, g: GenId) -> u32 {
        self.values[g]
    }

    pub fn values(&self) -> &[u32] {
        &self.values
    }

    pub fn degree_zero_values(&self, dga: &Dga) -> Vec<u32> {
        dga.degree_zero()
            .into_iter()
            .map(|g| self.values[g])
            .collect()
    }

    pub fn check_dga(&self, dga: &Dga) -> Result<()> {
        if dga.len() != self.values.len() || dga.field() != self.field {
            return Err(Error::AlgebraMismatch(
                "augmentation belongs to a different algebra".into(),
            ));
        }
        Ok(())
    }

    /// Product of the values of the letters; 1 on the unit word.
    pub fn evaluate_letters(&self, letters: &[GenId]) -> u32 {
        let f = self.field;
        let mut acc = 1 % f.p();
        for &l in letters {
            acc = f.mul(acc, self.values[l]);
            if acc == 0 {
                break;
            }
        }
        acc
    }

    pub fn evaluate_word(&self, w: &Word) -> u32 {
        self.evaluate_letters(w.letters())
    }

    /// Multiplicative, linear extension to polynomials.
    pub fn evaluate(&self, x: &Poly) -> Result<Scalar> {
        if x.field() != self.field {
            return Err(Error::FieldMismatch(self.field.p(), x.field().p()));
        }
        if let Some(bad) = x.letters().find(|&l| l >= self.values.len()) {
            return Err(Error::GeneratorOutOfRange(bad));
        }
        let f = self.field;
        let v = x
            .terms()
            .fold(0, |acc, (w, c)| f.add(acc, f.mul(c, self.evaluate_word(w))));
        Ok(Scalar::new(f, v))
    }
}

/// `None` when `eps` is an augmentation of `dga`, otherwise the first
/// violated constraint in generator order.
pub fn first_violation(dga: &Dga, eps: &Augmentation) -> Result<Option<AugmentationViolation>> {
    eps.check_dga(dga)?;
    for g in 0..dga.len() {
        if dga.grading(g) != 0 && eps.value(g) != 0 {
            return Ok(Some(AugmentationViolation::NonZeroOffDegreeZero {
                generator: dga.name(g).to_string(),
                value: eps.value(g),
            }));
        }
    }
    for g in 0..dga.len() {
        let v = eps.evaluate(dga.differential(g))?;
        if !v.is_zero() {
            return Ok(Some(AugmentationViolation::DifferentialNotKilled {
                generator: dga.name(g).to_string(),
                value: v.value(),
            }));
        }
    }
    Ok(None)
}

pub fn is_augmentation(dga: &Dga, eps: &Augmentation) -> bool {
    matches!(first_violation(dga, eps), Ok(None))
}

fn search_space(p: u32, k: usize) -> Option<u128> {
    (p as u128).checked_pow(k as u32)
}

/// All augmentations, by exhaustive search over the degree-0 values, sorted
/// lexicographically by the value tuple in declaration order. Positions in
/// this list are the augmentation indices used throughout.
pub fn enumerate_augmentations(dga: &Dga) -> Result<Vec<Augmentation>> {
    let zeros = dga.degree_zero();
    let p = dga.field().p();
    let count = search_space(p, zeros.len())
        .filter(|&c| c <= ENUMERATION_LIMIT)
        .ok_or(Error::EnumerationTooLarge {
            count: search_space(p, zeros.len()).unwrap_or(u128::MAX),
            limit: ENUMERATION_LIMIT,
        })?;
    // differentials of degree-1 generators are the only ones that can
    // evaluate to something nonzero when ε vanishes off degree 0
    let constraints: Vec<&Poly> = (0..dga.len())
        .filter(|&g| dga.grading(g) == 1)
        .map(|g| dga.differential(g))
        .collect();
    let k = zeros.len();
    let found: Vec<Augmentation> = (0..count as u64)
        .into_par_iter()
        .filter_map(|code| {
            let mut values = vec![0u32; dga.len()];
            let mut rest = code;
            for slot in (0..k).rev() {
                values[zeros[slot]] = (rest % p as u64) as u32;
                rest /= p as u64;
            }
            let eps = Augmentation {
                values,
                field: dga.field(),
            };
            constraints
                .iter()
                .all(|d| eps.evaluate(d).map(|v| v.is_zero()).unwrap_or(false))
                .then_some(eps)
        })
        .collect();
    // the odometer already runs in lexicographic order
    debug_assert!(found.windows(2).all(|w| w[0] < w[1]));
    Ok(found)
}

/// `ε ∘ f`, an augmentation of the source of `f`.
pub fn pull_back(eps: &Augmentation, f: &DgaMorphism) -> Result<Augmentation> {
    eps.check_dga(f.target())?;
    let values = f
        .images()
        .iter()
        .map(|im| eps.evaluate(im).map(|s| s.value()))
        .collect::<Result<Vec<_>>>()?;
    Augmentation::new(f.source(), values)
}

/// Position of `eps` in an enumerated list.
pub fn index_of(augs: &[Augmentation], eps: &Augmentation) -> Option<usize> {
    augs.binary_search(eps).ok()
}
