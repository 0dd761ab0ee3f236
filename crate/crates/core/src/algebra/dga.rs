use std::collections::HashMap;
use std::fmt;

use serde::Serialize;

use super::field::Field;
use super::poly::{GenId, Poly, Word};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Generator {
    name: String,
    grading: i32,
}

impl Generator {
    pub fn new(name: impl Into<String>, grading: i32) -> Result<Generator> {
        let name = name.into();
        if !is_valid_name(&name) {
            return Err(Error::InvalidName(name));
        }
        Ok(Generator { name, grading })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// Reduced grading `gr`.
    pub fn grading(&self) -> i32 {
        self.grading
    }

    /// Absolute grading `|a| = gr(a) + 1` of the dual generator.
    pub fn absolute_grading(&self) -> i32 {
        self.grading + 1
    }
}

pub fn is_valid_name(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '\'')
}

/// A semi-free DGA over F_p: generators in declaration order and the
/// differential on each generator.
#[derive(Clone, Debug)]
pub struct Dga {
    field: Field,
    gens: Vec<Generator>,
    diff: Vec<Poly>,
    index: HashMap<String, GenId>,
}

impl PartialEq for Dga {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.gens == other.gens && self.diff == other.diff
    }
}

impl Eq for Dga {}

/// One entry of a validation report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    /// A word of `∂(generator)` has the wrong reduced grading.
    NonHomogeneous {
        generator: String,
        word: String,
        expected: i32,
        found: i32,
    },
    /// `∂(∂(generator))` is nonzero.
    SquareNonZero { generator: String, residual: String },
    /// A morphism image contains a word of the wrong grading.
    GradingNotPreserved {
        generator: String,
        word: String,
        expected: i32,
        found: i32,
    },
    /// `f(∂a) - ∂(f(a))` is nonzero.
    NotChainMap { generator: String, residual: String },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NonHomogeneous {
                generator,
                word,
                expected,
                found,
            } => write!(
                f,
                "d({generator}) contains `{word}` of grading {found}, expected {expected}"
            ),
            Violation::SquareNonZero {
                generator,
                residual,
            } => write!(f, "d(d({generator})) = {residual}"),
            Violation::GradingNotPreserved {
                generator,
                word,
                expected,
                found,
            } => write!(
                f,
                "f({generator}) contains `{word}` of grading {found}, expected {expected}"
            ),
            Violation::NotChainMap {
                generator,
                residual,
            } => write!(f, "f(d({generator})) - d(f({generator})) = {residual}"),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_empty(&self) -> bool {
        self.violations.is_empty()
    }
}

impl Dga {
    pub fn new(field: Field, gens: Vec<Generator>, diff: Vec<Poly>) -> Result<Dga> {
        if gens.len() != diff.len() {
            return Err(Error::Invalid(format!(
                "{} generators but {} differentials",
                gens.len(),
                diff.len()
            )));
        }
        let mut index = HashMap::with_capacity(gens.len());
        for (i, g) in gens.iter().enumerate() {
            if index.insert(g.name.clone(), i).is_some() {
                return Err(Error::DuplicateGenerator(g.name.clone()));
            }
        }
        for d in &diff {
            if d.field() != field {
                return Err(Error::FieldMismatch(field.p(), d.field().p()));
            }
            if let Some(bad) = d.letters().find(|&l| l >= gens.len()) {
                return Err(Error::GeneratorOutOfRange(bad));
            }
        }
        Ok(Dga {
            field,
            gens,
            diff,
            index,
        })
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn generators(&self) -> &[Generator] {
        &self.gens
    }

    pub fn generator(&self, g: GenId) -> &Generator {
        &self.gens[g]
    }

    pub fn name(&self, g: GenId) -> &str {
        &self.gens[g].name
    }

    pub fn grading(&self, g: GenId) -> i32 {
        self.gens[g].grading
    }

    pub fn find(&self, name: &str) -> Option<GenId> {
        self.index.get(name).copied()
    }

    pub fn lookup(&self, name: &str) -> Result<GenId> {
        self.find(name)
            .ok_or_else(|| Error::UnknownGenerator(name.to_string()))
    }

    pub fn differential(&self, g: GenId) -> &Poly {
        &self.diff[g]
    }

    pub fn differentials(&self) -> &[Poly] {
        &self.diff
    }

    pub fn word_grading(&self, w: &Word) -> i32 {
        w.letters().iter().map(|&l| self.gens[l].grading).sum()
    }

    /// Generators of reduced grading 0, in declaration order.
    pub fn degree_zero(&self) -> Vec<GenId> {
        (0..self.len()).filter(|&g| self.grading(g) == 0).collect()
    }

    pub fn check_poly(&self, x: &Poly) -> Result<()> {
        if x.field() != self.field {
            return Err(Error::FieldMismatch(self.field.p(), x.field().p()));
        }
        match x.letters().find(|&l| l >= self.len()) {
            Some(bad) => Err(Error::GeneratorOutOfRange(bad)),
            None => Ok(()),
        }
    }

    /// Extends the differential by linearity and the signed Leibniz rule
    /// `∂(ab) = ∂(a)b + (-1)^{gr(a)} a∂(b)`.
    pub fn apply_differential(&self, x: &Poly) -> Result<Poly> {
        self.check_poly(x)?;
        let f = self.field;
        let mut out = Poly::zero(f);
        for (w, c) in x.terms() {
            let letters = w.letters();
            let mut prefix_grading = 0i64;
            for (pos, &l) in letters.iter().enumerate() {
                let coeff = f.mul(c, f.sign(prefix_grading));
                for (dw, dc) in self.diff[l].terms() {
                    let mut v = Vec::with_capacity(letters.len() - 1 + dw.len());
                    v.extend_from_slice(&letters[..pos]);
                    v.extend_from_slice(dw.letters());
                    v.extend_from_slice(&letters[pos + 1..]);
                    out.add_term(Word::new(v), f.mul(coeff, dc));
                }
                prefix_grading += self.gens[l].grading as i64;
            }
        }
        Ok(out)
    }

    /// Checks degree -1 homogeneity and `∂∂ = 0` on every generator.
    pub fn validate(&self) -> ValidationReport {
        let mut violations = Vec::new();
        for g in 0..self.len() {
            let expected = self.grading(g) - 1;
            for (w, _) in self.diff[g].terms() {
                let found = self.word_grading(w);
                if found != expected {
                    violations.push(Violation::NonHomogeneous {
                        generator: self.name(g).to_string(),
                        word: self.word_to_string(w),
                        expected,
                        found,
                    });
                }
            }
        }
        for g in 0..self.len() {
            let dd = self
                .apply_differential(&self.diff[g])
                .expect("differential letters are checked on construction");
            if !dd.is_zero() {
                violations.push(Violation::SquareNonZero {
                    generator: self.name(g).to_string(),
                    residual: self.poly_to_string(&dd),
                });
            }
        }
        ValidationReport { violations }
    }

    /// Adds generators `b` (grading `k`) and `c` (grading `k - 1`) with `∂b = c`.
    pub fn stabilize(&self, k: i32, name_b: &str, name_c: &str) -> Result<Dga> {
        if name_b == name_c {
            return Err(Error::NameCollision(name_c.to_string()));
        }
        for n in [name_b, name_c] {
            if self.find(n).is_some() {
                return Err(Error::NameCollision(n.to_string()));
            }
        }
        let mut gens = self.gens.clone();
        let mut diff = self.diff.clone();
        let b = gens.len();
        gens.push(Generator::new(name_b, k)?);
        gens.push(Generator::new(name_c, k - 1)?);
        diff.push(Poly::generator(self.field, b + 1));
        diff.push(Poly::zero(self.field));
        Dga::new(self.field, gens, diff)
    }

    /// A pair of names not yet used, of the form `s{n}b`, `s{n}c`.
    pub fn fresh_stabilization_names(&self) -> (String, String) {
        (1..)
            .map(|n| (format!("s{n}b"), format!("s{n}c")))
            .find(|(b, c)| self.find(b).is_none() && self.find(c).is_none())
            .expect("unbounded search")
    }

    pub fn word_to_string(&self, w: &Word) -> String {
        if w.is_empty() {
            return "1".to_string();
        }
        w.letters()
            .iter()
            .map(|&l| self.name(l))
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// Prints in the `.dga` term syntax, `0` for the zero polynomial.
    pub fn poly_to_string(&self, x: &Poly) -> String {
        if x.is_zero() {
            return "0".to_string();
        }
        x.terms()
            .map(|(w, c)| match (c, w.is_empty()) {
                (1, _) => self.word_to_string(w),
                (c, true) => c.to_string(),
                (c, false) => format!("{c} {}", self.word_to_string(w)),
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dga(p: u64, gens: &[(&str, i32)], diffs: Vec<Vec<(u32, Vec<usize>)>>) -> Dga {
        let f = Field::new(p).unwrap();
        let gens = gens
            .iter()
            .map(|&(n, g)| Generator::new(n, g).unwrap())
            .collect();
        let diffs = diffs
            .into_iter()
            .map(|ts| Poly::from_terms(f, ts.into_iter().map(|(c, w)| (Word::new(w), c))))
            .collect();
        Dga::new(f, gens, diffs).unwrap()
    }

    #[test]
    fn leibniz_on_square() {
        // p=2, ∂a = 1 + b, ∂b = 0: ∂(aa) = (1+b)a + a(1+b)
        let d = dga(
            2,
            &[("a", 1), ("b", 0)],
            vec![vec![(1, vec![]), (1, vec![1])], vec![]],
        );
        let f = d.field();
        let aa = Poly::monomial(f, Word::new(vec![0, 0]), 1);
        let got = d.apply_differential(&aa).unwrap();
        let one_b = Poly::from_terms(f, [(Word::unit(), 1), (Word::letter(1), 1)]);
        let a = Poly::generator(f, 0);
        let expected = &(&one_b * &a) + &(&a * &one_b);
        assert_eq!(got, expected);
        // brute-force bilinear extension: expand (1+b)a + a(1+b) term by term
        let brute = Poly::from_terms(
            f,
            [
                (Word::new(vec![0]), 1),
                (Word::new(vec![1, 0]), 1),
                (Word::new(vec![0]), 1),
                (Word::new(vec![0, 1]), 1),
            ],
        );
        assert_eq!(got, brute);
        assert_eq!(d.poly_to_string(&got), "a b + b a");
    }

    #[test]
    fn odd_sign_in_leibniz() {
        // p=3, gr(x)=1, ∂x = y: ∂(x x) = y x - x y
        let d = dga(3, &[("x", 1), ("y", 0)], vec![vec![(1, vec![1])], vec![]]);
        let f = d.field();
        let got = d
            .apply_differential(&Poly::monomial(f, Word::new(vec![0, 0]), 1))
            .unwrap();
        assert_eq!(got.coeff(&Word::new(vec![1, 0])), 1);
        assert_eq!(got.coeff(&Word::new(vec![0, 1])), 2);
    }

    #[test]
    fn unit_has_zero_differential() {
        let d = dga(2, &[("a", 1)], vec![vec![(1, vec![])]]);
        assert!(d
            .apply_differential(&Poly::one(d.field()))
            .unwrap()
            .is_zero());
    }

    #[test]
    fn unknown_letter_is_rejected() {
        let d = dga(2, &[("a", 1)], vec![vec![(1, vec![])]]);
        let bad = Poly::generator(d.field(), 3);
        assert_eq!(
            d.apply_differential(&bad),
            Err(Error::GeneratorOutOfRange(3))
        );
    }

    #[test]
    fn homogeneity_violation() {
        let d = dga(2, &[("a", 1), ("b", 1)], vec![vec![(1, vec![1])], vec![]]);
        let report = d.validate();
        assert_eq!(
            report.violations,
            vec![Violation::NonHomogeneous {
                generator: "a".into(),
                word: "b".into(),
                expected: 0,
                found: 1
            }]
        );
    }

    #[test]
    fn square_violation() {
        let d = dga(
            2,
            &[("a", 2), ("b", 1), ("c", 0)],
            vec![vec![(1, vec![1])], vec![(1, vec![2])], vec![]],
        );
        let report = d.validate();
        assert_eq!(
            report.violations,
            vec![Violation::SquareNonZero {
                generator: "a".into(),
                residual: "c".into()
            }]
        );
    }

    #[test]
    fn stabilization() {
        let one_chord = dga(2, &[("a", 1)], vec![vec![(1, vec![])]]);
        let s = one_chord.stabilize(0, "b", "c").unwrap();
        assert_eq!(s.len(), 3);
        assert_eq!(s.differential(1), &Poly::generator(s.field(), 2));
        assert_eq!(s.grading(2), -1);
        assert!(s.validate().is_empty());
        let s2 = s.stabilize(3, "b2", "c2").unwrap();
        assert_eq!(s2.len(), 5);
        assert_eq!(
            one_chord.stabilize(0, "a", "c"),
            Err(Error::NameCollision("a".into()))
        );
    }

    #[test]
    fn fresh_names_avoid_existing() {
        let d = dga(2, &[("s1b", 1)], vec![vec![(1, vec![])]]);
        assert_eq!(
            d.fresh_stabilization_names(),
            ("s2b".to_string(), "s2c".to_string())
        );
    }

    #[test]
    fn name_rules() {
        assert!(is_valid_name("a1"));
        assert!(is_valid_name("b_2'"));
        assert!(!is_valid_name("1"));
        assert!(!is_valid_name(""));
        assert!(!is_valid_name("a-b"));
    }
}
