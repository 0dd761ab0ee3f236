use std::sync::Arc;

use super::dga::{Dga, ValidationReport, Violation};
use super::poly::{GenId, Poly};
use crate::error::{Error, Result};

/// An algebra map between semi-free DGAs, given by the image of each
/// source generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DgaMorphism {
    source: Arc<Dga>,
    target: Arc<Dga>,
    images: Vec<Poly>,
}

impl DgaMorphism {
    pub fn new(source: Arc<Dga>, target: Arc<Dga>, images: Vec<Poly>) -> Result<DgaMorphism> {
        if source.field() != target.field() {
            return Err(Error::FieldMismatch(source.field().p(), target.field().p()));
        }
        if images.len() != source.len() {
            return Err(Error::Arity(format!(
                "{} images for {} generators",
                images.len(),
                source.len()
            )));
        }
        for im in &images {
            target.check_poly(im)?;
        }
        Ok(DgaMorphism {
            source,
            target,
            images,
        })
    }

    pub fn identity(dga: Arc<Dga>) -> DgaMorphism {
        let f = dga.field();
        let images = (0..dga.len()).map(|g| Poly::generator(f, g)).collect();
        DgaMorphism {
            source: dga.clone(),
            target: dga,
            images,
        }
    }

    /// Sends every source generator to the target generator of the same name.
    pub fn inclusion(source: Arc<Dga>, target: Arc<Dga>) -> Result<DgaMorphism> {
        let f = target.field();
        let images = source
            .generators()
            .iter()
            .map(|g| target.lookup(g.name()).map(|t| Poly::generator(f, t)))
            .collect::<Result<Vec<_>>>()?;
        DgaMorphism::new(source, target, images)
    }

    /// Sends source generators that also exist in the target to themselves
    /// and all others to zero.
    pub fn projection(source: Arc<Dga>, target: Arc<Dga>) -> Result<DgaMorphism> {
        let f = target.field();
        let images = source
            .generators()
            .iter()
            .map(|g| match target.find(g.name()) {
                Some(t) => Poly::generator(f, t),
                None => Poly::zero(f),
            })
            .collect();
        DgaMorphism::new(source, target, images)
    }

    pub fn source(&self) -> &Arc<Dga> {
        &self.source
    }

    pub fn target(&self) -> &Arc<Dga> {
        &self.target
    }

    pub fn image(&self, g: GenId) -> &Poly {
        &self.images[g]
    }

    pub fn images(&self) -> &[Poly] {
        &self.images
    }

    /// Multiplicative extension of the generator images.
    pub fn apply(&self, x: &Poly) -> Result<Poly> {
        self.source.check_poly(x)?;
        let f = self.target.field();
        let mut out = Poly::zero(f);
        for (w, c) in x.terms() {
            let mut prod = Poly::constant(f, c);
            for &l in w.letters() {
                prod = &prod * &self.images[l];
                if prod.is_zero() {
                    break;
                }
            }
            out.add_scaled(&prod, 1);
        }
        Ok(out)
    }

    /// Grading preservation and `f∘∂ = ∂∘f` on generators.
    pub fn validate(&self) -> ValidationReport {
        let mut violations = Vec::new();
        for (g, im) in self.images.iter().enumerate() {
            let expected = self.source.grading(g);
            for (w, _) in im.terms() {
                let found = self.target.word_grading(w);
                if found != expected {
                    violations.push(Violation::GradingNotPreserved {
                        generator: self.source.name(g).to_string(),
                        word: self.target.word_to_string(w),
                        expected,
                        found,
                    });
                }
            }
        }
        for g in 0..self.source.len() {
            let lhs = self
                .apply(self.source.differential(g))
                .expect("source differential lies in the source");
            let rhs = self
                .target
                .apply_differential(&self.images[g])
                .expect("images are checked on construction");
            let residual = &lhs - &rhs;
            if !residual.is_zero() {
                violations.push(Violation::NotChainMap {
                    generator: self.source.name(g).to_string(),
                    residual: self.target.poly_to_string(&residual),
                });
            }
        }
        ValidationReport { violations }
    }

    /// `f ∘ g`: apply `g` first. Requires `g.target() == f.source()`.
    pub fn compose(f: &DgaMorphism, g: &DgaMorphism) -> Result<DgaMorphism> {
        if g.target != f.source {
            return Err(Error::AlgebraMismatch(
                "target of the inner map is not the source of the outer map".into(),
            ));
        }
        let images = g
            .images
            .iter()
            .map(|im| f.apply(im))
            .collect::<Result<Vec<_>>>()?;
        DgaMorphism::new(g.source.clone(), f.target.clone(), images)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::format::parse_dga;

    const TREFOIL: &str = "field 2\ngen a1 1\ngen a2 1\ngen b1 0\ngen b2 0\ngen b3 0\n\
        diff a1 = 1 + b1 + b3 + b1 b2 b3\ndiff a2 = 1 + b1 + b3 + b3 b2 b1\n";

    fn trefoil() -> Arc<Dga> {
        Arc::new(parse_dga(TREFOIL).unwrap())
    }

    #[test]
    fn identity_is_valid() {
        let t = trefoil();
        assert!(DgaMorphism::identity(t).validate().is_empty());
    }

    #[test]
    fn stabilization_maps_are_morphisms() {
        let t = trefoil();
        let s = Arc::new(t.stabilize(0, "b", "c").unwrap());
        let i = DgaMorphism::inclusion(t.clone(), s.clone()).unwrap();
        let j = DgaMorphism::projection(s.clone(), t.clone()).unwrap();
        assert!(i.validate().is_empty());
        assert!(j.validate().is_empty());
        let ji = DgaMorphism::compose(&j, &i).unwrap();
        assert_eq!(ji, DgaMorphism::identity(t.clone()));
        let id = DgaMorphism::identity(s.clone());
        assert_eq!(
            DgaMorphism::compose(&i, &DgaMorphism::identity(t)).unwrap(),
            i
        );
        assert_eq!(DgaMorphism::compose(&id, &i).unwrap(), i);
    }

    #[test]
    fn double_stabilization_inclusions_compose() {
        let t = trefoil();
        let s1 = Arc::new(t.stabilize(0, "b", "c").unwrap());
        let s2 = Arc::new(s1.stabilize(2, "u", "v").unwrap());
        let i1 = DgaMorphism::inclusion(t.clone(), s1.clone()).unwrap();
        let i2 = DgaMorphism::inclusion(s1, s2.clone()).unwrap();
        let direct = DgaMorphism::inclusion(t, s2).unwrap();
        let composed = DgaMorphism::compose(&i2, &i1).unwrap();
        assert_eq!(composed, direct);
        assert!(composed.validate().is_empty());
    }

    #[test]
    fn mismatched_composition() {
        let t = trefoil();
        let s = Arc::new(t.stabilize(0, "b", "c").unwrap());
        let i = DgaMorphism::inclusion(t.clone(), s).unwrap();
        assert!(matches!(
            DgaMorphism::compose(&i, &i),
            Err(Error::AlgebraMismatch(_))
        ));
    }

    #[test]
    fn broken_chain_map_is_reported() {
        let t = trefoil();
        let f = t.field();
        let mut images: Vec<Poly> = (0..t.len()).map(|g| Poly::generator(f, g)).collect();
        images[2] = Poly::zero(f); // b1 -> 0
        let m = DgaMorphism::new(t.clone(), t, images).unwrap();
        let report = m.validate();
        assert!(report
            .violations
            .iter()
            .any(|v| matches!(v, Violation::NotChainMap { generator, .. } if generator == "a1")));
    }
}
