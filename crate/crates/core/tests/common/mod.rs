#![allow(dead_code)]

use std::sync::Arc;

use augcat::algebra::GenId;
use augcat::format::parse_dga;
use augcat::{Dga, DgaMorphism, Poly, Word};

/// Free pairs `∂Bi = Ci` plus a loose degree-zero generator; the field
/// line is prepended by [`tame_base_over`].
pub const TAME_BASE: &str = "\
    gen B1 2\ngen C1 1\ngen B2 1\ngen C2 0\ngen B3 0\ngen C3 -1\ngen B4 1\ngen C4 0\ngen z 0\n\
    diff B1 = C1\ndiff B2 = C2\ndiff B3 = C3\ndiff B4 = C4\n";

pub fn tame_base() -> Arc<Dga> {
    tame_base_over(3)
}

pub fn tame_base_over(p: u32) -> Arc<Dga> {
    Arc::new(parse_dga(&format!("field {p}\n{TAME_BASE}")).unwrap())
}

/// Words of length 2..=3 with total grading `k` not containing `g`.
pub fn candidate_words(dga: &Dga, g: GenId, k: i32) -> Vec<Vec<GenId>> {
    let n = dga.len();
    let mut out = Vec::new();
    let mut stack: Vec<Vec<GenId>> = (0..n).filter(|&a| a != g).map(|a| vec![a]).collect();
    while let Some(w) = stack.pop() {
        if w.len() >= 2 && w.iter().map(|&a| dga.grading(a)).sum::<i32>() == k {
            out.push(w.clone());
        }
        if w.len() < 3 {
            for a in (0..n).filter(|&a| a != g) {
                let mut v = w.clone();
                v.push(a);
                stack.push(v);
            }
        }
    }
    out.sort();
    out
}

/// One elementary step `g ↦ g + c·w` as `(g, w, c)`, chosen by indices.
pub fn elementary(dga: &Dga, gen: usize, word: usize, c: u32) -> Option<(GenId, Vec<GenId>, u32)> {
    let g = gen % dga.len();
    let words = candidate_words(dga, g, dga.grading(g));
    if words.is_empty() {
        return None;
    }
    Some((
        g,
        words[word % words.len()].clone(),
        1 + c % (dga.field().p() - 1),
    ))
}

fn step_map(dga: &Arc<Dga>, (g, w, c): &(GenId, Vec<GenId>, u32), inverse: bool) -> DgaMorphism {
    let f = dga.field();
    let mut images: Vec<Poly> = (0..dga.len()).map(|a| Poly::generator(f, a)).collect();
    let coeff = if inverse { f.neg(*c) } else { *c };
    images[*g].add_term(Word::new(w.clone()), coeff);
    DgaMorphism::new(dga.clone(), dga.clone(), images).unwrap()
}

/// Conjugates the differential of `base` by the composite `φ` of the given
/// elementary automorphisms. Returns the new algebra and `φ` as a DGA map
/// from `base` to it.
pub fn tame_change(base: &Arc<Dga>, steps: &[(GenId, Vec<GenId>, u32)]) -> (Arc<Dga>, DgaMorphism) {
    let mut phi = DgaMorphism::identity(base.clone());
    let mut phi_inv = DgaMorphism::identity(base.clone());
    for s in steps {
        phi = DgaMorphism::compose(&step_map(base, s, false), &phi).unwrap();
        phi_inv = DgaMorphism::compose(&phi_inv, &step_map(base, s, true)).unwrap();
    }
    let diff: Vec<Poly> = (0..base.len())
        .map(|g| {
            let back = phi_inv.image(g);
            phi.apply(&base.apply_differential(back).unwrap()).unwrap()
        })
        .collect();
    let changed = Arc::new(Dga::new(base.field(), base.generators().to_vec(), diff).unwrap());
    let map = DgaMorphism::new(base.clone(), changed.clone(), phi.images().to_vec()).unwrap();
    (changed, map)
}
