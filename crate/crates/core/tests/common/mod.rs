//! Helpers shared by the integration tests.
#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use extalg::ext::ExtClass;
use extalg::field::Field;
use extalg::linalg::EchelonBasis;
use extalg::quiver::{Element, MonomialOrder, OrderKind, Quiver, Word};
use extalg::rewrite::RewriteSystem;

/// All paths with `len` arrows; vertex words when `len == 0`.
pub fn paths(q: &Quiver, len: usize) -> Vec<Word> {
    let mut out: Vec<Word> = (0..q.vertices().len()).map(Word::vertex).collect();
    for _ in 0..len {
        let mut next = Vec::new();
        for w in &out {
            let from = if w.is_empty() { w.source() } else { w.target() };
            for a in q.arrows_from(from) {
                next.push(w.compose(&q.arrow_word(a), q).unwrap());
            }
        }
        out = next;
    }
    out
}

pub fn between(q: &Quiver, len: usize, s: usize, t: usize) -> Vec<Word> {
    paths(q, len).into_iter().filter(|w| w.source() == s && w.target() == t).collect()
}

pub fn random_combination(rng: &mut ChaCha8Rng, f: Field, words: &[Word]) -> Element {
    let mut x = Element::zero(f);
    for w in words {
        let c = rng.gen_range(0..f.characteristic());
        x = x.add(&Element::monomial(f, w.clone(), c)).unwrap();
    }
    x
}

/// A random quiver with homogeneous quadratic relations plus every path of length `cut`.
pub struct RandomAlgebra {
    pub quiver: Quiver,
    pub field: Field,
    pub relations: Vec<Element>,
    pub cut: usize,
}

impl RandomAlgebra {
    pub fn generate(seed: u64) -> RandomAlgebra {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let nv = rng.gen_range(1..=2usize);
        let na = rng.gen_range(1..=3usize);
        let vertices: Vec<String> = (0..nv).map(|i| format!("V{i}")).collect();
        let arrows: Vec<(String, String, String, u32)> =
            (0..na).map(|i| (format!("x{i}"), vertices[rng.gen_range(0..nv)].clone(), vertices[rng.gen_range(0..nv)].clone(), 1)).collect();
        let quiver = Quiver::new(vertices, arrows).unwrap();
        let field = Field::new([2, 3][rng.gen_range(0..2)]).unwrap();
        let cut = rng.gen_range(2..=4usize);
        let mut relations: Vec<Element> = paths(&quiver, cut).into_iter().map(|w| Element::from_word(field, w)).collect();
        for _ in 0..rng.gen_range(0..=3) {
            let (s, t) = (rng.gen_range(0..nv), rng.gen_range(0..nv));
            let words = between(&quiver, 2, s, t);
            if !words.is_empty() {
                relations.push(random_combination(&mut rng, field, &words));
            }
        }
        RandomAlgebra { quiver, field, relations, cut }
    }

    pub fn system(&self) -> RewriteSystem {
        let names: Vec<&str> = self.quiver.arrows().iter().map(|a| a.label.as_str()).collect();
        let order = MonomialOrder::new(OrderKind::DegreeLlex, &self.quiver, &names).unwrap();
        RewriteSystem::from_relations(self.quiver.clone(), self.field, order, &self.relations).unwrap().complete(2 * self.cut as u32).unwrap()
    }

    /// Degree-`n` part of the ideal from `s` to `t`, spanned by all `u*r*v`, in coordinates over `words`.
    pub fn ideal_part(&self, words: &[Word], n: usize, s: usize, t: usize) -> EchelonBasis {
        let q = &self.quiver;
        let f = self.field;
        let mut span = EchelonBasis::new(f, words.len());
        for r in &self.relations {
            let Some((rs, rt)) = r.endpoints() else { continue };
            let k = r.terms().next().unwrap().0.len();
            if k > n {
                continue;
            }
            for i in 0..=n - k {
                for u in between(q, i, s, rs) {
                    for v in between(q, n - k - i, rt, t) {
                        let x = Element::from_word(f, u.clone()).mul(r).unwrap().mul(&Element::from_word(f, v.clone())).unwrap();
                        span.insert(coordinates(&x, words));
                    }
                }
            }
        }
        span
    }
}

pub fn coordinates(x: &Element, words: &[Word]) -> Vec<u32> {
    words.iter().map(|w| x.coefficient(w)).collect()
}

/// Composable triples `(x, y, z)` with `x*y*z` defined, of total degree at most `max`.
pub fn triples(gens: &[ExtClass], max: usize) -> Vec<(usize, usize, usize)> {
    let mut out = Vec::new();
    for (i, x) in gens.iter().enumerate() {
        for (j, y) in gens.iter().enumerate() {
            for (k, z) in gens.iter().enumerate() {
                if x.source == y.target && y.source == z.target && x.degree + y.degree + z.degree <= max {
                    out.push((i, j, k));
                }
            }
        }
    }
    out
}
