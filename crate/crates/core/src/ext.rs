//! Ext groups between simples, chain-map lifts, Yoneda products and presentations of the Ext algebra.
//!
//! A class `x` in `Ext^n(S, T)` is an arrow `T -> S` of the Ext quiver, so that
//! the Yoneda product `x*y` (with `y` in `Ext^m(L, S)`) is the composable path `x y`.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{EchelonBasis, Matrix, Solver};
use crate::module::{FreeModule, ModuleMap};
use crate::quiver::{Element, MonomialOrder, OrderKind, Quiver, Word};
use crate::resolution::{minimal_resolution, Resolution};
use crate::rewrite::{RewriteRule, RewriteSystem};

/// A class in `Ext^degree(source, target)`, given by its values on the `P_target`
/// summands of term `degree` of the resolution of `source`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ExtClass {
    pub source: usize,
    pub target: usize,
    pub degree: usize,
    pub vector: Vec<u32>,
}

impl ExtClass {
    pub fn is_zero(&self) -> bool {
        self.vector.iter().all(|&x| x == 0)
    }
}

/// How to pick a solution of each commuting-square system.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LiftChoice {
    /// The lexicographically smallest solution.
    LexMin,
    /// The smallest solution plus a random kernel vector drawn from a seeded generator.
    Seeded(u64),
}

/// Components `f_m: Q^source_{m+degree} -> Q^target_m`.
#[derive(Debug, Clone)]
pub struct ChainMap {
    pub source: usize,
    pub target: usize,
    pub degree: usize,
    pub components: Vec<ModuleMap>,
}

/// Solvers for `d^s_m z = b` keyed by `(s, m, u)`, with the coordinates `z` may use.
type SolverCache = HashMap<(usize, usize, usize), Arc<(Vec<usize>, Solver)>>;

/// Resolutions of all simples plus cached linear solvers for lifting.
pub struct ExtContext<'a> {
    alg: &'a Algebra,
    resolutions: Vec<Resolution>,
    solvers: Mutex<SolverCache>,
}

impl<'a> ExtContext<'a> {
    /// Minimal resolutions of every simple to `max_degree`.
    pub fn minimal(alg: &'a Algebra, max_degree: usize) -> Result<Self> {
        let resolutions = (0..alg.vertex_count()).map(|v| minimal_resolution(alg, v, max_degree)).collect::<Result<_>>()?;
        Ok(Self::with_resolutions(alg, resolutions))
    }

    /// Uses the given resolutions, one per simple in vertex order.
    pub fn with_resolutions(alg: &'a Algebra, resolutions: Vec<Resolution>) -> Self {
        ExtContext { alg, resolutions, solvers: Mutex::new(HashMap::new()) }
    }

    pub fn algebra(&self) -> &Algebra {
        self.alg
    }

    pub fn resolution(&self, s: usize) -> &Resolution {
        &self.resolutions[s]
    }

    pub fn resolutions(&self) -> &[Resolution] {
        &self.resolutions
    }

    /// Degree up to which every resolution is known.
    pub fn bound(&self) -> usize {
        self.resolutions.iter().map(|r| if r.is_finite() { usize::MAX } else { r.top() }).min().unwrap_or(0)
    }

    pub fn ext_dim(&self, s: usize, t: usize, n: usize) -> Result<usize> {
        self.resolutions[s].ext_dim(t, n)
    }

    /// Basis class number `i` of `Ext^n(s, t)`.
    pub fn basis_class(&self, s: usize, t: usize, n: usize, i: usize) -> Result<ExtClass> {
        let dim = self.ext_dim(s, t, n)?;
        if i >= dim {
            return Err(Error::DimensionMismatch { expected: dim, got: i + 1 });
        }
        let mut vector = vec![0; dim];
        vector[i] = 1;
        Ok(ExtClass { source: s, target: t, degree: n, vector })
    }

    pub fn identity(&self, s: usize) -> ExtClass {
        ExtClass { source: s, target: s, degree: 0, vector: vec![1] }
    }

    pub fn zero_class(&self, s: usize, t: usize, n: usize) -> Result<ExtClass> {
        Ok(ExtClass { source: s, target: t, degree: n, vector: vec![0; self.ext_dim(s, t, n)?] })
    }

    fn check_class(&self, x: &ExtClass) -> Result<()> {
        let dim = self.ext_dim(x.source, x.target, x.degree)?;
        if x.vector.len() != dim {
            return Err(Error::DimensionMismatch { expected: dim, got: x.vector.len() });
        }
        Ok(())
    }

    /// Evaluates the cocycle of `x` on a vector of `Q^{x.source}_{x.degree}`.
    fn evaluate(&self, x: &ExtClass, v: &[u32]) -> Result<u32> {
        let f = self.alg.field();
        let term = self.resolutions[x.source].term(x.degree)?;
        let mut acc = 0;
        let mut k = 0;
        for (i, &u) in term.summands().iter().enumerate() {
            if u == x.target {
                acc = f.add(acc, f.mul(x.vector[k], v[term.offset(i)]));
                k += 1;
            }
        }
        Ok(acc)
    }

    /// Cached solver for `d^s_m z = b` with `z` supported on words ending at `u`.
    fn solver(&self, s: usize, m: usize, u: usize) -> Result<Arc<(Vec<usize>, Solver)>> {
        if let Some(x) = self.solvers.lock().expect("solver cache").get(&(s, m, u)) {
            return Ok(Arc::clone(x));
        }
        let res = &self.resolutions[s];
        let term = res.term(m)?;
        let d = res.differential(m).ok_or(Error::DegreeOutOfRange { degree: m, bound: res.top() })?;
        let mut support = Vec::new();
        for i in 0..term.rank() {
            let v = term.summands()[i];
            for (k, w) in self.alg.pim_basis(v).iter().enumerate() {
                if w.target() == u {
                    support.push(term.offset(i) + k);
                }
            }
        }
        let cols: Vec<Vec<u32>> = support.iter().map(|&c| d.matrix().column(c)).collect();
        let a = Matrix::from_columns(self.alg.field(), d.matrix().rows(), &cols);
        let entry = Arc::new((support, Solver::new(&a)));
        self.solvers.lock().expect("solver cache").insert((s, m, u), Arc::clone(&entry));
        Ok(entry)
    }

    /// Lifts `y` in `Ext^k(L, S)` to a chain map `Q^L_{*+k} -> Q^S_*` with components `0..=depth`.
    pub fn lift(&self, y: &ExtClass, depth: usize, choice: LiftChoice) -> Result<ChainMap> {
        self.check_class(y)?;
        let alg = self.alg;
        let f = alg.field();
        let (l, s, k) = (y.source, y.target, y.degree);
        let rl = &self.resolutions[l];
        let rs = &self.resolutions[s];
        let mut rng = match choice {
            LiftChoice::LexMin => None,
            LiftChoice::Seeded(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
        };
        let mut components: Vec<ModuleMap> = Vec::with_capacity(depth + 1);
        for m in 0..=depth {
            let dom = rl.term(m + k)?;
            let cod = rs.term(m)?;
            let mut images = Vec::with_capacity(dom.rank());
            if m == 0 {
                let mut idx = 0;
                for &u in dom.summands() {
                    let mut img = vec![0; cod.dim()];
                    if u == s {
                        img[0] = y.vector[idx];
                        idx += 1;
                    }
                    images.push(img);
                }
            } else if cod.rank() == 0 || dom.rank() == 0 {
                images = vec![vec![0; cod.dim()]; dom.rank()];
            } else {
                let prev = &components[m - 1];
                let dl = rl.differential(m + k).ok_or(Error::DegreeOutOfRange { degree: m + k, bound: rl.top() })?;
                for (j, &u) in dom.summands().iter().enumerate() {
                    let rhs = prev.matrix().mul_vec(&dl.images()[j]);
                    let entry = self.solver(s, m, u)?;
                    let (support, solver) = (&entry.0, &entry.1);
                    let mut z = solver.solve(&rhs).ok_or_else(|| Error::Inconsistent(format!("lifting system unsolvable at degree {m}, generator {j}")))?;
                    if let Some(rng) = rng.as_mut() {
                        for basis in solver.kernel().rows() {
                            let c = rng.gen_range(0..f.characteristic());
                            crate::linalg::axpy(f, &mut z, c, basis);
                        }
                    }
                    let mut img = vec![0; cod.dim()];
                    for (&pos, &val) in support.iter().zip(&z) {
                        img[pos] = val;
                    }
                    images.push(img);
                }
            }
            components.push(ModuleMap::from_images(alg, dom, cod, images)?);
        }
        Ok(ChainMap { source: l, target: s, degree: k, components })
    }

    /// Whether `d^S_m f_m = f_{m-1} d^L_{m+k}` for all components and `f_0` induces `y`.
    pub fn verify_chain_map(&self, y: &ExtClass, map: &ChainMap) -> Result<bool> {
        let rl = &self.resolutions[map.source];
        let rs = &self.resolutions[map.target];
        for m in 1..map.components.len() {
            let (Some(ds), Some(dl)) = (rs.differential(m), rl.differential(m + map.degree)) else {
                continue;
            };
            let lhs = ds.matrix().mul(map.components[m].matrix());
            let rhs = map.components[m - 1].matrix().mul(dl.matrix());
            if lhs != rhs {
                return Ok(false);
            }
        }
        let f0 = &map.components[0];
        let induced: Vec<u32> = f0.domain().summands().iter().enumerate().filter(|(_, &u)| u == map.target).map(|(j, _)| f0.images()[j][0]).collect();
        Ok(induced == y.vector)
    }

    /// Yoneda product `x*y` for `x` in `Ext^r(S, T)` and `y` in `Ext^s(L, S)`.
    pub fn yoneda(&self, x: &ExtClass, y: &ExtClass) -> Result<ExtClass> {
        self.yoneda_with(x, y, LiftChoice::LexMin)
    }

    pub fn yoneda_with(&self, x: &ExtClass, y: &ExtClass, choice: LiftChoice) -> Result<ExtClass> {
        if x.source != y.target {
            let q = self.alg.quiver();
            return Err(Error::Composition { first_target: q.vertex_label(x.source).to_string(), second_source: q.vertex_label(y.target).to_string() });
        }
        self.check_class(x)?;
        let lift = self.lift(y, x.degree, choice)?;
        self.compose_with_lift(x, &lift)
    }

    /// The class `x*y` given a lift of `y` reaching at least degree `x.degree`.
    pub fn compose_with_lift(&self, x: &ExtClass, lift: &ChainMap) -> Result<ExtClass> {
        let comp = lift.components.get(x.degree).ok_or(Error::DegreeOutOfRange { degree: x.degree, bound: lift.components.len() })?;
        let n = x.degree + lift.degree;
        let dom = self.resolutions[lift.source].term(n)?;
        let mut vector = Vec::new();
        for (j, &u) in dom.summands().iter().enumerate() {
            if u == x.target {
                vector.push(self.evaluate(x, &comp.images()[j])?);
            }
        }
        Ok(ExtClass { source: lift.source, target: x.target, degree: n, vector })
    }
}

/// A named Ext generator.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Generator {
    pub name: String,
    pub class: ExtClass,
}

/// Degree by degree, a basis of `Ext^n(S, T)` modulo products of lower-degree classes.
///
/// Representatives are unit vectors, taken in summand order.
pub fn minimal_generators(ctx: &ExtContext, max_degree: usize) -> Result<Vec<ExtClass>> {
    let nv = ctx.algebra().vertex_count();
    let f = ctx.algebra().field();
    let mut gens: Vec<ExtClass> = Vec::new();
    let mut lifts: Vec<ChainMap> = Vec::new();
    for n in 1..=max_degree {
        let mut found = Vec::new();
        for s in 0..nv {
            for t in 0..nv {
                let dim = ctx.ext_dim(s, t, n)?;
                if dim == 0 {
                    continue;
                }
                let mut span = EchelonBasis::new(f, dim);
                for (h, lift) in gens.iter().zip(&lifts) {
                    if h.source != s || h.degree >= n {
                        continue;
                    }
                    let m = n - h.degree;
                    for i in 0..ctx.ext_dim(h.target, t, m)? {
                        let z = ctx.basis_class(h.target, t, m, i)?;
                        span.insert(ctx.compose_with_lift(&z, lift)?.vector);
                    }
                }
                for i in 0..dim {
                    let mut e = vec![0; dim];
                    e[i] = 1;
                    if span.insert(e.clone()) {
                        found.push(ExtClass { source: s, target: t, degree: n, vector: e });
                    }
                }
            }
        }
        for g in found {
            let depth = max_degree - n;
            lifts.push(ctx.lift(&g, depth, LiftChoice::LexMin)?);
            gens.push(g);
        }
    }
    Ok(gens)
}

/// Evaluates path words in Ext generators as Yoneda products.
pub struct WordEvaluator<'c, 'a> {
    ctx: &'c ExtContext<'a>,
    quiver: Quiver,
    gens: Vec<ExtClass>,
    lifts: Vec<ChainMap>,
    memo: Mutex<HashMap<Word, ExtClass>>,
}

impl<'c, 'a> WordEvaluator<'c, 'a> {
    /// `quiver` must be the Ext quiver of `gens` (see [`ext_quiver`]); words up to total degree `max_degree`.
    pub fn new(ctx: &'c ExtContext<'a>, quiver: Quiver, gens: Vec<ExtClass>, max_degree: usize) -> Result<Self> {
        let mut lifts = Vec::with_capacity(gens.len());
        for g in &gens {
            lifts.push(ctx.lift(g, max_degree.saturating_sub(g.degree), LiftChoice::LexMin)?);
        }
        Ok(WordEvaluator { ctx, quiver, gens, lifts, memo: Mutex::new(HashMap::new()) })
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn generators(&self) -> &[ExtClass] {
        &self.gens
    }

    /// Class of a path word `g_1 g_2 ... g_k`, in `Ext(end of the path, start of the path)`.
    pub fn class(&self, w: &Word) -> Result<ExtClass> {
        if let Some(c) = self.memo.lock().expect("memo").get(w) {
            return Ok(c.clone());
        }
        let c = if w.is_empty() {
            self.ctx.identity(w.source())
        } else {
            let n = w.len();
            let prefix = word_prefix(&self.quiver, w, n - 1);
            let h = w.arrows()[n - 1] as usize;
            let z = self.class(&prefix)?;
            self.ctx.compose_with_lift(&z, &self.lifts[h])?
        };
        self.memo.lock().expect("memo").insert(w.clone(), c.clone());
        Ok(c)
    }

    /// Class of a linear combination of words with common endpoints.
    pub fn class_of(&self, x: &Element, source: usize, target: usize, degree: usize) -> Result<ExtClass> {
        let f = self.ctx.algebra().field();
        let mut out = self.ctx.zero_class(source, target, degree)?;
        for (w, c) in x.terms() {
            let k = self.class(w)?;
            if k.source != source || k.target != target || k.degree != degree {
                return Err(Error::ModuleMismatch("term of the wrong signature".into()));
            }
            crate::linalg::axpy(f, &mut out.vector, c, &k.vector);
        }
        Ok(out)
    }
}

fn word_prefix(q: &Quiver, w: &Word, len: usize) -> Word {
    if len == 0 {
        Word::vertex(w.source())
    } else {
        let arrows: Vec<usize> = w.arrows()[..len].iter().map(|&a| a as usize).collect();
        Word::from_arrows(q, &arrows).expect("prefix of a path is a path")
    }
}

/// The Ext quiver: one vertex per simple and an arrow `T -> S` of degree `n` for each generator in `Ext^n(S, T)`.
pub fn ext_quiver(alg: &Algebra, names: &[String], gens: &[ExtClass]) -> Result<Quiver> {
    let q = alg.quiver();
    let arrows =
        names.iter().zip(gens).map(|(name, g)| (name.clone(), q.vertex_label(g.target).to_string(), q.vertex_label(g.source).to_string(), g.degree as u32));
    Quiver::new(q.vertices().iter().cloned(), arrows)
}

/// A graded-quiver presentation of the Ext algebra.
#[derive(Debug, Clone)]
pub struct ExtPresentation {
    pub generators: Vec<Generator>,
    pub system: RewriteSystem,
}

impl ExtPresentation {
    pub fn quiver(&self) -> &Quiver {
        self.system.quiver()
    }

    pub fn relations(&self) -> &[RewriteRule] {
        self.system.rules()
    }

    pub fn format_relations(&self) -> Vec<String> {
        self.relations().iter().map(|r| r.format(self.quiver())).collect()
    }
}

/// The reduced Gröbner basis of the relation ideal among `gens`, computed degree by degree up to `max_degree`.
///
/// `ascending` lists generator names from least to most significant.
pub fn find_relations(ctx: &ExtContext, names: &[String], gens: &[ExtClass], ascending: &[&str], max_degree: usize) -> Result<ExtPresentation> {
    let alg = ctx.algebra();
    let f = alg.field();
    let quiver = ext_quiver(alg, names, gens)?;
    let order = MonomialOrder::new(OrderKind::DegreeLlex, &quiver, ascending)?;
    let eval = WordEvaluator::new(ctx, quiver.clone(), gens.to_vec(), max_degree)?;
    let nv = alg.vertex_count();
    let mut rules: Vec<RewriteRule> = Vec::new();
    for n in 1..=max_degree as u32 {
        let sys = RewriteSystem::new(quiver.clone(), f, order.clone(), rules.clone())?;
        let std = sys.standard_monomials_to_degree(n);
        for start in 0..nv {
            for end in 0..nv {
                let mut words: Vec<&Word> = std.between(start, end).iter().filter(|w| w.degree(&quiver) == n).collect();
                if words.is_empty() {
                    continue;
                }
                words.sort_by(|a, b| order.cmp_words(b, a));
                let (s, t) = (end, start);
                let dim = ctx.ext_dim(s, t, n as usize)?;
                let cols: Vec<Vec<u32>> = words.iter().map(|w| eval.class(w).map(|c| c.vector)).collect::<Result<_>>()?;
                let m = Matrix::from_columns(f, dim, &cols);
                let kernel = EchelonBasis::from_vectors(f, words.len(), m.kernel());
                for (row, &p) in kernel.rows().iter().zip(kernel.pivots()) {
                    let mut rhs = Element::zero(f);
                    for (k, &c) in row.iter().enumerate() {
                        if k != p && c != 0 {
                            rhs = rhs.add(&Element::monomial(f, words[k].clone(), f.neg(c)))?;
                        }
                    }
                    rules.push(RewriteRule::new(&order, words[p].clone(), rhs)?);
                }
            }
        }
    }
    let system = RewriteSystem::new(quiver, f, order, rules)?;
    let generators = names.iter().zip(gens).map(|(n, g)| Generator { name: n.clone(), class: g.clone() }).collect();
    Ok(ExtPresentation { generators, system })
}

/// Checks each relation of a presentation by evaluating both sides as Yoneda products.
pub fn relations_hold(ctx: &ExtContext, pres: &ExtPresentation) -> Result<Vec<bool>> {
    let max = pres.relations().iter().map(|r| r.lhs.degree(pres.quiver()) as usize).max().unwrap_or(0);
    let gens: Vec<ExtClass> = pres.generators.iter().map(|g| g.class.clone()).collect();
    let eval = WordEvaluator::new(ctx, pres.quiver().clone(), gens, max)?;
    let f = ctx.algebra().field();
    pres.relations()
        .iter()
        .map(|r| {
            let w = &r.lhs;
            let x = r.as_element(f);
            let c = eval.class_of(&x, w.target(), w.source(), w.degree(pres.quiver()) as usize)?;
            Ok(c.is_zero())
        })
        .collect()
}

/// `dim Ext^n(S, -)` for `n = 0..=bound`.
pub fn hilbert_from_resolution(res: &Resolution, bound: usize) -> Result<Vec<usize>> {
    res.summand_counts(bound)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Grouping {
    /// All classes in `Ext(S, -)`, i.e. words ending at `S`.
    Source(usize),
    /// Classes in `Ext(S, T)`.
    Pair(usize, usize),
}

/// Standard-monomial counts per degree of a presentation.
pub fn hilbert_from_presentation(system: &RewriteSystem, grouping: Grouping, bound: usize, groebner_bound: Option<u32>) -> Result<Vec<usize>> {
    if !system.is_groebner(groebner_bound)? {
        return Err(Error::Invalid("relations are not a Gröbner basis up to the checked degree".into()));
    }
    let q = system.quiver();
    let std = system.standard_monomials_to_degree(bound as u32);
    let mut out = vec![0; bound + 1];
    for w in std.iter() {
        let keep = match grouping {
            Grouping::Source(s) => w.target() == s,
            Grouping::Pair(s, t) => w.target() == s && w.source() == t,
        };
        if keep {
            out[w.degree(q) as usize] += 1;
        }
    }
    Ok(out)
}

/// Dimension of the span of `classes`.
pub fn span_dim(field: Field, dim: usize, classes: impl IntoIterator<Item = Vec<u32>>) -> usize {
    EchelonBasis::from_vectors(field, dim, classes).len()
}

/// `Q^S_n` with its `P_T` summand positions.
pub fn target_summands(term: &FreeModule, t: usize) -> Vec<usize> {
    term.summands().iter().enumerate().filter(|(_, &u)| u == t).map(|(i, _)| i).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testing::truncated;

    #[test]
    fn dual_numbers_give_a_polynomial_ring() {
        let alg = truncated(3, 2);
        let ctx = ExtContext::minimal(&alg, 6).unwrap();
        let gens = minimal_generators(&ctx, 6).unwrap();
        assert_eq!(gens.len(), 1);
        assert_eq!(gens[0].degree, 1);
        let mut p = gens[0].clone();
        for _ in 0..5 {
            p = ctx.yoneda(&gens[0], &p).unwrap();
            assert!(!p.is_zero());
        }
        assert_eq!(p.degree, 6);
    }

    #[test]
    fn truncated_cube_has_exterior_and_polynomial_parts() {
        let alg = truncated(2, 3);
        let ctx = ExtContext::minimal(&alg, 6).unwrap();
        let gens = minimal_generators(&ctx, 6).unwrap();
        assert_eq!(gens.iter().map(|g| g.degree).collect::<Vec<_>>(), vec![1, 2]);
        let names = vec!["u".to_string(), "w".to_string()];
        let pres = find_relations(&ctx, &names, &gens, &["u", "w"], 6).unwrap();
        assert_eq!(pres.format_relations(), vec!["u^2 = 0", "w*u = u*w"]);
        assert!(relations_hold(&ctx, &pres).unwrap().iter().all(|&b| b));
        let h = hilbert_from_presentation(&pres.system, Grouping::Source(0), 6, None).unwrap();
        assert_eq!(h, vec![1; 7]);
    }

    #[test]
    fn lifts_are_chain_maps() {
        let alg = truncated(2, 3);
        let ctx = ExtContext::minimal(&alg, 6).unwrap();
        let y = ctx.basis_class(0, 0, 1, 0).unwrap();
        for choice in [LiftChoice::LexMin, LiftChoice::Seeded(7)] {
            let lift = ctx.lift(&y, 4, choice).unwrap();
            assert!(ctx.verify_chain_map(&y, &lift).unwrap());
        }
    }

    #[test]
    fn mismatched_classes_are_rejected() {
        let alg = crate::m11::algebra().unwrap();
        let ctx = ExtContext::minimal(&alg, 3).unwrap();
        let q = alg.quiver();
        let (k, m) = (q.vertex("K").unwrap(), q.vertex("M").unwrap());
        let x = ctx.zero_class(m, m, 1).unwrap();
        let y = ctx.identity(k);
        assert!(matches!(ctx.yoneda(&x, &y), Err(Error::Composition { .. })));
        assert!(ctx.basis_class(m, m, 1, 5).is_err());
    }
}
