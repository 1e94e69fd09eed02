//! Finitely generated projective modules and maps between them.
//!
//! Matrices use rows for codomain summands and columns for domain summands.
//! The entry routing `P_u` (a domain summand) to `P_v` (a codomain summand)
//! is an element from `v` to `u`, acting by `w -> x*w`.

use serde::{Deserialize, Serialize};

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::linalg::{self, EchelonBasis, Matrix};
use crate::quiver::Element;

/// A direct sum of projective indecomposables `P_{v_1} + ... + P_{v_k}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FreeModule {
    summands: Vec<usize>,
    offsets: Vec<usize>,
    dim: usize,
    bidegrees: Option<Vec<(i64, i64)>>,
}

impl FreeModule {
    pub fn new(alg: &Algebra, summands: Vec<usize>) -> Self {
        let mut offsets = Vec::with_capacity(summands.len());
        let mut dim = 0;
        for &v in &summands {
            offsets.push(dim);
            dim += alg.pim_dim(v);
        }
        FreeModule { summands, offsets, dim, bidegrees: None }
    }

    pub fn zero() -> Self {
        FreeModule { summands: Vec::new(), offsets: Vec::new(), dim: 0, bidegrees: None }
    }

    /// Attaches a `(horizontal, vertical)` label to each summand.
    pub fn with_bidegrees(mut self, labels: Vec<(i64, i64)>) -> Result<Self> {
        if labels.len() != self.summands.len() {
            return Err(Error::DimensionMismatch { expected: self.summands.len(), got: labels.len() });
        }
        self.bidegrees = Some(labels);
        Ok(self)
    }

    pub fn summands(&self) -> &[usize] {
        &self.summands
    }

    pub fn bidegrees(&self) -> Option<&[(i64, i64)]> {
        self.bidegrees.as_deref()
    }

    pub fn rank(&self) -> usize {
        self.summands.len()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn offset(&self, i: usize) -> usize {
        self.offsets[i]
    }

    pub fn range(&self, alg: &Algebra, i: usize) -> std::ops::Range<usize> {
        self.offsets[i]..self.offsets[i] + alg.pim_dim(self.summands[i])
    }

    /// Number of summands isomorphic to `P_v`.
    pub fn multiplicity(&self, v: usize) -> usize {
        self.summands.iter().filter(|&&u| u == v).count()
    }

    pub fn same_shape(&self, other: &FreeModule) -> bool {
        self.summands == other.summands
    }

    /// `x * a` for a module vector `x` and an arrow `a`.
    pub fn right_arrow(&self, alg: &Algebra, x: &[u32], a: usize) -> Vec<u32> {
        let mut out = vec![0; self.dim];
        for (i, &v) in self.summands.iter().enumerate() {
            let r = self.range(alg, i);
            let y = alg.right_arrow(v, &x[r.clone()], a);
            out[r].copy_from_slice(&y);
        }
        out
    }

    /// `x * 1_u`.
    pub fn right_idempotent(&self, alg: &Algebra, x: &[u32], u: usize) -> Vec<u32> {
        let mut out = vec![0; self.dim];
        for (i, &v) in self.summands.iter().enumerate() {
            let r = self.range(alg, i);
            let y = alg.right_idempotent(v, &x[r.clone()], u);
            out[r].copy_from_slice(&y);
        }
        out
    }

    /// The generator `1_{v_i}` of summand `i`.
    pub fn generator(&self, i: usize) -> Vec<u32> {
        let mut x = vec![0; self.dim];
        x[self.offsets[i]] = 1;
        x
    }

    /// Components of a vector as elements, one per summand.
    pub fn components(&self, alg: &Algebra, x: &[u32]) -> Vec<Element> {
        (0..self.rank()).map(|i| alg.element(self.summands[i], &x[self.range(alg, i)])).collect()
    }
}

/// The projective indecomposable `P_v`.
pub fn pim(alg: &Algebra, v: usize) -> FreeModule {
    FreeModule::new(alg, vec![v])
}

/// A homomorphism of right modules, determined by the images of the summand generators.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ModuleMap {
    domain: FreeModule,
    codomain: FreeModule,
    images: Vec<Vec<u32>>,
    matrix: Matrix,
}

impl ModuleMap {
    /// `images[j]` is the image of the generator of domain summand `j`, a vector of the codomain.
    pub fn from_images(alg: &Algebra, domain: FreeModule, codomain: FreeModule, images: Vec<Vec<u32>>) -> Result<Self> {
        if images.len() != domain.rank() {
            return Err(Error::DimensionMismatch { expected: domain.rank(), got: images.len() });
        }
        let f = alg.field();
        let mut matrix = Matrix::zeros(f, codomain.dim(), domain.dim());
        for (j, img) in images.iter().enumerate() {
            if img.len() != codomain.dim() {
                return Err(Error::DimensionMismatch { expected: codomain.dim(), got: img.len() });
            }
            let u = domain.summands[j];
            if codomain.right_idempotent(alg, img, u) != *img {
                return Err(Error::ModuleMismatch(format!("image of generator {j} has components not ending at {}", alg.quiver().vertex_label(u))));
            }
            let off = domain.offsets[j];
            for (k, w) in alg.pim_basis(u).iter().enumerate() {
                let col = if w.is_empty() { img.clone() } else { right_word_module(alg, &codomain, img, w) };
                for (r, &c) in col.iter().enumerate() {
                    if c != 0 {
                        matrix.set(r, off + k, c);
                    }
                }
            }
        }
        Ok(ModuleMap { domain, codomain, images, matrix })
    }

    /// `entries[i][j]` routes domain summand `j` to codomain summand `i`.
    pub fn from_entries(alg: &Algebra, domain: FreeModule, codomain: FreeModule, entries: &[Vec<Element>]) -> Result<Self> {
        if entries.len() != codomain.rank() {
            return Err(Error::DimensionMismatch { expected: codomain.rank(), got: entries.len() });
        }
        let mut images = vec![vec![0; codomain.dim()]; domain.rank()];
        for (i, row) in entries.iter().enumerate() {
            if row.len() != domain.rank() {
                return Err(Error::DimensionMismatch { expected: domain.rank(), got: row.len() });
            }
            let v = codomain.summands[i];
            for (j, x) in row.iter().enumerate() {
                let u = domain.summands[j];
                if let Some((s, t)) = x.endpoints() {
                    if s != v || t != u {
                        let q = alg.quiver();
                        return Err(Error::ModuleMismatch(format!(
                            "entry ({i},{j}) should run from {} to {}, found {} to {}",
                            q.vertex_label(v),
                            q.vertex_label(u),
                            q.vertex_label(s),
                            q.vertex_label(t)
                        )));
                    }
                }
                let c = alg.coords(v, x)?;
                images[j][codomain.range(alg, i)].copy_from_slice(&c);
            }
        }
        Self::from_images(alg, domain, codomain, images)
    }

    pub fn zero(alg: &Algebra, domain: FreeModule, codomain: FreeModule) -> Self {
        let images = vec![vec![0; codomain.dim()]; domain.rank()];
        Self::from_images(alg, domain, codomain, images).expect("zero map is well formed")
    }

    pub fn identity(alg: &Algebra, m: FreeModule) -> Self {
        let images = (0..m.rank()).map(|i| m.generator(i)).collect();
        Self::from_images(alg, m.clone(), m, images).expect("identity map is well formed")
    }

    pub fn domain(&self) -> &FreeModule {
        &self.domain
    }

    pub fn codomain(&self) -> &FreeModule {
        &self.codomain
    }

    pub fn images(&self) -> &[Vec<u32>] {
        &self.images
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn to_matrix(&self) -> Matrix {
        self.matrix.clone()
    }

    pub fn apply(&self, x: &[u32]) -> Result<Vec<u32>> {
        if x.len() != self.domain.dim() {
            return Err(Error::DimensionMismatch { expected: self.domain.dim(), got: x.len() });
        }
        Ok(self.matrix.mul_vec(x))
    }

    /// Entry `(i, j)` as an element.
    pub fn entry(&self, alg: &Algebra, i: usize, j: usize) -> Element {
        let r = self.codomain.range(alg, i);
        alg.element(self.codomain.summands[i], &self.images[j][r])
    }

    pub fn entries(&self, alg: &Algebra) -> Vec<Vec<Element>> {
        (0..self.codomain.rank()).map(|i| (0..self.domain.rank()).map(|j| self.entry(alg, i, j)).collect()).collect()
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    /// Whether no entry has an idempotent component.
    pub fn is_zero_mod_radical(&self, alg: &Algebra) -> bool {
        for (j, img) in self.images.iter().enumerate() {
            let u = self.domain.summands[j];
            for (i, &v) in self.codomain.summands.iter().enumerate() {
                if v == u && img[self.codomain.offsets[i]] != 0 {
                    return false;
                }
            }
        }
        let _ = alg;
        true
    }

    /// `self ∘ g`: apply `g` first.
    pub fn compose(&self, alg: &Algebra, g: &ModuleMap) -> Result<ModuleMap> {
        if g.codomain != self.domain {
            return Err(Error::ModuleMismatch("codomain of the first map differs from domain of the second".into()));
        }
        let images = g.images.iter().map(|x| self.matrix.mul_vec(x)).collect();
        ModuleMap::from_images(alg, g.domain.clone(), self.codomain.clone(), images)
    }

    pub fn add(&self, alg: &Algebra, other: &ModuleMap) -> Result<ModuleMap> {
        if self.domain != other.domain || self.codomain != other.codomain {
            return Err(Error::ModuleMismatch("maps with different shapes".into()));
        }
        let f = alg.field();
        let images = self.images.iter().zip(&other.images).map(|(a, b)| a.iter().zip(b).map(|(&x, &y)| f.add(x, y)).collect()).collect();
        ModuleMap::from_images(alg, self.domain.clone(), self.codomain.clone(), images)
    }

    /// Same map with bidegree labels dropped or replaced on both modules.
    pub fn relabel(&self, domain: FreeModule, codomain: FreeModule) -> Result<ModuleMap> {
        if !domain.same_shape(&self.domain) || !codomain.same_shape(&self.codomain) {
            return Err(Error::ModuleMismatch("relabel must keep the summands".into()));
        }
        Ok(ModuleMap { domain, codomain, images: self.images.clone(), matrix: self.matrix.clone() })
    }

    pub fn format_entries(&self, alg: &Algebra) -> Vec<Vec<String>> {
        let q = alg.quiver();
        self.entries(alg).iter().map(|row| row.iter().map(|x| q.format_element(x)).collect()).collect()
    }
}

/// `x * w` for a module vector.
pub fn right_word_module(alg: &Algebra, m: &FreeModule, x: &[u32], w: &crate::quiver::Word) -> Vec<u32> {
    if w.is_empty() {
        return m.right_idempotent(alg, x, w.source());
    }
    let mut cur = x.to_vec();
    for &a in w.arrows() {
        cur = m.right_arrow(alg, &cur, a as usize);
    }
    cur
}

/// `f ∘ g`.
pub fn compose_maps(alg: &Algebra, f: &ModuleMap, g: &ModuleMap) -> Result<ModuleMap> {
    f.compose(alg, g)
}

/// A linear map between the underlying vector spaces of two modules.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearMap {
    pub domain: FreeModule,
    pub codomain: FreeModule,
    pub matrix: Matrix,
}

impl LinearMap {
    pub fn new(domain: FreeModule, codomain: FreeModule, matrix: Matrix) -> Result<Self> {
        if matrix.rows() != codomain.dim() || matrix.cols() != domain.dim() {
            return Err(Error::DimensionMismatch { expected: codomain.dim() * domain.dim(), got: matrix.rows() * matrix.cols() });
        }
        Ok(LinearMap { domain, codomain, matrix })
    }

    pub fn zero(alg: &Algebra, domain: FreeModule, codomain: FreeModule) -> Self {
        let matrix = Matrix::zeros(alg.field(), codomain.dim(), domain.dim());
        LinearMap { domain, codomain, matrix }
    }
}

/// A submodule of a free module: a subspace closed under the right action.
#[derive(Debug, Clone)]
pub struct Submodule {
    pub space: EchelonBasis,
    /// Minimal generators, each supported on words ending at `vertices[i]`.
    pub generators: Vec<Vec<u32>>,
    pub vertices: Vec<usize>,
}

/// Kernel of a module map, with minimal right-module generators.
pub fn kernel(alg: &Algebra, map: &ModuleMap) -> Submodule {
    let f = alg.field();
    let space = EchelonBasis::from_vectors(f, map.domain().dim(), map.matrix().kernel());
    submodule(alg, map.domain(), space)
}

/// Minimal generators of the submodule spanned by `space` (assumed closed under the action).
///
/// For each vertex `v`, generators are a canonical complement of `K*rad*1_v` in `K*1_v`:
/// the reduced echelon basis of `K*1_v` reduced modulo `K*rad*1_v`.
pub fn submodule(alg: &Algebra, m: &FreeModule, space: EchelonBasis) -> Submodule {
    let f = alg.field();
    let q = alg.quiver();
    let mut generators = Vec::new();
    let mut vertices = Vec::new();
    for v in 0..alg.vertex_count() {
        let kv = EchelonBasis::from_vectors(f, m.dim(), space.rows().iter().map(|k| m.right_idempotent(alg, k, v)));
        if kv.is_empty() {
            continue;
        }
        let mut kr = EchelonBasis::new(f, m.dim());
        for k in space.rows() {
            for a in 0..q.arrows().len() {
                if q.arrows()[a].target == v {
                    let y = m.right_arrow(alg, k, a);
                    if !linalg::is_zero(&y) {
                        kr.insert(y);
                    }
                }
            }
        }
        let reduced = EchelonBasis::from_vectors(f, m.dim(), kv.rows().iter().map(|k| kr.reduce(k)));
        for g in reduced.into_rows() {
            generators.push(g);
            vertices.push(v);
        }
    }
    Submodule { space, generators, vertices }
}

/// The radical of a free module: span of all non-idempotent basis words.
pub fn radical(alg: &Algebra, m: &FreeModule) -> EchelonBasis {
    let f = alg.field();
    let mut b = EchelonBasis::new(f, m.dim());
    for i in 0..m.rank() {
        let r = m.range(alg, i);
        for k in r.start + 1..r.end {
            let mut x = vec![0; m.dim()];
            x[k] = 1;
            b.insert(x);
        }
    }
    b
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kernel_of_first_differential_for_n() {
        let alg = crate::m11::algebra().unwrap();
        let q = alg.quiver();
        let (k, n) = (q.vertex("K").unwrap(), q.vertex("N").unwrap());
        let f = alg.field();
        let map = ModuleMap::from_entries(
            &alg,
            FreeModule::new(&alg, vec![k, n]),
            FreeModule::new(&alg, vec![n]),
            &[vec![q.parse_element(f, "e").unwrap(), q.parse_element(f, "f").unwrap()]],
        )
        .unwrap();
        assert_eq!(map.rank(), 7);
        let ker = kernel(&alg, &map);
        assert_eq!(ker.space.len(), 9);
        let mut tops = ker.vertices.clone();
        tops.sort();
        assert_eq!(tops, vec![k, n]);
    }

    #[test]
    fn composition_matches_path_products() {
        let alg = crate::m11::algebra().unwrap();
        let q = alg.quiver();
        let f = alg.field();
        let (k, m) = (q.vertex("K").unwrap(), q.vertex("M").unwrap());
        let b = ModuleMap::from_entries(&alg, pim(&alg, m), pim(&alg, k), &[vec![q.parse_element(f, "b").unwrap()]]).unwrap();
        let c = ModuleMap::from_entries(&alg, pim(&alg, k), pim(&alg, m), &[vec![q.parse_element(f, "c").unwrap()]]).unwrap();
        assert!(c.compose(&alg, &b).unwrap().matrix().is_zero());
        let bc = b.compose(&alg, &c).unwrap();
        assert_eq!(bc.format_entries(&alg), vec![vec!["b*c".to_string()]]);
        assert!(bc.is_zero_mod_radical(&alg));
    }

    #[test]
    fn entries_must_have_matching_endpoints() {
        let alg = crate::m11::algebra().unwrap();
        let q = alg.quiver();
        let (k, m) = (q.vertex("K").unwrap(), q.vertex("M").unwrap());
        let bad = ModuleMap::from_entries(&alg, pim(&alg, m), pim(&alg, k), &[vec![q.parse_element(alg.field(), "c").unwrap()]]);
        assert!(bad.is_err());
    }

    #[test]
    fn radical_has_codimension_rank() {
        let alg = crate::testing::truncated(2, 4);
        let m = FreeModule::new(&alg, vec![0, 0]);
        assert_eq!(radical(&alg, &m).len(), 6);
    }
}
