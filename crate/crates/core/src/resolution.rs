//! Minimal projective resolutions of simple modules, their verification,
//! bicomplex assembly and contracting homotopies.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::linalg::{EchelonBasis, Matrix};
use crate::module::{self, FreeModule, LinearMap, ModuleMap};
use crate::quiver::Element;

/// `terms[n]` is `Q_n`; `differentials[n - 1]` is `d_n: Q_n -> Q_{n-1}`.
#[derive(Debug, Clone)]
pub struct Resolution {
    simple: usize,
    terms: Vec<FreeModule>,
    differentials: Vec<ModuleMap>,
    /// Set when the construction found a zero term before reaching the requested degree.
    finite: bool,
}

impl Resolution {
    /// Assembles a resolution from explicit data; no exactness is checked here.
    pub fn from_parts(alg: &Algebra, simple: usize, terms: Vec<FreeModule>, differentials: Vec<ModuleMap>) -> Result<Self> {
        if terms.is_empty() || terms[0].summands() != [simple] {
            return Err(Error::ModuleMismatch("term 0 must be the projective cover of the simple".into()));
        }
        if differentials.len() + 1 != terms.len() {
            return Err(Error::DimensionMismatch { expected: terms.len() - 1, got: differentials.len() });
        }
        for (n, d) in differentials.iter().enumerate() {
            if !d.domain().same_shape(&terms[n + 1]) || !d.codomain().same_shape(&terms[n]) {
                return Err(Error::ModuleMismatch(format!("d_{} does not match the terms", n + 1)));
            }
        }
        let _ = alg;
        Ok(Resolution { simple, terms, differentials, finite: false })
    }

    pub fn simple(&self) -> usize {
        self.simple
    }

    /// Highest degree with a stored term.
    pub fn top(&self) -> usize {
        self.terms.len() - 1
    }

    pub fn is_finite(&self) -> bool {
        self.finite
    }

    /// `Q_n`; the zero module past the end of a finite resolution.
    pub fn term(&self, n: usize) -> Result<FreeModule> {
        match self.terms.get(n) {
            Some(t) => Ok(t.clone()),
            None if self.finite => Ok(FreeModule::zero()),
            None => Err(Error::DegreeOutOfRange { degree: n, bound: self.top() }),
        }
    }

    pub fn term_ref(&self, n: usize) -> Option<&FreeModule> {
        self.terms.get(n)
    }

    pub fn terms(&self) -> &[FreeModule] {
        &self.terms
    }

    /// `d_n` for `n >= 1`.
    pub fn differential(&self, n: usize) -> Option<&ModuleMap> {
        if n == 0 {
            return None;
        }
        self.differentials.get(n - 1)
    }

    pub fn differentials(&self) -> &[ModuleMap] {
        &self.differentials
    }

    /// Number of summands `P_t` in `Q_n`, i.e. `dim Ext^n(simple, t)`.
    pub fn ext_dim(&self, t: usize, n: usize) -> Result<usize> {
        Ok(self.term(n)?.multiplicity(t))
    }

    /// Summand counts of `Q_0 .. Q_bound`.
    pub fn summand_counts(&self, bound: usize) -> Result<Vec<usize>> {
        (0..=bound).map(|n| Ok(self.term(n)?.rank())).collect()
    }

    /// Truncation to degrees `0..=n`.
    pub fn truncate(&self, n: usize) -> Resolution {
        let k = (n + 1).min(self.terms.len());
        Resolution {
            simple: self.simple,
            terms: self.terms[..k].to_vec(),
            differentials: self.differentials[..k - 1].to_vec(),
            finite: self.finite && k == self.terms.len(),
        }
    }

    /// Same complex with `d_n` replaced.
    pub fn with_differential(&self, n: usize, d: ModuleMap) -> Result<Resolution> {
        let mut r = self.clone();
        let slot = r.differentials.get_mut(n.wrapping_sub(1)).ok_or(Error::DegreeOutOfRange { degree: n, bound: self.top() })?;
        if !d.domain().same_shape(slot.domain()) || !d.codomain().same_shape(slot.codomain()) {
            return Err(Error::ModuleMismatch("replacement differential has the wrong shape".into()));
        }
        *slot = d;
        Ok(r)
    }
}

/// Minimal projective resolution of the simple at `simple`, to degree `max_degree`.
pub fn minimal_resolution(alg: &Algebra, simple: usize, max_degree: usize) -> Result<Resolution> {
    if simple >= alg.vertex_count() {
        return Err(Error::UnknownVertex(simple.to_string()));
    }
    let p0 = module::pim(alg, simple);
    let mut terms = vec![p0.clone()];
    let mut differentials = Vec::new();
    let mut current = module::submodule(alg, &p0, module::radical(alg, &p0));
    for _ in 1..=max_degree {
        if current.generators.is_empty() {
            break;
        }
        let prev = terms.last().expect("nonempty").clone();
        let next = FreeModule::new(alg, current.vertices.clone());
        let d = ModuleMap::from_images(alg, next.clone(), prev, current.generators.clone())?;
        current = module::kernel(alg, &d);
        terms.push(next);
        differentials.push(d);
    }
    let finite = current.generators.is_empty();
    Ok(Resolution { simple, terms, differentials, finite })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeCheck {
    pub degree: usize,
    /// `d_{n-1} d_n = 0` (for `n = 1`: the image of `d_1` lies in the radical).
    pub complex: bool,
    /// `d_n` vanishes modulo the radical.
    pub minimal: bool,
    /// Homology vanishes at `Q_n`; `None` when `d_{n+1}` is not available.
    pub exact: Option<bool>,
}

impl DegreeCheck {
    pub fn ok(&self) -> bool {
        self.complex && self.minimal && self.exact != Some(false)
    }
}

/// Per-degree complex, minimality and exactness checks.
pub fn verify_resolution(alg: &Algebra, res: &Resolution) -> Vec<DegreeCheck> {
    let mut out = Vec::new();
    let ranks: Vec<usize> = res.differentials.iter().map(ModuleMap::rank).collect();
    for n in 0..=res.top() {
        let (complex, minimal) = if n == 0 {
            (true, true)
        } else {
            let d = &res.differentials[n - 1];
            let complex = if n == 1 {
                (0..d.matrix().cols()).all(|c| d.matrix().get(0, c) == 0)
            } else {
                let prev = &res.differentials[n - 2];
                prev.matrix().mul(d.matrix()).is_zero()
            };
            (complex, d.is_zero_mod_radical(alg))
        };
        let dim = res.terms[n].dim();
        let exact = if n == 0 {
            match ranks.first() {
                Some(&r) => Some(r + 1 == dim),
                None if res.finite => Some(dim == 1),
                None => None,
            }
        } else if n < res.top() {
            Some(ranks[n - 1] + ranks[n] == dim)
        } else if res.finite {
            Some(ranks[n - 1] == dim)
        } else {
            None
        };
        out.push(DegreeCheck { degree: n, complex, minimal, exact });
    }
    out
}

/// Smallest `p <= max_period` with `Q_{n+p} = Q_n` and `d_{n+p} = d_n` for all checked `n >= 1`.
pub fn detect_periodicity(res: &Resolution, max_period: usize) -> Result<Option<usize>> {
    if res.finite {
        return Ok(None);
    }
    if res.top() < 2 * max_period + 1 {
        return Err(Error::DegreeOutOfRange { degree: 2 * max_period + 1, bound: res.top() });
    }
    'period: for p in 1..=max_period {
        for n in 1..=res.top() - p {
            if !res.terms[n].same_shape(&res.terms[n + p]) {
                continue 'period;
            }
            if n + p <= res.differentials.len() {
                let a = &res.differentials[n - 1];
                let b = &res.differentials[n + p - 1];
                if a.images() != b.images() {
                    continue 'period;
                }
            }
        }
        return Ok(Some(p));
    }
    Ok(None)
}

/// Bidegree `(r, s)`: `r` horizontal, `s` vertical.
pub type Bidegree = (i64, i64);

/// A first-quadrant double complex of projectives with path-labelled maps.
///
/// Horizontal maps go `(r, s) -> (r - 1, s)`, vertical maps `(r, s) -> (r, s - 1)`.
#[derive(Debug, Clone, Default)]
pub struct Bicomplex {
    pub modules: BTreeMap<Bidegree, usize>,
    pub horizontal: HashMap<Bidegree, Element>,
    pub vertical: HashMap<Bidegree, Element>,
}

impl Bicomplex {
    /// Positions of total degree `n`, ordered by horizontal degree.
    pub fn positions(&self, n: i64) -> Vec<Bidegree> {
        self.modules.keys().copied().filter(|&(r, s)| r + s == n).collect()
    }

    pub fn term(&self, alg: &Algebra, n: i64) -> FreeModule {
        let pos = self.positions(n);
        let summands = pos.iter().map(|p| self.modules[p]).collect();
        FreeModule::new(alg, summands).with_bidegrees(pos).expect("label count matches")
    }

    /// The total complex, whose differential is the sum of both directions.
    pub fn total(&self, alg: &Algebra, simple: usize, max_degree: usize) -> Result<Resolution> {
        let f = alg.field();
        let terms: Vec<FreeModule> = (0..=max_degree as i64).map(|n| self.term(alg, n)).collect();
        let mut differentials = Vec::new();
        for n in 1..=max_degree {
            let dom = &terms[n];
            let cod = &terms[n - 1];
            let cod_pos = cod.bidegrees().expect("labelled");
            let dom_pos = dom.bidegrees().expect("labelled");
            let mut entries = vec![vec![Element::zero(f); dom.rank()]; cod.rank()];
            for (j, &(r, s)) in dom_pos.iter().enumerate() {
                if let Some(x) = self.horizontal.get(&(r, s)) {
                    let i = cod_pos
                        .iter()
                        .position(|&p| p == (r - 1, s))
                        .ok_or_else(|| Error::ModuleMismatch(format!("horizontal map from ({r},{s}) has no target")))?;
                    entries[i][j] = entries[i][j].add(x)?;
                }
                if let Some(x) = self.vertical.get(&(r, s)) {
                    let i = cod_pos
                        .iter()
                        .position(|&p| p == (r, s - 1))
                        .ok_or_else(|| Error::ModuleMismatch(format!("vertical map from ({r},{s}) has no target")))?;
                    entries[i][j] = entries[i][j].add(x)?;
                }
            }
            differentials.push(ModuleMap::from_entries(alg, dom.clone(), cod.clone(), &entries)?);
        }
        Resolution::from_parts(alg, simple, terms, differentials)
    }
}

/// `h_x`: for `x: P -> Q` (left multiplication by the path `x`), the linear map
/// `Q -> P` sending `w` to `v` when `w = x v` for a standard monomial `v`, and to 0 otherwise.
pub fn homotopy_h(alg: &Algebra, x: &Element, p: usize, q: usize) -> Result<Matrix> {
    let f = alg.field();
    let pm = module::pim(alg, p);
    let qm = module::pim(alg, q);
    let map = ModuleMap::from_entries(alg, pm, qm, &[vec![x.clone()]])?;
    let mut h = Matrix::zeros(f, alg.pim_dim(p), alg.pim_dim(q));
    let mut hit: HashMap<usize, usize> = HashMap::new();
    for v in 0..alg.pim_dim(p) {
        let col = map.matrix().column(v);
        let nz: Vec<usize> = (0..col.len()).filter(|&i| col[i] != 0).collect();
        if let [w] = nz[..] {
            if let Some(&other) = hit.get(&w) {
                let qv = alg.quiver();
                return Err(Error::Ambiguous(format!(
                    "{} = x*{} = x*{}",
                    qv.format_word(&alg.pim_basis(q)[w]),
                    qv.format_word(&alg.pim_basis(p)[other]),
                    qv.format_word(&alg.pim_basis(p)[v])
                )));
            }
            hit.insert(w, v);
            h.set(v, w, f.inv(col[w]));
        }
    }
    Ok(h)
}

/// `h'`: for a square with bottom map `beta: S -> Q` and right map `x: P -> Q`, the linear map
/// `Q -> S` sending `w` to `v` when `w = beta v` and `w` is not in the image of `x`.
pub fn homotopy_h_dash(alg: &Algebra, beta: &Element, s: usize, x: &Element, p: usize, q: usize) -> Result<Matrix> {
    let f = alg.field();
    let image_x = {
        let m = ModuleMap::from_entries(alg, module::pim(alg, p), module::pim(alg, q), &[vec![x.clone()]])?;
        let cols: Vec<Vec<u32>> = (0..m.matrix().cols()).map(|c| m.matrix().column(c)).collect();
        EchelonBasis::from_vectors(f, alg.pim_dim(q), cols)
    };
    let hb = homotopy_h(alg, beta, s, q)?;
    let mut h = Matrix::zeros(f, alg.pim_dim(s), alg.pim_dim(q));
    for w in 0..alg.pim_dim(q) {
        let mut unit = vec![0; alg.pim_dim(q)];
        unit[w] = 1;
        if image_x.contains(&unit) {
            continue;
        }
        for v in 0..alg.pim_dim(s) {
            let c = hb.get(v, w);
            if c != 0 {
                h.set(v, w, c);
            }
        }
    }
    Ok(h)
}

/// Degree-raising maps `h_n: Q_n -> Q_{n+1}` for `n = 0..len`.
#[derive(Debug, Clone)]
pub struct ContractingHomotopy {
    pub maps: Vec<LinearMap>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomotopyDegree {
    pub degree: usize,
    pub holds: bool,
    /// Bidegrees (or summand indices) of the domain summands where the identity fails.
    pub failures: Vec<String>,
}

impl ContractingHomotopy {
    /// Assembles `h_n` from blocks between bicomplex positions of adjacent total degree.
    pub fn from_blocks(alg: &Algebra, res: &Resolution, blocks: &HashMap<(Bidegree, Bidegree), Matrix>, max_degree: usize) -> Result<Self> {
        let f = alg.field();
        let mut maps = Vec::new();
        for n in 0..=max_degree {
            let dom = res.term(n)?;
            let cod = res.term(n + 1)?;
            let dl = dom.bidegrees().ok_or_else(|| Error::ModuleMismatch("unlabelled term".into()))?.to_vec();
            let cl = cod.bidegrees().ok_or_else(|| Error::ModuleMismatch("unlabelled term".into()))?.to_vec();
            let mut m = Matrix::zeros(f, cod.dim(), dom.dim());
            for (j, pj) in dl.iter().enumerate() {
                for (i, pi) in cl.iter().enumerate() {
                    if let Some(b) = blocks.get(&(*pj, *pi)) {
                        let (ro, co) = (cod.offset(i), dom.offset(j));
                        if b.rows() != alg.pim_dim(cod.summands()[i]) || b.cols() != alg.pim_dim(dom.summands()[j]) {
                            return Err(Error::DimensionMismatch { expected: alg.pim_dim(cod.summands()[i]), got: b.rows() });
                        }
                        for r in 0..b.rows() {
                            for c in 0..b.cols() {
                                let v = b.get(r, c);
                                if v != 0 {
                                    m.add_at(ro + r, co + c, v);
                                }
                            }
                        }
                    }
                }
            }
            maps.push(LinearMap::new(dom, cod, m)?);
        }
        Ok(ContractingHomotopy { maps })
    }

    /// Checks `d_{n+1} h_n + h_{n-1} d_n = Id` for `n = 0..=max_degree`, with the
    /// augmentation term `1_S -> 1_S` in degree 0.
    pub fn verify(&self, alg: &Algebra, res: &Resolution, max_degree: usize) -> Result<Vec<HomotopyDegree>> {
        let f = alg.field();
        let mut out = Vec::new();
        for n in 0..=max_degree {
            let term = res.term(n)?;
            let h = self.maps.get(n).ok_or(Error::DegreeOutOfRange { degree: n, bound: self.maps.len() })?;
            let d_next = res.differential(n + 1).ok_or(Error::DegreeOutOfRange { degree: n + 1, bound: res.top() })?;
            let mut total = d_next.matrix().mul(&h.matrix);
            if n == 0 {
                let mut eps = Matrix::zeros(f, term.dim(), term.dim());
                eps.set(0, 0, 1);
                total = total.add(&eps);
            } else {
                let hp = &self.maps[n - 1];
                let d = res.differential(n).expect("n >= 1");
                total = total.add(&hp.matrix.mul(d.matrix()));
            }
            let diff = total.sub(&Matrix::identity(f, term.dim()));
            let mut failures = Vec::new();
            for i in 0..term.rank() {
                let r = term.range(alg, i);
                if r.clone().any(|c| (0..diff.rows()).any(|row| diff.get(row, c) != 0)) {
                    failures.push(match term.bidegrees() {
                        Some(b) => format!("({},{})", b[i].0, b[i].1),
                        None => format!("summand {i}"),
                    });
                }
            }
            out.push(HomotopyDegree { degree: n, holds: failures.is_empty(), failures });
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testing::{a3_radical_square_zero, truncated};

    #[test]
    fn truncated_polynomial_resolution_alternates() {
        let alg = truncated(2, 3);
        let res = minimal_resolution(&alg, 0, 6).unwrap();
        assert_eq!(res.summand_counts(6).unwrap(), vec![1; 7]);
        let d: Vec<String> = res.differentials().iter().map(|d| d.format_entries(&alg)[0][0].clone()).collect();
        assert_eq!(d, ["x", "x^2", "x", "x^2", "x", "x^2"]);
        assert!(verify_resolution(&alg, &res).iter().all(DegreeCheck::ok));
        assert_eq!(detect_periodicity(&res, 2).unwrap(), Some(2));
    }

    #[test]
    fn finite_projective_dimension() {
        let alg = a3_radical_square_zero();
        let res = minimal_resolution(&alg, 0, 6).unwrap();
        assert!(res.is_finite());
        assert_eq!(res.top(), 2);
        assert_eq!(res.term(5).unwrap().rank(), 0);
        assert!(verify_resolution(&alg, &res).iter().all(DegreeCheck::ok));
        assert_eq!(detect_periodicity(&res, 2).unwrap(), None);
    }

    #[test]
    fn short_resolution_rejects_period_search() {
        let alg = truncated(2, 3);
        let res = minimal_resolution(&alg, 0, 3).unwrap();
        assert!(matches!(detect_periodicity(&res, 2), Err(Error::DegreeOutOfRange { .. })));
    }

    #[test]
    fn broken_differential_is_detected() {
        let alg = truncated(2, 3);
        let res = minimal_resolution(&alg, 0, 3).unwrap();
        let d = res.differential(2).unwrap();
        let q = alg.quiver();
        let wrong = ModuleMap::from_entries(&alg, d.domain().clone(), d.codomain().clone(), &[vec![q.parse_element(alg.field(), "x").unwrap()]]).unwrap();
        let broken = res.with_differential(2, wrong).unwrap();
        let checks = verify_resolution(&alg, &broken);
        assert!(!checks[1].complex || !checks[2].complex);
    }

    #[test]
    fn h_inverts_a_path_on_its_image() {
        let alg = truncated(2, 4);
        let x = alg.quiver().parse_element(alg.field(), "x").unwrap();
        let h = homotopy_h(&alg, &x, 0, 0).unwrap();
        assert_eq!(h.column(0), vec![0, 0, 0, 0]);
        assert_eq!(h.column(2), vec![0, 1, 0, 0]);
    }
}
