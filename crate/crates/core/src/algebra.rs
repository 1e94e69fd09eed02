//! A finite-dimensional bounded quiver algebra with multiplication tables.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::quiver::{Element, Quiver, Word};
use crate::rewrite::{RewriteSystem, StandardMonomialBasis};

/// The quotient of the path algebra by a complete rewrite system.
///
/// The projective `P_v` is spanned by the standard monomials starting at `v`;
/// vectors in `P_v` are coordinate vectors in that basis.
#[derive(Debug, Clone)]
pub struct Algebra {
    system: RewriteSystem,
    basis: StandardMonomialBasis,
    pims: Vec<Vec<Word>>,
    index: Vec<HashMap<Word, usize>>,
    /// `right[v][i * arrows + a]`: the product `w_i * a` as sparse coordinates in `P_v`.
    right: Vec<Vec<Vec<(usize, u32)>>>,
}

impl Algebra {
    pub fn new(system: RewriteSystem) -> Result<Self> {
        let basis = system.standard_monomials()?;
        let q = system.quiver();
        let nv = q.vertices().len();
        let na = q.arrows().len();
        let pims: Vec<Vec<Word>> = (0..nv).map(|v| basis.from_source(v).to_vec()).collect();
        let index: Vec<HashMap<Word, usize>> = pims.iter().map(|ws| ws.iter().enumerate().map(|(i, w)| (w.clone(), i)).collect()).collect();
        let mut right = Vec::with_capacity(nv);
        for v in 0..nv {
            let mut table = vec![Vec::new(); pims[v].len() * na];
            for (i, w) in pims[v].iter().enumerate() {
                for a in q.arrows_from(w.target()) {
                    let nf = system.normal_form_word(&w.concat(&q.arrow_word(a)))?;
                    let mut entry = Vec::with_capacity(nf.len());
                    for (u, c) in nf.terms() {
                        let j = *index[v].get(u).ok_or_else(|| Error::Inconsistent(format!("normal form {} is not a standard monomial", q.format_word(u))))?;
                        entry.push((j, c));
                    }
                    table[i * na + a] = entry;
                }
            }
            right.push(table);
        }
        Ok(Algebra { system, basis, pims, index, right })
    }

    pub fn system(&self) -> &RewriteSystem {
        &self.system
    }

    pub fn quiver(&self) -> &Quiver {
        self.system.quiver()
    }

    pub fn field(&self) -> Field {
        self.system.field()
    }

    pub fn standard_monomials(&self) -> &StandardMonomialBasis {
        &self.basis
    }

    pub fn vertex_count(&self) -> usize {
        self.pims.len()
    }

    pub fn dim(&self) -> usize {
        self.pims.iter().map(Vec::len).sum()
    }

    pub fn pim_dim(&self, v: usize) -> usize {
        self.pims[v].len()
    }

    /// Basis of `P_v`, starting with the idempotent `1_v`.
    pub fn pim_basis(&self, v: usize) -> &[Word] {
        &self.pims[v]
    }

    pub fn index_of(&self, w: &Word) -> Option<usize> {
        self.index[w.source()].get(w).copied()
    }

    /// `x * a` for `x` in `P_v` and an arrow `a`; components not ending at the source of `a` vanish.
    pub fn right_arrow(&self, v: usize, x: &[u32], a: usize) -> Vec<u32> {
        let f = self.field();
        let na = self.quiver().arrows().len();
        let mut out = vec![0; x.len()];
        for (i, &c) in x.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for &(j, d) in &self.right[v][i * na + a] {
                out[j] = f.add(out[j], f.mul(c, d));
            }
        }
        out
    }

    /// `x * w` for `x` in `P_v` and a path `w`.
    pub fn right_word(&self, v: usize, x: &[u32], w: &Word) -> Vec<u32> {
        if w.is_empty() {
            return self.right_idempotent(v, x, w.source());
        }
        let mut cur = x.to_vec();
        for &a in w.arrows() {
            cur = self.right_arrow(v, &cur, a as usize);
        }
        cur
    }

    /// `x * 1_u`: keeps only the words ending at `u`.
    pub fn right_idempotent(&self, v: usize, x: &[u32], u: usize) -> Vec<u32> {
        x.iter().zip(&self.pims[v]).map(|(&c, w)| if w.target() == u { c } else { 0 }).collect()
    }

    /// Coordinates in `P_v` of the normal form of `x`; `x` must start at `v` or be zero.
    pub fn coords(&self, v: usize, x: &Element) -> Result<Vec<u32>> {
        if let Some((s, _)) = x.endpoints() {
            if s != v {
                return Err(Error::EndpointMismatch(self.quiver().vertex_label(v).into(), self.quiver().vertex_label(s).into()));
            }
        }
        let nf = self.system.normal_form(x)?;
        let mut out = vec![0; self.pims[v].len()];
        for (w, c) in nf.terms() {
            let i = self.index_of(w).ok_or_else(|| Error::Inconsistent("normal form outside the basis".into()))?;
            out[i] = c;
        }
        Ok(out)
    }

    pub fn element(&self, v: usize, x: &[u32]) -> Element {
        let mut e = Element::zero(self.field());
        for (w, &c) in self.pims[v].iter().zip(x) {
            if c != 0 {
                e = e.add(&Element::monomial(self.field(), w.clone(), c)).expect("mixed endpoints in a coordinate vector");
            }
        }
        e
    }

    /// Product of two elements in normal form.
    pub fn mul(&self, x: &Element, y: &Element) -> Result<Element> {
        self.system.normal_form(&x.mul(y)?)
    }

    pub fn normal_form(&self, x: &Element) -> Result<Element> {
        self.system.normal_form(x)
    }

    /// Right-action closure check: every basis word times every arrow stays in the basis.
    pub fn multiplication_closed(&self) -> bool {
        self.right.iter().enumerate().all(|(v, t)| t.iter().flatten().all(|&(j, _)| j < self.pims[v].len()))
    }
}

#[cfg(test)]
mod tests {
    use crate::testing::{a3_radical_square_zero, truncated};

    #[test]
    fn truncated_polynomial_tables() {
        let alg = truncated(3, 3);
        assert_eq!(alg.dim(), 3);
        assert_eq!(alg.right_arrow(0, &[1, 2, 0], 0), vec![0, 1, 2]);
        assert_eq!(alg.right_arrow(0, &[0, 0, 1], 0), vec![0, 0, 0]);
        assert!(alg.multiplication_closed());
    }

    #[test]
    fn idempotent_keeps_matching_ends() {
        let alg = a3_radical_square_zero();
        assert_eq!(alg.pim_dim(0), 2);
        assert_eq!(alg.pim_dim(2), 1);
        assert_eq!(alg.right_idempotent(0, &[1, 1], 1), vec![0, 1]);
    }

    #[test]
    fn coordinates_round_trip() {
        let alg = crate::m11::algebra().unwrap();
        let q = alg.quiver();
        let m = q.vertex("M").unwrap();
        let x = q.parse_element(alg.field(), "d + c*a*e*b + d*d").unwrap();
        let v = alg.coords(m, &x).unwrap();
        assert_eq!(q.format_element(&alg.element(m, &v)), q.format_element(&alg.normal_form(&x).unwrap()));
        assert!(alg.coords(q.vertex("K").unwrap(), &x).is_err());
    }
}
