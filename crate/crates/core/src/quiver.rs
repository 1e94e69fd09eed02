//! Quivers, path words, linear combinations of paths and monomial orders.
//!
//! Paths compose left to right: for `a: K -> N` and `e: N -> K` the word
//! `a*e` is a path from `K` to `K`.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::Field;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Arrow {
    pub label: String,
    pub source: usize,
    pub target: usize,
    pub degree: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
    vertex_index: HashMap<String, usize>,
    arrow_index: HashMap<String, usize>,
}

impl Quiver {
    /// Builds a quiver from vertex labels and `(label, source, target, degree)` arrows.
    pub fn new<V, A>(vertices: V, arrows: A) -> Result<Self>
    where
        V: IntoIterator,
        V::Item: Into<String>,
        A: IntoIterator<Item = (String, String, String, u32)>,
    {
        let vertices: Vec<String> = vertices.into_iter().map(Into::into).collect();
        let mut vertex_index = HashMap::new();
        for (i, v) in vertices.iter().enumerate() {
            check_label(v)?;
            if vertex_index.insert(v.clone(), i).is_some() {
                return Err(Error::DuplicateLabel(v.clone()));
            }
        }
        if vertices.len() > u16::MAX as usize {
            return Err(Error::Invalid("too many vertices".into()));
        }
        let mut arrow_list = Vec::new();
        let mut arrow_index = HashMap::new();
        for (label, s, t, degree) in arrows {
            check_label(&label)?;
            let source = *vertex_index.get(&s).ok_or_else(|| Error::UnknownVertex(s.clone()))?;
            let target = *vertex_index.get(&t).ok_or_else(|| Error::UnknownVertex(t.clone()))?;
            if degree == 0 {
                return Err(Error::ZeroDegree(label));
            }
            if vertex_index.contains_key(&label) || arrow_index.insert(label.clone(), arrow_list.len()).is_some() {
                return Err(Error::DuplicateLabel(label));
            }
            arrow_list.push(Arrow { label, source, target, degree });
        }
        if arrow_list.len() > u16::MAX as usize {
            return Err(Error::Invalid("too many arrows".into()));
        }
        Ok(Quiver { vertices, arrows: arrow_list, vertex_index, arrow_index })
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn vertex(&self, label: &str) -> Result<usize> {
        self.vertex_index.get(label).copied().ok_or_else(|| Error::UnknownVertex(label.to_string()))
    }

    pub fn arrow(&self, label: &str) -> Result<usize> {
        self.arrow_index.get(label).copied().ok_or_else(|| Error::UnknownArrow(label.to_string()))
    }

    pub fn vertex_label(&self, v: usize) -> &str {
        &self.vertices[v]
    }

    pub fn arrow_label(&self, a: usize) -> &str {
        &self.arrows[a].label
    }

    /// Arrows leaving vertex `v`, in declaration order.
    pub fn arrows_from(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.arrows.iter().enumerate().filter(move |(_, a)| a.source == v).map(|(i, _)| i)
    }

    /// The path consisting of a single arrow.
    pub fn arrow_word(&self, a: usize) -> Word {
        let arr = &self.arrows[a];
        Word { source: arr.source as u16, target: arr.target as u16, arrows: vec![a as u16] }
    }

    /// Parses `a*b*c`, `f^4`, `e*f^2` or `1_V`.
    pub fn parse_word(&self, text: &str) -> Result<Word> {
        let text = text.trim();
        if let Some(v) = text.strip_prefix("1_") {
            return Ok(Word::vertex(self.vertex(v)?));
        }
        if text.is_empty() {
            return Err(Error::Invalid("empty word".into()));
        }
        let mut arrows = Vec::new();
        for factor in text.split('*') {
            let factor = factor.trim();
            let (label, power) = match factor.split_once('^') {
                Some((l, p)) => {
                    let p: usize = p.trim().parse().map_err(|_| Error::Invalid(format!("bad exponent in `{factor}`")))?;
                    if p == 0 {
                        return Err(Error::Invalid(format!("zero exponent in `{factor}`")));
                    }
                    (l.trim(), p)
                }
                None => (factor, 1),
            };
            let a = self.arrow(label)?;
            arrows.extend(std::iter::repeat_n(a, power));
        }
        Word::from_arrows(self, &arrows)
    }

    pub fn format_word(&self, w: &Word) -> String {
        if w.arrows.is_empty() {
            return format!("1_{}", self.vertices[w.source as usize]);
        }
        let mut parts = Vec::new();
        let mut i = 0;
        while i < w.arrows.len() {
            let a = w.arrows[i];
            let mut j = i + 1;
            while j < w.arrows.len() && w.arrows[j] == a {
                j += 1;
            }
            let label = &self.arrows[a as usize].label;
            if j - i > 1 {
                parts.push(format!("{label}^{}", j - i));
            } else {
                parts.push(label.clone());
            }
            i = j;
        }
        parts.join("*")
    }

    /// Parses a linear combination such as `e*b*c + 2*f^3`, or `0`.
    ///
    /// `source` and `target` fix the endpoints used when the expression is `0`.
    pub fn parse_element(&self, field: Field, text: &str) -> Result<Element> {
        let text = text.trim();
        let mut out = Element::zero(field);
        if text == "0" {
            return Ok(out);
        }
        for term in text.split('+') {
            let term = term.trim();
            let (coef, word_text) = split_coefficient(term);
            let w = self.parse_word(word_text)?;
            out = out.add(&Element::monomial(field, w, field.from_i64(coef)))?;
        }
        Ok(out)
    }

    pub fn format_element(&self, x: &Element) -> String {
        if x.is_zero() {
            return "0".to_string();
        }
        let f = x.field();
        x.terms().map(|(w, c)| if c == 1 { self.format_word(w) } else { format!("{}*{}", f.signed(c), self.format_word(w)) }).collect::<Vec<_>>().join(" + ")
    }
}

fn split_coefficient(term: &str) -> (i64, &str) {
    if let Some((head, rest)) = term.split_once('*') {
        if let Ok(c) = head.trim().parse::<i64>() {
            return (c, rest.trim());
        }
    }
    (1, term)
}

fn check_label(label: &str) -> Result<()> {
    let ok = !label.is_empty()
        && !label.chars().all(|c| c.is_ascii_digit())
        && label.chars().all(|c| c.is_alphanumeric() || c == '_' || c == '\'')
        && !label.starts_with("1_");
    if ok {
        Ok(())
    } else {
        Err(Error::Invalid(format!("invalid label `{label}`")))
    }
}

/// A path in a quiver: a vertex idempotent or a nonempty composable arrow sequence.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Word {
    source: u16,
    target: u16,
    arrows: Vec<u16>,
}

impl Word {
    pub fn vertex(v: usize) -> Word {
        Word { source: v as u16, target: v as u16, arrows: Vec::new() }
    }

    pub fn from_arrows(q: &Quiver, arrows: &[usize]) -> Result<Word> {
        let (first, rest) = arrows.split_first().ok_or_else(|| Error::Invalid("empty arrow sequence".into()))?;
        let mut target = q.arrows[*first].target;
        for &a in rest {
            let arr = &q.arrows[a];
            if arr.source != target {
                return Err(Error::Composition { first_target: q.vertices[target].clone(), second_source: q.vertices[arr.source].clone() });
            }
            target = arr.target;
        }
        Ok(Word { source: q.arrows[*first].source as u16, target: target as u16, arrows: arrows.iter().map(|&a| a as u16).collect() })
    }

    #[inline]
    pub fn source(&self) -> usize {
        self.source as usize
    }

    #[inline]
    pub fn target(&self) -> usize {
        self.target as usize
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn arrows(&self) -> &[u16] {
        &self.arrows
    }

    pub fn degree(&self, q: &Quiver) -> u32 {
        self.arrows.iter().map(|&a| q.arrows[a as usize].degree).sum()
    }

    pub fn compose(&self, other: &Word, q: &Quiver) -> Result<Word> {
        if self.target != other.source {
            return Err(Error::Composition { first_target: q.vertices[self.target()].clone(), second_source: q.vertices[other.source()].clone() });
        }
        Ok(self.concat(other))
    }

    /// Concatenation without the endpoint check.
    pub(crate) fn concat(&self, other: &Word) -> Word {
        debug_assert_eq!(self.target, other.source);
        let mut arrows = Vec::with_capacity(self.arrows.len() + other.arrows.len());
        arrows.extend_from_slice(&self.arrows);
        arrows.extend_from_slice(&other.arrows);
        Word { source: self.source, target: other.target, arrows }
    }

    /// The factor covering arrow positions `start..end` (nonempty range).
    pub(crate) fn factor(&self, q: &Quiver, start: usize, end: usize) -> Word {
        if start == end {
            let v = if start == 0 { self.source() } else { q.arrows[self.arrows[start - 1] as usize].target };
            return Word::vertex(v);
        }
        let s = q.arrows[self.arrows[start] as usize].source;
        let t = q.arrows[self.arrows[end - 1] as usize].target;
        Word { source: s as u16, target: t as u16, arrows: self.arrows[start..end].to_vec() }
    }

    /// Leftmost position where `pattern` occurs as a factor.
    pub fn find_factor(&self, pattern: &Word) -> Option<usize> {
        if pattern.arrows.is_empty() || pattern.len() > self.len() {
            return None;
        }
        self.arrows.windows(pattern.len()).position(|w| w == pattern.arrows.as_slice())
    }

    pub fn contains_factor(&self, pattern: &Word) -> bool {
        self.find_factor(pattern).is_some()
    }

    pub fn same_endpoints(&self, other: &Word) -> bool {
        self.source == other.source && self.target == other.target
    }
}

/// A field-linear combination of paths sharing one (source, target) pair.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Element {
    field: Field,
    terms: BTreeMap<Word, u32>,
}

impl Element {
    pub fn zero(field: Field) -> Self {
        Element { field, terms: BTreeMap::new() }
    }

    pub fn monomial(field: Field, w: Word, coef: u32) -> Self {
        let mut terms = BTreeMap::new();
        let c = coef % field.characteristic();
        if c != 0 {
            terms.insert(w, c);
        }
        Element { field, terms }
    }

    pub fn from_word(field: Field, w: Word) -> Self {
        Element::monomial(field, w, 1)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, u32)> {
        self.terms.iter().map(|(w, &c)| (w, c))
    }

    pub fn coefficient(&self, w: &Word) -> u32 {
        self.terms.get(w).copied().unwrap_or(0)
    }

    /// Common `(source, target)` of the terms; `None` for zero.
    pub fn endpoints(&self) -> Option<(usize, usize)> {
        self.terms.keys().next().map(|w| (w.source(), w.target()))
    }

    fn check_field(&self, other: &Element) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(self.field.characteristic(), other.field.characteristic()));
        }
        Ok(())
    }

    pub fn add(&self, other: &Element) -> Result<Element> {
        self.check_field(other)?;
        if let (Some(a), Some(b)) = (self.endpoints(), other.endpoints()) {
            if a != b {
                return Err(Error::EndpointMismatch(format!("{}->{}", a.0, a.1), format!("{}->{}", b.0, b.1)));
            }
        }
        let mut out = self.clone();
        for (w, c) in other.terms() {
            out.add_term(w.clone(), c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Element) -> Result<Element> {
        self.add(&other.scale(self.field.neg(1)))
    }

    pub fn scale(&self, c: u32) -> Element {
        let f = self.field;
        let c = c % f.characteristic();
        if c == 0 {
            return Element::zero(f);
        }
        Element { field: f, terms: self.terms.iter().map(|(w, &x)| (w.clone(), f.mul(x, c))).collect() }
    }

    /// Product by concatenation of paths.
    pub fn mul(&self, other: &Element) -> Result<Element> {
        self.check_field(other)?;
        let f = self.field;
        if let (Some(a), Some(b)) = (self.endpoints(), other.endpoints()) {
            if a.1 != b.0 {
                return Err(Error::EndpointMismatch(format!("..->{}", a.1), format!("{}->..", b.0)));
            }
        }
        let mut out = Element::zero(f);
        for (u, a) in self.terms() {
            for (v, b) in other.terms() {
                out.add_term(u.concat(v), f.mul(a, b));
            }
        }
        Ok(out)
    }

    pub(crate) fn add_term(&mut self, w: Word, c: u32) {
        if c == 0 {
            return;
        }
        let f = self.field;
        match self.terms.entry(w) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = f.add(*e.get(), c);
                if s == 0 {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum OrderKind {
    /// Fewer arrows is greater; equal lengths compare arrow by arrow from the right.
    ShortMajorRlex,
    /// Lower degree is smaller; equal degrees compare arrow by arrow from the left.
    DegreeLlex,
}

impl OrderKind {
    pub fn name(self) -> &'static str {
        match self {
            OrderKind::ShortMajorRlex => "short-major-rlex",
            OrderKind::DegreeLlex => "degree-llex",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        match s {
            "short-major-rlex" => Some(OrderKind::ShortMajorRlex),
            "degree-llex" | "degree-then-llex" => Some(OrderKind::DegreeLlex),
            _ => None,
        }
    }
}

impl fmt::Display for OrderKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A monomial order on paths with a fixed (source, target) pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialOrder {
    kind: OrderKind,
    /// `rank[a]`: larger means the arrow is more significant.
    rank: Vec<u32>,
    degrees: Vec<u32>,
}

impl MonomialOrder {
    /// `ascending` lists every arrow label from least to most significant.
    pub fn new(kind: OrderKind, quiver: &Quiver, ascending: &[&str]) -> Result<Self> {
        let n = quiver.arrows().len();
        if ascending.len() != n {
            return Err(Error::Invalid(format!("order must rank all {n} arrows, got {}", ascending.len())));
        }
        let mut rank = vec![u32::MAX; n];
        for (i, label) in ascending.iter().enumerate() {
            let a = quiver.arrow(label)?;
            if rank[a] != u32::MAX {
                return Err(Error::DuplicateLabel(label.to_string()));
            }
            rank[a] = i as u32;
        }
        let degrees = quiver.arrows().iter().map(|a| a.degree).collect();
        Ok(MonomialOrder { kind, rank, degrees })
    }

    /// Arrow labels in the form `a > b > c`.
    pub fn descending(kind: OrderKind, quiver: &Quiver, descending: &[&str]) -> Result<Self> {
        let asc: Vec<&str> = descending.iter().rev().copied().collect();
        Self::new(kind, quiver, &asc)
    }

    pub fn kind(&self) -> OrderKind {
        self.kind
    }

    /// Arrow indices from most to least significant.
    pub fn precedence(&self) -> Vec<usize> {
        let mut idx: Vec<usize> = (0..self.rank.len()).collect();
        idx.sort_by_key(|&a| std::cmp::Reverse(self.rank[a]));
        idx
    }

    pub fn rank(&self, arrow: usize) -> u32 {
        self.rank[arrow]
    }

    pub fn compare(&self, a: &Word, b: &Word) -> Result<Ordering> {
        if !a.same_endpoints(b) {
            return Err(Error::EndpointMismatch(format!("{}->{}", a.source(), a.target()), format!("{}->{}", b.source(), b.target())));
        }
        Ok(self.cmp_words(a, b))
    }

    /// Comparison without the endpoint check.
    pub fn cmp_words(&self, a: &Word, b: &Word) -> Ordering {
        match self.kind {
            OrderKind::ShortMajorRlex => b.len().cmp(&a.len()).then_with(|| {
                for (x, y) in a.arrows.iter().rev().zip(b.arrows.iter().rev()) {
                    let o = self.rank[*x as usize].cmp(&self.rank[*y as usize]);
                    if o != Ordering::Equal {
                        return o;
                    }
                }
                Ordering::Equal
            }),
            OrderKind::DegreeLlex => {
                let da: u32 = a.arrows.iter().map(|&x| self.degrees[x as usize]).sum();
                let db: u32 = b.arrows.iter().map(|&x| self.degrees[x as usize]).sum();
                da.cmp(&db).then_with(|| {
                    for (x, y) in a.arrows.iter().zip(&b.arrows) {
                        let o = self.rank[*x as usize].cmp(&self.rank[*y as usize]);
                        if o != Ordering::Equal {
                            return o;
                        }
                    }
                    a.len().cmp(&b.len())
                })
            }
        }
    }

    /// A key whose natural order agrees with [`Self::cmp_words`] on words
    /// with equal endpoints; distinct words always get distinct keys.
    pub fn sort_key(&self, w: &Word) -> OrderKey {
        let mut key = Vec::with_capacity(w.len() + 1);
        match self.kind {
            OrderKind::ShortMajorRlex => {
                key.push(-(w.len() as i64));
                key.extend(w.arrows.iter().rev().map(|&a| self.rank[a as usize] as i64));
            }
            OrderKind::DegreeLlex => {
                key.push(w.arrows.iter().map(|&a| self.degrees[a as usize] as i64).sum());
                key.extend(w.arrows.iter().map(|&a| self.rank[a as usize] as i64));
            }
        }
        OrderKey(key, w.source, w.target)
    }

    /// The greatest word of a nonzero element.
    pub fn leading_word<'a>(&self, x: &'a Element) -> Option<&'a Word> {
        x.terms.keys().max_by(|a, b| self.cmp_words(a, b))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OrderKey(Vec<i64>, u16, u16);

#[cfg(test)]
mod tests {
    use super::*;

    fn m11_quiver() -> Quiver {
        let arrows = [("a", "K", "N"), ("b", "K", "M"), ("c", "M", "K"), ("d", "M", "M"), ("e", "N", "K"), ("f", "N", "N")];
        Quiver::new(["K", "M", "N"], arrows.iter().map(|(l, s, t)| (l.to_string(), s.to_string(), t.to_string(), 1))).unwrap()
    }

    #[test]
    fn compose_reads_left_to_right() {
        let q = m11_quiver();
        let a = q.parse_word("a").unwrap();
        let e = q.parse_word("e").unwrap();
        let ae = a.compose(&e, &q).unwrap();
        assert_eq!(q.format_word(&ae), "a*e");
        assert_eq!(ae.len(), 2);
        assert_eq!(ae.source(), q.vertex("K").unwrap());
        assert_eq!(ae.target(), q.vertex("K").unwrap());
    }

    #[test]
    fn idempotent_is_a_unit() {
        let q = m11_quiver();
        let one = q.parse_word("1_K").unwrap();
        let b = q.parse_word("b").unwrap();
        assert_eq!(one.compose(&b, &q).unwrap(), b);
        let one_m = q.parse_word("1_M").unwrap();
        assert_eq!(b.compose(&one_m, &q).unwrap(), b);
    }

    #[test]
    fn non_composable_pair_is_rejected() {
        let q = m11_quiver();
        let a = q.parse_word("a").unwrap();
        let b = q.parse_word("b").unwrap();
        let err = a.compose(&b, &q).unwrap_err();
        assert_eq!(err, Error::Composition { first_target: "N".into(), second_source: "K".into() });
        assert!(q.parse_word("a*b").is_err());
    }

    #[test]
    fn parse_errors() {
        let q = m11_quiver();
        assert_eq!(q.parse_word("b*d*q").unwrap_err(), Error::UnknownArrow("q".into()));
        assert!(q.parse_word("1_Z").is_err());
        assert!(q.parse_word("f^0").is_err());
    }

    #[test]
    fn power_shorthand() {
        let q = m11_quiver();
        let w = q.parse_word("f^4").unwrap();
        assert_eq!(w.len(), 4);
        assert_eq!(q.format_word(&w), "f^4");
        assert_eq!(q.parse_word("f^2*e").unwrap(), q.parse_word("f*f*e").unwrap());
    }

    #[test]
    fn short_major_rlex_examples() {
        let q = m11_quiver();
        let ord = MonomialOrder::descending(OrderKind::ShortMajorRlex, &q, &["a", "b", "c", "d", "e", "f"]).unwrap();
        let w = |s: &str| q.parse_word(s).unwrap();
        assert_eq!(ord.compare(&w("a*e*b*c"), &w("b*c*a*e")).unwrap(), Ordering::Greater);
        assert_eq!(ord.compare(&w("d*d"), &w("c*a*e*b")).unwrap(), Ordering::Greater);
        assert_eq!(ord.compare(&w("f^4"), &w("f^4")).unwrap(), Ordering::Equal);
        assert!(ord.compare(&w("a"), &w("b")).is_err());
    }

    #[test]
    fn element_arithmetic_over_gf2() {
        let q = m11_quiver();
        let f2 = Field::gf2();
        let x = q.parse_element(f2, "e*b*c + f*e").unwrap();
        assert!(x.add(&x).unwrap().is_zero());
        let y = q.parse_element(f2, "a").unwrap();
        assert!(x.add(&y).is_err());
        let p = q.parse_element(f2, "b").unwrap().mul(&q.parse_element(f2, "c").unwrap()).unwrap();
        assert_eq!(q.format_element(&p), "b*c");
        assert!(y.mul(&q.parse_element(f2, "b").unwrap()).is_err());
    }

    #[test]
    fn coefficients_reduce_mod_p() {
        let q = m11_quiver();
        let f3 = Field::new(3).unwrap();
        let x = q.parse_element(f3, "2*a + a").unwrap();
        assert!(x.is_zero());
        let y = q.parse_element(f3, "2*a*e + b*c").unwrap();
        assert_eq!(y.len(), 2);
        assert_eq!(q.parse_element(f3, &q.format_element(&y)).unwrap(), y);
    }
}
