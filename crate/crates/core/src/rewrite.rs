//! Noncommutative rewriting modulo a two-sided ideal of path relations.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::quiver::{Element, MonomialOrder, Quiver, Word};

pub const DEFAULT_STEP_CAP: usize = 4 * 1024;

/// `lhs -> rhs`, with `lhs` greater than every word of `rhs`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RewriteRule {
    pub lhs: Word,
    pub rhs: Element,
}

impl RewriteRule {
    pub fn new(order: &MonomialOrder, lhs: Word, rhs: Element) -> Result<Self> {
        if lhs.is_empty() {
            return Err(Error::InvalidRule("a vertex idempotent cannot be rewritten".into()));
        }
        for (w, _) in rhs.terms() {
            if !w.same_endpoints(&lhs) {
                return Err(Error::InvalidRule("both sides must share source and target".into()));
            }
            if order.cmp_words(&lhs, w) != Ordering::Greater {
                return Err(Error::InvalidRule("left side is not the leading word".into()));
            }
        }
        Ok(RewriteRule { lhs, rhs })
    }

    /// Orients the relation `x = 0` by its leading word. `None` for `x = 0`.
    pub fn from_relation(order: &MonomialOrder, x: &Element) -> Option<Self> {
        let lead = order.leading_word(x)?.clone();
        let f = x.field();
        let inv = f.inv(x.coefficient(&lead));
        let mut rhs = Element::zero(f);
        for (w, c) in x.terms() {
            if *w != lead {
                rhs.add_term(w.clone(), f.neg(f.mul(c, inv)));
            }
        }
        Some(RewriteRule { lhs: lead, rhs })
    }

    /// The relation `lhs - rhs` as an element.
    pub fn as_element(&self, field: Field) -> Element {
        let mut x = self.rhs.scale(field.neg(1));
        x.add_term(self.lhs.clone(), 1);
        x
    }

    pub fn format(&self, q: &Quiver) -> String {
        format!("{} = {}", q.format_word(&self.lhs), q.format_element(&self.rhs))
    }
}

/// A quiver, a monomial order and an oriented rule set.
#[derive(Debug, Clone)]
pub struct RewriteSystem {
    quiver: Quiver,
    field: Field,
    order: MonomialOrder,
    rules: Vec<RewriteRule>,
    /// Rules indexed by the first arrow of their left side, shortest first.
    by_first: Vec<Vec<usize>>,
    step_cap: usize,
}

impl RewriteSystem {
    pub fn new(quiver: Quiver, field: Field, order: MonomialOrder, rules: Vec<RewriteRule>) -> Result<Self> {
        for r in &rules {
            if r.rhs.field() != field {
                return Err(Error::FieldMismatch(field.characteristic(), r.rhs.field().characteristic()));
            }
            RewriteRule::new(&order, r.lhs.clone(), r.rhs.clone())?;
        }
        let mut by_first = vec![Vec::new(); quiver.arrows().len()];
        for (i, r) in rules.iter().enumerate() {
            by_first[r.lhs.arrows()[0] as usize].push(i);
        }
        for list in &mut by_first {
            list.sort_by_key(|&i| (rules[i].lhs.len(), i));
        }
        Ok(RewriteSystem { quiver, field, order, rules, by_first, step_cap: DEFAULT_STEP_CAP })
    }

    /// Orients each relation by the order; relations that are zero are dropped.
    pub fn from_relations(quiver: Quiver, field: Field, order: MonomialOrder, relations: &[Element]) -> Result<Self> {
        let rules = relations.iter().filter_map(|x| RewriteRule::from_relation(&order, x)).collect();
        Self::new(quiver, field, order, rules)
    }

    pub fn with_step_cap(mut self, cap: usize) -> Self {
        self.step_cap = cap.max(1);
        self
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn rules(&self) -> &[RewriteRule] {
        &self.rules
    }

    pub fn step_cap(&self) -> usize {
        self.step_cap
    }

    /// Leftmost reducible position, shortest rule first at a tie.
    pub fn find_redex(&self, w: &Word) -> Option<(usize, usize)> {
        let arrows = w.arrows();
        for pos in 0..arrows.len() {
            for &ri in &self.by_first[arrows[pos] as usize] {
                let lhs = self.rules[ri].lhs.arrows();
                if arrows.len() - pos >= lhs.len() && &arrows[pos..pos + lhs.len()] == lhs {
                    return Some((pos, ri));
                }
            }
        }
        None
    }

    pub fn is_reducible(&self, w: &Word) -> bool {
        self.find_redex(w).is_some()
    }

    /// Whether some rule matches a factor of `w` ending at its last arrow.
    fn suffix_reducible(&self, w: &Word) -> bool {
        let arrows = w.arrows();
        let n = arrows.len();
        self.rules.iter().any(|r| {
            let l = r.lhs.arrows();
            l.len() <= n && &arrows[n - l.len()..] == l
        })
    }

    pub fn normal_form(&self, x: &Element) -> Result<Element> {
        let f = self.field;
        let mut work: BTreeMap<_, (Word, u32)> = BTreeMap::new();
        for (w, c) in x.terms() {
            work.insert(self.order.sort_key(w), (w.clone(), c));
        }
        let mut out = Element::zero(f);
        let mut steps = 0usize;
        while let Some((_, (w, c))) = work.pop_last() {
            match self.find_redex(&w) {
                None => out.add_term(w, c),
                Some((pos, ri)) => {
                    steps += 1;
                    if steps > self.step_cap {
                        return Err(Error::StepCap(self.step_cap));
                    }
                    let rule = &self.rules[ri];
                    let head = w.factor(&self.quiver, 0, pos);
                    let tail = w.factor(&self.quiver, pos + rule.lhs.len(), w.len());
                    for (r, rc) in rule.rhs.terms() {
                        let nw = head.concat(r).concat(&tail);
                        let coef = f.mul(c, rc);
                        let key = self.order.sort_key(&nw);
                        match work.entry(key) {
                            std::collections::btree_map::Entry::Vacant(e) => {
                                e.insert((nw, coef));
                            }
                            std::collections::btree_map::Entry::Occupied(mut e) => {
                                let s = f.add(e.get().1, coef);
                                if s == 0 {
                                    e.remove();
                                } else {
                                    e.get_mut().1 = s;
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn normal_form_word(&self, w: &Word) -> Result<Element> {
        self.normal_form(&Element::from_word(self.field, w.clone()))
    }

    /// Whether `x` lies in the ideal; exact when the system is complete.
    pub fn reduces_to_zero(&self, x: &Element) -> Result<bool> {
        Ok(self.normal_form(x)?.is_zero())
    }

    /// All irreducible words. Fails if new ones keep appearing past the step cap in length.
    pub fn standard_monomials(&self) -> Result<StandardMonomialBasis> {
        let mut words: Vec<Word> = (0..self.quiver.vertices().len()).map(Word::vertex).collect();
        let mut frontier = words.clone();
        let mut length = 0usize;
        while !frontier.is_empty() {
            length += 1;
            if length > self.step_cap {
                return Err(Error::NotFiniteDimensional(length));
            }
            frontier = self.extend_irreducible(&frontier, |_| true);
            words.extend(frontier.iter().cloned());
        }
        Ok(StandardMonomialBasis::new(&self.quiver, &self.order, words))
    }

    /// Irreducible words of degree at most `bound`.
    pub fn standard_monomials_to_degree(&self, bound: u32) -> StandardMonomialBasis {
        let mut words: Vec<Word> = (0..self.quiver.vertices().len()).map(Word::vertex).collect();
        let mut frontier = words.clone();
        while !frontier.is_empty() {
            frontier = self.extend_irreducible(&frontier, |w| w.degree(&self.quiver) <= bound);
            words.extend(frontier.iter().cloned());
        }
        StandardMonomialBasis::new(&self.quiver, &self.order, words)
    }

    fn extend_irreducible(&self, frontier: &[Word], keep: impl Fn(&Word) -> bool) -> Vec<Word> {
        let mut next = Vec::new();
        for w in frontier {
            for a in self.quiver.arrows_from(w.target()) {
                let nw = w.concat(&self.quiver.arrow_word(a));
                if keep(&nw) && !self.suffix_reducible(&nw) {
                    next.push(nw);
                }
            }
        }
        next
    }

    /// Overlap ambiguities between rule left sides, with their minimal superwords.
    pub fn overlaps(&self) -> Vec<Overlap> {
        let mut out = Vec::new();
        for (i, ri) in self.rules.iter().enumerate() {
            let li = ri.lhs.arrows();
            for (j, rj) in self.rules.iter().enumerate() {
                let lj = rj.lhs.arrows();
                for k in 1..li.len().min(lj.len()) {
                    if li[li.len() - k..] == lj[..k] {
                        let tail = rj.lhs.factor(&self.quiver, k, lj.len());
                        out.push(Overlap { first: i, second: j, word: ri.lhs.concat(&tail), offset: li.len() - k });
                    }
                }
                if i != j && lj.len() <= li.len() {
                    if let Some(pos) = ri.lhs.find_factor(&rj.lhs) {
                        if lj.len() < li.len() || pos != 0 {
                            out.push(Overlap { first: i, second: j, word: ri.lhs.clone(), offset: pos });
                        }
                    }
                }
            }
        }
        out
    }

    /// The difference of the two one-step rewrites of the overlap word, before reduction.
    pub fn s_polynomial(&self, ov: &Overlap) -> Element {
        let q = &self.quiver;
        let r1 = &self.rules[ov.first];
        let r2 = &self.rules[ov.second];
        let w = &ov.word;
        let tail1 = w.factor(q, r1.lhs.len(), w.len());
        let head2 = w.factor(q, 0, ov.offset);
        let tail2 = w.factor(q, ov.offset + r2.lhs.len(), w.len());
        let mut s = Element::zero(self.field);
        for (x, c) in r1.rhs.terms() {
            s.add_term(x.concat(&tail1), c);
        }
        for (x, c) in r2.rhs.terms() {
            s.add_term(head2.concat(x).concat(&tail2), self.field.neg(c));
        }
        s
    }

    pub fn s_polynomial_reduces(&self, ov: &Overlap) -> Result<bool> {
        self.reduces_to_zero(&self.s_polynomial(ov))
    }

    /// Overlaps (up to a degree bound on the overlap word) whose S-polynomial does not reduce to zero.
    pub fn failing_overlaps(&self, bound: Option<u32>) -> Result<Vec<Overlap>> {
        let mut bad = Vec::new();
        for ov in self.overlaps() {
            if bound.is_some_and(|b| ov.word.degree(&self.quiver) > b) {
                continue;
            }
            if !self.s_polynomial_reduces(&ov)? {
                bad.push(ov);
            }
        }
        Ok(bad)
    }

    pub fn is_groebner(&self, bound: Option<u32>) -> Result<bool> {
        Ok(self.failing_overlaps(bound)?.is_empty())
    }

    /// Rules made pairwise non-divisible with fully reduced right sides.
    pub fn inter_reduce(&self) -> Result<RewriteSystem> {
        let mut rules: Vec<RewriteRule> = self.rules.clone();
        loop {
            let mut changed = false;
            let mut i = 0;
            while i < rules.len() {
                let divisible = rules.iter().enumerate().any(|(j, r)| j != i && rules[i].lhs.contains_factor(&r.lhs) && (r.lhs != rules[i].lhs || j < i));
                if divisible {
                    let removed = rules.remove(i);
                    let rest = RewriteSystem::new(self.quiver.clone(), self.field, self.order.clone(), rules.clone())?.with_step_cap(self.step_cap);
                    let x = rest.normal_form(&removed.as_element(self.field))?;
                    if let Some(r) = RewriteRule::from_relation(&self.order, &x) {
                        rules.push(r);
                    }
                    changed = true;
                    break;
                }
                i += 1;
            }
            if !changed {
                break;
            }
        }
        let sys = RewriteSystem::new(self.quiver.clone(), self.field, self.order.clone(), rules.clone())?.with_step_cap(self.step_cap);
        let mut reduced = Vec::with_capacity(rules.len());
        for r in &rules {
            reduced.push(RewriteRule { lhs: r.lhs.clone(), rhs: sys.normal_form(&r.rhs)? });
        }
        reduced.sort_by_key(|a| self.order.sort_key(&a.lhs));
        Ok(RewriteSystem::new(self.quiver.clone(), self.field, self.order.clone(), reduced)?.with_step_cap(self.step_cap))
    }

    /// Completion of this system, considering overlap words of degree at most `bound`.
    pub fn complete(&self, bound: u32) -> Result<RewriteSystem> {
        let mut sys = self.inter_reduce()?;
        let mut rounds = 0usize;
        loop {
            rounds += 1;
            if rounds > self.step_cap {
                return Err(Error::StepCap(self.step_cap));
            }
            let mut new_rule = None;
            let mut overlaps = sys.overlaps();
            overlaps.retain(|ov| ov.word.degree(&sys.quiver) <= bound);
            overlaps.sort_by_key(|ov| (ov.word.degree(&sys.quiver), sys.order.sort_key(&ov.word), ov.first, ov.second));
            for ov in &overlaps {
                let x = sys.normal_form(&sys.s_polynomial(ov))?;
                if let Some(r) = RewriteRule::from_relation(&sys.order, &x) {
                    new_rule = Some(r);
                    break;
                }
            }
            match new_rule {
                None => return Ok(sys),
                Some(r) => {
                    let mut rules = sys.rules.clone();
                    rules.push(r);
                    sys = RewriteSystem::new(sys.quiver.clone(), sys.field, sys.order.clone(), rules)?.with_step_cap(self.step_cap).inter_reduce()?;
                }
            }
        }
    }

    /// Whether the rules have the same left sides and right sides as `other`, ignoring rule order.
    pub fn same_rules(&self, other: &RewriteSystem) -> bool {
        let mut a: Vec<_> = self.rules.iter().map(|r| (r.lhs.clone(), r.rhs.clone())).collect();
        let mut b: Vec<_> = other.rules.iter().map(|r| (r.lhs.clone(), r.rhs.clone())).collect();
        let key = |x: &(Word, Element)| self.order.sort_key(&x.0);
        a.sort_by_key(key);
        b.sort_by_key(key);
        a == b
    }
}

/// Completes `rules` to degree `bound`.
pub fn buchberger_complete(quiver: Quiver, field: Field, order: MonomialOrder, rules: Vec<RewriteRule>, bound: u32) -> Result<RewriteSystem> {
    RewriteSystem::new(quiver, field, order, rules)?.complete(bound)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinimalityReport {
    pub minimal: bool,
    /// Indices of rules that follow from the others.
    pub redundant: Vec<usize>,
}

/// Checks that no rule lies in the ideal generated by the others (completed up to its degree).
pub fn relations_minimal(quiver: &Quiver, field: Field, order: &MonomialOrder, rules: &[RewriteRule]) -> Result<MinimalityReport> {
    let mut redundant = Vec::new();
    for (i, r) in rules.iter().enumerate() {
        let others: Vec<RewriteRule> = rules.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, r)| r.clone()).collect();
        let deg = r.lhs.degree(quiver);
        let sys = buchberger_complete(quiver.clone(), field, order.clone(), others, deg)?;
        if sys.reduces_to_zero(&r.as_element(field))? {
            redundant.push(i);
        }
    }
    Ok(MinimalityReport { minimal: redundant.is_empty(), redundant })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Overlap {
    pub first: usize,
    pub second: usize,
    pub word: Word,
    /// Where the second rule's left side starts inside `word`.
    pub offset: usize,
}

/// Irreducible words grouped by endpoints.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StandardMonomialBasis {
    vertices: usize,
    /// Indexed by `source * vertices + target`.
    groups: Vec<Vec<Word>>,
    /// Indexed by source vertex, in the listing order.
    by_source: Vec<Vec<Word>>,
    degrees: Vec<Vec<u32>>,
}

impl StandardMonomialBasis {
    fn new(q: &Quiver, order: &MonomialOrder, mut words: Vec<Word>) -> Self {
        let n = q.vertices().len();
        words.sort_by(|a, b| listing_cmp(order, a, b));
        let mut groups = vec![Vec::new(); n * n];
        let mut by_source = vec![Vec::new(); n];
        let mut degrees = vec![Vec::new(); n];
        for w in words {
            let d = w.degree(q) as usize;
            let deg = &mut degrees[w.source()];
            if deg.len() <= d {
                deg.resize(d + 1, 0);
            }
            deg[d] += 1;
            groups[w.source() * n + w.target()].push(w.clone());
            by_source[w.source()].push(w);
        }
        StandardMonomialBasis { vertices: n, groups, by_source, degrees }
    }

    pub fn between(&self, source: usize, target: usize) -> &[Word] {
        &self.groups[source * self.vertices + target]
    }

    /// Basis of the projective `P_v`: all standard monomials starting at `v`.
    pub fn from_source(&self, v: usize) -> &[Word] {
        &self.by_source[v]
    }

    /// Number of standard monomials from `v` per degree.
    pub fn degree_counts(&self, v: usize) -> &[u32] {
        &self.degrees[v]
    }

    pub fn total(&self) -> usize {
        self.by_source.iter().map(Vec::len).sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Word> {
        self.by_source.iter().flatten()
    }
}

/// Listing order for bases: by length, then arrow by arrow from the left,
/// most significant arrow first.
pub fn listing_cmp(order: &MonomialOrder, a: &Word, b: &Word) -> Ordering {
    a.source().cmp(&b.source()).then(a.len().cmp(&b.len())).then_with(|| {
        for (x, y) in a.arrows().iter().zip(b.arrows()) {
            let o = order.rank(*y as usize).cmp(&order.rank(*x as usize));
            if o != Ordering::Equal {
                return o;
            }
        }
        a.target().cmp(&b.target())
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::OrderKind;

    fn loop_quiver() -> Quiver {
        Quiver::new(["V"], [("x".to_string(), "V".to_string(), "V".to_string(), 1)]).unwrap()
    }

    #[test]
    fn truncated_polynomial_ring() {
        let q = loop_quiver();
        let f = Field::gf2();
        let ord = MonomialOrder::new(OrderKind::DegreeLlex, &q, &["x"]).unwrap();
        let rel = q.parse_element(f, "x^3").unwrap();
        let sys = RewriteSystem::from_relations(q.clone(), f, ord, &[rel]).unwrap();
        assert_eq!(sys.standard_monomials().unwrap().total(), 3);
        assert!(sys.normal_form(&q.parse_element(f, "x^5").unwrap()).unwrap().is_zero());
        let self_overlaps: Vec<_> = sys.overlaps().iter().map(|o| o.word.len()).collect();
        assert_eq!(self_overlaps, vec![5, 4]);
        assert!(sys.is_groebner(None).unwrap());
    }

    #[test]
    fn infinite_algebra_is_detected() {
        let q = loop_quiver();
        let f = Field::gf2();
        let ord = MonomialOrder::new(OrderKind::DegreeLlex, &q, &["x"]).unwrap();
        let sys = RewriteSystem::new(q, f, ord, vec![]).unwrap().with_step_cap(50);
        assert_eq!(sys.standard_monomials().unwrap_err(), Error::NotFiniteDimensional(51));
        assert_eq!(sys.standard_monomials_to_degree(7).total(), 8);
    }

    #[test]
    fn rule_must_be_oriented() {
        let q = loop_quiver();
        let f = Field::gf2();
        let ord = MonomialOrder::new(OrderKind::DegreeLlex, &q, &["x"]).unwrap();
        let lhs = q.parse_word("x").unwrap();
        let rhs = q.parse_element(f, "x^2").unwrap();
        assert!(RewriteRule::new(&ord, lhs, rhs).is_err());
    }

    #[test]
    fn completion_adds_missing_consequence() {
        let q = Quiver::new(["V"], ["x", "y"].iter().map(|l| (l.to_string(), "V".to_string(), "V".to_string(), 1))).unwrap();
        let f = Field::new(3).unwrap();
        let ord = MonomialOrder::new(OrderKind::DegreeLlex, &q, &["x", "y"]).unwrap();
        let rels = [q.parse_element(f, "y*x").unwrap(), q.parse_element(f, "x*x + 2*y*y").unwrap()];
        let sys = RewriteSystem::from_relations(q.clone(), f, ord, &rels).unwrap();
        assert!(!sys.is_groebner(Some(3)).unwrap());
        let done = sys.complete(4).unwrap();
        assert!(done.is_groebner(Some(4)).unwrap());
        assert!(done.rules().len() > 2);
    }
}
