//! The basic algebra of the principal 2-block of the Mathieu group M11 and its Ext algebra.

use crate::algebra::Algebra;
use crate::error::Result;
use crate::field::Field;
use crate::quiver::{MonomialOrder, OrderKind, Quiver};
use crate::rewrite::{RewriteRule, RewriteSystem};

mod complexes;
mod verify;

pub use complexes::*;
pub use verify::*;

pub const VERTICES: [&str; 3] = ["K", "M", "N"];

pub const ARROWS: [(&str, &str, &str); 6] = [("a", "K", "N"), ("b", "K", "M"), ("c", "M", "K"), ("d", "M", "M"), ("e", "N", "K"), ("f", "N", "N")];

/// Arrow precedence, most significant first.
pub const PRECEDENCE: [&str; 6] = ["a", "b", "c", "d", "e", "f"];

/// The reduced Gröbner basis of the relation ideal, as `lhs -> rhs`.
pub const RELATIONS: [(&str, &str); 11] = [
    ("b*d", "0"),
    ("f*e", "e*b*c"),
    ("d*c", "0"),
    ("e*a", "f^3"),
    ("a*f", "b*c*a"),
    ("c*b", "0"),
    ("d^2", "c*a*e*b"),
    ("a*e*b*c", "b*c*a*e"),
    ("e*b*c*a", "f^4"),
    ("b*c*a*e*b", "0"),
    ("f^5", "0"),
];

/// Bases of the projective indecomposables, in listing order.
pub const PIM_BASES: [(&str, &[&str]); 3] = [
    ("K", &["1_K", "a", "b", "a*e", "b*c", "a*e*b", "b*c*a", "b*c*a*e"]),
    ("M", &["1_M", "c", "d", "c*a", "c*a*e", "c*a*e*b"]),
    ("N", &["1_N", "e", "f", "e*b", "f^2", "e*b*c", "f^3", "f^4"]),
];

pub fn field() -> Field {
    Field::gf2()
}

pub fn quiver() -> Quiver {
    Quiver::new(VERTICES, ARROWS.iter().map(|(l, s, t)| (l.to_string(), s.to_string(), t.to_string(), 1))).expect("static quiver is valid")
}

pub fn order(q: &Quiver) -> MonomialOrder {
    MonomialOrder::descending(OrderKind::ShortMajorRlex, q, &PRECEDENCE).expect("static order is valid")
}

pub fn system() -> Result<RewriteSystem> {
    let q = quiver();
    let ord = order(&q);
    let f = field();
    let rules = RELATIONS.iter().map(|(l, r)| RewriteRule::new(&ord, q.parse_word(l)?, q.parse_element(f, r)?)).collect::<Result<Vec<_>>>()?;
    RewriteSystem::new(q, f, ord, rules)
}

pub fn algebra() -> Result<Algebra> {
    Algebra::new(system()?)
}

/// Ext generators as `(name, S, T, degree)` for a class in `Ext^degree(S, T)`.
pub const EXT_GENERATORS: [(&str, &str, &str, usize); 8] = [
    ("alpha", "K", "N", 1),
    ("beta", "K", "M", 1),
    ("gamma", "M", "K", 1),
    ("delta", "M", "M", 1),
    ("epsilon", "N", "K", 1),
    ("phi", "N", "N", 1),
    ("kappa", "K", "K", 4),
    ("nu", "N", "N", 4),
];

/// Generator names from least to most significant.
pub const EXT_ORDER: [&str; 8] = ["alpha", "beta", "gamma", "delta", "epsilon", "phi", "kappa", "nu"];

/// The fourteen relations of the Ext algebra, leading word first.
pub const EXT_RELATIONS: [(&str, &str); 14] = [
    ("alpha*gamma", "0"),
    ("gamma*beta", "0"),
    ("epsilon*alpha", "0"),
    ("beta*epsilon", "0"),
    ("phi^2", "0"),
    ("epsilon*phi*alpha", "0"),
    ("phi*alpha*epsilon", "alpha*epsilon*phi"),
    ("delta^2*beta*gamma", "beta*gamma*delta^2"),
    ("gamma*delta^2*beta", "0"),
    ("kappa*gamma", "gamma*delta^4"),
    ("delta^4*beta", "beta*kappa"),
    ("nu*alpha", "alpha*kappa"),
    ("kappa*epsilon", "epsilon*nu"),
    ("nu*phi", "phi*nu"),
];

/// The Ext quiver: a class in `Ext^n(S, T)` is an arrow `T -> S` of degree `n`.
pub fn ext_quiver() -> Quiver {
    Quiver::new(VERTICES, EXT_GENERATORS.iter().map(|(l, s, t, d)| (l.to_string(), t.to_string(), s.to_string(), *d as u32))).expect("static quiver is valid")
}

pub fn ext_order(q: &Quiver) -> MonomialOrder {
    MonomialOrder::new(OrderKind::DegreeLlex, q, &EXT_ORDER).expect("static order is valid")
}

/// The stated presentation of the Ext algebra as a rewrite system.
pub fn ext_system() -> Result<RewriteSystem> {
    ext_system_without(&[])
}

/// The stated presentation with the listed relations (by index) left out.
pub fn ext_system_without(skip: &[usize]) -> Result<RewriteSystem> {
    let q = ext_quiver();
    let ord = ext_order(&q);
    let f = field();
    let mut rules = Vec::new();
    for (i, (l, r)) in EXT_RELATIONS.iter().enumerate() {
        if !skip.contains(&i) {
            rules.push(RewriteRule::new(&ord, q.parse_word(l)?, q.parse_element(f, r)?)?);
        }
    }
    RewriteSystem::new(q, f, ord, rules)
}
