//! Minimal projective resolutions and Ext algebras of bounded quiver algebras over GF(p).

pub mod error;
pub mod field;
pub mod linalg;
pub mod quiver;
pub mod rewrite;

pub use error::{Error, Result};
pub use field::Field;
pub mod algebra;
pub mod ext;
pub mod io;
pub mod m11;
pub mod module;
pub mod resolution;
pub mod series;

#[cfg(test)]
pub(crate) mod testing {
    use crate::algebra::Algebra;
    use crate::io::AlgebraFile;

    /// Builds an algebra from file text; panics on malformed input.
    pub fn algebra(text: &str) -> Algebra {
        Algebra::new(AlgebraFile::parse(text).unwrap().system().unwrap()).unwrap()
    }

    /// `GF(p)[x]/(x^n)`.
    pub fn truncated(p: u32, n: u32) -> Algebra {
        algebra(&format!("field {p}\nvertex V\narrow x: V -> V\norder short-major-rlex x\nrelation x^{n} = 0\n"))
    }

    /// The path algebra of `A -> B -> C` with the composite killed.
    pub fn a3_radical_square_zero() -> Algebra {
        algebra("field 2\nvertex A B C\narrow x: A -> B\narrow y: B -> C\norder short-major-rlex x > y\nrelation x*y = 0\n")
    }
}
