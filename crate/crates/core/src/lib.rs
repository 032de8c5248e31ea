//! Exact symbol calculus on the standard contact space `R^{2n+1}`.
//!
//! Symbols are polynomials in the base coordinates `(q, p, t)` and fiber
//! coordinates `ξ`, carrying a density weight. The crate implements the
//! contraction `i(α)` with the contact form, the extended contact Hamiltonian
//! `X`, the `sl(2)` they generate, projectors and sections splitting the
//! symbol spaces, and a verification harness that checks all identities with
//! exact rational arithmetic.
//!
//! ```
//! use contactsym::{int, Grading, Poly, Symbol, Vars};
//! use contactsym::decomposition::{decompose, reconstruct};
//!
//! let v = Vars::new(1);
//! let u = Symbol::new(Poly::var(1, v.xi_t()), int(1), Grading::R).unwrap();
//! let parts = decompose(&u).unwrap();
//! assert_eq!(reconstruct(&parts).unwrap(), u);
//! ```

pub mod contact;
pub mod decomposition;
pub mod error;
pub mod exactpoly;
pub mod format;
pub mod linalg;
pub mod operators;
pub mod random;
pub mod slices;
pub mod symbols;
pub mod verify;

pub use error::{Error, ParseError, Result};
pub use exactpoly::{int, parse_rational, rat, Monomial, Poly, Rational, Vars};
pub use symbols::{Grading, PolyVectorField, Symbol};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/polynomials.md")]
    mod polynomials {}
    #[doc = include_str!("../../../book/src/symbols.md")]
    mod symbols {}
    #[doc = include_str!("../../../book/src/contact.md")]
    mod contact {}
    #[doc = include_str!("../../../book/src/sl2.md")]
    mod sl2 {}
    #[doc = include_str!("../../../book/src/decomposition.md")]
    mod decomposition {}
    #[doc = include_str!("../../../book/src/filtration.md")]
    mod filtration {}
    #[doc = include_str!("../../../book/src/file-format.md")]
    mod file_format {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
