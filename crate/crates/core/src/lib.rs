//! Finite fibrations and their dual fibrations.
//!
//! Categories are closed composition tables ([`FinCategory`]) with
//! diagrammatic composition: `compose(f, g)` is "`f` then `g`". On top of
//! that the crate decides cartesianness by its bijection definition, builds
//! fibres and vh factorizations, constructs the dual fibration `X*` from
//! equivalence classes of vh spans, and checks the comparison isomorphisms
//! (`(X*)_A ~ (X_A)^op`, `X ~ X**`, and agreement with the Grothendieck
//! construction of the pointwise-opposite indexed category).
//!
//! ```
//! use dualfib::{dual::DualFib, gen};
//!
//! let s = gen::sign_fibration();
//! let d = DualFib::build(&s).unwrap();
//! assert_eq!(d.fib().total().num_arrows(), 6);
//! assert!(d.fib().is_fibration());
//! ```

pub mod category;
pub mod dual;
pub mod error;
pub mod fibration;
pub mod gen;
pub mod indexed;
pub mod io;
pub mod iso;
pub mod vh;

pub use category::{
    validate_category, validate_functor, ArrId, CategoryBuilder, FinCategory, FunctorData, ObjId, ValidationReport,
    Violation,
};
pub use dual::{double_dual_iso, Comorphism, DoubleDual, DualFib, VhSpan};
pub use error::{Error, Result};
pub use fibration::{FibSetup, Fibre, MissingLift};
pub use indexed::{check_dual_agreement, validate_indexed, IndexedCat};
pub use iso::CategoryIso;
pub use vh::VhPair;
