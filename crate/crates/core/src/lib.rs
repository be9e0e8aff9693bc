//! Exact symbolic engine for polynomial elements and endomorphisms of the
//! Cuntz algebra `O_N`, with the induced dynamics on commutative subalgebras
//! and topological entropy by cylinder-join counting.

pub mod checks;
pub mod dynamics;
pub mod element;
pub mod endomorphism;
pub mod error;
pub mod matrix;
pub mod permutation;
pub mod random;
pub mod scalar;
pub mod text;
pub mod word;

pub use element::{AlgebraElement, Monomial};
pub use endomorphism::EndomorphismSpec;
pub use permutation::Permutation;
pub use error::{Error, Result};
pub use scalar::Scalar;
pub use text::parse_element;
pub use word::Word;
