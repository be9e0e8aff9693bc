//! Dynamics induced on commutative subalgebras.
//!
//! A masa-preserving endomorphism `ρ` satisfies `ρ(χ_{Z_v}) = χ_{Z_v} ∘ T`
//! for a continuous `T` on the Cantor set `{1..N}^ℕ`. Here `T` is extracted
//! as block tables `(Tw)|_p = table_p(w|_{p+k-1})`, and its topological
//! entropy is read off exact cylinder-join counts.

mod ef;
mod entropy;
mod induced;
mod oracle;
mod table;

use serde::Serialize;

pub use ef::{e_projection, ef_block_map, f_projection, flip_unitary, ProjectionWord};
pub use entropy::{
    entropy_estimate, join_count, required_depth, EntropyReport, EntropySummary, Increment, Verdict,
    DEFAULT_BUDGET,
};
pub use induced::{block_map, diagonal_invariant, BlockMapTable, InducedMap};
pub use oracle::{oracle_equivalence, oracle_map, oracle_pairings, select_case2, OracleId};
pub use table::{classify, Classification, ClassifyOptions, Hte};

/// Which commutative subalgebra the dynamics lives on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Masa {
    /// The diagonal `C_N` spanned by `s_v s_v^*`.
    #[serde(rename = "standard")]
    Standard,
    /// `C_{E,F}`, generated by the shifts of `E = ½(1+X)`, `F = ½(1-X)`.
    #[serde(rename = "EF")]
    EF,
}

impl Masa {
    pub fn as_str(self) -> &'static str {
        match self {
            Masa::Standard => "standard",
            Masa::EF => "EF",
        }
    }
}

impl std::str::FromStr for Masa {
    type Err = crate::Error;

    fn from_str(s: &str) -> crate::Result<Self> {
        match s {
            "standard" | "diag" | "C2" => Ok(Masa::Standard),
            "EF" | "ef" => Ok(Masa::EF),
            other => Err(crate::Error::Invalid(format!("unknown masa '{other}'"))),
        }
    }
}
