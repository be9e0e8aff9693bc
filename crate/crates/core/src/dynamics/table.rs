use serde::Serialize;

use crate::dynamics::entropy::{entropy_estimate, required_depth, EntropySummary, Verdict, DEFAULT_BUDGET};
use crate::dynamics::induced::InducedMap;
use crate::dynamics::Masa;
use crate::endomorphism::EndomorphismSpec;
use crate::error::{Error, Result};

/// Noncommutative entropy of `ρ`, as far as the pipeline can certify it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Hte {
    /// Lower bound `log 2` from a masa meets the upper bound `(k-1) log N`.
    Log2,
    /// Lower bound `log 2`, upper bound `(k-1) log N` larger.
    AtLeastLog2,
    /// `ρ(F_{p,l}) ⊆ F_{p,l}`: the automorphism case, entropy zero.
    Zero,
    Unknown,
}

impl Hte {
    pub fn as_str(self) -> &'static str {
        match self {
            Hte::Log2 => "log2",
            Hte::AtLeastLog2 => ">=log2",
            Hte::Zero => "0",
            Hte::Unknown => "?",
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct ClassifyOptions {
    pub p_max: usize,
    pub n_max: usize,
    pub budget: u64,
    /// Bidegrees `1..=bidegree_max` checked for the automorphism premise.
    pub bidegree_max: usize,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        ClassifyOptions {
            p_max: 4,
            n_max: 16,
            budget: DEFAULT_BUDGET,
            bidegree_max: 4,
        }
    }
}

/// Outcome of the entropy pipeline for one endomorphism.
#[derive(Clone, Debug, Serialize)]
pub struct Classification {
    pub label: String,
    /// Verdict on the standard masa `C_N`.
    pub hte_c2: Verdict,
    pub hte: Hte,
    /// The masa whose restriction fixed `hte`.
    pub masa_used: Masa,
    pub preserves_bidegrees: bool,
    pub standard: EntropySummary,
    pub ef: Option<EntropySummary>,
}

/// Restriction entropy on `C_N`, then on `C_{E,F}` when that is zero or
/// inconclusive and `ρ` is not an automorphism of the filtration.
pub fn classify(e: &EndomorphismSpec, opts: &ClassifyOptions) -> Result<Classification> {
    let depth = required_depth(e.rank(), opts.p_max, opts.n_max);
    let label = e.label();
    let standard_map = InducedMap::standard(e, depth, opts.budget)?;
    let standard = entropy_estimate(&standard_map, &label, opts.p_max, opts.n_max, opts.budget)?;
    drop(standard_map);
    let hte_c2 = standard.verdict;
    let upper_is_log2 = e.rank() == 2 && e.n() == 2;
    let lower_bound = |masa: Masa| {
        if upper_is_log2 || e.rank() == 1 {
            (Hte::Log2, masa)
        } else {
            (Hte::AtLeastLog2, masa)
        }
    };
    let preserves = hte_c2 != Verdict::Log2 && e.preserves_bidegrees(opts.bidegree_max);
    let mut ef = None;
    let (hte, masa_used) = match hte_c2 {
        Verdict::Log2 => lower_bound(Masa::Standard),
        _ if preserves && hte_c2 == Verdict::Zero => (Hte::Zero, Masa::Standard),
        _ if e.n() == 2 => match InducedMap::ef(e, depth, opts.budget) {
            Ok(map) => {
                let summary = entropy_estimate(&map, &label, opts.p_max, opts.n_max, opts.budget)?;
                let verdict = summary.verdict;
                ef = Some(summary);
                if verdict == Verdict::Log2 {
                    lower_bound(Masa::EF)
                } else {
                    (Hte::Unknown, Masa::Standard)
                }
            }
            Err(Error::MasaNotInvariant(_)) => (Hte::Unknown, Masa::Standard),
            Err(err) => return Err(err),
        },
        _ => (Hte::Unknown, Masa::Standard),
    };
    Ok(Classification {
        label,
        hte_c2,
        hte,
        masa_used,
        preserves_bidegrees: preserves,
        standard,
        ef,
    })
}
