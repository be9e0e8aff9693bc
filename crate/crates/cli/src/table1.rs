//! Expected values of the classical rank-2 entropy table for `O_2`.
//!
//! Images are written as in the source table: `s_{I,J}` is `s_I s_J^*`.

use cuntzlab_core::{AlgebraElement, Error, Result};

pub struct ExpectedRow {
    pub perm: &'static str,
    pub rho_s1: &'static str,
    pub rho_s2: &'static str,
    pub hte: &'static str,
    pub hte_c2: &'static str,
}

const fn row(
    perm: &'static str,
    rho_s1: &'static str,
    rho_s2: &'static str,
    hte: &'static str,
    hte_c2: &'static str,
) -> ExpectedRow {
    ExpectedRow {
        perm,
        rho_s1,
        rho_s2,
        hte,
        hte_c2,
    }
}

pub const EXPECTED: [ExpectedRow; 24] = [
    row("id", "s_{1}", "s_{2}", "0", "0"),
    row("(1 2)", "s_{12,1}+s_{11,2}", "s_{2}", "log2", "0"),
    row("(1 3)", "s_{21,1}+s_{12,2}", "s_{11,1}+s_{22,2}", "log2", "log2"),
    row("(1 4)", "s_{22,1}+s_{12,2}", "s_{21,1}+s_{11,2}", "log2", "log2"),
    row("(2 3)", "s_{11,1}+s_{21,2}", "s_{12,1}+s_{22,2}", "log2", "log2"),
    row("(2 4)", "s_{11,1}+s_{22,2}", "s_{21,1}+s_{12,2}", "log2", "log2"),
    row("(3 4)", "s_{1}", "s_{22,1}+s_{21,2}", "log2", "0"),
    row("(1 2 3)", "s_{12,1}+s_{21,2}", "s_{11,1}+s_{22,2}", "log2", "log2"),
    row("(1 3 2)", "s_{21,1}+s_{11,2}", "s_{12,1}+s_{22,2}", "log2", "log2"),
    row("(1 2 4)", "s_{12,1}+s_{22,2}", "s_{21,1}+s_{11,2}", "log2", "log2"),
    row("(1 4 2)", "s_{22,1}+s_{11,2}", "s_{21,1}+s_{12,2}", "log2", "log2"),
    row("(1 3 4)", "s_{21,1}+s_{12,2}", "s_{22,1}+s_{11,2}", "log2", "log2"),
    row("(1 4 3)", "s_{22,1}+s_{12,2}", "s_{11,1}+s_{21,2}", "log2", "log2"),
    row("(2 3 4)", "s_{11,1}+s_{21,2}", "s_{22,1}+s_{12,2}", "log2", "log2"),
    row("(2 4 3)", "s_{11,1}+s_{22,2}", "s_{12,1}+s_{21,2}", "log2", "log2"),
    row("(1 2 3 4)", "s_{12,1}+s_{21,2}", "s_{22,1}+s_{11,2}", "log2", "log2"),
    row("(1 2 4 3)", "s_{12,1}+s_{22,2}", "s_{11,1}+s_{21,2}", "log2", "log2"),
    row("(1 3 2 4)", "s_{2}", "s_{12,1}+s_{11,2}", "log2", "0"),
    row("(1 3 4 2)", "s_{21,1}+s_{11,2}", "s_{22,1}+s_{12,2}", "log2", "log2"),
    row("(1 4 2 3)", "s_{22,1}+s_{21,2}", "s_{1}", "log2", "0"),
    row("(1 4 3 2)", "s_{22,1}+s_{11,2}", "s_{12,1}+s_{21,2}", "log2", "log2"),
    row("(1 2)(3 4)", "s_{12,1}+s_{11,2}", "s_{22,1}+s_{21,2}", "0", "0"),
    row("(1 3)(2 4)", "s_{2}", "s_{1}", "0", "0"),
    row("(1 4)(2 3)", "s_{22,1}+s_{21,2}", "s_{12,1}+s_{11,2}", "0", "0"),
];

/// Reads a sum of `s_{I}` and `s_{I,J}` terms.
pub fn parse_table_element(text: &str) -> Result<AlgebraElement> {
    let mut out = String::new();
    for term in text.split('+') {
        let inner = term
            .trim()
            .strip_prefix("s_{")
            .and_then(|t| t.strip_suffix('}'))
            .ok_or_else(|| Error::Invalid(format!("bad table term '{term}'")))?;
        if !out.is_empty() {
            out.push_str(" + ");
        }
        match inner.split_once(',') {
            Some((i, j)) => out.push_str(&format!("s[{i}] t[{j}]")),
            None => out.push_str(&format!("s[{inner}]")),
        }
    }
    cuntzlab_core::parse_element(&out, 2)
}
