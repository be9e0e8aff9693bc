use rayon::prelude::*;
use serde::ser::{SerializeStruct, Serializer};
use serde::Serialize;

use crate::dynamics::induced::{check_budget, InducedMap};
use crate::dynamics::Masa;
use crate::error::{Error, Result};

/// Default cap on the number of words enumerated by one join count.
pub const DEFAULT_BUDGET: u64 = 1 << 22;

/// `N(n, p)`: the number of distinct itineraries
/// `(w|_p, (Tw)|_p, …, (T^{n-1}w)|_p)` over `w ∈ 𝒥_{p+(n-1)(k-1)}`.
pub fn join_count(map: &InducedMap, p: usize, n: usize, budget: u64) -> Result<u64> {
    if p == 0 || n == 0 {
        return Err(Error::Invalid("join counts need p, n >= 1".into()));
    }
    let (alpha, step) = (map.n() as u64, map.rank() - 1);
    let len = p + (n - 1) * step;
    check_budget(map.n(), len, budget)?;
    if n > 1 && len - step > map.depth() {
        return Err(Error::Invalid(format!(
            "induced map has depth {}, need {}",
            map.depth(),
            len - step
        )));
    }
    let total = alpha.pow(len as u32);
    let block = alpha.pow(p as u32);
    let itinerary = |mut x: u64, out: &mut dyn FnMut(u64)| {
        let mut cur = len;
        for i in 0..n {
            out(x / alpha.pow((cur - p) as u32));
            if i + 1 < n {
                let q = cur - step;
                x = map.raw_table(q)[x as usize] as u64;
                cur = q;
            }
        }
    };
    let fits = (block as f64).log2() * n as f64 <= 127.0;
    let count = if fits {
        let mut keys: Vec<u128> = (0..total)
            .into_par_iter()
            .map(|x| {
                let mut key = 0u128;
                itinerary(x, &mut |c| key = key * block as u128 + c as u128);
                key
            })
            .collect();
        keys.par_sort_unstable();
        keys.dedup();
        keys.len()
    } else {
        let mut keys: Vec<Vec<u32>> = (0..total)
            .into_par_iter()
            .map(|x| {
                let mut key = Vec::with_capacity(n);
                itinerary(x, &mut |c| key.push(c as u32));
                key
            })
            .collect();
        keys.par_sort_unstable();
        keys.dedup();
        keys.len()
    };
    Ok(count as u64)
}

/// Ordered by value, so the supremum over `p` is the maximum.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Zero,
    Inconclusive,
    Log2,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Zero => "zero",
            Verdict::Inconclusive => "inconclusive",
            Verdict::Log2 => "log2",
        }
    }
}

/// `log₂ N(n) - log₂ N(n-1)`: exact when both counts are powers of two.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Increment {
    Exact(i64),
    Approx(f64),
}

impl Increment {
    fn between(prev: u64, next: u64) -> Self {
        if prev.is_power_of_two() && next.is_power_of_two() {
            Increment::Exact(next.trailing_zeros() as i64 - prev.trailing_zeros() as i64)
        } else {
            Increment::Approx((next as f64).log2() - (prev as f64).log2())
        }
    }

    pub fn as_f64(self) -> f64 {
        match self {
            Increment::Exact(v) => v as f64,
            Increment::Approx(v) => v,
        }
    }
}

impl Serialize for Increment {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Increment::Exact(v) => s.serialize_i64(*v),
            Increment::Approx(v) => s.serialize_f64(*v),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct EntropyReport {
    pub perm: String,
    pub masa: Masa,
    pub p: usize,
    pub counts: Vec<(usize, u64)>,
    pub increments: Vec<Increment>,
    pub verdict: Verdict,
    pub estimate_nats: f64,
}

impl EntropyReport {
    /// Builds the verdict from counts at `n = 1, 2, …`.
    pub fn from_counts(perm: String, masa: Masa, p: usize, counts: Vec<(usize, u64)>) -> Self {
        let increments: Vec<Increment> = counts
            .windows(2)
            .map(|w| Increment::between(w[0].1, w[1].1))
            .collect();
        let verdict = if increments.len() < 4 {
            Verdict::Inconclusive
        } else {
            let tail = &increments[increments.len() - 4..];
            let last = &counts[counts.len() - 5..];
            if tail.iter().all(|i| *i == Increment::Exact(1)) {
                Verdict::Log2
            } else if last.iter().all(|c| c.1 == last[0].1) {
                Verdict::Zero
            } else {
                Verdict::Inconclusive
            }
        };
        let estimate_nats = match verdict {
            Verdict::Log2 => std::f64::consts::LN_2,
            Verdict::Zero => 0.0,
            Verdict::Inconclusive => slope(&counts),
        };
        EntropyReport {
            perm,
            masa,
            p,
            counts,
            increments,
            verdict,
            estimate_nats,
        }
    }
}

/// Least-squares slope of `ln N(n)` against `n`.
fn slope(counts: &[(usize, u64)]) -> f64 {
    if counts.len() < 2 {
        return 0.0;
    }
    let pts: Vec<(f64, f64)> = counts.iter().map(|&(n, c)| (n as f64, (c as f64).ln())).collect();
    let m = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / m;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / m;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    sxy / sxx
}

impl Serialize for EntropyReport {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let counts: Vec<(usize, String)> =
            self.counts.iter().map(|&(n, c)| (n, c.to_string())).collect();
        let mut st = s.serialize_struct("EntropyReport", 7)?;
        st.serialize_field("perm", &self.perm)?;
        st.serialize_field("masa", &self.masa)?;
        st.serialize_field("p", &self.p)?;
        st.serialize_field("counts", &counts)?;
        st.serialize_field("increments", &self.increments)?;
        st.serialize_field("verdict", &self.verdict)?;
        st.serialize_field("estimate_nats", &self.estimate_nats)?;
        st.end()
    }
}

/// Reports for `p = 1..=p_max` and their supremum.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EntropySummary {
    pub reports: Vec<EntropyReport>,
    pub verdict: Verdict,
    pub estimate_nats: f64,
}

/// Counts `N(n, p)` for `n = 1..=n_max`, `p = 1..=p_max`.
pub fn entropy_estimate(
    map: &InducedMap,
    label: &str,
    p_max: usize,
    n_max: usize,
    budget: u64,
) -> Result<EntropySummary> {
    let reports = (1..=p_max)
        .map(|p| {
            let counts = (1..=n_max)
                .map(|n| Ok((n, join_count(map, p, n, budget)?)))
                .collect::<Result<Vec<_>>>()?;
            Ok(EntropyReport::from_counts(label.to_string(), map.masa(), p, counts))
        })
        .collect::<Result<Vec<_>>>()?;
    let verdict = reports
        .iter()
        .map(|r| r.verdict)
        .max()
        .unwrap_or(Verdict::Inconclusive);
    let estimate_nats = reports
        .iter()
        .map(|r| r.estimate_nats)
        .fold(0.0, f64::max);
    Ok(EntropySummary {
        reports,
        verdict,
        estimate_nats,
    })
}

/// Depth of induced map needed by [`entropy_estimate`].
pub fn required_depth(k: usize, p_max: usize, n_max: usize) -> usize {
    p_max + n_max.saturating_sub(2) * (k - 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::endomorphism::EndomorphismSpec;
    use crate::permutation::Permutation;

    fn map(c: &str, depth: usize) -> InducedMap {
        let e = EndomorphismSpec::from_permutation(Permutation::parse(c, 2, 2).unwrap());
        InducedMap::standard(&e, depth, DEFAULT_BUDGET).unwrap()
    }

    #[test]
    fn closed_form_counts() {
        let id = map("id", 12);
        let shift = map("(2 3)", 12);
        let flip = map("(1 3)(2 4)", 12);
        for p in 1..=3 {
            for n in 1..=8 {
                assert_eq!(join_count(&id, p, n, DEFAULT_BUDGET).unwrap(), 1 << p);
                assert_eq!(join_count(&flip, p, n, DEFAULT_BUDGET).unwrap(), 1 << p);
                assert_eq!(
                    join_count(&shift, p, n, DEFAULT_BUDGET).unwrap(),
                    1 << (p + n - 1)
                );
            }
        }
    }

    #[test]
    fn verdicts() {
        let depth = required_depth(2, 3, 12);
        let s = entropy_estimate(&map("(2 3)", depth), "(2 3)", 3, 12, DEFAULT_BUDGET).unwrap();
        assert_eq!(s.verdict, Verdict::Log2);
        assert!((s.estimate_nats - std::f64::consts::LN_2).abs() < 1e-15);
        let s = entropy_estimate(&map("(1 2)", depth), "(1 2)", 3, 12, DEFAULT_BUDGET).unwrap();
        assert_eq!(s.verdict, Verdict::Zero);
        let s = entropy_estimate(&map("(1 2 3)", depth), "(1 2 3)", 3, 12, DEFAULT_BUDGET).unwrap();
        assert_eq!(s.verdict, Verdict::Log2);
    }

    #[test]
    fn report_rules_and_json() {
        let r = EntropyReport::from_counts(
            "x".into(),
            Masa::Standard,
            1,
            vec![(1, 2), (2, 3), (3, 5), (4, 8), (5, 13), (6, 21)],
        );
        assert_eq!(r.verdict, Verdict::Inconclusive);
        assert!((r.estimate_nats - 0.48).abs() < 0.05);
        assert!(matches!(r.increments[0], Increment::Approx(_)));
        let short = EntropyReport::from_counts("x".into(), Masa::Standard, 1, vec![(1, 2), (2, 4)]);
        assert_eq!(short.verdict, Verdict::Inconclusive);
        let j = serde_json::to_value(&short).unwrap();
        assert_eq!(j["counts"], serde_json::json!([[1, "2"], [2, "4"]]));
        assert_eq!(j["increments"], serde_json::json!([1]));
        assert_eq!(j["masa"], "standard");
        assert_eq!(j["verdict"], "inconclusive");
    }

    #[test]
    fn budget_and_depth_errors() {
        let m = map("(1 2)", 4);
        assert!(matches!(join_count(&m, 2, 30, 1 << 10), Err(Error::BudgetExceeded { .. })));
        assert!(matches!(join_count(&m, 4, 4, DEFAULT_BUDGET), Err(Error::Invalid(_))));
    }
}
