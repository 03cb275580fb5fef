//! Closed-form Turán numbers `ex(p; T)`.
//!
//! Everything is exact `u64`/`i64` arithmetic. Every floor is taken on a
//! non-negative numerator, and numerators that are always even are divided
//! with an assertion rather than a floor.
//!
//! Orders are indexed by the residue decomposition `p = k(n-1) + r`,
//! `0 <= r <= n-2`. With `base(p, n) = ((n-2)p - r(n-1-r)) / 2` (the edge
//! count of `kK_{n-1} ∪ K_r`) the values are:
//!
//! * `T''` and `T'''`: `base + max(0, floor((r(n-4-r) - 3(n-1)) / 2))`.
//! * `T3`, split by residue:
//!   - `r ∈ {0,1,2,n-5,n-4,n-3,n-2}`: `base`;
//!   - `3 <= r <= n-9`: the same max form as `T''`;
//!   - `r = n-6`: `((n-2)p - 5(n-6)) / 2`;
//!   - `r = n-8`: `((n-2)p - 7n + 30) / 2 + max(floor(n/2), 13)`;
//!   - `r = n-7`: `((n-2)p - 6(n-7)) / 2 + max(floor((n-37)/4), 0)`.

use serde::Serialize;

use crate::error::DomainError;
use crate::graph::choose2;
use crate::trees::TreeFamily;

/// `p = k(n-1) + r` with `k >= 1` and `0 <= r <= n-2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ResidueDecomposition {
    pub k: u64,
    pub r: u64,
}

/// An extremal edge count together with the case that produced it.
///
/// `branch` strings are stable: reports and tests match on them.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ExtremalValue {
    pub value: u64,
    pub branch: &'static str,
}

/// The three spiders of maximum degree `n - 4`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Spider {
    T3,
    TDoublePrime,
    TTriplePrime,
}

impl Spider {
    pub const ALL: [Spider; 3] = [Spider::T3, Spider::TDoublePrime, Spider::TTriplePrime];

    pub fn tree(self, n: usize) -> TreeFamily {
        match self {
            Spider::T3 => TreeFamily::T3(n),
            Spider::TDoublePrime => TreeFamily::TDoublePrime(n),
            Spider::TTriplePrime => TreeFamily::TTriplePrime(n),
        }
    }

    pub fn tag(self) -> &'static str {
        match self {
            Spider::T3 => "t3",
            Spider::TDoublePrime => "tpp",
            Spider::TTriplePrime => "tppp",
        }
    }

    pub fn from_tag(tag: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|s| s.tag() == tag)
    }

    /// Smallest `n` for which the closed form is asserted on every residue.
    pub fn min_n(self) -> u64 {
        match self {
            Spider::T3 => 15,
            Spider::TDoublePrime | Spider::TTriplePrime => 10,
        }
    }

    fn display_name(self) -> &'static str {
        match self {
            Spider::T3 => "T3",
            Spider::TDoublePrime => "T''",
            Spider::TTriplePrime => "T'''",
        }
    }
}

fn domain(msg: String) -> DomainError {
    DomainError(msg)
}

#[inline]
fn half_exact(x: u64) -> u64 {
    debug_assert!(x.is_multiple_of(2), "expected an even numerator, got {x}");
    x / 2
}

pub fn decompose(p: u64, n: u64) -> Result<ResidueDecomposition, DomainError> {
    if n < 3 {
        return Err(domain(format!("decomposition requires n ≥ 3, got n = {n}")));
    }
    if p < n - 1 {
        return Err(domain(format!("decomposition requires p ≥ n - 1 = {}, got p = {p}", n - 1)));
    }
    Ok(ResidueDecomposition {
        k: p / (n - 1),
        r: p % (n - 1),
    })
}

/// `((n-2)p - r(n-1-r)) / 2`, the edge count of `kK_{n-1} ∪ K_r`.
fn clique_union_value(p: u64, n: u64, r: u64) -> u64 {
    half_exact((n - 2) * p - r * (n - 1 - r))
}

/// `max(0, floor((r(n-4-r) - 3(n-1)) / 2))`; zero whenever `r > n-4`.
fn regular_gain(n: u64, r: u64) -> u64 {
    if r + 4 > n {
        return 0;
    }
    let gain = r as i64 * (n - 4 - r) as i64 - 3 * (n as i64 - 1);
    if gain > 0 { gain as u64 / 2 } else { 0 }
}

/// Path `P_n`: `k C(n-1, 2) + C(r, 2)`.
pub fn ex_path(p: u64, n: u64) -> Result<ExtremalValue, DomainError> {
    if n < 2 {
        return Err(domain(format!("path formula requires n ≥ 2, got n = {n}")));
    }
    if n == 2 {
        // P_2 is a single edge.
        return Ok(ExtremalValue { value: 0, branch: "path" });
    }
    let ResidueDecomposition { k, r } = decompose(p, n)?;
    let value = k * choose2(n - 1) + choose2(r);
    debug_assert_eq!(value, clique_union_value(p, n, r));
    Ok(ExtremalValue { value, branch: "path" })
}

/// Star `K_{1,s}`: `floor((s-1)p / 2)`.
pub fn ex_star(p: u64, s: u64) -> Result<ExtremalValue, DomainError> {
    if s == 0 {
        return Err(domain("star formula requires s ≥ 1".into()));
    }
    if p < s + 1 {
        return Err(domain(format!("star formula requires p ≥ s + 1 = {}, got p = {p}", s + 1)));
    }
    Ok(ExtremalValue {
        value: (s - 1) * p / 2,
        branch: "star",
    })
}

fn check_max_form_domain(p: u64, n: u64) -> Result<ResidueDecomposition, DomainError> {
    if n < 10 {
        return Err(domain(format!("max form requires n ≥ 10, got n = {n}")));
    }
    decompose(p, n)
}

/// `base + max(0, floor((r(n-4-r) - 3(n-1)) / 2))` for `p >= n - 1 >= 9`.
pub fn generic_max_form(p: u64, n: u64) -> Result<ExtremalValue, DomainError> {
    let ResidueDecomposition { r, .. } = check_max_form_domain(p, n)?;
    let gain = regular_gain(n, r);
    Ok(ExtremalValue {
        value: clique_union_value(p, n, r) + gain,
        branch: if gain > 0 { "max-form/regular-arm" } else { "max-form/clique-arm" },
    })
}

fn check_spider_domain(spider: Spider, p: u64, n: u64) -> Result<ResidueDecomposition, DomainError> {
    let name = spider.display_name();
    if n < spider.min_n() {
        return Err(domain(format!("{name} requires n ≥ {}, got n = {n}", spider.min_n())));
    }
    if p < n {
        return Err(domain(format!("{name} requires p ≥ n = {n}, got p = {p}")));
    }
    decompose(p, n)
}

fn max_form_labelled(p: u64, n: u64, clique: &'static str, regular: &'static str) -> Result<ExtremalValue, DomainError> {
    let v = generic_max_form(p, n)?;
    Ok(ExtremalValue {
        value: v.value,
        branch: if v.branch.ends_with("regular-arm") { regular } else { clique },
    })
}

/// `ex(p; T''_n)` for `p >= n >= 10`.
pub fn ex_tpp(p: u64, n: u64) -> Result<ExtremalValue, DomainError> {
    check_spider_domain(Spider::TDoublePrime, p, n)?;
    max_form_labelled(p, n, "tpp/clique-arm", "tpp/regular-arm")
}

/// `ex(p; T'''_n)` for `p >= n >= 10`. Same expression as [`ex_tpp`].
pub fn ex_tppp(p: u64, n: u64) -> Result<ExtremalValue, DomainError> {
    check_spider_domain(Spider::TTriplePrime, p, n)?;
    max_form_labelled(p, n, "tppp/clique-arm", "tppp/regular-arm")
}

/// Residue classes of the `T3` formula.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum T3Case {
    /// `r ∈ {0, 1, 2, n-5, n-4, n-3, n-2}`.
    Special,
    /// `3 <= r <= n-9`.
    MaxForm,
    /// `r = n-6`.
    MinusSix,
    /// `r = n-7`.
    MinusSeven,
    /// `r = n-8`.
    MinusEight,
}

/// Classifies `r` for `n >= 15`, asserting that exactly one case applies.
pub fn t3_case(r: u64, n: u64) -> T3Case {
    assert!(n >= 15 && r <= n - 2, "t3_case needs n ≥ 15 and r ≤ n - 2 (n = {n}, r = {r})");
    let candidates = [
        (r <= 2 || r >= n - 5, T3Case::Special),
        ((3..=n - 9).contains(&r), T3Case::MaxForm),
        (r == n - 6, T3Case::MinusSix),
        (r == n - 7, T3Case::MinusSeven),
        (r == n - 8, T3Case::MinusEight),
    ];
    let mut hits = candidates.iter().filter(|(hit, _)| *hit).map(|&(_, case)| case);
    let case = hits.next().expect("T3 residue cases cover 0..=n-2");
    assert!(hits.next().is_none(), "T3 residue cases overlap at n = {n}, r = {r}");
    case
}

fn t3_value(case: T3Case, p: u64, n: u64, r: u64) -> ExtremalValue {
    match case {
        T3Case::Special => ExtremalValue {
            value: clique_union_value(p, n, r),
            branch: "t3/special-residue",
        },
        T3Case::MaxForm => {
            let gain = regular_gain(n, r);
            ExtremalValue {
                value: clique_union_value(p, n, r) + gain,
                branch: if gain > 0 { "t3/max-form/regular-arm" } else { "t3/max-form/clique-arm" },
            }
        }
        T3Case::MinusSix => ExtremalValue {
            value: half_exact((n - 2) * p - 5 * (n - 6)),
            branch: "t3/r=n-6",
        },
        T3Case::MinusEight => {
            let half_n = n / 2;
            // (n-2)p - 7n + 30 >= (n-2)(2n-9) - 7n + 30 > 0 for n >= 10.
            let base = half_exact((n - 2) * p + 30 - 7 * n);
            ExtremalValue {
                value: base + half_n.max(13),
                branch: if half_n > 13 { "t3/r=n-8/connected-arm" } else { "t3/r=n-8/clique-arm" },
            }
        }
        T3Case::MinusSeven => {
            let gain = if n >= 37 { (n - 37) / 4 } else { 0 };
            ExtremalValue {
                value: half_exact((n - 2) * p - 6 * (n - 7)) + gain,
                branch: if gain > 0 { "t3/r=n-7/connected-arm" } else { "t3/r=n-7/clique-arm" },
            }
        }
    }
}

/// `ex(p; T3_n)` for `p >= n >= 15`.
pub fn ex_t3(p: u64, n: u64) -> Result<ExtremalValue, DomainError> {
    let ResidueDecomposition { r, .. } = check_spider_domain(Spider::T3, p, n)?;
    Ok(t3_value(t3_case(r, n), p, n, r))
}

/// `ex(p; T3_n)` including `10 <= n <= 14`, but only on the residues where a
/// value is asserted for those orders (`r` special or `r = n-6`).
pub fn ex_t3_partial(p: u64, n: u64) -> Result<ExtremalValue, DomainError> {
    if n >= 15 {
        return ex_t3(p, n);
    }
    if n < 10 {
        return Err(domain(format!("T3 requires n ≥ 10 even with partial coverage, got n = {n}")));
    }
    if p < n {
        return Err(domain(format!("T3 requires p ≥ n = {n}, got p = {p}")));
    }
    let ResidueDecomposition { r, .. } = decompose(p, n)?;
    let case = if r <= 2 || r >= n - 5 {
        T3Case::Special
    } else if r == n - 6 {
        T3Case::MinusSix
    } else {
        return Err(domain(format!("T3 at residue r = {r} requires n ≥ 15, got n = {n}")));
    };
    Ok(t3_value(case, p, n, r))
}

/// Dispatches to the formula for `spider`.
pub fn ex_spider(spider: Spider, p: u64, n: u64) -> Result<ExtremalValue, DomainError> {
    match spider {
        Spider::T3 => ex_t3(p, n),
        Spider::TDoublePrime => ex_tpp(p, n),
        Spider::TTriplePrime => ex_tppp(p, n),
    }
}

/// [`ex_spider`] extended below `p = n`: a host with fewer than `n` vertices
/// cannot contain an `n`-vertex tree, so the value there is `C(p, 2)`.
pub fn ex_value(spider: Spider, p: u64, n: u64) -> Result<ExtremalValue, DomainError> {
    if p < n {
        if n < spider.min_n() {
            return Err(domain(format!(
                "{} requires n ≥ {}, got n = {n}",
                spider.display_name(),
                spider.min_n()
            )));
        }
        return Ok(ExtremalValue {
            value: choose2(p),
            branch: "small-host",
        });
    }
    ex_spider(spider, p, n)
}

/// Lower bound `((n-2)p - r(n-1-r)) / 2` for any tree with `Δ = n-4`.
pub fn lower_bound(p: u64, n: u64) -> Result<u64, DomainError> {
    let ResidueDecomposition { r, .. } = check_max_form_domain(p, n)?;
    Ok(clique_union_value(p, n, r))
}

/// Upper bound `floor((n-2)p/2 - min(n-1+r, r(n-1-r)/2))`.
pub fn upper_bound(p: u64, n: u64) -> Result<u64, DomainError> {
    let ResidueDecomposition { r, .. } = check_max_form_domain(p, n)?;
    // Doubled: floor(((n-2)p - min(2(n-1+r), r(n-1-r))) / 2).
    let twice_min = (2 * (n - 1 + r)).min(r * (n - 1 - r));
    Ok(((n - 2) * p - twice_min) / 2)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decompositions() {
        assert_eq!(decompose(20, 15).unwrap(), ResidueDecomposition { k: 1, r: 6 });
        assert_eq!(decompose(14, 15).unwrap(), ResidueDecomposition { k: 1, r: 0 });
        assert_eq!(decompose(42, 15).unwrap(), ResidueDecomposition { k: 3, r: 0 });
        assert!(decompose(13, 15).is_err());
    }

    #[test]
    fn path_values() {
        assert_eq!(ex_path(7, 4).unwrap().value, 6);
        assert_eq!(ex_path(8, 4).unwrap().value, 7);
        assert_eq!(ex_path(10, 5).unwrap().value, 13);
        assert_eq!(ex_path(5, 5).unwrap().value, 6);
    }

    #[test]
    fn star_values() {
        assert_eq!(ex_star(8, 3).unwrap().value, 8);
        assert_eq!(ex_star(6, 3).unwrap().value, 6);
        for p in 2..30 {
            assert_eq!(ex_star(p, 1).unwrap().value, 0);
        }
        assert!(ex_star(3, 3).is_err());
    }

    #[test]
    fn max_form_values() {
        let v = generic_max_form(20, 15).unwrap();
        assert_eq!(v, ExtremalValue { value: 106, branch: "max-form/clique-arm" });
        let v = generic_max_form(42, 30).unwrap();
        assert_eq!(v, ExtremalValue { value: 525, branch: "max-form/regular-arm" });
        assert_eq!(generic_max_form(14, 15).unwrap().value, 91);
    }

    #[test]
    fn tpp_and_tppp_values() {
        assert_eq!(ex_tpp(20, 15).unwrap(), ExtremalValue { value: 106, branch: "tpp/clique-arm" });
        assert_eq!(ex_tpp(42, 30).unwrap().value, 525);
        assert_eq!(ex_tpp(29, 15).unwrap().value, 182);
        assert_eq!(ex_tppp(20, 15).unwrap(), ExtremalValue { value: 106, branch: "tppp/clique-arm" });
        assert_eq!(ex_tppp(23, 15).unwrap().value, 127);
        assert_eq!(ex_tppp(42, 30).unwrap().branch, "tppp/regular-arm");
        assert!(ex_tpp(9, 10).is_err());
        assert!(ex_tpp(20, 9).is_err());
    }

    #[test]
    fn t3_values() {
        assert_eq!(ex_t3(23, 15).unwrap(), ExtremalValue { value: 127, branch: "t3/r=n-6" });
        assert_eq!(ex_t3(21, 15).unwrap(), ExtremalValue { value: 112, branch: "t3/r=n-8/clique-arm" });
        assert_eq!(ex_t3(22, 15).unwrap(), ExtremalValue { value: 119, branch: "t3/r=n-7/clique-arm" });
        assert_eq!(ex_t3(20, 15).unwrap(), ExtremalValue { value: 106, branch: "t3/max-form/clique-arm" });
        assert_eq!(ex_t3(34, 15).unwrap().value, 197);
        assert_eq!(ex_t3(15, 15).unwrap(), ExtremalValue { value: 91, branch: "t3/special-residue" });
        assert_eq!(ex_t3(48, 15).unwrap().value, 288);
        // Past the thresholds the connected constructions win.
        assert_eq!(ex_t3(2 * 28 - 9, 28).unwrap().branch, "t3/r=n-8/connected-arm");
        assert_eq!(ex_t3(2 * 41 - 8, 41).unwrap().branch, "t3/r=n-7/connected-arm");
    }

    #[test]
    fn t3_domain_guard() {
        let err = ex_t3(20, 12).unwrap_err();
        assert!(err.0.contains("requires n ≥ 15"), "{err}");
        assert!(ex_t3(14, 15).is_err());
    }

    #[test]
    fn t3_partial_coverage() {
        // n = 12: special residues {0,1,2,7,8,9,10}, r = n-6 = 6 covered.
        assert_eq!(ex_t3_partial(12, 12).unwrap().branch, "t3/special-residue");
        assert_eq!(ex_t3_partial(17, 12).unwrap(), ExtremalValue { value: half_exact(10 * 17 - 30), branch: "t3/r=n-6" });
        for r in 3..=5 {
            assert!(ex_t3_partial(11 + r, 12).is_err(), "r = {r}");
        }
        assert_eq!(ex_t3_partial(23, 15).unwrap(), ex_t3(23, 15).unwrap());
        assert!(ex_t3_partial(20, 9).is_err());
    }

    #[test]
    fn t3_cases_partition_residues() {
        for n in 15..200 {
            let mut counts = std::collections::HashMap::new();
            for r in 0..=n - 2 {
                *counts.entry(t3_case(r, n)).or_insert(0) += 1;
            }
            assert_eq!(counts[&T3Case::Special], 7);
            assert_eq!(counts[&T3Case::MaxForm], n - 11);
            assert_eq!(counts[&T3Case::MinusSix], 1);
            assert_eq!(counts[&T3Case::MinusSeven], 1);
            assert_eq!(counts[&T3Case::MinusEight], 1);
        }
    }

    #[test]
    fn bounds() {
        assert_eq!((lower_bound(20, 15).unwrap(), upper_bound(20, 15).unwrap()), (106, 110));
        assert_eq!((lower_bound(14, 15).unwrap(), upper_bound(14, 15).unwrap()), (91, 91));
        assert_eq!((lower_bound(23, 15).unwrap(), upper_bound(23, 15).unwrap()), (127, 127));
    }

    #[test]
    fn small_hosts_are_complete() {
        assert_eq!(ex_value(Spider::T3, 10, 15).unwrap(), ExtremalValue { value: 45, branch: "small-host" });
        assert_eq!(ex_value(Spider::T3, 14, 15).unwrap().value, 91);
        assert!(ex_value(Spider::T3, 10, 12).is_err());
    }
}
