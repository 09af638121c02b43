//! Exact small values of `g(m, n)` and `G(r)` from two independent oracles.

mod naive;
mod vertical;

use std::fmt;
use std::path::Path;
use std::str::FromStr;
use std::time::Duration;

pub use naive::{g_exact_naive, NAIVE_EDGE_LIMIT};
pub use vertical::{find_good_vertical, g_exact_vertical, VERTICAL_MAX_COLORS, VERTICAL_MAX_COLS, VERTICAL_MAX_ROWS};

use crate::cert::{self, Certificate};
use crate::colorability::{is_good, GoodnessReport};
use crate::error::{invalid, Error, Result};
use crate::grid::{enumerate_alternating_rectangles, FullGridColoring, Rectangle};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SearchStats {
    pub nodes: u64,
    pub elapsed: Duration,
}

#[derive(Clone, Debug)]
pub struct SearchResult {
    pub m: usize,
    pub n: usize,
    pub r_cap: usize,
    /// `g(m, n)`, or `None` when it exceeds `r_cap`.
    pub value: Option<usize>,
    /// A colouring with `value` colours and no alternating rectangle.
    pub certificate: Option<FullGridColoring>,
    pub stats: SearchStats,
}

/// Worker configuration; `threads == 0` lets rayon decide.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SearchConfig {
    pub threads: usize,
}

impl SearchConfig {
    /// Reads `GRIDRAM_THREADS` (unset, empty or 0 means automatic).
    pub fn from_env() -> Result<Self> {
        match std::env::var("GRIDRAM_THREADS") {
            Ok(v) if !v.trim().is_empty() => v
                .trim()
                .parse()
                .map(|threads| SearchConfig { threads })
                .map_err(|_| invalid(format!("GRIDRAM_THREADS=`{v}` is not a non-negative integer"))),
            _ => Ok(SearchConfig::default()),
        }
    }

    pub(crate) fn install<R: Send>(&self, op: impl FnOnce() -> R + Send) -> R {
        if self.threads == 0 {
            return op();
        }
        match rayon::ThreadPoolBuilder::new().num_threads(self.threads).build() {
            Ok(pool) => pool.install(op),
            Err(_) => op(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Oracle {
    Naive,
    Vertical,
}

impl FromStr for Oracle {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "naive" => Ok(Oracle::Naive),
            "vertical" => Ok(Oracle::Vertical),
            _ => Err(invalid(format!("unknown oracle `{s}`"))),
        }
    }
}

impl fmt::Display for Oracle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Oracle::Naive => "naive",
            Oracle::Vertical => "vertical",
        })
    }
}

pub fn g_exact(oracle: Oracle, m: usize, n: usize, r_cap: usize, cfg: &SearchConfig) -> Result<SearchResult> {
    match oracle {
        Oracle::Naive => g_exact_naive(m, n, r_cap),
        Oracle::Vertical => g_exact_vertical(m, n, r_cap, cfg),
    }
}

/// `G(r)` is searched only for `r` up to this value.
pub const G_MAX_COLORS: usize = 2;

/// Smallest `n ≤ n_cap` such that every `r`-colouring of `Γ_{n,n}` has an
/// alternating rectangle, or `None` if there is none up to `n_cap`.
#[allow(non_snake_case)]
pub fn G_exact(oracle: Oracle, r: usize, n_cap: usize, cfg: &SearchConfig) -> Result<Option<usize>> {
    if r == 0 {
        return Err(invalid("r must be at least 1"));
    }
    if r > G_MAX_COLORS {
        return Err(Error::TooLarge(format!("G(r) is only searched for r <= {G_MAX_COLORS}")));
    }
    for n in 1..=n_cap {
        // g(n, n) <= n, so Γ_{n,n} with n <= r is always colourable
        if n <= r {
            continue;
        }
        if g_exact(oracle, n, n, r, cfg)?.value.is_none() {
            return Ok(Some(n));
        }
    }
    Ok(None)
}

/// Outcome of checking a certificate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// Alternating rectangles of a full colouring; empty means valid.
    Full(Vec<Rectangle>),
    Vertical(GoodnessReport),
}

impl Verdict {
    pub fn is_valid(&self) -> bool {
        match self {
            Verdict::Full(rects) => rects.is_empty(),
            Verdict::Vertical(rep) => rep.good,
        }
    }
}

pub fn verify(cert: &Certificate) -> Verdict {
    match cert {
        Certificate::Full(f) => Verdict::Full(enumerate_alternating_rectangles(f)),
        Certificate::Vertical(v) => Verdict::Vertical(is_good(v)),
    }
}

/// Parses and verifies a certificate file (`-` reads standard input).
pub fn verify_certificate(path: &Path) -> Result<Verdict> {
    let text = cert::read_text(path).map_err(|e| invalid(format!("cannot read {}: {e}", path.display())))?;
    Ok(verify(&cert::parse(&text)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn g_of_one_colour() {
        let cfg = SearchConfig::default();
        assert_eq!(G_exact(Oracle::Naive, 1, 4, &cfg).unwrap(), Some(2));
        assert_eq!(G_exact(Oracle::Vertical, 1, 4, &cfg).unwrap(), Some(2));
        assert!(matches!(G_exact(Oracle::Vertical, 3, 4, &cfg), Err(Error::TooLarge(_))));
    }

    #[test]
    fn oracle_names() {
        assert_eq!("naive".parse::<Oracle>().unwrap(), Oracle::Naive);
        assert!("both".parse::<Oracle>().is_err());
    }
}
