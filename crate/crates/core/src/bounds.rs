//! Exact big-integer bound formulas for `G(r)` and `g(m, n)`.
//!
//! No floating point appears here; every quantity is an exact integer, and the
//! one half-integer (`½·r^{C(r+1,2)}` for odd `r`) is floored and flagged.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::error::{invalid, Error, Result};

/// Exact `C(n, k)`; zero when `k > n`.
pub fn binomial(n: &BigUint, k: u64) -> BigUint {
    let mut acc = BigUint::one();
    if BigUint::from(k) > *n {
        return BigUint::zero();
    }
    for i in 0..k {
        // acc = C(n, i) here, so acc * (n - i) is divisible by i + 1
        acc = acc * (n - BigUint::from(i)) / BigUint::from(i + 1);
    }
    acc
}

/// `Σ_{i=0}^{ℓ} C(n, i)`, without any hypothesis on `ℓ`.
pub fn binomial_prefix_sum(n: &BigUint, ell: u64) -> BigUint {
    let mut term = BigUint::one();
    let mut sum = BigUint::one();
    for i in 0..ell {
        if BigUint::from(i) >= *n {
            break;
        }
        term = term * (n - BigUint::from(i)) / BigUint::from(i + 1);
        sum += &term;
    }
    sum
}

/// Upper bound `Σ_{i=0}^{ℓ} C(N, i)` on an `𝓛`-intersecting family over `N` points with `|𝓛| = ℓ`.
pub fn frankl_wilson_bound(n: &BigUint, ell: u64) -> Result<BigUint> {
    if ell < 1 || BigUint::from(ell) > *n {
        return Err(invalid(format!("Frankl-Wilson bound needs 1 <= l <= N, got l = {ell}, N = {n}")));
    }
    Ok(binomial_prefix_sum(n, ell))
}

pub(crate) fn pow(base: u64, exp: u64) -> BigUint {
    BigUint::from(base).pow(u32::try_from(exp).expect("exponent fits u32"))
}

fn choose2(r: u64) -> u64 {
    r * r.saturating_sub(1) / 2
}

/// `r^{C(r+1,2)}`, the number of `r`-colourings of `E(K_{r+1})`.
pub fn column_colorings(r: u64) -> BigUint {
    pow(r, choose2(r + 1))
}

/// Named parameter sets `(m, n)` for which `g(m, n) ≥ r + 1` (or, for the diagonal
/// caps, the grid side bounding `G(r)`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Which {
    Shelah,
    Gyarfas,
    Thm1,
    Thm2,
    PropDiag,
    PropOffdiag,
}

impl Which {
    pub const ALL: [Which; 6] =
        [Which::Shelah, Which::Gyarfas, Which::Thm1, Which::Thm2, Which::PropDiag, Which::PropOffdiag];

    pub fn name(self) -> &'static str {
        match self {
            Which::Shelah => "shelah",
            Which::Gyarfas => "gyarfas",
            Which::Thm1 => "thm1",
            Which::Thm2 => "thm2",
            Which::PropDiag => "prop_diag",
            Which::PropOffdiag => "prop_offdiag",
        }
    }
}

impl fmt::Display for Which {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Which {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Which::ALL
            .into_iter()
            .find(|w| w.name() == s)
            .ok_or_else(|| invalid(format!("unknown bound `{s}` (expected one of shelah, gyarfas, thm1, thm2, prop_diag, prop_offdiag)")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TheoremParams {
    pub which: Which,
    pub r: u64,
    pub m: BigUint,
    pub n: BigUint,
    /// `n` was the floor of a non-integral `½·r^{C(r+1,2)}`.
    pub n_floored: bool,
}

/// Exact `(m, n)` for the named statement.
///
/// * `shelah`: `(r^{C(r+1,2)} + 1, r + 1)`
/// * `gyarfas`: diagonal side `r^{C(r+1,2)} − r^{C(r−1,2)+1} + 1`
/// * `thm1`: `(r^{C(r+1,2)} − ⌊r/4⌋·r^{C(r,2)} + 1, ⌊½·r^{C(r+1,2)}⌋)`
/// * `thm2`: `(r^{C(r+1,2)} − r^{C(r,2)} + 1, r^{r−1}(r^r − 1) + r + 1)`
/// * `prop_diag`: `(r^{r−1}(r^r − ⌊r/4⌋), ⌊½·r^{C(r+1,2)}⌋)`
/// * `prop_offdiag`: `(r^{r−1}(r^r − 1), r^{r−1}(r^r − 1) + r + 1)`
pub fn theorem_params(r: u64, which: Which) -> Result<TheoremParams> {
    if r < 1 {
        return Err(invalid("r must be at least 1"));
    }
    if matches!(which, Which::Thm1 | Which::Thm2 | Which::Gyarfas) && r < 2 {
        return Err(invalid(format!("{which} needs r >= 2")));
    }
    let top = column_colorings(r);
    let quarter = BigUint::from(r / 4);
    let half_floor = &top / 2u32;
    let half_floored = (&top % 2u32) == BigUint::one();
    let prefix = pow(r, r - 1);
    let (m, n, n_floored) = match which {
        Which::Shelah => (&top + 1u32, BigUint::from(r + 1), false),
        Which::Gyarfas => {
            let side = &top - pow(r, choose2(r - 1) + 1) + 1u32;
            (side.clone(), side, false)
        }
        Which::Thm1 => (&top - &quarter * pow(r, choose2(r)) + 1u32, half_floor, half_floored),
        Which::Thm2 => {
            let n = &prefix * (pow(r, r) - 1u32) + BigUint::from(r + 1);
            (&top - pow(r, choose2(r)) + 1u32, n, false)
        }
        Which::PropDiag => (&prefix * (pow(r, r) - &quarter), half_floor, half_floored),
        Which::PropOffdiag => {
            let m = &prefix * (pow(r, r) - 1u32);
            let n = &m + BigUint::from(r + 1);
            (m, n, false)
        }
    };
    Ok(TheoremParams { which, r, m, n, n_floored })
}

/// A named set of exact values with optional pass/fail status.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundReport {
    pub name: String,
    pub r: u64,
    pub values: Vec<(String, BigInt)>,
    pub flags: Vec<(String, bool)>,
    pub satisfied: Option<bool>,
}

impl BoundReport {
    fn new(name: &str, r: u64) -> Self {
        BoundReport { name: name.into(), r, values: Vec::new(), flags: Vec::new(), satisfied: None }
    }

    fn put(&mut self, key: &str, v: impl Into<BigInt>) {
        self.values.push((key.into(), v.into()));
    }

    fn flag(&mut self, key: &str, v: bool) {
        self.flags.push((key.into(), v));
    }

    pub fn value(&self, key: &str) -> Option<&BigInt> {
        self.values.iter().find(|(k, _)| k == key).map(|(_, v)| v)
    }

    pub fn flag_value(&self, key: &str) -> Option<bool> {
        self.flags.iter().find(|(k, _)| k == key).map(|(_, v)| *v)
    }
}

/// Evaluates `Σ_{i=0}^{⌊r/4⌋} C(N, i) + r − 1 < ½·r^{C(r+1,2)}` with
/// `m = r^{r−1}(r^r − ⌊r/4⌋)`, for both ground sizes `N = m` and `N = m + 1`.
///
/// The comparison is done as `2·LHS < r^{C(r+1,2)}`, so odd `r` needs no rounding.
/// Reported margins are `⌊RHS⌋ − LHS`.
pub fn diag_inequality_check(r: u64) -> Result<BoundReport> {
    if r < 2 {
        return Err(invalid("the diagonal inequality needs r >= 2"));
    }
    let params = theorem_params(r, Which::PropDiag)?;
    let ell = r / 4;
    let rhs_twice = column_colorings(r);
    let rhs_floor = &rhs_twice / 2u32;
    let mut report = BoundReport::new("diag_inequality", r);
    report.put("m", params.m.clone());
    report.put("ell", ell);
    report.put("rhs_floor", rhs_floor.clone());
    let mut all = true;
    for (key, ground) in [("ground_m", params.m.clone()), ("ground_m_plus_1", &params.m + 1u32)] {
        let lhs = binomial_prefix_sum(&ground, ell) + BigUint::from(r - 1);
        let holds = BigUint::from(2u32) * &lhs < rhs_twice;
        report.put(&format!("lhs_{key}"), lhs.clone());
        report.put(&format!("margin_{key}"), BigInt::from(rhs_floor.clone()) - BigInt::from(lhs));
        report.flag(&format!("holds_{key}"), holds);
        all &= holds;
    }
    // ⌊r/4⌋ = 0 leaves an empty set of allowed intersection sizes
    report.flag("degenerate_family", ell == 0);
    report.flag("rhs_floored", params.n_floored);
    report.satisfied = Some(all);
    Ok(report)
}

/// One row per `r` in `2..=r_max`: `shelah`, `gyarfas`, `thm1` and `thm2`
/// values, with the ordering `thm1.m ≤ gyarfas ≤ shelah` checked and its
/// strictness recorded.
pub fn bound_table(r_max: u64) -> Result<Vec<BoundReport>> {
    if r_max < 2 {
        return Err(invalid("bound table needs r_max >= 2"));
    }
    (2..=r_max)
        .map(|r| {
            let shelah = theorem_params(r, Which::Shelah)?.m;
            let gyarfas = theorem_params(r, Which::Gyarfas)?.m;
            let thm1 = theorem_params(r, Which::Thm1)?;
            let thm2 = theorem_params(r, Which::Thm2)?;
            let diag = diag_inequality_check(r)?;
            let mut row = BoundReport::new("bound_table", r);
            row.flag("thm1_lt_gyarfas", thm1.m < gyarfas);
            row.flag("gyarfas_lt_shelah", gyarfas < shelah);
            row.flag("thm1_n_floored", thm1.n_floored);
            row.flag("diag_ineq_ok", diag.satisfied == Some(true));
            row.satisfied = Some(thm1.m <= gyarfas && gyarfas <= shelah);
            row.put("shelah", shelah);
            row.put("gyarfas", gyarfas);
            row.put("thm1_m", thm1.m);
            row.put("thm1_n", thm1.n);
            row.put("thm2_m", thm2.m);
            row.put("thm2_n", thm2.n);
            Ok(row)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: u64) -> BigUint {
        BigUint::from(v)
    }

    #[test]
    fn binomial_examples() {
        assert_eq!(binomial(&big(4), 2), big(6));
        assert_eq!(binomial(&big(0), 0), big(1));
        assert_eq!(binomial(&big(17), 0), big(1));
        assert_eq!(binomial(&big(3), 5), big(0));
        assert_eq!(binomial(&big(16321), 2), big(16321 * 16320 / 2));
        assert_eq!(binomial(&big(16321), 2), big(133_179_360));
    }

    #[test]
    fn binomial_matches_pascal() {
        let mut row = vec![big(1)];
        for n in 1..40u64 {
            let mut next = vec![big(1); n as usize + 1];
            for k in 1..n as usize {
                next[k] = &row[k - 1] + &row[k];
            }
            row = next;
            for k in 0..=n {
                assert_eq!(binomial(&big(n), k), row[k as usize]);
            }
        }
    }

    #[test]
    fn fw_examples() {
        assert_eq!(frankl_wilson_bound(&big(4), 1).unwrap(), big(5));
        assert_eq!(frankl_wilson_bound(&big(5), 5).unwrap(), big(32));
        assert_eq!(frankl_wilson_bound(&big(16321), 1).unwrap(), big(16322));
        assert!(frankl_wilson_bound(&big(4), 0).is_err());
        assert!(frankl_wilson_bound(&big(4), 5).is_err());
    }

    #[test]
    fn fw_full_and_monotone() {
        for n in 1..30u64 {
            assert_eq!(frankl_wilson_bound(&big(n), n).unwrap(), big(1) << n as usize);
            for l in 1..n {
                assert!(frankl_wilson_bound(&big(n), l).unwrap() < frankl_wilson_bound(&big(n), l + 1).unwrap());
            }
        }
    }

    #[test]
    fn params_examples() {
        let t2 = theorem_params(2, Which::Thm2).unwrap();
        assert_eq!((t2.m, t2.n), (big(7), big(9)));
        let t1 = theorem_params(2, Which::Thm1).unwrap();
        assert_eq!((t1.m, t1.n, t1.n_floored), (big(9), big(4), false));
        let pd = theorem_params(4, Which::PropDiag).unwrap();
        assert_eq!((pd.m, pd.n), (big(16320), big(524288)));
        let t1 = theorem_params(3, Which::Thm1).unwrap();
        assert_eq!((t1.n, t1.n_floored), (big(364), true));
        assert!(theorem_params(1, Which::Thm1).is_err());
        assert!(theorem_params(0, Which::Shelah).is_err());
        assert!("nope".parse::<Which>().is_err());
        assert_eq!("prop_offdiag".parse::<Which>().unwrap(), Which::PropOffdiag);
    }

    #[test]
    fn shelah_counts_column_colorings() {
        // brute-force count of r-colourings of E(K_{r+1}) for small r
        fn count(edges: u64, r: u64) -> u64 {
            if edges == 0 { 1 } else { (0..r).map(|_| count(edges - 1, r)).sum() }
        }
        for r in 1..=3u64 {
            let n = count(choose2(r + 1), r);
            assert_eq!(theorem_params(r, Which::Shelah).unwrap().m - 1u32, big(n));
        }
    }

    #[test]
    fn diag_examples() {
        let d = diag_inequality_check(4).unwrap();
        assert_eq!(d.value("lhs_ground_m"), Some(&BigInt::from(16324)));
        assert_eq!(d.value("lhs_ground_m_plus_1"), Some(&BigInt::from(16325)));
        assert_eq!(d.value("rhs_floor"), Some(&BigInt::from(524288)));
        assert_eq!(d.value("margin_ground_m"), Some(&BigInt::from(507964)));
        assert_eq!(d.satisfied, Some(true));

        let d = diag_inequality_check(2).unwrap();
        assert_eq!(d.value("lhs_ground_m"), Some(&BigInt::from(2)));
        assert_eq!(d.value("rhs_floor"), Some(&BigInt::from(4)));
        assert_eq!(d.flag_value("degenerate_family"), Some(true));
        assert_eq!(d.satisfied, Some(true));

        assert_eq!(diag_inequality_check(64).unwrap().satisfied, Some(true));
    }

    #[test]
    fn table_examples() {
        let t = bound_table(4).unwrap();
        let r2 = &t[0];
        assert_eq!(r2.value("shelah"), Some(&BigInt::from(9)));
        assert_eq!(r2.value("gyarfas"), Some(&BigInt::from(7)));
        assert_eq!(r2.value("thm1_m"), Some(&BigInt::from(9)));
        assert_eq!(r2.value("thm2_m"), Some(&BigInt::from(7)));
        assert_eq!(r2.value("thm2_n"), Some(&BigInt::from(9)));
        assert_eq!(t[1].value("thm1_n"), Some(&BigInt::from(364)));
        assert_eq!(t[1].flag_value("thm1_n_floored"), Some(true));
        assert_eq!(t[2].value("shelah"), Some(&BigInt::from(1_048_577)));
        assert_eq!(t[2].value("thm1_m"), Some(&BigInt::from(1_044_481)));
        assert!(bound_table(1).is_err());
    }
}
