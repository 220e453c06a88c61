//! Exact configuration counts for the three statistics.
//!
//! Two entities over three states already tell the statistics apart: nine
//! labeled assignments (MBG), three with exclusion (F-D), six when exchange
//! of indistinguishable entities does not create a new configuration (B-E).
//! The closed forms are checked against [`enumerate_configs`], which walks
//! every labeled assignment and canonicalizes it.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest `entities + states` accepted by the closed forms.
pub const MAX_TOTAL: u64 = 60;
/// Largest `entities` and `states` accepted by the enumerator.
pub const MAX_ENUMERATION: u64 = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Statistics {
    /// Maxwell-Boltzmann-Gibbs: distinguishable entities.
    Mbg,
    /// Fermi-Dirac: at most one entity per state.
    Fd,
    /// Bose-Einstein: indistinguishable entities, unlimited occupancy.
    Be,
}

impl Statistics {
    pub const ALL: [Statistics; 3] = [Statistics::Mbg, Statistics::Fd, Statistics::Be];
}

impl fmt::Display for Statistics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Statistics::Mbg => "mbg",
            Statistics::Fd => "fd",
            Statistics::Be => "be",
        })
    }
}

impl FromStr for Statistics {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "mbg" => Ok(Statistics::Mbg),
            "fd" => Ok(Statistics::Fd),
            "be" => Ok(Statistics::Be),
            other => Err(Error::InvalidInput(format!("unknown statistics {other:?}"))),
        }
    }
}

/// An exact count `Γ` (individuals) or `Ω` (benefit units).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfigurationCount {
    pub statistics: Statistics,
    pub entities: u64,
    pub states: u64,
    pub value: u64,
}

impl ConfigurationCount {
    pub fn compute(statistics: Statistics, entities: u64, states: u64) -> Result<Self> {
        let value = match statistics {
            Statistics::Mbg => count_mbg(entities, states)?,
            Statistics::Fd => count_fd(entities, states)?,
            Statistics::Be => count_be_individuals(entities, states)?,
        };
        Ok(ConfigurationCount {
            statistics,
            entities,
            states,
            value,
        })
    }
}

fn check_size(n: u64, g: u64) -> Result<()> {
    if n.checked_add(g).is_none_or(|t| t > MAX_TOTAL) {
        return Err(Error::TooLarge(format!(
            "entities + states = {n} + {g} exceeds {MAX_TOTAL}"
        )));
    }
    Ok(())
}

/// Exact binomial coefficient with overflow detection.
pub fn binomial(n: u64, k: u64) -> Result<u64> {
    if k > n {
        return Ok(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) is divisible by (i + 1) at every step
        acc = acc
            .checked_mul(u128::from(n - i))
            .ok_or_else(|| Error::Overflow(format!("C({n}, {k})")))?
            / u128::from(i + 1);
    }
    u64::try_from(acc).map_err(|_| Error::Overflow(format!("C({n}, {k})")))
}

/// Labeled assignments of `n` distinguishable entities to `k` states, `k^n`.
pub fn count_mbg(n: u64, k: u64) -> Result<u64> {
    if k == 0 && n > 0 {
        return Err(Error::InvalidInput("no states for a positive number of entities".into()));
    }
    check_size(n, k)?;
    let exp = u32::try_from(n).map_err(|_| Error::Overflow(format!("{k}^{n}")))?;
    k.checked_pow(exp).ok_or_else(|| Error::Overflow(format!("{k}^{n}")))
}

/// Exclusive occupation of `g` states by `n` entities, `C(g, n)`.
pub fn count_fd(n: u64, g: u64) -> Result<u64> {
    if n > g {
        return Err(Error::ExclusionViolation { entities: n, states: g });
    }
    check_size(n, g)?;
    binomial(g, n)
}

/// Indistinguishable individuals over states, `C(n + g − 1, n)`.
pub fn count_be_individuals(n: u64, g: u64) -> Result<u64> {
    if g == 0 {
        return Ok(u64::from(n == 0));
    }
    check_size(n, g)?;
    binomial(n + g - 1, n)
}

/// Indistinguishable benefit units over benefit states, `C(w + c − 1, w)`.
pub fn count_be_resources(w: u64, c: u64) -> Result<u64> {
    count_be_individuals(w, c)
}

/// Brute-force count: walks all `g^n` labeled assignments and counts the
/// distinct configurations under the given statistics. B-E and F-D
/// configurations are canonicalized as sorted lists of occupied states, so
/// exchanging two entities yields the same configuration.
pub fn enumerate_configs(n: u64, g: u64, statistics: Statistics) -> Result<u64> {
    if n > MAX_ENUMERATION || g > MAX_ENUMERATION {
        return Err(Error::TooLarge(format!(
            "enumeration is limited to {MAX_ENUMERATION} entities and states, got n = {n}, g = {g}"
        )));
    }
    if g == 0 {
        return match statistics {
            _ if n == 0 => Ok(1),
            Statistics::Be | Statistics::Fd => Ok(0),
            Statistics::Mbg => Err(Error::InvalidInput("no states for a positive number of entities".into())),
        };
    }
    let (n, g) = (n as usize, g as u8);
    let mut assignment = vec![0u8; n];
    let mut labeled = 0u64;
    let mut classes: HashSet<Vec<u8>> = HashSet::new();
    loop {
        match statistics {
            Statistics::Mbg => labeled += 1,
            Statistics::Be | Statistics::Fd => {
                let mut canonical = assignment.clone();
                canonical.sort_unstable();
                let exclusive = canonical.windows(2).all(|w| w[0] != w[1]);
                if statistics == Statistics::Be || exclusive {
                    classes.insert(canonical);
                }
            }
        }
        // odometer increment in base g
        let mut pos = 0;
        loop {
            if pos == n {
                return Ok(match statistics {
                    Statistics::Mbg => labeled,
                    _ => classes.len() as u64,
                });
            }
            assignment[pos] += 1;
            if assignment[pos] < g {
                break;
            }
            assignment[pos] = 0;
            pos += 1;
        }
    }
}

/// Relative error of the large-`G` approximation `C(n + g, n)` to the exact
/// Bose-Einstein count `C(n + g − 1, n)`. The other statistics have no
/// approximate form.
pub fn stirling_gap(n: u64, g: u64, statistics: Statistics) -> Result<f64> {
    if statistics != Statistics::Be {
        return Err(Error::InvalidInput(format!(
            "no large-state approximation is defined for {statistics} statistics"
        )));
    }
    let exact = count_be_individuals(n, g)?;
    let approx = binomial(n + g, n)?;
    Ok(approx.abs_diff(exact) as f64 / exact as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn paradox_counts() {
        assert_eq!(count_mbg(2, 3).unwrap(), 9);
        assert_eq!(count_fd(2, 3).unwrap(), 3);
        assert_eq!(count_be_individuals(2, 3).unwrap(), 6);
        assert_eq!(count_be_resources(2, 3).unwrap(), 6);
        for s in Statistics::ALL {
            let closed = ConfigurationCount::compute(s, 2, 3).unwrap().value;
            assert_eq!(enumerate_configs(2, 3, s).unwrap(), closed);
        }
    }

    #[test]
    fn small_counts() {
        assert_eq!(count_mbg(0, 5).unwrap(), 1);
        assert_eq!(count_mbg(0, 0).unwrap(), 1);
        assert_eq!(count_mbg(3, 2).unwrap(), 8);
        assert_eq!(count_fd(4, 4).unwrap(), 1);
        assert_eq!(count_fd(2, 5).unwrap(), 10);
        assert_eq!(count_be_individuals(0, 4).unwrap(), 1);
        assert_eq!(count_be_individuals(3, 2).unwrap(), 4);
        assert_eq!(count_be_resources(1, 1).unwrap(), 1);
        assert_eq!(count_be_resources(4, 3).unwrap(), 15);
    }

    #[test]
    fn count_errors() {
        assert!(matches!(count_mbg(2, 0), Err(Error::InvalidInput(_))));
        assert!(matches!(count_fd(4, 3), Err(Error::ExclusionViolation { .. })));
        assert_eq!(count_be_individuals(3, 0).unwrap(), 0);
        assert_eq!(count_be_individuals(0, 0).unwrap(), 1);
        assert!(matches!(count_be_individuals(40, 30), Err(Error::TooLarge(_))));
        assert!(matches!(count_mbg(30, 30), Err(Error::Overflow(_))));
        assert!(matches!(enumerate_configs(9, 2, Statistics::Mbg), Err(Error::TooLarge(_))));
        assert!(stirling_gap(2, 3, Statistics::Fd).is_err());
    }

    #[test]
    fn largest_binomials_fit() {
        assert_eq!(count_be_individuals(30, 30).unwrap(), 59132290782430712);
        assert_eq!(count_fd(30, 30).unwrap(), 1);
    }

    #[test]
    fn enumeration_edges() {
        for s in Statistics::ALL {
            for g in 1..=6 {
                assert_eq!(enumerate_configs(1, g, s).unwrap(), g);
            }
            assert_eq!(enumerate_configs(0, 3, s).unwrap(), 1);
        }
        assert_eq!(enumerate_configs(3, 2, Statistics::Fd).unwrap(), 0);
    }

    #[test]
    fn approximation_gap() {
        assert!((stirling_gap(2, 3, Statistics::Be).unwrap() - 4.0 / 6.0).abs() < 1e-15);
        // C(n + g, n) / C(n + g − 1, n) = (n + g)/g
        assert!((stirling_gap(3, 50, Statistics::Be).unwrap() - 3.0 / 50.0).abs() < 1e-15);
        assert_eq!(stirling_gap(0, 7, Statistics::Be).unwrap(), 0.0);
    }

    #[test]
    fn parse_statistics() {
        assert_eq!("BE".parse::<Statistics>().unwrap(), Statistics::Be);
        assert!("bose".parse::<Statistics>().is_err());
    }

    proptest! {
        #[test]
        fn count_ordering(g in 2u64..14, n in 1u64..14) {
            prop_assume!(n <= g);
            let fd = count_fd(n, g).unwrap();
            let be = count_be_individuals(n, g).unwrap();
            let mbg = count_mbg(n, g).unwrap();
            prop_assert!(fd <= be && be <= mbg);
        }

        #[test]
        fn be_symmetry(n in 0u64..25, g in 1u64..25) {
            prop_assert_eq!(
                count_be_individuals(n, g).unwrap(),
                count_be_individuals(g - 1, n + 1).unwrap()
            );
        }
    }
}
