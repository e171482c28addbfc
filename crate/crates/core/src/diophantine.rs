//! Enumeration of the multiplicity counting equations.
//!
//! Multiplicities are integers `m_j >= 2`, so each term `1 - 1/m_j` is at
//! least 1/2; that bounds the number of terms for every equation kind and
//! keeps the search finite regardless of the caller's bounds.

use serde::Serialize;

/// The three counting equations on `sum_j (1 - 1/m_j)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CountingEquation {
    /// `= 1 - 1/k`, pairwise coprime multiplicities (a member splitting
    /// into two lines).
    TwoLine,
    /// `= 1`, coprimality not required (a member splitting into three
    /// lines).
    ThreeLine,
    /// `= 2 - 3/k`, pairwise coprime multiplicities (no reducible member).
    Total,
}

impl CountingEquation {
    /// CLI token for this kind.
    pub fn token(&self) -> &'static str {
        match self {
            CountingEquation::TwoLine => "twoline",
            CountingEquation::ThreeLine => "threeline",
            CountingEquation::Total => "section2",
        }
    }

    pub fn from_token(s: &str) -> Option<Self> {
        match s {
            "twoline" => Some(CountingEquation::TwoLine),
            "threeline" => Some(CountingEquation::ThreeLine),
            "section2" | "total" => Some(CountingEquation::Total),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct MultiplicitySolution {
    /// Pencil degree; absent for the ThreeLine equation, which does not
    /// involve k.
    pub k: Option<u64>,
    /// Sorted multiplicities, each at least 2.
    pub multiplicities: Vec<u64>,
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn pairwise_coprime(ms: &[u64]) -> bool {
    for i in 0..ms.len() {
        for j in i + 1..ms.len() {
            if gcd(ms[i], ms[j]) != 1 {
                return false;
            }
        }
    }
    true
}

/// All solutions of the chosen equation with `2 <= k <= k_max` and
/// `2 <= m_j <= m_max`.
pub fn solutions(kind: CountingEquation, k_max: u64, m_max: u64) -> Vec<MultiplicitySolution> {
    assert!(k_max >= 2 && m_max >= 2, "bounds must be at least 2");
    let mut out = match kind {
        CountingEquation::TwoLine => two_line(k_max, m_max),
        CountingEquation::ThreeLine => three_line(m_max),
        CountingEquation::Total => total(k_max, m_max),
    };
    out.sort();
    out
}

/// `sum (1 - 1/m_j) = 1 - 1/k` for each k. The right side is below 1 and
/// positive, while every term is at least 1/2, so J = 1 and the single
/// equation `1 - 1/m = 1 - 1/k` forces `m = k`.
fn two_line(k_max: u64, m_max: u64) -> Vec<MultiplicitySolution> {
    let mut out = Vec::new();
    for k in 2..=k_max {
        let mut found = Vec::new();
        for m in 2..=m_max {
            // 1 - 1/m == 1 - 1/k
            if m == k {
                found.push(m);
            }
        }
        for m in found {
            out.push(MultiplicitySolution {
                k: Some(k),
                multiplicities: vec![m],
            });
        }
    }
    out
}

/// `sum (1 - 1/m_j) = 1`, repeats allowed. Terms lie in [1/2, 1), so
/// J = 2 and `1/m1 + 1/m2 = 1`.
fn three_line(m_max: u64) -> Vec<MultiplicitySolution> {
    let mut out = Vec::new();
    for m1 in 2..=m_max {
        for m2 in m1..=m_max {
            // exact test of 1/m1 + 1/m2 == 1
            if m2 + m1 == m1 * m2 {
                out.push(MultiplicitySolution {
                    k: None,
                    multiplicities: vec![m1, m2],
                });
            }
            if m1 * m2 > m2 + m1 {
                break; // sums only shrink as m2 grows
            }
        }
    }
    out
}

/// `sum (1 - 1/m_j) = 2 - 3/k`, pairwise coprime. The right side is below
/// 2, so J <= 3; for each admissible multiset, k is pinned by
/// `3/k = 2 - sum (1 - 1/m_j)`.
fn total(k_max: u64, m_max: u64) -> Vec<MultiplicitySolution> {
    let mut out = Vec::new();
    let mut push = |k_num: u64, k_den: u64, ms: Vec<u64>| {
        // k = k_num / k_den must be an integer in [2, k_max]
        if k_den != 0 && k_num % k_den == 0 {
            let k = k_num / k_den;
            if (2..=k_max).contains(&k) {
                out.push(MultiplicitySolution {
                    k: Some(k),
                    multiplicities: ms,
                });
            }
        }
    };

    // J = 1: 3/k = 1 + 1/m, so k = 3m/(m+1)
    for m in 2..=m_max {
        push(3 * m, m + 1, vec![m]);
    }

    // J = 2: 3/k = 1/m1 + 1/m2, so k = 3 m1 m2 / (m1 + m2)
    for m1 in 2..=m_max {
        for m2 in m1 + 1..=m_max {
            if gcd(m1, m2) != 1 {
                continue;
            }
            push(3 * m1 * m2, m1 + m2, vec![m1, m2]);
        }
    }

    // J = 3: 3/k = 1/m1 + 1/m2 + 1/m3 - 1 must be positive, which forces
    // 1/m1 + 1/m2 + 1/m3 > 1 and pins the loops down to a handful of
    // candidates; the inner bounds below only discard impossible tails.
    for m1 in 2..=m_max {
        if 3 * 2 <= m1 * 2 {
            // even three copies of 1/m1 cannot exceed 1
            break;
        }
        for m2 in m1 + 1..=m_max {
            // need 1/m1 + 2/m2 > 1
            if 2 * m1 <= (m1 - 1) * m2 {
                break;
            }
            for m3 in m2 + 1..=m_max {
                // exact: 1/m1 + 1/m2 + 1/m3 > 1
                let num = m2 * m3 + m1 * m3 + m1 * m2;
                let den = m1 * m2 * m3;
                if num <= den {
                    break;
                }
                if !pairwise_coprime(&[m1, m2, m3]) {
                    continue;
                }
                // 3/k = num/den - 1
                push(3 * den, num - den, vec![m1, m2, m3]);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn total_kind_has_exactly_two_solutions() {
        let sols = solutions(CountingEquation::Total, 10_000, 1_000);
        assert_eq!(
            sols,
            vec![
                MultiplicitySolution {
                    k: Some(2),
                    multiplicities: vec![2]
                },
                MultiplicitySolution {
                    k: Some(90),
                    multiplicities: vec![2, 3, 5]
                },
            ]
        );
    }

    #[test]
    fn total_kind_is_stable_under_larger_bounds() {
        let base = solutions(CountingEquation::Total, 10_000, 1_000);
        let doubled = solutions(CountingEquation::Total, 20_000, 2_000);
        assert_eq!(base, doubled);
    }

    #[test]
    fn two_line_unique_solution_per_k() {
        let sols = solutions(CountingEquation::TwoLine, 50, 1_000);
        assert_eq!(sols.len(), 49);
        for (i, s) in sols.iter().enumerate() {
            let k = i as u64 + 2;
            assert_eq!(s.k, Some(k));
            assert_eq!(s.multiplicities, vec![k]);
        }
    }

    #[test]
    fn three_line_forces_two_double_points() {
        let sols = solutions(CountingEquation::ThreeLine, 10_000, 1_000);
        assert_eq!(
            sols,
            vec![MultiplicitySolution {
                k: None,
                multiplicities: vec![2, 2]
            }]
        );
    }

    #[test]
    fn tokens_round_trip() {
        for kind in [
            CountingEquation::TwoLine,
            CountingEquation::ThreeLine,
            CountingEquation::Total,
        ] {
            assert_eq!(CountingEquation::from_token(kind.token()), Some(kind));
        }
        assert_eq!(CountingEquation::from_token("nope"), None);
    }
}
