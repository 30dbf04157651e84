//! Integer lattice helpers: ℓq norms and box enumeration.

use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

/// Exponent of the ℓq ball used as a summation region.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Q {
    #[serde(rename = "1")]
    One,
    #[serde(rename = "2")]
    Two,
    #[serde(rename = "inf")]
    Inf,
}

impl Q {
    /// ‖k‖_q as a float.
    pub fn norm(self, k: &[i64]) -> f64 {
        match self {
            Q::One => k.iter().map(|v| v.unsigned_abs()).sum::<u64>() as f64,
            Q::Two => (k.iter().map(|v| v * v).sum::<i64>() as f64).sqrt(),
            Q::Inf => k.iter().map(|v| v.unsigned_abs()).max().unwrap_or(0) as f64,
        }
    }

    /// Integer norm for q ∈ {1, ∞}; squared norm for q = 2.
    pub fn int_norm(self, k: &[i64]) -> i64 {
        match self {
            Q::One => k.iter().map(|v| v.abs()).sum(),
            Q::Two => k.iter().map(|v| v * v).sum(),
            Q::Inf => k.iter().map(|v| v.abs()).max().unwrap_or(0),
        }
    }

    /// Closed-ball membership ‖k‖_q ≤ n in exact integer arithmetic.
    pub fn in_ball(self, k: &[i64], n: i64) -> bool {
        match self {
            Q::Two => self.int_norm(k) <= n * n,
            _ => self.int_norm(k) <= n,
        }
    }
}

impl fmt::Display for Q {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Q::One => "1",
            Q::Two => "2",
            Q::Inf => "inf",
        })
    }
}

impl FromStr for Q {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "1" => Ok(Q::One),
            "2" => Ok(Q::Two),
            "inf" | "infinity" | "∞" => Ok(Q::Inf),
            other => Err(format!("q must be one of 1, 2, inf (got '{other}')")),
        }
    }
}

/// Visit every k with |k_i| ≤ radii[i], last coordinate fastest.
pub fn for_each_in_box<F: FnMut(&[i64])>(radii: &[i64], mut f: F) {
    if radii.iter().any(|&r| r < 0) {
        return;
    }
    let mut k: Vec<i64> = radii.iter().map(|r| -r).collect();
    loop {
        f(&k);
        let mut axis = k.len();
        loop {
            if axis == 0 {
                return;
            }
            axis -= 1;
            if k[axis] < radii[axis] {
                k[axis] += 1;
                break;
            }
            k[axis] = -radii[axis];
        }
    }
}

/// All multi-indices in the closed ℓq ball of radius n in Z^d.
pub fn ball_indices(q: Q, d: usize, n: i64) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    for_each_in_box(&vec![n; d], |k| {
        if q.in_ball(k, n) {
            out.push(k.to_vec());
        }
    });
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ball_counts() {
        assert_eq!(ball_indices(Q::One, 2, 4).len(), 41);
        assert_eq!(ball_indices(Q::Two, 2, 1).len(), 5);
        assert_eq!(ball_indices(Q::Inf, 2, 1).len(), 9);
        assert_eq!(ball_indices(Q::Inf, 3, 2).len(), 125);
        assert_eq!(ball_indices(Q::One, 1, 5).len(), 11);
    }

    #[test]
    fn circular_boundary_is_exact() {
        // 3^2 + 4^2 = 5^2 sits on the sphere and belongs to the closed ball
        assert!(Q::Two.in_ball(&[3, 4], 5));
        assert!(!Q::Two.in_ball(&[3, 5], 5));
    }

    #[test]
    fn parse_q() {
        assert_eq!("inf".parse::<Q>().unwrap(), Q::Inf);
        assert_eq!("2".parse::<Q>().unwrap(), Q::Two);
        assert!("3".parse::<Q>().is_err());
    }
}
