//! CHSH: the four-term sign identity for ±1 outcomes and its violation by
//! singlet correlations.

use serde::{Deserialize, Serialize};

use super::epr::correlation_quantum;
use super::Direction;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChshRow {
    pub lambda_a: i8,
    pub lambda_a2: i8,
    pub mu_b: i8,
    pub mu_b2: i8,
    /// `λa μb' + λa' μb + λa' μb' - λa μb`.
    pub value: i8,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassicalChsh {
    pub rows: Vec<ChshRow>,
    pub all_plus_minus_two: bool,
    /// Largest `|value|` over the 16 sign vertices; bounds every mixture.
    pub bound: i8,
}

pub fn chsh_classical_bruteforce() -> ClassicalChsh {
    let sign = |bit: u8| if bit == 0 { 1i8 } else { -1 };
    let rows: Vec<ChshRow> = (0u8..16)
        .map(|m| {
            let (la, la2, mb, mb2) = (sign(m >> 3 & 1), sign(m >> 2 & 1), sign(m >> 1 & 1), sign(m & 1));
            ChshRow {
                lambda_a: la,
                lambda_a2: la2,
                mu_b: mb,
                mu_b2: mb2,
                value: la * mb2 + la2 * mb + la2 * mb2 - la * mb,
            }
        })
        .collect();
    let all = rows.iter().all(|r| r.value.abs() == 2);
    let bound = rows.iter().map(|r| r.value.abs()).max().unwrap_or(0);
    ClassicalChsh { rows, all_plus_minus_two: all, bound }
}

/// Settings `a, a'` at one site and `b, b'` at the other.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChshConfig {
    pub a: Direction<f64>,
    pub a2: Direction<f64>,
    pub b: Direction<f64>,
    pub b2: Direction<f64>,
}

impl ChshConfig {
    /// Planar settings given as angles in degrees, in the order `a, a', b, b'`.
    pub fn planar_degrees(angles: [f64; 4]) -> Self {
        let d = |x: f64| Direction::planar(x.to_radians());
        ChshConfig { a: d(angles[0]), a2: d(angles[1]), b: d(angles[2]), b2: d(angles[3]) }
    }

    pub fn from_vectors(v: [[f64; 3]; 4]) -> Result<Self> {
        let d = |x: [f64; 3]| Direction::new(x).map_err(|e| Error::input("chsh_quantum", e.to_string()));
        Ok(ChshConfig { a: d(v[0])?, a2: d(v[1])?, b: d(v[2])?, b2: d(v[3])? })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuantumChsh {
    /// `E(ab), E(ab'), E(a'b), E(a'b')`, each `-cos` of the angle.
    pub correlations: [f64; 4],
    /// `E(ab) - E(ab') - E(a'b) - E(a'b')`; the classical bound says `≤ 2`.
    pub expression: f64,
    /// Standard form: largest `|Σ E - 2E_k|` over the placement `k` of the minus sign.
    pub s_abs: f64,
    pub violated: bool,
    /// Largest gap between `-cos(angle)` and the singlet-state value.
    pub path_discrepancy: f64,
}

pub fn chsh_quantum(config: &ChshConfig) -> QuantumChsh {
    let pairs = [(config.a, config.b), (config.a, config.b2), (config.a2, config.b), (config.a2, config.b2)];
    let mut e = [0.0; 4];
    let mut gap: f64 = 0.0;
    for (k, (x, y)) in pairs.iter().enumerate() {
        e[k] = -x.dot(y);
        gap = gap.max((e[k] - correlation_quantum(x, y)).abs());
    }
    let expression = e[0] - e[1] - e[2] - e[3];
    QuantumChsh {
        correlations: e,
        expression,
        s_abs: (0..4).map(|k| (e.iter().sum::<f64>() - 2.0 * e[k]).abs()).fold(0.0, f64::max),
        violated: expression > 2.0,
        path_discrepancy: gap,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::SQRT_2;

    #[test]
    fn sixteen_rows_all_two() {
        let c = chsh_classical_bruteforce();
        assert_eq!(c.rows.len(), 16);
        assert!(c.all_plus_minus_two);
        assert_eq!(c.bound, 2);
        assert_eq!(c.rows[0].value, 2);
    }

    #[test]
    fn quantum_configurations() {
        let q = chsh_quantum(&ChshConfig::planar_degrees([0.0, 90.0, 135.0, 45.0]));
        assert!((q.expression - 2.0 * SQRT_2).abs() < 1e-9);
        assert!(q.violated);
        assert!((q.s_abs - 2.0 * SQRT_2).abs() < 1e-9);
        assert!(q.path_discrepancy < 1e-12);
        let same = chsh_quantum(&ChshConfig::planar_degrees([30.0; 4]));
        assert!((same.expression - 2.0).abs() < 1e-12);
        assert!(!same.violated);
        let low = chsh_quantum(&ChshConfig::planar_degrees([0.0, 270.0, 45.0, 135.0]));
        assert!((low.expression + 2.0 * SQRT_2).abs() < 1e-9);
        assert!(ChshConfig::from_vectors([[1.0, 1.0, 0.0], [1.0, 0.0, 0.0], [1.0, 0.0, 0.0], [1.0, 0.0, 0.0]]).is_err());
    }
}
