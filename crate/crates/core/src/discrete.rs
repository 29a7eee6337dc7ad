//! Finite discretizations of continuous transformation groups that act
//! exactly on closed point sets: reflections and translations of a cyclic
//! line, and the 24 proper rotations of the cube acting on integer vectors.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::group::{Element, FiniteGroup, GroupAction};

/// Dihedral group of a cyclic line `Z_n`: translations `x ↦ x + k` and
/// reflections `x ↦ c - x`.
///
/// Elements `0..n` are the translations by `k`, elements `n..2n` the
/// reflections with `c = index - n`.
#[derive(Debug, Clone)]
pub struct DihedralLine {
    n: usize,
    action: GroupAction,
}

impl DihedralLine {
    pub fn new(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::input("DihedralLine::new", "need at least 3 points"));
        }
        let mut perms: Vec<Vec<usize>> = (0..n).map(|k| (0..n).map(|x| (x + k) % n).collect()).collect();
        perms.extend((0..n).map(|c| (0..n).map(|x| (c + n - x) % n).collect::<Vec<_>>()));
        let action = GroupAction::from_closed_permutations(n, perms)?;
        Ok(DihedralLine { n, action })
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn action(&self) -> &GroupAction {
        &self.action
    }

    /// `x ↦ x + k (mod n)`; negative shifts wrap.
    pub fn translation(&self, k: i64) -> Element {
        k.rem_euclid(self.n as i64) as usize
    }

    /// Reflection about the point `a`: `x ↦ 2a - x`.
    pub fn reflection_about(&self, a: usize) -> Element {
        self.n + (2 * a) % self.n
    }

    /// Signed distance class of `x` from `center`, folded to `0..=n/2`.
    pub fn folded_distance(&self, x: usize, center: usize) -> usize {
        let d = (x + self.n - center % self.n) % self.n;
        d.min(self.n - d)
    }
}

pub type IntMatrix3 = [[i64; 3]; 3];
pub type IntVector3 = [i64; 3];

fn mat_mul(a: &IntMatrix3, b: &IntMatrix3) -> IntMatrix3 {
    let mut out = [[0; 3]; 3];
    for (i, row) in out.iter_mut().enumerate() {
        for (j, x) in row.iter_mut().enumerate() {
            *x = (0..3).map(|k| a[i][k] * b[k][j]).sum();
        }
    }
    out
}

fn det(m: &IntMatrix3) -> i64 {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

/// Row vector times matrix: the right action `φ ↦ φ·g`.
pub fn apply_row(v: &IntVector3, m: &IntMatrix3) -> IntVector3 {
    let mut out = [0; 3];
    for (j, x) in out.iter_mut().enumerate() {
        *x = (0..3).map(|k| v[k] * m[k][j]).sum();
    }
    out
}

/// Rotation group of the cube (24 signed permutation matrices with
/// determinant +1) acting on a closed set of integer vectors.
#[derive(Debug, Clone)]
pub struct OctahedralRotations {
    matrices: Vec<IntMatrix3>,
    points: Vec<IntVector3>,
    action: GroupAction,
}

impl OctahedralRotations {
    /// All 24 rotation matrices, identity first, in a fixed order.
    pub fn matrices() -> Vec<IntMatrix3> {
        const PERMS: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
        let mut out = Vec::with_capacity(24);
        for perm in PERMS {
            for signs in 0..8u8 {
                let mut m = [[0; 3]; 3];
                for (i, &j) in perm.iter().enumerate() {
                    m[i][j] = if signs & (1 << i) == 0 { 1 } else { -1 };
                }
                if det(&m) == 1 {
                    out.push(m);
                }
            }
        }
        out
    }

    /// The group acting on `points`, which must be closed under every rotation.
    pub fn on_points(points: Vec<IntVector3>) -> Result<Self> {
        const OP: &str = "OctahedralRotations::on_points";
        let matrices = Self::matrices();
        let mindex: HashMap<IntMatrix3, usize> = matrices.iter().enumerate().map(|(i, m)| (*m, i)).collect();
        let compose = matrices.iter().map(|a| matrices.iter().map(|b| mindex[&mat_mul(a, b)]).collect()).collect();
        let group = FiniteGroup::from_table(compose)?;
        let pindex: HashMap<IntVector3, usize> = points.iter().enumerate().map(|(i, p)| (*p, i)).collect();
        if pindex.len() != points.len() {
            return Err(Error::input(OP, "duplicate points"));
        }
        let mut act = Vec::with_capacity(points.len());
        for p in &points {
            let row = matrices
                .iter()
                .map(|m| pindex.get(&apply_row(p, m)).copied())
                .collect::<Option<Vec<usize>>>()
                .ok_or_else(|| Error::input(OP, format!("point {p:?} has an image outside the set")))?;
            act.push(row);
        }
        let action = GroupAction::new(group, act)?;
        Ok(OctahedralRotations { matrices, points, action })
    }

    /// The six vectors `±scale·e_i`, ordered `+x, -x, +y, -y, +z, -z`.
    pub fn axis_points(scale: i64) -> Vec<IntVector3> {
        let mut out = Vec::with_capacity(6);
        for i in 0..3 {
            for s in [scale, -scale] {
                let mut v = [0; 3];
                v[i] = s;
                out.push(v);
            }
        }
        out
    }

    pub fn action(&self) -> &GroupAction {
        &self.action
    }

    pub fn points(&self) -> &[IntVector3] {
        &self.points
    }

    pub fn matrix(&self, g: Element) -> &IntMatrix3 {
        &self.matrices[g]
    }

    /// Elements mapping the coordinate axis `axis` to itself up to sign:
    /// rotations about it together with half-turns about perpendicular axes.
    pub fn axis_stabilizer_up_to_sign(&self, axis: usize) -> Vec<Element> {
        let mut e = [0; 3];
        e[axis] = 1;
        (0..self.matrices.len())
            .filter(|&g| {
                let img = apply_row(&e, &self.matrices[g]);
                img == e || img == [-e[0], -e[1], -e[2]]
            })
            .collect()
    }

    /// Some rotation taking coordinate axis `from` onto axis `to` (`e_from·g = e_to`).
    pub fn rotation_taking_axis(&self, from: usize, to: usize) -> Option<Element> {
        let mut e = [0; 3];
        e[from] = 1;
        let mut f = [0; 3];
        f[to] = 1;
        (0..self.matrices.len()).find(|&g| apply_row(&e, &self.matrices[g]) == f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dihedral_has_expected_order_and_reflections() {
        let d = DihedralLine::new(8).unwrap();
        assert_eq!(d.action().group().order(), 16);
        let s = d.reflection_about(3);
        assert_eq!(d.action().act(1, s), 5);
        assert_eq!(d.action().act(3, s), 3);
        let t = d.translation(-2);
        assert_eq!(d.action().act(1, t), 7);
    }

    #[test]
    fn octahedral_group_has_24_elements() {
        let o = OctahedralRotations::on_points(OctahedralRotations::axis_points(1)).unwrap();
        assert_eq!(o.action().group().order(), 24);
        assert!(o.action().is_transitive());
        assert_eq!(o.axis_stabilizer_up_to_sign(2).len(), 8);
        assert!(OctahedralRotations::on_points(vec![[1, 0, 0]]).is_err());
    }
}
