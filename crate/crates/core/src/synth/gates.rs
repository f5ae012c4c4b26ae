use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_4};
use std::ops::Mul;

use serde::{Deserialize, Serialize};

use crate::gate::{Gate, GateKind, Qubit};
use crate::unitary::{cis, Unitary, C64};

/// Single-qubit members of the fault-tolerant set. Declaration order is the
/// lexicographic order used for tie-breaking.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum SqGate {
    H,
    S,
    Sdg,
    T,
    Tdg,
    X,
    Y,
    Z,
}

impl SqGate {
    pub const ALL: [SqGate; 8] =
        [SqGate::H, SqGate::S, SqGate::Sdg, SqGate::T, SqGate::Tdg, SqGate::X, SqGate::Y, SqGate::Z];

    pub fn mat(self) -> Mat2 {
        let o = C64::new(0.0, 0.0);
        let l = C64::new(1.0, 0.0);
        let i = C64::new(0.0, 1.0);
        let h = C64::new(FRAC_1_SQRT_2, 0.0);
        Mat2(match self {
            SqGate::H => [h, h, h, -h],
            SqGate::S => [l, o, o, i],
            SqGate::Sdg => [l, o, o, -i],
            SqGate::T => [l, o, o, cis(FRAC_PI_4)],
            SqGate::Tdg => [l, o, o, cis(-FRAC_PI_4)],
            SqGate::X => [o, l, l, o],
            SqGate::Y => [o, -i, i, o],
            SqGate::Z => [l, o, o, -l],
        })
    }

    pub fn inverse(self) -> SqGate {
        match self {
            SqGate::S => SqGate::Sdg,
            SqGate::Sdg => SqGate::S,
            SqGate::T => SqGate::Tdg,
            SqGate::Tdg => SqGate::T,
            g => g,
        }
    }

    pub fn is_t(self) -> bool {
        matches!(self, SqGate::T | SqGate::Tdg)
    }

    pub fn is_pauli(self) -> bool {
        matches!(self, SqGate::X | SqGate::Y | SqGate::Z)
    }

    /// Power of `T` for diagonal members (`T^k`, k mod 8).
    pub fn z_eighths(self) -> Option<u8> {
        match self {
            SqGate::T => Some(1),
            SqGate::S => Some(2),
            SqGate::Z => Some(4),
            SqGate::Sdg => Some(6),
            SqGate::Tdg => Some(7),
            _ => None,
        }
    }

    pub fn kind(self) -> GateKind {
        match self {
            SqGate::H => GateKind::H,
            SqGate::S => GateKind::S,
            SqGate::Sdg => GateKind::Sdg,
            SqGate::T => GateKind::T,
            SqGate::Tdg => GateKind::Tdg,
            SqGate::X => GateKind::X,
            SqGate::Y => GateKind::Y,
            SqGate::Z => GateKind::Z,
        }
    }

    pub fn gate(self, q: Qubit) -> Gate {
        Gate::single(self.kind(), q)
    }

    pub fn name(self) -> &'static str {
        self.kind().name()
    }
}

/// Shortest diagonal word for `T^k`.
pub(crate) fn z_word(k: u8) -> &'static [SqGate] {
    match k % 8 {
        0 => &[],
        1 => &[SqGate::T],
        2 => &[SqGate::S],
        3 => &[SqGate::S, SqGate::T],
        4 => &[SqGate::Z],
        5 => &[SqGate::Z, SqGate::T],
        6 => &[SqGate::Sdg],
        _ => &[SqGate::Tdg],
    }
}

/// Row-major 2×2 complex matrix.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Mat2(pub [C64; 4]);

impl Mat2 {
    pub fn identity() -> Mat2 {
        let o = C64::new(0.0, 0.0);
        let l = C64::new(1.0, 0.0);
        Mat2([l, o, o, l])
    }

    pub fn from_unitary(u: &Unitary) -> Option<Mat2> {
        (u.dim() == 2).then(|| Mat2([u.get(0, 0), u.get(0, 1), u.get(1, 0), u.get(1, 1)]))
    }

    pub fn to_unitary(self) -> Unitary {
        Unitary::from_row_slice(2, &self.0)
    }

    pub fn adjoint(self) -> Mat2 {
        let m = self.0;
        Mat2([m[0].conj(), m[2].conj(), m[1].conj(), m[3].conj()])
    }

    pub fn det(self) -> C64 {
        self.0[0] * self.0[3] - self.0[1] * self.0[2]
    }

    /// Phase-free distance `sqrt((2 - |tr(self† other)|) / 2)`.
    pub fn dist(self, other: Mat2) -> f64 {
        let t: C64 = self.0.iter().zip(&other.0).map(|(a, b)| a.conj() * b).sum();
        ((2.0 - t.norm()) / 2.0).max(0.0).sqrt()
    }

    /// Representative in SU(2) with non-negative real trace.
    pub fn to_su2(self) -> Mat2 {
        let s = self.det().sqrt();
        let mut m = Mat2(self.0.map(|e| e / s));
        if (m.0[0] + m.0[3]).re < 0.0 {
            m = Mat2(m.0.map(|e| -e));
        }
        m
    }

    /// Rotation matrix `R_ij = ½ tr(σ_i U σ_j U†)`, invariant under global phase.
    pub fn so3(self) -> [f64; 9] {
        let u = self.to_su2();
        // U = a0 I - i (a1 X + a2 Y + a3 Z)
        let [p, q, r, s] = u.0;
        let a0 = (p.re + s.re) / 2.0;
        let a3 = (s.im - p.im) / 2.0;
        let a1 = -(q.im + r.im) / 2.0;
        let a2 = (r.re - q.re) / 2.0;
        let (w, x, y, z) = (a0, a1, a2, a3);
        [
            1.0 - 2.0 * (y * y + z * z),
            2.0 * (x * y - w * z),
            2.0 * (x * z + w * y),
            2.0 * (x * y + w * z),
            1.0 - 2.0 * (x * x + z * z),
            2.0 * (y * z - w * x),
            2.0 * (x * z - w * y),
            2.0 * (y * z + w * x),
            1.0 - 2.0 * (x * x + y * y),
        ]
    }

    /// Rounded `so3` key used to deduplicate unitaries up to phase.
    pub fn key(self) -> [i64; 9] {
        self.so3().map(|v| (v * 1e8).round() as i64)
    }
}

impl Mul for Mat2 {
    type Output = Mat2;
    fn mul(self, b: Mat2) -> Mat2 {
        let a = self.0;
        let b = b.0;
        Mat2([
            a[0] * b[0] + a[1] * b[2],
            a[0] * b[1] + a[1] * b[3],
            a[2] * b[0] + a[3] * b[2],
            a[2] * b[1] + a[3] * b[3],
        ])
    }
}

/// Unitary of a time-ordered word: the first gate acts first.
pub fn compose(word: &[SqGate]) -> Mat2 {
    word.iter().fold(Mat2::identity(), |acc, g| g.mat() * acc)
}

/// Word for the adjoint: reversed, each gate inverted.
pub fn adjoint_word(word: &[SqGate]) -> Vec<SqGate> {
    word.iter().rev().map(|g| g.inverse()).collect()
}

/// Cancel self-inverse pairs and merge runs of diagonal gates, to a fixed point.
pub fn simplify(word: &[SqGate]) -> Vec<SqGate> {
    let mut cur = word.to_vec();
    loop {
        let mut out: Vec<SqGate> = Vec::with_capacity(cur.len());
        let mut i = 0;
        while i < cur.len() {
            if cur[i].z_eighths().is_some() {
                let mut k = 0u8;
                let mut j = i;
                while j < cur.len() {
                    match cur[j].z_eighths() {
                        Some(e) => k = (k + e) % 8,
                        None => break,
                    }
                    j += 1;
                }
                out.extend_from_slice(z_word(k));
                i = j;
            } else {
                if out.last() == Some(&cur[i]) {
                    out.pop();
                } else {
                    out.push(cur[i]);
                }
                i += 1;
            }
        }
        if out == cur {
            return out;
        }
        cur = out;
    }
}
