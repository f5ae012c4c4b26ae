use super::gates::{adjoint_word, compose, simplify, Mat2, SqGate};
use super::net::{nearest, GateSequence, SequenceDb};
use crate::error::{Error, Result};
use crate::unitary::{Unitary, C64};

/// Coordinates `(a0, a)` of an SU(2) element `a0 I - i a·σ`, with `a0 ≥ 0`.
fn su2_coords(u: Mat2) -> (f64, [f64; 3]) {
    let [p, q, r, s] = u.to_su2().0;
    let a0 = (p.re + s.re) / 2.0;
    let a = [-(q.im + r.im) / 2.0, (r.re - q.re) / 2.0, (s.im - p.im) / 2.0];
    (a0, a)
}

/// `exp(-i θ/2 n·σ)` for a unit axis `n`.
fn rotation(theta: f64, n: [f64; 3]) -> Mat2 {
    let (c, s) = ((theta / 2.0).cos(), (theta / 2.0).sin());
    Mat2([
        C64::new(c, -s * n[2]),
        C64::new(-s * n[1], -s * n[0]),
        C64::new(s * n[1], -s * n[0]),
        C64::new(c, s * n[2]),
    ])
}

fn norm3(v: [f64; 3]) -> f64 {
    (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt()
}

fn cross(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

/// Rotation angle and unit axis; the axis is arbitrary for the identity.
fn angle_axis(u: Mat2) -> (f64, [f64; 3]) {
    let (a0, a) = su2_coords(u);
    let s = norm3(a);
    if s < 1e-15 {
        return (0.0, [0.0, 0.0, 1.0]);
    }
    (2.0 * s.atan2(a0), a.map(|x| x / s))
}

/// Rotation taking unit vector `from` onto unit vector `to`.
fn align(from: [f64; 3], to: [f64; 3]) -> Mat2 {
    let axis = cross(from, to);
    let s = norm3(axis);
    let c = from.iter().zip(&to).map(|(a, b)| a * b).sum::<f64>().clamp(-1.0, 1.0);
    if s < 1e-12 {
        if c > 0.0 {
            return Mat2::identity();
        }
        // antiparallel: half turn about any perpendicular axis
        let trial = if from[0].abs() < 0.9 { [1.0, 0.0, 0.0] } else { [0.0, 1.0, 0.0] };
        let p = cross(from, trial);
        let n = norm3(p);
        return rotation(std::f64::consts::PI, p.map(|x| x / n));
    }
    rotation(s.atan2(c), axis.map(|x| x / s))
}

/// Balanced group commutator: `V W V† W† = Δ` for `Δ` near the identity.
pub fn group_commutator(delta: Mat2) -> (Mat2, Mat2) {
    let (theta, axis) = angle_axis(delta);
    // sin(θ/2) = 2 sin²(φ/2) sqrt(1 - sin⁴(φ/2))
    let st = (theta / 2.0).sin();
    let s2 = ((1.0 - (1.0 - st * st).max(0.0).sqrt()) / 2.0).sqrt();
    let phi = 2.0 * s2.sqrt().asin();
    let v = rotation(phi, [1.0, 0.0, 0.0]);
    let w = rotation(phi, [0.0, 1.0, 0.0]);
    let comm = v * w * v.adjoint() * w.adjoint();
    let (_, comm_axis) = angle_axis(comm);
    let s = align(comm_axis, axis);
    (s * v * s.adjoint(), s * w * s.adjoint())
}

fn approximate(u: Mat2, level: usize, db: &SequenceDb) -> Vec<SqGate> {
    if level == 0 {
        return nearest(db, u).word.clone();
    }
    let prev = approximate(u, level - 1, db);
    let delta = u * compose(&prev).adjoint();
    let (v, w) = group_commutator(delta);
    let vw = approximate(v, level - 1, db);
    let ww = approximate(w, level - 1, db);
    // V W V† W† U' in operator order, so U' acts first
    let mut word = prev;
    word.extend(adjoint_word(&ww));
    word.extend(adjoint_word(&vw));
    word.extend(ww);
    word.extend(vw);
    simplify(&word)
}

/// Solovay-Kitaev compilation of a single-qubit `target` at recursion `level`.
pub fn solovay_kitaev(target: &Unitary, level: usize, db: &SequenceDb) -> Result<GateSequence> {
    let t = Mat2::from_unitary(target).ok_or(Error::DimensionMismatch(target.dim(), 2))?;
    let word = approximate(t, level, db);
    let mut seq = GateSequence::new(word, target, f64::INFINITY);
    seq.satisfied = true;
    Ok(seq)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::synth::net::build_net;
    use crate::unitary::rz_matrix;

    #[test]
    fn commutator_reproduces_delta() {
        let delta = rotation(0.05, [0.3f64, -0.5, 0.8].map(|x| x / 0.9899494936611666));
        let (v, w) = group_commutator(delta);
        let c = v * w * v.adjoint() * w.adjoint();
        assert!(c.dist(delta) < 1e-7, "{}", c.dist(delta));
    }

    #[test]
    fn rotation_round_trips_angle_axis() {
        let n = [0.0, 0.6, 0.8];
        let (theta, axis) = angle_axis(rotation(1.1, n));
        assert!((theta - 1.1).abs() < 1e-12);
        assert!(axis.iter().zip(&n).all(|(a, b)| (a - b).abs() < 1e-12));
    }

    #[test]
    fn target_in_net_is_returned() {
        let db = build_net(6).unwrap();
        let s = solovay_kitaev(&rz_matrix(std::f64::consts::FRAC_PI_4), 2, &db).unwrap();
        assert_eq!(s.gates, vec![SqGate::T]);
        assert!(s.achieved_distance <= 1e-7);
    }

    #[test]
    fn level_zero_is_nearest_element() {
        let db = build_net(8).unwrap();
        let target = rz_matrix(0.1);
        let s = solovay_kitaev(&target, 0, &db).unwrap();
        let t = Mat2::from_unitary(&target).unwrap();
        let oracle = db.entries().iter().map(|e| e.unitary.dist(t)).fold(f64::INFINITY, f64::min);
        assert!((s.achieved_distance - oracle).abs() < 1e-12);
    }
}
