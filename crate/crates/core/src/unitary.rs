use std::f64::consts::PI;
use std::ops::Mul;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};

pub type C64 = Complex64;

pub(crate) fn cis(theta: f64) -> C64 {
    C64::from_polar(1.0, theta)
}

/// Dense complex square matrix, expected to be unitary.
///
/// Multi-qubit matrices index the first listed qubit as the most significant bit.
#[derive(Clone, Debug, PartialEq)]
pub struct Unitary(DMatrix<C64>);

impl Unitary {
    pub fn from_matrix(m: DMatrix<C64>) -> Result<Self> {
        if m.nrows() != m.ncols() {
            return Err(Error::DimensionMismatch(m.nrows(), m.ncols()));
        }
        Ok(Unitary(m))
    }

    pub fn from_row_slice(dim: usize, entries: &[C64]) -> Self {
        assert_eq!(entries.len(), dim * dim, "entry count must be dim squared");
        Unitary(DMatrix::from_row_slice(dim, dim, entries))
    }

    /// Haar-random unitary: QR of a complex Gaussian matrix with the phases of `R` removed.
    pub fn random<R: rand::Rng>(dim: usize, rng: &mut R) -> Self {
        let normal = rand_distr::StandardNormal;
        let g = DMatrix::from_fn(dim, dim, |_, _| C64::new(rng.sample(normal), rng.sample(normal)));
        let (q, r) = g.qr().unpack();
        let phases = DMatrix::from_fn(dim, dim, |i, j| {
            if i == j && r[(i, i)].norm() > 0.0 {
                r[(i, i)] / r[(i, i)].norm()
            } else if i == j {
                C64::new(1.0, 0.0)
            } else {
                C64::new(0.0, 0.0)
            }
        });
        Unitary(q * phases)
    }

    pub fn identity(dim: usize) -> Self {
        Unitary(DMatrix::identity(dim, dim))
    }

    pub fn diagonal(entries: &[C64]) -> Self {
        let n = entries.len();
        let mut m = DMatrix::zeros(n, n);
        for (i, &e) in entries.iter().enumerate() {
            m[(i, i)] = e;
        }
        Unitary(m)
    }

    pub fn dim(&self) -> usize {
        self.0.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<C64> {
        &self.0
    }

    pub fn into_matrix(self) -> DMatrix<C64> {
        self.0
    }

    pub fn get(&self, row: usize, col: usize) -> C64 {
        self.0[(row, col)]
    }

    pub fn adjoint(&self) -> Self {
        Unitary(self.0.adjoint())
    }

    pub fn kron(&self, other: &Unitary) -> Self {
        Unitary(self.0.kronecker(&other.0))
    }

    pub fn scale(&self, s: C64) -> Self {
        Unitary(self.0.map(|e| e * s))
    }

    pub fn trace(&self) -> C64 {
        self.0.trace()
    }

    /// Largest entrywise deviation of `U†U` from the identity.
    pub fn unitarity_error(&self) -> f64 {
        let p = self.0.adjoint() * &self.0;
        let d = self.dim();
        let mut worst = 0.0f64;
        for r in 0..d {
            for c in 0..d {
                let target = if r == c { C64::new(1.0, 0.0) } else { C64::new(0.0, 0.0) };
                worst = worst.max((p[(r, c)] - target).norm());
            }
        }
        worst
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        self.unitarity_error() <= tol
    }

    /// Largest entrywise difference.
    pub fn max_abs_diff(&self, other: &Unitary) -> Result<f64> {
        check_dims(self, other)?;
        Ok(self
            .0
            .iter()
            .zip(other.0.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }
}

impl Mul for &Unitary {
    type Output = Unitary;
    fn mul(self, rhs: &Unitary) -> Unitary {
        Unitary(&self.0 * &rhs.0)
    }
}

fn check_dims(a: &Unitary, b: &Unitary) -> Result<()> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch(a.dim(), b.dim()));
    }
    Ok(())
}

/// Trace distance up to global phase: `sqrt((d - |tr(U†V)|) / d)`.
pub fn dist(u: &Unitary, v: &Unitary) -> Result<f64> {
    check_dims(u, v)?;
    let d = u.dim() as f64;
    let mut overlap = C64::new(0.0, 0.0);
    for (a, b) in u.0.iter().zip(v.0.iter()) {
        overlap += a.conj() * b;
    }
    // d − |tr U†V| = ½‖V − e^{iα}U‖²_F with α = arg tr U†V, summed without cancellation
    let phase = if overlap.norm() > 0.0 { overlap / overlap.norm() } else { C64::new(1.0, 0.0) };
    let gap: f64 = u.0.iter().zip(v.0.iter()).map(|(a, b)| (b - phase * a).norm_sqr()).sum::<f64>() / 2.0;
    Ok((gap / d).sqrt())
}

/// `diag(1, e^{iφ})`.
pub fn rz_matrix(phi: f64) -> Unitary {
    Unitary::diagonal(&[C64::new(1.0, 0.0), cis(phi)])
}

/// `diag(1, 1, 1, e^{iφ})`.
pub fn crz_matrix(phi: f64) -> Unitary {
    let one = C64::new(1.0, 0.0);
    Unitary::diagonal(&[one, one, one, cis(phi)])
}

/// Reduce an angle into `[0, 2π)`.
pub fn wrap_angle(phi: f64) -> f64 {
    let r = phi.rem_euclid(2.0 * PI);
    if r >= 2.0 * PI {
        0.0
    } else {
        r
    }
}

/// Reduce an angle into `(-π, π]`.
pub fn wrap_signed(phi: f64) -> f64 {
    let r = wrap_angle(phi);
    if r > PI {
        r - 2.0 * PI
    } else {
        r
    }
}
