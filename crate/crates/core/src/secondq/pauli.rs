//! Pauli-string algebra and the Jordan-Wigner image of fermionic terms.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::unitary::C64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

/// Tensor product of Paulis over at most 64 qubits: bit `q` of `x`/`z` gives
/// `I`, `X`, `Z` or `Y` (both set).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct PauliString {
    x: u64,
    z: u64,
}

impl PauliString {
    pub const IDENTITY: PauliString = PauliString { x: 0, z: 0 };

    pub fn single(q: usize, p: Pauli) -> PauliString {
        let bit = 1u64 << q;
        match p {
            Pauli::I => PauliString::IDENTITY,
            Pauli::X => PauliString { x: bit, z: 0 },
            Pauli::Y => PauliString { x: bit, z: bit },
            Pauli::Z => PauliString { x: 0, z: bit },
        }
    }

    pub fn get(&self, q: usize) -> Pauli {
        match ((self.x >> q) & 1, (self.z >> q) & 1) {
            (0, 0) => Pauli::I,
            (1, 0) => Pauli::X,
            (1, 1) => Pauli::Y,
            _ => Pauli::Z,
        }
    }

    pub fn is_identity(&self) -> bool {
        self.x | self.z == 0
    }

    /// Qubits acted on, ascending.
    pub fn support(&self) -> Vec<usize> {
        let m = self.x | self.z;
        (0..64).filter(|q| (m >> q) & 1 == 1).collect()
    }

    /// `self · other = i^k · result`.
    pub fn mul(&self, other: &PauliString) -> (u8, PauliString) {
        let mut k = 0u8;
        let mut m = self.x | self.z | other.x | other.z;
        while m != 0 {
            let q = m.trailing_zeros() as usize;
            m &= m - 1;
            k += match (self.get(q), other.get(q)) {
                (Pauli::X, Pauli::Y) | (Pauli::Y, Pauli::Z) | (Pauli::Z, Pauli::X) => 1,
                (Pauli::Y, Pauli::X) | (Pauli::Z, Pauli::Y) | (Pauli::X, Pauli::Z) => 3,
                _ => 0,
            };
        }
        (k % 4, PauliString { x: self.x ^ other.x, z: self.z ^ other.z })
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            return f.write_str("I");
        }
        let parts: Vec<String> = self.support().into_iter().map(|q| format!("{:?}{q}", self.get(q))).collect();
        f.write_str(&parts.join(" "))
    }
}

fn i_pow(k: u8) -> C64 {
    [C64::new(1.0, 0.0), C64::new(0.0, 1.0), C64::new(-1.0, 0.0), C64::new(0.0, -1.0)][k as usize % 4]
}

/// Linear combination of Pauli strings.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct PauliSum(BTreeMap<PauliString, C64>);

impl PauliSum {
    pub fn term(p: PauliString, c: C64) -> PauliSum {
        let mut s = PauliSum::default();
        s.add_term(p, c);
        s
    }

    pub fn add_term(&mut self, p: PauliString, c: C64) {
        *self.0.entry(p).or_default() += c;
    }

    pub fn add(&self, other: &PauliSum) -> PauliSum {
        let mut s = self.clone();
        for (p, c) in &other.0 {
            s.add_term(*p, *c);
        }
        s
    }

    pub fn mul(&self, other: &PauliSum) -> PauliSum {
        let mut s = PauliSum::default();
        for (p, a) in &self.0 {
            for (q, b) in &other.0 {
                let (k, r) = p.mul(q);
                s.add_term(r, a * b * i_pow(k));
            }
        }
        s
    }

    pub fn scale(&self, c: C64) -> PauliSum {
        PauliSum(self.0.iter().map(|(p, a)| (*p, a * c)).collect())
    }

    pub fn adjoint(&self) -> PauliSum {
        PauliSum(self.0.iter().map(|(p, a)| (*p, a.conj())).collect())
    }

    /// Drop coefficients below `tol` in magnitude.
    pub fn pruned(&self, tol: f64) -> PauliSum {
        PauliSum(self.0.iter().filter(|(_, a)| a.norm() > tol).map(|(p, a)| (*p, *a)).collect())
    }

    pub fn iter(&self) -> impl Iterator<Item = (&PauliString, &C64)> {
        self.0.iter()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Real coefficients of a hermitian sum; errors if any imaginary part exceeds `tol`.
    pub fn real_terms(&self, tol: f64) -> Result<Vec<(PauliString, f64)>> {
        self.0
            .iter()
            .map(|(p, a)| {
                if a.im.abs() > tol {
                    Err(Error::InvalidArgument(format!("coefficient of {p} is not real: {a}")))
                } else {
                    Ok((*p, a.re))
                }
            })
            .collect()
    }
}

fn z_string(below: usize) -> PauliString {
    let mask = if below == 0 { 0 } else { u64::MAX >> (64 - below) };
    PauliString { x: 0, z: mask }
}

/// Jordan-Wigner `a_p†` (`dagger`) or `a_p`: `Z_{<p} (X ∓ iY)/2`.
pub fn ladder_operator(p: usize, dagger: bool) -> Result<PauliSum> {
    if p >= 64 {
        return Err(Error::IndexOutOfRange(format!("orbital {p} beyond 64 qubits")));
    }
    let zs = z_string(p);
    let x = zs.mul(&PauliString::single(p, Pauli::X)).1;
    let y = zs.mul(&PauliString::single(p, Pauli::Y)).1;
    let sign = if dagger { -0.5 } else { 0.5 };
    let mut s = PauliSum::term(x, C64::new(0.5, 0.0));
    s.add_term(y, C64::new(0.0, sign));
    Ok(s)
}

/// Product of ladder operators, leftmost first: `(orbital, dagger)`.
pub fn fermion_product(ops: &[(usize, bool)]) -> Result<PauliSum> {
    let mut acc = PauliSum::term(PauliString::IDENTITY, C64::new(1.0, 0.0));
    for &(p, d) in ops {
        acc = acc.mul(&ladder_operator(p, d)?);
    }
    Ok(acc.pruned(1e-15))
}
