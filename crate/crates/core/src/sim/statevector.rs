use num_complex::Complex64;

use crate::circuit::{Circuit, Gate};
use crate::error::{Error, Result};
use crate::gf2::BitVec;

use super::affine::invert;
use super::{AffineState, PauliError};

pub const MAX_SV_WIDTH: usize = 14;

/// Dense amplitudes; bit `q` of an index is the value of qubit `q`.
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    width: usize,
    amps: Vec<Complex64>,
}

fn index(bits: &BitVec) -> usize {
    bits.ones().map(|q| 1usize << q).sum()
}

fn bits_of(width: usize, idx: usize) -> BitVec {
    BitVec::from_u64(width, idx as u64)
}

impl StateVector {
    pub fn basis(bits: &BitVec) -> Result<Self> {
        let width = bits.len();
        if width > MAX_SV_WIDTH {
            return Err(Error::TooWide {
                width,
                limit: MAX_SV_WIDTH,
            });
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); 1 << width];
        amps[index(bits)] = Complex64::new(1.0, 0.0);
        Ok(StateVector { width, amps })
    }

    pub fn zero(width: usize) -> Result<Self> {
        Self::basis(&BitVec::zeros(width))
    }

    /// Uniform real superposition over the members of `s`.
    pub fn from_affine(s: &AffineState) -> Result<Self> {
        let mut out = Self::zero(s.width())?;
        out.amps[0] = Complex64::new(0.0, 0.0);
        let members = s.members();
        let a = Complex64::new(1.0 / (members.len() as f64).sqrt(), 0.0);
        for m in members {
            out.amps[index(&m)] = a;
        }
        Ok(out)
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn amplitude(&self, bits: &BitVec) -> Complex64 {
        self.amps[index(bits)]
    }

    pub fn norm(&self) -> f64 {
        self.amps
            .iter()
            .map(Complex64::norm_sqr)
            .sum::<f64>()
            .sqrt()
    }

    /// `|⟨self|other⟩|²`.
    pub fn fidelity(&self, other: &StateVector) -> f64 {
        assert_eq!(self.width, other.width, "width mismatch");
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum::<Complex64>()
            .norm_sqr()
    }

    /// Basis states with probability above `tol`.
    pub fn support(&self, tol: f64) -> Vec<BitVec> {
        let mut out: Vec<BitVec> = (0..self.amps.len())
            .filter(|&i| self.amps[i].norm_sqr() > tol)
            .map(|i| bits_of(self.width, i))
            .collect();
        out.sort();
        out
    }

    /// True iff this is a uniform superposition over exactly the members
    /// of `s`, up to a global phase.
    pub fn matches_affine(&self, s: &AffineState, tol: f64) -> bool {
        if s.width() != self.width {
            return false;
        }
        let members = s.members();
        let a = 1.0 / (members.len() as f64).sqrt();
        let phase = self.amplitude(&members[0]) / a;
        if (phase.norm() - 1.0).abs() > tol {
            return false;
        }
        let mut expected = vec![Complex64::new(0.0, 0.0); self.amps.len()];
        for m in &members {
            expected[index(m)] = phase * a;
        }
        self.amps
            .iter()
            .zip(&expected)
            .all(|(x, y)| (x - y).norm() <= tol)
    }

    pub fn apply(&mut self, c: &Circuit) -> Result<()> {
        assert_eq!(c.width, self.width, "circuit width mismatch");
        for g in &c.gates {
            self.apply_gate(g)?;
        }
        Ok(())
    }

    pub fn apply_logical(&mut self, c: &Circuit) -> Result<()> {
        self.apply(c)?;
        if let Some(p) = &c.output_perm {
            self.permute(&invert(p));
        }
        Ok(())
    }

    pub fn apply_gate(&mut self, g: &Gate) -> Result<()> {
        match g {
            Gate::H { q } => {
                let bit = 1usize << q;
                let s = std::f64::consts::FRAC_1_SQRT_2;
                for i in 0..self.amps.len() {
                    if i & bit == 0 {
                        let (a, b) = (self.amps[i], self.amps[i | bit]);
                        self.amps[i] = (a + b) * s;
                        self.amps[i | bit] = (a - b) * s;
                    }
                }
            }
            Gate::Cnot { c, t } => {
                let (cb, tb) = (1usize << c, 1usize << t);
                for i in 0..self.amps.len() {
                    if i & cb != 0 && i & tb == 0 {
                        self.amps.swap(i, i | tb);
                    }
                }
            }
            Gate::Swap { a, b } => {
                let mut p: Vec<usize> = (0..self.width).collect();
                p.swap(*a, *b);
                self.permute(&p);
            }
            Gate::Perm { perm, .. } => self.permute(perm),
            Gate::Measure { qubits } => {
                self.measure_deterministic(qubits)?;
            }
        }
        Ok(())
    }

    /// Moves qubit `q` to position `perm[q]`.
    pub fn permute(&mut self, perm: &[usize]) {
        let mut out = vec![Complex64::new(0.0, 0.0); self.amps.len()];
        for (i, &a) in self.amps.iter().enumerate() {
            let j: usize = (0..self.width)
                .filter(|&q| i >> q & 1 == 1)
                .map(|q| 1usize << perm[q])
                .sum();
            out[j] = a;
        }
        self.amps = out;
    }

    pub fn inject(&mut self, e: &PauliError) {
        let xmask: usize = e.x.iter().map(|&q| 1usize << q).fold(0, |a, b| a ^ b);
        let zmask: usize = e.z.iter().map(|&q| 1usize << q).fold(0, |a, b| a ^ b);
        // Z acts first, then X (the order only changes a global sign).
        for (i, a) in self.amps.iter_mut().enumerate() {
            if (i & zmask).count_ones() % 2 == 1 {
                *a = -*a;
            }
        }
        if xmask != 0 {
            let old = self.amps.clone();
            for (i, a) in old.into_iter().enumerate() {
                self.amps[i ^ xmask] = a;
            }
        }
    }

    /// Value of `qubits` if it is the same on every basis state with
    /// nonzero amplitude.
    pub fn measure_deterministic(&self, qubits: &[usize]) -> Result<BitVec> {
        let mut value: Option<usize> = None;
        let mask: usize = qubits.iter().map(|&q| 1usize << q).sum();
        let mut random = 0usize;
        for (i, a) in self.amps.iter().enumerate() {
            if a.norm_sqr() <= 1e-24 {
                continue;
            }
            match value {
                None => value = Some(i & mask),
                Some(v) => random |= v ^ (i & mask),
            }
        }
        if random != 0 {
            let qs = qubits
                .iter()
                .copied()
                .filter(|&q| random >> q & 1 == 1)
                .collect();
            return Err(Error::NondeterministicMeasurement(qs));
        }
        let v = value.unwrap_or(0);
        Ok(BitVec::from_bools(
            &qubits.iter().map(|&q| v >> q & 1 == 1).collect::<Vec<_>>(),
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hadamard_involution() {
        let mut s = StateVector::zero(1).unwrap();
        s.apply_gate(&Gate::H { q: 0 }).unwrap();
        s.apply_gate(&Gate::H { q: 0 }).unwrap();
        assert!((s.amplitudes()[0].re - 1.0).abs() < 1e-12);
        assert!(s.amplitudes()[1].norm() < 1e-12);
    }

    #[test]
    fn cnot_basis() {
        let mut s = StateVector::basis(&BitVec::parse("10").unwrap()).unwrap();
        s.apply_gate(&Gate::Cnot { c: 0, t: 1 }).unwrap();
        assert_eq!(s.support(1e-12), vec![BitVec::parse("11").unwrap()]);
    }

    #[test]
    fn too_wide() {
        assert!(matches!(StateVector::zero(15), Err(Error::TooWide { .. })));
    }

    #[test]
    fn phase_flip_sign() {
        let mut s = StateVector::zero(1).unwrap();
        s.apply_gate(&Gate::H { q: 0 }).unwrap();
        s.inject(&PauliError::phase_flips(&[0]));
        s.apply_gate(&Gate::H { q: 0 }).unwrap();
        assert!((s.amplitudes()[1].norm() - 1.0).abs() < 1e-12);
    }
}
