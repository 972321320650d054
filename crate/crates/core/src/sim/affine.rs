use crate::circuit::{permute_bits, Circuit, Gate};
use crate::code::for_each_codeword;
use crate::error::{Error, Result};
use crate::gf2::{BitMatrix, BitVec};

use super::PauliError;

/// Uniform superposition over `offset + span(generators)`, phases ignored.
/// Generators are kept in reduced row echelon form and the offset is
/// reduced against them, so equal sets have equal representations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineState {
    width: usize,
    offset: BitVec,
    gens: Vec<BitVec>,
    pivots: Vec<usize>,
}

impl AffineState {
    pub fn zero(width: usize) -> Self {
        Self::basis(BitVec::zeros(width))
    }

    pub fn basis(bits: BitVec) -> Self {
        AffineState {
            width: bits.len(),
            offset: bits,
            gens: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn from_parts(offset: BitVec, gens: Vec<BitVec>) -> Self {
        let mut s = AffineState {
            width: offset.len(),
            offset,
            gens,
            pivots: Vec::new(),
        };
        s.normalize();
        s
    }

    fn normalize(&mut self) {
        let (red, pivots) = BitMatrix::from_rows(self.width, std::mem::take(&mut self.gens)).rref();
        self.gens = red.rows().to_vec();
        self.pivots = pivots;
        for (row, &p) in self.gens.iter().zip(&self.pivots) {
            if self.offset.get(p) {
                self.offset.xor_assign(row);
            }
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn offset(&self) -> &BitVec {
        &self.offset
    }

    pub fn generators(&self) -> &[BitVec] {
        &self.gens
    }

    pub fn dimension(&self) -> usize {
        self.gens.len()
    }

    /// True iff qubit `q` has the same value on every member.
    pub fn is_constant(&self, q: usize) -> bool {
        self.gens.iter().all(|g| !g.get(q))
    }

    pub fn contains(&self, v: &BitVec) -> bool {
        let mut r = v.xor(&self.offset);
        for (row, &p) in self.gens.iter().zip(&self.pivots) {
            if r.get(p) {
                r.xor_assign(row);
            }
        }
        r.is_zero()
    }

    pub fn same_set(&self, other: &AffineState) -> bool {
        self == other
    }

    /// Sorted members; callers keep the dimension small.
    pub fn members(&self) -> Vec<BitVec> {
        let mut out = Vec::with_capacity(1 << self.gens.len());
        for_each_codeword(&self.gens, self.width, |w| out.push(w.xor(&self.offset)));
        out.sort();
        out
    }

    pub fn apply(&mut self, c: &Circuit) -> Result<()> {
        assert_eq!(c.width, self.width, "circuit width mismatch");
        for g in &c.gates {
            self.apply_gate(g)?;
        }
        Ok(())
    }

    /// Applies `c` and then reads the result through its output permutation.
    pub fn apply_logical(&mut self, c: &Circuit) -> Result<()> {
        self.apply(c)?;
        if let Some(p) = &c.output_perm {
            let inv = invert(p);
            self.permute(&inv);
        }
        Ok(())
    }

    pub fn apply_gate(&mut self, g: &Gate) -> Result<()> {
        match g {
            Gate::H { q } => {
                if self.offset.get(*q) || !self.is_constant(*q) {
                    return Err(Error::UnsupportedH(*q));
                }
                self.gens.push(BitVec::unit(self.width, *q));
                self.normalize();
            }
            Gate::Cnot { c, t } => {
                for v in std::iter::once(&mut self.offset).chain(self.gens.iter_mut()) {
                    if v.get(*c) {
                        v.flip(*t);
                    }
                }
                self.normalize();
            }
            Gate::Swap { a, b } => {
                let mut p: Vec<usize> = (0..self.width).collect();
                p.swap(*a, *b);
                self.permute(&p);
            }
            Gate::Perm { perm, .. } => self.permute(perm),
            Gate::Measure { qubits } => {
                let random: Vec<usize> = qubits
                    .iter()
                    .copied()
                    .filter(|&q| !self.is_constant(q))
                    .collect();
                if !random.is_empty() {
                    return Err(Error::NondeterministicMeasurement(random));
                }
            }
        }
        Ok(())
    }

    /// Moves coordinate `q` to `perm[q]`.
    pub fn permute(&mut self, perm: &[usize]) {
        self.offset = permute_bits(&self.offset, perm);
        for g in &mut self.gens {
            *g = permute_bits(g, perm);
        }
        self.normalize();
    }

    pub fn inject(&mut self, e: &PauliError) -> Result<()> {
        if !e.z.is_empty() {
            return Err(Error::PhaseErrorUnsupported);
        }
        for &q in &e.x {
            self.offset.flip(q);
        }
        self.normalize();
        Ok(())
    }

    /// Appends `extra` qubits in state 0.
    pub fn extend(&self, extra: usize) -> AffineState {
        let pad = BitVec::zeros(extra);
        AffineState::from_parts(
            self.offset.concat(&pad),
            self.gens.iter().map(|g| g.concat(&pad)).collect(),
        )
    }

    /// Values of constant qubits `start..start+len`.
    pub fn read_constant(&self, start: usize, len: usize) -> Result<BitVec> {
        let random: Vec<usize> = (start..start + len)
            .filter(|&q| !self.is_constant(q))
            .collect();
        if !random.is_empty() {
            return Err(Error::NondeterministicMeasurement(random));
        }
        Ok(self.offset.slice(start, len))
    }

    /// Restriction to the first `len` qubits.
    pub fn truncate(&self, len: usize) -> AffineState {
        AffineState::from_parts(
            self.offset.slice(0, len),
            self.gens.iter().map(|g| g.slice(0, len)).collect(),
        )
    }
}

pub(crate) fn invert(p: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; p.len()];
    for (i, &x) in p.iter().enumerate() {
        inv[x] = i;
    }
    inv
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn h_on_zero_qubit() {
        let mut s = AffineState::zero(2);
        s.apply_gate(&Gate::H { q: 0 }).unwrap();
        assert_eq!(s.generators(), &[BitVec::parse("10").unwrap()]);
        assert!(s.offset().is_zero());
        assert_eq!(s.apply_gate(&Gate::H { q: 0 }), Err(Error::UnsupportedH(0)));
    }

    #[test]
    fn cnot_spreads_generator() {
        let mut s = AffineState::zero(2);
        s.apply_gate(&Gate::H { q: 0 }).unwrap();
        s.apply_gate(&Gate::Cnot { c: 0, t: 1 }).unwrap();
        assert_eq!(
            s.members(),
            vec![BitVec::parse("00").unwrap(), BitVec::parse("11").unwrap()]
        );
        assert!(s.contains(&BitVec::parse("11").unwrap()));
        assert!(!s.contains(&BitVec::parse("10").unwrap()));
        assert!(matches!(
            s.apply_gate(&Gate::Measure { qubits: vec![1] }),
            Err(Error::NondeterministicMeasurement(_))
        ));
    }

    #[test]
    fn phase_errors_rejected() {
        let mut s = AffineState::zero(3);
        assert_eq!(
            s.inject(&PauliError::phase_flips(&[1])),
            Err(Error::PhaseErrorUnsupported)
        );
    }
}
