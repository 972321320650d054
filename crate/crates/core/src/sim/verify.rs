use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::circuit::{Circuit, Gate, ShiftStyle};
use crate::code::{contract_word, expand_word, CssCode};
use crate::error::{Error, Result};
use crate::gf::FieldElement;
use crate::gf2::BitVec;
use crate::poly::Poly;
use crate::synth::{synth_decode_scheme, synth_encoder, synth_syndrome};

use super::{AffineState, PauliError, StateVector};

/// Largest correction table built (number of error patterns).
pub const MAX_TABLE_ENTRIES: usize = 2_000_000;

/// `(N, K)`; `K` is both the code dimension and the ancilla cell count.
fn css_n_k(css: &CssCode) -> (usize, usize) {
    (css.code().length(), css.code().dimension())
}

fn poly_bits(css: &CssCode, p: &Poly, len: usize) -> Result<BitVec> {
    Ok(expand_word(css.require_basis()?, &p.to_vec(len)))
}

/// Members of `{(i·g̃ + X^s·j)·g⊥ : deg i < K}` expanded to bits, sorted.
pub fn coset_state_set(css: &CssCode, j: &Poly, s: usize) -> Result<Vec<BitVec>> {
    let n = css.code().length();
    let kk = css.code().dimension();
    let shifted = j.shift(s);
    let mut out = Vec::new();
    for i in crate::code::enumerate_polys(css.ctx(), kk)? {
        let p = i.mul(css.g_tilde()).add(&shifted).mul(css.g_perp());
        let p = p.rem(&Poly::x_n_minus_1(*css.ctx(), n))?;
        out.push(poly_bits(css, &p, n)?);
    }
    out.sort();
    out.dedup();
    Ok(out)
}

/// The set the encoder produces for logical input `j`.
pub fn expected_code_state(css: &CssCode, j: &Poly) -> Result<Vec<BitVec>> {
    coset_state_set(css, j, css.code().dimension())
}

fn check_logical(css: &CssCode, j: &Poly) -> Result<()> {
    if j.deg() >= css.logical_count() as isize {
        return Err(Error::LayoutMismatch(format!(
            "logical input of degree {} exceeds {} cells",
            j.deg(),
            css.logical_count()
        )));
    }
    Ok(())
}

/// Encoder input: `j` in cells `K..N-K`, zeros elsewhere.
pub fn encoder_input(css: &CssCode, j: &Poly) -> Result<BitVec> {
    check_logical(css, j)?;
    let (n, _) = css_n_k(css);
    let kk = css.code().dimension();
    poly_bits(css, &j.shift(kk), n)
}

pub fn encode_affine(css: &CssCode, j: &Poly, style: ShiftStyle) -> Result<AffineState> {
    let enc = synth_encoder(css, style)?;
    let mut s = AffineState::basis(encoder_input(css, j)?);
    s.apply_logical(&enc)?;
    Ok(s)
}

pub fn check_encoding(css: &CssCode, j: &Poly) -> Result<bool> {
    check_encoding_with(css, j, ShiftStyle::Adjacent)
}

pub fn check_encoding_with(css: &CssCode, j: &Poly, style: ShiftStyle) -> Result<bool> {
    let got = encode_affine(css, j, style)?;
    let want = expected_code_state(css, j)?;
    Ok(1usize << got.dimension() == want.len() && got.members() == want)
}

/// Ancilla contents the syndrome circuit produces for bit flips `err`
/// on the data: the expansion of `e(X) mod g⊥`.
pub fn bit_syndrome(css: &CssCode, err: &BitVec) -> Result<BitVec> {
    let basis = css.require_basis()?;
    let (_, kk) = css_n_k(css);
    let e = Poly::new(*css.ctx(), contract_word(basis, err));
    let r = e.rem(css.g_perp())?;
    Ok(expand_word(basis, &r.to_vec(kk)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FlipKind {
    Bit,
    Phase,
}

/// Minimum-weight correction for every syndrome of an error of weight at
/// most `t`; ties go to the lexicographically first support.
#[derive(Clone, Debug)]
pub struct SyndromeTable {
    t: usize,
    table: HashMap<BitVec, Vec<usize>>,
}

fn binom(n: usize, k: usize) -> usize {
    (0..k).fold(1usize, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}

fn combinations(n: usize, w: usize, f: &mut impl FnMut(&[usize])) {
    fn rec(
        start: usize,
        n: usize,
        left: usize,
        cur: &mut Vec<usize>,
        f: &mut impl FnMut(&[usize]),
    ) {
        if left == 0 {
            f(cur);
            return;
        }
        for i in start..=n - left {
            cur.push(i);
            rec(i + 1, n, left - 1, cur, f);
            cur.pop();
        }
    }
    rec(0, n, w, &mut Vec::new(), f);
}

impl SyndromeTable {
    /// Table for `t = ⌊(d-1)/2⌋` with `d` the CSS distance.
    pub fn build(css: &CssCode) -> Result<Self> {
        let d = css.parameters()?.d;
        Self::with_weight(css, d.saturating_sub(1) / 2)
    }

    pub fn with_weight(css: &CssCode, t: usize) -> Result<Self> {
        let width = css.cell_bits() * css.code().length();
        let total: usize = (0..=t).map(|w| binom(width, w)).sum();
        if total > MAX_TABLE_ENTRIES {
            return Err(Error::TooLarge {
                dim: total,
                limit: MAX_TABLE_ENTRIES,
            });
        }
        let mut table = HashMap::with_capacity(total);
        let mut failure = None;
        for w in 0..=t {
            combinations(width, w, &mut |pos| {
                let mut e = BitVec::zeros(width);
                for &p in pos {
                    e.set(p, true);
                }
                match bit_syndrome(css, &e) {
                    Ok(s) => {
                        table.entry(s).or_insert_with(|| pos.to_vec());
                    }
                    Err(err) => failure = Some(err),
                }
            });
        }
        if let Some(e) = failure {
            return Err(e);
        }
        Ok(SyndromeTable { t, table })
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn len(&self) -> usize {
        self.table.len()
    }

    pub fn is_empty(&self) -> bool {
        self.table.is_empty()
    }

    pub fn lookup(&self, syndrome: &BitVec) -> Option<&[usize]> {
        self.table.get(syndrome).map(Vec::as_slice)
    }

    pub fn correct(&self, syndrome: &BitVec, kind: FlipKind) -> Result<PauliError> {
        let pos = self
            .lookup(syndrome)
            .ok_or_else(|| Error::UncorrectableSyndrome(syndrome.to_string()))?;
        Ok(match kind {
            FlipKind::Bit => PauliError::bit_flips(pos),
            FlipKind::Phase => PauliError::phase_flips(pos),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BitRoundTrip {
    pub syndrome: BitVec,
    pub correction: PauliError,
    pub restored: bool,
}

/// Encode, flip `error`, extract the syndrome with the circuit, correct,
/// and compare with the clean encoded state (affine simulation).
pub fn bit_flip_roundtrip(
    css: &CssCode,
    table: &SyndromeTable,
    j: &Poly,
    error: &[usize],
    style: ShiftStyle,
) -> Result<BitRoundTrip> {
    let clean = encode_affine(css, j, style)?;
    let data = clean.width();
    let syn = synth_syndrome(css, style)?;
    let anc = syn.width - data;
    let mut s = clean.extend(anc);
    s.inject(&PauliError::bit_flips(error))?;
    s.apply_logical(&syn)?;
    let syndrome = s.read_constant(data, anc)?;
    let correction = table.correct(&syndrome, FlipKind::Bit)?;
    s.inject(&correction)?;
    let restored = s.truncate(data).same_set(&clean);
    Ok(BitRoundTrip {
        syndrome,
        correction,
        restored,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct FullRoundTrip {
    pub bit_syndrome: BitVec,
    pub phase_syndrome: BitVec,
    pub correction: PauliError,
    pub fidelity: f64,
}

/// Full decode scheme on a state vector: encode, apply `error`, measure
/// both syndromes, correct, reset ancillas, return the fidelity with the
/// clean encoded state.
pub fn statevector_roundtrip(
    css: &CssCode,
    table: &SyndromeTable,
    j: &Poly,
    error: &PauliError,
    style: ShiftStyle,
) -> Result<FullRoundTrip> {
    let enc = synth_encoder(css, style)?;
    let dec = synth_decode_scheme(css, style)?;
    let data = enc.width;
    let anc = (dec.width - data) / 2;
    let input = encoder_input(css, j)?.concat(&BitVec::zeros(2 * anc));
    let mut s = StateVector::basis(&input)?;
    let mut enc_full = Circuit::new(dec.width);
    enc_full.append_mapped(&enc, &(0..data).collect::<Vec<_>>());
    if let Some(p) = &enc.output_perm {
        let mut full: Vec<usize> = (0..dec.width).collect();
        full[..data].copy_from_slice(p);
        enc_full.output_perm = Some(full);
    }
    s.apply_logical(&enc_full)?;
    let reference = s.clone();
    s.inject(error);
    s.apply_logical(&dec)?;
    let bits: Vec<usize> = (data..data + anc).collect();
    let phases: Vec<usize> = (data + anc..data + 2 * anc).collect();
    let bit_syndrome = s.measure_deterministic(&bits)?;
    let phase_syndrome = s.measure_deterministic(&phases)?;
    let bx = table.correct(&bit_syndrome, FlipKind::Bit)?;
    let pz = table.correct(&phase_syndrome, FlipKind::Phase)?;
    let correction = PauliError { x: bx.x, z: pz.z };
    s.inject(&correction);
    let reset: Vec<usize> = bit_syndrome
        .ones()
        .map(|q| data + q)
        .chain(phase_syndrome.ones().map(|q| data + anc + q))
        .collect();
    s.inject(&PauliError::bit_flips(&reset));
    Ok(FullRoundTrip {
        bit_syndrome,
        phase_syndrome,
        correction,
        fidelity: s.fidelity(&reference),
    })
}

/// Random circuit: H on a random subset of qubits first, then CNOTs and
/// swaps. Returns the circuit and the qubits that receive H.
pub fn random_oracle_circuit(
    width: usize,
    gates: usize,
    rng: &mut impl Rng,
) -> (Circuit, Vec<usize>) {
    let mut c = Circuit::new(width);
    let hs: Vec<usize> = (0..width).filter(|_| rng.gen_bool(0.5)).collect();
    for &q in &hs {
        c.push(Gate::H { q });
    }
    if width >= 2 {
        for _ in 0..gates {
            let a = rng.gen_range(0..width);
            let mut b = rng.gen_range(0..width - 1);
            if b >= a {
                b += 1;
            }
            c.push(if rng.gen_bool(0.8) {
                Gate::Cnot { c: a, t: b }
            } else {
                Gate::Swap { a, b }
            });
        }
    }
    (c, hs)
}

/// Runs `c` on `input` in both simulators and compares.
pub fn oracle_agreement(c: &Circuit, input: &BitVec, tol: f64) -> Result<bool> {
    let mut a = AffineState::basis(input.clone());
    a.apply(c)?;
    let mut s = StateVector::basis(input)?;
    s.apply(c)?;
    Ok(s.matches_affine(&a, tol) && (s.norm() - 1.0).abs() <= tol)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleReport {
    pub cases: usize,
    pub failures: usize,
}

/// `cases` random circuits of the given width with random admissible inputs.
pub fn random_oracle_sweep(width: usize, cases: usize, seed: u64) -> Result<OracleReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = 0;
    for _ in 0..cases {
        let (c, hs) = random_oracle_circuit(width, 3 * width, &mut rng);
        let mut input =
            BitVec::from_bools(&(0..width).map(|_| rng.gen_bool(0.5)).collect::<Vec<_>>());
        for q in hs {
            input.set(q, false);
        }
        if !oracle_agreement(&c, &input, 1e-12)? {
            failures += 1;
        }
    }
    Ok(OracleReport { cases, failures })
}

/// Field symbols of a basis state of `width` qubits, `k` bits per symbol.
pub fn bits_to_cells(css: &CssCode, bits: &BitVec) -> Result<Vec<FieldElement>> {
    Ok(contract_word(css.require_basis()?, bits))
}
