//! Synthesis of shift-register circuits from register step operations.
//!
//! Cell `i` of a register occupies qubits `[i·k, (i+1)·k)`; bit `j` of a
//! cell is the coordinate with respect to basis element `b_j`.

use crate::circuit::{Circuit, Gate, ShiftStyle};
use crate::code::CssCode;
use crate::error::{Error, Result};
use crate::gf::{is_self_dual, mult_matrix, Basis, FieldCtx, FieldElement};
use crate::lfsr::{step_matrix, StepKind, StepMatrix, StepOp};
use crate::poly::Poly;

pub const DEFAULT_WIDTH_CAP: usize = 1 << 16;

/// Emits gates for operations on logical register cells while tracking
/// where each logical cell physically lives (only relabelling moves it).
pub struct RegisterBuilder {
    ctx: FieldCtx,
    basis: Basis,
    style: ShiftStyle,
    circuit: Circuit,
    phys: Vec<usize>,
}

impl RegisterBuilder {
    pub fn new(ctx: FieldCtx, basis: Basis, cells: usize, style: ShiftStyle) -> Result<Self> {
        Self::with_cap(ctx, basis, cells, style, DEFAULT_WIDTH_CAP)
    }

    pub fn with_cap(
        ctx: FieldCtx,
        basis: Basis,
        cells: usize,
        style: ShiftStyle,
        cap: usize,
    ) -> Result<Self> {
        if basis.len() != ctx.degree() {
            return Err(Error::BasisSize {
                expected: ctx.degree(),
                found: basis.len(),
            });
        }
        let width = cells * ctx.degree();
        if width > cap {
            return Err(Error::WidthOverflow { width, cap });
        }
        Ok(RegisterBuilder {
            ctx,
            basis,
            style,
            circuit: Circuit::new(width),
            phys: (0..cells).collect(),
        })
    }

    fn k(&self) -> usize {
        self.ctx.degree()
    }

    pub fn qubit(&self, cell: usize, bit: usize) -> usize {
        self.phys[cell] * self.k() + bit
    }

    pub fn role(&mut self, name: &str, first_cell: usize, cells: usize) {
        if cells > 0 {
            let k = self.k();
            self.circuit.roles.push(crate::circuit::Role {
                name: name.into(),
                start: first_cell * k,
                len: cells * k,
            });
        }
    }

    /// Content of `cells[i]` moves to `cells[i+1]`, the last wraps around.
    pub fn shift(&mut self, cells: &[usize]) {
        let m = cells.len();
        if m < 2 {
            return;
        }
        if self.style == ShiftStyle::Relabel {
            let old = self.phys.clone();
            for i in 0..m {
                self.phys[cells[(i + 1) % m]] = old[cells[i]];
            }
            return;
        }
        let mut perm: Vec<usize> = (0..self.circuit.width).collect();
        for i in 0..m {
            for j in 0..self.k() {
                perm[self.qubit(cells[i], j)] = self.qubit(cells[(i + 1) % m], j);
            }
        }
        self.circuit.push(Gate::Perm {
            style: self.style,
            perm,
        });
    }

    /// `dst += c·src` for every `(dst, c)`; CNOTs ordered by
    /// (source bit, target cell, target bit).
    pub fn add_mul(&mut self, src: usize, targets: &[(usize, FieldElement)]) {
        let mut entries = Vec::new();
        for &(dst, c) in targets {
            let m = mult_matrix(&self.ctx, &self.basis, c);
            for j in 0..self.k() {
                for i in 0..self.k() {
                    if m.get(i, j) {
                        entries.push((j, dst, i));
                    }
                }
            }
        }
        entries.sort_unstable();
        for (j, dst, i) in entries {
            let (c, t) = (self.qubit(src, j), self.qubit(dst, i));
            self.circuit.push(Gate::Cnot { c, t });
        }
    }

    /// In-place `cell ← c·cell` by Gaussian elimination of `M_B(c)`.
    pub fn scale(&mut self, cell: usize, c: FieldElement) {
        let k = self.k();
        let mut a = mult_matrix(&self.ctx, &self.basis, c);
        let mut ops = Vec::new();
        let mut add = |a: &mut crate::gf2::BitMatrix, from: usize, to: usize| {
            for col in 0..k {
                let v = a.get(to, col) ^ a.get(from, col);
                a.set(to, col, v);
            }
            ops.push((from, to));
        };
        for col in 0..k {
            if !a.get(col, col) {
                let r = (col + 1..k)
                    .find(|&r| a.get(r, col))
                    .expect("multiplication by a nonzero element is invertible");
                add(&mut a, r, col);
            }
            for r in 0..k {
                if r != col && a.get(r, col) {
                    add(&mut a, col, r);
                }
            }
        }
        for &(from, to) in ops.iter().rev() {
            let (c, t) = (self.qubit(cell, from), self.qubit(cell, to));
            self.circuit.push(Gate::Cnot { c, t });
        }
    }

    pub fn h_cells(&mut self, cells: impl IntoIterator<Item = usize>) {
        for cell in cells {
            for j in 0..self.k() {
                let q = self.qubit(cell, j);
                self.circuit.push(Gate::H { q });
            }
        }
    }

    pub fn measure_cells(&mut self, cells: impl IntoIterator<Item = usize>) {
        let mut qubits = Vec::new();
        for cell in cells {
            for j in 0..self.k() {
                qubits.push(self.qubit(cell, j));
            }
        }
        self.circuit.push(Gate::Measure { qubits });
    }

    /// Runs `steps` steps of `step`, register cell `r` being logical cell
    /// `cell_map[r]`.
    pub fn run(&mut self, step: &StepMatrix, cell_map: &[usize], steps: usize) {
        assert_eq!(cell_map.len(), step.cells(), "cell map size");
        for _ in 0..steps {
            let mut i = 0;
            while i < step.ops.len() {
                match step.ops[i] {
                    StepOp::Shift { start, len } => {
                        self.shift(&cell_map[start..start + len]);
                        i += 1;
                    }
                    StepOp::Scale { cell, c } => {
                        self.scale(cell_map[cell], c);
                        i += 1;
                    }
                    StepOp::AddMul { src, .. } => {
                        let mut targets = Vec::new();
                        while let Some(&StepOp::AddMul { src: s, dst, c }) = step.ops.get(i) {
                            if s != src {
                                break;
                            }
                            targets.push((cell_map[dst], c));
                            i += 1;
                        }
                        self.add_mul(cell_map[src], &targets);
                    }
                }
            }
        }
    }

    pub fn finish(mut self) -> Circuit {
        let k = self.k();
        if self.phys.iter().enumerate().any(|(i, &p)| i != p) {
            let perm = (0..self.circuit.width)
                .map(|q| self.phys[q / k] * k + q % k)
                .collect();
            self.circuit.output_perm = Some(perm);
        }
        self.circuit
    }
}

/// Cyclic shift of `n` cells of `k` qubits each (cell `i` to cell `i+1`).
pub fn synth_cyclic_shift(n: usize, k: usize, style: ShiftStyle) -> Result<Circuit> {
    synth_cyclic_shift_capped(n, k, style, DEFAULT_WIDTH_CAP)
}

pub fn synth_cyclic_shift_capped(
    n: usize,
    k: usize,
    style: ShiftStyle,
    cap: usize,
) -> Result<Circuit> {
    if n < 2 || k == 0 {
        return Err(Error::InvalidCircuit(
            "a shift needs at least two cells of at least one qubit".into(),
        ));
    }
    if n * k > cap {
        return Err(Error::WidthOverflow { width: n * k, cap });
    }
    let width = n * k;
    let mut c = Circuit::new(width);
    if style == ShiftStyle::Relabel {
        c.output_perm = Some((0..width).map(|q| (q + width - k) % width).collect());
    } else {
        let perm = (0..width).map(|q| (q + k) % width).collect();
        c.push(Gate::Perm { style, perm });
    }
    Ok(c)
}

/// The feed-forward half of one multiplication step on `cells` cells.
pub fn synth_feed_step(ctx: &FieldCtx, basis: &Basis, g: &Poly, cells: usize) -> Result<Circuit> {
    assert_eq!(g.ctx(), ctx, "polynomial over a different field");
    let f = step_matrix(StepKind::FeedOnly, g, cells)?;
    synth_register(&f, basis, 1, ShiftStyle::Adjacent)
}

/// `x ↦ (x, c·x + y)` on two cells, the building block of extension-field feeds.
pub fn synth_multiplier(ctx: &FieldCtx, basis: &Basis, c: FieldElement) -> Result<Circuit> {
    let mut b = RegisterBuilder::new(*ctx, basis.clone(), 2, ShiftStyle::Adjacent)?;
    b.add_mul(0, &[(1, c)]);
    Ok(b.finish())
}

/// `steps` repetitions of the register step on its own cells.
pub fn synth_register(
    step: &StepMatrix,
    basis: &Basis,
    steps: usize,
    style: ShiftStyle,
) -> Result<Circuit> {
    let mut b = RegisterBuilder::new(*step.ctx(), basis.clone(), step.cells(), style)?;
    let map: Vec<usize> = (0..step.cells()).collect();
    b.run(step, &map, steps);
    Ok(b.finish())
}

pub fn synth_mult_register(
    ctx: &FieldCtx,
    basis: &Basis,
    g: &Poly,
    cells: usize,
    steps: usize,
    style: ShiftStyle,
) -> Result<Circuit> {
    assert_eq!(g.ctx(), ctx, "polynomial over a different field");
    let e = step_matrix(StepKind::MultE, g, cells)?;
    synth_register(&e, basis, steps, style)
}

/// Encoder on `N` cells: `|j⟩` in cells `K..N-K`, H on the last `K`
/// cells, `K` steps of the `g̃` register on cells `K..N`, then `N-K` steps
/// of the `g⊥` register on all cells. The result is the uniform
/// superposition over `{(i·g̃ + X^K·j)·g⊥ : deg i < K}`.
pub fn synth_encoder(css: &CssCode, style: ShiftStyle) -> Result<Circuit> {
    let ctx = *css.ctx();
    let n = css.code().length();
    let kk = css.g_perp().degree().expect("nonzero");
    let mut b = RegisterBuilder::new(ctx, css.require_basis()?.clone(), n, style)?;
    b.role("zero", 0, kk);
    b.role("logical", kk, css.logical_count());
    b.role("random", n - kk, kk);
    b.h_cells(n - kk..n);
    if kk > 0 {
        let tilde = step_matrix(StepKind::MultE, css.g_tilde(), n - kk)?;
        let map: Vec<usize> = (kk..n).collect();
        b.run(&tilde, &map, kk);
    }
    let perp = step_matrix(StepKind::MultE, css.g_perp(), n)?;
    b.run(&perp, &(0..n).collect::<Vec<_>>(), n - kk);
    Ok(b.finish())
}

fn syndrome_step(css: &CssCode) -> Result<StepMatrix> {
    step_matrix(StepKind::Syndrome, css.g_perp(), css.code().length())
}

/// `N` data cells plus `K` ancilla cells; afterwards the ancillas hold
/// `r mod g⊥` and the data is unchanged.
pub fn synth_syndrome(css: &CssCode, style: ShiftStyle) -> Result<Circuit> {
    let s = syndrome_step(css)?;
    let n = css.code().length();
    let kk = s.cells() - n;
    let mut b = RegisterBuilder::new(*css.ctx(), css.require_basis()?.clone(), n + kk, style)?;
    b.role("data", 0, n);
    b.role("ancilla", n, kk);
    b.run(&s, &(0..n + kk).collect::<Vec<_>>(), n);
    Ok(b.finish())
}

/// Bit-flip syndrome, measurement, H on the data, phase-flip syndrome on
/// fresh ancillas, measurement, closing H. Phase detection needs a
/// self-dual basis for extension fields.
pub fn synth_decode_scheme(css: &CssCode, style: ShiftStyle) -> Result<Circuit> {
    let basis = css.require_basis()?;
    if !is_self_dual(css.ctx(), basis) {
        return Err(Error::PhaseErrorUnsupported);
    }
    let s = syndrome_step(css)?;
    let n = css.code().length();
    let kk = s.cells() - n;
    let mut b = RegisterBuilder::new(*css.ctx(), basis.clone(), n + 2 * kk, style)?;
    b.role("data", 0, n);
    b.role("bit_syndrome", n, kk);
    b.role("phase_syndrome", n + kk, kk);
    let mut map: Vec<usize> = (0..n + kk).collect();
    b.run(&s, &map, n);
    b.measure_cells(n..n + kk);
    b.h_cells(0..n);
    for m in map.iter_mut().skip(n) {
        *m += kk;
    }
    b.run(&s, &map, n);
    b.measure_cells(n + kk..n + 2 * kk);
    b.h_cells(0..n);
    Ok(b.finish())
}
