//! Classical shift registers over GF(2^k).
//!
//! States are row vectors and one clock step is `v ↦ v·M`. Every step is
//! stored twice: as an explicit matrix and as the sequence of elementary
//! operations (cyclic shifts, in-place scalings, multiply-adds) whose
//! product it is. Circuit synthesis consumes the operation list; tests check
//! that the list multiplies out to the matrix.

use std::fmt;

use crate::error::{Error, Result};
use crate::gf::{FieldCtx, FieldElement};
use crate::poly::Poly;

/// Dense square-or-rectangular matrix over a binary extension field.
#[derive(Clone, PartialEq, Eq)]
pub struct FieldMatrix {
    ctx: FieldCtx,
    rows: usize,
    cols: usize,
    data: Vec<FieldElement>,
}

impl FieldMatrix {
    pub fn zeros(ctx: FieldCtx, rows: usize, cols: usize) -> Self {
        FieldMatrix {
            ctx,
            rows,
            cols,
            data: vec![FieldElement::ZERO; rows * cols],
        }
    }

    pub fn identity(ctx: FieldCtx, n: usize) -> Self {
        let mut m = Self::zeros(ctx, n, n);
        for i in 0..n {
            m.set(i, i, FieldElement::ONE);
        }
        m
    }

    pub fn n_rows(&self) -> usize {
        self.rows
    }

    pub fn n_cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> FieldElement {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: FieldElement) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[FieldElement] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn mul(&self, other: &FieldMatrix) -> FieldMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = Self::zeros(self.ctx, self.rows, other.cols);
        for r in 0..self.rows {
            let v = other.vec_mul(self.row(r));
            out.data[r * other.cols..(r + 1) * other.cols].copy_from_slice(&v);
        }
        out
    }

    /// Row vector times matrix.
    pub fn vec_mul(&self, v: &[FieldElement]) -> Vec<FieldElement> {
        assert_eq!(v.len(), self.rows, "dimension mismatch");
        let mut out = vec![FieldElement::ZERO; self.cols];
        for (r, &x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (c, o) in out.iter_mut().enumerate() {
                *o = self.ctx.add(*o, self.ctx.mul(x, self.get(r, c)));
            }
        }
        out
    }

    pub fn pow(&self, mut e: usize) -> FieldMatrix {
        let mut base = self.clone();
        let mut acc = Self::identity(self.ctx, self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }
}

impl fmt::Debug for FieldMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|&x| self.ctx.format(x)).collect();
            writeln!(f, "[{}]", row.join(" "))?;
        }
        Ok(())
    }
}

/// One elementary register operation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StepOp {
    /// Cells `start..start+len` rotate: cell `i` moves to `i+1`, the last
    /// one wraps to `start`.
    Shift { start: usize, len: usize },
    /// `cell ← c·cell` with `c ≠ 0`.
    Scale { cell: usize, c: FieldElement },
    /// `dst ← dst + c·src`.
    AddMul {
        src: usize,
        dst: usize,
        c: FieldElement,
    },
}

impl StepOp {
    pub fn apply(&self, ctx: &FieldCtx, cells: &mut [FieldElement]) {
        match *self {
            StepOp::Shift { start, len } => {
                if len > 1 {
                    cells[start..start + len].rotate_right(1);
                }
            }
            StepOp::Scale { cell, c } => cells[cell] = ctx.mul(c, cells[cell]),
            StepOp::AddMul { src, dst, c } => {
                cells[dst] = ctx.add(cells[dst], ctx.mul(c, cells[src]));
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum StepKind {
    /// Feed-forward multiplication step `E = P·F`.
    MultE,
    /// Division step `S = P·S₂`.
    DivS,
    /// The feed-back half of a division step.
    DivS2,
    /// The `N`-cycle `P`.
    ShiftOnly,
    /// The feed-forward half `F` of a multiplication step.
    FeedOnly,
    /// Division by `g` on `d` extra cells while the `N` data cells only
    /// rotate, so the data returns after `N` steps.
    Syndrome,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StepMatrix {
    pub kind: StepKind,
    /// Polynomial the register was built from, after normalization
    /// (`g₀ = 1` for multiplication kinds, monic for division kinds).
    pub g: Poly,
    /// Data length `N`.
    pub n: usize,
    pub ops: Vec<StepOp>,
    pub matrix: FieldMatrix,
}

impl StepMatrix {
    pub fn cells(&self) -> usize {
        self.matrix.n_rows()
    }

    pub fn ctx(&self) -> &FieldCtx {
        self.g.ctx()
    }

    /// Applies one step through the matrix.
    pub fn step(&self, cells: &[FieldElement]) -> Vec<FieldElement> {
        self.matrix.vec_mul(cells)
    }

    /// Applies one step through the operation list.
    pub fn step_ops(&self, cells: &mut [FieldElement]) {
        for op in &self.ops {
            op.apply(self.ctx(), cells);
        }
    }

    /// States after each of `steps` clock steps, starting with `init`.
    pub fn trace(&self, init: &[FieldElement], steps: usize) -> Vec<Vec<FieldElement>> {
        let mut out = vec![init.to_vec()];
        for _ in 0..steps {
            let next = self.step(out.last().expect("nonempty"));
            out.push(next);
        }
        out
    }

    pub fn run(&self, init: &[FieldElement], steps: usize) -> Vec<FieldElement> {
        self.trace(init, steps).pop().expect("nonempty")
    }
}

fn ops_matrix(ctx: &FieldCtx, cells: usize, ops: &[StepOp]) -> FieldMatrix {
    let mut m = FieldMatrix::zeros(*ctx, cells, cells);
    for r in 0..cells {
        let mut v = vec![FieldElement::ZERO; cells];
        v[r] = FieldElement::ONE;
        for op in ops {
            op.apply(ctx, &mut v);
        }
        for (c, x) in v.into_iter().enumerate() {
            m.set(r, c, x);
        }
    }
    m
}

fn feed_ops(g: &Poly) -> Vec<StepOp> {
    (1..=g.deg().max(0) as usize)
        .filter(|&c| !g.coeff(c).is_zero())
        .map(|c| StepOp::AddMul {
            src: 0,
            dst: c,
            c: g.coeff(c),
        })
        .collect()
}

fn div_feed_ops(g: &Poly, n: usize) -> Vec<StepOp> {
    let ctx = g.ctx();
    let d = g.degree().unwrap_or(0);
    (0..d)
        .filter(|&m| !g.coeff(m).is_zero())
        .map(|m| StepOp::AddMul {
            src: 0,
            dst: n - d + m,
            c: ctx.neg(g.coeff(m)),
        })
        .collect()
}

fn syndrome_ops(g: &Poly, n: usize) -> Vec<StepOp> {
    let ctx = g.ctx();
    let d = g.degree().unwrap_or(0);
    let mut ops = vec![StepOp::Shift { start: 0, len: n }];
    if d == 0 {
        return ops;
    }
    ops.push(StepOp::Shift { start: n, len: d });
    // After the rotation the ancilla head holds the overflowing top
    // coefficient s; the head must become -g₀·s and cell m gains -g_m·s.
    let g0 = g.coeff(0);
    let neg_g0 = ctx.neg(g0);
    if neg_g0 != FieldElement::ONE {
        ops.push(StepOp::Scale { cell: n, c: neg_g0 });
    }
    let g0_inv = ctx.inv(g0).expect("g(0) != 0");
    for m in 1..d {
        let c = ctx.mul(g.coeff(m), g0_inv);
        if !c.is_zero() {
            ops.push(StepOp::AddMul {
                src: n,
                dst: n + m,
                c,
            });
        }
    }
    ops.push(StepOp::AddMul {
        src: 0,
        dst: n,
        c: FieldElement::ONE,
    });
    ops
}

/// Builds one step of the register of `kind` for `g` on `n` data cells.
pub fn step_matrix(kind: StepKind, g: &Poly, n: usize) -> Result<StepMatrix> {
    let ctx = *g.ctx();
    if n == 0 {
        return Err(Error::ZeroLength);
    }
    if g.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let limit = match kind {
        StepKind::MultE | StepKind::FeedOnly | StepKind::ShiftOnly => n - 1,
        _ => n,
    };
    if g.deg() > limit as isize {
        return Err(Error::DegreeTooLarge {
            degree: g.deg(),
            limit,
        });
    }
    let (g, ops, cells) = match kind {
        StepKind::MultE | StepKind::FeedOnly => {
            if g.coeff(0).is_zero() {
                return Err(Error::ZeroConstantTerm);
            }
            if g.coeff(0) != FieldElement::ONE {
                return Err(Error::NonUnitConstant);
            }
            let mut ops = Vec::new();
            if kind == StepKind::MultE {
                ops.push(StepOp::Shift { start: 0, len: n });
            }
            ops.extend(feed_ops(g));
            (g.clone(), ops, n)
        }
        StepKind::ShiftOnly => (g.clone(), vec![StepOp::Shift { start: 0, len: n }], n),
        StepKind::DivS | StepKind::DivS2 => {
            let g = g.monic();
            let mut ops = Vec::new();
            if kind == StepKind::DivS {
                ops.push(StepOp::Shift { start: 0, len: n });
            }
            ops.extend(div_feed_ops(&g, n));
            (g, ops, n)
        }
        StepKind::Syndrome => {
            if g.coeff(0).is_zero() {
                return Err(Error::ZeroConstantTerm);
            }
            let g = g.monic();
            let d = g.degree().unwrap_or(0);
            let ops = syndrome_ops(&g, n);
            (g, ops, n + d)
        }
    };
    let matrix = ops_matrix(&ctx, cells, &ops);
    Ok(StepMatrix {
        kind,
        g,
        n,
        ops,
        matrix,
    })
}

fn layout_err(what: &str, p: &Poly, cells: usize) -> Error {
    Error::LayoutMismatch(format!(
        "{what} has degree {} but only {cells} cells are available",
        p.deg()
    ))
}

/// Runs the multiplication register from the layout `(j₀..j_{d-1}, i₀..i_{K-1})`
/// for `steps` steps; with `steps = K` the result is `i·g + X^K·j`.
pub fn mult_run(g: &Poly, n: usize, j: &Poly, i: &Poly, steps: usize) -> Result<Poly> {
    let e = step_matrix(StepKind::MultE, g, n)?;
    let d = e.g.degree().expect("nonzero");
    if j.deg() >= d as isize {
        return Err(layout_err("j", j, d));
    }
    if i.deg() >= (n - d) as isize {
        return Err(layout_err("i", i, n - d));
    }
    let mut init = j.to_vec(d);
    init.extend(i.to_vec(n - d));
    Ok(Poly::new(*g.ctx(), e.run(&init, steps)))
}

/// Divides `r` by `g` in the in-place division register. After `K = N - d`
/// steps the first `K` cells hold the quotient and the last `d` the remainder.
pub fn div_run(g: &Poly, n: usize, r: &Poly) -> Result<(Poly, Poly)> {
    if r.deg() >= n as isize {
        return Err(layout_err("r", r, n));
    }
    let s = step_matrix(StepKind::DivS, g, n)?;
    let ctx = *g.ctx();
    let d = s.g.degree().expect("nonzero");
    let k = n - d;
    let out = s.run(&r.to_vec(n), k);
    let lead_inv = ctx.inv(g.lead()).expect("nonzero");
    let q = Poly::new(ctx, out[..k].to_vec()).scale(lead_inv);
    let rem = Poly::new(ctx, out[k..].to_vec());
    Ok((q, rem))
}

/// Runs the syndrome register `N` steps on `(r, 0…0)`; returns the data
/// cells (equal to `r` again) and the ancilla cells (`r mod g`).
pub fn syndrome_run(g: &Poly, n: usize, r: &Poly) -> Result<(Poly, Poly)> {
    if r.deg() >= n as isize {
        return Err(layout_err("r", r, n));
    }
    let s = step_matrix(StepKind::Syndrome, g, n)?;
    let ctx = *g.ctx();
    let mut init = r.to_vec(n);
    init.resize(s.cells(), FieldElement::ZERO);
    let out = s.run(&init, n);
    Ok((
        Poly::new(ctx, out[..n].to_vec()),
        Poly::new(ctx, out[n..].to_vec()),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(bits: &[u8]) -> Poly {
        Poly::from_bits(FieldCtx::gf2(), bits)
    }

    #[test]
    fn e_matrix_layout() {
        let e = step_matrix(StepKind::MultE, &b(&[1, 1, 0, 1]), 7).unwrap();
        let one = FieldElement::ONE;
        for r in 0..6 {
            for c in 0..7 {
                let want = if c == r + 1 { one } else { FieldElement::ZERO };
                assert_eq!(e.matrix.get(r, c), want);
            }
        }
        let last: Vec<u32> = e.matrix.row(6).iter().map(|x| x.0).collect();
        assert_eq!(last, vec![1, 1, 0, 1, 0, 0, 0]);
    }

    #[test]
    fn factorizations() {
        let g = b(&[1, 1, 0, 1]);
        let e = step_matrix(StepKind::MultE, &g, 7).unwrap();
        let p = step_matrix(StepKind::ShiftOnly, &g, 7).unwrap();
        let f = step_matrix(StepKind::FeedOnly, &g, 7).unwrap();
        assert_eq!(e.matrix, p.matrix.mul(&f.matrix));
        let s = step_matrix(StepKind::DivS, &g, 7).unwrap();
        let s2 = step_matrix(StepKind::DivS2, &g, 7).unwrap();
        assert_eq!(s.matrix, p.matrix.mul(&s2.matrix));
        let first: Vec<u32> = s2.matrix.row(0).iter().map(|x| x.0).collect();
        assert_eq!(first, vec![1, 0, 0, 0, 1, 1, 0]);
    }

    #[test]
    fn mult_examples() {
        let g = b(&[1, 1, 0, 1]);
        let one = Poly::one(FieldCtx::gf2());
        let zero = Poly::zero(FieldCtx::gf2());
        assert_eq!(mult_run(&g, 7, &zero, &one, 4).unwrap(), g);
        let steane = b(&[1, 0, 1, 1, 1]);
        assert_eq!(
            mult_run(&steane, 7, &b(&[1, 0, 1]), &zero, 3).unwrap(),
            b(&[0, 0, 0, 1, 0, 1])
        );
        assert!(matches!(
            mult_run(&g, 7, &b(&[0, 0, 0, 1]), &zero, 4),
            Err(Error::LayoutMismatch(_))
        ));
    }

    #[test]
    fn div_example() {
        let g = b(&[1, 1, 0, 1]);
        let (q, r) = div_run(&g, 7, &b(&[0, 0, 0, 0, 1])).unwrap();
        assert_eq!(q, b(&[0, 1]));
        assert_eq!(r, b(&[0, 1, 1]));
    }

    #[test]
    fn syndrome_distinct_single_errors() {
        let g = b(&[1, 1, 0, 1]);
        let mut seen = std::collections::HashSet::new();
        for e in 0..7 {
            let x = Poly::monomial(FieldCtx::gf2(), e, FieldElement::ONE);
            let (data, syn) = syndrome_run(&g, 7, &x).unwrap();
            assert_eq!(data, x);
            assert_eq!(syn, x.rem(&g).unwrap());
            assert!(!syn.is_zero());
            seen.insert(syn);
        }
        assert_eq!(seen.len(), 7);
    }

    #[test]
    fn syndrome_with_non_unit_constant() {
        let ctx = FieldCtx::gf8();
        let g = Poly::parse(ctx, "1,a^2,1,a").unwrap();
        let r = Poly::parse(ctx, "a,0,1,a^5,0,a^3,1").unwrap();
        let (data, syn) = syndrome_run(&g, 7, &r).unwrap();
        assert_eq!(data, r);
        assert_eq!(syn, r.rem(&g).unwrap());
        let (q, rem) = div_run(&g, 7, &r).unwrap();
        assert_eq!((q, rem), r.divmod(&g).unwrap());
    }

    #[test]
    fn ops_agree_with_matrix() {
        let ctx = FieldCtx::gf8();
        let g = Poly::parse(ctx, "1,a^2,1,a").unwrap();
        let s = step_matrix(StepKind::Syndrome, &g, 7).unwrap();
        let mut v: Vec<FieldElement> = (0..10).map(|i| ctx.alpha_pow(i)).collect();
        let want = s.step(&v);
        s.step_ops(&mut v);
        assert_eq!(v, want);
    }

    #[test]
    fn non_unit_mult_rejected() {
        let ctx = FieldCtx::gf8();
        let g = Poly::parse(ctx, "a,1").unwrap();
        assert_eq!(
            step_matrix(StepKind::MultE, &g, 7).unwrap_err(),
            Error::NonUnitConstant
        );
    }
}
