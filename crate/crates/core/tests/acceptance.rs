//! Acceptance suite: one PASS/FAIL line per criterion. Runs without the
//! libtest harness so the lines are always printed.

mod common;

use std::time::Instant;

use common::{bin, gf8};
use qlfsr::circuit::{Circuit, ShiftStyle};
use qlfsr::cli;
use qlfsr::code::{binary_expansion, CyclicCode};
use qlfsr::gf::{Basis, FieldCtx, FieldElement};
use qlfsr::gf2::{BitMatrix, BitVec};
use qlfsr::lfsr::{mult_run, step_matrix, StepKind, StepMatrix};
use qlfsr::poly::{factor_xn_minus_1, Poly};
use qlfsr::presets;
use qlfsr::sim::{
    bit_flip_roundtrip, encode_affine, oracle_agreement, statevector_roundtrip, PauliError,
    SyndromeTable,
};
use qlfsr::synth::{
    synth_cyclic_shift, synth_encoder, synth_mult_register, synth_multiplier, synth_register,
    synth_syndrome,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn gf8_text(x: u8) -> String {
    match x {
        0 => "0".into(),
        1 => "1".into(),
        _ => format!("a^{}", gf8::log(x)),
    }
}

fn rs_generator_oracle() -> Vec<u8> {
    (0..4).fold(vec![1u8], |acc, i| {
        gf8::poly_mul(&acc, &[gf8::alpha_pow(i), 1])
    })
}

fn criterion_1() -> Check {
    let g: Vec<String> = rs_generator_oracle().into_iter().map(gf8_text).collect();
    let g = g.join(",");
    let out = cli::run([
        "qlfsr",
        "analyze",
        "--n",
        "7",
        "--field",
        "3,11",
        "--g",
        &g,
        "--basis",
        "a^3,a^6,a^5",
    ]);
    ensure(
        out.code == 0,
        format!("analyze exited {}: {}", out.code, out.stderr),
    )?;
    for want in [
        "g_perp = 1,a^2,1,a",
        "g_tilde = 1,1",
        "code = [21,9,8]",
        "dual_code = [21,12,5]",
        "qecc = [[21,3,5]]",
    ] {
        ensure(
            out.stdout.lines().any(|l| l == want),
            format!("missing `{want}` in report"),
        )?;
    }
    Ok("g_perp = aX^3+X^2+a^2X+1, g~ = X+1, [21,9,8], [21,12,5], [[21,3,5]]".into())
}

fn criterion_2() -> Check {
    let adj = synth_cyclic_shift(7, 1, ShiftStyle::Adjacent)
        .unwrap()
        .stats();
    ensure(
        adj.cnot_count == 18,
        format!("adjacent shift: {} CNOTs", adj.cnot_count),
    )?;
    let d6 = synth_cyclic_shift(7, 1, ShiftStyle::ConstantDepth)
        .unwrap()
        .stats();
    ensure(
        d6.depth == 6,
        format!("constant-depth shift: depth {}", d6.depth),
    )?;
    for style in [ShiftStyle::Adjacent, ShiftStyle::ConstantDepth] {
        let s = synth_cyclic_shift(7, 3, style).unwrap().stats();
        ensure(
            s.cnot_count == 54,
            format!("shift(7,3,{style}): {} CNOTs", s.cnot_count),
        )?;
    }
    let ctx = FieldCtx::gf8();
    let mut worst = 0;
    for basis in [presets::gf8_self_dual_basis(), Basis::polynomial(&ctx)] {
        let coords: [u8; 3] = [0, 1, 2].map(|j| basis.elements()[j].0 as u8);
        for e in 0..7 {
            let m = ctx.alpha_pow(e as u64);
            let c = synth_multiplier(&ctx, &basis, m).unwrap();
            let n = c.stats().cnot_count;
            worst = worst.max(n);
            ensure(n <= 7, format!("multiplier a^{e}: {n} CNOTs"))?;
            for x in 0..8u8 {
                for y in 0..8u8 {
                    let input = bits(&gf8::expand(&[x, y], 2, &coords));
                    let want = gf8::expand(&[x, gf8::mul(gf8::alpha_pow(e), x) ^ y], 2, &coords);
                    let got = c.apply_basis(&input).unwrap();
                    ensure(
                        got == bits(&want),
                        format!("multiplier a^{e} wrong on ({x},{y})"),
                    )?;
                }
            }
        }
    }
    Ok(format!(
        "18 CNOTs, depth 6, 54 CNOTs, GF(8) multipliers <= {worst} CNOTs (bound 7)"
    ))
}

fn bits(v: &[bool]) -> BitVec {
    BitVec::from_bools(v)
}

fn gf2_poly(mask: u64) -> Poly {
    let ctx = FieldCtx::gf2();
    Poly::new(
        ctx,
        (0..64)
            .map(|i| FieldElement((mask >> i & 1) as u32))
            .collect(),
    )
}

fn poly_mask(p: &Poly) -> u64 {
    p.coeffs()
        .iter()
        .enumerate()
        .fold(0, |acc, (i, c)| acc | (u64::from(c.0) << i))
}

fn cells_mask(cells: &[FieldElement]) -> u64 {
    cells
        .iter()
        .enumerate()
        .fold(0, |acc, (i, c)| acc | (u64::from(c.0) << i))
}

fn mask_cells(mask: u64, n: usize) -> Vec<FieldElement> {
    (0..n)
        .map(|i| FieldElement((mask >> i & 1) as u32))
        .collect()
}

fn criterion_3() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut codes = 0;
    for n in [7usize, 15] {
        let fact = factor_xn_minus_1(&FieldCtx::gf2(), n).unwrap();
        for g in fact.divisors() {
            let gm = poly_mask(&g);
            ensure(
                bin::divmod(bin::xn1(n), gm).1 == 0,
                format!("{g} does not divide X^{n}-1"),
            )?;
            let d = bin::deg(gm) as usize;
            if d == n {
                continue;
            }
            let k = n - d;
            codes += 1;
            let e = step_matrix(StepKind::MultE, &g, n).unwrap();
            let ek = e.matrix.pow(k);
            for _ in 0..100 {
                let i = rng.gen::<u64>() & ((1 << k) - 1);
                let out = cells_mask(&ek.vec_mul(&mask_cells(i << d, n)));
                ensure(
                    out == bin::mul(i, gm),
                    format!("E^K on i={i:b} for g={g} gave {out:b}"),
                )?;
                if d > 0 {
                    let j = (rng.gen::<u64>() & ((1 << d) - 1)) | 1;
                    let p = mult_run(&g, n, &gf2_poly(j), &gf2_poly(i), k).unwrap();
                    let want = bin::mul(i, gm) ^ (j << k);
                    ensure(
                        poly_mask(&p) == want,
                        format!("mult_run g={g} i={i:b} j={j:b}"),
                    )?;
                }
            }
        }
    }
    Ok(format!(
        "{codes} generators of length 7 and 15, 100 random messages each"
    ))
}

/// Compares a CNOT/SWAP circuit with a register matrix power. Both are
/// GF(2)-linear, so agreement on the unit vectors gives agreement on every
/// basis state; widths up to 10 are also swept exhaustively.
fn register_agrees(c: &Circuit, step: &StepMatrix, steps: usize) -> Result<usize, String> {
    let w = c.width;
    let m = step.matrix.pow(steps);
    let check = |x: u64| -> Result<(), String> {
        let input = BitVec::from_u64(w, x);
        let got = c.apply_basis_logical(&input).map_err(|e| e.to_string())?;
        let want = m.vec_mul(&mask_cells(x, w));
        ensure(
            got.to_u64() == cells_mask(&want),
            format!("{:?} g={} differs on {input}", step.kind, step.g),
        )
    };
    let inputs: Vec<u64> = if w <= 10 {
        (0..1u64 << w).collect()
    } else {
        std::iter::once(0)
            .chain((0..w).map(|q| 1u64 << q))
            .collect()
    };
    for &x in &inputs {
        check(x)?;
    }
    Ok(inputs.len())
}

fn weakly_self_dual_binary(n: usize) -> Vec<CyclicCode> {
    factor_xn_minus_1(&FieldCtx::gf2(), n)
        .unwrap()
        .divisors()
        .into_iter()
        .filter_map(|g| CyclicCode::new(FieldCtx::gf2(), n, &g).ok())
        .filter(|c| c.is_weakly_self_dual())
        .collect()
}

fn criterion_4() -> Check {
    let ctx = FieldCtx::gf2();
    let basis = Basis::polynomial(&ctx);
    let mut codes = vec![presets::steane()];
    codes.extend(
        weakly_self_dual_binary(15)
            .into_iter()
            .map(|c| c.to_css().unwrap()),
    );
    let mut circuits = 0;
    let mut states = 0;
    for css in &codes {
        let n = css.code().length();
        let kk = css.code().dimension();
        for style in ShiftStyle::ALL {
            if kk > 0 {
                let tilde = step_matrix(StepKind::MultE, css.g_tilde(), n - kk).unwrap();
                let c =
                    synth_mult_register(&ctx, &basis, css.g_tilde(), n - kk, kk, style).unwrap();
                states += register_agrees(&c, &tilde, kk)?;
            }
            let perp = step_matrix(StepKind::MultE, css.g_perp(), n).unwrap();
            let c = synth_register(&perp, &basis, n - kk, style).unwrap();
            states += register_agrees(&c, &perp, n - kk)?;
            let syn = step_matrix(StepKind::Syndrome, css.g_perp(), n).unwrap();
            let c = synth_syndrome(css, style).unwrap();
            states += register_agrees(&c, &syn, n)?;
            circuits += 3;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut small: Vec<(Circuit, Vec<usize>)> = Vec::new();
    let steane = presets::steane();
    for style in ShiftStyle::ALL {
        small.push((synth_encoder(&steane, style).unwrap(), vec![4, 5, 6]));
        small.push((synth_syndrome(&steane, style).unwrap(), vec![]));
        let g = steane.g_perp().clone();
        small.push((
            synth_mult_register(&ctx, &basis, &g, 7, 4, style).unwrap(),
            vec![],
        ));
        small.push((synth_cyclic_shift(12, 1, style).unwrap(), vec![]));
        small.push((synth_cyclic_shift(4, 3, style).unwrap(), vec![]));
    }
    let f8 = FieldCtx::gf8();
    for e in 0..7 {
        let c = synth_multiplier(&f8, &presets::gf8_self_dual_basis(), f8.alpha_pow(e)).unwrap();
        small.push((c, vec![]));
    }
    let mut oracle_runs = 0;
    for (c, pinned) in &small {
        let w = c.width;
        let inputs: Vec<u64> = if w <= 8 {
            (0..1u64 << w).collect()
        } else {
            (0..256)
                .map(|_| rng.gen::<u64>() & ((1 << w) - 1))
                .collect()
        };
        for x in inputs {
            let mut input = BitVec::from_u64(w, x);
            for &q in pinned {
                input.set(q, false);
            }
            ensure(
                oracle_agreement(c, &input, 1e-12).map_err(|e| e.to_string())?,
                format!("affine and state vector disagree on width-{w} circuit, input {input}"),
            )?;
            oracle_runs += 1;
        }
    }
    Ok(format!(
        "{} codes, {circuits} register circuits, {states} basis states; {oracle_runs} oracle runs on {} circuits of width <= 12",
        codes.len(),
        small.len()
    ))
}

fn member_sets(css: &qlfsr::code::CssCode, j: &Poly) -> Result<Vec<Vec<bool>>, String> {
    let s = encode_affine(css, j, ShiftStyle::Adjacent).map_err(|e| e.to_string())?;
    Ok(sorted(
        s.members().iter().map(|b| b.iter().collect()).collect(),
    ))
}

fn sorted(mut v: Vec<Vec<bool>>) -> Vec<Vec<bool>> {
    v.sort();
    v.dedup();
    v
}

fn criterion_5() -> Check {
    let steane = presets::steane();
    for j in 0..2u64 {
        let got = member_sets(&steane, &gf2_poly(j))?;
        for shift in [3usize, 1] {
            let want: Vec<Vec<bool>> = (0..8u64)
                .map(|i| {
                    let p = bin::mul(bin::mul(i, 0b11) ^ (j << shift), 0b1011);
                    (0..7).map(|b| p >> b & 1 == 1).collect()
                })
                .collect();
            ensure(
                sorted(want) == got,
                format!("Steane j={j} differs from the X^{shift} coset set"),
            )?;
        }
        ensure(got.len() == 8, "Steane set size")?;
    }
    let qrs = presets::qrs21();
    let basis = [3usize, 6, 5].map(gf8::alpha_pow);
    let g_perp = [1u8, gf8::alpha_pow(2), 1, gf8::alpha_pow(1)];
    let ctx = FieldCtx::gf8();
    for j in 0..8u8 {
        let got = member_sets(&qrs, &Poly::new(ctx, vec![FieldElement(u32::from(j))]))?;
        for shift in [3usize, 1] {
            let mut want = Vec::new();
            for i in 0..512u32 {
                let iv: Vec<u8> = (0..3).map(|s| (i >> (3 * s) & 7) as u8).collect();
                let mut jv = vec![0u8; shift];
                jv.push(j);
                let p = gf8::poly_add(&gf8::poly_mul(&iv, &[1, 1]), &jv);
                let p = gf8::poly_mul(&p, &g_perp);
                want.push(gf8::expand(&p, 7, &basis));
            }
            ensure(
                sorted(want) == got,
                format!("QRS j={j} differs from the X^{shift} coset set"),
            )?;
        }
        ensure(got.len() == 512 && got[0].len() == 21, "QRS set size")?;
    }
    Ok("Steane 2 cosets x 8 states, QRS 8 cosets x 512 states of 21 bits".into())
}

fn criterion_6() -> Check {
    let steane = presets::steane();
    let table = SyndromeTable::build(&steane).map_err(|e| e.to_string())?;
    let one = gf2_poly(1);
    let mut worst: f64 = 1.0;
    for q in 0..7 {
        let r = bit_flip_roundtrip(&steane, &table, &one, &[q], ShiftStyle::Adjacent)
            .map_err(|e| e.to_string())?;
        ensure(r.restored, format!("Steane bit flip {q} not restored"))?;
        for e in [PauliError::bit_flips(&[q]), PauliError::phase_flips(&[q])] {
            let r = statevector_roundtrip(&steane, &table, &one, &e, ShiftStyle::Adjacent)
                .map_err(|e| e.to_string())?;
            worst = worst.min(r.fidelity);
            ensure(
                (r.fidelity - 1.0).abs() < 1e-9,
                format!("Steane {e:?}: fidelity {}", r.fidelity),
            )?;
        }
    }
    let qrs = presets::qrs21();
    let table = SyndromeTable::build(&qrs).map_err(|e| e.to_string())?;
    let j = Poly::new(*qrs.ctx(), vec![qrs.ctx().alpha()]);
    let mut patterns = 0;
    for a in 0..21 {
        for b in a..21 {
            let err: Vec<usize> = if a == b { vec![a] } else { vec![a, b] };
            let r = bit_flip_roundtrip(&qrs, &table, &j, &err, ShiftStyle::Adjacent)
                .map_err(|e| e.to_string())?;
            ensure(r.restored, format!("QRS pattern {err:?} not restored"))?;
            patterns += 1;
        }
    }
    ensure(patterns == 231, "pattern count")?;
    Ok(format!(
        "Steane 7 X + 7 Z (min fidelity {worst:.12}), QRS {patterns} patterns of weight <= 2"
    ))
}

fn criterion_7() -> Check {
    let mut summary = Vec::new();
    for n in [7usize, 9, 15, 17, 21, 23, 31] {
        let fact = factor_xn_minus_1(&FieldCtx::gf2(), n).unwrap();
        let product = fact
            .factors()
            .iter()
            .fold(1u64, |acc, f| bin::mul(acc, poly_mask(f)));
        ensure(
            product == bin::xn1(n),
            format!("factors of X^{n}-1 do not multiply back"),
        )?;
        let mut wsd = 0;
        for g in fact.divisors() {
            let gm = poly_mask(&g);
            let (h, r) = bin::divmod(bin::xn1(n), gm);
            ensure(r == 0, "divisor check")?;
            let g_perp = bin::reverse(h);
            if bin::divmod(gm, g_perp).1 != 0 {
                continue;
            }
            wsd += 1;
            let k = n - bin::deg(gm) as usize;
            let rows: Vec<u64> = (0..k).map(|i| gm << i).collect();
            let mut word = 0u64;
            for idx in 1u64..1 << k {
                word ^= rows[idx.trailing_zeros() as usize];
                ensure(
                    word.count_ones().is_multiple_of(4),
                    format!("N={n} g={g}: codeword of weight {}", word.count_ones()),
                )?;
            }
        }
        summary.push(format!("N={n}: {wsd}"));
    }
    Ok(format!(
        "weakly self-dual codes per length, zero code included: {}",
        summary.join(", ")
    ))
}

fn gf8_trace(x: u8) -> u8 {
    let x2 = gf8::mul(x, x);
    x ^ x2 ^ gf8::mul(x2, x2)
}

fn criterion_8() -> Check {
    let code = CyclicCode::new(FieldCtx::gf8(), 7, &presets::rs7_generator()).unwrap();
    let ctx = FieldCtx::gf8();
    let mut names = Vec::new();
    for exps in [[3u64, 6, 5], [0, 1, 2], [0, 3, 5]] {
        let basis = Basis::from_alpha_powers(&ctx, &exps).unwrap();
        let b = exps.map(|e| gf8::alpha_pow(e as usize));
        // Dual basis by brute force over trace conditions.
        let mut dual = [0u8; 3];
        for (i, slot) in dual.iter_mut().enumerate() {
            *slot = (1..8u8)
                .find(|&y| (0..3).all(|j| gf8_trace(gf8::mul(b[j], y)) == u8::from(i == j)))
                .ok_or("no dual element")?;
        }
        let self_dual = dual == b;
        let expand_rows = |basis_elems: &[u8; 3], coords_basis: &[u8; 3], g: &[u8], dim: usize| {
            let mut rows = Vec::new();
            for i in 0..dim {
                let mut shifted = vec![0u8; i];
                shifted.extend_from_slice(g);
                for &bm in basis_elems {
                    let w: Vec<u8> = shifted.iter().map(|&c| gf8::mul(bm, c)).collect();
                    rows.push(bits(&gf8::expand(&w, 7, coords_basis)));
                }
            }
            BitMatrix::from_rows(21, rows)
        };
        let g: Vec<u8> = code
            .generator()
            .coeffs()
            .iter()
            .map(|c| c.0 as u8)
            .collect();
        let gp: Vec<u8> = code
            .dual_generator()
            .coeffs()
            .iter()
            .map(|c| c.0 as u8)
            .collect();
        let gen = expand_rows(&b, &b, &g, 3);
        let dual_gen = expand_rows(&dual, &dual, &gp, 4);
        ensure(
            gen.nullspace().same_row_space(&dual_gen),
            format!("row spaces differ for basis {exps:?}"),
        )?;
        let lib = binary_expansion(&code, &basis);
        ensure(
            lib.gen_matrix.same_row_space(&gen) && lib.dual_gen_matrix.same_row_space(&dual_gen),
            format!("library expansion differs for basis {exps:?}"),
        )?;
        names.push(format!(
            "({}){}",
            exps.map(|e| format!("a^{e}")).join(","),
            if self_dual { " self-dual" } else { "" }
        ));
    }
    Ok(format!("row spaces equal for bases {}", names.join("; ")))
}

fn main() {
    let start = Instant::now();
    let criteria: [Criterion; 8] = [
        ("1 worked GF(8) example parameters", criterion_1),
        ("2 shift and multiplier gate counts", criterion_2),
        ("3 multiplication register matrix semantics", criterion_3),
        ("4 classical/quantum agreement", criterion_4),
        ("5 encoder output sets", criterion_5),
        ("6 error-correction round trips", criterion_6),
        (
            "7 weakly self-dual binary codes are doubly even",
            criterion_7,
        ),
        ("8 expansion of dual equals dual of expansion", criterion_8),
    ];
    let mut failed = 0;
    for (name, f) in criteria {
        let t = Instant::now();
        match f() {
            Ok(detail) => println!(
                "PASS criterion {name}: {detail} ({:.2}s)",
                t.elapsed().as_secs_f64()
            ),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {name}: {why}");
            }
        }
    }
    // Every numeric claim is covered by criteria 1-8; nothing is deferred.
    if failed == 0 {
        println!("PASS criterion 9 no unreproducible results: all claims checked above");
    } else {
        println!("FAIL criterion 9 no unreproducible results: {failed} criteria failed");
    }
    println!(
        "acceptance finished in {:.2}s",
        start.elapsed().as_secs_f64()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
