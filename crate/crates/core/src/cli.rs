//! Command-line front end. `main.rs` only forwards `std::env::args` here so
//! every command can be driven from tests.
//!
//! Exit codes: 0 success, 2 usage, 3 mathematical precondition violated,
//! 4 verification failure.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::circuit::{Circuit, ShiftStyle};
use crate::code::{coset_reps, css_distance, doubly_even_check, min_distance, CssCode, CyclicCode};
use crate::error::Error;
use crate::gf::{find_self_dual_basis, is_self_dual, Basis, FieldCtx};
use crate::gf2::BitVec;
use crate::lfsr::{step_matrix, StepKind};
use crate::poly::{factor_xn_minus_1, Poly};
use crate::presets;
use crate::sim::{
    bit_flip_roundtrip, check_encoding_with, expected_code_state, random_oracle_sweep,
    statevector_roundtrip, AffineState, PauliError, SyndromeTable, MAX_SV_WIDTH,
};
use crate::synth::{synth_cyclic_shift, synth_decode_scheme, synth_encoder, synth_syndrome};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_MATH: i32 = 3;
pub const EXIT_VERIFY: i32 = 4;

#[derive(Parser, Debug)]
#[command(
    name = "qlfsr",
    version,
    about = "Quantum shift-register circuits for cyclic CSS codes"
)]
pub struct Cli {
    #[command(subcommand)]
    pub cmd: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Dual generator, weak self-duality, CSS split and parameters of a code.
    Analyze(CodeArgs),
    /// Irreducible factors of X^N - 1 grouped by reciprocity.
    Factor {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "1,3")]
        field: String,
    },
    /// Classical register runs with per-step traces.
    Lfsr {
        #[command(subcommand)]
        cmd: LfsrCmd,
    },
    /// Circuit synthesis.
    Synth {
        #[command(subcommand)]
        what: SynthCmd,
    },
    /// Gate counts and depth of a circuit file (netlist or JSON).
    Stats {
        #[arg(long)]
        circuit: PathBuf,
    },
    /// Runs a circuit file on a basis state.
    Simulate {
        #[arg(long)]
        circuit: PathBuf,
        /// Input bits, qubit 0 first.
        #[arg(long)]
        input: String,
    },
    /// Checks encoders, error round trips, or simulator agreement.
    Verify {
        what: VerifyWhat,
        #[command(flatten)]
        code: CodeArgs,
        #[arg(long, value_enum, default_value = "adjacent")]
        style: StyleArg,
        /// Circuit width for `oracle`.
        #[arg(long, default_value_t = 10)]
        width: usize,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        /// Random circuits for `oracle`.
        #[arg(long, default_value_t = 200)]
        cases: usize,
        /// Print a JSON report instead of text.
        #[arg(long)]
        json: bool,
    },
    /// Builds and verifies one of the worked codes.
    Example {
        name: Preset,
        /// Directory receiving the encoder/syndrome/decode netlists.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
pub enum LfsrCmd {
    Run {
        #[arg(long, value_enum)]
        mode: LfsrMode,
        #[arg(long, default_value = "1,3")]
        field: String,
        #[arg(long)]
        g: String,
        #[arg(long)]
        n: usize,
        /// Initial cells, lowest index first (zero padded).
        #[arg(long, default_value = "")]
        init: String,
        /// Defaults to K for mult/div and N for syndrome.
        #[arg(long)]
        steps: Option<usize>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum LfsrMode {
    Mult,
    Div,
    Syndrome,
}

#[derive(Subcommand, Debug)]
pub enum SynthCmd {
    Encoder {
        #[command(flatten)]
        code: CodeArgs,
        #[command(flatten)]
        out: OutArgs,
    },
    Syndrome {
        #[command(flatten)]
        code: CodeArgs,
        #[command(flatten)]
        out: OutArgs,
    },
    Decode {
        #[command(flatten)]
        code: CodeArgs,
        #[command(flatten)]
        out: OutArgs,
    },
    Shift {
        /// Number of cells.
        #[arg(long)]
        n: usize,
        /// Qubits per cell.
        #[arg(long, default_value_t = 1)]
        k: usize,
        #[command(flatten)]
        out: OutArgs,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum VerifyWhat {
    Encode,
    Roundtrip,
    Oracle,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Preset {
    Steane,
    Qrs21,
}

impl Preset {
    pub fn name(self) -> &'static str {
        match self {
            Preset::Steane => "steane",
            Preset::Qrs21 => "qrs21",
        }
    }

    pub fn css(self) -> CssCode {
        presets::by_name(self.name()).expect("known preset")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum StyleArg {
    Adjacent,
    Depth6,
    Relabel,
}

impl From<StyleArg> for ShiftStyle {
    fn from(s: StyleArg) -> Self {
        match s {
            StyleArg::Adjacent => ShiftStyle::Adjacent,
            StyleArg::Depth6 => ShiftStyle::ConstantDepth,
            StyleArg::Relabel => ShiftStyle::Relabel,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Netlist,
    Json,
    Qasm,
    Diagram,
}

#[derive(Args, Debug, Clone)]
pub struct OutArgs {
    #[arg(long, value_enum, default_value = "adjacent")]
    pub style: StyleArg,
    #[arg(long, value_enum, default_value = "netlist")]
    pub format: Format,
    /// Write the circuit here instead of stdout.
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// Append a stats line.
    #[arg(long)]
    pub stats: bool,
}

/// A code given either by preset name or by length, field and generator.
#[derive(Args, Debug, Clone, Default)]
pub struct CodeArgs {
    #[arg(long, value_enum)]
    pub code: Option<Preset>,
    #[arg(long)]
    pub n: Option<usize>,
    /// `k,modulus` with the modulus as an integer bit pattern (`3,11`) or
    /// as k+1 coefficients lowest first (`3,1,1,0,1`).
    #[arg(long, default_value = "1,3")]
    pub field: String,
    /// Generator coefficients lowest first, e.g. `1,a^2,1,a`.
    #[arg(long)]
    pub g: Option<String>,
    /// Basis elements (`a^3,a^6,a^5`), `self-dual`, or `polynomial`.
    #[arg(long)]
    pub basis: Option<String>,
}

/// Canonical description of a code, printable as CLI flags.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CodeSpec {
    pub n: usize,
    pub field: FieldCtx,
    pub g: Poly,
    pub basis: Option<Basis>,
}

impl CodeSpec {
    pub fn to_args(&self) -> String {
        let mut s = format!(
            "--n {} --field {} --g {}",
            self.n,
            field_text(&self.field),
            self.g.to_coeff_string()
        );
        if let Some(b) = &self.basis {
            let _ = write!(s, " --basis {}", basis_text(&self.field, b));
        }
        s
    }

    pub fn from_args(args: &CodeArgs) -> Result<Self, Failure> {
        if let Some(p) = args.code {
            let css = p.css();
            return Ok(CodeSpec {
                n: css.code().length(),
                field: *css.ctx(),
                g: css.code().generator().clone(),
                basis: css.basis().cloned(),
            });
        }
        let n = args
            .n
            .ok_or_else(|| Failure::Usage("either --code or --n/--g is required".into()))?;
        let g = args
            .g
            .as_deref()
            .ok_or_else(|| Failure::Usage("--g is required".into()))?;
        let field = parse_field(&args.field)?;
        let g = Poly::parse(field, g)?;
        let basis = args
            .basis
            .as_deref()
            .map(|b| parse_basis(&field, b))
            .transpose()?;
        Ok(CodeSpec { n, field, g, basis })
    }

    pub fn cyclic(&self) -> Result<CyclicCode, Failure> {
        Ok(CyclicCode::new(self.field, self.n, &self.g)?)
    }

    pub fn css(&self) -> Result<CssCode, Failure> {
        let css = self.cyclic()?.to_css()?;
        Ok(match &self.basis {
            Some(b) => css.with_basis(b.clone())?,
            None => css,
        })
    }
}

pub fn field_text(f: &FieldCtx) -> String {
    format!("{},{}", f.degree(), f.modulus())
}

pub fn basis_text(f: &FieldCtx, b: &Basis) -> String {
    b.elements()
        .iter()
        .map(|&x| f.format(x))
        .collect::<Vec<_>>()
        .join(",")
}

pub fn parse_field(s: &str) -> Result<FieldCtx, Failure> {
    let nums: Vec<u32> = s
        .split(',')
        .map(|t| t.trim().parse::<u32>())
        .collect::<Result<_, _>>()
        .map_err(|_| Failure::Usage(format!("bad field spec `{s}`")))?;
    match nums.as_slice() {
        [k, m] => Ok(FieldCtx::new(*k as usize, *m)?),
        [k, coeffs @ ..] if coeffs.len() == *k as usize + 1 => {
            let c: Vec<u8> = coeffs.iter().map(|&x| x as u8).collect();
            Ok(FieldCtx::from_coeffs(*k as usize, &c)?)
        }
        _ => Err(Failure::Usage(format!(
            "field spec `{s}` is neither `k,modulus` nor `k,c0,...,ck`"
        ))),
    }
}

pub fn parse_basis(f: &FieldCtx, s: &str) -> Result<Basis, Failure> {
    match s {
        "self-dual" => Ok(find_self_dual_basis(f)?),
        "polynomial" => Ok(Basis::polynomial(f)),
        _ => {
            let elems = s
                .split(',')
                .map(|t| f.parse_element(t))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(Basis::new(f, elems)?)
        }
    }
}

/// Why a command did not succeed.
#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Math(Error),
    Verify(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(m) => Failure::Usage(m),
            e => Failure::Math(e),
        }
    }
}

impl Failure {
    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::Usage(_) => EXIT_USAGE,
            Failure::Math(_) => EXIT_MATH,
            Failure::Verify(_) => EXIT_VERIFY,
        }
    }

    pub fn message(&self) -> String {
        match self {
            Failure::Usage(m) => format!("usage error: {m}"),
            Failure::Math(e) => format!("error: {e}"),
            Failure::Verify(m) => format!("verification failed: {m}"),
        }
    }
}

/// Result of one invocation.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            let code = e.exit_code();
            return if code == 0 {
                Outcome {
                    stdout: text,
                    ..Outcome::default()
                }
            } else {
                Outcome {
                    stderr: text,
                    code: EXIT_USAGE,
                    ..Outcome::default()
                }
            };
        }
    };
    let mut out = String::new();
    match dispatch(cli.cmd, &mut out) {
        Ok(()) => Outcome {
            stdout: out,
            stderr: String::new(),
            code: EXIT_OK,
        },
        Err(f) => Outcome {
            stdout: out,
            stderr: f.message() + "\n",
            code: f.exit_code(),
        },
    }
}

fn dispatch(cmd: Command, out: &mut String) -> Result<(), Failure> {
    match cmd {
        Command::Analyze(args) => cmd_analyze(&CodeSpec::from_args(&args)?, out),
        Command::Factor { n, field } => cmd_factor(n, &parse_field(&field)?, out),
        Command::Lfsr {
            cmd:
                LfsrCmd::Run {
                    mode,
                    field,
                    g,
                    n,
                    init,
                    steps,
                },
        } => {
            let f = parse_field(&field)?;
            let g = Poly::parse(f, &g)?;
            let init = Poly::parse(f, &init)?;
            cmd_lfsr(mode, &g, n, &init, steps, out)
        }
        Command::Synth { what } => cmd_synth(what, out),
        Command::Stats { circuit } => {
            let c = read_circuit(&circuit)?;
            let s = c.stats();
            let _ = writeln!(
                out,
                "width {}\ncnots {}\nh {}\ndepth {}",
                s.width, s.cnot_count, s.h_count, s.depth
            );
            Ok(())
        }
        Command::Simulate { circuit, input } => cmd_simulate(&read_circuit(&circuit)?, &input, out),
        Command::Verify {
            what,
            code,
            style,
            width,
            seed,
            cases,
            json,
        } => {
            let report = match what {
                VerifyWhat::Oracle => verify_oracle(width, cases, seed)?,
                _ => {
                    let spec = if code.code.is_none() && code.n.is_none() {
                        CodeSpec::from_args(&CodeArgs {
                            code: Some(Preset::Steane),
                            ..code
                        })?
                    } else {
                        CodeSpec::from_args(&code)?
                    };
                    let css = spec.css()?;
                    match what {
                        VerifyWhat::Encode => verify_encode(&css, style.into())?,
                        _ => verify_roundtrip(&css, style.into())?,
                    }
                }
            };
            report.finish(json, out)
        }
        Command::Example { name, out: dir } => cmd_example(name, dir, out),
    }
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

pub fn cmd_analyze(spec: &CodeSpec, out: &mut String) -> Result<(), Failure> {
    let code = spec.cyclic()?;
    let f = &spec.field;
    let _ = writeln!(out, "field = GF({}) {}", f.order(), field_text(f));
    let _ = writeln!(out, "n = {}", code.length());
    let _ = writeln!(out, "K = {}", code.dimension());
    let _ = writeln!(out, "g = {}", code.generator().to_coeff_string());
    let _ = writeln!(out, "h = {}", code.check_poly().to_coeff_string());
    let _ = writeln!(out, "g_perp = {}", code.dual_generator().to_coeff_string());
    let wsd = code.is_weakly_self_dual();
    let _ = writeln!(out, "weakly_self_dual = {}", yes(wsd));
    let css = spec.css()?;
    let _ = writeln!(out, "g_tilde = {}", css.g_tilde().to_coeff_string());
    let _ = writeln!(out, "logical_symbols = {}", css.logical_count());
    if f.is_binary() {
        let de = doubly_even_check(&css).map(yes).unwrap_or("too large");
        let _ = writeln!(out, "doubly_even = {de}");
    }
    if let Some(b) = css.basis() {
        let _ = writeln!(out, "basis = {}", basis_text(f, b));
        let _ = writeln!(out, "basis_self_dual = {}", yes(is_self_dual(f, b)));
        let exp = css.expansion()?;
        let len = exp.gen_matrix.n_cols();
        let inner = exp.gen_matrix.rank();
        let outer = exp.dual_gen_matrix.rank();
        let d_inner = min_distance(&exp.gen_matrix)?;
        let d_outer = min_distance(&exp.dual_gen_matrix)?;
        let d = css_distance(&exp.gen_matrix, &exp.dual_gen_matrix)?;
        let _ = writeln!(out, "code = [{len},{inner},{d_inner}]");
        let _ = writeln!(out, "dual_code = [{len},{outer},{d_outer}]");
        let p = css.parameters()?;
        debug_assert_eq!(p.d, d);
        let _ = writeln!(out, "qecc = {p}");
    }
    Ok(())
}

pub fn cmd_factor(n: usize, f: &FieldCtx, out: &mut String) -> Result<(), Failure> {
    let fact = factor_xn_minus_1(f, n)?;
    let _ = writeln!(out, "X^{n} - 1 over GF({})", f.order());
    for p in &fact.self_reciprocal {
        let _ = writeln!(out, "self-reciprocal {}", p.to_coeff_string());
    }
    for (a, b) in &fact.pairs {
        let _ = writeln!(
            out,
            "reciprocal pair {} | {}",
            a.to_coeff_string(),
            b.to_coeff_string()
        );
    }
    let _ = writeln!(out, "divisors = {}", fact.divisors().len());
    Ok(())
}

fn fmt_cells(f: &FieldCtx, cells: &[crate::gf::FieldElement]) -> String {
    cells
        .iter()
        .map(|&c| f.format(c))
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn cmd_lfsr(
    mode: LfsrMode,
    g: &Poly,
    n: usize,
    init: &Poly,
    steps: Option<usize>,
    out: &mut String,
) -> Result<(), Failure> {
    let f = *g.ctx();
    let kind = match mode {
        LfsrMode::Mult => StepKind::MultE,
        LfsrMode::Div => StepKind::DivS,
        LfsrMode::Syndrome => StepKind::Syndrome,
    };
    let s = step_matrix(kind, g, n)?;
    let d = s.g.degree().unwrap_or(0);
    if init.deg() >= n as isize {
        return Err(Failure::Math(Error::LayoutMismatch(format!(
            "initial state has {} cells, register has {n}",
            init.deg() + 1
        ))));
    }
    let steps = steps.unwrap_or(if mode == LfsrMode::Syndrome { n } else { n - d });
    let trace = s.trace(&init.to_vec(s.cells()), steps);
    for (i, st) in trace.iter().enumerate() {
        let _ = writeln!(out, "step {i}: {}", fmt_cells(&f, st));
    }
    let last = trace.last().expect("nonempty");
    match mode {
        LfsrMode::Mult => {
            let _ = writeln!(
                out,
                "result = {}",
                Poly::new(f, last.clone()).to_coeff_string()
            );
        }
        LfsrMode::Div => {
            let k = n - d;
            let _ = writeln!(out, "quotient cells = {}", fmt_cells(&f, &last[..k]));
            let _ = writeln!(out, "remainder cells = {}", fmt_cells(&f, &last[k..]));
        }
        LfsrMode::Syndrome => {
            let _ = writeln!(out, "data = {}", fmt_cells(&f, &last[..n]));
            let _ = writeln!(out, "syndrome = {}", fmt_cells(&f, &last[n..]));
        }
    }
    Ok(())
}

pub fn render(c: &Circuit, format: Format) -> String {
    match format {
        Format::Netlist => c.to_netlist(),
        Format::Json => c.to_json() + "\n",
        Format::Qasm => c.to_qasm(),
        Format::Diagram => c.to_diagram(),
    }
}

fn cmd_synth(what: SynthCmd, out: &mut String) -> Result<(), Failure> {
    let (circuit, o) = match what {
        SynthCmd::Encoder { code, out: o } => {
            let css = CodeSpec::from_args(&code)?.css()?;
            (synth_encoder(&css, o.style.into())?, o)
        }
        SynthCmd::Syndrome { code, out: o } => {
            let css = CodeSpec::from_args(&code)?.css()?;
            (synth_syndrome(&css, o.style.into())?, o)
        }
        SynthCmd::Decode { code, out: o } => {
            let css = CodeSpec::from_args(&code)?.css()?;
            (synth_decode_scheme(&css, o.style.into())?, o)
        }
        SynthCmd::Shift { n, k, out: o } => (synth_cyclic_shift(n, k, o.style.into())?, o),
    };
    let text = render(&circuit, o.format);
    match &o.output {
        Some(p) => std::fs::write(p, &text)
            .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", p.display())))?,
        None => out.push_str(&text),
    }
    if o.stats {
        let _ = writeln!(out, "# stats {}", circuit.stats());
    }
    Ok(())
}

pub fn read_circuit(p: &std::path::Path) -> Result<Circuit, Failure> {
    let text = std::fs::read_to_string(p)
        .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", p.display())))?;
    Ok(if text.trim_start().starts_with('{') {
        Circuit::from_json(&text)?
    } else {
        Circuit::parse_netlist(&text)?
    })
}

pub fn cmd_simulate(c: &Circuit, input: &str, out: &mut String) -> Result<(), Failure> {
    let bits = BitVec::parse(input)
        .ok_or_else(|| Failure::Usage(format!("input `{input}` is not a bit string")))?;
    if bits.len() != c.width {
        return Err(Failure::Usage(format!(
            "input has {} bits, circuit width is {}",
            bits.len(),
            c.width
        )));
    }
    let mut s = AffineState::basis(bits);
    s.apply_logical(c)?;
    if s.dimension() == 0 {
        let _ = writeln!(out, "{}", s.offset());
    } else {
        let _ = writeln!(out, "uniform superposition over 2^{} states", s.dimension());
        let _ = writeln!(out, "offset {}", s.offset());
        for g in s.generators() {
            let _ = writeln!(out, "generator {g}");
        }
    }
    Ok(())
}

/// Named pass/fail cases of one verification run.
#[derive(Clone, Debug, Default)]
pub struct Report {
    pub title: String,
    pub cases: Vec<(String, bool)>,
}

impl Report {
    fn new(title: &str) -> Self {
        Report {
            title: title.into(),
            cases: Vec::new(),
        }
    }

    fn add(&mut self, name: String, pass: bool) {
        self.cases.push((name, pass));
    }

    pub fn passed(&self) -> bool {
        self.cases.iter().all(|(_, p)| *p)
    }

    pub fn text(&self) -> String {
        let mut s = String::new();
        for (name, pass) in &self.cases {
            let _ = writeln!(s, "{} {name}", if *pass { "PASS" } else { "FAIL" });
        }
        let failed = self.cases.iter().filter(|(_, p)| !p).count();
        let _ = writeln!(
            s,
            "{}: {} cases, {failed} failed",
            self.title,
            self.cases.len()
        );
        s
    }

    fn finish(self, as_json: bool, out: &mut String) -> Result<(), Failure> {
        if as_json {
            let cases: Vec<_> = self
                .cases
                .iter()
                .map(|(n, p)| json!({"case": n, "pass": p}))
                .collect();
            let doc = json!({"check": self.title, "pass": self.passed(), "cases": cases});
            out.push_str(&serde_json::to_string_pretty(&doc).expect("json"));
            out.push('\n');
        } else {
            out.push_str(&self.text());
        }
        if self.passed() {
            Ok(())
        } else {
            Err(Failure::Verify(self.title))
        }
    }
}

pub fn verify_encode(css: &CssCode, style: ShiftStyle) -> Result<Report, Failure> {
    let mut r = Report::new("encode");
    let reps = coset_reps(css)?;
    let mut seen = std::collections::HashSet::new();
    let mut disjoint = true;
    for j in &reps {
        let ok = check_encoding_with(css, j, style)?;
        r.add(format!("encoder j={}", j.to_coeff_string()), ok);
        for w in expected_code_state(css, j)? {
            disjoint &= seen.insert(w);
        }
    }
    r.add(format!("{} cosets pairwise disjoint", reps.len()), disjoint);
    Ok(r)
}

pub fn verify_roundtrip(css: &CssCode, style: ShiftStyle) -> Result<Report, Failure> {
    let mut r = Report::new("roundtrip");
    let table = SyndromeTable::build(css)?;
    let width = css.cell_bits() * css.code().length();
    let j = Poly::zero(*css.ctx());
    let mut count = 0;
    let mut ok = true;
    let mut patterns: Vec<Vec<usize>> = vec![vec![]];
    for w in 1..=table.t() {
        let mut next = Vec::new();
        for p in patterns.iter().filter(|p| p.len() == w - 1) {
            let start = p.last().map_or(0, |&x| x + 1);
            for q in start..width {
                let mut e = p.clone();
                e.push(q);
                next.push(e);
            }
        }
        patterns.extend(next);
    }
    for e in patterns.iter().filter(|e| !e.is_empty()) {
        let res = bit_flip_roundtrip(css, &table, &j, e, style)?;
        ok &= res.restored && res.correction.x.len() <= table.t();
        count += 1;
    }
    r.add(
        format!(
            "{count} bit-flip patterns of weight <= {} (affine)",
            table.t()
        ),
        ok,
    );
    let dec_width = width + 2 * css.cell_bits() * css.code().dimension();
    if dec_width <= MAX_SV_WIDTH && is_self_dual(css.ctx(), css.require_basis()?) {
        let j = if css.logical_count() > 0 {
            Poly::one(*css.ctx())
        } else {
            j
        };
        for kind in ["X", "Z"] {
            let mut worst: f64 = 1.0;
            for q in 0..width {
                let e = if kind == "X" {
                    PauliError::bit_flips(&[q])
                } else {
                    PauliError::phase_flips(&[q])
                };
                let res = statevector_roundtrip(css, &table, &j, &e, style)?;
                worst = worst.min(res.fidelity);
            }
            r.add(
                format!("{width} single {kind} errors (state vector, min fidelity {worst:.12})"),
                (worst - 1.0).abs() < 1e-9,
            );
        }
    }
    Ok(r)
}

pub fn verify_oracle(width: usize, cases: usize, seed: u64) -> Result<Report, Failure> {
    let mut r = Report::new("oracle");
    let rep = random_oracle_sweep(width, cases, seed)?;
    r.add(
        format!(
            "{} random circuits of width {width}, seed {seed}: affine and state vector agree",
            rep.cases
        ),
        rep.failures == 0,
    );
    Ok(r)
}

fn encoder_layout(css: &CssCode) -> String {
    let kk = css.code().dimension();
    let n = css.code().length();
    format!(
        "H on {} qubits, {kk} steps of g_tilde, {} steps of g_perp",
        kk * css.cell_bits(),
        n - kk
    )
}

pub fn cmd_example(p: Preset, dir: Option<PathBuf>, out: &mut String) -> Result<(), Failure> {
    let css = p.css();
    let style = ShiftStyle::Adjacent;
    let enc = synth_encoder(&css, style)?;
    let syn = synth_syndrome(&css, style)?;
    let dec = synth_decode_scheme(&css, style)?;
    let _ = writeln!(out, "example {}", p.name());
    let spec = CodeSpec {
        n: css.code().length(),
        field: *css.ctx(),
        g: css.code().generator().clone(),
        basis: css.basis().cloned(),
    };
    let _ = writeln!(out, "code {}", spec.to_args());
    let _ = writeln!(out, "parameters {}", css.parameters()?);
    let _ = writeln!(out, "g_perp = {}", css.g_perp().to_coeff_string());
    let _ = writeln!(out, "g_tilde = {}", css.g_tilde().to_coeff_string());
    let _ = writeln!(out, "encoder: {}", encoder_layout(&css));
    let _ = writeln!(out, "encoder stats: {}", enc.stats());
    let _ = writeln!(out, "syndrome stats: {}", syn.stats());
    let _ = writeln!(out, "decode stats: {}", dec.stats());
    if let Some(d) = dir {
        std::fs::create_dir_all(&d)
            .map_err(|e| Failure::Usage(format!("cannot create {}: {e}", d.display())))?;
        for (name, c) in [("encoder", &enc), ("syndrome", &syn), ("decode", &dec)] {
            let path = d.join(format!("{}_{name}.netlist", p.name()));
            std::fs::write(&path, c.to_netlist())
                .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display())))?;
            let _ = writeln!(out, "wrote {}", path.display());
        }
    }
    let mut all = Report::new(&format!("example {}", p.name()));
    for rep in [verify_encode(&css, style)?, verify_roundtrip(&css, style)?] {
        all.cases.extend(rep.cases);
    }
    all.finish(false, out)
}
