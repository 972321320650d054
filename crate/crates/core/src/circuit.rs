//! Gate-level circuit IR over qubits, with classical basis-state
//! simulation, statistics and text exports.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf2::BitVec;

/// How a cyclic shift of register cells is realized.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ShiftStyle {
    /// Chain of neighbouring swaps, `m - 1` per cycle.
    Adjacent,
    /// Two layers of disjoint swaps (two reflections), depth six after
    /// expansion to CNOTs.
    #[serde(rename = "depth6")]
    ConstantDepth,
    /// No gates; the wire labels rotate instead.
    Relabel,
}

impl ShiftStyle {
    pub const ALL: [ShiftStyle; 3] = [
        ShiftStyle::Adjacent,
        ShiftStyle::ConstantDepth,
        ShiftStyle::Relabel,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ShiftStyle::Adjacent => "adjacent",
            ShiftStyle::ConstantDepth => "depth6",
            ShiftStyle::Relabel => "relabel",
        }
    }
}

impl fmt::Display for ShiftStyle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ShiftStyle {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "adjacent" => Ok(ShiftStyle::Adjacent),
            "depth6" | "constant-depth" => Ok(ShiftStyle::ConstantDepth),
            "relabel" => Ok(ShiftStyle::Relabel),
            _ => Err(Error::Parse(format!("unknown shift style `{s}`"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "g", rename_all = "lowercase")]
pub enum Gate {
    H {
        q: usize,
    },
    #[serde(rename = "cx")]
    Cnot {
        c: usize,
        t: usize,
    },
    Swap {
        a: usize,
        b: usize,
    },
    /// Qubit permutation: the value on wire `q` moves to wire `perm[q]`.
    Perm {
        style: ShiftStyle,
        perm: Vec<usize>,
    },
    /// Marks the listed qubits as measured; has no effect on the state.
    Measure {
        qubits: Vec<usize>,
    },
}

impl Gate {
    pub fn support(&self) -> Vec<usize> {
        match self {
            Gate::H { q } => vec![*q],
            Gate::Cnot { c, t } => vec![*c, *t],
            Gate::Swap { a, b } => vec![*a, *b],
            Gate::Perm { perm, .. } => perm
                .iter()
                .enumerate()
                .filter(|(i, p)| *i != **p)
                .map(|(i, _)| i)
                .collect(),
            Gate::Measure { qubits } => qubits.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Role {
    pub name: String,
    pub start: usize,
    pub len: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Circuit {
    pub width: usize,
    pub roles: Vec<Role>,
    pub gates: Vec<Gate>,
    /// Where each logical qubit ends up when shifts were relabelled:
    /// logical qubit `q` is read from wire `output_perm[q]`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output_perm: Option<Vec<usize>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Stats {
    pub width: usize,
    pub cnot_count: usize,
    pub h_count: usize,
    pub depth: usize,
}

impl fmt::Display for Stats {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "width {} cnots {} h {} depth {}",
            self.width, self.cnot_count, self.h_count, self.depth
        )
    }
}

fn cycles(perm: &[usize]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; perm.len()];
    let mut out = Vec::new();
    for s in 0..perm.len() {
        if seen[s] || perm[s] == s {
            continue;
        }
        let mut cyc = vec![s];
        seen[s] = true;
        let mut x = perm[s];
        while x != s {
            seen[x] = true;
            cyc.push(x);
            x = perm[x];
        }
        out.push(cyc);
    }
    out
}

/// Swaps realizing `perm` in the given style; `Relabel` is treated as
/// `Adjacent` because an explicit block has to move data.
pub fn perm_to_swaps(perm: &[usize], style: ShiftStyle) -> Vec<(usize, usize)> {
    let cyc = cycles(perm);
    let mut out = Vec::new();
    match style {
        ShiftStyle::Adjacent | ShiftStyle::Relabel => {
            let longest = cyc.iter().map(Vec::len).max().unwrap_or(0);
            for p in (0..longest.saturating_sub(1)).rev() {
                for c in &cyc {
                    if p + 1 < c.len() {
                        out.push((c[p], c[p + 1]));
                    }
                }
            }
        }
        ShiftStyle::ConstantDepth => {
            // c_a -> c_{a+1} is the reflection a ↦ m-2-a followed by a ↦ m-1-a.
            for offset in [2usize, 1] {
                for c in &cyc {
                    let m = c.len();
                    for a in 0..m {
                        let b = (2 * m - offset - a) % m;
                        if a < b {
                            out.push((c[a], c[b]));
                        }
                    }
                }
            }
        }
    }
    out
}

impl Circuit {
    pub fn new(width: usize) -> Self {
        Circuit {
            width,
            roles: Vec::new(),
            gates: Vec::new(),
            output_perm: None,
        }
    }

    pub fn with_role(mut self, name: &str, start: usize, len: usize) -> Self {
        self.roles.push(Role {
            name: name.into(),
            start,
            len,
        });
        self
    }

    pub fn push(&mut self, g: Gate) {
        self.gates.push(g);
    }

    pub fn role(&self, name: &str) -> Option<&Role> {
        self.roles.iter().find(|r| r.name == name)
    }

    /// Wire carrying logical qubit `q` at the end of the circuit.
    pub fn output_wire(&self, q: usize) -> usize {
        self.output_perm.as_ref().map_or(q, |p| p[q])
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidCircuit(msg));
        let w = self.width;
        for (i, g) in self.gates.iter().enumerate() {
            match g {
                Gate::H { q } if *q >= w => return bad(format!("gate {i}: qubit {q} >= {w}")),
                Gate::Cnot { c, t } => {
                    if c == t {
                        return bad(format!("gate {i}: control equals target"));
                    }
                    if *c >= w || *t >= w {
                        return bad(format!("gate {i}: index out of range"));
                    }
                }
                Gate::Swap { a, b } => {
                    if a == b {
                        return bad(format!("gate {i}: swap of a qubit with itself"));
                    }
                    if *a >= w || *b >= w {
                        return bad(format!("gate {i}: index out of range"));
                    }
                }
                Gate::Perm { perm, .. } => {
                    if !is_permutation(perm, w) {
                        return bad(format!("gate {i}: not a permutation of {w} wires"));
                    }
                }
                Gate::Measure { qubits } if qubits.iter().any(|&q| q >= w) => {
                    return bad(format!("gate {i}: index out of range"));
                }
                _ => {}
            }
        }
        if let Some(p) = &self.output_perm {
            if !is_permutation(p, w) {
                return bad("output permutation is not a permutation".into());
            }
        }
        Ok(())
    }

    /// Replaces permutation blocks by swaps.
    pub fn lower_perms(&self) -> Circuit {
        let mut out = Circuit {
            gates: Vec::new(),
            ..self.clone()
        };
        for g in &self.gates {
            match g {
                Gate::Perm { perm, style } => {
                    for (a, b) in perm_to_swaps(perm, *style) {
                        out.push(Gate::Swap { a, b });
                    }
                }
                _ => out.push(g.clone()),
            }
        }
        out
    }

    /// Only H, CNOT and measurement markers remain; each swap becomes
    /// three CNOTs.
    pub fn expand(&self) -> Circuit {
        let lowered = self.lower_perms();
        let mut out = Circuit {
            gates: Vec::new(),
            ..lowered.clone()
        };
        for g in lowered.gates {
            match g {
                Gate::Swap { a, b } => {
                    out.push(Gate::Cnot { c: a, t: b });
                    out.push(Gate::Cnot { c: b, t: a });
                    out.push(Gate::Cnot { c: a, t: b });
                }
                g => out.push(g),
            }
        }
        out
    }

    /// Counts after expansion; depth by greedy layering of H and CNOT gates.
    pub fn stats(&self) -> Stats {
        let e = self.expand();
        let mut level = vec![0usize; self.width];
        let (mut cnots, mut hs, mut depth) = (0, 0, 0);
        for g in &e.gates {
            let sup = match g {
                Gate::H { q } => {
                    hs += 1;
                    vec![*q]
                }
                Gate::Cnot { c, t } => {
                    cnots += 1;
                    vec![*c, *t]
                }
                _ => continue,
            };
            let l = sup.iter().map(|&q| level[q]).max().unwrap_or(0) + 1;
            for q in sup {
                level[q] = l;
            }
            depth = depth.max(l);
        }
        Stats {
            width: self.width,
            cnot_count: cnots,
            h_count: hs,
            depth,
        }
    }

    /// Applies the classical part of the circuit to a basis state.
    /// Fails on H since it leaves the computational basis.
    pub fn apply_basis(&self, bits: &BitVec) -> Result<BitVec> {
        assert_eq!(bits.len(), self.width, "state width mismatch");
        let mut s = bits.clone();
        for g in &self.gates {
            match g {
                Gate::H { q } => return Err(Error::UnsupportedH(*q)),
                Gate::Cnot { c, t } => {
                    if s.get(*c) {
                        s.flip(*t);
                    }
                }
                Gate::Swap { a, b } => {
                    let (x, y) = (s.get(*a), s.get(*b));
                    s.set(*a, y);
                    s.set(*b, x);
                }
                Gate::Perm { perm, .. } => s = permute_bits(&s, perm),
                Gate::Measure { .. } => {}
            }
        }
        Ok(s)
    }

    /// Final state read through [`Circuit::output_perm`].
    pub fn apply_basis_logical(&self, bits: &BitVec) -> Result<BitVec> {
        let out = self.apply_basis(bits)?;
        Ok(self.read_logical(&out))
    }

    pub fn read_logical(&self, wires: &BitVec) -> BitVec {
        match &self.output_perm {
            None => wires.clone(),
            Some(p) => {
                let mut v = BitVec::zeros(self.width);
                for (q, &w) in p.iter().enumerate() {
                    v.set(q, wires.get(w));
                }
                v
            }
        }
    }

    /// Appends `other`, mapping its qubit `q` to `map[q]`.
    pub fn append_mapped(&mut self, other: &Circuit, map: &[usize]) {
        for g in &other.gates {
            self.push(match g {
                Gate::H { q } => Gate::H { q: map[*q] },
                Gate::Cnot { c, t } => Gate::Cnot {
                    c: map[*c],
                    t: map[*t],
                },
                Gate::Swap { a, b } => Gate::Swap {
                    a: map[*a],
                    b: map[*b],
                },
                Gate::Perm { style, perm } => {
                    let mut p: Vec<usize> = (0..self.width).collect();
                    for (src, &dst) in perm.iter().enumerate() {
                        p[map[src]] = map[dst];
                    }
                    Gate::Perm {
                        style: *style,
                        perm: p,
                    }
                }
                Gate::Measure { qubits } => Gate::Measure {
                    qubits: qubits.iter().map(|&q| map[q]).collect(),
                },
            });
        }
    }

    pub fn to_netlist(&self) -> String {
        let mut s = format!("# width {}\n", self.width);
        for r in &self.roles {
            s += &format!("# role {} {} {}\n", r.name, r.start, r.len);
        }
        if let Some(p) = &self.output_perm {
            s += &format!("# output {}\n", join(p));
        }
        for g in &self.gates {
            s += &match g {
                Gate::H { q } => format!("H {q}"),
                Gate::Cnot { c, t } => format!("CX {c} {t}"),
                Gate::Swap { a, b } => format!("SWAP {a} {b}"),
                Gate::Perm { style, perm } => format!("PERM {style} {}", join(perm)),
                Gate::Measure { qubits } => format!("M {}", join(qubits)),
            };
            s.push('\n');
        }
        s
    }

    pub fn parse_netlist(text: &str) -> Result<Circuit> {
        let mut width = None;
        let mut roles = Vec::new();
        let mut output_perm = None;
        let mut gates = Vec::new();
        for (ln, line) in text.lines().enumerate() {
            let line = line.trim();
            let err = |m: &str| Error::Parse(format!("line {}: {m}", ln + 1));
            let nums = |toks: &[&str]| -> Result<Vec<usize>> {
                toks.iter()
                    .map(|t| t.parse().map_err(|_| err(&format!("bad index `{t}`"))))
                    .collect()
            };
            if line.is_empty() {
                continue;
            }
            let toks: Vec<&str> = line.split_whitespace().collect();
            if let Some(rest) = line.strip_prefix('#') {
                let t: Vec<&str> = rest.split_whitespace().collect();
                match t.first() {
                    Some(&"width") if t.len() == 2 => width = Some(nums(&t[1..])?[0]),
                    Some(&"role") if t.len() == 4 => {
                        let v = nums(&t[2..])?;
                        roles.push(Role {
                            name: t[1].into(),
                            start: v[0],
                            len: v[1],
                        });
                    }
                    Some(&"output") => output_perm = Some(nums(&t[1..])?),
                    _ => {}
                }
                continue;
            }
            let arity = |n: usize| {
                if toks.len() == n + 1 {
                    Ok(())
                } else {
                    Err(err(&format!("`{}` takes {n} operands", toks[0])))
                }
            };
            let g = match toks[0] {
                "H" => {
                    arity(1)?;
                    Gate::H {
                        q: nums(&toks[1..])?[0],
                    }
                }
                "CX" => {
                    arity(2)?;
                    let v = nums(&toks[1..])?;
                    Gate::Cnot { c: v[0], t: v[1] }
                }
                "SWAP" => {
                    arity(2)?;
                    let v = nums(&toks[1..])?;
                    Gate::Swap { a: v[0], b: v[1] }
                }
                "PERM" => {
                    let style = toks.get(1).ok_or_else(|| err("missing style"))?.parse()?;
                    Gate::Perm {
                        style,
                        perm: nums(&toks[2..])?,
                    }
                }
                "M" => Gate::Measure {
                    qubits: nums(&toks[1..])?,
                },
                other => return Err(err(&format!("unknown gate `{other}`"))),
            };
            gates.push(g);
        }
        let width = match width {
            Some(w) => w,
            None => gates
                .iter()
                .flat_map(|g| match g {
                    Gate::Perm { perm, .. } => vec![perm.len().saturating_sub(1)],
                    g => g.support(),
                })
                .max()
                .map_or(0, |m| m + 1),
        };
        let c = Circuit {
            width,
            roles,
            gates,
            output_perm,
        };
        c.validate()?;
        Ok(c)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("circuit serializes")
    }

    pub fn from_json(text: &str) -> Result<Circuit> {
        let c: Circuit = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        c.validate()?;
        Ok(c)
    }

    /// OpenQASM 2.0; permutation blocks are lowered to swaps.
    pub fn to_qasm(&self) -> String {
        let c = self.lower_perms();
        let measures = c.gates.iter().any(|g| matches!(g, Gate::Measure { .. }));
        let mut s = String::from("OPENQASM 2.0;\ninclude \"qelib1.inc\";\n");
        s += &format!("qreg q[{}];\n", self.width);
        if measures {
            s += &format!("creg c[{}];\n", self.width);
        }
        for g in &c.gates {
            match g {
                Gate::H { q } => s += &format!("h q[{q}];\n"),
                Gate::Cnot { c, t } => s += &format!("cx q[{c}],q[{t}];\n"),
                Gate::Swap { a, b } => s += &format!("swap q[{a}],q[{b}];\n"),
                Gate::Measure { qubits } => {
                    for q in qubits {
                        s += &format!("measure q[{q}] -> c[{q}];\n");
                    }
                }
                Gate::Perm { .. } => unreachable!("lowered"),
            }
        }
        s
    }

    /// Fixed-width wire diagram. Gates whose vertical spans do not overlap
    /// share a column.
    pub fn to_diagram(&self) -> String {
        let c = self.lower_perms();
        let w = self.width;
        let mut cols: Vec<Vec<char>> = Vec::new();
        let mut busy: Vec<Vec<bool>> = Vec::new();
        let mut last_col = vec![0usize; w.max(1)];
        for g in &c.gates {
            let sup = g.support();
            if sup.is_empty() {
                continue;
            }
            let (lo, hi) = (*sup.iter().min().unwrap(), *sup.iter().max().unwrap());
            let span: Vec<usize> = if matches!(g, Gate::Measure { .. }) {
                sup.clone()
            } else {
                (lo..=hi).collect()
            };
            let mut col = span.iter().map(|&q| last_col[q]).max().unwrap_or(0);
            while col < cols.len() && span.iter().any(|&q| busy[col][q]) {
                col += 1;
            }
            if col == cols.len() {
                cols.push(vec!['-'; w]);
                busy.push(vec![false; w]);
            }
            for &q in &span {
                busy[col][q] = true;
                last_col[q] = col + 1;
                cols[col][q] = '|';
            }
            match g {
                Gate::H { q } => cols[col][*q] = 'H',
                Gate::Cnot { c, t } => {
                    cols[col][*c] = '*';
                    cols[col][*t] = '+';
                }
                Gate::Swap { a, b } => {
                    cols[col][*a] = 'x';
                    cols[col][*b] = 'x';
                }
                Gate::Measure { qubits } => {
                    for &q in qubits {
                        cols[col][q] = 'M';
                    }
                }
                Gate::Perm { .. } => unreachable!("lowered"),
            }
        }
        let label_w = format!("q{}", w.saturating_sub(1)).len();
        let mut s = String::new();
        for q in 0..w {
            let role = self
                .roles
                .iter()
                .find(|r| q >= r.start && q < r.start + r.len)
                .map_or("", |r| r.name.as_str());
            s += &format!("{:<lw$} {:<8} -", format!("q{q}"), role, lw = label_w);
            for col in &cols {
                let ch = col[q];
                s.push(ch);
                s.push(if ch == '|' { ' ' } else { '-' });
            }
            s = s.trim_end().to_string();
            s.push('\n');
        }
        s
    }
}

fn join(v: &[usize]) -> String {
    v.iter().map(usize::to_string).collect::<Vec<_>>().join(" ")
}

fn is_permutation(p: &[usize], n: usize) -> bool {
    if p.len() != n {
        return false;
    }
    let mut seen = vec![false; n];
    p.iter()
        .all(|&x| x < n && !std::mem::replace(&mut seen[x], true))
}

/// Moves bit `q` to position `perm[q]`.
pub fn permute_bits(s: &BitVec, perm: &[usize]) -> BitVec {
    let mut out = BitVec::zeros(s.len());
    for (q, &p) in perm.iter().enumerate() {
        out.set(p, s.get(q));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn shift_perm(n: usize) -> Vec<usize> {
        (0..n).map(|i| (i + 1) % n).collect()
    }

    fn shift_circuit(n: usize, style: ShiftStyle) -> Circuit {
        let mut c = Circuit::new(n);
        c.push(Gate::Perm {
            style,
            perm: shift_perm(n),
        });
        c
    }

    #[test]
    fn shift_counts() {
        let a = shift_circuit(7, ShiftStyle::Adjacent).stats();
        assert_eq!(a.cnot_count, 18);
        let d = shift_circuit(7, ShiftStyle::ConstantDepth).stats();
        assert_eq!(d.cnot_count, 18);
        assert_eq!(d.depth, 6);
        assert_eq!(Circuit::new(4).stats().depth, 0);
    }

    #[test]
    fn swaps_realize_perm() {
        for n in 2..12 {
            for style in [ShiftStyle::Adjacent, ShiftStyle::ConstantDepth] {
                let c = shift_circuit(n, style).expand();
                for q in 0..n {
                    let out = c.apply_basis(&BitVec::unit(n, q)).unwrap();
                    assert_eq!(out, BitVec::unit(n, (q + 1) % n), "n={n} {style}");
                }
            }
        }
    }

    #[test]
    fn cnot_on_basis() {
        let mut c = Circuit::new(2);
        c.push(Gate::Cnot { c: 0, t: 1 });
        assert_eq!(
            c.apply_basis(&BitVec::parse("10").unwrap()).unwrap(),
            BitVec::parse("11").unwrap()
        );
    }

    #[test]
    fn netlist_and_json_roundtrip() {
        let mut c = Circuit::new(4)
            .with_role("data", 0, 3)
            .with_role("ancilla", 3, 1);
        c.push(Gate::H { q: 0 });
        c.push(Gate::Cnot { c: 0, t: 3 });
        c.push(Gate::Swap { a: 1, b: 2 });
        c.push(Gate::Perm {
            style: ShiftStyle::ConstantDepth,
            perm: vec![1, 2, 0, 3],
        });
        c.push(Gate::Measure { qubits: vec![3] });
        c.output_perm = Some(vec![0, 2, 1, 3]);
        assert_eq!(Circuit::parse_netlist(&c.to_netlist()).unwrap(), c);
        assert_eq!(Circuit::from_json(&c.to_json()).unwrap(), c);
        assert!(c.to_json().contains("\"g\": \"cx\""));
        assert!(c.to_qasm().contains("cx q[0],q[3];"));
        assert_eq!(c.to_diagram().lines().count(), 4);
    }

    #[test]
    fn invalid_gates_rejected() {
        assert!(Circuit::parse_netlist("CX 1 1").is_err());
        assert!(Circuit::parse_netlist("FOO 1").is_err());
        assert!(Circuit::parse_netlist("# width 2\nH 5").is_err());
    }
}
