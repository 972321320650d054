//! Arithmetic in GF(2^k) = GF(2)[X]/(f(X)).
//!
//! Elements are stored as coefficient bits with respect to the polynomial
//! basis `1, α, …, α^{k-1}` where `α` is the class of `X`. Other bases are
//! views: a [`Basis`] converts between polynomial-basis bits and
//! coordinates, and [`mult_matrix`] expresses multiplication by a fixed
//! element in those coordinates.

use std::fmt;

use crate::error::{Error, Result};
use crate::gf2::{BitMatrix, BitVec};

/// Largest extension degree accepted by [`FieldCtx::new`].
pub const MAX_DEGREE: usize = 16;
/// Largest degree used internally for splitting fields.
pub const MAX_SPLITTING_DEGREE: usize = 24;

/// Field element as polynomial-basis bits; bit `i` is the coefficient of `α^i`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct FieldElement(pub u32);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    pub fn bits(self) -> u32 {
        self.0
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:#b}", self.0)
    }
}

/// GF(2^k) with a fixed irreducible modulus.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct FieldCtx {
    k: usize,
    modulus: u32,
}

impl FieldCtx {
    /// Builds GF(2^k) from a modulus given as bits (bit `i` = coefficient of `X^i`).
    pub fn new(k: usize, modulus: u32) -> Result<Self> {
        if k == 0 || k > MAX_DEGREE {
            return Err(Error::UnsupportedDegree(k));
        }
        Self::new_unchecked_degree(k, modulus)
    }

    /// Same as [`FieldCtx::new`] with the modulus as a coefficient list, lowest degree first.
    pub fn from_coeffs(k: usize, coeffs: &[u8]) -> Result<Self> {
        if coeffs.len() > 32 || coeffs.iter().any(|&c| c > 1) {
            return Err(Error::Parse(format!("invalid binary modulus {coeffs:?}")));
        }
        let bits = coeffs
            .iter()
            .enumerate()
            .fold(0u32, |acc, (i, &c)| acc | (u32::from(c) << i));
        Self::new(k, bits)
    }

    pub(crate) fn new_unchecked_degree(k: usize, modulus: u32) -> Result<Self> {
        if k == 0 || k > MAX_SPLITTING_DEGREE {
            return Err(Error::UnsupportedDegree(k));
        }
        let deg = bin_degree(u64::from(modulus));
        if deg != k as isize {
            return Err(Error::DegreeMismatch {
                expected: k,
                found: deg,
            });
        }
        if !bin_is_irreducible(u64::from(modulus)) {
            return Err(Error::ReducibleModulus(bin_to_string(u64::from(modulus))));
        }
        Ok(FieldCtx { k, modulus })
    }

    /// GF(2) itself, modulus `X + 1`.
    pub fn gf2() -> Self {
        FieldCtx {
            k: 1,
            modulus: 0b11,
        }
    }

    /// GF(8) with `α³ + α + 1 = 0`.
    pub fn gf8() -> Self {
        FieldCtx {
            k: 3,
            modulus: 0b1011,
        }
    }

    /// First irreducible polynomial of degree `k` in integer order.
    pub(crate) fn first_irreducible(k: usize) -> Result<Self> {
        if k == 0 || k > MAX_SPLITTING_DEGREE {
            return Err(Error::UnsupportedDegree(k));
        }
        let lo = 1u64 << k;
        (lo..lo << 1)
            .find(|&f| f & 1 == 1 && bin_is_irreducible(f))
            .map(|f| FieldCtx {
                k,
                modulus: f as u32,
            })
            .ok_or(Error::UnsupportedDegree(k))
    }

    pub fn degree(&self) -> usize {
        self.k
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn order(&self) -> u64 {
        1u64 << self.k
    }

    pub fn is_binary(&self) -> bool {
        self.k == 1
    }

    pub fn contains(&self, x: FieldElement) -> bool {
        u64::from(x.0) < self.order()
    }

    /// All elements in integer order, zero first.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        (0..self.order() as u32).map(FieldElement)
    }

    /// The class of `X`.
    pub fn alpha(&self) -> FieldElement {
        if self.k == 1 {
            FieldElement::ONE
        } else {
            FieldElement(2)
        }
    }

    #[inline]
    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        FieldElement(a.0 ^ b.0)
    }

    /// Negation is the identity in characteristic two.
    #[inline]
    pub fn neg(&self, a: FieldElement) -> FieldElement {
        a
    }

    #[inline]
    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        let p = clmul(u64::from(a.0), u64::from(b.0));
        FieldElement(bin_rem(p, u64::from(self.modulus)) as u32)
    }

    pub fn pow(&self, a: FieldElement, mut e: u64) -> FieldElement {
        let mut base = a;
        let mut acc = FieldElement::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// `α^e` for the class `α` of `X`.
    pub fn alpha_pow(&self, e: u64) -> FieldElement {
        self.pow(self.alpha(), e)
    }

    pub fn inv(&self, a: FieldElement) -> Option<FieldElement> {
        if a.is_zero() {
            None
        } else {
            Some(self.pow(a, self.order() - 2))
        }
    }

    /// Multiplicative order of a nonzero element.
    pub fn element_order(&self, a: FieldElement) -> u64 {
        assert!(!a.is_zero(), "zero has no multiplicative order");
        let n = self.order() - 1;
        let mut ord = n;
        for p in prime_factors(n) {
            while ord.is_multiple_of(p) && self.pow(a, ord / p) == FieldElement::ONE {
                ord /= p;
            }
        }
        ord
    }

    pub fn primitive_element(&self) -> FieldElement {
        self.elements()
            .skip(1)
            .find(|&a| self.element_order(a) == self.order() - 1)
            .expect("every finite field has a primitive element")
    }

    /// Discrete log base `α`, when `α` is primitive.
    pub fn log_alpha(&self, a: FieldElement) -> Option<u64> {
        if a.is_zero() {
            return None;
        }
        let alpha = self.alpha();
        let mut x = FieldElement::ONE;
        for e in 0..self.order() - 1 {
            if x == a {
                return Some(e);
            }
            x = self.mul(x, alpha);
        }
        None
    }

    /// Human-readable form: `0`, `1`, `a^e`, or raw bits when `α` is not primitive.
    pub fn format(&self, a: FieldElement) -> String {
        match a.0 {
            0 => "0".into(),
            1 => "1".into(),
            _ => match self.log_alpha(a) {
                Some(1) => "a".into(),
                Some(e) => format!("a^{e}"),
                None => format!("{}", a.0),
            },
        }
    }

    /// Parses `0`, `1`, an integer bit pattern, `a`, or `a^e`.
    pub fn parse_element(&self, s: &str) -> Result<FieldElement> {
        let s = s.trim();
        let bad = || Error::Parse(format!("invalid field element '{s}'"));
        let x = if s == "a" || s == "α" {
            self.alpha()
        } else if let Some(e) = s.strip_prefix("a^").or_else(|| s.strip_prefix("α^")) {
            self.alpha_pow(e.parse::<u64>().map_err(|_| bad())?)
        } else {
            FieldElement(s.parse::<u32>().map_err(|_| bad())?)
        };
        if self.contains(x) {
            Ok(x)
        } else {
            Err(bad())
        }
    }
}

/// `tr(x) = Σ_{i<k} x^{2^i}`, returned as a bit.
pub fn trace(ctx: &FieldCtx, x: FieldElement) -> bool {
    let mut acc = FieldElement::ZERO;
    let mut y = x;
    for _ in 0..ctx.degree() {
        acc = ctx.add(acc, y);
        y = ctx.mul(y, y);
    }
    debug_assert!(acc.0 <= 1, "trace must lie in GF(2)");
    acc.0 == 1
}

/// An ordered F2-basis of GF(2^k), with the change of coordinates cached.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Basis {
    elems: Vec<FieldElement>,
    // Maps polynomial-basis bits to coordinates.
    to_coords: BitMatrix,
}

impl Basis {
    pub fn new(ctx: &FieldCtx, elems: Vec<FieldElement>) -> Result<Self> {
        let k = ctx.degree();
        if elems.len() != k {
            return Err(Error::BasisSize {
                expected: k,
                found: elems.len(),
            });
        }
        // Column j holds the bits of b_j.
        let mut m = BitMatrix::zeros(k, k);
        for (j, b) in elems.iter().enumerate() {
            if !ctx.contains(*b) {
                return Err(Error::DependentBasis);
            }
            for i in 0..k {
                m.set(i, j, (b.0 >> i) & 1 == 1);
            }
        }
        let to_coords = m.inverse().ok_or(Error::DependentBasis)?;
        Ok(Basis { elems, to_coords })
    }

    /// `(1, α, …, α^{k-1})`.
    pub fn polynomial(ctx: &FieldCtx) -> Self {
        let elems = (0..ctx.degree() as u64).map(|i| ctx.alpha_pow(i)).collect();
        Basis::new(ctx, elems).expect("polynomial basis is a basis")
    }

    /// Basis given as exponents of `α`.
    pub fn from_alpha_powers(ctx: &FieldCtx, exps: &[u64]) -> Result<Self> {
        Basis::new(ctx, exps.iter().map(|&e| ctx.alpha_pow(e)).collect())
    }

    pub fn elements(&self) -> &[FieldElement] {
        &self.elems
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    /// Coordinates of `x`; bit `j` is the coefficient of `b_j`.
    pub fn coords(&self, x: FieldElement) -> u32 {
        let k = self.elems.len();
        let v = BitVec::from_u64(k, u64::from(x.0));
        self.to_coords.mul_vec(&v).to_u64() as u32
    }

    /// Inverse of [`Basis::coords`].
    pub fn from_coords(&self, c: u32) -> FieldElement {
        self.elems
            .iter()
            .enumerate()
            .filter(|(j, _)| (c >> j) & 1 == 1)
            .fold(FieldElement::ZERO, |acc, (_, b)| FieldElement(acc.0 ^ b.0))
    }
}

/// Gram matrix `[tr(b_i b_j)]` of the trace form.
pub fn gram_matrix(ctx: &FieldCtx, b: &Basis) -> BitMatrix {
    let k = b.len();
    let mut g = BitMatrix::zeros(k, k);
    for i in 0..k {
        for j in 0..k {
            g.set(i, j, trace(ctx, ctx.mul(b.elems[i], b.elems[j])));
        }
    }
    g
}

/// The unique basis `B⊥` with `tr(b_i b'_j) = δ_ij`.
pub fn dual_basis(ctx: &FieldCtx, b: &Basis) -> Basis {
    let ginv = gram_matrix(ctx, b)
        .inverse()
        .expect("trace form is nondegenerate");
    let k = b.len();
    let elems = (0..k)
        .map(|j| {
            (0..k)
                .filter(|&l| ginv.get(l, j))
                .fold(FieldElement::ZERO, |acc, l| ctx.add(acc, b.elems[l]))
        })
        .collect();
    Basis::new(ctx, elems).expect("dual of a basis is a basis")
}

pub fn is_self_dual(ctx: &FieldCtx, b: &Basis) -> bool {
    gram_matrix(ctx, b) == BitMatrix::identity(b.len())
}

/// Deterministic search for a self-dual basis: normal bases `{β^{2^i}}` for
/// `β` in integer order first, then the lexicographically first k-subset.
pub fn find_self_dual_basis(ctx: &FieldCtx) -> Result<Basis> {
    let k = ctx.degree();
    if k > 8 {
        return Err(Error::TooLarge { dim: k, limit: 8 });
    }
    for beta in ctx.elements().skip(1) {
        let mut elems = Vec::with_capacity(k);
        let mut x = beta;
        for _ in 0..k {
            elems.push(x);
            x = ctx.mul(x, x);
        }
        if let Ok(b) = Basis::new(ctx, elems) {
            if is_self_dual(ctx, &b) {
                return Ok(b);
            }
        }
    }
    // Orthonormal elements have trace one (tr(b²) = tr(b)).
    let candidates: Vec<FieldElement> = ctx.elements().filter(|&x| trace(ctx, x)).collect();
    let mut chosen = Vec::with_capacity(k);
    if search_orthonormal(ctx, &candidates, 0, &mut chosen) {
        return Basis::new(ctx, chosen);
    }
    Err(Error::SelfDualNotFound(k))
}

fn search_orthonormal(
    ctx: &FieldCtx,
    candidates: &[FieldElement],
    start: usize,
    chosen: &mut Vec<FieldElement>,
) -> bool {
    if chosen.len() == ctx.degree() {
        return true;
    }
    for (idx, &c) in candidates.iter().enumerate().skip(start) {
        if chosen.iter().any(|&b| trace(ctx, ctx.mul(b, c))) {
            continue;
        }
        // Orthonormal vectors are automatically independent.
        chosen.push(c);
        if search_orthonormal(ctx, candidates, idx + 1, chosen) {
            return true;
        }
        chosen.pop();
    }
    false
}

/// `M_B(a)`: column `j` holds the coordinates of `a·b_j`, so that
/// `coords(a·x) = M · coords(x)`.
pub fn mult_matrix(ctx: &FieldCtx, b: &Basis, a: FieldElement) -> BitMatrix {
    let k = b.len();
    let mut m = BitMatrix::zeros(k, k);
    for (j, &bj) in b.elems.iter().enumerate() {
        let c = b.coords(ctx.mul(a, bj));
        for i in 0..k {
            m.set(i, j, (c >> i) & 1 == 1);
        }
    }
    m
}

// Binary polynomials packed into u64 (bit i = coefficient of X^i).

pub(crate) fn bin_degree(a: u64) -> isize {
    63 - a.leading_zeros() as isize
}

pub(crate) fn clmul(a: u64, b: u64) -> u64 {
    let mut acc = 0u64;
    let mut a = a;
    let mut b = b;
    while b != 0 {
        if b & 1 == 1 {
            acc ^= a;
        }
        a <<= 1;
        b >>= 1;
    }
    acc
}

pub(crate) fn bin_rem(mut a: u64, m: u64) -> u64 {
    let dm = bin_degree(m);
    while bin_degree(a) >= dm {
        a ^= m << (bin_degree(a) - dm);
    }
    a
}

/// Trial division by every binary polynomial of degree `1..=deg/2`.
pub(crate) fn bin_is_irreducible(f: u64) -> bool {
    let d = bin_degree(f);
    if d < 1 {
        return false;
    }
    (2u64..1u64 << (d / 2 + 1)).all(|q| bin_rem(f, q) != 0)
}

pub(crate) fn bin_to_string(f: u64) -> String {
    let d = bin_degree(f).max(0) as usize;
    (0..=d)
        .map(|i| ((f >> i) & 1).to_string())
        .collect::<Vec<_>>()
        .join(",")
}

pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}
