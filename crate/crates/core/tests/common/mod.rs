//! Reference arithmetic written independently of the library, used as
//! oracles by the integration tests.
#![allow(dead_code)]

/// Binary polynomials as bit masks (bit i = coefficient of X^i).
pub mod bin {
    pub fn deg(a: u64) -> i32 {
        63 - a.leading_zeros() as i32
    }

    pub fn mul(a: u64, b: u64) -> u64 {
        let mut r = 0u64;
        for i in 0..64 {
            if b >> i & 1 == 1 {
                r ^= a << i;
            }
        }
        r
    }

    pub fn divmod(mut a: u64, m: u64) -> (u64, u64) {
        assert!(m != 0);
        let dm = deg(m);
        let mut q = 0;
        while a != 0 && deg(a) >= dm {
            let s = deg(a) - dm;
            q |= 1 << s;
            a ^= m << s;
        }
        (q, a)
    }

    pub fn xn1(n: usize) -> u64 {
        (1u64 << n) | 1
    }

    pub fn reverse(a: u64) -> u64 {
        let d = deg(a);
        (0..=d).fold(0, |acc, i| acc | ((a >> i & 1) << (d - i)))
    }

    pub fn from_coeffs(bits: &[u8]) -> u64 {
        bits.iter()
            .enumerate()
            .fold(0, |acc, (i, &b)| acc | (u64::from(b) << i))
    }
}

/// GF(8) with α³ = α + 1 through exp/log tables; elements as 3-bit ints
/// (bit i = coefficient of α^i).
pub mod gf8 {
    pub const EXP: [u8; 7] = [1, 2, 4, 3, 6, 7, 5];

    pub fn log(x: u8) -> usize {
        EXP.iter().position(|&e| e == x).expect("nonzero")
    }

    pub fn mul(a: u8, b: u8) -> u8 {
        if a == 0 || b == 0 {
            0
        } else {
            EXP[(log(a) + log(b)) % 7]
        }
    }

    pub fn alpha_pow(e: usize) -> u8 {
        EXP[e % 7]
    }

    pub fn poly_mul(a: &[u8], b: &[u8]) -> Vec<u8> {
        let mut r = vec![0u8; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                r[i + j] ^= mul(x, y);
            }
        }
        r
    }

    pub fn poly_add(a: &[u8], b: &[u8]) -> Vec<u8> {
        let mut r = vec![0u8; a.len().max(b.len())];
        for (i, &x) in a.iter().enumerate() {
            r[i] ^= x;
        }
        for (i, &x) in b.iter().enumerate() {
            r[i] ^= x;
        }
        r
    }

    /// Coordinates of `x` with respect to `basis`, by trying all 8 combinations.
    pub fn coords(x: u8, basis: &[u8; 3]) -> [bool; 3] {
        for c in 0..8u8 {
            let v = (0..3).fold(
                0u8,
                |acc, j| if c >> j & 1 == 1 { acc ^ basis[j] } else { acc },
            );
            if v == x {
                return [c & 1 == 1, c & 2 == 2, c & 4 == 4];
            }
        }
        panic!("not a basis");
    }

    /// Symbol i, bit j at index 3i + j.
    pub fn expand(word: &[u8], n: usize, basis: &[u8; 3]) -> Vec<bool> {
        let mut out = vec![false; 3 * n];
        for (i, &x) in word.iter().enumerate().take(n) {
            let c = coords(x, basis);
            out[3 * i..3 * i + 3].copy_from_slice(&c);
        }
        out
    }
}
