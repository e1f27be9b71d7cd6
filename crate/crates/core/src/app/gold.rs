//! Generator for the odd-`m` partitions with uniformity number `n - 2m + 1`.
//!
//! Coordinates are the nonzero elements `β` of `GF(2^m)` (position `β - 1`
//! in the integer encoding). Component `a` is the coset `H_a + e_a` of the
//! Hamming code with columns `β ↦ (β + a)^3 + a^3`, and `H_0` has columns
//! `β^3`. Any two of these column maps satisfy exactly one linear relation,
//! `Tr((s_a + s_b) / (a + b)^3) = 0`, so every pair of codes meets in
//! dimension `n - 2m + 1`; the cosets are disjoint because
//! `Tr(1 + t + t^2) = 1` for odd `m`. The output is still only trusted after
//! the certifier has checked it.

use std::sync::Arc;

use crate::codes::{hamming_code, Coset};
use crate::error::{Error, Result};
use crate::gf2::BitVector;
use crate::partition::CodePartition;

// irreducible polynomials for the supported odd degrees
const MODULI: [(usize, u64); 5] = [(3, 0b1011), (5, 0b10_0101), (7, 0x83), (9, 0x211), (11, 0x805)];

fn mul(a: u64, b: u64, m: usize, modulus: u64) -> u64 {
    let mut acc = 0;
    let mut a = a;
    let mut b = b;
    while b != 0 {
        if b & 1 == 1 {
            acc ^= a;
        }
        b >>= 1;
        a <<= 1;
        if (a >> m) & 1 == 1 {
            a ^= modulus;
        }
    }
    acc
}

fn cube(x: u64, m: usize, modulus: u64) -> u64 {
    mul(mul(x, x, m, modulus), x, m, modulus)
}

/// Partition of `F^{2^m - 1}` built from the Gold function `x^3`, for odd
/// `m` in `3..=11`.
pub fn gold_partition(m: usize) -> Result<CodePartition> {
    let modulus = MODULI
        .iter()
        .find(|(deg, _)| *deg == m)
        .map(|&(_, p)| p)
        .ok_or_else(|| Error::Unsupported(format!("Gold partitions are provided for odd m in 3..=11, got {m}")))?;
    let n = (1usize << m) - 1;
    let components = (0..=n as u64)
        .map(|a| {
            let shift = cube(a, m, modulus);
            let columns: Vec<u64> = (1..=n as u64).map(|b| cube(b ^ a, m, modulus) ^ shift).collect();
            let code = Arc::new(hamming_code(m, &columns)?);
            let leader = if a == 0 { BitVector::zeros(n) } else { BitVector::unit(n, a as usize - 1) };
            Coset::new(code, leader)
        })
        .collect::<Result<Vec<_>>>()?;
    CodePartition::from_cosets(components)
}
