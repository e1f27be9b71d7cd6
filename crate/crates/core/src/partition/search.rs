//! Backtracking search for uniform partitions of `F^7`.

use std::collections::HashSet;
use std::sync::Arc;

use itertools::Itertools;
use rayon::prelude::*;

use super::CodePartition;
use crate::codes::{coset_intersection_size_log, hamming_code, intersection_dim, Coset, LinearCode};
use crate::error::{Error, Result};
use crate::gf2::BitVector;

const N: usize = 7;
const SLOTS: usize = N + 1;

/// The 30 Hamming codes of length 7, in a fixed order (by canonical form).
pub fn distinct_hamming_codes_7() -> Vec<Arc<LinearCode>> {
    let mut seen = HashSet::new();
    let mut codes: Vec<LinearCode> = (1..=N as u64)
        .permutations(N)
        .map(|order| hamming_code(3, &order).expect("permutation of 1..=7"))
        .filter(|c| seen.insert(c.clone()))
        .collect();
    codes.sort_by_cached_key(|c| c.canonical().row_vectors());
    codes.into_iter().map(Arc::new).collect()
}

struct Tables {
    codes: Vec<Arc<LinearCode>>,
    // cosets[c][k]: code c shifted by the slot-k leader
    cosets: Vec<Vec<Coset>>,
    dims: Vec<Vec<usize>>,
    // disjoint[(c * SLOTS + k) * stride + (d * SLOTS + l)]
    disjoint: Vec<bool>,
}

impl Tables {
    fn build() -> Result<Self> {
        let codes = distinct_hamming_codes_7();
        let cosets = codes
            .iter()
            .map(|c| {
                (0..SLOTS)
                    .map(|k| {
                        let rep = if k == 0 { BitVector::zeros(N) } else { BitVector::unit(N, k - 1) };
                        Coset::new(c.clone(), rep)
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let dims = codes
            .iter()
            .map(|a| codes.iter().map(|b| intersection_dim(a, b)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        let flat: Vec<&Coset> = cosets.iter().flatten().collect();
        let disjoint = flat
            .iter()
            .flat_map(|a| flat.iter().map(move |b| (*a, *b)))
            .map(|(a, b)| coset_intersection_size_log(a, b).map(|r| r.is_none()))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            codes,
            cosets,
            dims,
            disjoint,
        })
    }

    fn disjoint(&self, c: usize, k: usize, d: usize, l: usize) -> bool {
        let stride = self.codes.len() * SLOTS;
        self.disjoint[(c * SLOTS + k) * stride + d * SLOTS + l]
    }

    fn extend(&self, chosen: &mut Vec<usize>, target_dim: usize, limit: usize, out: &mut Vec<Vec<usize>>) {
        if out.len() >= limit {
            return;
        }
        let slot = chosen.len();
        if slot == SLOTS {
            out.push(chosen.clone());
            return;
        }
        for c in 0..self.codes.len() {
            let fits = chosen
                .iter()
                .enumerate()
                .all(|(j, &d)| self.dims[c][d] == target_dim && self.disjoint(c, slot, d, j));
            if fits {
                chosen.push(c);
                self.extend(chosen, target_dim, limit, out);
                chosen.pop();
                if out.len() >= limit {
                    return;
                }
            }
        }
    }
}

/// Partitions `{H_0, H_1 + e_1, ..., H_7 + e_7}` of `F^7` whose component
/// codes pairwise meet in dimension `target_dim`, at most `limit` of them, in
/// a deterministic order.
pub fn phelps_search(target_dim: usize, limit: usize) -> Result<Vec<CodePartition>> {
    if !(0..=4).contains(&target_dim) {
        return Err(Error::Unsupported(format!(
            "intersection dimension {target_dim} is impossible for length 7 Hamming codes"
        )));
    }
    let tables = Tables::build()?;
    // branches by the code in slot 0, merged in order
    let found: Vec<Vec<Vec<usize>>> = (0..tables.codes.len())
        .into_par_iter()
        .map(|first| {
            let mut out = Vec::new();
            tables.extend(&mut vec![first], target_dim, limit, &mut out);
            out
        })
        .collect();
    found
        .into_iter()
        .flatten()
        .take(limit)
        .map(|choice| {
            let cosets = choice
                .iter()
                .enumerate()
                .map(|(k, &c)| tables.cosets[c][k].clone())
                .collect();
            CodePartition::from_cosets(cosets)
        })
        .collect()
}
