use std::sync::Arc;

use rayon::prelude::*;

use super::{pair_count, CodePartition, Signature, Verdict, Violation};
use crate::codes::{coset_intersection_size_log, intersection_dim, Coset};
use crate::error::{Error, Result};
use crate::gf2::BitVector;

/// Partition of the even-weight vectors of `F^{n+1}` into `n + 1` cosets of
/// extended Hamming codes, obtained by appending a parity coordinate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtendedPartition {
    length: usize,
    components: Vec<Coset>,
}

fn with_parity(v: &BitVector) -> BitVector {
    let mut bit = BitVector::zeros(1);
    bit.set(0, v.weight() % 2 == 1);
    v.concat(&bit)
}

impl ExtendedPartition {
    pub(crate) fn from_partition(p: &CodePartition) -> Self {
        let mut cache: Vec<(Arc<_>, Arc<_>)> = Vec::new();
        let components = p
            .components()
            .iter()
            .map(|c| {
                let code = match cache.iter().find(|(src, _)| Arc::ptr_eq(src, c.code_arc())) {
                    Some((_, ext)) => Arc::clone(ext),
                    None => {
                        let ext = Arc::new(c.code().extend());
                        cache.push((c.code_arc().clone(), ext.clone()));
                        ext
                    }
                };
                Coset::new(code, with_parity(c.leader())).expect("extended lengths agree")
            })
            .collect();
        Self {
            length: p.length() + 1,
            components,
        }
    }

    /// Components in index order; checks counts and shapes only.
    pub fn from_components(components: Vec<Coset>) -> Result<Self> {
        let length = components.first().map_or(0, Coset::length);
        if !length.is_power_of_two() || length < 4 || components.len() != length {
            return Err(Error::InvalidPartition(format!(
                "an extended partition of length {length} needs {length} components, got {}",
                components.len()
            )));
        }
        let m = length.trailing_zeros() as usize;
        for (i, c) in components.iter().enumerate() {
            if c.length() != length || c.code().dimension() != length - 1 - m {
                return Err(Error::InvalidPartition(format!(
                    "component {i} has the wrong length or dimension"
                )));
            }
        }
        Ok(Self { length, components })
    }

    pub fn length(&self) -> usize {
        self.length
    }

    pub fn components(&self) -> &[Coset] {
        &self.components
    }

    /// Every component lies in the even-weight subspace and components are
    /// pairwise disjoint; by counting they then cover it.
    pub fn verify(&self) -> Verdict {
        for (i, c) in self.components.iter().enumerate() {
            let g = c.code().generator();
            let odd_row = (0..g.rows()).any(|r| g.row(r).weight() % 2 == 1);
            if odd_row || c.leader().weight() % 2 == 1 {
                return Verdict::Invalid(Violation::Shape(format!(
                    "component {i} leaves the even-weight subspace"
                )));
            }
        }
        let count = self.components.len();
        let bad = (0..count).into_par_iter().find_map_first(|i| {
            (i + 1..count).find_map(|j| {
                match coset_intersection_size_log(&self.components[i], &self.components[j]) {
                    Ok(None) => None,
                    Ok(Some(log_size)) => Some(Violation::Overlap {
                        first: i,
                        second: j,
                        log_size,
                    }),
                    Err(e) => Some(Violation::Shape(e.to_string())),
                }
            })
        });
        bad.map_or(Verdict::Valid, Verdict::Invalid)
    }

    /// Intersection dimensions of the component codes, pairs in
    /// lexicographic order.
    pub fn pairwise_dims(&self) -> Result<Vec<usize>> {
        let count = self.components.len();
        let mut out = Vec::with_capacity(pair_count(count));
        for i in 0..count {
            for j in i + 1..count {
                out.push(intersection_dim(self.components[i].code(), self.components[j].code())?);
            }
        }
        Ok(out)
    }

    pub fn signature(&self) -> Result<Signature> {
        let mut counts = std::collections::BTreeMap::new();
        for d in self.pairwise_dims()? {
            *counts.entry(d).or_insert(0) += 1;
        }
        Ok(Signature(counts))
    }

    /// Deletes coordinate `position` (0-based) everywhere, giving a partition
    /// of `F^{n}` re-indexed by leader.
    pub fn puncture(&self, position: usize) -> Result<CodePartition> {
        let mut cache: Vec<(Arc<_>, Arc<_>)> = Vec::new();
        let cosets = self
            .components
            .iter()
            .map(|c| {
                let code = match cache.iter().find(|(src, _)| Arc::ptr_eq(src, c.code_arc())) {
                    Some((_, p)) => Arc::clone(p),
                    None => {
                        let p = Arc::new(c.code().puncture(position)?);
                        cache.push((c.code_arc().clone(), p.clone()));
                        p
                    }
                };
                Coset::new(code, c.leader().remove(position))
            })
            .collect::<Result<Vec<_>>>()?;
        CodePartition::from_cosets(cosets)
    }
}
