//! Partitions of `F^n` into `n + 1` cosets of Hamming codes, and their
//! certification.

mod extended;
mod search;

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;

use crate::codes::{coset_intersection_size_log, intersection_dim, Coset, LinearCode};
use crate::error::{Error, Result};
use crate::gf2::BitVector;

pub use extended::ExtendedPartition;
pub use search::{distinct_hamming_codes_7, phelps_search};

/// Largest length for which exhaustive membership checking is offered.
pub const EXHAUSTIVE_MAX_LENGTH: usize = 15;

/// The family `{H_0, H_1 + e_1, ..., H_n + e_n}`. Component `k >= 1` has
/// leader `e_k` (bit position `k - 1`); component 0 has the zero leader.
#[derive(Clone, Debug)]
pub struct CodePartition {
    length: usize,
    components: Vec<Coset>,
}

impl PartialEq for CodePartition {
    fn eq(&self, other: &Self) -> bool {
        self.length == other.length && self.components == other.components
    }
}

impl Eq for CodePartition {}

/// Component index carried by a leader of weight at most one.
pub fn leader_index(leader: &BitVector) -> Option<usize> {
    match leader.weight() {
        0 => Some(0),
        1 => leader.ones_positions().next().map(|p| p + 1),
        _ => None,
    }
}

/// Number of unordered pairs among `count` items.
pub fn pair_count(count: usize) -> usize {
    count * count.saturating_sub(1) / 2
}

/// Position of the unordered pair `{i, j}` (`i < j`) in lexicographic order.
pub fn pair_index(i: usize, j: usize, count: usize) -> usize {
    debug_assert!(i < j && j < count);
    i * (2 * count - i - 1) / 2 + (j - i - 1)
}

impl CodePartition {
    /// Collects cosets of Hamming codes into a partition, indexing each by the
    /// position of its weight ≤ 1 leader.
    pub fn from_cosets(cosets: Vec<Coset>) -> Result<Self> {
        let count = cosets.len();
        let n = cosets
            .first()
            .map(Coset::length)
            .ok_or_else(|| Error::InvalidPartition("no components".into()))?;
        if count != n + 1 || !(n + 1).is_power_of_two() || n < 3 {
            return Err(Error::InvalidPartition(format!(
                "length {n} needs {} components of a length 2^m - 1 space, got {count}",
                n + 1
            )));
        }
        let mut slots: Vec<Option<Coset>> = vec![None; count];
        for (pos, c) in cosets.into_iter().enumerate() {
            if c.length() != n {
                return Err(Error::InvalidPartition(format!(
                    "component {pos} has length {}, expected {n}",
                    c.length()
                )));
            }
            if !c.code().is_hamming() {
                return Err(Error::InvalidPartition(format!(
                    "component {pos} is not a coset of a Hamming code"
                )));
            }
            let idx = leader_index(c.leader()).expect("Hamming coset leaders have weight <= 1");
            if slots[idx].is_some() {
                return Err(Error::InvalidPartition(format!(
                    "two components share leader index {idx}"
                )));
            }
            slots[idx] = Some(c);
        }
        Ok(Self {
            length: n,
            components: slots.into_iter().map(|c| c.expect("all slots filled")).collect(),
        })
    }

    /// Wraps components in the given order without checking the leader map.
    /// Used to certify untrusted or deliberately broken families.
    pub fn new_unchecked(components: Vec<Coset>) -> Self {
        let length = components.first().map_or(0, Coset::length);
        Self { length, components }
    }

    pub fn length(&self) -> usize {
        self.length
    }

    /// `m` with `n = 2^m - 1`.
    pub fn redundancy(&self) -> usize {
        (self.length + 1).trailing_zeros() as usize
    }

    pub fn components(&self) -> &[Coset] {
        &self.components
    }

    pub fn component(&self, index: usize) -> &Coset {
        &self.components[index]
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    /// Whether the leader map is the identity on `{0, ..., n}`.
    pub fn leaders_canonical(&self) -> bool {
        self.components
            .iter()
            .enumerate()
            .all(|(i, c)| leader_index(c.leader()) == Some(i))
    }

    /// Whether all components are cosets of one code.
    pub fn is_trivial(&self) -> bool {
        let first = self.components[0].code_arc();
        self.components
            .iter()
            .all(|c| Arc::ptr_eq(c.code_arc(), first) || c.code() == first.as_ref())
    }

    /// Parity extension of every component.
    pub fn extend(&self) -> ExtendedPartition {
        ExtendedPartition::from_partition(self)
    }
}

/// Partition of `F^n` into the cosets of a single Hamming code.
pub fn trivial_partition(code: Arc<LinearCode>) -> Result<CodePartition> {
    if !code.is_hamming() {
        return Err(Error::NotHamming(format!(
            "length {} code with redundancy {}",
            code.length(),
            code.redundancy()
        )));
    }
    let n = code.length();
    let cosets = std::iter::once(BitVector::zeros(n))
        .chain((0..n).map(|k| BitVector::unit(n, k)))
        .map(|rep| Coset::new(code.clone(), rep))
        .collect::<Result<Vec<_>>>()?;
    CodePartition::from_cosets(cosets)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VerifyMode {
    /// Pairwise disjointness by linear algebra.
    Algebraic,
    /// Algebraic check plus membership of every vector of `F^n` (n ≤ 15).
    Exhaustive,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    /// Components `first < second` intersect in `2^log_size` vectors.
    Overlap {
        first: usize,
        second: usize,
        log_size: usize,
    },
    Uncovered {
        vector: BitVector,
    },
    MultiplyCovered {
        vector: BitVector,
        first: usize,
        second: usize,
    },
    /// Counting identity or component shape fails.
    Shape(String),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Overlap {
                first,
                second,
                log_size,
            } => write!(f, "components {first} and {second} overlap in 2^{log_size} vectors"),
            Violation::Uncovered { vector } => write!(f, "vector {vector} lies in no component"),
            Violation::MultiplyCovered {
                vector,
                first,
                second,
            } => write!(f, "vector {vector} lies in components {first} and {second}"),
            Violation::Shape(msg) => f.write_str(msg),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Valid,
    Invalid(Violation),
}

impl Verdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, Verdict::Valid)
    }
}

#[derive(Clone, Debug)]
pub struct PartitionCertificate {
    pub length: usize,
    pub pairs_checked: usize,
    pub algebraic: Verdict,
    pub exhaustive: Option<Verdict>,
}

impl PartitionCertificate {
    /// Both modes (when run) agree on validity.
    pub fn modes_agree(&self) -> bool {
        self.exhaustive
            .as_ref()
            .is_none_or(|e| e.is_valid() == self.algebraic.is_valid())
    }

    pub fn is_valid(&self) -> bool {
        self.algebraic.is_valid() && self.modes_agree()
    }

    pub fn violation(&self) -> Option<&Violation> {
        match (&self.algebraic, &self.exhaustive) {
            (Verdict::Invalid(v), _) | (_, Some(Verdict::Invalid(v))) => Some(v),
            _ => None,
        }
    }
}

fn shape_violation(p: &CodePartition) -> Option<Violation> {
    let n = p.length;
    if p.components.len() != n + 1 || !(n + 1).is_power_of_two() {
        return Some(Violation::Shape(format!(
            "{} components for length {n}",
            p.components.len()
        )));
    }
    let m = p.redundancy();
    p.components.iter().enumerate().find_map(|(i, c)| {
        (c.length() != n || c.code().dimension() != n - m)
            .then(|| Violation::Shape(format!("component {i} has the wrong length or dimension")))
    })
}

fn algebraic_verdict(p: &CodePartition) -> Verdict {
    if let Some(v) = shape_violation(p) {
        return Verdict::Invalid(v);
    }
    let count = p.components.len();
    let first_bad = (0..count).into_par_iter().find_map_first(|i| {
        (i + 1..count).find_map(|j| {
            match coset_intersection_size_log(&p.components[i], &p.components[j]) {
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
    match first_bad {
        None => Verdict::Valid,
        Some(v) => Verdict::Invalid(v),
    }
}

fn exhaustive_verdict(p: &CodePartition) -> Verdict {
    let n = p.length;
    // parity-check rows and leaders packed into single words
    let comps: Vec<(Vec<u64>, u64)> = p
        .components
        .iter()
        .map(|c| {
            let h = c.code().parity_check();
            ((0..h.rows()).map(|r| h.row(r).to_u64()).collect(), c.leader().to_u64())
        })
        .collect();
    let member = |(rows, leader): &(Vec<u64>, u64), x: u64| {
        rows.iter().all(|r| (r & (x ^ leader)).count_ones().is_multiple_of(2))
    };
    let bad = (0..1u64 << n).into_par_iter().find_map_first(|x| {
        let mut hits = comps
            .iter()
            .enumerate()
            .filter(|(_, c)| member(c, x))
            .map(|(i, _)| i);
        match (hits.next(), hits.next()) {
            (None, _) => Some(Violation::Uncovered {
                vector: BitVector::from_u64(n, x),
            }),
            (Some(first), Some(second)) => Some(Violation::MultiplyCovered {
                vector: BitVector::from_u64(n, x),
                first,
                second,
            }),
            _ => None,
        }
    });
    match bad {
        None => Verdict::Valid,
        Some(v) => Verdict::Invalid(v),
    }
}

/// Certifies that the components partition `F^n`. Pairwise disjointness of
/// `n + 1` cosets of dimension `n - m` implies covering, by counting.
pub fn verify_partition(p: &CodePartition, mode: VerifyMode) -> Result<PartitionCertificate> {
    let exhaustive = match mode {
        VerifyMode::Algebraic => None,
        VerifyMode::Exhaustive if p.length > EXHAUSTIVE_MAX_LENGTH => {
            return Err(Error::Unsupported(format!(
                "exhaustive verification needs n <= {EXHAUSTIVE_MAX_LENGTH}, got {}",
                p.length
            )))
        }
        VerifyMode::Exhaustive => Some(exhaustive_verdict(p)),
    };
    Ok(PartitionCertificate {
        length: p.length,
        pairs_checked: pair_count(p.components.len()),
        algebraic: algebraic_verdict(p),
        exhaustive,
    })
}

/// Pairwise code-intersection dimensions of a partition.
#[derive(Clone, Debug)]
pub struct UniformityReport {
    components: usize,
    /// Indexed by [`pair_index`].
    pairwise_dims: Vec<usize>,
    /// Whether components `i < j` (same indexing) share their code.
    same_code: Vec<bool>,
    pub is_uniform: bool,
    pub uniformity_number: Option<usize>,
}

impl UniformityReport {
    pub fn dim(&self, i: usize, j: usize) -> usize {
        let (a, b) = if i < j { (i, j) } else { (j, i) };
        self.pairwise_dims[pair_index(a, b, self.components)]
    }

    pub fn pairwise_dims(&self) -> &[usize] {
        &self.pairwise_dims
    }

    pub fn pairs(&self) -> impl Iterator<Item = ((usize, usize), usize)> + '_ {
        let n = self.components;
        (0..n)
            .flat_map(move |i| (i + 1..n).map(move |j| (i, j)))
            .zip(self.pairwise_dims.iter().copied())
    }

    /// Multiset of pairwise dimensions, as value → multiplicity.
    pub fn signature(&self) -> Signature {
        let mut counts = BTreeMap::new();
        for &d in &self.pairwise_dims {
            *counts.entry(d).or_insert(0) += 1;
        }
        Signature(counts)
    }

    /// Values taken over pairs of components whose codes differ. A partition
    /// can be constant on these pairs while failing to be uniform.
    pub fn distinct_code_values(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self
            .pairwise_dims
            .iter()
            .zip(&self.same_code)
            .filter(|(_, &same)| !same)
            .map(|(&d, _)| d)
            .collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    pub fn distinct_code_pairs(&self) -> usize {
        self.same_code.iter().filter(|&&s| !s).count()
    }
}

/// Multiset `{dim(H_i ∩ H_j) : i < j}`, invariant under isometries.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Signature(pub BTreeMap<usize, usize>);

impl Signature {
    pub fn values(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.keys().copied()
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|(v, c)| format!("{v}x{c}")).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// Groups equal codes so pairwise work runs once per pair of distinct codes.
fn code_classes(components: &[Coset]) -> (Vec<usize>, Vec<&LinearCode>) {
    let mut ids: HashMap<&LinearCode, usize> = HashMap::new();
    let mut reps = Vec::new();
    let classes = components
        .iter()
        .map(|c| {
            *ids.entry(c.code()).or_insert_with(|| {
                reps.push(c.code());
                reps.len() - 1
            })
        })
        .collect();
    (classes, reps)
}

/// Pairwise intersection dimensions of the component codes (linear parts).
pub fn uniformity(p: &CodePartition) -> Result<UniformityReport> {
    let count = p.components.len();
    let (classes, reps) = code_classes(&p.components);
    let k = reps.len();
    let class_dims: Vec<usize> = (0..k)
        .into_par_iter()
        .flat_map_iter(|a| (a + 1..k).map(move |b| (a, b)))
        .map(|(a, b)| intersection_dim(reps[a], reps[b]))
        .collect::<Result<_>>()?;
    let mut pairwise_dims = Vec::with_capacity(pair_count(count));
    let mut same_code = Vec::with_capacity(pair_count(count));
    for i in 0..count {
        for j in i + 1..count {
            let (a, b) = (classes[i], classes[j]);
            let d = match a.cmp(&b) {
                std::cmp::Ordering::Equal => reps[a].dimension(),
                std::cmp::Ordering::Less => class_dims[pair_index(a, b, k)],
                std::cmp::Ordering::Greater => class_dims[pair_index(b, a, k)],
            };
            pairwise_dims.push(d);
            same_code.push(a == b);
        }
    }
    let first = pairwise_dims.first().copied();
    let is_uniform = first.is_some() && pairwise_dims.iter().all(|&d| Some(d) == first);
    Ok(UniformityReport {
        components: count,
        pairwise_dims,
        same_code,
        is_uniform,
        uniformity_number: if is_uniform { first } else { None },
    })
}

pub fn invariant_signature(p: &CodePartition) -> Result<Signature> {
    Ok(uniformity(p)?.signature())
}
