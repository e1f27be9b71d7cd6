//! Linear codes held by parity-check matrix, Hamming codes, and their cosets.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::gf2::{BitMatrix, BitVector};

/// Largest redundancy for which a code is recognised as a Hamming code.
const MAX_HAMMING_REDUNDANCY: usize = 24;

/// A binary linear code. Identity is the row space: two codes compare equal
/// exactly when their parity-check matrices span the same space.
pub struct LinearCode {
    length: usize,
    parity_check: BitMatrix,
    generator: OnceLock<BitMatrix>,
    canonical: OnceLock<(BitMatrix, Vec<usize>)>,
    hamming: OnceLock<Option<HammingShape>>,
}

/// Parity-check columns of a Hamming code and the inverse lookup.
#[derive(Clone, Debug)]
struct HammingShape {
    columns: Vec<u64>,
    // position_of[s] = coordinate whose column equals s; index 0 unused
    position_of: Vec<u32>,
}

impl Clone for LinearCode {
    fn clone(&self) -> Self {
        Self {
            length: self.length,
            parity_check: self.parity_check.clone(),
            generator: self.generator.clone(),
            canonical: self.canonical.clone(),
            hamming: self.hamming.clone(),
        }
    }
}

impl fmt::Debug for LinearCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("LinearCode")
            .field("length", &self.length)
            .field("dimension", &self.dimension())
            .field("parity_check", &self.parity_check)
            .finish()
    }
}

impl PartialEq for LinearCode {
    fn eq(&self, other: &Self) -> bool {
        self.length == other.length && self.canonical() == other.canonical()
    }
}

impl Eq for LinearCode {}

// Hashing reads the lazily filled canonical form, which never changes once
// set, so codes are safe as map keys despite the interior cells.
impl Hash for LinearCode {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.length.hash(state);
        self.canonical().hash(state);
    }
}

impl LinearCode {
    /// Code `{x : H·x = 0}`; `H` must have full row rank.
    pub fn from_parity_check(parity_check: BitMatrix) -> Result<Self> {
        let rank = parity_check.rank();
        if rank != parity_check.rows() {
            return Err(Error::RankDeficient {
                rows: parity_check.rows(),
                rank,
            });
        }
        Ok(Self::from_parity_check_unchecked(parity_check))
    }

    pub(crate) fn from_parity_check_unchecked(parity_check: BitMatrix) -> Self {
        Self {
            length: parity_check.cols(),
            parity_check,
            generator: OnceLock::new(),
            canonical: OnceLock::new(),
            hamming: OnceLock::new(),
        }
    }

    /// Row space of `generator`, whose rows must be independent.
    pub fn from_generator(generator: BitMatrix) -> Result<Self> {
        let rank = generator.rank();
        if rank != generator.rows() {
            return Err(Error::RankDeficient {
                rows: generator.rows(),
                rank,
            });
        }
        let code = Self::from_parity_check_unchecked(generator.kernel_basis());
        let _ = code.generator.set(generator);
        Ok(code)
    }

    pub fn length(&self) -> usize {
        self.length
    }

    pub fn redundancy(&self) -> usize {
        self.parity_check.rows()
    }

    pub fn dimension(&self) -> usize {
        self.length - self.parity_check.rows()
    }

    pub fn parity_check(&self) -> &BitMatrix {
        &self.parity_check
    }

    /// Generator matrix; computed from the parity check on first use.
    pub fn generator(&self) -> &BitMatrix {
        self.generator.get_or_init(|| self.parity_check.kernel_basis())
    }

    /// Reduced row echelon form of the parity check, the code's canonical key.
    pub fn canonical(&self) -> &BitMatrix {
        &self.canonical_form().0
    }

    fn canonical_form(&self) -> &(BitMatrix, Vec<usize>) {
        self.canonical.get_or_init(|| self.parity_check.rref())
    }

    pub fn syndrome(&self, x: &BitVector) -> BitVector {
        self.parity_check
            .mul_vec(x)
            .expect("syndrome of a vector of the wrong length")
    }

    pub fn contains(&self, x: &BitVector) -> bool {
        x.len() == self.length && self.syndrome(x).is_zero()
    }

    fn hamming_shape(&self) -> Option<&HammingShape> {
        self.hamming
            .get_or_init(|| {
                let r = self.redundancy();
                if r == 0 || r > MAX_HAMMING_REDUNDANCY || self.length != (1usize << r) - 1 {
                    return None;
                }
                let columns = self.parity_check.columns_u64();
                let mut position_of = vec![u32::MAX; 1usize << r];
                for (k, &c) in columns.iter().enumerate() {
                    if c == 0 || position_of[c as usize] != u32::MAX {
                        return None;
                    }
                    position_of[c as usize] = k as u32;
                }
                Some(HammingShape {
                    columns,
                    position_of,
                })
            })
            .as_ref()
    }

    /// Structural perfectness: length `2^r - 1` with `r` rows whose columns
    /// are exactly the distinct nonzero `r`-bit values.
    pub fn is_hamming(&self) -> bool {
        self.hamming_shape().is_some()
    }

    /// Parity-check columns as integers (bit `r` = row `r`), for Hamming codes.
    pub fn hamming_columns(&self) -> Option<&[u64]> {
        self.hamming_shape().map(|h| h.columns.as_slice())
    }

    /// The coordinate whose parity-check column equals `syndrome`.
    pub fn position_of_syndrome(&self, syndrome: u64) -> Option<usize> {
        let shape = self.hamming_shape()?;
        match shape.position_of.get(syndrome as usize) {
            Some(&p) if p != u32::MAX => Some(p as usize),
            _ => None,
        }
    }

    /// Image of the code under the coordinate permutation `k -> perm[k]`.
    pub fn permuted(&self, perm: &[usize]) -> LinearCode {
        let code = Self::from_parity_check_unchecked(self.parity_check.permute_columns(perm));
        if let Some(g) = self.generator.get() {
            let _ = code.generator.set(g.permute_columns(perm));
        }
        code
    }

    /// Appends an overall parity coordinate at the end.
    pub fn extend(&self) -> LinearCode {
        let n = self.length;
        let mut h = self.parity_check.append_column(&BitVector::zeros(self.redundancy())).expect("sizes agree");
        h.push_row(&BitVector::ones(n + 1)).expect("sizes agree");
        let code = Self::from_parity_check_unchecked(h);
        if let Some(g) = self.generator.get() {
            let parity: Vec<bool> = (0..g.rows()).map(|r| g.row(r).weight() % 2 == 1).collect();
            let mut col = BitVector::zeros(g.rows());
            for (r, &p) in parity.iter().enumerate() {
                col.set(r, p);
            }
            let _ = code.generator.set(g.append_column(&col).expect("sizes agree"));
        }
        code
    }

    /// Deletes coordinate `position` (0-based) from every codeword.
    pub fn puncture(&self, position: usize) -> Result<LinearCode> {
        if position >= self.length {
            return Err(Error::DimensionMismatch {
                expected: self.length,
                found: position + 1,
            });
        }
        let g = self.generator().remove_column(position);
        let rank = g.rank();
        if rank != g.rows() {
            return Err(Error::DimensionCollapse {
                position: position + 1,
                before: g.rows(),
                after: rank,
            });
        }
        LinearCode::from_generator(g)
    }
}

/// Hamming code of redundancy `m`; coordinate `k` gets parity-check column
/// `column_order[k]`, written as an integer whose bit `r` is row `r`.
pub fn hamming_code(m: usize, column_order: &[u64]) -> Result<LinearCode> {
    if !(2..=MAX_HAMMING_REDUNDANCY).contains(&m) {
        return Err(Error::InvalidColumnOrder {
            m,
            reason: format!("redundancy must lie in 2..={MAX_HAMMING_REDUNDANCY}"),
        });
    }
    let n = (1usize << m) - 1;
    if column_order.len() != n {
        return Err(Error::InvalidColumnOrder {
            m,
            reason: format!("expected {n} columns, got {}", column_order.len()),
        });
    }
    let mut seen = vec![false; n + 1];
    for &c in column_order {
        if c == 0 || c as usize > n {
            return Err(Error::InvalidColumnOrder {
                m,
                reason: format!("column value {c} out of range"),
            });
        }
        if std::mem::replace(&mut seen[c as usize], true) {
            return Err(Error::InvalidColumnOrder {
                m,
                reason: format!("column value {c} repeated"),
            });
        }
    }
    let mut h = BitMatrix::zeros(m, n);
    for (k, &c) in column_order.iter().enumerate() {
        for r in 0..m {
            if (c >> r) & 1 == 1 {
                h.set(r, k, true);
            }
        }
    }
    Ok(LinearCode::from_parity_check_unchecked(h))
}

/// Hamming code whose column `k` is the binary expansion of `k + 1`.
pub fn hamming_code_natural(m: usize) -> Result<LinearCode> {
    let order: Vec<u64> = (1..(1u64 << m)).collect();
    hamming_code(m, &order)
}

/// `log2 |C1 ∩ C2|`.
pub fn intersection_dim(c1: &LinearCode, c2: &LinearCode) -> Result<usize> {
    if c1.length() != c2.length() {
        return Err(Error::DimensionMismatch {
            expected: c1.length(),
            found: c2.length(),
        });
    }
    let stacked = c1.parity_check().stack(c2.parity_check())?;
    Ok(c1.length() - stacked.rank())
}

/// The unique vector of weight at most one in `code + representative`.
pub fn coset_leader(code: &LinearCode, representative: &BitVector) -> Result<BitVector> {
    if representative.len() != code.length() {
        return Err(Error::DimensionMismatch {
            expected: code.length(),
            found: representative.len(),
        });
    }
    if !code.is_hamming() {
        return Err(Error::NotHamming(
            "parity-check columns are not the distinct nonzero syndromes".into(),
        ));
    }
    let s = code.syndrome(representative).to_u64();
    if s == 0 {
        return Ok(BitVector::zeros(code.length()));
    }
    let position = code
        .position_of_syndrome(s)
        .ok_or_else(|| Error::NotHamming(format!("syndrome {s:#b} matches no column")))?;
    Ok(BitVector::unit(code.length(), position))
}

/// Coset representative supported on the pivot columns of the canonical
/// parity check; depends only on the coset.
fn reduced_leader(code: &LinearCode, representative: &BitVector) -> BitVector {
    let (rref, pivots) = code.canonical_form();
    let s = rref.mul_vec(representative).expect("length checked");
    let mut leader = BitVector::zeros(code.length());
    for (r, &c) in pivots.iter().enumerate() {
        if s.get(r) {
            leader.set(c, true);
        }
    }
    leader
}

/// A translate `code + representative` with a canonical leader: the weight ≤ 1
/// element for Hamming codes, otherwise a pivot-supported representative.
#[derive(Clone)]
pub struct Coset {
    code: Arc<LinearCode>,
    representative: BitVector,
    leader: BitVector,
}

impl fmt::Debug for Coset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Coset")
            .field("length", &self.code.length())
            .field("dimension", &self.code.dimension())
            .field("leader", &self.leader)
            .finish()
    }
}

impl PartialEq for Coset {
    fn eq(&self, other: &Self) -> bool {
        self.leader == other.leader && (Arc::ptr_eq(&self.code, &other.code) || self.code == other.code)
    }
}

impl Eq for Coset {}

impl Coset {
    pub fn new(code: Arc<LinearCode>, representative: BitVector) -> Result<Self> {
        if representative.len() != code.length() {
            return Err(Error::DimensionMismatch {
                expected: code.length(),
                found: representative.len(),
            });
        }
        let leader = if code.is_hamming() {
            coset_leader(&code, &representative)?
        } else {
            reduced_leader(&code, &representative)
        };
        Ok(Self {
            code,
            representative,
            leader,
        })
    }

    pub fn code(&self) -> &LinearCode {
        &self.code
    }

    pub fn code_arc(&self) -> &Arc<LinearCode> {
        &self.code
    }

    pub fn representative(&self) -> &BitVector {
        &self.representative
    }

    pub fn leader(&self) -> &BitVector {
        &self.leader
    }

    pub fn length(&self) -> usize {
        self.code.length()
    }

    pub fn contains(&self, x: &BitVector) -> bool {
        self.code.contains(&x.xor(&self.leader))
    }

    /// Syndrome of the coset under the code's own parity check.
    pub fn syndrome(&self) -> BitVector {
        self.code.syndrome(&self.leader)
    }
}

/// `None` when the cosets are disjoint, else `log2` of their intersection.
pub fn coset_intersection_size_log(c1: &Coset, c2: &Coset) -> Result<Option<usize>> {
    if c1.length() != c2.length() {
        return Err(Error::DimensionMismatch {
            expected: c1.length(),
            found: c2.length(),
        });
    }
    let n = c1.length();
    if Arc::ptr_eq(c1.code_arc(), c2.code_arc()) {
        let same = c1.syndrome() == c2.syndrome();
        return Ok(same.then(|| c1.code().dimension()));
    }
    let h = c1.code().parity_check().stack(c2.code().parity_check())?;
    let rhs = c1.syndrome().concat(&c2.syndrome());
    let (rank, consistent) = h.rank_with_rhs(&rhs)?;
    Ok(consistent.then_some(n - rank))
}

#[cfg(test)]
mod tests {
    use super::*;
    use itertools::Itertools;
    use std::collections::HashSet;

    fn codewords(code: &LinearCode) -> Vec<u64> {
        let g = code.generator();
        let rows: Vec<u64> = (0..g.rows()).map(|r| g.row(r).to_u64()).collect();
        (0..1u64 << rows.len())
            .map(|mask| {
                rows.iter()
                    .enumerate()
                    .filter(|(i, _)| (mask >> i) & 1 == 1)
                    .fold(0, |acc, (_, &r)| acc ^ r)
            })
            .collect()
    }

    #[test]
    fn length_three_is_repetition_code() {
        let h = hamming_code_natural(2).unwrap();
        let mut words = codewords(&h);
        words.sort_unstable();
        assert_eq!(words, vec![0b000, 0b111]);
    }

    #[test]
    fn length_seven_has_sixteen_words_min_weight_three() {
        let h = hamming_code_natural(3).unwrap();
        let words = codewords(&h);
        assert_eq!(words.iter().collect::<HashSet<_>>().len(), 16);
        let min = words.iter().filter(|&&w| w != 0).map(|w| w.count_ones()).min();
        assert_eq!(min, Some(3));
    }

    #[test]
    fn min_distance_exhaustive_up_to_fifteen() {
        for m in 2..=4 {
            let h = hamming_code_natural(m).unwrap();
            assert!(h.is_hamming());
            let words = codewords(&h);
            assert_eq!(words.len(), 1 << h.dimension());
            let min = words.iter().filter(|&&w| w != 0).map(|w| w.count_ones()).min();
            assert_eq!(min, Some(3), "m = {m}");
        }
    }

    #[test]
    fn thirty_distinct_codes_of_length_seven() {
        // oracle: canonical row space of each order, deduplicated
        let distinct: HashSet<Vec<u64>> = (1..=7u64)
            .permutations(7)
            .map(|order| {
                let mut words = codewords(&hamming_code(3, &order).unwrap());
                words.sort_unstable();
                words
            })
            .collect();
        assert_eq!(distinct.len(), 30);
        let by_identity: HashSet<LinearCode> = (1..=7u64)
            .permutations(7)
            .map(|order| hamming_code(3, &order).unwrap())
            .collect();
        assert_eq!(by_identity.len(), 30);
    }

    #[test]
    fn column_order_must_be_bijection() {
        assert!(matches!(
            hamming_code(3, &[1, 2, 3, 4, 5, 6, 6]),
            Err(Error::InvalidColumnOrder { .. })
        ));
        assert!(matches!(
            hamming_code(3, &[1, 2, 3, 4, 5, 6, 8]),
            Err(Error::InvalidColumnOrder { .. })
        ));
        assert!(hamming_code(3, &[1, 2, 3]).is_err());
    }

    #[test]
    fn intersection_examples() {
        let h7 = hamming_code_natural(3).unwrap();
        assert_eq!(intersection_dim(&h7, &h7).unwrap(), 4);
        let h3 = hamming_code_natural(2).unwrap();
        let other = hamming_code(2, &[3, 1, 2]).unwrap();
        assert_eq!(intersection_dim(&h3, &other).unwrap(), 1);
        assert!(intersection_dim(&h3, &h7).is_err());
    }

    #[test]
    fn intersection_dim_matches_enumeration_at_seven() {
        let codes: Vec<LinearCode> = (1..=7u64)
            .permutations(7)
            .step_by(97)
            .map(|o| hamming_code(3, &o).unwrap())
            .collect();
        for a in &codes {
            let wa: HashSet<u64> = codewords(a).into_iter().collect();
            for b in &codes {
                let common = codewords(b).into_iter().filter(|w| wa.contains(w)).count();
                assert_eq!(1usize << intersection_dim(a, b).unwrap(), common);
                assert_eq!(intersection_dim(a, b).unwrap(), intersection_dim(b, a).unwrap());
            }
        }
    }

    #[test]
    fn coset_leader_examples() {
        let h = hamming_code_natural(3).unwrap();
        let g = h.generator().row(0);
        assert!(coset_leader(&h, &g).unwrap().is_zero());
        for k in 0..7 {
            let e = BitVector::unit(7, k);
            assert_eq!(coset_leader(&h, &e).unwrap(), e);
        }
    }

    #[test]
    fn coset_leader_matches_exhaustive_scan() {
        for m in 2..=4usize {
            let h = hamming_code_natural(m).unwrap();
            let n = h.length();
            let words = codewords(&h);
            for rep in (0..1u64 << n).step_by(if m == 4 { 37 } else { 1 }) {
                let members: Vec<u64> = words.iter().map(|w| w ^ rep).collect();
                let small: Vec<u64> = members.into_iter().filter(|v| v.count_ones() <= 1).collect();
                assert_eq!(small.len(), 1);
                let leader = coset_leader(&h, &BitVector::from_u64(n, rep)).unwrap();
                assert_eq!(leader.to_u64(), small[0]);
            }
        }
    }

    #[test]
    fn coset_leader_rejects_non_hamming() {
        let h = hamming_code_natural(3).unwrap().extend();
        assert!(matches!(
            coset_leader(&h, &BitVector::zeros(8)),
            Err(Error::NotHamming(_))
        ));
    }

    #[test]
    fn coset_intersections_match_enumeration_at_seven() {
        let codes: Vec<Arc<LinearCode>> = (1..=7u64)
            .permutations(7)
            .step_by(331)
            .map(|o| Arc::new(hamming_code(3, &o).unwrap()))
            .collect();
        let mut cosets = Vec::new();
        for c in &codes {
            for k in 0..8 {
                let rep = if k == 0 { BitVector::zeros(7) } else { BitVector::unit(7, k - 1) };
                cosets.push(Coset::new(c.clone(), rep).unwrap());
            }
        }
        let members = |c: &Coset| -> HashSet<u64> {
            codewords(c.code()).into_iter().map(|w| w ^ c.leader().to_u64()).collect()
        };
        for a in &cosets {
            let ma = members(a);
            for b in &cosets {
                let common = members(b).intersection(&ma).count();
                let got = coset_intersection_size_log(a, b).unwrap();
                match got {
                    None => assert_eq!(common, 0),
                    Some(d) => {
                        assert_eq!(1usize << d, common);
                        assert_eq!(d, intersection_dim(a.code(), b.code()).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn distinct_cosets_of_one_code_are_disjoint() {
        let h = Arc::new(hamming_code_natural(3).unwrap());
        let a = Coset::new(h.clone(), BitVector::unit(7, 0)).unwrap();
        let b = Coset::new(h, BitVector::unit(7, 1)).unwrap();
        assert_eq!(coset_intersection_size_log(&a, &b).unwrap(), None);
    }

    #[test]
    fn extend_and_puncture() {
        let h = hamming_code_natural(3).unwrap();
        let e = h.extend();
        assert_eq!(e.length(), 8);
        assert_eq!(e.dimension(), 4);
        assert!(codewords(&e).iter().all(|w| w.count_ones() % 2 == 0));
        let p = e.puncture(7).unwrap();
        assert_eq!(p, h);
        assert!(h.puncture(7).is_err());
    }

    #[test]
    fn puncturing_can_collapse() {
        // {00, 11} punctured twice collapses; {000, 100} punctured at 0 collapses
        let g = BitMatrix::from_strings(&["100"]).unwrap();
        let c = LinearCode::from_generator(g).unwrap();
        assert!(matches!(c.puncture(0), Err(Error::DimensionCollapse { .. })));
    }

    #[test]
    fn extension_preserves_intersections() {
        let codes: Vec<LinearCode> = (1..=7u64)
            .permutations(7)
            .step_by(113)
            .map(|o| hamming_code(3, &o).unwrap())
            .collect();
        for a in &codes {
            for b in &codes {
                assert_eq!(
                    intersection_dim(&a.extend(), &b.extend()).unwrap(),
                    intersection_dim(a, b).unwrap()
                );
            }
        }
    }

    #[test]
    fn extended_coset_puncture_round_trip() {
        let h = Arc::new(hamming_code_natural(3).unwrap());
        let e = Arc::new(h.extend());
        for k in 0..7 {
            let rep = BitVector::unit(7, k).concat(&BitVector::ones(1));
            let ext = Coset::new(e.clone(), rep.clone()).unwrap();
            let back = Coset::new(Arc::new(e.puncture(7).unwrap()), rep.remove(7)).unwrap();
            assert_eq!(back.leader(), &BitVector::unit(7, k));
            assert!(ext.contains(&rep));
        }
    }
}
