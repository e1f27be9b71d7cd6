//! Isometries of `F^n` and the permutations they induce on partition indices.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::sync::Arc;

use itertools::Itertools;
use rayon::prelude::*;

use crate::codes::{Coset, LinearCode};
use crate::error::{Error, Result};
use crate::gf2::BitVector;
use crate::mollard::MollardFrame;
use crate::partition::{leader_index, CodePartition};

/// Largest length searched exhaustively (`7! · 2^7` candidates).
pub const EXHAUSTIVE_AUT_MAX_LENGTH: usize = 7;

/// `x ↦ perm(x) + shift`, where `perm` sends coordinate `k` to `perm[k]`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Isometry {
    perm: Vec<usize>,
    shift: BitVector,
}

impl fmt::Debug for Isometry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Isometry(perm={:?}, shift={})", self.perm, self.shift)
    }
}

fn is_permutation(p: &[usize]) -> bool {
    let mut seen = vec![false; p.len()];
    p.iter().all(|&k| k < p.len() && !std::mem::replace(&mut seen[k], true))
}

fn invert(p: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; p.len()];
    for (k, &v) in p.iter().enumerate() {
        inv[v] = k;
    }
    inv
}

impl Isometry {
    pub fn new(perm: Vec<usize>, shift: BitVector) -> Result<Self> {
        if perm.len() != shift.len() {
            return Err(Error::DimensionMismatch {
                expected: perm.len(),
                found: shift.len(),
            });
        }
        if !is_permutation(&perm) {
            return Err(Error::Parse(format!("{perm:?} is not a permutation")));
        }
        Ok(Self { perm, shift })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            perm: (0..n).collect(),
            shift: BitVector::zeros(n),
        }
    }

    pub fn translation(shift: BitVector) -> Self {
        Self {
            perm: (0..shift.len()).collect(),
            shift,
        }
    }

    pub fn permutation(perm: Vec<usize>) -> Result<Self> {
        let n = perm.len();
        Self::new(perm, BitVector::zeros(n))
    }

    pub fn length(&self) -> usize {
        self.perm.len()
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn shift(&self) -> &BitVector {
        &self.shift
    }

    pub fn apply_vector(&self, x: &BitVector) -> BitVector {
        x.permuted(&self.perm).xor(&self.shift)
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Isometry) -> Isometry {
        assert_eq!(self.length(), other.length(), "isometries act on different spaces");
        Isometry {
            perm: other.perm.iter().map(|&k| self.perm[k]).collect(),
            shift: other.shift.permuted(&self.perm).xor(&self.shift),
        }
    }

    pub fn inverse(&self) -> Isometry {
        let inv = invert(&self.perm);
        Isometry {
            shift: self.shift.permuted(&inv),
            perm: inv,
        }
    }
}

/// A permutation of the index set `I = {0, ..., n}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IndexPermutation {
    mapping: Vec<usize>,
}

impl IndexPermutation {
    pub fn new(mapping: Vec<usize>) -> Result<Self> {
        if !is_permutation(&mapping) {
            return Err(Error::Parse(format!("{mapping:?} is not a permutation")));
        }
        Ok(Self { mapping })
    }

    pub fn identity(size: usize) -> Self {
        Self {
            mapping: (0..size).collect(),
        }
    }

    pub fn mapping(&self) -> &[usize] {
        &self.mapping
    }

    pub fn size(&self) -> usize {
        self.mapping.len()
    }

    pub fn image(&self, i: usize) -> usize {
        self.mapping[i]
    }

    pub fn is_identity(&self) -> bool {
        self.mapping.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &IndexPermutation) -> IndexPermutation {
        IndexPermutation {
            mapping: other.mapping.iter().map(|&k| self.mapping[k]).collect(),
        }
    }

    pub fn inverse(&self) -> IndexPermutation {
        IndexPermutation {
            mapping: invert(&self.mapping),
        }
    }
}

/// An isometry together with the index permutation it induces on a partition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Automorphism {
    pub isometry: Isometry,
    pub action: IndexPermutation,
}

/// Image of a coset under an isometry, with a fresh canonical leader.
pub fn apply(iso: &Isometry, c: &Coset) -> Result<Coset> {
    if iso.length() != c.length() {
        return Err(Error::DimensionMismatch {
            expected: c.length(),
            found: iso.length(),
        });
    }
    let code = Arc::new(c.code().permuted(&iso.perm));
    Coset::new(code, iso.apply_vector(c.representative()))
}

/// The permutation `i ↦ j` with `iso(C_i) = C_j`, or `None` when `iso` does
/// not preserve the partition.
pub fn partition_action(iso: &Isometry, p: &CodePartition) -> Option<IndexPermutation> {
    if iso.length() != p.length() {
        return None;
    }
    let mut permuted: HashMap<*const LinearCode, Arc<LinearCode>> = HashMap::new();
    let mut mapping = Vec::with_capacity(p.len());
    let mut seen = vec![false; p.len()];
    for c in p.components() {
        let code = permuted
            .entry(Arc::as_ptr(c.code_arc()))
            .or_insert_with(|| Arc::new(c.code().permuted(&iso.perm)))
            .clone();
        let image = Coset::new(code, iso.apply_vector(c.representative())).ok()?;
        let j = leader_index(image.leader())?;
        let target = p.components().get(j)?;
        if target.leader() != image.leader() || target.code() != image.code() {
            return None;
        }
        if std::mem::replace(&mut seen[j], true) {
            return None;
        }
        mapping.push(j);
    }
    Some(IndexPermutation { mapping })
}

/// Every automorphism of a partition of length at most 7, with its induced
/// index permutation. Permutations are scanned in lexicographic order and
/// discarded as soon as the image of `H_0` is not a component code.
pub fn exhaustive_automorphisms(p: &CodePartition) -> Result<Vec<Automorphism>> {
    let n = p.length();
    if n > EXHAUSTIVE_AUT_MAX_LENGTH {
        return Err(Error::Unsupported(format!(
            "exhaustive automorphism search needs n <= {EXHAUSTIVE_AUT_MAX_LENGTH}, got {n}"
        )));
    }
    // code classes in order of first appearance, so class 0 is H_0's code
    let mut reps: Vec<&LinearCode> = Vec::new();
    let class: Vec<usize> = p
        .components()
        .iter()
        .map(|c| match reps.iter().position(|r| *r == c.code()) {
            Some(k) => k,
            None => {
                reps.push(c.code());
                reps.len() - 1
            }
        })
        .collect();
    let columns: Vec<Vec<u64>> = reps
        .iter()
        .map(|c| {
            c.hamming_columns()
                .map(<[u64]>::to_vec)
                .ok_or_else(|| Error::NotHamming("partition component".into()))
        })
        .collect::<Result<_>>()?;
    let leaders: Vec<u64> = p.components().iter().map(|c| c.leader().to_u64()).collect();
    let perms: Vec<Vec<usize>> = (0..n).permutations(n).collect();

    let found: Vec<Vec<Automorphism>> = perms
        .par_iter()
        .map(|perm| {
            // image code of each class and the class it lands on
            let mut image_class = vec![usize::MAX; reps.len()];
            for (a, code) in reps.iter().enumerate() {
                let image = code.permuted(perm);
                match reps.iter().position(|r| **r == image) {
                    Some(b) => image_class[a] = b,
                    None => return Vec::new(),
                }
            }
            // permuted columns and syndrome -> coordinate lookup per class
            let img_cols: Vec<Vec<u64>> = columns
                .iter()
                .map(|cols| {
                    let mut out = vec![0u64; n];
                    for (k, &c) in cols.iter().enumerate() {
                        out[perm[k]] = c;
                    }
                    out
                })
                .collect();
            let img_pos: Vec<Vec<usize>> = columns
                .iter()
                .map(|cols| {
                    let mut out = vec![usize::MAX; n + 1];
                    for (k, &c) in cols.iter().enumerate() {
                        out[c as usize] = perm[k];
                    }
                    out
                })
                .collect();
            let moved: Vec<u64> = leaders
                .iter()
                .map(|&v| (0..n).filter(|&k| (v >> k) & 1 == 1).fold(0, |acc, k| acc | 1 << perm[k]))
                .collect();

            let mut out = Vec::new();
            for shift in 0..1u64 << n {
                let mut mapping = Vec::with_capacity(n + 1);
                let ok = (0..=n).all(|i| {
                    let a = class[i];
                    let v = moved[i] ^ shift;
                    let syn = (0..n)
                        .filter(|&k| (v >> k) & 1 == 1)
                        .fold(0u64, |acc, k| acc ^ img_cols[a][k]);
                    let j = if syn == 0 { 0 } else { img_pos[a][syn as usize] + 1 };
                    mapping.push(j);
                    class[j] == image_class[a]
                });
                if ok {
                    out.push(Automorphism {
                        isometry: Isometry {
                            perm: perm.clone(),
                            shift: BitVector::from_u64(n, shift),
                        },
                        action: IndexPermutation { mapping },
                    });
                }
            }
            out
        })
        .collect();
    Ok(found.into_iter().flatten().collect())
}

/// Candidate automorphism of a construction B partition built from
/// automorphisms of its inputs: cell `(i, j) ↦ (π_l(i), π_t(j))`,
/// `y_i ↦ y_{π_l(i)}`, `z_j ↦ z_{π_t(j)}`, shift `(0, s_l, s_t)`. Callers must
/// confirm it with [`partition_action`].
pub fn lift_isometry(sl: &Isometry, st: &Isometry, frame: &MollardFrame) -> Result<Isometry> {
    if sl.length() != frame.l() || st.length() != frame.t() {
        return Err(Error::DimensionMismatch {
            expected: frame.l() + frame.t(),
            found: sl.length() + st.length(),
        });
    }
    let mut perm = vec![0; frame.n()];
    for i in 0..frame.l() {
        for j in 0..frame.t() {
            perm[frame.cell(i, j)] = frame.cell(sl.perm[i], st.perm[j]);
        }
        perm[frame.y(i)] = frame.y(sl.perm[i]);
    }
    for j in 0..frame.t() {
        perm[frame.z(j)] = frame.z(st.perm[j]);
    }
    let shift = frame.join(&BitVector::zeros(frame.matrix_len()), &sl.shift, &st.shift);
    Ok(Isometry { perm, shift })
}

/// Verified generators of the automorphism group of a trivial partition:
/// translations by the unit vectors whose columns are unit syndromes, and the
/// column permutations realising elementary transvections of the syndromes.
/// Together they induce the affine group on syndromes.
pub fn trivial_partition_generators(p: &CodePartition) -> Result<Vec<Automorphism>> {
    if !p.is_trivial() {
        return Err(Error::InvalidPartition("partition is not trivial".into()));
    }
    let code = p.component(0).code();
    let cols = code
        .hamming_columns()
        .ok_or_else(|| Error::NotHamming("trivial partition code".into()))?;
    let n = p.length();
    let m = code.redundancy();
    let mut candidates = Vec::new();
    for r in 0..m {
        let k = code.position_of_syndrome(1 << r).expect("every nonzero syndrome is a column");
        candidates.push(Isometry::translation(BitVector::unit(n, k)));
    }
    for a in 0..m {
        for b in 0..m {
            if a == b {
                continue;
            }
            let transvect = |c: u64| c ^ (((c >> b) & 1) << a);
            let perm: Vec<usize> = cols
                .iter()
                .map(|&c| code.position_of_syndrome(transvect(c)).expect("nonzero syndrome"))
                .collect();
            candidates.push(Isometry::permutation(perm)?);
        }
    }
    Ok(candidates
        .into_iter()
        .filter_map(|iso| partition_action(&iso, p).map(|action| Automorphism { isometry: iso, action }))
        .collect())
}

/// A subset of `auts` whose actions generate the same group on indices,
/// chosen greedily in input order. Cost grows with the group order, so this
/// is meant for the small groups found by exhaustive search.
pub fn reduce_generators(auts: &[Automorphism]) -> Vec<Automorphism> {
    let Some(first) = auts.first() else {
        return Vec::new();
    };
    let size = first.action.size();
    let mut chosen: Vec<Automorphism> = Vec::new();
    let mut group = std::collections::HashSet::from([IndexPermutation::identity(size)]);
    for a in auts {
        if group.contains(&a.action) {
            continue;
        }
        chosen.push(a.clone());
        let gens: Vec<&IndexPermutation> = chosen.iter().map(|c| &c.action).collect();
        let mut queue: VecDeque<IndexPermutation> = group.iter().cloned().collect();
        while let Some(g) = queue.pop_front() {
            for h in &gens {
                let next = h.compose(&g);
                if group.insert(next.clone()) {
                    queue.push_back(next);
                }
            }
        }
    }
    chosen
}

/// Lifted candidates that survived confirmation, and how many were dropped.
#[derive(Clone, Debug)]
pub struct LiftOutcome {
    pub verified: Vec<Automorphism>,
    pub discarded: usize,
}

/// Lifts `(σ, id)` for every `σ` in `gens_l` and `(id, τ)` for every `τ` in
/// `gens_t`, keeping those that [`partition_action`] confirms on `composed`.
pub fn lift_generators(
    gens_l: &[Automorphism],
    gens_t: &[Automorphism],
    frame: &MollardFrame,
    composed: &CodePartition,
) -> Result<LiftOutcome> {
    let (id_l, id_t) = (Isometry::identity(frame.l()), Isometry::identity(frame.t()));
    let candidates = gens_l
        .iter()
        .map(|a| lift_isometry(&a.isometry, &id_t, frame))
        .chain(gens_t.iter().map(|b| lift_isometry(&id_l, &b.isometry, frame)))
        .collect::<Result<Vec<_>>>()?;
    let total = candidates.len();
    let verified: Vec<Automorphism> = candidates
        .into_par_iter()
        .filter_map(|iso| partition_action(&iso, composed).map(|action| Automorphism { isometry: iso, action }))
        .collect();
    Ok(LiftOutcome {
        discarded: total - verified.len(),
        verified,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransitivityCertificate {
    /// Size of the orbit of the ordered pair `(0, 1)`.
    pub orbit_size: usize,
    /// `(n + 1) · n`, the number of ordered pairs of distinct indices.
    pub expected: usize,
    /// Size of the orbit of index 0.
    pub point_orbit_size: usize,
    pub two_transitive: bool,
    pub transitive: bool,
}

/// Decides whether `gens` generate a group acting transitively on ordered
/// pairs of distinct indices of `{0, ..., n}`, by breadth-first closure.
pub fn two_transitive(gens: &[IndexPermutation], n: usize) -> Result<TransitivityCertificate> {
    let size = n + 1;
    if let Some(g) = gens.iter().find(|g| g.size() != size) {
        return Err(Error::DimensionMismatch {
            expected: size,
            found: g.size(),
        });
    }
    let mut seen_points = vec![false; size];
    seen_points[0] = true;
    let mut queue = VecDeque::from([0usize]);
    let mut point_orbit_size = 1;
    while let Some(a) = queue.pop_front() {
        for g in gens {
            let b = g.image(a);
            if !std::mem::replace(&mut seen_points[b], true) {
                point_orbit_size += 1;
                queue.push_back(b);
            }
        }
    }

    let expected = size * n;
    let mut orbit_size = 0;
    if size >= 2 {
        let mut seen = vec![false; size * size];
        seen[1] = true;
        orbit_size = 1;
        let mut queue = VecDeque::from([(0usize, 1usize)]);
        while let Some((a, b)) = queue.pop_front() {
            for g in gens {
                let (x, y) = (g.image(a), g.image(b));
                if !std::mem::replace(&mut seen[x * size + y], true) {
                    orbit_size += 1;
                    queue.push_back((x, y));
                }
            }
        }
    }
    let two = size >= 2 && orbit_size == expected;
    let transitive = point_orbit_size == size;
    debug_assert!(!two || transitive);
    Ok(TransitivityCertificate {
        orbit_size,
        expected,
        point_orbit_size,
        two_transitive: two,
        transitive,
    })
}

/// Distinct index permutations among `auts`, in first-seen order.
pub fn distinct_actions(auts: &[Automorphism]) -> Vec<IndexPermutation> {
    let mut seen = std::collections::HashSet::new();
    auts.iter()
        .filter(|a| seen.insert(a.action.clone()))
        .map(|a| a.action.clone())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::hamming_code_natural;
    use crate::mollard::construction_b;
    use crate::partition::{invariant_signature, phelps_search, trivial_partition};
    use rand::seq::SliceRandom;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn trivial(m: usize) -> CodePartition {
        trivial_partition(Arc::new(hamming_code_natural(m).unwrap())).unwrap()
    }

    fn phelps() -> CodePartition {
        phelps_search(2, 1).unwrap().remove(0)
    }

    fn random_isometry(n: usize, rng: &mut ChaCha8Rng) -> Isometry {
        let mut perm: Vec<usize> = (0..n).collect();
        perm.shuffle(rng);
        let mut shift = BitVector::zeros(n);
        for k in 0..n {
            shift.set(k, rng.gen());
        }
        Isometry::new(perm, shift).unwrap()
    }

    #[test]
    fn group_laws() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let (a, b, c) = (
                random_isometry(9, &mut rng),
                random_isometry(9, &mut rng),
                random_isometry(9, &mut rng),
            );
            assert_eq!(a.compose(&b).compose(&c), a.compose(&b.compose(&c)));
            assert_eq!(a.compose(&a.inverse()), Isometry::identity(9));
            let x: BitVector = "101100111".parse().unwrap();
            assert_eq!(a.compose(&b).apply_vector(&x), a.apply_vector(&b.apply_vector(&x)));
        }
    }

    #[test]
    fn apply_examples() {
        let h = Arc::new(hamming_code_natural(3).unwrap());
        let c = Coset::new(h.clone(), BitVector::unit(7, 2)).unwrap();
        assert_eq!(apply(&Isometry::identity(7), &c).unwrap(), c);
        let zero = Coset::new(h.clone(), BitVector::zeros(7)).unwrap();
        let word = h.generator().row(1);
        assert_eq!(apply(&Isometry::translation(word), &zero).unwrap(), zero);
    }

    #[test]
    fn code_fixing_permutation_found_by_scan() {
        let h = hamming_code_natural(3).unwrap();
        let g = h.generator();
        let fixing = (0..7)
            .permutations(7)
            .filter(|p| !p.iter().enumerate().all(|(i, &v)| i == v))
            .find(|p| (0..g.rows()).all(|r| h.contains(&g.row(r).permuted(p))))
            .expect("Aut(H) is nontrivial");
        let c = Coset::new(Arc::new(h.clone()), BitVector::zeros(7)).unwrap();
        let image = apply(&Isometry::permutation(fixing).unwrap(), &c).unwrap();
        assert_eq!(image.code(), &h);
    }

    #[test]
    fn partition_action_examples() {
        let p = trivial(3);
        assert!(partition_action(&Isometry::identity(7), &p).unwrap().is_identity());
        let act = partition_action(&Isometry::translation(BitVector::unit(7, 0)), &p).unwrap();
        assert_eq!(act.compose(&act), IndexPermutation::identity(8));
        assert!(!act.is_identity());
        assert!((0..8).all(|i| act.image(i) != i));
    }

    #[test]
    fn random_isometries_rarely_preserve_phelps() {
        let p = phelps();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let hits: Vec<Isometry> = (0..2000)
            .map(|_| random_isometry(7, &mut rng))
            .filter(|iso| partition_action(iso, &p).is_some())
            .collect();
        assert!(hits.len() < 40, "{} hits", hits.len());
        let auts = exhaustive_automorphisms(&p).unwrap();
        for iso in hits {
            assert!(auts.iter().any(|a| a.isometry == iso));
        }
    }

    #[test]
    fn action_is_a_homomorphism() {
        let p = phelps();
        let auts = exhaustive_automorphisms(&p).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..100 {
            let a = &auts[rng.gen_range(0..auts.len())];
            let b = &auts[rng.gen_range(0..auts.len())];
            let composed = partition_action(&a.isometry.compose(&b.isometry), &p).unwrap();
            assert_eq!(composed, a.action.compose(&b.action));
        }
    }

    #[test]
    fn trivial_three_has_full_isometry_group() {
        let auts = exhaustive_automorphisms(&trivial(2)).unwrap();
        assert_eq!(auts.len(), 48);
    }

    #[test]
    fn exhaustive_results_recheck() {
        for p in [trivial(3), phelps()] {
            let auts = exhaustive_automorphisms(&p).unwrap();
            for a in auts.iter().step_by(17) {
                assert_eq!(partition_action(&a.isometry, &p).as_ref(), Some(&a.action));
            }
            let cert = two_transitive(&distinct_actions(&auts), 7).unwrap();
            assert!(cert.two_transitive, "{cert:?}");
            assert!(cert.transitive);
            assert_eq!(cert.orbit_size, 56);
        }
    }

    #[test]
    fn exhaustive_search_limited_to_length_seven() {
        assert!(exhaustive_automorphisms(&trivial(4)).is_err());
    }

    #[test]
    fn two_transitive_examples() {
        let id = IndexPermutation::identity(6);
        let c = two_transitive(&[id], 5).unwrap();
        assert!(!c.two_transitive);
        assert_eq!(c.orbit_size, 1);
        let cycle = IndexPermutation::new((1..6).chain([0]).collect()).unwrap();
        let swap = IndexPermutation::new(vec![1, 0, 2, 3, 4, 5]).unwrap();
        let c = two_transitive(&[cycle, swap], 5).unwrap();
        assert!(c.two_transitive && c.transitive);
        assert_eq!(c.orbit_size, 30);
    }

    #[test]
    fn lift_examples() {
        let f = MollardFrame::new(3, 7);
        assert_eq!(
            lift_isometry(&Isometry::identity(3), &Isometry::identity(7), &f).unwrap(),
            Isometry::identity(31)
        );
        let (vl, vt): (BitVector, BitVector) = ("101".parse().unwrap(), "0110001".parse().unwrap());
        let lifted =
            lift_isometry(&Isometry::translation(vl.clone()), &Isometry::translation(vt.clone()), &f).unwrap();
        assert_eq!(lifted, Isometry::translation(f.join(&BitVector::zeros(21), &vl, &vt)));
    }

    #[test]
    fn lifted_automorphisms_preserve_composed_partition() {
        let (pl, pt) = (trivial(2), phelps());
        let f = MollardFrame::new(3, 7);
        let composed = construction_b(&pl, &pt).unwrap();
        let al = exhaustive_automorphisms(&pl).unwrap();
        let at = exhaustive_automorphisms(&pt).unwrap();
        for a in al.iter().step_by(5) {
            for b in at.iter().step_by(97) {
                let lifted = lift_isometry(&a.isometry, &b.isometry, &f).unwrap();
                let act = partition_action(&lifted, &composed).expect("lift is an automorphism");
                for i in 0..=3 {
                    for j in 0..=7 {
                        assert_eq!(
                            act.image(f.component_index(i, j)),
                            f.component_index(a.action.image(i), b.action.image(j))
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn trivial_generators_certify_two_transitivity() {
        for m in 2..=5 {
            let p = trivial(m);
            let gens = trivial_partition_generators(&p).unwrap();
            assert_eq!(gens.len(), m * m);
            let acts: Vec<_> = gens.iter().map(|g| g.action.clone()).collect();
            assert!(two_transitive(&acts, p.length()).unwrap().two_transitive);
        }
    }

    #[test]
    fn reduced_generators_keep_the_group() {
        let auts = exhaustive_automorphisms(&phelps()).unwrap();
        let gens = reduce_generators(&auts);
        assert!(gens.len() < 10, "{} generators", gens.len());
        let acts: Vec<_> = gens.iter().map(|g| g.action.clone()).collect();
        assert!(two_transitive(&acts, 7).unwrap().two_transitive);
    }

    #[test]
    fn lift_generators_on_thirty_one() {
        let (pl, pt) = (trivial(2), phelps());
        let f = MollardFrame::new(3, 7);
        let composed = construction_b(&pl, &pt).unwrap();
        let gl = reduce_generators(&exhaustive_automorphisms(&pl).unwrap());
        let gt = reduce_generators(&exhaustive_automorphisms(&pt).unwrap());
        let out = lift_generators(&gl, &gt, &f, &composed).unwrap();
        assert_eq!(out.discarded, 0);
        assert_eq!(out.verified.len(), gl.len() + gt.len());
    }

    #[test]
    fn signature_is_isometry_invariant() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let phelps15 = construction_b(&trivial(2), &trivial(2)).unwrap();
        for p in [phelps(), trivial(3), phelps15] {
            let sig = invariant_signature(&p).unwrap();
            for _ in 0..5 {
                let iso = random_isometry(p.length(), &mut rng);
                let image = CodePartition::from_cosets(
                    p.components().iter().map(|c| apply(&iso, c).unwrap()).collect(),
                )
                .unwrap();
                assert_eq!(invariant_signature(&image).unwrap(), sig);
            }
        }
    }
}
