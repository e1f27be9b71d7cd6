//! Mollard composition of codes and construction B for partitions.
//!
//! A vector of `F^n`, `n = lt + l + t`, is read as `(x, y, z)`: `x` is an
//! `l × t` matrix stored row-major in positions `0..lt`, `y` fills
//! `lt..lt + l` and `z` fills `lt + l..n`.

use std::collections::HashMap;
use std::sync::Arc;

use rayon::prelude::*;

use crate::codes::{Coset, LinearCode};
use crate::error::{Error, Result};
use crate::gf2::{BitMatrix, BitVector};
use crate::partition::CodePartition;

/// Where a coordinate of `F^n` lives in the `(x, y, z)` layout. All indices
/// are 0-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Slot {
    Cell(usize, usize),
    Y(usize),
    Z(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MollardFrame {
    l: usize,
    t: usize,
}

impl MollardFrame {
    pub fn new(l: usize, t: usize) -> Self {
        assert!(l > 0 && t > 0, "component lengths must be positive");
        Self { l, t }
    }

    pub fn l(&self) -> usize {
        self.l
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn matrix_len(&self) -> usize {
        self.l * self.t
    }

    pub fn n(&self) -> usize {
        self.l * self.t + self.l + self.t
    }

    pub fn cell(&self, i: usize, j: usize) -> usize {
        debug_assert!(i < self.l && j < self.t);
        i * self.t + j
    }

    pub fn y(&self, i: usize) -> usize {
        debug_assert!(i < self.l);
        self.l * self.t + i
    }

    pub fn z(&self, j: usize) -> usize {
        debug_assert!(j < self.t);
        self.l * self.t + self.l + j
    }

    pub fn position(&self, slot: Slot) -> usize {
        match slot {
            Slot::Cell(i, j) => self.cell(i, j),
            Slot::Y(i) => self.y(i),
            Slot::Z(j) => self.z(j),
        }
    }

    pub fn locate(&self, position: usize) -> Slot {
        let lt = self.l * self.t;
        assert!(position < self.n(), "position {position} outside the frame");
        if position < lt {
            Slot::Cell(position / self.t, position % self.t)
        } else if position < lt + self.l {
            Slot::Y(position - lt)
        } else {
            Slot::Z(position - lt - self.l)
        }
    }

    /// Index in the composed partition of the component built from
    /// components `i` of `P^l` and `j` of `P^t`: the position of its leader.
    pub fn component_index(&self, i: usize, j: usize) -> usize {
        match (i, j) {
            (0, 0) => 0,
            (i, 0) => self.y(i - 1) + 1,
            (0, j) => self.z(j - 1) + 1,
            (i, j) => self.cell(i - 1, j - 1) + 1,
        }
    }

    pub fn join(&self, x: &BitVector, y: &BitVector, z: &BitVector) -> BitVector {
        assert_eq!(
            (x.len(), y.len(), z.len()),
            (self.matrix_len(), self.l, self.t),
            "block lengths do not match the frame"
        );
        x.concat(y).concat(z)
    }
}

/// Row parities `p1(x)` and column parities `p2(x)` of the matrix view of `x`.
pub fn p_vectors(x: &BitVector, frame: &MollardFrame) -> Result<(BitVector, BitVector)> {
    if x.len() != frame.matrix_len() {
        return Err(Error::DimensionMismatch {
            expected: frame.matrix_len(),
            found: x.len(),
        });
    }
    let mut rows = BitVector::zeros(frame.l);
    let mut cols = BitVector::zeros(frame.t);
    for p in x.ones_positions() {
        rows.flip(p / frame.t);
        cols.flip(p % frame.t);
    }
    Ok((rows, cols))
}

fn require_hamming(code: &LinearCode, side: &str) -> Result<()> {
    if code.is_hamming() {
        Ok(())
    } else {
        Err(Error::NotHamming(format!("{side} input of the Mollard composition")))
    }
}

/// Generator of `{(x, y + p1(x), z + p2(x))}` with three row groups: matrix
/// units with their parities, then `(0, y, 0)` for generators `y` of `Cl`,
/// then `(0, 0, z)` for generators `z` of `Ct`.
pub fn mollard_generator(cl: &LinearCode, ct: &LinearCode) -> BitMatrix {
    let frame = MollardFrame::new(cl.length(), ct.length());
    let n = frame.n();
    let (gl, gt) = (cl.generator(), ct.generator());
    let mut g = BitMatrix::zeros(frame.matrix_len() + gl.rows() + gt.rows(), n);
    let mut r = 0;
    for i in 0..frame.l {
        for j in 0..frame.t {
            g.set(r, frame.cell(i, j), true);
            g.set(r, frame.y(i), true);
            g.set(r, frame.z(j), true);
            r += 1;
        }
    }
    for k in 0..gl.rows() {
        for i in gl.row(k).ones_positions() {
            g.set(r, frame.y(i), true);
        }
        r += 1;
    }
    for k in 0..gt.rows() {
        for j in gt.row(k).ones_positions() {
            g.set(r, frame.z(j), true);
        }
        r += 1;
    }
    g
}

/// The Mollard code of two Hamming codes with `f ≡ 0`.
///
/// A vector `(x, u, v)` is a codeword iff `u + p1(x) ∈ Cl` and
/// `v + p2(x) ∈ Ct`, so the parity check is assembled directly: a row `h` of
/// `Cl`'s check puts `h_i` on cell `(i, j)` and on `y_i`; a row `g` of `Ct`'s
/// check puts `g_j` on cell `(i, j)` and on `z_j`.
pub fn mollard_code(cl: &LinearCode, ct: &LinearCode) -> Result<LinearCode> {
    require_hamming(cl, "first")?;
    require_hamming(ct, "second")?;
    let frame = MollardFrame::new(cl.length(), ct.length());
    let (hl, ht) = (cl.parity_check(), ct.parity_check());
    let mut h = BitMatrix::zeros(hl.rows() + ht.rows(), frame.n());
    for r in 0..hl.rows() {
        for i in hl.row(r).ones_positions() {
            for j in 0..frame.t {
                h.set(r, frame.cell(i, j), true);
            }
            h.set(r, frame.y(i), true);
        }
    }
    for r in 0..ht.rows() {
        let row = hl.rows() + r;
        for j in ht.row(r).ones_positions() {
            for i in 0..frame.l {
                h.set(row, frame.cell(i, j), true);
            }
            h.set(row, frame.z(j), true);
        }
    }
    LinearCode::from_parity_check(h)
}

/// Construction B: component `(i, j)` is `M(H_i^l, H_j^t)` shifted by
/// `(0, leader_i, leader_j)`, re-indexed by the position of its weight ≤ 1
/// leader (see [`MollardFrame::component_index`]).
pub fn construction_b(pl: &CodePartition, pt: &CodePartition) -> Result<CodePartition> {
    for (p, side) in [(pl, "first"), (pt, "second")] {
        if !p.leaders_canonical() || p.len() != p.length() + 1 {
            return Err(Error::InvalidPartition(format!("{side} input is not a canonical partition")));
        }
    }
    let frame = MollardFrame::new(pl.length(), pt.length());

    // one Mollard code per pair of distinct input codes
    let class_of = |p: &CodePartition| -> (Vec<usize>, Vec<Arc<LinearCode>>) {
        let mut reps: Vec<Arc<LinearCode>> = Vec::new();
        let ids = p
            .components()
            .iter()
            .map(|c| {
                match reps.iter().position(|r| Arc::ptr_eq(r, c.code_arc()) || r.as_ref() == c.code()) {
                    Some(k) => k,
                    None => {
                        reps.push(c.code_arc().clone());
                        reps.len() - 1
                    }
                }
            })
            .collect();
        (ids, reps)
    };
    let (ids_l, reps_l) = class_of(pl);
    let (ids_t, reps_t) = class_of(pt);
    let pairs: Vec<(usize, usize)> = (0..reps_l.len())
        .flat_map(|a| (0..reps_t.len()).map(move |b| (a, b)))
        .collect();
    let codes: HashMap<(usize, usize), Arc<LinearCode>> = pairs
        .par_iter()
        .map(|&(a, b)| mollard_code(&reps_l[a], &reps_t[b]).map(|c| ((a, b), Arc::new(c))))
        .collect::<Result<_>>()?;

    let cells: Vec<(usize, usize)> = (0..pl.len())
        .flat_map(|i| (0..pt.len()).map(move |j| (i, j)))
        .collect();
    let zero_x = BitVector::zeros(frame.matrix_len());
    let cosets = cells
        .par_iter()
        .map(|&(i, j)| {
            let code = codes[&(ids_l[i], ids_t[j])].clone();
            let rep = frame.join(&zero_x, pl.component(i).leader(), pt.component(j).leader());
            Coset::new(code, rep)
        })
        .collect::<Result<Vec<_>>>()?;
    CodePartition::from_cosets(cosets)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::{hamming_code_natural, intersection_dim};
    use crate::partition::{phelps_search, trivial_partition, uniformity, verify_partition, VerifyMode};
    use std::collections::HashSet;

    fn trivial(m: usize) -> CodePartition {
        trivial_partition(Arc::new(hamming_code_natural(m).unwrap())).unwrap()
    }

    #[test]
    fn frame_layout_is_a_bijection() {
        let f = MollardFrame::new(3, 7);
        assert_eq!(f.n(), 31);
        for p in 0..f.n() {
            assert_eq!(f.position(f.locate(p)), p);
        }
        let mut seen = HashSet::new();
        for i in 0..=3 {
            for j in 0..=7 {
                assert!(seen.insert(f.component_index(i, j)));
            }
        }
        assert_eq!(seen.len(), 32);
    }

    #[test]
    fn p_vector_examples() {
        let f = MollardFrame::new(2, 3);
        let (a, b) = p_vectors(&BitVector::zeros(6), &f).unwrap();
        assert!(a.is_zero() && b.is_zero());
        let (a, b) = p_vectors(&BitVector::ones(6), &f).unwrap();
        assert_eq!((a.to_string(), b.to_string()), ("11".into(), "000".into()));
        let (a, b) = p_vectors(&BitVector::unit(6, 0), &f).unwrap();
        assert_eq!((a, b), (BitVector::unit(2, 0), BitVector::unit(3, 0)));
        assert!(p_vectors(&BitVector::zeros(5), &f).is_err());
    }

    #[test]
    fn mollard_dimensions() {
        let c = mollard_code(&hamming_code_natural(2).unwrap(), &hamming_code_natural(3).unwrap()).unwrap();
        assert_eq!(c.length(), 31);
        assert_eq!(c.dimension(), 26);
        assert!(c.is_hamming());
    }

    #[test]
    fn zero_component_vectors_are_codewords() {
        let (cl, ct) = (hamming_code_natural(2).unwrap(), hamming_code_natural(3).unwrap());
        let f = MollardFrame::new(3, 7);
        let c = mollard_code(&cl, &ct).unwrap();
        for seed in 0..200u64 {
            let mut x = BitVector::zeros(21);
            for p in 0..21 {
                x.set(p, (seed.wrapping_mul(0x9E37_79B9_7F4A_7C15) >> (p + 7)) & 1 == 1);
            }
            let (a, b) = p_vectors(&x, &f).unwrap();
            assert!(c.contains(&f.join(&x, &a, &b)));
        }
    }

    #[test]
    fn generator_route_matches_parity_route() {
        for (ml, mt) in [(2, 2), (2, 3), (3, 3)] {
            let (cl, ct) = (hamming_code_natural(ml).unwrap(), hamming_code_natural(mt).unwrap());
            let direct = mollard_code(&cl, &ct).unwrap();
            let via_generator = LinearCode::from_generator(mollard_generator(&cl, &ct)).unwrap();
            assert_eq!(direct, via_generator);
        }
    }

    #[test]
    fn l3_t3_matches_brute_force_set() {
        let h = hamming_code_natural(2).unwrap();
        let f = MollardFrame::new(3, 3);
        let words: Vec<u64> = vec![0, 0b111];
        let mut expected = HashSet::new();
        for x in 0..1u64 << 9 {
            let xv = BitVector::from_u64(9, x);
            let (a, b) = p_vectors(&xv, &f).unwrap();
            for &y in &words {
                for &z in &words {
                    let v = f.join(&xv, &BitVector::from_u64(3, y).xor(&a), &BitVector::from_u64(3, z).xor(&b));
                    expected.insert(v.to_u64());
                }
            }
        }
        let code = mollard_code(&h, &h).unwrap();
        let actual: HashSet<u64> = (0..1u64 << 15)
            .filter(|&v| code.contains(&BitVector::from_u64(15, v)))
            .collect();
        assert_eq!(expected.len(), 1 << 11);
        assert_eq!(actual, expected);
        // minimum distance 3 by enumeration
        let min = actual.iter().filter(|&&v| v != 0).map(|v| v.count_ones()).min();
        assert_eq!(min, Some(3));
    }

    #[test]
    fn rejects_non_hamming_inputs() {
        let ext = hamming_code_natural(2).unwrap().extend();
        assert!(mollard_code(&ext, &hamming_code_natural(2).unwrap()).is_err());
    }

    #[test]
    fn construction_b_of_trivial_partitions() {
        let p = construction_b(&trivial(2), &trivial(3)).unwrap();
        assert_eq!(p.len(), 32);
        assert!(p.leaders_canonical());
        assert!(verify_partition(&p, VerifyMode::Algebraic).unwrap().is_valid());
        let u = uniformity(&p).unwrap();
        assert_eq!(u.uniformity_number, Some(1 + 4 + 21));
    }

    #[test]
    fn construction_b_at_fifteen_is_exhaustively_a_partition() {
        let p = construction_b(&trivial(2), &trivial(2)).unwrap();
        let cert = verify_partition(&p, VerifyMode::Exhaustive).unwrap();
        assert!(cert.is_valid());
        assert_eq!(uniformity(&p).unwrap().uniformity_number, Some(11));
    }

    #[test]
    fn intersection_structure_law() {
        let phelps = phelps_search(2, 1).unwrap().remove(0);
        let (pl, pt) = (trivial(2), phelps);
        let f = MollardFrame::new(3, 7);
        let p = construction_b(&pl, &pt).unwrap();
        assert!(verify_partition(&p, VerifyMode::Algebraic).unwrap().is_valid());
        let u = uniformity(&p).unwrap();
        for i in 0..=3 {
            for j in 0..=7 {
                for r in 0..=3 {
                    for s in 0..=7 {
                        let (a, b) = (f.component_index(i, j), f.component_index(r, s));
                        if a == b {
                            continue;
                        }
                        let expected = 21
                            + intersection_dim(pl.component(i).code(), pl.component(r).code()).unwrap()
                            + intersection_dim(pt.component(j).code(), pt.component(s).code()).unwrap();
                        assert_eq!(u.dim(a, b), expected);
                    }
                }
            }
        }
    }

    #[test]
    fn component_leaders_follow_grid() {
        let phelps = phelps_search(2, 1).unwrap().remove(0);
        let f = MollardFrame::new(7, 3);
        let p = construction_b(&phelps, &trivial(2)).unwrap();
        for i in 0..=7 {
            for j in 0..=3 {
                let idx = f.component_index(i, j);
                let expected = mollard_code(phelps.component(i).code(), trivial(2).component(j).code()).unwrap();
                assert_eq!(p.component(idx).code(), &expected);
            }
        }
    }
}
