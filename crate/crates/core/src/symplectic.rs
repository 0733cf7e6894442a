//! Integer symplectic matrices, `Γ_0(2)` coset representatives and the
//! transformation action on squared null-points.

use std::collections::{BTreeMap, VecDeque};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::theta::{is_even, SquaredThetaNullPoint};

/// A `2g × 2g` integer matrix with blocks `((α, β), (γ, δ))`, row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct SymplecticRep {
    g: usize,
    entries: Vec<i64>,
}

impl SymplecticRep {
    /// Builds a matrix from rows; checks the symplectic identity.
    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let n = rows.len();
        if n == 0 || n % 2 == 1 || n > 6 || rows.iter().any(|r| r.len() != n) {
            return Err(Error::Parse(
                "symplectic matrix must be 2g x 2g with g <= 3".into(),
            ));
        }
        let m = Self {
            g: n / 2,
            entries: rows.concat(),
        };
        if !m.is_symplectic() {
            return Err(Error::Parse("matrix is not symplectic".into()));
        }
        Ok(m)
    }

    /// The identity matrix.
    pub fn identity(g: usize) -> Self {
        let n = 2 * g;
        let mut entries = vec![0; n * n];
        for i in 0..n {
            entries[i * n + i] = 1;
        }
        Self { g, entries }
    }

    /// The standard form `E = ((0, 1), (-1, 0))`.
    pub fn standard_form(g: usize) -> Self {
        let n = 2 * g;
        let mut entries = vec![0; n * n];
        for i in 0..g {
            entries[i * n + g + i] = 1;
            entries[(g + i) * n + i] = -1;
        }
        Self { g, entries }
    }

    /// `((1, β), (γ, 1))`.
    pub fn from_blocks_unipotent(beta: &[[i64; 3]; 3], gamma: &[[i64; 3]; 3]) -> Self {
        let mut m = Self::identity(3);
        for r in 0..3 {
            for c in 0..3 {
                m.set(r, 3 + c, beta[r][c]);
                m.set(3 + r, c, gamma[r][c]);
            }
        }
        m
    }

    /// The genus.
    pub fn genus(&self) -> usize {
        self.g
    }

    /// Entry `(r, c)`.
    pub fn at(&self, r: usize, c: usize) -> i64 {
        self.entries[r * 2 * self.g + c]
    }

    fn set(&mut self, r: usize, c: usize, v: i64) {
        let n = 2 * self.g;
        self.entries[r * n + c] = v;
    }

    /// Rows as vectors.
    pub fn rows(&self) -> Vec<Vec<i64>> {
        self.entries
            .chunks(2 * self.g)
            .map(|r| r.to_vec())
            .collect()
    }

    /// Matrix product.
    pub fn mul(&self, o: &Self) -> Self {
        let n = 2 * self.g;
        let mut entries = vec![0; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.at(i, k);
                if a != 0 {
                    for j in 0..n {
                        entries[i * n + j] += a * o.at(k, j);
                    }
                }
            }
        }
        Self { g: self.g, entries }
    }

    /// Transpose.
    pub fn transpose(&self) -> Self {
        let n = 2 * self.g;
        let mut entries = vec![0; n * n];
        for i in 0..n {
            for j in 0..n {
                entries[j * n + i] = self.at(i, j);
            }
        }
        Self { g: self.g, entries }
    }

    /// `M E M^T = E`.
    pub fn is_symplectic(&self) -> bool {
        let e = Self::standard_form(self.g);
        self.mul(&e).mul(&self.transpose()) == e
    }

    /// Exact inverse `-E M^T E`.
    pub fn inverse(&self) -> Self {
        let e = Self::standard_form(self.g);
        let mut m = e.mul(&self.transpose()).mul(&e);
        for x in m.entries.iter_mut() {
            *x = -*x;
        }
        m
    }

    /// True when the lower-left block vanishes mod 2.
    pub fn in_gamma0_2(&self) -> bool {
        let g = self.g;
        (0..g).all(|r| (0..g).all(|c| self.at(g + r, c) % 2 == 0))
    }

    /// Reduced row-echelon basis over `F_2` of the row space of the bottom
    /// half `(γ | δ)`: the Lagrangian labelling the coset `Γ_0(2) M`.
    pub fn lagrangian_key(&self) -> Vec<Vec<u8>> {
        let g = self.g;
        let n = 2 * g;
        let mut m: Vec<Vec<u8>> = (0..g)
            .map(|r| {
                (0..n)
                    .map(|c| self.at(g + r, c).rem_euclid(2) as u8)
                    .collect()
            })
            .collect();
        let mut rank = 0;
        for c in 0..n {
            let Some(pr) = (rank..m.len()).find(|&k| m[k][c] == 1) else {
                continue;
            };
            m.swap(rank, pr);
            for k in 0..m.len() {
                if k != rank && m[k][c] == 1 {
                    let pivot = m[rank].clone();
                    for (x, y) in m[k].iter_mut().zip(pivot) {
                        *x ^= y;
                    }
                }
            }
            rank += 1;
        }
        m.truncate(rank);
        m
    }

    /// Index map and multiplier exponents of the transformation formula.
    pub fn plan(&self) -> ActionPlan {
        let g = self.g;
        let at = |r: usize, c: usize| self.at(r, c);
        let alpha = |r, c| at(r, c);
        let beta = |r, c| at(r, g + c);
        let gamma = |r, c| at(g + r, c);
        let delta = |r, c| at(g + r, g + c);
        let abt: Vec<i64> = (0..g)
            .map(|j| (0..g).map(|l| alpha(j, l) * beta(j, l)).sum())
            .collect();
        let gdt: Vec<i64> = (0..g)
            .map(|j| (0..g).map(|l| gamma(j, l) * delta(j, l)).sum())
            .collect();
        let size = 1usize << (2 * g);
        let mut target = vec![0u8; size];
        let mut power = vec![0u8; size];
        for i in 0..size {
            let bit = |v: usize, k: usize| ((v >> k) & 1) as i64;
            let a: Vec<i64> = (0..g).map(|k| bit(i, g + k)).collect();
            let b: Vec<i64> = (0..g).map(|k| bit(i, k)).collect();
            let x: Vec<i64> = (0..g)
                .map(|j| {
                    (0..g)
                        .map(|l| a[l] * delta(j, l) - b[l] * gamma(j, l))
                        .sum()
                })
                .collect();
            let y: Vec<i64> = (0..g)
                .map(|j| (0..g).map(|l| b[l] * alpha(j, l) - a[l] * beta(j, l)).sum())
                .collect();
            let ab: i64 = (0..g).map(|k| a[k] * b[k]).sum();
            let k: i64 = (0..g).map(|j| x[j] * (y[j] + 2 * abt[j])).sum::<i64>() - ab;
            let mut j_idx = 0usize;
            for c in 0..g {
                j_idx |= ((x[c] + gdt[c]).rem_euclid(2) as usize) << (g + c);
                j_idx |= ((y[c] + abt[c]).rem_euclid(2) as usize) << c;
            }
            target[i] = j_idx as u8;
            power[i] = k.rem_euclid(4) as u8;
        }
        ActionPlan { g, target, power }
    }
}

/// Precomputed action of one matrix: entry `i` moves to `target[i]` and is
/// multiplied by `√-1^{power[i]}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ActionPlan {
    g: usize,
    pub target: Vec<u8>,
    pub power: Vec<u8>,
}

impl ActionPlan {
    /// Applies the plan and normalizes.
    pub fn apply(&self, th: &SquaredThetaNullPoint) -> SquaredThetaNullPoint {
        debug_assert_eq!(self.g, th.genus());
        let f = th.field();
        let i = f.fourth_root_of_unity();
        let units = [f.one(), i, -f.one(), -i];
        let mut out = vec![f.zero(); th.values().len()];
        for (src, &v) in th.values().iter().enumerate() {
            if !v.is_zero() {
                out[self.target[src] as usize] = units[self.power[src] as usize] * v;
            }
        }
        SquaredThetaNullPoint::from_raw(self.g, out).normalized()
    }
}

/// The action of `M` on a squared null-point.
pub fn act(m: &SymplecticRep, th: &SquaredThetaNullPoint) -> Result<SquaredThetaNullPoint> {
    if m.genus() != th.genus() {
        return Err(Error::WrongType(format!(
            "matrix genus {} vs null-point genus {}",
            m.genus(),
            th.genus()
        )));
    }
    Ok(m.plan().apply(th))
}

/// One representative per right coset `Γ_0(2) \ Sp_{2g}(Z)` with its action plan.
#[derive(Clone, Debug)]
pub struct CosetTable {
    g: usize,
    reps: Vec<SymplecticRep>,
    plans: Vec<ActionPlan>,
}

impl CosetTable {
    /// The genus.
    pub fn genus(&self) -> usize {
        self.g
    }

    /// Representatives, sorted by Lagrangian key; the identity comes first.
    pub fn reps(&self) -> &[SymplecticRep] {
        &self.reps
    }

    /// Action plans aligned with [`CosetTable::reps`].
    pub fn plans(&self) -> &[ActionPlan] {
        &self.plans
    }

    /// Number of cosets.
    pub fn len(&self) -> usize {
        self.reps.len()
    }

    /// Always false for a genuine table.
    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }
}

fn generators(g: usize) -> Vec<SymplecticRep> {
    let n = 2 * g;
    let mut gens = Vec::new();
    for i in 0..g {
        for j in i..g {
            let mut upper = SymplecticRep::identity(g);
            let mut lower = SymplecticRep::identity(g);
            for (r, c) in [(i, j), (j, i)] {
                upper.set(r, g + c, 1);
                lower.set(g + r, c, 1);
            }
            gens.push(upper);
            gens.push(lower);
        }
    }
    gens.push(SymplecticRep::standard_form(g));
    debug_assert!(gens
        .iter()
        .all(|m| m.is_symplectic() && m.entries.len() == n * n));
    gens
}

/// Expected number of cosets `∏_{k=1}^{g} (2^k + 1)`.
pub fn coset_count(g: usize) -> usize {
    (1..=g).map(|k| (1usize << k) + 1).product()
}

/// Builds the coset table by breadth-first search over Lagrangians of `F_2^{2g}`,
/// right-multiplying by generators of `Sp_{2g}(Z)`.
pub fn coset_reps(g: usize) -> Result<CosetTable> {
    if !(1..=3).contains(&g) {
        return Err(Error::IndexOutOfRange { index: 0, g });
    }
    let gens = generators(g);
    let id = SymplecticRep::identity(g);
    let mut seen: BTreeMap<Vec<Vec<u8>>, SymplecticRep> = BTreeMap::new();
    seen.insert(id.lagrangian_key(), id.clone());
    let mut queue = VecDeque::from([id]);
    while let Some(m) = queue.pop_front() {
        for s in &gens {
            let next = m.mul(s);
            let key = next.lagrangian_key();
            if let std::collections::btree_map::Entry::Vacant(e) = seen.entry(key) {
                e.insert(next.clone());
                queue.push_back(next);
            }
        }
    }
    let reps: Vec<SymplecticRep> = seen.into_values().collect();
    if reps.len() != coset_count(g) {
        return Err(Error::InvariantViolation(format!(
            "found {} cosets for g={g}",
            reps.len()
        )));
    }
    let plans = reps.iter().map(|m| m.plan()).collect();
    Ok(CosetTable { g, reps, plans })
}

/// Indices whose `P_i` uses explicit blocks rather than `diag(b)`, `diag(a)`.
pub const SPECIAL_P_INDICES: [usize; 9] = [27, 31, 45, 47, 54, 55, 59, 61, 62];

const ONES: [[i64; 3]; 3] = [[1, 1, 1], [1, 1, 1], [1, 1, 1]];
const T12: [[i64; 3]; 3] = [[1, -1, 0], [-1, 1, 0], [0, 0, 0]];
const T13: [[i64; 3]; 3] = [[1, 0, -1], [0, 0, 0], [-1, 0, 1]];
const T23: [[i64; 3]; 3] = [[0, 0, 0], [0, 1, -1], [0, -1, 1]];

type Block = [[i64; 3]; 3];

fn special_blocks(i: usize) -> Option<(Block, Block)> {
    Some(match i {
        27 => ([[1, 1, 0], [1, 1, 0], [0, 0, 0]], T12),
        31 => (ONES, T12),
        45 => ([[1, 0, 1], [0, 0, 0], [1, 0, 1]], T13),
        47 => (ONES, T13),
        54 => ([[0, 0, 0], [0, 1, 1], [0, 1, 1]], T23),
        55 => (ONES, T23),
        59 => (T12, ONES),
        61 => (T13, ONES),
        62 => (T23, ONES),
        _ => return None,
    })
}

/// The matrix `P_i = ((1, β_i), (γ_i, 1))` moving a vanishing constant from
/// index 0 to the even index `i` (genus 3).
pub fn p_matrix(i: usize) -> Result<SymplecticRep> {
    if i >= 64 || !is_even(i, 3) {
        return Err(Error::IndexOutOfRange { index: i, g: 3 });
    }
    let (beta, gamma) = special_blocks(i).unwrap_or_else(|| {
        let mut beta = [[0; 3]; 3];
        let mut gamma = [[0; 3]; 3];
        for k in 0..3 {
            beta[k][k] = ((i >> k) & 1) as i64;
            gamma[k][k] = ((i >> (3 + k)) & 1) as i64;
        }
        (beta, gamma)
    });
    Ok(SymplecticRep::from_blocks_unipotent(&beta, &gamma))
}

/// Moves the unique vanishing even constant of a hyperelliptic genus-3
/// null-point to index 61 via `P_61 P_i^{-1}`.
pub fn normalize_vanishing_to_61(th: &SquaredThetaNullPoint) -> Result<SquaredThetaNullPoint> {
    if th.genus() != 3 {
        return Err(Error::WrongType(format!("genus {}", th.genus())));
    }
    let zeros: Vec<usize> = (0..64)
        .filter(|&i| is_even(i, 3) && th.get(i).is_zero())
        .collect();
    if zeros.len() != 1 {
        return Err(Error::WrongType(format!(
            "expected one vanishing even constant, found {}",
            zeros.len()
        )));
    }
    let i = zeros[0];
    let m = p_matrix(61)?.mul(&p_matrix(i)?.inverse());
    let out = act(&m, th)?;
    if !out.get(61).is_zero() {
        return Err(Error::InvariantViolation(format!(
            "normalization from index {i} did not reach 61"
        )));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        assert_eq!(coset_reps(2).unwrap().len(), 15);
        assert_eq!(coset_reps(3).unwrap().len(), 135);
        assert_eq!(coset_count(1), 3);
    }

    #[test]
    fn identity_first() {
        for g in [2, 3] {
            assert_eq!(coset_reps(g).unwrap().reps()[0], SymplecticRep::identity(g));
        }
    }

    #[test]
    fn p_matrices_are_symplectic() {
        for i in (0..64).filter(|&i| is_even(i, 3)) {
            let m = p_matrix(i).unwrap();
            assert!(m.is_symplectic(), "P_{i}");
            assert_eq!(m.mul(&m.inverse()), SymplecticRep::identity(3));
        }
        assert_eq!(p_matrix(27).unwrap().at(0, 3), 1);
        assert_eq!(p_matrix(27).unwrap().at(1, 3), 1);
        assert!(p_matrix(1 + 8).is_err());
    }

    #[test]
    fn plan_is_permutation_on_parity_classes() {
        let t = coset_reps(3).unwrap();
        for plan in t.plans() {
            let mut hit = [false; 64];
            for i in 0..64 {
                let j = plan.target[i] as usize;
                assert_eq!(is_even(i, 3), is_even(j, 3));
                assert!(!hit[j]);
                hit[j] = true;
            }
        }
    }
}
