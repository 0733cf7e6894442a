//! Squared theta null-points for genus 1, 2 and 3.
//!
//! A theta index packs a characteristic `(a, b)` with `a, b ∈ {0,1}^g`
//! as `i = b_1 + 2 b_2 + ... + 2^{g-1} b_g + 2^g a_1 + ... + 2^{2g-1} a_g`
//! (b-bits low, a-bits high). The index is even when `a·b ≡ 0 (mod 2)`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{FieldElement, PrimeField};

/// Largest supported genus.
pub const MAX_GENUS: usize = 3;

/// Decodes an index into `(a, b)` bitmasks, bit `k` holding `a_{k+1}` and `b_{k+1}`.
pub fn index_decode(i: usize, g: usize) -> Result<(u8, u8)> {
    if g == 0 || g > MAX_GENUS || i >= 1 << (2 * g) {
        return Err(Error::IndexOutOfRange { index: i, g });
    }
    let mask = (1usize << g) - 1;
    Ok(((i >> g) as u8, (i & mask) as u8))
}

/// Inverse of [`index_decode`].
pub fn index_encode(a: u8, b: u8, g: usize) -> usize {
    let mask = (1u8 << g) - 1;
    ((a & mask) as usize) << g | (b & mask) as usize
}

/// Parity of the characteristic.
pub fn is_even(i: usize, g: usize) -> bool {
    let mask = (1usize << g) - 1;
    ((i >> g) & i & mask).count_ones().is_multiple_of(2)
}

/// Even indices in increasing order.
pub fn even_indices(g: usize) -> Vec<usize> {
    (0..1 << (2 * g)).filter(|&i| is_even(i, g)).collect()
}

/// Sign choices for the square roots taken in [`recover_fundamental`].
///
/// `Flip(mask)` negates the canonical root at every free position `j`
/// whose bit is set in `mask`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum SignPolicy {
    #[default]
    Canonical,
    Flip(u8),
}

impl SignPolicy {
    fn flips(&self, j: usize) -> bool {
        match self {
            SignPolicy::Canonical => false,
            SignPolicy::Flip(m) => m >> j & 1 == 1,
        }
    }
}

/// A projective vector of `4^g` squared theta constants.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SquaredThetaNullPoint {
    g: usize,
    values: Vec<FieldElement>,
}

/// JSON shape of a null-point: either all `4^g` entries or only the even ones.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct NullPointJson {
    pub g: usize,
    pub compact: bool,
    pub values: Vec<[i64; 2]>,
}

impl SquaredThetaNullPoint {
    /// Validates and builds a null-point: odd entries zero, some even entry nonzero.
    pub fn new(g: usize, values: Vec<FieldElement>) -> Result<Self> {
        if g == 0 || g > MAX_GENUS || values.len() != 1 << (2 * g) {
            return Err(Error::InvalidNullPoint(format!(
                "genus {g} with {} entries",
                values.len()
            )));
        }
        let mut any = false;
        for (i, v) in values.iter().enumerate() {
            if is_even(i, g) {
                any |= !v.is_zero();
            } else if !v.is_zero() {
                return Err(Error::InvalidNullPoint(format!("odd index {i} is nonzero")));
            }
        }
        if !any {
            return Err(Error::InvalidNullPoint("all even entries vanish".into()));
        }
        Ok(Self { g, values })
    }

    pub(crate) fn from_raw(g: usize, values: Vec<FieldElement>) -> Self {
        Self { g, values }
    }

    /// The genus.
    pub fn genus(&self) -> usize {
        self.g
    }

    /// All `4^g` entries.
    pub fn values(&self) -> &[FieldElement] {
        &self.values
    }

    /// Entry at index `i`.
    pub fn get(&self, i: usize) -> FieldElement {
        self.values[i]
    }

    /// The underlying field.
    pub fn field(&self) -> PrimeField {
        self.values[0].field()
    }

    /// Rescales so that the first nonzero entry equals 1.
    pub fn normalized(mut self) -> Self {
        self.normalize();
        self
    }

    /// In-place version of [`SquaredThetaNullPoint::normalized`].
    pub fn normalize(&mut self) {
        if let Some(v) = self.values.iter().find(|v| !v.is_zero()) {
            let s = v.inv().expect("nonzero");
            for x in self.values.iter_mut() {
                *x *= s;
            }
        }
    }

    /// Projective equality.
    pub fn projectively_eq(&self, other: &Self) -> bool {
        self.g == other.g && self.clone().normalized().values == other.clone().normalized().values
    }

    /// Multiplies every entry by `c`.
    pub fn scaled(&self, c: FieldElement) -> Self {
        Self {
            g: self.g,
            values: self.values.iter().map(|&v| v * c).collect(),
        }
    }

    /// Number of vanishing even entries.
    pub fn n_van(&self) -> usize {
        (0..self.values.len())
            .filter(|&i| is_even(i, self.g) && self.values[i].is_zero())
            .count()
    }

    /// JSON form; `compact` keeps only the even entries.
    pub fn to_json(&self, compact: bool) -> NullPointJson {
        let pick = |i: usize| !compact || is_even(i, self.g);
        let values = (0..self.values.len())
            .filter(|&i| pick(i))
            .map(|i| {
                let [a, b] = self.values[i].pair();
                [a as i64, b as i64]
            })
            .collect();
        NullPointJson {
            g: self.g,
            compact,
            values,
        }
    }

    /// Parses a [`NullPointJson`] over `field`.
    pub fn from_json(field: PrimeField, j: &NullPointJson) -> Result<Self> {
        let g = j.g;
        if g == 0 || g > MAX_GENUS {
            return Err(Error::InvalidNullPoint(format!("genus {g}")));
        }
        let n = 1 << (2 * g);
        let pos: Vec<usize> = if j.compact {
            even_indices(g)
        } else {
            (0..n).collect()
        };
        if pos.len() != j.values.len() {
            return Err(Error::InvalidNullPoint(format!(
                "expected {} entries, got {}",
                pos.len(),
                j.values.len()
            )));
        }
        let mut values = vec![field.zero(); n];
        for (&i, &v) in pos.iter().zip(&j.values) {
            values[i] = field.from_pair(v);
        }
        Self::new(g, values)
    }

    /// For `g = 3` with `ϑ_0^2 .. ϑ_7^2` all nonzero, evaluates the squared
    /// product relation between the eight fundamental constants and the four
    /// constants at indices 32..35. Returns `None` when it does not apply.
    pub fn product_relation_holds(&self) -> Option<bool> {
        if self.g != 3 || self.values[..8].iter().any(|v| v.is_zero()) {
            return None;
        }
        let s = &self.values;
        let lhs =
            s[0] * s[1] * s[2] * s[3] + s[4] * s[5] * s[6] * s[7] - s[32] * s[33] * s[34] * s[35];
        let rhs = s[..8]
            .iter()
            .fold(s[0].field().from_i64(4), |acc, &v| acc * v);
        Some(lhs * lhs == rhs)
    }
}

/// The `2^g` fundamental theta constants `θ_j`, `j < 2^g`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FundamentalThetas {
    pub g: usize,
    pub theta: Vec<FieldElement>,
}

/// Recovers `θ_j` from `θ_j^2 = ϑ_j^2` up to the admissible sign choices.
///
/// For `g = 3` with no vanishing among the first eight squares, `θ_1..θ_6`
/// are free roots and `θ_7` is forced by the product relation. Otherwise
/// the first nonzero square is the pivot and every other root is free.
pub fn recover_fundamental(
    th: &SquaredThetaNullPoint,
    policy: SignPolicy,
) -> Result<FundamentalThetas> {
    let g = th.g;
    if !(2..=3).contains(&g) {
        return Err(Error::InvalidNullPoint(format!(
            "fundamental thetas need g in {{2,3}}, got {g}"
        )));
    }
    let n = 1 << g;
    let sq = &th.values[..n];
    let root = |x: FieldElement, j: usize| -> Result<FieldElement> {
        let r = x
            .sqrt()
            .ok_or_else(|| Error::InvariantViolation(format!("θ_{j}^2 ratio is not a square")))?;
        Ok(if policy.flips(j) { -r } else { r })
    };
    if g == 3 && sq.iter().all(|v| !v.is_zero()) {
        let v = &th.values;
        let i0 = sq[0].inv()?;
        let s: Vec<FieldElement> = sq.iter().map(|&x| x * i0).collect();
        let mut t = vec![s[0]];
        for (j, &sj) in s.iter().enumerate().take(7).skip(1) {
            t.push(root(sj, j)?);
        }
        let i0_4 = i0 * i0 * i0 * i0;
        let rhs = s[0] * s[1] * s[2] * s[3] + s[4] * s[5] * s[6] * s[7]
            - v[32] * v[33] * v[34] * v[35] * i0_4;
        let prod = t.iter().fold(th.field().from_i64(2), |acc, &x| acc * x);
        let t7 = rhs * prod.inv()?;
        if t7 * t7 != s[7] {
            return Err(Error::InvariantViolation(
                "product relation fails for θ_7".into(),
            ));
        }
        t.push(t7);
        return Ok(FundamentalThetas { g, theta: t });
    }
    let pivot = sq
        .iter()
        .position(|v| !v.is_zero())
        .ok_or_else(|| Error::InvalidNullPoint("first 2^g squared entries all vanish".into()))?;
    let ip = sq[pivot].inv()?;
    let mut t = Vec::with_capacity(n);
    for (j, &x) in sq.iter().enumerate() {
        if j == pivot {
            t.push(th.field().one());
        } else {
            t.push(root(x * ip, j)?);
        }
    }
    Ok(FundamentalThetas { g, theta: t })
}

/// The (2,…,2)-isogeny with the standard kernel via the duplication formula:
/// `ϑ'_i^2 = Σ_j (-1)^{a·j} θ_j θ_{b ⊕ j}` for even `i = (a, b)`.
pub fn isogeny_step(th: &SquaredThetaNullPoint) -> Result<SquaredThetaNullPoint> {
    isogeny_step_with(th, SignPolicy::Canonical)
}

/// [`isogeny_step`] with explicit sign choices.
pub fn isogeny_step_with(
    th: &SquaredThetaNullPoint,
    policy: SignPolicy,
) -> Result<SquaredThetaNullPoint> {
    let ft = recover_fundamental(th, policy)?;
    let g = th.g;
    let n = 1usize << g;
    let t = &ft.theta;
    let zero = th.field().zero();
    let mut prod = vec![zero; n * n];
    for j in 0..n {
        for k in j..n {
            let v = t[j] * t[k];
            prod[j * n + k] = v;
            prod[k * n + j] = v;
        }
    }
    let mut out = vec![zero; n * n];
    for (i, o) in out.iter_mut().enumerate() {
        if !is_even(i, g) {
            continue;
        }
        let a = i >> g;
        let b = i & (n - 1);
        let mut s = zero;
        for j in 0..n {
            let term = prod[j * n + (b ^ j)];
            if (a & j).count_ones() % 2 == 1 {
                s -= term;
            } else {
                s += term;
            }
        }
        *o = s;
    }
    let out = SquaredThetaNullPoint { g, values: out };
    if out.values.iter().all(|v| v.is_zero()) {
        return Err(Error::InvalidNullPoint(
            "isogeny step produced the zero vector".into(),
        ));
    }
    Ok(out.normalized())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decode_examples() {
        assert_eq!(index_decode(61, 3).unwrap(), (0b111, 0b101));
        assert!(is_even(61, 3));
        assert_eq!(index_decode(0, 3).unwrap(), (0, 0));
        assert_eq!(index_decode(7, 3).unwrap(), (0, 0b111));
        assert!(is_even(7, 3));
        assert!(index_decode(64, 3).is_err());
    }

    #[test]
    fn even_counts() {
        assert_eq!(even_indices(1), vec![0, 1, 2]);
        assert_eq!(even_indices(2), vec![0, 1, 2, 3, 4, 6, 8, 9, 12, 15]);
        assert_eq!(even_indices(3).len(), 36);
    }

    #[test]
    fn rejects_odd_nonzero_and_zero_vectors() {
        let f = PrimeField::new(11).unwrap();
        let mut v = vec![f.one(); 4];
        assert!(SquaredThetaNullPoint::new(1, v.clone()).is_err());
        v[3] = f.zero();
        assert!(SquaredThetaNullPoint::new(1, v).is_ok());
        assert!(SquaredThetaNullPoint::new(1, vec![f.zero(); 4]).is_err());
    }

    #[test]
    fn genus2_all_ones_recovers_ones() {
        let f = PrimeField::new(11).unwrap();
        let v: Vec<_> = (0..16)
            .map(|i| if is_even(i, 2) { f.one() } else { f.zero() })
            .collect();
        let th = SquaredThetaNullPoint::new(2, v).unwrap();
        let ft = recover_fundamental(&th, SignPolicy::Canonical).unwrap();
        assert!(ft.theta.iter().all(|x| x.is_one()));
    }
}
