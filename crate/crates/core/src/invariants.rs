//! Isomorphism-class fingerprints: Igusa invariants of genus-2 curves,
//! Shioda invariants of binary octics, a Dixmier–Ohno style system of
//! ternary-quartic invariants, and weighted-projective normalization.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{FieldElement, PrimeField};
use crate::linalg::det;
use crate::poly::{ternary_index, ternary_monomials, BinaryForm, TernaryForm};
use crate::reconstruct::{HyperellipticModel, QuarticModel};

/// Invariant values with their weights.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeightedTuple {
    pub weights: Vec<u32>,
    pub values: Vec<FieldElement>,
}

/// Canonical weighted-projective key `t_i = v_i^{w_k} / v_k^{w_i}` with `k`
/// the first nonzero position.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct InvariantFingerprint(String);

impl InvariantFingerprint {
    /// Hex encoding of `(pivot, normalized)`.
    pub fn hex(&self) -> &str {
        &self.0
    }

    /// Wraps an existing hex key.
    pub fn from_hex(s: &str) -> Self {
        Self(s.to_string())
    }
}

/// Weight-zero normalization of a tuple.
pub fn fingerprint(t: &WeightedTuple) -> Result<InvariantFingerprint> {
    let k = t
        .values
        .iter()
        .position(|v| !v.is_zero())
        .ok_or(Error::ZeroInvariants)?;
    let vk = t.values[k];
    let mut bytes = vec![k as u8];
    for (v, &w) in t.values.iter().zip(&t.weights) {
        let n = v.pow(t.weights[k] as u64) * vk.pow(w as u64).inv()?;
        bytes.extend_from_slice(&(n.c0() as u32).to_be_bytes());
        bytes.extend_from_slice(&(n.c1() as u32).to_be_bytes());
    }
    Ok(InvariantFingerprint(hex::encode(bytes)))
}

type Point = (FieldElement, FieldElement);

fn bracket_sq(p: Point, q: Point) -> FieldElement {
    let b = p.0 * q.1 - q.0 * p.1;
    b * b
}

/// Igusa–Clebsch `I_2, I_4, I_6, I_10` of the binary sextic with the given
/// six projective roots and unit leading constant.
pub fn igusa_clebsch_from_roots(roots: &[Point]) -> Result<[FieldElement; 4]> {
    if roots.len() != 6 {
        return Err(Error::NotSmooth(format!(
            "{} roots for a sextic",
            roots.len()
        )));
    }
    let f = roots[0].0.field();
    let mut d = [[f.zero(); 6]; 6];
    for i in 0..6 {
        for j in 0..6 {
            d[i][j] = bracket_sq(roots[i], roots[j]);
        }
    }
    let mut i2 = f.zero();
    let mut i4 = f.zero();
    let mut i6 = f.zero();
    for pairing in pairings(&[0, 1, 2, 3, 4, 5]) {
        i2 += pairing.iter().fold(f.one(), |acc, &(a, b)| acc * d[a][b]);
    }
    for b in 1..6 {
        for c in b + 1..6 {
            let s = [0, b, c];
            let rest: Vec<usize> = (1..6).filter(|&x| x != b && x != c).collect();
            let (x, y, z) = (rest[0], rest[1], rest[2]);
            let core = d[0][b] * d[b][c] * d[c][0] * d[x][y] * d[y][z] * d[z][x];
            i4 += core;
            for perm in [
                [x, y, z],
                [x, z, y],
                [y, x, z],
                [y, z, x],
                [z, x, y],
                [z, y, x],
            ] {
                i6 += core * d[s[0]][perm[0]] * d[s[1]][perm[1]] * d[s[2]][perm[2]];
            }
        }
    }
    let mut i10 = f.one();
    for (i, row) in d.iter().enumerate() {
        for &dij in &row[i + 1..] {
            i10 *= dij;
        }
    }
    if i10.is_zero() {
        return Err(Error::NotSmooth("repeated root".into()));
    }
    Ok([i2, i4, i6, i10])
}

fn pairings(s: &[usize]) -> Vec<Vec<(usize, usize)>> {
    if s.is_empty() {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for k in 1..s.len() {
        let rest: Vec<usize> = s[1..].iter().copied().filter(|&x| x != s[k]).collect();
        for mut p in pairings(&rest) {
            p.insert(0, (s[0], s[k]));
            out.push(p);
        }
    }
    out
}

/// Igusa `J_2, J_4, J_6, J_8, J_10` from the six branch points.
pub fn igusa_from_roots(roots: &[Point]) -> Result<WeightedTuple> {
    let [i2, i4, i6, i10] = igusa_clebsch_from_roots(roots)?;
    let f = i2.field();
    let c = |n: i64| f.from_i64(n);
    let j2 = i2 / c(8);
    let j4 = (c(4) * j2 * j2 - i4) / c(96);
    let j6 = (c(8) * j2 * j2 * j2 - c(160) * j2 * j4 - i6) / c(576);
    let j8 = (j2 * j6 - j4 * j4) / c(4);
    let j10 = i10 / c(4096);
    Ok(WeightedTuple {
        weights: vec![2, 4, 6, 8, 10],
        values: vec![j2, j4, j6, j8, j10],
    })
}

/// Igusa invariants of a genus-2 model.
pub fn igusa(model: &HyperellipticModel) -> Result<WeightedTuple> {
    if model.g != 2 {
        return Err(Error::WrongType(format!(
            "Igusa invariants need genus 2, got {}",
            model.g
        )));
    }
    igusa_from_roots(&model.branch_points())
}

/// The binary form `∏ (z_k X - x_k Z)` with coefficient `i` on `X^{n-i} Z^i`.
pub fn form_from_roots(roots: &[Point]) -> BinaryForm {
    let f = roots[0].0.field();
    let mut c = BinaryForm {
        coeffs: vec![f.one()],
    };
    for &(x, z) in roots {
        c = c.mul(&BinaryForm {
            coeffs: vec![z, -x],
        });
    }
    c
}

/// Shioda invariants `J_2 .. J_10` of a binary octic.
pub fn shioda_octic(f: &BinaryForm) -> Result<WeightedTuple> {
    if f.deg() != 8 {
        return Err(Error::WrongType(format!(
            "octic expected, degree {}",
            f.deg()
        )));
    }
    let g = f.transvectant(f, 4);
    let k = f.transvectant(f, 6);
    let h = k.transvectant(&k, 2);
    let m = f.transvectant(&k, 4);
    let n = f.transvectant(&h, 4);
    let p = g.transvectant(&k, 4);
    let q = g.transvectant(&h, 4);
    let values = [
        f.transvectant(f, 8),
        f.transvectant(&g, 8),
        k.transvectant(&k, 4),
        m.transvectant(&k, 4),
        k.transvectant(&h, 4),
        m.transvectant(&h, 4),
        p.transvectant(&h, 4),
        n.transvectant(&h, 4),
        q.transvectant(&h, 4),
    ]
    .iter()
    .map(|t| t.coeffs[0])
    .collect();
    Ok(WeightedTuple {
        weights: (2..=10).collect(),
        values,
    })
}

/// Shioda invariants of a genus-3 model, via the octic of its branch points.
pub fn shioda(model: &HyperellipticModel) -> Result<WeightedTuple> {
    if model.g != 3 {
        return Err(Error::WrongType(format!(
            "Shioda invariants need genus 3, got {}",
            model.g
        )));
    }
    shioda_octic(&form_from_roots(&model.branch_points()))
}

/// Weights of [`dixmier_ohno`].
pub const DIXMIER_OHNO_WEIGHTS: [u32; 13] = [3, 6, 9, 9, 12, 12, 15, 15, 18, 18, 21, 21, 27];

/// The order-4 and order-6 contravariants `σ, ψ`: the restriction of `f`
/// to the line `u^⊥` is a binary quartic, and `σ, ψ` are its apolar
/// invariant and Hankel determinant as forms in `u`.
fn contravariants(f: &TernaryForm) -> (TernaryForm, TernaryForm) {
    let fld = f.coeffs[0].field();
    // b[i] = coefficient of s^{4-i} t^i in f(u3 s, u3 t, -u1 s - u2 t) / C(4, i)
    let mut b: Vec<TernaryForm> = (0..5).map(|_| TernaryForm::zero(fld, 4)).collect();
    let binom = |n: usize, k: usize| -> i64 {
        (0..k).fold(1, |acc, i| acc * (n - i) as i64 / (i + 1) as i64)
    };
    for (e, &c) in ternary_monomials(4).iter().zip(&f.coeffs) {
        if c.is_zero() {
            continue;
        }
        let (eb, ec) = (e[1], e[2]);
        for k in 0..=ec {
            let sign = if ec % 2 == 0 { 1 } else { -1 };
            let coef = c.scale(sign * binom(ec, k));
            let ti = eb + ec - k;
            b[ti].coeffs[ternary_index(4, k, ec - k)] += coef;
        }
    }
    for (i, bi) in b.iter_mut().enumerate() {
        *bi = bi.scale(fld.from_i64(binom(4, i)).inv().expect("p > 7"));
    }
    let three = fld.from_i64(3);
    let four = fld.from_i64(4);
    let sigma = b[0]
        .mul(&b[4])
        .sub(&b[1].mul(&b[3]).scale(four))
        .add(&b[2].mul(&b[2]).scale(three));
    let psi = b[0]
        .mul(&b[2].mul(&b[4]).sub(&b[3].mul(&b[3])))
        .sub(&b[1].mul(&b[1].mul(&b[4]).sub(&b[2].mul(&b[3]))))
        .add(&b[2].mul(&b[1].mul(&b[3]).sub(&b[2].mul(&b[2]))));
    (strip_u3(&sigma, 4), strip_u3(&psi, 6))
}

/// Divides a form by `u3^k`, which divides it by construction.
fn strip_u3(g: &TernaryForm, k: usize) -> TernaryForm {
    let fld = g.coeffs[0].field();
    let d = g.deg - k;
    let mut out = TernaryForm::zero(fld, d);
    for (e, &c) in ternary_monomials(g.deg).iter().zip(&g.coeffs) {
        if c.is_zero() {
            continue;
        }
        debug_assert!(e[2] >= k, "u3^{k} must divide the form");
        out.coeffs[ternary_index(d, e[0], e[1])] = c;
    }
    out
}

/// Symmetric matrix of a quadric, halving the off-diagonal coefficients.
fn quadric_matrix(q: &TernaryForm) -> [[FieldElement; 3]; 3] {
    let f = q.coeffs[0].field();
    let half = f.from_i64(2).inv().expect("odd p");
    let mut m = [[f.zero(); 3]; 3];
    for (e, &c) in ternary_monomials(2).iter().zip(&q.coeffs) {
        let idx: Vec<usize> = (0..3).flat_map(|v| std::iter::repeat_n(v, e[v])).collect();
        let (i, j) = (idx[0], idx[1]);
        if i == j {
            m[i][i] += c;
        } else {
            m[i][j] += c * half;
            m[j][i] += c * half;
        }
    }
    m
}

fn det3(m: &[[FieldElement; 3]; 3]) -> FieldElement {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

fn adj3(m: &[[FieldElement; 3]; 3]) -> [[FieldElement; 3]; 3] {
    std::array::from_fn(|j| {
        std::array::from_fn(|i| {
            let (r0, r1) = ((i + 1) % 3, (i + 2) % 3);
            let (c0, c1) = ((j + 1) % 3, (j + 2) % 3);
            m[r0][c0] * m[r1][c1] - m[r0][c1] * m[r1][c0]
        })
    })
}

fn hessian(f: &TernaryForm) -> TernaryForm {
    let d: Vec<Vec<TernaryForm>> = (0..3)
        .map(|i| (0..3).map(|j| f.deriv(i).deriv(j)).collect())
        .collect();
    let m2 = |a: &TernaryForm, b: &TernaryForm, c: &TernaryForm, e: &TernaryForm| {
        a.mul(e).sub(&b.mul(c))
    };
    d[0][0]
        .mul(&m2(&d[1][1], &d[1][2], &d[2][1], &d[2][2]))
        .sub(&d[0][1].mul(&m2(&d[1][0], &d[1][2], &d[2][0], &d[2][2])))
        .add(&d[0][2].mul(&m2(&d[1][0], &d[1][1], &d[2][0], &d[2][1])))
}

/// Macaulay resultant of the three partial derivatives: the discriminant,
/// of degree 27 in the coefficients.
pub fn quartic_discriminant(q: &QuarticModel) -> FieldElement {
    let f = q.field();
    let base = q.form();
    let c = |n: i64| f.from_i64(n);
    let (o, z) = (c(1), c(0));
    // Unimodular changes of variables `U(a, b, e) L(d)`, tried in order until
    // the extraneous Macaulay minor is nonzero.
    for t in 0..64i64 {
        let (a, b, e, d) = (t % 3, t / 3 % 3, t / 9 % 3, t / 27);
        let u = [[o, c(a), c(e)], [z, o, c(b)], [z, z, o]];
        let l = [[o, z, z], [c(d), o, z], [c(-d), c(d), o]];
        let mut m = [[z; 3]; 3];
        for r in 0..3 {
            for k in 0..3 {
                m[r][k] = (0..3).fold(z, |s, j| s + u[r][j] * l[j][k]);
            }
        }
        if let Some(r) = macaulay(&base.substitute(&m)) {
            return r;
        }
    }
    z
}

fn macaulay(form: &TernaryForm) -> Option<FieldElement> {
    let f = form.coeffs[0].field();
    let parts = [form.deriv(0), form.deriv(1), form.deriv(2)];
    let mons = ternary_monomials(7);
    let n = mons.len();
    let mut mat = vec![vec![f.zero(); n]; n];
    let mut non_reduced = Vec::new();
    for (r, e) in mons.iter().enumerate() {
        let divisible: Vec<usize> = (0..3).filter(|&v| e[v] >= 3).collect();
        if divisible.len() >= 2 {
            non_reduced.push(r);
        }
        let v = divisible[0];
        let mut shift = *e;
        shift[v] -= 3;
        for (pe, &pc) in ternary_monomials(3).iter().zip(&parts[v].coeffs) {
            mat[r][ternary_index(7, pe[0] + shift[0], pe[1] + shift[1])] = pc;
        }
    }
    let minor: Vec<Vec<FieldElement>> = non_reduced
        .iter()
        .map(|&r| non_reduced.iter().map(|&c| mat[r][c]).collect())
        .collect();
    let dm = det(&minor);
    if dm.is_zero() {
        return None;
    }
    Some(det(&mat) * dm.inv().ok()?)
}

/// Thirteen invariants of degrees 3, 6, 9, 9, 12, 12, 15, 15, 18, 18, 21, 21, 27
/// of a smooth ternary quartic, built from the contravariants `σ, ψ`, the
/// Hessian and differential-operator contractions. The last entry is the
/// discriminant and must be nonzero.
pub fn dixmier_ohno(q: &QuarticModel) -> Result<WeightedTuple> {
    let disc = quartic_discriminant(q);
    if disc.is_zero() {
        return Err(Error::NotSmooth("quartic discriminant vanishes".into()));
    }
    let f = q.form();
    let (sigma, psi) = contravariants(&f);
    let h = hessian(&f);
    let rho = f.apply(&psi);
    let tau = rho.apply(&f);
    let tau2 = sigma.apply(&h);
    let xi = tau.apply(&sigma);
    let eta = xi.apply(&f);
    let chi = tau.apply(&tau.apply(&psi));
    let (mr, mt, mx) = (
        quadric_matrix(&rho),
        quadric_matrix(&tau),
        quadric_matrix(&xi),
    );
    let (at, ar) = (adj3(&mt), adj3(&mr));
    let mut i18 = disc.field().zero();
    for i in 0..3 {
        for j in 0..3 {
            i18 += at[i][j] * ar[j][i];
        }
    }
    let values = vec![
        sigma.apply(&f).scalar(),
        psi.apply(&h).scalar(),
        rho.apply(&tau).scalar(),
        rho.apply(&tau2).scalar(),
        det3(&mr),
        xi.apply(&tau).scalar(),
        det3(&mt),
        xi.apply(&eta).scalar(),
        i18,
        chi.apply(&tau).scalar(),
        det3(&mx),
        chi.apply(&eta).scalar(),
        disc,
    ];
    Ok(WeightedTuple {
        weights: DIXMIER_OHNO_WEIGHTS.to_vec(),
        values,
    })
}

/// Field of a tuple, for callers holding only invariants.
pub fn tuple_field(t: &WeightedTuple) -> PrimeField {
    t.values[0].field()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fingerprint_scaling() {
        let f = PrimeField::new(13).unwrap();
        let t = WeightedTuple {
            weights: vec![2, 3, 5],
            values: vec![f.from_i64(3), f.from_i64(5), f.from_i64(7)],
        };
        let c = f.element(2, 9);
        let s = WeightedTuple {
            weights: t.weights.clone(),
            values: t
                .values
                .iter()
                .zip(&t.weights)
                .map(|(&v, &w)| v * c.pow(w as u64))
                .collect(),
        };
        assert_eq!(fingerprint(&t).unwrap(), fingerprint(&s).unwrap());
        let z = WeightedTuple {
            weights: vec![1],
            values: vec![f.zero()],
        };
        assert!(fingerprint(&z).is_err());
    }

    #[test]
    fn fifteen_pairings() {
        assert_eq!(pairings(&[0, 1, 2, 3, 4, 5]).len(), 15);
    }
}
