//! Initial vertices: supersingular Legendre parameters, their elliptic
//! null-points, and products of null-points.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{FieldElement, PrimeField};
use crate::theta::{index_encode, NullPointJson, SquaredThetaNullPoint};

/// Exhaustive root search is used below this characteristic.
const EXHAUSTIVE_LIMIT: u64 = 400;

/// A supersingular elliptic curve `y^2 = x(x-1)(x-λ)` with its null-point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EllipticSeed {
    pub lambda: FieldElement,
    pub j: FieldElement,
    pub theta: SquaredThetaNullPoint,
}

/// JSON shape of a seed.
#[derive(Serialize)]
pub struct SeedJson {
    pub lambda: FieldElement,
    pub j: FieldElement,
    pub theta: NullPointJson,
}

impl EllipticSeed {
    /// JSON form.
    pub fn to_json(&self) -> SeedJson {
        SeedJson {
            lambda: self.lambda,
            j: self.j,
            theta: self.theta.to_json(false),
        }
    }
}

/// `H(λ) = Σ_{i ≤ m} C(m, i)^2 λ^i` with `m = (p-1)/2`, constant term first.
pub fn hasse_polynomial(f: PrimeField) -> Vec<FieldElement> {
    let m = (f.p() - 1) / 2;
    let mut out = Vec::with_capacity(m as usize + 1);
    let mut c = f.one();
    for i in 0..=m {
        out.push(c * c);
        // C(m, i+1) = C(m, i) (m - i) / (i + 1)
        if i < m {
            c = c * f.from_i64((m - i) as i64) / f.from_i64((i + 1) as i64);
        }
    }
    out
}

fn eval(poly: &[FieldElement], x: FieldElement) -> FieldElement {
    poly.iter()
        .rev()
        .fold(x.field().zero(), |acc, &c| acc * x + c)
}

/// `j(λ) = 256 (λ^2 - λ + 1)^3 / (λ^2 (λ-1)^2)`.
pub fn j_invariant(l: FieldElement) -> Result<FieldElement> {
    let f = l.field();
    let num = l * l - l + f.one();
    let den = l * l * (l - f.one()) * (l - f.one());
    Ok(f.from_i64(256) * num * num * num * den.inv()?)
}

fn monic(mut a: Vec<FieldElement>) -> Vec<FieldElement> {
    trim(&mut a);
    let lead = a.last().copied().expect("nonempty");
    if !lead.is_zero() {
        let li = lead.inv().expect("nonzero");
        for x in a.iter_mut() {
            *x *= li;
        }
    }
    a
}

fn trim(a: &mut Vec<FieldElement>) {
    while a.len() > 1 && a.last().is_some_and(|x| x.is_zero()) {
        a.pop();
    }
}

fn rem(a: &[FieldElement], b: &[FieldElement]) -> Vec<FieldElement> {
    let mut r = a.to_vec();
    trim(&mut r);
    let lb = b.last().expect("nonempty").inv().expect("monic divisor");
    while r.len() >= b.len() && !(r.len() == 1 && r[0].is_zero()) {
        let q = *r.last().expect("nonempty") * lb;
        let s = r.len() - b.len();
        for (i, &c) in b.iter().enumerate() {
            r[s + i] -= q * c;
        }
        r.pop();
        if r.is_empty() {
            r.push(b[0].field().zero());
        }
        trim(&mut r);
    }
    r
}

fn mulmod(a: &[FieldElement], b: &[FieldElement], m: &[FieldElement]) -> Vec<FieldElement> {
    let f = m[0].field();
    let mut out = vec![f.zero(); a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    rem(&out, m)
}

fn gcd(a: &[FieldElement], b: &[FieldElement]) -> Vec<FieldElement> {
    let (mut a, mut b) = (monic(a.to_vec()), monic(b.to_vec()));
    while !(b.len() == 1 && b[0].is_zero()) {
        let r = rem(&a, &b);
        a = b;
        b = monic(r);
    }
    monic(a)
}

/// Roots of a squarefree polynomial splitting into linear factors over
/// `F_{p^2}`, by equal-degree splitting with `(x + δ)^{(q-1)/2} - 1`.
fn split_roots(h: &[FieldElement], out: &mut Vec<FieldElement>) {
    let f = h[0].field();
    let h = monic(h.to_vec());
    match h.len() {
        0 | 1 => return,
        2 => {
            out.push(-h[0]);
            return;
        }
        _ => {}
    }
    let q = f.p() * f.p();
    for delta in f.elements() {
        let mut base = rem(&[delta, f.one()], &h);
        let mut acc = vec![f.one()];
        let mut e = (q - 1) / 2;
        while e > 0 {
            if e & 1 == 1 {
                acc = mulmod(&acc, &base, &h);
            }
            base = mulmod(&base, &base, &h);
            e >>= 1;
        }
        acc[0] -= f.one();
        let d = gcd(&h, &acc);
        if d.len() > 1 && d.len() < h.len() {
            let quo = exact_div(&h, &d);
            split_roots(&d, out);
            split_roots(&quo, out);
            return;
        }
    }
}

/// All roots of the Hasse polynomial in `F_{p^2}`, canonically sorted.
pub fn supersingular_lambda_roots(f: PrimeField) -> Vec<FieldElement> {
    let h = hasse_polynomial(f);
    let mut roots = Vec::new();
    if f.p() < EXHAUSTIVE_LIMIT {
        roots.extend(f.elements().filter(|&x| eval(&h, x).is_zero()));
    } else {
        split_roots(&h, &mut roots);
    }
    roots.sort();
    roots
}

/// Splits `h` until one linear factor remains, always keeping the smaller
/// part, and returns its root.
fn one_root(h: &[FieldElement]) -> Option<FieldElement> {
    let f = h[0].field();
    let mut h = monic(h.to_vec());
    let q = f.p() * f.p();
    'outer: while h.len() > 2 {
        for delta in f.elements() {
            let mut base = rem(&[delta, f.one()], &h);
            let mut acc = vec![f.one()];
            let mut e = (q - 1) / 2;
            while e > 0 {
                if e & 1 == 1 {
                    acc = mulmod(&acc, &base, &h);
                }
                base = mulmod(&base, &base, &h);
                e >>= 1;
            }
            acc[0] -= f.one();
            let d = gcd(&h, &acc);
            if d.len() > 1 && d.len() < h.len() {
                h = if 2 * (d.len() - 1) < h.len() {
                    d
                } else {
                    monic(exact_div(&h, &d))
                };
                continue 'outer;
            }
        }
        return None;
    }
    (h.len() == 2).then(|| -h[0])
}

fn exact_div(h: &[FieldElement], d: &[FieldElement]) -> Vec<FieldElement> {
    let f = h[0].field();
    let mut other = h.to_vec();
    let mut quo = vec![f.zero(); h.len() - d.len() + 1];
    while other.len() >= d.len() {
        let c = *other.last().expect("nonempty");
        let s = other.len() - d.len();
        quo[s] = c;
        for (i, &dc) in d.iter().enumerate() {
            other[s + i] -= c * dc;
        }
        other.pop();
    }
    quo
}

/// One supersingular Legendre parameter with `λ` and `λ - 1` both squares.
pub fn first_supersingular_lambda(f: PrimeField) -> Option<FieldElement> {
    let h = hasse_polynomial(f);
    let root = if f.p() < EXHAUSTIVE_LIMIT {
        f.elements().find(|&x| eval(&h, x).is_zero())?
    } else {
        one_root(&h)?
    };
    let mut orbit = legendre_orbit(root);
    orbit.sort();
    orbit
        .into_iter()
        .find(|&x| x.is_square() && (x - f.one()).is_square())
}

/// The six Legendre parameters of the same curve.
pub fn legendre_orbit(l: FieldElement) -> Vec<FieldElement> {
    let o = l.field().one();
    let li = l.inv().expect("λ ≠ 0");
    let mi = (o - l).inv().expect("λ ≠ 1");
    vec![
        l,
        li,
        o - l,
        mi,
        l * (l - o).inv().expect("λ ≠ 1"),
        (l - o) * li,
    ]
}

/// Null-point `[√λ : √(λ-1) : 1 : 0]` at indices `(a,b) = (0,0), (0,1), (1,0), (1,1)`.
pub fn elliptic_theta(l: FieldElement) -> Result<SquaredThetaNullPoint> {
    let f = l.field();
    let r1 = l
        .sqrt()
        .ok_or_else(|| Error::InvalidNullPoint(format!("{l} is not a square")))?;
    let r2 = (l - f.one())
        .sqrt()
        .ok_or_else(|| Error::InvalidNullPoint(format!("{l}-1 is not a square")))?;
    SquaredThetaNullPoint::new(1, vec![r1, r2, f.one(), f.zero()])
}

/// One seed per supersingular `j`-invariant, sorted by `j`. The Legendre
/// representative is the smallest orbit element with `λ` and `λ - 1` squares.
pub fn supersingular_lambdas(f: PrimeField) -> Result<Vec<EllipticSeed>> {
    let mut by_j: std::collections::BTreeMap<FieldElement, FieldElement> = Default::default();
    for l in supersingular_lambda_roots(f) {
        by_j.entry(j_invariant(l)?).or_insert(l);
    }
    let mut seeds = Vec::with_capacity(by_j.len());
    for (j, l) in by_j {
        let mut orbit = legendre_orbit(l);
        orbit.sort();
        let lambda = orbit
            .into_iter()
            .find(|&x| x.is_square() && (x - f.one()).is_square())
            .ok_or_else(|| {
                Error::InvalidNullPoint(format!("no Legendre representative for j = {j}"))
            })?;
        seeds.push(EllipticSeed {
            lambda,
            j,
            theta: elliptic_theta(lambda)?,
        });
    }
    Ok(seeds)
}

/// Null-point of a product: the entry at `((a_1, a_2), (b_1, b_2))` is
/// `Θ_1[(a_1, b_1)] · Θ_2[(a_2, b_2)]`, first factor in the low bit positions.
pub fn product_theta(
    t1: &SquaredThetaNullPoint,
    t2: &SquaredThetaNullPoint,
) -> Result<SquaredThetaNullPoint> {
    let (g1, g2) = (t1.genus(), t2.genus());
    let g = g1 + g2;
    if !(2..=3).contains(&g) {
        return Err(Error::WrongType(format!("product genus {g}")));
    }
    let f = t1.field();
    let mut out = vec![f.zero(); 1 << (2 * g)];
    for i1 in 0..1usize << (2 * g1) {
        let (a1, b1) = ((i1 >> g1) as u8, (i1 & ((1 << g1) - 1)) as u8);
        for i2 in 0..1usize << (2 * g2) {
            let (a2, b2) = ((i2 >> g2) as u8, (i2 & ((1 << g2) - 1)) as u8);
            out[index_encode(a1 | a2 << g1, b1 | b2 << g1, g)] = t1.get(i1) * t2.get(i2);
        }
    }
    SquaredThetaNullPoint::new(g, out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hasse_roots_are_supersingular_counts() {
        for (p, n) in [(11, 2), (13, 1), (17, 2), (19, 2)] {
            let f = PrimeField::new(p).unwrap();
            assert_eq!(supersingular_lambdas(f).unwrap().len(), n, "p={p}");
        }
    }

    #[test]
    fn splitting_matches_scan() {
        let f = PrimeField::new(101).unwrap();
        let h = hasse_polynomial(f);
        let mut split = Vec::new();
        split_roots(&h, &mut split);
        split.sort();
        let scan: Vec<_> = f.elements().filter(|&x| eval(&h, x).is_zero()).collect();
        assert_eq!(split, scan);
        assert_eq!(scan.len(), 50);
    }
}
