//! Superspeciality oracle: Cartier–Manin matrices of hyperelliptic curves
//! and Hasse–Witt matrices of plane quartics, by direct coefficient
//! extraction. Independent of the theta pipeline: only field arithmetic and
//! the quartic discriminant for the smoothness check are shared.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{FieldElement, PrimeField};
use crate::invariants::quartic_discriminant;
use crate::reconstruct::QuarticModel;

/// A `g × g` Frobenius matrix; zero exactly for superspecial curves.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CartierManinMatrix {
    pub g: usize,
    pub entries: Vec<Vec<FieldElement>>,
}

impl CartierManinMatrix {
    /// True when every entry vanishes.
    pub fn is_zero(&self) -> bool {
        self.entries.iter().flatten().all(|x| x.is_zero())
    }
}

fn trim(mut a: Vec<FieldElement>) -> Vec<FieldElement> {
    while a.len() > 1 && a.last().is_some_and(|x| x.is_zero()) {
        a.pop();
    }
    a
}

fn is_zero_poly(a: &[FieldElement]) -> bool {
    a.iter().all(|x| x.is_zero())
}

fn poly_rem(a: &[FieldElement], b: &[FieldElement]) -> Vec<FieldElement> {
    let mut r = trim(a.to_vec());
    let lead = b.last().expect("nonempty").inv().expect("trimmed divisor");
    while r.len() >= b.len() && !is_zero_poly(&r) {
        let q = *r.last().expect("nonempty") * lead;
        let shift = r.len() - b.len();
        for (i, &bc) in b.iter().enumerate() {
            r[shift + i] -= q * bc;
        }
        r.pop();
        if r.is_empty() {
            return vec![b[0].field().zero()];
        }
        r = trim(r);
    }
    r
}

fn has_repeated_root(f: &[FieldElement]) -> bool {
    let df = trim(
        f.iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| c.scale(i as i64))
            .collect(),
    );
    if is_zero_poly(&df) {
        return true;
    }
    let (mut a, mut b) = (trim(f.to_vec()), df);
    while !is_zero_poly(&b) {
        let r = poly_rem(&a, &b);
        a = b;
        b = r;
    }
    a.len() > 1
}

/// Cartier–Manin matrix of `y^2 = f(x)`, `f` given constant term first:
/// entry `(i, j)` is the coefficient of `x^{ip - j}` in `f^{(p-1)/2}`.
pub fn cartier_manin_hyperelliptic(f: &[FieldElement], g: usize) -> Result<CartierManinMatrix> {
    let f = trim(f.to_vec());
    let deg = f.len() - 1;
    if g == 0 || (deg != 2 * g + 1 && deg != 2 * g + 2) {
        return Err(Error::NotSmooth(format!(
            "degree {deg} does not define genus {g}"
        )));
    }
    if has_repeated_root(&f) {
        return Err(Error::NotSmooth("f has a repeated root".into()));
    }
    let fld = f[0].field();
    let p = fld.p() as usize;
    let e = (p - 1) / 2;
    let top = g * p;
    let mut h = vec![fld.one()];
    for _ in 0..e {
        let mut next = vec![fld.zero(); (h.len() + deg).min(top + 1)];
        for (i, &a) in h.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in f.iter().enumerate() {
                if let Some(slot) = next.get_mut(i + j) {
                    *slot += a * b;
                }
            }
        }
        h = next;
    }
    let coeff = |k: usize| h.get(k).copied().unwrap_or(fld.zero());
    let entries = (1..=g)
        .map(|i| (1..=g).map(|j| coeff(i * p - j)).collect())
        .collect();
    Ok(CartierManinMatrix { g, entries })
}

/// Hasse–Witt matrix of a plane quartic `F`: with `u, v` ranging over
/// `(2,1,1), (1,2,1), (1,1,2)`, entry `(u, v)` is the coefficient of
/// `x^{pu - v}` in `F^{p-1}`. Coefficients are in graded lexicographic order.
pub fn hasse_witt_quartic(coeffs: &[FieldElement]) -> Result<CartierManinMatrix> {
    if coeffs.len() != 15 {
        return Err(Error::Parse(format!(
            "quartic needs 15 coefficients, got {}",
            coeffs.len()
        )));
    }
    let fld = coeffs[0].field();
    let terms: Vec<([usize; 3], FieldElement)> = quartic_exponents()
        .into_iter()
        .zip(coeffs.iter().copied())
        .filter(|(_, c)| !c.is_zero())
        .collect();
    if terms.is_empty() {
        return Err(Error::NotSmooth("zero quartic".into()));
    }
    let model = QuarticModel::new(coeffs.to_vec())?;
    if quartic_discriminant(&model).is_zero() {
        return Err(Error::NotSmooth("quartic discriminant vanishes".into()));
    }
    let p = fld.p() as usize;
    // dense square array indexed by (x exponent, y exponent)
    let mut deg = 0;
    let mut cur = vec![fld.one()];
    let side = |d: usize| d + 1;
    for _ in 0..p - 1 {
        let nd = deg + 4;
        let mut next = vec![fld.zero(); side(nd) * side(nd)];
        for a in 0..=deg {
            for b in 0..=deg - a {
                let c = cur[a * side(deg) + b];
                if c.is_zero() {
                    continue;
                }
                for (e, t) in &terms {
                    next[(a + e[0]) * side(nd) + b + e[1]] += c * *t;
                }
            }
        }
        cur = next;
        deg = nd;
    }
    let basis = [[2, 1, 1], [1, 2, 1], [1, 1, 2]];
    let entries = basis
        .iter()
        .map(|u| {
            basis
                .iter()
                .map(|v| {
                    let a = p * u[0] - v[0];
                    let b = p * u[1] - v[1];
                    cur[a * side(deg) + b]
                })
                .collect()
        })
        .collect();
    Ok(CartierManinMatrix { g: 3, entries })
}

fn quartic_exponents() -> Vec<[usize; 3]> {
    let mut out = Vec::with_capacity(15);
    for a in (0..=4usize).rev() {
        for b in (0..=4 - a).rev() {
            out.push([a, b, 4 - a - b]);
        }
    }
    out
}

/// Verdict for a curve given by JSON.
#[derive(Clone, Debug, Serialize)]
pub struct Verdict {
    pub matrix: CartierManinMatrix,
    pub superspecial: bool,
}

/// Parses a curve description and runs the matching oracle.
///
/// Accepted shapes: `{"type":"hyperelliptic","f":[...]}` with coefficients
/// constant term first, or `{"type":"quartic","coeffs":[...15]}`. Each
/// coefficient is an integer or a `[c0, c1]` pair.
pub fn verify_json(field: PrimeField, json: &serde_json::Value) -> Result<Verdict> {
    let parse = |v: &serde_json::Value| -> Result<FieldElement> {
        match v {
            serde_json::Value::Number(n) => n
                .as_i64()
                .map(|k| field.from_i64(k))
                .ok_or_else(|| Error::Parse(format!("coefficient {n}"))),
            serde_json::Value::Array(a) if a.len() == 2 => {
                let c = |x: &serde_json::Value| {
                    x.as_i64()
                        .ok_or_else(|| Error::Parse(format!("coefficient {x}")))
                };
                Ok(field.from_pair([c(&a[0])?, c(&a[1])?]))
            }
            serde_json::Value::String(s) => field.parse(s),
            _ => Err(Error::Parse(format!("coefficient {v}"))),
        }
    };
    let list = |key: &str| -> Result<Vec<FieldElement>> {
        json.get(key)
            .and_then(|v| v.as_array())
            .ok_or_else(|| Error::Parse(format!("missing array {key:?}")))?
            .iter()
            .map(parse)
            .collect()
    };
    let kind = json
        .get("type")
        .and_then(|v| v.as_str())
        .unwrap_or("hyperelliptic");
    let matrix = match kind {
        "hyperelliptic" => {
            let f = trim(list("f")?);
            let deg = f.len() - 1;
            if deg < 3 {
                return Err(Error::NotSmooth(format!("degree {deg} is too small")));
            }
            let g = json
                .get("g")
                .and_then(|v| v.as_u64())
                .map(|g| g as usize)
                .unwrap_or((deg - 1) / 2);
            cartier_manin_hyperelliptic(&f, g)?
        }
        "quartic" => hasse_witt_quartic(&list("coeffs")?)?,
        other => return Err(Error::Parse(format!("unknown curve type {other:?}"))),
    };
    let superspecial = matrix.is_zero();
    Ok(Verdict {
        matrix,
        superspecial,
    })
}
