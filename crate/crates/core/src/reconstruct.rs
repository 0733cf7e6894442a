//! Curve equations from squared theta null-points: Rosenhain models for
//! genus 2 and 3 hyperelliptic Jacobians and Weber's plane quartic.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{FieldElement, PrimeField};
use crate::linalg::{mat_vec, solve, Solve};
use crate::poly::{ternary_monomials, TernaryForm};
use crate::symplectic::normalize_vanishing_to_61;
use crate::theta::SquaredThetaNullPoint;

/// `y^2 = x (x - 1) ∏ (x - λ_k)` with branch points `0, 1, ∞, λ_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HyperellipticModel {
    pub g: usize,
    pub lambdas: Vec<FieldElement>,
}

impl HyperellipticModel {
    /// Validates smoothness: `λ_k ∉ {0, 1}` and pairwise distinct.
    pub fn new(g: usize, lambdas: Vec<FieldElement>) -> Result<Self> {
        if lambdas.len() != 2 * g - 1 {
            return Err(Error::NotSmooth(format!(
                "genus {g} needs {} lambdas",
                2 * g - 1
            )));
        }
        for (i, l) in lambdas.iter().enumerate() {
            if l.is_zero() || l.is_one() || lambdas[..i].contains(l) {
                return Err(Error::NotSmooth(format!("repeated branch point {l}")));
            }
        }
        Ok(Self { g, lambdas })
    }

    /// Moves the first three projective branch points to `0, 1, ∞`.
    pub fn from_branch_points(points: &[(FieldElement, FieldElement)]) -> Result<Self> {
        if points.len() < 6 || points.len() % 2 == 1 {
            return Err(Error::NotSmooth(format!("{} branch points", points.len())));
        }
        let br = |p: (FieldElement, FieldElement), q: (FieldElement, FieldElement)| {
            p.0 * q.1 - q.0 * p.1
        };
        let (e1, e2, e3) = (points[0], points[1], points[2]);
        let c = br(e2, e3)
            * br(e2, e1)
                .inv()
                .map_err(|_| Error::NotSmooth("repeated branch point".into()))?;
        let mut lambdas = Vec::with_capacity(points.len() - 3);
        for &q in &points[3..] {
            let den = br(q, e3)
                .inv()
                .map_err(|_| Error::NotSmooth("repeated branch point".into()))?;
            lambdas.push(br(q, e1) * c * den);
        }
        Self::new(points.len() / 2 - 1, lambdas)
    }

    /// Projective branch points `0, 1, ∞, λ_1, ...` as `(x : z)`.
    pub fn branch_points(&self) -> Vec<(FieldElement, FieldElement)> {
        let f = self.field();
        let mut pts = vec![(f.zero(), f.one()), (f.one(), f.one()), (f.one(), f.zero())];
        pts.extend(self.lambdas.iter().map(|&l| (l, f.one())));
        pts
    }

    /// The field.
    pub fn field(&self) -> PrimeField {
        self.lambdas[0].field()
    }

    /// Coefficients of the right-hand side, constant term first.
    pub fn rhs(&self) -> Vec<FieldElement> {
        let f = self.field();
        let mut c = vec![f.zero(), -f.one(), f.one()];
        for &l in &self.lambdas {
            let mut next = vec![f.zero(); c.len() + 1];
            for (i, &v) in c.iter().enumerate() {
                next[i] -= l * v;
                next[i + 1] += v;
            }
            c = next;
        }
        c
    }
}

#[derive(Serialize)]
struct HyperellipticJson {
    g: usize,
    lambdas: Vec<FieldElement>,
    f: Vec<FieldElement>,
}

impl Serialize for HyperellipticModel {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        HyperellipticJson {
            g: self.g,
            lambdas: self.lambdas.clone(),
            f: self.rhs(),
        }
        .serialize(s)
    }
}

/// A ternary quartic with 15 coefficients in graded lexicographic order `x > y > z`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuarticModel {
    pub coeffs: Vec<FieldElement>,
}

impl QuarticModel {
    /// Checks the coefficient count.
    pub fn new(coeffs: Vec<FieldElement>) -> Result<Self> {
        if coeffs.len() != 15 {
            return Err(Error::Parse(format!(
                "quartic needs 15 coefficients, got {}",
                coeffs.len()
            )));
        }
        Ok(Self { coeffs })
    }

    /// Exponents aligned with [`QuarticModel::coeffs`].
    pub fn monomials() -> Vec<[usize; 3]> {
        ternary_monomials(4)
    }

    /// As a dense ternary form.
    pub fn form(&self) -> TernaryForm {
        TernaryForm {
            deg: 4,
            coeffs: self.coeffs.clone(),
        }
    }

    /// The field.
    pub fn field(&self) -> PrimeField {
        self.coeffs[0].field()
    }
}

#[derive(Serialize)]
struct QuarticJson {
    order: &'static str,
    coeffs: Vec<FieldElement>,
}

impl Serialize for QuarticModel {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        QuarticJson {
            order: "grlex x>y>z",
            coeffs: self.coeffs.clone(),
        }
        .serialize(s)
    }
}

/// Either curve model.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum CurveModel {
    Hyperelliptic(HyperellipticModel),
    Quartic(QuarticModel),
}

fn ratio(n: FieldElement, d: FieldElement, what: &str) -> Result<FieldElement> {
    Ok(n * d
        .inv()
        .map_err(|_| Error::MalformedNullPoint(format!("zero denominator in {what}")))?)
}

/// Genus-3 Rosenhain model of a hyperelliptic null-point.
pub fn rosenhain_g3(th: &SquaredThetaNullPoint) -> Result<HyperellipticModel> {
    let t = normalize_vanishing_to_61(th)?;
    let s = |i: usize| t.get(i);
    let lambdas = vec![
        ratio(s(42) * s(2), s(5) * s(45), "λ1")?,
        ratio(s(42) * s(3), s(4) * s(45), "λ2")?,
        ratio(s(27) * s(42), s(45) * s(28), "λ3")?,
        ratio(s(2) * s(49), s(54) * s(5), "λ4")?,
        ratio(s(3) * s(0), s(7) * s(4), "λ5")?,
    ];
    HyperellipticModel::new(3, lambdas)
        .map_err(|e| Error::InvariantViolation(format!("Rosenhain model degenerate: {e}")))
}

/// Genus-2 Rosenhain model of a Jacobian null-point (indices `0, 1, 2, 3, 12, 15`).
pub fn rosenhain_g2(th: &SquaredThetaNullPoint) -> Result<HyperellipticModel> {
    if th.genus() != 2 || th.n_van() != 0 {
        return Err(Error::WrongType(
            "genus-2 Jacobian null-point required".into(),
        ));
    }
    let s = |i: usize| th.get(i);
    let lambdas = vec![
        ratio(s(0) * s(1), s(3) * s(2), "λ1")?,
        ratio(s(1) * s(12), s(2) * s(15), "λ2")?,
        ratio(s(0) * s(12), s(3) * s(15), "λ3")?,
    ];
    HyperellipticModel::new(2, lambdas)
        .map_err(|e| Error::InvariantViolation(format!("Rosenhain model degenerate: {e}")))
}

/// Sign choices for the three free square roots `a_{11}, a_{21}, a_{31}`.
pub type WeberSigns = [bool; 3];

fn check_square(v: FieldElement, prod: FieldElement, what: &str) -> Result<()> {
    if v * v != prod {
        return Err(Error::InvariantViolation(format!(
            "four-theta product {what} inconsistent"
        )));
    }
    Ok(())
}

fn unique(r: Solve, what: &str) -> Result<Vec<FieldElement>> {
    match r {
        Solve::Unique(x) => Ok(x),
        Solve::Singular => Err(Error::DegenerateConfiguration(format!(
            "{what} is singular"
        ))),
        Solve::Inconsistent => Err(Error::InvariantViolation(format!("{what} is inconsistent"))),
    }
}

/// Weber's plane-quartic model of a null-point with no vanishing even constant.
pub fn weber_quartic(th: &SquaredThetaNullPoint) -> Result<QuarticModel> {
    weber_quartic_with(th, [false; 3])
}

/// [`weber_quartic`] with explicit root signs.
pub fn weber_quartic_with(th: &SquaredThetaNullPoint, signs: WeberSigns) -> Result<QuarticModel> {
    if th.genus() != 3 || th.n_van() != 0 {
        return Err(Error::WrongType(
            "genus-3 null-point without vanishing constants required".into(),
        ));
    }
    let f = th.field();
    let s = |i: usize| th.get(i);
    let half = f.from_i64(2).inv()?;
    let root = |x: FieldElement, neg: bool| -> Result<FieldElement> {
        let r = x
            .sqrt()
            .ok_or_else(|| Error::InvariantViolation("a_{i1}^2 is not a square".into()))?;
        Ok(if neg { -r } else { r })
    };
    let a11 = root(s(12) * s(5) / (s(40) * s(33)), signs[0])?;
    let a21 = root(s(27) * s(5) / (s(40) * s(54)), signs[1])?;
    let a31 = root(s(27) * s(12) / (s(33) * s(54)), signs[2])?;

    // θ5θ12θ33θ40, θ5θ27θ40θ54, θ12θ27θ33θ54
    let q1 = a11 * s(33) * s(40);
    let q2 = a21 * s(40) * s(54);
    let q3 = -a31 * s(33) * s(54);

    let p1 = (s(5) * s(21) * s(40) * s(56) + s(12) * s(28) * s(33) * s(49)
        - s(0) * s(16) * s(45) * s(61))
        * half;
    let p2 = (s(5) * s(28) * s(40) * s(49) + s(2) * s(27) * s(47) * s(54)
        - s(12) * s(21) * s(33) * s(56))
        * half;
    let p3 = (s(3) * s(20) * s(32) * s(55)
        - s(2) * s(21) * s(33) * s(54)
        - s(12) * s(27) * s(47) * s(56))
        * half;

    // θ21θ28θ49θ56, θ2θ28θ47θ49, θ2θ21θ47θ56
    let r1 = p1 / q1;
    let r2 = p2 / q2;
    let r3 = p3 / q3;
    check_square(r1, s(21) * s(28) * s(49) * s(56), "21,28,49,56")?;
    check_square(r2, s(2) * s(28) * s(47) * s(49), "2,28,47,49")?;
    check_square(r3, s(2) * s(21) * s(47) * s(56), "2,21,47,56")?;

    // θ7θ14θ35θ42, θ14θ16θ35θ61, θ7θ16θ42θ61
    let u1 = q1 - r1;
    let u2 = r2 - q2;
    let u3 = r3 - q3;
    check_square(u1, s(7) * s(14) * s(35) * s(42), "7,14,35,42")?;
    check_square(u2, s(14) * s(16) * s(35) * s(61), "14,16,35,61")?;
    check_square(u3, s(7) * s(16) * s(42) * s(61), "7,16,42,61")?;

    // a[i][j] = a_{i+1, j+1}
    let a = [
        [a11, r1 / (s(49) * s(56)), u1 / (s(35) * s(42))],
        [a21, r2 / (s(47) * s(49)), u2 / (s(35) * s(61))],
        [a31, r3 / (s(47) * s(56)), u3 / (s(42) * s(61))],
    ];
    let inv = |x: FieldElement| {
        x.inv()
            .map_err(|_| Error::DegenerateConfiguration("a_ij vanishes".into()))
    };
    let minus1 = vec![-f.one(); 3];

    let b: Vec<Vec<FieldElement>> = (0..3)
        .map(|r| (0..3).map(|c| inv(a[c][r])).collect())
        .collect::<Result<_>>()?;
    let lambda = unique(solve(&b, &minus1), "λ system")?;
    let am: Vec<Vec<FieldElement>> = (0..3)
        .map(|r| (0..3).map(|c| lambda[c] * a[c][r]).collect())
        .collect();
    let k = unique(solve(&am, &minus1), "k system")?;
    if mat_vec(&b, &lambda) != minus1 || mat_vec(&am, &k) != minus1 {
        return Err(Error::InvariantViolation(
            "λ/k systems do not reproduce -1".into(),
        ));
    }

    // xi[m][v]: coefficient of variable v in the linear form ξ_{m+1}.
    let mut xi = [[f.zero(); 3]; 3];
    for v in 0..3 {
        let mut rows = vec![vec![f.one(); 3]];
        let mut rhs = vec![-f.one()];
        for i in 0..3 {
            rows.push((0..3).map(|j| inv(a[i][j])).collect::<Result<_>>()?);
            rhs.push(-k[i] * a[i][v]);
        }
        let sol = unique(solve(&rows, &rhs), "ξ system")?;
        for m in 0..3 {
            xi[m][v] = sol[m];
        }
    }
    Ok(quartic_from_xi(f, &xi))
}

/// Expands `(ξ_1 x + ξ_2 y - ξ_3 z)^2 - 4 ξ_1 ξ_2 x y`.
fn quartic_from_xi(f: PrimeField, xi: &[[FieldElement; 3]; 3]) -> QuarticModel {
    let (o, z) = (f.one(), f.zero());
    let x = TernaryForm::linear([o, z, z]);
    let y = TernaryForm::linear([z, o, z]);
    let zz = TernaryForm::linear([z, z, o]);
    let l1 = TernaryForm::linear(xi[0]);
    let l2 = TernaryForm::linear(xi[1]);
    let l3 = TernaryForm::linear(xi[2]);
    let l = l1.mul(&x).add(&l2.mul(&y)).sub(&l3.mul(&zz));
    let q = l
        .mul(&l)
        .sub(&l1.mul(&l2).mul(&x).mul(&y).scale(f.from_i64(4)));
    QuarticModel { coeffs: q.coeffs }
}
