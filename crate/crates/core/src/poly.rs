//! Dense homogeneous binary and ternary forms over `F_{p^2}`.

use crate::field::{FieldElement, PrimeField};

/// Number of monomials of degree `d` in three variables.
pub fn ternary_len(d: usize) -> usize {
    (d + 1) * (d + 2) / 2
}

/// Position of `x^a y^b z^{d-a-b}` in graded lexicographic order `x > y > z`.
pub fn ternary_index(d: usize, a: usize, b: usize) -> usize {
    let r = d - a;
    r * (r + 1) / 2 + (r - b)
}

/// Exponents of degree-`d` monomials in graded lexicographic order `x > y > z`.
pub fn ternary_monomials(d: usize) -> Vec<[usize; 3]> {
    let mut out = Vec::with_capacity(ternary_len(d));
    for a in (0..=d).rev() {
        for b in (0..=d - a).rev() {
            out.push([a, b, d - a - b]);
        }
    }
    out
}

/// A homogeneous form in `x, y, z`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TernaryForm {
    pub deg: usize,
    pub coeffs: Vec<FieldElement>,
}

impl TernaryForm {
    /// The zero form of degree `deg`.
    pub fn zero(f: PrimeField, deg: usize) -> Self {
        Self {
            deg,
            coeffs: vec![f.zero(); ternary_len(deg)],
        }
    }

    /// A linear form `c_0 x + c_1 y + c_2 z`.
    pub fn linear(c: [FieldElement; 3]) -> Self {
        Self {
            deg: 1,
            coeffs: c.to_vec(),
        }
    }

    /// Coefficient of `x^a y^b z^c`.
    pub fn coeff(&self, e: [usize; 3]) -> FieldElement {
        self.coeffs[ternary_index(self.deg, e[0], e[1])]
    }

    fn field(&self) -> PrimeField {
        self.coeffs[0].field()
    }

    /// True when every coefficient vanishes.
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Sum of forms of equal degree.
    pub fn add(&self, o: &Self) -> Self {
        assert_eq!(self.deg, o.deg);
        Self {
            deg: self.deg,
            coeffs: self
                .coeffs
                .iter()
                .zip(&o.coeffs)
                .map(|(&a, &b)| a + b)
                .collect(),
        }
    }

    /// Difference of forms of equal degree.
    pub fn sub(&self, o: &Self) -> Self {
        assert_eq!(self.deg, o.deg);
        Self {
            deg: self.deg,
            coeffs: self
                .coeffs
                .iter()
                .zip(&o.coeffs)
                .map(|(&a, &b)| a - b)
                .collect(),
        }
    }

    /// Scalar multiple.
    pub fn scale(&self, c: FieldElement) -> Self {
        Self {
            deg: self.deg,
            coeffs: self.coeffs.iter().map(|&a| a * c).collect(),
        }
    }

    /// Product.
    pub fn mul(&self, o: &Self) -> Self {
        let d = self.deg + o.deg;
        let mut out = Self::zero(self.field(), d);
        let ma = ternary_monomials(self.deg);
        let mb = ternary_monomials(o.deg);
        for (ea, &ca) in ma.iter().zip(&self.coeffs) {
            if ca.is_zero() {
                continue;
            }
            for (eb, &cb) in mb.iter().zip(&o.coeffs) {
                if !cb.is_zero() {
                    out.coeffs[ternary_index(d, ea[0] + eb[0], ea[1] + eb[1])] += ca * cb;
                }
            }
        }
        out
    }

    /// Partial derivative in variable `v`.
    pub fn deriv(&self, v: usize) -> Self {
        let f = self.field();
        if self.deg == 0 {
            return Self::zero(f, 0);
        }
        let d = self.deg - 1;
        let mut out = Self::zero(f, d);
        for (e, &c) in ternary_monomials(self.deg).iter().zip(&self.coeffs) {
            if e[v] == 0 || c.is_zero() {
                continue;
            }
            let mut e2 = *e;
            e2[v] -= 1;
            out.coeffs[ternary_index(d, e2[0], e2[1])] += c.scale(e[v] as i64);
        }
        out
    }

    /// `self(∂_x, ∂_y, ∂_z)` applied to `o`; requires `self.deg <= o.deg`.
    pub fn apply(&self, o: &Self) -> Self {
        let f = self.field();
        assert!(self.deg <= o.deg);
        let d = o.deg - self.deg;
        let mut out = Self::zero(f, d);
        let mb = ternary_monomials(o.deg);
        for (ea, &ca) in ternary_monomials(self.deg).iter().zip(&self.coeffs) {
            if ca.is_zero() {
                continue;
            }
            for (eb, &cb) in mb.iter().zip(&o.coeffs) {
                if cb.is_zero() || eb[0] < ea[0] || eb[1] < ea[1] || eb[2] < ea[2] {
                    continue;
                }
                let mut k: i64 = 1;
                for v in 0..3 {
                    for t in 0..ea[v] {
                        k *= (eb[v] - t) as i64;
                    }
                }
                out.coeffs[ternary_index(d, eb[0] - ea[0], eb[1] - ea[1])] +=
                    ca * cb * f.from_i64(k);
            }
        }
        out
    }

    /// The constant of a degree-0 form.
    pub fn scalar(&self) -> FieldElement {
        assert_eq!(self.deg, 0);
        self.coeffs[0]
    }

    /// Substitutes `(x, y, z) ↦ m · (x, y, z)`: variable `r` becomes `Σ_c m[r][c] x_c`.
    pub fn substitute(&self, m: &[[FieldElement; 3]; 3]) -> Self {
        let f = self.field();
        let lin: Vec<Self> = (0..3).map(|r| Self::linear(m[r])).collect();
        let mut out = Self::zero(f, self.deg);
        for (e, &c) in ternary_monomials(self.deg).iter().zip(&self.coeffs) {
            if c.is_zero() {
                continue;
            }
            let mut t = Self {
                deg: 0,
                coeffs: vec![c],
            };
            for v in 0..3 {
                for _ in 0..e[v] {
                    t = t.mul(&lin[v]);
                }
            }
            out = out.add(&t);
        }
        out
    }

    /// Value at a point.
    pub fn eval(&self, pt: [FieldElement; 3]) -> FieldElement {
        let f = self.field();
        let mut s = f.zero();
        for (e, &c) in ternary_monomials(self.deg).iter().zip(&self.coeffs) {
            s += c * pt[0].pow(e[0] as u64) * pt[1].pow(e[1] as u64) * pt[2].pow(e[2] as u64);
        }
        s
    }
}

/// A binary form `Σ c_i x^{n-i} y^i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinaryForm {
    pub coeffs: Vec<FieldElement>,
}

impl BinaryForm {
    /// The degree.
    pub fn deg(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// `∂_x^{dx} ∂_y^{dy}`.
    pub fn deriv(&self, dx: usize, dy: usize) -> Self {
        let n = self.deg();
        let f = self.coeffs[0].field();
        if dx + dy > n {
            return Self {
                coeffs: vec![f.zero()],
            };
        }
        let mut out = vec![f.zero(); n - dx - dy + 1];
        for (i, &c) in self.coeffs.iter().enumerate() {
            let (ex, ey) = (n - i, i);
            if ex < dx || ey < dy || c.is_zero() {
                continue;
            }
            let mut k: i64 = 1;
            for t in 0..dx {
                k *= (ex - t) as i64;
            }
            for t in 0..dy {
                k *= (ey - t) as i64;
            }
            out[i - dy] += c.scale(k);
        }
        Self { coeffs: out }
    }

    /// Product.
    pub fn mul(&self, o: &Self) -> Self {
        let f = self.coeffs[0].field();
        let mut out = vec![f.zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in o.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self { coeffs: out }
    }

    /// The `k`-th transvectant with the normalization
    /// `(m-k)!(n-k)!/(m!n!) Σ_i (-1)^i C(k,i) ∂_x^{k-i}∂_y^i f · ∂_x^i ∂_y^{k-i} g`.
    pub fn transvectant(&self, o: &Self, k: usize) -> Self {
        let f = self.coeffs[0].field();
        let (m, n) = (self.deg(), o.deg());
        assert!(k <= m && k <= n);
        let mut res = vec![f.zero(); m + n - 2 * k + 1];
        let mut binom: i64 = 1;
        for i in 0..=k {
            let t = self.deriv(k - i, i).mul(&o.deriv(i, k - i));
            let c = if i % 2 == 0 { binom } else { -binom };
            for (r, x) in res.iter_mut().zip(&t.coeffs) {
                *r += x.scale(c);
            }
            binom = binom * (k - i) as i64 / (i + 1) as i64;
        }
        let fact = |n: usize| (1..=n as i64).fold(f.one(), |a, v| a * f.from_i64(v));
        let s = fact(m - k) * fact(n - k) / (fact(m) * fact(n));
        Self {
            coeffs: res.into_iter().map(|x| x * s).collect(),
        }
    }
}
