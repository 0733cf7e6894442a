//! Exact linear algebra over `F_{p^2}`.

use crate::field::FieldElement;

/// Outcome of solving `A x = b`.
#[derive(Debug, PartialEq, Eq)]
pub enum Solve {
    Unique(Vec<FieldElement>),
    Singular,
    Inconsistent,
}

/// Gaussian elimination with first-nonzero pivoting. Overdetermined systems
/// are accepted and must be consistent.
pub fn solve(a: &[Vec<FieldElement>], b: &[FieldElement]) -> Solve {
    let n = a.len();
    let m = a[0].len();
    let mut rows: Vec<Vec<FieldElement>> = a
        .iter()
        .zip(b)
        .map(|(r, &v)| {
            let mut r = r.clone();
            r.push(v);
            r
        })
        .collect();
    let mut rank = 0;
    let mut pivots = Vec::with_capacity(m);
    for c in 0..m {
        let Some(pr) = (rank..n).find(|&k| !rows[k][c].is_zero()) else {
            continue;
        };
        rows.swap(rank, pr);
        let iv = rows[rank][c].inv().expect("nonzero pivot");
        for x in rows[rank].iter_mut() {
            *x *= iv;
        }
        for k in 0..n {
            if k != rank && !rows[k][c].is_zero() {
                let f = rows[k][c];
                let pivot = rows[rank].clone();
                for (x, y) in rows[k].iter_mut().zip(pivot) {
                    *x -= f * y;
                }
            }
        }
        pivots.push(c);
        rank += 1;
    }
    if rank < m {
        return Solve::Singular;
    }
    if rows[rank..].iter().any(|r| !r[m].is_zero()) {
        return Solve::Inconsistent;
    }
    let zero = b[0].field().zero();
    let mut x = vec![zero; m];
    for (k, &c) in pivots.iter().enumerate() {
        x[c] = rows[k][m];
    }
    Solve::Unique(x)
}

/// Determinant by elimination.
pub fn det(a: &[Vec<FieldElement>]) -> FieldElement {
    let n = a.len();
    let f = a[0][0].field();
    let mut m: Vec<Vec<FieldElement>> = a.to_vec();
    let mut d = f.one();
    for c in 0..n {
        let Some(pr) = (c..n).find(|&k| !m[k][c].is_zero()) else {
            return f.zero();
        };
        if pr != c {
            m.swap(c, pr);
            d = -d;
        }
        d *= m[c][c];
        let iv = m[c][c].inv().expect("nonzero pivot");
        for k in c + 1..n {
            if !m[k][c].is_zero() {
                let factor = m[k][c] * iv;
                let pivot = m[c].clone();
                for (x, y) in m[k].iter_mut().zip(pivot).skip(c) {
                    *x -= factor * y;
                }
            }
        }
    }
    d
}

/// `a · x` for a square or rectangular matrix.
pub fn mat_vec(a: &[Vec<FieldElement>], x: &[FieldElement]) -> Vec<FieldElement> {
    a.iter()
        .map(|r| {
            r.iter()
                .zip(x)
                .fold(x[0].field().zero(), |s, (&u, &v)| s + u * v)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;

    #[test]
    fn solves_and_detects() {
        let f = PrimeField::new(13).unwrap();
        let e = |n| f.from_i64(n);
        let a = vec![vec![e(2), e(1)], vec![e(1), e(3)]];
        let Solve::Unique(x) = solve(&a, &[e(3), e(4)]) else {
            panic!()
        };
        assert_eq!(mat_vec(&a, &x), vec![e(3), e(4)]);
        assert_eq!(det(&a), e(5));
        let s = vec![vec![e(1), e(2)], vec![e(2), e(4)]];
        assert_eq!(solve(&s, &[e(1), e(1)]), Solve::Singular);
        let o = vec![vec![e(1)], vec![e(1)]];
        assert_eq!(solve(&o, &[e(1), e(2)]), Solve::Inconsistent);
    }
}
