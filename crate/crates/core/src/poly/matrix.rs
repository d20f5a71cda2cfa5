use super::mpoly::{MPoly, Vars};
use crate::arith::Rat;
use crate::error::{Error, Result};

/// Square matrix of polynomials over a common ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix {
    n: usize,
    entries: Vec<MPoly>,
    symmetric: bool,
}

impl PolyMatrix {
    pub fn new(rows: Vec<Vec<MPoly>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 || rows.iter().any(|r| r.len() != n) {
            return Err(Error::NotSquare);
        }
        let entries: Vec<MPoly> = rows.into_iter().flatten().collect();
        let mut m = PolyMatrix { n, entries, symmetric: false };
        m.symmetric = (0..n).all(|i| (0..i).all(|j| m.get(i, j) == m.get(j, i)));
        Ok(m)
    }

    pub fn identity(vars: &Vars, n: usize) -> Self {
        let rows = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| if i == j { MPoly::one(vars) } else { MPoly::zero(vars) })
                    .collect()
            })
            .collect();
        PolyMatrix::new(rows).unwrap()
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn is_symmetric(&self) -> bool {
        self.symmetric
    }

    pub fn get(&self, i: usize, j: usize) -> &MPoly {
        &self.entries[i * self.n + j]
    }

    pub fn rows(&self) -> Vec<Vec<MPoly>> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.get(i, j).clone()).collect())
            .collect()
    }

    pub fn vars(&self) -> &Vars {
        self.entries[0].vars()
    }

    pub fn map(&self, f: impl Fn(&MPoly) -> MPoly) -> PolyMatrix {
        PolyMatrix::new(
            self.rows()
                .iter()
                .map(|r| r.iter().map(&f).collect())
                .collect(),
        )
        .unwrap()
    }

    /// Principal submatrix on the given row/column indices.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> PolyMatrix {
        PolyMatrix::new(
            rows.iter()
                .map(|&i| cols.iter().map(|&j| self.get(i, j).clone()).collect())
                .collect(),
        )
        .unwrap()
    }

    pub fn eval(&self, point: &[Rat]) -> Vec<Vec<Rat>> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.get(i, j).eval(point)).collect())
            .collect()
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> MPoly {
        let n = self.n;
        let vars = self.vars().clone();
        let mut a: Vec<Vec<MPoly>> = self.rows();
        let mut prev = MPoly::one(&vars);
        let mut negate = false;
        for k in 0..n.saturating_sub(1) {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                    Some(i) => {
                        a.swap(i, k);
                        negate = !negate;
                    }
                    None => return MPoly::zero(&vars),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let t = &(&a[i][j] * &a[k][k]) - &(&a[i][k] * &a[k][j]);
                    a[i][j] = t.div_exact(&prev).expect("Bareiss division is exact");
                }
            }
            prev = a[k][k].clone();
        }
        let d = a[n - 1][n - 1].clone();
        if negate {
            -d
        } else {
            d
        }
    }
}

/// Determinant of a rational matrix by Gaussian elimination.
pub fn rat_determinant(m: &[Vec<Rat>]) -> Rat {
    use num_traits::{One, Zero};
    let n = m.len();
    let mut a: Vec<Vec<Rat>> = m.to_vec();
    let mut det = Rat::one();
    for k in 0..n {
        let Some(piv) = (k..n).find(|&i| !a[i][k].is_zero()) else {
            return Rat::zero();
        };
        if piv != k {
            a.swap(piv, k);
            det = -det;
        }
        det *= a[k][k].clone();
        for i in k + 1..n {
            let f = &a[i][k] / &a[k][k];
            for j in k..n {
                let t = &f * &a[k][j];
                a[i][j] -= t;
            }
        }
    }
    det
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::mpoly::vars;
    use crate::poly::parse::parse_poly;

    #[test]
    fn two_by_two_and_identity() {
        let r = vars(&["a00", "a01", "a11"]);
        let p = |s: &str| parse_poly(s, &r).unwrap();
        let m = PolyMatrix::new(vec![vec![p("2*a00"), p("a01")], vec![p("a01"), p("2*a11")]])
            .unwrap();
        assert!(m.is_symmetric());
        assert_eq!(m.determinant(), p("4*a00*a11 - a01^2"));
        assert_eq!(PolyMatrix::identity(&r, 4).determinant(), p("1"));
    }

    #[test]
    fn zero_pivot_needs_swap() {
        let r = vars(&["x"]);
        let p = |s: &str| parse_poly(s, &r).unwrap();
        let m = PolyMatrix::new(vec![
            vec![p("0"), p("1"), p("0")],
            vec![p("1"), p("0"), p("0")],
            vec![p("0"), p("0"), p("x")],
        ])
        .unwrap();
        assert_eq!(m.determinant(), p("-x"));
    }
}
