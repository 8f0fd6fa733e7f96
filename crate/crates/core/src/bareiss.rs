//! Fraction-free Gaussian elimination over the integers.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LinearOutcome {
    Unique(Vec<BigRational>),
    /// The matrix is singular; `consistent` tells whether `Ax = b` still has
    /// solutions.
    Singular { consistent: bool },
}

/// Solves the square system `a·x = b`.
pub fn solve(a: &[Vec<BigInt>], b: &[BigInt]) -> LinearOutcome {
    let n = a.len();
    assert_eq!(b.len(), n, "right-hand side has the wrong length");
    let mut m: Vec<Vec<BigInt>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            assert_eq!(row.len(), n, "matrix must be square");
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();

    let mut prev = BigInt::one();
    let mut pivot_cols = Vec::with_capacity(n);
    let mut row = 0;
    for col in 0..n {
        let Some(p) = (row..n).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        for i in row + 1..n {
            for j in col + 1..=n {
                let v = (&m[row][col] * &m[i][j] - &m[i][col] * &m[row][j]) / &prev;
                m[i][j] = v;
            }
            m[i][col] = BigInt::zero();
        }
        prev = m[row][col].clone();
        pivot_cols.push(col);
        row += 1;
    }

    if row < n {
        let consistent = m[row..].iter().all(|r| r[n].is_zero());
        return LinearOutcome::Singular { consistent };
    }

    let mut x = vec![BigRational::zero(); n];
    for i in (0..n).rev() {
        let mut acc = BigRational::from_integer(m[i][n].clone());
        for j in i + 1..n {
            acc -= BigRational::from_integer(m[i][j].clone()) * &x[j];
        }
        x[i] = acc / BigRational::from_integer(m[i][i].clone());
    }
    LinearOutcome::Unique(x)
}

/// Solves `a·x = b` with rational right-hand side by clearing denominators.
pub fn solve_rational_rhs(a: &[Vec<BigInt>], b: &[BigRational]) -> LinearOutcome {
    let lcm = b.iter().fold(BigInt::one(), |acc, q| num_integer::lcm(acc, q.denom().clone()));
    let scaled: Vec<BigInt> = b.iter().map(|q| q.numer() * (&lcm / q.denom())).collect();
    match solve(a, &scaled) {
        LinearOutcome::Unique(x) => {
            let l = BigRational::from_integer(lcm);
            LinearOutcome::Unique(x.into_iter().map(|v| v / &l).collect())
        }
        singular => singular,
    }
}
