//! Genus-zero plane curve counts from Kontsevich's recursion. Shares no code
//! with the tropical side.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Memoized `N_d`, the number of rational degree-`d` plane curves through
/// `3d - 1` general points.
#[derive(Debug, Default)]
pub struct OracleTable {
    memo: HashMap<u32, BigInt>,
}

impl OracleTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&mut self, d: u32) -> BigInt {
        assert!(d >= 1, "degree must be positive");
        if let Some(n) = self.memo.get(&d) {
            return n.clone();
        }
        let value = if d == 1 {
            BigInt::one()
        } else {
            let mut acc = BigInt::zero();
            for d1 in 1..d {
                let d2 = d - d1;
                let (n1, n2) = (self.get(d1), self.get(d2));
                acc += n1 * n2 * term(d, d1, d2);
            }
            acc
        };
        self.memo.insert(d, value.clone());
        value
    }
}

/// `d1²d2² C(3d−4, 3d1−2) − d1³d2 C(3d−4, 3d1−1)`.
fn term(d: u32, d1: u32, d2: u32) -> BigInt {
    let (a, b) = (BigInt::from(d1), BigInt::from(d2));
    let top = 3 * d - 4;
    &a * &a * &b * &b * binomial(top, 3 * d1 - 2) - &a * &a * &a * &b * binomial(top, 3 * d1 - 1)
}

fn binomial(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    (0..k).fold(BigInt::one(), |acc, i| acc * BigInt::from(n - i) / BigInt::from(i + 1))
}

/// `N_d`; errors for `d <= 0`.
pub fn kontsevich(d: i64) -> Result<BigInt, String> {
    let d = u32::try_from(d).ok().filter(|&d| d >= 1).ok_or_else(|| format!("degree must be positive, got {d}"))?;
    Ok(OracleTable::new().get(d))
}
