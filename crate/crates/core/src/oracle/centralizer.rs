//! `|Z_{GL_n(F_q)}(u)|` by testing every matrix.

use rayon::prelude::*;

use super::field::{Elt, Field, Mat};
use crate::error::{Error, Result};
use crate::partitions::Partition;

pub const CENTRALIZER_LIMIT: u64 = 2_000_000;

/// Invertible matrices over `F_q` commuting with the unipotent of Jordan type `lambda`.
pub fn brute_centralizer(q: u32, lambda: &Partition) -> Result<u128> {
    let n = lambda.size();
    let f = Field::new(q)?;
    let size = (q as u64).checked_pow((n * n) as u32).unwrap_or(u64::MAX);
    if size > CENTRALIZER_LIMIT {
        return Err(Error::Infeasible(format!("{q}^{} matrices exceed the limit {CENTRALIZER_LIMIT}", n * n)));
    }
    let x = Mat::jordan_nilpotent(lambda.parts());
    let count = (0..size)
        .into_par_iter()
        .filter(|&idx| {
            let mut m = Mat::zeros(n, n);
            let mut r = idx;
            for k in 0..n * n {
                m.data[k] = (r % q as u64) as Elt;
                r /= q as u64;
            }
            // commuting with u = 1 + x is commuting with x
            m.mul(&x, &f) == x.mul(&m, &f) && m.det(&f) != 0
        })
        .count();
    Ok(count as u128)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn centralizer_examples() {
        let p = |s: &str| s.parse::<Partition>().unwrap();
        assert_eq!(brute_centralizer(2, &p("2")).unwrap(), 2);
        assert_eq!(brute_centralizer(3, &p("2")).unwrap(), 6);
        assert_eq!(brute_centralizer(2, &p("1,1")).unwrap(), 6);
        assert_eq!(brute_centralizer(3, &p("1,1,1")).unwrap(), 26 * 24 * 18);
        assert!(brute_centralizer(7, &p("1,1,1")).is_err());
    }
}
