//! Exact elimination over the integers and the rationals.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Rank of an integer matrix by fraction-free (Bareiss) elimination.
///
/// Every intermediate entry is a minor of the input, so the divisions are exact.
pub fn bareiss_rank(rows: &[Vec<BigInt>]) -> usize {
    let mut m: Vec<Vec<BigInt>> = rows.to_vec();
    let nr = m.len();
    let nc = m.first().map_or(0, Vec::len);
    let mut prev = BigInt::one();
    let mut rank = 0;
    for col in 0..nc {
        if rank == nr {
            break;
        }
        let Some(p) = (rank..nr).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        for i in rank + 1..nr {
            for j in col + 1..nc {
                let v = &m[rank][col] * &m[i][j] - &m[i][col] * &m[rank][j];
                m[i][j] = v / &prev;
            }
            m[i][col] = BigInt::zero();
        }
        prev = m[rank][col].clone();
        rank += 1;
    }
    rank
}

/// Reduced row-echelon form; zero rows are dropped.
#[derive(Debug, Clone, PartialEq)]
pub struct Rref {
    pub rows: Vec<Vec<BigRational>>,
    pub pivots: Vec<usize>,
}

pub fn to_rational(rows: &[Vec<BigInt>]) -> Vec<Vec<BigRational>> {
    rows.iter()
        .map(|r| r.iter().map(|x| BigRational::from_integer(x.clone())).collect())
        .collect()
}

/// Gauss-Jordan elimination over the rationals, columns scanned left to right.
pub fn rref(rows: &[Vec<BigRational>]) -> Rref {
    let mut m: Vec<Vec<BigRational>> = rows.to_vec();
    let nr = m.len();
    let nc = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..nc {
        if r == nr {
            break;
        }
        let Some(p) = (r..nr).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][col].recip();
        for x in m[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..nr {
            if i != r && !m[i][col].is_zero() {
                let f = m[i][col].clone();
                for j in 0..nc {
                    let d = &f * &m[r][j];
                    m[i][j] -= d;
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    m.truncate(r);
    Rref { rows: m, pivots }
}

/// Scales a rational row to a primitive integer row (content 1, first non-zero entry positive).
pub fn primitive_integer_row(row: &[BigRational]) -> Vec<BigInt> {
    let lcm = row
        .iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = row.iter().map(|x| (x * &lcm).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return ints;
    }
    let sign = ints
        .iter()
        .find(|x| !x.is_zero())
        .map_or(BigInt::one(), |x| if x.is_negative() { -BigInt::one() } else { BigInt::one() });
    ints.into_iter().map(|x| x / &g * &sign).collect()
}

/// Multiplies a rational row by the lcm of its denominators, making the first entry positive.
pub fn scale_to_integers(row: &[BigRational]) -> Vec<BigInt> {
    let lcm = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let mut ints: Vec<BigInt> = row.iter().map(|x| (x * &lcm).to_integer()).collect();
    if ints.iter().find(|x| !x.is_zero()).is_some_and(Signed::is_negative) {
        ints.iter_mut().for_each(|x| *x = -&*x);
    }
    ints
}

/// Integer arithmetic shared by the exact searches: `i128` on the fast path, `BigInt` otherwise.
pub(crate) trait ExactInt: Clone + Ord + Integer + Signed {
    fn from_big(v: &BigInt) -> Self;
    fn from_u64(v: u64) -> Self;
    fn as_coord(&self) -> u64;
}

impl ExactInt for i128 {
    fn from_big(v: &BigInt) -> Self {
        v.to_i128().expect("range checked by fits_i128")
    }
    fn from_u64(v: u64) -> Self {
        v as i128
    }
    fn as_coord(&self) -> u64 {
        *self as u64
    }
}

impl ExactInt for BigInt {
    fn from_big(v: &BigInt) -> Self {
        v.clone()
    }
    fn from_u64(v: u64) -> Self {
        BigInt::from(v)
    }
    fn as_coord(&self) -> u64 {
        ToPrimitive::to_u64(self).expect("coordinate within bound")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int_rows(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
    }

    #[test]
    fn rank_of_small_matrices() {
        assert_eq!(bareiss_rank(&int_rows(&[&[1, 1, -1]])), 1);
        assert_eq!(bareiss_rank(&int_rows(&[&[1, 1, -1, 0, 0], &[0, 0, 1, 1, -1]])), 2);
        assert_eq!(bareiss_rank(&int_rows(&[&[2, 4], &[1, 2]])), 1);
        assert_eq!(bareiss_rank(&int_rows(&[&[0, 0], &[0, 0]])), 0);
        assert_eq!(bareiss_rank(&[]), 0);
    }

    #[test]
    fn rref_pivots_skip_dependent_columns() {
        let r = rref(&to_rational(&int_rows(&[&[0, 2, 4], &[0, 1, 3]])));
        assert_eq!(r.pivots, vec![1, 2]);
        assert_eq!(r.rows.len(), 2);
    }

    #[test]
    fn primitive_row_clears_denominators() {
        let row = vec![
            BigRational::new(1.into(), 2.into()),
            BigRational::new((-3).into(), 4.into()),
        ];
        assert_eq!(primitive_integer_row(&row), vec![BigInt::from(2), BigInt::from(-3)]);
    }
}
