//! Hermite and Smith normal forms of integer matrices.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

pub type ZMatrix = Vec<Vec<BigInt>>;

pub fn from_i64(m: &[Vec<i64>]) -> ZMatrix {
    m.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
}

/// Row-style Hermite normal form: the nonzero rows form an echelon basis of
/// the row lattice, pivots positive, entries above each pivot reduced into
/// `[0, pivot)`.
pub fn hermite_normal_form(m: &ZMatrix) -> ZMatrix {
    let mut a: ZMatrix = m.clone();
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        // Euclid down the column until one nonzero entry remains
        loop {
            let nz: Vec<usize> = (r..rows).filter(|&i| !a[i][c].is_zero()).collect();
            if nz.is_empty() {
                break;
            }
            let p = *nz.iter().min_by_key(|&&i| a[i][c].abs()).expect("nonempty");
            a.swap(r, p);
            if nz.len() == 1 {
                break;
            }
            let pivot_row = a[r].clone();
            for i in r + 1..rows {
                if a[i][c].is_zero() {
                    continue;
                }
                let q = a[i][c].div_floor(&pivot_row[c]);
                for (x, y) in a[i].iter_mut().zip(&pivot_row) {
                    *x -= &q * y;
                }
            }
        }
        if a[r][c].is_zero() {
            continue;
        }
        if a[r][c].is_negative() {
            for x in a[r].iter_mut() {
                *x = -&*x;
            }
        }
        let pivot_row = a[r].clone();
        for i in 0..r {
            let q = a[i][c].div_floor(&pivot_row[c]);
            if !q.is_zero() {
                for (x, y) in a[i].iter_mut().zip(&pivot_row) {
                    *x -= &q * y;
                }
            }
        }
        r += 1;
    }
    a.truncate(r);
    a
}

/// Elementary divisors `d_1 | d_2 | …` (nonzero ones only) of the Smith
/// normal form.
pub fn elementary_divisors(m: &ZMatrix) -> Vec<BigInt> {
    let mut a = m.clone();
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // smallest nonzero entry of the remaining block as pivot
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !a[i][j].is_zero() && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        let mut clean = true;
        for i in t + 1..rows {
            if a[i][t].is_zero() {
                continue;
            }
            let q = a[i][t].div_floor(&a[t][t]);
            let pivot_row = a[t].clone();
            for (x, y) in a[i].iter_mut().zip(&pivot_row) {
                *x -= &q * y;
            }
            clean &= a[i][t].is_zero();
        }
        for j in t + 1..cols {
            if a[t][j].is_zero() {
                continue;
            }
            let q = a[t][j].div_floor(&a[t][t]);
            for row in a.iter_mut() {
                let v = &q * &row[t];
                row[j] -= v;
            }
            clean &= a[t][j].is_zero();
        }
        if !clean {
            continue;
        }
        // divisibility: fold a non-divisible entry into the pivot row
        let p = a[t][t].clone();
        let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !a[i][j].is_multiple_of(&p)));
        if let Some(i) = bad {
            let row_i = a[i].clone();
            for (x, y) in a[t].iter_mut().zip(&row_i) {
                *x += y;
            }
            continue;
        }
        diag.push(p.abs());
        t += 1;
    }
    diag
}

/// Solve `x · basis = v` over ℤ for a basis in Hermite normal form.
pub fn solve_hnf(basis: &ZMatrix, v: &[BigInt]) -> Option<Vec<BigInt>> {
    let mut rest: Vec<BigInt> = v.to_vec();
    let mut x = vec![BigInt::zero(); basis.len()];
    for (k, row) in basis.iter().enumerate() {
        let c = row.iter().position(|e| !e.is_zero())?;
        // entries left of the pivot must already be cleared
        if rest[..c].iter().any(|e| !e.is_zero()) {
            return None;
        }
        let (q, r) = rest[c].div_rem(&row[c]);
        if !r.is_zero() {
            return None;
        }
        for (e, b) in rest.iter_mut().zip(row) {
            *e -= &q * b;
        }
        x[k] = q;
    }
    rest.iter().all(Zero::is_zero).then_some(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(m: &[Vec<i64>]) -> ZMatrix {
        from_i64(m)
    }

    #[test]
    fn hnf_small() {
        let h = hermite_normal_form(&z(&[vec![2, 4], vec![3, 5]]));
        assert_eq!(h, z(&[vec![1, 1], vec![0, 2]]));
        let h = hermite_normal_form(&z(&[vec![-2], vec![2]]));
        assert_eq!(h, z(&[vec![2]]));
    }

    #[test]
    fn snf_small() {
        assert_eq!(elementary_divisors(&z(&[vec![2, 0], vec![0, 3]])), vec![BigInt::from(1), BigInt::from(6)]);
        assert_eq!(elementary_divisors(&z(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]])), vec![
            BigInt::from(2),
            BigInt::from(6),
            BigInt::from(12)
        ]);
        assert_eq!(elementary_divisors(&z(&[vec![0, 0], vec![0, 0]])), Vec::<BigInt>::new());
    }

    #[test]
    fn hnf_membership() {
        let h = hermite_normal_form(&z(&[vec![2, 0], vec![0, 3], vec![1, 1]]));
        assert!(solve_hnf(&h, &[BigInt::from(1), BigInt::from(1)]).is_some());
        assert!(solve_hnf(&h, &[BigInt::from(1), BigInt::from(0)]).is_some());
        let h2 = hermite_normal_form(&z(&[vec![2, 0], vec![0, 2]]));
        assert!(solve_hnf(&h2, &[BigInt::from(1), BigInt::from(0)]).is_none());
    }
}
