//! Small exact linear algebra over `Z` and `Q`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::lattice::make_primitive;

pub(crate) type IntMatrix = Vec<Vec<BigInt>>;

fn to_rational_rows(rows: &[Vec<BigInt>]) -> Vec<Vec<BigRational>> {
    rows.iter()
        .map(|r| r.iter().cloned().map(BigRational::from_integer).collect())
        .collect()
}

/// Reduced row echelon form; returns the nonzero rows and pivot columns.
pub(crate) fn rref(mut m: Vec<Vec<BigRational>>, ncols: usize) -> (Vec<Vec<BigRational>>, Vec<usize>) {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        if row >= m.len() {
            break;
        }
        let Some(p) = (row..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        let inv = m[row][col].recip();
        for c in col..ncols {
            m[row][c] = &m[row][c] * &inv;
        }
        for r in 0..m.len() {
            if r != row && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for c in col..ncols {
                    let delta = &f * &m[row][c];
                    m[r][c] -= delta;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    m.truncate(row);
    (m, pivots)
}

/// Canonical integer basis of the row space: RREF rows scaled to primitive integers.
pub(crate) fn canonical_row_basis(rows: &[Vec<BigInt>], ncols: usize) -> IntMatrix {
    if rows.is_empty() {
        return Vec::new();
    }
    let (r, _) = rref(to_rational_rows(rows), ncols);
    r.into_iter().map(|row| rational_row_to_primitive(&row)).collect()
}

pub(crate) fn rational_row_to_primitive(row: &[BigRational]) -> Vec<BigInt> {
    let l = row.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let mut v: Vec<BigInt> = row.iter().map(|c| (c * &l).to_integer()).collect();
    make_primitive(&mut v);
    v
}

/// Orthogonal projection (standard inner product) of `v` onto the complement
/// of the row space of `basis`, scaled to a primitive integer vector.
pub(crate) fn project_out(v: &[BigInt], basis: &[Vec<BigInt>]) -> Vec<BigInt> {
    if basis.is_empty() {
        let mut out = v.to_vec();
        make_primitive(&mut out);
        return out;
    }
    let k = basis.len();
    let n = v.len();
    // Solve (B B^T) c = B v, then v - B^T c.
    let mut aug: Vec<Vec<BigRational>> = (0..k)
        .map(|i| {
            let mut row: Vec<BigRational> = (0..k)
                .map(|j| BigRational::from_integer(crate::lattice::dot(&basis[i], &basis[j])))
                .collect();
            row.push(BigRational::from_integer(crate::lattice::dot(&basis[i], v)));
            row
        })
        .collect();
    aug = rref(aug, k + 1).0;
    let mut out: Vec<BigRational> = v.iter().cloned().map(BigRational::from_integer).collect();
    for (i, row) in aug.iter().enumerate() {
        let c = &row[k];
        for j in 0..n {
            out[j] -= c * BigRational::from_integer(basis[i][j].clone());
        }
    }
    rational_row_to_primitive(&out)
}

/// Determinant of a square integer matrix by fraction-free elimination.
pub(crate) fn determinant(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a: IntMatrix = m.to_vec();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&r| !a[r][k].is_zero()) else {
                return BigInt::zero();
            };
            a.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * a[n - 1][n - 1].clone()
}

/// Rational determinant, by clearing denominators row by row.
pub(crate) fn determinant_rational(m: &[Vec<BigRational>]) -> BigRational {
    let mut scale = BigRational::one();
    let ints: IntMatrix = m
        .iter()
        .map(|row| {
            let l = row.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
            scale = &scale * BigRational::from_integer(l.clone());
            row.iter().map(|c| (c * &l).to_integer()).collect()
        })
        .collect();
    BigRational::from_integer(determinant(&ints)) / scale
}

/// All `k`-element subsets of `0..n` in lexicographic order.
pub(crate) fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Unimodular column reduction `A U = [H | 0]` with `H` in column echelon form.
///
/// Returns `(U, U^{-1}, r)`; the last `n - r` columns of `U` form a basis of
/// the integer kernel of `A`, which is a saturated sublattice.
pub(crate) fn column_reduce(a: &[Vec<BigInt>], n: usize) -> (IntMatrix, IntMatrix, usize) {
    let mut a: IntMatrix = a.to_vec();
    let mut u: IntMatrix = identity(n);
    let mut uinv: IntMatrix = identity(n);
    let mut col = 0;
    for row in 0..a.len() {
        if col >= n {
            break;
        }
        loop {
            // Smallest nonzero entry of this row among the active columns moves to `col`.
            let Some(p) = (col..n)
                .filter(|&j| !a[row][j].is_zero())
                .min_by(|&i, &j| a[row][i].abs().cmp(&a[row][j].abs()))
            else {
                break;
            };
            swap_cols(&mut a, &mut u, &mut uinv, col, p);
            let mut done = true;
            for j in col + 1..n {
                if a[row][j].is_zero() {
                    continue;
                }
                let q = a[row][j].div_floor(&a[row][col]);
                add_col_multiple(&mut a, &mut u, &mut uinv, j, col, &-q);
                if !a[row][j].is_zero() {
                    done = false;
                }
            }
            if done {
                col += 1;
                break;
            }
        }
    }
    (u, uinv, col)
}

fn identity(n: usize) -> IntMatrix {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect()
}

fn swap_cols(a: &mut IntMatrix, u: &mut IntMatrix, uinv: &mut IntMatrix, i: usize, j: usize) {
    if i == j {
        return;
    }
    for row in a.iter_mut().chain(u.iter_mut()) {
        row.swap(i, j);
    }
    uinv.swap(i, j);
}

/// column `j` += k * column `i`; the inverse gets row `i` -= k * row `j`.
fn add_col_multiple(a: &mut IntMatrix, u: &mut IntMatrix, uinv: &mut IntMatrix, j: usize, i: usize, k: &BigInt) {
    for row in a.iter_mut().chain(u.iter_mut()) {
        let d = &row[i] * k;
        row[j] += d;
    }
    let rj = uinv[j].clone();
    for (x, y) in uinv[i].iter_mut().zip(rj) {
        *x -= k * y;
    }
}
