//! Test-only oracles and random fixtures, kept independent of the library's
//! elimination code paths.
#![allow(dead_code)]

use forms4d::IntMatrix;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use rand::Rng;

pub fn int_matrix(rows: &[Vec<i64>]) -> IntMatrix {
    IntMatrix::from_rows(rows.iter().map(|r| r.iter().copied())).unwrap()
}

pub fn random_matrix<R: Rng>(rng: &mut R, rows: usize, cols: usize, bound: i64) -> IntMatrix {
    let data: Vec<Vec<i64>> = (0..rows)
        .map(|_| (0..cols).map(|_| rng.gen_range(-bound..=bound)).collect())
        .collect();
    int_matrix(&data)
}

pub fn random_symmetric<R: Rng>(rng: &mut R, n: usize, bound: i64) -> IntMatrix {
    let mut data = vec![vec![0i64; n]; n];
    for i in 0..n {
        for j in i..n {
            let x = rng.gen_range(-bound..=bound);
            data[i][j] = x;
            data[j][i] = x;
        }
    }
    int_matrix(&data)
}

/// Product of up to `max_steps` elementary matrices `I + c·E_ij`, `|c| ≤ 3`,
/// with an occasional row swap or sign flip.
pub fn random_unimodular<R: Rng>(rng: &mut R, n: usize, max_steps: usize) -> IntMatrix {
    let mut m = vec![vec![0i64; n]; n];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = 1;
    }
    let steps = rng.gen_range(1..=max_steps);
    for _ in 0..steps {
        let kind = rng.gen_range(0..6);
        if n == 1 || kind == 0 {
            let i = rng.gen_range(0..n);
            for x in m[i].iter_mut() {
                *x = -*x;
            }
            continue;
        }
        let i = rng.gen_range(0..n);
        let mut j = rng.gen_range(0..n - 1);
        if j >= i {
            j += 1;
        }
        if kind == 1 {
            m.swap(i, j);
            continue;
        }
        let mut c = rng.gen_range(-3..=2);
        if c >= 0 {
            c += 1;
        }
        let source = m[j].clone();
        for (x, s) in m[i].iter_mut().zip(&source) {
            *x += c * s;
        }
    }
    int_matrix(&m)
}

/// Determinant by Laplace expansion along the first row.
pub fn cofactor_det(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    match n {
        0 => BigInt::from(1),
        1 => m[0][0].clone(),
        2 => &m[0][0] * &m[1][1] - &m[0][1] * &m[1][0],
        _ => {
            let mut total = BigInt::zero();
            for j in 0..n {
                if m[0][j].is_zero() {
                    continue;
                }
                let minor: Vec<Vec<BigInt>> = m[1..]
                    .iter()
                    .map(|r| r.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, x)| x.clone()).collect())
                    .collect();
                let term = &m[0][j] * cofactor_det(&minor);
                if j % 2 == 0 {
                    total += term;
                } else {
                    total -= term;
                }
            }
            total
        }
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// gcd of all k×k minors (the k-th determinantal divisor).
pub fn minor_gcd(a: &IntMatrix, k: usize) -> BigInt {
    let rows = a.to_rows();
    let mut g = BigInt::zero();
    for rs in subsets(a.rows(), k) {
        for cs in subsets(a.cols(), k) {
            let sub: Vec<Vec<BigInt>> = rs
                .iter()
                .map(|&r| cs.iter().map(|&c| rows[r][c].clone()).collect())
                .collect();
            g = g.gcd(&cofactor_det(&sub));
        }
    }
    g
}

pub fn big(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}
