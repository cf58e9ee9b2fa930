#![allow(dead_code)]

use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

pub fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(f64::MIN_POSITIVE)
}

/// Exact determinant by Gaussian elimination over the rationals.
pub fn rational_determinant(mut a: Vec<Vec<BigRational>>) -> BigRational {
    let n = a.len();
    let mut det = BigRational::from_integer(1.into());
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !a[i][k].is_zero()) else {
            return BigRational::zero();
        };
        if p != k {
            a.swap(p, k);
            det = -det;
        }
        det *= &a[k][k];
        let (top, rest) = a.split_at_mut(k + 1);
        let pivot = &top[k];
        for row in rest {
            let f = &row[k] / &pivot[k];
            for (x, p) in row[k..].iter_mut().zip(&pivot[k..]) {
                *x -= &f * p;
            }
        }
    }
    det
}

/// `det(1/(x_i + y_j))` with the f64 inputs taken as exact binary rationals.
pub fn direct_cauchy_determinant(xs: &[f64], ys: &[f64]) -> f64 {
    let m = xs
        .iter()
        .map(|&x| {
            ys.iter()
                .map(|&y| {
                    (BigRational::from_float(x).unwrap() + BigRational::from_float(y).unwrap())
                        .recip()
                })
                .collect()
        })
        .collect();
    rational_determinant(m).to_f64().unwrap()
}

pub fn separated(values: &[f64], gap: f64) -> bool {
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    v.windows(2).all(|w| w[1] - w[0] >= gap)
}
