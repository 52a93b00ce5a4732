//! Independent oracles shared by the integration suites.
#![allow(dead_code)]

use coxring::exactmath::{int, DegreeLayout, Rational, UniPoly};
use coxring::grading::{IntMatrix, Snf};
use coxring::ratcurve::{min_divisor, Divisor, GluedCurve, P1Point};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Brute-force ansatz: sections are `g(z) / prod (z-p)^{D+(p)}` with
/// `deg g <= deg D+`; impose the remaining order conditions as linear
/// equations on the coefficients of g and count the solutions.
pub fn ansatz_dimension(curve: &GluedCurve, d: &Divisor) -> usize {
    use coxring::exactmath::{rank_kernel, QMatrix};
    let dmin = min_divisor(d, curve);
    let pos: i64 = dmin.values().filter(|&&c| c > 0).sum();
    let mut den = UniPoly::one();
    for (p, &c) in &dmin {
        if let (P1Point::Finite(a), true) = (p, c > 0) {
            den = &den * &UniPoly::linear(a).pow(c as u32);
        }
    }
    let n = (pos + 1) as usize;
    // conditions: g vanishes to order -c at finite points with c < 0 (derivatives at a),
    // and deg g <= deg den + c_inf
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    for (p, &c) in &dmin {
        if let (P1Point::Finite(a), true) = (p, c < 0) {
            for k in 0..(-c) as usize {
                // k-th Taylor coefficient at a of z^j is C(j,k) a^(j-k)
                rows.push(
                    (0..n)
                        .map(|j| {
                            if j < k {
                                int(0)
                            } else {
                                let binom = (0..k).fold(1i64, |acc, i| acc * (j - i) as i64 / (i as i64 + 1));
                                int(binom) * pow(a, j - k)
                            }
                        })
                        .collect(),
                );
            }
        }
    }
    let inf_c = dmin.get(&P1Point::Infinity).copied().unwrap_or(0);
    let max_deg = den.degree().unwrap() as i64 + inf_c;
    for j in 0..n as i64 {
        if j > max_deg {
            let mut row = vec![int(0); n];
            row[j as usize] = int(1);
            rows.push(row);
        }
    }
    if rows.is_empty() {
        return n;
    }
    let m = QMatrix::from_rows_with_cols(rows, n);
    rank_kernel(&m).1.len()
}

fn pow(a: &Rational, e: usize) -> Rational {
    (0..e).fold(int(1), |acc, _| acc * a)
}

/// All exponent vectors of total degree at most `bound` whose degree equals
/// `target` in the group described by `layout`.
pub fn naive_monomials(layout: &DegreeLayout, degrees: &[Vec<i64>], target: &[i64], bound: u32) -> Vec<Vec<u32>> {
    let r = degrees.len();
    let mut out = Vec::new();
    let mut e = vec![0u32; r];
    loop {
        let total: u32 = e.iter().sum();
        if total <= bound {
            let mut d = vec![0i64; layout.len()];
            for (k, &x) in e.iter().enumerate() {
                for (t, v) in d.iter_mut().zip(&degrees[k]) {
                    *t += x as i64 * v;
                }
            }
            if layout.equal(&d, target) {
                out.push(e.clone());
            }
        }
        // odometer over [0, bound]^r
        let mut i = 0;
        loop {
            if i == r {
                out.sort();
                return out;
            }
            e[i] += 1;
            if e[i] <= bound {
                break;
            }
            e[i] = 0;
            i += 1;
        }
    }
}

fn minor(m: &IntMatrix, rows: &[usize], cols: &[usize]) -> BigInt {
    let sub: Vec<Vec<BigInt>> = rows.iter().map(|&i| cols.iter().map(|&j| m[(i, j)].clone()).collect()).collect();
    let k = sub.len();
    let mut t = IntMatrix::zeros(k, k);
    for (i, row) in sub.into_iter().enumerate() {
        for (j, v) in row.into_iter().enumerate() {
            t[(i, j)] = v;
        }
    }
    t.det()
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    if n < k {
        return Vec::new();
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

/// Invariant factors from determinantal divisors: `d_1 ... d_k` is the gcd
/// of all `k x k` minors.
pub fn determinantal_invariants(m: &IntMatrix) -> Vec<BigInt> {
    let mut prev = BigInt::one();
    let mut out = Vec::new();
    for k in 1..=m.rows().min(m.cols()) {
        let mut g = BigInt::zero();
        for rows in subsets(m.rows(), k) {
            for cols in subsets(m.cols(), k) {
                g = g.gcd(&minor(m, &rows, &cols));
            }
        }
        if g.is_zero() {
            break;
        }
        out.push(&g / &prev);
        prev = g;
    }
    out
}

/// Checks `U M V = D`, unimodularity, diagonal shape, divisibility and
/// agreement with the determinantal oracle.
pub fn check_snf(m: &IntMatrix, snf: &Snf) -> Result<(), String> {
    if snf.u.mul(m).mul(&snf.v) != snf.d {
        return Err("U M V != D".into());
    }
    if snf.u.det().abs() != BigInt::one() || snf.v.det().abs() != BigInt::one() {
        return Err("transform not unimodular".into());
    }
    for i in 0..snf.d.rows() {
        for j in 0..snf.d.cols() {
            if i != j && !snf.d[(i, j)].is_zero() {
                return Err("D not diagonal".into());
            }
        }
    }
    let diag = snf.diagonal();
    if diag.iter().any(|d| d.is_negative()) {
        return Err("negative diagonal entry".into());
    }
    for w in diag.windows(2) {
        if !w[0].is_zero() && !(&w[1] % &w[0]).is_zero() || w[0].is_zero() && !w[1].is_zero() {
            return Err(format!("divisibility fails: {} then {}", w[0], w[1]));
        }
    }
    let nonzero: Vec<BigInt> = diag.into_iter().filter(|d| !d.is_zero()).collect();
    if nonzero != determinantal_invariants(m) {
        return Err("invariant factors disagree with determinantal divisors".into());
    }
    Ok(())
}
