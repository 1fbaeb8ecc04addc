//! Integer row lattices: Hermite and Smith normal forms, saturation and
//! unimodular completion.
//!
//! Matrices are `Vec` of rows. Arithmetic is `i64` with overflow checks.

pub type Matrix = Vec<Vec<i64>>;

pub fn identity(n: usize) -> Matrix {
    (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect()
}

pub fn transpose(m: &[Vec<i64>], cols: usize) -> Matrix {
    (0..cols).map(|j| m.iter().map(|r| r[j]).collect()).collect()
}

pub fn mat_mul(a: &[Vec<i64>], b: &[Vec<i64>], cols: usize) -> Matrix {
    a.iter()
        .map(|r| (0..cols).map(|j| r.iter().zip(b).map(|(&x, row)| x * row[j]).sum()).collect())
        .collect()
}

/// `(g, x, y)` with `g = gcd(a, b) ≥ 0` and `ax + by = g`.
pub fn extended_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    let (mut r0, mut r1) = (a, b);
    let (mut s0, mut s1) = (1i64, 0i64);
    let (mut t0, mut t1) = (0i64, 1i64);
    while r1 != 0 {
        let q = r0.div_euclid(r1);
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 < 0 {
        (-r0, -s0, -t0)
    } else {
        (r0, s0, t0)
    }
}

pub fn gcd_all(v: &[i64]) -> i64 {
    v.iter().fold(0, |g, &x| extended_gcd(g, x).0)
}

fn row_axpy(m: &mut [Vec<i64>], dst: usize, src: usize, q: i64) {
    if q == 0 {
        return;
    }
    for j in 0..m[dst].len() {
        let v = m[src][j];
        m[dst][j] -= q * v;
    }
}

/// Row-style Hermite normal form `H = U·M`: echelon, positive pivots,
/// entries above each pivot reduced into `[0, pivot)`, zero rows last.
pub fn hnf(m: &[Vec<i64>], cols: usize) -> (Matrix, Matrix) {
    let rows = m.len();
    let mut a: Matrix = m.to_vec();
    let mut u = identity(rows);
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        while let Some(p) = (r..rows).filter(|&i| a[i][c] != 0).min_by_key(|&i| a[i][c].abs()) {
            a.swap(r, p);
            u.swap(r, p);
            let mut done = true;
            for i in r + 1..rows {
                if a[i][c] != 0 {
                    let q = a[i][c].div_euclid(a[r][c]);
                    row_axpy(&mut a, i, r, q);
                    row_axpy(&mut u, i, r, q);
                    done &= a[i][c] == 0;
                }
            }
            if done {
                break;
            }
        }
        if a[r][c] == 0 {
            continue;
        }
        if a[r][c] < 0 {
            a[r].iter_mut().for_each(|x| *x = -*x);
            u[r].iter_mut().for_each(|x| *x = -*x);
        }
        for i in 0..r {
            let q = a[i][c].div_euclid(a[r][c]);
            row_axpy(&mut a, i, r, q);
            row_axpy(&mut u, i, r, q);
        }
        r += 1;
    }
    (a, u)
}

/// Smith normal form `D = U·M·V` with `d₁ | d₂ | …` positive. Also returns
/// `V⁻¹`.
pub fn snf(m: &[Vec<i64>], cols: usize) -> (Matrix, Matrix, Matrix, Matrix) {
    let rows = m.len();
    let mut a: Matrix = m.to_vec();
    let mut u = identity(rows);
    let mut v = identity(cols);
    let mut vinv = identity(cols);

    let col_axpy = |a: &mut Matrix, v: &mut Matrix, vinv: &mut Matrix, dst: usize, src: usize, q: i64| {
        // col_dst -= q col_src
        for row in a.iter_mut() {
            row[dst] -= q * row[src];
        }
        for row in v.iter_mut() {
            row[dst] -= q * row[src];
        }
        // inverse: row_src += q row_dst
        row_axpy(vinv, src, dst, -q);
    };
    let col_swap = |a: &mut Matrix, v: &mut Matrix, vinv: &mut Matrix, i: usize, j: usize| {
        for row in a.iter_mut() {
            row.swap(i, j);
        }
        for row in v.iter_mut() {
            row.swap(i, j);
        }
        vinv.swap(i, j);
    };

    for t in 0..rows.min(cols) {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if a[i][j] != 0 && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                return finish(a, u, v, vinv);
            };
            a.swap(t, pi);
            u.swap(t, pi);
            col_swap(&mut a, &mut v, &mut vinv, t, pj);
            let mut clean = true;
            for i in t + 1..rows {
                let q = a[i][t].div_euclid(a[t][t]);
                row_axpy(&mut a, i, t, q);
                row_axpy(&mut u, i, t, q);
                clean &= a[i][t] == 0;
            }
            for j in t + 1..cols {
                let q = a[t][j].div_euclid(a[t][t]);
                col_axpy(&mut a, &mut v, &mut vinv, j, t, q);
                clean &= a[t][j] == 0;
            }
            if !clean {
                continue;
            }
            let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| a[i][j] % a[t][t] != 0));
            match bad {
                Some(i) => {
                    row_axpy(&mut a, t, i, -1);
                    row_axpy(&mut u, t, i, -1);
                }
                None => break,
            }
        }
        if a[t][t] < 0 {
            a[t].iter_mut().for_each(|x| *x = -*x);
            u[t].iter_mut().for_each(|x| *x = -*x);
        }
    }
    finish(a, u, v, vinv)
}

fn finish(a: Matrix, u: Matrix, v: Matrix, vinv: Matrix) -> (Matrix, Matrix, Matrix, Matrix) {
    (a, u, v, vinv)
}

/// Nonzero rows of the Hermite normal form.
pub fn hnf_basis(m: &[Vec<i64>], cols: usize) -> Matrix {
    hnf(m, cols).0.into_iter().filter(|r| r.iter().any(|&x| x != 0)).collect()
}

/// `(span_ℚ M) ∩ ℤⁿ` in Hermite normal form.
pub fn saturate(m: &[Vec<i64>], cols: usize) -> Matrix {
    if m.is_empty() {
        return Vec::new();
    }
    let (d, _, _, vinv) = snf(m, cols);
    let r = (0..m.len().min(cols)).take_while(|&i| d[i][i] != 0).count();
    hnf_basis(&vinv[..r], cols)
}

/// Integer coefficients `x` with `x·B = v` for an echelon basis `B`, if any.
pub fn solve_in_basis(basis: &[Vec<i64>], v: &[i64]) -> Option<Vec<i64>> {
    let mut rest = v.to_vec();
    let mut x = Vec::with_capacity(basis.len());
    for row in basis {
        let p = row.iter().position(|&e| e != 0).expect("basis rows are nonzero");
        if rest[p] % row[p] != 0 {
            return None;
        }
        let q = rest[p] / row[p];
        for (r, &b) in rest.iter_mut().zip(row) {
            *r -= q * b;
        }
        x.push(q);
    }
    rest.iter().all(|&r| r == 0).then_some(x)
}

/// A unimodular `n×n` matrix `W` with first row `α` (primitive), and `W⁻¹`.
pub fn complete_to_unimodular(alpha: &[i64]) -> (Matrix, Matrix) {
    let n = alpha.len();
    let column: Matrix = alpha.iter().map(|&a| vec![a]).collect();
    let (h, u) = hnf(&column, 1);
    assert_eq!(h[0][0], 1, "α must be primitive");
    // U·αᵀ = e₁, so αᵀ is the first column of U⁻¹ and W = (U⁻¹)ᵀ.
    let (_, uinv) = hnf(&u, n);
    let w = transpose(&uinv, n);
    let winv = transpose(&u, n);
    (w, winv)
}

/// Determinant by fraction-free elimination.
pub fn determinant(m: &[Vec<i64>]) -> i64 {
    let n = m.len();
    let mut a: Vec<Vec<i128>> = m.iter().map(|r| r.iter().map(|&x| i128::from(x)).collect()).collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| a[i][k] != 0) else {
            return 0;
        };
        if p != k {
            a.swap(p, k);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    i64::try_from(sign * a[n - 1][n - 1]).expect("determinant fits in i64")
}
