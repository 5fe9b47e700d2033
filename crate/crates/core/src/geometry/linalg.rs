//! Small dense linear algebra, generic over [`Real`] so it differentiates.

use crate::dual::Real;

/// Inverse and determinant by Gauss-Jordan elimination with partial pivoting
/// on the real part. `None` if a pivot vanishes.
pub fn inverse<T: Real, const N: usize>(m: &[[T; N]; N]) -> Option<([[T; N]; N], T)> {
    let mut a = *m;
    let mut inv: [[T; N]; N] =
        std::array::from_fn(|i| std::array::from_fn(|j| T::cst(if i == j { 1.0 } else { 0.0 })));
    let mut det = T::one();
    for col in 0..N {
        let piv = (col..N)
            .max_by(|&i, &j| a[i][col].re().abs().total_cmp(&a[j][col].re().abs()))
            .unwrap();
        if a[piv][col].re() == 0.0 || !a[piv][col].re().is_finite() {
            return None;
        }
        if piv != col {
            a.swap(piv, col);
            inv.swap(piv, col);
            det = -det;
        }
        let p = a[col][col];
        det *= p;
        let pinv = p.recip();
        for j in 0..N {
            a[col][j] = a[col][j] * pinv;
            inv[col][j] = inv[col][j] * pinv;
        }
        for i in 0..N {
            if i != col {
                let f = a[i][col];
                for j in 0..N {
                    a[i][j] = a[i][j] - f * a[col][j];
                    inv[i][j] = inv[i][j] - f * inv[col][j];
                }
            }
        }
    }
    Some((inv, det))
}

pub fn det<T: Real, const N: usize>(m: &[[T; N]; N]) -> T {
    inverse(m).map(|(_, d)| d).unwrap_or_else(T::zero)
}

/// Cholesky test.
pub fn is_positive_definite<const N: usize>(m: &[[f64; N]; N]) -> bool {
    let mut l = [[0.0; N]; N];
    for i in 0..N {
        for j in 0..=i {
            let s: f64 = (0..j).map(|k| l[i][k] * l[j][k]).sum();
            if i == j {
                let d = m[i][i] - s;
                if d <= 0.0 || !d.is_finite() {
                    return false;
                }
                l[i][i] = d.sqrt();
            } else {
                l[i][j] = (m[i][j] - s) / l[j][j];
            }
        }
    }
    true
}

pub fn frobenius<const N: usize>(m: &[[f64; N]; N]) -> f64 {
    m.iter().flatten().map(|v| v * v).sum::<f64>().sqrt()
}

/// ω^ab = g^ap g^bq ω_pq.
pub fn raise2<T: Real, const N: usize>(ginv: &[[T; N]; N], w: &[[T; N]; N]) -> [[T; N]; N] {
    let mut half = [[T::zero(); N]; N];
    for a in 0..N {
        for q in 0..N {
            let mut s = T::zero();
            for p in 0..N {
                s += ginv[a][p] * w[p][q];
            }
            half[a][q] = s;
        }
    }
    let mut out = [[T::zero(); N]; N];
    for a in 0..N {
        for b in 0..N {
            let mut s = T::zero();
            for q in 0..N {
                s += half[a][q] * ginv[b][q];
            }
            out[a][b] = s;
        }
    }
    out
}

pub fn raise1<T: Real, const N: usize>(ginv: &[[T; N]; N], v: &[T; N]) -> [T; N] {
    std::array::from_fn(|a| {
        let mut s = T::zero();
        for b in 0..N {
            s += ginv[a][b] * v[b];
        }
        s
    })
}

pub fn inner1<const N: usize>(ginv: &[[f64; N]; N], u: &[f64; N], v: &[f64; N]) -> f64 {
    let mut s = 0.0;
    for a in 0..N {
        for b in 0..N {
            s += ginv[a][b] * u[a] * v[b];
        }
    }
    s
}

/// Eigenvalues of a symmetric 2×2 matrix, ascending.
pub fn sym2_eigenvalues(m: &[[f64; 2]; 2]) -> [f64; 2] {
    let tr = m[0][0] + m[1][1];
    let d = ((m[0][0] - m[1][1]) * 0.5).hypot(m[0][1]);
    [0.5 * tr - d, 0.5 * tr + d]
}
