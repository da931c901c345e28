//! Takagi factorization of a complex symmetric 4×4 matrix.

use super::eig::jacobi;
use super::mat::{inner, norm, Ket4, Mat4, Matrix, C64};

const NULL_TOL: f64 = 1e-12;

/// Factorizes a complex symmetric `tau` as `U tau Uᵀ = diag(s)`.
///
/// Returns the singular values in descending order and the unitary `U`.
/// Row `i` of `U` is the conjugate-free preimage `w_i` with
/// `tau w_i = s_i conj(w_i)`; its largest-modulus component is made
/// real-positive for nonzero `s_i`.
///
/// Works through the real symmetric embedding `[[A, B], [B, -A]]` with
/// `tau = A + iB`, whose eigenvalues are `±s_i`.
pub fn takagi(tau: &Mat4) -> ([f64; 4], Mat4) {
    let mut embed = Matrix::<8>::zeros();
    for i in 0..4 {
        for j in 0..4 {
            let z = tau.0[i][j];
            embed.0[i][j] = C64::new(z.re, 0.0);
            embed.0[i][j + 4] = C64::new(z.im, 0.0);
            embed.0[i + 4][j] = C64::new(z.im, 0.0);
            embed.0[i + 4][j + 4] = C64::new(-z.re, 0.0);
        }
    }
    let (vals, vecs) = jacobi(&embed);

    let mut s = [0.0; 4];
    let mut rows: Vec<Ket4> = Vec::with_capacity(4);
    for k in 0..4 {
        let col = 7 - k;
        let value = vals[col];
        if value <= NULL_TOL {
            break;
        }
        let mut w: Ket4 = std::array::from_fn(|i| {
            let p = vecs.0[i][col].re;
            let q = vecs.0[i + 4][col].re;
            C64::new(p, -q)
        });
        let n = norm(&w);
        for z in w.iter_mut() {
            *z /= n;
        }
        let lead = w
            .iter()
            .copied()
            .enumerate()
            .fold((0, -1.0), |acc, (i, z)| if z.norm() > acc.1 + 1e-14 { (i, z.norm()) } else { acc })
            .0;
        if w[lead].re < 0.0 {
            for z in w.iter_mut() {
                *z = -*z;
            }
        }
        s[k] = value;
        rows.push(w);
    }

    // complete with an orthonormal basis of the null directions
    let mut e = 0;
    while rows.len() < 4 && e < 4 {
        let mut cand = [C64::new(0.0, 0.0); 4];
        cand[e] = C64::new(1.0, 0.0);
        e += 1;
        for _ in 0..2 {
            for r in &rows {
                let ip = inner(r, &cand);
                for i in 0..4 {
                    cand[i] -= ip * r[i];
                }
            }
        }
        let n = norm(&cand);
        if n > 1e-6 {
            for z in cand.iter_mut() {
                *z /= n;
            }
            rows.push(cand);
        }
    }

    let mut u = Mat4::zeros();
    for (i, r) in rows.iter().enumerate() {
        u.0[i] = *r;
    }
    (s, u)
}
