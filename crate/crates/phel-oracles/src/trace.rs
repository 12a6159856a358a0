//! Joint current by explicit matrix algebra.
//!
//! The three-body field is stored as an 8×2 matrix `M` with rows indexed by
//! (photon row, electron 1, electron 2) and columns by the photon column.
//! `ς₀ = −` sits in photon entry (0, 1), `ς₀ = +` in (1, 0); electron index
//! 0 is `ψ₋`. The adjoint is `γ⁰ M† (γ⁰⊗γ⁰⊗γ⁰)` and the current is
//! `¼ tr(Ψ̄ (γ^μ⊗γ^ν⊗γ^κ) M γ⁰)`.

use crate::C64;

type M2 = [[C64; 2]; 2];

fn c(re: f64) -> C64 {
    C64::new(re, 0.0)
}

/// `γ⁰` for `mu = 0`, `γ¹` otherwise.
pub fn gamma(mu: usize) -> M2 {
    if mu == 0 {
        [[c(0.0), c(1.0)], [c(1.0), c(0.0)]]
    } else {
        [[c(0.0), c(-1.0)], [c(1.0), c(0.0)]]
    }
}

fn kron3(a: &M2, b: &M2, d: &M2) -> Vec<Vec<C64>> {
    let mut out = vec![vec![c(0.0); 8]; 8];
    for (r, row) in out.iter_mut().enumerate() {
        for (col, v) in row.iter_mut().enumerate() {
            *v = a[r >> 2][col >> 2] * b[(r >> 1) & 1][(col >> 1) & 1] * d[r & 1][col & 1];
        }
    }
    out
}

fn matmul(a: &[Vec<C64>], b: &[Vec<C64>]) -> Vec<Vec<C64>> {
    let (n, k, m) = (a.len(), b.len(), b[0].len());
    let mut out = vec![vec![c(0.0); m]; n];
    for i in 0..n {
        for j in 0..m {
            out[i][j] = (0..k).map(|l| a[i][l] * b[l][j]).sum();
        }
    }
    out
}

fn to_vec(m: &M2) -> Vec<Vec<C64>> {
    m.iter().map(|r| r.to_vec()).collect()
}

/// `j^{μνκ}` with `X = ∂t` for components indexed `4 i(ς₀) + 2 i(ς₁) + i(ς₂)`.
pub fn joint_current(psi: &[C64; 8], mu: usize, nu: usize, kappa: usize) -> f64 {
    let mut m = vec![vec![c(0.0); 2]; 8];
    for (k, &v) in psi.iter().enumerate() {
        let (photon, e) = (k >> 2, k & 3);
        if photon == 0 {
            m[e][1] = v;
        } else {
            m[4 + e][0] = v;
        }
    }
    let dagger: Vec<Vec<C64>> = (0..2).map(|col| (0..8).map(|r| m[r][col].conj()).collect()).collect();
    let g0 = gamma(0);
    let bar = matmul(&matmul(&to_vec(&g0), &dagger), &kron3(&g0, &g0, &g0));
    let inner = matmul(&matmul(&kron3(&gamma(mu), &gamma(nu), &gamma(kappa)), &m), &to_vec(&g0));
    let prod = matmul(&bar, &inner);
    let tr = prod[0][0] + prod[1][1];
    0.25 * tr.re
}
