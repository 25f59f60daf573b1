//! Reference computations written independently of the library: printed
//! analytic outputs, Fock-space loss on cat states, Fock-space Gaussian
//! states, and alternative concurrence and fidelity evaluations.

#![allow(dead_code)]

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::Rng;

pub type Mat = DMatrix<Complex64>;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn r(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

fn m2(a: Complex64, b: Complex64, cc: Complex64, d: Complex64) -> Mat {
    Mat::from_row_slice(2, 2, &[a, b, cc, d])
}

/// Printed decoded outputs for the pair `|Q⟩ = cos(w/2)|0⟩ + e^{iθ} sin(w/2)|1⟩`
/// and `|Q̃⟩ = sin(w/2)|0⟩ − e^{iθ} cos(w/2)|1⟩`, evaluated at the same
/// `(w, θ)`. Two misprints are repaired: the direct `Q̃` diagonal entry
/// reads `1 + γ − (1 − γ) cos w`, and the dual-rail pair is printed with
/// its labels exchanged.
pub fn printed_output(code: &str, g: f64, w: f64, theta: f64, tilde: bool) -> Mat {
    let (sw, cw) = w.sin_cos();
    let em = Complex64::from_polar(1.0, -theta);
    let ep = em.conj();
    let half = r(0.5);
    match (code, tilde) {
        ("direct", false) => {
            m2(r(1.0 + g + cw - g * cw), em * (1.0 - g).sqrt() * sw, ep * (1.0 - g).sqrt() * sw, r((g - 1.0) * (cw - 1.0))) * half
        }
        ("direct", true) => {
            m2(r(1.0 + g - (1.0 - g) * cw), -em * (1.0 - g).sqrt() * sw, -ep * (1.0 - g).sqrt() * sw, r(-(g - 1.0) * (cw + 1.0))) * half
        }
        ("dual_rail", false) => m2(
            r(1.0 + cw - g * cw),
            -em * (-1.0 + g) * sw,
            -ep * (-1.0 + g) * sw,
            r(1.0 + (-1.0 + g) * cw),
        ) * half,
        ("dual_rail", true) => m2(
            r(1.0 + (-1.0 + g) * cw),
            em * (-1.0 + g) * sw,
            ep * (-1.0 + g) * sw,
            r(1.0 + cw - g * cw),
        ) * half,
        ("three_qubit", false) => {
            let p = g;
            m2(
                r(1.0 + (3.0 - 2.0 * p) * p * p + (p - 1.0).powi(2) * (1.0 + 2.0 * p) * cw),
                em * (1.0 - p).powf(1.5) * sw,
                ep * (1.0 - p).powf(1.5) * sw,
                r((p - 1.0).powi(2) * (2.0 + 4.0 * p) * (w / 2.0).sin().powi(2)),
            ) * half
        }
        ("three_qubit", true) => {
            let p = g;
            m2(
                r(1.0 + (3.0 - 2.0 * p) * p * p - (p - 1.0).powi(2) * (1.0 + 2.0 * p) * cw),
                -em * (1.0 - p).powf(1.5) * sw,
                -ep * (1.0 - p).powf(1.5) * sw,
                r((p - 1.0).powi(2) * (1.0 + 2.0 * p) * (1.0 + cw)),
            ) * half
        }
        ("bosonic", false) => {
            let k = (g - 1.0).powi(3) * (1.0 + 3.0 * g);
            m2(r(1.0 - k * cw), -em * k * sw, -ep * k * sw, r(1.0 + k * cw)) * half
        }
        ("bosonic", true) => {
            let k = (g - 1.0).powi(3) * (1.0 + 3.0 * g);
            m2(r(1.0 + k * cw), em * k * sw, ep * k * sw, r(1.0 - k * cw)) * half
        }
        ("four_qubit_approx", false) => m2(
            r(0.5 * (1.0 + g * g * (2.0 * g - 1.0) + (g - 1.0).powi(2) * (1.0 + 2.0 * g) * cw)),
            ep * (r(g * g - g.powi(3)) + em * em * (2.0 + g * g * (3.0 * g - 5.0))) * (0.25 * sw),
            em * (r(g * g - g.powi(3)) + ep * ep * (2.0 + g * g * (3.0 * g - 5.0))) * (0.25 * sw),
            r(0.5 * (1.0 + g * g - 2.0 * g.powi(3) - (g - 1.0).powi(2) * (1.0 + 2.0 * g) * cw)),
        ),
        ("four_qubit_approx", true) => m2(
            r(0.5 * (1.0 + g * g * (-1.0 + 2.0 * g) - (-1.0 + g).powi(2) * (1.0 + 2.0 * g) * cw)),
            em * (-1.0 + g) * (r(2.0) + g * (r(2.0) + (r(-3.0) + ep * ep) * g)) * (0.25 * sw),
            em * (r((-1.0 + g) * g * g) + ep * ep * (-2.0 + (5.0 - 3.0 * g) * g * g)) * (0.25 * sw),
            r(0.5 * (1.0 + g * g - 2.0 * g.powi(3) + (-1.0 + g).powi(2) * (1.0 + 2.0 * g) * cw)),
        ),
        _ => panic!("no printed output for {code}"),
    }
}

/// Eigen-decomposition route to `Tr √(√ρ σ √ρ)`.
pub fn root_fidelity(rho: &Mat, sigma: &Mat) -> f64 {
    let s = psd_sqrt(rho);
    let inner = &s * sigma * &s;
    let inner = (&inner + inner.adjoint()) * r(0.5);
    inner.symmetric_eigenvalues().iter().map(|l| l.max(0.0).sqrt()).sum()
}

pub fn psd_sqrt(m: &Mat) -> Mat {
    let h = (m + m.adjoint()) * r(0.5);
    let eig = h.symmetric_eigen();
    let d = eig.eigenvalues.map(|l| r(l.max(0.0).sqrt()));
    &eig.eigenvectors * Mat::from_diagonal(&d) * eig.eigenvectors.adjoint()
}

/// Uniform Bloch-sphere average of the output fidelity of printed-output
/// pairs; returns the mean and its standard error.
pub fn monte_carlo_overlap(code: &str, g: f64, n: usize, rng: &mut impl Rng) -> (f64, f64) {
    let mut xs = Vec::with_capacity(n);
    for _ in 0..n {
        let w = rng.gen_range(-1.0f64..=1.0).acos();
        let theta = rng.gen_range(0.0..std::f64::consts::TAU);
        xs.push(root_fidelity(&printed_output(code, g, w, theta, false), &printed_output(code, g, w, theta, true)));
    }
    let mean = xs.iter().sum::<f64>() / n as f64;
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n as f64 - 1.0);
    (mean, (var / n as f64).sqrt())
}

fn ln_factorials(n: usize) -> Vec<f64> {
    let mut out = vec![0.0; n + 1];
    for k in 1..=n {
        out[k] = out[k - 1] + (k as f64).ln();
    }
    out
}

/// `|α⟩` truncated to `dim` levels (not renormalized).
pub fn coherent(alpha: f64, dim: usize) -> DVector<f64> {
    let lf = ln_factorials(dim);
    DVector::from_fn(dim, |n, _| {
        if alpha == 0.0 {
            return if n == 0 { 1.0 } else { 0.0 };
        }
        let sign = if alpha < 0.0 && n % 2 == 1 { -1.0 } else { 1.0 };
        sign * (-0.5 * alpha * alpha + n as f64 * alpha.abs().ln() - 0.5 * lf[n]).exp()
    })
}

/// Even and odd cat vectors `(|α⟩ ± |−α⟩)`, normalized numerically.
pub fn cat_pair(alpha: f64, dim: usize) -> (DVector<f64>, DVector<f64>) {
    let (p, m) = (coherent(alpha, dim), coherent(-alpha, dim));
    let u = &p + &m;
    let v = &p - &m;
    (u.normalize(), if v.norm() > 0.0 { v.normalize() } else { DVector::from_fn(dim, |n, _| (n == 1) as u8 as f64) })
}

/// Full Kraus sum of photon loss on a `dim`-level operator.
pub fn fock_loss(rho: &Mat, gamma: f64, dim: usize) -> Mat {
    let lf = ln_factorials(dim);
    let eta = 1.0 - gamma;
    let mut out = Mat::zeros(dim, dim);
    for k in 0..dim {
        let mut a = Mat::zeros(dim, dim);
        for n in k..dim {
            let ln_amp = 0.5 * (lf[n] - lf[k] - lf[n - k]);
            let amp = ln_amp.exp() * eta.powf(0.5 * (n - k) as f64) * gamma.powf(0.5 * k as f64);
            let amp = if gamma == 0.0 { (k == 0) as u8 as f64 } else { amp };
            a[(n - k, n)] = r(amp);
        }
        out += &a * rho * a.adjoint();
    }
    out
}

/// Loss of strength `gamma` on the 2×2 operator `x` given in the cat basis at
/// `alpha`, computed in a `dim`-level Fock space and projected onto the cat
/// basis at `√(1−γ) α`. The second value is the trace lost by the projection.
pub fn cat_loss_fock(x: &Mat, alpha: f64, gamma: f64, dim: usize) -> (Mat, f64) {
    let (u, v) = cat_pair(alpha, dim);
    let basis = [u.map(r), v.map(r)];
    let mut rho = Mat::zeros(dim, dim);
    for i in 0..2 {
        for j in 0..2 {
            rho += &basis[i] * basis[j].adjoint() * x[(i, j)];
        }
    }
    let out = fock_loss(&rho, gamma, dim);
    let (u2, v2) = cat_pair((1.0 - gamma).sqrt() * alpha, dim);
    let proj = [u2.map(r), v2.map(r)];
    let mut y = Mat::zeros(2, 2);
    for i in 0..2 {
        for j in 0..2 {
            y[(i, j)] = (proj[i].adjoint() * &out * &proj[j])[(0, 0)];
        }
    }
    let lost = (out.trace() - y.trace()).norm();
    (y, lost)
}

/// Annihilation operator on `dim` levels.
pub fn annihilation(dim: usize) -> Mat {
    let mut a = Mat::zeros(dim, dim);
    for n in 1..dim {
        a[(n - 1, n)] = r((n as f64).sqrt());
    }
    a
}

/// Squeezed thermal state `S(ξ) ρ_th(n̄) S(ξ)†` with `ξ = s e^{iφ}`, built by
/// exponentiating the squeeze generator on `dim` levels.
pub fn squeezed_thermal(nbar: f64, s: f64, phi: f64, dim: usize) -> Mat {
    let a = annihilation(dim);
    let ad = a.adjoint();
    let xi = Complex64::from_polar(s, phi);
    let gen = (&a * &a * xi.conj() - &ad * &ad * xi) * r(0.5);
    // gen is anti-Hermitian; exp(gen) = V e^{-iλ} V† with H = i·gen Hermitian
    let h = &gen * c(0.0, 1.0);
    let h = (&h + h.adjoint()) * r(0.5);
    let eig = h.symmetric_eigen();
    let d = eig.eigenvalues.map(|l| Complex64::from_polar(1.0, -l));
    let sq = &eig.eigenvectors * Mat::from_diagonal(&d) * eig.eigenvectors.adjoint();
    let th = Mat::from_fn(dim, dim, |i, j| {
        if i == j {
            r(nbar.powi(i as i32) / (nbar + 1.0).powi(i as i32 + 1))
        } else {
            r(0.0)
        }
    });
    &sq * th * sq.adjoint()
}

/// Covariance matrix of `rho` in units where the vacuum has the identity,
/// from the moments of `x = a + a†` and `p = −i(a − a†)`.
pub fn covariance_from_fock(rho: &Mat) -> [[f64; 2]; 2] {
    let dim = rho.nrows();
    let a = annihilation(dim);
    let ad = a.adjoint();
    let x = &a + &ad;
    let p = (&a - &ad) * c(0.0, -1.0);
    let ev = |o: &Mat| (rho * o).trace().re;
    let (mx, mp) = (ev(&x), ev(&p));
    let xx = ev(&(&x * &x)) - mx * mx;
    let pp = ev(&(&p * &p)) - mp * mp;
    let xp = 0.5 * ev(&(&x * &p + &p * &x)) - mx * mp;
    [[xx, xp], [xp, pp]]
}

/// Wootters concurrence of an X-shaped two-qubit state.
pub fn concurrence_x_state(rho: &Mat) -> f64 {
    let d = |i: usize| rho[(i, i)].re;
    let a = rho[(0, 3)].norm() - (d(1) * d(2)).sqrt();
    let b = rho[(1, 2)].norm() - (d(0) * d(3)).sqrt();
    (2.0 * a.max(b)).max(0.0)
}

/// Concurrence from the eigenvalues of `ρ (σ_y⊗σ_y) ρ* (σ_y⊗σ_y)`, taken from
/// its 8×8 real form `[[Re, −Im], [Im, Re]]`, in which every eigenvalue
/// appears twice.
pub fn concurrence_realified(rho: &Mat) -> f64 {
    let y = m2(r(0.0), c(0.0, -1.0), c(0.0, 1.0), r(0.0));
    let yy = y.kronecker(&y);
    let tilde = &yy * rho.map(|z| z.conj()) * &yy;
    let m = rho * tilde;
    let real = DMatrix::from_fn(8, 8, |i, j| {
        let z = m[(i % 4, j % 4)];
        match (i < 4, j < 4) {
            (true, true) | (false, false) => z.re,
            (true, false) => -z.im,
            (false, true) => z.im,
        }
    });
    let mut ev: Vec<f64> = real.complex_eigenvalues().iter().map(|z| z.re.max(0.0)).collect();
    ev.sort_by(|a, b| b.total_cmp(a));
    let l: Vec<f64> = ev.iter().step_by(2).map(|x| x.sqrt()).collect();
    (l[0] - l[1] - l[2] - l[3]).max(0.0)
}
