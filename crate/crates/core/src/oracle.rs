//! Numerical relative entropy of entanglement.
//!
//! Minimizes −tr ρ ln σ over mixtures of product states σ = Σ w_k |a_k b_k⟩⟨a_k b_k|
//! with a Frank–Wolfe (conditional gradient) outer loop. Each outer step
//!
//! 1. computes G = D[tr ρ ln σ], the negative gradient, through the
//!    divided-difference form of the Fréchet derivative of the logarithm;
//! 2. finds the product state maximizing ⟨ab|G|ab⟩ from a closed form in the
//!    Bloch vector of the first qubit (grid scan, then Newton); the
//!    Frank–Wolfe gap is that maximum minus tr Gσ, and the loop stops once
//!    it falls below `tol`;
//! 3. moves toward the new atom with an exact line search;
//! 4. slides all atoms jointly with a few L-BFGS steps on the unnormalized
//!    vectors, which makes the final convergence fast.
//!
//! The result is separable by construction. Restarts run on scoped threads
//! with per-restart streams of one seeded generator, so the answer does not
//! depend on scheduling.

use std::collections::VecDeque;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::measures::{relative_entropy, von_neumann_entropy};
use crate::qcore::{eigh, jacobi, kron, DensityMatrix, Ket2, Mat2, Mat4, C64};
use crate::sampling::qubit;

const EIGEN_FLOOR: f64 = 1e-14;
const DIVIDED_DIFFERENCE_GAP: f64 = 1e-10;
const PRUNE_WEIGHT: f64 = 1e-12;
const RANDOM_ATOMS: usize = 8;
const LMO_SWEEPS: usize = 100;
const GRID_POINTS: usize = 256;
const POLISHED_STARTS: usize = 4;
const POLISH_STEPS: usize = 60;
const LINE_SEARCH_STEPS: usize = 60;
const SLIDE_STEPS: usize = 25;
const ARMIJO: f64 = 1e-4;
const BACKTRACKS: usize = 50;
const LBFGS_MEMORY: usize = 10;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OracleConfig {
    /// Independent starts, at least 1.
    pub restarts: usize,
    /// Frank–Wolfe iterations per start.
    pub max_iters: usize,
    /// Stop once the Frank–Wolfe gap, an upper bound on the remaining
    /// objective decrease, falls below this.
    pub tol: f64,
    pub seed: u64,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig { restarts: 8, max_iters: 2000, tol: 1e-7, seed: 0 }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct OracleResult {
    /// S(ρ‖σ) at the best σ found, in nats.
    pub ree: f64,
    pub sigma: DensityMatrix,
    /// Outer iterations of the winning start.
    pub iterations: usize,
    /// Whether the winning start reached the gap tolerance.
    pub converged: bool,
    pub per_restart_values: Vec<f64>,
    /// Objective S(ρ‖σ) after every outer iteration of the winning start.
    pub history: Vec<f64>,
}

#[derive(Clone, Copy, Debug, PartialEq)]
struct Atom {
    weight: f64,
    a: Ket2,
    b: Ket2,
}

fn mixture(atoms: &[Atom]) -> Mat4 {
    atoms
        .iter()
        .fold(Mat4::zeros(), |acc, at| acc + Mat4::projector(&kron(&at.a, &at.b)).scale(at.weight))
}

/// (ln a − ln b)/(a − b), with the derivative 2/(a + b) for nearly equal arguments.
fn log_divided_difference(a: f64, b: f64) -> f64 {
    let d = a - b;
    if d.abs() <= DIVIDED_DIFFERENCE_GAP * a.max(b) {
        2.0 / (a + b)
    } else {
        (d / b).ln_1p() / d
    }
}

/// −tr ρ ln σ and the negative gradient G, eigenvalues floored.
fn objective_and_gradient(rho: &Mat4, sigma: &Mat4) -> (f64, Mat4) {
    let es = eigh(sigma);
    let mu = es.values.map(|x| x.max(EIGEN_FLOOR));
    let mut rt = Mat4::zeros();
    for k in 0..4 {
        for l in 0..4 {
            rt.0[k][l] = rho.sandwich(&es.vectors[k], &es.vectors[l]);
        }
    }
    let value = -(0..4).map(|k| mu[k].ln() * rt.0[k][k].re).sum::<f64>();
    let mut g = Mat4::zeros();
    for k in 0..4 {
        for l in 0..4 {
            let f = log_divided_difference(mu[k], mu[l]);
            g += Mat4::outer(&es.vectors[k], &es.vectors[l]).scale_c(rt.0[k][l] * f);
        }
    }
    (value, g)
}

fn objective(rho: &Mat4, sigma: &Mat4) -> f64 {
    let es = eigh(sigma);
    -(0..4)
        .map(|k| es.values[k].max(EIGEN_FLOOR).ln() * rho.sandwich(&es.vectors[k], &es.vectors[k]).re)
        .sum::<f64>()
}

/// ⟨b|H|b⟩ on the second qubit, an operator on the first.
fn reduce_second(h: &Mat4, b: &Ket2) -> Mat2 {
    let mut m = Mat2::zeros();
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                for l in 0..2 {
                    m.0[i][j] += b[k].conj() * h.0[2 * i + k][2 * j + l] * b[l];
                }
            }
        }
    }
    m
}

/// ⟨a|H|a⟩ on the first qubit, an operator on the second.
fn reduce_first(h: &Mat4, a: &Ket2) -> Mat2 {
    let mut m = Mat2::zeros();
    for k in 0..2 {
        for l in 0..2 {
            for i in 0..2 {
                for j in 0..2 {
                    m.0[k][l] += a[i].conj() * h.0[2 * i + k][2 * j + l] * a[j];
                }
            }
        }
    }
    m
}

fn top_eigenvector(m: &Mat2) -> Ket2 {
    let (_, v) = jacobi(&m.hermitian_part());
    [v.0[0][1], v.0[1][1]]
}

fn bloch_ket(n: &[f64; 3]) -> Ket2 {
    let theta = n[2].clamp(-1.0, 1.0).acos();
    let phi = n[1].atan2(n[0]);
    [C64::new((0.5 * theta).cos(), 0.0), C64::from_polar((0.5 * theta).sin(), phi)]
}

/// (t, r) with m = t I + r·σ for a Hermitian 2×2 m.
fn pauli_coords(m: &Mat2) -> (f64, [f64; 3]) {
    let [[m00, m01], [m10, m11]] = m.0;
    (0.5 * (m00.re + m11.re), [0.5 * (m01.re + m10.re), 0.5 * (m10.im - m01.im), 0.5 * (m00.re - m11.re)])
}

/// max_b ⟨ab|G|ab⟩ as a function of the Bloch vector n of a. The operator
/// ⟨a|G|a⟩ on the second qubit is affine in n, so its top eigenvalue is
/// t0 + t·n + |r0 + R n|.
struct ProductForm {
    t0: f64,
    t: [f64; 3],
    r0: [f64; 3],
    r: [[f64; 3]; 3],
}

impl ProductForm {
    fn new(g: &Mat4) -> Self {
        let partial = |x: &Mat2| {
            let mut m = Mat2::zeros();
            for k in 0..2 {
                for l in 0..2 {
                    for i in 0..2 {
                        for j in 0..2 {
                            m.0[k][l] += x.0[j][i] * g.0[2 * i + k][2 * j + l];
                        }
                    }
                }
            }
            m
        };
        let (o, one, i) = (C64::new(0.0, 0.0), C64::new(0.5, 0.0), C64::new(0.0, 0.5));
        let (t0, r0) = pauli_coords(&partial(&Mat2::identity().scale(0.5)));
        let paulis = [[[o, one], [one, o]], [[o, -i], [i, o]], [[one, o], [o, -one]]];
        let mut t = [0.0; 3];
        let mut r = [[0.0; 3]; 3];
        for (k, p) in paulis.iter().enumerate() {
            let (tk, rk) = pauli_coords(&partial(&crate::qcore::Matrix(*p)));
            t[k] = tk;
            for j in 0..3 {
                r[j][k] = rk[j];
            }
        }
        ProductForm { t0, t, r0, r }
    }

    fn shifted(&self, n: &[f64; 3]) -> [f64; 3] {
        std::array::from_fn(|j| self.r0[j] + (0..3).map(|k| self.r[j][k] * n[k]).sum::<f64>())
    }

    fn value(&self, n: &[f64; 3]) -> f64 {
        let v = self.shifted(n);
        self.t0 + dot3(&self.t, n) + dot3(&v, &v).sqrt()
    }

    /// Euclidean gradient and Hessian of the closed form at n.
    fn derivatives(&self, n: &[f64; 3]) -> ([f64; 3], [[f64; 3]; 3]) {
        let v = self.shifted(n);
        let len = dot3(&v, &v).sqrt();
        if len < 1e-300 {
            return (self.t, [[0.0; 3]; 3]);
        }
        let u = v.map(|x| x / len);
        let grad = std::array::from_fn(|k| self.t[k] + (0..3).map(|j| self.r[j][k] * u[j]).sum::<f64>());
        // Rᵀ (I − u uᵀ) R / |v|
        let proj: [[f64; 3]; 3] = std::array::from_fn(|a| {
            std::array::from_fn(|b| f64::from(u8::from(a == b)) - u[a] * u[b])
        });
        let hess = std::array::from_fn(|k| {
            std::array::from_fn(|l| {
                let mut s = 0.0;
                for a in 0..3 {
                    for b in 0..3 {
                        s += self.r[a][k] * proj[a][b] * self.r[b][l];
                    }
                }
                s / len
            })
        });
        (grad, hess)
    }

    /// Riemannian Newton ascent on the unit sphere with backtracking.
    fn polish(&self, mut n: [f64; 3]) -> ([f64; 3], f64) {
        let mut value = self.value(&n);
        for _ in 0..POLISH_STEPS {
            let (grad, hess) = self.derivatives(&n);
            let (e1, e2) = tangent_basis(&n);
            let radial = dot3(&n, &grad);
            let g2 = [dot3(&e1, &grad), dot3(&e2, &grad)];
            if g2[0].hypot(g2[1]) < 1e-15 * value.abs().max(1.0) {
                break;
            }
            let quad = |x: &[f64; 3], y: &[f64; 3]| {
                (0..3).map(|a| (0..3).map(|b| x[a] * hess[a][b] * y[b]).sum::<f64>()).sum::<f64>()
            };
            let h = [
                [quad(&e1, &e1) - radial, quad(&e1, &e2)],
                [quad(&e2, &e1), quad(&e2, &e2) - radial],
            ];
            let det = h[0][0] * h[1][1] - h[0][1] * h[1][0];
            let step = if h[0][0] < 0.0 && det > 0.0 {
                [-(h[1][1] * g2[0] - h[0][1] * g2[1]) / det, -(h[0][0] * g2[1] - h[1][0] * g2[0]) / det]
            } else {
                let scale = 0.5 / g2[0].hypot(g2[1]).max(1e-300);
                [g2[0] * scale.min(1.0), g2[1] * scale.min(1.0)]
            };
            let mut len = 1.0;
            let mut moved = false;
            for _ in 0..BACKTRACKS {
                let trial: [f64; 3] = std::array::from_fn(|k| n[k] + len * (step[0] * e1[k] + step[1] * e2[k]));
                let norm = dot3(&trial, &trial).sqrt();
                let trial = trial.map(|x| x / norm);
                let tv = self.value(&trial);
                if tv > value {
                    n = trial;
                    value = tv;
                    moved = true;
                    break;
                }
                len *= 0.5;
            }
            if !moved {
                break;
            }
        }
        (n, value)
    }
}

fn dot3(a: &[f64; 3], b: &[f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn tangent_basis(n: &[f64; 3]) -> ([f64; 3], [f64; 3]) {
    let helper = if n[0].abs() < 0.9 { [1.0, 0.0, 0.0] } else { [0.0, 1.0, 0.0] };
    let along = dot3(&helper, n);
    let e1: [f64; 3] = std::array::from_fn(|k| helper[k] - along * n[k]);
    let len = dot3(&e1, &e1).sqrt();
    let e1 = e1.map(|x| x / len);
    let e2 = [n[1] * e1[2] - n[2] * e1[1], n[2] * e1[0] - n[0] * e1[2], n[0] * e1[1] - n[1] * e1[0]];
    (e1, e2)
}

/// Fibonacci lattice on the unit sphere.
fn sphere_grid(count: usize) -> Vec<[f64; 3]> {
    let golden = std::f64::consts::PI * (3.0 - 5f64.sqrt());
    (0..count)
        .map(|k| {
            let z = 1.0 - (2.0 * k as f64 + 1.0) / count as f64;
            let rho = (1.0 - z * z).sqrt();
            let phi = golden * k as f64;
            [rho * phi.cos(), rho * phi.sin(), z]
        })
        .collect()
}

/// Product state maximizing ⟨ab|G|ab⟩: a grid scan over the Bloch sphere of
/// the first qubit, Newton polishing of the best grid points, then
/// alternating 2×2 eigenvector sweeps.
fn best_product(g: &Mat4) -> (Ket2, Ket2, f64) {
    let form = ProductForm::new(g);
    let mut scored: Vec<(f64, [f64; 3])> = sphere_grid(GRID_POINTS).into_iter().map(|n| (form.value(&n), n)).collect();
    scored.sort_by(|x, y| y.0.total_cmp(&x.0));
    let (n, _) = scored
        .iter()
        .take(POLISHED_STARTS)
        .map(|(_, n)| form.polish(*n))
        .reduce(|best, next| if next.1 > best.1 { next } else { best })
        .expect("non-empty grid");
    let mut a = bloch_ket(&n);
    let mut b = top_eigenvector(&reduce_first(g, &a));
    let mut value = g.sandwich(&kron(&a, &b), &kron(&a, &b)).re;
    // alternating sweeps to the fixed point, kept only while they improve
    for _ in 0..LMO_SWEEPS {
        let na = top_eigenvector(&reduce_second(g, &b));
        let nb = top_eigenvector(&reduce_first(g, &na));
        let next = g.sandwich(&kron(&na, &nb), &kron(&na, &nb)).re;
        if next <= value {
            break;
        }
        (a, b, value) = (na, nb, next);
    }
    (a, b, value)
}

/// Exact line search on σ + γ(s − σ) by bisection on the directional derivative.
fn line_search(rho: &Mat4, sigma: &Mat4, target: &Mat4) -> f64 {
    let dir = *target - *sigma;
    let slope = |gamma: f64| {
        let (_, g) = objective_and_gradient(rho, &(*sigma + dir.scale(gamma)));
        -g.trace_product(&dir).re
    };
    if slope(1.0) <= 0.0 {
        return 1.0;
    }
    let (mut lo, mut hi) = (0.0, 1.0);
    for _ in 0..LINE_SEARCH_STEPS {
        let mid = 0.5 * (lo + hi);
        if slope(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Atoms as 8 reals each: Re/Im of the unnormalized vectors α and β,
/// with |α⟩⟨α| ⊗ |β⟩⟨β| = w |a⟩⟨a| ⊗ |b⟩⟨b|.
fn pack(atoms: &[Atom]) -> Vec<f64> {
    let mut x = Vec::with_capacity(8 * atoms.len());
    for at in atoms {
        let s = at.weight.sqrt().sqrt();
        for z in at.a.iter().chain(at.b.iter()) {
            x.push(s * z.re);
            x.push(s * z.im);
        }
    }
    x
}

fn unpack_vectors(x: &[f64]) -> Vec<(Ket2, Ket2)> {
    x.chunks_exact(8)
        .map(|c| {
            (
                [C64::new(c[0], c[1]), C64::new(c[2], c[3])],
                [C64::new(c[4], c[5]), C64::new(c[6], c[7])],
            )
        })
        .collect()
}

fn unnormalized_mixture(v: &[(Ket2, Ket2)]) -> Mat4 {
    v.iter().fold(Mat4::zeros(), |acc, (al, be)| acc + Mat4::projector(&kron(al, be)))
}

fn unpack(x: &[f64]) -> Vec<Atom> {
    let v = unpack_vectors(x);
    let total: f64 = v.iter().map(|(al, be)| norm_sq(al) * norm_sq(be)).sum();
    v.iter()
        .map(|(al, be)| {
            let (na, nb) = (norm_sq(al).sqrt(), norm_sq(be).sqrt());
            let (a, b) = if na > 0.0 && nb > 0.0 {
                (al.map(|z| z / na), be.map(|z| z / nb))
            } else {
                let e0 = [C64::new(1.0, 0.0), C64::new(0.0, 0.0)];
                (e0, e0)
            };
            Atom { weight: na * na * nb * nb / total, a, b }
        })
        .collect()
}

fn norm_sq(v: &Ket2) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum()
}

/// F(x) = −tr ρ ln(S/tr S) and its gradient with respect to the packed reals.
fn slide_objective(rho: &Mat4, x: &[f64]) -> (f64, Vec<f64>) {
    let v = unpack_vectors(x);
    let s = unnormalized_mixture(&v);
    let t = s.trace().re;
    if !(t > 0.0) || !t.is_finite() {
        return (f64::INFINITY, vec![0.0; x.len()]);
    }
    let (value, g) = objective_and_gradient(rho, &s.scale(1.0 / t));
    // dF = tr(H dS) with H = (I − G)/t, using tr(Gσ) = 1
    let h = (Mat4::identity() - g).scale(1.0 / t);
    let mut grad = Vec::with_capacity(x.len());
    for (al, be) in &v {
        let ga = reduce_second(&h, be).apply(al);
        let gb = reduce_first(&h, al).apply(be);
        for z in ga.iter().chain(gb.iter()) {
            grad.push(2.0 * z.re);
            grad.push(2.0 * z.im);
        }
    }
    (value, grad)
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// A few L-BFGS steps on all atoms at once. Never increases the objective.
fn slide(rho: &Mat4, atoms: Vec<Atom>) -> Vec<Atom> {
    let mut x = pack(&atoms);
    let (mut f, mut g) = slide_objective(rho, &x);
    if !f.is_finite() {
        return atoms;
    }
    let mut memory: VecDeque<(Vec<f64>, Vec<f64>, f64)> = VecDeque::with_capacity(LBFGS_MEMORY);
    for _ in 0..SLIDE_STEPS {
        let gnorm = dot(&g, &g).sqrt();
        if gnorm < 1e-13 {
            break;
        }
        let d = if memory.is_empty() {
            g.iter().map(|gi| -gi * (0.1 / gnorm).min(1.0)).collect()
        } else {
            two_loop(&memory, &g)
        };
        let slope = dot(&g, &d);
        if slope >= 0.0 {
            if memory.is_empty() {
                break;
            }
            memory.clear();
            continue;
        }
        let mut step = 1.0;
        let mut accepted = None;
        for _ in 0..BACKTRACKS {
            let xn: Vec<f64> = x.iter().zip(&d).map(|(xi, di)| xi + step * di).collect();
            let (fn_, gn) = slide_objective(rho, &xn);
            if fn_.is_finite() && fn_ <= f + ARMIJO * step * slope {
                accepted = Some((xn, fn_, gn));
                break;
            }
            step *= 0.5;
        }
        let Some((xn, fn_, gn)) = accepted else { break };
        let s: Vec<f64> = xn.iter().zip(&x).map(|(a, b)| a - b).collect();
        let y: Vec<f64> = gn.iter().zip(&g).map(|(a, b)| a - b).collect();
        let sy = dot(&s, &y);
        if sy > 1e-300 {
            if memory.len() == LBFGS_MEMORY {
                memory.pop_front();
            }
            memory.push_back((s, y, sy));
        }
        let decrease = f - fn_;
        x = xn;
        f = fn_;
        g = gn;
        if decrease <= 1e-16 * f.abs().max(1.0) {
            break;
        }
    }
    unpack(&x)
}

/// −H g for the L-BFGS inverse Hessian built from stored (s, y, sᵀy) pairs.
fn two_loop(memory: &VecDeque<(Vec<f64>, Vec<f64>, f64)>, g: &[f64]) -> Vec<f64> {
    let mut q = g.to_vec();
    let mut alpha = Vec::with_capacity(memory.len());
    for (s, y, sy) in memory.iter().rev() {
        let a = dot(s, &q) / sy;
        q.iter_mut().zip(y).for_each(|(qi, yi)| *qi -= a * yi);
        alpha.push(a);
    }
    let (_, y, sy) = memory.back().expect("non-empty memory");
    let gamma = sy / dot(y, y);
    q.iter_mut().for_each(|qi| *qi *= gamma);
    for ((s, y, sy), a) in memory.iter().zip(alpha.iter().rev()) {
        let b = dot(y, &q) / sy;
        q.iter_mut().zip(s).for_each(|(qi, si)| *qi += (a - b) * si);
    }
    q.iter_mut().for_each(|qi| *qi = -*qi);
    q
}

/// Drops negligible atoms when doing so does not raise the objective.
fn prune(rho: &Mat4, atoms: Vec<Atom>, current: f64) -> Vec<Atom> {
    if atoms.iter().all(|a| a.weight >= PRUNE_WEIGHT) {
        return atoms;
    }
    let kept: Vec<Atom> = atoms.iter().copied().filter(|a| a.weight >= PRUNE_WEIGHT).collect();
    let total: f64 = kept.iter().map(|a| a.weight).sum();
    if kept.is_empty() || !(total > 0.0) {
        return atoms;
    }
    let kept: Vec<Atom> = kept.into_iter().map(|a| Atom { weight: a.weight / total, ..a }).collect();
    if objective(rho, &mixture(&kept)) <= current {
        kept
    } else {
        atoms
    }
}

struct RunOutcome {
    atoms: Vec<Atom>,
    iterations: usize,
    converged: bool,
    history: Vec<f64>,
}

fn run(rho: &Mat4, entropy: f64, mut atoms: Vec<Atom>, cfg: &OracleConfig) -> RunOutcome {
    let mut f = objective(rho, &mixture(&atoms));
    let mut history = vec![f - entropy];
    let mut converged = false;
    let mut iterations = 0;
    while iterations < cfg.max_iters {
        let sigma = mixture(&atoms);
        let (_, g) = objective_and_gradient(rho, &sigma);
        let (a, b, top) = best_product(&g);
        if top - g.trace_product(&sigma).re < cfg.tol {
            converged = true;
            break;
        }
        iterations += 1;

        let vertex = Mat4::projector(&kron(&a, &b));
        let gamma = line_search(rho, &sigma, &vertex);
        let mut stepped: Vec<Atom> = atoms.iter().map(|at| Atom { weight: at.weight * (1.0 - gamma), ..*at }).collect();
        stepped.push(Atom { weight: gamma, a, b });
        let fs = objective(rho, &mixture(&stepped));
        if fs <= f {
            atoms = stepped;
            f = fs;
        }

        let slid = slide(rho, atoms.clone());
        let fl = objective(rho, &mixture(&slid));
        if fl <= f {
            atoms = slid;
            f = fl;
        }
        atoms = prune(rho, atoms, f);
        f = objective(rho, &mixture(&atoms));
        history.push(f - entropy);
    }
    RunOutcome { atoms, iterations, converged, history }
}

fn initial_atoms(restart: usize, seed: u64) -> Vec<Atom> {
    let zero = C64::new(0.0, 0.0);
    let one = C64::new(1.0, 0.0);
    if restart == 0 {
        let basis = [[one, zero], [zero, one]];
        return (0..4)
            .map(|k| Atom { weight: 0.25, a: basis[k / 2], b: basis[k % 2] })
            .collect();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(restart as u64);
    let w: Vec<f64> = (0..RANDOM_ATOMS).map(|_| rng.random::<f64>() + 0.5).collect();
    let total: f64 = w.iter().sum();
    w.iter()
        .map(|&p| Atom { weight: p / total, a: qubit(&mut rng), b: qubit(&mut rng) })
        .collect()
}

/// Minimizes S(ρ‖σ) over separable σ.
pub fn ree_numeric(rho: &DensityMatrix, cfg: &OracleConfig) -> OracleResult {
    let restarts = cfg.restarts.max(1);
    let m = *rho.matrix();
    let entropy = von_neumann_entropy(rho);
    let outcomes: Vec<(f64, DensityMatrix, RunOutcome)> = std::thread::scope(|scope| {
        let handles: Vec<_> = (0..restarts)
            .map(|k| {
                scope.spawn(move || {
                    let out = run(&m, entropy, initial_atoms(k, cfg.seed), cfg);
                    let sigma = DensityMatrix::from_mixture(mixture(&out.atoms)).expect("product mixture");
                    let value = relative_entropy(rho, &sigma).value();
                    (value, sigma, out)
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("restart thread")).collect()
    });
    let per_restart_values: Vec<f64> = outcomes.iter().map(|(v, _, _)| *v).collect();
    let best = (0..outcomes.len())
        .reduce(|i, j| if outcomes[j].0 < outcomes[i].0 { j } else { i })
        .expect("at least one restart");
    let (ree, sigma, out) = outcomes.into_iter().nth(best).expect("index in range");
    OracleResult {
        ree,
        sigma,
        iterations: out.iterations,
        converged: out.converged,
        per_restart_values,
        history: out.history,
    }
}
