//! Seeded random states and family parameters.
//!
//! Family samplers draw uniformly over each family's valid region by
//! rejection from a simple enclosing box or simplex.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Exp1, StandardNormal};

use crate::families::{BellDiagonalSpec, GenHorodeckiSpec, GvpSpec, HorodeckiTypeSpec, VpTypeSpec};
use crate::measures::PureState;
use crate::qcore::{DensityMatrix, Ket2, Ket4, Mat4, Matrix, C64};

pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn gaussian_c64(rng: &mut impl Rng) -> C64 {
    C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

/// Haar-random pure state.
pub fn pure_state(rng: &mut impl Rng) -> PureState {
    loop {
        let v: Ket4 = std::array::from_fn(|_| gaussian_c64(rng));
        if let Ok(psi) = PureState::normalized(v) {
            return psi;
        }
    }
}

/// Haar-random unit vector in C².
pub fn qubit(rng: &mut impl Rng) -> Ket2 {
    loop {
        let v: Ket2 = std::array::from_fn(|_| gaussian_c64(rng));
        let n = crate::qcore::norm(&v);
        if n > 1e-12 {
            return v.map(|z| z / n);
        }
    }
}

/// Hilbert-Schmidt random density matrix, G G† / tr with G complex Ginibre.
pub fn density(rng: &mut impl Rng) -> DensityMatrix {
    let g = Matrix(std::array::from_fn(|_| std::array::from_fn(|_| gaussian_c64(rng))));
    let m = g * g.adjoint();
    let t = m.trace().re;
    DensityMatrix::from_mixture(m.scale(1.0 / t)).expect("Ginibre state")
}

/// Hilbert-Schmidt random state conditioned on a non-negative partial transpose.
pub fn ppt_state(rng: &mut impl Rng) -> DensityMatrix {
    loop {
        let rho = density(rng);
        if rho.min_pt_eigenvalue() >= 0.0 {
            return rho;
        }
    }
}

/// Uniform point on the probability simplex with `N` vertices.
pub fn simplex<const N: usize>(rng: &mut impl Rng) -> [f64; N] {
    let e: [f64; N] = std::array::from_fn(|_| rng.sample::<f64, _>(Exp1));
    let total: f64 = e.iter().sum();
    let mut p = e.map(|x| x / total);
    // absorb rounding so the entries sum to 1 as closely as possible
    let rest: f64 = p[1..].iter().sum();
    p[0] = 1.0 - rest;
    p
}

/// Bell-diagonal weights with a weight above 1/2.
pub fn bell_diagonal(rng: &mut impl Rng) -> BellDiagonalSpec {
    loop {
        let l = simplex::<4>(rng);
        if l.iter().any(|&x| x > 0.5) {
            return BellDiagonalSpec::new(l).expect("simplex point");
        }
    }
}

pub fn gvp(rng: &mut impl Rng) -> GvpSpec {
    loop {
        let l = simplex::<3>(rng);
        if l[0] > 0.0 {
            return GvpSpec::new(l).expect("simplex point");
        }
    }
}

/// Entangled generalized Horodecki weights, λ1 > 2√(λ2λ3).
pub fn gen_horodecki(rng: &mut impl Rng) -> GenHorodeckiSpec {
    loop {
        let spec = GenHorodeckiSpec::new(simplex::<3>(rng)).expect("simplex point");
        if spec.is_entangled() {
            return spec;
        }
    }
}

/// Entangled vp-type parameters, A2 ≥ A3 and 0 < D ≤ √(A2A3).
pub fn vp_type(rng: &mut impl Rng) -> VpTypeSpec {
    loop {
        let a2: f64 = rng.random_range(0.5..1.0);
        let d: f64 = rng.random_range(0.0..0.5);
        let a3 = 1.0 - a2;
        if d > 0.0 && d <= (a2 * a3).sqrt() {
            return VpTypeSpec::new(a2, a3, d).expect("inside region");
        }
    }
}

/// Entangled Horodecki-type parameters, √(A1A4) < D ≤ A, excluding the Bell point.
pub fn horodecki_type(rng: &mut impl Rng) -> HorodeckiTypeSpec {
    loop {
        let [a1, a4, twice_a] = simplex::<3>(rng);
        let a = 0.5 * twice_a;
        let d: f64 = rng.random_range(0.0..0.5);
        if d > (a1 * a4).sqrt() && d <= a {
            let spec = HorodeckiTypeSpec::new(a1, a4, a, d).expect("inside region");
            if spec.concurrence() < 1.0 - 1e-9 {
                return spec;
            }
        }
    }
}

/// Horodecki-type parameters kept clear of the generalized Horodecki limit:
/// |A1 − A4| ≥ 0.1, A − D ≥ 0.05 and concurrence ≥ 0.3.
pub fn horodecki_type_generic(rng: &mut impl Rng) -> HorodeckiTypeSpec {
    loop {
        let spec = horodecki_type(rng);
        if (spec.a1() - spec.a4()).abs() >= 0.1 && spec.a() - spec.d() >= 0.05 && spec.concurrence() >= 0.3 {
            return spec;
        }
    }
}

/// Uniform random mixture of `n` Haar product states.
pub fn product_mixture(rng: &mut impl Rng, n: usize) -> DensityMatrix {
    let w: Vec<f64> = (0..n).map(|_| rng.sample::<f64, _>(Exp1)).collect();
    let total: f64 = w.iter().sum();
    let m = w.iter().fold(Mat4::zeros(), |acc, &p| {
        let ab = crate::qcore::kron(&qubit(rng), &qubit(rng));
        acc + Mat4::projector(&ab).scale(p / total)
    });
    DensityMatrix::from_mixture(m).expect("product mixture")
}
