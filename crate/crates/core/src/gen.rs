//! Seeded instance generators: tensors and families used by the law corpora
//! and the CLI. Deterministic in `(kind, dims, seed)`.

use crate::error::Result;
use crate::rng;
use crate::seqnorms::VectorFamily;
use crate::spaces::{gaussian_coords, SpaceSpec, Vector};
use crate::tensors::MultilinearMap;

pub fn gaussian_tensor(
    domain: Vec<SpaceSpec>,
    codomain: SpaceSpec,
    seed: u64,
) -> Result<MultilinearMap> {
    let mut rng = rng::seeded(seed);
    let total: usize = domain.iter().map(|s| s.dim).product::<usize>() * codomain.dim;
    MultilinearMap::new(domain, codomain, gaussian_coords(&mut rng, total))
}

/// Entries drawn uniformly from {−1, +1}.
pub fn sign_tensor(
    domain: Vec<SpaceSpec>,
    codomain: SpaceSpec,
    seed: u64,
) -> Result<MultilinearMap> {
    use rand::Rng as _;
    let mut rng = rng::seeded(seed);
    let total: usize = domain.iter().map(|s| s.dim).product::<usize>() * codomain.dim;
    let coeffs = (0..total)
        .map(|_| if rng.random::<bool>() { 1.0 } else { -1.0 })
        .collect();
    MultilinearMap::new(domain, codomain, coeffs)
}

/// Real Fourier (Hartley) kernel: entry at (j₁,…,jₙ) is
/// `cos(2π·j₁⋯jₙ/N) + sin(2π·j₁⋯jₙ/N)`. For n = 2 the rows are orthogonal
/// with ℓ2 norm √N.
pub fn fourier_tensor(n: usize, big_n: usize) -> Result<MultilinearMap> {
    let space = SpaceSpec::linf(big_n);
    let domain = vec![space; n];
    let total = big_n.pow(n as u32);
    let mut coeffs = Vec::with_capacity(total);
    let mut idx = vec![0usize; n];
    for flat in 0..total {
        let mut rem = flat;
        for i in (0..n).rev() {
            idx[i] = rem % big_n;
            rem /= big_n;
        }
        let prod: usize = idx.iter().product();
        let theta = 2.0 * std::f64::consts::PI * (prod as f64) / big_n as f64;
        coeffs.push(theta.cos() + theta.sin());
    }
    MultilinearMap::scalar_form(domain, coeffs)
}

/// The bilinear identity form `Σ x_i y_i` on ℓ∞^N × ℓ∞^N (or its n-linear
/// diagonal analogue).
pub fn diagonal_form(n: usize, big_n: usize) -> Result<MultilinearMap> {
    let space = SpaceSpec::linf(big_n);
    let domain = vec![space; n];
    let total = big_n.pow(n as u32);
    let mut coeffs = vec![0.0; total];
    for i in 0..big_n {
        let mut flat = 0usize;
        for _ in 0..n {
            flat = flat * big_n + i;
        }
        coeffs[flat] = 1.0;
    }
    MultilinearMap::scalar_form(domain, coeffs)
}

/// First `m` canonical basis vectors, cycling when `m > N`.
pub fn basis_family(space: SpaceSpec, m: usize) -> Result<VectorFamily> {
    let members = (0..m).map(|j| Vector::basis(space, j % space.dim)).collect();
    VectorFamily::new(space, members)
}

pub fn gaussian_family(space: SpaceSpec, m: usize, seed: u64) -> Result<VectorFamily> {
    let mut rng = rng::seeded(seed);
    let members = (0..m)
        .map(|_| Vector::new(space, gaussian_coords(&mut rng, space.dim)))
        .collect::<Result<Vec<_>>>()?;
    VectorFamily::new(space, members)
}

/// Deterministic space rotation for corpus variety: ℓ1, ℓ2, ℓ∞ by index.
pub fn corpus_space(which: usize, dim: usize) -> SpaceSpec {
    match which % 3 {
        0 => SpaceSpec::lp(1.0, dim),
        1 => SpaceSpec::lp(2.0, dim),
        _ => SpaceSpec::linf(dim),
    }
}
