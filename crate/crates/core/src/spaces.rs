//! Finite-dimensional ℓ_u^N spaces, their duals, and unit-ball structure.
//!
//! Everything here is real-scalar. A [`Functional`] stores the space it acts
//! on (the predual); its action is the dot product and its norm is the
//! ℓ_{u'} norm for the conjugate exponent u'.

use std::sync::atomic::{AtomicUsize, Ordering};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exp::{lp_norm, Exp};
use crate::rng;

/// Sign-vector extreme-point enumeration is skipped above this dimension
/// unless the caller raises the cap explicitly.
pub const DEFAULT_ENUM_CAP: usize = 16;

static ENUM_CAP: AtomicUsize = AtomicUsize::new(DEFAULT_ENUM_CAP);

/// Process-wide enumeration cap consulted by the exact weak-norm and
/// operator-norm paths. The CLI seeds it from `SUMNORMS_ENUM_CAP`.
pub fn enum_cap() -> usize {
    ENUM_CAP.load(Ordering::Relaxed)
}

pub fn set_enum_cap(cap: usize) {
    ENUM_CAP.store(cap.max(1), Ordering::Relaxed);
}

/// A finite-dimensional ℓ_u^N space: exponent `u ∈ [1, ∞]`, dimension `N ≥ 1`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpaceSpec {
    pub exponent: Exp,
    pub dim: usize,
}

impl SpaceSpec {
    pub fn new(exponent: Exp, dim: usize) -> Result<Self> {
        if let Exp::Finite(p) = exponent {
            if p < 1.0 {
                return Err(Error::InvalidExponent(format!(
                    "space exponent must be >= 1, got {p}"
                )));
            }
        }
        if dim == 0 {
            return Err(Error::InvalidFamily("space dimension must be >= 1".into()));
        }
        Ok(SpaceSpec { exponent, dim })
    }

    pub fn linf(dim: usize) -> Self {
        SpaceSpec::new(Exp::Inf, dim).unwrap()
    }

    pub fn lp(p: f64, dim: usize) -> Self {
        SpaceSpec::new(Exp::finite(p), dim).unwrap()
    }

    /// One-dimensional space housing scalar values; every ℓ_u norm agrees there.
    pub fn scalar() -> Self {
        SpaceSpec::linf(1)
    }

    /// The dual space ℓ_{u'}^N.
    pub fn dual(&self) -> SpaceSpec {
        SpaceSpec {
            exponent: self.exponent.dual(),
            dim: self.dim,
        }
    }
}

/// The conjugate exponent, `1/u + 1/u' = 1`.
pub fn dual_exponent(u: Exp) -> Exp {
    u.dual()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Vector {
    pub space: SpaceSpec,
    pub coords: Vec<f64>,
}

impl Vector {
    pub fn new(space: SpaceSpec, coords: Vec<f64>) -> Result<Self> {
        if coords.len() != space.dim {
            return Err(Error::DimensionMismatch {
                expected: space.dim,
                got: coords.len(),
            });
        }
        Ok(Vector { space, coords })
    }

    pub fn zero(space: SpaceSpec) -> Self {
        Vector {
            space,
            coords: vec![0.0; space.dim],
        }
    }

    pub fn basis(space: SpaceSpec, i: usize) -> Self {
        let mut v = Vector::zero(space);
        v.coords[i] = 1.0;
        v
    }

    pub fn norm(&self) -> f64 {
        lp_norm(self.coords.iter().copied(), self.space.exponent)
    }

    pub fn scale(&self, c: f64) -> Vector {
        Vector {
            space: self.space,
            coords: self.coords.iter().map(|x| c * x).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&x| x == 0.0)
    }
}

/// An element of the dual of `space`, acting by the dot product.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Functional {
    /// The predual the functional acts on.
    pub space: SpaceSpec,
    pub coords: Vec<f64>,
}

impl Functional {
    pub fn new(space: SpaceSpec, coords: Vec<f64>) -> Result<Self> {
        if coords.len() != space.dim {
            return Err(Error::DimensionMismatch {
                expected: space.dim,
                got: coords.len(),
            });
        }
        Ok(Functional { space, coords })
    }

    pub fn basis(space: SpaceSpec, i: usize, sign: f64) -> Self {
        let mut coords = vec![0.0; space.dim];
        coords[i] = sign;
        Functional { space, coords }
    }

    pub fn apply(&self, v: &Vector) -> f64 {
        debug_assert_eq!(self.space.dim, v.space.dim);
        dot(&self.coords, &v.coords)
    }

    /// ℓ_{u'} norm of the coefficient vector.
    pub fn dual_norm(&self) -> f64 {
        lp_norm(self.coords.iter().copied(), self.space.exponent.dual())
    }

    pub fn scale(&self, c: f64) -> Functional {
        Functional {
            space: self.space,
            coords: self.coords.iter().map(|x| c * x).collect(),
        }
    }

    /// Reinterprets the functional as a vector in the dual space ℓ_{u'}^N.
    pub fn as_dual_vector(&self) -> Vector {
        Vector {
            space: self.space.dual(),
            coords: self.coords.clone(),
        }
    }
}

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// A norming functional for `v`: dual norm 1 (for nonzero `v`) with
/// `⟨φ, v⟩ = ‖v‖`. Constructed analytically per exponent.
pub fn norming_functional(v: &Vector) -> Functional {
    let coords = norming_coords(&v.coords, v.space.exponent);
    Functional {
        space: v.space,
        coords,
    }
}

/// Coefficients of the maximizer of `⟨ψ, g⟩` over the ℓ_b unit ball; the
/// attained value is the ℓ_{b'} norm of `g`.
#[allow(clippy::redundant_guards)]
pub fn linear_maximizer(g: &[f64], ball: Exp) -> Vec<f64> {
    match ball {
        Exp::Inf => g.iter().map(|&x| signum_or_one(x)).collect(),
        Exp::Finite(b) if b == 1.0 => {
            let mut best = 0usize;
            for (i, x) in g.iter().enumerate() {
                if x.abs() > g[best].abs() {
                    best = i;
                }
            }
            let mut out = vec![0.0; g.len()];
            if g[best] != 0.0 {
                out[best] = g[best].signum();
            }
            out
        }
        Exp::Finite(b) => {
            let bd = Exp::Finite(b).dual();
            let bdv = match bd {
                Exp::Finite(x) => x,
                Exp::Inf => unreachable!("b > 1 has finite conjugate"),
            };
            let gnorm = lp_norm(g.iter().copied(), bd);
            if gnorm == 0.0 {
                return vec![0.0; g.len()];
            }
            g.iter()
                .map(|&x| x.signum() * (x.abs() / gnorm).powf(bdv - 1.0))
                .collect()
        }
    }
}

fn signum_or_one(x: f64) -> f64 {
    if x >= 0.0 {
        1.0
    } else {
        -1.0
    }
}

fn norming_coords(v: &[f64], u: Exp) -> Vec<f64> {
    // The norming functional of v in ℓ_u is the maximizer of ⟨φ, v⟩ over the
    // dual ball B_{ℓ_{u'}}, i.e. a linear maximization with ball exponent u'.
    linear_maximizer(v, u.dual())
}

/// Extreme points of the dual unit ball of `space`, when finitely enumerable.
///
/// Dual exponent 1 (`space` is ℓ∞): the `2N` signed basis functionals.
/// Dual exponent ∞ (`space` is ℓ1): the `2^N` sign vectors, if `N ≤ cap`.
/// Anything else: `None`, and callers fall back to iterative ascent.
#[allow(clippy::redundant_guards)]
pub fn extreme_points_capped(space: SpaceSpec, cap: usize) -> Option<Vec<Functional>> {
    match space.exponent.dual() {
        Exp::Finite(p) if p == 1.0 => {
            let mut out = Vec::with_capacity(2 * space.dim);
            for i in 0..space.dim {
                out.push(Functional::basis(space, i, 1.0));
                out.push(Functional::basis(space, i, -1.0));
            }
            Some(out)
        }
        Exp::Inf => {
            if space.dim > cap {
                return None;
            }
            Some(
                sign_vectors(space.dim)
                    .into_iter()
                    .map(|coords| Functional { space, coords })
                    .collect(),
            )
        }
        _ => None,
    }
}

pub fn extreme_points(space: SpaceSpec) -> Option<Vec<Functional>> {
    extreme_points_capped(space, enum_cap())
}

/// Extreme points of the (primal) unit ball of `space`, when enumerable:
/// `±e_i` for ℓ1, sign vectors for ℓ∞ within the cap.
pub fn unit_ball_extreme_points(space: SpaceSpec, cap: usize) -> Option<Vec<Vector>> {
    extreme_points_capped(space.dual(), cap).map(|fs| {
        fs.into_iter()
            .map(|f| Vector {
                space,
                coords: f.coords,
            })
            .collect()
    })
}

/// All `2^n` vectors with entries in `{±1}`, in a fixed order.
pub fn sign_vectors(n: usize) -> Vec<Vec<f64>> {
    let count = 1usize << n;
    (0..count).map(|mask| sign_pattern(n, mask)).collect()
}

/// The `index`-th sign vector of [`sign_vectors`] without materializing the
/// full enumeration; safe at any dimension (bits repeat past 64).
pub fn sign_pattern(dim: usize, index: usize) -> Vec<f64> {
    (0..dim)
        .map(|i| {
            if index >> (i % (usize::BITS as usize)) & 1 == 1 {
                -1.0
            } else {
                1.0
            }
        })
        .collect()
}

/// Deterministic unit-norm functionals in the dual of `space`: Gaussian
/// directions normalized to dual norm 1. Same `(space, seed, count)` yields
/// the identical list.
pub fn sample_dual_sphere(space: SpaceSpec, seed: u64, count: usize) -> Vec<Functional> {
    let mut rng = rng::seeded(seed);
    (0..count)
        .map(|_| {
            loop {
                let coords = gaussian_coords(&mut rng, space.dim);
                let f = Functional { space, coords };
                let n = f.dual_norm();
                if n > 1e-12 {
                    return f.scale(1.0 / n);
                }
            }
        })
        .collect()
}

pub(crate) fn gaussian_coords(rng: &mut rng::Rng, dim: usize) -> Vec<f64> {
    use rand_distr::{Distribution, StandardNormal};
    (0..dim).map(|_| StandardNormal.sample(rng)).collect()
}
