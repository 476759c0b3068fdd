//! The mixed (s,q) norm, bracketed from both sides.
//!
//! Primal: minimize `‖τ‖_r · ‖(x_i/τ_i)‖_{w,s}` over factorizations
//! `x_i = τ_i y_i` with `1/r = 1/q - 1/s`. Any achieved factorization is an
//! upper bound. The τ search runs in log-space, with zero members pinned to
//! `τ_i = 0, y_i = 0`.
//!
//! Dual: maximize the Maurey functional over discrete probability measures on
//! the dual ball. Any achieved measure is a lower bound. The measure search is
//! conditional-gradient in the measure (the functional is concave there), with
//! a weighted convex-maximization subproblem producing new atoms.

use crate::budget::SearchBudget;
use crate::error::{Error, Result};
use crate::estimate::{NormEstimate, Witness};
use crate::exp::{abs_pow, lp_norm, Exp};
use crate::par;
use crate::rng;
use crate::spaces::{
    extreme_points_capped, enum_cap, gaussian_coords, linear_maximizer, norming_functional,
    sample_dual_sphere, Functional, Vector,
};

use super::{weak_norm, DiscreteMeasure, FactorizationWitness, VectorFamily};

fn require_mixed_exponents(s: Exp, q: Exp) -> Result<(f64, f64)> {
    let qv = match q {
        Exp::Finite(v) if v >= 1.0 => v,
        Exp::Finite(v) => {
            return Err(Error::Inadmissible {
                constraint: format!("mixed norm requires q >= 1, got {v}"),
            })
        }
        Exp::Inf => {
            return Err(Error::Inadmissible {
                constraint: "mixed norm requires finite q".into(),
            })
        }
    };
    let sv = match s {
        Exp::Finite(v) => v,
        Exp::Inf => f64::INFINITY,
    };
    if qv > sv {
        return Err(Error::Inadmissible {
            constraint: format!("mixed norm requires q <= s, got q={qv}, s={sv}"),
        });
    }
    Ok((sv, qv))
}

/// Upper bound on the mixed (s,q) norm via an achieved factorization.
pub fn mixed_norm_primal(
    fam: &VectorFamily,
    s: Exp,
    q: Exp,
    budget: SearchBudget,
) -> Result<NormEstimate> {
    let (sv, qv) = require_mixed_exponents(s, q)?;

    // s = q: r = ∞ and the constant factorization τ ≡ 1 is optimal, so the
    // mixed norm coincides with the weak norm isometrically.
    if sv == qv {
        let weak = weak_norm(fam, q, budget)?;
        let witness = FactorizationWitness {
            taus: vec![1.0; fam.len()],
            ys: fam.clone(),
        };
        return Ok(NormEstimate::upper(
            weak.value,
            Witness::Factorization {
                factorization: witness,
            },
            budget,
        ));
    }

    // s = ∞: τ_i = ‖x_i‖ leaves unit y's with weak-∞ norm max_i ‖y_i‖ = 1, so
    // the mixed norm coincides with the strong norm isometrically.
    if s.is_inf() {
        let (taus, ys) = factor_by_norms(fam);
        let value = lp_norm(taus.iter().copied(), q);
        let witness = FactorizationWitness { taus, ys };
        return Ok(NormEstimate::upper(
            value,
            Witness::Factorization {
                factorization: witness,
            },
            budget,
        ));
    }

    let r = Exp::mixed_r(s, q);
    let rv = r.value().expect("q < s < inf gives finite r");

    let nonzero: Vec<usize> = (0..fam.len())
        .filter(|&i| !fam.members[i].is_zero())
        .collect();
    if nonzero.is_empty() {
        let witness = FactorizationWitness {
            taus: vec![0.0; fam.len()],
            ys: zero_family(fam),
        };
        return Ok(NormEstimate::upper(
            0.0,
            Witness::Factorization {
                factorization: witness,
            },
            budget,
        ));
    }

    // Budget for the weak-norm evaluations inside the line searches.
    let inner = SearchBudget {
        restarts: 6,
        iters: 60,
        m_max: budget.m_max,
        seed: budget.seed.wrapping_mul(0x9e37_79b9).wrapping_add(1),
    };

    let eval = |log_taus: &[f64]| -> f64 {
        let mut taus = vec![0.0; fam.len()];
        for (slot, &i) in nonzero.iter().enumerate() {
            taus[i] = log_taus[slot].exp();
        }
        objective(fam, s, q, &taus, inner)
    };

    let best = par::min_scored(budget.restarts.max(1), |restart| {
        let mut t = initial_log_taus(fam, &nonzero, qv, rv, budget.seed, restart);
        let mut value = eval(&t);
        let passes = (budget.iters / nonzero.len().max(1)).clamp(4, 40);
        for _ in 0..passes {
            let before = value;
            for slot in 0..nonzero.len() {
                let (tb, vb) = line_search(&eval, &t, slot, value);
                t = tb;
                value = vb;
            }
            if before - value <= 1e-12 * before.abs().max(1.0) {
                break;
            }
        }
        par::Scored {
            score: value,
            index: restart,
            payload: t,
        }
    })
    .expect("restarts >= 1");

    let mut taus = vec![0.0; fam.len()];
    for (slot, &i) in nonzero.iter().enumerate() {
        taus[i] = best.payload[slot].exp();
    }
    // Normalize ‖τ‖_r = 1; the objective is invariant under (τ, y) ↦ (cτ, y/c).
    let tnorm = lp_norm(taus.iter().copied(), r);
    if tnorm > 0.0 {
        for t in taus.iter_mut() {
            *t /= tnorm;
        }
    }
    let ys = divide_family(fam, &taus);
    let witness = FactorizationWitness { taus, ys };
    witness.validate(fam)?;
    Ok(NormEstimate::upper(
        best.score,
        Witness::Factorization {
            factorization: witness,
        },
        budget,
    ))
}

fn objective(fam: &VectorFamily, s: Exp, q: Exp, taus: &[f64], inner: SearchBudget) -> f64 {
    let r = Exp::mixed_r(s, q);
    let tnorm = lp_norm(taus.iter().copied(), r);
    let ys = divide_family(fam, taus);
    let w = weak_norm(&ys, s, inner).expect("s >= 1 by admissibility");
    tnorm * w.value
}

fn factor_by_norms(fam: &VectorFamily) -> (Vec<f64>, VectorFamily) {
    let taus: Vec<f64> = fam.members.iter().map(|x| x.norm()).collect();
    (taus.clone(), divide_family(fam, &taus))
}

fn divide_family(fam: &VectorFamily, taus: &[f64]) -> VectorFamily {
    let members = fam
        .members
        .iter()
        .zip(taus)
        .map(|(x, &t)| {
            if t > 0.0 {
                x.scale(1.0 / t)
            } else {
                Vector::zero(fam.space)
            }
        })
        .collect();
    VectorFamily {
        space: fam.space,
        members,
        shape: fam.shape.clone(),
    }
}

fn zero_family(fam: &VectorFamily) -> VectorFamily {
    VectorFamily {
        space: fam.space,
        members: vec![Vector::zero(fam.space); fam.len()],
        shape: fam.shape.clone(),
    }
}

fn initial_log_taus(
    fam: &VectorFamily,
    nonzero: &[usize],
    qv: f64,
    rv: f64,
    seed: u64,
    restart: usize,
) -> Vec<f64> {
    let canonical: Vec<f64> = nonzero
        .iter()
        .map(|&i| (qv / rv) * fam.members[i].norm().ln())
        .collect();
    match restart {
        // τ_i = ‖x_i‖^{q/r}: the interpolation certifying mixed ≤ strong.
        0 => canonical,
        // τ ≡ 1.
        1 => vec![0.0; nonzero.len()],
        // τ_i = ‖x_i‖.
        2 => nonzero
            .iter()
            .map(|&i| fam.members[i].norm().ln())
            .collect(),
        _ => {
            let mut rng = rng::restart_stream(seed, restart as u64);
            let noise = gaussian_coords(&mut rng, nonzero.len());
            canonical
                .iter()
                .zip(noise)
                .map(|(c, n)| c + 0.4 * n)
                .collect()
        }
    }
}

/// Grid-and-refine line search on one log-τ coordinate.
fn line_search(
    eval: &impl Fn(&[f64]) -> f64,
    t: &[f64],
    slot: usize,
    current: f64,
) -> (Vec<f64>, f64) {
    let mut best = t.to_vec();
    let mut best_val = current;
    let mut center = t[slot];
    let mut width = 1.5;
    for _round in 0..3 {
        let mut probe = best.clone();
        for step in -3..=3i32 {
            if step == 0 {
                continue;
            }
            probe[slot] = center + width * step as f64 / 3.0;
            let v = eval(&probe);
            if v < best_val {
                best_val = v;
                best = probe.clone();
            }
        }
        center = best[slot];
        width /= 3.0;
    }
    (best, best_val)
}

/// Lower bound on the mixed (s,q) norm via an achieved discrete measure,
/// with the default atom budget of `m + 1`.
pub fn mixed_norm_dual(
    fam: &VectorFamily,
    s: Exp,
    q: Exp,
    budget: SearchBudget,
) -> Result<NormEstimate> {
    mixed_norm_dual_with_atoms(fam, s, q, fam.len() + 1, budget)
}

pub fn mixed_norm_dual_with_atoms(
    fam: &VectorFamily,
    s: Exp,
    q: Exp,
    atom_cap: usize,
    budget: SearchBudget,
) -> Result<NormEstimate> {
    let (sv, qv) = require_mixed_exponents(s, q)?;
    if !sv.is_finite() || qv >= sv {
        return Err(Error::Inadmissible {
            constraint: format!(
                "Maurey dual characterization requires q < s < inf, got q={qv}, s={sv}"
            ),
        });
    }
    let atom_cap = atom_cap.max(1);

    // Point mass at the weak-q maximizer: the floor every restart starts from,
    // which also pins the chain inequality weak <= dual.
    let weak = weak_norm(fam, q, budget)?;
    let base_atom = match &weak.witness {
        Witness::Functional { phi } => phi.clone(),
        _ => unreachable!("weak norm always returns a functional witness"),
    };

    let best = par::max_scored(budget.restarts.max(1), |restart| {
        let mut state = init_measure(fam, &base_atom, budget.seed, restart, atom_cap);
        let value = improve_measure(fam, sv, qv, &mut state, atom_cap, budget, restart);
        par::Scored {
            score: value,
            index: restart,
            payload: state,
        }
    })
    .expect("restarts >= 1");

    let measure = DiscreteMeasure::new(best.payload.atoms, best.payload.weights)?;
    Ok(NormEstimate::lower(
        best.score,
        Witness::Measure { measure },
        budget,
    ))
}

#[derive(Clone)]
struct MeasureState {
    atoms: Vec<Functional>,
    weights: Vec<f64>,
    /// powers[a][j] = |⟨φ_a, z_j⟩|^s
    powers: Vec<Vec<f64>>,
}

fn atom_powers(fam: &VectorFamily, phi: &Functional, sv: f64) -> Vec<f64> {
    fam.members.iter().map(|z| abs_pow(phi.apply(z), sv)).collect()
}

fn measure_value(state: &MeasureState, qv: f64, sv: f64) -> f64 {
    let m = state.powers.first().map_or(0, Vec::len);
    let mut acc = 0.0;
    for j in 0..m {
        let mut g = 0.0;
        for (row, &w) in state.powers.iter().zip(&state.weights) {
            g += w * row[j];
        }
        acc += g.powf(qv / sv);
    }
    acc.powf(1.0 / qv)
}

fn init_measure(
    fam: &VectorFamily,
    base_atom: &Functional,
    seed: u64,
    restart: usize,
    atom_cap: usize,
) -> MeasureState {
    let mut atoms = vec![base_atom.clone()];
    if restart > 0 {
        let extra = sample_dual_sphere(
            fam.space,
            seed.wrapping_add(0x5bd1_e995).wrapping_add(restart as u64),
            (atom_cap - 1).min(3),
        );
        atoms.extend(extra);
    }
    let k = atoms.len();
    MeasureState {
        atoms,
        weights: vec![1.0 / k as f64; k],
        powers: Vec::new(), // filled by improve_measure
    }
}

fn improve_measure(
    fam: &VectorFamily,
    sv: f64,
    qv: f64,
    state: &mut MeasureState,
    atom_cap: usize,
    budget: SearchBudget,
    restart: usize,
) -> f64 {
    state.powers = state
        .atoms
        .iter()
        .map(|a| atom_powers(fam, a, sv))
        .collect();
    refresh_weights(state, qv, sv, 60);
    normalize_weights(state);

    // The returned witness must respect the atom cap, so track the best
    // capped state seen rather than trusting the last iterate (pruning an
    // atom can lose value).
    let mut best_state = state.clone();
    let mut best = measure_value(state, qv, sv);

    let outer = (budget.iters / 8).clamp(8, 60);
    let mut stall = 0;
    for step in 0..outer {
        let cand = new_atom(fam, sv, qv, state, budget.seed, restart, step);
        let cand_powers = atom_powers(fam, &cand, sv);

        // Line search over μ' = (1-γ)μ + γ δ_cand; the functional is concave
        // along the segment.
        let val_at = |gamma: f64| -> f64 {
            let m = fam.len();
            let mut acc = 0.0;
            for j in 0..m {
                let mut g = 0.0;
                for (row, &w) in state.powers.iter().zip(&state.weights) {
                    g += (1.0 - gamma) * w * row[j];
                }
                g += gamma * cand_powers[j];
                acc += g.powf(qv / sv);
            }
            acc.powf(1.0 / qv)
        };
        let gamma = golden_max(&val_at, 0.0, 1.0, 28);
        let improved = val_at(gamma);
        if improved <= best * (1.0 + 1e-13) {
            stall += 1;
            if stall >= 3 {
                break;
            }
            continue;
        }
        stall = 0;
        for w in state.weights.iter_mut() {
            *w *= 1.0 - gamma;
        }
        state.atoms.push(cand);
        state.weights.push(gamma);
        state.powers.push(cand_powers);
        refresh_weights(state, qv, sv, 40);
        prune(state, atom_cap, qv, sv);
        normalize_weights(state);
        let val = measure_value(state, qv, sv);
        if val > best {
            best = val;
            best_state = state.clone();
        }
    }
    *state = best_state;
    measure_value(state, qv, sv)
}

fn normalize_weights(state: &mut MeasureState) {
    let total: f64 = state.weights.iter().sum();
    if total > 0.0 {
        for w in state.weights.iter_mut() {
            *w /= total;
        }
    }
}

/// Frank-Wolfe on the weight simplex; the objective is concave in the weights.
fn refresh_weights(state: &mut MeasureState, qv: f64, sv: f64, iters: usize) {
    let m = state.powers.first().map_or(0, Vec::len);
    let k = state.atoms.len();
    if k <= 1 || m == 0 {
        return;
    }
    for round in 0..iters {
        let mut g = vec![0.0; m];
        for j in 0..m {
            for (row, &w) in state.powers.iter().zip(&state.weights) {
                g[j] += w * row[j];
            }
        }
        let mut grad = vec![0.0; k];
        for (a, row) in state.powers.iter().enumerate() {
            for j in 0..m {
                let gj = g[j].max(1e-300);
                grad[a] += gj.powf(qv / sv - 1.0) * row[j];
            }
        }
        let mut vertex = 0;
        for a in 1..k {
            if grad[a] > grad[vertex] {
                vertex = a;
            }
        }
        let val_at = |gamma: f64| {
            let mut acc = 0.0;
            for (j, &gj0) in g.iter().enumerate() {
                let gj = (1.0 - gamma) * gj0 + gamma * state.powers[vertex][j];
                acc += gj.powf(qv / sv);
            }
            acc
        };
        let gamma = golden_max(&val_at, 0.0, 1.0, 20);
        if gamma <= 1e-14 {
            break;
        }
        for w in state.weights.iter_mut() {
            *w *= 1.0 - gamma;
        }
        state.weights[vertex] += gamma;
        if round > 4 && gamma < 1e-10 {
            break;
        }
    }
}

/// Conditional-gradient atom: maximize Σ_j c_j |⟨φ, z_j⟩|^s over the dual
/// ball, where c_j reweights members by their current marginal value.
fn new_atom(
    fam: &VectorFamily,
    sv: f64,
    qv: f64,
    state: &MeasureState,
    seed: u64,
    restart: usize,
    step: usize,
) -> Functional {
    let m = fam.len();
    let mut g = vec![0.0; m];
    for (j, gj) in g.iter_mut().enumerate() {
        for (row, &w) in state.powers.iter().zip(&state.weights) {
            *gj += w * row[j];
        }
    }
    let starved = |j: usize| g[j] <= 1e-280 && !fam.members[j].is_zero();
    let any_zero = (0..m).any(starved);
    let c: Vec<f64> = (0..m)
        .map(|j| {
            if any_zero {
                if starved(j) {
                    1.0
                } else {
                    0.0
                }
            } else {
                g[j].max(1e-280).powf(qv / sv - 1.0)
            }
        })
        .collect();

    let score = |phi: &Functional| -> f64 {
        fam.members
            .iter()
            .zip(&c)
            .map(|(z, &cj)| cj * abs_pow(phi.apply(z), sv))
            .sum()
    };

    if let Some(points) = extreme_points_capped(fam.space, enum_cap()) {
        let best = points
            .into_iter()
            .max_by(|a, b| score(a).total_cmp(&score(b)))
            .expect("extreme sets are nonempty");
        return best;
    }

    // Ascent fallback: norming starts plus one seeded direction.
    let ball = fam.space.exponent.dual();
    let mut starts: Vec<Functional> = fam
        .members
        .iter()
        .filter(|z| !z.is_zero())
        .map(norming_functional)
        .collect();
    starts.extend(sample_dual_sphere(
        fam.space,
        seed.wrapping_add(restart as u64 * 1009 + step as u64),
        1,
    ));
    let mut best = starts[0].clone();
    let mut best_score = score(&best);
    for mut phi in starts {
        for _ in 0..40 {
            let mut grad = vec![0.0; fam.space.dim];
            for (z, &cj) in fam.members.iter().zip(&c) {
                let d = phi.apply(z);
                if d == 0.0 || cj == 0.0 {
                    continue;
                }
                let w = cj * abs_pow(d, sv - 1.0) * d.signum();
                for (gc, &zc) in grad.iter_mut().zip(&z.coords) {
                    *gc += w * zc;
                }
            }
            if grad.iter().all(|&x| x == 0.0) {
                break;
            }
            let cand = Functional {
                space: fam.space,
                coords: linear_maximizer(&grad, ball),
            };
            let s_new = score(&cand);
            if s_new <= score(&phi) * (1.0 + 1e-15) {
                break;
            }
            phi = cand;
        }
        let s_phi = score(&phi);
        if s_phi > best_score {
            best_score = s_phi;
            best = phi;
        }
    }
    best
}

fn prune(state: &mut MeasureState, atom_cap: usize, qv: f64, sv: f64) {
    loop {
        let drop = state
            .weights
            .iter()
            .enumerate()
            .filter(|(_, &w)| w < 1e-12)
            .map(|(i, _)| i)
            .next()
            .or_else(|| {
                if state.atoms.len() > atom_cap {
                    state
                        .weights
                        .iter()
                        .enumerate()
                        .min_by(|a, b| a.1.total_cmp(b.1))
                        .map(|(i, _)| i)
                } else {
                    None
                }
            });
        match drop {
            Some(i) if state.atoms.len() > 1 => {
                state.atoms.remove(i);
                state.weights.remove(i);
                state.powers.remove(i);
                let total: f64 = state.weights.iter().sum();
                if total > 0.0 {
                    for w in state.weights.iter_mut() {
                        *w /= total;
                    }
                }
                refresh_weights(state, qv, sv, 20);
            }
            _ => break,
        }
    }
}

fn golden_max(f: &impl Fn(f64) -> f64, mut a: f64, mut b: f64, iters: usize) -> f64 {
    const INV_PHI: f64 = 0.618_033_988_749_894_8;
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    for _ in 0..iters {
        if fc > fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
    }
    if fc > fd {
        c
    } else {
        d
    }
}

/// The φ-list functional of the mixing characterization:
/// `(Σ_j (Σ_a |⟨φ_a, z_j⟩|^s)^{q/s})^{1/q}`. Dividing by the strong ℓs norm
/// of the list lower-bounds the mixed (s,q) norm; the two parametrizations
/// (measure vs list) correspond via `φ_a = w_a^{1/s} · atom_a`.
pub fn maurey_philist_value(fam: &VectorFamily, s: f64, q: f64, phis: &[Functional]) -> f64 {
    let mut acc = 0.0;
    for z in &fam.members {
        let inner: f64 = phis.iter().map(|phi| abs_pow(phi.apply(z), s)).sum();
        acc += inner.powf(q / s);
    }
    acc.powf(1.0 / q)
}

/// Maximizes the φ-list functional over lists of `k` functionals with
/// `Σ_a ‖φ_a‖^s = 1`, an independent route to the dual mixed norm. Returns
/// the achieved value and list.
pub fn maximize_philist(
    fam: &VectorFamily,
    s: f64,
    q: f64,
    k: usize,
    budget: SearchBudget,
) -> Result<(f64, Vec<Functional>)> {
    if !(1.0 <= q && q < s) || !s.is_finite() {
        return Err(Error::Inadmissible {
            constraint: format!("phi-list route requires 1 <= q < s < inf, got q={q}, s={s}"),
        });
    }
    let k = k.max(1);
    let dim = fam.space.dim;

    let normalize = |phis: &mut Vec<Functional>| {
        let total: f64 = phis.iter().map(|p| p.dual_norm().powf(s)).sum();
        if total > 0.0 {
            let c = total.powf(-1.0 / s);
            for p in phis.iter_mut() {
                *p = p.scale(c);
            }
        }
    };

    // Point-mass-style start at the weak-q maximizer: the list analogue of
    // the measure search's floor.
    let weak_phi = match weak_norm(fam, Exp::finite(q), budget)?.witness {
        crate::estimate::Witness::Functional { phi } => phi,
        _ => unreachable!("weak norm returns a functional witness"),
    };

    let best = par::max_scored(budget.restarts.max(1), |restart| {
        let mut rng = rng::restart_stream(budget.seed ^ 0x00ff_aa55, restart as u64);
        let mut phis: Vec<Functional> = (0..k)
            .map(|a| {
                let idx = (restart + a) % fam.len();
                match restart % 3 {
                    0 if a == 0 => weak_phi.clone(),
                    0 => weak_phi.scale(1e-3).clone(),
                    1 if !fam.members[idx].is_zero() => {
                        norming_functional(&fam.members[idx])
                    }
                    _ => Functional {
                        space: fam.space,
                        coords: gaussian_coords(&mut rng, dim),
                    },
                }
            })
            .collect();
        normalize(&mut phis);
        let mut value = maurey_philist_value(fam, s, q, &phis);
        let mut step = 0.5;
        for _ in 0..budget.iters {
            // Subgradient of the objective in the concatenated φ coordinates.
            let mut grads = vec![vec![0.0; dim]; k];
            for z in &fam.members {
                let inner: f64 = phis.iter().map(|phi| abs_pow(phi.apply(z), s)).sum();
                if inner <= 0.0 {
                    continue;
                }
                let outer_w = inner.powf(q / s - 1.0);
                for (a, phi) in phis.iter().enumerate() {
                    let d = phi.apply(z);
                    if d == 0.0 {
                        continue;
                    }
                    let w = outer_w * abs_pow(d, s - 1.0) * d.signum();
                    for (gc, &zc) in grads[a].iter_mut().zip(&z.coords) {
                        *gc += w * zc;
                    }
                }
            }
            let gnorm: f64 = grads
                .iter()
                .flat_map(|g| g.iter())
                .map(|&x| x * x)
                .sum::<f64>()
                .sqrt();
            if gnorm == 0.0 {
                break;
            }
            let mut cand: Vec<Functional> = phis
                .iter()
                .zip(&grads)
                .map(|(phi, g)| {
                    let coords = phi
                        .coords
                        .iter()
                        .zip(g)
                        .map(|(&pc, &gc)| pc + step * gc / gnorm)
                        .collect();
                    Functional {
                        space: fam.space,
                        coords,
                    }
                })
                .collect();
            normalize(&mut cand);
            let cand_val = maurey_philist_value(fam, s, q, &cand);
            if cand_val > value {
                value = cand_val;
                phis = cand;
                step = (step * 1.3).min(1.0);
            } else {
                step *= 0.6;
                if step < 1e-10 {
                    break;
                }
            }
        }
        par::Scored {
            score: value,
            index: restart,
            payload: phis,
        }
    })
    .expect("restarts >= 1");

    Ok((best.score, best.payload))
}
