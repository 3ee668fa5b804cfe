//! Bell functionals over full correlators, exact classical bounds, and the
//! variational quantum bound.

use crate::bitstring::BitString;
use crate::boolfn::BooleanFunction;
use crate::error::{Error, Result};
use crate::numfmt::{format_ratio, json_f64, parse_ratio, ratio_to_f64};
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use rayon::prelude::*;
use serde_json::{json, Value};
use std::f64::consts::PI;

/// Input prior: exact non-negative rational weights summing to 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PriorDistribution {
    n: usize,
    weights: Vec<BigRational>,
}

impl PriorDistribution {
    pub fn new(n: usize, weights: Vec<BigRational>) -> Result<Self> {
        if weights.len() != 1 << n {
            return Err(Error::DimensionMismatch(format!(
                "{} weights for arity {n}",
                weights.len()
            )));
        }
        if weights.iter().any(|w| w.is_negative()) {
            return Err(Error::InvalidArgument("prior weights must be non-negative".into()));
        }
        let sum: BigRational = weights.iter().sum();
        if !sum.is_one() {
            return Err(Error::InvalidArgument(format!(
                "prior weights sum to {}, expected 1",
                format_ratio(&sum)
            )));
        }
        Ok(PriorDistribution { n, weights })
    }

    pub fn uniform(n: usize) -> Self {
        let w = BigRational::new(1.into(), (1i64 << n).into());
        PriorDistribution { n, weights: vec![w; 1 << n] }
    }

    pub fn point_mass(x: &BitString) -> Self {
        let n = x.len();
        let mut weights = vec![BigRational::zero(); 1 << n];
        weights[x.index()] = BigRational::one();
        PriorDistribution { n, weights }
    }

    pub fn arity(&self) -> usize {
        self.n
    }

    pub fn weight(&self, x: &BitString) -> &BigRational {
        &self.weights[x.index()]
    }

    pub fn weight_by_index(&self, idx: usize) -> &BigRational {
        &self.weights[idx]
    }

    pub fn weights(&self) -> &[BigRational] {
        &self.weights
    }

    pub fn to_json(&self) -> Value {
        json!({
            "n": self.n,
            "w": self.weights.iter().map(format_ratio).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let n = v
            .get("n")
            .and_then(Value::as_u64)
            .ok_or_else(|| Error::Json("missing integer field 'n'".into()))? as usize;
        let weights = v
            .get("w")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Json("missing array field 'w'".into()))?
            .iter()
            .map(|e| {
                e.as_str()
                    .ok_or_else(|| Error::Json("weights must be rational strings".into()))
                    .and_then(|s| parse_ratio(s))
            })
            .collect::<Result<Vec<_>>>()?;
        PriorDistribution::new(n, weights)
    }
}

/// Correlator coefficients `beta(s)` normalized to `sum |beta| = 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BellFunctional {
    n: usize,
    beta: Vec<BigRational>,
}

impl BellFunctional {
    pub fn new(n: usize, beta: Vec<BigRational>) -> Result<Self> {
        if beta.len() != 1 << n {
            return Err(Error::DimensionMismatch(format!(
                "{} coefficients for arity {n}",
                beta.len()
            )));
        }
        let total: BigRational = beta.iter().map(|b| b.abs()).sum();
        if !total.is_one() {
            return Err(Error::Unnormalized(format_ratio(&total)));
        }
        Ok(BellFunctional { n, beta })
    }

    /// Rescale arbitrary coefficients into the `sum |beta| = 1` form.
    pub fn normalized(n: usize, beta: Vec<BigRational>) -> Result<Self> {
        let total: BigRational = beta.iter().map(|b| b.abs()).sum();
        if total.is_zero() {
            return Err(Error::InvalidArgument("all-zero functional".into()));
        }
        let beta = beta.into_iter().map(|b| b / &total).collect();
        BellFunctional::new(n, beta)
    }

    pub fn arity(&self) -> usize {
        self.n
    }

    pub fn beta(&self) -> &[BigRational] {
        &self.beta
    }

    pub fn beta_f64(&self) -> Vec<f64> {
        self.beta.iter().map(ratio_to_f64).collect()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "n": self.n,
            "beta": self.beta.iter().map(format_ratio).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let n = v
            .get("n")
            .and_then(Value::as_u64)
            .ok_or_else(|| Error::Json("missing integer field 'n'".into()))? as usize;
        let beta = v
            .get("beta")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Json("missing array field 'beta'".into()))?
            .iter()
            .map(|e| {
                e.as_str()
                    .ok_or_else(|| Error::Json("beta entries must be rational strings".into()))
                    .and_then(|s| parse_ratio(s))
            })
            .collect::<Result<Vec<_>>>()?;
        BellFunctional::new(n, beta)
    }
}

/// `beta(s) = w(s) (-1)^f(s)`; normalized automatically since the prior
/// sums to 1.
pub fn functional_from_game(f: &BooleanFunction, w: &PriorDistribution) -> Result<BellFunctional> {
    if f.arity() != w.arity() {
        return Err(Error::ArityMismatch { expected: f.arity(), got: w.arity() });
    }
    let beta = (0..(1usize << f.arity()))
        .map(|s| {
            let ws = w.weight_by_index(s).clone();
            if f.eval_index(s) == 1 {
                -ws
            } else {
                ws
            }
        })
        .collect();
    BellFunctional::new(f.arity(), beta)
}

/// Inverse of `functional_from_game`: `f(s) = 1` iff `beta(s) < 0` (zero
/// coefficients map to `f = 0`, `w = 0`), `w(s) = |beta(s)|`.
pub fn game_from_functional(b: &BellFunctional) -> (BooleanFunction, PriorDistribution) {
    let n = b.arity();
    let table = b.beta().iter().map(|v| u8::from(v.is_negative())).collect();
    let weights = b.beta().iter().map(|v| v.abs()).collect();
    (
        BooleanFunction::new(n, table).expect("table has 2^n bits"),
        PriorDistribution::new(n, weights).expect("|beta| sums to 1"),
    )
}

/// Signed transform `T_b = sum_s beta(s) (-1)^(b.s)` for all `b`, exact.
fn correlator_transform(beta: &[BigRational], n: usize) -> Vec<BigRational> {
    let mut v = beta.to_vec();
    for j in 0..n {
        let bit = 1usize << j;
        for x in 0..(1usize << n) {
            if x & bit == 0 {
                let a = v[x].clone();
                let b = v[x | bit].clone();
                v[x] = &a + &b;
                v[x | bit] = &a - &b;
            }
        }
    }
    v
}

/// Exact LHV optimum `c = max_b |T_b|`: a deterministic local strategy
/// `m_j = a_j XOR b_j s_j` realizes `eps(s) = (-1)^(A + b.s)`, so the
/// optimum is the largest transform magnitude.
pub fn classical_bound(b: &BellFunctional) -> BigRational {
    classical_bound_with_argmax(b).0
}

pub(crate) fn classical_bound_with_argmax(b: &BellFunctional) -> (BigRational, usize) {
    let t = correlator_transform(b.beta(), b.arity());
    let mut best = BigRational::zero();
    let mut arg = 0usize;
    for (i, v) in t.iter().enumerate() {
        let a = v.abs();
        if a > best {
            best = a;
            arg = i;
        }
    }
    (best, arg)
}

/// Oracle: enumerate all `4^n` deterministic single-party output tables.
pub fn classical_bound_bruteforce(b: &BellFunctional) -> Result<BigRational> {
    let n = b.arity();
    if n > 6 {
        return Err(Error::OutOfRange(format!("brute force limited to n <= 6, got {n}")));
    }
    let mut best = BigRational::zero();
    for strat in 0..(1usize << (2 * n)) {
        // party j outputs a_j XOR b_j s_j
        let a_mask = strat & ((1 << n) - 1);
        let b_mask = strat >> n;
        let mut acc = BigRational::zero();
        for s in 0..(1usize << n) {
            let parity = ((a_mask.count_ones() + (b_mask & s).count_ones()) & 1) as u8;
            let term = b.beta()[s].clone();
            acc += if parity == 1 { -term } else { term };
        }
        let a = acc.abs();
        if a > best {
            best = a;
        }
    }
    Ok(best)
}

/// `(u + 1) / 2`.
pub fn mean_success_from_bound(u: f64) -> Result<f64> {
    if !(-1.0..=1.0).contains(&u) {
        return Err(Error::OutOfRange(format!("bound {u} outside [-1, 1]")));
    }
    Ok((u + 1.0) / 2.0)
}

#[derive(Debug, Clone)]
pub struct QuantumOptions {
    /// Random ascent starts in addition to the corner seeds.
    pub restarts: usize,
    pub seed: u64,
    pub max_iters: usize,
    pub grad_tol: f64,
    /// How many of the best corner points also serve as ascent starts.
    pub corner_ascents: usize,
}

impl QuantumOptions {
    pub fn for_arity(n: usize) -> Self {
        QuantumOptions {
            restarts: 100usize.max(25 * n),
            seed: 0,
            max_iters: 10_000,
            grad_tol: 1e-10,
            corner_ascents: 4,
        }
    }
}

/// Result of a bound computation: exact classical value plus the optimizer
/// estimate of the quantum value (a lower bound on the true supremum).
#[derive(Debug, Clone)]
pub struct BoundsReport {
    pub classical: BigRational,
    pub quantum: f64,
    pub restarts: usize,
    pub argmax_angles: Vec<f64>,
    pub grad_norm: f64,
}

impl BoundsReport {
    pub fn mean_success_classical(&self) -> f64 {
        (ratio_to_f64(&self.classical) + 1.0) / 2.0
    }

    pub fn mean_success_quantum(&self) -> f64 {
        (self.quantum + 1.0) / 2.0
    }

    pub fn to_json(&self) -> Value {
        json!({
            "classical": format_ratio(&self.classical),
            "quantum": json_f64(self.quantum),
            "restarts": self.restarts,
            "argmax_angles": self.argmax_angles.iter().map(|&a| json_f64(a)).collect::<Vec<_>>(),
        })
    }
}

/// The variational objective `G(phi) = |sum_s beta(s) e^(i phi.s)|` and the
/// analytic gradient of its square.
pub(crate) struct Objective {
    beta: Vec<f64>,
    n: usize,
}

impl Objective {
    pub fn new(b: &BellFunctional) -> Self {
        Objective { beta: b.beta_f64(), n: b.arity() }
    }

    fn amplitude(&self, phi: &[f64]) -> Complex64 {
        let mut z = Complex64::new(0.0, 0.0);
        for (s, &b) in self.beta.iter().enumerate() {
            if b == 0.0 {
                continue;
            }
            let mut angle = 0.0;
            for (k, &p) in phi.iter().enumerate() {
                if s >> k & 1 == 1 {
                    angle += p;
                }
            }
            z += Complex64::from_polar(b.abs(), angle) * b.signum();
        }
        z
    }

    pub fn value(&self, phi: &[f64]) -> f64 {
        self.amplitude(phi).norm()
    }

    /// `(|Z|^2, d|Z|^2/dphi)` with `dZ/dphi_k = i sum_{s: s_k=1} beta_s e^(i phi.s)`.
    pub fn value_sq_grad(&self, phi: &[f64]) -> (f64, Vec<f64>) {
        let mut z = Complex64::new(0.0, 0.0);
        let mut zk = vec![Complex64::new(0.0, 0.0); self.n];
        for (s, &b) in self.beta.iter().enumerate() {
            if b == 0.0 {
                continue;
            }
            let mut angle = 0.0;
            for (k, &p) in phi.iter().enumerate() {
                if s >> k & 1 == 1 {
                    angle += p;
                }
            }
            let e = Complex64::from_polar(b.abs(), angle) * b.signum();
            z += e;
            for (k, zkk) in zk.iter_mut().enumerate() {
                if s >> k & 1 == 1 {
                    *zkk += e;
                }
            }
        }
        let grad = zk.iter().map(|&zkk| 2.0 * (z.conj() * Complex64::i() * zkk).re).collect();
        (z.norm_sqr(), grad)
    }
}

fn wrap_angle(a: f64) -> f64 {
    let mut x = (a + PI).rem_euclid(2.0 * PI) - PI;
    if x <= -PI {
        x = PI;
    }
    x
}

/// Adaptive-step projected gradient ascent on the torus; returns
/// `(value, angles, grad_norm)`.
fn ascend(obj: &Objective, start: &[f64], opts: &QuantumOptions) -> (f64, Vec<f64>, f64) {
    let mut phi: Vec<f64> = start.iter().map(|&a| wrap_angle(a)).collect();
    let mut step = 0.5;
    let (mut fval, mut grad) = obj.value_sq_grad(&phi);
    let mut gnorm = grad.iter().map(|g| g * g).sum::<f64>().sqrt();
    for _ in 0..opts.max_iters {
        if gnorm < opts.grad_tol || step < 1e-16 {
            break;
        }
        let trial: Vec<f64> =
            phi.iter().zip(&grad).map(|(&p, &g)| wrap_angle(p + step * g)).collect();
        let (ftrial, gtrial) = obj.value_sq_grad(&trial);
        if ftrial > fval {
            phi = trial;
            fval = ftrial;
            grad = gtrial;
            gnorm = grad.iter().map(|g| g * g).sum::<f64>().sqrt();
            step *= 1.3;
        } else {
            step *= 0.5;
        }
    }
    (fval.sqrt(), phi, gnorm)
}

fn thread_pool() -> rayon::ThreadPool {
    let threads = std::env::var("NMQC_THREADS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
        .unwrap_or(0);
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .expect("thread pool construction")
}

fn round12(x: f64) -> f64 {
    (x * 1e12).round() / 1e12
}

/// Multi-start maximization of `G(phi)` over the torus. The seed set
/// contains every corner `phi in {0, pi}^n` (evaluated exactly via the
/// signed transform, which makes the estimate at least the classical
/// bound), the best corners as ascent starts, and seeded random starts.
pub fn quantum_bound(b: &BellFunctional, opts: &QuantumOptions) -> BoundsReport {
    let n = b.arity();
    let obj = Objective::new(b);
    let (classical, corner_arg) = classical_bound_with_argmax(b);

    // corner values: |T_b| at phi = pi * b, all 2^n of them (n is small
    // for every supported surface; beyond 16 bits sample the corners)
    let corner_phi = |bmask: usize| -> Vec<f64> {
        (0..n).map(|k| if bmask >> k & 1 == 1 { PI } else { 0.0 }).collect()
    };
    let mut corner_order: Vec<(f64, usize)> = if n <= 16 {
        let t = correlator_transform(b.beta(), n);
        t.iter().enumerate().map(|(i, v)| (ratio_to_f64(&v.abs()), i)).collect()
    } else {
        let mut rng = ChaCha12Rng::seed_from_u64(opts.seed ^ 0x9e3779b97f4a7c15);
        (0..4096)
            .map(|_| {
                let bmask = rng.gen::<usize>() & ((1 << n) - 1);
                (obj.value(&corner_phi(bmask)), bmask)
            })
            .collect()
    };
    corner_order.sort_by(|a, b| b.0.partial_cmp(&a.0).unwrap().then(a.1.cmp(&b.1)));

    let mut starts: Vec<Vec<f64>> = corner_order
        .iter()
        .take(opts.corner_ascents.max(1))
        .map(|&(_, bmask)| corner_phi(bmask))
        .collect();
    let mut rng = ChaCha12Rng::seed_from_u64(opts.seed);
    for _ in 0..opts.restarts {
        starts.push((0..n).map(|_| rng.gen_range(-PI..PI)).collect());
    }

    let results: Vec<(f64, Vec<f64>, f64)> =
        thread_pool().install(|| starts.par_iter().map(|s| ascend(&obj, s, opts)).collect());

    // deterministic merge: best value, ties by lexicographically smallest
    // rounded angle vector; the exact corner value is the floor
    let mut best_val = ratio_to_f64(&classical);
    let mut best_phi = corner_phi(corner_arg);
    let mut best_gnorm = 0.0;
    for (val, phi, gnorm) in results {
        let better = val > best_val
            || (val == best_val
                && phi.iter().map(|&a| round12(a)).collect::<Vec<_>>()
                    < best_phi.iter().map(|&a| round12(a)).collect::<Vec<_>>());
        if better {
            best_val = val;
            best_phi = phi;
            best_gnorm = gnorm;
        }
    }
    BoundsReport {
        classical,
        quantum: best_val,
        restarts: starts.len(),
        argmax_angles: best_phi,
        grad_norm: best_gnorm,
    }
}

/// Factorized objective for the n-tuple AND functional:
/// `|2^n prod_k cos(phi_k / 2) - 2 e^(i sum_k phi_k / 2)| / 2^n`.
pub fn gn_product_objective(phi: &[f64], n: usize) -> Result<f64> {
    if phi.len() != n {
        return Err(Error::DimensionMismatch(format!("{} angles for n = {n}", phi.len())));
    }
    let scale = (1u64 << n) as f64;
    let prod: f64 = phi.iter().map(|&p| (p / 2.0).cos()).product();
    let half_sum: f64 = phi.iter().sum::<f64>() / 2.0;
    let z = Complex64::new(scale * prod, 0.0) - 2.0 * Complex64::from_polar(1.0, half_sum);
    Ok(z.norm() / scale)
}

/// The triangle-argument window: `cos(pi / 2n) > 1 - 2^(2-n)`, the exact
/// condition under which the n-tuple AND game could beat the trivial
/// strategy.
pub fn appendix_c_window(n: usize) -> Result<bool> {
    if n < 2 {
        return Err(Error::OutOfRange(format!("window requires n >= 2, got {n}")));
    }
    Ok((PI / (2.0 * n as f64)).cos() > 1.0 - 2f64.powi(2 - n as i32))
}
