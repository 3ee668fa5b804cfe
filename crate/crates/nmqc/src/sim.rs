//! Measurement statistics: exact GHZ-family correlators, a statevector
//! oracle for cross-validation, run sampling, and non-signalling boxes.

use crate::bitstring::BitString;
use crate::boolfn::BooleanFunction;
use crate::bounds::PriorDistribution;
use crate::error::{Error, Result};
use crate::synth::Protocol;
use num_complex::Complex64;
use num_traits::ToPrimitive;
use rand::Rng;
use serde_json::{json, Value};

/// GHZ-family state `(|u> + e^(i gamma) |u-bar>)/sqrt(2)`.
#[derive(Debug, Clone, PartialEq)]
pub struct GhzResource {
    qubits: usize,
    flip: BitString,
    phase: f64,
}

impl GhzResource {
    pub fn new(qubits: usize, flip: BitString, phase: f64) -> Result<Self> {
        if flip.len() != qubits {
            return Err(Error::DimensionMismatch(format!(
                "flip pattern length {} does not match {qubits} qubits",
                flip.len()
            )));
        }
        Ok(GhzResource { qubits, flip, phase })
    }

    /// The standard GHZ state `(|0...0> + |1...1>)/sqrt(2)`.
    pub fn standard(qubits: usize) -> Self {
        GhzResource {
            qubits,
            flip: BitString::new(vec![0; qubits]).expect("positive length"),
            phase: 0.0,
        }
    }

    pub fn qubits(&self) -> usize {
        self.qubits
    }

    pub fn flip_pattern(&self) -> &BitString {
        &self.flip
    }

    pub fn phase(&self) -> f64 {
        self.phase
    }

    /// Full amplitude vector; only for oracle-scale qubit counts.
    pub fn statevector(&self) -> Vec<Complex64> {
        let dim = 1usize << self.qubits;
        let mut v = vec![Complex64::new(0.0, 0.0); dim];
        let u = self.flip.index();
        let ubar = u ^ (dim - 1);
        let amp = 1.0 / 2f64.sqrt();
        v[u] = Complex64::new(amp, 0.0);
        v[ubar] = Complex64::from_polar(amp, self.phase);
        v
    }

    /// The signed angle sum `sum_j (-1)^(u_j) alpha_j - gamma` that all
    /// parity statistics depend on.
    fn signed_angle_sum(&self, setting: &MeasurementSetting) -> Result<f64> {
        if setting.len() != self.qubits {
            return Err(Error::DimensionMismatch(format!(
                "{} angles for {} qubits",
                setting.len(),
                self.qubits
            )));
        }
        let mut acc = -self.phase;
        for (j, &a) in setting.angles().iter().enumerate() {
            if self.flip.bits()[j] == 1 {
                acc -= a;
            } else {
                acc += a;
            }
        }
        Ok(acc)
    }

    pub fn to_json(&self) -> Value {
        json!({"type": "ghz", "N": self.qubits, "flip": self.flip.bits(), "phase": self.phase})
    }
}

/// One angle per site; site `j` measures `cos(a_j) X + sin(a_j) Y`, so a
/// 0 setting is always an X measurement.
#[derive(Debug, Clone, PartialEq)]
pub struct MeasurementSetting {
    angles: Vec<f64>,
}

impl MeasurementSetting {
    pub fn new(angles: Vec<f64>) -> Self {
        MeasurementSetting { angles }
    }

    /// Settings induced by a protocol at input `x`: `alpha_j = s_j phi_j`.
    pub fn from_protocol(p: &Protocol, x: &BitString) -> Result<Self> {
        let s = p.settings(x)?;
        let phis = p.angles_radians();
        let angles = s
            .bits()
            .iter()
            .zip(&phis)
            .map(|(&sj, &phi)| if sj == 1 { phi } else { 0.0 })
            .collect();
        Ok(MeasurementSetting { angles })
    }

    pub fn len(&self) -> usize {
        self.angles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.angles.is_empty()
    }

    pub fn angles(&self) -> &[f64] {
        &self.angles
    }
}

/// Non-signalling box: outcome parity always equals `f` of the settings,
/// every proper subset of outputs uniformly distributed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NsBoxResource {
    f: BooleanFunction,
}

impl NsBoxResource {
    pub fn new(f: BooleanFunction) -> Self {
        NsBoxResource { f }
    }

    pub fn sites(&self) -> usize {
        self.f.arity()
    }

    pub fn target(&self) -> &BooleanFunction {
        &self.f
    }

    pub fn to_json(&self) -> Value {
        json!({"type": "nsbox", "f": self.f.to_json()})
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Resource {
    Ghz(GhzResource),
    NsBox(NsBoxResource),
}

impl Resource {
    pub fn sites(&self) -> usize {
        match self {
            Resource::Ghz(g) => g.qubits(),
            Resource::NsBox(b) => b.sites(),
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            Resource::Ghz(g) => g.to_json(),
            Resource::NsBox(b) => b.to_json(),
        }
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        match v.get("type").and_then(Value::as_str) {
            Some("ghz") => {
                let n = v
                    .get("N")
                    .and_then(Value::as_u64)
                    .ok_or_else(|| Error::Json("missing integer field 'N'".into()))?
                    as usize;
                let flip = v
                    .get("flip")
                    .and_then(Value::as_array)
                    .ok_or_else(|| Error::Json("missing array field 'flip'".into()))?
                    .iter()
                    .map(|e| {
                        e.as_u64()
                            .filter(|&b| b <= 1)
                            .map(|b| b as u8)
                            .ok_or_else(|| Error::Json("flip bits must be 0 or 1".into()))
                    })
                    .collect::<Result<Vec<u8>>>()?;
                let phase = v.get("phase").and_then(Value::as_f64).unwrap_or(0.0);
                Ok(Resource::Ghz(GhzResource::new(n, BitString::new(flip)?, phase)?))
            }
            Some("nsbox") => {
                let f = v
                    .get("f")
                    .ok_or_else(|| Error::Json("missing field 'f'".into()))?;
                Ok(Resource::NsBox(NsBoxResource::new(BooleanFunction::from_json(f)?)))
            }
            _ => Err(Error::Json("resource 'type' must be 'ghz' or 'nsbox'".into())),
        }
    }
}

/// `cos(sum_j (-1)^(u_j) alpha_j - gamma)`: the expectation of the product
/// of the +-1 outcomes.
pub fn ghz_parity_expectation(r: &GhzResource, setting: &MeasurementSetting) -> Result<f64> {
    Ok(r.signed_angle_sum(setting)?.cos())
}

/// Closed-form outcome distribution
/// `p(m) = 2^-N (1 + (-1)^W(m) cos(...))`, indexed by the global order.
pub fn outcome_distribution(r: &GhzResource, setting: &MeasurementSetting) -> Result<Vec<f64>> {
    if r.qubits() > 24 {
        return Err(Error::OutOfRange(format!(
            "{} qubits exceeds the 24-qubit closed-form limit",
            r.qubits()
        )));
    }
    let corr = ghz_parity_expectation(r, setting)?;
    let dim = 1usize << r.qubits();
    let scale = 1.0 / dim as f64;
    Ok((0..dim)
        .map(|m| {
            let sign = if (m as u64).count_ones() & 1 == 1 { -1.0 } else { 1.0 };
            scale * (1.0 + sign * corr)
        })
        .collect())
}

/// Born-rule distribution for product x-y-plane measurements on an
/// arbitrary normalized state; the independent oracle for the closed form.
pub fn statevector_distribution(
    state: &[Complex64],
    setting: &MeasurementSetting,
) -> Result<Vec<f64>> {
    let dim = state.len();
    if !dim.is_power_of_two() || dim == 1 {
        return Err(Error::DimensionMismatch(format!("state length {dim} is not 2^N with N >= 1")));
    }
    let n = dim.trailing_zeros() as usize;
    if n > 14 {
        return Err(Error::OutOfRange(format!("{n} qubits exceeds the 14-qubit statevector limit")));
    }
    if setting.len() != n {
        return Err(Error::DimensionMismatch(format!("{} angles for {n} qubits", setting.len())));
    }
    let norm: f64 = state.iter().map(|a| a.norm_sqr()).sum();
    if (norm - 1.0).abs() > 1e-10 {
        return Err(Error::InvalidArgument(format!("state is not normalized: |psi|^2 = {norm}")));
    }
    // rotate each qubit into the measurement eigenbasis:
    // <v_m| = (<0| + (-1)^m e^(-i alpha) <1|)/sqrt(2)
    let mut v = state.to_vec();
    let inv_sqrt2 = 1.0 / 2f64.sqrt();
    for (j, &alpha) in setting.angles().iter().enumerate() {
        let phase = Complex64::from_polar(1.0, -alpha);
        let bit = 1usize << j;
        for idx in 0..dim {
            if idx & bit == 0 {
                let a0 = v[idx];
                let a1 = v[idx | bit] * phase;
                v[idx] = (a0 + a1) * inv_sqrt2;
                v[idx | bit] = (a0 - a1) * inv_sqrt2;
            }
        }
    }
    Ok(v.into_iter().map(|a| a.norm_sqr()).collect())
}

fn parity_success_probability(
    p: &Protocol,
    resource: &Resource,
    x: &BitString,
    target_parity: u8,
) -> Result<f64> {
    match resource {
        Resource::Ghz(g) => {
            if g.qubits() != p.sites() {
                return Err(Error::DimensionMismatch(format!(
                    "{} qubits for {} sites",
                    g.qubits(),
                    p.sites()
                )));
            }
            // exact multiple of pi for the signed angle sum; keeps the
            // deterministic case free of trig roundoff when gamma = 0
            let multiple = p.phase_multiple(x, Some(g.flip_pattern()))?;
            let corr = if g.phase() == 0.0 && multiple.is_integer() {
                if multiple.is_even_integer() {
                    1.0
                } else {
                    -1.0
                }
            } else {
                (multiple.to_f64() * std::f64::consts::PI - g.phase()).cos()
            };
            let sign = if target_parity == 1 { -1.0 } else { 1.0 };
            Ok((1.0 + sign * corr) / 2.0)
        }
        Resource::NsBox(b) => {
            if b.sites() != p.sites() {
                return Err(Error::DimensionMismatch(format!(
                    "box of {} sites for {} protocol sites",
                    b.sites(),
                    p.sites()
                )));
            }
            let s = p.settings(x)?;
            Ok(if b.target().eval(&s)? == target_parity { 1.0 } else { 0.0 })
        }
    }
}

/// Mean probability that the protocol output equals `f(x)` under prior `w`.
pub fn success_probability(
    p: &Protocol,
    resource: &Resource,
    f: &BooleanFunction,
    w: &PriorDistribution,
) -> Result<f64> {
    if p.arity() != f.arity() || w.arity() != f.arity() {
        return Err(Error::ArityMismatch { expected: f.arity(), got: p.arity() });
    }
    let mut acc = 0.0;
    for xi in 0..(1usize << f.arity()) {
        let weight = w.weight_by_index(xi);
        if weight.numer().to_f64() == Some(0.0) {
            continue;
        }
        let x = BitString::from_index(xi, f.arity());
        let target = f.eval_index(xi) ^ p.post_bit();
        let ps = parity_success_probability(p, resource, &x, target)?;
        let wf = weight.numer().to_f64().unwrap_or(f64::NAN)
            / weight.denom().to_f64().unwrap_or(f64::NAN);
        acc += wf * ps;
    }
    Ok(acc)
}

/// Uniform-prior success of a protocol on a GHZ-family resource computed
/// entirely through the statevector oracle; cross-validates the closed form.
pub fn success_probability_statevector(
    p: &Protocol,
    resource: &GhzResource,
    f: &BooleanFunction,
) -> Result<f64> {
    if p.arity() != f.arity() {
        return Err(Error::ArityMismatch { expected: f.arity(), got: p.arity() });
    }
    if resource.qubits() != p.sites() {
        return Err(Error::DimensionMismatch(format!(
            "{} qubits for {} sites",
            resource.qubits(),
            p.sites()
        )));
    }
    let state = resource.statevector();
    let dim = 1usize << f.arity();
    let mut acc = 0.0;
    for xi in 0..dim {
        let x = BitString::from_index(xi, f.arity());
        let setting = MeasurementSetting::from_protocol(p, &x)?;
        let dist = statevector_distribution(&state, &setting)?;
        let target = f.eval_index(xi) ^ p.post_bit();
        let hit: f64 = dist
            .iter()
            .enumerate()
            .filter(|(m, _)| (m.count_ones() & 1) as u8 == target)
            .map(|(_, pr)| pr)
            .sum();
        acc += hit;
    }
    Ok(acc / dim as f64)
}

/// One seeded run at input `x`: outcome bits and the post-processed output.
pub fn sample_run<R: Rng>(
    p: &Protocol,
    resource: &Resource,
    x: &BitString,
    rng: &mut R,
) -> Result<(BitString, u8)> {
    let sites = p.sites();
    if sites == 0 {
        return Err(Error::InvalidArgument("protocol has no sites to sample".into()));
    }
    let parity = match resource {
        Resource::Ghz(g) => {
            if g.qubits() != sites {
                return Err(Error::DimensionMismatch(format!(
                    "{} qubits for {sites} sites",
                    g.qubits()
                )));
            }
            let p_odd = parity_success_probability(p, resource, x, 1)?;
            u8::from(rng.gen::<f64>() < p_odd)
        }
        Resource::NsBox(b) => b.target().eval(&p.settings(x)?)?,
    };
    // uniform within the parity class: free bits then a parity-fixing bit
    let mut bits = vec![0u8; sites];
    let mut acc = 0u8;
    for b in bits.iter_mut().take(sites - 1) {
        *b = rng.gen_range(0..2u8);
        acc ^= *b;
    }
    bits[sites - 1] = acc ^ parity;
    let m = BitString::new(bits)?;
    let out = parity ^ p.post_bit();
    Ok((m, out))
}
