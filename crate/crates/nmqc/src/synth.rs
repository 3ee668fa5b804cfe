//! Deterministic protocol synthesis, preprocessing-matrix equivalence, and
//! the exact feasibility decision for a given site budget.

use crate::bitstring::BitString;
use crate::boolfn::BooleanFunction;
use crate::dyadic::Dyadic;
use crate::error::{Error, Result};
use crate::gf2::{complete_to_basis, Gf2Matrix};
use crate::lattice::{left_kernel_basis, solve_row_lattice, solve_rational, IntMatrix};
use crate::sim::GhzResource;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;
use serde_json::{json, Value};

/// A non-adaptive protocol: preprocessing matrix, per-site measurement
/// angles (exact multiples of pi in (-1, 1]) and the post-processing bit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Protocol {
    n: usize,
    matrix: Gf2Matrix,
    angles: Vec<Dyadic>,
    post_bit: u8,
}

impl Protocol {
    /// Zero rows (sites whose setting never varies) are deleted here.
    pub fn new(n: usize, matrix: Gf2Matrix, angles: Vec<Dyadic>, post_bit: u8) -> Result<Self> {
        if matrix.cols() != n {
            return Err(Error::DimensionMismatch(format!(
                "matrix has {} columns, expected arity {n}",
                matrix.cols()
            )));
        }
        if matrix.rows() != angles.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} rows but {} angles",
                matrix.rows(),
                angles.len()
            )));
        }
        if post_bit > 1 {
            return Err(Error::InvalidArgument("post bit must be 0 or 1".into()));
        }
        let mut masks = Vec::new();
        let mut kept = Vec::new();
        for (i, &m) in matrix.row_masks().iter().enumerate() {
            if m != 0 {
                masks.push(m);
                kept.push(angles[i].reduce_mod2());
            }
        }
        Ok(Protocol {
            n,
            matrix: Gf2Matrix::from_row_masks(masks, n),
            angles: kept,
            post_bit,
        })
    }

    pub fn arity(&self) -> usize {
        self.n
    }

    pub fn sites(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &Gf2Matrix {
        &self.matrix
    }

    pub fn angles(&self) -> &[Dyadic] {
        &self.angles
    }

    /// Angles in radians (derived view; the dyadic multiples are authoritative).
    pub fn angles_radians(&self) -> Vec<f64> {
        self.angles.iter().map(|a| a.to_f64() * std::f64::consts::PI).collect()
    }

    pub fn post_bit(&self) -> u8 {
        self.post_bit
    }

    pub fn settings(&self, x: &BitString) -> Result<BitString> {
        self.matrix.mul_vec(x)
    }

    /// `sum_j (-1)^(u_j) s_j(x) theta_j` as an exact multiple of pi;
    /// `flips = None` is the standard GHZ orientation (all signs +1).
    pub fn phase_multiple(&self, x: &BitString, flips: Option<&BitString>) -> Result<Dyadic> {
        if self.sites() == 0 {
            // constant functions synthesize to the empty protocol
            return Ok(Dyadic::zero());
        }
        let s = self.settings(x)?;
        if let Some(u) = flips {
            if u.len() != self.sites() {
                return Err(Error::DimensionMismatch(format!(
                    "flip pattern length {} does not match {} sites",
                    u.len(),
                    self.sites()
                )));
            }
        }
        let mut acc = Dyadic::zero();
        for j in 0..self.sites() {
            if s.bits()[j] == 1 {
                let sign_flip = flips.map(|u| u.bits()[j] == 1).unwrap_or(false);
                let term = if sign_flip { -&self.angles[j] } else { self.angles[j].clone() };
                acc = &acc + &term;
            }
        }
        Ok(acc)
    }

    pub fn to_json(&self) -> Value {
        let p: Vec<Vec<u8>> = (0..self.sites()).map(|i| self.matrix.row_bits(i)).collect();
        let angles: Vec<Value> = self
            .angles
            .iter()
            .map(|a| {
                json!({
                    "num": a.numerator().to_string().parse::<i64>().expect("angle numerator fits in i64"),
                    "den_pow2": a.exponent(),
                })
            })
            .collect();
        json!({
            "n": self.n,
            "sites": self.sites(),
            "P": p,
            "angles": angles,
            "post_bit": self.post_bit,
        })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let n = v
            .get("n")
            .and_then(Value::as_u64)
            .ok_or_else(|| Error::Json("missing integer field 'n'".into()))? as usize;
        let rows = v
            .get("P")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Json("missing array field 'P'".into()))?
            .iter()
            .map(|row| {
                row.as_array()
                    .ok_or_else(|| Error::Json("'P' rows must be arrays".into()))?
                    .iter()
                    .map(|e| {
                        e.as_u64()
                            .filter(|&b| b <= 1)
                            .map(|b| b as u8)
                            .ok_or_else(|| Error::Json("'P' entries must be 0 or 1".into()))
                    })
                    .collect::<Result<Vec<u8>>>()
            })
            .collect::<Result<Vec<Vec<u8>>>>()?;
        let angles = v
            .get("angles")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Json("missing array field 'angles'".into()))?
            .iter()
            .map(|a| {
                let num = a
                    .get("num")
                    .and_then(Value::as_i64)
                    .ok_or_else(|| Error::Json("angle missing integer 'num'".into()))?;
                let exp = a
                    .get("den_pow2")
                    .and_then(Value::as_u64)
                    .ok_or_else(|| Error::Json("angle missing integer 'den_pow2'".into()))?;
                Ok(Dyadic::new(num, exp as u32))
            })
            .collect::<Result<Vec<Dyadic>>>()?;
        let post_bit = v
            .get("post_bit")
            .and_then(Value::as_u64)
            .filter(|&b| b <= 1)
            .ok_or_else(|| Error::Json("missing bit field 'post_bit'".into()))? as u8;
        Protocol::new(n, Gf2Matrix::new(rows, n)?, angles, post_bit)
    }
}

/// `s = (P x) mod 2`.
pub fn apply_preprocessing(p: &Gf2Matrix, x: &BitString) -> Result<BitString> {
    p.mul_vec(x)
}

/// Build the deterministic protocol of the parity-basis construction:
/// one site per nonzero `a` whose coefficient is not an even integer, with
/// angle `pi * theta_a`.
pub fn synthesize_protocol(f: &BooleanFunction) -> Protocol {
    let n = f.arity();
    let dec = f.parity_decomposition();
    let mut masks = Vec::new();
    let mut angles = Vec::new();
    for a in 1..(1u64 << n) {
        let theta = dec.theta_by_index(a as usize);
        if !theta.is_even_integer() {
            masks.push(a);
            angles.push(theta.reduce_mod2());
        }
    }
    let post_bit = f.eval_index(0);
    Protocol::new(n, Gf2Matrix::from_row_masks(masks, n), angles, post_bit)
        .expect("construction is dimensionally consistent")
}

/// Exact determinism check against the standard GHZ orientation: for every
/// input, the accumulated phase multiple minus `f(x)` minus the post bit
/// must be an even integer.
pub fn verify_deterministic(p: &Protocol, f: &BooleanFunction) -> Result<bool> {
    verify_deterministic_on(p, None, f)
}

/// Determinism check for a GHZ-family resource with the given flip pattern.
pub fn verify_deterministic_on(
    p: &Protocol,
    flips: Option<&BitString>,
    f: &BooleanFunction,
) -> Result<bool> {
    if p.arity() != f.arity() {
        return Err(Error::ArityMismatch { expected: f.arity(), got: p.arity() });
    }
    for xi in 0..(1usize << f.arity()) {
        let x = BitString::from_index(xi, f.arity());
        let phase = p.phase_multiple(&x, flips)?;
        let target = Dyadic::from_int(f.eval_index(xi) as i64 + p.post_bit() as i64);
        if !(&phase - &target).is_even_integer() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Replace `P` by `P M` for an invertible `M` in the stabilizer of `f`.
pub fn apply_equivalence(p: &Gf2Matrix, m: &Gf2Matrix, f: &BooleanFunction) -> Result<Gf2Matrix> {
    if m.rows() != f.arity() || m.cols() != f.arity() {
        return Err(Error::DimensionMismatch("M must be n-by-n".into()));
    }
    if !m.is_invertible() {
        return Err(Error::Equivalence("M is not invertible".into()));
    }
    for xi in 0..(1u64 << f.arity()) {
        let mapped = m.mul_mask(xi) as usize;
        if f.eval_index(mapped) != f.eval_index(xi as usize) {
            return Err(Error::Equivalence(format!(
                "M is not in the stabilizer of f: differs at x index {xi}"
            )));
        }
    }
    p.matmul(m)
}

fn distinct_nonzero_rows(p: &Gf2Matrix) -> Vec<u64> {
    let mut rows: Vec<u64> = p.row_masks().iter().copied().filter(|&r| r != 0).collect();
    rows.sort_unstable();
    rows.dedup();
    rows
}

/// Canonicalize `P` under stabilizer equivalence: merge duplicate rows, drop
/// zero rows, and, when some nonzero string is missing from the rows and the
/// corresponding basis change fixes `f`, remove the all-ones row.
pub fn canonicalize_p(p: &Gf2Matrix, f: &BooleanFunction) -> Result<(Gf2Matrix, Gf2Matrix)> {
    let n = f.arity();
    if p.cols() != n {
        return Err(Error::DimensionMismatch(format!(
            "P has {} columns, expected arity {n}",
            p.cols()
        )));
    }
    let rows = distinct_nonzero_rows(p);
    let base = Gf2Matrix::from_row_masks(rows.clone(), n);
    let identity = Gf2Matrix::identity(n);
    if !base.has_all_ones_row() || rows.len() == (1usize << n) - 1 {
        return Ok((base, identity));
    }
    let present: std::collections::HashSet<u64> = rows.iter().copied().collect();
    let ones = (1u64 << n) - 1;
    for w in 1..(1u64 << n) {
        if present.contains(&w) {
            continue;
        }
        // M = C1^-1 C2 sends the missing row w to the all-ones string:
        // w C1^-1 = e_1, and e_1 C2 is the first basis row (the ones string).
        let c1 = complete_to_basis(w, n);
        let c2 = complete_to_basis(ones, n);
        let m = c1.inverse()?.matmul(&c2)?;
        if let Ok(mapped) = apply_equivalence(&base, &m, f) {
            debug_assert!(!mapped.has_all_ones_row());
            return Ok((mapped, m));
        }
    }
    // no stabilizer element removes the all-ones row; leave P as-is
    Ok((base, identity))
}

/// The alternating sum `v_j = sum_x (-1)^(W(x)) (P x)_j`; zero for every
/// row with a zero entry, nonzero only for all-ones rows.
pub fn alternating_sum_certificate(p: &Gf2Matrix) -> Vec<i64> {
    let n = p.cols();
    let mut v = vec![0i64; p.rows()];
    for x in 0..(1u64 << n) {
        let sign = if x.count_ones() & 1 == 1 { -1 } else { 1 };
        let s = p.mul_mask(x);
        for (j, vj) in v.iter_mut().enumerate() {
            *vj += sign * ((s >> j) & 1) as i64;
        }
    }
    v
}

/// Why a feasibility decision came out negative.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Certificate {
    /// Every row has a zero entry, so the alternating sum over settings
    /// vanishes, while the alternating sum over `f` values is odd.
    AlternatingSum { sum: BigInt },
    /// Integer left-kernel evidence, one entry per post bit choice.
    Lattice { witnesses: [LatticeWitness; 2] },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LatticeWitness {
    /// A left-kernel vector `r` of the settings matrix with `r . b` odd.
    OddPairing(Vec<BigInt>),
    /// All pairings even, but `-(R b)/2` is outside the image lattice;
    /// carries `R b`.
    Membership(Vec<BigInt>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FeasibilityVerdict {
    Feasible { witness: Protocol },
    Infeasible { certificate: Certificate },
}

impl FeasibilityVerdict {
    pub fn is_feasible(&self) -> bool {
        matches!(self, FeasibilityVerdict::Feasible { .. })
    }

    pub fn witness(&self) -> Option<&Protocol> {
        match self {
            FeasibilityVerdict::Feasible { witness } => Some(witness),
            FeasibilityVerdict::Infeasible { .. } => None,
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            FeasibilityVerdict::Feasible { witness } => {
                json!({"status": "feasible", "witness": witness.to_json()})
            }
            FeasibilityVerdict::Infeasible { certificate } => {
                let cert = match certificate {
                    Certificate::AlternatingSum { sum } => {
                        json!({"kind": "alternating_sum", "sum": sum.to_string()})
                    }
                    Certificate::Lattice { witnesses } => {
                        let w: Vec<Value> = witnesses
                            .iter()
                            .map(|lw| match lw {
                                LatticeWitness::OddPairing(r) => json!({
                                    "reason": "odd_pairing",
                                    "t": r.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
                                }),
                                LatticeWitness::Membership(y) => json!({
                                    "reason": "lattice_membership",
                                    "t": y.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
                                }),
                            })
                            .collect();
                        json!({"kind": "lattice", "witnesses": w})
                    }
                };
                json!({"status": "infeasible", "certificate": cert})
            }
        }
    }
}

/// Decide whether real measurement angles and a post bit exist making the
/// protocol with preprocessing `P` compute `f` deterministically.
///
/// The settings matrix `A` (inputs by sites, entries 0/1) admits angles for
/// post bit `c` iff `A u = b + 2 t` has a rational solution `u` with integer
/// `t`, where `b = f + c` over the integers. This is decided exactly on the
/// left-kernel lattice of `A`: every pairing `R b` must be even and
/// `-(R b)/2` must lie in the image lattice `R Z^(2^n)`.
pub fn decide_feasibility(f: &BooleanFunction, p: &Gf2Matrix) -> Result<FeasibilityVerdict> {
    let n = f.arity();
    if p.cols() != n {
        return Err(Error::DimensionMismatch(format!(
            "P has {} columns, expected arity {n}",
            p.cols()
        )));
    }
    let rows = distinct_nonzero_rows(p);
    let p_distinct = Gf2Matrix::from_row_masks(rows.clone(), n);
    let m = rows.len();
    let big_n = 1usize << n;

    let a: IntMatrix = (0..big_n)
        .map(|x| {
            let s = p_distinct.mul_mask(x as u64);
            (0..m).map(|j| BigInt::from((s >> j) & 1)).collect()
        })
        .collect();
    let kernel = left_kernel_basis(&a);
    let kernel_t: IntMatrix = if kernel.is_empty() {
        vec![Vec::new(); big_n]
    } else {
        (0..big_n).map(|j| kernel.iter().map(|r| r[j].clone()).collect()).collect()
    };

    let mut lattice_witnesses: Vec<LatticeWitness> = Vec::new();
    for c in 0..=1u8 {
        let b: Vec<BigInt> =
            (0..big_n).map(|x| BigInt::from(f.eval_index(x) + c)).collect();
        let y: Vec<BigInt> = kernel
            .iter()
            .map(|r| r.iter().zip(&b).map(|(ri, bi)| ri * bi).sum())
            .collect();
        if let Some(i) = y.iter().position(|v| v.is_odd()) {
            lattice_witnesses.push(LatticeWitness::OddPairing(kernel[i].clone()));
            continue;
        }
        let target: Vec<BigInt> = y.iter().map(|v| -(v / BigInt::from(2))).collect();
        let t = match solve_row_lattice(&kernel_t, &target) {
            Some(t) => t,
            None => {
                lattice_witnesses.push(LatticeWitness::Membership(y));
                continue;
            }
        };
        let rhs: Vec<BigInt> = b.iter().zip(&t).map(|(bi, ti)| bi + 2 * ti).collect();
        let u = solve_rational(&a, &rhs)
            .expect("kernel conditions hold, so the rational system is consistent");
        // clear the odd part of the common denominator: scaling by an odd
        // integer preserves the mod-2 condition and makes the angles dyadic
        let mut odd_part = BigInt::one();
        for ui in &u {
            let mut den = ui.denom().clone();
            while den.is_even() {
                den /= 2;
            }
            odd_part = odd_part.lcm(&den);
        }
        let angles: Vec<Dyadic> = u
            .iter()
            .map(|ui| {
                let scaled = ui * BigInt::from(odd_part.clone());
                Dyadic::try_from_rational(&scaled)
                    .expect("odd-part scaling leaves a dyadic denominator")
                    .reduce_mod2()
            })
            .collect();
        let witness = Protocol::new(n, p_distinct.clone(), angles, c)?;
        debug_assert!(verify_deterministic(&witness, f)?);
        return Ok(FeasibilityVerdict::Feasible { witness });
    }

    // infeasible for both post bits; prefer the alternating-sum form when
    // the Appendix-style argument applies
    let v = alternating_sum_certificate(&p_distinct);
    if v.iter().all(|&vj| vj == 0) {
        let sum: BigInt = (0..big_n)
            .map(|x| {
                let sign: i64 = if (x as u64).count_ones() & 1 == 1 { -1 } else { 1 };
                BigInt::from(sign * f.eval_index(x) as i64)
            })
            .sum();
        if sum.is_odd() {
            return Ok(FeasibilityVerdict::Infeasible {
                certificate: Certificate::AlternatingSum { sum },
            });
        }
    }
    let w1 = lattice_witnesses.pop().expect("two post-bit branches recorded");
    let w0 = lattice_witnesses.pop().expect("two post-bit branches recorded");
    Ok(FeasibilityVerdict::Infeasible {
        certificate: Certificate::Lattice { witnesses: [w0, w1] },
    })
}

#[derive(Debug, Clone)]
pub struct SearchOptions {
    /// Hard cap on the number of row subsets examined.
    pub max_subsets: usize,
    /// Prune subsets equivalent under input-coordinate permutations; only
    /// applied when `f` is symmetric under all such permutations.
    pub symmetry_pruning: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions { max_subsets: 1 << 22, symmetry_pruning: true }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchOutcome {
    Found { sites: usize, protocol: Protocol },
    Exhausted,
}

fn is_symmetric(f: &BooleanFunction) -> bool {
    let n = f.arity();
    for i in 0..n {
        for j in (i + 1)..n {
            for x in 0..(1usize << n) {
                let bi = (x >> i) & 1;
                let bj = (x >> j) & 1;
                if bi != bj {
                    let y = x ^ (1 << i) ^ (1 << j);
                    if f.eval_index(x) != f.eval_index(y) {
                        return false;
                    }
                }
            }
        }
    }
    true
}

fn permute_mask(mask: u64, perm: &[usize]) -> u64 {
    let mut out = 0u64;
    for (from, &to) in perm.iter().enumerate() {
        out |= ((mask >> from) & 1) << to;
    }
    out
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut result = vec![vec![]];
    for _ in 0..n {
        let mut next = Vec::new();
        for p in &result {
            for slot in 0..=p.len() {
                let mut q = p.clone();
                q.insert(slot, p.len());
                next.push(q);
            }
        }
        result = next;
    }
    result
}

fn canonical_subset(subset: &[u64], perms: &[Vec<usize>]) -> Vec<u64> {
    let mut best: Option<Vec<u64>> = None;
    for perm in perms {
        let mut mapped: Vec<u64> = subset.iter().map(|&m| permute_mask(m, perm)).collect();
        mapped.sort_unstable();
        if best.as_ref().map(|b| mapped < *b).unwrap_or(true) {
            best = Some(mapped);
        }
    }
    best.unwrap()
}

/// Smallest site count `<= m_max` at which `f` is deterministically
/// computable, with a witness protocol, enumerating subsets of distinct
/// nonzero preprocessing rows in deterministic order.
pub fn minimal_sites_search(
    f: &BooleanFunction,
    m_max: usize,
    opts: &SearchOptions,
) -> Result<SearchOutcome> {
    let n = f.arity();
    let all_rows: Vec<u64> = (1..(1u64 << n)).collect();
    if m_max > all_rows.len() {
        return Err(Error::OutOfRange(format!(
            "m_max {m_max} exceeds the {} distinct nonzero rows",
            all_rows.len()
        )));
    }
    let prune = opts.symmetry_pruning && n <= 5 && is_symmetric(f);
    let perms = if prune { permutations(n) } else { Vec::new() };
    let mut examined = 0usize;
    let mut seen: std::collections::HashSet<Vec<u64>> = std::collections::HashSet::new();

    for m in 1..=m_max {
        let mut indices: Vec<usize> = (0..m).collect();
        loop {
            let subset: Vec<u64> = indices.iter().map(|&i| all_rows[i]).collect();
            let try_subset = if prune {
                seen.insert(canonical_subset(&subset, &perms))
            } else {
                true
            };
            if try_subset {
                examined += 1;
                if examined > opts.max_subsets {
                    return Ok(SearchOutcome::Exhausted);
                }
                let p = Gf2Matrix::from_row_masks(subset, n);
                if let FeasibilityVerdict::Feasible { witness } = decide_feasibility(f, &p)? {
                    return Ok(SearchOutcome::Found { sites: m, protocol: witness });
                }
            }
            // next lexicographic combination
            let mut i = m;
            loop {
                if i == 0 {
                    break;
                }
                i -= 1;
                if indices[i] != i + all_rows.len() - m {
                    indices[i] += 1;
                    for j in (i + 1)..m {
                        indices[j] = indices[j - 1] + 1;
                    }
                    break;
                }
                if i == 0 {
                    indices.clear();
                    break;
                }
            }
            if indices.is_empty() {
                break;
            }
        }
    }
    Ok(SearchOutcome::Exhausted)
}

/// The `(n+1)`-site protocol computing the pairwise AND function: identity
/// rows plus the all-ones row, every angle pi/2, on the GHZ-family state
/// with flip pattern `0^n 1`.
pub fn build_pairwise_and_protocol(n: usize) -> Result<(Protocol, GhzResource)> {
    if n < 2 {
        return Err(Error::OutOfRange(format!("pairwise AND needs n >= 2, got {n}")));
    }
    let mut masks: Vec<u64> = (0..n).map(|j| 1u64 << j).collect();
    masks.push((1u64 << n) - 1);
    let angles = vec![Dyadic::new(1, 1); n + 1];
    let protocol = Protocol::new(n, Gf2Matrix::from_row_masks(masks, n), angles, 0)?;
    let mut flip = vec![0u8; n + 1];
    flip[n] = 1;
    let resource = GhzResource::new(n + 1, BitString::new(flip)?, 0.0)?;
    Ok((protocol, resource))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boolfn::parse_anf;

    fn and2() -> BooleanFunction {
        BooleanFunction::new(2, vec![0, 0, 0, 1]).unwrap()
    }

    fn and3() -> BooleanFunction {
        let table = (0..8).map(|x| u8::from(x == 7)).collect();
        BooleanFunction::new(3, table).unwrap()
    }

    #[test]
    fn synthesis_of_and2_matches_closed_form() {
        let p = synthesize_protocol(&and2());
        assert_eq!(p.sites(), 3);
        assert_eq!(p.matrix().row_masks(), &[1, 2, 3]);
        assert_eq!(
            p.angles(),
            &[Dyadic::new(1, 1), Dyadic::new(1, 1), Dyadic::new(-1, 1)]
        );
        assert_eq!(p.post_bit(), 0);
        assert!(verify_deterministic(&p, &and2()).unwrap());
    }

    #[test]
    fn synthesis_of_and3_uses_all_seven_rows() {
        let p = synthesize_protocol(&and3());
        assert_eq!(p.sites(), 7);
        for (i, &mask) in p.matrix().row_masks().iter().enumerate() {
            let expect = if mask.count_ones() & 1 == 1 { 1 } else { -1 };
            assert_eq!(p.angles()[i], Dyadic::new(expect, 2), "row {mask}");
        }
        assert!(verify_deterministic(&p, &and3()).unwrap());
    }

    #[test]
    fn synthesis_of_linear_functions_is_trivially_deterministic() {
        // x1 xor x3 has a single parity term, no quarter angles
        let f = parse_anf("x1 + x3", 3).unwrap();
        let p = synthesize_protocol(&f);
        assert_eq!(p.sites(), 1);
        assert_eq!(p.matrix().row_masks(), &[0b101]);
        assert!(p.angles()[0].is_odd_integer());
        assert!(verify_deterministic(&p, &f).unwrap());
    }

    #[test]
    fn verification_rejects_the_wrong_function() {
        let p = synthesize_protocol(&and2());
        let or2 = BooleanFunction::new(2, vec![0, 1, 1, 1]).unwrap();
        assert!(!verify_deterministic(&p, &or2).unwrap());
    }

    #[test]
    fn equivalence_requires_invertible_stabilizer() {
        let p = synthesize_protocol(&and2());
        let singular = Gf2Matrix::new(vec![vec![1, 1], vec![1, 1]], 2).unwrap();
        assert!(matches!(
            apply_equivalence(p.matrix(), &singular, &and2()),
            Err(Error::Equivalence(_))
        ));
        // the swap fixes AND; P's row set is preserved as a set
        let swap = Gf2Matrix::new(vec![vec![0, 1], vec![1, 0]], 2).unwrap();
        let q = apply_equivalence(p.matrix(), &swap, &and2()).unwrap();
        let mut rows = q.row_masks().to_vec();
        rows.sort_unstable();
        assert_eq!(rows, vec![1, 2, 3]);
        // x1 -> x1 xor x2 does not fix AND
        let shear = Gf2Matrix::new(vec![vec![1, 1], vec![0, 1]], 2).unwrap();
        assert!(apply_equivalence(p.matrix(), &shear, &and2()).is_err());
    }

    #[test]
    fn canonicalization_merges_rows_and_strips_ones_row_when_possible() {
        // f = x1 ignores x2, so the all-ones row can be rotated away
        let f = parse_anf("x1", 2).unwrap();
        let p = Gf2Matrix::from_row_masks(vec![3, 3, 0], 2);
        let (q, m) = canonicalize_p(&p, &f).unwrap();
        assert_eq!(q.rows(), 1);
        assert!(!q.has_all_ones_row());
        let base = Gf2Matrix::from_row_masks(vec![3], 2);
        assert_eq!(apply_equivalence(&base, &m, &f).unwrap().row_masks(), q.row_masks());
    }

    #[test]
    fn canonicalization_keeps_an_essential_ones_row() {
        // parity needs its single site on x1 xor x2; no stabilizer removes it
        let f = parse_anf("x1 + x2", 2).unwrap();
        let p = Gf2Matrix::from_row_masks(vec![3], 2);
        let (q, m) = canonicalize_p(&p, &f).unwrap();
        assert_eq!(q.row_masks(), &[3]);
        assert_eq!(m, Gf2Matrix::identity(2));
    }

    #[test]
    fn alternating_sum_examples() {
        let p = Gf2Matrix::from_row_masks(vec![3], 2);
        assert_eq!(alternating_sum_certificate(&p), vec![-2]);
        let p = Gf2Matrix::from_row_masks(vec![1, 2], 2);
        assert_eq!(alternating_sum_certificate(&p), vec![0, 0]);
        let p = Gf2Matrix::from_row_masks(vec![7], 3);
        assert_eq!(alternating_sum_certificate(&p), vec![-4]);
    }

    #[test]
    fn and2_feasibility_matches_the_published_budget() {
        let f = and2();
        for rows in [vec![1], vec![1, 2], vec![1, 3], vec![2, 3]] {
            let p = Gf2Matrix::from_row_masks(rows.clone(), 2);
            let verdict = decide_feasibility(&f, &p).unwrap();
            assert!(!verdict.is_feasible(), "rows {rows:?} should be infeasible");
        }
        let p = Gf2Matrix::from_row_masks(vec![1, 2, 3], 2);
        let verdict = decide_feasibility(&f, &p).unwrap();
        let w = verdict.witness().expect("three rows suffice");
        assert!(verify_deterministic(w, &f).unwrap());
    }

    #[test]
    fn feasibility_survives_duplicate_and_zero_rows() {
        let f = and2();
        let p = Gf2Matrix::from_row_masks(vec![1, 1, 0, 2, 3, 3], 2);
        let verdict = decide_feasibility(&f, &p).unwrap();
        assert!(verdict.is_feasible());
        assert_eq!(verdict.witness().unwrap().sites(), 3);
    }

    #[test]
    fn infeasible_ones_row_gets_alternating_sum_certificate() {
        // h_2 = AND on the two-site matrix without the ones row: both rows
        // have zero entries and the f alternating sum is odd
        let f = and2();
        let p = Gf2Matrix::from_row_masks(vec![1, 2], 2);
        match decide_feasibility(&f, &p).unwrap() {
            FeasibilityVerdict::Infeasible {
                certificate: Certificate::AlternatingSum { sum },
            } => assert!(sum.is_odd()),
            other => panic!("expected alternating-sum certificate, got {other:?}"),
        }
    }

    #[test]
    fn minimal_search_finds_published_minima() {
        let opts = SearchOptions::default();
        match minimal_sites_search(&and2(), 3, &opts).unwrap() {
            SearchOutcome::Found { sites, protocol } => {
                assert_eq!(sites, 3);
                assert!(verify_deterministic(&protocol, &and2()).unwrap());
            }
            SearchOutcome::Exhausted => panic!("AND on two bits is feasible at 3 sites"),
        }
        match minimal_sites_search(&and3(), 7, &opts).unwrap() {
            SearchOutcome::Found { sites, .. } => assert_eq!(sites, 7),
            SearchOutcome::Exhausted => panic!("AND on three bits is feasible at 7 sites"),
        }
    }

    #[test]
    fn search_respects_the_subset_cap() {
        let opts = SearchOptions { max_subsets: 1, symmetry_pruning: false };
        assert_eq!(minimal_sites_search(&and2(), 3, &opts).unwrap(), SearchOutcome::Exhausted);
    }

    #[test]
    fn pairwise_and_protocol_is_deterministic_on_the_flipped_state() {
        for n in 2..=5usize {
            let h = crate::families::make_family(crate::families::FamilySpec {
                kind: crate::families::FamilyKind::H,
                n,
            })
            .unwrap();
            let (p, r) = build_pairwise_and_protocol(n).unwrap();
            assert_eq!(p.sites(), n + 1);
            assert!(verify_deterministic_on(&p, Some(r.flip_pattern()), &h).unwrap());
            // and it is *not* deterministic on the standard orientation
            assert!(!verify_deterministic(&p, &h).unwrap());
        }
        assert!(build_pairwise_and_protocol(1).is_err());
    }

    #[test]
    fn protocol_json_round_trip() {
        let p = synthesize_protocol(&and3());
        let v = p.to_json();
        let q = Protocol::from_json(&v).unwrap();
        assert_eq!(p, q);
        assert!(Protocol::from_json(&json!({"n": 2})).is_err());
    }
}
