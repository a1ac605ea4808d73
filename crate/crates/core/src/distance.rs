//! Closed-form minimum distances and the formula-versus-oracle sweep.
//!
//! The band function D(i) gives the minimum distance of ⟨(x − 1)^i⟩ in
//! F_{p^m}[x]/(x^{p^s} − 1):
//!
//! * D(0) = 1 and D(p^s) = 0;
//! * D(i) = l + 2 for l·p^{s-1} + 1 ≤ i ≤ (l + 1)·p^{s-1}, 0 ≤ l ≤ p − 2;
//! * D(i) = (t + 1)·p^k for
//!   p^s − p^{s-k} + (t − 1)·p^{s-k-1} + 1 ≤ i ≤ p^s − p^{s-k} + t·p^{s-k-1},
//!   1 ≤ t ≤ p − 1, 1 ≤ k ≤ s − 1.
//!
//! The published distances of ideals over R are D(i) for Types 2 and 3 and
//! D(ω) for Type 4. The sweep checks those values against brute force.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::code::{Code, CodeKind, CodeSpec};
use crate::error::{param, Error, Result};
use crate::field::FieldElement;
use crate::limits::Limits;
use crate::quotient::QuotientParams;

pub const DEFAULT_SEED: u64 = 0x5EED_2019;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "case", rename_all = "snake_case")]
pub enum CaseKind {
    Zero,
    UnitTrivial,
    LBand { l: u64 },
    TkBand { t: u64, k: u32 },
}

/// Which band an index falls in, and the resulting distance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct DistanceCase {
    #[serde(flatten)]
    pub kind: CaseKind,
    pub value: u64,
}

impl DistanceCase {
    pub fn label(&self) -> String {
        match self.kind {
            CaseKind::Zero => "i=p^s".to_string(),
            CaseKind::UnitTrivial => "i=0".to_string(),
            CaseKind::LBand { l } => format!("l={l}"),
            CaseKind::TkBand { t, k } => format!("t={t},k={k}"),
        }
    }
}

/// Every case whose defining condition holds at `i`. The bands partition
/// [0, p^s], so a well-formed (p, s, i) matches exactly one.
pub fn matching_cases(p: u64, s: u32, i: u64) -> Vec<DistanceCase> {
    let n = p.pow(s);
    let mut out = Vec::new();
    if i == 0 {
        out.push(DistanceCase {
            kind: CaseKind::UnitTrivial,
            value: 1,
        });
    }
    if i == n {
        out.push(DistanceCase {
            kind: CaseKind::Zero,
            value: 0,
        });
    }
    let top = p.pow(s - 1);
    for l in 0..=p - 2 {
        if l * top < i && i <= (l + 1) * top {
            out.push(DistanceCase {
                kind: CaseKind::LBand { l },
                value: l + 2,
            });
        }
    }
    for k in 1..s {
        let outer = p.pow(s - k);
        let inner = p.pow(s - k - 1);
        for t in 1..p {
            let lo = n - outer + (t - 1) * inner + 1;
            let hi = n - outer + t * inner;
            if lo <= i && i <= hi {
                out.push(DistanceCase {
                    kind: CaseKind::TkBand { t, k },
                    value: (t + 1) * p.pow(k),
                });
            }
        }
    }
    out
}

/// D(i) with its matched band.
pub fn torsion_distance_formula(p: u64, s: u32, i: u64) -> Result<DistanceCase> {
    if p < 2 || s == 0 {
        return param(format!("need p >= 2 and s >= 1 (got p = {p}, s = {s})"));
    }
    let n = p
        .checked_pow(s)
        .ok_or_else(|| Error::Parameter(format!("{p}^{s} overflows")))?;
    if i > n {
        return param(format!("index i = {i} is outside [0, p^s] = [0, {n}]"));
    }
    match matching_cases(p, s, i).as_slice() {
        [case] => Ok(*case),
        cases => Err(Error::Internal(format!("{} bands match i = {i}", cases.len()))),
    }
}

fn band(params: &QuotientParams, i: usize) -> Result<u64> {
    let p = params.field().characteristic() as u64;
    Ok(torsion_distance_formula(p, params.s(), i as u64)?.value)
}

/// The published minimum distance of a spec: 0 and 1 for the trivial
/// ideals, D(i) for Types 2 and 3, D(ω) for Type 4. Identical for every
/// constant α.
pub fn spec_distance_formula(spec: &CodeSpec) -> Result<u64> {
    let spec = spec.clone().validated()?;
    match spec.kind {
        CodeKind::Zero => Ok(0),
        CodeKind::Unit => Ok(1),
        CodeKind::Type2 | CodeKind::Type3 => band(&spec.params, spec.i),
        CodeKind::Type4 => band(&spec.params, spec.omega),
    }
}

/// Smallest e with u·b^e in the ideal, i.e. the torsion code is ⟨b^e⟩.
///
/// For ⟨b^i + u b^t h⟩ with h a unit, (b^{n-i})·g = u b^{n-i+t} h, so
/// e = min(i, n − i + t); adding u b^ω lowers it to min(ω, n − i + t).
pub fn torsion_exponent(spec: &CodeSpec) -> Result<usize> {
    let spec = spec.clone().validated()?;
    let n = spec.params.n();
    let h_zero = spec.h_is_zero();
    Ok(match spec.kind {
        CodeKind::Zero => n,
        CodeKind::Unit => 0,
        CodeKind::Type2 => spec.i,
        CodeKind::Type3 if h_zero => spec.i,
        CodeKind::Type3 => spec.i.min(n - spec.i + spec.t),
        CodeKind::Type4 if h_zero => spec.omega,
        CodeKind::Type4 => spec.omega.min(n - spec.i + spec.t),
    })
}

/// D(torsion exponent). Every codeword a + ub has u·(a + ub) = ua of no
/// larger weight, so the minimum is attained on u·(torsion code).
pub fn torsion_exponent_distance(spec: &CodeSpec) -> Result<u64> {
    let e = torsion_exponent(spec)?;
    let value = band(&spec.params, e)?;
    // D(0) = 1 already; D(n) = 0 only for the zero ideal
    Ok(value)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    Match,
    Mismatch,
    Skipped,
}

impl Outcome {
    pub fn as_str(&self) -> &'static str {
        match self {
            Outcome::Match => "true",
            Outcome::Mismatch => "false",
            Outcome::Skipped => "skipped",
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepEntry {
    pub spec: CodeSpec,
    pub dim: usize,
    pub formula: u64,
    pub oracle: Option<u64>,
    pub torsion_exponent: usize,
    pub torsion_exponent_distance: u64,
    pub outcome: Outcome,
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepReport {
    pub params: QuotientParams,
    pub seed: u64,
    pub enum_cap: u64,
    pub total: usize,
    pub checked: usize,
    pub matches: usize,
    pub mismatches: usize,
    pub skipped: usize,
    /// Type 3 specs with i ≥ p, outside the range 1 ≤ i ≤ p − 1 that the
    /// Type 3 formula is stated for, and how many of them mismatch.
    pub type3_beyond_small_index: usize,
    pub type3_beyond_small_index_mismatches: usize,
    pub entries: Vec<SweepEntry>,
}

impl SweepReport {
    pub fn all_match(&self) -> bool {
        self.mismatches == 0
    }

    pub fn in_cap_fraction(&self) -> f64 {
        if self.total == 0 {
            1.0
        } else {
            self.checked as f64 / self.total as f64
        }
    }

    pub fn mismatched(&self) -> impl Iterator<Item = &SweepEntry> {
        self.entries.iter().filter(|e| e.outcome == Outcome::Mismatch)
    }
}

fn spec_seed(seed: u64, kind: CodeKind, i: usize, t: usize, omega: usize) -> u64 {
    let tag = (kind as u64) << 60 | (i as u64) << 40 | (t as u64) << 20 | omega as u64;
    seed ^ tag.wrapping_mul(0x9E37_79B9_7F4A_7C15)
}

/// A seeded unit of R_α in F_{p^m}[x] of degree at most `max_deg`.
pub fn random_unit(params: &QuotientParams, max_deg: usize, seed: u64) -> Vec<FieldElement> {
    let field = params.field();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let h: Vec<_> = (0..=max_deg)
            .map(|_| field.from_index(rng.gen_range(0..field.order())))
            .collect();
        let candidate = CodeSpec::raw(params.clone(), CodeKind::Type3, params.n() - 1, 0, 0, h);
        if let Ok(spec) = candidate.validated() {
            if !spec.h.is_empty() {
                return spec.h;
            }
        }
    }
}

/// Every spec the sweep visits, deduplicated and in canonical order.
///
/// Types 1 and 2 in full. For Type 3, each i with h = 0 (t is inert then,
/// fixed to 0) and, for each t < i, h = 1 and one seeded unit of degree
/// ≤ i − t − 1. For Type 4, each 0 < ω < i with h = 0, and for each t < ω,
/// h = 1 and one seeded unit of degree ≤ ω − t − 1.
pub fn sweep_specs(params: &QuotientParams, seed: u64) -> Vec<CodeSpec> {
    let n = params.n();
    let one = vec![params.field().one()];
    let mut specs = vec![CodeSpec::zero(params.clone()), CodeSpec::unit(params.clone())];
    for i in 0..n {
        specs.push(CodeSpec::raw(params.clone(), CodeKind::Type2, i, 0, 0, vec![]));
    }
    for i in 1..n {
        specs.push(CodeSpec::raw(params.clone(), CodeKind::Type3, i, 0, 0, vec![]));
        for t in 0..i {
            specs.push(CodeSpec::raw(params.clone(), CodeKind::Type3, i, t, 0, one.clone()));
            let h = random_unit(params, i - t - 1, spec_seed(seed, CodeKind::Type3, i, t, 0));
            specs.push(CodeSpec::raw(params.clone(), CodeKind::Type3, i, t, 0, h));
        }
        for omega in 1..i {
            specs.push(CodeSpec::raw(params.clone(), CodeKind::Type4, i, 0, omega, vec![]));
            for t in 0..omega {
                specs.push(CodeSpec::raw(params.clone(), CodeKind::Type4, i, t, omega, one.clone()));
                let h = random_unit(params, omega - t - 1, spec_seed(seed, CodeKind::Type4, i, t, omega));
                specs.push(CodeSpec::raw(params.clone(), CodeKind::Type4, i, t, omega, h));
            }
        }
    }
    let mut seen = BTreeSet::new();
    let mut out: Vec<CodeSpec> = specs
        .into_iter()
        .filter_map(|s| s.validated().ok())
        .filter(|s| seen.insert(s.sort_key()))
        .collect();
    out.sort_by_key(CodeSpec::sort_key);
    out
}

/// Evaluates one spec: published formula, torsion-exponent value, and the
/// brute-force oracle when the code fits the enumeration cap.
pub fn evaluate_spec(spec: &CodeSpec, limits: &Limits) -> Result<SweepEntry> {
    let code = Code::span(spec)?;
    let formula = spec_distance_formula(spec)?;
    let oracle = match code.min_distance_oracle(limits) {
        Ok(d) => Some(d as u64),
        Err(Error::Resource { .. }) => None,
        Err(e) => return Err(e),
    };
    let outcome = match oracle {
        None => Outcome::Skipped,
        Some(d) if d == formula => Outcome::Match,
        Some(_) => Outcome::Mismatch,
    };
    Ok(SweepEntry {
        spec: spec.clone(),
        dim: code.dim(),
        formula,
        oracle,
        torsion_exponent: torsion_exponent(spec)?,
        torsion_exponent_distance: torsion_exponent_distance(spec)?,
        outcome,
    })
}

/// Compares the published formula with the oracle on every sweep spec.
pub fn verify_sweep(params: &QuotientParams, limits: &Limits, seed: u64) -> Result<SweepReport> {
    let specs = sweep_specs(params, seed);
    let entries = specs
        .par_iter()
        .map(|spec| evaluate_spec(spec, limits))
        .collect::<Result<Vec<_>>>()?;
    let count = |o: Outcome| entries.iter().filter(|e| e.outcome == o).count();
    let p = params.field().characteristic() as usize;
    let beyond: Vec<_> = entries
        .iter()
        .filter(|e| e.spec.kind == CodeKind::Type3 && e.spec.i >= p)
        .collect();
    Ok(SweepReport {
        params: params.clone(),
        seed,
        enum_cap: limits.enum_cap,
        total: entries.len(),
        checked: entries.len() - count(Outcome::Skipped),
        matches: count(Outcome::Match),
        mismatches: count(Outcome::Mismatch),
        skipped: count(Outcome::Skipped),
        type3_beyond_small_index: beyond.len(),
        type3_beyond_small_index_mismatches: beyond.iter().filter(|e| e.outcome == Outcome::Mismatch).count(),
        entries,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TableRow {
    pub i: u64,
    #[serde(flatten)]
    pub case: DistanceCase,
}

/// D(i) for every i in [0, p^s].
pub fn distance_table(p: u64, s: u32) -> Result<Vec<TableRow>> {
    let n = p
        .checked_pow(s)
        .ok_or_else(|| Error::Parameter(format!("{p}^{s} overflows")))?;
    (0..=n)
        .map(|i| Ok(TableRow { i, case: torsion_distance_formula(p, s, i)? }))
        .collect()
}
