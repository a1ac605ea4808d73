//! The weight-preserving ring isomorphism
//! φ: R[x]/(x^n − 1) → R[x]/(x^n − α), f(x) ↦ f(α₀x), with α₀^{p^s} = α^{-1}.

use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::code::{unflatten, Code};
use crate::error::{param, Error, Result};
use crate::field::{FieldElement, FieldParams};
use crate::limits::Limits;
use crate::quotient::{QuotientParams, QuotientPoly};
use crate::ring::RuElement;

/// Largest R_1 (in elements) the exhaustive check will walk.
pub const EXHAUSTIVE_CAP: u64 = 1 << 20;
/// Pair count below which every sum f + g is checked in exhaustive mode.
const ALL_PAIRS_CAP: u64 = 1 << 22;

/// Writes s = q·m + r (0 ≤ r < m) and returns (q, r, α₀) with
/// α₀ = α^{-p^{m-r}}. Fails if the defining identity α₀^{p^s}·α = 1 does
/// not hold.
pub fn alpha0_decomposition(field: &FieldParams, s: u32, alpha: FieldElement) -> Result<(u32, u32, FieldElement)> {
    if alpha.is_zero() || !field.contains(&alpha) {
        return param("alpha must be a nonzero element of the coefficient field");
    }
    let m = field.degree() as u32;
    let (alpha_q, alpha_r) = (s / m, s % m);
    let p = field.characteristic() as i64;
    let exponent = p.pow(m - alpha_r);
    let alpha0 = field.pow(alpha, -exponent)?;

    // p^s can be large; iterate the Frobenius instead of forming it.
    let mut check = alpha0;
    for _ in 0..s {
        check = field.pow(check, p)?;
    }
    if !field.mul(check, alpha).is_one() {
        return Err(Error::Internal(format!(
            "alpha0 = {alpha0} fails alpha0^(p^s) * alpha = 1"
        )));
    }
    Ok((alpha_q, alpha_r, alpha0))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IsometryContext {
    pub source: QuotientParams,
    pub target: QuotientParams,
    pub alpha0: FieldElement,
    pub alpha_q: u32,
    pub alpha_r: u32,
}

impl IsometryContext {
    /// φ from the cyclic ring onto `target`.
    pub fn new(target: &QuotientParams) -> Result<Self> {
        let (alpha_q, alpha_r, alpha0) = alpha0_decomposition(target.field(), target.s(), target.alpha())?;
        Ok(IsometryContext {
            source: target.cyclic(),
            target: target.clone(),
            alpha0,
            alpha_q,
            alpha_r,
        })
    }

    fn scaled(&self, f: &QuotientPoly, step: FieldElement, into: &QuotientParams) -> QuotientPoly {
        let field = self.source.field();
        let ring = self.source.ring();
        let mut power = field.one();
        let coeffs: Vec<RuElement> = f
            .coeffs()
            .iter()
            .map(|&c| {
                let out = ring.scale(power, c);
                power = field.mul(power, step);
                out
            })
            .collect();
        into.poly(&coeffs).expect("length preserved")
    }

    /// φ(f): c_j ↦ c_j·α₀^j. No reduction is needed since deg f < n.
    pub fn apply(&self, f: &QuotientPoly) -> Result<QuotientPoly> {
        if !self.source.contains(f) {
            return param("polynomial does not belong to the cyclic source ring");
        }
        Ok(self.scaled(f, self.alpha0, &self.target))
    }

    /// φ^{-1}(g): c_j ↦ c_j·α₀^{-j}.
    pub fn invert(&self, g: &QuotientPoly) -> Result<QuotientPoly> {
        if !self.target.contains(g) {
            return param("polynomial does not belong to the target ring");
        }
        let inv = self.source.field().inv(self.alpha0)?;
        Ok(self.scaled(g, inv, &self.source))
    }

    /// Image of a cyclic code; the result is re-canonicalised and its
    /// ideal property re-checked in the target ring.
    pub fn map_code(&self, code: &Code) -> Result<Code> {
        if code.params() != &self.source {
            return param("code does not live in the cyclic source ring");
        }
        let images = code
            .basis()
            .iter()
            .map(|row| self.apply(&unflatten(&self.source, row)))
            .collect::<Result<Vec<_>>>()?;
        let image = Code::from_codewords(&self.target, &images, None);
        if image.dim() != code.dim() || !image.is_ideal() {
            return Err(Error::Internal("isometric image is not an ideal of the same dimension".into()));
        }
        Ok(image)
    }

    pub fn check(&self, mode: CheckMode, seed: u64) -> Result<IsometryReport> {
        let mut report = IsometryReport {
            mode,
            seed,
            ..IsometryReport::default()
        };
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        match mode {
            CheckMode::Exhaustive { product_pairs } => {
                let order = self.source.ring().order();
                let size = order
                    .checked_pow(self.source.n() as u32)
                    .filter(|&s| s <= EXHAUSTIVE_CAP)
                    .ok_or(Error::Resource {
                        what: "exhaustive isometry check",
                        required_bits: self.source.order_bits(),
                        cap_bits: (EXHAUSTIVE_CAP as f64).log2(),
                    })?;
                let all: Vec<QuotientPoly> = self.source.elements().collect();
                let images = all.iter().map(|f| self.apply(f)).collect::<Result<Vec<_>>>()?;
                self.check_elements(&all, &images, &mut report)?;
                if size * size <= ALL_PAIRS_CAP {
                    for (f, pf) in all.iter().zip(&images) {
                        for (g, pg) in all.iter().zip(&images) {
                            self.check_sum(f, g, pf, pg, &mut report)?;
                        }
                    }
                } else {
                    for _ in 0..product_pairs {
                        let a = rng.gen_range(0..all.len());
                        let b = rng.gen_range(0..all.len());
                        self.check_sum(&all[a], &all[b], &images[a], &images[b], &mut report)?;
                    }
                }
                for _ in 0..product_pairs {
                    let a = rng.gen_range(0..all.len());
                    let b = rng.gen_range(0..all.len());
                    self.check_product(&all[a], &all[b], &images[a], &images[b], &mut report)?;
                }
            }
            CheckMode::Randomized { samples } => {
                let mut sampled = Vec::with_capacity(samples as usize);
                for _ in 0..samples {
                    sampled.push(random_poly(&self.source, &mut rng));
                }
                let images = sampled.iter().map(|f| self.apply(f)).collect::<Result<Vec<_>>>()?;
                self.check_elements(&sampled, &images, &mut report)?;
                for k in 0..sampled.len() {
                    let j = rng.gen_range(0..sampled.len());
                    self.check_sum(&sampled[k], &sampled[j], &images[k], &images[j], &mut report)?;
                    self.check_product(&sampled[k], &sampled[j], &images[k], &images[j], &mut report)?;
                }
            }
        }
        Ok(report)
    }

    fn check_elements(&self, all: &[QuotientPoly], images: &[QuotientPoly], report: &mut IsometryReport) -> Result<()> {
        let sources: HashSet<&QuotientPoly> = all.iter().collect();
        let targets: HashSet<&QuotientPoly> = images.iter().collect();
        report.injectivity_checks += all.len() as u64;
        if sources.len() != targets.len() {
            report.injectivity_failures += (sources.len() - targets.len().min(sources.len())) as u64;
        }
        for (f, image) in all.iter().zip(images) {
            report.weight_checks += 1;
            if f.weight() != image.weight() {
                report.weight_failures += 1;
            }
            report.inverse_checks += 1;
            if &self.invert(image)? != f {
                report.inverse_failures += 1;
            }
        }
        Ok(())
    }

    fn check_sum(&self, f: &QuotientPoly, g: &QuotientPoly, pf: &QuotientPoly, pg: &QuotientPoly, report: &mut IsometryReport) -> Result<()> {
        report.additivity_checks += 1;
        if self.apply(&self.source.add(f, g))? != self.target.add(pf, pg) {
            report.additivity_failures += 1;
        }
        Ok(())
    }

    fn check_product(&self, f: &QuotientPoly, g: &QuotientPoly, pf: &QuotientPoly, pg: &QuotientPoly, report: &mut IsometryReport) -> Result<()> {
        report.multiplicativity_checks += 1;
        if self.apply(&self.source.mul(f, g))? != self.target.mul(pf, pg) {
            report.multiplicativity_failures += 1;
        }
        Ok(())
    }
}

/// Uniform element of R_α.
pub fn random_poly(params: &QuotientParams, rng: &mut impl Rng) -> QuotientPoly {
    let field = params.field();
    let q = field.order();
    let mut draw = || field.from_index(rng.gen_range(0..q));
    let a: Vec<_> = (0..params.n()).map(|_| draw()).collect();
    let b: Vec<_> = (0..params.n()).map(|_| draw()).collect();
    params.from_parts(&a, &b).expect("length n")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "mode", rename_all = "lowercase")]
pub enum CheckMode {
    /// Every element of R_1; sums over all pairs when that is small,
    /// otherwise seeded pairs; `product_pairs` seeded products.
    Exhaustive { product_pairs: u64 },
    /// `samples` seeded elements, one seeded partner each.
    Randomized { samples: u64 },
}

impl Default for CheckMode {
    fn default() -> Self {
        CheckMode::Randomized { samples: 10_000 }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct IsometryReport {
    pub mode: CheckMode,
    pub seed: u64,
    pub additivity_checks: u64,
    pub additivity_failures: u64,
    pub multiplicativity_checks: u64,
    pub multiplicativity_failures: u64,
    pub injectivity_checks: u64,
    pub injectivity_failures: u64,
    pub weight_checks: u64,
    pub weight_failures: u64,
    pub inverse_checks: u64,
    pub inverse_failures: u64,
}

impl IsometryReport {
    pub fn failures(&self) -> u64 {
        self.additivity_failures
            + self.multiplicativity_failures
            + self.injectivity_failures
            + self.weight_failures
            + self.inverse_failures
    }
}

/// Weight histograms of a cyclic code and of its image, for comparison.
pub fn compare_histograms(ctx: &IsometryContext, code: &Code, limits: &Limits) -> Result<bool> {
    let image = ctx.map_code(code)?;
    Ok(code.weight_distribution(limits)? == image.weight_distribution(limits)?)
}
