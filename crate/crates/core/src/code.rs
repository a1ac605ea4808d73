//! Ideals of R_α: the four-type classification, their F_{p^m}-linear
//! closures, and brute-force analysis (enumeration, minimum distance,
//! weight distribution, dual).
//!
//! Everything in the brute-force half works on the flattened image of R_α
//! in F_{p^m}^{2n} (residue coordinates, then u-coordinates) and never
//! consults the distance formulas.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::error::{Error, Result};
use crate::field::{ElementInput, FieldElement, FieldParams};
use crate::limits::{bits, checked_pow_under, Limits};
use crate::linalg::RowSpace;
use crate::quotient::{QuotientParams, QuotientPoly};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CodeKind {
    /// ⟨0⟩
    #[serde(rename = "zero", alias = "type1_zero", alias = "type1zero")]
    Zero,
    /// ⟨1⟩
    #[serde(rename = "unit", alias = "type1_unit", alias = "type1unit")]
    Unit,
    /// ⟨u b^i⟩
    #[serde(rename = "type2")]
    Type2,
    /// ⟨b^i + u b^t h⟩
    #[serde(rename = "type3")]
    Type3,
    /// ⟨b^i + u b^t h, u b^ω⟩
    #[serde(rename = "type4")]
    Type4,
}

impl fmt::Display for CodeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            CodeKind::Zero => "zero",
            CodeKind::Unit => "unit",
            CodeKind::Type2 => "type2",
            CodeKind::Type3 => "type3",
            CodeKind::Type4 => "type4",
        };
        f.write_str(s)
    }
}

/// A violated constraint of the ideal classification.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SpecError {
    #[error("type2 requires 0 <= i <= p^s - 1 = {max} (got i = {i})")]
    Type2Index { i: usize, max: usize },
    #[error("{kind} requires 1 <= i <= p^s - 1 = {max} (got i = {i})")]
    MonicIndex { kind: CodeKind, i: usize, max: usize },
    #[error("{kind} requires 0 <= t < i (got t = {t}, i = {i})")]
    ShiftRange { kind: CodeKind, t: usize, i: usize },
    #[error("h must be 0 or a unit of R_alpha")]
    HNotUnit,
    #[error("h has {len} coefficients, at most p^s = {n} allowed")]
    HTooLong { len: usize, n: usize },
    #[error("h coefficients belong to a different field")]
    HField,
    #[error("type4 requires 0 < omega < i (got omega = {omega}, i = {i}); otherwise the ideal is principal")]
    OmegaRange { omega: usize, i: usize },
    #[error("type4 requires deg(h) <= omega - t - 1 (got deg(h) = {deg}, omega = {omega}, t = {t})")]
    HDegree { deg: usize, omega: usize, t: usize },
}

/// Descriptor of one ideal of R_α, with b = α₀x − 1:
/// Type 2 ⟨u b^i⟩, Type 3 ⟨b^i + u b^t h⟩, Type 4 ⟨b^i + u b^t h, u b^ω⟩.
///
/// `h` has coefficients in F_{p^m}; an empty `h` is the zero polynomial.
/// Fields a kind does not use are normalised to zero by validation.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CodeSpec {
    pub kind: CodeKind,
    pub i: usize,
    pub t: usize,
    pub omega: usize,
    pub h: Vec<FieldElement>,
    pub params: QuotientParams,
}

impl CodeSpec {
    /// An unvalidated spec.
    pub fn raw(params: QuotientParams, kind: CodeKind, i: usize, t: usize, omega: usize, h: Vec<FieldElement>) -> Self {
        CodeSpec {
            kind,
            i,
            t,
            omega,
            h,
            params,
        }
    }

    pub fn zero(params: QuotientParams) -> Self {
        Self::raw(params, CodeKind::Zero, 0, 0, 0, Vec::new())
    }

    pub fn unit(params: QuotientParams) -> Self {
        Self::raw(params, CodeKind::Unit, 0, 0, 0, Vec::new())
    }

    pub fn type2(params: QuotientParams, i: usize) -> std::result::Result<Self, SpecError> {
        Self::raw(params, CodeKind::Type2, i, 0, 0, Vec::new()).validated()
    }

    pub fn type3(params: QuotientParams, i: usize, t: usize, h: Vec<FieldElement>) -> std::result::Result<Self, SpecError> {
        Self::raw(params, CodeKind::Type3, i, t, 0, h).validated()
    }

    pub fn type4(
        params: QuotientParams,
        i: usize,
        t: usize,
        h: Vec<FieldElement>,
        omega: usize,
    ) -> std::result::Result<Self, SpecError> {
        Self::raw(params, CodeKind::Type4, i, t, omega, h).validated()
    }

    /// Whether h is the zero polynomial.
    pub fn h_is_zero(&self) -> bool {
        self.h.iter().all(FieldElement::is_zero)
    }

    /// Checks every range and unit constraint and normalises unused fields.
    pub fn validated(mut self) -> std::result::Result<Self, SpecError> {
        let n = self.params.n();
        let field = self.params.field().clone();
        if !self.h.iter().all(|c| field.contains(c)) {
            return Err(SpecError::HField);
        }
        while self.h.last().is_some_and(FieldElement::is_zero) {
            self.h.pop();
        }
        match self.kind {
            CodeKind::Zero | CodeKind::Unit => {
                self.i = 0;
                self.t = 0;
                self.omega = 0;
                self.h.clear();
            }
            CodeKind::Type2 => {
                if self.i > n - 1 {
                    return Err(SpecError::Type2Index { i: self.i, max: n - 1 });
                }
                self.t = 0;
                self.omega = 0;
                self.h.clear();
            }
            CodeKind::Type3 | CodeKind::Type4 => {
                if self.i < 1 || self.i > n - 1 {
                    return Err(SpecError::MonicIndex {
                        kind: self.kind,
                        i: self.i,
                        max: n - 1,
                    });
                }
                if self.t >= self.i {
                    return Err(SpecError::ShiftRange {
                        kind: self.kind,
                        t: self.t,
                        i: self.i,
                    });
                }
                if self.h.len() > n {
                    return Err(SpecError::HTooLong { len: self.h.len(), n });
                }
                if !self.h.is_empty() && !h_is_unit(&self.params, &self.h) {
                    return Err(SpecError::HNotUnit);
                }
                if self.kind == CodeKind::Type4 {
                    if self.omega < 1 || self.omega >= self.i {
                        return Err(SpecError::OmegaRange {
                            omega: self.omega,
                            i: self.i,
                        });
                    }
                    if !self.h.is_empty() && self.h.len() - 1 + self.t + 1 > self.omega {
                        return Err(SpecError::HDegree {
                            deg: self.h.len() - 1,
                            omega: self.omega,
                            t: self.t,
                        });
                    }
                } else {
                    self.omega = 0;
                }
            }
        }
        Ok(self)
    }

    /// Generator polynomials; `b = α₀x − 1` (x − 1 when α = 1).
    pub fn generators(&self) -> Result<Vec<QuotientPoly>> {
        let spec = self.clone().validated()?;
        let q = &spec.params;
        let base = q.adic_base();
        let u = q.constant(q.ring().u());
        let monic = |spec: &CodeSpec| -> Result<QuotientPoly> {
            let h = q.from_parts(&spec.h, &[])?;
            let tail = q.mul(&u, &q.mul(&q.pow(&base, spec.t as u64), &h));
            Ok(q.add(&q.pow(&base, spec.i as u64), &tail))
        };
        Ok(match spec.kind {
            CodeKind::Zero => vec![q.zero()],
            CodeKind::Unit => vec![q.one()],
            CodeKind::Type2 => vec![q.mul(&u, &q.pow(&base, spec.i as u64))],
            CodeKind::Type3 => vec![monic(&spec)?],
            CodeKind::Type4 => vec![monic(&spec)?, q.mul(&u, &q.pow(&base, spec.omega as u64))],
        })
    }

    /// Stable ordering used for reports.
    pub fn sort_key(&self) -> (CodeKind, usize, usize, usize, Vec<Vec<u32>>) {
        (
            self.kind,
            self.i,
            self.t,
            self.omega,
            self.h.iter().map(FieldElement::to_vec).collect(),
        )
    }

    /// h rendered as a JSON-style coefficient array.
    pub fn h_label(&self) -> String {
        let parts: Vec<String> = self
            .h
            .iter()
            .map(|c| match ElementInput::from_element(c) {
                ElementInput::Scalar(v) => v.to_string(),
                ElementInput::Coeffs(v) => format!("{v:?}").replace(' ', ""),
            })
            .collect();
        format!("[{}]", parts.join(","))
    }
}

impl fmt::Display for CodeSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            CodeKind::Zero => write!(f, "<0>"),
            CodeKind::Unit => write!(f, "<1>"),
            CodeKind::Type2 => write!(f, "<u b^{}>", self.i),
            CodeKind::Type3 => write!(f, "<b^{} + u b^{} h>, h = {}", self.i, self.t, self.h_label()),
            CodeKind::Type4 => write!(
                f,
                "<b^{} + u b^{} h, u b^{}>, h = {}",
                self.i,
                self.t,
                self.omega,
                self.h_label()
            ),
        }
    }
}

/// h is a unit of R_α iff its constant adic coordinate is nonzero, i.e.
/// h(α₀^{-1}) ≠ 0.
fn h_is_unit(params: &QuotientParams, h: &[FieldElement]) -> bool {
    let field = params.field();
    let Ok(point) = field.inv(params.alpha0()) else {
        return false;
    };
    let value = h.iter().rev().fold(field.zero(), |acc, &c| field.add(field.mul(acc, point), c));
    !value.is_zero()
}

/// JSON form: `{"p":2,"m":1,"s":2,"alpha":[1],"kind":"type3","i":3,"t":1,"h":[1]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawCodeSpec {
    pub p: u32,
    pub m: usize,
    pub s: u32,
    pub alpha: ElementInput,
    pub kind: CodeKind,
    #[serde(default)]
    pub i: usize,
    #[serde(default)]
    pub t: usize,
    #[serde(default)]
    pub omega: usize,
    #[serde(default)]
    pub h: Vec<ElementInput>,
}

impl RawCodeSpec {
    pub fn into_spec(self, limits: &Limits) -> Result<CodeSpec> {
        let field = FieldParams::with_limits(self.p, self.m, limits)?;
        let alpha = self.alpha.resolve(&field)?;
        let params = QuotientParams::with_limits(field.clone(), self.s, alpha, limits)?;
        let h = self
            .h
            .iter()
            .map(|c| c.resolve(&field))
            .collect::<Result<Vec<_>>>()?;
        Ok(CodeSpec::raw(params, self.kind, self.i, self.t, self.omega, h).validated()?)
    }
}

impl From<&CodeSpec> for RawCodeSpec {
    fn from(spec: &CodeSpec) -> Self {
        let field = spec.params.field();
        RawCodeSpec {
            p: field.characteristic(),
            m: field.degree(),
            s: spec.params.s(),
            alpha: ElementInput::Coeffs(spec.params.alpha().to_vec()),
            kind: spec.kind,
            i: spec.i,
            t: spec.t,
            omega: spec.omega,
            h: spec.h.iter().map(ElementInput::from_element).collect(),
        }
    }
}

impl Serialize for CodeSpec {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        RawCodeSpec::from(self).serialize(serializer)
    }
}

/// An ideal of R_α as an F_{p^m}-subspace of F_{p^m}^{2n}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Code {
    params: QuotientParams,
    spec: Option<CodeSpec>,
    space: RowSpace,
}

#[derive(Serialize)]
struct CodeExport<'a> {
    params: &'a QuotientParams,
    spec: &'a Option<CodeSpec>,
    dim: usize,
    basis: &'a [Vec<FieldElement>],
}

impl Serialize for Code {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        CodeExport {
            params: &self.params,
            spec: &self.spec,
            dim: self.dim(),
            basis: self.space.rows(),
        }
        .serialize(serializer)
    }
}

/// (a_0..a_{n-1}, b_0..b_{n-1}) for a(x) + u·b(x).
pub fn flatten(f: &QuotientPoly) -> Vec<FieldElement> {
    let c = f.coeffs();
    c.iter().map(|x| x.a).chain(c.iter().map(|x| x.b)).collect()
}

pub fn unflatten(params: &QuotientParams, row: &[FieldElement]) -> QuotientPoly {
    let n = params.n();
    params
        .from_parts(&row[..n], &row[n..])
        .expect("row has width 2n over the ring's field")
}

impl Code {
    /// The ideal described by a validated spec.
    pub fn span(spec: &CodeSpec) -> Result<Code> {
        let spec = spec.clone().validated()?;
        let gens = spec.generators()?;
        let code = Code::from_generators(&spec.params, &gens, Some(spec.clone()));
        if !code.is_ideal() {
            return Err(Error::Internal(format!("span of {spec} is not an ideal")));
        }
        Ok(code)
    }

    /// F-span of {x^j g, u x^j g}, i.e. the ideal generated by `gens`.
    pub fn from_generators(params: &QuotientParams, gens: &[QuotientPoly], spec: Option<CodeSpec>) -> Code {
        let field = params.field();
        let u = params.constant(params.ring().u());
        let mut space = RowSpace::empty(2 * params.n());
        for g in gens {
            let mut cur = g.clone();
            for _ in 0..params.n() {
                space.insert(field, flatten(&cur));
                space.insert(field, flatten(&params.mul(&u, &cur)));
                cur = params.shift(&cur);
            }
        }
        Code {
            params: params.clone(),
            spec,
            space,
        }
    }

    /// Canonical code from an arbitrary spanning set of codewords.
    pub fn from_codewords(params: &QuotientParams, words: &[QuotientPoly], spec: Option<CodeSpec>) -> Code {
        let space = RowSpace::from_rows(params.field(), 2 * params.n(), words.iter().map(flatten));
        Code {
            params: params.clone(),
            spec,
            space,
        }
    }

    pub fn params(&self) -> &QuotientParams {
        &self.params
    }

    pub fn spec(&self) -> Option<&CodeSpec> {
        self.spec.as_ref()
    }

    /// F_{p^m}-dimension.
    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn basis(&self) -> &[Vec<FieldElement>] {
        self.space.rows()
    }

    pub fn basis_polys(&self) -> Vec<QuotientPoly> {
        self.space.rows().iter().map(|r| unflatten(&self.params, r)).collect()
    }

    pub fn row_space(&self) -> &RowSpace {
        &self.space
    }

    /// log_p |C| = m · dim.
    pub fn log_p_size(&self) -> usize {
        self.params.field().degree() * self.dim()
    }

    pub fn size_bits(&self) -> f64 {
        bits(self.params.field().characteristic() as u64, self.log_p_size() as u64)
    }

    pub fn contains(&self, f: &QuotientPoly) -> bool {
        self.params.contains(f) && self.space.contains(self.params.field(), &flatten(f))
    }

    /// Closure of the row space under multiplication by x and by u.
    pub fn is_ideal(&self) -> bool {
        let u = self.params.constant(self.params.ring().u());
        self.basis_polys()
            .iter()
            .all(|f| self.contains(&self.params.shift(f)) && self.contains(&self.params.mul(&u, f)))
    }

    /// Same row space (the spec labels are ignored).
    pub fn same_space(&self, other: &Code) -> bool {
        self.params == other.params && self.space == other.space
    }

    fn check_enum_cap(&self, limits: &Limits) -> Result<()> {
        let p = self.params.field().characteristic() as u64;
        match checked_pow_under(p, self.log_p_size() as u64, limits.enum_cap) {
            Some(_) => Ok(()),
            None => Err(Error::Resource {
                what: "codeword enumeration",
                required_bits: self.size_bits(),
                cap_bits: (limits.enum_cap as f64).log2(),
            }),
        }
    }

    pub fn fits_enumeration(&self, limits: &Limits) -> bool {
        self.check_enum_cap(limits).is_ok()
    }

    /// All p^{m·dim} codewords, each exactly once.
    pub fn enumerate(&self, limits: &Limits) -> Result<Codewords<'_>> {
        self.check_enum_cap(limits)?;
        let flat = FlatBasis::new(self);
        let total = (flat.p as u64).pow(flat.rows.len() as u32);
        Ok(Codewords {
            code: self,
            digits: vec![0; flat.rows.len()],
            current: vec![0; flat.width()],
            flat,
            remaining: total,
        })
    }

    /// Minimum weight over nonzero codewords; 0 for the zero code.
    pub fn min_distance_oracle(&self, limits: &Limits) -> Result<usize> {
        self.check_enum_cap(limits)?;
        if self.dim() == 0 {
            return Ok(0);
        }
        let flat = FlatBasis::new(self);
        let best = flat.fold(
            || usize::MAX,
            |best, word| {
                let w = flat.weight(word);
                if w > 0 && w < *best {
                    *best = w;
                }
            },
            |a, b| a.min(b),
        );
        Ok(best)
    }

    /// Histogram weight → number of codewords.
    pub fn weight_distribution(&self, limits: &Limits) -> Result<BTreeMap<usize, u64>> {
        self.check_enum_cap(limits)?;
        let flat = FlatBasis::new(self);
        let n = self.params.n();
        let counts = flat.fold(
            || vec![0u64; n + 1],
            |acc, word| acc[flat.weight(word)] += 1,
            |mut a, b| {
                for (x, y) in a.iter_mut().zip(b) {
                    *x += y;
                }
                a
            },
        );
        Ok(counts
            .into_iter()
            .enumerate()
            .filter(|&(_, c)| c > 0)
            .collect())
    }

    /// C^⊥ by scanning all of R^n against the basis; lives in R_{α^{-1}}.
    pub fn dual_bruteforce(&self, limits: &Limits) -> Result<Code> {
        let q = self.params.ring().order();
        let n = self.params.n() as u64;
        let total = checked_pow_under(q, n, limits.dual_cap).ok_or(Error::Resource {
            what: "dual scan",
            required_bits: self.params.order_bits(),
            cap_bits: (limits.dual_cap as f64).log2(),
        })?;
        let ring = self.params.ring();
        let field = self.params.field();
        let alpha_inv = field.inv(self.params.alpha())?;
        let dual_params = self.params.with_alpha(alpha_inv)?;
        let basis = self.basis_polys();
        let elems: Vec<_> = ring.elements().collect();

        let mut space = RowSpace::empty(2 * self.params.n());
        let mut word = vec![0usize; self.params.n()];
        for _ in 0..total {
            let orthogonal = basis.iter().all(|b| {
                b.coeffs()
                    .iter()
                    .zip(&word)
                    .fold(ring.zero(), |acc, (&y, &k)| ring.add(acc, ring.mul(elems[k], y)))
                    .is_zero()
            });
            if orthogonal {
                let coeffs: Vec<_> = word.iter().map(|&k| elems[k]).collect();
                let f = dual_params.poly(&coeffs)?;
                space.insert(field, flatten(&f));
            }
            for d in word.iter_mut() {
                *d += 1;
                if *d < elems.len() {
                    break;
                }
                *d = 0;
            }
        }
        Ok(Code {
            params: dual_params,
            spec: None,
            space,
        })
    }
}

/// F_p-basis of a code in a position-major Z_p layout: for each position j,
/// the m residue digits of a_j followed by the m digits of b_j.
struct FlatBasis {
    p: u8,
    stride: usize,
    n: usize,
    rows: Vec<Vec<u8>>,
}

impl FlatBasis {
    fn new(code: &Code) -> Self {
        let field = code.params.field();
        let m = field.degree();
        let n = code.params.n();
        let y = field.generator();
        let mut rows = Vec::with_capacity(code.dim() * m);
        for row in code.space.rows() {
            let mut scale = field.one();
            for _ in 0..m {
                let mut flat = Vec::with_capacity(2 * m * n);
                for j in 0..n {
                    flat.extend_from_slice(field.mul(scale, row[j]).coeffs());
                    flat.extend_from_slice(field.mul(scale, row[n + j]).coeffs());
                }
                rows.push(flat);
                scale = field.mul(scale, y);
            }
        }
        FlatBasis {
            p: field.characteristic() as u8,
            stride: 2 * m,
            n,
            rows,
        }
    }

    fn width(&self) -> usize {
        self.stride * self.n
    }

    fn weight(&self, word: &[u8]) -> usize {
        word.chunks_exact(self.stride)
            .filter(|c| c.iter().any(|&d| d != 0))
            .count()
    }

    fn add_row(&self, acc: &mut [u8], k: usize) {
        let p = self.p;
        for (x, &r) in acc.iter_mut().zip(&self.rows[k]) {
            let s = *x + r;
            *x = if s >= p { s - p } else { s };
        }
    }

    /// Visits every F_p-combination of the rows. The top digits are split
    /// across workers; each worker runs an odometer over the rest, adding
    /// one row per digit step (p additions of a row return to zero).
    fn fold<A, I, V, M>(&self, init: I, visit: V, merge: M) -> A
    where
        A: Send,
        I: Fn() -> A + Sync + Send,
        V: Fn(&mut A, &[u8]) + Sync + Send,
        M: Fn(A, A) -> A + Sync + Send,
    {
        let k = self.rows.len();
        let p = self.p as u64;
        let mut high = 0;
        while high < k && p.pow(high as u32) < 256 {
            high += 1;
        }
        let low = k - high;
        let chunks = p.pow(high as u32);
        (0..chunks)
            .into_par_iter()
            .fold(&init, |mut acc, prefix| {
                let mut word = vec![0u8; self.width()];
                let mut rest = prefix;
                for r in low..k {
                    for _ in 0..rest % p {
                        self.add_row(&mut word, r);
                    }
                    rest /= p;
                }
                let mut digits = vec![0u8; low];
                loop {
                    visit(&mut acc, &word);
                    let mut d = 0;
                    loop {
                        if d == low {
                            return acc;
                        }
                        self.add_row(&mut word, d);
                        digits[d] += 1;
                        if digits[d] < self.p {
                            break;
                        }
                        digits[d] = 0;
                        d += 1;
                    }
                }
            })
            .reduce(&init, merge)
    }
}

/// Iterator over every codeword of a code (sequential odometer).
pub struct Codewords<'a> {
    code: &'a Code,
    flat: FlatBasis,
    digits: Vec<u8>,
    current: Vec<u8>,
    remaining: u64,
}

impl Iterator for Codewords<'_> {
    type Item = QuotientPoly;

    fn next(&mut self) -> Option<QuotientPoly> {
        if self.remaining == 0 {
            return None;
        }
        self.remaining -= 1;
        let params = &self.code.params;
        let field = params.field();
        let m = field.degree();
        let out: Vec<FieldElement> = self
            .current
            .chunks_exact(m)
            .map(|c| {
                let cs: Vec<u32> = c.iter().map(|&d| d as u32).collect();
                field.element(&cs).expect("residues")
            })
            .collect();
        // position-major (a_j, b_j) pairs back to a(x) + u b(x)
        let a: Vec<_> = out.iter().step_by(2).copied().collect();
        let b: Vec<_> = out.iter().skip(1).step_by(2).copied().collect();
        let word = params.from_parts(&a, &b).expect("width 2n");

        for d in 0..self.digits.len() {
            self.flat.add_row(&mut self.current, d);
            self.digits[d] += 1;
            if self.digits[d] < self.flat.p {
                break;
            }
            self.digits[d] = 0;
        }
        Some(word)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let r = usize::try_from(self.remaining).unwrap_or(usize::MAX);
        (r, Some(r))
    }
}
