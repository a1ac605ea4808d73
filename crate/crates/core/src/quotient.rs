//! The ambient ring R_α = R[x]/(x^n − α), n = p^s, α a nonzero field
//! constant, and its (α₀x − 1)-adic coordinates.
//!
//! With α₀ the constant from [`crate::isometry::alpha0_decomposition`]
//! (α₀ = 1 when α = 1), every f ∈ R_α is uniquely Σ a_i (α₀x − 1)^i with
//! a_i ∈ R. The element α₀x − 1 is nilpotent of index n, so f is a unit
//! exactly when the residue part of a_0 is nonzero.

use std::fmt;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{param, Result};
use crate::field::{ArithOp, FieldElement, FieldParams};
use crate::isometry::alpha0_decomposition;
use crate::limits::Limits;
use crate::ring::{ChainRing, RuElement};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QuotientParams {
    ring: ChainRing,
    s: u32,
    n: usize,
    alpha: FieldElement,
    alpha0: FieldElement,
    alpha0_inv: FieldElement,
}

impl Serialize for QuotientParams {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let field = self.field();
        let mut st = serializer.serialize_struct("QuotientParams", 5)?;
        st.serialize_field("p", &field.characteristic())?;
        st.serialize_field("m", &field.degree())?;
        st.serialize_field("modulus", field.modulus())?;
        st.serialize_field("s", &self.s)?;
        st.serialize_field("alpha", &self.alpha)?;
        st.end()
    }
}

impl QuotientParams {
    pub fn new(field: FieldParams, s: u32, alpha: FieldElement) -> Result<Self> {
        Self::with_limits(field, s, alpha, &Limits::default())
    }

    pub fn with_limits(field: FieldParams, s: u32, alpha: FieldElement, limits: &Limits) -> Result<Self> {
        if !field.contains(&alpha) {
            return param("alpha is not an element of the coefficient field");
        }
        if alpha.is_zero() {
            return param("alpha must be nonzero");
        }
        if s == 0 {
            return param("s must be at least 1");
        }
        let p = field.characteristic() as u64;
        let n = match p.checked_pow(s) {
            Some(n) if n <= limits.max_length as u64 => n as usize,
            _ => {
                return param(format!(
                    "length {p}^{s} exceeds the cap {}",
                    limits.max_length
                ))
            }
        };
        let (_, _, alpha0) = alpha0_decomposition(&field, s, alpha)?;
        let alpha0_inv = field.inv(alpha0)?;
        Ok(QuotientParams {
            ring: ChainRing::new(field),
            s,
            n,
            alpha,
            alpha0,
            alpha0_inv,
        })
    }

    /// The cyclic ring R[x]/(x^n − 1) over the same field and length.
    pub fn cyclic(&self) -> Self {
        let one = self.field().one();
        QuotientParams {
            ring: self.ring.clone(),
            s: self.s,
            n: self.n,
            alpha: one,
            alpha0: one,
            alpha0_inv: one,
        }
    }

    /// Same ring with the constant replaced (α must be nonzero).
    pub fn with_alpha(&self, alpha: FieldElement) -> Result<Self> {
        let limits = Limits {
            max_length: self.n,
            ..Limits::default().unrestricted_sizes()
        };
        Self::with_limits(self.field().clone(), self.s, alpha, &limits)
    }

    pub fn field(&self) -> &FieldParams {
        self.ring.field()
    }

    pub fn ring(&self) -> &ChainRing {
        &self.ring
    }

    pub fn s(&self) -> u32 {
        self.s
    }

    /// Code length p^s.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn alpha(&self) -> FieldElement {
        self.alpha
    }

    pub fn alpha0(&self) -> FieldElement {
        self.alpha0
    }

    pub fn is_cyclic(&self) -> bool {
        self.alpha.is_one()
    }

    /// |R_α| as a power of two exponent.
    pub fn order_bits(&self) -> f64 {
        crate::limits::bits(self.ring.order(), self.n as u64)
    }

    pub fn zero(&self) -> QuotientPoly {
        QuotientPoly {
            coeffs: vec![self.ring.zero(); self.n],
        }
    }

    pub fn constant(&self, c: RuElement) -> QuotientPoly {
        self.monomial(0, c)
    }

    pub fn one(&self) -> QuotientPoly {
        self.constant(self.ring.one())
    }

    /// c·x^j, reduced with x^n = α.
    pub fn monomial(&self, j: usize, c: RuElement) -> QuotientPoly {
        let mut f = self.zero();
        let wraps = j / self.n;
        let mut c = c;
        for _ in 0..wraps {
            c = self.ring.scale(self.alpha, c);
        }
        f.coeffs[j % self.n] = c;
        f
    }

    pub fn x(&self) -> QuotientPoly {
        self.monomial(1, self.ring.one())
    }

    /// From coefficient vectors over R (length ≤ n, no wrap-around).
    pub fn poly(&self, coeffs: &[RuElement]) -> Result<QuotientPoly> {
        if coeffs.len() > self.n {
            return param(format!("polynomial has {} coefficients, length is {}", coeffs.len(), self.n));
        }
        if !coeffs.iter().all(|c| self.ring.contains(c)) {
            return param("polynomial coefficients belong to a different ring");
        }
        let mut f = self.zero();
        f.coeffs[..coeffs.len()].copy_from_slice(coeffs);
        Ok(f)
    }

    /// a(x) + u·b(x) from two field polynomials of degree < n.
    pub fn from_parts(&self, residue: &[FieldElement], upart: &[FieldElement]) -> Result<QuotientPoly> {
        if residue.len() > self.n || upart.len() > self.n {
            return param("part has more than n coefficients");
        }
        let field = self.field();
        if !residue.iter().chain(upart).all(|c| field.contains(c)) {
            return param("part coefficients belong to a different field");
        }
        let mut f = self.zero();
        for (slot, &a) in f.coeffs.iter_mut().zip(residue) {
            slot.a = a;
        }
        for (slot, &b) in f.coeffs.iter_mut().zip(upart) {
            slot.b = b;
        }
        Ok(f)
    }

    /// The adic basis element α₀x − 1 (x − 1 in the cyclic case).
    pub fn adic_base(&self) -> QuotientPoly {
        let mut f = self.zero();
        f.coeffs[0] = self.ring.neg(self.ring.one());
        f.coeffs[1] = self.ring.embed(self.alpha0);
        f
    }

    pub fn contains(&self, f: &QuotientPoly) -> bool {
        f.coeffs.len() == self.n && f.coeffs.iter().all(|c| self.ring.contains(c))
    }

    fn check(&self, f: &QuotientPoly) -> Result<()> {
        if self.contains(f) {
            Ok(())
        } else {
            param(format!(
                "polynomial of length {} does not belong to a ring of length {}",
                f.coeffs.len(),
                self.n
            ))
        }
    }

    pub fn arith(&self, op: ArithOp, f: &QuotientPoly, g: &QuotientPoly) -> Result<QuotientPoly> {
        self.check(f)?;
        self.check(g)?;
        Ok(match op {
            ArithOp::Add => self.add(f, g),
            ArithOp::Sub => self.sub(f, g),
            ArithOp::Mul => self.mul(f, g),
            ArithOp::Neg => self.neg(f),
        })
    }

    pub fn add(&self, f: &QuotientPoly, g: &QuotientPoly) -> QuotientPoly {
        self.zip(f, g, |x, y| self.ring.add(x, y))
    }

    pub fn sub(&self, f: &QuotientPoly, g: &QuotientPoly) -> QuotientPoly {
        self.zip(f, g, |x, y| self.ring.sub(x, y))
    }

    pub fn neg(&self, f: &QuotientPoly) -> QuotientPoly {
        QuotientPoly {
            coeffs: f.coeffs.iter().map(|&c| self.ring.neg(c)).collect(),
        }
    }

    fn zip(&self, f: &QuotientPoly, g: &QuotientPoly, op: impl Fn(RuElement, RuElement) -> RuElement) -> QuotientPoly {
        debug_assert!(self.contains(f) && self.contains(g));
        QuotientPoly {
            coeffs: f.coeffs.iter().zip(&g.coeffs).map(|(&x, &y)| op(x, y)).collect(),
        }
    }

    /// Schoolbook product with x^{n+j} ↦ α·x^j.
    pub fn mul(&self, f: &QuotientPoly, g: &QuotientPoly) -> QuotientPoly {
        debug_assert!(self.contains(f) && self.contains(g));
        let n = self.n;
        let r = &self.ring;
        let mut low = vec![r.zero(); n];
        let mut high = vec![r.zero(); n];
        for (i, &fi) in f.coeffs.iter().enumerate() {
            if fi.is_zero() {
                continue;
            }
            for (j, &gj) in g.coeffs.iter().enumerate() {
                if gj.is_zero() {
                    continue;
                }
                let term = r.mul(fi, gj);
                let k = i + j;
                if k < n {
                    low[k] = r.add(low[k], term);
                } else {
                    high[k - n] = r.add(high[k - n], term);
                }
            }
        }
        for (slot, h) in low.iter_mut().zip(high) {
            *slot = r.add(*slot, r.scale(self.alpha, h));
        }
        QuotientPoly { coeffs: low }
    }

    pub fn scale(&self, c: RuElement, f: &QuotientPoly) -> QuotientPoly {
        QuotientPoly {
            coeffs: f.coeffs.iter().map(|&x| self.ring.mul(c, x)).collect(),
        }
    }

    pub fn pow(&self, f: &QuotientPoly, mut e: u64) -> QuotientPoly {
        let mut acc = self.one();
        let mut sq = f.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &sq);
            }
            sq = self.mul(&sq, &sq);
            e >>= 1;
        }
        acc
    }

    /// The α-constacyclic shift (c_0, ..., c_{n-1}) ↦ (α c_{n-1}, c_0, ..., c_{n-2}).
    pub fn shift(&self, f: &QuotientPoly) -> QuotientPoly {
        let n = f.coeffs.len();
        let mut coeffs = Vec::with_capacity(n);
        coeffs.push(self.ring.scale(self.alpha, f.coeffs[n - 1]));
        coeffs.extend_from_slice(&f.coeffs[..n - 1]);
        QuotientPoly { coeffs }
    }

    /// Number of nonzero coefficients in R.
    pub fn weight(&self, f: &QuotientPoly) -> usize {
        f.weight()
    }

    /// Coordinates in the basis {(α₀x − 1)^i}.
    ///
    /// Writing z = α₀x, f = Σ c_j α₀^{-j} z^j; repeated synthetic division
    /// by (z − 1) then yields the coefficients in powers of z − 1.
    pub fn adic_expand(&self, f: &QuotientPoly) -> AdicCoords {
        let r = &self.ring;
        let field = self.field();
        let mut scale = field.one();
        let mut work: Vec<RuElement> = f
            .coeffs
            .iter()
            .map(|&c| {
                let out = r.scale(scale, c);
                scale = field.mul(scale, self.alpha0_inv);
                out
            })
            .collect();
        let n = self.n;
        let mut coords = Vec::with_capacity(n);
        // each pass divides work[..len] by (z - 1): the remainder is the next coordinate
        for len in (1..=n).rev() {
            for k in (0..len - 1).rev() {
                work[k] = r.add(work[k], work[k + 1]);
            }
            coords.push(work[0]);
            work.remove(0);
        }
        AdicCoords { coords }
    }

    /// Σ a_i (α₀x − 1)^i evaluated by Horner's rule in R_α.
    pub fn adic_collapse(&self, c: &AdicCoords) -> QuotientPoly {
        let base = self.adic_base();
        let mut acc = self.zero();
        for &a in c.coords.iter().rev() {
            acc = self.mul(&acc, &base);
            acc.coeffs[0] = self.ring.add(acc.coeffs[0], a);
        }
        acc
    }

    pub fn is_unit(&self, f: &QuotientPoly) -> bool {
        !self.adic_expand(f).coords[0].a.is_zero()
    }

    /// The residue part a(x) of a(x) + u·b(x).
    pub fn residue_part(&self, f: &QuotientPoly) -> Vec<FieldElement> {
        f.coeffs.iter().map(|c| c.a).collect()
    }

    pub fn u_part(&self, f: &QuotientPoly) -> Vec<FieldElement> {
        f.coeffs.iter().map(|c| c.b).collect()
    }

    /// Every element of R_α (only sensible for tiny rings).
    pub fn elements(&self) -> impl Iterator<Item = QuotientPoly> + '_ {
        let q = self.ring.order();
        let total = q.pow(self.n as u32);
        let all: Vec<RuElement> = self.ring.elements().collect();
        (0..total).map(move |mut k| {
            let coeffs = (0..self.n)
                .map(|_| {
                    let c = all[(k % q) as usize];
                    k /= q;
                    c
                })
                .collect();
            QuotientPoly { coeffs }
        })
    }
}

/// c_0 + c_1 x + ... + c_{n-1} x^{n-1}, always fully reduced.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct QuotientPoly {
    coeffs: Vec<RuElement>,
}

impl QuotientPoly {
    pub fn coeffs(&self) -> &[RuElement] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(RuElement::is_zero)
    }

    pub fn weight(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl fmt::Display for QuotientPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(j, c)| match j {
                0 => format!("({c})"),
                1 => format!("({c})x"),
                _ => format!("({c})x^{j}"),
            })
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

/// Coordinates a_0, ..., a_{n-1} of f = Σ a_i (α₀x − 1)^i.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct AdicCoords {
    coords: Vec<RuElement>,
}

impl AdicCoords {
    pub fn new(coords: Vec<RuElement>) -> Self {
        AdicCoords { coords }
    }

    pub fn coords(&self) -> &[RuElement] {
        &self.coords
    }
}
