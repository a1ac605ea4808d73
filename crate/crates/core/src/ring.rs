//! The chain ring R = F_{p^m} + uF_{p^m}, u^2 = 0.

use std::fmt;

use serde::Serialize;

use crate::error::{param, Error, Result};
use crate::field::{ArithOp, FieldElement, FieldParams};

/// `a + ub`. The residue part `a` is what the map R -> R/uR = F_{p^m} keeps.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct RuElement {
    pub a: FieldElement,
    pub b: FieldElement,
}

impl RuElement {
    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
}

impl fmt::Display for RuElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.a.is_zero(), self.b.is_zero()) {
            (true, true) => write!(f, "0"),
            (false, true) => write!(f, "{}", self.a),
            (true, false) => write!(f, "u({})", self.b),
            (false, false) => write!(f, "{}+u({})", self.a, self.b),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ChainRing {
    field: FieldParams,
}

impl ChainRing {
    pub fn new(field: FieldParams) -> Self {
        ChainRing { field }
    }

    pub fn field(&self) -> &FieldParams {
        &self.field
    }

    /// |R| = p^{2m}.
    pub fn order(&self) -> u64 {
        self.field.order() * self.field.order()
    }

    pub fn contains(&self, x: &RuElement) -> bool {
        self.field.contains(&x.a) && self.field.contains(&x.b)
    }

    pub fn element(&self, a: FieldElement, b: FieldElement) -> Result<RuElement> {
        if !(self.field.contains(&a) && self.field.contains(&b)) {
            return param("ring element parts belong to a different field");
        }
        Ok(RuElement { a, b })
    }

    pub fn embed(&self, a: FieldElement) -> RuElement {
        RuElement {
            a,
            b: self.field.zero(),
        }
    }

    /// `u·b`.
    pub fn nilpotent(&self, b: FieldElement) -> RuElement {
        RuElement {
            a: self.field.zero(),
            b,
        }
    }

    pub fn zero(&self) -> RuElement {
        self.embed(self.field.zero())
    }

    pub fn one(&self) -> RuElement {
        self.embed(self.field.one())
    }

    pub fn u(&self) -> RuElement {
        self.nilpotent(self.field.one())
    }

    /// Every element, ordered by (index of a) + |F|·(index of b).
    pub fn elements(&self) -> impl Iterator<Item = RuElement> + '_ {
        let q = self.field.order();
        (0..q * q).map(move |k| RuElement {
            a: self.field.from_index(k % q),
            b: self.field.from_index(k / q),
        })
    }

    pub fn arith(&self, op: ArithOp, x: RuElement, y: RuElement) -> Result<RuElement> {
        if !self.contains(&x) || !self.contains(&y) {
            return param("ring elements belong to different rings");
        }
        Ok(match op {
            ArithOp::Add => self.add(x, y),
            ArithOp::Sub => self.sub(x, y),
            ArithOp::Mul => self.mul(x, y),
            ArithOp::Neg => self.neg(x),
        })
    }

    pub fn add(&self, x: RuElement, y: RuElement) -> RuElement {
        RuElement {
            a: self.field.add(x.a, y.a),
            b: self.field.add(x.b, y.b),
        }
    }

    pub fn sub(&self, x: RuElement, y: RuElement) -> RuElement {
        RuElement {
            a: self.field.sub(x.a, y.a),
            b: self.field.sub(x.b, y.b),
        }
    }

    pub fn neg(&self, x: RuElement) -> RuElement {
        RuElement {
            a: self.field.neg(x.a),
            b: self.field.neg(x.b),
        }
    }

    pub fn mul(&self, x: RuElement, y: RuElement) -> RuElement {
        let f = &self.field;
        RuElement {
            a: f.mul(x.a, y.a),
            b: f.add(f.mul(x.a, y.b), f.mul(x.b, y.a)),
        }
    }

    /// Scales both parts by a field constant.
    pub fn scale(&self, c: FieldElement, x: RuElement) -> RuElement {
        RuElement {
            a: self.field.mul(c, x.a),
            b: self.field.mul(c, x.b),
        }
    }

    pub fn is_unit(&self, x: RuElement) -> bool {
        !x.a.is_zero()
    }

    /// (a + ub)^{-1} = a^{-1} - u a^{-2} b.
    pub fn inv(&self, x: RuElement) -> Result<RuElement> {
        if !self.contains(&x) {
            return param("ring element belongs to a different ring");
        }
        if !self.is_unit(x) {
            return Err(Error::NotInvertible);
        }
        let f = &self.field;
        let a_inv = f.inv(x.a)?;
        let b = f.neg(f.mul(f.mul(a_inv, a_inv), x.b));
        Ok(RuElement { a: a_inv, b })
    }
}
