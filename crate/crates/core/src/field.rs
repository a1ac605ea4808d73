//! Exact arithmetic in Z_p and GF(p^m).
//!
//! GF(p^m) is realised as Z_p[y]/(f(y)) where f is the canonical modulus:
//! the smallest monic irreducible of degree m when its coefficient vector
//! (lowest degree first) is read as a base-p integer with the constant term
//! as the least significant digit. For m = 1 this is f(y) = y, so the field
//! degenerates to Z_p with y = 0.

use std::fmt;

use serde::{Deserialize, Serialize, Serializer};

use crate::error::{param, Error, Result};
use crate::limits::Limits;

/// Largest supported extension degree (fixed by the element layout).
pub const MAX_DEGREE: usize = 8;
/// Largest supported characteristic (coefficients are stored as `u8`).
pub const MAX_PRIME: u32 = 251;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Neg,
}

/// An element of GF(p^m): m residues mod p in the polynomial basis
/// 1, y, ..., y^{m-1}. Tagged with (p, m) so mixing fields is detectable.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElement {
    p: u8,
    m: u8,
    coeffs: [u8; MAX_DEGREE],
}

impl FieldElement {
    pub fn coeffs(&self) -> &[u8] {
        &self.coeffs[..self.m as usize]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0] == 1 && self.coeffs[1..].iter().all(|&c| c == 0)
    }

    pub fn characteristic(&self) -> u32 {
        self.p as u32
    }

    pub fn degree(&self) -> usize {
        self.m as usize
    }

    pub fn to_vec(&self) -> Vec<u32> {
        self.coeffs().iter().map(|&c| c as u32).collect()
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.coeffs())
    }
}

impl fmt::Display for FieldElement {
    /// Renders as a polynomial in `y`, e.g. `y+1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (k, &c) in self.coeffs().iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let term = match (k, c) {
                (0, c) => c.to_string(),
                (1, 1) => "y".to_string(),
                (1, c) => format!("{c}y"),
                (k, 1) => format!("y^{k}"),
                (k, c) => format!("{c}y^{k}"),
            };
            terms.push(term);
        }
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join("+"))
        }
    }
}

impl Serialize for FieldElement {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.coeffs().iter().map(|&c| c as u32))
    }
}

/// A field element as written in JSON or on the command line: a bare
/// integer is the constant c, an array is the coefficient vector.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ElementInput {
    Scalar(u32),
    Coeffs(Vec<u32>),
}

impl ElementInput {
    pub fn resolve(&self, field: &FieldParams) -> Result<FieldElement> {
        match self {
            ElementInput::Scalar(c) => field.element(&[*c]),
            ElementInput::Coeffs(cs) => field.element(cs),
        }
    }

    /// Scalars for prime fields, coefficient arrays otherwise.
    pub fn from_element(x: &FieldElement) -> Self {
        if x.degree() == 1 {
            ElementInput::Scalar(x.coeffs()[0] as u32)
        } else {
            ElementInput::Coeffs(x.to_vec())
        }
    }
}

/// The field GF(p^m) together with its defining modulus.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawFieldParams")]
pub struct FieldParams {
    p: u32,
    m: usize,
    /// Monic, length m + 1, lowest degree first.
    modulus: Vec<u32>,
}

#[derive(Deserialize)]
struct RawFieldParams {
    p: u32,
    m: usize,
    modulus: Option<Vec<u32>>,
}

impl TryFrom<RawFieldParams> for FieldParams {
    type Error = Error;

    fn try_from(raw: RawFieldParams) -> Result<Self> {
        let field = FieldParams::with_limits(raw.p, raw.m, &Limits::default().unrestricted_sizes())?;
        if let Some(modulus) = raw.modulus {
            if modulus != field.modulus {
                return param(format!(
                    "modulus {:?} is not the canonical modulus {:?} for GF({}^{})",
                    modulus, field.modulus, raw.p, raw.m
                ));
            }
        }
        Ok(field)
    }
}

impl FieldParams {
    /// GF(p^m) under the default desk-scale caps.
    pub fn new(p: u32, m: usize) -> Result<Self> {
        Self::with_limits(p, m, &Limits::default())
    }

    pub fn with_limits(p: u32, m: usize, limits: &Limits) -> Result<Self> {
        if !is_prime(p) {
            return param(format!("p must be prime (got {p})"));
        }
        if p > limits.max_prime.min(MAX_PRIME) {
            return param(format!(
                "p = {p} exceeds the cap {}",
                limits.max_prime.min(MAX_PRIME)
            ));
        }
        if m == 0 {
            return param("m must be at least 1");
        }
        if m > limits.max_degree.min(MAX_DEGREE) {
            return param(format!(
                "m = {m} exceeds the cap {}",
                limits.max_degree.min(MAX_DEGREE)
            ));
        }
        let modulus = canonical_modulus(p, m)
            .ok_or_else(|| Error::Internal(format!("no irreducible of degree {m} over Z_{p}")))?;
        Ok(FieldParams { p, m, modulus })
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.m
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// Number of elements p^m.
    pub fn order(&self) -> u64 {
        (self.p as u64).pow(self.m as u32)
    }

    pub fn contains(&self, x: &FieldElement) -> bool {
        x.p as u32 == self.p && x.m as usize == self.m
    }

    fn raw(&self, coeffs: [u8; MAX_DEGREE]) -> FieldElement {
        FieldElement {
            p: self.p as u8,
            m: self.m as u8,
            coeffs,
        }
    }

    pub fn zero(&self) -> FieldElement {
        self.raw([0; MAX_DEGREE])
    }

    pub fn one(&self) -> FieldElement {
        self.scalar(1)
    }

    /// The constant `c mod p`.
    pub fn scalar(&self, c: u64) -> FieldElement {
        let mut coeffs = [0; MAX_DEGREE];
        coeffs[0] = (c % self.p as u64) as u8;
        self.raw(coeffs)
    }

    /// The class of `y`, the adjoined root of the modulus.
    pub fn generator(&self) -> FieldElement {
        if self.m == 1 {
            // y ≡ -modulus[0] = 0
            self.scalar((self.p - self.modulus[0]) as u64)
        } else {
            let mut coeffs = [0; MAX_DEGREE];
            coeffs[1] = 1;
            self.raw(coeffs)
        }
    }

    /// Element from its coefficient vector (lowest degree first). Shorter
    /// vectors are zero-padded; every entry must already be a residue.
    pub fn element(&self, coeffs: &[u32]) -> Result<FieldElement> {
        if coeffs.len() > self.m {
            return param(format!(
                "field element has {} coefficients, GF({}^{}) needs at most {}",
                coeffs.len(),
                self.p,
                self.m,
                self.m
            ));
        }
        let mut out = [0; MAX_DEGREE];
        for (slot, &c) in out.iter_mut().zip(coeffs) {
            if c >= self.p {
                return param(format!("coefficient {c} is not a residue mod {}", self.p));
            }
            *slot = c as u8;
        }
        Ok(self.raw(out))
    }

    /// Element whose coefficients are the base-p digits of `index`.
    pub fn from_index(&self, index: u64) -> FieldElement {
        let mut out = [0; MAX_DEGREE];
        let mut rest = index;
        for slot in out.iter_mut().take(self.m) {
            *slot = (rest % self.p as u64) as u8;
            rest /= self.p as u64;
        }
        self.raw(out)
    }

    pub fn to_index(&self, x: &FieldElement) -> u64 {
        x.coeffs()
            .iter()
            .rev()
            .fold(0u64, |acc, &c| acc * self.p as u64 + c as u64)
    }

    /// All p^m elements in index order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.order()).map(move |k| self.from_index(k))
    }

    fn check(&self, x: &FieldElement) -> Result<()> {
        if self.contains(x) {
            Ok(())
        } else {
            param(format!(
                "element of GF({}^{}) used in GF({}^{})",
                x.p, x.m, self.p, self.m
            ))
        }
    }

    /// Checked arithmetic; `y` is ignored for `Neg`.
    pub fn arith(&self, op: ArithOp, x: FieldElement, y: FieldElement) -> Result<FieldElement> {
        self.check(&x)?;
        self.check(&y)?;
        Ok(match op {
            ArithOp::Add => self.add(x, y),
            ArithOp::Sub => self.sub(x, y),
            ArithOp::Mul => self.mul(x, y),
            ArithOp::Neg => self.neg(x),
        })
    }

    pub fn add(&self, x: FieldElement, y: FieldElement) -> FieldElement {
        debug_assert!(self.contains(&x) && self.contains(&y));
        let p = self.p as u16;
        let mut out = [0; MAX_DEGREE];
        for (o, (&a, &b)) in out.iter_mut().zip(x.coeffs.iter().zip(&y.coeffs)).take(self.m) {
            *o = ((a as u16 + b as u16) % p) as u8;
        }
        self.raw(out)
    }

    pub fn neg(&self, x: FieldElement) -> FieldElement {
        debug_assert!(self.contains(&x));
        let p = self.p as u16;
        let mut out = [0; MAX_DEGREE];
        for (o, &a) in out.iter_mut().zip(&x.coeffs).take(self.m) {
            *o = ((p - a as u16) % p) as u8;
        }
        self.raw(out)
    }

    pub fn sub(&self, x: FieldElement, y: FieldElement) -> FieldElement {
        self.add(x, self.neg(y))
    }

    pub fn mul(&self, x: FieldElement, y: FieldElement) -> FieldElement {
        debug_assert!(self.contains(&x) && self.contains(&y));
        let m = self.m;
        let p = self.p;
        let mut prod = [0u32; 2 * MAX_DEGREE];
        for i in 0..m {
            if x.coeffs[i] == 0 {
                continue;
            }
            for j in 0..m {
                prod[i + j] = (prod[i + j] + x.coeffs[i] as u32 * y.coeffs[j] as u32) % p;
            }
        }
        // y^k = -(modulus[0] + ... + modulus[m-1] y^{m-1}) y^{k-m}
        for k in (m..2 * m - 1).rev() {
            let lead = prod[k];
            if lead == 0 {
                continue;
            }
            prod[k] = 0;
            for j in 0..m {
                let sub = lead * self.modulus[j] % p;
                prod[k - m + j] = (prod[k - m + j] + p - sub) % p;
            }
        }
        let mut out = [0; MAX_DEGREE];
        for k in 0..m {
            out[k] = prod[k] as u8;
        }
        self.raw(out)
    }

    /// Multiplicative inverse via the extended Euclidean algorithm on the
    /// polynomial representative.
    pub fn inv(&self, x: FieldElement) -> Result<FieldElement> {
        self.check(&x)?;
        if x.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let p = self.p;
        let a = zp::trim(x.to_vec());
        let (g, s) = zp::ext_gcd_left(&a, &self.modulus, p);
        // g is a nonzero constant because the modulus is irreducible
        if g.len() != 1 {
            return Err(Error::Internal("modulus has a common factor".into()));
        }
        let scale = zp::inv_mod(g[0], p);
        let coeffs: Vec<u32> = s.iter().map(|&c| c * scale % p).collect();
        self.element(&coeffs)
    }

    /// `x^e` by square-and-multiply; negative exponents invert first.
    pub fn pow(&self, x: FieldElement, e: i64) -> Result<FieldElement> {
        self.check(&x)?;
        if e == 0 {
            return Ok(self.one());
        }
        if x.is_zero() {
            return if e < 0 {
                Err(Error::DivisionByZero)
            } else {
                Ok(self.zero())
            };
        }
        let base = if e < 0 { self.inv(x)? } else { x };
        // the multiplicative group has order p^m - 1
        let mut k = e.unsigned_abs() % (self.order() - 1);
        let mut acc = self.one();
        let mut sq = base;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, sq);
            }
            sq = self.mul(sq, sq);
            k >>= 1;
        }
        Ok(acc)
    }
}

pub fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn canonical_modulus(p: u32, m: usize) -> Option<Vec<u32>> {
    let count = (p as u64).checked_pow(m as u32)?;
    (0..count).find_map(|k| {
        let mut f = digits(k, p, m);
        f.push(1);
        zp::is_irreducible(&f, p).then_some(f)
    })
}

fn digits(mut k: u64, p: u32, len: usize) -> Vec<u32> {
    let mut out = Vec::with_capacity(len + 1);
    for _ in 0..len {
        out.push((k % p as u64) as u32);
        k /= p as u64;
    }
    out
}

/// Dense polynomials over Z_p, lowest degree first, trimmed of leading zeros.
mod zp {
    pub fn trim(mut f: Vec<u32>) -> Vec<u32> {
        while f.last() == Some(&0) {
            f.pop();
        }
        f
    }

    pub fn inv_mod(a: u32, p: u32) -> u32 {
        let mut acc = 1u64;
        let mut base = a as u64 % p as u64;
        let mut e = p - 2;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % p as u64;
            }
            base = base * base % p as u64;
            e >>= 1;
        }
        acc as u32
    }

    pub fn rem(f: &[u32], g: &[u32], p: u32) -> Vec<u32> {
        divrem(f, g, p).1
    }

    pub fn divrem(f: &[u32], g: &[u32], p: u32) -> (Vec<u32>, Vec<u32>) {
        let g = trim(g.to_vec());
        assert!(!g.is_empty(), "polynomial division by zero");
        let mut r = trim(f.to_vec());
        if r.len() < g.len() {
            return (Vec::new(), r);
        }
        let lead_inv = inv_mod(*g.last().unwrap(), p);
        let mut q = vec![0; r.len() - g.len() + 1];
        while r.len() >= g.len() {
            let shift = r.len() - g.len();
            let c = *r.last().unwrap() * lead_inv % p;
            q[shift] = c;
            for (j, &gj) in g.iter().enumerate() {
                r[shift + j] = (r[shift + j] + p - c * gj % p) % p;
            }
            r = trim(r);
        }
        (q, r)
    }

    fn mul(f: &[u32], g: &[u32], p: u32) -> Vec<u32> {
        if f.is_empty() || g.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0; f.len() + g.len() - 1];
        for (i, &a) in f.iter().enumerate() {
            for (j, &b) in g.iter().enumerate() {
                out[i + j] = (out[i + j] + a * b) % p;
            }
        }
        trim(out)
    }

    fn sub(f: &[u32], g: &[u32], p: u32) -> Vec<u32> {
        let len = f.len().max(g.len());
        let out = (0..len)
            .map(|k| {
                let a = f.get(k).copied().unwrap_or(0);
                let b = g.get(k).copied().unwrap_or(0);
                (a + p - b) % p
            })
            .collect();
        trim(out)
    }

    /// Returns (g, s) with s·a ≡ g (mod b), g = gcd(a, b) up to a unit.
    pub fn ext_gcd_left(a: &[u32], b: &[u32], p: u32) -> (Vec<u32>, Vec<u32>) {
        let (mut r0, mut r1) = (trim(a.to_vec()), trim(b.to_vec()));
        let (mut s0, mut s1) = (vec![1u32], Vec::new());
        while !r1.is_empty() {
            let (q, r) = divrem(&r0, &r1, p);
            let s = sub(&s0, &mul(&q, &s1, p), p);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
        }
        (r0, s0)
    }

    /// Trial division by every monic polynomial of degree 1..=deg/2.
    pub fn is_irreducible(f: &[u32], p: u32) -> bool {
        let deg = f.len() - 1;
        for d in 1..=deg / 2 {
            let count = (p as u64).pow(d as u32);
            for k in 0..count {
                let mut g = super::digits(k, p, d);
                g.push(1);
                if rem(f, &g, p).is_empty() {
                    return false;
                }
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(p: u32, m: usize) -> FieldParams {
        FieldParams::new(p, m).unwrap()
    }

    #[test]
    fn canonical_moduli() {
        assert_eq!(gf(3, 1).modulus(), &[0, 1]);
        assert_eq!(gf(2, 2).modulus(), &[1, 1, 1]);
        assert_eq!(gf(2, 3).modulus(), &[1, 1, 0, 1]);
        // x^2 + 1 is irreducible over Z_3 and is the first candidate without a root
        assert_eq!(gf(3, 2).modulus(), &[1, 0, 1]);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(matches!(FieldParams::new(4, 1), Err(Error::Parameter(_))));
        assert!(matches!(FieldParams::new(1, 1), Err(Error::Parameter(_))));
        assert!(matches!(FieldParams::new(2, 0), Err(Error::Parameter(_))));
        assert!(matches!(FieldParams::new(17, 1), Err(Error::Parameter(_))));
        assert!(matches!(FieldParams::new(2, 7), Err(Error::Parameter(_))));
        let relaxed = Limits::default().unrestricted_sizes();
        assert!(FieldParams::with_limits(17, 1, &relaxed).is_ok());
        assert!(FieldParams::with_limits(2, 8, &relaxed).is_ok());
    }

    #[test]
    fn arithmetic_examples() {
        let f3 = gf(3, 1);
        let two = f3.scalar(2);
        assert_eq!(f3.arith(ArithOp::Add, two, two).unwrap(), f3.scalar(1));

        let f4 = gf(2, 2);
        let y = f4.generator();
        let y1 = f4.element(&[1, 1]).unwrap();
        assert_eq!(f4.mul(y, y), y1);
        assert_eq!(f4.mul(y, y1), f4.one());
        assert_eq!(f4.inv(y).unwrap(), y1);
        assert_eq!(f4.pow(y, 3).unwrap(), f4.one());

        assert_eq!(f3.inv(two).unwrap(), two);
        assert_eq!(f3.inv(f3.one()).unwrap(), f3.one());
        assert_eq!(f3.pow(two, 3).unwrap(), two);
        assert_eq!(f3.pow(two, -3).unwrap(), two);
    }

    #[test]
    fn error_paths() {
        let f3 = gf(3, 1);
        let f4 = gf(2, 2);
        assert_eq!(f3.inv(f3.zero()), Err(Error::DivisionByZero));
        assert_eq!(f3.pow(f3.zero(), -1), Err(Error::DivisionByZero));
        assert_eq!(f3.pow(f3.zero(), 0).unwrap(), f3.one());
        assert!(matches!(
            f3.arith(ArithOp::Add, f3.one(), f4.one()),
            Err(Error::Parameter(_))
        ));
        assert!(f3.element(&[3]).is_err());
        assert!(f3.element(&[1, 0]).is_err());
    }

    #[test]
    fn frobenius_and_inverses_exhaustive() {
        for (p, m) in [(2, 1), (2, 2), (2, 3), (2, 4), (3, 1), (3, 2), (3, 3), (5, 2), (7, 2), (3, 4)] {
            let field = gf(p, m);
            let q = field.order() as i64;
            for x in field.elements().filter(|x| !x.is_zero()) {
                assert_eq!(field.pow(x, q).unwrap(), x);
                assert_eq!(field.mul(x, field.inv(x).unwrap()), field.one());
                assert_eq!(field.pow(x, q - 1).unwrap(), field.one());
            }
        }
    }

    #[test]
    fn ring_axioms_exhaustive_small() {
        for (p, m) in [(2, 1), (2, 2), (3, 1), (2, 3), (3, 2), (5, 1), (7, 1), (13, 1), (2, 4)] {
            let field = gf(p, m);
            if field.order() > 16 {
                continue;
            }
            let all: Vec<_> = field.elements().collect();
            for &a in &all {
                assert_eq!(field.add(a, field.neg(a)), field.zero());
                for &b in &all {
                    assert_eq!(field.add(a, b), field.add(b, a));
                    assert_eq!(field.mul(a, b), field.mul(b, a));
                    for &c in &all {
                        assert_eq!(field.add(field.add(a, b), c), field.add(a, field.add(b, c)));
                        assert_eq!(field.mul(field.mul(a, b), c), field.mul(a, field.mul(b, c)));
                        assert_eq!(
                            field.mul(a, field.add(b, c)),
                            field.add(field.mul(a, b), field.mul(a, c))
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn deterministic_construction() {
        for (p, m) in [(2, 5), (3, 3), (5, 2), (13, 2)] {
            assert_eq!(gf(p, m), gf(p, m));
        }
    }

    #[test]
    fn index_round_trip_and_display() {
        let f9 = gf(3, 2);
        for k in 0..9 {
            assert_eq!(f9.to_index(&f9.from_index(k)), k);
        }
        let f4 = gf(2, 2);
        assert_eq!(f4.element(&[1, 1]).unwrap().to_string(), "y+1");
        assert_eq!(f4.zero().to_string(), "0");
    }

    #[test]
    fn serde_shapes() {
        let f4 = gf(2, 2);
        let y1 = f4.element(&[1, 1]).unwrap();
        assert_eq!(serde_json::to_string(&y1).unwrap(), "[1,1]");
        let json = serde_json::to_string(&f4).unwrap();
        assert_eq!(json, r#"{"p":2,"m":2,"modulus":[1,1,1]}"#);
        let back: FieldParams = serde_json::from_str(&json).unwrap();
        assert_eq!(back, f4);
        assert!(serde_json::from_str::<FieldParams>(r#"{"p":2,"m":2,"modulus":[1,0,1]}"#).is_err());
    }
}
