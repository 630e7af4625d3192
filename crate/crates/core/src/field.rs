//! Table-driven arithmetic in a finite field F_{p^m}.
//!
//! Every element has two coordinates: its *code*, the base-p integer whose
//! digits are the coefficients of the residue polynomial (constant term in the
//! least significant digit), and its discrete logarithm to the chosen
//! generator. Addition works on codes, multiplication on logarithms.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numtheory::{gcd, is_prime, pow_mod, prime_power};
use crate::poly::{self, Poly};

/// Default upper bound on the order of any field we are willing to tabulate.
pub const DEFAULT_ORDER_CAP: u64 = 1 << 20;

const NO_LOG: u32 = u32::MAX;

/// A prime power `q = p^l`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PrimePower {
    pub p: u64,
    pub l: u32,
    pub q: u64,
}

impl PrimePower {
    /// Decomposes `q`, or returns `None` if it is not a prime power.
    pub fn new(q: u64) -> Option<Self> {
        prime_power(q).map(|(p, l)| PrimePower { p, l, q })
    }

    pub fn from_parts(p: u64, l: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if l == 0 {
            return Err(Error::DegreeZero);
        }
        let q = p.checked_pow(l).ok_or(Error::Overflow("p^l"))?;
        Ok(PrimePower { p, l, q })
    }
}

/// The reproducibility record of a constructed field.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldSpec {
    pub p: u32,
    pub m: u32,
    /// `m + 1` coefficients, constant term first; the last one is 1.
    pub modulus: Vec<u32>,
    /// Code of the multiplicative generator `g`.
    pub generator: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FieldElement(u32);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    pub fn code(self) -> u32 {
        self.0
    }

    /// Unchecked; callers guarantee `code` is below the field order.
    pub(crate) const fn from_code(code: u32) -> Self {
        FieldElement(code)
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// The subfield `F_p<a>` together with its degree over F_p.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratedSubfield {
    pub degree: u32,
    pub elements: Vec<FieldElement>,
}

/// An immutable, fully tabulated finite field.
#[derive(Clone)]
pub struct FieldTable {
    spec: FieldSpec,
    order: u32,
    /// `exp[d]` is the code of `g^d`, for `d` in `0..order-1`.
    exp: Vec<u32>,
    /// `log[c]` is the discrete log of code `c`; `NO_LOG` at code 0.
    log: Vec<u32>,
}

impl fmt::Debug for FieldTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldTable")
            .field("spec", &self.spec)
            .field("order", &self.order)
            .finish_non_exhaustive()
    }
}

fn checked_order(p: u64, m: u32, cap: u64) -> Result<u32> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if m == 0 {
        return Err(Error::DegreeZero);
    }
    let cap = cap.min(u32::MAX as u64);
    let mut order: u128 = 1;
    for _ in 0..m {
        order *= p as u128;
        if order > cap as u128 {
            // keep reporting the full order where it fits
            let full = (p as u128).checked_pow(m).unwrap_or(u128::MAX);
            return Err(Error::OrderCapExceeded { order: full, cap });
        }
    }
    Ok(order as u32)
}

impl FieldTable {
    /// Builds F_{p^m} with the default order cap.
    pub fn build(p: u64, m: u32) -> Result<Self> {
        Self::build_with_cap(p, m, DEFAULT_ORDER_CAP)
    }

    /// Builds F_{p^m} over the first primitive monic modulus, with `g` the
    /// class of `x`.
    pub fn build_with_cap(p: u64, m: u32, cap: u64) -> Result<Self> {
        let order = checked_order(p, m, cap)?;
        let modulus = poly::first_primitive(p, m).ok_or_else(|| {
            Error::InternalAssertion(format!("no primitive polynomial of degree {m} over F_{p}"))
        })?;
        let modulus: Vec<u32> = modulus.coeffs().iter().map(|&c| c as u32).collect();
        let p = p as u32;
        // x itself, or -c_0 when m = 1
        let generator = if m == 1 { (p - modulus[0]) % p } else { p };
        let spec = FieldSpec {
            p,
            m,
            modulus,
            generator,
        };
        Self::tabulate(spec, order)
    }

    /// Rebuilds a field from its spec, re-certifying the modulus and generator.
    pub fn from_spec(spec: &FieldSpec, cap: u64) -> Result<Self> {
        let order = checked_order(spec.p as u64, spec.m, cap)?;
        let malformed = spec.modulus.len() != spec.m as usize + 1
            || spec.modulus.last() != Some(&1)
            || spec.modulus.iter().any(|&c| c >= spec.p);
        if malformed {
            return Err(Error::InternalAssertion(format!(
                "modulus {:?} is not a monic degree-{} polynomial over F_{}",
                spec.modulus, spec.m, spec.p
            )));
        }
        let f = Poly::new(spec.modulus.iter().map(|&c| c as u64).collect());
        if !poly::is_irreducible(&f, spec.p as u64) {
            return Err(Error::InternalAssertion(format!(
                "modulus {:?} is reducible over F_{}",
                spec.modulus, spec.p
            )));
        }
        if spec.generator >= order {
            return Err(Error::InvalidCode {
                code: spec.generator as u64,
                order,
            });
        }
        Self::tabulate(spec.clone(), order)
    }

    /// The same field and modulus with a different multiplicative generator.
    pub fn with_generator(&self, generator: FieldElement) -> Result<Self> {
        self.check(generator)?;
        let e = self
            .dlog(generator)
            .ok_or(Error::InvalidGenerator { code: 0 })? as u64;
        let group = (self.order - 1) as u64;
        if gcd(e, group) != 1 {
            return Err(Error::InvalidGenerator { code: generator.0 });
        }
        let exp: Vec<u32> = (0..group)
            .map(|d| self.exp[(d * e % group) as usize])
            .collect();
        let mut log = vec![NO_LOG; self.order as usize];
        for (d, &c) in exp.iter().enumerate() {
            log[c as usize] = d as u32;
        }
        let spec = FieldSpec {
            generator: generator.0,
            ..self.spec.clone()
        };
        Ok(FieldTable {
            spec,
            order: self.order,
            exp,
            log,
        })
    }

    /// Walks the powers of the generator, failing if they do not cover every
    /// nonzero element exactly once.
    fn tabulate(spec: FieldSpec, order: u32) -> Result<Self> {
        let p = spec.p;
        let m = spec.m as usize;
        let group = (order - 1) as usize;
        let g = digits_of(spec.generator, p, m);
        let modulus = &spec.modulus;

        // images of x^i * g for each basis monomial, used for a general generator
        let shift_only = m > 1 && spec.generator == p;
        let mut basis_images: Vec<Vec<u32>> = Vec::new();
        if !shift_only {
            let mut cur = g.clone();
            for _ in 0..m {
                basis_images.push(cur.clone());
                cur = times_x(&cur, modulus, p);
            }
        }

        let mut exp = Vec::with_capacity(group);
        let mut log = vec![NO_LOG; order as usize];
        let mut cur = digits_of(1, p, m);
        for d in 0..group {
            let code = code_of(&cur, p);
            if code == 0 || log[code as usize] != NO_LOG {
                return Err(Error::InvalidGenerator {
                    code: spec.generator,
                });
            }
            log[code as usize] = d as u32;
            exp.push(code);
            cur = if shift_only {
                times_x(&cur, modulus, p)
            } else {
                let mut next = vec![0u32; m];
                for (i, &c) in cur.iter().enumerate() {
                    if c == 0 {
                        continue;
                    }
                    for (acc, &b) in next.iter_mut().zip(&basis_images[i]) {
                        *acc = ((*acc as u64 + c as u64 * b as u64) % p as u64) as u32;
                    }
                }
                next
            };
        }
        if code_of(&cur, p) != 1 {
            return Err(Error::InvalidGenerator {
                code: spec.generator,
            });
        }
        Ok(FieldTable {
            spec,
            order,
            exp,
            log,
        })
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn characteristic(&self) -> u32 {
        self.spec.p
    }

    pub fn degree(&self) -> u32 {
        self.spec.m
    }

    pub fn generator(&self) -> FieldElement {
        FieldElement(self.spec.generator)
    }

    pub fn element(&self, code: u64) -> Result<FieldElement> {
        if code < self.order as u64 {
            Ok(FieldElement(code as u32))
        } else {
            Err(Error::InvalidCode {
                code,
                order: self.order,
            })
        }
    }

    fn check(&self, a: FieldElement) -> Result<()> {
        self.element(a.0 as u64).map(|_| ())
    }

    /// All elements in ascending code order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + Clone {
        (0..self.order).map(FieldElement)
    }

    pub fn nonzero_elements(&self) -> impl Iterator<Item = FieldElement> + Clone {
        (1..self.order).map(FieldElement)
    }

    pub fn dlog(&self, a: FieldElement) -> Option<u32> {
        match self.log[a.0 as usize] {
            NO_LOG => None,
            d => Some(d),
        }
    }

    /// `g^d`, with `d` reduced modulo the group order.
    pub fn exp(&self, d: u64) -> FieldElement {
        FieldElement(self.exp[(d % (self.order as u64 - 1)) as usize])
    }

    pub fn exp_table(&self) -> &[u32] {
        &self.exp
    }

    /// Coefficients of the residue polynomial, constant term first.
    pub fn coefficients(&self, a: FieldElement) -> Vec<u32> {
        digits_of(a.0, self.spec.p, self.spec.m as usize)
    }

    pub fn from_coefficients(&self, coeffs: &[u32]) -> Result<FieldElement> {
        if coeffs.len() > self.spec.m as usize || coeffs.iter().any(|&c| c >= self.spec.p) {
            return Err(Error::InvalidCode {
                code: u64::MAX,
                order: self.order,
            });
        }
        Ok(FieldElement(code_of(coeffs, self.spec.p)))
    }

    /// The monomials `1, x, ..., x^{m-1}`: an additive basis over F_p.
    pub fn additive_basis(&self) -> Vec<FieldElement> {
        let p = self.spec.p;
        (0..self.spec.m).map(|i| FieldElement(p.pow(i))).collect()
    }

    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        let p = self.spec.p;
        if p == 2 {
            return FieldElement(a.0 ^ b.0);
        }
        let (mut x, mut y) = (a.0, b.0);
        let mut out = 0;
        let mut weight = 1;
        while x != 0 || y != 0 {
            out += (x % p + y % p) % p * weight;
            x /= p;
            y /= p;
            weight *= p;
        }
        FieldElement(out)
    }

    pub fn neg(&self, a: FieldElement) -> FieldElement {
        let p = self.spec.p;
        if p == 2 {
            return a;
        }
        let mut x = a.0;
        let mut out = 0;
        let mut weight = 1;
        while x != 0 {
            out += (p - x % p) % p * weight;
            x /= p;
            weight *= p;
        }
        FieldElement(out)
    }

    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        match (self.dlog(a), self.dlog(b)) {
            (Some(x), Some(y)) => self.exp(x as u64 + y as u64),
            _ => FieldElement::ZERO,
        }
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement> {
        let d = self.dlog(a).ok_or(Error::DivisionByZero)? as u64;
        let group = self.order as u64 - 1;
        Ok(self.exp(group - d))
    }

    pub fn pow(&self, a: FieldElement, e: u64) -> FieldElement {
        match self.dlog(a) {
            None if e == 0 => FieldElement::ONE,
            None => FieldElement::ZERO,
            Some(d) => self.exp(pow_mul(d as u64, e, self.order as u64 - 1)),
        }
    }

    /// `a^(p^s)`.
    pub fn frobenius(&self, a: FieldElement, s: u32) -> FieldElement {
        match self.dlog(a) {
            None => FieldElement::ZERO,
            Some(d) => {
                let group = self.order as u64 - 1;
                let twist = pow_mod(self.spec.p as u64, s as u64, group);
                self.exp(pow_mul(d as u64, twist, group))
            }
        }
    }

    /// `{x : x^(p^s) = x}`, the unique subfield of order `p^s`, ascending by code.
    pub fn fixed_field(&self, s: u32) -> Result<Vec<FieldElement>> {
        let m = self.spec.m;
        if s == 0 || !m.is_multiple_of(s) {
            return Err(Error::NotADivisor { s, m });
        }
        Ok(self
            .elements()
            .filter(|&x| self.frobenius(x, s) == x)
            .collect())
    }

    /// The least `f >= 1` with `a^(p^f) = a`, and the subfield it spans.
    pub fn generated_subfield(&self, a: FieldElement) -> Result<GeneratedSubfield> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        self.check(a)?;
        let degree = (1..=self.spec.m)
            .find(|&f| self.frobenius(a, f) == a)
            .expect("a^(p^m) = a for every element");
        Ok(GeneratedSubfield {
            degree,
            elements: self.fixed_field(degree)?,
        })
    }
}

fn pow_mul(d: u64, e: u64, modulus: u64) -> u64 {
    ((d as u128 * (e % modulus) as u128) % modulus as u128) as u64
}

fn digits_of(mut code: u32, p: u32, m: usize) -> Vec<u32> {
    let mut out = Vec::with_capacity(m);
    for _ in 0..m {
        out.push(code % p);
        code /= p;
    }
    out
}

fn code_of(digits: &[u32], p: u32) -> u32 {
    digits.iter().rev().fold(0, |acc, &d| acc * p + d)
}

/// `x * a mod f` on coefficient vectors of length `m`.
fn times_x(a: &[u32], modulus: &[u32], p: u32) -> Vec<u32> {
    let m = a.len();
    let top = a[m - 1] as u64;
    let mut out = vec![0u32; m];
    for i in (1..m).rev() {
        out[i] = a[i - 1];
    }
    if top != 0 {
        // x^m = -(c_0 + ... + c_{m-1} x^{m-1})
        for (o, &c) in out.iter_mut().zip(modulus) {
            let sub = top * c as u64 % p as u64;
            *o = ((*o as u64 + p as u64 - sub) % p as u64) as u32;
        }
    }
    out
}
