//! Dense polynomials over a prime field, used only to find and certify the
//! defining modulus of an extension field.

use crate::numtheory::{pow_mod, prime_divisors};

/// Coefficients listed constant term first, no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Poly {
    coeffs: Vec<u64>,
}

impl Poly {
    pub(crate) fn new(mut coeffs: Vec<u64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    fn x() -> Self {
        Poly::new(vec![0, 1])
    }

    fn one() -> Self {
        Poly::new(vec![1])
    }

    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with the zero polynomial reported as `None`.
    pub(crate) fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub(crate) fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    fn sub(&self, other: &Poly, p: u64) -> Poly {
        let len = self.coeffs.len().max(other.coeffs.len());
        let c = (0..len)
            .map(|i| {
                let a = self.coeffs.get(i).copied().unwrap_or(0);
                let b = other.coeffs.get(i).copied().unwrap_or(0);
                (a + p - b) % p
            })
            .collect();
        Poly::new(c)
    }

    fn mul(&self, other: &Poly, p: u64) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::new(Vec::new());
        }
        let mut c = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                c[i + j] = (c[i + j] + a * b) % p;
            }
        }
        Poly::new(c)
    }

    /// Remainder of division by `divisor` (which must be nonzero).
    fn rem(&self, divisor: &Poly, p: u64) -> Poly {
        let d = divisor.degree().expect("division by the zero polynomial");
        let lead_inv = pow_mod(divisor.coeffs[d], p - 2, p);
        let mut r = self.coeffs.clone();
        while r.len() > d {
            let top = r.len() - 1;
            let factor = r[top] * lead_inv % p;
            if factor != 0 {
                let shift = top - d;
                for (i, &c) in divisor.coeffs.iter().enumerate() {
                    r[shift + i] = (r[shift + i] + p - factor * c % p) % p;
                }
            }
            r.pop();
            while r.last() == Some(&0) {
                r.pop();
            }
        }
        Poly::new(r)
    }

    fn mul_mod(&self, other: &Poly, modulus: &Poly, p: u64) -> Poly {
        self.mul(other, p).rem(modulus, p)
    }

    fn pow_mod(&self, mut exp: u64, modulus: &Poly, p: u64) -> Poly {
        let mut acc = Poly::one().rem(modulus, p);
        let mut base = self.rem(modulus, p);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul_mod(&base, modulus, p);
            }
            base = base.mul_mod(&base, modulus, p);
            exp >>= 1;
        }
        acc
    }

    fn gcd(&self, other: &Poly, p: u64) -> Poly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b, p);
            a = b;
            b = r;
        }
        a
    }
}

/// `x^(p^k) mod f`, by `k` successive p-th powers.
fn x_pow_p_pow(k: u32, f: &Poly, p: u64) -> Poly {
    let mut r = Poly::x().rem(f, p);
    for _ in 0..k {
        r = r.pow_mod(p, f, p);
    }
    r
}

/// Rabin's test: `f` of degree m is irreducible over F_p iff
/// `x^(p^m) = x (mod f)` and `gcd(x^(p^(m/r)) - x, f) = 1` for every prime `r | m`.
pub(crate) fn is_irreducible(f: &Poly, p: u64) -> bool {
    let m = match f.degree() {
        Some(0) | None => return false,
        Some(1) => return true,
        Some(m) => m as u32,
    };
    let x = Poly::x();
    if x_pow_p_pow(m, f, p) != x.rem(f, p) {
        return false;
    }
    prime_divisors(m as u64).into_iter().all(|r| {
        let h = x_pow_p_pow(m / r as u32, f, p).sub(&x, p);
        h.gcd(f, p).degree() == Some(0)
    })
}

/// Whether the class of `x` has multiplicative order exactly `p^m - 1` modulo an
/// irreducible `f` of degree m.
pub(crate) fn x_is_primitive(f: &Poly, p: u64) -> bool {
    let m = f.degree().expect("nonzero modulus") as u32;
    let order = p.pow(m) - 1;
    let x = Poly::x().rem(f, p);
    if x.is_zero() {
        return false;
    }
    let one = Poly::one();
    if x.pow_mod(order, f, p) != one {
        return false;
    }
    prime_divisors(order)
        .into_iter()
        .all(|r| x.pow_mod(order / r, f, p) != one)
}

/// The first monic degree-`m` polynomial that is irreducible with `x` primitive.
///
/// Candidates `c_0 + c_1 x + ... + c_{m-1} x^{m-1} + x^m` are scanned in ascending
/// order of `sum c_i p^i`.
pub(crate) fn first_primitive(p: u64, m: u32) -> Option<Poly> {
    let count = p.pow(m);
    (0..count).find_map(|idx| {
        let mut coeffs = Vec::with_capacity(m as usize + 1);
        let mut rest = idx;
        for _ in 0..m {
            coeffs.push(rest % p);
            rest /= p;
        }
        coeffs.push(1);
        let f = Poly::new(coeffs);
        (is_irreducible(&f, p) && x_is_primitive(&f, p)).then_some(f)
    })
}
