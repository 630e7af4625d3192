//! Dickson pairs, the integers `[k]_q`, and the coset decomposition of the
//! multiplicative group that drives the coupling map.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldTable, PrimePower};
use crate::numtheory::prime_divisors;

/// The first admissibility condition a candidate pair breaks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Violation {
    /// (i) `q` is not a prime power.
    NotPrimePower,
    /// (ii) the prime `r` divides `n` but not `q - 1`.
    PrimeDivisor { r: u64 },
    /// (iii) `q = 3 (mod 4)` and `4 | n`.
    FourDividesN,
    /// `n = 0`, outside the domain of the definition.
    ZeroN,
}

impl Violation {
    /// Short condition tag: `"i"`, `"ii"`, `"iii"`, or `"n"` for a zero `n`.
    pub fn condition(&self) -> &'static str {
        match self {
            Violation::NotPrimePower => "i",
            Violation::PrimeDivisor { .. } => "ii",
            Violation::FourDividesN => "iii",
            Violation::ZeroN => "n",
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NotPrimePower => write!(f, "condition i (q is not a prime power)"),
            Violation::PrimeDivisor { r } => {
                write!(f, "condition ii (prime {r} divides n but not q - 1)")
            }
            Violation::FourDividesN => write!(f, "condition iii (q = 3 mod 4 and 4 divides n)"),
            Violation::ZeroN => write!(f, "n must be positive"),
        }
    }
}

/// A validated Dickson pair `(q, n)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct DicksonPair {
    base: PrimePower,
    n: u32,
}

impl DicksonPair {
    pub fn new(q: u64, n: u32) -> Result<Self> {
        validate_pair(q, n).map_err(Error::InvalidPair)
    }

    pub fn base(&self) -> PrimePower {
        self.base
    }

    pub fn q(&self) -> u64 {
        self.base.q
    }

    pub fn p(&self) -> u64 {
        self.base.p
    }

    pub fn l(&self) -> u32 {
        self.base.l
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// Degree `l * n` of `F_{q^n}` over its prime field.
    pub fn field_degree(&self) -> u32 {
        self.base.l * self.n
    }

    /// `q^n`, if it fits.
    pub fn order(&self) -> Option<u64> {
        self.base.q.checked_pow(self.n)
    }

    /// `n = 1`: the construction gives back the field itself.
    pub fn is_trivial(&self) -> bool {
        self.n == 1
    }
}

impl fmt::Display for DicksonPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.base.q, self.n)
    }
}

/// `[k]_q = 1 + q + ... + q^{k-1}`.
pub fn bracket(k: u32, q: u64) -> Result<u64> {
    if k == 0 || q < 2 {
        return Err(Error::InternalAssertion(format!(
            "bracket needs k >= 1 and q >= 2, got k={k}, q={q}"
        )));
    }
    let mut sum: u64 = 0;
    let mut term: u64 = 1;
    for i in 0..k {
        sum = sum.checked_add(term).ok_or(Error::Overflow("[k]_q"))?;
        if i + 1 < k {
            term = term.checked_mul(q).ok_or(Error::Overflow("[k]_q"))?;
        }
    }
    Ok(sum)
}

/// `[k]_q mod n` for `k = 1..=n`, without ever forming `[k]_q` itself.
pub fn brackets_mod(q: u64, n: u32) -> Vec<u64> {
    let n64 = n as u64;
    let mut out = Vec::with_capacity(n as usize);
    let mut sum = 0u64;
    let mut term = 1 % n64.max(1);
    for _ in 0..n {
        sum = (sum + term) % n64;
        term = ((term as u128 * q as u128) % n64 as u128) as u64;
        out.push(sum);
    }
    out
}

/// Checks the three conditions in order and reports the first one that fails.
pub fn validate_pair(q: u64, n: u32) -> std::result::Result<DicksonPair, Violation> {
    let base = PrimePower::new(q).ok_or(Violation::NotPrimePower)?;
    if n == 0 {
        return Err(Violation::ZeroN);
    }
    if let Some(&r) = prime_divisors(n as u64)
        .iter()
        .find(|&&r| !(q - 1).is_multiple_of(r))
    {
        return Err(Violation::PrimeDivisor { r });
    }
    if q % 4 == 3 && n.is_multiple_of(4) {
        return Err(Violation::FourDividesN);
    }
    Ok(DicksonPair { base, n })
}

/// Every Dickson pair with `q^n <= max_order`, sorted by `(q^n, q)`.
/// Pairs with `n = 1` are included.
pub fn enumerate_pairs(max_order: u64) -> Vec<DicksonPair> {
    let mut out = Vec::new();
    for q in 2..=max_order {
        if PrimePower::new(q).is_none() {
            continue;
        }
        let mut n = 1u32;
        while q.checked_pow(n).is_some_and(|o| o <= max_order) {
            if let Ok(pair) = validate_pair(q, n) {
                out.push(pair);
            }
            n += 1;
        }
    }
    out.sort_by_key(|pair| (pair.order().unwrap_or(u64::MAX), pair.q()));
    out
}

/// JSON record describing a candidate pair.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairReport {
    pub q: u64,
    pub p: Option<u64>,
    pub l: Option<u32>,
    pub n: u32,
    pub valid: bool,
    pub violated: &'static str,
    pub brackets_mod_n: Vec<u64>,
}

impl PairReport {
    pub fn new(q: u64, n: u32) -> Self {
        let base = PrimePower::new(q);
        let verdict = validate_pair(q, n);
        PairReport {
            q,
            p: base.map(|b| b.p),
            l: base.map(|b| b.l),
            n,
            valid: verdict.is_ok(),
            violated: verdict.err().map_or("none", |v| v.condition()),
            brackets_mod_n: if n == 0 {
                Vec::new()
            } else {
                brackets_mod(q, n)
            },
        }
    }
}

/// The bijection between residues `dlog mod n` and coset indices
/// `k in 1..=n`, realizing `alpha in g^{[k]_q} H` with `H = <g^n>`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CosetIndexTable {
    n: u32,
    residue_to_k: Vec<u32>,
    /// `q^k mod (q^n - 1)` for `k = 1..=n`, at index `k - 1`.
    twist: Vec<u64>,
}

impl CosetIndexTable {
    pub fn build(pair: &DicksonPair) -> Result<Self> {
        let n = pair.n();
        let q = pair.q();
        let residues = brackets_mod(q, n);
        let mut residue_to_k = vec![0u32; n as usize];
        for (i, &r) in residues.iter().enumerate() {
            let slot = &mut residue_to_k[r as usize];
            if *slot != 0 {
                return Err(Error::InternalAssertion(format!(
                    "[k]_q mod n is not injective for {pair}: residue {r} repeats"
                )));
            }
            *slot = i as u32 + 1;
        }
        if residues[n as usize - 1] != 0 {
            return Err(Error::InternalAssertion(format!(
                "n does not divide [n]_q for {pair}"
            )));
        }
        let group = pair
            .order()
            .ok_or(Error::Overflow("q^n"))?
            .checked_sub(1)
            .ok_or(Error::Overflow("q^n"))?;
        let mut twist = Vec::with_capacity(n as usize);
        let mut t = 1u128;
        for _ in 0..n {
            t = t * q as u128 % group.max(1) as u128;
            twist.push(t as u64);
        }
        Ok(CosetIndexTable {
            n,
            residue_to_k,
            twist,
        })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn residue_to_k(&self) -> &[u32] {
        &self.residue_to_k
    }

    /// Index `k` for an element with discrete log `d`.
    pub fn k_for_dlog(&self, d: u32) -> u32 {
        self.residue_to_k[(d % self.n) as usize]
    }

    /// `q^k` reduced modulo the multiplicative group order.
    pub fn twist(&self, k: u32) -> u64 {
        self.twist[k as usize - 1]
    }
}

/// The `k in 1..=n` with `alpha in g^{[k]_q} H`.
pub fn coset_index(t: &FieldTable, ct: &CosetIndexTable, alpha: FieldElement) -> Result<u32> {
    let d = t.dlog(alpha).ok_or(Error::ZeroHasNoCoset)?;
    Ok(ct.k_for_dlog(d))
}

/// The coupling automorphism `phi_alpha: beta -> beta^{q^k}`, `k = k(alpha)`.
pub fn apply_coupling(
    t: &FieldTable,
    ct: &CosetIndexTable,
    alpha: FieldElement,
    beta: FieldElement,
) -> Result<FieldElement> {
    let k = coset_index(t, ct, alpha)?;
    Ok(match t.dlog(beta) {
        None => FieldElement::ZERO,
        Some(d) => {
            let group = t.order() as u64 - 1;
            t.exp((d as u128 * ct.twist(k) as u128 % group as u128) as u64)
        }
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BracketLemmaReport {
    pub n: u32,
    pub bracket_n: u64,
    pub n_divides_bracket: bool,
    pub power_in_h: bool,
}

impl BracketLemmaReport {
    pub fn holds(&self) -> bool {
        self.n_divides_bracket && self.power_in_h
    }
}

/// Integer form of the bracket lemma: `n | [n]_q`, and `g^{[n]_q} in H`,
/// i.e. `n` divides `[n]_q mod (q^n - 1)`.
pub fn bracket_lemma(pair: &DicksonPair) -> Result<BracketLemmaReport> {
    let n = pair.n();
    let bracket_n = bracket(n, pair.q())?;
    let group = pair.order().ok_or(Error::Overflow("q^n"))? - 1;
    let n_divides_bracket = bracket_n % n as u64 == 0;
    let power_in_h = group % n as u64 == 0 && (bracket_n % group.max(1)) % n as u64 == 0;
    Ok(BracketLemmaReport {
        n,
        bracket_n,
        n_divides_bracket,
        power_in_h,
    })
}
