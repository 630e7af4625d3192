//! The Dickson nearfield `DN_g(q, n) = (F_{q^n}, +, o)` and brute-force
//! computation of its center and kernel.

use rayon::prelude::*;
use serde::Serialize;

use crate::dickson::{self, BracketLemmaReport, CosetIndexTable, DicksonPair};
use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldTable, DEFAULT_ORDER_CAP};

#[derive(Debug, Clone)]
pub struct DicksonNearfield {
    field: FieldTable,
    pair: DicksonPair,
    cosets: CosetIndexTable,
}

impl DicksonNearfield {
    pub fn new(pair: DicksonPair) -> Result<Self> {
        Self::with_cap(pair, DEFAULT_ORDER_CAP)
    }

    pub fn with_cap(pair: DicksonPair, order_cap: u64) -> Result<Self> {
        let field = FieldTable::build_with_cap(pair.p(), pair.field_degree(), order_cap)?;
        Self::from_field(pair, field)
    }

    /// Uses `g' = g^offset` as the generator, where `g` is the default one.
    /// `offset` must be coprime to `q^n - 1`.
    pub fn with_generator_offset(pair: DicksonPair, order_cap: u64, offset: u64) -> Result<Self> {
        let field = FieldTable::build_with_cap(pair.p(), pair.field_degree(), order_cap)?;
        let g = field.exp(offset);
        let field = field.with_generator(g)?;
        Self::from_field(pair, field)
    }

    /// Assembles the nearfield over an already constructed `F_{q^n}`.
    pub fn from_field(pair: DicksonPair, field: FieldTable) -> Result<Self> {
        if field.characteristic() as u64 != pair.p() || field.degree() != pair.field_degree() {
            return Err(Error::InternalAssertion(format!(
                "field of order {}^{} cannot carry the pair {pair}",
                field.characteristic(),
                field.degree()
            )));
        }
        let cosets = CosetIndexTable::build(&pair)?;
        Ok(DicksonNearfield {
            field,
            pair,
            cosets,
        })
    }

    pub fn field(&self) -> &FieldTable {
        &self.field
    }

    pub fn pair(&self) -> &DicksonPair {
        &self.pair
    }

    pub fn cosets(&self) -> &CosetIndexTable {
        &self.cosets
    }

    pub fn order(&self) -> u32 {
        self.field.order()
    }

    pub fn generator(&self) -> FieldElement {
        self.field.generator()
    }

    /// `g^n`, the generator of `H`.
    pub fn h_generator(&self) -> FieldElement {
        self.field.exp(self.pair.n() as u64)
    }

    pub fn coset_index(&self, alpha: FieldElement) -> Result<u32> {
        dickson::coset_index(&self.field, &self.cosets, alpha)
    }

    pub fn apply_coupling(&self, alpha: FieldElement, beta: FieldElement) -> Result<FieldElement> {
        dickson::apply_coupling(&self.field, &self.cosets, alpha, beta)
    }

    /// `alpha o beta = alpha * beta^{q^k}` for `alpha in g^{[k]_q} H`, and `0 o beta = 0`.
    #[inline]
    pub fn circle(&self, alpha: FieldElement, beta: FieldElement) -> FieldElement {
        let (Some(da), Some(db)) = (self.field.dlog(alpha), self.field.dlog(beta)) else {
            return FieldElement::ZERO;
        };
        let group = self.field.order() as u64 - 1;
        let twist = self.cosets.twist(self.cosets.k_for_dlog(da));
        let twisted = (db as u128 * twist as u128 % group as u128) as u64;
        self.field.exp(da as u64 + twisted)
    }

    /// Two-sided inverse under `o`, solving `alpha * x^{q^k} = 1` in logarithms.
    pub fn circle_inv(&self, alpha: FieldElement) -> Result<FieldElement> {
        let da = self.field.dlog(alpha).ok_or(Error::DivisionByZero)? as u64;
        let group = self.field.order() as u64 - 1;
        let n = self.pair.n();
        let k = self.cosets.k_for_dlog(da as u32);
        // q^{-k} = q^{n-k} modulo q^n - 1
        let untwist = if k == n {
            1 % group
        } else {
            self.cosets.twist(n - k)
        };
        let neg = (group - da % group) % group;
        let x = self
            .field
            .exp((neg as u128 * untwist as u128 % group as u128) as u64);
        if self.circle(alpha, x) != FieldElement::ONE || self.circle(x, alpha) != FieldElement::ONE
        {
            return Err(Error::InternalAssertion(format!(
                "closed-form inverse of {alpha} is not two-sided"
            )));
        }
        Ok(x)
    }

    /// `C(R)`: elements commuting with everything under `o`, by a full commutant scan.
    pub fn center(&self) -> Vec<FieldElement> {
        let field = &self.field;
        (0..field.order())
            .into_par_iter()
            .map(FieldElement::from_code)
            .filter(|&x| {
                field
                    .elements()
                    .all(|y| self.circle(x, y) == self.circle(y, x))
            })
            .collect()
    }

    /// The subfield `F_q = {x : x^q = x}`.
    pub fn center_formula(&self) -> Vec<FieldElement> {
        self.field
            .fixed_field(self.pair.l())
            .expect("l divides l * n")
    }

    /// `D(R)`: elements `lambda` with `x -> x o lambda` additive. Additivity is
    /// tested against an F_p-basis in the second slot, which suffices because
    /// `r(x + c e) = r(x) + c r(e)` follows by induction and every element is
    /// a sum of basis multiples.
    pub fn kernel(&self) -> Vec<FieldElement> {
        let field = &self.field;
        let basis = field.additive_basis();
        (0..field.order())
            .into_par_iter()
            .map(FieldElement::from_code)
            .filter(|&lambda| {
                basis.iter().all(|&e| {
                    let re = self.circle(e, lambda);
                    field.elements().all(|x| {
                        self.circle(field.add(x, e), lambda)
                            == field.add(self.circle(x, lambda), re)
                    })
                })
            })
            .collect()
    }

    /// `D(R)` straight from the definition: all pairs `(alpha, beta)` per `lambda`.
    pub fn kernel_bruteforce(&self) -> Vec<FieldElement> {
        let field = &self.field;
        (0..field.order())
            .into_par_iter()
            .map(FieldElement::from_code)
            .filter(|&lambda| {
                field.elements().all(|a| {
                    let ra = self.circle(a, lambda);
                    field.elements().all(|b| {
                        self.circle(field.add(a, b), lambda)
                            == field.add(ra, self.circle(b, lambda))
                    })
                })
            })
            .collect()
    }

    /// `n | [n]_q` and `g^{[n]_q} in H`, the latter read off the tables.
    pub fn verify_bracket_lemma(&self) -> Result<BracketLemmaReport> {
        let mut report = dickson::bracket_lemma(&self.pair)?;
        let n = self.pair.n();
        let g_bracket = self.field.exp(report.bracket_n);
        let d = self.field.dlog(g_bracket).expect("powers of g are nonzero");
        report.power_in_h &= d.is_multiple_of(n) && self.coset_index(g_bracket)? == n;
        Ok(report)
    }

    pub fn verify_center_theorems(&self) -> Result<CenterTheoremReport> {
        self.center_theorems_with(&self.center())
    }

    /// Re-checks the intermediate claims behind `C(R) = F_q` against a
    /// previously computed commutant-scan center.
    pub fn center_theorems_with(&self, center: &[FieldElement]) -> Result<CenterTheoremReport> {
        let field = &self.field;
        let n = self.pair.n();
        let fq = self.center_formula();
        let fq_star: Vec<FieldElement> = fq.iter().copied().filter(|x| !x.is_zero()).collect();

        // F_q^* = <g^{[n]_q}>
        let bracket_n = dickson::bracket(n, self.pair.q())?;
        let h_q = field.exp(bracket_n);
        let mut cyclic: Vec<FieldElement> = Vec::new();
        let mut cur = FieldElement::ONE;
        loop {
            cyclic.push(cur);
            cur = field.mul(cur, h_q);
            if cur == FieldElement::ONE {
                break;
            }
        }
        cyclic.sort();
        let fq_star_cyclic = cyclic == fq_star;

        let fq_star_in_h = fq_star
            .iter()
            .all(|&x| field.dlog(x).is_some_and(|d| d % n == 0));
        let coupling_trivial_on_fq = fq_star
            .iter()
            .all(|&x| field.elements().all(|y| self.apply_coupling(x, y) == Ok(y)));
        let fq_in_center = fq.iter().all(|x| center.binary_search(x).is_ok());

        let gn = self.h_generator();
        let center_fixes_gn = center
            .iter()
            .filter(|x| !x.is_zero())
            .all(|&x| self.apply_coupling(x, gn) == Ok(gn));
        let generated_degree = field.generated_subfield(gn)?.degree;
        let center_in_fq = center.iter().all(|x| fq.binary_search(x).is_ok());

        Ok(CenterTheoremReport {
            fq_star_cyclic,
            fq_star_in_h,
            coupling_trivial_on_fq,
            fq_in_center,
            center_fixes_gn,
            generated_degree,
            expected_degree: self.pair.field_degree(),
            center_in_fq,
        })
    }

    /// Checks `phi_a o phi_b = phi_{phi_a(b) a}` (field product) on the listed
    /// triples `(a, b, x)` and `k(a o b) = k(a) + k(b) mod n` on the pairs `(a, b)`.
    pub fn coupling_law_holds(&self, a: FieldElement, b: FieldElement, x: FieldElement) -> bool {
        let phi_a_b = self.apply_coupling(a, b).expect("nonzero");
        let c = self.field.mul(phi_a_b, a);
        let lhs = self
            .apply_coupling(a, self.apply_coupling(b, x).expect("nonzero"))
            .expect("nonzero");
        lhs == self.apply_coupling(c, x).expect("nonzero")
    }

    pub fn index_additive(&self, a: FieldElement, b: FieldElement) -> bool {
        let n = self.pair.n();
        let ka = self.coset_index(a).expect("nonzero");
        let kb = self.coset_index(b).expect("nonzero");
        let kab = self.coset_index(self.circle(a, b)).expect("nonzero");
        (ka + kb) % n == kab % n
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CenterTheoremReport {
    /// `F_q^* = <g^{[n]_q}>`.
    pub fq_star_cyclic: bool,
    /// `F_q^* <= H`.
    pub fq_star_in_h: bool,
    /// `phi_x = id` for every `x` in `F_q^*`.
    pub coupling_trivial_on_fq: bool,
    pub fq_in_center: bool,
    /// `phi_x(g^n) = g^n` for every nonzero `x` in the center.
    pub center_fixes_gn: bool,
    /// Degree of `F_p<g^n>` over F_p.
    pub generated_degree: u32,
    pub expected_degree: u32,
    pub center_in_fq: bool,
}

impl CenterTheoremReport {
    /// `F_q` lies in the center, along with the supporting steps.
    pub fn fq_subset_holds(&self) -> bool {
        self.fq_star_cyclic && self.fq_star_in_h && self.coupling_trivial_on_fq && self.fq_in_center
    }

    pub fn generated_subfield_holds(&self) -> bool {
        self.generated_degree == self.expected_degree
    }

    /// The center lies in `F_q`, along with the supporting steps.
    pub fn center_subset_holds(&self) -> bool {
        self.center_fixes_gn && self.generated_subfield_holds() && self.center_in_fq
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn nf(q: u64, n: u32) -> DicksonNearfield {
        DicksonNearfield::new(DicksonPair::new(q, n).unwrap()).unwrap()
    }

    fn is_square(f: &FieldTable, a: FieldElement) -> bool {
        f.elements().any(|y| f.mul(y, y) == a)
    }

    fn cube(f: &FieldTable, b: FieldElement) -> FieldElement {
        f.mul(f.mul(b, b), b)
    }

    #[test]
    fn nine_element_table_against_squares() {
        // non-squares twist by b -> b^3, nonzero squares multiply plainly
        let r = nf(3, 2);
        let f = r.field();
        for a in f.elements() {
            for b in f.elements() {
                let expected = if a.is_zero() {
                    FieldElement::ZERO
                } else if is_square(f, a) {
                    f.mul(a, b)
                } else {
                    f.mul(a, cube(f, b))
                };
                assert_eq!(r.circle(a, b), expected, "a={a} b={b}");
            }
        }
    }

    #[test]
    fn coset_indices_in_nine() {
        let r = nf(3, 2);
        let g = r.generator();
        assert_eq!(r.coset_index(g).unwrap(), 1);
        assert_eq!(r.coset_index(r.h_generator()).unwrap(), 2);
        for x in [FieldElement::ONE, r.field().element(2).unwrap()] {
            assert_eq!(r.coset_index(x).unwrap(), 2);
        }
        assert_eq!(
            r.coset_index(FieldElement::ZERO),
            Err(Error::ZeroHasNoCoset)
        );
        for b in r.field().elements() {
            assert_eq!(r.apply_coupling(g, b).unwrap(), cube(r.field(), b));
            assert_eq!(r.apply_coupling(r.h_generator(), b).unwrap(), b);
        }
    }

    #[test]
    fn coupling_matches_frobenius_power() {
        let r = nf(4, 3);
        let f = r.field();
        for a in f.nonzero_elements() {
            let k = r.coset_index(a).unwrap();
            for b in f.elements() {
                assert_eq!(
                    r.apply_coupling(a, b).unwrap(),
                    f.frobenius(b, r.pair().l() * k)
                );
            }
            let shifted = f.mul(a, r.h_generator());
            assert_eq!(r.coset_index(shifted).unwrap(), k);
        }
    }

    #[test]
    fn circle_on_prime_subfield_is_field_product() {
        let r = nf(5, 2);
        let f = r.field();
        for x in f
            .fixed_field(1)
            .unwrap()
            .into_iter()
            .filter(|x| !x.is_zero())
        {
            assert_eq!(r.coset_index(x).unwrap(), 2);
            assert_eq!(r.circle_inv(x).unwrap(), f.inv(x).unwrap());
            for t in f.elements() {
                assert_eq!(r.circle(x, t), f.mul(x, t));
            }
        }
    }

    #[test]
    fn inverses_two_sided() {
        for (q, n) in [(3, 2), (5, 4), (7, 3), (4, 3)] {
            let r = nf(q, n);
            assert_eq!(r.circle_inv(FieldElement::ONE).unwrap(), FieldElement::ONE);
            for a in r.field().nonzero_elements() {
                let x = r.circle_inv(a).unwrap();
                assert_eq!(r.circle(a, x), FieldElement::ONE);
                assert_eq!(r.circle(x, a), FieldElement::ONE);
            }
            assert_eq!(r.circle_inv(FieldElement::ZERO), Err(Error::DivisionByZero));
        }
    }

    #[test]
    fn center_and_kernel_of_nine() {
        let r = nf(3, 2);
        let codes = |xs: Vec<FieldElement>| xs.into_iter().map(|x| x.code()).collect::<Vec<_>>();
        assert_eq!(codes(r.center()), vec![0, 1, 2]);
        assert_eq!(codes(r.center_formula()), vec![0, 1, 2]);
        assert_eq!(codes(r.kernel()), vec![0, 1, 2]);
        assert_eq!(codes(r.kernel_bruteforce()), vec![0, 1, 2]);
    }

    #[test]
    fn degenerate_pair_is_the_field() {
        let r = nf(9, 1);
        let f = r.field();
        for a in f.elements() {
            for b in f.elements() {
                assert_eq!(r.circle(a, b), f.mul(a, b));
            }
        }
        assert_eq!(r.center().len(), 9);
        assert_eq!(r.kernel().len(), 9);
    }

    #[test]
    fn center_of_eighty_one() {
        let r = nf(9, 2);
        let center = r.center();
        assert_eq!(center.len(), 9);
        assert_eq!(center, r.center_formula());
        let f = r.field();
        assert!(center.iter().all(|&x| f.pow(x, 9) == x));
    }

    #[test]
    fn bracket_lemma_reports() {
        let r = nf(3, 2);
        let rep = r.verify_bracket_lemma().unwrap();
        assert_eq!(rep.bracket_n, 4);
        assert!(rep.holds());
        assert_eq!(nf(5, 4).verify_bracket_lemma().unwrap().bracket_n, 156);
        let t = nf(11, 1).verify_bracket_lemma().unwrap();
        assert_eq!((t.bracket_n, t.holds()), (1, true));
    }

    #[test]
    fn center_theorem_steps() {
        let r = nf(3, 2);
        let f = r.field();
        // F_3^* = {g^4, g^8 = 1}, both with even logarithm
        let fq_star: Vec<u32> = r.center_formula()[1..]
            .iter()
            .map(|&x| f.dlog(x).unwrap())
            .collect();
        let mut sorted = fq_star.clone();
        sorted.sort();
        assert_eq!(sorted, vec![0, 4]);
        let steps = r.verify_center_theorems().unwrap();
        assert_eq!(steps.generated_degree, 2);
        assert!(steps.fq_subset_holds());
        assert!(steps.center_subset_holds());
    }

    #[test]
    fn alternative_generator_same_center() {
        let pair = DicksonPair::new(5, 2).unwrap();
        let a = DicksonNearfield::new(pair).unwrap();
        let b = DicksonNearfield::with_generator_offset(pair, DEFAULT_ORDER_CAP, 5).unwrap();
        assert_ne!(a.generator(), b.generator());
        assert_eq!(a.center(), b.center());
        assert!(DicksonNearfield::with_generator_offset(pair, DEFAULT_ORDER_CAP, 2).is_err());
    }

    #[test]
    fn mismatched_field_rejected() {
        let pair = DicksonPair::new(3, 2).unwrap();
        let f = FieldTable::build(3, 3).unwrap();
        assert!(matches!(
            DicksonNearfield::from_field(pair, f),
            Err(Error::InternalAssertion(_))
        ));
    }
}
