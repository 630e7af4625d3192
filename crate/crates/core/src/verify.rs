//! Axiom checking and the full machine-readable structure report.

use std::collections::BTreeMap;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::dickson::BracketLemmaReport;
use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};
use crate::nearfield::{CenterTheoremReport, DicksonNearfield};

/// Above this order additive associativity is always sampled.
const ADDITIVE_ASSOCIATIVITY_EXHAUSTIVE: u32 = 729;

/// Up to this order the verifier works from dense operation tables.
const DENSE_TABLE_CAP: u32 = 2048;

/// Size limits shared by the verifiers and exporters.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Largest field the constructors will tabulate.
    pub order_cap: u64,
    /// Largest order for which triple loops run exhaustively.
    pub exhaustive_cap: u32,
    /// Largest order for which pair loops run exhaustively.
    pub pair_cap: u32,
    /// Largest order on which the cubic oracles (kernel, coupling law) run.
    pub oracle_cap: u32,
    /// Largest order for Cayley table export.
    pub export_cap: u32,
    /// Samples drawn per sampled law.
    pub samples: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            order_cap: crate::field::DEFAULT_ORDER_CAP,
            exhaustive_cap: 729,
            pair_cap: 4096,
            oracle_cap: 343,
            export_cap: 4096,
            samples: 100_000,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Exhaustive,
    Sampled(u64),
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mode::Exhaustive => write!(f, "exhaustive"),
            Mode::Sampled(n) => write!(f, "sampled({n})"),
        }
    }
}

impl Serialize for Mode {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Outcome of one law.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub holds: bool,
    /// Whether the law is supposed to hold on this instance.
    pub expected: bool,
    pub mode: Mode,
    pub checked: u64,
    /// Lexicographically first counterexample found, as element codes.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<u32>>,
}

impl Verdict {
    pub fn ok(&self) -> bool {
        self.holds == self.expected
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub additive_closure: Verdict,
    pub additive_identity: Verdict,
    pub additive_inverses: Verdict,
    pub additive_commutativity: Verdict,
    pub additive_associativity: Verdict,
    pub elementary_abelian: Verdict,
    pub zero_absorbing: Verdict,
    pub circle_closure: Verdict,
    pub circle_identity: Verdict,
    pub circle_inverses: Verdict,
    pub circle_associativity: Verdict,
    pub left_distributivity: Verdict,
    pub right_distributivity: Verdict,
    pub commutativity: Verdict,
}

impl AxiomReport {
    pub fn verdicts(&self) -> [(&'static str, &Verdict); 14] {
        [
            ("additive_closure", &self.additive_closure),
            ("additive_identity", &self.additive_identity),
            ("additive_inverses", &self.additive_inverses),
            ("additive_commutativity", &self.additive_commutativity),
            ("additive_associativity", &self.additive_associativity),
            ("elementary_abelian", &self.elementary_abelian),
            ("zero_absorbing", &self.zero_absorbing),
            ("circle_closure", &self.circle_closure),
            ("circle_identity", &self.circle_identity),
            ("circle_inverses", &self.circle_inverses),
            ("circle_associativity", &self.circle_associativity),
            ("left_distributivity", &self.left_distributivity),
            ("right_distributivity", &self.right_distributivity),
            ("commutativity", &self.commutativity),
        ]
    }

    /// Every law came out the way it should for a nearfield of this pair.
    pub fn all_ok(&self) -> bool {
        self.verdicts().iter().all(|(_, v)| v.ok())
    }

    /// All nearfield axioms hold, ignoring the expected failures.
    pub fn is_nearfield(&self) -> bool {
        self.verdicts()
            .iter()
            .filter(|(name, _)| !matches!(*name, "right_distributivity" | "commutativity"))
            .all(|(_, v)| v.holds)
    }
}

trait Ops: Sync {
    fn add(&self, a: u32, b: u32) -> u32;
    fn circ(&self, a: u32, b: u32) -> u32;
}

struct Direct<'a>(&'a DicksonNearfield);

impl Ops for Direct<'_> {
    fn add(&self, a: u32, b: u32) -> u32 {
        self.0
            .field()
            .add(FieldElement::from_code(a), FieldElement::from_code(b))
            .code()
    }

    fn circ(&self, a: u32, b: u32) -> u32 {
        self.0
            .circle(FieldElement::from_code(a), FieldElement::from_code(b))
            .code()
    }
}

/// Dense tables; codes fit in `u16` below `DENSE_TABLE_CAP`.
struct Dense {
    order: usize,
    add: Vec<u16>,
    circ: Vec<u16>,
}

impl Dense {
    fn build(nf: &DicksonNearfield) -> Self {
        let order = nf.order() as usize;
        let direct = Direct(nf);
        let table = |op: &(dyn Fn(u32, u32) -> u32 + Sync)| -> Vec<u16> {
            (0..order as u32)
                .into_par_iter()
                .flat_map_iter(|a| (0..order as u32).map(move |b| op(a, b) as u16))
                .collect()
        };
        let add = table(&|a, b| direct.add(a, b));
        let circ = table(&|a, b| direct.circ(a, b));
        Dense { order, add, circ }
    }
}

impl Ops for Dense {
    #[inline]
    fn add(&self, a: u32, b: u32) -> u32 {
        self.add[a as usize * self.order + b as usize] as u32
    }

    #[inline]
    fn circ(&self, a: u32, b: u32) -> u32 {
        self.circ[a as usize * self.order + b as usize] as u32
    }
}

/// How one law's domain is explored.
#[derive(Debug, Clone, Copy)]
struct Plan {
    mode: Mode,
    /// Smallest code in the domain (0 for all of R, 1 for R^*).
    low: u32,
    /// Smallest code for the third slot of a triple.
    third_low: u32,
    order: u32,
    seed: u64,
    stream: u64,
}

impl Plan {
    fn rng(&self) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(self.stream);
        rng
    }

    fn verdict(&self, expected: bool, checked: u64, witness: Option<Vec<u32>>) -> Verdict {
        Verdict {
            holds: witness.is_none(),
            expected,
            mode: self.mode,
            checked,
            witness,
        }
    }

    fn singles(&self, expected: bool, pred: impl Fn(u32) -> bool + Sync) -> Verdict {
        let witness = (self.low..self.order)
            .into_par_iter()
            .find_first(|&a| !pred(a))
            .map(|a| vec![a]);
        let plan = Plan {
            mode: Mode::Exhaustive,
            ..*self
        };
        plan.verdict(expected, (self.order - self.low) as u64, witness)
    }

    fn pairs(&self, expected: bool, pred: impl Fn(u32, u32) -> bool + Sync) -> Verdict {
        let (low, high) = (self.low, self.order);
        match self.mode {
            Mode::Exhaustive => {
                let witness = (low..high)
                    .into_par_iter()
                    .find_map_first(|a| (low..high).find(|&b| !pred(a, b)).map(|b| vec![a, b]));
                let span = (high - low) as u64;
                self.verdict(expected, span * span, witness)
            }
            Mode::Sampled(count) => {
                let mut rng = self.rng();
                let samples: Vec<[u32; 2]> = (0..count)
                    .map(|_| [rng.gen_range(low..high), rng.gen_range(low..high)])
                    .collect();
                let witness = samples
                    .par_iter()
                    .filter(|s| !pred(s[0], s[1]))
                    .min()
                    .map(|s| s.to_vec());
                self.verdict(expected, count, witness)
            }
        }
    }

    fn triples(&self, expected: bool, pred: impl Fn(u32, u32, u32) -> bool + Sync) -> Verdict {
        let (low, high, third) = (self.low, self.order, self.third_low);
        match self.mode {
            Mode::Exhaustive => {
                let witness = (low..high).into_par_iter().find_map_first(|a| {
                    (low..high).find_map(|b| {
                        (third..high)
                            .find(|&c| !pred(a, b, c))
                            .map(|c| vec![a, b, c])
                    })
                });
                let span = (high - low) as u64;
                self.verdict(expected, span * span * (high - third) as u64, witness)
            }
            Mode::Sampled(count) => {
                let mut rng = self.rng();
                let samples: Vec<[u32; 3]> = (0..count)
                    .map(|_| {
                        [
                            rng.gen_range(low..high),
                            rng.gen_range(low..high),
                            rng.gen_range(third..high),
                        ]
                    })
                    .collect();
                let witness = samples
                    .par_iter()
                    .filter(|s| !pred(s[0], s[1], s[2]))
                    .min()
                    .map(|s| s.to_vec());
                self.verdict(expected, count, witness)
            }
        }
    }
}

/// `k * x` in the additive group, by double-and-add.
fn additive_multiple<O: Ops>(ops: &O, x: u32, mut k: u64) -> u32 {
    let mut acc = 0;
    let mut base = x;
    while k > 0 {
        if k & 1 == 1 {
            acc = ops.add(acc, base);
        }
        base = ops.add(base, base);
        k >>= 1;
    }
    acc
}

/// Checks every nearfield law on `nf`. Right distributivity and commutativity
/// are expected to fail exactly when `n >= 2`.
pub fn verify_axioms(
    nf: &DicksonNearfield,
    mode: Mode,
    seed: u64,
    limits: &Limits,
) -> Result<AxiomReport> {
    let order = nf.order();
    if mode == Mode::Exhaustive && order > limits.exhaustive_cap {
        return Err(Error::CapExceeded {
            what: "exhaustive axiom check",
            size: order as u64,
            cap: limits.exhaustive_cap as u64,
        });
    }
    if order <= DENSE_TABLE_CAP {
        Ok(run_axioms(nf, &Dense::build(nf), mode, seed, limits))
    } else {
        Ok(run_axioms(nf, &Direct(nf), mode, seed, limits))
    }
}

fn run_axioms<O: Ops>(
    nf: &DicksonNearfield,
    ops: &O,
    mode: Mode,
    seed: u64,
    limits: &Limits,
) -> AxiomReport {
    let order = nf.order();
    let p = nf.field().characteristic() as u64;
    let is_field = nf.pair().is_trivial();
    let sampled = Mode::Sampled(limits.samples);

    let triple_mode = mode;
    let pair_mode = if order <= limits.pair_cap {
        Mode::Exhaustive
    } else {
        sampled
    };
    let add_assoc_mode = match mode {
        Mode::Exhaustive if order > ADDITIVE_ASSOCIATIVITY_EXHAUSTIVE => sampled,
        m => m,
    };

    let mut stream = 0u64;
    let mut plan = |mode: Mode, low: u32| {
        stream += 1;
        Plan {
            mode,
            low,
            third_low: low,
            order,
            seed,
            stream,
        }
    };

    let additive_closure = plan(pair_mode, 0).pairs(true, |a, b| ops.add(a, b) < order);
    let additive_identity =
        plan(Mode::Exhaustive, 0).singles(true, |a| ops.add(a, 0) == a && ops.add(0, a) == a);
    let additive_inverses = plan(Mode::Exhaustive, 0).singles(true, |a| {
        let neg = nf.field().neg(FieldElement::from_code(a)).code();
        ops.add(a, neg) == 0 && ops.add(neg, a) == 0
    });
    let additive_commutativity =
        plan(pair_mode, 0).pairs(true, |a, b| ops.add(a, b) == ops.add(b, a));
    let additive_associativity = plan(add_assoc_mode, 0).triples(true, |a, b, c| {
        ops.add(ops.add(a, b), c) == ops.add(a, ops.add(b, c))
    });
    let elementary_abelian =
        plan(Mode::Exhaustive, 0).singles(true, |a| additive_multiple(ops, a, p) == 0);

    let zero_absorbing =
        plan(Mode::Exhaustive, 0).singles(true, |a| ops.circ(0, a) == 0 && ops.circ(a, 0) == 0);
    let circle_closure = plan(pair_mode, 1).pairs(true, |a, b| {
        let c = ops.circ(a, b);
        c != 0 && c < order
    });
    let circle_identity =
        plan(Mode::Exhaustive, 0).singles(true, |a| ops.circ(1, a) == a && ops.circ(a, 1) == a);
    let circle_inverses = plan(Mode::Exhaustive, 1).singles(true, |a| {
        nf.circle_inv(FieldElement::from_code(a)).is_ok_and(|x| {
            let x = x.code();
            ops.circ(a, x) == 1 && ops.circ(x, a) == 1
        })
    });
    let circle_associativity = plan(triple_mode, 0).triples(true, |a, b, c| {
        ops.circ(ops.circ(a, b), c) == ops.circ(a, ops.circ(b, c))
    });
    let left_distributivity = plan(triple_mode, 0).triples(true, |a, b, c| {
        ops.circ(a, ops.add(b, c)) == ops.add(ops.circ(a, b), ops.circ(a, c))
    });
    let right_distributivity = plan(triple_mode, 0).triples(is_field, |a, b, c| {
        ops.circ(ops.add(a, b), c) == ops.add(ops.circ(a, c), ops.circ(b, c))
    });
    let commutativity = plan(pair_mode, 0).pairs(is_field, |a, b| ops.circ(a, b) == ops.circ(b, a));

    AxiomReport {
        additive_closure,
        additive_identity,
        additive_inverses,
        additive_commutativity,
        additive_associativity,
        elementary_abelian,
        zero_absorbing,
        circle_closure,
        circle_identity,
        circle_inverses,
        circle_associativity,
        left_distributivity,
        right_distributivity,
        commutativity,
    }
}

/// The coupling-map law and the additivity of coset indices under `o`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CouplingReport {
    pub coupling_law: Verdict,
    pub index_additivity: Verdict,
}

/// Triples `(a, b, x)` with `a, b` nonzero are scanned exhaustively up to
/// `limits.oracle_cap`; pairs up to `limits.pair_cap`.
pub fn verify_coupling(nf: &DicksonNearfield, seed: u64, limits: &Limits) -> CouplingReport {
    let order = nf.order();
    let sampled = Mode::Sampled(limits.samples);
    let triple_mode = if order <= limits.oracle_cap {
        Mode::Exhaustive
    } else {
        sampled
    };
    let pair_mode = if order <= limits.pair_cap {
        Mode::Exhaustive
    } else {
        sampled
    };
    let e = FieldElement::from_code;

    let coupling_law = Plan {
        mode: triple_mode,
        low: 1,
        third_low: 0,
        order,
        seed,
        stream: 101,
    }
    .triples(true, |a, b, x| nf.coupling_law_holds(e(a), e(b), e(x)));
    let index_additivity = Plan {
        mode: pair_mode,
        low: 1,
        third_low: 1,
        order,
        seed,
        stream: 102,
    }
    .pairs(true, |a, b| nf.index_additive(e(a), e(b)));
    CouplingReport {
        coupling_law,
        index_additivity,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairSection {
    pub q: u64,
    pub p: u64,
    pub l: u32,
    pub n: u32,
    pub order: u32,
    pub trivial: bool,
    pub field: FieldSpec,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CenterSection {
    pub size: usize,
    pub elements: Vec<u32>,
    /// Size of `{x : x^q = x}`.
    pub formula_size: usize,
    pub matches_formula: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KernelSection {
    pub size: usize,
    pub elements: Vec<u32>,
    pub method: &'static str,
    /// Agreement with the all-pairs scan, when it was run.
    pub oracle_agrees: Option<bool>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TheoremFlags {
    pub lemma_1_5: bool,
    pub lemma_2_8: bool,
    pub thm_2_6: bool,
    pub thm_2_9: bool,
    pub ellers_karzel: bool,
    pub coupling_law: bool,
    pub index_additivity: bool,
}

impl TheoremFlags {
    pub fn all(&self) -> bool {
        self.lemma_1_5
            && self.lemma_2_8
            && self.thm_2_6
            && self.thm_2_9
            && self.ellers_karzel
            && self.coupling_law
            && self.index_additivity
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TheoremDetails {
    pub bracket_lemma: BracketLemmaReport,
    pub center_steps: CenterTheoremReport,
    pub coupling: CouplingReport,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StructureReport {
    pub pair: PairSection,
    pub axioms: AxiomReport,
    pub center: CenterSection,
    pub kernel: KernelSection,
    pub theorems: TheoremFlags,
    pub witnesses: BTreeMap<String, Vec<u32>>,
    pub mode: Mode,
    pub seed: u64,
    pub details: TheoremDetails,
    pub passed: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerifyOptions {
    pub mode: Mode,
    pub seed: u64,
    pub limits: Limits,
}

impl VerifyOptions {
    /// Exhaustive when the instance fits under the exhaustive cap, sampled otherwise.
    pub fn auto(order: u32, seed: u64, limits: Limits) -> Self {
        let mode = if order <= limits.exhaustive_cap {
            Mode::Exhaustive
        } else {
            Mode::Sampled(limits.samples)
        };
        VerifyOptions { mode, seed, limits }
    }
}

fn codes(xs: &[FieldElement]) -> Vec<u32> {
    xs.iter().map(|x| x.code()).collect()
}

/// Runs every axiom and theorem check on `nf`.
pub fn structure_report(nf: &DicksonNearfield, opts: &VerifyOptions) -> Result<StructureReport> {
    let pair = nf.pair();
    let axioms = verify_axioms(nf, opts.mode, opts.seed, &opts.limits)?;

    let center = nf.center();
    let formula = nf.center_formula();
    let kernel = nf.kernel();
    let oracle_agrees =
        (nf.order() <= opts.limits.oracle_cap).then(|| nf.kernel_bruteforce() == kernel);

    let bracket_lemma = nf.verify_bracket_lemma()?;
    let center_steps = nf.center_theorems_with(&center)?;
    let coupling = verify_coupling(nf, opts.seed, &opts.limits);

    let theorems = TheoremFlags {
        lemma_1_5: bracket_lemma.holds(),
        lemma_2_8: center_steps.generated_subfield_holds(),
        thm_2_6: center_steps.fq_subset_holds(),
        thm_2_9: center_steps.center_subset_holds(),
        ellers_karzel: kernel == center && center.len() as u64 == pair.q(),
        coupling_law: coupling.coupling_law.holds,
        index_additivity: coupling.index_additivity.holds,
    };

    let mut witnesses = BTreeMap::new();
    for (name, v) in axioms.verdicts() {
        if let Some(w) = &v.witness {
            witnesses.insert(name.to_string(), w.clone());
        }
    }
    for (name, v) in [
        ("coupling_law", &coupling.coupling_law),
        ("index_additivity", &coupling.index_additivity),
    ] {
        if let Some(w) = &v.witness {
            witnesses.insert(name.to_string(), w.clone());
        }
    }

    let passed =
        theorems.all() && axioms.all_ok() && center == formula && oracle_agrees != Some(false);

    Ok(StructureReport {
        pair: PairSection {
            q: pair.q(),
            p: pair.p(),
            l: pair.l(),
            n: pair.n(),
            order: nf.order(),
            trivial: pair.is_trivial(),
            field: nf.field().spec().clone(),
        },
        axioms,
        center: CenterSection {
            size: center.len(),
            elements: codes(&center),
            formula_size: formula.len(),
            matches_formula: center == formula,
        },
        kernel: KernelSection {
            size: kernel.len(),
            elements: codes(&kernel),
            method: "basis",
            oracle_agrees,
        },
        theorems,
        witnesses,
        mode: opts.mode,
        seed: opts.seed,
        details: TheoremDetails {
            bracket_lemma,
            center_steps,
            coupling,
        },
        passed,
    })
}
