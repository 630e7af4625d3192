//! Exit criteria. Each test prints one PASS/FAIL line; run with
//! `cargo test -p dickson-core --test acceptance -- --nocapture --test-threads 1`
//! to see them in order.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use dickson_core::numtheory::{divisors, gcd, prime_power};
use dickson_core::{
    bracket_lemma, enumerate_pairs, verify_axioms, verify_coupling, DicksonNearfield, DicksonPair,
    FieldElement, FieldTable, Limits, Mode, DEFAULT_ORDER_CAP,
};

/// Orders up to which the cubic oracles run exhaustively.
const ORACLE_ORDER: u32 = 343;
const AXIOM_ORDER: u32 = 729;
const FRESHMAN_ORDER: u64 = 289;

fn report(id: u32, name: &str, ok: bool, elapsed: Duration, detail: &str) {
    let tag = if ok { "PASS" } else { "FAIL" };
    println!("[{tag}] criterion {id}: {name} ({:.2?}) {detail}", elapsed);
}

/// Proper instances: every Dickson pair with `n >= 2` and `q^n <= 1024`.
fn instances() -> Vec<DicksonPair> {
    enumerate_pairs(1024)
        .into_iter()
        .filter(|p| p.n() >= 2)
        .collect()
}

#[test]
fn criterion_1_center_equals_subfield() {
    let start = Instant::now();
    let expected: BTreeSet<(u64, u32)> = [
        (3, 2),
        (4, 3),
        (5, 2),
        (7, 2),
        (9, 2),
        (11, 2),
        (13, 2),
        (17, 2),
        (19, 2),
        (7, 3),
        (23, 2),
        (25, 2),
        (5, 4),
        (27, 2),
        (29, 2),
        (31, 2),
    ]
    .into_iter()
    .collect();
    let found: BTreeSet<(u64, u32)> = instances().iter().map(|p| (p.q(), p.n())).collect();
    let mut ok = found == expected;
    let mut failures = Vec::new();
    for pair in instances() {
        let nf = DicksonNearfield::new(pair).unwrap();
        let center = nf.center();
        // x^q = x computed with plain powering, independent of fixed_field
        let fixed: Vec<FieldElement> = nf
            .field()
            .elements()
            .filter(|&x| nf.field().pow(x, pair.q()) == x)
            .collect();
        let good =
            center == fixed && center == nf.center_formula() && center.len() as u64 == pair.q();
        if !good {
            failures.push(pair.to_string());
        }
        ok &= good;
    }
    let elapsed = start.elapsed();
    ok &= elapsed < Duration::from_secs(10);
    report(
        1,
        "C(R) = {x : x^q = x}, |C(R)| = q",
        ok,
        elapsed,
        &format!("{} instances {failures:?}", found.len()),
    );
    assert!(ok);
}

#[test]
fn criterion_2_kernel_equals_center() {
    let start = Instant::now();
    let mut ok = true;
    let mut oracle_runs = 0;
    for pair in instances() {
        let nf = DicksonNearfield::new(pair).unwrap();
        let kernel = nf.kernel();
        ok &= kernel == nf.center();
        if nf.order() <= ORACLE_ORDER {
            ok &= nf.kernel_bruteforce() == kernel;
            oracle_runs += 1;
        }
    }
    let elapsed = start.elapsed();
    ok &= elapsed < Duration::from_secs(30);
    report(
        2,
        "D(R) = C(R); basis scan agrees with all-pairs oracle",
        ok,
        elapsed,
        &format!("oracle on {oracle_runs} instances"),
    );
    assert!(ok);
}

#[test]
fn criterion_3_nearfield_axioms() {
    let start = Instant::now();
    let limits = Limits::default();
    let mut ok = true;
    let mut count = 0;
    for pair in instances()
        .into_iter()
        .filter(|p| p.order().unwrap() <= AXIOM_ORDER as u64)
    {
        let nf = DicksonNearfield::new(pair).unwrap();
        let rep = verify_axioms(&nf, Mode::Exhaustive, 0, &limits).unwrap();
        let exhaustive = rep.left_distributivity.mode == Mode::Exhaustive
            && rep.circle_associativity.mode == Mode::Exhaustive
            && rep.circle_inverses.mode == Mode::Exhaustive;
        let good = exhaustive
            && rep.is_nearfield()
            && !rep.right_distributivity.holds
            && rep.right_distributivity.witness.is_some()
            && !rep.commutativity.holds
            && rep.commutativity.witness.is_some();
        if !good {
            println!("  axioms failed on {pair}: {rep:?}");
        }
        ok &= good;
        count += 1;
    }
    report(3, "left distributivity/associativity/group exhaustive; right distributivity and commutativity fail", ok, start.elapsed(), &format!("{count} instances"));
    assert!(ok);
}

#[test]
fn criterion_4_bracket_lemma() {
    let start = Instant::now();
    let pairs = enumerate_pairs(DEFAULT_ORDER_CAP);
    let ok_pairs = pairs
        .iter()
        .all(|p| bracket_lemma(p).is_ok_and(|r| r.holds()));
    // table-based variant on the criterion-1 instances
    let ok_tables = instances().into_iter().all(|p| {
        DicksonNearfield::new(p)
            .unwrap()
            .verify_bracket_lemma()
            .unwrap()
            .holds()
    });
    let elapsed = start.elapsed();
    let ok = ok_pairs && ok_tables;
    report(
        4,
        "n | [n]_q and g^{[n]_q} H = H",
        ok,
        elapsed,
        &format!("{} pairs", pairs.len()),
    );
    assert!(ok);
}

#[test]
fn criterion_5_generated_subfield() {
    let start = Instant::now();
    let ok = instances().into_iter().all(|pair| {
        let nf = DicksonNearfield::new(pair).unwrap();
        nf.field()
            .generated_subfield(nf.h_generator())
            .unwrap()
            .degree
            == pair.l() * pair.n()
    });
    report(5, "F_p<g^n> = F_{q^n}", ok, start.elapsed(), "");
    assert!(ok);
}

#[test]
fn criterion_6_coupling_law() {
    let start = Instant::now();
    let limits = Limits::default();
    let mut ok = true;
    let mut count = 0;
    for pair in instances()
        .into_iter()
        .filter(|p| p.order().unwrap() <= ORACLE_ORDER as u64)
    {
        let nf = DicksonNearfield::new(pair).unwrap();
        let rep = verify_coupling(&nf, 0, &limits);
        let order = nf.order() as u64;
        ok &= rep.coupling_law.holds
            && rep.coupling_law.mode == Mode::Exhaustive
            && rep.coupling_law.checked == (order - 1) * (order - 1) * order
            && rep.index_additivity.holds
            && rep.index_additivity.mode == Mode::Exhaustive;
        count += 1;
    }
    report(
        6,
        "phi_a o phi_b = phi_{phi_a(b) a}; k(a o b) = k(a) + k(b)",
        ok,
        start.elapsed(),
        &format!("{count} instances"),
    );
    assert!(ok);
}

#[test]
fn criterion_7_freshman_and_fixed_fields() {
    let start = Instant::now();
    let mut ok = true;
    let mut fields = 0;
    for order in 2..=FRESHMAN_ORDER {
        let Some((p, m)) = prime_power(order) else {
            continue;
        };
        let t = FieldTable::build(p, m).unwrap();
        for s in 0..=m {
            ok &= t.elements().all(|a| {
                t.elements().all(|b| {
                    t.frobenius(t.add(a, b), s) == t.add(t.frobenius(a, s), t.frobenius(b, s))
                })
            });
        }
        ok &= fixed_field_sizes_ok(&t);
        fields += 1;
    }
    for pair in instances() {
        ok &= fixed_field_sizes_ok(DicksonNearfield::new(pair).unwrap().field());
    }
    report(
        7,
        "(a+b)^{p^s} = a^{p^s} + b^{p^s}; |Fix(psi^s)| = p^s",
        ok,
        start.elapsed(),
        &format!("{fields} fields exhaustive"),
    );
    assert!(ok);
}

fn fixed_field_sizes_ok(t: &FieldTable) -> bool {
    let p = t.characteristic() as u64;
    divisors(t.degree())
        .into_iter()
        .all(|s| t.fixed_field(s).unwrap().len() as u64 == p.pow(s))
}

#[test]
fn criterion_8_generator_independence() {
    let start = Instant::now();
    let mut ok = true;
    let mut detail = String::new();
    for (q, n) in [(3u64, 2u32), (5, 2)] {
        let pair = DicksonPair::new(q, n).unwrap();
        let base = DicksonNearfield::new(pair).unwrap();
        let reference = base.center();
        let group = base.order() as u64 - 1;
        let mut generators = BTreeSet::new();
        for offset in (1..group).filter(|&e| gcd(e, group) == 1) {
            let nf =
                DicksonNearfield::with_generator_offset(pair, DEFAULT_ORDER_CAP, offset).unwrap();
            ok &= nf.center() == reference;
            generators.insert(nf.generator());
        }
        ok &= generators.len() >= 2;
        detail.push_str(&format!("({q},{n}): {} generators; ", generators.len()));
    }
    report(
        8,
        "center independent of the generator",
        ok,
        start.elapsed(),
        &detail,
    );
    assert!(ok);
}

#[test]
fn criterion_9_degenerate_pairs() {
    let start = Instant::now();
    let limits = Limits::default();
    let mut ok = true;
    let mut count = 0;
    for pair in enumerate_pairs(128).into_iter().filter(|p| p.is_trivial()) {
        let nf = DicksonNearfield::new(pair).unwrap();
        let f = nf.field();
        let rep = verify_axioms(&nf, Mode::Exhaustive, 0, &limits).unwrap();
        ok &= rep.all_ok() && rep.right_distributivity.holds && rep.commutativity.holds;
        ok &= nf.center().len() as u32 == nf.order();
        ok &= f
            .elements()
            .all(|a| f.elements().all(|b| nf.circle(a, b) == f.mul(a, b)));
        count += 1;
    }
    report(
        9,
        "(q,1) gives back the field",
        ok,
        start.elapsed(),
        &format!("{count} pairs"),
    );
    assert!(ok);
}
