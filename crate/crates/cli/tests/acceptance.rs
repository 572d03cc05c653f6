//! Acceptance run: one PASS or FAIL line per criterion.

mod common;

use std::fs;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tilesum_core::edge::EdgeMap;
use tilesum_core::engine::{
    build_accepting_tiling, claims_audit, forced_search, verify_zero, SearchOutcome,
};
use tilesum_core::group::{
    basis_change, basis_restore, boundary, certificate_from_witness, eval_word, flow_decompose,
    flow_to_word, lamplighter_bindings, make_submonoid_instance, metabelian_eval,
    verify_submonoid_certificate, Flavor, Letter, SubmonoidVerifier, Word, WreathElement,
};
use tilesum_core::rational::{
    accepted_elements, certificate_to_word, nfa_accepts, rational_instance, regex_to_nfa,
};
use tilesum_core::samples::{eraser, looper, parity_eraser};
use tilesum_core::semimodule::{
    certificate_witness, subset_sum_bounded, tiling_to_instance, tiling_to_subset_sum,
    ModuleElement, Search, SubsetSumInstance,
};
use tilesum_core::tiling::{compile_tiles, initial_map};
use tilesum_core::tm::{normalize, run, RunOutcome, TuringMachine};
use tilesum_core::{Color, EdgeId, Point, Ring, StateId, SymbolId, Window};

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

struct Pair {
    tm: TuringMachine,
    word: Vec<SymbolId>,
}

fn corpus() -> Vec<(&'static str, TuringMachine)> {
    vec![
        ("eraser", normalize(&eraser())),
        ("parity eraser", normalize(&parity_eraser())),
        ("looper", normalize(&looper())),
    ]
}

fn words(tm: &TuringMachine, max_len: usize) -> Vec<Vec<SymbolId>> {
    let alphabet: Vec<SymbolId> = tm.input_alphabet().iter().copied().collect();
    let mut out = vec![];
    let mut layer: Vec<Vec<SymbolId>> = vec![vec![]];
    for _ in 0..max_len {
        layer = layer
            .iter()
            .flat_map(|w| alphabet.iter().map(move |&a| [w.as_slice(), &[a]].concat()))
            .collect();
        out.extend(layer.iter().cloned());
    }
    out
}

fn accepted_pairs() -> Vec<Pair> {
    let mut out = vec![];
    for (_, tm) in corpus() {
        for w in words(&tm, 4) {
            if matches!(run(&tm, &w, 10_000).unwrap(), RunOutcome::Accepted(_)) {
                out.push(Pair {
                    tm: tm.clone(),
                    word: w,
                });
            }
        }
    }
    out
}

fn end_to_end() -> Check {
    let start = Instant::now();
    let (mut accepted, mut rejected) = (0, 0);
    for (name, tm) in corpus() {
        let ts = compile_tiles(&tm);
        for w in words(&tm, 4) {
            let f0 = initial_map(&tm, &w, Ring::Integers).unwrap();
            let searched = forced_search(&ts, &f0, 8, 64).map_err(|e| e.to_string())?;
            if matches!(run(&tm, &w, 10_000).unwrap(), RunOutcome::Accepted(_)) {
                accepted += 1;
                let cert =
                    build_accepting_tiling(&tm, &w, 10_000).map_err(|e| format!("{name}: {e}"))?;
                ensure(verify_zero(&f0, &cert, &ts).unwrap(), || {
                    format!("{name} {w:?}: certificate does not verify")
                })?;
                let SearchOutcome::Found(found) = searched else {
                    return Err(format!("{name} {w:?}: search found nothing"));
                };
                ensure(cert.same_multiset(&found), || {
                    format!("{name} {w:?}: search differs from build")
                })?;
                ensure(claims_audit(&cert, &f0).is_clean(), || {
                    format!("{name} {w:?}: audit flags")
                })?;
            } else {
                rejected += 1;
                ensure(searched == SearchOutcome::NoneWithinBounds, || {
                    format!("{name} {w:?}: search found a tiling")
                })?;
            }
        }
    }
    let t = start.elapsed();
    ensure(t < Duration::from_secs(60), || format!("took {t:.1?}"))?;
    Ok(format!("{accepted} accepted pairs reproduced, {rejected} non-accepted pairs without tiling, {t:.1?}"))
}

fn oracle_independence() -> Check {
    let source = include_str!("../../core/src/engine/forced.rs");
    for banned in [
        "crate::tm",
        "TuringMachine",
        "tm::",
        "super::build",
        "samples",
    ] {
        ensure(!source.contains(banned), || {
            format!("forced search mentions `{banned}`")
        })?;
    }
    let mut agree = 0;
    for (_, tm) in corpus() {
        let ts = compile_tiles(&tm);
        for w in words(&tm, 3) {
            let f0 = initial_map(&tm, &w, Ring::Integers).unwrap();
            let accepted = matches!(run(&tm, &w, 10_000).unwrap(), RunOutcome::Accepted(_));
            let found = matches!(
                forced_search(&ts, &f0, 8, 64).unwrap(),
                SearchOutcome::Found(_)
            );
            ensure(accepted == found, || {
                format!("simulator and search disagree on {w:?}")
            })?;
            agree += 1;
        }
    }
    Ok(format!(
        "no machine reference in the search; agrees with the simulator on {agree} pairs"
    ))
}

fn palette() -> Vec<Color> {
    let mut p = Color::SPECIALS.to_vec();
    p.push(Color::State(StateId(0)));
    p.push(Color::Letter(SymbolId(1)));
    p.push(Color::Head(StateId(1), SymbolId(0)));
    p
}

fn random_ring(rng: &mut ChaCha8Rng) -> Ring {
    match rng.gen_range(0..3) {
        0 => Ring::Integers,
        1 => Ring::Modulo(2),
        _ => Ring::Modulo(rng.gen_range(3..9)),
    }
}

fn random_point(rng: &mut ChaCha8Rng) -> Point {
    Point::new(rng.gen_range(-5..6), rng.gen_range(-5..6))
}

fn random_map(rng: &mut ChaCha8Rng, ring: Ring) -> EdgeMap {
    let p = palette();
    let mut f = EdgeMap::zero(ring);
    for _ in 0..rng.gen_range(0..8) {
        let q = random_point(rng);
        let e = if rng.gen() {
            EdgeId::h(q.x, q.y)
        } else {
            EdgeId::v(q.x, q.y)
        };
        f.add_at(
            e,
            p[rng.gen_range(0..p.len())],
            BigInt::from(rng.gen_range(-4..5)),
        );
    }
    f
}

fn random_wreath(rng: &mut ChaCha8Rng, ring: Ring) -> WreathElement {
    let mut fun = ModuleElement::zero(ring, 2);
    for _ in 0..rng.gen_range(0..5) {
        fun.add_at(
            random_point(rng),
            rng.gen_range(0..2),
            BigInt::from(rng.gen_range(-3..4)),
        )
        .unwrap();
    }
    let mut g = WreathElement::from_fun(fun);
    g.shift = random_point(rng);
    g
}

fn random_word(rng: &mut ChaCha8Rng, gens: bool) -> Word {
    let letters = [
        Letter::X,
        Letter::XInv,
        Letter::Y,
        Letter::YInv,
        Letter::Gen(0),
        Letter::GenInv(1),
    ];
    let k = if gens { letters.len() } else { 4 };
    Word(
        (0..rng.gen_range(0..16))
            .map(|_| letters[rng.gen_range(0..k)])
            .collect(),
    )
}

fn algebraic_laws() -> Check {
    const CASES: usize = 1000;
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for _ in 0..CASES {
        let ring = random_ring(&mut rng);
        let (f, g, h) = (
            random_map(&mut rng, ring),
            random_map(&mut rng, ring),
            random_map(&mut rng, ring),
        );
        let zero = EdgeMap::zero(ring);
        ensure(
            f.add(&g).unwrap().add(&h).unwrap() == f.add(&g.add(&h).unwrap()).unwrap(),
            || "edge map associativity".into(),
        )?;
        ensure(f.add(&g).unwrap() == g.add(&f).unwrap(), || {
            "edge map commutativity".into()
        })?;
        ensure(f.add(&zero).unwrap() == f, || "edge map identity".into())?;
        ensure(f.add(&f.negate()).unwrap().is_zero(), || {
            "edge map inverse".into()
        })?;
    }
    for _ in 0..CASES {
        let ring = random_ring(&mut rng);
        let (f, g) = (random_map(&mut rng, ring), random_map(&mut rng, ring));
        let (a, b) = (random_point(&mut rng), random_point(&mut rng));
        ensure(f.translate(a).translate(b) == f.translate(a + b), || {
            "translation composes".into()
        })?;
        ensure(f.translate(Point::ORIGIN) == f, || {
            "translation by zero".into()
        })?;
        ensure(
            f.add(&g).unwrap().translate(a) == f.translate(a).add(&g.translate(a)).unwrap(),
            || "translation is additive".into(),
        )?;
    }
    for _ in 0..CASES {
        let ring = random_ring(&mut rng);
        let (g, h, k) = (
            random_wreath(&mut rng, ring),
            random_wreath(&mut rng, ring),
            random_wreath(&mut rng, ring),
        );
        let e = WreathElement::identity(ring, 2);
        let left = g.mul(&h).unwrap().mul(&k).unwrap();
        ensure(left == g.mul(&h.mul(&k).unwrap()).unwrap(), || {
            "wreath associativity".into()
        })?;
        ensure(g.mul(&e).unwrap() == g && e.mul(&g).unwrap() == g, || {
            "wreath identity".into()
        })?;
        ensure(g.mul(&g.inverse()).unwrap().is_identity(), || {
            "wreath inverse".into()
        })?;
    }
    for _ in 0..CASES {
        let (u, v, w) = (
            random_word(&mut rng, false),
            random_word(&mut rng, false),
            random_word(&mut rng, false),
        );
        let (a, b, c) = (
            metabelian_eval(&u).unwrap(),
            metabelian_eval(&v).unwrap(),
            metabelian_eval(&w).unwrap(),
        );
        ensure(a.mul(&b).mul(&c) == a.mul(&b.mul(&c)), || {
            "metabelian associativity".into()
        })?;
        ensure(a.mul(&a.inverse()).is_identity(), || {
            "metabelian inverse".into()
        })?;
        ensure(
            a.mul(&tilesum_core::group::MetabelianElement::identity()) == a,
            || "metabelian identity".into(),
        )?;
    }
    for _ in 0..CASES {
        let ring = random_ring(&mut rng);
        let b = lamplighter_bindings(ring, 2);
        let (u, v) = (random_word(&mut rng, true), random_word(&mut rng, true));
        let lhs = eval_word(&b, ring, 2, &u.concat(&v)).unwrap();
        let rhs = eval_word(&b, ring, 2, &u)
            .unwrap()
            .mul(&eval_word(&b, ring, 2, &v).unwrap())
            .unwrap();
        ensure(lhs == rhs, || {
            format!("eval_word is not multiplicative on {u} {v}")
        })?;
    }
    for _ in 0..CASES {
        let (u, v) = (random_word(&mut rng, false), random_word(&mut rng, false));
        let lhs = metabelian_eval(&u.concat(&v)).unwrap();
        let rhs = metabelian_eval(&u)
            .unwrap()
            .mul(&metabelian_eval(&v).unwrap());
        ensure(lhs == rhs, || {
            format!("metabelian_eval is not multiplicative on {u} {v}")
        })?;
    }
    for _ in 0..CASES {
        let w: Vec<Word> = (0..4).map(|_| random_word(&mut rng, false)).collect();
        let law = Word::commutator(
            &Word::commutator(&w[0], &w[1]),
            &Word::commutator(&w[2], &w[3]),
        );
        ensure(metabelian_eval(&law).unwrap().is_identity(), || {
            format!("metabelian law fails for {w:?}")
        })?;
    }
    Ok(format!("7 law families x {CASES} cases"))
}

fn homology() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(44);
    for _ in 0..500 {
        let w = random_word(&mut rng, false);
        let g = metabelian_eval(&w).unwrap();
        let mut closed = w.clone();
        closed.push_power(Letter::Y, -g.ab.y);
        closed.push_power(Letter::X, -g.ab.x);
        let fl = metabelian_eval(&closed).unwrap().flow;
        let m = rng.gen_range(1..6);
        let d = flow_decompose(&fl, m).map_err(|e| e.to_string())?;
        ensure(boundary(&d.cells) == fl, || {
            format!("boundary of the cells differs from the flow of {closed}")
        })?;
        let again = metabelian_eval(&flow_to_word(&fl).unwrap()).unwrap();
        ensure(again == metabelian_eval(&closed).unwrap(), || {
            format!("flow_to_word does not re-evaluate on {closed}")
        })?;
    }
    for m in [2usize, 3, 5] {
        for _ in 0..500 {
            let a: Vec<BigInt> = (0..m)
                .map(|_| BigInt::from(rng.gen_range(-99i64..100)))
                .collect();
            ensure(basis_restore(&basis_change(&a)) == a, || {
                format!("basis change is not invertible at {a:?}")
            })?;
            ensure(basis_change(&basis_restore(&a)) == a, || {
                format!("basis restore is not invertible at {a:?}")
            })?;
        }
    }
    Ok("500 cycles, 3 x 500 coefficient vectors".into())
}

fn transport() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let (mut pairs, mut rejected, mut genuine, mut total) = (0, 0, 0, 0);
    for p in accepted_pairs() {
        let ts = compile_tiles(&p.tm);
        let f0 = initial_map(&p.tm, &p.word, Ring::Integers).unwrap();
        let inst = tiling_to_instance(&ts, &f0);
        let cert = build_accepting_tiling(&p.tm, &p.word, 10_000).unwrap();
        let witness = certificate_witness(&ts, &cert).unwrap();
        ensure(witness.verifies(&inst), || {
            "module witness does not verify".into()
        })?;
        for flavor in [Flavor::Wreath, Flavor::FreeMetabelian] {
            let sub = make_submonoid_instance(&inst, flavor).unwrap();
            let word = certificate_from_witness(&sub, &witness);
            ensure(verify_submonoid_certificate(&sub, &word).unwrap(), || {
                format!("{flavor:?} certificate rejected")
            })?;
            let verifier = SubmonoidVerifier::new(&sub).unwrap();
            let target = sub.eval(&sub.target).unwrap();
            let mut flipped = 0;
            for _ in 0..100 {
                let mut bad = word.clone();
                let i = rng.gen_range(0..bad.len());
                match rng.gen_range(0..3) {
                    0 => {
                        bad.remove(i);
                    }
                    1 => bad.insert(i, rng.gen_range(0..sub.generators.len())),
                    _ => bad[i] = rng.gen_range(0..sub.generators.len()),
                }
                if verifier.verify(&bad).unwrap() {
                    let product = bad
                        .iter()
                        .fold(Word::new(), |acc, &g| acc.concat(&sub.generators[g]));
                    ensure(sub.eval(&product).unwrap() == target, || {
                        "a surviving mutant is not a certificate".into()
                    })?;
                    genuine += 1;
                } else {
                    flipped += 1;
                }
            }
            ensure(flipped >= 95, || {
                format!("{flavor:?}: only {flipped} of 100 mutants rejected")
            })?;
            rejected += flipped;
            total += 100;
        }
        pairs += 1;
    }
    Ok(format!("{pairs} pairs x 2 groups; {rejected}/{total} mutants rejected, {genuine} genuine alternatives"))
}

fn two_lamps() -> ModuleElement {
    ModuleElement::from_entries(
        Ring::Modulo(2),
        1,
        [
            (Point::ORIGIN, 0, BigInt::from(1)),
            (Point::new(1, 0), 0, BigInt::from(1)),
        ],
    )
    .unwrap()
}

fn subset_sums() -> Check {
    let start = Instant::now();
    let mut solved = 0;
    for p in accepted_pairs() {
        let ts = compile_tiles(&p.tm);
        let cert = build_accepting_tiling(&p.tm, &p.word, 10_000).unwrap();
        for ring in [Ring::Modulo(2), Ring::Modulo(3)] {
            let f0 = initial_map(&p.tm, &p.word, ring).unwrap();
            ensure(claims_audit(&cert, &f0).is_clean(), || {
                "audit flags on the certificate".into()
            })?;
            let (inst, kept) = tiling_to_subset_sum(&ts, &f0).unwrap();
            let Search::Found(found) =
                subset_sum_bounded(&inst, Window::new(0, 0, cert.width_m, cert.height_n))
            else {
                return Err(format!("no subset sum over {ring} for {:?}", p.word));
            };
            ensure(found.verifies_subset_sum(&inst), || {
                "witness does not verify".into()
            })?;
            let mut expected = certificate_witness(&ts, &cert).unwrap();
            for t in &mut expected.terms {
                t.gen = kept.iter().position(|&g| g == t.gen).unwrap();
            }
            ensure(found == expected, || {
                format!("witness over {ring} is not the certificate's")
            })?;

            let rat = rational_instance(&inst).unwrap();
            let word = certificate_to_word(&found).unwrap();
            ensure(nfa_accepts(&regex_to_nfa(&rat.expr), &word), || {
                "sweep word not accepted".into()
            })?;
            ensure(
                eval_word(&rat.bindings, ring, 1, &word).unwrap() == rat.target,
                || "sweep word misses the target".into(),
            )?;
            solved += 1;
        }
    }

    let f = two_lamps();
    let probe = SubsetSumInstance::new(
        Ring::Modulo(2),
        1,
        vec![f.clone()],
        ModuleElement::zero(Ring::Modulo(2), 1),
    )
    .unwrap();
    let rat = rational_instance(&probe).unwrap();
    let reached = accepted_elements(
        &regex_to_nfa(&rat.expr),
        &rat.bindings,
        Ring::Modulo(2),
        1,
        12,
    )
    .unwrap();
    let mut hits = 0;
    for g in reached.iter().filter(|g| g.shift == Point::ORIGIN) {
        let inst =
            SubsetSumInstance::new(Ring::Modulo(2), 1, vec![f.clone()], g.fun.clone()).unwrap();
        let Search::Found(w) = subset_sum_bounded(&inst, Window::new(-12, -12, 12, 12)) else {
            return Err(format!("{g:?} is reached but is not a subset sum"));
        };
        ensure(w.verifies_subset_sum(&inst), || {
            "enumeration witness does not verify".into()
        })?;
        hits += 1;
    }
    let t = start.elapsed();
    ensure(t < Duration::from_secs(120), || format!("took {t:.1?}"))?;
    Ok(format!(
        "{solved} finite-ring instances; {hits} enumerated hits confirmed; {t:.1?}"
    ))
}

fn format_stability() -> Check {
    let (a, b) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    let names = common::write_artifacts(a.path());
    ensure(common::write_artifacts(b.path()) == names, || {
        "runs wrote different files".into()
    })?;
    for n in &names {
        let first = fs::read(a.path().join(n)).unwrap();
        ensure(first == fs::read(b.path().join(n)).unwrap(), || {
            format!("{n} differs between runs")
        })?;
        let golden = fs::read(common::golden_dir().join(n))
            .map_err(|_| format!("no golden file for {n}"))?;
        ensure(first == golden, || {
            format!("{n} differs from its golden file")
        })?;
    }
    Ok(format!(
        "{} artifacts byte-identical across runs and to golden files",
        names.len()
    ))
}

type Criterion = (&'static str, fn() -> Check);

fn main() -> ExitCode {
    let criteria: [Criterion; 7] = [
        ("end-to-end equivalence", end_to_end),
        ("oracle independence", oracle_independence),
        ("algebraic laws", algebraic_laws),
        ("homology round trip", homology),
        ("reduction transport", transport),
        ("subset sum and rational suite", subset_sums),
        ("format stability", format_stability),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("criterion {} {name}: PASS ({detail}) [{secs:.1}s]", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {} {name}: FAIL ({why}) [{secs:.1}s]", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
