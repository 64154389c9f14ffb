//! Checks shared by the test targets and the acceptance runner.
#![allow(dead_code)]

use misere::algebra::{is_reduced, monoid_from_presentation, reduce_bipartite, BipartiteMonoid, Element, Presentation};
use misere::catalog::Catalog;
use misere::games::{parse_octal_code, Alphabet, MisereOracle, Outcome, Position};
use misere::heaps::{solve_octal, OctalLimits};
use misere::solver::{n_verify, n_verify_exhaustive, SearchLimits, SolverConfig, Step};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use misere::periodic::{ap_distinguish, ap_outcome, ap_phi_position, normal_forms, ApGame, Distinction};

/// Positions of at most `heaps` heaps, each of at most `max` beans.
pub fn small_positions(heaps: usize, max: usize) -> Vec<Position> {
    fn go(left: usize, lo: usize, max: usize, counts: &mut Vec<u32>, out: &mut Vec<Position>) {
        out.push(Position::from_counts(counts.clone()));
        if left == 0 {
            return;
        }
        for k in lo..=max {
            counts[k - 1] += 1;
            go(left - 1, k, max, counts, out);
            counts[k - 1] -= 1;
        }
    }
    let mut out = Vec::new();
    go(heaps, 1, max, &mut vec![0; max], &mut out);
    out
}

pub fn three_way(game: ApGame, heaps: usize, max: usize) {
    let code = parse_octal_code(game.code()).unwrap();
    let alphabet = Alphabet::for_code(&code, max);
    let mut oracle = MisereOracle::new(&alphabet);
    for x in small_positions(heaps, max) {
        let brute = oracle.outcome(&x).unwrap();
        let closed = ap_outcome(game, &x);
        let quotient = if ap_phi_position(game, &x).in_p() { Outcome::P } else { Outcome::N };
        assert_eq!(brute, closed, "{game} {x}: oracle vs closed form");
        assert_eq!(brute, quotient, "{game} {x}: oracle vs quotient");
    }
}

fn distinguishable(m: &BipartiteMonoid, x: Element, y: Element) -> bool {
    m.elements().any(|z| m.in_p(m.mul(x, z)) != m.in_p(m.mul(y, z)))
}

fn monomial(rng: &mut StdRng, gens: &[String]) -> String {
    let mut s = String::new();
    for g in gens {
        let e = rng.gen_range(0..3);
        if e > 0 {
            s.push_str(g);
            if e > 1 {
                s.push_str(&e.to_string());
            }
        }
    }
    if s.is_empty() {
        "1".into()
    } else {
        s
    }
}

/// A random finite commutative monoid with a random P, or `None` when the
/// presentation is degenerate or too large.
fn random_monoid(rng: &mut StdRng) -> Option<BipartiteMonoid> {
    let gens: Vec<String> = ["a", "b", "c"][..rng.gen_range(1..=3)].iter().map(|s| s.to_string()).collect();
    let mut rels = Vec::new();
    for g in &gens {
        let i = rng.gen_range(0..3);
        let p = rng.gen_range(1..4);
        let low = if i == 0 { "1".to_string() } else { format!("{g}{i}") };
        rels.push((format!("{g}{}", i + p), low));
    }
    for _ in 0..rng.gen_range(0..3) {
        let (l, r) = (monomial(rng, &gens), monomial(rng, &gens));
        if l != r {
            rels.push((l, r));
        }
    }
    let pres = Presentation::from_text_relations(gens, &rels).ok()?;
    let m = monoid_from_presentation(&pres, 24).ok()?;
    let mask: Vec<bool> = (0..m.order()).map(|_| rng.gen_bool(0.4)).collect();
    m.with_p(mask).ok()
}

pub fn reduction_is_idempotent_and_separates_classes() {
    let mut rng = StdRng::seed_from_u64(24);
    let mut checked = 0;
    let mut attempts = 0;
    let (mut large, mut collapsed) = (0, 0);
    while checked < 1000 {
        attempts += 1;
        assert!(attempts < 20_000, "too few usable random monoids");
        let Some(m) = random_monoid(&mut rng) else { continue };
        let (r, map) = reduce_bipartite(&m);
        for x in m.elements() {
            assert_eq!(m.in_p(x), r.in_p(map[x as usize]));
            for y in m.elements() {
                assert_eq!(map[m.mul(x, y) as usize], r.mul(map[x as usize], map[y as usize]));
                let merged = map[x as usize] == map[y as usize];
                assert_eq!(merged, !distinguishable(&m, x, y));
            }
        }
        for x in r.elements() {
            for y in r.elements().filter(|&y| y > x) {
                assert!(distinguishable(&r, x, y));
            }
        }
        assert!(is_reduced(&r));
        let (rr, map2) = reduce_bipartite(&r);
        assert_eq!(rr.order(), r.order());
        assert!(map2.iter().enumerate().all(|(i, &j)| i == j as usize));
        large += usize::from(m.order() >= 12);
        collapsed += usize::from(r.order() < m.order());
        checked += 1;
    }
    assert!(large >= 100 && collapsed >= 100, "{large} large, {collapsed} collapsed");
}

pub fn pruned_n_verification_matches_exhaustive_sweep() {
    const BEANS: usize = 18;
    let limits = SearchLimits::default();
    for code in ["0.26", "0.75", "0.34"] {
        let code = parse_octal_code(code).unwrap();
        let alphabet = Alphabet::for_code(&code, BEANS);
        let full = solve_octal(&code, OctalLimits::heaps(BEANS), &SolverConfig::default());
        assert!(full.converged);
        assert!(n_verify(&full.candidate, limits).unwrap().failure.is_none());
        assert!(n_verify_exhaustive(&full.candidate, &alphabet, BEANS as u64, limits).unwrap().is_none());
        // Every wrong value for the next heap must fail, and both searches
        // must report the same least failure.
        for n in 1..BEANS {
            let sol = solve_octal(&code, OctalLimits::heaps(n), &SolverConfig::default());
            let next = alphabet.prefix(n + 1);
            for x in sol.candidate.monoid().elements() {
                let c = sol.candidate.extended(x, &next).unwrap();
                let pruned = n_verify(&c, limits).unwrap().failure;
                let swept = n_verify_exhaustive(&c, &next, BEANS as u64, limits).unwrap();
                match &pruned {
                    Some(f) if next.weight(f) <= BEANS as u64 => assert_eq!(Some(f), swept.as_ref(), "{code} H{} := {x}", n + 1),
                    // The least failure is heavier than the sweep reaches.
                    Some(f) => assert!(swept.is_none_or(|s| f < &s), "{code} H{} := {x}", n + 1),
                    None => assert!(swept.is_none(), "{code} H{} := {x}", n + 1),
                }
            }
        }
    }
}

pub fn failure_traces_increase_in_lex_order() {
    let mut total = 0;
    for rec in &Catalog::builtin().solutions {
        let code = rec.octal_code().unwrap();
        let sol = solve_octal(&code, OctalLimits::heaps(20), &SolverConfig::default());
        assert!(sol.converged, "{}", rec.code);
        let failures: Vec<_> = sol
            .trace
            .iter()
            .filter(|e| e.step == Step::Recalibrated)
            .map(|e| e.failure.clone().expect("recalibration repairs a failure"))
            .collect();
        for w in failures.windows(2) {
            assert!(w[0] < w[1], "{}: {} then {}", rec.code, w[0], w[1]);
        }
        total += failures.len();
    }
    assert!(total > 100, "only {total} recalibrations");
}

pub fn shortcuts_do_not_change_the_quotient() {
    let code = parse_octal_code("0.26").unwrap();
    let on = solve_octal(&code, OctalLimits::heaps(40), &SolverConfig::default());
    let off = solve_octal(
        &code,
        OctalLimits::heaps(40),
        &SolverConfig {
            shortcuts: false,
            ..SolverConfig::default()
        },
    );
    assert!(on.converged && off.converged);
    assert_eq!(on.orders, off.orders);
    assert_eq!(on.candidate.phi(), off.candidate.phi());
    assert_eq!(on.candidate, off.candidate);
}

pub fn every_pair_of_normal_forms_is_separated() {
    for game in ApGame::ALL {
        let elems = normal_forms(game, 8);
        for (i, x) in elems.iter().enumerate() {
            assert_eq!(ap_distinguish(x, x), Ok(Distinction::Equal));
            for y in &elems[i + 1..] {
                let Ok(Distinction::Witness(z)) = ap_distinguish(x, y) else {
                    panic!("{game}: no witness for {x} vs {y}");
                };
                assert_ne!(x.mul(&z).unwrap().in_p(), y.mul(&z).unwrap().in_p(), "{x} {y} {z}");
            }
        }
    }
}
