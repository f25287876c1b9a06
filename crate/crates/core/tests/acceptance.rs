//! One PASS/FAIL line per acceptance criterion. Clauses documented as
//! unattainable are reported as FAIL with their evidence; any other failure
//! makes the target exit non-zero.

mod common;

use std::time::{Duration, Instant};

use common::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use vknot::cobordism::{MovieError, MovieFile, SliceVerdict, slice_obstructions};
use vknot::constructions::{connected_sum, kt_tangle, livingston_satellite, tangle_splice};
use vknot::invariants::{
    ac_alexander, generalized_alexander, link_alexander, odd_writhe, skein_triple, skein_units, writhe_polynomial,
};
use vknot::algebra::LaurentPoly;
use vknot::moves::{equivalent_search, simplify, SearchError};
use vknot::shell::Catalog;
use vknot::surface::{alexander_numbering, carter_genus, is_almost_classical};

/// Criteria with a clause recorded as unattainable in the decisions ledger.
const KNOWN_UNATTAINABLE: &[u32] = &[3, 7];

struct Verdict {
    pass: bool,
    detail: String,
}

fn verdict(pass: bool, detail: impl Into<String>) -> Verdict {
    Verdict { pass, detail: detail.into() }
}

const FIGURE8: &str = "O1+ U4- O2- U1+ O3+ U2- O4- U3+";

fn data(name: &str) -> String {
    std::fs::read_to_string(format!("{}/data/{name}", env!("CARGO_MANIFEST_DIR"))).unwrap()
}

fn time_per_call(mut f: impl FnMut()) -> Duration {
    let n = 200;
    let t = Instant::now();
    for _ in 0..n {
        f();
    }
    t.elapsed() / n
}

fn c1() -> Verdict {
    let cases = [(VTREFOIL, 1), (TREFOIL, 0), (FIGURE8, 0)];
    let mut ok = true;
    let mut parts = Vec::new();
    for (code, want) in cases {
        let l = link(code);
        let g = carter_genus(&l);
        let dt = time_per_call(|| {
            carter_genus(&l);
        });
        ok &= g == want && dt < Duration::from_millis(1);
        parts.push(format!("{g} ({dt:?})"));
    }
    verdict(ok, format!("genus vtrefoil/trefoil/figure-8 = {}", parts.join(", ")))
}

fn c2() -> Verdict {
    let t = Instant::now();
    let mut total = 0;
    let mut bad = Vec::new();
    for n in 0..=4 {
        for k in all_knots(n) {
            total += 1;
            if is_almost_classical(&k) != alexander_numbering(k.as_link()).is_some() {
                bad.push(k.to_string());
            }
        }
    }
    let dt = t.elapsed();
    verdict(
        bad.is_empty() && dt < Duration::from_secs(60),
        format!("{total} codes, {} disagreements, {dt:.2?}{}", bad.len(), bad.first().map(|b| format!(", e.g. {b}")).unwrap_or_default()),
    )
}

fn c3() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let pairs = 1000;
    let mut fails = [0usize; 5];
    for _ in 0..pairs {
        let n = rng.gen_range(0..=6);
        let steps = rng.gen_range(1..=6);
        let a = random_knot(&mut rng, n);
        let (b, _) = random_walk(&mut rng, a.as_link(), steps);
        let b = b.to_knot().unwrap();
        fails[0] += (odd_writhe(&a) != odd_writhe(&b)) as usize;
        fails[1] += (writhe_polynomial(&a) != writhe_polynomial(&b)) as usize;
        if is_almost_classical(&a) != is_almost_classical(&b) {
            fails[2] += 1;
        }
        fails[3] += !ac_alexander(&a).poly.equal_up_to_units(&ac_alexander(&b).poly) as usize;
        fails[4] += !generalized_alexander(&a).equal_up_to_units(&generalized_alexander(&b)) as usize;
    }
    // the smallest witness: an R2 insertion on the unknot
    let witness = knot("U1+ U2- O1+ O2-");
    let reached = equivalent_search(&link(""), witness.as_link(), 1).is_ok();
    let others_ok = fails[0] + fails[1] + fails[3] + fails[4] == 0;
    verdict(
        others_ok && fails[2] == 0,
        format!(
            "{pairs} pairs; failures odd-writhe={} writhe-poly={} ac={} alexander={} galexander={}; \
             unknot -> \"{witness}\" in one move (reachable={reached}) has ac={} (diagram-level AC is not move-invariant)",
            fails[0],
            fails[1],
            fails[2],
            fails[3],
            fails[4],
            is_almost_classical(&witness)
        ),
    )
}

fn det2(v: [[i64; 2]; 2]) -> LaurentPoly {
    // det(t·Vᵀ − V)
    let e = |i: usize, j: usize| LaurentPoly::from_terms([(1, v[j][i]), (0, -v[i][j])]);
    &(&e(0, 0) * &e(1, 1)) - &(&e(0, 1) * &e(1, 0))
}

fn c4() -> Verdict {
    let cases = [
        ("trefoil", TREFOIL, [[-1, 1], [0, -1]], LaurentPoly::from_coeffs(&[1, -1, 1])),
        ("figure-8", FIGURE8, [[-1, 1], [0, 1]], LaurentPoly::from_coeffs(&[1, -3, 1])),
    ];
    let mut ok = true;
    let mut parts = Vec::new();
    for (name, code, v, want) in cases {
        let fox = ac_alexander(&knot(code)).poly;
        let seifert = det2(v);
        ok &= fox.equal_up_to_units(&seifert) && fox.equal_up_to_units(&want);
        parts.push(format!("{name}: fox {fox}, seifert {seifert}"));
    }
    verdict(ok, parts.join("; "))
}

fn c5() -> Verdict {
    let t = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let (mut checked, mut fails) = (0, 0);
    while checked < 50 {
        let n = rng.gen_range(1..=6);
        let k = random_knot(&mut rng, n);
        if carter_genus(k.as_link()) != 0 {
            continue;
        }
        let ids = k.as_link().crossing_ids();
        let id = ids[rng.gen_range(0..ids.len())];
        let (p, m, z) = skein_triple(&k, id).unwrap();
        checked += 1;
        if skein_units(&link_alexander(p.as_link()), &link_alexander(m.as_link()), &link_alexander(&z)).is_none() {
            fails += 1;
        }
    }
    let dt = t.elapsed();
    verdict(fails == 0 && dt < Duration::from_secs(60), format!("{checked} classical codes, {fails} failures, {dt:.2?}"))
}

fn c6() -> Verdict {
    let composite: MovieFile = data("fig4.movie").parse().unwrap();
    let cert = composite.verify();
    let one: MovieFile = data("one_saddle.movie").parse().unwrap();
    let rejected = one.verify();
    let composite_ok = matches!(&cert, Ok(c) if (c.births, c.saddles, c.deaths) == (0, 2, 2) && c.euler_ok && c.connected);
    let rej_ok = matches!(rejected, Err(MovieError::CountFailure { births: 0, saddles: 1, deaths: 0 }));
    let shown = match &cert {
        Ok(c) => c.to_string(),
        Err(e) => e.to_string(),
    };
    verdict(composite_ok && rej_ok, format!("composite movie: {shown}; one-saddle movie: {rejected:?}"))
}

fn c7() -> Verdict {
    let mut cat = Catalog::builtin();
    cat.import_text(&data("composite_standins.txt"), "composite_standins.txt", false).unwrap();
    let mut bad = Vec::new();
    let mut n = 0;
    for e in cat.entries() {
        let s = livingston_satellite(&e.code);
        n += 1;
        if odd_writhe(&s) != odd_writhe(&e.code) || writhe_polynomial(&s) != writhe_polynomial(&e.code) {
            bad.push(e.name.clone());
        }
    }
    let vt = knot(VTREFOIL);
    let (g0, g1) = (generalized_alexander(&vt), generalized_alexander(&livingston_satellite(&vt)));
    let differs = !g0.equal_up_to_units(&g1);
    verdict(
        bad.is_empty() && differs,
        format!(
            "odd-writhe and writhe-poly preserved on {}/{n} catalog entries; G(vtrefoil) = {g0}, \
             G(satellite) = {g1}, differ={differs} (expected true; unattainable with the shipped pattern)",
            n - bad.len()
        ),
    )
}

fn c8() -> Verdict {
    let t = knot(TREFOIL);
    let dt = ac_alexander(&t).poly;
    let sat = ac_alexander(&livingston_satellite(&t)).poly;
    let spliced = tangle_splice(&t, 0, 3, &kt_tangle(), true).unwrap();
    let kt = ac_alexander(&spliced).poly;
    verdict(
        sat.equal_up_to_units(&dt) && kt.equal_up_to_units(&dt) && spliced.crossing_count() == 14,
        format!("trefoil {dt}; satellite {sat}; KT-spliced ({} crossings) {kt}", spliced.crossing_count()),
    )
}

fn c9() -> Verdict {
    let (a, b) = (knot("U1+ U2- O1+ O2-"), knot("U1- U2+ O1- O2+"));
    let trivial = [&a, &b].iter().all(|k| equivalent_search(k.as_link(), &link(""), 2).is_ok());
    let sum = connected_sum(&a, 1, &b, 3).unwrap();
    let simplified = simplify(sum.as_link(), 10_000).code.crossing_count();
    let t = Instant::now();
    let search = equivalent_search(sum.as_link(), &link(""), 6);
    let dt = t.elapsed();
    verdict(
        trivial && sum.crossing_count() == 4 && simplified == 4 && matches!(search, Err(SearchError::NotFound(6))),
        format!(
            "summands trivial={trivial}; sum \"{sum}\" has {} crossings, simplifies to {simplified}; depth-6 search: {} ({dt:.2?})",
            sum.crossing_count(),
            match search {
                Ok(p) => format!("found path of {} moves", p.len()),
                Err(e) => e.to_string(),
            }
        ),
    )
}

fn c10() -> Verdict {
    let vt = slice_obstructions(&knot(VTREFOIL));
    let vt_ok = vt.verdict == SliceVerdict::NotSlice
        && vt.obstructions.iter().any(|o| o.name == "odd-writhe" && o.value == "2" && o.obstructs);
    let quiet = [UNKNOT, TREFOIL].iter().all(|c| slice_obstructions(&knot(c)).verdict == SliceVerdict::Inconclusive);
    let mut classical = 0;
    let mut nonzero = 0;
    for n in 0..=4 {
        for k in all_knots(n).into_iter().filter(|k| carter_genus(k.as_link()) == 0) {
            classical += 1;
            nonzero += !generalized_alexander(&k).is_zero() as usize;
        }
    }
    verdict(
        vt_ok && quiet && nonzero == 0,
        format!("vtrefoil {}; unknot/trefoil inconclusive={quiet}; {classical} classical codes, {nonzero} with G != 0", vt.verdict),
    )
}

fn main() {
    let criteria: [(u32, fn() -> Verdict); 10] =
        [(1, c1), (2, c2), (3, c3), (4, c4), (5, c5), (6, c6), (7, c7), (8, c8), (9, c9), (10, c10)];
    let mut unexpected = Vec::new();
    for (n, f) in criteria {
        let v = f();
        println!("criterion {n}: {} - {}", if v.pass { "PASS" } else { "FAIL" }, v.detail);
        if !v.pass && !KNOWN_UNATTAINABLE.contains(&n) {
            unexpected.push(n);
        }
    }
    if !unexpected.is_empty() {
        eprintln!("unexpected failures: {unexpected:?}");
        std::process::exit(1);
    }
}
