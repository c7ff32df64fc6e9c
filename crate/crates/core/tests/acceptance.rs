//! Acceptance criteria, one `[PASS]`/`[FAIL]` line each.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use tetra_core::algebra::{sqrt_minus_one, Character, CharacterSpec, GroupRingElem, ScaledGroupRing, WeightGroup};
use tetra_core::cube::{
    boundary_matrix, build_a, homology_dims, search_monomial_cocycles, verify_cocycle, Cocycle3, Coefficients, MonomialCocycle,
};
use tetra_core::graph::{chi, count_colorings, fixtures, ChiValue, SingularGraph};
use tetra_core::lattice::{count_states, z_direct, z_transfer, z_transfer_exact, LatticeSpec};
use tetra_core::quandle::{
    color_diagram, diagram, quandle_boundary, state_sum, verify_q3cocycle, verify_quandle, GroupTable, Quandle, QuandleCochain2,
    QuandleCochain3,
};
use tetra_core::roseman::{check_move3, check_move6, check_move7};
use tetra_core::tetramap::identities::operator_identities;
use tetra_core::tetramap::{verify_monomial_word, TetraMap, TransposeFamily};
use tetra_core::{Guards, Result};

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn electric() -> TetraMap {
    TetraMap::electric(5, 2).expect("electric (5,2)")
}

fn within(elapsed: Duration, secs: u64) -> bool {
    elapsed <= Duration::from_secs(secs)
}

fn electric_construction() -> Result<Outcome> {
    let start = Instant::now();
    let eps = sqrt_minus_one(5, 2)?.value();
    let phi = electric();
    let mut seen = vec![false; phi.table().len()];
    for &image in phi.table() {
        seen[image as usize] = true;
    }
    let bijective = seen.iter().all(|&b| b);
    let te = phi.verify_te();
    let elapsed = start.elapsed();
    let pass = eps == 7 && phi.h() == 5 && bijective && te.holds() && te.tuples == 15625 && within(elapsed, 5);
    Ok(outcome(pass, format!("sqrt_minus_one={eps} |X|={} bijective={bijective} {te} time={:.2}s", phi.h(), elapsed.as_secs_f64())))
}

fn transpose_algebra() -> Result<Outcome> {
    let phi = electric();
    let fam = TransposeFamily::new(&phi);
    let all = fam.all_exist();
    let full = all && fam.get(7)? == &phi.inverse();
    let mut pairs = Vec::new();
    for i in 0..3 {
        let single = 1u32 << i;
        pairs.push(all && fam.get(single)?.inverse() == *fam.get(7 ^ single)?);
    }
    let pass = all && full && pairs.iter().all(|&b| b);
    Ok(outcome(pass, format!("all_exist={all} t123_is_inverse={full} single_inverse_pairs={pairs:?}")))
}

fn complex_soundness() -> Result<Outcome> {
    let start = Instant::now();
    let phi = electric();
    let g = Guards::default();
    let d2 = boundary_matrix(2, &phi, &g)?;
    let d3 = boundary_matrix(3, &phi, &g)?;
    let d4 = boundary_matrix(4, &phi, &g)?;
    let z23 = d2.mul(&d3)?.is_zero();
    let z34 = d3.mul(&d4)?.is_zero();
    let mut agree = true;
    let mut dims = Vec::new();
    for n in [2, 3] {
        let q = homology_dims(n, &phi, Coefficients::Rational, &g)?;
        for p in [7, 11] {
            agree &= homology_dims(n, &phi, Coefficients::Prime(p), &g)? == q;
        }
        dims.push(format!("H{n}={}", q.homology));
    }
    let elapsed = start.elapsed();
    let pass = z23 && z34 && agree && within(elapsed, 60);
    Ok(outcome(
        pass,
        format!("d2d3=0:{z23} d3d4=0:{z34} rational_vs_7_11:{agree} {} time={:.2}s", dims.join(" "), elapsed.as_secs_f64()),
    ))
}

fn cocycle_search() -> Result<Outcome> {
    let phi = electric();
    let g = Guards::default();
    let hits = search_monomial_cocycles(&phi, 2)?;
    let te = &operator_identities()[0];
    let mut verified = 0;
    let mut operator_ok = true;
    for hit in &hits {
        let coc = Cocycle3::monomial(phi.set(), hit.cocycle)?;
        if !verify_cocycle(&phi, &coc)?.holds() {
            continue;
        }
        verified += 1;
        for s in -2..=2 {
            let a = build_a(&phi, &coc, s)?;
            operator_ok &= verify_monomial_word(&a, &te.lhs, &te.rhs, &g)?.holds();
        }
    }
    let mut constants = true;
    for sign in [1, -1] {
        constants &= verify_cocycle(&phi, &Cocycle3::monomial(phi.set(), MonomialCocycle::constant(sign))?)?.holds();
    }
    let pass = !hits.is_empty() && verified == hits.len() && constants && operator_ok;
    Ok(outcome(
        pass,
        format!("candidates={} verified={verified} constants={constants} operator_te_s-2..2={operator_ok}", hits.len()),
    ))
}

fn verified_cocycles(phi: &TetraMap) -> Result<Vec<Cocycle3>> {
    let mut out = Vec::new();
    for hit in search_monomial_cocycles(phi, 2)? {
        let coc = Cocycle3::monomial(phi.set(), hit.cocycle)?;
        if verify_cocycle(phi, &coc)?.holds() {
            out.push(coc);
        }
    }
    Ok(out)
}

fn move_three() -> Result<Outcome> {
    let phi = electric();
    let g = Guards::default();
    let cocycles = verified_cocycles(&phi)?;
    let mut failing = Vec::new();
    for coc in &cocycles {
        let r = check_move3(&phi, coc, 1, &g)?;
        if !r.verdict() {
            failing.push(format!("{:?}", coc.monomial_form()));
        }
    }
    Ok(outcome(failing.is_empty(), format!("cocycles={} variants=id,t1,t2,t3 failing={failing:?}", cocycles.len())))
}

fn move_six() -> Result<Outcome> {
    let phi = electric();
    let required = [
        "unique-loop(x,y,y')",
        "electric-closed-form(x,y,y')",
        "unique-loop(x,y',y)",
        "electric-closed-form(x,y',y)",
    ];
    let mut structural = true;
    let mut strict = 0;
    let mut unit = 0;
    let mut weights = true;
    for coc in verified_cocycles(&phi)? {
        let r = check_move6(&phi, &coc, 1)?;
        structural &= required.iter().all(|n| r.check(n).is_some_and(|c| c.holds));
        let norm = |d: &str| r.check(&format!("normalized-{d}")).is_some_and(|c| c.holds);
        let unit_w = |d: &str| r.check(&format!("unit-weight-{d}")).is_some_and(|c| c.holds);
        let loop_w = ["loop-weight(x,y,y')", "loop-weight(x,y',y)"].iter().all(|n| r.check(n).is_some_and(|c| c.holds));
        if norm("12") && norm("23") {
            strict += 1;
            weights &= loop_w;
        }
        if unit_w("12") && unit_w("23") {
            unit += 1;
            weights &= loop_w;
        }
    }
    let loops = tetra_core::roseman::loop_colorings(&phi, tetra_core::roseman::LOOP_FIRST).len();
    let pass = structural && loops == 25 && weights;
    Ok(outcome(
        pass,
        format!(
            "pairs={loops} loop_and_closed_forms={structural} strictly_normalized={strict} unit_weight_contracted={unit} vertex_weight_1={weights}"
        ),
    ))
}

fn move_seven() -> Result<Outcome> {
    let start = Instant::now();
    let phi = electric();
    let g = Guards::default();
    let mut failing = Vec::new();
    let mut checks = 0;
    let coc = Cocycle3::monomial(phi.set(), MonomialCocycle { sign: -1, a: 0, b: 2, c: 0 })?;
    let r = check_move7(&phi, &coc, 1, &g)?;
    for c in r.checks.iter().filter(|c| c.required) {
        checks += 1;
        if !c.holds {
            failing.push(c.name.clone());
        }
    }
    let has = |n: &str| r.check(n).is_some();
    let covered = has("set:tetrahedron")
        && has("set:flip-135")
        && has("operator:tetrahedron")
        && (1..=3).all(|i| has(&format!("operator:transpose-inverse-t{i}")));
    let elapsed = start.elapsed();
    let pass = r.verdict() && covered && within(elapsed, 30);
    Ok(outcome(pass, format!("required_checks={checks} failing={failing:?} time={:.2}s", elapsed.as_secs_f64())))
}

fn chi_consistency() -> Result<Outcome> {
    let phi = electric();
    let g = Guards::default();
    let coc = Cocycle3::monomial(phi.set(), MonomialCocycle { sign: -1, a: 0, b: 2, c: 0 })?;
    let group = coc.group();
    let value = |graph: &SingularGraph| chi(graph, &phi, &coc, 1, &g);
    let circle = value(&fixtures::circle())? == ChiValue { exact: ScaledGroupRing::new(GroupRingElem::one(group), 5, 0) };

    let named = fixtures::named();
    let get = |n: &str| named.iter().find(|(m, _)| *m == n).map(|(_, g)| g.clone()).expect("fixture");
    let mut multiplicative = true;
    for (a, b) in [("circle", "three-loops"), ("three-loops", "three-loops-negative"), ("tetrahedron-closed", "three-loops")] {
        let (ga, gb) = (get(a), get(b));
        let union = ga.disjoint_union(&gb, "u_")?;
        multiplicative &= value(&union)?.exact == &value(&ga)?.exact * &value(&gb)?.exact;
    }

    let (before, after) = fixtures::move3_pair(None);
    let move3 = value(&before)? == value(&after)?;

    let mut circles = 0;
    let mut circle_ok = true;
    for (_, graph) in named.iter().filter(|(n, _)| *n != "circle") {
        let with = graph.disjoint_union(&fixtures::circle(), "extra_")?;
        circle_ok &= value(&with)? == value(graph)?;
        circles += 1;
    }
    let pass = circle && multiplicative && move3 && circle_ok && circles == 5;
    Ok(outcome(
        pass,
        format!("circle=1:{circle} union_pairs=3:{multiplicative} move3_pair:{move3} disjoint_circle_fixtures={circles}:{circle_ok}"),
    ))
}

fn quandles() -> Result<Vec<(&'static str, Quandle)>> {
    Ok(vec![
        ("trivial:3", Quandle::trivial(3)?),
        ("alexander:3,-1", Quandle::alexander(3, -1)?),
        ("s3:1", Quandle::conjugation(&GroupTable::s3(), 1)?),
    ])
}

fn quandle_state_sums() -> Result<Outcome> {
    let g = Guards::default();
    let m = 6;
    let mut axioms = true;
    let mut squares = true;
    let mut cocycles = true;
    let mut sums = true;
    let mut diagrams = 0;
    for (_, q) in quandles()? {
        axioms &= verify_quandle(&q).holds();
        for n in 3..=4 {
            let lower = quandle_boundary(n - 1, &q, &g)?;
            let upper = quandle_boundary(n, &q, &g)?;
            squares &= lower.rack.mul(&upper.rack)?.is_zero() && lower.quotient.mul(&upper.quotient)?.is_zero();
        }
        let zero = QuandleCochain3::zero(q.len(), m)?;
        cocycles &= verify_q3cocycle(&zero, &q)?.holds();
        // The coboundary is linear, so indicator 2-cochains cover every coboundary.
        let n = q.len() as u32;
        for a in 0..n {
            for b in (0..n).filter(|&b| b != a) {
                let eta = QuandleCochain2::from_fn(q.len(), m, |x, y| u64::from(x == a && y == b))?;
                cocycles &= verify_q3cocycle(&eta.coboundary(&q)?, &q)?.holds();
            }
        }
        for (_, d) in diagram::fixtures::all() {
            let colorings = color_diagram(&d, &q, &g)?.len() as i64;
            let sum = state_sum(&d, &zero, &q, &g)?;
            sums &= sum == GroupRingElem::scalar(sum.group(), colorings);
            diagrams += 1;
        }
    }
    let pass = axioms && squares && cocycles && sums;
    Ok(outcome(
        pass,
        format!("axioms={axioms} boundary_squares_n3_n4={squares} zero_and_coboundaries={cocycles} state_sums({diagrams})={sums}"),
    ))
}

fn relative_gap(a: num_complex::Complex64, b: num_complex::Complex64) -> f64 {
    (a - b).norm() / a.norm().max(b.norm()).max(1.0)
}

fn lattice_trace_identity() -> Result<Outcome> {
    let g = Guards::default();
    let spec = LatticeSpec::new(2, 2, 2)?;
    let phi = electric();
    let mut states_ok = true;

    let mut worst: f64 = 0.0;
    let cocycle = Cocycle3::monomial(phi.set(), MonomialCocycle { sign: -1, a: 0, b: 2, c: 0 })?;
    let generic = Cocycle3::from_fn(WeightGroup::cyclic(7)?, 5, |[x, y, z]| u64::from((x + 2 * y + 3 * z) % 7))?;
    for (coc, root) in [(&cocycle, 20), (&generic, 7)] {
        let chi = Character::new(coc.group(), &CharacterSpec::Primitive { root_order: root })?;
        let direct = z_direct(spec, &phi, coc, 1, &g)?;
        let via = z_transfer(spec, &phi, coc, 1, &chi, &g)?;
        worst = worst.max(relative_gap(chi.eval(&direct), via));
        let n = count_states(spec, &phi, &g)? as i64;
        states_ok &= z_direct(spec, &phi, coc, 0, &g)? == GroupRingElem::scalar(coc.group(), n);
    }

    let toy = TetraMap::bilinear(3)?;
    let toy_coc = Cocycle3::from_fn(WeightGroup::cyclic(3)?, 3, |[x, _, z]| u64::from((x * z) % 3))?;
    let toy_generic = Cocycle3::from_fn(WeightGroup::cyclic(7)?, 3, |[x, y, z]| u64::from((x + 2 * y + 3 * z) % 7))?;
    let toy_solution = toy.verify_te().holds() && verify_cocycle(&toy, &toy_coc)?.holds();
    let mut exact = true;
    for coc in [&toy_coc, &toy_generic] {
        for s in [0, 1, 2] {
            exact &= z_transfer_exact(spec, &toy, coc, s, &g)? == z_direct(spec, &toy, coc, s, &g)?;
        }
        let n = count_states(spec, &toy, &g)? as i64;
        states_ok &= z_direct(spec, &toy, coc, 0, &g)? == GroupRingElem::scalar(coc.group(), n);
        states_ok &= z_transfer_exact(spec, &toy, coc, 0, &g)? == GroupRingElem::scalar(coc.group(), n);
    }
    let pass = worst <= 1e-9 && toy_solution && exact && states_ok;
    Ok(outcome(
        pass,
        format!("electric_relative_gap={worst:.3e} toy_solution={toy_solution} toy_exact={exact} z0_counts_states={states_ok}"),
    ))
}

/// Exact results rendered as text, for comparison across pool sizes.
fn exact_digest() -> Result<String> {
    let g = Guards::default();
    let phi = electric();
    let coc = Cocycle3::monomial(phi.set(), MonomialCocycle { sign: -1, a: 0, b: 2, c: 0 })?;
    let mut out = Vec::new();
    out.push(phi.verify_te().to_string());
    out.push(phi.with_swapped_rows(0, 7).verify_te().to_string());
    for hit in search_monomial_cocycles(&phi, 2)? {
        out.push(format!("{:?}", hit));
    }
    let d3 = boundary_matrix(3, &phi, &g)?;
    out.push(format!("{:?} {:?}", d3.shape(), d3.columns().iter().take(50).collect::<Vec<_>>()));
    out.push(format!("{:?}", homology_dims(2, &phi, Coefficients::Prime(7), &g)?));
    out.push(verify_cocycle(&phi, &coc)?.holds().to_string());
    for (name, graph) in fixtures::named() {
        out.push(format!("{name} {} {}", count_colorings(&graph, &phi, &g)?, chi(&graph, &phi, &coc, 1, &g)?));
    }
    out.push(check_move7(&phi, &coc, 1, &g)?.to_string());
    let spec = LatticeSpec::new(2, 2, 1)?;
    out.push(z_direct(spec, &phi, &coc, 1, &g)?.to_string());
    out.push(z_transfer_exact(spec, &phi, &coc, 1, &g)?.to_string());
    for (name, q) in quandles()? {
        let theta = QuandleCochain2::from_fn(q.len(), 6, |x, y| u64::from(x + 2 * y))?.coboundary(&q)?;
        for (d, diag) in diagram::fixtures::all() {
            out.push(format!("{name} {d} {}", state_sum(&diag, &theta, &q, &g)?));
        }
    }
    Ok(out.join("\n"))
}

fn determinism() -> Result<Outcome> {
    let mut digests = Vec::new();
    for threads in [1, 2, 8] {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().expect("thread pool");
        digests.push(pool.install(exact_digest)?);
    }
    let same = digests.windows(2).all(|w| w[0] == w[1]);
    Ok(outcome(same, format!("workers=1,2,8 identical={same} lines={}", digests[0].lines().count())))
}

fn main() -> ExitCode {
    let criteria: [(&str, &str, fn() -> Result<Outcome>); 11] = [
        ("AC1", "electric construction", electric_construction),
        ("AC2", "transpose algebra", transpose_algebra),
        ("AC3", "cube complex soundness", complex_soundness),
        ("AC4", "cocycle search", cocycle_search),
        ("AC5", "third move", move_three),
        ("AC6", "sixth move", move_six),
        ("AC7", "seventh move", move_seven),
        ("AC8", "chi consistency", chi_consistency),
        ("AC9", "quandle state sums", quandle_state_sums),
        ("AC10", "lattice trace identity", lattice_trace_identity),
        ("AC11", "determinism", determinism),
    ];
    let mut failed = 0;
    for (id, name, run) in criteria {
        let o = run().unwrap_or_else(|e| outcome(false, format!("error: {e}")));
        if !o.pass {
            failed += 1;
        }
        println!("[{}] {id} {name}: {}", if o.pass { "PASS" } else { "FAIL" }, o.detail);
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
