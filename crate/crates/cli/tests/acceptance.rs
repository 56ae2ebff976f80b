//! Acceptance suite. Every criterion runs and prints one PASS/FAIL line;
//! the test fails at the end if any criterion failed.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_3, FRAC_PI_4, FRAC_PI_6, PI};
use std::time::{Duration, Instant};

use angle_spectrum::svg::pi_label;
use angle_spectrum::{run_spectrum, GroupSource, RunConfig};
use angle_spectrum_core::{
    admissible_q, angle_cos2, build_spectrum, crosses, detect_rational_pi, euler_phi, oriented_angle, preset,
    BoundaryPoint, DegreeBound, Geodesic, GeodesicShape, MoebiusElement, SpectrumBounds, SpectrumReport, Tolerances,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Outcome {
    ok: bool,
    detail: String,
}

fn pass(detail: impl Into<String>) -> Outcome {
    Outcome {
        ok: true,
        detail: detail.into(),
    }
}

fn fail(detail: impl Into<String>) -> Outcome {
    Outcome {
        ok: false,
        detail: detail.into(),
    }
}

fn modular_bounds() -> SpectrumBounds {
    SpectrumBounds {
        max_word_len: 6,
        max_trace: 12.0,
        conj_len: 6,
        qmax: 50,
        eps_rat: 1e-6,
        ..SpectrumBounds::default()
    }
}

fn single_thread<T: Send>(f: impl FnOnce() -> T + Send) -> T {
    rayon::ThreadPoolBuilder::new()
        .num_threads(1)
        .build()
        .unwrap()
        .install(f)
}

fn criterion_1() -> Outcome {
    let g = preset("modular").unwrap();
    let start = Instant::now();
    let rep = single_thread(|| build_spectrum(&g, &modular_bounds(), &Tolerances::default())).unwrap();
    let elapsed = start.elapsed();
    let allowed = [FRAC_PI_6, FRAC_PI_4, FRAC_PI_3];
    let mut problems = Vec::new();
    for h in &rep.rational_hits {
        // an unoriented crossing angle is the smaller of θ and π − θ
        let angle = h.theta.min(PI - h.theta);
        if !allowed.iter().any(|a| (angle - a).abs() <= 1e-6) {
            problems.push(format!("{} outside {{π/6, π/4, π/3}}", pi_label(h.p, h.q)));
        }
        if !h.ok || euler_phi(h.q) > 2 || ![1, 2, 3, 4, 6].contains(&h.q) {
            problems.push(format!("{} breaks φ(q) ≤ 2", pi_label(h.p, h.q)));
        }
    }
    if elapsed > Duration::from_secs(60) {
        problems.push(format!("took {elapsed:?}"));
    }
    let hits: Vec<String> = rep.rational_hits.iter().map(|h| pi_label(h.p, h.q)).collect();
    let detail = format!(
        "{} classes, {} records, hits [{}], {:.2?}",
        rep.classes.len(),
        rep.records.len(),
        hits.join(", "),
        elapsed
    );
    if problems.is_empty() {
        pass(detail)
    } else {
        fail(format!("{detail}; {}", problems.join("; ")))
    }
}

fn random_geodesic(rng: &mut ChaCha8Rng) -> Geodesic {
    let g = if rng.gen_bool(0.2) {
        Geodesic::vertical(rng.gen_range(-3.0..3.0))
    } else {
        Geodesic::semicircle(rng.gen_range(-3.0..3.0), rng.gen_range(0.05..4.0))
    };
    if rng.gen_bool(0.5) {
        g.reversed()
    } else {
        g
    }
}

fn crossing_pairs(n: usize) -> Vec<(Geodesic, Geodesic)> {
    let tol = Tolerances::default();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0002);
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        let (a, b) = (random_geodesic(&mut rng), random_geodesic(&mut rng));
        if crosses(&a, &b, &tol) {
            out.push((a, b));
        }
    }
    out
}

fn criterion_2(pairs: &[(Geodesic, Geodesic)]) -> Outcome {
    let tol = Tolerances::default();
    let start = Instant::now();
    let mut worst = 0.0f64;
    for (a, b) in pairs {
        let theta = oriented_angle(a, b, &tol).unwrap();
        let c2 = angle_cos2(a, b, &tol).unwrap();
        worst = worst.max((theta.cos().powi(2) - c2).abs());
    }
    let elapsed = start.elapsed();
    let detail = format!("{} pairs, max |Δcos²| = {worst:.3e}, {elapsed:.2?}", pairs.len());
    if worst <= 1e-9 && elapsed < Duration::from_secs(5) {
        pass(detail)
    } else {
        fail(detail)
    }
}

fn criterion_3(pairs: &[(Geodesic, Geodesic)]) -> Outcome {
    let tol = Tolerances::default();
    let mut worst = 0.0f64;
    for (a, b) in pairs {
        let s = oriented_angle(a, b, &tol).unwrap() + oriented_angle(b, a, &tol).unwrap();
        worst = worst.max((s - PI).abs());
    }
    let detail = format!("{} pairs, max |θ + θ' − π| = {worst:.3e}", pairs.len());
    if worst <= 1e-12 {
        pass(detail)
    } else {
        fail(detail)
    }
}

/// A fixed element with entries in [−2, 2] and unit determinant.
fn seeded_conjugator() -> MoebiusElement {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0004);
    loop {
        let (a, b, c) = (
            rng.gen_range(-2.0..2.0),
            rng.gen_range(-2.0..2.0),
            rng.gen_range(-2.0..2.0),
        );
        if f64::abs(a) < 0.25 {
            continue;
        }
        let d = (1.0 + b * c) / a;
        if d.abs() <= 2.0 {
            return MoebiusElement::new(a, b, c, d).unwrap();
        }
    }
}

fn sorted_cos2(rep: &SpectrumReport) -> Vec<f64> {
    let mut v: Vec<f64> = rep.records.iter().map(|r| r.cos2).collect();
    v.sort_by(f64::total_cmp);
    v
}

fn criterion_4() -> Outcome {
    let tol = Tolerances::default();
    let g = preset("modular").unwrap();
    let h = seeded_conjugator();
    let conj = g.conjugated(&h);
    let a = sorted_cos2(&build_spectrum(&g, &modular_bounds(), &tol).unwrap());
    let b = sorted_cos2(&build_spectrum(&conj, &modular_bounds(), &tol).unwrap());
    let worst = a.iter().zip(&b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max);
    let detail = format!(
        "conjugator {:?}, {} vs {} records, max |Δcos²| = {worst:.3e}",
        h.entries(),
        a.len(),
        b.len()
    );
    if a.len() == b.len() && worst <= 1e-6 {
        pass(detail)
    } else {
        fail(detail)
    }
}

fn criterion_5() -> Outcome {
    let tol = Tolerances::default();
    let g = preset("symmetric-schottky").unwrap();
    let bounds = SpectrumBounds {
        max_word_len: 4,
        conj_len: 4,
        ..SpectrumBounds::default()
    };
    let rep = build_spectrum(&g, &bounds, &tol).unwrap();
    let mut pairs: Vec<(usize, usize)> = rep
        .records
        .iter()
        .filter(|r| r.theta == FRAC_PI_2 && r.cos2 == 0.0)
        .map(|r| (r.class_i, r.class_j))
        .collect();
    pairs.sort();
    pairs.dedup();
    let b_axis = MoebiusElement::new(3.0, 4.0, 2.0, 3.0).unwrap().axis(&tol).unwrap();
    let unit = angle_cos2(&b_axis, &Geodesic::vertical(0.0), &tol).unwrap();
    let names = g.names();
    let shown: Vec<String> = pairs
        .iter()
        .map(|&(i, j)| {
            format!(
                "({}, {})",
                rep.classes[i].rep.word.display_with(names),
                rep.classes[j].rep.word.display_with(names)
            )
        })
        .collect();
    let detail = format!(
        "θ = π/2 exactly for {} class pairs {}; cos² at the (0, √2) crossing = {unit}",
        pairs.len(),
        shown.join(" ")
    );
    if pairs.len() >= 3 && unit == 0.0 {
        pass(detail)
    } else {
        fail(detail)
    }
}

fn criterion_6() -> Outcome {
    let start = Instant::now();
    let n = 10_000usize;
    let mut phi: Vec<u64> = (0..=n as u64).collect();
    for p in 2..=n {
        if phi[p] == p as u64 {
            for k in (p..=n).step_by(p) {
                phi[k] -= phi[k] / p as u64;
            }
        }
    }
    let mismatch = (1..=n).find(|&q| euler_phi(q as u64) != phi[q]);
    let adm = admissible_q(DegreeBound::new(1).unwrap());
    let mut failed_round_trips = Vec::new();
    let mut count = 0;
    for q in 2..=100u64 {
        for p in 1..q {
            if angle_spectrum_core::arithmetic::gcd(p, q) != 1 {
                continue;
            }
            count += 1;
            let theta = p as f64 * PI / q as f64;
            match detect_rational_pi(theta, 200, 1e-9) {
                Some(r) if (r.p, r.q) == (p, q) => {}
                other => failed_round_trips.push(format!("{p}/{q} ↦ {other:?}")),
            }
        }
    }
    let elapsed = start.elapsed();
    let detail = format!(
        "sieve to {n}: {}; admissible_q(1) = {adm:?}; {count} round trips, {} failed; {elapsed:.2?}",
        match mismatch {
            None => "all equal".to_string(),
            Some(q) => format!("differs at {q}"),
        },
        failed_round_trips.len()
    );
    if mismatch.is_none()
        && adm == vec![1, 2, 3, 4, 6]
        && failed_round_trips.is_empty()
        && elapsed < Duration::from_secs(5)
    {
        pass(detail)
    } else {
        fail(format!("{detail} {}", failed_round_trips.join(" ")))
    }
}

fn criterion_7() -> Outcome {
    let tol = Tolerances::default();
    let sqrt5 = 5f64.sqrt();
    let mut errors: Vec<(String, f64)> = Vec::new();
    let finite = |p: BoundaryPoint| p.finite().expect("finite fixed point");

    let m = MoebiusElement::new(2.0, 1.0, 1.0, 1.0).unwrap();
    let (rep, att) = m.fixed_points(&tol).unwrap();
    errors.push(("repelling (1−√5)/2".into(), (finite(rep) - (1.0 - sqrt5) / 2.0).abs()));
    errors.push(("attracting (1+√5)/2".into(), (finite(att) - (1.0 + sqrt5) / 2.0).abs()));
    match m.axis(&tol).unwrap().shape() {
        GeodesicShape::Semicircle { center, radius } => {
            errors.push(("center 1/2".into(), (center - 0.5).abs()));
            errors.push(("radius √5/2".into(), (radius - sqrt5 / 2.0).abs()));
        }
        s => errors.push((format!("shape {s:?}"), f64::INFINITY)),
    }
    let b = MoebiusElement::new(3.0, 4.0, 2.0, 3.0).unwrap();
    match b.axis(&tol).unwrap().shape() {
        GeodesicShape::Semicircle { center, radius } => {
            errors.push(("B center 0".into(), center.abs()));
            errors.push(("B radius √2".into(), (radius - 2f64.sqrt()).abs()));
        }
        s => errors.push((format!("B shape {s:?}"), f64::INFINITY)),
    }
    let (rep, att) = b.fixed_points(&tol).unwrap();
    errors.push(("B repelling −√2".into(), (finite(rep) + 2f64.sqrt()).abs()));
    errors.push(("B attracting √2".into(), (finite(att) - 2f64.sqrt()).abs()));

    let worst = errors.iter().map(|e| e.1).fold(0.0, f64::max);
    let bad: Vec<&str> = errors
        .iter()
        .filter(|e| !(e.1 <= 1e-12))
        .map(|e| e.0.as_str())
        .collect();
    let detail = format!("{} golden values, max error {worst:.3e}", errors.len());
    if bad.is_empty() {
        pass(detail)
    } else {
        fail(format!("{detail}; off: {}", bad.join(", ")))
    }
}

fn criterion_8() -> Outcome {
    let n = std::thread::available_parallelism().map_or(4, |n| n.get()).max(4);
    let json_at = |threads: usize| {
        let mut cfg = RunConfig::new(GroupSource::Preset("modular".into()));
        cfg.bounds = modular_bounds();
        cfg.threads = Some(threads);
        run_spectrum(&cfg).unwrap().json
    };
    let one = json_at(1);
    let many = json_at(n);
    let detail = format!("1 vs {n} threads, {} bytes", one.len());
    if one.as_bytes() == many.as_bytes() {
        pass(detail)
    } else {
        fail(detail)
    }
}

#[test]
fn acceptance() {
    let pairs = crossing_pairs(10_000);
    let results = [
        ("1 modular rational angles", criterion_1()),
        ("2 closed form vs tangents", criterion_2(&pairs)),
        ("3 orientation identity", criterion_3(&pairs)),
        ("4 conjugation invariance", criterion_4()),
        ("5 schottky right angles", criterion_5()),
        ("6 totient machinery", criterion_6()),
        ("7 fixed points and axes", criterion_7()),
        ("8 thread-count determinism", criterion_8()),
    ];
    for (name, o) in &results {
        println!("{} criterion {name}: {}", if o.ok { "PASS" } else { "FAIL" }, o.detail);
    }
    let failed: Vec<&str> = results.iter().filter(|r| !r.1.ok).map(|r| r.0).collect();
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
