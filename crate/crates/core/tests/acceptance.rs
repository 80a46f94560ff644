//! Acceptance gate. One test per criterion, each printing a single
//! pass/fail line (visible with --nocapture, and always on failure) before
//! asserting. Tolerances and budgets appear literally in the assertions.

use std::time::Instant;

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use canongraph::convexrep::{
    build_representation, random_blowup_spec, represent_canonical, verify_representation,
};
use canongraph::embedding::PlanarEmbedding;
use canongraph::gadgets::{
    find_gadget_for_type, validate_certificate, validate_lemma6_witness, verify_lemma6_pattern,
    CertificateType, PartitionCertificate, GADGET_VERTICES,
};
use canongraph::geom::polyline_intersections;
use canongraph::graph::graph_from_edge_mask;
use canongraph::graph6::{from_graph6, to_graph6};
use canongraph::lab::{
    count_canonical_exact, great_partition_ratio_experiment, pstar_statistics, ASYMPTOTIC_SCOPE,
};
use canongraph::packing::pack;
use canongraph::partition::find_great_partition;
use canongraph::sample::random_great_graph;
use canongraph::strings::strings_from_convex;

fn verdict(criterion: usize, pass: bool, detail: &str) {
    println!(
        "criterion {}: {} - {}",
        criterion,
        if pass { "PASS" } else { "FAIL" },
        detail
    );
}

/// 200 random great graphs with n <= 24: representation construction
/// succeeds and the exact verifier accepts, each instance < 5 s, suite
/// < 10 min.
#[test]
fn criterion_1_represent_canonical_end_to_end() {
    let mut rng = ChaCha8Rng::seed_from_u64(1401);
    let suite = Instant::now();
    let mut worst = 0.0f64;
    for i in 0..200 {
        let sizes = [
            rng.gen_range(0..=6),
            rng.gen_range(0..=6),
            rng.gen_range(0..=6),
            rng.gen_range(0..=6),
        ];
        let (g, _) = random_great_graph(&sizes, rng.gen());
        assert!(g.n() <= 24);
        let t = Instant::now();
        let rep = represent_canonical(&g)
            .unwrap()
            .unwrap_or_else(|| panic!("instance {} ({:?}): no representation", i, sizes));
        let report = verify_representation(&rep, &g).unwrap();
        let dt = t.elapsed().as_secs_f64();
        worst = worst.max(dt);
        assert!(
            report.ok(),
            "instance {} ({:?}): {} mismatched pairs",
            i,
            sizes,
            report.mismatches.len()
        );
        assert!(dt < 5.0, "instance {} took {:.3}s", i, dt);
    }
    let total = suite.elapsed().as_secs_f64();
    let pass = total < 600.0;
    verdict(
        1,
        pass,
        &format!(
            "200/200 exact verifications, worst instance {:.3}s, suite {:.1}s",
            worst, total
        ),
    );
    assert!(pass, "suite took {:.1}s, budget 600s", total);
}

/// 50 random blow-up specs over the four stock templates with part sizes
/// up to 4: build + exact verify, zero mismatched pairs.
#[test]
fn criterion_2_blowup_generality() {
    let mut rng = ChaCha8Rng::seed_from_u64(1402);
    for i in 0..50 {
        let spec = random_blowup_spec(&mut rng);
        let p = pack(spec.template(), 1e-10).unwrap();
        let rep = build_representation(&spec, &p).unwrap();
        let report = verify_representation(&rep, &spec.blown_graph()).unwrap();
        assert!(
            report.ok(),
            "spec {}: {} mismatched pairs",
            i,
            report.mismatches.len()
        );
    }
    verdict(2, true, "50/50 blow-ups built and exactly verified");
}

/// K5-e packing: max tangency residual < 1e-10 with positive non-edge
/// margin. K3 packing: symmetric closed form (unit radii, centers at
/// pairwise distance 2) to 1e-9.
#[test]
fn criterion_3_packing_tolerances() {
    let e = PlanarEmbedding::k5_minus_edge();
    let p = pack(&e, 1e-10).unwrap();
    let dist = |i: usize, j: usize| {
        let (xi, yi) = p.center(i);
        let (xj, yj) = p.center(j);
        ((xi - xj).powi(2) + (yi - yj).powi(2)).sqrt()
    };
    let mut residual = 0.0f64;
    let mut margin = f64::INFINITY;
    for i in 0..5 {
        for j in i + 1..5 {
            let gap = dist(i, j) - (p.radius(i) + p.radius(j));
            if e.graph().adjacent(i, j) {
                residual = residual.max(gap.abs());
            } else {
                margin = margin.min(gap);
            }
        }
    }

    let t = pack(&PlanarEmbedding::triangle(), 1e-10).unwrap();
    let mut closed_form = 0.0f64;
    for i in 0..3 {
        closed_form = closed_form.max((t.radius(i) - 1.0).abs());
        for j in i + 1..3 {
            let (xi, yi) = t.center(i);
            let (xj, yj) = t.center(j);
            let d = ((xi - xj).powi(2) + (yi - yj).powi(2)).sqrt();
            closed_form = closed_form.max((d - 2.0).abs());
        }
    }
    let pass = residual < 1e-10 && margin > 0.0 && closed_form <= 1e-9;
    verdict(
        3,
        pass,
        &format!(
            "K5-e residual {:.2e} (< 1e-10), non-edge margin {:.3e} (> 0), K3 closed-form error {:.2e} (<= 1e-9)",
            residual, margin, closed_form
        ),
    );
    assert!(pass);
}

/// 50 verified representations turned into strings: every curve pair
/// crosses at most 2n times, counted exactly; zero violations.
#[test]
fn criterion_4_crossing_bound() {
    let mut rng = ChaCha8Rng::seed_from_u64(1404);
    let mut worst = (0usize, 1usize);
    for i in 0..50 {
        let spec = random_blowup_spec(&mut rng);
        let p = pack(spec.template(), 1e-10).unwrap();
        let rep = build_representation(&spec, &p).unwrap();
        let g = spec.blown_graph();
        assert!(verify_representation(&rep, &g).unwrap().ok(), "spec {}", i);
        let s = strings_from_convex(&rep).unwrap();
        let n = g.n();
        for &(u, v, c) in &s.crossings {
            // recount from the emitted curves; the stored count must match
            let (pts, overlap) = polyline_intersections(&s.curves[u], &s.curves[v]);
            assert!(!overlap, "spec {}: curves {} and {} overlap", i, u, v);
            assert_eq!(pts.len(), c, "spec {}: stored count disagrees", i);
            assert!(
                c <= 2 * n,
                "spec {}: curves {} and {} cross {} > 2n = {}",
                i,
                u,
                v,
                c,
                2 * n
            );
            if c * worst.1 > worst.0 * n {
                worst = (c, n);
            }
        }
    }
    verdict(
        4,
        true,
        &format!(
            "50/50 string families within the 2n bound, worst pair {} crossings at n = {}",
            worst.0, worst.1
        ),
    );
}

/// All five gadget types: search result carries machine-validated pattern
/// witness and partition certificate, matches the committed golden files
/// byte for byte, and the committed files revalidate; all in < 60 s.
#[test]
fn criterion_5_gadget_coverage() {
    let start = Instant::now();
    let dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("../../assets/gadgets");
    for tag in CertificateType::ALL {
        let (g, cert) = find_gadget_for_type(tag).unwrap();
        assert_eq!(g.n(), GADGET_VERTICES);
        assert_eq!(cert.tag, tag);
        validate_certificate(&g, &cert).unwrap();
        let w = verify_lemma6_pattern(&g).unwrap();
        validate_lemma6_witness(&g, &w).unwrap();

        let g6 = std::fs::read_to_string(dir.join(format!("{}.g6", tag.letter()))).unwrap();
        assert_eq!(to_graph6(&g), g6.trim_end(), "type {} graph drifted", tag.letter());
        let json = std::fs::read_to_string(dir.join(format!("{}.json", tag.letter()))).unwrap();
        let committed = PartitionCertificate::from_json(json.trim_end(), g.n()).unwrap();
        assert_eq!(committed, cert, "type {} certificate drifted", tag.letter());

        // the committed pair revalidates on its own
        let gc = from_graph6(g6.trim_end()).unwrap();
        validate_certificate(&gc, &committed).unwrap();
        validate_lemma6_witness(&gc, &verify_lemma6_pattern(&gc).unwrap()).unwrap();
    }
    let dt = start.elapsed().as_secs_f64();
    let pass = dt < 60.0;
    verdict(
        5,
        pass,
        &format!("five types found, validated, and matching golden files in {:.1}s", dt),
    );
    assert!(pass, "revalidation took {:.1}s, budget 60s", dt);
}

/// Exhaustive solver oracle on 6 vertices: the backtracking solver agrees
/// with a direct scan of all 5^6 class assignments on every one of the
/// 32768 labeled graphs, in < 5 min; the derived canonical count lands in
/// [2^13, 2^15).
#[test]
fn criterion_6_solver_oracle_n6() {
    let start = Instant::now();
    let pairs: Vec<(usize, usize)> = (0..6)
        .flat_map(|u| (u + 1..6).map(move |v| (u, v)))
        .collect();
    // classes 0-2 are the cliques, 3 and 4 the two X4 halves; a pair in one
    // class must be an edge, a pair split between the halves must not be,
    // anything else is free
    let assignments: Vec<(u16, u16)> = (0..5u32.pow(6))
        .map(|mut code| {
            let classes: Vec<u32> = (0..6)
                .map(|_| {
                    let c = code % 5;
                    code /= 5;
                    c
                })
                .collect();
            let mut required = 0u16;
            let mut forbidden = 0u16;
            for (k, &(u, v)) in pairs.iter().enumerate() {
                let (a, b) = (classes[u], classes[v]);
                if a == b {
                    required |= 1 << k;
                } else if a >= 3 && b >= 3 {
                    forbidden |= 1 << k;
                }
            }
            (required, forbidden)
        })
        .collect();

    let mut count = 0u64;
    for mask in 0u64..1 << 15 {
        let g = graph_from_edge_mask(6, mask);
        let mut m = 0u16;
        for (k, &(u, v)) in pairs.iter().enumerate() {
            if g.adjacent(u, v) {
                m |= 1 << k;
            }
        }
        let oracle = assignments
            .iter()
            .any(|&(req, forb)| m & req == req && m & forb == 0);
        let solved = find_great_partition(&g);
        if let Some(p) = &solved {
            assert!(p.is_valid(&g), "mask {}: solver returned an invalid partition", mask);
        }
        assert_eq!(
            solved.is_some(),
            oracle,
            "mask {}: solver and assignment oracle disagree",
            mask
        );
        count += u64::from(oracle);
    }
    let derived = count_canonical_exact(6).unwrap();
    assert_eq!(count, derived, "exhaustive count disagrees with lab count");
    let dt = start.elapsed().as_secs_f64();
    let pass = dt < 300.0 && (1 << 13..1 << 15).contains(&count);
    verdict(
        6,
        pass,
        &format!(
            "32768/32768 graphs agree, |Canon_6| = {} in [2^13, 2^15), {:.1}s",
            count, dt
        ),
    );
    assert!(pass, "count {} or runtime {:.1}s out of bounds", count, dt);
}

/// Candidate-restricted partition counting at n = 64 over 200 seeds: the
/// fraction of samples with exactly 6 ordered great partitions is >= 0.90.
#[test]
fn criterion_7_partition_count_concentration() {
    let report = great_partition_ratio_experiment(64, 200, 0).unwrap();
    let fraction = report.statistics["fraction_exactly_six"].as_f64().unwrap();
    let below = report.statistics["below_six"].as_u64().unwrap();
    let pass = fraction >= 0.90 && below == 0;
    verdict(
        7,
        pass,
        &format!(
            "fraction exactly six = {:.3} (>= 0.90), below six = {}",
            fraction, below
        ),
    );
    assert!(pass, "report: {}", report.human());
}

/// Common-neighbor statistics at n = 128 over 100 seeds: the P* condition
/// holds on at least 95% of samples, and the same-part and cross-part mean
/// common-neighbor counts stay within 3 sqrt(n) of 7n/16 and 3n/8.
#[test]
fn criterion_8_pstar_statistics() {
    let n = 128usize;
    let report = pstar_statistics(n, 100, 0).unwrap();
    let fraction = report.statistics["pstar_fraction"].as_f64().unwrap();
    let mean_same = report.statistics["mean_same_clique_part"].as_f64().unwrap();
    let mean_cross = report.statistics["mean_cross_clique_part"].as_f64().unwrap();
    let band = 3.0 * (n as f64).sqrt();
    let same_ok = (mean_same - 7.0 * n as f64 / 16.0).abs() <= band;
    let cross_ok = (mean_cross - 3.0 * n as f64 / 8.0).abs() <= band;
    let frac_ok = fraction >= 0.95;
    let pass = frac_ok && same_ok && cross_ok;
    verdict(
        8,
        pass,
        &format!(
            "P* fraction {:.3} (needs >= 0.95: {}), mean same {:.2} within 7n/16 +- 3 sqrt n: {}, mean cross {:.2} within 3n/8 +- 3 sqrt n: {}",
            fraction, frac_ok, mean_same, same_ok, mean_cross, cross_ok
        ),
    );
    assert!(
        pass,
        "P* holds on {:.1}% of samples at n = {}; every pair must clear a 13n/32 \
         threshold that sits essentially at the same-part mean, so the per-sample pass \
         probability stays near zero until n is in the thousands. See the report:\n{}",
        fraction * 100.0,
        n,
        report.human()
    );
}

/// The almost-all claims themselves are out of testing reach: string graphs
/// cannot be enumerated, so there is no uniform sampler to check against.
/// The suite must say so, in the reports and in the README, rather than
/// silently substituting.
#[test]
fn criterion_9_nonreproducibility_statement() {
    for phrase in ["cannot be enumerated", "NP-complete", "not"] {
        assert!(
            ASYMPTOTIC_SCOPE.contains(phrase),
            "scope statement lost the phrase {:?}",
            phrase
        );
    }
    let ratio = great_partition_ratio_experiment(32, 1, 0).unwrap();
    assert_eq!(ratio.scope, ASYMPTOTIC_SCOPE);
    let stats = pstar_statistics(64, 1, 0).unwrap();
    assert_eq!(stats.scope, ASYMPTOTIC_SCOPE);
    let readme = std::fs::read_to_string(
        std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("../../README.md"),
    )
    .unwrap();
    // compare with wrapping-insensitive whitespace
    let flat = readme.split_whitespace().collect::<Vec<_>>().join(" ");
    for phrase in ["cannot be enumerated", "not testable at desk scale"] {
        assert!(
            flat.contains(phrase),
            "README lost the non-reproducibility phrase {:?}",
            phrase
        );
    }
    verdict(
        9,
        true,
        "non-reproducibility stated in every sampled report and in the README",
    );
}
