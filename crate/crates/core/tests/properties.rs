use hasm_core::asm::*;
use hasm_core::bijections::{asm_of_aztec_matching, aztec_matchings_of_asm, fortress_matchings_of_asm};
use hasm_core::builders::*;
use hasm_core::exact::{format_rational, parse_rational, rat, Rational};
use hasm_core::matchings::{enumerate_matchings, matching_sum, matching_sum_auto, Engine};
use hasm_core::renewal::*;
use hasm_core::{pt, Error, Point, WeightedGraph};
use num_bigint::BigInt;
use num_traits::Zero;
use proptest::prelude::*;

fn positive() -> impl Strategy<Value = Rational> {
    (1i64..=12, 1i64..=12).prop_map(|(p, q)| rat(p, q))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rationals_round_trip(p in -10_000i64..10_000, q in 1i64..10_000) {
        let r = rat(p, q);
        prop_assert_eq!(parse_rational(&format_rational(&r)).unwrap(), r);
    }

    #[test]
    fn gauge_covariance(k in 0usize..16, lambda in positive()) {
        let g = build_gn(2);
        let v = g.vertices().nth(k % g.vertex_count()).unwrap();
        let (h, factor) = gauge_scale_vertex(&g, v, &lambda).unwrap();
        prop_assert_eq!(&factor * &lambda, rat(1, 1));
        prop_assert_eq!(matching_sum_auto(&g).unwrap(), factor * matching_sum_auto(&h).unwrap());
    }

    #[test]
    fn stripping_pendants(ws in proptest::collection::vec(positive(), 1..4)) {
        // an Aztec rectangle with detached weighted edges beside it
        let mut g = build_aztec_rectangle(2, 2);
        for (k, w) in ws.iter().enumerate() {
            let x = 20 + 3 * k as i64;
            g.connect(pt(x, 0), pt(x, 1), w.clone()).unwrap();
        }
        let s = strip_forced_edges(&g);
        let product: Rational = ws.iter().product();
        prop_assert_eq!(&s.factor, &product);
        prop_assert!(s.isolated.is_none());
        prop_assert_eq!(matching_sum_auto(&g).unwrap(), s.factor * matching_sum_auto(&s.graph).unwrap());
    }

    #[test]
    fn renewal_on_weighted_gn(ws in proptest::collection::vec(positive(), 8)) {
        let g = build_gn(1).scale(4);
        let squares: Vec<Square> = (1..=2)
            .map(|c| {
                let s = square_corners(1, c);
                [s.left, s.top, s.right, s.bottom].map(|p| pt(4 * p.x, 4 * p.y))
            })
            .collect();
        let t = triple_vertices(&g, &squares).unwrap();
        let mut h = t.graph.clone();
        for (k, corners) in t.corners.iter().enumerate() {
            for e in 0..4 {
                h.set_weight(corners[e], corners[(e + 1) % 4], ws[4 * k + e].clone()).unwrap();
            }
        }
        let site = site_at(&h, &t.corners[0]).unwrap();
        let (r, factor) = apply_urban_renewal(&h, &site).unwrap();
        for e in [Engine::Brute, Engine::Pfaffian] {
            prop_assert_eq!(matching_sum(&h, e).unwrap(), &factor * matching_sum(&r, e).unwrap());
        }
    }
}

#[test]
fn heights_round_trip() {
    for n in 1..=4 {
        for a in enumerate_halved_asms(n, &BottomSpec::free(n)) {
            let h = height_from_asm(&a);
            assert_eq!(halved_from_height(&h).unwrap(), a);
        }
    }
    for k in 1..=4 {
        for a in enumerate_full_asms(k) {
            assert_eq!(full_from_height(&height_from_asm(&a)).unwrap(), a);
        }
    }
}

#[test]
fn teeth_images_invert() {
    for n in 1..=3 {
        for a in enumerate_halved_asms(n, &BottomSpec::free(n)) {
            let ms = aztec_matchings_of_asm(&a).unwrap();
            assert_eq!(BigInt::from(ms.len()), weight_stats(&a).minus_weight());
            for m in ms {
                assert_eq!(asm_of_aztec_matching(n, &m).unwrap(), a);
            }
        }
    }
}

#[test]
fn every_teeth_matching_has_a_preimage() {
    for n in 1..=3 {
        for m in enumerate_matchings(&build_teeth_region(n)).matchings {
            let a = asm_of_aztec_matching(n, &m).unwrap();
            assert!(aztec_matchings_of_asm(&a).unwrap().contains(&m));
        }
    }
}

#[test]
fn fortress_images_have_parity_size() {
    for n in 1..=3 {
        for a in enumerate_halved_asms(n, &BottomSpec::free(n)) {
            let ms = fortress_matchings_of_asm(&a).unwrap();
            assert_eq!(BigInt::from(ms.len()), weight_stats(&a).parity_weight());
        }
    }
}

#[test]
fn fortress_sites_are_even_cells() {
    for n in 1..=3 {
        for cs in BottomSpec::free(n).expand() {
            let g = normalize_fortress_bottom(&build_fortress(n, &BottomSpec::exact(&cs)).unwrap());
            let centers: Vec<Point> = find_renewal_sites(&g).iter().map(|s| s.center4()).collect();
            let mut even = Vec::new();
            for i in 1..=n {
                for j in 1..=2 * n {
                    if cell_is_even(i, j) {
                        let c = cell_center(i, j);
                        even.push(pt(4 * c.x, 4 * c.y));
                    }
                }
            }
            centers.iter().for_each(|c| assert!(even.contains(c), "{c} is not an even cell"));
            assert_eq!(centers.len(), n * n);
        }
    }
}

#[test]
fn trace_json_round_trip_and_replay() {
    for n in 2..=3 {
        let r = reduce_gn_once(n).unwrap();
        let json = serde_json::to_string(&r.trace).unwrap();
        let back: ReductionTrace = serde_json::from_str(&json).unwrap();
        assert_eq!(back, r.trace);
        let rep = replay(&back, true).unwrap();
        assert_eq!(rep.cumulative, expected_factor(n));
        assert!(rep.final_graph.coordinate_isomorphic(&r.final_graph));
    }
}

#[test]
fn tampered_traces_are_rejected() {
    let trace = reduce_gn_once(2).unwrap().trace;

    let mut wrong_factor = trace.clone();
    let k = wrong_factor.steps.iter().position(|s| s.factor != rat(1, 1)).unwrap();
    wrong_factor.steps[k].factor *= rat(2, 1);
    assert!(matches!(replay(&wrong_factor, false), Err(Error::StepFailed { index, .. }) if index == k));

    let mut wrong_total = trace.clone();
    wrong_total.cumulative = rat(1, 1);
    assert!(replay(&wrong_total, false).is_err());

    let mut dropped = trace.clone();
    let renew = dropped.steps.iter().position(|s| matches!(s.op, StepOp::Renew { .. })).unwrap();
    dropped.steps.remove(renew);
    assert!(replay(&dropped, false).is_err());

    let mut bad_gauge = trace;
    for s in bad_gauge.steps.iter_mut() {
        if let StepOp::Gauge { lambda, .. } = &mut s.op {
            *lambda = rat(3, 1);
            break;
        }
    }
    assert!(replay(&bad_gauge, false).is_err());
}

#[test]
fn step_json_shape() {
    let step = TraceStep {
        op: StepOp::Gauge { vertex: pt(16, -32), lambda: rat(1, 2) },
        factor: rat(2, 1),
        cumulative: rat(15, 8),
    };
    let v = serde_json::to_value(&step).unwrap();
    assert_eq!(v["op"], "gauge");
    assert_eq!(v["lambda"], "1/2");
    assert_eq!(v["factor"], "2");
    let back: TraceStep = serde_json::from_value(v).unwrap();
    assert_eq!(back, step);
}

#[test]
fn odd_components_have_zero_sum() {
    let mut g = WeightedGraph::new();
    g.connect(pt(0, 0), pt(1, 0), rat(1, 1)).unwrap();
    g.connect(pt(1, 0), pt(2, 0), rat(1, 1)).unwrap();
    g.connect(pt(5, 0), pt(6, 0), rat(1, 1)).unwrap();
    for e in [Engine::Brute, Engine::Pfaffian] {
        assert!(matching_sum(&g, e).unwrap().is_zero());
    }
}
