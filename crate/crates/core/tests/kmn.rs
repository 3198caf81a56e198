use orient_dist::distinguishing::dprime;
use orient_dist::kmn::{dprime_kmn, od_minus_kmn, PredictionKind};
use orient_dist::orientations::od_minus;
use orient_dist::{Graph, Limits, Target};

#[test]
fn predictions_match_search_up_to_the_edge_cap() {
    let l = Limits::default();
    let mut resolved = 0;
    for m in 2..=5u64 {
        for n in m + 1..=10 {
            if (m * n) as usize > l.edge_cap {
                continue;
            }
            let g = Graph::complete_bipartite(m as usize, n as usize);
            let d = dprime(Target::Graph(&g)).unwrap().value;
            let p = dprime_kmn(m, n, &l).unwrap();
            assert_eq!(p.value(), Some(d), "K_{{{m},{n}}}: {:?}", p.kind);
            resolved += matches!(p.kind, PredictionKind::Resolved { .. }) as usize;
            if m * n <= 12 {
                let lo = od_minus(&g, &l).unwrap().value;
                assert_eq!(od_minus_kmn(m, n, &l).unwrap().value(), Some(lo));
            }
        }
    }
    assert!(resolved > 0);
}

#[test]
fn boundary_cases_are_bracketed_correctly() {
    let l = Limits::default();
    let tiny = Limits { edge_cap: 0, ..l };
    for m in 2..=4u64 {
        for n in m + 1..=8 {
            if (m * n) as usize > l.edge_cap {
                continue;
            }
            if let PredictionKind::Boundary { low, high } = dprime_kmn(m, n, &tiny).unwrap().kind {
                let d = dprime_kmn(m, n, &l).unwrap().value().unwrap();
                assert!(low <= d && d <= high);
            }
        }
    }
}
