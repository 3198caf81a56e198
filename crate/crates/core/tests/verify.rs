use orient_dist::generate::{generate_range, GraphClass};
use orient_dist::verify::{
    check_entry, scan_conjectures, verify_theorem, Corpus, Outcome, TheoremId, VerifyOptions, Which,
};
use orient_dist::Graph;

fn opts() -> VerifyOptions {
    VerifyOptions::default()
}

#[test]
fn theorem_ids_round_trip() {
    for id in TheoremId::ALL {
        assert_eq!(id.as_str().parse::<TheoremId>().unwrap(), id);
    }
    assert!(matches!(
        "thm99".parse::<TheoremId>(),
        Err(orient_dist::Error::UnknownTheorem(_))
    ));
}

#[test]
fn class_swap_is_skipped() {
    let g = Graph::complete_bipartite(2, 2);
    assert_eq!(
        check_entry(TheoremId::Cor3, &g, &opts()),
        Outcome::Skipped("class-swapping automorphism".into())
    );
    assert_eq!(check_entry(TheoremId::Cor3, &Graph::complete_bipartite(2, 3), &opts()), Outcome::Passed);
}

#[test]
fn cap_exceeded_is_skipped() {
    let tight = VerifyOptions {
        limits: orient_dist::Limits {
            edge_cap: 3,
            ..Default::default()
        },
        ..opts()
    };
    match check_entry(TheoremId::Cor3, &Graph::path(6), &tight) {
        Outcome::Skipped(r) => assert!(r.contains("edge cap"), "{r}"),
        o => panic!("{o:?}"),
    }
}

#[test]
fn conjecture_one_on_c4() {
    let c = Corpus::from_graphs("c4", &[Graph::cycle(4)]).unwrap();
    let r = scan_conjectures(&c, Which::One, &opts(), None);
    assert_eq!((r.passed, r.violations.len()), (1, 0));
}

#[test]
fn conjecture_one_on_trees() {
    let trees = generate_range(GraphClass::Trees, 3, 10);
    let c = Corpus::from_graphs("trees", &trees).unwrap();
    let r = scan_conjectures(&c, Which::One, &VerifyOptions { with_od_plus: false, ..opts() }, None);
    assert!(r.is_consistent());
    assert_eq!(r.passed, trees.len(), "{:?}", r.violations);
}

#[test]
fn conjecture_two_on_small_graphs() {
    let graphs = generate_range(GraphClass::Connected, 1, 6);
    let c = Corpus::from_graphs("connected", &graphs).unwrap();
    let r = scan_conjectures(&c, Which::Two, &opts(), None);
    assert!(r.is_consistent());
    assert!(r.violations.is_empty(), "{:?}", r.violations);
    assert!(r.passed > 100);
}

#[test]
fn reports_keep_corpus_order_and_are_deterministic() {
    let graphs = generate_range(GraphClass::Connected, 3, 5);
    let c = Corpus::from_graphs("connected", &graphs).unwrap();
    let a = verify_theorem(&c, TheoremId::Obs1, &opts());
    let b = verify_theorem(&c, TheoremId::Obs1, &opts());
    assert!(a.holds() && a.is_consistent());
    assert_eq!(a.skipped, b.skipped);
    assert_eq!(a.passed, b.passed);
    let order: Vec<&str> = c.entries().iter().map(|e| e.graph6.as_str()).collect();
    let t = verify_theorem(&c, TheoremId::Thm8, &opts());
    let skipped: Vec<&str> = t.skipped.iter().map(|s| s.graph6.as_str()).collect();
    let mut pos = skipped.iter().map(|s| order.iter().position(|o| o == s).unwrap());
    let mut last = pos.next().unwrap_or(0);
    for p in pos {
        assert!(p > last);
        last = p;
    }
}

#[test]
fn every_theorem_holds_on_a_small_mixed_corpus() {
    let mut graphs = generate_range(GraphClass::Connected, 1, 5);
    graphs.push(Graph::complete_bipartite(2, 5));
    graphs.push(Graph::cycle(6));
    let c = Corpus::from_graphs("mixed", &graphs).unwrap();
    for id in TheoremId::ALL {
        let r = verify_theorem(&c, id, &opts());
        assert!(r.is_consistent(), "{id}");
        assert!(r.holds(), "{id}: {:?}", r.violations);
        assert_eq!(r.total, graphs.len());
    }
}
