mod common;

use adicol::constructions::{planar_gadget, ramsey_3deg, transitive_tournament, vertex_split, GadgetKind};
use adicol::random::{random_orientation, random_tournament, rng};
use adicol::solver::exact::{
    acyclic_dichromatic_number, chromatic_number, decide, dichromatic_number, is_acyclic_k_dicolourable, is_k_critical,
    is_k_dicolourable, Decision, Mode, SolveOptions, SolveOutcome,
};
use adicol::solver::polynomial::{chromatic_polynomial, count_acyclic_orientations, enumerate_acyclic_orientations};
use adicol::{Digraph, DigraphBuilder, Error, UndirectedGraph};
use common::*;
use proptest::prelude::*;
use rand::Rng;

fn opts() -> SolveOptions {
    SolveOptions::default()
}

fn c3() -> Digraph {
    Digraph::from_arcs(3, [(0, 1), (1, 2), (2, 0)]).unwrap()
}

/// Every oriented graph on at most five vertices: both parameters match
/// exhaustive search, certificates pass the naive checks, and the acyclic
/// value is never below the plain one.
#[test]
fn exact_values_match_exhaustion() {
    for n in 1..=5usize {
        for code in 0..3u64.pow((n * (n - 1) / 2) as u32) {
            let d = oriented_from_code(n, code);
            let di = dichromatic_number(&d, &opts()).unwrap().solved().unwrap();
            let ac = acyclic_dichromatic_number(&d, &opts()).unwrap().solved().unwrap();
            assert_eq!(di.value, brute_min(n, |c| naive_dicolouring(&d, c)), "{d:?}");
            assert_eq!(ac.value, brute_min(n, |c| naive_acyclic_colouring(&d, c)), "{d:?}");
            assert!(ac.value >= di.value);
            let dc = di.certificate.unwrap();
            let acc = ac.certificate.unwrap();
            assert_eq!((dc.used(), acc.used()), (di.value, ac.value));
            assert!(naive_dicolouring(&d, dc.colours()));
            assert!(naive_acyclic_colouring(&d, acc.colours()));
        }
    }
}

/// Digons are allowed for the dichromatic number.
#[test]
fn dichromatic_number_with_digons() {
    for seed in 0..300u64 {
        let mut r = rng(seed, 0);
        let n = r.random_range(1..=6);
        let mut b = DigraphBuilder::new(n);
        for u in 0..n {
            for v in 0..n {
                if u != v && r.random_bool(0.4) {
                    b.arc(u, v).unwrap();
                }
            }
        }
        let d = b.build();
        let value = dichromatic_number(&d, &opts()).unwrap().value();
        assert_eq!(value, brute_min(n, |c| naive_dicolouring(&d, c)), "{d:?}");
    }
    let digon = Digraph::from_arcs(2, [(0, 1), (1, 0)]).unwrap();
    assert_eq!(dichromatic_number(&digon, &opts()).unwrap().value(), 2);
    assert!(matches!(acyclic_dichromatic_number(&digon, &opts()), Err(Error::Digon(0, 1))));
}

#[test]
fn known_values() {
    assert_eq!(acyclic_dichromatic_number(&Digraph::empty(0), &opts()).unwrap().value(), 0);
    assert_eq!(acyclic_dichromatic_number(&transitive_tournament(6), &opts()).unwrap().value(), 1);
    assert_eq!(acyclic_dichromatic_number(&c3(), &opts()).unwrap().value(), 2);
    let dk5 = vertex_split(&UndirectedGraph::complete(5)).digraph;
    assert_eq!(acyclic_dichromatic_number(&dk5, &opts()).unwrap().value(), 3);
    assert_eq!(dichromatic_number(&dk5, &opts()).unwrap().value(), 2);
    let glued = planar_gadget(GadgetKind::GluedTriangle).digraph;
    assert!(is_acyclic_k_dicolourable(&glued, 2).unwrap().is_none());
    let c = is_acyclic_k_dicolourable(&glued, 3).unwrap().unwrap();
    assert!(naive_acyclic_colouring(&glued, c.colours()));
    for n in 1..=6 {
        let t = random_tournament(n, n as u64);
        assert!(is_acyclic_k_dicolourable(&t, n).unwrap().is_some());
    }
}

#[test]
fn chromatic_numbers() {
    let cases = [
        (UndirectedGraph::cycle(5), 3),
        (UndirectedGraph::cycle(6), 2),
        (UndirectedGraph::complete(4), 4),
        (UndirectedGraph::complete_bipartite(3, 3), 2),
        (UndirectedGraph::empty(3), 1),
        (ramsey_3deg(4).unwrap().digraph.underlying(), 2),
    ];
    for (g, want) in cases {
        let r = chromatic_number(&g, &opts()).unwrap().solved().unwrap();
        assert_eq!(r.value, want);
        let c = r.certificate.unwrap();
        assert!(g.edges().all(|(u, v)| c.colour(u) != c.colour(v)));
    }
}

#[test]
fn decisions_and_limits() {
    let dk5 = vertex_split(&UndirectedGraph::complete(5)).digraph;
    assert!(matches!(decide(&dk5, 2, Mode::Acyclic, &opts()).unwrap(), Decision::No { .. }));
    match decide(&dk5, 3, Mode::Acyclic, &opts()).unwrap() {
        Decision::Yes(c) => assert!(naive_acyclic_colouring(&dk5, c.colours())),
        other => panic!("{other:?}"),
    }
    assert!(is_k_dicolourable(&c3(), 1).unwrap().is_none());
    assert!(is_k_dicolourable(&c3(), 2).unwrap().is_some());
    let tight = SolveOptions { limit: Some(1), ..opts() };
    let big = vertex_split(&UndirectedGraph::complete(10)).digraph;
    assert!(matches!(acyclic_dichromatic_number(&big, &tight).unwrap(), SolveOutcome::ExceedsLimit { .. }));
    // acyclic inputs are answered without the engine, whatever their size
    let max = adicol::solver::exact::MAX_VERTICES;
    assert_eq!(acyclic_dichromatic_number(&Digraph::empty(max + 1), &opts()).unwrap().value(), 1);
    let cyclic = Digraph::from_arcs(max + 1, (0..=max).map(|i| (i, (i + 1) % (max + 1)))).unwrap();
    assert!(matches!(acyclic_dichromatic_number(&cyclic, &opts()), Err(Error::TooLarge { .. })));
}

#[test]
fn worker_count_does_not_change_values() {
    for seed in 0..20u64 {
        let t = random_tournament(9, seed);
        let one = acyclic_dichromatic_number(&t, &opts()).unwrap().value();
        let many = acyclic_dichromatic_number(&t, &SolveOptions { parallel: 3, ..opts() }).unwrap();
        assert_eq!(many.value(), one);
        let pre = acyclic_dichromatic_number(&t, &SolveOptions { tournament_prepass: true, ..opts() }).unwrap();
        assert_eq!(pre.value(), one);
    }
}

#[test]
fn critical_tournaments() {
    assert!(is_k_critical(&c3(), 2).unwrap());
    assert!(is_k_critical(&transitive_tournament(1), 1).unwrap());
    assert!(!is_k_critical(&transitive_tournament(3), 1).unwrap());
    assert!(!is_k_critical(&c3(), 3).unwrap());
    // C3 => TT1 still has value 2 after deleting the sink
    let c3_tt1 = Digraph::from_arcs(4, [(0, 1), (1, 2), (2, 0), (0, 3), (1, 3), (2, 3)]).unwrap();
    assert!(!is_k_critical(&c3_tt1, 2).unwrap());
    assert!(is_k_critical(&Digraph::empty(2), 1).is_err());
}

/// Number of proper colourings with at most `x` colours, by exhaustion.
fn count_proper(g: &UndirectedGraph, x: u32) -> i128 {
    if g.n() == 0 {
        return 1;
    }
    if x == 0 {
        return 0;
    }
    let mut count = 0;
    for_each_colouring(g.n(), x, |c| {
        if g.edges().all(|(u, v)| c[u] != c[v]) {
            count += 1;
        }
    });
    count
}

/// Acyclic orientations by trying all `2^m` orientations.
fn brute_acyclic_orientations(g: &UndirectedGraph) -> u64 {
    let edges: Vec<(usize, usize)> = g.edges().collect();
    (0u64..1 << edges.len())
        .filter(|mask| {
            let arcs = edges.iter().enumerate().map(|(i, &(u, v))| if mask >> i & 1 == 1 { (u, v) } else { (v, u) });
            kahn_acyclic(g.n(), arcs)
        })
        .count() as u64
}

fn random_graph(n: usize, p: f64, seed: u64) -> UndirectedGraph {
    let mut r = rng(seed, 3);
    let edges: Vec<(usize, usize)> =
        (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).filter(|_| r.random_bool(p)).collect();
    UndirectedGraph::from_edges(n, edges).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(120))]

    #[test]
    fn chromatic_polynomial_counts_colourings(n in 0usize..7, p in 0.0f64..1.0, seed in any::<u64>()) {
        let g = random_graph(n, p, seed);
        let poly = chromatic_polynomial(&g).unwrap();
        for x in 0..4 {
            prop_assert_eq!(poly.eval(x), count_proper(&g, x as u32));
        }
        let acyclic = brute_acyclic_orientations(&g);
        prop_assert_eq!(poly.eval(-1).unsigned_abs(), acyclic as u128);
        prop_assert_eq!(count_acyclic_orientations(&g).unwrap(), acyclic);
        prop_assert_eq!(enumerate_acyclic_orientations(&g).unwrap(), acyclic);
    }

    /// Deleting a vertex never raises either parameter, and adding a colour
    /// class never hurts.
    #[test]
    fn values_are_monotone(n in 2usize..9, p in 0.0f64..1.0, seed in any::<u64>()) {
        let g = random_graph(n, p, seed);
        let d = random_orientation(&g, seed);
        let whole = acyclic_dichromatic_number(&d, &opts()).unwrap().value();
        let whole_di = dichromatic_number(&d, &opts()).unwrap().value();
        prop_assert!(whole_di <= whole);
        for v in 0..n {
            let sub = d.without_vertex(v).unwrap().digraph;
            let part = acyclic_dichromatic_number(&sub, &opts()).unwrap().value();
            prop_assert!(part <= whole && whole <= part + 1);
        }
        prop_assert!(is_acyclic_k_dicolourable(&d, whole + 1).unwrap().is_some());
        if whole > 1 {
            prop_assert!(is_acyclic_k_dicolourable(&d, whole - 1).unwrap().is_none());
        }
    }
}
