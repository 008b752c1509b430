use proptest::prelude::*;

use cycind::bounds::{self, CherryDegrees};
use cycind::constructions::{blow_up, cycle, random_graph};
use cycind::count::{self, count_fast, count_oracle, Detail};
use cycind::io::{from_edge_list, from_graph6, parse_graph, to_edge_list, to_graph6, Format};
use cycind::Graph;

fn graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        prop::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
            let mut it = bits.into_iter();
            Graph::from_fn(n, |_, _| it.next().unwrap()).unwrap()
        })
    })
}

fn seeded(min_n: usize, max_n: usize) -> impl Strategy<Value = Graph> {
    (min_n..=max_n, 0.1f64..0.9, any::<u64>()).prop_map(|(n, p, s)| random_graph(n, p, s).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn adjacency_is_symmetric_and_loopless(g in graph(20)) {
        let mut degree_sum = 0;
        for u in 0..g.n() {
            prop_assert!(!g.has_edge(u, u));
            for w in 0..g.n() {
                prop_assert_eq!(g.has_edge(u, w), g.has_edge(w, u));
            }
            degree_sum += g.degree(u);
        }
        prop_assert_eq!(degree_sum, 2 * g.edge_count());
    }

    #[test]
    fn complement_is_an_involution(g in graph(20)) {
        let c = g.complement();
        prop_assert_eq!(c.edge_count() + g.edge_count(), g.n() * (g.n() - 1) / 2);
        prop_assert_eq!(c.complement(), g);
    }

    #[test]
    fn graph6_round_trip(g in graph(62)) {
        prop_assert_eq!(from_graph6(&to_graph6(&g)).unwrap(), g.clone());
        prop_assert_eq!(from_edge_list(&to_edge_list(&g)).unwrap(), g.clone());
        let (back, fmt) = parse_graph(&to_graph6(&g)).unwrap();
        prop_assert_eq!(fmt, Format::Graph6);
        prop_assert_eq!(back, g);
    }

    #[test]
    fn graph6_round_trip_long_header(n in 63usize..140, p in 0.0f64..1.0, s in any::<u64>()) {
        let g = random_graph(n, p, s).unwrap();
        prop_assert_eq!(from_graph6(&to_graph6(&g)).unwrap(), g);
    }

    #[test]
    fn fast_matches_oracle(g in graph(11), k in 4usize..=7) {
        prop_assume!(g.n() >= k);
        let oracle = count_oracle(&g, k).unwrap();
        let fast = count::count_fast_report(&g, k, Detail::Rooted).unwrap();
        prop_assert_eq!(fast.total, oracle.total);
        prop_assert_eq!(fast.rooted, oracle.rooted);
    }

    #[test]
    fn rooted_variants_match_oracle(g in seeded(6, 10), k in 4usize..=6) {
        prop_assume!(g.n() >= k);
        let r = count::count_fast_report(&g, k, Detail::Full).unwrap();
        for e in r.edge_rooted.as_deref().unwrap() {
            prop_assert_eq!(e.count, count::count_oracle_containing(&g, k, &[e.v, e.w]).unwrap());
        }
        for c in r.cherry_rooted.as_deref().unwrap() {
            // cycles through u, v, w with u and w the two cycle-neighbours of v
            let mut brute = 0;
            count::for_each_cycle(&g, k, |cyc| {
                let i = cyc.iter().position(|&x| x == c.v);
                if let Some(i) = i {
                    let a = cyc[(i + 1) % k];
                    let b = cyc[(i + k - 1) % k];
                    if (a, b) == (c.u, c.w) || (b, a) == (c.u, c.w) {
                        brute += 1;
                    }
                }
            }).unwrap();
            prop_assert_eq!(c.count, brute);
        }
    }

    #[test]
    fn handshake_identities_hold(g in seeded(6, 13), k in 4usize..=7) {
        prop_assume!(g.n() >= k);
        let r = count::count_fast_report(&g, k, Detail::Full).unwrap();
        prop_assert_eq!(r.check_identities(&g), Ok(()));
    }

    #[test]
    fn symmetrisation_identity(g in seeded(6, 12), k in 5usize..=7, a in any::<usize>(), b in any::<usize>()) {
        prop_assume!(g.n() >= k);
        let vm = a % g.n();
        let vp = (vm + 1 + b % (g.n() - 1)) % g.n();
        let h = count::symmetrise(&g, vm, vp).unwrap();
        let lhs = count_oracle(&h, k).unwrap().total as i128;
        let rhs = count_fast(&g, k).unwrap() as i128
            - count::count_rooted(&g, k, vm).unwrap() as i128
            + count::count_rooted(&g, k, vp).unwrap() as i128
            - count::count_containing_pair(&g, k, vm, vp).unwrap() as i128;
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn vertex_edge_cherry_bounds_hold(g in seeded(8, 16), k in 6usize..=8) {
        prop_assume!(g.n() >= k);
        let n = g.n();
        let r = count::count_fast_report(&g, k, Detail::Full).unwrap();
        prop_assert!(bounds::within_bound(r.total, bounds::global_pg_bound(n, k).unwrap()));
        for (v, &c) in r.rooted.as_deref().unwrap().iter().enumerate() {
            prop_assert!(bounds::within_bound(c, bounds::vertex_bound(n, k, g.degree(v)).unwrap()));
        }
        for e in r.edge_rooted.as_deref().unwrap() {
            let b = bounds::edge_bound(n, k, g.degree(e.v), g.degree(e.w), g.codegree(e.v, e.w).unwrap()).unwrap();
            prop_assert!(bounds::within_bound(e.count, b));
        }
        for c in r.cherry_rooted.as_deref().unwrap() {
            let b = bounds::cherry_bound(n, k, CherryDegrees::of(&g, c.u, c.v, c.w).unwrap()).unwrap();
            prop_assert!(bounds::within_bound(c.count, b));
        }
    }

    #[test]
    fn normalised_sums_bound_every_vertex(g in seeded(8, 16), k in 6usize..=8) {
        prop_assume!(g.n() >= k);
        for v in 0..g.n() {
            let exact = count::count_rooted(&g, k, v).unwrap();
            prop_assert!(bounds::within_bound(exact, bounds::edge_sum_bound(&g, k, v).unwrap()));
            prop_assert!(bounds::within_bound(exact, bounds::cherry_sum_bound(&g, k, v).unwrap()));
            if g.degree(v) * k <= g.n() {
                prop_assert!(bounds::within_bound(exact, bounds::exp_vertex_bound(g.n(), k, g.degree(v))));
            }
        }
    }

    #[test]
    fn cycle_blow_up_counts_product_of_parts(k in 5usize..=7, sizes in prop::collection::vec(1usize..=2, 7)) {
        let sizes = &sizes[..k];
        let g = blow_up(&cycle(k).unwrap(), sizes).unwrap().graph;
        let product: u128 = sizes.iter().map(|&t| t as u128).product();
        prop_assert_eq!(count_oracle(&g, k).unwrap().total, product);
        prop_assert_eq!(count_fast(&g, k).unwrap(), product);
    }

    #[test]
    fn random_graph_is_reproducible(n in 1usize..40, p in 0.0f64..=1.0, s in any::<u64>()) {
        prop_assert_eq!(random_graph(n, p, s).unwrap(), random_graph(n, p, s).unwrap());
    }
}

#[test]
fn vertex_bound_below_peak_on_a_degree_grid() {
    for k in 4..=9 {
        for n in [k, 2 * k, 50, 200] {
            let peak = bounds::vertex_bound_peak(n as f64, k);
            let pg = 2.0 * std::f64::consts::E * (n as f64 / k as f64).powi(k as i32 - 1);
            assert!(peak <= pg * (1.0 + 1e-12));
            for d in 0..n {
                assert!(bounds::vertex_bound(n, k, d).unwrap() <= peak * (1.0 + 1e-12), "n={n} k={k} d={d}");
            }
        }
    }
}

#[test]
fn exhaustive_six_vertices_fast_equals_oracle() {
    let pairs: Vec<(usize, usize)> = (0..6).flat_map(|u| (u + 1..6).map(move |w| (u, w))).collect();
    for mask in 0u32..1 << 15 {
        let edges: Vec<_> = pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e).collect();
        let g = Graph::from_edge_list(6, &edges).unwrap();
        for k in 4..=6 {
            assert_eq!(count_fast(&g, k).unwrap(), count_oracle(&g, k).unwrap().total, "mask {mask} k={k}");
        }
    }
}
