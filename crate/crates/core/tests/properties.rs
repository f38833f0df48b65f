use std::collections::HashSet;
use std::ops::ControlFlow;

use proptest::prelude::*;
use shockpath::{
    collect_paths, enumerate_paths, gamma_preset, parse_edge_list, passes, path_stats, pc_census,
    shock_trace, sweep, theta_preset, Arc, Network, PcStrategy, PcVector, Shock, ThetaVector,
};
use shockpath_oracle::{naive_all_paths, naive_counts, naive_mu};

/// Random digraph on `n` nodes: each ordered pair gets an arc with some
/// probability, weights drawn from a mix of integers and arbitrary reals.
fn network(max_nodes: usize) -> impl Strategy<Value = Network> {
    (2..=max_nodes, 0.15f64..0.7).prop_flat_map(|(n, p)| {
        let pairs = n * (n - 1);
        let weight = prop_oneof![
            (1u32..6).prop_map(f64::from),
            0.05f64..4.0,
        ];
        proptest::collection::vec((proptest::bool::weighted(p), weight), pairs).prop_map(
            move |slots| {
                let labels: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
                let mut arcs = Vec::new();
                let mut slot = slots.into_iter();
                for s in 0..n {
                    for t in 0..n {
                        if s == t {
                            continue;
                        }
                        let (present, weight) = slot.next().unwrap();
                        if present {
                            arcs.push(Arc { source: s, target: t, weight });
                        }
                    }
                }
                Network::new(labels, arcs).unwrap()
            },
        )
    })
}

fn with_arcs(max_nodes: usize) -> impl Strategy<Value = Network> {
    network(max_nodes).prop_filter("needs an arc", |n| n.arc_count() > 0)
}

fn permuted(net: &Network, perm: &[usize]) -> Network {
    let n = net.node_count();
    let mut labels = vec![String::new(); n];
    for (old, &new) in perm.iter().enumerate() {
        labels[new] = net.label(old).to_string();
    }
    let arcs = net
        .arcs()
        .iter()
        .map(|a| Arc { source: perm[a.source], target: perm[a.target], weight: a.weight })
        .collect();
    Network::new(labels, arcs).unwrap()
}

fn strategy() -> impl Strategy<Value = PcStrategy> {
    prop_oneof![
        Just(PcStrategy::PreTraversal),
        Just(PcStrategy::PostArrival),
        Just(PcStrategy::Literal),
    ]
}

fn positive_vec(len: usize) -> impl Strategy<Value = Vec<f64>> {
    proptest::collection::vec(prop_oneof![(1u32..9).prop_map(f64::from), 0.1f64..12.0], len)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn census_matches_brute_force(net in network(8)) {
        let stats = path_stats(&net);
        prop_assert_eq!(&stats.counts_by_length, &naive_counts(&net).unwrap());
        prop_assert_eq!(stats.k_bar, stats.counts_by_length.len());
        // Per-start counts partition the per-length counts.
        let mut summed = vec![0u64; stats.k_bar];
        for per_start in &stats.counts_by_start {
            for (k, c) in per_start.iter().enumerate() {
                summed[k] += c;
            }
        }
        prop_assert_eq!(summed, stats.counts_by_length.clone());
    }

    #[test]
    fn visited_paths_are_simple_and_unique(net in network(7)) {
        let paths = collect_paths(&net, None).unwrap();
        let mut seen = HashSet::new();
        for p in &paths {
            let distinct: HashSet<_> = p.nodes.iter().collect();
            prop_assert_eq!(distinct.len(), p.nodes.len());
            prop_assert_eq!(p.weights.len() + 1, p.nodes.len());
            for (pair, &w) in p.nodes.windows(2).zip(&p.weights) {
                prop_assert_eq!(net.weight(pair[0], pair[1]), Some(w));
            }
            prop_assert!(seen.insert(p.nodes.clone()));
        }
        let naive: HashSet<Vec<usize>> =
            naive_all_paths(&net).unwrap().into_iter().map(|p| p.nodes).collect();
        prop_assert_eq!(seen, naive);
    }

    #[test]
    fn census_is_closed_under_prefixes(net in network(8)) {
        let stats = path_stats(&net);
        prop_assert!(stats.counts_by_length.iter().all(|&c| c > 0));
        prop_assert_eq!(stats.k_bar == 0, net.arc_count() == 0);
    }

    #[test]
    fn enumeration_is_deterministic(net in network(7)) {
        let run = || {
            let mut seq = Vec::new();
            enumerate_paths(&net, None, |p| {
                seq.push(p.nodes.to_vec());
                ControlFlow::Continue(())
            })
            .unwrap();
            seq
        };
        prop_assert_eq!(run(), run());
    }

    #[test]
    fn census_ignores_labelling(
        (net, perm) in network(8).prop_flat_map(|net| {
            let n = net.node_count();
            (Just(net), Just((0..n).collect::<Vec<_>>()).prop_shuffle())
        })
    ) {
        let other = permuted(&net, &perm);
        prop_assert_eq!(path_stats(&net).counts_by_length, path_stats(&other).counts_by_length);
    }

    #[test]
    fn edge_list_round_trips(net in network(8)) {
        // Canonical form: a parsed network, whose node order is first
        // appearance in its own arc list.
        let text = net.to_edge_list();
        prop_assume!(!text.is_empty());
        let (parsed, _) = parse_edge_list(&text).unwrap();
        let (again, report) = parse_edge_list(&parsed.to_edge_list()).unwrap();
        prop_assert!(report.warnings.is_empty());
        prop_assert_eq!(again, parsed);
    }

    #[test]
    fn subnetwork_never_grows(net in with_arcs(8), mask in proptest::collection::vec(any::<bool>(), 8)) {
        let keep: Vec<&str> = net
            .labels()
            .iter()
            .zip(&mask)
            .filter(|(_, &m)| m)
            .map(|(l, _)| l.as_str())
            .collect();
        if let Ok((sub, unknown)) = net.subnetwork(&keep) {
            prop_assert!(unknown.is_empty());
            prop_assert!(sub.arc_count() <= net.arc_count());
            prop_assert!(sub.node_count() <= keep.len());
        }
        let (all, _) = net.subnetwork(net.labels()).unwrap();
        prop_assert_eq!(all, net);
    }

    #[test]
    fn trace_is_monotone(
        weights in positive_vec(6),
        xi in 0.0f64..10.0, dxi in 0.0f64..3.0,
        delta in 0.0f64..1.5, ddelta in 0.0f64..0.5,
    ) {
        let base = shock_trace(&weights, Shock::new(xi, delta).unwrap()).sizes;
        let more_xi = shock_trace(&weights, Shock::new(xi + dxi, delta).unwrap()).sizes;
        let more_delta = shock_trace(&weights, Shock::new(xi, delta + ddelta).unwrap()).sizes;
        prop_assert_eq!(base.len(), weights.len() + 1);
        for h in 0..base.len() {
            prop_assert!(base[h] >= 0.0);
            prop_assert!(more_xi[h] >= base[h]);
            prop_assert!(more_delta[h] >= base[h]);
        }
    }

    #[test]
    fn trace_is_strictly_increasing_in_size_when_discounted(
        weights in proptest::collection::vec((1u32..9).prop_map(f64::from), 1..7),
        xi in 0u32..10, dxi in 1u32..4,
        eighths in 1u32..13,
    ) {
        // Small integers and multiples of 1/8: every step is exact in binary.
        let delta = f64::from(eighths) / 8.0;
        let base = shock_trace(&weights, Shock::new(f64::from(xi), delta).unwrap()).sizes;
        let more = shock_trace(&weights, Shock::new(f64::from(xi + dxi), delta).unwrap()).sizes;
        for h in 0..base.len() {
            prop_assert!(more[h] > base[h]);
        }
    }

    #[test]
    fn threshold_test_is_monotone(
        weights in positive_vec(5),
        gammas in positive_vec(5),
        bump_at in 0usize..5, bump in 0.0f64..4.0,
        xi in 0.0f64..10.0, dxi in 0.0f64..3.0,
        delta in 0.0f64..1.5, ddelta in 0.0f64..0.5,
        strategy in strategy(),
    ) {
        let gamma = PcVector::new(gammas.clone()).unwrap();
        let mut raised = gammas;
        raised[bump_at] += bump;
        let raised = PcVector::new(raised).unwrap();
        let s = Shock::new(xi, delta).unwrap();
        let base = passes(&weights, s, &gamma, strategy).unwrap();
        if base {
            prop_assert!(passes(&weights, Shock::new(xi + dxi, delta).unwrap(), &gamma, strategy).unwrap());
            prop_assert!(passes(&weights, Shock::new(xi, delta + ddelta).unwrap(), &gamma, strategy).unwrap());
        }
        if passes(&weights, s, &raised, strategy).unwrap() {
            prop_assert!(base);
        }
    }

    #[test]
    fn passing_paths_have_passing_prefixes(
        weights in positive_vec(6),
        gammas in positive_vec(6),
        xi in 0.0f64..10.0,
        delta in 0.0f64..1.5,
    ) {
        let gamma = PcVector::new(gammas).unwrap();
        let s = Shock::new(xi, delta).unwrap();
        for strategy in [PcStrategy::PreTraversal, PcStrategy::PostArrival] {
            if passes(&weights, s, &gamma, strategy).unwrap() {
                for len in 1..weights.len() {
                    let truncated = PcVector::new(gamma.as_slice()[..len].to_vec()).unwrap();
                    prop_assert!(passes(&weights[..len], s, &truncated, strategy).unwrap());
                }
            }
        }
    }

    #[test]
    fn measure_matches_naive(
        net in with_arcs(7),
        strategy in strategy(),
        xi in prop_oneof![(0u32..11).prop_map(f64::from), 0.0f64..10.0],
        delta in prop_oneof![(0u32..11).prop_map(|d| f64::from(d) / 10.0), 0.0f64..1.5],
        gamma_id in prop_oneof![Just("gamma1"), Just("gamma2"), Just("gamma3")],
        theta_id in prop_oneof![Just("theta1"), Just("theta2"), Just("theta3")],
    ) {
        let k_bar = path_stats(&net).k_bar;
        let gamma = gamma_preset(gamma_id, k_bar).unwrap();
        let theta_id = if k_bar < 2 { "theta1" } else { theta_id };
        let theta = theta_preset(theta_id, k_bar).unwrap();
        let shock = Shock::new(xi, delta).unwrap();
        let census = pc_census(&net, &gamma, shock, strategy).unwrap();
        let fast = shockpath::mu(&census, &theta).unwrap();
        let naive = naive_mu(&net, &gamma, &theta, shock, strategy).unwrap();
        prop_assert_eq!(fast.to_bits(), naive.to_bits());
        prop_assert!((0.0..=1.0).contains(&fast));
    }

    #[test]
    fn surface_matches_naive_with_explicit_vectors(
        (net, gammas, raw_thetas) in with_arcs(6).prop_flat_map(|net| {
            let k = path_stats(&net).k_bar;
            (Just(net), positive_vec(k), proptest::collection::vec(0.0f64..1.0, k))
        }),
        strategy in strategy(),
    ) {
        let sum: f64 = raw_thetas.iter().sum();
        prop_assume!(sum > 0.1);
        let mut thetas: Vec<f64> = raw_thetas.iter().map(|t| t / sum).collect();
        let rest: f64 = thetas[1..].iter().sum();
        thetas[0] = (1.0 - rest).max(0.0);
        let theta = match ThetaVector::new(thetas) {
            Ok(t) => t,
            Err(_) => return Ok(()),
        };
        let gamma = PcVector::new(gammas).unwrap();
        let xi = [0.0, 0.5, 1.0, 3.0, 7.5];
        let delta = [0.0, 0.2, 0.5, 1.0, 1.25];
        let surface = sweep(&net, &gamma, &theta, &xi, &delta, strategy).unwrap();
        for (d, &dv) in delta.iter().enumerate() {
            for (x, &xv) in xi.iter().enumerate() {
                let shock = Shock::new(xv, dv).unwrap();
                let naive = naive_mu(&net, &gamma, &theta, shock, strategy).unwrap();
                prop_assert_eq!(surface.mu[d][x].to_bits(), naive.to_bits());
            }
        }
    }
}
