mod common;

use proptest::prelude::*;
use proptest::sample::Index;

use rcmlab::enet::{
    dirichlet_energy, effective_resistance, flow_path_decomposition, harmonic_potential, nash_williams_bound,
    optimal_flow, parallel_series_value, potential_cutset_decomposition, rectangle_duality_gap,
    series_parallel_value, three_node_voltage, thomson_energy, CutsetFamily, Flow, Network, Potential,
};
use rcmlab::fieldlab::FieldSample;
use rcmlab::LatticeBox;

use common::{bfs_distances, dense_conductance, dense_potential};

type Graph = (usize, Vec<(usize, usize, f64)>);

/// Connected graphs on at most 16 vertices with conductances in
/// `[e^-3, e^3]`.
fn graphs() -> impl Strategy<Value = Graph> {
    (2usize..=16).prop_flat_map(|n| {
        (
            Just(n),
            prop::collection::vec(any::<Index>(), n - 1),
            prop::collection::vec((0..n, 0..n), 0..=n),
            prop::collection::vec(-3.0..3.0f64, 2 * n),
        )
            .prop_map(|(n, parents, extra, logc)| {
                let mut edges = Vec::new();
                let mut seen = std::collections::HashSet::new();
                let mut lc = logc.into_iter().cycle();
                for (v, p) in (1..n).zip(parents) {
                    let u = p.index(v);
                    seen.insert((u, v));
                    edges.push((u, v, lc.next().unwrap().exp()));
                }
                for (a, b) in extra {
                    let (a, b) = (a.min(b), a.max(b));
                    if a != b && seen.insert((a, b)) {
                        edges.push((a, b, lc.next().unwrap().exp()));
                    }
                }
                (n, edges)
            })
    })
}

fn net(g: &Graph) -> Network {
    Network::from_conductances(g.0, &g.1).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn flow_paths_recompose_the_resistance(g in graphs()) {
        let net = net(&g);
        let (u, v) = (0, g.0 - 1);
        let r = effective_resistance(&net, &[u], &[v]).unwrap();
        let pd = flow_path_decomposition(&net, &optimal_flow(&net, &[u], &[v]).unwrap()).unwrap();
        prop_assert!((pd.weights.iter().sum::<f64>() - 1.0).abs() < 1e-10);
        pd.splitting.check_paths(&net, &pd.family).unwrap();
        let rp = parallel_series_value(&net, &pd.family, &pd.splitting).unwrap();
        prop_assert!((rp.ln() - r.ln()).abs() < 1e-8);
    }

    #[test]
    fn potential_cutsets_recompose_the_conductance(g in graphs()) {
        let net = net(&g);
        let (u, v) = (0, g.0 - 1);
        let c = dense_conductance(g.0, &g.1, &[u], &[v]);
        let cd = potential_cutset_decomposition(&net, &harmonic_potential(&net, &[u], &[v]).unwrap()).unwrap();
        let cs = series_parallel_value(&net, &cd.family, &cd.splitting).unwrap();
        prop_assert!((cs.ln() - c.ln()).abs() < 1e-8);
    }

    #[test]
    fn resistance_matches_the_dense_oracle(g in graphs()) {
        let net = net(&g);
        let (u, v) = (0, g.0 - 1);
        let r = effective_resistance(&net, &[u], &[v]).unwrap();
        let c = dense_conductance(g.0, &g.1, &[u], &[v]);
        prop_assert!((r.value() * c - 1.0).abs() < 1e-10);
        let t = thomson_energy(&net, &optimal_flow(&net, &[u], &[v]).unwrap()).unwrap();
        let d = dirichlet_energy(&net, &harmonic_potential(&net, &[u], &[v]).unwrap()).unwrap();
        prop_assert!(((t.ln() + d.ln()).exp() - 1.0).abs() < 1e-9);
    }

    /// A unit flow along a single path costs at least the effective
    /// resistance; any other potential costs at least the conductance.
    #[test]
    fn variational_principles(g in graphs(), bumps in prop::collection::vec(-0.3..0.3f64, 16)) {
        let net = net(&g);
        let (u, v) = (0, g.0 - 1);
        let r = effective_resistance(&net, &[u], &[v]).unwrap();
        let dist = bfs_distances(g.0, &g.1, v);
        let mut theta = vec![0.0; net.n_edges()];
        let mut x = u;
        while x != v {
            let (e, y) = net.edges().iter().enumerate()
                .filter_map(|(e, &(a, b))| {
                    let y = if a == x { b } else if b == x { a } else { return None };
                    (dist[y] + 1 == dist[x]).then_some((e, y))
                })
                .next()
                .unwrap();
            theta[e] = if net.edges()[e].0 == x { 1.0 } else { -1.0 };
            x = y;
        }
        let flow = Flow::new(vec![u], vec![v], theta);
        flow.check_unit(&net).unwrap();
        prop_assert!(thomson_energy(&net, &flow).unwrap().ln() >= r.ln() - 1e-12);

        let h = dense_potential(g.0, &g.1, &[u], &[v]);
        let f: Vec<f64> = h.iter().enumerate()
            .map(|(i, x)| if i == u || i == v { *x } else { (x + bumps[i]).clamp(0.0, 1.0) })
            .collect();
        let pot = Potential::new(&net, &[u], &[v], f).unwrap();
        prop_assert!(dirichlet_energy(&net, &pot).unwrap().ln() >= -r.ln() - 1e-12);
    }

    #[test]
    fn rayleigh_monotonicity(g in graphs(), which in any::<Index>(), factor in 1.0..50.0f64) {
        let (n, mut edges) = g;
        let r0 = effective_resistance(&Network::from_conductances(n, &edges).unwrap(), &[0], &[n - 1]).unwrap();
        let e = which.index(edges.len());
        edges[e].2 /= factor;
        let r1 = effective_resistance(&Network::from_conductances(n, &edges).unwrap(), &[0], &[n - 1]).unwrap();
        prop_assert!(r1.ln() >= r0.ln() - 1e-12);
    }

    #[test]
    fn resistance_scales_inversely_with_conductance(g in graphs(), shift in -5.0..5.0f64) {
        let (n, edges) = g;
        let r0 = effective_resistance(&Network::from_conductances(n, &edges).unwrap(), &[0], &[n - 1]).unwrap();
        let scaled: Vec<_> = edges.iter().map(|&(a, b, c)| (a, b, c * shift.exp())).collect();
        let r1 = effective_resistance(&Network::from_conductances(n, &scaled).unwrap(), &[0], &[n - 1]).unwrap();
        prop_assert!((r1.ln() - (r0.ln() - shift)).abs() < 1e-10);
    }

    #[test]
    fn nash_williams_is_a_lower_bound(g in graphs()) {
        let net = net(&g);
        let (u, v) = (0, g.0 - 1);
        let dist = bfs_distances(g.0, &g.1, u);
        let cutsets = (0..dist[v])
            .map(|d| net.edges().iter().enumerate()
                .filter(|(_, &(a, b))| dist[a].min(dist[b]) == d && dist[a].max(dist[b]) == d + 1)
                .map(|(e, _)| e)
                .collect())
            .collect();
        let fam = CutsetFamily::new(&net, vec![u], vec![v], cutsets).unwrap();
        let nw = nash_williams_bound(&net, &fam).unwrap();
        prop_assert!(effective_resistance(&net, &[u], &[v]).unwrap().ln() >= nw.ln() - 1e-12);
    }

    #[test]
    fn reciprocal_is_an_involution(g in graphs()) {
        let net = net(&g);
        let back = net.reciprocal().reciprocal();
        for (a, b) in net.log_conductances().iter().zip(back.log_conductances()) {
            prop_assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn crossing_duality_gap_is_nonnegative(
        w in 1..6i32,
        h in 1..6i32,
        gamma in 0.0..2.0f64,
        vals in prop::collection::vec(-2.0..2.0f64, 36),
    ) {
        let rect = LatticeBox::new(0, w, 0, h).unwrap();
        let field = FieldSample::synthetic(rect, |p| vals[(p.0 * 6 + p.1) as usize]);
        let net = Network::from_field(&field, gamma).unwrap();
        prop_assert!(rectangle_duality_gap(&net, &rect).unwrap() >= -1e-9);
    }

    /// Three nodes joined pairwise: the voltage formula against a direct
    /// solve.
    #[test]
    fn three_node_voltage_on_triangles(c in prop::collection::vec(-3.0..3.0f64, 3)) {
        let edges = [(0, 1, c[0].exp()), (0, 2, c[1].exp()), (1, 2, c[2].exp())];
        let r = |a: usize, b: usize| 1.0 / dense_conductance(3, &edges, &[a], &[b]);
        let phi = three_node_voltage(r(0, 1), r(0, 2), r(1, 2)).unwrap();
        let direct = dense_potential(3, &edges, &[1], &[2])[0];
        prop_assert!((phi - direct).abs() < 1e-12);
    }
}
