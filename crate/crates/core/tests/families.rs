//! Worked examples for the instance families, checked end to end.

use nctap::certificate::{certify, lower_bound};
use nctap::connectivity::{is_feasible_augmentation, EdgeSubgraph};
use nctap::generators::{
    ckkk_fractional_x, gen_chained, gen_ckkk_tap, gen_fig3_gap, gen_random_tap, gen_star_cycle, gen_tight_path,
    gen_triangle_tap, triangle_graph, CostRange, RandomParams,
};
use nctap::greedy::greedy_solve;
use nctap::inflation::{inflate, inflate_solution};
use nctap::oracle::checks::{check_cut_remark, check_extreme_point_bounds};
use nctap::oracle::ip::{solve_ip_2ec, solve_ip_tap, solve_ip_tap_2ec};
use nctap::oracle::lp::{solve_cut_lp, solve_ncss_lp, solve_tap_lp};
use nctap::oracle::separation::{separate_cut, separate_ncss, separate_tap};
use nctap::rational::{frac, harmonic, int};
use nctap::Rational;

#[test]
fn tight_path_values() {
    let inst = gen_tight_path(4, &frac(1, 100)).unwrap();
    assert_eq!(greedy_solve(&inst).unwrap().cost, frac(11, 6));
    assert_eq!(solve_ip_tap(&inst).unwrap().cost, frac(101, 100));

    let inst = gen_tight_path(3, &frac(1, 10)).unwrap();
    assert_eq!(greedy_solve(&inst).unwrap().cost, frac(3, 2));
    assert_eq!(solve_ip_tap(&inst).unwrap().cost, frac(11, 10));

    let two = gen_tight_path(2, &frac(1, 100)).unwrap();
    assert_eq!(greedy_solve(&two).unwrap().cost, int(1));
}

#[test]
fn tight_path_greedy_is_harmonic() {
    for lam in 2..=8 {
        for eps in [frac(1, 10), frac(1, 100)] {
            let inst = gen_tight_path(lam, &eps).unwrap();
            assert_eq!(greedy_solve(&inst).unwrap().cost, harmonic(lam - 1), "lam {lam}");
            if lam > 2 {
                assert_eq!(solve_ip_tap(&inst).unwrap().cost, int(1) + &eps, "lam {lam}");
            }
        }
    }
}

#[test]
fn tight_path_certificate() {
    let inst = gen_tight_path(4, &frac(1, 100)).unwrap();
    let (cert, verified) = certify(&inst).unwrap();
    assert_eq!(cert.greedy_cost, frac(11, 6));
    assert_eq!(lower_bound(&cert), int(1));
    assert_eq!(verified.report.certified_ratio, Some(frac(11, 6)));
}

#[test]
fn chained_family() {
    let eps = frac(1, 100);
    let inst = gen_chained(4, 3, &eps).unwrap();
    assert_eq!(inst.lambda().unwrap(), 4);
    assert!(inst.tree().diameter() >= 4);
    let long: Vec<usize> = inst.links.iter().filter(|l| l.cost == int(1) + &eps).map(|l| l.id).collect();
    assert_eq!(long.len(), 3);
    let greedy = greedy_solve(&inst).unwrap();
    assert!(greedy.picked.iter().all(|id| !long.contains(id)));
    assert_eq!(greedy.picked.len(), inst.links.len() - 3);
    let opt = solve_ip_tap(&inst).unwrap();
    assert_eq!(opt.cost, int(3) * (int(1) + &eps));
    for id in &opt.chosen {
        let cost = &inst.links[*id].cost;
        assert!(long.contains(id) || *cost == int(0));
    }
}

#[test]
fn chained_diameter_grows_with_copies() {
    for k in 1..=4 {
        let inst = gen_chained(3, k, &frac(1, 10)).unwrap();
        assert_eq!(inst.lambda().unwrap(), 3);
        assert!(inst.tree().diameter() > k);
    }
}

#[test]
fn star_cycle() {
    let inst = gen_star_cycle(5).unwrap();
    assert_eq!(solve_ip_tap(&inst).unwrap().cost, int(3));
    let lp = solve_tap_lp(&inst).unwrap();
    assert_eq!(lp.solution.objective, int(3));
    assert!(check_cut_remark(&inst, &lp.solution.x).unwrap());

    let half = vec![frac(1, 2); 4];
    let row = separate_tap(&inst, &half).unwrap().unwrap();
    assert_eq!((row.rhs.clone(), row.activity(&half)), (int(3), int(2)));

    let four = gen_star_cycle(4).unwrap();
    assert_eq!(four.lambda().unwrap(), 2);
    assert_eq!(greedy_solve(&four).unwrap().cost, int(2));
}

#[test]
fn gap_instance() {
    let inst = gen_fig3_gap();
    assert_eq!(inst.n, 10);
    assert_eq!(inst.lambda().unwrap(), 4);
    assert_eq!(solve_ip_tap(&inst).unwrap().cost, int(4));
    assert_eq!(solve_tap_lp(&inst).unwrap().solution.objective, int(3));
    let half = vec![frac(1, 2); 6];
    assert!(separate_tap(&inst, &half).unwrap().is_none());
    assert!(check_cut_remark(&inst, &half).unwrap());
    assert!(check_extreme_point_bounds(&inst).unwrap());

    let (cert, _) = certify(&inst).unwrap();
    assert_eq!(cert.greedy_cost, int(4));
    assert!(lower_bound(&cert) >= frac(24, 11));
}

#[test]
fn all_ones_passes_separation() {
    let inst = gen_tight_path(4, &frac(1, 100)).unwrap();
    assert!(separate_tap(&inst, &vec![int(1); 4]).unwrap().is_none());
    assert!(check_extreme_point_bounds(&inst).unwrap());
}

#[test]
fn triangle() {
    let inst = gen_triangle_tap();
    let (cert, verified) = certify(&inst).unwrap();
    assert_eq!(cert.greedy_cost, int(5));
    assert_eq!(verified.report.certified_ratio, Some(int(1)));
    assert!(check_cut_remark(&inst, &[int(1)]).unwrap());
}

#[test]
fn ckkk_instance() {
    let tap = gen_ckkk_tap();
    let graph = tap.to_graph();
    let mut x = vec![int(1); tap.tree_edges.len()];
    x.extend(ckkk_fractional_x());
    assert!(separate_cut(&graph, &x).unwrap().is_none());
    assert_eq!(graph.cost_of(&x), int(3));
    assert_eq!(solve_ip_2ec(&graph).unwrap().cost, int(4));
    assert_eq!(solve_ip_tap_2ec(&tap).unwrap().cost, int(4));
    // this point has cost 3 but is not optimal; the exact optimum is 23/8
    let lp = solve_cut_lp(&graph).unwrap();
    assert_eq!(lp.solution.objective, frac(23, 8));
    let expect: Vec<Rational> = [(1, 2), (1, 4), (3, 8), (5, 8), (1, 4), (3, 8), (1, 2)]
        .iter()
        .map(|&(p, q)| frac(p, q))
        .collect();
    assert_eq!(lp.x[tap.tree_edges.len()..], expect[..]);
}

#[test]
fn ckkk_inflation() {
    let graph = gen_ckkk_tap().to_graph();
    let (big, map) = inflate(&graph).unwrap();
    assert_eq!(big.n, 2 * graph.edges.len());
    assert_eq!(big.n, 28);
    let degrees = graph.degrees();
    for (u, clique) in map.cliques.iter().enumerate() {
        assert_eq!(clique.len(), degrees[u]);
    }
    let inter = EdgeSubgraph::new(big.n, map.edge_image.iter().map(|&i| (big.edges[i].u, big.edges[i].v)).collect());
    let mut touched = vec![0; big.n];
    for &(a, b) in &inter.edges {
        touched[a] += 1;
        touched[b] += 1;
    }
    assert!(touched.iter().all(|&t| t == 1));

    let mut x = vec![int(1); 7];
    x.extend(ckkk_fractional_x());
    let up = inflate_solution(&graph, &map, &x).unwrap();
    assert!(separate_ncss(big.graph(), &up).unwrap().is_none());
    assert_eq!(solve_ncss_lp(&big).unwrap().solution.objective, frac(23, 8));
}

#[test]
fn inflated_triangle_examples() {
    let (big, map) = inflate(&triangle_graph()).unwrap();
    assert_eq!(big.n, 6);
    assert!(separate_ncss(big.graph(), &vec![int(1); 6]).unwrap().is_none());
    let mut x = vec![int(1); 6];
    for &i in &map.edge_image {
        x[i] = frac(1, 2);
    }
    let row = separate_ncss(big.graph(), &x).unwrap().unwrap();
    assert!(row.activity(&x) < row.rhs);
}

#[test]
fn random_instances() {
    let p = RandomParams {
        n: 8,
        max_lambda: 4,
        density: 0.5,
        costs: CostRange::default(),
        seed: 1,
    };
    let inst = gen_random_tap(&p).unwrap();
    assert!(inst.validate().is_ok());
    assert!(is_feasible_augmentation(&inst, &(0..inst.links.len()).collect::<Vec<_>>()));

    for seed in 0..20 {
        let inst = gen_random_tap(&RandomParams { max_lambda: 2, seed, ..p }).unwrap();
        assert!(inst.lambda().unwrap() <= 2);
        let tree = inst.tree();
        for l in &inst.links {
            assert_eq!(tree.internal_nodes(l.u, l.v).len(), 1);
        }
    }
}
