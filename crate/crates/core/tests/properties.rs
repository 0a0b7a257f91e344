use proptest::prelude::*;

use steklov::bounds::{certify_sigma1, constant_chain, isoperimetric_bounds, volume_bound};
use steklov::cayley::{
    covering_count, covers, discrete_radius, greedy_separated_set, growth_function, GroupDescriptor, GroupElement,
    DEFAULT_BALL_CAP,
};
use steklov::families::lattice_animal;
use steklov::steklov::{minmax_spectrum, rayleigh, spectrum};
use steklov::GraphWithBoundary;

fn z(d: usize) -> GroupDescriptor {
    GroupDescriptor::free_abelian(d).unwrap()
}

fn animal(d: usize, size: usize, seed: u64) -> GraphWithBoundary {
    lattice_animal(&z(d), size, seed).unwrap().induce().unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn json_round_trip(size in 1usize..=20, seed in any::<u64>()) {
        let g = animal(2, size, seed);
        let text = g.to_json();
        let back = GraphWithBoundary::from_json(&text).unwrap();
        prop_assert_eq!(&back, &g);
        prop_assert_eq!(back.to_json(), text);
    }

    #[test]
    fn closure_is_omega_plus_boundary(size in 1usize..=25, seed in any::<u64>(), d in 1usize..=3) {
        let spec = lattice_animal(&z(d), size, seed).unwrap();
        let g = spec.induce().unwrap();
        prop_assert_eq!(g.len(), spec.omega().len() + spec.vertex_boundary().len());
        prop_assert_eq!(g.interior().len(), size);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    #[test]
    fn eigenvectors_attain_their_eigenvalue(size in 2usize..=20, seed in any::<u64>()) {
        let g = animal(2, size, seed);
        let s = spectrum(&g).unwrap();
        for (sigma, v) in s.eigenvalues.iter().zip(&s.extensions) {
            let q = rayleigh(&g, v).unwrap();
            prop_assert!((q - sigma).abs() <= 1e-9 * (1.0 + sigma.abs()), "R = {q}, σ = {sigma}");
        }
    }

    #[test]
    fn bounds_dominate_sigma1(size in 2usize..=20, seed in any::<u64>(), d in 1usize..=3) {
        let desc = z(d);
        let g = animal(d, size, seed);
        let chain = constant_chain(&desc, &growth_function(&desc, 8, DEFAULT_BALL_CAP).unwrap()).unwrap();
        let s1 = spectrum(&g).unwrap().sigma1().unwrap();
        prop_assert!(s1 <= desc.degree() as f64 + 1e-9);
        prop_assert!(certify_sigma1(&g, &desc, &chain).unwrap().is_sound(s1));
        prop_assert!(certify_sigma1(&g, &desc, &chain.with_covering_count(1)).unwrap().is_sound(s1));
        prop_assert!(volume_bound(&g, &chain).unwrap() >= s1);
        let cb = isoperimetric_bounds(&g, &chain).unwrap();
        prop_assert!(cb.boundary_bound >= s1);
        if let (Some(c2), Some(weak)) = (cb.closure_bound, cb.closure_bound_weak) {
            prop_assert!(c2 >= s1 && weak >= cb.boundary_bound);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn schur_route_matches_minmax(size in 1usize..=8, seed in any::<u64>()) {
        let g = animal(2, size, seed);
        let a = spectrum(&g).unwrap().eigenvalues;
        let b = minmax_spectrum(&g).unwrap();
        prop_assert_eq!(a.len(), b.len());
        for (x, y) in a.iter().zip(&b) {
            prop_assert!((x - y).abs() <= 1e-8, "{x} vs {y}");
        }
    }
}

#[test]
fn greedy_covering_respects_count() {
    for d in 1..=2usize {
        let desc = z(d);
        let growth = growth_function(&desc, 12, DEFAULT_BALL_CAP).unwrap();
        let limit = covering_count(growth.growth_constant, 3.0, 0.5, d as u32).unwrap();
        for r in 2..=4u32 {
            let outer = discrete_radius(3.0, r).unwrap();
            let inner = discrete_radius(0.5, r).unwrap();
            let centre = GroupElement::new(vec![7; d]);
            let pts = greedy_separated_set(&desc, &centre, outer, inner, DEFAULT_BALL_CAP).unwrap();
            assert!(pts.len() as u64 <= limit, "ℤ^{d}, R = {r}: {} > {limit}", pts.len());
            assert!(covers(&desc, &pts, inner, &centre, outer, DEFAULT_BALL_CAP).unwrap());
        }
    }
}

#[test]
fn heisenberg_balls_certify_soundly() {
    let h = GroupDescriptor::heisenberg();
    let chain = constant_chain(&h, &growth_function(&h, 8, DEFAULT_BALL_CAP).unwrap()).unwrap();
    for r in 1..=3 {
        let g = steklov::families::heis_ball(r, DEFAULT_BALL_CAP).unwrap();
        let s1 = spectrum(&g).unwrap().sigma1().unwrap();
        for c1 in [1, 3, chain.c1] {
            let cert = certify_sigma1(&g, &h, &chain.with_covering_count(c1)).unwrap();
            assert!(cert.is_sound(s1), "r = {r}, c1 = {c1}");
        }
    }
}
