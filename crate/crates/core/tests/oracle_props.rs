mod common;

use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use proptest::prelude::*;
use rand::Rng;

use wehrhart::linalg::int;
use wehrhart::oracle::{lattice_points, weighted_sum};
use wehrhart::{half_open_decomposition, hstar, triangulate, Poly, Polytope, Rat, Weight, WeightPoly};

/// Vertices of a lattice polygon in counterclockwise order.
fn cyclic_vertices(p: &Polytope) -> Vec<(i64, i64)> {
    let mut v: Vec<(i64, i64)> = p
        .vertices()
        .iter()
        .map(|x| (x[0].to_integer().to_i64().unwrap(), x[1].to_integer().to_i64().unwrap()))
        .collect();
    let n = v.len() as f64;
    let cx = v.iter().map(|x| x.0 as f64).sum::<f64>() / n;
    let cy = v.iter().map(|x| x.1 as f64).sum::<f64>() / n;
    v.sort_by(|a, b| {
        let ta = (a.1 as f64 - cy).atan2(a.0 as f64 - cx);
        let tb = (b.1 as f64 - cy).atan2(b.0 as f64 - cx);
        ta.partial_cmp(&tb).unwrap()
    });
    v
}

/// Twice the area and the number of boundary lattice points.
fn shoelace_and_boundary(p: &Polytope) -> (i64, i64) {
    let v = cyclic_vertices(p);
    let mut twice_area = 0;
    let mut boundary = 0;
    for i in 0..v.len() {
        let (a, b) = (v[i], v[(i + 1) % v.len()]);
        twice_area += a.0 * b.1 - a.1 * b.0;
        boundary += (b.0 - a.0).gcd(&(b.1 - a.1));
    }
    (twice_area, boundary)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn counts_satisfy_picks_theorem(seed in any::<u64>()) {
        let p = common::lattice_polygon(&mut common::rng(seed));
        let (twice_area, boundary) = shoelace_and_boundary(&p);
        prop_assert!(twice_area > 0);
        let count = lattice_points(&p, 1).unwrap().len() as i64;
        let interior = count - boundary;
        prop_assert_eq!(twice_area, 2 * interior + boundary - 2);
    }

    #[test]
    fn constant_weight_gives_classical_polygon_series(seed in any::<u64>()) {
        let p = common::lattice_polygon(&mut common::rng(seed));
        let (_, boundary) = shoelace_and_boundary(&p);
        let interior = lattice_points(&p, 1).unwrap().len() as i64 - boundary;
        let r = hstar(&p, &Weight::constant(2, int(1))).unwrap();
        prop_assert_eq!((r.period, r.exponent), (1, 3));
        prop_assert_eq!(r.numerator, Poly::from_i64(&[1, interior + boundary - 3, interior]));
    }

    #[test]
    fn constant_weight_counts_rational_polytopes(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let p = common::rational_polytope(&mut rng);
        let c = common::rational(&mut rng, -3, 3, 5);
        let r = hstar(&p, &Weight::constant(p.ambient_dim(), c.clone())).unwrap();
        let series = r.expand(8);
        for (n, value) in series.iter().enumerate() {
            let count = lattice_points(&p, n).unwrap().len();
            prop_assert_eq!(value, &(&c * int(count as i64)));
        }
    }

    #[test]
    fn weighted_sum_is_additive_over_cells(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let p = common::rational_polytope(&mut rng);
        let w: WeightPoly = common::product_weight(&mut rng, p.ambient_dim(), 2).into();
        let cells = half_open_decomposition(&p, &triangulate(&p).unwrap()).unwrap();
        let n = rng.gen_range(1..=4usize);
        let mut by_cells = Rat::zero();
        for x in lattice_points(&p, n).unwrap() {
            let u: Vec<Rat> = x.iter().map(|c| Rat::new(c.clone(), n.into())).collect();
            prop_assert_eq!(cells.iter().filter(|c| c.contains(&u)).count(), 1);
            let mut point = x.iter().map(|c| Rat::from_integer(c.clone())).collect::<Vec<_>>();
            point.push(int(n as i64));
            by_cells += w.eval(&point);
        }
        prop_assert_eq!(by_cells, weighted_sum(&p, &w, n).unwrap());
    }
}

#[test]
fn dilate_counts_of_a_rational_segment() {
    // [1/3, 5/2] dilated by n holds ⌊5n/2⌋ - ⌈n/3⌉ + 1 integers.
    let p = Polytope::new(1, vec![vec![Rat::new(1.into(), 3.into())], vec![Rat::new(5.into(), 2.into())]]).unwrap();
    for n in 0..=24i64 {
        let expected = Integer::div_floor(&(5 * n), &2) - Integer::div_ceil(&n, &3) + 1;
        assert_eq!(lattice_points(&p, n as usize).unwrap().len() as i64, expected, "n = {n}");
    }
}
