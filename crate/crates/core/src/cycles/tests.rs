use super::*;
use crate::poly::rat;
use alloc::string::ToString;

fn names(v: &[&str]) -> Vec<String> {
    v.iter().map(|s| s.to_string()).collect()
}

fn poly(v: &[String], terms: &[(&[u32], i64)]) -> MultiPoly {
    MultiPoly::from_terms(v, terms.iter().map(|(e, c)| (e.to_vec(), rat(*c, 1))))
}

fn flagship() -> (MultiPoly, Vec<String>) {
    let v = names(&["s", "t", "x", "y"]);
    let f = poly(&v, &[(&[0, 0, 0, 2], 1), (&[0, 0, 4, 0], -1), (&[3, 0, 3, 0], 1), (&[0, 2, 3, 0], -1)]);
    (f, v)
}

fn example31(a: u32, b: u32, c: u32) -> (MultiPoly, Vec<String>) {
    let v = names(&["t", "x", "y"]);
    (poly(&v, &[(&[0, 0, 2], 1), (&[0, a, 0], -1), (&[c, b, 0], -1)]), v)
}

fn run(f: &MultiPoly, v: &[String]) -> Cascade {
    polar_le_cascade(f, v, &CascadeOptions::default()).unwrap()
}

#[test]
fn flagship_cascade() {
    let (f, v) = flagship();
    let c = run(&f, &v);
    assert_eq!(format!("{}", c.lambda[2]), "2V(x, y)");
    assert_eq!(c.lambda[1].components.len(), 1);
    assert_eq!(c.lambda[1].components[0].multiplicity, 3);
    assert_eq!(c.gamma[1].components.len(), 1);
    assert_eq!(c.lambda0(), 11);
    assert_eq!(c.sigma_dim(), Some(2));
    let data = intersection_numbers(c.gamma1(), &f, "s").unwrap();
    assert_eq!((data.gamma1, data.lambda0, data.tau), (1, 11, 12));
    let le = le_numbers(&c).unwrap();
    assert_eq!(le.values, vec![11, 6, 2, 0]);
}

#[test]
fn flagship_lambda1_is_the_cusp_family() {
    let (f, v) = flagship();
    let c = run(&f, &v);
    let l1 = &c.lambda[1].components[0];
    // s^3 - t^2 together with x, y
    let cusp = poly(&v, &[(&[3, 0, 0, 0], 1), (&[0, 2, 0, 0], -1)]);
    assert!(l1.graph.vanishes_on(&cusp));
    assert!(l1.graph.vanishes_on(&MultiPoly::var(&v, 2)));
    assert!(l1.graph.vanishes_on(&MultiPoly::var(&v, 3)));
}

#[test]
fn siersma_cascade() {
    // (x^2 + y^2 - z^2)(y - z) in coordinates (z, x, y)
    let v = names(&["z", "x", "y"]);
    let q = poly(&v, &[(&[0, 2, 0], 1), (&[0, 0, 2], 1), (&[2, 0, 0], -1)]);
    let l = poly(&v, &[(&[0, 0, 1], 1), (&[1, 0, 0], -1)]);
    let f = &q * &l;
    let c = run(&f, &v);
    assert_eq!(c.lambda[1].components.len(), 1);
    assert_eq!(c.lambda[1].components[0].multiplicity, 3);
    assert!(c.lambda[1].components[0].graph.vanishes_on(&l));
    assert_eq!(c.gamma[1].components.len(), 1);
    let polar = poly(&v, &[(&[0, 0, 1], 3), (&[1, 0, 0], 1)]);
    assert!(c.gamma[1].components[0].graph.vanishes_on(&polar));
    let data = intersection_numbers(c.gamma1(), &f, "z").unwrap();
    assert_eq!((data.gamma1, data.lambda0, data.tau), (1, 2, 3));
    assert_eq!(le_numbers(&c).unwrap().values, vec![2, 3, 0]);
}

#[test]
fn whitney_umbrella() {
    let (f, v) = example31(3, 2, 1);
    let c = run(&f, &v);
    assert_eq!(format!("{}", c.lambda[1]), "V(x, y)");
    let data = intersection_numbers(c.gamma1(), &f, "t").unwrap();
    assert_eq!((data.gamma1, data.lambda0, data.tau), (1, 2, 3));
    assert_eq!(le_numbers(&c).unwrap().values, vec![2, 1, 0]);
}

#[test]
fn example31_family() {
    for (a, b, c, gamma) in [(4, 3, 2, 1), (5, 2, 3, 3), (7, 2, 3, 5), (5, 3, 2, 2)] {
        let (f, v) = example31(a, b, c);
        let cas = run(&f, &v);
        let data = intersection_numbers(cas.gamma1(), &f, "t").unwrap();
        assert_eq!(data.gamma1, gamma as u64, "({a},{b},{c})");
        assert_eq!(data.tau, (a * c) as u64, "({a},{b},{c})");
        assert_eq!(data.lambda0, (a * c - gamma) as u64);
        // Λ^1 = (b - 1) V(x, y)
        assert_eq!(cas.lambda[1].total(), (b - 1) as u64);
    }
}

#[test]
fn quadric_and_cusp_are_isolated() {
    let v = names(&["z0", "z1", "z2"]);
    let f = poly(&v, &[(&[2, 0, 0], 1), (&[0, 2, 0], 1), (&[0, 0, 2], 1)]);
    let c = run(&f, &v);
    assert_eq!(c.sigma_dim(), Some(0));
    assert_eq!(format!("{}", c.gamma[1]), "V(z1, z2)");
    assert_eq!(c.lambda0(), 1);
    let data = intersection_numbers(c.gamma1(), &f, "z0").unwrap();
    assert_eq!(data.tau, 2);

    let v = names(&["x", "y"]);
    let f = poly(&v, &[(&[0, 2], 1), (&[3, 0], -1)]);
    let c = run(&f, &v);
    assert_eq!(c.lambda0(), 2);
    assert_eq!(le_numbers(&c).unwrap().values, vec![2, 0]);
}

#[test]
fn membership_examples() {
    let v = names(&["z", "x", "y"]);
    let q = poly(&v, &[(&[0, 2, 0], 1), (&[0, 0, 2], 1), (&[2, 0, 0], -1)]);
    let l = poly(&v, &[(&[0, 0, 1], 1), (&[1, 0, 0], -1)]);
    let f = &q * &l;
    let c = run(&f, &v);
    assert!(component_membership_in_critical_locus(&c.lambda[1].components[0], &f).unwrap());
    assert!(!component_membership_in_critical_locus(&c.gamma[1].components[0], &f).unwrap());
}

#[test]
fn smooth_input_rejected() {
    let v = names(&["x", "y"]);
    let f = poly(&v, &[(&[1, 0], 1), (&[0, 2], 1)]);
    assert!(matches!(polar_le_cascade(&f, &v, &CascadeOptions::default()), Err(CycleError::NotSingular(_))));
}

#[test]
fn decomposition_hints_are_verified() {
    let v = names(&["x", "y"]);
    let p = poly(&v, &[(&[0, 2], 1), (&[2, 0], -1)]);
    let good = DecompositionHint {
        poly: p.clone(),
        factors: vec![(poly(&v, &[(&[0, 1], 1), (&[1, 0], -1)]), 1), (poly(&v, &[(&[0, 1], 1), (&[1, 0], 1)]), 1)],
    };
    assert!(good.verify().is_ok());
    let bad = DecompositionHint { poly: p, factors: vec![(poly(&v, &[(&[0, 1], 1)]), 2)] };
    assert!(bad.verify().is_err());
}

#[test]
fn quadric_rank_certifies_irreducibility() {
    let v = names(&["z", "x", "y"]);
    // z^2 + 2zy - x^2 - 3y^2 = (z+y)^2 - x^2 - 4y^2
    let q = poly(&v, &[(&[2, 0, 0], 1), (&[1, 0, 1], 2), (&[0, 2, 0], -1), (&[0, 0, 2], -3)]);
    assert_eq!(graph::quadric_rank(&q), Some(3));
    // a product of two planes has rank 2
    let l1 = poly(&v, &[(&[1, 0, 0], 1), (&[0, 1, 0], 1)]);
    let l2 = poly(&v, &[(&[0, 1, 0], 1), (&[0, 0, 1], -2)]);
    assert_eq!(graph::quadric_rank(&(&l1 * &l2)), Some(2));
    assert_eq!(graph::quadric_rank(&poly(&v, &[(&[3, 0, 0], 1)])), None);
}

#[test]
fn siersma_has_no_irreducibility_warning() {
    let v = names(&["z", "x", "y"]);
    let q = poly(&v, &[(&[0, 2, 0], 1), (&[0, 0, 2], 1), (&[2, 0, 0], -1)]);
    let l = poly(&v, &[(&[0, 0, 1], 1), (&[1, 0, 0], -1)]);
    let c = run(&(&q * &l), &v);
    assert!(c.warnings.is_empty(), "{:?}", c.warnings);
}
