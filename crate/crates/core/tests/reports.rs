use carrousel_core::cerf::{carrousel_verdict, cerf_components};
use carrousel_core::cycles::{intersection_numbers, polar_le_cascade, CascadeOptions};
use carrousel_core::monodromy::{build_report, derived_inputs, Binomial, Case, CharPoly, ConstraintReport, MonodromyError, Profile, ReportConfig, ReportInputs};
use carrousel_core::poly::{rat, MultiPoly};

fn poly(v: &[&str], terms: &[(&[u32], i64)]) -> (MultiPoly, Vec<String>) {
    let v: Vec<String> = v.iter().map(|s| s.to_string()).collect();
    (MultiPoly::from_terms(&v, terms.iter().map(|(e, c)| (e.to_vec(), rat(*c, 1)))), v)
}

fn report_with(f: &MultiPoly, v: &[String], z0: &str, tweak: impl FnOnce(&mut ReportInputs), profile: Profile) -> Result<ConstraintReport, MonodromyError> {
    let c = polar_le_cascade(f, v, &CascadeOptions::default()).unwrap();
    let d = intersection_numbers(c.gamma1(), f, z0).unwrap();
    let cerf = cerf_components(c.gamma1(), f, z0).unwrap();
    let verdict = carrousel_verdict(&cerf, c.gamma1());
    let mut inputs = derived_inputs(&c, z0).unwrap();
    tweak(&mut inputs);
    build_report(&d, &cerf, &verdict, &inputs, &ReportConfig { profile })
}

fn m(k: u64) -> Binomial {
    Binomial::minus(k)
}
fn p(k: u64) -> Binomial {
    Binomial::plus(k)
}

fn flagship() -> (MultiPoly, Vec<String>) {
    poly(&["s", "t", "x", "y"], &[(&[0, 0, 0, 2], 1), (&[0, 0, 4, 0], -1), (&[3, 0, 3, 0], 1), (&[0, 2, 3, 0], -1)])
}

fn flagship_slice(i: &mut ReportInputs) {
    i.slice_chars = vec![CharPoly::new(vec![m(8), p(1)], vec![m(4)]), CharPoly::new(vec![p(8), p(1)], vec![m(4)])];
}

#[test]
fn flagship_paper_profile_has_two_options() {
    let (f, v) = flagship();
    let r = report_with(&f, &v, "s", flagship_slice, Profile::Paper).unwrap();
    assert_eq!(r.inputs.chi_link, Some(1));
    assert_eq!(r.slice_chars, vec![CharPoly::new(vec![p(4), p(1)], vec![])]);
    assert_eq!((r.rank.rank_im, r.rank.rank_bn), ((1, 5), (7, 11)));
    assert_eq!(r.options.len(), 2, "{:#?}", r.options);
    let i = &r.options[0];
    assert_eq!((i.b_n_minus_1, i.b_n), (Some(1), 8));
    assert_eq!(i.char_n_minus_1, Some(CharPoly::binomial(p(1))));
    assert_eq!(format!("{}", i.char_n.as_ref().unwrap()), "(λ^12 + 1)/(λ^4 + 1)");
    let ii = &r.options[1];
    assert_eq!((ii.b_n_minus_1, ii.b_n), (Some(0), 7));
    assert_eq!(format!("{}", ii.char_n.as_ref().unwrap()), "(λ^12 + 1)/[(λ^4 + 1)(λ + 1)]");
    assert_eq!(ii.char_n_polynomial, Some(false));
    assert!(r.audit.iter().any(|a| a.filter == "complex-link-trace"));
}

#[test]
fn flagship_strict_profile_keeps_one() {
    let (f, v) = flagship();
    let r = report_with(&f, &v, "s", flagship_slice, Profile::Strict).unwrap();
    assert_eq!(r.options.len(), 1);
    assert_eq!(r.options[0].b_n, 8);
}

#[test]
fn quadric_single_option() {
    for (vars, n) in [(vec!["z0", "z1", "z2"], 2usize), (vec!["z0", "z1", "z2", "z3"], 3)] {
        let k = vars.len();
        let terms: Vec<(Vec<u32>, i64)> = (0..k).map(|i| ((0..k).map(|j| if i == j { 2 } else { 0 }).collect(), 1)).collect();
        let refs: Vec<(&[u32], i64)> = terms.iter().map(|(e, c)| (e.as_slice(), *c)).collect();
        let (f, v) = poly(&vars, &refs);
        let r = report_with(&f, &v, "z0", |_| {}, Profile::Paper).unwrap();
        assert_eq!(r.options.len(), 1);
        assert_eq!(r.options[0].b_n, 1);
        let want = if n % 2 == 1 { Case::Case1a } else { Case::Case1b };
        assert_eq!(r.options[0].cases, vec![want]);
        assert_eq!(r.cases.as_ref().unwrap().admissible, vec![want]);
    }
}

#[test]
fn cusp_is_case_2b() {
    let (f, v) = poly(&["x", "y"], &[(&[0, 2], 1), (&[3, 0], -1)]);
    let r = report_with(&f, &v, "x", |_| {}, Profile::Paper).unwrap();
    assert_eq!(r.options.len(), 1);
    assert_eq!(r.options[0].cases, vec![Case::Case2b]);
    assert_eq!(r.options[0].b_n, 2);
    // the suspension w^2 + y^2 - x^3 lands in Case 2a
    let (g, w) = poly(&["x", "w", "y"], &[(&[0, 2, 0], 1), (&[0, 0, 2], 1), (&[3, 0, 0], -1)]);
    let r = report_with(&g, &w, "x", |_| {}, Profile::Paper).unwrap();
    assert_eq!(r.options[0].cases, vec![Case::Case2a]);
}

#[test]
fn whitney_umbrella_is_case_1() {
    let (f, v) = poly(&["t", "x", "y"], &[(&[0, 0, 2], 1), (&[0, 3, 0], -1), (&[1, 2, 0], -1)]);
    let r = report_with(&f, &v, "t", |_| {}, Profile::Paper).unwrap();
    assert_eq!(r.inputs.chi_link, Some(1));
    assert_eq!(r.options.len(), 1);
    assert_eq!(r.options[0].b_n, 1);
    assert!(r.options[0].cases.iter().all(|c| matches!(c, Case::Case1a | Case::Case1b)));
    let v = r.cases.unwrap();
    assert!(!v.is_admissible(Case::Case0) && !v.is_admissible(Case::Case2a) && !v.is_admissible(Case::Case2b));
}

#[test]
fn siersma_with_given_rank_is_case_0() {
    let (q, v) = poly(&["z", "x", "y"], &[(&[0, 2, 0], 1), (&[0, 0, 2], 1), (&[2, 0, 0], -1)]);
    let (l, _) = poly(&["z", "x", "y"], &[(&[0, 0, 1], 1), (&[1, 0, 0], -1)]);
    let f = &q * &l;
    let r = report_with(&f, &v, "z", |i| {
        i.bn = Some(0);
        i.b_slice = Some(4);
    }, Profile::Paper)
    .unwrap();
    assert!(!r.options.is_empty());
    assert!(r.options.iter().all(|o| o.cases == vec![Case::Case0] && o.b_n_minus_1 == Some(1)));
}

#[test]
fn example31_top_rank() {
    // a = 4, b = 3, c = 2: H^1(F_g) = 0 and b_2 = ac - a + 1 = 5
    let (f, v) = poly(&["t", "x", "y"], &[(&[0, 0, 2], 1), (&[0, 4, 0], -1), (&[2, 3, 0], -1)]);
    let r = report_with(&f, &v, "t", |i| {
        i.divides = vec![CharPoly::new(vec![p(3)], vec![p(1)])];
    }, Profile::Paper)
    .unwrap();
    assert_eq!(r.inputs.b_slice, Some(3));
    assert_eq!(r.options.len(), 1, "{:#?}", r.options);
    let o = &r.options[0];
    assert_eq!((o.b_n_minus_1, o.b_n), (Some(0), 5));
    assert_eq!(o.char_n, Some(CharPoly::new(vec![m(8), p(1)], vec![m(4)])));
}

#[test]
fn contradictory_inputs_report_audit() {
    let (f, v) = poly(&["x", "y"], &[(&[0, 2], 1), (&[3, 0], -1)]);
    let e = report_with(&f, &v, "x", |i| i.observed_trace = Some(-1), Profile::Paper).unwrap_err();
    match e {
        MonodromyError::EmptyAdmissibleSet(a) => assert!(!a.is_empty()),
        other => panic!("{other:?}"),
    }
}
