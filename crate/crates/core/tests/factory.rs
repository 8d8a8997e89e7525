use atlas_core::factory::*;
use atlas_core::graded::GradedIdeal;
use atlas_core::invariants::{analyze, check_condition, is_cdl, min_surface_degree, qp_genus};
use atlas_core::linalg::Matrix;
use atlas_core::monomial::Monomial;
use atlas_core::{AtlasError, HomogeneousPolynomial, PrimeField};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn k() -> PrimeField {
    PrimeField::default()
}

/// `dim I_n` by spanning every monomial multiple of every generator in full coordinates.
fn brute_dim(ideal: &GradedIdeal, n: u32) -> usize {
    let cols = Monomial::all_of_degree(n);
    let mut rows = Vec::new();
    for g in ideal.all_generators() {
        if g.degree() > n {
            continue;
        }
        for m in Monomial::all_of_degree(n - g.degree()) {
            let p = g.mul_monomial(&m);
            rows.push(cols.iter().map(|c| p.coeff(c).value()).collect::<Vec<_>>());
        }
    }
    Matrix::from_rows(k(), cols.len(), &rows).rank()
}

fn field_poly(m: Monomial) -> HomogeneousPolynomial {
    HomogeneousPolynomial::monomial(k(), m, 1)
}

#[test]
fn incremental_slices_match_brute_force() {
    let t = triple_line(&TripleData::good(k(), 0, 1)).unwrap();
    let q = quadruple_line(&TripleData::good(k(), 0, 2), 5).unwrap();
    for c in [&t, &q] {
        for n in 0..9 {
            assert_eq!(c.ideal.dim(n), brute_dim(&c.ideal, n), "degree {n}");
        }
    }
}

#[test]
fn neighbourhoods() {
    for d in 1..=4u32 {
        let c = neighborhood(k(), d).unwrap();
        let chi: i64 = (0..d as i64).map(|i| (i + 1) * (1 - i)).sum();
        assert_eq!(c.degree_genus().unwrap(), ((d * (d + 1) / 2) as i64, 1 - chi));
    }
    assert_eq!(neighborhood(k(), 2).unwrap().genus().unwrap(), 0);
    assert!(neighborhood(k(), 0).is_err());
    let l2 = neighborhood(k(), 2).unwrap();
    let f = cm_filtration(&l2, 1).unwrap();
    assert!(matches!(
        extract_type(&f, l2.window),
        Err(AtlasError::NotQuasiprimitive(_))
    ));
}

#[test]
fn double_lines() {
    let z = field_poly(Monomial::new(0, 0, 1, 0));
    let w = field_poly(Monomial::new(0, 0, 0, 1));
    let c = double_line(k(), 0, &z, &w).unwrap();
    assert_eq!(c.genus().unwrap(), -1);
    assert!(matches!(
        double_line(k(), 0, &z, &z),
        Err(AtlasError::InvalidData(_))
    ));
    assert!(double_line(k(), 1, &z, &w).is_err());
    let c2 = standard_double_line(k(), 2).unwrap();
    for l in 0..=2 {
        assert!(check_condition(&c2, 2, l).unwrap());
    }
    assert!(!check_condition(&c2, 2, 3).unwrap());
    for a in 0..4u32 {
        let c = standard_double_line(k(), a).unwrap();
        assert_eq!(c.genus().unwrap(), -(a as i64) - 1);
        for l in 0..4u32 {
            assert_eq!(is_cdl(&c, 2, l, 1).unwrap().holds(), l == a);
        }
        let f = cm_filtration(&c, 2).unwrap();
        assert_eq!(f.len(), 2);
        assert!(f[0].same_as(&GradedIdeal::line_power(k(), 1), c.window));
    }
}

#[test]
fn triple_line_anchor() {
    let c = triple_line(&TripleData::good(k(), 0, 1)).unwrap();
    assert_eq!(c.degree_genus().unwrap(), (3, -3));
    assert_eq!(min_surface_degree(&c).unwrap(), 3);
    assert!(is_cdl(&c, 3, 0, 4).unwrap().holds());
    let r = analyze(&c, &[0], 4).unwrap();
    assert_eq!(r.splitting.unwrap().to_string(), "{-3^3}");
}

#[test]
fn triple_module_splitting() {
    // I_C / I_L^3 = {-3-a, -3-a, -2-a-b}
    for (a, b) in [(0u32, 1u32), (0, 2), (1, 2), (2, 3)] {
        let c = triple_line(&TripleData::good(k(), a, b)).unwrap();
        let r = analyze(&c, &[], 2).unwrap();
        let mut expected = vec![-3 - a as i64, -3 - a as i64, -2 - (a + b) as i64];
        expected.sort_unstable_by(|x, y| y.cmp(x));
        assert_eq!(r.splitting.unwrap().twists, expected);
    }
}

#[test]
fn conormal_restrictions() {
    assert_eq!(conormal_restriction(&line(k()), 1).unwrap().twists, vec![-1, -1]);
    for a in 0..3u32 {
        let c = standard_double_line(k(), a).unwrap();
        let ai = a as i64;
        assert_eq!(conormal_restriction(&c, 1).unwrap().twists, vec![2 * ai, -ai - 2]);
        for b in 1..3u32 {
            let t = triple_line(&TripleData::good(k(), a, b)).unwrap();
            let bi = b as i64;
            assert_eq!(
                conormal_restriction(&t, 1).unwrap().twists,
                vec![3 * ai + bi, -ai - bi - 2]
            );
        }
    }
    let p = primitive_line(k(), 4, 0, 3, 8).unwrap();
    assert_eq!(conormal_restriction(&p, 2).unwrap().twists, vec![0, -2]);
}

#[test]
fn quadruple_good_instances() {
    for l in 0..2u32 {
        let c = quadruple_line(&TripleData::good(k(), l, 2), 5).unwrap();
        assert_eq!(c.qp_type, Some(QPType::new(l as i64, vec![2, 2])));
        assert_eq!(c.genus().unwrap(), -7 - 6 * l as i64);
        let crit = is_cdl(&c, 4, l, 6).unwrap();
        assert!(crit.h0_agreement && crit.h1_vanishing && crit.splitting);
        let f = cm_filtration(&c, 9).unwrap();
        for (mine, kept) in f.iter().zip(c.filtration.as_ref().unwrap()) {
            assert!(mine.same_as(kept, c.window));
        }
    }
}

#[test]
fn quadruple_over_b_one_triples() {
    for l in 0..2u32 {
        let c = quadruple_line(&TripleData::good(k(), l, 1), 5).unwrap();
        assert_eq!(c.degree().unwrap(), 4);
        assert_eq!(c.qp_type, Some(QPType::new(l as i64, vec![1, 1])));
        assert!(!check_condition(&c, 4, l).unwrap());
    }
}

#[test]
fn quadruple_parts() {
    for a in 0..3u32 {
        let d = TripleData::good(k(), a, 2);
        let p = QuadrupleParts::new(&d).unwrap();
        let w = default_window(4, a, 2);
        let ai = a as i64;
        assert_eq!(p.j_module(w).unwrap().sheaf_splitting(1).unwrap().twists, vec![-ai - 4; 5]);
        let q = p.c3_over_j(w).unwrap();
        assert_eq!(q.sheaf_splitting(2).unwrap().twists, vec![3 * ai + 2, -ai - 4]);
        assert_eq!(
            double_conormal_module(&d, w).unwrap().splitting_type().unwrap().twists,
            vec![-3 - ai; 2]
        );
    }
    // generator degrees of I_{C_3} / J, frozen
    let gens = |a| {
        let d = TripleData::good(k(), a, 2);
        let p = QuadrupleParts::new(&d).unwrap();
        p.c3_over_j(default_window(4, a, 2)).unwrap().minimal_generators().unwrap()
    };
    assert_eq!(gens(0).into_iter().collect::<Vec<_>>(), vec![(3, 6), (4, 1)]);
    assert_eq!(gens(1).into_iter().collect::<Vec<_>>(), vec![(3, 4), (4, 2), (5, 1)]);
    assert_eq!(gens(2).into_iter().collect::<Vec<_>>(), vec![(3, 4), (5, 2), (6, 1)]);
}

#[test]
fn primitive_extensions() {
    let c = primitive_line(k(), 3, 1, 2, 8).unwrap();
    assert_eq!(c.genus().unwrap(), -5);
    assert_eq!(c.qp_type, Some(QPType::primitive(3, 1)));
    let q = primitive_line(k(), 5, 1, 11, 8).unwrap();
    assert_eq!(q.degree_genus().unwrap(), (5, -14));
    assert_eq!(min_surface_degree(&q).unwrap(), 5);
    assert!(is_cdl(&q, 5, 0, 3).unwrap().holds());

    let mut planar = standard_double_line(k(), 0).unwrap();
    planar.qp_type = Some(QPType::new(-1, vec![]));
    assert!(matches!(
        primitive_extension(&planar, 1),
        Err(AtlasError::InvalidData(_))
    ));
}

#[test]
fn unions() {
    let l = line(k());
    let ll = disjoint_union(&l, &l).unwrap();
    assert_eq!(ll.degree_genus().unwrap(), (2, -1));
    let c31 = triple_line(&TripleData::good(k(), 1, 1)).unwrap();
    let u = disjoint_union(&l, &c31).unwrap();
    assert_eq!(u.degree_genus().unwrap(), (4, -7));
    assert_eq!(min_surface_degree(&u).unwrap(), 4);
    let c32 = triple_line(&TripleData::good(k(), 2, 1)).unwrap();
    let c23 = standard_double_line(k(), 3).unwrap();
    let u = disjoint_union(&c32, &c23).unwrap();
    assert_eq!(u.degree_genus().unwrap(), (5, -14));
    assert_eq!(min_surface_degree(&u).unwrap(), 5);
    let both = disjoint_union(&l, &l).unwrap();
    assert!(disjoint_union(&both, &l).is_err());
    assert!(disjoint_union(&l, &both).is_err());
}

#[test]
fn reseeding_is_deterministic() {
    let a = primitive_line(k(), 4, 1, 21, 8).unwrap();
    let b = primitive_line(k(), 4, 1, 21, 8).unwrap();
    assert_eq!(a.provenance, b.provenance);
    assert!(a.ideal.same_as(&b.ideal, a.window));
    assert_eq!(a.ideal.all_generators(), b.ideal.all_generators());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn random_triples_round_trip(a in 0u32..2, b in 0u32..3, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let data = TripleData::random(k(), a, b, &mut rng);
        prop_assert!(syzygy_identity(&data).is_zero());
        let c = triple_line(&data).unwrap();
        let f = cm_filtration(&c, seed).unwrap();
        let t = extract_type(&f, c.window).unwrap();
        prop_assert_eq!(&t, &data.qp_type());
        prop_assert_eq!(c.genus().unwrap(), qp_genus(&t));
        let s = min_surface_degree(&c).unwrap();
        prop_assert!(s <= 3);
        for n in 0..c.window {
            prop_assert!(c.ideal.hilbert_function(n + 1) >= c.ideal.hilbert_function(n));
        }
    }

    #[test]
    fn union_genus_is_additive(a in 0u32..3, b in 0u32..3, swap in any::<bool>()) {
        let c = standard_double_line(k(), a).unwrap();
        let d = if b == 0 { line(k()) } else { triple_line(&TripleData::good(k(), b - 1, 1)).unwrap() };
        let (c, d) = if swap { (d, c) } else { (c, d) };
        let u = disjoint_union(&c, &d).unwrap();
        let (dc, gc) = c.degree_genus().unwrap();
        let (dd, gd) = d.degree_genus().unwrap();
        prop_assert_eq!(u.degree_genus().unwrap(), (dc + dd, gc + gd - 1));
    }
}
