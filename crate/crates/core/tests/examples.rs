//! Worked examples for each operation on concrete catalog algebras.

use leibniz_core::catalog::{build_family, Family, FamilySpec};
use leibniz_core::grading::{
    associated_graded, max_length_search, universal_grading_lattice, verify_grading,
};
use leibniz_core::invariants::{
    characteristic_sequence, fingerprint, jordan_type_at, natural_gradedness_report, CharSequence,
    SamplingConfig,
};
use leibniz_core::{
    lie_criterion_check, Algebra, CriterionMode, Element, GradingAssignment, LieWitness, Matrix,
};
use leibniz_core::{Scalar, Subspace};

fn fam(f: Family, n: usize, params: &[(&str, i64)]) -> Algebra {
    let spec = params
        .iter()
        .fold(FamilySpec::new(f, n), |s, &(k, v)| s.with(k, v));
    build_family(&spec).unwrap()
}

fn e(n: usize, one_based: usize) -> Element {
    Element::basis(n, one_based - 1)
}

fn dims(series: &[Subspace]) -> Vec<usize> {
    series.iter().map(Subspace::dim).collect()
}

fn coords(n: usize, one_based: &[usize]) -> Subspace {
    Subspace::coordinate(n, &one_based.iter().map(|i| i - 1).collect::<Vec<_>>())
}

#[test]
fn multiply() {
    let m2 = fam(Family::M2, 6, &[("lambda", 2)]);
    assert_eq!(m2.multiply(&e(6, 1), &e(6, 1)).unwrap(), e(6, 2));
    assert!(m2.multiply(&e(6, 3), &Element::zero(6)).unwrap().is_zero());
    let m1 = fam(Family::M1, 7, &[("delta", 1)]);
    assert_eq!(m1.multiply(&e(7, 6), &e(7, 6)).unwrap(), e(7, 4));
}

#[test]
fn leibniz_defect() {
    assert!(Algebra::abelian(5).leibniz_defect().is_zero());
    assert!(fam(Family::M1, 7, &[("delta", 1)])
        .leibniz_defect()
        .is_zero());

    let m2 = fam(Family::M2, 6, &[("lambda", 0)]);
    let mut entries: Vec<_> = m2
        .entries()
        .map(|(i, j, k, c)| (i, j, k, c.clone()))
        .collect();
    entries.push((1, 1, 2, Scalar::one()));
    let bad = Algebra::from_entries(6, None, entries).unwrap();
    let w = bad
        .leibniz_defect()
        .witness
        .expect("injected square breaks the identity");
    let (a, b, c) = w.triple;
    // Recompute the defect at the witness directly.
    let (x, y, z) = (
        Element::basis(6, a),
        Element::basis(6, b),
        Element::basis(6, c),
    );
    let lhs = bad.multiply(&x, &bad.multiply(&y, &z).unwrap()).unwrap();
    let r1 = bad.multiply(&bad.multiply(&x, &y).unwrap(), &z).unwrap();
    let r2 = bad.multiply(&bad.multiply(&x, &z).unwrap(), &y).unwrap();
    let d: Vec<Scalar> = (0..6).map(|k| &(&lhs.0[k] - &r1.0[k]) + &r2.0[k]).collect();
    assert_eq!(d, w.defect);
    assert!(d.iter().any(|x| !x.is_zero()));
}

#[test]
fn is_lie() {
    assert!(fam(Family::L, 7, &[("r", 3)]).is_lie().is_lie());
    assert!(Algebra::abelian(3).is_lie().is_lie());
    let m2 = fam(Family::M2, 6, &[("lambda", 0)]);
    let w = m2.is_lie().witness.unwrap();
    assert!(matches!(w, LieWitness::NonzeroSquare { index: 0, .. }));
    assert_eq!(m2.describe_lie_witness(&w), "[y1,y1] = y2 != 0");
}

#[test]
fn series_and_nilindex() {
    assert_eq!(
        dims(&Algebra::abelian(4).lower_central_series()),
        vec![4, 0]
    );
    for lambda in [0, 1, -1, 2] {
        let m2 = fam(Family::M2, 6, &[("lambda", lambda)]);
        assert_eq!(dims(&m2.lower_central_series()), vec![6, 4, 2, 1, 0]);
        assert_eq!(m2.nilindex(), Some(4));
    }
    assert_eq!(
        dims(&fam(Family::M1, 6, &[("delta", 0)]).lower_central_series()),
        vec![6, 4, 2, 1, 0]
    );
    assert_eq!(Algebra::abelian(3).nilindex(), Some(1));
    assert_eq!(fam(Family::N2, 4, &[]).nilindex(), Some(2));
}

#[test]
fn annihilator_center_squares() {
    let m10 = fam(Family::M1, 7, &[("delta", 0)]);
    let m11 = fam(Family::M1, 7, &[("delta", 1)]);
    assert_eq!(m10.right_annihilator(), coords(7, &[2, 3, 4, 5, 6, 7]));
    assert_eq!(m11.right_annihilator().dim(), 5);
    assert!(!m11.right_annihilator().contains(e(7, 6).coords()));
    assert_eq!(Algebra::abelian(3).right_annihilator(), Subspace::full(3));

    for lambda in [1, -1, 2] {
        assert_eq!(
            fam(Family::M2, 6, &[("lambda", lambda)]).center(),
            coords(6, &[4, 6])
        );
    }
    assert!(m11.center().contains(e(7, 5).coords()));
    assert_eq!(Algebra::abelian(3).center(), Subspace::full(3));

    assert!(fam(Family::L, 7, &[("r", 3)]).squares_ideal().is_zero());
    assert_eq!(
        fam(Family::M2, 6, &[("lambda", -1)]).squares_ideal().dim(),
        3
    );
    assert_eq!(m11.squares_ideal().dim(), 5);
}

#[test]
fn generators() {
    assert_eq!(
        fam(Family::M2, 6, &[("lambda", 1)])
            .generators_modulo_square()
            .unwrap(),
        vec![0, 4]
    );
    assert_eq!(
        Algebra::abelian(3).generators_modulo_square().unwrap(),
        vec![0, 1, 2]
    );
    assert_eq!(
        fam(Family::M3, 7, &[("alpha", 0)])
            .generators_modulo_square()
            .unwrap(),
        vec![0, 2]
    );
}

#[test]
fn change_basis() {
    let m2 = fam(Family::M2, 6, &[("lambda", 1)]);
    assert_eq!(m2.change_basis(&Matrix::identity(6)).unwrap(), m2);

    // [y5,y1] = [y1,y5] = 3 y6 becomes coefficient 1 after y6' = 3 y6.
    let b = Scalar::from(3);
    let mut entries: Vec<_> = m2
        .entries()
        .map(|(i, j, k, c)| (i, j, k, c.clone()))
        .collect();
    for t in entries.iter_mut().filter(|t| t.2 == 5) {
        t.3 = &t.3 * &b;
    }
    let scaled = Algebra::from_entries(6, Some(m2.labels().to_vec()), entries).unwrap();
    let mut diag = vec![Scalar::one(); 6];
    diag[5] = b;
    assert_eq!(scaled.change_basis(&Matrix::diagonal(diag)).unwrap(), m2);

    let p = Matrix::from_ints(&[
        &[1, 2, 0, 0, 0, 1],
        &[0, 1, 0, 0, 0, 0],
        &[0, 0, 1, 1, 0, 0],
        &[0, 0, 0, 1, 0, 0],
        &[3, 0, 0, 0, 1, 0],
        &[0, 0, 0, 0, 0, 1],
    ]);
    let q = p.inverse().unwrap();
    assert_eq!(m2.change_basis(&p).unwrap().change_basis(&q).unwrap(), m2);
}

#[test]
fn jordan_types_and_characteristic_sequences() {
    let cfg = SamplingConfig::default();
    let ab = Algebra::abelian(5);
    assert_eq!(
        jordan_type_at(&ab, &e(5, 2)).unwrap(),
        CharSequence(vec![1; 5])
    );
    assert_eq!(
        characteristic_sequence(&ab, &cfg).unwrap().sequence,
        CharSequence(vec![1; 5])
    );
    assert_eq!(
        jordan_type_at(&fam(Family::M3, 7, &[("alpha", 0)]), &e(7, 1)).unwrap(),
        CharSequence(vec![5, 2])
    );
    for delta in [0, 1] {
        assert_eq!(
            jordan_type_at(&fam(Family::M1, 7, &[("delta", delta)]), &e(7, 1)).unwrap(),
            CharSequence(vec![5, 2])
        );
    }
    for lambda in [0, 1, -1, 2] {
        let a = fam(Family::M2, 8, &[("lambda", lambda)]);
        assert_eq!(
            characteristic_sequence(&a, &cfg).unwrap().sequence,
            CharSequence(vec![6, 2])
        );
    }
    let l = fam(Family::L, 7, &[("r", 3)]);
    assert_eq!(
        characteristic_sequence(&l, &cfg).unwrap().sequence,
        CharSequence(vec![5, 1, 1])
    );
}

#[test]
fn fingerprints() {
    let f10 = fingerprint(&fam(Family::M1, 7, &[("delta", 0)])).unwrap();
    let f11 = fingerprint(&fam(Family::M1, 7, &[("delta", 1)])).unwrap();
    assert_eq!(
        f10.distinguishing_component(&f11),
        Some("dim_right_annihilator")
    );
    assert_eq!(
        (f10.dim_right_annihilator, f11.dim_right_annihilator),
        (6, 5)
    );
    assert_eq!(f11.max_monomial_length, Some(7));
}

#[test]
fn criterion_examples() {
    let c = fam(Family::Ln1PlusC, 7, &[]);
    let r = lie_criterion_check(&c, CriterionMode::Theorem).unwrap();
    assert!(r.hypotheses_hold && r.conclusion_is_lie);

    let m2 = fam(Family::M2, 6, &[("lambda", 1)]);
    let r = lie_criterion_check(&m2, CriterionMode::Theorem).unwrap();
    assert!(!r.hypotheses_hold && !r.conclusion_is_lie);
    assert_eq!(
        r.hypotheses[0].witness.as_deref(),
        Some("[y1,y1] = y2 != 0")
    );
}

#[test]
fn gradings() {
    let g = |w: &[i64]| GradingAssignment::new(w.to_vec());
    for lambda in [0, 1, -1, 2] {
        let r = verify_grading(
            &fam(Family::M2, 6, &[("lambda", lambda)]),
            &g(&[1, 2, 3, 4, 5, 6]),
        )
        .unwrap();
        assert!(r.is_grading && r.is_connected && r.length == Some(6));
    }
    let m11 = fam(Family::M1, 7, &[("delta", 1)]);
    let r = verify_grading(&m11, &g(&[1, 4, 5, 6, 7, 3, 2])).unwrap();
    assert!(r.is_grading && r.is_connected && r.length == Some(7));
    let r = verify_grading(&Algebra::abelian(4), &g(&[1, 1, 1, 1])).unwrap();
    assert!(r.is_grading && r.is_connected && r.length == Some(1));

    assert_eq!(universal_grading_lattice(&Algebra::abelian(5)).rank(), 5);
    let lat = universal_grading_lattice(&m11);
    assert_eq!(lat.rank(), 1);
    assert!(lat.contains(&[1, 4, 5, 6, 7, 3, 2]));
    assert!(lat.contains(&[-1, -4, -5, -6, -7, -3, -2]));
    assert!(!lat.contains(&[2, 4, 5, 6, 7, 3, 2]));
    assert_eq!(
        universal_grading_lattice(&fam(Family::M2, 6, &[("lambda", 1)])).rank(),
        2
    );

    let s = max_length_search(&fam(Family::M3, 7, &[("alpha", 0)]), 8).unwrap();
    assert_eq!(
        (s.report.length, s.best.weights),
        (Some(7), vec![1, 2, 3, 4, 5, 6, 7])
    );
    let s = max_length_search(&fam(Family::N2, 4, &[]), 8).unwrap();
    assert_eq!(
        (s.report.length, s.best.weights),
        (Some(4), vec![1, 2, 3, 4])
    );
    let s = max_length_search(&fam(Family::A5TypeII, 7, &[]), 14).unwrap();
    assert!(s.report.length.unwrap() < 7);
}

#[test]
fn associated_graded_examples() {
    let ab = Algebra::abelian(4);
    assert_eq!(associated_graded(&ab).unwrap().algebra.entries().count(), 0);
    let a1 = fam(Family::A1TypeI, 7, &[("lambda", 2)]);
    let gr = associated_graded(&a1).unwrap();
    assert!(fingerprint(&a1)
        .unwrap()
        .same_invariants(&fingerprint(&gr.algebra).unwrap()));
    let gr = associated_graded(&fam(Family::M2, 6, &[("lambda", 1)])).unwrap();
    assert_eq!(gr.component_dims(), vec![2, 2, 1, 1]);
}

#[test]
fn natural_gradedness() {
    let cfg = SamplingConfig::default();
    assert!(
        natural_gradedness_report(&fam(Family::Q, 7, &[("r", 3)]), &cfg)
            .unwrap()
            .fingerprints_match
    );
    for n in [6, 8, 10] {
        assert!(
            natural_gradedness_report(&fam(Family::A3TypeII, n, &[]), &cfg)
                .unwrap()
                .fingerprints_match
        );
    }
    let r = natural_gradedness_report(&Algebra::abelian(5), &cfg).unwrap();
    assert!(r.fingerprints_match);
    assert_eq!(r.component_dims, vec![5]);
    // M2 is filtered but not graded by its lower central series.
    let r = natural_gradedness_report(&fam(Family::M2, 6, &[("lambda", 1)]), &cfg).unwrap();
    assert_eq!(r.component_dims, vec![2, 2, 1, 1]);
}
