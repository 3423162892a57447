use qpair_core::algebra::{matrix_algebra, quaternion_make, Splitting};
use qpair_core::decompose::{
    canonical_symplectic_decomposition, complete_quaternion_basis, lift_block,
    orthogonal_normal_form, orthogonalize_decomposition, pfister_decomposition, pfister_from_split,
    qp_normal_form, split_involution, symplectize, PfisterReport, TotalDecomposition,
};
use qpair_core::field::SquareClass;
use qpair_core::forms::{bilinear_pfister, diag_bilinear, tensor_bq, QuadraticForm};
use qpair_core::involution::{
    adjoint_involution, canonical_involution, quaternion_involution, InvolutionType, QuatVariant,
};
use qpair_core::linalg::Matrix;
use qpair_core::qpair::{adjoint_qp, quaternion_qp, semitrace_repr};
use qpair_core::{Elem, Field};

fn f2t() -> (Field, Elem) {
    let f = Field::gf(2).unwrap().rational_function("t").unwrap();
    let t = f.generator().unwrap();
    (f, t)
}

fn same_class(f: &Field, a: &Elem, b: &Elem) -> bool {
    let ca = SquareClass::new(f, a.clone()).unwrap();
    let cb = SquareClass::new(f, b.clone()).unwrap();
    ca.same_as(f, &cb).unwrap() == Some(true)
}

#[test]
fn completing_a_quaternion_basis() {
    let f = Field::gf(2).unwrap();
    let m = matrix_algebra(&f, 2).unwrap();
    let v = m.add(&m.basis(1), &m.basis(2));
    let (u, _a, b) = complete_quaternion_basis(&m, &v).unwrap();
    assert_eq!(b, f.one());
    assert_eq!(m.mul(&u, &v), m.mul(&v, &m.sub(&m.one(), &u)));
    let (ft, t) = f2t();
    let q = quaternion_make(&ft, &t, &ft.add(&t, &ft.one())).unwrap();
    let (_, a, b) = complete_quaternion_basis(&q, &q.basis(2)).unwrap();
    assert_eq!(b, ft.add(&t, &ft.one()));
    // u is pinned down up to F[v], which does not move a here
    assert_eq!(a, t);
    let f5 = Field::gf(5).unwrap();
    let q5 = quaternion_make(&f5, &f5.from_int(2), &f5.one()).unwrap();
    let (u, a, _) = complete_quaternion_basis(&q5, &q5.basis(2)).unwrap();
    assert_eq!(q5.sub(&q5.mul(&u, &u), &u), q5.scalar(&a));
    assert_ne!(f5.mul(&f5.from_int(-4), &a), f5.one());
}

#[test]
fn orthogonal_normal_forms() {
    let f = Field::gf(2).unwrap();
    let tr = adjoint_involution(&diag_bilinear(&f, &[f.one(), f.one()]).unwrap()).unwrap();
    let nf = orthogonal_normal_form(&tr).unwrap();
    assert_eq!(nf.b, f.one());
    nf.cert.check().unwrap();
    let (ft, t) = f2t();
    let q = quaternion_make(&ft, &t, &t).unwrap();
    let tau = quaternion_involution(&q, QuatVariant::Tau).unwrap();
    let nf = orthogonal_normal_form(&tau).unwrap();
    assert_eq!(nf.cert.map(), &Matrix::identity(&ft, 4));
    let ad = adjoint_involution(&diag_bilinear(&ft, &[ft.one(), t.clone()]).unwrap()).unwrap();
    let nf = orthogonal_normal_form(&ad).unwrap();
    nf.cert.check().unwrap();
    assert!(same_class(&ft, &nf.b, &t));
}

#[test]
fn pair_normal_forms() {
    let (f, t) = f2t();
    let p = quaternion_qp(&f, &t, &f.add(&t, &f.one())).unwrap();
    let nf = qp_normal_form(&p).unwrap();
    assert_eq!((nf.a.clone(), nf.b.clone()), (t.clone(), f.add(&t, &f.one())));
    let q = p.algebra();
    let shifted = semitrace_repr(p.involution(), &q.add(&q.basis(1), &q.one())).unwrap();
    let nf = qp_normal_form(&shifted).unwrap();
    nf.cert.check().unwrap();
    let g2 = Field::gf(2).unwrap();
    let ad = adjoint_qp(&QuadraticForm::binary(&g2, g2.one(), g2.one())).unwrap();
    let nf = qp_normal_form(&ad).unwrap();
    nf.cert.check().unwrap();
    // [1,1] has nontrivial Arf invariant, as does [c‖·d) for c = 1
    assert_eq!(nf.a, g2.one());
    let f5 = Field::gf(5).unwrap();
    let p5 = adjoint_qp(&QuadraticForm::diagonal(&f5, &[f5.one(), f5.from_int(2)])).unwrap();
    qp_normal_form(&p5).unwrap().cert.check().unwrap();
}

#[test]
fn symplectize_examples() {
    let (f, t) = f2t();
    let s = symplectize(&f, &t, &t, &t, &t).unwrap();
    assert_eq!(s.a, f.zero());
    assert_eq!(s.d, f.square(&t));
    s.cert.check().unwrap();
    let f5 = Field::gf(5).unwrap();
    let one = f5.one();
    let s = symplectize(&f5, &f5.from_int(2), &one, &f5.from_int(3), &one).unwrap();
    assert_eq!((s.a, s.c, s.d), (f5.from_int(4), f5.from_int(3), one));
    let g4 = Field::galois(2, 2, None).unwrap();
    let w = g4.galois_generator().unwrap();
    let s = symplectize(&g4, &w, &g4.one(), &w, &w).unwrap();
    assert_eq!(s.a, g4.zero());
}

#[test]
fn orthogonalize_examples() {
    let (f, t) = f2t();
    let g = canonical_involution(&quaternion_make(&f, &t, &t).unwrap()).unwrap();
    let p = quaternion_qp(&f, &t, &t).unwrap();
    let td = orthogonalize_decomposition(&[g], Some(&p)).unwrap();
    assert!(td.factors[0].is_orthogonal());
    td.verify().unwrap();
    let nf = qp_normal_form(td.pair.as_ref().unwrap()).unwrap();
    assert_eq!(nf.a, t);
    assert_eq!(nf.b, f.square(&t));

    let tau = quaternion_involution(&quaternion_make(&f, &f.one(), &t).unwrap(), QuatVariant::Tau).unwrap();
    let td = orthogonalize_decomposition(&[tau], Some(&p)).unwrap();
    assert_eq!(td.map, Matrix::identity(&f, 16));

    let g4 = Field::galois(2, 2, None).unwrap();
    let w = g4.galois_generator().unwrap();
    let q = quaternion_make(&g4, &w, &w).unwrap();
    let g = canonical_involution(&q).unwrap();
    let p = quaternion_qp(&g4, &g4.one(), &w).unwrap();
    let td = orthogonalize_decomposition(&[g.clone(), g], Some(&p)).unwrap();
    assert!(td.factors.iter().all(|s| s.is_orthogonal()));
    td.verify().unwrap();
}

#[test]
fn odd_characteristic_orthogonalization() {
    let f = Field::gf(5).unwrap();
    let g1 = canonical_involution(&quaternion_make(&f, &f.from_int(2), &f.one()).unwrap()).unwrap();
    let g2 = canonical_involution(&quaternion_make(&f, &f.from_int(3), &f.one()).unwrap()).unwrap();
    let td = orthogonalize_decomposition(&[g1, g2], None).unwrap();
    assert!(td.factors.iter().all(|s| s.kind() == InvolutionType::Orthogonal));
    td.verify().unwrap();
}

#[test]
fn canonical_symplectic_examples() {
    let (f, t) = f2t();
    let tau = quaternion_involution(&quaternion_make(&f, &f.zero(), &t).unwrap(), QuatVariant::Tau).unwrap();
    let p = quaternion_qp(&f, &t, &f.square(&t)).unwrap();
    let td = TotalDecomposition::identity(vec![tau], Some(p)).unwrap();
    let c = canonical_symplectic_decomposition(&td).unwrap();
    assert!(c.factors.iter().all(|s| s.kind() == InvolutionType::Symplectic));
    c.verify().unwrap();

    // orthogonalize, then go back to canonical factors
    let g = canonical_involution(&quaternion_make(&f, &t, &t).unwrap()).unwrap();
    let p = quaternion_qp(&f, &t, &t).unwrap();
    let o = orthogonalize_decomposition(&[g], Some(&p)).unwrap();
    let c = canonical_symplectic_decomposition(&o).unwrap();
    c.verify().unwrap();

    let g4 = Field::galois(2, 2, None).unwrap();
    let m = adjoint_involution(&diag_bilinear(&g4, &[g4.one(), g4.one()]).unwrap()).unwrap();
    let p = adjoint_qp(&QuadraticForm::binary(&g4, g4.zero(), g4.zero())).unwrap();
    let td = TotalDecomposition::identity(vec![m], Some(p)).unwrap();
    let c = canonical_symplectic_decomposition(&td).unwrap();
    assert!(c.factors.iter().all(|s| s.kind() == InvolutionType::Symplectic));
    c.verify().unwrap();
}

#[test]
fn block_lifting_is_identity_on_identity() {
    let f = Field::gf(3).unwrap();
    let l = lift_block(&f, &[2, 3, 2], 0, 2, &Matrix::identity(&f, 4));
    assert_eq!(l, Matrix::identity(&f, 12));
}

#[test]
fn splitting_tensor_involutions() {
    let f = Field::gf(2).unwrap();
    let q = quaternion_make(&f, &f.one(), &f.one()).unwrap();
    assert!(matches!(
        qpair_core::algebra::find_zero_divisor(&q, 1).unwrap(),
        Splitting::Split(_)
    ));
    let tau = quaternion_involution(&q, QuatVariant::Tau).unwrap();
    let tt = qpair_core::involution::tensor_involutions(&tau, &tau).unwrap();
    let s = split_involution(&tt, 1).unwrap().unwrap();
    s.cert.check().unwrap();
    assert_eq!(s.gram.rows(), 4);
}

#[test]
fn forward_pfister_extraction() {
    let (f, t) = f2t();
    let pi = QuadraticForm::binary(&f, f.one(), t.clone());
    let standard = tensor_bq(&bilinear_pfister(&f, &[t.clone()]).unwrap(), &pi).unwrap();
    let mut m = Matrix::identity(&f, 4);
    m.set(0, 3, f.one());
    m.set(2, 1, t.clone());
    let rho = standard.transform(&m);
    let td = pfister_decomposition(&rho, &[t.clone()], &pi, 2).unwrap();
    td.verify().unwrap();
}

#[test]
fn pfister_pipeline_over_rational_functions() {
    let (f, t) = f2t();
    let ad = adjoint_involution(&diag_bilinear(&f, &[f.one(), t.clone()]).unwrap()).unwrap();
    let p = quaternion_qp(&f, &f.zero(), &f.one()).unwrap();
    let td = TotalDecomposition::identity(vec![ad], Some(p)).unwrap();
    let PfisterReport::Confirmed { phi, .. } = pfister_from_split(&td, &f, 2).unwrap() else {
        panic!()
    };
    assert!(same_class(&f, &phi.pfister_slots().unwrap()[0], &t));

    let k = f.quotient(vec![t.clone(), f.one(), f.one()], "x").unwrap();
    let g = canonical_involution(&quaternion_make(&f, &t, &t).unwrap()).unwrap();
    let p = quaternion_qp(&f, &t, &t).unwrap();
    let o = orthogonalize_decomposition(&[g], Some(&p)).unwrap();
    let r = pfister_from_split(&o, &k, 2).unwrap();
    assert!(matches!(r, PfisterReport::Confirmed { .. }), "{r:?}");

    let k = f.quotient(vec![f.one(), f.one(), f.one()], "x").unwrap();
    let tau = quaternion_involution(&quaternion_make(&f, &f.one(), &t).unwrap(), QuatVariant::Tau).unwrap();
    let p = quaternion_qp(&f, &t, &f.one()).unwrap();
    let td = TotalDecomposition::identity(vec![tau], Some(p)).unwrap();
    let r = pfister_from_split(&td, &k, 2).unwrap();
    assert!(matches!(r, PfisterReport::Confirmed { .. }), "{r:?}");
}

#[test]
fn pfister_pipeline_over_gf4_is_hyperbolic() {
    let g4 = Field::galois(2, 2, None).unwrap();
    let w = g4.galois_generator().unwrap();
    let tau = quaternion_involution(&quaternion_make(&g4, &w, &w).unwrap(), QuatVariant::Tau).unwrap();
    let p = quaternion_qp(&g4, &w, &g4.one()).unwrap();
    let td = TotalDecomposition::identity(vec![tau], Some(p)).unwrap();
    assert!(matches!(
        pfister_from_split(&td, &g4, 2).unwrap(),
        PfisterReport::ConfirmedHyperbolic { .. }
    ));
}

#[test]
fn checker_rejects_tampered_maps() {
    let (f, t) = f2t();
    let s = symplectize(&f, &t, &t, &t, &t).unwrap();
    let good = s.cert.map().clone();
    for (i, j) in [(0, 0), (3, 5), (15, 1)] {
        let mut bad = good.clone();
        bad.set(i, j, f.add(good.get(i, j), &f.one()));
        let c = qpair_core::decompose::Certificate::new(s.cert.source().clone(), s.cert.target().clone(), bad);
        assert!(c.check().is_err());
    }
    // an algebra isomorphism that ignores the involutions
    let q = quaternion_make(&f, &t, &t).unwrap();
    let gamma = canonical_involution(&q).unwrap();
    let tau = quaternion_involution(&q, QuatVariant::Tau).unwrap();
    let c = qpair_core::decompose::Certificate::new(
        qpair_core::decompose::Structure::Involution(gamma),
        qpair_core::decompose::Structure::Involution(tau),
        Matrix::identity(&f, 4),
    );
    assert!(c.check().is_err());
    // same involution, different semi-traces
    let p1 = quaternion_qp(&f, &t, &t).unwrap();
    let p2 = semitrace_repr(p1.involution(), &q.basis(3)).ok();
    if let Some(p2) = p2 {
        let c = qpair_core::decompose::Certificate::new(
            qpair_core::decompose::Structure::Pair(p1),
            qpair_core::decompose::Structure::Pair(p2),
            Matrix::identity(&f, 4),
        );
        assert!(c.check().is_err());
    }
}
