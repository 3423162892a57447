use qpair_core::algebra::{matrix_algebra, quaternion_make, reduced_norm};
use qpair_core::forms::{diag_bilinear, BilinearForm};
use qpair_core::involution::{
    adjoint_involution, canonical_involution, determinant_involution, involution_check,
    invol_isotropy_status, pfister_invariant, quaternion_involution, tensor_involutions,
    verify_isotropic, verify_metabolic, Determinant, InvolIsotropy, InvolutionType, QuatVariant,
};
use qpair_core::linalg::{Matrix, Vector};
use qpair_core::{Elem, Field};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn f2t() -> (Field, Elem) {
    let f = Field::gf(2).unwrap().rational_function("t").unwrap();
    let t = f.generator().unwrap();
    (f, t)
}

fn transpose_map(f: &Field, n: usize) -> Matrix {
    let mut m = Matrix::zeros(f, n * n, n * n);
    for i in 0..n {
        for j in 0..n {
            m.set(j * n + i, i * n + j, f.one());
        }
    }
    m
}

#[test]
fn transpose_is_orthogonal_in_characteristic_two() {
    let f = Field::gf(2).unwrap();
    let m = matrix_algebra(&f, 2).unwrap();
    let s = involution_check(&m, transpose_map(&f, 2)).unwrap();
    assert_eq!(s.kind(), InvolutionType::Orthogonal);
    assert_eq!(s.sym().len() + s.alt().len(), 4);
}

#[test]
fn non_involution_is_rejected() {
    let f = Field::gf(3).unwrap();
    let m = matrix_algebra(&f, 2).unwrap();
    // x ↦ 2·xᵀ fixes nothing but fails σ(1) = 1 and σ² = id
    let bad = transpose_map(&f, 2).scale(&f, &f.from_int(2));
    assert!(involution_check(&m, bad).is_err());
}

#[test]
fn canonical_involution_properties() {
    let (f, t) = f2t();
    let q = quaternion_make(&f, &t, &f.add(&t, &f.one())).unwrap();
    let g = canonical_involution(&q).unwrap();
    assert_eq!(g.kind(), InvolutionType::Symplectic);
    assert_eq!(g.apply(&q.one()), q.one());
    assert_eq!(g.apply(&q.basis(1)), q.sub(&q.one(), &q.basis(1)));
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let f5 = Field::gf(5).unwrap();
    let q5 = quaternion_make(&f5, &f5.from_int(2), &f5.from_int(3)).unwrap();
    let g5 = canonical_involution(&q5).unwrap();
    for _ in 0..1000 {
        let x: Vector = (0..4).map(|_| f5.from_int(rng.gen_range(0..5))).collect();
        let n = q5.mul(&g5.apply(&x), &x);
        assert_eq!(q5.as_scalar(&n), Some(reduced_norm(&q5, &x).unwrap()));
    }
}

#[test]
fn quaternion_variants() {
    let f = Field::gf(2).unwrap();
    let q = quaternion_make(&f, &f.one(), &f.one()).unwrap();
    let tau = quaternion_involution(&q, QuatVariant::Tau).unwrap();
    // τ(w) = −vu
    let vu = q.mul(&q.basis(2), &q.basis(1));
    assert_eq!(tau.apply(&q.basis(3)), q.scale(&f.from_int(-1), &vu));
    assert_eq!(tau.alt(), vec![q.basis(2)]);
    let sigma = quaternion_involution(&q, QuatVariant::Sigma).unwrap();
    assert_eq!(sigma, canonical_involution(&q).unwrap());
}

#[test]
fn adjoint_examples() {
    let f = Field::gf(2).unwrap();
    let s = adjoint_involution(&diag_bilinear(&f, &[f.one(), f.one()]).unwrap()).unwrap();
    assert_eq!(s.map(), &transpose_map(&f, 2));
    let f3 = Field::gf(3).unwrap();
    let h = Matrix::from_rows(vec![vec![f3.zero(), f3.one()], vec![f3.from_int(-1), f3.zero()]]).unwrap();
    let s = adjoint_involution(&BilinearForm::new(&f3, h).unwrap()).unwrap();
    assert_eq!(s.kind(), InvolutionType::Symplectic);
    // G⁻¹XᵀG with G = diag(1,t) sends e₁₂ to t⁻¹e₂₁
    let (f, t) = f2t();
    let s = adjoint_involution(&diag_bilinear(&f, &[f.one(), t.clone()]).unwrap()).unwrap();
    let m = s.algebra();
    let img = s.apply(&m.basis(1));
    assert_eq!(img, m.scale(&f.inv(&t).unwrap(), &m.basis(2)));
}

#[test]
fn tensor_of_transposes() {
    let f = Field::gf(2).unwrap();
    let tr = adjoint_involution(&diag_bilinear(&f, &[f.one(), f.one()]).unwrap()).unwrap();
    let tt = tensor_involutions(&tr, &tr).unwrap();
    assert_eq!(tt.kind(), InvolutionType::Orthogonal);
    let sq = qpair_core::linalg::Matrix::identity(&f, 16);
    assert_eq!(tt.map().mul(&f, tt.map()), sq);
    let ad4 = adjoint_involution(&diag_bilinear(&f, &vec![f.one(); 4]).unwrap()).unwrap();
    // Kronecker identification E_ij ⊗ E_kl ↦ E_(ik),(jl)
    let perm = qpair_core::decompose::kron_flatten(&[2, 2]);
    let mut p = Matrix::zeros(&f, 16, 16);
    for (a, &b) in perm.iter().enumerate() {
        p.set(b, a, f.one());
    }
    let c = qpair_core::decompose::Certificate::new(
        qpair_core::decompose::Structure::Involution(tt),
        qpair_core::decompose::Structure::Involution(ad4),
        p,
    );
    c.check().unwrap();
}

#[test]
fn determinant_examples() {
    let (f, t) = f2t();
    let q = quaternion_make(&f, &f.one(), &t).unwrap();
    let tau = quaternion_involution(&q, QuatVariant::Tau).unwrap();
    let Determinant::Class(c) = determinant_involution(&tau, 2).unwrap() else {
        panic!()
    };
    let tclass = qpair_core::field::SquareClass::new(&f, t.clone()).unwrap();
    assert_eq!(c.same_as(&f, &tclass).unwrap(), Some(true));
    let ad = adjoint_involution(&diag_bilinear(&f, &[f.one(), t.clone()]).unwrap()).unwrap();
    let Determinant::Class(c) = determinant_involution(&ad, 2).unwrap() else {
        panic!()
    };
    assert_eq!(c.same_as(&f, &tclass).unwrap(), Some(true));
    let g2 = Field::gf(2).unwrap();
    let ad = adjoint_involution(&diag_bilinear(&g2, &[g2.one(), g2.one()]).unwrap()).unwrap();
    let Determinant::Class(c) = determinant_involution(&ad, 2).unwrap() else {
        panic!()
    };
    let one = qpair_core::field::SquareClass::new(&g2, g2.one()).unwrap();
    assert_eq!(c.same_as(&g2, &one).unwrap(), Some(true));
}

#[test]
fn pfister_invariant_examples() {
    let (f, t) = f2t();
    let t1 = f.add(&t, &f.one());
    let a = quaternion_involution(&quaternion_make(&f, &f.one(), &t).unwrap(), QuatVariant::Tau).unwrap();
    let b = quaternion_involution(&quaternion_make(&f, &t, &t1).unwrap(), QuatVariant::Tau).unwrap();
    let phi = pfister_invariant(&[a.clone(), b], 2).unwrap();
    assert_eq!(phi.dim(), 4);
    let slots = phi.pfister_slots().unwrap();
    let want = [t.clone(), t1];
    for (s, w) in slots.iter().zip(&want) {
        let cs = qpair_core::field::SquareClass::new(&f, s.clone()).unwrap();
        let cw = qpair_core::field::SquareClass::new(&f, w.clone()).unwrap();
        assert_eq!(cs.same_as(&f, &cw).unwrap(), Some(true));
    }
    let single = quaternion_involution(&quaternion_make(&f, &t, &t).unwrap(), QuatVariant::Tau).unwrap();
    assert_eq!(pfister_invariant(&[single], 2).unwrap().dim(), 2);
    let g4 = Field::galois(2, 2, None).unwrap();
    let w = g4.galois_generator().unwrap();
    let q = quaternion_involution(&quaternion_make(&g4, &w, &w).unwrap(), QuatVariant::Tau).unwrap();
    let phi = pfister_invariant(&[q.clone(), q], 2).unwrap();
    assert!(matches!(
        qpair_core::forms::is_metabolic_bilinear(&phi, 2).unwrap(),
        qpair_core::forms::Metabolic::Yes(_)
    ));
}

#[test]
fn isotropy_examples() {
    let f = Field::gf(2).unwrap();
    let tr = adjoint_involution(&diag_bilinear(&f, &[f.one(), f.one()]).unwrap()).unwrap();
    match invol_isotropy_status(&tr, 2).unwrap() {
        InvolIsotropy::Isotropic(a) => assert!(verify_isotropic(&tr, &a)),
        InvolIsotropy::Metabolic(e) => assert!(verify_metabolic(&tr, &e)),
        other => panic!("{other:?}"),
    }
    let (ft, t) = f2t();
    let ad = adjoint_involution(&diag_bilinear(&ft, &[ft.one(), t]).unwrap()).unwrap();
    assert!(matches!(
        invol_isotropy_status(&ad, 2).unwrap(),
        InvolIsotropy::NoWitnessUpToBound(_) | InvolIsotropy::AnisotropicProven(_)
    ));
    let q = quaternion_make(&f, &f.zero(), &f.one()).unwrap();
    let g = canonical_involution(&q).unwrap();
    assert!(verify_isotropic(&g, &q.basis(1)));
    assert_eq!(invol_isotropy_status(&g, 2).unwrap().is_isotropic(), Some(true));
}
