use qpair_core::algebra::{matrix_algebra, quaternion_make};
use qpair_core::decompose::{Certificate, Structure};
use qpair_core::forms::{diag_bilinear, is_similar, QuadraticForm, Similarity};
use qpair_core::involution::{
    adjoint_involution, canonical_involution, involution_check, quaternion_involution, QuatVariant,
};
use qpair_core::linalg::Matrix;
use qpair_core::qpair::{
    adjoint_qp, boxtimes, qp_isotropy_status, qp_tensor, quaternion_qp, recover_gram,
    recover_quadratic_form, semitrace_repr, verify_hyperbolic, QpIsotropy,
};
use qpair_core::Field;

#[test]
fn semitrace_on_canonical_quaternion() {
    let f = Field::gf(2).unwrap();
    let q = quaternion_make(&f, &f.one(), &f.one()).unwrap();
    let g = canonical_involution(&q).unwrap();
    let p = semitrace_repr(&g, &q.basis(1)).unwrap();
    assert_eq!(p.eval(&q.one()), f.one());
    let p2 = semitrace_repr(&g, &q.add(&q.basis(1), &q.one())).unwrap();
    assert!(p.same_semitrace(&p2));
    let f5 = Field::gf(5).unwrap();
    let m = matrix_algebra(&f5, 2).unwrap();
    let tr = adjoint_involution(&diag_bilinear(&f5, &[f5.one(), f5.one()]).unwrap()).unwrap();
    let half = f5.inv(&f5.from_int(2)).unwrap();
    let p = semitrace_repr(&tr, &m.scalar(&half)).unwrap();
    for s in tr.sym() {
        assert_eq!(p.eval(&s), f5.mul(&half, &m.reduced_trace(&s).unwrap()));
    }
}

#[test]
fn quaternion_pair_values() {
    let f = Field::gf(2).unwrap().rational_function("t").unwrap();
    let t = f.generator().unwrap();
    let p = quaternion_qp(&f, &t, &t).unwrap();
    let q = p.algebra();
    assert_eq!(p.eval(&q.one()), f.one());
    assert_eq!(p.eval(&q.basis(2)), f.zero());
    let g2 = Field::gf(2).unwrap();
    let h = quaternion_qp(&g2, &g2.zero(), &g2.one()).unwrap();
    assert!(verify_hyperbolic(&h, &h.algebra().basis(1)));
}

#[test]
fn tensor_with_identity_vanishes() {
    let f = Field::gf(2).unwrap().rational_function("t").unwrap();
    let t = f.generator().unwrap();
    let tau = quaternion_involution(&quaternion_make(&f, &f.one(), &t).unwrap(), QuatVariant::Tau).unwrap();
    let p = quaternion_qp(&f, &t, &t).unwrap();
    let tp = qp_tensor(&tau, &p).unwrap();
    let one_b = tau.algebra().one();
    for s2 in p.involution().sym() {
        let x = qpair_core::linalg::vkron(&f, &one_b, &s2);
        assert_eq!(tp.eval(&x), f.zero());
    }
}

#[test]
fn tensor_associativity() {
    let f = Field::gf(2).unwrap();
    let b = quaternion_involution(&quaternion_make(&f, &f.one(), &f.one()).unwrap(), QuatVariant::Tau).unwrap();
    let c = canonical_involution(&quaternion_make(&f, &f.one(), &f.one()).unwrap()).unwrap();
    let a = quaternion_qp(&f, &f.one(), &f.one()).unwrap();
    let bc = qpair_core::involution::tensor_involutions(&b, &c).unwrap();
    let left = qp_tensor(&bc, &a).unwrap();
    let right = qp_tensor(&b, &qp_tensor(&c, &a).unwrap()).unwrap();
    // both live on B ⊗ C ⊗ A with the same coordinates
    let id = Matrix::identity(&f, 64);
    Certificate::new(Structure::Pair(left), Structure::Pair(right), id)
        .check()
        .unwrap();
}

#[test]
fn adjoint_of_tensor_product() {
    let f = Field::gf(2).unwrap();
    let phi = diag_bilinear(&f, &[f.one(), f.one()]).unwrap();
    let rho = QuadraticForm::binary(&f, f.one(), f.one());
    let left = qp_tensor(&adjoint_involution(&phi).unwrap(), &adjoint_qp(&rho).unwrap()).unwrap();
    let right = adjoint_qp(&qpair_core::forms::tensor_bq(&phi, &rho).unwrap()).unwrap();
    let perm = qpair_core::decompose::kron_flatten(&[2, 2]);
    let mut p = Matrix::zeros(&f, 16, 16);
    for (a, &b) in perm.iter().enumerate() {
        p.set(b, a, f.one());
    }
    Certificate::new(Structure::Pair(left), Structure::Pair(right), p)
        .check()
        .unwrap();
}

#[test]
fn boxtimes_examples() {
    let f = Field::gf(2).unwrap().rational_function("t").unwrap();
    let t = f.generator().unwrap();
    let g1 = canonical_involution(&quaternion_make(&f, &t, &t).unwrap()).unwrap();
    let g2 = canonical_involution(&quaternion_make(&f, &f.one(), &t).unwrap()).unwrap();
    let h = boxtimes(&g1, &g2).unwrap();
    let (q1, q2) = (g1.algebra(), g2.algebra());
    let x = qpair_core::linalg::vkron(&f, &q1.basis(2), &q2.basis(2));
    assert_eq!(h.eval(&x), f.zero());
    let f3 = Field::gf(3).unwrap();
    let g = canonical_involution(&quaternion_make(&f3, &f3.one(), &f3.one()).unwrap()).unwrap();
    let h = boxtimes(&g, &g).unwrap();
    for s in h.involution().sym() {
        let tr = h.algebra().reduced_trace(&s).unwrap();
        assert_eq!(h.eval(&s), f3.mul(&f3.from_int(2), &tr));
    }
}

#[test]
fn adjoint_pair_values() {
    let f = Field::gf(2).unwrap();
    for (a, want) in [(f.zero(), f.zero()), (f.one(), f.one())] {
        let rho = QuadraticForm::binary(&f, a.clone(), a.clone());
        let p = adjoint_qp(&rho).unwrap();
        // Φ(e₁⊗e₁) = e₁e₁ᵀB
        let b = rho.polar();
        let e1 = qpair_core::linalg::unit_vector(&f, 2, 0);
        let x = qpair_core::qpair::rank_one(&f, &b, &e1);
        assert_eq!(p.eval(&x), want);
    }
}

#[test]
fn similar_forms_give_isomorphic_pairs() {
    let f = Field::gf(3).unwrap().rational_function("t").unwrap();
    let t = f.generator().unwrap();
    let rho = QuadraticForm::diagonal(&f, &[f.one(), t.clone()]);
    let p = adjoint_qp(&rho).unwrap();
    for c in [f.from_int(2), t.clone(), f.add(&t, &f.one())] {
        let p2 = adjoint_qp(&rho.scale(&c)).unwrap();
        // same adjoint involution, same semi-trace: identity is a certificate
        Certificate::new(Structure::Pair(p.clone()), Structure::Pair(p2), Matrix::identity(&f, 4))
            .check()
            .unwrap();
    }
}

#[test]
fn recovery_round_trips() {
    let f = Field::gf(2).unwrap();
    for (a, b) in [(f.zero(), f.zero()), (f.one(), f.one())] {
        let rho = QuadraticForm::binary(&f, a, b);
        let p = adjoint_qp(&rho).unwrap();
        let (_, back) = recover_quadratic_form(&p).unwrap();
        assert!(matches!(is_similar(&rho, &back, 2).unwrap(), Similarity::Yes(..)));
    }
    let m = matrix_algebra(&f, 2).unwrap();
    let mut tr = Matrix::zeros(&f, 4, 4);
    for i in 0..2 {
        for j in 0..2 {
            tr.set(j * 2 + i, i * 2 + j, f.one());
        }
    }
    let s = involution_check(&m, tr).unwrap();
    assert_eq!(recover_gram(&s).unwrap(), Matrix::identity(&f, 2));
}

#[test]
fn isotropy_of_adjoint_pairs() {
    let f = Field::gf(2).unwrap();
    let hyp = adjoint_qp(&QuadraticForm::binary(&f, f.zero(), f.zero())).unwrap();
    let QpIsotropy::Hyperbolic(e) = qp_isotropy_status(&hyp, 2).unwrap() else {
        panic!()
    };
    assert!(verify_hyperbolic(&hyp, &e));
    let an = adjoint_qp(&QuadraticForm::binary(&f, f.one(), f.one())).unwrap();
    assert!(matches!(qp_isotropy_status(&an, 2).unwrap(), QpIsotropy::AnisotropicProven(_)));
}

/// Every nonsingular form of dimension 2 or 4 over GF(2): isotropy and
/// hyperbolicity of the form agree with those of its adjoint pair.
#[test]
fn form_and_pair_isotropy_agree() {
    let f = Field::gf(2).unwrap();
    for n in [2usize, 4] {
        let cells = n * (n + 1) / 2;
        for mask in 0u32..(1 << cells) {
            let coeffs: Vec<_> = (0..cells).map(|b| f.from_int(((mask >> b) & 1) as i64)).collect();
            let mut m = Matrix::zeros(&f, n, n);
            let mut k = 0;
            for i in 0..n {
                for j in i..n {
                    m.set(i, j, coeffs[k].clone());
                    k += 1;
                }
            }
            let rho = QuadraticForm::new(&f, m).unwrap();
            if !rho.is_nonsingular() {
                continue;
            }
            let w = qpair_core::forms::witt_decompose(&rho, 2).unwrap();
            let p = adjoint_qp(&rho).unwrap();
            let status = qp_isotropy_status(&p, 2).unwrap();
            assert_eq!(status.is_isotropic(), Some(w.witt_index > 0), "{}", rho.format());
            assert_eq!(matches!(status, QpIsotropy::Hyperbolic(_)), w.is_hyperbolic());
        }
    }
}
