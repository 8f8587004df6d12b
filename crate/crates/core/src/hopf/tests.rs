use super::*;
use crate::arith::Poly;
use crate::linalg::same_span;
use crate::obstruction::Verdict;
use crate::syntax::{parse_mv, parse_poly};

const P: u32 = 2;

fn ty(kind: HopfKind) -> HopfType {
    HopfType::new(kind, P).unwrap()
}

fn mv(s: &str) -> MultiVector {
    parse_mv(s, &HopfType::chart()).unwrap()
}

fn poly(s: &str) -> Poly {
    parse_poly(s).unwrap()
}

fn mvs(srcs: &[String]) -> Vec<MultiVector> {
    srcs.iter().map(|s| mv(s)).collect()
}

fn span_eq(basis: &LabeledBasis, expected: &[MultiVector]) -> bool {
    // coordinates in a common monomial block
    let all: Vec<MultiVector> = basis.elements.iter().map(|e| e.form_part(0)).chain(expected.iter().cloned()).collect();
    let grade = all[0].grade().unwrap();
    let space = TruncatedSpace::new(&ty(HopfKind::IV), grade, 8);
    let co = |x: &MultiVector| space.basis.coords(&FormedMultiVector::from_mv(x)).unwrap();
    let a: Vec<_> = basis.elements.iter().map(|e| co(&e.form_part(0))).collect();
    let b: Vec<_> = expected.iter().map(co).collect();
    same_span(&a, &b, space.basis.len())
}

#[test]
fn contractions_invert() {
    for t in HopfType::all(3).unwrap() {
        assert!(t.contraction().check_inverse().unwrap(), "{t}");
    }
}

#[test]
fn type_needs_p() {
    assert!(HopfType::new(HopfKind::III, 1).is_err());
    assert_eq!(HopfType::new(HopfKind::IV, 7).unwrap().p, 1);
}

#[test]
fn fstar_diagonal_entries() {
    // IV grade 1: 1 − α^{1−μ−ν}; IIc grade 2: 1 − α^{1−μ}δ^{1−ν}
    let t = ty(HopfKind::IV);
    let s = TruncatedSpace::new(&t, 1, 3);
    let m = id_minus_fstar(&t, &s).unwrap();
    for (i, e) in s.basis.elements.iter().enumerate() {
        let k = s.blocks.iter().flat_map(|b| b.keys.iter()).nth(i).unwrap();
        let expect = &Poly::one() - &Poly::var_pow("alpha", 1 - k.mu - k.nu);
        assert_eq!(m.entries[i][i], expect, "{e}");
        for j in 0..s.basis.len() {
            if j != i {
                assert!(m.entries[i][j].is_zero());
            }
        }
    }
    let t = ty(HopfKind::IIc);
    let s = TruncatedSpace::new(&t, 2, 4);
    let m = id_minus_fstar(&t, &s).unwrap();
    for (i, k) in s.blocks.iter().flat_map(|b| b.keys.iter()).enumerate() {
        let expect = &Poly::one() - &(&Poly::var_pow("alpha", 1 - k.mu) * &Poly::var_pow("delta", 1 - k.nu));
        assert_eq!(m.entries[i][i], expect);
    }
}

#[test]
fn fstar_iib_and_iia_values() {
    let c = ty(HopfKind::IIb).contraction();
    assert!(c.id_minus(&mv("z^2*@z^@w")).unwrap().same(&mv("(2*alpha^(-1)*z*w - alpha^(-2)*w^2)*@z^@w")));
    assert!(c.id_minus(&mv("z*w*@z^@w")).unwrap().same(&mv("alpha^(-1)*w^2*@z^@w")));
    assert!(c.id_minus(&mv("w^2*@z^@w")).unwrap().is_zero());
    let c = ty(HopfKind::IIa).contraction();
    assert!(c.id_minus(&mv("z*w*@z^@w")).unwrap().same(&mv("delta^(-2)*w^3*@z^@w")));
}

#[test]
fn identity_contraction_gives_zero_map() {
    let w = HopfType::chart();
    let id = crate::mvf::ChartMap::identity(&w);
    let c = Contraction { f: id.clone(), f_inverse: id };
    assert!(c.id_minus(&mv("z^2*w*@z + @w")).unwrap().is_zero());
}

#[test]
fn truncation_matches_total_degree_for_unit_weights() {
    let s = TruncatedSpace::new(&ty(HopfKind::IV), 1, 3);
    // μ+ν ≤ 3 for two directions: 2·10
    assert_eq!(s.basis.len(), 20);
    let s = TruncatedSpace::new(&ty(HopfKind::IIb), 2, 3);
    assert_eq!(s.basis.len(), 10);
}

#[test]
fn invariant_dims() {
    let expect1 = [4, 3, 2, 2, 2];
    let expect2 = [3, 2, 1, 1, 1];
    for (i, t) in HopfType::all(P).unwrap().iter().enumerate() {
        let h1 = invariant_vector_fields(t).unwrap();
        let h2 = invariant_bivectors(t).unwrap();
        assert_eq!(h1.len(), expect1[i], "{t}");
        assert_eq!(h2.len(), expect2[i], "{t}");
        assert!(span_eq(&h1, &standard_h0_theta(t)), "{t}");
        assert!(span_eq(&h2, &standard_h0_sq(t)), "{t}");
    }
}

#[test]
fn m_bases_match_standard_lists() {
    for p in [2, 3] {
        for t in HopfType::all(p).unwrap() {
            let (m1, m2) = m1_m2_bases(&t, p + 3).unwrap();
            let (s1, s2) = standard_m_reps(&t);
            assert_eq!(m1.len(), s1.len(), "{t}");
            assert_eq!(m2.len(), s2.len(), "{t}");
            for (a, b) in m1.elements.iter().zip(&s1) {
                assert!(a.form_part(0).same(b), "{t}: {a} vs {b}");
            }
            for (a, b) in m2.elements.iter().zip(&s2) {
                assert!(a.form_part(0).same(b), "{t}: {a} vs {b}");
            }
        }
    }
}

#[test]
fn iib_m1_alternative_representatives() {
    // the standard IIb list agrees with {w∂w, z∂w} modulo the image
    let t = ty(HopfKind::IIb);
    let b = Block::new(&t, 1, 0);
    let l = b.id_minus_fstar(&t).unwrap();
    let co = |s: &str| b.basis.coords(&FormedMultiVector::from_mv(&mv(s))).unwrap();
    let mut x = l.columns();
    x.extend(standard_m_reps(&t).0.iter().map(|f| b.basis.coords(&FormedMultiVector::from_mv(f)).unwrap()));
    let mut y = l.columns();
    y.extend([co("w*@w"), co("z*@w")]);
    assert!(same_span(&x, &y, b.len()));
}

#[test]
fn m_dims_from_rank_alone() {
    // dim M = dim block − rank, independent of representative choice
    let expect = [(4, 3), (3, 2), (2, 1), (2, 1), (2, 1)];
    for (i, t) in HopfType::all(P).unwrap().iter().enumerate() {
        let mut dims = (0, 0);
        for (g, d) in [(1, &mut dims.0), (2, &mut dims.1)] {
            // f_* preserves weight, so the truncated matrix is block diagonal
            let s = TruncatedSpace::new(t, g, t.default_degree());
            let m = id_minus_fstar(t, &s).unwrap();
            let mut at = 0;
            for b in &s.blocks {
                let n = b.len();
                for i in 0..s.basis.len() {
                    for j in at..at + n {
                        assert!(m.entries[i][j].is_zero() || (at..at + n).contains(&i), "{t}: off-block entry");
                    }
                }
                let sub: Vec<Vec<Poly>> = m.entries[at..at + n].iter().map(|r| r[at..at + n].to_vec()).collect();
                *d += n - crate::linalg::matrix::bareiss_rank(&sub);
                at += n;
            }
        }
        assert_eq!(dims, expect[i], "{t}");
    }
}

#[test]
fn table5_triples() {
    let expect = [(4, 7, 3), (2, 3, 1), (3, 5, 2), (2, 3, 1), (2, 3, 1), (2, 3, 1), (2, 3, 1), (2, 3, 1)];
    for (s, e) in strata(P).unwrap().iter().zip(expect) {
        assert_eq!(table5_dims(&s.ty, &s.lambda0).unwrap(), e, "{} {}", s.ty, s.name);
    }
}

#[test]
fn table5_concrete_iv_points() {
    let t = ty(HopfKind::IV);
    for l in ["z^2", "z*w", "w^2", "z^2 + w^2", "(z + w)^2"] {
        assert_eq!(table5_dims(&t, &poly(l)).unwrap(), (2, 3, 1), "{l}");
    }
}

#[test]
fn poisson_automorphisms_match() {
    let p = P;
    let rows: Vec<(HopfKind, &str, Vec<String>)> = vec![
        (HopfKind::IV, "0", vec!["z*@z".into(), "w*@z".into(), "z*@w".into(), "w*@w".into()]),
        (HopfKind::IV, "A*z^2 + B*z*w + C*w^2", vec!["z*@z + w*@w".into(), "(B*z + C*w)*@z - A*z*@w".into()]),
        (HopfKind::III, "0", vec!["z*@z".into(), format!("w^{p}*@z"), "w*@w".into()]),
        (HopfKind::III, "B*w^3", vec![format!("{p}*z*@z + w*@w"), format!("w^{p}*@z")]),
        (
            HopfKind::III,
            "A*z*w + B*w^3",
            vec![format!("(z + B/A*w^{p})*@z"), format!("-{p}*B/A*w^{p}*@z + w*@w")],
        ),
        (HopfKind::IIa, "A*w^3", vec![format!("{p}*z*@z + w*@w"), format!("w^{p}*@z")]),
        (HopfKind::IIb, "A*w^2", vec!["z*@z + w*@w".into(), "w*@z".into()]),
        (HopfKind::IIc, "A*z*w", vec!["z*@z".into(), "w*@w".into()]),
    ];
    for (k, l, expect) in rows {
        let t = ty(k);
        let h = tables::HopfHyper::new(&t, &poly(l), t.default_degree()).unwrap();
        let aut = LabeledBasis::from_mvs("aut", h.poisson_automorphisms().unwrap());
        assert_eq!(aut.len(), expect.len(), "{t} {l}");
        assert!(span_eq(&aut, &mvs(&expect)), "{t} {l}: {:?}", aut.labels());
    }
}

#[test]
fn complex_property_holds() {
    for s in strata(P).unwrap() {
        let h = tables::HopfHyper::new(&s.ty, &s.lambda0, s.ty.default_degree()).unwrap();
        assert!(h.model(&s.name).unwrap().check_complex().unwrap());
    }
}

#[test]
fn families_are_invariant() {
    for k in HopfKind::ALL {
        let f = hopf_family(k, P).unwrap();
        assert!(family_invariance(&f.lambda, &f.map).unwrap(), "{}", f.name);
    }
}

#[test]
fn dropping_a_map_term_breaks_invariance() {
    let f = hopf_family(HopfKind::IIb, P).unwrap();
    assert!(!family_invariance(&f.lambda, &[poly("alpha*z"), f.map[1].clone()]).unwrap());
}

#[test]
fn tau_pairs_match_listed_pairs() {
    let p = P;
    let q = p + 1;
    let listed: Vec<(HopfKind, Vec<(String, String)>)> = vec![
        (
            HopfKind::IV,
            vec![
                ("0".into(), "alpha^(-1)*z*@z + alpha^(-1)*w*@w".into()),
                ("0".into(), "alpha^(-1)*(B*z + C*w)*@z - alpha^(-1)*A*z*@w".into()),
                ("(A*z^2 + B*z*w + C*w^2)*@z^@w".into(), "0".into()),
            ],
        ),
        (
            HopfKind::III,
            vec![
                ("0".into(), format!("delta^(-{p})*(z + B/A*w^{p})*@z")),
                ("0".into(), format!("delta^(-1)*(-{p}*B/A*w^{p}*@z + w*@w)")),
                (format!("(A*z*w + B*w^{q})*@z^@w"), "0".into()),
            ],
        ),
        (
            HopfKind::IIa,
            vec![
                ("A*z*w*@z^@w".into(), format!("(delta^(-{p})*z - delta^(-{})*w^{p})*@z", 2 * p)),
                (format!("-{p}*A*delta^{}*z*w*@z^@w", p - 1), "delta^(-1)*w*@w".into()),
                (format!("w^{q}*@z^@w"), "0".into()),
            ],
        ),
        (
            HopfKind::IIb,
            vec![
                ("0".into(), "(alpha^(-1)*z - alpha^(-2)*w)*@z + alpha^(-1)*w*@w".into()),
                ("-A*z^2*@z^@w".into(), "(alpha^(-1)*z - alpha^(-2)*w)*@w".into()),
                ("w^2*@z^@w".into(), "0".into()),
            ],
        ),
        (
            HopfKind::IIc,
            vec![
                ("0".into(), "alpha^(-1)*z*@z".into()),
                ("0".into(), "delta^(-1)*w*@w".into()),
                ("z*w*@z^@w".into(), "0".into()),
            ],
        ),
    ];
    for (k, pairs) in listed {
        let f = hopf_family(k, p).unwrap();
        let got = tau(&f).unwrap();
        assert_eq!(got.len(), pairs.len());
        for (g, (b, a)) in got.iter().zip(&pairs) {
            assert!(g.b.same(&mv(b)), "{} ∂{}: B = {}", f.name, g.param, g.b);
            assert!(g.a.same(&mv(a)), "{} ∂{}: A = {}", f.name, g.param, g.a);
        }
    }
}

#[test]
fn d_membership_full_rank() {
    for p in [2, 3] {
        for k in HopfKind::ALL {
            let f = hopf_family(k, p).unwrap();
            let d = d_membership(&f).unwrap();
            assert_eq!((d.rank, d.h1_dim), (3, 3), "{}", f.name);
        }
    }
}

#[test]
fn membership_fails_for_wrong_pair() {
    let t = ty(HopfKind::IV);
    let h = tables::HopfHyper::new(&t, &poly("A*z^2 + B*z*w + C*w^2"), 3).unwrap();
    let e = h.check_pair(&MultiVector::zero(&HopfType::chart()), &mv("z*@w")).unwrap_err();
    assert!(matches!(e, crate::Error::MembershipFails(_)));
    // [Λ0, z∂w] = −Bz² − 2Czw
    assert!(h.lambda0.schouten(&mv("z*@w")).unwrap().same(&mv("(-B*z^2 - 2*C*z*w)*@z^@w")));
}

#[test]
fn verify_families_pass() {
    for k in HopfKind::ALL {
        let r = verify_hopf_family(&hopf_family(k, P).unwrap()).unwrap();
        assert!(r.ok, "{:?}", r);
    }
}

#[test]
fn degenerate_strata() {
    for p in [2, 3] {
        assert!(h95_degeneracy(DegenerateCase::IvSquare, p).unwrap());
        assert!(h95_degeneracy(DegenerateCase::IiiPure, p).unwrap());
    }
    // control: the IIc ∂t class is nonzero
    let f = hopf_family(HopfKind::IIc, P).unwrap();
    let h = tables::HopfHyper::new(&f.ty, &f.lambda0, 3).unwrap();
    let t = tau(&f).unwrap().pop().unwrap();
    assert!(h.class_of(&t.b, &t.a).unwrap().iter().any(|c| !c.is_zero()));
}

#[test]
fn undetermined_strata() {
    let iv = ty(HopfKind::IV);
    for l in ["A*z^2", "(a*z + b*w)^2"] {
        let h = tables::HopfHyper::new(&iv, &poly(l), 3).unwrap();
        let c = crate::obstruction::r4_search(&h.model(l).unwrap()).unwrap();
        assert!(matches!(c.verdict, Verdict::Undetermined { .. }), "{l}: {:?}", c.verdict);
        assert!(matches!(classify(&iv, &poly(l)).unwrap().verdict, Verdict::Undetermined { .. }));
    }
    let iii = ty(HopfKind::III);
    let c = classify(&iii, &poly("B*w^3")).unwrap();
    assert!(matches!(c.verdict, Verdict::Undetermined { .. }), "{:?}", c.verdict);
}

#[test]
fn obstructed_when_zero() {
    for k in [HopfKind::IV, HopfKind::III] {
        let c = obstruction_certificate_hopf(&ty(k)).unwrap();
        assert!(c.is_obstructed());
        let back = crate::obstruction::Certificate::from_json(&c.to_json()).unwrap();
        assert_eq!(back, c);
    }
    assert!(obstruction_certificate_hopf(&ty(HopfKind::IIb)).is_err());
}

#[test]
fn witness_examples() {
    let w = obstruction_witness(&ty(HopfKind::IV), &[1, 0, 0, 1, 0, 0, 0]).unwrap().unwrap();
    assert!(w.class.same(&mv("-z^2*@z^@w")));
    let w = obstruction_witness(&ty(HopfKind::III), &[0, 1, 1, 0, 0]).unwrap().unwrap();
    assert!(w.class.same(&mv("w^3*@z^@w")));
    assert!(obstruction_witness(&ty(HopfKind::IV), &[0; 7]).unwrap().is_none());
    assert!(obstruction_witness(&ty(HopfKind::IIc), &[1, 0, 0, 1, 0]).is_err());
}

#[test]
fn general_bracket_formulas() {
    // Λ-part against a general M₁ field, IV and III
    let iv = mv("(A*z^2 + B*z*w + C*w^2)*@z^@w")
        .schouten(&mv("(d*z + e*w)*@z + (f*z + g*w)*@w"))
        .unwrap();
    assert!(iv.same(&mv("((-A*d - B*f + g*A)*z^2 + (-2*A*e - 2*C*f)*z*w + (C*d - B*e - C*g)*w^2)*@z^@w")));
    let iii = mv("(A*z*w + B*w^3)*@z^@w").schouten(&mv("(d*z + e*w^2)*@z + f*w*@w")).unwrap();
    // only the w^{p+1} part survives in M₂ modulo nothing: check its coefficient
    assert_eq!(iii.comp(3).coeff_of(crate::arith::Var::new("z"), 0), poly("(B*d - A*e - 2*B*f)*w^3"));
}

#[test]
fn classify_generic_strata() {
    let cases = [
        (HopfKind::IV, "A*z^2 + B*z*w + C*w^2"),
        (HopfKind::IV, "z^2 + w^2"),
        (HopfKind::III, "A*z*w + B*w^3"),
        (HopfKind::III, "2*z*w + w^3"),
        (HopfKind::IIa, "A*w^3"),
        (HopfKind::IIb, "A*w^2"),
        (HopfKind::IIc, "A*z*w"),
        (HopfKind::IIc, "0"),
    ];
    for (k, l) in cases {
        let c = classify(&ty(k), &poly(l)).unwrap();
        assert!(matches!(c.verdict, Verdict::UnobstructedMC { .. }), "{k} {l}: {:?}", c.verdict);
    }
}
