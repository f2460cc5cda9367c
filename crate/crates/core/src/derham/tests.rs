use super::*;
use crate::lattice::IntegralPresentation;
use crate::scalars::{rat, LocalScalar, UPoly};

const QQ: RingTag = RingTag::RationalField;

fn x() -> WeylElement {
    WeylElement::x(1, QQ, 0)
}

fn d() -> WeylElement {
    WeylElement::d(1, QQ, 0)
}

fn c(q: Rational) -> WeylElement {
    WeylElement::scalar(1, QQ, LocalScalar::from_rational(q)).unwrap()
}

fn mul(a: &WeylElement, b: &WeylElement) -> WeylElement {
    a.normal_product(b).unwrap()
}

fn cyclic(p: WeylElement) -> PresentedModule {
    PresentedModule::cyclic(p)
}

fn dims(p: WeylElement) -> Vec<usize> {
    h_dr_n1(&cyclic(p)).unwrap().dims.unwrap()
}

#[test]
fn complex_shapes() {
    let c1 = dr_complex(&cyclic(d())).unwrap();
    assert_eq!(c1.terms.iter().map(|t| t.copies.len()).collect::<Vec<_>>(), vec![1, 1]);
    let m2 = PresentedModule::cyclic(WeylElement::d(2, QQ, 0));
    let c2 = dr_complex(&m2).unwrap();
    assert_eq!(c2.terms.iter().map(|t| t.copies.len()).collect::<Vec<_>>(), vec![1, 2, 1]);
    let right = PresentedModule { side: Side::Right, ..m2 };
    assert_eq!(dr_complex(&right), Err(DerhamError::RightModule));
}

#[test]
fn differential_in_one_variable_is_the_action_of_d() {
    let c1 = dr_complex(&cyclic(d())).unwrap();
    let v = FreeVector::new(vec![x()]);
    let out = c1.differential(0, &[v]);
    assert_eq!(out[0].entries[0], mul(&d(), &x()));
}

#[test]
fn b_functions() {
    assert_eq!(b_function_along_x(&cyclic(d())).unwrap().poly, UPoly::var());
    assert_eq!(b_function_along_x(&cyclic(x())).unwrap().poly, UPoly::from_i64s(&[1, 1]));
    let b = b_function_along_x(&cyclic(mul(&x(), &d()).sub(&c(rat(1, 2))).unwrap())).unwrap();
    assert_eq!(b.poly, UPoly::from_coeffs(vec![rat(-1, 2), rat(1, 1)]));
    assert!(b.integer_roots.is_empty());
    assert_eq!(
        b_function_along_x(&PresentedModule::free(QQ, Side::Left, 1, 1)),
        Err(DerhamError::NotHolonomic)
    );
}

#[test]
fn de_rham_of_basic_modules() {
    assert_eq!(dims(d()), vec![1, 0]);
    assert_eq!(dims(x()), vec![0, 1]);
    assert_eq!(dims(d().sub(&c(rat(1, 1))).unwrap()), vec![0, 0]);
    assert_eq!(dims(mul(&x(), &d()).sub(&c(rat(1, 2))).unwrap()), vec![0, 0]);
    // 0 → δ → W/W·x∂ → ℚ[x] → 0 with connecting map an isomorphism
    assert_eq!(dims(mul(&x(), &d())), vec![0, 0]);
}

#[test]
fn de_rham_of_a_direct_sum() {
    let zero = WeylElement::zero(1, QQ);
    let m = PresentedModule::new(
        QQ,
        Side::Left,
        1,
        2,
        vec![FreeVector::new(vec![d(), zero.clone()]), FreeVector::new(vec![zero, x()])],
    )
    .unwrap();
    assert_eq!(h_dr_n1(&m).unwrap().dims.unwrap(), vec![1, 1]);
}

#[test]
fn direct_and_oracle_agree() {
    let ops = [
        d(),
        x(),
        d().sub(&c(rat(1, 1))).unwrap(),
        mul(&x(), &d()).sub(&c(rat(1, 2))).unwrap(),
        mul(&x(), &d()),
        mul(&x(), &d()).sub(&c(rat(3, 1))).unwrap(),
        mul(&d(), &d()),
        mul(&x(), &x()),
    ];
    for p in ops {
        let m = cyclic(p.clone());
        let direct = h_dr_n1(&m).unwrap();
        let oracle = stabilization_check(&m, 30, 5).unwrap().expect("stabilizes");
        assert_eq!(direct.dims.unwrap(), vec![oracle.h0, oracle.h1], "operator {p}");
    }
}

#[test]
fn transfer_path() {
    let qz = RingTag::PolynomialZ;
    let avatar = |p: WeylElement| IntegralPresentation::new(PresentedModule::cyclic(p)).unwrap();
    let dz = WeylElement::d(1, qz, 0);
    let xz = WeylElement::x(1, qz, 0);
    let z = WeylElement::scalar(1, qz, LocalScalar::z()).unwrap();
    let r = chi_via_reduction(&avatar(dz.clone())).unwrap();
    assert_eq!((r.chi, r.provenance, r.dims), (1, Provenance::Transfer, None));
    assert_eq!(chi_via_reduction(&avatar(xz.normal_product(&dz).unwrap().sub(&z).unwrap())).unwrap().chi, 0);
    let unit = LocalScalar::new(UPoly::one(), UPoly::from_i64s(&[1, 1])).unwrap();
    let exp = dz.retag(RingTag::LocalField).unwrap().sub(&WeylElement::scalar(1, RingTag::LocalField, unit).unwrap()).unwrap();
    assert_eq!(chi_via_reduction(&IntegralPresentation::new(PresentedModule::cyclic(exp)).unwrap()).unwrap().chi, 0);
    let free = IntegralPresentation::new(PresentedModule::free(qz, Side::Left, 1, 1)).unwrap();
    assert_eq!(chi_via_reduction(&free), Err(DerhamError::NotMinimalDimension));
}

mod props {
    use super::*;
    use proptest::prelude::*;

    fn arb_poly2() -> impl Strategy<Value = Poly<Rational>> {
        prop::collection::vec(((0u32..4, 0u32..4), -5i64..=5), 0..6).prop_map(|terms| {
            Poly::from_terms(2, terms.into_iter().map(|((a, b), c)| (vec![a, b], Rational::from_integer(c.into()))))
        })
    }

    fn arb_weyl2() -> impl Strategy<Value = WeylElement> {
        prop::collection::vec(((0u32..3, 0u32..3, 0u32..3, 0u32..3), -3i64..=3), 0..5).prop_map(|terms| {
            terms.into_iter().fold(WeylElement::zero(2, QQ), |acc, ((a, b, p, q), k)| {
                let x1 = WeylElement::x(2, QQ, 0);
                let x2 = WeylElement::x(2, QQ, 1);
                let d1 = WeylElement::d(2, QQ, 0);
                let d2 = WeylElement::d(2, QQ, 1);
                let pow = |e: &WeylElement, k: u32| (0..k).fold(WeylElement::one(2, QQ), |acc, _| acc.normal_product(e).unwrap());
                let m = pow(&x1, a).normal_product(&pow(&x2, b)).unwrap();
                let m = m.normal_product(&pow(&d1, p)).unwrap().normal_product(&pow(&d2, q)).unwrap();
                acc.add(&m.scale(&LocalScalar::from_int(k)).unwrap()).unwrap()
            })
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]

        #[test]
        fn d_squared_vanishes_on_polynomial_forms(f in arb_poly2()) {
            let m = PresentedModule::new(
                QQ, Side::Left, 2, 1,
                vec![FreeVector::new(vec![WeylElement::d(2, QQ, 0)]), FreeVector::new(vec![WeylElement::d(2, QQ, 1)])],
            ).unwrap();
            let c = dr_complex(&m).unwrap();
            let dd = c.differential_on_polynomials(1, &c.differential_on_polynomials(0, &[f]));
            prop_assert!(dd.iter().all(Poly::is_zero));
        }

        #[test]
        fn d_squared_vanishes_on_free_representatives(a in arb_weyl2()) {
            let c = dr_complex(&PresentedModule::free(QQ, Side::Left, 2, 1)).unwrap();
            let dd = c.differential(1, &c.differential(0, &[FreeVector::new(vec![a])]));
            prop_assert!(dd.iter().all(FreeVector::is_zero));
        }
    }
}
