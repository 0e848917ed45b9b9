//! Property tests for the graded-ring laws on `C×C` and the P¹-bundle,
//! the projection formula, and the splitting-principle consistency of the
//! Chern-character arithmetic.

use chow_grr::{
    c2e_closed_form_in, chern_s_in, grr_c2e_in, ChowCxC, ChowP, CxcRing, PRing, Rat, Scalar,
};
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

fn rat(n: i64, d: i64) -> Rat {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

#[derive(Debug, Clone)]
struct Setup {
    ring: CxcRing<Rat>,
    elements: Vec<ChowCxC<Rat>>,
}

/// A numeric ring at random small (d, g) plus random elements with small
/// rational coefficients.
fn setup(n_elements: usize) -> impl Strategy<Value = Setup> {
    (1i64..=6, 0i64..=4).prop_flat_map(move |(d, g)| {
        let coeff = (-12i64..=12, 1i64..=4).prop_map(|(n, den)| rat(n, den));
        prop::collection::vec(prop::collection::vec(coeff, 5), n_elements).prop_map(
            move |vecs| {
                let ring = CxcRing::numeric(d, g);
                let elements = vecs
                    .into_iter()
                    .map(|v| {
                        let mut acc = ring.scale(&v[0], &ring.one());
                        acc = ring.add(&acc, &ring.scale(&v[1], &ring.f1()));
                        acc = ring.add(&acc, &ring.scale(&v[2], &ring.f2()));
                        acc = ring.add(&acc, &ring.scale(&v[3], &ring.delta()));
                        ring.add(&acc, &ring.scale(&v[4], &ring.pt()))
                    })
                    .collect();
                Setup { ring, elements }
            },
        )
    })
}

/// Strip the degree-0 part so products measure pure positive degree.
fn positive_part(ring: &CxcRing<Rat>, x: &ChowCxC<Rat>) -> ChowCxC<Rat> {
    ring.sub(x, &ring.scale(x.scalar_part(), &ring.one()))
}

proptest! {
    /// Commutativity, associativity, distributivity on C×C.
    #[test]
    fn prop_cxc_ring_laws(s in setup(3)) {
        let r = &s.ring;
        let (a, b, c) = (&s.elements[0], &s.elements[1], &s.elements[2]);
        prop_assert_eq!(r.mul(a, b), r.mul(b, a));
        prop_assert_eq!(r.mul(&r.mul(a, b), c), r.mul(a, &r.mul(b, c)));
        prop_assert_eq!(
            r.mul(a, &r.add(b, c)),
            r.add(&r.mul(a, b), &r.mul(a, c))
        );
        prop_assert_eq!(r.mul(a, &r.one()), a.clone());
    }

    /// Any product of three positive-degree classes vanishes on C×C
    /// (dimension 2).
    #[test]
    fn prop_cxc_truncation(s in setup(3)) {
        let r = &s.ring;
        let xs: Vec<_> = s.elements.iter().map(|x| positive_part(r, x)).collect();
        let triple = r.mul(&r.mul(&xs[0], &xs[1]), &xs[2]);
        prop_assert!(triple.is_zero());
    }

    /// P-bundle ring laws and dimension-3 truncation: any product of four
    /// positive-degree classes vanishes.
    #[test]
    fn prop_pbundle_ring_laws_and_truncation(s in setup(4), etas in prop::collection::vec(-6i64..=6, 4)) {
        let pring = PRing::new(s.ring.clone());
        let r = &s.ring;
        let lift = |i: usize| ChowP {
            base: s.elements[i].clone(),
            eta: r.scale(&Rat::from_i64(etas[i]), &r.one()),
        };
        let (a, b, c) = (lift(0), lift(1), lift(2));
        prop_assert_eq!(pring.mul(&a, &b), pring.mul(&b, &a));
        prop_assert_eq!(
            pring.mul(&pring.mul(&a, &b), &c),
            pring.mul(&a, &pring.mul(&b, &c))
        );
        prop_assert_eq!(
            pring.mul(&a, &pring.add(&b, &c)),
            pring.add(&pring.mul(&a, &b), &pring.mul(&a, &c))
        );
        // Positive-degree lifts: kill the scalar part of the base.
        let pos = |i: usize| ChowP {
            base: positive_part(r, &s.elements[i]),
            eta: r.scale(&Rat::from_i64(etas[i]), &r.one()),
        };
        let quad = pring.mul(
            &pring.mul(&pos(0), &pos(1)),
            &pring.mul(&pos(2), &pos(3)),
        );
        prop_assert!(quad.is_zero());
    }

    /// Projection formula: π_*(π*(a)·(x + yη)) = a·y.
    #[test]
    fn prop_projection_formula(s in setup(3), eta_scalar in -6i64..=6) {
        let pring = PRing::new(s.ring.clone());
        let r = &s.ring;
        let a = &s.elements[0];
        let p = ChowP {
            base: s.elements[1].clone(),
            eta: r.add(
                &s.elements[2],
                &r.scale(&Rat::from_i64(eta_scalar), &r.one()),
            ),
        };
        let lhs = pring.pushforward(&pring.mul(&pring.pullback(a), &p));
        let rhs = r.mul(a, &p.eta);
        prop_assert_eq!(lhs, rhs);
    }

    /// Splitting principle for rank-2 sums of line bundles: with Chern
    /// roots x, y (random degree-1 classes), c1 = x + y, c2 = xy, and
    /// ch2 = (x² + y²)/2 must equal (c1² − 2c2)/2.
    #[test]
    fn prop_splitting_principle_ch2(s in setup(2)) {
        let r = &s.ring;
        let x = positive_part(r, &s.elements[0]).degree1_part();
        let y = positive_part(r, &s.elements[1]).degree1_part();
        let c1 = r.add(&x, &y);
        let c2 = r.mul(&x, &y);
        let ch2_from_roots = r.scale_div(
            &r.add(&r.mul(&x, &x), &r.mul(&y, &y)),
            2,
        );
        let ch2_from_chern = r.scale_div(
            &r.sub(&r.mul(&c1, &c1), &r.scale(&Rat::from_i64(2), &c2)),
            2,
        );
        prop_assert_eq!(ch2_from_roots, ch2_from_chern);
    }

    /// The rank-2 bundle behind the P¹-bundle satisfies the same
    /// consistency: 2·ch2(S) = c1(S)² − 2c2(S) stays integral times pt.
    #[test]
    fn prop_chern_s_ch2_integrality(d in 1i64..=8, g in 0i64..=4) {
        let r = CxcRing::numeric(d, g);
        let chern = chern_s_in(&r);
        let c1 = chern.component(1);
        let c2 = chern.component(2);
        let twice_ch2 = r.sub(&r.mul(c1, c1), &r.scale(&Rat::from_i64(2), c2));
        prop_assert!(twice_ch2.is_integral());
        prop_assert!(twice_ch2.degree1_part().is_zero());
    }

    /// Numeric GRR at every small (d, g) matches the closed-form class.
    #[test]
    fn prop_numeric_grr_matches_closed_form(d in 1i64..=10, g in 0i64..=5) {
        let ring = CxcRing::numeric(d, g);
        let got = grr_c2e_in(&PRing::new(ring.clone()));
        prop_assert_eq!(got, c2e_closed_form_in(&ring));
    }
}
