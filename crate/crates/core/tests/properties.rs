use basechange::extension_tower::{
    compose_tower, conductor_transport, phi, psi, psi_fn, ExtensionData, LocalFieldData,
    RamificationFiltration,
};
use basechange::iwahori_variety::{
    base_change_point, extended_quotient, pullback_invariant, InvariantLaurentPoly,
    OrbitComponent, Partition, TorusPoint,
};
use basechange::ktheory::{induced_map, CircleMatch, CircleSpace, ProperCircleMap};
use basechange::scalar::complex_pow;
use basechange::tempered_gl1::{
    bc_unramified_quasichar, include_weil, FieldSide, UnramifiedQuasicharacter, WeilDegree,
};
use basechange::{Gaussian, Rational, Scalar};
use num_traits::Zero;
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = Rational> {
    (0i64..10_000, 1i64..60).prop_map(|(n, d)| Rational::from_ratio(n, d))
}

fn gaussian() -> impl Strategy<Value = Gaussian> {
    (-9i64..10, 1i64..5, -9i64..10, 1i64..5)
        .prop_map(|(a, b, c, d)| Gaussian::new(Rational::from_ratio(a, b), Rational::from_ratio(c, d)))
        .prop_filter("nonzero", |z| !z.is_zero())
}

/// Divisor chains `g_0 >= g_1 >= ...` built from successive factors.
fn filtration() -> impl Strategy<Value = RationalFiltration> {
    (1u64..8, prop::collection::vec((1u64..4, 0usize..3), 0..4)).prop_map(|(tame, steps)| {
        let mut orders = Vec::new();
        let mut g = tame;
        for (factor, repeat) in steps.iter().rev() {
            g *= [1, 2, 3, 5][*factor as usize];
            for _ in 0..=*repeat {
                orders.push(g);
            }
        }
        orders.reverse();
        orders.push(tame);
        RationalFiltration(RamificationFiltration::new(orders).unwrap())
    })
}

#[derive(Debug, Clone)]
struct RationalFiltration(RamificationFiltration);

fn base() -> LocalFieldData {
    LocalFieldData::new(5, 5, true).unwrap()
}

proptest! {
    #[test]
    fn phi_inverts_psi(filt in filtration(), x in rational()) {
        let y = psi(&filt.0, &x).unwrap();
        prop_assert_eq!(phi(&filt.0, &y).unwrap(), x.clone());
        prop_assert_eq!(psi(&filt.0, &phi(&filt.0, &x).unwrap()).unwrap(), x);
    }

    #[test]
    fn psi_is_convex_and_integral(filt in filtration(), nu in 0i64..50) {
        prop_assert!(psi_fn::<Rational>(&filt.0).is_convex());
        let y = psi(&filt.0, &Rational::from_int(nu)).unwrap();
        prop_assert!(y.is_integer());
    }

    #[test]
    fn conductor_transport_is_monotone(filt in filtration(), c in 0u64..40) {
        let a = conductor_transport(&filt.0, c).unwrap();
        let b = conductor_transport(&filt.0, c + 1).unwrap();
        prop_assert!(a < b);
    }

    #[test]
    fn towers_multiply(e1 in 1u64..6, f1 in 1u64..4, e2 in 1u64..6, f2 in 1u64..4, e3 in 1u64..4, f3 in 1u64..3) {
        let a = ExtensionData::new(base(), e1, f1, false, false).unwrap();
        let b = ExtensionData::new(a.top(), e2, f2, false, false).unwrap();
        let c = ExtensionData::new(b.top(), e3, f3, false, false).unwrap();
        let ab = compose_tower(&a, &b).unwrap();
        prop_assert_eq!((ab.e(), ab.f()), (e1 * e2, f1 * f2));
        let left = compose_tower(&ab, &c).unwrap();
        let right = compose_tower(&a, &compose_tower(&b, &c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
        prop_assert!(compose_tower(&b, &a).is_err() || a.top() == a.base());
    }

    #[test]
    fn base_change_respects_multisets(
        coords in prop::collection::vec(gaussian(), 1..5),
        rotate in 0usize..5,
        f in 1u32..5,
    ) {
        let n = coords.len();
        let c = OrbitComponent::new(Partition::new(vec![1; n]).unwrap());
        let mut shuffled = coords.clone();
        shuffled.rotate_left(rotate % n);
        let x = TorusPoint::symmetric(coords.clone()).unwrap();
        let y = TorusPoint::symmetric(shuffled).unwrap();
        prop_assert_eq!(&x, &y);
        let bx = base_change_point(&c, &x, f).unwrap();
        let by = base_change_point(&c, &y, f).unwrap();
        prop_assert_eq!(&bx, &by);
        let powered: Vec<Gaussian> = coords.iter().map(|z| complex_pow(z, f.into())).collect();
        prop_assert_eq!(bx, TorusPoint::symmetric(powered).unwrap());
    }

    #[test]
    fn pullback_is_a_ring_homomorphism(
        r in 1usize..3,
        f in 1u32..4,
        a in prop::collection::vec((prop::collection::vec(-2i32..3, 2), -3i64..4), 1..4),
        b in prop::collection::vec((prop::collection::vec(-2i32..3, 2), -3i64..4), 1..4),
    ) {
        let build = |terms: &[(Vec<i32>, i64)]| {
            terms.iter().fold(InvariantLaurentPoly::<Rational>::zero(r), |acc, (e, c)| {
                let e: Vec<i32> = e[..r].to_vec();
                &acc + &InvariantLaurentPoly::orbit_sum(e).scale(&Rational::from_int(*c))
            })
        };
        let (p, q) = (build(&a), build(&b));
        let pull = |x: &InvariantLaurentPoly<Rational>| pullback_invariant(r, f, x).unwrap();
        prop_assert_eq!(pull(&(&p * &q)), &pull(&p) * &pull(&q));
        prop_assert_eq!(pull(&(&p + &q)), &pull(&p) + &pull(&q));
        prop_assert_eq!(pull(&InvariantLaurentPoly::one(r)), InvariantLaurentPoly::one(r));
    }

    #[test]
    fn induced_maps_are_functorial(
        first in prop::collection::vec(prop::option::of((0usize..3, 1u64..5)), 4),
        second in prop::collection::vec(prop::option::of((0usize..2, 1u64..5)), 3),
    ) {
        let space = |prefix: &str, n: usize| {
            CircleSpace::new((0..n).map(|i| format!("{prefix}{i}")).collect()).unwrap()
        };
        let matches = |spec: &[Option<(usize, u64)>]| {
            spec.iter()
                .enumerate()
                .filter_map(|(s, m)| m.map(|(t, degree)| CircleMatch { source: s, target: t, degree }))
                .collect::<Vec<_>>()
        };
        let f = ProperCircleMap::new(space("a", 4), space("b", 3), matches(&first)).unwrap();
        let g = ProperCircleMap::new(space("b", 3), space("c", 2), matches(&second)).unwrap();
        let gf = f.compose(&g).unwrap();
        let (f0, f1) = induced_map(&f).unwrap();
        let (g0, g1) = induced_map(&g).unwrap();
        let (gf0, gf1) = induced_map(&gf).unwrap();
        prop_assert_eq!(f0.matmul(&g0).unwrap(), gf0);
        prop_assert_eq!(f1.matmul(&g1).unwrap(), gf1);
    }

    #[test]
    fn weil_degrees_are_coherent(z in gaussian(), f in 1u64..6, m in -6i64..7) {
        let chi = UnramifiedQuasicharacter::new(z.clone(), FieldSide::F).unwrap();
        let bc = bc_unramified_quasichar(&chi, f).unwrap();
        let lhs = bc.eval(WeilDegree::on_e(m)).unwrap();
        prop_assert_eq!(&lhs, &chi.eval(include_weil(WeilDegree::on_e(m), f).unwrap()).unwrap());
        prop_assert_eq!(lhs, complex_pow(&z, f as i64 * m));
        prop_assert_eq!(bc.is_tempered(), chi.is_tempered());
    }

    #[test]
    fn quasichar_base_change_composes(z in gaussian(), f1 in 1u64..5, f2 in 1u64..5) {
        let chi = UnramifiedQuasicharacter::new(z, FieldSide::F).unwrap();
        let first = bc_unramified_quasichar(&chi, f1).unwrap();
        // view the intermediate field as the new base
        let middle = UnramifiedQuasicharacter::new(first.z().clone(), FieldSide::F).unwrap();
        let twice = bc_unramified_quasichar(&middle, f2).unwrap();
        prop_assert_eq!(twice, bc_unramified_quasichar(&chi, f1 * f2).unwrap());
    }
}

#[test]
fn extended_quotient_components_have_full_dimension() {
    for n in 1..=12 {
        let eq = extended_quotient(n).unwrap();
        for c in eq.components() {
            let total: u32 = c.distinct_parts().iter().map(|&(_, m)| m).sum();
            assert_eq!(c.dimension(), total as usize);
        }
    }
}
