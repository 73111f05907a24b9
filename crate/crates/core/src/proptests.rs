//! Randomized invariants across modules.

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use crate::linalg::{rank_profile, RowVector};
use crate::series::{f_theta, f_theta_product, SeriesContext};
use crate::siegel::{kernel_basis, siegel_solve, IntMatrix};
use crate::{CycNum, GroupRingElem};

fn prime() -> impl Strategy<Value = u64> {
    prop::sample::select(vec![3u64, 5, 7, 11, 13])
}

fn cyc(p: u64) -> impl Strategy<Value = CycNum> {
    prop::collection::vec(-50i64..=50, (p - 1) as usize)
        .prop_map(move |v| CycNum::from_int_coeffs(p, &v.into_iter().map(BigInt::from).collect::<Vec<_>>()).unwrap())
}

fn cyc_pair() -> impl Strategy<Value = (CycNum, CycNum)> {
    prime().prop_flat_map(|p| (cyc(p), cyc(p)))
}

fn theta() -> impl Strategy<Value = GroupRingElem> {
    prop::sample::select(vec![5u64, 7]).prop_flat_map(|p| {
        prop::collection::vec(-2i64..=2, (p - 1) as usize).prop_map(move |c| GroupRingElem::from_coeffs(p, c).unwrap())
    })
}

fn rat_rows(rows: &[Vec<i64>]) -> Vec<RowVector> {
    rows.iter().map(|r| RowVector { entries: r.iter().map(|&x| BigRational::from_integer(x.into())).collect() }).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn kappa_roundtrip((x, _) in cyc_pair()) {
        prop_assert_eq!(CycNum::kappa_inverse(x.p(), &x.kappa()).unwrap(), x);
    }

    #[test]
    fn galois_is_a_ring_map((x, y) in cyc_pair(), d in 1u64..100) {
        let p = x.p();
        let d = d % (p - 1) + 1;
        prop_assert_eq!((&x * &y).galois_unit(d), &x.galois_unit(d) * &y.galois_unit(d));
        prop_assert_eq!((&x + &y).galois_unit(d), &x.galois_unit(d) + &y.galois_unit(d));
    }

    #[test]
    fn trace_is_sum_of_conjugates((x, _) in cyc_pair()) {
        let s = x.nu().into_iter().fold(CycNum::zero(x.p()), |a, b| &a + &b);
        prop_assert_eq!(s.as_rational(), Some(x.trace()));
    }

    #[test]
    fn inverse_multiplies_to_one((x, _) in cyc_pair()) {
        prop_assume!(!x.is_zero());
        prop_assert_eq!(&x * &x.inv().unwrap(), CycNum::one(x.p()));
    }

    #[test]
    fn series_recurrence_matches_product(t in theta(), deg in 1usize..8) {
        let s = SeriesContext::new(t.p()).unwrap();
        prop_assert_eq!(f_theta(&t, deg, &s), f_theta_product(&t, deg, &s));
    }

    #[test]
    fn series_is_multiplicative(a in theta(), b in 0u64..3, deg in 1usize..6) {
        let p = a.p();
        let other = a.translate(b % (p - 1) + 1);
        let s = SeriesContext::new(p).unwrap();
        let lhs = f_theta(&a.add(&other), deg, &s);
        let rhs = f_theta(&a, deg, &s).mul(&f_theta(&other, deg, &s));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn rank_ignores_row_order(
        rows in prop::collection::vec(prop::collection::vec(-3i64..=3, 5), 1..8),
        seed in any::<u64>(),
    ) {
        let mut shuffled = rows.clone();
        let n = shuffled.len();
        for i in (1..n).rev() {
            shuffled.swap(i, (seed as usize).wrapping_mul(i + 7) % (i + 1));
        }
        prop_assert_eq!(rank_profile(&rat_rows(&rows)).d_inf, rank_profile(&rat_rows(&shuffled)).d_inf);
    }

    #[test]
    fn kernel_vectors_are_solutions(
        a in prop::collection::vec(prop::collection::vec(-20i64..=20, 7), 1..4),
    ) {
        let m = IntMatrix::from_i64(&a).unwrap();
        for w in kernel_basis(&m) {
            prop_assert!(m.annihilates(&w));
        }
        let s = siegel_solve(&m).unwrap();
        prop_assert!(m.annihilates(&s.w) && s.w.iter().any(|x| *x != BigInt::from(0)));
        prop_assert!(s.certified_bound.admits(&s.inf_norm));
    }
}
