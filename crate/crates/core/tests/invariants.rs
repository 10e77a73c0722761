use proptest::prelude::*;

use dser_core::dser::{Generator, Word};
use dser_core::ring::{Ring, Scalar};
use dser_core::sample;

const RINGS: [&str; 4] = ["QQ", "GF(10007)[t]", "QQ[t,u]", "QQ[s,t][1/s]"];

fn ring(k: usize) -> Ring {
    Ring::parse(RINGS[k % RINGS.len()]).unwrap()
}

fn three(ring: &Ring, seed: u64) -> (Scalar, Scalar, Scalar) {
    let mut rng = sample::case_rng(seed, "invariants", 0);
    (sample::scalar(&mut rng, ring), sample::scalar(&mut rng, ring), sample::scalar(&mut rng, ring))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(k in 0usize..4, seed in any::<u64>()) {
        let r = ring(k);
        let (a, b, c) = three(&r, seed);
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a - &a, r.zero());
        prop_assert_eq!(&a * &r.one(), a.clone());
        prop_assert_eq!(&a.half() + &a.half(), a);
    }

    #[test]
    fn reduction_mod_p_is_a_homomorphism(seed in any::<u64>()) {
        let q = Ring::parse("QQ[t]").unwrap();
        let fp = Ring::parse("GF(10007)[t]").unwrap();
        let (a, b, _) = three(&q, seed);
        let (ra, rb) = (a.to_ring(&fp).unwrap(), b.to_ring(&fp).unwrap());
        prop_assert_eq!((&a + &b).to_ring(&fp).unwrap(), &ra + &rb);
        prop_assert_eq!((&a * &b).to_ring(&fp).unwrap(), &ra * &rb);
    }

    #[test]
    fn substitution_is_a_homomorphism(seed in any::<u64>(), v in -20i64..20) {
        let r = Ring::parse("QQ[t,u]").unwrap();
        let (a, b, _) = three(&r, seed);
        let val = r.int(v);
        let at = |x: &Scalar| x.substitute_var("t", &val).unwrap();
        prop_assert_eq!(at(&(&a + &b)), &at(&a) + &at(&b));
        prop_assert_eq!(at(&(&a * &b)), &at(&a) * &at(&b));
    }

    #[test]
    fn s_normalize_is_canonical(seed in any::<u64>(), e in 0u32..4) {
        let r = Ring::parse("QQ[s,t][1/s]").unwrap();
        let (a, _, _) = three(&r, seed);
        let s = r.s().unwrap();
        let scaled = &a * &s.pow(e);
        let (canon, order) = scaled.s_normalize();
        prop_assert_eq!(&canon, &scaled);
        match (order, a.s_order()) {
            (None, None) => prop_assert!(a.is_zero()),
            (Some(o), Some(base)) => prop_assert_eq!(o, base + e as i64),
            _ => prop_assert!(false, "order mismatch"),
        }
        let (again, order2) = canon.s_normalize();
        prop_assert_eq!(again, canon);
        prop_assert_eq!(order2, order);
    }

    #[test]
    fn dual_star_is_additive(k in 0usize..4, seed in any::<u64>()) {
        let r = ring(k);
        let mut rng = sample::case_rng(seed, "dual-star", 0);
        let sp = sample::space(&mut rng, &r, 3, 3, 1);
        let dir = sample::direction(&mut rng);
        let (h1, h2) = (sample::hom(&mut rng, &sp, dir), sample::hom(&mut rng, &sp, dir));
        let sum = h1.add(&h2).unwrap();
        prop_assert_eq!(sp.dual_star(&sum), sp.dual_star(&h1).add(&sp.dual_star(&h2)));
    }

    #[test]
    fn pieces_sum_to_the_hom(k in 0usize..4, seed in any::<u64>()) {
        let r = ring(k);
        let mut rng = sample::case_rng(seed, "pieces", 0);
        let sp = sample::space(&mut rng, &r, 3, 3, 1);
        let dir = sample::direction(&mut rng);
        let h = sample::hom(&mut rng, &sp, dir);
        let mut by_entry = h.scale(&r.zero());
        let mut by_row = by_entry.clone();
        for i in 1..=sp.m() {
            by_row = by_row.add(&h.row_piece(i)).unwrap();
            for j in 1..=sp.n() {
                by_entry = by_entry.add(&h.piece(i, j)).unwrap();
            }
        }
        prop_assert_eq!(by_entry, h.clone());
        prop_assert_eq!(by_row, h);
    }

    #[test]
    fn full_generators_are_orthogonal_and_invertible(k in 0usize..4, seed in any::<u64>()) {
        let r = ring(k);
        let mut rng = sample::case_rng(seed, "orthogonal", 0);
        let sp = sample::space(&mut rng, &r, 3, 3, 1);
        let dir = sample::direction(&mut rng);
        let h = sample::hom(&mut rng, &sp, dir);
        let g = Generator::Full(h);
        let e = g.matrix(&sp).unwrap();
        prop_assert_eq!(e.transpose().mul(sp.psi()).mul(&e), sp.psi().clone());
        let round = Word::single(&sp, g.clone()).concat(&Word::single(&sp, g.inverse(&sp))).unwrap();
        prop_assert!(round.matrix().unwrap().is_identity());
    }
}
