//! Randomized invariants across modules.

use proptest::prelude::*;

use weakdeg::gf::PrimeField;
use weakdeg::hilbert::{hilbert_function, PointSet};
use weakdeg::immunity::{check_witness, immunity};
use weakdeg::linalg::Matrix;
use weakdeg::ring::{binomial_sum, ideal_member, BooleanFunction, MultilinearPoly};
use weakdeg::symmetric::{coeffs_from_values, symmetric_immunity, values_from_coeffs, SymmetricFn};

fn prime() -> impl Strategy<Value = u64> {
    prop::sample::select(vec![2u64, 3, 5, 7])
}

fn boolean(max_n: usize) -> impl Strategy<Value = BooleanFunction> {
    (1..=max_n).prop_flat_map(|n| {
        prop::collection::vec(any::<bool>(), 1 << n)
            .prop_map(move |bits| BooleanFunction::from_bits(n, &bits).unwrap())
    })
}

proptest! {
    #[test]
    fn weight_transforms_invert(p in prime(), raw in prop::collection::vec(0u32..1000, 1..40)) {
        let v: Vec<u32> = raw.iter().map(|&x| x % p as u32).collect();
        let c = coeffs_from_values(&v, p).unwrap();
        prop_assert_eq!(values_from_coeffs(&c, p).unwrap(), v.clone());
        prop_assert_eq!(coeffs_from_values(&values_from_coeffs(&v, p).unwrap(), p).unwrap(), v);
    }

    #[test]
    fn bitpacked_rank_matches_generic(rows in 1usize..20, cols in 1usize..150, seed in any::<u64>()) {
        let field = PrimeField::new(2).unwrap();
        let mut state = seed | 1;
        let data: Vec<u32> = (0..rows * cols)
            .map(|_| {
                state ^= state << 13;
                state ^= state >> 7;
                state ^= state << 17;
                (state & 1) as u32
            })
            .collect();
        let m = Matrix::new(&field, rows, cols, data).unwrap();
        prop_assert_eq!(m.rank_bitpacked(), m.rank_generic());
        prop_assert_eq!(m.rank(), m.transpose().rank());
    }

    #[test]
    fn interpolation_round_trip(p in prime(), n in 0usize..7, seed in any::<u64>()) {
        let field = PrimeField::new(p).unwrap();
        let values: Vec<u32> = (0..1u64 << n)
            .map(|x| (seed.wrapping_mul(x * 2 + 1).rotate_left(x as u32 % 64) % p) as u32)
            .collect();
        let g = MultilinearPoly::from_values(n, &field, &values).unwrap();
        prop_assert_eq!(g.truth_values(), values.clone());
        for x in 0..1u32 << n {
            prop_assert_eq!(g.eval_index(x), values[x as usize]);
        }
    }

    #[test]
    fn restriction_commutes_with_evaluation(f in boolean(6), fix in any::<u32>(), bits in any::<u32>()) {
        let n = f.n();
        let field = PrimeField::new(3).unwrap();
        let g = f.indicator_poly(&field);
        let assignment: Vec<(usize, bool)> =
            (0..n).filter(|i| fix >> i & 1 == 1).map(|i| (i, bits >> i & 1 == 1)).collect();
        let fixed_mask: u32 = assignment.iter().map(|&(i, _)| 1u32 << i).sum();
        let fixed_bits: u32 = assignment.iter().filter(|a| a.1).map(|&(i, _)| 1u32 << i).sum();
        let gr = g.restrict(&assignment).unwrap();
        let fr = f.restrict(&assignment).unwrap();
        let free: Vec<usize> = (0..n).filter(|i| fixed_mask >> i & 1 == 0).collect();
        for y in 0..1u32 << free.len() {
            let x = free
                .iter()
                .enumerate()
                .fold(fixed_bits, |acc, (k, &i)| acc | ((y >> k & 1) << i));
            prop_assert_eq!(gr.eval_index(x), g.eval_index(x));
            prop_assert_eq!(fr.get(y), f.get(x));
        }
    }

    #[test]
    fn hilbert_function_is_monotone(f in boolean(6), p in prime(), extra in any::<u64>()) {
        let n = f.n();
        let s = PointSet::zeros_of(&f);
        let t = PointSet::new(n, s.points().iter().copied().chain((0..1u32 << n).filter(|x| extra >> x & 1 == 1))).unwrap();
        let mut last = 0;
        for m in 0..=n {
            let h = hilbert_function(&s, m, p).unwrap();
            prop_assert!(h >= last);
            prop_assert!(h as u64 <= binomial_sum(n, m).min(s.len() as u64));
            prop_assert!(h <= hilbert_function(&t, m, p).unwrap());
            last = h;
        }
        prop_assert_eq!(last, s.len());
    }

    #[test]
    fn immunity_is_first_hilbert_deficit(f in boolean(6), p in prime()) {
        let r = immunity(&f, p).unwrap();
        let zeros = PointSet::zeros_of(&f);
        let deficit = (0..=f.n()).find(|&m| (hilbert_function(&zeros, m, p).unwrap() as u64) < binomial_sum(f.n(), m));
        prop_assert_eq!(r.degree, deficit);
        if let (Some(d), Some(g)) = (r.degree, r.witness.as_ref()) {
            prop_assert!(check_witness(g, &f, d).unwrap());
            // f itself lies in <f>, so its degree bounds the immunity
            let h = f.indicator_poly(&PrimeField::new(p).unwrap());
            prop_assert!(ideal_member(&h, &f).unwrap());
            if let Some(hd) = h.degree() {
                prop_assert!(d <= hd);
            }
        }
    }

    #[test]
    fn symmetric_path_matches_general(p in prime(), values in prop::collection::vec(0i64..7, 2..10)) {
        let s = SymmetricFn::from_values(&values, p).unwrap();
        prop_assume!(!s.is_zero());
        let general = immunity(&s.to_boolean().unwrap(), p).unwrap();
        let fast = symmetric_immunity(&s).unwrap();
        prop_assert_eq!(fast.degree, general.degree);
        prop_assert!(fast.checked);
    }
}
