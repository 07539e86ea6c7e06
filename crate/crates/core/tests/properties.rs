use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;

use polylog::bloch::{five_term_element, wedge_map, BlochCombo, WedgeElement};
use polylog::hopf::{
    is_lyndon, lyndon_count, lyndon_words, standard_factorization, LieElement, TensorSeries,
};
use polylog::itint::shuffle;
use polylog::monodromy::{generator_matrix, monodromy_exact, ExactMatrix};
use polylog::polylog::d2;
use polylog::regulator::{tame_product, tame_symbol, RationalFunction, ValuationPoint};
use polylog::{Complex, Letter, MonodromyWord, PrecisionConfig};

fn q(a: i64, b: i64) -> BigRational {
    BigRational::new(BigInt::from(a), BigInt::from(b))
}

fn rational() -> impl Strategy<Value = BigRational> {
    (-40i64..=40, 1i64..=40).prop_map(|(a, b)| q(a, b)).prop_filter("not 0 or 1", |x| !x.is_zero() && !x.is_one())
}

fn letter() -> impl Strategy<Value = Letter> {
    prop::sample::select(Letter::ALL.to_vec())
}

fn word(max: usize) -> impl Strategy<Value = MonodromyWord> {
    prop::collection::vec(letter(), 0..=max).prop_map(MonodromyWord::new)
}

fn split_function() -> impl Strategy<Value = RationalFunction> {
    let factor = (-3i64..=3, prop::sample::select(vec![-2i32, -1, 1, 2]));
    ((1i64..=6, 1i64..=4, any::<bool>()), prop::collection::vec(factor, 1..=3)).prop_map(|((a, b, neg), fs)| {
        let c = q(if neg { -a } else { a }, b);
        let fs: Vec<(BigRational, i32)> = fs.into_iter().map(|(r, e)| (q(r, 1), e)).collect();
        RationalFunction::from_factors(c, &fs)
    })
}

fn point() -> impl Strategy<Value = ValuationPoint> {
    prop_oneof![
        1 => Just(ValuationPoint::Infinity),
        6 => (-3i64..=3).prop_map(|a| ValuationPoint::Finite(q(a, 1))),
    ]
}

/// Series with zero constant term and small rational coefficients.
fn augmentation_series(m: usize) -> impl Strategy<Value = TensorSeries<BigRational>> {
    let len = (1usize << (m + 1)) - 1;
    prop::collection::vec((-3i64..=3, 1i64..=3), len).prop_map(move |v| {
        let mut c: Vec<BigRational> = v.into_iter().map(|(a, b)| q(a, b)).collect();
        c[0] = BigRational::zero();
        TensorSeries::from_coeffs(m, c)
    })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, ..ProptestConfig::default() })]

    #[test]
    fn word_times_inverse_is_identity(w in word(6), n in 1usize..=6) {
        let m = monodromy_exact(&w, n).mul(&monodromy_exact(&w.inverse(), n));
        prop_assert_eq!(m, ExactMatrix::identity(n));
    }

    #[test]
    fn monodromy_is_multiplicative(a in word(4), b in word(4), n in 1usize..=5) {
        let lhs = monodromy_exact(&a.concat(&b), n);
        prop_assert_eq!(lhs, monodromy_exact(&a, n).mul(&monodromy_exact(&b, n)));
    }

    #[test]
    fn monodromy_log_exp_round_trip(w in word(5), n in 1usize..=6) {
        let m = monodromy_exact(&w, n);
        prop_assert!(m.is_unipotent());
        prop_assert_eq!(m.log_unipotent().exp_nilpotent(), m);
    }

    #[test]
    fn series_exp_log_round_trip(x in augmentation_series(4)) {
        let back = x.series_exp().unwrap().series_log().unwrap();
        prop_assert_eq!(back, x);
    }

    #[test]
    fn exp_of_lie_element_is_grouplike(
        c in prop::collection::vec((-3i64..=3, 1i64..=3), 4),
    ) {
        let m = 4;
        let x0 = LieElement::generator(0, m);
        let x1 = LieElement::generator(1, m);
        let b = x0.bracket(&x1);
        let bb = b.bracket(&x1);
        let parts = [&x0, &x1, &b, &bb];
        let mut s = TensorSeries::zero(m, &BigRational::zero());
        for (e, (a, d)) in parts.iter().zip(c) {
            s = s.add(&e.series().scale(&q(a, d))).unwrap();
        }
        prop_assert_eq!(s.is_primitive(), 0.0);
        prop_assert_eq!(s.series_exp().unwrap().is_grouplike(), 0.0);
    }

    #[test]
    fn shuffle_multiplicities_sum_to_binomial(u in prop::collection::vec(0u8..3, 0..=4), v in prop::collection::vec(0u8..3, 0..=4)) {
        let total: u64 = shuffle(&u, &v).iter().map(|(_, m)| m).sum();
        let n = u.len() + v.len();
        let binom = (0..u.len()).fold(1u64, |acc, i| acc * (n - i) as u64 / (i + 1) as u64);
        prop_assert_eq!(total, binom);
        for (w, _) in shuffle(&u, &v) {
            prop_assert_eq!(w.len(), n);
        }
    }

    #[test]
    fn tame_symbol_is_bimultiplicative(f1 in split_function(), f2 in split_function(), g in split_function(), p in point()) {
        let lhs = tame_symbol(&f1.mul(&f2), &g, &p).unwrap();
        let rhs = tame_symbol(&f1, &g, &p).unwrap() * tame_symbol(&f2, &g, &p).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn tame_symbol_is_skew(f in split_function(), g in split_function(), p in point()) {
        let a = tame_symbol(&f, &g, &p).unwrap();
        let b = tame_symbol(&g, &f, &p).unwrap();
        prop_assert!((a * b).is_one());
        // {f, -f} = 1
        let minus_f = f.mul(&RationalFunction::constant(q(-1, 1)));
        prop_assert!(tame_symbol(&f, &minus_f, &p).unwrap().is_one());
    }

    #[test]
    fn weil_reciprocity(f in split_function(), g in split_function()) {
        prop_assert!(tame_product(&f, &g).unwrap().is_one());
    }

    #[test]
    fn wedge_is_bilinear_and_alternating(x in rational(), y in rational(), z in rational()) {
        let lhs = WedgeElement::wedge(&(&x * &y), &z);
        prop_assert_eq!(lhs, WedgeElement::wedge(&x, &z).add(&WedgeElement::wedge(&y, &z)));
        prop_assert!(WedgeElement::wedge(&x, &x).add(&WedgeElement::wedge(&x, &x)).is_zero());
        prop_assert!(WedgeElement::wedge(&x, &y).add(&WedgeElement::wedge(&y, &x)).is_zero());
    }

    #[test]
    fn five_term_wedge_is_two_torsion(x in rational(), y in rational()) {
        if let Ok(e) = five_term_element(&x, &y) {
            let w = wedge_map(&e);
            prop_assert!(w.scale(2).is_zero());
            prop_assert_eq!(w, WedgeElement::wedge(&q(-1, 1), &(&x / &y)));
        }
    }

    #[test]
    fn combo_text_round_trip(terms in prop::collection::vec((-5i64..=5, rational()), 1..6)) {
        let mut c = BlochCombo::new();
        for (k, x) in terms {
            if k != 0 {
                c.push(k, x).unwrap();
            }
        }
        let back = BlochCombo::parse(&c.to_string()).unwrap();
        prop_assert_eq!(back.normalized(), c.normalized());
    }

    #[test]
    fn rational_function_display_round_trip(f in split_function()) {
        prop_assert_eq!(RationalFunction::parse(&f.to_string()).unwrap(), f);
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 12, ..ProptestConfig::default() })]

    #[test]
    fn d2_symmetries(re in -3.0f64..3.0, im in 0.05f64..3.0) {
        let prec = PrecisionConfig::new(128, 1e-25).unwrap();
        let bits = prec.bits();
        let z = Complex::from_f64(re, im, bits);
        let v = d2(&z, &prec).unwrap();
        let conj = d2(&z.conj(), &prec).unwrap();
        let inv = d2(&z.recip(), &prec).unwrap();
        let refl = d2(&(&Complex::one(bits) - &z), &prec).unwrap();
        for w in [conj, inv, refl] {
            prop_assert!((&w + &v).abs().to_f64() < 1e-25);
        }
    }
}

#[test]
fn lyndon_words_are_counted_by_necklace_formula() {
    for n in 1..=10 {
        let ws: Vec<Vec<u8>> = lyndon_words(n).into_iter().filter(|w| w.len() == n).collect();
        assert_eq!(ws.len(), lyndon_count(n), "n = {n}");
        for w in &ws {
            assert!(is_lyndon(w));
            if n > 1 {
                let (u, v) = standard_factorization(w).unwrap();
                assert!(is_lyndon(u) && is_lyndon(v));
                assert_eq!([u, v].concat(), *w);
            }
        }
    }
}

#[test]
fn generators_are_unipotent() {
    for n in 1..=8 {
        for l in Letter::ALL {
            let g = generator_matrix(l, n);
            assert!(g.is_unipotent());
            assert_eq!(g.log_unipotent().exp_nilpotent(), g);
        }
    }
}
