use cdx_core::ncpoly::{ab_words, cd_words, Alphabet, Letter, NcPolynomial};
use num_bigint::BigInt;
use proptest::prelude::*;

/// A homogeneous polynomial of degree `deg` over `alphabet`.
fn homogeneous(alphabet: Alphabet, deg: usize) -> impl Strategy<Value = NcPolynomial> {
    let words = match alphabet {
        Alphabet::Cd => cd_words(deg),
        Alphabet::Ab => ab_words(deg),
    };
    prop::collection::vec(-20i64..=20, words.len()).prop_map(move |cs| {
        NcPolynomial::from_terms(
            alphabet,
            words.iter().cloned().zip(cs.into_iter().map(BigInt::from)),
        )
        .expect("single-alphabet words")
    })
}

fn cd_poly() -> impl Strategy<Value = NcPolynomial> {
    (0usize..=8).prop_flat_map(|d| homogeneous(Alphabet::Cd, d))
}

fn ab_poly() -> impl Strategy<Value = NcPolynomial> {
    (0usize..=7).prop_flat_map(|d| homogeneous(Alphabet::Ab, d))
}

#[test]
fn cd_word_counts_are_fibonacci() {
    let (mut a, mut b) = (1usize, 1usize);
    for d in 0..=10 {
        assert_eq!(cd_words(d).len(), a, "degree {d}");
        (a, b) = (b, a + b);
    }
}

proptest! {
    #[test]
    fn cd_ab_round_trip(p in cd_poly()) {
        let ab = p.expand_cd_to_ab().unwrap();
        prop_assert_eq!(ab.ab_to_cd().unwrap(), p);
    }

    #[test]
    fn a_plus_b_undoes_a_minus_b(p in ab_poly()) {
        let q = p.substitute_a_minus_b().unwrap().substitute_a_plus_b().unwrap();
        prop_assert_eq!(q, p);
    }

    #[test]
    fn right_letter_distributes(p in cd_poly(), q in cd_poly(), l in prop::sample::select(vec![Letter::C, Letter::D])) {
        let lhs = (&p + &q).multiply_right_letter(l);
        let rhs = p.multiply_right_letter(l).unwrap() + q.multiply_right_letter(l).unwrap();
        prop_assert_eq!(lhs.unwrap(), rhs);
    }

    #[test]
    fn degree_is_additive(p in cd_poly(), q in cd_poly()) {
        let prod = p.try_mul(&q).unwrap();
        match (p.homogeneous_degree().unwrap(), q.homogeneous_degree().unwrap()) {
            (Some(a), Some(b)) => prop_assert_eq!(prod.homogeneous_degree().unwrap(), Some(a + b)),
            _ => prop_assert!(prod.is_zero()),
        }
    }

    #[test]
    fn text_round_trip(p in cd_poly()) {
        let back = NcPolynomial::parse(&p.to_string(), Alphabet::Cd).unwrap();
        prop_assert_eq!(back, p);
    }
}
