//! Property suite: the stated invariants of each module, run against
//! randomized inputs, plus the two exhaustive sweeps that are cheap
//! enough to run on every build (stable cycles to length 16, sliding
//! growth for short period words).

mod common;

use std::collections::HashSet;

use num_bigint::BigInt;
use proptest::prelude::*;

use collatz_core::classify::{self, BSubtype, Principal};
use collatz_core::inverse::{self, CycleVerdict};
use collatz_core::kernel;
use collatz_core::structure::{self, Convention, ParityWord};
use collatz_core::tables;
use collatz_core::{Natural, Rational};

fn nat(v: u128) -> Natural {
    Natural::from(v)
}

/// Nonzero natural of up to 128 bits.
fn wide(hi: u64, lo: u64) -> Natural {
    (Natural::from(hi) << 64) + Natural::from(lo) + Natural::from(1u8)
}

proptest! {
    #[test]
    fn index_additivity(lo: u64, n in 0u64..128, m in 0u64..128) {
        let p = nat(lo as u128 + 1);
        prop_assert_eq!(
            kernel::parity_indicator(&kernel::syracuse_iter(&p, n), m),
            kernel::parity_indicator(&p, n + m)
        );
    }

    #[test]
    fn cumulative_closed_form(hi: u64, lo: u64, n in 1u64..=64) {
        let p = wide(hi, lo);
        let map = kernel::cumulative_affine(&p, n);
        prop_assert_eq!(map.length(), n);
        prop_assert_eq!(map.odd_count(), kernel::imparity_count(&p, n - 1));
        prop_assert_eq!(
            map.apply_integer(&p).unwrap(),
            common::oracle_iterate(&p, n)
        );
    }

    #[test]
    fn generated_closed_form(hi: u64, lo: u64, n in 1u64..=64) {
        let p = wide(hi, lo);
        let map = kernel::generated_affine(&p, n);
        prop_assert_eq!(map.odd_count(), kernel::generated_imparity_count(&p, n));
        let t1 = kernel::syracuse_iter(&p, 1);
        prop_assert_eq!(
            map.apply_integer(&t1).unwrap(),
            common::oracle_iterate(&p, n + 1)
        );
    }

    #[test]
    fn shifted_step_identity(a: u64, b: u64) {
        let a = nat(a as u128 + 1);
        let b = nat(b as u128);
        prop_assert_eq!(
            kernel::shifted_step(&a, &b),
            kernel::syracuse_step(&(&a + &b * Natural::from(2u8)))
        );
    }

    #[test]
    fn unified_step_expression(lo: u64) {
        let p = nat(lo as u128 + 1);
        let i0 = kernel::parity_indicator(&p, 0);
        let exact = Rational::new(
            BigInt::from(3u8).pow(i0 as u32) * BigInt::from(p.clone())
                + BigInt::from(i0),
            BigInt::from(2),
        );
        let effects = kernel::elementary_effects(&p);
        let assembled = effects.principal.to_rational()
            * Rational::from_integer(BigInt::from(p.clone()))
            + effects.secondary.to_rational();
        prop_assert_eq!(&assembled, &exact);
        prop_assert_eq!(
            Rational::from_integer(BigInt::from(kernel::syracuse_step(&p))),
            exact
        );
    }

    #[test]
    fn parity_stability_under_shift(lo: u64, n in 1u64..=32, m in 0u64..=1 << 16) {
        let p = nat(lo as u128 + 1);
        let shifted = &p + (Natural::from(m) << (n + 1));
        for k in 1..=n {
            prop_assert_eq!(
                kernel::parity_indicator(&shifted, k),
                kernel::parity_indicator(&p, k)
            );
        }
    }

    #[test]
    fn shift_image_matches_direct_iteration(lo: u64, n in 1u64..=32, m in 0u64..=1 << 16) {
        let p = nat(lo as u128 + 1);
        let m = Natural::from(m);
        for k in 1..=n + 1 {
            prop_assert_eq!(
                structure::shift_image(&p, n, &m, k).unwrap(),
                common::oracle_iterate(&(&p + (&m << (n + 1))), k)
            );
        }
    }

    #[test]
    fn word_affine_reproduces_iteration(hi: u64, lo: u64, n in 1u64..=64) {
        let p = wide(hi, lo);
        let word = structure::parity_vector(&p, n, Convention::Inclusive);
        let map = structure::word_affine(&word);
        prop_assert_eq!(
            map.apply_integer(&p).unwrap(),
            common::oracle_iterate(&p, n)
        );
    }

    #[test]
    fn isoforms_share_affine_data(lo: u64, n in 1u64..=32, m in 1u64..=1 << 16) {
        let p1 = nat(lo as u128 + 1);
        let p2 = &p1 + (Natural::from(m) << (n + 1));
        prop_assert!(structure::is_isoform(&p1, &p2, n).unwrap());
        prop_assert_eq!(
            kernel::generated_affine(&p1, n),
            kernel::generated_affine(&p2, n)
        );
    }

    #[test]
    fn nearby_generators_are_singular(lo: u64, n in 1u64..=24, d in 1u64..) {
        // Same parity, distinct, closer than the structural period: the
        // generated words of length n must differ.
        let p1 = nat(lo as u128 + 1);
        let d = d % (1 << n);
        let p2 = &p1 + Natural::from(2 * d.max(1));
        prop_assert!(!structure::is_isoform(&p1, &p2, n).unwrap());
        prop_assert_ne!(
            structure::parity_vector(&p1, n, Convention::Generated),
            structure::parity_vector(&p2, n, Convention::Generated)
        );
    }

    #[test]
    fn word_serialization_round_trips(
        bits in proptest::collection::vec(0u8..=1, 1..=64),
        generated: bool,
    ) {
        let word = if generated {
            ParityWord::generated(bits).unwrap()
        } else {
            ParityWord::inclusive(bits).unwrap()
        };
        let parsed: ParityWord = word.to_string().parse().unwrap();
        prop_assert_eq!(&parsed, &word);
        let glyphs = structure::render_chromatic(&word);
        prop_assert_eq!(
            structure::parse_chromatic(&glyphs, word.convention()).unwrap(),
            word
        );
    }

    #[test]
    fn packed_table_matches_big_integer_table(lo: u64, n in 1u64..=10) {
        let first = nat(lo as u128 + 1);
        let from_rows = tables::structural_matrix(
            &tables::build_chromoform(&first, n).unwrap()
        );
        let direct = tables::structural_matrix_direct(&first, n).unwrap();
        prop_assert_eq!(from_rows, direct);
    }

    #[test]
    fn chromoform_rows_pairwise_distinct(lo: u64, n in 1u64..=8) {
        let matrix = tables::build_chromoform(&nat(lo as u128 + 1), n).unwrap();
        let words: HashSet<ParityWord> =
            matrix.rows().iter().map(|row| row.word()).collect();
        prop_assert_eq!(words.len(), matrix.row_count());
    }

    #[test]
    fn chromologue_rows_share_one_word(lo: u64, n in 1u64..=16, q in 1u64..=32) {
        let h = tables::build_chromologue(&nat(lo as u128 + 1), n, q);
        let word = h.characteristic_word();
        for row in h.rows() {
            prop_assert_eq!(&row.word(), &word);
        }
    }

    #[test]
    fn alpha_is_exact(n in 1u64..=3000) {
        let alpha = classify::reversal_coefficient(n);
        let low = Natural::from(3u8).pow(alpha as u32);
        prop_assert!(low < (Natural::from(1u8) << n));
        prop_assert!(&low * Natural::from(3u8) > (Natural::from(1u8) << n));
    }

    #[test]
    fn counts_partition_the_word_space(half in 1u64..=128) {
        let order = 2 * half;
        let counts = classify::count_types(order).unwrap();
        prop_assert_eq!(&counts.a + &counts.b, Natural::from(1u8) << order);
        prop_assert_eq!(&counts.r_a + &counts.r_b, Rational::from_integer(1.into()));
    }

    #[test]
    fn word_and_sequence_classification_agree(lo: u32, n in 1u64..=24) {
        let p = nat(lo as u128 + 1);
        let by_sequence = classify::classify_sequence(&p, n);
        let word = structure::parity_vector(&p, n, Convention::Generated);
        let (by_word, reversal) = classify::classify_word(&word).unwrap();
        prop_assert_eq!(by_sequence.principal, by_word);
        prop_assert_eq!(by_word == Principal::B, reversal.is_some());
    }

    #[test]
    fn decreasing_chromologues_stay_decreasing(lo: u32, n in 1u64..=16, q in 1u64..=64) {
        let h = tables::build_chromologue(&nat(lo as u128 + 1), n, q);
        let classes: Vec<_> = h
            .rows()
            .iter()
            .map(classify::classify_generated)
            .collect();
        if classes[0].b_subtype == Some(BSubtype::BMinus) {
            for class in &classes {
                prop_assert_eq!(class.b_subtype, Some(BSubtype::BMinus));
            }
        }
    }

    #[test]
    fn chromologue_counts_partition(n in 1u64..=12) {
        let counts = classify::polychromologue_counts(n);
        prop_assert_eq!(&counts.a + &counts.b, Natural::from(1u8) << n);
    }

    #[test]
    fn inverse_residue_is_generator_mod_2_to_l(hi: u64, lo: u64, len in 1u64..=64) {
        let p = wide(hi, lo);
        let bits = common::oracle_inclusive_bits(&p, len as usize);
        let word = ParityWord::inclusive(bits).unwrap();
        let solution = inverse::generator_for_word(&word).unwrap();
        prop_assert_eq!(solution.log2_modulus(), len);
        prop_assert_eq!(
            solution.residue(),
            &(&p % (Natural::from(1u8) << len))
        );
    }
}

/// Corrected sliding invariants (the ledgered deviation from the naive
/// "strictly increasing" claim): growth is non-decreasing, never stalls
/// twice in a row, grows over six periods, and when the fixed point is
/// a negative integer -v the minima are exactly 2^{Lk} - v.
#[test]
fn sliding_growth_for_short_period_words() {
    for len in 1usize..=8 {
        for mask in 0u64..(1 << len) {
            let bits: Vec<u8> = (0..len).map(|i| ((mask >> i) & 1) as u8).collect();
            let word = ParityWord::inclusive(bits).unwrap();
            let analysis = inverse::cycle_fixed_point(&word).unwrap();
            if analysis.verdict != CycleVerdict::NoPositiveCycle {
                continue;
            }
            let rows = inverse::minimal_generator_growth(&word, None, 6).unwrap();
            for pair in rows.windows(2) {
                assert!(
                    pair[0].minimal <= pair[1].minimal,
                    "growth went down: {word}"
                );
            }
            for triple in rows.windows(3) {
                assert!(
                    triple[0].minimal < triple[2].minimal,
                    "growth stalled twice: {word}"
                );
            }
            assert!(
                rows[5].minimal > rows[0].minimal,
                "no growth over six periods: {word}"
            );

            if let Some(fp) = &analysis.fixed_point {
                assert!(!fp.is_integer() || fp.numer() <= &BigInt::from(0));
                if fp.is_integer() {
                    let v: Natural = (-fp.numer()).to_biguint().unwrap();
                    for row in &rows {
                        let modulus = Natural::from(1u8) << row.length;
                        if modulus > v {
                            assert_eq!(
                                row.minimal,
                                &modulus - &v,
                                "negative fixed point pattern: {word}"
                            );
                        }
                    }
                }
            }
        }
    }
}

/// Exhaustive sweep to length 16: the only period words whose affine
/// fixed point is realized by a positive integer trajectory are the
/// repetitions of (1,0) and (0,1), both describing the 1 <-> 2 cycle.
#[test]
fn stable_cycles_up_to_length_16() {
    for len in 1usize..=16 {
        for mask in 0u64..(1 << len) {
            let bits: Vec<u8> = (0..len).map(|i| ((mask >> i) & 1) as u8).collect();
            let alternating = len % 2 == 0 && bits.windows(2).all(|w| w[0] != w[1]);
            let word = ParityWord::inclusive(bits).unwrap();
            let analysis = inverse::cycle_fixed_point(&word).unwrap();
            assert_eq!(
                analysis.verdict == CycleVerdict::StableIntegerCycle,
                alternating,
                "unexpected verdict for {word}"
            );
        }
    }
}
