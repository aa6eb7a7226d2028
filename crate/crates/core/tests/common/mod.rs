//! Oracles for the integration suites: small reimplementations of the
//! arithmetic under test, written independently of the library so that
//! agreement means something. Nothing here calls into collatz-core.

#![allow(dead_code)]

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn oracle_step(n: &BigUint) -> BigUint {
    if n.bit(0) {
        (n * 3u8 + 1u8) >> 1
    } else {
        n >> 1
    }
}

pub fn oracle_iterate(p: &BigUint, k: u64) -> BigUint {
    let mut x = p.clone();
    for _ in 0..k {
        x = oracle_step(&x);
    }
    x
}

/// Bits i_0 .. i_{len-1} of the inclusive parity word.
pub fn oracle_inclusive_bits(p: &BigUint, len: usize) -> Vec<u8> {
    let mut x = p.clone();
    let mut bits = Vec::with_capacity(len);
    for _ in 0..len {
        bits.push(u8::from(x.bit(0)));
        x = oracle_step(&x);
    }
    bits
}

/// Bits i_1 .. i_n of the generated parity word.
pub fn oracle_generated_bits(p: &BigUint, n: usize) -> Vec<u8> {
    oracle_inclusive_bits(&oracle_step(p), n)
}

/// Number of words of length `order` with 3^ones > 2^order, counted by
/// walking the whole word space. Fits comfortably in machine words for
/// order <= 24 (3^24 < 2^39).
pub fn enumeration_a_count(order: u32) -> u64 {
    assert!(order <= 24);
    let pow3: Vec<u128> = (0..=order)
        .scan(1u128, |acc, _| {
            let current = *acc;
            *acc *= 3;
            Some(current)
        })
        .collect();
    let threshold = 1u128 << order;
    let mut count = 0u64;
    for word in 0u64..(1u64 << order) {
        if pow3[word.count_ones() as usize] > threshold {
            count += 1;
        }
    }
    count
}

/// Smallest generator realizing an inclusive word, found by scanning
/// candidates. Only sensible for short words; values stay far below
/// u128 range since candidates are at most 2^len.
#[allow(clippy::manual_div_ceil)]
pub fn brute_minimal_generator(bits: &[u8]) -> u128 {
    'candidate: for g in 1..=(1u128 << bits.len()) {
        let mut x = g;
        for &b in bits {
            if (x & 1) as u8 != b {
                continue 'candidate;
            }
            x = if x & 1 == 1 { (3 * x + 1) / 2 } else { x / 2 };
        }
        return g;
    }
    unreachable!("every word of length L is realized by some g <= 2^L");
}

pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform nonzero BigUint below 2^bits.
pub fn random_natural(rng: &mut ChaCha8Rng, bits: u32) -> BigUint {
    loop {
        let mut value = BigUint::ZERO;
        let mut remaining = bits;
        while remaining > 0 {
            let take = remaining.min(64);
            let word: u64 = rng.gen();
            value = (value << take) | BigUint::from(word >> (64 - take));
            remaining -= take;
        }
        if value != BigUint::ZERO {
            return value;
        }
    }
}
