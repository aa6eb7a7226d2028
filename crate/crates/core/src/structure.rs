//! Parity words and the structural view of a generated sequence.
//!
//! A word records iterate parities in one of two conventions: inclusive
//! words start at the generator's own bit i_0, generated words start at
//! i_1. The two are never interchangeable, so every word carries its tag
//! and comparisons across conventions are rejected.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::affine::AffineMap;
use crate::dyadic::DyadicRational;
use crate::error::{Error, Result};
use crate::kernel::{self, syracuse_iter, syracuse_step};
use crate::Natural;

/// Which iterate a word's first bit describes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Convention {
    /// Bits (i_0, ..., i_{L-1}); the generator's parity comes first.
    Inclusive,
    /// Bits (i_1, ..., i_L); parities of the generated terms only.
    Generated,
}

impl Convention {
    /// Serialization prefix: 'I' or 'G'.
    pub fn prefix(self) -> char {
        match self {
            Convention::Inclusive => 'I',
            Convention::Generated => 'G',
        }
    }

    fn from_prefix(s: &str) -> Option<Self> {
        match s {
            "I" => Some(Convention::Inclusive),
            "G" => Some(Convention::Generated),
            _ => None,
        }
    }
}

impl fmt::Display for Convention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Convention::Inclusive => "inclusive",
            Convention::Generated => "generated",
        })
    }
}

/// A nonempty bit sequence tagged with its convention.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ParityWord {
    bits: Vec<u8>,
    convention: Convention,
}

impl ParityWord {
    /// # Panics
    /// If any entry is outside {0, 1}; that is a caller bug, not data.
    pub fn new(bits: Vec<u8>, convention: Convention) -> Result<Self> {
        if bits.is_empty() {
            return Err(Error::EmptyWord);
        }
        assert!(bits.iter().all(|&b| b <= 1), "parity bits are 0 or 1");
        Ok(Self { bits, convention })
    }

    pub fn inclusive(bits: Vec<u8>) -> Result<Self> {
        Self::new(bits, Convention::Inclusive)
    }

    pub fn generated(bits: Vec<u8>) -> Result<Self> {
        Self::new(bits, Convention::Generated)
    }

    pub fn bits(&self) -> &[u8] {
        &self.bits
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    /// Words are never empty; present for interface completeness.
    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn bit(&self, k: usize) -> u8 {
        self.bits[k]
    }

    /// Number of set bits, the odd-term count M of the word.
    pub fn ones(&self) -> u64 {
        self.bits.iter().map(|&b| u64::from(b)).sum()
    }

    pub fn convention(&self) -> Convention {
        self.convention
    }

    /// Extends a generated word to the inclusive one by prepending the
    /// generator's own parity bit. The bit cannot be recovered from the
    /// word itself: both parities of generator produce some generated
    /// words, so the caller supplies it.
    ///
    /// # Panics
    /// If the word is already inclusive.
    pub fn with_generator_bit(&self, generator_bit: u8) -> ParityWord {
        assert_eq!(
            self.convention,
            Convention::Generated,
            "only generated words can take a generator bit"
        );
        assert!(generator_bit <= 1, "parity bits are 0 or 1");
        let mut bits = Vec::with_capacity(self.bits.len() + 1);
        bits.push(generator_bit);
        bits.extend_from_slice(&self.bits);
        ParityWord {
            bits,
            convention: Convention::Inclusive,
        }
    }
}

impl fmt::Display for ParityWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:", self.convention.prefix())?;
        for b in &self.bits {
            write!(f, "{b}")?;
        }
        Ok(())
    }
}

impl FromStr for ParityWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parse_err = |reason: &str| Error::WordParse {
            input: s.to_owned(),
            reason: reason.to_owned(),
        };
        let (prefix, body) = s
            .split_once(':')
            .ok_or_else(|| parse_err("missing 'I:' or 'G:' convention prefix"))?;
        let convention = Convention::from_prefix(prefix)
            .ok_or_else(|| parse_err("convention prefix must be 'I' or 'G'"))?;
        if body.is_empty() {
            return Err(parse_err("word has no bits"));
        }
        let bits = body
            .chars()
            .map(|c| match c {
                '0' => Ok(0),
                '1' => Ok(1),
                _ => Err(parse_err("bits must be '0' or '1'")),
            })
            .collect::<Result<Vec<u8>>>()?;
        Ok(ParityWord { bits, convention })
    }
}

/// The terms T_1(P) ... T_n(P) together with the preterm T_{n+1}(P).
/// The generator itself is not a term of the sequence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratedSequence {
    generator: Natural,
    terms: Vec<Natural>,
    preterm: Natural,
}

impl GeneratedSequence {
    pub fn generator(&self) -> &Natural {
        &self.generator
    }

    /// T_1 through T_n, in order.
    pub fn terms(&self) -> &[Natural] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// T_{n+1}, the term one past the recorded length.
    pub fn preterm(&self) -> &Natural {
        &self.preterm
    }

    /// The generated parity word (i_1, ..., i_n) read off the terms.
    pub fn word(&self) -> ParityWord {
        let bits = self.terms.iter().map(|t| u8::from(t.is_odd())).collect();
        ParityWord::new(bits, Convention::Generated).expect("sequences have length >= 1")
    }
}

/// Builds T_1(P) ... T_n(P) and the preterm T_{n+1}(P).
pub fn generate_sequence(p: &Natural, n: u64) -> GeneratedSequence {
    assert!(n >= 1, "generated sequences have length >= 1");
    assert!(!p.is_zero(), "generators start at 1");
    let mut terms = Vec::with_capacity(n as usize);
    let mut t = syracuse_step(p);
    for _ in 0..n {
        let next = syracuse_step(&t);
        terms.push(t);
        t = next;
    }
    GeneratedSequence {
        generator: p.clone(),
        terms,
        preterm: t,
    }
}

/// The parity word of P in the requested convention: inclusive gives
/// (i_0, ..., i_{n-1}), generated gives (i_1, ..., i_n).
pub fn parity_vector(p: &Natural, n: u64, convention: Convention) -> ParityWord {
    assert!(n >= 1, "parity vectors have length >= 1");
    assert!(!p.is_zero(), "generators start at 1");
    let skip = match convention {
        Convention::Inclusive => 0,
        Convention::Generated => 1,
    };
    let bits = kernel::trajectory(p)
        .skip(skip)
        .take(n as usize)
        .map(|t| u8::from(t.is_odd()))
        .collect();
    ParityWord::new(bits, convention).expect("n >= 1")
}

/// One glyph per bit with the default pair: '#' for 1, '.' for 0.
pub fn render_chromatic(word: &ParityWord) -> String {
    render_chromatic_with(word, '#', '.')
}

pub fn render_chromatic_with(word: &ParityWord, one: char, zero: char) -> String {
    assert_ne!(one, zero, "glyphs must be distinguishable");
    word.bits()
        .iter()
        .map(|&b| if b == 1 { one } else { zero })
        .collect()
}

/// Inverse of [`render_chromatic`] for the default glyph pair.
pub fn parse_chromatic(line: &str, convention: Convention) -> Result<ParityWord> {
    parse_chromatic_with(line, convention, '#', '.')
}

pub fn parse_chromatic_with(
    line: &str,
    convention: Convention,
    one: char,
    zero: char,
) -> Result<ParityWord> {
    assert_ne!(one, zero, "glyphs must be distinguishable");
    let bits = line
        .chars()
        .map(|c| {
            if c == one {
                Ok(1)
            } else if c == zero {
                Ok(0)
            } else {
                Err(Error::WordParse {
                    input: line.to_owned(),
                    reason: format!("expected glyphs {one:?} or {zero:?}"),
                })
            }
        })
        .collect::<Result<Vec<u8>>>()?;
    ParityWord::new(bits, convention)
}

/// Whether P1 and P2 share the generated parity word of length n.
///
/// Computed twice on purpose: once by comparing the words, once by the
/// arithmetic criterion |P2 - P1| divisible by 2^{n+1}. The two answers
/// are asserted equal; a disagreement would falsify the theory, not the
/// data, so it is a panic rather than an error.
pub fn is_isoform(p1: &Natural, p2: &Natural, n: u64) -> Result<bool> {
    assert!(n >= 1, "isoformy is about words of length >= 1");
    assert!(!p1.is_zero() && !p2.is_zero(), "generators start at 1");
    if p1.is_odd() != p2.is_odd() {
        return Err(Error::MixedParity {
            p1: p1.clone(),
            p2: p2.clone(),
        });
    }
    let by_words =
        parity_vector(p1, n, Convention::Generated) == parity_vector(p2, n, Convention::Generated);
    let diff = if p1 >= p2 { p1 - p2 } else { p2 - p1 };
    let modulus = Natural::from(1u8) << (n + 1);
    let by_residue = (diff % modulus).is_zero();
    assert_eq!(by_words, by_residue, "isoformy criteria disagree");
    Ok(by_words)
}

/// T_k(P + 2^{n+1} m) computed without touching the shifted generator:
/// T_k(P) + 2^{n+1-k} 3^{M_{k-1}(P)} m, valid for 1 <= k <= n+1.
pub fn shift_image(p: &Natural, n: u64, m: &Natural, k: u64) -> Result<Natural> {
    assert!(!p.is_zero(), "generators start at 1");
    if k < 1 || k > n + 1 {
        return Err(Error::StepOutOfRange { k, max: n + 1 });
    }
    let base = syracuse_iter(p, k);
    let odd_count = kernel::imparity_count(p, k - 1);
    let exponent = u32::try_from(odd_count).expect("imparity count fits u32");
    let shift = (m * Natural::from(3u8).pow(exponent)) << (n + 1 - k);
    Ok(base + shift)
}

/// The exact affine map obtained by composing one step per bit, in word
/// order: x -> (3x+1)/2 for 1, x -> x/2 for 0. Applied to P for an
/// inclusive word of P, or to T_1(P) for a generated one.
pub fn word_affine(word: &ParityWord) -> AffineMap {
    let mut c = BigInt::zero();
    let mut odd_count = 0u64;
    for (k, &b) in word.bits().iter().enumerate() {
        if b == 1 {
            c = c * 3 + (BigInt::one() << k);
            odd_count += 1;
        }
    }
    let length = word.len() as u64;
    AffineMap::new(odd_count, length, DyadicRational::new(c, length))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::{cumulative_affine, generated_affine};

    fn nat(v: u64) -> Natural {
        Natural::from(v)
    }

    fn nats(vs: &[u64]) -> Vec<Natural> {
        vs.iter().map(|&v| nat(v)).collect()
    }

    #[test]
    fn sequences() {
        let s = generate_sequence(&nat(27), 5);
        assert_eq!(s.terms(), nats(&[41, 62, 31, 47, 71]).as_slice());
        assert_eq!(s.preterm(), &nat(107));
        assert!(!s.terms().contains(s.generator()));

        let s = generate_sequence(&nat(7), 5);
        assert_eq!(s.terms(), nats(&[11, 17, 26, 13, 20]).as_slice());
        assert_eq!(s.preterm(), &nat(10));

        let s = generate_sequence(&nat(2), 1);
        assert_eq!(s.terms(), nats(&[1]).as_slice());
        assert_eq!(s.preterm(), &nat(2));
    }

    #[test]
    fn sequence_words() {
        let s = generate_sequence(&nat(27), 5);
        assert_eq!(
            s.word(),
            ParityWord::generated(vec![1, 0, 1, 1, 1]).unwrap()
        );
    }

    #[test]
    fn vectors() {
        assert_eq!(
            parity_vector(&nat(27), 5, Convention::Generated).bits(),
            &[1, 0, 1, 1, 1]
        );
        assert_eq!(
            parity_vector(&nat(7), 6, Convention::Inclusive).bits(),
            &[1, 1, 1, 0, 1, 0]
        );
        for k in 1..8u64 {
            let p = Natural::from(1u8) << k;
            let word = parity_vector(&p, k, Convention::Inclusive);
            assert_eq!(word.ones(), 0);
        }
    }

    #[test]
    fn generator_bit_extension() {
        let generated = parity_vector(&nat(27), 5, Convention::Generated);
        assert_eq!(
            generated.with_generator_bit(1),
            parity_vector(&nat(27), 6, Convention::Inclusive)
        );
    }

    #[test]
    fn serialization() {
        let word = ParityWord::generated(vec![1, 0, 1, 1, 1]).unwrap();
        assert_eq!(word.to_string(), "G:10111");
        assert_eq!("G:10111".parse::<ParityWord>().unwrap(), word);
        let word = ParityWord::inclusive(vec![1, 1, 1, 0, 1, 0]).unwrap();
        assert_eq!(word.to_string(), "I:111010");
        assert_eq!("I:111010".parse::<ParityWord>().unwrap(), word);

        for bad in ["10101", "X:101", "G:102", "G:", "I"] {
            assert!(matches!(
                bad.parse::<ParityWord>(),
                Err(Error::WordParse { .. })
            ));
        }
        assert_eq!(ParityWord::generated(vec![]).unwrap_err(), Error::EmptyWord);
    }

    #[test]
    fn chromatic_rendering() {
        let render = |bits: &[u8]| render_chromatic(&ParityWord::generated(bits.to_vec()).unwrap());
        assert_eq!(render(&[1, 1, 0]), "##.");
        assert_eq!(render(&[0]), ".");
        assert_eq!(render(&[1, 0, 1, 1, 0, 1]), "#.##.#");

        let word = ParityWord::generated(vec![1, 0, 1, 1, 0, 1]).unwrap();
        assert_eq!(
            parse_chromatic("#.##.#", Convention::Generated).unwrap(),
            word
        );
        let fancy = render_chromatic_with(&word, 'x', 'o');
        assert_eq!(fancy, "xoxxox");
        assert_eq!(
            parse_chromatic_with(&fancy, Convention::Generated, 'x', 'o').unwrap(),
            word
        );
        assert!(matches!(
            parse_chromatic("#?#", Convention::Generated),
            Err(Error::WordParse { .. })
        ));
    }

    #[test]
    fn isoformy() {
        // 139 - 11 = 128 = 2^7, so the shared window ends at order 6.
        assert!(is_isoform(&nat(11), &nat(139), 6).unwrap());
        assert!(!is_isoform(&nat(11), &nat(139), 7).unwrap());
        assert!(is_isoform(&nat(7), &nat(71), 5).unwrap());
        assert!(!is_isoform(&nat(7), &nat(9), 5).unwrap());
        assert_eq!(
            is_isoform(&nat(7), &nat(8), 5).unwrap_err(),
            Error::MixedParity {
                p1: nat(7),
                p2: nat(8)
            }
        );
    }

    #[test]
    fn shift_images() {
        assert_eq!(shift_image(&nat(7), 5, &nat(1), 1).unwrap(), nat(107));
        assert_eq!(shift_image(&nat(7), 5, &nat(1), 6).unwrap(), nat(91));
        for k in 1..=6 {
            assert_eq!(
                shift_image(&nat(7), 5, &Natural::ZERO, k).unwrap(),
                syracuse_iter(&nat(7), k)
            );
        }
        assert_eq!(
            shift_image(&nat(7), 5, &nat(1), 0).unwrap_err(),
            Error::StepOutOfRange { k: 0, max: 6 }
        );
        assert_eq!(
            shift_image(&nat(7), 5, &nat(1), 7).unwrap_err(),
            Error::StepOutOfRange { k: 7, max: 6 }
        );
    }

    #[test]
    fn word_affine_examples() {
        let map = word_affine(&ParityWord::generated(vec![1, 0, 1]).unwrap());
        assert_eq!(map.odd_count(), 2);
        assert_eq!(map.length(), 3);
        assert_eq!(map.offset(), &DyadicRational::new(BigInt::from(7), 3));

        let map = word_affine(&ParityWord::generated(vec![1, 0]).unwrap());
        assert_eq!(map.offset(), &DyadicRational::new(BigInt::from(1), 2));

        let map = word_affine(&ParityWord::inclusive(vec![0, 0, 0, 0]).unwrap());
        assert_eq!(map.odd_count(), 0);
        assert_eq!(map.offset(), &DyadicRational::zero());
    }

    #[test]
    fn word_affine_matches_trajectory_data() {
        let inclusive = parity_vector(&nat(27), 5, Convention::Inclusive);
        assert_eq!(word_affine(&inclusive), cumulative_affine(&nat(27), 5));
        let generated = parity_vector(&nat(27), 5, Convention::Generated);
        assert_eq!(word_affine(&generated), generated_affine(&nat(27), 5));
    }
}
