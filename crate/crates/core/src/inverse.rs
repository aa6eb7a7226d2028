//! From parity words back to generators.
//!
//! The inclusive parity word of length L determines its generator exactly
//! mod 2^L, and every residue class realizes exactly one word, so finite
//! words are always convertible. The interesting behavior is at the
//! limit: for a periodic word, either the affine fixed point of one
//! period is a positive integer that cycles, or the minimal generators of
//! the repeated prefixes slide away to infinity.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::affine::AffineMap;
use crate::error::{Error, Result};
use crate::structure::{parity_vector, word_affine, Convention, ParityWord};
use crate::{Natural, Rational};

/// The full solution set of an inclusive word: every generator congruent
/// to `residue` mod 2^L realizes it, and no other does.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorResidue {
    log2_modulus: u64,
    residue: Natural,
    minimal: Natural,
}

impl GeneratorResidue {
    pub fn log2_modulus(&self) -> u64 {
        self.log2_modulus
    }

    pub fn modulus(&self) -> Natural {
        Natural::from(1u8) << self.log2_modulus
    }

    /// Representative in [0, 2^L).
    pub fn residue(&self) -> &Natural {
        &self.residue
    }

    /// Smallest generator >= 1: the residue itself, or 2^L for residue 0.
    pub fn minimal(&self) -> &Natural {
        &self.minimal
    }
}

/// One step extended to 0 (0 maps to 0), used only while lifting: the
/// zero residue stands for "a multiple of 2^k", whose first k bits are
/// all even.
fn step_or_zero(n: &Natural) -> Natural {
    if n.bit(0) {
        (n * 3u8 + 1u8) >> 1
    } else {
        n >> 1
    }
}

/// Finds the unique residue class mod 2^L realizing an inclusive word,
/// by lifting one bit at a time: if the current k-bit residue produces
/// the wrong parity at step k, adding 2^k flips it (the k-th iterate
/// moves by 3^{M_{k-1}}, an odd amount).
pub fn generator_for_word(w: &ParityWord) -> Result<GeneratorResidue> {
    if w.convention() != Convention::Inclusive {
        return Err(Error::WrongConvention {
            expected: Convention::Inclusive,
            found: w.convention(),
        });
    }
    let mut residue = Natural::zero();
    let mut value = Natural::zero();
    let mut pow2 = Natural::one();
    let mut pow3 = Natural::one();
    for &bit in w.bits() {
        if value.bit(0) != (bit == 1) {
            residue += &pow2;
            value += &pow3;
        }
        value = step_or_zero(&value);
        if bit == 1 {
            pow3 *= 3u8;
        }
        pow2 <<= 1;
    }
    let log2_modulus = w.len() as u64;
    let minimal = if residue.is_zero() {
        pow2
    } else {
        residue.clone()
    };
    debug_assert_eq!(
        parity_vector(&minimal, log2_modulus, Convention::Inclusive),
        *w,
        "lifted generator must realize the word"
    );
    Ok(GeneratorResidue {
        log2_modulus,
        residue,
        minimal,
    })
}

/// One row of a sliding table: the minimal generator of base^k ++ tail.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrowthRow {
    pub k: u64,
    pub length: u64,
    pub minimal: Natural,
}

/// Minimal generators of the words base repeated k times (k = 1..k_max)
/// followed by an optional tail. Strictly increasing growth here is the
/// finite witness of a sliding (inconvertible) periodic word.
pub fn minimal_generator_growth(
    base: &ParityWord,
    tail: Option<&ParityWord>,
    k_max: u64,
) -> Result<Vec<GrowthRow>> {
    assert!(k_max >= 1, "need at least one repetition");
    for word in std::iter::once(base).chain(tail) {
        if word.convention() != Convention::Inclusive {
            return Err(Error::WrongConvention {
                expected: Convention::Inclusive,
                found: word.convention(),
            });
        }
    }
    let mut rows = Vec::with_capacity(k_max as usize);
    let mut bits: Vec<u8> = Vec::new();
    for k in 1..=k_max {
        bits.extend_from_slice(base.bits());
        let mut full = bits.clone();
        if let Some(tail) = tail {
            full.extend_from_slice(tail.bits());
        }
        let word = ParityWord::inclusive(full).expect("base is nonempty");
        let residue = generator_for_word(&word)?;
        rows.push(GrowthRow {
            k,
            length: word.len() as u64,
            minimal: residue.minimal().clone(),
        });
    }
    Ok(rows)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CycleVerdict {
    /// The fixed point is a positive integer and really cycles through
    /// the word: a quantitative cycle exists.
    StableIntegerCycle,
    /// No positive integer closes the period; repetitions slide.
    NoPositiveCycle,
    /// 2^L = 3^M, impossible for L >= 1; kept for interface completeness.
    Degenerate,
}

impl std::fmt::Display for CycleVerdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            CycleVerdict::StableIntegerCycle => "stable_integer_cycle",
            CycleVerdict::NoPositiveCycle => "no_positive_cycle",
            CycleVerdict::Degenerate => "degenerate",
        })
    }
}

/// The affine data of one period and its fixed point c / (2^L - 3^M).
/// A negative integer fixed point x* still explains the sliding pattern:
/// minimal generators of k periods sit at 2^{Lk} - |x*|.
#[derive(Clone, Debug, PartialEq)]
pub struct CycleAnalysis {
    pub word: ParityWord,
    pub map: AffineMap,
    pub fixed_point: Option<Rational>,
    pub verdict: CycleVerdict,
}

/// Solves x = (3^M x + c) / 2^L for one period of an inclusive word and
/// decides whether the solution is a genuine integer cycle.
pub fn cycle_fixed_point(base: &ParityWord) -> Result<CycleAnalysis> {
    if base.convention() != Convention::Inclusive {
        return Err(Error::WrongConvention {
            expected: Convention::Inclusive,
            found: base.convention(),
        });
    }
    let map = word_affine(base);
    let fixed_point = map.fixed_point();
    let verdict = match &fixed_point {
        None => CycleVerdict::Degenerate,
        Some(fp) => {
            let integer_cycle = fp.is_integer()
                && fp.is_positive()
                && parity_vector(
                    &fp.to_integer().to_biguint().expect("positive"),
                    base.len() as u64,
                    Convention::Inclusive,
                ) == *base;
            if integer_cycle {
                CycleVerdict::StableIntegerCycle
            } else {
                CycleVerdict::NoPositiveCycle
            }
        }
    };
    Ok(CycleAnalysis {
        word: base.clone(),
        map,
        fixed_point,
        verdict,
    })
}

/// The window [1, 2^{n+1}] scaled view of how many generators survive a
/// first-term threshold of r 2^n: at least the fraction 1 - r/2 does.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityReport {
    /// Order n of the window.
    pub order: u64,
    /// The requested ratio r.
    pub ratio: Rational,
    /// r scaled to the window: r_n = 2^n r.
    pub scaled: Rational,
    /// First integer above the scaled ratio.
    pub p0: Natural,
    /// Count of surviving generators in the window, as an exact rational.
    pub z_plus: Rational,
    /// Surviving fraction z+ / 2^n = 1 - (p0 - 1) / 2^{n+1}.
    pub rho_plus: Rational,
    /// The bound 1 - r/2 that rho_plus must meet.
    pub lower_bound: Rational,
}

/// Evaluates the non-convertibility density bound rho+(n) >= 1 - r/2
/// exactly. The fraction of generators escaping a threshold at r 2^n
/// stays close to 1 for small r at every order.
pub fn nonconvertible_bound(n: u64, r: &Rational) -> Result<DensityReport> {
    if !(r > &Rational::zero() && r < &Rational::one()) {
        return Err(Error::RatioOutOfRange { r: r.to_string() });
    }
    let pow2n = Rational::from_integer(BigInt::one() << n);
    let scaled = &pow2n * r;
    let p0_int = scaled.floor().to_integer() + BigInt::one();
    let p0 = p0_int.to_biguint().expect("positive by construction");
    let half_offset = Rational::new(&p0_int - BigInt::one(), BigInt::from(2u8));
    let z_plus = &pow2n - &half_offset;
    let rho_plus = &z_plus / &pow2n;
    let lower_bound = Rational::one() - r / Rational::from_integer(BigInt::from(2u8));
    assert!(
        rho_plus >= lower_bound,
        "density bound must hold for admissible r"
    );
    Ok(DensityReport {
        order: n,
        ratio: r.clone(),
        scaled,
        p0,
        z_plus,
        rho_plus,
        lower_bound,
    })
}
