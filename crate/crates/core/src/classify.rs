//! Classification of sequences and words by the principal factor
//! 3^M / 2^n, and exact counting of the two classes.
//!
//! A length-n word with M odd bits is expanding (type A) iff 3^M > 2^n,
//! equivalently M > alpha_n where alpha_n is the largest k with
//! 3^k < 2^n. Everything here compares big integers; no logarithms.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::kernel::{syracuse_iter, syracuse_step};
use crate::structure::{generate_sequence, word_affine, Convention, GeneratedSequence, ParityWord};
use crate::tables::build_chromoform;
use crate::{Natural, Rational};

/// Above this order the chromoform cross-check in
/// [`polychromologue_counts`] is skipped and only word-space counting
/// runs; the two are equal row for word by the completeness theorem.
const DIRECT_CLASSIFY_LIMIT: u64 = 12;

/// Walks n upward maintaining alpha_n = max { k : 3^k < 2^n } and the
/// power 3^{alpha_n + 1}, one multiplication at a time.
#[derive(Clone, Debug)]
pub struct AlphaSweep {
    n: u64,
    alpha: u64,
    pow3_next: Natural,
}

/// x < 2^n, decided from the bit length alone.
fn below_pow2(x: &Natural, n: u64) -> bool {
    x.bits() <= n
}

impl AlphaSweep {
    pub fn new() -> Self {
        AlphaSweep {
            n: 1,
            alpha: 0,
            pow3_next: Natural::from(3u8),
        }
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn alpha(&self) -> u64 {
        self.alpha
    }

    pub fn advance(&mut self) {
        self.n += 1;
        while below_pow2(&self.pow3_next, self.n) {
            self.alpha += 1;
            self.pow3_next *= 3u8;
        }
    }
}

impl Default for AlphaSweep {
    fn default() -> Self {
        AlphaSweep::new()
    }
}

/// alpha_n, the reversal coefficient: the largest k with 3^k < 2^n.
pub fn reversal_coefficient(n: u64) -> u64 {
    assert!(n >= 1, "reversal coefficients start at n = 1");
    let mut sweep = AlphaSweep::new();
    while sweep.n() < n {
        sweep.advance();
    }
    sweep.alpha()
}

/// The increment e = alpha_{2n} - n of the order-2n counting formulas.
pub fn increment(n: u64) -> u64 {
    assert!(n >= 1, "increments start at n = 1");
    reversal_coefficient(2 * n) - n
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Principal {
    A,
    B,
}

impl std::fmt::Display for Principal {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Principal::A => "A",
            Principal::B => "B",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Growth {
    SPlus,
    SMinus,
}

impl std::fmt::Display for Growth {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Growth::SPlus => "S+",
            Growth::SMinus => "S-",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BSubtype {
    BPlus,
    BMinus,
}

impl std::fmt::Display for BSubtype {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            BSubtype::BPlus => "B+",
            BSubtype::BMinus => "B-",
        })
    }
}

/// Full classification of one generated sequence. B- means preterm <=
/// first term (equality counts as decreasing); the subtype exists only
/// for B sequences since every A sequence grows.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SequenceClass {
    pub principal: Principal,
    pub growth: Growth,
    pub b_subtype: Option<BSubtype>,
}

/// Classifies an already-built sequence.
pub fn classify_generated(seq: &GeneratedSequence) -> SequenceClass {
    let n = seq.len() as u64;
    let m_tilde: u64 = seq.terms().iter().filter(|t| t.bit(0)).count() as u64;
    let principal = if m_tilde > reversal_coefficient(n) {
        Principal::A
    } else {
        Principal::B
    };
    let growth = if seq.preterm() > &seq.terms()[0] {
        Growth::SPlus
    } else {
        Growth::SMinus
    };
    debug_assert!(
        principal == Principal::B || growth == Growth::SPlus,
        "A sequences always grow over their span"
    );
    let b_subtype = match (principal, growth) {
        (Principal::A, _) => None,
        (Principal::B, Growth::SPlus) => Some(BSubtype::BPlus),
        (Principal::B, Growth::SMinus) => Some(BSubtype::BMinus),
    };
    SequenceClass {
        principal,
        growth,
        b_subtype,
    }
}

pub fn classify_sequence(p: &Natural, n: u64) -> SequenceClass {
    classify_generated(&generate_sequence(p, n))
}

/// Reversal data of a B word or chromologue. The threshold is
/// t* = phi-tilde / (1 - F-tilde): any realization whose first term
/// exceeds it is decreasing, so at most finitely many rows of a
/// chromologue grow. i_max is the 1-based index of the last growing row
/// when a scan was performed and found one.
#[derive(Clone, Debug, PartialEq)]
pub struct ReversalInfo {
    pub threshold: Rational,
    pub i_max: Option<u64>,
    pub p_i_max: Option<Natural>,
}

/// Principal type of a generated word, plus the reversal threshold for B
/// words. A words have no threshold: their realizations all grow.
pub fn classify_word(w: &ParityWord) -> Result<(Principal, Option<ReversalInfo>)> {
    if w.convention() != Convention::Generated {
        return Err(Error::WrongConvention {
            expected: Convention::Generated,
            found: w.convention(),
        });
    }
    let n = w.len() as u64;
    let m = w.ones();
    if m > reversal_coefficient(n) {
        return Ok((Principal::A, None));
    }
    let map = word_affine(w);
    let c = map.offset_over_length();
    let den = (BigInt::one() << n) - BigInt::from(3u8).pow(u32::try_from(m).expect("fits u32"));
    debug_assert!(den > BigInt::ZERO, "B words have 3^M < 2^n");
    let threshold = Rational::new(c, den);
    Ok((
        Principal::B,
        Some(ReversalInfo {
            threshold,
            i_max: None,
            p_i_max: None,
        }),
    ))
}

/// Scans the chromologue of a B-type fundamental generator for its
/// reversal point: the last row that still grows. Rows are visited while
/// T_1 <= t*; beyond that every row is decreasing, and T_1 increases
/// without bound along the super-sequence, so the scan is finite.
pub fn chromologue_reversal_point(fundamental: &Natural, n: u64) -> Result<ReversalInfo> {
    let word = generate_sequence(fundamental, n).word();
    let (principal, info) = classify_word(&word)?;
    if principal == Principal::A {
        return Err(Error::NotBType {
            generator: fundamental.clone(),
            order: n,
        });
    }
    let threshold = info.expect("B words carry a threshold").threshold;
    let step = Natural::from(1u8) << (n + 1);
    let mut generator = fundamental.clone();
    let mut best: Option<(u64, Natural)> = None;
    let mut i = 1u64;
    loop {
        let t1 = syracuse_step(&generator);
        if Rational::from_integer(BigInt::from(t1.clone())) > threshold {
            break;
        }
        let preterm = syracuse_iter(&generator, n + 1);
        if preterm > t1 {
            best = Some((i, generator.clone()));
        }
        generator += &step;
        i += 1;
    }
    let (i_max, p_i_max) = match best {
        Some((i, p)) => (Some(i), Some(p)),
        None => (None, None),
    };
    Ok(ReversalInfo {
        threshold,
        i_max,
        p_i_max,
    })
}

/// C(n, k): the number of length-n words with exactly k odd bits.
pub fn count_by_odd(n: u64, k: u64) -> Result<Natural> {
    if k > n {
        return Err(Error::BinomialOutOfRange { n, k });
    }
    Ok(num_integer::binomial(Natural::from(n), Natural::from(k)))
}

/// Exact class counts at one order, with the derived proportions.
#[derive(Clone, Debug, PartialEq)]
pub struct TypeCounts {
    pub order: u64,
    pub a: Natural,
    pub b: Natural,
    pub r_a: Rational,
    pub r_b: Rational,
}

fn proportions(order: u64, a: &Natural, b: &Natural) -> (Rational, Rational) {
    let den = BigInt::one() << order;
    (
        Rational::new(BigInt::from(a.clone()), den.clone()),
        Rational::new(BigInt::from(b.clone()), den),
    )
}

/// Number of A words of length n: those with more than alpha_n odd bits.
fn a_word_count(n: u64, alpha: u64) -> Natural {
    let mut binom = Natural::one();
    let mut a = Natural::zero();
    for k in 0..=n {
        if k > alpha {
            a += &binom;
        }
        if k < n {
            binom = binom * (n - k) / (k + 1);
        }
    }
    a
}

/// Counts A and B words of an even order 2n three ways: the direct tail
/// sum over popcounts above alpha, the symmetric head sum (they match by
/// C(2n,k) = C(2n,2n-k)), and the composite identity
/// b = a + C(2n,n) + 2 Sum_{k=1..e} C(2n,n+k). All three must agree.
pub fn count_types(order: u64) -> Result<TypeCounts> {
    if order % 2 != 0 {
        return Err(Error::OddOrder { order });
    }
    if order < 2 {
        return Err(Error::OrderTooSmall { order, min: 2 });
    }
    let n = order / 2;
    let alpha = reversal_coefficient(order);
    let e = alpha - n;

    let mut binom = Natural::one();
    let mut direct = Natural::zero();
    let mut symmetric = Natural::zero();
    let mut central = Natural::zero();
    let mut upper_half = Natural::zero();
    for k in 0..=order {
        if k > alpha {
            direct += &binom;
        }
        if k + e < n {
            symmetric += &binom;
        }
        if k == n {
            central = binom.clone();
        }
        if k > n && k <= n + e {
            upper_half += &binom;
        }
        if k < order {
            binom = binom * (order - k) / (k + 1);
        }
    }
    assert_eq!(direct, symmetric, "tail and head sums must agree");

    let a = direct;
    let b = (Natural::from(1u8) << order) - &a;
    let composite = &a + central + upper_half * 2u8;
    assert_eq!(b, composite, "composite count identity must hold");

    let (r_a, r_b) = proportions(order, &a, &b);
    Ok(TypeCounts {
        order,
        a,
        b,
        r_a,
        r_b,
    })
}

/// Counts for each requested order. Orders beyond 8 are expected to show
/// a strictly falling A proportion pairwise; a rise between two
/// consecutive supplied orders that both exceed 8 is reported as an
/// error. (Between 8 and 12 the exact proportions actually rise, so that
/// check only applies above 8, and passing such a pair is the supported
/// way to reach the property-failure exit path.)
pub fn proportion_trend(orders: &[u64]) -> Result<Vec<TypeCounts>> {
    let mut out: Vec<TypeCounts> = Vec::with_capacity(orders.len());
    for &order in orders {
        let counts = count_types(order)?;
        if let Some(prev) = out.last() {
            if prev.order > 8 && order > 8 && counts.r_a >= prev.r_a {
                return Err(Error::TrendViolation {
                    prev_order: prev.order,
                    order,
                    prev: prev.r_a.to_string(),
                    next: counts.r_a.to_string(),
                });
            }
        }
        out.push(counts);
    }
    Ok(out)
}

/// Class counts over the 2^n chromologues of order n, any n >= 1. The
/// word space and the chromoform rows count the same classes (each word
/// appears in exactly one row), so this is the binomial tail sum; for
/// small n the chromoform of first term 1 is classified row by row and
/// the two counts are asserted equal.
pub fn polychromologue_counts(n: u64) -> TypeCounts {
    assert!(n >= 1, "orders start at 1");
    let alpha = reversal_coefficient(n);
    let a = a_word_count(n, alpha);
    if n <= DIRECT_CLASSIFY_LIMIT {
        let matrix = build_chromoform(&Natural::one(), n).expect("below default cap");
        let h_a = matrix
            .rows()
            .iter()
            .filter(|row| classify_generated(row).principal == Principal::A)
            .count();
        assert_eq!(
            Natural::from(h_a),
            a,
            "row classification must match word counting"
        );
        if n % 2 == 0 && n >= 2 {
            let reference = count_types(n).expect("even order");
            assert_eq!(reference.a, a, "even orders must match the counting lemma");
        }
    }
    let b = (Natural::from(1u8) << n) - &a;
    let (r_a, r_b) = proportions(n, &a, &b);
    TypeCounts {
        order: n,
        a,
        b,
        r_a,
        r_b,
    }
}
