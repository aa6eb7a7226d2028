//! The shortcut Syracuse map and its exact cumulative transformation data.
//!
//! One step sends N to N/2 when N is even and to (3N+1)/2 when N is odd.
//! The n-fold iterate is an affine map (3^{M_{n-1}(P)} / 2^n) P + phi_n(P)
//! whose offset obeys phi_1 = i_0/2 and then phi_n = (3^{i_{n-1}}/2)
//! phi_{n-1} + i_{n-1}/2; the offset numerator is tracked over the
//! denominator 2^n exactly as the recurrence produces it.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use crate::affine::AffineMap;
use crate::dyadic::DyadicRational;
use crate::Natural;

/// One shortcut step.
///
/// # Panics
/// If `n` is zero; trajectories start at 1.
pub fn syracuse_step(n: &Natural) -> Natural {
    assert!(!n.is_zero(), "syracuse_step requires N >= 1");
    if n.is_even() {
        n >> 1
    } else {
        (n * 3u8 + 1u8) >> 1
    }
}

/// The k-fold step; k = 0 is the identity. Composition is additive in k.
pub fn syracuse_iter(n: &Natural, k: u64) -> Natural {
    let mut value = n.clone();
    for _ in 0..k {
        value = syracuse_step(&value);
    }
    value
}

/// Iterator over P, T(P), T^2(P), ...
pub(crate) fn trajectory(p: &Natural) -> impl Iterator<Item = Natural> {
    let mut next = Some(p.clone());
    std::iter::from_fn(move || {
        let current = next.take()?;
        next = Some(syracuse_step(&current));
        Some(current)
    })
}

/// Parity bit of the n-th iterate: 1 iff T^n(P) is odd.
pub fn parity_indicator(p: &Natural, n: u64) -> u8 {
    u8::from(syracuse_iter(p, n).is_odd())
}

/// Number of odd values among the iterates T^0(P) ... T^n(P). Satisfies
/// M_n = M_{n-1} + i_n.
pub fn imparity_count(p: &Natural, n: u64) -> u64 {
    trajectory(p)
        .take(n as usize + 1)
        .filter(|t| t.is_odd())
        .count() as u64
}

/// Imparity count with the generator's own bit removed:
/// M-tilde_n = M_n - i_0, the odd values among T^1(P) ... T^n(P).
pub fn generated_imparity_count(p: &Natural, n: u64) -> u64 {
    assert!(n >= 1, "generated imparity count needs n >= 1");
    imparity_count(p, n) - u64::from(parity_indicator(p, 0))
}

/// The two effect pairs of a single step: (1/2, 0) on evens and
/// (3/2, 1/2) on odds, so that T(N) = principal * N + secondary exactly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ElementaryEffects {
    pub principal: DyadicRational,
    pub secondary: DyadicRational,
}

pub fn elementary_effects(n: &Natural) -> ElementaryEffects {
    assert!(!n.is_zero(), "elementary effects require N >= 1");
    let i0 = i64::from(n.is_odd());
    ElementaryEffects {
        principal: DyadicRational::new(BigInt::from(1 + 2 * i0), 1),
        secondary: DyadicRational::new(BigInt::from(i0), 1),
    }
}

/// T(A + 2B) computed without forming A + 2B: T(A) + 3^{i_0(A)} B.
pub fn shifted_step(a: &Natural, b: &Natural) -> Natural {
    let stepped = syracuse_step(a);
    if a.is_odd() {
        stepped + b * 3u8
    } else {
        stepped + b
    }
}

/// Parities of the first n iterates T^0(P) ... T^{n-1}(P) together with the
/// running offset numerator of the phi recurrence, over the denominator 2^n.
fn cumulative_offset(p: &Natural, n: u64) -> (u64, BigInt) {
    let mut odd_count = 0u64;
    let mut c = BigInt::zero();
    for (k, t) in trajectory(p).take(n as usize).enumerate() {
        // c_{k+1} = 3^{i_k} c_k + i_k 2^k
        if t.is_odd() {
            odd_count += 1;
            c = c * 3 + (BigInt::from(1) << k);
        }
    }
    (odd_count, c)
}

/// The exact affine form of the n-fold iterate:
/// T^n(P) = (3^{M_{n-1}(P)} / 2^n) P + phi_n(P), n >= 1.
///
/// The offset is returned over the denominator 2^n as built by the
/// recurrence, without reduction.
pub fn cumulative_affine(p: &Natural, n: u64) -> AffineMap {
    assert!(n >= 1, "cumulative affine data needs n >= 1");
    assert!(!p.is_zero(), "cumulative affine data requires P >= 1");
    let (odd_count, c) = cumulative_offset(p, n);
    AffineMap::new(odd_count, n, DyadicRational::new(c, n))
}

/// The affine form of T^{n+1}(P) as a function of the first generated term:
/// T^{n+1}(P) = (3^{M-tilde_n(P)} / 2^n) T^1(P) + phi-tilde_n(P), n >= 1.
///
/// Derived from the cumulative data one step further out:
/// phi-tilde_n = phi_{n+1} - (3^{M-tilde_n} / 2^{n+1}) i_0(P). The
/// difference numerator is always even, so the offset reduces to the
/// denominator 2^n.
pub fn generated_affine(p: &Natural, n: u64) -> AffineMap {
    assert!(n >= 1, "generated affine data needs n >= 1");
    assert!(!p.is_zero(), "generated affine data requires P >= 1");
    let (m_full, c_full) = cumulative_offset(p, n + 1);
    let i0 = u64::from(p.is_odd());
    let odd_count = m_full - i0;
    let mut c = c_full;
    if i0 == 1 {
        c -= BigInt::from(3u8).pow(u32::try_from(odd_count).expect("odd count fits u32"));
    }
    let (half, rem) = c.div_rem(&BigInt::from(2));
    assert!(rem.is_zero(), "generated offset numerator is always even");
    AffineMap::new(odd_count, n, DyadicRational::new(half, n))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn nat(v: u64) -> Natural {
        Natural::from(v)
    }

    #[test]
    fn single_steps() {
        assert_eq!(syracuse_step(&nat(7)), nat(11));
        assert_eq!(syracuse_step(&nat(26)), nat(13));
        assert_eq!(syracuse_step(&nat(27)), nat(41));
    }

    #[test]
    #[should_panic(expected = "requires N >= 1")]
    fn zero_is_rejected() {
        syracuse_step(&Natural::ZERO);
    }

    #[test]
    fn iterates() {
        assert_eq!(syracuse_iter(&nat(27), 2), nat(62));
        assert_eq!(syracuse_iter(&nat(9), 0), nat(9));
        assert_eq!(syracuse_iter(&nat(7), 5), nat(20));
    }

    #[test]
    fn parity_indicators() {
        assert_eq!(parity_indicator(&nat(27), 0), 1);
        assert_eq!(parity_indicator(&nat(27), 2), 0);
        assert_eq!(parity_indicator(&nat(2), 0), 0);
    }

    #[test]
    fn imparity_counts() {
        assert_eq!(imparity_count(&nat(29), 6), 4);
        assert_eq!(imparity_count(&nat(27), 5), 5);
        assert_eq!(imparity_count(&nat(2), 0), 0);
    }

    #[test]
    fn generated_imparity_counts() {
        assert_eq!(generated_imparity_count(&nat(27), 5), 4);
        // 17 -> 26, 13, 20, 10, 5: two odd generated terms.
        assert_eq!(generated_imparity_count(&nat(17), 5), 2);
        // 2^n halves to T^n = 1, the only odd generated term up to n.
        for n in 1..10u64 {
            let p = Natural::from(1u8) << n;
            assert_eq!(generated_imparity_count(&p, n), 1);
            // One power higher, T^n = 2 is still even.
            assert_eq!(generated_imparity_count(&(&p * 2u8), n), 0);
        }
    }

    #[test]
    fn elementary_effect_pairs() {
        let odd = elementary_effects(&nat(27));
        assert_eq!(odd.principal, DyadicRational::new(BigInt::from(3), 1));
        assert_eq!(odd.secondary, DyadicRational::new(BigInt::from(1), 1));
        let even = elementary_effects(&nat(8));
        assert_eq!(even.principal, DyadicRational::new(BigInt::from(1), 1));
        assert_eq!(even.secondary, DyadicRational::zero());
        assert_eq!(elementary_effects(&nat(1)), odd);
    }

    #[test]
    fn shifted_steps() {
        assert_eq!(shifted_step(&nat(7), &nat(1)), nat(14));
        assert_eq!(shifted_step(&nat(2), &nat(3)), nat(4));
        assert_eq!(shifted_step(&nat(27), &nat(2)), nat(47));
    }

    #[test]
    fn cumulative_affine_examples() {
        let one = cumulative_affine(&nat(27), 1);
        assert_eq!(one.odd_count(), 1);
        assert_eq!(one.offset(), &DyadicRational::new(BigInt::from(1), 1));
        assert_eq!(one.apply_integer(&nat(27)), Some(nat(41)));

        let even = cumulative_affine(&nat(8), 1);
        assert_eq!(even.odd_count(), 0);
        assert_eq!(even.offset(), &DyadicRational::zero());

        let five = cumulative_affine(&nat(27), 5);
        assert_eq!(five.odd_count(), 4);
        assert_eq!(five.length(), 5);
        assert_eq!(five.offset(), &DyadicRational::new(BigInt::from(85), 5));
        assert_eq!(five.offset().log2_denominator(), 5);
        assert_eq!(five.apply_integer(&nat(27)), Some(nat(71)));
    }

    #[test]
    fn generated_affine_examples() {
        let b = generated_affine(&nat(17), 5);
        assert_eq!(b.odd_count(), 2);
        assert_eq!(b.offset(), &DyadicRational::new(BigInt::from(11), 4));
        assert_eq!(b.apply_integer(&syracuse_step(&nat(17))), Some(nat(8)));

        let a = generated_affine(&nat(7), 4);
        assert_eq!(a.odd_count(), 3);
        assert_eq!(a.offset(), &DyadicRational::new(BigInt::from(23), 4));
        assert_eq!(a.apply_integer(&nat(11)), Some(nat(20)));

        let c = generated_affine(&nat(27), 5);
        assert_eq!(c.odd_count(), 4);
        assert_eq!(c.offset(), &DyadicRational::new(BigInt::from(103), 5));
        assert_eq!(c.apply_integer(&nat(41)), Some(nat(107)));
    }
}
