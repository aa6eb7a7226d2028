//! Arrangement tables built from arithmetic progressions of generators.
//!
//! A perfect generating sequence (step 2, 2^n terms) seeds a chromoform
//! whose 2^n parity-word rows enumerate every length-n word exactly once.
//! A super-sequence (step 2^{n+1}) seeds a chromologue whose rows are all
//! isoform. The operations here build those tables and check the
//! completeness, prolongation, decomposition and transpose statements on
//! finite prefixes.

use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::structure::{generate_sequence, Convention, GeneratedSequence, ParityWord};
use crate::Natural;

/// Default ceiling for table orders: 2^24 rows. Overridable per call and,
/// in the CLI, per run; the packed-row representation imposes a hard
/// ceiling of 62 regardless.
pub const DEFAULT_ORDER_CAP: u64 = 24;

/// Largest order whose rows fit a u64 bit per column with room to keep
/// residue parities exact during fast generation.
const HARD_ORDER_LIMIT: u64 = 62;

fn guard_order(order: u64, cap: u64) -> Result<()> {
    assert!(order >= 1, "table orders start at 1");
    let cap = cap.min(HARD_ORDER_LIMIT);
    if order > cap {
        return Err(Error::OrderCapExceeded { order, cap });
    }
    Ok(())
}

/// The 2^n generators first, first+2, ..., first + 2^{n+1} - 2.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PerfectGeneratingSequence {
    first: Natural,
    order: u64,
    terms: Vec<Natural>,
}

impl PerfectGeneratingSequence {
    pub fn first(&self) -> &Natural {
        &self.first
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn terms(&self) -> &[Natural] {
        &self.terms
    }
}

pub fn perfect_generating_sequence(first: &Natural, order: u64) -> PerfectGeneratingSequence {
    assert!(order >= 1, "table orders start at 1");
    assert!(!first.is_zero(), "generators start at 1");
    assert!(
        order <= HARD_ORDER_LIMIT,
        "order exceeds the representable range"
    );
    let count = 1usize << order;
    let mut terms = Vec::with_capacity(count);
    let mut term = first.clone();
    for _ in 0..count {
        terms.push(term.clone());
        term += 2u8;
    }
    PerfectGeneratingSequence {
        first: first.clone(),
        order,
        terms,
    }
}

/// The first q generators of the super-sequence: first + (i-1) 2^{n+1}.
/// Its step is the structural period of order n.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuperSequencePrefix {
    first: Natural,
    order: u64,
    terms: Vec<Natural>,
}

impl SuperSequencePrefix {
    pub fn first(&self) -> &Natural {
        &self.first
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn terms(&self) -> &[Natural] {
        &self.terms
    }
}

pub fn super_sequence_prefix(first: &Natural, order: u64, q: u64) -> SuperSequencePrefix {
    assert!(q >= 1, "prefixes have at least one term");
    assert!(!first.is_zero(), "generators start at 1");
    let step = Natural::from(1u8) << (order + 1);
    let mut terms = Vec::with_capacity(q as usize);
    let mut term = first.clone();
    for _ in 0..q {
        terms.push(term.clone());
        term += &step;
    }
    SuperSequencePrefix {
        first: first.clone(),
        order,
        terms,
    }
}

/// All 2^n generated sequences over a perfect generating sequence. The
/// generator column is carried by the rows themselves and is not part of
/// the n data columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChromoformMatrix {
    first: Natural,
    order: u64,
    rows: Vec<GeneratedSequence>,
}

impl ChromoformMatrix {
    pub fn first(&self) -> &Natural {
        &self.first
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn rows(&self) -> &[GeneratedSequence] {
        &self.rows
    }

    pub fn row_count(&self) -> usize {
        self.rows.len()
    }
}

pub fn build_chromoform(first: &Natural, order: u64) -> Result<ChromoformMatrix> {
    build_chromoform_with_cap(first, order, DEFAULT_ORDER_CAP)
}

pub fn build_chromoform_with_cap(
    first: &Natural,
    order: u64,
    cap: u64,
) -> Result<ChromoformMatrix> {
    guard_order(order, cap)?;
    let generators = perfect_generating_sequence(first, order);
    let rows = generators
        .terms()
        .par_iter()
        .map(|g| generate_sequence(g, order))
        .collect();
    Ok(ChromoformMatrix {
        first: first.clone(),
        order,
        rows,
    })
}

/// Parity words of a table, one packed u64 per row: bit j of a row is
/// the indicator i_{j+1} of its generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructuralMatrix {
    order: u64,
    rows: Vec<u64>,
}

impl StructuralMatrix {
    /// # Panics
    /// If the order exceeds 62 or any row has bits outside the order.
    pub fn from_packed(order: u64, rows: Vec<u64>) -> Self {
        assert!(
            (1..=HARD_ORDER_LIMIT).contains(&order),
            "structural orders lie in [1, 62]"
        );
        let mask = row_mask(order);
        assert!(
            rows.iter().all(|&r| r & !mask == 0),
            "row bits exceed the order"
        );
        StructuralMatrix { order, rows }
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn packed_rows(&self) -> &[u64] {
        &self.rows
    }

    pub fn row_count(&self) -> usize {
        self.rows.len()
    }

    pub fn word(&self, row: usize) -> ParityWord {
        unpack_word(self.rows[row], self.order)
    }

    pub fn words(&self) -> Vec<ParityWord> {
        self.rows
            .iter()
            .map(|&r| unpack_word(r, self.order))
            .collect()
    }
}

fn row_mask(order: u64) -> u64 {
    if order == 64 {
        u64::MAX
    } else {
        (1u64 << order) - 1
    }
}

fn pack_word(bits: impl Iterator<Item = u8>) -> u64 {
    let mut row = 0u64;
    for (j, b) in bits.enumerate() {
        row |= u64::from(b) << j;
    }
    row
}

fn unpack_word(row: u64, order: u64) -> ParityWord {
    let bits = (0..order).map(|j| ((row >> j) & 1) as u8).collect();
    ParityWord::new(bits, Convention::Generated).expect("order >= 1")
}

/// The generated parity word of each row, in row order.
pub fn structural_matrix(m: &ChromoformMatrix) -> StructuralMatrix {
    let rows = m
        .rows
        .par_iter()
        .map(|row| pack_word(row.word().bits().iter().copied()))
        .collect();
    StructuralMatrix {
        order: m.order,
        rows,
    }
}

/// Generated parities of the first `order` iterates of a residue class.
/// Exact for order <= 62: each halving costs one known low bit, and the
/// word of a generator depends only on its residue mod 2^{order+1}.
fn packed_word_of_residue(mut x: u64, order: u64) -> u64 {
    let mut row = 0u64;
    for j in 0..order {
        x = if x & 1 == 1 {
            x.wrapping_mul(3).wrapping_add(1) >> 1
        } else {
            x >> 1
        };
        row |= (x & 1) << j;
    }
    row
}

pub fn structural_matrix_direct(first: &Natural, order: u64) -> Result<StructuralMatrix> {
    structural_matrix_direct_with_cap(first, order, DEFAULT_ORDER_CAP)
}

/// Builds the structural matrix without materializing big-integer terms,
/// stepping 2^n residues in machine words. Equals
/// structural_matrix(build_chromoform(first, order)) row for row.
pub fn structural_matrix_direct_with_cap(
    first: &Natural,
    order: u64,
    cap: u64,
) -> Result<StructuralMatrix> {
    guard_order(order, cap)?;
    assert!(!first.is_zero(), "generators start at 1");
    let modulus = 1u64 << (order + 1);
    let base = (first % Natural::from(modulus))
        .to_u64()
        .expect("residue fits u64");
    let rows = (0..1u64 << order)
        .into_par_iter()
        .map(|j| {
            let g = (base + 2 * j) & (modulus - 1);
            let g = if g == 0 { modulus } else { g };
            packed_word_of_residue(g, order)
        })
        .collect();
    Ok(StructuralMatrix { order, rows })
}

/// True iff the rows enumerate every length-n word exactly once, by an
/// exact presence bitset of 2^n bits.
pub fn verify_completeness(s: &StructuralMatrix) -> bool {
    let expected = 1usize << s.order;
    if s.rows.len() != expected {
        return false;
    }
    let mut seen = vec![0u64; expected.div_ceil(64)];
    for &row in &s.rows {
        let slot = (row / 64) as usize;
        let bit = 1u64 << (row % 64);
        if seen[slot] & bit != 0 {
            return false;
        }
        seen[slot] |= bit;
    }
    true
}

/// A finite prefix of a chromologue: q mutually isoform rows whose
/// generators march along the super-sequence of the fundamental one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FractionalChromologue {
    fundamental: Natural,
    order: u64,
    rows: Vec<GeneratedSequence>,
}

impl FractionalChromologue {
    pub fn fundamental(&self) -> &Natural {
        &self.fundamental
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn rows(&self) -> &[GeneratedSequence] {
        &self.rows
    }

    pub fn row_count(&self) -> usize {
        self.rows.len()
    }

    /// The shared parity word, read off the first row.
    pub fn characteristic_word(&self) -> ParityWord {
        self.rows[0].word()
    }
}

fn assert_isoform_rows(rows: &[GeneratedSequence]) {
    debug_assert!(
        rows.windows(2).all(|w| w[0].word() == w[1].word()),
        "chromologue rows must share one parity word"
    );
}

pub fn build_chromologue(fundamental: &Natural, order: u64, q: u64) -> FractionalChromologue {
    assert!(q >= 1, "chromologues have at least one row");
    let generators = super_sequence_prefix(fundamental, order, q);
    let rows: Vec<GeneratedSequence> = generators
        .terms()
        .par_iter()
        .map(|g| generate_sequence(g, order))
        .collect();
    assert_isoform_rows(&rows);
    FractionalChromologue {
        fundamental: fundamental.clone(),
        order,
        rows,
    }
}

/// A chromologue whose rows were iterated k columns further. With 2^k
/// rows, the k new columns form a complete order-k arrangement table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProlongedChromologue {
    fundamental: Natural,
    base_order: u64,
    extension: u64,
    rows: Vec<GeneratedSequence>,
}

impl ProlongedChromologue {
    pub fn fundamental(&self) -> &Natural {
        &self.fundamental
    }

    pub fn base_order(&self) -> u64 {
        self.base_order
    }

    pub fn extension(&self) -> u64 {
        self.extension
    }

    /// Rows of length base_order + extension.
    pub fn rows(&self) -> &[GeneratedSequence] {
        &self.rows
    }

    /// The order-k table formed by the k extension columns.
    ///
    /// # Panics
    /// If the extension is zero; there is no empty word.
    pub fn suffix_structural(&self) -> StructuralMatrix {
        assert!(self.extension >= 1, "suffix table needs extension >= 1");
        let skip = self.base_order as usize;
        let rows = self
            .rows
            .iter()
            .map(|row| pack_word(row.word().bits()[skip..].iter().copied()))
            .collect();
        StructuralMatrix {
            order: self.extension,
            rows,
        }
    }
}

/// Extends every row of a 2^k-row chromologue by k further iterates.
pub fn prolong_chromologue(c: &FractionalChromologue, k: u64) -> Result<ProlongedChromologue> {
    let expected = 1u64 << k;
    let actual = c.rows.len() as u64;
    if actual != expected {
        return Err(Error::RowCountMismatch {
            extension: k,
            expected,
            actual,
        });
    }
    let rows = c
        .rows
        .par_iter()
        .map(|row| generate_sequence(row.generator(), c.order + k))
        .collect();
    Ok(ProlongedChromologue {
        fundamental: c.fundamental.clone(),
        base_order: c.order,
        extension: k,
        rows,
    })
}

/// One half of a decomposed chromoform: the rows whose first generated
/// term has the named parity, in original row order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecomposedHalf {
    order: u64,
    rows: Vec<GeneratedSequence>,
}

impl DecomposedHalf {
    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn rows(&self) -> &[GeneratedSequence] {
        &self.rows
    }

    pub fn generators(&self) -> Vec<Natural> {
        self.rows.iter().map(|r| r.generator().clone()).collect()
    }

    /// Order-(n-1) table left after dropping the first column.
    pub fn reduced_structural(&self) -> StructuralMatrix {
        let rows = self
            .rows
            .iter()
            .map(|row| pack_word(row.word().bits()[1..].iter().copied()))
            .collect();
        StructuralMatrix {
            order: self.order - 1,
            rows,
        }
    }
}

/// A chromoform split by the parity of T_1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub even_t1: DecomposedHalf,
    pub odd_t1: DecomposedHalf,
}

/// Splits the 2^n rows by parity of the first generated term. Each half
/// holds 2^{n-1} rows and, first column dropped, is a complete
/// order-(n-1) table.
pub fn decompose_perfect(m: &ChromoformMatrix) -> Result<Decomposition> {
    if m.order < 2 {
        return Err(Error::OrderTooSmall {
            order: m.order,
            min: 2,
        });
    }
    let (even, odd): (Vec<GeneratedSequence>, Vec<GeneratedSequence>) = m
        .rows
        .iter()
        .cloned()
        .partition(|row| row.word().bit(0) == 0);
    assert_eq!(
        even.len(),
        odd.len(),
        "T_1 parities split a chromoform evenly"
    );
    Ok(Decomposition {
        even_t1: DecomposedHalf {
            order: m.order,
            rows: even,
        },
        odd_t1: DecomposedHalf {
            order: m.order,
            rows: odd,
        },
    })
}

/// The first `count` chromoforms of the polychromoform: block k is built
/// over the perfect generating sequence starting at first + (k-1) 2^{n+1}.
/// All blocks share one structural matrix.
pub fn polychromoform_prefix(
    first: &Natural,
    order: u64,
    count: u64,
) -> Result<Vec<ChromoformMatrix>> {
    polychromoform_prefix_with_cap(first, order, count, DEFAULT_ORDER_CAP)
}

pub fn polychromoform_prefix_with_cap(
    first: &Natural,
    order: u64,
    count: u64,
    cap: u64,
) -> Result<Vec<ChromoformMatrix>> {
    assert!(count >= 1, "prefixes have at least one block");
    guard_order(order, cap)?;
    let step = Natural::from(1u8) << (order + 1);
    let mut blocks = Vec::with_capacity(count as usize);
    let mut block_first = first.clone();
    for _ in 0..count {
        blocks.push(build_chromoform_with_cap(&block_first, order, cap)?);
        block_first += &step;
    }
    Ok(blocks)
}

/// Regroups a polychromoform prefix of q blocks into its 2^n chromologues
/// of q rows each: chromologue j collects row j of every block. This is
/// the transpose view of the block list.
pub fn super_decompose(blocks: &[ChromoformMatrix]) -> Vec<FractionalChromologue> {
    assert!(!blocks.is_empty(), "need at least one block");
    let order = blocks[0].order;
    assert!(
        blocks.iter().all(|b| b.order == order),
        "blocks must share one order"
    );
    let row_count = blocks[0].rows.len();
    (0..row_count)
        .map(|j| {
            let rows: Vec<GeneratedSequence> = blocks.iter().map(|b| b.rows[j].clone()).collect();
            assert_isoform_rows(&rows);
            FractionalChromologue {
                fundamental: rows[0].generator().clone(),
                order,
                rows,
            }
        })
        .collect()
}
