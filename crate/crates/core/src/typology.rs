//! The three-way type partition of each group, the valuation images of the
//! classes, and the equal-count block split of Fibonacci-word prefixes.
//!
//! An element `u` has type `X`, for `X` one of `(01)^l`, `(10)^l`, `(11)^l`,
//! when `N(u) + N(-u) = N(X)`. The partition also has a shape description
//! in terms of the leading zero run and the final letter. With the
//! positional valuation used throughout the crate it holds when the word is
//! read from index 0 ([`STRUCTURAL_READING`]) and the pattern labels `(01)`
//! and `(10)` are exchanged.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::fibcore::{fib_u64, fibonacci_word_prefix, CircWord, Letter, LetterWord};
use crate::group::{self, enumerate_bounded, neg, scalar_mul, GroupElement};
use crate::orderq::pi_words;
use crate::rewrite::{alt_identity_word, identity_word};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TypeTag {
    T01,
    T10,
    T11,
}

impl TypeTag {
    pub const ALL: [TypeTag; 3] = [TypeTag::T01, TypeTag::T10, TypeTag::T11];

    /// The word `X` of length `2l` naming the class.
    pub fn word(self, ell: usize) -> CircWord {
        let n = 2 * ell;
        match self {
            TypeTag::T01 => identity_word(n),
            TypeTag::T10 => alt_identity_word(n),
            TypeTag::T11 => CircWord::new(vec![1; n]).expect("nonempty"),
        }
    }

    /// The tag with `01` and `10` exchanged.
    pub fn mirror(self) -> TypeTag {
        match self {
            TypeTag::T01 => TypeTag::T10,
            TypeTag::T10 => TypeTag::T01,
            TypeTag::T11 => TypeTag::T11,
        }
    }
}

impl fmt::Display for TypeTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TypeTag::T01 => "T01",
            TypeTag::T10 => "T10",
            TypeTag::T11 => "T11",
        })
    }
}

/// Type by the valuation equation. The identity is put in `T01`, as its
/// stored representative is `(01)^l`.
pub fn classify(u: &GroupElement) -> Result<TypeTag> {
    if u.is_identity() {
        return Ok(TypeTag::T01);
    }
    let ell = u.ell();
    let sum = u.valuation() + neg(u).valuation();
    let hits: Vec<TypeTag> = TypeTag::ALL
        .into_iter()
        .filter(|t| t.word(ell).valuation() == sum)
        .collect();
    match hits.as_slice() {
        [tag] => Ok(*tag),
        [] => Err(Error::PartitionFailure(format!(
            "N({u}) + N(-{u}) = {sum} matches no class"
        ))),
        _ => Err(Error::PartitionFailure(format!(
            "N({u}) + N(-{u}) = {sum} matches several classes"
        ))),
    }
}

/// Which end of the stored word the shape description starts from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Reading {
    /// Index 0 first.
    FromOrigin,
    /// Last index first.
    TowardOrigin,
}

/// Fixed by agreement with [`classify`] on the group for `l = 2`, and
/// cross-checked for every element up to `l = 7`.
pub const STRUCTURAL_READING: Reading = Reading::FromOrigin;

/// Type by shape, with the pattern labels mirrored: a leading zero run of
/// odd length gives `T01`; of even length, the final letter picks `T10` (0)
/// or `T11` (1).
pub fn structural_class(u: &GroupElement) -> Result<TypeTag> {
    structural_class_read(u.word(), STRUCTURAL_READING).map(TypeTag::mirror)
}

/// The pattern's own labels: odd leading zero run gives `T10`; even, the
/// final letter picks `T01` (0) or `T11` (1).
pub fn structural_class_read(w: &CircWord, reading: Reading) -> Result<TypeTag> {
    if w.len().is_multiple_of(2)
        && (*w == identity_word(w.len()) || *w == alt_identity_word(w.len()))
    {
        return Err(Error::Classification(format!(
            "{w} represents the identity; its type is a convention"
        )));
    }
    let mut letters: Vec<u32> = w.digits().to_vec();
    if reading == Reading::TowardOrigin {
        letters.reverse();
    }
    let zeros = letters
        .iter()
        .position(|&d| d == 1)
        .ok_or_else(|| Error::Classification(format!("{w} has no 1")))?;
    if letters.iter().any(|&d| d > 1) {
        return Err(Error::Classification(format!("{w} is not binary")));
    }
    if zeros % 2 == 1 {
        return Ok(TypeTag::T10);
    }
    match letters.last() {
        Some(0) => Ok(TypeTag::T01),
        Some(1) => Ok(TypeTag::T11),
        _ => Err(Error::Classification(format!("{w} has no final letter"))),
    }
}

pub type ImageMap = BTreeMap<TypeTag, BTreeSet<BigUint>>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ImageSets {
    pub ell: usize,
    /// `{ N(u) : u of type X }`, `(01)^l` in `T01` and `(10)^l` in `T10`.
    pub computed: ImageMap,
    /// The closed-form sets over Fibonacci-word prefix counts.
    pub formula: ImageMap,
}

impl ImageSets {
    /// The constant `c` with `computed = formula + c` for `tag`, if any.
    pub fn offset(&self, tag: TypeTag) -> Option<BigInt> {
        fitted_offset(&self.computed[&tag], &self.formula[&tag])
    }
}

/// `c` with `a = { x + c : x in b }`; `Some(0)` for two empty sets.
pub fn fitted_offset(a: &BTreeSet<BigUint>, b: &BTreeSet<BigUint>) -> Option<BigInt> {
    if a.len() != b.len() {
        return None;
    }
    let diffs: BTreeSet<BigInt> = a
        .iter()
        .zip(b)
        .map(|(x, y)| BigInt::from(x.clone()) - BigInt::from(y.clone()))
        .collect();
    match diffs.len() {
        0 => Some(BigInt::from(0)),
        1 => diffs.into_iter().next(),
        _ => None,
    }
}

/// `(|M_k|_a, |M_k|_b)` for `0 <= k < count`.
fn prefix_counts(count: usize) -> Vec<(u64, u64)> {
    let m = fibonacci_word_prefix(count);
    let mut out = Vec::with_capacity(count);
    let (mut a, mut b) = (0u64, 0u64);
    out.push((0, 0));
    for &l in m.letters().iter().take(count.saturating_sub(1)) {
        match l {
            Letter::A => a += 1,
            Letter::B => b += 1,
        }
        out.push((a, b));
    }
    out.truncate(count);
    out
}

/// The three closed-form image sets for `l`.
pub fn formula_sets(ell: usize) -> ImageMap {
    let l = ell as i64;
    let count_10 = fib_u64(2 * l - 2) as usize;
    // F(2l-5) - 1 prefixes, none while the index is below -2
    let count_11 = if 2 * l - 5 >= -2 {
        (fib_u64(2 * l - 5) as usize).saturating_sub(1)
    } else {
        0
    };
    let offset_11 = fib_u64(2 * l - 1) + 3;
    let long = prefix_counts(count_10.max(count_11));
    let mut out = ImageMap::new();
    out.insert(
        TypeTag::T10,
        long[..count_10]
            .iter()
            .map(|&(a, b)| BigUint::from(1 + 2 * a + b))
            .collect(),
    );
    out.insert(
        TypeTag::T01,
        long[..count_10]
            .iter()
            .map(|&(a, b)| BigUint::from(1 + 3 * a + 2 * b))
            .collect(),
    );
    out.insert(
        TypeTag::T11,
        long[..count_11]
            .iter()
            .map(|&(a, b)| BigUint::from(offset_11 + 5 * a + 3 * b))
            .collect(),
    );
    out
}

/// Valuation images of each class, next to the closed forms.
pub fn image_sets(ell: usize, max_ell: usize) -> Result<ImageSets> {
    let elements = enumerate_bounded(ell, max_ell)?;
    let mut computed: ImageMap = TypeTag::ALL
        .into_iter()
        .map(|t| (t, BTreeSet::new()))
        .collect();
    for u in &elements {
        let tag = classify(u)?;
        computed
            .get_mut(&tag)
            .expect("all tags")
            .insert(u.valuation());
    }
    computed
        .get_mut(&TypeTag::T10)
        .expect("all tags")
        .insert(alt_identity_word(2 * ell).valuation());
    Ok(ImageSets {
        ell,
        computed,
        formula: formula_sets(ell),
    })
}

/// Words of each class, identity representatives included.
pub fn class_words(ell: usize, max_ell: usize) -> Result<BTreeMap<TypeTag, BTreeSet<CircWord>>> {
    let mut out: BTreeMap<TypeTag, BTreeSet<CircWord>> = TypeTag::ALL
        .into_iter()
        .map(|t| (t, BTreeSet::new()))
        .collect();
    for u in enumerate_bounded(ell, max_ell)? {
        let tag = classify(&u)?;
        out.get_mut(&tag).expect("all tags").insert(u.into_word());
    }
    out.get_mut(&TypeTag::T10)
        .expect("all tags")
        .insert(alt_identity_word(2 * ell));
    Ok(out)
}

/// Rotation carries the `T10` class onto the `T01` class.
pub fn sigma_relation_check(ell: usize, max_ell: usize) -> Result<bool> {
    let classes = class_words(ell, max_ell)?;
    let rotated: BTreeSet<CircWord> = classes[&TypeTag::T10]
        .iter()
        .map(CircWord::rotate)
        .collect();
    Ok(rotated.len() == classes[&TypeTag::T10].len() && rotated == classes[&TypeTag::T01])
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionBlock {
    pub index: usize,
    pub block: LetterWord,
    pub a_count: usize,
    pub b_count: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FibPartition {
    pub ell: usize,
    pub block_len: usize,
    pub blocks: Vec<PartitionBlock>,
    pub trailing: Letter,
}

impl FibPartition {
    pub fn counts_constant(&self) -> bool {
        self.blocks
            .windows(2)
            .all(|p| (p[0].a_count, p[0].b_count) == (p[1].a_count, p[1].b_count))
    }
}

/// `b` followed by the Fibonacci-word prefix of length `F(2l-2)`.
pub fn partition_word(ell: usize) -> LetterWord {
    let len = fib_u64(2 * ell as i64 - 2) as usize;
    let mut letters = vec![Letter::B];
    letters.extend_from_slice(fibonacci_word_prefix(len).letters());
    LetterWord::new(letters)
}

/// Block length `F(2l-2) / d(l)`, so that there are `d(l)` blocks. For even
/// `l` this is `F(l-1) + F(l-3)`.
pub fn partition_block_len(ell: usize) -> usize {
    let total = fib_u64(2 * ell as i64 - 2);
    (total / group::d_value_u64(ell)) as usize
}

/// Lucas-style block length `F(l-1) + F(l-3)`. Gives equal counts for even
/// `l`; for odd `l >= 5` the number of `a`s is not divisible by the block
/// count.
pub fn lucas_block_len(ell: usize) -> usize {
    let l = ell as i64;
    (fib_u64(l - 1) + fib_u64(l - 3)) as usize
}

/// Splits `b M_{F(2l-2)}` into `d(l)` equal blocks and a trailing `a`.
pub fn fib_partition(ell: usize) -> Result<FibPartition> {
    if ell <= 2 {
        return Err(Error::domain(format!("l = {ell} must exceed 2")));
    }
    split_with_block_len(ell, partition_block_len(ell))
}

/// Same split with any block length dividing `F(2l-2)`.
pub fn split_with_block_len(ell: usize, block_len: usize) -> Result<FibPartition> {
    let word = partition_word(ell);
    let body = word.len() - 1;
    if block_len == 0 || !body.is_multiple_of(block_len) {
        return Err(Error::PartitionFailure(format!(
            "block length {block_len} does not divide {body}"
        )));
    }
    let trailing = *word.letters().last().expect("nonempty");
    if trailing != Letter::A {
        return Err(Error::PartitionFailure(format!(
            "l = {ell}: trailing letter is b"
        )));
    }
    let blocks = (0..body / block_len)
        .map(|i| {
            let block = word.slice(i * block_len, (i + 1) * block_len);
            let (a_count, b_count) = block.counts();
            PartitionBlock {
                index: i + 1,
                block,
                a_count,
                b_count,
            }
        })
        .collect();
    Ok(FibPartition {
        ell,
        block_len,
        blocks,
        trailing,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KPiReport {
    pub ell: usize,
    pub q: u64,
    /// Types of `k P` for `1 <= k < q`.
    pub pi_tags: Vec<TypeTag>,
    /// Types of `k P'` for `1 <= k < q`.
    pub pi_prime_tags: Vec<TypeTag>,
}

impl KPiReport {
    fn single(tags: &[TypeTag]) -> Option<TypeTag> {
        let first = *tags.first()?;
        tags.iter().all(|&t| t == first).then_some(first)
    }

    pub fn pi_family(&self) -> Option<TypeTag> {
        Self::single(&self.pi_tags)
    }

    pub fn pi_prime_family(&self) -> Option<TypeTag> {
        Self::single(&self.pi_prime_tags)
    }

    /// One tag per family, and different tags for the two families.
    pub fn single_tag_per_family(&self) -> bool {
        matches!((self.pi_family(), self.pi_prime_family()), (Some(a), Some(b)) if a != b)
    }

    /// `P` multiples in `T10` and `P'` multiples in `T01`.
    pub fn literal_labels(&self) -> bool {
        self.pi_family() == Some(TypeTag::T10) && self.pi_prime_family() == Some(TypeTag::T01)
    }

    /// The same with `01` and `10` exchanged.
    pub fn mirrored_labels(&self) -> bool {
        self.pi_family() == Some(TypeTag::T01) && self.pi_prime_family() == Some(TypeTag::T10)
    }
}

/// Types of the multiples of `P` and `P'` for `q = d(l)`.
pub fn k_pi_type_check(ell: usize) -> Result<KPiReport> {
    let q = group::d_value(ell)
        .to_u64()
        .ok_or_else(|| Error::Resource(format!("d({ell}) does not fit in u64")))?;
    if q < 2 {
        return Err(Error::domain(format!("d({ell}) = {q} is below 2")));
    }
    let (pi, pi_prime) = pi_words(q)?;
    let tags = |u: &GroupElement| -> Result<Vec<TypeTag>> {
        (1..q as i64).map(|k| classify(&scalar_mul(k, u))).collect()
    };
    Ok(KPiReport {
        ell,
        q,
        pi_tags: tags(&pi)?,
        pi_prime_tags: tags(&pi_prime)?,
    })
}

/// `N(i P) - N((i-1) P) = N(P)` for `1 <= i <= q = d(l)`, with `N(0 P) = 0`.
/// Returns the first failing `i`, if any.
pub fn consecutive_multiples_check(ell: usize) -> Result<Option<u64>> {
    let q = group::d_value(ell)
        .to_u64()
        .ok_or_else(|| Error::Resource(format!("d({ell}) does not fit in u64")))?;
    let (pi, _) = pi_words(q)?;
    let step = BigInt::from(pi.valuation());
    let mut prev = BigInt::from(0);
    let mut acc = pi.clone();
    for i in 1..=q {
        if i > 1 {
            acc = group::add(&acc, &pi)?;
        }
        let cur = BigInt::from(acc.valuation());
        if &cur - &prev != step {
            return Ok(Some(i));
        }
        prev = cur;
    }
    Ok(None)
}
