//! Fibonacci conventions, digit words, the valuation `N`, the Zeckendorf
//! codec, cyclic admissibility and the Fibonacci word over `{a, b}`.
//!
//! The Fibonacci numbers here are shifted: `F(0) = 1`, `F(1) = 2`, so that
//! every Zeckendorf digit position carries a distinct weight. The sequence is
//! extended backwards with `F(-1) = 1`, `F(-2) = 0`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};

/// `F(k)` under the convention `F(0) = 1`, `F(1) = 2`, valid for `k >= -2`.
pub fn fib(k: i64) -> Result<BigUint> {
    match k {
        k if k < -2 => Err(Error::domain(format!("fib index {k} is below -2"))),
        -2 => Ok(BigUint::zero()),
        -1 | 0 => Ok(BigUint::from(1u32)),
        _ => {
            let (mut prev, mut cur) = (BigUint::from(1u32), BigUint::from(2u32));
            for _ in 1..k {
                let next = &prev + &cur;
                prev = std::mem::replace(&mut cur, next);
            }
            Ok(cur)
        }
    }
}

/// `F(k)` as a `u64`; panics past `k = 90`. Internal fast path.
pub(crate) fn fib_u64(k: i64) -> u64 {
    fib(k)
        .expect("fib index in range")
        .to_u64()
        .expect("fib value fits in u64")
}

/// The classical sequence `f(0) = 0`, `f(1) = f(2) = 1`.
pub fn classical_fib(n: u64) -> BigUint {
    let (mut a, mut b) = (BigUint::zero(), BigUint::from(1u32));
    for _ in 0..n {
        let next = &a + &b;
        a = std::mem::replace(&mut b, next);
    }
    a
}

/// `F(0), F(1), ..., F(len - 1)` as big integers.
pub fn fib_table(len: usize) -> Vec<BigUint> {
    let mut out: Vec<BigUint> = Vec::with_capacity(len);
    for i in 0..len {
        let v = match i {
            0 => BigUint::from(1u32),
            1 => BigUint::from(2u32),
            _ => &out[i - 1] + &out[i - 2],
        };
        out.push(v);
    }
    out
}

/// `sum(w[i] * F(i))`.
pub fn valuation(digits: &[u32]) -> BigUint {
    let mut total = BigUint::zero();
    let (mut f0, mut f1) = (BigUint::from(1u32), BigUint::from(2u32));
    for &d in digits {
        if d != 0 {
            total += &f0 * d;
        }
        let next = &f0 + &f1;
        f0 = std::mem::replace(&mut f1, next);
    }
    total
}

fn parse_digits(s: &str) -> Result<Vec<u32>> {
    let s = s.trim();
    let digits: Vec<u32> = if s.contains(',') {
        s.split(',')
            .map(|t| {
                t.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::Parse(format!("bad digit {t:?} in {s:?}")))
            })
            .collect::<Result<_>>()?
    } else {
        s.chars()
            .map(|c| {
                c.to_digit(10)
                    .ok_or_else(|| Error::Parse(format!("bad digit {c:?} in {s:?}")))
            })
            .collect::<Result<_>>()?
    };
    if digits.is_empty() {
        return Err(Error::Parse("empty word".into()));
    }
    Ok(digits)
}

fn fmt_digits(digits: &[u32], f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if digits.iter().all(|&d| d <= 9) {
        for d in digits {
            write!(f, "{d}")?;
        }
        Ok(())
    } else {
        let parts: Vec<String> = digits.iter().map(u32::to_string).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// A finite, nonempty word of nonnegative digits. Index 0 is the leftmost
/// and least significant position.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DigitWord(Vec<u32>);

impl DigitWord {
    pub fn new(digits: Vec<u32>) -> Result<Self> {
        if digits.is_empty() {
            return Err(Error::domain("digit words have length at least 1"));
        }
        Ok(DigitWord(digits))
    }

    pub fn zeros(len: usize) -> Result<Self> {
        DigitWord::new(vec![0; len])
    }

    pub fn digits(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn valuation(&self) -> BigUint {
        valuation(&self.0)
    }

    pub fn into_digits(self) -> Vec<u32> {
        self.0
    }
}

impl fmt::Display for DigitWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_digits(&self.0, f)
    }
}

impl FromStr for DigitWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        DigitWord::new(parse_digits(s)?)
    }
}

/// A digit word read cyclically, with a fixed origin. Equality is
/// positional: `1000` and `0001` are different circular words.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CircWord(Vec<u32>);

impl CircWord {
    pub fn new(digits: Vec<u32>) -> Result<Self> {
        if digits.is_empty() {
            return Err(Error::domain("circular words have length at least 1"));
        }
        Ok(CircWord(digits))
    }

    /// Bits `0`/`1` from a slice of booleans-as-bytes.
    pub fn from_bits(bits: &[u8]) -> Result<Self> {
        CircWord::new(bits.iter().map(|&b| u32::from(b)).collect())
    }

    pub fn digits(&self) -> &[u32] {
        &self.0
    }

    pub(crate) fn digits_mut(&mut self) -> &mut [u32] {
        &mut self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&d| d == 0)
    }

    pub fn max_digit(&self) -> u32 {
        self.0.iter().copied().max().unwrap_or(0)
    }

    /// Positional valuation: the origin is index 0.
    pub fn valuation(&self) -> BigUint {
        valuation(&self.0)
    }

    pub fn is_admissible(&self) -> bool {
        is_admissible(self)
    }

    pub fn rotate(&self) -> CircWord {
        rotate(self)
    }

    /// `self` concatenated with itself `times` times.
    pub fn repeat(&self, times: usize) -> Result<CircWord> {
        CircWord::new(self.0.repeat(times))
    }

    pub fn into_digits(self) -> Vec<u32> {
        self.0
    }
}

impl From<DigitWord> for CircWord {
    fn from(w: DigitWord) -> Self {
        CircWord(w.0)
    }
}

impl From<CircWord> for DigitWord {
    fn from(w: CircWord) -> Self {
        DigitWord(w.0)
    }
}

impl fmt::Display for CircWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_digits(&self.0, f)
    }
}

impl FromStr for CircWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        CircWord::new(parse_digits(s)?)
    }
}

/// Greedy Zeckendorf expansion of `n` into exactly `len` digits.
pub fn zeckendorf(n: &BigUint, len: usize) -> Result<DigitWord> {
    if len == 0 {
        return Err(Error::domain("zeckendorf length must be positive"));
    }
    let table = fib_table(len + 1);
    if n >= &table[len] {
        return Err(Error::Capacity {
            value: n.to_string(),
            len,
        });
    }
    let mut rest = n.clone();
    let mut digits = vec![0u32; len];
    for k in (0..len).rev() {
        if rest >= table[k] {
            rest -= &table[k];
            digits[k] = 1;
        }
    }
    debug_assert!(rest.is_zero());
    DigitWord::new(digits)
}

/// Binary, and no two cyclically adjacent ones (the wrap pair included).
pub fn is_admissible(w: &CircWord) -> bool {
    let d = w.digits();
    let n = d.len();
    if d.iter().any(|&x| x > 1) {
        return false;
    }
    if n == 1 {
        // the single letter is its own cyclic neighbour
        return d[0] == 0;
    }
    (0..n).all(|i| !(d[i] == 1 && d[(i + 1) % n] == 1))
}

/// `sigma(w0 ... w(n-1)) = w(n-1) w0 ... w(n-2)`.
pub fn rotate(w: &CircWord) -> CircWord {
    let mut d = w.digits().to_vec();
    d.rotate_right(1);
    CircWord(d)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    A,
    B,
}

/// A word over `{a, b}`. May be empty.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct LetterWord(Vec<Letter>);

impl LetterWord {
    pub fn new(letters: Vec<Letter>) -> Self {
        LetterWord(letters)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn counts(&self) -> (usize, usize) {
        letter_counts(self)
    }

    pub fn slice(&self, start: usize, end: usize) -> LetterWord {
        LetterWord(self.0[start..end].to_vec())
    }
}

impl fmt::Display for LetterWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.0 {
            f.write_str(match l {
                Letter::A => "a",
                Letter::B => "b",
            })?;
        }
        Ok(())
    }
}

impl FromStr for LetterWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.trim()
            .chars()
            .map(|c| match c {
                'a' => Ok(Letter::A),
                'b' => Ok(Letter::B),
                _ => Err(Error::Parse(format!("letter {c:?} is not a or b"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(LetterWord)
    }
}

/// Prefix of length `n` of the fixed point of `a -> ab, b -> a`.
pub fn fibonacci_word_prefix(n: usize) -> LetterWord {
    let mut word = vec![Letter::A];
    while word.len() < n {
        let mut next = Vec::with_capacity(word.len() * 2);
        for &l in &word {
            match l {
                Letter::A => next.extend([Letter::A, Letter::B]),
                Letter::B => next.push(Letter::A),
            }
        }
        word = next;
    }
    word.truncate(n);
    LetterWord(word)
}

pub fn letter_counts(w: &LetterWord) -> (usize, usize) {
    let a = w.0.iter().filter(|&&l| l == Letter::A).count();
    (a, w.0.len() - a)
}

/// True iff all factors of length `window` have `a`-counts within one of
/// each other.
pub fn check_balanced(w: &LetterWord, window: usize) -> Result<bool> {
    if window == 0 || window > w.len() {
        return Err(Error::domain(format!(
            "window {window} must lie in 1..={}",
            w.len()
        )));
    }
    let is_a = |i: usize| usize::from(w.0[i] == Letter::A);
    let mut count: usize = (0..window).map(is_a).sum();
    let (mut lo, mut hi) = (count, count);
    for end in window..w.len() {
        count = count + is_a(end) - is_a(end - window);
        lo = lo.min(count);
        hi = hi.max(count);
    }
    Ok(hi - lo <= 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn big(n: u64) -> BigUint {
        BigUint::from(n)
    }

    #[test]
    fn fib_conventions() {
        assert_eq!(fib(0).unwrap(), big(1));
        assert_eq!(fib(1).unwrap(), big(2));
        assert_eq!(fib(6).unwrap(), big(21));
        assert_eq!(fib(-1).unwrap(), big(1));
        assert_eq!(fib(-2).unwrap(), big(0));
        assert!(matches!(fib(-3), Err(Error::Domain(_))));
    }

    #[test]
    fn fib_recurrence_and_large_index() {
        for k in -1..200 {
            assert_eq!(fib(k).unwrap() + fib(k + 1).unwrap(), fib(k + 2).unwrap());
        }
        // F(k) = f(k + 2)
        assert_eq!(fib(198).unwrap(), classical_fib(200));
        assert_eq!(classical_fib(100).to_string(), "354224848179261915075");
    }

    #[test]
    fn valuation_examples() {
        assert_eq!(valuation(&[0, 0, 1, 0]), big(3));
        assert_eq!(valuation(&[0, 1, 0, 1, 0, 1]), big(20));
        assert_eq!(valuation(&[0, 0, 0, 2]), big(10));
    }

    #[test]
    fn zeckendorf_examples() {
        assert_eq!(zeckendorf(&big(5), 6).unwrap().to_string(), "000100");
        assert_eq!(zeckendorf(&big(0), 4).unwrap().to_string(), "0000");
        assert_eq!(zeckendorf(&big(18), 8).unwrap().to_string(), "00010100");
        assert!(matches!(
            zeckendorf(&big(8), 4),
            Err(Error::Capacity { .. })
        ));
        assert!(zeckendorf(&big(7), 4).is_ok());
    }

    #[test]
    fn zeckendorf_has_no_adjacent_ones_below_f12() {
        let f12 = fib_u64(12);
        for len in 1..=12usize {
            let cap = fib_u64(len as i64);
            for n in 0..f12.min(cap) {
                let w = zeckendorf(&big(n), len).unwrap();
                assert!(w.digits().windows(2).all(|p| p != [1, 1]));
                assert_eq!(w.valuation(), big(n));
            }
        }
    }

    #[test]
    fn admissibility_examples() {
        let adm = |s: &str| s.parse::<CircWord>().unwrap().is_admissible();
        assert!(adm("1000"));
        assert!(!adm("1001"));
        assert!(adm("0101"));
        assert!(!adm("0200"));
        assert!(!adm("1"));
        assert!(adm("0"));
    }

    #[test]
    fn rotate_examples() {
        let rot = |s: &str| s.parse::<CircWord>().unwrap().rotate().to_string();
        assert_eq!(rot("001000"), "000100");
        assert_eq!(rot("0"), "0");
        assert_eq!(rot("1000"), "0100");
    }

    #[test]
    fn word_text_syntax() {
        let w: CircWord = "0,12,3".parse().unwrap();
        assert_eq!(w.digits(), &[0, 12, 3]);
        assert_eq!(w.to_string(), "0,12,3");
        assert_eq!("010".parse::<CircWord>().unwrap().to_string(), "010");
        assert!("".parse::<CircWord>().is_err());
        assert!("01x".parse::<CircWord>().is_err());
    }

    #[test]
    fn fibonacci_word_examples() {
        assert_eq!(fibonacci_word_prefix(13).to_string(), "abaababaabaab");
        assert_eq!(fibonacci_word_prefix(0).to_string(), "");
        assert_eq!(fibonacci_word_prefix(8).to_string(), "abaababa");
    }

    #[test]
    fn letter_count_examples() {
        let c = |s: &str| letter_counts(&s.parse().unwrap());
        assert_eq!(c("abaababa"), (5, 3));
        assert_eq!(c(""), (0, 0));
        assert_eq!(c("bbb"), (0, 3));
    }

    #[test]
    fn balance_examples() {
        assert!(check_balanced(&fibonacci_word_prefix(100), 7).unwrap());
        assert!(!check_balanced(&"aabbaa".parse().unwrap(), 2).unwrap());
        let w: LetterWord = "aabbaa".parse().unwrap();
        assert!(check_balanced(&w, w.len()).unwrap());
        assert!(check_balanced(&w, 7).is_err());
    }

    #[test]
    fn prefix_a_counts_follow_fibonacci() {
        // |M of length f(k)|_a = f(k - 1)
        for k in 2..=15u64 {
            let len = classical_fib(k).to_usize().unwrap();
            let (a, b) = letter_counts(&fibonacci_word_prefix(len));
            assert_eq!(BigUint::from(a), classical_fib(k - 1));
            assert_eq!(BigUint::from(b), classical_fib(k - 2));
        }
    }

    proptest! {
        #[test]
        fn zeckendorf_round_trips_values(bits in proptest::collection::vec(0u32..=1, 1..24)) {
            let v = valuation(&bits);
            let z = zeckendorf(&v, bits.len() + 1).unwrap();
            prop_assert_eq!(z.valuation(), v);
        }

        #[test]
        fn rotating_len_times_is_identity(digits in proptest::collection::vec(0u32..4, 1..16)) {
            let w = CircWord::new(digits).unwrap();
            let mut r = w.clone();
            for _ in 0..w.len() {
                r = r.rotate();
            }
            prop_assert_eq!(r, w);
        }
    }
}
