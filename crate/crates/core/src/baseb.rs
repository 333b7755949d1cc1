//! Punctured circular words in an integer base `b`: addition with the final
//! carry fed back into the rightmost digit, and the periods of `1/q`.
//!
//! Unlike the rest of the crate, words here are written most significant
//! digit first, as in ordinary decimal notation: `142857`.

use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BaseBWord {
    digits: Vec<u32>,
    base: u32,
}

impl BaseBWord {
    pub fn new(digits: Vec<u32>, base: u32) -> Result<Self> {
        if base < 2 {
            return Err(Error::domain(format!("base {base} must exceed 1")));
        }
        if digits.is_empty() {
            return Err(Error::domain("base-b words have length at least 1"));
        }
        if let Some(d) = digits.iter().find(|&&d| d >= base) {
            return Err(Error::domain(format!("digit {d} is not below base {base}")));
        }
        Ok(BaseBWord { digits, base })
    }

    /// Decimal-style parse: one character per digit, bases up to 36.
    pub fn parse(s: &str, base: u32) -> Result<Self> {
        let digits = s
            .trim()
            .chars()
            .map(|c| {
                c.to_digit(36)
                    .ok_or_else(|| Error::Parse(format!("bad digit {c:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        BaseBWord::new(digits, base)
    }

    /// The length-`len` word of `value mod (b^len - 1)`, zero class as `0^len`.
    pub fn from_value(value: &BigUint, base: u32, len: usize) -> Result<Self> {
        if len == 0 {
            return Err(Error::domain("length must be positive"));
        }
        let modulus = BigUint::from(base).pow(len as u32) - 1u32;
        let mut v = value % &modulus;
        let mut digits = vec![0u32; len];
        for slot in digits.iter_mut().rev() {
            *slot = (&v % base).to_u32().expect("digit below base");
            v /= base;
        }
        BaseBWord::new(digits, base)
    }

    pub fn digits(&self) -> &[u32] {
        &self.digits
    }

    pub fn base(&self) -> u32 {
        self.base
    }

    pub fn len(&self) -> usize {
        self.digits.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn value(&self) -> BigUint {
        self.digits
            .iter()
            .fold(BigUint::zero(), |acc, &d| acc * self.base + d)
    }

    fn is_all_max(&self) -> bool {
        self.digits.iter().all(|&d| d == self.base - 1)
    }

    fn canonical(mut self) -> Self {
        if self.is_all_max() {
            self.digits.iter_mut().for_each(|d| *d = 0);
        }
        self
    }
}

impl fmt::Display for BaseBWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &d in &self.digits {
            let c = char::from_digit(d, 36).unwrap_or('?');
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

/// Schoolbook addition from the right; a carry out of the leftmost digit
/// re-enters at the rightmost one. `(b-1)^n` comes back as `0^n`.
pub fn circ_add_base_b(u: &BaseBWord, v: &BaseBWord) -> Result<BaseBWord> {
    if u.base != v.base || u.len() != v.len() {
        return Err(Error::domain(format!(
            "cannot add {u} (base {}) and {v} (base {})",
            u.base, v.base
        )));
    }
    let b = u.base;
    let mut out: Vec<u32> = u.digits.iter().zip(&v.digits).map(|(x, y)| x + y).collect();
    loop {
        let mut carry = 0;
        for d in out.iter_mut().rev() {
            let t = *d + carry;
            *d = t % b;
            carry = t / b;
        }
        if carry == 0 {
            break;
        }
        *out.last_mut().expect("nonempty") += carry;
    }
    Ok(BaseBWord {
        digits: out,
        base: b,
    }
    .canonical())
}

/// Multiplicative order of `b` modulo `q`.
fn multiplicative_order(b: u64, q: u64) -> u64 {
    if q == 1 {
        return 1;
    }
    let mut x = b % q;
    let mut n = 1;
    while x != 1 {
        x = x * b % q;
        n += 1;
    }
    n
}

/// Period of `1/q` in base `b`: the word of `(b^n - 1)/q`, `n` the order of
/// `b` mod `q`, leading zeros kept.
pub fn period_word(b: u32, q: u64) -> Result<BaseBWord> {
    if b < 2 {
        return Err(Error::domain(format!("base {b} must exceed 1")));
    }
    if q == 0 || u64::from(b).gcd(&q) != 1 {
        return Err(Error::domain(format!(
            "1/{q} is not purely periodic in base {b}"
        )));
    }
    let n = multiplicative_order(u64::from(b), q);
    let value = (BigUint::from(b).pow(n as u32) - BigUint::one()) / q;
    BaseBWord::from_value(&value, b, n as usize)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultipleRow {
    pub i: u64,
    /// `i * P` by repeated circular addition.
    pub by_addition: BaseBWord,
    /// The word of the integer `i * value(P)`.
    pub by_value: BaseBWord,
}

impl MultipleRow {
    pub fn agrees(&self) -> bool {
        self.by_addition == self.by_value
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclicGroupReport {
    pub base: u32,
    pub q: u64,
    pub period: BaseBWord,
    pub rows: Vec<MultipleRow>,
    pub last_is_zero: bool,
}

impl CyclicGroupReport {
    pub fn passed(&self) -> bool {
        self.last_is_zero && self.rows.iter().all(MultipleRow::agrees)
    }
}

/// Multiples `i * P` for `1 <= i <= q`: circular sums must match plain
/// integer multiples, and `q * P` must be the zero class.
pub fn verify_cyclic_group(b: u32, q: u64) -> Result<CyclicGroupReport> {
    let period = period_word(b, q)?;
    let n = period.len();
    let value = period.value();
    let mut acc = period.clone();
    let mut rows = Vec::with_capacity(q as usize);
    for i in 1..=q {
        if i > 1 {
            acc = circ_add_base_b(&acc, &period)?;
        }
        let by_value = BaseBWord::from_value(&(&value * i), b, n)?;
        rows.push(MultipleRow {
            i,
            by_addition: acc.clone(),
            by_value,
        });
    }
    let last_is_zero = rows
        .last()
        .map(|r| r.by_addition.digits.iter().all(|&d| d == 0))
        .unwrap_or(false);
    Ok(CyclicGroupReport {
        base: b,
        q,
        period,
        rows,
        last_is_zero,
    })
}

/// All words of length `n` in base `b`.
pub fn all_words(b: u32, n: usize) -> Vec<BaseBWord> {
    let total = (b as usize).pow(n as u32);
    (0..total)
        .map(|mut code| {
            let mut digits = vec![0u32; n];
            for slot in digits.iter_mut().rev() {
                *slot = (code % b as usize) as u32;
                code /= b as usize;
            }
            BaseBWord { digits, base: b }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dec(s: &str) -> BaseBWord {
        BaseBWord::parse(s, 10).unwrap()
    }

    #[test]
    fn addition_examples() {
        assert_eq!(
            circ_add_base_b(&dec("142857"), &dec("142857")).unwrap(),
            dec("285714")
        );
        assert_eq!(
            circ_add_base_b(&dec("142857"), &dec("857142")).unwrap(),
            dec("000000")
        );
        assert_eq!(circ_add_base_b(&dec("05"), &dec("05")).unwrap(), dec("10"));
        assert_eq!(
            circ_add_base_b(&dec("999"), &dec("001")).unwrap(),
            dec("001")
        );
        assert_eq!(
            circ_add_base_b(&dec("500"), &dec("600")).unwrap(),
            dec("101")
        );
    }

    #[test]
    fn addition_rejects_mismatch() {
        assert!(circ_add_base_b(&dec("05"), &dec("005")).is_err());
        let b2 = BaseBWord::parse("01", 2).unwrap();
        assert!(circ_add_base_b(&dec("01"), &b2).is_err());
        assert!(BaseBWord::parse("12", 2).is_err());
    }

    #[test]
    fn period_examples() {
        assert_eq!(period_word(10, 7).unwrap().to_string(), "142857");
        assert_eq!(period_word(10, 3).unwrap().to_string(), "3");
        assert_eq!(period_word(2, 3).unwrap().to_string(), "01");
        assert_eq!(period_word(10, 1).unwrap().to_string(), "0");
        assert!(period_word(10, 4).is_err());
        assert!(period_word(10, 0).is_err());
    }

    #[test]
    fn cyclic_group_for_seven() {
        let r = verify_cyclic_group(10, 7).unwrap();
        assert!(r.passed());
        let words: Vec<String> = r
            .rows
            .iter()
            .map(|row| row.by_addition.to_string())
            .collect();
        assert_eq!(
            words,
            ["142857", "285714", "428571", "571428", "714285", "857142", "000000"]
        );
    }

    #[test]
    fn cyclic_group_small_cases() {
        let r1 = verify_cyclic_group(10, 1).unwrap();
        assert!(r1.passed());
        assert_eq!(r1.period.to_string(), "0");
        let r3 = verify_cyclic_group(10, 3).unwrap();
        assert!(r3.passed());
        let words: Vec<String> = r3
            .rows
            .iter()
            .map(|row| row.by_addition.to_string())
            .collect();
        assert_eq!(words, ["3", "6", "0"]);
    }

    #[test]
    fn addition_is_associative_and_commutative() {
        for b in [2u32, 3] {
            for n in 1..=4 {
                let words = all_words(b, n);
                for x in &words {
                    for y in &words {
                        let xy = circ_add_base_b(x, y).unwrap();
                        assert_eq!(xy, circ_add_base_b(y, x).unwrap());
                        for z in &words {
                            assert_eq!(
                                circ_add_base_b(&xy, z).unwrap(),
                                circ_add_base_b(x, &circ_add_base_b(y, z).unwrap()).unwrap()
                            );
                        }
                    }
                }
            }
        }
    }
}
