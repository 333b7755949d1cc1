//! The groups of admissible circular words of length `2l`, with
//! `(01)^l = (10)^l` as identity.
//!
//! Elements carry their word in canonical form: `(10)^l` never appears, so
//! equality is plain positional equality.

use std::collections::{HashMap, HashSet};
use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};

use crate::error::{Error, Result};
use crate::fibcore::{classical_fib, fib, CircWord};
use crate::rewrite::{self, canonicalize_identity, identity_word};

/// Largest `l` that [`enumerate`] scans by default.
pub const DEFAULT_MAX_ELL: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement {
    word: CircWord,
}

impl GroupElement {
    /// Wraps an admissible word of even length containing a 1.
    pub fn new(word: CircWord) -> Result<Self> {
        if !word.len().is_multiple_of(2) {
            return Err(Error::domain(format!("{word} has odd length")));
        }
        if word.is_zero() {
            return Err(Error::ZeroWord);
        }
        if !word.is_admissible() {
            return Err(Error::domain(format!("{word} is not admissible")));
        }
        Ok(GroupElement {
            word: canonicalize_identity(word),
        })
    }

    /// Any nonzero word of even length, reduced to its normal form.
    pub fn from_any(word: &CircWord) -> Result<Self> {
        Ok(GroupElement {
            word: rewrite::normalize(word)?,
        })
    }

    pub(crate) fn from_normal(word: CircWord) -> Self {
        debug_assert!(word.is_admissible() && !word.is_zero());
        GroupElement { word }
    }

    pub fn word(&self) -> &CircWord {
        &self.word
    }

    pub fn into_word(self) -> CircWord {
        self.word
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn ell(&self) -> usize {
        self.word.len() / 2
    }

    pub fn is_identity(&self) -> bool {
        self.word == identity_word(self.word.len())
    }

    pub fn valuation(&self) -> BigUint {
        self.word.valuation()
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.word.fmt(f)
    }
}

pub fn identity(ell: usize) -> Result<GroupElement> {
    if ell < 1 {
        return Err(Error::domain("l must be at least 1"));
    }
    Ok(GroupElement {
        word: identity_word(2 * ell),
    })
}

/// Digit-wise sum, then normal form.
pub fn add(u: &GroupElement, v: &GroupElement) -> Result<GroupElement> {
    if u.len() != v.len() {
        return Err(Error::domain(format!(
            "cannot add elements of lengths {} and {}",
            u.len(),
            v.len()
        )));
    }
    let sum: Vec<u32> = u
        .word
        .digits()
        .iter()
        .zip(v.word.digits())
        .map(|(a, b)| a + b)
        .collect();
    let sum = CircWord::new(sum)?;
    Ok(GroupElement::from_normal(rewrite::normalize(&sum)?))
}

/// Complement every bit, then normal form.
pub fn neg(u: &GroupElement) -> GroupElement {
    let flipped: Vec<u32> = u.word.digits().iter().map(|&d| 1 - d).collect();
    let flipped = CircWord::new(flipped).expect("nonempty");
    GroupElement::from_normal(
        rewrite::normalize(&flipped).expect("complement of an element normalizes"),
    )
}

/// `k * u` by doubling; negative `k` goes through [`neg`].
pub fn scalar_mul(k: i64, u: &GroupElement) -> GroupElement {
    let base = if k < 0 { neg(u) } else { u.clone() };
    let mut k = k.unsigned_abs();
    let mut acc = identity(u.ell()).expect("l >= 1");
    let mut pow = base;
    while k > 0 {
        if k & 1 == 1 {
            acc = add(&acc, &pow).expect("same length");
        }
        k >>= 1;
        if k > 0 {
            pow = add(&pow, &pow).expect("same length");
        }
    }
    acc
}

/// Least `k >= 1` with `k * u` the identity.
pub fn element_order(u: &GroupElement) -> u64 {
    let mut k = 1;
    let mut acc = u.clone();
    while !acc.is_identity() {
        acc = add(&acc, u).expect("same length");
        k += 1;
    }
    k
}

/// All admissible circular binary words of length `n`, zero word included,
/// in lexicographic order.
pub fn admissible_words(n: usize) -> Vec<CircWord> {
    fn go(n: usize, buf: &mut Vec<u32>, out: &mut Vec<CircWord>) {
        if buf.len() == n {
            if !(n > 1 && buf[0] == 1 && buf[n - 1] == 1) {
                out.push(CircWord::new(buf.clone()).expect("nonempty"));
            }
            return;
        }
        buf.push(0);
        go(n, buf, out);
        buf.pop();
        if buf.last() != Some(&1) && n != 1 {
            buf.push(1);
            go(n, buf, out);
            buf.pop();
        }
    }
    let mut out = Vec::new();
    if n > 0 {
        go(n, &mut Vec::with_capacity(n), &mut out);
    }
    out
}

/// Every element of the group for `l`, in lexicographic word order.
pub fn enumerate(ell: usize) -> Result<Vec<GroupElement>> {
    enumerate_bounded(ell, DEFAULT_MAX_ELL)
}

pub fn enumerate_bounded(ell: usize, max_ell: usize) -> Result<Vec<GroupElement>> {
    if ell < 1 {
        return Err(Error::domain("l must be at least 1"));
    }
    if ell > max_ell {
        return Err(Error::Resource(format!(
            "enumeration of l = {ell} exceeds the bound {max_ell}"
        )));
    }
    let alt = rewrite::alt_identity_word(2 * ell);
    Ok(admissible_words(2 * ell)
        .into_iter()
        .filter(|w| !w.is_zero() && *w != alt)
        .map(GroupElement::from_normal)
        .collect())
}

pub type DFormula = fn(usize) -> BigUint;

/// `F(l-2)` for even `l`, `F(l-1) + F(l-3)` for odd `l`.
pub fn d_value(ell: usize) -> BigUint {
    let l = ell as i64;
    if ell.is_multiple_of(2) {
        fib(l - 2).expect("index >= -2")
    } else {
        fib(l - 1).expect("index >= -2") + fib(l - 3).expect("index >= -2")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupStructure {
    pub order: u64,
    /// `(e1, e2)` with `e2 | e1` and `e1 * e2 = order`.
    pub invariant_factors: (u64, u64),
    pub d: BigUint,
}

/// Invariant factors predicted from a `d` formula: `(d, d)` for odd `l`,
/// `(5d, d)` for even `l`.
pub fn predicted_factors(ell: usize, d_formula: DFormula) -> (BigUint, BigUint) {
    let d = d_formula(ell);
    if ell.is_multiple_of(2) {
        (&d * 5u32, d)
    } else {
        (d.clone(), d)
    }
}

/// Certificate that the group is `Z/e1 x Z/e2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub order: u64,
    pub exponent: u64,
    pub first_generator: GroupElement,
    pub second_generator: GroupElement,
}

/// Computes `(e1, e2)` from the elements alone: `e1` is the exponent, and a
/// second generator of order `order / e1` meeting the first cyclic subgroup
/// only in the identity must exist, or the group has rank above two.
pub fn certify(elements: &[GroupElement]) -> Result<Certificate> {
    let order = elements.len() as u64;
    let first = elements
        .first()
        .ok_or_else(|| Error::domain("empty group"))?;
    let orders: Vec<u64> = elements.iter().map(element_order).collect();
    let (g1_at, &exponent) = orders
        .iter()
        .enumerate()
        .max_by_key(|&(i, o)| (*o, std::cmp::Reverse(i)))
        .expect("nonempty");
    if !order.is_multiple_of(exponent) {
        return Err(Error::StructuralMismatch(format!(
            "exponent {exponent} does not divide order {order}"
        )));
    }
    let e2 = order / exponent;
    let g1 = elements[g1_at].clone();
    let cyclic = |g: &GroupElement| -> Vec<GroupElement> {
        let mut out = vec![identity(g.ell()).expect("l >= 1")];
        let mut acc = g.clone();
        while !acc.is_identity() {
            out.push(acc.clone());
            acc = add(&acc, g).expect("same length");
        }
        out
    };
    let h1: HashSet<GroupElement> = cyclic(&g1).into_iter().collect();
    let g2 = if e2 == 1 {
        identity(first.ell())?
    } else {
        elements
            .iter()
            .zip(&orders)
            .filter(|&(_, &o)| o == e2)
            .map(|(g, _)| g)
            .find(|g| cyclic(g).iter().all(|x| x.is_identity() || !h1.contains(x)))
            .cloned()
            .ok_or_else(|| {
                Error::StructuralMismatch(format!(
                    "no element of order {e2} splits off <{g1}> (order {order}, exponent {exponent})"
                ))
            })?
    };
    Ok(Certificate {
        order,
        exponent,
        first_generator: g1,
        second_generator: g2,
    })
}

/// Empirical invariant factors, checked against the `d` formula.
pub fn decompose(ell: usize) -> Result<GroupStructure> {
    decompose_against(ell, d_value, DEFAULT_MAX_ELL)
}

pub fn decompose_against(
    ell: usize,
    d_formula: DFormula,
    max_ell: usize,
) -> Result<GroupStructure> {
    let elements = enumerate_bounded(ell, max_ell)?;
    let cert = certify(&elements)?;
    let factors = (cert.exponent, cert.order / cert.exponent);
    let (p1, p2) = predicted_factors(ell, d_formula);
    if (BigUint::from(factors.0), BigUint::from(factors.1)) != (p1.clone(), p2.clone()) {
        return Err(Error::StructuralMismatch(format!(
            "l = {ell}: computed Z/{} x Z/{}, formula predicts Z/{p1} x Z/{p2}",
            factors.0, factors.1
        )));
    }
    Ok(GroupStructure {
        order: cert.order,
        invariant_factors: factors,
        d: d_formula(ell),
    })
}

/// `W -> W^n`, from the group for `l` into the group for `n * l`.
pub fn repeat_morphism(u: &GroupElement, n: usize) -> Result<GroupElement> {
    if n < 1 {
        return Err(Error::domain("repetition count must be at least 1"));
    }
    Ok(GroupElement::from_normal(u.word.repeat(n)?))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GcdFailure {
    pub m: usize,
    pub n: usize,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GcdReport {
    pub pairs_checked: usize,
    pub classical_checked: usize,
    pub failures: Vec<GcdFailure>,
}

impl GcdReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// `gcd(d(m), d(n)) = d(gcd(m, n))` for `2 <= m, n <= max_ell`, plus
/// `d(2l) = f(2l)` against the classical Fibonacci numbers.
pub fn gcd_property_report(max_ell: usize) -> Result<GcdReport> {
    gcd_property_report_with(max_ell, d_value)
}

pub fn gcd_property_report_with(max_ell: usize, d_formula: DFormula) -> Result<GcdReport> {
    if max_ell < 2 {
        return Err(Error::domain("max l must be at least 2"));
    }
    let ds: Vec<BigUint> = (0..=max_ell)
        .map(|l| if l == 0 { BigUint::one() } else { d_formula(l) })
        .collect();
    let mut report = GcdReport::default();
    for m in 2..=max_ell {
        for n in 2..=max_ell {
            report.pairs_checked += 1;
            let lhs = ds[m].gcd(&ds[n]);
            let rhs = &ds[m.gcd(&n)];
            if &lhs != rhs {
                report.failures.push(GcdFailure {
                    m,
                    n,
                    detail: format!(
                        "gcd({}, {}) = {lhs} but d({}) = {rhs}",
                        ds[m],
                        ds[n],
                        m.gcd(&n)
                    ),
                });
            }
        }
    }
    for l in 1..=max_ell / 2 {
        report.classical_checked += 1;
        let f = classical_fib(2 * l as u64);
        if ds[2 * l] != f {
            report.failures.push(GcdFailure {
                m: 2 * l,
                n: 2 * l,
                detail: format!("d({}) = {} but f({}) = {f}", 2 * l, ds[2 * l], 2 * l),
            });
        }
    }
    Ok(report)
}

/// An enumerated group with index lookup, for tables and handles.
#[derive(Debug, Clone)]
pub struct Group {
    ell: usize,
    elements: Vec<GroupElement>,
    index: HashMap<CircWord, usize>,
}

impl Group {
    pub fn new(ell: usize) -> Result<Self> {
        Self::with_bound(ell, DEFAULT_MAX_ELL)
    }

    pub fn with_bound(ell: usize, max_ell: usize) -> Result<Self> {
        Ok(Self::from_elements(ell, enumerate_bounded(ell, max_ell)?))
    }

    pub fn from_elements(ell: usize, elements: Vec<GroupElement>) -> Self {
        let index = elements
            .iter()
            .enumerate()
            .map(|(i, e)| (e.word().clone(), i))
            .collect();
        Group {
            ell,
            elements,
            index,
        }
    }

    pub fn ell(&self) -> usize {
        self.ell
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> Option<&GroupElement> {
        self.elements.get(i)
    }

    pub fn index_of(&self, w: &CircWord) -> Option<usize> {
        self.index.get(&canonicalize_identity(w.clone())).copied()
    }

    pub fn identity_index(&self) -> usize {
        self.index[&identity_word(2 * self.ell)]
    }

    pub fn add_indices(&self, a: usize, b: usize) -> Result<usize> {
        let (u, v) = self.pair(a, b)?;
        let s = add(u, v)?;
        Ok(self.index[s.word()])
    }

    pub fn neg_index(&self, a: usize) -> Result<usize> {
        let u = self
            .element(a)
            .ok_or_else(|| Error::domain(format!("index {a} out of range")))?;
        Ok(self.index[neg(u).word()])
    }

    fn pair(&self, a: usize, b: usize) -> Result<(&GroupElement, &GroupElement)> {
        match (self.element(a), self.element(b)) {
            (Some(u), Some(v)) => Ok((u, v)),
            _ => Err(Error::domain(format!(
                "index out of range for order {}",
                self.order()
            ))),
        }
    }

    /// `table[i][j]` is the index of `elements[i] + elements[j]`.
    pub fn cayley_table(&self) -> Vec<Vec<usize>> {
        (0..self.order())
            .map(|i| {
                (0..self.order())
                    .map(|j| self.add_indices(i, j).expect("indices in range"))
                    .collect()
            })
            .collect()
    }

    pub fn structure(&self) -> Result<GroupStructure> {
        let cert = certify(&self.elements)?;
        Ok(GroupStructure {
            order: cert.order,
            invariant_factors: (cert.exponent, cert.order / cert.exponent),
            d: d_value(self.ell),
        })
    }
}

/// `u64` view of [`d_value`] for small `l`.
pub fn d_value_u64(ell: usize) -> u64 {
    d_value(ell).to_u64().expect("d fits in u64")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(s: &str) -> GroupElement {
        GroupElement::new(s.parse().unwrap()).unwrap()
    }

    #[test]
    fn identity_examples() {
        assert_eq!(identity(2).unwrap(), e("0101"));
        assert_eq!(identity(1).unwrap(), e("01"));
        assert_eq!(identity(3).unwrap(), e("010101"));
        assert!(identity(0).is_err());
        assert_eq!(e("1010"), e("0101"));
    }

    #[test]
    fn element_validation() {
        assert!(matches!(
            GroupElement::new("0000".parse().unwrap()),
            Err(Error::ZeroWord)
        ));
        assert!(GroupElement::new("1001".parse().unwrap()).is_err());
        assert!(GroupElement::new("100".parse().unwrap()).is_err());
    }

    #[test]
    fn add_examples() {
        assert_eq!(add(&e("0001"), &e("0001")).unwrap(), e("0010"));
        assert_eq!(add(&e("0001"), &e("0100")).unwrap(), e("0101"));
        assert!(add(&e("01"), &e("0101")).is_err());
    }

    #[test]
    fn neg_examples() {
        assert_eq!(neg(&e("0001")), e("0100"));
        assert_eq!(neg(&e("0101")), e("0101"));
        assert_eq!(neg(&e("001001")), e("001001"));
    }

    #[test]
    fn scalar_mul_examples() {
        assert_eq!(scalar_mul(2, &e("000100")), e("010010"));
        assert_eq!(scalar_mul(0, &e("000100")), identity(3).unwrap());
        assert_eq!(scalar_mul(4, &e("000100")), e("010101"));
        assert_eq!(scalar_mul(-1, &e("000100")), neg(&e("000100")));
        assert_eq!(scalar_mul(-3, &e("000100")), scalar_mul(1, &e("000100")));
    }

    #[test]
    fn element_order_examples() {
        assert_eq!(element_order(&identity(4).unwrap()), 1);
        assert_eq!(element_order(&e("0001")), 5);
        assert_eq!(element_order(&e("001001")), 2);
    }

    #[test]
    fn enumerate_examples() {
        assert_eq!(enumerate(2).unwrap().len(), 5);
        assert_eq!(enumerate(6).unwrap().len(), 320);
        assert_eq!(enumerate(1).unwrap(), vec![e("01")]);
        assert!(matches!(enumerate(11), Err(Error::Resource(_))));
    }

    #[test]
    fn raw_admissible_count_is_lucas() {
        // cyclic binary words without adjacent ones: Lucas numbers
        let lucas = [2usize, 1, 3, 4, 7, 11, 18, 29, 47, 76, 123, 199, 322, 521];
        for (n, &want) in lucas.iter().enumerate().skip(1) {
            assert_eq!(admissible_words(n).len(), want, "n = {n}");
        }
        for ell in 1..=8 {
            assert_eq!(
                admissible_words(2 * ell).len(),
                enumerate(ell).unwrap().len() + 2
            );
        }
    }

    #[test]
    fn d_value_examples() {
        assert_eq!(d_value(3), BigUint::from(4u32));
        assert_eq!(d_value(6), BigUint::from(8u32));
        assert_eq!(d_value(1), BigUint::from(1u32));
        assert_eq!(d_value(2), BigUint::from(1u32));
    }

    #[test]
    fn decompose_examples() {
        let s2 = decompose(2).unwrap();
        assert_eq!((s2.order, s2.invariant_factors), (5, (5, 1)));
        let s3 = decompose(3).unwrap();
        assert_eq!((s3.order, s3.invariant_factors), (16, (4, 4)));
        let s6 = decompose(6).unwrap();
        assert_eq!((s6.order, s6.invariant_factors), (320, (40, 8)));
    }

    #[test]
    fn decompose_reports_a_wrong_formula() {
        fn off_by_one(ell: usize) -> BigUint {
            d_value(ell) + 1u32
        }
        assert!(matches!(
            decompose_against(3, off_by_one, DEFAULT_MAX_ELL),
            Err(Error::StructuralMismatch(_))
        ));
    }

    #[test]
    fn certify_works_on_subgroups() {
        // 2-torsion of (Z/4)^2
        let g = enumerate(3).unwrap();
        let two_torsion: Vec<_> = g
            .iter()
            .filter(|x| scalar_mul(2, x).is_identity())
            .cloned()
            .collect();
        assert_eq!(two_torsion.len(), 4);
        let c = certify(&two_torsion).unwrap();
        assert_eq!((c.exponent, c.order), (2, 4));
    }

    #[test]
    fn repeat_morphism_examples() {
        assert_eq!(repeat_morphism(&e("01"), 3).unwrap(), e("010101"));
        assert_eq!(repeat_morphism(&e("0001"), 2).unwrap(), e("00010001"));
        let g2 = enumerate(2).unwrap();
        for u in &g2 {
            for v in &g2 {
                assert_eq!(
                    add(
                        &repeat_morphism(u, 2).unwrap(),
                        &repeat_morphism(v, 2).unwrap()
                    )
                    .unwrap(),
                    repeat_morphism(&add(u, v).unwrap(), 2).unwrap()
                );
            }
        }
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(d_value(6).gcd(&d_value(3)), d_value(3));
        assert_eq!(d_value(6).gcd(&d_value(4)), d_value(2));
        assert_eq!(d_value(6), classical_fib(6));
        let r = gcd_property_report(30).unwrap();
        assert!(r.passed(), "{:?}", r.failures);
        assert_eq!(r.pairs_checked, 29 * 29);
        assert_eq!(r.classical_checked, 15);
        assert!(gcd_property_report(1).is_err());
    }

    #[test]
    fn group_table_lookup() {
        let g = Group::new(2).unwrap();
        assert_eq!(g.order(), 5);
        let id = g.identity_index();
        let t = g.cayley_table();
        for i in 0..5 {
            assert_eq!(t[i][id], i);
            assert_eq!(t[i][g.neg_index(i).unwrap()], id);
        }
        assert_eq!(g.index_of(&"1010".parse().unwrap()), Some(id));
    }
}
