//! Admissible circular words of order dividing `q`, taken across all even
//! lengths with `W ~ W^n`, and their two distinguished elements whose group
//! multiples are the plain Zeckendorf multiples.

use std::collections::{BTreeSet, HashSet};

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::fibcore::{fib, zeckendorf, CircWord, DigitWord};
use crate::group::{self, d_value, enumerate_bounded, identity, scalar_mul, GroupElement};
use crate::rewrite::canonicalize_identity;

/// Smallest even `n >= 2` with `F(n) = F(n-1) = 1 (mod q)`.
pub fn minimal_even_length(q: u64) -> Result<usize> {
    if q < 2 {
        return Err(Error::domain(format!("q = {q} must be at least 2")));
    }
    // (F(n-1), F(n)) mod q, starting at n = 1
    let (mut prev, mut cur) = (1 % q, 2 % q);
    let mut n = 1usize;
    // the pair sequence is periodic with period at most 6q
    let limit = 6 * q as usize + 2;
    while n <= limit {
        let next = (prev + cur) % q;
        prev = cur;
        cur = next;
        n += 1;
        if n.is_multiple_of(2) && cur == 1 % q && prev == 1 % q {
            return Ok(n);
        }
    }
    Err(Error::domain(format!("no even length found for q = {q}")))
}

/// `2 * min { l : q | d(l) }`, found by scanning `d`; an independent route
/// to [`minimal_even_length`].
pub fn minimal_even_length_via_d(q: u64) -> Result<usize> {
    if q < 2 {
        return Err(Error::domain(format!("q = {q} must be at least 2")));
    }
    let q_big = BigUint::from(q);
    (1..=6 * q as usize + 2)
        .find(|&ell| (d_value(ell) % &q_big).is_zero())
        .map(|ell| 2 * ell)
        .ok_or_else(|| Error::domain(format!("no l with {q} | d(l)")))
}

/// `(P, P')` with `N(P) = (F(n) - 1)/q` and `N(P') = (F(n-1) - 1)/q`.
pub fn pi_words(q: u64) -> Result<(GroupElement, GroupElement)> {
    let n = minimal_even_length(q)?;
    let fnn = fib(n as i64)?;
    let fnm = fib(n as i64 - 1)?;
    let pi = zeckendorf(&((fnn - 1u32) / q), n)?;
    let pi_prime = zeckendorf(&((fnm - 1u32) / q), n)?;
    Ok((
        GroupElement::new(CircWord::from(pi))?,
        GroupElement::new(CircWord::from(pi_prime))?,
    ))
}

/// Shortest `V` with `u = V^(|u|/|V|)`.
pub fn primitive_period(u: &GroupElement) -> DigitWord {
    shortest_period(u.word().digits(), |_| true)
}

/// Shortest even-length `V` with `u = V^(|u|/|V|)`; the carrier of the
/// element among even-length words.
pub fn even_primitive_period(u: &GroupElement) -> DigitWord {
    shortest_period(u.word().digits(), |p| p % 2 == 0)
}

fn shortest_period(d: &[u32], accept: impl Fn(usize) -> bool) -> DigitWord {
    let n = d.len();
    let p = (1..=n)
        .filter(|&p| n.is_multiple_of(p) && accept(p))
        .find(|&p| (p..n).all(|i| d[i] == d[i - p]))
        .unwrap_or(n);
    DigitWord::new(d[..p].to_vec()).expect("nonempty")
}

/// An element of order dividing `q`, stored at the canonical length.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PeriodicElement {
    pub element: GroupElement,
    pub primitive_period: DigitWord,
}

impl PeriodicElement {
    pub fn new(element: GroupElement) -> Self {
        let primitive_period = even_primitive_period(&element);
        PeriodicElement {
            element,
            primitive_period,
        }
    }
}

/// The `q`-torsion of the group at length `minimal_even_length(q)`, in
/// lexicographic order.
pub fn p_group(q: u64, max_ell: usize) -> Result<Vec<PeriodicElement>> {
    let n = minimal_even_length(q)?;
    if n / 2 > max_ell {
        return Err(Error::Resource(format!(
            "q = {q} needs length {n}, beyond l = {max_ell}"
        )));
    }
    Ok(enumerate_bounded(n / 2, max_ell)?
        .into_iter()
        .filter(|u| scalar_mul(q as i64, u).is_identity())
        .map(PeriodicElement::new)
        .collect())
}

/// Mixed-length sum: repeat both words to `lcm(|u|, |v|)`, add, normalize.
pub fn oplus(u: &GroupElement, v: &GroupElement) -> Result<GroupElement> {
    let m = u.len().lcm(&v.len());
    let uu = u.word().repeat(m / u.len())?;
    let vv = v.word().repeat(m / v.len())?;
    let sum: Vec<u32> = uu
        .digits()
        .iter()
        .zip(vv.digits())
        .map(|(a, b)| a + b)
        .collect();
    GroupElement::from_any(&CircWord::new(sum)?)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultipleCheck {
    pub i: u64,
    pub group_multiple: CircWord,
    /// `None` when `i * N(u)` does not fit in the word length.
    pub zeckendorf_multiple: Option<CircWord>,
}

impl MultipleCheck {
    pub fn agrees(&self) -> bool {
        self.zeckendorf_multiple.as_ref() == Some(&self.group_multiple)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PiReport {
    pub q: u64,
    pub length: usize,
    pub pi: GroupElement,
    pub pi_prime: GroupElement,
    pub pi_multiples: Vec<MultipleCheck>,
    pub pi_prime_multiples: Vec<MultipleCheck>,
    /// `rotate(P') = P`.
    pub rotation_holds: bool,
    /// Non-identity elements of the `q`-torsion whose multiples are all
    /// Zeckendorf multiples; `None` when the torsion was out of bounds.
    pub satisfiers: Option<Vec<GroupElement>>,
    /// Size of the subgroup generated by `P` and `P'`.
    pub generated_order: Option<usize>,
}

impl PiReport {
    pub fn multiples_hold(&self) -> bool {
        self.pi_multiples.iter().all(MultipleCheck::agrees)
            && self.pi_prime_multiples.iter().all(MultipleCheck::agrees)
    }

    pub fn uniqueness_holds(&self) -> Option<bool> {
        self.satisfiers.as_ref().map(|s| {
            let got: BTreeSet<&GroupElement> = s.iter().collect();
            let want: BTreeSet<&GroupElement> = [&self.pi, &self.pi_prime].into_iter().collect();
            got == want
        })
    }

    pub fn passed(&self) -> bool {
        self.multiples_hold() && self.rotation_holds && self.uniqueness_holds().unwrap_or(true)
    }
}

/// `i * u` against `zeckendorf(i * N(u))` for `1 <= i <= q`.
fn multiples_of(u: &GroupElement, q: u64) -> Vec<MultipleCheck> {
    let n = u.len();
    let base = u.valuation();
    let mut acc = u.clone();
    let mut out = Vec::with_capacity(q as usize);
    for i in 1..=q {
        if i > 1 {
            acc = group::add(&acc, u).expect("same length");
        }
        let zeck = zeckendorf(&(&base * i), n)
            .ok()
            .map(|w| canonicalize_identity(CircWord::from(w)));
        out.push(MultipleCheck {
            i,
            group_multiple: acc.word().clone(),
            zeckendorf_multiple: zeck,
        });
    }
    out
}

fn has_zeckendorf_multiples(u: &GroupElement, q: u64) -> bool {
    multiples_of(u, q).iter().all(MultipleCheck::agrees)
}

pub fn verify_pi_multiples(q: u64, max_ell: usize) -> Result<PiReport> {
    let (pi, pi_prime) = pi_words(q)?;
    let n = pi.len();
    let pi_multiples = multiples_of(&pi, q);
    let pi_prime_multiples = multiples_of(&pi_prime, q);
    let rotation_holds = pi_prime.word().rotate() == *pi.word();
    let (satisfiers, generated_order) = match p_group(q, max_ell) {
        Ok(torsion) => {
            let sat = torsion
                .iter()
                .map(|p| &p.element)
                .filter(|u| !u.is_identity() && has_zeckendorf_multiples(u, q))
                .cloned()
                .collect();
            (
                Some(sat),
                Some(generated_subgroup(&[pi.clone(), pi_prime.clone()]).len()),
            )
        }
        Err(Error::Resource(_)) => (None, None),
        Err(e) => return Err(e),
    };
    Ok(PiReport {
        q,
        length: n,
        pi,
        pi_prime,
        pi_multiples,
        pi_prime_multiples,
        rotation_holds,
        satisfiers,
        generated_order,
    })
}

/// Closure of `gens` under addition.
pub fn generated_subgroup(gens: &[GroupElement]) -> HashSet<GroupElement> {
    let Some(first) = gens.first() else {
        return HashSet::new();
    };
    let id = identity(first.ell()).expect("l >= 1");
    let mut seen: HashSet<GroupElement> = HashSet::from([id.clone()]);
    let mut frontier = vec![id];
    while let Some(x) = frontier.pop() {
        for g in gens {
            let y = group::add(&x, g).expect("same length");
            if seen.insert(y.clone()) {
                frontier.push(y);
            }
        }
    }
    seen
}
