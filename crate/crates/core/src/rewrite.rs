//! The two Fibonacci rewriting rules on circular digit words, their orbits,
//! and the admissible normal form.
//!
//! Rule A at anchor `k` trades one unit at `k-1` and one at `k` for one unit
//! at `k+1` (`F(k-1) + F(k) = F(k+1)`). Rule B at anchor `k` trades two units
//! at `k` for one at `k-2` and one at `k+1` (`2F(k) = F(k-2) + F(k+1)`).
//! Indices are taken modulo the word length, so a move whose window crosses
//! the seam changes the positional valuation while staying in the same
//! equivalence class.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;

use crate::error::{Error, Result};
use crate::fibcore::CircWord;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Rule {
    A,
    B,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    Forward,
    Backward,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RewriteMove {
    pub rule: Rule,
    pub position: usize,
    pub direction: Direction,
}

impl RewriteMove {
    pub fn forward(rule: Rule, position: usize) -> Self {
        RewriteMove {
            rule,
            position,
            direction: Direction::Forward,
        }
    }

    pub fn backward(rule: Rule, position: usize) -> Self {
        RewriteMove {
            rule,
            position,
            direction: Direction::Backward,
        }
    }

    /// (offset, amount) pairs of the forward move: units taken, units given.
    fn forward_deltas(self) -> (Deltas, Deltas) {
        match self.rule {
            Rule::A => (&[(-1, 1), (0, 1)], &[(1, 1)]),
            Rule::B => (&[(0, 2)], &[(-2, 1), (1, 1)]),
        }
    }
}

impl fmt::Display for RewriteMove {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let dir = match self.direction {
            Direction::Forward => "forward",
            Direction::Backward => "backward",
        };
        write!(f, "{:?}-{dir} at {}", self.rule, self.position)
    }
}

type Deltas = &'static [(isize, u32)];

fn wrap(n: usize, k: usize, offset: isize) -> usize {
    (k as isize + offset).rem_euclid(n as isize) as usize
}

/// Applies `m` in place; leaves `digits` untouched and returns `false` if a
/// taken digit would go negative.
fn try_apply(digits: &mut [u32], m: RewriteMove) -> bool {
    let n = digits.len();
    let k = m.position % n;
    let (taken, given) = match m.direction {
        Direction::Forward => m.forward_deltas(),
        Direction::Backward => {
            let (t, g) = m.forward_deltas();
            (g, t)
        }
    };
    // Positions may coincide on very short words; check the summed demand.
    let mut demand = [(0usize, 0u32); 2];
    for (slot, &(off, amt)) in taken.iter().enumerate() {
        demand[slot] = (wrap(n, k, off), amt);
    }
    if taken.len() == 2 && demand[0].0 == demand[1].0 {
        demand[0].1 += demand[1].1;
        demand[1].1 = 0;
    }
    if demand.iter().any(|&(i, amt)| digits[i] < amt) {
        return false;
    }
    for &(off, amt) in taken {
        digits[wrap(n, k, off)] -= amt;
    }
    for &(off, amt) in given {
        digits[wrap(n, k, off)] += amt;
    }
    true
}

pub fn apply_move(w: &CircWord, m: RewriteMove) -> Result<CircWord> {
    let mut out = w.clone();
    if try_apply(out.digits_mut(), m) {
        Ok(out)
    } else {
        Err(Error::InapplicableMove(format!("{m} on {w}")))
    }
}

/// Every move (both rules, both directions, every anchor).
pub fn all_moves(len: usize) -> impl Iterator<Item = RewriteMove> {
    (0..len).flat_map(|k| {
        [
            RewriteMove::forward(Rule::A, k),
            RewriteMove::forward(Rule::B, k),
            RewriteMove::backward(Rule::A, k),
            RewriteMove::backward(Rule::B, k),
        ]
    })
}

/// `(01)^l`, the canonical identity representative of length `2l`.
pub fn identity_word(len: usize) -> CircWord {
    CircWord::new((0..len).map(|i| (i % 2) as u32).collect()).expect("nonempty")
}

/// `(10)^l`, the other identity representative.
pub fn alt_identity_word(len: usize) -> CircWord {
    CircWord::new((0..len).map(|i| ((i + 1) % 2) as u32).collect()).expect("nonempty")
}

pub fn is_identity_representative(w: &CircWord) -> bool {
    w.len().is_multiple_of(2) && (*w == identity_word(w.len()) || *w == alt_identity_word(w.len()))
}

/// Maps `(10)^l` to `(01)^l`, leaves everything else alone.
pub fn canonicalize_identity(w: CircWord) -> CircWord {
    if w.len().is_multiple_of(2) && w == alt_identity_word(w.len()) {
        identity_word(w.len())
    } else {
        w
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Orbit {
    pub members: BTreeSet<CircWord>,
    pub truncated: bool,
}

impl Orbit {
    pub fn admissible(&self) -> Vec<&CircWord> {
        self.members.iter().filter(|w| w.is_admissible()).collect()
    }
}

/// Breadth-first closure of `w` under all moves, dropping states with a
/// digit above `digit_cap`. Stops with `truncated = true` past `size_cap`.
pub fn orbit(w: &CircWord, digit_cap: u32, size_cap: usize) -> Result<Orbit> {
    if digit_cap < 2 || digit_cap < w.max_digit() {
        return Err(Error::domain(format!(
            "digit cap {digit_cap} must be at least 2 and at least the largest digit of {w}"
        )));
    }
    let n = w.len();
    let mut seen: HashSet<Vec<u32>> = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(w.digits().to_vec());
    queue.push_back(w.digits().to_vec());
    let mut truncated = false;
    'bfs: while let Some(state) = queue.pop_front() {
        for m in all_moves(n) {
            let mut next = state.clone();
            if !try_apply(&mut next, m) || next.iter().any(|&d| d > digit_cap) {
                continue;
            }
            if seen.contains(&next) {
                continue;
            }
            if seen.len() >= size_cap {
                truncated = true;
                break 'bfs;
            }
            seen.insert(next.clone());
            queue.push_back(next);
        }
    }
    Ok(Orbit {
        members: seen
            .into_iter()
            .map(|d| CircWord::new(d).expect("nonempty"))
            .collect(),
        truncated,
    })
}

/// Bounds for the search-based normal form.
#[derive(Debug, Clone, Copy)]
pub struct OracleConfig {
    /// Largest digit cap tried; the cap doubles from its starting value.
    pub cap_ceiling: u32,
    pub size_cap: usize,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            cap_ceiling: 16,
            size_cap: 2_000_000,
        }
    }
}

/// What the orbit search found for one word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OracleOutcome {
    /// Admissible orbit members at the first cap where any were found.
    Found { cap: u32, admissible: Vec<CircWord> },
    /// No admissible member up to the ceiling, with no truncation: the
    /// capped orbits are complete and contain none.
    NoneFound { cap: u32 },
    /// The search hit `size_cap` before finding anything.
    Truncated { cap: u32 },
}

/// Search for admissible orbit members with a growing digit cap, starting at
/// `max(2, largest digit) + 1`.
pub fn oracle_search(w: &CircWord, cfg: OracleConfig) -> Result<OracleOutcome> {
    let mut cap = w.max_digit().max(2) + 1;
    loop {
        let orb = orbit(w, cap, cfg.size_cap)?;
        let admissible: Vec<CircWord> = orb.admissible().into_iter().cloned().collect();
        if !admissible.is_empty() {
            return Ok(OracleOutcome::Found { cap, admissible });
        }
        if orb.truncated {
            return Ok(OracleOutcome::Truncated { cap });
        }
        if cap >= cfg.cap_ceiling {
            return Ok(OracleOutcome::NoneFound { cap });
        }
        cap = (cap * 2).min(cfg.cap_ceiling);
    }
}

/// Normal form computed purely from orbit search. Slow; this is the
/// reference the production normalizer is checked against.
pub fn oracle_normalize(w: &CircWord, cfg: OracleConfig) -> Result<CircWord> {
    check_normalizable(w)?;
    match oracle_search(w, cfg)? {
        OracleOutcome::Found { admissible, .. } => {
            let canon: BTreeSet<CircWord> =
                admissible.into_iter().map(canonicalize_identity).collect();
            if canon.len() == 1 {
                Ok(canon.into_iter().next().expect("one element"))
            } else {
                Err(Error::Normalization(format!(
                    "{w} has {} distinct admissible equivalents",
                    canon.len()
                )))
            }
        }
        other => Err(Error::Normalization(format!("{w}: {other:?}"))),
    }
}

fn check_normalizable(w: &CircWord) -> Result<()> {
    if !w.len().is_multiple_of(2) {
        return Err(Error::domain(format!(
            "{w} has odd length {}; only even lengths normalize",
            w.len()
        )));
    }
    if w.is_zero() {
        return Err(Error::ZeroWord);
    }
    Ok(())
}

/// Forward rewriting, rule A first. A lowers the digit sum and B keeps it,
/// and a word with no applicable forward move is admissible, so this either
/// reaches an admissible word or runs out of `budget`.
fn forward_reduce(d: &mut [u32], mut budget: usize) -> bool {
    let n = d.len();
    loop {
        let mut moved = false;
        for k in 0..n {
            let prev = (k + n - 1) % n;
            while d[prev] >= 1 && d[k] >= 1 && prev != k {
                if budget == 0 {
                    return false;
                }
                budget -= 1;
                d[prev] -= 1;
                d[k] -= 1;
                d[(k + 1) % n] += 1;
                moved = true;
            }
        }
        if moved {
            continue;
        }
        match (0..n).find(|&k| d[k] >= 2) {
            Some(k) => {
                if budget == 0 {
                    return false;
                }
                budget -= 1;
                let applied = try_apply(d, RewriteMove::forward(Rule::B, k));
                debug_assert!(applied);
            }
            None => return true,
        }
    }
}

/// The admissible normal form. The identity class `(01)^l ~ (10)^l` is
/// returned as `(01)^l`.
pub fn normalize(w: &CircWord) -> Result<CircWord> {
    normalize_with(w, OracleConfig::default())
}

pub fn normalize_with(w: &CircWord, fallback: OracleConfig) -> Result<CircWord> {
    check_normalizable(w)?;
    let n = w.len();
    let sum: usize = w.digits().iter().map(|&d| d as usize).sum();
    let budget = 64 * (n + sum) * (n + sum);
    let mut d = w.digits().to_vec();
    if forward_reduce(&mut d, budget) {
        let out = CircWord::new(d).expect("nonempty");
        debug_assert!(out.is_admissible());
        return Ok(canonicalize_identity(out));
    }
    log::warn!("forward rewriting exhausted its budget on {w}; falling back to orbit search");
    oracle_normalize(w, fallback)
}

/// Same normal form, i.e. the same equivalence class.
pub fn equivalent(u: &CircWord, v: &CircWord) -> Result<bool> {
    if u.len() != v.len() {
        return Err(Error::domain(format!(
            "lengths differ: {} vs {}",
            u.len(),
            v.len()
        )));
    }
    Ok(normalize(u)? == normalize(v)?)
}

/// All words in `{0..=cap}^len`, partitioned into the connected components
/// of the move graph restricted to that box. The component of a word is its
/// capped orbit, so this answers every capped-orbit query at once.
pub struct OrbitPartition {
    len: usize,
    cap: u32,
    parent: Vec<u32>,
}

impl OrbitPartition {
    pub fn build(len: usize, cap: u32) -> Result<Self> {
        let states = (cap as u64 + 1)
            .checked_pow(len as u32)
            .filter(|&s| s <= 50_000_000)
            .ok_or_else(|| Error::Resource(format!("{}^{len} states", cap + 1)))?
            as usize;
        let mut part = OrbitPartition {
            len,
            cap,
            parent: (0..states as u32).collect(),
        };
        let mut digits = vec![0u32; len];
        for idx in 0..states {
            part.decode_into(idx, &mut digits);
            for k in 0..len {
                for rule in [Rule::A, Rule::B] {
                    let mut next = digits.clone();
                    if try_apply(&mut next, RewriteMove::forward(rule, k))
                        && next.iter().all(|&x| x <= cap)
                    {
                        let j = part.encode(&next);
                        part.union(idx, j);
                    }
                }
            }
        }
        Ok(part)
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    pub fn cap(&self) -> u32 {
        self.cap
    }

    pub fn encode(&self, digits: &[u32]) -> usize {
        let base = self.cap as usize + 1;
        digits
            .iter()
            .rev()
            .fold(0, |acc, &d| acc * base + d as usize)
    }

    fn decode_into(&self, mut idx: usize, out: &mut [u32]) {
        let base = self.cap as usize + 1;
        for slot in out.iter_mut() {
            *slot = (idx % base) as u32;
            idx /= base;
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] as usize != x {
            let grand = self.parent[self.parent[x] as usize];
            self.parent[x] = grand;
            x = grand as usize;
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo as u32;
        }
    }

    pub fn component_of(&mut self, w: &CircWord) -> usize {
        let idx = self.encode(w.digits());
        self.find(idx)
    }

    /// Admissible members of every component, keyed by component root.
    pub fn admissible_by_component(&mut self) -> std::collections::HashMap<usize, Vec<CircWord>> {
        let mut out: std::collections::HashMap<usize, Vec<CircWord>> = Default::default();
        let mut digits = vec![0u32; self.len];
        for idx in 0..self.parent.len() {
            self.decode_into(idx, &mut digits);
            if digits.iter().all(|&d| d <= 1) {
                let w = CircWord::new(digits.clone()).expect("nonempty");
                if w.is_admissible() {
                    let root = self.find(idx);
                    out.entry(root).or_default().push(w);
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn w(s: &str) -> CircWord {
        s.parse().unwrap()
    }

    #[test]
    fn apply_move_examples() {
        assert_eq!(
            apply_move(&w("110000"), RewriteMove::forward(Rule::A, 1)).unwrap(),
            w("001000")
        );
        assert_eq!(
            apply_move(&w("000200"), RewriteMove::forward(Rule::B, 3)).unwrap(),
            w("010010")
        );
        assert_eq!(
            apply_move(&w("1001"), RewriteMove::forward(Rule::A, 0)).unwrap(),
            w("0100")
        );
    }

    #[test]
    fn inapplicable_moves_are_rejected() {
        assert!(matches!(
            apply_move(&w("0100"), RewriteMove::forward(Rule::A, 1)),
            Err(Error::InapplicableMove(_))
        ));
        assert!(apply_move(&w("0100"), RewriteMove::forward(Rule::B, 1)).is_err());
        assert!(apply_move(&w("0000"), RewriteMove::backward(Rule::A, 1)).is_err());
    }

    #[test]
    fn backward_undoes_forward() {
        let start = w("021130");
        for k in 0..6 {
            for rule in [Rule::A, Rule::B] {
                if let Ok(next) = apply_move(&start, RewriteMove::forward(rule, k)) {
                    let back = apply_move(&next, RewriteMove::backward(rule, k)).unwrap();
                    assert_eq!(back, start);
                }
            }
        }
    }

    #[test]
    fn orbit_of_all_ones_holds_both_identity_representatives() {
        let orb = orbit(&w("1111"), 2, 1_000_000).unwrap();
        assert!(!orb.truncated);
        assert!(orb.members.contains(&w("0101")));
        assert!(orb.members.contains(&w("1010")));
        let adm = orb.admissible();
        assert_eq!(adm, vec![&w("0101"), &w("1010")]);
    }

    #[test]
    fn orbit_of_identity_has_no_other_admissible_word() {
        let orb = orbit(&w("0101"), 2, 1_000_000).unwrap();
        assert_eq!(orb.admissible(), vec![&w("0101"), &w("1010")]);
    }

    #[test]
    fn odd_all_ones_orbit_has_no_admissible_word() {
        let orb = orbit(&w("111"), 2, 1_000_000).unwrap();
        assert!(!orb.truncated);
        assert!(orb.admissible().is_empty());
    }

    #[test]
    fn orbit_rejects_small_cap() {
        assert!(orbit(&w("0300"), 2, 10).is_err());
    }

    #[test]
    fn orbit_flags_truncation() {
        let orb = orbit(&w("111111"), 3, 5).unwrap();
        assert!(orb.truncated);
        assert_eq!(orb.members.len(), 5);
    }

    #[test]
    fn normalize_examples() {
        assert_eq!(normalize(&w("0002")).unwrap(), w("0010"));
        assert_eq!(normalize(&w("1111")).unwrap(), w("0101"));
        assert_eq!(normalize(&w("0101")).unwrap(), w("0101"));
        assert_eq!(normalize(&w("1010")).unwrap(), w("0101"));
        assert_eq!(normalize(&w("020111")).unwrap(), w("010010"));
    }

    #[test]
    fn normalize_errors() {
        assert!(matches!(normalize(&w("010")), Err(Error::Domain(_))));
        assert!(matches!(normalize(&w("0000")), Err(Error::ZeroWord)));
    }

    #[test]
    fn equivalence_examples() {
        assert!(equivalent(&w("0101"), &w("1010")).unwrap());
        assert!(equivalent(&w("0002"), &w("0010")).unwrap());
        assert!(!equivalent(&w("1000"), &w("0001")).unwrap());
        assert!(equivalent(&w("01"), &w("0101")).is_err());
    }

    #[test]
    fn oracle_agrees_on_mixed_length_sum() {
        assert_eq!(
            oracle_normalize(&w("020111"), OracleConfig::default()).unwrap(),
            w("010010")
        );
    }

    #[test]
    fn normalize_agrees_with_oracle_exhaustively_up_to_length_6() {
        for len in [2usize, 4, 6] {
            let total = 3usize.pow(len as u32);
            for code in 1..total {
                let mut c = code;
                let digits: Vec<u32> = (0..len)
                    .map(|_| {
                        let d = (c % 3) as u32;
                        c /= 3;
                        d
                    })
                    .collect();
                let word = CircWord::new(digits).unwrap();
                let fast = normalize(&word).unwrap();
                let slow = oracle_normalize(&word, OracleConfig::default()).unwrap();
                assert_eq!(fast, slow, "{word}");
            }
        }
    }

    #[test]
    fn orbit_partition_matches_bfs() {
        let mut part = OrbitPartition::build(4, 3).unwrap();
        let start = w("1200");
        let orb = orbit(&start, 3, 1_000_000).unwrap();
        let root = part.component_of(&start);
        for m in &orb.members {
            assert_eq!(part.component_of(m), root);
        }
        let by_comp = part.admissible_by_component();
        let adm: BTreeSet<_> = by_comp[&root].iter().cloned().collect();
        let bfs_adm: BTreeSet<_> = orb.admissible().into_iter().cloned().collect();
        assert_eq!(adm, bfs_adm);
    }

    proptest! {
        #[test]
        fn non_seam_moves_preserve_valuation(
            digits in proptest::collection::vec(0u32..4, 6..14),
            k in 2usize..12,
            rule_b in any::<bool>(),
            forward in any::<bool>(),
        ) {
            let n = digits.len();
            // anchor windows k-2..=k+1 that stay inside 0..n
            prop_assume!(k + 1 < n);
            let rule = if rule_b { Rule::B } else { Rule::A };
            let m = if forward { RewriteMove::forward(rule, k) } else { RewriteMove::backward(rule, k) };
            let word = CircWord::new(digits).unwrap();
            if let Ok(next) = apply_move(&word, m) {
                prop_assert_eq!(next.valuation(), word.valuation());
            }
        }

        #[test]
        fn normalize_is_idempotent_and_admissible(
            digits in proptest::collection::vec(0u32..5, 1..8),
        ) {
            let mut digits = digits;
            if digits.len() % 2 == 1 { digits.push(1); }
            let word = CircWord::new(digits).unwrap();
            prop_assume!(!word.is_zero());
            let nf = normalize(&word).unwrap();
            prop_assert!(nf.is_admissible());
            prop_assert_eq!(normalize(&nf).unwrap(), nf);
        }
    }
}
