//! Every checkable statement about the groups, grouped by topic. Each
//! `check_*` function returns claims; [`run_verify`] runs them all within
//! the given bounds.
//!
//! `max_ell` caps every family indexed by `l`. Families indexed by `q` are
//! capped by `max_q` and enumerate whatever length `q` needs.

use std::collections::{BTreeSet, HashSet};

use num_bigint::BigUint;
use num_integer::Integer;

use super::report::{Claim, Status, VerificationReport};
use crate::baseb::{all_words, circ_add_base_b, verify_cyclic_group, BaseBWord};
use crate::error::{Error, Result};
use crate::fibcore::{check_balanced, classical_fib, fibonacci_word_prefix, CircWord};
use crate::group::{
    self, add, d_value, decompose_against, enumerate_bounded, gcd_property_report_with, identity,
    neg, predicted_factors, repeat_morphism, scalar_mul, DFormula, Group, GroupElement,
};
use crate::orderq::{
    minimal_even_length, minimal_even_length_via_d, oplus, p_group, verify_pi_multiples,
};
use crate::rewrite::{alt_identity_word, identity_word, normalize, OrbitPartition};
use crate::typology::{
    classify, consecutive_multiples_check, fib_partition, image_sets, k_pi_type_check,
    lucas_block_len, sigma_relation_check, split_with_block_len, structural_class, TypeTag,
};
use crate::wheels::{
    count_trees_matrix, identity_fiber, spanning_trees, tree_to_word, tree_words, TaxonomyTable,
    WheelTree,
};

/// Spanning trees of the wheels, equal to the group orders, for `l = 1..=8`.
pub const GROUP_ORDERS: [u64; 8] = [1, 5, 16, 45, 121, 320, 841, 2205];

/// Minimal even lengths for `q = 2..=10`.
pub const MINIMAL_LENGTHS: [usize; 9] = [6, 8, 6, 20, 24, 16, 12, 24, 60];

/// `(l, n)` pairs for the repetition map `l -> n l`.
pub const REPEAT_PAIRS: [(usize, usize); 5] = [(1, 2), (1, 3), (2, 2), (2, 3), (3, 2)];

/// The printed multiples of 142857, with `999999` written as `000000`.
pub const SEVENTHS: [&str; 7] = [
    "142857", "285714", "428571", "571428", "714285", "857142", "000000",
];

#[derive(Debug, Clone, Copy)]
pub struct VerifyOptions {
    pub max_ell: usize,
    pub max_q: u64,
    pub d_formula: DFormula,
}

impl VerifyOptions {
    pub fn new(max_ell: usize, max_q: u64) -> Self {
        VerifyOptions {
            max_ell,
            max_q,
            d_formula: d_value,
        }
    }
}

pub fn run_verify(max_ell: usize, max_q: u64) -> Result<VerificationReport> {
    run_verify_with(&VerifyOptions::new(max_ell, max_q))
}

pub fn run_verify_with(opts: &VerifyOptions) -> Result<VerificationReport> {
    if opts.max_ell == 0 || opts.max_q == 0 {
        return Err(Error::domain("verification bounds must be positive"));
    }
    let l = opts.max_ell;
    let q = opts.max_q;
    let mut report = VerificationReport::new("verify");
    report.extend(check_group_orders(l.min(8)));
    report.extend(check_invariant_factors(l.min(7), opts.d_formula));
    let lengths: Vec<usize> = [4, 6, 8].into_iter().filter(|&n| n / 2 <= l).collect();
    report.extend(check_normal_forms(&lengths));
    report.extend(check_group_axioms(l.min(4), l.min(6)));
    report.extend(check_order_q_words(q.min(10), l));
    report.extend(check_torsion_subgroups(q.min(6), l.min(3)));
    report.extend(check_gcd_property(30, opts.d_formula, l.min(3)));
    report.extend(check_type_partition(l.min(7), l.min(6)));
    report.extend(check_balanced_blocks(10, l.min(6)));
    report.extend(check_wheels(l.min(8), l.min(6), l.min(3)));
    report.extend(check_base_b());
    report.extend(check_balanced_factors(10_000, 50));
    Ok(report)
}

fn join<T: ToString>(xs: impl IntoIterator<Item = T>) -> String {
    xs.into_iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

fn lucas(m: u64) -> BigUint {
    if m == 0 {
        return BigUint::from(2u32);
    }
    classical_fib(m - 1) + classical_fib(m + 1)
}

/// Group orders for `l <= max_ell` against the known terms and against
/// `L(2l) - 2`.
pub fn check_group_orders(max_ell: usize) -> Vec<Claim> {
    const ID: &str = "group-orders";
    const ANCHOR: &str = "number of admissible circular words";
    let mut orders = Vec::new();
    for ell in 1..=max_ell {
        match enumerate_bounded(ell, max_ell) {
            Ok(els) => orders.push(els.len() as u64),
            Err(e) => return vec![Claim::infrastructure(ID, ANCHOR, &e)],
        }
    }
    let known = max_ell.min(GROUP_ORDERS.len());
    let lucas_terms: Vec<BigUint> = (1..=max_ell as u64).map(|l| lucas(2 * l) - 2u32).collect();
    vec![
        Claim::compare(
            ID,
            ANCHOR,
            join(&GROUP_ORDERS[..known]),
            join(&orders[..known]),
        ),
        Claim::compare(
            &format!("{ID}/lucas"),
            ANCHOR,
            join(&lucas_terms),
            join(&orders),
        ),
    ]
}

/// Invariant factors from element orders, against the `d` formula.
pub fn check_invariant_factors(max_ell: usize, d_formula: DFormula) -> Vec<Claim> {
    (2..=max_ell)
        .map(|ell| {
            let id = format!("invariant-factors/l{ell}");
            let anchor = "group is Z/d x Z/d (odd l) or Z/5d x Z/d (even l)";
            let (p1, p2) = predicted_factors(ell, d_formula);
            let expected = format!("Z/{p1} x Z/{p2}");
            match decompose_against(ell, d_formula, max_ell) {
                Ok(s) => Claim::compare(
                    &id,
                    anchor,
                    expected,
                    format!("Z/{} x Z/{}", s.invariant_factors.0, s.invariant_factors.1),
                ),
                Err(Error::StructuralMismatch(msg)) => Claim::check(&id, anchor, false, msg),
                Err(e) => Claim::infrastructure(&id, anchor, &e),
            }
        })
        .collect()
}

fn base3_words(n: usize) -> impl Iterator<Item = CircWord> {
    (0..3usize.pow(n as u32)).map(move |mut code| {
        let digits = (0..n)
            .map(|_| {
                let d = (code % 3) as u32;
                code /= 3;
                d
            })
            .collect();
        CircWord::new(digits).expect("positive length")
    })
}

/// Admissible members of the capped orbit of every nonzero `{0,1,2}` word.
fn orbit_admissibles(n: usize, cap: u32) -> Result<Vec<(CircWord, BTreeSet<CircWord>)>> {
    let mut part = OrbitPartition::build(n, cap)?;
    let by_comp = part.admissible_by_component();
    Ok(base3_words(n)
        .filter(|w| !w.is_zero())
        .map(|w| {
            let comp = part.component_of(&w);
            let adm = by_comp
                .get(&comp)
                .map(|v| v.iter().cloned().collect())
                .unwrap_or_default();
            (w, adm)
        })
        .collect())
}

/// Every nonzero `{0,1,2}` word of each length has one admissible orbit
/// member, found by `normalize`; the identity class has two. Orbits are
/// taken with digit caps 3 and 4 and must agree.
pub fn check_normal_forms(lengths: &[usize]) -> Vec<Claim> {
    let anchor = "unique admissible word per class";
    let mut claims = Vec::new();
    for &n in lengths {
        let id = format!("normal-forms/n{n}");
        let (low, high) = match (orbit_admissibles(n, 3), orbit_admissibles(n, 4)) {
            (Ok(a), Ok(b)) => (a, b),
            (Err(e), _) | (_, Err(e)) => {
                claims.push(Claim::infrastructure(&id, anchor, &e));
                continue;
            }
        };
        let ones = CircWord::new(vec![1; n]).expect("positive length");
        let pair: BTreeSet<CircWord> = [identity_word(n), alt_identity_word(n)]
            .into_iter()
            .collect();
        let mut problems = Vec::new();
        if low != high {
            problems.push("orbits change between digit caps 3 and 4".to_string());
        }
        for (w, adm) in &low {
            let in_identity = adm.contains(&identity_word(n));
            let ok = if in_identity {
                adm == &pair && normalize(w).ok().as_ref() == Some(&identity_word(n))
            } else {
                adm.len() == 1 && normalize(w).ok().as_ref() == adm.iter().next()
            };
            if !ok {
                problems.push(format!("{w}: admissible members {}", join(adm.iter())));
            }
            if *w == ones && adm != &pair {
                problems.push(format!("{ones} is not in the identity class"));
            }
        }
        let detail = match problems.first() {
            None => format!("{} words", low.len()),
            Some(p) => format!("{} problems, first: {p}", problems.len()),
        };
        claims.push(Claim::check(&id, anchor, problems.is_empty(), detail));
    }
    claims
}

/// Exhaustive group laws on the Cayley table for `l <= axiom_ell`, and
/// complement-then-normalize inverses for `l <= neg_ell`.
pub fn check_group_axioms(axiom_ell: usize, neg_ell: usize) -> Vec<Claim> {
    let mut claims = Vec::new();
    for ell in 1..=axiom_ell {
        let id = format!("group-axioms/l{ell}");
        let anchor = "abelian group laws";
        let g = match Group::with_bound(ell, axiom_ell) {
            Ok(g) => g,
            Err(e) => {
                claims.push(Claim::infrastructure(&id, anchor, &e));
                continue;
            }
        };
        let t = g.cayley_table();
        let n = g.order();
        let z = g.identity_index();
        let identity_ok = (0..n).all(|a| t[a][z] == a);
        let comm_ok = (0..n).all(|a| (0..n).all(|b| t[a][b] == t[b][a]));
        let inv_ok = (0..n).all(|a| t[a].contains(&z));
        let assoc_ok =
            (0..n).all(|a| (0..n).all(|b| (0..n).all(|c| t[t[a][b]][c] == t[a][t[b][c]])));
        let closed = t.iter().all(|row| row.iter().all(|&x| x < n));
        claims.push(Claim::check(
            &id,
            anchor,
            identity_ok && comm_ok && inv_ok && assoc_ok && closed,
            format!(
                "order {n}: identity {identity_ok}, commutative {comm_ok}, inverses {inv_ok}, associative {assoc_ok}"
            ),
        ));
    }
    for ell in 1..=neg_ell {
        let id = format!("negation/l{ell}");
        let anchor = "complement then normalize gives the inverse";
        match enumerate_bounded(ell, neg_ell) {
            Ok(els) => {
                let bad = els
                    .iter()
                    .find(|u| !add(u, &neg(u)).map(|s| s.is_identity()).unwrap_or(false));
                claims.push(Claim::check(
                    &id,
                    anchor,
                    bad.is_none(),
                    match bad {
                        None => format!("{} elements", els.len()),
                        Some(u) => format!("{u} + neg({u}) is not the identity"),
                    },
                ));
            }
            Err(e) => claims.push(Claim::infrastructure(&id, anchor, &e)),
        }
    }
    claims
}

/// Minimal lengths by both routes, and the multiples of the two distinguished
/// words; uniqueness of those words is checked when the torsion group fits
/// in `max_ell`.
pub fn check_order_q_words(max_q: u64, max_ell: usize) -> Vec<Claim> {
    (2..=max_q)
        .flat_map(|q| check_order_q(q, max_ell))
        .collect()
}

pub fn check_order_q(q: u64, max_ell: usize) -> Vec<Claim> {
    let mut claims = Vec::new();
    let anchor = "multiples of the order-q words are Zeckendorf multiples";
    {
        let id = format!("order-q/q{q}");
        let lengths = (minimal_even_length(q), minimal_even_length_via_d(q));
        let (a, b) = match lengths {
            (Ok(a), Ok(b)) => (a, b),
            (Err(e), _) | (_, Err(e)) => {
                claims.push(Claim::infrastructure(&id, anchor, &e));
                return claims;
            }
        };
        let mut length_claim = Claim::compare(
            &format!("{id}/length"),
            "minimal even length with F(n) = F(n-1) = 1 mod q",
            a,
            b,
        );
        if let Some(&known) = MINIMAL_LENGTHS.get((q as usize).wrapping_sub(2)) {
            if known != a {
                length_claim.status = Status::Fail;
                length_claim.detail = format!("known value {known}");
            }
        }
        claims.push(length_claim);
        match verify_pi_multiples(q, max_ell) {
            Ok(r) => {
                let q_multiple_is_identity = scalar_mul(q as i64, &r.pi).is_identity()
                    && scalar_mul(q as i64, &r.pi_prime).is_identity();
                let uniqueness = match r.uniqueness_holds() {
                    Some(true) => "unique",
                    Some(false) => "NOT unique",
                    None => "uniqueness not checked",
                };
                claims.push(Claim::check(
                    &id,
                    anchor,
                    r.passed() && q_multiple_is_identity,
                    format!(
                        "n = {}, P = {}, P' = {}, multiples {}, rotation {}, q P = 0 {}, {uniqueness}",
                        r.length,
                        r.pi,
                        r.pi_prime,
                        r.multiples_hold(),
                        r.rotation_holds,
                        q_multiple_is_identity
                    ),
                ));
            }
            Err(e) => claims.push(Claim::infrastructure(&id, anchor, &e)),
        }
    }
    claims
}

/// `q`-torsion has `q^2` elements, exponent `q` and two generators; mixed
/// length sums respect repetition and stay in the torsion.
pub fn check_torsion_subgroups(max_q: u64, oplus_ell: usize) -> Vec<Claim> {
    let mut claims = Vec::new();
    let mut torsion = Vec::new();
    for q in 2..=max_q {
        let id = format!("torsion/q{q}");
        let anchor = "elements of order dividing q form Z/q x Z/q";
        let needed = match minimal_even_length(q) {
            Ok(n) => n / 2,
            Err(e) => {
                claims.push(Claim::infrastructure(&id, anchor, &e));
                continue;
            }
        };
        let els = match p_group(q, needed) {
            Ok(p) => p.into_iter().map(|p| p.element).collect::<Vec<_>>(),
            Err(e) => {
                claims.push(Claim::infrastructure(&id, anchor, &e));
                continue;
            }
        };
        let cert = group::certify(&els);
        let ok = matches!(&cert, Ok(c) if c.order == q * q && c.exponent == q);
        let detail = match &cert {
            Ok(c) => format!(
                "{} elements at length {}, exponent {}, generators {} and {}",
                c.order,
                2 * needed,
                c.exponent,
                c.first_generator,
                c.second_generator
            ),
            Err(e) => e.to_string(),
        };
        claims.push(Claim::check(&id, anchor, ok, detail));
        torsion.push((q, els));
    }
    claims.push(check_oplus_identity(oplus_ell));
    if torsion.len() >= 2 {
        claims.push(check_oplus_closure(&torsion));
    }
    claims
}

fn check_oplus_identity(max_ell: usize) -> Claim {
    let id = "torsion/repetition";
    let anchor = "mixed-length sum with the length-2 identity";
    let zero = identity(1).expect("l = 1");
    let mut count = 0;
    for ell in 1..=max_ell {
        let els = match enumerate_bounded(ell, max_ell) {
            Ok(e) => e,
            Err(e) => return Claim::infrastructure(id, anchor, &e),
        };
        for u in &els {
            count += 1;
            let left = oplus(&zero, u);
            let right = oplus(u, &zero);
            if left.as_ref().ok() != Some(u) || right.as_ref().ok() != Some(u) {
                return Claim::check(id, anchor, false, format!("{u} + 0 is not {u}"));
            }
        }
    }
    Claim::check(id, anchor, true, format!("{count} elements"))
}

/// All pairs across the torsion groups: the sum is killed by the lcm, and
/// the sum commutes; triples of generators associate.
fn check_oplus_closure(torsion: &[(u64, Vec<GroupElement>)]) -> Claim {
    let id = "torsion/closure";
    let anchor = "mixed-length sums stay in the torsion";
    let small: Vec<&(u64, Vec<GroupElement>)> = torsion.iter().filter(|(q, _)| *q <= 4).collect();
    let mut pairs = 0;
    for (i, (q1, a)) in small.iter().enumerate() {
        for (q2, b) in &small[i..] {
            let m = q1.lcm(q2) as i64;
            for u in a {
                for v in b {
                    pairs += 1;
                    let (Ok(s), Ok(t)) = (oplus(u, v), oplus(v, u)) else {
                        return Claim::check(id, anchor, false, format!("{u} + {v} failed"));
                    };
                    if s != t || !scalar_mul(m, &s).is_identity() {
                        return Claim::check(id, anchor, false, format!("{u} + {v} = {s}"));
                    }
                }
            }
        }
    }
    let gens: Vec<&GroupElement> = small.iter().flat_map(|(_, e)| e.iter().take(4)).collect();
    for x in &gens {
        for y in &gens {
            for z in &gens {
                let l = oplus(x, y).and_then(|s| oplus(&s, z));
                let r = oplus(y, z).and_then(|s| oplus(x, &s));
                if l.is_err() || l != r {
                    return Claim::check(id, anchor, false, format!("({x} + {y}) + {z} differs"));
                }
            }
        }
    }
    Claim::check(
        id,
        anchor,
        true,
        format!("{pairs} pairs, {} triples", gens.len().pow(3)),
    )
}

/// `gcd(d(m), d(n)) = d(gcd(m, n))`, `d(2l) = f(2l)`, and the repetition
/// maps are injective homomorphisms.
pub fn check_gcd_property(
    max_index: usize,
    d_formula: DFormula,
    max_repeat_ell: usize,
) -> Vec<Claim> {
    let mut claims = Vec::new();
    let anchor = "gcd(d(m), d(n)) = d(gcd(m, n))";
    match gcd_property_report_with(max_index, d_formula) {
        Ok(r) => {
            let detail = match r.failures.first() {
                None => format!(
                    "{} pairs, {} even indices",
                    r.pairs_checked, r.classical_checked
                ),
                Some(f) => format!("{} failures, first: {}", r.failures.len(), f.detail),
            };
            claims.push(Claim::check("gcd-property", anchor, r.passed(), detail));
        }
        Err(e) => claims.push(Claim::infrastructure("gcd-property", anchor, &e)),
    }
    for (ell, n) in REPEAT_PAIRS
        .into_iter()
        .filter(|&(l, _)| l <= max_repeat_ell)
    {
        let id = format!("repetition/l{ell}n{n}");
        let anchor = "W -> W^n is an injective homomorphism";
        let els = match enumerate_bounded(ell, max_repeat_ell) {
            Ok(e) => e,
            Err(e) => {
                claims.push(Claim::infrastructure(&id, anchor, &e));
                continue;
            }
        };
        let images: Result<Vec<GroupElement>> = els.iter().map(|u| repeat_morphism(u, n)).collect();
        let Ok(images) = images else {
            claims.push(Claim::check(&id, anchor, false, "repetition failed"));
            continue;
        };
        let injective = images.iter().collect::<HashSet<_>>().len() == images.len();
        let mut hom = true;
        'outer: for (i, u) in els.iter().enumerate() {
            for (j, v) in els.iter().enumerate() {
                let lhs = add(u, v).and_then(|s| repeat_morphism(&s, n));
                let rhs = add(&images[i], &images[j]);
                if lhs.is_err() || lhs != rhs {
                    hom = false;
                    break 'outer;
                }
            }
        }
        claims.push(Claim::check(
            &id,
            anchor,
            injective && hom,
            format!("injective {injective}, homomorphism {hom}"),
        ));
    }
    claims
}

/// The three-way type partition, its shape description, rotation between
/// classes, the valuation image sets, and the types of the `kP` multiples.
pub fn check_type_partition(max_ell: usize, image_ell: usize) -> Vec<Claim> {
    let mut claims: Vec<Claim> = (1..=max_ell)
        .flat_map(|ell| check_types_at(ell, max_ell))
        .collect();
    claims.extend(check_image_sets(image_ell));
    claims.extend((3..=image_ell).filter_map(check_multiple_types));
    claims
}

/// Classification, shape rule and rotation for one `l`.
pub fn check_types_at(ell: usize, max_ell: usize) -> Vec<Claim> {
    let mut claims = Vec::new();
    {
        let id = format!("types/l{ell}");
        let anchor = "N(u) + N(-u) is N of exactly one of (01), (10), (11)";
        let els = match enumerate_bounded(ell, max_ell) {
            Ok(e) => e,
            Err(e) => {
                claims.push(Claim::infrastructure(&id, anchor, &e));
                return claims;
            }
        };
        let mut counts = [0usize; 3];
        let mut problem = None;
        for u in &els {
            match classify(u) {
                Ok(t) => {
                    counts[TypeTag::ALL.iter().position(|&x| x == t).expect("tag")] += 1;
                    if !u.is_identity() && structural_class(u).ok() != Some(t) {
                        problem.get_or_insert_with(|| format!("shape rule disagrees on {u}"));
                    }
                }
                Err(e) => {
                    problem.get_or_insert_with(|| e.to_string());
                }
            }
        }
        claims.push(Claim::check(
            &id,
            anchor,
            problem.is_none(),
            problem.unwrap_or_else(|| {
                format!("T01 {}, T10 {}, T11 {}", counts[0], counts[1], counts[2])
            }),
        ));
        let sigma_id = format!("types/rotation/l{ell}");
        match sigma_relation_check(ell, max_ell) {
            Ok(ok) => claims.push(Claim::check(
                &sigma_id,
                "rotation maps T10 onto T01",
                ok,
                "",
            )),
            Err(e) => claims.push(Claim::infrastructure(
                &sigma_id,
                "rotation maps T10 onto T01",
                &e,
            )),
        }
    }
    claims
}

/// Types of the multiples of `P` and `P'` for `q = d(l)`; `None` when
/// `d(l) < 2`.
pub fn check_multiple_types(ell: usize) -> Option<Claim> {
    let id = format!("types/multiples/l{ell}");
    let anchor = "multiples kP share one type, kP' another";
    if d_value(ell) < BigUint::from(2u32) {
        return None;
    }
    Some(match k_pi_type_check(ell) {
        Ok(r) if !r.single_tag_per_family() => Claim::check(
            &id,
            anchor,
            false,
            format!(
                "P types {}, P' types {}",
                join(&r.pi_tags),
                join(&r.pi_prime_tags)
            ),
        ),
        Ok(r) if r.literal_labels() => Claim::check(&id, anchor, true, format!("q = {}", r.q)),
        Ok(r) => Claim::discrepancy(
            &id,
            anchor,
            "kP in T10, kP' in T01",
            format!(
                "kP in {}, kP' in {}",
                r.pi_family().expect("single"),
                r.pi_prime_family().expect("single")
            ),
            format!(
                "q = {}; labels exchanged under the positional valuation",
                r.q
            ),
        ),
        Err(e) => Claim::infrastructure(&id, anchor, &e),
    })
}

pub fn check_image_sets(max_ell: usize) -> Vec<Claim> {
    let mut claims = Vec::new();
    let mut sets = Vec::new();
    for ell in 1..=max_ell {
        match image_sets(ell, max_ell) {
            Ok(s) => sets.push(s),
            Err(e) => claims.push(Claim::infrastructure(
                &format!("images/l{ell}"),
                "valuation images",
                &e,
            )),
        }
    }
    let t10_ok = sets
        .iter()
        .all(|s| s.computed[&TypeTag::T10] == s.formula[&TypeTag::T10]);
    claims.push(Claim::check(
        "images/T10",
        "T10 valuations are 1 + 2|M_k|_a + |M_k|_b",
        t10_ok,
        format!("l = 1..={max_ell}"),
    ));
    for tag in [TypeTag::T01, TypeTag::T11] {
        let id = format!("images/{tag}");
        let anchor = match tag {
            TypeTag::T01 => "T01 valuations are 1 + 3|M_k|_a + 2|M_k|_b",
            _ => "T11 valuations are F(2l-1) + 3 + 5|M_k|_a + 3|M_k|_b",
        };
        let offsets: Vec<Option<num_bigint::BigInt>> = sets
            .iter()
            .filter(|s| !(s.computed[&tag].is_empty() && s.formula[&tag].is_empty()))
            .map(|s| s.offset(tag))
            .collect();
        let distinct: BTreeSet<&Option<num_bigint::BigInt>> = offsets.iter().collect();
        let claim = match distinct.into_iter().collect::<Vec<_>>().as_slice() {
            [] => Claim::check(&id, anchor, true, "no nonempty cases"),
            [Some(c)] if c == &num_bigint::BigInt::from(0) => {
                Claim::check(&id, anchor, true, "exact")
            }
            [Some(c)] => Claim::discrepancy(
                &id,
                anchor,
                "offset 0",
                format!("offset {c:+}"),
                format!(
                    "computed set is the printed set shifted by {c:+} for every l <= {max_ell}"
                ),
            ),
            _ => Claim::check(
                &id,
                anchor,
                false,
                format!(
                    "no single offset: {}",
                    join(
                        offsets
                            .iter()
                            .map(|o| o.as_ref().map_or("none".to_string(), |c| c.to_string()))
                    )
                ),
            ),
        };
        claims.push(claim);
    }
    claims
}

/// Equal-count blocks of `b M_{F(2l-2)}` and the constant valuation step
/// along the multiples of `P`.
pub fn check_balanced_blocks(max_ell: usize, multiples_ell: usize) -> Vec<Claim> {
    let mut claims = Vec::new();
    let anchor = "blocks of b M_{F(2l-2)} have equal letter counts";
    for ell in 3..=max_ell {
        let id = format!("blocks/l{ell}");
        match fib_partition(ell) {
            Ok(p) => {
                let counts: BTreeSet<(usize, usize)> =
                    p.blocks.iter().map(|b| (b.a_count, b.b_count)).collect();
                claims.push(Claim::check(
                    &id,
                    anchor,
                    p.counts_constant(),
                    format!(
                        "{} blocks of length {}, counts {}",
                        p.blocks.len(),
                        p.block_len,
                        join(counts.iter().map(|(a, b)| format!("{a}a/{b}b")))
                    ),
                ));
            }
            Err(e) => claims.push(Claim::check(&id, anchor, false, e.to_string())),
        }
    }
    let lucas_misses: Vec<usize> = (3..=max_ell)
        .filter(|&ell| {
            !split_with_block_len(ell, lucas_block_len(ell))
                .map(|p| p.counts_constant())
                .unwrap_or(false)
        })
        .collect();
    if !lucas_misses.is_empty() {
        claims.push(Claim::discrepancy(
            "blocks/lucas-length",
            "block length F(l-1) + F(l-3)",
            "equal counts",
            format!("unequal counts for l = {}", join(&lucas_misses)),
            "blocks are taken as d(l) blocks of length F(2l-2)/d(l) instead",
        ));
    }
    for ell in 1..=multiples_ell {
        if d_value(ell) < BigUint::from(2u32) {
            continue;
        }
        let id = format!("multiples-step/l{ell}");
        let anchor = "N(iP) - N((i-1)P) = N(P) for i <= d(l)";
        match consecutive_multiples_check(ell) {
            Ok(None) => claims.push(Claim::check(
                &id,
                anchor,
                true,
                format!("q = {}", d_value(ell)),
            )),
            Ok(Some(i)) => claims.push(Claim::check(
                &id,
                anchor,
                false,
                format!("fails at i = {i}"),
            )),
            Err(e) => claims.push(Claim::infrastructure(&id, anchor, &e)),
        }
    }
    claims
}

/// Tree counts by two methods against the group order; the tree map is a
/// bijection onto the group and onto the even-zero-block words; the group
/// law transported to trees.
pub fn check_wheels(count_ell: usize, bijection_ell: usize, transport_ell: usize) -> Vec<Claim> {
    let bound = count_ell.max(bijection_ell).max(transport_ell);
    let mut claims: Vec<Claim> = (1..=count_ell)
        .map(|l| check_wheel_count(l, bound))
        .collect();
    claims.extend((1..=bijection_ell).map(|l| check_wheel_bijection(l, bound)));
    claims.extend((1..=bijection_ell).map(|l| check_identity_fiber(l, bound)));
    claims.extend((1..=transport_ell).map(|l| check_wheel_transport(l, bound)));
    claims
}

pub fn check_wheel_count(ell: usize, max_ell: usize) -> Claim {
    let id = format!("wheels/count/l{ell}");
    let anchor = "spanning trees of the wheel = group order";
    let counts = (|| -> Result<(usize, String, usize)> {
        let trees = spanning_trees(ell, max_ell)?.len();
        let matrix = count_trees_matrix(ell)?.to_string();
        let order = enumerate_bounded(ell, max_ell)?.len();
        Ok((trees, matrix, order))
    })();
    match counts {
        Ok((trees, matrix, order)) => {
            let known = GROUP_ORDERS.get(ell - 1).map(u64::to_string);
            let ok = trees.to_string() == matrix
                && trees == order
                && known.as_ref().is_none_or(|k| *k == matrix);
            Claim::check(
                &id,
                anchor,
                ok,
                format!("backtracking {trees}, matrix {matrix}, group {order}"),
            )
        }
        Err(e) => Claim::infrastructure(&id, anchor, &e),
    }
}

pub fn check_wheel_bijection(ell: usize, max_ell: usize) -> Claim {
    let id = format!("wheels/bijection/l{ell}");
    let anchor = "tree map is a bijection onto the group";
    let result = (|| -> Result<Claim> {
        let table = TaxonomyTable::build(ell, max_ell)?;
        let order = enumerate_bounded(ell, max_ell)?.len();
        let mut raw: Vec<CircWord> = table.trees().iter().map(tree_to_word).collect();
        raw.sort();
        let mut words = tree_words(ell);
        words.sort();
        let ezb = raw == words;
        let bij = table.is_bijective(order);
        Ok(Claim::check(
            &id,
            anchor,
            ezb && bij,
            format!("bijective {bij}, raw words are exactly the even-zero-block words {ezb}"),
        ))
    })();
    result.unwrap_or_else(|e| Claim::infrastructure(&id, anchor, &e))
}

pub fn check_wheel_transport(ell: usize, max_ell: usize) -> Claim {
    let id = format!("wheels/transported/l{ell}");
    let anchor = "group law carried to trees";
    let result = (|| -> Result<Claim> {
        let table = TaxonomyTable::build(ell, max_ell)?;
        let trees = table.trees();
        let star = WheelTree::star(ell)?;
        let mut ok = true;
        for a in trees {
            ok &= table.tree_add(a, &star)? == *a;
            ok &= table.tree_add(a, &table.tree_neg(a)?)? == star;
            for b in trees {
                let ab = table.tree_add(a, b)?;
                ok &= ab == table.tree_add(b, a)?;
                for c in trees {
                    ok &= table.tree_add(&ab, c)? == table.tree_add(a, &table.tree_add(b, c)?)?;
                }
            }
        }
        Ok(Claim::check(
            &id,
            anchor,
            ok,
            format!("{} trees", trees.len()),
        ))
    })();
    result.unwrap_or_else(|e| Claim::infrastructure(&id, anchor, &e))
}

/// Even-zero-block words against the group order, and which of them fall
/// in the identity class.
pub fn check_identity_fiber(ell: usize, max_ell: usize) -> Claim {
    let id = format!("wheels/identity-fiber/l{ell}");
    let anchor = "even-zero-block words as unique representatives";
    match identity_fiber(ell, max_ell) {
        Ok(f) => {
            let ones = CircWord::new(vec![1; 2 * ell]).expect("positive length");
            Claim::check(
                &id,
                anchor,
                f.tree_word_count == f.group_order && f.identity_words == [ones],
                format!(
                    "{} words for {} elements; identity class holds {}",
                    f.tree_word_count,
                    f.group_order,
                    join(&f.identity_words)
                ),
            )
        }
        Err(e) => Claim::infrastructure(&id, anchor, &e),
    }
}

/// The sevenths table, and word to value as an isomorphism onto
/// `Z/(2^n - 1)` for `n <= 4`.
pub fn check_base_b() -> Vec<Claim> {
    let mut claims = Vec::new();
    match verify_cyclic_group(10, 7) {
        Ok(r) => {
            let rows = join(r.rows.iter().map(|row| row.by_addition.to_string()));
            let mut c = Claim::compare(
                "base-b/sevenths",
                "multiples of 142857",
                join(SEVENTHS),
                rows,
            );
            if !r.passed() || r.period.to_string() != "142857" {
                c.status = Status::Fail;
            }
            claims.push(c);
        }
        Err(e) => claims.push(Claim::infrastructure(
            "base-b/sevenths",
            "multiples of 142857",
            &e,
        )),
    }
    for n in 1..=4usize {
        let id = format!("base-b/binary-n{n}");
        let anchor = "word to value is an isomorphism onto Z/(b^n - 1)";
        let m = (1u64 << n) - 1;
        let words: Vec<BaseBWord> = all_words(2, n)
            .into_iter()
            .filter(|w| w.digits().contains(&0))
            .collect();
        let value =
            |w: &BaseBWord| -> u64 { w.value().iter_u64_digits().next().unwrap_or(0) % m.max(1) };
        let images: BTreeSet<u64> = words.iter().map(value).collect();
        let bijective = images.len() == words.len() && images.len() as u64 == m;
        let hom = words.iter().all(|x| {
            words.iter().all(|y| {
                circ_add_base_b(x, y).map(|s| value(&s)).ok()
                    == Some((value(x) + value(y)) % m.max(1))
            })
        });
        claims.push(Claim::check(
            &id,
            anchor,
            bijective && hom,
            format!(
                "{} classes, bijective {bijective}, additive {hom}",
                words.len()
            ),
        ));
    }
    claims
}

/// Equal-length factors of the Fibonacci-word prefix differ by at most one
/// in their count of `a`.
pub fn check_balanced_factors(prefix_len: usize, max_window: usize) -> Vec<Claim> {
    let anchor = "Fibonacci word is balanced";
    let word = fibonacci_word_prefix(prefix_len);
    let bad: Vec<usize> = (1..=max_window.min(prefix_len))
        .filter(|&w| !check_balanced(&word, w).unwrap_or(false))
        .collect();
    vec![Claim::check(
        "balanced",
        anchor,
        bad.is_empty(),
        if bad.is_empty() {
            format!("prefix {prefix_len}, windows 1..={max_window}")
        } else {
            format!("unbalanced windows {}", join(&bad))
        },
    )]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn corrupted_d(ell: usize) -> BigUint {
        d_value(ell) + 1u32
    }

    #[test]
    fn small_bounds_pass() {
        let r = run_verify(2, 2).unwrap();
        assert!(r.passed(), "{:?}", r.failures().collect::<Vec<_>>());
        assert!(r.claims.iter().any(|c| c.id == "group-orders"));
    }

    #[test]
    fn group_orders_row() {
        let c = &check_group_orders(6)[0];
        assert_eq!(c.computed.as_deref(), Some("1 5 16 45 121 320"));
        assert_eq!(c.status, Status::Pass);
    }

    #[test]
    fn corrupted_d_formula_fails() {
        let opts = VerifyOptions {
            d_formula: corrupted_d,
            ..VerifyOptions::new(3, 2)
        };
        let r = run_verify_with(&opts).unwrap();
        assert!(!r.passed());
        let failed: Vec<&str> = r.failures().map(|c| c.id.as_str()).collect();
        assert!(failed.contains(&"invariant-factors/l2"), "{failed:?}");
        assert!(failed.contains(&"gcd-property"), "{failed:?}");
    }

    #[test]
    fn zero_bounds_are_rejected() {
        assert!(run_verify(0, 3).is_err());
    }

    #[test]
    fn discrepancies_carry_both_values() {
        let r = run_verify(4, 4).unwrap();
        for c in r.claims.iter().filter(|c| c.status == Status::Discrepancy) {
            assert!(c.expected.is_some() && c.computed.is_some(), "{}", c.id);
        }
        assert!(r
            .claims
            .iter()
            .any(|c| c.id == "images/T01" && c.status == Status::Discrepancy));
    }
}
