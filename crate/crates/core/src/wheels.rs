//! Wheel graphs, their spanning trees, and the map from trees onto the
//! group of the same size.
//!
//! The wheel with `l` rim vertices has a center `c`, spokes `r_i = c - v_i`
//! and rim edges `s_i = v_i - v_{i+1}`. For `l = 1` the rim edge would be a
//! loop and is dropped; for `l = 2` the two rim edges are parallel and kept
//! apart.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::fibcore::CircWord;
use crate::group::{self, GroupElement};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Edge {
    Spoke(usize),
    Rim(usize),
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Edge::Spoke(i) => write!(f, "r{i}"),
            Edge::Rim(i) => write!(f, "s{i}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Wheel {
    ell: usize,
}

impl Wheel {
    /// Rim vertices are `0..l`, the center is `l`. At most 63 rim vertices.
    pub fn new(ell: usize) -> Result<Self> {
        if ell == 0 || ell > 63 {
            return Err(Error::domain(format!("wheel size {ell} outside 1..=63")));
        }
        Ok(Wheel { ell })
    }

    pub fn ell(&self) -> usize {
        self.ell
    }

    pub fn center(&self) -> usize {
        self.ell
    }

    pub fn vertex_count(&self) -> usize {
        self.ell + 1
    }

    /// Spokes first, then rims; the `l = 1` loop is left out.
    pub fn edges(&self) -> Vec<Edge> {
        let mut edges: Vec<Edge> = (0..self.ell).map(Edge::Spoke).collect();
        if self.ell > 1 {
            edges.extend((0..self.ell).map(Edge::Rim));
        }
        edges
    }

    pub fn endpoints(&self, e: Edge) -> (usize, usize) {
        match e {
            Edge::Spoke(i) => (self.center(), i),
            Edge::Rim(i) => (i, (i + 1) % self.ell),
        }
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// False when `a` and `b` were already joined.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra] = rb;
        true
    }
}

/// A spanning tree, as bitmasks over spoke and rim indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WheelTree {
    ell: usize,
    spokes: u64,
    rims: u64,
}

impl WheelTree {
    pub fn new(ell: usize, spokes: u64, rims: u64) -> Result<Self> {
        let wheel = Wheel::new(ell)?;
        let mask = (1u64 << ell) - 1;
        if spokes & !mask != 0 || rims & !mask != 0 {
            return Err(Error::domain(format!(
                "edge index beyond wheel of size {ell}"
            )));
        }
        if ell == 1 && rims != 0 {
            return Err(Error::domain("the wheel of size 1 has no rim edge"));
        }
        let t = WheelTree { ell, spokes, rims };
        if (spokes.count_ones() + rims.count_ones()) as usize != ell {
            return Err(Error::domain(format!("{t} does not have {ell} edges")));
        }
        let mut uf = UnionFind::new(wheel.vertex_count());
        for e in t.edges() {
            let (a, b) = wheel.endpoints(e);
            if !uf.union(a, b) {
                return Err(Error::domain(format!("{t} contains a cycle")));
            }
        }
        Ok(t)
    }

    /// Every spoke, no rim.
    pub fn star(ell: usize) -> Result<Self> {
        Wheel::new(ell)?;
        WheelTree::new(ell, (1u64 << ell) - 1, 0)
    }

    pub fn ell(&self) -> usize {
        self.ell
    }

    pub fn spokes(&self) -> u64 {
        self.spokes
    }

    pub fn rims(&self) -> u64 {
        self.rims
    }

    pub fn has(&self, e: Edge) -> bool {
        match e {
            Edge::Spoke(i) => self.spokes >> i & 1 == 1,
            Edge::Rim(i) => self.rims >> i & 1 == 1,
        }
    }

    pub fn edges(&self) -> Vec<Edge> {
        let wheel = Wheel { ell: self.ell };
        wheel.edges().into_iter().filter(|&e| self.has(e)).collect()
    }
}

impl fmt::Display for WheelTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = self.edges().iter().map(Edge::to_string).collect();
        write!(f, "{{{}}}", names.join(","))
    }
}

/// Every spanning tree, by backtracking over the edge list with union-find.
pub fn spanning_trees(ell: usize, max_ell: usize) -> Result<Vec<WheelTree>> {
    if ell > max_ell {
        return Err(Error::Resource(format!(
            "wheel of size {ell} is over the enumeration bound {max_ell}"
        )));
    }
    let wheel = Wheel::new(ell)?;
    let edges = wheel.edges();
    let mut out = Vec::new();
    let mut chosen = Vec::with_capacity(ell);
    extend_forest(&wheel, &edges, 0, &mut chosen, &mut out);
    Ok(out)
}

fn extend_forest(
    wheel: &Wheel,
    edges: &[Edge],
    next: usize,
    chosen: &mut Vec<Edge>,
    out: &mut Vec<WheelTree>,
) {
    let need = wheel.ell - chosen.len();
    if need == 0 {
        let (mut spokes, mut rims) = (0u64, 0u64);
        for e in chosen.iter() {
            match *e {
                Edge::Spoke(i) => spokes |= 1 << i,
                Edge::Rim(i) => rims |= 1 << i,
            }
        }
        out.push(WheelTree {
            ell: wheel.ell,
            spokes,
            rims,
        });
        return;
    }
    if edges.len() - next < need {
        return;
    }
    let e = edges[next];
    chosen.push(e);
    if is_forest(wheel, chosen) {
        extend_forest(wheel, edges, next + 1, chosen, out);
    }
    chosen.pop();
    extend_forest(wheel, edges, next + 1, chosen, out);
}

fn is_forest(wheel: &Wheel, edges: &[Edge]) -> bool {
    let mut uf = UnionFind::new(wheel.vertex_count());
    edges.iter().all(|&e| {
        let (a, b) = wheel.endpoints(e);
        uf.union(a, b)
    })
}

/// Matrix-tree count: determinant of the Laplacian with the center row and
/// column removed, by fraction-free elimination.
pub fn count_trees_matrix(ell: usize) -> Result<BigInt> {
    let wheel = Wheel::new(ell)?;
    let mut m = vec![vec![BigInt::zero(); ell]; ell];
    for e in wheel.edges() {
        let (a, b) = wheel.endpoints(e);
        for v in [a, b] {
            if v < ell {
                m[v][v] += 1;
            }
        }
        if a < ell && b < ell {
            m[a][b] -= 1;
            m[b][a] -= 1;
        }
    }
    Ok(bareiss_determinant(m))
}

fn bareiss_determinant(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = t / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    if n == 0 {
        return BigInt::one();
    }
    sign * &m[n - 1][n - 1]
}

/// Raw word of a tree: `w_{2i} = 1` iff `r_i` is in the tree, `w_{2i+1} = 0`
/// iff `s_i` is.
pub fn tree_to_word(t: &WheelTree) -> CircWord {
    let mut digits = Vec::with_capacity(2 * t.ell);
    for i in 0..t.ell {
        digits.push(u32::from(t.has(Edge::Spoke(i))));
        digits.push(u32::from(!t.has(Edge::Rim(i))));
    }
    CircWord::new(digits).expect("wheel size is positive")
}

pub fn taxonomy(t: &WheelTree) -> Result<GroupElement> {
    GroupElement::from_any(&tree_to_word(t))
}

/// Nonzero binary word whose maximal cyclic blocks of zeros all have even
/// length.
pub fn is_tree_word(w: &CircWord) -> bool {
    let d = w.digits();
    if d.iter().any(|&x| x > 1) || w.is_zero() {
        return false;
    }
    let start = d.iter().position(|&x| x == 1).expect("nonzero word");
    let mut run = 0;
    for k in 1..=d.len() {
        if d[(start + k) % d.len()] == 0 {
            run += 1;
        } else {
            if run % 2 == 1 {
                return false;
            }
            run = 0;
        }
    }
    true
}

/// Binary words of length `2l` with only even zero blocks.
pub fn tree_words(ell: usize) -> Vec<CircWord> {
    let n = 2 * ell;
    (0u64..1 << n)
        .map(|bits| {
            let digits = (0..n).map(|i| (bits >> i & 1) as u32).collect();
            CircWord::new(digits).expect("positive length")
        })
        .filter(is_tree_word)
        .collect()
}

/// Trees, their images, and the inverse lookup.
#[derive(Debug, Clone)]
pub struct TaxonomyTable {
    ell: usize,
    trees: Vec<WheelTree>,
    images: Vec<GroupElement>,
    by_image: HashMap<CircWord, usize>,
    by_tree: HashMap<WheelTree, usize>,
}

impl TaxonomyTable {
    pub fn build(ell: usize, max_ell: usize) -> Result<Self> {
        let trees = spanning_trees(ell, max_ell)?;
        let images = trees.iter().map(taxonomy).collect::<Result<Vec<_>>>()?;
        Ok(TaxonomyTable::from_pairs(
            ell,
            trees.into_iter().zip(images).collect(),
        ))
    }

    /// From stored `(tree, image)` pairs; no recomputation.
    pub fn from_pairs(ell: usize, pairs: Vec<(WheelTree, GroupElement)>) -> Self {
        let (trees, images): (Vec<_>, Vec<_>) = pairs.into_iter().unzip();
        let mut by_image = HashMap::with_capacity(images.len());
        for (i, u) in images.iter().enumerate() {
            by_image.entry(u.word().clone()).or_insert(i);
        }
        let by_tree = trees.iter().enumerate().map(|(i, t)| (*t, i)).collect();
        TaxonomyTable {
            ell,
            trees,
            images,
            by_image,
            by_tree,
        }
    }

    pub fn ell(&self) -> usize {
        self.ell
    }

    pub fn trees(&self) -> &[WheelTree] {
        &self.trees
    }

    pub fn images(&self) -> &[GroupElement] {
        &self.images
    }

    /// Distinct images, i.e. whether the map is one-to-one.
    pub fn is_injective(&self) -> bool {
        self.by_image.len() == self.trees.len()
    }

    /// One-to-one and as many trees as group elements.
    pub fn is_bijective(&self, group_order: usize) -> bool {
        self.is_injective() && self.trees.len() == group_order
    }

    pub fn tree_of(&self, u: &GroupElement) -> Option<&WheelTree> {
        self.by_image.get(u.word()).map(|&i| &self.trees[i])
    }

    pub fn image_of(&self, t: &WheelTree) -> Option<&GroupElement> {
        self.by_tree.get(t).map(|&i| &self.images[i])
    }

    /// The group law carried over to trees.
    pub fn tree_add(&self, a: &WheelTree, b: &WheelTree) -> Result<WheelTree> {
        let sum = group::add(self.lookup(a)?, self.lookup(b)?)?;
        self.pull_back(&sum)
    }

    pub fn tree_neg(&self, a: &WheelTree) -> Result<WheelTree> {
        self.pull_back(&group::neg(self.lookup(a)?))
    }

    fn lookup(&self, t: &WheelTree) -> Result<&GroupElement> {
        self.image_of(t).ok_or_else(|| {
            Error::domain(format!(
                "{t} is not a tree of the wheel of size {}",
                self.ell
            ))
        })
    }

    fn pull_back(&self, u: &GroupElement) -> Result<WheelTree> {
        self.tree_of(u)
            .copied()
            .ok_or_else(|| Error::StructuralMismatch(format!("{u} has no tree")))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityFiber {
    pub ell: usize,
    /// Even-zero-block words of length `2l`, zero word excluded.
    pub tree_word_count: usize,
    pub group_order: usize,
    /// Those among them in the identity class.
    pub identity_words: Vec<CircWord>,
}

pub fn identity_fiber(ell: usize, max_ell: usize) -> Result<IdentityFiber> {
    let group_order = group::enumerate_bounded(ell, max_ell)?.len();
    let words = tree_words(ell);
    let mut identity_words = Vec::new();
    for w in &words {
        if GroupElement::from_any(w)?.is_identity() {
            identity_words.push(w.clone());
        }
    }
    Ok(IdentityFiber {
        ell,
        tree_word_count: words.len(),
        group_order,
        identity_words,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::DEFAULT_MAX_ELL;

    fn w(s: &str) -> CircWord {
        s.parse().unwrap()
    }

    const TREE_COUNTS: [usize; 8] = [1, 5, 16, 45, 121, 320, 841, 2205];

    #[test]
    fn tree_counts() {
        for (i, &c) in TREE_COUNTS.iter().enumerate().take(6) {
            let ell = i + 1;
            assert_eq!(
                spanning_trees(ell, DEFAULT_MAX_ELL).unwrap().len(),
                c,
                "l = {ell}"
            );
            assert_eq!(
                count_trees_matrix(ell).unwrap(),
                BigInt::from(c),
                "l = {ell}"
            );
        }
        let one = spanning_trees(1, 10).unwrap();
        assert_eq!(one, vec![WheelTree::star(1).unwrap()]);
        assert!(matches!(spanning_trees(11, 10), Err(Error::Resource(_))));
    }

    #[test]
    fn determinant_cases() {
        let m = vec![
            vec![BigInt::from(0), BigInt::from(2)],
            vec![BigInt::from(3), BigInt::from(1)],
        ];
        assert_eq!(bareiss_determinant(m), BigInt::from(-6));
        let singular = vec![
            vec![BigInt::from(1), BigInt::from(2)],
            vec![BigInt::from(2), BigInt::from(4)],
        ];
        assert_eq!(bareiss_determinant(singular), BigInt::zero());
        assert!(count_trees_matrix(7).unwrap() > BigInt::zero());
    }

    #[test]
    fn tree_validation() {
        assert!(WheelTree::new(3, 0b001, 0b011).is_ok());
        assert!(WheelTree::new(3, 0b000, 0b111).is_err());
        assert!(WheelTree::new(3, 0b011, 0b001).is_err());
        assert!(WheelTree::new(3, 0b001, 0b001).is_err());
        assert!(WheelTree::new(2, 0b00, 0b11).is_err());
        assert!(WheelTree::new(2, 0b01, 0b01).is_ok());
        assert!(WheelTree::new(1, 0, 1).is_err());
        assert_eq!(
            WheelTree::new(3, 0b001, 0b011).unwrap().to_string(),
            "{r0,s0,s1}"
        );
    }

    #[test]
    fn raw_word_examples() {
        assert_eq!(tree_to_word(&WheelTree::star(3).unwrap()), w("111111"));
        assert_eq!(
            tree_to_word(&WheelTree::new(3, 0b001, 0b011).unwrap()),
            w("100001")
        );
        assert_eq!(
            tree_to_word(&WheelTree::new(3, 0b011, 0b010).unwrap()),
            w("111001")
        );
    }

    #[test]
    fn taxonomy_examples() {
        assert!(taxonomy(&WheelTree::star(3).unwrap())
            .unwrap()
            .is_identity());
        assert_eq!(
            taxonomy(&WheelTree::star(3).unwrap()).unwrap().word(),
            &w("010101")
        );
        let t = WheelTree::new(3, 0b001, 0b011).unwrap();
        assert_eq!(taxonomy(&t).unwrap().word(), &w("010000"));
        let table = TaxonomyTable::build(2, 10).unwrap();
        assert!(table.is_bijective(5));
    }

    #[test]
    fn tree_word_examples() {
        assert!(is_tree_word(&w("111111")));
        assert!(!is_tree_word(&w("1010")));
        assert!(is_tree_word(&w("1001")));
        assert!(is_tree_word(&w("0110")));
        assert!(!is_tree_word(&w("0000")));
        assert!(!is_tree_word(&w("0001")));
        assert!(is_tree_word(&w("001111")));
        assert!(!is_tree_word(&w("2111")));
    }

    #[test]
    fn images_are_the_tree_words() {
        for ell in 1..=5 {
            let trees = spanning_trees(ell, 10).unwrap();
            let mut raw: Vec<CircWord> = trees.iter().map(tree_to_word).collect();
            raw.sort();
            let len = raw.len();
            raw.dedup();
            assert_eq!(raw.len(), len);
            let mut words = tree_words(ell);
            words.sort();
            assert_eq!(raw, words, "l = {ell}");
        }
    }

    #[test]
    fn taxonomy_is_bijective() {
        for ell in 1..=5 {
            let table = TaxonomyTable::build(ell, 10).unwrap();
            let order = group::enumerate(ell).unwrap().len();
            assert!(table.is_bijective(order), "l = {ell}");
        }
    }

    #[test]
    fn transported_law() {
        let table = TaxonomyTable::build(2, 10).unwrap();
        let star = WheelTree::star(2).unwrap();
        for a in table.trees() {
            assert_eq!(table.tree_add(a, &star).unwrap(), *a);
            assert_eq!(
                table.tree_add(a, &table.tree_neg(a).unwrap()).unwrap(),
                star
            );
            for b in table.trees() {
                assert_eq!(table.tree_add(a, b).unwrap(), table.tree_add(b, a).unwrap());
            }
        }
        let other = TaxonomyTable::build(3, 10).unwrap();
        assert!(table.tree_add(&other.trees()[0], &star).is_err());
    }

    #[test]
    fn identity_fiber_is_the_all_ones_word() {
        for ell in 1..=4 {
            let f = identity_fiber(ell, 10).unwrap();
            assert_eq!(f.tree_word_count, f.group_order);
            assert_eq!(
                f.identity_words,
                vec![CircWord::new(vec![1; 2 * ell]).unwrap()]
            );
        }
    }
}
