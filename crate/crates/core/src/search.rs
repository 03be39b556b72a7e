//! Exhaustive search for largest progression-free sets, and the card-game
//! view of `F_3^4`.

use std::io::Read;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::ffld::{is_progression_free, FieldVector, PointSet, ProgressionSpec};

/// Largest `q^n` accepted by [`max_progression_free`].
pub const SEARCH_LIMIT: u64 = 1 << 14;
pub const DEFAULT_NODE_BUDGET: u64 = 1_000_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SearchResult {
    pub q: u32,
    pub n: usize,
    pub coefficients: [u32; 3],
    pub max_size: usize,
    /// Lexicographically least set of size `max_size` among those explored.
    #[serde(serialize_with = "witness_keys")]
    pub witness: PointSet,
    pub exhaustive: bool,
    pub nodes_explored: u64,
}

fn witness_keys<S: serde::Serializer>(w: &PointSet, s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(w.len()))?;
    for v in w.points() {
        seq.serialize_element(v.entries())?;
    }
    seq.end()
}

/// Fixed-size bitset over point indices.
#[derive(Clone)]
struct Bits(Vec<u64>);

impl Bits {
    fn full(len: usize) -> Self {
        let mut words = vec![u64::MAX; len.div_ceil(64)];
        if len % 64 != 0 {
            *words.last_mut().unwrap() = (1u64 << (len % 64)) - 1;
        }
        Bits(words)
    }

    fn clear(&mut self, i: usize) {
        self.0[i / 64] &= !(1u64 << (i % 64));
    }

    fn count(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Keeps only indices strictly greater than `i`.
    fn retain_above(&mut self, i: usize) {
        let (w, b) = (i / 64, i % 64);
        for word in &mut self.0[..w] {
            *word = 0;
        }
        self.0[w] &= if b == 63 { 0 } else { u64::MAX << (b + 1) };
    }

    fn first(&self) -> Option<usize> {
        self.0
            .iter()
            .enumerate()
            .find(|(_, w)| **w != 0)
            .map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
    }
}

struct Searcher<'a> {
    p: u32,
    coords: Vec<Vec<u32>>,
    spec: &'a ProgressionSpec,
    degenerate: bool,
    budget: u64,
    nodes: u64,
    aborted: bool,
    best: Vec<usize>,
}

impl Searcher<'_> {
    fn key_of(&self, entries: impl Iterator<Item = u32>) -> usize {
        entries.fold(0usize, |acc, e| acc * self.p as usize + e as usize)
    }

    /// The `w` completing `coef[i] x + coef[j] y + coef[k] w = 0`.
    fn complete(&self, ci: u32, x: usize, cj: u32, y: usize, ck: u32) -> usize {
        let f = self.spec.field();
        let neg_inv = f.neg(f.inv(ck).expect("nonzero coefficient"));
        let (xs, ys) = (&self.coords[x], &self.coords[y]);
        self.key_of(
            xs.iter()
                .zip(ys)
                .map(|(&a, &b)| f.mul(neg_inv, f.add(f.mul(ci, a), f.mul(cj, b)))),
        )
    }

    /// Removes every candidate that would close a solution with `z` and the
    /// points already chosen.
    fn exclude(&self, chosen: &[usize], z: usize, cand: &mut Bits) {
        if self.degenerate {
            // with alpha = 0 or beta = 0, (x, y, y) or (y, x, y) is a solution for any x
            cand.0.iter_mut().for_each(|w| *w = 0);
            return;
        }
        let c = self.spec.coefficients();
        const SLOTS: [(usize, usize, usize); 3] = [(0, 1, 2), (0, 2, 1), (1, 2, 0)];
        for &a in chosen.iter().chain(std::iter::once(&z)) {
            for (i, j, k) in SLOTS {
                cand.clear(self.complete(c[i], a, c[j], z, c[k]));
                cand.clear(self.complete(c[i], z, c[j], a, c[k]));
            }
        }
    }

    fn dfs(&mut self, chosen: &mut Vec<usize>, mut cand: Bits) {
        self.nodes += 1;
        if self.nodes > self.budget {
            self.aborted = true;
            return;
        }
        if chosen.len() > self.best.len() {
            self.best = chosen.clone();
        }
        while let Some(z) = cand.first() {
            if chosen.len() + cand.count() <= self.best.len() {
                return;
            }
            cand.clear(z);
            let mut next = cand.clone();
            next.retain_above(z);
            self.exclude(chosen, z, &mut next);
            chosen.push(z);
            self.dfs(chosen, next);
            chosen.pop();
            if self.aborted {
                return;
            }
        }
    }
}

/// Depth-first branch and bound over points in key order. Each branch only
/// extends a partial set with points above its largest key, and a branch is
/// cut once its size plus remaining candidates cannot beat the best so far.
pub fn max_progression_free(
    q: u32,
    n: usize,
    spec: &ProgressionSpec,
    node_budget: u64,
) -> Result<SearchResult> {
    if spec.p() != q {
        return Err(Error::mismatch(format!(
            "search over F_{q} with coefficients over F_{}",
            spec.p()
        )));
    }
    let total = (q as u128).pow(n as u32);
    if total > SEARCH_LIMIT as u128 {
        return Err(Error::GuardExceeded {
            size: total,
            limit: SEARCH_LIMIT as u128,
        });
    }
    let total = total as usize;
    let coords = (0..total as u64)
        .map(|k| FieldVector::from_key(q, n, k).entries().to_vec())
        .collect();
    let mut s = Searcher {
        p: q,
        coords,
        spec,
        degenerate: spec.alpha == 0 || spec.beta == 0,
        budget: node_budget,
        nodes: 0,
        aborted: false,
        best: Vec::new(),
    };
    s.dfs(&mut Vec::new(), Bits::full(total));

    let keys: Vec<u64> = s.best.iter().map(|&i| i as u64).collect();
    let witness = PointSet::from_keys(q, n, &keys)?;
    debug_assert!(is_progression_free(&witness, spec).unwrap_or(false));
    Ok(SearchResult {
        q,
        n,
        coefficients: spec.coefficients(),
        max_size: witness.len(),
        witness,
        exhaustive: !s.aborted,
        nodes_explored: s.nodes.min(node_budget),
    })
}

/// Cap test over `F_3^n`: no `x + y + z = 0` apart from `x = y = z`.
pub fn verify_cap(a: &PointSet) -> Result<bool> {
    if a.p() != 3 {
        return Err(Error::domain(format!("caps live in F_3^n, got p = {}", a.p())));
    }
    is_progression_free(a, &ProgressionSpec::cap())
}

/// A card with four attributes in `{0, 1, 2}`, in the order
/// (count, shape, fill, color). Validity of a triple does not depend on the
/// order or on how values are labelled, as long as it is consistent.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SetCard {
    attrs: [u8; 4],
}

impl SetCard {
    pub fn new(attrs: [u8; 4]) -> Result<Self> {
        if let Some(a) = attrs.iter().find(|&&a| a > 2) {
            return Err(Error::domain(format!("card attribute {a} outside 0..=2")));
        }
        Ok(Self { attrs })
    }

    /// Attributes given as `1..=3`.
    pub fn one_based(attrs: [u8; 4]) -> Result<Self> {
        if attrs.iter().any(|&a| a == 0) {
            return Err(Error::domain("one-based attributes must be in 1..=3"));
        }
        Self::new(attrs.map(|a| a - 1))
    }

    pub fn attrs(&self) -> [u8; 4] {
        self.attrs
    }

    pub fn to_vector(&self) -> FieldVector {
        FieldVector::new(3, self.attrs.iter().map(|&a| a as u32).collect()).expect("attrs < 3")
    }
}

/// Three cards are valid when every attribute is all-equal or all-distinct.
pub fn is_valid_triple(a: &SetCard, b: &SetCard, c: &SetCard) -> bool {
    (0..4).all(|i| {
        let (x, y, z) = (a.attrs[i], b.attrs[i], c.attrs[i]);
        (x == y && y == z) || (x != y && y != z && x != z)
    })
}

/// All index triples `i < j < k` forming a valid triple.
pub fn find_valid_triples(cards: &[SetCard]) -> Result<Vec<[usize; 3]>> {
    let mut sorted = cards.to_vec();
    sorted.sort();
    if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
        return Err(Error::domain(format!("duplicate card {:?}", w[0].attrs)));
    }
    let mut out = Vec::new();
    for i in 0..cards.len() {
        for j in i + 1..cards.len() {
            for k in j + 1..cards.len() {
                if is_valid_triple(&cards[i], &cards[j], &cards[k]) {
                    out.push([i, j, k]);
                }
            }
        }
    }
    Ok(out)
}

pub fn cards_to_point_set(cards: &[SetCard]) -> Result<PointSet> {
    PointSet::new(3, 4, cards.iter().map(SetCard::to_vector).collect())
}

/// Reads cards from CSV: four columns per row, no header.
pub fn read_cards<R: Read>(input: R, one_based: bool) -> Result<Vec<SetCard>> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(input);
    let mut cards = Vec::new();
    for (line, rec) in rdr.records().enumerate() {
        let rec = rec?;
        if rec.len() == 1 && rec.get(0) == Some("") {
            continue;
        }
        if rec.len() != 4 {
            return Err(Error::parse(format!(
                "line {}: expected 4 attributes, got {}",
                line + 1,
                rec.len()
            )));
        }
        let mut attrs = [0u8; 4];
        for (slot, s) in attrs.iter_mut().zip(rec.iter()) {
            *slot = s
                .parse()
                .map_err(|e| Error::parse(format!("line {}: {e}", line + 1)))?;
        }
        cards.push(if one_based {
            SetCard::one_based(attrs)?
        } else {
            SetCard::new(attrs)?
        });
    }
    Ok(cards)
}

/// Three cards sharing count and shape, with distinct fill and color
/// (one-based attributes).
pub const SAMPLE_VALID_TRIPLE: [[u8; 4]; 3] = [[2, 1, 1, 2], [2, 2, 2, 2], [2, 3, 3, 2]];

/// Twelve cards without a valid triple (one-based attributes).
pub const SAMPLE_TWELVE_CAP: [[u8; 4]; 12] = [
    [1, 3, 2, 2],
    [1, 2, 3, 2],
    [3, 1, 2, 1],
    [3, 3, 1, 3],
    [1, 2, 3, 3],
    [3, 2, 3, 1],
    [3, 2, 1, 1],
    [3, 3, 2, 3],
    [1, 2, 2, 1],
    [2, 3, 2, 2],
    [3, 1, 3, 3],
    [1, 3, 1, 3],
];

pub fn sample_cards(rows: &[[u8; 4]]) -> Vec<SetCard> {
    rows.iter()
        .map(|&r| SetCard::one_based(r).expect("sample attributes in 1..=3"))
        .collect()
}
