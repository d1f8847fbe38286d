//! Finite posets given by cover relations, marked posets and linear extensions.
//!
//! Elements are opaque string ids. Internally every element is addressed by
//! its index in the lexicographically sorted id list, so "index order" and
//! "id order" coincide everywhere in the crate.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use crate::error::{Error, Result};
use crate::Rational;

/// A finite poset stored as its Hasse diagram plus the reflexive transitive
/// closure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poset {
    ids: Vec<String>,
    index: HashMap<String, usize>,
    covers: Vec<(usize, usize)>,
    upper: Vec<Vec<usize>>,
    lower: Vec<Vec<usize>>,
    leq: Vec<Vec<bool>>,
}

impl Poset {
    /// Build a poset from its cover relations. Covers must be acyclic and
    /// irredundant.
    pub fn new<S: AsRef<str>>(elements: &[S], covers: &[(S, S)]) -> Result<Self> {
        let (ids, index) = sorted_ids(elements)?;
        let rels = resolve_pairs(&index, covers)?;
        Self::build(ids, index, rels, true)
    }

    /// Build a poset from arbitrary (acyclic) relations; the relations are
    /// closed transitively and reduced to covers.
    pub fn from_relations<S: AsRef<str>>(elements: &[S], relations: &[(S, S)]) -> Result<Self> {
        let (ids, index) = sorted_ids(elements)?;
        let rels = resolve_pairs(&index, relations)?;
        Self::build(ids, index, rels, false)
    }

    fn build(
        ids: Vec<String>,
        index: HashMap<String, usize>,
        rels: Vec<(usize, usize)>,
        strict_covers: bool,
    ) -> Result<Self> {
        let n = ids.len();
        let mut succ = vec![Vec::new(); n];
        for &(p, q) in &rels {
            if p == q {
                return Err(Error::Cycle(ids[p].clone(), ids[q].clone()));
            }
            succ[p].push(q);
        }
        // Kahn's algorithm for a topological order
        let mut indeg = vec![0usize; n];
        for s in &succ {
            for &q in s {
                indeg[q] += 1;
            }
        }
        let mut stack: Vec<usize> = (0..n).rev().filter(|&i| indeg[i] == 0).collect();
        let mut topo = Vec::with_capacity(n);
        while let Some(p) = stack.pop() {
            topo.push(p);
            for &q in &succ[p] {
                indeg[q] -= 1;
                if indeg[q] == 0 {
                    stack.push(q);
                }
            }
        }
        if topo.len() < n {
            let (p, q) = rels
                .iter()
                .copied()
                .find(|&(p, q)| indeg[p] > 0 && indeg[q] > 0)
                .unwrap_or(rels[0]);
            return Err(Error::Cycle(ids[p].clone(), ids[q].clone()));
        }
        let mut leq = vec![vec![false; n]; n];
        for &p in topo.iter().rev() {
            leq[p][p] = true;
            for &q in &succ[p] {
                for r in 0..n {
                    if leq[q][r] {
                        leq[p][r] = true;
                    }
                }
            }
        }
        let is_cover =
            |p: usize, q: usize| p != q && leq[p][q] && !(0..n).any(|r| r != p && r != q && leq[p][r] && leq[r][q]);
        let covers: Vec<(usize, usize)> = if strict_covers {
            let mut seen = std::collections::HashSet::new();
            for &(p, q) in &rels {
                if !seen.insert((p, q)) || !is_cover(p, q) {
                    return Err(Error::RedundantCover(ids[p].clone(), ids[q].clone()));
                }
            }
            let mut c = rels.clone();
            c.sort_unstable();
            c
        } else {
            let mut c = Vec::new();
            for p in 0..n {
                for q in 0..n {
                    if is_cover(p, q) {
                        c.push((p, q));
                    }
                }
            }
            c
        };
        let mut upper = vec![Vec::new(); n];
        let mut lower = vec![Vec::new(); n];
        for &(p, q) in &covers {
            upper[p].push(q);
            lower[q].push(p);
        }
        Ok(Self {
            ids,
            index,
            covers,
            upper,
            lower,
            leq,
        })
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn id(&self, i: usize) -> &str {
        &self.ids[i]
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    pub fn index_of(&self, id: &str) -> Result<usize> {
        self.index
            .get(id)
            .copied()
            .ok_or_else(|| Error::UnknownElement(id.to_string()))
    }

    /// Cover relations `(p, q)` meaning `p ≺ q`, sorted by index.
    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    pub fn upper_covers(&self, i: usize) -> &[usize] {
        &self.upper[i]
    }

    pub fn lower_covers(&self, i: usize) -> &[usize] {
        &self.lower[i]
    }

    /// `p ⪯ q` in the transitive closure.
    pub fn leq(&self, p: usize, q: usize) -> bool {
        self.leq[p][q]
    }

    pub fn lt(&self, p: usize, q: usize) -> bool {
        p != q && self.leq[p][q]
    }

    pub fn comparable(&self, p: usize, q: usize) -> bool {
        self.leq[p][q] || self.leq[q][p]
    }

    /// Reachability query by id.
    pub fn relates(&self, p: &str, q: &str) -> Result<bool> {
        Ok(self.leq(self.index_of(p)?, self.index_of(q)?))
    }

    pub fn minimal_elements(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.lower[i].is_empty()).collect()
    }

    pub fn maximal_elements(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.upper[i].is_empty()).collect()
    }

    /// The same elements with extra relations `p ≺ q` added and re-reduced.
    pub fn with_relations(&self, extra: &[(usize, usize)]) -> Result<Poset> {
        let mut rels = self.covers.clone();
        rels.extend_from_slice(extra);
        Self::build(self.ids.clone(), self.index.clone(), rels, false)
    }

    /// The induced subposet on `keep` (indices of `self`). Relations are
    /// inherited from the transitive closure.
    pub fn induced(&self, keep: &[usize]) -> Poset {
        let ids: Vec<String> = keep.iter().map(|&i| self.ids[i].clone()).collect();
        let mut rels = Vec::new();
        for &p in keep {
            for &q in keep {
                if self.lt(p, q) {
                    rels.push((self.ids[p].clone(), self.ids[q].clone()));
                }
            }
        }
        Poset::from_relations(&ids, &rels).expect("induced subposet of a valid poset")
    }
}

fn sorted_ids<S: AsRef<str>>(elements: &[S]) -> Result<(Vec<String>, HashMap<String, usize>)> {
    let mut ids: Vec<String> = elements.iter().map(|s| s.as_ref().to_string()).collect();
    ids.sort();
    for w in ids.windows(2) {
        if w[0] == w[1] {
            return Err(Error::DuplicateElement(w[0].clone()));
        }
    }
    let index = ids.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect();
    Ok((ids, index))
}

fn resolve_pairs<S: AsRef<str>>(index: &HashMap<String, usize>, pairs: &[(S, S)]) -> Result<Vec<(usize, usize)>> {
    let look = |s: &S| {
        index
            .get(s.as_ref())
            .copied()
            .ok_or_else(|| Error::UnknownElement(s.as_ref().to_string()))
    };
    pairs.iter().map(|(p, q)| Ok((look(p)?, look(q)?))).collect()
}

/// A poset with marked elements `P*` and a marking `λ : P* → ℚ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MarkedPoset {
    poset: Poset,
    marking: Vec<Option<Rational>>,
}

/// A witness against strictness or regularity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    /// Marked `lower ≺ upper` without `λ(lower) < λ(upper)`.
    NotStrict { lower: String, upper: String },
    /// Cover `p ≺ q` with marked `a ⪯ q`, `p ⪯ b`, `a ≠ b` and `λ(a) ≥ λ(b)`.
    NotRegular { cover: (String, String), a: String, b: String },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NotStrict { lower, upper } => {
                write!(f, "not strict: {lower} < {upper} but marks are not increasing")
            }
            Violation::NotRegular { cover, a, b } => write!(
                f,
                "not regular: cover {} < {}, a = {a}, b = {b}",
                cover.0, cover.1
            ),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MarkingReport {
    pub strict: bool,
    pub regular: bool,
    pub violations: Vec<Violation>,
}

/// A saturated chain `lower ≺ interior[0] ≺ … ≺ upper` in the Hasse diagram.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct MarkedChain {
    pub lower: usize,
    pub interior: Vec<usize>,
    pub upper: usize,
}

impl MarkedPoset {
    /// Attach a marking. Every minimal and maximal element must be marked and
    /// the marking must be order-preserving.
    pub fn new<S: AsRef<str>>(poset: Poset, marks: &[(S, Rational)]) -> Result<Self> {
        let mut marking = vec![None; poset.len()];
        for (id, value) in marks {
            let i = poset.index_of(id.as_ref())?;
            if marking[i].is_some() {
                return Err(Error::InvalidMarking(format!("element `{}` marked twice", id.as_ref())));
            }
            marking[i] = Some(value.clone());
        }
        Self::from_marking(poset, marking)
    }

    /// Build from element ids, covers and integer marks.
    pub fn from_parts(elements: &[&str], covers: &[(&str, &str)], marks: &[(&str, i64)]) -> Result<Self> {
        let poset = Poset::new(elements, covers)?;
        let marks: Vec<(&str, Rational)> = marks.iter().map(|&(id, v)| (id, Rational::from_integer(v.into()))).collect();
        Self::new(poset, &marks)
    }

    pub fn from_marking(poset: Poset, marking: Vec<Option<Rational>>) -> Result<Self> {
        if marking.len() != poset.len() {
            return Err(Error::DimensionMismatch {
                expected: poset.len(),
                got: marking.len(),
            });
        }
        for i in poset.minimal_elements().into_iter().chain(poset.maximal_elements()) {
            if marking[i].is_none() {
                return Err(Error::InvalidMarking(format!(
                    "extremal element `{}` is not marked",
                    poset.id(i)
                )));
            }
        }
        for a in 0..poset.len() {
            for b in 0..poset.len() {
                if let (Some(la), Some(lb)) = (&marking[a], &marking[b]) {
                    if poset.lt(a, b) && la > lb {
                        return Err(Error::InvalidMarking(format!(
                            "marking decreases along {} < {}",
                            poset.id(a),
                            poset.id(b)
                        )));
                    }
                }
            }
        }
        Ok(Self { poset, marking })
    }

    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    pub fn len(&self) -> usize {
        self.poset.len()
    }

    pub fn is_empty(&self) -> bool {
        self.poset.is_empty()
    }

    pub fn is_marked(&self, i: usize) -> bool {
        self.marking[i].is_some()
    }

    pub fn mark(&self, i: usize) -> Option<&Rational> {
        self.marking[i].as_ref()
    }

    pub fn marking(&self) -> &[Option<Rational>] {
        &self.marking
    }

    pub fn marked(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.is_marked(i)).collect()
    }

    /// Unmarked elements in id order; these are the polytope coordinates.
    pub fn unmarked(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| !self.is_marked(i)).collect()
    }

    pub fn unmarked_ids(&self) -> Vec<String> {
        self.unmarked().into_iter().map(|i| self.poset.id(i).to_string()).collect()
    }

    pub fn is_integral(&self) -> bool {
        self.marking.iter().flatten().all(|v| v.is_integer())
    }

    /// Strictness and regularity together with every failing witness.
    pub fn validate(&self) -> MarkingReport {
        let p = &self.poset;
        let id = |i: usize| p.id(i).to_string();
        let marked = self.marked();
        let mut violations = Vec::new();
        for &a in &marked {
            for &b in &marked {
                if p.lt(a, b) && self.marking[a] >= self.marking[b] {
                    violations.push(Violation::NotStrict { lower: id(a), upper: id(b) });
                }
            }
        }
        let strict = violations.is_empty();
        for &(lo, hi) in p.covers() {
            for &a in marked.iter().filter(|&&a| p.leq(a, hi)) {
                for &b in marked.iter().filter(|&&b| p.leq(lo, b)) {
                    if a != b && self.marking[a] >= self.marking[b] {
                        violations.push(Violation::NotRegular {
                            cover: (id(lo), id(hi)),
                            a: id(a),
                            b: id(b),
                        });
                    }
                }
            }
        }
        let regular = !violations.iter().any(|v| matches!(v, Violation::NotRegular { .. }));
        MarkingReport {
            strict,
            regular,
            violations,
        }
    }

    pub fn is_strict(&self) -> bool {
        self.validate().strict
    }

    pub fn is_regular(&self) -> bool {
        self.validate().regular
    }

    /// Connected components of the undirected Hasse diagram, each sorted,
    /// ordered by least element.
    pub fn hasse_components(&self) -> Vec<Vec<usize>> {
        let n = self.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while parent[r] != r {
                r = parent[r];
            }
            let mut y = x;
            while parent[y] != r {
                let next = parent[y];
                parent[y] = r;
                y = next;
            }
            r
        }
        for &(p, q) in self.poset.covers() {
            let (rp, rq) = (find(&mut parent, p), find(&mut parent, q));
            if rp != rq {
                parent[rp.max(rq)] = rp.min(rq);
            }
        }
        let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for i in 0..n {
            let r = find(&mut parent, i);
            groups.entry(r).or_default().push(i);
        }
        let mut comps: Vec<Vec<usize>> = groups.into_values().collect();
        comps.sort_by_key(|c| c[0]);
        comps
    }

    /// All saturated chains with endpoints satisfying `endpoint` and interior
    /// elements satisfying `interior`, sorted.
    pub fn saturated_chains(&self, endpoint: impl Fn(usize) -> bool, interior: impl Fn(usize) -> bool) -> Vec<MarkedChain> {
        let p = &self.poset;
        let mut out = Vec::new();
        fn walk(
            p: &Poset,
            start: usize,
            at: usize,
            path: &mut Vec<usize>,
            endpoint: &dyn Fn(usize) -> bool,
            interior: &dyn Fn(usize) -> bool,
            out: &mut Vec<MarkedChain>,
        ) {
            for &q in p.upper_covers(at) {
                if endpoint(q) {
                    out.push(MarkedChain {
                        lower: start,
                        interior: path.clone(),
                        upper: q,
                    });
                } else if interior(q) {
                    path.push(q);
                    walk(p, start, q, path, endpoint, interior, out);
                    path.pop();
                }
            }
        }
        for a in (0..self.len()).filter(|&a| endpoint(a)) {
            walk(p, a, a, &mut Vec::new(), &endpoint, &interior, &mut out);
        }
        out.sort();
        out
    }

    /// Saturated chains between marked elements through unmarked ones.
    pub fn maximal_marked_chains(&self) -> Vec<MarkedChain> {
        self.saturated_chains(|i| self.is_marked(i), |i| !self.is_marked(i))
    }

    /// `P` with `a ≺ b` added for all marked `a, b` with `λ(a) < λ(b)`.
    pub fn augment_marked_order(&self) -> Result<Poset> {
        let marked = self.marked();
        let mut extra = Vec::new();
        for &a in &marked {
            for &b in &marked {
                if self.marking[a] < self.marking[b] {
                    extra.push((a, b));
                }
            }
        }
        self.poset.with_relations(&extra)
    }

    /// The augmented order with equal-mark incomparable marked elements
    /// additionally ordered by id, so that all marked elements form a chain.
    pub fn extension_poset(&self) -> Result<Poset> {
        let marked = self.marked();
        let mut extra = Vec::new();
        for (i, &a) in marked.iter().enumerate() {
            for &b in &marked[i + 1..] {
                match self.marking[a].cmp(&self.marking[b]) {
                    Ordering::Less => extra.push((a, b)),
                    Ordering::Greater => extra.push((b, a)),
                    Ordering::Equal if !self.poset.leq(b, a) => extra.push((a, b)),
                    Ordering::Equal => {}
                }
            }
        }
        self.poset.with_relations(&extra)
    }

    /// The induced marked subposet on the elements selected by `keep`; all
    /// marked elements are always kept.
    pub fn restrict(&self, keep: impl Fn(usize) -> bool) -> MarkedPoset {
        let kept: Vec<usize> = (0..self.len()).filter(|&i| self.is_marked(i) || keep(i)).collect();
        let poset = self.poset.induced(&kept);
        let marking = kept.iter().map(|&i| self.marking[i].clone()).collect();
        MarkedPoset::from_marking(poset, marking).expect("restriction keeps extremal marks")
    }

    /// Mark additional elements (e.g. order coordinates fixed to a point).
    pub fn with_marks(&self, extra: &[(usize, Rational)]) -> Result<MarkedPoset> {
        let mut marking = self.marking.clone();
        for (i, v) in extra {
            marking[*i] = Some(v.clone());
        }
        MarkedPoset::from_marking(self.poset.clone(), marking)
    }
}

/// A split of the unmarked elements into chain elements `C` and order
/// elements `O`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainOrderPartition {
    in_chain: Vec<bool>,
}

impl ChainOrderPartition {
    pub fn new<S: AsRef<str>>(mp: &MarkedPoset, chain: &[S], order: &[S]) -> Result<Self> {
        let mut seen = vec![0u8; mp.len()];
        let mut in_chain = vec![false; mp.len()];
        for (ids, is_chain) in [(chain, true), (order, false)] {
            for id in ids {
                let i = mp.poset().index_of(id.as_ref())?;
                if mp.is_marked(i) {
                    return Err(Error::BadPartition(format!("`{}` is marked", id.as_ref())));
                }
                seen[i] += 1;
                in_chain[i] = is_chain;
            }
        }
        for i in 0..mp.len() {
            if !mp.is_marked(i) && seen[i] != 1 {
                let what = if seen[i] == 0 { "missing from" } else { "repeated in" };
                return Err(Error::BadPartition(format!("`{}` is {what} C ∪ O", mp.poset().id(i))));
            }
        }
        Ok(Self { in_chain })
    }

    /// Partition from a predicate on unmarked element indices.
    pub fn from_fn(mp: &MarkedPoset, is_chain: impl Fn(usize) -> bool) -> Self {
        Self {
            in_chain: (0..mp.len()).map(|i| !mp.is_marked(i) && is_chain(i)).collect(),
        }
    }

    /// All `2^u` partitions of the unmarked elements, indexed by bitmask over
    /// the unmarked elements in id order.
    pub fn all(mp: &MarkedPoset) -> Vec<Self> {
        let unmarked = mp.unmarked();
        (0u32..1 << unmarked.len())
            .map(|mask| {
                let mut in_chain = vec![false; mp.len()];
                for (bit, &i) in unmarked.iter().enumerate() {
                    in_chain[i] = mask >> bit & 1 == 1;
                }
                Self { in_chain }
            })
            .collect()
    }

    pub fn is_chain(&self, i: usize) -> bool {
        self.in_chain[i]
    }

    pub fn chain(&self) -> Vec<usize> {
        (0..self.in_chain.len()).filter(|&i| self.in_chain[i]).collect()
    }

    pub fn order(&self, mp: &MarkedPoset) -> Vec<usize> {
        (0..mp.len()).filter(|&i| !mp.is_marked(i) && !self.in_chain[i]).collect()
    }
}

/// A bijection from elements to `1..=n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Labeling {
    labels: Vec<usize>,
}

impl Labeling {
    /// Validate that `labels` (indexed by element) is a natural labeling.
    pub fn new(poset: &Poset, labels: Vec<usize>) -> Result<Self> {
        let n = poset.len();
        if labels.len() != n {
            return Err(Error::BadLabeling(format!("{} labels for {n} elements", labels.len())));
        }
        let mut seen = vec![false; n + 1];
        for &l in &labels {
            if l == 0 || l > n || std::mem::replace(&mut seen[l], true) {
                return Err(Error::BadLabeling(format!("label {l} is out of range or repeated")));
            }
        }
        for &(p, q) in poset.covers() {
            if labels[p] > labels[q] {
                return Err(Error::BadLabeling(format!(
                    "{} < {} but label {} > {}",
                    poset.id(p),
                    poset.id(q),
                    labels[p],
                    labels[q]
                )));
            }
        }
        Ok(Self { labels })
    }

    /// The labeling that numbers the elements of a linear extension `word`
    /// from 1 upward.
    pub fn from_word(poset: &Poset, word: &[usize]) -> Result<Self> {
        let mut labels = vec![0; poset.len()];
        for (pos, &x) in word.iter().enumerate() {
            if x >= labels.len() {
                return Err(Error::BadLabeling(format!("index {x} out of range")));
            }
            labels[x] = pos + 1;
        }
        Self::new(poset, labels)
    }

    pub fn label(&self, i: usize) -> usize {
        self.labels[i]
    }
}

/// The linear extension obtained by always taking the available minimal
/// element of smallest id.
pub fn greedy_linear_extension(poset: &Poset) -> Vec<usize> {
    let n = poset.len();
    let mut pending: Vec<usize> = (0..n).map(|i| poset.lower_covers(i).len()).collect();
    let mut placed = vec![false; n];
    let mut word = Vec::with_capacity(n);
    while word.len() < n {
        let next = (0..n).find(|&i| !placed[i] && pending[i] == 0).expect("acyclic");
        placed[next] = true;
        word.push(next);
        for &q in poset.upper_covers(next) {
            pending[q] -= 1;
        }
    }
    word
}

/// A linear extension `x_1 … x_n` with its descent prefix counts
/// `d_i = |{ j < i : label(x_j) > label(x_{j+1}) }|`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtensionWord {
    pub word: Vec<usize>,
    pub descent_prefix: Vec<usize>,
}

impl ExtensionWord {
    /// Total number of descents `d(π) = d_n`.
    pub fn descents(&self) -> usize {
        self.descent_prefix.last().copied().unwrap_or(0)
    }
}

struct Frame {
    candidates: Vec<usize>,
    next: usize,
}

/// Stream of all linear extensions in lexicographic order of labels (of ids
/// when no labeling is given; descents are then all zero).
pub struct LinearExtensions<'a> {
    poset: &'a Poset,
    labeling: Option<&'a Labeling>,
    pending: Vec<usize>,
    placed: Vec<bool>,
    word: Vec<usize>,
    stack: Vec<Frame>,
    empty_done: bool,
}

impl<'a> LinearExtensions<'a> {
    fn key(&self, i: usize) -> usize {
        self.labeling.map_or(i, |l| l.label(i))
    }

    fn available(&self) -> Vec<usize> {
        let mut c: Vec<usize> = (0..self.poset.len())
            .filter(|&i| !self.placed[i] && self.pending[i] == 0)
            .collect();
        c.sort_by_key(|&i| self.key(i));
        c
    }

    fn place(&mut self, x: usize) {
        self.placed[x] = true;
        self.word.push(x);
        for &q in self.poset.upper_covers(x) {
            self.pending[q] -= 1;
        }
    }

    fn unplace(&mut self) {
        let x = self.word.pop().expect("nonempty word");
        self.placed[x] = false;
        for &q in self.poset.upper_covers(x) {
            self.pending[q] += 1;
        }
    }

    fn emit(&self) -> ExtensionWord {
        let mut descent_prefix = Vec::with_capacity(self.word.len());
        let mut d = 0;
        for (i, &x) in self.word.iter().enumerate() {
            if i > 0 {
                if let Some(l) = self.labeling {
                    if l.label(self.word[i - 1]) > l.label(x) {
                        d += 1;
                    }
                }
            }
            descent_prefix.push(d);
        }
        ExtensionWord {
            word: self.word.clone(),
            descent_prefix,
        }
    }
}

impl Iterator for LinearExtensions<'_> {
    type Item = ExtensionWord;

    fn next(&mut self) -> Option<ExtensionWord> {
        let n = self.poset.len();
        if n == 0 {
            if self.empty_done {
                return None;
            }
            self.empty_done = true;
            return Some(ExtensionWord {
                word: Vec::new(),
                descent_prefix: Vec::new(),
            });
        }
        loop {
            let frame = self.stack.last_mut()?;
            if frame.next < frame.candidates.len() {
                let x = frame.candidates[frame.next];
                frame.next += 1;
                self.place(x);
                if self.word.len() == n {
                    let out = self.emit();
                    self.unplace();
                    return Some(out);
                }
                let candidates = self.available();
                self.stack.push(Frame { candidates, next: 0 });
            } else {
                self.stack.pop();
                if self.stack.is_empty() {
                    return None;
                }
                self.unplace();
            }
        }
    }
}

/// Enumerate the linear extensions of `poset`. With a labeling the stream is
/// ordered lexicographically by labels and carries descent statistics.
pub fn linear_extensions<'a>(poset: &'a Poset, labeling: Option<&'a Labeling>) -> Result<LinearExtensions<'a>> {
    if let Some(l) = labeling {
        Labeling::new(poset, l.labels.clone())?;
    }
    let n = poset.len();
    let mut it = LinearExtensions {
        poset,
        labeling,
        pending: (0..n).map(|i| poset.lower_covers(i).len()).collect(),
        placed: vec![false; n],
        word: Vec::with_capacity(n),
        stack: Vec::new(),
        empty_done: false,
    };
    let candidates = it.available();
    it.stack.push(Frame { candidates, next: 0 });
    Ok(it)
}
