//! The three polytope families of a marked poset and the face partitions of
//! marked order polytopes.
//!
//! Every polytope lives in the space of unmarked coordinates, ordered by id;
//! marked coordinates are substituted by their marks.

use std::collections::BTreeSet;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poset::{greedy_linear_extension, ChainOrderPartition, MarkedPoset};
use crate::polytope::{HRepresentation, LinearInequality, VRepresentation};
use crate::{limits, Rational};

/// Position of each element among the coordinates (`None` for marked ones).
fn coordinate_map(mp: &MarkedPoset) -> Vec<Option<usize>> {
    let mut next = 0;
    (0..mp.len())
        .map(|i| {
            (!mp.is_marked(i)).then(|| {
                next += 1;
                next - 1
            })
        })
        .collect()
}

fn empty_hrep(mp: &MarkedPoset) -> HRepresentation {
    HRepresentation::new(mp.unmarked_ids())
}

/// Append `Σ x_interior + x_lower − x_upper ≤ 0`, substituting marks.
fn push_chain(
    mp: &MarkedPoset,
    coords: &[Option<usize>],
    h: &mut HRepresentation,
    lower: usize,
    interior: &[usize],
    upper: usize,
) -> Result<()> {
    let mut terms = Vec::with_capacity(interior.len() + 2);
    let mut rhs = Rational::zero();
    for &p in interior {
        terms.push((coords[p].expect("interior is unmarked"), Rational::one()));
    }
    match mp.mark(lower) {
        Some(l) => rhs -= l,
        None => terms.push((coords[lower].expect("unmarked"), Rational::one())),
    }
    match mp.mark(upper) {
        Some(u) => rhs += u,
        None => terms.push((coords[upper].expect("unmarked"), -Rational::one())),
    }
    if terms.is_empty() {
        if rhs < Rational::zero() {
            let p = mp.poset();
            return Err(Error::InfeasibleMarking(format!(
                "chain from {} to {} has negative room {}",
                p.id(lower),
                p.id(upper),
                rhs
            )));
        }
        return Ok(());
    }
    h.push_sparse(&terms, rhs)
}

/// H-representation of the marked order polytope: one inequality per cover.
pub fn build_order_hrep(mp: &MarkedPoset) -> Result<HRepresentation> {
    let coords = coordinate_map(mp);
    let mut h = empty_hrep(mp);
    for &(p, q) in mp.poset().covers() {
        push_chain(mp, &coords, &mut h, p, &[], q)?;
    }
    Ok(h)
}

/// H-representation of the marked chain polytope: nonnegativity plus one
/// inequality per saturated chain between marked elements.
pub fn build_chain_hrep(mp: &MarkedPoset) -> Result<HRepresentation> {
    build_chain_order_hrep(mp, &ChainOrderPartition::from_fn(mp, |_| true))
}

/// H-representation of the marked chain-order polytope for the split `C ⊔ O`.
pub fn build_chain_order_hrep(mp: &MarkedPoset, part: &ChainOrderPartition) -> Result<HRepresentation> {
    let coords = coordinate_map(mp);
    let mut h = empty_hrep(mp);
    for c in part.chain() {
        h.push_sparse(&[(coords[c].expect("chain element is unmarked"), -Rational::one())], Rational::zero())?;
    }
    let chains = mp.saturated_chains(|i| !part.is_chain(i), |i| part.is_chain(i));
    for ch in &chains {
        push_chain(mp, &coords, &mut h, ch.lower, &ch.interior, ch.upper)?;
    }
    Ok(h)
}

/// Membership in the chain-order polytope through the split into an order
/// part on `P ∖ C` and a chain part for the marking extended by `x_O`.
pub fn decomposed_membership(mp: &MarkedPoset, part: &ChainOrderPartition, x: &[Rational]) -> Result<bool> {
    let coords = coordinate_map(mp);
    let order = part.order(mp);
    let restricted = mp.restrict(|i| !part.is_chain(i));
    let x_order: Vec<Rational> = order.iter().map(|&o| x[coords[o].expect("unmarked")].clone()).collect();
    if !build_order_hrep(&restricted)?.contains(&x_order) {
        return Ok(false);
    }
    let extra: Vec<(usize, Rational)> = order.iter().map(|&o| (o, x[coords[o].expect("unmarked")].clone())).collect();
    let extended = match mp.with_marks(&extra) {
        Ok(m) => m,
        Err(Error::InvalidMarking(_)) => return Ok(false),
        Err(e) => return Err(e),
    };
    let x_chain: Vec<Rational> = part.chain().iter().map(|&c| x[coords[c].expect("unmarked")].clone()).collect();
    match build_chain_hrep(&extended) {
        Ok(h) => Ok(h.contains(&x_chain)),
        Err(Error::InfeasibleMarking(_)) => Ok(false),
        Err(e) => Err(e),
    }
}

/// A partition of the poset into blocks together with its free blocks
/// (blocks without marked elements).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FacePartition {
    blocks: Vec<Vec<usize>>,
    free: Vec<usize>,
}

impl FacePartition {
    /// Validate that `blocks` partitions the elements of `mp`.
    pub fn new(mp: &MarkedPoset, blocks: Vec<Vec<usize>>) -> Result<Self> {
        let mut seen = vec![false; mp.len()];
        for b in &blocks {
            if b.is_empty() {
                return Err(Error::NotAPartition("empty block".into()));
            }
            for &i in b {
                if i >= mp.len() || std::mem::replace(&mut seen[i], true) {
                    return Err(Error::NotAPartition(format!("element index {i} repeated or out of range")));
                }
            }
        }
        if let Some(i) = seen.iter().position(|s| !s) {
            return Err(Error::NotAPartition(format!("`{}` is in no block", mp.poset().id(i))));
        }
        let mut blocks: Vec<Vec<usize>> = blocks
            .into_iter()
            .map(|mut b| {
                b.sort_unstable();
                b
            })
            .collect();
        blocks.sort();
        let free = (0..blocks.len())
            .filter(|&k| blocks[k].iter().all(|&i| !mp.is_marked(i)))
            .collect();
        Ok(Self { blocks, free })
    }

    /// Build from element ids.
    pub fn from_ids(mp: &MarkedPoset, blocks: &[&[&str]]) -> Result<Self> {
        let idx = blocks
            .iter()
            .map(|b| b.iter().map(|id| mp.poset().index_of(id)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Self::new(mp, idx)
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn free_blocks(&self) -> Vec<&[usize]> {
        self.free.iter().map(|&k| self.blocks[k].as_slice()).collect()
    }

    pub fn free_count(&self) -> usize {
        self.free.len()
    }
}

/// Values on all elements: marks on `P*`, `x` on the unmarked coordinates.
fn full_values(mp: &MarkedPoset, x: &[Rational]) -> Vec<Rational> {
    let mut k = 0;
    (0..mp.len())
        .map(|i| match mp.mark(i) {
            Some(v) => v.clone(),
            None => {
                k += 1;
                x[k - 1].clone()
            }
        })
        .collect()
}

fn blocks_of_values(mp: &MarkedPoset, values: &[Rational]) -> Vec<Vec<usize>> {
    let n = mp.len();
    let p = mp.poset();
    let mut label: Vec<usize> = (0..n).collect();
    // closure of "comparable with equal value"
    let mut changed = true;
    while changed {
        changed = false;
        for i in 0..n {
            for j in 0..n {
                if label[i] != label[j] && values[i] == values[j] && p.comparable(i, j) {
                    let m = label[i].min(label[j]);
                    let (a, b) = (label[i], label[j]);
                    for l in label.iter_mut() {
                        if *l == a || *l == b {
                            *l = m;
                        }
                    }
                    changed = true;
                }
            }
        }
    }
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    for root in (0..n).filter(|&i| label[i] == i) {
        blocks.push((0..n).filter(|&i| label[i] == root).collect());
    }
    blocks
}

/// The partition `π_x` of a point of the marked order polytope.
pub fn face_partition_of_point(mp: &MarkedPoset, x: &[Rational]) -> Result<FacePartition> {
    if !build_order_hrep(mp)?.contains(x) {
        return Err(Error::PointOutsidePolytope);
    }
    let values = full_values(mp, x);
    FacePartition::new(mp, blocks_of_values(mp, &values))
}

/// Face-partition test: blocks connected, quotient order antisymmetric,
/// marks compatible with the quotient order and strict across blocks.
pub fn is_face_partition(mp: &MarkedPoset, fp: &FacePartition) -> Result<bool> {
    let fp = FacePartition::new(mp, fp.blocks.clone())?;
    let p = mp.poset();
    let blocks = fp.blocks();
    let nb = blocks.len();

    for b in blocks {
        let mut reached = vec![b[0]];
        let mut frontier = vec![b[0]];
        while let Some(u) = frontier.pop() {
            for &v in b {
                if !reached.contains(&v) && p.comparable(u, v) {
                    reached.push(v);
                    frontier.push(v);
                }
            }
        }
        if reached.len() != b.len() {
            return Ok(false);
        }
    }

    let mut block_of = vec![0; mp.len()];
    for (k, b) in blocks.iter().enumerate() {
        for &i in b {
            block_of[i] = k;
        }
    }
    let mut reach = vec![vec![false; nb]; nb];
    for (k, row) in reach.iter_mut().enumerate() {
        row[k] = true;
    }
    for &(a, b) in p.covers() {
        reach[block_of[a]][block_of[b]] = true;
    }
    for k in 0..nb {
        for i in 0..nb {
            if reach[i][k] {
                for j in 0..nb {
                    if reach[k][j] {
                        reach[i][j] = true;
                    }
                }
            }
        }
    }
    for i in 0..nb {
        for j in 0..nb {
            if i != j && reach[i][j] && reach[j][i] {
                return Ok(false);
            }
        }
    }

    let block_mark = |k: usize| blocks[k].iter().filter_map(|&i| mp.mark(i)).collect::<Vec<_>>();
    let marks: Vec<Vec<&Rational>> = (0..nb).map(block_mark).collect();
    for i in 0..nb {
        for j in 0..nb {
            if !reach[i][j] {
                continue;
            }
            for a in &marks[i] {
                for b in &marks[j] {
                    if a > b || (i != j && a == b) {
                        return Ok(false);
                    }
                }
            }
        }
    }
    Ok(true)
}

/// Vertices of the marked order polytope found combinatorially: the
/// order-preserving assignments of mark values to unmarked elements whose
/// face partition has no free block.
pub fn order_vertices_combinatorial(mp: &MarkedPoset) -> Result<VRepresentation> {
    let p = mp.poset();
    let values: Vec<Rational> = mp
        .marking()
        .iter()
        .flatten()
        .cloned()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let order: Vec<usize> = greedy_linear_extension(p).into_iter().filter(|&i| !mp.is_marked(i)).collect();
    let upper_mark: Vec<Option<Rational>> = (0..mp.len())
        .map(|i| mp.marked().into_iter().filter(|&b| p.leq(i, b)).filter_map(|b| mp.mark(b).cloned()).min())
        .collect();

    struct Search<'a> {
        mp: &'a MarkedPoset,
        values: &'a [Rational],
        order: &'a [usize],
        upper_mark: &'a [Option<Rational>],
        current: Vec<Option<Rational>>,
        nodes: u64,
        cap: u64,
        out: Vec<Vec<Rational>>,
    }

    impl Search<'_> {
        fn run(&mut self, depth: usize) -> Result<()> {
            self.nodes += 1;
            if self.nodes > self.cap {
                return Err(Error::WorkCapExceeded {
                    what: "combinatorial vertex search",
                    needed: u128::from(self.nodes),
                    cap: self.cap,
                });
            }
            if depth == self.order.len() {
                let vals: Vec<Rational> = self.current.iter().map(|v| v.clone().expect("assigned")).collect();
                let blocks = blocks_of_values(self.mp, &vals);
                if blocks.iter().all(|b| b.iter().any(|&i| self.mp.is_marked(i))) {
                    self.out.push(self.order_point(&vals));
                }
                return Ok(());
            }
            let e = self.order[depth];
            let lower = self
                .mp
                .poset()
                .lower_covers(e)
                .iter()
                .filter_map(|&q| self.current[q].clone())
                .max();
            for v in self.values {
                if lower.as_ref().is_some_and(|l| v < l) {
                    continue;
                }
                if self.upper_mark[e].as_ref().is_some_and(|u| v > u) {
                    break;
                }
                self.current[e] = Some(v.clone());
                self.run(depth + 1)?;
            }
            self.current[e] = None;
            Ok(())
        }

        fn order_point(&self, vals: &[Rational]) -> Vec<Rational> {
            (0..self.mp.len())
                .filter(|&i| !self.mp.is_marked(i))
                .map(|i| vals[i].clone())
                .collect()
        }
    }

    let mut search = Search {
        mp,
        values: &values,
        order: &order,
        upper_mark: &upper_mark,
        current: mp.marking().to_vec(),
        nodes: 0,
        cap: limits::combinatorial_node_cap(),
        out: Vec::new(),
    };
    search.run(0)?;
    Ok(VRepresentation::new(search.out))
}

/// The facet inequalities predicted from the covers: `x_p ≤ x_q`,
/// `x_p ≤ λ(b)` and `λ(a) ≤ x_p`, one per cover with an unmarked end.
pub fn order_facets_combinatorial(mp: &MarkedPoset) -> Result<Vec<LinearInequality>> {
    let h = build_order_hrep(mp)?;
    let mut out: Vec<LinearInequality> = h.inequalities().to_vec();
    out.sort();
    out.dedup();
    Ok(out)
}
