//! Reproducible random strict regular marked posets and the agreement
//! suites run over them.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use num_traits::Zero;

use crate::ehrhart::{ehrhart_by_counting, ehrhart_formula_marked_order};
use crate::error::{Error, Result};
use crate::marked::{build_chain_hrep, build_chain_order_hrep, build_order_hrep};
use crate::polytope::{HRepresentation, LinearInequality};
use crate::poset::{greedy_linear_extension, ChainOrderPartition, Labeling, MarkedPoset, Poset};
use crate::two_level::{chain_order_two_level_criterion, chain_two_level_criterion, is_two_level_direct, order_two_level_criterion};
use crate::{rat, Rational};

/// Size bounds for generated marked posets.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CorpusParams {
    pub min_unmarked: usize,
    pub max_unmarked: usize,
    pub max_marked: usize,
    pub max_mark: i64,
}

impl Default for CorpusParams {
    fn default() -> Self {
        Self {
            min_unmarked: 1,
            max_unmarked: 5,
            max_marked: 5,
            max_mark: 4,
        }
    }
}

const MAX_ATTEMPTS: usize = 100_000;

fn subset(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Vec<usize> {
    (0..n).filter(|_| rng.gen_bool(p)).collect()
}

fn nonempty_subset(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Vec<usize> {
    let mut s = subset(rng, n, p);
    if s.is_empty() {
        s.push(rng.gen_range(0..n));
    }
    s
}

fn attempt(rng: &mut ChaCha8Rng, params: &CorpusParams, u: usize) -> Option<MarkedPoset> {
    let r = rng.gen_range(2..=params.max_marked.max(2));
    let xs: Vec<String> = (0..u).map(|i| format!("x{i}")).collect();
    let ms: Vec<String> = (0..r).map(|i| format!("m{i}")).collect();

    let mut relations: Vec<(String, String)> = Vec::new();
    let density = rng.gen_range(0.2..0.6);
    for i in 0..u {
        for j in i + 1..u {
            if rng.gen_bool(density) {
                relations.push((xs[i].clone(), xs[j].clone()));
            }
        }
    }
    for m in &ms {
        let (below, above) = match rng.gen_range(0..3) {
            0 => (Vec::new(), nonempty_subset(rng, u, 0.4)),
            1 => (nonempty_subset(rng, u, 0.4), Vec::new()),
            _ => (nonempty_subset(rng, u, 0.3), nonempty_subset(rng, u, 0.3)),
        };
        relations.extend(below.into_iter().map(|i| (xs[i].clone(), m.clone())));
        relations.extend(above.into_iter().map(|i| (m.clone(), xs[i].clone())));
    }
    let elements: Vec<String> = ms.iter().chain(&xs).cloned().collect();
    let poset = Poset::from_relations(&elements, &relations).ok()?;

    let mut marking: Vec<Option<Rational>> = vec![None; poset.len()];
    for x in greedy_linear_extension(&poset) {
        if !poset.id(x).starts_with('m') {
            continue;
        }
        let lo = (0..poset.len())
            .filter(|&a| poset.lt(a, x))
            .filter_map(|a| marking[a].as_ref().map(|v: &Rational| v.to_integer()))
            .max()
            .map_or(0, |v| i64::try_from(v).unwrap_or(i64::MAX) + 1);
        if lo > params.max_mark {
            return None;
        }
        marking[x] = Some(rat(rng.gen_range(lo..=params.max_mark)));
    }
    let mp = MarkedPoset::from_marking(poset, marking).ok()?;
    let report = mp.validate();
    (report.strict && report.regular).then_some(mp)
}

/// One random strict regular marked poset with integer marks in
/// `0..=max_mark`: the number of unmarked elements is drawn uniformly, then
/// posets of that size are drawn until one is strict and regular.
pub fn random_marked_poset(rng: &mut ChaCha8Rng, params: &CorpusParams) -> Result<MarkedPoset> {
    let lo = params.min_unmarked.max(1);
    let u = rng.gen_range(lo..=params.max_unmarked.max(lo));
    for _ in 0..MAX_ATTEMPTS {
        if let Some(mp) = attempt(rng, params, u) {
            return Ok(mp);
        }
    }
    Err(Error::PreconditionViolated(format!(
        "no strict regular marked poset found in {MAX_ATTEMPTS} attempts for {params:?}"
    )))
}

/// `count` marked posets from the given seed.
pub fn generate(seed: u64, count: usize, params: &CorpusParams) -> Result<Vec<MarkedPoset>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| random_marked_poset(&mut rng, params)).collect()
}

/// A uniformly chosen available element at each step gives a random natural
/// labeling.
pub fn random_natural_labeling(poset: &Poset, rng: &mut ChaCha8Rng) -> Labeling {
    let n = poset.len();
    let mut pending: Vec<usize> = (0..n).map(|i| poset.lower_covers(i).len()).collect();
    let mut placed = vec![false; n];
    let mut word = Vec::with_capacity(n);
    while word.len() < n {
        let avail: Vec<usize> = (0..n).filter(|&i| !placed[i] && pending[i] == 0).collect();
        let x = *avail.choose(rng).expect("acyclic");
        placed[x] = true;
        word.push(x);
        for &q in poset.upper_covers(x) {
            pending[q] -= 1;
        }
    }
    Labeling::from_word(poset, &word).expect("a linear extension is natural")
}

/// A random unimodular integer matrix (product of elementary operations and
/// a signed permutation) together with a random integer shift.
pub fn random_unimodular_map(dim: usize, rng: &mut ChaCha8Rng) -> (Vec<Vec<i64>>, Vec<i64>) {
    let mut m: Vec<Vec<i64>> = (0..dim).map(|i| (0..dim).map(|j| i64::from(i == j)).collect()).collect();
    let mut order: Vec<usize> = (0..dim).collect();
    order.shuffle(rng);
    m = order.iter().map(|&i| m[i].clone()).collect();
    for row in &mut m {
        if rng.gen_bool(0.5) {
            row.iter_mut().for_each(|v| *v = -*v);
        }
    }
    if dim >= 2 {
        for _ in 0..2 * dim {
            let i = rng.gen_range(0..dim);
            let mut j = rng.gen_range(0..dim - 1);
            if j >= i {
                j += 1;
            }
            let f = rng.gen_range(-2..=2);
            for c in 0..dim {
                m[i][c] += f * m[j][c];
            }
        }
    }
    let shift = (0..dim).map(|_| rng.gen_range(-3..=3)).collect();
    (m, shift)
}

/// The polyhedron `{ y : U y + t ∈ P }`.
pub fn pull_back(h: &HRepresentation, u: &[Vec<i64>], t: &[i64]) -> Result<HRepresentation> {
    let d = h.dim();
    let map = |c: &LinearInequality| -> Result<LinearInequality> {
        let a: Vec<Rational> = c.coeffs().iter().map(|v| Rational::from_integer(v.clone())).collect();
        let coeffs: Vec<Rational> = (0..d)
            .map(|j| (0..d).map(|i| &a[i] * rat(u[i][j])).fold(Rational::zero(), |s, v| s + v))
            .collect();
        let offset = (0..d).map(|i| &a[i] * rat(t[i])).fold(Rational::zero(), |s, v| s + v);
        LinearInequality::new(&coeffs, c.rhs() - offset)
    };
    let mut out = HRepresentation::new(h.coordinates().to_vec());
    for c in h.inequalities() {
        out.push_inequality(map(c)?)?;
    }
    for c in h.equalities() {
        out.push_equality(map(c)?.as_equality())?;
    }
    Ok(out)
}

/// Result of one agreement check on one marked poset.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteOutcome {
    pub suite: &'static str,
    pub passed: bool,
    pub detail: String,
}

fn outcome<T: std::fmt::Display + PartialEq>(suite: &'static str, left: T, right: T) -> SuiteOutcome {
    SuiteOutcome {
        suite,
        passed: left == right,
        detail: format!("{left} vs {right}"),
    }
}

/// Run every agreement suite on `mp`. Chain-order partitions are only
/// enumerated when there are at most `chain_order_limit` unmarked elements.
pub fn agreement_suites(mp: &MarkedPoset, chain_order_limit: usize) -> Result<Vec<SuiteOutcome>> {
    let order = build_order_hrep(mp)?;
    let chain = build_chain_hrep(mp)?;
    let mut out = vec![
        outcome("order two-level", order_two_level_criterion(mp)?, is_two_level_direct(&order)?.two_level),
        outcome("chain two-level", chain_two_level_criterion(mp)?.two_level, is_two_level_direct(&chain)?.two_level),
    ];
    let counted = ehrhart_by_counting(&order)?;
    out.push(outcome("ehrhart formula", ehrhart_formula_marked_order(mp)?, counted.clone()));
    out.push(outcome("ehrhart order/chain", ehrhart_by_counting(&chain)?, counted.clone()));
    if mp.unmarked().len() <= chain_order_limit {
        let mut two_level_ok = true;
        let mut ehrhart_ok = true;
        let mut failures = Vec::new();
        for part in ChainOrderPartition::all(mp) {
            let h = build_chain_order_hrep(mp, &part)?;
            let crit = chain_order_two_level_criterion(mp, &part)?;
            let direct = is_two_level_direct(&h)?.two_level;
            if crit != direct {
                two_level_ok = false;
                failures.push(format!("C = {:?}: {crit} vs {direct}", part.chain()));
            }
            if ehrhart_by_counting(&h)? != counted {
                ehrhart_ok = false;
                failures.push(format!("C = {:?}: Ehrhart differs", part.chain()));
            }
        }
        let detail = failures.join("; ");
        out.push(SuiteOutcome { suite: "chain-order two-level", passed: two_level_ok, detail: detail.clone() });
        out.push(SuiteOutcome { suite: "ehrhart chain-order", passed: ehrhart_ok, detail });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polytope::{count_lattice_points, enumerate_vertices};

    #[test]
    fn generation_is_deterministic() {
        let p = CorpusParams::default();
        assert_eq!(generate(7, 10, &p).unwrap(), generate(7, 10, &p).unwrap());
        assert_ne!(generate(7, 10, &p).unwrap(), generate(8, 10, &p).unwrap());
    }

    #[test]
    fn generated_posets_respect_bounds() {
        let p = CorpusParams { max_unmarked: 4, ..CorpusParams::default() };
        for mp in generate(3, 40, &p).unwrap() {
            let u = mp.unmarked().len();
            assert!((1..=4).contains(&u));
            assert!(mp.is_strict() && mp.is_regular());
            for v in mp.marking().iter().flatten() {
                assert!(*v >= rat(0) && *v <= rat(4));
            }
        }
    }

    #[test]
    fn labelings_are_natural() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let mp = crate::ehrhart::pm_family(4, 1).unwrap();
        let ext = mp.extension_poset().unwrap();
        for _ in 0..5 {
            let l = random_natural_labeling(&ext, &mut rng);
            assert!(Labeling::new(&ext, (0..ext.len()).map(|i| l.label(i)).collect()).is_ok());
        }
    }

    #[test]
    fn unimodular_maps_preserve_counts() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let h = build_order_hrep(&crate::fixtures::trapezoid()).unwrap();
        for _ in 0..5 {
            let (u, t) = random_unimodular_map(h.dim(), &mut rng);
            let g = pull_back(&h, &u, &t).unwrap();
            assert_eq!(enumerate_vertices(&g).unwrap().len(), enumerate_vertices(&h).unwrap().len());
            assert_eq!(count_lattice_points(&g, 1).unwrap(), count_lattice_points(&h, 1).unwrap());
        }
    }
}
