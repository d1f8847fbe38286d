//! 2-levelness: the geometric test on facets and vertices, and the
//! combinatorial criteria for the three marked polytope families.

use std::collections::BTreeSet;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::marked::{build_chain_hrep, build_chain_order_hrep, build_order_hrep};
use crate::polytope::{enumerate_vertices, evaluate_affine_values, irredundant, HRepresentation, LinearInequality, VRepresentation};
use crate::poset::{ChainOrderPartition, MarkedPoset};
use crate::Rational;

/// A facet functional taking more than two values on the vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub facet: LinearInequality,
    pub values: Vec<Rational>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DirectVerdict {
    pub two_level: bool,
    pub witness: Option<Witness>,
}

fn distinct(values: Vec<Rational>) -> Vec<Rational> {
    values.into_iter().collect::<BTreeSet<_>>().into_iter().collect()
}

/// Every facet functional takes at most two values on the vertex set.
/// Polytopes of dimension at most one are 2-level.
pub fn is_two_level_direct(h: &HRepresentation) -> Result<DirectVerdict> {
    let v = enumerate_vertices(h)?;
    if v.affine_dimension() <= 1 {
        return Ok(DirectVerdict { two_level: true, witness: None });
    }
    let facets = irredundant(h)?.canonical();
    for f in facets.inequalities() {
        let values = distinct(evaluate_affine_values(&v, f));
        if values.len() > 2 {
            return Ok(DirectVerdict {
                two_level: false,
                witness: Some(Witness { facet: f.clone(), values }),
            });
        }
    }
    Ok(DirectVerdict { two_level: true, witness: None })
}

fn require(mp: &MarkedPoset, regular: bool) -> Result<()> {
    let report = mp.validate();
    if !report.strict {
        return Err(Error::PreconditionViolated("the marking is not strict".into()));
    }
    if regular && !report.regular {
        return Err(Error::PreconditionViolated("the marked poset is not regular".into()));
    }
    Ok(())
}

/// Connected components of the Hasse diagram restricted to unmarked
/// elements, each sorted, in order of least element.
pub fn unmarked_components(mp: &MarkedPoset) -> Vec<Vec<usize>> {
    let p = mp.poset();
    let mut comp = vec![usize::MAX; mp.len()];
    let mut out = Vec::new();
    for s in mp.unmarked() {
        if comp[s] != usize::MAX {
            continue;
        }
        comp[s] = out.len();
        let mut members = vec![s];
        let mut stack = vec![s];
        while let Some(u) = stack.pop() {
            for &w in p.upper_covers(u).iter().chain(p.lower_covers(u)) {
                if !mp.is_marked(w) && comp[w] == usize::MAX {
                    comp[w] = out.len();
                    members.push(w);
                    stack.push(w);
                }
            }
        }
        members.sort_unstable();
        out.push(members);
    }
    out
}

/// Marks directly below and directly above a set of unmarked elements.
fn neighbor_marks(mp: &MarkedPoset, members: &[usize]) -> (BTreeSet<Rational>, BTreeSet<Rational>) {
    let p = mp.poset();
    let mut below = BTreeSet::new();
    let mut above = BTreeSet::new();
    for &u in members {
        below.extend(p.lower_covers(u).iter().filter_map(|&a| mp.mark(a).cloned()));
        above.extend(p.upper_covers(u).iter().filter_map(|&b| mp.mark(b).cloned()));
    }
    (below, above)
}

/// Order criterion: every connected component of the unmarked elements is
/// bounded below by a single mark value and above by a single mark value.
/// Then the polytope is a product of rescaled order polytopes.
pub fn order_two_level_criterion(mp: &MarkedPoset) -> Result<bool> {
    require(mp, true)?;
    Ok(unmarked_components(mp).iter().all(|members| {
        let (below, above) = neighbor_marks(mp, members);
        below.len() == 1 && above.len() == 1
    }))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainVerdict {
    pub two_level: bool,
    /// Per-coordinate divisor `c_p` (the nonzero vertex value) on success.
    pub scaling: Option<Vec<Rational>>,
}

/// For each coordinate, the nonzero value if its vertex values are `{0, c}`
/// with `c > 0`.
fn zero_one_scaling(v: &VRepresentation, dim: usize) -> Option<Vec<Rational>> {
    (0..dim)
        .map(|i| {
            let vals: BTreeSet<&Rational> = v.vertices().iter().map(|p| &p[i]).collect();
            let mut it = vals.into_iter();
            match (it.next(), it.next(), it.next()) {
                (Some(z), Some(c), None) if z.is_zero() && c > z => Some(c.clone()),
                _ => None,
            }
        })
        .collect()
}

fn is_chain_shape(f: &LinearInequality) -> bool {
    let nonzero: Vec<_> = f.coeffs().iter().filter(|c| !c.is_zero()).collect();
    let nonnegativity = nonzero.len() == 1 && (-nonzero[0].clone()).is_one() && f.rhs().is_zero();
    let sum_bound = nonzero.iter().all(|c| c.is_one()) && f.rhs().is_one();
    nonnegativity || sum_bound
}

/// Chain criterion: rescale each coordinate by its nonzero vertex value;
/// the polytope is 2-level iff every facet then reads `x_i ≥ 0` or
/// `Σ_{i∈I} x_i ≤ 1`.
pub fn chain_two_level_criterion(mp: &MarkedPoset) -> Result<ChainVerdict> {
    require(mp, false)?;
    let h = build_chain_hrep(mp)?;
    if h.dim() == 0 {
        return Ok(ChainVerdict { two_level: true, scaling: Some(Vec::new()) });
    }
    let v = enumerate_vertices(&h)?;
    let Some(scale) = zero_one_scaling(&v, h.dim()) else {
        return Ok(ChainVerdict { two_level: false, scaling: None });
    };
    let scaled = irredundant(&h.scale_coordinates(&scale)?)?;
    if scaled.inequalities().iter().all(is_chain_shape) {
        Ok(ChainVerdict { two_level: true, scaling: Some(scale) })
    } else {
        Ok(ChainVerdict { two_level: false, scaling: None })
    }
}

/// Chain-order criterion: (a) the marked order polytope of `P ∖ C` is
/// 2-level, and (b) after rescaling chain coordinates to `{0, 1}` and order
/// coordinates affinely to `[0, 1]`, every facet involving a chain
/// coordinate takes exactly the values `r − 1` and `r` on the vertices.
pub fn chain_order_two_level_criterion(mp: &MarkedPoset, part: &ChainOrderPartition) -> Result<bool> {
    require(mp, false)?;
    let chain = part.chain();
    if chain.is_empty() {
        return order_two_level_criterion(mp);
    }
    if part.order(mp).is_empty() {
        return Ok(chain_two_level_criterion(mp)?.two_level);
    }

    let restricted = mp.restrict(|i| !part.is_chain(i));
    let order_ok = if restricted.is_regular() {
        order_two_level_criterion(&restricted)?
    } else {
        is_two_level_direct(&build_order_hrep(&restricted)?)?.two_level
    };
    if !order_ok {
        return Ok(false);
    }

    let h = build_chain_order_hrep(mp, part)?;
    let v = enumerate_vertices(&h)?;
    let unmarked = mp.unmarked();
    let order_vertices = enumerate_vertices(&build_order_hrep(&restricted)?)?;
    let restricted_unmarked = restricted.unmarked();

    // x = shift + scale ⊙ y
    let mut shift = vec![Rational::zero(); h.dim()];
    let mut scale = vec![Rational::one(); h.dim()];
    for (k, &e) in unmarked.iter().enumerate() {
        let values: BTreeSet<Rational> = if part.is_chain(e) {
            v.vertices().iter().map(|p| p[k].clone()).collect()
        } else {
            let id = mp.poset().id(e);
            let j = restricted_unmarked
                .iter()
                .position(|&r| restricted.poset().id(r) == id)
                .expect("order element survives restriction");
            order_vertices.vertices().iter().map(|p| p[j].clone()).collect()
        };
        let vals: Vec<Rational> = values.into_iter().collect();
        match vals.as_slice() {
            [lo, hi] if !part.is_chain(e) || lo.is_zero() => {
                shift[k] = lo.clone();
                scale[k] = hi - lo;
            }
            [only] if !part.is_chain(e) => shift[k] = only.clone(),
            _ => return Ok(false),
        }
    }

    let to_normalized = |p: &[Rational]| -> Vec<Rational> {
        p.iter()
            .zip(shift.iter().zip(&scale))
            .map(|(x, (s, c))| (x - s) / c)
            .collect()
    };
    let nv = VRepresentation::new(v.vertices().iter().map(|p| to_normalized(p)));
    let chain_pos: Vec<usize> = (0..unmarked.len()).filter(|&k| part.is_chain(unmarked[k])).collect();
    for f in irredundant(&h)?.inequalities() {
        if !chain_pos.iter().any(|&k| !f.coeffs()[k].is_zero()) {
            continue;
        }
        let coeffs: Vec<Rational> = f
            .coeffs()
            .iter()
            .zip(&scale)
            .map(|(a, c)| Rational::from_integer(a.clone()) * c)
            .collect();
        let offset: Rational = f
            .coeffs()
            .iter()
            .zip(&shift)
            .map(|(a, s)| Rational::from_integer(a.clone()) * s)
            .sum();
        let g = LinearInequality::new(&coeffs, f.rhs() - offset)?;
        let values = distinct(evaluate_affine_values(&nv, &g));
        let top = g.rhs().clone();
        let bottom = &top - Rational::one();
        if values != [bottom, top] {
            return Ok(false);
        }
    }
    Ok(true)
}
