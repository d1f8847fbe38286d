//! Exact H- and V-representations: vertex enumeration, facet detection,
//! affine dimension and lattice-point counting.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::linalg::{self, EchelonBasis};
use crate::{limits, Rational};

/// `coeffs · x ≤ rhs` (or `= rhs` when used as an equality), stored with
/// integer coefficients of gcd 1.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LinearInequality {
    coeffs: Vec<BigInt>,
    rhs: Rational,
}

impl LinearInequality {
    /// Normalize by a positive factor to coprime integer coefficients.
    pub fn new(coeffs: &[Rational], rhs: Rational) -> Result<Self> {
        if coeffs.iter().all(Zero::is_zero) {
            return Err(Error::TrivialConstraint);
        }
        let lcm = coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = coeffs.iter().map(|c| (c * &lcm).to_integer()).collect();
        let gcd = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        let coeffs: Vec<BigInt> = ints.into_iter().map(|c| c / &gcd).collect();
        let rhs = rhs * Rational::new(lcm, gcd);
        Ok(Self { coeffs, rhs })
    }

    pub fn from_ints(coeffs: &[i64], rhs: i64) -> Result<Self> {
        let c: Vec<Rational> = coeffs.iter().map(|&v| crate::rat(v)).collect();
        Self::new(&c, crate::rat(rhs))
    }

    /// Canonical form for an equality: additionally the first nonzero
    /// coefficient is positive.
    pub fn as_equality(mut self) -> Self {
        if self.coeffs.iter().find(|c| !c.is_zero()).is_some_and(|c| c.is_negative()) {
            for c in &mut self.coeffs {
                *c = -c.clone();
            }
            self.rhs = -self.rhs;
        }
        self
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn rhs(&self) -> &Rational {
        &self.rhs
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    /// `coeffs · x`.
    pub fn eval(&self, x: &[Rational]) -> Rational {
        self.coeffs
            .iter()
            .zip(x)
            .filter(|(c, _)| !c.is_zero())
            .map(|(c, v)| v * c)
            .fold(Rational::zero(), |acc, t| acc + t)
    }

    pub fn satisfied_by(&self, x: &[Rational]) -> bool {
        self.eval(x) <= self.rhs
    }

    pub fn is_tight(&self, x: &[Rational]) -> bool {
        self.eval(x) == self.rhs
    }

    fn row(&self) -> Vec<Rational> {
        let mut r: Vec<Rational> = self.coeffs.iter().map(|c| Rational::from_integer(c.clone())).collect();
        r.push(self.rhs.clone());
        r
    }

    /// Support (indices of nonzero coefficients).
    pub fn support(&self) -> Vec<usize> {
        (0..self.coeffs.len()).filter(|&i| !self.coeffs[i].is_zero()).collect()
    }

    /// The inequality in the coordinates `y` with `x_i = scale_i * y_i`.
    pub fn scaled(&self, scale: &[Rational]) -> Result<Self> {
        let c: Vec<Rational> = self
            .coeffs
            .iter()
            .zip(scale)
            .map(|(c, s)| s * c)
            .collect();
        Self::new(&c, self.rhs.clone())
    }
}

/// A polyhedron `{x : A x ≤ b, E x = e}` over named coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HRepresentation {
    coordinates: Vec<String>,
    inequalities: Vec<LinearInequality>,
    equalities: Vec<LinearInequality>,
}

impl HRepresentation {
    pub fn new(coordinates: Vec<String>) -> Self {
        Self {
            coordinates,
            inequalities: Vec::new(),
            equalities: Vec::new(),
        }
    }

    pub fn coordinates(&self) -> &[String] {
        &self.coordinates
    }

    pub fn dim(&self) -> usize {
        self.coordinates.len()
    }

    pub fn inequalities(&self) -> &[LinearInequality] {
        &self.inequalities
    }

    pub fn equalities(&self) -> &[LinearInequality] {
        &self.equalities
    }

    fn check_dim(&self, c: &LinearInequality) -> Result<()> {
        if c.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: c.dim(),
            });
        }
        Ok(())
    }

    /// Add an inequality; duplicates are dropped.
    pub fn push_inequality(&mut self, c: LinearInequality) -> Result<()> {
        self.check_dim(&c)?;
        if !self.inequalities.contains(&c) {
            self.inequalities.push(c);
        }
        Ok(())
    }

    pub fn push_equality(&mut self, c: LinearInequality) -> Result<()> {
        self.check_dim(&c)?;
        let c = c.as_equality();
        if !self.equalities.contains(&c) {
            self.equalities.push(c);
        }
        Ok(())
    }

    /// Add `Σ coeffs · x ≤ rhs` given as a sparse list of (coordinate index, coefficient).
    pub fn push_sparse(&mut self, terms: &[(usize, Rational)], rhs: Rational) -> Result<()> {
        let mut c = vec![Rational::zero(); self.dim()];
        for (i, v) in terms {
            c[*i] += v;
        }
        self.push_inequality(LinearInequality::new(&c, rhs)?)
    }

    /// Same polyhedron with inequalities and equalities sorted.
    pub fn canonical(&self) -> Self {
        let mut out = self.clone();
        out.inequalities.sort();
        out.equalities.sort();
        out
    }

    pub fn contains(&self, x: &[Rational]) -> bool {
        x.len() == self.dim()
            && self.inequalities.iter().all(|c| c.satisfied_by(x))
            && self.equalities.iter().all(|c| c.is_tight(x))
    }

    /// The polyhedron `{ y : x = scale ⊙ y ∈ self }` for positive scales.
    pub fn scale_coordinates(&self, scale: &[Rational]) -> Result<Self> {
        let mut out = Self::new(self.coordinates.clone());
        for c in &self.inequalities {
            out.push_inequality(c.scaled(scale)?)?;
        }
        for c in &self.equalities {
            out.push_equality(c.scaled(scale)?)?;
        }
        Ok(out)
    }

    /// Format one constraint as `a_1 … a_d <= b`.
    pub fn format_row(c: &LinearInequality, op: &str) -> String {
        let mut s: Vec<String> = c.coeffs.iter().map(|v| v.to_string()).collect();
        s.push(op.to_string());
        s.push(c.rhs.to_string());
        s.join(" ")
    }
}

/// Text form: a `coordinates:` header then one `a_1 … a_d <= b` or
/// `a_1 … a_d = b` row per constraint, inequalities sorted first.
impl fmt::Display for HRepresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let canon = self.canonical();
        write!(f, "coordinates:")?;
        for c in &self.coordinates {
            write!(f, " {c}")?;
        }
        writeln!(f)?;
        for c in &canon.inequalities {
            writeln!(f, "{}", Self::format_row(c, "<="))?;
        }
        for c in &canon.equalities {
            writeln!(f, "{}", Self::format_row(c, "="))?;
        }
        Ok(())
    }
}

impl FromStr for HRepresentation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut lines = s.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'));
        let header = lines.next().ok_or_else(|| Error::Parse("empty input".into()))?;
        let names = header
            .strip_prefix("coordinates:")
            .ok_or_else(|| Error::Parse("missing `coordinates:` header".into()))?;
        let mut h = Self::new(names.split_whitespace().map(String::from).collect());
        for line in lines {
            let toks: Vec<&str> = line.split_whitespace().collect();
            let d = h.dim();
            if toks.len() != d + 2 {
                return Err(Error::Parse(format!("expected {} fields in `{line}`", d + 2)));
            }
            let coeffs = toks[..d].iter().map(|t| parse_rational(t)).collect::<Result<Vec<_>>>()?;
            let rhs = parse_rational(toks[d + 1])?;
            let c = LinearInequality::new(&coeffs, rhs)?;
            match toks[d] {
                "<=" => h.push_inequality(c)?,
                ">=" => {
                    let neg: Vec<Rational> = coeffs.iter().map(|v| -v).collect();
                    h.push_inequality(LinearInequality::new(&neg, -parse_rational(toks[d + 1])?)?)?
                }
                "=" => h.push_equality(c)?,
                op => return Err(Error::Parse(format!("unknown relation `{op}`"))),
            }
        }
        Ok(h)
    }
}

/// Parse `p`, `-p` or `p/q`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || Error::Parse(format!("not a rational number: `{s}`"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.parse().map_err(|_| bad())?;
            let d: BigInt = d.parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(n, d))
        }
        None => Ok(Rational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// A finite set of exact points, sorted lexicographically without
/// duplicates.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VRepresentation {
    vertices: Vec<Vec<Rational>>,
}

impl VRepresentation {
    pub fn new(points: impl IntoIterator<Item = Vec<Rational>>) -> Self {
        let set: BTreeSet<Vec<Rational>> = points.into_iter().collect();
        Self {
            vertices: set.into_iter().collect(),
        }
    }

    pub fn vertices(&self) -> &[Vec<Rational>] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn contains(&self, p: &[Rational]) -> bool {
        self.vertices.binary_search_by(|v| v.as_slice().cmp(p)).is_ok()
    }

    pub fn is_integral(&self) -> bool {
        self.vertices.iter().flatten().all(|v| v.is_integer())
    }

    /// Dimension of the affine hull; −1 for the empty set.
    pub fn affine_dimension(&self) -> i64 {
        let pts: Vec<&[Rational]> = self.vertices.iter().map(|v| v.as_slice()).collect();
        linalg::affine_dimension(&pts)
    }
}

impl fmt::Display for VRepresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for v in &self.vertices {
            let s: Vec<String> = v.iter().map(|x| x.to_string()).collect();
            writeln!(f, "({})", s.join(", "))?;
        }
        Ok(())
    }
}

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.saturating_mul((n - i) as u128) / (i as u128 + 1);
    }
    acc
}

/// Exact vertex set of a bounded polyhedron.
///
/// Every vertex is an endpoint of the feasible segment on some line cut out
/// by the equalities and `d − 1 − rank(E)` independent inequalities, so all
/// such lines are enumerated; a line whose feasible part is a nonempty ray
/// proves unboundedness.
pub fn enumerate_vertices(h: &HRepresentation) -> Result<VRepresentation> {
    let d = h.dim();
    let eq_rows: Vec<Vec<Rational>> = h.equalities.iter().map(LinearInequality::row).collect();
    let ineq_rows: Vec<Vec<Rational>> = h.inequalities.iter().map(LinearInequality::row).collect();

    // equalities: consistency and an independent basis
    let mut eq_basis = EchelonBasis::default();
    let mut eq_indep = Vec::new();
    for row in &eq_rows {
        if eq_basis.push(&row[..d]) {
            eq_indep.push(row.clone());
        }
    }
    {
        let mut m = eq_rows.clone();
        let piv = linalg::rref(&mut m, d);
        if m[piv.len()..].iter().any(|r| !r[d].is_zero()) {
            return Err(Error::EmptyPolytope);
        }
    }
    let r_eq = eq_basis.rank();

    if r_eq == d {
        let x = if d == 0 {
            Vec::new()
        } else {
            linalg::unique_solution(eq_indep.clone(), d).ok_or(Error::EmptyPolytope)?
        };
        return if h.inequalities.iter().all(|c| c.satisfied_by(&x)) {
            Ok(VRepresentation::new([x]))
        } else {
            Err(Error::EmptyPolytope)
        };
    }

    let all_rows: Vec<Vec<Rational>> = eq_rows.iter().chain(&ineq_rows).map(|r| r[..d].to_vec()).collect();
    if linalg::rank(&all_rows, d) < d {
        return Err(lineality_verdict(h));
    }

    let k = d - 1 - r_eq;
    let m = ineq_rows.len();
    let needed = binomial(m, k);
    let cap = limits::vertex_subset_cap();
    if needed > u128::from(cap) {
        return Err(Error::WorkCapExceeded {
            what: "vertex enumeration",
            needed,
            cap,
        });
    }

    let mut found = BTreeSet::new();
    let mut chosen = Vec::with_capacity(k);
    let mut basis = eq_basis;
    let mut ctx = LineSearch {
        h,
        d,
        eq_indep: &eq_indep,
        ineq_rows: &ineq_rows,
        found: &mut found,
    };
    ctx.search(0, k, &mut chosen, &mut basis)?;
    if found.is_empty() {
        return Err(Error::EmptyPolytope);
    }
    Ok(VRepresentation {
        vertices: found.into_iter().collect(),
    })
}

struct LineSearch<'a> {
    h: &'a HRepresentation,
    d: usize,
    eq_indep: &'a [Vec<Rational>],
    ineq_rows: &'a [Vec<Rational>],
    found: &'a mut BTreeSet<Vec<Rational>>,
}

impl LineSearch<'_> {
    fn search(&mut self, start: usize, left: usize, chosen: &mut Vec<usize>, basis: &mut EchelonBasis) -> Result<()> {
        if left == 0 {
            return self.visit_line(chosen);
        }
        for i in start..=self.ineq_rows.len().saturating_sub(left) {
            if basis.push(&self.ineq_rows[i][..self.d]) {
                chosen.push(i);
                self.search(i + 1, left - 1, chosen, basis)?;
                chosen.pop();
                basis.pop();
            }
        }
        Ok(())
    }

    fn visit_line(&mut self, chosen: &[usize]) -> Result<()> {
        let d = self.d;
        let aug: Vec<Vec<Rational>> = self
            .eq_indep
            .iter()
            .cloned()
            .chain(chosen.iter().map(|&i| self.ineq_rows[i].clone()))
            .collect();
        let (x0, dir) = if aug.is_empty() {
            // d == 1 without equalities: the whole line
            (vec![Rational::zero()], vec![Rational::one()])
        } else {
            match linalg::solution_line(aug, d) {
                Some(line) => line,
                None => return Ok(()),
            }
        };
        let mut lo: Option<Rational> = None;
        let mut hi: Option<Rational> = None;
        for c in &self.h.inequalities {
            let slope = c.eval(&dir);
            let slack = &c.rhs - c.eval(&x0);
            if slope.is_zero() {
                if slack.is_negative() {
                    return Ok(());
                }
            } else {
                let t = slack / &slope;
                if slope.is_positive() {
                    if hi.as_ref().is_none_or(|h| &t < h) {
                        hi = Some(t);
                    }
                } else if lo.as_ref().is_none_or(|l| &t > l) {
                    lo = Some(t);
                }
            }
        }
        match (lo, hi) {
            (Some(lo), Some(hi)) => {
                if lo <= hi {
                    for t in [lo, hi] {
                        let p: Vec<Rational> = x0.iter().zip(&dir).map(|(a, b)| a + b * &t).collect();
                        self.found.insert(p);
                    }
                }
                Ok(())
            }
            // a feasible ray or the whole line
            _ => Err(Error::UnboundedPolytope),
        }
    }
}

/// For a system with nontrivial lineality space, decide between empty and
/// unbounded by pinning coordinates until the system has full rank.
fn lineality_verdict(h: &HRepresentation) -> Error {
    let d = h.dim();
    let mut basis = EchelonBasis::default();
    for c in h.equalities.iter().chain(&h.inequalities) {
        let r = c.row();
        basis.push(&r[..d]);
    }
    let mut pinned = h.clone();
    for i in 0..d {
        let mut e = vec![Rational::zero(); d];
        e[i] = Rational::one();
        if basis.push(&e) {
            pinned
                .push_equality(LinearInequality::new(&e, Rational::zero()).expect("unit vector"))
                .expect("matching dimension");
        }
    }
    match enumerate_vertices(&pinned) {
        Ok(_) | Err(Error::UnboundedPolytope) => Error::UnboundedPolytope,
        Err(e) => e,
    }
}

/// Drop every inequality that is not facet-defining. Inequalities tight on
/// the whole polytope become equalities when they cut down the affine hull.
pub fn irredundant(h: &HRepresentation) -> Result<HRepresentation> {
    let v = enumerate_vertices(h)?;
    let dim = v.affine_dimension();
    let mut out = HRepresentation::new(h.coordinates.clone());
    let mut eq_basis = EchelonBasis::default();
    for c in &h.equalities {
        eq_basis.push(&c.row()[..h.dim()]);
        out.push_equality(c.clone())?;
    }
    let mut seen_faces = BTreeSet::new();
    for c in &h.inequalities {
        let tight: Vec<usize> = (0..v.len()).filter(|&i| c.is_tight(&v.vertices[i])).collect();
        if tight.len() == v.len() {
            if eq_basis.push(&c.row()[..h.dim()]) {
                out.push_equality(c.clone())?;
            }
            continue;
        }
        if tight.is_empty() {
            continue;
        }
        let pts: Vec<&[Rational]> = tight.iter().map(|&i| v.vertices[i].as_slice()).collect();
        if linalg::affine_dimension(&pts) == dim - 1 && seen_faces.insert(tight) {
            out.push_inequality(c.clone())?;
        }
    }
    Ok(out)
}

/// Dimension of the affine hull of a point set.
pub fn affine_dimension(v: &VRepresentation) -> i64 {
    v.affine_dimension()
}

/// The values `coeffs · v` over all vertices, sorted (a multiset).
pub fn evaluate_affine_values(v: &VRepresentation, c: &LinearInequality) -> Vec<Rational> {
    let mut vals: Vec<Rational> = v.vertices.iter().map(|p| c.eval(p)).collect();
    vals.sort();
    vals
}

/// Number of integer points in the dilate `n · P`.
///
/// Coordinates are fixed one at a time in declared order. Each coordinate's
/// range is the vertex bounding box intersected with what every constraint
/// still allows given the fixed prefix and the box of the remaining
/// coordinates; a constraint is enforced exactly at its last coordinate.
/// Subproblems are memoized on the residual right-hand sides of the
/// constraints that straddle the current coordinate.
pub fn count_lattice_points(h: &HRepresentation, dilation: u64) -> Result<u128> {
    let v = match enumerate_vertices(h) {
        Ok(v) => v,
        Err(Error::EmptyPolytope) => return Ok(0),
        Err(e) => return Err(e),
    };
    if dilation == 0 {
        return Ok(1);
    }
    let d = h.dim();
    if d == 0 {
        return Ok(1);
    }
    let n = Rational::from_integer(dilation.into());
    let to_i64 = |x: BigInt| x.to_i64().ok_or(Error::Overflow);

    let mut lo = Vec::with_capacity(d);
    let mut hi = Vec::with_capacity(d);
    for i in 0..d {
        let min = v.vertices.iter().map(|p| &p[i]).min().expect("nonempty");
        let max = v.vertices.iter().map(|p| &p[i]).max().expect("nonempty");
        lo.push(to_i64((min * &n).ceil().to_integer())?);
        hi.push(to_i64((max * &n).floor().to_integer())?);
        if lo[i] > hi[i] {
            return Ok(0);
        }
    }

    let mut rows: Vec<(Vec<i64>, i64)> = Vec::new();
    for c in &h.inequalities {
        let a = c.coeffs.iter().cloned().map(to_i64).collect::<Result<Vec<_>>>()?;
        rows.push((a, to_i64((&c.rhs * &n).floor().to_integer())?));
    }
    for c in &h.equalities {
        let r = &c.rhs * &n;
        if !r.is_integer() {
            return Ok(0);
        }
        let a = c.coeffs.iter().cloned().map(to_i64).collect::<Result<Vec<_>>>()?;
        let r = to_i64(r.to_integer())?;
        rows.push((a.iter().map(|x| -x).collect(), -r));
        rows.push((a, r));
    }
    let mut counter = LatticeCounter::new(rows, lo, hi)?;
    counter.count(0)
}

struct LatticeCounter {
    d: usize,
    rows: Vec<(Vec<i64>, i64)>,
    residual: Vec<i64>,
    lo: Vec<i64>,
    hi: Vec<i64>,
    /// `rest_min[j][i] = Σ_{k > i} min(a_jk lo_k, a_jk hi_k)`
    rest_min: Vec<Vec<i64>>,
    /// constraints involving coordinate `i`
    touching: Vec<Vec<usize>>,
    /// constraints with support on both sides of the cut before coordinate `i`
    straddling: Vec<Vec<usize>>,
    memo: HashMap<(usize, Vec<i64>), u128>,
}

impl LatticeCounter {
    fn new(rows: Vec<(Vec<i64>, i64)>, lo: Vec<i64>, hi: Vec<i64>) -> Result<Self> {
        let d = lo.len();
        let mut rest_min = Vec::with_capacity(rows.len());
        for (a, _) in &rows {
            let mut acc = vec![0i64; d];
            let mut s: i64 = 0;
            for i in (0..d).rev() {
                acc[i] = s;
                let t = a[i]
                    .checked_mul(lo[i])
                    .zip(a[i].checked_mul(hi[i]))
                    .map(|(x, y)| x.min(y))
                    .ok_or(Error::Overflow)?;
                s = s.checked_add(t).ok_or(Error::Overflow)?;
            }
            rest_min.push(acc);
        }
        let touching = (0..d)
            .map(|i| (0..rows.len()).filter(|&j| rows[j].0[i] != 0).collect())
            .collect();
        let straddling = (0..=d)
            .map(|i| {
                (0..rows.len())
                    .filter(|&j| {
                        let a = &rows[j].0;
                        a[..i].iter().any(|&x| x != 0) && a[i..].iter().any(|&x| x != 0)
                    })
                    .collect()
            })
            .collect();
        let residual = rows.iter().map(|r| r.1).collect();
        Ok(Self {
            d,
            rows,
            residual,
            lo,
            hi,
            rest_min,
            touching,
            straddling,
            memo: HashMap::new(),
        })
    }

    fn range(&self, i: usize) -> Result<(i64, i64)> {
        let (mut l, mut u) = (self.lo[i], self.hi[i]);
        for &j in &self.touching[i] {
            let a = self.rows[j].0[i];
            let room = self.residual[j]
                .checked_sub(self.rest_min[j][i])
                .ok_or(Error::Overflow)?;
            if a > 0 {
                u = u.min(room.div_euclid(a));
            } else {
                // a x ≤ room with a < 0  ⇔  x ≥ ceil(room / a)
                l = l.max(-(room.div_euclid(-a)));
            }
        }
        Ok((l, u))
    }

    fn count(&mut self, i: usize) -> Result<u128> {
        let key = (i, self.straddling[i].iter().map(|&j| self.residual[j]).collect::<Vec<_>>());
        if let Some(&c) = self.memo.get(&key) {
            return Ok(c);
        }
        let (l, u) = self.range(i)?;
        let total = if l > u {
            0
        } else if i + 1 == self.d {
            (u - l + 1) as u128
        } else {
            let mut total: u128 = 0;
            for t in l..=u {
                for &j in &self.touching[i] {
                    self.residual[j] -= self.rows[j].0[i] * t;
                }
                let sub = self.count(i + 1);
                for &j in &self.touching[i] {
                    self.residual[j] += self.rows[j].0[i] * t;
                }
                total = total.checked_add(sub?).ok_or(Error::Overflow)?;
            }
            total
        };
        self.memo.insert(key, total);
        Ok(total)
    }
}
