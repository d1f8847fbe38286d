//! Ehrhart polynomials: lattice-point counting with interpolation, and the
//! sum over linear extensions for marked order polytopes.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::polynomial::{interpolate_polynomial, UnivariatePolynomial};
use crate::polytope::{count_lattice_points, enumerate_vertices, HRepresentation};
use crate::poset::{greedy_linear_extension, linear_extensions, ExtensionWord, Labeling, MarkedPoset, Poset};
use crate::{limits, rat, Rational};

/// Ehrhart polynomial from lattice-point counts at `n = 0..=dim`, checked at
/// `n = dim + 1`.
pub fn ehrhart_by_counting(h: &HRepresentation) -> Result<UnivariatePolynomial> {
    let v = enumerate_vertices(h)?;
    if !v.is_integral() {
        return Err(Error::NonIntegralVertices);
    }
    let dim = v.affine_dimension().max(0) as u64;
    let count = |n: u64| -> Result<Rational> {
        let c = count_lattice_points(h, n)?;
        Ok(Rational::from_integer(c.into()))
    };
    let points = (0..=dim)
        .map(|n| Ok((n as i64, count(n)?)))
        .collect::<Result<Vec<_>>>()?;
    let poly = interpolate_polynomial(&points)?;
    let check = dim + 1;
    let counted = count(check)?;
    let predicted = poly.eval_int(check as i64);
    if predicted != counted {
        return Err(Error::VerificationFailed {
            n: check,
            predicted: predicted.to_string(),
            counted: counted.to_string(),
        });
    }
    Ok(poly)
}

fn check_formula_preconditions(mp: &MarkedPoset) -> Result<()> {
    let report = mp.validate();
    if !report.strict || !report.regular {
        return Err(Error::PreconditionViolated(format!(
            "the extension formula needs a strict and regular marking (strict: {}, regular: {})",
            report.strict, report.regular
        )));
    }
    if !mp.is_integral() {
        return Err(Error::NonIntegralMarking);
    }
    Ok(())
}

/// The poset whose linear extensions are summed: `P` with all marked
/// elements totally ordered by mark (equal marks by id), and its canonical
/// natural labeling (the greedy smallest-id linear extension).
pub fn canonical_labeling(mp: &MarkedPoset) -> Result<(Poset, Labeling)> {
    let ext = mp.extension_poset()?;
    let word = greedy_linear_extension(&ext);
    let labeling = Labeling::from_word(&ext, &word)?;
    Ok((ext, labeling))
}

/// Number of linear extensions of `P` that list the marked elements in
/// increasing order of marks.
pub fn restricted_extensions(mp: &MarkedPoset) -> Result<u64> {
    let ext = mp.extension_poset()?;
    let cap = limits::extension_cap();
    let mut count = 0u64;
    for _ in linear_extensions(&ext, None)? {
        count += 1;
        if count > cap {
            return Err(Error::WorkCapExceeded {
                what: "linear extensions",
                needed: u128::from(count),
                cap,
            });
        }
    }
    Ok(count)
}

/// Product over the unmarked segments of one extension.
fn extension_term(mp: &MarkedPoset, w: &ExtensionWord) -> UnivariatePolynomial {
    let mut term = UnivariatePolynomial::constant(Rational::one());
    let mut last: Option<usize> = None;
    for (pos, &x) in w.word.iter().enumerate() {
        let Some(lb) = mp.mark(x) else { continue };
        if let Some(prev) = last {
            let la = mp.mark(w.word[prev]).expect("marked");
            let k = pos - prev - 1;
            let d = w.descent_prefix[pos] - w.descent_prefix[prev];
            let factor = UnivariatePolynomial::binomial(&(lb - la), &rat(k as i64 - d as i64), k);
            term = &term * &factor;
        }
        last = Some(pos);
    }
    term
}

/// Ehrhart polynomial of the marked order polytope as a sum over linear
/// extensions, using the canonical labeling.
pub fn ehrhart_formula_marked_order(mp: &MarkedPoset) -> Result<UnivariatePolynomial> {
    check_formula_preconditions(mp)?;
    let (_, labeling) = canonical_labeling(mp)?;
    ehrhart_formula_with_labeling(mp, &labeling)
}

/// As [`ehrhart_formula_marked_order`] with descents taken against the given
/// natural labeling of the extension poset.
pub fn ehrhart_formula_with_labeling(mp: &MarkedPoset, labeling: &Labeling) -> Result<UnivariatePolynomial> {
    check_formula_preconditions(mp)?;
    let ext = mp.extension_poset()?;
    let cap = limits::extension_cap();
    let mut total = UnivariatePolynomial::zero();
    let mut count = 0u64;
    for w in linear_extensions(&ext, Some(labeling))? {
        count += 1;
        if count > cap {
            return Err(Error::WorkCapExceeded {
                what: "linear extensions",
                needed: u128::from(count),
                cap,
            });
        }
        total = &total + &extension_term(mp, &w);
    }
    Ok(total)
}

fn check_pm(m: i64, c: i64) -> Result<()> {
    if m < 3 || c < 1 {
        return Err(Error::OutOfRange(format!("P_m needs m >= 3 and c >= 1, got m = {m}, c = {c}")));
    }
    if m > 64 {
        return Err(Error::OutOfRange(format!("m = {m} is too large")));
    }
    Ok(())
}

/// The marked poset `P_m`: `a_1 ≺ x_1 ≺ a_2`, `a_i ≺ x_{i+1} ≺ a_{i+1}` for
/// `2 ≤ i ≤ m−1`, `x_1 ≺ x_2 ≺ x_m`, marks `λ(a_i) = (i−1)·c`.
pub fn pm_family(m: i64, c: i64) -> Result<MarkedPoset> {
    check_pm(m, c)?;
    let a = |i: i64| format!("a{i}");
    let x = |i: i64| format!("x{i}");
    let mut elements = Vec::new();
    for i in 1..=m {
        elements.push(a(i));
        elements.push(x(i));
    }
    let mut covers = vec![(a(1), x(1)), (x(1), a(2)), (x(1), x(2)), (x(2), x(m))];
    for i in 2..m {
        covers.push((a(i), x(i + 1)));
        covers.push((x(i + 1), a(i + 1)));
    }
    let poset = Poset::new(&elements, &covers)?;
    let marks: Vec<(String, Rational)> = (1..=m).map(|i| (a(i), rat((i - 1) * c))).collect();
    MarkedPoset::new(poset, &marks)
}

/// `(m−2)·nc·(nc+1)^{m−1} + (nc+1)^{m−1}`.
pub fn pm_closed_form(m: i64, c: i64) -> Result<UnivariatePolynomial> {
    check_pm(m, c)?;
    let base = UnivariatePolynomial::linear(rat(c), Rational::one()).pow((m - 1) as u32);
    let lead = UnivariatePolynomial::linear(rat((m - 2) * c), Rational::zero());
    Ok(&(&lead * &base) + &base)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::marked::build_order_hrep;

    fn poly(c: &[i64]) -> UnivariatePolynomial {
        UnivariatePolynomial::from_ints(c)
    }

    fn box_hrep(hi: i64) -> HRepresentation {
        "coordinates: x y\n-1 0 <= 0\n1 0 <= 2\n0 -1 <= 0\n0 1 <= 2".replace('2', &hi.to_string()).parse().unwrap()
    }

    #[test]
    fn counting_examples() {
        let seg: HRepresentation = "coordinates: x\n-1 <= 0\n1 <= 1".parse().unwrap();
        assert_eq!(ehrhart_by_counting(&seg).unwrap(), poly(&[1, 1]));
        assert_eq!(ehrhart_by_counting(&box_hrep(2)).unwrap(), poly(&[1, 4, 4]));
        let half: HRepresentation = "coordinates: x\n-2 <= 0\n2 <= 1".parse().unwrap();
        assert_eq!(ehrhart_by_counting(&half), Err(Error::NonIntegralVertices));
    }

    #[test]
    fn formula_examples() {
        assert_eq!(ehrhart_formula_marked_order(&fixtures::segment(0, 1)).unwrap(), poly(&[1, 1]));
        assert_eq!(ehrhart_formula_marked_order(&fixtures::diamond(0, 2)).unwrap(), poly(&[1, 4, 4]));
        assert_eq!(ehrhart_formula_marked_order(&pm_family(3, 1).unwrap()).unwrap(), poly(&[1, 3, 3, 1]));
        assert!(matches!(
            ehrhart_formula_marked_order(&fixtures::figure1()),
            Err(Error::PreconditionViolated(_))
        ));
    }

    #[test]
    fn formula_matches_counting_on_fixtures() {
        for mp in [fixtures::trapezoid(), fixtures::two_chains(), fixtures::chain2(3), fixtures::diamond(1, 4)] {
            if !mp.is_regular() {
                continue;
            }
            let counted = ehrhart_by_counting(&build_order_hrep(&mp).unwrap()).unwrap();
            assert_eq!(ehrhart_formula_marked_order(&mp).unwrap(), counted);
        }
    }

    #[test]
    fn pm_shapes() {
        let p3 = pm_family(3, 1).unwrap();
        assert_eq!(p3.len(), 6);
        assert_eq!(p3.poset().covers().len(), 6);
        assert!(p3.poset().relates("x1", "x3").unwrap());
        let p6 = pm_family(6, 1).unwrap();
        assert_eq!(p6.poset().covers().len(), 12);
        assert!(p6.is_strict() && p6.is_regular());
        let p32 = pm_family(3, 2).unwrap();
        let marks: Vec<String> = p32.marked().iter().map(|&i| p32.mark(i).unwrap().to_string()).collect();
        assert_eq!(marks, ["0", "2", "4"]);
        assert!(matches!(pm_family(2, 1), Err(Error::OutOfRange(_))));
        assert!(matches!(pm_family(3, 0), Err(Error::OutOfRange(_))));
    }

    #[test]
    fn closed_forms() {
        assert_eq!(pm_closed_form(3, 1).unwrap(), poly(&[1, 3, 3, 1]));
        // 2n(n+1)^3 + (n+1)^3 = 2n^4 + 7n^3 + 9n^2 + 5n + 1
        assert_eq!(pm_closed_form(4, 1).unwrap(), poly(&[1, 5, 9, 7, 2]));
        assert_eq!(pm_closed_form(3, 2).unwrap(), poly(&[1, 6, 12, 8]));
    }

    #[test]
    fn census() {
        for m in 3..=6 {
            assert_eq!(restricted_extensions(&pm_family(m, 1).unwrap()).unwrap(), (2 * m - 4) as u64);
        }
    }
}
