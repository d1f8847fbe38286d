//! Small named marked posets used in tests, examples and the CLI's
//! `--builtin` generators.

use crate::error::{Error, Result};
use crate::poset::MarkedPoset;

/// Two chains through `x1`: marks 1, 2, 2, 3 and unmarked `x1`, `x2`.
/// Its marked chain polytope is the unit square.
pub fn figure1() -> MarkedPoset {
    MarkedPoset::from_parts(
        &["m1", "x1", "x2", "m2l", "m2r", "m3"],
        &[("m1", "x1"), ("x1", "m2r"), ("x1", "x2"), ("m2l", "x2"), ("x2", "m3")],
        &[("m1", 1), ("m2l", 2), ("m2r", 2), ("m3", 3)],
    )
    .expect("fixture is valid")
}

/// `a(lo) ≺ {x, y} ≺ b(hi)`.
pub fn diamond(lo: i64, hi: i64) -> MarkedPoset {
    MarkedPoset::from_parts(
        &["a", "x", "y", "b"],
        &[("a", "x"), ("a", "y"), ("x", "b"), ("y", "b")],
        &[("a", lo), ("b", hi)],
    )
    .expect("fixture is valid")
}

/// `a(lo) ≺ x ≺ b(hi)`.
pub fn segment(lo: i64, hi: i64) -> MarkedPoset {
    MarkedPoset::from_parts(&["a", "x", "b"], &[("a", "x"), ("x", "b")], &[("a", lo), ("b", hi)])
        .expect("fixture is valid")
}

/// `a(0) ≺ x ≺ y ≺ b(2)` with `m(1) ≺ y`.
pub fn trapezoid() -> MarkedPoset {
    MarkedPoset::from_parts(
        &["a", "x", "y", "b", "m"],
        &[("a", "x"), ("x", "y"), ("y", "b"), ("m", "y")],
        &[("a", 0), ("b", 2), ("m", 1)],
    )
    .expect("fixture is valid")
}

/// `a(0) ≺ x ≺ m(2)` and `x ≺ y ≺ b(3)`.
pub fn two_chains() -> MarkedPoset {
    MarkedPoset::from_parts(
        &["a", "x", "m", "y", "b"],
        &[("a", "x"), ("x", "m"), ("x", "y"), ("y", "b")],
        &[("a", 0), ("m", 2), ("b", 3)],
    )
    .expect("fixture is valid")
}

/// `a(0) ≺ x ≺ y ≺ b(hi)`.
pub fn chain2(hi: i64) -> MarkedPoset {
    MarkedPoset::from_parts(&["a", "x", "y", "b"], &[("a", "x"), ("x", "y"), ("y", "b")], &[("a", 0), ("b", hi)])
        .expect("fixture is valid")
}

fn int_args(spec: &str, want: usize) -> Result<Vec<i64>> {
    let vals = spec
        .split(',')
        .map(|s| s.trim().parse::<i64>().map_err(|_| Error::Parse(format!("bad integer `{s}`"))))
        .collect::<Result<Vec<_>>>()?;
    if vals.len() != want {
        return Err(Error::Parse(format!("expected {want} arguments, got `{spec}`")));
    }
    Ok(vals)
}

/// Resolve a generator name: `figure1`, `diamond:lo,hi`, `segment:lo,hi`,
/// `trapezoid`, `pm:m,c`.
pub fn builtin(name: &str) -> Result<MarkedPoset> {
    let (head, args) = name.split_once(':').unwrap_or((name, ""));
    match head {
        "figure1" => Ok(figure1()),
        "trapezoid" => Ok(trapezoid()),
        "diamond" | "segment" => {
            let v = int_args(args, 2)?;
            if v[0] > v[1] {
                return Err(Error::OutOfRange(format!("{head} marks must satisfy lo <= hi")));
            }
            Ok(if head == "diamond" { diamond(v[0], v[1]) } else { segment(v[0], v[1]) })
        }
        "pm" => {
            let v = int_args(args, 2)?;
            crate::ehrhart::pm_family(v[0], v[1])
        }
        _ => Err(Error::Parse(format!("unknown builtin `{name}`"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtins_resolve() {
        assert_eq!(builtin("figure1").unwrap(), figure1());
        assert_eq!(builtin("diamond:0,2").unwrap(), diamond(0, 2));
        assert_eq!(builtin("pm:3,1").unwrap().len(), 6);
        assert!(matches!(builtin("pm:2,1"), Err(Error::OutOfRange(_))));
        assert!(matches!(builtin("diamond:1"), Err(Error::Parse(_))));
        assert!(matches!(builtin("cube"), Err(Error::Parse(_))));
    }

    #[test]
    fn fixtures_are_strict() {
        for mp in [figure1(), diamond(0, 2), segment(0, 1), trapezoid(), two_chains(), chain2(3)] {
            assert!(mp.is_strict());
        }
        assert!(!figure1().is_regular());
        assert!(trapezoid().is_regular());
    }
}
