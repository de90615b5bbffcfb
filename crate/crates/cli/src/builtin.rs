//! Named complexes available through `--builtin`.

use abtv::{
    build_lens, build_point, build_sphere3_figure, build_sphere_minimal, tensor_product,
    ChainComplex, Error,
};

pub const BUILTINS: &[(&str, &str)] = &[
    ("point", "a single 0-cell"),
    ("sphere-min:N", "S^N with two cells in every degree"),
    (
        "sphere3-fig",
        "S^3 with 4 vertices, 5 edges, 3 faces and 2 3-cells",
    ),
    ("lens:R:S", "lens space L(R,S), one cell per degree"),
    (
        "A x B",
        "tensor product of builtins joined by `x`, e.g. lens:3:1xsphere-min:1",
    ),
];

fn factor(spec: &str) -> Result<ChainComplex, Error> {
    let bad = || Error::InvalidParameters(format!("unknown builtin `{spec}`"));
    let parts: Vec<&str> = spec.split(':').collect();
    match parts.as_slice() {
        ["point"] => Ok(build_point()),
        ["sphere3-fig"] => Ok(build_sphere3_figure()),
        ["sphere-min", n] => build_sphere_minimal(n.parse().map_err(|_| bad())?),
        ["lens", r, s] => build_lens(r.parse().map_err(|_| bad())?, s.parse().map_err(|_| bad())?),
        _ => Err(bad()),
    }
}

/// Resolves a builtin name; products associate to the left.
pub fn resolve(spec: &str) -> Result<ChainComplex, Error> {
    let mut factors = spec.split('x').map(str::trim);
    let first = factors
        .next()
        .filter(|s| !s.is_empty())
        .ok_or_else(|| Error::InvalidParameters("empty builtin name".into()))?;
    factors.try_fold(factor(first)?, |acc, f| {
        Ok(tensor_product(&acc, &factor(f)?))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names() {
        assert_eq!(resolve("sphere3-fig").unwrap(), build_sphere3_figure());
        assert_eq!(resolve("lens:5:2").unwrap(), build_lens(5, 2).unwrap());
        assert_eq!(resolve("sphere-min:4").unwrap().dim(), 4);
        let torus = resolve("sphere-min:1xsphere-min:1").unwrap();
        assert_eq!(torus.ranks(), &[4, 8, 4]);
        let t3 = resolve("sphere-min:1xsphere-min:1xsphere-min:1").unwrap();
        assert_eq!(t3.ranks(), &[8, 24, 24, 8]);
        assert_eq!(resolve("lens:3:1xsphere-min:1").unwrap().dim(), 4);
    }

    #[test]
    fn bad_names() {
        for s in [
            "",
            "torus",
            "lens:4:2",
            "lens:4",
            "sphere-min:0",
            "sphere-min:a",
            "pointx",
        ] {
            assert!(resolve(s).is_err(), "{s}");
        }
    }
}
