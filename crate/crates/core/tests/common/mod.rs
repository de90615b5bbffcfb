#![allow(dead_code)]

use abtv::{build_lens, build_sphere3_figure, build_sphere_minimal, tensor_product, ChainComplex};

pub struct Named {
    pub name: String,
    pub cc: ChainComplex,
}

fn named(name: impl Into<String>, cc: ChainComplex) -> Named {
    Named {
        name: name.into(),
        cc,
    }
}

pub fn torus(n: usize) -> ChainComplex {
    let s1 = build_sphere_minimal(1).unwrap();
    (1..n).fold(s1.clone(), |acc, _| tensor_product(&acc, &s1))
}

pub fn lens_pairs(max_r: i64) -> Vec<(i64, i64)> {
    let mut out = Vec::new();
    for r in 2..=max_r {
        for s in 1..r {
            if num_integer::gcd(r, s) == 1 {
                out.push((r, s));
            }
        }
    }
    out
}

/// Every builder family the suites sweep over.
pub fn builders() -> Vec<Named> {
    let mut v = Vec::new();
    for n in 1..=5 {
        v.push(named(
            format!("S^{n} minimal"),
            build_sphere_minimal(n).unwrap(),
        ));
    }
    v.push(named("S^3 figure", build_sphere3_figure()));
    for (r, s) in [(2, 1), (3, 1), (5, 2), (6, 1), (7, 3), (12, 5)] {
        v.push(named(format!("L({r},{s})"), build_lens(r, s).unwrap()));
    }
    v.push(named("T^2", torus(2)));
    v.push(named("T^3", torus(3)));
    let s1 = build_sphere_minimal(1).unwrap();
    let s2 = build_sphere_minimal(2).unwrap();
    v.push(named("S^1 x S^2", tensor_product(&s1, &s2)));
    for (r, s) in [(3, 1), (4, 1), (5, 2)] {
        v.push(named(
            format!("L({r},{s}) x S^1"),
            tensor_product(&build_lens(r, s).unwrap(), &s1),
        ));
    }
    v
}
