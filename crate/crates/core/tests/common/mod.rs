#![allow(dead_code)]

use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::Rng;
use truncpoly::{CoefficientField, PolyEndo, Polynomial, Scalar, TruncatedEndo, TruncationSpec};

pub fn fp(p: u64) -> CoefficientField {
    CoefficientField::prime(p).unwrap()
}

pub fn random_scalar(rng: &mut StdRng, field: &CoefficientField) -> Scalar {
    match field.order() {
        Some(q) => {
            let elems: Vec<Scalar> = field.elements().collect();
            elems[rng.gen_range(0..q as usize)].clone()
        }
        None => {
            let num = rng.gen_range(-5..=5);
            let den = *[1, 1, 1, 2, 3].choose(rng).unwrap();
            field.scalar_from_ratio(num, den).unwrap()
        }
    }
}

pub fn random_nonzero_scalar(rng: &mut StdRng, field: &CoefficientField) -> Scalar {
    loop {
        let c = random_scalar(rng, field);
        if !c.is_zero() {
            return c;
        }
    }
}

/// Exponent vector with total degree exactly `degree`.
pub fn random_exponents(rng: &mut StdRng, nvars: usize, degree: u32) -> Vec<u32> {
    let mut e = vec![0u32; nvars];
    for _ in 0..degree {
        e[rng.gen_range(0..nvars)] += 1;
    }
    e
}

/// Random polynomial with up to `terms` terms of degree `min_degree..=max_degree`.
pub fn random_poly(
    rng: &mut StdRng,
    field: &CoefficientField,
    nvars: usize,
    min_degree: u32,
    max_degree: u32,
    terms: usize,
) -> Polynomial {
    let terms: Vec<(Vec<u32>, Scalar)> = (0..terms)
        .map(|_| {
            let d = rng.gen_range(min_degree..=max_degree);
            (random_exponents(rng, nvars, d), random_scalar(rng, field))
        })
        .collect();
    Polynomial::from_terms(field, nvars, terms).unwrap()
}

/// Random endomorphism of `k[x]` fixing the origin.
pub fn random_endo_fixing_origin(
    rng: &mut StdRng,
    field: &CoefficientField,
    nvars: usize,
    max_degree: u32,
) -> PolyEndo {
    PolyEndo::new(
        (0..nvars)
            .map(|_| random_poly(rng, field, nvars, 1, max_degree, 4))
            .collect(),
    )
    .unwrap()
}

pub fn random_truncated_endo(
    rng: &mut StdRng,
    spec: &TruncationSpec,
    max_degree: u32,
) -> TruncatedEndo {
    let images: Vec<Polynomial> = (0..spec.nvars())
        .map(|_| random_poly(rng, spec.field(), spec.nvars(), 1, max_degree, 5))
        .collect();
    TruncatedEndo::from_polys(spec, &images).unwrap()
}

pub fn random_invertible_matrix(rng: &mut StdRng, field: &CoefficientField, n: usize) -> Vec<Vec<Scalar>> {
    loop {
        let m: Vec<Vec<Scalar>> = (0..n)
            .map(|_| (0..n).map(|_| random_scalar(rng, field)).collect())
            .collect();
        if !truncpoly::matrix::determinant(&m, &field.one_scalar()).is_zero() {
            return m;
        }
    }
}

/// One factor of a tame automorphism together with its inverse.
pub struct TameFactor {
    pub map: PolyEndo,
    pub inverse: PolyEndo,
}

/// `x_i -> x_i + f(other variables)` with `f(0) = 0`, `deg f <= max_degree`.
pub fn random_elementary(
    rng: &mut StdRng,
    field: &CoefficientField,
    nvars: usize,
    max_degree: u32,
) -> TameFactor {
    let target = rng.gen_range(0..nvars);
    let others: Vec<usize> = (0..nvars).filter(|&j| j != target).collect();
    let mut terms = Vec::new();
    for _ in 0..3 {
        let d = rng.gen_range(1..=max_degree);
        let mut e = vec![0u32; nvars];
        for _ in 0..d {
            e[*others.choose(rng).unwrap()] += 1;
        }
        terms.push((e, random_scalar(rng, field)));
    }
    let f = Polynomial::from_terms(field, nvars, terms).unwrap();
    let build = |sign: &Polynomial| {
        PolyEndo::new(
            (0..nvars)
                .map(|i| {
                    let x = Polynomial::var(field, nvars, i).unwrap();
                    if i == target {
                        &x + sign
                    } else {
                        x
                    }
                })
                .collect(),
        )
        .unwrap()
    };
    TameFactor {
        map: build(&f),
        inverse: build(&-&f),
    }
}

pub fn random_linear(rng: &mut StdRng, field: &CoefficientField, nvars: usize) -> TameFactor {
    let m = random_invertible_matrix(rng, field, nvars);
    let inv = truncpoly::matrix::invert_scalar_matrix(&m).unwrap();
    TameFactor {
        map: PolyEndo::linear(&m).unwrap(),
        inverse: PolyEndo::linear(&inv).unwrap(),
    }
}

/// A composition of at most `max_factors` tame factors, at most
/// `max_nonlinear` of them elementary, plus the reversed composition of the
/// factor inverses.
pub fn random_tame(
    rng: &mut StdRng,
    field: &CoefficientField,
    nvars: usize,
    max_factors: usize,
    max_nonlinear: usize,
) -> (PolyEndo, PolyEndo) {
    let count = rng.gen_range(1..=max_factors);
    let mut nonlinear = 0;
    let mut factors = Vec::new();
    for _ in 0..count {
        if nonlinear < max_nonlinear && rng.gen_bool(0.7) {
            nonlinear += 1;
            factors.push(random_elementary(rng, field, nvars, 2));
        } else {
            factors.push(random_linear(rng, field, nvars));
        }
    }
    let mut map = PolyEndo::identity(field, nvars);
    let mut inverse = PolyEndo::identity(field, nvars);
    for f in &factors {
        map = map.compose(&f.map).unwrap();
        inverse = f.inverse.compose(&inverse).unwrap();
    }
    (map, inverse)
}
