//! Acceptance suite: one PASS/FAIL line per criterion, each under its time
//! limit. Runs without the libtest harness so the lines always show.

mod common;

use std::collections::HashSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde_json::Value;

use common::*;
use truncpoly::cli::{run_command, Command, Options};
use truncpoly::{
    build_family, check_coherence, enumerate_report, lift_invert, maximal_ideal_image, parse_map,
    project_endo, CoefficientField, InversionOutcome, Ladder, LiftOptions, MapDocument, PolyEndo,
    Polynomial, Scalar, TruncatedElement, TruncatedEndo, TruncationSpec,
};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn origin(field: &CoefficientField, n: usize) -> Vec<Scalar> {
    vec![field.zero_scalar(); n]
}

/// All elements of a finite truncated ring, as coefficient vectors over the
/// surviving monomials.
fn ring_elements(spec: &TruncationSpec, include_constant: bool) -> Vec<TruncatedElement> {
    let field = spec.field();
    let basis: Vec<_> = spec
        .basis()
        .into_iter()
        .filter(|m| include_constant || !m.is_one())
        .collect();
    let q = field.order().unwrap() as usize;
    let elems: Vec<Scalar> = field.elements().collect();
    let total = q.pow(basis.len() as u32);
    (0..total)
        .map(|mut idx| {
            let terms = basis.iter().map(|m| {
                let c = elems[idx % q].clone();
                idx /= q;
                (m.exponents().to_vec(), c)
            });
            let poly = Polynomial::from_terms(field, spec.nvars(), terms.collect::<Vec<_>>()).unwrap();
            spec.normal_form(&poly).unwrap()
        })
        .collect()
}

/// `u(sigma(y))` computed term by term with ring arithmetic only.
fn apply_by_hand(sigma: &TruncatedEndo, u: &TruncatedElement) -> TruncatedElement {
    let spec = sigma.spec();
    let mut acc = TruncatedElement::zero(spec);
    for (mon, c) in u.rep().terms() {
        let mut term = TruncatedElement::constant(spec, &c).unwrap();
        for (img, &e) in sigma.images().iter().zip(mon.exponents()) {
            term = &term * &img.pow(e as u64);
        }
        acc = &acc + &term;
    }
    acc
}

fn is_bijective_by_table(sigma: &TruncatedEndo, ring: &[TruncatedElement]) -> bool {
    let images: HashSet<String> = ring
        .iter()
        .map(|u| apply_by_hand(sigma, u).rep().to_string())
        .collect();
    images.len() == ring.len()
}

fn criterion_1() -> Outcome {
    let f2 = fp(2);
    let mut rng = StdRng::seed_from_u64(1);
    let mut checked = 0;
    for (n, s) in [(1usize, 1u32), (1, 2), (2, 1)] {
        let spec = TruncationSpec::frobenius(&f2, n, origin(&f2, n), s).unwrap();
        let ring = ring_elements(&spec, true);
        let maximal = ring_elements(&spec, false);
        // every endomorphism: each image ranges over the maximal ideal
        let mut choices = vec![0usize; n];
        loop {
            let images: Vec<TruncatedElement> = choices.iter().map(|&i| maximal[i].clone()).collect();
            let sigma = TruncatedEndo::new(&spec, images).unwrap();
            let verdict = sigma.verdict();
            ensure(verdict.is_automorphism == is_bijective_by_table(&sigma, &ring), || {
                format!("criterion disagrees with bijectivity for {sigma}")
            })?;
            ensure(verdict.is_automorphism == verdict.determinant_is_unit, || {
                format!("unit test and linear test disagree for {sigma}")
            })?;
            checked += 1;
            let Some(pos) = choices.iter().position(|&c| c + 1 < maximal.len()) else {
                break;
            };
            choices[pos] += 1;
            for c in &mut choices[..pos] {
                *c = 0;
            }
        }
        // dense sampling from raw polynomial images of higher degree
        for _ in 0..150 {
            let sigma = random_truncated_endo(&mut rng, &spec, 6);
            ensure(sigma.is_automorphism() == is_bijective_by_table(&sigma, &ring), || {
                format!("criterion disagrees with bijectivity for {sigma}")
            })?;
            checked += 1;
        }
    }
    ensure(checked >= 500, || format!("only {checked} endomorphisms checked"))?;
    Ok(format!("{checked} endomorphisms, all agree"))
}

fn criterion_2() -> Outcome {
    let mut rng = StdRng::seed_from_u64(2);
    let mut done = 0;
    let mut max_rounds = 0;
    while done < 200 {
        let p = [2u64, 3][rng.gen_range(0..2)];
        let n = rng.gen_range(1..=2usize);
        let s = rng.gen_range(1..=2u32);
        let field = fp(p);
        let spec = TruncationSpec::frobenius(&field, n, origin(&field, n), s).unwrap();
        let sigma = random_truncated_endo(&mut rng, &spec, 3);
        if !sigma.is_automorphism() {
            continue;
        }
        let (tau, rounds) = sigma.invert_with_rounds().map_err(|e| format!("{sigma}: {e}"))?;
        let bound = (spec.nilpotency_index() as f64).log2().ceil() as usize + 1;
        ensure(rounds <= bound, || format!("{rounds} rounds > {bound} for {sigma}"))?;
        for i in 0..n {
            let y = TruncatedElement::generator(&spec, i).unwrap();
            let left = apply_by_hand(&sigma, &apply_by_hand(&tau, &y));
            let right = apply_by_hand(&tau, &apply_by_hand(&sigma, &y));
            ensure(left == y && right == y, || format!("inverse of {sigma} failed: {tau}"))?;
        }
        max_rounds = max_rounds.max(rounds);
        done += 1;
    }
    Ok(format!("200 inverses verified, at most {max_rounds} correction rounds"))
}

fn criterion_3() -> Outcome {
    let mut rng = StdRng::seed_from_u64(3);
    for _ in 0..100 {
        let field = fp([2u64, 3][rng.gen_range(0..2)]);
        let n = rng.gen_range(1..=2usize);
        let phi = random_endo_fixing_origin(&mut rng, &field, n, 3);
        let fam = build_family(&phi, &origin(&field, n), 3, Ladder::Frobenius).map_err(|e| e.to_string())?;
        ensure(check_coherence(&fam), || format!("incoherent family for {phi}"))?;
    }
    for _ in 0..100 {
        let p = [2u64, 3][rng.gen_range(0..2)];
        let field = fp(p);
        let n = rng.gen_range(1..=2usize);
        let level = rng.gen_range(1..=if p == 2 { 3 } else { 2 });
        let phi = random_endo_fixing_origin(&mut rng, &field, n, 2);
        let psi = random_endo_fixing_origin(&mut rng, &field, n, 2);
        let a = origin(&field, n);
        let lhs = project_endo(&phi.compose(&psi).unwrap(), &a, level, Ladder::Frobenius).unwrap();
        let rhs = project_endo(&phi, &a, level, Ladder::Frobenius)
            .unwrap()
            .compose(&project_endo(&psi, &a, level, Ladder::Frobenius).unwrap())
            .unwrap();
        ensure(lhs == rhs, || format!("projection not multiplicative for {phi} and {psi}"))?;
    }
    Ok("100 coherent families, 100 multiplicative pairs".into())
}

fn criterion_4() -> Outcome {
    let mut rng = StdRng::seed_from_u64(4);
    let fields = [fp(3), CoefficientField::rational()];
    let mut levels = Vec::new();
    for k in 0..50 {
        let field = &fields[k % 2];
        let (phi, expected) = random_tame(&mut rng, field, 2, 4, 3);
        let outcome = lift_invert(&phi, &origin(field, 2), &LiftOptions::default()).map_err(|e| e.to_string())?;
        let InversionOutcome::Stabilized { inverse, level } = outcome else {
            return Err(format!("no stabilized inverse for {phi}: {outcome:?}"));
        };
        let id = PolyEndo::identity(field, 2);
        ensure(phi.compose(&inverse).unwrap() == id, || format!("phi∘psi != id for {phi}"))?;
        ensure(inverse.compose(&phi).unwrap() == id, || format!("psi∘phi != id for {phi}"))?;
        ensure(inverse == expected, || {
            format!("inverse {inverse} differs from the reversed composition {expected}")
        })?;
        levels.push(level);
    }
    Ok(format!(
        "50 tame maps inverted (stabilization levels {}..={})",
        levels.iter().min().unwrap(),
        levels.iter().max().unwrap()
    ))
}

fn criterion_5() -> Outcome {
    let mut notes = Vec::new();
    for p in [2u64, 3] {
        let field = fp(p);
        let phi = truncpoly::parse_polynomial(&format!("x1 + x1^{p}"), &field, 1).unwrap();
        let phi = PolyEndo::new(vec![phi]).unwrap();
        let a = origin(&field, 1);
        let check = phi.jacobian_constant_check();
        ensure(check.is_constant_unit && check.value == Polynomial::one(&field, 1), || {
            format!("jacobian check failed: {}", check.value)
        })?;
        let mut previous = 0;
        for s in 1..=5u32 {
            let sigma = project_endo(&phi, &a, s, Ladder::Frobenius).unwrap();
            ensure(sigma.is_automorphism(), || format!("level {s} not an automorphism"))?;
            let tau = sigma.invert().unwrap();
            // truncation of sum_k (-1)^k y^(p^k)
            let series = Polynomial::from_terms(
                &field,
                1,
                (0..=s).map(|k| (vec![(p as u32).pow(k)], field.scalar(if k % 2 == 0 { 1 } else { -1 }))),
            )
            .unwrap();
            let expected = sigma.spec().normal_form(&series).unwrap();
            ensure(tau.images()[0] == expected, || {
                format!("level {s}: inverse {tau} != truncated series {expected}")
            })?;
            let degree = tau.degree();
            ensure(degree > previous, || format!("degree did not grow at level {s}"))?;
            previous = degree;
        }
        let opts = LiftOptions {
            max_level: 5,
            degree_bound: Some(p.pow(5)),
            ladder: None,
        };
        let InversionOutcome::NotStabilized { candidate_degrees, .. } = lift_invert(&phi, &a, &opts).unwrap() else {
            return Err(format!("x + x^{p} unexpectedly stabilized"));
        };
        let expected: Vec<u64> = (0..5).map(|k| p.pow(k)).collect();
        ensure(candidate_degrees == expected, || format!("trace {candidate_degrees:?}"))?;
        let ext = CoefficientField::galois(p, 2).unwrap();
        let report = enumerate_report(&phi, &ext, false).unwrap();
        ensure(!report.injective, || format!("x + x^{p} injective over {}", ext))?;
        notes.push(format!("p={p}: degrees {candidate_degrees:?}, image {}/{}", report.image_size, report.domain_size));
    }
    Ok(notes.join("; "))
}

fn criterion_6() -> Outcome {
    let mut count = 0;
    for p in [2u64, 3, 5] {
        let field = fp(p);
        for n in 1..=3usize {
            for s in 1..=2u32 {
                let spec = TruncationSpec::frobenius(&field, n, origin(&field, n), s).unwrap();
                let threshold = p.pow(s - 1);
                let side = (p * threshold) as usize + 1;
                let mut dim = 0u128;
                let mut max_degree = 0u64;
                for idx in 0..side.pow(n as u32) {
                    let mut rest = idx;
                    let mut quota = 0u64;
                    let mut degree = 0u64;
                    for _ in 0..n {
                        let e = (rest % side) as u64;
                        rest /= side;
                        quota += e / p;
                        degree += e;
                    }
                    if quota < threshold {
                        dim += 1;
                        max_degree = max_degree.max(degree);
                    }
                }
                ensure(spec.quotient_dimension() == dim, || {
                    format!("p={p} n={n} s={s}: dimension {} vs {dim}", spec.quotient_dimension())
                })?;
                ensure(spec.basis().len() as u128 == dim, || format!("basis size at p={p} n={n} s={s}"))?;
                ensure(spec.nilpotency_index() == max_degree + 1, || {
                    format!("p={p} n={n} s={s}: nilpotency {} vs {}", spec.nilpotency_index(), max_degree + 1)
                })?;
                count += 1;
            }
        }
    }
    let spec = TruncationSpec::frobenius(&fp(2), 2, origin(&fp(2), 2), 2).unwrap();
    ensure(spec.quotient_dimension() == 12 && spec.nilpotency_index() == 5, || {
        "p=2 n=2 s=2 example".into()
    })?;
    Ok(format!("{count} Frobenius rings match enumeration"))
}

fn criterion_7() -> Outcome {
    let mut rng = StdRng::seed_from_u64(7);
    for k in 0..100 {
        let field = fp([2u64, 3][k % 2]);
        let n = 2;
        let phi = PolyEndo::new((0..n).map(|_| random_poly(&mut rng, &field, n, 0, 3, 4)).collect()).unwrap();
        let a: Vec<Scalar> = (0..n).map(|_| random_scalar(&mut rng, &field)).collect();
        let found = maximal_ideal_image(&phi, &a, &field).unwrap();
        let mut direct = Vec::new();
        for c in truncpoly::points::all_points(&field, n).unwrap() {
            let vanishes = phi
                .images()
                .iter()
                .zip(&a)
                .all(|(f, ai)| (f - &Polynomial::constant(n, ai)).eval(&c).unwrap().is_zero());
            if vanishes {
                direct.push(c);
            }
        }
        ensure(found == direct, || format!("ideal image mismatch for {phi} at {a:?}"))?;
        let report = enumerate_report(&phi, &field, true).unwrap();
        let fibers = report.fibers.unwrap();
        let total: usize = fibers.iter().map(|(_, pre)| pre.len()).sum();
        ensure(total as u128 == report.domain_size, || "fiber sizes do not sum to q^n".into())?;
        ensure(fibers.len() as u128 == report.image_size, || "image size mismatch".into())?;
    }
    Ok("100 maps: ideal images match, fibers partition the domain".into())
}

const GOLDEN_TRIANGULAR: &str = concat!(
    r#"{"command":"invert","field":"rational","inverse":"x1 -> x1 - x2^2, x2 -> x2","level":2,"#,
    r#""map":"x1 -> x1 + x2^2, x2 -> x2","n":2,"normalization":null,"point":["0","0"],"#,
    r#""schema":"truncpoly.report.v1","status":"stabilized"}"#,
    "\n"
);

const GOLDEN_ARTIN_SCHREIER: &str = concat!(
    r#"{"candidate_degrees":[1,2,4,8,16],"command":"invert","field":"p=2","#,
    r#""last_candidate":"x1 -> x1 + x1^2 + x1^4 + x1^8 + x1^16","map":"x1 -> x1 + x1^2","#,
    r#""max_level":5,"n":1,"normalization":null,"point":["0"],"#,
    r#""schema":"truncpoly.report.v1","status":"not_stabilized"}"#,
    "\n"
);

const GOLDEN_SQUARE: &str = concat!(
    r#"{"command":"check","determinant_is_unit":false,"field":"p=2","is_automorphism":false,"#,
    r#""jacobian_constant_check":{"is_constant_unit":false,"value":"0"},"jacobian_det":"0","#,
    r#""level":1,"linear_det":"0","linear_part":[["0"]],"map":"x1 -> x1^2","n":1,"#,
    r#""normalization":null,"point":["0"],"schema":"truncpoly.report.v1","#,
    r#""truncation":"frob:p=2,s=1,n=1,a=0"}"#,
    "\n"
);

fn random_document(rng: &mut StdRng, field: &CoefficientField) -> MapDocument {
    let n = rng.gen_range(1..=3usize);
    let map = PolyEndo::new((0..n).map(|_| random_poly(rng, field, n, 0, 4, 5)).collect()).unwrap();
    let basepoint = rng
        .gen_bool(0.3)
        .then(|| (0..n).map(|_| random_scalar(rng, field)).collect());
    MapDocument {
        field: field.clone(),
        nvars: n,
        map,
        basepoint,
    }
}

fn criterion_8() -> Outcome {
    let mut rng = StdRng::seed_from_u64(8);
    let fields = [
        fp(2),
        fp(3),
        fp(7),
        CoefficientField::galois(2, 2).unwrap(),
        CoefficientField::galois(3, 2).unwrap(),
        CoefficientField::rational(),
    ];
    for k in 0..200 {
        let doc = random_document(&mut rng, &fields[k % fields.len()]);
        let text = doc.to_text();
        let back = parse_map(&text, None).map_err(|e| format!("{e} in\n{text}"))?;
        ensure(back == doc, || format!("round trip changed\n{text}"))?;
    }
    let cases = [
        (
            Command::Invert,
            "field: rational\nx1 -> x1 + x2^2\nx2 -> x2\n",
            Options::default(),
            GOLDEN_TRIANGULAR,
        ),
        (
            Command::Invert,
            "field: p=2\nx1 -> x1 + x1^2\n",
            Options {
                max_level: Some(5),
                degree_bound: Some(16),
                ..Options::default()
            },
            GOLDEN_ARTIN_SCHREIER,
        ),
        (Command::Check, "field: p=2\nx1 -> x1^2\n", Options::default(), GOLDEN_SQUARE),
    ];
    for (cmd, map, base, golden) in cases {
        let opts = Options {
            map: Some(map.into()),
            json: true,
            ..base
        };
        let out = run_command(cmd, &opts);
        ensure(out.exit_code == 0, || format!("{cmd} exited {}", out.exit_code))?;
        ensure(out.stdout == golden, || format!("{cmd} output\n{}expected\n{golden}", out.stdout))?;
        let v: Value = serde_json::from_str(&out.stdout).unwrap();
        ensure(v["schema"] == "truncpoly.report.v1", || "schema key".into())?;
    }
    Ok("200 documents round-trip; 3 golden reports match".into())
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome, u64); 8] = [
        ("automorphism criterion vs brute-force bijectivity", criterion_1, 10),
        ("constructive truncated inversion", criterion_2, 10),
        ("inverse-system coherence and multiplicativity", criterion_3, 10),
        ("lifting soundness and tame completeness", criterion_4, 30),
        ("x + x^p boundary witness", criterion_5, 10),
        ("dimension and nilpotency cross-validation", criterion_6, 5),
        ("point/ideal duality", criterion_7, 20),
        ("CLI contract", criterion_8, 5),
    ];
    let mut failures = 0;
    for (i, (name, run, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = run();
        let elapsed = start.elapsed();
        let over = elapsed > Duration::from_secs(*limit);
        let (status, detail) = match (&result, over) {
            (Ok(msg), false) => ("PASS", msg.clone()),
            (Ok(msg), true) => ("FAIL", format!("{msg}; exceeded {limit}s")),
            (Err(msg), _) => ("FAIL", msg.clone()),
        };
        if status == "FAIL" {
            failures += 1;
        }
        println!(
            "criterion {} [{name}]: {status} in {:.2}s (limit {limit}s) - {detail}",
            i + 1,
            elapsed.as_secs_f64()
        );
    }
    if failures == 0 {
        println!("acceptance: all 8 criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {failures} criteria failed");
        ExitCode::FAILURE
    }
}
