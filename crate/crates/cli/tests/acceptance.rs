//! End-to-end acceptance run: one PASS/FAIL line per criterion.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};
use unicurve::characters::expr::evaluate;
use unicurve::characters::{decompose, weyl_dimension};
use unicurve::free_lie::{
    bracket, generators, lyndon_words, theta_pair, LieElement, SymplecticGenerator as G,
};
use unicurve::presentation::{build_gr_p, build_gr_p_gn, configuration_relations};
use unicurve::scalar::Field;
use unicurve::sections::{exists_section, verify_taut_sections, Existence};
use unicurve::Scalar;
use unicurve_cli::{cmd_report, render, Format, RunConfig, Span};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn check(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn within(elapsed: Duration, limit_s: u64) -> Result<(), String> {
    check(
        elapsed.as_secs() < limit_s,
        format!("took {elapsed:.1?}, limit {limit_s} s"),
    )
}

fn presentation_suite() -> Outcome {
    let start = Instant::now();
    let mut cases = 0;
    for g in 1..=5usize {
        for n in 1..=4usize {
            if 2 * g + n <= 2 {
                continue;
            }
            let p = build_gr_p_gn::<Scalar>(g, n, 3).map_err(|e| e.to_string())?;
            let copies: Vec<u32> = (1..=n as u32).collect();
            for r in configuration_relations::<Scalar>(g, &copies) {
                let nf = p.normal_form_in(&r, 2).map_err(|e| e.to_string())?;
                check(
                    nf.is_zero(),
                    format!("relation survives at g={g} n={n}: {r}"),
                )?;
            }
            check(
                p.explicit_dim(1) == 2 * g * n,
                format!("dim Gr_-1 = {} at g={g} n={n}", p.explicit_dim(1)),
            )?;
            cases += 1;
        }
    }
    within(start.elapsed(), 60)?;
    Ok(format!(
        "{cases} cases, all relations reduce to 0, dim Gr_-1 = 2gn, {:.1?}",
        start.elapsed()
    ))
}

fn gr_p_dimensions() -> Outcome {
    let mut dims = Vec::new();
    for g in 2..=6usize {
        let d = build_gr_p::<Scalar>(g, 2)
            .map_err(|e| e.to_string())?
            .explicit_dim(2);
        let oracle = decompose(
            g,
            &evaluate(g, "Λ2(std) - trivial(1)").map_err(|e| e.to_string())?,
        )
        .and_then(|x| x.dimension(g))
        .map_err(|e| e.to_string())?;
        check(d == 2 * g * g - g - 1, format!("g={g}: dim {d}"))?;
        check(
            d as u64 == oracle
                && oracle == weyl_dimension(g, &[1, 1]).map_err(|e| e.to_string())?,
            format!("g={g}: oracle {oracle}"),
        )?;
        dims.push(d);
    }
    Ok(format!("weight -2 dims {dims:?}"))
}

fn normal_form_table() -> Outcome {
    for g in 2..=5usize {
        let p = build_gr_p_gn::<Scalar>(g, 2, 2).map_err(|e| e.to_string())?;
        let gen = |x: G| LieElement::<Scalar>::generator(x);
        let nf = |e: &LieElement<Scalar>| p.normal_form_in(e, 2).map_err(|e| e.to_string());
        let ab = nf(&bracket(&gen(G::a(1, 1)), &gen(G::b(1, 2)), 2))?;
        let theta = nf(&theta_pair::<Scalar>(g, 1, 2)
            .map_err(|e| e.to_string())?
            .scale(&Scalar::from_fraction(1, g as i64)))?;
        check(
            ab == theta && !ab.is_zero(),
            format!("g={g}: [a1(1), b1(2)] is not Θ_12/g"),
        )?;
        let aa = nf(&bracket(&gen(G::a(1, 1)), &gen(G::a(2, 2)), 2))?;
        check(aa.is_zero(), format!("g={g}: [a1(1), a2(2)] is nonzero"))?;
    }
    Ok("g=2..5: [a1(1),b1(2)] = Θ_12/g, [a1(1),a2(2)] = 0".into())
}

fn obstruction_certificates() -> Outcome {
    let start = Instant::now();
    let literal = [(4usize, (3i64, 2i64)), (5, (8, 5)), (6, (5, 3))];
    let mut total = 0;
    for (g, (num, den)) in literal {
        let expected = Scalar::from_fraction(num, den);
        check(
            expected == Scalar::from_fraction(2 * g as i64 - 2, g as i64),
            "residual formula",
        )?;
        for n in 0..=3usize {
            let r = exists_section::<Scalar>(g, n).map_err(|e| e.to_string())?;
            check(
                r.verdict == Existence::NoSection,
                format!("g={g} n={n}: {}", r.verdict),
            )?;
            if n == 0 {
                check(
                    r.routed.as_ref().is_some_and(|x| x.holds()),
                    format!("g={g} n=0: routed argument fails"),
                )?;
            } else {
                check(
                    r.certificates.len() == n,
                    format!("g={g} n={n}: {} certificates", r.certificates.len()),
                )?;
                for c in &r.certificates {
                    check(
                        c.residual == expected,
                        format!("g={g} n={n}: residual {}", c.residual),
                    )?;
                }
            }
            total += r.certificates.len();
        }
    }
    within(start.elapsed(), 120)?;
    Ok(format!(
        "12 NO-SECTION verdicts, {total} certificates with residuals 3/2, 8/5, 5/3, {:.1?}",
        start.elapsed()
    ))
}

fn tautological_consistency() -> Outcome {
    let mut constraints = 0;
    for g in 4..=5usize {
        for n in 1..=3usize {
            let r = verify_taut_sections::<Scalar>(g, n).map_err(|e| e.to_string())?;
            check(
                r.checks.len() == n,
                format!("g={g} n={n}: {} candidates", r.checks.len()),
            )?;
            for c in &r.checks {
                // With one marked point the target has no Q(1) line, so nothing is determined.
                check(
                    n == 1 || !c.certificates.is_empty(),
                    format!("g={g} n={n} s_{}: no determined constraints", c.j),
                )?;
                check(
                    c.consistent(),
                    format!("g={g} n={n} s_{}: nonzero residual", c.j),
                )?;
                constraints += c.certificates.len();
            }
        }
    }
    Ok(format!(
        "n candidates per case, {constraints} constraints, all residuals 0"
    ))
}

fn degeneration() -> Outcome {
    let start = Instant::now();
    let mult = |g: usize| -> Result<u64, String> {
        let c = evaluate(g, "Λ2(Λ3(std) - std)").map_err(|e| e.to_string())?;
        Ok(decompose(g, &c)
            .map_err(|e| e.to_string())?
            .partition_multiplicity(&[1, 1]))
    };
    let (m3, m4) = (mult(3)?, mult(4)?);
    let d2 = evaluate(2, "Λ3(std) - std")
        .map_err(|e| e.to_string())?
        .dimension();
    check(m3 == 0, format!("g=3 multiplicity {m3}"))?;
    check(m4 >= 1, format!("g=4 multiplicity {m4}"))?;
    check(d2 == 0, format!("g=2 dim {d2}"))?;
    within(start.elapsed(), 60)?;
    Ok(format!(
        "[1,1] in Λ²Λ³₀H: {m3} at g=3, {m4} at g=4; dim Λ³₀H at g=2: {d2}"
    ))
}

fn mobius(n: usize) -> i64 {
    let (mut n, mut sign, mut p) = (n, 1, 2);
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if n > 1 {
        -sign
    } else {
        sign
    }
}

fn witt(d: usize, w: usize) -> usize {
    let s: i64 = (1..=w)
        .filter(|e| w.is_multiple_of(*e))
        .map(|e| mobius(e) * (d as i64).pow((w / e) as u32))
        .sum();
    (s / w as i64) as usize
}

fn element() -> impl Strategy<Value = LieElement<Scalar>> {
    let gens = generators(2, &[0, 1]);
    proptest::collection::vec((0..gens.len(), 0..gens.len(), 1..=2usize, -3i64..4), 1..4).prop_map(
        move |parts| {
            let mut out = LieElement::zero();
            for (i, j, w, c) in parts {
                let mut x = LieElement::generator(gens[i]);
                if w == 2 {
                    x = bracket(&x, &LieElement::generator(gens[j]), 2);
                }
                out = out.plus(&x.scale(&Scalar::from_int(c)));
            }
            out
        },
    )
}

fn free_lie_oracle() -> Outcome {
    let start = Instant::now();
    for d in 1..=12usize {
        let alphabet: Vec<usize> = (0..d).collect();
        for w in 1..=3 {
            let got = lyndon_words(&alphabet, w).len();
            check(
                got == witt(d, w),
                format!("d={d} w={w}: {got} Lyndon words"),
            )?;
        }
    }
    let mut runner = TestRunner::new(Config {
        cases: 1000,
        failure_persistence: None,
        ..Config::default()
    });
    runner
        .run(&(element(), element(), element()), |(x, y, z)| {
            let b = |p: &LieElement<Scalar>, q: &LieElement<Scalar>| bracket(p, q, 6);
            let jacobi = b(&x, &b(&y, &z))
                .plus(&b(&y, &b(&z, &x)))
                .plus(&b(&z, &b(&x, &y)));
            prop_assert!(jacobi.is_zero());
            prop_assert_eq!(b(&x, &y), b(&y, &x).scale(&Scalar::from_int(-1)));
            Ok(())
        })
        .map_err(|e| e.to_string())?;
    within(start.elapsed(), 30)?;
    Ok(format!(
        "Witt counts for d <= 12, w <= 3; 1000 Jacobi/antisymmetry triples, {:.1?}",
        start.elapsed()
    ))
}

fn determinism() -> Outcome {
    let cache = tempfile::tempdir().map_err(|e| e.to_string())?;
    let mut config =
        RunConfig::new(unicurve_cli::Command::Report).with_grid(Span::new(3, 4), Span::new(0, 2));
    config.cache_dir = Some(cache.path().to_path_buf());
    let first = render(
        &cmd_report(&config).map_err(|e| e.to_string())?,
        Format::Structured,
    );
    let second = render(
        &cmd_report(&config).map_err(|e| e.to_string())?,
        Format::Structured,
    );
    check(first == second, "structured reports differ")?;
    Ok(format!(
        "two report runs byte-identical ({} bytes)",
        first.len()
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("presentation suite", presentation_suite),
        ("Gr p dimensions", gr_p_dimensions),
        ("normal-form table", normal_form_table),
        ("obstruction certificates", obstruction_certificates),
        ("tautological consistency", tautological_consistency),
        ("degeneration", degeneration),
        ("free Lie oracle", free_lie_oracle),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(detail) => println!("criterion {} ({name}): PASS - {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {} ({name}): FAIL - {detail}", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
