//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.
//! Runs without the libtest harness so the lines always reach the log.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use filiform::cochain::{d_adjoint, increasing_tuples, psi2, psi3, psi_top_for_dimension, AdjointCochain};
use filiform::combinat::partitions_exact;
use filiform::exterior::{omega, ExtForm};
use filiform::fixtures::{make_fixture, Fixture};
use filiform::lie::{LieElement, LieStructure};
use filiform::oracle::{
    compare_finite, compare_truncated, deformed_structure, evaluate_system, jacobi_scan, known_solution,
    oracle_coefficient, Assignment, Inventory, KnownSolution,
};
use filiform::poly::{DeformPolynomial, DeformVariable};
use filiform::scalar::{int, ratio};
use filiform::system::{dims_report, f_poly, labels_up_to, system_finite, Label, XMode};
use filiform::Scalar;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<(), String>;

fn check(ok: bool, msg: impl FnOnce() -> String) -> Outcome {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn zero_residuals(sys: &filiform::system::EquationSystem, a: &Assignment) -> Outcome {
    match evaluate_system(sys, a).into_iter().find(|(_, v)| *v != int(0)) {
        None => Ok(()),
        Some((l, v)) => Err(format!("residual {v} at {l}")),
    }
}

fn pairs(values: &[(usize, usize, Scalar)]) -> Assignment {
    let mut a = Assignment::new();
    for (j, s, v) in values {
        a.set(DeformVariable::pair(*j, *s), v.clone());
    }
    a
}

fn ac1() -> Outcome {
    let expected = [1, 3, 4, 8, 11, 18, 23, 33, 41, 55];
    for (n, want) in (9..=18).zip(expected) {
        let r = dims_report(n).map_err(|e| e.to_string())?;
        check(r.num_eqs == want && r.consistent(), || format!("n={n}: {} equations", r.num_eqs))?;
    }
    Ok(())
}

fn ac2() -> Outcome {
    for n in 9..=40usize {
        let closed = if n % 2 == 1 { (n - 3) * (n - 3) / 4 } else { (n - 2) * (n - 4) / 4 };
        let sum: u64 = (2..=(n as i64 - 3)).map(|r| partitions_exact(2, r)).sum();
        let r = dims_report(n).map_err(|e| e.to_string())?;
        check(
            r.num_vars as usize == closed && sum as usize == closed && r.num_vars_enumerated == r.num_vars,
            || format!("n={n}: {} vars, closed form {closed}, partition sum {sum}", r.num_vars),
        )?;
    }
    Ok(())
}

fn ac3() -> Outcome {
    let cmp = compare_truncated(25).map_err(|e| e.to_string())?;
    check(cmp.checked == labels_up_to(25).len() && cmp.diffs.is_empty(), || {
        format!("{} differences among {} labels", cmp.diffs.len(), cmp.checked)
    })?;
    for n in [10, 12, 14, 16] {
        let cmp = compare_finite(n).map_err(|e| e.to_string())?;
        check(cmp.diffs.is_empty(), || format!("n={n}: {} differences", cmp.diffs.len()))?;
    }
    Ok(())
}

fn ac4() -> Outcome {
    for n in 9..=16usize {
        let sys = system_finite(n, XMode::Fixed0).map_err(|e| e.to_string())?;
        let mut families = vec![KnownSolution::M2, KnownSolution::L1];
        families.extend((3..=8).map(KnownSolution::Mk));
        for sol in families {
            let a = known_solution(&sol, &int(1), n);
            zero_residuals(&sys, &a).map_err(|e| format!("{sol:?} n={n}: {e}"))?;
            let s = deformed_structure(&a, n).map_err(|e| e.to_string())?;
            check(jacobi_scan(&s).is_empty(), || format!("{sol:?} n={n}: Jacobi fails"))?;
        }
    }
    Ok(())
}

fn ac5() -> Outcome {
    let labels = [(2, 3, 0), (3, 4, 0), (2, 4, 0)];
    for (j, q, r) in labels {
        let inv = Inventory::for_dimension(j + 2 * q + 1, false);
        let oracle = oracle_coefficient(j, q, r, &inv).map_err(|e| e.to_string())?;
        check(f_poly(j, q, r).unwrap() == oracle, || format!("F_{{{j},{q},{r}}} differs from the oracle"))?;
    }
    for t in [int(1), int(-2), ratio(3, 5)] {
        let l1 = pairs(&[(2, 0, t.clone())]);
        let l2 = pairs(&[
            (2, 0, t.clone()),
            (3, 0, &t * ratio(1, 10)),
            (4, 0, &t * ratio(1, 70)),
            (5, 0, &t * ratio(1, 420)),
        ]);
        let l3 = pairs(&[(5, 0, t.clone())]);
        for (name, line) in [("l1", l1), ("l2", l2), ("l3", l3)] {
            for (j, q, r) in labels {
                let v = f_poly(j, q, r).unwrap().evaluate(|x| line.get(x));
                check(v == int(0), || format!("{name} at t={t}: F_{{{j},{q},{r}}} = {v}"))?;
            }
        }
    }
    let printed: DeformPolynomial = "-3x^2_{3,0}+x_{3,0}x_{2,0}+2x_{2,0}x_{4,0}".parse().unwrap();
    check(!f_poly(2, 3, 0).unwrap().equal_up_to_sign(&printed), || "F_{2,3,0} print unexpectedly exact".into())
}

const WEIGHT_FOUR: [((usize, usize), &str); 7] = [
    ((2, 3), "5x_{3,2}^2-4x_{2,2}x_{4,2}+2x_{2,2}x_{5,2}-6x_{3,2}x_{4,2}+x_{3,2}x_{5,2}"),
    (
        (2, 4),
        "-15x_{4,2}^2+2x_{2,2}x_{6,2}-4x_{2,2}x_{5,2}+6x_{3,2}x_{4,2}+10x_{4,2}x_{5,2}-x_{4,2}x_{6,2}+3x_{3,2}x_{5,2}-x_{3,2}x_{6,2}",
    ),
    ((3, 4), "6x_{4,2}^2-5x_{3,2}x_{5,2}+5x_{3,2}x_{6,2}+4x_{4,2}x_{6,2}-10x_{4,2}x_{5,2}"),
    (
        (2, 5),
        "35x_{5,2}^2-4x_{2,2}x_{6,2}+2x_{2,2}x_{7,2}+7x_{3,2}x_{5,2}+7x_{3,2}x_{6,2}-3x_{3,2}x_{7,2}-15x_{5,2}x_{6,2}+x_{5,2}x_{7,2}",
    ),
    (
        (3, 5),
        "-21x_{5,2}^2-5x_{3,2}x_{6,2}+5x_{3,2}x_{7,2}+7x_{4,2}x_{5,2}+4x_{4,2}x_{6,2}-3x_{4,2}x_{7,2}+20x_{5,2}x_{6,2}-5x_{5,2}x_{7,2}",
    ),
    (
        (4, 5),
        "7x_{5,2}^2-6x_{4,2}x_{6,2}+9x_{4,2}x_{7,2}-2x_{4,2}x_{8,2}-15x_{5,2}x_{6,2}+10x_{5,2}x_{7,2}-x_{5,2}x_{8,2}",
    ),
    (
        (3, 6),
        "56x_{6,2}^2-5x_{3,2}x_{7,2}+5x_{3,2}x_{8,2}+9x_{4,2}x_{7,2}-8x_{4,2}x_{8,2}+8x_{4,2}x_{6,2}-36x_{5,2}x_{6,2}-35x_{6,2}x_{7,2}+6x_{6,2}x_{8,2}",
    ),
];

fn ac6() -> Outcome {
    let weight_two = |v: DeformVariable| matches!(v, DeformVariable::Pair { s: 2, .. });
    // the one documented typo: the print drops -28 x_{4,2}x_{5,2} from F_{2,5,4}
    let mut fix: DeformPolynomial = DeformPolynomial::zero();
    fix.add_term(
        filiform::poly::Monomial::new(vec![DeformVariable::pair(4, 2), DeformVariable::pair(5, 2)]),
        (-28).into(),
    );
    let restricted: Vec<DeformPolynomial> = WEIGHT_FOUR
        .iter()
        .map(|((j, q), _)| f_poly(*j, *q, 4).unwrap().restrict(weight_two))
        .collect();
    for (((j, q), text), generated) in WEIGHT_FOUR.iter().zip(&restricted) {
        let mut printed: DeformPolynomial = text.parse().unwrap();
        if (*j, *q) == (2, 5) {
            printed = printed.plus(&fix);
        }
        check(generated.equal_up_to_sign(&printed), || format!("F_{{{j},{q},4}}: generated {generated}"))?;
    }
    for (t, u) in [(int(1), int(0)), (int(-3), int(2)), (ratio(2, 7), ratio(-1, 3))] {
        let on = |v: &[(usize, Scalar)]| pairs(&v.iter().map(|(j, x)| (*j, 2, x.clone())).collect::<Vec<_>>());
        let families = [
            on(&[(2, t.clone())]),
            on(&[(7, u.clone()), (8, t.clone())]),
            on(&[(6, t.clone()), (7, &t * int(4)), (8, &t * int(14))]),
            on(&[
                (2, &t * ratio(1, 70)),
                (3, &t * ratio(1, 420)),
                (4, &t * ratio(1, 2310)),
                (5, &t * ratio(1, 12012)),
                (6, &t * ratio(1, 60060)),
                (7, &t * ratio(1, 291720)),
                (8, &t * ratio(1, 1385670)),
            ]),
        ];
        for (i, a) in families.iter().enumerate() {
            for (((j, q), _), f) in WEIGHT_FOUR.iter().zip(&restricted) {
                let v = f.evaluate(|x| a.get(x));
                check(v == int(0), || format!("family {} at t={t}: F_{{{j},{q},4}} = {v}", i + 1))?;
            }
        }
    }
    Ok(())
}

fn ac7() -> Outcome {
    let sys = system_finite(12, XMode::Free).map_err(|e| e.to_string())?;
    let mut want = vec![
        Label::new(2, 3, 0),
        Label::new(2, 3, 1),
        Label::new(2, 3, 2),
        Label::new(2, 4, 0),
        Label::new(2, 3, 3),
        Label::new(2, 4, 1),
        Label::new(3, 4, 0),
        Label::new(2, 5, -1),
    ];
    want.sort();
    check(sys.labels() == want, || format!("labels {:?}", sys.labels()))?;
    let top: DeformPolynomial = "x(-2x_{2,0}+3x_{3,0}-x_{5,0})".parse().unwrap();
    check(sys.get(Label::new(2, 5, -1)).unwrap().poly == top, || "F~_{2,5,-1} differs from print".into())?;
    let inv = Inventory::for_dimension(12, true);
    for e in &sys.equations {
        let l = e.label;
        let oracle = oracle_coefficient(l.j, l.q, l.r, &inv).map_err(|e| e.to_string())?;
        check(e.poly == oracle, || format!("{l} differs from the oracle"))?;
    }
    // the printed forms differ from these at the terms recorded in the typo ledger
    let printed = [
        (Label::new(2, 3, 1), "-2x_{2,0}x_{4,1}+7x_{3,0}x_{3,1}-3x_{4,0}x_{3,1}-3x_{4,0}x_{2,1}-x_{3,0}x_{4,1}"),
        (Label::new(2, 4, 0), "6x^2_{4,0}-4x_{3,0}x_{4,0}-x_{4,0}x_{5,0}+2x_{2,0}x_{5,0}-x_{3,0}x_{5,0}"),
        (
            Label::new(2, 4, 1),
            "-2x_{2,0}x_{5,1}+5x_{3,0}x_{4,1}+x_{3,0}x_{5,1}-16x_{4,0}x_{4,1}+4x_{5,0}x_{4,1}-3x_{5,0}x_{2,1}+4x_{4,0}x_{3,1}+2x_{5,0}x_{3,1}+x_{4,0}x_{5,1}+x(2x_{2,2}-x_{3,2}-x_{4,2})",
        ),
        (Label::new(2, 3, 0), "-3x^2_{3,0}+x_{3,0}x_{4,0}+2x_{2,0}x_{4,0}"),
        (
            Label::new(2, 3, 2),
            "4x_{3,1}^2-3x_{2,1}x_{4,1}-3x_{3,1}x_{4,1}+x_{2,2}(2x_{5,0}-4x_{4,0})+x_{3,2}(8x_{3,0}-6x_{4,0}+x_{5,0})-x_{4,2}(x_{3,0}+2x_{2,0})",
        ),
        (
            Label::new(2, 3, 3),
            "x_{2,2}(2x_{5,1}-4x_{4,1})+x_{3,2}(9x_{3,1}-6x_{4,1}+x_{5,1})-x_{4,2}(3x_{3,1}+3x_{2,1})+x_{2,3}(5x_{5,0}-5x_{4,0})+x_{3,3}(9x_{3,0}-10x_{4,0}+4x_{5,0})-x_{4,3}(x_{3,0}+2x_{2,0})-x(2x_{2,4}+x_{3,4})",
        ),
        (Label::new(3, 4, 0), "-4x_{4,0}^2+3x_{4,0}x_{5,0}+3x_{3,0}x_{5,0}-x(2x_{3,1}+x_{4,1})"),
    ];
    for (l, text) in printed {
        let p: DeformPolynomial = text.parse().unwrap();
        check(sys.get(l).unwrap().poly.equal_up_to_sign(&p), || format!("{l} after ledger corrections"))?;
    }
    Ok(())
}

fn m0(n: usize) -> LieStructure {
    make_fixture(&Fixture::M0, n).unwrap()
}

fn first_nonzero(c: &AdjointCochain) -> Option<Vec<usize>> {
    increasing_tuples(c.degree(), 1, c.bound())
        .into_iter()
        .find(|t| !c.eval(t).unwrap().value.is_zero())
}

fn ac8() -> Outcome {
    for n in 5..=14usize {
        let base = m0(n);
        for j in 2..n {
            for s in 0..=(n as i64) {
                if 2 * j as i64 + 1 + s > n as i64 {
                    continue;
                }
                let p = psi2(j, s, n).map_err(|e| e.to_string())?;
                let d = d_adjoint(&p, &base).map_err(|e| e.to_string())?;
                check(first_nonzero(&d).is_none(), || format!("d Psi_{{{j},{s}}} != 0 at n={n}"))?;
                for k in 2..n {
                    let v = p.eval(&[k, k + 1]).unwrap().value;
                    let want = if k == j { LieElement::basis(2 * j + 1 + s as usize) } else { LieElement::zero() };
                    check(v == want, || format!("Psi_{{{j},{s}}}(e_{k},e_{}) = {v:?}", k + 1))?;
                }
            }
        }
        if n % 2 == 0 && n >= 6 {
            let d = d_adjoint(&psi_top_for_dimension(n).unwrap(), &base).unwrap();
            check(first_nonzero(&d).is_none(), || format!("top cocycle not closed at n={n}"))?;
        }
        for i in 2..n {
            for j in i + 1..n {
                for s in -1..=(n as i64) {
                    let Ok(p) = psi3(i, j, s, n) else { continue };
                    let d = d_adjoint(&p, &base).unwrap().memoized().unwrap();
                    check(first_nonzero(&d).is_none(), || format!("d Psi_{{{i},{j},{s}}} != 0 at n={n}"))?;
                    for l in 2..n {
                        for k in l + 1..n {
                            let v = p.eval(&[l, k, k + 1]).unwrap().value;
                            let want = if (l, k) == (i, j) {
                                LieElement::basis((i as i64 + 2 * j as i64 + 1 + s) as usize)
                            } else {
                                LieElement::zero()
                            };
                            check(v == want, || format!("Psi_{{{i},{j},{s}}}(e_{l},e_{k},e_{})", k + 1))?;
                        }
                    }
                }
            }
        }
    }
    let mut expected = ExtForm::zero();
    for (c, idx) in [
        (1, [5, 6, 7]),
        (-1, [4, 6, 8]),
        (1, [3, 6, 9]),
        (1, [4, 5, 9]),
        (-1, [2, 6, 10]),
        (-2, [3, 5, 10]),
        (3, [2, 5, 11]),
        (2, [3, 4, 11]),
        (-5, [2, 4, 12]),
        (5, [2, 3, 13]),
    ] {
        expected.add_indices(&idx, int(c));
    }
    check(omega(&[5, 6]).unwrap() == expected, || "omega(e5 e6 e7) expansion".into())
}

fn random_form(rng: &mut ChaCha8Rng) -> ExtForm {
    let mut f = ExtForm::zero();
    for _ in 0..rng.gen_range(1..=4) {
        let degree = rng.gen_range(1..=4);
        let mut idx: Vec<usize> = (0..degree).map(|_| rng.gen_range(2..=16)).collect();
        idx.sort();
        idx.dedup();
        f.add_indices(&idx, ratio(rng.gen_range(-9..=9), rng.gen_range(1..=5)));
    }
    f
}

fn ac9() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let e1 = ExtForm::generator(1);
    for case in 0..500 {
        let xi = random_form(&mut rng);
        if xi.is_zero() {
            continue;
        }
        let up = xi.dminus1().map_err(|e| e.to_string())?;
        check(up.d1().unwrap() == xi, || format!("case {case}: D1 D-1 != id"))?;
        check(xi.d_trivial() == e1.wedge(&xi.d1().unwrap()), || format!("case {case}: d != e1 ^ D1"))?;
        check(e1.wedge(&xi) == up.d_trivial(), || format!("case {case}: e1 ^ xi != d D-1"))?;
    }
    Ok(())
}

fn ac10() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for l in labels_up_to(25) {
        let f = f_poly(l.j, l.q, l.r).map_err(|e| e.to_string())?;
        check(f.is_bihomogeneous(2, l.r), || format!("{l} not bihomogeneous"))?;
        let parts = f.scaling_expansion();
        check(parts.keys().all(|&k| k == (2, l.r)), || format!("{l}: scaling parts {:?}", parts.keys()))?;
        let alpha = ratio(rng.gen_range(1..=5), rng.gen_range(1..=5));
        let beta = ratio(rng.gen_range(-5..=5), rng.gen_range(1..=5));
        let x: Vec<Scalar> = (0..64).map(|_| ratio(rng.gen_range(-5..=5), rng.gen_range(1..=3))).collect();
        let at = |v: DeformVariable| match v {
            DeformVariable::Pair { j, s } => x[(j * 7 + s) % 64].clone(),
            DeformVariable::Top => int(0),
        };
        let scaled = f.evaluate(|v| match v {
            DeformVariable::Pair { s, .. } => &beta * num_traits::pow(alpha.clone(), s) * at(v),
            DeformVariable::Top => int(0),
        });
        let expected = &beta * &beta * num_traits::pow(alpha.clone(), l.r as usize) * f.evaluate(at);
        check(scaled == expected, || format!("{l}: scaling identity fails"))?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let criteria: [(&str, &str, Duration, fn() -> Outcome); 10] = [
        ("AC1", "equation counts for n = 9..18", Duration::from_secs(1), ac1),
        ("AC2", "variable counts for n = 9..40", Duration::from_secs(1), ac2),
        ("AC3", "closed form equals bracket expansion", Duration::from_secs(120), ac3),
        ("AC4", "known solutions on M_Fil(n), n <= 16", Duration::from_secs(30), ac4),
        ("AC5", "three lines on the weight-0 equations", Duration::from_secs(1), ac5),
        ("AC6", "weight-4 system and its solution families", Duration::from_secs(5), ac6),
        ("AC7", "M_Fil(12) labels and polynomials", Duration::from_secs(5), ac7),
        ("AC8", "cocycle suite for n <= 14", Duration::from_secs(60), ac8),
        ("AC9", "D1, D-1 and d identities, 500 cases", Duration::from_secs(10), ac9),
        ("AC10", "bihomogeneity and scaling up to total 25", Duration::from_secs(30), ac10),
    ];
    let mut failed = 0;
    for (id, what, limit, run) in criteria {
        let started = Instant::now();
        let outcome = run();
        let elapsed = started.elapsed();
        let verdict = match (&outcome, elapsed <= limit) {
            (Ok(()), true) => "PASS".to_string(),
            (Ok(()), false) => format!("FAIL: over the {:.0?} bound", limit),
            (Err(e), _) => format!("FAIL: {e}"),
        };
        if !verdict.starts_with("PASS") {
            failed += 1;
        }
        println!("{id:<5} {verdict} [{:.3}s, limit {}s] {what}", elapsed.as_secs_f64(), limit.as_secs());
    }
    println!("acceptance: {} of 10 criteria pass", 10 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
