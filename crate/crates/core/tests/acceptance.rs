//! Acceptance suite: nine criteria, each printed as one PASS/FAIL line.
//! Runs with its own harness so the lines are always shown.

use std::panic::{self, AssertUnwindSafe};
use std::time::{Duration, Instant};

use edr_core::adequate::{adequate_split, pi_adequate_split_zn, series_split, verify_adequate};
use edr_core::checkers::{check_finite_predicate, Predicate};
use edr_core::complete::{combination, complete_row, sr1_quotient_lift, sr2_reduce};
use edr_core::reduce::{
    determinantal_divisors, diagonal_reduce, oracle_diagonal, verify_reduction,
};
use edr_core::{Elem, Matrix, Ring};
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn within(start: Instant, limit: Duration, detail: String) -> Outcome {
    let took = start.elapsed();
    if took < limit {
        Ok(format!(
            "{detail} ({:.2} s, limit {} s)",
            took.as_secs_f64(),
            limit.as_secs()
        ))
    } else {
        Err(format!(
            "{detail} but took {:.2} s, limit {} s",
            took.as_secs_f64(),
            limit.as_secs()
        ))
    }
}

fn random_int_matrix(rng: &mut ChaCha8Rng, max_dim: usize, bound: i64) -> Matrix {
    let (m, n) = (rng.gen_range(1..=max_dim), rng.gen_range(1..=max_dim));
    let ring = Ring::integers();
    let rows = (0..m)
        .map(|_| {
            (0..n)
                .map(|_| ring.int(rng.gen_range(-bound..=bound)))
                .collect()
        })
        .collect();
    Matrix::from_rows(ring, rows).unwrap()
}

fn random_elem(rng: &mut ChaCha8Rng, ring: &Ring) -> Elem {
    match ring.modulus() {
        Some(n) => {
            let n: i64 = n.try_into().unwrap();
            ring.int(rng.gen_range(0..n))
        }
        None => match ring.characteristic_prime() {
            Some(p) => {
                let p: i64 = p.try_into().unwrap();
                let len = rng.gen_range(0..=4);
                ring.poly((0..len).map(|_| BigInt::from(rng.gen_range(0..p))))
                    .unwrap()
            }
            None => ring.int(rng.gen_range(-50..=50)),
        },
    }
}

fn random_matrix(rng: &mut ChaCha8Rng, ring: &Ring, max_dim: usize) -> Matrix {
    let (m, n) = (rng.gen_range(1..=max_dim), rng.gen_range(1..=max_dim));
    let rows = (0..m)
        .map(|_| (0..n).map(|_| random_elem(rng, ring)).collect())
        .collect();
    Matrix::from_rows(ring.clone(), rows).unwrap()
}

fn smith_oracle() -> Outcome {
    let start = Instant::now();
    let mut rng = rng(1);
    let mut mismatches = 0;
    for _ in 0..200 {
        let a = random_int_matrix(&mut rng, 5, 50);
        let cert = diagonal_reduce(&a).map_err(|e| e.to_string())?;
        let oracle = oracle_diagonal(&determinantal_divisors(&a).map_err(|e| e.to_string())?);
        if cert.d.diagonal() != oracle {
            mismatches += 1;
        }
    }
    if mismatches > 0 {
        return Err(format!(
            "{mismatches} of 200 diagonals differ from the determinantal-divisor oracle"
        ));
    }
    within(
        start,
        Duration::from_secs(10),
        "200 integer matrices match the oracle".into(),
    )
}

fn certificate_soundness() -> Outcome {
    let rings = [
        (Ring::integers(), 5),
        (Ring::modular(12).unwrap(), 5),
        (Ring::modular(16).unwrap(), 5),
        (Ring::modular(36).unwrap(), 5),
        (Ring::poly_over_prime_field(2).unwrap(), 4),
        (Ring::poly_over_prime_field(5).unwrap(), 4),
    ];
    let has = |failures: &[String], clause: &str| failures.iter().any(|f| f == clause);
    let mut swaps = 0;
    for (seed, (ring, dim)) in rings.iter().enumerate() {
        let mut rng = rng(100 + seed as u64);
        let nonunit = match ring.characteristic_prime() {
            Some(_) => ring.poly([0, 1].map(BigInt::from)).unwrap(),
            None => ring.int(2),
        };
        for i in 0..200 {
            let a = random_matrix(&mut rng, ring, *dim);
            let cert = diagonal_reduce(&a).map_err(|e| format!("{ring}: {e}"))?;
            let rep = verify_reduction(&a, &cert);
            if !rep.holds {
                return Err(format!("{ring} matrix {i}: {:?}", rep.failures));
            }

            let mut bad = cert.clone();
            let tampered = bad.d.get(0, 0) + &ring.one();
            bad.d.set(0, 0, tampered);
            if !has(&verify_reduction(&a, &bad).failures, "PAQ=D") {
                return Err(format!("{ring} matrix {i}: entry tamper not caught"));
            }

            let mut bad = cert.clone();
            bad.p.scale_row(0, &nonunit);
            if !has(&verify_reduction(&a, &bad).failures, "det(P) unit") {
                return Err(format!("{ring} matrix {i}: P scaling not caught"));
            }

            let diag = cert.d.diagonal();
            if let Some(k) =
                (0..diag.len().saturating_sub(1)).find(|&k| !diag[k + 1].divides(&diag[k]))
            {
                let swap = [[ring.zero(), ring.one()], [ring.one(), ring.zero()]];
                let mut bad = cert.clone();
                bad.p.apply_rows(k, k + 1, &swap);
                bad.d.apply_rows(k, k + 1, &swap);
                bad.d.apply_cols(k, k + 1, &swap);
                bad.q.apply_cols(k, k + 1, &swap);
                bad.det_p = -&bad.det_p;
                bad.det_q = -&bad.det_q;
                let failures = verify_reduction(&a, &bad).failures;
                if failures != ["divisibility chain"] {
                    return Err(format!(
                        "{ring} matrix {i}: chain swap reported {failures:?}"
                    ));
                }
                swaps += 1;
            }
        }
    }
    if swaps == 0 {
        return Err("no matrix admitted a chain-swap tamper".into());
    }
    Ok(format!(
        "1200 certificates verified; entry, P-scaling and {swaps} chain-swap tampers rejected"
    ))
}

fn random_row(rng: &mut ChaCha8Rng, ring: &Ring, bound: i64) -> Vec<Elem> {
    let len = rng.gen_range(2..=5);
    (0..len)
        .map(|_| match ring.modulus() {
            Some(_) => random_elem(rng, ring),
            None => ring.int(rng.gen_range(-bound..=bound)),
        })
        .collect()
}

fn check_completion(row: &[Elem]) -> Result<(), String> {
    let (d, _) = combination(row).map_err(|e| e.to_string())?;
    let cert = complete_row(row, &d).map_err(|e| format!("{row:?}: {e}"))?;
    let det = cert.matrix.det().map_err(|e| e.to_string())?;
    if cert.matrix.row(0) != row || det != d {
        return Err(format!(
            "completion of {row:?} has det {det:?}, expected {d:?}"
        ));
    }
    Ok(())
}

fn strong_completability() -> Outcome {
    let start = Instant::now();
    let mut rng = rng(3);
    let mut count = 0;
    let fixed = [
        Ring::integers(),
        Ring::modular(6).unwrap(),
        Ring::modular(12).unwrap(),
        Ring::modular(30).unwrap(),
    ];
    for ring in &fixed {
        for _ in 0..200 {
            check_completion(&random_row(&mut rng, ring, 30))?;
            count += 1;
        }
    }
    for n in 2..=60 {
        let ring = Ring::modular(n).unwrap();
        for _ in 0..20 {
            check_completion(&random_row(&mut rng, &ring, 0))?;
            count += 1;
        }
    }
    within(
        start,
        Duration::from_secs(5),
        format!("{count} rows completed with exact determinant, Z/n for all n <= 60"),
    )
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Every factorization `a = r s` satisfying the definition directly.
fn valid_splits(a: u64, b: u64) -> Vec<(u64, u64)> {
    (1..=a)
        .filter(|r| a.is_multiple_of(*r))
        .map(|r| (r, a / r))
        .filter(|&(r, s)| gcd(r, b) == 1 && (2..=s).filter(|d| s % d == 0).all(|d| gcd(d, b) != 1))
        .collect()
}

fn adequacy_oracle() -> Outcome {
    let start = Instant::now();
    let z = Ring::integers();
    for a in 1..=500u64 {
        for b in 1..=100u64 {
            let split =
                adequate_split(&z.int(a as i64), &z.int(b as i64)).map_err(|e| e.to_string())?;
            let r: u64 = split
                .r
                .as_integer()
                .unwrap()
                .try_into()
                .map_err(|_| "negative r".to_string())?;
            let s: u64 = split
                .s
                .as_integer()
                .unwrap()
                .try_into()
                .map_err(|_| "negative s".to_string())?;
            if !valid_splits(a, b).contains(&(r, s)) {
                return Err(format!(
                    "split ({r}, {s}) of {a} w.r.t. {b} rejected by the oracle"
                ));
            }
        }
    }
    within(
        start,
        Duration::from_secs(30),
        "all 50000 splits accepted by the factorization oracle".into(),
    )
}

fn pi_adequate_construction() -> Outcome {
    let start = Instant::now();
    let mut pairs = 0;
    for n in [8, 12, 36, 100] {
        let ring = Ring::modular(n).unwrap();
        let elems = ring.elements().unwrap();
        for a in &elems {
            for b in &elems {
                let split = pi_adequate_split_zn(a, b).map_err(|e| e.to_string())?;
                let rep = verify_adequate(a, b, &split.r, &split.s, split.power)
                    .map_err(|e| e.to_string())?;
                if !rep.holds {
                    return Err(format!("Z/{n}, a={a:?}, b={b:?}: {:?}", rep.failures));
                }
                pairs += 1;
            }
        }
    }
    within(
        start,
        Duration::from_secs(60),
        format!("{pairs} pairs over Z/8, Z/12, Z/36, Z/100 verified"),
    )
}

fn unimodular(values: &[Elem]) -> bool {
    combination(values).unwrap().0.is_unit()
}

fn lift_contracts() -> Outcome {
    let mut rng = rng(6);
    let gf5 = Ring::poly_over_prime_field(5).unwrap();
    let mut checked = 0;
    for kind in 0..3 {
        let (mut sr1, mut sr2) = (0, 0);
        while sr1 < 500 || sr2 < 500 {
            let ring = match kind {
                0 => Ring::integers(),
                1 => Ring::modular(rng.gen_range(2..=100)).unwrap(),
                _ => gf5.clone(),
            };
            let draw = |rng: &mut ChaCha8Rng| match kind {
                0 => ring.int(rng.gen_range(-100..=100)),
                _ => random_elem(rng, &ring),
            };
            let (a, b, c) = (draw(&mut rng), draw(&mut rng), draw(&mut rng));
            if !unimodular(&[a.clone(), b.clone(), c.clone()]) {
                continue;
            }
            if sr2 < 500 {
                let (y1, y2) = sr2_reduce(&a, &b, &c).map_err(|e| e.to_string())?;
                if !unimodular(&[&a + &(&c * &y1), &b + &(&c * &y2)]) {
                    return Err(format!("sr2 postcondition fails on {a:?}, {b:?}, {c:?}"));
                }
                sr2 += 1;
            }
            if sr1 < 500 && !a.in_jacobson() {
                let y = sr1_quotient_lift(&a, &b, &c).map_err(|e| e.to_string())?;
                if !unimodular(&[a.clone(), &b + &(&c * &y)]) {
                    return Err(format!("sr1 postcondition fails on {a:?}, {b:?}, {c:?}"));
                }
                sr1 += 1;
            }
        }
        checked += sr1 + sr2;
    }
    Ok(format!(
        "{checked} lifts over Z, Z/n (n <= 100) and GF(5)[x] satisfy their gcd contracts"
    ))
}

fn predicate_suite() -> Outcome {
    let start = Instant::now();
    for n in 2..=60 {
        let ring = Ring::modular(n).unwrap();
        for pred in Predicate::ALL {
            let rep = check_finite_predicate(&ring, pred).map_err(|e| e.to_string())?;
            if !rep.holds {
                return Err(format!("{pred} fails on Z/{n} at {:?}", rep.witness));
            }
        }
    }
    within(
        start,
        Duration::from_secs(60),
        "all four predicates hold on Z/n, 2 <= n <= 60 (Z/1 is not a valid descriptor)".into(),
    )
}

fn random_series(rng: &mut ChaCha8Rng, ring: &Ring, k: usize, nonzero: bool) -> Elem {
    let mut constant = rng.gen_range(-1000..=1000i64);
    while nonzero && constant == 0 {
        constant = rng.gen_range(-1000..=1000);
    }
    let tail = (1..k)
        .map(|_| {
            BigRational::new(
                rng.gen_range(-100..=100i64).into(),
                rng.gen_range(1..=100i64).into(),
            )
        })
        .collect();
    ring.series(constant.into(), tail).unwrap()
}

fn truncated_series() -> Outcome {
    let mut rng = rng(8);
    let ring = Ring::truncated_series(8).unwrap();
    for i in 0..50 {
        let f = random_series(&mut rng, &ring, 8, true);
        let g = random_series(&mut rng, &ring, 8, false);
        let (s, t) = series_split(&f, &g).map_err(|e| format!("instance {i}: {e}"))?;
        if &s * &t != f {
            return Err(format!("instance {i}: s*t differs from f modulo x^8"));
        }
    }
    Ok("50 series factor exactly modulo x^8".into())
}

fn power_property() -> Outcome {
    let mut rng = rng(9);
    let z = Ring::integers();
    for _ in 0..100 {
        let (a, b) = (
            z.int(rng.gen_range(1..=1000)),
            z.int(rng.gen_range(1..=100)),
        );
        let split = adequate_split(&a, &b).map_err(|e| e.to_string())?;
        for n in [2, 3] {
            let rep = verify_adequate(&a, &b, &split.r.pow(n), &split.s.pow(n), n)
                .map_err(|e| e.to_string())?;
            if !rep.holds {
                return Err(format!("({a:?}, {b:?}) power {n}: {:?}", rep.failures));
            }
        }
    }
    Ok("squares and cubes of 100 splits stay adequate".into())
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("smith oracle agreement", smith_oracle),
        ("certificate soundness", certificate_soundness),
        ("strong completability", strong_completability),
        ("adequacy oracle", adequacy_oracle),
        (
            "pi-adequate construction over Z/n",
            pi_adequate_construction,
        ),
        ("lift contracts", lift_contracts),
        ("finite-ring predicates", predicate_suite),
        ("truncated series split", truncated_series),
        ("powers of adequate splits", power_property),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let outcome = panic::catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        match outcome {
            Ok(detail) => println!("criterion {} PASS {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {} FAIL {name}: {detail}", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
