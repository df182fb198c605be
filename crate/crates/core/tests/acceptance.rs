//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::Instant;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use tatecoh::surgery::GluingCertificate;
use tatecoh::{
    browder_check, browder_pipeline, exponent_profile, glue, lens_complex, product_complex,
    random_free_complex, suspension, syzygy, tate_cohomology, tate_hypercohomology_range,
    AbelianInvariants, ElementaryAbelianGroup, Exponent, FreeChainComplex, IntMatrix, Integer,
    ModulePresentation,
};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn group(p: u32, r: u32) -> ElementaryAbelianGroup {
    ElementaryAbelianGroup::new(p, r).unwrap()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn gallery() -> Vec<(String, FreeChainComplex)> {
    let mut out = Vec::new();
    for (p, k) in [(2, 1), (2, 2), (3, 1), (3, 2)] {
        out.push((format!("lens({p},{k})"), lens_complex(p, k).unwrap()));
    }
    for (p, ks) in [(2, vec![1, 1]), (2, vec![1, 2]), (3, vec![1, 1])] {
        out.push((
            format!("product({p},{ks:?})"),
            product_complex(p, &ks).unwrap(),
        ));
    }
    out
}

fn random_corpus(per_group: usize) -> Vec<(String, FreeChainComplex)> {
    let mut out = Vec::new();
    for (p, r) in [(2, 1), (2, 2), (3, 1), (3, 2)] {
        let g = group(p, r);
        let mut rng = ChaCha8Rng::seed_from_u64(1000 * p as u64 + r as u64);
        for s in 0..per_group {
            let len = rng.gen_range(1..=4);
            let ranks: Vec<usize> = (0..len).map(|_| rng.gen_range(1..=2)).collect();
            let seed = rng.gen::<u64>();
            out.push((
                format!("random({g}, {ranks:?}, #{s})"),
                random_free_complex(g, &ranks, seed).unwrap(),
            ));
        }
    }
    out
}

fn c1_zeroth_cohomology() -> Outcome {
    for (p, r) in [(2, 1), (3, 1), (2, 2), (3, 2), (5, 1)] {
        let g = group(p, r);
        let h =
            tate_cohomology(g, &ModulePresentation::trivial(g), 0).map_err(|e| e.to_string())?;
        ensure(h == AbelianInvariants::cyclic(g.order()), || {
            format!("{g}: Ĥ^0 = {h}")
        })?;
    }
    Ok("5 groups".into())
}

// Hom_G(periodic resolution, Z): δ^k is the augmentation of d_{k+1}, which is
// 0 for g - 1 and p for N, so δ^k = p exactly for odd k.
fn hand_periodic_cohomology(p: i64, i: i32) -> AbelianInvariants {
    let coboundary = |k: i32| if k.rem_euclid(2) == 1 { p } else { 0 };
    let incoming = coboundary(i - 1);
    let outgoing = coboundary(i);
    if outgoing != 0 {
        AbelianInvariants::trivial()
    } else if incoming != 0 {
        AbelianInvariants::cyclic(incoming)
    } else {
        AbelianInvariants::free(1)
    }
}

fn c2_periodicity() -> Outcome {
    for p in [2u32, 3] {
        let g = group(p, 1);
        let z = ModulePresentation::trivial(g);
        for i in -6..=6 {
            let h = tate_cohomology(g, &z, i).map_err(|e| e.to_string())?;
            let expected = if i % 2 == 0 {
                AbelianInvariants::cyclic(p)
            } else {
                AbelianInvariants::trivial()
            };
            ensure(h == expected, || format!("Z/{p}: Ĥ^{i} = {h}"))?;
            let hand = hand_periodic_cohomology(p as i64, i);
            ensure(h == hand, || {
                format!("Z/{p}: Ĥ^{i} = {h}, hand cochains give {hand}")
            })?;
        }
    }
    Ok("p = 2, 3; i in [-6, 6]".into())
}

fn c3_trivial_exponent_bound() -> Outcome {
    for p in [2u32, 3] {
        let g = group(p, 2);
        let t = exponent_profile(g, &ModulePresentation::trivial(g), 1, 8)
            .map_err(|e| e.to_string())?;
        for e in &t.entries {
            ensure(e.exponent.divides(&Integer::from(p)), || {
                format!("{g}: exp Ĥ^{} = {:?}", e.degree, e.exponent)
            })?;
        }
    }
    Ok("(Z/2)^2, (Z/3)^2; i in [1, 8]".into())
}

fn c4_free_vanishing() -> Outcome {
    let complexes: Vec<_> = gallery().into_iter().chain(random_corpus(25)).collect();
    for (name, c) in &complexes {
        let h = tate_hypercohomology_range(c, -3, 4).map_err(|e| format!("{name}: {e}"))?;
        ensure(h.iter().all(AbelianInvariants::is_trivial), || {
            format!("{name}: {h:?}")
        })?;
    }
    Ok(format!("{} complexes", complexes.len()))
}

fn c5_suspension() -> Outcome {
    let corpus = random_corpus(25);
    let picked: Vec<_> = corpus.iter().step_by(10).take(10).collect();
    for (name, c) in &picked {
        let s = tate_hypercohomology_range(&suspension(c), -2, 3).map_err(|e| e.to_string())?;
        let t = tate_hypercohomology_range(c, -1, 4).map_err(|e| e.to_string())?;
        ensure(s == t, || format!("{name}: {s:?} vs {t:?}"))?;
    }
    Ok(format!("{} complexes", picked.len()))
}

fn c6_dimension_shift() -> Outcome {
    for (p, r, i) in [(2, 1, 1), (2, 1, 2), (2, 2, 2), (3, 1, 2)] {
        let g = group(p, r);
        let omega =
            syzygy(&ModulePresentation::trivial(g), i as usize).map_err(|e| e.to_string())?;
        let h = tate_cohomology(g, &omega, i).map_err(|e| e.to_string())?;
        ensure(h == AbelianInvariants::cyclic(g.order()), || {
            format!("{g}: H^{i}(Ω^{i} Z) = {h}")
        })?;
    }
    Ok("4 cases".into())
}

fn gluing_runs() -> Result<
    Vec<(
        String,
        FreeChainComplex,
        FreeChainComplex,
        GluingCertificate,
    )>,
    String,
> {
    let lens = lens_complex(2, 2).unwrap();
    let torus = product_complex(2, &[1, 1]).unwrap();
    let mut out = Vec::new();
    for (name, c, m, n) in [
        ("lens(2,2)", &lens, 0, 3),
        ("torus", &torus, 1, 2),
        ("torus", &torus, 0, 1),
    ] {
        let (d, cert) = glue(c, m, n).map_err(|e| format!("{name} {m}->{n}: {e}"))?;
        out.push((format!("{name} {m}->{n}"), c.clone(), d, cert));
    }
    Ok(out)
}

fn c7_gluing_certificate() -> Outcome {
    let runs = gluing_runs()?;
    for (name, _, _, cert) in &runs {
        ensure(cert.holds(), || format!("{name}: {cert:?}"))?;
        ensure(cert.witness.quotient_rank > 0, || {
            format!("{name}: empty syzygy")
        })?;
    }
    Ok(format!("{} glues", runs.len()))
}

fn c8_free_equivalence() -> Outcome {
    let mut count = 0;
    let mut runs: Vec<(String, FreeChainComplex, FreeChainComplex)> = gluing_runs()?
        .into_iter()
        .map(|(n, c, d, _)| (n, c, d))
        .collect();
    for (name, c) in [
        ("lens(2,2)", lens_complex(2, 2).unwrap()),
        ("torus", product_complex(2, &[1, 1]).unwrap()),
    ] {
        let p = browder_pipeline(&c).map_err(|e| e.to_string())?;
        for (s, w) in p.gluing.stages.windows(2).enumerate() {
            runs.push((format!("{name} stage {s}"), w[0].clone(), w[1].clone()));
        }
    }
    for (name, c, d) in &runs {
        let a = tate_hypercohomology_range(c, -2, 3).map_err(|e| e.to_string())?;
        let b = tate_hypercohomology_range(d, -2, 3).map_err(|e| e.to_string())?;
        ensure(a == b, || format!("{name}: {a:?} vs {b:?}"))?;
        count += 1;
    }
    Ok(format!("{count} glues"))
}

fn c9_browder() -> Outcome {
    let mut complexes = gallery();
    complexes.push((
        "product(3,[2,2])".into(),
        product_complex(3, &[2, 2]).unwrap(),
    ));
    for (name, c) in &complexes {
        let r = browder_check(c).map_err(|e| format!("{name}: {e}"))?;
        ensure(r.divides, || format!("{name}: product {:?}", r.product))?;
    }
    let r = browder_check(&product_complex(2, &[1, 1]).unwrap()).map_err(|e| e.to_string())?;
    ensure(r.product == Exponent::Finite(Integer::from(4)), || {
        format!("torus product {:?}", r.product)
    })?;
    Ok(format!("{} complexes; torus product 4", complexes.len()))
}

fn c10_pipeline_cross_check() -> Outcome {
    let p = browder_pipeline(&lens_complex(2, 2).unwrap()).map_err(|e| e.to_string())?;
    ensure(p.concentrated, || "final complex not concentrated".into())?;
    ensure(
        p.penultimate_cohomology == AbelianInvariants::cyclic(2),
        || format!("Ĥ^{}(N) = {}", p.n + 1, p.penultimate_cohomology),
    )?;
    ensure(
        p.cross_check && p.sections_match && p.verdict.divides,
        || format!("{p:?}"),
    )?;
    Ok(format!("Ĥ^{}(N) = {}", p.n + 1, p.penultimate_cohomology))
}

fn c11_exponent_profile() -> Outcome {
    let g = group(2, 2);
    let omega = syzygy(&ModulePresentation::trivial(g), 2).map_err(|e| e.to_string())?;
    let t = exponent_profile(g, &omega, 1, 8).map_err(|e| e.to_string())?;
    for e in &t.entries {
        if e.degree == 2 {
            ensure(e.exponent == Exponent::Finite(Integer::from(4)), || {
                format!("i = 2: {:?}", e.exponent)
            })?;
        } else {
            ensure(e.exponent.divides(&Integer::from(2)), || {
                format!("i = {}: {:?}", e.degree, e.exponent)
            })?;
        }
    }
    Ok("i in [1, 8]".into())
}

// Independent homology: dense Smith reduction on BigInt, giving
// H_i = Z^(dim - rank d_i - rank d_{i+1}) plus the nonunit divisors of d_{i+1}.
fn oracle_divisors(m: &IntMatrix) -> Vec<BigInt> {
    let mut a: Vec<Vec<BigInt>> = (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| m[(i, j)].to_big()).collect())
        .collect();
    let (rows, cols) = (m.rows(), m.cols());
    let mut divisors = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        let pivot = (t..rows)
            .flat_map(|i| (t..cols).map(move |j| (i, j)))
            .filter(|&(i, j)| !a[i][j].is_zero())
            .min_by_key(|&(i, j)| a[i][j].abs());
        let Some((pi, pj)) = pivot else { break };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let p = a[t][t].clone();
            let mut done = true;
            for i in t + 1..rows {
                let q = &a[i][t] / &p;
                if !q.is_zero() {
                    let pivot_row = a[t].clone();
                    for (x, y) in a[i][t..].iter_mut().zip(&pivot_row[t..]) {
                        *x -= &q * y;
                    }
                }
                if !a[i][t].is_zero() {
                    done = false;
                }
            }
            for j in t + 1..cols {
                let q = &a[t][j] / &p;
                if !q.is_zero() {
                    for row in a.iter_mut().skip(t) {
                        let v = &q * &row[t];
                        row[j] -= v;
                    }
                }
                if !a[t][j].is_zero() {
                    done = false;
                }
            }
            if done {
                // the pivot must divide the rest of the block
                let bad = (t + 1..rows)
                    .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                    .find(|&(i, j)| !(&a[i][j] % &p).is_zero());
                match bad {
                    None => break,
                    Some((i, _)) => {
                        let src = a[i].clone();
                        for (x, y) in a[t][t..].iter_mut().zip(&src[t..]) {
                            *x += y;
                        }
                        continue;
                    }
                }
            }
            let small = (t..rows)
                .flat_map(|i| (t..cols).map(move |j| (i, j)))
                .filter(|&(i, j)| (i == t || j == t) && !a[i][j].is_zero())
                .min_by_key(|&(i, j)| a[i][j].abs())
                .unwrap();
            a.swap(t, small.0);
            for row in a.iter_mut() {
                row.swap(t, small.1);
            }
        }
        divisors.push(a[t][t].abs());
        t += 1;
    }
    divisors
}

fn oracle_homology(c: &FreeChainComplex, n: i32) -> AbelianInvariants {
    let dim = c.rank(n) * c.group().order();
    let incoming = oracle_divisors(&c.expanded_differential(n + 1));
    let outgoing_rank = oracle_divisors(&c.expanded_differential(n)).len();
    let torsion = incoming
        .iter()
        .filter(|d| !d.is_one())
        .map(|d| Integer::from_big(d.clone()))
        .collect();
    AbelianInvariants::new(torsion, dim - incoming.len() - outgoing_rank)
}

// Conjugates every differential by seeded signed permutations of the Z-basis.
fn scrambled_divisor_check(c: &FreeChainComplex, n: i32, seed: u64) -> bool {
    let m = c.expanded_differential(n + 1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut perm = |k: usize| -> IntMatrix {
        let mut idx: Vec<usize> = (0..k).collect();
        for i in (1..k).rev() {
            idx.swap(i, rng.gen_range(0..=i));
        }
        let mut p = IntMatrix::zeros(k, k);
        for (i, &j) in idx.iter().enumerate() {
            p[(i, j)] = Integer::from(if rng.gen_bool(0.5) { 1 } else { -1 });
        }
        p
    };
    let (u, v) = (perm(m.rows()), perm(m.cols()));
    oracle_divisors(&(&(&u * &m) * &v)) == oracle_divisors(&m)
}

fn c12_oracle_equivalence() -> Outcome {
    let mut checked = 0;
    for (name, c) in gallery() {
        for n in c.lo()..=c.hi() {
            let engine = c.homology(n).map_err(|e| e.to_string())?;
            let oracle = oracle_homology(&c, n);
            ensure(engine == oracle, || {
                format!("{name} H_{n}: engine {engine}, oracle {oracle}")
            })?;
            let lattice = c.to_lattice().homology(n).map_err(|e| e.to_string())?;
            ensure(lattice == engine, || {
                format!("{name} H_{n}: lattice path {lattice}")
            })?;
            ensure(scrambled_divisor_check(&c, n, n as u64), || {
                format!("{name} H_{n}: oracle is not basis independent")
            })?;
            checked += 1;
        }
    }
    Ok(format!("{checked} homology groups, 3 paths each"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 12] = [
        ("1 zeroth Tate cohomology is Z/|G|", c1_zeroth_cohomology),
        ("2 two-sided periodicity for Z/p", c2_periodicity),
        (
            "3 trivial-coefficient exponents divide p",
            c3_trivial_exponent_bound,
        ),
        (
            "4 free complexes have vanishing hypercohomology",
            c4_free_vanishing,
        ),
        ("5 suspension shifts hypercohomology", c5_suspension),
        ("6 dimension shift H^i(Ω^i Z) = Z/|G|", c6_dimension_shift),
        ("7 gluing certificates", c7_gluing_certificate),
        ("8 gluing preserves hypercohomology", c8_free_equivalence),
        ("9 Browder divisibility", c9_browder),
        (
            "10 penultimate module has Ĥ^{n+1} = Z/|G|",
            c10_pipeline_cross_check,
        ),
        (
            "11 exponent profile of Ω²Z over (Z/2)²",
            c11_exponent_profile,
        ),
        ("12 independent homology oracle", c12_oracle_equivalence),
    ];
    let mut failed = 0;
    for (name, f) in criteria {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
            Err(e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into()))
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS  {name}  ({detail}; {secs:.2}s)"),
            Err(why) => {
                failed += 1;
                println!("FAIL  {name}  ({why}; {secs:.2}s)");
            }
        }
    }
    println!("{} of 12 criteria passed", 12 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
