//! One line per acceptance criterion. Exits non-zero on any failure other
//! than the two listed in `KNOWN_MISPRINTS`, each of which is re-proved here.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use odosym::classify2d::{classify, is_member_in, Classification, NormalizerClass};
use odosym::golden::{golden_bases, printed_finite_centralizer, unimodular_box};
use odosym::intlat::fundamental_domain;
use odosym::odometer::NcOracle;
use odosym::subshift_norm::{
    build_local_rule, composition_check, fiber_points, maps_fixed_points, nl_membership, tau_equivariance,
    FiberQuery,
};
use odosym::substitution::{cube, half_hex_digits, recognizability_check, Patch, Substitution};
use odosym::{IntMatrix, IntVector};

const SEED: u64 = 0x0d0_5e7;
const LIMIT_1: Duration = Duration::from_secs(1);
const LIMIT_2: Duration = Duration::from_secs(30);
const LIMIT_3: Duration = Duration::from_secs(10);
const LIMIT_4: Duration = Duration::from_secs(20);
const LIMIT_5: Duration = Duration::from_secs(10);
const LIMIT_6: Duration = Duration::from_secs(5);
const LIMIT_7: Duration = Duration::from_secs(5);
const LIMIT_8: Duration = Duration::from_secs(10);

/// Sub-rows of criterion 1 whose expected values are wrong as listed.
const KNOWN_MISPRINTS: [&str; 2] = ["2,-1;1,3 centralizer", "3,1;0,5 order two"];

fn m(r: [[i64; 2]; 2]) -> IntMatrix {
    IntMatrix::from(r)
}

struct Line {
    ok: bool,
    detail: String,
}

fn line(ok: bool, detail: impl Into<String>) -> Line {
    Line { ok, detail: detail.into() }
}

fn commutes(a: &IntMatrix, b: &IntMatrix) -> bool {
    &(a * b) == &(b * a)
}

/// Unimodular matrices commuting with `l`, entries in `[-r, r]`.
fn brute_centralizer(l: &IntMatrix, r: i64) -> BTreeSet<IntMatrix> {
    unimodular_box(r).into_iter().filter(|x| commutes(x, l)).collect()
}

fn criterion_1(misprints: &mut Vec<String>) -> Line {
    let mut failed = Vec::new();
    let mut check = |name: &str, ok: bool| {
        if !ok {
            failed.push(name.to_string());
        }
    };

    let c = classify(&m([[2, -1], [1, 5]])).unwrap();
    let u = m([[2, 1], [-1, -1]]);
    check(
        "2,-1;1,5 centralizer",
        matches!(c.class, NormalizerClass::Centralizer { .. }) && !c.finite && is_member_in(&c, &u).unwrap().member,
    );

    let l = m([[2, -1], [1, 3]]);
    let c = classify(&l).unwrap();
    let got: BTreeSet<IntMatrix> = c.generators.iter().cloned().collect();
    let listed: BTreeSet<IntMatrix> = printed_finite_centralizer().into_iter().collect();
    check("2,-1;1,3 centralizer", c.finite && got == listed);
    // The computed set is the true centralizer, and the listed set holds a
    // matrix that does not commute with L.
    let misprint_1 = got == brute_centralizer(&l, 6) && listed.iter().any(|x| !commutes(x, &l));

    let c = classify(&m([[6, 1], [0, 2]])).unwrap();
    let conj_ok = matches!(&c.class, NormalizerClass::VirtuallyZ(v) if v.conjugator == m([[1, 0], [4, 1]]));
    check("6,1;0,2 virtually Z", conj_ok);

    let l = m([[3, 1], [0, 5]]);
    let c = classify(&l).unwrap();
    check("3,1;0,5 order two", c.class.label() == "order_two");
    // Four unimodular matrices commute with L, so the group is not Z/2Z.
    let misprint_2 = brute_centralizer(&l, 6).len() == 4 && c.class.label() == "klein_four";

    check("2,1;0,3 klein four", classify(&m([[2, 1], [0, 3]])).unwrap().class.label() == "klein_four");
    for l in [m([[2, 0], [0, 2]]), m([[3, 3], [0, 3]])] {
        check(&format!("{l} full GL2"), classify(&l).unwrap().class.label() == "full_gl2");
    }

    let proven = [misprint_1, misprint_2];
    for (name, ok) in KNOWN_MISPRINTS.iter().zip(proven) {
        if failed.iter().any(|f| f == name) && ok {
            misprints.push(name.to_string());
        }
    }
    line(failed.is_empty(), if failed.is_empty() { "all rows match".into() } else { format!("rows differ: {failed:?}") })
}

fn criterion_2() -> Line {
    let candidates = unimodular_box(3);
    let mut disagreements = Vec::new();
    for l in golden_bases() {
        let c = classify(&l).unwrap();
        let oracle = NcOracle::new(&l, 5).unwrap();
        for x in &candidates {
            let closed = is_member_in(&c, x).unwrap().member;
            let nc = oracle.bounded_check(x, 5).unwrap().passes();
            if closed != nc {
                disagreements.push(format!("L={l} M={x}"));
            }
        }
    }
    let n = candidates.len() * golden_bases().len();
    line(disagreements.is_empty(), format!("{n} pairs, disagreements {disagreements:?}"))
}

fn all_matrices(r: i64) -> Vec<IntMatrix> {
    let mut out = Vec::new();
    for a in -r..=r {
        for b in -r..=r {
            for c in -r..=r {
                for d in -r..=r {
                    out.push(m([[a, b], [c, d]]));
                }
            }
        }
    }
    out
}

fn criterion_3(rng: &mut ChaCha8Rng) -> Line {
    let everything = all_matrices(3);
    let mut bad = Vec::new();
    let mut pools = Vec::new();
    for l in golden_bases() {
        let oracle = NcOracle::new(&l, 4).unwrap();
        let passes = |x: &IntMatrix| oracle.bounded_check(x, 4).unwrap().passes();
        let pool: Vec<&IntMatrix> = everything.iter().filter(|x| passes(x)).collect();
        pools.push(pool.len());
        for _ in 0..200 {
            let (a, b) = (pool.choose(rng).unwrap(), pool.choose(rng).unwrap());
            for (op, x) in [("+", *a + *b), ("*", *a * *b)] {
                if !passes(&x) {
                    bad.push(format!("L={l} {a} {op} {b}"));
                }
            }
        }
    }
    line(bad.is_empty(), format!("pool sizes {pools:?}, failures {bad:?}"))
}

fn half_hex() -> Substitution {
    Substitution::digit(&m([[2, 0], [0, 2]]), &half_hex_digits()).unwrap()
}

fn criterion_4(rng: &mut ChaCha8Rng) -> Line {
    let mut s = half_hex();
    let pool = unimodular_box(3);
    let mut bad = Vec::new();
    for _ in 0..50 {
        let a = pool.choose(rng).unwrap();
        let v = nl_membership(s.expansion(), a, s.digits(), 6).unwrap();
        if !matches!(v.accepted(), Some(c) if c.k == 0 && c.n0 == 0) {
            bad.push(format!("{a} not accepted with k = n0 = 0"));
        }
    }
    let small = unimodular_box(2);
    let mut compared = 0;
    for _ in 0..20 {
        let (a, b) = (small.choose(rng).unwrap(), small.choose(rng).unwrap());
        let r = composition_check(&mut s, a, b, &cube(2, -6, 6), 6).unwrap();
        compared += r.compared;
        if !r.holds() {
            bad.push(format!("composition fails for {a}, {b}"));
        }
    }
    line(bad.is_empty(), format!("50 memberships, 20 compositions over {compared} cells, failures {bad:?}"))
}

fn criterion_5() -> Line {
    let mut notes = Vec::new();
    let mut ok = true;
    let mut hh = half_hex();
    let l24 = m([[2, 0], [0, 4]]);
    let mut d24 = Substitution::digit(&l24, fundamental_domain(&l24).unwrap().elements()).unwrap();
    let counts = (hh.fixed_point_seeds().len(), d24.fixed_point_seeds().len());
    ok &= counts == (3, 7);
    notes.push(format!("fixed points {counts:?}"));

    for s in [&mut hh, &mut d24] {
        let f3 = s.support(3).unwrap().to_vec();
        let f6 = s.support(6).unwrap().to_vec();
        let origin = IntVector::zeros(2);
        let seeds = s.fixed_point_seeds();
        // Fixed points differ only at the origin.
        let mut want: Patch = s.fixed_point_patch(&seeds[0], &f6).unwrap();
        for seed in &seeds {
            want.insert(origin.clone(), seed.clone());
            let mut y: Patch = s.fixed_point_patch(seed, &f3).unwrap();
            for _ in 0..3 {
                y = s.substitute(&y).unwrap();
            }
            ok &= y == want;
        }
    }
    notes.push("zeta^3 invariance checked".into());

    for n in [1, 2] {
        let r = recognizability_check(&mut hh, n, 8).unwrap();
        ok &= r.holds();
    }
    notes.push("recognizable at n = 1, 2".into());

    let mut fibers = Vec::new();
    for a in [[0, 0], [1, 0]] {
        let r = fiber_points(&mut hh, &FiberQuery::Orbit { a: a.into() }, 5, 8).unwrap();
        fibers.push(r.count.to_string());
    }
    let digits: Vec<IntVector> = (0..6).map(|i| if i % 2 == 0 { [1, 0].into() } else { [0, 1].into() }).collect();
    fibers.push(fiber_points(&mut hh, &FiberQuery::Digits { digits }, 6, 8).unwrap().count.to_string());
    ok &= fibers == ["3", "3", "1"];
    notes.push(format!("fiber sizes {fibers:?}"));
    line(ok, notes.join("; "))
}

fn criterion_6() -> Line {
    let mut s = half_hex();
    let k = s.k_set(4).unwrap();
    let want: BTreeSet<IntVector> = [[0, 0], [-1, 0], [0, -1], [-1, 1]].into_iter().map(IntVector::from).collect();
    let got: BTreeSet<IntVector> = k.points.iter().cloned().collect();
    let cov = s.coverage(&k.points, 8, &cube(2, -8, 8)).unwrap();
    let shown: Vec<String> = got.iter().map(ToString::to_string).collect();
    line(
        got == want && k.stable_from <= 4 && cov.covered,
        format!("K = {shown:?}, sizes {:?}, covered {} by level {}", k.sizes, cov.covered, cov.deepest_level),
    )
}

fn criterion_7() -> Line {
    let l = m([[2, 0], [0, 4]]);
    let f = fundamental_domain(&l).unwrap();
    let mut s = Substitution::digit(&l, f.elements()).unwrap();
    let listed_member = nl_membership(&l, &m([[1, 2], [0, 1]]), &f, 8).unwrap().accepted().is_some();
    let a = m([[1, 1], [0, 1]]);
    let v = nl_membership(&l, &a, &f, 8).unwrap();
    let cert = v.accepted().cloned();
    let tau_ok = cert.as_ref().is_some_and(|c| tau_equivariance(c, &s, &cube(2, -8, 8)).unwrap().is_none());
    let (maps, comp) = match &cert {
        Some(c) => {
            let rule = build_local_rule(c, &mut s).unwrap();
            (
                maps_fixed_points(&rule, &s, &cube(2, -6, 6)).unwrap(),
                composition_check(&mut s, &a, &a, &cube(2, -4, 4), 8).unwrap().holds(),
            )
        }
        None => (false, false),
    };
    let consistent = cert.is_some() == tau_ok && (cert.is_none() || (maps && comp));
    println!(
        "OPEN  criterion 7  diag(2,4), M = [[1,1],[0,1]]: definition verdict {}, listed set {{[[a,2b],[0,d]]}} excludes it; \
         tau-equivariance {tau_ok}, fixed points map {maps}, composition {comp}",
        if cert.is_some() { "member" } else { "non-member" }
    );
    line(listed_member && consistent, format!("[[1,2],[0,1]] accepted {listed_member}; oracle self-consistent {consistent}"))
}

fn random_unimodular(rng: &mut ChaCha8Rng) -> IntMatrix {
    let gens = [m([[0, -1], [1, 0]]), m([[1, 1], [0, 1]]), m([[1, -1], [0, 1]]), m([[0, 1], [1, 0]])];
    let len = rng.gen_range(1..=5);
    (0..len).fold(IntMatrix::identity(2), |acc, _| &acc * &gens[rng.gen_range(0..4)])
}

/// Same branch, and each side's generators conjugate into the other's group.
fn covariant(a: &Classification, b: &Classification, u: &IntMatrix) -> bool {
    let u_inv = u.inverse_unimodular().unwrap();
    let to_b = |g: &IntMatrix| &(u * g) * &u_inv;
    let to_a = |g: &IntMatrix| &(&u_inv * g) * u;
    a.class.label() == b.class.label()
        && a.finite == b.finite
        && a.generators.iter().all(|g| is_member_in(b, &to_b(g)).unwrap().member)
        && b.generators.iter().all(|g| is_member_in(a, &to_a(g)).unwrap().member)
        && (!a.finite || {
            let x: BTreeSet<IntMatrix> = a.generators.iter().map(to_b).collect();
            x == b.generators.iter().cloned().collect()
        })
}

fn criterion_8(rng: &mut ChaCha8Rng) -> Line {
    let mut bad = Vec::new();
    for l in golden_bases() {
        let a = classify(&l).unwrap();
        for _ in 0..20 {
            let u = random_unimodular(rng);
            let lc = &(&u * &l) * &u.inverse_unimodular().unwrap();
            let b = classify(&lc).unwrap();
            if !covariant(&a, &b, &u) {
                bad.push(format!("L={l} U={u}"));
            }
        }
    }
    line(bad.is_empty(), format!("{} conjugates, failures {bad:?}", 20 * golden_bases().len()))
}

fn main() {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut misprints = Vec::new();
    let mut unexpected = Vec::new();
    let mut run = |n: u32, title: &str, limit: Duration, f: &mut dyn FnMut(&mut Vec<String>) -> Line| {
        let start = Instant::now();
        let l = f(&mut misprints);
        let t = start.elapsed();
        let in_time = t <= limit;
        let tag = if l.ok && in_time { "PASS" } else { "FAIL" };
        println!("{tag}  criterion {n}  {title}  ({:.2} s, limit {} s)  {}", t.as_secs_f64(), limit.as_secs(), l.detail);
        if !in_time || (!l.ok && n != 1) {
            unexpected.push(n);
        }
    };
    run(1, "golden classification", LIMIT_1, &mut |mp| criterion_1(mp));
    run(2, "closed form vs NC depth 5", LIMIT_2, &mut |_| criterion_2());
    run(3, "NC ring closure", LIMIT_3, &mut |_| criterion_3(&mut rng));
    let mut rng4 = ChaCha8Rng::seed_from_u64(SEED + 4);
    run(4, "half-hex normalizer", LIMIT_4, &mut |_| criterion_4(&mut rng4));
    run(5, "fixed points, recognizability, fibers", LIMIT_5, &mut |_| criterion_5());
    run(6, "K-set and covering", LIMIT_6, &mut |_| criterion_6());
    run(7, "diag(2,4) discrepancy report", LIMIT_7, &mut |_| criterion_7());
    let mut rng8 = ChaCha8Rng::seed_from_u64(SEED + 8);
    run(8, "conjugation covariance", LIMIT_8, &mut |_| criterion_8(&mut rng8));

    let listed: Vec<String> = KNOWN_MISPRINTS.iter().map(ToString::to_string).collect();
    println!("criterion 1 rows failing on a re-proved misprint: {misprints:?}");
    // Criterion 1 may fail only on exactly the known, re-proved rows.
    let c1_rows = classify_rows_failing();
    if c1_rows != listed || misprints != listed {
        unexpected.push(1);
    }
    if unexpected.is_empty() {
        println!("acceptance: no unexpected failures");
    } else {
        println!("acceptance: unexpected failures in criteria {unexpected:?}");
        std::process::exit(1);
    }
}

/// Criterion 1 rows that fail, recomputed without the misprint proofs.
fn classify_rows_failing() -> Vec<String> {
    let mut out = Vec::new();
    let got: BTreeSet<IntMatrix> = classify(&m([[2, -1], [1, 3]])).unwrap().generators.into_iter().collect();
    if got != printed_finite_centralizer().into_iter().collect::<BTreeSet<_>>() {
        out.push(KNOWN_MISPRINTS[0].to_string());
    }
    if classify(&m([[3, 1], [0, 5]])).unwrap().class.label() != "order_two" {
        out.push(KNOWN_MISPRINTS[1].to_string());
    }
    out
}
