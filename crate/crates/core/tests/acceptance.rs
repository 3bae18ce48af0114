//! Acceptance suite: one test per criterion, each printing a PASS/FAIL
//! line (run with `cargo test --test acceptance -- --nocapture` to see
//! them). Every tolerance is pinned here in code.

use std::sync::Arc;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use drinfeld_forge::algebra::field::FieldCtx;
use drinfeld_forge::algebra::ratfn::RatFn;
use drinfeld_forge::algebra::upoly::UPoly;
use drinfeld_forge::algebra::{quadratic_character, reciprocity_sign};
use drinfeld_forge::cover::{cover_pipeline, diff_bivar, reference_example};
use drinfeld_forge::drinfeld::{
    al_fixed_point, atkin_lehner, carlitz_disc, flag_to_phi, motive_det_zeta, motive_matrix,
    torsion_count, DrinfeldModule, FlagPoint, YPoly,
};
use drinfeld_forge::galois::{chebotarev_report, psl_oracle, random_control_poly};
use drinfeld_forge::modforms::{h_series, hauptmoduls, relation_poly};
use drinfeld_forge::ore::{CoeffField, FinField, OrePoly, RatField};
use drinfeld_forge::series::TruncSeries;

fn f3() -> Arc<FieldCtx> {
    FieldCtx::new(3, 1).unwrap()
}

fn kfield() -> RatField {
    RatField::new(&f3())
}

fn verdict(criterion: &str, ok: bool, detail: &str) {
    println!("{} criterion {criterion}: {detail}", if ok { "PASS" } else { "FAIL" });
}

/// Criterion 1: `cover --q 3 --N "T^2+1"` reproduces the explicitly known
/// polynomial exactly up to one global unit (the normalization pins the
/// unit), with monomial-level mismatches itemized. Runtime < 60 s.
#[test]
fn criterion_1_example_reproduction() {
    let started = Instant::now();
    let ctx = f3();
    let n = UPoly::from_ints(&ctx, &[1, 0, 1]);
    let (cp, rel) = cover_pipeline(&ctx, &n, 27).expect("pipeline");
    let reference = reference_example(&ctx);
    let diffs = diff_bivar(cp.poly(), &reference);
    for m in &diffs {
        println!(
            "  mismatch at x^{} y^{}: computed {}, reference example has {}",
            m.x_exp, m.y_exp, m.ours, m.reference
        );
    }
    let elapsed = started.elapsed();
    let ok = diffs.is_empty() && elapsed.as_secs() < 60;
    verdict(
        "1 (example reproduction)",
        ok,
        &format!(
            "{} monomial mismatches, overdetermined by {} equations, {:.2?}",
            diffs.len(),
            rel.diagnostics.overdetermination,
            elapsed
        ),
    );
    assert!(diffs.is_empty(), "monomial mismatches against the reference example: {diffs:?}");
    assert!(elapsed.as_secs() < 60, "took {elapsed:.2?}, budget 60 s");
}

/// Criterion 2: the rank-2 motive matrix at a_1 = a_2 = 1 is
/// [[1, Y-T],[1, -T]] with determinant -Y, and the normalized constant is
/// exactly -1 at 20 random moduli points. Runtime < 5 s.
#[test]
fn criterion_2_motive_determinant() {
    let started = Instant::now();
    let k = kfield();
    let ctx = f3();
    let t = k.t_image();

    let pt = FlagPoint::new(k.clone(), vec![k.one(), k.one()]).unwrap();
    let source = flag_to_phi(&pt).unwrap();
    let target = flag_to_phi(&atkin_lehner(&pt).unwrap()).unwrap();
    let u = OrePoly::new(k.clone(), vec![k.one(), k.one()]);
    let m = motive_matrix(&u, &source, &target).unwrap();
    let matrix_ok = *m.entry(0, 0) == YPoly::constant(k.clone(), k.one())
        && *m.entry(0, 1) == YPoly::new(k.clone(), vec![t.neg(), k.one()])
        && *m.entry(1, 0) == YPoly::constant(k.clone(), k.one())
        && *m.entry(1, 1) == YPoly::constant(k.clone(), t.neg());
    let det_ok = m.det() == YPoly::new(k.clone(), vec![k.zero(), RatFn::constant(ctx.from_i64(-1))]);

    // 20 seeded random moduli points, coordinates rational functions
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut rand_poly = |max_deg: usize| -> UPoly {
        loop {
            let coeffs: Vec<i64> =
                (0..=max_deg).map(|_| rng.random_range(0..3) as i64).collect();
            let p = UPoly::from_ints(&ctx, &coeffs);
            if !p.is_zero() {
                return p;
            }
        }
    };
    let minus_one = ctx.from_i64(-1);
    let mut zeta_ok = true;
    for i in 0..20 {
        let a1 = if i % 3 == 0 {
            RatFn::new(rand_poly(2), rand_poly(2)).unwrap()
        } else {
            RatFn::from_poly(rand_poly(2))
        };
        let a2 = RatFn::from_poly(rand_poly(2));
        let pt = FlagPoint::new(k.clone(), vec![a1, a2]).unwrap();
        let z = motive_det_zeta(&pt).expect("zeta computable at moduli points");
        if z != minus_one {
            zeta_ok = false;
            println!("  zeta = {z} at point {pt:?}");
        }
    }
    let elapsed = started.elapsed();
    let ok = matrix_ok && det_ok && zeta_ok && elapsed.as_secs() < 5;
    verdict(
        "2 (motive determinant)",
        ok,
        &format!("matrix anchor {matrix_ok}, det=-Y {det_ok}, zeta=-1 at 20 points {zeta_ok}, {elapsed:.2?}"),
    );
    assert!(matrix_ok && det_ok && zeta_ok);
    assert!(elapsed.as_secs() < 5, "took {elapsed:.2?}, budget 5 s");
}

/// Criterion 3: h/t matches its known expansion (recomputed here by an
/// independent geometric-series evaluation), P(f_T, f) vanishes to full
/// precision, and the radicand of f has valuation exactly q^2-1 with unit
/// leading coefficient. Runtime < 30 s.
#[test]
fn criterion_3_series_anchors() {
    let started = Instant::now();
    let ctx = f3();
    let k = kfield();
    let h = h_series(&ctx, 27).unwrap();

    // independent expansion: -1/U_1 + s^18 (1/U_1 - 1/U_1^2) - s^26 via
    // the geometric series for 1/U_1 = sum (s^2 - (T^3-T) s^3)^i
    let c = RatFn::from_poly(UPoly::from_ints(&ctx, &[0, -1, 0, 1]));
    let x = TruncSeries::new(k.clone(), 2, vec![k.one(), c.neg()], 27);
    let mut geom = TruncSeries::zero(k.clone(), 27);
    let mut xp = TruncSeries::constant(k.clone(), k.one(), 27);
    for _ in 0..14 {
        geom = geom.add(&xp);
        xp = xp.mul(&x).truncate(27);
    }
    let mut expect = geom.neg();
    expect = expect.add(&geom.sub(&geom.mul(&geom)).shift(18).truncate(27));
    expect = expect.sub(&TruncSeries::monomial(k.clone(), k.one(), 26, 27));
    let mut h_ok = true;
    for e in 0..27 {
        if h.coeff(e) != expect.coeff(e) {
            h_ok = false;
            println!("  h/t coefficient of s^{e}: {:?} vs {:?}", h.coeff(e), expect.coeff(e));
        }
    }

    let n = UPoly::from_ints(&ctx, &[1, 0, 1]);
    let hm = hauptmoduls(&ctx, &n, 27).unwrap();
    let rad_ok = hm.radicand_val == 8;
    let rel = relation_poly(&ctx, &n, 27).unwrap();
    let residual = rel.p.eval_series(&hm.f_t, &hm.f).unwrap();
    let res_ok = residual.is_zero_to_prec() && residual.prec() >= 27;

    let elapsed = started.elapsed();
    let ok = h_ok && rad_ok && res_ok && elapsed.as_secs() < 30;
    verdict(
        "3 (series anchors)",
        ok,
        &format!(
            "h-expansion match {h_ok}, radicand valuation {} (want 8), residual zero to O(s^{}) {res_ok}, {elapsed:.2?}",
            hm.radicand_val,
            residual.prec()
        ),
    );
    assert!(h_ok && rad_ok && res_ok);
    assert!(elapsed.as_secs() < 30, "took {elapsed:.2?}, budget 30 s");
}

/// Criterion 4, negative control half: 20 pseudo-random degree-10
/// polynomials must fail PSL(2,9) containment at least 18 times out of 20.
#[test]
fn criterion_4_negative_controls() {
    let started = Instant::now();
    let ctx = f3();
    let n = UPoly::from_ints(&ctx, &[1, 0, 1]);
    let mut failures = 0;
    for c in 0..20u64 {
        let control = random_control_poly(&ctx, 10, 1000 + c);
        let rep = chebotarev_report(&control, &n, 500, 77 + c).unwrap();
        if !rep.containment {
            failures += 1;
        }
    }
    let elapsed = started.elapsed();
    let ok = failures >= 18 && elapsed.as_secs() < 300;
    verdict(
        "4 (negative controls)",
        ok,
        &format!("{failures}/20 controls failed containment (need >= 18), {elapsed:.2?}"),
    );
    assert!(failures >= 18, "only {failures}/20 controls flagged");
    assert!(elapsed.as_secs() < 300);
}

/// Criterion 4, main half, implemented verbatim: 500
/// specializations of the reproduced example, every observed cycle type in
/// the PSL(2,9) oracle set, every non-identity oracle type observed, and
/// every empirical frequency within 0.10 absolute of the oracle
/// proportion.
///
/// This criterion FAILS, and the failure is a property of the reference
/// example itself, not of the sampling: the specialization
/// (T, x) = (1, 1) of the (exactly reproduced) polynomial is irreducible
/// of degree 10 over F_3 — certified by the deterministic
/// Frobenius-power irreducibility test — so its Galois group contains a
/// 10-cycle, an odd permutation, while PSL(2,9) acts on the 10 points of
/// the projective line by even permutations only. The observed extra
/// types (2^5, 1^2 8, 10) are exactly the PGL(2,9) \ PSL(2,9) signatures
/// and all observed types fit PGL(2,9).
#[test]
fn criterion_4_galois_statistics() {
    let started = Instant::now();
    let ctx = f3();
    let n = UPoly::from_ints(&ctx, &[1, 0, 1]);
    let (cp, _) = cover_pipeline(&ctx, &n, 27).unwrap();
    let rep = chebotarev_report(cp.poly(), &n, 500, 1).unwrap();

    let mut problems: Vec<String> = Vec::new();
    if !rep.containment {
        problems.push(format!(
            "containment fails: observed types outside PSL(2,9): {}",
            rep.violations.iter().map(|t| format!("[{t}]")).collect::<Vec<_>>().join(" ")
        ));
    }
    if !rep.coverage {
        problems.push("coverage fails: some non-identity oracle type unobserved".into());
    }
    let oracle = psl_oracle(9).unwrap();
    for (t, &count) in oracle.cycle_counts.iter() {
        let emp = rep.observed.get(t).copied().unwrap_or(0) as f64 / rep.valid as f64;
        let expect = count as f64 / oracle.order as f64;
        if (emp - expect).abs() > 0.10 {
            problems.push(format!(
                "frequency of [{t}]: empirical {emp:.3} vs expected {expect:.3} (tolerance 0.10)"
            ));
        }
    }
    let elapsed = started.elapsed();
    let ok = problems.is_empty() && elapsed.as_secs() < 300;
    verdict(
        "4 (Galois statistics)",
        ok,
        &format!(
            "valid {} discarded {}, group fit: {}, {:.2?}",
            rep.valid, rep.discarded, rep.group_fit, elapsed
        ),
    );
    for p in &problems {
        println!("  {p}");
    }
    assert!(
        problems.is_empty(),
        "criterion 4 fails as stated; measured diagnosis: the example's \
         specialization types fit {} — e.g. (T,x)=(1,1) specializes to an \
         irreducible degree-10 polynomial (a certified 10-cycle, odd \
         permutation, impossible in PSL(2,9) = A_6). Itemized problems:\n  {}",
        rep.group_fit,
        problems.join("\n  ")
    );
}

/// Criterion 5: property suites, all exact. Runtime < 2 min total.
#[test]
fn criterion_5_property_suites() {
    let started = Instant::now();
    let ctx = f3();

    // --- Ore ring axioms and division reconstruction, 1000 cases each ---
    let f9 = FieldCtx::new(3, 2).unwrap();
    let fin = FinField::self_field(&f9, f9.element(3)).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(55);
    let mut mk = |rng: &mut ChaCha8Rng, max_deg: usize| {
        let d = rng.random_range(0..=max_deg);
        let coeffs: Vec<_> = (0..=d).map(|_| f9.element(rng.random_range(0..9))).collect();
        OrePoly::new(fin.clone(), coeffs)
    };
    for case in 0..1000 {
        let a = mk(&mut rng, 3);
        let b = mk(&mut rng, 3);
        let c = mk(&mut rng, 3);
        let assoc = a.mul(&b).unwrap().mul(&c).unwrap() == a.mul(&b.mul(&c).unwrap()).unwrap();
        let ldist = a.mul(&b.add(&c).unwrap()).unwrap()
            == a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap();
        let rdist = b.add(&c).unwrap().mul(&a).unwrap()
            == b.mul(&a).unwrap().add(&c.mul(&a).unwrap()).unwrap();
        assert!(assoc && ldist && rdist, "ring axiom failed at case {case}");
        if !a.is_zero() && !b.is_zero() {
            let prod = a.mul(&b).unwrap();
            assert_eq!(prod.degree(), a.degree() + b.degree(), "degree additivity");
        }
    }
    for case in 0..1000 {
        let w = mk(&mut rng, 6);
        let mut d = mk(&mut rng, 3);
        if d.is_zero() {
            d = OrePoly::one(fin.clone());
        }
        let (q, r) = w.right_divmod(&d).unwrap();
        assert_eq!(q.mul(&d).unwrap().add(&r).unwrap(), w, "reconstruction at case {case}");
        assert!(r.degree() < d.degree());
    }

    // --- torsion counts q^(r deg n) over splitting fields ---
    let one = ctx.one();
    let fin3 = FinField::self_field(&ctx, one.clone()).unwrap();
    let carlitz_dm = DrinfeldModule::new(fin3.clone(), vec![one.clone()]).unwrap();
    let splits = |dm: &DrinfeldModule<FinField>, n: &UPoly, target: u64, cap: usize| -> bool {
        for e in 1..=cap {
            match torsion_count(dm, n, e) {
                Ok(c) if c == target => return true,
                Ok(c) => assert!(
                    target % c == 0,
                    "torsion subgroup size {c} does not divide {target}"
                ),
                Err(e) => panic!("torsion count failed: {e}"),
            }
        }
        false
    };
    // r = 1: deg n = 1 and 2
    assert!(splits(&carlitz_dm, &UPoly::from_ints(&ctx, &[0, 1]), 3, 4));
    assert!(splits(&carlitz_dm, &UPoly::from_ints(&ctx, &[0, 0, 1]), 9, 8));
    assert!(splits(&carlitz_dm, &UPoly::from_ints(&ctx, &[1, 0, 1]), 9, 8));
    // r = 2: deg n = 1 and 2 (frozen modules with small splitting fields)
    let dm_a = DrinfeldModule::new(fin3.clone(), vec![ctx.zero(), one.clone()]).unwrap();
    assert!(splits(&dm_a, &UPoly::from_ints(&ctx, &[0, 1]), 9, 6));
    assert!(splits(&dm_a, &UPoly::from_ints(&ctx, &[0, 1, 1]), 81, 6));
    let dm_b = DrinfeldModule::new(fin3, vec![one.clone(), one.clone()]).unwrap();
    assert!(splits(&dm_b, &UPoly::from_ints(&ctx, &[1, 0, 1]), 81, 8));

    // --- quadratic reciprocity, exhaustive for deg <= 3 over F_3 ---
    let mut irreducibles = Vec::new();
    for d in 1..=3usize {
        for idx in 0..3u64.pow(d as u32) {
            let mut coeffs: Vec<i64> = Vec::new();
            let mut k = idx;
            for _ in 0..d {
                coeffs.push((k % 3) as i64);
                k /= 3;
            }
            coeffs.push(1);
            let f = UPoly::from_ints(&ctx, &coeffs);
            if f.is_irreducible() {
                irreducibles.push(f);
            }
        }
    }
    let mut pairs = 0;
    for p in &irreducibles {
        for q in &irreducibles {
            if p == q {
                continue;
            }
            let lhs =
                quadratic_character(p, q).unwrap() * quadratic_character(q, p).unwrap();
            assert_eq!(lhs, reciprocity_sign(p, q).unwrap(), "reciprocity at ({p}, {q})");
            pairs += 1;
        }
    }

    // --- Atkin-Lehner involutivity and fixed points, r in {2,4,6} ---
    let k = kfield();
    let mut rngal = ChaCha8Rng::seed_from_u64(4242);
    for r in [2usize, 4, 6] {
        for _ in 0..10 {
            let coords: Vec<RatFn> = (0..r)
                .map(|_| {
                    let c: Vec<i64> =
                        (0..=2).map(|_| rngal.random_range(0..3) as i64).collect();
                    let p = UPoly::from_ints(&ctx, &c);
                    if p.is_zero() {
                        RatFn::one(&ctx)
                    } else {
                        RatFn::from_poly(p)
                    }
                })
                .collect();
            let pt = FlagPoint::new(k.clone(), coords).unwrap();
            let ww = atkin_lehner(&atkin_lehner(&pt).unwrap()).unwrap();
            assert!(ww.projectively_equal(&pt), "w^2 != id at rank {r}");
        }
        let fp = al_fixed_point(k.clone(), r).unwrap();
        assert!(atkin_lehner(&fp).unwrap().projectively_equal(&fp), "fixed point at rank {r}");
    }

    // --- Carlitz discriminant = ±p^(q^d) for d <= 2 ---
    let mut disc_checked = 0;
    for p in irreducibles.iter().filter(|p| p.degree() <= 2) {
        let d = carlitz_disc(p).unwrap();
        let expect = p.pow(3u64.pow(p.degree() as u32));
        assert!(d == expect || d == expect.neg(), "disc({p}) = {d}");
        disc_checked += 1;
    }

    let elapsed = started.elapsed();
    let ok = elapsed.as_secs() < 120;
    verdict(
        "5 (property suites)",
        ok,
        &format!(
            "2000 Ore cases, 6 torsion splittings, {pairs} reciprocity pairs, AL ranks 2/4/6, {disc_checked} discriminants, {elapsed:.2?}"
        ),
    );
    assert!(ok, "took {elapsed:.2?}, budget 120 s");
}

/// Criterion 6: the general-(r,d) existence statement and the regularity
/// proof are not desk-scale reproducible and are excluded by design; the
/// property and statistical suites above are their stand-ins.
#[test]
fn criterion_6_exclusions_noted() {
    verdict(
        "6 (excluded scope)",
        true,
        "general-(r,d) existence and K-regularity proof excluded; covered by criteria 2-5",
    );
}
