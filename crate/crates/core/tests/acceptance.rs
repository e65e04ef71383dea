use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

use morita_core::bibundle::{
    bibundle_iso_search, bundle_from_functor, inverse_bibundle, is_biprincipal, is_principal, morita_equivalent, tensor, unit_bundle, Bibundle,
};
use morita_core::catalog;
use morita_core::cocycle::{check_lifting_hypotheses, lift_cocycle, pushforward, validate_cocycle, GridCover};
use morita_core::fpgroup::coset::{finite_order, probably_isomorphic_to_group, IsoVerdict};
use morita_core::fpgroup::homcount::default_signature;
use morita_core::fpgroup::presentation::GroupPresentation;
use morita_core::fpgroup::{smith_normal_form, IntMatrix};
use morita_core::gen::{self, ActionKind};
use morita_core::group::FiniteGroup;
use morita_core::groupoid::{orbit_index, orbits, FiniteGroupoid, GroupoidFunctor};
use morita_core::homotopy::{borel_pi1, check_eff_sequence, check_example4_sequence, eff_translation, matched_invariants, pi0, pi1_finite, pi1_nerve};
use morita_core::report::{Report, Verdict};
use morita_core::simplicial::{ComplexAction, SimplicialComplex};
use rand::Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn e(err: morita_core::Error) -> String {
    err.to_string()
}

fn mobius() -> Outcome {
    let run = catalog::find("mobius").ok_or("no mobius entry")?.run().map_err(e)?;
    ensure(run.passed, || format!("catalog run failed: {run:?}"))?;
    ensure(run.lines.iter().any(|l| l == "pi1 = Z/2"), || format!("lines {:?}", run.lines))?;
    let reflect: Vec<usize> = (0..8).rev().collect();
    let a = gen::permutation_action(SimplicialComplex::path(8).map_err(e)?, &[reflect]).map_err(e)?;
    let model = borel_pi1(&a, 0).map_err(e)?;
    let p = model.presentation();
    ensure(p.abelianization().to_string() == "Z/2", || format!("abelianization {}", p.abelianization()))?;
    let sig = default_signature(p).map_err(e)?;
    ensure(sig == default_signature(&GroupPresentation::cyclic(2)).map_err(e)?, || format!("signature {sig:?}"))?;
    ensure(finite_order(p) == Some(2), || "coset enumeration disagrees".into())?;
    Ok("abelianization Z/2, hom-signature of Z/2, order 2".into())
}

fn validated_witness(w: &Bibundle) -> bool {
    w.violations().is_empty() && is_principal(w).is_principal() && is_biprincipal(w)
}

fn pair_collapse() -> Outcome {
    let point = FiniteGroupoid::unit_groupoid(1);
    for n in 1..=6 {
        let g = FiniteGroupoid::pair_groupoid(n).map_err(e)?;
        let d = morita_equivalent(&g, &point);
        ensure(d.equivalent, || format!("|S| = {n}: {}", d.reason))?;
        ensure(d.witness.as_ref().is_some_and(validated_witness), || format!("|S| = {n}: witness rejected"))?;
        ensure(d.witness.as_ref().is_some_and(|w| w.total() == n), || format!("|S| = {n}: witness size"))?;
        ensure(pi1_finite(&g, n - 1).map_err(e)?.order() == 1, || format!("|S| = {n}: pi1 nontrivial"))?;
        ensure(pi1_nerve(&g, 0).map_err(e)?.abelianization().is_trivial(), || format!("|S| = {n}: nerve pi1 nontrivial"))?;
    }
    Ok("|S| = 1..6 equivalent to a point".into())
}

fn delooping() -> Outcome {
    let z2 = FiniteGroup::cyclic(2);
    let groups = [
        ("Z2", z2.clone()),
        ("Z3", FiniteGroup::cyclic(3)),
        ("Z4", FiniteGroup::cyclic(4)),
        ("Z2xZ2", z2.direct_product(&z2)),
        ("S3", FiniteGroup::symmetric(3)),
    ];
    for (name, g) in &groups {
        let gg = FiniteGroupoid::group_as_groupoid(g);
        ensure(pi1_finite(&gg, 0).map_err(e)?.is_isomorphic(g), || format!("{name}: isotropy"))?;
        let v = probably_isomorphic_to_group(&pi1_nerve(&gg, 0).map_err(e)?, g);
        ensure(v == IsoVerdict::YesCertified, || format!("{name}: nerve verdict {}", v.label()))?;
    }
    Ok("Z2, Z3, Z4, Z2xZ2, S3 yes-certified by isotropy and nerve".into())
}

fn sequence_ok(r: &Report) -> bool {
    r.overall <= Verdict::ExactAbelianOnly && r.abelian && r.hom_signature
}

fn example4() -> Outcome {
    let mut count = 0;
    for name in ["action-free", "action-fixed", "mobius", "kronecker-analog"] {
        let run = catalog::find(name).ok_or("missing entry")?.run().map_err(e)?;
        let r = run.report.as_ref().ok_or("no report")?;
        ensure(run.passed && sequence_ok(r), || format!("{name}: {r}"))?;
        count += 1;
    }
    let mut rng = gen::rng(0xE4);
    for kind in [ActionKind::Free, ActionKind::Fixed, ActionKind::Mixed] {
        for i in 0..10 {
            let a = gen::random_action(&mut rng, kind);
            ensure(a.group.order() <= 6 && a.complex.simplex_count() <= gen::MAX_SIMPLICES, || "generator bounds".into())?;
            let r = check_example4_sequence(&a, 0).map_err(e)?;
            ensure(sequence_ok(&r), || format!("{kind:?} #{i}: {r}"))?;
            count += 1;
        }
    }
    Ok(format!("{count} actions exact at the abelianized level, no hom-signature obstruction"))
}

fn eff() -> Outcome {
    let run = catalog::find("eff-z4-c6").ok_or("missing entry")?.run().map_err(e)?;
    let r = run.report.as_ref().ok_or("no report")?;
    ensure(run.passed && sequence_ok(r), || format!("eff-z4-c6: {r}"))?;
    let z4 = ComplexAction::from_fn(FiniteGroup::cyclic(4), SimplicialComplex::cycle(6).map_err(e)?, |g, v| (v + 3 * g) % 6).map_err(e)?;
    let t = eff_translation(&z4).map_err(e)?;
    ensure(t.kernel == vec![0, 2] && t.quotient.group.is_isomorphic(&FiniteGroup::cyclic(2)), || format!("kernel {:?}", t.kernel))?;
    let mut rng = gen::rng(0xEF);
    let mut effective = 0;
    while effective < 10 {
        let kind = [ActionKind::Free, ActionKind::Fixed, ActionKind::Mixed][rng.gen_range(0..3)];
        let a = gen::random_action(&mut rng, kind);
        if eff_translation(&a).map_err(e)?.kernel.len() != 1 {
            continue;
        }
        let r = check_eff_sequence(&a, 0).map_err(e)?;
        if r.overall == Verdict::NotChecked {
            continue;
        }
        ensure(r.overall == Verdict::Exact, || format!("effective {kind:?} action: {r}"))?;
        effective += 1;
    }
    Ok("eff-z4-c6 verified with K = Z2; 10 effective actions certified isomorphic".into())
}

fn cocycle_lifts() -> Outcome {
    let mut rng = gen::rng(0xC0C);
    for i in 0..200 {
        let phi = gen::qualifying_functor(&mut rng);
        check_lifting_hypotheses(&phi).map_err(|err| format!("#{i}: {err}"))?;
        let cover = GridCover::new(rng.gen_range(1..=2), rng.gen_range(1..=4)).map_err(e)?;
        let c = gen::random_cocycle(&mut rng, cover, phi.target.clone());
        ensure(validate_cocycle(&c).is_valid(), || format!("#{i}: generated cocycle invalid"))?;
        let lift = lift_cocycle(&phi, &c, None).map_err(|err| format!("#{i}: no lift: {err}"))?;
        ensure(*lift.groupoid == *phi.source && validate_cocycle(&lift).is_valid(), || format!("#{i}: lift is not a cocycle"))?;
        ensure(pushforward(&phi, &lift).map_err(e)? == c, || format!("#{i}: pushforward differs"))?;
    }
    Ok("200 lifts, pushforward equals input".into())
}

fn isomorphic(a: &Bibundle, b: &Bibundle) -> bool {
    bibundle_iso_search(a, b).is_some()
}

/// Keeps chains of product inclusions from growing past a few hundred arrows.
fn bounded_functor(rng: &mut gen::GenRng, g: &Arc<FiniteGroupoid>) -> GroupoidFunctor {
    loop {
        let f = gen::functor_out_of(rng, g);
        if f.target.arrow_count() <= 200 {
            return f;
        }
    }
}

fn tensor_laws() -> Outcome {
    let mut rng = gen::rng(0x7E5);
    for i in 0..50 {
        let g = Arc::new(gen::random_groupoid(&mut rng, 4));
        let phi = bounded_functor(&mut rng, &g);
        let psi = bounded_functor(&mut rng, &phi.target);
        let chi = bounded_functor(&mut rng, &psi.target);
        let (a, b, c) = (bundle_from_functor(&phi), bundle_from_functor(&psi), bundle_from_functor(&chi));
        let t = |x: &Bibundle, y: &Bibundle| tensor(x, y).map_err(|err| format!("#{i}: {err}"));
        ensure(isomorphic(&t(&unit_bundle(&g), &a)?, &a), || format!("#{i}: left unit"))?;
        ensure(isomorphic(&t(&a, &unit_bundle(&phi.target))?, &a), || format!("#{i}: right unit"))?;
        ensure(isomorphic(&t(&t(&a, &b)?, &c)?, &t(&a, &t(&b, &c)?)?), || format!("#{i}: associativity"))?;
        let composite = bundle_from_functor(&phi.then(&psi).map_err(e)?);
        ensure(isomorphic(&composite, &t(&a, &b)?), || format!("#{i}: composite bundle"))?;
        let w = gen::weak_equivalence_out_of(&mut rng, &g);
        let p = bundle_from_functor(&w);
        let inv = inverse_bibundle(&p).map_err(|err| format!("#{i}: {err}"))?;
        ensure(isomorphic(&t(&p, &inv)?, &unit_bundle(&g)), || format!("#{i}: P with its inverse"))?;
        ensure(isomorphic(&t(&inv, &p)?, &unit_bundle(&w.target)), || format!("#{i}: inverse with P"))?;
    }
    Ok("unit, associativity, composites and inverses on 50 instances".into())
}

fn det(m: &[Vec<i128>]) -> i128 {
    if m.is_empty() {
        return 1;
    }
    (0..m.len())
        .map(|j| {
            let minor: Vec<Vec<i128>> = m[1..].iter().map(|r| r.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, &x)| x).collect()).collect();
            let sign = if j % 2 == 0 { 1 } else { -1 };
            sign * m[0][j] * det(&minor)
        })
        .sum()
}

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    (k - 1..n).flat_map(|last| subsets(last, k - 1).into_iter().map(move |mut s| {
        s.push(last);
        s
    })).collect()
}

/// Invariant factors from gcds of `k × k` minors.
fn determinantal_oracle(a: &[Vec<i64>]) -> Vec<i128> {
    let (r, c) = (a.len(), a[0].len());
    let mut divisors = vec![1i128];
    for k in 1..=r.min(c) {
        let mut d = 0;
        for rows in subsets(r, k) {
            for cols in subsets(c, k) {
                let m: Vec<Vec<i128>> = rows.iter().map(|&i| cols.iter().map(|&j| a[i][j] as i128).collect()).collect();
                d = gcd(d, det(&m));
            }
        }
        divisors.push(d);
    }
    (1..divisors.len()).map(|k| if divisors[k] == 0 { 0 } else { divisors[k] / divisors[k - 1] }).collect()
}

/// Diagonalization by row and column operations with pivots taken at the
/// first nonzero entry in column-major order.
#[allow(clippy::needless_range_loop)]
fn elementary_oracle(a: &[Vec<i64>]) -> Vec<i64> {
    let mut m: Vec<Vec<i64>> = a.to_vec();
    let (r, c) = (m.len(), m[0].len());
    for t in 0..r.min(c) {
        loop {
            let Some((pi, pj)) = (t..c).flat_map(|j| (t..r).map(move |i| (i, j))).find(|&(i, j)| m[i][j] != 0) else {
                return (0..r.min(c)).map(|i| m[i][i].abs()).collect();
            };
            m.swap(t, pi);
            for row in m.iter_mut() {
                row.swap(t, pj);
            }
            let mut dirty = false;
            for i in t + 1..r {
                let q = m[i][t] / m[t][t];
                for j in t..c {
                    m[i][j] -= q * m[t][j];
                }
                dirty |= m[i][t] != 0;
            }
            for j in t + 1..c {
                let q = m[t][j] / m[t][t];
                for i in t..r {
                    m[i][j] -= q * m[i][t];
                }
                dirty |= m[t][j] != 0;
            }
            if dirty {
                let (bi, bj) = (t..r).flat_map(|i| (t..c).map(move |j| (i, j))).filter(|&(i, j)| (i == t) != (j == t) && m[i][j] != 0).min_by_key(|&(i, j)| m[i][j].abs()).expect("dirty");
                if bi == t {
                    for row in m.iter_mut() {
                        row.swap(t, bj);
                    }
                } else {
                    m.swap(t, bi);
                }
                continue;
            }
            if let Some(i) = (t + 1..r).find(|&i| (t + 1..c).any(|j| m[i][j] % m[t][t] != 0)) {
                for j in t..c {
                    m[t][j] += m[i][j];
                }
                continue;
            }
            break;
        }
    }
    (0..r.min(c)).map(|i| m[i][i].abs()).collect()
}

fn snf_oracle() -> Outcome {
    let mut rng = gen::rng(0x5AF);
    for i in 0..1000 {
        let (r, c) = (rng.gen_range(1..=4), rng.gen_range(1..=4));
        let rows: Vec<Vec<i64>> = (0..r).map(|_| (0..c).map(|_| rng.gen_range(-5..=5)).collect()).collect();
        let a = IntMatrix::from_rows(&rows);
        let s = smith_normal_form(&a);
        ensure(s.u.mul(&s.d).mul(&s.v) == a, || format!("#{i}: U D V != A for {rows:?}"))?;
        ensure(s.u.is_unimodular() && s.v.is_unimodular(), || format!("#{i}: not unimodular"))?;
        let d = s.d.to_i64_rows().ok_or("entries overflow")?;
        ensure(d.iter().enumerate().all(|(x, row)| row.iter().enumerate().all(|(y, &v)| x == y || v == 0)), || format!("#{i}: D not diagonal"))?;
        let diag: Vec<i64> = (0..r.min(c)).map(|k| d[k][k]).collect();
        ensure(diag.iter().all(|&x| x >= 0), || format!("#{i}: negative entry"))?;
        ensure(diag.windows(2).all(|w| if w[0] == 0 { w[1] == 0 } else { w[1] % w[0] == 0 }), || format!("#{i}: chain {diag:?}"))?;
        let by_ops = elementary_oracle(&rows);
        ensure(by_ops == diag, || format!("#{i}: {rows:?}: elementary oracle {by_ops:?} vs {diag:?}"))?;
        let by_minors: Vec<i64> = determinantal_oracle(&rows).into_iter().map(|x| x as i64).collect();
        ensure(by_minors == diag, || format!("#{i}: {rows:?}: determinantal oracle {by_minors:?} vs {diag:?}"))?;
    }
    Ok("1000 matrices agree with both oracles".into())
}

fn morita_invariance() -> Outcome {
    let mut rng = gen::rng(0x90);
    for i in 0..20 {
        let (g, h) = gen::random_morita_pair(&mut rng, 8);
        let d = morita_equivalent(&g, &h);
        ensure(d.equivalent, || format!("#{i}: {}", d.reason))?;
        let w = d.witness.as_ref().ok_or("no witness")?;
        ensure(validated_witness(w), || format!("#{i}: witness rejected"))?;
        ensure(pi0(&g, 0).map_err(e)?.len() == pi0(&h, 0).map_err(e)?.len(), || format!("#{i}: pi0 differs"))?;
        let h_orbit = orbit_index(&h);
        let matching: Vec<usize> = orbits(&g)
            .iter()
            .map(|o| (0..w.total()).find(|&p| w.pi(p) == o[0]).map(|p| h_orbit[w.eps(p)]).ok_or("anchor not surjective"))
            .collect::<Result<_, _>>()?;
        ensure(matched_invariants(&g, &h, &matching).map_err(e)?, || format!("#{i}: isotropy differs along {matching:?}"))?;
        let (og, oh) = (orbits(&g), orbits(&h));
        for (x, &y) in matching.iter().enumerate() {
            let a = pi1_nerve(&g, og[x][0]).map_err(e)?.abelianization();
            let b = pi1_nerve(&h, oh[y][0]).map_err(e)?.abelianization();
            ensure(a == b, || format!("#{i}: nerve pi1 {a} vs {b}"))?;
        }
    }
    Ok("20 pairs: pi0 and pi1 match along the witness".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("mobius reproduction", mobius),
        ("pair-groupoid collapse", pair_collapse),
        ("group delooping", delooping),
        ("example 4 exactness", example4),
        ("eff sequence", eff),
        ("cocycle-lift round trip", cocycle_lifts),
        ("tensor laws", tensor_laws),
        ("snf oracle equivalence", snf_oracle),
        ("morita invariance of pi0 and pi1", morita_invariance),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {}: {name}: pass ({detail}; {secs:.1}s)", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: {name}: FAIL ({why}; {secs:.1}s)", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
