//! End-to-end acceptance checks, one line per criterion. Every comparison
//! is exact integer equality.

mod common;

use std::process::ExitCode;
use std::time::Instant;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use twistk::abelian::{cokernel, smith_normal_form};
use twistk::arith::{self, nat};
use twistk::closedform::{
    self, braun_c, douglas_g2, douglas_sp2_closed, douglas_su, so5_k, DouglasSpSweep,
};
use twistk::khorami::{self, epsilon, TruncatedRing};
use twistk::segal::{self, k_orders, k_orders_via};
use twistk::{AbGroup, Family, GroupId, Int, KResult, Nat};

type Outcome = Result<String, String>;

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn z(m: Nat) -> AbGroup {
    AbGroup::cyclic(m)
}

fn parities(k: &KResult) -> (&AbGroup, &AbGroup) {
    (&k.even, &k.odd)
}

/// Runs `f` on every `h` in `lo..=hi` in parallel; the first failure (by `h`) wins.
fn sweep<F>(lo: u64, hi: u64, f: F) -> Result<(), String>
where
    F: Fn(u64) -> Result<(), String> + Sync,
{
    let failures: Vec<(u64, String)> = (lo..=hi)
        .into_par_iter()
        .filter_map(|h| f(h).err().map(|e| (h, e)))
        .collect();
    match failures.into_iter().min_by_key(|(h, _)| *h) {
        None => Ok(()),
        Some((h, e)) => Err(format!("h = {h}: {e}")),
    }
}

fn criterion_1() -> Outcome {
    let g = GroupId::a(2).map_err(err)?;
    sweep(1, 10_000, |h| {
        let hn = nat(h);
        let expected = z(if h % 2 == 0 { nat(h / 2) } else { hn.clone() });
        let ss = k_orders(&g, &hn).map_err(err)?;
        let closed = closedform::assemble_full(&g, &hn).map_err(err)?;
        let douglas = closedform::assemble_douglas(&g, &hn).map_err(err)?;
        for (name, k) in [("segal", &ss), ("braun", &closed), ("douglas", &douglas)] {
            check(parities(k) == (&expected, &expected), || {
                format!("{name} gives {k}, expected {expected} per parity")
            })?;
        }
        Ok(())
    })?;
    Ok(
        "SU(3): segal, braun and douglas all give Z/h (h odd), Z/(h/2) (h even), h in [1, 10^4]"
            .into(),
    )
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let g = GroupId::c(2).map_err(err)?;
    const H_MAX: u64 = 100_000;
    let douglas: Vec<Nat> = DouglasSpSweep::new(2)
        .map_err(err)?
        .take(H_MAX as usize)
        .map(|(_, c)| c)
        .collect();
    sweep(1, H_MAX, |h| {
        let hn = nat(h);
        let expected = &hn / hn.gcd(&nat(6));
        let braun = braun_c(&g, &hn).map_err(err)?;
        let closed = douglas_sp2_closed(&hn).map_err(err)?;
        let sum = &douglas[h as usize - 1];
        check(
            braun == expected && closed == expected && *sum == expected,
            || format!("braun {braun}, douglas sum {sum}, trinomial {closed}, expected {expected}"),
        )?;
        let ss = k_orders(&g, &hn).map_err(err)?;
        let want = z(expected.clone());
        check(parities(&ss) == (&want, &want), || {
            format!("segal gives {ss}, expected {want}")
        })
    })?;
    // The direct Douglas sum agrees with its incremental form.
    for h in [1u64, 2, 3, 6, 12, 97, 360, 1000] {
        let direct = closedform::douglas_sp(2, &nat(h)).map_err(err)?;
        check(direct == douglas[h as usize - 1], || {
            format!("douglas_sp(2, {h}) = {direct} differs from sweep")
        })?;
    }
    Ok(format!(
        "Sp(2): braun = douglas sum = trinomial = segal = h/gcd(h,6), h in [1, 10^5] ({:.1}s)",
        start.elapsed().as_secs_f64()
    ))
}

fn g2_expected(h: u64) -> Nat {
    let two = h.trailing_zeros() as u64;
    let odd = h >> two;
    nat(odd / odd.gcd(&15)) * arith::prime_power(&nat(2), two.saturating_sub(2))
}

fn criterion_3() -> Outcome {
    let g = GroupId::g2();
    sweep(1, 100_000, |h| {
        let hn = nat(h);
        let (d, b) = (
            douglas_g2(&hn).map_err(err)?,
            braun_c(&g, &hn).map_err(err)?,
        );
        check(d == b, || format!("douglas {d} != braun {b}"))
    })?;
    sweep(1, 2000, |h| {
        let hn = nat(h);
        let want = z(g2_expected(h));
        check(braun_c(&g, &hn).map_err(err)? == g2_expected(h), || {
            "closed form differs from odd/2-part formula".into()
        })?;
        for spec in [segal::g2_via_stiefel(), segal::g2_via_sphere()] {
            let k = k_orders_via(&spec, &g, &hn, None).map_err(err)?;
            check(parities(&k) == (&want, &want), || {
                format!("{} gives {k}, expected {want}", spec.name)
            })?;
        }
        Ok(())
    })?;
    for (h, c) in [(4u64, 1u64), (60, 1), (8, 2)] {
        let got = braun_c(&g, &nat(h)).map_err(err)?;
        check(got == nat(c), || {
            format!("c(G2, {h}) = {got}, expected {c}")
        })?;
        let k = k_orders(&g, &nat(h)).map_err(err)?;
        check(k.orders() == (nat(c), nat(c)), || {
            format!("segal c(G2, {h}) = {k}")
        })?;
    }
    Ok("G2: douglas = braun on [1, 10^5]; both segal routes match odd and 2-part formulas on [1, 2000]; c(4)=1, c(60)=1, c(8)=2".into())
}

fn criterion_4() -> Outcome {
    let so5 = GroupId::so5();
    let sp2 = GroupId::c(2).map_err(err)?;
    sweep(1, 2000, |h| {
        if h % 4 == 0 {
            return Ok(());
        }
        let hn = nat(h);
        let odd = h >> h.trailing_zeros();
        let mut orders = vec![nat(odd / odd.gcd(&3))];
        if h % 2 == 0 {
            orders.extend([nat(2), nat(2), nat(2), nat(2)]);
        }
        let want = AbGroup::from_cyclic_orders(orders);
        let closed = so5_k(&hn).map_err(err)?;
        let ss = k_orders(&so5, &hn).map_err(err)?;
        for (name, k) in [("so5_k", &closed), ("segal", &ss)] {
            check(parities(k) == (&want, &want), || {
                format!("{name} gives {k}, expected {want}")
            })?;
        }
        let sp = k_orders(&sp2, &hn).map_err(err)?;
        for (p, _) in arith::factorize(&hn).map_err(err)? {
            if p == nat(2) {
                continue;
            }
            for (a, b) in [(&ss.even, &sp.even), (&ss.odd, &sp.odd)] {
                let (pa, pb) = (a.p_part(&p).map_err(err)?, b.p_part(&p).map_err(err)?);
                check(pa == pb, || {
                    format!("{p}-part {pa} differs from Sp(2)'s {pb}")
                })?;
            }
        }
        Ok(())
    })?;
    check(
        k_orders(&so5, &nat(4)).is_err() && so5_k(&nat(4)).is_err(),
        || "4 | h accepted".into(),
    )?;
    Ok("SO(5): segal = closed form = Z/(h/gcd(h,3)) or (Z/2)^4 + Z/(h_odd/gcd(h,3)); odd parts match Sp(2), h <= 2000, 4 !| h".into())
}

fn criterion_5() -> Outcome {
    let rings: Vec<TruncatedRing> = [2, 8, 16, 64].map(TruncatedRing::new).into();
    for h in 1..=200u64 {
        for ring in &rings {
            let t = ring.tensor_with_integers(&nat(h)).map_err(err)?;
            check(t == z(nat(h)), || {
                format!("h = {h}, N = {}: got {t}", ring.truncation())
            })?;
        }
    }
    let ring = &rings[2];
    let b1 = ring.basis(1);
    let square = ring.multiply(&b1, &b1).map_err(err)?;
    let two_b2 = ring.basis(2).scale(&Int::from(2));
    let relation = square
        .coeffs()
        .iter()
        .zip(b1.coeffs())
        .zip(two_b2.coeffs())
        .all(|((s, b), t)| s - b == *t);
    check(relation, || "2 beta_2 != beta_1^2 - beta_1".into())?;
    for i in 0..=16 {
        for j in 0..=16 {
            let (bi, bj) = (ring.basis(i), ring.basis(j));
            let lhs = epsilon(&ring.multiply(&bi, &bj).map_err(err)?);
            check(lhs == epsilon(&bi) * epsilon(&bj), || {
                format!("epsilon not multiplicative at ({i}, {j})")
            })?;
        }
    }
    Ok("Khorami: R/(h beta_1) (x)_R Z = Z/h for h <= 200, N in {2,8,16,64}; 2 beta_2 = beta_1^2 - beta_1; epsilon multiplicative to N=16".into())
}

fn criterion_6() -> Outcome {
    for h in 1..=50u64 {
        for n in 1..=20u64 {
            let even = khorami::serre_homology_ph(&nat(h), 2 * n as usize).map_err(err)?;
            check(even == z(nat(n * h)), || {
                format!("H_{}(P_{h}) = {even}", 2 * n)
            })?;
            let odd = khorami::serre_homology_ph(&nat(h), 2 * n as usize + 1).map_err(err)?;
            check(odd.is_trivial(), || {
                format!("H_{}(P_{h}) = {odd}", 2 * n + 1)
            })?;
        }
    }
    Ok("Serre SS: H_2n(P_h) = Z/(nh) for n <= 20, h <= 50; odd degrees trivial".into())
}

fn criterion_7() -> Outcome {
    for n in 1..=6 {
        let g = GroupId::a(n).map_err(err)?;
        sweep(1, 10_000, |h| {
            let (d, b) = (
                douglas_su(n, &nat(h)).map_err(err)?,
                braun_c(&g, &nat(h)).map_err(err)?,
            );
            check(d == b, || {
                format!("SU({}): douglas {d} != braun {b}", n + 1)
            })
        })?;
    }
    Ok("SU(n+1): douglas = braun for n in [1, 6], h in [1, 10^4]".into())
}

/// Every route that accepts `g` at twist `h`.
fn all_results(g: &GroupId, h: &Nat) -> Result<Vec<KResult>, String> {
    let mut out = Vec::new();
    if g.family() == Family::SO5 {
        if h.trailing_zeros().unwrap_or(0) < 2 {
            out.push(so5_k(h).map_err(err)?);
            out.push(k_orders(g, h).map_err(err)?);
        }
        return Ok(out);
    }
    out.push(closedform::assemble_full(g, h).map_err(err)?);
    if let Ok(k) = closedform::assemble_douglas(g, h) {
        out.push(k);
    }
    if let Ok(k) = k_orders(g, h) {
        out.push(k);
    }
    if g.family() == Family::A && g.rank_param() == Some(1) {
        let t = khorami::tensor_over_r(h, khorami::DEFAULT_TRUNCATION).map_err(err)?;
        out.push(KResult {
            group: *g,
            h: h.clone(),
            even: t,
            odd: AbGroup::trivial(),
            route: twistk::Route::Khorami,
        });
    }
    Ok(out)
}

fn criterion_8() -> Outcome {
    let mut groups = closedform::simply_connected_catalog(6);
    groups.push(GroupId::so5());
    let total: usize = groups
        .par_iter()
        .map(|g| -> Result<usize, String> {
            let mut count = 0;
            for h in 1..=2000u64 {
                let hn = nat(h);
                let factors = arith::factorize(&hn).map_err(err)?;
                for k in all_results(g, &hn)? {
                    count += 1;
                    for group in [&k.even, &k.odd] {
                        let exponent = group
                            .invariant_factors()
                            .last()
                            .cloned()
                            .unwrap_or_else(Nat::one);
                        check(group.is_finite() && (&hn % &exponent).is_zero(), || {
                            format!(
                                "{g} h = {h} ({}): {group} has exponent not dividing h",
                                k.route
                            )
                        })?;
                        if h == 1 {
                            check(group.is_trivial(), || {
                                format!("{g} h = 1 ({}): {group}", k.route)
                            })?;
                        }
                        if let [(p, _)] = factors.as_slice() {
                            check(group.is_p_primary(p), || {
                                format!("{g} h = {h} ({}): {group} not {p}-primary", k.route)
                            })?;
                        }
                    }
                }
            }
            Ok(count)
        })
        .collect::<Result<Vec<usize>, String>>()?
        .into_iter()
        .sum();
    Ok(format!(
        "generic: exponent | h, h = 1 trivial, prime-power h gives p-primary; {total} results over {} groups, h <= 2000",
        groups.len()
    ))
}

fn criterion_9() -> Outcome {
    let matrices = common::random_matrices(0x5eed, 500, 6, 9, true);
    for (idx, m) in matrices.iter().enumerate() {
        let det = m.determinant();
        let coker = cokernel(m);
        if det.is_zero() {
            check(!coker.is_finite(), || {
                format!("matrix {idx}: singular but cokernel {coker}")
            })?;
        } else {
            let order = coker.order().map_err(err)?;
            check(Int::from(order.clone()) == det.abs(), || {
                format!("matrix {idx}: |det| {det} vs order {order}")
            })?;
        }
        let factors = smith_normal_form(m).invariant_factors();
        check(
            factors.windows(2).all(|w| w[1].is_multiple_of(&w[0])),
            || format!("matrix {idx}: chain broken {factors:?}"),
        )?;
        let oracle = common::invariant_factors_by_minors(m);
        check(factors == oracle, || {
            format!("matrix {idx}: SNF {factors:?} vs minors {oracle:?}")
        })?;
    }
    Ok("abelian: |det| = cokernel order, SNF chain and determinantal-divisor oracle on 500 seeded matrices".into())
}

fn main() -> ExitCode {
    let criteria: [(u32, fn() -> Outcome); 9] = [
        (1, criterion_1),
        (2, criterion_2),
        (3, criterion_3),
        (4, criterion_4),
        (5, criterion_5),
        (6, criterion_6),
        (7, criterion_7),
        (8, criterion_8),
        (9, criterion_9),
    ];
    let mut failed = 0;
    for (n, run) in criteria {
        match run() {
            Ok(msg) => println!("criterion {n}: PASS  {msg}"),
            Err(msg) => {
                failed += 1;
                println!("criterion {n}: FAIL  {msg}");
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
