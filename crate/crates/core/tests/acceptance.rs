//! Acceptance gate: one line per criterion, non-zero exit if any fails.
//!
//! Run with `cargo test -p declat-core --test acceptance`.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::*;
use declat_core::acts::{act_inf, act_sup, leq_dominance, leq_exp, leq_on_join, leq_on_meet, leq_valued};
use declat_core::allais::{
    allais_thresholds, exp_ratio, intrinsic_exp, intrinsic_ratio, is_order_embedding_check, scaling_invariance_check,
};
use declat_core::lotteries::{act_to_lottery, lottery_to_act};
use declat_core::oracle::{
    brute_partition_bounds, find_blacktriangle_nontransitivity, uniform_valuation, verify_act_bound, verify_downgrade,
    verify_upgrade, BoundMode, SearchBudget,
};
use declat_core::rational::format_decimal;
use declat_core::{AffineMap, AllaisInstance, Lottery, Partition, PartitionBudget, Rational};
use rand::Rng;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn r(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

fn part(l: &declat_core::Lattice, blocks: &[&[&str]]) -> Partition {
    Partition::new(l, blocks.iter().map(|b| l.element_from_names(b).unwrap())).unwrap()
}

fn partition_counts() -> Outcome {
    let counts: Vec<usize> = (1..=5).map(|n| all_partitions(&powerset(n)).len()).collect();
    ensure(counts == [1, 2, 5, 15, 52], || format!("got {counts:?}"))?;
    Ok(format!("{counts:?}"))
}

fn figure() -> Outcome {
    let l = declat_core::Lattice::boolean(&["a", "b", "c", "d", "e"]).unwrap();
    let e = part(&l, &[&["a", "c"], &["b"], &["e", "d"]]);
    let d = part(&l, &[&["a", "b"], &["c"], &["e", "d"]]);
    let meet = e.meet(&d).unwrap();
    let join = e.join(&d).unwrap();
    ensure(meet == part(&l, &[&["a"], &["b"], &["c"], &["e", "d"]]), || {
        format!("meet {meet:?}")
    })?;
    ensure(join == part(&l, &[&["a", "b", "c"], &["e", "d"]]), || {
        format!("join {join:?}")
    })?;
    let (glb, lub) = brute_partition_bounds(&e, &d, PartitionBudget::default()).map_err(|e| e.to_string())?;
    ensure(glb == meet && lub == join, || {
        format!("brute force gave {glb:?}, {lub:?}")
    })?;
    Ok(format!("meet {meet:?}, join {join:?}"))
}

fn partition_lattice_oracle() -> Outcome {
    let l = powerset(4);
    let all = all_partitions(&l);
    let top = Partition::top(&l).unwrap();
    let bottom = Partition::new(&l, l.atoms().unwrap()).unwrap();
    let mut pairs = 0;
    for a in &all {
        ensure(a.is_finer_than(a).unwrap(), || format!("{a:?} not reflexive"))?;
        ensure(a.is_finer_than(&top).unwrap(), || format!("{a:?} not below top"))?;
        ensure(bottom.is_finer_than(a).unwrap(), || format!("{a:?} not above atoms"))?;
        for b in &all {
            pairs += 1;
            let (glb, lub) = brute_partition_bounds(a, b, PartitionBudget::default()).map_err(|e| e.to_string())?;
            ensure(a.meet(b).unwrap() == glb, || format!("meet of {a:?}, {b:?}"))?;
            ensure(a.join(b).unwrap() == lub, || format!("join of {a:?}, {b:?}"))?;
            if a.is_finer_than(b).unwrap() && b.is_finer_than(a).unwrap() {
                ensure(a == b, || format!("antisymmetry at {a:?}, {b:?}"))?;
            }
            for c in &all {
                if a.is_finer_than(b).unwrap() && b.is_finer_than(c).unwrap() {
                    ensure(a.is_finer_than(c).unwrap(), || {
                        format!("transitivity at {a:?} {b:?} {c:?}")
                    })?;
                }
            }
        }
    }
    ensure(all.len() == 15 && pairs == 225, || format!("{} partitions", all.len()))?;
    Ok(format!("{pairs} pairs agree"))
}

#[derive(Default)]
struct Tally {
    cases: usize,
    valued_hits: usize,
    meet_hits: usize,
    join_hits: usize,
}

fn theorem_suite() -> Outcome {
    let mut rng = rng(2024);
    let mut t = Tally::default();
    for case in 0..1000 {
        let inst = Instance::random(&mut rng, 4);
        let v = &inst.v;
        let ctx = |what: &str| format!("case {case}: {what}");
        let d = inst.partition(&mut rng);
        let e = inst.partition(&mut rng);
        let beta = act(&mut rng, &d);
        let other = act(&mut rng, &d);
        let alpha = act(&mut rng, &e);

        // same-domain: valued order is dominance, and so are both ◁ and ◀
        let dom = leq_dominance(&other, &beta).unwrap();
        ensure(leq_valued(&other, &beta, v).unwrap() == dom, || {
            ctx("same-domain valued vs dominance")
        })?;
        ensure(leq_on_meet(&other, &beta, v).unwrap() == dom, || {
            ctx("same-domain ◁ vs dominance")
        })?;
        ensure(leq_on_join(&other, &beta, v).unwrap() == dom, || {
            ctx("same-domain ◀ vs dominance")
        })?;

        // identity lemma
        ensure(beta.downgrade(&d, v).unwrap() == beta, || {
            ctx("downgrade to own domain")
        })?;
        ensure(beta.upgrade(&d, v).unwrap() == beta, || ctx("upgrade to own domain"))?;

        // a guaranteed ⪯_v pair: shrink the downgrade onto a finer partition
        let fine = finer(&mut rng, &inst, &d);
        let below = shrink(&mut rng, &beta.downgrade(&fine, v).unwrap());
        let finest = finer(&mut rng, &inst, &fine);
        let gamma = shrink(&mut rng, &below.downgrade(&finest, v).unwrap());
        for (x, y) in [
            (&below, &beta),
            (&gamma, &below),
            (&alpha, &beta),
            (&beta, &alpha),
            (&other, &beta),
        ] {
            let le = leq_valued(x, y, v).unwrap();
            let on_meet = leq_on_meet(x, y, v).unwrap();
            let on_join = leq_on_join(x, y, v).unwrap();
            let comparable = x.partition().is_finer_than(y.partition()).unwrap();
            // definitional forms of ◁ and ◀
            let z = x.partition().meet(y.partition()).unwrap();
            let pointwise = leq_dominance(&x.downgrade(&z, v).unwrap(), &y.downgrade(&z, v).unwrap()).unwrap();
            ensure(on_meet == pointwise, || ctx("◁ against downgrades"))?;
            let w = x.partition().join(y.partition()).unwrap();
            let pointwise = leq_dominance(&x.upgrade(&w, v).unwrap(), &y.upgrade(&w, v).unwrap()).unwrap();
            ensure(on_join == pointwise, || ctx("◀ against upgrades"))?;
            if le {
                t.valued_hits += 1;
                ensure(leq_exp(x, y, v).unwrap(), || ctx("valued order implies exp order"))?;
                ensure(on_meet, || ctx("valued order implies ◁"))?;
                ensure(on_join, || ctx("valued order implies ◀"))?;
            }
            if on_meet && comparable {
                t.meet_hits += 1;
                ensure(le, || ctx("◁ on a refinement implies valued order"))?;
            }
            if on_join && comparable {
                t.join_hits += 1;
                ensure(le, || ctx("◀ on a refinement implies valued order"))?;
            }
        }

        // partial order axioms
        ensure(leq_valued(&alpha, &alpha, v).unwrap(), || ctx("reflexivity"))?;
        ensure(leq_valued(&gamma, &beta, v).unwrap(), || {
            ctx("transitivity along a chain")
        })?;
        for (x, y, z) in [
            (&gamma, &below, &beta),
            (&alpha, &beta, &other),
            (&other, &beta, &alpha),
        ] {
            if leq_valued(x, y, v).unwrap() && leq_valued(y, z, v).unwrap() {
                ensure(leq_valued(x, z, v).unwrap(), || ctx("transitivity"))?;
            }
        }
        for (x, y) in [(&alpha, &beta), (&other, &beta), (&below, &beta)] {
            if leq_valued(x, y, v).unwrap() && leq_valued(y, x, v).unwrap() {
                ensure(x == y, || ctx("antisymmetry"))?;
            }
        }
        t.cases += 1;
    }
    Ok(format!(
        "{} cases; {} valued pairs, {} ◁ and {} ◀ on refinements",
        t.cases, t.valued_hits, t.meet_hits, t.join_hits
    ))
}

fn act_lattice_suite() -> Outcome {
    let mut rng = rng(4048);
    let budget = SearchBudget::default();
    let mut rivals = 0;
    let cases = 200;
    for case in 0..cases {
        let inst = Instance::random(&mut rng, 4);
        let v = &inst.v;
        let ctx = |what: &str| format!("case {case}: {what}");
        let (e, d, f) = (
            inst.partition(&mut rng),
            inst.partition(&mut rng),
            inst.partition(&mut rng),
        );
        let (a, b, c) = (act(&mut rng, &e), act(&mut rng, &d), act(&mut rng, &f));
        let inf = act_inf(&a, &b, v).unwrap();
        let sup = act_sup(&a, &b, v).unwrap();

        ensure(
            leq_valued(&inf, &a, v).unwrap() && leq_valued(&inf, &b, v).unwrap(),
            || ctx("inf is a lower bound"),
        )?;
        ensure(
            leq_valued(&a, &sup, v).unwrap() && leq_valued(&b, &sup, v).unwrap(),
            || ctx("sup is an upper bound"),
        )?;

        let report = verify_act_bound(&a, &b, v, &inf, BoundMode::Inf, &budget).unwrap();
        ensure(report.holds(), || ctx(&format!("inf beaten by {:?}", report.beaten_by)))?;
        rivals += report.rivals_checked;
        let report = verify_act_bound(&a, &b, v, &sup, BoundMode::Sup, &budget).unwrap();
        ensure(report.holds(), || ctx(&format!("sup beaten by {:?}", report.beaten_by)))?;
        rivals += report.rivals_checked;

        ensure(inf == act_inf(&b, &a, v).unwrap(), || ctx("inf commutes"))?;
        ensure(sup == act_sup(&b, &a, v).unwrap(), || ctx("sup commutes"))?;
        ensure(
            act_inf(&a, &a, v).unwrap() == a && act_sup(&a, &a, v).unwrap() == a,
            || ctx("idempotence"),
        )?;
        ensure(act_inf(&a, &sup, v).unwrap() == a, || ctx("inf absorbs sup"))?;
        ensure(act_sup(&a, &inf, v).unwrap() == a, || ctx("sup absorbs inf"))?;
        ensure(
            act_inf(&inf, &c, v).unwrap() == act_inf(&a, &act_inf(&b, &c, v).unwrap(), v).unwrap(),
            || ctx("inf associates"),
        )?;
        ensure(
            act_sup(&sup, &c, v).unwrap() == act_sup(&a, &act_sup(&b, &c, v).unwrap(), v).unwrap(),
            || ctx("sup associates"),
        )?;

        let meet = e.meet(&d).unwrap();
        let via_meet = act_inf(&a.downgrade(&meet, v).unwrap(), &b.downgrade(&meet, v).unwrap(), v).unwrap();
        ensure(inf == via_meet, || ctx("inf through downgrades to the meet"))?;
        let join = e.join(&d).unwrap();
        let via_join = act_sup(&a.upgrade(&join, v).unwrap(), &b.upgrade(&join, v).unwrap(), v).unwrap();
        ensure(sup == via_join, || ctx("sup through upgrades to the join"))?;

        let fine = finer(&mut rng, &inst, &d);
        let report = verify_downgrade(&b, &fine, v, &budget).unwrap();
        ensure(report.holds(), || {
            ctx(&format!("downgrade beaten by {:?}", report.beaten_by))
        })?;
        rivals += report.rivals_checked;
        let coarse = coarser(&mut rng, &inst, &d);
        let report = verify_upgrade(&b, &coarse, v, &budget).unwrap();
        ensure(report.holds(), || {
            ctx(&format!("upgrade beaten by {:?}", report.beaten_by))
        })?;
        rivals += report.rivals_checked;
    }
    Ok(format!("{cases} cases, {rivals} grid rivals"))
}

fn lottery_round_trips() -> Outcome {
    let mut rng = rng(77);
    let cases = 1000;
    for case in 0..cases {
        let inst = Instance::random(&mut rng, 5);
        let p = inst.partition(&mut rng);
        let a = act(&mut rng, &p);
        let lottery = act_to_lottery(&a, &inst.v).map_err(|e| e.to_string())?;
        ensure(lottery.expected_value() == a.expected_value(&inst.v).unwrap(), || {
            format!("case {case}: act to lottery")
        })?;

        let k = rng.gen_range(1..=5);
        let mut weights: Vec<u32> = (0..k).map(|_| rng.gen_range(0..=6)).collect();
        weights[0] += 1;
        let total: u32 = weights.iter().sum();
        let entries = weights
            .iter()
            .enumerate()
            .map(|(i, &w)| (r(i as i64 * 3 - 2, 2), r(w.into(), total.into())));
        let l = Lottery::new(entries).map_err(|e| e.to_string())?;
        for prune in [false, true] {
            let built = lottery_to_act(&l, prune).map_err(|e| e.to_string())?;
            ensure(
                built.act.expected_value(&built.valuation).unwrap() == l.expected_value(),
                || format!("case {case}: lottery to act"),
            )?;
        }
        let built = lottery_to_act(&l, false).unwrap();
        ensure(act_to_lottery(&built.act, &built.valuation).unwrap() == l, || {
            format!("case {case}: bijection round trip")
        })?;
    }
    Ok(format!("{cases} cases each way"))
}

fn allais() -> Outcome {
    let a = AllaisInstance::dollars();
    let exp = a.expected_values();
    let intrinsic = a.intrinsic_values();
    let want_exp = [500_000, 695_000, 55_000, 250_000].map(|n| r(n, 1));
    let want_int = [r(1, 3), r(139, 600), r(11, 200), r(1, 10)];
    ensure(exp == want_exp, || format!("expected values {exp:?}"))?;
    ensure(intrinsic == want_int, || format!("intrinsic values {intrinsic:?}"))?;
    ensure(intrinsic[0] > intrinsic[1], || "intrinsic does not prefer alpha".into())?;
    ensure(intrinsic[3] > intrinsic[2], || "intrinsic does not prefer beta'".into())?;
    ensure(exp_ratio() == r(11, 10) && intrinsic_ratio() == r(167, 70), || {
        "threshold constants".into()
    })?;
    let printed = format_decimal(&intrinsic_ratio(), 4);
    ensure(printed == "2.3857", || format!("167/70 rounds to {printed}"))?;
    let t = allais_thresholds(&a.x, &a.y).unwrap();
    ensure(t.exp_prefers_alpha_prime && t.intrinsic_prefers_alpha, || {
        format!("{t:?}")
    })?;
    let show = |xs: &[Rational]| xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ");
    Ok(format!(
        "exp [{}], intrinsic [{}], ratio {printed}",
        show(&exp),
        show(&intrinsic)
    ))
}

fn affine_embedding() -> Outcome {
    let mut rng = rng(99);
    let mut pairs = Vec::new();
    let mut checked = 0;
    for case in 0..1000 {
        let inst = Instance::random(&mut rng, 4);
        let (e, d) = (inst.partition(&mut rng), inst.partition(&mut rng));
        let x = act(&mut rng, &e);
        let y = if rng.gen_bool(0.5) {
            act(&mut rng, &e)
        } else {
            act(&mut rng, &d)
        };
        let map = AffineMap::new(payoff(&mut rng) + r(1, 7), payoff(&mut rng) - r(3, 1)).unwrap();
        pairs.clear();
        pairs.push((x.clone(), y));
        let report = is_order_embedding_check(&map, &pairs, &inst.v).unwrap();
        ensure(report.holds(), || format!("case {case}: {report:?}"))?;
        checked += report.pairs_checked;
        if x.payoffs().iter().sum::<Rational>() > Rational::from_integer(0.into()) {
            let h = payoff(&mut rng) + r(1, 3);
            let s = scaling_invariance_check(&h, &x, &inst.v).unwrap();
            ensure(s.invariant(), || format!("case {case}: scaling {s:?}"))?;
        }
    }
    let a = AllaisInstance::dollars();
    let shift = AffineMap::new(r(1, 1), r(1_000_000, 1)).unwrap();
    let before = intrinsic_exp(&a.alpha_prime, &a.valuation).unwrap();
    let after = intrinsic_exp(&shift.apply_act(&a.alpha_prime), &a.valuation).unwrap();
    ensure(before != after, || "shift left intrinsic value unchanged".into())?;
    Ok(format!(
        "{checked} pairs; shift by 10^6 moves alpha' from {before} to {after}"
    ))
}

fn blacktriangle_nontransitivity() -> Outcome {
    let l = powerset(4);
    let v = uniform_valuation(&l).unwrap();
    let w = find_blacktriangle_nontransitivity(&l, &v, &SearchBudget::default())
        .map_err(|e| e.to_string())?
        .ok_or_else(|| "no witness under the default budget".to_string())?;
    ensure(w.validates(&v), || format!("witness does not validate: {w:?}"))?;
    ensure(
        leq_on_join(&w.alpha, &w.beta, &v).unwrap()
            && leq_on_join(&w.beta, &w.gamma, &v).unwrap()
            && !leq_on_join(&w.alpha, &w.gamma, &v).unwrap(),
        || "relations".into(),
    )?;
    Ok(format!("[{:?}] ◀ [{:?}] ◀ [{:?}]", w.alpha, w.beta, w.gamma))
}

fn subalgebras() -> Outcome {
    let mut rng = rng(5);
    let mut sampled = 0;
    for _ in 0..200 {
        let inst = Instance::random(&mut rng, 5);
        let p = inst.partition(&mut rng);
        let sub = p.generated_subalgebra();
        ensure(sub.len() == 1 << p.len(), || format!("|[{p:?}]| = {}", sub.len()))?;
        let l = &inst.lattice;
        for &x in &sub {
            let c = l
                .complement(x)
                .unwrap()
                .ok_or_else(|| format!("{} has no complement", l.describe(x)))?;
            ensure(sub.contains(&c), || format!("[{p:?}] not closed under complement"))?;
            for &y in &sub {
                ensure(sub.contains(&l.meet(x, y).unwrap()), || {
                    format!("[{p:?}] not meet-closed")
                })?;
                ensure(sub.contains(&l.join(x, y).unwrap()), || {
                    format!("[{p:?}] not join-closed")
                })?;
            }
        }
        sampled += 1;
    }
    let mut pairs = 0;
    for n in 1..=4 {
        let all = all_partitions(&powerset(n));
        for e in &all {
            let se = e.generated_subalgebra();
            for d in &all {
                let contained = d.generated_subalgebra().iter().all(|x| se.contains(x));
                ensure(e.is_finer_than(d).unwrap() == contained, || format!("{e:?} vs {d:?}"))?;
                pairs += 1;
            }
        }
    }
    Ok(format!("{sampled} sampled subalgebras, {pairs} refinement pairs"))
}

struct Criterion {
    id: u8,
    name: &'static str,
    limit: Option<Duration>,
    run: fn() -> Outcome,
}

fn main() -> ExitCode {
    let criteria = [
        Criterion {
            id: 1,
            name: "partition counts",
            limit: Some(Duration::from_secs(5)),
            run: partition_counts,
        },
        Criterion {
            id: 2,
            name: "five-point figure",
            limit: None,
            run: figure,
        },
        Criterion {
            id: 3,
            name: "partition lattice oracle",
            limit: Some(Duration::from_secs(10)),
            run: partition_lattice_oracle,
        },
        Criterion {
            id: 4,
            name: "theorem suite",
            limit: None,
            run: theorem_suite,
        },
        Criterion {
            id: 5,
            name: "act lattice suite",
            limit: None,
            run: act_lattice_suite,
        },
        Criterion {
            id: 6,
            name: "lottery round trips",
            limit: None,
            run: lottery_round_trips,
        },
        Criterion {
            id: 7,
            name: "allais reproduction",
            limit: None,
            run: allais,
        },
        Criterion {
            id: 8,
            name: "affine embedding",
            limit: None,
            run: affine_embedding,
        },
        Criterion {
            id: 9,
            name: "◀ non-transitivity",
            limit: Some(Duration::from_secs(30)),
            run: blacktriangle_nontransitivity,
        },
        Criterion {
            id: 10,
            name: "generated subalgebras",
            limit: None,
            run: subalgebras,
        },
    ];
    let mut failed = 0;
    for c in criteria {
        let start = Instant::now();
        let mut outcome = (c.run)();
        let elapsed = start.elapsed();
        if let (Ok(_), Some(limit)) = (&outcome, c.limit) {
            if elapsed > limit {
                outcome = Err(format!("took {elapsed:.2?}, limit {limit:?}"));
            }
        }
        match outcome {
            Ok(detail) => println!("PASS  {:>2} {:<26} {:>9.2?}  {detail}", c.id, c.name, elapsed),
            Err(why) => {
                failed += 1;
                println!("FAIL  {:>2} {:<26} {:>9.2?}  {why}", c.id, c.name, elapsed);
            }
        }
    }
    println!("{} of 10 criteria passed", 10 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
