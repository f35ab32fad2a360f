use std::fmt::Write as _;

use declat_core::acts::{compare, DomainRelation, Verdict};
use declat_core::allais::{intrinsic_exp, total, AllaisInstance};
use declat_core::lotteries::{act_to_lottery, lottery_to_act};
use declat_core::oracle::{find_blacktriangle_nontransitivity, uniform_valuation, SearchBudget};
use declat_core::{Lattice, Lottery, Partition, PartitionBudget, Rational};
use serde_json::{json, Value};

use crate::doc::Problem;
use crate::error::CliError;
use crate::report::{act_json, act_text, verdict_json, verdict_text, Fmt, Output};

pub fn validate(p: &Problem, fmt: Fmt) -> Output {
    let l = &p.lattice;
    let mut text = format!(
        "lattice: {:?}, {} points ({}), {} elements\n",
        l.kind(),
        l.points().len(),
        l.points().join(", "),
        l.len()
    );
    let mut vals = Vec::new();
    for (name, v) in &p.valuations {
        let flags: Vec<&str> = [
            (v.is_bounded(), "bounded"),
            (v.is_additive(), "additive"),
            (v.is_isotone(), "isotone"),
            (v.is_strictly_isotone(), "strictly isotone"),
        ]
        .into_iter()
        .filter_map(|(on, s)| on.then_some(s))
        .collect();
        writeln!(text, "valuation {name}: modular; {}", flags.join(", ")).unwrap();
        vals.push(json!({
            "name": name,
            "bounded": v.is_bounded(),
            "additive": v.is_additive(),
            "isotone": v.is_isotone(),
            "strictly_isotone": v.is_strictly_isotone(),
        }));
    }
    for (name, np) in &p.partitions {
        writeln!(text, "partition {name}: {}", np.partition.describe()).unwrap();
    }
    for (name, a) in &p.acts {
        writeln!(text, "act {name} on {}: {}", a.partition().describe(), act_text(a, fmt)).unwrap();
    }
    for (name, lot) in &p.lotteries {
        writeln!(
            text,
            "lottery {name}: {} rewards, expected value {}",
            lot.len(),
            fmt.text(&lot.expected_value())
        )
        .unwrap();
    }
    text.push_str("ok\n");
    let json = json!({
        "lattice": { "kind": format!("{:?}", l.kind()), "points": l.points(), "elements": l.len() },
        "valuations": vals,
        "partitions": p.partitions.iter().map(|(n, np)| json!({"name": n, "blocks": np.partition.describe()})).collect::<Vec<_>>(),
        "acts": p.acts.iter().map(|(n, a)| json!({"name": n, "payoffs": act_json(a, fmt)})).collect::<Vec<_>>(),
        "lotteries": p.lotteries.iter().map(|(n, l)| json!({"name": n, "expected_value": fmt.json(&l.expected_value())})).collect::<Vec<_>>(),
        "valid": true,
    });
    Output { text, json }
}

pub fn compare_acts(
    p: &Problem,
    left: &str,
    right: &str,
    valuation: Option<&str>,
    fmt: Fmt,
) -> Result<Output, CliError> {
    let (a, b) = (p.act(left)?, p.act(right)?);
    let (vname, v) = p.valuation(valuation)?;
    let r = compare(a, b, v).map_err(|e| CliError::core("compare", e))?;
    let l = &p.lattice;
    let domains = match r.domains {
        DomainRelation::Equal => "equal",
        DomainRelation::Finer => "left finer",
        DomainRelation::Coarser => "left coarser",
        DomainRelation::Incomparable => "incomparable",
    };
    let mut text = String::new();
    writeln!(text, "{left} on {}: {}", a.partition().describe(), act_text(a, fmt)).unwrap();
    writeln!(text, "{right} on {}: {}", b.partition().describe(), act_text(b, fmt)).unwrap();
    writeln!(text, "valuation: {vname}").unwrap();
    writeln!(text, "exp({left}) = {}", fmt.text(&r.exp_left)).unwrap();
    writeln!(text, "exp({right}) = {}", fmt.text(&r.exp_right)).unwrap();
    writeln!(text, "domains: {domains}").unwrap();

    let dominance = |v: &Verdict| match v {
        Verdict::Undefined(declat_core::Error::DomainMismatch) => "undefined (different domains)".to_string(),
        other => verdict_text(other, l, fmt, ""),
    };
    let valued = |v: &Verdict| match (v, r.domains) {
        (Verdict::Fails(declat_core::acts::Failure::NotARefinement), DomainRelation::Incomparable) => {
            "false (domains incomparable)".to_string()
        }
        (other, _) => verdict_text(other, l, fmt, " within "),
    };
    let rows: [(&str, String, String); 5] = [
        (
            "dominance",
            dominance(&r.dominance.forward),
            dominance(&r.dominance.backward),
        ),
        ("exp", r.exp.forward.to_string(), r.exp.backward.to_string()),
        ("valued", valued(&r.valued.forward), valued(&r.valued.backward)),
        (
            "on-meet (◁)",
            verdict_text(&r.on_meet.forward, l, fmt, " ∧ "),
            verdict_text(&r.on_meet.backward, l, fmt, " ∧ "),
        ),
        (
            "on-join (◀)",
            verdict_text(&r.on_join.forward, l, fmt, ""),
            verdict_text(&r.on_join.backward, l, fmt, ""),
        ),
    ];
    writeln!(text, "{:<13} {left} ≤ {right}", "relation").unwrap();
    for (name, fwd, _) in &rows {
        writeln!(text, "{name:<13} {fwd}").unwrap();
    }
    writeln!(text, "{:<13} {right} ≤ {left}", "relation").unwrap();
    for (name, _, bwd) in &rows {
        writeln!(text, "{name:<13} {bwd}").unwrap();
    }

    let both = |d: &declat_core::acts::Directed<Verdict>| json!({ "forward": verdict_json(&d.forward, l, fmt), "backward": verdict_json(&d.backward, l, fmt) });
    let json = json!({
        "left": { "name": left, "payoffs": act_json(a, fmt), "expected_value": fmt.json(&r.exp_left) },
        "right": { "name": right, "payoffs": act_json(b, fmt), "expected_value": fmt.json(&r.exp_right) },
        "valuation": vname,
        "domains": domains,
        "dominance": both(&r.dominance),
        "exp": { "forward": r.exp.forward, "backward": r.exp.backward },
        "valued": both(&r.valued),
        "on_meet": both(&r.on_meet),
        "on_join": both(&r.on_join),
    });
    Ok(Output { text, json })
}

pub fn partitions(lattice: &Lattice, list: bool, max_partitions: u64) -> Result<Output, CliError> {
    let budget = PartitionBudget {
        max_partitions,
        ..PartitionBudget::default()
    };
    let iter = Partition::enumerate(lattice, budget).map_err(|e| CliError::core("partitions", e))?;
    let mut count = 0usize;
    let mut names = Vec::new();
    for p in iter {
        let p = p.map_err(|e| CliError::core("partitions", e))?;
        count += 1;
        if list {
            names.push(p.describe());
        }
    }
    let mut text = String::new();
    for n in &names {
        writeln!(text, "{n}").unwrap();
    }
    writeln!(text, "{count} partitions").unwrap();
    let mut json = json!({ "count": count });
    if list {
        json["partitions"] = json!(names);
    }
    Ok(Output { text, json })
}

pub fn lattice_op(p: &Problem, meet: bool, left: &str, right: &str) -> Result<Output, CliError> {
    let (e, d) = (p.partition(left)?, p.partition(right)?);
    let (op, r) = if meet { ("meet", e.meet(d)) } else { ("join", e.join(d)) };
    let r = r.map_err(|err| CliError::core(op, err))?;
    let text = format!("{op}({}, {}) = {}\n", e.describe(), d.describe(), r.describe());
    let json = json!({ "op": op, "left": e.describe(), "right": d.describe(), "result": r.describe() });
    Ok(Output { text, json })
}

pub fn expected(
    p: &Problem,
    act: &str,
    valuation: Option<&str>,
    intrinsic: bool,
    fmt: Fmt,
) -> Result<Output, CliError> {
    let a = p.act(act)?;
    let (vname, v) = p.valuation(valuation)?;
    let exp = a.expected_value(v).map_err(|e| CliError::core("expected", e))?;
    let mut text = format!("exp({act}, {vname}) = {}\n", fmt.text(&exp));
    let mut json = json!({ "act": act, "valuation": vname, "expected_value": fmt.json(&exp) });
    if intrinsic {
        let t = total(a);
        let i = intrinsic_exp(a, v).map_err(|e| CliError::invalid(format!("act `{act}`"), e))?;
        writeln!(text, "total({act}) = {}", fmt.text(&t)).unwrap();
        writeln!(text, "intrinsic({act}, {vname}) = {}", fmt.text(&i)).unwrap();
        json["total"] = fmt.json(&t);
        json["intrinsic"] = fmt.json(&i);
    }
    Ok(Output { text, json })
}

fn lottery_parts(lot: &Lottery, fmt: Fmt) -> (String, Value) {
    let text = lot
        .iter()
        .map(|(z, q)| format!("  {} with probability {}", fmt.text(z), fmt.text(q)))
        .collect::<Vec<_>>()
        .join("\n");
    let json = Value::Array(
        lot.iter()
            .map(|(z, q)| json!({"reward": fmt.json(z), "probability": fmt.json(q)}))
            .collect(),
    );
    (text, json)
}

pub fn lottery_to_act_cmd(p: &Problem, name: &str, prune_zero: bool, fmt: Fmt) -> Result<Output, CliError> {
    let lot = p.lottery(name)?;
    let built = lottery_to_act(lot, prune_zero).map_err(|e| CliError::invalid(format!("lottery `{name}`"), e))?;
    let exp = built.act.expected_value(&built.valuation).expect("same lattice");
    let weights: Vec<(String, Rational)> = built
        .partition
        .blocks()
        .map(|b| {
            (
                built.lattice.describe(b),
                built.valuation.value(b).expect("same lattice").clone(),
            )
        })
        .collect();
    let mut text = format!("lattice: atoms {}\n", built.lattice.points().join(", "));
    for (b, w) in &weights {
        writeln!(text, "weight {b} = {}", fmt.text(w)).unwrap();
    }
    writeln!(text, "act: {}", act_text(&built.act, fmt)).unwrap();
    writeln!(
        text,
        "expected value {} (lottery {})",
        fmt.text(&exp),
        fmt.text(&lot.expected_value())
    )
    .unwrap();
    let json = json!({
        "lottery": name,
        "atoms": built.lattice.points(),
        "weights": weights.iter().map(|(b, w)| json!({"atom": b, "weight": fmt.json(w)})).collect::<Vec<_>>(),
        "payoffs": act_json(&built.act, fmt),
        "expected_value": fmt.json(&exp),
    });
    Ok(Output { text, json })
}

pub fn act_to_lottery_cmd(p: &Problem, name: &str, valuation: Option<&str>, fmt: Fmt) -> Result<Output, CliError> {
    let a = p.act(name)?;
    let (vname, v) = p.valuation(valuation)?;
    let lot = act_to_lottery(a, v).map_err(|e| CliError::invalid(format!("valuation `{vname}`"), e))?;
    let (body, entries) = lottery_parts(&lot, fmt);
    let text = format!(
        "lottery of {name} under {vname}:\n{body}\nexpected value {}\n",
        fmt.text(&lot.expected_value())
    );
    let json = json!({ "act": name, "valuation": vname, "lottery": entries, "expected_value": fmt.json(&lot.expected_value()) });
    Ok(Output { text, json })
}

pub fn allais(x: Rational, y: Rational, fmt: Fmt) -> Result<Output, CliError> {
    let inst = AllaisInstance::new(x, y).map_err(|e| CliError::invalid("allais", e))?;
    let exp = inst.expected_values();
    let intrinsic = inst.intrinsic_values();
    let t = inst.thresholds();
    let mut text = format!(
        "x = {}, y = {}, state weights 1/100, 1/10, 89/100\n",
        fmt.text(&inst.x),
        fmt.text(&inst.y)
    );
    let mut rows = Vec::new();
    for (i, (name, act)) in inst.acts().into_iter().enumerate() {
        let payoffs: Vec<String> = act.payoffs().iter().map(|z| fmt.text(z)).collect();
        writeln!(
            text,
            "{name:<7} ({})  exp {}  total {}  intrinsic {}",
            payoffs.join(", "),
            fmt.text(&exp[i]),
            fmt.text(&total(act)),
            fmt.text(&intrinsic[i])
        )
        .unwrap();
        rows.push(json!({
            "act": name,
            "payoffs": act.payoffs().iter().map(|z| fmt.json(z)).collect::<Vec<_>>(),
            "expected_value": fmt.json(&exp[i]),
            "total": fmt.json(&total(act)),
            "intrinsic": fmt.json(&intrinsic[i]),
        }));
    }
    let pick = |better: bool, equal: bool, yes: &'static str, no: &'static str| {
        if equal {
            "indifferent"
        } else if better {
            yes
        } else {
            no
        }
    };
    let by_exp = pick(t.exp_prefers_alpha_prime, t.exp_indifferent, "alpha'", "alpha");
    let by_intrinsic = pick(t.intrinsic_prefers_alpha, t.intrinsic_indifferent, "alpha", "alpha'");
    writeln!(
        text,
        "expected value prefers {by_exp} (alpha' wins iff y > {}·x)",
        fmt.text(&t.exp_ratio)
    )
    .unwrap();
    writeln!(
        text,
        "intrinsic value prefers {by_intrinsic} (alpha wins iff y > {}·x)",
        fmt.text(&t.intrinsic_ratio)
    )
    .unwrap();
    let beta_exp = pick(exp[3] > exp[2], exp[3] == exp[2], "beta'", "beta");
    let beta = pick(
        intrinsic[3] > intrinsic[2],
        intrinsic[3] == intrinsic[2],
        "beta'",
        "beta",
    );
    writeln!(
        text,
        "between beta and beta': expected value prefers {beta_exp}, intrinsic value prefers {beta}"
    )
    .unwrap();
    let json = json!({
        "x": fmt.json(&inst.x),
        "y": fmt.json(&inst.y),
        "acts": rows,
        "exp_ratio": fmt.json(&t.exp_ratio),
        "intrinsic_ratio": fmt.json(&t.intrinsic_ratio),
        "exp_prefers": by_exp,
        "intrinsic_prefers": by_intrinsic,
        "exp_prefers_beta": beta_exp,
        "intrinsic_prefers_beta": beta,
    });
    Ok(Output { text, json })
}

pub fn counterexample(atoms: usize, seed: u64, trials: usize, fmt: Fmt) -> Result<Output, CliError> {
    let names: Vec<String> = (1..=atoms).map(|i| i.to_string()).collect();
    let lattice = Lattice::boolean(&names).map_err(|e| CliError::Usage(format!("--atoms: {e}")))?;
    let v = uniform_valuation(&lattice).map_err(|e| CliError::invalid("counterexample", e))?;
    let budget = SearchBudget {
        seed,
        max_trials: trials,
        max_atoms: atoms.max(SearchBudget::default().max_atoms),
        ..SearchBudget::default()
    };
    let found = find_blacktriangle_nontransitivity(&lattice, &v, &budget).map_err(|e| CliError::core("search", e))?;
    let w = found.ok_or_else(|| CliError::Budget(format!("no witness in {trials} trials with seed {seed}")))?;
    let text = format!(
        "uniform valuation on {atoms} atoms, seed {seed}\nalpha: {}\nbeta:  {}\ngamma: {}\nalpha ◀ beta, beta ◀ gamma, not alpha ◀ gamma\n",
        act_text(&w.alpha, fmt),
        act_text(&w.beta, fmt),
        act_text(&w.gamma, fmt)
    );
    let json = json!({
        "atoms": atoms,
        "seed": seed,
        "alpha": act_json(&w.alpha, fmt),
        "beta": act_json(&w.beta, fmt),
        "gamma": act_json(&w.gamma, fmt),
        "validated": w.validates(&v),
    });
    Ok(Output { text, json })
}
