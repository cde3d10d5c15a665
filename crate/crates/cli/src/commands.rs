use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::path::Path;

use fuscat_core::arith::ntheory::is_squarefree;
use fuscat_core::arith::rat;
use fuscat_core::based_ring::VerificationReport;
use fuscat_core::center::{
    self, Family, FamilyVerdict, Feasibility, K2SubCase, ScanReport, TwistCase,
};
use fuscat_core::codegree::{self, ClassificationReport, GateReport, Verdict};
use fuscat_core::cyclotomic::{self, MinRootsResult, Root, SearchStatus};
use fuscat_core::families::RBox;
use fuscat_core::{FusionRing, KParams, QuadVal, RParams};
use serde_json::{json, Value};

use crate::{
    exit, Command, Failure, FamilyCmd, MinrootsArgs, ObstructCmd, OrbitsArgs, Report, Table,
};

/// Largest order and multiset size searched without `--allow-large`.
const ORDER_LIMIT: u64 = 120;
const COUNT_LIMIT: usize = 10;

pub(crate) fn execute(cmd: &Command) -> Result<Report, Failure> {
    match cmd {
        Command::Verify { file } => verify(file),
        Command::Codegrees { file } => codegrees(file),
        Command::Family { which } => match which {
            FamilyCmd::K1 { e, emit } => family_member(Family::K1, *e, emit.as_deref()),
            FamilyCmd::K2 { c, emit } => family_member(Family::K2, *c, emit.as_deref()),
            FamilyCmd::R { x, y, g, d } => family_r(RParams::new(*x, *y, *g, *d)),
        },
        Command::Classify(a) => classify(RBox::new(a.xmax, a.ymax, a.gmax, a.dmax)),
        Command::Obstruct { which } => match which {
            ObstructCmd::K1 { max_e, twists } => obstruct(Family::K1, *max_e, *twists),
            ObstructCmd::K2 { max_c, twists } => obstruct(Family::K2, *max_c, *twists),
        },
        Command::Minroots(a) => minroots(a),
        Command::Orbits(a) => orbits(a),
    }
}

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report types serialize to plain JSON")
}

fn pass(b: bool) -> &'static str {
    if b {
        "PASS"
    } else {
        "FAIL"
    }
}

fn join<T: ToString>(xs: impl IntoIterator<Item = T>) -> String {
    xs.into_iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(", ")
}

fn read_ring(path: &Path) -> Result<(Vec<u8>, FusionRing), Failure> {
    let bytes = std::fs::read(path)
        .map_err(|e| Failure::BadInput(format!("cannot read {}: {e}", path.display())))?;
    let text = std::str::from_utf8(&bytes)
        .map_err(|_| Failure::BadInput(format!("{} is not UTF-8", path.display())))?;
    let ring = FusionRing::from_json(text).map_err(|e| Failure::BadInput(e.to_string()))?;
    Ok((bytes, ring))
}

fn write_axioms(out: &mut String, rep: &VerificationReport) {
    for a in rep.axioms.iter().chain(&rep.extended) {
        let _ = write!(out, "  {:<36} {}", a.name, pass(a.passed));
        if let Some(d) = &a.detail {
            let _ = write!(out, " ({d})");
        }
        out.push('\n');
    }
}

fn ring_summary(ring: &FusionRing) -> Value {
    json!({
        "rank": ring.rank(),
        "labels": ring.labels(),
        "dual": ring.dual(),
    })
}

// ------------------------------------------------------------- verify ----

fn verify(path: &Path) -> Result<Report, Failure> {
    let (bytes, ring) = read_ring(path)?;
    let rep = ring.verify();
    let mut result = ring_summary(&ring);
    result["verification"] = to_value(&rep);
    let mut text = format!(
        "rank {}, basis {}, duals {}\n",
        ring.rank(),
        join(ring.labels()),
        join(ring.dual().iter().map(|&d| ring.labels()[d].clone()))
    );
    write_axioms(&mut text, &rep);
    if rep.passed {
        text.push_str("based ring: yes\n");
        if let Ok(fp) = ring.fpdim() {
            let _ = writeln!(text, "FPdims: {}", join(&fp.dims));
            let _ = writeln!(text, "FPdim of the ring: {}", fp.total);
            result["fpdims"] = to_value(&fp.dims);
            result["fpdim_total"] = to_value(&fp.total);
        }
    } else {
        let _ = writeln!(text, "based ring: no (fails {})", join(rep.failed_axioms()));
    }
    Ok(Report {
        command: format!("verify {}", path.display()),
        input: bytes,
        result,
        text,
        table: None,
        assumptions: vec![],
        code: if rep.passed { exit::OK } else { exit::BAD_RING },
    })
}

// ---------------------------------------------------------- codegrees ----

fn gate_lines(out: &mut String, g: &GateReport) {
    let _ = writeln!(out, "all codegrees positive: {}", pass(g.all_positive));
    let _ = writeln!(
        out,
        "sum of reciprocals equals 1: {} (sum = {})",
        pass(g.reciprocal_sum_is_one),
        g.reciprocal_sum
    );
    let _ = writeln!(
        out,
        "sum of squared reciprocals at most (1 + 1/f1)/2: {} (sum = {}, bound = {}, slack = {})",
        pass(g.square_bound_holds),
        g.square_reciprocal_sum,
        g.square_bound,
        g.slack
    );
}

fn codegrees(path: &Path) -> Result<Report, Failure> {
    let (bytes, ring) = read_ring(path)?;
    let rep = ring.verify();
    if !rep.passed {
        return Err(Failure::BadInput(format!(
            "{} is not a based ring (fails {})",
            path.display(),
            join(rep.failed_axioms())
        )));
    }
    let set = ring
        .formal_codegrees()
        .map_err(|e| Failure::BadInput(e.to_string()))?;
    let gates =
        codegree::ostrik_gates(&set.values).map_err(|e| Failure::BadInput(e.to_string()))?;
    let mut text = format!("codegrees: {}\n", join(&set.values));
    let _ = writeln!(text, "characteristic polynomial: {}", set.source_poly);
    gate_lines(&mut text, &gates);
    let rows = set
        .values
        .iter()
        .enumerate()
        .map(|(i, v)| {
            vec![
                (i + 1).to_string(),
                v.a().to_string(),
                v.b().to_string(),
                v.c().to_string(),
                v.to_string(),
            ]
        })
        .collect();
    let mut result = ring_summary(&ring);
    result["codegrees"] = to_value(&set.values);
    result["characteristic_polynomial"] = json!(set.source_poly.to_string());
    result["gates"] = to_value(&gates);
    Ok(Report {
        command: format!("codegrees {}", path.display()),
        input: bytes,
        result,
        text,
        table: Some(Table {
            headers: vec!["index", "a", "b", "c", "value"],
            rows,
        }),
        assumptions: vec![],
        code: exit::OK,
    })
}

// ------------------------------------------------------------- family ----

fn family_member(family: Family, param: i64, emit: Option<&Path>) -> Result<Report, Failure> {
    let name = match family {
        Family::K1 => "e",
        Family::K2 => "c",
    };
    if param < 0 {
        return Err(Failure::Usage(format!("--{name} must be nonnegative")));
    }
    let kp = match family {
        Family::K1 => KParams::k1(param),
        Family::K2 => KParams::k2(param),
    };
    let ring = kp.build().map_err(|e| Failure::BadInput(e.to_string()))?;
    let rep = ring.verify();
    let mut command = format!("family {family} --{name} {param}");
    let mut result = json!({
        "member": kp.family_member().map(|m| m.to_string()),
        "k_params": to_value(&kp),
        "r_params": kp.to_r().ok().map(|r| to_value(&r)),
        "verification": to_value(&rep),
    });
    let mut text = format!(
        "{}: K(c, e, k, l, p, q) = K({})\n",
        kp.family_member()
            .map(|m| m.to_string())
            .unwrap_or_default(),
        join(kp.as_tuple())
    );
    match kp.to_r() {
        Ok(r) => {
            let _ = writeln!(
                text,
                "R(x, y, g, d) = R({}, {}, {}, {})",
                r.x, r.y, r.g, r.d
            );
        }
        Err(e) => {
            let _ = writeln!(text, "R(x, y, g, d): none ({e})");
        }
    }
    let _ = writeln!(
        text,
        "based ring: {}",
        if rep.passed { "yes" } else { "no" }
    );
    if let Ok(fp) = ring.fpdim() {
        let _ = writeln!(text, "FPdims: {}", join(&fp.dims));
        result["fpdims"] = to_value(&fp.dims);
        result["fpdim_total"] = to_value(&fp.total);
    }
    if let Ok(set) = ring.formal_codegrees() {
        let _ = writeln!(text, "codegrees: {}", join(&set.values));
        result["codegrees"] = to_value(&set.values);
    }
    if let Some(path) = emit {
        let mut body = ring.to_json();
        body.push('\n');
        std::fs::write(path, body)
            .map_err(|e| Failure::BadInput(format!("cannot write {}: {e}", path.display())))?;
        let _ = writeln!(text, "ring written to {}", path.display());
        let _ = write!(command, " --emit {}", path.display());
        result["emitted"] = json!(path.display().to_string());
    }
    Ok(Report {
        command,
        input: vec![],
        result,
        text,
        table: None,
        assumptions: vec![],
        code: if rep.passed { exit::OK } else { exit::BAD_RING },
    })
}

fn family_r(r: RParams) -> Result<Report, Failure> {
    let command = format!("family r --x {} --y {} --g {} --d {}", r.x, r.y, r.g, r.d);
    let mut text = format!("R({}, {}, {}, {})\n", r.x, r.y, r.g, r.d);
    let (result, code) = match r.to_k() {
        Ok(kp) => {
            let _ = writeln!(text, "K(c, e, k, l, p, q) = K({})", join(kp.as_tuple()));
            let _ = writeln!(text, "double root gamma = {}", r.gamma());
            if let Some(m) = kp.family_member() {
                let _ = writeln!(text, "family member: {m}");
            }
            let result = json!({
                "r_params": to_value(&r),
                "k_params": to_value(&kp),
                "gamma": r.gamma(),
                "structural": to_value(&r.structural()),
                "member": kp.family_member().map(|m| m.to_string()),
            });
            (result, exit::OK)
        }
        Err(e) => {
            let _ = writeln!(text, "not a valid quadruple: {e}");
            let result = json!({
                "r_params": to_value(&r),
                "check": to_value(&r.check()),
                "violation": e.to_string(),
            });
            (result, exit::BAD_RING)
        }
    };
    Ok(Report {
        command,
        input: vec![],
        result,
        text,
        table: None,
        assumptions: vec![],
        code,
    })
}

// ----------------------------------------------------------- classify ----

fn classify(b: RBox) -> Result<Report, Failure> {
    if b.is_empty() {
        return Err(Failure::Usage("box bounds must be nonnegative".into()));
    }
    let rep = codegree::classify_rank4(b);
    let ok = rep.matches_theorem();
    let mut result = to_value(&rep);
    result["matches_theorem"] = json!(ok);
    Ok(Report {
        command: format!(
            "classify --xmax {} --ymax {} --gmax {} --dmax {}",
            b.xmax, b.ymax, b.gmax, b.dmax
        ),
        input: vec![],
        result,
        text: classify_text(&rep, ok),
        table: Some(classify_table(&rep)),
        assumptions: vec![
            "an irreducible quadratic factor is only required to satisfy beta >= gamma^2".into(),
        ],
        code: if ok { exit::OK } else { exit::MISMATCH },
    })
}

fn classify_text(rep: &ClassificationReport, ok: bool) -> String {
    let b = rep.search_box;
    let mut t = format!(
        "box |x| <= {}, |y| <= {}, |g| <= {}, |d| <= {}\n",
        b.xmax, b.ymax, b.gmax, b.dmax
    );
    let _ = writeln!(t, "valid quadruples: {}", rep.enumerated);
    let _ = writeln!(
        t,
        "double root gamma = 2x^2 + y^2 + 2 of both characteristic polynomials: {}",
        pass(rep.all_double_roots_ok)
    );
    let _ = writeln!(
        t,
        "(x, y) = (+-1, +-2): {} candidates, {} rejected by det A = 4608g^2 + 1024g + 512 != 512",
        rep.gamma8_candidates, rep.gamma8_rejected_by_det
    );
    let _ = writeln!(t, "gamma = 12 witnesses: {}", rep.gamma12_witnesses.len());
    let rejected = rep
        .outcomes
        .iter()
        .filter(|o| matches!(o.verdict, Verdict::Rejected { .. }))
        .count();
    let _ = writeln!(t, "rejected: {rejected}");
    let _ = writeln!(t, "survivors: {}", join(&rep.survivors));
    for o in &rep.outcomes {
        if let Verdict::Survivor { member } = o.verdict {
            let _ = writeln!(
                t,
                "  R({}, {}, {}, {}) -> {member}, codegrees {}",
                o.r.x,
                o.r.y,
                o.r.g,
                o.r.d,
                join(&o.codegrees)
            );
        }
    }
    if rep.unexpected.is_empty() {
        t.push_str("unexpected survivors: none\n");
    } else {
        for r in &rep.unexpected {
            let _ = writeln!(
                t,
                "UNEXPECTED survivor R({}, {}, {}, {})",
                r.x, r.y, r.g, r.d
            );
        }
    }
    let _ = writeln!(
        t,
        "result: {}",
        if ok {
            "every survivor is K1(e) or K2(c)"
        } else {
            "MISMATCH with the classification"
        }
    );
    t
}

fn classify_table(rep: &ClassificationReport) -> Table {
    let rows = rep
        .outcomes
        .iter()
        .map(|o| {
            let (status, detail) = match &o.verdict {
                Verdict::Survivor { member } => ("survivor", member.to_string()),
                Verdict::Rejected { reasons } => ("rejected", reasons.join("; ")),
                Verdict::Unexpected => ("unexpected", String::new()),
            };
            let mut row: Vec<String> = [o.r.x, o.r.y, o.r.g, o.r.d]
                .iter()
                .map(i64::to_string)
                .collect();
            row.extend(o.k.as_tuple().iter().map(i64::to_string));
            row.push(o.gamma.to_string());
            row.push(status.into());
            row.push(detail);
            row
        })
        .collect();
    Table {
        headers: vec![
            "x", "y", "g", "d", "c", "e", "k", "l", "p", "q", "gamma", "status", "detail",
        ],
        rows,
    }
}

// ----------------------------------------------------------- obstruct ----

fn verdict_word(f: Feasibility) -> &'static str {
    match f {
        Feasibility::Feasible => "not ruled out",
        Feasibility::Infeasible => "ruled out",
    }
}

fn k2_case(v: &center::K2Verdict) -> &'static str {
    match v
        .cases
        .iter()
        .find(|c| c.twist == TwistCase::ThetaI)
        .and_then(|c| c.subcase)
    {
        Some(K2SubCase::TwiceSquare) => "twice_square",
        Some(K2SubCase::Other) => "other",
        None => "rational_d",
    }
}

/// Per-parameter record `{param, verdict, case, exact_values, flags, assumptions}`.
fn verdict_record(v: &FamilyVerdict) -> Value {
    let mut obj = match to_value(v) {
        Value::Object(m) => m,
        _ => unreachable!("verdicts serialize to objects"),
    };
    let case = match v {
        FamilyVerdict::K1(_) => obj
            .remove("case")
            .unwrap_or(Value::Null)
            .as_str()
            .map(str::to_owned),
        FamilyVerdict::K2(k) => Some(k2_case(k).to_owned()),
    };
    let mut rec = serde_json::Map::new();
    for key in ["param", "verdict", "flags", "assumptions"] {
        if let Some(x) = obj.remove(key) {
            rec.insert(key.into(), x);
        }
    }
    rec.insert("case".into(), json!(case));
    rec.insert("exact_values".into(), Value::Object(obj));
    Value::Object(rec)
}

fn verdict_line(v: &FamilyVerdict) -> String {
    match v {
        FamilyVerdict::K1(k) => {
            let mut s = format!(
                "e = {:<3} {:<14} {}",
                k.param,
                verdict_word(k.verdict),
                to_value(&k.case).as_str().unwrap_or("")
            );
            if let (Some(kk), Some(c)) = (k.k, k.c_sf) {
                let _ = write!(s, "  k = {kk}, c = {c}");
            }
            if let Some(ineq) = &k.inequality {
                let _ = write!(
                    s,
                    "  {}: {}",
                    ineq.description,
                    if ineq.holds { "holds" } else { "fails" }
                );
            }
            s
        }
        FamilyVerdict::K2(k) => {
            let mut s = format!(
                "c = {:<3} {:<14} {}",
                k.param,
                verdict_word(k.verdict),
                k2_case(k)
            );
            for case in &k.cases {
                let twist = match case.twist {
                    TwistCase::ThetaPlusOne => "theta = 1",
                    TwistCase::ThetaI => "theta = i",
                };
                let _ = write!(
                    s,
                    "  {twist}: {} {}",
                    case.inequality.description,
                    if case.inequality.holds {
                        "holds"
                    } else {
                        "fails"
                    }
                );
            }
            s
        }
    }
}

fn obstruct(family: Family, max: i64, twists: bool) -> Result<Report, Failure> {
    let flag = match family {
        Family::K1 => "max-e",
        Family::K2 => "max-c",
    };
    if max < 0 {
        return Err(Failure::Usage(format!("--{flag} must be nonnegative")));
    }
    let rep: ScanReport = center::scan(family, max);
    let mut ok = rep.matches_expected;
    let mut assumptions = BTreeSet::new();
    for v in &rep.verdicts {
        let list = match v {
            FamilyVerdict::K1(k) => &k.assumptions,
            FamilyVerdict::K2(k) => &k.assumptions,
        };
        assumptions.extend(list.iter().map(|s| s.to_string()));
    }
    let mut text = format!("{family}, parameter 0..={max}\n");
    for v in &rep.verdicts {
        text.push_str(&verdict_line(v));
        text.push('\n');
        let flags = match v {
            FamilyVerdict::K1(k) => &k.flags,
            FamilyVerdict::K2(k) => &k.flags,
        };
        for f in flags {
            let _ = writeln!(text, "        note: {f}");
        }
    }
    let _ = writeln!(text, "survivors: {{{}}}", join(&rep.survivors));
    let _ = writeln!(text, "expected:  {{{}}}", join(&rep.expected));
    let mut twist_reports = Vec::new();
    if twists {
        for &p in &rep.survivors {
            let applicable = match family {
                Family::K1 => p % 3 == 0,
                Family::K2 => p >= 1,
            };
            if !applicable {
                continue;
            }
            match center::twist_identity_checks(family, p) {
                Ok(tr) => {
                    ok &= tr.all_passed();
                    let _ = writeln!(text, "twist identities at {p}: {}", pass(tr.all_passed()));
                    for c in &tr.checks {
                        let _ = writeln!(text, "  {:<40} {}", c.name, pass(c.passed));
                    }
                    twist_reports.push(to_value(&tr));
                }
                Err(e) => {
                    let _ = writeln!(text, "twist identities at {p}: skipped ({e})");
                }
            }
        }
    }
    let _ = writeln!(
        text,
        "result: {}",
        if ok {
            "matches the classification"
        } else {
            "MISMATCH with the classification"
        }
    );
    let rows = rep
        .verdicts
        .iter()
        .map(|v| {
            let rec = verdict_record(v);
            vec![
                v.param().to_string(),
                verdict_word(v.verdict()).to_string(),
                rec["case"].as_str().unwrap_or("").to_string(),
                verdict_line(v)
                    .split_whitespace()
                    .skip(4)
                    .collect::<Vec<_>>()
                    .join(" "),
            ]
        })
        .collect();
    let mut command = format!("obstruct {family} --{flag} {max}");
    if twists {
        command.push_str(" --twists");
    }
    let mut result = json!({
        "family": to_value(&rep.family),
        "max_param": rep.max_param,
        "survivors": rep.survivors,
        "expected": rep.expected,
        "matches_expected": rep.matches_expected,
        "reports": rep.verdicts.iter().map(verdict_record).collect::<Vec<_>>(),
    });
    if twists {
        result["twist_checks"] = json!(twist_reports);
    }
    Ok(Report {
        command,
        input: vec![],
        result,
        text,
        table: Some(Table {
            headers: vec!["param", "verdict", "case", "detail"],
            rows,
        }),
        assumptions: assumptions.into_iter().collect(),
        code: if ok { exit::OK } else { exit::MISMATCH },
    })
}

// ----------------------------------------------------------- minroots ----

fn root_string(r: &Root) -> String {
    if r.order == 1 {
        "1".into()
    } else {
        format!("zeta_{}^{}", r.order, r.exp)
    }
}

/// Closed-form lower bound for the target, when one applies.
fn closed_form_bound(target: &QuadVal) -> Option<(String, u64)> {
    let b = target.b().to_integer().try_into().ok()?;
    let a = target.a().to_integer().try_into().ok()?;
    if !target.a().is_integer() || !target.b().is_integer() || target.is_rational() {
        return None;
    }
    match target.c() {
        2 => Some(("|a| + 2|b|".into(), cyclotomic::bound_sqrt2(a, b))),
        c => cyclotomic::bound_sqrt_general(a, b, c)
            .ok()
            .map(|v| ("|b| phi(2c)".into(), v)),
    }
}

fn minroots(args: &MinrootsArgs) -> Result<Report, Failure> {
    if args.c == 0 {
        return Err(Failure::Usage("--c must be positive".into()));
    }
    if args.max_order == 0 {
        return Err(Failure::Usage("--max-order must be positive".into()));
    }
    if !args.allow_large && (args.max_order > ORDER_LIMIT || args.max_count > COUNT_LIMIT) {
        return Err(Failure::Budget(format!(
            "search limited to --max-order {ORDER_LIMIT} and --max-count {COUNT_LIMIT}; pass --allow-large to lift"
        )));
    }
    let target = QuadVal::from_sqrt_multiple(rat(args.a), rat(args.b), args.c);
    let mut command = format!("minroots --a {} --b {} --c {}", args.a, args.b, args.c);
    let paired_target = match (args.a2, args.b2) {
        (Some(a2), Some(b2)) if args.paired => {
            let _ = write!(command, " --paired --a2 {a2} --b2 {b2}");
            Some((
                a2,
                b2,
                QuadVal::from_sqrt_multiple(rat(a2), rat(b2), args.c),
            ))
        }
        _ => None,
    };
    let _ = write!(
        command,
        " --max-order {} --max-count {}",
        args.max_order, args.max_count
    );
    if args.allow_large {
        command.push_str(" --allow-large");
    }

    let res: MinRootsResult = match &paired_target {
        Some((_, _, t2)) => {
            cyclotomic::minroots_paired_bruteforce(&target, t2, args.max_order, args.max_count)
        }
        None => cyclotomic::minroots_bruteforce(&target, args.max_order, args.max_count),
    };

    let mut text = format!("target: sum = {target}");
    if let Some((_, _, t2)) = &paired_target {
        let _ = write!(text, ", sum of squares = {t2}");
    }
    let _ = writeln!(
        text,
        "\nsearch: roots of order dividing {}, at most {} of them",
        args.max_order, args.max_count
    );
    match (res.status, res.minimum) {
        (SearchStatus::Found, Some(m)) => {
            let _ = writeln!(text, "minimum: {m}");
            let w = if res.witness.is_empty() {
                "(empty sum)".to_string()
            } else {
                res.witness
                    .iter()
                    .map(root_string)
                    .collect::<Vec<_>>()
                    .join(" + ")
            };
            let _ = writeln!(text, "witness: {w}");
        }
        _ => {
            let _ = writeln!(text, "minimum: more than {} roots needed", args.max_count);
        }
    }

    let mut result = json!({
        "target": to_value(&target),
        "search": to_value(&res),
    });
    let mut code = match res.status {
        SearchStatus::Found => exit::OK,
        SearchStatus::ExceedsBudget => exit::BUDGET,
    };
    let bound = match &paired_target {
        None => closed_form_bound(&target),
        Some((a2, b2, _)) => paired_bound(args.a, args.b, *a2, *b2, args.c),
    };
    match &bound {
        Some((name, value)) => {
            let _ = writeln!(text, "closed-form bound {name}: {value}");
            result["bound"] = json!({ "formula": name, "value": value });
            if let Some(m) = res.minimum {
                let respected = m as u64 >= *value;
                result["bound"]["respected"] = json!(respected);
                let _ = writeln!(text, "search minimum >= bound: {}", pass(respected));
                if !respected {
                    code = exit::MISMATCH;
                }
            }
        }
        None => {
            text.push_str("closed-form bound: not applicable\n");
            result["bound"] = Value::Null;
        }
    }
    Ok(Report {
        command,
        input: vec![],
        result,
        text,
        table: None,
        assumptions: vec![],
        code,
    })
}

/// The paired bound needs `sum theta = -a - b sqrt(c)`,
/// `sum theta^2 = -a - d sqrt(c)` with `a, b, d >= 0`.
fn paired_bound(a: i64, b: i64, a2: i64, b2: i64, c: u64) -> Option<(String, u64)> {
    if a != a2 || !is_squarefree(c) {
        return None;
    }
    let pb = cyclotomic::bound_paired(-a, -b, c as i64, -b2).ok()?;
    Some(("paired".into(), pb.value.max(0) as u64))
}

// ------------------------------------------------------------- orbits ----

fn orbits(args: &OrbitsArgs) -> Result<Report, Failure> {
    let rep =
        cyclotomic::orbit_sums(args.c, args.order).map_err(|e| Failure::Usage(e.to_string()))?;
    let mut text = format!(
        "primitive {}-th roots over Q(sqrt({})): epsilon = {}, N = {}, L = {}\n",
        rep.order, rep.c, rep.epsilon, rep.n, rep.l
    );
    let _ = writeln!(
        text,
        "{:<6} {:<6} {:<24} sum of squares",
        "rep", "size", "sum"
    );
    for o in &rep.orbits {
        let _ = writeln!(
            text,
            "{:<6} {:<6} {:<24} {}",
            o.rep,
            o.size,
            o.sum.to_string(),
            o.sum_of_squares
        );
    }
    let rows = rep
        .orbits
        .iter()
        .map(|o| {
            vec![
                o.rep.to_string(),
                o.size.to_string(),
                o.sum.a().to_string(),
                o.sum.b().to_string(),
                o.sum.c().to_string(),
                o.sum_of_squares.a().to_string(),
                o.sum_of_squares.b().to_string(),
                o.sum_of_squares.c().to_string(),
            ]
        })
        .collect();
    let mut result = to_value(&rep);
    let mut code = exit::OK;
    let mut command = format!("orbits --c {} --order {}", args.c, args.order);
    if args.certificate {
        command.push_str(" --certificate");
        let mut certs = Vec::new();
        let single = if args.c == 2 {
            cyclotomic::certificate_sqrt2()
        } else {
            cyclotomic::certificate_sqrt_general(args.c)
        };
        certs.push(single);
        if args.c % 2 == 1 && args.c.is_multiple_of(3) {
            certs.push(cyclotomic::certificate_paired(args.c));
        }
        let mut out = Vec::new();
        for cert in certs {
            let cert = cert.map_err(|e| Failure::Usage(e.to_string()))?;
            let _ = writeln!(
                text,
                "certificate {} over {} orbits: {}",
                cert.functional,
                cert.rows.len(),
                pass(cert.holds)
            );
            if !cert.holds {
                code = exit::MISMATCH;
            }
            out.push(to_value(&cert));
        }
        result["certificates"] = json!(out);
    }
    Ok(Report {
        command,
        input: vec![],
        result,
        text,
        table: Some(Table {
            headers: vec![
                "rep",
                "size",
                "sum_a",
                "sum_b",
                "sum_c",
                "squares_a",
                "squares_b",
                "squares_c",
            ],
            rows,
        }),
        assumptions: vec![],
        code,
    })
}
