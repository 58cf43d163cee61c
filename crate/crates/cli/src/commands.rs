use std::collections::HashMap;

use jpn_core::bimodule::BimoduleCase;
use jpn_core::identities::{check_super_jordan, check_supercommutative};
use jpn_core::json::{action_to_json, algebra_to_json, parse_algebra};
use jpn_core::linalg::Echelon;
use jpn_core::matrix::{build_jpn, build_mnn, build_pn_action};
use jpn_core::peirce::{check_peirce_relations, peirce_decompose, peirce_decompose_within, verify_orthogonal_idempotents};
use jpn_core::wpt::symbolic::instances;
use jpn_core::wpt::{
    case1_correction, derive_constraints, extract_xi, reduce_constraints, shear_twist, solve_complement, symbolic_lift,
    verify_complement, xi_pattern_twist, Ansatz, InstanceMode, Twist,
};
use jpn_core::{AffineForm, Element, Error, Family, GradedAlgebra, Label, Rational, Report, Result, Unknown, UnknownFamily};
use serde_json::{json, Value};

use crate::render;
use crate::{Check, CheckArgs, Target, TargetArgs, WptArgs, WptMode};

pub struct Outcome {
    pub json: Value,
    pub text: String,
    pub passed: bool,
}

/// A built algebra with its radical (extensions only).
struct Built {
    name: String,
    alg: GradedAlgebra,
    algebra_dim: usize,
    radical: Vec<usize>,
}

fn require(cond: bool, msg: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::Invalid(msg()))
    }
}

fn build_target(target: Target, n: usize, case: BimoduleCase) -> Result<Built> {
    match target {
        Target::Jpn => {
            let (alg, _) = build_jpn(n)?;
            Ok(Built {
                name: "jpn".into(),
                algebra_dim: alg.dim(),
                alg,
                radical: vec![],
            })
        }
        Target::Mnn => {
            require(n >= 1, || "M_{n|n} needs n >= 1".into())?;
            let (alg, _) = build_mnn(n)?;
            Ok(Built {
                name: "mnn".into(),
                algebra_dim: alg.dim(),
                alg,
                radical: vec![],
            })
        }
        Target::Extension | Target::Pn => {
            let case = if target == Target::Pn { BimoduleCase::Pn } else { case };
            require(n >= 3, || format!("extensions are built for n >= 3, got {n}"))?;
            let ext = case.extension(n)?;
            Ok(Built {
                name: format!("extension {case}"),
                algebra_dim: ext.algebra_dim(),
                radical: ext.radical_indices(),
                alg: ext.into_ambient(),
            })
        }
    }
}

pub fn build(a: &TargetArgs) -> Result<Outcome> {
    let json = match a.target {
        Target::Pn => {
            require(a.n >= 3, || format!("P_n is built for n >= 3, got {}", a.n))?;
            serde_json::to_value(action_to_json(&build_pn_action(a.n)?))?
        }
        t => {
            let b = build_target(t, a.n, a.case)?;
            let radical = (!b.radical.is_empty()).then_some(b.radical.as_slice());
            serde_json::to_value(algebra_to_json(&b.alg, radical))?
        }
    };
    let text = render::structure(&json);
    Ok(Outcome { json, text, passed: true })
}

fn diagonal_idempotents(alg: &GradedAlgebra) -> Result<Vec<Element>> {
    let b = alg.basis();
    let us: Vec<Element> = (1..).map_while(|i| b.index_of(&Label::one(Family::U, i)).map(Element::basis)).collect();
    if !us.is_empty() {
        return Ok(us);
    }
    // M_{n|n} on matrix units: e_ii + e_{n+i,n+i}
    let units = (1..).take_while(|&i| b.index_of(&Label::two(Family::E, i, i)).is_some()).count();
    if units > 0 && units % 2 == 0 {
        let n = units / 2;
        return Ok((1..=n)
            .map(|i| {
                Element::basis(b.index_of(&Label::two(Family::E, i, i)).unwrap())
                    .add(&Element::basis(b.index_of(&Label::two(Family::E, n + i, n + i)).unwrap()))
            })
            .collect());
    }
    Err(Error::Invalid("no diagonal idempotents: basis has neither u_i nor e_ii labels".into()))
}

fn peirce_reports(alg: &GradedAlgebra) -> Result<Vec<Report>> {
    let es = diagonal_idempotents(alg)?;
    let idem = verify_orthogonal_idempotents(alg, &es)?;
    if !idem.passed {
        return Ok(vec![idem]);
    }
    let d = peirce_decompose(alg, &es)?;
    Ok(vec![idem, check_peirce_relations(alg, &d)?])
}

pub fn check(a: &CheckArgs) -> Result<Outcome> {
    let (name, alg, n) = match (&a.file, a.target) {
        (Some(path), _) => {
            let text = std::fs::read_to_string(path).map_err(|e| Error::Invalid(format!("cannot read {}: {e}", path.display())))?;
            let (alg, _) = parse_algebra(&text)?;
            (path.display().to_string(), alg, None)
        }
        (None, Some(t)) => {
            require(t != Target::Pn, || "check the P_n module through `check extension pn`".into())?;
            require(t == Target::Extension || a.case.is_none(), || "a bimodule case is only valid with `extension`".into())?;
            let b = build_target(t, a.n, a.case.unwrap_or(BimoduleCase::Reg))?;
            (b.name, b.alg, Some(a.n))
        }
        (None, None) => return Err(Error::Invalid("give a target (jpn, mnn, extension CASE) or --file".into())),
    };
    let checks: Vec<Check> = if a.all {
        vec![Check::Supercomm, Check::Jordan, Check::Peirce]
    } else {
        let mut c = a.checks.clone();
        c.dedup();
        c
    };
    let mut reports = Vec::new();
    for c in checks {
        match c {
            Check::Supercomm => reports.push(check_supercommutative(&alg)),
            Check::Jordan => reports.push(check_super_jordan(&alg)?),
            Check::Peirce => reports.extend(peirce_reports(&alg)?),
        }
    }
    let passed = reports.iter().all(|r| r.passed);
    let json = json!({
        "command": "check",
        "target": name,
        "n": n,
        "dim": alg.dim(),
        "reports": reports,
        "passed": passed,
    });
    let mut text = format!("check {name}{} dim={}\n", n.map(|n| format!(" n={n}")).unwrap_or_default(), alg.dim());
    text.push_str(&render::reports(&reports));
    text.push_str(&render::verdict(passed));
    Ok(Outcome { json, text, passed })
}

pub fn tables(a: &TargetArgs) -> Result<Outcome> {
    let (basis, rows) = if a.target == Target::Pn {
        require(a.n >= 3, || format!("P_n is built for n >= 3, got {}", a.n))?;
        let m = build_pn_action(a.n)?;
        let mut rows = Vec::new();
        for x in 0..m.algebra().dim() {
            for k in 0..m.module().len() {
                let p = m.action(x, k);
                if !p.is_zero() {
                    rows.push([m.algebra().basis().label(x).to_string(), m.module().label(k).to_string(), p.display(m.module())]);
                }
            }
        }
        (m.module().clone(), rows)
    } else {
        let b = build_target(a.target, a.n, a.case)?;
        let alg = &b.alg;
        let mut rows = Vec::new();
        for x in 0..alg.dim() {
            for y in 0..alg.dim() {
                let p = alg.product(x, y);
                if !p.is_zero() {
                    rows.push([alg.basis().label(x).to_string(), alg.basis().label(y).to_string(), p.display(alg.basis())]);
                }
            }
        }
        (alg.basis().clone(), rows)
    };
    let json = json!({
        "command": "tables",
        "target": format!("{:?}", a.target).to_lowercase(),
        "n": a.n,
        "basis": basis.entries().iter().map(|e| json!({"name": e.label.to_string(), "parity": e.parity.bit()})).collect::<Vec<_>>(),
        "products": rows.iter().map(|[x, y, p]| json!({"x": x, "y": y, "product": p})).collect::<Vec<_>>(),
    });
    let text = render::table(&rows);
    Ok(Outcome { json, text, passed: true })
}

pub fn peirce(a: &TargetArgs) -> Result<Outcome> {
    require(a.target != Target::Pn, || "P_n has no product; use --target extension --case pn".into())?;
    let b = build_target(a.target, a.n, a.case)?;
    let alg = &b.alg;
    let es = diagonal_idempotents(alg)?;
    let idem = verify_orthogonal_idempotents(alg, &es)?;
    let d = peirce_decompose(alg, &es)?;
    let rel = check_peirce_relations(alg, &d)?;
    let components = d.summary(alg);
    let radical_components = if b.radical.is_empty() {
        None
    } else {
        let span: Vec<Element> = b.radical.iter().map(|&r| Element::basis(r)).collect();
        Some(peirce_decompose_within(alg, &es, &span)?.summary(alg))
    };
    let reports = vec![idem, rel];
    let passed = reports.iter().all(|r| r.passed);
    let json = json!({
        "command": "peirce",
        "target": b.name,
        "n": a.n,
        "idempotents": es.iter().map(|e| e.display(alg.basis())).collect::<Vec<_>>(),
        "components": components,
        "radical_components": radical_components,
        "reports": reports,
        "passed": passed,
    });
    let mut text = format!("peirce {} n={} dim={} (algebra part {})\n", b.name, a.n, alg.dim(), b.algebra_dim);
    text.push_str(&render::components("components", &components));
    if let Some(rc) = &radical_components {
        text.push_str(&render::components("radical components", rc));
    }
    text.push_str(&render::reports(&reports));
    text.push_str(&render::verdict(passed));
    Ok(Outcome { json, text, passed })
}

fn nonzero_by_label(labels: &jpn_core::GradedBasis, alg: &GradedAlgebra, es: &[Element]) -> Vec<Value> {
    es.iter()
        .enumerate()
        .filter(|(_, e)| !e.is_zero())
        .map(|(b, e)| json!({"label": labels.label(b).to_string(), "value": e.display(alg.basis())}))
        .collect()
}

fn instance_json(case: BimoduleCase, n: usize, seed: u64, t: &Twist, pattern: &str) -> Value {
    json!({
        "case": case.to_string(),
        "n": n,
        "seed": seed,
        "twist": pattern,
        "dim": t.algebra.dim(),
        "radical_dim": t.radical.len(),
        "phi": nonzero_by_label(t.lift.canonical(), &t.algebra, &t.phi),
    })
}

/// Support of the closed form (`h → g`, `s → z`, even lifts fixed) with
/// `c(h_1)[g_1] = θ_1`.
fn closed_form_ansatz(t: &Twist, theta1: &Rational) -> Result<Ansatz> {
    let canon = t.lift.canonical();
    let basis = t.algebra.basis();
    let find = |l: &Label| basis.index_of(l).ok_or_else(|| Error::Invalid(format!("extension has no {l}")));
    let mut support = HashMap::new();
    for b in 0..canon.len() {
        let l = canon.label(b);
        let allowed = match l.family() {
            Some(Family::H) => vec![find(&l.with_family(Family::G))?],
            Some(Family::S) => vec![find(&l.with_family(Family::Z))?],
            _ => vec![],
        };
        support.insert(b, allowed);
    }
    let h1 = canon.index_of(&Label::one(Family::H, 1)).expect("canonical basis has h_1");
    Ok(Ansatz {
        support,
        pins: vec![(h1, find(&Label::one(Family::G, 1))?, theta1.clone())],
    })
}

pub fn wpt_solve(a: &WptArgs) -> Result<Outcome> {
    let mode = if a.closed_form { WptMode::ClosedForm } else { a.mode };
    require(!(a.closed_form && a.mode == WptMode::Symbolic), || "--closed-form conflicts with --mode symbolic".into())?;
    if mode == WptMode::Symbolic {
        return lemma_derive(a.case, a.n, InstanceMode::Exhaustive);
    }
    require(a.n >= 3, || format!("Wedderburn computations need n >= 3, got {}", a.n))?;
    let jp = build_jpn(a.n)?.0;
    let ext = a.case.extension(a.n)?;
    match mode {
        WptMode::Linear => {
            let t = shear_twist(&ext, a.seed)?;
            let naive = verify_complement(&t.algebra, t.lift.elements(), &t.radical, &jp)?;
            let sol = solve_complement(&t.algebra, &t.radical, &t.lift, &jp, None)?;
            let verdict = verify_complement(&t.algebra, &sol.complement, &t.radical, &jp)?;
            let corrections = nonzero_by_label(t.lift.canonical(), &t.algebra, &sol.corrections);
            let json = json!({
                "command": "wpt-solve",
                "mode": "linear",
                "instance": instance_json(a.case, a.n, a.seed, &t, "shear"),
                "naive_lift_is_complement": naive.passed,
                "solver": {"unknowns": sol.unknowns, "equations": sol.equations, "free": sol.free},
                "corrections": corrections,
                "verdict": verdict,
                "passed": verdict.passed,
            });
            let mut text = format!(
                "wpt-solve linear case={} n={} seed={}\nnaive lift is a complement: {}\nsolver: {} unknowns, {} equations, {} free\n",
                a.case, a.n, a.seed, naive.passed, sol.unknowns, sol.equations, sol.free
            );
            text.push_str(&render::corrections(&corrections));
            text.push_str(&render::reports(&[verdict.subalgebra.clone(), verdict.direct_sum.clone(), verdict.isomorphism.clone()]));
            text.push_str(&render::verdict(verdict.passed));
            Ok(Outcome {
                json,
                text,
                passed: verdict.passed,
            })
        }
        WptMode::ClosedForm => {
            require(a.case == BimoduleCase::Reg, || format!("the closed form applies to the regular case only, got {}", a.case))?;
            let t = xi_pattern_twist(&ext, a.n, a.seed)?;
            let xi = extract_xi(&t.algebra, &t.lift, a.n)?;
            let plan = case1_correction(&xi, &a.theta1, &t.lift, &t.algebra)?;
            let verdict = verify_complement(&t.algebra, &plan.complement, &t.radical, &jp)?;
            let sol = solve_complement(&t.algebra, &t.radical, &t.lift, &jp, Some(&closed_form_ansatz(&t, &a.theta1)?))?;
            let span = |v: &[Element]| Echelon::from_vectors(v.iter().map(|e| e.to_sparse())).basis();
            let agrees = span(&plan.complement) == span(&sol.complement);
            let mut xi_rows = Vec::new();
            for i in 1..=a.n {
                for j in 1..=a.n {
                    if i != j {
                        xi_rows.push(json!({"i": i, "j": j, "value": xi.get(i, j).to_string()}));
                    }
                }
            }
            let corrections = nonzero_by_label(t.lift.canonical(), &t.algebra, &plan.corrections);
            let passed = verdict.passed && agrees;
            let json = json!({
                "command": "wpt-solve",
                "mode": "closed-form",
                "instance": instance_json(a.case, a.n, a.seed, &t, "xi-pattern"),
                "theta1": a.theta1.to_string(),
                "xi": xi_rows,
                "theta": plan.theta.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
                "corrections": corrections,
                "verdict": verdict,
                "agrees_with_solver": agrees,
                "passed": passed,
            });
            let mut text = format!("wpt-solve closed-form case={} n={} seed={} theta1={}\n", a.case, a.n, a.seed, a.theta1);
            text.push_str(&format!(
                "theta: {}\n",
                plan.theta.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
            ));
            text.push_str(&render::corrections(&corrections));
            text.push_str(&render::reports(&[verdict.subalgebra.clone(), verdict.direct_sum.clone(), verdict.isomorphism.clone()]));
            text.push_str(&format!("agrees with solver: {agrees}\n"));
            text.push_str(&render::verdict(passed));
            Ok(Outcome { json, text, passed })
        }
        WptMode::Symbolic => unreachable!(),
    }
}

fn form(terms: &[(i64, Unknown)]) -> AffineForm {
    let mut f = AffineForm::zero();
    for (c, u) in terms {
        f.add_term(&Rational::from_integer(*c), *u);
    }
    f
}

/// Relations among the regular-case unknowns, each over all distinct
/// index triples.
fn reg_relations(n: usize) -> Vec<(&'static str, Vec<AffineForm>)> {
    use UnknownFamily::{Beta, Eta, Lambda};
    let e = |s: &[usize]| Unknown::new(Eta, &s.iter().map(|&x| x as u8).collect::<Vec<_>>());
    let b = |s: &[usize]| Unknown::new(Beta, &s.iter().map(|&x| x as u8).collect::<Vec<_>>());
    let lam = |i: usize, j: usize, s: usize| Unknown::with_sup(Lambda, &[i as u8, j as u8], &[s as u8]);
    let mut triples = Vec::new();
    for i in 1..=n {
        for j in 1..=n {
            for l in 1..=n {
                if i != j && j != l && i != l {
                    triples.push((i, j, l));
                }
            }
        }
    }
    let mut pairs = Vec::new();
    for i in 1..=n {
        for j in i + 1..=n {
            pairs.push((i, j));
        }
    }
    vec![
        ("eta_i = 0", (1..=n).map(|i| form(&[(1, e(&[i]))])).collect()),
        (
            "eta_ji + 2 eta_iji = 0",
            triples.iter().map(|&(i, j, _)| form(&[(1, e(&[j, i])), (2, e(&[i, j, i]))])).collect(),
        ),
        (
            "eta_ijil + eta_jijl = 0",
            triples.iter().map(|&(i, j, l)| form(&[(1, e(&[i, j, i, l])), (1, e(&[j, i, j, l]))])).collect(),
        ),
        (
            "2 eta_ilij = eta_ij - eta_lj",
            triples
                .iter()
                .map(|&(i, j, l)| form(&[(2, e(&[i, l, i, j])), (-1, e(&[i, j])), (1, e(&[l, j]))]))
                .collect(),
        ),
        (
            "beta_ijjl + beta_jiil = 0",
            triples.iter().map(|&(i, j, l)| form(&[(1, b(&[i, j, j, l])), (1, b(&[j, i, i, l]))])).collect(),
        ),
        (
            "beta_ijjl + beta_jlli + beta_liij = 0",
            triples
                .iter()
                .map(|&(i, j, l)| form(&[(1, b(&[i, j, j, l])), (1, b(&[j, l, l, i])), (1, b(&[l, i, i, j]))]))
                .collect(),
        ),
        (
            "Lambda^i_ij + Lambda^j_ij = 0",
            pairs.iter().map(|&(i, j)| form(&[(1, lam(i, j, i)), (1, lam(i, j, j))])).collect(),
        ),
        ("Lambda_il = 0", pairs.iter().map(|&(i, l)| form(&[(1, lam(i, l, l))])).collect()),
    ]
}

pub fn lemma_derive(case: BimoduleCase, n: usize, mode: InstanceMode) -> Result<Outcome> {
    require(n >= 3, || format!("the parametrized lift needs n >= 3, got {n}"))?;
    let (sym, _) = symbolic_lift(case, n)?;
    let inst = instances(&sym, mode);
    let cs = reduce_constraints(&derive_constraints(&sym, &inst)?);
    let red = cs.reduction.as_ref().expect("reduced");
    let relations: Vec<(String, bool)> = if case == BimoduleCase::Reg {
        reg_relations(n)
            .into_iter()
            .map(|(name, forms)| (name.to_string(), forms.iter().all(|f| cs.implies_zero(f) == Some(true))))
            .collect()
    } else {
        vec![]
    };
    let passed = !red.inconsistent;
    let json = json!({
        "command": "lemma-derive",
        "case": case.to_string(),
        "n": n,
        "mode": mode,
        "instances": cs.instances,
        "equations": cs.equations.len(),
        "unknowns": cs.unknowns.len(),
        "rank": red.rank,
        "inconsistent": red.inconsistent,
        "all_zero": cs.is_all_zero(),
        "free": red.free.iter().map(|u| u.to_string()).collect::<Vec<_>>(),
        "solved": red.solved.iter().map(|(k, v)| (k.to_string(), Value::String(v.to_string()))).collect::<serde_json::Map<_, _>>(),
        "relations": relations.iter().map(|(r, ok)| json!({"relation": r, "holds": ok})).collect::<Vec<_>>(),
        "passed": passed,
    });
    let mut text = format!(
        "lemma-derive case={case} n={n} mode={}\ninstances: {}  equations: {}  unknowns: {}  rank: {}\nconsistent: {}  all zero: {}\nfree ({}): {}\n",
        if mode == InstanceMode::Exhaustive { "exhaustive" } else { "curated" },
        cs.instances,
        cs.equations.len(),
        cs.unknowns.len(),
        red.rank,
        !red.inconsistent,
        cs.is_all_zero(),
        red.free.len(),
        red.free.iter().map(|u| u.to_string()).collect::<Vec<_>>().join(" ")
    );
    for (k, v) in &red.solved {
        if !v.is_zero() {
            text.push_str(&format!("  {k} = {v}\n"));
        }
    }
    for (r, ok) in &relations {
        text.push_str(&format!("relation {r}: {}\n", if *ok { "holds" } else { "not implied" }));
    }
    text.push_str(&render::verdict(passed));
    Ok(Outcome { json, text, passed })
}
