use std::fmt::Write as _;
use std::path::Path;

use modlat::equation::{check_law, fmp_shrink_identity, search_counterexample, SearchConfig, SearchOutcome};
use modlat::format::{to_dot, write_document, write_lattice};
use modlat::modality::{classify_words, enumerate_words};
use modlat::repr::{is_s_poset, p0_has_n};
use modlat::suites::{check_failure, resolve_suites, run_suite, LawStatus};
use modlat::term::parse_law;
use modlat::{catalog, AlgebraProfile, Class, Document, Error, Law, Letter, OpTable, Structure, UpsetAlgebra, Verdict};
use serde_json::{json, Value};

use crate::input::{load_document, load_family, load_poset, load_profile, CliError, CliResult, CATALOG_PREFIX};

/// What a command prints, in both renderings, and how it exits.
pub struct Report {
    pub text: String,
    pub json: Value,
    pub code: u8,
}

impl Report {
    fn ok(text: String, json: Value) -> Self {
        Report { text, json, code: 0 }
    }

    fn checked(text: String, json: Value, passed: bool) -> Self {
        Report {
            text,
            json,
            code: if passed { 0 } else { 1 },
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum OpName {
    #[value(alias = "¬")]
    Neg,
    #[value(alias = "□")]
    Box,
    #[value(alias = "dia", alias = "◇")]
    Diamond,
    #[value(name = "D", alias = "dual")]
    Dual,
    #[value(name = "B", alias = "bool")]
    Bool,
}

impl OpName {
    fn symbol(self) -> &'static str {
        match self {
            OpName::Neg => "¬",
            OpName::Box => "□",
            OpName::Diamond => "◇",
            OpName::Dual => "D",
            OpName::Bool => "B",
        }
    }

    fn table(self, p: &AlgebraProfile) -> &OpTable {
        match self {
            OpName::Neg => &p.neg,
            OpName::Box => &p.nec,
            OpName::Diamond => &p.pos,
            OpName::Dual => &p.dual,
            OpName::Bool => &p.bool_below,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum ClassArg {
    Lattice,
    Ml,
    MlBox,
    MlDiamond,
    MlBoxDiamond,
    DistBoxDiamond,
    S,
    DistS,
    Heyting,
    Dual,
}

impl ClassArg {
    const ALL: [ClassArg; 10] = [
        ClassArg::Lattice,
        ClassArg::Ml,
        ClassArg::MlBox,
        ClassArg::MlDiamond,
        ClassArg::MlBoxDiamond,
        ClassArg::DistBoxDiamond,
        ClassArg::S,
        ClassArg::DistS,
        ClassArg::Heyting,
        ClassArg::Dual,
    ];

    pub fn class(self) -> Class {
        match self {
            ClassArg::Lattice => Class::Lattice,
            ClassArg::Ml => Class::Ml,
            ClassArg::MlBox => Class::MlBox,
            ClassArg::MlDiamond => Class::MlDiamond,
            ClassArg::MlBoxDiamond => Class::MlBoxDiamond,
            ClassArg::DistBoxDiamond => Class::DistBoxDiamond,
            ClassArg::S => Class::S,
            ClassArg::DistS => Class::DistS,
            ClassArg::Heyting => Class::HeytingBoxDiamond,
            ClassArg::Dual => Class::DualBoxDiamond,
        }
    }
}

fn names(p: &AlgebraProfile, asg: &[usize]) -> Vec<String> {
    asg.iter().map(|&a| p.lattice.name(a).to_string()).collect()
}

fn bindings(vars: &[String], values: &[String]) -> String {
    vars.iter()
        .zip(values)
        .map(|(v, a)| format!("{v} = {a}"))
        .collect::<Vec<_>>()
        .join(", ")
}

fn write_out(path: &Path, text: &str) -> CliResult<()> {
    std::fs::write(path, text).map_err(|source| CliError::Io {
        path: path.into(),
        source,
    })
}

pub fn validate(target: Option<&str>) -> CliResult<Report> {
    let entries: Vec<&catalog::CatalogEntry> = match target {
        None => catalog::all_entries().iter().collect(),
        Some(t) if t.starts_with(CATALOG_PREFIX) => vec![catalog::get(&t[CATALOG_PREFIX.len()..])?],
        Some(path) => {
            let doc = load_document(path)?;
            let kind = if matches!(doc.structure, Structure::Lattice(_)) {
                "lattice"
            } else {
                "poset"
            };
            let n = doc.poset().len();
            return Ok(Report::ok(
                format!("ok: {kind} {} with {n} elements\n", doc.name),
                json!({ "name": doc.name, "kind": kind, "elements": n, "valid": true }),
            ));
        }
    };
    let mut text = String::new();
    let mut rows = Vec::new();
    let mut all_passed = true;
    for e in entries {
        for r in e.check_facts()? {
            all_passed &= r.passed;
            let tag = if r.passed { "PASS" } else { "FAIL" };
            let got = r.detail.as_deref().map(|d| format!(" (got {d})")).unwrap_or_default();
            let _ = writeln!(text, "{tag} {}: {}{got}", e.name, r.fact);
            rows.push(
                json!({ "entry": e.name, "fact": r.fact, "note": r.note, "passed": r.passed, "detail": r.detail }),
            );
        }
    }
    if target.is_none() {
        for m in catalog::maps() {
            for r in m.check()? {
                let expected = if m.preserves.contains(&r.op) {
                    true
                } else if m.breaks.contains(&r.op) {
                    false
                } else {
                    continue;
                };
                let ok = r.preserved == expected;
                all_passed &= ok;
                let verb = if r.preserved { "preserves" } else { "does not preserve" };
                let _ = writeln!(
                    text,
                    "{} map {}: {verb} {}",
                    if ok { "PASS" } else { "FAIL" },
                    m.name,
                    r.op.label()
                );
                rows.push(json!({ "map": m.name, "op": r.op.label(), "preserved": r.preserved, "passed": ok }));
            }
        }
    }
    Ok(Report::checked(
        text,
        json!({ "checks": rows, "passed": all_passed }),
        all_passed,
    ))
}

pub fn info(src: &str) -> CliResult<Report> {
    let doc = load_document(src)?;
    let p = doc.poset();
    let covers: Vec<String> = p
        .covers()
        .iter()
        .map(|&(a, b)| format!("{}<{}", p.name(a), p.name(b)))
        .collect();
    let pick = |xs: Vec<usize>| xs.into_iter().map(|a| p.name(a).to_string()).collect::<Vec<_>>();
    let mut text = String::new();
    let _ = writeln!(text, "name: {}", doc.name);
    let _ = writeln!(text, "elements ({}): {}", p.len(), p.names().join(" "));
    let _ = writeln!(text, "covers: {}", covers.join(" "));
    let mut j = json!({ "name": doc.name, "elements": p.names(), "covers": covers });
    match &doc.structure {
        Structure::Lattice(l) => {
            let witness = |w: Option<[usize; 3]>| w.map(|t| t.map(|a| l.name(a).to_string()));
            let (dw, mw) = (witness(l.distributivity_witness()), witness(l.modularity_witness()));
            let _ = writeln!(text, "kind: lattice");
            let _ = writeln!(text, "atoms: {}", pick(l.atoms()).join(" "));
            let _ = writeln!(text, "coatoms: {}", pick(l.coatoms()).join(" "));
            let show = |w: &Option<[String; 3]>| match w {
                None => "yes".to_string(),
                Some([a, b, c]) => format!("no, at ({a}, {b}, {c})"),
            };
            let _ = writeln!(text, "distributive: {}", show(&dw));
            let _ = writeln!(text, "modular: {}", show(&mw));
            j["kind"] = json!("lattice");
            j["atoms"] = json!(pick(l.atoms()));
            j["coatoms"] = json!(pick(l.coatoms()));
            j["distributivity_witness"] = json!(dw);
            j["modularity_witness"] = json!(mw);
        }
        Structure::Poset(_) => {
            let _ = writeln!(text, "kind: poset");
            let _ = writeln!(text, "minimal: {}", pick(p.minimals()).join(" "));
            let _ = writeln!(text, "maximal: {}", pick(p.maximals()).join(" "));
            j["kind"] = json!("poset");
            j["minimal"] = json!(pick(p.minimals()));
            j["maximal"] = json!(pick(p.maximals()));
        }
    }
    Ok(Report::ok(text, j))
}

pub fn op(src: &str, ops: &[OpName]) -> CliResult<Report> {
    let p = load_profile(src)?;
    let needs_neg = ops
        .iter()
        .any(|o| matches!(o, OpName::Box | OpName::Diamond | OpName::Bool));
    if needs_neg && !p.flags.ml {
        return Err(Error::NegNotTotal.into());
    }
    let width = p.lattice.names().iter().map(|n| n.chars().count()).max().unwrap_or(1);
    let mut text = String::new();
    let mut tables = Vec::new();
    for &o in ops {
        let t = o.table(&p);
        let _ = writeln!(text, "{}", o.symbol());
        let mut values = serde_json::Map::new();
        for a in p.lattice.elements() {
            let name = p.lattice.name(a);
            let value = t.get(a).map(|v| p.lattice.name(v));
            let pad = width - name.chars().count();
            let _ = writeln!(text, "  {name}{} → {}", " ".repeat(pad), value.unwrap_or("⊥undef"));
            values.insert(name.to_string(), json!(value));
        }
        tables.push(json!({ "op": o.symbol(), "values": values }));
    }
    Ok(Report::ok(text, json!({ "algebra": p.name, "tables": tables })))
}

pub fn classify(src: &str) -> CliResult<Report> {
    let p = load_profile(src)?;
    let f = &p.flags;
    let mut text = format!("{} ({} elements)\n", p.name, p.lattice.len());
    let flags = [
        ("meet-complemented", f.ml),
        ("□ total", f.ml_box),
        ("◇ total", f.ml_diamond),
        ("D total", f.dual_total),
        ("B total", f.b_total),
        ("distributive", f.distributive),
        ("modular", f.modular),
        ("Heyting", f.heyting),
    ];
    for (label, v) in flags {
        let _ = writeln!(text, "  {label}: {}", if v { "yes" } else { "no" });
    }
    let s = f.s_index.map_or("none".to_string(), |n| n.to_string());
    let _ = writeln!(text, "  least n with □ⁿ⁺¹ = □ⁿ: {s}");
    let members: Vec<&str> = ClassArg::ALL
        .iter()
        .map(|c| c.class())
        .filter(|&c| p.in_class(c))
        .map(Class::label)
        .collect();
    let _ = writeln!(text, "  classes: {}", members.join(", "));
    Ok(Report::ok(
        text,
        json!({ "algebra": p.name, "flags": f, "classes": members }),
    ))
}

pub fn laws_suite(src: &str, suite: &str, witnesses: bool) -> CliResult<Report> {
    let p = load_profile(src)?;
    let suites = resolve_suites(suite)?;
    let mut text = String::new();
    let mut rows = Vec::new();
    let mut checks = Vec::new();
    let mut passed = true;
    for s in suites {
        let (mut pass, mut fail, mut undef, mut skip) = (0, 0, 0, 0);
        for r in run_suite(s, &p) {
            let tail = match &r.status {
                LawStatus::Pass => {
                    pass += 1;
                    String::new()
                }
                LawStatus::Fail(at) => {
                    fail += 1;
                    format!("  at {}", bindings(&r.vars, at))
                }
                LawStatus::Undefined(at) => {
                    undef += 1;
                    format!("  undefined at {}", bindings(&r.vars, at))
                }
                LawStatus::Skipped(why) => {
                    skip += 1;
                    format!("  ({why})")
                }
            };
            let _ = writeln!(text, "{:<9} {} ({}) {}{tail}", r.status.tag(), s.id, r.label, r.law);
            rows.push(serde_json::to_value(&r).expect("serializable"));
        }
        passed &= fail == 0 && undef == 0;
        let _ = writeln!(
            text,
            "-- {}: {pass} passed, {fail} failed, {undef} undefined, {skip} skipped",
            s.id
        );
        if witnesses {
            for f in s.failures.iter().filter(|f| f.entry == p.name) {
                let c = check_failure(s, f, &p);
                passed &= c.confirmed;
                let tag = if c.confirmed { "CONFIRMED" } else { "REFUTED" };
                let _ = writeln!(text, "{tag:<9} {} {} at {}: {}", s.id, c.law, c.at.join(", "), c.detail);
                checks.push(serde_json::to_value(&c).expect("serializable"));
            }
        }
    }
    let j = json!({ "algebra": p.name, "laws": rows, "witnesses": checks, "passed": passed });
    Ok(Report::checked(text, j, passed))
}

pub fn laws_ineq(src: &str, ineq: &str) -> CliResult<Report> {
    let p = load_profile(src)?;
    let parsed = parse_law(ineq)?;
    let law = parsed.law.display(&parsed.vars).to_string();
    let (tag, at, text) = match check_law(&p, &parsed.law) {
        Verdict::Holds => ("PASS", None, format!("PASS {law} on {}\n", p.name)),
        Verdict::Fails(a) => {
            let at = names(&p, &a);
            let t = format!("FAIL {law} on {} at {}\n", p.name, bindings(&parsed.vars, &at));
            ("FAIL", Some(at), t)
        }
        Verdict::UndefinedAt(a) => {
            let at = names(&p, &a);
            let t = format!("UNDEFINED {law} on {} at {}\n", p.name, bindings(&parsed.vars, &at));
            ("UNDEFINED", Some(at), t)
        }
    };
    let j = json!({ "algebra": p.name, "law": law, "vars": parsed.vars, "status": tag, "at": at });
    Ok(Report::checked(text, j, tag == "PASS"))
}

pub struct ModalitiesArgs<'a> {
    pub family: Option<&'a str>,
    pub class: Option<ClassArg>,
    pub alphabet: &'a str,
    pub max_len: usize,
    pub max_box: Option<usize>,
    pub dot: Option<&'a Path>,
}

pub fn modalities(args: ModalitiesArgs<'_>) -> CliResult<Report> {
    let mut family = match args.family {
        Some(list) => load_family(list)?,
        None => Vec::new(),
    };
    if let Some(c) = args.class {
        if args.family.is_some() {
            family.retain(|p| p.in_class(c.class()));
        } else {
            family = catalog::all_entries()
                .iter()
                .filter_map(|e| e.profile())
                .filter(|p| p.in_class(c.class()))
                .collect();
        }
    }
    if family.is_empty() {
        return Err(CliError::Usage("the family is empty".into()));
    }
    let letters: Vec<Letter> = args
        .alphabet
        .chars()
        .map(|c| Letter::from_char(c).ok_or_else(|| CliError::Usage(format!("unknown letter `{c}`; use N, B, D, U"))))
        .collect::<CliResult<_>>()?;
    let words: Vec<_> = enumerate_words(&letters, args.max_len)
        .into_iter()
        .filter(|w| args.max_box.is_none_or(|k| w.count(Letter::Box) <= k))
        .collect();
    let refs: Vec<&AlgebraProfile> = family.iter().collect();
    let poset = classify_words(&refs, &words)?;
    let rep = |i: usize| poset.classes[i].representative.to_string();
    let names: Vec<&str> = family.iter().map(|p| p.name.as_str()).collect();

    let mut text = format!(
        "{} classes from {} words over {}\n",
        poset.len(),
        words.len(),
        names.join(", ")
    );
    let mut classes = Vec::new();
    for (i, c) in poset.classes.iter().enumerate() {
        let members: Vec<String> = c.members.iter().map(ToString::to_string).collect();
        let mismatch = if c.sign_mismatch() {
            "  sign differs from letter parity"
        } else {
            ""
        };
        let _ = writeln!(
            text,
            "[{i:>2}] {:<8} {:?}: {}{mismatch}",
            rep(i),
            c.sign,
            members.join(" ")
        );
        classes.push(
            json!({ "representative": rep(i), "sign": c.sign, "members": members, "sign_mismatch": c.sign_mismatch() }),
        );
    }
    let mut covers = Vec::new();
    let _ = writeln!(text, "covers:");
    for (i, j) in poset.covers() {
        let _ = writeln!(text, "  {} < {}", rep(i), rep(j));
        covers.push(json!([rep(i), rep(j)]));
    }
    let mut incomparable = Vec::new();
    let _ = writeln!(text, "incomparable:");
    for (i, j) in poset.incomparable_pairs() {
        let (a, b) = (
            poset.not_leq_witness(i, j).expect("incomparable"),
            poset.not_leq_witness(j, i).expect("incomparable"),
        );
        let _ = writeln!(
            text,
            "  {} ≰ {} at {}:{}; {} ≰ {} at {}:{}",
            rep(i),
            rep(j),
            a.algebra,
            a.element,
            rep(j),
            rep(i),
            b.algebra,
            b.element
        );
        incomparable.push(json!({ "pair": [rep(i), rep(j)], "left_not_leq": a, "right_not_leq": b }));
    }
    if let Some(path) = args.dot {
        write_out(path, &poset.to_dot("modalities"))?;
        let _ = writeln!(text, "wrote {}", path.display());
    }
    let j = json!({ "family": names, "words": words.len(), "classes": classes, "covers": covers, "incomparable": incomparable });
    Ok(Report::ok(text, j))
}

pub fn upalg(src: &str, out: Option<&Path>) -> CliResult<Report> {
    let (name, p) = load_poset(src)?;
    let up = UpsetAlgebra::new(&p)?;
    let doc = write_lattice(&format!("Up_{name}"), &up.lattice);
    let text = match out {
        Some(path) => {
            write_out(path, &doc)?;
            format!("wrote {} ({} elements)\n", path.display(), up.len())
        }
        None => doc.clone(),
    };
    Ok(Report::ok(
        text,
        json!({ "poset": name, "elements": up.len(), "document": doc }),
    ))
}

pub fn sposet(src: &str) -> CliResult<Report> {
    let (name, p) = load_poset(src)?;
    let v = is_s_poset(&p);
    let has_n = p0_has_n(&p);
    let witness = v
        .witness
        .map(|(x, y, d)| (p.name(x).to_string(), p.name(y).to_string(), d));
    let mut text = match &witness {
        None => format!("{name}: S-poset\n"),
        Some((x, y, d)) => format!("{name}: not an S-poset; {x} and {y} are at zigzag distance {d}\n"),
    };
    let _ = writeln!(
        text,
        "induced N in the non-extremal part: {}",
        if has_n { "yes" } else { "no" }
    );
    let j = json!({
        "poset": name,
        "s_poset": v.is_s_poset,
        "witness": witness.map(|(x, y, d)| json!({ "x": x, "y": y, "distance": d })),
        "induced_n": has_n,
    });
    Ok(Report::checked(text, j, v.is_s_poset))
}

pub fn search(ineq: &str, max_poset: usize, class: Option<ClassArg>, catalog: bool) -> CliResult<Report> {
    let parsed = parse_law(ineq)?;
    let law = parsed.law.display(&parsed.vars).to_string();
    let cfg = SearchConfig {
        max_poset,
        class: class.map(ClassArg::class),
        catalog,
    };
    match search_counterexample(&parsed.law, &cfg)? {
        SearchOutcome::Exhausted { algebras } => Ok(Report::ok(
            format!("no counterexample to {law} among {algebras} algebras\n"),
            json!({ "law": law, "found": false, "algebras": algebras }),
        )),
        SearchOutcome::Found(c) => {
            let at = c.assignment_names();
            let mut text = format!(
                "counterexample to {law} in {} at {}\n",
                c.source,
                bindings(&parsed.vars, &at)
            );
            let mut shrunk = None;
            if let Law::Identity(id) = &parsed.law {
                let s = fmp_shrink_identity(&c.profile, id, &c.assignment)?;
                let _ = writeln!(
                    text,
                    "separated in a {}-element generated sublattice of the {}-element algebra",
                    s.profile.lattice.len(),
                    c.profile.lattice.len()
                );
                shrunk = Some(s.profile.lattice.len());
            }
            let j = json!({
                "law": law,
                "found": true,
                "source": c.source,
                "elements": c.profile.lattice.len(),
                "at": at,
                "shrunk_elements": shrunk,
            });
            Ok(Report::checked(text, j, false))
        }
    }
}

pub fn catalog_list() -> Report {
    let mut text = String::new();
    let mut rows = Vec::new();
    for e in catalog::all_entries() {
        let kind = if e.is_lattice() { "lattice" } else { "poset" };
        let n = match &e.structure {
            Structure::Lattice(l) => l.len(),
            Structure::Poset(p) => p.len(),
        };
        let _ = writeln!(text, "{:<14} {kind:<8} {n:>3}  {}", e.name, e.note);
        rows.push(json!({ "name": e.name, "kind": kind, "elements": n, "note": e.note }));
    }
    Report::ok(text, json!(rows))
}

pub fn catalog_dump(name: &str) -> CliResult<Report> {
    let e = catalog::get(name.strip_prefix(CATALOG_PREFIX).unwrap_or(name))?;
    let doc = write_document(&Document {
        name: e.name.to_string(),
        structure: e.structure.clone(),
    });
    Ok(Report::ok(doc.clone(), json!({ "name": e.name, "document": doc })))
}

pub fn dot(src: &str, out: Option<&Path>) -> CliResult<Report> {
    let doc = load_document(src)?;
    let graph = to_dot(&doc.name, doc.poset());
    let text = match out {
        Some(path) => {
            write_out(path, &graph)?;
            format!("wrote {}\n", path.display())
        }
        None => graph.clone(),
    };
    Ok(Report::ok(text, json!({ "name": doc.name, "dot": graph })))
}
