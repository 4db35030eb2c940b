//! Subcommand bodies. Each returns the exit status on success.

use std::fmt::Write as _;
use std::path::Path;
use std::time::Duration;

use finsat::factorization::{factorize_for, FactorError, Factorization, TypedPartialOrder};
use finsat::logic::{evaluate, Distinguished, Formula, Logic, Signature, Structure};
use finsat::normal_forms::{expand_to_basic, to_basic, to_standard_nf, to_transitive_nf, to_weak_nf, BasicSet, WeakNf};
use finsat::solver::{
    complete_bound_note, decide, pipeline_verify, random_formula, random_structure, random_weak_nf, DecisionOutcome,
    FormulaShape, PipelineError, SearchBudget,
};
use finsat::syntax::{export_factorization_dot, parse_formula, print_formula, write_factorization, write_structure};

use crate::input::{logic_of, read_formula, read_structure_file, Failure};
use crate::{status, BudgetArgs, Command, Format, GenKind, NormalForm};

pub fn run(cmd: Command) -> Result<u8, Failure> {
    match cmd {
        Command::Parse { input } => {
            let (phi, sig, logic) = read_formula(&input.formula, input.logic)?;
            print!("logic: {logic}\n{}\n", signature_line(&sig));
            print!("{}", tree(&phi));
            Ok(status::SAT)
        }
        Command::CheckModel { structure, formula } => check_model(&structure, &formula),
        Command::Normalize { input, to } => {
            let (phi, sig, logic) = read_formula(&input.formula, input.logic)?;
            normalize(&phi, &sig, logic, to)
        }
        Command::Decide { input, budget, format } => {
            let (phi, sig, logic) = read_formula(&input.formula, input.logic)?;
            run_decide(&phi, &sig, logic, &budget_of(&budget), format)
        }
        Command::VerifyPipeline { input, budget } => {
            let (phi, sig, logic) = read_formula(&input.formula, input.logic)?;
            match pipeline_verify(&phi, &sig, logic, &budget_of(&budget)) {
                Ok(report) => {
                    let text = report.to_string();
                    print!("{text}");
                    if !text.ends_with('\n') {
                        println!();
                    }
                    Ok(status::SAT)
                }
                Err(e @ PipelineError::Stage { .. }) => Err(Failure::internal(e.to_string())),
                Err(e) => Err(Failure::usage(e.to_string())),
            }
        }
        Command::Factorize { structure, formula, format } => {
            let (a, f) = factorize(&structure, formula.as_deref())?;
            match format {
                Format::Dot => print!("{}", export_factorization_dot(&a, &f)),
                Format::Text | Format::Document => print!("{}", write_factorization(&f)),
            }
            Ok(status::SAT)
        }
        Command::Dot { structure, formula } => {
            let (a, f) = factorize(&structure, formula.as_deref())?;
            print!("{}", export_factorization_dot(&a, &f));
            Ok(status::SAT)
        }
        Command::Gen { kind, seed, logic, unary, binary, size, depth } => {
            let logic = logic_of(logic);
            gen(kind, seed, logic, unary, binary, size, depth)
        }
    }
}

fn budget_of(b: &BudgetArgs) -> SearchBudget {
    SearchBudget {
        max_size: b.bound,
        max_clauses: b.max_clauses,
        time_limit: b.time_limit.map(Duration::from_secs),
    }
}

fn signature_line(sig: &Signature) -> String {
    let line = |key: &str, names: &[String]| {
        if names.is_empty() {
            format!("{key}:")
        } else {
            format!("{key}: {}", names.join(" "))
        }
    };
    format!("{}\n{}", line("unary", sig.unary()), line("binary", sig.binary()))
}

/// The syntax tree, one node per line, indented by depth.
fn tree(f: &Formula) -> String {
    fn go(f: &Formula, depth: usize, out: &mut String) {
        let pad = "  ".repeat(depth);
        let (head, kids): (String, Vec<&Formula>) = match f {
            Formula::True => ("true".into(), vec![]),
            Formula::False => ("false".into(), vec![]),
            Formula::Not(g) => ("not".into(), vec![g]),
            Formula::And(gs) => ("and".into(), gs.iter().collect()),
            Formula::Or(gs) => ("or".into(), gs.iter().collect()),
            Formula::Implies(a, b) => ("implies".into(), vec![a, b]),
            Formula::Iff(a, b) => ("iff".into(), vec![a, b]),
            Formula::Forall(v, g) => (format!("forall {}", var(*v)), vec![g]),
            Formula::Exists(v, g) => (format!("exists {}", var(*v)), vec![g]),
            atom => (format!("atom {atom}"), vec![]),
        };
        writeln!(out, "{pad}{head}").unwrap();
        for k in kids {
            go(k, depth + 1, out);
        }
    }
    let mut out = String::new();
    go(f, 0, &mut out);
    out
}

fn var(v: finsat::logic::Var) -> &'static str {
    match v {
        finsat::logic::Var::X => "x",
        finsat::logic::Var::Y => "y",
    }
}

fn check_model(structure: &Path, formula: &Path) -> Result<u8, Failure> {
    let s = read_structure_file(structure)?;
    let text = std::fs::read_to_string(formula).map_err(|e| Failure::usage(format!("{}: {e}", formula.display())))?;
    let (header, body) = crate::input::split_header(&text);
    if let Some(tag) = header {
        let doc_logic = logic_for_structure(&s);
        if Logic::from_tag(&tag).map(|l| l.distinguished()) != Some(s.signature().distinguished()) {
            return Err(Failure::usage(format!(
                "{}: logic `{tag}` does not match the structure ({doc_logic})",
                formula.display()
            )));
        }
    }
    let phi = parse_formula(&body, s.signature()).map_err(|e| Failure::parse(format!("{}: {e}", formula.display())))?;
    if !phi.is_sentence() {
        return Err(Failure::parse(format!("{}: the formula has free variables", formula.display())));
    }
    let v = evaluate(&s, &phi, [None, None]).map_err(|e| Failure::internal(e.to_string()))?;
    println!("{v}");
    Ok(if v { status::SAT } else { status::NO_MODEL })
}

fn logic_for_structure(s: &Structure) -> &'static str {
    match s.signature().distinguished() {
        Distinguished::None => Logic::L2.tag(),
        Distinguished::PartialOrder if s.signature().binary().is_empty() => Logic::L2PoUnary.tag(),
        Distinguished::PartialOrder => Logic::L2Po.tag(),
        Distinguished::Transitive => Logic::L2Trans.tag(),
    }
}

fn nf_failure(e: impl std::fmt::Display) -> Failure {
    Failure::internal(e.to_string())
}

fn normalize(phi: &Formula, sig: &Signature, logic: Logic, to: NormalForm) -> Result<u8, Failure> {
    let mut out = String::new();
    match to {
        NormalForm::Standard => {
            let (nf, sig2) = to_standard_nf(phi, sig).map_err(nf_failure)?;
            writeln!(out, "logic: {logic}\n{}\nmultiplicity: {}", signature_line(&sig2), nf.multiplicity()).unwrap();
            writeln!(out, "{}", print_formula(&nf.to_formula())).unwrap();
        }
        NormalForm::Weak => {
            let (nf, sig2) = weak_of(phi, sig)?;
            writeln!(out, "logic: {logic}\n{}\nmultiplicity: {}", signature_line(&sig2), nf.multiplicity()).unwrap();
            writeln!(out, "{}", print_formula(&nf.to_formula())).unwrap();
        }
        NormalForm::Basic => {
            if logic != Logic::L2PoUnary {
                return Err(Failure::usage(format!("basic forms are defined for {}, not {logic}", Logic::L2PoUnary)));
            }
            let (w, sig2) = weak_of(phi, sig)?;
            let (set, _) = to_basic(&w, &sig2).map_err(nf_failure)?;
            writeln!(out, "logic: {logic}\n{}", signature_line(&set.sig)).unwrap();
            writeln!(
                out,
                "|sigma| = {}, m = {}, |sigma*| = {}",
                sig2.unary().len(),
                w.multiplicity(),
                set.sig.unary().len()
            )
            .unwrap();
            write!(out, "{set}").unwrap();
        }
        NormalForm::Transitive => {
            if logic != Logic::L2Trans {
                return Err(Failure::usage(format!("the transitive form is defined for {}, not {logic}", Logic::L2Trans)));
            }
            let (nf, sig2, _) = to_transitive_nf(phi, sig).map_err(nf_failure)?;
            writeln!(out, "logic: {logic}\n{}\nmultiplicity: {}", signature_line(&sig2), nf.multiplicity()).unwrap();
            writeln!(out, "{}", print_formula(&nf.to_formula())).unwrap();
        }
    }
    print!("{out}");
    Ok(status::SAT)
}

/// The formula itself when it is already in weak normal form, otherwise its
/// weak normal form over a larger signature.
fn weak_of(phi: &Formula, sig: &Signature) -> Result<(WeakNf, Signature), Failure> {
    match WeakNf::recognize(phi) {
        Some(w) => Ok((w, sig.clone())),
        None => to_weak_nf(phi, sig).map_err(nf_failure),
    }
}

fn run_decide(phi: &Formula, sig: &Signature, logic: Logic, budget: &SearchBudget, format: Format) -> Result<u8, Failure> {
    if format == Format::Dot {
        return Err(Failure::usage("decide prints text or documents, not DOT"));
    }
    let d = decide(phi, sig, logic, budget).map_err(|e| Failure::internal(e.to_string()))?;
    for line in &d.trace {
        eprintln!("trace: {line}");
    }
    match d.outcome {
        DecisionOutcome::Sat(model) => {
            if format == Format::Text {
                println!("# sat: model of size {}", model.size());
            }
            print!("{}", write_structure(&model));
            Ok(status::SAT)
        }
        DecisionOutcome::NoModelUpTo(k) => {
            println!("no model up to size {k}");
            if format == Format::Text {
                println!("# {}", complete_bound_note(logic));
            }
            Ok(status::NO_MODEL)
        }
        DecisionOutcome::Unknown(why) => {
            println!("unknown: {why}");
            Ok(status::UNKNOWN)
        }
    }
}

fn factor_failure(e: FactorError) -> Failure {
    match e {
        FactorError::NotTypedOrder | FactorError::NotPartialOrder | FactorError::TooSmall | FactorError::NotAModel(_) => {
            Failure::usage(e.to_string())
        }
        e => Failure::internal(e.to_string()),
    }
}

fn factorize(structure: &Path, formula: Option<&Path>) -> Result<(TypedPartialOrder, Factorization), Failure> {
    let s = read_structure_file(structure)?;
    let (s, set) = match formula {
        None => {
            let set = BasicSet { sig: s.signature().clone(), formulas: vec![] };
            (s, set)
        }
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
            let (_, body) = crate::input::split_header(&text);
            let phi = parse_formula(&body, s.signature()).map_err(|e| Failure::parse(format!("{}: {e}", path.display())))?;
            let w = WeakNf::recognize(&phi)
                .ok_or_else(|| Failure::parse(format!("{}: not in weak normal form", path.display())))?;
            if !evaluate(&s, &phi, [None, None]).map_err(nf_failure)? {
                return Err(Failure::usage(format!("{}: the structure is not a model of this formula", path.display())));
            }
            let (set, dirs) = to_basic(&w, s.signature()).map_err(|e| Failure::usage(e.to_string()))?;
            let expanded = expand_to_basic(&s, &w, &set, &dirs).map_err(nf_failure)?;
            (expanded, set)
        }
    };
    let a = TypedPartialOrder::new(s).map_err(factor_failure)?;
    let f = factorize_for(&a, &set).map_err(factor_failure)?;
    Ok((a, f))
}

fn gen(kind: GenKind, seed: u64, logic: Logic, unary: usize, binary: usize, size: usize, depth: usize) -> Result<u8, Failure> {
    let binary = if logic == Logic::L2PoUnary || kind == GenKind::Weak { 0 } else { binary };
    let dist = if kind == GenKind::Weak { Distinguished::PartialOrder } else { logic.distinguished() };
    let sig = Signature::new(
        (0..unary).map(|i| format!("p{i}")),
        (0..binary).map(|i| format!("r{i}")),
        dist,
    )
    .map_err(|e| Failure::usage(e.to_string()))?;
    match kind {
        GenKind::Formula => {
            let shape = FormulaShape { depth, ..FormulaShape::default() };
            println!("logic: {logic}\n{}", print_formula(&random_formula(seed, &sig, &shape)));
        }
        GenKind::Structure => {
            if size < 2 {
                return Err(Failure::usage("domains have at least two elements"));
            }
            print!("{}", write_structure(&random_structure(seed, &sig, size)));
        }
        GenKind::Weak => {
            let w = random_weak_nf(seed, &sig, depth);
            println!("logic: {}\n{}", Logic::L2PoUnary, print_formula(&w.to_formula()));
        }
    }
    Ok(status::SAT)
}
