use std::fmt::Write as _;
use std::io::BufRead;

use negabeta::admissibility::{
    alt_compare, build_automaton, is_admissible, refute_reference_claim_is, ReferenceClaim,
};
use negabeta::algebraic::{classify_base, AlgebraicReal, FieldElement, IntPolynomial, NumberField};
use negabeta::format::{
    element_to_json, rational_from_str, rational_to_string, system_from_json, system_to_json,
};
use negabeta::numeration::{
    cylinder, expand, expand_real, value_in, Cylinder, DigitWord, ExpansionOutcome, NumerationSystem,
};
use negabeta::oracle::oracle_sample_check_bits;
use negabeta::reference::{check_limit_theorem, is_sofic, reference, Reference, References};
use negabeta::Error;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::args::{BaseArgs, Cli, Command, Format, SystemArgs};

pub enum Failure {
    Usage(String),
    Engine(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Engine(e)
    }
}

impl Failure {
    pub fn exit_code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 64,
            Failure::Engine(e) => match e {
                Error::OutOfDomain | Error::DomainViolation(_) | Error::NoZeroInDomain | Error::NoRealBase => 2,
                Error::ReferencesNotPeriodic => 3,
                _ => 64,
            },
        }
    }

    pub fn message(&self) -> String {
        match self {
            Failure::Usage(m) => m.clone(),
            Failure::Engine(e) => e.to_string(),
        }
    }
}

type Res<T> = Result<T, Failure>;

/// What a command prints and the exit status it asks for.
pub struct Report {
    pub body: String,
    pub code: u8,
}

impl Report {
    fn ok(body: String) -> Self {
        Report { body, code: 0 }
    }
}

fn usage(m: impl Into<String>) -> Failure {
    Failure::Usage(m.into())
}

fn render(format: Format, text: impl FnOnce() -> String, json: impl FnOnce() -> Value) -> Res<String> {
    match format {
        Format::Text => Ok(text()),
        Format::Json => Ok(format!("{}\n", serde_json::to_string_pretty(&json()).expect("json"))),
        Format::Dot => Err(usage("--format dot is only available for the automaton command")),
    }
}

fn base(args: &BaseArgs) -> Res<AlgebraicReal> {
    let poly = args.beta_poly.as_deref().ok_or_else(|| usage("--beta-poly is required"))?;
    let interval = args.beta_interval.as_deref().ok_or_else(|| usage("--beta-interval is required"))?;
    let poly = IntPolynomial::parse_list(poly)?;
    let (lo, hi) = interval
        .split_once(',')
        .ok_or_else(|| usage(format!("--beta-interval needs two values, got {interval:?}")))?;
    Ok(AlgebraicReal::new_base(poly, rational_from_str(lo)?, rational_from_str(hi)?)?)
}

fn element(field: &NumberField, text: &str) -> Res<FieldElement> {
    let coords = text.split(',').map(rational_from_str).collect::<Result<Vec<_>, _>>()?;
    Ok(field.element(coords)?)
}

fn field_of(args: &SystemArgs) -> Res<NumberField> {
    if let Some(json) = &args.system {
        return Ok(parse_system_json(json)?.field().clone());
    }
    Ok(NumberField::new(base(&args.base)?)?)
}

fn parse_system_json(text: &str) -> Res<NumerationSystem> {
    let v: Value = serde_json::from_str(text).map_err(|e| usage(format!("--system is not JSON: {e}")))?;
    Ok(system_from_json(&v)?)
}

fn system(args: &SystemArgs) -> Res<NumerationSystem> {
    if let Some(json) = &args.system {
        if args.preset.is_some() || args.l.is_some() || args.base.beta_poly.is_some() {
            return Err(usage("--system cannot be combined with other system flags"));
        }
        return parse_system_json(json);
    }
    let field = NumberField::new(base(&args.base)?)?;
    match (&args.preset, &args.l) {
        (Some(p), None) => Ok(NumerationSystem::preset(&field, *p)?),
        (None, Some(l)) => Ok(NumerationSystem::new(element(&field, l)?)?),
        (Some(_), Some(_)) => Err(usage("give either --preset or --l, not both")),
        (None, None) => Err(usage("a left endpoint is required: --preset or --l")),
    }
}

fn words_or_stdin(words: &[String]) -> Res<Vec<DigitWord>> {
    let lines: Vec<String> = if words.is_empty() {
        std::io::stdin()
            .lock()
            .lines()
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| usage(format!("cannot read stdin: {e}")))?
    } else {
        words.to_vec()
    };
    lines
        .iter()
        .map(|l| l.trim())
        .filter(|l| !l.is_empty())
        .map(|l| l.parse::<DigitWord>().map_err(Failure::from))
        .collect()
}

fn outcome_json(out: &ExpansionOutcome) -> Value {
    json!({
        "digits": out.digits,
        "text": out.digits.to_string(),
        "status": out.status,
        "iterations": out.iterations,
    })
}

fn budget_code(out: &ExpansionOutcome) -> u8 {
    if out.is_periodic() {
        0
    } else {
        3
    }
}

pub fn run(cli: &Cli) -> Res<Report> {
    let fmt = cli.format;
    let budget = cli.max_iters;
    match &cli.command {
        Command::Expand { system: sa, x, real } => {
            let s = system(sa)?;
            let x = element(s.field(), x)?;
            if *real {
                let r = expand_real(&s, &x, budget)?;
                let body = render(
                    fmt,
                    || {
                        format!(
                            "{}\nexponent: {}\nstatus: {:?}, iterations: {}\nnon-unique: {}\n",
                            r.outcome.digits, r.exponent, r.outcome.status, r.outcome.iterations, r.non_unique
                        )
                    },
                    || {
                        let mut v = outcome_json(&r.outcome);
                        v["exponent"] = json!(r.exponent);
                        v["non_unique"] = json!(r.non_unique);
                        v
                    },
                )?;
                return Ok(Report { body, code: budget_code(&r.outcome) });
            }
            let out = expand(&s, &x, budget)?;
            let body = render(
                fmt,
                || format!("{}\nstatus: {:?}, iterations: {}\n", out.digits, out.status, out.iterations),
                || outcome_json(&out),
            )?;
            Ok(Report { body, code: budget_code(&out) })
        }
        Command::Value { system: sa, words } => {
            let field = field_of(sa)?;
            let words = words_or_stdin(words)?;
            let values: Vec<(DigitWord, FieldElement)> =
                words.into_iter().map(|w| (w.clone(), value_in(&field, &w))).collect();
            Ok(Report::ok(render(
                fmt,
                || values.iter().map(|(w, v)| format!("{w}\t{v}\n")).collect(),
                || {
                    json!(values
                        .iter()
                        .map(|(w, v)| json!({"word": w.to_string(), "value": element_to_json(v)}))
                        .collect::<Vec<_>>())
                },
            )?))
        }
        Command::Refs { system: sa } => {
            let s = system(sa)?;
            let outs: Vec<(Reference, ExpansionOutcome)> =
                Reference::ALL.iter().map(|&r| (r, reference(&s, r, budget))).collect();
            let limit = check_limit_theorem(&s, budget);
            let sofic = is_sofic(&s, budget);
            let code = outs.iter().map(|(_, o)| budget_code(o)).max().unwrap_or(0);
            let body = render(
                fmt,
                || {
                    let mut t = String::new();
                    for (r, o) in &outs {
                        let _ = writeln!(t, "{:<6} = {}    [{:?}]", r.name(), o.digits, o.status);
                    }
                    let _ = writeln!(t, "limit check: {limit:?}");
                    let _ = writeln!(t, "soficity: {sofic:?}");
                    t
                },
                || {
                    let mut v = json!({});
                    for (r, o) in &outs {
                        v[r.name()] = outcome_json(o);
                    }
                    v["limit_check"] = json!(limit);
                    v["soficity"] = json!(sofic);
                    v
                },
            )?;
            Ok(Report { body, code })
        }
        Command::Admissible { system: sa, words } => {
            let s = system(sa)?;
            let refs = References::compute(&s, budget)?;
            let words = words_or_stdin(words)?;
            let verdicts: Vec<(DigitWord, bool)> =
                words.into_iter().map(|w| (w.clone(), is_admissible(&s, &w, &refs))).collect();
            Ok(Report::ok(render(
                fmt,
                || verdicts.iter().map(|(w, b)| format!("{w}\t{b}\n")).collect(),
                || {
                    json!(verdicts
                        .iter()
                        .map(|(w, b)| json!({"word": w.to_string(), "admissible": b}))
                        .collect::<Vec<_>>())
                },
            )?))
        }
        Command::Automaton { system: sa, raw, count } => {
            let s = system(sa)?;
            let refs = References::compute(&s, budget)?;
            let built = build_automaton(&refs, &s.alphabet());
            let a = if *raw { built } else { built.minimize() };
            let counts = count.map(|n| a.count_words_upto(n));
            let body = match fmt {
                Format::Dot => a.to_dot(),
                _ => render(
                    fmt,
                    || {
                        let mut t = format!("states: {}\ninitial: q{}\n", a.state_count(), a.initial());
                        for (from, d, to) in a.transitions() {
                            let _ = writeln!(t, "q{from} --{d}--> q{to}");
                        }
                        for (n, c) in counts.iter().flatten().enumerate() {
                            let _ = writeln!(t, "words of length {n}: {c}");
                        }
                        t
                    },
                    || {
                        let mut v = a.to_json();
                        if let Some(c) = &counts {
                            v["counts"] = json!(c.iter().map(|x| x.to_string()).collect::<Vec<_>>());
                        }
                        v
                    },
                )?,
            };
            Ok(Report::ok(body))
        }
        Command::Classify { base: ba } => {
            let beta = base(ba)?;
            let c = classify_base(&beta);
            Ok(Report::ok(render(
                fmt,
                || {
                    let mut t = format!("beta: {beta}\nclass: {}\n", c.class);
                    if c.irreducibility_unverified {
                        t.push_str("irreducibility: unverified\n");
                    }
                    for n in &c.notes {
                        let _ = writeln!(t, "note: {n}");
                    }
                    t
                },
                || json!({"beta": beta.to_string(), "classification": c}),
            )?))
        }
        Command::Predicates { system: sa } => {
            let s = system(sa)?;
            let p = s.predicates();
            Ok(Report::ok(render(
                fmt,
                || {
                    format!(
                        "alphabet: {:?}\ndigit_range_ok: {}\nshift_unique: {}\nfin_nontrivial: {}\nzero_in_domain: {}\n",
                        s.alphabet(),
                        p.digit_range_ok,
                        p.shift_unique,
                        p.fin_nontrivial,
                        p.zero_in_domain
                    )
                },
                || json!({"system": system_to_json(&s), "alphabet": s.alphabet(), "predicates": p}),
            )?))
        }
        Command::ScanL { base: ba, grid } => {
            if *grid < 2 {
                return Err(usage("--grid must be at least 2"));
            }
            let field = NumberField::new(base(ba)?)?;
            Ok(Report::ok(render(fmt, || scan_text(&field, *grid, budget), || scan_json(&field, *grid, budget))?))
        }
        Command::OracleCheck { system: sa, trials, depth, seed } => {
            let s = system(sa)?;
            let report = oracle_sample_check_bits(&s, *trials, *depth, *seed, cli.oracle_bits);
            let code = if report.mismatches.is_empty() { 0 } else { 1 };
            let body = render(
                fmt,
                || {
                    let mut t = format!(
                        "trials: {}\ndepth: {}\nmismatches: {}\n",
                        report.trials,
                        report.depth,
                        report.mismatches.len()
                    );
                    for m in &report.mismatches {
                        let _ = writeln!(t, "x = {} position {}: exact {} oracle {}", m.x, m.position, m.exact, m.oracle);
                    }
                    t
                },
                || json!(report),
            )?;
            Ok(Report { body, code })
        }
        Command::AltCompare { words } => {
            let words = words_or_stdin(words)?;
            let [a, b] = words.as_slice() else {
                return Err(usage(format!("alt-compare takes two words, got {}", words.len())));
            };
            let c = alt_compare(a, b);
            Ok(Report::ok(render(
                fmt,
                || match c.witness {
                    Some(i) => format!("{:?} (first difference at position {i})\n", c.outcome),
                    None => format!("{:?}\n", c.outcome),
                },
                || json!({"outcome": format!("{:?}", c.outcome), "witness": c.witness}),
            )?))
        }
        Command::Cylinder { system: sa, word } => {
            let s = system(sa)?;
            let w: DigitWord = word.parse()?;
            if !w.per().is_empty() {
                return Err(usage("cylinder takes a finite word"));
            }
            let c = cylinder(&s, w.pre());
            Ok(Report::ok(render(
                fmt,
                || format!("{c}\n"),
                || match &c {
                    Cylinder::Empty => json!({"empty": true}),
                    Cylinder::Interval(i) => json!({
                        "empty": false,
                        "lo": element_to_json(&i.lo),
                        "hi": element_to_json(&i.hi),
                        "lo_closed": i.lo_closed,
                        "hi_closed": i.hi_closed,
                    }),
                },
            )?))
        }
        Command::Refute { words } => {
            let words = words_or_stdin(words)?;
            let mut verdicts = Vec::new();
            for w in &words {
                verdicts.push((w.clone(), refute_reference_claim_is(w, budget)?));
            }
            Ok(Report::ok(render(
                fmt,
                || {
                    verdicts
                        .iter()
                        .map(|(w, v)| match v {
                            ReferenceClaim::IsReference { beta } => format!("{w}\tis d(l) for beta = {beta}\n"),
                            ReferenceClaim::NotReference { beta_text, actual_dl, .. } => {
                                format!("{w}\tnot d(l): beta = {beta_text} has d(l) = {actual_dl}\n")
                            }
                        })
                        .collect()
                },
                || json!(verdicts.iter().map(|(w, v)| json!({"word": w.to_string(), "verdict": v})).collect::<Vec<_>>()),
            )?))
        }
    }
}

struct ScanRow {
    l: String,
    alphabet: (i64, i64),
    predicates: negabeta::numeration::Predicates,
    sofic: bool,
    shapes: [Option<(usize, usize)>; 3],
}

fn scan(field: &NumberField, grid: usize, budget: usize) -> Vec<ScanRow> {
    (0..grid)
        .rev()
        .collect::<Vec<_>>()
        .par_iter()
        .map(|&k| {
            let q = rational_from_str(&format!("-{k}/{grid}")).expect("well-formed rational");
            let s = NumerationSystem::new(field.from_rational(q.clone())).expect("grid point lies in (-1, 0]");
            let shapes = Reference::ALL.map(|r| {
                let o = reference(&s, r, budget);
                o.is_periodic().then(|| (o.digits.pre().len(), o.digits.per().len()))
            });
            ScanRow {
                l: rational_to_string(&q),
                alphabet: s.alphabet_bounds(),
                predicates: s.predicates(),
                sofic: shapes[0].is_some() && shapes[2].is_some(),
                shapes,
            }
        })
        .collect()
}

fn shape_text(s: &Option<(usize, usize)>) -> String {
    match s {
        Some((p, q)) => format!("{p}+{q}"),
        None => "?".into(),
    }
}

fn scan_text(field: &NumberField, grid: usize, budget: usize) -> String {
    let mut t = format!(
        "{:<8} {:<9} {:<6} {:<6} {:<6} {:<6} {:<6} {:<8} {:<8} {:<8}\n",
        "l", "alphabet", "range", "shift", "fin", "zero", "sofic", "d(l)", "d*(l)", "d*(r)"
    );
    for row in scan(field, grid, budget) {
        let p = row.predicates;
        let _ = writeln!(
            t,
            "{:<8} {:<9} {:<6} {:<6} {:<6} {:<6} {:<6} {:<8} {:<8} {:<8}",
            row.l,
            format!("{}..{}", row.alphabet.0, row.alphabet.1),
            p.digit_range_ok,
            p.shift_unique,
            p.fin_nontrivial,
            p.zero_in_domain,
            row.sofic,
            shape_text(&row.shapes[0]),
            shape_text(&row.shapes[1]),
            shape_text(&row.shapes[2]),
        );
    }
    t
}

fn scan_json(field: &NumberField, grid: usize, budget: usize) -> Value {
    let shape = |s: &Option<(usize, usize)>| match s {
        Some((p, q)) => json!({"preperiod": p, "period": q}),
        None => Value::Null,
    };
    json!(scan(field, grid, budget)
        .iter()
        .map(|row| json!({
            "l": row.l,
            "alphabet": [row.alphabet.0, row.alphabet.1],
            "predicates": row.predicates,
            "sofic": row.sofic,
            "d(l)": shape(&row.shapes[0]),
            "d*(l)": shape(&row.shapes[1]),
            "d*(r)": shape(&row.shapes[2]),
        }))
        .collect::<Vec<_>>())
}
