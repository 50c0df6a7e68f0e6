use std::collections::BTreeSet;
use std::time::Instant;

use clap::ValueEnum;
use fixpoint_core::count::{count_with, dispatch, dispatch_plan, Branch, Hardness};
use fixpoint_core::graph::{closure_graph, graph_report, tree_decomposition, Strategy};
use fixpoint_core::post::{classify_with_cap, PostClass};
use fixpoint_core::reductions::{
    amplifier, bipartite_to_horn, horn_to_and_system, horn_to_or_system, pos2sat_to_d2_star,
    pos2sat_to_s00_star, pos2sat_to_s10_star, vc_to_d2_system, Amplifier, BipartiteGraph,
    HornFormula, PositiveFormula,
};
use fixpoint_core::repr::Operator;
use fixpoint_core::{Caps, Configuration, Engine, System, UpdateSchedule};

use crate::{load_system, parse_network, print_system, read, write, CliError, Report, SystemFile};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum EngineChoice {
    Auto,
    Brute,
    Linear,
    Andor,
    Twdp,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CountOptions {
    pub engine: EngineChoice,
    pub caps: Caps,
    /// Adds an `elapsed_ms` line.
    pub timing: bool,
}

fn class_list(classes: &[PostClass]) -> String {
    if classes.is_empty() {
        return "none".into();
    }
    classes
        .iter()
        .map(|c| c.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

fn configuration(c: &Configuration) -> String {
    c.bits()
        .iter()
        .map(|&b| if b { '1' } else { '0' })
        .collect()
}

pub fn count(path: &str, opts: &CountOptions) -> Result<Report, CliError> {
    let file = load_system(path)?;
    let s = &file.system;
    let mut r = Report::new("count");
    r.push("vertices", s.vertex_count());
    r.push("edges", s.network().edge_count());
    let start = Instant::now();
    let engine = match opts.engine {
        EngineChoice::Auto => None,
        EngineChoice::Brute => Some(Engine::Brute),
        EngineChoice::Linear => Some(Engine::Linear),
        EngineChoice::Andor => Some(Engine::AndOr),
        EngineChoice::Twdp => Some(Engine::Twdp),
    };
    let total = match engine {
        None => {
            let (report, total) = dispatch(s, &opts.caps)?;
            r.push("engine", report.engine);
            r.push("branch", report.branch);
            match &report.classes {
                Some(c) => r.push("classes", class_list(c)),
                None => r.push("classes", "unknown (arity above the cap)"),
            }
            r.push("max_degree", report.max_degree);
            if let Some(w) = report.width {
                r.push("closure_width", w);
            }
            for w in &report.warnings {
                r.push("warning", w);
            }
            total
        }
        Some(e) => {
            let total = count_with(e, s, &opts.caps)?;
            r.push("engine", e);
            r.push("branch", "forced");
            total
        }
    };
    r.push("count", total);
    if opts.timing {
        r.push(
            "elapsed_ms",
            format!("{:.3}", start.elapsed().as_secs_f64() * 1e3),
        );
    }
    Ok(r)
}

fn operators(s: &System) -> Option<BTreeSet<Operator>> {
    let mut all = BTreeSet::new();
    for f in s.functions() {
        all.extend(f.syntactic_basis()?);
    }
    Some(all)
}

fn closure_width(s: &System) -> usize {
    tree_decomposition(&closure_graph(s), Strategy::MinFill).width()
}

/// Branch for the instance read as formulas, from the classes alone.
fn formula_branch(s: &System, common: Option<&[PostClass]>, caps: &Caps) -> String {
    let within =
        |ops: &[Operator]| operators(s).is_some_and(|have| have.iter().all(|o| ops.contains(o)));
    let (linear, and, or) = match common {
        Some(c) => (
            c.contains(&PostClass::L),
            c.contains(&PostClass::E),
            c.contains(&PostClass::V),
        ),
        None => (
            within(&[Operator::Xor, Operator::Not, Operator::Const]),
            within(&[Operator::And, Operator::Const]),
            within(&[Operator::Or, Operator::Const]),
        ),
    };
    if linear {
        "L (linear)".into()
    } else if and {
        "E (and/or)".into()
    } else if or {
        "V (and/or)".into()
    } else if common.is_some() && closure_width(s) <= caps.width {
        "bounded degree".into()
    } else {
        Branch::Intractable(Hardness::FormulaDegree).to_string()
    }
}

/// Branch for the instance read as lookup tables.
fn lookup_branch(s: &System, common: Option<&[PostClass]>, caps: &Caps) -> String {
    match common {
        Some(c) if c.contains(&PostClass::L) => "linear".into(),
        Some(_) if closure_width(s) <= caps.width => "bounded treewidth".into(),
        _ => Branch::Intractable(Hardness::LookupPlanar).to_string(),
    }
}

pub fn classify(path: &str, caps: &Caps) -> Result<Report, CliError> {
    let file = load_system(path)?;
    let s = &file.system;
    let g = graph_report(s.network());
    let mut r = Report::new("classify");
    r.push("vertices", g.vertices);
    r.push("edges", g.edges);
    r.push("max_degree", g.max_degree);
    r.push("planar", g.planar);
    r.push("vertex_cover_one", g.vertex_cover_one);
    r.push("width", g.width);
    r.push("components", g.components);

    let mut common: Option<Vec<PostClass>> = Some(PostClass::ALL.to_vec());
    for v in 0..s.vertex_count() {
        let f = s.function(v);
        let key = format!("vertex {}", v + 1);
        let report = f
            .to_table(caps.arity)
            .ok()
            .and_then(|t| classify_with_cap(&t, caps.arity).ok());
        match report {
            Some(p) => {
                r.push(
                    key,
                    format!(
                        "{} arity {}: {}",
                        f.kind(),
                        f.arity(),
                        class_list(&p.classes())
                    ),
                );
                if let Some(c) = common.as_mut() {
                    c.retain(|&k| p.has(k));
                }
            }
            None => {
                let ops = f
                    .syntactic_basis()
                    .map(|b| {
                        b.iter()
                            .map(|o| o.to_string())
                            .collect::<Vec<_>>()
                            .join(" ")
                    })
                    .unwrap_or_default();
                r.push(
                    key,
                    format!(
                        "{} arity {}: above the arity cap; operators {ops}",
                        f.kind(),
                        f.arity()
                    ),
                );
                common = None;
            }
        }
    }
    match &common {
        Some(c) => r.push("classes", class_list(c)),
        None => r.push("classes", "unknown (arity above the cap)"),
    }
    r.push("formula_branch", formula_branch(s, common.as_deref(), caps));
    r.push("lookup_branch", lookup_branch(s, common.as_deref(), caps));
    let plan = dispatch_plan(s, caps)?;
    r.push("branch", plan.branch);
    r.push("engine", plan.engine);
    Ok(r)
}

fn parse_configuration(text: &str, n: usize) -> Result<Configuration, CliError> {
    let bits = text
        .chars()
        .map(|c| match c {
            '0' => Ok(false),
            '1' => Ok(true),
            other => Err(CliError::Invalid(format!(
                "configuration character {other:?}"
            ))),
        })
        .collect::<Result<Vec<_>, _>>()?;
    if bits.len() != n {
        return Err(CliError::Invalid(format!(
            "configuration has {} bits, the system has {n} vertices",
            bits.len()
        )));
    }
    Ok(Configuration::new(bits))
}

/// Applies the schedule's steps cyclically, one step per time unit.
pub fn simulate(path: &str, steps: usize, initial: Option<&str>) -> Result<Report, CliError> {
    let SystemFile {
        system: s,
        schedule,
    } = load_system(path)?;
    let n = s.vertex_count();
    let mut x = match initial {
        Some(text) => parse_configuration(text, n)?,
        None => Configuration::zeros(n),
    };
    let schedule = schedule.unwrap_or_else(|| UpdateSchedule::synchronous(n));
    let mut r = Report::new("simulate");
    r.push("vertices", n);
    r.push("schedule_steps", schedule.len());
    let mut reached = None;
    for t in 0..=steps {
        r.push(format!("step {t}"), configuration(&x));
        if s.is_fixed_point(&x) {
            reached = Some(t);
            break;
        }
        if t < steps {
            let set = &schedule.steps()[t % schedule.len()];
            x = s
                .global_transition(set, &x)
                .expect("schedule vertices are in range");
        }
    }
    match reached {
        Some(t) => r.push("fixed_point", format!("reached at step {t}")),
        None => r.push("fixed_point", format!("none within {steps} steps")),
    }
    Ok(r)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum GadgetKind {
    Amplifier,
    HornAnd,
    HornOr,
    S10Star,
    S00Star,
    D2Star,
    VcD2,
    BipHorn,
}

fn read_cnf<T>(input: Option<&str>) -> Result<T, CliError>
where
    T: std::str::FromStr<Err = fixpoint_core::reductions::ReductionError>,
{
    let path =
        input.ok_or_else(|| CliError::Invalid("this gadget needs an input CNF file".into()))?;
    Ok(read(path)?.parse()?)
}

fn read_bipartite(input: Option<&str>) -> Result<BipartiteGraph, CliError> {
    let path =
        input.ok_or_else(|| CliError::Invalid("this gadget needs an input graph file".into()))?;
    let g = parse_network(&read(path)?).map_err(|source| CliError::Parse {
        path: path.to_string(),
        source,
    })?;
    Ok(BipartiteGraph::from_network(g)?)
}

fn occurring(h: &PositiveFormula) -> usize {
    h.clauses()
        .iter()
        .flat_map(|&(a, b)| [a, b])
        .collect::<BTreeSet<_>>()
        .len()
}

/// Builds the gadget, writes it to `output` and the identity to `output.identity`.
pub fn gadget(
    kind: GadgetKind,
    input: Option<&str>,
    h: Option<usize>,
    output: &str,
) -> Result<Report, CliError> {
    let mut sidecar = Report::new("gadget");
    let name = kind
        .to_possible_value()
        .expect("no skipped variants")
        .get_name()
        .to_string();
    sidecar.push("gadget", &name);
    let text = match kind {
        GadgetKind::Amplifier => {
            let h = h.ok_or_else(|| CliError::Invalid("amplifier needs --h".into()))?;
            let amp = Amplifier::new(h);
            sidecar.push("identity", "#fp = 1 when x_a0 = x_c0, 2^(h+1) otherwise");
            sidecar.push("h", h);
            sidecar.push("a0", amp.a(0) + 1);
            sidecar.push("c0", amp.c(0) + 1);
            system_text(amplifier(h))
        }
        GadgetKind::HornAnd | GadgetKind::HornOr => {
            let f: HornFormula = read_cnf(input)?;
            sidecar.push("identity", "#fp = #sat");
            sidecar.push("variables", f.var_count());
            sidecar.push("clauses", f.clauses().len());
            system_text(if kind == GadgetKind::HornAnd {
                horn_to_and_system(&f)
            } else {
                horn_to_or_system(&f)
            })
        }
        GadgetKind::S10Star | GadgetKind::S00Star | GadgetKind::D2Star => {
            let f: PositiveFormula = read_cnf(input)?;
            let (identity, s) = match kind {
                GadgetKind::S10Star => ("#fp = #sat + 2^n", pos2sat_to_s10_star(&f)?),
                GadgetKind::S00Star => ("#fp = #sat + 2^(n+1)", pos2sat_to_s00_star(&f)?),
                _ => (
                    "#fp = 2 #sat + 2^(n+1) - 2^(n-u+1)",
                    pos2sat_to_d2_star(&f)?,
                ),
            };
            sidecar.push("identity", identity);
            sidecar.push("n", f.var_count());
            if kind == GadgetKind::D2Star {
                sidecar.push("u", occurring(&f));
            }
            sidecar.push("clauses", f.clauses().len());
            system_text(s)
        }
        GadgetKind::VcD2 => {
            let g = read_bipartite(input)?;
            let gadget = vc_to_d2_system(&g, None)?;
            sidecar.push("identity", "2 #VC = #fp mod 2^(m+2)");
            sidecar.push("m", g.network().vertex_count());
            sidecar.push("modulus", &gadget.modulus);
            system_text(gadget.system)
        }
        GadgetKind::BipHorn => {
            let g = read_bipartite(input)?;
            sidecar.push("identity", "#sat = #IS");
            sidecar.push("m", g.network().vertex_count());
            bipartite_to_horn(&g).to_string()
        }
    };
    write(output, &text)?;
    write(&format!("{output}.identity"), &sidecar.to_string())?;
    sidecar.push("output", output);
    Ok(sidecar)
}

fn system_text(system: System) -> String {
    print_system(&SystemFile {
        system,
        schedule: None,
    })
}
